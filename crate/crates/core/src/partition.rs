//! Integer partitions and cell statistics.
//!
//! Partitions are stored with trailing zeros stripped; two partitions that
//! differ only in their string of zeros are the same value. A padded view
//! ([`Partition::part`]) supplies `0` beyond the length so formulas indexed
//! up to `n` work without branching.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A partition: a weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

/// A cell `(i, j)` of a partition diagram, both coordinates 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Partition {
    /// The empty partition.
    pub fn zero() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from a weakly decreasing sequence; trailing zeros
    /// are stripped. Rejects sequences that increase anywhere.
    pub fn new(parts: Vec<u32>) -> Result<Self, Error> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(format!("{:?}", parts)));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Like [`Partition::new`] but panics on invalid input. For literals in
    /// code and tests.
    pub fn of(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("invalid partition literal")
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Padded view: `part(i) = 0` for `i > length`, 1-based.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    /// Multiplicity of the part `i` in the partition.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// The conjugate partition (diagram reflected in the main diagonal).
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1) as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols {
            parts.push(self.parts.iter().filter(|&&p| p >= j as u32).count() as u32);
        }
        Partition { parts }
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// Whether the cell lies inside the diagram.
    pub fn has_cell(&self, s: Cell) -> bool {
        s.row >= 1 && s.col >= 1 && s.col as u32 <= self.part(s.row)
    }

    /// Arm-length, arm-colength, leg-length and leg-colength of a cell.
    pub fn arm_leg(&self, s: Cell) -> Result<(u32, u32, u32, u32), Error> {
        if !self.has_cell(s) {
            return Err(Error::CellOutsideDiagram {
                row: s.row,
                col: s.col,
            });
        }
        let conj = self.conjugate();
        let arm = self.part(s.row) - s.col as u32;
        let arm_co = s.col as u32 - 1;
        let leg = conj.part(s.col) - s.row as u32;
        let leg_co = s.row as u32 - 1;
        Ok((arm, arm_co, leg, leg_co))
    }

    /// Iterates the cells of the diagram row by row.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &p)| {
            (1..=p as usize).map(move |j| Cell { row: i + 1, col: j })
        })
    }

    /// Dominance order on partitions of equal weight: `μ ⊴ λ` iff all prefix
    /// sums of `μ` are at most those of `λ`.
    pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool, Error> {
        if mu.weight() != lambda.weight() {
            return Err(Error::WeightMismatch {
                left: mu.weight(),
                right: lambda.weight(),
            });
        }
        let rows = mu.length().max(lambda.length());
        let (mut sm, mut sl) = (0u64, 0u64);
        for i in 1..=rows {
            sm += mu.part(i) as u64;
            sl += lambda.part(i) as u64;
            if sm > sl {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Containment of diagrams: `μ ⊆ λ` iff `μ_i ≤ λ_i` for all `i`.
    pub fn contains(&self, mu: &Partition) -> bool {
        (1..=mu.length()).all(|i| mu.part(i) <= self.part(i))
    }

    /// Complement inside the rectangle `(N^n)`: `λ̂_i = N - λ_{n-i+1}`.
    pub fn complement(&self, n_cols: u32, n_rows: usize) -> Result<Partition, Error> {
        if self.length() > n_rows || self.part(1) > n_cols {
            return Err(Error::BoxExceeded {
                lambda: self.clone(),
                n_cols,
                n_rows,
            });
        }
        let parts: Vec<u32> = (1..=n_rows)
            .map(|i| n_cols - self.part(n_rows - i + 1))
            .collect();
        Partition::new(parts)
    }

    /// All partitions with `weight ≤ max_weight`, `length ≤ max_length` and
    /// parts `≤ max_part`, in graded reverse-lexicographic order.
    pub fn enumerate(max_weight: u32, max_length: usize, max_part: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        for w in 0..=max_weight {
            let mut buf = Vec::new();
            gen_partitions(w, max_length, max_part.min(w), &mut buf, &mut out);
        }
        out
    }

    /// All partitions of exact weight `w` with the given bounds, reverse-lex.
    pub fn of_weight(w: u32, max_length: usize, max_part: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut buf = Vec::new();
        gen_partitions(w, max_length, max_part.min(w), &mut buf, &mut out);
        out
    }

    /// All partitions contained in the rectangle `(N^n)` (`n_rows` rows of
    /// width `n_cols`), in graded reverse-lex order.
    pub fn in_box(n_cols: u32, n_rows: usize) -> Vec<Partition> {
        Partition::enumerate(n_cols * n_rows as u32, n_rows, n_cols)
    }

    /// All sub-partitions `ν ⊆ self`, in graded reverse-lex order.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out: Vec<Partition> = Partition::enumerate(self.weight(), self.length(), self.part(1))
            .into_iter()
            .filter(|nu| self.contains(nu))
            .collect();
        out.sort();
        out
    }

    /// The padded part vector `(λ_1, …, λ_n)`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        (1..=n).map(|i| self.part(i)).collect()
    }

    /// All distinct permutations of the padded part vector, in descending
    /// lexicographic order. This is the exponent support of `m_λ` in `n`
    /// variables; empty when `l(λ) > n`.
    pub fn distinct_permutations(&self, n: usize) -> Vec<Vec<u32>> {
        if self.length() > n {
            return Vec::new();
        }
        let mut v = self.padded(n);
        let mut out = Vec::new();
        // v starts at the lexicographically largest arrangement.
        loop {
            out.push(v.clone());
            if !prev_permutation(&mut v) {
                break;
            }
        }
        out
    }

    /// `z_λ = Π_i m_i! · i^{m_i}`, the symmetrizer order of the conjugacy
    /// class indexed by `λ`.
    pub fn z_factor(&self) -> num_bigint::BigInt {
        use num_bigint::BigInt;
        let mut z = BigInt::from(1);
        let mut i = 1u32;
        let max = self.part(1);
        while i <= max {
            let m = self.multiplicity(i);
            for k in 1..=m {
                z *= BigInt::from(k);
            }
            for _ in 0..m {
                z *= BigInt::from(i);
            }
            i += 1;
        }
        z
    }
}

/// Steps `v` to the previous permutation in lexicographic order.
/// Returns false when `v` is already the smallest arrangement.
fn prev_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] <= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] >= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn gen_partitions(
    remaining: u32,
    max_length: usize,
    max_part: u32,
    buf: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition { parts: buf.clone() });
        return;
    }
    if max_length == 0 || max_part == 0 {
        return;
    }
    let hi = max_part.min(remaining);
    // Largest first part first: reverse-lexicographic within a grade.
    for p in (1..=hi).rev() {
        buf.push(p);
        gen_partitions(remaining - p, max_length - 1, p, buf, out);
        buf.pop();
    }
}

impl Ord for Partition {
    /// Graded reverse-lexicographic: lighter partitions first; within a
    /// grade, larger leading parts first. A linear extension of dominance.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| {
                for i in 1..=self.length().max(other.length()) {
                    match self.part(i).cmp(&other.part(i)) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self, Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_examples() {
        assert_eq!(Partition::of(&[3, 1]).conjugate(), Partition::of(&[2, 1, 1]));
        assert_eq!(Partition::zero().conjugate(), Partition::zero());
        assert_eq!(Partition::of(&[2, 2]).conjugate(), Partition::of(&[2, 2]));
    }

    #[test]
    fn conjugate_is_involution() {
        for lam in Partition::enumerate(12, 12, 12) {
            assert_eq!(lam.conjugate().conjugate(), lam);
        }
    }

    #[test]
    fn arm_leg_examples() {
        let lam = Partition::of(&[3, 1]);
        assert_eq!(lam.arm_leg(Cell { row: 1, col: 1 }).unwrap(), (2, 0, 1, 0));
        assert_eq!(lam.arm_leg(Cell { row: 1, col: 3 }).unwrap(), (0, 2, 0, 0));
        let one = Partition::of(&[1]);
        assert_eq!(one.arm_leg(Cell { row: 1, col: 1 }).unwrap(), (0, 0, 0, 0));
        assert!(lam.arm_leg(Cell { row: 2, col: 2 }).is_err());
    }

    #[test]
    fn n_stat_examples_and_leg_sum() {
        assert_eq!(Partition::of(&[2, 1]).n_stat(), 1);
        assert_eq!(Partition::zero().n_stat(), 0);
        assert_eq!(Partition::of(&[1, 1, 1]).n_stat(), 3);
        for lam in Partition::enumerate(12, 12, 12) {
            let legs: u64 = lam
                .cells()
                .map(|s| lam.arm_leg(s).unwrap().2 as u64)
                .sum();
            assert_eq!(lam.n_stat(), legs);
            // n(λ) = Σ binom(λ'_i, 2)
            let conj = lam.conjugate();
            let bins: u64 = conj
                .parts()
                .iter()
                .map(|&c| (c as u64) * (c as u64 - 1) / 2)
                .sum();
            assert_eq!(lam.n_stat(), bins);
        }
    }

    #[test]
    fn multiplicity_matches_conjugate_differences() {
        for lam in Partition::enumerate(12, 12, 12) {
            let conj = lam.conjugate();
            for i in 1..=lam.part(1) {
                let expect = conj.part(i as usize) - conj.part(i as usize + 1);
                assert_eq!(lam.multiplicity(i) as u32, expect);
            }
        }
    }

    #[test]
    fn dominance_examples() {
        let d = |a: &[u32], b: &[u32]| {
            Partition::dominance_leq(&Partition::of(a), &Partition::of(b)).unwrap()
        };
        assert!(d(&[1, 1, 1], &[3]));
        assert!(!d(&[3], &[1, 1, 1]));
        assert!(d(&[2, 2], &[3, 1]));
        assert!(Partition::dominance_leq(&Partition::of(&[2]), &Partition::of(&[1])).is_err());
    }

    #[test]
    fn contains_examples() {
        assert!(Partition::of(&[3, 1]).contains(&Partition::of(&[2, 1])));
        assert!(!Partition::of(&[2]).contains(&Partition::of(&[1, 1])));
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(
            Partition::of(&[2, 1]).complement(3, 2).unwrap(),
            Partition::of(&[2, 1])
        );
        assert_eq!(
            Partition::zero().complement(2, 2).unwrap(),
            Partition::of(&[2, 2])
        );
        assert_eq!(
            Partition::of(&[3, 1]).complement(3, 3).unwrap(),
            Partition::of(&[3, 2])
        );
        assert!(Partition::of(&[4]).complement(3, 3).is_err());
    }

    #[test]
    fn complement_is_involution_in_boxes() {
        for n_cols in 0..=4u32 {
            for n_rows in 0..=4usize {
                for lam in Partition::in_box(n_cols, n_rows) {
                    let hat = lam.complement(n_cols, n_rows).unwrap();
                    assert_eq!(hat.complement(n_cols, n_rows).unwrap(), lam);
                }
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let got = Partition::enumerate(2, 2, 2);
        assert_eq!(
            got,
            vec![
                Partition::zero(),
                Partition::of(&[1]),
                Partition::of(&[2]),
                Partition::of(&[1, 1]),
            ]
        );
        assert_eq!(Partition::enumerate(0, 5, 5), vec![Partition::zero()]);
        assert_eq!(
            Partition::enumerate(3, 1, 3),
            vec![
                Partition::zero(),
                Partition::of(&[1]),
                Partition::of(&[2]),
                Partition::of(&[3]),
            ]
        );
    }

    #[test]
    fn enumerate_is_sorted_and_unique() {
        let all = Partition::enumerate(8, 8, 8);
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
        // count of partitions of n: 1,1,2,3,5,7,11,15,22
        let counts = [1usize, 1, 2, 3, 5, 7, 11, 15, 22];
        for (n, &c) in counts.iter().enumerate() {
            assert_eq!(Partition::of_weight(n as u32, 8, 8).len(), c);
        }
    }

    #[test]
    fn reverse_lex_extends_dominance() {
        for w in 0..=8u32 {
            let grade = Partition::of_weight(w, 8, 8);
            for a in &grade {
                for b in &grade {
                    if Partition::dominance_leq(a, b).unwrap() && a != b {
                        assert!(b < a, "dominance-lower {} must come after {}", a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn distinct_permutations_count() {
        let lam = Partition::of(&[2, 1]);
        assert_eq!(lam.distinct_permutations(2).len(), 2);
        assert_eq!(lam.distinct_permutations(3).len(), 6);
        assert_eq!(Partition::of(&[1, 1, 1]).distinct_permutations(2).len(), 0);
        assert_eq!(Partition::zero().distinct_permutations(3), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn z_factor_small() {
        assert_eq!(Partition::zero().z_factor(), 1.into());
        assert_eq!(Partition::of(&[1]).z_factor(), 1.into());
        assert_eq!(Partition::of(&[1, 1]).z_factor(), 2.into());
        assert_eq!(Partition::of(&[2]).z_factor(), 2.into());
        assert_eq!(Partition::of(&[2, 1]).z_factor(), 2.into());
        assert_eq!(Partition::of(&[3, 2, 2, 1, 1, 1]).z_factor(), (3 * 2 * 2 * 2 * 6).into());
    }

    #[test]
    fn json_round_trip() {
        let lam = Partition::of(&[3, 1]);
        let s = serde_json::to_string(&lam).unwrap();
        assert_eq!(s, "[3,1]");
        let back: Partition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, lam);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
