//! Symmetric polynomials in `n` variables, monomial-basis coordinates.
//!
//! A [`SymSeries`] stores the coefficients of the monomial symmetric
//! functions `m_λ` with `l(λ) ≤ n`, truncated at a total-degree bound.
//! Products are computed through cached integer expansion tables for
//! `m_λ · m_μ`. Conversion to the power-sum basis — the coordinate system
//! of the `(q,t)` scalar product — is exact and uses per-weight transition
//! matrices over `Q`; it requires the representation to be universal
//! (`n` at least the degree), which is how the Macdonald engine always
//! operates.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::partition::Partition;
use crate::ratfunc::RatFunc;
use crate::vars::VarSet;

#[derive(Clone)]
pub struct SymSeries {
    pub field: VarSet,
    pub n: usize,
    pub degree_bound: u32,
    pub coeffs: BTreeMap<Partition, RatFunc>,
}

/// Coordinates in the power-sum basis `p_λ`.
#[derive(Clone)]
pub struct PowerSumSeries {
    pub field: VarSet,
    pub n: usize,
    pub degree_bound: u32,
    pub coeffs: BTreeMap<Partition, RatFunc>,
}

impl SymSeries {
    pub fn zero(field: &VarSet, n: usize, degree_bound: u32) -> Self {
        SymSeries {
            field: field.clone(),
            n,
            degree_bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(field: &VarSet, n: usize, degree_bound: u32) -> Self {
        Self::monomial_sym(field, &Partition::zero(), n, degree_bound)
    }

    /// The monomial symmetric function `m_λ`; the zero series when
    /// `l(λ) > n` or `|λ|` exceeds the bound.
    pub fn monomial_sym(field: &VarSet, lambda: &Partition, n: usize, degree_bound: u32) -> Self {
        let mut s = Self::zero(field, n, degree_bound);
        if lambda.length() <= n && lambda.weight() <= degree_bound {
            s.coeffs.insert(lambda.clone(), RatFunc::one(field));
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    pub fn coeff(&self, lambda: &Partition) -> RatFunc {
        self.coeffs
            .get(lambda)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    pub fn set_coeff(&mut self, lambda: Partition, c: RatFunc) {
        if lambda.length() > self.n || lambda.weight() > self.degree_bound {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&lambda);
        } else {
            self.coeffs.insert(lambda, c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        out.degree_bound = self.degree_bound.min(other.degree_bound);
        for (l, c) in &other.coeffs {
            let v = out.coeff(l).add(c);
            out.set_coeff(l.clone(), v);
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatFunc::from_int(&self.field, -1)))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.coeffs.clear();
            return out;
        }
        for v in out.coeffs.values_mut() {
            *v = v.mul(c);
        }
        out
    }

    /// Product, truncated at the common degree bound.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let bound = self.degree_bound.min(other.degree_bound);
        let mut out = Self::zero(&self.field, self.n, bound);
        for (la, ca) in &self.coeffs {
            if ca.is_zero() {
                continue;
            }
            for (mu, cb) in &other.coeffs {
                if cb.is_zero() || la.weight() + mu.weight() > bound {
                    continue;
                }
                let table = m_product(la, mu, self.n);
                let cab = ca.mul(cb);
                for (nu, count) in table.iter() {
                    let add = cab.mul_big(&BigInt::from(*count));
                    let v = out.coeff(nu).add(&add);
                    out.set_coeff(nu.clone(), v);
                }
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    /// Evaluation at a concrete list of `n` letters.
    pub fn eval_at(&self, letters: &[RatFunc]) -> RatFunc {
        assert_eq!(letters.len(), self.n);
        let maxdeg = self
            .coeffs
            .keys()
            .map(|l| l.part(1))
            .max()
            .unwrap_or(0) as usize;
        let mut pows: Vec<Vec<RatFunc>> = Vec::with_capacity(self.n);
        for x in letters {
            let mut row = Vec::with_capacity(maxdeg + 1);
            row.push(RatFunc::one(&self.field));
            for k in 1..=maxdeg {
                let next = row[k - 1].mul(x);
                row.push(next);
            }
            pows.push(row);
        }
        let mut acc = RatFunc::zero(&self.field);
        for (lam, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let mut msum = RatFunc::zero(&self.field);
            for alpha in lam.distinct_permutations(self.n) {
                let mut term = RatFunc::one(&self.field);
                for (i, &e) in alpha.iter().enumerate() {
                    if e > 0 {
                        term = term.mul(&pows[i][e as usize]);
                    }
                }
                msum = msum.add(&term);
            }
            acc = acc.add(&c.mul(&msum));
        }
        acc
    }

    /// Restriction to fewer variables (drops `m_λ` with `l(λ) > n_new`).
    pub fn restrict(&self, n_new: usize) -> Self {
        assert!(n_new <= self.n);
        let mut out = Self::zero(&self.field, n_new, self.degree_bound);
        for (l, c) in &self.coeffs {
            if l.length() <= n_new {
                out.coeffs.insert(l.clone(), c.clone());
            }
        }
        out
    }

    /// The homogeneous component of the given degree.
    pub fn component(&self, w: u32) -> Self {
        let mut out = Self::zero(&self.field, self.n, self.degree_bound);
        for (l, c) in &self.coeffs {
            if l.weight() == w {
                out.coeffs.insert(l.clone(), c.clone());
            }
        }
        out
    }

    /// Conversion to power sums. Requires universality: every nonzero
    /// component must have degree ≤ `n`.
    pub fn to_power_sums(&self) -> PowerSumSeries {
        let mut out = PowerSumSeries {
            field: self.field.clone(),
            n: self.n,
            degree_bound: self.degree_bound,
            coeffs: BTreeMap::new(),
        };
        let mut by_weight: BTreeMap<u32, Vec<(&Partition, &RatFunc)>> = BTreeMap::new();
        for (l, c) in &self.coeffs {
            by_weight.entry(l.weight()).or_default().push((l, c));
        }
        for (w, entries) in by_weight {
            assert!(
                w as usize <= self.n,
                "power-sum conversion needs n ≥ degree (got degree {} with n = {})",
                w,
                self.n
            );
            let tr = transition(w);
            for (lam, c) in entries {
                let li = tr.index[lam];
                for (k, pc) in tr.m_to_p[li].iter().enumerate() {
                    if pc.is_zero() {
                        continue;
                    }
                    let add = c
                        .mul_big(pc.numer())
                        .div(&RatFunc::from_big(&self.field, pc.denom().clone()))
                        .expect("nonzero denominator");
                    let nu = tr.parts[k].clone();
                    let v = out
                        .coeffs
                        .get(&nu)
                        .cloned()
                        .unwrap_or_else(|| RatFunc::zero(&self.field))
                        .add(&add);
                    if v.is_zero() {
                        out.coeffs.remove(&nu);
                    } else {
                        out.coeffs.insert(nu, v);
                    }
                }
            }
        }
        out
    }
}

impl PowerSumSeries {
    pub fn zero(field: &VarSet, n: usize, degree_bound: u32) -> Self {
        PowerSumSeries {
            field: field.clone(),
            n,
            degree_bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn coeff(&self, lambda: &Partition) -> RatFunc {
        self.coeffs
            .get(lambda)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    /// Conversion back to the monomial basis (valid for any `n`; monomials
    /// with too many parts vanish).
    pub fn from_power_sums(&self) -> SymSeries {
        let mut out = SymSeries::zero(&self.field, self.n, self.degree_bound);
        let mut by_weight: BTreeMap<u32, Vec<(&Partition, &RatFunc)>> = BTreeMap::new();
        for (l, c) in &self.coeffs {
            by_weight.entry(l.weight()).or_default().push((l, c));
        }
        for (_, entries) in by_weight {
            let tr = transition(entries[0].0.weight());
            for (lam, c) in entries {
                let li = tr.index[lam];
                for (k, pc) in tr.p_to_m[li].iter().enumerate() {
                    if pc.is_zero() {
                        continue;
                    }
                    let nu = tr.parts[k].clone();
                    if nu.length() > self.n {
                        continue;
                    }
                    let add = c.mul_big(pc);
                    let v = out.coeff(&nu).add(&add);
                    out.set_coeff(nu, v);
                }
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }
}

/// Weight of `p_λ` in the scalar product: `⟨p_λ, p_λ⟩ = norm(λ)`.
pub type PNorm<'a> = dyn Fn(&Partition) -> RatFunc + 'a;

/// `⟨f, g⟩ = Σ_λ f_λ g_λ · norm(λ)` over power-sum coordinates.
pub fn scalar_product(f: &SymSeries, g: &SymSeries, norm: &PNorm) -> RatFunc {
    let fp = f.to_power_sums();
    let gp = g.to_power_sums();
    let mut acc = RatFunc::zero(&f.field);
    for (lam, fc) in &fp.coeffs {
        if let Some(gc) = gp.coeffs.get(lam) {
            acc = acc.add(&fc.mul(gc).mul(&norm(lam)));
        }
    }
    acc
}

/// Per-weight transition matrices between the `m` and `p` bases.
struct Transition {
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// Row λ: integer coordinates of `p_λ` on the `m` basis.
    p_to_m: Vec<Vec<BigInt>>,
    /// Row μ: rational coordinates of `m_μ` on the `p` basis.
    m_to_p: Vec<Vec<BigRational>>,
}

static TRANSITIONS: RwLock<Option<HashMap<u32, Arc<Transition>>>> = RwLock::new(None);

fn transition(w: u32) -> Arc<Transition> {
    {
        let guard = TRANSITIONS.read().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(t) = map.get(&w) {
                return t.clone();
            }
        }
    }
    let t = Arc::new(build_transition(w));
    TRANSITIONS
        .write()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(w, t.clone());
    t
}

fn build_transition(w: u32) -> Transition {
    let n = w.max(1) as usize;
    let parts = Partition::of_weight(w, n, w.max(1));
    let index: HashMap<Partition, usize> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let dim = parts.len();

    // p_λ in the m basis, by iterated m-multiplication with integer maps.
    let mut p_to_m = vec![vec![BigInt::zero(); dim]; dim];
    for (li, lam) in parts.iter().enumerate() {
        let mut acc: BTreeMap<Partition, BigInt> = BTreeMap::new();
        acc.insert(Partition::zero(), BigInt::one());
        for &r in lam.parts() {
            let pr = Partition::of(&[r]);
            let mut next: BTreeMap<Partition, BigInt> = BTreeMap::new();
            for (mu, c) in &acc {
                let table = m_product(mu, &pr, n);
                for (nu, count) in table.iter() {
                    let e = next.entry(nu.clone()).or_insert_with(BigInt::zero);
                    *e += c * BigInt::from(*count);
                }
            }
            acc = next;
        }
        for (nu, c) in acc {
            p_to_m[li][index[&nu]] = c;
        }
    }

    // Invert over Q by Gaussian elimination.
    let mut a: Vec<Vec<BigRational>> = p_to_m
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..dim {
        let piv = (col..dim)
            .find(|&r| !a[r][col].is_zero())
            .expect("transition matrix is invertible");
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col].clone();
        for j in 0..dim {
            a[col][j] /= d.clone();
            inv[col][j] /= d.clone();
        }
        for r in 0..dim {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..dim {
                    let av = a[col][j].clone();
                    let iv = inv[col][j].clone();
                    a[r][j] -= f.clone() * av;
                    inv[r][j] -= f.clone() * iv;
                }
            }
        }
    }
    // p = P2M·m as coordinate rows, so m_μ coordinates on p are the rows of
    // the inverse.
    let m_to_p = (0..dim)
        .map(|mi| (0..dim).map(|k| inv[mi][k].clone()).collect())
        .collect();

    Transition {
        parts,
        index,
        p_to_m,
        m_to_p,
    }
}

type MProductTable = Arc<Vec<(Partition, u64)>>;

static M_PRODUCTS: RwLock<Option<HashMap<(Partition, Partition, usize), MProductTable>>> =
    RwLock::new(None);

/// Expansion of `m_λ · m_μ` in `n` variables: list of `(ν, multiplicity)`.
pub fn m_product(lambda: &Partition, mu: &Partition, n: usize) -> MProductTable {
    let key = if lambda <= mu {
        (lambda.clone(), mu.clone(), n)
    } else {
        (mu.clone(), lambda.clone(), n)
    };
    {
        let guard = M_PRODUCTS.read().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(t) = map.get(&key) {
                return t.clone();
            }
        }
    }
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    let perms_a = key.0.distinct_permutations(n);
    let perms_b = key.1.distinct_permutations(n);
    for a in &perms_a {
        for b in &perms_b {
            let sum: Vec<u32> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
            if sum.windows(2).all(|w| w[0] >= w[1]) {
                let nu = Partition::new(sum).expect("sorted");
                *counts.entry(nu).or_insert(0) += 1;
            }
        }
    }
    let table: MProductTable = Arc::new(counts.into_iter().collect());
    M_PRODUCTS
        .write()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(key, table.clone());
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> VarSet {
        VarSet::qt()
    }

    #[test]
    fn monomial_sym_examples() {
        let f = field();
        let m1 = SymSeries::monomial_sym(&f, &Partition::of(&[1]), 2, 6);
        assert_eq!(m1.coeffs.len(), 1);
        let too_long = SymSeries::monomial_sym(&f, &Partition::of(&[1, 1, 1]), 2, 6);
        assert!(too_long.is_zero());
        // m_(2,1) in 2 variables at (x1,x2)=(2,3): 4·3 + 2·9 = 30
        let m21 = SymSeries::monomial_sym(&f, &Partition::of(&[2, 1]), 2, 6);
        let two = RatFunc::from_int(&f, 2);
        let three = RatFunc::from_int(&f, 3);
        assert_eq!(m21.eval_at(&[two, three]), RatFunc::from_int(&f, 30));
    }

    #[test]
    fn m_product_simple() {
        // m_(1)·m_(1) = m_(2) + 2 m_(1,1) in ≥2 variables
        let t = m_product(&Partition::of(&[1]), &Partition::of(&[1]), 2);
        let map: BTreeMap<_, _> = t.iter().cloned().collect();
        assert_eq!(map[&Partition::of(&[2])], 1);
        assert_eq!(map[&Partition::of(&[1, 1])], 2);
        // in 1 variable: m_(1)·m_(1) = m_(2)
        let t1 = m_product(&Partition::of(&[1]), &Partition::of(&[1]), 1);
        assert_eq!(t1.len(), 1);
    }

    #[test]
    fn power_sum_round_trip() {
        let f = field();
        let m1 = SymSeries::monomial_sym(&f, &Partition::of(&[1]), 3, 6);
        let p = m1.to_power_sums();
        assert_eq!(p.coeff(&Partition::of(&[1])), RatFunc::one(&f));
        assert_eq!(p.coeffs.len(), 1);
        // m_(1,1) = (p1² - p2)/2
        let m11 = SymSeries::monomial_sym(&f, &Partition::of(&[1, 1]), 3, 6);
        let p11 = m11.to_power_sums();
        let half = RatFunc::from_ratio(&f, 1.into(), 2.into()).unwrap();
        assert_eq!(p11.coeff(&Partition::of(&[1, 1])), half);
        assert_eq!(p11.coeff(&Partition::of(&[2])), half.neg());
        // p_(2) → m_(2) (two variables)
        let mut ps = PowerSumSeries::zero(&f, 2, 6);
        ps.coeffs.insert(Partition::of(&[2]), RatFunc::one(&f));
        let back = ps.from_power_sums();
        assert_eq!(back.coeff(&Partition::of(&[2])), RatFunc::one(&f));
        assert_eq!(back.coeffs.len(), 1);
        // round trips for all m_λ of weight ≤ 5 (universal n)
        for lam in Partition::enumerate(5, 5, 5) {
            let w = lam.weight().max(1) as usize;
            let m = SymSeries::monomial_sym(&f, &lam, w, 5);
            let rt = m.to_power_sums().from_power_sums();
            assert_eq!(rt.coeffs, m.coeffs, "λ={}", lam);
        }
    }

    #[test]
    fn scalar_product_examples() {
        let f = field();
        let ctx = crate::qfactors::QtContext::standard(&f);
        let norm = |lam: &Partition| -> RatFunc {
            let mut acc = RatFunc::from_big(&f, lam.z_factor());
            for &part in lam.parts() {
                let num = ctx.one().sub(&ctx.qpow(part as i64));
                let den = ctx.one().sub(&ctx.tpow(part as i64));
                acc = acc.mul(&num.div(&den).unwrap());
            }
            acc
        };
        // ⟨p1, p1⟩ = (1-q)/(1-t); p1 = m1
        let m1 = SymSeries::monomial_sym(&f, &Partition::of(&[1]), 2, 4);
        let got = scalar_product(&m1, &m1, &norm);
        let one = ctx.one();
        let expect = one.sub(ctx.q()).div(&one.sub(ctx.t())).unwrap();
        assert_eq!(got, expect);
        // ⟨p2, p_(1,1)⟩ = 0
        let mut p2 = PowerSumSeries::zero(&f, 2, 4);
        p2.coeffs.insert(Partition::of(&[2]), one.clone());
        let mut p11 = PowerSumSeries::zero(&f, 2, 4);
        p11.coeffs.insert(Partition::of(&[1, 1]), one.clone());
        let got0 = scalar_product(&p2.from_power_sums(), &p11.from_power_sums(), &norm);
        assert!(got0.is_zero());
        // ⟨p_(1,1), p_(1,1)⟩ = 2(1-q)²/(1-t)²
        let gq = scalar_product(&p11.from_power_sums(), &p11.from_power_sums(), &norm);
        let expect2 = expect.mul(&expect).mul_int(2);
        assert_eq!(gq, expect2);
    }

    #[test]
    fn series_mul_respects_truncation() {
        let f = field();
        let m1 = SymSeries::monomial_sym(&f, &Partition::of(&[1]), 2, 1);
        let sq = m1.mul(&m1);
        assert!(sq.is_zero());
        let m1b = SymSeries::monomial_sym(&f, &Partition::of(&[1]), 2, 4);
        let sq2 = m1b.mul(&m1b);
        assert_eq!(sq2.coeff(&Partition::of(&[2])), RatFunc::one(&f));
        assert_eq!(sq2.coeff(&Partition::of(&[1, 1])), RatFunc::from_int(&f, 2));
    }
}
