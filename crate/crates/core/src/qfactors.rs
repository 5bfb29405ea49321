//! q-shifted factorials and hook-length polynomials.
//!
//! Everything is parameterized by a [`QtContext`], which fixes the
//! indeterminate set, the base of the q-shifted factorials, and the value
//! of `t`. The base is usually the indeterminate `q` itself, but e.g. the
//! Kawanaka specialisation runs with base `q²` and `t = q²` over `Q(q)`.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::Error;
use crate::partition::Partition;
use crate::ratfunc::RatFunc;
use crate::vars::VarSet;

pub struct QtContext {
    vars: VarSet,
    q: RatFunc,
    t: RatFunc,
    qpow_memo: RwLock<HashMap<i64, RatFunc>>,
    tpow_memo: RwLock<HashMap<i64, RatFunc>>,
    c_memo: RwLock<HashMap<Partition, RatFunc>>,
    cprime_memo: RwLock<HashMap<Partition, RatFunc>>,
}

impl QtContext {
    /// Base `q`, parameter `t`, both indeterminates of `vars`.
    pub fn standard(vars: &VarSet) -> Self {
        let q = RatFunc::var(vars, "q").expect("vars must contain q");
        let t = RatFunc::var(vars, "t").expect("vars must contain t");
        Self::with_values(vars, q, t)
    }

    /// Arbitrary base and `t` value (must be nonzero field elements).
    pub fn with_values(vars: &VarSet, q: RatFunc, t: RatFunc) -> Self {
        assert!(!q.is_zero() && !t.is_zero());
        QtContext {
            vars: vars.clone(),
            q,
            t,
            qpow_memo: RwLock::new(HashMap::new()),
            tpow_memo: RwLock::new(HashMap::new()),
            c_memo: RwLock::new(HashMap::new()),
            cprime_memo: RwLock::new(HashMap::new()),
        }
    }

    /// The Kawanaka specialisation context: field `Q(q)`, base `q²`,
    /// `t = q²`.
    pub fn kawanaka() -> Self {
        let vars = VarSet::q_only();
        let q = RatFunc::var(&vars, "q").unwrap();
        let q2 = q.mul(&q);
        Self::with_values(&vars, q2.clone(), q2)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn q(&self) -> &RatFunc {
        &self.q
    }

    pub fn t(&self) -> &RatFunc {
        &self.t
    }

    /// Stable identifier for cache headers.
    pub fn id(&self) -> String {
        format!(
            "{};q={};t={}",
            self.vars.id(),
            self.q.to_cache_string(),
            self.t.to_cache_string()
        )
    }

    pub fn one(&self) -> RatFunc {
        RatFunc::one(&self.vars)
    }

    pub fn zero(&self) -> RatFunc {
        RatFunc::zero(&self.vars)
    }

    pub fn int(&self, k: i64) -> RatFunc {
        RatFunc::from_int(&self.vars, k)
    }

    pub fn qpow(&self, k: i64) -> RatFunc {
        if let Some(v) = self.qpow_memo.read().unwrap().get(&k) {
            return v.clone();
        }
        let v = self.q.powi(k).expect("base is invertible");
        self.qpow_memo.write().unwrap().insert(k, v.clone());
        v
    }

    pub fn tpow(&self, k: i64) -> RatFunc {
        if let Some(v) = self.tpow_memo.read().unwrap().get(&k) {
            return v.clone();
        }
        let v = self.t.powi(k).expect("t is invertible");
        self.tpow_memo.write().unwrap().insert(k, v.clone());
        v
    }

    /// `(b)_k` for integer `k`. For `k < 0` this is `1/Π_{i=1}^{-k}(1-bq^{-i})`;
    /// an identically-zero factor in that denominator is reported as
    /// [`Error::PochhammerPole`] so the caller can apply the convention
    /// `1/(q)_{-N} = 0` to the enclosing ratio.
    pub fn poch_int(&self, b: &RatFunc, k: i64) -> Result<RatFunc, Error> {
        let mut acc = self.one();
        if k >= 0 {
            for i in 0..k {
                acc = acc.mul(&self.one().sub(&b.mul(&self.qpow(i))));
            }
            Ok(acc)
        } else {
            for i in 1..=(-k) {
                let f = self.one().sub(&b.mul(&self.qpow(-i)));
                if f.is_zero() {
                    return Err(Error::PochhammerPole);
                }
                acc = acc.mul(&f);
            }
            acc.inv()
        }
    }

    /// `(b1)_k / (b2)_k` evaluated as a single product, so that a zero
    /// factor on one side is resolved against the other before any
    /// normalization. Returns 0 when only the numerator vanishes.
    pub fn poch_ratio(&self, b1: &RatFunc, b2: &RatFunc, k: i64) -> Result<RatFunc, Error> {
        let range: Vec<i64> = if k >= 0 {
            (0..k).collect()
        } else {
            (1..=(-k)).map(|i| -i).collect()
        };
        let mut num = self.one();
        let mut den = self.one();
        let mut num_zero = false;
        let mut den_zero = false;
        for i in range {
            let fn_ = self.one().sub(&b1.mul(&self.qpow(i)));
            let fd = self.one().sub(&b2.mul(&self.qpow(i)));
            if fn_.is_zero() {
                num_zero = true;
            } else {
                num = num.mul_unreduced(&fn_);
            }
            if fd.is_zero() {
                den_zero = true;
            } else {
                den = den.mul_unreduced(&fd);
            }
        }
        let ratio = match (num_zero, den_zero) {
            (true, false) => self.zero(),
            (false, false) => RatFunc::from_parts_unreduced(
                num.numerator().mul(den.denominator()),
                num.denominator().mul(den.numerator()),
            )?,
            _ => return Err(Error::PochhammerPole),
        };
        if k >= 0 {
            Ok(ratio)
        } else {
            ratio.inv()
        }
    }

    /// `(b)_λ = Π_{i} (b t^{1-i})_{λ_i}` for a partition index.
    pub fn poch_partition(&self, b: &RatFunc, lambda: &Partition) -> RatFunc {
        let mut acc = self.one();
        for i in 1..=lambda.length() {
            let base = b.mul(&self.tpow(1 - i as i64));
            acc = acc.mul(
                &self
                    .poch_int(&base, lambda.part(i) as i64)
                    .expect("nonnegative index"),
            );
        }
        acc
    }

    /// Cell form `Π_{s∈λ}(1 - b q^{a'(s)} t^{-l'(s)})`; must agree with the
    /// row form.
    pub fn poch_partition_cells(&self, b: &RatFunc, lambda: &Partition) -> RatFunc {
        let mut acc = self.one();
        for s in lambda.cells() {
            let (_, ac, _, lc) = lambda.arm_leg(s).expect("cell in diagram");
            let f = self
                .one()
                .sub(&b.mul(&self.qpow(ac as i64)).mul(&self.tpow(-(lc as i64))));
            acc = acc.mul(&f);
        }
        acc
    }

    /// Row form of `(b)_λ` extended to weakly decreasing integer sequences
    /// (parts may be negative); propagates Pochhammer poles.
    pub fn poch_row_seq(&self, b: &RatFunc, parts: &[i64]) -> Result<RatFunc, Error> {
        let mut acc = self.one();
        for (i, &p) in parts.iter().enumerate() {
            let base = b.mul(&self.tpow(-(i as i64)));
            acc = acc.mul(&self.poch_int(&base, p)?);
        }
        Ok(acc)
    }

    /// Generalised hook polynomial `c_λ = Π (1 - q^{a(s)} t^{l(s)+1})`.
    pub fn c_poly(&self, lambda: &Partition) -> RatFunc {
        if let Some(v) = self.c_memo.read().unwrap().get(lambda) {
            return v.clone();
        }
        let mut acc = self.one();
        for s in lambda.cells() {
            let (a, _, l, _) = lambda.arm_leg(s).expect("cell in diagram");
            acc = acc.mul(
                &self
                    .one()
                    .sub(&self.qpow(a as i64).mul(&self.tpow(l as i64 + 1))),
            );
        }
        self.c_memo
            .write()
            .unwrap()
            .insert(lambda.clone(), acc.clone());
        acc
    }

    /// `c'_λ = Π (1 - q^{a(s)+1} t^{l(s)})`.
    pub fn cprime_poly(&self, lambda: &Partition) -> RatFunc {
        if let Some(v) = self.cprime_memo.read().unwrap().get(lambda) {
            return v.clone();
        }
        let mut acc = self.one();
        for s in lambda.cells() {
            let (a, _, l, _) = lambda.arm_leg(s).expect("cell in diagram");
            acc = acc.mul(
                &self
                    .one()
                    .sub(&self.qpow(a as i64 + 1).mul(&self.tpow(l as i64))),
            );
        }
        self.cprime_memo
            .write()
            .unwrap()
            .insert(lambda.clone(), acc.clone());
        acc
    }

    /// `c_λ` via the row form: `(t^n)_λ Π_{i<j≤n} (t^{j-i})_{λi-λj}/(t^{j-i+1})_{λi-λj}`,
    /// valid for any `n ≥ l(λ)`.
    pub fn c_poly_rows(&self, lambda: &Partition, n: usize) -> Result<RatFunc, Error> {
        assert!(n >= lambda.length());
        let mut acc = self.poch_partition(&self.tpow(n as i64), lambda);
        for i in 1..=n {
            for j in (i + 1)..=n {
                let d = lambda.part(i) as i64 - lambda.part(j) as i64;
                if d == 0 {
                    continue;
                }
                let b1 = self.tpow((j - i) as i64);
                let b2 = self.tpow((j - i) as i64 + 1);
                acc = acc.mul_unreduced(&self.poch_ratio(&b1, &b2, d)?);
            }
        }
        Ok(acc)
    }

    /// `c'_λ` via the row form: `(qt^{n-1})_λ Π (qt^{j-i-1})_{λi-λj}/(qt^{j-i})_{λi-λj}`.
    pub fn cprime_poly_rows(&self, lambda: &Partition, n: usize) -> Result<RatFunc, Error> {
        assert!(n >= lambda.length());
        let mut acc =
            self.poch_partition(&self.q.mul(&self.tpow(n as i64 - 1)), lambda);
        for i in 1..=n {
            for j in (i + 1)..=n {
                let d = lambda.part(i) as i64 - lambda.part(j) as i64;
                if d == 0 {
                    continue;
                }
                let b1 = self.q.mul(&self.tpow((j - i) as i64 - 1));
                let b2 = self.q.mul(&self.tpow((j - i) as i64));
                acc = acc.mul_unreduced(&self.poch_ratio(&b1, &b2, d)?);
            }
        }
        Ok(acc)
    }

    /// `b_λ = c_λ / c'_λ`.
    pub fn b_norm(&self, lambda: &Partition) -> RatFunc {
        self.c_poly(lambda)
            .div(&self.cprime_poly(lambda))
            .expect("c' is nonzero")
    }

    /// `τ_λ = (-1)^{|λ|} q^{n(λ')} t^{-n(λ)}`.
    pub fn tau(&self, lambda: &Partition) -> RatFunc {
        let sign = if lambda.weight() % 2 == 0 { 1 } else { -1 };
        self.qpow(lambda.conjugate().n_stat() as i64)
            .mul(&self.tpow(-(lambda.n_stat() as i64)))
            .mul_int(sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> QtContext {
        QtContext::standard(&VarSet::qt())
    }

    fn ctx_a() -> QtContext {
        QtContext::standard(&VarSet::qta())
    }

    #[test]
    fn poch_int_examples() {
        let c = ctx_a();
        let a = RatFunc::var(c.vars(), "a").unwrap();
        let one = c.one();
        let q = c.q().clone();
        // (b)_2 = (1-b)(1-bq)
        let p2 = c.poch_int(&a, 2).unwrap();
        assert_eq!(p2, one.sub(&a).mul(&one.sub(&a.mul(&q))));
        // (b)_0 = 1
        assert!(c.poch_int(&a, 0).unwrap().is_one());
        // (q)_{-1} has the factor 1 - q·q^{-1} = 0: pole
        assert!(matches!(
            c.poch_int(&q, -1),
            Err(Error::PochhammerPole)
        ));
        // generic negative index is fine: (a)_{-1} = 1/(1 - a/q)
        let m1 = c.poch_int(&a, -1).unwrap();
        let expect = one
            .div(&one.sub(&a.mul(&c.qpow(-1))))
            .unwrap();
        assert_eq!(m1, expect);
    }

    #[test]
    fn poch_splitting_identity() {
        // (b)_{j+k} = (b)_j (bq^j)_k away from poles
        let c = ctx_a();
        let a = RatFunc::var(c.vars(), "a").unwrap();
        for j in -3i64..=3 {
            for k in -3i64..=3 {
                let lhs = c.poch_int(&a, j + k);
                let rhs = c
                    .poch_int(&a, j)
                    .and_then(|x| Ok(x.mul(&c.poch_int(&a.mul(&c.qpow(j)), k)?)));
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => assert_eq!(l, r, "j={} k={}", j, k),
                    _ => {} // pole on either side: skip
                }
            }
        }
    }

    #[test]
    fn poch_partition_examples() {
        let c = ctx_a();
        let a = RatFunc::var(c.vars(), "a").unwrap();
        let one = c.one();
        // (b)_{(2,1)} = (1-b)(1-bq)(1-b/t)
        let lam = Partition::of(&[2, 1]);
        let got = c.poch_partition(&a, &lam);
        let expect = one
            .sub(&a)
            .mul(&one.sub(&a.mul(c.q())))
            .mul(&one.sub(&a.mul(&c.tpow(-1))));
        assert_eq!(got, expect);
        // (b)_0 = 1
        assert!(c.poch_partition(&a, &Partition::zero()).is_one());
        // b = t²  (symbolic t^n with n = 2), λ = (1): 1 - t²
        let t2 = c.tpow(2);
        assert_eq!(
            c.poch_partition(&t2, &Partition::of(&[1])),
            one.sub(&t2)
        );
    }

    #[test]
    fn poch_partition_cell_vs_row_forms() {
        let c = ctx_a();
        let a = RatFunc::var(c.vars(), "a").unwrap();
        for lam in Partition::enumerate(8, 8, 8) {
            assert_eq!(
                c.poch_partition(&a, &lam),
                c.poch_partition_cells(&a, &lam),
                "λ = {}",
                lam
            );
        }
    }

    #[test]
    fn hook_polynomials_small() {
        let c = ctx();
        let one = c.one();
        let q = c.q().clone();
        let t = c.t().clone();
        assert_eq!(c.c_poly(&Partition::of(&[1])), one.sub(&t));
        assert_eq!(c.cprime_poly(&Partition::of(&[1])), one.sub(&q));
        // c'_{(k)} = (q)_k
        for k in 1..=3u32 {
            let lam = Partition::of(&[k]);
            assert_eq!(c.cprime_poly(&lam), c.poch_int(&q, k as i64).unwrap());
        }
    }

    #[test]
    fn hook_cross_forms() {
        let c = ctx();
        for lam in Partition::enumerate(8, 8, 8) {
            for extra in 0..=3usize {
                let n = lam.length() + extra;
                assert_eq!(c.c_poly(&lam), c.c_poly_rows(&lam, n).unwrap(), "c λ={} n={}", lam, n);
                assert_eq!(
                    c.cprime_poly(&lam),
                    c.cprime_poly_rows(&lam, n).unwrap(),
                    "c' λ={} n={}",
                    lam,
                    n
                );
            }
        }
    }

    #[test]
    fn b_and_tau_examples() {
        let c = ctx();
        let one = c.one();
        let q = c.q().clone();
        let t = c.t().clone();
        assert!(c.b_norm(&Partition::zero()).is_one());
        assert_eq!(
            c.b_norm(&Partition::of(&[1])),
            one.sub(&t).div(&one.sub(&q)).unwrap()
        );
        assert_eq!(c.tau(&Partition::of(&[1])), c.int(-1));
        // τ_{(2)} = q t^0 (n(λ')=1, n(λ)=0)
        assert_eq!(c.tau(&Partition::of(&[2])), q);
    }

    #[test]
    fn poch_ratio_negative_index() {
        let c = ctx_a();
        let a = RatFunc::var(c.vars(), "a").unwrap();
        let t = c.t().clone();
        // ratio with negative k equals quotient of poch_ints when both exist
        let b1 = a.mul(&t.powi(-1).unwrap());
        let b2 = a.clone();
        for k in [-3i64, -1, 0, 2] {
            let r = c.poch_ratio(&b1, &b2, k).unwrap();
            let direct = c
                .poch_int(&b1, k)
                .unwrap()
                .div(&c.poch_int(&b2, k).unwrap())
                .unwrap();
            assert_eq!(r, direct, "k={}", k);
        }
    }

    #[test]
    fn kawanaka_context_builds() {
        let c = QtContext::kawanaka();
        let q = RatFunc::var(c.vars(), "q").unwrap();
        let q2 = q.mul(&q);
        assert_eq!(c.q(), &q2);
        assert_eq!(c.t(), &q2);
        // (b; q²)_2 = (1-b)(1-b q²)
        let one = c.one();
        let b = q.clone();
        assert_eq!(
            c.poch_int(&b, 2).unwrap(),
            one.sub(&b).mul(&one.sub(&b.mul(&q2)))
        );
    }
}
