//! Macdonald polynomials by Gram–Schmidt over the dominance order.
//!
//! The construction is universal: `P_λ` is built once in `|λ|` variables
//! (where the power-sum scalar product is faithful) and restricted to any
//! requested variable count afterwards; the monomial coefficients
//! `u_{λμ}` do not depend on `n`. The same orthogonalizer drives the Jack
//! engine — only the weight `⟨p_λ, p_λ⟩` differs.
//!
//! On top of `P_λ` sit `Q_λ = b_λ P_λ`, the hypergeometric normalizations
//! `𝖯_λ`, `𝖰_λ`, skew polynomials through `q,t`-Littlewood–Richardson
//! coefficients, and principal specializations.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::cache::PolyCache;
use crate::error::Error;
use crate::partition::Partition;
use crate::qfactors::QtContext;
use crate::ratfunc::RatFunc;
use crate::symseries::{scalar_product, SymSeries};
use crate::vars::VarSet;

/// Gram–Schmidt orthogonalizer for a dominance-triangular basis with a
/// diagonal power-sum scalar product.
pub struct OrthoEngine {
    field: VarSet,
    norm: Box<dyn Fn(&Partition) -> RatFunc + Send + Sync>,
    memo: RwLock<HashMap<Partition, Arc<SymSeries>>>,
    gram_memo: RwLock<HashMap<Partition, RatFunc>>,
    disk: RwLock<Option<Arc<PolyCache>>>,
}

impl OrthoEngine {
    pub fn new(
        field: &VarSet,
        norm: Box<dyn Fn(&Partition) -> RatFunc + Send + Sync>,
    ) -> Self {
        OrthoEngine {
            field: field.clone(),
            norm,
            memo: RwLock::new(HashMap::new()),
            gram_memo: RwLock::new(HashMap::new()),
            disk: RwLock::new(None),
        }
    }

    pub fn field(&self) -> &VarSet {
        &self.field
    }

    pub fn attach_cache(&self, cache: Arc<PolyCache>) {
        *self.disk.write().unwrap() = Some(cache);
    }

    pub fn p_norm(&self, lambda: &Partition) -> RatFunc {
        (self.norm)(lambda)
    }

    /// `P_λ` in `max(|λ|, 1)` variables with degree bound `|λ|`.
    pub fn universal(&self, lambda: &Partition) -> Arc<SymSeries> {
        if let Some(p) = self.memo.read().unwrap().get(lambda) {
            return p.clone();
        }
        if let Some(disk) = self.disk.read().unwrap().as_ref() {
            if let Some(s) = disk.get(lambda) {
                let arc = Arc::new(s);
                self.memo
                    .write()
                    .unwrap()
                    .insert(lambda.clone(), arc.clone());
                return arc;
            }
        }
        let w = lambda.weight();
        let nvars = w.max(1) as usize;
        // Subtract projections onto every earlier partition of the same
        // weight in graded reverse-lex order (a linear extension of
        // dominance); coefficients on incomparable partitions come out
        // zero, which the support invariant tests pin down.
        // In the graded reverse-lex order, dominance-lower partitions sort
        // later; those are the ones already processed here.
        let mut v = SymSeries::monomial_sym(&self.field, lambda, nvars, w);
        for mu in Partition::of_weight(w, nvars, w.max(1)) {
            if &mu <= lambda {
                continue;
            }
            let p_mu = self.universal(&mu);
            let num = scalar_product(&v, &p_mu, &|l| self.p_norm(l));
            if num.is_zero() {
                continue;
            }
            let den = self.gram_norm(&mu);
            let coeff = num.div(&den).expect("gram norm nonzero").neg();
            v = v.add(&p_mu.scale(&coeff));
        }
        let arc = Arc::new(v);
        if let Some(disk) = self.disk.read().unwrap().as_ref() {
            disk.put(lambda, &arc).ok();
        }
        self.memo
            .write()
            .unwrap()
            .insert(lambda.clone(), arc.clone());
        arc
    }

    /// `⟨P_λ, P_λ⟩`.
    pub fn gram_norm(&self, lambda: &Partition) -> RatFunc {
        if let Some(v) = self.gram_memo.read().unwrap().get(lambda) {
            return v.clone();
        }
        let p = self.universal(lambda);
        let v = scalar_product(&p, &p, &|l| self.p_norm(l));
        self.gram_memo
            .write()
            .unwrap()
            .insert(lambda.clone(), v.clone());
        v
    }

    /// `P_λ` in `n` variables with the given degree bound; the zero series
    /// when `l(λ) > n` or `|λ|` exceeds the bound.
    pub fn in_vars(&self, lambda: &Partition, n: usize, degree_bound: u32) -> SymSeries {
        if lambda.length() > n || lambda.weight() > degree_bound {
            return SymSeries::zero(&self.field, n, degree_bound);
        }
        let uni = self.universal(lambda);
        let mut out = SymSeries::zero(&self.field, n, degree_bound);
        for (mu, c) in &uni.coeffs {
            if mu.length() <= n {
                out.coeffs.insert(mu.clone(), c.clone());
            }
        }
        out
    }
}

/// The Macdonald `(q,t)` engine.
pub struct MacdonaldEngine {
    ctx: Arc<QtContext>,
    ortho: OrthoEngine,
    lr_memo: RwLock<HashMap<(Partition, Partition), Arc<BTreeMap<Partition, RatFunc>>>>,
}

impl MacdonaldEngine {
    pub fn new(ctx: Arc<QtContext>) -> Self {
        let field = ctx.vars().clone();
        let ctx2 = ctx.clone();
        let norm = Box::new(move |lam: &Partition| -> RatFunc {
            let mut acc = RatFunc::from_big(ctx2.vars(), lam.z_factor());
            for &part in lam.parts() {
                let num = ctx2.one().sub(&ctx2.qpow(part as i64));
                let den = ctx2.one().sub(&ctx2.tpow(part as i64));
                acc = acc.mul(&num.div(&den).expect("1 - t^k is nonzero"));
            }
            acc
        });
        MacdonaldEngine {
            ctx,
            ortho: OrthoEngine::new(&field, norm),
            lr_memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &QtContext {
        &self.ctx
    }

    pub fn field(&self) -> &VarSet {
        self.ortho.field()
    }

    pub fn attach_cache(&self, cache: Arc<PolyCache>) {
        self.ortho.attach_cache(cache);
    }

    pub fn ortho(&self) -> &OrthoEngine {
        &self.ortho
    }

    /// `P_λ(x_1,…,x_n)`.
    pub fn p(&self, lambda: &Partition, n: usize, degree_bound: u32) -> SymSeries {
        self.ortho.in_vars(lambda, n, degree_bound)
    }

    /// `Q_λ = b_λ P_λ`.
    pub fn q(&self, lambda: &Partition, n: usize, degree_bound: u32) -> SymSeries {
        self.p(lambda, n, degree_bound)
            .scale(&self.ctx.b_norm(lambda))
    }

    /// The normalization factor of `𝖯_λ`: `t^{n(λ)} / c'_λ`.
    pub fn np_factor(&self, lambda: &Partition) -> RatFunc {
        self.ctx
            .tpow(lambda.n_stat() as i64)
            .div(&self.ctx.cprime_poly(lambda))
            .expect("c' nonzero")
    }

    /// The normalization factor of `𝖰_λ`: `t^{-n(λ)} c_λ`.
    pub fn nq_factor(&self, lambda: &Partition) -> RatFunc {
        self.ctx
            .tpow(-(lambda.n_stat() as i64))
            .mul(&self.ctx.c_poly(lambda))
    }

    /// `𝖯_λ = t^{n(λ)} (c'_λ)^{-1} P_λ`.
    pub fn np(&self, lambda: &Partition, n: usize, degree_bound: u32) -> SymSeries {
        self.p(lambda, n, degree_bound)
            .scale(&self.np_factor(lambda))
    }

    /// `𝖰_λ = t^{-n(λ)} c_λ P_λ`.
    pub fn nq(&self, lambda: &Partition, n: usize, degree_bound: u32) -> SymSeries {
        self.p(lambda, n, degree_bound)
            .scale(&self.nq_factor(lambda))
    }

    /// `q,t`-Littlewood–Richardson coefficients `f^λ_{μν}` of
    /// `P_μ P_ν = Σ_λ f^λ_{μν} P_λ`, computed in `|μ|+|ν|` variables.
    pub fn lr(&self, mu: &Partition, nu: &Partition) -> Arc<BTreeMap<Partition, RatFunc>> {
        let key = (mu.clone(), nu.clone());
        if let Some(v) = self.lr_memo.read().unwrap().get(&key) {
            return v.clone();
        }
        let w = mu.weight() + nu.weight();
        let nvars = (w.max(1)) as usize;
        let pm = self.p(mu, nvars, w);
        let pn = self.p(nu, nvars, w);
        let mut prod = pm.mul(&pn);
        let mut out = BTreeMap::new();
        // Unitriangular peel: the first key in map order is the dominance-
        // greatest remaining partition, whose only source is P of itself.
        while let Some((lam, c)) = prod.coeffs.iter().next().map(|(l, c)| (l.clone(), c.clone()))
        {
            let p_lam = self.p(&lam, nvars, w);
            prod = prod.sub(&p_lam.scale(&c));
            prod.coeffs.retain(|_, v| !v.is_zero());
            out.insert(lam, c);
        }
        let arc = Arc::new(out);
        self.lr_memo.write().unwrap().insert(key, arc.clone());
        arc
    }

    /// Normalized coefficients
    /// `𝖿^λ_{μν} = t^{n(μ)+n(ν)-n(λ)} c'_λ / (c'_μ c'_ν) · f^λ_{μν}`.
    pub fn lr_normalized(&self, mu: &Partition, nu: &Partition) -> BTreeMap<Partition, RatFunc> {
        let raw = self.lr(mu, nu);
        let base = self
            .ctx
            .tpow(mu.n_stat() as i64 + nu.n_stat() as i64)
            .div(
                &self
                    .ctx
                    .cprime_poly(mu)
                    .mul(&self.ctx.cprime_poly(nu)),
            )
            .expect("c' nonzero");
        raw.iter()
            .map(|(lam, f)| {
                let scale = base
                    .mul(&self.ctx.cprime_poly(lam))
                    .mul(&self.ctx.tpow(-(lam.n_stat() as i64)));
                (lam.clone(), f.mul(&scale))
            })
            .collect()
    }

    /// `𝖰_{λ/μ}` expanded on normalized `𝖰_ν`:
    /// the map `ν ↦ 𝖿^λ_{μν}` with `|ν| = |λ|-|μ|`, empty when `μ ⊄ λ`.
    pub fn skew_nq_coords(&self, lambda: &Partition, mu: &Partition) -> BTreeMap<Partition, RatFunc> {
        let mut out = BTreeMap::new();
        if !lambda.contains(mu) {
            return out;
        }
        if lambda.weight() == mu.weight() {
            // λ = μ: the skew polynomial is 1 = 𝖰_0.
            out.insert(Partition::zero(), RatFunc::one(&self.field().clone()));
            return out;
        }
        let w = lambda.weight() - mu.weight();
        for nu in Partition::enumerate(w, w as usize, w) {
            if nu.weight() != w {
                continue;
            }
            let coeffs = self.lr_normalized(mu, &nu);
            if let Some(f) = coeffs.get(lambda) {
                if !f.is_zero() {
                    out.insert(nu, f.clone());
                }
            }
        }
        out
    }

    /// `𝖰_{λ/μ}(x_1,…,x_n)` as a series.
    pub fn skew_nq(&self, lambda: &Partition, mu: &Partition, n: usize, degree_bound: u32) -> SymSeries {
        let mut acc = SymSeries::zero(self.field(), n, degree_bound);
        for (nu, f) in self.skew_nq_coords(lambda, mu) {
            acc = acc.add(&self.nq(&nu, n, degree_bound).scale(&f));
        }
        acc
    }

    /// `𝖯_{λ/μ} = t^{2n(λ)-2n(μ)} (c_μ c'_μ)/(c_λ c'_λ) 𝖰_{λ/μ}`.
    pub fn skew_np_factor(&self, lambda: &Partition, mu: &Partition) -> RatFunc {
        let num = self
            .ctx
            .tpow(2 * lambda.n_stat() as i64 - 2 * mu.n_stat() as i64)
            .mul(&self.ctx.c_poly(mu))
            .mul(&self.ctx.cprime_poly(mu));
        num.div(&self.ctx.c_poly(lambda).mul(&self.ctx.cprime_poly(lambda)))
            .expect("c c' nonzero")
    }

    /// `𝖯_{λ/μ}(x_1,…,x_n)`.
    pub fn skew_np(&self, lambda: &Partition, mu: &Partition, n: usize, degree_bound: u32) -> SymSeries {
        self.skew_nq(lambda, mu, n, degree_bound)
            .scale(&self.skew_np_factor(lambda, mu))
    }

    /// The letters of the principal specialization `scale·⟨μ⟩_n`:
    /// `x_i = scale · q^{μ_i} t^{n-i}`.
    pub fn principal_letters(&self, mu: &Partition, n: usize, scale: &RatFunc) -> Vec<RatFunc> {
        (1..=n)
            .map(|i| {
                scale
                    .mul(&self.ctx.qpow(mu.part(i) as i64))
                    .mul(&self.ctx.tpow((n - i) as i64))
            })
            .collect()
    }

    /// Evaluation of a series at `scale·⟨μ⟩_n`.
    pub fn principal_spec(&self, f: &SymSeries, mu: &Partition, scale: &RatFunc) -> RatFunc {
        let letters = self.principal_letters(mu, f.n, scale);
        f.eval_at(&letters)
    }

    /// Closed form of the normalized `𝖯_λ(⟨0⟩_n)`:
    /// `t^{2n(λ)}/(qt^{n-1})_λ · Π_{i<j} (1-q^{λi-λj} t^{j-i})/(1-t^{j-i}) ·
    /// (t^{j-i+1})_{λi-λj}/(qt^{j-i-1})_{λi-λj}`.
    pub fn principal_np0(&self, lambda: &Partition, n: usize) -> RatFunc {
        if lambda.length() > n {
            return self.ctx.zero();
        }
        let ctx = &self.ctx;
        let mut acc = ctx
            .tpow(2 * lambda.n_stat() as i64)
            .div(&ctx.poch_partition(&ctx.q().mul(&ctx.tpow(n as i64 - 1)), lambda))
            .expect("poch nonzero");
        for i in 1..=n {
            for j in (i + 1)..=n {
                let d = lambda.part(i) as i64 - lambda.part(j) as i64;
                if d == 0 {
                    continue;
                }
                let ji = (j - i) as i64;
                let head = ctx
                    .one()
                    .sub(&ctx.qpow(d).mul(&ctx.tpow(ji)))
                    .div(&ctx.one().sub(&ctx.tpow(ji)))
                    .expect("1 - t^k nonzero");
                let tail = ctx
                    .poch_ratio(&ctx.tpow(ji + 1), &ctx.q().mul(&ctx.tpow(ji - 1)), d)
                    .expect("generic");
                acc = acc.mul_unreduced(&head).mul_unreduced(&tail);
            }
        }
        acc
    }

    /// Closed form of `P_λ(⟨0⟩_n) = 𝖯_λ(⟨0⟩_n) · c'_λ / t^{n(λ)}`.
    pub fn principal_p0(&self, lambda: &Partition, n: usize) -> RatFunc {
        self.principal_np0(lambda, n)
            .div(&self.np_factor(lambda))
            .expect("normalization factor nonzero")
    }
}

/// The Jack orthogonalizer over `Q(α)`: `⟨p_λ, p_λ⟩ = z_λ α^{l(λ)}`.
pub fn jack_engine() -> OrthoEngine {
    let field = VarSet::alpha();
    let f2 = field.clone();
    let norm = Box::new(move |lam: &Partition| -> RatFunc {
        let alpha = RatFunc::var(&f2, "alpha").unwrap();
        alpha
            .powi(lam.length() as i64)
            .unwrap()
            .mul_big(&lam.z_factor())
    });
    OrthoEngine::new(&field, norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symseries::scalar_product;

    fn engine() -> MacdonaldEngine {
        MacdonaldEngine::new(Arc::new(QtContext::standard(&VarSet::qt())))
    }

    #[test]
    fn p_small_examples() {
        let e = engine();
        let ctx = e.ctx();
        let one = ctx.one();
        // P_(1) = m_(1)
        let p1 = e.p(&Partition::of(&[1]), 2, 4);
        assert_eq!(p1.coeffs.len(), 1);
        assert_eq!(p1.coeff(&Partition::of(&[1])), one);
        // P_(1,1) = m_(1,1) (dominance-minimal)
        let p11 = e.p(&Partition::of(&[1, 1]), 2, 4);
        assert_eq!(p11.coeffs.len(), 1);
        // P_(2) = m_(2) + u m_(1,1), u = (1+q)(1-t)/(1-qt)
        let p2 = e.p(&Partition::of(&[2]), 2, 4);
        let u = p2.coeff(&Partition::of(&[1, 1]));
        let q = ctx.q().clone();
        let t = ctx.t().clone();
        let expect = one
            .add(&q)
            .mul(&one.sub(&t))
            .div(&one.sub(&q.mul(&t)))
            .unwrap();
        assert_eq!(u, expect);
        assert_eq!(p2.coeff(&Partition::of(&[2])), one);
        // zero series when l(λ) > n
        assert!(e.p(&Partition::of(&[1, 1, 1]), 2, 4).is_zero());
    }

    #[test]
    fn orthogonality_weight_small() {
        let e = engine();
        let norm = |l: &Partition| e.ortho().p_norm(l);
        for w in 1..=4u32 {
            let parts = Partition::of_weight(w, w as usize, w);
            for a in &parts {
                for b in &parts {
                    let pa = e.ortho().universal(a);
                    let pb = e.ortho().universal(b);
                    let ip = scalar_product(&pa, &pb, &norm);
                    if a == b {
                        assert!(!ip.is_zero(), "⟨P,P⟩ = 0 for {}", a);
                    } else {
                        assert!(ip.is_zero(), "⟨P_{}, P_{}⟩ ≠ 0", a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn pq_duality_small() {
        let e = engine();
        let norm = |l: &Partition| e.ortho().p_norm(l);
        for w in 1..=3u32 {
            let parts = Partition::of_weight(w, w as usize, w);
            for a in &parts {
                let pa = e.ortho().universal(a);
                let qa = pa.scale(&e.ctx().b_norm(a));
                let ip = scalar_product(&pa, &qa, &norm);
                assert!(ip.is_one(), "⟨P_{}, Q_{}⟩ = {:?}", a, a, ip);
            }
        }
    }

    #[test]
    fn lr_examples() {
        let e = engine();
        let one = e.ctx().one();
        // trivial product
        let f = e.lr(&Partition::zero(), &Partition::zero());
        assert_eq!(f.len(), 1);
        assert_eq!(f[&Partition::zero()], one);
        // P_1·P_1 supported on (2), (1,1)
        let f11 = e.lr(&Partition::of(&[1]), &Partition::of(&[1]));
        assert_eq!(f11.len(), 2);
        assert!(f11.contains_key(&Partition::of(&[2])));
        assert!(f11.contains_key(&Partition::of(&[1, 1])));
        // m₁² = m₂ + 2m₁₁ forces f^{(2)} = 1 and f^{(1,1)} = 2 − u with u
        // the m₁₁-coefficient of P₂.
        let u = e.p(&Partition::of(&[2]), 2, 2).coeff(&Partition::of(&[1, 1]));
        assert_eq!(f11[&Partition::of(&[2])], one);
        assert_eq!(f11[&Partition::of(&[1, 1])], e.ctx().int(2).sub(&u));
        // cross-check f^{(2)}_{(1)(1)} via ⟨P1 P1, Q_(2)⟩
        let norm = |l: &Partition| e.ortho().p_norm(l);
        let p1 = e.p(&Partition::of(&[1]), 2, 2);
        let prod = p1.mul(&p1);
        let q2 = e.q(&Partition::of(&[2]), 2, 2);
        let via_ip = scalar_product(&prod, &q2, &norm);
        assert_eq!(via_ip, f11[&Partition::of(&[2])]);
    }

    #[test]
    fn skew_basics() {
        let e = engine();
        let lam = Partition::of(&[2, 1]);
        // 𝖰_{λ/λ} = 1
        let s = e.skew_nq(&lam, &lam, 2, 3);
        assert_eq!(s.coeff(&Partition::zero()), e.ctx().one());
        assert_eq!(s.coeffs.len(), 1);
        // μ ⊄ λ vanishes
        let s2 = e.skew_nq(&Partition::of(&[2]), &Partition::of(&[1, 1]), 2, 3);
        assert!(s2.is_zero());
    }

    #[test]
    fn principal_p0_matches_evaluation() {
        let e = engine();
        let one = e.ctx().one();
        for lam in Partition::enumerate(4, 3, 4) {
            for n in lam.length().max(1)..=3 {
                let p = e.p(&lam, n, lam.weight());
                let direct = e.principal_spec(&p, &Partition::zero(), &one);
                assert_eq!(direct, e.principal_p0(&lam, n), "P λ={} n={}", lam, n);
                let np = e.np(&lam, n, lam.weight());
                let direct_np = e.principal_spec(&np, &Partition::zero(), &one);
                assert_eq!(direct_np, e.principal_np0(&lam, n), "𝖯 λ={} n={}", lam, n);
            }
        }
    }

    #[test]
    fn nq_principal_is_tn_pochhammer() {
        // 𝖰_λ(⟨0⟩) = (t^n)_λ
        let e = engine();
        let one = e.ctx().one();
        for lam in Partition::enumerate(4, 3, 4) {
            for n in lam.length().max(1)..=3 {
                let nq = e.nq(&lam, n, lam.weight());
                let got = e.principal_spec(&nq, &Partition::zero(), &one);
                let expect = e.ctx().poch_partition(&e.ctx().tpow(n as i64), &lam);
                assert_eq!(got, expect, "λ={} n={}", lam, n);
            }
        }
    }

    #[test]
    fn jack_alpha_one_small() {
        // At α = 1 the Jack basis is Schur: P_(2) = m_2 + m_11.
        let j = jack_engine();
        let p2 = j.universal(&Partition::of(&[2]));
        let u = p2.coeff(&Partition::of(&[1, 1]));
        let alpha1 = u
            .substitute("alpha", &RatFunc::one(j.field()))
            .unwrap();
        assert_eq!(alpha1, RatFunc::one(j.field()));
    }
}
