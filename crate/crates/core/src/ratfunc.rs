//! Exact elements of the fraction field `Q(q,t,a,…)`.
//!
//! A [`RatFunc`] is a quotient of integer polynomials. Equality and
//! zero-testing never require a gcd (they cross-multiply); full reduction
//! happens lazily, controlled by [`NormalizeMode`], and always before
//! printing or serialization. Canonical form: `gcd(num, den)` a unit and
//! the denominator's leading coefficient positive.

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU8, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::Error;
use crate::gcd::poly_gcd;
use crate::poly::MultiPoly;
use crate::vars::{Expo, VarSet};

/// When full gcd reduction runs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NormalizeMode {
    /// Reduce after every operation.
    Always,
    /// Reduce only when the denominator grows past a size threshold, and at
    /// comparison/serialization points. Default: gcds dominate runtime and
    /// equality tests are rarer than products.
    Lazy,
}

static NORMALIZE_MODE: AtomicU8 = AtomicU8::new(1);

pub fn set_normalize_mode(mode: NormalizeMode) {
    NORMALIZE_MODE.store(mode as u8, AtomicOrdering::Relaxed);
}

pub fn normalize_mode() -> NormalizeMode {
    match NORMALIZE_MODE.load(AtomicOrdering::Relaxed) {
        0 => NormalizeMode::Always,
        _ => NormalizeMode::Lazy,
    }
}

/// In lazy mode, reduce once the denominator exceeds this many terms.
const LAZY_DEN_TERMS: usize = 48;

#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn vars(&self) -> &VarSet {
        &self.num.vars
    }

    pub fn zero(vars: &VarSet) -> Self {
        RatFunc {
            num: MultiPoly::zero(vars),
            den: MultiPoly::one(vars),
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        RatFunc {
            num: MultiPoly::one(vars),
            den: MultiPoly::one(vars),
        }
    }

    pub fn from_int(vars: &VarSet, n: i64) -> Self {
        RatFunc {
            num: MultiPoly::constant(vars, BigInt::from(n)),
            den: MultiPoly::one(vars),
        }
    }

    pub fn from_big(vars: &VarSet, n: BigInt) -> Self {
        RatFunc {
            num: MultiPoly::constant(vars, n),
            den: MultiPoly::one(vars),
        }
    }

    pub fn from_ratio(vars: &VarSet, n: BigInt, d: BigInt) -> Result<Self, Error> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc {
            num: MultiPoly::constant(vars, n),
            den: MultiPoly::constant(vars, d),
        }
        .reduced())
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        let den = MultiPoly::one(&num.vars);
        RatFunc { num, den }
    }

    pub fn from_parts(num: MultiPoly, den: MultiPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc { num, den }.maybe_reduce())
    }

    /// Builds `num/den` without any reduction. For product accumulators
    /// that assemble many factors and reduce (or compare) once at the end.
    pub fn from_parts_unreduced(num: MultiPoly, den: MultiPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc { num, den })
    }

    /// Multiplies without the lazy-reduction check.
    pub fn mul_unreduced(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars());
        }
        RatFunc {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    /// The named indeterminate as a field element.
    pub fn var(vars: &VarSet, name: &str) -> Result<Self, Error> {
        let i = vars
            .index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(RatFunc::from_poly(MultiPoly::var(vars, i)))
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn maybe_reduce(self) -> Self {
        match normalize_mode() {
            NormalizeMode::Always => self.reduced(),
            NormalizeMode::Lazy => {
                if self.den.num_terms() > LAZY_DEN_TERMS {
                    self.reduced()
                } else {
                    self
                }
            }
        }
    }

    /// Full canonical form: divide out the gcd, sign-normalize the
    /// denominator.
    pub fn reduced(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero(self.vars());
        }
        if self.den.is_one() {
            return self.clone();
        }
        let g = poly_gcd(&self.num, &self.den);
        let (mut n, mut d) = if g.is_one() {
            (self.num.clone(), self.den.clone())
        } else {
            (
                self.num.div_exact(&g).expect("gcd divides numerator"),
                self.den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if d.leading_sign() < 0 {
            n = n.neg();
            d = d.neg();
        }
        RatFunc { num: n, den: d }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            }
            .maybe_reduce();
        }
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc { num, den }.maybe_reduce()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars());
        }
        RatFunc {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
        .maybe_reduce()
    }

    pub fn mul_int(&self, k: i64) -> Self {
        RatFunc {
            num: self.num.mul_scalar(&BigInt::from(k)),
            den: self.den.clone(),
        }
    }

    pub fn mul_big(&self, k: &BigInt) -> Self {
        RatFunc {
            num: self.num.mul_scalar(k),
            den: self.den.clone(),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.vars()));
        }
        Ok(RatFunc {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        }
        .maybe_reduce())
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    /// Integer power, negative allowed.
    pub fn powi(&self, k: i64) -> Result<Self, Error> {
        if k == 0 {
            return Ok(Self::one(self.vars()));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.vars());
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Substitutes a field element for the named indeterminate.
    pub fn substitute(&self, name: &str, value: &RatFunc) -> Result<Self, Error> {
        let i = self
            .vars()
            .index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let n = substitute_poly(&self.num, i, value)?;
        let d = substitute_poly(&self.den, i, value)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        n.div(&d)
    }

    /// Structural equality of reduced forms via cross-multiplication; no
    /// gcd computed.
    pub fn eq_field(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Deterministic total order on canonical forms (for sorted output).
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let a = self.reduced();
        let b = other.reduced();
        a.num
            .cmp_terms(&b.num)
            .then_with(|| a.den.cmp_terms(&b.den))
    }

    /// Canonical string: reduced, sorted monomials, explicit exponents.
    /// Parseable by [`RatFunc::from_cache_string`].
    pub fn to_cache_string(&self) -> String {
        let r = self.reduced();
        format!("{}|{}", poly_cache_string(&r.num), poly_cache_string(&r.den))
    }

    pub fn from_cache_string(vars: &VarSet, s: &str) -> Result<Self, Error> {
        let mut halves = s.split('|');
        let (ns, ds) = match (halves.next(), halves.next(), halves.next()) {
            (Some(n), Some(d), None) => (n, d),
            _ => return Err(Error::CacheIo(format!("bad ratfunc record: {s}"))),
        };
        let num = poly_from_cache_string(vars, ns)?;
        let den = poly_from_cache_string(vars, ds)?;
        if den.is_zero() {
            return Err(Error::CacheIo("zero denominator in cache".into()));
        }
        Ok(RatFunc { num, den })
    }
}

fn substitute_poly(p: &MultiPoly, i: usize, value: &RatFunc) -> Result<RatFunc, Error> {
    let vars = &p.vars;
    // Horner over powers of the substituted variable, with memoized powers.
    let mut powers: Vec<RatFunc> = vec![RatFunc::one(vars)];
    let mut acc = RatFunc::zero(vars);
    for (e, c) in &p.terms {
        let k = e[i] as usize;
        while powers.len() <= k {
            let next = powers.last().unwrap().mul(value);
            powers.push(next);
        }
        let mut e2 = e.clone();
        e2[i] = 0;
        let term = RatFunc::from_poly(MultiPoly::monomial(vars, e2, c.clone()));
        acc = acc.add(&term.mul(&powers[k]));
    }
    Ok(acc)
}

fn poly_cache_string(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::with_capacity(p.num_terms());
    for (e, c) in p.terms.iter().rev() {
        let es: Vec<String> = e.iter().map(|x| x.to_string()).collect();
        parts.push(format!("{}:{}", es.join(" "), c));
    }
    parts.join(",")
}

fn poly_from_cache_string(vars: &VarSet, s: &str) -> Result<MultiPoly, Error> {
    let mut p = MultiPoly::zero(vars);
    if s == "0" {
        return Ok(p);
    }
    for term in s.split(',') {
        let (es, cs) = term
            .split_once(':')
            .ok_or_else(|| Error::CacheIo(format!("bad term: {term}")))?;
        let mut e: Expo = SmallVec::new();
        for x in es.split(' ') {
            e.push(
                x.parse::<u32>()
                    .map_err(|_| Error::CacheIo(format!("bad exponent: {x}")))?,
            );
        }
        if e.len() != vars.len() {
            return Err(Error::CacheIo("exponent arity mismatch".into()));
        }
        let c: BigInt = cs
            .parse()
            .map_err(|_| Error::CacheIo(format!("bad coefficient: {cs}")))?;
        p = p.add(&MultiPoly::monomial(vars, e, c));
    }
    Ok(p)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.eq_field(other)
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.den.is_one() {
            if r.num.num_terms() > 1 {
                write!(f, "{}", r.num)
            } else {
                write!(f, "{}", r.num)
            }
        } else {
            let np = r.num.num_terms() > 1;
            let dp = r.den.num_terms() > 1;
            if np {
                write!(f, "({})", r.num)?;
            } else {
                write!(f, "{}", r.num)?;
            }
            write!(f, "/")?;
            if dp {
                write!(f, "({})", r.den)
            } else {
                write!(f, "{}", r.den)
            }
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A single signed monomial with integer exponents of either sign, e.g.
/// `a·t^{j-i-1}` or `-q²`. Bases of q-shifted factorials are built this way.
#[derive(Clone, Debug)]
pub struct MonomialExpr {
    vars: VarSet,
    negative: bool,
    powers: Vec<(usize, i64)>,
}

impl MonomialExpr {
    pub fn new(vars: &VarSet) -> Self {
        MonomialExpr {
            vars: vars.clone(),
            negative: false,
            powers: Vec::new(),
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::new(vars)
    }

    pub fn neg(mut self) -> Self {
        self.negative = !self.negative;
        self
    }

    /// Multiplies by `name^e`; `e` may be negative.
    pub fn v(mut self, name: &str, e: i64) -> Self {
        let i = self
            .vars
            .index(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        self.powers.push((i, e));
        self
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let mut npow = self.vars.zero_expo();
        let mut dpow = self.vars.zero_expo();
        for &(i, e) in &self.powers {
            if e >= 0 {
                npow[i] += e as u32;
            } else {
                dpow[i] += (-e) as u32;
            }
        }
        let c = if self.negative {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        RatFunc {
            num: MultiPoly::monomial(&self.vars, npow, c),
            den: MultiPoly::monomial(&self.vars, dpow, BigInt::one()),
        }
    }
}

impl From<MonomialExpr> for RatFunc {
    fn from(m: MonomialExpr) -> RatFunc {
        m.to_ratfunc()
    }
}
