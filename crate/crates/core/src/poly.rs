//! Dense-exponent multivariate polynomials over the integers.
//!
//! The carrier for all symbolic coefficients. Terms live in a `BTreeMap`
//! keyed by exponent vector, so iteration order (and hence printing and
//! serialization) is deterministic. No zero coefficients are ever stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::vars::{Expo, VarSet};

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    pub vars: VarSet,
    pub terms: BTreeMap<Expo, BigInt>,
}

impl MultiPoly {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: BigInt) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vars.zero_expo(), c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        Self::monomial(vars, vars.unit_expo(i), BigInt::one())
    }

    pub fn monomial(vars: &VarSet, e: Expo, c: BigInt) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&self.vars.zero_expo())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.contains_key(&self.vars.zero_expo()))
    }

    pub fn constant_value(&self) -> Option<&BigInt> {
        if self.is_constant() {
            self.terms.get(&self.vars.zero_expo())
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    fn insert_add(&mut self, e: Expo, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = ea.clone();
                for (x, y) in e.iter_mut().zip(eb.iter()) {
                    *x += *y;
                }
                out.insert_add(e, ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn mul_monomial(&self, e: &Expo, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            let mut en = ea.clone();
            for (x, y) in en.iter_mut().zip(e.iter()) {
                *x += *y;
            }
            out.terms.insert(en, ca * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The term with the largest exponent vector in the map order.
    pub fn leading(&self) -> Option<(&Expo, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Sign of the leading coefficient; 0 for the zero polynomial.
    pub fn leading_sign(&self) -> i8 {
        match self.leading() {
            None => 0,
            Some((_, c)) => {
                if c.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    /// Gcd of all integer coefficients (non-negative).
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Per-variable minimum exponent across all terms.
    pub fn monomial_content(&self) -> Expo {
        let mut m = match self.terms.keys().next() {
            None => return self.vars.zero_expo(),
            Some(e) => e.clone(),
        };
        for e in self.terms.keys() {
            for (x, y) in m.iter_mut().zip(e.iter()) {
                *x = (*x).min(*y);
            }
        }
        m
    }

    /// Divides every term by the given monomial (must divide exactly).
    pub fn div_monomial(&self, e: &Expo) -> Self {
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            let mut en = ea.clone();
            for (x, y) in en.iter_mut().zip(e.iter()) {
                debug_assert!(*x >= *y);
                *x -= *y;
            }
            out.terms.insert(en, ca.clone());
        }
        out
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            let (q, r) = v.div_rem(c);
            debug_assert!(r.is_zero());
            *v = q;
        }
        out
    }

    /// Exact multivariate division. Returns `None` when `self` is not a
    /// multiple of `d` over the integers.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        debug_assert_eq!(self.vars, d.vars);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(&self.vars));
        }
        if let Some(c) = d.constant_value() {
            let mut out = Self::zero(&self.vars);
            for (e, v) in &self.terms {
                let (q, r) = v.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.terms.insert(e.clone(), q);
            }
            return Some(out);
        }
        let (dl_e, dl_c) = d.leading().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while !rem.is_zero() {
            let (rl_e, rl_c) = rem.leading().expect("nonzero");
            let mut qe = rl_e.clone();
            let mut ok = true;
            for (x, y) in qe.iter_mut().zip(dl_e.iter()) {
                if *x < *y {
                    ok = false;
                    break;
                }
                *x -= *y;
            }
            if !ok {
                return None;
            }
            let (qc, rr) = rl_c.div_rem(dl_c);
            if !rr.is_zero() || qc.is_zero() {
                return None;
            }
            quot.insert_add(qe.clone(), qc.clone());
            rem = rem.sub(&d.mul_monomial(&qe, &qc));
        }
        Some(quot)
    }

    /// Substitutes integer values for a subset of variables, returning a
    /// polynomial over the same variable set with those exponents cleared.
    pub fn eval_big<F>(&self, point: F) -> BigInt
    where
        F: Fn(usize) -> BigInt,
    {
        let n = self.vars.len();
        let vals: Vec<BigInt> = (0..n).map(&point).collect();
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &ex) in e.iter().enumerate() {
                for _ in 0..ex {
                    t *= &vals[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Compares by map order of the leading terms; used only for canonical
    /// tie-breaking.
    pub fn cmp_terms(&self, other: &Self) -> Ordering {
        let mut ita = self.terms.iter().rev();
        let mut itb = other.terms.iter().rev();
        loop {
            match (ita.next(), itb.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ea, ca)), Some((eb, cb))) => {
                    let o = ea.cmp(eb).then_with(|| ca.cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest terms first.
        for (e, c) in self.terms.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            if !mag.is_one() || is_const {
                write!(f, "{}", mag)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut firstv = true;
            for (i, &ex) in e.iter().enumerate() {
                if ex == 0 {
                    continue;
                }
                if !firstv {
                    write!(f, "*")?;
                }
                firstv = false;
                write!(f, "{}", self.vars.name(i))?;
                if ex > 1 {
                    write!(f, "^{}", ex)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
