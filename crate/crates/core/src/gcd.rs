//! Multivariate polynomial gcd via primitive pseudo-remainder sequences.
//!
//! Contents (integer and monomial) are stripped eagerly; the recursive
//! step treats the polynomials as univariate in a chosen main variable
//! with polynomial coefficients. At the degree ranges this engine runs at
//! (tens, not thousands) the primitive PRS is entirely adequate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::poly::MultiPoly;
use crate::vars::Expo;

/// Gcd normalized to a positive leading coefficient.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    debug_assert_eq!(a.vars, b.vars);
    if a.is_zero() {
        return normal_sign(b.clone());
    }
    if b.is_zero() {
        return normal_sign(a.clone());
    }

    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mut mg = ma.clone();
    for (x, y) in mg.iter_mut().zip(mb.iter()) {
        *x = (*x).min(*y);
    }
    let ca = a.int_content();
    let cb = b.int_content();
    let cg = ca.gcd(&cb);

    let pa = a.div_monomial(&ma).div_scalar_exact(&ca);
    let pb = b.div_monomial(&mb).div_scalar_exact(&cb);

    let core = gcd_primitive(&pa, &pb);
    normal_sign(core.mul_monomial(&mg, &cg))
}

fn normal_sign(p: MultiPoly) -> MultiPoly {
    if p.leading_sign() < 0 {
        p.neg()
    } else {
        p
    }
}

/// Gcd of integer- and monomial-primitive polynomials.
fn gcd_primitive(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        // Primitive constants are ±1.
        return MultiPoly::one(&a.vars);
    }
    // Quick exits: one dividing the other is common here.
    if b.div_exact(a).is_some() {
        return a.clone();
    }
    if a.div_exact(b).is_some() {
        return b.clone();
    }

    let v = match main_variable(a, b) {
        Some(v) => v,
        // No shared variable: gcd of primitive parts is 1.
        None => return MultiPoly::one(&a.vars),
    };

    let ua = UniView::from_poly(a, v);
    let ub = UniView::from_poly(b, v);

    let (cont_a, pp_a) = ua.content_and_primitive();
    let (cont_b, pp_b) = ub.content_and_primitive();
    let cont_g = poly_gcd(&cont_a, &cont_b);

    let mut r0 = pp_a;
    let mut r1 = pp_b;
    if r0.degree() < r1.degree() {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let r2 = pseudo_rem(&r0, &r1, v);
        if r2.is_zero() {
            break;
        }
        let (_, prim) = r2.content_and_primitive();
        r0 = r1;
        r1 = prim;
        if r1.degree() == 0 {
            // Coprime in the main variable.
            return cont_g;
        }
    }
    let g = r1.to_poly(v);
    let (_, gp) = UniView::from_poly(&g, v).content_and_primitive();
    cont_g.mul(&gp.to_poly(v))
}

/// A variable with positive degree in both, minimizing the smaller degree.
fn main_variable(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    let n = a.vars.len();
    let mut best: Option<(usize, u32)> = None;
    for v in 0..n {
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        if da > 0 && db > 0 {
            let key = da.min(db);
            if best.map(|(_, k)| key < k).unwrap_or(true) {
                best = Some((v, key));
            }
        }
    }
    best.map(|(v, _)| v)
}

/// A polynomial viewed as univariate in one variable with `MultiPoly`
/// coefficients (each coefficient has that variable's exponent cleared).
struct UniView {
    coeffs: Vec<MultiPoly>,
}

impl UniView {
    fn from_poly(p: &MultiPoly, v: usize) -> Self {
        let d = p.degree_in(v) as usize;
        let mut coeffs = vec![MultiPoly::zero(&p.vars); d + 1];
        for (e, c) in &p.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            coeffs[k] = coeffs[k].add(&MultiPoly::monomial(&p.vars, e2, c.clone()));
        }
        UniView { coeffs }
    }

    fn to_poly(&self, v: usize) -> MultiPoly {
        let vars = self.coeffs[0].vars.clone();
        let mut out = MultiPoly::zero(&vars);
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut e: Expo = vars.zero_expo();
            e[v] = k as u32;
            out = out.add(&c.mul_monomial(&e, &BigInt::one()));
        }
        out
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn trim(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero() {
            self.coeffs.pop();
        }
        self
    }

    fn lead(&self) -> &MultiPoly {
        self.coeffs.last().unwrap()
    }

    /// Content = gcd of the coefficients; primitive part divides it out and
    /// normalizes the integer content and sign.
    fn content_and_primitive(&self) -> (MultiPoly, UniView) {
        let vars = self.coeffs[0].vars.clone();
        let mut g = MultiPoly::zero(&vars);
        for c in &self.coeffs {
            if !c.is_zero() {
                g = poly_gcd(&g, c);
            }
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return (g, UniView { coeffs: vec![MultiPoly::zero(&vars)] });
        }
        let mut coeffs: Vec<MultiPoly> = self
            .coeffs
            .iter()
            .map(|c| c.div_exact(&g).expect("content divides"))
            .collect();
        // Sign-normalize on the leading coefficient.
        if coeffs.last().unwrap().leading_sign() < 0 {
            for c in coeffs.iter_mut() {
                *c = c.neg();
            }
        }
        (g, UniView { coeffs }.trim())
    }
}

/// Pseudo-remainder of `a` by `b` in the variable `v` (up to a factor of
/// `lc(b)^k`, which the primitive PRS strips anyway).
fn pseudo_rem(a: &UniView, b: &UniView, v: usize) -> UniView {
    let vars = a.coeffs[0].vars.clone();
    let db = b.degree();
    let lcb = b.lead().clone();
    let mut r = a.coeffs.clone();
    loop {
        let dr = {
            let mut d = r.len() - 1;
            while d > 0 && r[d].is_zero() {
                d -= 1;
            }
            r.truncate(d + 1);
            d
        };
        if r.iter().all(|c| c.is_zero()) || dr < db {
            break;
        }
        let lr = r[dr].clone();
        // r := lcb·r − lr·x^{dr−db}·b
        for c in r.iter_mut() {
            *c = c.mul(&lcb);
        }
        for (k, bc) in b.coeffs.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = r[idx].sub(&bc.mul(&lr));
        }
        // Degree strictly drops; r[dr] is now zero.
        debug_assert!(r[dr].is_zero());
    }
    let _ = vars;
    let _ = v;
    UniView { coeffs: r }.trim()
}
