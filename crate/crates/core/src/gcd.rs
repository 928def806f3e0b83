//! Multivariate gcd by recursive primitive PRS on the top variable.

use crate::domain::RatDom;
use crate::poly::{MPoly, MPolyDom};
use crate::upoly::UPoly;

/// Gcd of two polynomials over Q, normalized to positive leading coefficient
/// and integer content 1. Gcd with zero returns the other input normalized;
/// the gcd of two constants is 1 (units are identified).
pub fn mv_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero_poly() {
        return b.normalized_primitive();
    }
    if b.is_zero_poly() {
        return a.normalized_primitive();
    }
    // top variable actually present in either operand
    let nv = a.ctx.nvars();
    let top = (0..nv)
        .rev()
        .find(|&i| a.degree_in(i).unwrap_or(0) > 0 || b.degree_in(i).unwrap_or(0) > 0);
    let top = match top {
        Some(i) => i,
        None => return MPoly::from_int(&a.ctx, 1), // both nonzero constants
    };
    let ua = a.as_upoly_in(top);
    let ub = b.as_upoly_in(top);
    let (ca, pa) = content_primitive(&ua);
    let (cb, pb) = content_primitive(&ub);
    let cont = mv_gcd(&ca, &cb);
    let prs = primitive_prs_gcd(pa, pb);
    let g = MPoly::from_upoly_in(&prs, &a.ctx, top);
    cont.mul(&g).normalized_primitive()
}

/// Content (gcd of coefficients) and primitive part of a univariate view.
fn content_primitive(u: &UPoly<MPolyDom>) -> (MPoly, UPoly<MPolyDom>) {
    let ctx = u
        .coeffs
        .iter()
        .find(|c| !c.is_zero_poly())
        .expect("nonzero poly")
        .ctx
        .clone();
    let dom = MPolyDom { ctx: ctx.clone() };
    let mut cont = MPoly::zero(&ctx);
    for c in &u.coeffs {
        cont = mv_gcd(&cont, c);
    }
    let prim = u
        .exact_div_scalar(&cont, &dom)
        .expect("content divides all coefficients");
    (cont, prim)
}

/// Gcd of two primitive univariate polynomials by the primitive PRS.
fn primitive_prs_gcd(mut f: UPoly<MPolyDom>, mut g: UPoly<MPolyDom>) -> UPoly<MPolyDom> {
    let ctx = content_primitive_ctx(&f, &g);
    let dom = MPolyDom { ctx };
    if f.deg() < g.deg() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = f.pseudo_rem(&g, &dom);
        let r = if r.is_zero() {
            r
        } else {
            let (_, prim) = content_primitive(&r);
            prim
        };
        f = g;
        g = r;
    }
    f
}

fn content_primitive_ctx(
    f: &UPoly<MPolyDom>,
    g: &UPoly<MPolyDom>,
) -> std::sync::Arc<crate::monomial::Ctx> {
    f.coeffs
        .iter()
        .chain(g.coeffs.iter())
        .find(|c| !c.is_zero_poly())
        .expect("nonzero")
        .ctx
        .clone()
}

/// Square-free part of a multivariate polynomial over Q:
/// `f / gcd(f, df/dx_1, ..., df/dx_n)`.
pub fn squarefree_part_multi(f: &MPoly) -> MPoly {
    if f.is_zero_poly() || f.is_constant() {
        return f.normalized_primitive();
    }
    let f = f.normalized_primitive();
    let mut g = f.clone();
    for i in 0..f.ctx.nvars() {
        let d = partial_derivative(&f, i);
        g = mv_gcd(&g, &d);
    }
    f.exact_divide(&g)
        .expect("repeated-factor gcd divides f")
        .normalized_primitive()
}

/// Partial derivative with respect to variable `idx`.
pub fn partial_derivative(f: &MPoly, idx: usize) -> MPoly {
    let mut terms = Vec::new();
    for (m, c) in &f.terms {
        let e = m.0[idx];
        if e == 0 {
            continue;
        }
        let mut m2 = m.clone();
        m2.0[idx] -= 1;
        terms.push((m2, c * crate::rat::rat(e as i64)));
    }
    MPoly::from_terms_in(&f.ctx, terms, &RatDom)
}
