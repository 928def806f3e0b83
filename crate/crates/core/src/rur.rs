//! Separating elements and the rational univariate representation of a
//! zero-dimensional ideal: a square-free univariate u together with
//! numerators g, g_1..g_n such that x_i = g_i(lambda)/g(lambda) at the
//! points of the variety, lambda running over the roots of u.

use std::sync::Arc;

use crate::domain::{Domain, RatDom};
use crate::error::{Error, Result};
use crate::monomial::Ctx;
use crate::poly::{KPoly, MPoly};
use crate::upoly::{QPoly, UPoly};
use crate::zerodim::{
    fiber_summary, mult_matrix, quotient_basis, FiberSummary, GroebnerBasis, QuotientBasis,
};

#[derive(Debug, Clone)]
pub struct Rur {
    pub sigma: MPoly,
    /// Monic square-free; its roots are the sigma-values of the fiber.
    pub u: QPoly,
    pub g: QPoly,
    /// One numerator per ambient variable, reduced mod u.
    pub numerators: Vec<QPoly>,
    pub geo_count: usize,
}

impl Rur {
    pub fn u_coeffs(&self) -> &[crate::rat::Rat] {
        &self.u.coeffs
    }
}

/// The candidate separating elements x_1 + i x_2 + ... + i^(n-1) x_n for
/// 0 <= i <= (n-1) * C(d,2); at least one of them separates any set of at
/// most d points.
pub fn candidate_family<D: Domain>(ctx: &Arc<Ctx>, d: usize, dom: &D) -> Vec<KPoly<D>> {
    let n = ctx.nvars();
    assert!(n >= 1 && d >= 1);
    let bound = (n - 1) * (d * d.saturating_sub(1) / 2);
    let mut out = Vec::with_capacity(bound + 1);
    for i in 0..=bound {
        let mut sigma = KPoly::zero_in(ctx);
        let mut weight = dom.one();
        for v in 0..n {
            let xv = KPoly::var_in(ctx, v, dom);
            sigma = sigma.add_in(&xv.scale_in(&weight, dom), dom);
            weight = dom.mul(&weight, &dom.from_int(i as i64));
        }
        out.push(sigma);
    }
    out
}

/// Pick the candidate maximizing the square-free degree of its
/// characteristic polynomial; ties go to the smallest index. The maximum
/// equals the geometric count, so the argmax separates.
pub fn select_separating(gb: &GroebnerBasis<RatDom>) -> Result<(MPoly, FiberSummary)> {
    let qb = quotient_basis(gb)?;
    if qb.dim == 0 {
        return Err(Error::EmptyStratum);
    }
    let candidates = candidate_family(&gb.ctx, qb.dim, &RatDom);
    let mut best: Option<(MPoly, FiberSummary)> = None;
    for sigma in candidates {
        let s = fiber_summary(gb, &sigma)?;
        let better = match &best {
            None => true,
            Some((_, b)) => s.geo_count > b.geo_count,
        };
        if better {
            best = Some((sigma, s));
        }
    }
    Ok(best.unwrap())
}

/// Traces tr L_{f sigma^i} for i = 0..d-1.
fn power_traces<D: Domain>(
    f: &KPoly<D>,
    sigma: &KPoly<D>,
    gb: &GroebnerBasis<D>,
    qb: &QuotientBasis,
    dom: &D,
) -> Vec<D::Elem> {
    let d = qb.dim;
    let ms = mult_matrix(sigma, gb, qb, dom);
    let mut acc = mult_matrix(f, gb, qb, dom);
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        out.push(acc.trace(dom));
        if i + 1 < d {
            acc = acc.mul(&ms, dom);
        }
    }
    out
}

/// The numerator attached to f: the double sum
/// sum_{l<d} sum_{i<d-l} tr(L_{f sigma^i}) u_{l+i+1} lambda^l,
/// with u_j = 0 past deg u. Equals sum_p mu(p) f(p) prod_{p'!=p}(lambda - sigma(p')).
pub fn rur_numerator<D: Domain>(
    f: &KPoly<D>,
    sigma: &KPoly<D>,
    u: &UPoly<D>,
    gb: &GroebnerBasis<D>,
    qb: &QuotientBasis,
    dom: &D,
) -> UPoly<D> {
    let d = qb.dim;
    let traces = power_traces(f, sigma, gb, qb, dom);
    let ucoeff = |j: usize| -> D::Elem {
        u.coeffs.get(j).cloned().unwrap_or_else(|| dom.zero())
    };
    let mut coeffs = Vec::with_capacity(d);
    for l in 0..d {
        let mut c = dom.zero();
        for i in 0..(d - l) {
            c = dom.add(&c, &dom.mul(&traces[i], &ucoeff(l + i + 1)));
        }
        coeffs.push(c);
    }
    UPoly::from_coeffs(coeffs, dom)
}

/// Substitute x_i -> g_i/g into F homogeneously, clearing denominators
/// with g^(total deg F); the result is taken mod u.
fn back_substitute(
    f: &MPoly,
    g: &QPoly,
    numerators: &[QPoly],
    u: &QPoly,
) -> QPoly {
    let dom = RatDom;
    let e = f.total_degree().unwrap_or(0) as usize;
    let mut acc = UPoly::zero();
    for (m, c) in &f.terms {
        let mut term = UPoly::constant(c.clone(), &dom);
        let mut used = 0usize;
        for (v, &exp) in m.0.iter().enumerate() {
            for _ in 0..exp {
                term = term.mul(&numerators[v], &dom);
                used += 1;
            }
        }
        for _ in used..e {
            term = term.mul(g, &dom);
        }
        acc = acc.add(&term, &dom);
        let (_, r) = acc.div_rem(u, &dom).unwrap();
        acc = r;
    }
    acc
}

/// Build the full representation and verify its defining identities.
pub fn rur_build(gb: &GroebnerBasis<RatDom>) -> Result<Rur> {
    let qb = quotient_basis(gb)?;
    if qb.dim == 0 {
        return Err(Error::EmptyStratum);
    }
    let (sigma, summary) = select_separating(gb)?;
    let u = summary.sqfree.clone();
    let dom = RatDom;
    let reduce = |p: UPoly<RatDom>| -> QPoly {
        let (_, r) = p.div_rem(&u, &dom).unwrap();
        r
    };
    let one = MPoly::from_int(&gb.ctx, 1);
    let g = reduce(rur_numerator(&one, &sigma, &u, gb, &qb, &dom));
    let mut numerators = Vec::with_capacity(gb.ctx.nvars());
    for v in 0..gb.ctx.nvars() {
        let xv = MPoly::var_in(&gb.ctx, v, &dom);
        numerators.push(reduce(rur_numerator(&xv, &sigma, &u, gb, &qb, &dom)));
    }
    let du = u.derivative(&dom);
    if u.gcd(&du).degree() != Some(0) {
        return Err(Error::InvariantViolation("u is not square-free".into()));
    }
    if g.is_zero() || u.gcd(&g).degree() != Some(0) {
        return Err(Error::InvariantViolation(
            "g is not invertible modulo u".into(),
        ));
    }
    for gen in &gb.gens {
        let r = back_substitute(gen, &g, &numerators, &u);
        if !r.is_zero() {
            return Err(Error::InvariantViolation(format!(
                "back-substitution fails on generator {}",
                crate::io::print_poly(gen)
            )));
        }
    }
    Ok(Rur {
        sigma,
        u,
        g,
        numerators,
        geo_count: summary.geo_count,
    })
}
