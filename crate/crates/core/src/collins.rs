//! The Collins projection set of a single polynomial with a
//! distinguished variable: coefficients plus sub-discriminants of all
//! truncations, the associated coefficient-chain strata, and a
//! sample-based delineability probe.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gcd::partial_derivative;
use crate::monomial::Ctx;
use crate::parametric::BaseLocus;
use crate::poly::MPoly;
use crate::rat::{rat_sign, Rat};
use crate::realroots::{sturm_count, Bound};
use crate::subres::sres_chain_in;
use crate::upoly::UPoly;
use crate::domain::RatDom;
use num_traits::Zero;

/// The projection set of A with respect to main_var: the coefficient
/// chain c_n..c_0, the truncations sum_{k<=j} c_k x^k, and the principal
/// subresultant coefficients of each truncation against its derivative.
#[derive(Debug, Clone)]
pub struct ProjectionSet {
    pub main_var: String,
    /// c_n..c_0 as listed, highest degree first; zeros kept and flagged.
    pub coefficients: Vec<MPoly>,
    pub zero_flags: Vec<bool>,
    /// Deduplicated, largest truncation first.
    pub truncations: Vec<MPoly>,
    /// Deduplicated; nonzero constants are dropped, their
    /// sign-invariance is trivial.
    pub subdiscs: Vec<MPoly>,
}

fn coefficient_chain(a: &MPoly, var: usize) -> Vec<MPoly> {
    let u = a.as_upoly_in(var);
    let mut out: Vec<MPoly> = u.coeffs.into_iter().rev().collect();
    if out.is_empty() {
        out.push(MPoly::zero(&a.ctx));
    }
    out
}

fn push_unique(list: &mut Vec<MPoly>, p: MPoly) {
    if !list.contains(&p) {
        list.push(p);
    }
}

pub fn projection_set(a: &MPoly, main_var: &str) -> Result<ProjectionSet> {
    let ctx = a.ctx.clone();
    let var = ctx
        .var_index(main_var)
        .ok_or_else(|| Error::Precondition(format!("unknown variable {}", main_var)))?;
    if a.degree_in(var).unwrap_or(0) == 0 {
        return Ok(ProjectionSet {
            main_var: main_var.to_string(),
            coefficients: vec![a.clone()],
            zero_flags: vec![a.is_zero_poly()],
            truncations: vec![a.clone()],
            subdiscs: vec![],
        });
    }
    let coefficients = coefficient_chain(a, var);
    let zero_flags: Vec<bool> = coefficients.iter().map(|c| c.is_zero_poly()).collect();
    let n = coefficients.len() - 1;
    let mut truncations: Vec<MPoly> = Vec::new();
    for j in (0..=n).rev() {
        let mut b = MPoly::zero(&ctx);
        for k in 0..=j {
            let ck = &coefficients[n - k];
            let xk = MPoly::var(&ctx, main_var)?.pow(k as u32);
            b = b.add(&ck.mul(&xk));
        }
        if !b.is_zero_poly() {
            push_unique(&mut truncations, b);
        }
    }
    let mut subdiscs: Vec<MPoly> = Vec::new();
    for b in &truncations {
        let d = b.degree_in(var).unwrap_or(0) as usize;
        if d == 0 {
            continue;
        }
        let db = partial_derivative(b, var);
        let chain = sres_chain_in(b, &db, var)?;
        for j in 0..d {
            let principal = chain[j]
                .as_upoly_in(var)
                .coeffs
                .get(j)
                .cloned()
                .unwrap_or_else(|| MPoly::zero(&ctx));
            if principal.is_zero_poly() || principal.is_constant() {
                continue;
            }
            push_unique(&mut subdiscs, principal);
        }
    }
    Ok(ProjectionSet {
        main_var: main_var.to_string(),
        coefficients,
        zero_flags,
        truncations,
        subdiscs,
    })
}

/// One step Y_i of the coefficient chain: the locus where the leading
/// i coefficients vanish and the next one does not. The final step has
/// no nonvanish condition; there A is identically zero in the main
/// variable and its zero set is a cylinder.
#[derive(Debug, Clone)]
pub struct SinglePolyStratum {
    pub index: usize,
    pub equations: Vec<MPoly>,
    pub nonvanish: Option<MPoly>,
    pub cylinder: bool,
    pub empty: bool,
}

pub fn single_poly_strata(a: &MPoly, main_var: &str) -> Result<Vec<SinglePolyStratum>> {
    let pset = projection_set(a, main_var)?;
    let ctx = a.ctx.clone();
    let mut out = Vec::with_capacity(pset.coefficients.len() + 1);
    let mut eqs: Vec<MPoly> = Vec::new();
    for (i, c) in pset.coefficients.iter().enumerate() {
        out.push(make_stratum(&ctx, i, eqs.clone(), Some(c.clone()), false)?);
        eqs.push(c.clone());
    }
    let i = pset.coefficients.len();
    out.push(make_stratum(&ctx, i, eqs, None, true)?);
    Ok(out)
}

fn make_stratum(
    ctx: &Arc<Ctx>,
    index: usize,
    equations: Vec<MPoly>,
    nonvanish: Option<MPoly>,
    cylinder: bool,
) -> Result<SinglePolyStratum> {
    let nonzero_eqs: Vec<MPoly> = equations
        .iter()
        .filter(|e| !e.is_zero_poly())
        .cloned()
        .collect();
    let base = BaseLocus::new(ctx, &nonzero_eqs)?;
    let empty = match &nonvanish {
        _ if base.is_trivial() => true,
        Some(h) => base.radical_member(h)?,
        None => false,
    };
    Ok(SinglePolyStratum {
        index,
        equations,
        nonvanish,
        cylinder,
        empty,
    })
}

/// Membership test for a parameter point (main-var coordinate ignored).
pub fn stratum_contains(st: &SinglePolyStratum, pt: &[Rat]) -> bool {
    st.equations.iter().all(|e| e.eval(pt).is_zero())
        && st
            .nonvanish
            .as_ref()
            .map_or(true, |h| !h.eval(pt).is_zero())
}

/// A region of the parameter space: equations plus strict sign
/// conditions (sign is +1 or -1) on arbitrary polynomials, typically
/// drawn from the projection set.
#[derive(Debug, Clone)]
pub struct Region {
    pub equations: Vec<MPoly>,
    pub signs: Vec<(MPoly, i32)>,
}

/// Sampling evidence for delineability on a region: the common real
/// root count if the samples land in one sign cell of P and agree.
#[derive(Debug, Clone)]
pub struct DelineabilityReport {
    /// Sign vectors over coefficients then subdiscs, one per sample.
    pub sign_vectors: Vec<Vec<i32>>,
    pub counts: Vec<usize>,
    /// False means "samples not in one sign cell", not a failure.
    pub one_sign_cell: bool,
    /// The shared count, present when the cell is consistent and all
    /// counts agree.
    pub common_count: Option<usize>,
    pub mismatch: Option<String>,
}

fn specialize_main(a: &MPoly, var: usize, pt: &[Rat]) -> UPoly<RatDom> {
    let u = a.as_upoly_in(var);
    let coeffs: Vec<Rat> = u.coeffs.iter().map(|c| c.eval(pt)).collect();
    UPoly::from_coeffs(coeffs, &RatDom)
}

pub fn delineability_probe(
    a: &MPoly,
    main_var: &str,
    region: &Region,
    samples: &[Vec<Rat>],
) -> Result<DelineabilityReport> {
    let var = a
        .ctx
        .var_index(main_var)
        .ok_or_else(|| Error::Precondition(format!("unknown variable {}", main_var)))?;
    let pset = projection_set(a, main_var)?;
    for pt in samples {
        for e in &region.equations {
            if !e.eval(pt).is_zero() {
                return Err(Error::Precondition(format!(
                    "sample violates region equation {}",
                    crate::io::print_poly(e)
                )));
            }
        }
        for (p, s) in &region.signs {
            if rat_sign(&p.eval(pt)) != *s {
                return Err(Error::Precondition(format!(
                    "sample violates sign condition on {}",
                    crate::io::print_poly(p)
                )));
            }
        }
    }
    let mut sign_vectors = Vec::with_capacity(samples.len());
    let mut counts = Vec::with_capacity(samples.len());
    for pt in samples {
        let mut sv = Vec::new();
        for p in pset.coefficients.iter().chain(&pset.subdiscs) {
            sv.push(rat_sign(&p.eval(pt)));
        }
        sign_vectors.push(sv);
        let u = specialize_main(a, var, pt);
        counts.push(sturm_count(&u, &Bound::NegInf, &Bound::PosInf));
    }
    let one_sign_cell = sign_vectors.windows(2).all(|w| w[0] == w[1]);
    if !one_sign_cell {
        return Ok(DelineabilityReport {
            sign_vectors,
            counts,
            one_sign_cell,
            common_count: None,
            mismatch: Some("samples not in one sign cell".into()),
        });
    }
    let constant = counts.windows(2).all(|w| w[0] == w[1]);
    let (common_count, mismatch) = if constant {
        (counts.first().copied(), None)
    } else {
        (
            None,
            Some(format!(
                "real-root count varies within one sign cell: {:?}",
                counts
            )),
        )
    };
    Ok(DelineabilityReport {
        sign_vectors,
        counts,
        one_sign_cell,
        common_count,
        mismatch,
    })
}
