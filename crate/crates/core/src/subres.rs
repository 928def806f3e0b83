//! Subresultant chains: Sylvester-style matrices, the determinantal minors
//! d_{j,i}, the subresultant polynomials sResP_j and principal coefficients
//! sRes_j, over any integral coefficient domain.
//!
//! The chain is produced by the subresultant PRS; the determinantal
//! definition is kept as `subres_poly_det` and serves as the oracle in
//! tests. Signs match the minor definition exactly (rows 1..p+q-2j-1 and
//! p+q-j-i of the j-th matrix), which matters because callers divide by
//! chain entries.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{MPoly, MPolyDom};
use crate::rat::Rat;
use crate::upoly::UPoly;

/// The subresultant chain of a pair with deg f = p > q = deg g.
/// `polys[j]` is sResP_j for 0 <= j <= q; sResP_q is lc(g)^(p-q-1) * g.
#[derive(Debug, Clone)]
pub struct SresChain<D: Domain> {
    pub p: usize,
    pub q: usize,
    pub polys: Vec<UPoly<D>>,
}

impl<D: Domain> SresChain<D> {
    /// Principal coefficient sRes_j: the coefficient of x^j in sResP_j.
    /// Zero exactly when the chain is defective or vanishing at j.
    pub fn principal(&self, j: usize, dom: &D) -> D::Elem {
        self.polys[j].coeff(j, dom)
    }

    /// sRes_0 ... sRes_{q-1}.
    pub fn principal_coeffs(&self, dom: &D) -> Vec<D::Elem> {
        (0..self.q).map(|j| self.principal(j, dom)).collect()
    }

    /// The resultant sRes_0.
    pub fn resultant(&self, dom: &D) -> D::Elem {
        self.polys[0].coeff(0, dom)
    }
}

fn pow_elem<D: Domain>(dom: &D, base: &D::Elem, n: usize) -> D::Elem {
    let mut acc = dom.one();
    for _ in 0..n {
        acc = dom.mul(&acc, base);
    }
    acc
}

/// The j-th Sylvester-style matrix of the pair: the map (u, v) -> u*f + v*g
/// on deg u < q - j, deg v < p - j, written in the monomial bases. Columns
/// are f*x^(q-j-1), ..., f, then g*x^(p-j-1), ..., g; rows are indexed by
/// the degrees p+q-j-1 down to 0. Shape (p+q-j) rows by (p+q-2j) columns.
pub fn sylvester_matrix<D: Domain>(
    f: &UPoly<D>,
    g: &UPoly<D>,
    j: usize,
    dom: &D,
) -> Result<Matrix<D>> {
    let (p, q) = oriented_degrees(f, g)?;
    if j > q {
        return Err(Error::Precondition(format!(
            "subresultant index {} out of range (deg g = {})",
            j, q
        )));
    }
    let rows = p + q - j;
    let cols = p + q - 2 * j;
    let mut m = Matrix::zero(rows, cols, dom);
    // column `c` holds h*x^t; entry in the row of degree d is coeff_{d-t}(h)
    let mut col = 0;
    for t in (0..q - j).rev() {
        for (k, a) in f.coeffs.iter().enumerate() {
            let d = k + t;
            let row = rows - 1 - d;
            *m.at_mut(row, col) = a.clone();
        }
        col += 1;
    }
    for t in (0..p - j).rev() {
        for (k, b) in g.coeffs.iter().enumerate() {
            let d = k + t;
            let row = rows - 1 - d;
            *m.at_mut(row, col) = b.clone();
        }
        col += 1;
    }
    Ok(m)
}

/// The defining minor d_{j,i}: rows 1..p+q-2j-1 and p+q-j-i of the j-th
/// matrix (1-indexed), all columns. Defined for 0 <= i <= j <= q.
pub fn subres_minor<D: Domain>(
    f: &UPoly<D>,
    g: &UPoly<D>,
    j: usize,
    i: usize,
    dom: &D,
) -> Result<D::Elem> {
    let (p, q) = oriented_degrees(f, g)?;
    if j > q || i > j {
        return Err(Error::Precondition(format!("minor d_{{{},{}}} out of range", j, i)));
    }
    let m = sylvester_matrix(f, g, j, dom)?;
    let n = p + q - 2 * j;
    let mut rows: Vec<usize> = (0..n.saturating_sub(1)).collect();
    rows.push(p + q - j - i - 1);
    let mut sub = Matrix::zero(n, n, dom);
    for (r2, &r) in rows.iter().enumerate() {
        for c in 0..n {
            *sub.at_mut(r2, c) = m.at(r, c).clone();
        }
    }
    sub.det_bareiss(dom)
}

/// sResP_j straight from the determinantal definition. Oracle path; the
/// PRS in `sres_chain` is the fast path.
pub fn subres_poly_det<D: Domain>(
    f: &UPoly<D>,
    g: &UPoly<D>,
    j: usize,
    dom: &D,
) -> Result<UPoly<D>> {
    let mut coeffs = Vec::with_capacity(j + 1);
    for i in 0..=j {
        coeffs.push(subres_minor(f, g, j, i, dom)?);
    }
    Ok(UPoly::from_coeffs(coeffs, dom))
}

fn oriented_degrees<D: Domain>(f: &UPoly<D>, g: &UPoly<D>) -> Result<(usize, usize)> {
    let p = f
        .degree()
        .ok_or_else(|| Error::Precondition("zero input polynomial".into()))?;
    let q = g
        .degree()
        .ok_or_else(|| Error::Precondition("zero input polynomial".into()))?;
    if p <= q {
        return Err(Error::Precondition(format!(
            "pair must be oriented with deg f > deg g (got {} <= {})",
            p, q
        )));
    }
    Ok((p, q))
}

/// Full chain sResP_0..sResP_q by the subresultant PRS.
pub fn sres_chain<D: Domain>(f: &UPoly<D>, g: &UPoly<D>, dom: &D) -> Result<SresChain<D>> {
    let (p, q) = oriented_degrees(f, g)?;
    let mut polys = vec![UPoly::zero(); q + 1];
    polys[q] = g.scale(&pow_elem(dom, &g.lc(dom), p - q - 1), dom);
    if q == 0 {
        // sResP_0 = res(f, b_0) = b_0^p
        polys[0] = UPoly::constant(pow_elem(dom, &g.lc(dom), p), dom);
        return Ok(SresChain { p, q, polys });
    }
    let mut s = pow_elem(dom, &g.lc(dom), p - q);
    let mut a = g.clone();
    let mut b = f.pseudo_rem(&g.neg(dom), dom);
    loop {
        if b.is_zero() {
            break;
        }
        let d = a.degree().unwrap();
        let e = b.degree().unwrap();
        polys[d - 1] = b.clone();
        let delta = d - e;
        let c = if delta > 1 {
            let num = b.scale(&pow_elem(dom, &b.lc(dom), delta - 1), dom);
            let den = pow_elem(dom, &s, delta - 1);
            let c = num
                .exact_div_scalar(&den, dom)
                .ok_or_else(|| Error::InvariantViolation("inexact PRS division".into()))?;
            polys[e] = c.clone();
            c
        } else {
            b.clone()
        };
        if e == 0 {
            break;
        }
        let num = a.pseudo_rem(&b.neg(dom), dom);
        let den = dom.mul(&pow_elem(dom, &s, delta), &a.lc(dom));
        b = num
            .exact_div_scalar(&den, dom)
            .ok_or_else(|| Error::InvariantViolation("inexact PRS division".into()))?;
        a = c;
        s = a.lc(dom);
    }
    Ok(SresChain { p, q, polys })
}

/// The resultant sRes_0(f, g), with deg f > deg g.
pub fn resultant<D: Domain>(f: &UPoly<D>, g: &UPoly<D>, dom: &D) -> Result<D::Elem> {
    Ok(sres_chain(f, g, dom)?.resultant(dom))
}

/// Degree of gcd(f, g) over a field, with the witness subresultant
/// polynomial (an associate of the gcd): the least j with sRes_j nonzero.
/// Orients the pair internally; equal degrees are reduced once.
pub fn gcd_degree<D: Domain>(f: &UPoly<D>, g: &UPoly<D>, dom: &D) -> Result<(usize, UPoly<D>)> {
    let p = f
        .degree()
        .ok_or_else(|| Error::Precondition("zero input polynomial".into()))?;
    let q = g
        .degree()
        .ok_or_else(|| Error::Precondition("zero input polynomial".into()))?;
    if p < q {
        return gcd_degree(g, f, dom);
    }
    if p == q {
        // reduce g by f once; the gcd is unchanged
        let ratio = dom
            .exact_div(&g.lc(dom), &f.lc(dom))
            .ok_or_else(|| Error::Precondition("field coefficients required".into()))?;
        let g2 = g.sub(&f.scale(&ratio, dom), dom);
        if g2.is_zero() {
            return Ok((p, f.clone()));
        }
        return gcd_degree(f, &g2, dom);
    }
    let chain = sres_chain(f, g, dom)?;
    for j in 0..q {
        if !dom.is_zero(&chain.principal(j, dom)) {
            return Ok((j, chain.polys[j].clone()));
        }
    }
    Ok((q, chain.polys[q].clone()))
}

/// Outcome of a specialization check: the chain of the specialized pair
/// against the specialized chain, entry for entry.
#[derive(Debug, Clone)]
pub struct SpecializationReport {
    pub pass: bool,
    /// (j, description) for the first differing entry, if any.
    pub first_discrepancy: Option<(usize, String)>,
}

/// Verify the specialization property of the chain under a (possibly
/// partial) assignment of the coefficient variables. Errors if the
/// assignment kills a leading coefficient, the excluded case.
pub fn check_specialization(
    f: &UPoly<MPolyDom>,
    g: &UPoly<MPolyDom>,
    assignment: &[(String, Rat)],
) -> Result<SpecializationReport> {
    let ctx = f
        .coeffs
        .iter()
        .chain(g.coeffs.iter())
        .find(|c| !c.is_zero_poly())
        .ok_or_else(|| Error::Precondition("zero input polynomial".into()))?
        .ctx
        .clone();
    let dom = MPolyDom { ctx };
    let (_, _) = oriented_degrees(f, g)?;
    let lcf = f.lc(&dom).specialize(assignment)?;
    let lcg = g.lc(&dom).specialize(assignment)?;
    if lcf.is_zero_poly() || lcg.is_zero_poly() {
        return Err(Error::Precondition(
            "assignment kills a leading coefficient; chain need not specialize".into(),
        ));
    }
    let sub_ctx = lcf.ctx.clone();
    let sub_dom = MPolyDom { ctx: sub_ctx };
    let spec_upoly = |u: &UPoly<MPolyDom>| -> Result<UPoly<MPolyDom>> {
        let mut coeffs = Vec::with_capacity(u.coeffs.len());
        for c in &u.coeffs {
            coeffs.push(c.specialize(assignment)?);
        }
        Ok(UPoly::from_coeffs(coeffs, &sub_dom))
    };
    let chain = sres_chain(f, g, &dom)?;
    let fs = spec_upoly(f)?;
    let gs = spec_upoly(g)?;
    let chain_s = sres_chain(&fs, &gs, &sub_dom)?;
    for j in 0..=chain.q {
        let lhs = spec_upoly(&chain.polys[j])?;
        let rhs = &chain_s.polys[j];
        if &lhs != rhs {
            return Ok(SpecializationReport {
                pass: false,
                first_discrepancy: Some((
                    j,
                    format!(
                        "sResP_{}: specialized chain gives [{}], chain of specialization gives [{}]",
                        j,
                        lhs.coeffs
                            .iter()
                            .map(|c| sub_dom.fmt_elem(c))
                            .collect::<Vec<_>>()
                            .join(", "),
                        rhs.coeffs
                            .iter()
                            .map(|c| sub_dom.fmt_elem(c))
                            .collect::<Vec<_>>()
                            .join(", "),
                    ),
                )),
            });
        }
    }
    Ok(SpecializationReport {
        pass: true,
        first_discrepancy: None,
    })
}

/// View a multivariate polynomial pair as univariate in `var` and return
/// the chain, with entries flattened back into the ambient.
pub fn sres_chain_in(f: &MPoly, g: &MPoly, var: usize) -> Result<Vec<MPoly>> {
    let dom = MPolyDom { ctx: f.ctx.clone() };
    let fu = f.as_upoly_in(var);
    let gu = g.as_upoly_in(var);
    let chain = sres_chain(&fu, &gu, &dom)?;
    Ok(chain
        .polys
        .iter()
        .map(|u| MPoly::from_upoly_in(u, &f.ctx, var))
        .collect())
}
