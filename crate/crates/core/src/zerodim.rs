//! Zero-dimensional quotient algebras over a field: Groebner bases,
//! standard-monomial bases, multiplication matrices L_sigma, and the
//! Stickelberger-style fiber summaries read off their characteristic
//! polynomials.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::domain::{Domain, RatDom};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::monomial::{Ctx, Monomial};
use crate::poly::{KPoly, MPoly};
use crate::rat::Rat;
use crate::upoly::{QPoly, UPoly};

pub const DEFAULT_SPAIR_CAP: usize = 100_000;

/// A reduced Groebner basis: monic generators, no leading monomial divides
/// another, every generator fully reduced against the rest.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<D: Domain> {
    pub ctx: Arc<Ctx>,
    pub gens: Vec<KPoly<D>>,
}

/// The standard monomials under the leading-term ideal, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientBasis {
    pub monomials: Vec<Monomial>,
    pub dim: usize,
}

/// What the characteristic polynomial of L_sigma reveals about the fiber.
#[derive(Debug, Clone)]
pub struct FiberSummary {
    pub charpoly: QPoly,
    pub sqfree: QPoly,
    /// deg sqfree: the number of distinct sigma-values, which equals the
    /// geometric point count exactly when sigma separates.
    pub geo_count: usize,
    /// (root, multiplicity) pairs, present only when charpoly splits over Q.
    pub multiplicities: Option<Vec<(Rat, usize)>>,
}

/// Remainder of `f` on division by `gens` (leading monomials assumed
/// pairwise processed in list order; deterministic).
pub fn normal_form<D: Domain>(f: &KPoly<D>, gens: &[KPoly<D>], dom: &D) -> KPoly<D> {
    let mut rem = KPoly::zero_in(&f.ctx);
    let mut cur = f.clone();
    'outer: while let Some((lm, lc)) = cur.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for g in gens {
            let (gm, gc) = match g.leading() {
                Some(x) => x,
                None => continue,
            };
            if gm.divides(&lm) {
                let quot_m = gm.div_into(&lm).unwrap();
                let quot_c = dom
                    .exact_div(&lc, gc)
                    .expect("division by the leading unit");
                cur = cur.sub_in(&g.mul_term_in(&quot_m, &quot_c, dom), dom);
                cur = cur.renormalize_in(dom);
                continue 'outer;
            }
        }
        // move the leading term to the remainder
        let t = KPoly::from_terms_in(&f.ctx, vec![(lm.clone(), lc.clone())], dom);
        rem = rem.add_in(&t, dom);
        cur = cur.sub_in(&t, dom);
    }
    rem
}

fn make_monic<D: Domain>(f: &KPoly<D>, dom: &D) -> KPoly<D> {
    match f.leading() {
        None => f.clone(),
        Some((_, c)) => {
            let inv = dom.inv(c).expect("field leading coefficient");
            f.scale_in(&inv, dom)
        }
    }
}

fn s_poly<D: Domain>(f: &KPoly<D>, g: &KPoly<D>, dom: &D) -> KPoly<D> {
    let (fm, _) = f.leading().unwrap();
    let (gm, _) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term_in(&fm.div_into(&l).unwrap(), &dom.one(), dom);
    let b = g.mul_term_in(&gm.div_into(&l).unwrap(), &dom.one(), dom);
    a.sub_in(&b, dom).renormalize_in(dom)
}

/// Buchberger with the normal pair-selection strategy (smallest lcm total
/// degree, ties by generator indices), monic generators, reduced output.
/// The S-pair budget guards against runaway inputs.
pub fn buchberger<D: Domain>(
    input: &[KPoly<D>],
    dom: &D,
    spair_cap: usize,
) -> Result<GroebnerBasis<D>> {
    let ctx = input
        .first()
        .map(|f| f.ctx.clone())
        .ok_or_else(|| Error::Precondition("empty generator list".into()))?;
    let mut gens: Vec<KPoly<D>> = Vec::new();
    for f in input {
        let f = f.renormalize_in(dom);
        if !f.is_zero_poly() {
            gens.push(make_monic(&f, dom));
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..gens.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    let mut processed = 0usize;
    while !pairs.is_empty() {
        processed += 1;
        if processed > spair_cap {
            return Err(Error::ResourceLimit(spair_cap));
        }
        // normal strategy
        let key = |&(i, j): &(usize, usize)| {
            let (mi, _) = gens[i].leading().unwrap();
            let (mj, _) = gens[j].leading().unwrap();
            (mi.lcm(mj).total_degree(), i, j)
        };
        let best = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| key(p))
            .map(|(idx, _)| idx)
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        let (mi, _) = gens[i].leading().unwrap();
        let (mj, _) = gens[j].leading().unwrap();
        // product criterion
        if mi.lcm(mj).total_degree() == mi.total_degree() + mj.total_degree() {
            continue;
        }
        let s = s_poly(&gens[i], &gens[j], dom);
        let r = normal_form(&s, &gens, dom);
        if !r.is_zero_poly() {
            let r = make_monic(&r, dom);
            let k = gens.len();
            for t in 0..k {
                pairs.push((t, k));
            }
            gens.push(r);
        }
    }
    // interreduce: drop generators with redundant leading monomials, then
    // reduce each fully against the others
    let mut keep: Vec<KPoly<D>> = Vec::new();
    for (i, f) in gens.iter().enumerate() {
        let (fm, _) = f.leading().unwrap();
        let redundant = gens.iter().enumerate().any(|(j, g)| {
            if i == j {
                return false;
            }
            let (gm, _) = g.leading().unwrap();
            gm.divides(fm) && (gm != fm || j < i)
        });
        if !redundant {
            keep.push(f.clone());
        }
    }
    let mut reduced: Vec<KPoly<D>> = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<KPoly<D>> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = normal_form(&keep[i], &others, dom);
        if !r.is_zero_poly() {
            reduced.push(make_monic(&r, dom));
        }
    }
    // canonical presentation: descending leading monomials
    reduced.sort_by(|a, b| {
        let (am, _) = a.leading().unwrap();
        let (bm, _) = b.leading().unwrap();
        ctx.cmp_mono(bm, am)
    });
    Ok(GroebnerBasis { ctx, gens: reduced })
}

impl<D: Domain> GroebnerBasis<D> {
    pub fn normal_form(&self, f: &KPoly<D>, dom: &D) -> KPoly<D> {
        normal_form(f, &self.gens, dom)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant() && !g.is_zero_poly())
    }
}

/// Standard monomials of the leading-term ideal. `{1}` yields the empty
/// variety: dim 0, basis []. A variable with no pure-power leading
/// monomial witnesses a positive-dimensional quotient.
pub fn quotient_basis<D: Domain>(gb: &GroebnerBasis<D>) -> Result<QuotientBasis> {
    if gb.is_trivial() {
        return Ok(QuotientBasis {
            monomials: vec![],
            dim: 0,
        });
    }
    let nv = gb.ctx.nvars();
    let lms: Vec<Monomial> = gb
        .gens
        .iter()
        .map(|g| g.leading().unwrap().0.clone())
        .collect();
    let mut bounds = vec![None::<u32>; nv];
    for m in &lms {
        for v in 0..nv {
            if m.0[v] > 0 && m.0.iter().enumerate().all(|(w, &e)| w == v || e == 0) {
                let b = m.0[v];
                bounds[v] = Some(bounds[v].map_or(b, |old: u32| old.min(b)));
            }
        }
    }
    for (v, b) in bounds.iter().enumerate() {
        if b.is_none() {
            return Err(Error::NotZeroDimensional(gb.ctx.vars[v].clone()));
        }
    }
    let mut monomials = vec![Monomial::one(nv)];
    for v in 0..nv {
        let b = bounds[v].unwrap();
        let mut next = Vec::new();
        for m in &monomials {
            for e in 0..b {
                let mut m2 = m.clone();
                m2.0[v] = e;
                next.push(m2);
            }
        }
        monomials = next;
    }
    monomials.retain(|m| !lms.iter().any(|lm| lm.divides(m)));
    monomials.sort_by(|a, b| gb.ctx.cmp_mono(a, b));
    let dim = monomials.len();
    Ok(QuotientBasis { monomials, dim })
}

/// Matrix of multiplication by sigma on the quotient, columns indexed by
/// the standard monomials.
pub fn mult_matrix<D: Domain>(
    sigma: &KPoly<D>,
    gb: &GroebnerBasis<D>,
    qb: &QuotientBasis,
    dom: &D,
) -> Matrix<D> {
    let d = qb.dim;
    let mut m = Matrix::zero(d, d, dom);
    for (j, bm) in qb.monomials.iter().enumerate() {
        let prod = sigma.mul_term_in(bm, &dom.one(), dom);
        let nf = gb.normal_form(&prod, dom);
        for (mono, c) in &nf.terms {
            let i = qb
                .monomials
                .iter()
                .position(|b| b == mono)
                .expect("normal form supported on standard monomials");
            *m.at_mut(i, j) = c.clone();
        }
    }
    m
}

/// Trace and determinant of L_sigma: by Stickelberger the weighted sum and
/// product of sigma over the fiber.
pub fn trace_det<D: Domain>(
    sigma: &KPoly<D>,
    gb: &GroebnerBasis<D>,
    qb: &QuotientBasis,
    dom: &D,
) -> Result<(D::Elem, D::Elem)> {
    let m = mult_matrix(sigma, gb, qb, dom);
    let tr = m.trace(dom);
    let det = m.det(dom)?;
    Ok((tr, det))
}

/// Characteristic polynomial of L_sigma.
pub fn char_poly_of<D: Domain>(
    sigma: &KPoly<D>,
    gb: &GroebnerBasis<D>,
    qb: &QuotientBasis,
    dom: &D,
) -> Result<UPoly<D>> {
    mult_matrix(sigma, gb, qb, dom).char_poly(dom)
}

/// Rational roots of a nonzero polynomial over Q, by trying divisors of
/// the extreme integer coefficients. Returns None when the coefficients
/// are too large to enumerate.
pub fn rational_roots(p: &QPoly) -> Option<Vec<Rat>> {
    let d = p.degree()?;
    if d == 0 {
        return Some(vec![]);
    }
    // clear denominators
    let mut den = BigInt::from(1);
    for c in &p.coeffs {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let ints: Vec<BigInt> = p.coeffs.iter().map(|c| c.numer() * &den / c.denom()).collect();
    let mut low = 0;
    while ints[low].is_zero() {
        low += 1;
    }
    let a0 = ints[low].abs();
    let an = ints[d].abs();
    let limit = BigInt::from(1_000_000_000u64);
    if a0 > limit || an > limit {
        return None;
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n: i64 = n.to_string().parse().unwrap();
        let mut out = Vec::new();
        let mut k = 1i64;
        while k * k <= n {
            if n % k == 0 {
                out.push(BigInt::from(k));
                out.push(BigInt::from(n / k));
            }
            k += 1;
        }
        out
    };
    let mut roots: Vec<Rat> = Vec::new();
    if low > 0 {
        roots.push(Rat::from_integer(0.into()));
    }
    for num in divisors(&a0) {
        for dn in divisors(&an) {
            for sgn in [1i64, -1] {
                let cand = Rat::new(num.clone() * BigInt::from(sgn), dn.clone());
                if p.eval_rat(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

/// Multiplicity of `root` in `p`.
fn root_multiplicity(p: &QPoly, root: &Rat) -> usize {
    let lin = UPoly::from_coeffs(vec![-root.clone(), Rat::from_integer(1.into())], &RatDom);
    let mut mu = 0;
    let mut cur = p.clone();
    loop {
        let (q, r) = cur.div_rem(&lin, &RatDom).unwrap();
        if !r.is_zero() {
            return mu;
        }
        mu += 1;
        cur = q;
    }
}

/// Fiber summary over Q: characteristic polynomial of L_sigma, its
/// square-free part, and the induced geometric count.
pub fn fiber_summary(gb: &GroebnerBasis<RatDom>, sigma: &MPoly) -> Result<FiberSummary> {
    let qb = quotient_basis(gb)?;
    let chi = char_poly_of(sigma, gb, &qb, &RatDom)?;
    let sqfree = chi.squarefree_part();
    let geo_count = sqfree.degree().unwrap_or(0);
    let multiplicities = rational_roots(&sqfree).and_then(|roots| {
        if roots.len() == geo_count {
            Some(
                roots
                    .into_iter()
                    .map(|r| {
                        let mu = root_multiplicity(&chi, &r);
                        (r, mu)
                    })
                    .collect::<Vec<_>>(),
            )
        } else {
            None
        }
    });
    Ok(FiberSummary {
        charpoly: chi,
        sqfree,
        geo_count,
        multiplicities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_poly;
    use crate::rat::rat;

    fn gb_of(srcs: &[&str], ctx: &Arc<Ctx>) -> GroebnerBasis<RatDom> {
        let gens: Vec<MPoly> = srcs.iter().map(|s| parse_poly(s, ctx).unwrap()).collect();
        buchberger(&gens, &RatDom, DEFAULT_SPAIR_CAP).unwrap()
    }

    #[test]
    fn buchberger_already_reduced() {
        let ctx = Ctx::grevlex(vec!["x", "y"]);
        let gb = gb_of(&["x^2 - 2", "y^2 - 3"], &ctx);
        assert_eq!(gb.gens.len(), 2);
        assert_eq!(gb.gens[0], parse_poly("x^2 - 2", &ctx).unwrap());
        assert_eq!(gb.gens[1], parse_poly("y^2 - 3", &ctx).unwrap());
    }

    #[test]
    fn buchberger_linear_and_redundant() {
        let ctx = Ctx::grevlex(vec!["x", "y"]);
        let gb = gb_of(&["x - y", "x + y"], &ctx);
        let lms: Vec<String> = gb
            .gens
            .iter()
            .map(|g| crate::io::print_poly(g))
            .collect();
        assert_eq!(lms, vec!["x", "y"]);
        let ctx1 = Ctx::grevlex(vec!["x"]);
        let gb1 = buchberger(
            &[
                parse_poly("x^2 - 1", &ctx1).unwrap(),
                parse_poly("x - 1", &ctx1).unwrap(),
            ],
            &RatDom,
            DEFAULT_SPAIR_CAP,
        )
        .unwrap();
        assert_eq!(gb1.gens.len(), 1);
        assert_eq!(gb1.gens[0], parse_poly("x - 1", &ctx1).unwrap());
    }

    #[test]
    fn quotient_basis_examples() {
        let ctx = Ctx::grevlex(vec!["x", "y"]);
        let gb = gb_of(&["x^2 - 2", "y^2 - 3"], &ctx);
        let qb = quotient_basis(&gb).unwrap();
        assert_eq!(qb.dim, 4);
        let printed: Vec<String> = qb
            .monomials
            .iter()
            .map(|m| format!("{:?}", m.0))
            .collect();
        // grevlex ascending: 1 < y < x < xy
        assert_eq!(printed, vec!["[0, 0]", "[0, 1]", "[1, 0]", "[1, 1]"]);

        let gb_hyp = gb_of(&["x*y - 1"], &ctx);
        assert!(matches!(
            quotient_basis(&gb_hyp),
            Err(Error::NotZeroDimensional(_))
        ));

        let gb_triv = gb_of(&["x", "x - 1"], &ctx);
        assert!(gb_triv.is_trivial());
        assert_eq!(quotient_basis(&gb_triv).unwrap().dim, 0);
    }

    #[test]
    fn mult_matrix_and_charpoly() {
        let ctx = Ctx::grevlex(vec!["x"]);
        let gb = gb_of(&["x^2 - 2"], &ctx);
        let qb = quotient_basis(&gb).unwrap();
        let mx = mult_matrix(&parse_poly("x", &ctx).unwrap(), &gb, &qb, &RatDom);
        assert_eq!(mx.entries, vec![rat(0), rat(2), rat(1), rat(0)]);
        let chi = char_poly_of(&parse_poly("x", &ctx).unwrap(), &gb, &qb, &RatDom).unwrap();
        assert_eq!(chi, QPoly::from_i64(&[-2, 0, 1]));

        let one = mult_matrix(&MPoly::from_int(&ctx, 1), &gb, &qb, &RatDom);
        assert_eq!(one, Matrix::identity(2, &RatDom));
    }

    #[test]
    fn stickelberger_trace_det() {
        let ctx = Ctx::grevlex(vec!["x", "y"]);
        let gb = gb_of(&["x^2 - 2", "y^2 - 3"], &ctx);
        let qb = quotient_basis(&gb).unwrap();
        let sigma = parse_poly("x + y", &ctx).unwrap();
        let (tr, det) = trace_det(&sigma, &gb, &qb, &RatDom).unwrap();
        assert_eq!(tr, rat(0));
        assert_eq!(det, rat(1));
        let chi = char_poly_of(&sigma, &gb, &qb, &RatDom).unwrap();
        assert_eq!(chi, QPoly::from_i64(&[1, 0, -10, 0, 1]));

        let ctx1 = Ctx::grevlex(vec!["x"]);
        let gb1 = gb_of(&["(x - 1)*(x - 2)*(x - 3)"], &ctx1);
        let qb1 = quotient_basis(&gb1).unwrap();
        let (tr, det) = trace_det(&parse_poly("x", &ctx1).unwrap(), &gb1, &qb1, &RatDom).unwrap();
        assert_eq!((tr, det), (rat(6), rat(6)));
    }

    #[test]
    fn fiber_summaries() {
        let ctx = Ctx::grevlex(vec!["x"]);
        let gb = gb_of(&["x^2"], &ctx);
        let s = fiber_summary(&gb, &parse_poly("x", &ctx).unwrap()).unwrap();
        assert_eq!(s.geo_count, 1);
        assert_eq!(s.multiplicities, Some(vec![(rat(0), 2)]));

        let ctx2 = Ctx::grevlex(vec!["x", "y"]);
        let gb2 = gb_of(&["x^2 - 2", "y^2 - 3"], &ctx2);
        let sep = fiber_summary(&gb2, &parse_poly("x + y", &ctx2).unwrap()).unwrap();
        assert_eq!(sep.geo_count, 4);
        let nonsep = fiber_summary(&gb2, &parse_poly("x", &ctx2).unwrap()).unwrap();
        assert_eq!(nonsep.geo_count, 2);
    }

    #[test]
    fn rational_roots_basic() {
        let p = QPoly::from_i64(&[6, -11, 6, -1]); // -(x-1)(x-2)(x-3)
        assert_eq!(
            rational_roots(&p).unwrap(),
            vec![rat(1), rat(2), rat(3)]
        );
        let q = QPoly::from_coeffs(vec![Rat::new((-1).into(), 2.into()), rat(1)], &RatDom);
        assert_eq!(rational_roots(&q).unwrap(), vec![Rat::new(1.into(), 2.into())]);
    }
}
