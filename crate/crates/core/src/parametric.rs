//! Stratification of the parameter space of a parametric polynomial
//! system into locally closed strata on which the geometric fiber count
//! is constant, together with the per-stratum data: the characteristic
//! polynomial of the separating element, the Delta-chain of principal
//! subresultant coefficients, the factorization chi = u * f with u monic
//! square-free on the stratum, the etale certificate, and the parametric
//! univariate representation.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use crate::domain::{Domain, RatDom};
use crate::error::{Error, Result};
use crate::gcd::squarefree_part_multi;
use crate::io::SystemFile;
use crate::monomial::{Ctx, Monomial};
use crate::poly::{KPoly, MPoly};
use crate::rat::Rat;
use crate::ratfun::{RatFun, RatFunDom};
use crate::rur::candidate_family;
use crate::subres::sres_chain;
use crate::upoly::{QPoly, UPoly};
use crate::zerodim::{
    buchberger, quotient_basis, rational_roots, GroebnerBasis, QuotientBasis, DEFAULT_SPAIR_CAP,
};

pub const DEFAULT_MAX_DEPTH: usize = 8;

/// A parametric system: base ideal E in the parameter ring, system ideal
/// I in the parameters and fiber variables.
#[derive(Debug, Clone)]
pub struct ParamSystem {
    pub params: Vec<String>,
    pub vars: Vec<String>,
    pub param_ctx: Arc<Ctx>,
    pub fiber_ctx: Arc<Ctx>,
    pub full_ctx: Arc<Ctx>,
    pub base: Vec<MPoly>,
    pub system: Vec<MPoly>,
}

impl ParamSystem {
    pub fn from_file(sf: &SystemFile) -> Result<ParamSystem> {
        if sf.system.is_empty() {
            return Err(Error::Precondition("empty system".into()));
        }
        Ok(ParamSystem {
            params: sf.params.clone(),
            vars: sf.vars.clone(),
            param_ctx: sf.param_ctx.clone(),
            fiber_ctx: Ctx::grevlex(sf.vars.clone()),
            full_ctx: sf.full_ctx.clone(),
            base: sf.base.clone(),
            system: sf.system.clone(),
        })
    }
}

/// The closed base locus V(E) with its Groebner basis and a cached
/// radical-membership test.
#[derive(Debug)]
pub struct BaseLocus {
    pub ctx: Arc<Ctx>,
    pub gb: GroebnerBasis<RatDom>,
    cache: RefCell<HashMap<String, bool>>,
}

impl BaseLocus {
    pub fn new(ctx: &Arc<Ctx>, eqs: &[MPoly]) -> Result<Rc<BaseLocus>> {
        let gb = if eqs.is_empty() {
            GroebnerBasis {
                ctx: ctx.clone(),
                gens: vec![],
            }
        } else {
            buchberger(eqs, &RatDom, DEFAULT_SPAIR_CAP)?
        };
        Ok(Rc::new(BaseLocus {
            ctx: ctx.clone(),
            gb,
            cache: RefCell::new(HashMap::new()),
        }))
    }

    pub fn is_trivial(&self) -> bool {
        self.gb.is_trivial()
    }

    /// True iff f vanishes on all of V(E): Rabinowitsch trick with a fast
    /// normal-form path.
    pub fn radical_member(&self, f: &MPoly) -> Result<bool> {
        if f.is_zero_poly() {
            return Ok(true);
        }
        if self.is_trivial() {
            return Ok(true);
        }
        if f.is_constant() {
            return Ok(false);
        }
        let key = crate::io::print_poly(&f.normalized_primitive());
        if let Some(&v) = self.cache.borrow().get(&key) {
            return Ok(v);
        }
        let nf = self.gb.normal_form(f, &RatDom);
        let v = if nf.is_zero_poly() {
            true
        } else {
            self.rabinowitsch(f)?
        };
        self.cache.borrow_mut().insert(key, v);
        Ok(v)
    }

    fn rabinowitsch(&self, f: &MPoly) -> Result<bool> {
        let mut fresh = "rab_t".to_string();
        while self.ctx.vars.contains(&fresh) {
            fresh.push('_');
        }
        let mut vars = self.ctx.vars.clone();
        vars.push(fresh.clone());
        let ext = Ctx::grevlex(vars);
        let mut gens: Vec<MPoly> = self
            .gb
            .gens
            .iter()
            .map(|g| g.embed(&ext).unwrap())
            .collect();
        let t = MPoly::var(&ext, &fresh).unwrap();
        let one = MPoly::from_int(&ext, 1);
        gens.push(one.sub(&t.mul(&f.embed(&ext).unwrap())));
        let gb = buchberger(&gens, &RatDom, DEFAULT_SPAIR_CAP)?;
        Ok(gb.is_trivial())
    }
}

#[derive(Debug, Default)]
struct SfdState {
    /// Numerators inverted during computations: the localization record.
    inverted: Vec<MPoly>,
    error: Option<Error>,
}

/// Rational functions on the base, with zero testing modulo the radical
/// of the base equations. Inversions are recorded so the caller can
/// exclude their zero loci from the stratum.
#[derive(Clone)]
pub struct StratumFunDom {
    pub base: Rc<BaseLocus>,
    structural: RatFunDom,
    state: Rc<RefCell<SfdState>>,
}

impl std::fmt::Debug for StratumFunDom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StratumFunDom")
    }
}

impl StratumFunDom {
    pub fn new(base: Rc<BaseLocus>) -> Self {
        let ctx = base.ctx.clone();
        StratumFunDom {
            base,
            structural: RatFunDom::new(&ctx),
            state: Rc::new(RefCell::new(SfdState::default())),
        }
    }

    /// Distinct non-constant numerators inverted so far, square-free and
    /// normalized.
    pub fn inverted_factors(&self) -> Vec<MPoly> {
        let mut out: Vec<MPoly> = Vec::new();
        for p in &self.state.borrow().inverted {
            let p = squarefree_part_multi(p);
            if p.is_constant() {
                continue;
            }
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }

    pub fn take_error(&self) -> Option<Error> {
        self.state.borrow_mut().error.take()
    }

    fn record_error(&self, e: Error) {
        let mut st = self.state.borrow_mut();
        if st.error.is_none() {
            st.error = Some(e);
        }
    }
}

impl Domain for StratumFunDom {
    type Elem = RatFun;

    fn zero(&self) -> RatFun {
        self.structural.zero()
    }
    fn one(&self) -> RatFun {
        self.structural.one()
    }
    fn from_int(&self, n: i64) -> RatFun {
        self.structural.from_int(n)
    }
    fn is_zero(&self, a: &RatFun) -> bool {
        if a.is_zero() {
            return true;
        }
        match self.base.radical_member(&a.num) {
            Ok(v) => v,
            Err(e) => {
                self.record_error(e);
                false
            }
        }
    }
    fn add(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a.add(b)
    }
    fn sub(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a.sub(b)
    }
    fn mul(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a.mul(b)
    }
    fn neg(&self, a: &RatFun) -> RatFun {
        a.neg()
    }
    fn exact_div(&self, a: &RatFun, b: &RatFun) -> Option<RatFun> {
        Some(a.mul(&self.inv(b)?))
    }
    fn inv(&self, a: &RatFun) -> Option<RatFun> {
        if self.is_zero(a) {
            return None;
        }
        if !a.num.is_constant() {
            self.state.borrow_mut().inverted.push(a.num.clone());
        }
        a.inv()
    }
    fn fmt_elem(&self, a: &RatFun) -> String {
        a.fmt()
    }
}

/// The generic fiber algebra over (a localization of) the base locus.
pub struct GenericFiber {
    pub dom: StratumFunDom,
    pub gb: GroebnerBasis<StratumFunDom>,
    pub qb: QuotientBasis,
    /// Square-free factors whose non-vanishing the construction assumed.
    pub h_factors: Vec<MPoly>,
    /// Generic rank of the fiber algebra.
    pub rank: usize,
    /// The system generators in fiber form, for identity checks.
    pub system: Vec<KPoly<StratumFunDom>>,
}

/// Split a polynomial in params-then-vars into a fiber polynomial with
/// rational-function coefficients.
pub fn to_fiber_poly(
    p: &MPoly,
    nparams: usize,
    fiber_ctx: &Arc<Ctx>,
    param_ctx: &Arc<Ctx>,
    dom: &StratumFunDom,
) -> KPoly<StratumFunDom> {
    let mut groups: HashMap<Vec<u32>, Vec<(Monomial, Rat)>> = HashMap::new();
    for (m, c) in &p.terms {
        let (pm, vm) = m.0.split_at(nparams);
        groups
            .entry(vm.to_vec())
            .or_default()
            .push((Monomial(pm.to_vec()), c.clone()));
    }
    let mut terms = Vec::new();
    for (vm, coeff_terms) in groups {
        let coeff = MPoly::from_terms(param_ctx, coeff_terms);
        terms.push((Monomial(vm), RatFun::from_poly(coeff)));
    }
    KPoly::from_terms_in(fiber_ctx, terms, dom)
}

/// Groebner basis of the system over the function field of the base
/// locus, with the localization record. Errors with GenericFiberInfinite
/// when the generic fiber is not finite.
pub fn generic_basis(ps: &ParamSystem, base: Rc<BaseLocus>) -> Result<GenericFiber> {
    let dom = StratumFunDom::new(base);
    let nparams = ps.params.len();
    let system: Vec<KPoly<StratumFunDom>> = ps
        .system
        .iter()
        .map(|p| to_fiber_poly(p, nparams, &ps.fiber_ctx, &ps.param_ctx, &dom))
        .collect();
    let gb = buchberger(&system, &dom, DEFAULT_SPAIR_CAP)?;
    if let Some(e) = dom.take_error() {
        return Err(e);
    }
    let qb = match quotient_basis(&gb) {
        Ok(qb) => qb,
        Err(Error::NotZeroDimensional(_)) => return Err(Error::GenericFiberInfinite),
        Err(e) => return Err(e),
    };
    let h_factors = dom.inverted_factors();
    let rank = qb.dim;
    Ok(GenericFiber {
        dom,
        gb,
        qb,
        h_factors,
        rank,
        system,
    })
}

/// Characteristic polynomial of multiplication by sigma on the generic
/// fiber algebra; monic of degree = rank.
pub fn parametric_charpoly(
    sigma: &KPoly<StratumFunDom>,
    fiber: &GenericFiber,
) -> Result<UPoly<StratumFunDom>> {
    let m = crate::zerodim::mult_matrix(sigma, &fiber.gb, &fiber.qb, &fiber.dom);
    m.char_poly(&fiber.dom)
}

/// Delta_0..Delta_{r-1}: the principal subresultant coefficients of
/// (chi, chi'), computed structurally over the rational function field.
/// Delta_{r-1} is the constant r. For r = 1 the chain is the single
/// entry 1.
pub fn delta_chain(chi: &UPoly<StratumFunDom>, dom: &StratumFunDom) -> Result<Vec<RatFun>> {
    let sdom = &dom.structural;
    let chi_s: UPoly<RatFunDom> = UPoly {
        coeffs: chi.coeffs.clone(),
    };
    let r = chi_s
        .degree()
        .ok_or_else(|| Error::Precondition("zero characteristic polynomial".into()))?;
    if r == 0 {
        return Err(Error::Precondition("constant characteristic polynomial".into()));
    }
    let dchi = chi_s.derivative(sdom);
    let chain = sres_chain(&chi_s, &dchi, sdom)?;
    Ok((0..r).map(|j| chain.principal(j, sdom)).collect())
}

/// The subresultant polynomials of (chi, chi'), for the u*f split.
fn sres_polys(chi: &UPoly<StratumFunDom>, dom: &StratumFunDom) -> Result<Vec<UPoly<RatFunDom>>> {
    let sdom = &dom.structural;
    let chi_s: UPoly<RatFunDom> = UPoly {
        coeffs: chi.coeffs.clone(),
    };
    let dchi = chi_s.derivative(sdom);
    Ok(sres_chain(&chi_s, &dchi, sdom)?.polys)
}

/// A parametric univariate representation: x_i = g_i(lambda)/g(lambda)
/// over the roots of u.
#[derive(Debug, Clone)]
pub struct ParametricRur {
    pub g: UPoly<RatFunDom>,
    pub numerators: Vec<UPoly<RatFunDom>>,
}

/// One locally closed piece of the stratification.
pub struct Stratum {
    /// Closed conditions: reduced Groebner basis of the accumulated base
    /// equations.
    pub equations: Vec<MPoly>,
    /// The stratum is V(equations) minus V(nonvanish).
    pub nonvanish: MPoly,
    /// Generic rank of the fiber algebra.
    pub rank: usize,
    pub sigma: MPoly,
    pub chi: UPoly<RatFunDom>,
    pub deltas: Vec<RatFun>,
    /// Least index with Delta_s not vanishing identically on the stratum.
    pub s: usize,
    pub geo_count: usize,
    pub u: UPoly<RatFunDom>,
    pub f: UPoly<RatFunDom>,
    pub rur: Option<ParametricRur>,
    pub etale: bool,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExcludedReason {
    MaxDepth,
    GenericFiberInfinite,
}

pub struct ExcludedLocus {
    pub equations: Vec<MPoly>,
    pub avoid: Vec<MPoly>,
    pub reason: ExcludedReason,
}

pub struct StratificationReport {
    pub strata: Vec<Stratum>,
    pub excluded: Vec<ExcludedLocus>,
    pub depth_used: usize,
}

impl Stratum {
    /// Membership test for a rational parameter point.
    pub fn contains(&self, pt: &[Rat]) -> bool {
        self.equations.iter().all(|e| e.eval(pt).is_zero())
            && !self.nonvanish.eval(pt).is_zero()
    }

    /// chi specialized at a parameter point on the stratum.
    pub fn chi_at(&self, pt: &[Rat]) -> Result<QPoly> {
        specialize_upoly(&self.chi, pt)
    }

    pub fn u_at(&self, pt: &[Rat]) -> Result<QPoly> {
        specialize_upoly(&self.u, pt)
    }
}

fn specialize_ratfun(rf: &RatFun, pt: &[Rat]) -> Result<Rat> {
    let den = rf.den.eval(pt);
    if den.is_zero() {
        return Err(Error::PointNotInStratum(
            "denominator vanishes at the point".into(),
        ));
    }
    Ok(rf.num.eval(pt) / den)
}

pub fn specialize_upoly(u: &UPoly<RatFunDom>, pt: &[Rat]) -> Result<QPoly> {
    let mut coeffs = Vec::with_capacity(u.coeffs.len());
    for c in &u.coeffs {
        coeffs.push(specialize_ratfun(c, pt)?);
    }
    Ok(UPoly::from_coeffs(coeffs, &RatDom))
}

use num_traits::Zero;

/// sigma as a display polynomial in the fiber variables (its coefficients
/// are integers).
fn sigma_to_mpoly(sigma: &KPoly<StratumFunDom>, fiber_ctx: &Arc<Ctx>) -> MPoly {
    let terms = sigma
        .terms
        .iter()
        .map(|(m, c)| {
            let v = c
                .num
                .constant_value(&RatDom)
                .expect("candidate coefficients are constants");
            (m.clone(), v)
        })
        .collect();
    MPoly::from_terms(fiber_ctx, terms)
}

struct CandidateData {
    sigma: KPoly<StratumFunDom>,
    chi: UPoly<StratumFunDom>,
    deltas: Vec<RatFun>,
    s: usize,
}

/// Least chain index whose numerator does not vanish on all of V(E).
fn least_nonradical(deltas: &[RatFun], base: &BaseLocus) -> Result<usize> {
    for (i, d) in deltas.iter().enumerate() {
        if !base.radical_member(&d.num)? {
            return Ok(i);
        }
    }
    Err(Error::InvariantViolation(
        "entire Delta-chain vanishes on the base (chi not monic?)".into(),
    ))
}

/// Argmax of rank - s over the candidate family; ties to the smallest
/// index. The maximum equals the generic geometric count on the stratum.
fn select_parametric(fiber: &GenericFiber, base: &BaseLocus) -> Result<CandidateData> {
    let r = fiber.rank;
    let candidates = candidate_family(&fiber.gb.ctx, r, &fiber.dom);
    let mut best: Option<CandidateData> = None;
    for sigma in candidates {
        let chi = parametric_charpoly(&sigma, fiber)?;
        let deltas = delta_chain(&chi, &fiber.dom)?;
        let s = least_nonradical(&deltas, base)?;
        let better = match &best {
            None => true,
            Some(b) => s < b.s,
        };
        if better {
            let done = s == 0;
            best = Some(CandidateData {
                sigma,
                chi,
                deltas,
                s,
            });
            if done {
                break;
            }
        }
    }
    if let Some(e) = fiber.dom.take_error() {
        return Err(e);
    }
    Ok(best.unwrap())
}

/// chi = u * f with f = sResP_s / Delta_s monic of degree s, u monic of
/// degree rank - s; the division remainder gamma must vanish on the
/// stratum, checked coefficientwise. `unit` is a polynomial nonvanishing
/// on the stratum (the localization times num Delta_s): gamma vanishes on
/// V(E) minus V(unit) iff gamma * unit vanishes on all of V(E).
pub fn factor_uf(
    chi: &UPoly<StratumFunDom>,
    sres: &[UPoly<RatFunDom>],
    deltas: &[RatFun],
    s: usize,
    unit: &MPoly,
    dom: &StratumFunDom,
) -> Result<(UPoly<RatFunDom>, UPoly<RatFunDom>)> {
    let sdom = &dom.structural;
    let chi_s: UPoly<RatFunDom> = UPoly {
        coeffs: chi.coeffs.clone(),
    };
    if s == 0 {
        return Ok((chi_s, UPoly::constant(sdom.one(), sdom)));
    }
    let inv = deltas[s]
        .inv()
        .ok_or_else(|| Error::InvariantViolation("Delta_s structurally zero".into()))?;
    let f = sres[s].scale(&inv, sdom);
    // drop coefficients above degree s that vanish on the stratum (the
    // chain entry can be structurally defective only below s)
    if f.degree() != Some(s) {
        return Err(Error::InvariantViolation(
            "sResP_s does not have degree s".into(),
        ));
    }
    let (u, gamma) = chi_s.div_rem(&f, sdom)?;
    for c in &gamma.coeffs {
        if !dom.base.radical_member(&c.num.mul(unit))? {
            return Err(Error::InvariantViolation(
                "remainder of chi by f does not vanish on the stratum".into(),
            ));
        }
    }
    Ok((u, f))
}

/// True iff Res_lambda(u, u') vanishes nowhere on the stratum: its zero
/// locus inside V(equations) must lie inside V(nonvanish).
pub fn etale_certificate(
    u: &UPoly<RatFunDom>,
    nonvanish: &MPoly,
    base: &BaseLocus,
    param_ctx: &Arc<Ctx>,
) -> Result<bool> {
    let sdom = RatFunDom::new(param_ctx);
    let deg = match u.degree() {
        None | Some(0) => return Ok(true),
        Some(d) => d,
    };
    let res = if deg == 1 {
        sdom.one()
    } else {
        crate::subres::resultant(u, &u.derivative(&sdom), &sdom)?
    };
    if res.is_zero() {
        return Ok(false);
    }
    let num = res.num.normalized_primitive();
    if num.is_constant() {
        return Ok(true);
    }
    let mut eqs = base.gb.gens.clone();
    eqs.push(num);
    let extended = BaseLocus::new(param_ctx, &eqs)?;
    extended.radical_member(nonvanish)
}

/// The Step 5 double sums over the generic fiber, reduced mod u, with the
/// back-substitution identity checked modulo the base radical on the open
/// part where `unit` does not vanish.
pub fn parametric_rur(
    fiber: &GenericFiber,
    sigma: &KPoly<StratumFunDom>,
    u: &UPoly<RatFunDom>,
    unit: &MPoly,
) -> Result<ParametricRur> {
    let dom = &fiber.dom;
    let sdom = RatFunDom::new(&dom.base.ctx);
    let u_sfd: UPoly<StratumFunDom> = UPoly {
        coeffs: u.coeffs.clone(),
    };
    let reduce = |p: UPoly<StratumFunDom>| -> Result<UPoly<RatFunDom>> {
        let p: UPoly<RatFunDom> = UPoly { coeffs: p.coeffs };
        let (_, r) = p.div_rem(u, &sdom)?;
        Ok(r)
    };
    let one = KPoly::constant_in(&fiber.gb.ctx, dom.one(), dom);
    let g = reduce(crate::rur::rur_numerator(
        &one, sigma, &u_sfd, &fiber.gb, &fiber.qb, dom,
    ))?;
    let mut numerators = Vec::with_capacity(fiber.gb.ctx.nvars());
    for v in 0..fiber.gb.ctx.nvars() {
        let xv = KPoly::var_in(&fiber.gb.ctx, v, dom);
        numerators.push(reduce(crate::rur::rur_numerator(
            &xv, sigma, &u_sfd, &fiber.gb, &fiber.qb, dom,
        ))?);
    }
    if let Some(e) = dom.take_error() {
        return Err(e);
    }
    // g invertible mod u on the stratum: res(u, g) must not vanish there
    if g.is_zero() {
        return Err(Error::InvariantViolation("g vanishes identically".into()));
    }
    // back-substitution: for each generator F of total fiber degree e,
    // g^e F(g_1/g, ...) = 0 mod u, modulo the base radical
    for gen in &fiber.system {
        let e = gen.total_degree().unwrap_or(0) as usize;
        let mut acc: UPoly<RatFunDom> = UPoly::zero();
        for (m, c) in &gen.terms {
            let mut term = UPoly::constant(c.clone(), &sdom);
            let mut used = 0usize;
            for (v, &exp) in m.0.iter().enumerate() {
                for _ in 0..exp {
                    term = term.mul(&numerators[v], &sdom);
                    used += 1;
                }
            }
            for _ in used..e {
                term = term.mul(&g, &sdom);
            }
            acc = acc.add(&term, &sdom);
            let (_, r) = acc.div_rem(u, &sdom)?;
            acc = r;
        }
        for c in &acc.coeffs {
            if !dom.base.radical_member(&c.num.mul(unit))? {
                return Err(Error::InvariantViolation(
                    "parametric back-substitution identity fails".into(),
                ));
            }
        }
    }
    Ok(ParametricRur { g, numerators })
}

struct Node {
    eqs: Vec<MPoly>,
    avoid: Vec<MPoly>,
    depth: usize,
}

/// Recursive stratification. Children are processed depth-first with the
/// open part first; sibling strata are kept disjoint by threading the
/// earlier split factors through `avoid`.
pub fn stratify(ps: &ParamSystem, max_depth: usize) -> Result<StratificationReport> {
    if max_depth < 1 {
        return Err(Error::Precondition("max_depth must be at least 1".into()));
    }
    let mut report = StratificationReport {
        strata: vec![],
        excluded: vec![],
        depth_used: 0,
    };
    let root = Node {
        eqs: ps.base.clone(),
        avoid: vec![],
        depth: 1,
    };
    process_node(ps, root, max_depth, &mut report)?;
    Ok(report)
}

fn process_node(
    ps: &ParamSystem,
    node: Node,
    max_depth: usize,
    report: &mut StratificationReport,
) -> Result<()> {
    report.depth_used = report.depth_used.max(node.depth);
    let base = BaseLocus::new(&ps.param_ctx, &node.eqs)?;
    if base.is_trivial() {
        return Ok(()); // empty closed set
    }
    // the piece is V(E) minus V(avoid factors); prune if some avoid
    // factor vanishes on all of V(E)
    for a in &node.avoid {
        if base.radical_member(a)? {
            return Ok(());
        }
    }
    if node.depth > max_depth {
        report.excluded.push(ExcludedLocus {
            equations: base.gb.gens.clone(),
            avoid: node.avoid,
            reason: ExcludedReason::MaxDepth,
        });
        return Ok(());
    }
    let fiber = match generic_basis(ps, base.clone()) {
        Ok(f) => f,
        Err(Error::GenericFiberInfinite) => {
            report.excluded.push(ExcludedLocus {
                equations: base.gb.gens.clone(),
                avoid: node.avoid,
                reason: ExcludedReason::GenericFiberInfinite,
            });
            return Ok(());
        }
        Err(e) => return Err(e),
    };

    let mut split_factors: Vec<MPoly> = fiber.h_factors.clone();
    let (stratum, delta_factor) = if fiber.rank == 0 {
        // generically empty fiber
        let sdom = RatFunDom::new(&ps.param_ctx);
        (
            Some(Stratum {
                equations: base.gb.gens.clone(),
                nonvanish: MPoly::from_int(&ps.param_ctx, 1),
                rank: 0,
                sigma: MPoly::zero(&ps.fiber_ctx),
                chi: UPoly::constant(sdom.one(), &sdom),
                deltas: vec![],
                s: 0,
                geo_count: 0,
                u: UPoly::constant(sdom.one(), &sdom),
                f: UPoly::constant(sdom.one(), &sdom),
                rur: None,
                etale: true,
                depth: node.depth,
            }),
            None,
        )
    } else {
        let cand = select_parametric(&fiber, &base)?;
        let geo = fiber.rank - cand.s;
        let sres = sres_polys(&cand.chi, &fiber.dom)?;
        let delta_num = cand.deltas[cand.s].num.normalized_primitive();
        let delta_factor = if delta_num.is_constant() {
            None
        } else {
            Some(squarefree_part_multi(&delta_num))
        };
        let mut unit = delta_num.clone();
        for h in &split_factors {
            unit = unit.mul(h);
        }
        let (u, f) = factor_uf(&cand.chi, &sres, &cand.deltas, cand.s, &unit, &fiber.dom)?;
        // factors collected while computing chi, the chain, and the rur
        // also belong to the localization
        let rur = parametric_rur(&fiber, &cand.sigma, &u, &unit)?;
        for extra in fiber.dom.inverted_factors() {
            if !split_factors.contains(&extra) {
                split_factors.push(extra);
            }
        }
        let mut nonvanish = MPoly::from_int(&ps.param_ctx, 1);
        for h in &split_factors {
            nonvanish = nonvanish.mul(h);
        }
        if let Some(d) = &delta_factor {
            nonvanish = nonvanish.mul(d);
        }
        for a in &node.avoid {
            nonvanish = nonvanish.mul(a);
        }
        let chi_s: UPoly<RatFunDom> = UPoly {
            coeffs: cand.chi.coeffs.clone(),
        };
        let etale = etale_certificate(&u, &nonvanish, &base, &ps.param_ctx)?;
        (
            Some(Stratum {
                equations: base.gb.gens.clone(),
                nonvanish,
                rank: fiber.rank,
                sigma: sigma_to_mpoly(&cand.sigma, &ps.fiber_ctx),
                chi: chi_s,
                deltas: cand.deltas,
                s: cand.s,
                geo_count: geo,
                u,
                f,
                rur: Some(rur),
                etale,
                depth: node.depth,
            }),
            delta_factor,
        )
    };

    if let Some(mut st) = stratum {
        if st.rank == 0 {
            // nonvanish for the empty-fiber stratum still excludes the
            // localization and the sibling-avoid loci
            let mut nv = MPoly::from_int(&ps.param_ctx, 1);
            for h in &split_factors {
                nv = nv.mul(h);
            }
            for a in &node.avoid {
                nv = nv.mul(a);
            }
            st.nonvanish = nv;
        }
        // drop strata that are empty as sets
        if !base.radical_member(&st.nonvanish)? {
            report.strata.push(st);
        }
    }

    // recurse into the zero loci of each split factor, keeping children
    // disjoint: the i-th child excludes the earlier factors
    let mut children_factors = split_factors;
    if let Some(d) = delta_factor {
        if !children_factors.contains(&d) {
            children_factors.push(d);
        }
    }
    for (i, fct) in children_factors.iter().enumerate() {
        let mut eqs = node.eqs.clone();
        eqs.push(fct.clone());
        let mut avoid = node.avoid.clone();
        for earlier in &children_factors[..i] {
            avoid.push(earlier.clone());
        }
        let child = Node {
            eqs,
            avoid,
            depth: node.depth + 1,
        };
        process_node(ps, child, max_depth, report)?;
    }
    Ok(())
}

/// Small rational probe values ordered by height.
fn probe_values() -> Vec<Rat> {
    let mut out = Vec::new();
    for n in 0..=20i64 {
        for sgn in [1i64, -1] {
            if n == 0 && sgn == -1 {
                continue;
            }
            out.push(crate::rat::rat(sgn * n));
        }
    }
    for d in [2i64, 3, 4, 5] {
        for n in 1..=(4 * d) {
            if num_integer::gcd(n, d) != 1 {
                continue;
            }
            for sgn in [1i64, -1] {
                out.push(crate::rat::rat_frac(sgn * n, d));
            }
        }
    }
    out
}

/// Rational points on V(eqs) with nonvanish != 0, found by fixing all but
/// the last coordinate to small probes and solving for the last one.
pub fn find_points(
    ctx: &Arc<Ctx>,
    eqs: &[MPoly],
    nonvanish: &MPoly,
    want: usize,
) -> Vec<Vec<Rat>> {
    let k = ctx.nvars();
    let probes = probe_values();
    let mut out: Vec<Vec<Rat>> = Vec::new();
    let push_if_good = |pt: Vec<Rat>, out: &mut Vec<Vec<Rat>>| {
        if eqs.iter().all(|e| e.eval(&pt).is_zero())
            && !nonvanish.eval(&pt).is_zero()
            && !out.contains(&pt)
        {
            out.push(pt);
        }
    };
    if k == 0 {
        let pt: Vec<Rat> = vec![];
        push_if_good(pt, &mut out);
        return out;
    }
    if eqs.is_empty() {
        for v in &probes {
            let pt = vec![v.clone(); k];
            push_if_good(pt, &mut out);
            if out.len() >= want {
                return out;
            }
        }
        // vary the first coordinate to break symmetry if needed
        for v in &probes {
            let mut pt = vec![Rat::zero(); k];
            pt[0] = v.clone();
            push_if_good(pt, &mut out);
            if out.len() >= want {
                return out;
            }
        }
        return out;
    }
    let head = k - 1;
    let head_probes: Vec<Rat> = probes.clone();
    let mut counters = vec![0usize; head];
    let cap = 40_000usize;
    let mut iter = 0usize;
    loop {
        iter += 1;
        if iter > cap || out.len() >= want {
            break;
        }
        let head_pt: Vec<Rat> = counters.iter().map(|&i| head_probes[i].clone()).collect();
        // specialize all equations at the head assignment
        let assignment: Vec<(String, Rat)> = ctx.vars[..head]
            .iter()
            .cloned()
            .zip(head_pt.iter().cloned())
            .collect();
        let mut specialized: Vec<QPoly> = Vec::new();
        let mut consistent = true;
        for e in eqs {
            let s = match e.specialize(&assignment) {
                Ok(s) => s,
                Err(_) => {
                    consistent = false;
                    break;
                }
            };
            let last = s.ctx.nvars() - 1;
            let up = s.as_upoly_in(last);
            let q: QPoly = UPoly {
                coeffs: up
                    .coeffs
                    .iter()
                    .map(|c| c.constant_value(&RatDom).unwrap_or_else(Rat::zero))
                    .collect(),
            };
            let q = UPoly::from_coeffs(q.coeffs, &RatDom);
            specialized.push(q);
        }
        if consistent {
            // common roots of all specialized equations in the last var
            let mut g = QPoly::zero();
            let mut all_zero = true;
            for q in &specialized {
                if !q.is_zero() {
                    all_zero = false;
                    g = if g.is_zero() { q.clone() } else { g.gcd(q) };
                }
            }
            let candidates: Vec<Rat> = if all_zero {
                head_probes.clone()
            } else if g.degree() == Some(0) {
                vec![]
            } else {
                rational_roots(&g).unwrap_or_default()
            };
            for last_val in candidates {
                let mut pt = head_pt.clone();
                pt.push(last_val);
                push_if_good(pt, &mut out);
                if out.len() >= want {
                    return out;
                }
            }
        }
        // odometer over head probes
        if head == 0 {
            break;
        }
        let mut pos = 0;
        loop {
            counters[pos] += 1;
            if counters[pos] < head_probes.len() {
                break;
            }
            counters[pos] = 0;
            pos += 1;
            if pos == head {
                return out;
            }
        }
    }
    out
}

/// Sample points inside a stratum.
pub fn stratum_samples(st: &Stratum, ctx: &Arc<Ctx>, want: usize) -> Vec<Vec<Rat>> {
    find_points(ctx, &st.equations, &st.nonvanish, want)
}
