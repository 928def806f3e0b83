//! Exact real root counting and isolation (Sturm sequences over binary
//! rationals), and the real fiber machinery: ordered sections of a
//! stratum at a rational base point, real-count probes, and sample
//! lifting.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::domain::RatDom;
use crate::error::{Error, Result};
use crate::parametric::{specialize_upoly, ParamSystem, StratificationReport, Stratum};
use crate::rat::Rat;
use crate::upoly::{QPoly, UPoly};
use crate::zerodim::rational_roots;

/// An endpoint for root counting.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    NegInf,
    Val(Rat),
    PosInf,
}

fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let dom = RatDom;
    let mut seq = vec![p.clone(), p.derivative(&dom)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        if seq[n - 1].degree() == Some(0) {
            return seq;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1], &dom).unwrap();
        seq.push(r.neg(&dom));
    }
}

fn sign_at(p: &QPoly, b: &Bound) -> i32 {
    match b {
        Bound::Val(x) => crate::rat::rat_sign(&p.eval_rat(x)),
        Bound::PosInf => {
            if p.is_zero() {
                0
            } else {
                crate::rat::rat_sign(&p.lc(&RatDom))
            }
        }
        Bound::NegInf => {
            if p.is_zero() {
                0
            } else {
                let s = crate::rat::rat_sign(&p.lc(&RatDom));
                if p.degree().unwrap() % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }
    }
}

fn variations(seq: &[QPoly], b: &Bound) -> usize {
    let signs: Vec<i32> = seq.iter().map(|p| sign_at(p, b)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of p in (a, b]; the square-free part is
/// taken internally.
pub fn sturm_count(p: &QPoly, a: &Bound, b: &Bound) -> usize {
    if p.degree().map_or(true, |d| d == 0) {
        return 0;
    }
    let q = p.squarefree_part();
    let seq = sturm_sequence(&q);
    let va = variations(&seq, a);
    let vb = variations(&seq, b);
    let mut count = va.saturating_sub(vb);
    // Sturm counts (a, b) open at a root endpoint a; adjust to (a, b]
    if let Bound::Val(x) = a {
        if q.eval_rat(x).is_zero() {
            // a root at the left endpoint is excluded either way
        }
    }
    if let Bound::Val(x) = b {
        if q.eval_rat(x).is_zero() {
            count += 1;
        }
    }
    count
}

/// An interval with exactly one root of `poly`; endpoints are binary
/// rationals unless the root itself is rational and was found exactly
/// (then lo = hi).
#[derive(Debug, Clone, PartialEq)]
pub struct IsolatingInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub poly: QPoly,
}

impl IsolatingInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    /// One bisection step; exact roots are fixed points.
    pub fn refine(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = self.midpoint();
        let vm = self.poly.eval_rat(&mid);
        if vm.is_zero() {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        let vl = self.poly.eval_rat(&self.lo);
        if crate::rat::rat_sign(&vl) != 0 && crate::rat::rat_sign(&vl) != crate::rat::rat_sign(&vm)
        {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine_to(&mut self, width: &Rat) {
        while !self.is_exact() && &self.width() > width {
            self.refine();
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Cauchy root bound 1 + max |c_i| / |c_d|, rounded up to a power of two.
fn cauchy_bound_pow2(p: &QPoly) -> Rat {
    let d = p.degree().unwrap();
    let lc = p.lc(&RatDom);
    let mut m = Rat::zero();
    for c in &p.coeffs[..d] {
        let r = (c / &lc).abs();
        if r > m {
            m = r;
        }
    }
    let bound = Rat::one() + m;
    let mut b = Rat::one();
    let two = Rat::from_integer(2.into());
    while b < bound {
        b = &b * &two;
    }
    b
}

fn bisect_into(q: &QPoly, full: &QPoly, lo: Rat, hi: Rat, out: &mut Vec<IsolatingInterval>) -> Option<Rat> {
    // endpoints are never roots here by construction, so the (a, b]
    // count is the open count
    let n = sturm_count(q, &Bound::Val(lo.clone()), &Bound::Val(hi.clone()));
    if n == 0 {
        return None;
    }
    if n == 1 {
        out.push(IsolatingInterval {
            lo,
            hi,
            poly: full.clone(),
        });
        return None;
    }
    let mid = (&lo + &hi) / Rat::from_integer(2.into());
    if q.eval_rat(&mid).is_zero() {
        // rational root hit: signal a deflation restart
        return Some(mid);
    }
    if let Some(r) = bisect_into(q, full, lo, mid.clone(), out) {
        return Some(r);
    }
    bisect_into(q, full, mid, hi, out)
}

/// Isolating intervals for the distinct real roots of p, sorted with the
/// largest root first. Rational roots collapse to exact points.
pub fn isolate(p: &QPoly) -> Vec<IsolatingInterval> {
    let dom = RatDom;
    if p.degree().map_or(true, |d| d == 0) {
        return vec![];
    }
    let full = p.squarefree_part();
    let mut q = full.clone();
    let mut exact: Vec<Rat> = Vec::new();
    if let Some(roots) = rational_roots(&q) {
        for r in roots {
            let lin = UPoly::from_coeffs(vec![-r.clone(), Rat::one()], &dom);
            let (quot, rem) = q.div_rem(&lin, &dom).unwrap();
            debug_assert!(rem.is_zero());
            q = quot;
            exact.push(r);
        }
    }
    let mut intervals: Vec<IsolatingInterval> = Vec::new();
    loop {
        intervals.clear();
        if q.degree().map_or(false, |d| d >= 1) {
            let b = cauchy_bound_pow2(&q);
            match bisect_into(&q, &full, -b.clone(), b, &mut intervals) {
                None => break,
                Some(root) => {
                    let lin = UPoly::from_coeffs(vec![-root.clone(), Rat::one()], &dom);
                    let (quot, _) = q.div_rem(&lin, &dom).unwrap();
                    q = quot;
                    exact.push(root);
                }
            }
        } else {
            break;
        }
    }
    // keep bisection intervals clear of the exact roots
    for iv in &mut intervals {
        while exact.iter().any(|r| iv.contains(r)) {
            iv.refine();
        }
    }
    for r in exact {
        intervals.push(IsolatingInterval {
            lo: r.clone(),
            hi: r,
            poly: full.clone(),
        });
    }
    intervals.sort_by(|a, b| b.lo.cmp(&a.lo));
    // separate touching neighbors; endpoints are never roots, so
    // refinement eventually pulls them apart
    for i in 1..intervals.len() {
        while intervals[i - 1].lo <= intervals[i].hi {
            if intervals[i - 1].width() >= intervals[i].width() {
                intervals[i - 1].refine();
            } else {
                intervals[i].refine();
            }
        }
    }
    intervals
}

/// Closed rational interval arithmetic for enclosure evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, o: &Self) -> Self {
        RatInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut vals = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        vals.sort();
        RatInterval {
            lo: vals[0].clone(),
            hi: vals[3].clone(),
        }
    }

    /// Division by an interval excluding zero.
    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.contains_zero());
        let inv = RatInterval {
            lo: Rat::one() / &o.hi,
            hi: Rat::one() / &o.lo,
        };
        self.mul(&inv)
    }
}

/// Horner evaluation of p over an interval.
pub fn eval_on_interval(p: &QPoly, x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for c in p.coeffs.iter().rev() {
        acc = acc.mul(x).add(&RatInterval::point(c.clone()));
    }
    acc
}

/// One ordered real fiber point: the i-th largest root of u with interval
/// enclosures for the fiber coordinates.
#[derive(Debug, Clone)]
pub struct FiberSection {
    /// 1-based; index 1 is the largest root.
    pub index: usize,
    pub lambda: IsolatingInterval,
    pub coords: Vec<RatInterval>,
}

fn safeguard_width() -> Rat {
    Rat::new(BigInt::from(1), BigInt::from(2).pow(64))
}

/// The real fiber of a stratum over a rational base point: the ordered
/// sections with coordinate enclosures of width at most `width`.
pub fn fiber_at(st: &Stratum, pt: &[Rat], width: &Rat) -> Result<Vec<FiberSection>> {
    if let Some(bad) = st.equations.iter().find(|e| !e.eval(pt).is_zero()) {
        return Err(Error::PointNotInStratum(format!(
            "equation {} does not vanish at the point",
            crate::io::print_poly(bad)
        )));
    }
    if st.nonvanish.eval(pt).is_zero() {
        return Err(Error::PointNotInStratum(format!(
            "nonvanish polynomial {} vanishes at the point",
            crate::io::print_poly(&st.nonvanish)
        )));
    }
    let rur = match &st.rur {
        Some(r) => r,
        None => return Ok(vec![]),
    };
    let u = st.u_at(pt)?;
    if u.degree().map_or(true, |d| d == 0) {
        return Ok(vec![]);
    }
    let g = specialize_upoly(&rur.g, pt)?;
    let nums: Vec<QPoly> = rur
        .numerators
        .iter()
        .map(|n| specialize_upoly(n, pt))
        .collect::<Result<_>>()?;
    let roots = isolate(&u);
    let mut sections = Vec::with_capacity(roots.len());
    let guard = safeguard_width();
    for (i, mut lam) in roots.into_iter().enumerate() {
        let coords: Vec<RatInterval> = if lam.is_exact() {
            let gv = g.eval_rat(&lam.lo);
            if gv.is_zero() {
                return Err(Error::InvariantViolation(
                    "g vanishes at a root of u".into(),
                ));
            }
            nums.iter()
                .map(|n| RatInterval::point(n.eval_rat(&lam.lo) / &gv))
                .collect()
        } else {
            loop {
                let x = RatInterval::new(lam.lo.clone(), lam.hi.clone());
                let gi = eval_on_interval(&g, &x);
                if gi.contains_zero() {
                    if lam.width() < guard {
                        return Err(Error::InvariantViolation(
                            "g enclosure straddles zero below the refinement safeguard".into(),
                        ));
                    }
                    lam.refine();
                    continue;
                }
                let coords: Vec<RatInterval> = nums
                    .iter()
                    .map(|n| eval_on_interval(n, &x).div(&gi))
                    .collect();
                if coords.iter().all(|c| &c.width() <= width) {
                    break coords;
                }
                lam.refine();
            }
        };
        sections.push(FiberSection {
            index: i + 1,
            lambda: lam,
            coords,
        });
    }
    Ok(sections)
}

/// Sampling evidence for real-count constancy on a stratum.
#[derive(Debug, Clone)]
pub struct RealCountReport {
    pub counts: Vec<usize>,
    pub constant: bool,
}

pub fn real_count_probe(st: &Stratum, samples: &[Vec<Rat>]) -> Result<RealCountReport> {
    let mut counts = Vec::with_capacity(samples.len());
    for pt in samples {
        let u = st.u_at(pt)?;
        counts.push(sturm_count(&u, &Bound::NegInf, &Bound::PosInf));
    }
    let constant = counts.windows(2).all(|w| w[0] == w[1]);
    Ok(RealCountReport { counts, constant })
}

/// A lifted base sample: the full real fiber over it, tagged by stratum.
#[derive(Debug, Clone)]
pub struct LiftedFiber {
    pub stratum: usize,
    pub point: Vec<Rat>,
    pub sections: Vec<FiberSection>,
}

/// Lift base samples by direct fiber computation.
pub fn lift_samples(
    report: &StratificationReport,
    samples: &[(usize, Vec<Rat>)],
    width: &Rat,
) -> Result<Vec<LiftedFiber>> {
    let mut out = Vec::with_capacity(samples.len());
    for (idx, pt) in samples {
        let st = &report.strata[*idx];
        let sections = fiber_at(st, pt, width)?;
        out.push(LiftedFiber {
            stratum: *idx,
            point: pt.clone(),
            sections,
        });
    }
    Ok(out)
}

/// Interval check that every system generator vanishes on a section:
/// substitute the coordinate enclosures (parameters exactly) and test
/// that the enclosure contains zero.
pub fn section_satisfies_system(
    ps: &ParamSystem,
    pt: &[Rat],
    section: &FiberSection,
) -> bool {
    let nparams = ps.params.len();
    for gen in &ps.system {
        let mut acc = RatInterval::point(Rat::zero());
        for (m, c) in &gen.terms {
            let mut term = RatInterval::point(c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    let factor = if v < nparams {
                        RatInterval::point(pt[v].clone())
                    } else {
                        section.coords[v - nparams].clone()
                    };
                    term = term.mul(&factor);
                }
            }
            acc = acc.add(&term);
        }
        if !acc.contains_zero() {
            return false;
        }
    }
    true
}
