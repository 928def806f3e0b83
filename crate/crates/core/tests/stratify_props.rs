//! Stratification properties on the fixture systems: the strata cover
//! the base and are pairwise disjoint, and the geometric count claimed
//! by each stratum matches an independent per-point computation.

use fiberstrat_core::domain::RatDom;
use fiberstrat_core::io::parse_system_file;
use fiberstrat_core::parametric::{
    stratify, stratum_samples, ParamSystem, StratificationReport, DEFAULT_MAX_DEPTH,
};
use fiberstrat_core::rat::{rat, rat_frac, Rat};
use fiberstrat_core::rur::select_separating;
use fiberstrat_core::zerodim::{buchberger, DEFAULT_SPAIR_CAP};
use fiberstrat_core::MPoly;

fn fixture(name: &str) -> (ParamSystem, StratificationReport) {
    let path = format!("{}/../../fixtures/{}", env!("CARGO_MANIFEST_DIR"), name);
    let text = std::fs::read_to_string(&path).unwrap();
    let ps = ParamSystem::from_file(&parse_system_file(&text).unwrap()).unwrap();
    let rep = stratify(&ps, DEFAULT_MAX_DEPTH).unwrap();
    (ps, rep)
}

fn assert_exactly_one(rep: &StratificationReport, pt: &[Rat]) {
    let n = rep.strata.iter().filter(|s| s.contains(pt)).count();
    assert_eq!(n, 1, "point {:?} lies in {} strata", pt, n);
}

#[test]
fn covering_cubic_discriminant_curve() {
    let (_, rep) = fixture("cubic.sys");
    // (p, q) = (-3t^2, 2t^3) parametrizes 4p^3 + 27q^2 = 0
    for i in 0..100i64 {
        let t = rat_frac(i - 50, 7);
        let pt = vec![rat(-3) * &t * &t, rat(2) * &t * &t * &t];
        assert_exactly_one(&rep, &pt);
    }
}

#[test]
fn covering_torus_circle() {
    let (_, rep) = fixture("torus.sys");
    for i in 0..100i64 {
        let t = rat_frac(i - 50, 9);
        let d = rat(1) + &t * &t;
        let pt = vec![(rat(1) - &t * &t) / &d, rat(2) * &t / &d];
        assert_exactly_one(&rep, &pt);
    }
}

#[test]
fn covering_line_fixtures() {
    for name in ["twin_parabolas.sys", "hyperbola_union.sys"] {
        let (_, rep) = fixture(name);
        for i in 0..100i64 {
            let pt = vec![rat_frac(i - 50, 3)];
            assert_exactly_one(&rep, &pt);
        }
    }
}

/// Independent geometric count at a base point: specialize the system,
/// recompute a Groebner basis over Q and pick a separating element from
/// scratch.
fn geo_count_at(ps: &ParamSystem, pt: &[Rat]) -> usize {
    let assignment: Vec<(String, Rat)> = ps
        .params
        .iter()
        .cloned()
        .zip(pt.iter().cloned())
        .collect();
    let gens: Vec<MPoly> = ps
        .system
        .iter()
        .map(|f| f.specialize(&assignment).unwrap())
        .collect();
    let gb = buchberger(&gens, &RatDom, DEFAULT_SPAIR_CAP).unwrap();
    select_separating(&gb).unwrap().1.geo_count
}

#[test]
fn constancy_of_geometric_count_on_strata() {
    for name in [
        "cubic.sys",
        "torus.sys",
        "twin_parabolas.sys",
        "hyperbola_union.sys",
    ] {
        let (ps, rep) = fixture(name);
        let mut sampled = 0;
        for (i, st) in rep.strata.iter().enumerate() {
            // strata supported on loci like x^2 + 4 = 0 have no
            // rational points and cannot be probed over Q
            let pts = stratum_samples(st, &ps.param_ctx, 5);
            sampled += pts.len();
            for pt in &pts {
                assert!(st.contains(pt));
                assert_eq!(
                    geo_count_at(&ps, pt),
                    st.geo_count,
                    "{}: stratum {} at {:?}",
                    name,
                    i,
                    pt
                );
            }
        }
        assert!(sampled > 0, "{}: no stratum could be sampled", name);
    }
}

#[test]
fn specialized_chi_factors_as_u_times_f() {
    for name in ["cubic.sys", "torus.sys", "twin_parabolas.sys"] {
        let (ps, rep) = fixture(name);
        for (i, st) in rep.strata.iter().enumerate() {
            for pt in stratum_samples(st, &ps.param_ctx, 5) {
                let chi = st.chi_at(&pt).unwrap();
                let u = st.u_at(&pt).unwrap();
                let dom = RatDom;
                let (_, rem) = chi.div_rem(&u, &dom).unwrap();
                assert!(
                    rem.is_zero(),
                    "{}: chi not divisible by u on stratum {} at {:?}",
                    name,
                    i,
                    pt
                );
                // u is the square-free part scheme: distinct roots count
                let du = u.derivative(&dom);
                assert_eq!(u.gcd(&du).degree(), Some(0));
                assert_eq!(u.degree(), Some(st.geo_count));
            }
        }
    }
}
