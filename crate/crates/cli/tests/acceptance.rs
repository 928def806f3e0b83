//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (run with `-- --nocapture` to see the lines for
//! passing criteria). A failing test here is a red criterion.

use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fiberstrat_core::collins::{delineability_probe, projection_set, Region};
use fiberstrat_core::domain::RatDom;
use fiberstrat_core::io::parse_system_file;
use fiberstrat_core::matrix::Matrix;
use fiberstrat_core::parametric::{
    stratify, BaseLocus, ParamSystem, StratificationReport, DEFAULT_MAX_DEPTH,
};
use fiberstrat_core::poly::MPolyDom;
use fiberstrat_core::rat::{rat, rat_frac, Rat};
use fiberstrat_core::realroots::{
    fiber_at, real_count_probe, section_satisfies_system, sturm_count, Bound,
};
use fiberstrat_core::rur::rur_build;
use fiberstrat_core::subres::{check_specialization, sres_chain, subres_poly_det};
use fiberstrat_core::zerodim::{buchberger, quotient_basis, trace_det, DEFAULT_SPAIR_CAP};
use fiberstrat_core::{Ctx, MPoly, QPoly, UPoly};

fn fixture_path(name: &str) -> String {
    format!("{}/../../fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn fixture(name: &str) -> (ParamSystem, StratificationReport) {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    let ps = ParamSystem::from_file(&parse_system_file(&text).unwrap()).unwrap();
    let rep = stratify(&ps, DEFAULT_MAX_DEPTH).unwrap();
    (ps, rep)
}

fn report(n: usize, ok: bool, what: &str) {
    println!("criterion {}: {} - {}", n, if ok { "PASS" } else { "FAIL" }, what);
}

fn random_qpoly(rng: &mut ChaCha8Rng, deg: usize) -> QPoly {
    let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(-9..=9)).collect();
    coeffs.push(rng.gen_range(1..=5));
    QPoly::from_i64(&coeffs)
}

fn random_param_upoly(rng: &mut ChaCha8Rng, ctx: &Arc<Ctx>, deg: usize) -> UPoly<MPolyDom> {
    let a = MPoly::var(ctx, "a").unwrap();
    let b = MPoly::var(ctx, "b").unwrap();
    let mut coeffs: Vec<MPoly> = (0..deg)
        .map(|_| {
            MPoly::constant(ctx, rat(rng.gen_range(-4..=4)))
                .add(&a.scale(&rat(rng.gen_range(-3..=3))))
                .add(&b.scale(&rat(rng.gen_range(-3..=3))))
        })
        .collect();
    coeffs.push(MPoly::constant(ctx, rat(rng.gen_range(1..=3))));
    let dom = MPolyDom { ctx: ctx.clone() };
    UPoly::from_coeffs(coeffs, &dom)
}

#[test]
fn criterion_01_subresultant_oracles() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..100 {
        let p = rng.gen_range(2..=6);
        let q = rng.gen_range(1..p);
        let f = random_qpoly(&mut rng, p);
        let g = random_qpoly(&mut rng, q);
        let chain = sres_chain(&f, &g, &RatDom).unwrap();
        for j in 0..q {
            assert_eq!(chain.polys[j], subres_poly_det(&f, &g, j, &RatDom).unwrap());
        }
    }
    let ctx = Ctx::grevlex(vec!["a", "b", "x"]);
    let dom = MPolyDom { ctx: ctx.clone() };
    for _ in 0..100 {
        let p = rng.gen_range(2..=6);
        let q = rng.gen_range(1..p);
        let f = random_param_upoly(&mut rng, &ctx, p);
        let g = random_param_upoly(&mut rng, &ctx, q);
        let chain = sres_chain(&f, &g, &dom).unwrap();
        for j in 0..q {
            assert_eq!(chain.polys[j], subres_poly_det(&f, &g, j, &dom).unwrap());
        }
    }
    for _ in 0..200 {
        let p = rng.gen_range(2..=6);
        let q = rng.gen_range(1..p);
        let f = random_param_upoly(&mut rng, &ctx, p);
        let g = random_param_upoly(&mut rng, &ctx, q);
        let assignment = vec![
            ("a".to_string(), rat(rng.gen_range(-5..=5))),
            ("b".to_string(), rat(rng.gen_range(-5..=5))),
        ];
        let rep = check_specialization(&f, &g, &assignment).unwrap();
        assert!(rep.pass, "{:?}", rep.first_discrepancy);
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 30, "took {:?}", dt);
    report(1, true, "PRS equals determinantal minors on 200 pairs; 200 specializations commute");
}

#[test]
fn criterion_02_cubic_fixture() {
    let t0 = Instant::now();
    let (ps, rep) = fixture("cubic.sys");
    assert_eq!(rep.strata.len(), 2);
    let main = &rep.strata[0];
    assert_eq!(main.geo_count, 2);
    assert_eq!(main.s, 1);
    // nonvanish is p: stratum is the discriminant curve minus the origin
    let pvar = MPoly::var(&ps.param_ctx, "p").unwrap();
    assert_eq!(main.nonvanish, pvar);
    let origin = &rep.strata[1];
    assert_eq!(origin.geo_count, 1);
    assert!(origin.contains(&[rat(0), rat(0)]));
    assert!(!origin.contains(&[rat(-3), rat(2)]));
    // delta_0 = 4p^3 + 27q^2 vanishes on the base, delta_1 = 6p does not
    let base = BaseLocus::new(&ps.param_ctx, &ps.base).unwrap();
    let disc = fiberstrat_core::io::parse_poly("4*p^3 + 27*q^2", &ps.param_ctx).unwrap();
    let sixp = fiberstrat_core::io::parse_poly("6*p", &ps.param_ctx).unwrap();
    assert!(base.radical_member(&disc).unwrap());
    assert!(!base.radical_member(&sixp).unwrap());
    // chi = u * f exactly after specialization: the remainder passed
    // radical membership during construction
    for pt in [vec![rat(-3), rat(2)], vec![rat(-12), rat(16)]] {
        let chi = main.chi_at(&pt).unwrap();
        let u = main.u_at(&pt).unwrap();
        let (_, r) = chi.div_rem(&u, &RatDom).unwrap();
        assert!(r.is_zero());
        assert_eq!(u.degree(), Some(2));
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 5, "took {:?}", dt);
    report(2, true, "discriminant-curve stratum has count 2, origin stratum count 1");
}

#[test]
fn criterion_03_torus_fixture() {
    let t0 = Instant::now();
    let (ps, rep) = fixture("torus.sys");
    // every emitted stratum has geometric count 2
    for st in &rep.strata {
        assert_eq!(st.geo_count, 2);
    }
    // fibers at three circle points: exactly 2 real sections each, and
    // the enclosures back-substitute into the system at width 2^-20
    let w = rat_frac(1, 1 << 20);
    for pt in [
        vec![rat(1), rat(0)],
        vec![rat(-1), rat(0)],
        vec![rat_frac(3, 5), rat_frac(4, 5)],
    ] {
        let st = rep
            .strata
            .iter()
            .find(|s| s.contains(&pt))
            .expect("point lies in a stratum");
        let sections = fiber_at(st, &pt, &w).unwrap();
        assert_eq!(sections.len(), 2, "at {:?}", pt);
        for s in &sections {
            assert!(section_satisfies_system(&ps, &pt, s), "at {:?}", pt);
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 10, "took {:?}", dt);
    // The single-stratum clause is structurally unattainable here: the
    // RUR over the circle stores coefficients with denominator y^2, so
    // the two points (1,0) and (-1,0) where y = 0 split off as their
    // own strata (with their own valid etale forms and count 2). Any
    // representation that localizes at denominators must exclude them;
    // the fiber counts above still agree everywhere on the circle.
    let single = rep.strata.len() == 1;
    report(
        3,
        single,
        "torus: count 2 and 2 real sections verified at all three points; \
         single-stratum clause fails (3 strata: the circle minus {y = 0} plus \
         the two antipodal points, all with count 2)",
    );
    assert!(
        single,
        "honest red: {} strata instead of 1; all have geometric count 2 and \
         the fiber checks pass, but the denominator y^2 in the parametric RUR \
         forces the y = 0 points into separate strata",
        rep.strata.len()
    );
}

#[test]
fn criterion_04_twin_parabolas() {
    let t0 = Instant::now();
    let (_ps, rep) = fixture("twin_parabolas.sys");
    let main = &rep.strata[0];
    assert_eq!(main.geo_count, 4);
    assert!(main.contains(&[rat(1)]) && main.contains(&[rat(-1)]));
    let at_zero = rep
        .strata
        .iter()
        .find(|s| s.contains(&[rat(0)]))
        .expect("x = 0 lies in a stratum");
    assert_eq!(at_zero.geo_count, 2);
    // the probed real count is 2 on both sides: insufficient evidence
    // for the geometric jump the stratification exhibits
    let probe = real_count_probe(main, &[vec![rat(1)], vec![rat(-1)]]).unwrap();
    assert!(probe.constant);
    assert_eq!(probe.counts[0], 2);
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 5, "took {:?}", dt);
    report(4, true, "geometric count splits 4 vs 2 at x = 0 while real count stays 2");
}

#[test]
fn criterion_05_hyperbola_union() {
    let t0 = Instant::now();
    let (ps, rep) = fixture("hyperbola_union.sys");
    let x = MPoly::var(&ps.param_ctx, "x").unwrap();
    // x = 0 appears as its own residual locus
    assert!(rep
        .strata
        .iter()
        .any(|s| s.equations.contains(&x)));
    // no stratum spans both sides of x = 0
    for st in &rep.strata {
        let at_zero = st.contains(&[rat(0)]);
        let off_zero = (1..=5).any(|i| st.contains(&[rat(i)]) || st.contains(&[rat(-i)]));
        assert!(
            !(at_zero && off_zero),
            "a stratum claims constant count across x = 0"
        );
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 5, "took {:?}", dt);
    report(5, true, "x = 0 is isolated; no stratum spans both sides of it");
}

fn split_ideal_points(
    points: &[Vec<Rat>],
    ctx: &Arc<Ctx>,
) -> fiberstrat_core::zerodim::GroebnerBasis<RatDom> {
    let mut gens = Vec::new();
    for v in 0..ctx.nvars() {
        let var = MPoly::var_in(ctx, v, &RatDom);
        let mut vals: Vec<Rat> = points.iter().map(|p| p[v].clone()).collect();
        vals.sort();
        vals.dedup();
        let mut f = MPoly::from_int(ctx, 1);
        for a in vals {
            f = f.mul(&var.sub(&MPoly::constant(ctx, a)));
        }
        gens.push(f);
    }
    buchberger(&gens, &RatDom, DEFAULT_SPAIR_CAP).unwrap()
}

fn rur_identities_hold(gb: &fiberstrat_core::zerodim::GroebnerBasis<RatDom>) {
    let r = rur_build(gb).unwrap();
    let du = r.u.derivative(&RatDom);
    assert_eq!(r.u.gcd(&du).degree(), Some(0), "u not square-free");
    assert_eq!(r.u.gcd(&r.g).degree(), Some(0), "g not invertible mod u");
    // rur_build additionally verified g^e F(g_1/g, ...) = 0 mod u for
    // every generator; reaching here means those identities held
}

#[test]
fn criterion_06_rur_identities() {
    let t0 = Instant::now();
    let ctx1 = Ctx::grevlex(vec!["x"]);
    let ctx2 = Ctx::grevlex(vec!["x", "y"]);
    let parse = |s: &str, c: &Arc<Ctx>| fiberstrat_core::io::parse_poly(s, c).unwrap();
    for gens in [
        vec![parse("x^2 - 2", &ctx1)],
        vec![parse("(x - 1)*(x - 2)*(x - 3)", &ctx1)],
    ] {
        rur_identities_hold(&buchberger(&gens, &RatDom, DEFAULT_SPAIR_CAP).unwrap());
    }
    rur_identities_hold(
        &buchberger(
            &[parse("x^2 - 2", &ctx2), parse("y^2 - 3", &ctx2)],
            &RatDom,
            DEFAULT_SPAIR_CAP,
        )
        .unwrap(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for case in 0..20 {
        let mut pool: Vec<i64> = (-8..=8).collect();
        for i in (1..pool.len()).rev() {
            pool.swap(i, rng.gen_range(0..=i));
        }
        if case % 2 == 0 {
            let n = rng.gen_range(1..=6);
            let pts: Vec<Vec<Rat>> = pool[..n].iter().map(|&v| vec![rat(v)]).collect();
            rur_identities_hold(&split_ideal_points(&pts, &ctx1));
        } else {
            let nx = rng.gen_range(1..=3);
            let ny = rng.gen_range(1..=2);
            let mut pts = Vec::new();
            for &a in &pool[..nx] {
                for &b in &pool[nx..nx + ny] {
                    pts.push(vec![rat(a), rat(b)]);
                }
            }
            rur_identities_hold(&split_ideal_points(&pts, &ctx2));
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 30, "took {:?}", dt);
    report(6, true, "u square-free, gcd(g,u) constant, back-substitution zero on 23 ideals");
}

#[test]
fn criterion_07_stickelberger() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let ctx = Ctx::grevlex(vec!["x", "y"]);
    for _ in 0..15 {
        let mut pool: Vec<i64> = (-5..=5).collect();
        for i in (1..pool.len()).rev() {
            pool.swap(i, rng.gen_range(0..=i));
        }
        let nx = rng.gen_range(1..=3);
        let ny = rng.gen_range(1..=2);
        let pts: Vec<Vec<Rat>> = pool[..nx]
            .iter()
            .flat_map(|&a| pool[nx..nx + ny].iter().map(move |&b| vec![rat(a), rat(b)]))
            .collect();
        let gb = split_ideal_points(&pts, &ctx);
        let qb = quotient_basis(&gb).unwrap();
        let w = rng.gen_range(2..=9);
        let sigma = MPoly::var(&ctx, "x")
            .unwrap()
            .add(&MPoly::var(&ctx, "y").unwrap().scale(&rat(w)));
        let (tr, det) = trace_det(&sigma, &gb, &qb, &RatDom).unwrap();
        let want_tr: Rat = pts.iter().map(|p| sigma.eval(p)).sum();
        let mut want_det = rat(1);
        for p in &pts {
            want_det *= sigma.eval(p);
        }
        assert_eq!(tr, want_tr);
        assert_eq!(det, want_det);
        // Cayley-Hamilton on the multiplication operator (dim <= 6 here,
        // univariate cases below push to 8)
        let m = fiberstrat_core::zerodim::mult_matrix(&sigma, &gb, &qb, &RatDom);
        let chi = m.char_poly(&RatDom).unwrap();
        assert_eq!(m.eval_poly(&chi, &RatDom), Matrix::zero(qb.dim, qb.dim, &RatDom));
    }
    // dimension 8 with multiplicities
    let ctx1 = Ctx::grevlex(vec!["x"]);
    let f = fiberstrat_core::io::parse_poly("(x - 1)^3*(x + 2)^2*(x - 4)^3", &ctx1).unwrap();
    let gb = buchberger(&[f], &RatDom, DEFAULT_SPAIR_CAP).unwrap();
    let qb = quotient_basis(&gb).unwrap();
    assert_eq!(qb.dim, 8);
    let sigma = MPoly::var(&ctx1, "x").unwrap();
    let (tr, det) = trace_det(&sigma, &gb, &qb, &RatDom).unwrap();
    assert_eq!(tr, rat(3 * 1 + 2 * -2 + 3 * 4));
    assert_eq!(det, rat(1 * 4 * 64));
    let m = fiberstrat_core::zerodim::mult_matrix(&sigma, &gb, &qb, &RatDom);
    let chi = m.char_poly(&RatDom).unwrap();
    assert_eq!(m.eval_poly(&chi, &RatDom), Matrix::zero(8, 8, &RatDom));
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 10, "took {:?}", dt);
    report(7, true, "trace/det match point sums and products; Cayley-Hamilton up to dim 8");
}

#[test]
fn criterion_08_collins() {
    let t0 = Instant::now();
    let ctx = Ctx::grevlex(vec!["p", "q", "x"]);
    let parse = |s: &str| fiberstrat_core::io::parse_poly(s, &ctx).unwrap();
    let a = parse("x^3 + p*x + q");
    let pset = projection_set(&a, "x").unwrap();
    let disc = parse("4*p^3 + 27*q^2");
    let has_disc = pset
        .subdiscs
        .iter()
        .any(|s| *s == disc || *s == disc.neg());
    assert!(has_disc);
    assert!(pset.subdiscs.contains(&parse("6*p")));
    let neg_disc = Region {
        equations: vec![],
        signs: vec![(disc.clone(), -1)],
    };
    let rep = delineability_probe(
        &a,
        "x",
        &neg_disc,
        &[vec![rat(-2), rat(1), rat(0)], vec![rat(-3), rat(1), rat(0)]],
    )
    .unwrap();
    assert_eq!(rep.common_count, Some(3));
    let pos_disc = Region {
        equations: vec![],
        signs: vec![(disc, 1), (parse("p"), -1)],
    };
    let rep = delineability_probe(
        &a,
        "x",
        &pos_disc,
        &[vec![rat(-1), rat(1), rat(0)], vec![rat(-1), rat(2), rat(0)]],
    )
    .unwrap();
    assert_eq!(rep.common_count, Some(1));
    // cross-check a real count directly
    assert_eq!(
        sturm_count(&QPoly::from_i64(&[1, -2, 0, 1]), &Bound::NegInf, &Bound::PosInf),
        3
    );
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 5, "took {:?}", dt);
    report(8, true, "projection set holds the discriminant and 6p; probes give counts 3 and 1");
}

#[test]
fn criterion_09_etale_certificates() {
    let t0 = Instant::now();
    for name in ["cubic.sys", "torus.sys", "twin_parabolas.sys"] {
        let (_, rep) = fixture(name);
        for (i, st) in rep.strata.iter().enumerate() {
            assert!(st.etale, "{}: stratum {} lacks an etale certificate", name, i);
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 10, "took {:?}", dt);
    report(9, true, "u' invertible modulo u certified on every stratum of fixtures 2-4");
}

#[test]
fn criterion_10_cli_determinism() {
    let t0 = Instant::now();
    let bin = env!("CARGO_BIN_EXE_fiberstrat");
    let runs: Vec<Vec<String>> = vec![
        vec!["stratify".into(), fixture_path("cubic.sys")],
        vec!["stratify".into(), fixture_path("torus.sys")],
        vec!["stratify".into(), fixture_path("twin_parabolas.sys")],
        vec!["stratify".into(), fixture_path("hyperbola_union.sys")],
        vec![
            "fibers".into(),
            fixture_path("cubic.sys"),
            "--at".into(),
            "p=-3,q=2".into(),
        ],
        vec![
            "fibers".into(),
            fixture_path("torus.sys"),
            "--at".into(),
            "x=3/5,y=4/5".into(),
            "--width".into(),
            "1/1048576".into(),
        ],
        vec!["rur".into(), fixture_path("sqrt23.sys")],
        vec!["subres".into(), fixture_path("pair.sys")],
        vec!["collins".into(), fixture_path("cubic.sys"), "--main-var".into(), "x".into()],
    ];
    for args in &runs {
        for format in ["text", "json"] {
            let out = |_: ()| {
                Command::new(bin)
                    .args(args)
                    .args(["--format", format])
                    .output()
                    .unwrap()
            };
            let a = out(());
            let b = out(());
            assert!(
                a.status.success(),
                "{:?} --format {} failed: {}",
                args,
                format,
                String::from_utf8_lossy(&a.stderr)
            );
            assert_eq!(a.stdout, b.stdout, "{:?} --format {}", args, format);
            assert_eq!(a.status.code(), b.status.code());
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs() < 60, "took {:?}", dt);
    report(10, true, "byte-identical output across repeated runs of every command");
}
