//! Command-line front end: subresultant chains, RURs, stratification,
//! real fiber sections, and Collins projection sets over SystemFile
//! inputs, with deterministic text or JSON output.
//!
//! Exit codes: 0 success, 1 usage error, 2 input/parse error,
//! 3 computation error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fiberstrat_core::collins::{delineability_probe, projection_set, single_poly_strata, Region};
use fiberstrat_core::io::{parse_system_file, print_poly, SystemFile};
use fiberstrat_core::parametric::{
    stratify, ExcludedReason, ParamSystem, StratificationReport, Stratum, DEFAULT_MAX_DEPTH,
};
use fiberstrat_core::rat::{fmt_rat, is_binary_rat, parse_rat, rat_sign};
use fiberstrat_core::realroots::{fiber_at, FiberSection};
use fiberstrat_core::subres::sres_chain_in;
use fiberstrat_core::zerodim::{buchberger, DEFAULT_SPAIR_CAP};
use fiberstrat_core::{MPoly, Rat, RatFunDom, UPoly};
use fiberstrat_core::domain::RatDom;
use fiberstrat_core::rur::rur_build;

#[derive(Parser)]
#[command(name = "fiberstrat", version, about = "Stratify parametric polynomial systems by geometric fiber count")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sample probing (the pipeline itself is deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Subresultant chain of the first two system polynomials.
    Subres {
        input: PathBuf,
        /// Variable the pair is univariate in; defaults to the last var.
        #[arg(long)]
        var: Option<String>,
    },
    /// Rational univariate representation of a zero-dimensional system
    /// (all declared symbols are treated as variables).
    Rur { input: PathBuf },
    /// Stratify the parameter space by geometric fiber count.
    Stratify {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        /// Include up to this many sample points per stratum.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Ordered real fiber sections over a rational base point.
    Fibers {
        input: PathBuf,
        /// Base point, e.g. `p=-3,q=2`.
        #[arg(long)]
        at: String,
        /// Enclosure width, a positive binary rational.
        #[arg(long, default_value = "1/1024")]
        width: String,
    },
    /// Collins projection set of the first system polynomial.
    Collins {
        input: PathBuf,
        #[arg(long)]
        main_var: Option<String>,
        /// File of sample points (`name=rational` comma lists, one per
        /// line) for a delineability probe.
        #[arg(long)]
        samples: Option<PathBuf>,
    },
}

type CmdResult = Result<String, (u8, String)>;

fn usage(msg: impl Into<String>) -> (u8, String) {
    (1, msg.into())
}

fn input_err(msg: impl Into<String>) -> (u8, String) {
    (2, msg.into())
}

fn compute_err(e: fiberstrat_core::Error) -> (u8, String) {
    (3, e.to_string())
}

fn load_system(path: &PathBuf) -> Result<SystemFile, (u8, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {}", path.display(), e)))?;
    parse_system_file(&text).map_err(|e| input_err(format!("{}: {}", path.display(), e)))
}

/// `name=rational` comma list to a point in ctx-name order; names not
/// mentioned default to zero when `allow_missing` is set.
fn parse_point(
    spec: &str,
    names: &[String],
    allow_missing: bool,
) -> Result<Vec<Rat>, (u8, String)> {
    let mut vals: Vec<Option<Rat>> = vec![None; names.len()];
    for piece in spec.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let (name, val) = piece
            .split_once('=')
            .ok_or_else(|| usage(format!("expected name=value, got `{}`", piece)))?;
        let idx = names
            .iter()
            .position(|n| n == name.trim())
            .ok_or_else(|| usage(format!("unknown name `{}`", name.trim())))?;
        let r = parse_rat(val.trim())
            .ok_or_else(|| usage(format!("invalid rational `{}`", val.trim())))?;
        vals[idx] = Some(r);
    }
    vals.into_iter()
        .enumerate()
        .map(|(i, v)| match v {
            Some(r) => Ok(r),
            None if allow_missing => Ok(Rat::from_integer(0.into())),
            None => Err(usage(format!("missing value for `{}`", names[i]))),
        })
        .collect()
}

fn fmt_coeff(s: &str) -> String {
    if s.chars().all(|c| c.is_ascii_digit()) {
        s.to_string()
    } else {
        format!("({})", s)
    }
}

/// Canonical string for a univariate polynomial in `lambda`, highest
/// degree first, given coefficient strings indexed low to high.
fn fmt_lambda_poly(coeffs: &[String]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(k, c)| {
            let var = match k {
                0 => String::new(),
                1 => "lambda".to_string(),
                _ => format!("lambda^{}", k),
            };
            if var.is_empty() {
                fmt_coeff(c)
            } else if c == "1" {
                var
            } else {
                format!("{}*{}", fmt_coeff(c), var)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn fmt_ratfun_upoly(u: &UPoly<RatFunDom>) -> String {
    let coeffs: Vec<String> = u.coeffs.iter().map(|c| c.fmt()).collect();
    fmt_lambda_poly(&coeffs)
}

fn fmt_rat_upoly(u: &UPoly<RatDom>) -> String {
    let coeffs: Vec<String> = u.coeffs.iter().map(fmt_rat).collect();
    fmt_lambda_poly(&coeffs)
}

fn emit(format: Format, json: Value, text: String) -> String {
    match format {
        Format::Json => format!("{:#}", json),
        Format::Text => text,
    }
}

fn cmd_subres(input: &PathBuf, var: &Option<String>, format: Format) -> CmdResult {
    let sf = load_system(input)?;
    if sf.system.len() < 2 {
        return Err(usage("subres needs at least two system polynomials"));
    }
    let var_name = var
        .clone()
        .or_else(|| sf.vars.last().cloned())
        .ok_or_else(|| usage("no variable available"))?;
    let idx = sf
        .full_ctx
        .var_index(&var_name)
        .ok_or_else(|| usage(format!("unknown variable `{}`", var_name)))?;
    let f = &sf.system[0];
    let g = &sf.system[1];
    let chain = sres_chain_in(f, g, idx).map_err(compute_err)?;
    let principal: Vec<String> = chain
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let c = p
                .as_upoly_in(idx)
                .coeffs
                .get(j)
                .cloned()
                .unwrap_or_else(|| MPoly::zero(&sf.full_ctx));
            print_poly(&c)
        })
        .collect();
    let chain_str: Vec<String> = chain.iter().map(print_poly).collect();
    let j = json!({
        "var": var_name,
        "f": print_poly(f),
        "g": print_poly(g),
        "chain": chain_str,
        "principal": principal,
        "resultant": principal.first().cloned().unwrap_or_else(|| "0".into()),
    });
    let mut t = format!("subresultant chain in {} of\n  f = {}\n  g = {}\n", var_name, print_poly(f), print_poly(g));
    for (i, s) in chain_str.iter().enumerate() {
        t.push_str(&format!("  sResP_{} = {}\n", i, s));
    }
    for (i, s) in principal.iter().enumerate() {
        t.push_str(&format!("  sRes_{}  = {}\n", i, s));
    }
    Ok(emit(format, j, t))
}

fn cmd_rur(input: &PathBuf, format: Format) -> CmdResult {
    let sf = load_system(input)?;
    let mut gens: Vec<MPoly> = sf.system.clone();
    for b in &sf.base {
        gens.push(b.embed(&sf.full_ctx).map_err(compute_err)?);
    }
    let gb = buchberger(&gens, &RatDom, DEFAULT_SPAIR_CAP).map_err(compute_err)?;
    let r = rur_build(&gb).map_err(compute_err)?;
    let nums: Vec<String> = r.numerators.iter().map(fmt_rat_upoly).collect();
    let j = json!({
        "sigma": print_poly(&r.sigma),
        "u": fmt_rat_upoly(&r.u),
        "g": fmt_rat_upoly(&r.g),
        "numerators": nums,
        "geo_count": r.geo_count,
    });
    let mut t = format!(
        "sigma = {}\nu = {}\ng = {}\ngeo_count = {}\n",
        print_poly(&r.sigma),
        fmt_rat_upoly(&r.u),
        fmt_rat_upoly(&r.g),
        r.geo_count
    );
    let names = gb.ctx.vars.clone();
    for (name, n) in names.iter().zip(&nums) {
        t.push_str(&format!("g_{} = {}\n", name, n));
    }
    Ok(emit(format, j, t))
}

fn stratum_json(st: &Stratum, ps: &ParamSystem, samples: usize) -> Value {
    let mut v = json!({
        "equations": st.equations.iter().map(print_poly).collect::<Vec<_>>(),
        "nonvanish": print_poly(&st.nonvanish),
        "rank": st.rank,
        "sigma": print_poly(&st.sigma),
        "s": st.s,
        "geo_count": st.geo_count,
        "u": fmt_ratfun_upoly(&st.u),
        "f": fmt_ratfun_upoly(&st.f),
        "etale": st.etale,
        "depth": st.depth,
        "rur": st.rur.as_ref().map(|r| json!({
            "g": fmt_ratfun_upoly(&r.g),
            "numerators": r.numerators.iter().map(fmt_ratfun_upoly).collect::<Vec<_>>(),
        })),
    });
    if samples > 0 {
        let pts = fiberstrat_core::parametric::stratum_samples(st, &ps.param_ctx, samples);
        v["samples"] = json!(pts
            .iter()
            .map(|p| p.iter().map(fmt_rat).collect::<Vec<_>>())
            .collect::<Vec<_>>());
    }
    v
}

fn report_json(rep: &StratificationReport, ps: &ParamSystem, samples: usize) -> Value {
    json!({
        "strata": rep.strata.iter().map(|s| stratum_json(s, ps, samples)).collect::<Vec<_>>(),
        "excluded": rep.excluded.iter().map(|e| json!({
            "equations": e.equations.iter().map(print_poly).collect::<Vec<_>>(),
            "reason": match e.reason {
                ExcludedReason::MaxDepth => "max_depth",
                ExcludedReason::GenericFiberInfinite => "generic_fiber_infinite",
            },
            "avoid": e.avoid.iter().map(print_poly).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "depth_used": rep.depth_used,
    })
}

fn report_text(rep: &StratificationReport, ps: &ParamSystem, samples: usize) -> String {
    let mut t = String::new();
    for (i, st) in rep.strata.iter().enumerate() {
        t.push_str(&format!("stratum {}:\n", i));
        if st.equations.is_empty() {
            t.push_str("  equations: (none)\n");
        } else {
            for e in &st.equations {
                t.push_str(&format!("  equation: {} = 0\n", print_poly(e)));
            }
        }
        t.push_str(&format!("  nonvanish: {} != 0\n", print_poly(&st.nonvanish)));
        t.push_str(&format!(
            "  rank {}, s {}, geo_count {}, etale {}\n",
            st.rank, st.s, st.geo_count, st.etale
        ));
        t.push_str(&format!("  sigma = {}\n", print_poly(&st.sigma)));
        t.push_str(&format!("  u = {}\n", fmt_ratfun_upoly(&st.u)));
        if samples > 0 {
            let pts = fiberstrat_core::parametric::stratum_samples(st, &ps.param_ctx, samples);
            for p in pts {
                let coords: Vec<String> = p.iter().map(fmt_rat).collect();
                t.push_str(&format!("  sample: ({})\n", coords.join(", ")));
            }
        }
    }
    for e in &rep.excluded {
        let eqs: Vec<String> = e.equations.iter().map(print_poly).collect();
        let why = match e.reason {
            ExcludedReason::MaxDepth => "max depth reached",
            ExcludedReason::GenericFiberInfinite => "generic fiber not finite",
        };
        t.push_str(&format!("excluded locus V({}): {}\n", eqs.join(", "), why));
    }
    t.push_str(&format!("depth used: {}\n", rep.depth_used));
    t
}

fn cmd_stratify(input: &PathBuf, max_depth: usize, samples: usize, format: Format) -> CmdResult {
    let sf = load_system(input)?;
    let ps = ParamSystem::from_file(&sf).map_err(compute_err)?;
    let rep = stratify(&ps, max_depth).map_err(compute_err)?;
    Ok(emit(
        format,
        report_json(&rep, &ps, samples),
        report_text(&rep, &ps, samples),
    ))
}

fn section_json(s: &FiberSection, var_names: &[String]) -> Value {
    json!({
        "index": s.index,
        "lambda": {
            "lo": fmt_rat(&s.lambda.lo),
            "hi": fmt_rat(&s.lambda.hi),
            "exact": s.lambda.is_exact(),
        },
        "coords": var_names.iter().zip(&s.coords).map(|(n, c)| json!({
            "var": n,
            "lo": fmt_rat(&c.lo),
            "hi": fmt_rat(&c.hi),
        })).collect::<Vec<_>>(),
    })
}

fn cmd_fibers(input: &PathBuf, at: &str, width: &str, format: Format) -> CmdResult {
    let sf = load_system(input)?;
    let ps = ParamSystem::from_file(&sf).map_err(compute_err)?;
    let pt = parse_point(at, &ps.params, false)?;
    let w = parse_rat(width).ok_or_else(|| usage(format!("invalid width `{}`", width)))?;
    if rat_sign(&w) <= 0 || !is_binary_rat(&w) {
        return Err(usage("width must be a positive binary rational"));
    }
    let rep = stratify(&ps, DEFAULT_MAX_DEPTH).map_err(compute_err)?;
    let (idx, st) = rep
        .strata
        .iter()
        .enumerate()
        .find(|(_, s)| s.contains(&pt))
        .ok_or_else(|| (3u8, "no stratum contains the point".to_string()))?;
    let sections = fiber_at(st, &pt, &w).map_err(compute_err)?;
    let coords_str: Vec<String> = pt.iter().map(fmt_rat).collect();
    let j = json!({
        "point": ps.params.iter().zip(&coords_str).map(|(n, v)| json!({"name": n, "value": v})).collect::<Vec<_>>(),
        "stratum": idx,
        "geo_count": st.geo_count,
        "sections": sections.iter().map(|s| section_json(s, &ps.vars)).collect::<Vec<_>>(),
    });
    let mut t = format!(
        "point ({}) lies in stratum {} (geo_count {})\n",
        coords_str.join(", "),
        idx,
        st.geo_count
    );
    for s in &sections {
        t.push_str(&format!(
            "section {}: lambda in [{}, {}]\n",
            s.index,
            fmt_rat(&s.lambda.lo),
            fmt_rat(&s.lambda.hi)
        ));
        for (n, c) in ps.vars.iter().zip(&s.coords) {
            t.push_str(&format!("  {} in [{}, {}]\n", n, fmt_rat(&c.lo), fmt_rat(&c.hi)));
        }
    }
    if sections.is_empty() {
        t.push_str("real fiber is empty\n");
    }
    Ok(emit(format, j, t))
}

fn cmd_collins(
    input: &PathBuf,
    main_var: &Option<String>,
    samples: &Option<PathBuf>,
    format: Format,
) -> CmdResult {
    let sf = load_system(input)?;
    let a = sf
        .system
        .first()
        .ok_or_else(|| usage("collins needs a system polynomial"))?;
    let var_name = main_var
        .clone()
        .or_else(|| sf.vars.last().cloned())
        .ok_or_else(|| usage("no variable available"))?;
    let pset = projection_set(a, &var_name).map_err(compute_err)?;
    let strata = single_poly_strata(a, &var_name).map_err(compute_err)?;
    let mut probe_json = Value::Null;
    let mut probe_text = String::new();
    if let Some(path) = samples {
        let text = std::fs::read_to_string(path)
            .map_err(|e| input_err(format!("cannot read {}: {}", path.display(), e)))?;
        let names = sf.full_ctx.vars.clone();
        let mut pts = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            pts.push(parse_point(line, &names, true)?);
        }
        let region = Region {
            equations: vec![],
            signs: vec![],
        };
        let rep = delineability_probe(a, &var_name, &region, &pts).map_err(compute_err)?;
        probe_json = json!({
            "counts": rep.counts,
            "one_sign_cell": rep.one_sign_cell,
            "common_count": rep.common_count,
            "mismatch": rep.mismatch,
        });
        probe_text = match (&rep.common_count, &rep.mismatch) {
            (Some(c), _) => format!("probe: common real-root count {}\n", c),
            (None, Some(m)) => format!("probe: {}\n", m),
            _ => String::new(),
        };
    }
    let j = json!({
        "main_var": pset.main_var,
        "coefficients": pset.coefficients.iter().map(print_poly).collect::<Vec<_>>(),
        "zero_flags": pset.zero_flags,
        "truncations": pset.truncations.iter().map(print_poly).collect::<Vec<_>>(),
        "subdiscs": pset.subdiscs.iter().map(print_poly).collect::<Vec<_>>(),
        "strata": strata.iter().map(|y| json!({
            "index": y.index,
            "equations": y.equations.iter().map(print_poly).collect::<Vec<_>>(),
            "nonvanish": y.nonvanish.as_ref().map(print_poly),
            "cylinder": y.cylinder,
            "empty": y.empty,
        })).collect::<Vec<_>>(),
        "probe": probe_json,
    });
    let mut t = format!("projection set in {}\n", pset.main_var);
    t.push_str(&format!(
        "coefficients: {}\n",
        pset.coefficients.iter().map(print_poly).collect::<Vec<_>>().join(", ")
    ));
    t.push_str(&format!(
        "truncations: {}\n",
        pset.truncations.iter().map(print_poly).collect::<Vec<_>>().join(", ")
    ));
    t.push_str(&format!(
        "subdiscs: {}\n",
        pset.subdiscs.iter().map(print_poly).collect::<Vec<_>>().join(", ")
    ));
    for y in &strata {
        let eqs: Vec<String> = y.equations.iter().map(print_poly).collect();
        let mut line = if eqs.is_empty() {
            format!("Y_{}: full space", y.index)
        } else {
            format!("Y_{}: V({})", y.index, eqs.join(", "))
        };
        if let Some(h) = &y.nonvanish {
            line.push_str(&format!(" minus V(.., {})", print_poly(h)));
        }
        if y.cylinder {
            line.push_str(" [cylinder]");
        }
        if y.empty {
            line.push_str(" [empty]");
        }
        line.push('\n');
        t.push_str(&line);
    }
    t.push_str(&probe_text);
    Ok(emit(format, j, t))
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Subres { input, var } => cmd_subres(input, var, cli.format),
        Command::Rur { input } => cmd_rur(input, cli.format),
        Command::Stratify {
            input,
            max_depth,
            samples,
        } => cmd_stratify(input, *max_depth, *samples, cli.format),
        Command::Fibers { input, at, width } => cmd_fibers(input, at, width, cli.format),
        Command::Collins {
            input,
            main_var,
            samples,
        } => cmd_collins(input, main_var, samples, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{}", out);
            ExitCode::SUCCESS
        }
        Err((code, msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(code)
        }
    }
}
