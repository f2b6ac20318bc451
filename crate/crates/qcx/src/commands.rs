use std::path::Path;

use qcx_core::embed::{characterize_image, extend_embedding, inverse_bounds_report, inverse_mu};
use qcx_core::explattice::{check_inversion_gaps, extend_exp_automorphism};
use qcx_core::seqcore::{split_decomposition, three_point_lambda};
use qcx_core::splitflow::{certify, extend_automorphism, make_splittable, verify_extension};
use qcx_core::{Error, IntBijection, MonotoneSeq, Point};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cli::{BuildArgs, EvalArgs, GridArgs, ReportArgs, SeqArgs};
use crate::grid;
use crate::input::{load_embedding, load_handle, load_sequence, write_json, write_text, Handle};
use crate::report::{InputDigest, Outcome, RunReport};
use crate::CliError;

/// Integers checked on each side of the origin by `--verify`.
pub const VERIFY_WINDOW: i64 = 30;
pub const AUTO_TOL: f64 = 1e-9;
pub const EMBED_TOL: f64 = 1e-8;

fn digest(command: &str, input: &[u8], params: &[String]) -> String {
    let mut d = InputDigest::default();
    d.part(command.as_bytes()).part(input);
    for p in params {
        d.part(p.as_bytes());
    }
    d.finish()
}

fn report(command: &str, inputs_digest: String, outcomes: Vec<Outcome>, artifacts: Vec<String>, data: Value) -> RunReport {
    RunReport { command: command.into(), inputs_digest, outcomes, artifacts, data }
}

fn check_delta(delta: f64) -> Result<(), CliError> {
    if delta > 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(CliError::Input(format!("--delta must be positive and finite, got {delta}")))
    }
}

fn check_tol(tol: f64) -> Result<f64, CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(CliError::Input(format!("--tol must be positive and finite, got {tol}")))
    }
}

fn bijective(seq: &IntBijection) -> Outcome {
    Outcome::check("bijective", seq.is_bijective(), seq.is_bijective(), "sequence is not a bijection of the integers")
}

fn horizon_error(e: Error) -> CliError {
    match e {
        Error::HorizonTooSmall { .. } => CliError::Input(format!("--horizon: {e}")),
        e => CliError::Input(e.to_string()),
    }
}

fn window_value(seq: &IntBijection) -> Value {
    let (lo, hi) = seq.window();
    json!({ "window": [lo, hi] })
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

pub fn check3pc(args: &SeqArgs) -> Result<RunReport, CliError> {
    let (bytes, seq) = load_sequence(&args.input)?;
    let d = digest("check3pc", &bytes, &[args.horizon.to_string()]);
    let b = bijective(&seq);
    if !b.pass {
        return Ok(report("check3pc", d, vec![b], vec![], Value::Null));
    }
    let r = three_point_lambda(&seq, args.horizon).map_err(horizon_error)?;
    let class = seq.limit_classification();
    let outcomes = vec![
        b,
        Outcome::pass("lambda", r.lambda_certified),
        Outcome::pass("limit_class", serde_json::to_value(class).unwrap()),
    ];
    Ok(report("check3pc", d, outcomes, vec![], json!({ "three_point": r, "limit_class": class })))
}

pub fn split(args: &SeqArgs) -> Result<RunReport, CliError> {
    let (bytes, seq) = load_sequence(&args.input)?;
    let d = digest("split", &bytes, &[args.horizon.to_string()]);
    if args.horizon < 1 {
        return Err(CliError::Input("--horizon must be positive".into()));
    }
    let b = bijective(&seq);
    if !b.pass {
        return Ok(report("split", d, vec![b], vec![], Value::Null));
    }
    let mut outcomes = vec![b];
    let mut data = serde_json::Map::new();
    match split_decomposition(&seq, 2 * args.horizon + 1, args.horizon) {
        Ok(dec) => {
            outcomes.push(Outcome::pass("splitting_interval", dec.bound_c));
            data.insert("decomposition".into(), serde_json::to_value(&dec).unwrap());
        }
        Err(f) => outcomes.push(Outcome::fail("splitting_interval", json!({ "horizon": args.horizon }), f.reason())),
    }
    if matches!(seq, IntBijection::IdentityTail { .. }) {
        let lambda = certify(&seq).map_err(horizon_error)?.lambda_certified;
        match make_splittable(&seq, lambda, 1.0) {
            Ok(s) => {
                let cap = 2.0 * lambda + 3.0;
                let c = s.decomposition.bound_c;
                outcomes.push(Outcome::check("sorted_block_bound", c as f64 <= cap, json!({ "bound_c": c, "cap": cap }), "block exceeds 2λ+3"));
                let bad = s.steps.iter().filter(|t| !t.claim_bound_ok).count();
                outcomes.push(Outcome::check("step_bounds", bad == 0, s.steps.len(), format!("{bad} steps out of bounds")));
                data.insert("lambda".into(), json!(lambda));
                data.insert("sorted".into(), serde_json::to_value(&s.decomposition).unwrap());
                data.insert("steps".into(), serde_json::to_value(&s.steps).unwrap());
                data.insert("plans".into(), serde_json::to_value(&s.plans).unwrap());
            }
            Err(e) => outcomes.push(Outcome::fail("sorted_block_bound", json!({ "lambda": lambda }), e.to_string())),
        }
    }
    Ok(report("split", d, outcomes, vec![], Value::Object(data)))
}

fn build_params(a: &BuildArgs) -> Vec<String> {
    vec![a.delta.to_string(), a.horizon.to_string(), a.verify.to_string(), format!("{:?}", a.tol)]
}

fn write_handle(out: &Option<std::path::PathBuf>, handle: &Handle, artifacts: &mut Vec<String>) -> Result<(), CliError> {
    if let Some(p) = out {
        write_json(p, handle)?;
        artifacts.push(path_str(p));
    }
    Ok(())
}

pub fn extend_auto(args: &BuildArgs) -> Result<RunReport, CliError> {
    let (bytes, seq) = load_sequence(&args.input)?;
    let d = digest("extend-auto", &bytes, &build_params(args));
    check_delta(args.delta)?;
    let tol = check_tol(args.tol.unwrap_or(AUTO_TOL))?;
    let b = bijective(&seq);
    if !b.pass {
        return Ok(report("extend-auto", d, vec![b], vec![], Value::Null));
    }
    let mut outcomes = vec![b];
    let expr = match extend_automorphism(&seq, args.delta) {
        Ok(e) => e,
        Err(e) => {
            outcomes.push(Outcome::fail("extension", window_value(&seq), e.to_string()));
            return Ok(report("extend-auto", d, outcomes, vec![], Value::Null));
        }
    };
    let bound = expr.dilatation_bound();
    outcomes.push(Outcome::pass("extension", bound));
    let mut data = json!({ "dilatation_bound": bound, "leaf_count": expr.leaf_count() });
    if args.verify {
        let r = verify_extension(&expr, &seq, VERIFY_WINDOW, args.delta, tol);
        outcomes.extend([
            Outcome::check("integer_residual", r.integer_residual < tol, r.integer_residual, format!("at n = {}", r.integer_witness)),
            Outcome::check("outside_residual", r.outside_residual == 0.0, r.outside_residual, "map moves points with |Im z| ≥ δ"),
            Outcome::check("round_trip", r.round_trip < tol, r.round_trip, "inverse does not undo the map"),
            Outcome::check("jacobian", r.folded == 0, r.min_jacobian, format!("{} sampled points fold", r.folded)),
            Outcome::check(
                "dilatation",
                r.dilatation_bound >= r.sampled_k - 1e-6,
                json!({ "bound": r.dilatation_bound, "sampled": r.sampled_k }),
                "sampled distortion exceeds the bound",
            ),
        ]);
        data["verification"] = serde_json::to_value(&r).unwrap();
    }
    let mut artifacts = vec![];
    write_handle(&args.out, &Handle::Expr { delta: args.delta, expr }, &mut artifacts)?;
    Ok(report("extend-auto", d, outcomes, artifacts, data))
}

/// `e` restricted to `[lo, hi]`, tails unchanged.
fn widened(e: &MonotoneSeq, lo: i64, hi: i64) -> MonotoneSeq {
    let values = (lo..=hi).map(|n| e.value(n)).collect();
    MonotoneSeq::new(lo, values, e.left_slope, e.right_slope).expect("restriction of a valid sequence")
}

pub fn extend_embed(args: &BuildArgs) -> Result<RunReport, CliError> {
    let (bytes, input) = load_embedding(&args.input)?;
    let d = digest("extend-embed", &bytes, &build_params(args));
    check_delta(args.delta)?;
    let tol = check_tol(args.tol.unwrap_or(EMBED_TOL))?;
    let (e, sigma) = (&input.image, &input.assignment);
    let b = bijective(sigma);
    if !b.pass {
        return Ok(report("extend-embed", d, vec![b], vec![], Value::Null));
    }
    let image = characterize_image(e, args.horizon, f64::INFINITY);
    let mut outcomes = vec![b, Outcome::pass("image_m", image.m_constant)];
    let map = match extend_embedding(e, sigma, args.delta) {
        Ok(m) => m,
        Err(err) => {
            outcomes.push(Outcome::fail("extension", window_value(sigma), err.to_string()));
            return Ok(report("extend-embed", d, outcomes, vec![], json!({ "image": image })));
        }
    };
    outcomes.push(Outcome::pass("extension", map.auto.dilatation_bound()));
    let mut data = json!({ "image": image, "automorphism_bound": map.auto.dilatation_bound() });
    if args.verify {
        let (slo, shi) = sigma.window();
        let (lo, hi) = (slo.min(e.lo), shi.max(e.hi));
        let (mut worst, mut at) = (0.0_f64, lo);
        for n in lo - 2..=hi + 2 {
            let r = map.eval(Point::real(n as f64)).dist(Point::real(e.value(sigma.value(n))));
            if r > worst {
                (worst, at) = (r, n);
            }
        }
        outcomes.push(Outcome::check("integer_residual", worst < tol, worst, format!("at n = {at}")));
        let mu = inverse_mu(e, sigma, args.horizon);
        let inv = sigma.inverse();
        let wide = widened(e, lo - args.horizon, hi + args.horizon);
        let g: Vec<i64> = (wide.lo..=wide.hi).map(|n| inv.value(n)).collect();
        let r = inverse_bounds_report(&wide, &g, mu);
        outcomes.push(Outcome::check(
            "inverse_bounds",
            r.pass(),
            json!({ "mu": mu, "l": r.l_constant, "adjacent_max": r.adjacent_max, "violations": r.violations.len() }),
            format!("first violation {:?}", r.violations.first()),
        ));
        data["inverse_bounds"] = json!({
            "mu": r.mu,
            "adjacent_max": r.adjacent_max,
            "ratio_range": r.ratio_range,
            "l_constant": r.l_constant,
        });
    }
    let mut artifacts = vec![];
    write_handle(&args.out, &Handle::Embedding { map }, &mut artifacts)?;
    Ok(report("extend-embed", d, outcomes, artifacts, data))
}

pub fn explattice(args: &BuildArgs) -> Result<RunReport, CliError> {
    let (bytes, seq) = load_sequence(&args.input)?;
    let d = digest("explattice", &bytes, &build_params(args));
    let tol = check_tol(args.tol.unwrap_or(AUTO_TOL))?;
    let b = bijective(&seq);
    if !b.pass {
        return Ok(report("explattice", d, vec![b], vec![], Value::Null));
    }
    let mut outcomes = vec![b];
    let map = match extend_exp_automorphism(&seq) {
        Ok(m) => m,
        Err(Error::NotTendingToZero) => {
            outcomes.push(Outcome::fail("tends_to_zero", false, "f(eⁿ) does not tend to 0 as n → −∞"));
            return Ok(report("explattice", d, outcomes, vec![], Value::Null));
        }
        Err(e) => {
            outcomes.push(Outcome::pass("tends_to_zero", true));
            outcomes.push(Outcome::fail("extension", window_value(&seq), e.to_string()));
            return Ok(report("explattice", d, outcomes, vec![], Value::Null));
        }
    };
    let r = map.report;
    outcomes.push(Outcome::pass("tends_to_zero", true));
    let gaps = check_inversion_gaps(&seq, r.lambda_b, args.horizon);
    outcomes.push(Outcome::check("inversion_gaps", gaps, r.c_lambda, "an inversion exceeds log(λ_b + 1)"));
    let data = json!({ "report": r, "lambda": map.lambda, "dilatation_bound": map.g.dilatation_bound() });
    if args.verify {
        let (lo, hi) = seq.window();
        let (mut worst, mut at) = (0.0_f64, lo);
        for n in lo.min(0) - 3..=hi.max(0) + 3 {
            let want = Point::real((seq.value(n) as f64).exp());
            let got = map.eval(Point::real((n as f64).exp())).expect("off the puncture");
            let rel = got.dist(want) / want.norm();
            if rel > worst {
                (worst, at) = (rel, n);
            }
        }
        outcomes.push(Outcome::check("lattice_residual", worst < tol, worst, format!("at n = {at}")));
        let fixed = [-1e-3, -1.0, -5.0, -1e3]
            .iter()
            .all(|&x| map.eval(Point::real(x)).ok() == Some(Point::real(x)));
        outcomes.push(Outcome::check("negative_axis", fixed, fixed, "negative real axis moves"));
        let lambda = three_point_lambda(&seq, args.horizon).map_err(horizon_error)?.lambda_empirical;
        outcomes.push(Outcome::check(
            "log_three_point",
            lambda <= r.lambda_a + 1e-9,
            json!({ "lambda": lambda, "lambda_a": r.lambda_a }),
            "three-point constant of aₙ exceeds log(λ_b + 1) + 1",
        ));
    }
    let mut artifacts = vec![];
    write_handle(&args.out, &Handle::ExpLattice { map }, &mut artifacts)?;
    Ok(report("explattice", d, outcomes, artifacts, data))
}

pub fn eval(args: &EvalArgs) -> Result<RunReport, CliError> {
    let (bytes, h) = load_handle(&args.input)?;
    let (x, y) = args.at;
    let d = digest("eval", &bytes, &[x.to_string(), y.to_string()]);
    let w = h.eval(Point::new(x, y)).map_err(CliError::Input)?;
    let data = json!({ "kind": h.kind(), "at": [x, y], "value": [w.re, w.im] });
    Ok(report("eval", d, vec![Outcome::pass("eval", json!([w.re, w.im]))], vec![], data))
}

pub fn grid(args: &GridArgs) -> Result<RunReport, CliError> {
    let (bytes, h) = load_handle(&args.input)?;
    let g = args.grid;
    let spec = format!("{}:{}:{},{}:{}:{}", g.x_range.0, g.x_range.1, g.nx, g.y_range.0, g.y_range.1, g.ny);
    let d = digest("grid", &bytes, std::slice::from_ref(&spec));
    let f = |z| h.eval(z);
    let csv = grid::csv(&g, f).map_err(CliError::Input)?;
    let svg = grid::svg(&g, f).map_err(CliError::Input)?;
    let stem = args.out.display().to_string();
    let (csv_path, svg_path) = (format!("{stem}.csv"), format!("{stem}.svg"));
    write_text(Path::new(&csv_path), &csv)?;
    write_text(Path::new(&svg_path), &svg)?;
    let rows = csv.lines().count() - 1;
    let outcomes = vec![Outcome::check("rows", rows == g.nx * g.ny, rows, "row count differs from nx·ny")];
    let data = json!({ "kind": h.kind(), "grid": spec });
    Ok(report("grid", d, outcomes, vec![csv_path, svg_path], data))
}

/// Seed for randomized drivers, from `QCX_SEED` (default 0).
pub fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var("QCX_SEED") {
        Ok(s) => s.trim().parse().map_err(|e| CliError::Input(format!("QCX_SEED={s:?}: {e}"))),
        Err(_) => Ok(0),
    }
}

pub fn batch(args: &ReportArgs) -> Result<RunReport, CliError> {
    let seed = seed_from_env()?;
    check_delta(args.delta)?;
    let tol = check_tol(args.tol.unwrap_or(AUTO_TOL))?;
    if args.width < 1 {
        return Err(CliError::Input("--width must be positive".into()));
    }
    let d = digest(
        "report",
        &[],
        &[seed.to_string(), args.count.to_string(), args.width.to_string(), args.delta.to_string(), tol.to_string()],
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcomes = Vec::with_capacity(args.count);
    let mut worst_bound: f64 = 1.0;
    for i in 0..args.count {
        let w = rng.gen_range(1..=args.width);
        let lo = rng.gen_range(-5..=5);
        let mut values: Vec<i64> = (lo..lo + w).collect();
        values.shuffle(&mut rng);
        let seq = IntBijection::identity_tail(lo, values.clone()).expect("shuffled window");
        let name = format!("instance_{i}");
        let outcome = match extend_automorphism(&seq, args.delta) {
            Ok(f) => {
                let r = verify_extension(&f, &seq, VERIFY_WINDOW, args.delta, tol);
                worst_bound = worst_bound.max(r.dilatation_bound);
                let value = json!({
                    "lo": lo,
                    "values": values,
                    "integer_residual": r.integer_residual,
                    "round_trip": r.round_trip,
                    "dilatation_bound": r.dilatation_bound,
                });
                Outcome::check(&name, r.pass, value, format!("{r:?}"))
            }
            Err(e) => Outcome::fail(&name, json!({ "lo": lo, "values": values }), e.to_string()),
        };
        outcomes.push(outcome);
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let data = json!({ "seed": seed, "count": args.count, "passed": passed, "worst_bound": worst_bound });
    Ok(report("report", d, outcomes, vec![], data))
}
