//! One runner per subcommand; each returns a [`Report`] and optional CSV.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use nonarch_core::arith::{is_prime, pow_big, val_rat};
use nonarch_core::combinatorics::{alpha_bound, DetSetup};
use nonarch_core::detmethod::cover_points;
use nonarch_core::ffcount::{
    count_expanded, estimate_delta, expand_scheme, verify_bounds, CountRecord, VarietySpec, MU_CAP,
};
use nonarch_core::heights::{points_k, CandidateGrid};
use nonarch_core::hilbert::{groebner, leading_term, salberger_check, select_delta_alpha, HilbertTable};
use nonarch_core::taylor::{cr_norm, describe, recheck_witness, Strategy, Verdict};

use crate::cli::{
    parse_list, BoundsArgs, Cli, Command, CountFfArgs, DetCoverArgs, ExpandArgs, Expect, HeightMode, HeightsArgs,
    HilbertArgs, StrategyKind, TaylorArgs,
};
use crate::error::{LabError, LabResult};
use crate::format::{
    self, load_json, point, qpoly_to_dto, rat, valuation, zpoly_to_dto, BallDto, DetCoverDto, IdealDto, PolyMapDto,
    SemialgDto, VarietyDto,
};
use crate::parallel;
use crate::report::{check, Check, Report, RunConfig};

/// A finished run: the report and, when the subcommand has one, a CSV table.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub csv: Option<String>,
}

/// Runs one subcommand in the current rayon pool; input paths resolve against `base`.
pub fn dispatch(cli: &Cli, base: &Path) -> LabResult<Outcome> {
    let mut config = RunConfig {
        seed: cli.seed,
        csv: cli.csv.as_ref().map(|p| p.display().to_string()),
        ..RunConfig::default()
    };
    match &cli.command {
        Command::Bounds(a) => bounds(a, config),
        Command::Heights(a) => {
            config.input = Some(a.input.display().to_string());
            heights(a, base, config)
        }
        Command::TaylorCheck(a) => {
            config.input = Some(a.input.display().to_string());
            taylor_check(a, cli.seed, base, config)
        }
        Command::DetCover(a) => {
            config.input = Some(a.input.display().to_string());
            det_cover(a, base, config)
        }
        Command::CountFf(a) => {
            config.input = Some(a.input.display().to_string());
            count_ff(a, base, config)
        }
        Command::ExpandScheme(a) => {
            config.input = Some(a.input.display().to_string());
            expand(a, base, config)
        }
        Command::Hilbert(a) => {
            config.input = Some(a.input.display().to_string());
            hilbert(a, base, config)
        }
        Command::Corpus(_) => Err(LabError::config("corpus cases cannot run the corpus subcommand")),
    }
}

fn require_prime(p: u64, what: &str) -> LabResult<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(LabError::config(format!("{what} = {p} is not prime")))
    }
}

fn positive(v: u64, what: &str) -> LabResult<()> {
    if v == 0 {
        Err(LabError::config(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

fn csv_table(header: &[String], rows: &[Vec<String>]) -> LabResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| LabError::config(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

fn strings<const N: usize>(names: [&str; N]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn setup_json(s: &DetSetup) -> Value {
    json!({"m": s.m, "n": s.n, "d": s.d, "mu": s.mu, "r": s.r, "e": s.e, "V": s.v, "epsilon": rat(&s.epsilon)})
}

fn bounds(a: &BoundsArgs, mut config: RunConfig) -> LabResult<Outcome> {
    require_prime(a.p, "p")?;
    positive(a.t, "T")?;
    config.subcommand = "bounds".into();
    config.prime = Some(a.p);
    config.height = Some(a.t);
    config.degree = Some(a.d);
    config.options = BTreeMap::from([("m".into(), json!(a.m)), ("n".into(), json!(a.n))]);
    let setup = DetSetup::new(a.m, a.n, a.d)?;
    let alpha = alpha_bound(&setup, a.t, a.p);
    let rhs = setup.rho_rhs(a.t);
    let lhs = pow_big(a.p, alpha * setup.e as u32);
    let below = alpha.checked_sub(1).map(|b| pow_big(a.p, b * setup.e as u32));
    let mut result = setup_json(&setup);
    let obj = result.as_object_mut().expect("object");
    obj.insert("T".into(), json!(a.t));
    obj.insert("p".into(), json!(a.p));
    obj.insert("alpha".into(), json!(alpha));
    obj.insert("mu_factorial_T_pow_V".into(), json!(rhs.to_string()));
    obj.insert("p_pow_alpha_e".into(), json!(lhs.to_string()));
    let checks = vec![
        check("p^(alpha e) > mu! T^V", lhs > rhs),
        check("alpha is least", below.map_or(true, |b| b <= rhs)),
    ];
    let header = strings(["m", "n", "d", "mu", "r", "e", "V", "epsilon", "T", "p", "alpha"]);
    let row = vec![
        a.m.to_string(),
        a.n.to_string(),
        a.d.to_string(),
        setup.mu.to_string(),
        setup.r.to_string(),
        setup.e.to_string(),
        setup.v.to_string(),
        rat(&setup.epsilon),
        a.t.to_string(),
        a.p.to_string(),
        alpha.to_string(),
    ];
    Ok(Outcome { report: Report::new(config, None, result, checks), csv: Some(csv_table(&header, &[row])?) })
}

fn heights(a: &HeightsArgs, base: &Path, mut config: RunConfig) -> LabResult<Outcome> {
    positive(a.t, "T")?;
    positive(a.k as u64, "k")?;
    let (dto, raw): (SemialgDto, Value) = load_json(base, &a.input)?;
    let spec = dto.build()?;
    config.subcommand = "heights".into();
    config.height = Some(a.t);
    config.prime = spec.prime;
    config.caps.insert("candidates".into(), a.cap);
    let mode = match a.mode {
        HeightMode::Q => "q",
        HeightMode::Z => "z",
        HeightMode::K => "k",
    };
    config.options.insert("mode".into(), json!(mode));
    if a.mode == HeightMode::K {
        config.options.insert("k".into(), json!(a.k));
    }
    let points = match a.mode {
        HeightMode::Q => parallel::filter_grid(&spec, &CandidateGrid::rational(spec.nvars, a.t, a.cap)?),
        HeightMode::Z => parallel::filter_grid(&spec, &CandidateGrid::integer(spec.nvars, a.t, a.cap)?),
        HeightMode::K => points_k(&spec, a.t, a.k, a.cap)?,
    };
    let result = json!({
        "count": points.len(),
        "points": points.iter().map(|x| point(x)).collect::<Vec<_>>(),
    });
    let header: Vec<String> = (0..spec.nvars).map(|i| format!("x{i}")).collect();
    let rows: Vec<Vec<String>> = points.iter().map(|x| x.iter().map(rat).collect()).collect();
    Ok(Outcome { report: Report::new(config, Some(raw), result, Vec::new()), csv: Some(csv_table(&header, &rows)?) })
}

fn taylor_check(a: &TaylorArgs, seed: u64, base: &Path, mut config: RunConfig) -> LabResult<Outcome> {
    positive(a.r as u64, "r")?;
    let (dto, raw): (PolyMapDto, Value) = load_json(base, &a.input)?;
    let map = dto.build()?;
    config.subcommand = "taylor-check".into();
    config.prime = Some(map.prime);
    config.r = vec![a.r];
    config.caps.insert("pairs".into(), a.cap);
    let strategy = match a.strategy {
        StrategyKind::Residual => Strategy::Residual,
        StrategyKind::Exhaustive => Strategy::Exhaustive { digits: a.digits },
        StrategyKind::Sampled => Strategy::Sampled { seed, samples: a.samples, digits: a.digits },
    };
    let strategy_json = match &strategy {
        Strategy::Residual => json!({"kind": "residual"}),
        Strategy::Exhaustive { digits } => json!({"kind": "exhaustive", "digits": digits}),
        Strategy::Sampled { seed, samples, digits } => {
            json!({"kind": "sampled", "seed": seed, "samples": samples, "digits": digits})
        }
    };
    config.options.insert("strategy".into(), strategy_json.clone());
    if let Some(e) = a.expect {
        config.options.insert("expect".into(), json!(if e == Expect::Holds { "holds" } else { "fails" }));
    }
    let cert = parallel::check_tr(&map, a.r, strategy, a.cap)?;
    let mut checks = Vec::new();
    let (verdict, witness) = match &cert.verdict {
        Verdict::Holds => ("holds", Value::Null),
        Verdict::Fails(w) => {
            checks.push(check("witness re-verified", recheck_witness(&map, a.r, w)));
            ("fails", format::witness(w))
        }
    };
    if let Some(e) = a.expect {
        let want = e == Expect::Holds;
        checks.push(check(format!("T_{} {}", a.r, if want { "holds" } else { "fails" }), cert.holds() == want));
    }
    let result = json!({
        "subject": serde_json::to_value(PolyMapDto::of(&map)).expect("dto"),
        "order": a.r,
        "strategy": strategy_json,
        "verdict": verdict,
        "witness": witness,
        "summary": describe(&cert.verdict),
        "cr_norm_valuation": valuation(cr_norm(&map, a.r, &map.domain)),
        "up_to_tail": cert.up_to_tail,
    });
    Ok(Outcome { report: Report::new(config, Some(raw), result, checks), csv: None })
}

fn det_cover(a: &DetCoverArgs, base: &Path, mut config: RunConfig) -> LabResult<Outcome> {
    let (dto, raw): (DetCoverDto, Value) = load_json(base, &a.input)?;
    require_prime(dto.p, "p")?;
    positive(dto.t, "T")?;
    positive(dto.d as u64, "d")?;
    let spec = dto.curve.build()?;
    let psi = dto.psi.iter().map(PolyMapDto::build).collect::<LabResult<Vec<_>>>()?;
    config.subcommand = "det-cover".into();
    config.prime = Some(dto.p);
    config.precision = dto.precision;
    config.height = Some(dto.t);
    config.degree = Some(dto.d);
    config.caps.insert("candidates".into(), a.cap);
    let cover = cover_points(&spec, &psi, dto.t, dto.d, dto.p, a.cap)?;
    let mut rows = Vec::new();
    let mut balls = Vec::new();
    for (id, b) in cover.balls.iter().enumerate() {
        let (poly, beta, beta_coeff, beta_val, deg) = match &b.poly {
            Some(f) => (
                json!(qpoly_to_dto(&f.poly)),
                json!(f.beta.0),
                json!(rat(&f.beta_coeff)),
                valuation(val_rat(dto.p, &f.beta_coeff)),
                f.poly.degree().map_or(String::new(), |d| d.to_string()),
            ),
            None => (Value::Null, Value::Null, Value::Null, Value::Null, String::new()),
        };
        rows.push(vec![
            id.to_string(),
            b.points.len().to_string(),
            deg,
            match &beta_val {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                v => v.to_string(),
            },
        ]);
        balls.push(json!({
            "id": id,
            "ball": serde_json::to_value(BallDto::of(&b.ball)).expect("dto"),
            "points": b.points.iter().map(|x| point(x)).collect::<Vec<_>>(),
            "params": b.params.iter().map(|(u, k)| json!({"u": rat(u), "map": k})).collect::<Vec<_>>(),
            "poly": poly,
            "beta": beta,
            "beta_coeff": beta_coeff,
            "beta_valuation": beta_val,
        }));
    }
    let carried: usize = cover.balls.iter().map(|b| b.points.len()).sum();
    let vanish = cover.balls.iter().all(|b| b.poly.as_ref().is_some_and(|f| f.vanishes_at(&b.points)));
    let checks = vec![
        check("every point lies in a ball", carried == cover.total_points),
        check("auxiliary polynomials vanish on their points", vanish),
        check("cover size <= p^alpha", BigInt::from(cover.balls.len()) <= BigInt::from(cover.bound.clone())),
    ];
    let result = json!({
        "setup": setup_json(&cover.setup),
        "alpha": cover.alpha,
        "bound": cover.bound.to_string(),
        "total_points": cover.total_points,
        "cover_size": cover.balls.len(),
        "balls": balls,
    });
    let header = strings(["ball", "points", "poly_degree", "beta_coeff_valuation"]);
    Ok(Outcome { report: Report::new(config, Some(raw), result, checks), csv: Some(csv_table(&header, &rows)?) })
}

fn load_variety(input: &Path, base: &Path) -> LabResult<(VarietySpec, Value)> {
    let (dto, raw): (VarietyDto, Value) = load_json(base, input)?;
    Ok((dto.build()?, raw))
}

fn count_ff(a: &CountFfArgs, base: &Path, mut config: RunConfig) -> LabResult<Outcome> {
    let qs = parse_list(&a.q)?;
    let rs: Vec<u32> = parse_list(&a.r)?
        .into_iter()
        .map(|r| u32::try_from(r).map_err(|_| LabError::config("r is too large")))
        .collect::<LabResult<_>>()?;
    for q in &qs {
        require_prime(*q, "q")?;
    }
    for r in &rs {
        positive(*r as u64, "r")?;
    }
    let (x, raw) = load_variety(&a.input, base)?;
    config.subcommand = "count-ff".into();
    config.q = qs.clone();
    config.r = rs.clone();
    config.caps.insert("points".into(), a.cap);
    config.options.insert("slack".into(), json!(a.slack));
    if let Some(m) = a.max_delta {
        config.options.insert("max_delta".into(), json!(m));
    }
    let mut records = Vec::new();
    for r in &rs {
        for q in &qs {
            let count = parallel::count_xr(&x, *q, *r, a.cap)?;
            records.push(CountRecord { q: *q, r: *r, count });
        }
    }
    let mut fits = Vec::new();
    let mut checks = Vec::new();
    for r in &rs {
        let recs: Vec<CountRecord> = records.iter().filter(|c| c.r == *r).cloned().collect();
        if qs.len() < 2 || recs.iter().all(|c| c.count == 0) {
            fits.push(json!({"r": r, "fit": Value::Null}));
            continue;
        }
        let max_delta = a.max_delta.unwrap_or(r * x.n as u32);
        let fit = estimate_delta(&recs, max_delta, MU_CAP)?;
        let b = verify_bounds(&fit, &recs, &x);
        let slack_ok = fit.slack_at_most(a.slack);
        checks.push(check(format!("r={r}: delta <= rm"), b.trivial_ok));
        if let (Some(bound), Some(ok)) = (b.curve_bound, b.curve_ok) {
            checks.push(check(format!("r={r}: delta <= r(m-1) + ceil(r/d) = {bound}"), ok));
        }
        checks.push(check(format!("r={r}: slack C <= {}", a.slack), slack_ok));
        fits.push(json!({
            "r": r,
            "fit": {
                "delta": fit.delta,
                "mu": fit.mu,
                "slack_squared": rat(&fit.slack_squared),
                "trivial_bound": b.trivial_bound,
                "curve_bound": b.curve_bound,
                "cohen_ratio_squared": b.cohen_ratio_squared.iter()
                    .map(|(q, v)| json!({"q": q, "value": rat(v)})).collect::<Vec<_>>(),
            },
        }));
    }
    let result = json!({
        "variety": x.name,
        "records": records.iter().map(|c| json!({"q": c.q, "r": c.r, "count": c.count})).collect::<Vec<_>>(),
        "fits": fits,
    });
    let header = strings(["q", "r", "count"]);
    let rows: Vec<Vec<String>> =
        records.iter().map(|c| vec![c.q.to_string(), c.r.to_string(), c.count.to_string()]).collect();
    Ok(Outcome { report: Report::new(config, Some(raw), result, checks), csv: Some(csv_table(&header, &rows)?) })
}

fn expand(a: &ExpandArgs, base: &Path, mut config: RunConfig) -> LabResult<Outcome> {
    require_prime(a.q, "q")?;
    positive(a.r as u64, "r")?;
    let (x, raw) = load_variety(&a.input, base)?;
    config.subcommand = "expand-scheme".into();
    config.q = vec![a.q];
    config.r = vec![a.r];
    if a.count {
        config.caps.insert("points".into(), a.cap);
        config.options.insert("count".into(), json!(true));
    }
    let system = expand_scheme(&x, a.q, a.r)?;
    let mut result = json!({
        "q": system.q,
        "r": system.r,
        "n": system.n,
        "variables": (0..system.nvars()).map(|k| system.var_name(k)).collect::<Vec<_>>(),
        "equations": system.equations.iter().map(|e| json!({
            "source": e.source,
            "t_power": e.t_power,
            "poly": zpoly_to_dto(&e.poly),
        })).collect::<Vec<_>>(),
    });
    let mut checks = Vec::new();
    if a.count {
        let expanded = count_expanded(&system, a.cap)?;
        let direct = parallel::count_xr(&x, a.q, a.r, a.cap)?;
        let obj = result.as_object_mut().expect("object");
        obj.insert("count_expanded".into(), json!(expanded));
        obj.insert("count_direct".into(), json!(direct));
        checks.push(check("expanded count equals direct count", expanded == direct));
    }
    Ok(Outcome { report: Report::new(config, Some(raw), result, checks), csv: None })
}

fn hilbert(a: &HilbertArgs, base: &Path, mut config: RunConfig) -> LabResult<Outcome> {
    let (dto, raw): (IdealDto, Value) = load_json(base, &a.input)?;
    let ideal = dto.build()?;
    config.subcommand = "hilbert".into();
    config.caps.insert("s_pairs".into(), a.budget);
    config.caps.insert("degree".into(), a.degree_cap as u64);
    config.options.insert("smax".into(), json!(a.smax));
    if let Some(sel) = &a.select {
        let (d, r) = (sel[0], sel[1]);
        positive(d as u64, "d")?;
        positive(r as u64, "r")?;
        config.degree = Some(d);
        config.r = vec![r];
        config.caps.insert("delta_scan".into(), a.scan_cap as u64);
    }
    if let Some(m) = a.m {
        config.options.insert("m".into(), json!(m));
    }
    let basis = groebner(&ideal, a.budget, a.degree_cap)?;
    let mut table = HilbertTable::from_monomials(
        ideal.nvars,
        basis.iter().map(|g| leading_term(g).expect("basis elements are nonzero").0.clone()).collect(),
    );
    table.tabulate(a.smax);
    let mut checks: Vec<Check> = Vec::new();
    let mut rows_json = Vec::new();
    let mut csv_rows = Vec::new();
    let mut identity = true;
    for row in table.rows.values() {
        let total: u64 = row.sigma.iter().sum();
        identity &= total == row.s as u64 * row.h;
        let ratios = table.a_estimates(row.s).ok();
        let mut line = vec![row.s.to_string(), row.h.to_string()];
        line.extend(row.sigma.iter().map(u64::to_string));
        match &ratios {
            Some(rs) => line.extend(rs.iter().map(rat)),
            None => line.extend(std::iter::repeat(String::new()).take(ideal.nvars)),
        }
        csv_rows.push(line);
        rows_json.push(json!({
            "s": row.s,
            "H": row.h,
            "sigma": row.sigma,
            "ratios": ratios.map(|rs| rs.iter().map(rat).collect::<Vec<_>>()),
        }));
    }
    checks.push(check("s H(s) = sum of sigma_i(s)", identity));
    let mut result = json!({
        "nvars": ideal.nvars,
        "basis": basis.iter().map(qpoly_to_dto).collect::<Vec<_>>(),
        "leading": table.leading.iter().map(|m| m.0.clone()).collect::<Vec<_>>(),
        "rows": rows_json,
    });
    let obj = result.as_object_mut().expect("object");
    let half = a.smax / 2;
    if half >= 1 {
        if let Ok(ex) = table.a_extrapolated(half) {
            obj.insert("extrapolated".into(), json!({"s": half, "a": ex.iter().map(rat).collect::<Vec<_>>()}));
        }
    }
    if let Some(m) = a.m {
        let mut reports = Vec::new();
        for s in 1..=a.smax {
            if table.hilbert_function(s) == 0 {
                continue;
            }
            let rep = salberger_check(&table, s, m, None)?;
            checks.push(check(format!("s={s}: sigma ratio <= m/(m+1) + 2/s"), rep.holds));
            reports.push(json!({"s": s, "ratio": rat(&rep.ratio), "bound": rat(&rep.bound), "holds": rep.holds}));
        }
        obj.insert("salberger".into(), json!(reports));
    }
    if let Some(sel) = &a.select {
        let (d, r) = (sel[0], sel[1]);
        let da = select_delta_alpha(&table, d, r, a.scan_cap)?;
        let ok = da.verify(&table, d, r);
        checks.push(check(format!("(delta, alpha) re-verified for d={d}, r={r}"), ok));
        obj.insert(
            "select".into(),
            json!({
                "d": d, "r": r, "delta": da.delta, "alpha": da.alpha, "mu": da.mu, "e": da.e,
                "ratio": rat(&da.ratio), "alpha_cap": r.div_ceil(d),
            }),
        );
    }
    let mut header = strings(["s", "H"]);
    header.extend((0..ideal.nvars).map(|i| format!("sigma_{i}")));
    header.extend((0..ideal.nvars).map(|i| format!("ratio_{i}")));
    Ok(Outcome { report: Report::new(config, Some(raw), result, checks), csv: Some(csv_table(&header, &csv_rows)?) })
}
