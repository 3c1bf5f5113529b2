use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use oscsum_core::arith::rational_to_string;
use oscsum_core::csv::{fmt_f64, Cell, Table};
use oscsum_core::deltamethod::{dfi_delta, DeltaScheme};
use oscsum_core::exppair::{generate, optimize, Objective, Seed};
use oscsum_core::forms::{build_eigenform, load_or_build, write_table};
use oscsum_core::phase::{
    eval_h, h_critical_scale, i_star_check, nonstationary_decay_check, second_derivative_bound_check,
    stationary_leading_term, Amplitude, DecayParams, PhaseContext, PhaseFn,
};
use oscsum_core::suite::{render_csv, Suite, CRITERIA};
use oscsum_core::twist::{
    default_harness_grid, eval_twist_sum, gl5_partial_sum_check, l_value_rankin, theorem1_harness, LSchedule,
};
use oscsum_core::voronoi::{dual_cutoff, resonance_sum, voronoi_check, VoronoiInstance};
use oscsum_core::{make_window, FourierTable, PhaseSpec, SmoothWindow, TwistSpec};

use crate::{Cli, Command, Failure, Lemma, PhaseArg, WindowArg};

type Run = Result<(), Failure>;

pub fn run(cli: &Cli, out: &mut String) -> Run {
    match &cli.command {
        Command::Coeffs(a) => {
            config(cli, out, "coeffs", &[("weight", a.weight.to_string()), ("N", a.n.to_string())]);
            let table = table(cli, a.weight, a.n)?;
            let mut buf = Vec::new();
            write_table(&table, &mut buf)?;
            out.push_str(&String::from_utf8(buf).expect("ascii table"));
            Ok(())
        }
        Command::Twist(a) => {
            let phase = phase(a.phase, a.alpha)?;
            let w = window(a.window)?;
            config(
                cli,
                out,
                "twist",
                &[
                    ("weights", format!("{},{}", a.weights.0, a.weights.1)),
                    ("phase", phase.label()),
                    ("alpha", short(a.alpha)),
                    ("t", short(a.t)),
                    ("X", short(a.x)),
                    ("window", window_label(a.window)),
                ],
            );
            let spec = TwistSpec::new(phase, a.t, a.x, w)?;
            let (f, g) = pair(cli, a.weights.0, a.weights.1, span(&w, a.x))?;
            let s = eval_twist_sum(&f, &g, &spec)?;
            let mut t = Table::new(&["t", "X", "sum_re", "sum_im", "abs", "c_star", "in_regime", "sharpness_ok"]);
            t.push(&[
                Cell::F(a.t),
                Cell::F(a.x),
                Cell::F(s.re),
                Cell::F(s.im),
                Cell::F(s.norm()),
                Cell::F(s.norm() / (a.t.abs().powf(0.4) * a.x.powf(0.75))),
                Cell::S(bool_str(spec.in_regime)),
                Cell::S(bool_str(spec.sharpness_ok)),
            ]);
            out.push_str(&t.render());
            Ok(())
        }
        Command::Harness(a) => {
            let phase = phase(a.phase, a.alpha)?;
            let w = window(a.window)?;
            let grid = match &a.grid {
                Some(path) => read_grid(path)?,
                None => default_harness_grid(),
            };
            config(
                cli,
                out,
                "harness-thm1",
                &[
                    ("grid", a.grid.as_ref().map_or("builtin".into(), |p| p.display().to_string())),
                    ("weights", format!("{},{}", a.weights.0, a.weights.1)),
                    ("phase", phase.label()),
                    ("alpha", short(a.alpha)),
                    ("window", window_label(a.window)),
                ],
            );
            let top = grid.iter().map(|p| p.1).fold(1.0, f64::max);
            let (f, g) = pair(cli, a.weights.0, a.weights.1, span(&w, top))?;
            let r = theorem1_harness(&f, &g, phase, &grid, w)?;
            let mut t = Table::new(&["t", "X", "sum_re", "sum_im", "c_star", "c_star_log"]);
            for p in &r.points {
                t.push(&[Cell::F(p.t), Cell::F(p.x), Cell::F(p.sum.re), Cell::F(p.sum.im), Cell::F(p.c_star), Cell::F(p.c_star_log)]);
            }
            out.push_str(&t.render());
            for ((tt, x), e) in &r.skipped {
                writeln!(out, "# skipped t={} X={}: {e}", fmt_f64(*tt), fmt_f64(*x)).unwrap();
            }
            writeln!(out, "# max c_star {}", fmt_f64(r.max_c_star())).unwrap();
            Ok(())
        }
        Command::Gl5(a) => {
            if a.x_max < 1 || a.points == 0 {
                return Err(Failure::Usage("Xmax and points must be positive".into()));
            }
            let schedule = LSchedule::default();
            let len = match a.l1 {
                Some(_) => a.x_max as usize,
                None => (a.x_max as usize).max(schedule.required_len()),
            };
            config(
                cli,
                out,
                "gl5",
                &[
                    ("Xmax", a.x_max.to_string()),
                    ("points", a.points.to_string()),
                    ("l1", a.l1.map_or("estimated".into(), short)),
                    ("weights", format!("{},{}", a.weights.0, a.weights.1)),
                ],
            );
            let (f, g) = pair(cli, a.weights.0, a.weights.1, len)?;
            let l1 = match a.l1 {
                Some(v) => v,
                None => l_value_rankin(&f, &g, 1e-4)?.value,
            };
            let mut xs: Vec<f64> =
                (0..a.points).map(|k| (a.x_max as f64 / 4f64.powi(k as i32)).floor()).filter(|&x| x >= 1.0).collect();
            xs.reverse();
            xs.dedup();
            let r = gl5_partial_sum_check(&f, &g, &xs, l1)?;
            let mut t = Table::new(&["X", "partial_sum", "main", "error", "ratio", "sup_error", "sup_ratio"]);
            for row in &r.rows {
                t.push(&[
                    Cell::F(row.x),
                    Cell::F(row.partial_sum),
                    Cell::F(row.main),
                    Cell::F(row.error),
                    Cell::F(row.ratio),
                    Cell::F(row.sup_error),
                    Cell::F(row.sup_ratio),
                ]);
            }
            out.push_str(&t.render());
            writeln!(out, "# L(1) {} slope {} sup_slope {}", fmt_f64(l1), fmt_f64(r.slope), fmt_f64(r.sup_slope)).unwrap();
            Ok(())
        }
        Command::Lvalue(a) => {
            let schedule = LSchedule::default();
            config(
                cli,
                out,
                "lvalue",
                &[
                    ("weights", format!("{},{}", a.weights.0, a.weights.1)),
                    ("target", short(a.target)),
                    ("scales", join_floats(&schedule.scales)),
                    ("horizon", short(schedule.horizon)),
                ],
            );
            let (f, g) = pair(cli, a.weights.0, a.weights.1, schedule.required_len())?;
            let r = l_value_rankin(&f, &g, a.target)?;
            let mut t = Table::new(&["estimator", "T", "value"]);
            for (label, rows) in [("exponential", &r.exponential), ("gaussian", &r.gaussian)] {
                for &(tt, v) in rows {
                    t.push(&[Cell::S(label), Cell::F(tt), Cell::F(v)]);
                }
            }
            t.push(&[Cell::S("richardson"), Cell::F(*schedule.scales.last().unwrap()), Cell::F(r.value)]);
            out.push_str(&t.render());
            writeln!(out, "# stability {} agreement {}", fmt_f64(r.stability), fmt_f64(r.agreement)).unwrap();
            if r.agreement > a.target {
                return Err(Failure::Check(format!(
                    "twist.l_value_rankin: expected mollifier agreement <= {}, got {}",
                    short(a.target),
                    short(r.agreement)
                )));
            }
            Ok(())
        }
        Command::VoronoiCheck(a) => {
            let h = window(a.window)?;
            config(
                cli,
                out,
                "voronoi-check",
                &[
                    ("weight", a.weight.to_string()),
                    ("q", a.q.to_string()),
                    ("a", a.a.to_string()),
                    ("X", short(a.x)),
                    ("window", window_label(a.window)),
                    ("tol", short(a.tol)),
                ],
            );
            if a.q == 0 || !(a.x > 0.0) {
                return Err(Failure::Usage("q and X must be positive".into()));
            }
            let dual = (dual_cutoff(&h) * (a.q as f64).powi(2) / a.x).ceil() as usize;
            let form = table(cli, a.weight, span(&h, a.x).max(dual) + 1)?;
            let a_mod = a.a.rem_euclid(a.q as i64);
            let r = voronoi_check(&VoronoiInstance { form: &form, q: a.q, a: a_mod, x: a.x, h }, None)?;
            let mut t = Table::new(&["lhs_re", "lhs_im", "rhs_re", "rhs_im", "defect"]);
            t.push(&[Cell::F(r.lhs.re), Cell::F(r.lhs.im), Cell::F(r.rhs.re), Cell::F(r.rhs.im), Cell::F(r.defect)]);
            out.push_str(&t.render());
            if r.defect > a.tol {
                return Err(Failure::Check(format!(
                    "voronoi.voronoi_check: expected defect <= {}, got {}",
                    short(a.tol),
                    short(r.defect)
                )));
            }
            Ok(())
        }
        Command::Resonance(a) => {
            let v = window(a.window)?;
            config(
                cli,
                out,
                "resonance",
                &[
                    ("weight", a.weight.to_string()),
                    ("q", a.q.to_string()),
                    ("X", short(a.x)),
                    ("window", window_label(a.window)),
                ],
            );
            let len = span(&v, a.x).max((3.0 * a.x).ceil() as usize).max(a.q as usize);
            let form = table(cli, a.weight, len)?;
            let r = resonance_sum(&form, a.q, a.x, &v)?;
            let mut t = Table::new(&["X", "sum_re", "sum_im", "main_re", "main_im", "residual"]);
            t.push(&[
                Cell::F(a.x),
                Cell::F(r.sum.re),
                Cell::F(r.sum.im),
                Cell::F(r.main_term.re),
                Cell::F(r.main_term.im),
                Cell::F(r.residual),
            ]);
            out.push_str(&t.render());
            Ok(())
        }
        Command::DeltaCheck(a) => {
            config(cli, out, "delta-check", &[("Q", short(a.big_q)), ("nmax", a.nmax.to_string()), ("tol", short(a.tol))]);
            let scheme = DeltaScheme::new(a.big_q)?;
            let mut t = Table::new(&["n", "value", "defect"]);
            let mut worst: Option<(i64, f64)> = None;
            let n = a.nmax as i64;
            for k in -n..=n {
                let v = dfi_delta(k, &scheme)?;
                let defect = (v - if k == 0 { 1.0 } else { 0.0 }).abs();
                if worst.map_or(true, |w| defect > w.1) {
                    worst = Some((k, defect));
                }
                t.push(&[Cell::I(k), Cell::F(v), Cell::F(defect)]);
            }
            out.push_str(&t.render());
            match worst {
                Some((k, d)) if d > a.tol => Err(Failure::Check(format!(
                    "deltamethod.dfi_delta: expected defect <= {} at n={k}, got {}",
                    short(a.tol),
                    short(d)
                ))),
                _ => Ok(()),
            }
        }
        Command::PhaseCheck(a) => phase_check(cli, out, a.lemma, a.grid.as_deref()),
        Command::Exppair(a) => {
            config(cli, out, "exppair", &[("objective", a.objective.clone()), ("depth", a.depth.to_string())]);
            let obj = Objective::parse(&a.objective)?;
            let pairs = generate(a.depth, &[Seed::Trivial, Seed::Bourgain])?;
            let best = optimize(&obj, &pairs)?;
            let mut t = Table::new(&["p", "q", "derivation", "value"]);
            for p in &pairs {
                let v = obj.eval(&p.p, &p.q)?;
                t.push(&[
                    Cell::S(&rational_to_string(&p.p)),
                    Cell::S(&rational_to_string(&p.q)),
                    Cell::S(&p.derivation()),
                    Cell::S(&rational_to_string(&v)),
                ]);
            }
            out.push_str(&t.render());
            writeln!(out, "# minimum {} at {} = {}", rational_to_string(&best.value), best.pair, best.pair.derivation()).unwrap();
            writeln!(out, "# seed exponents carry an implicit +epsilon").unwrap();
            Ok(())
        }
        Command::VerifyAll(a) => {
            let ids: Vec<u8> = match &a.criteria {
                Some(list) => list
                    .split(',')
                    .map(|s| match s.trim().parse::<u8>() {
                        Ok(id) if (1..=13).contains(&id) => Ok(id),
                        _ => Err(Failure::Usage(format!("no criterion {s:?}; expected 1 to 13"))),
                    })
                    .collect::<Result<_, _>>()?,
                None => (1..=13).collect(),
            };
            config(
                cli,
                out,
                "verify-all",
                &[
                    ("level", format!("{:?}", a.level).to_lowercase()),
                    ("criteria", ids.iter().map(u8::to_string).collect::<Vec<_>>().join(",")),
                    ("inject_fault", a.inject_fault.map_or("none".into(), |n| n.to_string())),
                ],
            );
            let mut suite = Suite::new(a.level);
            if let Some(dir) = &cli.cache_dir {
                suite = suite.with_cache_dir(dir);
            }
            if let Some(n) = a.inject_fault {
                suite = suite.with_fault(n);
            }
            let mut outcomes = Vec::new();
            let mut first: Option<String> = None;
            for id in ids {
                let (_, title, module, operation) = CRITERIA[id as usize - 1];
                let start = std::time::Instant::now();
                let o = match suite.run(id) {
                    Ok(o) => o,
                    Err(e) => {
                        eprintln!("criterion {id:>2} FAIL {module}.{operation}: {e}");
                        first.get_or_insert(format!("criterion {id} {module}.{operation}: {e}"));
                        continue;
                    }
                };
                let secs = start.elapsed().as_secs_f64();
                let verdict = if o.passed() { "pass" } else { "FAIL" };
                eprintln!("criterion {id:>2} {verdict} {module}.{operation} ({title}): {} [{secs:.1} s]", o.summary());
                if let Some(f) = o.first_failure() {
                    first.get_or_insert(format!("criterion {id} {module}.{operation}: {f}"));
                }
                outcomes.push(o);
            }
            out.push_str(&render_csv(&outcomes));
            match first {
                Some(m) => Err(Failure::Check(m)),
                None => Ok(()),
            }
        }
    }
}

fn phase_check(cli: &Cli, out: &mut String, lemma: Lemma, grid: Option<&str>) -> Run {
    let (name, default): (&str, &[f64]) = match lemma {
        Lemma::Nonstationary => ("nonstationary", &[1e1, 1e2, 1e3, 1e4]),
        Lemma::Stationary => ("stationary", &[1e3, 1e4, 1e5]),
        Lemma::SecondDerivative => ("second-derivative", &[1e2, 1e3, 1e4, 1e5]),
        Lemma::Transform => ("transform", &[1e3, 1e4]),
        Lemma::HBound => ("h-bound", &[1.0, 4.0, 16.0, 64.0]),
    };
    let values = match grid {
        Some(g) => crate::parse_floats(g).map_err(Failure::Usage)?,
        None => default.to_vec(),
    };
    config(cli, out, "phase-check", &[("lemma", name.into()), ("grid", join_floats(&values))]);
    let mut t = Table::new(&["lemma", "param", "measured_re", "measured_im", "predicted_re", "predicted_im", "defect", "bound", "pass"]);
    let mut first: Option<String> = None;
    let mut row = |param: f64, measured: Complex64, predicted: Complex64, defect: f64, bound: f64| {
        let pass = defect <= bound;
        if !pass && first.is_none() {
            first = Some(format!(
                "phase.{name}: expected defect <= {} at {}, got {}",
                short(bound),
                short(param),
                short(defect)
            ));
        }
        t.push(&[
            Cell::S(name),
            Cell::F(param),
            Cell::F(measured.re),
            Cell::F(measured.im),
            Cell::F(predicted.re),
            Cell::F(predicted.im),
            Cell::F(defect),
            Cell::F(bound),
            Cell::S(bool_str(pass)),
        ]);
    };
    let zero = Complex64::new(0.0, 0.0);
    let w: Amplitude = make_window(1.0, 2.0, 4.0)?.into();
    for &p in &values {
        if !(p > 0.0) {
            return Err(Failure::Usage(format!("grid values must be positive, got {p}")));
        }
        match lemma {
            Lemma::Nonstationary => {
                // |ϱ′| = R on [1, 2]; bound with implied constant 1 at A = 3
                let params = DecayParams { q: 1.0, u: 0.25, y: 1.0, z: 1.0, r: p };
                let r = nonstationary_decay_check(&w, &PhaseFn::polynomial(0.0, &[0.0, p]), params, 3)?;
                row(p, r.integral, zero, r.integral.norm(), r.scale);
            }
            Lemma::Stationary => {
                let r = stationary_leading_term(&w, &PhaseFn::polynomial(1.5, &[0.0, 0.0, p, p]), (1.0, 2.0))?;
                row(p, r.quadrature, r.leading, r.ratio_defect, 10.0 / p);
            }
            Lemma::SecondDerivative => {
                let centered: Amplitude = make_window(-1.0, 1.0, 4.0)?.into();
                let r = second_derivative_bound_check(&centered, &PhaseFn::polynomial(0.0, &[0.0, 0.0, p / 2.0]), p)?;
                row(p, r.integral, zero, r.integral.norm(), r.bound);
            }
            Lemma::Transform => {
                let ctx = PhaseContext::around_stationary_point(PhaseSpec::log(1.0)?, p, 0.05, 1.2)?;
                let r = i_star_check(&ctx, 1e-12)?;
                row(p, r.quadrature, r.predicted, r.defect, 20.0 * p.powf(-1.5));
            }
            Lemma::HBound => {
                let t = 1e4;
                let mut ctx = PhaseContext::around_stationary_point(PhaseSpec::log(1.0)?, t, 0.05, 1.2)?;
                ctx.n2 = ctx.n + 150.0;
                let bound = if p < 3.0 * h_critical_scale(&ctx) { 1.0 / (t * p.sqrt()) } else { 1e-8 };
                let h = eval_h(p, &ctx, 1e-12)?;
                row(p, h, zero, h.norm(), bound);
            }
        }
    }
    out.push_str(&t.render());
    match first {
        Some(m) => Err(Failure::Check(m)),
        None => Ok(()),
    }
}

/// Shortest decimal that parses back to `x`.
fn short(x: f64) -> String {
    format!("{x:?}")
}

fn config(cli: &Cli, out: &mut String, subcommand: &str, pairs: &[(&str, String)]) {
    write!(out, "# config: subcommand={subcommand}").unwrap();
    for (k, v) in pairs {
        write!(out, " {k}={v}").unwrap();
    }
    let cache = cli.cache_dir.as_ref().map_or("none".into(), |p| p.display().to_string());
    let output = cli.output.as_ref().map_or("-".into(), |p| p.display().to_string());
    writeln!(out, " threads={} cache_dir={cache} output={output}", rayon::current_num_threads()).unwrap();
}

fn phase(arg: PhaseArg, alpha: f64) -> Result<PhaseSpec, Failure> {
    Ok(match arg {
        PhaseArg::Log => PhaseSpec::log(alpha)?,
        PhaseArg::Pow(beta) => PhaseSpec::power(alpha, beta)?,
    })
}

fn window(w: WindowArg) -> Result<SmoothWindow, Failure> {
    Ok(make_window(w.0, w.1, w.2)?)
}

fn window_label(w: WindowArg) -> String {
    join_floats(&[w.0, w.1, w.2])
}

fn join_floats(v: &[f64]) -> String {
    v.iter().map(|x| short(*x)).collect::<Vec<_>>().join(";")
}

fn bool_str(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Largest index a window of this support touches at scale `x`.
fn span(w: &SmoothWindow, x: f64) -> usize {
    (w.support().1 * x).floor().max(1.0) as usize
}

fn table(cli: &Cli, weight: u32, n: usize) -> Result<FourierTable, Failure> {
    log::info!("coefficient table weight={weight} N={n}");
    Ok(match &cli.cache_dir {
        Some(dir) => load_or_build(dir, weight, n)?,
        None => build_eigenform(weight, n)?,
    })
}

fn pair(cli: &Cli, k: u32, kappa: u32, n: usize) -> Result<(FourierTable, FourierTable), Failure> {
    Ok((table(cli, k, n)?, table(cli, kappa, n)?))
}

fn read_grid(path: &Path) -> Result<Vec<(f64, f64)>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("grid file {}: {e}", path.display())))?;
    let mut grid = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match crate::parse_floats(line).as_deref() {
            Ok([t, x]) => grid.push((*t, *x)),
            _ => return Err(Failure::Usage(format!("grid line {}: expected t,X, got {line:?}", i + 1))),
        }
    }
    Ok(grid)
}
