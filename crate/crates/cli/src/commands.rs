use asuper_core::emit::{format_g, Emit};
use asuper_core::fock::verify::{verify_suites, SuiteSelection};
use asuper_core::sampler::{sample_raw, write_samples_csv};
use asuper_core::scalar::{parse_f64_list, parse_rational};
use asuper_core::special::{
    degenerate_averages, degenerate_gpf, equidistant_averages, equidistant_gpf, figure_data,
    DegenerateParams, DegenerateRoute, EquidistantParams, EquidistantRoute, Grid,
};
use asuper_core::thermo::{thermo_report, Route, ThermoParams, ThermoReport};
use asuper_core::{FockSpec, Method, SamplerConfig};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::args::{Cli, Command, ThermoArgs};
use crate::output::{emit, usage, Artifact, CliError, Outcome};

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let artifact = match &cli.command {
        Command::Verify { p, n, suite } => verify(*p, *n, suite)?,
        Command::Dims { p, n } => dims(*p, *n)?,
        Command::Gpf(a) | Command::Averages(a) => {
            let full = matches!(cli.command, Command::Averages(_));
            if cli.exact {
                thermo::<BigRational>(a, full)?
            } else {
                thermo::<f64>(a, full)?
            }
        }
        Command::Figure { id, grid, out } => {
            let grid = grid
                .as_deref()
                .map(|g| g.parse::<Grid>().map_err(|e| usage(format!("--grid: {e}"))))
                .transpose()?;
            let series = figure_data(*id, grid).map_err(|e| usage(format!("--id: {e}")))?;
            let (csv, json_path) = series
                .write(out)
                .map_err(|e| usage(format!("--out {}: {e}", out.display())))?;
            let rows = series.abscissa.len();
            Artifact {
                json: json!({
                    "figure": id,
                    "csv": csv.display().to_string(),
                    "json": json_path.display().to_string(),
                    "rows": rows,
                    "columns": series.header(),
                }),
                csv_header: vec!["figure".into(), "csv".into(), "json".into(), "rows".into()],
                csv_rows: vec![vec![
                    id.to_string(),
                    csv.display().to_string(),
                    json_path.display().to_string(),
                    rows.to_string(),
                ]],
                human: format!(
                    "figure {id}: {rows} rows written to {} and {}\n",
                    csv.display(),
                    json_path.display()
                ),
                passed: true,
            }
        }
        Command::Sample {
            p,
            n,
            fugacities,
            epsilon,
            count,
            seed,
            method,
            burn_in,
            thinning,
            dump,
        } => {
            if cli.exact {
                return Err(usage("--exact is not available for sample"));
            }
            let xs = broadcast(
                parse_f64_list(fugacities).map_err(|e| usage(format!("--fugacities: {e}")))?,
                *n,
                "--fugacities",
            )?;
            let mut params = ThermoParams::new(*p, xs).map_err(|e| usage(format!("--fugacities: {e}")))?;
            if let Some(eps) = epsilon {
                let eps = parse_f64_list(eps).map_err(|e| usage(format!("--epsilon: {e}")))?;
                params = params
                    .with_energies(eps)
                    .map_err(|e| usage(format!("--epsilon: {e}")))?;
            }
            let method: Method = method.parse().map_err(|e| usage(format!("--method: {e}")))?;
            let mut config = SamplerConfig::new(params, *count, *seed, method);
            config.burn_in = *burn_in;
            config.thinning = *thinning;
            let (est, raw) = sample_raw(&config)?;
            if let Some(path) = dump {
                write_samples_csv(path, *n, &raw)
                    .map_err(|e| usage(format!("--dump {}: {e}", path.display())))?;
            }
            let mut header = vec!["method".to_string(), "samples".into(), "Nbar".into(), "Nbar_se".into()];
            let mut row = vec![
                serde_json::to_value(est.method).unwrap().as_str().unwrap_or("").to_string(),
                est.samples.to_string(),
                est.nbar_hat.to_text(),
                est.nbar_se.to_text(),
            ];
            let mut human = format!(
                "{} samples\nNbar = {} +- {}\n",
                est.samples,
                est.nbar_hat.to_human(),
                est.nbar_se.to_human()
            );
            for (i, (t, s)) in est.theta_bar_hat.iter().zip(&est.theta_bar_se).enumerate() {
                header.push(format!("theta_bar_{}", i + 1));
                header.push(format!("theta_bar_{}_se", i + 1));
                row.push(t.to_text());
                row.push(s.to_text());
                human.push_str(&format!("theta_bar_{} = {} +- {}\n", i + 1, t.to_human(), s.to_human()));
            }
            if let (Some(e), Some(s)) = (est.ebar_hat, est.ebar_se) {
                header.extend(["Ebar".into(), "Ebar_se".into()]);
                row.extend([e.to_text(), s.to_text()]);
                human.push_str(&format!("Ebar = {} +- {}\n", e.to_human(), s.to_human()));
            }
            if let Some(r) = est.acceptance_rate {
                header.push("acceptance_rate".into());
                row.push(r.to_text());
                human.push_str(&format!("acceptance rate = {}\n", r.to_human()));
            }
            Artifact {
                json: serde_json::to_value(&est).expect("estimate serializes"),
                csv_header: header,
                csv_rows: vec![row],
                human,
                passed: true,
            }
        }
    };
    emit(cli, &artifact)
}

fn verify(p: u64, n: usize, suite: &str) -> Result<Artifact, CliError> {
    let spec = FockSpec::new(p, n).map_err(|e| usage(format!("--p/--n: {e}")))?;
    let which: SuiteSelection = suite.parse().map_err(|e| usage(format!("--suite: {e}")))?;
    let reports = verify_suites(spec, which).map_err(|e| usage(format!("--suite: {e}")))?;
    let passed = reports.iter().all(|r| r.passed());
    let header = ["identity", "p", "n", "exact", "max_residual", "checks", "passed"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.identity.clone(),
                r.p.to_string(),
                r.n.to_string(),
                r.exact.to_string(),
                r.max_residual.to_text(),
                r.checks.to_string(),
                r.passed().to_string(),
            ]
        })
        .collect();
    let mut human = format!("W(p={p}, n={n})\n");
    for r in &reports {
        human.push_str(&format!(
            "{:<28} {} ({} checks, {}{})\n",
            r.identity,
            if r.passed() { "PASS" } else { "FAIL" },
            r.checks,
            if r.exact { "exact" } else { "float, max residual " },
            if r.exact { String::new() } else { format_g(r.max_residual, 6) }
        ));
        if let Some(c) = &r.counterexample {
            human.push_str(&format!(
                "  {} at ({}, {}): expected {}, got {}\n",
                c.identity, c.row, c.col, c.expected, c.got
            ));
        }
    }
    Ok(Artifact {
        json: json!({ "p": p, "n": n, "passed": passed, "reports": reports }),
        csv_header: header,
        csv_rows: rows,
        human,
        passed,
    })
}

fn dims(p: u64, n: usize) -> Result<Artifact, CliError> {
    let spec = FockSpec::new(p, n).map_err(|e| usage(format!("--p/--n: {e}")))?;
    let dim = spec.dimension();
    Ok(Artifact {
        json: json!({ "p": p, "n": n, "dim": dim, "typical": spec.is_typical() }),
        csv_header: vec!["p".into(), "n".into(), "dim".into(), "typical".into()],
        csv_rows: vec![vec![
            p.to_string(),
            n.to_string(),
            dim.to_string(),
            spec.is_typical().to_string(),
        ]],
        human: format!("dim W({p},{n}) = {dim}\n"),
        passed: true,
    })
}

/// Scalars the CLI can read from flags.
trait CliScalar: Emit {
    fn parse_value(s: &str) -> asuper_core::Result<Self>;
}

impl CliScalar for f64 {
    fn parse_value(s: &str) -> asuper_core::Result<Self> {
        s.trim()
            .parse()
            .map_err(|_| asuper_core::Error::Parse(format!("not a number: {s:?}")))
    }
}

impl CliScalar for BigRational {
    fn parse_value(s: &str) -> asuper_core::Result<Self> {
        parse_rational(s)
    }
}

fn parse_list<T: CliScalar>(s: &str, flag: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(T::parse_value)
        .collect::<asuper_core::Result<Vec<T>>>()
        .map_err(|e| usage(format!("{flag}: {e}")))
}

fn parse_one<T: CliScalar>(s: &Option<String>, flag: &str) -> Result<Option<T>, CliError> {
    s.as_deref()
        .map(|v| T::parse_value(v).map_err(|e| usage(format!("{flag}: {e}"))))
        .transpose()
}

fn broadcast<T: Clone>(v: Vec<T>, n: usize, flag: &str) -> Result<Vec<T>, CliError> {
    match v.len() {
        1 => Ok(vec![v[0].clone(); n]),
        len if len == n => Ok(v),
        len => Err(usage(format!("{flag}: {len} values for --n {n}"))),
    }
}

fn need<T>(v: Option<T>, flag: &str, mode: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("{flag} is required with {mode}")))
}

fn thermo<T: CliScalar>(a: &ThermoArgs, full: bool) -> Result<Artifact, CliError> {
    let physical = a.tau.is_some() || a.mu.is_some();
    let modes = [
        a.fugacities.is_some(),
        physical && !a.equidistant,
        a.degenerate,
        a.equidistant,
    ];
    if modes.iter().filter(|m| **m).count() != 1 {
        return Err(usage(
            "choose exactly one of --fugacities, --tau/--mu/--epsilon, --degenerate, --equidistant",
        ));
    }
    if a.degenerate {
        return degenerate::<T>(a, full);
    }
    if a.equidistant {
        return equidistant::<T>(a, full);
    }
    if T::EXACT && physical {
        return Err(usage("--tau/--mu: physical mode needs floating point (drop --exact)"));
    }
    let route: Route = match &a.route {
        Some(r) => r.parse().map_err(|e| usage(format!("--route: {e}")))?,
        None => Route::Symfun,
    };
    let params = if let Some(f) = &a.fugacities {
        let xs = parse_list::<T>(f, "--fugacities")?;
        let xs = match a.n {
            Some(n) => broadcast(xs, n, "--fugacities")?,
            None => xs,
        };
        let mut params =
            ThermoParams::new(a.p, xs).map_err(|e| usage(format!("--fugacities: {e}")))?;
        if let Some(e) = &a.epsilon {
            params = params
                .with_energies(parse_list::<T>(e, "--epsilon")?)
                .map_err(|e| usage(format!("--epsilon: {e}")))?;
        }
        params
    } else {
        let tau = need(a.tau, "--tau", "physical mode")?;
        let mu = parse_list::<f64>(need(a.mu.as_deref(), "--mu", "physical mode")?, "--mu")?;
        let eps = parse_list::<f64>(
            need(a.epsilon.as_deref(), "--epsilon", "physical mode")?,
            "--epsilon",
        )?;
        let params = ThermoParams::physical(a.p, eps, mu, tau)
            .map_err(|e| usage(format!("--tau/--mu/--epsilon: {e}")))?;
        // T is f64 here; rebuild in the generic type
        let xs: Vec<T> = params.xs().iter().map(|x| T::from_f64(*x)).collect();
        let eps: Vec<T> = params.energies().unwrap().iter().map(|x| T::from_f64(*x)).collect();
        ThermoParams::new(a.p, xs)?.with_energies(eps)?
    };
    let report = thermo_report(&params, route).map_err(|e| usage(format!("--route: {e}")))?;
    Ok(report_artifact(report, None, full))
}

fn report_artifact<T: Emit>(report: ThermoReport<T>, route_name: Option<String>, full: bool) -> Artifact {
    let route = route_name.unwrap_or_else(|| report.route.to_string());
    if !full {
        let json = json!({
            "p": report.p,
            "n": report.n,
            "route": route,
            "Z": report.z.to_json_value(),
        });
        return Artifact {
            json,
            csv_header: vec!["p".into(), "n".into(), "route".into(), "Z".into()],
            csv_rows: vec![vec![
                report.p.to_string(),
                report.n.to_string(),
                route,
                report.z.to_text(),
            ]],
            human: format!("{}\n", report.z.to_human()),
            passed: true,
        };
    }
    let mut json = report.to_json();
    json["route"] = Value::String(route.clone());
    let (header, mut row) = report.csv_rows();
    row[2] = route.clone();
    let human = report.to_human().replacen(&report.route.to_string(), &route, 1);
    Artifact {
        json,
        csv_header: header,
        csv_rows: vec![row],
        human,
        passed: true,
    }
}

fn fugacity_from<T: CliScalar>(a: &ThermoArgs) -> Result<T, CliError> {
    match (&a.x, a.y) {
        (Some(_), Some(_)) => Err(usage("--x and --y are mutually exclusive")),
        (Some(_), None) => Ok(parse_one::<T>(&a.x, "--x")?.unwrap()),
        (None, Some(y)) if !T::EXACT => Ok(T::from_f64((-y).exp())),
        (None, Some(_)) => Err(usage("--y needs floating point (drop --exact)")),
        (None, None) => Err(usage("--x (or --y) is required")),
    }
}

fn degenerate<T: CliScalar>(a: &ThermoArgs, full: bool) -> Result<Artifact, CliError> {
    let n = need(a.n, "--n", "--degenerate")?;
    let x = fugacity_from::<T>(a)?;
    let params = DegenerateParams::new(a.p, n, x).map_err(|e| usage(format!("--x: {e}")))?;
    let route: DegenerateRoute = match &a.route {
        Some(r) => r.parse().map_err(|e| usage(format!("--route: {e}")))?,
        None => DegenerateRoute::Direct,
    };
    let z = degenerate_gpf(&params, route).map_err(|e| usage(format!("--route: {e}")))?;
    let (nbar, theta_bar) = if full {
        let avg = degenerate_averages(&params)?;
        (avg.nbar, vec![avg.theta_bar; n])
    } else {
        (T::zero(), Vec::new())
    };
    let report = ThermoReport {
        p: a.p,
        n,
        route: Route::ClosedForm,
        clamped: a.p > n as u64,
        z,
        nbar,
        theta_bar,
        ebar: None,
    };
    Ok(report_artifact(report, Some(route.to_string()), full))
}

fn equidistant<T: CliScalar>(a: &ThermoArgs, full: bool) -> Result<Artifact, CliError> {
    let n = need(a.n, "--n", "--equidistant")?;
    let physical = a.epsilon1.is_some() || a.delta.is_some();
    let (params, energies) = if physical {
        if T::EXACT {
            return Err(usage("--epsilon1/--delta need floating point (drop --exact)"));
        }
        if a.x.is_some() || a.q.is_some() || a.y.is_some() {
            return Err(usage("--epsilon1/--delta exclude --x, --y and --q"));
        }
        let eps1 = need(a.epsilon1, "--epsilon1", "--delta")?;
        let delta = need(a.delta, "--delta", "--epsilon1")?;
        let tau = need(a.tau, "--tau", "--epsilon1/--delta")?;
        let mu = need(a.mu.as_deref(), "--mu", "--epsilon1/--delta")?;
        let mu = f64::parse_value(mu).map_err(|e| usage(format!("--mu: {e}")))?;
        let pf = EquidistantParams::physical(a.p, n, eps1, delta, mu, tau)
            .map_err(|e| usage(format!("--epsilon1/--delta/--tau: {e}")))?;
        let eps: Vec<T> = (0..n).map(|i| T::from_f64(eps1 + i as f64 * delta)).collect();
        (
            EquidistantParams::new(a.p, n, T::from_f64(pf.x), T::from_f64(pf.q))?,
            Some(eps),
        )
    } else {
        let x = fugacity_from::<T>(a)?;
        let q = need(parse_one::<T>(&a.q, "--q")?, "--q", "--equidistant")?;
        let params =
            EquidistantParams::new(a.p, n, x, q).map_err(|e| usage(format!("--x/--q: {e}")))?;
        (params, None)
    };
    let route: EquidistantRoute = match &a.route {
        Some(r) => r.parse().map_err(|e| usage(format!("--route: {e}")))?,
        None => EquidistantRoute::QBinomial,
    };
    let z = equidistant_gpf(&params, route).map_err(|e| usage(format!("--route: {e}")))?;
    let (nbar, theta_bar, ebar) = if full {
        let avg = equidistant_averages(&params)?;
        let ebar = energies.map(|eps| {
            eps.iter()
                .zip(&avg.theta_bar)
                .fold(T::zero(), |acc, (e, t)| acc + e.clone() * t.clone())
        });
        (avg.nbar, avg.theta_bar, ebar)
    } else {
        (T::zero(), Vec::new(), None)
    };
    let report = ThermoReport {
        p: a.p,
        n,
        route: Route::ClosedForm,
        clamped: a.p > n as u64,
        z,
        nbar,
        theta_bar,
        ebar,
    };
    Ok(report_artifact(report, Some(route.to_string()), full))
}
