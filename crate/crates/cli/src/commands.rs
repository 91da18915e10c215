use nevanlinna::divisor::catalog_of;
use nevanlinna::nevanlinna::sample;
use nevanlinna::{
    characteristic, check_arithmetic_bounds, check_cartan, check_fft, check_growth_sandwich, check_jensen,
    check_nevanlinna_estimate, check_psi_distortion, check_sft, marty_probe, order_of_growth, spherical_derivative,
    zalcman_extract, CheckVerdict, ComplexValue, Config64, DivisorKind, Expr64, FamilySpec, ProbeConfig, ZalcmanMode,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::Value;

use crate::args::{self, Command, Family, PlotKind, Verify};
use crate::format::{self, ext, ext_text, object, real, real_text};
use crate::input::{self, InputError, InputResult};
use crate::svg;
use crate::{Report, Table};

const HEATMAP_CELLS: usize = 81;

pub(crate) fn dispatch(command: &Command, cfg: &Config64) -> InputResult<Report> {
    match command {
        Command::Analyze(a) => analyze(a, cfg),
        Command::Divisor(d) => divisor(d, cfg),
        Command::Verify { check } => verify(check, cfg),
        Command::Order(o) => order(o, cfg),
        Command::Family { probe } => family(probe),
        Command::Plot(p) => plot(p, cfg),
    }
}

fn reals(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|x| real(*x)).collect())
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn analyze(a: &args::Analyze, cfg: &Config64) -> InputResult<Report> {
    let f = input::function(&a.f.function, "function")?;
    let targets = input::list(&a.targets, input::target)?;
    let radii = input::radii(a.radius.radius, a.radius.radii.as_deref())?;
    let samples = radii
        .par_iter()
        .map(|&r| targets.iter().map(|&t| sample(&f, t, r, cfg)).collect::<nevanlinna::Result<Vec<_>>>())
        .collect::<nevanlinna::Result<Vec<_>>>()?;

    let mut report = Report::new("analyze");
    report.echo("function", Value::String(a.f.function.clone()));
    report.echo("targets", Value::Array(targets.iter().map(|t| ext(*t)).collect()));
    report.echo("radii", reals(&radii));
    let mut rows = Vec::new();
    for s in samples.iter().flatten() {
        report.results.push(object([
            ("r", real(s.r)),
            ("target", ext(s.target)),
            ("m", real(s.m)),
            ("n", Value::from(s.n)),
            ("N", real(s.big_n)),
            ("T", real(s.t)),
            ("nudged", Value::Bool(s.nudged)),
        ]));
        if s.nudged {
            report.warnings.push(format!(
                "r = {}, target {}: localization circle moved off a divisor point",
                real_text(s.r),
                ext_text(s.target)
            ));
        }
        rows.push(vec![
            real_text(s.r),
            ext_text(s.target),
            real_text(s.m),
            s.n.to_string(),
            real_text(s.big_n),
            real_text(s.t),
        ]);
    }
    report.table = Some(Table { header: strings(&["r", "target", "m", "n", "N", "T"]), rows });
    Ok(report)
}

fn divisor(d: &args::Divisor, cfg: &Config64) -> InputResult<Report> {
    let f = input::function(&d.f.function, "function")?;
    let resolved = catalog_of(&f, d.radius, cfg)?;
    let mut report = Report::new("divisor");
    report.echo("function", Value::String(d.f.function.clone()));
    report.echo("radius", real(d.radius));
    let mut entry = format::catalog(&resolved.catalog);
    if let Value::Object(m) = &mut entry {
        m.insert("localization_radius".into(), resolved.localization_radius.map(real).unwrap_or(Value::Null));
    }
    report.results.push(entry);
    if resolved.nudged {
        report.warnings.push("localization circle moved off a divisor point".into());
    }
    let rows = resolved
        .catalog
        .entries
        .iter()
        .map(|e| {
            vec![
                match e.kind {
                    DivisorKind::Zero => "zero".to_string(),
                    DivisorKind::Pole => "pole".to_string(),
                },
                real_text(e.location.re),
                real_text(e.location.im),
                e.multiplicity.to_string(),
            ]
        })
        .collect();
    report.table = Some(Table { header: strings(&["kind", "re", "im", "multiplicity"]), rows });
    Ok(report)
}

fn finite_target(text: &str) -> InputResult<Complex64> {
    match input::target(text)? {
        ComplexValue::Finite(c) => Ok(c),
        ComplexValue::Infinity => Err(InputError(format!("target {text:?} must be finite for this check"))),
    }
}

fn verify(check: &Verify, cfg: &Config64) -> InputResult<Report> {
    let mut report = Report::new("verify");
    let (name, function, radius) = match check {
        Verify::Jensen(c) => ("jensen", &c.f.function, &c.radius),
        Verify::Cartan(c) => ("cartan", &c.f.function, &c.radius),
        Verify::Fft(c) => ("fft", &c.f.function, &c.radius),
        Verify::Sft(c) => ("sft", &c.f.function, &c.radius),
        Verify::Growth(c) => ("growth", &c.f.function, &c.radius),
        Verify::Nevest(c) => ("nevest", &c.f.function, &c.radius),
        Verify::Arith(c) => ("arith", &c.f.function, &c.radius),
        Verify::Psi(c) => ("psi", &c.f.function, &c.radius),
    };
    let f = input::function(function, "function")?;
    let radii = input::radii(radius.radius, radius.radii.as_deref())?;
    report.echo("check", Value::String(name.into()));
    report.echo("function", Value::String(function.clone()));
    report.echo("radii", reals(&radii));

    let run: Box<dyn Fn(f64) -> nevanlinna::Result<CheckVerdict<f64>> + Sync> = match check {
        Verify::Jensen(_) => Box::new(|r| check_jensen(&f, r, cfg)),
        Verify::Cartan(_) => Box::new(|r| check_cartan(&f, r, cfg)),
        Verify::Fft(c) => {
            let a = finite_target(&c.target)?;
            report.echo("target", format::complex(a));
            Box::new(move |r| check_fft(&f, a, r, cfg))
        }
        Verify::Sft(c) => {
            let targets = input::list(&c.targets, finite_target)?;
            report.echo("targets", Value::Array(targets.iter().map(|t| format::complex(*t)).collect()));
            Box::new(move |r| check_sft(&f, &targets, r, cfg))
        }
        Verify::Growth(c) => {
            let big = c.big_radius;
            report.echo("big_radius", real(big));
            Box::new(move |r| check_growth_sandwich(&f, r, big, cfg))
        }
        Verify::Nevest(c) => {
            let big = c.big_radius;
            report.echo("big_radius", real(big));
            Box::new(move |r| check_nevanlinna_estimate(&f, r, big, cfg))
        }
        Verify::Arith(c) => {
            let g = input::function(&c.g, "second operand")?;
            let a = input::complex(&c.target)?;
            report.echo("g", Value::String(c.g.clone()));
            report.echo("target", format::complex(a));
            Box::new(move |r| check_arithmetic_bounds(&f, &g, a, r, cfg))
        }
        Verify::Psi(c) => {
            let alpha = input::complex(&c.alpha)?;
            let r0 = c.r0;
            report.echo("alpha", format::complex(alpha));
            report.echo("r0", real(r0));
            let probe = ProbeConfig::default();
            Box::new(move |r| check_psi_distortion(&f, alpha, r, r0, cfg, &probe))
        }
    };
    let verdicts = radii.par_iter().map(|&r| run(r)).collect::<nevanlinna::Result<Vec<_>>>()?;
    for (r, v) in radii.iter().zip(&verdicts) {
        let mut json = serde_json::Map::new();
        json.insert("r".into(), real(*r));
        if let Value::Object(m) = format::verdict(v) {
            json.extend(m);
        }
        report.verdicts.push(Value::Object(json));
        collect_notes(v, &format!("r = {}", real_text(*r)), &mut report.warnings);
        report.failed |= !v.pass;
    }
    Ok(report)
}

fn collect_notes(v: &CheckVerdict<f64>, prefix: &str, out: &mut Vec<String>) {
    for n in &v.notes {
        out.push(format!("{prefix}, {}: {n}", v.check));
    }
    for s in &v.subchecks {
        collect_notes(s, prefix, out);
    }
}

fn order(o: &args::Order, cfg: &Config64) -> InputResult<Report> {
    let f = input::function(&o.f.function, "function")?;
    let grid = input::radius_grid(&o.radii)?;
    let est = order_of_growth(&f, &grid, cfg)?;
    let mut report = Report::new("order");
    report.echo("function", Value::String(o.f.function.clone()));
    report.echo("radii", reals(&grid));
    let samples = est.samples.iter().map(|(r, t)| object([("r", real(*r)), ("T", real(*t))])).collect();
    report.results.push(object([
        ("order", real(est.order)),
        ("plain_slope", real(est.plain_slope)),
        ("log_log_coefficient", real(est.log_log_coefficient)),
        ("residual_rms", real(est.residual_rms)),
        ("fit_points", Value::from(est.fit_points)),
        ("samples", Value::Array(samples)),
    ]));
    report
        .warnings
        .push("order is a least-squares fit over the upper half of the grid, an estimate of a limsup".into());
    let rows = est.samples.iter().map(|(r, t)| vec![real_text(*r), real_text(*t)]).collect();
    report.table = Some(Table { header: strings(&["r", "T"]), rows });
    Ok(report)
}

fn family_spec(a: &args::FamilyArgs) -> InputResult<FamilySpec<f64>> {
    let template = input::family(&a.family)?;
    let (lo, hi) = input::index_range(&a.n)?;
    Ok(FamilySpec::new(template, lo, hi, a.r0)?)
}

fn echo_family(report: &mut Report, a: &args::FamilyArgs, spec: &FamilySpec<f64>) {
    report.echo("family", Value::String(a.family.clone()));
    report.echo("n", object([("lo", Value::from(spec.n_lo)), ("hi", Value::from(spec.n_hi))]));
    report.echo("r0", real(spec.r0));
}

/// Evaluates a sequence expression in `n` at every index of the family.
fn sequence(text: &str, spec: &FamilySpec<f64>) -> InputResult<Vec<Complex64>> {
    let e = input::family(text)?;
    spec.indices().map(|n| input::constant_of(&e.bind(n), text)).collect()
}

fn family(probe: &Family) -> InputResult<Report> {
    let probe_cfg = ProbeConfig::default();
    match probe {
        Family::Marty(a) => {
            let spec = family_spec(a)?;
            let m = marty_probe(&spec, &probe_cfg)?;
            let mut report = Report::new("family marty");
            echo_family(&mut report, a, &spec);
            let entries = m
                .entries
                .iter()
                .map(|e| object([("n", Value::from(e.n)), ("sup", real(e.sup)), ("argmax", format::complex(e.argmax))]))
                .collect();
            report.results.push(object([
                ("verdict", Value::String(m.verdict.as_str().into())),
                ("heuristic", Value::Bool(m.heuristic)),
                ("tail_slope", real(m.tail_slope)),
                ("threshold", real(m.threshold)),
                ("entries", Value::Array(entries)),
            ]));
            report.warnings.push("normality verdict is a heuristic from finitely many sampled members".into());
            let rows = m
                .entries
                .iter()
                .map(|e| vec![e.n.to_string(), real_text(e.sup), real_text(e.argmax.re), real_text(e.argmax.im)])
                .collect();
            report.table = Some(Table { header: strings(&["n", "sup", "argmax_re", "argmax_im"]), rows });
            Ok(report)
        }
        Family::Zalcman(z) => {
            let spec = family_spec(&z.family)?;
            let w_grid = input::list(&z.w, input::complex)?;
            let mut report = Report::new("family zalcman");
            echo_family(&mut report, &z.family, &spec);
            let mode = match z.mode {
                args::Mode::Auto => {
                    if z.zn.is_some() || z.rhon.is_some() {
                        return Err(InputError("--zn and --rhon only apply with --mode manual".into()));
                    }
                    report.echo("mode", Value::String("auto".into()));
                    ZalcmanMode::Auto
                }
                args::Mode::Manual => {
                    let (Some(zn), Some(rhon)) = (&z.zn, &z.rhon) else {
                        return Err(InputError("--mode manual needs both --zn and --rhon".into()));
                    };
                    let z_n = sequence(zn, &spec)?;
                    let rho_n = sequence(rhon, &spec)?
                        .into_iter()
                        .map(|c| {
                            if c.im == 0.0 {
                                Ok(c.re)
                            } else {
                                Err(InputError(format!("--rhon {rhon:?} must be real, got {c}")))
                            }
                        })
                        .collect::<InputResult<Vec<_>>>()?;
                    report.echo("mode", Value::String("manual".into()));
                    report.echo("zn", Value::String(zn.clone()));
                    report.echo("rhon", Value::String(rhon.clone()));
                    ZalcmanMode::Manual { z_n, rho_n }
                }
            };
            report.echo("w", Value::Array(w_grid.iter().map(|w| format::complex(*w)).collect()));
            let x = zalcman_extract(&spec, &mode, &w_grid, &probe_cfg)?;
            let records = x
                .records
                .iter()
                .map(|r| {
                    object([
                        ("n", Value::from(r.n)),
                        ("z_n", format::complex(r.z_n)),
                        ("rho_n", real(r.rho_n)),
                        ("peak", real(r.peak)),
                        ("leaves_disk", Value::Bool(r.leaves_disk)),
                        ("rescaled", Value::Array(r.rescaled.iter().map(|v| ext(*v)).collect())),
                    ])
                })
                .collect();
            report.results.push(object([
                ("verdict", Value::String(x.verdict.as_str().into())),
                ("peak_slope", real(x.peak_slope)),
                ("w_grid", Value::Array(x.w_grid.iter().map(|w| format::complex(*w)).collect())),
                ("records", Value::Array(records)),
            ]));
            report.warnings.extend(x.notes.iter().cloned());
            let mut header = strings(&["n", "z_n", "rho_n", "peak"]);
            header.extend(x.w_grid.iter().map(|w| format!("g(w={})", ext_text(ComplexValue::Finite(*w)))));
            let rows = x
                .records
                .iter()
                .map(|r| {
                    let mut row = vec![
                        r.n.to_string(),
                        ext_text(ComplexValue::Finite(r.z_n)),
                        real_text(r.rho_n),
                        real_text(r.peak),
                    ];
                    row.extend(r.rescaled.iter().map(|v| ext_text(*v)));
                    row
                })
                .collect();
            report.table = Some(Table { header, rows });
            Ok(report)
        }
    }
}

fn plot_radii(p: &args::Plot) -> InputResult<Vec<f64>> {
    let text = p.radii.as_deref().ok_or_else(|| InputError("this plot needs --radii".into()))?;
    input::radius_grid(text)
}

fn plot(p: &args::Plot, cfg: &Config64) -> InputResult<Report> {
    let f = input::function(&p.f.function, "function")?;
    let mut report = Report::new("plot");
    report.echo("function", Value::String(p.f.function.clone()));
    match p.kind {
        PlotKind::Characteristic => {
            let radii = plot_radii(p)?;
            report.echo("kind", Value::String("characteristic".into()));
            report.echo("radii", reals(&radii));
            let t = radii.par_iter().map(|&r| characteristic(&f, r, cfg)).collect::<nevanlinna::Result<Vec<_>>>()?;
            for (r, t) in radii.iter().zip(&t) {
                report.results.push(object([("r", real(*r)), ("log_r", real(r.ln())), ("T", real(*t))]));
            }
            let points = radii.iter().zip(&t).map(|(r, t)| (r.ln(), *t)).collect();
            report.svg = Some(svg::line_chart(
                &format!("T(r) for f = {}", p.f.function),
                "log r",
                "T(r, f)",
                &[svg::Series { name: "T(r, f)", color: "#4c72b0", points }],
            ));
        }
        PlotKind::Stack => {
            let radii = plot_radii(p)?;
            let target = input::target(&p.target)?;
            report.echo("kind", Value::String("stack".into()));
            report.echo("radii", reals(&radii));
            report.echo("target", ext(target));
            let samples =
                radii.par_iter().map(|&r| sample(&f, target, r, cfg)).collect::<nevanlinna::Result<Vec<_>>>()?;
            for s in &samples {
                report.results.push(object([
                    ("r", real(s.r)),
                    ("m", real(s.m)),
                    ("N", real(s.big_n)),
                    ("T", real(s.t)),
                ]));
            }
            let m: Vec<f64> = samples.iter().map(|s| s.m).collect();
            let n: Vec<f64> = samples.iter().map(|s| s.big_n).collect();
            let label_m = format!("m(r, {})", ext_text(target));
            let label_n = format!("N(r, {})", ext_text(target));
            report.svg = Some(svg::stack_chart(
                &format!("m and N for f = {}", p.f.function),
                "r",
                &radii,
                (&label_m, &m),
                (&label_n, &n),
            ));
        }
        PlotKind::Sharp => {
            let r0 = p.r0;
            if !(r0 > 0.0) || !r0.is_finite() {
                return Err(InputError(format!("--r0 must be positive, got {r0}")));
            }
            report.echo("kind", Value::String("sharp".into()));
            report.echo("r0", real(r0));
            let values = sharp_grid(&f, r0)?;
            let peak = values.iter().flatten().flatten().fold(0.0f64, |a, b| a.max(*b));
            report.results.push(object([("cells", Value::from(HEATMAP_CELLS)), ("max_sharp", real(peak))]));
            report.svg = Some(svg::heatmap(&format!("spherical derivative of f = {}", p.f.function), r0, &values));
        }
    }
    Ok(report)
}

fn sharp_grid(f: &Expr64, r0: f64) -> InputResult<Vec<Vec<Option<f64>>>> {
    let step = 2.0 * r0 / HEATMAP_CELLS as f64;
    let centre = |k: usize| -r0 + step * (k as f64 + 0.5);
    let rows = (0..HEATMAP_CELLS)
        .into_par_iter()
        .map(|i| {
            (0..HEATMAP_CELLS)
                .map(|j| {
                    let z = Complex64::new(centre(j), centre(i));
                    if z.norm() > r0 {
                        Ok(None)
                    } else {
                        spherical_derivative(f, z).map(Some)
                    }
                })
                .collect::<nevanlinna::Result<Vec<_>>>()
        })
        .collect::<nevanlinna::Result<Vec<_>>>()?;
    Ok(rows)
}
