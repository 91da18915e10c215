use num_complex::Complex;

use super::circle::{arc_endpoints, circle_log_mean, circle_values, Part};
use super::functionals::{
    characteristic, characteristic_with_tol, counting_integrated, finite_origin_value, log_plus, max_modulus,
    proximity, value_at_origin,
};
use super::verdict::{CheckVerdict, Relation};
use crate::divisor::{
    catalog_of, check_radius, eval_certified, nonconstant_derivative, on_circle, poles_of, DivisorKind,
    QuadratureConfig,
};
use crate::error::{Error, Result};
use crate::funcexpr::{differentiate, Expr, ExtComplex};
use crate::quadrature::{bisect, gauss_kronrod, pairwise_sum, periodic_mean};
use crate::scalar::Real;

fn slack<T: Real>(cfg: &QuadratureConfig<T>) -> T {
    T::lit(10.0) * cfg.abs_tol
}

fn nudge_note<T: Real>(nudged: bool, what: &str, r: T) -> Option<String> {
    nudged.then(|| format!("localization circle for {what} at r = {r} was moved off a divisor point"))
}

/// Jensen's formula `log|f(0)| = (1/2π)∫ log|f(Re^{iθ})| dθ + Σ log(R/|b_ν|) − Σ log(R/|a_μ|)`.
pub fn check_jensen<T: Real>(f: &Expr<T>, big_r: T, cfg: &QuadratureConfig<T>) -> Result<CheckVerdict<T>> {
    cfg.validate()?;
    check_radius(big_r)?;
    let f0 = finite_origin_value(f, "Jensen")?;
    if f0.norm() == T::zero() {
        return Err(Error::Precondition("Jensen: f(0) must be nonzero".into()));
    }
    let mean = circle_log_mean(f, big_r, Part::Whole, cfg.abs_tol, cfg)?;
    let resolved = catalog_of(f, big_r, cfg)?;
    let term = |kind: DivisorKind| -> T {
        let terms: Vec<T> = resolved
            .catalog
            .entries
            .iter()
            .filter(|e| e.kind == kind)
            .map(|e| T::from_u32(e.multiplicity).expect("small") * (big_r / e.location.norm()).ln())
            .collect();
        pairwise_sum::<T, T>(&terms)
    };
    let zero_sum = term(DivisorKind::Zero);
    let pole_sum = term(DivisorKind::Pole);
    let lhs = f0.norm().ln();
    let rhs = mean + pole_sum - zero_sum;
    let mut v = CheckVerdict::equality("jensen", lhs, rhs, slack(cfg))
        .with("circle_mean_log_abs", mean)
        .with("zero_sum", zero_sum)
        .with("pole_sum", pole_sum);
    if let Some(n) = nudge_note(resolved.nudged, "f", big_r) {
        v = v.with_note(n);
    }
    Ok(v)
}

/// First fundamental theorem: `ε = m(r,a) + N(r,a) − T(r,f) + log|f(0) − a|`
/// satisfies `|ε| ≤ log⁺|a| + log 2`.
pub fn check_fft<T: Real>(f: &Expr<T>, a: Complex<T>, r: T, cfg: &QuadratureConfig<T>) -> Result<CheckVerdict<T>> {
    cfg.validate()?;
    check_radius(r)?;
    let f0 = finite_origin_value(f, "first fundamental theorem")?;
    let gap = (f0 - a).norm();
    if gap <= T::epsilon() * (T::one() + a.norm()) {
        return Err(Error::Precondition("first fundamental theorem: f(0) equals the target a".into()));
    }
    let target = ExtComplex::Finite(a);
    let m_a = proximity(f, target, r, cfg)?;
    let counting = counting_integrated(f, target, r, cfg)?;
    let t = characteristic(f, r, cfg)?;
    let log_gap = gap.ln();
    let eps = m_a + counting.big_n - t + log_gap;
    let allowed = log_plus(a.norm())? + T::LN_2();
    let mut v = CheckVerdict::at_most("fft", eps.abs(), allowed, slack(cfg))
        .with("epsilon", eps)
        .with("m_a", m_a)
        .with("N_a", counting.big_n)
        .with("T", t)
        .with("log_abs_f0_minus_a", log_gap);
    if let Some(n) = nudge_note(counting.nudged, "f - a", r) {
        v = v.with_note(n);
    }
    Ok(v)
}

/// Angles `θ` at which an `e^{iθ}`-point of `f` crosses `|z| = r` or the origin.
fn cartan_breakpoints<T: Real>(f: &Expr<T>, r: T, f0: Complex<T>) -> Result<Vec<T>> {
    let n = 512;
    let values = circle_values(f, r, n)?;
    let log_abs = |v: &ExtComplex<T>| match v {
        ExtComplex::Infinity => T::infinity(),
        ExtComplex::Finite(c) => c.norm().ln(),
    };
    let step = (T::PI() + T::PI()) / T::from_usize_lossy(n);
    let mut out = Vec::new();
    for j in 0..n {
        let (ua, ub) = (log_abs(&values[j].1), log_abs(&values[(j + 1) % n].1));
        if (ua > T::zero()) != (ub > T::zero()) {
            let a = values[j].0;
            let t = bisect(|t| Ok(log_abs(&f.eval_at(on_circle(r, t))?) > T::zero()), a, a + step, ua > T::zero(), 80)?;
            if let ExtComplex::Finite(w) = f.eval_at(on_circle(r, t))? {
                out.push(w.arg());
            }
        }
    }
    if (f0.norm() - T::one()).abs() <= T::lit(1e-12) {
        out.push(f0.arg());
    }
    Ok(out)
}

/// Mean of `θ ↦ N(r, e^{iθ})` over the circle.
fn mean_unimodular_counting<T: Real>(
    f: &Expr<T>,
    r: T,
    f0: Complex<T>,
    tol: T,
    cfg: &QuadratureConfig<T>,
) -> Result<(T, bool)> {
    let nudged = std::cell::Cell::new(false);
    let counting = |t: T| -> Result<T> {
        let c = counting_integrated(f, ExtComplex::Finite(Complex::from_polar(T::one(), t)), r, cfg)?;
        if c.nudged {
            nudged.set(true);
        }
        Ok(c.big_n)
    };
    let two_pi = T::PI() + T::PI();
    let breaks = cartan_breakpoints(f, r, f0)?;
    if breaks.is_empty() {
        let est = periodic_mean(counting, 16, tol, cfg.max_subdivisions)?;
        return Ok((est.value, nudged.get()));
    }
    let ends = arc_endpoints(breaks);
    let arc_tol = tol * two_pi / T::from_usize_lossy(ends.len() - 1);
    let mut pieces = Vec::new();
    for w in ends.windows(2) {
        if w[1] - w[0] > T::zero() {
            pieces.push(gauss_kronrod(counting, w[0], w[1], arc_tol, 2000)?.value);
        }
    }
    Ok((pairwise_sum::<T, T>(&pieces) / two_pi, nudged.get()))
}

/// `T` at `count` radii spaced evenly in `log r` over `[lo, hi]`.
fn characteristic_grid<T: Real>(
    f: &Expr<T>,
    lo: T,
    hi: T,
    count: usize,
    tol: T,
    cfg: &QuadratureConfig<T>,
) -> Result<(T, Vec<T>)> {
    let h = (hi / lo).ln() / T::from_usize_lossy(count - 1);
    let values = (0..count)
        .map(|j| characteristic_with_tol(f, lo * (h * T::from_usize_lossy(j)).exp(), tol, cfg))
        .collect::<Result<Vec<T>>>()?;
    Ok((h, values))
}

/// Monotonicity and convexity of `T(r, f)` in `log r` on 12 radii from `r/2` to `2r`.
pub(crate) fn convexity_checks<T: Real>(f: &Expr<T>, r: T, cfg: &QuadratureConfig<T>) -> Result<Vec<CheckVerdict<T>>> {
    let two = T::lit(2.0);
    let (h, t) = characteristic_grid(f, r / two, r * two, 12, cfg.abs_tol * T::lit(1e-2), cfg)?;
    let first = (1..t.len()).map(|j| (t[j] - t[j - 1]) / h).fold(T::infinity(), T::min);
    let second = (1..t.len() - 1).map(|j| (t[j + 1] - t[j] - t[j] + t[j - 1]) / (h * h)).fold(T::infinity(), T::min);
    Ok(vec![
        CheckVerdict::at_most("monotone_in_log_r", -first, T::zero(), slack(cfg)).with("min_first_difference", first),
        CheckVerdict::at_most("convex_in_log_r", -second, T::zero(), slack(cfg)).with("min_second_difference", second),
    ])
}

/// Cartan's identity `T(r,f) = (1/2π)∫ N(r, e^{iθ}) dθ + log⁺|f(0)|`, bundled
/// with monotonicity and convexity of `T` in `log r`.
pub fn check_cartan<T: Real>(f: &Expr<T>, r: T, cfg: &QuadratureConfig<T>) -> Result<CheckVerdict<T>> {
    cfg.validate()?;
    check_radius(r)?;
    let f0 = finite_origin_value(f, "Cartan")?;
    let t = characteristic(f, r, cfg)?;
    let (mean, nudged) =
        if f.has_var() { mean_unimodular_counting(f, r, f0, cfg.abs_tol, cfg)? } else { (T::zero(), false) };
    let log_plus_f0 = log_plus(f0.norm())?;
    let identity = CheckVerdict::equality("identity", t, mean + log_plus_f0, slack(cfg))
        .with("T", t)
        .with("mean_N_unimodular", mean)
        .with("log_plus_f0", log_plus_f0);
    let mut subs = vec![identity];
    subs.extend(convexity_checks(f, r, cfg)?);
    let identity = &subs[0];
    let mut v = CheckVerdict::new("cartan", Relation::Equality, identity.lhs, identity.rhs, identity.bound);
    v.details = identity.details.clone();
    v.pass = subs.iter().all(|s| s.pass);
    v.subchecks = subs;
    if let Some(n) = nudge_note(nudged, "f - e^{iθ}", r) {
        v = v.with_note(n);
    }
    Ok(v)
}

/// `T(r,f) ≤ log⁺M(r,f) ≤ ((R+r)/(R−r))·m(R,f)` for `f` holomorphic in `|z| ≤ R`.
pub fn check_growth_sandwich<T: Real>(
    f: &Expr<T>,
    r: T,
    big_r: T,
    cfg: &QuadratureConfig<T>,
) -> Result<CheckVerdict<T>> {
    cfg.validate()?;
    check_radius(big_r)?;
    if !(r >= T::zero() && r < big_r) {
        return Err(Error::Precondition(format!("growth sandwich needs 0 ≤ r < R, got r = {r}, R = {big_r}")));
    }
    let poles = poles_of(f, big_r, cfg)?;
    if let Some(p) = poles.catalog.poles().next() {
        return Err(Error::Precondition(format!("growth sandwich: pole at {} inside |z| ≤ {big_r}", p.location)));
    }
    let (t, modulus) = if r == T::zero() {
        let f0 = finite_origin_value(f, "growth sandwich")?.norm();
        (log_plus(f0)?, f0)
    } else {
        (characteristic(f, r, cfg)?, max_modulus(f, r)?)
    };
    let log_m = log_plus(modulus)?;
    let m_big = proximity(f, ExtComplex::Infinity, big_r, cfg)?;
    let k = (big_r + r) / (big_r - r);
    let rhs = k * m_big;
    let subs = vec![
        CheckVerdict::at_most("T_le_log_plus_M", t, log_m, slack(cfg)),
        CheckVerdict::at_most("log_plus_M_le_scaled_m", log_m, rhs, slack(cfg)),
    ];
    let mut v = CheckVerdict::at_most("growth", t, rhs, slack(cfg))
        .with("T_r", t)
        .with("log_plus_M_r", log_m)
        .with("m_R", m_big)
        .with("factor", k);
    v.pass = subs.iter().all(|s| s.pass);
    v.subchecks = subs;
    Ok(v)
}

/// Second fundamental theorem
/// `m(r,f) + Σ m(r,a_ν) ≤ 2T(r,f) − N₁(r) + S(r)` with the explicit error term
/// `S(r) = m(r,f′/f) + m(r, Σ f′/(f−a_ν)) + q·log⁺(3q/δ) + log 2 + log|1/f′(0)|`.
pub fn check_sft<T: Real>(
    f: &Expr<T>,
    targets: &[Complex<T>],
    r: T,
    cfg: &QuadratureConfig<T>,
) -> Result<CheckVerdict<T>> {
    cfg.validate()?;
    check_radius(r)?;
    let fp = nonconstant_derivative(f)?;
    let q = targets.len();
    if q < 2 {
        return Err(Error::Precondition("second fundamental theorem needs at least two targets".into()));
    }
    let mut delta = T::infinity();
    for i in 0..q {
        for j in i + 1..q {
            delta = delta.min((targets[i] - targets[j]).norm());
        }
    }
    if !(delta > T::zero()) {
        return Err(Error::Precondition("second fundamental theorem needs distinct targets".into()));
    }
    finite_origin_value(f, "second fundamental theorem")?;
    let fp0 = match eval_certified(&fp, ExtComplex::zero())? {
        ExtComplex::Finite(c) if c.norm() > T::zero() => c,
        _ => return Err(Error::Precondition("second fundamental theorem: f′(0) must be finite and nonzero".into())),
    };

    let m_inf = proximity(f, ExtComplex::Infinity, r, cfg)?;
    let m_targets = targets.iter().map(|a| proximity(f, ExtComplex::Finite(*a), r, cfg)).collect::<Result<Vec<T>>>()?;
    let lhs = m_inf + pairwise_sum::<T, T>(&m_targets);

    let t = characteristic(f, r, cfg)?;
    let n_zeros_fp = counting_integrated(&fp, ExtComplex::zero(), r, cfg)?;
    let n_poles_f = counting_integrated(f, ExtComplex::Infinity, r, cfg)?;
    let n_poles_fp = counting_integrated(&fp, ExtComplex::Infinity, r, cfg)?;
    let two = T::lit(2.0);
    let n1 = n_zeros_fp.big_n + two * n_poles_f.big_n - n_poles_fp.big_n;

    let log_derivative = Expr::div(fp.clone(), f.clone());
    let m_log_derivative = proximity(&log_derivative, ExtComplex::Infinity, r, cfg)?;
    let sum = targets
        .iter()
        .map(|a| Expr::div(fp.clone(), Expr::sub(f.clone(), Expr::constant(*a))))
        .reduce(Expr::add)
        .expect("at least two targets");
    let m_sum = proximity(&sum, ExtComplex::Infinity, r, cfg)?;
    let qq = T::from_usize_lossy(q);
    let separation = qq * log_plus(T::lit(3.0) * qq / delta)?;
    let log_inv_fp0 = -fp0.norm().ln();
    let s = m_log_derivative + m_sum + separation + T::LN_2() + log_inv_fp0;
    let rhs = two * t - n1 + s;

    let subs = vec![
        CheckVerdict::at_most("inequality", lhs, rhs, slack(cfg)),
        CheckVerdict::at_most("N1_nonnegative", T::zero(), n1, slack(cfg)),
    ];
    let mut v = CheckVerdict::at_most("sft", lhs, rhs, slack(cfg))
        .with("m_inf", m_inf)
        .with("m_targets_sum", lhs - m_inf)
        .with("T", t)
        .with("N_zeros_fprime", n_zeros_fp.big_n)
        .with("N_poles_f", n_poles_f.big_n)
        .with("N_poles_fprime", n_poles_fp.big_n)
        .with("N1", n1)
        .with("m_log_derivative", m_log_derivative)
        .with("m_sum_log_derivatives", m_sum)
        .with("delta", delta)
        .with("separation_term", separation)
        .with("log_inv_fprime0", log_inv_fp0)
        .with("S", s);
    v.pass = subs.iter().all(|s| s.pass);
    v.subchecks = subs;
    for c in [n_zeros_fp, n_poles_f, n_poles_fp] {
        if let Some(n) = nudge_note(c.nudged, "a counting function", r) {
            v = v.with_note(n);
        }
    }
    Ok(v)
}

/// Nevanlinna's estimate of the logarithmic derivative with explicit constants.
pub fn check_nevanlinna_estimate<T: Real>(
    f: &Expr<T>,
    r: T,
    big_r: T,
    cfg: &QuadratureConfig<T>,
) -> Result<CheckVerdict<T>> {
    cfg.validate()?;
    check_radius(r)?;
    if !(r < big_r) {
        return Err(Error::Precondition(format!("Nevanlinna estimate needs 0 < r < R, got r = {r}, R = {big_r}")));
    }
    let f0 = finite_origin_value(f, "Nevanlinna estimate")?;
    if f0.norm() == T::zero() {
        return Err(Error::Precondition("Nevanlinna estimate: f(0) must be nonzero".into()));
    }
    let fp = differentiate(f);
    let lhs = proximity(&Expr::div(fp, f.clone()), ExtComplex::Infinity, r, cfg)?;
    let t_big = characteristic(f, big_r, cfg)?;
    let terms = [
        ("4_log_plus_T_R", T::lit(4.0) * log_plus(t_big)?),
        ("4_log_plus_log_plus_inv_f0", T::lit(4.0) * log_plus(log_plus(T::one() / f0.norm())?)?),
        ("5_log_plus_R", T::lit(5.0) * log_plus(big_r)?),
        ("6_log_plus_inv_gap", T::lit(6.0) * log_plus(T::one() / (big_r - r))?),
        ("log_plus_inv_r", log_plus(T::one() / r)?),
        ("constant", T::lit(14.0)),
    ];
    let rhs = pairwise_sum::<T, T>(&terms.iter().map(|(_, v)| *v).collect::<Vec<_>>());
    let mut v = CheckVerdict::new("nevest", Relation::Below, lhs, rhs, slack(cfg)).with("T_R", t_big);
    for (name, value) in terms {
        v = v.with(name, value);
    }
    Ok(v)
}

fn skip_on_precondition<T: Real>(
    name: &str,
    result: Result<CheckVerdict<T>>,
    notes: &mut Vec<String>,
) -> Result<Option<CheckVerdict<T>>> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(Error::Precondition(why)) => {
            notes.push(format!("{name} skipped: {why}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Bundle of arithmetic laws for `T`: product and sum subadditivity, the
/// shift bound, the inversion identity and three scaling laws.
pub fn check_arithmetic_bounds<T: Real>(
    f: &Expr<T>,
    g: &Expr<T>,
    a: Complex<T>,
    r: T,
    cfg: &QuadratureConfig<T>,
) -> Result<CheckVerdict<T>> {
    cfg.validate()?;
    check_radius(r)?;
    let tol = slack(cfg);
    let tf = characteristic(f, r, cfg)?;
    let tg = characteristic(g, r, cfg)?;
    let mut notes = Vec::new();
    let mut subs = Vec::new();

    let product = characteristic(&Expr::mul(f.clone(), g.clone()), r, cfg)
        .map(|tp| CheckVerdict::at_most("product", tp, tf + tg, tol).with("T_fg", tp).with("T_f", tf).with("T_g", tg));
    subs.extend(skip_on_precondition("product", product, &mut notes)?);

    let sum = characteristic(&Expr::add(f.clone(), g.clone()), r, cfg)
        .map(|ts| CheckVerdict::at_most("sum", ts, tf + tg + T::LN_2(), tol).with("T_f_plus_g", ts));
    subs.extend(skip_on_precondition("sum", sum, &mut notes)?);

    let shift = characteristic(&Expr::sub(f.clone(), Expr::constant(a)), r, cfg).and_then(|tsh| {
        Ok(CheckVerdict::at_most("shift", (tf - tsh).abs(), log_plus(a.norm())? + T::LN_2(), tol)
            .with("T_f_minus_a", tsh))
    });
    subs.extend(skip_on_precondition("shift", shift, &mut notes)?);

    let inversion = (|| {
        let f0 = finite_origin_value(f, "inversion")?;
        if f0.norm() == T::zero() {
            return Err(Error::Precondition("inversion: f(0) must be nonzero".into()));
        }
        let ti = characteristic(&Expr::div(Expr::real(T::one()), f.clone()), r, cfg)?;
        Ok(CheckVerdict::equality("inversion", ti, tf - f0.norm().ln(), tol).with("T_inv_f", ti))
    })();
    subs.extend(skip_on_precondition("inversion", inversion, &mut notes)?);

    let power_argument = (|| {
        let lhs = characteristic(&f.substitute(&Expr::pow(Expr::Var, 2)), r, cfg)?;
        let rhs = characteristic(f, r * r, cfg)?;
        Ok(CheckVerdict::equality("scale_argument_power", lhs, rhs, tol))
    })();
    subs.extend(skip_on_precondition("scale_argument_power", power_argument, &mut notes)?);

    let power_value = characteristic(&Expr::pow(f.clone(), 2), r, cfg)
        .map(|lhs| CheckVerdict::equality("scale_value_power", lhs, T::lit(2.0) * tf, tol));
    subs.extend(skip_on_precondition("scale_value_power", power_value, &mut notes)?);

    let dilation = (|| {
        let c = if a.norm() > T::zero() { a } else { Complex::new(T::lit(2.0), T::zero()) };
        let lhs = characteristic(&f.substitute(&Expr::mul(Expr::constant(c), Expr::Var)), r, cfg)?;
        let big = c.norm() * r;
        let rhs_t = characteristic(f, big, cfg)?;
        let poles = poles_of(f, big, cfg)?;
        let origin = poles.catalog.origin_tolerance();
        let n0: u32 = poles.catalog.poles().filter(|e| e.location.norm() <= origin).map(|e| e.multiplicity).sum();
        let n0 = T::from_u32(n0).expect("small");
        Ok(CheckVerdict::equality("scale_dilation", lhs, rhs_t - n0 * c.norm().ln(), tol)
            .with("dilation_modulus", c.norm())
            .with("n0_poles", n0))
    })();
    subs.extend(skip_on_precondition("scale_dilation", dilation, &mut notes)?);

    let mut v = CheckVerdict::all_of("arith", subs).with("T_f", tf).with("T_g", tg);
    v.notes = notes;
    if value_at_origin(f).is_err() {
        v = v.with_note("f(0) could not be evaluated");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::parse_expr;

    fn p(s: &str) -> Expr<f64> {
        parse_expr(s, false).unwrap()
    }

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::default()
    }

    #[test]
    fn jensen_examples() {
        let v = check_jensen(&p("z - 0.5"), 1.0, &cfg()).unwrap();
        assert!(v.pass, "{v:?}");
        let v = check_jensen(&p("exp(z)"), 3.0, &cfg()).unwrap();
        assert!(v.pass, "{v:?}");
        assert!(matches!(check_jensen(&p("z"), 1.0, &cfg()), Err(Error::Precondition(_))));
    }

    #[test]
    fn fft_examples() {
        let v = check_fft(&p("exp(z)"), Complex::new(0.0, 0.0), 2.0, &cfg()).unwrap();
        assert!(v.pass);
        assert!(v.detail("epsilon").unwrap().abs() <= 1e-8);
        assert!(matches!(check_fft(&p("exp(z)"), Complex::new(1.0, 0.0), 2.0, &cfg()), Err(Error::Precondition(_))));
        for r in [0.3, 0.7, 2.0, 5.0] {
            let v = check_fft(&p("z/(1-z^2)"), Complex::new(3.0, 0.0), r, &cfg()).unwrap();
            assert!(v.pass, "r = {r}: {v:?}");
        }
    }

    #[test]
    fn cartan_examples() {
        let v = check_cartan(&p("3"), 1.5, &cfg()).unwrap();
        assert!(v.pass && v.residual.abs() <= 1e-15, "{v:?}");
        let v = check_cartan(&p("z"), 2.0, &cfg()).unwrap();
        assert!((v.rhs - 2f64.ln()).abs() <= 1e-9, "{v:?}");
        assert!(v.pass, "{v:?}");
        let v = check_cartan(&p("exp(z)"), 1.0, &cfg()).unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn growth_examples() {
        let v = check_growth_sandwich(&p("exp(z)"), 1.0, 2.0, &cfg()).unwrap();
        assert!(v.pass);
        assert!((v.detail("log_plus_M_r").unwrap() - 1.0).abs() <= 1e-12);
        let v = check_growth_sandwich(&p("z^3"), 2.0, 4.0, &cfg()).unwrap();
        assert!(v.pass);
        let v = check_growth_sandwich(&p("7"), 1.0, 2.0, &cfg()).unwrap();
        assert!(v.pass);
        assert!(matches!(check_growth_sandwich(&p("1/(z-1)"), 0.5, 2.0, &cfg()), Err(Error::Precondition(_))));
    }

    #[test]
    fn sft_examples() {
        let targets = [Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)];
        let v = check_sft(&p("exp(z)"), &targets, 2.0, &cfg()).unwrap();
        assert!(v.pass, "{v:?}");
        let targets = [Complex::new(0.0, 2.0), Complex::new(0.0, -2.0)];
        let v = check_sft(&p("tan(z)"), &targets, 1.0, &cfg()).unwrap();
        assert!(v.pass, "{v:?}");
        assert!(matches!(check_sft(&p("2"), &targets, 1.0, &cfg()), Err(Error::Precondition(_))));
    }

    #[test]
    fn nevanlinna_estimate_examples() {
        let v = check_nevanlinna_estimate(&p("exp(z)"), 1.0, 2.0, &cfg()).unwrap();
        assert!(v.pass);
        assert_eq!(v.lhs, 0.0);
        let v = check_nevanlinna_estimate(&p("tan(z-1)"), 1.0, 2.0, &cfg()).unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn arithmetic_examples() {
        let v = check_arithmetic_bounds(&p("exp(z)"), &p("z"), Complex::new(5.0, 0.0), 2.0, &cfg()).unwrap();
        assert!(v.pass, "{v:#?}");
        assert_eq!(v.subchecks.len(), 7);
    }
}
