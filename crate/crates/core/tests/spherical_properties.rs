mod common;

use common::{expr, CORPUS};
use nevanlinna::spherical::{chordal, geodesic, spherical_derivative, stereographic};
use nevanlinna::{parse_expr, zalcman_extract, Expr64, ExtComplex, FamilySpec, ProbeConfig, ZalcmanMode};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_point(rng: &mut ChaCha8Rng) -> Complex64 {
    // log-uniform modulus so both small and large values are exercised
    let modulus = 10f64.powf(rng.gen_range(-3.0..3.0));
    Complex64::from_polar(modulus, rng.gen_range(0.0..std::f64::consts::TAU))
}

fn fin(z: Complex64) -> ExtComplex<f64> {
    ExtComplex::Finite(z)
}

#[test]
fn chordal_is_inversion_symmetric_and_dominated() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let (z, w) = (random_point(&mut rng), random_point(&mut rng));
        let direct = chordal(fin(z), fin(w));
        assert!((direct - chordal(fin(z.inv()), fin(w.inv()))).abs() <= 1e-12);
        assert!(direct <= (z - w).norm() + 1e-15);
        assert!((0.0..=1.0).contains(&direct));
    }
}

#[test]
fn chordal_is_a_metric() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let (a, b, c) = (fin(random_point(&mut rng)), fin(random_point(&mut rng)), ExtComplex::Infinity);
        for (x, y, z) in [(a, b, c), (c, a, b), (b, c, a)] {
            assert_eq!(chordal(x, y), chordal(y, x));
            assert!(chordal(x, z) <= chordal(x, y) + chordal(y, z) + 1e-12);
        }
        assert_eq!(chordal(a, a), 0.0);
    }
}

#[test]
fn chordal_is_the_distance_between_stereographic_images() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let z = fin(random_point(&mut rng));
        let w = if rng.gen_bool(0.1) { ExtComplex::Infinity } else { fin(random_point(&mut rng)) };
        let (p, q) = (stereographic(z), stereographic(w));
        assert!(p.sphere_residual().abs() <= 1e-12);
        assert!((p.distance(&q) - chordal(z, w)).abs() <= 1e-12);
        let (x, s) = (chordal(z, w), geodesic(z, w));
        assert!(x <= s + 1e-15 && s <= std::f64::consts::FRAC_PI_2 * x + 1e-15);
    }
}

#[test]
fn spherical_derivative_is_inversion_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for entry in CORPUS {
        let f = expr(entry.text);
        let g = Expr64::div(Expr64::real(1.0), f.clone());
        let mut checked = 0;
        while checked < 100 {
            let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let (Ok(a), Ok(b)) = (spherical_derivative(&f, z), spherical_derivative(&g, z)) else { continue };
            assert!((a - b).abs() <= 1e-10 * (1.0 + a), "{} at {z}: {a} vs {b}", entry.text);
            checked += 1;
        }
    }
}

#[test]
fn auto_peaks_grow_for_non_normal_families() {
    for (template, r0) in [("n*z", 0.5), ("exp(n*z)", 0.5), ("n*z^2", 0.8)] {
        let family = FamilySpec::new(parse_expr(template, true).unwrap(), 1, 12, r0).unwrap();
        let out =
            zalcman_extract(&family, &ZalcmanMode::Auto, &[Complex64::new(0.0, 0.0)], &ProbeConfig::default()).unwrap();
        assert!(out.records.windows(2).all(|w| w[1].peak >= w[0].peak), "{template}");
    }
}
