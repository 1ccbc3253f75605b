use num_complex::Complex64 as C;
use rand::{rngs::StdRng, Rng, SeedableRng};

use stripq_core::geometry::{classical_curve, curve_residual, parametrize, saddle_potential};
use stripq_core::{Error, StripGeometry};

fn random_param(rng: &mut StdRng) -> C {
    C::from_polar(rng.gen_range(0.05..0.9), rng.gen_range(-3.0..3.0))
}

fn random_geometry(rng: &mut StdRng) -> StripGeometry {
    let r = rng.gen_range(0..=2);
    let s = rng.gen_range(0..=2);
    let alphas: Vec<C> = (0..r).map(|_| random_param(rng)).collect();
    let betas: Vec<C> = (0..s).map(|_| random_param(rng)).collect();
    StripGeometry::numeric(&alphas, &betas, rng.gen_range(-2..=2)).unwrap()
}

#[test]
fn parametrization_lies_on_curve() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let g = random_geometry(&mut rng);
        let z = C::from_polar(rng.gen_range(0.1..0.95), rng.gen_range(-3.1..3.1));
        let (x, y) = parametrize(&g, z).unwrap();
        let res = curve_residual(&g, x, y).unwrap().norm();
        assert!(res < 1e-12, "{} z={z}: {res:e}", g.label());
    }
}

#[test]
fn critical_points_biject_with_y_roots() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 100 {
        let g = random_geometry(&mut rng);
        let x = C::new(rng.gen_range(-4.0..1.0), rng.gen_range(-3.0..3.0));
        let w = saddle_potential(&g, x).unwrap();
        let zs = match w.critical_points() {
            Ok(zs) => zs,
            Err(Error::CriticalPointCollision(_)) => continue,
            Err(e) => panic!("{}: {e}", g.label()),
        };
        let (alpha, beta) = g.values().unwrap();
        let (lo, coeffs) = classical_curve(&g).y_polynomial(x.exp(), &alpha, &beta);
        // nonzero Y-roots of Y^lo · poly(Y), counted by degree
        let first = coeffs.iter().position(|c| c.norm() > 0.0).unwrap();
        let last = coeffs.iter().rposition(|c| c.norm() > 0.0).unwrap();
        let _ = lo;
        assert_eq!(zs.len(), last - first, "{}", g.label());
        for z in &zs {
            assert!(w.critical_residual(*z).norm() < 1e-10);
            assert!(curve_residual(&g, x, -z.ln()).unwrap().norm() < 1e-10);
        }
        for i in 0..zs.len() {
            for j in i + 1..zs.len() {
                assert!((zs[i] - zs[j]).norm() > 1e-8, "{}: repeated critical point", g.label());
            }
        }
        checked += 1;
    }
}
