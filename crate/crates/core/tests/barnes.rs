use num_complex::Complex64 as C;

use stripq_core::barnes::{
    build_integrand, display_shift_ratio, gaussian_symbolic_check, integrand_shift_check, numeric_psi, residue_sum,
    residues,
};
use stripq_core::{Basepoint, StripGeometry};

#[test]
fn shift_identities_across_matrix() {
    for (r, s) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 2)] {
        for f in -2..=2 {
            let g = StripGeometry::symbolic(r, s, f);
            for bp in [Basepoint::Infinity, Basepoint::One] {
                if bp == Basepoint::One && f < -1 {
                    continue;
                }
                let ig = build_integrand(&g, bp).unwrap();
                assert!(ig.shift_ratio().same_as(&display_shift_ratio(&g, bp)));
                integrand_shift_check(&ig, 3, 6).unwrap_or_else(|e| panic!("{} {bp}: {e}", g.label()));
                assert!(gaussian_symbolic_check(&ig, f, 10));
            }
        }
    }
}

#[test]
fn residue_sum_converges_monotonically() {
    let g = StripGeometry::numeric(&[C::new(0.1, 0.0)], &[], -1).unwrap();
    let x = C::new(-2.0, 0.0);
    let q = 0.3;
    let exact = numeric_psi(&g, Basepoint::Infinity, x, q, 40).unwrap();
    let ig = build_integrand(&g, Basepoint::Infinity).unwrap();
    let r = residues(&ig, &g, x, q, 30).unwrap();
    let pre = residue_sum(&g, Basepoint::Infinity, x, q, 0).unwrap() / r[0];
    let mut partial = C::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    for (n, rn) in r.iter().enumerate() {
        partial += rn * pre;
        let err = (partial - exact).norm();
        assert!(err <= last.max(1e-14), "n={n}: {err:e} after {last:e}");
        last = err;
    }
    assert!(last < 1e-12);
}

#[test]
fn framing_enters_only_through_gaussian() {
    let q: f64 = 0.3;
    let x = C::new(-2.5, 0.3);
    let base = StripGeometry::numeric(&[C::new(0.2, 0.0)], &[C::new(0.4, 0.0)], 0).unwrap();
    let r0 = residues(&build_integrand(&base, Basepoint::One).unwrap(), &base, x, q, 8).unwrap();
    for df in [-1i64, 1, 2] {
        let g = base.with_framing(df);
        let r = residues(&build_integrand(&g, Basepoint::One).unwrap(), &g, x, q, 8).unwrap();
        for n in 0..=8 {
            let ni = n as i64;
            let sign = if (df * ni).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let expect = r0[n] * q.powf((df * ni * ni) as f64 / 2.0) * sign;
            assert!((r[n] - expect).norm() <= 1e-12 * expect.norm().max(1e-300), "df={df} n={n}");
        }
    }
}
