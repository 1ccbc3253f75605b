use stripq_core::quantization::closed_form_psi_in;
use stripq_core::quiver::{quiver_eval, quiver_matrix, to_quiver};
use stripq_core::{Basepoint, Direction, Error, StripGeometry};

fn cases() -> Vec<(StripGeometry, Basepoint)> {
    let mut out = Vec::new();
    for (r, s) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)] {
        for f in -2..=2 {
            let g = StripGeometry::symbolic(r, s, f);
            out.push((g.clone(), Basepoint::Infinity));
            if f >= -1 {
                out.push((g, Basepoint::One));
            }
        }
    }
    out
}

#[test]
fn matrices_are_symmetric() {
    for (g, bp) in cases() {
        let m = to_quiver(&g, bp).unwrap();
        assert!(m.is_symmetric());
        let c = quiver_matrix(&m);
        for i in 0..c.matrix.len() {
            for j in 0..c.matrix.len() {
                assert_eq!(c.matrix[i][j], c.matrix[j][i]);
            }
        }
        assert_eq!(c.labels[0], "n");
        assert_eq!(m.nodes.iter().filter(|n| n.x_degree == 1).count(), 1);
    }
}

#[test]
fn framing_changes_only_principal_diagonal() {
    for (r, s) in [(0, 0), (1, 2), (2, 0)] {
        for bp in [Basepoint::Infinity, Basepoint::One] {
            let base = to_quiver(&StripGeometry::symbolic(r, s, -1), bp).unwrap();
            for f in 0..=2 {
                let other = to_quiver(&StripGeometry::symbolic(r, s, f), bp).unwrap();
                assert_eq!(other.nodes, base.nodes);
                for i in 0..base.matrix.len() {
                    for j in 0..base.matrix.len() {
                        let d = other.matrix[i][j] - base.matrix[i][j];
                        let expect = if i == 0 && j == 0 { f + 1 } else { 0 };
                        assert_eq!(d, expect, "({i},{j})");
                    }
                }
            }
        }
    }
    let a = to_quiver(&StripGeometry::c3(1), Basepoint::Infinity).unwrap();
    let b = to_quiver(&StripGeometry::c3(2), Basepoint::Infinity).unwrap();
    assert_eq!(b.matrix[0][0] - a.matrix[0][0], 1);
}

#[test]
fn evaluation_equals_closed_form() {
    for (g, bp) in cases() {
        let m = to_quiver(&g, bp).unwrap();
        let lat = quiver_eval(&m, 3, 12).unwrap();
        // quivers always expand in ascending powers of X
        let closed = closed_form_psi_in(&g, bp, Direction::AscendingX, 3, 12).unwrap();
        for n in 0..=3 {
            let k = closed.coeffs[n].trunc().unwrap_or(12).min(12);
            assert_eq!(lat.coeffs[n].with_trunc(k), closed.coeffs[n].with_trunc(k), "{} {bp} X^{n}", g.label());
        }
    }
}

#[test]
fn raising_truncation_keeps_known_terms() {
    let m = to_quiver(&StripGeometry::conifold(0), Basepoint::One).unwrap();
    let mut prev = quiver_eval(&m, 4, 6).unwrap();
    for t in [9, 12, 16] {
        let next = quiver_eval(&m, 4, t).unwrap();
        for n in 0..=4 {
            let k = prev.coeffs[n].trunc().unwrap_or(t);
            assert_eq!(next.coeffs[n].with_trunc(k), prev.coeffs[n], "X^{n} at t<{t}");
        }
        prev = next;
    }
}

#[test]
fn unsupported_basepoint_one_framing() {
    assert!(matches!(
        to_quiver(&StripGeometry::c3(-2), Basepoint::One),
        Err(Error::UnsupportedFraming { .. })
    ));
}

#[test]
fn evaluation_across_truncations() {
    for g in [StripGeometry::c3(0), StripGeometry::c3(1), StripGeometry::conifold(0), StripGeometry::conifold(-1)] {
        for bp in [Basepoint::Infinity, Basepoint::One] {
            let m = to_quiver(&g, bp).unwrap();
            for n in 0..=5 {
                for t in 1..=15 {
                    let lat = quiver_eval(&m, n, t).unwrap();
                    let closed = closed_form_psi_in(&g, bp, Direction::AscendingX, n, t).unwrap();
                    for k in 0..=n {
                        let cut = closed.coeffs[k].trunc().unwrap_or(t).min(t);
                        assert_eq!(lat.coeffs[k].with_trunc(cut), closed.coeffs[k].with_trunc(cut), "{} {bp} N={n} t={t} X^{k}", g.label());
                    }
                }
            }
        }
    }
}
