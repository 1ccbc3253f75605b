//! Floating-point special functions and root finding.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::series::Rat;

type C = Complex64;

/// Bernoulli numbers `B_0..=B_n` with `B_1 = −1/2`.
pub fn bernoulli(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    b.push(Rat::ONE);
    for m in 1..=n {
        let mut acc = Rat::ZERO;
        for (k, bk) in b.iter().enumerate() {
            acc += &(&Rat::int(m as i64 + 1).binom(k as u32) * bk);
        }
        b.push(-(&acc / &Rat::int(m as i64 + 1)));
    }
    b
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn li2_bernoulli(z: C) -> C {
    // Li₂(z) = Σ_n B_n u^{n+1}/(n+1)!, u = −log(1−z), valid for |u| < 2π
    thread_local! {
        static COEFFS: Vec<f64> = bernoulli(40)
            .iter()
            .enumerate()
            .map(|(n, b)| b.to_f64() / factorial(n + 1))
            .collect();
    }
    let u = -(C::new(1.0, 0.0) - z).ln();
    COEFFS.with(|c| {
        let mut acc = C::new(0.0, 0.0);
        let mut p = u;
        for &cn in c.iter() {
            acc += p * cn;
            p *= u;
        }
        acc
    })
}

/// Principal-branch dilogarithm.
pub fn li2(z: C) -> C {
    let one = C::new(1.0, 0.0);
    if z.norm() == 0.0 {
        return C::new(0.0, 0.0);
    }
    if (z - one).norm() < 1e-300 {
        return C::new(PI * PI / 6.0, 0.0);
    }
    if z.norm() > 1.0 {
        // inversion
        let l = (-z).ln();
        return -li2_unit(one / z) - C::new(PI * PI / 6.0, 0.0) - 0.5 * l * l;
    }
    li2_unit(z)
}

fn li2_unit(z: C) -> C {
    let one = C::new(1.0, 0.0);
    if z.re > 0.5 {
        // reflection
        if (one - z).norm() == 0.0 {
            return C::new(PI * PI / 6.0, 0.0);
        }
        return -li2_bernoulli(one - z) + C::new(PI * PI / 6.0, 0.0) - z.ln() * (one - z).ln();
    }
    li2_bernoulli(z)
}

/// Eulerian numbers `A(n, k)`, k = 0..n.
fn eulerian_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for m in 1..=n {
        let mut next = vec![0.0; m + 1];
        for k in 0..m {
            let prev = |j: usize| if j < row.len() { row[j] } else { 0.0 };
            next[k] = (k as f64 + 1.0) * prev(k) + if k > 0 { (m - k) as f64 * prev(k - 1) } else { 0.0 };
        }
        row = next;
    }
    row
}

/// `Li_s(z)` for integer `s ≤ 2`.
pub fn polylog(s: i32, z: C) -> C {
    let one = C::new(1.0, 0.0);
    match s {
        2 => li2(z),
        1 => -(one - z).ln(),
        0 => z / (one - z),
        _ => {
            // Li_{−n}(z) = Σ_k A(n,k) z^{k+1} / (1−z)^{n+1}
            let n = (-s) as usize;
            let row = eulerian_row(n);
            let mut num = C::new(0.0, 0.0);
            for (k, a) in row.iter().enumerate().take(n) {
                num += z.powu(k as u32 + 1) * *a;
            }
            num / (one - z).powu(n as u32 + 1)
        }
    }
}

/// Evaluate `Σ c_k y^k` and its derivative by Horner.
pub fn horner(coeffs: &[C], y: C) -> (C, C) {
    let mut p = C::new(0.0, 0.0);
    let mut dp = C::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * y + p;
        p = p * y + c;
    }
    (p, dp)
}

/// All roots of `Σ c_k y^k` (ascending coefficients) by Aberth–Ehrlich
/// iteration followed by Newton polishing. Returns `None` if the iteration
/// does not settle.
pub fn poly_roots(coeffs: &[C]) -> Option<Vec<C>> {
    let mut c: Vec<C> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() == 0.0 {
        c.pop();
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Some(Vec::new());
    }
    let lead = c[deg];
    // Cauchy bound for the initial circle
    let radius = 1.0 + c[..deg].iter().map(|a| (a / lead).norm()).fold(0.0, f64::max);
    let mut z: Vec<C> = (0..deg)
        .map(|k| C::from_polar(radius, 2.0 * PI * (k as f64 + 0.25) / deg as f64 + 0.4))
        .collect();
    // a root is frozen once its step or its backward error reaches rounding level
    let mut done = vec![false; deg];
    for _ in 0..1000 {
        for i in 0..deg {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(&c, z[i]);
            let scale: f64 = c.iter().rev().fold(0.0, |acc, a| acc * z[i].norm() + a.norm());
            if p.norm() <= 4.0 * f64::EPSILON * deg as f64 * scale {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let s: C = (0..deg)
                .filter(|&j| j != i)
                .map(|j| C::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (C::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                if w.norm() < 1e-15 * z[i].norm().max(1.0) {
                    done[i] = true;
                }
            }
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }
    let converged = done.iter().all(|&d| d);
    if !converged {
        return None;
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&c, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    Some(z)
}

/// `(u;q)_n` for real `0 < q < 1`.
pub fn poch_finite(u: C, q: f64, n: usize) -> C {
    let mut acc = C::new(1.0, 0.0);
    let mut qk = 1.0;
    for _ in 0..n {
        acc *= C::new(1.0, 0.0) - u * qk;
        qk *= q;
    }
    acc
}

/// `(u;q)_∞` for real `0 < q < 1`, summed until factors are 1 to machine precision.
pub fn poch_inf(u: C, q: f64) -> C {
    let mut acc = C::new(1.0, 0.0);
    let mut term = u;
    while term.norm() > 1e-18 * acc.norm().max(1e-300) {
        acc *= C::new(1.0, 0.0) - term;
        term *= q;
    }
    acc
}

/// `log (u;q)_∞` as a sum of principal logs of the factors.
pub fn log_poch_inf(u: C, q: f64) -> C {
    let mut acc = C::new(0.0, 0.0);
    let mut term = u;
    while term.norm() > 1e-18 {
        acc += (C::new(1.0, 0.0) - term).ln();
        term *= q;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(8);
        assert_eq!(b[1], Rat::new(-1, 2));
        assert_eq!(b[2], Rat::new(1, 6));
        assert_eq!(b[3], Rat::ZERO);
        assert_eq!(b[4], Rat::new(-1, 30));
        assert_eq!(b[8], Rat::new(-1, 30));
    }

    #[test]
    fn li2_special_values() {
        let l2 = 2f64.ln();
        assert!(close(li2(C::new(-1.0, 0.0)), C::new(-PI * PI / 12.0, 0.0), 1e-14));
        assert!(close(li2(C::new(0.5, 0.0)), C::new(PI * PI / 12.0 - 0.5 * l2 * l2, 0.0), 1e-14));
        assert!(close(li2(C::new(1.0, 0.0)), C::new(PI * PI / 6.0, 0.0), 1e-14));
        let catalan = 0.915_965_594_177_219_015;
        assert!(close(li2(C::new(0.0, 1.0)), C::new(-PI * PI / 48.0, catalan), 1e-14));
        // Li₂(2) = π²/4 − iπ ln 2 on the principal branch (approached from below)
        let v = li2(C::new(2.0, -1e-300));
        assert!(close(v, C::new(PI * PI / 4.0, -PI * l2), 1e-13));
    }

    #[test]
    fn li2_against_defining_series() {
        let pts = [
            C::new(0.3, 0.2),
            C::new(-0.4, 0.1),
            C::new(0.1, -0.45),
            C::new(0.45, 0.0),
        ];
        for z in pts {
            let s: C = (1..200).map(|k| z.powu(k) / (k * k) as f64).sum();
            assert!(close(li2(z), s, 1e-14), "{z}");
        }
    }

    #[test]
    fn li2_derivative() {
        // d/dz Li₂(z) = −log(1−z)/z, checked off the cut at several radii
        for z in [C::new(0.7, 0.6), C::new(-2.5, 1.0), C::new(3.0, 0.5), C::new(0.9, -0.1)] {
            let h = 1e-6;
            let d = (li2(z + h) - li2(z - h)) / (2.0 * h);
            let expect = -(C::new(1.0, 0.0) - z).ln() / z;
            assert!(close(d, expect, 1e-8), "{z}");
        }
    }

    #[test]
    fn negative_order_polylogs() {
        let z = C::new(0.3, -0.1);
        for s in [1, 0, -1, -2, -3] {
            let series: C = (1..400).map(|k| z.powu(k) * (k as f64).powi(-s)).sum();
            assert!(close(polylog(s, z), series, 1e-12), "s={s}");
        }
    }

    #[test]
    fn roots_of_quadratic_and_cubic() {
        let r = poly_roots(&[C::new(-1.0, 0.0), C::new(1.0, 0.0), C::new(1.0, 0.0)]).unwrap();
        for y in r {
            assert!((y * y + y - 1.0).norm() < 1e-14);
        }
        let c = [C::new(6.0, 0.0), C::new(-11.0, 0.0), C::new(6.0, 0.0), C::new(-1.0, 0.0)];
        let mut r: Vec<f64> = poly_roots(&c).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((r[0] - 1.0).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-12 && (r[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn roots_spread_over_decades() {
        // (y − 1e-3)(y − 1)(y − 1e2 i), built from its roots
        let roots = [C::new(1e-3, 0.0), C::new(1.0, 0.0), C::new(0.0, 1e2)];
        let mut c = vec![C::new(1.0, 0.0)];
        for r in roots {
            let mut next = vec![C::new(0.0, 0.0); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            c = next;
        }
        let found = poly_roots(&c).unwrap();
        for r in roots {
            let best = found.iter().map(|z| (z - r).norm() / r.norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10, "{r}: {best}");
        }
    }

    #[test]
    fn pochhammer_numeric() {
        let q = 0.3;
        let u = C::new(0.2, 0.1);
        let full = poch_inf(u, q);
        let split = poch_finite(u, q, 4) * poch_inf(u * q.powi(4), q);
        assert!(close(full, split, 1e-15));
        assert!(close(log_poch_inf(u, q).exp(), full, 1e-14));
    }
}
