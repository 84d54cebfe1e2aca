//! Finite-difference helpers.
//!
//! All stencils are fourth order. Callers that work with even functions pass
//! closures that already reflect their argument.

/// `f'(t)` by the five-point central stencil; equal to one Richardson step
/// on the two-point central difference with step `h/2`.
pub fn first_derivative<F: Fn(f64) -> f64>(f: F, t: f64, h: f64) -> f64 {
    (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h)
}

/// `f''(t)` by the five-point central stencil.
pub fn second_derivative<F: Fn(f64) -> f64>(f: F, t: f64, h: f64) -> f64 {
    let c = f(t);
    (-f(t - 2.0 * h) + 16.0 * f(t - h) - 30.0 * c + 16.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h * h)
}

/// `f''(t) + (k/t) f'(t)` for `t > 0`.
pub fn bessel_operator<F: Fn(f64) -> f64>(f: F, k: f64, t: f64, h: f64) -> f64 {
    let (m2, m1, c, p1, p2) = (f(t - 2.0 * h), f(t - h), f(t), f(t + h), f(t + 2.0 * h));
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
    d2 + k / t * d1
}

/// Second-order one-sided `f'(0)` from `f(0), f(h), f(2h)`.
pub fn one_sided_first(f0: f64, f1: f64, f2: f64, h: f64) -> f64 {
    (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h)
}

/// `((1/t) d/dt)^j v(t)` for an even, smooth `v`.
///
/// `j = 1` is a five-point derivative in `t` divided by `t`. Higher powers
/// use `(1/t d/dt)^j = 2^j d^j/dz^j` with `z = t²`, evaluated by one
/// fourth-order stencil in `z` (step `10h(1+t)`). Near the origin the stencil
/// is one-sided so that it never samples `z < 0`.
pub fn inverse_t_derivative_power<F: Fn(f64) -> f64>(v: &F, j: usize, t: f64, h: f64) -> f64 {
    let t = t.abs();
    match j {
        0 => v(t),
        1 => first_derivative(|s| v(s.abs()), t, h) / t,
        _ => {
            let z = t * t;
            let dz = 10.0 * h * (1.0 + t);
            let points = j + 4;
            let half = 0.5 * (points - 1) as f64;
            let start = (z - half * dz).max(0.0);
            let nodes: Vec<f64> = (0..points).map(|i| start + i as f64 * dz).collect();
            let weights = stencil_weights(z, &nodes, j);
            let sum: f64 = nodes.iter().zip(&weights).map(|(zi, c)| c * v(zi.sqrt())).sum();
            2f64.powi(j as i32) * sum
        }
    }
}

/// Finite-difference weights for the `order`-th derivative at `x0` on
/// arbitrary distinct `nodes` (Fornberg's recursion).
pub fn stencil_weights(x0: f64, nodes: &[f64], order: usize) -> Vec<f64> {
    let n = nodes.len();
    // c[i][m]: weight of node i for derivative m
    let mut c = vec![vec![0.0; order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for jj in 0..i {
            let c3 = nodes[i] - nodes[jj];
            c2 *= c3;
            if jj == i - 1 {
                for m in (1..=mn).rev() {
                    c[i][m] = c1 * (m as f64 * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for m in (1..=mn).rev() {
                c[jj][m] = (c4 * c[jj][m] - m as f64 * c[jj][m - 1]) / c3;
            }
            c[jj][0] = c4 * c[jj][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_are_exact_on_quartics() {
        let f = |t: f64| 3.0 - t + 2.0 * t * t - 0.5 * t.powi(3) + 0.25 * t.powi(4);
        let df = |t: f64| -1.0 + 4.0 * t - 1.5 * t * t + t.powi(3);
        let ddf = |t: f64| 4.0 - 3.0 * t + 3.0 * t * t;
        for t in [-1.0, 0.0, 0.7, 2.0] {
            assert!((first_derivative(f, t, 0.1) - df(t)).abs() < 1e-12);
            assert!((second_derivative(f, t, 0.1) - ddf(t)).abs() < 1e-10);
        }
    }

    #[test]
    fn bessel_operator_on_power() {
        // B_k t² = 2 + 2k
        let k = 2.5;
        assert!((bessel_operator(|t| t * t, k, 0.8, 1e-2) - (2.0 + 2.0 * k)).abs() < 1e-10);
    }

    #[test]
    fn inverse_t_derivative_of_gaussian() {
        // (1/t d/dt)^j e^{-t²/2} = (-1)^j e^{-t²/2}
        let v = |t: f64| (-0.5 * t * t).exp();
        for j in 0..=3 {
            for t in [1e-4, 0.05, 0.5, 1.5] {
                let got = inverse_t_derivative_power(&v, j, t, 1e-3);
                let want = if j % 2 == 0 { 1.0 } else { -1.0 } * v(t);
                let tol = if j <= 1 { 1e-8 } else { 1e-6 };
                assert!((got - want).abs() < tol, "j={j} t={t}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn stencil_weights_reproduce_known_formulas() {
        let w = stencil_weights(0.0, &[-1.0, 0.0, 1.0], 2);
        for (a, b) in w.iter().zip([1.0, -2.0, 1.0]) {
            assert!((a - b).abs() < 1e-14);
        }
        let w = stencil_weights(0.0, &[0.0, 1.0, 2.0], 1);
        for (a, b) in w.iter().zip([-1.5, 2.0, -0.5]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn one_sided_first_is_second_order() {
        let f = |t: f64| (t + 0.3).sin();
        let h = 1e-3;
        assert!((one_sided_first(f(0.0), f(h), f(2.0 * h), h) - 0.3f64.cos()).abs() < 1e-6);
    }
}
