//! Small numerical building blocks: forward-mode duals, adaptive quadrature,
//! polynomial extrapolation and 2x2 symmetric eigenvalues.

mod dual;
mod quad;

pub use dual::{Dual, Scalar};
pub use quad::{gauss_kronrod, integrate, Quadrature};

/// Evaluate a polynomial given coefficients from the highest degree down.
pub fn horner<S: Scalar>(x: S, coeffs: &[f64]) -> S {
    let mut acc = S::from_f64(coeffs[0]);
    for &c in &coeffs[1..] {
        acc = acc * x + c;
    }
    acc
}

/// Neville extrapolation of samples `(h_k, v_k)` to `h = 0`.
pub fn extrapolate_to_zero(hs: &[f64], vs: &[f64]) -> f64 {
    assert_eq!(hs.len(), vs.len());
    let mut p = vs.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (hs[i + m] * p[i] - hs[i] * p[i + 1]) / (hs[i + m] - hs[i]);
        }
    }
    p[0]
}

/// Eigenvalues (ascending) of the symmetric matrix [[a, b], [b, c]].
pub fn sym2_eigenvalues(a: f64, b: f64, c: f64) -> (f64, f64) {
    let mean = 0.5 * (a + c);
    let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    (mean - rad, mean + rad)
}

/// `n` equally spaced points covering `[a, b]` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|k| if k == n - 1 { b } else { a + step * k as f64 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_matches_direct() {
        let v: f64 = horner(2.0, &[1.0, -3.0, 0.0, 5.0]);
        assert_eq!(v, 8.0 - 12.0 + 5.0);
    }

    #[test]
    fn neville_recovers_polynomial_limit() {
        let f = |h: f64| 3.0 + 2.0 * h - h * h;
        let hs = [0.1, 0.05, 0.025];
        let vs: Vec<f64> = hs.iter().map(|&h| f(h)).collect();
        assert!((extrapolate_to_zero(&hs, &vs) - 3.0).abs() < 1e-13);
    }

    #[test]
    fn eigen_2x2() {
        let (l0, l1) = sym2_eigenvalues(2.0, 1.0, 2.0);
        assert!((l0 - 1.0).abs() < 1e-15 && (l1 - 3.0).abs() < 1e-15);
    }

    #[test]
    fn linspace_endpoints_exact() {
        let g = linspace(0.0, std::f64::consts::PI / 3.0, 1001);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[1000], std::f64::consts::PI / 3.0);
    }
}
