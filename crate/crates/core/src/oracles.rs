//! Matrix-level recomputation of metric functions from the underlying
//! homogeneous models: conjugation on traceless symmetric 3×3 matrices,
//! so(5) for the Berger space and su(3) for Eschenburg spaces.

use nalgebra::{Matrix3, SMatrix};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::profiles::MetricBlocks;

type M5 = SMatrix<f64, 5, 5>;
type C3 = Matrix3<Complex64>;

/// Gram matrix of (X₁*, X₂*, X₃*, Y₁*, Y₂*, Y₃*).
pub type Gram6 = SMatrix<f64, 6, 6>;

/// Diagonal 2×2 blocks of a Gram matrix, as metric functions.
pub fn blocks_from_gram(g: &Gram6) -> MetricBlocks {
    let mut b = MetricBlocks::default();
    for i in 0..3 {
        b.f[i] = g[(i, i)];
        b.g[i] = g[(i + 3, i + 3)];
        b.h[i] = g[(i, i + 3)];
    }
    b
}

/// Largest entry of the Gram matrix outside the (X_i, Y_i) blocks.
pub fn off_block_max(g: &Gram6) -> f64 {
    let mut m: f64 = 0.0;
    for r in 0..6 {
        for c in 0..6 {
            if r % 3 != c % 3 {
                m = m.max(g[(r, c)].abs());
            }
        }
    }
    m
}

fn skew3(i: usize, j: usize) -> Matrix3<f64> {
    let mut m = Matrix3::zeros();
    m[(i - 1, j - 1)] = 1.0;
    m[(j - 1, i - 1)] = -1.0;
    m
}

/// Orthonormal basis e₁..e₅ of traceless symmetric 3×3 matrices under tr AB.
pub fn sym_traceless_basis() -> [Matrix3<f64>; 5] {
    let s6 = 6f64.sqrt();
    let s2 = 2f64.sqrt();
    let sym = |i: usize, j: usize| {
        let mut m = Matrix3::zeros();
        m[(i - 1, j - 1)] = 1.0 / s2;
        m[(j - 1, i - 1)] = 1.0 / s2;
        m
    };
    [
        Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, -2.0)) / s6,
        Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, -1.0, 0.0)) / s2,
        sym(1, 2),
        sym(1, 3),
        sym(2, 3),
    ]
}

/// (f₁, f₂, f₃) = (|[E₁₂, γ]|², |[E₂₃, γ]|², |[E₁₃, γ]|²) with γ = cos t·e₁ + sin t·e₂.
pub fn s4_action_norms(t: f64) -> [f64; 3] {
    let e = sym_traceless_basis();
    let gamma = e[0] * t.cos() + e[1] * t.sin();
    let norm2 = |x: Matrix3<f64>| (x * x).trace();
    let field = |a: Matrix3<f64>| a * gamma - gamma * a;
    [
        norm2(field(skew3(1, 2))),
        norm2(field(skew3(2, 3))),
        norm2(field(skew3(1, 3))),
    ]
}

fn skew5(i: usize, j: usize) -> M5 {
    let mut m = M5::zeros();
    m[(i - 1, j - 1)] = 1.0;
    m[(j - 1, i - 1)] = -1.0;
    m
}

/// exp(s·A) for a generator of a plane rotation (A³ = −A).
fn plane_rotation<const N: usize>(a: &SMatrix<f64, N, N>, s: f64) -> SMatrix<f64, N, N> {
    SMatrix::<f64, N, N>::identity() + a * s.sin() + a * a * (1.0 - s.cos())
}

/// The so(3) spanned by H₁, H₂, H₃ inside so(5) (isotropy of B⁷).
pub fn b7_isotropy() -> [M5; 3] {
    let r3 = 3f64.sqrt();
    [
        skew5(2, 3) * 2.0 + skew5(4, 5),
        skew5(3, 4) + skew5(1, 5) * r3 - skew5(2, 5),
        skew5(3, 5) + skew5(1, 4) * r3 + skew5(2, 4),
    ]
}

fn q5(a: &M5, b: &M5) -> f64 {
    -0.5 * (a * b).trace()
}

/// Gram matrix of the B⁷ action fields. The quaternion axes j and k are
/// exchanged relative to the catalog numbering, so that the oracle output
/// lines up with X₂(t) = X₁(t + 2L), X₃(t) = X₁(2L − t).
pub fn b7_gram(t: f64) -> Gram6 {
    let h = b7_isotropy();
    let xs = [
        skew5(2, 3) + skew5(4, 5),
        skew5(2, 5) + skew5(3, 4),
        skew5(2, 4) - skew5(3, 5),
    ];
    let ys = [
        -skew5(2, 3) + skew5(4, 5),
        -skew5(2, 5) + skew5(3, 4),
        -skew5(2, 4) - skew5(3, 5),
    ];
    let g = plane_rotation(&skew5(1, 2), -t);
    let horizontal = |a: &M5| {
        let mut x = g * a * g.transpose();
        for hi in &h {
            x -= hi * (q5(&x, hi) / q5(hi, hi));
        }
        x
    };
    let fields: Vec<M5> = xs.iter().chain(ys.iter()).map(horizontal).collect();
    Gram6::from_fn(|r, c| q5(&fields[r], &fields[c]))
}

/// (f₁, g₁, h₁) of the Berger space from so(5).
pub fn b7_action_norms(t: f64) -> (f64, f64, f64) {
    let g = b7_gram(t);
    (g[(0, 0)], g[(3, 3)], g[(0, 3)])
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn e_kl(k: usize, l: usize) -> C3 {
    let mut m = C3::zeros();
    m[(k - 1, l - 1)] = c(1.0, 0.0);
    m[(l - 1, k - 1)] = c(-1.0, 0.0);
    m
}

fn i_kl(k: usize, l: usize) -> C3 {
    let mut m = C3::zeros();
    m[(k - 1, l - 1)] = c(0.0, 1.0);
    m[(l - 1, k - 1)] = c(0.0, 1.0);
    m
}

fn i_diag(a: f64, b: f64, d: f64) -> C3 {
    C3::from_diagonal(&nalgebra::Vector3::new(c(0.0, a), c(0.0, b), c(0.0, d)))
}

fn q3(a: &C3, b: &C3) -> f64 {
    -0.5 * (a * b).trace().re
}

/// Scaled inner product on su(3): Q on the complement of u(2) and ε·Q on u(2),
/// with u(2) embedded as diag(A, −tr A).
struct EschenburgMetric {
    eps: f64,
    k_basis: Vec<C3>,
}

impl EschenburgMetric {
    fn new(eps: f64) -> Self {
        let embed = |x: [[Complex64; 2]; 2]| {
            let mut m = C3::zeros();
            m[(0, 0)] = x[0][0];
            m[(0, 1)] = x[0][1];
            m[(1, 0)] = x[1][0];
            m[(1, 1)] = x[1][1];
            m[(2, 2)] = -(x[0][0] + x[1][1]);
            m
        };
        let z = c(0.0, 0.0);
        let raw = [
            embed([[c(0.0, 1.0), z], [z, c(0.0, -1.0)]]),
            embed([[z, c(1.0, 0.0)], [c(-1.0, 0.0), z]]),
            embed([[z, c(0.0, 1.0)], [c(0.0, 1.0), z]]),
            embed([[c(0.0, 1.0), z], [z, c(0.0, 1.0)]]),
        ];
        let mut k_basis: Vec<C3> = Vec::new();
        for mut b in raw {
            for o in &k_basis {
                b -= o * c(q3(&b, o), 0.0);
            }
            let n = q3(&b, &b).sqrt();
            k_basis.push(b / c(n, 0.0));
        }
        Self { eps, k_basis }
    }

    fn split(&self, a: &C3) -> (C3, C3) {
        let mut k = C3::zeros();
        for o in &self.k_basis {
            k += o * c(q3(a, o), 0.0);
        }
        (a - k, k)
    }

    fn inner(&self, a: &C3, b: &C3) -> f64 {
        let (ap, ak) = self.split(a);
        let (bp, bk) = self.split(b);
        q3(&ap, &bp) + self.eps * q3(&ak, &bk)
    }
}

#[derive(Debug, Clone)]
pub struct EschenburgReport {
    pub blocks: MetricBlocks,
    pub gram: Gram6,
    /// ε-norm² of the vertical vector v.
    pub v_norm2: f64,
    /// max |⟨X̄₂, v⟩|, |⟨X̄₃, v⟩|, |⟨Ȳ₂, v⟩|, |⟨Ȳ₃, v⟩| before projection.
    pub horizontality: f64,
}

/// Eschenburg space E_p from su(3) with the u(2)-scaled metric; action
/// fields are projected off the vertical vector v of the circle quotient.
pub fn eschenburg_oracle(p: i64, eps: f64, t: f64) -> Result<EschenburgReport> {
    if p < 1 {
        return Err(Error::InvalidParams(format!("p = {p} must be >= 1")));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidParams(format!("eps = {eps} must lie in (0, 1]")));
    }
    let metric = EschenburgMetric::new(eps);
    let e13 = e_kl(1, 3).map(|z| z.re);
    let g = plane_rotation(&e13, -t).map(|x| c(x, 0.0));
    let g_inv = g.transpose();
    let ad = |x: &C3| g * x * g_inv;
    let d = i_diag(1.0, -1.0, 0.0);
    let xs = [ad(&d), ad(&e_kl(1, 2)), ad(&i_kl(1, 2))];
    let ys = [-d, -e_kl(1, 2), -i_kl(1, 2)];
    let pf = p as f64;
    let v = ad(&i_diag(1.0, 1.0, pf)) - i_diag(0.0, 0.0, pf + 2.0);
    let v_norm2 = metric.inner(&v, &v);
    if v_norm2 < 1e-12 {
        return Err(Error::Domain(format!("vertical vector degenerate at t = {t}")));
    }
    let horizontality = [&xs[1], &xs[2], &ys[1], &ys[2]]
        .iter()
        .map(|a| metric.inner(a, &v).abs())
        .fold(0.0, f64::max);
    let horizontal = |a: &C3| a - v * c(metric.inner(a, &v) / v_norm2, 0.0);
    let fields: Vec<C3> = xs.iter().chain(ys.iter()).map(horizontal).collect();
    let gram = Gram6::from_fn(|r, cc| metric.inner(&fields[r], &fields[cc]));
    Ok(EschenburgReport { blocks: blocks_from_gram(&gram), gram, v_norm2, horizontality })
}

/// The printed closed form of |v|².
pub fn eschenburg_v_norm2_formula(p: i64, eps: f64, t: f64) -> f64 {
    let p = p as f64;
    let (s, c) = t.sin_cos();
    3.0 * eps + (1.0 - p).powi(2) * (1.0 - eps) * c * c * s * s + eps * (p + 2.0) * (p - 1.0) * s * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn basis_is_orthonormal() {
        let e = sym_traceless_basis();
        for a in 0..5 {
            for b in 0..5 {
                let ip = (e[a] * e[b]).trace();
                assert!((ip - if a == b { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn s4_values() {
        assert!(s4_action_norms(0.0)[0].abs() < 1e-15);
        assert!((s4_action_norms(PI / 2.0)[0] - 4.0).abs() < 1e-14);
        let v = s4_action_norms(PI / 6.0);
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] - 1.0).abs() < 1e-14 && (v[2] - 4.0).abs() < 1e-14);
    }

    #[test]
    fn b7_isotropy_norms() {
        let h = b7_isotropy();
        for a in 0..3 {
            for b in 0..3 {
                let expect = if a == b { 5.0 } else { 0.0 };
                assert!((q5(&h[a], &h[b]) - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn b7_values() {
        let (f, g, h) = b7_action_norms(0.0);
        assert!((f - 0.2).abs() < 1e-14 && (g - 1.8).abs() < 1e-14 && (h - 0.6).abs() < 1e-14);
        let (_, _, h) = b7_action_norms(PI / 2.0);
        assert!((h + 0.2).abs() < 1e-14);
    }

    #[test]
    fn eschenburg_v_at_zero() {
        for eps in [0.5, 0.9] {
            let r = eschenburg_oracle(3, eps, 0.0).unwrap();
            assert!((r.v_norm2 - 3.0 * eps).abs() < 1e-13);
        }
        assert!(eschenburg_oracle(0, 0.5, 0.1).is_err());
        assert!(eschenburg_oracle(2, 1.5, 0.1).is_err());
    }
}
