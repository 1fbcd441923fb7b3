use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel on `[a, b]`: (K15 estimate, |K15 - G7|).
pub fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive integration settings.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self { abs_tol: 1e-14, rel_tol: 1e-13, max_panels: 4000 }
    }
}

impl Quadrature {
    /// Globally adaptive bisection, always refining the worst panel.
    pub fn run<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> Result<f64> {
        if a == b {
            return Ok(0.0);
        }
        let (v, e) = gauss_kronrod(&mut f, a, b);
        let mut panels = vec![(a, b, v, e)];
        loop {
            let total: f64 = panels.iter().map(|p| p.2).sum();
            let err: f64 = panels.iter().map(|p| p.3).sum();
            if !total.is_finite() {
                return Err(Error::Quadrature { a, b, err: f64::INFINITY });
            }
            if err <= self.abs_tol.max(self.rel_tol * total.abs()) {
                return Ok(total);
            }
            if panels.len() >= self.max_panels {
                return Err(Error::Quadrature { a, b, err });
            }
            let worst = panels
                .iter()
                .enumerate()
                .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
                .map(|(i, _)| i)
                .unwrap_or(0);
            let (pa, pb, _, _) = panels.swap_remove(worst);
            let mid = 0.5 * (pa + pb);
            if mid <= pa || mid >= pb {
                // Panel cannot be split further in double precision.
                return Ok(total);
            }
            let (v1, e1) = gauss_kronrod(&mut f, pa, mid);
            let (v2, e2) = gauss_kronrod(&mut f, mid, pb);
            panels.push((pa, mid, v1, e1));
            panels.push((mid, pb, v2, e2));
        }
    }
}

/// Integrate `f` over `[a, b]` with default tolerances.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64) -> Result<f64> {
    Quadrature::default().run(f, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn single_panel_exact_for_polynomials() {
        let mut f = |x: f64| x.powi(20) - 3.0 * x.powi(7) + 1.0;
        let (v, _) = gauss_kronrod(&mut f, -1.0, 1.0);
        assert!((v - (2.0 / 21.0 + 2.0)).abs() < 1e-14);
    }

    #[test]
    fn adaptive_sine() {
        let v = integrate(f64::sin, 0.0, PI).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_sqrt_endpoint() {
        let v = integrate(f64::sqrt, 0.0, 1.0).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn nonfinite_is_error() {
        assert!(integrate(|x| 1.0 / x, -1.0, 1.0).is_err());
    }
}
