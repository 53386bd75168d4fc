//! Floating-point oracle: Lanczos Gamma, numeric evaluation of Gamma
//! expressions and direct quadrature of the GL(2) intertwining integral.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::arith::{rational_to_f64, GammaExpr, Poly, Rational};
use crate::error::{HczError, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real x, with reflection below 1/2.
pub fn gamma_num(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        return Err(HczError::PoleArgument(x));
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        return Ok(PI / (s * gamma_num(1.0 - x)?));
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    Ok((2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a)
}

// exact at the binary value of z: expanded products of linear factors cancel badly in f64
fn poly_exact(p: &Poly<Rational>, z: &Rational) -> Rational {
    p.coeffs().iter().rev().fold(Rational::zero(), |acc, c| acc * z + c)
}

/// Numeric value of a Gamma expression at real z.
pub fn ge_eval_numeric(e: &GammaExpr, z: f64) -> Result<f64> {
    let pre = e.prefactor();
    let zq = Rational::from_float(z).ok_or(HczError::PoleArgument(z))?;
    let den = poly_exact(pre.den(), &zq);
    if den.is_zero() {
        return Err(HczError::PoleArgument(z));
    }
    let mut v = rational_to_f64(&(poly_exact(pre.num(), &zq) / den)) * PI.powf(e.pi_half() as f64 / 2.0);
    for f in e.factors() {
        let arg = f.orientation.sign() as f64 * z / 2.0 + rational_to_f64(&f.shift);
        v *= gamma_num(arg)?.powi(f.exp as i32);
    }
    Ok(v)
}

/// (2a/(z-1))·tan^a(πz/2) with a = 1 for ε = 0 and a = -1 for ε = 1.
pub fn lambda_closed_form(eps: u8, z: f64) -> f64 {
    let t = (PI * z / 2.0).tan();
    if eps % 2 == 0 {
        2.0 / (z - 1.0) * t
    } else {
        -2.0 / (z - 1.0) / t
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericConfig {
    /// absolute tolerance of the adaptive rule
    pub quadrature_tol: f64,
    pub max_depth: u32,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig { quadrature_tol: 1e-10, max_depth: 40 }
    }
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const K15_W: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const G7_W: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// (Kronrod estimate, |Kronrod - Gauss|) on [a, b].
fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = Complex64::new(0.0, 0.0);
    let mut g = Complex64::new(0.0, 0.0);
    for i in 0..8 {
        let x = GK_NODES[i];
        let pair = if x == 0.0 { f(c) } else { f(c - h * x) + f(c + h * x) };
        k += pair * K15_W[i];
        // Gauss nodes are the odd-indexed Kronrod nodes
        if i % 2 == 1 {
            g += pair * G7_W[i / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

fn adaptive<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Result<Complex64> {
    let (v, err) = gk15(f, a, b);
    if err <= tol.max(1e-15 * v.norm()).max(1e-18) {
        return Ok(v);
    }
    if depth == 0 {
        return Err(HczError::ConvergenceFailure(format!("error {err:.3e} on [{a}, {b}]")));
    }
    let m = 0.5 * (a + b);
    Ok(adaptive(f, a, m, tol / 2.0, depth - 1)? + adaptive(f, m, b, tol / 2.0, depth - 1)?)
}

/// ∫ f(w·n(u)) du for f = Φ_ν with u = tan θ:
/// ∫_{-π/2}^{π/2} cos^{z-2}θ · e^{iνφ(θ)} dθ, φ = atan2(1, -tan θ).
pub fn intertwine_quadrature(z: f64, nu: i64, cfg: &NumericConfig) -> Result<Complex64> {
    if z <= 1.0 {
        return Err(HczError::ConvergenceFailure(format!("integral diverges for z = {z} <= 1")));
    }
    let f = |theta: f64| {
        let c = theta.cos();
        let phi = 1f64.atan2(-theta.tan());
        Complex64::from_polar(c.powf(z - 2.0), nu as f64 * phi)
    };
    let h = PI / 2.0;
    // split at 0 so the phase jump of atan2 never sits inside a panel
    Ok(adaptive(&f, -h, 0.0, cfg.quadrature_tol, cfg.max_depth)? + adaptive(&f, 0.0, h, cfg.quadrature_tol, cfg.max_depth)?)
}

/// i^ε·T^st(ν) at z, the value the quadrature should reproduce.
pub fn tst_reference(eps: u8, nu: i64, z: f64) -> Result<Complex64> {
    let t = crate::gl2::t_st(eps, nu)?;
    let v = ge_eval_numeric(&t, z)?;
    let i_eps = if eps % 2 == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 1.0) };
    Ok(i_eps * v)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

pub fn rel_err_c(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Relative error, absolute when the reference is an exact zero.
pub fn quad_err(got: Complex64, want: Complex64) -> f64 {
    if want.norm() < 1e-12 {
        got.norm()
    } else {
        rel_err_c(got, want)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qi;
    use crate::gl2::lambda;

    #[test]
    fn gamma_values() {
        assert!(rel_err(gamma_num(0.5).unwrap(), PI.sqrt()) < 1e-14);
        assert!(rel_err(gamma_num(5.0).unwrap(), 24.0) < 1e-13);
        assert!(rel_err(gamma_num(-0.25).unwrap(), -4.0 * gamma_num(0.75).unwrap()) < 1e-13);
        assert!(matches!(gamma_num(-2.0), Err(HczError::PoleArgument(_))));
    }

    #[test]
    fn expr_values() {
        let e = crate::gl2::t_st(0, 0).unwrap().shift(&qi(4));
        assert!(rel_err(ge_eval_numeric(&e, 0.0).unwrap(), PI / 2.0) < 1e-13);
        assert_eq!(ge_eval_numeric(&GammaExpr::identity(), 3.3).unwrap(), 1.0);
        assert!((ge_eval_numeric(&lambda(0), 0.5).unwrap() + 4.0).abs() < 1e-9);
    }

    #[test]
    fn lambda_closed() {
        for eps in 0..2u8 {
            for z in [0.3, 1.7, 2.2, 3.9, 5.5] {
                let a = ge_eval_numeric(&lambda(eps), z).unwrap();
                assert!(rel_err(a, lambda_closed_form(eps, z)) < 1e-9, "eps={eps} z={z}");
            }
        }
    }

    #[test]
    fn quadrature_anchors() {
        let cfg = NumericConfig::default();
        assert!(rel_err_c(intertwine_quadrature(4.0, 0, &cfg).unwrap(), Complex64::new(PI / 2.0, 0.0)) < 1e-10);
        assert!(rel_err_c(intertwine_quadrature(3.0, 0, &cfg).unwrap(), Complex64::new(2.0, 0.0)) < 1e-10);
        for z in [2.5, 3.0, 4.0, 5.5] {
            for nu in -4i64..=4 {
                let eps = nu.rem_euclid(2) as u8;
                let got = intertwine_quadrature(z, nu, &cfg).unwrap();
                let want = tst_reference(eps, nu, z).unwrap();
                assert!(quad_err(got, want) < 1e-8, "z={z} nu={nu}: {got} vs {want}");
            }
        }
    }
}
