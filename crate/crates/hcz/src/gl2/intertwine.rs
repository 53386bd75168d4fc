use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{fmt_rational, qi, GammaExpr, RatFunc, Rational};
use crate::error::{HczError, Result};

fn check_parity(eps: u8, nu: i64) -> Result<()> {
    if nu.rem_euclid(2) as u8 != eps % 2 {
        return Err(HczError::ParityMismatch { nu, eps: eps % 2 });
    }
    Ok(())
}

/// Γ((z+ε-1)/2)·Γ(1/2)/Γ((z+ε)/2).
fn lowest(eps: u8) -> GammaExpr {
    let e = qi(eps as i64);
    GammaExpr::gamma((&e - qi(1)) / qi(2), 1)
        .mul(&GammaExpr::sqrt_pi(1))
        .mul(&GammaExpr::gamma(e / qi(2), -1))
}

/// Coefficient of Φ_ν in T^st_χ(Φ_ν), ε = ε(m̲).
pub fn t_st(eps: u8, nu: i64) -> Result<GammaExpr> {
    check_parity(eps, nu)?;
    let e = eps as i64;
    let steps = (nu.abs() - e) / 2;
    let mut ratio = RatFunc::<Rational>::one();
    for j in 0..steps {
        // (2 - z + ε + 2j) / (z + ε + 2j)
        let top = RatFunc::linear(qi(-1), qi(2 + e + 2 * j));
        let bot = RatFunc::linear(qi(1), qi(e + 2 * j));
        ratio = ratio * top / bot;
    }
    if nu < 0 && eps % 2 == 1 {
        ratio = -ratio;
    }
    Ok(lowest(eps).mul_rational(&ratio).canonicalize())
}

/// The operator for χ† = χ' ⊗ ρ², i.e. z -> 2 - z.
pub fn t_st_dagger(eps: u8, nu: i64) -> Result<GammaExpr> {
    Ok(t_st(eps, nu)?.substitute(-1, &qi(2)).canonicalize())
}

/// Γ((z-1+ε)/2)Γ((1-z+ε)/2) / [Γ((z+ε)/2)Γ((2-z+ε)/2)].
pub fn lambda(eps: u8) -> GammaExpr {
    use crate::arith::Orientation::{Minus, Plus};
    let e = qi(eps as i64);
    GammaExpr::gamma_oriented(Plus, (&e - qi(1)) / qi(2), 1)
        .mul(&GammaExpr::gamma_oriented(Minus, (qi(1) + &e) / qi(2), 1))
        .mul(&GammaExpr::gamma_oriented(Plus, &e / qi(2), -1))
        .mul(&GammaExpr::gamma_oriented(Minus, (qi(2) + &e) / qi(2), -1))
}

/// T†·T = π·Λ for every K-type with |ν| ≤ max_nu.
pub fn composite_check(eps: u8, max_nu: i64) -> Result<bool> {
    let want = lambda(eps).mul(&GammaExpr::sqrt_pi(2));
    for nu in (-max_nu..=max_nu).filter(|n| n.rem_euclid(2) as u8 == eps % 2) {
        if t_st_dagger(eps, nu)?.mul(&t_st(eps, nu)?) != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// T^st divided by Γ((z+ε-1)/2).
pub fn t_norm(eps: u8, nu: i64) -> Result<GammaExpr> {
    let e = qi(eps as i64);
    Ok(t_st(eps, nu)?.mul(&GammaExpr::gamma((e - qi(1)) / qi(2), -1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleReport {
    pub eps: u8,
    pub window: i64,
    /// descending
    pub poles: Vec<i64>,
    pub simple: bool,
    /// every tested ν gave the same pole set
    pub consistent: bool,
}

/// Integer poles of T^st in [-window, window] across the given K-types.
pub fn poles_of_tst(eps: u8, window: i64, nus: &[i64]) -> Result<PoleReport> {
    let mut sets = Vec::new();
    let mut simple = true;
    for &nu in nus {
        let t = t_st(eps, nu)?;
        let mut poles = Vec::new();
        for z0 in (-window..=window).rev() {
            let ord = t.order_at(&qi(z0)).ok_or(HczError::ZeroFunction)?;
            if ord < 0 {
                simple &= ord == -1;
                poles.push(z0);
            }
        }
        sets.push(poles);
    }
    let poles = sets.first().cloned().unwrap_or_default();
    let consistent = sets.iter().all(|s| *s == poles);
    Ok(PoleReport { eps: eps % 2, window, poles, simple, consistent })
}

/// The expected list {1-ε, -1-ε, …} ∩ [-window, window], descending.
pub fn expected_poles(eps: u8, window: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut z = 1 - eps as i64;
    while z >= -window {
        if z <= window {
            out.push(z);
        }
        z -= 2;
    }
    out
}

/// T^alg_{λ+2ρ}: value 1 on Φ_l, zero outside |ν| ≤ l.
pub fn t_alg_plus(l: i64, nu: i64) -> Result<Rational> {
    check_parity(l.rem_euclid(2) as u8, nu)?;
    if nu.abs() > l {
        return Ok(Rational::zero());
    }
    let mut v = Rational::one();
    let mut cur = l;
    while cur > nu {
        v = -v * qi(l + cur) / qi(l + 2 - cur);
        cur -= 2;
    }
    Ok(v)
}

/// T^alg_{λ⁻}: value 1 on Φ_{l+2}, forced upward, zero on ν < l + 2.
pub fn t_alg_minus(l: i64, nu: i64) -> Result<Rational> {
    check_parity(l.rem_euclid(2) as u8, nu)?;
    if nu < l + 2 {
        return Ok(Rational::zero());
    }
    let mut v = Rational::one();
    let mut cur = l + 2;
    while cur < nu {
        v = v * qi(l + 2 + cur) / qi(cur - l);
        cur += 2;
    }
    Ok(v)
}

/// A value π^{k/2}·r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiValue {
    pub pi_half: i64,
    pub rational: Rational,
}

impl PiValue {
    pub fn new(pi_half: i64, rational: Rational) -> Self {
        PiValue { pi_half, rational }
    }

    pub fn to_f64(&self) -> f64 {
        crate::arith::rational_to_f64(&self.rational) * std::f64::consts::PI.powf(self.pi_half as f64 / 2.0)
    }
}

impl std::fmt::Display for PiValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let r = fmt_rational(&self.rational);
        match self.pi_half {
            0 => write!(f, "{r}"),
            2 => write!(f, "{r}·π"),
            k => write!(f, "{r}·π^({k}/2)"),
        }
    }
}

impl Serialize for PiValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub l: i64,
    pub eps: u8,
    /// T^st / T^alg_{λ+2ρ} on Φ_l at z = l + 2
    pub first: PiValue,
    /// T^st / T^alg_{λ⁻} on Φ_{l+2} at z = -l
    pub second: PiValue,
    pub displayed_first: PiValue,
    pub displayed_second: PiValue,
    pub first_agrees: bool,
    pub second_agrees: bool,
    /// the ratio is the same on every K-type of the summand
    pub first_constant: bool,
    pub second_constant: bool,
}

fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from_integer(num_bigint::BigInt::from(2).pow(k as u32))
    } else {
        Rational::one() / pow2(-k)
    }
}

fn value_at(e: &GammaExpr, z0: i64) -> Result<PiValue> {
    let (k, r) = e.eval_at(&qi(z0))?;
    Ok(PiValue::new(k, r))
}

/// Ratios of the standard to the algebraic intertwiners for χ = λ_ℝ.
pub fn compare_constants(l: i64) -> Result<CompareReport> {
    if l < 0 {
        return Err(HczError::Invalid(format!("compare needs l >= 0, got {l}")));
    }
    let eps = l.rem_euclid(2) as u8;
    let e = eps as i64;
    let first = value_at(&t_st(eps, l)?, l + 2)?;
    let second = value_at(&t_st(eps, l + 2)?, -l)?;
    let sign = if ((l - e) / 2) % 2 == 0 { qi(1) } else { qi(-1) };
    let displayed_first = PiValue::new(2, &sign * pow2((3 * l - e) / 2));
    let displayed_second = PiValue::new(2, &sign * pow2(-(l + 2 - e) / 2));

    let mut first_constant = true;
    for nu in (-l - 4..=l + 4).step_by(2) {
        let t = t_st(eps, nu)?;
        let alg = t_alg_plus(l, nu)?;
        let got = t.shift(&qi(l + 2));
        first_constant &= match got.order_at_zero() {
            Some(o) if o > 0 => alg.is_zero(),
            Some(0) => {
                let (k, r) = got.eval_at_zero()?;
                k == first.pi_half && r == &first.rational * &alg
            }
            _ => false,
        };
    }
    let mut second_constant = true;
    for nu in (l + 2..=l + 10).step_by(2) {
        let (k, r) = t_st(eps, nu)?.eval_at(&qi(-l))?;
        second_constant &= k == second.pi_half && r == &second.rational * t_alg_minus(l, nu)?;
    }
    Ok(CompareReport {
        l,
        eps,
        first_agrees: first == displayed_first,
        second_agrees: second == displayed_second,
        first,
        second,
        displayed_first,
        displayed_second,
        first_constant,
        second_constant,
    })
}
