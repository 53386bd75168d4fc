//! Products  R(z) · π^{k/2} · ∏ Γ(±z/2 + q)^e  with R a rational function.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{q, qi, Poly, RatFunc, Rational};
use crate::error::{HczError, Result};

/// Sign of z in a Gamma argument: `Plus` is Γ(z/2 + q), `Minus` is Γ(-z/2 + q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Plus => 1,
            Orientation::Minus => -1,
        }
    }

    fn flip(self) -> Self {
        match self {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFactor {
    pub orientation: Orientation,
    pub shift: Rational,
    pub exp: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaExpr {
    prefactor: RatFunc<Rational>,
    pi_half: i64,
    factors: BTreeMap<(Orientation, Rational), i64>,
}

impl Default for GammaExpr {
    fn default() -> Self {
        Self::identity()
    }
}

impl GammaExpr {
    pub fn identity() -> Self {
        GammaExpr { prefactor: RatFunc::one(), pi_half: 0, factors: BTreeMap::new() }
    }

    pub fn from_parts(prefactor: RatFunc<Rational>, pi_half: i64, factors: &[GammaFactor]) -> Self {
        let mut e = GammaExpr { prefactor, pi_half, factors: BTreeMap::new() };
        for f in factors {
            e.push_factor(f.orientation, f.shift.clone(), f.exp);
        }
        e
    }

    pub fn rational(r: RatFunc<Rational>) -> Self {
        GammaExpr { prefactor: r, ..Self::identity() }
    }

    pub fn constant(c: Rational, pi_half: i64) -> Self {
        GammaExpr { prefactor: RatFunc::constant(c), pi_half, factors: BTreeMap::new() }
    }

    /// Γ(z/2 + shift)^exp, not canonicalized.
    pub fn gamma(shift: Rational, exp: i64) -> Self {
        Self::gamma_oriented(Orientation::Plus, shift, exp)
    }

    pub fn gamma_oriented(o: Orientation, shift: Rational, exp: i64) -> Self {
        let mut e = Self::identity();
        e.push_factor(o, shift, exp);
        e
    }

    /// Γ(1/2)^k = π^{k/2}.
    pub fn sqrt_pi(k: i64) -> Self {
        GammaExpr { pi_half: k, ..Self::identity() }
    }

    fn push_factor(&mut self, o: Orientation, shift: Rational, exp: i64) {
        if exp == 0 {
            return;
        }
        let slot = self.factors.entry((o, shift)).or_insert(0);
        *slot += exp;
        if *slot == 0 {
            self.factors.retain(|_, v| *v != 0);
        }
    }

    pub fn prefactor(&self) -> &RatFunc<Rational> {
        &self.prefactor
    }

    pub fn pi_half(&self) -> i64 {
        self.pi_half
    }

    pub fn factors(&self) -> Vec<GammaFactor> {
        self.factors
            .iter()
            .map(|((o, s), e)| GammaFactor { orientation: *o, shift: s.clone(), exp: *e })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    pub fn is_canonical(&self) -> bool {
        self.factors.keys().all(|(_, s)| s.is_positive() && *s <= qi(1))
    }

    pub fn mul(&self, o: &GammaExpr) -> GammaExpr {
        let mut out = GammaExpr {
            prefactor: self.prefactor.clone() * o.prefactor.clone(),
            pi_half: self.pi_half + o.pi_half,
            factors: self.factors.clone(),
        };
        for ((or, s), e) in &o.factors {
            out.push_factor(*or, s.clone(), *e);
        }
        out.canonicalize()
    }

    pub fn inv(&self) -> GammaExpr {
        GammaExpr {
            prefactor: self.prefactor.inv(),
            pi_half: -self.pi_half,
            factors: self.factors.iter().map(|(k, e)| (k.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, o: &GammaExpr) -> GammaExpr {
        self.mul(&o.inv())
    }

    pub fn mul_rational(&self, r: &RatFunc<Rational>) -> GammaExpr {
        GammaExpr { prefactor: self.prefactor.clone() * r.clone(), ..self.clone() }
    }

    /// z^k · self.
    pub fn mul_z_pow(&self, k: i64) -> GammaExpr {
        self.mul_rational(&RatFunc::z().powi(k))
    }

    /// Moves every shift into (0, 1] using Γ(s+1) = s·Γ(s).
    pub fn canonicalize(&self) -> GammaExpr {
        // σz/2 + c = (σ/2)(z + 2σc); collect roots so that factors cancel before expanding
        let mut scalar = qi(1);
        let mut roots: BTreeMap<Rational, i64> = BTreeMap::new();
        let mut absorb = |o: Orientation, c: &Rational, e: i64| {
            let half = q(o.sign(), 2);
            let r = c * qi(2 * o.sign());
            scalar *= if e > 0 { half.pow(e as i32) } else { half.recip().pow((-e) as i32) };
            *roots.entry(r).or_insert(0) += e;
        };
        let one = qi(1);
        let mut factors = BTreeMap::new();
        for ((o, s), e) in &self.factors {
            let mut s = s.clone();
            while s > one {
                s -= &one;
                absorb(*o, &s, *e);
            }
            while !s.is_positive() {
                absorb(*o, &s, -*e);
                s += &one;
            }
            let slot = factors.entry((*o, s)).or_insert(0i64);
            *slot += *e;
        }
        factors.retain(|_, v| *v != 0);
        let mut num = Poly::<Rational>::constant(scalar);
        let mut den = Poly::<Rational>::one();
        for (r, e) in roots {
            let lin = Poly::linear(qi(1), r).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &lin;
            } else if e < 0 {
                den = &den * &lin;
            }
        }
        let prefactor = self.prefactor.clone() * RatFunc::coprime(num, den);
        GammaExpr { prefactor, pi_half: self.pi_half, factors }
    }

    /// Order of vanishing at z = 0; `None` for the zero expression.
    pub fn order_at_zero(&self) -> Option<i64> {
        self.canonicalize().prefactor.order_at_zero()
    }

    /// Leading behaviour at z = 0: (order, π-half-power, leading rational coefficient).
    pub fn leading_at_zero(&self) -> Result<(i64, i64, Rational)> {
        let c = self.canonicalize();
        let (order, lead) = c.prefactor.leading_at_zero().ok_or(HczError::ZeroFunction)?;
        // at z = 0 both orientations give Γ(shift); merge them
        let mut merged: BTreeMap<Rational, i64> = BTreeMap::new();
        for ((_, s), e) in &c.factors {
            *merged.entry(s.clone()).or_insert(0) += e;
        }
        let mut pi_half = c.pi_half;
        for (s, e) in merged {
            if e == 0 || s == qi(1) {
                continue;
            }
            if s == q(1, 2) {
                pi_half += e;
            } else {
                return Err(HczError::IrrationalGamma { arg: s.to_string() });
            }
        }
        Ok((order, pi_half, lead))
    }

    /// Value at z = 0 as (π-half-power, rational).
    pub fn eval_at_zero(&self) -> Result<(i64, Rational)> {
        let order = self.order_at_zero().ok_or(HczError::ZeroFunction)?;
        if order < 0 {
            return Err(HczError::Pole { order: -order });
        }
        if order > 0 {
            return Err(HczError::Zero { order });
        }
        let (_, pi_half, v) = self.leading_at_zero()?;
        Ok((pi_half, v))
    }

    /// Substitution z -> a·z + b with a = ±1.
    pub fn substitute(&self, a: i64, b: &Rational) -> GammaExpr {
        assert!(a == 1 || a == -1, "only z -> ±z + b is supported");
        let prefactor = self.prefactor.compose_linear(&qi(a), b);
        let mut out = GammaExpr { prefactor, pi_half: self.pi_half, factors: BTreeMap::new() };
        for ((o, s), e) in &self.factors {
            // Γ(σ(a z + b)/2 + s) = Γ(σa·z/2 + s + σb/2)
            let o2 = if a == 1 { *o } else { o.flip() };
            let s2 = s + b * q(o.sign(), 2);
            out.push_factor(o2, s2, *e);
        }
        out
    }

    /// The function z -> self(z + z0).
    pub fn shift(&self, z0: &Rational) -> GammaExpr {
        self.substitute(1, z0)
    }

    pub fn order_at(&self, z0: &Rational) -> Option<i64> {
        self.shift(z0).order_at_zero()
    }

    pub fn eval_at(&self, z0: &Rational) -> Result<(i64, Rational)> {
        self.shift(z0).eval_at_zero()
    }

    pub fn to_record(&self) -> GammaRecord {
        let (n, d) = self.prefactor.integer_parts();
        let list = |v: &[BigInt]| format!("[{}]", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
        GammaRecord {
            prefactor: format!("{}/{}", list(&n), list(&d)),
            pi_half: self.pi_half,
            gammas: self
                .factors
                .iter()
                .map(|((o, s), e)| GammaRecordEntry { shift: s.to_string(), exp: *e, z_sign: o.sign() as i8 })
                .collect(),
        }
    }

    pub fn from_record(r: &GammaRecord) -> Result<GammaExpr> {
        let bad = || HczError::Parse(format!("bad prefactor '{}'", r.prefactor));
        let (n, d) = r.prefactor.split_once("]/[").ok_or_else(bad)?;
        let parse_list = |s: &str| -> Result<Poly<Rational>> {
            let s = s.trim_matches(|c| c == '[' || c == ']');
            if s.is_empty() {
                return Ok(Poly::zero());
            }
            let cs = s
                .split(',')
                .map(|t| BigInt::from_str(t.trim()).map(Rational::from_integer).map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Poly::new(cs))
        };
        let den = parse_list(d)?;
        if den.is_zero() {
            return Err(bad());
        }
        let mut e = GammaExpr { prefactor: RatFunc::new(parse_list(n)?, den), pi_half: r.pi_half, factors: BTreeMap::new() };
        for g in &r.gammas {
            let s = Rational::from_str(&g.shift).map_err(|_| HczError::Parse(format!("bad shift '{}'", g.shift)))?;
            let o = match g.z_sign {
                1 => Orientation::Plus,
                -1 => Orientation::Minus,
                x => return Err(HczError::Parse(format!("bad z_sign {x}"))),
            };
            e.push_factor(o, s, g.exp);
        }
        Ok(e)
    }
}

impl fmt::Display for GammaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.prefactor)?;
        if self.pi_half != 0 {
            write!(f, " · π^({}/2)", self.pi_half)?;
        }
        for ((o, s), e) in &self.factors {
            let z = match o {
                Orientation::Plus => "z/2",
                Orientation::Minus => "-z/2",
            };
            write!(f, " · Γ({z}+{s})")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

fn plus_sign() -> i8 {
    1
}

fn is_plus(s: &i8) -> bool {
    *s == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaRecordEntry {
    pub shift: String,
    pub exp: i64,
    #[serde(default = "plus_sign", skip_serializing_if = "is_plus")]
    pub z_sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaRecord {
    pub prefactor: String,
    pub pi_half: i64,
    pub gammas: Vec<GammaRecordEntry>,
}

impl One for GammaExpr {
    fn one() -> Self {
        Self::identity()
    }
}

impl std::ops::Mul for GammaExpr {
    type Output = GammaExpr;
    fn mul(self, o: GammaExpr) -> GammaExpr {
        GammaExpr::mul(&self, &o)
    }
}
