use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Field, HasI, Poly, Rational};

/// num/den with coprime parts and monic denominator; zero is 0/1.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.leading();
        let inv = F::one() / lead;
        RatFunc { num: n.scale(&inv), den: d.scale(&inv) }
    }

    /// num/den already known to be coprime; only normalizes the denominator.
    pub fn coprime(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let inv = F::one() / den.leading();
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn linear(a: F, b: F) -> Self {
        Self::from_poly(Poly::linear(a, b))
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverting zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn powi(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        RatFunc { num: base.num.pow(k), den: base.den.pow(k) }
    }

    /// Value at x, None at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Order of vanishing at z = 0 (negative for a pole); None for the zero function.
    pub fn order_at_zero(&self) -> Option<i64> {
        let n = self.num.order_at_zero()? as i64;
        let d = self.den.order_at_zero().expect("nonzero denominator") as i64;
        Some(n - d)
    }

    /// Leading Laurent coefficient at z = 0.
    pub fn leading_at_zero(&self) -> Option<(i64, F)> {
        let on = self.num.order_at_zero()?;
        let od = self.den.order_at_zero().expect("nonzero denominator");
        Some((on as i64 - od as i64, self.num.coeff(on) / self.den.coeff(od)))
    }

    /// f(a·z + b).
    pub fn compose_linear(&self, a: &F, b: &F) -> Self {
        Self::new(self.num.compose_linear(a, b), self.den.compose_linear(a, b))
    }
}

impl RatFunc<Rational> {
    /// Common integer scaling of both parts: (numerator, denominator) with
    /// integral coefficients and positive leading denominator coefficient.
    pub fn integer_parts(&self) -> (Vec<num_bigint::BigInt>, Vec<num_bigint::BigInt>) {
        use num_integer::Integer;
        use num_traits::One;
        let mut l = num_bigint::BigInt::one();
        for c in self.num.coeffs().iter().chain(self.den.coeffs()) {
            l = l.lcm(c.denom());
        }
        let mut g = num_bigint::BigInt::from(0);
        let scaled = |p: &Poly<Rational>| -> Vec<num_bigint::BigInt> {
            p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
        };
        let (n, d) = (scaled(&self.num), scaled(&self.den));
        for c in n.iter().chain(d.iter()) {
            g = g.gcd(c);
        }
        if g == num_bigint::BigInt::from(0) {
            g = num_bigint::BigInt::one();
        }
        (n.into_iter().map(|c| c / &g).collect(), d.into_iter().map(|c| c / &g).collect())
    }
}

impl<F: Field> Add for RatFunc<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den);
        }
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<F: Field> Sub for RatFunc<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Field> Mul for RatFunc<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        // both sides are reduced, so only cross terms can cancel
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let n = &self.num.div_rem(&g1).0 * &o.num.div_rem(&g2).0;
        let d = &self.den.div_rem(&g2).0 * &o.den.div_rem(&g1).0;
        let inv = F::one() / d.leading();
        RatFunc { num: n.scale(&inv), den: d.scale(&inv) }
    }
}

impl<F: Field> Div for RatFunc<F> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl<F: Field> Neg for RatFunc<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -&self.num, den: self.den }
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Field> num_traits::Zero for RatFunc<F> {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> num_traits::One for RatFunc<F> {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn from_rational(q: Rational) -> Self {
        RatFunc::constant(F::from_rational(q))
    }
}

impl<F: HasI> HasI for RatFunc<F> {
    fn i() -> Self {
        RatFunc::constant(F::i())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn normalizes_common_factors() {
        let r = RatFunc::new(&p(&[2, 2]) * &p(&[0, 3]), &p(&[1, 1]) * &p(&[0, 0, 6]));
        assert_eq!(r.num(), &p(&[1]));
        assert_eq!(r.den(), &p(&[0, 1]));
        assert_eq!(r.order_at_zero(), Some(-1));
    }

    #[test]
    fn zero_is_zero_over_one() {
        let r = RatFunc::new(p(&[]), p(&[3, 1]));
        assert_eq!(r, RatFunc::zero());
        assert_eq!(r.den(), &p(&[1]));
    }

    #[test]
    fn arithmetic() {
        let a = RatFunc::new(p(&[1]), p(&[0, 1]));
        let b = RatFunc::new(p(&[1]), p(&[1, 1]));
        let s = a.clone() + b.clone();
        assert_eq!(s, RatFunc::new(p(&[1, 2]), p(&[0, 1, 1])));
        assert_eq!(s.clone() - b, a);
        assert_eq!(s.eval(&qi(1)), Some(q(3, 2)));
        assert_eq!(s.eval(&qi(0)), None);
    }

    #[test]
    fn integer_parts_clear_denominators() {
        let r = RatFunc::new(Poly::new(vec![q(1, 2), q(1, 3)]), p(&[0, 1]));
        let (n, d) = r.integer_parts();
        assert_eq!(n, vec![3.into(), 2.into()]);
        assert_eq!(d, vec![0.into(), 6.into()]);
    }
}
