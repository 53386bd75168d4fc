//! GL(2) Harish-Chandra modules on the Φ_ν basis.

mod cohomology;
mod intertwine;
mod submodule;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::arith::{parity, q, qi, Field, GaussianRational, HasI, Rational};
use crate::error::{HczError, Result};

pub use cohomology::{h1_cohomology, CohomClass, CohomTerm, DualGen, H1Report};
pub use intertwine::{
    compare_constants, composite_check, expected_poles, lambda, poles_of_tst, t_alg_minus, t_alg_plus, t_norm, t_st,
    t_st_dagger, CompareReport, PiValue, PoleReport,
};
pub use submodule::{exact2_check, invariant_submodule, SubmoduleReport};

/// z is either an integer l or the formal variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZParam {
    Int(i64),
    Formal,
}

/// χ = (z, d, m̲).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterGL2 {
    pub z: ZParam,
    pub d: Rational,
    pub m: (u8, u8),
}

impl CharacterGL2 {
    pub fn formal(d: Rational, m: (u8, u8)) -> Self {
        CharacterGL2 { z: ZParam::Formal, d, m: (m.0 % 2, m.1 % 2) }
    }

    /// Formal character with m̲ = (ε, 0).
    pub fn formal_eps(eps: u8) -> Self {
        Self::formal(qi(0), (eps % 2, 0))
    }

    /// Algebraic character; requires m1 ≡ l/2 + d and m2 ≡ -l/2 + d mod 2.
    pub fn algebraic(l: i64, d: Rational, m: (u8, u8)) -> Result<Self> {
        let half = q(l, 2);
        let p1 = parity(&(&half + &d));
        let p2 = parity(&(-&half + &d));
        match (p1, p2) {
            (Some(a), Some(b)) if a == m.0 % 2 && b == m.1 % 2 => {
                Ok(CharacterGL2 { z: ZParam::Int(l), d, m: (m.0 % 2, m.1 % 2) })
            }
            _ => Err(HczError::ParityError(format!("(l={l}, d={d}, m=({},{})) violates m1 ≡ l/2+d, m2 ≡ -l/2+d", m.0, m.1))),
        }
    }

    /// The character of λ = l·γ_1 + d·δ with the residues it forces.
    pub fn from_weight(l: i64, d: Rational) -> Result<Self> {
        let half = q(l, 2);
        let m1 = parity(&(&half + &d)).ok_or_else(|| HczError::ParityViolation { two_d: (&d * qi(2)).to_string(), l })?;
        let m2 = parity(&(-&half + &d)).expect("same parity class");
        Self::algebraic(l, d, (m1, m2))
    }

    /// ε(m̲) = (m1 + m2) mod 2.
    pub fn eps(&self) -> u8 {
        (self.m.0 + self.m.1) % 2
    }

    /// a(m̲) = +1 if ε = 0, else -1.
    pub fn a(&self) -> i8 {
        if self.eps() == 0 {
            1
        } else {
            -1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LieOp {
    H,
    Y,
    EPlus,
    EMinus,
    V,
    PPlus,
    PMinus,
}

pub const ALL_OPS: [LieOp; 7] = [LieOp::H, LieOp::Y, LieOp::EPlus, LieOp::EMinus, LieOp::V, LieOp::PPlus, LieOp::PMinus];

/// 2×2 matrix over ℚ(i).
pub type Mat2 = [[GaussianRational; 2]; 2];

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(qi(re), qi(im))
}

fn mat_add(a: &Mat2, b: &Mat2, s: &GaussianRational) -> Mat2 {
    let e = |i: usize, j: usize| a[i][j].clone() + s.clone() * b[i][j].clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
    mat_add(&mat_mul(a, b), &mat_mul(b, a), &g(-1, 0))
}

impl LieOp {
    pub fn matrix(self) -> Mat2 {
        let h = [[g(1, 0), g(0, 0)], [g(0, 0), g(-1, 0)]];
        let ep = [[g(0, 0), g(1, 0)], [g(0, 0), g(0, 0)]];
        let em = [[g(0, 0), g(0, 0)], [g(1, 0), g(0, 0)]];
        let v = mat_add(&ep, &em, &g(1, 0));
        match self {
            LieOp::H => h,
            LieOp::EPlus => ep,
            LieOp::EMinus => em,
            LieOp::V => v,
            LieOp::Y => mat_add(&ep, &em, &g(-1, 0)),
            LieOp::PPlus => mat_add(&h, &v, &g(0, 1)),
            LieOp::PMinus => mat_add(&h, &v, &g(0, -1)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LieOp::H => "H",
            LieOp::Y => "Y",
            LieOp::EPlus => "E+",
            LieOp::EMinus => "E-",
            LieOp::V => "V",
            LieOp::PPlus => "P+",
            LieOp::PMinus => "P-",
        }
    }
}

/// Coordinates (α, β, γ) of a traceless matrix in the basis P+, P-, Y.
pub fn decompose(m: &Mat2) -> Result<[GaussianRational; 3]> {
    if !(m[0][0].clone() + m[1][1].clone()).is_zero() {
        return Err(HczError::Invalid("matrix is not traceless".into()));
    }
    let a = m[0][0].clone();
    let (b, c) = (m[0][1].clone(), m[1][0].clone());
    let half = GaussianRational::real(q(1, 2));
    let gamma = (b.clone() - c.clone()) * half.clone();
    // α - β = (b + c)/(2i)
    let diff = (b + c) * half.clone() / GaussianRational::i();
    let alpha = (a.clone() + diff.clone()) * half.clone();
    let beta = (a - diff) * half;
    Ok([alpha, beta, gamma])
}

/// Finitely supported vector Σ c_ν Φ_ν.
#[derive(Clone, Debug, PartialEq)]
pub struct KVec<F: Field> {
    pub parity: u8,
    terms: BTreeMap<i64, F>,
}

impl<F: Field> KVec<F> {
    pub fn zero(parity: u8) -> Self {
        KVec { parity: parity % 2, terms: BTreeMap::new() }
    }

    pub fn basis(nu: i64) -> Self {
        let mut v = Self::zero(nu.rem_euclid(2) as u8);
        v.terms.insert(nu, F::one());
        v
    }

    pub fn from_terms(parity: u8, terms: impl IntoIterator<Item = (i64, F)>) -> Self {
        let mut v = Self::zero(parity);
        for (nu, c) in terms {
            v.add_term(nu, c);
        }
        v
    }

    pub fn add_term(&mut self, nu: i64, c: F) {
        assert_eq!(nu.rem_euclid(2) as u8, self.parity, "K-type parity");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(nu).or_insert_with(F::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&nu);
        }
    }

    pub fn coeff(&self, nu: i64) -> F {
        self.terms.get(&nu).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &F)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest W with all stored |ν| ≤ W.
    pub fn window(&self) -> i64 {
        self.terms.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (nu, c) in &o.terms {
            out.add_term(*nu, c.clone());
        }
        out
    }

    pub fn scaled(&self, s: &F) -> Self {
        let mut out = Self::zero(self.parity);
        for (nu, c) in &self.terms {
            out.add_term(*nu, c.clone() * s.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.scaled(&-F::one()))
    }
}

impl<F: Field> fmt::Display for KVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(nu, c)| {
                let t = c.to_string();
                if t.chars().skip(1).any(|ch| ch == '+' || ch == '-' || ch == ' ') {
                    format!("({t})·Φ[{nu}]")
                } else {
                    format!("{t}·Φ[{nu}]")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Embedding of ℚ(i) into the coefficient field.
pub fn embed<F: HasI>(x: &GaussianRational) -> F {
    F::from_rational(x.re.clone()) + F::i() * F::from_rational(x.im.clone())
}

fn p_plus<F: HasI>(v: &KVec<F>, z: &F) -> KVec<F> {
    KVec::from_terms(v.parity, v.terms().map(|(nu, c)| (nu + 2, (z.clone() + F::from_int(*nu)) * c.clone())))
}

fn p_minus<F: HasI>(v: &KVec<F>, z: &F) -> KVec<F> {
    KVec::from_terms(v.parity, v.terms().map(|(nu, c)| (nu - 2, (z.clone() - F::from_int(*nu)) * c.clone())))
}

fn y_op<F: HasI>(v: &KVec<F>) -> KVec<F> {
    KVec::from_terms(v.parity, v.terms().map(|(nu, c)| (*nu, F::i() * F::from_int(*nu) * c.clone())))
}

/// Action of αP+ + βP- + γY.
pub fn act_coords<F: HasI>(c: &[GaussianRational; 3], v: &KVec<F>, z: &F) -> KVec<F> {
    let mut out = KVec::zero(v.parity);
    if !c[0].is_zero() {
        out = out.plus(&p_plus(v, z).scaled(&embed(&c[0])));
    }
    if !c[1].is_zero() {
        out = out.plus(&p_minus(v, z).scaled(&embed(&c[1])));
    }
    if !c[2].is_zero() {
        out = out.plus(&y_op(v).scaled(&embed(&c[2])));
    }
    out
}

/// Action of a traceless matrix.
pub fn act_matrix<F: HasI>(m: &Mat2, v: &KVec<F>, z: &F) -> Result<KVec<F>> {
    Ok(act_coords(&decompose(m)?, v, z))
}

/// YΦ_ν = iνΦ_ν, P+Φ_ν = (z+ν)Φ_{ν+2}, P-Φ_ν = (z-ν)Φ_{ν-2}, others by linearity.
pub fn act<F: HasI>(op: LieOp, v: &KVec<F>, z: &F) -> KVec<F> {
    act_matrix(&op.matrix(), v, z).expect("sl2 generators are traceless")
}

/// [op1, op2] acts as the commutator of the actions.
pub fn bracket_check<F: HasI>(op1: LieOp, op2: LieOp, v: &KVec<F>, z: &F) -> bool {
    let m = commutator(&op1.matrix(), &op2.matrix());
    let lhs = act_matrix(&m, v, z).expect("commutators are traceless");
    let rhs = act(op1, &act(op2, v, z), z).minus(&act(op2, &act(op1, v, z), z));
    lhs == rhs
}
