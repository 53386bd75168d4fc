use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{to_i64, GaussianRational, HasI, Rational};
use crate::error::{HczError, Result};

type G = GaussianRational;

/// Dual basis of p = g/k: P+∨ has weight -2, P-∨ has weight +2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum DualGen {
    PPlus,
    PMinus,
}

impl DualGen {
    pub fn weight(self) -> i64 {
        match self {
            DualGen::PPlus => -2,
            DualGen::PMinus => 2,
        }
    }

    fn swap(self) -> Self {
        match self {
            DualGen::PPlus => DualGen::PMinus,
            DualGen::PMinus => DualGen::PPlus,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DualGen::PPlus => "P+∨",
            DualGen::PMinus => "P-∨",
        }
    }
}

/// coeff · gen ⊗ Φ_ν ⊗ e_μ
#[derive(Clone, Debug, PartialEq)]
pub struct CohomTerm {
    pub gen: DualGen,
    pub nu: i64,
    pub mu: i64,
    pub coeff: G,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CohomClass {
    pub label: String,
    pub terms: Vec<CohomTerm>,
}

impl CohomClass {
    fn normalized(mut self) -> Self {
        self.terms.retain(|t| !t.coeff.is_zero());
        self.terms.sort_by_key(|t| (t.gen, t.nu, t.mu));
        self
    }

    fn combine(label: &str, parts: &[(&CohomClass, G)]) -> CohomClass {
        let mut terms: Vec<CohomTerm> = Vec::new();
        for (c, s) in parts {
            for t in &c.terms {
                let k = s.clone() * t.coeff.clone();
                match terms.iter_mut().find(|u| (u.gen, u.nu, u.mu) == (t.gen, t.nu, t.mu)) {
                    Some(u) => u.coeff = u.coeff.clone() + k,
                    None => terms.push(CohomTerm { coeff: k, ..t.clone() }),
                }
            }
        }
        CohomClass { label: label.to_string(), terms }.normalized()
    }

    fn same_terms(&self, o: &CohomClass, scale: &G) -> bool {
        let scaled = CohomClass::combine("", &[(o, scale.clone())]);
        self.clone().normalized().terms == scaled.terms
    }
}

impl fmt::Display for CohomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let body = format!("{}⊗Φ[{}]⊗e[{}]", t.gen.name(), t.nu, t.mu);
                if t.coeff.is_one() {
                    body
                } else {
                    format!("({})·{body}", t.coeff)
                }
            })
            .collect();
        write!(f, "{} = {}", self.label, parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct H1Report {
    pub l: i64,
    pub d: Rational,
    /// Ω, Ω̄
    pub basis: Vec<CohomClass>,
    /// ω(1), ω(2)
    pub omegas: Vec<CohomClass>,
    pub eta_signs: (i8, i8),
    pub degree0: usize,
    pub degree2: usize,
}

/// η: P±∨ swapped, ν -> -ν, e_μ -> s·e_{-μ}.
fn eta(c: &CohomClass, s: i64) -> CohomClass {
    let terms = c
        .terms
        .iter()
        .map(|t| CohomTerm { gen: t.gen.swap(), nu: -t.nu, mu: -t.mu, coeff: t.coeff.clone() * G::int(s) })
        .collect();
    CohomClass { label: c.label.clone(), terms }.normalized()
}

/// H¹(g, K; D_λ ⊗ M_λ) by weight matching.
pub fn h1_cohomology(l: i64, d: &Rational) -> Result<H1Report> {
    if l < 0 {
        return Err(HczError::Invalid(format!("cohomology needs l >= 0, got {l}")));
    }
    let two_d = d * Rational::from_integer(2.into());
    let violation = || HczError::ParityViolation { two_d: two_d.to_string(), l };
    let td = to_i64(&two_d).ok_or_else(violation)?;
    if (td - l).rem_euclid(2) != 0 {
        return Err(violation());
    }
    let s: i64 = if ((td - l) / 2).rem_euclid(2) == 0 { 1 } else { -1 };

    // K-types of D_λ in a window, weights of M_λ
    let top = l + 2 + 16;
    let d_types: Vec<i64> = (-top..=top).filter(|nu| nu.abs() >= l + 2 && (nu - l).rem_euclid(2) == 0).collect();
    let m_weights: Vec<i64> = (-l..=l).step_by(2).collect();
    let matches = |shift: i64| {
        d_types.iter().flat_map(|&nu| m_weights.iter().map(move |&mu| (nu, mu))).filter(move |(nu, mu)| shift + nu + mu == 0)
    };
    let degree0 = matches(0).count();
    let degree2 = matches(DualGen::PPlus.weight() + DualGen::PMinus.weight()).count();

    let mut basis = Vec::new();
    for gen in [DualGen::PPlus, DualGen::PMinus] {
        let terms: Vec<CohomTerm> =
            matches(gen.weight()).map(|(nu, mu)| CohomTerm { gen, nu, mu, coeff: G::one() }).collect();
        let label = if gen == DualGen::PPlus { "Ω" } else { "Ω̄" };
        basis.push(CohomClass { label: label.into(), terms }.normalized());
    }
    let (om, omb) = (&basis[0], &basis[1]);
    let i = G::i();
    let w1 = CohomClass::combine("ω(1)", &[(om, G::one()), (omb, G::one())]);
    let w2 = CohomClass::combine("ω(2)", &[(om, i.clone()), (omb, -i)]);
    let sign_of = |w: &CohomClass| -> Result<i8> {
        let e = eta(w, s);
        if w.same_terms(&e, &G::one()) {
            Ok(1)
        } else if w.same_terms(&e, &G::int(-1)) {
            Ok(-1)
        } else {
            Err(HczError::Invalid(format!("{} is not an η-eigenvector", w.label)))
        }
    };
    let eta_signs = (sign_of(&w1)?, sign_of(&w2)?);
    Ok(H1Report { l, d: d.clone(), basis, omegas: vec![w1, w2], eta_signs, degree0, degree2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};

    #[test]
    fn two_classes() {
        let r = h1_cohomology(2, &qi(1)).unwrap();
        assert_eq!(r.basis.len(), 2);
        assert_eq!(r.basis[0].terms.len(), 1);
        let t = &r.basis[0].terms[0];
        assert_eq!((t.gen, t.nu, t.mu), (DualGen::PPlus, 4, -2));
        let t = &r.basis[1].terms[0];
        assert_eq!((t.gen, t.nu, t.mu), (DualGen::PMinus, -4, 2));
        assert_eq!(r.eta_signs, (1, -1));
        assert_eq!((r.degree0, r.degree2), (0, 0));
        assert_eq!(h1_cohomology(2, &qi(2)).unwrap().eta_signs, (-1, 1));
    }

    #[test]
    fn trivial_coefficients() {
        let r = h1_cohomology(0, &qi(0)).unwrap();
        assert_eq!(r.basis[0].to_string(), "Ω = P+∨⊗Φ[2]⊗e[0]");
        assert_eq!(r.basis[1].to_string(), "Ω̄ = P-∨⊗Φ[-2]⊗e[0]");
    }

    #[test]
    fn parity() {
        assert!(matches!(h1_cohomology(2, &q(1, 2)), Err(HczError::ParityViolation { .. })));
        assert!(matches!(h1_cohomology(1, &qi(0)), Err(HczError::ParityViolation { .. })));
        assert_eq!(h1_cohomology(1, &q(1, 2)).unwrap().eta_signs, (1, -1));
    }
}
