//! The intertwining operator of a maximal parabolic factored along the
//! β-sequence of w_P, restricted to the line z·γ_n.

use serde::{Deserialize, Serialize};

use crate::arith::{is_integer, q, qi, to_i64, GammaExpr, GammaRecord, Rational};
use crate::error::{HczError, Result};
use crate::gl2::t_st;
use crate::spectral::w_un;
use crate::weyl::{
    dot_action, h_of_root, kostant_set, pairing, rho, wp_factorization, Parabolic, Perm, Root, Weight,
};

/// A balanced Kostant element together with the data it induces on λ.
#[derive(Clone, Debug, PartialEq)]
pub struct BalancedDatum {
    pub big_n: usize,
    pub n: usize,
    pub w: Perm,
    pub w_prime: Perm,
    pub lambda: Weight,
    pub mu_tilde: Weight,
    pub mu_tilde_prime: Weight,
    /// γ_n-coefficient of w(λ+ρ)
    pub b: Rational,
    pub d_w: Rational,
    pub d_w_prime: Rational,
}

fn mean_gap(v: &Weight, n: usize) -> Rational {
    v.slice(0, n).mean() - v.slice(n, v.rank()).mean()
}

fn semisimple(v: &Weight) -> Weight {
    let m = v.mean();
    Weight::new(v.coords.iter().map(|x| x - &m).collect())
}

pub fn balanced_datum(big_n: usize, n: usize, w: &Perm, lambda: &Weight) -> Result<BalancedDatum> {
    let p = Parabolic::maximal(big_n, n)?;
    if w.rank() != big_n || lambda.rank() != big_n {
        return Err(HczError::Invalid(format!("rank mismatch: N={big_n}, w in S_{}, λ of rank {}", w.rank(), lambda.rank())));
    }
    if !p.is_kostant(w) {
        return Err(HczError::NotKostant(w.to_string()));
    }
    if !p.is_balanced(w)? {
        return Err(HczError::NotBalanced(format!("l({w}) = {} but d_U/2 = {}", w.length(), p.d_u() / 2)));
    }
    let mu = dot_action(w, lambda);
    for (name, blk) in [("first", mu.slice(0, n)), ("second", mu.slice(n, big_n))] {
        if !blk.is_essentially_self_dual() {
            return Err(HczError::NotSelfDual(format!("{name} block of w·λ = {mu} is not essentially self-dual")));
        }
    }
    let shifted = Weight::new(w.act(&lambda.add(&rho(big_n)).coords));
    let b = mean_gap(&shifted, n);
    if b > qi(0) {
        return Err(HczError::NotNegativeChamber(format!("b(w,λ) = {b} > 0")));
    }
    let w_prime = p.complement(w)?;
    let mu_prime = dot_action(&w_prime, lambda);
    let d_w = mean_gap(&mu, n);
    let d_w_prime = mean_gap(&mu_prime, big_n - n);
    debug_assert_eq!(&d_w + &d_w_prime, qi(-(big_n as i64)));
    Ok(BalancedDatum { big_n, n, w: w.clone(), w_prime, lambda: lambda.clone(), mu_tilde: mu, mu_tilde_prime: mu_prime, b, d_w, d_w_prime })
}

impl BalancedDatum {
    /// d_w + d_w' = -N and the semisimple parts of the blocks swap.
    pub fn check_invariants(&self) -> bool {
        let (nn, n) = (self.big_n, self.n);
        let sum_ok = &self.d_w + &self.d_w_prime == qi(-(nn as i64));
        let swap1 = semisimple(&self.mu_tilde_prime.slice(0, nn - n)) == semisimple(&self.mu_tilde.slice(n, nn));
        let swap2 = semisimple(&self.mu_tilde_prime.slice(nn - n, nn)) == semisimple(&self.mu_tilde.slice(0, n));
        sum_ok && swap1 && swap2 && self.w.length() + self.w_prime.length() == n * (nn - n)
    }
}

/// Every balanced Kostant element satisfying the assumptions for λ.
pub fn admissible_data(big_n: usize, n: usize, lambda: &Weight) -> Result<Vec<BalancedDatum>> {
    let p = Parabolic::maximal(big_n, n)?;
    let mut out = Vec::new();
    for w in kostant_set(&p)? {
        if w.length() * 2 != p.d_u() {
            continue;
        }
        match balanced_datum(big_n, n, &w, lambda) {
            Ok(d) => out.push(d),
            Err(HczError::NotSelfDual(_)) | Err(HczError::NotNegativeChamber(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// First admissible datum, or the error of the first balanced element.
pub fn default_datum(big_n: usize, n: usize, lambda: &Weight) -> Result<BalancedDatum> {
    let p = Parabolic::maximal(big_n, n)?;
    let mut first_err = None;
    for w in kostant_set(&p)? {
        if !p.is_balanced(&w)? {
            continue;
        }
        match balanced_datum(big_n, n, &w, lambda) {
            Ok(d) => return Ok(d),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.unwrap_or_else(|| HczError::NotBalanced("no balanced Kostant element".into())))
}

/// w_un^{(k)}·block + (1, -1) on every GL(2) pair, blockwise.
pub fn chi_from(datum: &BalancedDatum) -> Result<Weight> {
    let (nn, n) = (datum.big_n, datum.n);
    let mut parts = Vec::new();
    for (s, e) in [(0, n), (n, nn)] {
        let blk = datum.mu_tilde.slice(s, e);
        let mut m = dot_action(&w_un(e - s), &blk);
        for t in 0..(e - s) / 2 {
            m.coords[2 * t] += qi(1);
            m.coords[2 * t + 1] -= qi(1);
        }
        parts.push(m);
    }
    let chi = Weight::concat(&parts);
    let p = Parabolic::maximal(nn, n)?;
    for r in p.unipotent_roots() {
        let c = pairing(r, &chi);
        if !is_integer(&c) {
            return Err(HczError::NonIntegralPairing(format!("<{r}^∨, χ> = {c} for χ = {chi}")));
        }
    }
    Ok(chi)
}

/// Per-factor data along the β-sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorData {
    pub k: usize,
    pub beta: Root,
    /// 1-based simple reflection index
    pub r: usize,
    pub c: i64,
    pub h: i64,
    pub eps: u8,
    pub m: u8,
    /// the Γ-denominator pole at z = 0 (h even) taken out as z^{-1}
    pub absorbed: u8,
}

impl FactorData {
    pub fn new(k: usize, beta: Root, r: usize, c: i64, h: i64) -> Self {
        let eps = c.rem_euclid(2) as u8;
        let s = c + eps as i64 + h;
        let m = (h % 2 == 1 && s - 1 <= 0) as u8;
        let absorbed = (h % 2 == 0 && s <= 0) as u8;
        FactorData { k, beta, r, c, h, eps, m, absorbed }
    }

    /// c + ε + h
    fn arg(&self) -> i64 {
        self.c + self.eps as i64 + self.h
    }
}

pub fn factor_data(big_n: usize, n: usize, chi: &Weight) -> Result<Vec<FactorData>> {
    let p = Parabolic::maximal(big_n, n)?;
    let wf = wp_factorization(&p)?;
    let gamma_n = Weight::fundamental(big_n, n);
    let mut out = Vec::new();
    for (k, (beta, r)) in wf.betas.iter().zip(&wf.word).enumerate() {
        // the line z·γ_n meets every factor with slope 1
        assert_eq!(pairing(*beta, &gamma_n), qi(1));
        let c = to_i64(&pairing(*beta, chi)).ok_or_else(|| HczError::NonIntegralPairing(format!("<{beta}^∨, χ>")))?;
        out.push(FactorData::new(k + 1, *beta, *r, c, h_of_root(*beta) as i64));
    }
    Ok(out)
}

/// Γ((c+ε+h-1+z)/2)·Γ(1/2)/Γ((c+ε+h+z)/2), times z^{m - absorbed} when stripped.
pub fn factor_gamma(fd: &FactorData, strip: bool) -> GammaExpr {
    let s = fd.arg();
    let e = GammaExpr::gamma(q(s - 1, 2), 1).mul(&GammaExpr::sqrt_pi(1)).mul(&GammaExpr::gamma(q(s, 2), -1));
    if strip {
        e.mul_z_pow(fd.m as i64 - fd.absorbed as i64)
    } else {
        e
    }
}

/// Product of stripped factors with its value at z = 0.
pub fn product_at_zero(factors: &[FactorData]) -> Result<(GammaExpr, i64, Rational)> {
    let prod = factors.iter().fold(GammaExpr::identity(), |acc, f| acc.mul(&factor_gamma(f, true)));
    let order = prod.order_at_zero().ok_or(HczError::ZeroFunction)?;
    if order != 0 {
        return Err(HczError::UnexpectedPole { order });
    }
    let (k, r) = prod.eval_at_zero()?;
    Ok((prod, k, r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub k: usize,
    pub beta: String,
    pub r: usize,
    pub c: i64,
    pub h: i64,
    pub eps: u8,
    pub m: u8,
    pub absorbed: u8,
    pub gamma: GammaRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwinerReport {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub n: usize,
    pub w: String,
    pub w_prime: String,
    pub lambda: String,
    pub chi: Vec<String>,
    #[serde(rename = "d_U")]
    pub d_u: usize,
    pub factors: Vec<FactorRecord>,
    pub prefactor: GammaRecord,
    pub order_at_zero: i64,
    pub pi_half: i64,
    pub rational: String,
    pub total_mk: i64,
    pub even_h_count: usize,
    /// both blocks have the same parity
    pub parity_warning: bool,
    pub non_regular: bool,
}

impl IntertwinerReport {
    pub fn pi_power_ok(&self) -> bool {
        self.pi_half == self.d_u as i64 && self.even_h_count * 2 == self.d_u && self.rational != "0"
    }
}

pub fn prefactor_product(datum: &BalancedDatum) -> Result<IntertwinerReport> {
    let (nn, n) = (datum.big_n, datum.n);
    let d_u = n * (nn - n);
    if d_u % 2 == 1 {
        return Err(HczError::OddDU { d_u });
    }
    let chi = chi_from(datum)?;
    let factors = factor_data(nn, n, &chi)?;
    let (prod, pi_half, rational) = product_at_zero(&factors)?;
    let records = factors
        .iter()
        .map(|f| FactorRecord {
            k: f.k,
            beta: f.beta.to_string(),
            r: f.r,
            c: f.c,
            h: f.h,
            eps: f.eps,
            m: f.m,
            absorbed: f.absorbed,
            gamma: factor_gamma(f, true).to_record(),
        })
        .collect();
    let (a, _) = datum.lambda.to_gamma();
    Ok(IntertwinerReport {
        big_n: nn,
        n,
        w: datum.w.to_string(),
        w_prime: datum.w_prime.to_string(),
        lambda: datum.lambda.gamma_string(),
        chi: chi.coords.iter().map(|x| x.to_string()).collect(),
        d_u,
        factors: records,
        prefactor: prod.to_record(),
        order_at_zero: 0,
        pi_half,
        rational: rational.to_string(),
        total_mk: factors.iter().map(|f| f.m as i64).sum(),
        even_h_count: factors.iter().filter(|f| f.h % 2 == 0).count(),
        parity_warning: n % 2 == (nn - n) % 2,
        non_regular: a.iter().any(|x| *x == qi(0)),
    })
}

/// For N = 3: the unstripped product equals ∏ T^st_{ε_k}(Φ_{ε_k}) at z + c_k + h_k.
pub fn cross_check_gl2_chain(datum: &BalancedDatum) -> Result<bool> {
    if datum.big_n != 3 {
        return Err(HczError::Invalid("the GL(2) chain check is for N = 3".into()));
    }
    let chi = chi_from(datum)?;
    let factors = factor_data(3, datum.n, &chi)?;
    let mut chain = GammaExpr::identity();
    let mut direct = GammaExpr::identity();
    for f in &factors {
        let t = t_st(f.eps, f.eps as i64)?;
        chain = chain.mul(&t.shift(&qi(f.c + f.h)));
        direct = direct.mul(&factor_gamma(f, false));
    }
    Ok(chain.canonicalize() == direct.canonicalize())
}
