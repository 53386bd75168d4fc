//! Parameters of the cohomological representations of GL(n) induced from
//! the parabolic with Levi GL(2)^r × GL(1)^{n mod 2}.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::arith::{is_integer, q, qi, to_i64, Rational};
use crate::error::{HczError, Result};
use crate::weyl::{dot_action, kostant_set_with_limit, Parabolic, Perm, Weight};

/// Largest n for the W^{∘P} enumeration.
pub const UCOHOM_MAX_N: usize = 6;

/// w_un with w_un⁻¹ = {1 ↦ 1, 2 ↦ n, 3 ↦ 2, 4 ↦ n-1, …}.
pub fn w_un(n: usize) -> Perm {
    let inv: Vec<usize> = (1..=n).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { n + 1 - k / 2 }).collect();
    let w = Perm::from_one_line(&inv).expect("interleaving is a permutation").inverse();
    debug_assert_eq!(w.length(), l_wun_formula(n));
    w
}

/// n(n-2)/4 for n even, (n-1)²/4 for n odd.
pub fn l_wun_formula(n: usize) -> usize {
    if n % 2 == 0 {
        n * (n - 2) / 4
    } else {
        (n - 1) * (n - 1) / 4
    }
}

/// b_n = ⌊n²/4⌋.
pub fn b_lowest(n: usize) -> usize {
    n * n / 4
}

/// Block sizes of ∘P.
pub fn circ_blocks(n: usize) -> Vec<usize> {
    let mut b = vec![2; n / 2];
    if n % 2 == 1 {
        b.push(1);
    }
    b
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralParams {
    pub n: usize,
    pub a: Vec<i64>,
    pub d: Rational,
    pub lambda: Weight,
    pub w_un: Perm,
    pub mu: Weight,
    /// b_1, b_3, …
    pub b: Vec<i64>,
    /// displayed c(i, n)
    pub c: Vec<Rational>,
    /// central twists of the blocks of w_un·λ minus d; trailing GL(1) coordinate for n odd
    pub cent_twist: Vec<Rational>,
    /// block sums of w_un·λ
    pub zeta_mu: Vec<Rational>,
    pub circ_r: usize,
    pub l_wun: usize,
    pub b_n: usize,
    pub non_regular: bool,
}

fn check_self_dual(a: &[i64]) -> Result<()> {
    let m = a.len();
    if (0..m).any(|i| a[i] != a[m - 1 - i]) {
        return Err(HczError::NotSelfDual(format!("a = {a:?} is not symmetric")));
    }
    Ok(())
}

/// 2(a_j + … + a_{top}) [+ a_{n/2}] + n - 2j.
pub fn b_closed_form(a: &[i64], n: usize, j: usize) -> i64 {
    let n_i = n as i64;
    let (top, extra) = if n % 2 == 0 { (n / 2 - 1, a[n / 2 - 1]) } else { ((n - 1) / 2, 0) };
    let s: i64 = (j..=top).map(|k| a[k - 1]).sum();
    2 * s + extra + n_i - 2 * j as i64
}

/// c(i, n) as displayed: (n-i)/2 for n even, (n-1-i)/2 for n odd.
pub fn c_displayed(i: usize, n: usize) -> Rational {
    if n % 2 == 0 {
        q(n as i64 - i as i64, 2)
    } else {
        q(n as i64 - 1 - i as i64, 2)
    }
}

/// Twist of the block of w_un·λ starting at odd i, relative to d.
pub fn twist_closed_form(i: usize, n: usize) -> Rational {
    qi(i as i64) - q(n as i64, 2)
}

pub fn cuspidal_params(a: &[i64], d: &Rational, n: usize) -> Result<SpectralParams> {
    if n < 2 || a.len() != n - 1 {
        return Err(HczError::Invalid(format!("need n >= 2 and n-1 coefficients, got n={n}, {} coefficients", a.len())));
    }
    check_self_dual(a)?;
    if n % 2 == 0 {
        let mid = qi(a[n / 2 - 1]);
        let diff = &mid - d * qi(2);
        if !is_integer(&diff) || to_i64(&diff).map(|x| x.rem_euclid(2)) != Some(0) {
            return Err(HczError::ParityError(format!("a_{{n/2}} = {mid} and 2d = {} differ mod 2", d * qi(2))));
        }
    }
    let ar: Vec<Rational> = a.iter().map(|x| qi(*x)).collect();
    let lambda = Weight::from_gamma(&ar, d);
    let w = w_un(n);
    let mu = dot_action(&w, &lambda);
    let r = n / 2;
    let mut b = Vec::new();
    let mut cent_twist = Vec::new();
    let mut zeta_mu = Vec::new();
    let mut c = Vec::new();
    for j in 0..r {
        let (x, y) = (&mu.coords[2 * j], &mu.coords[2 * j + 1]);
        let bj = to_i64(&(x - y)).ok_or_else(|| HczError::ParityError("non-integral block".into()))?;
        b.push(bj);
        cent_twist.push((x + y) / qi(2) - d);
        zeta_mu.push(x + y);
        c.push(c_displayed(2 * j + 1, n));
    }
    if n % 2 == 1 {
        cent_twist.push(&mu.coords[n - 1] - d);
        zeta_mu.push(mu.coords[n - 1].clone());
    }
    let non_regular = a.iter().any(|x| *x == 0);
    Ok(SpectralParams {
        n,
        a: a.to_vec(),
        d: d.clone(),
        lambda,
        w_un: w.clone(),
        mu,
        b,
        c,
        cent_twist,
        zeta_mu,
        circ_r: r,
        l_wun: w.length(),
        b_n: b_lowest(n),
        non_regular,
    })
}

/// (b_1+2, b_3+2, …, ε(b_m+2)); the sign is applied for n even only.
pub fn minimal_k_type(p: &SpectralParams, eps: i8) -> Result<Vec<i64>> {
    if let Some(i) = (1..p.b.len()).find(|&i| p.b[i - 1] <= p.b[i]) {
        return Err(HczError::DominanceFailure(format!("b_{} = {} is not > b_{} = {}", 2 * i - 1, p.b[i - 1], 2 * i + 1, p.b[i])));
    }
    if p.b.iter().any(|x| *x < 0) {
        return Err(HczError::DominanceFailure(format!("negative cuspidal parameter in {:?}", p.b)));
    }
    let mut out: Vec<i64> = p.b.iter().map(|x| x + 2).collect();
    if p.n % 2 == 0 {
        if let Some(last) = out.last_mut() {
            *last *= eps.signum() as i64;
        }
    }
    Ok(out)
}

impl SpectralParams {
    pub fn to_json(&self) -> Value {
        let rs = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let mk = |e: i8| minimal_k_type(self, e).map(|v| json!(v)).unwrap_or(Value::Null);
        json!({
            "n": self.n,
            "a": self.a,
            "d": self.d.to_string(),
            "b": self.b,
            "c": rs(&self.c),
            "cent_twist": rs(&self.cent_twist),
            "w_un": self.w_un.to_string(),
            "mu": rs(&self.mu.coords),
            "l_wun": self.l_wun,
            "b_n": self.b_n,
            "circ_r": self.circ_r,
            "non_regular": self.non_regular,
            "minimal_k_type": {"+1": mk(1), "-1": mk(-1)},
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitClass {
    SingleOrbit,
    Product(i8),
}

/// W_c-orbit invariant of a sign vector.
pub fn wc_orbit_class(eps: &[i8], n: usize) -> Result<OrbitClass> {
    if eps.len() != n / 2 || eps.iter().any(|e| e.abs() != 1) {
        return Err(HczError::Invalid(format!("need {} signs ±1, got {eps:?}", n / 2)));
    }
    if n % 2 == 1 {
        return Ok(OrbitClass::SingleOrbit);
    }
    Ok(OrbitClass::Product(eps.iter().product()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UCohomReport {
    pub l_wun: usize,
    /// length -> number of w ∈ W^{∘P} whose block sums match ζ(μ)
    pub central: BTreeMap<usize, usize>,
    /// length -> number of w with w·λ = w_un·λ
    pub exact: BTreeMap<usize, usize>,
}

impl UCohomReport {
    pub fn concentrated(&self) -> bool {
        self.central.keys().all(|k| *k == self.l_wun) && self.exact == BTreeMap::from([(self.l_wun, 1)])
    }
}

fn block_sums(v: &Weight, blocks: &[usize]) -> Vec<Rational> {
    let mut s = 0;
    blocks
        .iter()
        .map(|b| {
            let r = v.coords[s..s + b].iter().cloned().sum();
            s += b;
            r
        })
        .collect()
}

pub fn u_cohomology_degrees(a: &[i64], d: &Rational, n: usize) -> Result<UCohomReport> {
    if n > UCOHOM_MAX_N {
        return Err(HczError::RankTooLarge { n, max: UCOHOM_MAX_N });
    }
    let p = cuspidal_params(a, d, n)?;
    let blocks = circ_blocks(n);
    let par = Parabolic::new(blocks.clone())?;
    let target = block_sums(&p.mu, &blocks);
    let mut central = BTreeMap::new();
    let mut exact = BTreeMap::new();
    for w in kostant_set_with_limit(&par, UCOHOM_MAX_N)? {
        let m = dot_action(&w, &p.lambda);
        if block_sums(&m, &blocks) == target {
            *central.entry(w.length()).or_insert(0) += 1;
        }
        if m == p.mu {
            *exact.entry(w.length()).or_insert(0) += 1;
        }
    }
    Ok(UCohomReport { l_wun: p.l_wun, central, exact })
}

/// (-1)^{(a_{n/2} - 2d)/2}.
pub fn eta_sign(a: &[i64], d: &Rational, n: usize) -> Result<i8> {
    if n % 2 == 1 || a.len() != n - 1 {
        return Err(HczError::Invalid(format!("η-sign needs even n and n-1 coefficients, got n={n}")));
    }
    let e = qi(a[n / 2 - 1]) - d * qi(2);
    match to_i64(&e) {
        Some(x) if x % 2 == 0 => Ok(if (x / 2).rem_euclid(2) == 0 { 1 } else { -1 }),
        _ => Err(HczError::ParityError(format!("a_{{n/2}} - 2d = {e} is not even"))),
    }
}
