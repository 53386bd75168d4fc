//! Type A root datum: permutations, weights in the e_i basis, Kostant
//! representatives of maximal parabolics and reduced words for w_P.

mod kostant;
mod word;

use std::fmt;

use num_traits::Zero;

use crate::arith::{parse_rational, q, qi, Rational};
use crate::error::{HczError, Result};

pub use kostant::{
    gaussian_binomial, kostant_set, kostant_set_with_limit, max_rank, Parabolic, DEFAULT_MAX_N,
};
pub use word::{wp_factorization, WordFactorization};

/// Permutation of {0, …, N-1}; `img[i] = w(i)`, acting by w·e_i = e_{w(i)}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { img: (0..n).collect() }
    }

    /// From a 0-based image vector.
    pub fn from_images(img: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; img.len()];
        for &x in &img {
            if x >= img.len() || seen[x] {
                return Err(HczError::Parse(format!("not a permutation: {img:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { img })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(v: &[usize]) -> Result<Self> {
        if v.contains(&0) {
            return Err(HczError::Parse("one-line notation is 1-based".into()));
        }
        Self::from_images(v.iter().map(|x| x - 1).collect())
    }

    /// Parses "[3,1,2]".
    pub fn parse(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let v = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| HczError::Parse(format!("bad permutation '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_line(&v)
    }

    /// Simple reflection s_r (1-based r) swapping r and r+1.
    pub fn simple(n: usize, r: usize) -> Self {
        let mut img: Vec<usize> = (0..n).collect();
        img.swap(r - 1, r);
        Perm { img }
    }

    pub fn rank(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.img.iter().map(|x| x + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x] = i;
        }
        Perm { img: inv }
    }

    /// (self ∘ o)(i) = self(o(i)).
    pub fn compose(&self, o: &Perm) -> Perm {
        Perm { img: o.img.iter().map(|&i| self.img[i]).collect() }
    }

    pub fn length(&self) -> usize {
        let n = self.img.len();
        (0..n).map(|i| (i + 1..n).filter(|&j| self.img[i] > self.img[j]).count()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// (w v)_j = v_{w^{-1}(j)}.
    pub fn act<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, &x) in self.img.iter().enumerate() {
            out[x] = v[i].clone();
        }
        out
    }

    pub fn act_root(&self, r: Root) -> Root {
        Root { i: self.img[r.i], j: self.img[r.j] }
    }

    /// Δ⁺(w) = {α > 0 : w⁻¹α < 0}.
    pub fn inversion_set(&self) -> Vec<Root> {
        let inv = self.inverse();
        let n = self.img.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if inv.img[a] > inv.img[b] {
                    out.push(Root { i: a, j: b });
                }
            }
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The root e_{i} - e_{j} (0-based indices, i ≠ j).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        assert_ne!(i, j);
        Root { i, j }
    }

    /// Simple root α_r (1-based r).
    pub fn simple(r: usize) -> Self {
        Root { i: r - 1, j: r }
    }

    pub fn is_positive(self) -> bool {
        self.i < self.j
    }

    pub fn negate(self) -> Self {
        Root { i: self.j, j: self.i }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e_{}-e_{}", self.i + 1, self.j + 1)
    }
}

/// h(β) for β = α_ν + … + α_{ν+h}.
pub fn h_of_root(b: Root) -> usize {
    assert!(b.is_positive(), "h is defined on positive roots");
    b.j - b.i - 1
}

/// ⟨(e_i - e_j)^∨, χ⟩ = χ_i - χ_j.
pub fn pairing(b: Root, chi: &Weight) -> Rational {
    &chi.coords[b.i] - &chi.coords[b.j]
}

/// Rational weight in the e_i basis, with optional sign-character residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    pub coords: Vec<Rational>,
    pub parity: Option<Vec<u8>>,
}

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight { coords, parity: None }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// δ = (1, …, 1).
    pub fn det(n: usize) -> Self {
        Self::new(vec![qi(1); n])
    }

    /// Fundamental weight γ_k = e_1+…+e_k - (k/N)δ.
    pub fn fundamental(n: usize, k: usize) -> Self {
        Self::new((0..n).map(|i| if i < k { qi(1) } else { qi(0) } - q(k as i64, n as i64)).collect())
    }

    /// λ = Σ a_i γ_i + d·δ.
    pub fn from_gamma(a: &[Rational], d: &Rational) -> Self {
        let n = a.len() + 1;
        let weighted: Rational = a.iter().enumerate().map(|(i, x)| x * qi(i as i64 + 1)).sum();
        let shift = weighted / qi(n as i64);
        let coords = (0..n)
            .map(|k| a[k..].iter().cloned().sum::<Rational>() - &shift + d)
            .collect();
        Self::new(coords)
    }

    /// Inverse of `from_gamma`: (a_1, …, a_{N-1}; d).
    pub fn to_gamma(&self) -> (Vec<Rational>, Rational) {
        let a = self.coords.windows(2).map(|w| &w[0] - &w[1]).collect();
        let d = self.coords.iter().cloned().sum::<Rational>() / qi(self.rank() as i64);
        (a, d)
    }

    /// Parses "a1,…,a_{N-1}[;d]" or "e:(c1,…,cN)".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("e:") {
            let body = rest.trim().trim_start_matches('(').trim_end_matches(')');
            let coords = body.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
            return Ok(Self::new(coords));
        }
        let (a_txt, d_txt) = match s.split_once(';') {
            Some((a, d)) => (a, d),
            None => (s, "0"),
        };
        let a = if a_txt.trim().is_empty() {
            Vec::new()
        } else {
            a_txt.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?
        };
        Ok(Self::from_gamma(&a, &parse_rational(d_txt)?))
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&o.coords).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&o.coords).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, s: &Rational) -> Weight {
        Weight::new(self.coords.iter().map(|x| x * s).collect())
    }

    pub fn slice(&self, from: usize, to: usize) -> Weight {
        Weight::new(self.coords[from..to].to_vec())
    }

    pub fn concat(parts: &[Weight]) -> Weight {
        Weight::new(parts.iter().flat_map(|p| p.coords.iter().cloned()).collect())
    }

    pub fn mean(&self) -> Rational {
        self.coords.iter().cloned().sum::<Rational>() / qi(self.rank() as i64)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(crate::arith::is_integer)
    }

    /// Weakly decreasing coordinates.
    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
    }

    /// x_j + x_{k+1-j} independent of j.
    pub fn is_essentially_self_dual(&self) -> bool {
        let k = self.rank();
        if k == 0 {
            return true;
        }
        let s = &self.coords[0] + &self.coords[k - 1];
        (0..k).all(|j| &self.coords[j] + &self.coords[k - 1 - j] == s)
    }

    pub fn coords_string(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        format!("e:({})", parts.join(","))
    }

    pub fn gamma_string(&self) -> String {
        let (a, d) = self.to_gamma();
        let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        format!("{};{}", parts.join(","), d)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coords_string())
    }
}

/// ρ = ((N-1)/2, (N-3)/2, …, -(N-1)/2).
pub fn rho(n: usize) -> Weight {
    Weight::new((1..=n).map(|k| q(n as i64 + 1 - 2 * k as i64, 2)).collect())
}

/// w·λ = w(λ+ρ) - ρ.
pub fn dot_action(w: &Perm, lambda: &Weight) -> Weight {
    let r = rho(lambda.rank());
    let shifted = lambda.add(&r);
    Weight::new(w.act(&shifted.coords)).sub(&r)
}
