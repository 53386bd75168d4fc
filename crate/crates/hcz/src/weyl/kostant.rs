use itertools::Itertools;

use super::{Perm, Root, Weight};
use crate::arith::qi;
use crate::error::{HczError, Result};

pub const DEFAULT_MAX_N: usize = 10;

/// Enumeration guard, overridable through `HCZ_MAX_N`.
pub fn max_rank() -> usize {
    std::env::var("HCZ_MAX_N").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_N)
}

/// Standard parabolic of GL(N) with the given Levi block sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parabolic {
    blocks: Vec<usize>,
}

impl Parabolic {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(HczError::Invalid(format!("bad block sizes {blocks:?}")));
        }
        Ok(Parabolic { blocks })
    }

    /// Blocks [n, N-n].
    pub fn maximal(big_n: usize, n: usize) -> Result<Self> {
        if n == 0 || n >= big_n {
            return Err(HczError::Invalid(format!("need 1 <= n < N, got n={n}, N={big_n}")));
        }
        Self::new(vec![n, big_n - n])
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn is_maximal(&self) -> bool {
        self.blocks.len() == 2
    }

    /// (start, end) index ranges of the blocks.
    pub fn ranges(&self) -> Vec<(usize, usize)> {
        let mut s = 0;
        self.blocks
            .iter()
            .map(|b| {
                let r = (s, s + b);
                s += b;
                r
            })
            .collect()
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.ranges().iter().position(|&(s, e)| s <= i && i < e).expect("index inside rank")
    }

    pub fn d_u(&self) -> usize {
        let mut total = 0;
        for (a, b) in self.blocks.iter().tuple_combinations() {
            total += a * b;
        }
        total
    }

    pub fn levi_positive_roots(&self) -> Vec<Root> {
        let mut out = Vec::new();
        for (s, e) in self.ranges() {
            for i in s..e {
                for j in i + 1..e {
                    out.push(Root::new(i, j));
                }
            }
        }
        out
    }

    /// Δ⁺_{U_P}: positive roots across distinct blocks.
    pub fn unipotent_roots(&self) -> Vec<Root> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.block_of(i) != self.block_of(j) {
                    out.push(Root::new(i, j));
                }
            }
        }
        out
    }

    /// The opposite-order parabolic (blocks reversed); Q for a maximal P.
    pub fn reversed(&self) -> Parabolic {
        Parabolic { blocks: self.blocks.iter().rev().cloned().collect() }
    }

    /// w ∈ W^P iff w⁻¹ is increasing on each block.
    pub fn is_kostant(&self, w: &Perm) -> bool {
        let inv = w.inverse();
        self.ranges().iter().all(|&(s, e)| (s + 1..e).all(|i| inv.apply(i - 1) < inv.apply(i)))
    }

    /// The longest element w_P of W^P: w_P⁻¹ sends the blocks, in order, to
    /// the positions of the reversed block layout.
    pub fn longest(&self) -> Perm {
        let n = self.rank();
        let rev = self.reversed().ranges();
        let k = self.blocks.len();
        let mut inv = vec![0; n];
        for (b, (s, e)) in self.ranges().into_iter().enumerate() {
            let target = rev[k - 1 - b].0;
            for i in s..e {
                inv[i] = target + (i - s);
            }
        }
        Perm::from_images(inv).expect("valid permutation").inverse()
    }

    pub fn is_balanced(&self, w: &Perm) -> Result<bool> {
        let d = self.d_u();
        if d % 2 == 1 {
            return Err(HczError::OddDimension { d_u: d });
        }
        Ok(w.length() * 2 == d)
    }

    /// w' = w_P⁻¹·w, so that w = w_P·w' with w' ∈ W^Q.
    pub fn complement(&self, w: &Perm) -> Result<Perm> {
        if !self.is_maximal() {
            return Err(HczError::Invalid("complement needs a maximal parabolic".into()));
        }
        if !self.is_kostant(w) {
            return Err(HczError::NotKostant(w.to_string()));
        }
        Ok(self.longest().inverse().compose(w))
    }

    /// ρ_{U_P} = (N/2)·γ_n for a maximal parabolic.
    pub fn rho_u(&self) -> Weight {
        let n = self.rank();
        let mut acc = Weight::zero(n);
        for r in self.unipotent_roots() {
            let mut v = vec![qi(0); n];
            v[r.i] = qi(1);
            v[r.j] = qi(-1);
            acc = acc.add(&Weight::new(v));
        }
        acc.scale(&crate::arith::q(1, 2))
    }
}

/// All Kostant representatives, sorted by one-line notation.
pub fn kostant_set(p: &Parabolic) -> Result<Vec<Perm>> {
    kostant_set_with_limit(p, max_rank())
}

pub fn kostant_set_with_limit(p: &Parabolic, max_n: usize) -> Result<Vec<Perm>> {
    let n = p.rank();
    if n > max_n {
        return Err(HczError::RankTooLarge { n, max: max_n });
    }
    // permutations() yields lexicographic order for sorted input
    Ok((0..n)
        .permutations(n)
        .map(|img| Perm::from_images(img).expect("permutation"))
        .filter(|w| p.is_kostant(w))
        .collect())
}

/// Coefficients of the Gaussian binomial [N choose n]_q.
pub fn gaussian_binomial(big_n: usize, n: usize) -> Vec<u64> {
    // table[m][k] = [m choose k]_q
    let mut table: Vec<Vec<Vec<u64>>> = vec![vec![vec![]; big_n + 1]; big_n + 1];
    for m in 0..=big_n {
        for k in 0..=m {
            table[m][k] = if k == 0 || k == m {
                vec![1]
            } else {
                // [m,k] = [m-1,k-1] + q^k [m-1,k]
                let a = &table[m - 1][k - 1];
                let b = &table[m - 1][k];
                let mut c = vec![0; a.len().max(b.len() + k)];
                for (i, x) in a.iter().enumerate() {
                    c[i] += x;
                }
                for (i, x) in b.iter().enumerate() {
                    c[i + k] += x;
                }
                c
            };
        }
    }
    table[big_n][n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(kostant_set(&Parabolic::maximal(4, 2).unwrap()).unwrap().len(), 6);
        assert_eq!(kostant_set(&Parabolic::maximal(2, 1).unwrap()).unwrap().len(), 2);
        let p = Parabolic::maximal(3, 2).unwrap();
        let ones: Vec<_> = kostant_set(&p).unwrap().into_iter().filter(|w| w.length() == 1).collect();
        assert_eq!(ones.len(), 1);
    }

    #[test]
    fn balanced_counts() {
        let p = Parabolic::maximal(4, 2).unwrap();
        let bal = kostant_set(&p).unwrap().into_iter().filter(|w| p.is_balanced(w).unwrap()).count();
        assert_eq!(bal, 2);
        assert!(!p.is_balanced(&Perm::identity(4)).unwrap());
        let p31 = Parabolic::maximal(3, 1).unwrap();
        let w = kostant_set(&p31).unwrap().into_iter().find(|w| w.length() == 1).unwrap();
        assert!(p31.is_balanced(&w).unwrap());
        assert!(matches!(
            Parabolic::maximal(3, 1).unwrap().reversed().is_balanced(&Perm::identity(3)),
            Ok(false)
        ));
        assert!(matches!(Parabolic::maximal(4, 1).unwrap().is_balanced(&Perm::identity(4)), Err(HczError::OddDimension { .. })));
    }

    #[test]
    fn guard() {
        let p = Parabolic::maximal(11, 5).unwrap();
        assert!(matches!(kostant_set_with_limit(&p, 10), Err(HczError::RankTooLarge { n: 11, max: 10 })));
    }

    #[test]
    fn complement_examples() {
        let p = Parabolic::maximal(4, 2).unwrap();
        let q = p.reversed();
        assert_eq!(p.complement(&Perm::identity(4)).unwrap(), q.longest());
        assert!(p.complement(&p.longest()).unwrap().is_identity());
        for w in kostant_set(&p).unwrap() {
            let wc = p.complement(&w).unwrap();
            assert!(q.is_kostant(&wc));
            assert_eq!(w.length() + wc.length(), 4);
            assert_eq!(q.complement(&wc).unwrap(), w);
        }
        assert!(matches!(p.complement(&Perm::parse("[2,1,3,4]").unwrap()), Err(HczError::NotKostant(_))));
    }

    #[test]
    fn gaussian_binomial_small() {
        assert_eq!(gaussian_binomial(4, 2), vec![1, 1, 2, 1, 1]);
        assert_eq!(gaussian_binomial(3, 2), vec![1, 1, 1]);
    }

    #[test]
    fn rho_u_is_multiple_of_gamma_n() {
        for big_n in 2..=7 {
            for n in 1..big_n {
                let p = Parabolic::maximal(big_n, n).unwrap();
                let want = Weight::fundamental(big_n, n).scale(&crate::arith::q(big_n as i64, 2));
                assert_eq!(p.rho_u(), want);
                assert_eq!(p.d_u(), n * (big_n - n));
            }
        }
    }
}
