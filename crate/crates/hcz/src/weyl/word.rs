use std::collections::BTreeSet;

use super::{Parabolic, Perm, Root};
use crate::error::{HczError, Result};

/// Reduced word s_{r(1)}⋯s_{r(d_U)} for w_P with its β-sequence and prefixes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordFactorization {
    pub rank: usize,
    /// 1-based simple-reflection indices.
    pub word: Vec<usize>,
    pub betas: Vec<Root>,
    /// x_0 = e, …, x_{d_U} = w_P.
    pub prefixes: Vec<Perm>,
}

/// Greedy sweep: at x_{k-1} take the smallest r whose image x_{k-1}(α_r) is a
/// new root of U_P.
pub fn wp_factorization(p: &Parabolic) -> Result<WordFactorization> {
    if !p.is_maximal() {
        return Err(HczError::Invalid("β-sequence needs a maximal parabolic".into()));
    }
    let n = p.rank();
    let u: BTreeSet<Root> = p.unipotent_roots().into_iter().collect();
    let mut x = Perm::identity(n);
    let mut seen = BTreeSet::new();
    let mut word = Vec::new();
    let mut betas = Vec::new();
    let mut prefixes = vec![x.clone()];
    while seen.len() < u.len() {
        let step = (1..n).find_map(|r| {
            let b = x.act_root(Root::simple(r));
            (b.is_positive() && u.contains(&b) && !seen.contains(&b)).then_some((r, b))
        });
        let (r, b) = step.ok_or_else(|| HczError::Invalid("greedy sweep stalled".into()))?;
        seen.insert(b);
        word.push(r);
        betas.push(b);
        x = x.compose(&Perm::simple(n, r));
        prefixes.push(x.clone());
    }
    Ok(WordFactorization { rank: n, word, betas, prefixes })
}

impl WordFactorization {
    /// Checks the defining invariants; returns a description of the first failure.
    pub fn check(&self, p: &Parabolic) -> std::result::Result<(), String> {
        let d = p.d_u();
        if self.word.len() != d || self.betas.len() != d || self.prefixes.len() != d + 1 {
            return Err("lengths differ from d_U".into());
        }
        let (n1, n2) = (p.blocks()[0], p.blocks()[1]);
        if self.word.first() != Some(&n1) || self.word.last() != Some(&n2) {
            return Err(format!("word {:?} does not run from s_{n1} to s_{n2}", self.word));
        }
        if self.prefixes.last() != Some(&p.longest()) {
            return Err("last prefix is not w_P".into());
        }
        let set: BTreeSet<Root> = self.betas.iter().cloned().collect();
        let u: BTreeSet<Root> = p.unipotent_roots().into_iter().collect();
        if set.len() != d || set != u {
            return Err("betas do not enumerate the roots of U_P".into());
        }
        for k in 1..=d {
            let x_prev = &self.prefixes[k - 1];
            let x = &self.prefixes[k];
            if *x != x_prev.compose(&Perm::simple(self.rank, self.word[k - 1])) {
                return Err(format!("x_{k} != x_{{k-1}} s_r"));
            }
            if x_prev.act_root(Root::simple(self.word[k - 1])) != self.betas[k - 1] {
                return Err(format!("x_{{k-1}}(α_r) != β_{k}"));
            }
            let inv: BTreeSet<Root> = x.inversion_set().into_iter().collect();
            let first: BTreeSet<Root> = self.betas[..k].iter().cloned().collect();
            if inv != first {
                return Err(format!("inversion set of x_{k} is not {{β_1..β_{k}}}"));
            }
        }
        Ok(())
    }

    pub fn word_string(&self) -> String {
        self.word.iter().map(|r| format!("s{r}")).collect::<Vec<_>>().join(" ")
    }
}
