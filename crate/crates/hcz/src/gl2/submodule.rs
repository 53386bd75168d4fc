use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{act, KVec, ALL_OPS};
use crate::arith::{GaussianRational, Rational};
use crate::error::{HczError, Result};

type G = GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleReport {
    pub l: i64,
    pub dimension: usize,
    pub k_types: Vec<i64>,
    /// the span is stable under every generator
    pub closed: bool,
    /// the quotient splits into a raising-closed and a lowering-closed half
    pub quotient_splits: bool,
}

/// K-types reached from `seed` by the generators, cut off at |ν| ≤ bound.
fn closure(seed: i64, z: &G, bound: i64) -> BTreeSet<i64> {
    let mut seen = BTreeSet::from([seed]);
    let mut todo = vec![seed];
    while let Some(nu) = todo.pop() {
        for op in ALL_OPS {
            for (mu, _) in act(op, &KVec::<G>::basis(nu), z).terms() {
                if mu.abs() <= bound && seen.insert(*mu) {
                    todo.push(*mu);
                }
            }
        }
    }
    seen
}

/// Every generator maps span{Φ_ν : ν ∈ inside} into span{Φ_ν : ν ∈ target} + span(ignore).
fn maps_into(nus: &[i64], z: &G, target: &dyn Fn(i64) -> bool, ignore: &dyn Fn(i64) -> bool) -> bool {
    nus.iter().all(|&nu| {
        ALL_OPS.iter().all(|&op| act(op, &KVec::<G>::basis(nu), z).support().into_iter().all(|mu| target(mu) || ignore(mu)))
    })
}

/// For l ≤ 0 the induced module with z = l has the finite-dimensional
/// submodule span{Φ_ν : l ≤ ν ≤ -l}.
pub fn invariant_submodule(l: i64, _d: &Rational) -> Result<SubmoduleReport> {
    if l > 0 {
        return Err(HczError::NotNegative(l));
    }
    let z = G::int(l);
    let bound = -l + 12;
    let found = closure(l, &z, bound);
    let k_types: Vec<i64> = found.iter().cloned().collect();
    let inside = |mu: i64| l <= mu && mu <= -l;
    let closed = k_types.iter().all(|&nu| inside(nu)) && maps_into(&k_types, &z, &inside, &|_| false);

    let par = l.rem_euclid(2);
    let upper: Vec<i64> = (-l + 2..=bound - 2).filter(|x| x.rem_euclid(2) == par).collect();
    let lower: Vec<i64> = (-(bound - 2)..=l - 2).filter(|x| x.rem_euclid(2) == par).collect();
    let quotient_splits = maps_into(&upper, &z, &|mu| mu > -l, &inside) && maps_into(&lower, &z, &|mu| mu < l, &inside);
    Ok(SubmoduleReport { l, dimension: k_types.len(), k_types, closed, quotient_splits })
}

/// For l ≥ 0 the module with z = l + 2 contains D+ ⊕ D- spanned by |ν| ≥ l + 2.
pub fn exact2_check(l: i64, window: i64) -> Result<bool> {
    if l < 0 {
        return Err(HczError::Invalid(format!("exact2 check needs l >= 0, got {l}")));
    }
    let z = G::int(l + 2);
    let kill_plus = act(super::LieOp::PMinus, &KVec::<G>::basis(l + 2), &z).is_zero();
    let kill_minus = act(super::LieOp::PPlus, &KVec::<G>::basis(-l - 2), &z).is_zero();
    let par = l.rem_euclid(2);
    let top = l + 2 + 2 * window;
    let dplus: Vec<i64> = (l + 2..=top).filter(|x| x.rem_euclid(2) == par).collect();
    let dminus: Vec<i64> = (-top..=-l - 2).filter(|x| x.rem_euclid(2) == par).collect();
    let closed_plus = maps_into(&dplus, &z, &|mu| mu >= l + 2, &|_| false);
    let closed_minus = maps_into(&dminus, &z, &|mu| mu <= -l - 2, &|_| false);
    Ok(kill_plus && kill_minus && closed_plus && closed_minus)
}
