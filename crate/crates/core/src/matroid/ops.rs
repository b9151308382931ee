//! Minors, truncations and sums, all as lazy oracle wrappers.

use std::collections::HashSet;

use super::{Derived, GroundSet, Kind, Matroid};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};

fn derived(ground: GroundSet, d: Derived) -> Result<Matroid> {
    Matroid::new(ground, Kind::Derived(d))
}

fn labels_of(m: &Matroid, elements: &[usize]) -> Vec<String> {
    elements.iter().map(|&e| m.label(e).to_owned()).collect()
}

/// Joins two label lists, priming right-hand labels that collide.
fn merge_labels(left: Vec<String>, right: Vec<String>) -> Vec<String> {
    let mut taken: HashSet<String> = left.iter().cloned().collect();
    let mut out = left;
    for mut label in right {
        while taken.contains(&label) {
            label.push('\'');
        }
        taken.insert(label.clone());
        out.push(label);
    }
    out
}

/// M|S. Elements keep their relative order and labels.
pub fn restrict(m: &Matroid, subset: ElemSet) -> Result<Matroid> {
    m.check_set(subset)?;
    let elements = subset.to_vec();
    let ground = GroundSet::new(labels_of(m, &elements))?;
    derived(ground, Derived::Restrict { base: m.clone(), elements })
}

/// M/C on `E ∖ C`, with `r'(X) = r(X ∪ C) - r(C)`.
pub fn contract(m: &Matroid, contracted: ElemSet) -> Result<Matroid> {
    m.check_set(contracted)?;
    let kept = m.full_set().difference(contracted).to_vec();
    let ground = GroundSet::new(labels_of(m, &kept))?;
    derived(
        ground,
        Derived::Contract {
            base: m.clone(),
            kept,
            contracted,
            contracted_rank: m.rank(contracted),
        },
    )
}

/// Truncation to rank `k`: `r'(X) = min(r(X), k)`.
pub fn truncate_to(m: &Matroid, k: usize) -> Result<Matroid> {
    if k < 1 || k > m.full_rank() {
        return Err(Error::InvalidParameter(format!(
            "truncation rank {k} outside 1..={}",
            m.full_rank()
        )));
    }
    derived(m.ground().clone(), Derived::Truncate { base: m.clone(), rank: k })
}

/// Principal truncation of the flat `flat`: the rank of every set whose
/// closure contains the flat drops by one.
pub fn principal_truncate(m: &Matroid, flat: ElemSet) -> Result<Matroid> {
    m.check_set(flat)?;
    if !m.is_flat(flat) {
        return Err(Error::NotAFlat);
    }
    if m.rank(flat) == 0 {
        return Err(Error::InvalidParameter("principal truncation needs a flat of rank >= 1".into()));
    }
    derived(m.ground().clone(), Derived::PrincipalTruncate { base: m.clone(), flat })
}

pub fn direct_sum(left: &Matroid, right: &Matroid) -> Result<Matroid> {
    let n = left.len() + right.len();
    if n > ElemSet::CAPACITY {
        return Err(Error::TooManyElements(n));
    }
    let ground = GroundSet::new(merge_labels(left.labels().to_vec(), right.labels().to_vec()))?;
    derived(ground, Derived::DirectSum { left: left.clone(), right: right.clone() })
}

/// 2-sum of `left` and `right` along the basepoints, which are removed.
///
/// Rank is the parallel-connection formula restricted to sets avoiding the
/// basepoint: `min(r1(X1 + p1) + r2(X2 + p2) - 1, r1(X1) + r2(X2))`.
pub fn two_sum(left: &Matroid, left_point: usize, right: &Matroid, right_point: usize) -> Result<Matroid> {
    for (m, p) in [(left, left_point), (right, right_point)] {
        if p >= m.len() {
            return Err(Error::ElementOutOfRange(p, m.len()));
        }
        if m.len() < 3 {
            return Err(Error::InvalidParameter("2-sum operands need at least 3 elements".into()));
        }
        if m.is_loop(p) || m.is_coloop(p) {
            return Err(Error::BadBasepoint(p));
        }
    }
    let n = left.len() + right.len() - 2;
    if n > ElemSet::CAPACITY {
        return Err(Error::TooManyElements(n));
    }
    let left_kept = left.full_set().without(left_point).to_vec();
    let right_kept = right.full_set().without(right_point).to_vec();
    let ground = GroundSet::new(merge_labels(
        labels_of(left, &left_kept),
        labels_of(right, &right_kept),
    ))?;
    derived(
        ground,
        Derived::TwoSum {
            left: left.clone(),
            left_point,
            right: right.clone(),
            right_point,
            left_kept,
            right_kept,
        },
    )
}

/// Result of [`simplify`].
#[derive(Clone, Debug)]
pub struct Simplification {
    pub matroid: Matroid,
    /// For each original element, its index in the simplification (`None` for loops).
    pub mapping: Vec<Option<usize>>,
}

/// Deletes loops and keeps the smallest element of each parallel class.
pub fn simplify(m: &Matroid) -> Result<Simplification> {
    let n = m.len();
    let mut rep: Vec<Option<usize>> = vec![None; n];
    let mut kept = Vec::new();
    for e in 0..n {
        if m.is_loop(e) {
            continue;
        }
        let class = kept
            .iter()
            .copied()
            .find(|&k: &usize| m.rank(ElemSet::singleton(k).with(e)) == 1);
        match class {
            Some(k) => rep[e] = rep[k],
            None => {
                rep[e] = Some(kept.len());
                kept.push(e);
            }
        }
    }
    let matroid = if kept.len() == n {
        m.clone()
    } else {
        restrict(m, kept.iter().collect())?
    };
    Ok(Simplification { matroid, mapping: rep })
}
