//! Flat enumeration and flat-size statistics.
//!
//! Flats are generated level by level: the rank-(k+1) flats are exactly the
//! closures `cl(F ∪ e)` of rank-k flats `F` with `e ∉ F`. Each level is
//! deduplicated and sorted canonically, so results do not depend on how the
//! work was scheduled across threads.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Rational;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// A closed set together with its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Flat {
    pub elements: ElemSet,
    pub rank: usize,
}

impl Flat {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Count, total size and exact average size of the rank-k flats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatStats {
    pub rank_k: usize,
    pub count: usize,
    pub total_size: usize,
    pub average: Rational,
}

fn canonical(mut sets: Vec<ElemSet>) -> Vec<ElemSet> {
    sets.sort_by(|a, b| a.lex_cmp(*b));
    sets
}

/// The flats of rank `k + 1` covering the given rank-`k` flats.
fn next_level(m: &Matroid, level: &[ElemSet]) -> Vec<ElemSet> {
    let full = m.full_set();
    let found: Vec<Vec<ElemSet>> = level
        .par_iter()
        .map(|&flat| {
            let mut out = Vec::new();
            // elements already swallowed by an earlier cover of this flat give nothing new
            let mut covered = flat;
            for e in full.difference(flat) {
                if covered.contains(e) {
                    continue;
                }
                let cover = m.closure(flat.with(e));
                covered = covered.union(cover);
                out.push(cover);
            }
            out
        })
        .collect();
    let unique: HashSet<ElemSet> = found.into_iter().flatten().collect();
    canonical(unique.into_iter().collect())
}

/// Every level of the lattice of flats, `levels[k]` holding the rank-k flats.
pub fn flat_levels(m: &Matroid, max_rank: usize) -> Vec<Vec<ElemSet>> {
    let top = max_rank.min(m.full_rank());
    let mut levels = vec![vec![m.closure(ElemSet::empty())]];
    for _ in 0..top {
        let next = next_level(m, levels.last().unwrap());
        levels.push(next);
    }
    levels
}

/// All rank-k flats in canonical order (sorted element lists, lexicographic).
pub fn flats_of_rank(m: &Matroid, k: usize) -> Result<Vec<Flat>> {
    if k > m.full_rank() {
        return Err(Error::InvalidParameter(format!(
            "flat rank {k} exceeds matroid rank {}",
            m.full_rank()
        )));
    }
    let levels = flat_levels(m, k);
    Ok(levels[k]
        .iter()
        .map(|&elements| Flat { elements, rank: k })
        .collect())
}

/// Every flat, rank 0 through r(M) inclusive.
pub fn all_flats(m: &Matroid) -> Vec<Flat> {
    flat_levels(m, m.full_rank())
        .into_iter()
        .enumerate()
        .flat_map(|(rank, level)| level.into_iter().map(move |elements| Flat { elements, rank }))
        .collect()
}

pub fn stats_of(k: usize, flats: &[ElemSet]) -> Result<FlatStats> {
    let count = flats.len();
    let total_size: usize = flats.iter().map(|f| f.len()).sum();
    let average = Rational::ratio(total_size, count)
        .ok_or_else(|| Error::Precondition(format!("no flats of rank {k}")))?;
    Ok(FlatStats { rank_k: k, count, total_size, average })
}

pub fn flat_size_stats(m: &Matroid, k: usize) -> Result<FlatStats> {
    if k > m.full_rank() {
        return Err(Error::Precondition(format!(
            "no flats of rank {k} in a rank-{} matroid",
            m.full_rank()
        )));
    }
    let levels = flat_levels(m, k);
    stats_of(k, &levels[k])
}

/// Brute-force reference: the closure of every subset. Only for small `n`.
pub fn flats_by_closure_scan(m: &Matroid) -> Vec<Flat> {
    let unique: HashSet<ElemSet> = crate::elemset::all_subsets(m.len())
        .map(|s| m.closure(s))
        .collect();
    let mut flats: Vec<Flat> = unique
        .into_iter()
        .map(|elements| Flat { elements, rank: m.rank(elements) })
        .collect();
    flats.sort_by(|a, b| a.rank.cmp(&b.rank).then(a.elements.lex_cmp(b.elements)));
    flats
}
