//! k-degeneracy: covers by flats of small total rank.
//!
//! A simple matroid is k-degenerate when it has rank at most 1 or its
//! elements are covered by flats `F_1, .., F_t` of rank at least 2 with
//! `Σ (r(F_i) - 1) < k`. `g_k` is the size of a largest k-degenerate subset.
//!
//! A subset `S` is k-degenerate in `M|S` exactly when it is covered by flats
//! of `M` within the same budget, so the search runs over flats of `M`
//! intersected with the allowed region. It is an exhaustive branch and bound;
//! running out of nodes is an error, never an approximation.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::flats::{flat_levels, Flat};
use crate::matroid::Matroid;

pub const DEFAULT_NODE_LIMIT: u64 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyWitness {
    pub flats: Vec<Flat>,
    /// `Σ (r(F_i) - 1)`
    pub rank_sum: usize,
}

impl DegeneracyWitness {
    pub fn new(flats: Vec<Flat>) -> Self {
        let rank_sum = flats.iter().map(|f| f.rank - 1).sum();
        DegeneracyWitness { flats, rank_sum }
    }

    pub fn empty() -> Self {
        DegeneracyWitness { flats: Vec::new(), rank_sum: 0 }
    }

    pub fn covered(&self) -> ElemSet {
        self.flats.iter().fold(ElemSet::empty(), |acc, f| acc.union(f.elements))
    }
}

/// A largest k-degenerate set found by [`largest_k_degenerate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerateSet {
    pub k: usize,
    pub elements: ElemSet,
    pub witness: DegeneracyWitness,
}

impl DegenerateSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `X_2 ⊆ X_3 ⊆ .. ⊆ X_k`; `levels[0]` is `X_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratification {
    pub k: usize,
    pub levels: Vec<DegenerateSet>,
}

impl Stratification {
    /// `X_i` for `2 <= i <= k`; `X_1` is the empty set.
    pub fn set(&self, i: usize) -> ElemSet {
        if i < 2 {
            ElemSet::empty()
        } else {
            self.levels[i - 2].elements
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyProfile {
    pub n: usize,
    pub rank: usize,
    /// `g[k - 2]` is the largest k-degenerate set, for `k = 2..=max_k`.
    pub g: Vec<DegenerateSet>,
    pub essential_dimension: usize,
}

impl DegeneracyProfile {
    pub fn g(&self, k: usize) -> usize {
        self.g[k - 2].len()
    }
}

/// Search context caching the flats of a simple matroid.
pub struct DegeneracySearch<'a> {
    m: &'a Matroid,
    node_limit: u64,
    levels: Vec<Vec<ElemSet>>,
    solved: HashMap<(usize, ElemSet), DegenerateSet>,
}

struct Candidate {
    region: ElemSet,
    flat: ElemSet,
    rank: usize,
    cost: usize,
}

struct Dfs<'c> {
    cands: &'c [Candidate],
    region: ElemSet,
    nodes: u64,
    limit: u64,
    best: ElemSet,
    best_choice: Vec<usize>,
    chosen: Vec<usize>,
}

impl Dfs<'_> {
    fn better(&self, u: ElemSet) -> bool {
        match u.len().cmp(&self.best.len()) {
            Ordering::Greater => true,
            Ordering::Equal => u.lex_cmp(self.best) == Ordering::Less,
            Ordering::Less => false,
        }
    }

    fn done(&self) -> bool {
        self.best == self.region
    }

    fn run(&mut self, start: usize, budget: usize, covered: ElemSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::SearchLimit(self.limit));
        }
        if self.better(covered) {
            self.best = covered;
            self.best_choice = self.chosen.clone();
        }
        if budget == 0 || self.done() {
            return Ok(());
        }
        for i in start..self.cands.len() {
            let c = &self.cands[i];
            // candidates are sorted by density, so this bound only shrinks
            let bound = covered.len() + budget * c.region.len() / c.cost;
            if bound.min(self.region.len()) < self.best.len() {
                break;
            }
            if c.cost > budget || c.region.is_subset(covered) {
                continue;
            }
            self.chosen.push(i);
            self.run(i + 1, budget - c.cost, covered.union(c.region))?;
            self.chosen.pop();
            if self.done() {
                break;
            }
        }
        Ok(())
    }
}

impl<'a> DegeneracySearch<'a> {
    /// Fails unless `m` is simple.
    pub fn new(m: &'a Matroid, node_limit: u64) -> Result<Self> {
        if !m.is_simple() {
            return Err(Error::Precondition("degeneracy needs a simple matroid".into()));
        }
        Ok(DegeneracySearch { m, node_limit, levels: Vec::new(), solved: HashMap::new() })
    }

    pub fn matroid(&self) -> &Matroid {
        self.m
    }

    fn ensure_levels(&mut self, k: usize) {
        let want = k.min(self.m.full_rank());
        if self.levels.len() <= want {
            self.levels = flat_levels(self.m, want);
        }
    }

    fn flat(&self, elements: ElemSet) -> Flat {
        Flat { elements, rank: self.m.rank(elements) }
    }

    /// Largest k-degenerate subset of `within` (the whole ground set by default).
    ///
    /// Among sets of maximum size the lexicographically smallest sorted
    /// element list wins.
    pub fn largest(&mut self, k: usize, within: Option<ElemSet>) -> Result<DegenerateSet> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("degeneracy needs k >= 2, got {k}")));
        }
        let region = within.unwrap_or(self.m.full_set());
        self.m.check_set(region)?;
        if let Some(hit) = self.solved.get(&(k, region)) {
            return Ok(hit.clone());
        }
        let found = self.solve(k, region)?;
        self.solved.insert((k, region), found.clone());
        Ok(found)
    }

    fn solve(&mut self, k: usize, region: ElemSet) -> Result<DegenerateSet> {
        let region_rank = self.m.rank(region);
        if region_rank <= 1 {
            return Ok(DegenerateSet { k, elements: region, witness: DegeneracyWitness::empty() });
        }
        if region_rank <= k {
            // {cl(W)} costs r(W) - 1 < k
            let witness = DegeneracyWitness::new(vec![self.flat(self.m.closure(region))]);
            return Ok(DegenerateSet { k, elements: region, witness });
        }
        self.ensure_levels(k);
        let cands = self.candidates(k, region);
        let mut dfs = Dfs {
            cands: &cands,
            region,
            nodes: 0,
            limit: self.node_limit,
            best: ElemSet::empty(),
            best_choice: Vec::new(),
            chosen: Vec::new(),
        };
        dfs.run(0, k - 1, ElemSet::empty())?;
        let flats = dfs
            .best_choice
            .iter()
            .map(|&i| Flat { elements: cands[i].flat, rank: cands[i].rank })
            .collect();
        Ok(DegenerateSet { k, elements: dfs.best, witness: DegeneracyWitness::new(flats) })
    }

    /// Flats of rank 2..=k restricted to `region`, keeping only those that
    /// still span their rank there and are not dominated by a cheaper superset.
    fn candidates(&self, k: usize, region: ElemSet) -> Vec<Candidate> {
        let mut by_region: HashMap<ElemSet, Candidate> = HashMap::new();
        for rank in 2..=k.min(self.levels.len() - 1) {
            for &flat in &self.levels[rank] {
                let part = flat.intersection(region);
                if part.len() < rank || self.m.rank(part) < rank {
                    continue;
                }
                let cost = rank - 1;
                by_region
                    .entry(part)
                    .and_modify(|c| {
                        if cost < c.cost {
                            *c = Candidate { region: part, flat, rank, cost };
                        }
                    })
                    .or_insert(Candidate { region: part, flat, rank, cost });
            }
        }
        let mut all: Vec<Candidate> = by_region.into_values().collect();
        // larger regions first so that dominators are seen before what they dominate
        all.sort_by(|a, b| {
            b.region
                .len()
                .cmp(&a.region.len())
                .then(a.cost.cmp(&b.cost))
                .then(a.region.lex_cmp(b.region))
        });
        let mut kept: Vec<Candidate> = Vec::new();
        for c in all {
            let dominated = kept
                .iter()
                .any(|d| d.cost <= c.cost && c.region.is_subset(d.region));
            if !dominated {
                kept.push(c);
            }
        }
        // density |region| / cost, descending; ties broken deterministically
        kept.sort_by(|a, b| {
            (b.region.len() * a.cost)
                .cmp(&(a.region.len() * b.cost))
                .then(a.cost.cmp(&b.cost))
                .then(a.region.lex_cmp(b.region))
        });
        kept
    }

    pub fn is_degenerate(&mut self, k: usize) -> Result<Option<DegeneracyWitness>> {
        let full = self.m.full_set();
        let best = self.largest(k, None)?;
        Ok((best.elements == full).then_some(best.witness))
    }

    /// Largest `k >= 2` for which the matroid is not k-degenerate, or 1.
    pub fn essential_dimension(&mut self) -> Result<usize> {
        let r = self.m.full_rank();
        let mut d = 1;
        // every matroid of rank r >= 2 is r-degenerate via the cover {E}
        for k in 2..r {
            if self.is_degenerate(k)?.is_some() {
                break;
            }
            d = k;
        }
        Ok(d)
    }

    pub fn stratification(&mut self, k: usize) -> Result<Stratification> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("stratification needs k >= 2, got {k}")));
        }
        let mut levels = vec![self.largest(k, None)?];
        for i in (2..k).rev() {
            let outer = levels.last().unwrap().elements;
            levels.push(self.largest(i, Some(outer))?);
        }
        levels.reverse();
        Ok(Stratification { k, levels })
    }

    pub fn profile(&mut self, max_k: usize) -> Result<DegeneracyProfile> {
        let g = (2..=max_k.max(2))
            .map(|k| self.largest(k, None))
            .collect::<Result<Vec<_>>>()?;
        Ok(DegeneracyProfile {
            n: self.m.len(),
            rank: self.m.full_rank(),
            g,
            essential_dimension: self.essential_dimension()?,
        })
    }
}

/// `(true, witness)` when `m` is k-degenerate.
pub fn is_k_degenerate(m: &Matroid, k: usize, node_limit: u64) -> Result<(bool, Option<DegeneracyWitness>)> {
    let w = DegeneracySearch::new(m, node_limit)?.is_degenerate(k)?;
    Ok((w.is_some(), w))
}

pub fn largest_k_degenerate(
    m: &Matroid,
    k: usize,
    within: Option<ElemSet>,
    node_limit: u64,
) -> Result<DegenerateSet> {
    DegeneracySearch::new(m, node_limit)?.largest(k, within)
}

pub fn essential_dimension(m: &Matroid, node_limit: u64) -> Result<usize> {
    DegeneracySearch::new(m, node_limit)?.essential_dimension()
}

pub fn optimal_stratification(m: &Matroid, k: usize, node_limit: u64) -> Result<Stratification> {
    DegeneracySearch::new(m, node_limit)?.stratification(k)
}

/// Merges non-skew pairs of flats until the witness is pairwise skew.
///
/// Two flats are skew when `r(A ∪ B) = r(A) + r(B)`; a non-skew pair is
/// replaced by `cl(A ∪ B)`, which never increases `Σ (r - 1)`.
pub fn normalize_witness(m: &Matroid, w: &DegeneracyWitness) -> Result<DegeneracyWitness> {
    for f in &w.flats {
        m.check_set(f.elements)?;
        if f.rank < 2 || m.rank(f.elements) != f.rank || !m.is_flat(f.elements) {
            return Err(Error::InvalidWitness(format!(
                "{:?} is not a flat of rank {} >= 2",
                f.elements, f.rank
            )));
        }
    }
    let mut flats: Vec<Flat> = w.flats.clone();
    'outer: loop {
        for i in 0..flats.len() {
            for j in i + 1..flats.len() {
                let union = flats[i].elements.union(flats[j].elements);
                let r = m.rank(union);
                if r < flats[i].rank + flats[j].rank {
                    let merged = Flat { elements: m.closure(union), rank: r };
                    flats.remove(j);
                    flats[i] = merged;
                    continue 'outer;
                }
            }
        }
        break;
    }
    flats.sort_by(|a, b| a.elements.lex_cmp(b.elements));
    Ok(DegeneracyWitness::new(flats))
}
