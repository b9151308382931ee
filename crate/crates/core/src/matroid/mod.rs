//! Matroids as rank oracles.
//!
//! Every matroid, whether backed by a matrix, a gain graph, an incidence
//! list or a lazy construction on other matroids, is exposed through the
//! same [`Matroid`] handle. Handles are cheap to clone and safe to share
//! between threads.

mod gain;
mod incidence;
mod linear;
mod ops;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

pub use gain::{GainElement, GainGraphMatroid};
pub use incidence::IncidenceRank3Matroid;
pub use linear::LinearMatroid;
pub use ops::{
    contract, direct_sum, principal_truncate, restrict, simplify, truncate_to, two_sum,
    Simplification,
};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// Element labels, indexed `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.len() > ElemSet::CAPACITY {
            return Err(Error::TooManyElements(labels.len()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidParameter(format!("duplicate element label `{l}`")));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Labels `0`, `1`, ...
    pub fn numbered(n: usize) -> Result<Self> {
        GroundSet::new((0..n).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> ElemSet {
        ElemSet::full(self.len())
    }
}

/// How a matroid was produced by a named generator, when that matters for
/// serialization back into a construction script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    GraphicK4,
    Dowling { rank: usize, group_order: u32, joints: bool },
}

/// A lazily evaluated construction on other matroids.
#[derive(Clone, Debug)]
pub enum Derived {
    /// Element `i` is `elements[i]` of the base.
    Restrict { base: Matroid, elements: Vec<usize> },
    Contract {
        base: Matroid,
        kept: Vec<usize>,
        contracted: ElemSet,
        contracted_rank: usize,
    },
    Truncate { base: Matroid, rank: usize },
    PrincipalTruncate { base: Matroid, flat: ElemSet },
    /// Left elements first, then right.
    DirectSum { left: Matroid, right: Matroid },
    /// `left_kept` then `right_kept`; basepoints removed.
    TwoSum {
        left: Matroid,
        left_point: usize,
        right: Matroid,
        right_point: usize,
        left_kept: Vec<usize>,
        right_kept: Vec<usize>,
    },
}

#[derive(Clone, Debug)]
pub enum Kind {
    /// U_{r,n}: rank is `min(|X|, r)`.
    Uniform { rank: usize },
    Linear(LinearMatroid),
    GainGraph(GainGraphMatroid),
    Incidence(IncidenceRank3Matroid),
    Derived(Derived),
}

const MEMO_CAPACITY: usize = 1 << 20;

/// Rank cache keyed by subset bitmask.
#[derive(Default)]
struct Memo(RwLock<HashMap<u128, u8>>);

impl Memo {
    fn get(&self, set: ElemSet) -> Option<usize> {
        self.0.read().unwrap().get(&set.bits()).map(|&r| r as usize)
    }

    fn put(&self, set: ElemSet, rank: usize) {
        let mut map = self.0.write().unwrap();
        if map.len() >= MEMO_CAPACITY {
            map.clear();
        }
        map.insert(set.bits(), rank as u8);
    }
}

struct Core {
    kind: Kind,
    recipe: Option<Recipe>,
    memo: Option<Memo>,
    full_rank: OnceLock<usize>,
}

/// Shared handle to a matroid: a labelled ground set plus a rank oracle.
#[derive(Clone)]
pub struct Matroid {
    ground: Arc<GroundSet>,
    core: Arc<Core>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.len())
            .field("kind", &self.core.kind)
            .finish()
    }
}

impl Matroid {
    pub fn new(ground: GroundSet, kind: Kind) -> Result<Self> {
        Self::with_recipe(ground, kind, None)
    }

    pub(crate) fn with_recipe(ground: GroundSet, kind: Kind, recipe: Option<Recipe>) -> Result<Self> {
        let n = ground.len();
        let expected = match &kind {
            Kind::Uniform { rank } => {
                if *rank > n {
                    return Err(Error::InvalidParameter(format!(
                        "uniform rank {rank} exceeds size {n}"
                    )));
                }
                n
            }
            Kind::Linear(m) => m.len(),
            Kind::GainGraph(g) => g.len(),
            Kind::Incidence(i) => i.len(),
            Kind::Derived(d) => d.len(),
        };
        if expected != n {
            return Err(Error::Shape(format!(
                "{n} labels for a matroid on {expected} elements"
            )));
        }
        // primitive oracles are cheaper than a locked lookup
        let memo = matches!(kind, Kind::Linear(_) | Kind::Derived(_)).then(Memo::default);
        Ok(Matroid {
            ground: Arc::new(ground),
            core: Arc::new(Core { kind, recipe, memo, full_rank: OnceLock::new() }),
        })
    }

    pub fn uniform(rank: usize, n: usize) -> Result<Self> {
        Matroid::new(GroundSet::numbered(n)?, Kind::Uniform { rank })
    }

    pub fn linear(matrix: crate::algebra::ExactMatrix) -> Result<Self> {
        let n = matrix.cols();
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        Matroid::new(GroundSet::new(labels)?, Kind::Linear(LinearMatroid::new(matrix)))
    }

    pub fn incidence(n: usize, lines: Vec<Vec<usize>>) -> Result<Self> {
        let inner = IncidenceRank3Matroid::new(n, lines)?;
        Matroid::new(GroundSet::numbered(n)?, Kind::Incidence(inner))
    }

    /// The same oracle under different labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self> {
        let ground = GroundSet::new(labels)?;
        if ground.len() != self.len() {
            return Err(Error::Shape(format!(
                "{} labels for {} elements",
                ground.len(),
                self.len()
            )));
        }
        Ok(Matroid { ground: Arc::new(ground), core: self.core.clone() })
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn labels(&self) -> &[String] {
        self.ground.labels()
    }

    pub fn label(&self, e: usize) -> &str {
        self.ground.label(e)
    }

    pub fn full_set(&self) -> ElemSet {
        self.ground.full()
    }

    pub fn kind(&self) -> &Kind {
        &self.core.kind
    }

    pub fn recipe(&self) -> Option<&Recipe> {
        self.core.recipe.as_ref()
    }

    /// Whether two handles share one oracle instance.
    pub fn same_oracle(&self, other: &Matroid) -> bool {
        Arc::ptr_eq(&self.core, &other.core)
    }

    pub fn check_set(&self, set: ElemSet) -> Result<()> {
        match set.difference(self.full_set()).min() {
            Some(e) => Err(Error::ElementOutOfRange(e, self.len())),
            None => Ok(()),
        }
    }

    pub fn set_from(&self, elements: &[usize]) -> Result<ElemSet> {
        if let Some(&e) = elements.iter().find(|&&e| e >= self.len()) {
            return Err(Error::ElementOutOfRange(e, self.len()));
        }
        Ok(elements.iter().collect())
    }

    /// Rank of `set`, which must lie inside the ground set.
    pub fn rank(&self, set: ElemSet) -> usize {
        debug_assert!(self.check_set(set).is_ok());
        let Some(memo) = &self.core.memo else {
            return self.compute_rank(set);
        };
        if let Some(r) = memo.get(set) {
            return r;
        }
        let r = self.compute_rank(set);
        memo.put(set, r);
        r
    }

    /// Rank with range checking.
    pub fn try_rank(&self, set: ElemSet) -> Result<usize> {
        self.check_set(set)?;
        Ok(self.rank(set))
    }

    /// r(M)
    pub fn full_rank(&self) -> usize {
        *self.core.full_rank.get_or_init(|| self.rank(self.full_set()))
    }

    fn compute_rank(&self, set: ElemSet) -> usize {
        match &self.core.kind {
            Kind::Uniform { rank } => set.len().min(*rank),
            Kind::Linear(m) => m.rank(set),
            Kind::GainGraph(g) => g.rank(set),
            Kind::Incidence(i) => i.rank(set),
            Kind::Derived(d) => d.rank(set),
        }
    }

    /// `cl(X) = {e : r(X ∪ e) = r(X)}`.
    pub fn closure(&self, set: ElemSet) -> ElemSet {
        let r = self.rank(set);
        let mut cl = set;
        for e in self.full_set().difference(set) {
            if self.rank(set.with(e)) == r {
                cl.insert(e);
            }
        }
        cl
    }

    pub fn try_closure(&self, set: ElemSet) -> Result<ElemSet> {
        self.check_set(set)?;
        Ok(self.closure(set))
    }

    pub fn is_flat(&self, set: ElemSet) -> bool {
        let r = self.rank(set);
        self.full_set()
            .difference(set)
            .iter()
            .all(|e| self.rank(set.with(e)) > r)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(ElemSet::singleton(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank(self.full_set().without(e)) < self.full_rank()
    }

    /// No loops and no parallel pairs.
    pub fn is_simple(&self) -> bool {
        let n = self.len();
        (0..n).all(|e| !self.is_loop(e))
            && (0..n).all(|a| (a + 1..n).all(|b| self.rank(ElemSet::singleton(a).with(b)) == 2))
    }

    /// Exhaustive oracle comparison on every subset. Only for small ground sets.
    pub fn oracle_eq(&self, other: &Matroid) -> bool {
        self.len() == other.len()
            && crate::elemset::all_subsets(self.len()).all(|s| self.rank(s) == other.rank(s))
    }
}

impl Derived {
    fn len(&self) -> usize {
        match self {
            Derived::Restrict { elements, .. } => elements.len(),
            Derived::Contract { kept, .. } => kept.len(),
            Derived::Truncate { base, .. } | Derived::PrincipalTruncate { base, .. } => base.len(),
            Derived::DirectSum { left, right } => left.len() + right.len(),
            Derived::TwoSum { left_kept, right_kept, .. } => left_kept.len() + right_kept.len(),
        }
    }

    fn rank(&self, set: ElemSet) -> usize {
        match self {
            Derived::Restrict { base, elements } => base.rank(map_into(set, elements, 0)),
            Derived::Contract { base, kept, contracted, contracted_rank } => {
                base.rank(map_into(set, kept, 0).union(*contracted)) - contracted_rank
            }
            Derived::Truncate { base, rank } => base.rank(set).min(*rank),
            Derived::PrincipalTruncate { base, flat } => {
                let r = base.rank(set);
                // F ⊆ cl(X) iff adding F does not raise the rank
                if base.rank(set.union(*flat)) == r {
                    r - 1
                } else {
                    r
                }
            }
            Derived::DirectSum { left, right } => {
                let n1 = left.len();
                let lo = set.intersection(ElemSet::full(n1));
                let hi = ElemSet::from_bits(set.bits().checked_shr(n1 as u32).unwrap_or(0));
                left.rank(lo) + right.rank(hi)
            }
            Derived::TwoSum { left, left_point, right, right_point, left_kept, right_kept } => {
                let k = left_kept.len();
                let x1 = map_into(set.intersection(ElemSet::full(k)), left_kept, 0);
                let x2 = map_into(set.difference(ElemSet::full(k)), right_kept, k);
                let glued = left.rank(x1.with(*left_point)) + right.rank(x2.with(*right_point)) - 1;
                glued.min(left.rank(x1) + right.rank(x2))
            }
        }
    }
}

/// Maps bits `offset + i` of `set` to `targets[i]`.
fn map_into(set: ElemSet, targets: &[usize], offset: usize) -> ElemSet {
    set.iter().map(|e| targets[e - offset]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_must_be_unique() {
        assert!(GroundSet::new(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn uniform_oracle() {
        let m = Matroid::uniform(3, 5).unwrap();
        assert_eq!(m.full_rank(), 3);
        assert_eq!(m.rank(ElemSet::from_bits(0b11)), 2);
        assert!(Matroid::uniform(6, 5).is_err());
        assert!(m.try_rank(ElemSet::singleton(7)).is_err());
    }

    #[test]
    fn closure_of_pairs_in_generic_rank3() {
        let m = Matroid::uniform(3, 5).unwrap();
        for a in 0..5 {
            for b in a + 1..5 {
                let s = ElemSet::singleton(a).with(b);
                assert_eq!(m.closure(s), s);
            }
        }
        assert_eq!(m.closure(ElemSet::empty()), ElemSet::empty());
    }
}
