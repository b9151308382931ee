//! Exact checks of incidence inequalities and flat statistics.
//!
//! Every check produces a [`CheckReport`] (or a [`RatioReport`]) whose
//! numbers are exact rationals. Checks that need a representability
//! hypothesis read it from the instance flags and refuse to run without it.
//! Probes report a statistic with no bound attached and always hold.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::Rational;
use crate::degeneracy::{DegeneracySearch, DEFAULT_NODE_LIMIT};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::flats::flat_levels;
use crate::instance::{Instance, Representability};
use crate::matroid::{truncate_to, Matroid, Recipe};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub lhs: Rational,
    /// `None` for informational probes.
    pub rhs: Option<Rational>,
    pub holds: bool,
    pub context: BTreeMap<String, Rational>,
    pub flags: BTreeMap<String, bool>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn inequality(name: CheckName, lhs: Rational, rhs: Rational) -> Self {
        CheckReport {
            check_name: name.to_string(),
            holds: lhs <= rhs,
            lhs,
            rhs: Some(rhs),
            context: BTreeMap::new(),
            flags: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    fn probe(name: CheckName, value: Rational) -> Self {
        CheckReport {
            check_name: name.to_string(),
            lhs: value,
            rhs: None,
            holds: true,
            context: BTreeMap::new(),
            flags: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    fn with(mut self, key: &str, value: impl Into<Rational>) -> Self {
        self.context.insert(key.to_owned(), value.into());
        self
    }

    fn flag(mut self, key: &str, value: bool) -> Self {
        self.flags.insert(key.to_owned(), value);
        self
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// lhs == rhs
    pub fn is_equality(&self) -> bool {
        self.rhs.as_ref() == Some(&self.lhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    pub check_name: String,
    pub ratio: Rational,
    pub numerator: Rational,
    pub denominator: Rational,
    pub context: BTreeMap<String, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckName {
    AverageFlat,
    AverageLine,
    Dbe,
    Hirzebruch,
    HyperplaneProbe,
    LineBound,
    LundRatio,
    Melchior,
    PlaneProbe,
    Strat1,
    Strat2,
    TopHeavy,
}

impl CheckName {
    pub const ALL: [CheckName; 12] = [
        CheckName::AverageFlat,
        CheckName::AverageLine,
        CheckName::Dbe,
        CheckName::Hirzebruch,
        CheckName::HyperplaneProbe,
        CheckName::LineBound,
        CheckName::LundRatio,
        CheckName::Melchior,
        CheckName::PlaneProbe,
        CheckName::Strat1,
        CheckName::Strat2,
        CheckName::TopHeavy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::AverageFlat => "average-flat",
            CheckName::AverageLine => "average-line",
            CheckName::Dbe => "dbe",
            CheckName::Hirzebruch => "hirzebruch",
            CheckName::HyperplaneProbe => "hyperplane-probe",
            CheckName::LineBound => "line-bound",
            CheckName::LundRatio => "lund-ratio",
            CheckName::Melchior => "melchior",
            CheckName::PlaneProbe => "plane-probe",
            CheckName::Strat1 => "strat1",
            CheckName::Strat2 => "strat2",
            CheckName::TopHeavy => "top-heavy",
        }
    }

    /// Checks of proven theorems, where a failure means a bug.
    pub fn is_theorem(self) -> bool {
        !matches!(
            self,
            CheckName::AverageFlat | CheckName::HyperplaneProbe | CheckName::LundRatio | CheckName::PlaneProbe
        )
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check `{s}`")))
    }
}

fn int(x: usize) -> Rational {
    Rational::from(x)
}

fn avg(total: usize, count: usize, what: &str) -> Result<Rational> {
    Rational::ratio(total, count).ok_or_else(|| Error::Precondition(format!("no {what}")))
}

fn pow2(e: usize) -> Rational {
    Rational::from(BigInt::from(1) << e)
}

fn binom2(r: usize) -> usize {
    r * r.saturating_sub(1) / 2
}

/// Shared state for running several checks on one matroid: the flat
/// lattice levels and the degeneracy search are computed once.
pub struct Analysis<'a> {
    m: &'a Matroid,
    flags: Representability,
    levels: Vec<Vec<ElemSet>>,
    search: Option<DegeneracySearch<'a>>,
    node_limit: u64,
}

impl<'a> Analysis<'a> {
    pub fn new(m: &'a Matroid, flags: Representability, node_limit: u64) -> Self {
        Analysis { m, flags, levels: Vec::new(), search: None, node_limit }
    }

    pub fn of(inst: &'a Instance, node_limit: u64) -> Self {
        Self::new(&inst.matroid, inst.meta.representability, node_limit)
    }

    pub fn matroid(&self) -> &Matroid {
        self.m
    }

    fn n(&self) -> usize {
        self.m.len()
    }

    fn rank(&self) -> usize {
        self.m.full_rank()
    }

    /// The rank-k flats; empty when `k` exceeds the rank.
    pub fn flats(&mut self, k: usize) -> &[ElemSet] {
        if k > self.rank() {
            return &[];
        }
        if self.levels.len() <= k {
            self.levels = flat_levels(self.m, self.rank());
        }
        &self.levels[k]
    }

    fn search(&mut self) -> Result<&mut DegeneracySearch<'a>> {
        if self.search.is_none() {
            self.search = Some(DegeneracySearch::new(self.m, self.node_limit)?);
        }
        Ok(self.search.as_mut().unwrap())
    }

    pub fn g(&mut self, k: usize) -> Result<usize> {
        Ok(self.search()?.largest(k, None)?.len())
    }

    fn need_rank3(&self, check: CheckName) -> Result<()> {
        if self.rank() != 3 {
            return Err(Error::Precondition(format!("{check} needs rank 3, got rank {}", self.rank())));
        }
        Ok(())
    }

    fn need_simple(&self, check: CheckName) -> Result<()> {
        if !self.m.is_simple() {
            return Err(Error::Precondition(format!("{check} needs a simple matroid")));
        }
        Ok(())
    }

    fn need_real(&self, check: CheckName) -> Result<()> {
        if !self.flags.real {
            return Err(Error::Precondition(format!("{check} needs a real-representable instance")));
        }
        Ok(())
    }

    fn need_complex(&self, check: CheckName) -> Result<()> {
        if !self.flags.complex {
            return Err(Error::Precondition(format!("{check} needs a complex-representable instance")));
        }
        Ok(())
    }

    fn line_sizes(&mut self) -> Vec<usize> {
        self.flats(2).iter().map(|l| l.len()).collect()
    }

    fn rank3_simple(&self, check: CheckName) -> Result<()> {
        self.need_rank3(check)?;
        self.need_simple(check)
    }

    /// `Σ_L (|L| - 3) ≤ -3`
    pub fn melchior(&mut self) -> Result<CheckReport> {
        let name = CheckName::Melchior;
        self.rank3_simple(name)?;
        self.need_real(name)?;
        let sizes = self.line_sizes();
        let lhs: i64 = sizes.iter().map(|&s| s as i64 - 3).sum();
        Ok(CheckReport::inequality(name, lhs.into(), (-3i64).into())
            .with("n", self.n())
            .with("lines", sizes.len()))
    }

    /// True when some line holds all but one point.
    pub fn is_near_pencil(&mut self) -> bool {
        let n = self.n();
        self.rank() == 3 && self.flats(2).iter().any(|l| l.len() + 1 == n)
    }

    /// `Σ_L (|L| - 4) ≤ -(n + m_2)`
    pub fn hirzebruch(&mut self) -> Result<CheckReport> {
        let name = CheckName::Hirzebruch;
        self.rank3_simple(name)?;
        self.need_complex(name)?;
        if self.is_near_pencil() {
            return Err(Error::Precondition("hirzebruch excludes near-pencils".into()));
        }
        let sizes = self.line_sizes();
        let m2 = sizes.iter().filter(|&&s| s == 2).count();
        let lhs: i64 = sizes.iter().map(|&s| s as i64 - 4).sum();
        let rhs = -((self.n() + m2) as i64);
        Ok(CheckReport::inequality(name, lhs.into(), rhs.into())
            .with("n", self.n())
            .with("m_2", m2)
            .with("lines", sizes.len()))
    }

    /// `n ≤ |L(M)|`
    pub fn dbe(&mut self) -> Result<CheckReport> {
        let name = CheckName::Dbe;
        self.rank3_simple(name)?;
        let lines = self.flats(2).len();
        Ok(CheckReport::inequality(name, int(self.n()), int(lines)).with("n", self.n()))
    }

    /// `|F_a| ≤ |F_b|` for `1 ≤ a < b ≤ r - a`.
    pub fn top_heavy(&mut self, a: usize, b: usize) -> Result<CheckReport> {
        let r = self.rank();
        if !(1 <= a && a < b && b + a <= r) {
            return Err(Error::InvalidParameter(format!(
                "top-heavy needs 1 <= a < b <= r - a, got a = {a}, b = {b}, r = {r}"
            )));
        }
        let fa = self.flats(a).len();
        let fb = self.flats(b).len();
        Ok(CheckReport::inequality(CheckName::TopHeavy, int(fa), int(fb))
            .with("a", a)
            .with("b", b))
    }

    /// Every legal `(a, b)` pair, in lexicographic order.
    pub fn top_heavy_all(&mut self) -> Result<Vec<CheckReport>> {
        let r = self.rank();
        let mut out = Vec::new();
        for a in 1..r {
            for b in a + 1..=r.saturating_sub(a) {
                out.push(self.top_heavy(a, b)?);
            }
        }
        if out.is_empty() {
            return Err(Error::Precondition(format!("no legal top-heavy pair in rank {r}")));
        }
        Ok(out)
    }

    /// `n (n - g_2) / 12 ≤ |L(M)|`
    pub fn line_bound(&mut self) -> Result<CheckReport> {
        let name = CheckName::LineBound;
        self.rank3_simple(name)?;
        self.need_complex(name)?;
        let n = self.n();
        let g2 = self.g(2)?;
        let lhs = Rational::ratio(n * (n - g2), 12).unwrap();
        let lines = self.flats(2).len();
        Ok(CheckReport::inequality(name, lhs, int(lines))
            .with("n", n)
            .with("g_2", g2))
    }

    /// Average line size `≤ 6`.
    pub fn average_line(&mut self) -> Result<CheckReport> {
        let name = CheckName::AverageLine;
        self.rank3_simple(name)?;
        self.need_complex(name)?;
        let sizes = self.line_sizes();
        let total: usize = sizes.iter().sum();
        let average = avg(total, sizes.len(), "lines")?;
        Ok(CheckReport::inequality(name, average, 6i64.into())
            .with("lines", sizes.len())
            .with("total_size", total))
    }

    /// `n - |X_i| ≤ (k + 1 - i)(n - g_i)` for `i = 2..=k`.
    pub fn strat1(&mut self, k: usize) -> Result<Vec<CheckReport>> {
        let name = CheckName::Strat1;
        self.need_simple(name)?;
        let n = self.n();
        let strat = self.search()?.stratification(k)?;
        let mut out = Vec::new();
        for i in 2..=k {
            let xi = strat.set(i).len();
            let gi = self.g(i)?;
            let lhs = int(n - xi);
            let rhs = int((k + 1 - i) * (n - gi));
            out.push(
                CheckReport::inequality(name, lhs, rhs)
                    .with("k", k)
                    .with("i", i)
                    .with("n", n)
                    .with(&format!("g_{i}"), gi)
                    .with(&format!("|X_{i}|"), xi),
            );
        }
        Ok(out)
    }

    /// `Σ_{F ∈ F_k} (|F| - k) ≤ 2^{k(k-1)} n Π_{i=2}^{min(d,k)} (n - |X_i|)`.
    pub fn strat2(&mut self, k: usize) -> Result<CheckReport> {
        let name = CheckName::Strat2;
        if k < 2 {
            return Err(Error::InvalidParameter(format!("strat2 needs k >= 2, got {k}")));
        }
        self.need_simple(name)?;
        self.need_complex(name)?;
        let n = self.n();
        let lhs: usize = self.flats(k).iter().map(|f| f.len() - k).sum();
        let strat = self.search()?.stratification(k)?;
        let d = self.search()?.essential_dimension()?;
        let top = d.min(k);
        let mut rhs = pow2(k * (k - 1)) * int(n);
        let mut report = CheckReport::inequality(name, int(0), int(0))
            .with("k", k)
            .with("n", n)
            .with("d", d);
        for i in 2..=top {
            let xi = strat.set(i).len();
            rhs = rhs * int(n - xi);
            report = report.with(&format!("|X_{i}|"), xi);
        }
        if d > k {
            report = report.note(format!("product truncated at X_{k}; d = {d} exceeds k"));
        }
        report.holds = int(lhs) <= rhs;
        report.lhs = int(lhs);
        report.rhs = Some(rhs);
        Ok(report.with("flats", self.flats(k).len()))
    }

    /// `|F_k| / (n Π_{i=2}^k (n - g_i))`
    pub fn lund_ratio(&mut self, k: usize) -> Result<RatioReport> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("lund-ratio needs k >= 2, got {k}")));
        }
        let n = self.n();
        let mut context = BTreeMap::new();
        let mut denominator = int(n);
        for i in 2..=k {
            let gi = self.g(i)?;
            context.insert(format!("g_{i}"), int(gi));
            denominator = denominator * int(n - gi);
        }
        if denominator.is_zero() {
            return Err(Error::Precondition(format!("lund-ratio needs n > g_{k}")));
        }
        let count = self.flats(k).len();
        context.insert("k".into(), int(k));
        context.insert("n".into(), int(n));
        Ok(RatioReport {
            check_name: CheckName::LundRatio.to_string(),
            ratio: int(count) / denominator.clone(),
            numerator: int(count),
            denominator,
            context,
        })
    }

    /// E is the union of two skew lines.
    pub fn is_two_line_sum(&mut self) -> bool {
        if self.rank() != 4 {
            return false;
        }
        let full = self.m.full_set();
        let m = self.m;
        self.flats(2).iter().any(|&l| {
            let rest = full.difference(l);
            m.rank(rest) == 2 && m.is_flat(rest)
        })
    }

    /// Average plane size of the rank-4 truncation.
    pub fn plane_probe(&mut self) -> Result<CheckReport> {
        let name = CheckName::PlaneProbe;
        if self.rank() < 4 {
            return Err(Error::Precondition(format!("{name} needs rank >= 4, got rank {}", self.rank())));
        }
        self.need_simple(name)?;
        // planes of the truncation are the planes of M
        let planes = self.flats(3);
        let total: usize = planes.iter().map(|p| p.len()).sum();
        let count = planes.len();
        let two_lines = self.is_two_line_sum();
        Ok(CheckReport::probe(name, avg(total, count, "planes")?)
            .with("planes", count)
            .with("total_size", total)
            .flag("is_two_line_sum", two_lines))
    }

    pub fn average_flat(&mut self, include_trivial: bool) -> Result<Rational> {
        self.need_simple(CheckName::AverageFlat)?;
        let r = self.rank();
        let (mut total, mut count) = (0, 0);
        for k in 0..=r {
            if !include_trivial && (k == 0 || k == r) {
                continue;
            }
            let level = self.flats(k);
            total += level.iter().map(|f| f.len()).sum::<usize>();
            count += level.len();
        }
        avg(total, count, "nontrivial flats")
    }

    fn average_flat_report(&mut self, include_trivial: bool) -> Result<CheckReport> {
        let value = self.average_flat(include_trivial)?;
        Ok(CheckReport::probe(CheckName::AverageFlat, value).flag("include_trivial", include_trivial))
    }

    /// Average hyperplane size of a Dowling geometry minus `C(r, 2)`.
    pub fn hyperplane_probe(&mut self) -> Result<CheckReport> {
        let name = CheckName::HyperplaneProbe;
        let Some(Recipe::Dowling { rank, group_order, joints }) = self.m.recipe().cloned() else {
            return Err(Error::Precondition(format!("{name} needs a Dowling geometry")));
        };
        let hyperplanes = self.flats(rank - 1);
        let total: usize = hyperplanes.iter().map(|h| h.len()).sum();
        let count = hyperplanes.len();
        let average = avg(total, count, "hyperplanes")?;
        let reference = binom2(rank);
        let mut report = CheckReport::probe(name, average.clone() - int(reference))
            .with("average", average)
            .with("hyperplanes", count)
            .with("r", rank)
            .with("t", group_order as usize)
            .with("binom_r_2", reference);
        if !joints {
            report = report.note("joints deleted");
        }
        Ok(report)
    }
}

/// Parameters for [`run_checks`].
#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Values of k for strat1, strat2 and lund-ratio.
    pub ks: Vec<usize>,
    pub include_trivial: bool,
    pub node_limit: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { ks: vec![2, 3, 4], include_trivial: false, node_limit: DEFAULT_NODE_LIMIT }
    }
}

pub const SKIPPED: &str = "skipped: precondition";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Check(CheckReport),
    Ratio(RatioReport),
    /// `status` is always `skipped: precondition`.
    Skipped { check_name: String, status: String, reason: String },
}

impl Outcome {
    pub fn check_name(&self) -> &str {
        match self {
            Outcome::Check(r) => &r.check_name,
            Outcome::Ratio(r) => &r.check_name,
            Outcome::Skipped { check_name, .. } => check_name,
        }
    }

    /// A theorem check that came out false.
    pub fn is_violation(&self) -> bool {
        match self {
            Outcome::Check(r) => !r.holds,
            _ => false,
        }
    }
}

/// Runs the named checks; checks whose preconditions fail are reported as
/// skipped. Search-limit and other errors abort the batch.
///
/// Outcomes are ordered by check name, parameters ascending within a name.
pub fn run_checks(inst: &Instance, names: &[CheckName], opts: &CheckOptions) -> Result<Vec<Outcome>> {
    let mut names = names.to_vec();
    names.sort();
    names.dedup();
    let mut a = Analysis::of(inst, opts.node_limit);
    let mut out = Vec::new();
    for name in names {
        let result: Result<Vec<Outcome>> = match name {
            CheckName::Melchior => a.melchior().map(|r| vec![Outcome::Check(r)]),
            CheckName::Hirzebruch => a.hirzebruch().map(|r| vec![Outcome::Check(r)]),
            CheckName::Dbe => a.dbe().map(|r| vec![Outcome::Check(r)]),
            CheckName::TopHeavy => a.top_heavy_all().map(|v| v.into_iter().map(Outcome::Check).collect()),
            CheckName::LineBound => a.line_bound().map(|r| vec![Outcome::Check(r)]),
            CheckName::AverageLine => a.average_line().map(|r| vec![Outcome::Check(r)]),
            CheckName::Strat1 => per_k(&opts.ks, |k| {
                a.strat1(k).map(|v| v.into_iter().map(Outcome::Check).collect())
            }),
            CheckName::Strat2 => per_k(&opts.ks, |k| a.strat2(k).map(|r| vec![Outcome::Check(r)])),
            CheckName::LundRatio => per_k(&opts.ks, |k| a.lund_ratio(k).map(|r| vec![Outcome::Ratio(r)])),
            CheckName::PlaneProbe => a.plane_probe().map(|r| vec![Outcome::Check(r)]),
            CheckName::AverageFlat => a.average_flat_report(opts.include_trivial).map(|r| vec![Outcome::Check(r)]),
            CheckName::HyperplaneProbe => a.hyperplane_probe().map(|r| vec![Outcome::Check(r)]),
        };
        match result {
            Ok(v) => out.extend(v),
            Err(e) if is_skip(&e) => out.push(Outcome::Skipped {
                check_name: name.to_string(),
                status: SKIPPED.to_owned(),
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn is_skip(e: &Error) -> bool {
    matches!(e, Error::Precondition(_) | Error::InvalidParameter(_))
}

/// Runs `f` for every k; a k whose precondition fails is skipped silently
/// unless every k fails.
fn per_k(ks: &[usize], mut f: impl FnMut(usize) -> Result<Vec<Outcome>>) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    let mut last_skip = None;
    for &k in ks {
        match f(k) {
            Ok(v) => out.extend(v),
            Err(e) if is_skip(&e) => last_skip = Some(e),
            Err(e) => return Err(e),
        }
    }
    match (out.is_empty(), last_skip) {
        (true, Some(e)) => Err(e),
        _ => Ok(out),
    }
}

pub fn melchior_check(inst: &Instance) -> Result<CheckReport> {
    Analysis::of(inst, DEFAULT_NODE_LIMIT).melchior()
}

pub fn hirzebruch_check(inst: &Instance) -> Result<CheckReport> {
    Analysis::of(inst, DEFAULT_NODE_LIMIT).hirzebruch()
}

pub fn dbe_check(m: &Matroid) -> Result<CheckReport> {
    Analysis::new(m, Representability::NONE, DEFAULT_NODE_LIMIT).dbe()
}

pub fn top_heavy_check(m: &Matroid, a: usize, b: usize) -> Result<CheckReport> {
    Analysis::new(m, Representability::NONE, DEFAULT_NODE_LIMIT).top_heavy(a, b)
}

pub fn line_bound_check(inst: &Instance, node_limit: u64) -> Result<CheckReport> {
    Analysis::of(inst, node_limit).line_bound()
}

pub fn average_line_check(inst: &Instance) -> Result<CheckReport> {
    Analysis::of(inst, DEFAULT_NODE_LIMIT).average_line()
}

pub fn strat1_check(m: &Matroid, k: usize, node_limit: u64) -> Result<Vec<CheckReport>> {
    Analysis::new(m, Representability::NONE, node_limit).strat1(k)
}

pub fn strat2_check(inst: &Instance, k: usize, node_limit: u64) -> Result<CheckReport> {
    Analysis::of(inst, node_limit).strat2(k)
}

pub fn lund_ratio(m: &Matroid, k: usize, node_limit: u64) -> Result<RatioReport> {
    Analysis::new(m, Representability::NONE, node_limit).lund_ratio(k)
}

/// Probes `truncate_to(m, 4)`; the rank-4 truncation keeps the planes of `m`.
pub fn plane_theorem_probe(m: &Matroid) -> Result<CheckReport> {
    let mut report = Analysis::new(m, Representability::NONE, DEFAULT_NODE_LIMIT).plane_probe()?;
    if m.full_rank() > 4 {
        let t = truncate_to(m, 4)?;
        debug_assert_eq!(Rational::from(flat_levels(&t, 3)[3].len()), report.context["planes"]);
        report = report.note(format!("truncated from rank {}", m.full_rank()));
    }
    Ok(report)
}

pub fn average_flat_size(m: &Matroid, include_trivial: bool) -> Result<Rational> {
    Analysis::new(m, Representability::NONE, DEFAULT_NODE_LIMIT).average_flat(include_trivial)
}

pub fn hyperplane_average_probe(m: &Matroid) -> Result<CheckReport> {
    Analysis::new(m, Representability::NONE, DEFAULT_NODE_LIMIT).hyperplane_probe()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::matroid::direct_sum;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d).unwrap()
    }

    fn generic(n: usize) -> Instance {
        uniform_instance(3, n).unwrap()
    }

    fn ag23() -> Instance {
        from_incidence(9, ag23_lines(), Representability::COMPLEX, "ag23").unwrap()
    }

    fn two_lines(a: usize) -> Matroid {
        let l = uniform(2, a).unwrap();
        direct_sum(&l, &l).unwrap()
    }

    #[test]
    fn melchior_examples() {
        let r = melchior_check(&generic(5)).unwrap();
        assert_eq!(r.lhs, q(-10, 1));
        assert!(r.holds && !r.is_equality());
        for n in [4, 6, 9] {
            let r = melchior_check(&near_pencil(n).unwrap()).unwrap();
            assert!(r.is_equality(), "near-pencil {n}");
        }
        // not flagged real
        assert!(melchior_check(&ag23()).is_err());
        assert!(melchior_check(&uniform_instance(4, 6).unwrap()).is_err());
    }

    #[test]
    fn hirzebruch_examples() {
        let r = hirzebruch_check(&generic(5)).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone().unwrap()), (q(-20, 1), q(-15, 1)));
        let r = hirzebruch_check(&generic(4)).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone().unwrap()), (q(-12, 1), q(-10, 1)));
        let dg = dowling_instance(3, 3, true).unwrap();
        let r = hirzebruch_check(&dg).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone().unwrap()), (q(-12, 1), q(-9, 1)));
        assert_eq!(r.context["m_2"], q(0, 1));
        assert!(r.holds);
        assert!(hirzebruch_check(&near_pencil(6).unwrap()).is_err());
    }

    #[test]
    fn dbe_examples() {
        assert!(dbe_check(&uniform(3, 3).unwrap()).unwrap().is_equality());
        assert!(dbe_check(&near_pencil(5).unwrap().matroid).unwrap().is_equality());
        let r = dbe_check(&ag23().matroid).unwrap();
        assert_eq!((r.lhs, r.rhs.unwrap()), (q(9, 1), q(12, 1)));
    }

    #[test]
    fn top_heavy_examples() {
        let r = top_heavy_check(&uniform(4, 6).unwrap(), 1, 3).unwrap();
        assert_eq!((r.lhs, r.rhs.unwrap()), (q(6, 1), q(20, 1)));
        let r = top_heavy_check(&uniform(3, 5).unwrap(), 1, 2).unwrap();
        assert_eq!((r.lhs, r.rhs.unwrap()), (q(5, 1), q(10, 1)));
        let r = top_heavy_check(&dowling(4, 2, false).unwrap(), 1, 3).unwrap();
        assert_eq!(r.lhs, q(16, 1));
        assert!(r.holds);
        assert!(top_heavy_check(&uniform(4, 6).unwrap(), 2, 3).is_err());
        assert!(top_heavy_check(&uniform(4, 6).unwrap(), 0, 1).is_err());
    }

    #[test]
    fn line_bound_examples() {
        let r = line_bound_check(&generic(5), DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone().unwrap()), (q(5, 4), q(10, 1)));
        let r = line_bound_check(&near_pencil(6).unwrap(), DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone().unwrap()), (q(1, 2), q(6, 1)));
        let r = line_bound_check(&ag23(), DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone().unwrap()), (q(9, 2), q(12, 1)));
    }

    #[test]
    fn average_line_examples() {
        assert_eq!(average_line_check(&generic(5)).unwrap().lhs, q(2, 1));
        assert_eq!(average_line_check(&ag23()).unwrap().lhs, q(3, 1));
        assert_eq!(average_line_check(&near_pencil(6).unwrap()).unwrap().lhs, q(5, 2));
    }

    #[test]
    fn strat1_examples() {
        let m = figure1(2).unwrap();
        let reports = strat1_check(&m, 5, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(reports.len(), 4);
        let gs: Vec<_> = (2..=5).map(|i| reports[i - 2].context[&format!("g_{i}")].clone()).collect();
        assert_eq!(gs, vec![q(3, 1), q(6, 1), q(9, 1), q(11, 1)]);
        assert!(reports.iter().all(|r| r.holds));

        let reports = strat1_check(&two_lines(3), 3, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!((reports[0].lhs.clone(), reports[0].rhs.clone().unwrap()), (q(3, 1), q(6, 1)));
        // rank <= k: the last level is everything
        let last = reports.last().unwrap();
        assert_eq!((last.lhs.clone(), last.rhs.clone().unwrap()), (q(0, 1), q(0, 1)));
    }

    #[test]
    fn strat2_examples() {
        let inst = Instance::new(
            crate::instance::InstanceMeta::new("two-lines", Representability::REAL),
            two_lines(3),
        );
        let r = strat2_check(&inst, 3, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(r.lhs, q(6, 1));
        assert_eq!(r.context["d"], q(2, 1));
        assert_eq!(r.rhs.clone().unwrap(), q(64 * 6 * 3, 1));
        assert!(r.holds);

        let r = strat2_check(&uniform_instance(4, 8).unwrap(), 3, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(r.context["d"], q(3, 1));
        assert!(r.holds);

        let r = strat2_check(&dowling_instance(4, 2, false).unwrap(), 3, DEFAULT_NODE_LIMIT).unwrap();
        assert!(r.holds);
        // not flagged complex
        let bare = Instance::new(crate::instance::InstanceMeta::new("x", Representability::NONE), two_lines(3));
        assert!(strat2_check(&bare, 3, DEFAULT_NODE_LIMIT).is_err());
    }

    #[test]
    fn lund_examples() {
        let r = lund_ratio(&uniform(3, 5).unwrap(), 2, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(r.ratio, q(2, 3));
        let r = lund_ratio(&uniform(4, 8).unwrap(), 3, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!((r.numerator.clone(), r.denominator.clone()), (q(56, 1), q(192, 1)));
        assert_eq!(r.ratio, q(7, 24));
        // k-degenerate: zero denominator
        assert!(lund_ratio(&two_lines(3), 3, DEFAULT_NODE_LIMIT).is_err());
    }

    #[test]
    fn plane_probe_examples() {
        let r = plane_theorem_probe(&two_lines(5)).unwrap();
        assert_eq!(r.lhs, q(6, 1));
        assert!(r.flags["is_two_line_sum"]);
        let r = plane_theorem_probe(&uniform(4, 7).unwrap()).unwrap();
        assert_eq!(r.lhs, q(3, 1));
        assert!(!r.flags["is_two_line_sum"]);
        let r = plane_theorem_probe(&dowling(4, 2, false).unwrap()).unwrap();
        assert!(!r.flags["is_two_line_sum"]);
        assert!(plane_theorem_probe(&uniform(3, 5).unwrap()).is_err());
        let r = plane_theorem_probe(&figure1(2).unwrap()).unwrap();
        assert!(r.holds && !r.notes.is_empty());
    }

    #[test]
    fn average_flat_examples() {
        assert_eq!(average_flat_size(&uniform(1, 1).unwrap(), true).unwrap(), q(1, 2));
        assert_eq!(average_flat_size(&uniform(3, 4).unwrap(), true).unwrap(), q(5, 3));
        // nontrivial: 4 points and 6 lines
        assert_eq!(average_flat_size(&uniform(3, 4).unwrap(), false).unwrap(), q(16, 10));
    }

    #[test]
    fn hyperplane_probe_examples() {
        let r = hyperplane_average_probe(&dowling(3, 3, false).unwrap()).unwrap();
        // 3 joint lines of size 5, 9 balanced triangles, 9 joint-edge pairs
        assert_eq!(r.context["hyperplanes"], q(21, 1));
        assert_eq!(r.context["average"], q(60, 21));
        assert_eq!(r.lhs, q(-1, 7));
        assert!(hyperplane_average_probe(&uniform(3, 5).unwrap()).is_err());
    }

    #[test]
    fn batch_skips_and_orders() {
        let inst = dowling_instance(4, 2, false).unwrap();
        let out = run_checks(&inst, &CheckName::ALL, &CheckOptions::default()).unwrap();
        let names: Vec<&str> = out.iter().map(Outcome::check_name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert!(out.iter().any(|o| matches!(o, Outcome::Skipped { check_name, .. } if check_name == "melchior")));
        assert!(out.iter().all(|o| !o.is_violation()));
        assert!(out.iter().any(|o| matches!(o, Outcome::Check(r) if r.check_name == "top-heavy")));
        assert!(out.iter().any(|o| matches!(o, Outcome::Check(r) if r.check_name == "strat2")));
    }

    #[test]
    fn parse_names() {
        for c in CheckName::ALL {
            assert_eq!(c.as_str().parse::<CheckName>().unwrap(), c);
        }
        assert!("nope".parse::<CheckName>().is_err());
    }
}
