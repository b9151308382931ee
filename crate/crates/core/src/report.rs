//! Deterministic report documents shared by the command-line tool and the
//! C interface.
//!
//! JSON output has sorted keys and no timestamps; rationals are `"p/q"`
//! strings. Identical inputs give byte-identical documents regardless of
//! the number of worker threads.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Rational;
use crate::degeneracy::{DegeneracySearch, DegenerateSet};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::flats::{flat_levels, stats_of, FlatStats};
use crate::generators::dowling;
use crate::instance::{Instance, Representability};
use crate::io::{read_instance, Format};
use crate::matroid::Matroid;
use crate::verify::{run_checks, Analysis, CheckName, CheckOptions, Outcome};

pub const TOOL: &str = "matroidkit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct SetView {
    pub elements: ElemSet,
    pub labels: Vec<String>,
}

impl SetView {
    pub fn new(m: &Matroid, set: ElemSet) -> Self {
        SetView { elements: set, labels: set.iter().map(|e| m.label(e).to_owned()).collect() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceSummary {
    pub name: String,
    pub n: usize,
    pub rank: usize,
    pub representability: Representability,
    pub params: BTreeMap<String, String>,
}

impl InstanceSummary {
    pub fn of(inst: &Instance) -> Self {
        InstanceSummary {
            name: inst.name().to_owned(),
            n: inst.matroid.len(),
            rank: inst.matroid.full_rank(),
            representability: inst.meta.representability,
            params: inst.meta.params.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatListing {
    pub rank: usize,
    pub flats: Vec<SetView>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessFlat {
    pub rank: usize,
    pub set: SetView,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerateView {
    pub k: usize,
    pub size: usize,
    pub set: SetView,
    pub witness: Vec<WitnessFlat>,
    pub rank_sum: usize,
}

impl DegenerateView {
    fn new(m: &Matroid, d: &DegenerateSet) -> Self {
        DegenerateView {
            k: d.k,
            size: d.len(),
            set: SetView::new(m, d.elements),
            witness: d
                .witness
                .flats
                .iter()
                .map(|f| WitnessFlat { rank: f.rank, set: SetView::new(m, f.elements) })
                .collect(),
            rank_sum: d.witness.rank_sum,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegeneracySection {
    pub k: usize,
    pub g: usize,
    pub largest: DegenerateView,
    /// `X_2, .., X_k`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stratification: Option<Vec<DegenerateView>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub essential_dimension: Option<usize>,
}

/// Everything reported about one instance.
#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub instance: InstanceSummary,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flat_stats: Vec<FlatStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub average_flat_size: Option<Rational>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flats: Vec<FlatListing>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<DegeneracySection>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Outcome>,
}

impl Section {
    pub fn new(inst: &Instance) -> Self {
        Section {
            instance: InstanceSummary::of(inst),
            flat_stats: Vec::new(),
            average_flat_size: None,
            flats: Vec::new(),
            degeneracy: None,
            checks: Vec::new(),
        }
    }

    pub fn has_violation(&self) -> bool {
        self.checks.iter().any(Outcome::is_violation)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub instances: Vec<Section>,
}

impl ReportDocument {
    pub fn new(instances: Vec<Section>) -> Self {
        ReportDocument { tool: TOOL.to_owned(), version: VERSION.to_owned(), instances }
    }

    pub fn has_violation(&self) -> bool {
        self.instances.iter().any(Section::has_violation)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report documents serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("report documents serialize");
        s.push('\n');
        s
    }
}

/// What [`flats_section`] should include.
#[derive(Clone, Copy, Debug, Default)]
pub struct FlatsRequest {
    pub rank: Option<usize>,
    pub list: bool,
    pub stats: bool,
    pub include_trivial: bool,
}

/// Flat statistics and listings. Without a rank, every rank is covered
/// (ranks 0 and r(M) only with `include_trivial`).
pub fn flats_section(inst: &Instance, req: FlatsRequest) -> Result<Section> {
    let m = &inst.matroid;
    let r = m.full_rank();
    let ranks: Vec<usize> = match req.rank {
        Some(k) if k > r => {
            return Err(Error::InvalidParameter(format!("flat rank {k} exceeds matroid rank {r}")))
        }
        Some(k) => vec![k],
        None if req.include_trivial => (0..=r).collect(),
        None => (1..r).collect(),
    };
    let top = ranks.iter().copied().max().unwrap_or(0);
    let levels = flat_levels(m, top);
    let mut section = Section::new(inst);
    let stats = req.stats || !req.list;
    for &k in &ranks {
        if stats {
            section.flat_stats.push(stats_of(k, &levels[k])?);
        }
        if req.list {
            let flats = levels[k].iter().map(|&f| SetView::new(m, f)).collect();
            section.flats.push(FlatListing { rank: k, flats });
        }
    }
    if req.rank.is_none() && stats && m.is_simple() {
        let mut a = Analysis::new(m, inst.meta.representability, 0);
        section.average_flat_size = a.average_flat(req.include_trivial).ok();
    }
    Ok(section)
}

pub fn degeneracy_section(inst: &Instance, k: usize, stratify: bool, node_limit: u64) -> Result<Section> {
    let m = &inst.matroid;
    let mut search = DegeneracySearch::new(m, node_limit)?;
    let largest = search.largest(k, None)?;
    let (stratification, essential_dimension) = if stratify {
        let strat = search.stratification(k)?;
        let levels = strat.levels.iter().map(|d| DegenerateView::new(m, d)).collect();
        (Some(levels), Some(search.essential_dimension()?))
    } else {
        (None, None)
    };
    let mut section = Section::new(inst);
    section.degeneracy = Some(DegeneracySection {
        k,
        g: largest.len(),
        largest: DegenerateView::new(m, &largest),
        stratification,
        essential_dimension,
    });
    Ok(section)
}

pub fn verify_section(inst: &Instance, checks: &[CheckName], opts: &CheckOptions) -> Result<Section> {
    let mut section = Section::new(inst);
    section.checks = run_checks(inst, checks, opts)?;
    Ok(section)
}

/// Instance files directly inside `dir`, sorted by file name.
pub fn instance_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && Format::from_path(&path).is_ok() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Flat statistics for ranks `1..r` and every check, for each instance file
/// in `dir`.
pub fn corpus_report(dir: &Path, opts: &CheckOptions) -> Result<ReportDocument> {
    let files = instance_files(dir)?;
    let instances = files.iter().map(|p| read_instance(p)).collect::<Result<Vec<_>>>()?;
    let sections = instances
        .par_iter()
        .map(|inst| {
            let mut s = flats_section(inst, FlatsRequest { stats: true, ..Default::default() })?;
            s.checks = run_checks(inst, &CheckName::ALL, opts)?;
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReportDocument::new(sections))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesRow {
    pub instance: String,
    pub t: u32,
    pub average: Rational,
}

/// Average size of the rank-(r-1) flats of DG(r, Z_t) for each `t`.
pub fn dowling_series(rank: usize, ts: &[u32]) -> Result<Vec<SeriesRow>> {
    ts.iter()
        .map(|&t| {
            let m = dowling(rank, t, false)?;
            let k = rank - 1;
            let levels = flat_levels(&m, k);
            Ok(SeriesRow {
                instance: format!("dowling-{rank}-{t}"),
                t,
                average: stats_of(k, &levels[k])?.average,
            })
        })
        .collect()
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    write(&mut w).expect("writing CSV to memory");
    String::from_utf8(w.into_inner().expect("flushing CSV to memory")).expect("CSV is UTF-8")
}

fn context_cell(context: &BTreeMap<String, Rational>) -> String {
    context.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

/// `instance,check,lhs,rhs,holds,context`
pub fn checks_csv(doc: &ReportDocument) -> String {
    csv_string(|w| {
        w.write_record(["instance", "check", "lhs", "rhs", "holds", "context"])?;
        for s in &doc.instances {
            for o in &s.checks {
                let name = s.instance.name.as_str();
                match o {
                    Outcome::Check(r) => w.write_record([
                        name,
                        &r.check_name,
                        &r.lhs.to_string(),
                        &r.rhs.as_ref().map(ToString::to_string).unwrap_or_default(),
                        if r.holds { "true" } else { "false" },
                        &context_cell(&r.context),
                    ])?,
                    Outcome::Ratio(r) => w.write_record([
                        name,
                        &r.check_name,
                        &r.ratio.to_string(),
                        "",
                        "true",
                        &context_cell(&r.context),
                    ])?,
                    Outcome::Skipped { check_name, status, .. } => {
                        w.write_record([name, check_name, "", "", status, ""])?
                    }
                }
            }
        }
        Ok(())
    })
}

/// `instance,rank,count,total_size,average`
pub fn stats_csv(doc: &ReportDocument) -> String {
    csv_string(|w| {
        w.write_record(["instance", "rank", "count", "total_size", "average"])?;
        for s in &doc.instances {
            for st in &s.flat_stats {
                w.write_record([
                    s.instance.name.clone(),
                    st.rank_k.to_string(),
                    st.count.to_string(),
                    st.total_size.to_string(),
                    st.average.to_string(),
                ])?;
            }
        }
        Ok(())
    })
}

/// `instance,rank,flat` with the flat as space-separated labels.
pub fn listing_csv(doc: &ReportDocument) -> String {
    csv_string(|w| {
        w.write_record(["instance", "rank", "flat"])?;
        for s in &doc.instances {
            for l in &s.flats {
                for f in &l.flats {
                    w.write_record([s.instance.name.clone(), l.rank.to_string(), f.labels.join(" ")])?;
                }
            }
        }
        Ok(())
    })
}

/// `instance,k,level,size,elements`; level is `largest` or `X_i`.
pub fn degeneracy_csv(doc: &ReportDocument) -> String {
    csv_string(|w| {
        w.write_record(["instance", "k", "level", "size", "elements"])?;
        for s in &doc.instances {
            let Some(d) = &s.degeneracy else { continue };
            let mut rows = vec![("largest".to_owned(), &d.largest)];
            if let Some(levels) = &d.stratification {
                rows.extend(levels.iter().map(|v| (format!("X_{}", v.k), v)));
            }
            for (level, v) in rows {
                w.write_record([
                    s.instance.name.clone(),
                    d.k.to_string(),
                    level,
                    v.size.to_string(),
                    v.set.labels.join(" "),
                ])?;
            }
        }
        Ok(())
    })
}

/// `instance,t,average`
pub fn series_csv(rows: &[SeriesRow]) -> String {
    csv_string(|w| {
        w.write_record(["instance", "t", "average"])?;
        for r in rows {
            w.write_record([r.instance.clone(), r.t.to_string(), r.average.to_string()])?;
        }
        Ok(())
    })
}
