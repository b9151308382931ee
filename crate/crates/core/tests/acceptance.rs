//! Acceptance suite. Each test prints one PASS or FAIL line.

use std::collections::HashSet;
use std::path::Path;
use std::process::Command;

use matroidkit::algebra::Rational;
use matroidkit::corpus::{self, RANDOM_SEEDS};
use matroidkit::degeneracy::DegeneracySearch;
use matroidkit::elemset::all_subsets;
use matroidkit::flats::{all_flats, flat_size_stats, flats_of_rank};
use matroidkit::generators::{
    dowling, dowling_instance, figure1, gain_cyclotomic_matrix, gain_signed_matrix, linear_like, near_pencil,
    random_instance, uniform, uniform_instance, SplitMix64,
};
use matroidkit::io::{parse_instance, serialize};
use matroidkit::matroid::direct_sum;
use matroidkit::verify::{
    average_line_check, dbe_check, hirzebruch_check, line_bound_check, melchior_check, plane_theorem_probe,
    strat1_check, strat2_check, Analysis,
};
use matroidkit::{ElemSet, Error, Instance, Kind, Matroid};

const BUDGET: u64 = 20_000_000;

fn verdict(title: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("PASS {title}");
    } else {
        println!("FAIL {title}: {}", failures.join("; "));
    }
    assert!(failures.is_empty(), "{title}: {failures:?}");
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}


fn plane_average(t: u32) -> Rational {
    flat_size_stats(&dowling(4, t, false).unwrap(), 3).unwrap().average
}

#[test]
fn dowling_plane_average() {
    let stats = flat_size_stats(&dowling(4, 2, false).unwrap(), 3).unwrap();
    let mut failures = Vec::new();
    if stats.average != int(6) {
        failures.push(format!(
            "dowling(4,2) rank-3 average is {} over {} planes, expected 6/1",
            stats.average, stats.count
        ));
    }
    verdict("dowling plane average", &failures);
}

#[test]
fn dowling_convergence() {
    let six = int(6);
    let mut failures = Vec::new();
    let values: Vec<(u32, Rational)> = [3, 4, 5].into_iter().map(|t| (t, plane_average(t))).collect();
    for (t, v) in &values {
        if *v <= six {
            failures.push(format!("t={t}: average {v} is not above 6"));
        }
    }
    let gap = |v: &Rational| (v.clone() - six.clone()).abs();
    if gap(&values[2].1) >= gap(&values[0].1) {
        failures.push(format!("t=5 value {} is not closer to 6 than t=3 value {}", values[2].1, values[0].1));
    }
    verdict("dowling convergence", &failures);
}

#[test]
fn two_lines_exception() {
    let mut failures = Vec::new();
    for a in [3, 5, 10] {
        let line = uniform(2, a).unwrap();
        let m = direct_sum(&line, &line).unwrap();
        let planes = flats_of_rank(&m, 3).unwrap();
        if planes.len() != 2 * a {
            failures.push(format!("a={a}: {} planes", planes.len()));
        }
        if let Some(p) = planes.iter().find(|p| p.len() != a + 1) {
            failures.push(format!("a={a}: plane of size {}", p.len()));
        }
        let probe = plane_theorem_probe(&m).unwrap();
        if probe.flags.get("is_two_line_sum") != Some(&true) {
            failures.push(format!("a={a}: two-line sum not flagged"));
        }
        if probe.lhs != int(a as i64 + 1) {
            failures.push(format!("a={a}: probe average {}", probe.lhs));
        }
    }
    verdict("two-lines exception", &failures);
}

#[test]
fn figure1_degeneracy_profile() {
    let mut failures = Vec::new();
    for a in [2, 3] {
        let m = figure1(a).unwrap();
        let n = m.len();
        let mut search = DegeneracySearch::new(&m, BUDGET).unwrap();
        let expected = [(2, a + 1), (3, 2 * (a + 1)), (4, 3 * (a + 1)), (5, n - 1)];
        for (k, want) in expected {
            match search.largest(k, None) {
                Ok(set) if set.len() == want => {}
                Ok(set) => failures.push(format!("a={a}: g_{k} = {}, expected {want}", set.len())),
                Err(e) => failures.push(format!("a={a}: g_{k}: {e}")),
            }
        }
    }
    verdict("figure-1 degeneracy profile", &failures);
}

#[test]
fn melchior_equality() {
    let mut failures = Vec::new();
    for n in [4, 6, 9] {
        let r = melchior_check(&near_pencil(n).unwrap()).unwrap();
        if r.lhs != int(-3) || !r.is_equality() {
            failures.push(format!("near-pencil {n}: sum {}", r.lhs));
        }
    }
    let mut generic: Vec<Instance> = RANDOM_SEEDS.iter().map(|&s| random_instance(3, 7, s).unwrap()).collect();
    generic.push(uniform_instance(3, 5).unwrap());
    for inst in &generic {
        let r = melchior_check(inst).unwrap();
        if r.lhs >= int(-3) {
            failures.push(format!("{}: sum {} not below -3", inst.name(), r.lhs));
        }
    }
    verdict("melchior equality", &failures);
}

#[test]
fn hirzebruch_instance() {
    let inst = dowling_instance(3, 3, true).unwrap();
    let lines = flats_of_rank(&inst.matroid, 2).unwrap();
    let mut failures = Vec::new();
    if inst.matroid.len() != 9 {
        failures.push(format!("{} points", inst.matroid.len()));
    }
    if lines.len() != 12 || lines.iter().any(|l| l.len() != 3) {
        failures.push(format!("line sizes {:?}", lines.iter().map(|l| l.len()).collect::<Vec<_>>()));
    }
    let r = hirzebruch_check(&inst).unwrap();
    if r.context.get("m_2") != Some(&int(0)) {
        failures.push(format!("m2 = {:?}", r.context.get("m_2")));
    }
    if r.lhs != int(-12) || r.rhs != Some(int(-9)) || !r.holds {
        failures.push(format!("hirzebruch {} <= {:?}", r.lhs, r.rhs));
    }
    let avg = average_line_check(&inst).unwrap();
    if avg.lhs != int(3) {
        failures.push(format!("average line length {}", avg.lhs));
    }
    verdict("hirzebruch instance", &failures);
}

#[test]
fn line_bound_and_average_line() {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut seeds = HashSet::new();
    for e in corpus::corpus().unwrap() {
        let inst = &e.instance;
        if inst.matroid.full_rank() != 3 || !inst.meta.representability.complex {
            continue;
        }
        checked += 1;
        if let Some(s) = RANDOM_SEEDS.iter().find(|&&s| inst.name().ends_with(&format!("-s{s}"))) {
            seeds.insert(*s);
        }
        match line_bound_check(inst, BUDGET) {
            Ok(r) if r.holds => {}
            Ok(r) => failures.push(format!("{}: line bound {} > {:?}", inst.name(), r.lhs, r.rhs)),
            Err(e) => failures.push(format!("{}: {e}", inst.name())),
        }
        match average_line_check(inst) {
            Ok(r) if r.holds => {}
            Ok(r) => failures.push(format!("{}: average line {}", inst.name(), r.lhs)),
            Err(e) => failures.push(format!("{}: {e}", inst.name())),
        }
    }
    if checked < 10 {
        failures.push(format!("only {checked} complex rank-3 instances"));
    }
    if seeds.len() != RANDOM_SEEDS.len() {
        failures.push(format!("random seeds covered: {seeds:?}"));
    }
    verdict("line bound and average line", &failures);
}

#[test]
fn de_bruijn_erdos() {
    let mut failures = Vec::new();
    for e in corpus::corpus().unwrap() {
        let m = &e.instance.matroid;
        if m.full_rank() != 3 {
            continue;
        }
        let r = dbe_check(m).unwrap();
        if !r.holds {
            failures.push(format!("{}: {} lines, {} points", e.instance.name(), r.rhs.clone().unwrap(), r.lhs));
        }
        let pencil = e.instance.name().starts_with("near-pencil");
        if pencil && !r.is_equality() {
            failures.push(format!("{}: equality not detected", e.instance.name()));
        }
    }
    if !dbe_check(&uniform(3, 3).unwrap()).unwrap().is_equality() {
        failures.push("U33: equality not detected".into());
    }
    verdict("de bruijn-erdos", &failures);
}

#[test]
fn top_heavy() {
    let mut failures = Vec::new();
    for e in corpus::corpus().unwrap() {
        let m = &e.instance.matroid;
        if m.full_rank() > 6 {
            continue;
        }
        let mut a = Analysis::of(&e.instance, BUDGET);
        for r in a.top_heavy_all().unwrap() {
            if !r.holds {
                failures.push(format!("{}: {} > {:?}", e.instance.name(), r.lhs, r.rhs));
            }
        }
    }
    verdict("top-heavy", &failures);
}

#[test]
fn stratification_inequalities() {
    let mut failures = Vec::new();
    let mut completed = 0;
    'instances: for e in corpus::corpus().unwrap() {
        let inst = &e.instance;
        for k in [2, 3, 4] {
            let checks = strat1_check(&inst.matroid, k, BUDGET)
                .and_then(|mut v| strat2_check(inst, k, BUDGET).map(|r| { v.push(r); v }));
            match checks {
                Ok(reports) => {
                    for r in reports.iter().filter(|r| !r.holds) {
                        failures.push(format!("{} k={k}: {} {} > {:?}", inst.name(), r.check_name, r.lhs, r.rhs));
                    }
                }
                Err(Error::SearchLimit(_)) => continue 'instances,
                Err(e) => {
                    failures.push(format!("{} k={k}: {e}", inst.name()));
                    continue 'instances;
                }
            }
        }
        completed += 1;
    }
    if completed < 8 {
        failures.push(format!("only {completed} instances completed"));
    }
    verdict("stratification inequalities", &failures);
}

fn gain_oracle(m: &Matroid) -> &matroidkit::matroid::GainGraphMatroid {
    match m.kind() {
        Kind::GainGraph(g) => g,
        _ => panic!("not a gain graph"),
    }
}

fn mismatches(a: &Matroid, b: &Matroid, sets: impl Iterator<Item = ElemSet>) -> usize {
    sets.filter(|&s| a.rank(s) != b.rank(s)).count()
}

#[test]
fn cross_oracle_equivalence() {
    let mut failures = Vec::new();
    let dg32 = dowling(3, 2, false).unwrap();
    let signed = linear_like(&dg32, gain_signed_matrix(gain_oracle(&dg32)).unwrap()).unwrap();
    let cyc2 = linear_like(&dg32, gain_cyclotomic_matrix(gain_oracle(&dg32))).unwrap();
    for (name, lin) in [("signed", &signed), ("cyclotomic", &cyc2)] {
        let bad = mismatches(&dg32, lin, all_subsets(9));
        if bad > 0 {
            failures.push(format!("dowling(3,2) {name}: {bad} mismatches"));
        }
    }
    let dg33 = dowling(3, 3, false).unwrap();
    let cyc3 = linear_like(&dg33, gain_cyclotomic_matrix(gain_oracle(&dg33))).unwrap();
    let bad = mismatches(&dg33, &cyc3, all_subsets(12));
    if bad > 0 {
        failures.push(format!("dowling(3,3): {bad} mismatches"));
    }
    let dg42 = dowling(4, 2, false).unwrap();
    let lin42 = linear_like(&dg42, gain_signed_matrix(gain_oracle(&dg42)).unwrap()).unwrap();
    let mut rng = SplitMix64::new(42);
    let mask = (1u128 << dg42.len()) - 1;
    let samples: Vec<ElemSet> = (0..10_000).map(|_| ElemSet::from_bits(rng.next_u64() as u128 & mask)).collect();
    let bad = mismatches(&dg42, &lin42, samples.into_iter());
    if bad > 0 {
        failures.push(format!("dowling(4,2): {bad} mismatches"));
    }
    verdict("cross-oracle equivalence", &failures);
}

fn axiom_failures(name: &str, m: &Matroid, sets: &[ElemSet]) -> Vec<String> {
    let mut out = Vec::new();
    if m.rank(ElemSet::empty()) != 0 {
        out.push(format!("{name}: r(empty) != 0"));
    }
    for &x in sets {
        let rx = m.rank(x);
        if rx > x.len() {
            out.push(format!("{name}: r({x:?}) > |X|"));
        }
        for e in m.full_set().difference(x) {
            let re = m.rank(x.with(e));
            if re < rx || re > rx + 1 {
                out.push(format!("{name}: unit increase fails at {x:?} + {e}"));
            }
            for f in m.full_set().difference(x.with(e)) {
                if f < e {
                    continue;
                }
                if re + m.rank(x.with(f)) < m.rank(x.with(e).with(f)) + rx {
                    out.push(format!("{name}: submodularity fails at {x:?}, {e}, {f}"));
                }
            }
        }
        let cl = m.closure(x);
        if !x.is_subset(cl) || m.closure(cl) != cl || m.rank(cl) != rx {
            out.push(format!("{name}: closure of {x:?}"));
        }
        if out.len() > 5 {
            break;
        }
    }
    out
}

/// Flats straight from the definition: no outside element keeps the rank.
fn brute_force_flats(m: &Matroid) -> HashSet<(usize, u128)> {
    all_subsets(m.len())
        .filter(|&s| {
            let r = m.rank(s);
            m.full_set().difference(s).iter().all(|e| m.rank(s.with(e)) > r)
        })
        .map(|s| (m.rank(s), s.bits()))
        .collect()
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_matroidkit")).args(args).output().unwrap();
    assert!(out.status.code() == Some(0) || out.status.code() == Some(1), "{args:?}: {out:?}");
    out.stdout
}

fn report_determinism(dir: &Path) -> Vec<String> {
    let d = dir.to_str().unwrap();
    let mut failures = Vec::new();
    let first = run_cli(&["report", d]);
    if first.is_empty() {
        failures.push("empty report".into());
    }
    for (label, args) in [
        ("second run", vec!["report", d]),
        ("--jobs 1", vec!["--jobs", "1", "report", d]),
        ("--jobs 4", vec!["--jobs", "4", "report", d]),
    ] {
        if run_cli(&args) != first {
            failures.push(format!("json report differs on {label}"));
        }
    }
    let csv1 = run_cli(&["--format", "csv", "--jobs", "1", "report", d]);
    let csv4 = run_cli(&["--format", "csv", "--jobs", "4", "report", d]);
    if csv1 != csv4 {
        failures.push("csv report differs across --jobs".into());
    }
    failures
}

#[test]
fn property_suites() {
    let mut failures = Vec::new();
    let entries = corpus::corpus().unwrap();
    let mut small: Vec<(String, Matroid)> =
        entries.iter().map(|e| (e.instance.name().to_owned(), e.instance.matroid.clone())).collect();
    small.push(("figure1-2".into(), figure1(2).unwrap()));
    small.push(("u26".into(), uniform(2, 6).unwrap()));
    for (name, m) in &small {
        if m.len() <= 12 {
            let sets: Vec<ElemSet> = all_subsets(m.len()).collect();
            failures.extend(axiom_failures(name, m, &sets));
            let level: HashSet<(usize, u128)> = all_flats(m).iter().map(|f| (f.rank, f.elements.bits())).collect();
            if level != brute_force_flats(m) {
                failures.push(format!("{name}: level-wise flats differ from brute force"));
            }
        } else {
            let mut rng = SplitMix64::new(m.len() as u64);
            let mask = (1u128 << m.len()) - 1;
            let sets: Vec<ElemSet> = (0..500).map(|_| ElemSet::from_bits(rng.next_u64() as u128 & mask)).collect();
            failures.extend(axiom_failures(name, m, &sets));
        }
    }
    for e in &entries {
        let text = serialize(&e.instance, e.format).unwrap();
        match parse_instance(&text, e.format, e.instance.name(), "roundtrip", None) {
            Ok(back) if back.matroid.oracle_eq(&e.instance.matroid) => {}
            Ok(_) => failures.push(format!("{}: round-trip changed the rank oracle", e.file_name())),
            Err(err) => failures.push(format!("{}: {err}", e.file_name())),
        }
    }
    let dir = tempfile::tempdir().unwrap();
    corpus::write_corpus(dir.path()).unwrap();
    failures.extend(report_determinism(dir.path()));
    verdict("property suites", &failures);
}
