//! Construction scripts (`.rk`).
//!
//! One binding per line, evaluated top to bottom; the last binding is the
//! result:
//!
//! ```text
//! k = k4
//! line = uniform 2 5
//! m = two_sum k k12 line 0
//! ```
//!
//! Verbs:
//!
//! - `uniform R N`, `k4`, `dowling R T [nojoints]`
//! - `two_sum A p B q`, `direct_sum A B`
//! - `truncate A K`, `principal_truncate A e...`
//! - `restrict A e...`, `contract A e...`
//! - `load PATH` (another instance file, relative to the script)
//!
//! An element reference is an index when it is a non-negative integer and
//! a label of the operand otherwise.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use super::{parse_num, read_instance, Lines};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::generators::{dowling, graphic_k4, uniform};
use crate::instance::Representability;
use crate::matroid::{
    contract, direct_sum, principal_truncate, restrict, truncate_to, two_sum, Derived, Kind, Matroid, Recipe,
};

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn element(lines: &Lines, l: usize, m: &Matroid, tok: &str) -> Result<usize> {
    let e = match tok.parse::<usize>() {
        Ok(i) => i,
        Err(_) => m
            .ground()
            .index_of(tok)
            .ok_or_else(|| lines.err(l, format!("no element labelled `{tok}`")))?,
    };
    if e >= m.len() {
        return Err(lines.err(l, format!("element {e} outside a ground set of size {}", m.len())));
    }
    Ok(e)
}

fn elements(lines: &Lines, l: usize, m: &Matroid, toks: &[&str]) -> Result<ElemSet> {
    toks.iter().map(|t| element(lines, l, m, t)).collect()
}

pub(crate) fn parse(text: &str, source: &str, dir: Option<&Path>) -> Result<(Matroid, Representability)> {
    let mut lines = Lines::new(text, source);
    let mut env: HashMap<&str, (Matroid, Representability)> = HashMap::new();
    let mut result = None;
    while let Some((l, toks)) = lines.next() {
        let (name, verb, args) = match toks.as_slice() {
            [name, "=", verb, args @ ..] if is_ident(name) => (*name, *verb, args),
            _ => return Err(lines.err(l, "expected `name = verb args...`")),
        };
        let operand = |tok: &str| -> Result<(Matroid, Representability)> {
            env.get(tok)
                .cloned()
                .ok_or_else(|| lines.err(l, format!("unknown binding `{tok}`")))
        };
        let arity = |want: usize| -> Result<()> {
            if args.len() != want {
                return Err(lines.err(l, format!("`{verb}` takes {want} arguments")));
            }
            Ok(())
        };
        let wrap = |r: Result<Matroid>| r.map_err(|e| lines.err(l, e.to_string()));
        let value = match verb {
            "uniform" => {
                arity(2)?;
                let r = parse_num(&lines, l, args[0], "rank")?;
                let n = parse_num(&lines, l, args[1], "size")?;
                (wrap(uniform(r, n))?, Representability::REAL)
            }
            "k4" => {
                arity(0)?;
                (wrap(graphic_k4())?, Representability::REAL)
            }
            "dowling" => {
                let delete = match args {
                    [_, _] => false,
                    [_, _, "nojoints"] => true,
                    _ => return Err(lines.err(l, "expected `dowling R T [nojoints]`")),
                };
                let r = parse_num(&lines, l, args[0], "rank")?;
                let t: u32 = parse_num(&lines, l, args[1], "group order")?;
                let flags = if t <= 2 { Representability::REAL } else { Representability::COMPLEX };
                (wrap(dowling(r, t, delete))?, flags)
            }
            "two_sum" => {
                arity(4)?;
                let (a, fa) = operand(args[0])?;
                let (b, fb) = operand(args[2])?;
                let p = element(&lines, l, &a, args[1])?;
                let q = element(&lines, l, &b, args[3])?;
                (wrap(two_sum(&a, p, &b, q))?, fa.meet(fb))
            }
            "direct_sum" => {
                arity(2)?;
                let (a, fa) = operand(args[0])?;
                let (b, fb) = operand(args[1])?;
                (wrap(direct_sum(&a, &b))?, fa.meet(fb))
            }
            "truncate" => {
                arity(2)?;
                let (a, fa) = operand(args[0])?;
                let k = parse_num(&lines, l, args[1], "rank")?;
                (wrap(truncate_to(&a, k))?, fa)
            }
            "principal_truncate" | "restrict" | "contract" => {
                let Some((base, rest)) = args.split_first() else {
                    return Err(lines.err(l, format!("`{verb}` needs an operand")));
                };
                let (a, fa) = operand(base)?;
                let set = elements(&lines, l, &a, rest)?;
                let m = match verb {
                    "principal_truncate" => principal_truncate(&a, set),
                    "restrict" => restrict(&a, set),
                    _ => contract(&a, set),
                };
                (wrap(m)?, fa)
            }
            "load" => {
                arity(1)?;
                let path = match dir {
                    Some(d) => d.join(args[0]),
                    None => Path::new(args[0]).to_path_buf(),
                };
                let inst = read_instance(&path).map_err(|e| lines.err(l, e.to_string()))?;
                (inst.matroid, inst.meta.representability)
            }
            other => return Err(lines.err(l, format!("unknown verb `{other}`"))),
        };
        env.insert(name, value.clone());
        result = Some(value);
    }
    result.ok_or_else(|| lines.err(1, "empty script"))
}

struct Writer {
    bound: Vec<Matroid>,
    out: String,
}

impl Writer {
    fn emit(&mut self, m: &Matroid) -> Result<String> {
        if let Some(i) = self.bound.iter().position(|b| b.same_oracle(m)) {
            return Ok(format!("m{i}"));
        }
        let body = match (m.kind(), m.recipe()) {
            (Kind::Uniform { rank }, _) => format!("uniform {rank} {}", m.len()),
            (Kind::Linear(_), Some(Recipe::GraphicK4)) => "k4".into(),
            (Kind::GainGraph(_), Some(Recipe::Dowling { rank, group_order, joints })) => {
                let tail = if *joints { "" } else { " nojoints" };
                format!("dowling {rank} {group_order}{tail}")
            }
            (Kind::Derived(d), _) => self.derived(d)?,
            _ => {
                return Err(Error::Unserializable(
                    "construction scripts can only express named constructions".into(),
                ))
            }
        };
        let name = format!("m{}", self.bound.len());
        writeln!(self.out, "{name} = {body}").unwrap();
        self.bound.push(m.clone());
        Ok(name)
    }

    fn derived(&mut self, d: &Derived) -> Result<String> {
        let list = |s: ElemSet| s.iter().map(|e| format!(" {e}")).collect::<String>();
        Ok(match d {
            Derived::Restrict { base, elements } => {
                let b = self.emit(base)?;
                format!("restrict {b}{}", list(elements.iter().collect()))
            }
            Derived::Contract { base, contracted, .. } => {
                let b = self.emit(base)?;
                format!("contract {b}{}", list(*contracted))
            }
            Derived::Truncate { base, rank } => format!("truncate {} {rank}", self.emit(base)?),
            Derived::PrincipalTruncate { base, flat } => {
                let b = self.emit(base)?;
                format!("principal_truncate {b}{}", list(*flat))
            }
            Derived::DirectSum { left, right } => {
                let (a, b) = (self.emit(left)?, self.emit(right)?);
                format!("direct_sum {a} {b}")
            }
            Derived::TwoSum { left, left_point, right, right_point, .. } => {
                let (a, b) = (self.emit(left)?, self.emit(right)?);
                format!("two_sum {a} {left_point} {b} {right_point}")
            }
        })
    }
}

pub(crate) fn write(m: &Matroid) -> Result<String> {
    let mut w = Writer { bound: Vec::new(), out: String::new() };
    w.emit(m)?;
    Ok(w.out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::io::{parse_instance, serialize, Format};
    use crate::instance::{Instance, InstanceMeta};

    fn run(text: &str) -> Result<crate::instance::Instance> {
        parse_instance(text, Format::Script, "s", "s.rk", None)
    }

    #[test]
    fn figure1_script() {
        let m = figure1(3).unwrap();
        let inst = Instance::new(InstanceMeta::new("fig1", Representability::REAL), m.clone());
        let text = serialize(&inst, Format::Script).unwrap();
        assert_eq!(
            text,
            "m0 = k4\nm1 = uniform 2 5\nm2 = two_sum m0 3 m1 0\nm3 = two_sum m2 3 m1 0\nm4 = two_sum m3 3 m1 0\n"
        );
        let back = run(&text).unwrap();
        assert!(back.matroid.oracle_eq(&m));
        assert_eq!(back.matroid.labels(), m.labels());
        assert_eq!(back.meta.representability, Representability::REAL);
    }

    #[test]
    fn labels_and_all_verbs() {
        let text = "\
# two skew lines, then some minors
a = uniform 2 3
two = direct_sum a a
t = truncate two 3
p = principal_truncate two 0 1 2
r = restrict two 0 1 3 4
c = contract two 0
k = k4
s = two_sum k k12 a 0
d = dowling 3 3 nojoints
";
        let inst = run(text).unwrap();
        assert_eq!(inst.matroid.len(), 9);
        assert_eq!(inst.meta.representability, Representability::COMPLEX);
        let text = serialize(&inst, Format::Script).unwrap();
        assert_eq!(text, "m0 = dowling 3 3 nojoints\n");
        let by_label = run("a = uniform 2 3\nk = k4\ns = two_sum k k12 a 0\n").unwrap();
        let by_index = run("a = uniform 2 3\nk = k4\ns = two_sum k 3 a 0\n").unwrap();
        assert!(by_label.matroid.oracle_eq(&by_index.matroid));
        assert_eq!(by_label.matroid.full_rank(), 4);
    }

    #[test]
    fn every_derived_kind_roundtrips() {
        let base = "a = uniform 2 3\ntwo = direct_sum a a\nk = k4\n";
        for tail in [
            "x = truncate two 3",
            "x = principal_truncate two 0 1 2",
            "x = restrict two 0 1 3 4",
            "x = contract two 0",
            "x = two_sum k k12 a 0",
            "x = contract k 0\ny = restrict x 1 2 3",
        ] {
            let inst = run(&format!("{base}{tail}\n")).unwrap();
            let text = serialize(&inst, Format::Script).unwrap();
            let back = run(&text).unwrap();
            assert!(back.matroid.oracle_eq(&inst.matroid), "{tail}\n{text}");
            assert_eq!(back.matroid.labels(), inst.matroid.labels());
        }
    }

    #[test]
    fn errors_carry_lines() {
        for (text, line) in [
            ("a = uniform 2\n", 1),
            ("a = uniform 2 3\nb = truncate c 1\n", 2),
            ("a = uniform 2 3\n\nb = restrict a 7\n", 3),
            ("a = uniform 2 3\nb = restrict a zz\n", 2),
            ("a = frobnicate\n", 1),
            ("= uniform 1 1\n", 1),
            ("a = uniform 2 3\nb = principal_truncate a 0 1\n", 2),
        ] {
            match run(text) {
                Err(Error::ParseAt { line: got, .. }) => assert_eq!(got, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(run("# nothing\n").is_err());
    }

    #[test]
    fn unserializable_leaf() {
        let inst = random_instance(3, 6, 2).unwrap();
        let two = direct_sum(&inst.matroid, &inst.matroid).unwrap();
        let inst = Instance::new(InstanceMeta::new("x", Representability::REAL), two);
        assert!(matches!(serialize(&inst, Format::Script), Err(Error::Unserializable(_))));
    }

    #[test]
    fn load_relative() {
        let dir = tempfile::tempdir().unwrap();
        let u = uniform_instance(3, 5).unwrap();
        crate::io::write_instance(&u, &dir.path().join("u35.mtx")).unwrap();
        let script = dir.path().join("s.rk");
        std::fs::write(&script, "u = load u35.mtx\nt = truncate u 2\n").unwrap();
        let inst = crate::io::read_instance(&script).unwrap();
        assert!(inst.matroid.oracle_eq(&Matroid::uniform(2, 5).unwrap()));
        assert_eq!(inst.name(), "s");
    }
}
