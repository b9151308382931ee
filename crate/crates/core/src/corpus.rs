//! The shipped instance corpus.

use std::path::Path;

use crate::error::Result;
use crate::generators::*;
use crate::instance::{Instance, InstanceMeta, Representability};
use crate::io::{write_instance, Format};
use crate::matroid::direct_sum;

/// Seeds of the random rank-3 configurations in the corpus.
pub const RANDOM_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

/// Size of each random configuration.
pub const RANDOM_SIZE: usize = 7;

/// One corpus member and the format it is stored in.
pub struct Entry {
    pub instance: Instance,
    pub format: Format,
}

impl Entry {
    pub fn file_name(&self) -> String {
        format!("{}.{}", self.instance.name(), self.format.extension())
    }
}

fn entry(instance: Instance, name: &str, format: Format) -> Entry {
    Entry { instance: instance.renamed(name), format }
}

/// Every corpus instance, sorted by file name.
pub fn corpus() -> Result<Vec<Entry>> {
    let mut out = vec![
        entry(uniform_instance(3, 4)?, "u34", Format::Matrix),
        entry(uniform_instance(3, 5)?, "u35", Format::Matrix),
        entry(dowling_instance(3, 2, false)?, "dg32", Format::Gain),
        entry(dowling_instance(3, 3, false)?, "dg33", Format::Gain),
        entry(dowling_instance(4, 2, false)?, "dg42", Format::Gain),
        entry(
            from_incidence(9, ag23_lines(), Representability::COMPLEX, "ag23")?,
            "ag23",
            Format::Incidence,
        ),
        entry(figure1_instance(3)?, "fig1", Format::Script),
        entry(
            Instance::new(InstanceMeta::new("k4", Representability::REAL), graphic_k4()?),
            "k4",
            Format::Script,
        ),
    ];
    for n in [4, 6, 9] {
        out.push(entry(near_pencil(n)?, &format!("near-pencil-{n}"), Format::Incidence));
    }
    for seed in RANDOM_SEEDS {
        let inst = random_instance(3, RANDOM_SIZE, seed)?;
        let name = format!("random-3-{RANDOM_SIZE}-s{seed}");
        out.push(entry(inst, &name, Format::Matrix));
    }
    let line = uniform(2, 3)?;
    let two = Instance::new(InstanceMeta::new("two-lines", Representability::REAL), direct_sum(&line, &line)?);
    out.push(entry(two, "two-lines", Format::Script));
    out.sort_by_key(Entry::file_name);
    Ok(out)
}

/// Writes the corpus into `dir`, returning the file names written.
pub fn write_corpus(dir: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut names = Vec::new();
    for e in corpus()? {
        let name = e.file_name();
        write_instance(&e.instance, &dir.join(&name))?;
        names.push(name);
    }
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::read_instance;

    #[test]
    fn shape() {
        let c = corpus().unwrap();
        assert!(c.len() >= 12);
        let rank3_complex = c
            .iter()
            .filter(|e| e.instance.matroid.full_rank() == 3 && e.instance.meta.representability.complex)
            .count();
        assert!(rank3_complex >= 10);
        assert!(c.iter().all(|e| e.instance.matroid.is_simple()));
    }

    #[test]
    fn written_files_read_back() {
        let dir = tempfile::tempdir().unwrap();
        let names = write_corpus(dir.path()).unwrap();
        for (e, name) in corpus().unwrap().iter().zip(&names) {
            let back = read_instance(&dir.path().join(name)).unwrap();
            assert_eq!(back.name(), e.instance.name());
            assert_eq!(back.meta.representability.real, e.instance.meta.representability.real, "{name}");
            assert_eq!(back.meta.representability.complex, e.instance.meta.representability.complex, "{name}");
            assert_eq!(back.matroid.len(), e.instance.matroid.len());
            assert_eq!(back.matroid.full_rank(), e.instance.matroid.full_rank());
        }
    }
}
