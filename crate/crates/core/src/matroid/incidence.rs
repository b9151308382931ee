use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// Simple rank-3 matroid given by its lines with three or more points.
///
/// Pairs not covered by a listed line are 2-point lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceRank3Matroid {
    n: usize,
    lines: Vec<ElemSet>,
}

impl IncidenceRank3Matroid {
    pub fn new(n: usize, lines: Vec<Vec<usize>>) -> Result<Self> {
        if n > ElemSet::CAPACITY {
            return Err(Error::TooManyElements(n));
        }
        let mut sets: Vec<ElemSet> = Vec::with_capacity(lines.len());
        for line in &lines {
            if let Some(&e) = line.iter().find(|&&e| e >= n) {
                return Err(Error::ElementOutOfRange(e, n));
            }
            let set: ElemSet = line.iter().collect();
            if set.len() != line.len() {
                return Err(Error::InvalidParameter(format!("line {line:?} repeats an element")));
            }
            if set.len() < 3 {
                return Err(Error::InvalidParameter(format!(
                    "line {line:?} has fewer than 3 points"
                )));
            }
            if let Some(other) = sets.iter().find(|o| o.intersection(set).len() >= 2) {
                return Err(Error::InvalidParameter(format!(
                    "pair {:?} lies on two listed lines",
                    other.intersection(set).to_vec()
                )));
            }
            sets.push(set);
        }
        Ok(IncidenceRank3Matroid { n, lines: sets })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn lines(&self) -> &[ElemSet] {
        &self.lines
    }

    pub fn rank(&self, set: ElemSet) -> usize {
        match set.len() {
            k @ 0..=2 => k,
            _ if self.lines.iter().any(|l| set.is_subset(*l)) => 2,
            _ => 3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(IncidenceRank3Matroid::new(4, vec![vec![0, 1]]).is_err());
        assert!(IncidenceRank3Matroid::new(5, vec![vec![0, 1, 2], vec![1, 2, 3]]).is_err());
        assert!(IncidenceRank3Matroid::new(3, vec![vec![0, 1, 5]]).is_err());
    }

    #[test]
    fn ranks() {
        let m = IncidenceRank3Matroid::new(5, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(m.rank(ElemSet::from_bits(0b01111)), 2);
        assert_eq!(m.rank(ElemSet::from_bits(0b10011)), 3);
        assert_eq!(m.rank(ElemSet::from_bits(0b10001)), 2);
    }
}
