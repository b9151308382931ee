use serde::Serialize;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// One element of a gain-graph matroid. Vertices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GainElement {
    /// Half-edge at a vertex: makes its component unbalanced.
    Joint(usize),
    /// Edge from `i` to `j` (`i < j`) with gain `g` in Z_t.
    Edge { i: usize, j: usize, gain: u32 },
}

/// Frame matroid of a Z_t-gain graph.
///
/// The rank of a set is, summed over the connected components `C` it
/// induces, `|V(C)|` when `C` is unbalanced and `|V(C)| - 1` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainGraphMatroid {
    vertices: usize,
    group_order: u32,
    elements: Vec<GainElement>,
}

impl GainGraphMatroid {
    pub fn new(vertices: usize, group_order: u32, elements: Vec<GainElement>) -> Result<Self> {
        if group_order == 0 {
            return Err(Error::InvalidParameter("group order must be at least 1".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for el in &elements {
            match *el {
                GainElement::Joint(v) if v >= vertices => {
                    return Err(Error::InvalidParameter(format!("joint at missing vertex {}", v + 1)))
                }
                GainElement::Edge { i, j, gain } => {
                    if i >= j || j >= vertices {
                        return Err(Error::InvalidParameter(format!(
                            "edge ({}, {}) needs 1 <= i < j <= {vertices}",
                            i + 1,
                            j + 1
                        )));
                    }
                    if gain >= group_order {
                        return Err(Error::InvalidParameter(format!(
                            "gain {gain} not in Z_{group_order}"
                        )));
                    }
                }
                _ => {}
            }
            if !seen.insert(*el) {
                return Err(Error::InvalidParameter(format!("repeated element {el:?}")));
            }
        }
        Ok(GainGraphMatroid { vertices, group_order, elements })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn group_order(&self) -> u32 {
        self.group_order
    }

    pub fn elements(&self) -> &[GainElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self, set: ElemSet) -> usize {
        let mut uf = GainUnionFind::new(self.vertices, self.group_order);
        let mut touched = vec![false; self.vertices];
        for e in set {
            match self.elements[e] {
                GainElement::Joint(v) => {
                    touched[v] = true;
                    let (root, _) = uf.find(v);
                    uf.unbalanced[root] = true;
                }
                GainElement::Edge { i, j, gain } => {
                    touched[i] = true;
                    touched[j] = true;
                    uf.add_edge(i, j, gain);
                }
            }
        }
        // each balanced component contributes one less than its vertex count
        let mut rank = 0;
        for (v, &t) in touched.iter().enumerate() {
            if t {
                rank += 1;
                if uf.parent[v] == v && !uf.unbalanced[v] {
                    rank -= 1;
                }
            }
        }
        rank
    }
}

/// Union-find carrying, for each vertex, its potential relative to the root.
struct GainUnionFind {
    order: u32,
    parent: Vec<usize>,
    offset: Vec<u32>,
    unbalanced: Vec<bool>,
}

impl GainUnionFind {
    fn new(n: usize, order: u32) -> Self {
        GainUnionFind {
            order,
            parent: (0..n).collect(),
            offset: vec![0; n],
            unbalanced: vec![false; n],
        }
    }

    /// Root of `v` and `x_v - x_root` in Z_t.
    fn find(&mut self, v: usize) -> (usize, u32) {
        let mut path = Vec::new();
        let mut cur = v;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // compress from the node nearest the root outwards
        let mut acc = 0u32;
        for &node in path.iter().rev() {
            acc = (acc + self.offset[node]) % self.order;
            self.offset[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { 0 } else { self.offset[v] })
    }

    fn add_edge(&mut self, i: usize, j: usize, gain: u32) {
        let t = self.order;
        let (ri, oi) = self.find(i);
        let (rj, oj) = self.find(j);
        if ri == rj {
            if (oj + t - oi) % t != gain {
                self.unbalanced[ri] = true;
            }
            return;
        }
        // want x_j - x_i = gain, so x_rj - x_ri = gain + oi - oj
        self.parent[rj] = ri;
        self.offset[rj] = (gain + oi + t - oj) % t;
        self.unbalanced[ri] |= self.unbalanced[rj];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(i: usize, j: usize, gain: u32) -> GainElement {
        GainElement::Edge { i, j, gain }
    }

    #[test]
    fn triangle_balance() {
        let m = GainGraphMatroid::new(
            3,
            3,
            vec![edge(0, 1, 1), edge(0, 2, 2), edge(1, 2, 1), edge(1, 2, 0)],
        )
        .unwrap();
        // 1 + 1 = 2: balanced
        assert_eq!(m.rank(ElemSet::from_bits(0b0111)), 2);
        // 1 + 0 != 2: unbalanced
        assert_eq!(m.rank(ElemSet::from_bits(0b1011)), 3);
        // parallel edges with distinct gains form an unbalanced digon
        assert_eq!(m.rank(ElemSet::from_bits(0b1100)), 2);
    }

    #[test]
    fn validation() {
        assert!(GainGraphMatroid::new(3, 2, vec![edge(1, 0, 0)]).is_err());
        assert!(GainGraphMatroid::new(3, 2, vec![edge(0, 1, 2)]).is_err());
        assert!(GainGraphMatroid::new(3, 2, vec![edge(0, 1, 1), edge(0, 1, 1)]).is_err());
        assert!(GainGraphMatroid::new(3, 0, vec![]).is_err());
    }
}
