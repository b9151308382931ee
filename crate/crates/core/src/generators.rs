//! Constructors for the concrete matroid families the toolkit studies.

use crate::algebra::{CyclotomicNumber, ExactMatrix, Matrix, Rational};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceMeta, Representability};
use crate::matroid::{
    two_sum, GainElement, GainGraphMatroid, GroundSet, Kind, LinearMatroid, Matroid, Recipe,
};

fn dowling_elements(r: usize, t: u32, joints: bool) -> Vec<GainElement> {
    let mut out = Vec::new();
    if joints {
        out.extend((0..r).map(GainElement::Joint));
    }
    for i in 0..r {
        for j in i + 1..r {
            out.extend((0..t).map(|gain| GainElement::Edge { i, j, gain }));
        }
    }
    out
}

pub fn gain_label(el: &GainElement) -> String {
    match *el {
        GainElement::Joint(v) => format!("v{}", v + 1),
        GainElement::Edge { i, j, gain } => format!("e{}-{}:{}", i + 1, j + 1, gain),
    }
}

/// Matroid of a gain graph, labelled `v<i>` for joints and `e<i>-<j>:<g>` for edges.
pub fn gain_graph(vertices: usize, group_order: u32, elements: Vec<GainElement>) -> Result<Matroid> {
    let labels = elements.iter().map(gain_label).collect();
    let g = GainGraphMatroid::new(vertices, group_order, elements)?;
    Matroid::new(GroundSet::new(labels)?, Kind::GainGraph(g))
}

/// The Dowling geometry DG(r, Z_t), optionally without its joints.
///
/// Joints come first (`v1..vr`), then edges ordered by `(i, j, g)`.
pub fn dowling(r: usize, t: u32, delete_joints: bool) -> Result<Matroid> {
    if r < 2 || t < 1 {
        return Err(Error::InvalidParameter(format!(
            "dowling needs rank >= 2 and group order >= 1, got ({r}, {t})"
        )));
    }
    let n = if delete_joints { 0 } else { r } + t as usize * r * (r - 1) / 2;
    if n > ElemSet::CAPACITY {
        return Err(Error::TooManyElements(n));
    }
    let elements = dowling_elements(r, t, !delete_joints);
    let labels = elements.iter().map(gain_label).collect();
    let g = GainGraphMatroid::new(r, t, elements)?;
    Matroid::with_recipe(
        GroundSet::new(labels)?,
        Kind::GainGraph(g),
        Some(Recipe::Dowling { rank: r, group_order: t, joints: !delete_joints }),
    )
}

pub fn dowling_instance(r: usize, t: u32, delete_joints: bool) -> Result<Instance> {
    let m = dowling(r, t, delete_joints)?;
    let flags = if t <= 2 { Representability::REAL } else { Representability::COMPLEX };
    let name = if delete_joints { format!("dowling-{r}-{t}-nojoints") } else { format!("dowling-{r}-{t}") };
    let meta = InstanceMeta::new(name, flags)
        .param("rank", r)
        .param("group_order", t)
        .param("joints", !delete_joints);
    Ok(Instance::new(meta, m))
}

/// Linear representation of a gain graph over Q(ζ_t): joint `v_i ↦ e_i`,
/// edge `(i, j, g) ↦ e_i - ζ^g e_j`.
pub fn gain_cyclotomic_matrix(g: &GainGraphMatroid) -> ExactMatrix {
    let t = g.group_order();
    let r = g.vertices();
    let zero = CyclotomicNumber::zero(t);
    let one = CyclotomicNumber::one(t);
    let matrix = Matrix::from_fn(r, g.len(), |row, col| match g.elements()[col] {
        GainElement::Joint(v) if v == row => one.clone(),
        GainElement::Edge { i, .. } if i == row => one.clone(),
        GainElement::Edge { j, gain, .. } if j == row => CyclotomicNumber::root_power(t, gain).neg(),
        _ => zero.clone(),
    });
    ExactMatrix::Cyclotomic { order: t, matrix }
}

/// Signed rational representation for group order 1 or 2: edge `(i, j, g) ↦ e_i - (-1)^g e_j`.
pub fn gain_signed_matrix(g: &GainGraphMatroid) -> Result<ExactMatrix> {
    if g.group_order() > 2 {
        return Err(Error::InvalidParameter("signed representation needs group order <= 2".into()));
    }
    Ok(ExactMatrix::Rational(Matrix::from_fn(g.vertices(), g.len(), |row, col| {
        match g.elements()[col] {
            GainElement::Joint(v) if v == row => Rational::one(),
            GainElement::Edge { i, .. } if i == row => Rational::one(),
            GainElement::Edge { j, gain, .. } if j == row => {
                Rational::from(if gain == 0 { -1i64 } else { 1 })
            }
            _ => Rational::zero(),
        }
    })))
}

/// Linear matroid sharing the labels of `m` with the given matrix.
pub fn linear_like(m: &Matroid, matrix: ExactMatrix) -> Result<Matroid> {
    Matroid::new(m.ground().clone(), Kind::Linear(LinearMatroid::new(matrix)))
}

pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    if r > n {
        return Err(Error::InvalidParameter(format!("uniform rank {r} exceeds size {n}")));
    }
    Matroid::uniform(r, n)
}

pub fn uniform_instance(r: usize, n: usize) -> Result<Instance> {
    let meta = InstanceMeta::new(format!("uniform-{r}-{n}"), Representability::REAL)
        .param("rank", r)
        .param("size", n);
    Ok(Instance::new(meta, uniform(r, n)?))
}

/// `r × n` Vandermonde matrix with nodes `1..=n`; its matroid is U_{r,n}.
pub fn vandermonde(r: usize, n: usize) -> Result<ExactMatrix> {
    if r > n {
        return Err(Error::InvalidParameter(format!("uniform rank {r} exceeds size {n}")));
    }
    Ok(ExactMatrix::Rational(Matrix::from_fn(r, n, |i, j| {
        Rational::from(((j + 1) as i64).pow(i as u32))
    })))
}

/// M(K_4) from the signed incidence matrix of K_4. Elements are the edges
/// `k01, k02, k03, k12, k13, k23`; the last three form a triangle.
pub fn graphic_k4() -> Result<Matroid> {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let matrix = Matrix::from_fn(4, 6, |row, col| {
        let (a, b) = edges[col];
        Rational::from(if row == a { 1i64 } else if row == b { -1 } else { 0 })
    });
    let labels = edges.iter().map(|(a, b)| format!("k{a}{b}")).collect();
    Matroid::with_recipe(
        GroundSet::new(labels)?,
        Kind::Linear(LinearMatroid::new(ExactMatrix::Rational(matrix))),
        Some(Recipe::GraphicK4),
    )
}

/// Index of the first triangle element of [`graphic_k4`] (`k12`); the
/// triangle `k12, k13, k23` occupies indices 3..6.
pub const K4_TRIANGLE_START: usize = 3;

/// Three (a+1)-point lines glued onto a triangle of M(K_4).
///
/// Each step 2-sums U_{2,a+2} onto the next triangle element; the basepoint
/// of the line is consumed, leaving `a + 1` new points. After each sum the
/// next triangle element sits at index 3 again, so the result has rank 6
/// and `3(a + 2)` elements.
pub fn figure1(a: usize) -> Result<Matroid> {
    if a < 2 {
        return Err(Error::InvalidParameter(format!("figure1 needs a >= 2, got {a}")));
    }
    let line = uniform(2, a + 2)?;
    let mut m = graphic_k4()?;
    for _ in 0..3 {
        m = two_sum(&m, K4_TRIANGLE_START, &line, 0)?;
    }
    Ok(m)
}

pub fn figure1_instance(a: usize) -> Result<Instance> {
    let meta = InstanceMeta::new(format!("figure1-{a}"), Representability::REAL).param("a", a);
    Ok(Instance::new(meta, figure1(a)?))
}

/// SplitMix64: the documented generator behind [`random_config`].
#[derive(Clone, Debug)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish integer in `[-1000, 1000]` (`next % 2001 - 1000`).
    pub fn next_entry(&mut self) -> i64 {
        (self.next_u64() % 2001) as i64 - 1000
    }
}

const RANDOM_REJECTION_BUDGET: usize = 1000;

/// `n` random integer columns in dimension `r`, drawn column by column
/// (entries top to bottom) from [`SplitMix64`]. A column that is zero or
/// parallel to an earlier one is redrawn; if the finished matrix has rank
/// below `r` the whole matrix is redrawn from the continuing stream.
pub fn random_config(r: usize, n: usize, seed: u64) -> Result<ExactMatrix> {
    if r > n {
        return Err(Error::InvalidParameter(format!("rank {r} exceeds size {n}")));
    }
    let mut rng = SplitMix64::new(seed);
    let mut rejections = 0;
    loop {
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
        while cols.len() < n {
            let col: Vec<Rational> = (0..r).map(|_| Rational::from(rng.next_entry())).collect();
            let loop_col = col.iter().all(Rational::is_zero);
            let parallel = !loop_col
                && cols.iter().any(|c| {
                    let pair = Matrix::from_fn(r, 2, |i, j| if j == 0 { c[i].clone() } else { col[i].clone() });
                    pair.rank() < 2
                });
            if loop_col || parallel {
                rejections += 1;
                if rejections > RANDOM_REJECTION_BUDGET {
                    return Err(Error::InvalidParameter(format!(
                        "random_config({r}, {n}) exhausted its rejection budget"
                    )));
                }
                continue;
            }
            cols.push(col);
        }
        let matrix = Matrix::from_fn(r, n, |i, j| cols[j][i].clone());
        if matrix.rank() == r {
            return Ok(ExactMatrix::Rational(matrix));
        }
        rejections += 1;
        if rejections > RANDOM_REJECTION_BUDGET {
            return Err(Error::InvalidParameter(format!(
                "random_config({r}, {n}) exhausted its rejection budget"
            )));
        }
    }
}

pub fn random_instance(r: usize, n: usize, seed: u64) -> Result<Instance> {
    let m = Matroid::linear(random_config(r, n, seed)?)?;
    let meta = InstanceMeta::new(format!("random-{r}-{n}-s{seed}"), Representability::REAL)
        .param("rank", r)
        .param("size", n)
        .param("seed", seed);
    Ok(Instance::new(meta, m))
}

/// Rank-3 matroid from its long lines, with caller-declared flags.
pub fn from_incidence(
    n: usize,
    lines: Vec<Vec<usize>>,
    flags: Representability,
    name: impl Into<String>,
) -> Result<Instance> {
    let m = Matroid::incidence(n, lines)?;
    let flags = Representability { declared_only: true, ..flags };
    Ok(Instance::new(InstanceMeta::new(name, flags).param("size", n), m))
}

/// `n - 1` collinear points plus one point off the line.
pub fn near_pencil(n: usize) -> Result<Instance> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("near-pencil needs n >= 4, got {n}")));
    }
    from_incidence(n, vec![(0..n - 1).collect()], Representability::REAL, format!("near-pencil-{n}"))
}

/// Lines of the affine plane AG(2,3); point `(x, y)` is element `3x + y`.
pub fn ag23_lines() -> Vec<Vec<usize>> {
    let mut lines = Vec::new();
    let pt = |x: usize, y: usize| 3 * (x % 3) + y % 3;
    for (dx, dy) in [(0, 1), (1, 0), (1, 1), (1, 2)] {
        let mut seen: Vec<ElemSet> = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                let line: ElemSet = (0..3).map(|s| pt(x + s * dx, y + s * dy)).collect();
                if !seen.contains(&line) {
                    seen.push(line);
                    lines.push(line.to_vec());
                }
            }
        }
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elemset::all_subsets;

    #[test]
    fn dowling_sizes() {
        for r in 2..=6usize {
            for t in 1..=6u32 {
                let m = dowling(r, t, false).unwrap();
                assert_eq!(m.len(), r + t as usize * r * (r - 1) / 2);
            }
        }
        assert!(dowling(1, 2, false).is_err());
        assert!(dowling(3, 0, false).is_err());
    }

    #[test]
    fn dowling_small_ranks() {
        let m = dowling(3, 2, false).unwrap();
        assert_eq!(m.len(), 9);
        assert_eq!(m.full_rank(), 3);
        let idx = |l: &str| m.ground().index_of(l).unwrap();
        assert_eq!(m.rank(ElemSet::singleton(idx("v1"))), 1);
        let digon: ElemSet = [idx("e1-2:0"), idx("e1-2:1")].iter().collect();
        assert_eq!(m.rank(digon), 2);
        let tri: ElemSet = [idx("e1-2:0"), idx("e1-3:0"), idx("e2-3:0")].iter().collect();
        assert_eq!(m.rank(tri), 2);
        let cl = m.closure([idx("v1"), idx("v2")].iter().collect());
        let want: ElemSet = [idx("v1"), idx("v2"), idx("e1-2:0"), idx("e1-2:1")].iter().collect();
        assert_eq!(cl, want);
    }

    #[test]
    fn dowling_matches_signed_matrix() {
        for r in 2..=4 {
            let m = dowling(r, 2, false).unwrap();
            let Kind::GainGraph(g) = m.kind() else { unreachable!() };
            let lin = linear_like(&m, gain_signed_matrix(g).unwrap()).unwrap();
            if m.len() <= 12 {
                assert!(m.oracle_eq(&lin));
            }
        }
    }

    #[test]
    fn k4_lines() {
        let m = graphic_k4().unwrap();
        assert_eq!(m.full_rank(), 3);
        let triangles: Vec<ElemSet> = all_subsets(6)
            .filter(|s| s.len() == 3 && m.rank(*s) == 2)
            .collect();
        assert_eq!(triangles.len(), 4);
        for e in 0..6 {
            assert_eq!(triangles.iter().filter(|t| t.contains(e)).count(), 2);
        }
        assert_eq!(m.rank(ElemSet::from_bits(0b111000)), 2);
    }

    #[test]
    fn figure1_shape() {
        for a in 2..=4 {
            let m = figure1(a).unwrap();
            assert_eq!(m.len(), 3 * (a + 2));
            assert_eq!(m.full_rank(), 6);
            assert!(m.is_simple());
        }
    }

    #[test]
    fn random_is_deterministic_and_simple() {
        let a = random_config(3, 5, 1).unwrap();
        assert_eq!(a, random_config(3, 5, 1).unwrap());
        assert_ne!(a, random_config(3, 5, 2).unwrap());
        let m = Matroid::linear(a).unwrap();
        assert!(m.is_simple());
        assert_eq!(m.full_rank(), 3);
        assert!(random_config(1, 2, 7).is_err());
    }

    #[test]
    fn splitmix_reference_values() {
        // published SplitMix64 outputs for seed 0
        let mut g = SplitMix64::new(0);
        assert_eq!(g.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(g.next_u64(), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn ag23() {
        let lines = ag23_lines();
        assert_eq!(lines.len(), 12);
        let inst = from_incidence(9, lines, Representability::COMPLEX, "ag23").unwrap();
        assert_eq!(inst.matroid.full_rank(), 3);
    }

    #[test]
    fn vandermonde_is_uniform() {
        let m = Matroid::linear(vandermonde(3, 6).unwrap()).unwrap();
        assert!(m.oracle_eq(&uniform(3, 6).unwrap()));
    }
}
