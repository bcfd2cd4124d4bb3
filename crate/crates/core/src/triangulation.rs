//! Triangulations of a labeled convex polygon and the Conway–Coxeter map to
//! positive integer friezes.
//!
//! Vertices are labeled `0..n` in cyclic order and are never identified up to
//! rotation or reflection. Enumeration follows the triangle resting on the
//! edge `(0, 1)`: choosing its apex splits the polygon into two smaller
//! polygons, and the two sub-triangulations are enumerated recursively. The
//! same recursion drives both unranking (for the ordered stream) and the
//! uniform sampler, which draws a random binary tree through the cycle lemma
//! on ballot sequences.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frieze::{build_from_first_row, ExactFrieze, FriezeError};
use crate::scalar::{Rational, Scalar};

/// Default upper bound on `n` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 14;

/// Largest `n` whose Catalan count fits the unranking arithmetic.
const MAX_UNRANK_N: usize = 60;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("({0}, {1}) is not a diagonal of the {2}-gon")]
    NotADiagonal(usize, usize, usize),
    #[error("diagonals ({0}, {1}) and ({2}, {3}) cross")]
    Crossing(usize, usize, usize, usize),
    #[error("expected {expected} diagonals, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    n: usize,
    diagonals: Vec<(usize, usize)>,
}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    let ((p, q), (r, s)) = (a, b);
    (p < r && r < q && q < s) || (r < p && p < s && s < q)
}

impl Triangulation {
    /// Validates and canonicalizes: each pair is stored as `(p, q)` with
    /// `p < q`, and the list is sorted.
    pub fn new(n: usize, diagonals: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, TriangulationError> {
        if n < 3 {
            return Err(TriangulationError::TooSmall(n));
        }
        let mut set = BTreeSet::new();
        for (p, q) in diagonals {
            let (p, q) = if p < q { (p, q) } else { (q, p) };
            if q >= n || q - p <= 1 || q - p == n - 1 {
                return Err(TriangulationError::NotADiagonal(p, q, n));
            }
            set.insert((p, q));
        }
        let diagonals: Vec<_> = set.into_iter().collect();
        for (x, &a) in diagonals.iter().enumerate() {
            for &b in &diagonals[x + 1..] {
                if crosses(a, b) {
                    return Err(TriangulationError::Crossing(a.0, a.1, b.0, b.1));
                }
            }
        }
        if diagonals.len() != n - 3 {
            return Err(TriangulationError::WrongCount {
                expected: n - 3,
                found: diagonals.len(),
            });
        }
        Ok(Triangulation { n, diagonals })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    /// Number of triangles incident to each vertex.
    pub fn triangle_counts(&self) -> Vec<usize> {
        let mut counts = vec![1; self.n];
        for &(p, q) in &self.diagonals {
            counts[p] += 1;
            counts[q] += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub n: usize,
    pub diagonals: Vec<[usize; 2]>,
}

impl From<&Triangulation> for TriangulationJson {
    fn from(t: &Triangulation) -> Self {
        TriangulationJson {
            n: t.n,
            diagonals: t.diagonals.iter().map(|&(p, q)| [p, q]).collect(),
        }
    }
}

impl TryFrom<&TriangulationJson> for Triangulation {
    type Error = TriangulationError;

    fn try_from(j: &TriangulationJson) -> Result<Self, Self::Error> {
        Triangulation::new(j.n, j.diagonals.iter().map(|d| (d[0], d[1])))
    }
}

/// Conway–Coxeter frieze whose first row is the vertex triangle counts.
pub fn triangulation_to_frieze(t: &Triangulation) -> Result<ExactFrieze, FriezeError> {
    if t.n < 4 {
        return Err(FriezeError::PeriodTooSmall(t.n));
    }
    let a: Vec<Rational> = t.triangle_counts().into_iter().map(|c| Rational::from_i64(c as i64)).collect();
    build_from_first_row(&a).map_err(|e| FriezeError::Internal(format!("triangulation did not produce a frieze: {e}")))
}

/// `(2m)! / (m! (m+1)!)`.
pub fn catalan(m: usize) -> BigUint {
    // C_{j+1} = C_j * 2(2j+1) / (j+2)
    let mut c = BigUint::one();
    for j in 0..m {
        c = c * BigUint::from(2 * (2 * j + 1)) / BigUint::from(j + 2);
    }
    c
}

fn catalan_table(m: usize) -> Vec<u128> {
    let mut c = vec![1u128; m + 1];
    for j in 0..m {
        c[j + 1] = c[j] * (2 * (2 * j as u128 + 1)) / (j as u128 + 2);
    }
    c
}

/// Position `n` in the internal labeling stands for vertex 0, so the outer
/// polygon `1..=n` rests on the edge `(0, 1)`.
fn push_diagonal(out: &mut Vec<(usize, usize)>, n: usize, x: usize, y: usize) {
    let x = x % n;
    let y = y % n;
    out.push((x.min(y), x.max(y)));
}

fn unrank_into(lo: usize, hi: usize, mut rank: u128, cat: &[u128], n: usize, out: &mut Vec<(usize, usize)>) {
    let m = hi - lo - 1;
    if m == 0 {
        return;
    }
    for j in 0..m {
        let right = cat[m - 1 - j];
        let count = cat[j] * right;
        if rank < count {
            let apex = lo + 1 + j;
            if apex - lo >= 2 {
                push_diagonal(out, n, lo, apex);
            }
            if hi - apex >= 2 {
                push_diagonal(out, n, apex, hi);
            }
            unrank_into(lo, apex, rank / right, cat, n, out);
            unrank_into(apex, hi, rank % right, cat, n, out);
            return;
        }
        rank -= count;
    }
    unreachable!("rank exceeds Catalan count");
}

/// Deterministic stream over all triangulations of the labeled `n`-gon.
#[derive(Debug, Clone)]
pub struct Triangulations {
    n: usize,
    next: u128,
    total: u128,
    catalan: Vec<u128>,
}

impl Triangulations {
    pub fn total(&self) -> u128 {
        self.total
    }

    /// The triangulation at position `rank` of the stream.
    pub fn get(&self, rank: u128) -> Option<Triangulation> {
        if rank >= self.total {
            return None;
        }
        let mut out = Vec::with_capacity(self.n - 3);
        unrank_into(1, self.n, rank, &self.catalan, self.n, &mut out);
        out.sort_unstable();
        Some(Triangulation { n: self.n, diagonals: out })
    }
}

impl Iterator for Triangulations {
    type Item = Triangulation;

    fn next(&mut self) -> Option<Triangulation> {
        let t = self.get(self.next)?;
        self.next += 1;
        Some(t)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Triangulations {}

pub fn enumerate_triangulations(n: usize) -> Result<Triangulations, TriangulationError> {
    enumerate_triangulations_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_triangulations_capped(n: usize, cap: usize) -> Result<Triangulations, TriangulationError> {
    if n < 3 {
        return Err(TriangulationError::TooSmall(n));
    }
    let cap = cap.min(MAX_UNRANK_N);
    if n > cap {
        return Err(TriangulationError::CapExceeded { n, cap });
    }
    let catalan = catalan_table(n - 2);
    Ok(Triangulations {
        n,
        next: 0,
        total: catalan[n - 2],
        catalan,
    })
}

enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn parse(word: &[bool], pos: &mut usize) -> Tree {
        let internal = word[*pos];
        *pos += 1;
        if internal {
            let left = Tree::parse(word, pos);
            let right = Tree::parse(word, pos);
            Tree::Node(Box::new(left), Box::new(right))
        } else {
            Tree::Leaf
        }
    }

    fn internal_nodes(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }

    fn triangulate(&self, lo: usize, hi: usize, n: usize, out: &mut Vec<(usize, usize)>) {
        if let Tree::Node(left, right) = self {
            let apex = lo + 1 + left.internal_nodes();
            if apex - lo >= 2 {
                push_diagonal(out, n, lo, apex);
            }
            if hi - apex >= 2 {
                push_diagonal(out, n, apex, hi);
            }
            left.triangulate(lo, apex, n, out);
            right.triangulate(apex, hi, n, out);
        }
    }
}

/// Uniformly random triangulation, deterministic in `seed`.
///
/// A uniformly shuffled word of `m` internal-node and `m + 1` leaf symbols
/// has exactly one rotation that is a valid preorder code of a binary tree
/// (cycle lemma), which gives a uniform tree with `m = n - 2` internal nodes.
pub fn random_triangulation(n: usize, seed: u64) -> Result<Triangulation, TriangulationError> {
    if n < 3 {
        return Err(TriangulationError::TooSmall(n));
    }
    let m = n - 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word: Vec<bool> = std::iter::repeat_n(true, m).chain(std::iter::repeat_n(false, m + 1)).collect();
    word.shuffle(&mut rng);

    let mut sum = 0i64;
    let mut min = i64::MAX;
    let mut start = 0;
    for (idx, &s) in word.iter().enumerate() {
        sum += if s { 1 } else { -1 };
        if sum < min {
            min = sum;
            start = idx + 1;
        }
    }
    let len = word.len();
    word.rotate_left(start % len);

    let mut pos = 0;
    let tree = Tree::parse(&word, &mut pos);
    let mut out = Vec::with_capacity(n - 3);
    tree.triangulate(1, n, n, &mut out);
    out.sort_unstable();
    Ok(Triangulation { n, diagonals: out })
}
