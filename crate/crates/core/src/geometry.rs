//! Friezes as polygons in the projective line, and equilateral polygons in
//! the plane.
//!
//! A frieze of period `n` is the same thing as a polygonal line `V_i` in
//! `R^2` with `det(V_i, V_{i+1}) = 1` and `V_{i+n} = -V_i`; then
//! `entry(i, d) = det(V_i, V_{i+d})`. We store such a line in polar form:
//! increasing angles `0 <= theta_0 < ... < theta_{n-1} < pi` and positive
//! radii, extended by `theta_{i+n} = theta_i + pi`, `r_{i+n} = r_i`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frieze::{build_from_first_row, distinguished_basis, ExactFrieze, FloatFrieze, Frieze, FriezeError};
use crate::scalar::{rationalize, Rational, Scalar, FLOAT_TOLERANCE};
use crate::sign::{entrywise_difference, sign_changes, CyclicSeq, ProjPoint, ZERO_CONVENTION};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("det(V_{i}, V_{{i+1}}) = {value}, expected 1")]
    InvalidLift { i: usize, value: f64 },
    #[error("angles must be strictly increasing in [0, pi) with gaps above 1e-12 (problem at {0})")]
    BadAngles(usize),
    #[error("n = {0} must be odd")]
    EvenPeriod(usize),
    #[error("n = {n} is too small (need n >= {min})")]
    TooSmall { n: usize, min: usize },
    #[error("angles and radii differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("closure iteration failed after {0} resamples")]
    ClosureFailed(usize),
    #[error("period mismatch: {0} vs {1}")]
    PeriodMismatch(usize, usize),
    #[error("k = {k} out of range 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("points must be strictly increasing (problem at {0})")]
    UnorderedPoints(usize),
    #[error(transparent)]
    Frieze(#[from] FriezeError),
}

const MIN_ANGLE_GAP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePolygon {
    angles: Vec<f64>,
    radii: Vec<f64>,
}

impl ProjectivePolygon {
    /// Checks ordering and positivity; the unit-determinant lift is checked
    /// by [`polygon_to_frieze`].
    pub fn new(angles: Vec<f64>, radii: Vec<f64>) -> Result<Self, GeometryError> {
        if angles.len() != radii.len() {
            return Err(GeometryError::LengthMismatch(angles.len(), radii.len()));
        }
        check_angles(&angles)?;
        if let Some(i) = radii.iter().position(|&r| !(r > 0.0) || !r.is_finite()) {
            return Err(GeometryError::InvalidLift { i, value: radii[i] });
        }
        Ok(ProjectivePolygon { angles, radii })
    }

    /// Regular polygon `theta_i = i pi/n`, `r_i = 1/sqrt(sin(pi/n))`.
    pub fn regular(n: usize) -> Self {
        let r = 1.0 / (PI / n as f64).sin().sqrt();
        ProjectivePolygon {
            angles: (0..n).map(|i| i as f64 * PI / n as f64).collect(),
            radii: vec![r; n],
        }
    }

    pub fn n(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    fn polar(&self, i: isize) -> (f64, f64) {
        let n = self.n() as isize;
        let wraps = i.div_euclid(n);
        let idx = i.rem_euclid(n) as usize;
        (self.angles[idx] + wraps as f64 * PI, self.radii[idx])
    }

    /// `V_i` for any integer `i`.
    pub fn vertex(&self, i: isize) -> [f64; 2] {
        let (t, r) = self.polar(i);
        [r * t.cos(), r * t.sin()]
    }

    /// `det(V_i, V_{i+d}) = r_i r_{i+d} sin(theta_{i+d} - theta_i)`.
    pub fn bracket(&self, i: isize, d: usize) -> f64 {
        let (t0, r0) = self.polar(i);
        let (t1, r1) = self.polar(i + d as isize);
        r0 * r1 * (t1 - t0).sin()
    }

    /// The vertices as points of the projective line, in the affine
    /// coordinate `cot(theta)`; `theta = 0` is the point at infinity.
    pub fn points(&self) -> Vec<ProjPoint<f64>> {
        self.angles
            .iter()
            .map(|&t| if t == 0.0 { ProjPoint::Infinity } else { ProjPoint::Finite(t.cos() / t.sin()) })
            .collect()
    }
}

fn check_angles(angles: &[f64]) -> Result<(), GeometryError> {
    for (i, &t) in angles.iter().enumerate() {
        if !(0.0..PI).contains(&t) {
            return Err(GeometryError::BadAngles(i));
        }
        if i > 0 && t - angles[i - 1] < MIN_ANGLE_GAP {
            return Err(GeometryError::BadAngles(i));
        }
    }
    if let (Some(first), Some(last)) = (angles.first(), angles.last()) {
        if first + PI - last < MIN_ANGLE_GAP {
            return Err(GeometryError::BadAngles(0));
        }
    }
    Ok(())
}

fn sqrt_spd(m: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let s = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).sqrt();
    let t = (m[0][0] + m[1][1] + 2.0 * s).sqrt();
    [[(m[0][0] + s) / t, m[0][1] / t], [m[1][0] / t, (m[1][1] + s) / t]]
}

/// Projective polygon of a frieze: the distinguished Hill basis, moved by
/// the area-preserving map that makes `sum V_i V_i^T` a multiple of the
/// identity, then rotated so that `theta_0 = 0`.
pub fn frieze_to_polygon<T: Scalar>(f: &Frieze<T>) -> Result<ProjectivePolygon, GeometryError> {
    let basis = distinguished_basis(f)?;
    let vs: Vec<[f64; 2]> = basis.values().iter().map(|v| [v[0].to_f64(), v[1].to_f64()]).collect();
    let mut s = [[0.0; 2]; 2];
    for v in &vs {
        s[0][0] += v[0] * v[0];
        s[0][1] += v[0] * v[1];
        s[1][1] += v[1] * v[1];
    }
    s[1][0] = s[0][1];
    let root = sqrt_spd(s);
    let det_root = root[0][0] * root[1][1] - root[0][1] * root[1][0];
    // A = sqrt(det root) * root^{-1} has determinant 1.
    let g = det_root.sqrt();
    let inv = [
        [root[1][1] * g / det_root, -root[0][1] * g / det_root],
        [-root[1][0] * g / det_root, root[0][0] * g / det_root],
    ];
    let mapped: Vec<[f64; 2]> = vs
        .iter()
        .map(|v| [inv[0][0] * v[0] + inv[0][1] * v[1], inv[1][0] * v[0] + inv[1][1] * v[1]])
        .collect();
    let mut angles = Vec::with_capacity(vs.len());
    let mut theta = 0.0;
    for (i, v) in mapped.iter().enumerate() {
        if i > 0 {
            let u = mapped[i - 1];
            let cross = u[0] * v[1] - u[1] * v[0];
            let dot = u[0] * v[0] + u[1] * v[1];
            theta += cross.atan2(dot);
        }
        angles.push(theta);
    }
    let radii = mapped.iter().map(|v| v[0].hypot(v[1])).collect();
    ProjectivePolygon::new(angles, radii)
}

/// Frieze with `entry(i, d) = det(V_i, V_{i+d})`.
pub fn polygon_to_frieze(p: &ProjectivePolygon) -> Result<FloatFrieze, GeometryError> {
    let n = p.n();
    if n < 4 {
        return Err(GeometryError::TooSmall { n, min: 4 });
    }
    for i in 0..n {
        let value = p.bracket(i as isize, 1);
        if (value - 1.0).abs() > FLOAT_TOLERANCE {
            return Err(GeometryError::InvalidLift { i, value });
        }
    }
    let rows: Vec<Vec<f64>> = (0..=n)
        .map(|d| {
            (0..n as isize)
                .map(|i| match d {
                    0 => 0.0,
                    1 => 1.0,
                    _ if d == n - 1 => 1.0,
                    _ if d == n => 0.0,
                    _ => p.bracket(i, d),
                })
                .collect()
        })
        .collect();
    Ok(Frieze::from_rows_unchecked(rows)?)
}

/// Radii with `r_i r_{i+1} sin(theta_{i+1} - theta_i) = 1` around the
/// antiperiodic loop; unique for odd `n`.
fn solve_radii(angles: &[f64]) -> Vec<f64> {
    let n = angles.len();
    let gaps: Vec<f64> = (0..n)
        .map(|i| {
            let next = if i + 1 < n { angles[i + 1] } else { angles[0] + PI };
            (next - angles[i]).sin()
        })
        .collect();
    let acc = gaps.iter().fold(0.0, |acc, s| -acc - s.ln());
    let mut log_r = acc / 2.0;
    gaps.iter()
        .map(|s| {
            let r = log_r.exp();
            log_r = -log_r - s.ln();
            r
        })
        .collect()
}

/// Polygon with the given angles and the radii that make it a unit lift.
pub fn polygon_from_angles(angles: Vec<f64>) -> Result<ProjectivePolygon, GeometryError> {
    let n = angles.len();
    if n % 2 == 0 {
        return Err(GeometryError::EvenPeriod(n));
    }
    check_angles(&angles)?;
    let radii = solve_radii(&angles);
    ProjectivePolygon::new(angles, radii)
}

/// Uniform sorted angles in `(0, pi)` with a unit lift.
pub fn random_polygon(n: usize, seed: u64) -> Result<ProjectivePolygon, GeometryError> {
    if n % 2 == 0 {
        return Err(GeometryError::EvenPeriod(n));
    }
    if n < 5 {
        return Err(GeometryError::TooSmall { n, min: 5 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angles: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * PI).collect();
    angles.sort_by(f64::total_cmp);
    polygon_from_angles(angles)
}

pub fn random_frieze(n: usize, seed: u64) -> Result<FloatFrieze, GeometryError> {
    polygon_to_frieze(&random_polygon(n, seed)?)
}

/// Exact frieze of the polygon with affine coordinates `x_0 < ... < x_{n-1}`
/// on the projective line (odd `n`).
///
/// Lifting `X_i = (1, x_i)` with scales `l_i`, the unit condition reads
/// `l_i l_{i+1} g_i = 1` with `g_i = det(X_i, X_{i+1})`; only `l_i^2` enters
/// the first row, and for odd `n` it is rational:
/// `a_i = det(X_{i-1}, X_{i+1}) / (l_i^2 g_{i-1} g_i)`.
pub fn exact_frieze_from_points(x: &[Rational]) -> Result<ExactFrieze, GeometryError> {
    let n = x.len();
    if n % 2 == 0 {
        return Err(GeometryError::EvenPeriod(n));
    }
    if n < 5 {
        return Err(GeometryError::TooSmall { n, min: 5 });
    }
    if let Some(i) = (1..n).find(|&i| x[i] <= x[i - 1]) {
        return Err(GeometryError::UnorderedPoints(i));
    }
    let xi = |i: isize| -> (Rational, Rational) {
        // antiperiodic lift: X_{i+n} = -X_i
        let wraps = i.div_euclid(n as isize);
        let v = (Rational::from_i64(1), x[i.rem_euclid(n as isize) as usize].clone());
        if wraps % 2 == 0 {
            v
        } else {
            (-v.0, -v.1)
        }
    };
    let det = |u: (Rational, Rational), v: (Rational, Rational)| u.0 * v.1 - u.1 * v.0;
    let g: Vec<Rational> = (0..n as isize).map(|i| det(xi(i), xi(i + 1))).collect();
    // l_{i+1}^2 = 1 / (l_i^2 g_i^2); odd n fixes l_0^4 = prod g_i^{2 (-1)^{i+1}}, so
    // l_0^2 = prod over i of g_i^{(-1)^{i+1}}.
    let mut l0_sq = Rational::from_i64(1);
    for (i, gi) in g.iter().enumerate() {
        if i % 2 == 0 {
            l0_sq = l0_sq / gi.clone();
        } else {
            l0_sq = l0_sq * gi.clone();
        }
    }
    let mut l_sq = Vec::with_capacity(n);
    let mut cur = l0_sq;
    for gi in &g {
        l_sq.push(cur.clone());
        cur = Rational::from_i64(1) / (cur * gi.clone() * gi.clone());
    }
    let a: Vec<Rational> = (0..n as isize)
        .map(|i| {
            let idx = i as usize;
            let g_prev = g[(idx + n - 1) % n].clone();
            det(xi(i - 1), xi(i + 1)) / (l_sq[idx].clone() * g_prev * g[idx].clone())
        })
        .collect();
    Ok(build_from_first_row(&a)?)
}

/// Exact frieze near a floating polygon: the affine coordinates
/// `tan(theta_i - m)` (with `m` the midpoint of the angle range) are
/// rationalized with denominators up to `max_den` and rebuilt exactly.
pub fn rationalized_frieze(p: &ProjectivePolygon, max_den: u64) -> Result<ExactFrieze, GeometryError> {
    let n = p.n();
    let mid = (p.angles[0] + p.angles[n - 1]) / 2.0;
    let x: Vec<Rational> = p.angles.iter().map(|&t| rationalize((t - mid).tan(), max_den)).collect();
    exact_frieze_from_points(&x)
}

/// Polygon in the plane with unit sides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilateralPolygon {
    pub vertices: Vec<[f64; 2]>,
    pub convex: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilateralDefects {
    /// `max | |V_{i+1} - V_i| - 1 |`
    pub side: f64,
    /// `|sum of edge vectors|`
    pub closure: f64,
    /// Smallest cross product of consecutive edges (positive when convex).
    pub min_turn: f64,
}

impl EquilateralPolygon {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// `V_i` for any integer `i`.
    pub fn vertex(&self, i: isize) -> [f64; 2] {
        self.vertices[i.rem_euclid(self.n() as isize) as usize]
    }

    pub fn defects(&self) -> EquilateralDefects {
        let n = self.n() as isize;
        let edge = |i: isize| {
            let (a, b) = (self.vertex(i), self.vertex(i + 1));
            [b[0] - a[0], b[1] - a[1]]
        };
        let mut side: f64 = 0.0;
        let mut sum = [0.0, 0.0];
        let mut min_turn = f64::INFINITY;
        for i in 0..n {
            let e = edge(i);
            let f = edge(i + 1);
            side = side.max((e[0].hypot(e[1]) - 1.0).abs());
            sum[0] += e[0];
            sum[1] += e[1];
            min_turn = min_turn.min(e[0] * f[1] - e[1] * f[0]);
        }
        EquilateralDefects {
            side,
            closure: sum[0].hypot(sum[1]),
            min_turn,
        }
    }

    pub fn is_valid(&self) -> bool {
        let d = self.defects();
        d.side < 1e-9 && d.closure < 1e-9 && d.min_turn > 0.0
    }
}

const CLOSURE_TOLERANCE: f64 = 1e-10;
const NEWTON_ITERATIONS: usize = 100;
const RESAMPLES: usize = 10;

fn edge_sum(psi: &[f64]) -> [f64; 2] {
    psi.iter().fold([0.0, 0.0], |s, t| [s[0] + t.cos(), s[1] + t.sin()])
}

fn turning_angles_positive(psi: &[f64]) -> bool {
    let n = psi.len();
    (0..n).all(|i| {
        let next = if i + 1 < n { psi[i + 1] } else { psi[0] + 2.0 * PI };
        next - psi[i] > 0.0
    })
}

/// Minimum-norm Newton iteration on the two closure equations over the edge
/// directions, halving the step whenever a turning angle would become
/// non-positive.
fn close_directions(mut psi: Vec<f64>) -> Option<Vec<f64>> {
    for _ in 0..NEWTON_ITERATIONS {
        let f = edge_sum(&psi);
        if f[0].hypot(f[1]) < CLOSURE_TOLERANCE {
            return Some(psi);
        }
        // J = [-sin psi; cos psi], G = J J^T
        let (mut g00, mut g01, mut g11) = (0.0, 0.0, 0.0);
        for t in &psi {
            let (s, c) = t.sin_cos();
            g00 += s * s;
            g01 -= s * c;
            g11 += c * c;
        }
        let det = g00 * g11 - g01 * g01;
        if det.abs() < 1e-14 {
            return None;
        }
        let y0 = -(g11 * f[0] - g01 * f[1]) / det;
        let y1 = -(-g01 * f[0] + g00 * f[1]) / det;
        let delta: Vec<f64> = psi.iter().map(|t| -t.sin() * y0 + t.cos() * y1).collect();
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<f64> = psi.iter().zip(&delta).map(|(t, d)| t + step * d).collect();
            let ft = edge_sum(&trial);
            if turning_angles_positive(&trial) && ft[0].hypot(ft[1]) < f[0].hypot(f[1]) {
                psi = trial;
                accepted = true;
                break;
            }
            step /= 2.0;
        }
        if !accepted {
            return None;
        }
    }
    let f = edge_sum(&psi);
    (f[0].hypot(f[1]) < CLOSURE_TOLERANCE).then_some(psi)
}

/// Random convex polygon with unit sides, deterministic in `seed`.
pub fn sample_equilateral_convex(n: usize, seed: u64) -> Result<EquilateralPolygon, GeometryError> {
    if n < 3 {
        return Err(GeometryError::TooSmall { n, min: 3 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RESAMPLES {
        // Exterior angles: normalized exponential weights (uniform on the simplex).
        let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let total: f64 = w.iter().sum();
        let mut psi = Vec::with_capacity(n);
        let mut acc = 0.0;
        for wi in &w {
            psi.push(acc);
            acc += 2.0 * PI * wi / total;
        }
        if let Some(psi) = close_directions(psi) {
            let mut vertices = Vec::with_capacity(n);
            let mut v = [0.0, 0.0];
            for t in &psi {
                vertices.push(v);
                v = [v[0] + t.cos(), v[1] + t.sin()];
            }
            let poly = EquilateralPolygon { vertices, convex: true };
            if poly.is_valid() {
                return Ok(poly);
            }
        }
    }
    Err(GeometryError::ClosureFailed(RESAMPLES))
}

/// `|V^A_{i+k} - V^A_{i-1}| - |V^B_{i+k} - V^B_{i-1}|` for `i = 0..n`,
/// zeroed entrywise as in [`row_difference`](crate::sign::row_difference).
/// At `k = n - 2` the segments are sides and the sequence vanishes.
pub fn diagonal_difference(pa: &EquilateralPolygon, pb: &EquilateralPolygon, k: usize) -> Result<CyclicSeq<f64>, GeometryError> {
    let n = pa.n();
    if n != pb.n() {
        return Err(GeometryError::PeriodMismatch(n, pb.n()));
    }
    if k < 1 || k + 2 > n {
        return Err(GeometryError::KOutOfRange { k, max: n.saturating_sub(2) });
    }
    let len = |p: &EquilateralPolygon, i: isize| {
        let (a, b) = (p.vertex(i + k as isize), p.vertex(i - 1));
        (a[0] - b[0]).hypot(a[1] - b[1])
    };
    let values = (0..n as isize).map(|i| entrywise_difference(&len(pa, i), &len(pb, i))).collect();
    Ok(CyclicSeq::with_threshold(values, 0.0))
}

/// Interpretation of the equilateral-polygon question used by the harness.
pub const PROBLEM2_READING: &str =
    "difference of corresponding diagonal lengths |V_{i+k} - V_{i-1}| of two equilateral convex n-gons";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Problem2Config {
    pub n_values: Vec<usize>,
    pub k_values: Vec<usize>,
    pub pairs_per_n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Problem2Record {
    pub n: usize,
    pub k: usize,
    pub pair: usize,
    pub seed_a: u64,
    pub seed_b: u64,
    pub count: usize,
    /// The difference vanished identically.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Problem2Summary {
    pub k: usize,
    pub samples: usize,
    /// Pairs with an identically vanishing difference, left out of the
    /// statistics below.
    pub degenerate: usize,
    pub min_count: Option<usize>,
    pub below_four: usize,
    pub histogram: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Problem2Report {
    pub reading: &'static str,
    pub zero_convention: &'static str,
    pub config: Problem2Config,
    pub summary: Vec<Problem2Summary>,
    pub records: Vec<Problem2Record>,
}

/// splitmix64 finalizer, used to derive independent per-item seeds.
pub fn mix_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed
        .wrapping_add(a.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(b.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Samples pairs of equilateral convex polygons and records the sign
/// changes of their diagonal-length differences for each `k`.
pub fn problem2_experiment(config: &Problem2Config) -> Result<Problem2Report, GeometryError> {
    let jobs: Vec<(usize, usize)> = config
        .n_values
        .iter()
        .flat_map(|&n| (0..config.pairs_per_n).map(move |p| (n, p)))
        .collect();
    let per_pair: Vec<Vec<Problem2Record>> = jobs
        .par_iter()
        .map(|&(n, pair)| {
            let seed_a = mix_seed(config.seed, n as u64, 2 * pair as u64);
            let seed_b = mix_seed(config.seed, n as u64, 2 * pair as u64 + 1);
            let pa = sample_equilateral_convex(n, seed_a)?;
            let pb = sample_equilateral_convex(n, seed_b)?;
            config
                .k_values
                .iter()
                .filter(|&&k| k >= 1 && k + 2 <= n)
                .map(|&k| {
                    let diff = diagonal_difference(&pa, &pb, k)?;
                    let count = sign_changes(&diff);
                    let degenerate = diff.is_all_zero();
                    Ok(Problem2Record { n, k, pair, seed_a, seed_b, count, degenerate })
                })
                .collect()
        })
        .collect::<Result<_, GeometryError>>()?;
    let records: Vec<Problem2Record> = per_pair.into_iter().flatten().collect();
    let summary = config
        .k_values
        .iter()
        .map(|&k| {
            let mut histogram = BTreeMap::new();
            let (mut samples, mut degenerate) = (0, 0);
            for r in records.iter().filter(|r| r.k == k) {
                samples += 1;
                if r.degenerate {
                    degenerate += 1;
                } else {
                    *histogram.entry(r.count).or_insert(0) += 1;
                }
            }
            Problem2Summary {
                k,
                samples,
                degenerate,
                min_count: histogram.keys().next().copied(),
                below_four: histogram.range(..4).map(|(_, c)| c).sum(),
                histogram,
            }
        })
        .collect();
    Ok(Problem2Report {
        reading: PROBLEM2_READING,
        zero_convention: ZERO_CONVENTION,
        config: config.clone(),
        summary,
        records,
    })
}
