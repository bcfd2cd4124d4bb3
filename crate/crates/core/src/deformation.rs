//! First-order deformations of the constant (Chebyshev) frieze.
//!
//! The regular polygon `V_i = (cos(i pi/n), sin(i pi/n)) / sqrt(sin(pi/n))`
//! is deformed as `W_i = V_i + eps E_i` with
//! `E_i = p_i V_i + pbar_i V_{i+1} = q_i V_i + qbar_i V_{i-1}`. Keeping
//! `det(W_i, W_{i+1}) = 1` to first order forces
//! `p_i = -q_{i+1}`, `pbar_i = (q_i + q_{i+1}) / c`, `qbar_i = -pbar_i` with
//! `c = 2 cos(pi/n)`, so the periodic sequence `q` determines everything.
//! The first-order change of `det(W_i, W_{i+k})` is `c_i / sin(2 pi/n)` with
//!
//! `c_i = (q_{i+k} - q_{i+1}) sin(pi (k+1)/n) - (q_{i+k+1} - q_i) sin(pi (k-1)/n)`.
//!
//! Sequences here are stored 0-based: array slot `j` holds the quantity with
//! 1-based index `j + 1` (so `q[0]` is `q_1`, `c[0]` is `c_1`).

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use thiserror::Error;

use crate::sign::{sign_changes, CyclicSeq};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeformationError {
    #[error("n = {0} is too small (need n >= 5)")]
    PeriodTooSmall(usize),
    #[error("q has {found} entries, expected {n}")]
    LengthMismatch { n: usize, found: usize },
    #[error("k = {k} out of range 2..={max}")]
    KOutOfRange { k: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeformationInput {
    n: usize,
    q: Vec<f64>,
    k: usize,
}

impl DeformationInput {
    pub fn new(q: Vec<f64>, k: usize) -> Result<Self, DeformationError> {
        let n = q.len();
        if n < 5 {
            return Err(DeformationError::PeriodTooSmall(n));
        }
        Ok(DeformationInput { n, q, k })
    }

    /// i.i.d. standard Gaussian `q`, deterministic in `seed`.
    pub fn random(n: usize, k: usize, seed: u64) -> Result<Self, DeformationError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        DeformationInput::new(q, k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    fn check_k(&self) -> Result<(), DeformationError> {
        if self.k < 2 || self.k > self.n - 2 {
            return Err(DeformationError::KOutOfRange { k: self.k, max: self.n - 2 });
        }
        Ok(())
    }

    fn q_at(&self, j: usize) -> f64 {
        self.q[j % self.n]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeformationCoefficients {
    pub p: Vec<f64>,
    pub p_bar: Vec<f64>,
    pub q_bar: Vec<f64>,
    pub c_const: f64,
}

pub fn coefficients_from_q(inp: &DeformationInput) -> DeformationCoefficients {
    let n = inp.n;
    let c_const = 2.0 * (PI / n as f64).cos();
    let p = (0..n).map(|j| -inp.q_at(j + 1)).collect();
    let p_bar: Vec<f64> = (0..n).map(|j| (inp.q_at(j) + inp.q_at(j + 1)) / c_const).collect();
    let q_bar = p_bar.iter().map(|v| -v).collect();
    DeformationCoefficients { p, p_bar, q_bar, c_const }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CSequence {
    pub n: usize,
    pub k: usize,
    pub c: Vec<f64>,
}

impl CSequence {
    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn to_cyclic(&self) -> CyclicSeq<f64> {
        CyclicSeq::new(self.c.clone())
    }

    /// `c_i / sin(2 pi/n)`, the predicted first-order change of row `k - 1`.
    pub fn bracket_derivative(&self) -> Vec<f64> {
        let s = (2.0 * PI / self.n as f64).sin();
        self.c.iter().map(|v| v / s).collect()
    }
}

pub fn c_sequence(inp: &DeformationInput) -> Result<CSequence, DeformationError> {
    inp.check_k()?;
    let (n, k) = (inp.n, inp.k);
    let s_plus = (PI * (k + 1) as f64 / n as f64).sin();
    let s_minus = (PI * (k - 1) as f64 / n as f64).sin();
    let c = (0..n)
        .map(|i| (inp.q_at(i + k) - inp.q_at(i + 1)) * s_plus - (inp.q_at(i + k + 1) - inp.q_at(i)) * s_minus)
        .collect();
    Ok(CSequence { n, k, c })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicResiduals {
    /// `|sum c_i|`
    pub constant: f64,
    /// `|sum c_i sin(2 pi i/n)|`
    pub sine: f64,
    /// `|sum c_i cos(2 pi i/n)|`
    pub cosine: f64,
    /// `1e-9 * n * max|c|`
    pub tolerance: f64,
}

impl HarmonicResiduals {
    pub fn as_array(&self) -> [f64; 3] {
        [self.constant, self.sine, self.cosine]
    }

    pub fn within_tolerance(&self) -> bool {
        self.as_array().iter().all(|&r| r <= self.tolerance)
    }
}

pub fn harmonic_orthogonality_report(cs: &CSequence) -> HarmonicResiduals {
    let n = cs.n as f64;
    let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
    for (j, &c) in cs.c.iter().enumerate() {
        let t = 2.0 * PI * (j + 1) as f64 / n;
        s0 += c;
        s1 += c * t.sin();
        s2 += c * t.cos();
    }
    HarmonicResiduals {
        constant: s0.abs(),
        sine: s1.abs(),
        cosine: s2.abs(),
        tolerance: 1e-9 * n * cs.max_abs(),
    }
}

/// `c` counts as identically zero below this fraction of `max|q|`.
const DEGENERATE_RELATIVE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfinitesimalReport {
    pub n: usize,
    pub k: usize,
    pub count: usize,
    pub degenerate: bool,
    pub verdict: &'static str,
}

impl InfinitesimalReport {
    pub fn satisfies_four(&self) -> bool {
        self.degenerate || self.count >= 4
    }
}

pub fn infinitesimal_check(inp: &DeformationInput) -> Result<InfinitesimalReport, DeformationError> {
    let cs = c_sequence(inp)?;
    let q_scale = inp.q.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let degenerate = cs.max_abs() <= DEGENERATE_RELATIVE * q_scale;
    let count = if degenerate { 0 } else { sign_changes(&cs.to_cyclic()) };
    let verdict = if degenerate {
        "degenerate"
    } else if count >= 4 {
        "satisfies_four"
    } else {
        "violates"
    };
    Ok(InfinitesimalReport {
        n: inp.n,
        k: inp.k,
        count,
        degenerate,
        verdict,
    })
}

type Vec2 = [f64; 2];

fn det(u: Vec2, v: Vec2) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

fn regular_vertex(n: usize, j: isize) -> Vec2 {
    let t = j as f64 * PI / n as f64;
    let r = 1.0 / (PI / n as f64).sin().sqrt();
    [r * t.cos(), r * t.sin()]
}

/// Scales `lambda_j` with `lambda_j lambda_{j+1} d_j = 1` for all `j`
/// (periodic `lambda`). Exact for odd `n`; for even `n` the system is
/// singular and the symmetric choice `(d_{j-1} d_j)^{-1/4}` is used, which
/// leaves an `O(eps^2)` residual.
fn unit_determinant_scales(d: &[f64]) -> Vec<f64> {
    let n = d.len();
    if n % 2 == 1 {
        // log l_{j+1} = -log l_j - log d_j; after n steps log l_1 comes back
        // negated plus a constant, fixing log l_1 = acc / 2.
        let acc = d.iter().fold(0.0, |acc, dj| -acc - dj.ln());
        let mut scales = Vec::with_capacity(n);
        let mut l = (acc / 2.0).exp();
        for dj in d {
            scales.push(l);
            l = 1.0 / (l * dj);
        }
        scales
    } else {
        (0..n).map(|j| (d[(j + n - 1) % n] * d[j]).powf(-0.25)).collect()
    }
}

/// Finite-difference estimate of the first-order bracket change:
/// builds `W_i = V_i + eps E_i`, rescales to unit consecutive determinants
/// and returns `(det(W_i, W_{i+k}) - det(V_i, V_{i+k})) / eps` for
/// `i = 1..=n` (stored 0-based).
pub fn finite_difference_oracle(inp: &DeformationInput, eps: f64) -> CyclicSeq<f64> {
    let n = inp.n;
    let coeffs = coefficients_from_q(inp);
    let vertex = |j: usize| regular_vertex(n, j as isize);
    let w: Vec<Vec2> = (1..=n)
        .map(|j| {
            let (v, v_next) = (vertex(j), vertex(j + 1));
            let (p, pb) = (coeffs.p[j - 1], coeffs.p_bar[j - 1]);
            [
                v[0] + eps * (p * v[0] + pb * v_next[0]),
                v[1] + eps * (p * v[1] + pb * v_next[1]),
            ]
        })
        .collect();
    let w_at = |j: usize| -> Vec2 {
        // 1-based, antiperiodic
        let idx = (j - 1) % n;
        let sign = if ((j - 1) / n) % 2 == 0 { 1.0 } else { -1.0 };
        [sign * w[idx][0], sign * w[idx][1]]
    };
    let d: Vec<f64> = (1..=n).map(|j| det(w_at(j), w_at(j + 1))).collect();
    let scales = unit_determinant_scales(&d);
    let scaled = |j: usize| -> Vec2 {
        let l = scales[(j - 1) % n];
        let v = w_at(j);
        [l * v[0], l * v[1]]
    };
    let k = inp.k;
    let values = (1..=n)
        .map(|i| (det(scaled(i), scaled(i + k)) - det(vertex(i), vertex(i + k))) / eps)
        .collect();
    CyclicSeq::new(values)
}

/// Largest deviation between the finite-difference oracle and
/// `c_i / sin(2 pi/n)`.
pub fn oracle_deviation(inp: &DeformationInput, eps: f64) -> Result<f64, DeformationError> {
    let predicted = c_sequence(inp)?.bracket_derivative();
    let fd = finite_difference_oracle(inp, eps);
    Ok(fd
        .values()
        .iter()
        .zip(&predicted)
        .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}

/// Orthonormal basis of the kernel of `q -> c` for the given `(n, k)`,
/// computed numerically. Recorded for inspection only.
pub fn empirical_kernel(n: usize, k: usize) -> Result<Vec<Vec<f64>>, DeformationError> {
    // Columns of the linear map are the images of the standard basis.
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let mut q = vec![0.0; n];
        q[j] = 1.0;
        columns.push(c_sequence(&DeformationInput::new(q, k)?)?.c);
    }
    // Row-reduce the n x n matrix A[i][j] = columns[j][i].
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| columns[j][i]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let (best, val) = (row..n)
            .map(|r| (r, a[r][col].abs()))
            .fold((row, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if row >= n || val < 1e-10 {
            continue;
        }
        a.swap(row, best);
        let p = a[row][col];
        for x in a[row].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != row {
                let factor = a[r][col];
                if factor != 0.0 {
                    for c in 0..n {
                        a[r][c] -= factor * a[row][c];
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for &f in &free {
        let mut v = vec![0.0; n];
        v[f] = 1.0;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][f];
        }
        // Gram-Schmidt against the vectors already collected.
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    Ok(basis)
}
