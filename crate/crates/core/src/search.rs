//! Scanning pairs of friezes for rows whose difference changes sign fewer
//! than four times.
//!
//! Every reported violation carries both first rows exactly, so it can be
//! re-checked from scratch with [`ViolationCert::verify`]. Floating scans
//! never report a violation directly: a candidate is rebuilt as a nearby
//! exact frieze pair and kept only if the exact count is still below four.
//!
//! Work is split over pair (or sample) indices with rayon and the results are
//! merged in index order, so a report depends only on its scope and seed.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frieze::{build_from_first_row, validate, ExactFrieze, FriezeError};
use crate::geometry::{mix_seed, polygon_to_frieze, random_polygon, rationalized_frieze, GeometryError};
use crate::scalar::{parse_rational_list, rational_vec, Rational};
use crate::sign::{problem1_check, row_difference, sign_changes, SignError, ZERO_CONVENTION};
use crate::triangulation::{catalan, enumerate_triangulations_capped, triangulation_to_frieze, TriangulationError};

/// Largest width accepted by [`scan_cc`].
pub const MAX_CC_WIDTH: usize = 8;

/// Denominator bound used when rationalizing floating candidates.
pub const DEFAULT_MAX_DENOMINATOR: u64 = 1_000_000_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("width {0} exceeds the exhaustive limit {MAX_CC_WIDTH}")]
    WidthTooLarge(usize),
    #[error("pair cap reached after {} pairs; partial report attached", .0.pairs_checked)]
    CapExceeded(Box<ScanReport>),
    #[error("row {k} is not available at width {width}")]
    RowOutOfRange { k: usize, width: usize },
    #[error("n = {0} must be odd and at least 5")]
    BadPeriod(usize),
    #[error(transparent)]
    Frieze(#[from] FriezeError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Sign(#[from] SignError),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationCert {
    #[serde(with = "rational_vec")]
    pub first_row_a: Vec<Rational>,
    #[serde(with = "rational_vec")]
    pub first_row_b: Vec<Rational>,
    pub k: usize,
    #[serde(with = "rational_vec")]
    pub difference: Vec<Rational>,
    pub count: usize,
    /// Zero entries of `difference`. A certificate with no zeros violates
    /// under every zero convention, not only the skip-zeros count.
    #[serde(default)]
    pub zero_entries: usize,
}

impl ViolationCert {
    fn from_pair(f: &ExactFrieze, g: &ExactFrieze, k: usize) -> Result<Self, SearchError> {
        let check = problem1_check(f, g, k)?;
        let zero_entries = check.sequence.values().iter().filter(|v| v.is_zero()).count();
        Ok(ViolationCert {
            first_row_a: f.first_row(),
            first_row_b: g.first_row(),
            k,
            difference: check.sequence.into_values(),
            count: check.count,
            zero_entries,
        })
    }

    /// Rebuilds both friezes from the first rows and recounts exactly.
    /// `Ok(true)` when the stored difference and count are reproduced and the
    /// count is below four.
    pub fn verify(&self) -> Result<bool, SearchError> {
        let f = build_from_first_row(&self.first_row_a)?;
        let g = build_from_first_row(&self.first_row_b)?;
        let check = problem1_check(&f, &g, self.k)?;
        let zeros = check.sequence.values().iter().filter(|v| v.is_zero()).count();
        Ok(check.count == self.count
            && check.count < 4
            && zeros == self.zero_entries
            && check.sequence.values() == self.difference.as_slice())
    }

    fn key(&self) -> (usize, Vec<String>, Vec<String>) {
        let s = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect();
        (self.k, s(&self.first_row_a), s(&self.first_row_b))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanScope {
    pub kind: String,
    pub n: usize,
    pub width: usize,
    pub k_set: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    pub zero_convention: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RowStats {
    /// Smallest count over non-degenerate pairs.
    pub min_count: Option<usize>,
    pub histogram: BTreeMap<usize, usize>,
    /// Pairs whose row-k difference vanishes identically.
    pub degenerate: usize,
    /// Floating counts below four that did not survive exact re-verification.
    pub uncertified: usize,
}

impl RowStats {
    fn record(&mut self, count: usize) {
        *self.histogram.entry(count).or_insert(0) += 1;
        self.min_count = Some(self.min_count.map_or(count, |m| m.min(count)));
    }

    fn merge(&mut self, other: &RowStats) {
        for (&c, &m) in &other.histogram {
            *self.histogram.entry(c).or_insert(0) += m;
        }
        self.min_count = match (self.min_count, other.min_count) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.degenerate += other.degenerate;
        self.uncertified += other.uncertified;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub scope: ScanScope,
    pub pairs_checked: usize,
    pub per_k: BTreeMap<usize, RowStats>,
    pub violations: Vec<ViolationCert>,
    /// Certificates with no zero in the difference.
    #[serde(default)]
    pub strict_violations: usize,
    pub truncated: bool,
}

impl ScanReport {
    fn empty(scope: ScanScope) -> Self {
        let per_k = scope.k_set.iter().map(|&k| (k, RowStats::default())).collect();
        ScanReport {
            scope,
            pairs_checked: 0,
            per_k,
            violations: Vec::new(),
            strict_violations: 0,
            truncated: false,
        }
    }

    pub fn min_count(&self, k: usize) -> Option<usize> {
        self.per_k.get(&k).and_then(|s| s.min_count)
    }

    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }


    fn merge(&mut self, part: Partial) {
        self.pairs_checked += part.pairs;
        for (k, stats) in part.per_k {
            self.per_k.entry(k).or_default().merge(&stats);
        }
        self.violations.extend(part.violations);
    }

    fn finish(&mut self) {
        self.violations.sort_by_key(|v| v.key());
        self.violations.dedup();
        self.strict_violations = self.violations.iter().filter(|v| v.zero_entries == 0).count();
    }
}

#[derive(Default)]
struct Partial {
    pairs: usize,
    per_k: BTreeMap<usize, RowStats>,
    violations: Vec<ViolationCert>,
}

fn check_k_set(k_set: &[usize], width: usize) -> Result<(), SearchError> {
    match k_set.iter().find(|&&k| k == 0 || k > width) {
        Some(&k) => Err(SearchError::RowOutOfRange { k, width }),
        None => Ok(()),
    }
}

/// Position of the unordered pair `(i, j)`, `i < j`, in the row-major
/// listing of all pairs out of `m`, inverted.
fn pair_at(index: usize, m: usize) -> (usize, usize) {
    let mut i = 0;
    let mut remaining = index;
    loop {
        let row = m - 1 - i;
        if remaining < row {
            return (i, i + 1 + remaining);
        }
        remaining -= row;
        i += 1;
    }
}

/// All Conway–Coxeter friezes of a width, in enumeration order.
pub fn cc_friezes(width: usize) -> Result<Vec<ExactFrieze>, SearchError> {
    let n = width + 3;
    enumerate_triangulations_capped(n, MAX_CC_WIDTH + 3)?
        .map(|t| triangulation_to_frieze(&t).map_err(SearchError::from))
        .collect()
}

const CHUNK: usize = 4096;

/// Exhaustive exact scan over all unordered pairs of Conway–Coxeter friezes
/// of the given width. With a `cap`, at most that many pairs are checked;
/// hitting it returns [`SearchError::CapExceeded`] with the partial report.
pub fn scan_cc(width: usize, k_set: &[usize], cap: Option<usize>) -> Result<ScanReport, SearchError> {
    if width > MAX_CC_WIDTH {
        return Err(SearchError::WidthTooLarge(width));
    }
    check_k_set(k_set, width)?;
    let friezes = cc_friezes(width)?;
    let n = width + 3;
    let m = friezes.len();
    if catalan(width + 1).to_usize() != Some(m) {
        return Err(SearchError::Internal(format!("enumerated {m} friezes of width {width}")));
    }
    // Entries of Conway–Coxeter friezes are positive integers.
    let rows: Vec<BTreeMap<usize, Vec<i128>>> = friezes
        .iter()
        .map(|f| {
            k_set
                .iter()
                .map(|&k| {
                    let row = f.row(k)?;
                    let ints = row
                        .iter()
                        .map(|v| {
                            if v.is_integer() {
                                v.to_integer().to_i128().ok_or_else(|| SearchError::Internal("entry overflow".into()))
                            } else {
                                Err(SearchError::Internal(format!("non-integer entry {v}")))
                            }
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok((k, ints))
                })
                .collect::<Result<BTreeMap<_, _>, SearchError>>()
        })
        .collect::<Result<_, _>>()?;

    let total = m * (m - 1) / 2;
    let limit = cap.map_or(total, |c| c.min(total));
    let scope = ScanScope {
        kind: "cc".into(),
        n,
        width,
        k_set: k_set.to_vec(),
        samples: None,
        seed: None,
        cap,
        zero_convention: ZERO_CONVENTION.into(),
    };
    let chunks: Vec<usize> = (0..limit).step_by(CHUNK).collect();
    let parts: Vec<Partial> = chunks
        .par_iter()
        .map(|&start| {
            let mut part = Partial::default();
            let (mut i, mut j) = pair_at(start, m);
            for _ in start..(start + CHUNK).min(limit) {
                if j == m {
                    i += 1;
                    j = i + 1;
                }
                let (pi, pj) = (i, j);
                j += 1;
                part.pairs += 1;
                for &k in k_set {
                    let (a, b) = (&rows[pi][&k], &rows[pj][&k]);
                    let signs: Vec<i8> = a.iter().zip(b).map(|(x, y)| (x - y).signum() as i8).collect();
                    let stats = part.per_k.entry(k).or_default();
                    if signs.iter().all(|&s| s == 0) {
                        stats.degenerate += 1;
                        continue;
                    }
                    let count = count_from_signs(&signs);
                    stats.record(count);
                    if count < 4 {
                        part.violations.push(ViolationCert::from_pair(&friezes[pi], &friezes[pj], k)?);
                    }
                }
            }
            Ok(part)
        })
        .collect::<Result<_, SearchError>>()?;

    let mut report = ScanReport::empty(scope);
    for part in parts {
        report.merge(part);
    }
    report.finish();
    if limit < total {
        report.truncated = true;
        return Err(SearchError::CapExceeded(Box::new(report)));
    }
    Ok(report)
}

fn count_from_signs(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    if nz.is_empty() {
        return 0;
    }
    (0..nz.len()).filter(|&i| nz[i] != nz[(i + 1) % nz.len()]).count()
}

/// Randomized scan over pairs of floating friezes of odd period `n`.
pub fn scan_random(n: usize, k_set: &[usize], samples: usize, seed: u64) -> Result<ScanReport, SearchError> {
    scan_random_with(n, k_set, samples, seed, DEFAULT_MAX_DENOMINATOR)
}

pub fn scan_random_with(n: usize, k_set: &[usize], samples: usize, seed: u64, max_den: u64) -> Result<ScanReport, SearchError> {
    if n < 5 || n % 2 == 0 {
        return Err(SearchError::BadPeriod(n));
    }
    let width = n - 3;
    check_k_set(k_set, width)?;
    let scope = ScanScope {
        kind: "random".into(),
        n,
        width,
        k_set: k_set.to_vec(),
        samples: Some(samples),
        seed: Some(seed),
        cap: None,
        zero_convention: ZERO_CONVENTION.into(),
    };
    let parts: Vec<Partial> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let pa = random_polygon(n, mix_seed(seed, s as u64, 0))?;
            let pb = random_polygon(n, mix_seed(seed, s as u64, 1))?;
            let (f, g) = (polygon_to_frieze(&pa)?, polygon_to_frieze(&pb)?);
            let mut part = Partial { pairs: 1, ..Partial::default() };
            let mut exact: Option<Option<(ExactFrieze, ExactFrieze)>> = None;
            for &k in k_set {
                let stats = part.per_k.entry(k).or_default();
                let diff = row_difference(&f, &g, k)?;
                if diff.is_all_zero() {
                    stats.degenerate += 1;
                    continue;
                }
                let count = sign_changes(&diff);
                if count >= 4 {
                    stats.record(count);
                    continue;
                }
                if exact.is_none() {
                    // Rationalization can merge nearly equal angles; such a
                    // candidate stays uncertified.
                    exact = Some(match (rationalized_frieze(&pa, max_den), rationalized_frieze(&pb, max_den)) {
                        (Ok(fe), Ok(ge)) => Some((fe, ge)),
                        _ => None,
                    });
                }
                let Some((fe, ge)) = exact.as_ref().expect("set above") else {
                    stats.uncertified += 1;
                    continue;
                };
                match problem1_check(fe, ge, k) {
                    Ok(check) if check.count < 4 => {
                        stats.record(check.count);
                        part.violations.push(ViolationCert::from_pair(fe, ge, k)?);
                    }
                    Ok(_) | Err(SignError::Degenerate(_)) => stats.uncertified += 1,
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(part)
        })
        .collect::<Result<_, SearchError>>()?;

    let mut report = ScanReport::empty(scope);
    for part in parts {
        report.merge(part);
    }
    report.finish();
    Ok(report)
}

/// First rows of the two width-5 friezes whose third rows differ by a
/// sequence of constant sign.
pub const CUNTZ_FIRST: &str = "2,2,4,2,3,18/41,41,30/41";
pub const CUNTZ_SECOND: &str = "5,21/97,194,36/97,3,5,1,5";

#[derive(Debug, Clone, PartialEq)]
pub struct CuntzCounterexample {
    pub first: ExactFrieze,
    pub second: ExactFrieze,
    pub report: ScanReport,
}

/// Builds the counterexample pair exactly and checks every claim about it:
/// all entries positive, rows 1 and 2 with at least four sign changes, and a
/// third-row difference that is strictly positive (second minus first) and
/// 4-periodic. The certificate is oriented so that its difference is
/// positive.
pub fn cuntz_counterexample() -> Result<CuntzCounterexample, SearchError> {
    let internal = |msg: String| SearchError::Internal(msg);
    let a = parse_rational_list(CUNTZ_FIRST).map_err(|e| internal(e.to_string()))?;
    let b = parse_rational_list(CUNTZ_SECOND).map_err(|e| internal(e.to_string()))?;
    let first = build_from_first_row(&a)?;
    let second = build_from_first_row(&b)?;
    for f in [&first, &second] {
        if f.n() != 8 || f.width() != 5 || !validate(f).passed {
            return Err(internal("counterexample frieze failed validation".into()));
        }
    }
    for k in [1, 2] {
        let check = problem1_check(&first, &second, k)?;
        if check.count < 4 {
            return Err(internal(format!("row {k} has only {} sign changes", check.count)));
        }
    }
    let third = row_difference(&second, &first, 3)?;
    let values = third.values();
    if values.iter().any(|v| *v <= Rational::from_integer(0.into())) {
        return Err(internal("third-row difference is not strictly positive".into()));
    }
    if (0..8).any(|i| values[i] != values[(i + 4) % 8]) {
        return Err(internal("third-row difference is not 4-periodic".into()));
    }
    if sign_changes(&third) != 0 {
        return Err(internal("third-row difference changes sign".into()));
    }

    let k_set: Vec<usize> = (1..=5).collect();
    let scope = ScanScope {
        kind: "cuntz".into(),
        n: 8,
        width: 5,
        k_set: k_set.clone(),
        samples: None,
        seed: None,
        cap: None,
        zero_convention: ZERO_CONVENTION.into(),
    };
    let mut report = ScanReport::empty(scope);
    let mut part = Partial { pairs: 1, ..Partial::default() };
    for &k in &k_set {
        let check = problem1_check(&second, &first, k)?;
        part.per_k.entry(k).or_default().record(check.count);
        if check.count < 4 {
            part.violations.push(ViolationCert::from_pair(&second, &first, k)?);
        }
    }
    report.merge(part);
    report.finish();
    if !report.violations.iter().any(|v| v.k == 3) {
        return Err(internal("no certificate for row 3".into()));
    }
    Ok(CuntzCounterexample { first, second, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indexing_is_row_major() {
        let m = 5;
        let pairs: Vec<_> = (0..10).map(|x| pair_at(x, m)).collect();
        let expected: Vec<_> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
        assert_eq!(pairs, expected);
    }

    #[test]
    fn width_two_has_ten_pairs_and_no_violation() {
        let r = scan_cc(2, &[1], None).unwrap();
        assert_eq!(r.pairs_checked, 10);
        assert!(r.min_count(1).unwrap() >= 4);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn cap_returns_partial_report() {
        match scan_cc(4, &[1, 2], Some(100)) {
            Err(SearchError::CapExceeded(report)) => {
                assert!(report.truncated);
                assert_eq!(report.pairs_checked, 100);
            }
            other => panic!("expected CapExceeded, got {other:?}"),
        }
    }

    #[test]
    fn bad_arguments() {
        assert!(matches!(scan_cc(9, &[1], None), Err(SearchError::WidthTooLarge(9))));
        assert!(matches!(scan_cc(2, &[3], None), Err(SearchError::RowOutOfRange { k: 3, width: 2 })));
        assert!(matches!(scan_random(8, &[1], 1, 0), Err(SearchError::BadPeriod(8))));
    }

    #[test]
    fn cuntz_certificate_verifies() {
        let c = cuntz_counterexample().unwrap();
        assert_eq!(c.first.width(), 5);
        let cert = c.report.violations.iter().find(|v| v.k == 3).unwrap();
        assert_eq!(cert.count, 0);
        assert_eq!(cert.zero_entries, 0);
        assert_eq!(c.report.strict_violations, 1);
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn certificate_rejects_tampering() {
        let c = cuntz_counterexample().unwrap();
        let mut cert = c.report.violations[0].clone();
        cert.count = 2;
        assert!(!cert.verify().unwrap());
    }

    #[test]
    fn random_scan_is_reproducible() {
        let a = scan_random(9, &[1, 2], 50, 7).unwrap();
        let b = scan_random(9, &[1, 2], 50, 7).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.pairs_checked, 50);
        assert!(a.violations.is_empty());
    }
}
