//! Cyclic sign-change counting, row differences between friezes and
//! cross-ratios on the projective line.
//!
//! Zeros are skipped when counting: sign changes are counted between
//! cyclically consecutive nonzero entries. This gives the smallest count
//! compatible with any assignment of signs to the zeros, so a count of four
//! or more does not depend on that choice.

use serde::Serialize;
use thiserror::Error;

use crate::frieze::{distinguished_basis, Frieze};
use crate::scalar::{Scalar, FLOAT_TOLERANCE};

/// Zero convention recorded in every report that carries a count.
pub const ZERO_CONVENTION: &str = "zeros skipped; changes counted between cyclically consecutive nonzero entries";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignError {
    #[error("period mismatch: {0} vs {1}")]
    PeriodMismatch(usize, usize),
    #[error("row {k} out of range 1..={width}")]
    RowOutOfRange { k: usize, width: usize },
    #[error("row {0} is identical in both friezes")]
    Degenerate(usize),
    #[error("degenerate quadruple at position {0}")]
    DegenerateQuadruple(usize),
    #[error("Hill solution unavailable: {0}")]
    Hill(String),
}

/// An n-periodic sequence. For floating scalars, entries with
/// `|x| <= zero_threshold * max|x|` count as zero; exact scalars ignore the
/// threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CyclicSeq<T> {
    values: Vec<T>,
    zero_threshold: f64,
}

impl<T: Scalar> CyclicSeq<T> {
    pub fn new(values: Vec<T>) -> Self {
        CyclicSeq {
            values,
            zero_threshold: if T::EXACT { 0.0 } else { FLOAT_TOLERANCE },
        }
    }

    pub fn with_threshold(values: Vec<T>, zero_threshold: f64) -> Self {
        CyclicSeq { values, zero_threshold }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn zero_threshold(&self) -> f64 {
        self.zero_threshold
    }

    /// Signs after thresholding, in order.
    pub fn signs(&self) -> Vec<i8> {
        let scale = self.values.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
        self.values.iter().map(|v| v.sign_with(self.zero_threshold, scale)).collect()
    }

    pub fn is_all_zero(&self) -> bool {
        self.signs().iter().all(|&s| s == 0)
    }

    pub fn sign_changes(&self) -> usize {
        sign_changes(self)
    }
}

/// Number of cyclically adjacent opposite-sign pairs among the nonzero
/// entries. Always even.
pub fn sign_changes<T: Scalar>(s: &CyclicSeq<T>) -> usize {
    let nonzero: Vec<i8> = s.signs().into_iter().filter(|&x| x != 0).collect();
    if nonzero.is_empty() {
        return 0;
    }
    let m = nonzero.len();
    (0..m).filter(|&i| nonzero[i] != nonzero[(i + 1) % m]).count()
}

/// `entry_f(i, k + 1) - entry_g(i, k + 1)` for `i = 0..n`.
///
/// Rows past `width / 2` repeat earlier rows up to a shift (glide symmetry)
/// but are accepted.
///
/// For floats the zero threshold is applied per entry: a difference at most
/// `1e-9 * max(|f_i|, |g_i|)` becomes an exact zero, and the returned
/// sequence carries threshold 0. Rows of random friezes can span many
/// orders of magnitude, and a threshold scaled by the largest difference
/// would erase genuine small ones.
pub fn row_difference<T: Scalar>(f: &Frieze<T>, g: &Frieze<T>, k: usize) -> Result<CyclicSeq<T>, SignError> {
    if f.n() != g.n() {
        return Err(SignError::PeriodMismatch(f.n(), g.n()));
    }
    if k == 0 || k > f.width() {
        return Err(SignError::RowOutOfRange { k, width: f.width() });
    }
    let values = (0..f.n() as isize).map(|i| {
        let (x, y) = (f.at(i, k + 1), g.at(i, k + 1));
        entrywise_difference(x, y)
    });
    Ok(if T::EXACT {
        CyclicSeq::new(values.collect())
    } else {
        CyclicSeq::with_threshold(values.collect(), 0.0)
    })
}

/// `x - y`, snapped to zero for floats within `FLOAT_TOLERANCE` of the
/// operands' magnitude.
pub fn entrywise_difference<T: Scalar>(x: &T, y: &T) -> T {
    let d = x.clone() - y.clone();
    let scale = x.to_f64().abs().max(y.to_f64().abs());
    if d.sign_with(FLOAT_TOLERANCE, scale) == 0 {
        T::zero()
    } else {
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    SatisfiesFour,
    Violates,
}

impl Verdict {
    pub fn from_count(count: usize) -> Self {
        if count >= 4 {
            Verdict::SatisfiesFour
        } else {
            Verdict::Violates
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::SatisfiesFour => "satisfies_four",
            Verdict::Violates => "violates",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowCheck<T> {
    pub k: usize,
    pub count: usize,
    pub verdict: Verdict,
    pub sequence: CyclicSeq<T>,
}

/// Counts sign changes of the row-`k` difference and compares with four.
pub fn problem1_check<T: Scalar>(f: &Frieze<T>, g: &Frieze<T>, k: usize) -> Result<RowCheck<T>, SignError> {
    let sequence = row_difference(f, g, k)?;
    if sequence.is_all_zero() {
        return Err(SignError::Degenerate(k));
    }
    let count = sign_changes(&sequence);
    Ok(RowCheck {
        k,
        count,
        verdict: Verdict::from_count(count),
        sequence,
    })
}

/// A point of the projective line: a finite coordinate or the point at
/// infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum ProjPoint<T> {
    Finite(T),
    Infinity,
}

impl<T> From<T> for ProjPoint<T> {
    fn from(v: T) -> Self {
        ProjPoint::Finite(v)
    }
}

fn nonzero<T: Scalar>(v: T) -> Result<T, SignError> {
    if v.is_effectively_zero() {
        Err(SignError::DegenerateQuadruple(0))
    } else {
        Ok(v)
    }
}

/// `[a,b,c,d]_1 = (d-a)(c-b) / ((d-c)(b-a))`. Any single argument may be
/// infinite; the value is then the limit.
pub fn cross_ratio_1<T: Scalar>(a: &ProjPoint<T>, b: &ProjPoint<T>, c: &ProjPoint<T>, d: &ProjPoint<T>) -> Result<T, SignError> {
    use ProjPoint::*;
    let diff = |x: &T, y: &T| x.clone() - y.clone();
    match (a, b, c, d) {
        (Finite(a), Finite(b), Finite(c), Finite(d)) => {
            let den = nonzero(diff(d, c) * diff(b, a))?;
            Ok(diff(d, a) * diff(c, b) / den)
        }
        (Infinity, Finite(b), Finite(c), Finite(d)) => Ok(diff(c, b) / nonzero(diff(d, c))?),
        (Finite(a), Infinity, Finite(c), Finite(d)) => Ok(-diff(d, a) / nonzero(diff(d, c))?),
        (Finite(a), Finite(b), Infinity, Finite(d)) => Ok(-diff(d, a) / nonzero(diff(b, a))?),
        (Finite(a), Finite(b), Finite(c), Infinity) => Ok(diff(c, b) / nonzero(diff(b, a))?),
        _ => Err(SignError::DegenerateQuadruple(0)),
    }
}

/// `[a,b,c,d]_2 = (d-b)(c-a) / ((d-c)(b-a))`, with the same infinity rules.
pub fn cross_ratio_2<T: Scalar>(a: &ProjPoint<T>, b: &ProjPoint<T>, c: &ProjPoint<T>, d: &ProjPoint<T>) -> Result<T, SignError> {
    use ProjPoint::*;
    let diff = |x: &T, y: &T| x.clone() - y.clone();
    match (a, b, c, d) {
        (Finite(a), Finite(b), Finite(c), Finite(d)) => {
            let den = nonzero(diff(d, c) * diff(b, a))?;
            Ok(diff(d, b) * diff(c, a) / den)
        }
        (Infinity, Finite(b), Finite(c), Finite(d)) => Ok(diff(d, b) / nonzero(diff(d, c))?),
        (Finite(a), Infinity, Finite(c), Finite(d)) => Ok(-diff(c, a) / nonzero(diff(d, c))?),
        (Finite(a), Finite(b), Infinity, Finite(d)) => Ok(-diff(d, b) / nonzero(diff(b, a))?),
        (Finite(a), Finite(b), Finite(c), Infinity) => Ok(diff(c, a) / nonzero(diff(b, a))?),
        _ => Err(SignError::DegenerateQuadruple(0)),
    }
}

/// `[x_i, x_{i+1}, x_{i+2}, x_{i+3}]_1` for `i = 0..n`; entry `i` equals
/// `entry(i, 3)` of the frieze of the polygon.
pub fn second_row_from_points<T: Scalar>(x: &[ProjPoint<T>]) -> Result<CyclicSeq<T>, SignError> {
    let n = x.len();
    if n < 4 {
        return Err(SignError::DegenerateQuadruple(0));
    }
    let values = (0..n)
        .map(|i| {
            cross_ratio_1(&x[i], &x[(i + 1) % n], &x[(i + 2) % n], &x[(i + 3) % n])
                .map_err(|_| SignError::DegenerateQuadruple(i))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CyclicSeq::new(values))
}

/// `sum_i (a_i - b_i) U_i V_i` over one period, where `a`, `b` are the first
/// rows of `f`, `g` and `U`, `V` are component `cu` (resp. `cv`) of the
/// distinguished Hill solutions. Vanishes for antiperiodic solutions.
pub fn orthogonality_sum<T: Scalar>(f: &Frieze<T>, g: &Frieze<T>, cu: usize, cv: usize) -> Result<T, SignError> {
    if f.n() != g.n() {
        return Err(SignError::PeriodMismatch(f.n(), g.n()));
    }
    let (a, b) = (f.first_row(), g.first_row());
    let u = distinguished_basis(f).map_err(|e| SignError::Hill(e.to_string()))?.component(cu);
    let v = distinguished_basis(g).map_err(|e| SignError::Hill(e.to_string()))?.component(cv);
    Ok((0..f.n()).fold(T::zero(), |acc, i| acc + (a[i].clone() - b[i].clone()) * u[i].clone() * v[i].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frieze::build_from_first_row;
    use crate::scalar::{parse_rational_list, Rational};

    #[test]
    fn orthogonality_sum_vanishes_for_rotated_heptagon() {
        let f = build_from_first_row(&parse_rational_list("1,3,2,2,1,4,2").unwrap()).unwrap();
        let g = build_from_first_row(&parse_rational_list("2,1,3,2,2,1,4").unwrap()).unwrap();
        for (cu, cv) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(orthogonality_sum(&f, &g, cu, cv).unwrap(), Rational::from_i64(0));
        }
    }

    fn seq(v: &[f64]) -> CyclicSeq<f64> {
        CyclicSeq::new(v.to_vec())
    }

    /// Independent count: walk every cyclic adjacency, carrying the last
    /// nonzero sign across runs of zeros.
    fn brute_force(v: &[i64]) -> usize {
        let n = v.len();
        let mut count = 0;
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let mut j = (i + 1) % n;
            while v[j] == 0 {
                j = (j + 1) % n;
            }
            if (v[i] > 0) != (v[j] > 0) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn named_sign_change_examples() {
        assert_eq!(seq(&[1.0, -1.0, 2.0, -3.0]).sign_changes(), 4);
        assert_eq!(seq(&[1.0, 2.0, 3.0, 4.0]).sign_changes(), 0);
        assert_eq!(seq(&[1.0, 0.0, -1.0, 1.0]).sign_changes(), brute_force(&[1, 0, -1, 1]));
        assert_eq!(seq(&[1.0, 0.0, -1.0, 1.0]).sign_changes(), 2);
        assert_eq!(seq(&[0.0, 0.0]).sign_changes(), 0);
        assert_eq!(seq(&[]).sign_changes(), 0);
        assert_eq!(seq(&[-2.0]).sign_changes(), 0);
    }

    #[test]
    fn float_threshold_zeroes_noise() {
        let s = seq(&[1.0, -1e-12, 1.0, 2.0]);
        assert_eq!(s.sign_changes(), 0);
        let s = CyclicSeq::with_threshold(vec![1.0, -1e-12, 1.0, 2.0], 0.0);
        assert_eq!(s.sign_changes(), 2);
    }

    #[test]
    fn cross_ratio_examples() {
        let p = |x: i64| ProjPoint::Finite(Rational::from_i64(x));
        assert_eq!(cross_ratio_1(&p(0), &p(1), &p(2), &p(3)).unwrap(), Rational::from_i64(3));
        assert_eq!(cross_ratio_2(&p(0), &p(1), &p(2), &p(3)).unwrap(), Rational::from_i64(4));
        assert_eq!(
            cross_ratio_1(&p(0), &p(0), &p(2), &p(3)),
            Err(SignError::DegenerateQuadruple(0))
        );
    }

    #[test]
    fn infinity_matches_the_limit() {
        let big = 1e9;
        let pts = [0.3, 1.1, 2.5, 4.0];
        for slot in 0..4 {
            let exact: Vec<ProjPoint<f64>> = (0..4)
                .map(|j| if j == slot { ProjPoint::Infinity } else { ProjPoint::Finite(pts[j]) })
                .collect();
            let approx: Vec<ProjPoint<f64>> = (0..4)
                .map(|j| ProjPoint::Finite(if j == slot { big } else { pts[j] }))
                .collect();
            let e1 = cross_ratio_1(&exact[0], &exact[1], &exact[2], &exact[3]).unwrap();
            let a1 = cross_ratio_1(&approx[0], &approx[1], &approx[2], &approx[3]).unwrap();
            let e2 = cross_ratio_2(&exact[0], &exact[1], &exact[2], &exact[3]).unwrap();
            let a2 = cross_ratio_2(&approx[0], &approx[1], &approx[2], &approx[3]).unwrap();
            assert!((e1 - a1).abs() < 1e-7, "slot {slot}: {e1} vs {a1}");
            assert!((e2 - a2).abs() < 1e-7, "slot {slot}: {e2} vs {a2}");
            assert!((e2 - e1 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn collapsed_quadruple_is_reported() {
        let pts: Vec<ProjPoint<f64>> = [0.0, 1.0, 1.0, 3.0, 4.0].iter().map(|&x| x.into()).collect();
        assert!(matches!(second_row_from_points(&pts), Err(SignError::DegenerateQuadruple(_))));
    }

    #[test]
    fn problem1_on_identical_and_mismatched() {
        let a = parse_rational_list("1,3,2,2,1,4,2").unwrap();
        let f = build_from_first_row(&a).unwrap();
        let d = row_difference(&f, &f, 1).unwrap();
        assert!(d.is_all_zero());
        assert_eq!(problem1_check(&f, &f, 1).unwrap_err(), SignError::Degenerate(1));
        let g = build_from_first_row(&parse_rational_list("1,2,2,1,3").unwrap()).unwrap();
        assert_eq!(row_difference(&f, &g, 1).unwrap_err(), SignError::PeriodMismatch(7, 5));
        assert_eq!(row_difference(&f, &f, 5).unwrap_err(), SignError::RowOutOfRange { k: 5, width: 4 });
        assert!(row_difference::<Rational>(&f, &f, 0).is_err());
    }
}
