//! Frieze patterns: construction, lookup, validation and the Hill-equation
//! view of their diagonals.
//!
//! Indexing convention. Entries are addressed by a start index `i` (taken
//! modulo `n`) and a span `d` with `0 <= d <= n`; `entry(i, d)` is the value
//! usually written `v_{i,i+d}`. With the 1-based notation `v_{i,j}` this is
//! `d = j - i`, and the entry lies in row number `k = d - 1` (row 1 is the
//! first non-trivial row, rows 0 and `n - 2` are the rows of ones). The first
//! row is stored as `a[i] = entry(i - 1, 2)`.
//!
//! A frieze is closed exactly when the Hill recurrence
//! `V_{i+1} = a[i] V_i - V_{i-1}` is antiperiodic, i.e. when the ordered
//! product of the matrices `[[a_i, -1], [1, 0]]` over one period is `-I`.
//! [`build_from_first_row`] checks both routes.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::{Scalar, FLOAT_TOLERANCE};

pub type Matrix2<T> = [[T; 2]; 2];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FriezeError {
    #[error("period {0} is too small (need n >= 4)")]
    PeriodTooSmall(usize),
    #[error("first row entry a[{index}] = {value} is not positive")]
    NonPositiveInput { index: usize, value: String },
    #[error("division by zero while propagating entry ({i}, {d})")]
    DivisionByZero { i: usize, d: usize },
    #[error("pattern does not close: monodromy is {} instead of -I{}", fmt_matrix(.monodromy), fmt_border(.border))]
    NonClosing {
        /// `(i, d, value)` of the first border entry that misses its 1 or 0,
        /// when propagation got that far.
        border: Option<(usize, usize, String)>,
        monodromy: [[String; 2]; 2],
    },
    #[error("non-positive interior entry ({i}, {d}) = {value}")]
    NonPositiveEntry { i: usize, d: usize, value: String },
    #[error("span {d} out of range 0..={n}")]
    IndexOutOfRange { d: usize, n: usize },
    #[error("Hill solution is not antiperiodic")]
    NotAFrieze,
    #[error("internal error: {0}")]
    Internal(String),
}

/// A width `n - 3` frieze pattern stored over its fundamental domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Frieze<T> {
    n: usize,
    entries: Vec<T>,
}

pub type ExactFrieze = Frieze<crate::scalar::Rational>;
pub type FloatFrieze = Frieze<f64>;

impl<T: Scalar> Frieze<T> {
    /// Wraps raw entries without checking anything. `rows[d][i]` is
    /// `entry(i, d)` for `0 <= d <= n`. Use [`validate`] on the result.
    pub fn from_rows_unchecked(rows: Vec<Vec<T>>) -> Result<Self, FriezeError> {
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        if n < 4 {
            return Err(FriezeError::PeriodTooSmall(n));
        }
        if rows.len() != n + 1 || rows.iter().any(|r| r.len() != n) {
            return Err(FriezeError::IndexOutOfRange { d: rows.len(), n });
        }
        let mut entries = vec![T::zero(); n * (n + 1)];
        for (d, row) in rows.into_iter().enumerate() {
            for (i, v) in row.into_iter().enumerate() {
                entries[i * (n + 1) + d] = v;
            }
        }
        Ok(Frieze { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.n - 3
    }

    fn slot(&self, i: isize, d: usize) -> usize {
        let n = self.n as isize;
        (i.rem_euclid(n) as usize) * (self.n + 1) + d
    }

    /// `v_{i,i+d}`; `i` is read modulo `n`.
    pub fn entry(&self, i: isize, d: usize) -> Result<&T, FriezeError> {
        if d > self.n {
            return Err(FriezeError::IndexOutOfRange { d, n: self.n });
        }
        Ok(&self.entries[self.slot(i, d)])
    }

    /// Lookup for spans already known to be in range.
    pub(crate) fn at(&self, i: isize, d: usize) -> &T {
        &self.entries[self.slot(i, d)]
    }

    /// Test hook for corrupting a single entry.
    #[doc(hidden)]
    pub fn set_entry_unchecked(&mut self, i: isize, d: usize, value: T) {
        let s = self.slot(i, d);
        self.entries[s] = value;
    }

    /// `a[i] = entry(i - 1, 2)`.
    pub fn first_row(&self) -> Vec<T> {
        (0..self.n as isize).map(|i| self.at(i - 1, 2).clone()).collect()
    }

    /// Row number `k` (`1 <= k <= width` are the non-trivial rows) as the
    /// n-tuple `entry(i, k + 1)`, `i = 0..n`.
    pub fn row(&self, k: usize) -> Result<Vec<T>, FriezeError> {
        if k + 1 > self.n {
            return Err(FriezeError::IndexOutOfRange { d: k + 1, n: self.n });
        }
        Ok((0..self.n as isize).map(|i| self.at(i, k + 1).clone()).collect())
    }

    /// All spans `d = 0..=n`, each as an n-tuple over `i`.
    pub fn rows_by_span(&self) -> Vec<Vec<T>> {
        (0..=self.n)
            .map(|d| (0..self.n as isize).map(|i| self.at(i, d).clone()).collect())
            .collect()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Frieze<U> {
        Frieze {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn to_float(&self) -> FloatFrieze {
        self.map(|v| v.to_f64())
    }
}

impl<T: Scalar> fmt::Display for Frieze<T> {
    /// Offset triangular layout, one printed line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (1..self.n)
            .map(|d| (0..self.n as isize).map(|i| format!("{}", self.at(i, d))).collect())
            .collect();
        let cell = rows.iter().flatten().map(|s| s.len()).max().unwrap_or(1) + 1;
        for (idx, row) in rows.iter().enumerate() {
            // Row with span d is centred half a step right of span d - 1.
            let mut line = " ".repeat(idx % 2 * cell);
            for v in row {
                line.push_str(&format!("{:>w$}{}", v, " ".repeat(cell), w = cell));
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

fn fmt_matrix(m: &[[String; 2]; 2]) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

fn fmt_border(b: &Option<(usize, usize, String)>) -> String {
    match b {
        Some((i, d, v)) => format!("; entry ({i}, {d}) is {v}"),
        None => String::new(),
    }
}

/// Tridiagonal determinant with `seq` on the diagonal and ones beside it,
/// via `K_m = a_m K_{m-1} - K_{m-2}`. The empty continuant is 1.
pub fn continuant<T: Scalar>(seq: &[T]) -> T {
    let mut prev = T::zero();
    let mut cur = T::one();
    for a in seq {
        let next = a.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Ordered product `M_{n-1} ... M_1 M_0` of `M_i = [[a_i, -1], [1, 0]]`.
pub fn monodromy<T: Scalar>(a: &[T]) -> Matrix2<T> {
    let mut m = [[T::one(), T::zero()], [T::zero(), T::one()]];
    for ai in a {
        // [[ai, -1], [1, 0]] * m
        let r0 = [
            ai.clone() * m[0][0].clone() - m[1][0].clone(),
            ai.clone() * m[0][1].clone() - m[1][1].clone(),
        ];
        let r1 = [m[0][0].clone(), m[0][1].clone()];
        m = [r0, r1];
    }
    m
}

fn is_minus_identity<T: Scalar>(m: &Matrix2<T>, tol: f64, scale: f64) -> bool {
    let minus_one = -T::one();
    m[0][0].near(&minus_one, tol, scale)
        && m[1][1].near(&minus_one, tol, scale)
        && m[0][1].near(&T::zero(), tol, scale)
        && m[1][0].near(&T::zero(), tol, scale)
}

fn matrix_strings<T: Scalar>(m: &Matrix2<T>) -> [[String; 2]; 2] {
    [
        [m[0][0].to_string(), m[0][1].to_string()],
        [m[1][0].to_string(), m[1][1].to_string()],
    ]
}

/// Builds the frieze with first row `a` by diamond propagation
/// `entry(i, d + 1) = (entry(i, d) entry(i + 1, d) - 1) / entry(i + 1, d - 1)`.
pub fn build_from_first_row<T: Scalar>(a: &[T]) -> Result<Frieze<T>, FriezeError> {
    let n = a.len();
    if n < 4 {
        return Err(FriezeError::PeriodTooSmall(n));
    }
    if let Some((index, v)) = a.iter().enumerate().find(|(_, v)| **v <= T::zero()) {
        return Err(FriezeError::NonPositiveInput { index, value: v.to_string() });
    }
    let tol = if T::EXACT { 0.0 } else { FLOAT_TOLERANCE };
    let mono = monodromy(a);
    let mono_scale = mono.iter().flatten().map(|v| v.to_f64().abs()).fold(1.0, f64::max);
    let mono_closes = is_minus_identity(&mono, tol, mono_scale);

    let mut f = Frieze {
        n,
        entries: vec![T::zero(); n * (n + 1)],
    };
    for i in 0..n as isize {
        let s = f.slot(i, 1);
        f.entries[s] = T::one();
        let s = f.slot(i, 2);
        f.entries[s] = a[((i + 1) as usize) % n].clone();
    }
    for d in 2..n {
        for i in 0..n as isize {
            let below = f.at(i + 1, d - 1);
            if below.is_effectively_zero() {
                if !mono_closes {
                    return Err(FriezeError::NonClosing {
                        border: None,
                        monodromy: matrix_strings(&mono),
                    });
                }
                return Err(FriezeError::DivisionByZero { i: i as usize, d: d + 1 });
            }
            let v = (f.at(i, d).clone() * f.at(i + 1, d).clone() - T::one()) / below.clone();
            let s = f.slot(i, d + 1);
            f.entries[s] = v;
        }
    }

    let scale = f.max_abs_entry();
    let border_failure = (0..n as isize).find_map(|i| {
        if !f.at(i, n - 1).near(&T::one(), tol, scale) {
            Some((i as usize, n - 1))
        } else if !f.at(i, n).near(&T::zero(), tol, scale) {
            Some((i as usize, n))
        } else {
            None
        }
    });

    match border_failure {
        Some((i, d)) => {
            if mono_closes && (T::EXACT || is_minus_identity(&mono, tol * 1e-2, mono_scale)) {
                return Err(FriezeError::Internal(format!(
                    "propagation fails to close at ({i}, {d}) but monodromy is -I"
                )));
            }
            Err(FriezeError::NonClosing {
                border: Some((i, d, f.at(i as isize, d).to_string())),
                monodromy: matrix_strings(&mono),
            })
        }
        None => {
            if !mono_closes && (T::EXACT || !is_minus_identity(&mono, tol * 1e2, mono_scale)) {
                return Err(FriezeError::Internal(format!(
                    "propagation closes but monodromy is {:?}",
                    matrix_strings(&mono)
                )));
            }
            for d in 2..=n - 2 {
                for i in 0..n as isize {
                    let v = f.at(i, d);
                    if *v <= T::zero() {
                        return Err(FriezeError::NonPositiveEntry {
                            i: i as usize,
                            d,
                            value: v.to_string(),
                        });
                    }
                }
            }
            // Snap the border rows onto their exact values.
            for i in 0..n as isize {
                let s = f.slot(i, n - 1);
                f.entries[s] = T::one();
                let s = f.slot(i, n);
                f.entries[s] = T::zero();
            }
            Ok(f)
        }
    }
}

/// One period `V_0..V_{n-1}` of a solution of `V_{i+1} = a[i] V_i - V_{i-1}`,
/// extended by `V_{i+n} = -V_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct HillSolution<T> {
    values: Vec<[T; 2]>,
    basis: bool,
}

impl<T: Scalar> HillSolution<T> {
    pub fn period(&self) -> usize {
        self.values.len()
    }

    /// Whether `det(V_0, V_1) = 1`.
    pub fn is_distinguished_basis(&self) -> bool {
        self.basis
    }

    pub fn values(&self) -> &[[T; 2]] {
        &self.values
    }

    /// `V_i` for any integer `i`.
    pub fn get(&self, i: isize) -> [T; 2] {
        let n = self.values.len() as isize;
        let v = &self.values[i.rem_euclid(n) as usize];
        if i.div_euclid(n) % 2 == 0 {
            v.clone()
        } else {
            [-v[0].clone(), -v[1].clone()]
        }
    }

    /// Scalar solution given by one coordinate, over one period.
    pub fn component(&self, c: usize) -> Vec<T> {
        self.values.iter().map(|v| v[c].clone()).collect()
    }
}

pub fn det2<T: Scalar>(u: &[T; 2], v: &[T; 2]) -> T {
    u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone()
}

/// Iterates the Hill recurrence of `f` from `V_0 = v0`, `V_1 = v1` and checks
/// antiperiodicity of the result.
pub fn hill_solution<T: Scalar>(f: &Frieze<T>, v0: [T; 2], v1: [T; 2]) -> Result<HillSolution<T>, FriezeError> {
    let a = f.first_row();
    hill_solution_from_row(&a, v0, v1)
}

pub fn hill_solution_from_row<T: Scalar>(a: &[T], v0: [T; 2], v1: [T; 2]) -> Result<HillSolution<T>, FriezeError> {
    let n = a.len();
    let basis = det2(&v0, &v1) == T::one();
    let mut vals: Vec<[T; 2]> = Vec::with_capacity(n + 2);
    vals.push(v0);
    vals.push(v1);
    for i in 1..=n {
        let cur = &vals[i];
        let prev = &vals[i - 1];
        let ai = a[i % n].clone();
        let next = [
            ai.clone() * cur[0].clone() - prev[0].clone(),
            ai * cur[1].clone() - prev[1].clone(),
        ];
        vals.push(next);
    }
    let scale = vals.iter().flat_map(|v| v.iter()).map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    let tol = if T::EXACT { 0.0 } else { FLOAT_TOLERANCE };
    for j in 0..2 {
        for c in 0..2 {
            if !vals[n + j][c].near(&-vals[j][c].clone(), tol, scale) {
                return Err(FriezeError::NotAFrieze);
            }
        }
    }
    vals.truncate(n);
    Ok(HillSolution { values: vals, basis })
}

/// The solution with `V_0 = (1, 0)`, `V_1 = (0, 1)`, for which
/// `det(V_i, V_{i+d}) = entry(i, d)`.
pub fn distinguished_basis<T: Scalar>(f: &Frieze<T>) -> Result<HillSolution<T>, FriezeError> {
    hill_solution(f, [T::one(), T::zero()], [T::zero(), T::one()])
}

/// Chebyshev value `U_k(cos(pi/n)) = sin((k+1) pi/n) / sin(pi/n)`.
pub fn chebyshev_value(n: usize, k: usize) -> f64 {
    let alpha = std::f64::consts::PI / n as f64;
    ((k + 1) as f64 * alpha).sin() / alpha.sin()
}

/// The constant frieze with `a_i = 2 cos(pi/n)`, built by propagation.
pub fn chebyshev_frieze(n: usize) -> Result<FloatFrieze, FriezeError> {
    let c = 2.0 * (std::f64::consts::PI / n as f64).cos();
    build_from_first_row(&vec![c; n])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    Border,
    Diamond,
    Positivity,
    Glide,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationFailure {
    pub kind: FailureKind,
    pub i: usize,
    pub d: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub n: usize,
    pub exact: bool,
    pub failure: Option<ValidationFailure>,
}

/// Checks border rows, every diamond, interior positivity and glide symmetry,
/// stopping at the first violation.
pub fn validate<T: Scalar>(f: &Frieze<T>) -> ValidationReport {
    let n = f.n;
    let scale = f.max_abs_entry();
    let tol = if T::EXACT { 0.0 } else { FLOAT_TOLERANCE };
    let fail = |kind, i: isize, d, detail: String| ValidationReport {
        passed: false,
        n,
        exact: T::EXACT,
        failure: Some(ValidationFailure { kind, i: i as usize, d, detail }),
    };
    for i in 0..n as isize {
        for (d, want) in [(0, T::zero()), (1, T::one()), (n - 1, T::one()), (n, T::zero())] {
            let v = f.at(i, d);
            if !v.near(&want, tol, scale) {
                return fail(FailureKind::Border, i, d, format!("expected {want}, found {v}"));
            }
        }
    }
    for d in 1..n {
        for i in 0..n as isize {
            let lhs = f.at(i, d).clone() * f.at(i + 1, d).clone()
                - f.at(i, d + 1).clone() * f.at(i + 1, d - 1).clone();
            if !lhs.near(&T::one(), tol, scale * scale) {
                return fail(FailureKind::Diamond, i, d, format!("EW - NS = {lhs}"));
            }
        }
    }
    for d in 2..=n - 2 {
        for i in 0..n as isize {
            let v = f.at(i, d);
            if *v <= T::zero() {
                return fail(FailureKind::Positivity, i, d, format!("entry {v}"));
            }
        }
    }
    for d in 0..=n {
        for i in 0..n as isize {
            let mirror = f.at(i + d as isize, n - d);
            if !f.at(i, d).near(mirror, tol, scale) {
                return fail(
                    FailureKind::Glide,
                    i,
                    d,
                    format!("{} != entry({}, {}) = {}", f.at(i, d), (i + d as isize).rem_euclid(n as isize), n - d, mirror),
                );
            }
        }
    }
    ValidationReport { passed: true, n, exact: T::EXACT, failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rational_list, Rational};

    fn q(list: &str) -> Vec<Rational> {
        parse_rational_list(list).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    #[test]
    fn pentagon_second_row() {
        let f = build_from_first_row(&q("1,2,2,1,3")).unwrap();
        assert_eq!(f.width(), 2);
        assert_eq!(f.row(2).unwrap(), ints(&[3, 1, 2, 2, 1]));
        assert_eq!(f.first_row(), q("1,2,2,1,3"));
    }

    #[test]
    fn heptagon_rows() {
        let f = build_from_first_row(&q("1,3,2,2,1,4,2")).unwrap();
        assert_eq!(f.width(), 4);
        assert_eq!(f.row(2).unwrap(), ints(&[5, 3, 1, 3, 7, 1, 2]));
        assert!(f.row(3).unwrap().contains(&Rational::from_i64(7)));
        assert!(validate(&f).passed);
    }

    #[test]
    fn all_ones_does_not_close() {
        match build_from_first_row(&q("1,1,1,1,1")) {
            Err(FriezeError::NonClosing { monodromy, .. }) => {
                assert_ne!(monodromy, [["-1".to_string(), "0".to_string()], ["0".to_string(), "-1".to_string()]]);
            }
            other => panic!("expected NonClosing, got {other:?}"),
        }
        // Hand product of five [[1,-1],[1,0]] matrices.
        let m = monodromy(&q("1,1,1,1,1"));
        assert_eq!(m, [[Rational::from_i64(0), Rational::from_i64(1)], [Rational::from_i64(-1), Rational::from_i64(1)]]);
    }

    #[test]
    fn error_paths() {
        assert_eq!(build_from_first_row(&q("1,2,1")), Err(FriezeError::PeriodTooSmall(3)));
        assert!(matches!(build_from_first_row(&q("1,2,0,2")), Err(FriezeError::NonPositiveInput { index: 2, .. })));
        // Nine ones: monodromy is (-I)^3 = -I, but entry(0,3) = 1*1 - 1 = 0.
        assert_eq!(monodromy(&q("1,1,1,1,1,1,1,1,1"))[0][0], Rational::from_i64(-1));
        assert!(matches!(build_from_first_row(&q("1,1,1,1,1,1,1,1,1")), Err(FriezeError::DivisionByZero { .. })));
        // Positive but not closing.
        assert!(matches!(build_from_first_row(&q("2,1,1,2,2,2")), Err(FriezeError::NonClosing { .. })));
        let f = build_from_first_row(&q("1,2,2,1,3")).unwrap();
        assert_eq!(f.entry(0, 6), Err(FriezeError::IndexOutOfRange { d: 6, n: 5 }));
    }

    #[test]
    fn border_entries() {
        let f = build_from_first_row(&q("1,3,2,2,1,4,2")).unwrap();
        for i in -3..10 {
            assert_eq!(*f.entry(i, 0).unwrap(), Rational::from_i64(0));
            assert_eq!(*f.entry(i, 1).unwrap(), Rational::from_i64(1));
        }
    }

    #[test]
    fn continuant_values() {
        assert_eq!(continuant(&q("1,3")), Rational::from_i64(2));
        assert_eq!(continuant(&q("5/7")), parse_rational_list("5/7").unwrap()[0]);
        assert_eq!(continuant::<Rational>(&[]), Rational::from_i64(1));
        assert_eq!(continuant(&q("2,2,2")), Rational::from_i64(4));
    }

    #[test]
    fn hill_solution_is_antiperiodic() {
        let f = build_from_first_row(&q("1,2,2,1,3")).unwrap();
        let one = Rational::from_i64(1);
        let zero = Rational::from_i64(0);
        let h = hill_solution(&f, [one.clone(), zero.clone()], [zero.clone(), one.clone()]).unwrap();
        assert!(h.is_distinguished_basis());
        assert_eq!(h.get(5), [-one.clone(), zero.clone()]);
        assert_eq!(h.get(-5), [-one, zero]);
        for i in 0..10 {
            assert_eq!(det2(&h.get(i), &h.get(i + 1)), Rational::from_i64(1));
        }
    }

    #[test]
    fn hill_solution_rejects_unclosed_row() {
        let one = Rational::from_i64(1);
        let zero = Rational::from_i64(0);
        let r = hill_solution_from_row(&q("1,1,1,1,1"), [one.clone(), zero.clone()], [zero, one]);
        assert_eq!(r, Err(FriezeError::NotAFrieze));
    }

    #[test]
    fn chebyshev_small_cases() {
        let f6 = chebyshev_frieze(6).unwrap();
        assert!((f6.first_row()[0] - 3f64.sqrt()).abs() < 1e-12);
        assert!((f6.row(2).unwrap()[3] - 2.0).abs() < 1e-12);
        let f4 = chebyshev_frieze(4).unwrap();
        assert_eq!(f4.width(), 1);
        assert!((f4.row(1).unwrap()[0] - 2f64.sqrt()).abs() < 1e-12);
        let f5 = chebyshev_frieze(5).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        for i in 0..5 {
            assert!((f5.row(1).unwrap()[i] - golden).abs() < 1e-12);
            assert!((f5.row(2).unwrap()[i] - golden).abs() < 1e-12);
        }
    }

    #[test]
    fn corrupted_entry_fails_at_a_diamond() {
        let mut f = build_from_first_row(&q("1,3,2,2,1,4,2")).unwrap();
        f.set_entry_unchecked(2, 3, Rational::from_i64(100));
        let report = validate(&f);
        assert!(!report.passed);
        let failure = report.failure.unwrap();
        assert_eq!(failure.kind, FailureKind::Diamond);
        // The first diamond touching (2,3) in scan order is at span 2, start 2.
        assert_eq!((failure.i, failure.d), (2, 2));
    }

    #[test]
    fn display_has_one_line_per_row() {
        let f = build_from_first_row(&q("1,2,2,1,3")).unwrap();
        let text = f.to_string();
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().nth(1).unwrap().split_whitespace().eq(["2", "2", "1", "3", "1"]));
    }
}
