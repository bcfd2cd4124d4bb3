use frieze_core::geometry::{problem2_experiment, Problem2Config};
use frieze_core::scalar::Rational;
use frieze_core::search::{cc_friezes, scan_cc, scan_random, SearchError, ViolationCert};
use num_traits::{Signed, Zero};

/// Row `k` of the frieze with first row `a`, by the three-term recurrence
/// along each diagonal.
fn row_by_recurrence(a: &[Rational], k: usize) -> Vec<Rational> {
    let n = a.len();
    (0..n)
        .map(|i| {
            let (mut prev, mut cur) = (Rational::zero(), Rational::from_integer(1.into()));
            for j in 1..=k {
                let next = a[(i + j) % n].clone() * cur.clone() - prev;
                prev = cur;
                cur = next;
            }
            cur
        })
        .collect()
}

fn recount(cert: &ViolationCert) -> (Vec<Rational>, usize) {
    let fa = row_by_recurrence(&cert.first_row_a, cert.k);
    let fb = row_by_recurrence(&cert.first_row_b, cert.k);
    let diff: Vec<Rational> = fa.iter().zip(&fb).map(|(x, y)| x - y).collect();
    let signs: Vec<bool> = diff.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    let count = (0..signs.len()).filter(|&i| signs[i] != signs[(i + 1) % signs.len()]).count();
    (diff, count)
}

#[test]
fn width_four_pair_count() {
    let r = scan_cc(4, &[1, 2], None).unwrap();
    assert_eq!(r.pairs_checked, 861);
    assert!(r.min_count(1).unwrap() >= 4 && r.min_count(2).unwrap() >= 4);
}

#[test]
fn cc_row_three_certificates_reverify_independently() {
    let r = scan_cc(6, &[3], None).unwrap();
    assert!(!r.violations.is_empty());
    for cert in &r.violations {
        assert!(cert.verify().unwrap());
        let (diff, count) = recount(cert);
        assert_eq!(diff, cert.difference);
        assert_eq!(count, cert.count);
        assert!(count < 4);
        let zeros = diff.iter().filter(|x| x.is_zero()).count();
        assert_eq!(zeros, cert.zero_entries);
    }
    // At this width every certificate owes its low count to vanishing
    // entries; none violates when zeros may take either sign.
    assert_eq!(r.strict_violations, 0);
    assert!(r.violations.iter().all(|c| c.zero_entries > 0));
}

#[test]
fn scan_report_is_schedule_independent() {
    let a = serde_json::to_string(&scan_cc(5, &[1, 2, 3], None).unwrap()).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| serde_json::to_string(&scan_cc(5, &[1, 2, 3], None).unwrap()).unwrap());
    assert_eq!(a, b);
    let c = serde_json::to_string(&scan_random(11, &[3, 4], 300, 9).unwrap()).unwrap();
    let d = pool.install(|| serde_json::to_string(&scan_random(11, &[3, 4], 300, 9).unwrap()).unwrap());
    assert_eq!(c, d);
}

#[test]
fn certificates_round_trip_through_json() {
    let r = scan_cc(6, &[3], None).unwrap();
    let text = serde_json::to_string(&r.violations[0]).unwrap();
    let back: ViolationCert = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r.violations[0]);
    assert!(back.verify().unwrap());
}

#[test]
fn cap_and_enumeration_limits() {
    assert_eq!(cc_friezes(3).unwrap().len(), 14);
    match scan_cc(5, &[1], Some(1000)) {
        Err(SearchError::CapExceeded(r)) => assert_eq!(r.pairs_checked, 1000),
        other => panic!("{other:?}"),
    }
}

#[test]
fn problem2_report_is_reproducible() {
    let config = Problem2Config {
        n_values: vec![7, 8],
        k_values: vec![1, 2, 3],
        pairs_per_n: 20,
        seed: 4,
    };
    let a = problem2_experiment(&config).unwrap();
    let b = problem2_experiment(&config).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.records.len(), 2 * 20 * 3);
    let k1 = a.summary.iter().find(|s| s.k == 1).unwrap();
    assert!(k1.min_count.unwrap() >= 4);
}
