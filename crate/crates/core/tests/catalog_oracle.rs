use std::collections::{BTreeMap, BTreeSet};

use orbitcalc_core::oracle::{orbit_dim_via_centralizer, representative};
use orbitcalc_core::{
    enumerate_orbits, jm_flag_type, orbit_dimension, weighted_dynkin, Algebra, Family, NilpotentOrbit,
};

fn algebras(max_m: usize) -> Vec<Algebra> {
    [Family::A, Family::B, Family::C, Family::D]
        .into_iter()
        .flat_map(|f| Algebra::up_to(f, max_m))
        .collect()
}

/// Simple roots as integer vectors in the standard coordinates.
fn simple_roots(algebra: Algebra) -> Vec<Vec<i64>> {
    let n = algebra.rank();
    let e = |i: usize, len: usize| -> Vec<i64> { (0..len).map(|k| i64::from(k == i)).collect() };
    let sub = |a: Vec<i64>, b: Vec<i64>| -> Vec<i64> { a.iter().zip(&b).map(|(x, y)| x - y).collect() };
    let add = |a: Vec<i64>, b: Vec<i64>| -> Vec<i64> { a.iter().zip(&b).map(|(x, y)| x + y).collect() };
    match algebra.family() {
        Family::A => (0..n).map(|i| sub(e(i, n + 1), e(i + 1, n + 1))).collect(),
        family => {
            let mut roots: Vec<Vec<i64>> = (0..n - 1).map(|i| sub(e(i, n), e(i + 1, n))).collect();
            roots.push(match family {
                Family::B => e(n - 1, n),
                Family::C => e(n - 1, n).into_iter().map(|x| 2 * x).collect(),
                _ => add(e(n - 2, n), e(n - 1, n)),
            });
            roots
        }
    }
}

/// Positive roots in simple-root coordinates, generated by root strings
/// from the Cartan matrix.
fn positive_roots(algebra: Algebra) -> Vec<Vec<i64>> {
    let simple = simple_roots(algebra);
    let n = simple.len();
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| 2 * dot(&simple[i], &simple[j]) / dot(&simple[i], &simple[i])).collect())
        .collect();
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| i64::from(k == i)).collect()).collect();
    while !layer.is_empty() {
        roots.extend(layer.iter().cloned());
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if roots.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    roots.into_iter().collect()
}

fn grading_from_labels(algebra: Algebra, labels: &[u8]) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    *out.entry(0).or_insert(0) += algebra.rank();
    for root in positive_roots(algebra) {
        let value: i64 = root.iter().zip(labels).map(|(c, &l)| c * i64::from(l)).sum();
        *out.entry(value).or_insert(0) += 1;
        *out.entry(-value).or_insert(0) += 1;
    }
    out
}

#[test]
fn root_counts() {
    for algebra in algebras(12) {
        let n = algebra.rank();
        let expected = match algebra.family() {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
        };
        assert_eq!(positive_roots(algebra).len(), expected, "{algebra}");
        assert_eq!(2 * expected + n, algebra.dim());
    }
}

#[test]
fn dimension_matches_centralizer_oracle() {
    for algebra in algebras(10) {
        for orbit in enumerate_orbits(algebra) {
            let oracle = orbit_dim_via_centralizer(algebra, orbit.partition()).unwrap();
            assert_eq!(orbit_dimension(&orbit), oracle, "{orbit}");
        }
    }
}

#[test]
fn representatives_have_a_neutral_element() {
    for algebra in algebras(10) {
        for orbit in enumerate_orbits(algebra) {
            let rep = representative(algebra, orbit.partition()).unwrap();
            assert!(rep.h_is_neutral(), "{orbit}");
            assert_eq!(rep.algebra_dim(), algebra.dim());
        }
    }
}

#[test]
fn dynkin_labels_match_the_matrix_grading() {
    for algebra in algebras(10) {
        for orbit in enumerate_orbits(algebra) {
            let labels = weighted_dynkin(&orbit).unwrap().labels;
            let expected = representative(algebra, orbit.partition()).unwrap().ad_h_grading();
            assert_eq!(grading_from_labels(algebra, &labels), expected, "{orbit}");
        }
    }
}

#[test]
fn dynkin_labels_are_at_most_two() {
    for algebra in algebras(12) {
        for orbit in enumerate_orbits(algebra) {
            let wd = weighted_dynkin(&orbit).unwrap();
            assert_eq!(wd.labels.len(), algebra.rank(), "{orbit}");
            assert!(wd.labels.iter().all(|&l| l <= 2), "{orbit}");
        }
    }
}

#[test]
fn flag_types_are_palindromic_and_sum_to_m() {
    for algebra in algebras(12) {
        for orbit in enumerate_orbits(algebra) {
            let flag = jm_flag_type(&orbit);
            assert_eq!(flag.total(), algebra.natural_dim(), "{orbit}");
            if algebra.family() != Family::A {
                assert!(flag.is_palindromic(), "{orbit}");
            }
        }
    }
}

#[test]
fn dimension_is_strictly_monotone() {
    for algebra in algebras(12) {
        let orbits: Vec<NilpotentOrbit> = enumerate_orbits(algebra);
        for a in &orbits {
            for b in &orbits {
                if a.partition() != b.partition() && a.partition().dominates(b.partition()).unwrap() {
                    assert!(orbit_dimension(a) > orbit_dimension(b), "{a} > {b}");
                }
            }
        }
    }
}

#[test]
fn orbit_counts() {
    let count = |s: &str| enumerate_orbits(s.parse().unwrap()).len();
    assert_eq!(count("C2"), 4);
    assert_eq!(count("C3"), 8);
    assert_eq!(count("B3"), 7);
    assert_eq!(count("D4"), 12);
    assert_eq!(count("A3"), 5);
}
