use orbitcalc_core::oracle::collapse_brute_force;
use orbitcalc_core::{Partition, Sign};
use proptest::prelude::*;

fn arb_partition(max_m: usize) -> impl Strategy<Value = Partition> {
    (1..=max_m)
        .prop_flat_map(|m| {
            let all = Partition::all(m);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
}

fn arb_sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Orthogonal), Just(Sign::Symplectic)]
}

proptest! {
    #[test]
    fn transpose_is_an_involution(p in arb_partition(20)) {
        prop_assert_eq!(p.transpose().transpose(), p.clone());
        prop_assert_eq!(p.transpose().size(), p.size());
    }

    #[test]
    fn transpose_reverses_dominance(a in arb_partition(12), b in arb_partition(12)) {
        if a.size() == b.size() {
            prop_assert_eq!(a.dominates(&b).unwrap(), b.transpose().dominates(&a.transpose()).unwrap());
        }
    }

    #[test]
    fn collapse_is_the_dominated_maximum(p in arb_partition(14), sign in arb_sign()) {
        match p.collapse(sign) {
            Ok(c) => {
                prop_assert!(c.is_admissible(sign));
                prop_assert!(p.dominates(&c).unwrap());
                prop_assert_eq!(Some(c), collapse_brute_force(&p, sign));
            }
            Err(_) => {
                prop_assert!(sign == Sign::Symplectic && p.size() % 2 == 1);
                prop_assert_eq!(collapse_brute_force(&p, sign), None);
            }
        }
    }

    #[test]
    fn parse_display_round_trip(p in arb_partition(20)) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Partition>().unwrap(), p.clone());
        let flat = p.parts().iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        prop_assert_eq!(flat.parse::<Partition>().unwrap(), p);
    }

    #[test]
    fn very_even_implies_orthogonal_and_not_full(p in arb_partition(20)) {
        if p.is_very_even() {
            prop_assert!(p.is_admissible(Sign::Orthogonal));
            prop_assert!(!p.has_full_members());
        }
    }
}

#[test]
fn dominance_is_a_partial_order() {
    for m in 1..=12 {
        let all = Partition::all(m);
        for a in &all {
            assert!(a.dominates(a).unwrap());
            for b in &all {
                let ab = a.dominates(b).unwrap();
                let ba = b.dominates(a).unwrap();
                if ab && ba {
                    assert_eq!(a, b);
                }
                if !ab {
                    continue;
                }
                for c in &all {
                    if b.dominates(c).unwrap() {
                        assert!(a.dominates(c).unwrap(), "{a} >= {b} >= {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn admissible_enumeration_matches_the_filter() {
    for m in 0..=16 {
        let all = Partition::all(m);
        for sign in [Sign::Orthogonal, Sign::Symplectic] {
            let filtered: Vec<Partition> = all.iter().filter(|p| p.is_admissible(sign)).cloned().collect();
            assert_eq!(Partition::admissible(m, sign), filtered, "m = {m}, sign {sign}");
        }
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (0..=12).map(|m| Partition::all(m).len()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
}

#[test]
fn collapse_matches_brute_force_exhaustively() {
    for m in 1..=16 {
        for p in Partition::all(m) {
            for sign in [Sign::Orthogonal, Sign::Symplectic] {
                assert_eq!(p.collapse(sign).ok(), collapse_brute_force(&p, sign), "{p} under {sign}");
            }
        }
    }
}
