use std::collections::BTreeSet;

use orbitcalc_core::{
    available_peels, enumerate_orbits, induce, induce_orbit, induced_orbit_set, is_rigid, orbit_dimension,
    peel, peel_another_type, Algebra, Family, NilpotentOrbit,
};

fn bcd(max_m: usize) -> Vec<Algebra> {
    [Family::B, Family::C, Family::D]
        .into_iter()
        .flat_map(|f| Algebra::up_to(f, max_m))
        .collect()
}

#[test]
fn peel_then_induce_round_trips() {
    for algebra in bcd(14) {
        let sign = algebra.sign().unwrap();
        for orbit in enumerate_orbits(algebra) {
            for choice in available_peels(&orbit).unwrap() {
                let step = peel(&orbit, choice.p).unwrap();
                assert_eq!(step.r, choice.r);
                assert!(step.source.partition().is_admissible(sign), "{orbit} p={}", choice.p);
                let back = induce(algebra, step.r, step.source.partition()).unwrap();
                assert_eq!(&back, orbit.partition(), "{orbit} p={}", choice.p);
                assert_eq!(induce_orbit(algebra, step.r, &step.source).unwrap().partition(), orbit.partition());
            }
        }
    }
}

#[test]
fn peels_preserve_codimension() {
    for algebra in bcd(14) {
        for orbit in enumerate_orbits(algebra) {
            for choice in available_peels(&orbit).unwrap() {
                let step = peel(&orbit, choice.p).unwrap();
                let levi = step.levi();
                let inner = step.source.algebra();
                assert_eq!(levi.dim(), step.r * step.r + inner.dim());
                assert_eq!(
                    algebra.dim() - orbit_dimension(&orbit),
                    levi.dim() - orbit_dimension(&step.source),
                    "{orbit} p={}",
                    choice.p
                );
            }
        }
    }
}

#[test]
fn paired_peels_induce_back() {
    let mut seen = 0;
    for algebra in bcd(12) {
        for orbit in enumerate_orbits(algebra) {
            for p in 1..=orbit.partition().exponents().len() {
                let Ok(step) = peel_another_type(&orbit, p) else { continue };
                seen += 1;
                assert!(!step.birational);
                let back = induce(algebra, step.r, step.source.partition()).unwrap();
                assert_eq!(&back, orbit.partition(), "{orbit} p={p}");
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn rigidity_matches_the_induced_set() {
    for algebra in bcd(12) {
        let induced: BTreeSet<NilpotentOrbit> = induced_orbit_set(algebra).unwrap().into_iter().collect();
        for orbit in enumerate_orbits(algebra) {
            assert_eq!(is_rigid(&orbit), !induced.contains(&orbit), "{orbit}");
        }
    }
}

#[test]
fn every_non_full_orbit_is_induced() {
    for algebra in bcd(12) {
        let induced = induced_orbit_set(algebra).unwrap();
        for orbit in enumerate_orbits(algebra) {
            if !orbit.partition().has_full_members() {
                assert!(induced.contains(&orbit), "{orbit}");
            }
        }
    }
}
