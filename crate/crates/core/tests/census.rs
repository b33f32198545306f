//! Orbit counts below degree 5, where the table is only checked for
//! consistency: every row lands in a distinct orbit.

use dpzoo::catalog::load_catalog;
use dpzoo::lattice::blowup_of_p2;
use dpzoo::par::Parallelism;
use dpzoo::surface::{enumerate_configs, weyl_equivalent, Fingerprint};

fn check_degree(degree: i64, orbits: usize) {
    let lat = blowup_of_p2((9 - degree) as usize).unwrap();
    let configs = enumerate_configs(&lat, lat.rank() - 1, Parallelism::Parallel);
    assert_eq!(configs.len(), orbits);
    let cat = load_catalog().unwrap();
    let mut hit = vec![false; configs.len()];
    for e in cat.entries.iter().filter(|e| e.degree == degree) {
        let fp = Fingerprint::of(&e.config);
        let i = configs
            .iter()
            .position(|c| Fingerprint::of(c) == fp && weyl_equivalent(c, &e.config))
            .unwrap_or_else(|| panic!("{} matches no orbit", e.id));
        assert!(!hit[i], "{} shares an orbit", e.id);
        hit[i] = true;
    }
}

#[test]
fn quartic_orbits() {
    // 15 singular types and the smooth surface
    check_degree(4, 16);
}

#[test]
fn cubic_orbits() {
    // 20 singular types and the smooth surface
    check_degree(3, 21);
}
