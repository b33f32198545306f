//! Configurations of simple roots up to the Weyl group.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::SurfaceConfig;
use crate::lattice::{DivisorClass, PicLattice};
use crate::par::{self, Parallelism};
use crate::rootsys::{
    dynkin_components, enumerate_roots, reflect_unchecked, reflection_closure, weyl_generators,
};

/// Weyl-invariant summary used to bucket configurations before the exact
/// orbit test.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub ade: String,
    pub lines: usize,
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub index: i64,
    pub graph: String,
}

impl Fingerprint {
    pub fn of(cfg: &SurfaceConfig) -> Self {
        let cl = cfg.class_group();
        Fingerprint {
            ade: cfg.singularity_type().to_string(),
            lines: cfg.num_lines(),
            free_rank: cl.free_rank(),
            torsion: cl.torsion().to_vec(),
            index: cfg.fano_weil_index(),
            graph: cfg.dual_graph().certificate(),
        }
    }
}

/// The root subsystem spanned by the simple roots, sorted. Two
/// configurations are Weyl-equivalent iff their subsystems are: simple
/// systems of one subsystem differ by its own Weyl group.
pub fn orbit_key(cfg: &SurfaceConfig) -> Vec<DivisorClass> {
    reflection_closure(cfg.lattice(), cfg.simple_roots(), cfg.simple_roots())
        .expect("simple roots are roots")
}

fn orbit(lat: &PicLattice, key: &[DivisorClass]) -> HashSet<Vec<DivisorClass>> {
    let gens = weyl_generators(lat);
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(key.to_vec());
    queue.push_back(key.to_vec());
    while let Some(k) = queue.pop_front() {
        for g in &gens {
            let mut img: Vec<_> = k.iter().map(|c| reflect_unchecked(lat, g, c)).collect();
            img.sort();
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    seen
}

/// Exact Weyl-equivalence test by orbit search. The orbit can be large on
/// lattices of rank 7 and above.
pub fn weyl_equivalent(a: &SurfaceConfig, b: &SurfaceConfig) -> bool {
    if a.lattice().kind() != b.lattice().kind() || a.simple_roots().len() != b.simple_roots().len()
    {
        return false;
    }
    let kb = orbit_key(b);
    orbit_key(a) == kb || orbit(a.lattice(), &orbit_key(a)).contains(&kb)
}

/// Extend `chosen` by positive roots of index > `from`.
fn extend(
    lat: &PicLattice,
    pos: &[DivisorClass],
    pairing: &[Vec<i64>],
    chosen: &mut Vec<usize>,
    from: usize,
    max_roots: usize,
    out: &mut Vec<Vec<usize>>,
) {
    out.push(chosen.clone());
    if chosen.len() == max_roots {
        return;
    }
    for j in from..pos.len() {
        if chosen.iter().any(|&i| !matches!(pairing[i][j], 0 | 1)) {
            continue;
        }
        chosen.push(j);
        let classes: Vec<DivisorClass> = chosen.iter().map(|&i| pos[i].clone()).collect();
        // induced subgraphs of Dynkin diagrams are Dynkin, so prune here
        if dynkin_components(lat, &classes).is_ok() {
            extend(lat, pos, pairing, chosen, j + 1, max_roots, out);
        }
        chosen.pop();
    }
}

/// One representative per Weyl orbit of configurations with at most
/// `max_roots` simple roots, sorted by (number of roots, type, lines).
///
/// Every root subsystem has a simple system inside the positive roots, so
/// searching subsets of positive roots reaches every orbit.
pub fn enumerate_configs(
    lat: &PicLattice,
    max_roots: usize,
    mode: Parallelism,
) -> Vec<SurfaceConfig> {
    let max_roots = max_roots.min(lat.rank() - 1);
    let pos = enumerate_roots(lat).positive();
    let pairing: Vec<Vec<i64>> = pos
        .iter()
        .map(|a| pos.iter().map(|b| lat.dot(a, b)).collect())
        .collect();

    let firsts: Vec<usize> = (0..pos.len()).collect();
    let mut subsets = vec![Vec::new()];
    if max_roots > 0 {
        subsets.extend(par::flat_map(&firsts, mode, |&i| {
            let mut out = Vec::new();
            extend(
                lat,
                &pos,
                &pairing,
                &mut vec![i],
                i + 1,
                max_roots,
                &mut out,
            );
            out
        }));
    }

    let configs = par::map(&subsets, mode, |s| {
        let cfg = SurfaceConfig::new(lat.clone(), s.iter().map(|&i| pos[i].clone()).collect())
            .expect("search only yields valid configurations");
        (orbit_key(&cfg), cfg)
    });
    let mut by_key: HashMap<Vec<DivisorClass>, SurfaceConfig> = HashMap::new();
    let mut key_order = Vec::new();
    for (k, cfg) in configs {
        if let std::collections::hash_map::Entry::Vacant(slot) = by_key.entry(k) {
            key_order.push(slot.key().clone());
            slot.insert(cfg);
        }
    }

    let fps = par::map(&key_order, mode, |k| Fingerprint::of(&by_key[k]));
    let mut buckets: BTreeMap<Fingerprint, Vec<Vec<DivisorClass>>> = BTreeMap::new();
    for (k, fp) in key_order.into_iter().zip(fps) {
        buckets.entry(fp).or_default().push(k);
    }

    let reps_per_bucket = par::map(&buckets.into_values().collect::<Vec<_>>(), mode, |keys| {
        if keys.len() == 1 {
            return vec![keys[0].clone()];
        }
        let mut reps = Vec::new();
        let mut remaining: Vec<&Vec<DivisorClass>> = keys.iter().collect();
        remaining.sort();
        while let Some(first) = remaining.first().copied() {
            let o = orbit(lat, first);
            reps.push(first.clone());
            remaining.retain(|k| !o.contains(*k));
        }
        reps
    });

    let mut reps: Vec<SurfaceConfig> = reps_per_bucket
        .into_iter()
        .flatten()
        .map(|k| by_key.remove(&k).expect("key present"))
        .collect();
    reps.sort_by(|a, b| {
        (
            a.simple_roots().len(),
            a.singularity_type(),
            a.num_lines(),
            a.simple_roots(),
        )
            .cmp(&(
                b.simple_roots().len(),
                b.singularity_type(),
                b.num_lines(),
                b.simple_roots(),
            ))
    });
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{blowup_of_p2, hirzebruch};

    fn census(d: usize) -> Vec<(String, usize)> {
        let lat = blowup_of_p2(9 - d).unwrap();
        enumerate_configs(&lat, 8, Parallelism::Sequential)
            .iter()
            .map(|c| (c.singularity_type().to_string(), c.num_lines()))
            .collect()
    }

    fn owned(v: &[(&str, usize)]) -> Vec<(String, usize)> {
        v.iter().map(|(s, n)| (s.to_string(), *n)).collect()
    }

    #[test]
    fn degree_seven_and_eight() {
        assert_eq!(census(7), owned(&[("smooth", 3), ("A1", 2)]));
        assert_eq!(census(8), owned(&[("smooth", 1)]));
        let f2 = enumerate_configs(&hirzebruch(2).unwrap(), 1, Parallelism::Sequential);
        assert_eq!(f2.len(), 2);
    }

    #[test]
    fn degree_six() {
        assert_eq!(
            census(6),
            owned(&[
                ("smooth", 6),
                ("A1", 3),
                ("A1", 4),
                ("A2", 2),
                ("2A1", 2),
                ("A2+A1", 1),
            ])
        );
    }

    #[test]
    fn degree_five() {
        let c = census(5);
        assert_eq!(c.len(), 7);
        assert_eq!(
            c,
            owned(&[
                ("smooth", 10),
                ("A1", 7),
                ("A2", 4),
                ("2A1", 5),
                ("A3", 2),
                ("A2+A1", 3),
                ("A4", 1),
            ])
        );
    }

    #[test]
    fn modes_agree_degree_four() {
        let lat = blowup_of_p2(5).unwrap();
        let a = enumerate_configs(&lat, 8, Parallelism::Sequential);
        let b = enumerate_configs(&lat, 8, Parallelism::Parallel);
        let key = |v: &[SurfaceConfig]| -> Vec<_> {
            v.iter().map(|c| c.simple_roots().to_vec()).collect()
        };
        assert_eq!(key(&a), key(&b));
    }

    #[test]
    fn max_roots_caps() {
        let lat = blowup_of_p2(4).unwrap();
        let c = enumerate_configs(&lat, 1, Parallelism::Sequential);
        assert_eq!(c.len(), 2);
    }
}
