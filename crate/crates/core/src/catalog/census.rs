use serde::Serialize;

use super::Catalog;
use crate::error::{invalid, Result};
use crate::lattice::blowup_of_p2;
use crate::par::Parallelism;
use crate::rootsys::AdeType;
use crate::surface::{enumerate_configs, weyl_equivalent, Fingerprint, SurfaceConfig};

#[derive(Clone, Debug, Serialize)]
pub struct OrbitMatch {
    #[serde(rename = "type")]
    pub ty: AdeType,
    pub lines: usize,
    pub rho: usize,
    pub index: i64,
    /// The table row in this orbit, if any.
    pub entry: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub degree: i64,
    pub orbits: Vec<OrbitMatch>,
    /// Rows of this degree that match no orbit.
    pub unmatched_entries: Vec<String>,
    /// Orbits without a row that should have one.
    pub missing: Vec<String>,
    pub passed: bool,
}

/// Smooth surfaces of degree at most 5 have finite automorphism groups, so
/// their orbit has no row.
fn may_be_absent(cfg: &SurfaceConfig) -> bool {
    cfg.singularity_type().is_smooth() && cfg.degree() <= 5
}

/// Enumerate all configurations on the blow-up of the plane in `9 - degree`
/// points up to the Weyl group and match each orbit with the table.
pub fn enumerate_and_match(c: &Catalog, degree: i64, mode: Parallelism) -> Result<CensusReport> {
    if !(5..=7).contains(&degree) {
        return invalid(format!("census runs in degrees 5 to 7, not {degree}"));
    }
    let lat = blowup_of_p2((9 - degree) as usize)?;
    let configs = enumerate_configs(&lat, lat.rank() - 1, mode);
    let rows: Vec<_> = c
        .entries
        .iter()
        .filter(|e| e.degree == degree && e.config.lattice().kind() == lat.kind())
        .map(|e| (e, Fingerprint::of(&e.config)))
        .collect();

    let mut used = vec![false; rows.len()];
    let mut orbits = Vec::new();
    let mut missing = Vec::new();
    let mut passed = true;
    for cfg in &configs {
        let fp = Fingerprint::of(cfg);
        let hits: Vec<usize> = (0..rows.len())
            .filter(|&i| rows[i].1 == fp && weyl_equivalent(&rows[i].0.config, cfg))
            .collect();
        if hits.len() > 1 {
            passed = false;
        }
        for &i in &hits {
            used[i] = true;
        }
        let entry = hits.first().map(|&i| rows[i].0.id.clone());
        if entry.is_none() && !may_be_absent(cfg) {
            passed = false;
            missing.push(format!("{} with {} lines", fp.ade, fp.lines));
        }
        orbits.push(OrbitMatch {
            ty: cfg.singularity_type(),
            lines: cfg.num_lines(),
            rho: cfg.picard_rank(),
            index: fp.index,
            entry,
        });
    }
    let unmatched_entries: Vec<String> = rows
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|((e, _), _)| e.id.clone())
        .collect();
    passed &= unmatched_entries.is_empty();
    Ok(CensusReport {
        degree,
        orbits,
        unmatched_entries,
        missing,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_catalog;

    #[test]
    fn degree_seven_and_six() {
        let c = load_catalog().unwrap();
        let r = enumerate_and_match(&c, 7, Parallelism::Sequential).unwrap();
        assert!(r.passed);
        assert_eq!(r.orbits.len(), 2);
        let r = enumerate_and_match(&c, 6, Parallelism::Sequential).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.orbits.len(), 6);
    }

    #[test]
    fn out_of_range_degree_is_rejected() {
        let c = load_catalog().unwrap();
        assert!(enumerate_and_match(&c, 4, Parallelism::Sequential).is_err());
    }
}
