use std::collections::BTreeSet;

use super::report::{Check, Report};
use super::verify::{lines_per_point, lines_through_point_bound, recompute};
use super::Catalog;
use crate::par::{self, Parallelism};

/// Global consistency checks across the table. Every check is one line of
/// the returned report.
pub fn check_corollaries(c: &Catalog, mode: Parallelism) -> Report {
    let rec = par::map(&c.entries, mode, recompute);
    let mut r = Report::new("corollaries");

    // (a) non-reductive automorphism groups
    let got: BTreeSet<&str> = c
        .entries
        .iter()
        .filter(|e| !e.aut0.is_reductive())
        .map(|e| e.id.as_str())
        .collect();
    let want: BTreeSet<&str> = c.non_reductive.iter().map(String::as_str).collect();
    let detail = if got == want {
        format!("{} entries", got.len())
    } else {
        format!(
            "missing {:?}, unexpected {:?}",
            want.difference(&got).collect::<Vec<_>>(),
            got.difference(&want).collect::<Vec<_>>()
        )
    };
    r.push(Check::test("non-reductive set", got == want, detail));

    // (b) degree one forces rho = 1
    let bad: Vec<&str> = c
        .entries
        .iter()
        .zip(&rec)
        .filter(|(e, x)| e.degree == 1 && x.rho != 1)
        .map(|(e, _)| e.id.as_str())
        .collect();
    r.push(Check::test(
        "degree one has rho 1",
        bad.is_empty(),
        offenders(&bad),
    ));

    // (c) at least rho lines; in degrees 8 and 9 there may be none
    let bad: Vec<&str> = c
        .entries
        .iter()
        .zip(&rec)
        .filter(|(e, x)| e.degree <= 7 && x.lines < x.rho)
        .map(|(e, _)| e.id.as_str())
        .collect();
    r.push(Check::test(
        "lines at least rho",
        bad.is_empty(),
        offenders(&bad),
    ));

    // Noether: rho + #(-2)-curves = 10 - d on blow-ups of the plane
    let bad: Vec<&str> = c
        .entries
        .iter()
        .zip(&rec)
        .filter(|(e, x)| {
            let lat = e.config.lattice();
            x.rho + x.ty.rank() != lat.rank()
                || (lat.is_blowup() && lat.rank() as i64 != 10 - e.degree)
        })
        .map(|(e, _)| e.id.as_str())
        .collect();
    r.push(Check::test(
        "rho plus roots",
        bad.is_empty(),
        offenders(&bad),
    ));

    // torsion order times degree is at most 9
    let bad: Vec<&str> = c
        .entries
        .iter()
        .zip(&rec)
        .filter(|(e, x)| x.torsion.iter().product::<i64>() * e.degree > 9)
        .map(|(e, _)| e.id.as_str())
        .collect();
    r.push(Check::test(
        "torsion bound",
        bad.is_empty(),
        offenders(&bad),
    ));

    // (d), (e) lines through singular points
    let mut over = Vec::new();
    let mut empty = Vec::new();
    for e in &c.entries {
        let counts = lines_per_point(e);
        if let Some(b) = lines_through_point_bound(e.degree) {
            if counts.iter().any(|(_, n)| *n > b) {
                over.push(e.id.as_str());
            }
        }
        if e.degree <= 7 && counts.iter().any(|(_, n)| *n == 0) {
            empty.push(e.id.as_str());
        }
    }
    r.push(Check::test(
        "lines per point bound",
        over.is_empty(),
        offenders(&over),
    ));
    r.push(Check::test(
        "line through each point",
        empty.is_empty(),
        offenders(&empty),
    ));

    // (f) rows of the index > 1 table
    let mut bad = Vec::new();
    for row in &c.thm36 {
        let Some(i) = c.entries.iter().position(|e| e.id == row.entry) else {
            bad.push(format!("{}: unknown", row.entry));
            continue;
        };
        let (e, x) = (&c.entries[i], &rec[i]);
        let got = (x.degree, x.rho, x.ty.clone(), x.index);
        if got != (row.degree, row.rho, row.ty.clone(), row.index) || e.degree != row.degree {
            bad.push(format!(
                "{}: got d={} rho={} {} ind={}",
                row.entry, got.0, got.1, got.2, got.3
            ));
        }
    }
    r.push(Check::test(
        "index table rows",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} rows", c.thm36.len())
        } else {
            bad.join("; ")
        },
    ));

    // (g) torsion-free class groups for the listed types, and only for them
    let mut bad = Vec::new();
    for (e, x) in c.entries.iter().zip(&rec) {
        let listed = c
            .cyclic_types
            .iter()
            .any(|(d, t)| *d == e.degree && *t == x.ty);
        let cyclic = x.rho == 1 && x.torsion.is_empty();
        if x.rho == 1 && listed != cyclic {
            bad.push(format!("{} (torsion {:?})", e.id, x.torsion));
        }
    }
    r.push(Check::test(
        "cyclic class groups",
        bad.is_empty(),
        bad.join("; "),
    ));

    // (h) rho = 1 forces ind = d in degrees 3..7
    let bad: Vec<&str> = c
        .entries
        .iter()
        .zip(&rec)
        .filter(|(e, x)| x.rho == 1 && (3..=7).contains(&e.degree) && x.index != e.degree)
        .map(|(e, _)| e.id.as_str())
        .collect();
    r.push(Check::test(
        "rho one index",
        bad.is_empty(),
        offenders(&bad),
    ));

    // (i) the blow-up column
    let mut bad = Vec::new();
    for e in &c.entries {
        for b in &e.blowup_of {
            let Some(t) = c.entry(b) else {
                bad.push(format!("{} -> {b}: unknown", e.id));
                continue;
            };
            if t.degree != e.degree + 1 || t.rho + 1 != e.rho {
                bad.push(format!("{} -> {b}", e.id));
            }
        }
    }
    r.push(Check::test(
        "blow-up column",
        bad.is_empty(),
        bad.join("; "),
    ));

    // automorphism groups of degree <= 7 are small solvable groups
    let bad: Vec<&str> = c
        .entries
        .iter()
        .filter(|e| e.degree <= 7)
        .filter(|e| {
            let g = &e.aut0;
            !g.is_solvable()
                || g.dimension() > 5
                || g.rank() > 2
                || (g.is_reductive() && !g.is_torus())
        })
        .map(|e| e.id.as_str())
        .collect();
    r.push(Check::test(
        "automorphism bounds",
        bad.is_empty(),
        offenders(&bad),
    ));

    r
}

fn offenders(ids: &[&str]) -> String {
    if ids.is_empty() {
        "all entries".to_string()
    } else {
        ids.join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{load_catalog, Status};

    #[test]
    fn shipped_table_satisfies_corollaries() {
        let c = load_catalog().unwrap();
        let r = check_corollaries(&c, Parallelism::Sequential);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn dropping_a_non_reductive_id_is_caught() {
        let mut c = load_catalog().unwrap();
        c.non_reductive.retain(|id| id != "d2-A7");
        let r = check_corollaries(&c, Parallelism::Sequential);
        assert_eq!(r.get("non-reductive set").unwrap().status, Status::Fail);
    }
}
