use serde::Serialize;

use super::report::{Check, Report, Status};
use super::{Catalog, LineDatum, TableEntry};
use crate::lattice::DivisorClass;
use crate::par::{self, Parallelism};
use crate::rootsys::{AdeKind, AdeType};
use crate::surface::{graphs_isomorphic, is_minus_one_over_n, DualGraph, NodeColor};
use crate::wpoly::{check_invariance, is_quasi_homogeneous, ParamDomain, WPoly};

/// Invariants recomputed from the configuration alone.
#[derive(Clone, Debug, Serialize)]
pub struct Recomputed {
    #[serde(rename = "type")]
    pub ty: AdeType,
    pub degree: i64,
    pub rho: usize,
    pub lines: usize,
    pub index: i64,
    pub weakly_minimal: bool,
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub recomputed: Recomputed,
    #[serde(flatten)]
    pub report: Report,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub entries: usize,
    pub passed: usize,
    pub failed: usize,
    /// Entries that pass only through a recorded erratum.
    pub errata: usize,
}

impl Summary {
    pub fn of(reports: &[EntryReport]) -> Summary {
        let mut s = Summary {
            entries: reports.len(),
            ..Summary::default()
        };
        for r in reports {
            if !r.passed() {
                s.failed += 1;
            } else {
                s.passed += 1;
                if r.report.checks.iter().any(|c| c.status == Status::Erratum) {
                    s.errata += 1;
                }
            }
        }
        s
    }
}

pub fn recompute(e: &TableEntry) -> Recomputed {
    let cfg = &e.config;
    Recomputed {
        ty: cfg.singularity_type(),
        degree: cfg.degree(),
        rho: cfg.picard_rank(),
        lines: cfg.num_lines(),
        index: cfg.fano_weil_index(),
        weakly_minimal: cfg.is_weakly_minimal(),
        torsion: cfg.class_group().torsion().to_vec(),
    }
}

/// Recompute every invariant of a row and compare with the stored values;
/// check equations, lines and group actions symbolically.
pub fn verify_entry(e: &TableEntry) -> EntryReport {
    let got = recompute(e);
    let mut r = Report::new(&e.id);
    r.push(Check::compare("degree", e.degree, got.degree));
    r.push(Check::compare("type", e.ty.clone(), got.ty.clone()));
    r.push(Check::compare("rho", e.rho, got.rho));
    r.push(Check::compare("lines", e.num_lines, got.lines));
    r.push(Check::compare("index", e.index, got.index));
    r.push(Check::compare(
        "weakly_minimal",
        e.weakly_minimal,
        got.weakly_minimal,
    ));
    r.push(graph_check(e));
    r.push(census_check(e));
    r.checks.extend(verify_polynomials(e).checks);
    r.push(pushforward_check(e));
    singular_point_checks(e, &mut r);
    EntryReport {
        id: e.id.clone(),
        recomputed: got,
        report: r,
    }
}

/// The symbolic checks alone: equations, lines and group actions.
pub fn verify_polynomials(e: &TableEntry) -> Report {
    let mut r = Report::new(&e.id);
    equation_checks(e, &mut r);
    r.push(line_check(e));
    r.push(line_count_check(e));
    r.push(action_check(e));
    r
}

/// Verify every row, in catalog order.
pub fn verify_all(catalog: &Catalog, mode: Parallelism) -> Vec<EntryReport> {
    par::map(&catalog.entries, mode, verify_entry)
}

fn graph_check(e: &TableEntry) -> Check {
    let g = e.config.dual_graph();
    if graphs_isomorphic(&g, &e.expected_graph) {
        return Check::pass("graph", "isomorphic to the recorded graph");
    }
    match &e.erratum {
        Some(err) if graphs_isomorphic(&g, &err.graph) => Check::new(
            "graph",
            Status::Erratum,
            format!(
                "recorded drawing differs; corrected graph holds ({})",
                err.reason
            ),
        ),
        _ => Check::new(
            "graph",
            Status::Fail,
            "not isomorphic to the recorded graph",
        ),
    }
}

fn census(g: &DualGraph, e: &TableEntry) -> Result<String, String> {
    let (c, b) = (g.count(NodeColor::Circle), g.count(NodeColor::Bullet));
    let detail = format!("{c} circles, {b} bullets");
    if c == e.ty.rank() && b == e.num_lines {
        Ok(detail)
    } else {
        Err(format!(
            "{detail}; expected {} and {}",
            e.ty.rank(),
            e.num_lines
        ))
    }
}

/// Circles count the exceptional curves and bullets the lines.
fn census_check(e: &TableEntry) -> Check {
    match census(&e.expected_graph, e) {
        Ok(d) => Check::pass("graph census", d),
        Err(d) => match e.erratum.as_ref().map(|err| census(&err.graph, e)) {
            Some(Ok(fixed)) => Check::new(
                "graph census",
                Status::Erratum,
                format!("recorded: {d}; corrected: {fixed}"),
            ),
            _ => Check::new("graph census", Status::Fail, d),
        },
    }
}

fn equation_checks(e: &TableEntry, r: &mut Report) {
    let Some(s) = &e.surface else {
        for name in [
            "equation variables",
            "quasi-homogeneous",
            "anticanonical degree",
            "ambient index",
        ] {
            r.push(Check::skip(name, "no equation recorded"));
        }
        return;
    };
    let known: Vec<&String> = s.ambient.grading.variables().chain(&e.moduli).collect();
    let stray: Vec<String> = s
        .equations
        .iter()
        .flat_map(WPoly::variables)
        .filter(|v| !known.contains(&v))
        .collect();
    r.push(Check::test(
        "equation variables",
        stray.is_empty(),
        if stray.is_empty() {
            format!("in {}", s.ambient.name)
        } else {
            format!("unknown variables {stray:?}")
        },
    ));
    let bad: Vec<usize> = s
        .equations
        .iter()
        .zip(&s.degrees)
        .enumerate()
        .filter(|(_, (f, d))| !is_quasi_homogeneous(f, &s.ambient.grading, d))
        .map(|(i, _)| i)
        .collect();
    r.push(Check::test(
        "quasi-homogeneous",
        bad.is_empty(),
        format!(
            "degrees {:?}{}",
            s.degrees,
            if bad.is_empty() {
                String::new()
            } else {
                format!("; fails for {bad:?}")
            }
        ),
    ));
    match s.ambient.anticanonical_degree(&s.degrees) {
        Some(k2) => r.push(Check::compare("anticanonical degree", e.degree.into(), k2)),
        None => r.push(Check::new(
            "anticanonical degree",
            Status::Fail,
            "equations do not cut out a surface",
        )),
    }
    // -K is the restriction of a multiple of O(1), so that multiple divides
    // the index
    let k = s
        .ambient
        .anticanonical(&s.degrees)
        .into_iter()
        .fold(0, num_integer::gcd);
    r.push(Check::test(
        "ambient index",
        k != 0 && e.index % k == 0,
        format!("-K = O({k}) restricted, index {}", e.index),
    ));
}

fn on_line(f: &WPoly, l: &LineDatum) -> crate::Result<bool> {
    let mut g = f.substitute(&l.param);
    for (v, val) in &l.relations {
        g = g.reduce_square(v, val)?;
    }
    Ok(g.is_zero())
}

fn line_check(e: &TableEntry) -> Check {
    let (Some(ld), Some(s)) = (&e.line_data, &e.surface) else {
        return Check::skip("lines on surface", "no line data recorded");
    };
    for (i, l) in ld.lines.iter().enumerate() {
        if l.param.values().all(|p| p.variables().is_empty()) {
            return Check::new(
                "lines on surface",
                Status::Fail,
                format!("line {} is a point", i + 1),
            );
        }
        for f in s.equations.iter().chain(&l.equations) {
            match on_line(f, l) {
                Ok(true) => {}
                Ok(false) => {
                    return Check::new(
                        "lines on surface",
                        Status::Fail,
                        format!("line {}: `{f}` does not vanish", i + 1),
                    )
                }
                Err(err) => {
                    return Check::new(
                        "lines on surface",
                        Status::Fail,
                        format!("line {}: {err}", i + 1),
                    )
                }
            }
        }
    }
    Check::pass(
        "lines on surface",
        format!("{} parametrized lines", ld.lines.len()),
    )
}

fn line_count_check(e: &TableEntry) -> Check {
    let Some(ld) = &e.line_data else {
        return Check::skip("line count", "no line data recorded");
    };
    let n = ld.lines.len();
    if ld.complete {
        Check::compare("line count", e.num_lines, n)
    } else if n <= e.num_lines {
        Check::skip(
            "line count",
            format!("{n} of {} lines recorded", e.num_lines),
        )
    } else {
        Check::new(
            "line count",
            Status::Fail,
            format!("{n} lines recorded, {} expected", e.num_lines),
        )
    }
}

fn action_check(e: &TableEntry) -> Check {
    if e.actions.is_empty() {
        return Check::skip("actions", "no action recorded");
    }
    let Some(s) = &e.surface else {
        return Check::new("actions", Status::Fail, "actions without equations");
    };
    for a in &e.actions {
        let dim = a
            .family
            .parameters
            .iter()
            .filter(|p| p.domain != ParamDomain::Modulus)
            .count();
        if dim > e.aut0.dimension() as usize {
            return Check::new(
                "actions",
                Status::Fail,
                format!(
                    "`{}` has {dim} parameters but Aut0 = {} has dimension {}",
                    a.name,
                    e.aut0,
                    e.aut0.dimension()
                ),
            );
        }
        for f in &s.equations {
            match check_invariance(f, &a.family) {
                Ok(true) => {}
                Ok(false) => {
                    return Check::new(
                        "actions",
                        Status::Fail,
                        format!("`{}` does not preserve `{f}`", a.name),
                    )
                }
                Err(err) => {
                    return Check::new("actions", Status::Fail, format!("`{}`: {err}", a.name))
                }
            }
        }
    }
    let names: Vec<&str> = e.actions.iter().map(|a| a.name.as_str()).collect();
    Check::pass("actions", format!("invariant: {}", names.join(", ")))
}

/// Ends of the A-type chains, with the chain length.
fn chain_ends(e: &TableEntry) -> Vec<(DivisorClass, usize)> {
    let lat = e.config.lattice();
    let mut ends = Vec::new();
    for (comp, roots) in e.config.components() {
        if comp.kind != AdeKind::A {
            continue;
        }
        for r in &roots {
            let nbrs = roots.iter().filter(|s| lat.dot(r, s) == 1).count();
            if nbrs <= 1 {
                ends.push((r.clone(), comp.rank));
            }
        }
    }
    ends
}

/// A line of negative square has square `-1/n`; if it meets one A_n chain
/// only, transversally at an end, then `n + 1` is forced.
fn pushforward_check(e: &TableEntry) -> Check {
    let cfg = &e.config;
    let lat = cfg.lattice();
    let ends = chain_ends(e);
    let mut negative = 0;
    for l in cfg.lines() {
        let sq = match cfg.pushforward_self_intersection(l) {
            Ok(sq) => sq,
            Err(err) => return Check::new("pushforward", Status::Fail, err.to_string()),
        };
        let met: Vec<(&DivisorClass, i64)> = cfg
            .simple_roots()
            .iter()
            .map(|r| (r, lat.dot(l, r)))
            .filter(|(_, p)| *p > 0)
            .collect();
        let at_end = match met.as_slice() {
            [(r, 1)] => ends
                .iter()
                .find(|(end, _)| end == *r)
                .map(|(_, n)| *n as i64 + 1),
            [] => Some(1),
            _ => None,
        };
        if let Some(n) = at_end {
            if is_minus_one_over_n(&sq) != Some(n) {
                return Check::new(
                    "pushforward",
                    Status::Fail,
                    format!("line {l} has square {sq}, expected -1/{n}"),
                );
            }
        }
        if sq < 0.into() {
            if is_minus_one_over_n(&sq).is_none() {
                return Check::new(
                    "pushforward",
                    Status::Fail,
                    format!("line {l} has square {sq}"),
                );
            }
            negative += 1;
        }
    }
    if negative == 0 {
        Check::skip("pushforward", "no line of negative square")
    } else {
        Check::pass("pushforward", format!("{negative} lines of square -1/n"))
    }
}

/// Upper bound on the number of lines through one singular point.
pub(crate) fn lines_through_point_bound(degree: i64) -> Option<usize> {
    match degree {
        3 => Some(6),
        4 => Some(4),
        d if d >= 5 => Some(3),
        _ => None,
    }
}

/// Counts of lines through each singular point.
pub(crate) fn lines_per_point(e: &TableEntry) -> Vec<(String, usize)> {
    e.config
        .components()
        .into_iter()
        .map(|(comp, roots)| {
            let n = e
                .config
                .lines_through_component(&roots)
                .map_or(0, |ls| ls.len());
            (comp.to_string(), n)
        })
        .collect()
}

fn singular_point_checks(e: &TableEntry, r: &mut Report) {
    let counts = lines_per_point(e);
    let shown: Vec<String> = counts.iter().map(|(c, n)| format!("{c}:{n}")).collect();
    let shown = shown.join(" ");
    if counts.is_empty() {
        r.push(Check::skip("lines per point bound", "smooth"));
        r.push(Check::skip("line through each point", "smooth"));
        return;
    }
    match lines_through_point_bound(e.degree) {
        Some(b) => r.push(Check::test(
            "lines per point bound",
            counts.iter().all(|(_, n)| *n <= b),
            format!("{shown} (at most {b})"),
        )),
        None => r.push(Check::skip(
            "lines per point bound",
            format!("{shown} (no bound in degree {})", e.degree),
        )),
    }
    if e.degree <= 7 {
        r.push(Check::test(
            "line through each point",
            counts.iter().all(|(_, n)| *n > 0),
            shown,
        ));
    } else {
        r.push(Check::skip("line through each point", "degree above 7"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_catalog;

    #[test]
    fn line_squares() {
        let c = load_catalog().unwrap();
        // rho = 1: the line is a fifth of -K and meets the second node of A4
        let e = c.entry("d5-A4").unwrap();
        let l = &e.config.lines()[0];
        let sq = e.config.pushforward_self_intersection(l).unwrap();
        assert_eq!(sq, crate::surface::Rational::new(1, 5));
        assert_eq!(
            verify_entry(e).report.get("pushforward").unwrap().status,
            Status::Skip
        );
        // lines through an A1 point on a surface of Picard rank 3
        let e = c.entry("d6-A1-3l").unwrap();
        assert_eq!(
            verify_entry(e).report.get("pushforward").unwrap().status,
            Status::Pass
        );
    }

    #[test]
    fn cubic_lines_vanish() {
        let c = load_catalog().unwrap();
        let r = verify_entry(c.entry("d3-3A2").unwrap());
        assert_eq!(
            r.report.get("lines on surface").unwrap().status,
            Status::Pass
        );
        assert_eq!(r.report.get("line count").unwrap().status, Status::Pass);
        assert_eq!(
            r.report.get("anticanonical degree").unwrap().status,
            Status::Pass
        );
    }

    #[test]
    fn tampered_value_is_reported() {
        let c = load_catalog().unwrap();
        let mut e = c.entry("d4-D5").unwrap().clone();
        e.num_lines = 2;
        let r = verify_entry(&e);
        assert!(!r.passed());
        assert_eq!(r.report.get("lines").unwrap().status, Status::Fail);
    }
}
