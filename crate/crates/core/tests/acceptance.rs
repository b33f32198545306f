//! Acceptance criteria, one PASS/FAIL line each.
//!
//! A criterion listed in `KNOWN_RED` is expected to fail because the source
//! data is inconsistent; the run fails only on unexpected results.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dpzoo::catalog::{self, load_catalog, Catalog, GraphSource, Status, Summary};
use dpzoo::lattice::{blowup_of_p2, DivisorClass};
use dpzoo::par::Parallelism;
use dpzoo::rootsys::{brute_force_classes, minus_one_by_reflection, roots_by_reflection, AdeKind};
use dpzoo::surface::{graphs_isomorphic, Rational};

/// Three drawn graphs are not realized by any configuration; see the
/// errata certified below.
const KNOWN_RED: &[&str] = &["dual graphs"];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn big_table(c: &Catalog) -> Outcome {
    let t = Instant::now();
    let reports = catalog::verify_all(c, Parallelism::Parallel);
    let elapsed = t.elapsed();
    let fields = ["type", "rho", "lines", "index", "weakly_minimal"];
    let bad: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            fields.iter().filter_map(move |f| {
                let ch = r.report.get(f).expect("check present");
                (ch.status != Status::Pass).then(|| format!("{} {f}: {}", r.id, ch.detail))
            })
        })
        .collect();
    let s = Summary::of(&reports);
    outcome(
        bad.is_empty() && s.failed == 0 && elapsed < Duration::from_secs(10),
        if bad.is_empty() {
            format!(
                "{} rows, all other checks pass ({} via errata), {elapsed:.2?}",
                s.entries, s.errata
            )
        } else {
            bad.join("; ")
        },
    )
}

fn dual_graphs(c: &Catalog) -> Outcome {
    let mut drawn = 0;
    let mut mismatched = Vec::new();
    for e in c
        .entries
        .iter()
        .filter(|e| e.graph_source == GraphSource::Appendix)
    {
        drawn += 1;
        if !graphs_isomorphic(&e.config.dual_graph(), &e.expected_graph) {
            mismatched.push(e.id.clone());
        }
    }
    let g = c.entry("d1-E7-A1").unwrap().config.dual_graph();
    let double = g.edges().iter().any(|&(_, _, m)| m == 2);
    let errata = catalog::certify_errata(c);
    let with_erratum: BTreeSet<&str> = c
        .entries
        .iter()
        .filter(|e| e.erratum.is_some())
        .map(|e| e.id.as_str())
        .collect();
    let mismatched_set: BTreeSet<&str> = mismatched.iter().map(String::as_str).collect();
    // the only mismatches are the certified errata
    assert!(errata.passed(), "{errata}");
    assert_eq!(mismatched_set, with_erratum, "unexpected graph mismatches");
    assert!(double, "d1-E7-A1 lost its double edge");
    outcome(
        mismatched.is_empty() && double,
        format!(
            "{}/{drawn} drawings match; double edge in d1-E7-A1: {double}; not realizable as drawn: {}",
            drawn - mismatched.len(),
            mismatched.join(", ")
        ),
    )
}

fn enumeration(c: &Catalog) -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (d, orbits, absent) in [(7, 2, 0), (6, 6, 0), (5, 7, 1)] {
        let r = catalog::enumerate_and_match(c, d, Parallelism::Parallel).unwrap();
        let unmatched: Vec<_> = r.orbits.iter().filter(|o| o.entry.is_none()).collect();
        let smooth_only = unmatched.iter().all(|o| o.ty.is_smooth());
        ok &= r.passed && r.orbits.len() == orbits && unmatched.len() == absent && smooth_only;
        parts.push(format!(
            "d={d}: {} orbits, {} without row",
            r.orbits.len(),
            unmatched.len()
        ));
    }
    let elapsed = t.elapsed();
    ok &= elapsed < Duration::from_secs(5);
    outcome(ok, format!("{}; {elapsed:.2?}", parts.join(", ")))
}

fn oracles() -> Outcome {
    let roots = [240, 126, 72, 40, 20, 8, 2, 0];
    let lines = [240, 56, 27, 16, 10, 6, 3, 1];
    let mut ok = true;
    for d in 1..=8 {
        let lat = blowup_of_p2(9 - d).unwrap();
        let sorted = |mut v: Vec<DivisorClass>| {
            v.sort();
            v
        };
        let r1 = sorted(brute_force_classes(&lat, -2, 0, Parallelism::Parallel));
        let r2 = sorted(roots_by_reflection(&lat));
        let l1 = sorted(brute_force_classes(&lat, -1, -1, Parallelism::Parallel));
        let l2 = sorted(minus_one_by_reflection(&lat));
        ok &= r1 == r2 && l1 == l2 && r1.len() == roots[d - 1] && l1.len() == lines[d - 1];
    }
    outcome(
        ok,
        "roots 240..0 and (-1)-classes 240..1 agree for d = 1..8",
    )
}

fn index_table(c: &Catalog) -> Outcome {
    let r = catalog::check_corollaries(c, Parallelism::Sequential);
    let rows = r.get("index table rows").unwrap();
    let rho_one = r.get("rho one index").unwrap();
    let eqs = catalog::check_thm36(c);
    outcome(
        rows.status == Status::Pass && rho_one.status == Status::Pass && eqs.passed(),
        format!("{}; ind = d for rho = 1: {}", rows.detail, rho_one.detail),
    )
}

fn corollary_suite(c: &Catalog) -> Outcome {
    let r = catalog::check_corollaries(c, Parallelism::Parallel);
    let b = catalog::check_appendix_b(c);
    // Noether on every configuration the enumeration produces
    let mut noether = true;
    for d in 5..=7 {
        let lat = blowup_of_p2(9 - d as usize).unwrap();
        for cfg in dpzoo::surface::enumerate_configs(&lat, lat.rank() - 1, Parallelism::Parallel) {
            noether &= cfg.picard_rank() + cfg.simple_roots().len() == (10 - d) as usize;
            noether &= cfg.class_group().torsion_order() * d <= 9;
        }
    }
    let failed: Vec<&str> = r
        .failures()
        .chain(b.failures())
        .map(|c| c.name.as_str())
        .collect();
    outcome(
        failed.is_empty() && noether,
        if failed.is_empty() {
            format!(
                "{} table checks, {} cyclic class group checks",
                r.checks.len(),
                b.checks.len()
            )
        } else {
            failed.join(", ")
        },
    )
}

fn polynomials(c: &Catalog) -> Outcome {
    let mut bad = Vec::new();
    let mut identities = 0;
    for e in &c.entries {
        let r = catalog::verify_polynomials(e);
        bad.extend(r.failures().map(|ch| format!("{} {}", e.id, ch.name)));
        if r.get("actions").unwrap().status == Status::Pass {
            identities += e.actions.len();
        }
    }
    let thm36 = catalog::check_thm36(c);
    let curves = catalog::check_plane_curves(c);
    bad.extend(
        thm36
            .failures()
            .chain(curves.failures())
            .map(|ch| ch.name.clone()),
    );
    if bad.is_empty() {
        identities += c.thm36.iter().map(|r| r.actions.len()).sum::<usize>();
        identities += c
            .plane_curves
            .iter()
            .map(|p| p.actions.len())
            .sum::<usize>();
    }
    let lines: usize = c
        .entries
        .iter()
        .filter_map(|e| e.line_data.as_ref())
        .map(|l| l.lines.len())
        .sum();
    outcome(
        bad.is_empty() && identities >= 10,
        if bad.is_empty() {
            format!("{lines} lines vanish, {identities} invariance identities hold")
        } else {
            bad.join("; ")
        },
    )
}

fn pushforward(c: &Catalog) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for e in &c.entries {
        let cfg = &e.config;
        let lat = cfg.lattice();
        let pair = |a: &DivisorClass, b: &DivisorClass| lat.pair(a, b).unwrap();
        for (comp, chain) in cfg.components() {
            if comp.kind != AdeKind::A {
                continue;
            }
            for end in chain
                .iter()
                .filter(|r| chain.iter().filter(|s| pair(r, s) == 1).count() <= 1)
            {
                for l in cfg.lines() {
                    let met: Vec<&DivisorClass> = cfg
                        .simple_roots()
                        .iter()
                        .filter(|r| pair(l, r) > 0)
                        .collect();
                    if met != [end] || pair(l, end) != 1 {
                        continue;
                    }
                    checked += 1;
                    let sq = cfg.pushforward_self_intersection(l).unwrap();
                    let want = Rational::new(-1, comp.rank as i64 + 1);
                    if sq != want {
                        bad.push(format!("{} {l}: {sq} != {want}", e.id));
                    }
                }
            }
        }
    }
    outcome(
        bad.is_empty() && checked > 0,
        if bad.is_empty() {
            format!("{checked} lines with L^2 = -1/n")
        } else {
            bad.join("; ")
        },
    )
}

fn main() -> ExitCode {
    let c = load_catalog().expect("shipped data loads");
    let criteria: Vec<(&str, Outcome)> = vec![
        ("big table", big_table(&c)),
        ("dual graphs", dual_graphs(&c)),
        ("enumeration", enumeration(&c)),
        ("oracle equivalence", oracles()),
        ("index table", index_table(&c)),
        ("corollary suite", corollary_suite(&c)),
        ("polynomial checks", polynomials(&c)),
        ("pushforward values", pushforward(&c)),
    ];
    let mut unexpected = Vec::new();
    for (name, o) in &criteria {
        let known = KNOWN_RED.contains(name);
        let tag = match (o.ok, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("{tag:<12} {name}: {}", o.detail);
        if o.ok == known {
            unexpected.push(*name);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected results: {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
