//! The table of Du Val del Pezzo surfaces with infinite automorphism groups,
//! with its side tables, loaded from JSON and checked end to end.
//!
//! Data files live under `data/` (override with `DPZOO_DATA`):
//!
//! - `ambients.json`: ambient spaces and the gradings of their coordinates;
//! - `entries.json`: one record per table row;
//! - `graphs/<id>.json`: expected dual graphs, optionally with an erratum;
//! - `thm36.json`, `prop61.json`, `appendix_b.json`, `corollaries.json`.

mod census;
mod corollaries;
mod report;
mod tables;
mod verify;

pub use census::{enumerate_and_match, CensusReport, OrbitMatch};
pub use corollaries::check_corollaries;
pub use report::{Check, Report, Status};
pub use tables::{certify_errata, check_appendix_b, check_plane_curves, check_thm36};
pub use verify::{verify_all, verify_entry, verify_polynomials, EntryReport, Recomputed, Summary};

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::groupdesc::GroupExpr;
use crate::lattice::{DivisorClass, LatticeKind, PicLattice};
use crate::rootsys::AdeType;
use crate::surface::{DualGraph, NodeColor, SurfaceConfig};
use crate::wpoly::{parse_equation, parse_poly, Grading, GroupActionFamily, Parameter, WPoly};

/// Default data directory: `$DPZOO_DATA`, else the repository's `data/`.
pub fn data_dir() -> PathBuf {
    match std::env::var_os("DPZOO_DATA") {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

/// Load the catalog from [`data_dir`].
pub fn load_catalog() -> Result<Catalog> {
    Catalog::load(&data_dir())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmbientShape {
    /// Weighted projective space with these weights.
    Weighted(Vec<i64>),
    /// Product of projective spaces of these dimensions.
    Product(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct Ambient {
    pub name: String,
    pub shape: AmbientShape,
    pub grading: Grading,
}

impl Ambient {
    fn dimension(&self) -> usize {
        match &self.shape {
            AmbientShape::Weighted(w) => w.len() - 1,
            AmbientShape::Product(dims) => dims.iter().sum(),
        }
    }

    /// Anticanonical class of a complete intersection of the given degrees,
    /// as a multidegree.
    pub fn anticanonical(&self, degrees: &[Vec<i64>]) -> Vec<i64> {
        let mut k = match &self.shape {
            AmbientShape::Weighted(w) => vec![w.iter().sum()],
            AmbientShape::Product(dims) => dims.iter().map(|&n| n as i64 + 1).collect(),
        };
        for d in degrees {
            for (x, y) in k.iter_mut().zip(d) {
                *x -= y;
            }
        }
        k
    }

    /// `K^2` of a surface cut out by equations of the given degrees, or
    /// `None` when they do not cut out a surface.
    pub fn anticanonical_degree(&self, degrees: &[Vec<i64>]) -> Option<num_rational::Ratio<i64>> {
        if self.dimension() != degrees.len() + 2 {
            return None;
        }
        let a = self.anticanonical(degrees);
        match &self.shape {
            AmbientShape::Weighted(w) => {
                let num: i64 = degrees.iter().map(|d| d[0]).product::<i64>() * a[0] * a[0];
                Some(num_rational::Ratio::new(num, w.iter().product()))
            }
            AmbientShape::Product(dims) => {
                // multiply linear forms in the hyperplane classes, truncating
                // H_i^(n_i + 1) = 0, and read off the top coefficient
                let mut poly: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
                poly.insert(vec![0; dims.len()], 1);
                let mut factors: Vec<Vec<i64>> = vec![a.clone(), a];
                factors.extend(degrees.iter().cloned());
                for f in factors {
                    let mut next = BTreeMap::new();
                    for (m, c) in &poly {
                        for (i, &fi) in f.iter().enumerate() {
                            if fi == 0 || m[i] == dims[i] {
                                continue;
                            }
                            let mut m2 = m.clone();
                            m2[i] += 1;
                            *next.entry(m2).or_insert(0) += c * fi;
                        }
                    }
                    poly = next;
                }
                Some(poly.get(dims).copied().unwrap_or(0).into())
            }
        }
    }
}

/// Defining equations of a table row in its ambient space. An empty list
/// means the surface is the ambient space itself.
#[derive(Clone, Debug)]
pub struct SurfaceEquation {
    pub ambient: Ambient,
    pub equations: Vec<WPoly>,
    pub degrees: Vec<Vec<i64>>,
}

/// A line with its defining equations and a parametrization. `relations`
/// adjoin square roots: `mu -> lambda` means `mu^2 = lambda`.
#[derive(Clone, Debug)]
pub struct LineDatum {
    pub equations: Vec<WPoly>,
    pub param: BTreeMap<String, WPoly>,
    pub relations: BTreeMap<String, WPoly>,
}

#[derive(Clone, Debug)]
pub struct LineData {
    /// Whether the list is meant to contain every line.
    pub complete: bool,
    pub lines: Vec<LineDatum>,
}

#[derive(Clone, Debug)]
pub struct NamedAction {
    pub name: String,
    pub family: GroupActionFamily,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphSource {
    Appendix,
    Example,
    Derived,
}

/// Corrected graph for a drawing that no configuration realizes.
#[derive(Clone, Debug)]
pub struct Erratum {
    pub reason: String,
    pub graph: DualGraph,
}

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub id: String,
    pub label: String,
    pub degree: i64,
    pub rho: usize,
    pub num_lines: usize,
    pub ty: AdeType,
    pub index: i64,
    pub aut0: GroupExpr,
    pub blowup_of: Vec<String>,
    pub weakly_minimal: bool,
    pub config: SurfaceConfig,
    pub expected_graph: DualGraph,
    pub graph_source: GraphSource,
    pub erratum: Option<Erratum>,
    pub surface: Option<SurfaceEquation>,
    pub moduli: Vec<String>,
    pub line_data: Option<LineData>,
    pub actions: Vec<NamedAction>,
    pub cuspidal_members: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Thm36Row {
    pub entry: String,
    pub degree: i64,
    pub rho: usize,
    pub ty: AdeType,
    pub index: i64,
    pub ambient: Ambient,
    pub equation: Option<WPoly>,
    pub actions: Vec<NamedAction>,
}

#[derive(Clone, Debug)]
pub struct PlaneCurveEntry {
    pub equation: WPoly,
    pub stabilizer: GroupExpr,
    pub actions: Vec<NamedAction>,
}

/// A surface whose class group is infinite cyclic.
#[derive(Clone, Debug)]
pub struct HomologyPlane {
    pub degree: i64,
    pub ambient: Ambient,
    pub equation: WPoly,
    pub entry: Option<String>,
    pub aut0: GroupExpr,
    pub cuspidal_members: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub entries: Vec<TableEntry>,
    pub thm36: Vec<Thm36Row>,
    pub plane_curves: Vec<PlaneCurveEntry>,
    pub plane_ambient: Ambient,
    pub homology_planes: Vec<HomologyPlane>,
    /// Degree and type of surfaces with `Cl = Z`.
    pub cyclic_types: Vec<(i64, AdeType)>,
    pub non_reductive: Vec<String>,
    pub ambients: BTreeMap<String, Ambient>,
}

// ---- raw schema -------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAmbient {
    weights: Option<Vec<i64>>,
    factors: Option<Vec<usize>>,
    variables: BTreeMap<String, Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    ambient: String,
    equations: Vec<String>,
    degree: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLine {
    equations: Vec<String>,
    param: BTreeMap<String, String>,
    #[serde(default)]
    relations: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLineData {
    complete: bool,
    lines: Vec<RawLine>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    name: String,
    substitution: BTreeMap<String, String>,
    parameters: Vec<Parameter>,
    multiplier: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    id: String,
    label: String,
    degree: i64,
    rho: usize,
    lines: usize,
    #[serde(rename = "type")]
    ty: String,
    index: i64,
    aut0: String,
    blowup_of: Vec<String>,
    weakly_minimal: bool,
    lattice: LatticeKind,
    simple_roots: Vec<Vec<i64>>,
    graph: String,
    surface: Option<RawSurface>,
    #[serde(default)]
    moduli: Vec<String>,
    line_data: Option<RawLineData>,
    #[serde(default)]
    actions: Vec<RawAction>,
    cuspidal_members: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntries {
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawErratum {
    reason: String,
    nodes: Vec<NodeColor>,
    edges: Vec<(usize, usize, u32)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraphFile {
    id: String,
    #[allow(dead_code)]
    label: String,
    source: GraphSource,
    nodes: Vec<NodeColor>,
    edges: Vec<(usize, usize, u32)>,
    erratum: Option<RawErratum>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawThm36Row {
    entry: String,
    degree: i64,
    rho: usize,
    #[serde(rename = "type")]
    ty: String,
    index: i64,
    ambient: String,
    equation: Option<String>,
    #[serde(default)]
    actions: Vec<RawAction>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawThm36 {
    rows: Vec<RawThm36Row>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    equation: String,
    stabilizer: String,
    #[serde(default)]
    actions: Vec<RawAction>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProp61 {
    ambient: String,
    curves: Vec<RawCurve>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHomologyPlane {
    degree: i64,
    ambient: String,
    equation: String,
    entry: Option<String>,
    aut0: String,
    cuspidal_members: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCyclicType {
    degree: i64,
    #[serde(rename = "type")]
    ty: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAppendixB {
    homology_planes: Vec<RawHomologyPlane>,
    cyclic_class_group_types: Vec<RawCyclicType>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCorollaries {
    non_reductive: Vec<String>,
}

// ---- loading ------------------------------------------------------------

fn load_err(entry: &str, field: &str, msg: impl ToString) -> Error {
    Error::Load {
        entry: entry.to_string(),
        field: field.to_string(),
        msg: msg.to_string(),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| {
        let file = path
            .file_name()
            .map_or(String::new(), |f| f.to_string_lossy().into_owned());
        load_err(&file, "json", e)
    })
}

fn poly(entry: &str, field: &str, text: &str) -> Result<WPoly> {
    parse_poly(text).map_err(|e| load_err(entry, field, format!("`{text}`: {e}")))
}

fn equation(entry: &str, field: &str, text: &str) -> Result<WPoly> {
    parse_equation(text).map_err(|e| load_err(entry, field, format!("`{text}`: {e}")))
}

fn ade(entry: &str, text: &str) -> Result<AdeType> {
    text.parse().map_err(|e| load_err(entry, "type", e))
}

fn group(entry: &str, field: &str, text: &str) -> Result<GroupExpr> {
    text.parse()
        .map_err(|e| load_err(entry, field, format!("`{text}`: {e}")))
}

fn actions(entry: &str, raw: Vec<RawAction>) -> Result<Vec<NamedAction>> {
    raw.into_iter()
        .map(|a| {
            let field = format!("actions.{}", a.name);
            let substitution = a
                .substitution
                .iter()
                .map(|(k, v)| Ok((k.clone(), poly(entry, &field, v)?)))
                .collect::<Result<_>>()?;
            Ok(NamedAction {
                family: GroupActionFamily {
                    substitution,
                    parameters: a.parameters,
                    multiplier: poly(entry, &field, &a.multiplier)?,
                },
                name: a.name,
            })
        })
        .collect()
}

fn ambient<'a>(
    ambients: &'a BTreeMap<String, Ambient>,
    entry: &str,
    name: &str,
) -> Result<&'a Ambient> {
    ambients
        .get(name)
        .ok_or_else(|| load_err(entry, "ambient", format!("unknown ambient `{name}`")))
}

fn load_ambients(dir: &Path) -> Result<BTreeMap<String, Ambient>> {
    let raw: BTreeMap<String, RawAmbient> = read_json(&dir.join("ambients.json"))?;
    raw.into_iter()
        .map(|(name, a)| {
            let shape = match (a.weights, a.factors) {
                (Some(w), None) => AmbientShape::Weighted(w),
                (None, Some(f)) => AmbientShape::Product(f),
                _ => {
                    return Err(load_err(
                        &name,
                        "weights",
                        "give exactly one of weights, factors",
                    ))
                }
            };
            let ncomp = match &shape {
                AmbientShape::Weighted(_) => 1,
                AmbientShape::Product(f) => f.len(),
            };
            if a.variables.values().any(|w| w.len() != ncomp) {
                return Err(load_err(
                    &name,
                    "variables",
                    "weight vectors have the wrong length",
                ));
            }
            let mut expected = match &shape {
                AmbientShape::Weighted(w) => w.iter().map(|&x| vec![x]).collect::<Vec<_>>(),
                AmbientShape::Product(f) => f
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &n)| {
                        let mut e = vec![0; f.len()];
                        e[i] = 1;
                        std::iter::repeat_n(e, n + 1)
                    })
                    .collect(),
            };
            let mut got: Vec<Vec<i64>> = a.variables.values().cloned().collect();
            expected.sort();
            got.sort();
            if expected != got {
                return Err(load_err(
                    &name,
                    "variables",
                    "weights do not match the ambient",
                ));
            }
            Ok((
                name.clone(),
                Ambient {
                    name,
                    shape,
                    grading: Grading(a.variables),
                },
            ))
        })
        .collect()
}

fn load_graph(
    dir: &Path,
    entry: &str,
    id: &str,
) -> Result<(DualGraph, GraphSource, Option<Erratum>)> {
    let raw: RawGraphFile = read_json(&dir.join("graphs").join(format!("{id}.json")))?;
    if raw.id != id {
        return Err(load_err(
            entry,
            "graph",
            format!("graph file declares id `{}`", raw.id),
        ));
    }
    let g = DualGraph::new(raw.nodes, raw.edges).map_err(|e| load_err(entry, "graph", e))?;
    let erratum = match raw.erratum {
        Some(e) => Some(Erratum {
            reason: e.reason,
            graph: DualGraph::new(e.nodes, e.edges)
                .map_err(|e| load_err(entry, "graph.erratum", e))?,
        }),
        None => None,
    };
    Ok((g, raw.source, erratum))
}

fn load_entry(dir: &Path, ambients: &BTreeMap<String, Ambient>, r: RawEntry) -> Result<TableEntry> {
    let id = r.id.clone();
    let lattice = PicLattice::from_kind(r.lattice).map_err(|e| load_err(&id, "lattice", e))?;
    if lattice.degree() != r.degree {
        return Err(load_err(
            &id,
            "lattice",
            format!("lattice has degree {}", lattice.degree()),
        ));
    }
    let roots: Vec<DivisorClass> = r.simple_roots.into_iter().map(DivisorClass::new).collect();
    let config =
        SurfaceConfig::new(lattice, roots).map_err(|e| load_err(&id, "simple_roots", e))?;
    let (expected_graph, graph_source, erratum) = load_graph(dir, &id, &r.graph)?;

    let surface = match r.surface {
        Some(s) => {
            let amb = ambient(ambients, &id, &s.ambient)?.clone();
            let equations = s
                .equations
                .iter()
                .map(|e| equation(&id, "surface.equations", e))
                .collect::<Result<Vec<_>>>()?;
            let ncomp = amb.grading.components();
            if s.degree.len() != equations.len() * ncomp {
                return Err(load_err(
                    &id,
                    "surface.degree",
                    "one degree per equation and grading",
                ));
            }
            let degrees = s.degree.chunks(ncomp.max(1)).map(<[i64]>::to_vec).collect();
            Some(SurfaceEquation {
                ambient: amb,
                equations,
                degrees,
            })
        }
        None => None,
    };

    let line_data = match r.line_data {
        Some(ld) => {
            let lines = ld
                .lines
                .iter()
                .map(|l| {
                    let f = "line_data.lines";
                    Ok(LineDatum {
                        equations: l
                            .equations
                            .iter()
                            .map(|e| equation(&id, f, e))
                            .collect::<Result<_>>()?,
                        param: l
                            .param
                            .iter()
                            .map(|(k, v)| Ok((k.clone(), poly(&id, f, v)?)))
                            .collect::<Result<_>>()?,
                        relations: l
                            .relations
                            .iter()
                            .map(|(k, v)| Ok((k.clone(), poly(&id, f, v)?)))
                            .collect::<Result<_>>()?,
                    })
                })
                .collect::<Result<_>>()?;
            Some(LineData {
                complete: ld.complete,
                lines,
            })
        }
        None => None,
    };

    Ok(TableEntry {
        ty: ade(&id, &r.ty)?,
        aut0: group(&id, "aut0", &r.aut0)?,
        actions: actions(&id, r.actions)?,
        label: r.label,
        degree: r.degree,
        rho: r.rho,
        num_lines: r.lines,
        index: r.index,
        blowup_of: r.blowup_of,
        weakly_minimal: r.weakly_minimal,
        config,
        expected_graph,
        graph_source,
        erratum,
        surface,
        moduli: r.moduli,
        line_data,
        cuspidal_members: r.cuspidal_members,
        id,
    })
}

impl Catalog {
    pub fn load(dir: &Path) -> Result<Catalog> {
        let ambients = load_ambients(dir)?;

        let raw: RawEntries = read_json(&dir.join("entries.json"))?;
        let entries = raw
            .entries
            .into_iter()
            .map(|r| load_entry(dir, &ambients, r))
            .collect::<Result<Vec<_>>>()?;
        let mut ids = BTreeSet::new();
        for e in &entries {
            if !ids.insert(e.id.as_str()) {
                return Err(load_err(&e.id, "id", "duplicate id"));
            }
        }
        for e in &entries {
            for b in &e.blowup_of {
                if !ids.contains(b.as_str()) {
                    return Err(load_err(&e.id, "blowup_of", format!("unknown id `{b}`")));
                }
            }
        }
        let known = |entry: &str, field: &str, id: &str| -> Result<()> {
            if ids.contains(id) {
                Ok(())
            } else {
                Err(load_err(entry, field, format!("unknown id `{id}`")))
            }
        };

        let raw: RawThm36 = read_json(&dir.join("thm36.json"))?;
        let thm36 = raw
            .rows
            .into_iter()
            .map(|r| {
                let tag = format!("thm36:{}", r.entry);
                known(&tag, "entry", &r.entry)?;
                Ok(Thm36Row {
                    ty: ade(&tag, &r.ty)?,
                    ambient: ambient(&ambients, &tag, &r.ambient)?.clone(),
                    equation: r
                        .equation
                        .as_deref()
                        .map(|e| equation(&tag, "equation", e))
                        .transpose()?,
                    actions: actions(&tag, r.actions)?,
                    entry: r.entry,
                    degree: r.degree,
                    rho: r.rho,
                    index: r.index,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let raw: RawProp61 = read_json(&dir.join("prop61.json"))?;
        let plane_ambient = ambient(&ambients, "prop61", &raw.ambient)?.clone();
        let plane_curves = raw
            .curves
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let tag = format!("prop61:{}", i + 1);
                Ok(PlaneCurveEntry {
                    equation: equation(&tag, "equation", &c.equation)?,
                    stabilizer: group(&tag, "stabilizer", &c.stabilizer)?,
                    actions: actions(&tag, c.actions)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let raw: RawAppendixB = read_json(&dir.join("appendix_b.json"))?;
        let homology_planes = raw
            .homology_planes
            .into_iter()
            .map(|h| {
                let tag = format!("appendix_b:d{}", h.degree);
                if let Some(id) = &h.entry {
                    known(&tag, "entry", id)?;
                }
                Ok(HomologyPlane {
                    ambient: ambient(&ambients, &tag, &h.ambient)?.clone(),
                    equation: equation(&tag, "equation", &h.equation)?,
                    aut0: group(&tag, "aut0", &h.aut0)?,
                    degree: h.degree,
                    entry: h.entry,
                    cuspidal_members: h.cuspidal_members,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cyclic_types = raw
            .cyclic_class_group_types
            .into_iter()
            .map(|c| Ok((c.degree, ade("appendix_b", &c.ty)?)))
            .collect::<Result<Vec<_>>>()?;

        let raw: RawCorollaries = read_json(&dir.join("corollaries.json"))?;
        for id in &raw.non_reductive {
            known("corollaries", "non_reductive", id)?;
        }

        Ok(Catalog {
            entries,
            thm36,
            plane_curves,
            plane_ambient,
            homology_planes,
            cyclic_types,
            non_reductive: raw.non_reductive,
            ambients,
        })
    }

    pub fn entry(&self, id: &str) -> Option<&TableEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.id.as_str())
    }
}
