//! Roots, (-1)-classes, Weyl reflections and ADE recognition.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lattice::{DivisorClass, LatticeKind, PicLattice};
use crate::par::{self, Parallelism};

/// All classes `R` with `R.R = -2` and `K.R = 0`, sorted.
#[derive(Clone, Debug)]
pub struct RootSet {
    lattice: PicLattice,
    roots: Vec<DivisorClass>,
}

impl RootSet {
    pub fn lattice(&self) -> &PicLattice {
        &self.lattice
    }

    pub fn roots(&self) -> &[DivisorClass] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, c: &DivisorClass) -> bool {
        self.roots.binary_search(c).is_ok()
    }

    /// Roots whose first nonzero coordinate is positive. Lexicographic order
    /// is additive, so this is a positive system.
    pub fn positive(&self) -> Vec<DivisorClass> {
        self.roots
            .iter()
            .filter(|r| r.is_lex_positive())
            .cloned()
            .collect()
    }
}

/// Inclusive range of the `h`-coefficient `a` for blow-up classes with
/// `v.v = self_int` and `K.v = k_dot`.
///
/// Write `v = a h + sum c_i e_i`. Then `sum c_i = -3a - k_dot` and
/// `sum c_i^2 = a^2 - self_int`, and Cauchy-Schwarz gives
/// `(9 - n) a^2 + 6 k_dot a + k_dot^2 + n self_int <= 0`.
/// For `n <= 8` the leading coefficient is positive, so the range is finite.
pub fn coefficient_bound(points: usize, self_int: i64, k_dot: i64) -> Option<(i64, i64)> {
    let n = points as i64;
    let (qa, qb, qc) = (9 - n, 6 * k_dot, k_dot * k_dot + n * self_int);
    let ok = |a: i64| qa * a * a + qb * a + qc <= 0 && a * a >= self_int;
    let disc = (qb * qb - 4 * qa * qc) as f64;
    if disc < 0.0 {
        return None;
    }
    let lo = ((-(qb as f64) - disc.sqrt()) / (2.0 * qa as f64)).floor() as i64 - 1;
    let hi = ((-(qb as f64) + disc.sqrt()) / (2.0 * qa as f64)).ceil() as i64 + 1;
    let lo = (lo..=hi).find(|&a| ok(a))?;
    let hi = (lo..=hi).rev().find(|&a| ok(a))?;
    Some((lo, hi))
}

fn isqrt(x: i64) -> i64 {
    if x <= 0 {
        return 0;
    }
    let mut r = (x as f64).sqrt() as i64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Fill `cur[i..]` with integers of sum `sum` and square-sum `norm`.
fn fill_tail(i: usize, sum: i64, norm: i64, cur: &mut Vec<i64>, out: &mut Vec<DivisorClass>) {
    let left = (cur.len() - i) as i64;
    if left == 0 {
        if sum == 0 && norm == 0 {
            out.push(DivisorClass::new(cur.clone()));
        }
        return;
    }
    if norm < 0 || sum * sum > left * norm {
        return;
    }
    let r = isqrt(norm);
    for c in -r..=r {
        let (s2, n2) = (sum - c, norm - c * c);
        if s2 * s2 > (left - 1) * n2 {
            continue;
        }
        cur[i] = c;
        fill_tail(i + 1, s2, n2, cur, out);
    }
    cur[i] = 0;
}

/// Exhaustive search for `{v : v.v = self_int, K.v = k_dot}` within the
/// bounds of [`coefficient_bound`] (blow-ups) or the root bound of the
/// defining quadratic (Hirzebruch). Output is sorted.
pub fn brute_force_classes(
    lat: &PicLattice,
    self_int: i64,
    k_dot: i64,
    mode: Parallelism,
) -> Vec<DivisorClass> {
    let mut out = match lat.kind() {
        LatticeKind::Blowup { points } => {
            let Some((lo, hi)) = coefficient_bound(points, self_int, k_dot) else {
                return Vec::new();
            };
            let heads: Vec<i64> = (lo..=hi).collect();
            par::flat_map(&heads, mode, |&a| {
                let mut cur = vec![0; points + 1];
                cur[0] = a;
                let mut found = Vec::new();
                fill_tail(1, -3 * a - k_dot, a * a - self_int, &mut cur, &mut found);
                found
            })
        }
        LatticeKind::Hirzebruch { .. } => {
            // Both defining equations are quadratic with coefficients bounded
            // by |self_int| and |k_dot|; Cauchy's root bound applies.
            let b = 1 + self_int.abs() + k_dot.abs();
            let mut found = Vec::new();
            for x in -b..=b {
                for y in -b..=b {
                    let v = DivisorClass::new(vec![x, y]);
                    if lat.self_intersection(&v) == self_int && lat.k_dot(&v) == k_dot {
                        found.push(v);
                    }
                }
            }
            found
        }
    };
    out.sort();
    out
}

/// Simple roots of the ambient Weyl group: `e_i - e_{i+1}` and
/// `h - e1 - e2 - e3` for blow-ups, the unique positive root for `F0`, `F2`.
pub fn weyl_generators(lat: &PicLattice) -> Vec<DivisorClass> {
    match lat.kind() {
        LatticeKind::Blowup { points } => {
            let r = points + 1;
            let mut gens: Vec<DivisorClass> = (1..points)
                .map(|i| DivisorClass::unit(r, i).add_scaled(-1, &DivisorClass::unit(r, i + 1)))
                .collect();
            if points >= 3 {
                let mut v = vec![0; r];
                v[0] = 1;
                v[1..4].fill(-1);
                gens.push(DivisorClass::new(v));
            }
            gens
        }
        LatticeKind::Hirzebruch { m: 0 } => vec![DivisorClass::new(vec![1, -1])],
        LatticeKind::Hirzebruch { .. } => vec![DivisorClass::new(vec![0, 1])],
    }
}

/// Weyl reflection `c -> c + (c.R) R` in a root `R`.
pub fn reflect(lat: &PicLattice, root: &DivisorClass, c: &DivisorClass) -> Result<DivisorClass> {
    lat.pair(root, c)?;
    if lat.self_intersection(root) != -2 {
        return invalid(format!("{root} is not a (-2)-class"));
    }
    Ok(reflect_unchecked(lat, root, c))
}

pub(crate) fn reflect_unchecked(
    lat: &PicLattice,
    root: &DivisorClass,
    c: &DivisorClass,
) -> DivisorClass {
    c.add_scaled(lat.dot(c, root), root)
}

/// Closure of `seeds` under reflections in `generators`, sorted.
pub fn reflection_closure(
    lat: &PicLattice,
    seeds: &[DivisorClass],
    generators: &[DivisorClass],
) -> Result<Vec<DivisorClass>> {
    for g in generators {
        if lat.pair(g, g)? != -2 {
            return invalid(format!("generator {g} is not a (-2)-class"));
        }
    }
    let mut seen: HashSet<DivisorClass> = HashSet::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        lat.pair(s, s)?;
        if seen.insert(s.clone()) {
            queue.push_back(s.clone());
        }
    }
    while let Some(c) = queue.pop_front() {
        for g in generators {
            let img = reflect_unchecked(lat, g, &c);
            if !seen.contains(&img) {
                seen.insert(img.clone());
                queue.push_back(img);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Independent oracle for the roots: the Weyl orbit of the simple roots.
pub fn roots_by_reflection(lat: &PicLattice) -> Vec<DivisorClass> {
    let gens = weyl_generators(lat);
    reflection_closure(lat, &gens, &gens).expect("generators are roots")
}

/// Independent oracle for the (-1)-classes: the Weyl orbit of `e1`.
/// With two points the Weyl group is `<s_{e1-e2}>` and fixes `h - e1 - e2`,
/// which therefore needs its own seed.
pub fn minus_one_by_reflection(lat: &PicLattice) -> Vec<DivisorClass> {
    let LatticeKind::Blowup { points } = lat.kind() else {
        return Vec::new();
    };
    if points == 0 {
        return Vec::new();
    }
    let r = points + 1;
    let mut seeds = vec![DivisorClass::unit(r, 1)];
    if points == 2 {
        seeds.push(DivisorClass::new(vec![1, -1, -1]));
    }
    reflection_closure(lat, &seeds, &weyl_generators(lat)).expect("generators are roots")
}

/// All roots of the lattice (cached on the lattice).
pub fn enumerate_roots(lat: &PicLattice) -> RootSet {
    let roots = lat
        .cache
        .roots
        .get_or_init(|| brute_force_classes(lat, -2, 0, Parallelism::Sequential))
        .clone();
    RootSet {
        lattice: lat.clone(),
        roots,
    }
}

/// All `E` with `E.E = -1`, `K.E = -1` (cached on the lattice).
pub fn enumerate_minus_one_classes(lat: &PicLattice) -> Vec<DivisorClass> {
    lat.cache
        .minus_one
        .get_or_init(|| brute_force_classes(lat, -1, -1, Parallelism::Sequential))
        .clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AdeKind {
    E,
    D,
    A,
}

/// One connected Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdeComponent {
    pub kind: AdeKind,
    pub rank: usize,
}

impl AdeComponent {
    pub fn new(kind: AdeKind, rank: usize) -> Result<Self> {
        let ok = match kind {
            AdeKind::A => rank >= 1,
            AdeKind::D => rank >= 4,
            AdeKind::E => (6..=8).contains(&rank),
        };
        if !ok {
            return invalid(format!("no Dynkin diagram {kind:?}{rank}"));
        }
        Ok(AdeComponent { kind, rank })
    }

    /// Order of the local class group (determinant of the Cartan matrix).
    pub fn discriminant(&self) -> usize {
        match self.kind {
            AdeKind::A => self.rank + 1,
            AdeKind::D => 4,
            AdeKind::E => 9 - self.rank,
        }
    }
}

// E before D before A, larger rank first: the order used in the tables.
impl Ord for AdeComponent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.kind, std::cmp::Reverse(self.rank)).cmp(&(other.kind, std::cmp::Reverse(other.rank)))
    }
}

impl PartialOrd for AdeComponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AdeComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

/// Multiset of Dynkin components, kept sorted. Empty means smooth.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AdeType {
    components: Vec<AdeComponent>,
}

impl AdeType {
    pub fn new(mut components: Vec<AdeComponent>) -> Self {
        components.sort();
        AdeType { components }
    }

    pub fn smooth() -> Self {
        AdeType::default()
    }

    pub fn components(&self) -> &[AdeComponent] {
        &self.components
    }

    pub fn is_smooth(&self) -> bool {
        self.components.is_empty()
    }

    /// Total number of simple roots.
    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_smooth() {
            return write!(f, "smooth");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.components.len() {
            let c = self.components[i];
            let mult = self.components[i..].iter().take_while(|&&x| x == c).count();
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if mult > 1 {
                write!(f, "{mult}")?;
            }
            write!(f, "{c}")?;
            i += mult;
        }
        Ok(())
    }
}

impl FromStr for AdeType {
    type Err = Error;

    /// Accepts `smooth`, `D4+2A1`, `A3-2A1`, `2A3A1` and spaced forms.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "smooth" {
            return Ok(AdeType::smooth());
        }
        let bytes = t.as_bytes();
        let mut i = 0;
        let mut comps = Vec::new();
        let digits = |i: &mut usize| -> Option<usize> {
            let start = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            (start < *i).then(|| t[start..*i].parse().ok()).flatten()
        };
        while i < bytes.len() {
            if matches!(bytes[i], b'+' | b'-' | b' ') {
                i += 1;
                continue;
            }
            let mult = digits(&mut i).unwrap_or(1);
            let kind = match bytes.get(i) {
                Some(b'A') => AdeKind::A,
                Some(b'D') => AdeKind::D,
                Some(b'E') => AdeKind::E,
                _ => {
                    return Err(Error::Parse {
                        pos: i,
                        msg: format!("expected A, D or E in `{t}`"),
                    })
                }
            };
            i += 1;
            let pos = i;
            let rank = digits(&mut i).ok_or_else(|| Error::Parse {
                pos,
                msg: format!("missing rank in `{t}`"),
            })?;
            let c = AdeComponent::new(kind, rank).map_err(|e| Error::Parse {
                pos,
                msg: e.to_string(),
            })?;
            if mult == 0 {
                return Err(Error::Parse {
                    pos,
                    msg: "zero multiplicity".into(),
                });
            }
            comps.extend(std::iter::repeat_n(c, mult));
        }
        Ok(AdeType::new(comps))
    }
}

impl Serialize for AdeType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AdeType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Validate a list of simple roots: each a root of `lat`, no repeats,
/// pairwise pairings in `{0, 1}`.
pub fn validate_simple_roots(lat: &PicLattice, roots: &[DivisorClass]) -> Result<()> {
    for r in roots {
        if lat.pair(r, r)? != -2 || lat.k_dot(r) != 0 {
            return invalid(format!("{r} is not a root"));
        }
    }
    let mut seen = BTreeSet::new();
    for r in roots {
        if !seen.insert(r) {
            return invalid(format!("duplicate root {r}"));
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let p = lat.dot(&roots[i], &roots[j]);
            if p != 0 && p != 1 {
                return Err(Error::NotSimpleNormalCrossing { i, j, pairing: p });
            }
        }
    }
    Ok(())
}

/// Recognize one connected component given as an adjacency list.
fn recognize(adj: &[Vec<usize>], verts: &[usize]) -> Result<AdeComponent> {
    let k = verts.len();
    let edges: usize = verts.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges != k - 1 {
        return Err(Error::NotNegativeDefinite(format!(
            "component with {k} vertices has {edges} edges (contains a cycle)"
        )));
    }
    let branch: Vec<usize> = verts
        .iter()
        .copied()
        .filter(|&v| adj[v].len() >= 3)
        .collect();
    if branch.is_empty() {
        return AdeComponent::new(AdeKind::A, k);
    }
    if branch.len() > 1 || adj[branch[0]].len() > 3 {
        return Err(Error::NotNegativeDefinite(
            "tree with more than one branch point or a vertex of degree > 3".into(),
        ));
    }
    let b = branch[0];
    let mut arms: Vec<usize> = adj[b]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (b, start, 1);
            while let Some(&next) = adj[cur].iter().find(|&&n| n != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, x] => AdeComponent::new(AdeKind::D, x + 3),
        [1, 2, 2] => AdeComponent::new(AdeKind::E, 6),
        [1, 2, 3] => AdeComponent::new(AdeKind::E, 7),
        [1, 2, 4] => AdeComponent::new(AdeKind::E, 8),
        _ => Err(Error::NotNegativeDefinite(format!(
            "tree with arms {arms:?} is not a Dynkin diagram"
        ))),
    }
}

/// Connected components of the intersection graph with their ADE labels.
/// Each component lists indices into `roots` in increasing order; components
/// are ordered by their smallest index.
pub fn dynkin_components(
    lat: &PicLattice,
    roots: &[DivisorClass],
) -> Result<Vec<(AdeComponent, Vec<usize>)>> {
    validate_simple_roots(lat, roots)?;
    let n = roots.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if lat.dot(&roots[i], &roots[j]) == 1 {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut verts = vec![s];
        comp[s] = s;
        let mut i = 0;
        while i < verts.len() {
            for &w in &adj[verts[i]] {
                if comp[w] == usize::MAX {
                    comp[w] = s;
                    verts.push(w);
                }
            }
            i += 1;
        }
        verts.sort_unstable();
        out.push((recognize(&adj, &verts)?, verts));
    }
    Ok(out)
}

/// ADE type of a configuration of simple roots.
pub fn ade_type(lat: &PicLattice, simple_roots: &[DivisorClass]) -> Result<AdeType> {
    Ok(AdeType::new(
        dynkin_components(lat, simple_roots)?
            .into_iter()
            .map(|(c, _)| c)
            .collect(),
    ))
}
