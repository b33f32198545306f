//! Picard lattices of weak del Pezzo surfaces.
//!
//! Two families are modelled: the blow-up of the plane in `n` points, with
//! basis `h, e1, ..., en`, and the Hirzebruch surfaces `F0` and `F2`, with
//! basis `f` (fibre) and `s` (the section with `s^2 = -m`).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// An integer vector in the basis of some [`PicLattice`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(Vec<i64>);

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass(coords)
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        DivisorClass(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: i64, other: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), other.len(), "rank mismatch");
        DivisorClass(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + k * b)
                .collect(),
        )
    }

    /// Lexicographic positivity: the first nonzero coordinate is positive.
    pub fn is_lex_positive(&self) -> bool {
        self.0.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.add_scaled(1, rhs)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.add_scaled(-1, rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|x| -x).collect())
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass(rhs.0.iter().map(|x| self * x).collect())
    }
}

/// Which constructor produced a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LatticeKind {
    /// Blow-up of the plane in `points` points.
    Blowup { points: usize },
    /// Hirzebruch surface `F_m`.
    Hirzebruch { m: u8 },
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeKind::Blowup { points } => write!(f, "Bl_{points}(P2)"),
            LatticeKind::Hirzebruch { m } => write!(f, "F{m}"),
        }
    }
}

#[derive(Default)]
pub(crate) struct Cache {
    pub(crate) roots: OnceLock<Vec<DivisorClass>>,
    pub(crate) minus_one: OnceLock<Vec<DivisorClass>>,
}

/// One cache per lattice kind, shared by every constructed instance.
fn shared_cache(kind: LatticeKind) -> Arc<Cache> {
    static CACHES: OnceLock<Mutex<HashMap<LatticeKind, Arc<Cache>>>> = OnceLock::new();
    let mut map = CACHES
        .get_or_init(Default::default)
        .lock()
        .unwrap_or_else(|e| e.into_inner());
    map.entry(kind).or_default().clone()
}

/// Gram matrix plus canonical class. Cloning is cheap; enumerations of roots
/// and (-1)-classes are computed once and shared between clones.
#[derive(Clone)]
pub struct PicLattice {
    kind: LatticeKind,
    gram: Vec<Vec<i64>>,
    canonical: DivisorClass,
    degree: i64,
    pub(crate) cache: Arc<Cache>,
}

impl PartialEq for PicLattice {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for PicLattice {}

impl fmt::Debug for PicLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PicLattice")
            .field("kind", &self.kind)
            .field("degree", &self.degree)
            .finish()
    }
}

/// Lattice of the plane blown up in `n_points` points, `0 <= n_points <= 8`.
pub fn blowup_of_p2(n_points: usize) -> Result<PicLattice> {
    if n_points > 8 {
        return invalid(format!("blow-up of P2 needs 0..=8 points, got {n_points}"));
    }
    let rank = n_points + 1;
    let mut gram = vec![vec![0; rank]; rank];
    gram[0][0] = 1;
    for (i, row) in gram.iter_mut().enumerate().skip(1) {
        row[i] = -1;
    }
    let mut k = vec![1; rank];
    k[0] = -3;
    Ok(PicLattice::build(
        LatticeKind::Blowup { points: n_points },
        gram,
        DivisorClass(k),
    ))
}

/// Lattice of the Hirzebruch surface `F_m` for `m` in `{0, 2}`.
pub fn hirzebruch(m: i64) -> Result<PicLattice> {
    if m != 0 && m != 2 {
        return invalid(format!(
            "Hirzebruch lattice supports m in {{0, 2}}, got {m}"
        ));
    }
    let gram = vec![vec![0, 1], vec![1, -m]];
    // -K = 2s + (m + 2) f
    let canonical = DivisorClass(vec![-2 - m, -2]);
    Ok(PicLattice::build(
        LatticeKind::Hirzebruch { m: m as u8 },
        gram,
        canonical,
    ))
}

impl PicLattice {
    fn build(kind: LatticeKind, gram: Vec<Vec<i64>>, canonical: DivisorClass) -> Self {
        let mut lat = PicLattice {
            kind,
            gram,
            canonical,
            degree: 0,
            cache: shared_cache(kind),
        };
        lat.degree = lat.dot(&lat.canonical, &lat.canonical);
        lat
    }

    pub fn from_kind(kind: LatticeKind) -> Result<Self> {
        match kind {
            LatticeKind::Blowup { points } => blowup_of_p2(points),
            LatticeKind::Hirzebruch { m } => hirzebruch(m as i64),
        }
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    /// `K . K`.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_blowup(&self) -> bool {
        matches!(self.kind, LatticeKind::Blowup { .. })
    }

    /// Checked intersection pairing.
    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        if a.len() != self.rank() || b.len() != self.rank() {
            return invalid(format!(
                "pairing classes of length {} and {} in a rank {} lattice",
                a.len(),
                b.len(),
                self.rank()
            ));
        }
        Ok(self.dot(a, b))
    }

    /// Unchecked pairing for internal hot loops.
    pub(crate) fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> i64 {
        debug_assert_eq!(a.len(), self.rank());
        debug_assert_eq!(b.len(), self.rank());
        let (a, b) = (a.coords(), b.coords());
        match self.kind {
            LatticeKind::Blowup { .. } => {
                a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
            }
            LatticeKind::Hirzebruch { .. } => {
                let mut s = 0;
                for (i, row) in self.gram.iter().enumerate() {
                    for (j, g) in row.iter().enumerate() {
                        s += a[i] * g * b[j];
                    }
                }
                s
            }
        }
    }

    pub fn self_intersection(&self, a: &DivisorClass) -> i64 {
        self.dot(a, a)
    }

    pub fn k_dot(&self, a: &DivisorClass) -> i64 {
        self.dot(&self.canonical, a)
    }

    pub fn contains(&self, a: &DivisorClass) -> bool {
        a.len() == self.rank()
    }

    /// Exact determinant of the Gram matrix.
    pub fn determinant(&self) -> i64 {
        crate::snf::determinant(&self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn blowup_basics() {
        let p2 = blowup_of_p2(0).unwrap();
        assert_eq!(p2.rank(), 1);
        assert_eq!(p2.canonical().coords(), &[-3]);
        assert_eq!(p2.degree(), 9);

        let cubic = blowup_of_p2(6).unwrap();
        assert_eq!(cubic.canonical().coords(), &[-3, 1, 1, 1, 1, 1, 1]);
        assert_eq!(cubic.degree(), 3);

        let d1 = blowup_of_p2(8).unwrap();
        assert_eq!((d1.rank(), d1.degree()), (9, 1));

        assert!(blowup_of_p2(9).is_err());
    }

    #[test]
    fn pairing_examples() {
        let lat = blowup_of_p2(2).unwrap();
        let h = DivisorClass::unit(3, 0);
        let e1 = DivisorClass::unit(3, 1);
        assert_eq!(lat.pair(&h, &h).unwrap(), 1);
        assert_eq!(lat.pair(lat.canonical(), &e1).unwrap(), -1);
        assert_eq!(lat.pair(lat.canonical(), lat.canonical()).unwrap(), 7);
        assert!(lat.pair(&h, &DivisorClass::unit(2, 0)).is_err());
    }

    #[test]
    fn hirzebruch_basics() {
        let f0 = hirzebruch(0).unwrap();
        assert_eq!(f0.canonical().coords(), &[-2, -2]);
        assert_eq!(f0.degree(), 8);

        let f2 = hirzebruch(2).unwrap();
        let s = DivisorClass::new(vec![0, 1]);
        assert_eq!(f2.pair(&s, &s).unwrap(), -2);
        assert_eq!(f2.k_dot(&s), 0);
        assert_eq!(f2.degree(), 8);

        assert!(hirzebruch(1).is_err());
        assert!(hirzebruch(3).is_err());
    }

    #[test]
    fn unimodular_and_degrees() {
        for n in 0..=8 {
            let lat = blowup_of_p2(n).unwrap();
            assert_eq!(lat.determinant().abs(), 1);
            assert_eq!(lat.degree(), 9 - n as i64);
        }
        for m in [0, 2] {
            assert_eq!(hirzebruch(m).unwrap().determinant().abs(), 1);
        }
    }

    fn lattices() -> impl Strategy<Value = PicLattice> {
        prop_oneof![
            (0usize..=8).prop_map(|n| blowup_of_p2(n).unwrap()),
            prop_oneof![Just(0i64), Just(2i64)].prop_map(|m| hirzebruch(m).unwrap()),
        ]
    }

    fn vectors(rank: usize) -> impl Strategy<Value = DivisorClass> {
        proptest::collection::vec(-6i64..=6, rank).prop_map(DivisorClass::new)
    }

    proptest! {
        #[test]
        fn pairing_symmetric_bilinear(
            (lat, a, b, c, k) in lattices().prop_flat_map(|lat| {
                let r = lat.rank();
                (Just(lat), vectors(r), vectors(r), vectors(r), -5i64..=5)
            })
        ) {
            prop_assert_eq!(lat.dot(&a, &b), lat.dot(&b, &a));
            let ab = &a + &b;
            prop_assert_eq!(lat.dot(&ab, &c), lat.dot(&a, &c) + lat.dot(&b, &c));
            prop_assert_eq!(lat.dot(&(k * &a), &c), k * lat.dot(&a, &c));
        }
    }
}
