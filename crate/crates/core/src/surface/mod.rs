//! Du Val del Pezzo surfaces modelled by their minimal resolution: a Picard
//! lattice together with the classes of the contracted (-2)-curves.

mod classgroup;
mod enumerate;
mod graph;
mod realize;

pub use classgroup::{ClassElement, ClassGroup};
pub use enumerate::{enumerate_configs, orbit_key, weyl_equivalent, Fingerprint};
pub use graph::{graphs_isomorphic, DualGraph, NodeColor};
pub use realize::{realizable_graphs, realize_graph};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::lattice::{DivisorClass, PicLattice};
use crate::par::Parallelism;
use crate::rootsys::{
    brute_force_classes, dynkin_components, enumerate_minus_one_classes, reflect, AdeComponent,
    AdeType,
};

/// Exact rational number used for intersection numbers on the singular surface.
pub type Rational = Ratio<i64>;

/// A lattice plus a validated list of simple roots. The lines are computed on
/// construction.
#[derive(Clone, Debug)]
pub struct SurfaceConfig {
    lattice: PicLattice,
    simple_roots: Vec<DivisorClass>,
    components: Vec<(AdeComponent, Vec<usize>)>,
    lines: Vec<DivisorClass>,
}

impl SurfaceConfig {
    pub fn new(lattice: PicLattice, simple_roots: Vec<DivisorClass>) -> Result<Self> {
        let components = dynkin_components(&lattice, &simple_roots)?;
        if simple_roots.len() + 1 > lattice.rank() {
            return invalid(format!(
                "{} simple roots in a rank {} lattice leave no Picard rank",
                simple_roots.len(),
                lattice.rank()
            ));
        }
        // A (-1)-class is the class of an irreducible curve iff it pairs
        // nonnegatively with every (-2)-curve. Effective (-2)-classes are
        // nonnegative combinations of the simple roots, so testing the simple
        // roots suffices.
        let lines = enumerate_minus_one_classes(&lattice)
            .into_iter()
            .filter(|e| simple_roots.iter().all(|r| lattice.dot(e, r) >= 0))
            .collect();
        Ok(SurfaceConfig {
            lattice,
            simple_roots,
            components,
            lines,
        })
    }

    /// The configuration without singular points.
    pub fn smooth(lattice: PicLattice) -> Self {
        SurfaceConfig::new(lattice, Vec::new()).expect("empty configuration is valid")
    }

    pub fn lattice(&self) -> &PicLattice {
        &self.lattice
    }

    pub fn degree(&self) -> i64 {
        self.lattice.degree()
    }

    pub fn simple_roots(&self) -> &[DivisorClass] {
        &self.simple_roots
    }

    pub fn singularity_type(&self) -> AdeType {
        AdeType::new(self.components.iter().map(|(c, _)| *c).collect())
    }

    /// Connected components with their labels and root classes.
    pub fn components(&self) -> Vec<(AdeComponent, Vec<DivisorClass>)> {
        self.components
            .iter()
            .map(|(c, idx)| {
                (
                    *c,
                    idx.iter().map(|&i| self.simple_roots[i].clone()).collect(),
                )
            })
            .collect()
    }

    /// Classes of the (-1)-curves, sorted.
    pub fn lines(&self) -> &[DivisorClass] {
        &self.lines
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn picard_rank(&self) -> usize {
        self.lattice.rank() - self.simple_roots.len()
    }

    pub fn class_group(&self) -> ClassGroup {
        ClassGroup::quotient(self.lattice.rank(), &self.simple_roots)
    }

    /// Largest `t` with `-K` in `t Cl(X)`.
    pub fn fano_weil_index(&self) -> i64 {
        let minus_k = -self.lattice.canonical();
        self.class_group()
            .divisibility(&minus_k)
            .expect("-K has positive degree, so it is not torsion")
    }

    /// All roots in the span of the simple roots that are nonnegative
    /// combinations of them, i.e. the classes of effective (-2)-cycles.
    pub fn effective_roots(&self) -> Vec<DivisorClass> {
        let closure = crate::rootsys::reflection_closure(
            &self.lattice,
            &self.simple_roots,
            &self.simple_roots,
        )
        .expect("simple roots are roots");
        closure
            .into_iter()
            .filter(|r| {
                let coeffs = self.cartan_solve(r).expect("root lies in the span");
                coeffs.iter().all(|c| *c >= Rational::zero())
            })
            .collect()
    }

    /// Coefficients `a` with `sum a_i R_i . R_j = v . R_j` for all `j`.
    fn cartan_solve(&self, v: &DivisorClass) -> Result<Vec<Rational>> {
        let k = self.simple_roots.len();
        let lat = &self.lattice;
        let mut m: Vec<Vec<Rational>> = (0..k)
            .map(|j| {
                let mut row: Vec<Rational> = (0..k)
                    .map(|i| Rational::from(lat.dot(&self.simple_roots[i], &self.simple_roots[j])))
                    .collect();
                row.push(Rational::from(lat.dot(v, &self.simple_roots[j])));
                row
            })
            .collect();
        for col in 0..k {
            let Some(p) = (col..k).find(|&r| !m[r][col].is_zero()) else {
                return invalid("singular Cartan matrix");
            };
            m.swap(col, p);
            let pivot = m[col][col];
            for x in m[col].iter_mut() {
                *x /= pivot;
            }
            for r in 0..k {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col];
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        Ok(m.into_iter().map(|row| row[k]).collect())
    }

    /// `L^2` on the singular surface for the image `L` of the line `E`:
    /// `(E + sum a_i R_i)^2` where the correction is orthogonal to every `R_j`.
    pub fn pushforward_self_intersection(&self, line: &DivisorClass) -> Result<Rational> {
        if !self.lines.contains(line) {
            return invalid(format!("{line} is not a line of this configuration"));
        }
        let lat = &self.lattice;
        let neg: DivisorClass = -line;
        let a = self.cartan_solve(&neg)?;
        let mut sq = Rational::from(lat.dot(line, line));
        for (ai, r) in a.iter().zip(&self.simple_roots) {
            sq += ai * Rational::from(lat.dot(line, r));
        }
        Ok(sq)
    }

    /// Lines meeting the singular point given by one full component.
    pub fn lines_through_component(&self, component: &[DivisorClass]) -> Result<Vec<DivisorClass>> {
        let mut want = component.to_vec();
        want.sort();
        let found = self.components.iter().any(|(_, idx)| {
            let mut have: Vec<_> = idx.iter().map(|&i| self.simple_roots[i].clone()).collect();
            have.sort();
            have == want
        });
        if !found {
            return invalid("not a connected component of the configuration");
        }
        Ok(self
            .lines
            .iter()
            .filter(|e| component.iter().any(|r| self.lattice.dot(e, r) > 0))
            .cloned()
            .collect())
    }

    /// No line lies in the smooth locus.
    pub fn is_weakly_minimal(&self) -> bool {
        self.lines
            .iter()
            .all(|e| self.simple_roots.iter().any(|r| self.lattice.dot(e, r) > 0))
    }

    /// Fibre classes of conic bundles on the singular surface: nef classes
    /// `F` with `F^2 = 0`, `K.F = -2` that are trivial on every contracted
    /// root, so that the fibration factors through the contraction.
    ///
    /// Candidates come from [`brute_force_classes`] with the exact
    /// Cauchy-Schwarz bound for `(F^2, K.F) = (0, -2)`. Nefness is tested on
    /// the simple roots and the lines, which generate the cone of curves.
    pub fn conic_bundle_classes(&self) -> Vec<DivisorClass> {
        let lat = &self.lattice;
        brute_force_classes(lat, 0, -2, Parallelism::Sequential)
            .into_iter()
            .filter(|f| {
                self.simple_roots.iter().all(|r| lat.dot(f, r) == 0)
                    && self.lines.iter().all(|e| lat.dot(f, e) >= 0)
            })
            .collect()
    }

    pub fn has_conic_bundle(&self) -> bool {
        !self.conic_bundle_classes().is_empty()
    }

    /// Circles are the simple roots in input order, bullets the lines in
    /// sorted order.
    pub fn dual_graph(&self) -> DualGraph {
        let lat = &self.lattice;
        let curves: Vec<&DivisorClass> = self.simple_roots.iter().chain(&self.lines).collect();
        let mut nodes = vec![NodeColor::Circle; self.simple_roots.len()];
        nodes.extend(std::iter::repeat_n(NodeColor::Bullet, self.lines.len()));
        let mut edges = Vec::new();
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                let p = lat.dot(curves[i], curves[j]);
                if p > 0 {
                    edges.push((i, j, p as u32));
                }
            }
        }
        DualGraph::new(nodes, edges).expect("intersection graph is well formed")
    }

    /// Image of the configuration under the reflection in `root`.
    pub fn reflected(&self, root: &DivisorClass) -> Result<SurfaceConfig> {
        let moved = self
            .simple_roots
            .iter()
            .map(|c| reflect(&self.lattice, root, c))
            .collect::<Result<Vec<_>>>()?;
        SurfaceConfig::new(self.lattice.clone(), moved)
    }
}

/// Whether a rational is `-1/n` for a positive integer `n`.
pub fn is_minus_one_over_n(x: &Rational) -> Option<i64> {
    (x.numer() == &-1 && x.denom() > &0)
        .then(|| *x.denom())
        .or_else(|| (x.numer() == &1 && x.denom() < &0).then(|| -*x.denom()))
        .filter(|_| !x.is_one())
}
