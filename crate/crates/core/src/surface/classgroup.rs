//! `Cl(X) = Pic(X~) / <simple roots>` via Smith normal form.

use num_integer::Integer;
use serde::Serialize;

use crate::lattice::DivisorClass;
use crate::snf::{mat_vec, smith_normal_form, IntMatrix};

/// Presentation of a finitely generated abelian group as `Z^n / <relations>`.
///
/// With `U M V = D` the Smith form of the relation matrix `M` (relations as
/// columns), a vector `v` has coordinates `w = U v`, and the relation lattice
/// becomes `sum d_i Z e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    free_rank: usize,
    torsion: Vec<i64>,
    transform: IntMatrix,
    /// Invariant factor per coordinate of `w`; 0 marks a free coordinate.
    moduli: Vec<i64>,
}

/// Image of a class in a [`ClassGroup`], in Smith coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassElement {
    pub torsion: Vec<i64>,
    pub free: Vec<i64>,
}

impl ClassElement {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(|&x| x == 0)
    }
}

impl ClassGroup {
    /// Quotient of `Z^rank` by the span of `relations`.
    pub fn quotient(rank: usize, relations: &[DivisorClass]) -> Self {
        if relations.is_empty() {
            return ClassGroup {
                free_rank: rank,
                torsion: Vec::new(),
                transform: crate::snf::identity(rank),
                moduli: vec![0; rank],
            };
        }
        let m: IntMatrix = (0..rank)
            .map(|i| relations.iter().map(|r| r.coords()[i]).collect())
            .collect();
        let snf = smith_normal_form(&m);
        let mut moduli = vec![0; rank];
        moduli[..snf.diag.len()].copy_from_slice(&snf.diag);
        ClassGroup {
            free_rank: moduli.iter().filter(|&&d| d == 0).count(),
            torsion: moduli.iter().copied().filter(|&d| d >= 2).collect(),
            transform: snf.left,
            moduli,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors `d1 | d2 | ...`, each at least 2.
    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn torsion_order(&self) -> i64 {
        self.torsion.iter().product()
    }

    pub fn class_of(&self, v: &DivisorClass) -> ClassElement {
        let w = mat_vec(&self.transform, v.coords());
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (x, &d) in w.into_iter().zip(&self.moduli) {
            match d {
                0 => free.push(x),
                1 => {}
                _ => torsion.push(x.rem_euclid(d)),
            }
        }
        ClassElement { torsion, free }
    }

    /// Whether the class of `v` lies in `t * Cl`.
    ///
    /// In Smith coordinates this asks, per coordinate, for `w_i = t x_i + d_i y_i`,
    /// which is solvable iff `gcd(t, d_i) | w_i` (with `d_i = 0` on free coordinates).
    pub fn is_divisible(&self, v: &DivisorClass, t: i64) -> bool {
        assert!(t >= 1);
        let w = mat_vec(&self.transform, v.coords());
        w.iter()
            .zip(&self.moduli)
            .all(|(&x, &d)| x % t.gcd(&d) == 0)
    }

    /// Largest `t` with the class of `v` in `t * Cl`. `None` if the class is
    /// torsion (every `t` works).
    pub fn divisibility(&self, v: &DivisorClass) -> Option<i64> {
        let w = mat_vec(&self.transform, v.coords());
        let g = w
            .iter()
            .zip(&self.moduli)
            .filter(|(_, &d)| d == 0)
            .fold(0i64, |g, (&x, _)| g.gcd(&x));
        if g == 0 {
            return None;
        }
        (1..=g)
            .rev()
            .find(|&t| g % t == 0 && self.is_divisible(v, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc(v: &[i64]) -> DivisorClass {
        DivisorClass::new(v.to_vec())
    }

    #[test]
    fn single_relation() {
        let cl = ClassGroup::quotient(3, &[dc(&[0, 1, -1])]);
        assert_eq!(cl.free_rank(), 2);
        assert!(cl.torsion().is_empty());
        assert_eq!(cl.class_of(&dc(&[0, 1, 0])), cl.class_of(&dc(&[0, 0, 1])));
    }

    #[test]
    fn cyclic_torsion() {
        // Z^2 / <(2, 0), (0, 3)> = Z/6
        let cl = ClassGroup::quotient(2, &[dc(&[2, 0]), dc(&[0, 3])]);
        assert_eq!(cl.free_rank(), 0);
        assert_eq!(cl.torsion(), &[6]);
        assert!(cl.class_of(&dc(&[2, 3])).is_zero());
        assert!(!cl.class_of(&dc(&[1, 0])).is_zero());
        assert_eq!(cl.divisibility(&dc(&[1, 1])), None);
    }

    #[test]
    fn divisibility_with_torsion() {
        // Z^2 / <(0, 2)> = Z + Z/2
        let cl = ClassGroup::quotient(2, &[dc(&[0, 2])]);
        assert_eq!(cl.divisibility(&dc(&[4, 0])), Some(4));
        // (4, 1): free part 4, torsion part nonzero mod 2 -> only odd t
        assert_eq!(cl.divisibility(&dc(&[4, 1])), Some(1));
        assert_eq!(cl.divisibility(&dc(&[3, 1])), Some(3));
    }
}
