//! Exact sparse polynomials over the rationals with weighted gradings.
//!
//! Variables are identified by name. A [`Grading`] assigns each variable a
//! weight vector (one entry per factor of a product ambient); names without
//! a weight, such as the parameters `t`, `a`, `lambda` of a group action,
//! have weight zero.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub use parse::{parse_equation, parse_poly};

pub type Coeff = Ratio<i128>;

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(String, u32)>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct WPoly {
    terms: BTreeMap<Monomial, Coeff>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl WPoly {
    pub fn zero() -> Self {
        WPoly::default()
    }

    pub fn constant(c: Coeff) -> Self {
        let mut p = WPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn int(c: i128) -> Self {
        WPoly::constant(Coeff::from(c))
    }

    pub fn one() -> Self {
        WPoly::int(1)
    }

    pub fn var(name: &str) -> Self {
        let mut p = WPoly::zero();
        p.add_term(vec![(name.to_string(), 1)], Coeff::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Coeff::zero);
        *e += c;
        if e.is_zero() {
            let key: Vec<_> = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap_or_default();
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Names occurring with positive exponent, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(n, _)| n.clone()))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn scale(&self, c: Coeff) -> WPoly {
        let mut out = WPoly::zero();
        for (m, k) in &self.terms {
            out.add_term(m.clone(), *k * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> WPoly {
        let mut out = WPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Replace variables by polynomials; unmapped names stay.
    pub fn substitute(&self, map: &BTreeMap<String, WPoly>) -> WPoly {
        let mut cache: BTreeMap<(String, u32), WPoly> = BTreeMap::new();
        let mut out = WPoly::zero();
        for (m, c) in &self.terms {
            let mut term = WPoly::constant(*c);
            for (name, e) in m {
                let factor = match map.get(name) {
                    Some(img) => cache
                        .entry((name.clone(), *e))
                        .or_insert_with(|| img.pow(*e))
                        .clone(),
                    None => {
                        let mut p = WPoly::zero();
                        p.add_term(vec![(name.clone(), *e)], Coeff::one());
                        p
                    }
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        out
    }

    /// Reduce modulo `var^2 = value`, where `value` does not involve `var`.
    /// Used to adjoin square roots such as `i` with `i^2 = -1`.
    pub fn reduce_square(&self, var: &str, value: &WPoly) -> Result<WPoly> {
        if value.variables().iter().any(|v| v == var) {
            return invalid(format!("`{var}^2 = {value}` is not a reduction rule"));
        }
        let mut out = WPoly::zero();
        for (m, c) in &self.terms {
            let mut term = WPoly::constant(*c);
            for (name, e) in m {
                let factor = if name == var {
                    let mut p = value.pow(e / 2);
                    if e % 2 == 1 {
                        p = &p * &WPoly::var(var);
                    }
                    p
                } else {
                    let mut p = WPoly::zero();
                    p.add_term(vec![(name.clone(), *e)], Coeff::one());
                    p
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Partial derivative.
    pub fn derivative(&self, var: &str) -> WPoly {
        let mut out = WPoly::zero();
        for (m, c) in &self.terms {
            if let Some(pos) = m.iter().position(|(n, _)| n == var) {
                let e = m[pos].1;
                let mut m2 = m.clone();
                if e == 1 {
                    m2.remove(pos);
                } else {
                    m2[pos].1 = e - 1;
                }
                out.add_term(m2, *c * Coeff::from(e as i128));
            }
        }
        out
    }

    /// Value when every variable is given a rational value.
    pub fn evaluate(&self, point: &BTreeMap<String, Coeff>) -> Result<Coeff> {
        let mut total = Coeff::zero();
        for (m, c) in &self.terms {
            let mut v = *c;
            for (name, e) in m {
                let x = point
                    .get(name)
                    .ok_or_else(|| Error::InvalidArgument(format!("no value for `{name}`")))?;
                v *= x.pow(*e as i32);
            }
            total += v;
        }
        Ok(total)
    }

    /// The single term, if this is a nonzero monomial times a coefficient.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Coeff)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().unwrap())
    }
}

impl Add for &WPoly {
    type Output = WPoly;
    fn add(self, rhs: &WPoly) -> WPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }
}

impl Sub for &WPoly {
    type Output = WPoly;
    fn sub(self, rhs: &WPoly) -> WPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -*c);
        }
        out
    }
}

impl Neg for &WPoly {
    type Output = WPoly;
    fn neg(self) -> WPoly {
        self.scale(-Coeff::one())
    }
}

impl Mul for &WPoly {
    type Output = WPoly;
    fn mul(self, rhs: &WPoly) -> WPoly {
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                *acc.entry(mono_mul(a, b)).or_insert_with(Coeff::zero) += *x * *y;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        WPoly { terms: acc }
    }
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest total exponent first reads closer to hand-written forms
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| std::cmp::Reverse(m.iter().map(|(_, e)| *e).sum::<u32>()));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts = Vec::new();
            if !a.is_one() || m.is_empty() {
                parts.push(a.to_string());
            }
            for (n, e) in m {
                parts.push(if *e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WPoly({self})")
    }
}

impl FromStr for WPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

/// Weights of the ambient variables; every other name has weight zero.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Grading(pub BTreeMap<String, Vec<i64>>);

impl Grading {
    /// Single grading from `(name, weight)` pairs.
    pub fn weighted(vars: &[(&str, i64)]) -> Self {
        Grading(
            vars.iter()
                .map(|(n, w)| (n.to_string(), vec![*w]))
                .collect(),
        )
    }

    pub fn components(&self) -> usize {
        self.0.values().next().map_or(1, Vec::len)
    }

    pub fn weight(&self, name: &str) -> Vec<i64> {
        self.0
            .get(name)
            .cloned()
            .unwrap_or_else(|| vec![0; self.components()])
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Vec<i64> {
        let mut d = vec![0; self.components()];
        for (n, e) in m {
            for (x, w) in d.iter_mut().zip(self.weight(n)) {
                *x += w * *e as i64;
            }
        }
        d
    }

    pub fn variables(&self) -> impl Iterator<Item = &String> {
        self.0.keys()
    }
}

/// Every term has weighted degree `degree`.
pub fn is_quasi_homogeneous(f: &WPoly, grading: &Grading, degree: &[i64]) -> bool {
    !f.is_zero() && f.terms().all(|(m, _)| grading.monomial_degree(m) == degree)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamDomain {
    /// Nonzero scalar.
    Unit,
    /// Arbitrary scalar.
    Additive,
    /// Free modulus of a family, e.g. `lambda` outside `{0, 1}`.
    Modulus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameter {
    pub name: String,
    pub domain: ParamDomain,
}

/// A family of graded substitutions with `f o phi = lambda f`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupActionFamily {
    pub substitution: BTreeMap<String, WPoly>,
    pub parameters: Vec<Parameter>,
    pub multiplier: WPoly,
}

impl GroupActionFamily {
    pub fn identity() -> Self {
        GroupActionFamily {
            substitution: BTreeMap::new(),
            parameters: Vec::new(),
            multiplier: WPoly::one(),
        }
    }

    /// Each image has the weighted degree of the variable it replaces.
    pub fn is_graded(&self, grading: &Grading) -> bool {
        self.substitution
            .iter()
            .all(|(v, img)| img.is_zero() || is_quasi_homogeneous(img, grading, &grading.weight(v)))
    }
}

/// `f o phi - lambda f == 0` identically in variables and parameters.
pub fn check_invariance(f: &WPoly, action: &GroupActionFamily) -> Result<bool> {
    let params: Vec<&str> = action.parameters.iter().map(|p| p.name.as_str()).collect();
    match action.multiplier.as_monomial() {
        Some((m, _)) if m.iter().all(|(n, _)| params.contains(&n.as_str())) => {}
        _ => {
            return invalid(format!(
                "multiplier `{}` is not a monomial in the parameters",
                action.multiplier
            ))
        }
    }
    let lhs = f.substitute(&action.substitution);
    let rhs = &action.multiplier * f;
    Ok((&lhs - &rhs).is_zero())
}

/// `f` vanishes identically on the parametrized curve.
pub fn vanishes_on_parametrized_curve(f: &WPoly, param: &BTreeMap<String, WPoly>) -> bool {
    f.substitute(param).is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    NotOnSurface,
    Smooth,
    Singular,
}

/// Jacobian test at a point of the affine chart `chart = 1`. `point` gives
/// the other coordinates; `grading` must give `chart` weight 1 in a single
/// grading.
pub fn point_status(
    f: &WPoly,
    grading: &Grading,
    chart: &str,
    point: &BTreeMap<String, Coeff>,
) -> Result<PointStatus> {
    if grading.components() != 1 || grading.weight(chart) != [1] {
        return invalid(format!(
            "chart `{chart}` must have weight 1 in a single grading"
        ));
    }
    let mut full = point.clone();
    full.insert(chart.to_string(), Coeff::one());
    for v in grading.variables() {
        if !full.contains_key(v) {
            return invalid(format!("point has no coordinate `{v}`"));
        }
    }
    if !f.evaluate(&full)?.is_zero() {
        return Ok(PointStatus::NotOnSurface);
    }
    // Euler's identity makes the chart derivative redundant, but checking
    // every partial keeps the test chart-independent.
    for v in grading.variables() {
        if !f.derivative(v).evaluate(&full)?.is_zero() {
            return Ok(PointStatus::Smooth);
        }
    }
    Ok(PointStatus::Singular)
}

/// `true` iff the point is singular; a point off the surface is an error.
pub fn singular_at(
    f: &WPoly,
    grading: &Grading,
    chart: &str,
    point: &BTreeMap<String, Coeff>,
) -> Result<bool> {
    match point_status(f, grading, chart, point)? {
        PointStatus::NotOnSurface => invalid("point is not on the surface"),
        s => Ok(s == PointStatus::Singular),
    }
}
