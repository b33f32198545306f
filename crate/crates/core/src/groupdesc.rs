//! Symbolic descriptors of connected algebraic groups.
//!
//! ```text
//! expr    := product ('x|' ('(' int ')')? product)?
//! product := factor ('x' factor)*
//! factor  := atom | '(' expr ')'
//! atom    := '1' | 'Ga' ('^' int)? | 'Gm' ('^' int)? | 'B' int | 'U' int
//!          | 'PGL' int | 'GL' int ('/mu' int)?
//! ```
//!
//! `x` is the direct product and binds tighter than the semidirect product
//! `x|`. The twisted form `Ga x|(n) Gm` is the semidirect product where `Gm`
//! acts on `Ga` with weight `n`; the sign of `n` is dropped on parsing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// Vector group of dimension k.
    Ga(u32),
    /// Torus of rank k.
    Gm(u32),
    /// Borel subgroup of `PGL_n`.
    Borel(u32),
    /// Maximal unipotent subgroup of `PGL_n`.
    Unipotent(u32),
    Pgl(u32),
    /// `GL_n / mu_m`; `m = 1` is `GL_n` itself.
    Gl {
        n: u32,
        mu: u32,
    },
}

impl Atom {
    pub fn dimension(&self) -> u32 {
        match *self {
            Atom::Ga(k) | Atom::Gm(k) => k,
            Atom::Borel(n) => n * (n + 1) / 2 - 1,
            Atom::Unipotent(n) => n * (n - 1) / 2,
            Atom::Pgl(n) => n * n - 1,
            Atom::Gl { n, .. } => n * n,
        }
    }

    /// Dimension of a maximal torus.
    pub fn rank(&self) -> u32 {
        match *self {
            Atom::Ga(_) | Atom::Unipotent(_) => 0,
            Atom::Gm(k) => k,
            Atom::Borel(n) | Atom::Pgl(n) => n - 1,
            Atom::Gl { n, .. } => n,
        }
    }

    /// True when the unipotent radical is trivial.
    pub fn is_reductive(&self) -> bool {
        !matches!(self, Atom::Ga(_) | Atom::Unipotent(_) | Atom::Borel(_))
    }

    pub fn is_solvable(&self) -> bool {
        !matches!(self, Atom::Pgl(_) | Atom::Gl { .. })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::Ga(1) => write!(f, "Ga"),
            Atom::Gm(1) => write!(f, "Gm"),
            Atom::Ga(k) => write!(f, "Ga^{k}"),
            Atom::Gm(k) => write!(f, "Gm^{k}"),
            Atom::Borel(n) => write!(f, "B{n}"),
            Atom::Unipotent(n) => write!(f, "U{n}"),
            Atom::Pgl(n) => write!(f, "PGL{n}"),
            Atom::Gl { n, mu: 1 } => write!(f, "GL{n}"),
            Atom::Gl { n, mu } => write!(f, "GL{n}/mu{mu}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Atom(Atom),
    /// Direct product of at least two factors.
    Product(Vec<GroupExpr>),
    /// `normal x| acting`, with an optional twist for `Ga x|(n) Gm`.
    Semidirect {
        normal: Box<GroupExpr>,
        acting: Box<GroupExpr>,
        twist: Option<u32>,
    },
}

impl GroupExpr {
    pub fn atom(a: Atom) -> Self {
        GroupExpr::Atom(a)
    }

    pub fn trivial() -> Self {
        GroupExpr::Product(Vec::new())
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    fn atoms(&self) -> Vec<Atom> {
        match self {
            GroupExpr::Atom(a) => vec![*a],
            GroupExpr::Product(fs) => fs.iter().flat_map(|f| f.atoms()).collect(),
            GroupExpr::Semidirect { normal, acting, .. } => {
                let mut v = normal.atoms();
                v.extend(acting.atoms());
                v
            }
        }
    }

    pub fn dimension(&self) -> u32 {
        self.atoms().iter().map(Atom::dimension).sum()
    }

    pub fn rank(&self) -> u32 {
        self.atoms().iter().map(Atom::rank).sum()
    }

    pub fn is_reductive(&self) -> bool {
        self.atoms().iter().all(Atom::is_reductive)
    }

    pub fn is_solvable(&self) -> bool {
        self.atoms().iter().all(Atom::is_solvable)
    }

    /// True for `Gm^k`, `k >= 1`.
    pub fn is_torus(&self) -> bool {
        matches!(self.normalize(), GroupExpr::Atom(Atom::Gm(_)))
    }

    /// Canonical form: nested products are flattened, tori and vector groups
    /// in a direct product are merged, `Ga x|(1) Gm` becomes `B2` and
    /// `Ga x|(0) Gm` becomes `Ga x Gm`.
    pub fn normalize(&self) -> GroupExpr {
        match self {
            GroupExpr::Atom(a) => GroupExpr::Atom(*a),
            GroupExpr::Product(fs) => {
                let mut flat = Vec::new();
                for f in fs {
                    match f.normalize() {
                        GroupExpr::Product(inner) => flat.extend(inner),
                        g => flat.push(g),
                    }
                }
                let (mut ga, mut gm) = (0, 0);
                let mut rest = Vec::new();
                for f in flat {
                    match f {
                        GroupExpr::Atom(Atom::Ga(k)) => ga += k,
                        GroupExpr::Atom(Atom::Gm(k)) => gm += k,
                        g => rest.push(g),
                    }
                }
                let mut out = Vec::new();
                if ga > 0 {
                    out.push(GroupExpr::Atom(Atom::Ga(ga)));
                }
                if gm > 0 {
                    out.push(GroupExpr::Atom(Atom::Gm(gm)));
                }
                rest.sort_by_cached_key(|g| g.to_string());
                out.extend(rest);
                if out.len() == 1 {
                    out.pop().unwrap()
                } else {
                    GroupExpr::Product(out)
                }
            }
            GroupExpr::Semidirect {
                normal,
                acting,
                twist,
            } => {
                let normal = normal.normalize();
                let acting = acting.normalize();
                match twist {
                    Some(1) => GroupExpr::Atom(Atom::Borel(2)),
                    Some(0) => GroupExpr::Product(vec![normal, acting]).normalize(),
                    _ => GroupExpr::Semidirect {
                        normal: Box::new(normal),
                        acting: Box::new(acting),
                        twist: *twist,
                    },
                }
            }
        }
    }

    /// Equality up to [`GroupExpr::normalize`].
    pub fn equivalent(&self, other: &GroupExpr) -> bool {
        self.normalize() == other.normalize()
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let operand = |g: &GroupExpr, f: &mut fmt::Formatter<'_>| match g {
            GroupExpr::Semidirect { .. } => write!(f, "({g})"),
            _ => write!(f, "{g}"),
        };
        match self {
            GroupExpr::Atom(a) => write!(f, "{a}"),
            GroupExpr::Product(fs) if fs.is_empty() => write!(f, "1"),
            GroupExpr::Product(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    match g {
                        GroupExpr::Product(_) => write!(f, "({g})")?,
                        _ => operand(g, f)?,
                    }
                }
                Ok(())
            }
            GroupExpr::Semidirect {
                normal,
                acting,
                twist,
            } => {
                operand(normal, f)?;
                match twist {
                    Some(n) => write!(f, " x|({n}) ")?,
                    None => write!(f, " x| ")?,
                }
                operand(acting, f)
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.rest().starts_with('-') {
            self.pos += 1;
        }
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            self.pos = start;
            return self.err("expected an integer");
        }
        self.pos += digits;
        self.src[start..self.pos]
            .parse()
            .or_else(|_| self.err("integer out of range"))
    }

    fn positive(&mut self, min: i64) -> Result<u32> {
        let start = self.pos;
        let n = self.int()?;
        if n < min || n > u32::MAX as i64 {
            self.pos = start;
            return self.err(format!("expected an integer >= {min}"));
        }
        Ok(n as u32)
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let normal = self.product()?;
        if !self.eat("x|") {
            return Ok(normal);
        }
        // `x|(n)` is a twist only when the parenthesis is attached
        let twist = if self.rest().starts_with('(') {
            self.pos += 1;
            let n = self.int()?;
            if !self.eat(")") {
                return self.err("expected `)`");
            }
            Some(n.unsigned_abs() as u32)
        } else {
            None
        };
        let at = self.pos;
        let acting = self.product()?;
        if twist.is_some()
            && (normal != GroupExpr::Atom(Atom::Ga(1)) || acting != GroupExpr::Atom(Atom::Gm(1)))
        {
            self.pos = at;
            return self.err("a twist is only allowed in `Ga x|(n) Gm`");
        }
        Ok(GroupExpr::Semidirect {
            normal: Box::new(normal),
            acting: Box::new(acting),
            twist,
        })
    }

    fn product(&mut self) -> Result<GroupExpr> {
        let mut fs = vec![self.factor()?];
        loop {
            self.skip_ws();
            if self.rest().starts_with('x') && !self.rest().starts_with("x|") {
                self.pos += 1;
                fs.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if fs.len() == 1 {
            fs.pop().unwrap()
        } else {
            GroupExpr::Product(fs)
        })
    }

    fn factor(&mut self) -> Result<GroupExpr> {
        if self.eat("(") {
            let e = self.expr()?;
            if !self.eat(")") {
                return self.err("expected `)`");
            }
            return Ok(e);
        }
        if self.eat("1") {
            return Ok(GroupExpr::trivial());
        }
        let atom = if self.eat("Ga") {
            Atom::Ga(if self.eat("^") { self.positive(1)? } else { 1 })
        } else if self.eat("Gm") {
            Atom::Gm(if self.eat("^") { self.positive(1)? } else { 1 })
        } else if self.eat("PGL") {
            Atom::Pgl(self.positive(2)?)
        } else if self.eat("GL") {
            let n = self.positive(2)?;
            let mu = if self.eat("/mu") {
                self.positive(1)?
            } else {
                1
            };
            Atom::Gl { n, mu }
        } else if self.eat("B") {
            Atom::Borel(self.positive(2)?)
        } else if self.eat("U") {
            Atom::Unipotent(self.positive(2)?)
        } else {
            return self.err("expected a group atom");
        };
        Ok(GroupExpr::Atom(atom))
    }
}

impl FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}

impl Serialize for GroupExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> GroupExpr {
        s.parse().unwrap()
    }

    #[test]
    fn atoms_and_dimensions() {
        assert_eq!(g("Gm^2"), GroupExpr::Atom(Atom::Gm(2)));
        assert_eq!(g("Gm^2").rank(), 2);
        assert_eq!(g("B3").dimension(), 5);
        assert!(g("B3").is_solvable());
        assert!(!g("B3").is_reductive());
        assert_eq!(g("U3").dimension(), 3);
        assert_eq!(g("GL2/mu2").dimension(), 4);
        assert_eq!(g("PGL3").dimension(), 8);
        let p = g("PGL2 x PGL2");
        assert!(p.is_reductive());
        assert!(!p.is_solvable());
        assert_eq!(p.dimension(), 6);
        assert_eq!(p.rank(), 2);
    }

    #[test]
    fn semidirect_products() {
        let s = g("Ga^2 x| Gm");
        assert_eq!(s.dimension(), 3);
        assert!(!s.is_reductive());
        assert!(s.is_solvable());
        let t = g("Ga x|(3) Gm");
        assert!(matches!(t, GroupExpr::Semidirect { twist: Some(3), .. }));
        assert_eq!(g("Ga x|(-3) Gm"), t);
        assert_eq!(g("Ga^3 x| GL2/mu2").dimension(), 7);
        assert_eq!(g("Ga^2 x| GL2").rank(), 2);
        assert_eq!(g("U3 x| Gm").rank(), 1);
    }

    #[test]
    fn normalization() {
        assert!(g("Ga x|(1) Gm").equivalent(&g("B2")));
        assert!(!g("Ga x|(2) Gm").equivalent(&g("B2")));
        assert!(g("Ga x|(0) Gm").equivalent(&g("Gm x Ga")));
        assert!(g("Gm x Gm").equivalent(&g("Gm^2")));
        assert!(g("B2 x (Gm x B2)").equivalent(&g("Gm x B2 x B2")));
        assert!(g("Gm").is_torus());
        assert!(!g("B2").is_torus());
    }

    #[test]
    fn errors_carry_positions() {
        match "B2 x Qm".parse::<GroupExpr>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!("B1".parse::<GroupExpr>().is_err());
        assert!("Ga x|(2) Ga".parse::<GroupExpr>().is_err());
        assert!("(Gm".parse::<GroupExpr>().is_err());
        assert!("Gm Gm".parse::<GroupExpr>().is_err());
        assert!("".parse::<GroupExpr>().is_err());
    }

    #[test]
    fn table_strings_round_trip() {
        for s in [
            "Gm",
            "Ga",
            "Gm^2",
            "B2",
            "B3",
            "B2 x Gm",
            "B2 x B2",
            "U3 x| Gm",
            "Ga x|(3) Gm",
            "Ga x|(2) Gm",
            "Ga^2 x| Gm",
            "Ga^3 x| GL2/mu2",
            "Ga^2 x| GL2",
            "PGL2 x PGL2",
            "PGL3",
        ] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("(Ga x| Gm) x Gm").to_string(), "(Ga x| Gm) x Gm");
        assert_eq!(g("1"), GroupExpr::trivial());
        assert_eq!(g("1").dimension(), 0);
        assert!(g("1").is_reductive());
    }

    fn arb_atom() -> impl Strategy<Value = Atom> {
        prop_oneof![
            (1u32..4).prop_map(Atom::Ga),
            (1u32..4).prop_map(Atom::Gm),
            (2u32..5).prop_map(Atom::Borel),
            (2u32..5).prop_map(Atom::Unipotent),
            (2u32..5).prop_map(Atom::Pgl),
            (2u32..4, 1u32..3).prop_map(|(n, mu)| Atom::Gl { n, mu }),
        ]
    }

    fn arb_expr() -> impl Strategy<Value = GroupExpr> {
        let leaf = prop_oneof![
            arb_atom().prop_map(GroupExpr::Atom),
            (0u32..5).prop_map(|n| GroupExpr::Semidirect {
                normal: Box::new(GroupExpr::Atom(Atom::Ga(1))),
                acting: Box::new(GroupExpr::Atom(Atom::Gm(1))),
                twist: Some(n),
            }),
        ];
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..4).prop_map(GroupExpr::Product),
                (inner.clone(), inner).prop_map(|(a, b)| GroupExpr::Semidirect {
                    normal: Box::new(a),
                    acting: Box::new(b),
                    twist: None,
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_render_round_trip(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(text.parse::<GroupExpr>().unwrap(), e);
        }

        #[test]
        fn normalize_preserves_invariants(e in arb_expr()) {
            let n = e.normalize();
            prop_assert_eq!(n.dimension(), e.dimension());
            prop_assert_eq!(n.rank(), e.rank());
            prop_assert_eq!(n.is_reductive(), e.is_reductive());
            prop_assert_eq!(n.is_solvable(), e.is_solvable());
            prop_assert_eq!(n.normalize(), n.clone());
        }
    }
}
