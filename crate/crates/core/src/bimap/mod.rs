//! Conformal bilinear maps and biderivation residuals.
//!
//! A [`BilinearMap`] stores `φ_λ(e_i, e_j)` on generator pairs; values on
//! general elements follow the conformal rules `φ_λ(∂x, y) = −λ φ_λ(x, y)`
//! and `φ_λ(x, ∂y) = (∂+λ) φ_λ(x, y)`.
//!
//! Residuals are written once against the [`Pairing`] trait so the same
//! formulas drive concrete verification here and constraint assembly in the
//! solver.

mod families;
mod file;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{second_slot_subst, Algebra, AlgebraError, Element, Gen};
use crate::poly::{Poly, Rational, Subst, Var};

pub use families::{family_table, make_family, Family};
pub use file::{load_map, MapEntry, MapFile, MapTerm};

#[derive(Debug, Error)]
pub enum BimapError {
    #[error("{tag} takes {expected} arguments, got {got}")]
    Arity {
        tag: Identity,
        expected: usize,
        got: usize,
    },
    #[error("map belongs to algebra `{found}`, expected `{expected}`")]
    MismatchedAlgebra { expected: String, found: String },
    #[error("map value on ({0}) uses variable `{1}`; only d, l, b are allowed")]
    ForeignVariable(String, char),
    #[error("family not available: {0}")]
    InvalidFamily(String),
    #[error("the G-component family requires b = -1")]
    GComponentNeedsMinusOne,
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// The biderivation identities, each checked as `LHS − RHS`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    /// `φ_λ(x,y) + φ_{−∂−λ}(y,x)`
    Def1a,
    /// `φ_λ(x,[y_μ z]) − [(φ_λ(x,y))_{λ+μ} z] − [y_μ φ_λ(x,z)]`
    Def1b,
    /// `φ_{λ+μ}([x_μ y],z) − [x_μ φ_λ(y,z)] + [y_λ φ_μ(x,z)]`
    Lem1,
    /// `[(φ_μ(x,y))_{μ+γ} [u_λ v]] − [[x_μ y]_{μ+γ} φ_λ(u,v)]`
    Lem2,
}

impl Identity {
    pub const ALL: [Identity; 4] = [
        Identity::Def1a,
        Identity::Def1b,
        Identity::Lem1,
        Identity::Lem2,
    ];

    pub fn arity(self) -> usize {
        match self {
            Identity::Def1a => 2,
            Identity::Def1b | Identity::Lem1 => 3,
            Identity::Lem2 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Identity::Def1a => "def1a",
            Identity::Def1b => "def1b",
            Identity::Lem1 => "lem1",
            Identity::Lem2 => "lem2",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Identity {
    type Err = BimapError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| BimapError::UnknownIdentity(s.to_string()))
    }
}

/// Values produced by a [`Pairing`]: elements, or families of elements
/// indexed by unknowns.
pub trait PairingValue: Clone + Send {
    fn zero() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn neg(&self) -> Self;
    /// Applies a linear operation on elements componentwise.
    fn map_elements(&self, f: &dyn Fn(&Element) -> Element) -> Self;
    fn is_zero(&self) -> bool;

    fn sub_assign(&mut self, other: &Self) {
        self.add_assign(&other.neg());
    }
}

impl PairingValue for Element {
    fn zero() -> Self {
        Element::zero()
    }
    fn add_assign(&mut self, other: &Self) {
        Element::add_assign(self, other);
    }
    fn neg(&self) -> Self {
        Element::neg(self)
    }
    fn map_elements(&self, f: &dyn Fn(&Element) -> Element) -> Self {
        f(self)
    }
    fn is_zero(&self) -> bool {
        Element::is_zero(self)
    }
}

/// Anything that can be evaluated like a conformal bilinear map.
pub trait Pairing: Sync {
    type Value: PairingValue;

    fn algebra(&self) -> &Algebra;

    /// `φ_s(x, y)` for a spectral linear form `s`.
    fn eval(&self, x: &Element, y: &Element, spectral: &Poly) -> Self::Value;
}

fn spectral(v: Var) -> Poly {
    Poly::var(v)
}

fn sum(a: Var, b: Var) -> Poly {
    Poly::var(a) + Poly::var(b)
}

/// Evaluates `LHS − RHS` of an identity on a generator tuple.
pub fn residual_value<P: Pairing>(
    phi: &P,
    tag: Identity,
    args: &[Gen],
) -> Result<P::Value, BimapError> {
    if args.len() != tag.arity() {
        return Err(BimapError::Arity {
            tag,
            expected: tag.arity(),
            got: args.len(),
        });
    }
    let alg = phi.algebra();
    let e: Vec<Element> = args.iter().map(|&g| Element::generator(g)).collect();
    let (lam, mu) = (spectral(Var::L), spectral(Var::M));
    let value = match tag {
        Identity::Def1a => {
            let mut v = phi.eval(&e[0], &e[1], &lam);
            let back = phi
                .eval(&e[1], &e[0], &lam)
                .map_elements(&|x| second_slot_subst(x, Var::L));
            v.add_assign(&back);
            v
        }
        Identity::Def1b => {
            let (x, y, z) = (&e[0], &e[1], &e[2]);
            let lm = sum(Var::L, Var::M);
            let mut v = phi.eval(x, &alg.bracket(y, z, &mu), &lam);
            v.sub_assign(
                &phi.eval(x, y, &lam)
                    .map_elements(&|w| alg.bracket(w, z, &lm)),
            );
            v.sub_assign(
                &phi.eval(x, z, &lam)
                    .map_elements(&|w| alg.bracket(y, w, &mu)),
            );
            v
        }
        Identity::Lem1 => {
            let (x, y, z) = (&e[0], &e[1], &e[2]);
            let lm = sum(Var::L, Var::M);
            let mut v = phi.eval(&alg.bracket(x, y, &mu), z, &lm);
            v.sub_assign(
                &phi.eval(y, z, &lam)
                    .map_elements(&|w| alg.bracket(x, w, &mu)),
            );
            v.add_assign(
                &phi.eval(x, z, &mu)
                    .map_elements(&|w| alg.bracket(y, w, &lam)),
            );
            v
        }
        Identity::Lem2 => {
            let (x, y, u, v) = (&e[0], &e[1], &e[2], &e[3]);
            let mg = sum(Var::M, Var::G);
            let uv = alg.bracket(u, v, &lam);
            let xy = alg.bracket(x, y, &mu);
            let mut r = phi
                .eval(x, y, &mu)
                .map_elements(&|w| alg.bracket(w, &uv, &mg));
            r.sub_assign(
                &phi.eval(u, v, &lam)
                    .map_elements(&|w| alg.bracket(&xy, w, &mg)),
            );
            r
        }
    };
    Ok(value)
}

/// Every ordered `arity`-tuple of generators, lexicographically.
pub fn generator_tuples(alg: &Algebra, arity: usize) -> Vec<Vec<Gen>> {
    let gens = alg.generators();
    let mut out: Vec<Vec<Gen>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                gens.iter().map(move |g| {
                    let mut t = t.clone();
                    t.push(*g);
                    t
                })
            })
            .collect();
    }
    out
}

/// Table of `φ_λ(e_i, e_j)` with coefficients in `∂, λ, b`; absent pairs are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    algebra: Arc<Algebra>,
    table: BTreeMap<(Gen, Gen), Element>,
}

impl BilinearMap {
    pub fn zero(algebra: Arc<Algebra>) -> Self {
        BilinearMap {
            algebra,
            table: BTreeMap::new(),
        }
    }

    pub fn algebra_arc(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// Sets `φ_λ(x, y)`. Rejects coefficients outside `∂, λ, b`.
    pub fn set(&mut self, x: Gen, y: Gen, value: Element) -> Result<(), BimapError> {
        for (_, p) in value.terms() {
            if let Some(v) = p.vars().into_iter().find(|v| matches!(v, Var::M | Var::G)) {
                let pair = format!("{}, {}", self.algebra.gen_name(x), self.algebra.gen_name(y));
                return Err(BimapError::ForeignVariable(pair, v.symbol()));
            }
        }
        if value.is_zero() {
            self.table.remove(&(x, y));
        } else {
            self.table.insert((x, y), value);
        }
        Ok(())
    }

    pub fn get(&self, x: Gen, y: Gen) -> Element {
        self.table.get(&(x, y)).cloned().unwrap_or_default()
    }

    /// Nonzero entries in generator order.
    pub fn entries(&self) -> impl Iterator<Item = (&(Gen, Gen), &Element)> {
        self.table.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    fn same_algebra(&self, other: &BilinearMap) {
        assert_eq!(
            self.algebra.name(),
            other.algebra.name(),
            "maps over different algebras"
        );
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, c: &Rational, other: &BilinearMap) -> BilinearMap {
        self.same_algebra(other);
        let mut out = self.clone();
        for (k, v) in &other.table {
            let mut e = out.table.remove(k).unwrap_or_default();
            e.add_assign(&v.scale(c));
            if !e.is_zero() {
                out.table.insert(*k, e);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> BilinearMap {
        BilinearMap::zero(self.algebra.clone()).add_scaled(c, self)
    }

    /// Coordinates over ℚ keyed by `(x, y, target, monomial)`.
    pub fn coordinates(&self) -> BTreeMap<(Gen, Gen, Gen, crate::poly::Monomial), Rational> {
        let mut out = BTreeMap::new();
        for ((x, y), e) in &self.table {
            for (t, p) in e.terms() {
                for (m, c) in p.terms() {
                    out.insert((*x, *y, *t, *m), c.clone());
                }
            }
        }
        out
    }

    /// Substitutes a numeric `b` into every value.
    pub fn with_b(&self, b: &Rational) -> BilinearMap {
        let s = Subst::single(Var::B, Poly::constant(b.clone()));
        BilinearMap {
            algebra: self.algebra.clone(),
            table: self
                .table
                .iter()
                .map(|(k, e)| (*k, e.subst(&s)))
                .filter(|(_, e)| !e.is_zero())
                .collect(),
        }
    }
}

impl Pairing for BilinearMap {
    type Value = Element;

    fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    fn eval(&self, x: &Element, y: &Element, spectral: &Poly) -> Element {
        map_eval(self, x, y, spectral)
    }
}

/// `φ_s(x, y)`: for `x = p(∂)e_i`, `y = q(∂)e_j` this is
/// `p(−s) · q(∂+s) · φ_λ(e_i, e_j)|_{λ=s}`, extended bilinearly.
pub fn map_eval(phi: &BilinearMap, x: &Element, y: &Element, spectral: &Poly) -> Element {
    let left = Subst::single(Var::D, -spectral);
    let right = Subst::single(Var::D, Poly::var(Var::D) + spectral);
    let rename = Subst::single(Var::L, spectral.clone());
    let mut out = Element::zero();
    for (gi, p) in x.terms() {
        let p = p.subst(&left);
        for (gj, q) in y.terms() {
            let Some(value) = phi.table.get(&(*gi, *gj)) else {
                continue;
            };
            let factor = &p * &q.subst(&right);
            for (t, c) in value.terms() {
                out.add_term(*t, &factor * &c.subst(&rename));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub tag: Identity,
    pub args: Vec<Gen>,
    pub value: Element,
}

pub fn residual(phi: &BilinearMap, tag: Identity, args: &[Gen]) -> Result<Residual, BimapError> {
    Ok(Residual {
        tag,
        args: args.to_vec(),
        value: residual_value(phi, tag, args)?,
    })
}

/// Outcome of checking a map against a set of identities.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    /// Number of tuples evaluated per identity.
    pub checked: Vec<(Identity, usize)>,
    /// Nonzero residuals ordered by (identity, tuple).
    pub failures: Vec<Residual>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates every listed identity on every generator tuple.
pub fn verify_map(phi: &BilinearMap, tags: &[Identity]) -> VerifyReport {
    let mut tags = tags.to_vec();
    tags.sort();
    tags.dedup();
    let mut checked = Vec::new();
    let mut failures = Vec::new();
    for tag in tags {
        let tuples = generator_tuples(&phi.algebra, tag.arity());
        checked.push((tag, tuples.len()));
        let bad: Vec<Residual> = tuples
            .par_iter()
            .map(|t| residual(phi, tag, t).expect("arity matches"))
            .filter(|r| !r.value.is_zero())
            .collect();
        failures.extend(bad);
    }
    VerifyReport { checked, failures }
}
