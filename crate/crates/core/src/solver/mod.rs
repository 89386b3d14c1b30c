//! Brute-force classification of conformal biderivations.
//!
//! A degree-bounded ansatz assigns an unknown to every
//! `(pair, target generator, ∂^p λ^q)` with `p + q ≤ D`. The residuals of
//! the chosen identities are linear in the unknowns; matching polynomial
//! coefficients turns them into rational linear rows whose exact nullspace
//! is the space of biderivations of degree at most `D`. No grading or degree
//! pattern is assumed.

pub mod linalg;
mod templates;

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Algebra, Element, Gen};
use crate::bimap::{
    generator_tuples, residual_value, verify_map, BilinearMap, BimapError, Identity, Pairing,
    PairingValue,
};
use crate::poly::{Monomial, Poly, Rational, Subst, Var};

use linalg::{Echelon, SparseVec};

pub use templates::{match_map, match_templates, templates_for, MatchReport, Matched, Unmatched};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("the solver needs a numeric b; `{0}` has symbolic b")]
    SymbolicB(String),
    #[error("at least one identity is required")]
    NoTags,
    #[error("basis vector {index} failed re-verification on {tag}")]
    VerificationFailed { index: usize, tag: Identity },
    #[error(transparent)]
    Bimap(#[from] BimapError),
}

/// One unknown coefficient: `φ(left, right) ∋ u · ∂^p λ^q · target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Unknown {
    pub left: Gen,
    pub right: Gen,
    pub target: Gen,
    pub d_exp: u32,
    pub l_exp: u32,
}

impl Unknown {
    fn monomial(&self) -> Monomial {
        Monomial::var_pow(Var::D, self.d_exp).mul(&Monomial::var_pow(Var::L, self.l_exp))
    }
}

#[derive(Clone, Debug)]
pub struct Ansatz {
    algebra: Arc<Algebra>,
    degree: u32,
    unknowns: Vec<Unknown>,
    by_pair: BTreeMap<(Gen, Gen), Range<usize>>,
}

impl Ansatz {
    pub fn new(algebra: Arc<Algebra>, degree: u32) -> Result<Self, SolverError> {
        if !algebra.b().is_numeric() && uses_b(&algebra) {
            return Err(SolverError::SymbolicB(algebra.name().to_string()));
        }
        let gens = algebra.generators();
        let mut unknowns = Vec::new();
        let mut by_pair = BTreeMap::new();
        for &left in &gens {
            for &right in &gens {
                let start = unknowns.len();
                for &target in &gens {
                    for total in 0..=degree {
                        for d_exp in (0..=total).rev() {
                            unknowns.push(Unknown {
                                left,
                                right,
                                target,
                                d_exp,
                                l_exp: total - d_exp,
                            });
                        }
                    }
                }
                by_pair.insert((left, right), start..unknowns.len());
            }
        }
        Ok(Ansatz {
            algebra,
            degree,
            unknowns,
            by_pair,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn unknowns(&self) -> &[Unknown] {
        &self.unknowns
    }

    pub fn algebra_arc(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// Concrete map for an assignment of all unknowns.
    pub fn realize(&self, values: &[Rational]) -> BilinearMap {
        assert_eq!(values.len(), self.unknowns.len());
        let mut table: BTreeMap<(Gen, Gen), Element> = BTreeMap::new();
        for (u, c) in self.unknowns.iter().zip(values) {
            if c.is_zero() {
                continue;
            }
            table
                .entry((u.left, u.right))
                .or_default()
                .add_term(u.target, Poly::monomial(u.monomial(), c.clone()));
        }
        let mut phi = BilinearMap::zero(self.algebra.clone());
        for ((x, y), e) in table {
            phi.set(x, y, e).expect("ansatz values use d and l only");
        }
        phi
    }
}

/// Whether a symbolic `b` actually occurs in the bracket table.
fn uses_b(alg: &Algebra) -> bool {
    let nf = alg.families().len();
    (0..nf).any(|l| (0..nf).any(|r| alg.rule(l, r).coeff.contains(Var::B)))
}

/// Residual values indexed by unknown.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymValue(pub BTreeMap<usize, Element>);

impl PairingValue for SymValue {
    fn zero() -> Self {
        SymValue::default()
    }

    fn add_assign(&mut self, other: &Self) {
        for (u, e) in &other.0 {
            let slot = self.0.entry(*u).or_default();
            slot.add_assign(e);
            if slot.is_zero() {
                self.0.remove(u);
            }
        }
    }

    fn neg(&self) -> Self {
        SymValue(self.0.iter().map(|(u, e)| (*u, e.neg())).collect())
    }

    fn map_elements(&self, f: &dyn Fn(&Element) -> Element) -> Self {
        SymValue(
            self.0
                .iter()
                .map(|(u, e)| (*u, f(e)))
                .filter(|(_, e)| !e.is_zero())
                .collect(),
        )
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl Pairing for Ansatz {
    type Value = SymValue;

    fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    fn eval(&self, x: &Element, y: &Element, spectral: &Poly) -> SymValue {
        let left = Subst::single(Var::D, -spectral);
        let right = Subst::single(Var::D, Poly::var(Var::D) + spectral);
        let d = Poly::var(Var::D);
        let mut out = SymValue::default();
        for (gi, p) in x.terms() {
            let p = p.subst(&left);
            for (gj, q) in y.terms() {
                let factor = &p * &q.subst(&right);
                for u in self.by_pair[&(*gi, *gj)].clone() {
                    let unk = &self.unknowns[u];
                    let mono = &d.pow(unk.d_exp) * &spectral.pow(unk.l_exp);
                    let e = Element::term(unk.target, &factor * &mono);
                    out.add_assign(&SymValue([(u, e)].into_iter().collect()));
                }
            }
        }
        out
    }
}

/// Where a constraint row came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub tag: Identity,
    pub args: Vec<Gen>,
    pub target: Gen,
    pub monomial: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub coeffs: SparseVec<usize>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub ansatz: Ansatz,
    pub tags: Vec<Identity>,
    /// Ordered by (identity, tuple, target, monomial).
    pub rows: Vec<Row>,
}

fn rows_for(ansatz: &Ansatz, tag: Identity, args: &[Gen]) -> Vec<Row> {
    let value = residual_value(ansatz, tag, args).expect("arity matches");
    let mut grouped: BTreeMap<(Gen, Monomial), SparseVec<usize>> = BTreeMap::new();
    for (u, e) in &value.0 {
        for (g, p) in e.terms() {
            for (m, c) in p.terms() {
                grouped.entry((*g, *m)).or_default().insert(*u, c.clone());
            }
        }
    }
    grouped
        .into_iter()
        .filter(|(_, r)| !r.is_empty())
        .map(|((target, monomial), coeffs)| Row {
            coeffs,
            provenance: Provenance {
                tag,
                args: args.to_vec(),
                target,
                monomial,
            },
        })
        .collect()
}

/// Linear constraints from coefficient matching of every residual.
pub fn assemble(ansatz: &Ansatz, tags: &[Identity]) -> Result<ConstraintSystem, SolverError> {
    let mut tags = tags.to_vec();
    tags.sort();
    tags.dedup();
    if tags.is_empty() {
        return Err(SolverError::NoTags);
    }
    let mut rows = Vec::new();
    for &tag in &tags {
        let tuples = generator_tuples(ansatz.algebra(), tag.arity());
        let chunks: Vec<Vec<Row>> = tuples
            .par_iter()
            .map(|t| rows_for(ansatz, tag, t))
            .collect();
        rows.extend(chunks.into_iter().flatten());
    }
    Ok(ConstraintSystem {
        ansatz: ansatz.clone(),
        tags,
        rows,
    })
}

#[derive(Clone, Debug)]
pub struct SolutionSpace {
    pub algebra: Arc<Algebra>,
    pub degree: u32,
    pub tags: Vec<Identity>,
    pub unknowns: usize,
    pub rows: usize,
    pub basis: Vec<BilinearMap>,
}

impl SolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Whether every basis vector of `self` lies in the span of `other`.
    pub fn contained_in(&self, other: &SolutionSpace) -> bool {
        let mut ech = Echelon::new(false);
        for phi in &other.basis {
            ech.insert(phi.coordinates());
        }
        self.basis
            .iter()
            .all(|phi| ech.reduce(&phi.coordinates()).0.is_empty())
    }

    pub fn same_span(&self, other: &SolutionSpace) -> bool {
        self.dimension() == other.dimension()
            && self.contained_in(other)
            && other.contained_in(self)
    }

    /// Whether `phi` lies in the span of the basis.
    pub fn contains(&self, phi: &BilinearMap) -> bool {
        let mut ech = Echelon::new(false);
        for b in &self.basis {
            ech.insert(b.coordinates());
        }
        ech.reduce(&phi.coordinates()).0.is_empty()
    }
}

/// Exact nullspace of the system, realized as concrete maps.
pub fn nullspace(c: &ConstraintSystem) -> SolutionSpace {
    let n = c.ansatz.unknowns().len();
    let basis = linalg::nullspace_basis(c.rows.iter().map(|r| r.coeffs.clone()), n)
        .into_iter()
        .map(|v| c.ansatz.realize(&v))
        .collect();
    SolutionSpace {
        algebra: c.ansatz.algebra_arc().clone(),
        degree: c.ansatz.degree(),
        tags: c.tags.clone(),
        unknowns: n,
        rows: c.rows.len(),
        basis,
    }
}

/// Assembles, solves, and re-verifies every basis vector on `tags`.
pub fn solve_bider(
    algebra: &Arc<Algebra>,
    degree: u32,
    tags: &[Identity],
) -> Result<SolutionSpace, SolverError> {
    let ansatz = Ansatz::new(algebra.clone(), degree)?;
    let system = assemble(&ansatz, tags)?;
    let space = nullspace(&system);
    for (index, phi) in space.basis.iter().enumerate() {
        let report = verify_map(phi, &system.tags);
        if let Some(r) = report.failures.first() {
            return Err(SolverError::VerificationFailed { index, tag: r.tag });
        }
    }
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_catalog, BValue, CatalogKind};
    use crate::poly::rat;

    fn vir() -> Arc<Algebra> {
        Arc::new(make_catalog(CatalogKind::Vir, 1, None).unwrap())
    }

    #[test]
    fn unknown_count() {
        let a = Arc::new(make_catalog(CatalogKind::Cw, 2, None).unwrap());
        let ans = Ansatz::new(a, 2).unwrap();
        // pairs · generators · (D+1)(D+2)/2
        assert_eq!(ans.unknowns().len(), 4 * 2 * 6);
    }

    #[test]
    fn symbolic_b_rejected() {
        let a = Arc::new(make_catalog(CatalogKind::Clw, 1, Some(BValue::Symbolic)).unwrap());
        assert!(matches!(Ansatz::new(a, 1), Err(SolverError::SymbolicB(_))));
    }

    #[test]
    fn vir_degree_one_skew_rows() {
        // f(∂,λ) = c00 + c10 ∂ + c01 λ; f(∂,λ) + f(∂,−∂−λ) = 2c00 + (2c10 − c01)∂
        let ans = Ansatz::new(vir(), 1).unwrap();
        let names: Vec<(u32, u32)> = ans.unknowns().iter().map(|u| (u.d_exp, u.l_exp)).collect();
        assert_eq!(names, vec![(0, 0), (1, 0), (0, 1)]);
        let sys = assemble(&ans, &[Identity::Def1a]).unwrap();
        let rows: Vec<SparseVec<usize>> = sys.rows.iter().map(|r| r.coeffs.clone()).collect();
        let expect_const: SparseVec<usize> = [(0, rat(2, 1))].into_iter().collect();
        let expect_d: SparseVec<usize> = [(1, rat(2, 1)), (2, rat(-1, 1))].into_iter().collect();
        assert_eq!(rows, vec![expect_const, expect_d]);
        assert_eq!(sys.rows[1].provenance.monomial, Monomial::var(Var::D));

        let space = nullspace(&sys);
        assert_eq!(space.dimension(), 1);
        let g = Gen::new(0, 0);
        let expected = Element::term(g, "d + 2*l".parse().unwrap());
        assert_eq!(space.basis[0].get(g, g), expected);
    }

    #[test]
    fn constant_ansatz_skew() {
        let ans = Ansatz::new(vir(), 0).unwrap();
        let sys = assemble(&ans, &[Identity::Def1a]).unwrap();
        assert_eq!(sys.rows.len(), 1);
        assert_eq!(sys.rows[0].coeffs[&0], rat(2, 1));
        assert_eq!(nullspace(&sys).dimension(), 0);
    }

    #[test]
    fn empty_tags_rejected() {
        let ans = Ansatz::new(vir(), 1).unwrap();
        assert!(matches!(assemble(&ans, &[]), Err(SolverError::NoTags)));
    }

    #[test]
    fn symbolic_value_linearity() {
        // the ansatz residual at an assignment equals the concrete residual of the realized map
        let a = Arc::new(make_catalog(CatalogKind::Cw, 2, None).unwrap());
        let ans = Ansatz::new(a.clone(), 1).unwrap();
        let values: Vec<Rational> = (0..ans.unknowns().len())
            .map(|i| rat((i as i64 * 7) % 5 - 2, 1 + (i as i64 % 3)))
            .collect();
        let phi = ans.realize(&values);
        let args = [Gen::new(0, 1), Gen::new(0, 0), Gen::new(0, 1)];
        for tag in [Identity::Def1b, Identity::Lem1] {
            let sym = residual_value(&ans, tag, &args).unwrap();
            let mut combined = Element::zero();
            for (u, e) in &sym.0 {
                combined.add_assign(&e.scale(&values[*u]));
            }
            let direct = residual_value(&phi, tag, &args).unwrap();
            assert_eq!(combined, direct);
        }
    }
}
