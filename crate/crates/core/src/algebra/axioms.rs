use rayon::prelude::*;

use super::{second_slot_subst, Algebra, Element, Gen};
use crate::poly::{Poly, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResidual {
    pub args: Vec<Gen>,
    pub value: Element,
}

/// Skew-symmetry residuals for every ordered generator pair and Jacobi
/// residuals for every ordered triple, sorted by tuple.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub skew: Vec<AxiomResidual>,
    pub jacobi: Vec<AxiomResidual>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Nonzero residuals, skew first.
    pub fn failures(&self) -> impl Iterator<Item = (&'static str, &AxiomResidual)> {
        self.skew
            .iter()
            .map(|r| ("skew", r))
            .chain(self.jacobi.iter().map(|r| ("jacobi", r)))
            .filter(|(_, r)| !r.value.is_zero())
    }
}

/// `[x_λ y] + [y_{−∂−λ} x]`.
pub fn skew_residual(a: &Algebra, x: Gen, y: Gen) -> Element {
    let (ex, ey) = (Element::generator(x), Element::generator(y));
    let forward = a.bracket_at(&ex, &ey, Var::L);
    let backward = second_slot_subst(&a.bracket_at(&ey, &ex, Var::L), Var::L);
    forward.add(&backward)
}

/// `[x_λ [y_μ z]] − [[x_λ y]_{λ+μ} z] − [y_μ [x_λ z]]`.
pub fn jacobi_residual(a: &Algebra, x: Gen, y: Gen, z: Gen) -> Element {
    let (ex, ey, ez) = (
        Element::generator(x),
        Element::generator(y),
        Element::generator(z),
    );
    let lm = Poly::var(Var::L) + Poly::var(Var::M);
    let lhs = a.bracket_at(&ex, &a.bracket_at(&ey, &ez, Var::M), Var::L);
    let first = a.bracket(&a.bracket_at(&ex, &ey, Var::L), &ez, &lm);
    let second = a.bracket_at(&ey, &a.bracket_at(&ex, &ez, Var::L), Var::M);
    lhs.sub(&first).sub(&second)
}

pub fn check_axioms(a: &Algebra) -> AxiomReport {
    let gens = a.generators();
    let pairs: Vec<(Gen, Gen)> = gens
        .iter()
        .flat_map(|&x| gens.iter().map(move |&y| (x, y)))
        .collect();
    let triples: Vec<(Gen, Gen, Gen)> = pairs
        .iter()
        .flat_map(|&(x, y)| gens.iter().map(move |&z| (x, y, z)))
        .collect();
    let skew = pairs
        .par_iter()
        .map(|&(x, y)| AxiomResidual {
            args: vec![x, y],
            value: skew_residual(a, x, y),
        })
        .collect();
    let jacobi = triples
        .par_iter()
        .map(|&(x, y, z)| AxiomResidual {
            args: vec![x, y, z],
            value: jacobi_residual(a, x, y, z),
        })
        .collect();
    AxiomReport { skew, jacobi }
}
