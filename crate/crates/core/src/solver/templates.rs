//! Matching solved biderivations against the closed-form families.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::linalg::Echelon;
use super::SolutionSpace;
use crate::algebra::{Algebra, BValue, Element, Gen};
use crate::bimap::{make_family, BilinearMap, Family};
use crate::poly::{Monomial, Poly, Rational};

/// Family instances that apply to the algebra's shape: the inner map,
/// every shift of the loop family, and at `b = −1` the G-component shifts.
pub fn templates_for(alg: &Arc<Algebra>) -> Vec<(Family, BilinearMap)> {
    let one = Rational::one();
    let zero = Rational::zero();
    let mut fams = vec![Family::Inner { t: one.clone() }];
    let m = alg.modulus() as i64;
    let names: Vec<&str> = alg.families().iter().map(String::as_str).collect();
    if names == ["L"] {
        fams.extend((0..m).map(|shift| Family::CwShift {
            shift,
            a: one.clone(),
        }));
    } else if names == ["L", "G"] {
        fams.extend((0..m).map(|shift| Family::ClwShift {
            shift,
            a: one.clone(),
            g: zero.clone(),
        }));
        if *alg.b() == BValue::Numeric(-one.clone()) {
            fams.extend((0..m).map(|shift| Family::ClwShift {
                shift,
                a: zero.clone(),
                g: one.clone(),
            }));
        }
    }
    fams.into_iter()
        .map(|f| {
            let phi = make_family(alg, &f).expect("family fits the algebra shape");
            (f, phi)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Matched {
    pub basis_index: usize,
    /// Nonzero template coefficients.
    pub combination: Vec<(Family, Rational)>,
}

#[derive(Clone, Debug)]
pub struct Unmatched {
    pub basis_index: usize,
    pub map: BilinearMap,
    /// Part of the map outside the template span.
    pub remainder: BilinearMap,
}

#[derive(Clone, Debug)]
pub struct MatchReport {
    pub templates: Vec<Family>,
    pub matched: Vec<Matched>,
    pub unmatched: Vec<Unmatched>,
}

impl MatchReport {
    pub fn fully_matched(&self) -> bool {
        self.unmatched.is_empty()
    }
}

type Key = (Gen, Gen, Gen, Monomial);

fn from_coordinates(alg: &Arc<Algebra>, coords: &BTreeMap<Key, Rational>) -> BilinearMap {
    let mut table: BTreeMap<(Gen, Gen), Element> = BTreeMap::new();
    for ((x, y, t, m), c) in coords {
        table
            .entry((*x, *y))
            .or_default()
            .add_term(*t, Poly::monomial(*m, c.clone()));
    }
    let mut phi = BilinearMap::zero(alg.clone());
    for ((x, y), e) in table {
        phi.set(x, y, e).expect("coordinates of a valid map");
    }
    phi
}

fn match_all(alg: &Arc<Algebra>, maps: &[BilinearMap]) -> MatchReport {
    let templates = templates_for(alg);
    let mut ech: Echelon<Key> = Echelon::new(true);
    for (_, phi) in &templates {
        ech.insert(phi.coordinates());
    }
    let mut matched = Vec::new();
    let mut unmatched = Vec::new();
    for (basis_index, phi) in maps.iter().enumerate() {
        let (rem, combo) = ech.reduce(&phi.coordinates());
        if rem.is_empty() {
            matched.push(Matched {
                basis_index,
                combination: combo
                    .into_iter()
                    .map(|(j, c)| (templates[j].0.clone(), c))
                    .collect(),
            });
        } else {
            unmatched.push(Unmatched {
                basis_index,
                map: phi.clone(),
                remainder: from_coordinates(alg, &rem),
            });
        }
    }
    MatchReport {
        templates: templates.into_iter().map(|(f, _)| f).collect(),
        matched,
        unmatched,
    }
}

/// Expresses each basis vector through the family templates.
pub fn match_templates(space: &SolutionSpace) -> MatchReport {
    match_all(&space.algebra, &space.basis)
}

pub fn match_map(phi: &BilinearMap) -> MatchReport {
    match_all(phi.algebra_arc(), std::slice::from_ref(phi))
}
