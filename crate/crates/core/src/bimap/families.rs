//! Closed-form biderivation families.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{BilinearMap, BimapError};
use crate::algebra::{Algebra, BValue, Element, Gen};
use crate::poly::{Poly, Rational, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `φ(x, y) = t · [x_λ y]` on any algebra.
    Inner { t: Rational },
    /// Loop Virasoro: `φ(L_i, L_j) = a (∂+2λ) L_{i+j+s}`.
    CwShift { shift: i64, a: Rational },
    /// Loop W(a,b):
    /// `φ(L_i, L_j) = (∂+2λ)(a L_{i+j+s} + g G_{i+j+s})`,
    /// `φ(L_i, G_j) = a (∂+(1−b)λ) G_{i+j+s}`,
    /// `φ(G_i, L_j) = −a (b∂+(b−1)λ) G_{i+j+s}`, `φ(G_i, G_j) = 0`.
    /// `g` must vanish unless `b = −1`.
    ClwShift {
        shift: i64,
        a: Rational,
        g: Rational,
    },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Inner { t } => write!(f, "inner(t={t})"),
            Family::CwShift { shift, a } => write!(f, "cw_shift(s={shift},a={a})"),
            Family::ClwShift { shift, a, g } => write!(f, "clw_shift(s={shift},a={a},g={g})"),
        }
    }
}

fn families_are(alg: &Algebra, names: &[&str]) -> bool {
    alg.families().len() == names.len() && alg.families().iter().zip(names).all(|(f, n)| f == n)
}

fn vir_coeff() -> Poly {
    Poly::var(Var::D) + Poly::var(Var::L).scale(&Rational::from_integer(2.into()))
}

/// Realizes a family as a concrete table over `Z_m`.
pub fn make_family(alg: &Arc<Algebra>, family: &Family) -> Result<BilinearMap, BimapError> {
    if let Family::ClwShift { g, .. } = family {
        if !g.is_zero() && *alg.b() != BValue::Numeric(-Rational::one()) {
            return Err(BimapError::GComponentNeedsMinusOne);
        }
    }
    family_table(alg, family)
}

/// Like [`make_family`] but without the `b = −1` guard on the G-component,
/// so the table can be built (and shown to fail) at other values of `b`.
pub fn family_table(alg: &Arc<Algebra>, family: &Family) -> Result<BilinearMap, BimapError> {
    let mut phi = BilinearMap::zero(alg.clone());
    let gens = alg.generators();
    match family {
        Family::Inner { t } => {
            for &x in &gens {
                for &y in &gens {
                    let v = alg.bracket_at(&Element::generator(x), &Element::generator(y), Var::L);
                    phi.set(x, y, v.scale(t))?;
                }
            }
        }
        Family::CwShift { shift, a } => {
            if !families_are(alg, &["L"]) {
                return Err(BimapError::InvalidFamily(format!(
                    "cw_shift needs a single family L, `{}` has {:?}",
                    alg.name(),
                    alg.families()
                )));
            }
            for &x in &gens {
                for &y in &gens {
                    let k = alg.shift_index(x.index + y.index, *shift);
                    phi.set(x, y, Element::term(Gen::new(0, k), vir_coeff().scale(a)))?;
                }
            }
        }
        Family::ClwShift { shift, a, g } => {
            if !families_are(alg, &["L", "G"]) {
                return Err(BimapError::InvalidFamily(format!(
                    "clw_shift needs families L, G, `{}` has {:?}",
                    alg.name(),
                    alg.families()
                )));
            }
            let b = alg.b().as_poly();
            let (d, l) = (Poly::var(Var::D), Poly::var(Var::L));
            let lg = &d + &(&(Poly::one() - &b) * &l);
            let gl = -(&(&b * &d) + &(&(&b - &Poly::one()) * &l));
            let m = alg.modulus();
            for i in 0..m {
                for j in 0..m {
                    let k = alg.shift_index(i + j, *shift);
                    let (li, lj, gi, gj) = (
                        Gen::new(0, i),
                        Gen::new(0, j),
                        Gen::new(1, i),
                        Gen::new(1, j),
                    );
                    let mut ll = Element::term(Gen::new(0, k), vir_coeff().scale(a));
                    ll.add_term(Gen::new(1, k), vir_coeff().scale(g));
                    phi.set(li, lj, ll)?;
                    phi.set(li, gj, Element::term(Gen::new(1, k), lg.scale(a)))?;
                    phi.set(gi, lj, Element::term(Gen::new(1, k), gl.scale(a)))?;
                }
            }
        }
    }
    Ok(phi)
}
