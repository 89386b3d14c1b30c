//! Exact multivariate polynomials over the rationals in the fixed variable
//! set `∂, λ, μ, γ, b`.
//!
//! A [`Poly`] is kept in canonical form at all times: a sorted map from
//! [`Monomial`] to a nonzero [`Rational`] coefficient, so structural equality
//! is polynomial equality and "residual is zero" is a decidable check.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use parse::{parse, ParseError, ParseErrorKind};

/// Arbitrary-precision exact rational scalar.
pub type Rational = BigRational;

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The five formal variables. Declaration order is the printing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// ∂, the module derivation.
    D,
    /// λ
    L,
    /// μ
    M,
    /// γ
    G,
    /// The algebra parameter `b`.
    B,
}

pub const NVARS: usize = 5;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::D, Var::L, Var::M, Var::G, Var::B];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Identifier used by the expression grammar.
    pub fn symbol(self) -> char {
        match self {
            Var::D => 'd',
            Var::L => 'l',
            Var::M => 'm',
            Var::G => 'g',
            Var::B => 'b',
        }
    }

    pub fn from_symbol(s: &str) -> Option<Var> {
        match s {
            "d" => Some(Var::D),
            "l" => Some(Var::L),
            "m" => Some(Var::M),
            "g" => Some(Var::G),
            "b" => Some(Var::B),
            _ => None,
        }
    }

    /// The spectral variables λ, μ, γ.
    pub fn is_spectral(self) -> bool {
        matches!(self, Var::L | Var::M | Var::G)
    }
}

/// Exponent vector over [`Var::ALL`].
///
/// Ordered graded-lexicographically with `∂ > λ > μ > γ > b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    /// Splits into the part in `vars` and the part outside `vars`.
    pub fn split(&self, vars: &[Var]) -> (Monomial, Monomial) {
        let mut inside = [0; NVARS];
        let mut outside = self.0;
        for v in vars {
            inside[v.index()] = self.0[v.index()];
            outside[v.index()] = 0;
        }
        (Monomial(inside), Monomial(outside))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            for _ in 0..self.exp(v) {
                if !first {
                    f.write_str("*")?;
                }
                write!(f, "{}", v.symbol())?;
                first = false;
            }
        }
        Ok(())
    }
}

/// A polynomial in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(Monomial::ONE, c)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Variables occurring with a positive exponent.
    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.contains(v)).collect()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution of the listed variables.
    pub fn subst(&self, assignments: &Subst) -> Poly {
        if assignments.is_empty() {
            return self.clone();
        }
        // powers[v][e] = assignments[v]^e, filled lazily
        let mut powers: Vec<Vec<Poly>> = vec![Vec::new(); NVARS];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = m.0;
            let mut factor = Poly::constant(c.clone());
            for (v, image) in assignments.iter() {
                let e = m.exp(*v) as usize;
                if e == 0 {
                    continue;
                }
                kept[v.index()] = 0;
                let cache = &mut powers[v.index()];
                if cache.is_empty() {
                    cache.push(Poly::one());
                }
                while cache.len() <= e {
                    let next = cache.last().unwrap() * image;
                    cache.push(next);
                }
                factor = &factor * &cache[e];
            }
            let kept = Monomial(kept);
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&kept), fc);
            }
        }
        out
    }

    /// Evaluates a single variable substitution `v := image`.
    pub fn subst1(&self, v: Var, image: &Poly) -> Poly {
        self.subst(&Subst::single(v, image.clone()))
    }

    /// Coefficients with respect to `vars`: each key is a monomial in `vars`
    /// only and each value is free of `vars`.
    pub fn coeffs(&self, vars: &[Var]) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(vars);
            out.entry(inside).or_default().add_term(outside, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

/// A simultaneous substitution `Var -> Poly`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subst(BTreeMap<Var, Poly>);

impl Subst {
    pub fn new() -> Self {
        Subst::default()
    }

    pub fn single(v: Var, image: Poly) -> Self {
        Subst::new().with(v, image)
    }

    pub fn with(mut self, v: Var, image: Poly) -> Self {
        self.0.insert(v, image);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Poly)> {
        self.0.iter()
    }
}

impl FromIterator<(Var, Poly)> for Subst {
    fn from_iter<I: IntoIterator<Item = (Var, Poly)>>(iter: I) -> Self {
        Subst(iter.into_iter().collect())
    }
}

/// `−∂ − v`, the image of a spectral variable under skew-symmetry.
pub fn skew_image(v: Var) -> Poly {
    -(Poly::var(Var::D) + Poly::var(v))
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        *self += &rhs;
    }
}

impl SubAssign<Poly> for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        *self -= &rhs;
    }
}

/// Canonical printing in the input grammar, highest monomial first.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Poly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn additive_inverse() {
        assert!((p("d + 2*l") + p("-d - 2*l")).is_zero());
    }

    #[test]
    fn multiplicative_identity() {
        assert_eq!(p("d + 2*l") * Poly::one(), p("d + 2*l"));
    }

    #[test]
    fn vir_jacobi_product() {
        // (∂+λ+2μ)(∂+2λ) = ∂² + (3λ+2μ)∂ + 2λ² + 4λμ
        let prod = p("d + l + 2*m") * p("d + 2*l");
        let expected = Poly::from_terms([
            (Monomial::var_pow(Var::D, 2), rat(1, 1)),
            (Monomial::var(Var::D).mul(&Monomial::var(Var::L)), rat(3, 1)),
            (Monomial::var(Var::D).mul(&Monomial::var(Var::M)), rat(2, 1)),
            (Monomial::var_pow(Var::L, 2), rat(2, 1)),
            (Monomial::var(Var::L).mul(&Monomial::var(Var::M)), rat(4, 1)),
        ]);
        assert_eq!(prod, expected);
        assert_eq!(prod.to_string(), "d*d + 3*d*l + 2*d*m + 2*l*l + 4*l*m");
    }

    #[test]
    fn skew_substitution() {
        let s = Subst::single(Var::L, skew_image(Var::L));
        assert_eq!(p("d + 2*l").subst(&s), p("-d - 2*l"));
    }

    #[test]
    fn identity_substitution() {
        let q = p("3*d*l - 1/2*b*g + 7");
        let id: Subst = Var::ALL.into_iter().map(|v| (v, Poly::var(v))).collect();
        assert_eq!(q.subst(&id), q);
        assert_eq!(q.subst(&Subst::new()), q);
    }

    #[test]
    fn shift_substitution() {
        let s = Subst::single(Var::L, p("l + m"));
        assert_eq!(p("l*m").subst(&s), p("l*m + m*m"));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let s = Subst::new().with(Var::L, p("m")).with(Var::M, p("l"));
        assert_eq!(p("l - 2*m").subst(&s), p("m - 2*l"));
    }

    #[test]
    fn coefficient_extraction() {
        let q = p("d*d + 3*d*l + 2*d*m");
        let c = q.coeffs(&[Var::D]);
        assert_eq!(c.len(), 2);
        assert_eq!(c[&Monomial::var_pow(Var::D, 2)], Poly::one());
        assert_eq!(c[&Monomial::var(Var::D)], p("3*l + 2*m"));
        assert!(!c.contains_key(&Monomial::ONE));

        let five = Poly::int(5).coeffs(&[Var::L]);
        assert_eq!(five.len(), 1);
        assert_eq!(five[&Monomial::ONE], Poly::int(5));

        let vir = p("d + 2*l").coeffs(&[Var::D, Var::L]);
        assert_eq!(vir[&Monomial::var(Var::D)], Poly::one());
        assert_eq!(vir[&Monomial::var(Var::L)], Poly::int(2));
    }

    #[test]
    fn printing_order_is_graded_lex() {
        assert_eq!(p("b + g + m + l + d").to_string(), "d + l + m + g + b");
        assert_eq!(p("1 + l*b + d").to_string(), "l*b + d + 1");
        assert_eq!(p("-3/2*d + 1/3").to_string(), "-3/2*d + 1/3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let q = p("d - l + 2");
        assert_eq!(q.pow(3), &(&q * &q) * &q);
        assert_eq!(q.pow(0), Poly::one());
    }

    #[test]
    fn constants() {
        assert_eq!(p("4/6").as_constant(), Some(rat(2, 3)));
        assert_eq!(Poly::zero().as_constant(), Some(rat(0, 1)));
        assert_eq!(p("d").as_constant(), None);
    }
}
