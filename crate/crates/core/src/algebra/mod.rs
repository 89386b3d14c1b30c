//! Z_m-graded Lie conformal algebras given by single-target bracket tables.
//!
//! Every bracket of generators has the shape
//! `[ (e_i)_λ (f_j) ] = c(∂, λ) · t_{i+j mod m}` with one coefficient per
//! ordered family pair. Brackets of general module elements follow
//! conformal sesquilinearity: `∂` in the left slot becomes `−λ`, `∂` in the
//! right slot becomes `∂ + λ`.

mod axioms;
mod catalog;
mod file;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::poly::{self, Poly, Rational, Subst, Var};

pub use axioms::{check_axioms, AxiomReport, AxiomResidual};
pub use catalog::{make_catalog, CatalogKind};
pub use file::{load_algebra, AlgebraFile, RuleEntry};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("duplicate family `{0}`")]
    DuplicateFamily(String),
    #[error("duplicate rule for ({0}, {1})")]
    DuplicateRule(String, String),
    #[error("missing rule for ({0}, {1})")]
    MissingRule(String, String),
    #[error("index law violation in rule ({left}, {right}): target `{target}` must be a bare family name, the index is always i+j mod m")]
    IndexLaw {
        left: String,
        right: String,
        target: String,
    },
    #[error(
        "coefficient of rule ({left}, {right}) uses variable `{var}`; only d, l, b are allowed"
    )]
    ForeignVariable {
        left: String,
        right: String,
        var: char,
    },
    #[error("bad generator `{0}`")]
    BadGenerator(String),
    #[error("bad b value `{0}`: expected \"symbolic\" or a rational")]
    BadB(String),
    #[error("expression `{text}`: {source}")]
    Expr {
        text: String,
        #[source]
        source: poly::ParseError,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Parses an expression, attaching the source text to any error.
pub(crate) fn parse_expr(text: &str) -> Result<Poly, AlgebraError> {
    poly::parse(text).map_err(|source| AlgebraError::Expr {
        text: text.to_string(),
        source,
    })
}

/// A graded generator: family position and index in `0..m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub family: usize,
    pub index: u32,
}

impl Gen {
    pub fn new(family: usize, index: u32) -> Self {
        Gen { family, index }
    }
}

/// Value of the parameter `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BValue {
    Symbolic,
    Numeric(Rational),
}

impl BValue {
    /// `b` as a polynomial: the variable itself or a constant.
    pub fn as_poly(&self) -> Poly {
        match self {
            BValue::Symbolic => Poly::var(Var::B),
            BValue::Numeric(r) => Poly::constant(r.clone()),
        }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, BValue::Numeric(_))
    }
}

impl fmt::Display for BValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BValue::Symbolic => f.write_str("symbolic"),
            BValue::Numeric(r) => write!(f, "{r}"),
        }
    }
}

impl std::str::FromStr for BValue {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "symbolic" {
            return Ok(BValue::Symbolic);
        }
        poly::parse(s)
            .ok()
            .filter(|p| p.vars().is_empty())
            .and_then(|p| p.as_constant())
            .map(BValue::Numeric)
            .ok_or_else(|| AlgebraError::BadB(s.to_string()))
    }
}

/// One entry of the bracket table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    /// Target family, `None` when the bracket vanishes.
    pub target: Option<usize>,
    /// Coefficient in `∂, λ, b`; zero whenever `target` is `None`.
    pub coeff: Poly,
}

/// Rule as supplied by a caller, with families given by name.
#[derive(Clone, Debug)]
pub struct RuleSpec {
    pub left: String,
    pub right: String,
    pub target: Option<String>,
    pub coeff: Poly,
}

impl RuleSpec {
    pub fn new(left: &str, right: &str, target: Option<&str>, coeff: Poly) -> Self {
        RuleSpec {
            left: left.into(),
            right: right.into(),
            target: target.map(Into::into),
            coeff,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    name: String,
    modulus: u32,
    families: Vec<String>,
    /// Row-major over ordered family pairs.
    rules: Vec<Rule>,
    b: BValue,
}

impl Algebra {
    /// Validates a bracket table. Does not check the axioms.
    pub fn new(
        name: impl Into<String>,
        modulus: u32,
        families: Vec<String>,
        b: BValue,
        rules: Vec<RuleSpec>,
    ) -> Result<Self, AlgebraError> {
        if modulus == 0 {
            return Err(AlgebraError::InvalidParameters(
                "modulus must be at least 1".into(),
            ));
        }
        if families.is_empty() {
            return Err(AlgebraError::InvalidParameters(
                "at least one family is required".into(),
            ));
        }
        for (i, f) in families.iter().enumerate() {
            if f.is_empty() || f.contains(':') {
                return Err(AlgebraError::InvalidParameters(format!(
                    "bad family name `{f}`"
                )));
            }
            if families[..i].contains(f) {
                return Err(AlgebraError::DuplicateFamily(f.clone()));
            }
        }
        let nf = families.len();
        let position = |name: &str| {
            families
                .iter()
                .position(|f| f == name)
                .ok_or_else(|| AlgebraError::UnknownFamily(name.to_string()))
        };
        let b_subst = match &b {
            BValue::Symbolic => Subst::new(),
            BValue::Numeric(r) => Subst::single(Var::B, Poly::constant(r.clone())),
        };
        let mut table: Vec<Option<Rule>> = vec![None; nf * nf];
        for spec in rules {
            let l = position(&spec.left)?;
            let r = position(&spec.right)?;
            let target = match &spec.target {
                None => None,
                Some(t) if t.contains(':') => {
                    return Err(AlgebraError::IndexLaw {
                        left: spec.left,
                        right: spec.right,
                        target: t.clone(),
                    })
                }
                Some(t) => Some(position(t)?),
            };
            if let Some(v) = spec
                .coeff
                .vars()
                .into_iter()
                .find(|v| !matches!(v, Var::D | Var::L | Var::B))
            {
                return Err(AlgebraError::ForeignVariable {
                    left: spec.left,
                    right: spec.right,
                    var: v.symbol(),
                });
            }
            let slot = &mut table[l * nf + r];
            if slot.is_some() {
                return Err(AlgebraError::DuplicateRule(spec.left, spec.right));
            }
            let coeff = spec.coeff.subst(&b_subst);
            *slot = Some(match target {
                Some(t) if !coeff.is_zero() => Rule {
                    target: Some(t),
                    coeff,
                },
                _ => Rule {
                    target: None,
                    coeff: Poly::zero(),
                },
            });
        }
        let rules = table
            .into_iter()
            .enumerate()
            .map(|(k, r)| {
                r.ok_or_else(|| {
                    AlgebraError::MissingRule(families[k / nf].clone(), families[k % nf].clone())
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Algebra {
            name: name.into(),
            modulus,
            families,
            rules,
            b,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn families(&self) -> &[String] {
        &self.families
    }

    pub fn b(&self) -> &BValue {
        &self.b
    }

    pub fn family_index(&self, name: &str) -> Option<usize> {
        self.families.iter().position(|f| f == name)
    }

    pub fn rule(&self, left: usize, right: usize) -> &Rule {
        &self.rules[left * self.families.len() + right]
    }

    /// All generators, ordered by family then index.
    pub fn generators(&self) -> Vec<Gen> {
        (0..self.families.len())
            .flat_map(|f| (0..self.modulus).map(move |i| Gen::new(f, i)))
            .collect()
    }

    pub fn gen(&self, family: &str, index: u32) -> Option<Gen> {
        let f = self.family_index(family)?;
        (index < self.modulus).then_some(Gen::new(f, index))
    }

    /// Adds an integer to a generator index modulo `m`.
    pub fn shift_index(&self, index: u32, by: i64) -> u32 {
        (index as i64 + by).rem_euclid(self.modulus as i64) as u32
    }

    pub fn gen_name(&self, g: Gen) -> String {
        format!("{}:{}", self.families[g.family], g.index)
    }

    /// Parses `"L:0"`.
    pub fn parse_gen(&self, text: &str) -> Result<Gen, AlgebraError> {
        let bad = || AlgebraError::BadGenerator(text.to_string());
        let (fam, idx) = text.split_once(':').ok_or_else(bad)?;
        let f = self.family_index(fam.trim()).ok_or_else(bad)?;
        let i: u32 = idx.trim().parse().map_err(|_| bad())?;
        if i >= self.modulus {
            return Err(bad());
        }
        Ok(Gen::new(f, i))
    }

    /// λ-bracket `[x_s y]` at the spectral argument `s`, a linear form in
    /// λ, μ, γ.
    ///
    /// For `x = p(∂) e_i`, `y = q(∂) f_j` with table coefficient `c(∂, λ)`
    /// the result is `p(−s) · q(∂ + s) · c(∂, s)` on `t_{i+j}`. Spectral
    /// variables already present in `p` and `q` are left alone.
    pub fn bracket(&self, x: &Element, y: &Element, spectral: &Poly) -> Element {
        let left = Subst::single(Var::D, -spectral);
        let right = Subst::single(Var::D, Poly::var(Var::D) + spectral);
        let rename = Subst::single(Var::L, spectral.clone());
        let nf = self.families.len();
        let coeffs: Vec<Poly> = self.rules.iter().map(|r| r.coeff.subst(&rename)).collect();
        let xs: Vec<(Gen, Poly)> = x.terms().map(|(g, p)| (*g, p.subst(&left))).collect();
        let ys: Vec<(Gen, Poly)> = y.terms().map(|(g, q)| (*g, q.subst(&right))).collect();
        let mut out = Element::zero();
        for (gi, p) in &xs {
            for (gj, q) in &ys {
                let k = gi.family * nf + gj.family;
                let Some(target) = self.rules[k].target else {
                    continue;
                };
                let g = Gen::new(target, (gi.index + gj.index) % self.modulus);
                out.add_term(g, &(p * q) * &coeffs[k]);
            }
        }
        out
    }

    /// Bracket at a single spectral variable.
    pub fn bracket_at(&self, x: &Element, y: &Element, spectral: Var) -> Element {
        self.bracket(x, y, &Poly::var(spectral))
    }

    pub fn display<'a>(&'a self, e: &'a Element) -> ElementDisplay<'a> {
        ElementDisplay { alg: self, elem: e }
    }
}

/// Replaces `from` by `−∂ − from` in every coefficient.
pub fn second_slot_subst(e: &Element, from: Var) -> Element {
    let s = Subst::single(from, poly::skew_image(from));
    e.map_coeffs(|p| p.subst(&s))
}

/// Finite formal sum `Σ p_g(∂, …) g` over generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Gen, Poly>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn generator(g: Gen) -> Self {
        Element::term(g, Poly::one())
    }

    pub fn term(g: Gen, p: Poly) -> Self {
        let mut e = Element::zero();
        e.add_term(g, p);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Gen, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: Gen) -> Poly {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, g: Gen, p: Poly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(g).or_default();
        *entry += &p;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (g, p) in &other.terms {
            self.add_term(*g, p.clone());
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.map_coeffs(|p| -p)
    }

    /// Multiplies every coefficient by `p`.
    pub fn mul_poly(&self, p: &Poly) -> Element {
        self.map_coeffs(|c| c * p)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Element {
        let mut out = Element::zero();
        for (g, p) in &self.terms {
            out.add_term(*g, f(p));
        }
        out
    }

    pub fn subst(&self, s: &Subst) -> Element {
        self.map_coeffs(|p| p.subst(s))
    }

    /// Applies `∂` as the module derivation.
    pub fn derive(&self) -> Element {
        self.mul_poly(&Poly::var(Var::D))
    }
}

pub struct ElementDisplay<'a> {
    alg: &'a Algebra,
    elem: &'a Element,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return f.write_str("0");
        }
        for (i, (g, p)) in self.elem.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let name = self.alg.gen_name(*g);
            if *p == Poly::one() {
                f.write_str(&name)?;
            } else if p.len() == 1 && !p.to_string().starts_with('-') {
                write!(f, "{p}*{name}")?;
            } else {
                write!(f, "({p})*{name}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn vir() -> Algebra {
        make_catalog(CatalogKind::Vir, 1, None).unwrap()
    }

    #[test]
    fn vir_bracket() {
        let a = vir();
        let l = Element::generator(Gen::new(0, 0));
        let r = a.bracket_at(&l, &l, Var::L);
        assert_eq!(r, Element::term(Gen::new(0, 0), p("d + 2*l")));
    }

    #[test]
    fn left_slot_derivative() {
        let a = vir();
        let l = Element::generator(Gen::new(0, 0));
        let r = a.bracket_at(&l.derive(), &l, Var::L);
        assert_eq!(r, Element::term(Gen::new(0, 0), p("-l*(d + 2*l)")));
    }

    #[test]
    fn right_slot_derivative() {
        let a = vir();
        let l = Element::generator(Gen::new(0, 0));
        let r = a.bracket_at(&l, &l.derive(), Var::L);
        assert_eq!(r, Element::term(Gen::new(0, 0), p("(d + l)*(d + 2*l)")));
    }

    #[test]
    fn spectral_rename() {
        let a = vir();
        let l = Element::generator(Gen::new(0, 0));
        let r = a.bracket_at(&l, &l, Var::M);
        assert_eq!(r, Element::term(Gen::new(0, 0), p("d + 2*m")));
        // an existing λ in the coefficient passes through the μ-bracket
        let x = Element::term(Gen::new(0, 0), p("l"));
        let r = a.bracket_at(&x, &l, Var::M);
        assert_eq!(r, Element::term(Gen::new(0, 0), p("l*(d + 2*m)")));
    }

    #[test]
    fn second_slot_examples() {
        let g = Gen::new(0, 0);
        let e = Element::term(g, p("d + 2*l"));
        assert_eq!(
            second_slot_subst(&e, Var::L),
            Element::term(g, p("-d - 2*l"))
        );
        assert!(second_slot_subst(&Element::zero(), Var::L).is_zero());
        // b∂ + (b−1)(−∂−λ) expanded by hand: ∂ + λ − bλ
        let e = Element::term(g, p("b*d + (b - 1)*l"));
        let out = second_slot_subst(&e, Var::L);
        assert_eq!(out, Element::term(g, p("d + l - l*b")));
        assert_eq!(out.coeff(g).to_string(), "-l*b + d + l");
    }

    #[test]
    fn grading_is_additive_mod_m() {
        let a = make_catalog(CatalogKind::Cw, 3, None).unwrap();
        let x = Element::generator(a.gen("L", 2).unwrap());
        let y = Element::generator(a.gen("L", 2).unwrap());
        let r = a.bracket_at(&x, &y, Var::L);
        assert_eq!(r, Element::term(a.gen("L", 1).unwrap(), p("d + 2*l")));
    }

    #[test]
    fn generator_names() {
        let a = make_catalog(CatalogKind::Clw, 2, Some(BValue::Symbolic)).unwrap();
        let g = a.parse_gen("G:1").unwrap();
        assert_eq!(a.gen_name(g), "G:1");
        assert!(a.parse_gen("G:2").is_err());
        assert!(a.parse_gen("H:0").is_err());
        assert!(a.parse_gen("G").is_err());
    }

    #[test]
    fn b_values() {
        assert_eq!("symbolic".parse::<BValue>().unwrap(), BValue::Symbolic);
        assert_eq!(
            "-3/2".parse::<BValue>().unwrap(),
            BValue::Numeric(poly::rat(-3, 2))
        );
        assert!("d".parse::<BValue>().is_err());
        assert!("x".parse::<BValue>().is_err());
    }

    #[test]
    fn validation_errors() {
        let fams = vec!["L".to_string()];
        let dup = Algebra::new(
            "x",
            1,
            fams.clone(),
            BValue::Symbolic,
            vec![
                RuleSpec::new("L", "L", Some("L"), p("d")),
                RuleSpec::new("L", "L", Some("L"), p("d")),
            ],
        );
        assert!(matches!(dup, Err(AlgebraError::DuplicateRule(..))));
        let missing = Algebra::new("x", 1, fams.clone(), BValue::Symbolic, vec![]);
        assert!(matches!(missing, Err(AlgebraError::MissingRule(..))));
        let foreign = Algebra::new(
            "x",
            1,
            fams.clone(),
            BValue::Symbolic,
            vec![RuleSpec::new("L", "L", Some("L"), p("d + m"))],
        );
        assert!(matches!(
            foreign,
            Err(AlgebraError::ForeignVariable { var: 'm', .. })
        ));
        let unknown = Algebra::new(
            "x",
            1,
            fams.clone(),
            BValue::Symbolic,
            vec![RuleSpec::new("L", "L", Some("G"), p("d"))],
        );
        assert!(matches!(unknown, Err(AlgebraError::UnknownFamily(_))));
        let law = Algebra::new(
            "x",
            2,
            fams,
            BValue::Symbolic,
            vec![RuleSpec::new("L", "L", Some("L:1"), p("d"))],
        );
        assert!(matches!(law, Err(AlgebraError::IndexLaw { .. })));
    }
}
