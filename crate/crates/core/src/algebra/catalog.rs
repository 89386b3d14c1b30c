use super::{parse_expr, Algebra, AlgebraError, BValue, RuleSpec};

/// Built-in algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogKind {
    /// Virasoro: `[L_λ L] = (∂+2λ)L`.
    Vir,
    /// Loop Virasoro: `[L_i λ L_j] = (∂+2λ)L_{i+j}`.
    Cw,
    /// Loop W(a,b) with families L, G and parameter `b`.
    Clw,
}

impl std::str::FromStr for CatalogKind {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vir" => Ok(CatalogKind::Vir),
            "cw" => Ok(CatalogKind::Cw),
            "clw" => Ok(CatalogKind::Clw),
            _ => Err(AlgebraError::InvalidParameters(format!(
                "unknown catalog `{s}`"
            ))),
        }
    }
}

const VIR_RULE: &str = "d + 2*l";
const LG_RULE: &str = "d + (1 - b)*l";
const GL_RULE: &str = "-(b*d + (b - 1)*l)";

/// Builds a catalog algebra truncated to `Z_m`.
///
/// `b` is only accepted for [`CatalogKind::Clw`], where it defaults to
/// symbolic. `Vir` requires `m = 1`.
pub fn make_catalog(kind: CatalogKind, m: u32, b: Option<BValue>) -> Result<Algebra, AlgebraError> {
    if m == 0 {
        return Err(AlgebraError::InvalidParameters(
            "m must be at least 1".into(),
        ));
    }
    let vir = parse_expr(VIR_RULE)?;
    match kind {
        CatalogKind::Vir | CatalogKind::Cw => {
            if b.is_some() {
                return Err(AlgebraError::InvalidParameters(
                    "b is only accepted for clw".into(),
                ));
            }
            if kind == CatalogKind::Vir && m != 1 {
                return Err(AlgebraError::InvalidParameters(
                    "vir has a single generator; use cw for m > 1".into(),
                ));
            }
            let name = match kind {
                CatalogKind::Vir => "Vir".to_string(),
                _ => format!("CW[m={m}]"),
            };
            Algebra::new(
                name,
                m,
                vec!["L".into()],
                BValue::Symbolic,
                vec![RuleSpec::new("L", "L", Some("L"), vir)],
            )
        }
        CatalogKind::Clw => {
            let b = b.unwrap_or(BValue::Symbolic);
            Algebra::new(
                format!("CLW[m={m},b={b}]"),
                m,
                vec!["L".into(), "G".into()],
                b,
                vec![
                    RuleSpec::new("L", "L", Some("L"), vir),
                    RuleSpec::new("L", "G", Some("G"), parse_expr(LG_RULE)?),
                    RuleSpec::new("G", "L", Some("G"), parse_expr(GL_RULE)?),
                    RuleSpec::new("G", "G", None, crate::poly::Poly::zero()),
                ],
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Poly};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn vir_table() {
        let a = make_catalog(CatalogKind::Vir, 1, None).unwrap();
        assert_eq!(a.families(), ["L"]);
        assert_eq!(a.rule(0, 0).target, Some(0));
        assert_eq!(a.rule(0, 0).coeff, p("d + 2*l"));
    }

    #[test]
    fn vir_is_cw_at_m1() {
        let vir = make_catalog(CatalogKind::Vir, 1, None).unwrap();
        let cw = make_catalog(CatalogKind::Cw, 1, None).unwrap();
        assert_eq!(vir.rule(0, 0), cw.rule(0, 0));
        assert_eq!(vir.generators(), cw.generators());
    }

    #[test]
    fn clw_symbolic_table() {
        let a = make_catalog(CatalogKind::Clw, 3, Some(BValue::Symbolic)).unwrap();
        let (l, g) = (0, 1);
        assert_eq!(a.rule(g, g).target, None);
        assert_eq!(a.rule(l, g).coeff, p("d + l - l*b"));
        assert_eq!(a.rule(g, l).coeff, p("-b*d - b*l + l"));
        assert_eq!(a.generators().len(), 6);
    }

    #[test]
    fn clw_numeric_b_substituted() {
        let a = make_catalog(CatalogKind::Clw, 2, Some(BValue::Numeric(rat(-1, 1)))).unwrap();
        assert_eq!(a.rule(0, 1).coeff, p("d + 2*l"));
        assert!(a
            .rule(1, 0)
            .coeff
            .vars()
            .iter()
            .all(|v| *v != crate::poly::Var::B));
    }

    #[test]
    fn invalid_combinations() {
        assert!(make_catalog(CatalogKind::Vir, 1, Some(BValue::Symbolic)).is_err());
        assert!(make_catalog(CatalogKind::Cw, 2, Some(BValue::Numeric(rat(1, 1)))).is_err());
        assert!(make_catalog(CatalogKind::Vir, 2, None).is_err());
        assert!(make_catalog(CatalogKind::Cw, 0, None).is_err());
        assert!("w".parse::<CatalogKind>().is_err());
    }
}
