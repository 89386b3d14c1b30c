//! The closed-form biderivation families, verified on every identity.

use std::sync::Arc;

use lca::bimap::{make_family, verify_map, Family, Identity};
use lca::{make_catalog, BValue, CatalogKind, Rational};

fn main() {
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    let minus_one = BValue::Numeric(-one.clone());

    let cases = [
        (
            make_catalog(CatalogKind::Vir, 1, None).unwrap(),
            Family::Inner {
                t: Rational::new(5.into(), 3.into()),
            },
        ),
        (
            make_catalog(CatalogKind::Cw, 3, None).unwrap(),
            Family::CwShift {
                shift: 2,
                a: one.clone(),
            },
        ),
        (
            make_catalog(CatalogKind::Clw, 2, Some(BValue::Symbolic)).unwrap(),
            Family::ClwShift {
                shift: 1,
                a: one.clone(),
                g: zero.clone(),
            },
        ),
        (
            make_catalog(CatalogKind::Clw, 3, Some(minus_one)).unwrap(),
            Family::ClwShift {
                shift: 2,
                a: zero,
                g: one,
            },
        ),
    ];

    for (alg, family) in cases {
        let alg = Arc::new(alg);
        let phi = make_family(&alg, &family).unwrap();
        let report = verify_map(&phi, &Identity::ALL);
        let counts: Vec<String> = report
            .checked
            .iter()
            .map(|(t, n)| format!("{t}:{n}"))
            .collect();
        println!(
            "{family} on {}: {} [{}]",
            alg.name(),
            if report.pass() {
                "all residuals zero"
            } else {
                "FAIL"
            },
            counts.join(" ")
        );
        if let Some(((x, y), v)) = phi.entries().next() {
            println!(
                "    φ({}, {}) = {}",
                alg.gen_name(*x),
                alg.gen_name(*y),
                alg.display(v)
            );
        };
    }
}
