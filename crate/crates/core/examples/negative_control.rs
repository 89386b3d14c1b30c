//! The G-component family only exists at b = −1. Building its table at other
//! values of b leaves a residual proportional to b + 1.

use std::sync::Arc;

use lca::bimap::{family_table, make_family, verify_map, Family, Identity};
use lca::{make_catalog, BValue, CatalogKind, Rational};

fn main() {
    let family = Family::ClwShift {
        shift: 0,
        a: Rational::from_integer(0.into()),
        g: Rational::from_integer(1.into()),
    };
    for b in [-1, 0, 1, 2] {
        let alg = Arc::new(
            make_catalog(
                CatalogKind::Clw,
                1,
                Some(BValue::Numeric(Rational::from_integer(b.into()))),
            )
            .unwrap(),
        );
        if let Err(e) = make_family(&alg, &family) {
            println!("make_family at b = {b}: {e}");
        }
        let phi = family_table(&alg, &family).unwrap();
        let report = verify_map(&phi, &[Identity::Def1b]);
        println!(
            "b = {b:>2}: def1b {}",
            if report.pass() { "holds" } else { "fails" }
        );
        for r in &report.failures {
            let args: Vec<String> = r.args.iter().map(|g| alg.gen_name(*g)).collect();
            println!("    ({}) = {}", args.join(", "), alg.display(&r.value));
        }
    }
}
