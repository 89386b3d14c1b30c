//! Skew-symmetry and Jacobi checks over the built-in catalog, followed by a
//! deliberately broken table that fails.

use lca::algebra::{check_axioms, RuleSpec};
use lca::{make_catalog, Algebra, BValue, CatalogKind, Rational};

fn main() {
    let mut algebras = vec![make_catalog(CatalogKind::Vir, 1, None).unwrap()];
    for m in 1..=4 {
        algebras.push(make_catalog(CatalogKind::Cw, m, None).unwrap());
    }
    let bs = [
        BValue::Symbolic,
        BValue::Numeric(Rational::from_integer((-1).into())),
        BValue::Numeric(Rational::new(3.into(), 2.into())),
    ];
    for m in 1..=3 {
        for b in &bs {
            algebras.push(make_catalog(CatalogKind::Clw, m, Some(b.clone())).unwrap());
        }
    }
    for alg in &algebras {
        let report = check_axioms(alg);
        println!(
            "{:<22} skew {:>3}  jacobi {:>4}  {}",
            alg.name(),
            report.skew.len(),
            report.jacobi.len(),
            if report.pass() { "ok" } else { "FAIL" }
        );
    }

    let broken = Algebra::new(
        "broken",
        1,
        vec!["L".into()],
        BValue::Symbolic,
        vec![RuleSpec::new("L", "L", Some("L"), "d + l".parse().unwrap())],
    )
    .unwrap();
    let report = check_axioms(&broken);
    println!("\n{}: pass = {}", broken.name(), report.pass());
    for (kind, r) in report.failures() {
        let args: Vec<String> = r.args.iter().map(|g| broken.gen_name(*g)).collect();
        println!(
            "  {kind} ({}) = {}",
            args.join(", "),
            broken.display(&r.value)
        );
    }
}
