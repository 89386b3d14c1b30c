//! Classification on the Z_m loop algebras, with every basis vector matched
//! back to the closed-form families.

use std::sync::Arc;
use std::time::Instant;

use lca::bimap::Identity;
use lca::solver::{match_templates, solve_bider};
use lca::{make_catalog, Algebra, BValue, CatalogKind, Rational};

fn run(alg: Algebra, degree: u32) {
    let alg = Arc::new(alg);
    let start = Instant::now();
    let space = solve_bider(&alg, degree, &[Identity::Def1a, Identity::Def1b]).unwrap();
    let report = match_templates(&space);
    println!(
        "{:<16} D={degree}  unknowns {:>5}  rows {:>6}  dim {}  unmatched {}  ({:.2?})",
        alg.name(),
        space.unknowns,
        space.rows,
        space.dimension(),
        report.unmatched.len(),
        start.elapsed()
    );
    for m in &report.matched {
        let parts: Vec<String> = m
            .combination
            .iter()
            .map(|(f, c)| format!("{c}·{f}"))
            .collect();
        println!("    basis[{}] = {}", m.basis_index, parts.join(" + "));
    }
}

fn main() {
    for m in 1..=4 {
        run(make_catalog(CatalogKind::Cw, m, None).unwrap(), 2);
    }
    for b in [-1, 0, 1] {
        for m in 1..=2 {
            let b = BValue::Numeric(Rational::from_integer(b.into()));
            run(make_catalog(CatalogKind::Clw, m, Some(b)).unwrap(), 2);
        }
    }
}
