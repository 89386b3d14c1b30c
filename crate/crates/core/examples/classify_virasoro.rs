//! Brute-force classification on Virasoro: every degree-bounded
//! biderivation is a multiple of the inner one.

use std::sync::Arc;

use lca::bimap::Identity;
use lca::solver::{match_templates, solve_bider};
use lca::{make_catalog, CatalogKind};

fn main() {
    let vir = Arc::new(make_catalog(CatalogKind::Vir, 1, None).unwrap());
    for degree in 1..=4 {
        for tags in [
            [Identity::Def1a, Identity::Def1b],
            [Identity::Def1a, Identity::Lem1],
        ] {
            let space = solve_bider(&vir, degree, &tags).unwrap();
            let report = match_templates(&space);
            println!(
                "D = {degree} {:?}: {} unknowns, {} rows, dimension {}, unmatched {}",
                tags.map(|t| t.name()),
                space.unknowns,
                space.rows,
                space.dimension(),
                report.unmatched.len()
            );
        }
    }
    let space = solve_bider(&vir, 3, &[Identity::Def1a, Identity::Def1b]).unwrap();
    let phi = &space.basis[0];
    for ((x, y), v) in phi.entries() {
        println!(
            "basis: φ({}, {}) = {}",
            vir.gen_name(*x),
            vir.gen_name(*y),
            vir.display(v)
        );
    }
}
