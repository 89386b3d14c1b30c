//! Loading algebras and maps from JSON, and writing solver output back out.

use std::path::Path;
use std::sync::Arc;

use lca::algebra::{check_axioms, load_algebra};
use lca::bimap::{load_map, verify_map, BilinearMap, Identity};
use lca::solver::solve_bider;

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");

    let vir = Arc::new(load_algebra(data.join("vir.json")).unwrap());
    println!(
        "loaded {} (axioms ok: {})",
        vir.name(),
        check_axioms(&vir).pass()
    );
    println!("{}", vir.to_json());

    let inner = load_map(&vir, data.join("inner_vir.json")).unwrap();
    println!(
        "inner_vir.json passes: {}",
        verify_map(&inner, &Identity::ALL).pass()
    );

    let space = solve_bider(&vir, 2, &[Identity::Def1a, Identity::Def1b]).unwrap();
    let text = space.basis[0].to_json();
    println!("solver basis as a map file:\n{text}");
    let back = BilinearMap::from_json(&vir, &text).unwrap();
    assert_eq!(back, space.basis[0]);

    let tampered = load_algebra(data.join("vir_tampered.json")).unwrap();
    println!(
        "{} axioms ok: {}",
        tampered.name(),
        check_axioms(&tampered).pass()
    );
}
