//! λ-brackets in the loop W(a,b) algebra, including the conformal rules
//! for ∂ in either slot.

use lca::{make_catalog, BValue, CatalogKind, Element, Poly, Var};

fn main() {
    let alg = make_catalog(CatalogKind::Clw, 3, Some(BValue::Symbolic)).unwrap();
    println!("{} with families {:?}", alg.name(), alg.families());

    let l1 = Element::generator(alg.gen("L", 1).unwrap());
    let l2 = Element::generator(alg.gen("L", 2).unwrap());
    let g2 = Element::generator(alg.gen("G", 2).unwrap());

    for (x, y, label) in [
        (&l1, &l2, "L:1, L:2"),
        (&l1, &g2, "L:1, G:2"),
        (&g2, &l1, "G:2, L:1"),
        (&g2, &g2, "G:2, G:2"),
    ] {
        let v = alg.bracket_at(x, y, Var::L);
        println!("[{label}]_λ = {}", alg.display(&v));
    }

    // ∂ on the left becomes −λ, on the right ∂+λ
    let left = alg.bracket_at(&l1.derive(), &g2, Var::L);
    let right = alg.bracket_at(&l1, &g2.derive(), Var::L);
    println!("[∂L:1, G:2]_λ = {}", alg.display(&left));
    println!("[L:1, ∂G:2]_λ = {}", alg.display(&right));

    // a general spectral argument
    let spectral = Poly::var(Var::L) + Poly::var(Var::M);
    let v = alg.bracket(&l1, &l1, &spectral);
    println!("[L:1, L:1]_(λ+μ) = {}", alg.display(&v));
}
