//! Exact polynomial kernel: parsing, arithmetic, substitution and the
//! canonical printer.

use lca::poly::{skew_image, Subst};
use lca::{Poly, Var};

fn main() {
    let p: Poly = "-(b*d + (b-1)*l)".parse().expect("valid expression");
    println!("p            = {p}");

    let q: Poly = "d + 2*l".parse().unwrap();
    println!("q            = {q}");
    println!("p * q        = {}", &p * &q);
    println!("(p + q)^2    = {}", (&p + &q).pow(2));

    // λ ↦ −∂−λ, the substitution behind skew-symmetry
    let skew = Subst::single(Var::L, skew_image(Var::L));
    println!("q(λ→−∂−λ)    = {}", q.subst(&skew));
    println!("twice        = {}", q.subst(&skew).subst(&skew));

    // specialize b and shift the second slot at once
    let s = Subst::new()
        .with(Var::B, Poly::int(-1))
        .with(Var::D, Poly::var(Var::D) + Poly::var(Var::L));
    println!("p(b=−1,∂→∂+λ) = {}", p.subst(&s));

    // coefficients with respect to the spectral variable
    for (m, c) in (&p * &q).coeffs(&[Var::L]) {
        println!("  [{m}] {c}");
    }

    for bad in ["d +", "d/2", "x*l", "1/0"] {
        match bad.parse::<Poly>() {
            Ok(p) => println!("{bad:>6} parsed as {p}"),
            Err(e) => println!("{bad:>6} rejected: {e}"),
        }
    }
}
