//! Property suites shared by the `properties` and `acceptance` targets.
//!
//! Every suite runs [`CASES`] cases from a fixed seed, overridable through
//! `LCA_SEED`.

#![allow(dead_code)]

use std::sync::Arc;

use lca::bimap::{residual, BilinearMap, Identity};
use lca::poly::{Monomial, Subst};
use lca::{make_catalog, Algebra, BValue, CatalogKind, Element, Gen, Poly, Rational, Var};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

pub const CASES: u32 = 10_000;
const DEFAULT_SEED: u64 = 0x1CA_5EED;

pub fn seed() -> u64 {
    std::env::var("LCA_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..Config::default()
    })
}

/// Outcome of one suite: cases run, or the shrunk counterexample.
pub type SuiteResult = Result<u32, String>;

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> SuiteResult {
    r.map(|()| CASES).map_err(|e| e.to_string())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn monomial_in(vars: &'static [Var], max_exp: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_exp, vars.len()).prop_map(move |exps| {
        let mut m = [0u32; 5];
        for (v, e) in vars.iter().zip(exps) {
            m[v.index()] = e;
        }
        Monomial(m)
    })
}

pub fn poly_in(
    vars: &'static [Var],
    max_exp: u32,
    max_terms: usize,
) -> impl Strategy<Value = Poly> {
    proptest::collection::vec((monomial_in(vars, max_exp), rational()), 0..=max_terms)
        .prop_map(Poly::from_terms)
}

pub fn poly() -> impl Strategy<Value = Poly> {
    poly_in(&Var::ALL, 2, 4)
}

fn subst() -> impl Strategy<Value = Subst> {
    proptest::collection::vec(
        (
            proptest::sample::select(Var::ALL.to_vec()),
            poly_in(&Var::ALL, 1, 3),
        ),
        0..=3,
    )
    .prop_map(|pairs| pairs.into_iter().collect())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

pub fn ring_axioms() -> SuiteResult {
    finish(runner().run(&(poly(), poly(), poly()), |(p, q, r)| {
        ensure(&p + &q == &q + &p, || "addition commutes".into())?;
        ensure(&p * &q == &q * &p, || "multiplication commutes".into())?;
        ensure(&(&p + &q) + &r == &p + &(&q + &r), || {
            "addition associates".into()
        })?;
        ensure(&(&p * &q) * &r == &p * &(&q * &r), || {
            "multiplication associates".into()
        })?;
        ensure(&p * &(&q + &r) == &(&p * &q) + &(&p * &r), || {
            "distributivity".into()
        })?;
        ensure(&p + &Poly::zero() == p && &p * &Poly::one() == p, || {
            "identities".into()
        })?;
        ensure(&(&p - &q) + &q == p && (&p + &(-&p)).is_zero(), || {
            "additive inverse".into()
        })?;
        ensure((&p * &Poly::zero()).is_zero(), || "zero annihilates".into())?;
        Ok(())
    }))
}

pub fn substitution_homomorphism() -> SuiteResult {
    finish(
        runner().run(&(poly(), poly(), subst(), rational()), |(p, q, s, c)| {
            ensure((&p + &q).subst(&s) == &p.subst(&s) + &q.subst(&s), || {
                "additive".into()
            })?;
            ensure((&p * &q).subst(&s) == &p.subst(&s) * &q.subst(&s), || {
                "multiplicative".into()
            })?;
            ensure(p.scale(&c).subst(&s) == p.subst(&s).scale(&c), || {
                "linear".into()
            })?;
            ensure(Poly::one().subst(&s) == Poly::one(), || "unital".into())?;
            Ok(())
        }),
    )
}

/// `λ ↦ −∂−λ` applied twice is the identity; so is the μ version.
pub fn skew_involution() -> SuiteResult {
    finish(runner().run(&poly(), |p| {
        for v in [Var::L, Var::M] {
            let s = Subst::single(v, lca::poly::skew_image(v));
            ensure(p.subst(&s).subst(&s) == p, || {
                format!("double skew in {v:?}")
            })?;
        }
        Ok(())
    }))
}

pub fn coeffs_reconstruction() -> SuiteResult {
    let splits: Vec<Vec<Var>> = vec![vec![Var::L], vec![Var::L, Var::M], vec![Var::D, Var::B]];
    finish(
        runner().run(&(poly(), proptest::sample::select(splits)), |(p, vars)| {
            let mut back = Poly::zero();
            for (m, c) in p.coeffs(&vars) {
                ensure(vars.iter().all(|v| !c.contains(*v)), || {
                    "coefficient still mentions a split variable".into()
                })?;
                back += &(&Poly::monomial(m, Rational::from_integer(1.into())) * &c);
            }
            ensure(back == p, || "Σ m·c reconstructs p".into())
        }),
    )
}

pub fn parse_print_round_trip() -> SuiteResult {
    finish(runner().run(&poly(), |p| {
        let text = p.to_string();
        let back: Poly = text
            .parse()
            .map_err(|e| TestCaseError::fail(format!("`{text}` did not parse: {e}")))?;
        ensure(back == p, || format!("`{text}` reparsed as `{back}`"))?;
        ensure(back.to_string() == text, || "printing is canonical".into())
    }))
}

pub fn clw(m: u32) -> Arc<Algebra> {
    Arc::new(make_catalog(CatalogKind::Clw, m, Some(BValue::Symbolic)).unwrap())
}

fn gen_of(alg: &Algebra) -> impl Strategy<Value = Gen> {
    proptest::sample::select(alg.generators())
}

/// Module elements with coefficients in `∂`.
fn element(alg: &Algebra) -> impl Strategy<Value = Element> {
    proptest::collection::vec((gen_of(alg), poly_in(&[Var::D], 2, 2)), 0..=3).prop_map(|terms| {
        let mut e = Element::zero();
        for (g, p) in terms {
            e.add_term(g, p);
        }
        e
    })
}

pub fn bracket_bilinearity() -> SuiteResult {
    let alg = clw(2);
    let strat = (element(&alg), element(&alg), element(&alg), rational());
    finish(runner().run(&strat, |(x, y, z, c)| {
        let br = |a: &Element, b: &Element| alg.bracket_at(a, b, Var::L);
        ensure(br(&x.add(&y), &z) == br(&x, &z).add(&br(&y, &z)), || {
            "left additive".into()
        })?;
        ensure(br(&x, &y.add(&z)) == br(&x, &y).add(&br(&x, &z)), || {
            "right additive".into()
        })?;
        ensure(br(&x.scale(&c), &y) == br(&x, &y).scale(&c), || {
            "left homogeneous".into()
        })?;
        ensure(br(&x, &y.scale(&c)) == br(&x, &y).scale(&c), || {
            "right homogeneous".into()
        })
    }))
}

pub fn bracket_sesquilinearity() -> SuiteResult {
    let alg = clw(2);
    finish(runner().run(&(element(&alg), element(&alg)), |(x, y)| {
        let xy = alg.bracket_at(&x, &y, Var::L);
        let lam = Poly::var(Var::L);
        ensure(
            alg.bracket_at(&x.derive(), &y, Var::L) == xy.mul_poly(&-&lam),
            || "[∂x_λ y] = −λ[x_λ y]".into(),
        )?;
        ensure(
            alg.bracket_at(&x, &y.derive(), Var::L) == xy.mul_poly(&(&Poly::var(Var::D) + &lam)),
            || "[x_λ ∂y] = (∂+λ)[x_λ y]".into(),
        )
    }))
}

/// Index-additivity of the bracket over `Z_m`.
pub fn grading() -> SuiteResult {
    let algebras: Vec<Arc<Algebra>> = vec![
        Arc::new(make_catalog(CatalogKind::Cw, 5, None).unwrap()),
        clw(4),
    ];
    finish(runner().run(
        &(
            proptest::sample::select(algebras),
            any::<u64>(),
            any::<u64>(),
        ),
        |(alg, i, j)| {
            let gens = alg.generators();
            let x = gens[(i % gens.len() as u64) as usize];
            let y = gens[(j % gens.len() as u64) as usize];
            let v = alg.bracket_at(&Element::generator(x), &Element::generator(y), Var::L);
            let k = (x.index + y.index) % alg.modulus();
            let graded = v.terms().all(|(g, _)| g.index == k);
            ensure(graded, || format!("{v:?} not in degree {k}"))
        },
    ))
}

fn bilinear_map(alg: &Arc<Algebra>) -> impl Strategy<Value = BilinearMap> {
    let gens = alg.generators();
    let pairs: Vec<(Gen, Gen)> = gens
        .iter()
        .flat_map(|x| gens.iter().map(move |y| (*x, *y)))
        .collect();
    let alg = alg.clone();
    let entry = proptest::collection::vec((gen_of(&alg), poly_in(&[Var::D, Var::L], 2, 2)), 0..=2);
    proptest::collection::vec(entry, pairs.len()).prop_map(move |values| {
        let mut phi = BilinearMap::zero(alg.clone());
        for ((x, y), terms) in pairs.iter().zip(values) {
            let mut e = Element::zero();
            for (g, p) in terms {
                e.add_term(g, p);
            }
            phi.set(*x, *y, e).unwrap();
        }
        phi
    })
}

/// Each residual is linear in the map.
pub fn residual_linearity() -> SuiteResult {
    let alg = Arc::new(make_catalog(CatalogKind::Cw, 2, None).unwrap());
    let tags = proptest::sample::select(Identity::ALL.to_vec());
    let args = proptest::collection::vec(gen_of(&alg), 4);
    let strat = (
        bilinear_map(&alg),
        bilinear_map(&alg),
        rational(),
        tags,
        args,
    );
    finish(runner().run(&strat, |(p, q, c, tag, args)| {
        let args = &args[..tag.arity()];
        let r = |phi: &BilinearMap| residual(phi, tag, args).unwrap().value;
        let combined = r(&p.add_scaled(&c, &q));
        ensure(combined == r(&p).add(&r(&q).scale(&c)), || {
            format!("{tag} at {args:?}")
        })
    }))
}

pub type Suite = fn() -> SuiteResult;

pub const SUITES: &[(&str, Suite)] = &[
    ("ring axioms", ring_axioms),
    ("substitution homomorphism", substitution_homomorphism),
    ("skew substitution involution", skew_involution),
    ("coefficient extraction", coeffs_reconstruction),
    ("parse/print round-trip", parse_print_round_trip),
    ("bracket bilinearity", bracket_bilinearity),
    ("bracket sesquilinearity", bracket_sesquilinearity),
    ("bracket grading", grading),
    ("residual linearity", residual_linearity),
];
