mod common;

macro_rules! suite {
    ($name:ident) => {
        #[test]
        fn $name() {
            let cases = common::$name().unwrap_or_else(|e| panic!("seed {}: {e}", common::seed()));
            assert!(cases >= 10_000);
        }
    };
}

suite!(ring_axioms);
suite!(substitution_homomorphism);
suite!(skew_involution);
suite!(coeffs_reconstruction);
suite!(parse_print_round_trip);
suite!(bracket_bilinearity);
suite!(bracket_sesquilinearity);
suite!(grading);
suite!(residual_linearity);
