//! Round-trip properties: parse . print is the identity on polynomials,
//! and manifests re-serialize bit-identically.

use std::sync::Arc;

use proptest::prelude::*;
use singeq_cli::manifest::Manifest;
use singeq_cli::parse_poly;
use singeq_core::ring::{GaussianRational, Monomial, Poly, RingContext};

fn ring3() -> Arc<RingContext> {
    RingContext::new(vec!["z0", "z1", "w2"]).unwrap()
}

fn arb_coeff() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5).prop_map(|(an, ad, bn, bd)| {
        GaussianRational::new(
            num_rational::BigRational::new(an.into(), ad.into()),
            num_rational::BigRational::new(bn.into(), bd.into()),
        )
    })
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    let term = (arb_coeff(), prop::collection::vec(0u32..5, 3));
    prop::collection::vec(term, 0..8).prop_map(|terms| {
        let ring = ring3();
        Poly::from_terms(
            &ring,
            terms.into_iter().map(|(c, exps)| (Monomial::from_exps(exps), c)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_then_parse_is_identity(p in arb_poly()) {
        let ring = ring3();
        let text = p.to_string();
        let reparsed = parse_poly(&text, &ring).unwrap();
        prop_assert_eq!(reparsed, p);
    }

    #[test]
    fn printing_is_stable(p in arb_poly()) {
        let ring = ring3();
        let text = p.to_string();
        let again = parse_poly(&text, &ring).unwrap().to_string();
        prop_assert_eq!(again, text);
    }
}

#[test]
fn germ_manifest_roundtrip_examples() {
    for json in [
        r#"{"schema_version":"1","ring":{"variables":["z0"]},"payload":{"germ":"z0^3"}}"#,
        r#"{"schema_version":"1","ring":{"variables":["z"]},"payload":{"mf":{"A":[["z"]],"B":[["z"]],"f":"z^2"}}}"#,
        r#"{"schema_version":"1","payload":{"verdict":{"outcome":"not_equivalent","certificate":{"parity_obstruction":{"left_dim":0,"right_dim":1}},"left":{"variables":["z0"],"germ":"z0^3"},"right":{"variables":["z0","w1"],"germ":"z0^3 + w1^2"},"degree_cap":32}}}"#,
    ] {
        let m = Manifest::from_json(json).unwrap();
        assert_eq!(m.to_json(), json);
    }
}
