use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vne_core::generate::{instance, random_connected_pn, random_connected_vn};
use vne_core::io::{embedding_from_json, embedding_to_json, instance_from_json, instance_to_json};
use vne_core::reductions::{reduce, Artifact, BppSource, ReduceOptions, Reduction, SourceProblem};
use vne_core::{solve_exact, OracleConfig, Variant};

fn variant(i: u8) -> Variant {
    [Variant::Wvne, Variant::Cvne, Variant::Wcvne][i as usize % 3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn instance_text_is_a_fixed_point(seed in any::<u64>(), n in 2usize..7, v in 0u8..3, capped in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let caps = capped.then_some(0..=9);
        let pn = random_connected_pn(&mut rng, n, 0..=5, caps, 0.4);
        let vn = random_connected_vn(&mut rng, n, 0..=5, 0.4);
        let inst = instance(variant(v), vn, pn);
        let text = instance_to_json(&inst);
        let back = instance_from_json(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(instance_to_json(&back), text);
    }

    #[test]
    fn oracle_witness_survives_json(seed in any::<u64>(), n in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pn = random_connected_pn(&mut rng, n, 0..=5, None, 0.5);
        let vn = random_connected_vn(&mut rng, n, 1..=3, 0.5);
        let inst = instance(Variant::Wvne, vn, pn);
        let res = solve_exact(&inst, &OracleConfig::default()).unwrap();
        let emb = res.witness().unwrap();
        let back = embedding_from_json(&embedding_to_json(emb)).unwrap();
        prop_assert_eq!(&back, emb);
    }

    #[test]
    fn artifact_text_is_a_fixed_point(a in proptest::collection::vec(1u64..4, 1..4), k in 1u64..4) {
        let sum: u64 = a.iter().sum();
        let b = sum.div_ceil(k) + 1;
        let src = SourceProblem::Bpp(BppSource { a, b, k });
        for r in [Reduction::BppLineOnLine, Reduction::Bpp2StarOn2Star] {
            let Ok(art) = reduce(r, &src, ReduceOptions::default()) else { continue };
            let text = art.to_json();
            let back = Artifact::from_json(&text).unwrap();
            prop_assert_eq!(back.to_json(), text);
            // an artifact is also a plain instance
            prop_assert_eq!(instance_from_json(&art.to_json()).unwrap(), art.instance);
        }
    }
}

#[test]
fn malformed_documents_are_rejected() {
    assert!(instance_from_json("{").is_err());
    assert!(instance_from_json(r#"{"variant":"wvne","vn":{"n":2,"edges":[]}}"#).is_err());
    assert!(embedding_from_json(r#"{"node_map":[0,1],"paths":{"1-0":[1,0]}}"#).is_err());
    assert!(
        embedding_from_json(r#"{"node_map":[0,1],"paths":{"0-1":[0,1],"0 - 1":[0,1]}}"#).is_err()
    );
}
