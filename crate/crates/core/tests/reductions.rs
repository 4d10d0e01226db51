use vne_core::oracle::{decide, solve_exact};
use vne_core::reductions::{
    brute_force_source, build_witness, extract_certificate, reduce, transform_wvne0_to_cvne,
    verify_source, BppSource, Certificate, HamSource, PpSource, ReduceOptions, Reduction,
    SourceProblem, ThreeDmSource, ThreePpSource,
};
use vne_core::{validate_embedding, Embedding, OracleConfig, Variant, VneError};

fn bpp(a: &[u64], b: u64, k: u64) -> SourceProblem {
    SourceProblem::Bpp(BppSource {
        a: a.to_vec(),
        b,
        k,
    })
}

/// Oracle verdict on the gadget of `src`, checked against the source answer.
fn agrees(r: Reduction, src: &SourceProblem) -> bool {
    let art = reduce(r, src, ReduceOptions::default()).unwrap();
    let inst = &art.instance;
    let res = solve_exact(inst, &OracleConfig::default().allowing(inst.n())).unwrap();
    let verdict = decide(inst, &res).unwrap();
    let expected = brute_force_source(src).unwrap();
    assert_eq!(verdict, expected.is_some(), "{r} on {src:?}");
    if let Some(cert) = expected {
        let emb = build_witness(&art, &cert).unwrap();
        validate_embedding(inst, &emb).into_result().unwrap();
        assert!(art.criterion_met(&emb).unwrap());
        let back = extract_certificate(&art, res.witness().unwrap()).unwrap();
        assert!(verify_source(src, &back).unwrap());
    }
    verdict
}

#[test]
fn bin_packing_gadgets_agree_with_the_source() {
    let yes = bpp(&[2, 1, 1], 2, 2);
    let no = bpp(&[2, 2, 2], 3, 2);
    for r in [
        Reduction::BppLineOnLine,
        Reduction::BppLineOnUniformTree,
        Reduction::Bpp2StarOn2Star,
    ] {
        assert!(agrees(r, &yes), "{r}");
        assert!(!agrees(r, &no), "{r}");
    }
}

#[test]
fn uniform_two_star_gadget_agrees_with_the_source() {
    assert!(agrees(
        Reduction::Bpp2StarOnUniform2Star,
        &bpp(&[1, 1], 1, 2)
    ));
    let err = reduce(
        Reduction::Bpp2StarOnUniform2Star,
        &bpp(&[2], 2, 1),
        ReduceOptions::default(),
    )
    .unwrap_err();
    assert!(matches!(err, VneError::InvalidSource(_)));
}

#[test]
fn partition_gadgets_agree_with_the_source() {
    assert!(agrees(
        Reduction::PpStarOnLine,
        &SourceProblem::Pp(PpSource {
            a: vec![3, 1, 1, 1]
        })
    ));
    assert!(!agrees(
        Reduction::PpStarOnLine,
        &SourceProblem::Pp(PpSource { a: vec![4, 1, 1] })
    ));
    let tpp = |a: &[u64]| SourceProblem::ThreePp(ThreePpSource { a: a.to_vec() });
    assert!(agrees(
        Reduction::ThreePpStarOn2Star,
        &tpp(&[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1])
    ));
    assert!(!agrees(
        Reduction::ThreePpStarOn2Star,
        &tpp(&[4, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1])
    ));
}

#[test]
fn ham_gadget_agrees_with_the_source() {
    let path = SourceProblem::Ham(HamSource {
        n: 4,
        edges: vec![(0, 1), (1, 2), (2, 3)],
    });
    let claw = SourceProblem::Ham(HamSource {
        n: 4,
        edges: vec![(0, 1), (0, 2), (0, 3)],
    });
    assert!(agrees(Reduction::Ham, &path));
    assert!(!agrees(Reduction::Ham, &claw));
}

#[test]
fn matching_gadget_agrees_with_the_source() {
    let yes = SourceProblem::ThreeDm(ThreeDmSource {
        q: 3,
        triplets: vec![[0, 0, 0], [1, 1, 1], [2, 2, 2], [0, 1, 2]],
    });
    let no = SourceProblem::ThreeDm(ThreeDmSource {
        q: 3,
        triplets: vec![[0, 0, 0], [0, 1, 1], [1, 0, 2], [2, 2, 1]],
    });
    assert!(agrees(Reduction::ThreeDmOversub2Star, &yes));
    assert!(!agrees(Reduction::ThreeDmOversub2Star, &no));
}

#[test]
fn capacity_transform_keeps_the_answer() {
    for src in [bpp(&[2, 1, 1], 2, 2), bpp(&[2, 2, 2], 3, 2)] {
        let art = reduce(Reduction::BppLineOnLine, &src, ReduceOptions::default()).unwrap();
        let cap = transform_wvne0_to_cvne(&art).unwrap();
        assert_eq!(cap.instance.variant, Variant::Cvne);
        assert_eq!(cap.instance.theta, None);
        assert!(transform_wvne0_to_cvne(&cap).is_err());
        let res = solve_exact(
            &cap.instance,
            &OracleConfig::default().allowing(cap.instance.n()),
        )
        .unwrap();
        assert_eq!(
            decide(&cap.instance, &res).unwrap(),
            brute_force_source(&src).unwrap().is_some()
        );
    }
    let octopus = reduce(
        Reduction::BppLineOnUniformTree,
        &bpp(&[2, 1, 1], 2, 2),
        ReduceOptions::default(),
    )
    .unwrap();
    assert!(transform_wvne0_to_cvne(&octopus).is_err());
}

#[test]
fn extraction_refuses_embeddings_missing_the_criterion() {
    let src = bpp(&[2, 1, 1], 2, 2);
    let art = reduce(Reduction::BppLineOnLine, &src, ReduceOptions::default()).unwrap();
    let n = art.instance.n();
    // reversed identity is a bijection, usually far from optimal
    let emb = Embedding::routed(&art.instance.vn, (0..n).rev().collect(), |a, b| {
        if a < b {
            (a..=b).collect()
        } else {
            (b..=a).rev().collect()
        }
    });
    if !art.criterion_met(&emb).unwrap() {
        assert!(matches!(
            extract_certificate(&art, &emb),
            Err(VneError::CriterionNotMet(_))
        ));
    }
}

#[test]
fn certificates_of_the_wrong_kind_are_malformed() {
    let src = bpp(&[1, 1], 1, 2);
    let cert = Certificate::Halves {
        left: vec![0],
        right: vec![1],
    };
    assert!(matches!(
        verify_source(&src, &cert),
        Err(VneError::MalformedCertificate(_))
    ));
}
