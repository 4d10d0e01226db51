//! Fixtures `fig1` to `fig5`: one small gadget instance per reduction family
//! with a witness, written as `fixtures/figN/{instance,witness,expected}.json`.
//!
//! Regeneration is deterministic, so the checked-in files double as a drift
//! check for the generators.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::io::to_pretty;
use crate::model::{edge_loads, embedding_cost, Embedding, Variant};
use crate::reductions::{
    build_witness, reduce, Artifact, BppSource, Certificate, PpSource, ReduceOptions, Reduction,
    SourceProblem, ThreeDmSource, ThreePpSource,
};

pub struct Fixture {
    pub name: &'static str,
    pub artifact: Artifact,
    pub witness: Embedding,
    pub expected: Expected,
}

/// Outcome recorded next to each figure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub name: &'static str,
    pub reduction: Reduction,
    pub variant: Variant,
    pub theta: Option<u64>,
    pub nodes: usize,
    /// Decision answer of the artifact.
    pub answer: bool,
    pub witness_cost: u64,
    pub witness_loads: Vec<u64>,
    pub capacities: Vec<Option<u64>>,
    /// Where the expected answer comes from.
    pub basis: &'static str,
}

const UNSAFE: ReduceOptions = ReduceOptions {
    allow_below_threshold: true,
};

fn figure(
    name: &'static str,
    reduction: Reduction,
    source: SourceProblem,
    cert: Certificate,
) -> Result<Fixture> {
    let artifact = reduce(reduction, &source, UNSAFE)?;
    let witness = build_witness(&artifact, &cert)?;
    let inst = &artifact.instance;
    let expected = Expected {
        name,
        reduction,
        variant: inst.variant,
        theta: inst.theta,
        nodes: inst.n(),
        answer: artifact.criterion_met(&witness)?,
        witness_cost: embedding_cost(inst, &witness)?,
        witness_loads: edge_loads(inst, &witness)?,
        capacities: inst
            .pn
            .edges()
            .iter()
            .map(|e| e.capacity.finite())
            .collect(),
        basis: "constructive witness from the source certificate",
    };
    Ok(Fixture {
        name,
        artifact,
        witness,
        expected,
    })
}

/// The five fixtures in order.
pub fn figures() -> Result<Vec<Fixture>> {
    Ok(vec![
        figure(
            "fig1",
            Reduction::BppLineOnLine,
            SourceProblem::Bpp(BppSource {
                a: vec![5, 3, 1],
                b: 5,
                k: 2,
            }),
            Certificate::Bins {
                bins: vec![vec![0], vec![1, 2]],
            },
        )?,
        figure(
            "fig2",
            Reduction::BppLineOnUniformTree,
            SourceProblem::Bpp(BppSource {
                a: vec![2, 3],
                b: 3,
                k: 2,
            }),
            Certificate::Bins {
                bins: vec![vec![0], vec![1]],
            },
        )?,
        figure(
            "fig3",
            Reduction::ThreePpStarOn2Star,
            SourceProblem::ThreePp(ThreePpSource {
                a: vec![5, 3, 4, 2, 1, 1],
            }),
            Certificate::Triples {
                triples: vec![vec![3, 0, 4], vec![2, 1, 5]],
            },
        )?,
        figure(
            "fig4",
            Reduction::PpStarOnLine,
            SourceProblem::Pp(PpSource { a: vec![5, 3, 2] }),
            Certificate::Halves {
                left: vec![1, 2],
                right: vec![0],
            },
        )?,
        figure(
            "fig5",
            Reduction::ThreeDmOversub2Star,
            SourceProblem::ThreeDm(ThreeDmSource {
                q: 2,
                triplets: vec![[0, 0, 0], [0, 1, 0], [0, 1, 1], [1, 1, 1]],
            }),
            Certificate::Matching {
                triplets: vec![0, 3],
            },
        )?,
    ])
}

/// File contents of one fixture, keyed by path relative to the fixture root.
pub fn render(fx: &Fixture) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(fx.name);
    vec![
        (dir.join("instance.json"), fx.artifact.to_json() + "\n"),
        (dir.join("witness.json"), to_pretty(&fx.witness) + "\n"),
        (dir.join("expected.json"), to_pretty(&fx.expected) + "\n"),
    ]
}

/// Writes every fixture below `root`.
pub fn regenerate(root: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for fx in figures()? {
        for (rel, text) in render(&fx) {
            let path = root.join(rel);
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, text)?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Files below `root` that are missing or differ from a fresh regeneration.
pub fn drift(root: &Path) -> Result<Vec<PathBuf>> {
    let mut stale = Vec::new();
    for fx in figures()? {
        for (rel, text) in render(&fx) {
            let path = root.join(rel);
            if std::fs::read_to_string(&path).ok().as_deref() != Some(text.as_str()) {
                stale.push(path);
            }
        }
    }
    Ok(stale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regeneration_is_deterministic() {
        let a: Vec<_> = figures().unwrap().iter().flat_map(render).collect();
        let b: Vec<_> = figures().unwrap().iter().flat_map(render).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn every_figure_witness_meets_its_criterion() {
        for fx in figures().unwrap() {
            assert!(fx.expected.answer, "{}", fx.name);
        }
    }

    #[test]
    fn drift_detects_missing_and_edited_files() {
        let dir = std::env::temp_dir().join(format!("vne-fixtures-{}", std::process::id()));
        regenerate(&dir).unwrap();
        assert!(drift(&dir).unwrap().is_empty());
        std::fs::write(dir.join("fig4/witness.json"), "{}").unwrap();
        std::fs::remove_file(dir.join("fig1/expected.json")).unwrap();
        assert_eq!(drift(&dir).unwrap().len(), 2);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
