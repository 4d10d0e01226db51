//! NP-hardness gadgets.
//!
//! Every generator returns an [`Artifact`]: the VNE instance plus a role label
//! for each virtual and physical node, so that a witness embedding can be
//! mapped back to a solution of the source problem even after the artifact
//! went through JSON. Each gadget also has a constructive witness builder
//! that turns a source certificate into an embedding meeting the artifact's
//! criterion.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, VneError};
use crate::model::{
    check_capacities, embedding_cost, validate_embedding, Embedding, Instance, Variant,
};

mod bpp;
mod ham;
mod matching;
mod partition;
mod source;
mod transform;

pub use bpp::{
    reduce_bpp_2star_on_2star, reduce_bpp_2star_on_uniform_2star, reduce_bpp_line_on_line,
    reduce_bpp_line_on_uniform_tree,
};
pub use ham::reduce_ham;
pub use matching::reduce_3dm_oversub_2star;
pub use partition::{reduce_3pp_star_on_2star, reduce_pp_star_on_line};
pub use source::{
    brute_force_source, verify_source, BppSource, Certificate, HamSource, PpSource, SourceProblem,
    ThreeDmSource, ThreePpSource, MAX_3DM_Q, MAX_HAM_N, MAX_ITEMS,
};
pub use transform::transform_wvne0_to_cvne;

/// Role of a node inside a gadget, written `name:i:j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Role {
    pub name: String,
    pub index: Vec<usize>,
}

impl Role {
    pub fn new(name: &str, index: impl Into<Vec<usize>>) -> Self {
        Role {
            name: name.to_string(),
            index: index.into(),
        }
    }

    pub fn plain(name: &str) -> Self {
        Role::new(name, Vec::new())
    }

    pub fn is(&self, name: &str) -> bool {
        self.name == name
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for i in &self.index {
            write!(f, ":{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Role {
    type Err = VneError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let name = parts
            .next()
            .filter(|n| !n.is_empty())
            .ok_or_else(|| bad_label(s))?;
        let index = parts
            .map(|p| p.parse::<usize>().map_err(|_| bad_label(s)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Role::new(name, index))
    }
}

fn bad_label(s: &str) -> VneError {
    VneError::InvalidInstance(format!("bad role label {s:?}"))
}

impl Serialize for Role {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Role {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labels {
    pub vn: Vec<Role>,
    pub pn: Vec<Role>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reduction {
    #[serde(rename = "ham")]
    Ham,
    #[serde(rename = "bpp-line-on-line")]
    BppLineOnLine,
    #[serde(rename = "bpp-line-on-uniform-tree")]
    BppLineOnUniformTree,
    #[serde(rename = "bpp-2star-on-2star")]
    Bpp2StarOn2Star,
    #[serde(rename = "bpp-2star-on-uniform-2star")]
    Bpp2StarOnUniform2Star,
    #[serde(rename = "3pp-star-on-2star")]
    ThreePpStarOn2Star,
    #[serde(rename = "pp-star-on-line")]
    PpStarOnLine,
    #[serde(rename = "3dm-oversub-2star")]
    ThreeDmOversub2Star,
}

impl Reduction {
    pub const ALL: [Reduction; 8] = [
        Reduction::Ham,
        Reduction::BppLineOnLine,
        Reduction::BppLineOnUniformTree,
        Reduction::Bpp2StarOn2Star,
        Reduction::Bpp2StarOnUniform2Star,
        Reduction::ThreePpStarOn2Star,
        Reduction::PpStarOnLine,
        Reduction::ThreeDmOversub2Star,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Reduction::Ham => "ham",
            Reduction::BppLineOnLine => "bpp-line-on-line",
            Reduction::BppLineOnUniformTree => "bpp-line-on-uniform-tree",
            Reduction::Bpp2StarOn2Star => "bpp-2star-on-2star",
            Reduction::Bpp2StarOnUniform2Star => "bpp-2star-on-uniform-2star",
            Reduction::ThreePpStarOn2Star => "3pp-star-on-2star",
            Reduction::PpStarOnLine => "pp-star-on-line",
            Reduction::ThreeDmOversub2Star => "3dm-oversub-2star",
        }
    }

    /// Source problem kind the gadget consumes.
    pub fn source_kind(self) -> &'static str {
        match self {
            Reduction::Ham => "ham",
            Reduction::PpStarOnLine => "pp",
            Reduction::ThreePpStarOn2Star => "3pp",
            Reduction::ThreeDmOversub2Star => "3dm",
            _ => "bpp",
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Reduction {
    type Err = VneError;

    fn from_str(s: &str) -> Result<Self> {
        Reduction::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| VneError::InvalidSource(format!("unknown reduction {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Emit gadgets whose source is below the size the hardness argument
    /// needs (`m < 4`, `q < 3`, `K < 2`). Such artifacts are tagged.
    pub allow_below_threshold: bool,
}

/// Generated instance plus the metadata needed to read certificates back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    #[serde(flatten)]
    pub instance: Instance,
    pub labels: Labels,
    pub source: SourceProblem,
    pub reduction: Reduction,
    #[serde(default)]
    pub capacity_transform: bool,
    #[serde(default)]
    pub below_threshold: bool,
}

impl Artifact {
    pub(crate) fn new(
        instance: Instance,
        labels: Labels,
        source: SourceProblem,
        reduction: Reduction,
    ) -> Self {
        debug_assert_eq!(labels.vn.len(), instance.n());
        debug_assert_eq!(labels.pn.len(), instance.n());
        Artifact {
            instance,
            labels,
            source,
            reduction,
            capacity_transform: false,
            below_threshold: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let art: Artifact = serde_json::from_str(text)?;
        art.check_labels()?;
        Ok(art)
    }

    pub fn to_json(&self) -> String {
        crate::io::to_pretty(self)
    }

    fn check_labels(&self) -> Result<()> {
        let n = self.instance.n();
        if self.labels.vn.len() != n || self.labels.pn.len() != n {
            return Err(VneError::InvalidInstance(format!(
                "labels cover {} virtual and {} physical nodes, expected {n} each",
                self.labels.vn.len(),
                self.labels.pn.len()
            )));
        }
        if self.source.kind() != self.reduction.source_kind() {
            return Err(VneError::InvalidInstance(format!(
                "reduction {} does not take a {} source",
                self.reduction,
                self.source.kind()
            )));
        }
        Ok(())
    }

    /// Whether `emb` is a valid embedding meeting the decision question:
    /// feasibility for capacity-only artifacts, cost at most theta otherwise.
    pub fn criterion_met(&self, emb: &Embedding) -> Result<bool> {
        let inst = &self.instance;
        if !validate_embedding(inst, emb).is_valid() {
            return Ok(false);
        }
        if inst.variant.respects_capacities() && !check_capacities(inst, emb)? {
            return Ok(false);
        }
        if inst.variant == Variant::Cvne {
            return Ok(true);
        }
        let theta = inst
            .theta
            .ok_or_else(|| VneError::MissingTheta("artifact has no cost bound".into()))?;
        Ok(embedding_cost(inst, emb)? <= theta)
    }

    /// Role of the physical node hosting virtual node `v`.
    pub fn host_role(&self, emb: &Embedding, v: usize) -> &Role {
        &self.labels.pn[emb.node_map[v]]
    }

    /// Virtual nodes labelled `name`, with their indices.
    pub fn vn_with<'a>(&'a self, name: &'a str) -> impl Iterator<Item = (usize, &'a Role)> + 'a {
        self.labels
            .vn
            .iter()
            .enumerate()
            .filter(move |(_, r)| r.is(name))
    }

    /// Physical node carrying exactly `role`.
    pub fn pn_node(&self, role: &Role) -> Option<usize> {
        self.labels.pn.iter().position(|r| r == role)
    }
}

/// Builds the gadget `reduction` for `source`.
pub fn reduce(
    reduction: Reduction,
    source: &SourceProblem,
    opts: ReduceOptions,
) -> Result<Artifact> {
    let wrong = || {
        VneError::InvalidSource(format!(
            "reduction {reduction} needs a {} source, got {}",
            reduction.source_kind(),
            source.kind()
        ))
    };
    match (reduction, source) {
        (Reduction::Ham, SourceProblem::Ham(s)) => reduce_ham(s),
        (Reduction::BppLineOnLine, SourceProblem::Bpp(s)) => reduce_bpp_line_on_line(s),
        (Reduction::BppLineOnUniformTree, SourceProblem::Bpp(s)) => {
            reduce_bpp_line_on_uniform_tree(s)
        }
        (Reduction::Bpp2StarOn2Star, SourceProblem::Bpp(s)) => reduce_bpp_2star_on_2star(s),
        (Reduction::Bpp2StarOnUniform2Star, SourceProblem::Bpp(s)) => {
            reduce_bpp_2star_on_uniform_2star(s, opts)
        }
        (Reduction::ThreePpStarOn2Star, SourceProblem::ThreePp(s)) => {
            reduce_3pp_star_on_2star(s, opts)
        }
        (Reduction::PpStarOnLine, SourceProblem::Pp(s)) => reduce_pp_star_on_line(s),
        (Reduction::ThreeDmOversub2Star, SourceProblem::ThreeDm(s)) => {
            reduce_3dm_oversub_2star(s, opts)
        }
        _ => Err(wrong()),
    }
}

/// Embedding built from a source certificate along the constructive proof
/// direction. The certificate must verify against the artifact's source.
pub fn build_witness(art: &Artifact, cert: &Certificate) -> Result<Embedding> {
    if !verify_source(&art.source, cert)? {
        return Err(VneError::MalformedCertificate(
            "certificate does not solve the source problem".into(),
        ));
    }
    match art.reduction {
        Reduction::Ham => ham::witness(art, cert),
        Reduction::BppLineOnLine
        | Reduction::BppLineOnUniformTree
        | Reduction::Bpp2StarOn2Star
        | Reduction::Bpp2StarOnUniform2Star => bpp::witness(art, cert),
        Reduction::ThreePpStarOn2Star | Reduction::PpStarOnLine => partition::witness(art, cert),
        Reduction::ThreeDmOversub2Star => matching::witness(art, cert),
    }
}

/// Reads a source certificate off an embedding that meets the artifact's
/// criterion.
pub fn extract_certificate(art: &Artifact, emb: &Embedding) -> Result<Certificate> {
    validate_embedding(&art.instance, emb).into_result()?;
    if !art.criterion_met(emb)? {
        return Err(VneError::CriterionNotMet(match art.instance.variant {
            Variant::Cvne => "embedding overloads a physical edge".into(),
            _ => format!(
                "cost {} exceeds theta {}",
                embedding_cost(&art.instance, emb)?,
                art.instance.theta.unwrap_or_default()
            ),
        }));
    }
    match art.reduction {
        Reduction::Ham => ham::extract(art, emb),
        Reduction::BppLineOnLine
        | Reduction::BppLineOnUniformTree
        | Reduction::Bpp2StarOn2Star
        | Reduction::Bpp2StarOnUniform2Star => bpp::extract(art, emb),
        Reduction::ThreePpStarOn2Star | Reduction::PpStarOnLine => partition::extract(art, emb),
        Reduction::ThreeDmOversub2Star => matching::extract(art, emb),
    }
}

pub(crate) fn unexpected(what: impl Into<String>) -> VneError {
    VneError::CriterionNotMet(what.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn role_text_round_trip() {
        let r: Role = "p:3:0:2".parse().unwrap();
        assert_eq!(r, Role::new("p", [3, 0, 2]));
        assert_eq!(r.to_string(), "p:3:0:2");
        assert_eq!("root".parse::<Role>().unwrap(), Role::plain("root"));
        assert!("bin:x".parse::<Role>().is_err());
        assert!("".parse::<Role>().is_err());
    }

    #[test]
    fn reduction_names_round_trip() {
        for r in Reduction::ALL {
            assert_eq!(r.as_str().parse::<Reduction>().unwrap(), r);
            assert_eq!(
                serde_json::to_string(&r).unwrap(),
                format!("\"{}\"", r.as_str())
            );
        }
    }

    #[test]
    fn artifact_json_round_trip() {
        let src = PpSource { a: vec![5, 3, 2] };
        let art = reduce_pp_star_on_line(&src).unwrap();
        let text = art.to_json();
        let back = Artifact::from_json(&text).unwrap();
        assert_eq!(back, art);
        // an artifact is also readable as a plain instance
        let inst = crate::io::instance_from_json(&text).unwrap();
        assert_eq!(inst, art.instance);
    }

    #[test]
    fn mismatched_source_is_rejected() {
        let src = SourceProblem::Pp(PpSource { a: vec![1, 1] });
        assert!(reduce(Reduction::Ham, &src, ReduceOptions::default()).is_err());
    }
}
