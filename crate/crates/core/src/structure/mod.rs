//! Structural predicates and distinguished subsets: Riesz decomposition,
//! homogeneity, blocks, sharp, principal and central elements, and the
//! compatibility center.

mod blocks;
mod center;
mod rdp;
mod report;

use thiserror::Error;

use crate::algebra::BuildError;
use crate::element::ElementSet;
use crate::families::SearchError;

pub use blocks::{
    blocks, blocks_by_compatibility, blocks_by_rdp, is_homogeneous_via_blocks, sub_effect_algebras, subset_sums,
    BlockMethod, BlockSet,
};
pub use center::{
    central_elements, central_in_block, compatibility_center, is_central, is_ideal, is_principal, is_riesz_ideal,
    is_sharp, principal_elements, sharp_elements, sharp_subalgebra, BlockCentrality,
};
pub use rdp::{
    decompose2, decompose2_within, has_rdp, has_rdp_within, is_homogeneous, n_ary_decompose, RdpWitness,
    RdpWitnessJson,
};
pub use report::{classification_report, ClassificationReport, ReportJson, VerdictJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("restricted table is not an effect algebra: {0}")]
    Build(#[from] BuildError),
    #[error("{what} are not a sub-effect algebra: {a} ⊖ {b} escapes")]
    NotSubAlgebra { what: &'static str, a: String, b: String },
    #[error("block characterizations disagree ({} RDP-maximal, {} compatibility-maximal)", by_rdp.len(), by_compatibility.len())]
    BlockMismatch {
        by_rdp: Vec<ElementSet>,
        by_compatibility: Vec<ElementSet>,
    },
}
