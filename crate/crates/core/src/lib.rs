//! Error-correcting codes in projective space.
//!
//! The crate builds constant-dimension ("Grassmannian") and mixed-dimension
//! subspace codes over GF(q)^n by a multilevel construction: a binary
//! constant-weight skeleton code fixes the echelon shapes, a Ferrers-diagram
//! rank-metric code fills the free entries of each shape, and the filled
//! shapes are lifted to subspaces. Puncturing then turns constant-dimension
//! codes into larger codes of mixed dimension. Decoders for both families
//! and exact verification utilities are included.
//!
//! Modules follow the pipeline:
//! - [`field`] / [`ext`]: exact GF(p^e) and GF(q^m) arithmetic
//! - [`matrix`] / [`subspace`]: linear algebra and canonical subspaces
//! - [`ferrers`]: diagrams, conjugation, echelon Ferrers forms
//! - [`rank`]: Gabidulin codes, truncation, Ferrers-diagram rank codes
//! - [`skeleton`]: constant-weight lexicodes and Hamming-code fixtures
//! - [`multilevel`]: the lifted union construction and its decoder
//! - [`puncture`]: hyperplane puncturing and the parity-cased decoder

pub mod error;
pub mod ext;
pub mod ferrers;
pub mod field;
pub mod matrix;
pub mod multilevel;
pub mod puncture;
pub mod rank;
pub mod skeleton;
pub mod subspace;
pub mod word;

pub use error::{Error, Result};
pub use ext::ExtensionCtx;
pub use ferrers::{EchelonFerrersForm, FerrersDiagram};
pub use field::{FieldCtx, FieldElement, FiniteField};
pub use matrix::{Matrix, MatrixGFq};
pub use multilevel::{
    code_size_analytic, enumerate_grassmannian, lift, AnalyticSizes, CodeBlock, SubspaceCode,
    SubspaceDecodeOutcome, VerifyReport,
};
pub use puncture::{
    best_context_search, generalized_punctured_family, puncture_code, BestContext,
    ContextSearch, PuncturedCode, PuncturingContext,
};
pub use rank::{GabidulinCode, LinearizedPoly, RankCode, RankVerification, VerifyPolicy};
pub use skeleton::{Provenance, ScanOrder, SkeletonCode, SkeletonDecode};
pub use subspace::Subspace;
pub use word::BitWord;
