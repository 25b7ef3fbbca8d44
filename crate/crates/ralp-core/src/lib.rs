//! Core data layer shared by every other crate in the workspace:
//! knowledge graph storage with label mapping, dense score vectors, and
//! the scalar abstraction the numeric layers are generic over.

pub mod error;
pub mod kg;
pub mod math;
pub mod scalar;
pub mod score;
pub mod seeding;

pub use error::KgError;
pub use kg::{
    apply_label_map, load_split, Corpus, CorpusBuilder, EntityId, KnowledgeGraph, KvsAllGroup,
    LabelMap, LoadReport, Object, RelationId, RelationKind, Split, Triple, TripleFormat,
    Vocabulary,
};
pub use scalar::Scalar;
pub use score::ScoreVector;

/// Default precision used by the binaries and reports.
pub type DefaultScalar = f64;

/// Score vector at the default precision.
pub type ScoreVectorF64 = ScoreVector<f64>;
pub type ScoreVectorF32 = ScoreVector<f32>;
