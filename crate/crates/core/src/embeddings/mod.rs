//! Per-year skip-gram embeddings, orthogonal alignment across years, and
//! word-embedding association scores.

mod align;
mod sgns;
mod space;
mod weat;

pub use align::{align, anchor_residual, procrustes, select_anchors, AlignMode, AlignOptions, AlignmentTransform, AnchorResidual};
pub use sgns::{train_sgns, SgnsParams};
pub use space::EmbeddingSpace;
pub use weat::{
    differential_association, popularity_timeline, weat_score, AssociationSets, PartySeries, PopularityTimeline,
    DEFAULT_NEGATIVE, DEFAULT_POSITIVE,
};
