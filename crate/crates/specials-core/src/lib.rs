//! Special Cohen–Macaulay modules over quotient surface singularities C²/G,
//! found by counting in Auslander–Reiten quivers.
//!
//! The pipeline: [`group`] parameters → [`quiver`] (a quotient of ZQ̃) →
//! [`ladder`] counting → [`classify`], which cross-checks the counted specials
//! against [`closed_form`] tables and the [`resolution`] graph.

pub mod classify;
pub mod closed_form;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod hj;
pub mod iso;
pub mod ladder;
pub mod par;
pub mod quiver;
pub mod resolution;

pub use classify::{batch, classify, classify_with, specials_by_counting, ClassificationReport};
pub use closed_form::{specials_closed_form, ClosedForm};
pub use error::{Error, Result};
pub use group::{family_data, parse_group, Family, FamilyData, GroupParams};
pub use hj::{hj_evaluate, hj_expand, HjData, Ratio};
pub use iso::{compute_dual, dual_candidates};
pub use ladder::{
    cosyzygy, ext1_profile, free_expansion, hom_dim, run_ladder, syzygy, theta_step, CountVector,
    LadderTrace, Mode, Side,
};
pub use par::Strategy;
pub use quiver::{build_ar_quiver, build_ar_quiver_with, BuildOptions, TranslationQuiver};
pub use resolution::{dual_graph, fundamental_cycle, intersection_matrix, ResolutionGraph};
