//! C-Fuchsian groups and the combination of two of them along an
//! orthogeodesic, with sampled ping-pong and word-enumeration certificates.

mod bisector;
mod combination;
mod fuchsian;
mod schottky;
mod word;

pub use bisector::{bisector_membership, bisector_projection_radius, Bisector, Membership};
pub use combination::{
    build_combination, combination_bisectors, combination_precondition, pingpong_check, verify_distance_realization,
    verify_distance_realization_with_budget, Combination, CombinationOptions, DiscretenessReport, PingPongCounts,
    Precondition, Walls,
};
pub use fuchsian::{
    injectivity_radius, regular_polygon_group, regular_polygon_inradius, stabilizer_min_holonomy, CFuchsianGroup,
};
pub use schottky::{schottky_example, SchottkyExample};
pub use word::{fold_words, reduce, word_count, Letter, Word, DEFAULT_WORD_BUDGET};
