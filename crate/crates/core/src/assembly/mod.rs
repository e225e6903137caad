//! Board tours: `m × 4pq` tours assembled from stacked scarves, and even × even tours
//! stitched from a provider block and joint tours.

mod board;
mod even;
mod pattern;
mod fixed_width;
mod thresholds;

pub use board::{stitch_joint, universal_joints, BoardTour};
pub use even::{reduced_side, tour_even_board, FileProvider, OracleProvider, BlockProvider};
pub use pattern::{
    build_pattern, knight_pattern, part_minimum, pattern_extension, pattern_recipe,
    required_copies, PatternLayout, PatternRecipe,
};
pub use fixed_width::{
    signature_plan, tour_4pq, tour_4pq_with_joint, tour_4pq_with_plan, SignaturePlan,
};
pub use thresholds::{partition_height, thresholds, PartitionPlan, ThresholdMode, Thresholds};
