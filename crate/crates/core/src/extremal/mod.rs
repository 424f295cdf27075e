//! Constructions behind the lower bounds: quadratic Sidon-type sets,
//! Condition L lacunary blocks with the small-ball probe, and the uniqueness
//! witness for exact weighted discretization.

mod lacunary;
mod sidon;
mod witness;

pub use lacunary::{
    build_condition_l, lacunary_ratio_probe, lebesgue_ratio, small_ball_probe, verify_condition_l, ConditionLParams,
    LacunaryFamily, LacunaryRow, SmallBallReport,
};
pub use sidon::{build_sidon_quadratic, sidon_bounds, sidon_coverage};
pub use witness::{gft2_witness, WitnessReport};
