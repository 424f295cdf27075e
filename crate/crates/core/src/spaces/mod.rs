//! Frequency sets, trigonometric polynomials, point sets and the real
//! function systems every construction in this crate works with.

mod complex;
mod freqset;
mod points;
mod poly;
mod system;

pub use complex::Complex;
pub use freqset::{FreqKind, FrequencySet};
pub use points::{Frame, PointSet};
pub use poly::{Exponent, TrigPolynomial};
pub use system::{
    design_matrix, eval_vec, gram_matrix, multi_indices, LiftedSystem, ModeKind, MonomialSystem, RealMode, Restricted, System,
    TabulatedSystem, TrigSystem, WithConstant,
};
