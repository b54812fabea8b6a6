//! Signatures of curves, the orthogonal action on the free nilpotent Lie
//! algebra, moving frames and rotation invariants.
//!
//! ```
//! use sigframes::{compare_curves, CompareOptions, PiecewiseLinearPath};
//!
//! let a = PiecewiseLinearPath::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 2.0]])?;
//! let b = PiecewiseLinearPath::new(vec![vec![5.0, 5.0], vec![5.0, 6.0], vec![3.0, 6.0]])?;
//! let report = compare_curves(&a, &b, 3, 1e-9, CompareOptions::default())?;
//! assert!(report.equivalent);
//! # Ok::<(), sigframes::Error>(())
//! ```

pub mod action;
pub mod error;
pub mod frame;
pub mod invariants;
pub mod lyndon;
pub mod matrix;
pub mod path;
pub mod scalar;
pub mod tensor;
pub mod word;

pub use action::{
    act_on_level2, act_on_lie, act_on_lie_by, act_on_tensor, act_on_tensor_by, random_orthogonal,
    random_orthogonal_with, OrthogonalMatrix, ORTHO_TOL,
};
pub use error::{Error, Result};
pub use frame::{
    almost_polynomial_frame, coordinate_scale, frame_d2, frame_d3, frame_general, invariantize_path, kappa,
    moving_frame, nu3, on_cross_section, p123, AlmostPolynomialFrame, FrameOptions, MovingFrameResult, FRAME_TOL,
};
pub use invariants::{
    canonical_from_q, compare_coordinates, compare_curves, im_norms, invariantized_coords_d2, invariants_frame,
    invariants_im, invariants_p_d2, invariants_p_d3, invariants_q_d2, p2_expanded, p2_sum_of_squares, p4_prime,
    CompareMethod, CompareOptions, EquivalenceReport, InvariantFamily, InvariantVector,
};
pub use lyndon::{
    bracket_expand, is_lyndon, level2_to_lyndon, lyndon_to_level2, lyndon_words, tensor_to_lyndon,
    tensor_to_lyndon_tol, Level2Pair, LieCoordinates, LyndonWord, LIE_TOL,
};
pub use matrix::Matrix;
pub use path::{
    log_signature, path_signature, polynomial_moment_signature, sample_moment_curve, segment_signature,
    PiecewiseLinearPath,
};
pub use scalar::{parse_rational, rational_from_decimal, rational_to_string, Rational, Scalar};
pub use tensor::{shuffle_series, TensorSeries};
pub use word::{shuffle, Word};
