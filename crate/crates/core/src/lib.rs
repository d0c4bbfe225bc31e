//! Exact arithmetic and decision procedures for the generalized Fermat
//! equation x^r + y^r = z^p over totally real fields.

pub mod arith;
pub mod classnumber;
pub mod criteria;
pub mod cycfield;
pub mod descent;
pub mod error;
pub mod ffpoly;
pub mod frey;
pub mod galoisring;
pub mod linalg;
pub mod splitting;

pub use classnumber::{h_plus_parity, maillet_h_minus, HMinusResult, HPlusTable, HPlusTableEntry, Parity};
pub use criteria::{
    check_corollary_q, check_corollary_quad, check_theorem_main2, scan_q, Condition, Status, Target, Verdict,
};
pub use cycfield::{reduce_mod, CycFrac, CycInt, RealCyclotomicField};
pub use descent::{descent_step, norm_necessary_condition, pi_plus_four_identity, DescentPair, ExactField, Rationals};
pub use error::{Error, Result};
pub use ffpoly::{ddf_degrees, F2Field, F2Poly, F2fElem};
pub use frey::{frey_curve, invariants, FreyCurve, FreyInvariants};
pub use galoisring::{is_square_pi_r, GaloisRing, GrElem, SquareClass};
pub use splitting::{PrimeFactor, SplittingReport};
