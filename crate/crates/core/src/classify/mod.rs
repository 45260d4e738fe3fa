//! Case analysis for the basic set containing `b` and the traditional-ring
//! verdicts.

mod candidates;
mod traditional;

pub use candidates::{
    classify_shape, corollary_filter, enumerate_b_candidates, evaluate_candidate, AClass,
    CandidateConstraint, CandidateResult, Filter, Rejection, ShapeVerdict, Target,
};
pub use traditional::{
    check_not_orbit_viii, check_not_tensor, check_not_tensor_viii, check_not_wedge, is_traditional,
    orbit_coincidence, Assignment, NotOrbit, NotWedge, OrbitMismatch, TensorVerdict, TensorWitness,
    Traditional, ORBIT_CHECK_RADIUS,
};
