//! Exact computation with Schur rings over `Z x Z`.
//!
//! Group elements `a^i b^j` are written `(i, j)`. Ring elements have rational
//! coefficients and finite support.

pub mod classify;
pub mod coefficient;
pub mod element;
pub mod error;
pub mod expr;
pub mod family;
pub mod lattice;
pub mod ring;
pub mod testing;
pub mod verify;

pub use coefficient::Coefficient;
pub use element::{g, GroupElement};
pub use error::{Error, Result};
pub use expr::{parse_element, ParseError};
pub use family::{
    enumerate_window, is_basic_set, orbit_of, windows_agree, Automorphism, BasicSet, Family,
    Partition, DEFAULT_ORBIT_CAP,
};
pub use lattice::Lattice;
pub use ring::{sq, RingElement};
pub use verify::{
    detect_a_subgroups, project_to_b, structure_constants, verify_family, verify_partition,
    ClosureViolation, Projection, Status, StructureRow, VerificationReport, Witness,
};
