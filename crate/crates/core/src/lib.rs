//! Jacobian syzygies, Tjurina numbers and freeness of plane curves, with
//! exact arithmetic over Q and prime fields.

pub mod algebra;
pub mod arrangement;
pub mod error;
pub mod fixtures;
pub mod pencils;
pub mod suite;
pub mod syzygy;
pub mod tjurina;

pub use algebra::{
    homog_gcd, parse_poly, parse_uni, Backend, ExactMatrix, Field, HomogPoly, Monomial, Scalar,
    UniPoly, Unimodular, Var,
};
pub use error::{Error, Result};
pub use syzygy::{ar_slice, is_primitive, mdr, verify_syzygy, ARSlice, SyzygyTriple};
pub use tjurina::{classify, dpw_bounds, global_tjurina, milnor_hilbert, Classification, FreenessReport};
pub use arrangement::{
    lattice, point_syzygy, tau_combinatorial, IntersectionLattice, LineArrangement, ProjLine, ProjPoint,
};
pub use fixtures::{fixture, Fixture, FIXTURE_NAMES};
pub use pencils::{
    build_product, discriminant, DiscriminantForm, MemberGroup, PencilProductJson, PencilProductSpec, PencilSpec,
};
pub use suite::{criteria, run_suite, CriterionResult, SuiteConfig};
