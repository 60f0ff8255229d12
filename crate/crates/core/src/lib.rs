//! Entanglement dynamics of two independent V-type three-level atoms
//! undergoing spontaneous emission with quantum interference between the two
//! decay channels.
//!
//! - [`linalg`]: dense complex matrices, Kronecker products, partial
//!   transpose, a Jacobi eigensolver and row reduction.
//! - [`states`]: the pure family `Ψ_{θ,φ}`, isotropic states, validation and
//!   negativity.
//! - [`lindblad`]: system I (cross damping) and system II (asymmetric decay)
//!   generators for one or two atoms.
//! - [`evolution`]: RK4 trajectories, exact system II propagators and the
//!   maximal-interference asymptotic map.

pub mod evolution;
pub mod linalg;
pub mod lindblad;
pub mod random;
pub mod states;

pub use evolution::{evolve_rk4, IntegratorSettings, Trajectory};
pub use linalg::{ComplexMatrix, ComplexVector};
pub use lindblad::{Atoms, LindbladGenerator, Model, ModelSpec, SystemIIParams, SystemIParams};
pub use states::{negativity, DensityMatrix, IsotropicParams, PureStateParams, StateSpec};
