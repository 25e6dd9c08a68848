//! Exact intersection-theoretic calculus on projective space.
//!
//! * [`chowring`]: `A_*P^N`, the dual and tensor operations, and the
//!   involutions `i_{n,L}`.
//! * [`bundles`]: split virtual bundles and their Chern classes.
//! * [`hypersurface`]: Fulton, CSM, Milnor, Le, mu and Aluffi classes of a
//!   hypersurface from the Segre class of its singular scheme.
//! * [`classes`]: runtime registry of those characteristic classes.
//! * [`correspondence`]: classes on `P^N x P^N` acting on `A_*P^N`, and the
//!   correspondences inducing `i_{n,O(m)}`.
//! * [`verify`]: randomized exact checks of every identity above.
//!
//! All arithmetic is over `Z` with arbitrary precision.

pub mod binomial;
pub mod bundles;
pub mod chowring;
pub mod classes;
pub mod correspondence;
mod error;
pub mod hypersurface;
pub mod verify;

pub use binomial::generalized_binomial;
pub use bundles::VirtualBundle;
pub use chowring::{chern_power, ChowClass, LineBundle};
pub use classes::{CharacteristicClass, ClassRegistry};
pub use correspondence::{Correspondence, OperatorMatrix};
pub use error::{Error, Result};
pub use hypersurface::{Hypersurface, ModelTag, SignConvention, SingularScheme};
pub use verify::{run_verify, VerifyConfig, VerifyReport};
