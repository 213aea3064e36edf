//! Exact-arithmetic hyperbolic programming.
//!
//! Polynomials have rational coefficients and every decision (signs,
//! multiplicities, feasibility) is made exactly; floating point only appears
//! in decimal renderings.

pub mod algsolve;
pub mod error;
pub mod factor;
pub mod groebner;
pub mod hp;
pub mod hyperbolic;
pub mod instance;
pub mod poly;
pub mod roots;
pub mod strata;
pub mod unipoly;

pub use error::{HpError, HypError, PolyError, RootError, SolveError};
pub use poly::{rat, rat_int, LinearForm, Monomial, Rat, SparsePoly};
pub use unipoly::UniPoly;
