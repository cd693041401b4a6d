//! Exact invariants of modular curves of `D`-elliptic sheaves over `F_q(T)`.
//!
//! For a quaternion algebra over `F_q(T)` split at infinity and ramified at
//! an even set `R` of finite places, the moduli curve `X^R` has closed-form
//! invariants in terms of `q` and the degrees of the places in `R`. This
//! crate evaluates them in exact arithmetic:
//!
//! * genus and Euler characteristics, in two independent forms;
//! * the mass and class number of the definite algebra ramified at
//!   `R ∪ {o, ∞}`, which count supersingular points on the fibre at `o`;
//! * points with extra automorphisms and covering degrees for level
//!   structures, tied together by a Riemann–Hurwitz identity;
//! * sweeps of the supersingular-points-to-genus ratio, which approaches
//!   `q_o - 1` as `deg(r)` grows;
//! * the classical Shimura-curve genus over `Q` for comparison.
//!
//! ```
//! use dsheaf::{FieldSpec, invariants::{genus, Discriminant}};
//!
//! let f2 = FieldSpec::new(2).unwrap();
//! let r = Discriminant::from_polys(&f2, &["T", "T^5+T^2+1"]).unwrap();
//! assert_eq!(genus(&r).unwrap(), 10.into());
//! ```

pub mod budget;
pub mod cli;
pub mod error;
pub mod field;
pub mod invariants;
mod json_int;
pub mod places;
pub mod poly;
pub mod rat;
pub mod report;
pub mod shimura;

pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{Fe, FieldSpec};
pub use places::{Place, PlaceSet};
pub use poly::Poly;
pub use rat::Rat;
