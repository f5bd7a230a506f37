//! Exact arithmetic building blocks shared by the bound evaluators and sieves.
//!
//! Everything here works on arbitrary-precision integers (`num-bigint`) or on
//! `u64`/`u128` fast paths whose results are exact. Nothing in this crate
//! rounds.

mod error;
pub mod gauss;
pub mod hensel;
pub mod modular;
pub mod order;
pub mod power;
pub mod prime;
pub mod valuation;

pub use error::ArithError;
pub use gauss::{beta_components, e_of_z, v_of_z, BetaPowers, GaussInt, VValue};
pub use hensel::{b_eps, hensel_cubic_roots, sqrt_minus3, HenselRootPair};
pub use order::{mult_order, mult_order_prime_power, pm_order, PmOrder};
pub use power::{is_perfect_power, is_square, isqrt_exact, kth_root_exact, kth_root_floor};
pub use prime::{factor_u64, is_prime_u64, is_probable_prime};
pub use valuation::{nu, nu_u64, valuation};
