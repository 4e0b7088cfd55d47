//! Achievable rate regions for the state-dependent partially-cooperative
//! relay broadcast channel.
//!
//! * [`model`]: channel and coding parameters with validation.
//! * [`rates`]: closed-form rate expressions.
//! * [`oracle`]: Gaussian covariance oracle that recomputes every rate term
//!   from log-determinants.
//! * [`optimize`]: parameter searches and frontier tracing.
//! * [`dmc`]: exhaustive evaluation of the discrete regions.
//! * [`cli`]: command-line front end.

pub mod cli;
pub mod dmc;
pub mod error;
pub mod model;
pub mod optimize;
pub mod oracle;
pub mod rates;

pub use error::{Error, Result};
pub use model::{
    validate_channel, validate_gdpc, ChannelParams, Frontier, FrontierPoint, GdpcParams,
    InformedBothParams, OptimumParams, RatePoint, Scheme, ValidatedChannel, ValidatedGdpc,
};
