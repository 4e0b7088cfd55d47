//! Domain types for the degraded Gaussian partially-cooperative relay
//! broadcast channel
//!
//! ```text
//! Y1 = X1 + S + Z1,          Z1  ~ N(0, n1)
//! Y2 = Y1 + X2 + Z2',        Z2' ~ N(0, n2 - n1)
//! ```
//!
//! with source power `p1`, relay power `p2` and additive state
//! `S ~ N(0, q)`. All powers are linear; rates are in bits per channel use.
//!
//! Raw parameter structs are plain data. The `Validated*` wrappers can only
//! be obtained through the checks in this module, so every downstream
//! computation can rely on the invariants without re-checking them.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on the upper bound of `rho` so that grid endpoints computed
/// as `rho_max` itself are not rejected through rounding.
const RHO_SLACK: f64 = 1e-12;

/// Powers and noise variances of the channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub p1: f64,
    pub p2: f64,
    pub q: f64,
    pub n1: f64,
    pub n2: f64,
}

impl ChannelParams {
    pub const fn new(p1: f64, p2: f64, q: f64, n1: f64, n2: f64) -> Self {
        Self { p1, p2, q, n1, n2 }
    }

    pub fn validate(self) -> Result<ValidatedChannel> {
        validate_channel(self)
    }

    pub fn with_q(self, q: f64) -> Self {
        Self { q, ..self }
    }

    pub fn with_n1(self, n1: f64) -> Self {
        Self { n1, ..self }
    }
}

impl Default for ChannelParams {
    /// `p1 = p2 = q = 1`, `n1 = 0.1`, `n2 = 1`.
    fn default() -> Self {
        Self::new(1.0, 1.0, 1.0, 0.1, 1.0)
    }
}

/// A channel that satisfies all positivity and degradedness constraints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidatedChannel(ChannelParams);

impl ValidatedChannel {
    pub fn params(&self) -> ChannelParams {
        self.0
    }

    /// Largest admissible state-cancellation fraction for a given private
    /// power split: `min(1, q / ((1-gamma) p1))`, or 0 when either the state
    /// or the cancellable power vanishes.
    pub fn rho_max(&self, gamma: f64) -> f64 {
        let spendable = (1.0 - gamma) * self.0.p1;
        if self.0.q == 0.0 || spendable <= 0.0 {
            0.0
        } else {
            (self.0.q / spendable).min(1.0)
        }
    }
}

impl Deref for ValidatedChannel {
    type Target = ChannelParams;

    fn deref(&self) -> &ChannelParams {
        &self.0
    }
}

fn finite(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { field, value })
    }
}

fn positive(field: &'static str, value: f64) -> Result<()> {
    if finite(field, value)? > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive { field, value })
    }
}

fn non_negative(field: &'static str, value: f64) -> Result<()> {
    if finite(field, value)? >= 0.0 {
        Ok(())
    } else {
        Err(Error::Negative { field, value })
    }
}

fn unit_interval(field: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&finite(field, value)?) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            field,
            value,
            lo: 0.0,
            hi: 1.0,
            reason: None,
        })
    }
}

pub fn validate_channel(c: ChannelParams) -> Result<ValidatedChannel> {
    positive("p1", c.p1)?;
    positive("n1", c.n1)?;
    positive("n2", c.n2)?;
    non_negative("p2", c.p2)?;
    non_negative("q", c.q)?;
    if c.n1 >= c.n2 {
        return Err(Error::NonDegraded { n1: c.n1, n2: c.n2 });
    }
    Ok(ValidatedChannel(c))
}

/// Coding knobs of the generalized dirty-paper inner bound.
///
/// * `gamma`: fraction of source power carrying the private message.
/// * `rho`: fraction of the remaining power spent cancelling the state.
/// * `beta`: correlation coefficient between the information part of the
///   source input and the relay input.
/// * `alpha2`: inflation factor of the dirty-paper layer decoded by the relay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GdpcParams {
    pub gamma: f64,
    pub rho: f64,
    pub beta: f64,
    pub alpha2: f64,
}

impl GdpcParams {
    pub const fn new(gamma: f64, rho: f64, beta: f64, alpha2: f64) -> Self {
        Self {
            gamma,
            rho,
            beta,
            alpha2,
        }
    }
}

/// GDPC parameters checked against a specific channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidatedGdpc {
    channel: ValidatedChannel,
    params: GdpcParams,
}

impl ValidatedGdpc {
    /// Skips validation; only for points generated inside the admissible box.
    pub(crate) fn new_unchecked(channel: ValidatedChannel, params: GdpcParams) -> Self {
        Self { channel, params }
    }

    pub fn channel(&self) -> &ValidatedChannel {
        &self.channel
    }

    pub fn params(&self) -> GdpcParams {
        self.params
    }
}

pub fn validate_gdpc(c: &ValidatedChannel, g: GdpcParams) -> Result<ValidatedGdpc> {
    unit_interval("gamma", g.gamma)?;
    unit_interval("beta", g.beta)?;
    unit_interval("alpha2", g.alpha2)?;
    finite("rho", g.rho)?;
    let rho_max = c.rho_max(g.gamma);
    if g.rho < 0.0 || g.rho > rho_max + RHO_SLACK {
        let reason = if rho_max == 0.0 {
            Some("rho must be 0 when q = 0 or (1-gamma) p1 = 0")
        } else {
            None
        };
        return Err(Error::OutOfRange {
            field: "rho",
            value: g.rho,
            lo: 0.0,
            hi: rho_max,
            reason,
        });
    }
    Ok(ValidatedGdpc {
        channel: *c,
        params: GdpcParams {
            rho: g.rho.min(rho_max),
            ..g
        },
    })
}

/// Parameters of the dirty-paper construction used when both the source and
/// the relay know the state: private split `gamma` and cooperative split
/// `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InformedBothParams {
    pub gamma: f64,
    pub beta: f64,
}

impl InformedBothParams {
    pub const fn new(gamma: f64, beta: f64) -> Self {
        Self { gamma, beta }
    }

    pub fn validate(self) -> Result<Self> {
        unit_interval("gamma", self.gamma)?;
        unit_interval("beta", self.beta)?;
        Ok(self)
    }
}

/// An achievable `(R1, R0 + R2)` pair in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RatePoint {
    pub r1: f64,
    pub r02: f64,
}

impl RatePoint {
    /// Negative, NaN and infinite-negative inputs become exactly 0.
    pub fn clamped(r1: f64, r02: f64) -> Self {
        Self {
            r1: clamp_rate(r1),
            r02: clamp_rate(r02),
        }
    }
}

/// Rate clamping convention shared by every module.
pub fn clamp_rate(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// Coding scheme behind a rate curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Dirty paper coding with partial state cancellation, state at the source only.
    Gdpc,
    /// Plain dirty paper coding (`rho = 0`), state at the source only.
    Dpc,
    /// State known at both the source and the relay.
    InformedBoth,
    /// No-state capacity region, an outer bound for the source-only case.
    NostateOuter,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [
        Scheme::Gdpc,
        Scheme::Dpc,
        Scheme::InformedBoth,
        Scheme::NostateOuter,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Gdpc => "gdpc",
            Scheme::Dpc => "dpc",
            Scheme::InformedBoth => "informed-both",
            Scheme::NostateOuter => "nostate-outer",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                format!("unknown scheme `{s}` (expected gdpc|dpc|informed-both|nostate-outer)")
            })
    }
}

/// Parameters at which a frontier point was attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OptimumParams {
    Gdpc(GdpcParams),
    /// Cooperative split of the no-state region at its optimum.
    NoState {
        beta: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrontierPoint {
    pub gamma: f64,
    pub params: OptimumParams,
    pub rate: RatePoint,
}

/// Boundary of the `(R1, R0 + R2)` trade-off traced by `gamma`.
///
/// Points are sorted by strictly increasing `r1` with non-increasing `r02`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Frontier {
    pub scheme: Scheme,
    pub points: Vec<FrontierPoint>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn channel_examples() {
        assert!(validate_channel(ChannelParams::new(1.0, 1.0, 1.0, 0.1, 1.0)).is_ok());
        assert!(validate_channel(ChannelParams::new(1.0, 1.0, 0.0, 0.5, 1.0)).is_ok());
        assert_eq!(
            validate_channel(ChannelParams::new(1.0, 1.0, 1.0, 2.0, 1.0)),
            Err(Error::NonDegraded { n1: 2.0, n2: 1.0 })
        );
    }

    #[test]
    fn channel_error_kinds() {
        let base = ChannelParams::default();
        assert!(matches!(
            validate_channel(ChannelParams { p1: 0.0, ..base }),
            Err(Error::NonPositive { field: "p1", .. })
        ));
        assert!(matches!(
            validate_channel(ChannelParams { n1: -1.0, ..base }),
            Err(Error::NonPositive { field: "n1", .. })
        ));
        assert!(matches!(
            validate_channel(ChannelParams { p2: -0.1, ..base }),
            Err(Error::Negative { field: "p2", .. })
        ));
        assert!(matches!(
            validate_channel(ChannelParams { q: -0.1, ..base }),
            Err(Error::Negative { field: "q", .. })
        ));
        assert!(matches!(
            validate_channel(ChannelParams {
                q: f64::NAN,
                ..base
            }),
            Err(Error::NonFinite { field: "q", .. })
        ));
        // equal noise powers are not degraded
        assert!(matches!(
            validate_channel(ChannelParams { n1: 1.0, ..base }),
            Err(Error::NonDegraded { .. })
        ));
    }

    #[test]
    fn gdpc_examples() {
        let c = validate_channel(ChannelParams::new(1.0, 1.0, 1.0, 0.1, 1.0)).unwrap();
        assert!(validate_gdpc(&c, GdpcParams::new(0.0, 1.0, 0.0, 0.0)).is_ok());

        let c = validate_channel(ChannelParams::new(1.0, 1.0, 0.25, 0.1, 1.0)).unwrap();
        match validate_gdpc(&c, GdpcParams::new(0.0, 0.5, 0.0, 0.0)) {
            Err(Error::OutOfRange {
                field: "rho", hi, ..
            }) => assert_eq!(hi, 0.25),
            other => panic!("expected rho range error, got {other:?}"),
        }

        let c = validate_channel(ChannelParams::new(1.0, 1.0, 1.0, 0.1, 1.0)).unwrap();
        match validate_gdpc(&c, GdpcParams::new(1.0, 0.1, 0.0, 0.0)) {
            Err(Error::OutOfRange {
                field: "rho",
                hi,
                reason,
                ..
            }) => {
                assert_eq!(hi, 0.0);
                assert!(reason.is_some());
            }
            other => panic!("expected degenerate rho error, got {other:?}"),
        }
    }

    #[test]
    fn gdpc_rejects_each_field() {
        let c = ChannelParams::default().validate().unwrap();
        for (g, field) in [
            (GdpcParams::new(1.5, 0.0, 0.0, 0.0), "gamma"),
            (GdpcParams::new(0.0, -0.1, 0.0, 0.0), "rho"),
            (GdpcParams::new(0.0, 0.0, 1.1, 0.0), "beta"),
            (GdpcParams::new(0.0, 0.0, 0.0, -1e-3), "alpha2"),
        ] {
            match validate_gdpc(&c, g) {
                Err(Error::OutOfRange { field: f, .. }) => assert_eq!(f, field),
                other => panic!("{field}: {other:?}"),
            }
        }
    }

    #[test]
    fn zero_state_forces_zero_rho() {
        let c = ChannelParams::default().with_q(0.0).validate().unwrap();
        assert_eq!(c.rho_max(0.3), 0.0);
        assert!(validate_gdpc(&c, GdpcParams::new(0.3, 0.0, 0.2, 0.7)).is_ok());
        assert!(validate_gdpc(&c, GdpcParams::new(0.3, 1e-6, 0.2, 0.7)).is_err());
    }

    #[test]
    fn rate_point_clamps() {
        let p = RatePoint::clamped(-0.2, f64::NAN);
        assert_eq!(p, RatePoint { r1: 0.0, r02: 0.0 });
        assert_eq!(RatePoint::clamped(0.3, 1.0).r1, 0.3);
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.as_str().parse::<Scheme>().unwrap(), s);
        }
        assert!("costa".parse::<Scheme>().is_err());
    }
}
