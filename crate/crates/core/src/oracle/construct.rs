//! Joint Gaussian laws induced by the two coding constructions.

use super::covariance::{CovarianceSystem, GaussianBuilder};
use crate::error::{Error, Result};
use crate::model::{InformedBothParams, ValidatedChannel, ValidatedGdpc};

/// Derived quantities of the construction used when the source and the relay
/// both know the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InformedBothLayers {
    /// Power of the cooperative layer shared with the relay.
    pub p_coop: f64,
    /// Power of the source-only layer decoded by the relay.
    pub p_solo: f64,
    /// Share of the cooperative layer sent by the source.
    pub lambda: f64,
    pub alpha_coop: f64,
    pub alpha_solo: f64,
}

impl InformedBothLayers {
    pub fn new(c: &ValidatedChannel, p: InformedBothParams) -> Self {
        let info = (1.0 - p.gamma) * c.p1;
        let coherent = ((1.0 - p.beta) * info).sqrt();
        let p_coop = (coherent + c.p2.sqrt()).powi(2);
        let p_solo = p.beta * info;
        let lambda = if p_coop > 0.0 {
            coherent / p_coop.sqrt()
        } else {
            0.0
        };
        let den = p_coop + p_solo + p.gamma * c.p1 + c.n2;
        Self {
            p_coop,
            p_solo,
            lambda,
            alpha_coop: p_coop / den,
            alpha_solo: p_solo / den,
        }
    }
}

/// Covariance over `S, U1, U2, X1, X1p, X2, Y1, Y2` (plus the noise terms
/// `Z1, Z2p`) where
///
/// ```text
/// U1 = W1 + a1 S,  U2 = W2 + a2 S,   W1 ~ N(0, P_coop), W2 ~ N(0, P_solo)
/// X2 = (1 - lambda) W1
/// X1 = lambda W1 + W2 + X1p,         X1p ~ N(0, gamma p1)
/// ```
///
/// `U1` is the cooperative auxiliary (the relay input is a function of it and
/// the state) and `U2` the one decoded by the relay on top of it.
pub fn build_cov_informed_both(
    c: &ValidatedChannel,
    p: InformedBothParams,
) -> Result<CovarianceSystem> {
    let p = p.validate()?;
    let l = InformedBothLayers::new(c, p);
    let mut g = GaussianBuilder::new();
    g.source("S", c.q)
        .source("W1", l.p_coop)
        .source("W2", l.p_solo)
        .source("X1p", p.gamma * c.p1)
        .source("Z1", c.n1)
        .source("Z2p", c.n2 - c.n1)
        .combo("U1", &[("W1", 1.0), ("S", l.alpha_coop)])
        .combo("U2", &[("W2", 1.0), ("S", l.alpha_solo)])
        .combo("X2", &[("W1", 1.0 - l.lambda)])
        .combo("X1", &[("W1", l.lambda), ("W2", 1.0), ("X1p", 1.0)])
        .combo("Y1", &[("X1", 1.0), ("S", 1.0), ("Z1", 1.0)])
        .combo("Y2", &[("Y1", 1.0), ("X2", 1.0), ("Z2p", 1.0)]);
    Ok(g.build(&["S", "U1", "U2", "X1", "X1p", "X2", "Y1", "Y2", "Z1", "Z2p"]))
}

/// Derived quantities of the partial-cancellation construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CancellationLayers {
    /// Scale applied to the state by the cancellation part of the input.
    pub cancel: f64,
    /// `S' = state_scale * S`.
    pub state_scale: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    /// Covariance between the information part `Uw` and the relay input.
    pub uw_x2: f64,
}

impl CancellationLayers {
    pub fn new(g: &ValidatedGdpc) -> Result<Self> {
        let c = g.channel();
        if c.q <= 0.0 {
            return Err(Error::ZeroStatePower);
        }
        let p = g.params();
        let spent = p.rho * (1.0 - p.gamma) * c.p1;
        let info = (1.0 - p.rho) * (1.0 - p.gamma) * c.p1;
        let cancel = (spent / c.q).sqrt();
        let private = p.gamma * c.p1;
        Ok(Self {
            cancel,
            state_scale: 1.0 - cancel,
            alpha1: private / (private + c.n1),
            alpha2: p.alpha2,
            uw_x2: p.beta * (info * c.p2).sqrt(),
        })
    }
}

/// Covariance over `S, Sprime, U1, U2, Uw, X1p, X1, X2, Y1, Y2` (plus
/// `Z1, Z2p`) where the source input is split as
///
/// ```text
/// X1 = X1p + Uw - sqrt(rho (1-gamma) p1 / q) S
/// S' = (1 - sqrt(rho (1-gamma) p1 / q)) S
/// U2 = Uw + alpha2 S',     U1 = X1p + alpha1 (1 - alpha2) S'
/// ```
///
/// with `Uw` correlated with the relay input `X2` and independent of
/// `X1p` and `S`. `X1` is assembled from `U1`, `U2` and `S'`.
pub fn build_cov_informed_source(g: &ValidatedGdpc) -> Result<CovarianceSystem> {
    let l = CancellationLayers::new(g)?;
    let c = g.channel();
    let p = g.params();
    let info = (1.0 - p.rho) * (1.0 - p.gamma) * c.p1;
    let x2_gain = if c.p2 > 0.0 { l.uw_x2 / c.p2 } else { 0.0 };
    let fresh = (info - x2_gain * l.uw_x2).max(0.0);

    let mut b = GaussianBuilder::new();
    b.source("S", c.q)
        .source("X1p", p.gamma * c.p1)
        .source("X2", c.p2)
        .source("V", fresh)
        .source("Z1", c.n1)
        .source("Z2p", c.n2 - c.n1)
        .combo("Uw", &[("X2", x2_gain), ("V", 1.0)])
        .combo("Sprime", &[("S", l.state_scale)])
        .combo("U2", &[("Uw", 1.0), ("Sprime", l.alpha2)])
        .combo(
            "U1",
            &[("X1p", 1.0), ("Sprime", l.alpha1 * (1.0 - l.alpha2))],
        );

    if l.state_scale > 0.0 {
        let shift = l.alpha1 + l.alpha2 - l.alpha1 * l.alpha2 + l.cancel / l.state_scale;
        b.combo("X1", &[("U1", 1.0), ("U2", 1.0), ("Sprime", -shift)]);
    } else {
        // full cancellation: S' vanishes and the shifted form is 0 * inf
        b.combo("X1", &[("X1p", 1.0), ("Uw", 1.0), ("S", -l.cancel)]);
    }
    b.combo("Y1", &[("X1", 1.0), ("S", 1.0), ("Z1", 1.0)])
        .combo("Y2", &[("Y1", 1.0), ("X2", 1.0), ("Z2p", 1.0)]);

    Ok(b.build(&[
        "S", "Sprime", "U1", "U2", "Uw", "X1p", "X1", "X2", "Y1", "Y2", "Z1", "Z2p",
    ]))
}
