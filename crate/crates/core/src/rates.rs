//! Closed-form rate expressions.
//!
//! Everything here is a pure function of validated parameters. The Gaussian
//! oracle in [`crate::oracle`] recomputes the same quantities from covariance
//! matrices without touching this module.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    clamp_rate, validate_gdpc, GdpcParams, RatePoint, ValidatedChannel, ValidatedGdpc,
};
use crate::optimize;

/// `C(x) = 0.5 log2(1 + x)`.
pub fn cap_c(x: f64) -> Result<f64> {
    if x < 0.0 || x.is_nan() {
        return Err(Error::NegativeArgument(x));
    }
    Ok(c_of(x))
}

#[inline]
pub(crate) fn c_of(x: f64) -> f64 {
    0.5 * x.ln_1p() / std::f64::consts::LN_2
}

/// `0.5 log2(num / den)` with the clamping convention: non-positive or
/// indeterminate ratios give 0.
#[inline]
fn half_log2_ratio(num: f64, den: f64) -> f64 {
    if num > 0.0 && den > 0.0 {
        clamp_rate(0.5 * (num / den).log2())
    } else {
        0.0
    }
}

/// Effective state power left after spending `rho (1-gamma) p1` on
/// cancellation: `(sqrt(q) - sqrt(rho (1-gamma) p1))^2`.
pub fn qprime(c: &ValidatedChannel, gamma: f64, rho: f64) -> Result<f64> {
    let g = validate_gdpc(c, GdpcParams::new(gamma, rho, 0.0, 0.0))?;
    Ok(qprime_of(&g))
}

fn qprime_of(g: &ValidatedGdpc) -> f64 {
    let c = g.channel();
    let p = g.params();
    let cancelled = p.rho * (1.0 - p.gamma) * c.p1;
    (c.q.sqrt() - cancelled.sqrt()).powi(2)
}

/// The four products whose ratios give the GDPC sum-rate terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GdpcCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub qprime: f64,
}

pub fn gdpc_coeffs(g: &ValidatedGdpc) -> GdpcCoeffs {
    let ch = g.channel();
    let GdpcParams {
        gamma,
        rho,
        beta,
        alpha2: alpha,
    } = g.params();
    let (p1, p2, n1, n2) = (ch.p1, ch.p2, ch.n1, ch.n2);

    let info = (1.0 - rho) * (1.0 - gamma) * p1;
    // power of the information part not already carried coherently by the relay
    let fresh = (1.0 - beta * beta) * info;
    let qp = qprime_of(g);
    let private = gamma * p1;
    let leak = (1.0 - alpha).powi(2) * fresh * qp;
    let inflated = fresh + alpha * alpha * qp;

    GdpcCoeffs {
        a: fresh * (fresh + qp + private + n1),
        b: leak + (n1 + private) * inflated,
        c: fresh * (info + p2 + qp + 2.0 * beta * (info * p2).sqrt() + private + n2),
        d: leak + (n2 + private) * inflated,
        qprime: qp,
    }
}

/// Sum-rate terms at the relay (`r1_sum`) and at destination 2 (`r2_sum`),
/// plus the private rate to destination 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GdpcRates {
    pub r1_sum: f64,
    pub r2_sum: f64,
    pub r_private: f64,
}

impl GdpcRates {
    /// Achievable `R0 + R2` at these parameters.
    pub fn sum_rate(&self) -> f64 {
        self.r1_sum.min(self.r2_sum)
    }

    pub fn rate_point(&self) -> RatePoint {
        RatePoint::clamped(self.r_private, self.sum_rate())
    }
}

pub fn gdpc_rates(g: &ValidatedGdpc) -> GdpcRates {
    let k = gdpc_coeffs(g);
    let ch = g.channel();
    GdpcRates {
        r1_sum: half_log2_ratio(k.a, k.b),
        r2_sum: half_log2_ratio(k.c, k.d),
        r_private: c_of(g.params().gamma * ch.p1 / ch.n1),
    }
}

/// `min(r1_sum, r2_sum)`, the objective of the GDPC inner maximization.
pub(crate) fn gdpc_sum_rate(g: &ValidatedGdpc) -> f64 {
    gdpc_rates(g).sum_rate()
}

/// The two terms inside the no-state max-min for a given cooperative split
/// `beta3`: the relay decoding constraint and the coherent-combining
/// constraint at destination 2.
pub fn nostate_terms(c: &ValidatedChannel, gamma: f64, beta3: f64) -> (f64, f64) {
    let info = (1.0 - gamma) * c.p1;
    let private = gamma * c.p1;
    let relay = c_of(beta3 * info / (private + c.n1));
    let coherent = 2.0 * ((1.0 - beta3) * info * c.p2).sqrt();
    let destination = c_of((info + c.p2 + coherent) / (private + c.n2));
    (relay, destination)
}

/// A point of the no-state capacity region at fixed `gamma` and `beta3`.
pub fn nostate_region(c: &ValidatedChannel, gamma: f64, beta3: f64) -> Result<RatePoint> {
    for (field, value) in [("gamma", gamma), ("beta3", beta3)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::OutOfRange {
                field,
                value,
                lo: 0.0,
                hi: 1.0,
                reason: None,
            });
        }
    }
    let (t1, t2) = nostate_terms(c, gamma, beta3);
    Ok(RatePoint::clamped(c_of(gamma * c.p1 / c.n1), t1.min(t2)))
}

/// Decode-and-forward rate of the relay channel with the state known at both
/// the source and the relay. Independent of `q`.
pub fn relay_rate_informed_both(c: &ValidatedChannel) -> f64 {
    optimize::max_beta_nostate(c, 0.0)
        .expect("gamma = 0 is always in range")
        .1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ChannelParams;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn fig_channel() -> ValidatedChannel {
        ChannelParams::new(1.0, 1.0, 1.0, 0.1, 1.0)
            .validate()
            .unwrap()
    }

    fn gdpc(c: ChannelParams, g: GdpcParams) -> ValidatedGdpc {
        validate_gdpc(&c.validate().unwrap(), g).unwrap()
    }

    #[test]
    fn cap_c_values() {
        assert_eq!(cap_c(0.0).unwrap(), 0.0);
        assert!(close(cap_c(1.0).unwrap(), 0.5, 1e-15));
        assert!(close(cap_c(3.0).unwrap(), 1.0, 1e-15));
        assert_eq!(cap_c(-1.0), Err(Error::NegativeArgument(-1.0)));
    }

    #[test]
    fn qprime_values() {
        let c = fig_channel();
        assert_eq!(qprime(&c, 0.0, 0.0).unwrap(), 1.0);
        assert_eq!(qprime(&c, 0.0, 1.0).unwrap(), 0.0);
        assert!(close(qprime(&c, 0.0, 0.25).unwrap(), 0.25, 1e-15));
        assert!(qprime(&c, 1.0, 0.5).is_err());
    }

    #[test]
    fn coeffs_without_state() {
        let g = gdpc(
            ChannelParams::new(1.0, 1.0, 0.0, 0.1, 1.0),
            GdpcParams::new(0.0, 0.0, 0.0, 0.0),
        );
        let k = gdpc_coeffs(&g);
        assert!(close(k.a, 1.1, 1e-12));
        assert!(close(k.b, 0.1, 1e-12));
        assert!(close(k.c, 3.0, 1e-12));
        assert!(close(k.d, 1.0, 1e-12));
        assert_eq!(k.qprime, 0.0);
    }

    // Frozen from an independent log-determinant evaluation of the
    // partial-cancellation covariance (not from these formulas).
    #[test]
    fn coeffs_and_rates_reference_point() {
        let g = gdpc(
            ChannelParams::default(),
            GdpcParams::new(0.2, 0.3, 0.4, 0.5),
        );
        let k = gdpc_coeffs(&g);
        assert!(close(k.qprime, 0.260_204_102_886_728_8, 1e-12));
        assert!(close(k.a, 0.484_796_169_997_917_2, 1e-12));
        assert!(close(k.b, 0.191_235_310_215_984, 1e-12));
        assert!(close(k.c, 1.702_316_111_556_071_2, 1e-12));
        assert!(close(k.d, 0.673_141_233_365_498, 1e-12));

        let r = gdpc_rates(&g);
        assert!(close(r.r1_sum, 0.671_014_685_059_134, 1e-12));
        assert!(close(r.r2_sum, 0.669_258_913_068_694_7, 1e-12));
        assert!(close(r.r_private, cap_c(2.0).unwrap(), 1e-15));
        assert_eq!(r.sum_rate(), r.r2_sum);
    }

    #[test]
    fn rates_without_state() {
        for alpha2 in [0.0, 0.3, 1.0] {
            let g = gdpc(
                ChannelParams::new(1.0, 1.0, 0.0, 0.1, 1.0),
                GdpcParams::new(0.0, 0.0, 0.0, alpha2),
            );
            let r = gdpc_rates(&g);
            assert!(close(r.r1_sum, 0.5 * 11f64.log2(), 1e-12));
            assert!(close(r.r2_sum, 0.5 * 3f64.log2(), 1e-12));
        }
    }

    #[test]
    fn full_private_split_clamps() {
        let g = gdpc(
            ChannelParams::default(),
            GdpcParams::new(1.0, 0.0, 0.3, 0.6),
        );
        let k = gdpc_coeffs(&g);
        assert_eq!((k.a, k.c), (0.0, 0.0));
        let r = gdpc_rates(&g);
        assert_eq!((r.r1_sum, r.r2_sum), (0.0, 0.0));
        assert!(close(r.r_private, cap_c(10.0).unwrap(), 1e-15));
    }

    #[test]
    fn full_cooperation_beta_one_clamps() {
        // beta = 1 leaves no fresh power: 0/0 on both terms
        let g = gdpc(
            ChannelParams::default(),
            GdpcParams::new(0.3, 0.2, 1.0, 0.0),
        );
        let r = gdpc_rates(&g);
        assert_eq!((r.r1_sum, r.r2_sum), (0.0, 0.0));
    }

    #[test]
    fn nostate_examples() {
        let c = fig_channel();
        let p = nostate_region(&c, 0.0, 1.0).unwrap();
        assert_eq!(p.r1, 0.0);
        assert!(close(p.r02, 0.5 * 3f64.log2(), 1e-12));

        let p = nostate_region(&c, 0.0, 0.0).unwrap();
        assert_eq!(p.r02, 0.0);

        let (t1, t2) = nostate_terms(&c, 0.0, 0.36);
        assert!(close(t1, t2, 1e-12));
        assert!(close(t1, 0.5 * 4.6f64.log2(), 1e-12));

        assert!(nostate_region(&c, 1.2, 0.5).is_err());
        assert!(nostate_region(&c, 0.5, -0.5).is_err());
    }

    #[test]
    fn relay_rate_examples() {
        for q in [0.0, 1.0, 7.0] {
            let c = ChannelParams::new(1.0, 1.0, q, 0.1, 1.0)
                .validate()
                .unwrap();
            assert!(close(
                relay_rate_informed_both(&c),
                0.5 * 4.6f64.log2(),
                1e-10
            ));
        }
        // no relay: destination term is C(p1/n2) once the relay decodes
        let c = ChannelParams::new(1.0, 0.0, 1.0, 0.1, 1.0)
            .validate()
            .unwrap();
        assert!(close(relay_rate_informed_both(&c), c_of(1.0), 1e-10));
        let c = ChannelParams::new(1e-12, 1.0, 1.0, 0.1, 1.0)
            .validate()
            .unwrap();
        assert!(relay_rate_informed_both(&c) < 1e-5);
    }

    #[test]
    fn full_cancellation_matches_stateless_channel() {
        // rho (1-gamma) p1 = q: the state is fully cancelled, remaining
        // information power (1-rho)(1-gamma) p1
        let (gamma, beta, alpha2) = (0.25, 0.3, 0.8);
        let ch = ChannelParams::new(2.0, 1.5, 0.6, 0.2, 1.1);
        let rho = ch.q / ((1.0 - gamma) * ch.p1);
        let r = gdpc_rates(&gdpc(ch, GdpcParams::new(gamma, rho, beta, alpha2)));
        assert!(gdpc_coeffs(&gdpc(ch, GdpcParams::new(gamma, rho, beta, alpha2))).qprime < 1e-15);

        // same fresh power in a stateless channel with reduced source power
        let info = (1.0 - rho) * (1.0 - gamma) * ch.p1;
        let private = gamma * ch.p1;
        let fresh = (1.0 - beta * beta) * info;
        let r1 = c_of(fresh / (private + ch.n1));
        let r2 = c_of((info + ch.p2 + 2.0 * beta * (info * ch.p2).sqrt()) / (private + ch.n2));
        assert!(close(r.r1_sum, r1, 1e-12));
        assert!(close(r.r2_sum, r2, 1e-12));
    }

    proptest! {
        #[test]
        fn zero_state_reduces_to_nostate_terms(
            p1 in 0.05f64..20.0, p2 in 0.0f64..20.0, n1 in 0.01f64..3.0, dn in 0.01f64..5.0,
            gamma in 0.0f64..=1.0, beta in 0.0f64..=1.0, alpha2 in 0.0f64..=1.0,
        ) {
            let ch = ChannelParams::new(p1, p2, 0.0, n1, n1 + dn).validate().unwrap();
            let g = validate_gdpc(&ch, GdpcParams::new(gamma, 0.0, beta, alpha2)).unwrap();
            let r = gdpc_rates(&g);
            let (t1, t2) = nostate_terms(&ch, gamma, 1.0 - beta * beta);
            prop_assert!((r.r1_sum - t1).abs() <= 1e-9);
            prop_assert!((r.r2_sum - t2).abs() <= 1e-9);
        }

        #[test]
        fn private_rate_increasing_in_gamma(
            g1 in 0.0f64..1.0, dg in 1e-6f64..1.0,
            beta in 0.0f64..=1.0, alpha2 in 0.0f64..=1.0,
        ) {
            let g2 = (g1 + dg).min(1.0);
            prop_assume!(g2 > g1);
            let ch = ChannelParams::default().validate().unwrap();
            let a = gdpc_rates(&validate_gdpc(&ch, GdpcParams::new(g1, 0.0, beta, alpha2)).unwrap());
            let b = gdpc_rates(&validate_gdpc(&ch, GdpcParams::new(g2, 0.0, beta, alpha2)).unwrap());
            prop_assert!(b.r_private > a.r_private);
        }

        #[test]
        fn qprime_non_increasing_in_rho(
            q in 0.01f64..5.0, gamma in 0.0f64..0.99, u in 0.0f64..=1.0, v in 0.0f64..=1.0,
        ) {
            let ch = ChannelParams::new(1.5, 1.0, q, 0.1, 1.0).validate().unwrap();
            let rmax = ch.rho_max(gamma);
            let (lo, hi) = if u <= v { (u * rmax, v * rmax) } else { (v * rmax, u * rmax) };
            prop_assert!(qprime(&ch, gamma, hi).unwrap() <= qprime(&ch, gamma, lo).unwrap() + 1e-15);
        }
    }
}
