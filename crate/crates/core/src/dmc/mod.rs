//! Brute-force evaluation of the discrete memoryless rate regions on tiny
//! alphabets.
//!
//! A [`DmcSpec`] holds the state law `p(s)` and a general channel
//! `p(y1, y2 | x1, x2, s)`; an [`AuxJoint`] holds `p(s, u1, u2, x1, x2)`.
//! Composing the two gives the full seven-variable joint on which every
//! information term is computed exactly.

mod enumerate;
mod pmf;

use serde::{Deserialize, Serialize};

pub use enumerate::{
    candidate_count, dmc_maximize, dmc_maximize_by, DmcOptimum, Objective, Region, MAX_CANDIDATES,
};
pub use pmf::{discrete_cmi, Axis, JointPmf, NORM_TOL};

use crate::error::{Error, Result};
use crate::model::RatePoint;

pub const MAX_ALPHABET: usize = 4;

/// Alphabet cardinalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabets {
    pub s: usize,
    pub u1: usize,
    pub u2: usize,
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
}

impl Alphabets {
    fn validate(&self) -> Result<()> {
        let all = [
            ("s", self.s),
            ("u1", self.u1),
            ("u2", self.u2),
            ("x1", self.x1),
            ("x2", self.x2),
            ("y1", self.y1),
            ("y2", self.y2),
        ];
        for (name, n) in all {
            if !(1..=MAX_ALPHABET).contains(&n) {
                return Err(Error::InvalidSpec(format!(
                    "|{name}| = {n} outside 1..={MAX_ALPHABET}"
                )));
            }
        }
        Ok(())
    }

    /// Cells of `(u1, u2, x1, x2)` per state.
    pub fn input_cells(&self) -> usize {
        self.u1 * self.u2 * self.x1 * self.x2
    }

    fn output_cells(&self) -> usize {
        self.y1 * self.y2
    }
}

fn check_rows(what: &str, table: &[f64], row_len: usize) -> Result<()> {
    if let Some(p) = table.iter().find(|p| !p.is_finite() || **p < 0.0) {
        return Err(Error::InvalidSpec(format!(
            "{what}: invalid probability {p}"
        )));
    }
    for (i, row) in table.chunks(row_len).enumerate() {
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                what: format!("{what} row {i}"),
                sum,
            });
        }
    }
    Ok(())
}

/// State law and channel; `channel` is flattened as `[s][x1][x2][y1][y2]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DmcSpecFile", into = "DmcSpecFile")]
pub struct DmcSpec {
    sizes: Alphabets,
    p_s: Vec<f64>,
    channel: Vec<f64>,
}

impl DmcSpec {
    pub fn new(sizes: Alphabets, p_s: Vec<f64>, channel: Vec<f64>) -> Result<Self> {
        sizes.validate()?;
        if p_s.len() != sizes.s {
            return Err(Error::InvalidSpec(format!(
                "p_s has {} entries for |S| = {}",
                p_s.len(),
                sizes.s
            )));
        }
        check_rows("p_s", &p_s, sizes.s)?;
        let expected = sizes.s * sizes.x1 * sizes.x2 * sizes.output_cells();
        if channel.len() != expected {
            return Err(Error::InvalidSpec(format!(
                "channel has {} entries, expected {expected}",
                channel.len()
            )));
        }
        check_rows("channel", &channel, sizes.output_cells())?;
        Ok(Self {
            sizes,
            p_s,
            channel,
        })
    }

    /// Channel with the degraded factorization `p(y1|x1,x2,s) p(y2|y1,x2)`.
    /// `relay` is `[s][x1][x2][y1]`, `destination` is `[y1][x2][y2]`.
    pub fn degraded(
        sizes: Alphabets,
        p_s: Vec<f64>,
        relay: &[f64],
        destination: &[f64],
    ) -> Result<Self> {
        sizes.validate()?;
        if relay.len() != sizes.s * sizes.x1 * sizes.x2 * sizes.y1
            || destination.len() != sizes.y1 * sizes.x2 * sizes.y2
        {
            return Err(Error::InvalidSpec(
                "degraded factor tables have the wrong shape".into(),
            ));
        }
        check_rows("p(y1|x1,x2,s)", relay, sizes.y1)?;
        check_rows("p(y2|y1,x2)", destination, sizes.y2)?;
        let mut channel = Vec::with_capacity(sizes.s * sizes.x1 * sizes.x2 * sizes.output_cells());
        for s in 0..sizes.s {
            for x1 in 0..sizes.x1 {
                for x2 in 0..sizes.x2 {
                    for y1 in 0..sizes.y1 {
                        let p1 = relay[((s * sizes.x1 + x1) * sizes.x2 + x2) * sizes.y1 + y1];
                        for y2 in 0..sizes.y2 {
                            channel.push(p1 * destination[(y1 * sizes.x2 + x2) * sizes.y2 + y2]);
                        }
                    }
                }
            }
        }
        Self::new(sizes, p_s, channel)
    }

    /// Noiseless channel `(y1, y2) = f(s, x1, x2)`.
    pub fn deterministic(
        sizes: Alphabets,
        p_s: Vec<f64>,
        f: impl Fn(usize, usize, usize) -> (usize, usize),
    ) -> Result<Self> {
        sizes.validate()?;
        let mut channel = vec![0.0; sizes.s * sizes.x1 * sizes.x2 * sizes.output_cells()];
        for s in 0..sizes.s {
            for x1 in 0..sizes.x1 {
                for x2 in 0..sizes.x2 {
                    let (y1, y2) = f(s, x1, x2);
                    if y1 >= sizes.y1 || y2 >= sizes.y2 {
                        return Err(Error::InvalidSpec(format!(
                            "output ({y1}, {y2}) out of range"
                        )));
                    }
                    let row = ((s * sizes.x1 + x1) * sizes.x2 + x2) * sizes.output_cells();
                    channel[row + y1 * sizes.y2 + y2] = 1.0;
                }
            }
        }
        Self::new(sizes, p_s, channel)
    }

    pub fn sizes(&self) -> Alphabets {
        self.sizes
    }

    pub fn p_s(&self) -> &[f64] {
        &self.p_s
    }

    fn transition(&self, s: usize, x1: usize, x2: usize) -> &[f64] {
        let z = &self.sizes;
        let row = ((s * z.x1 + x1) * z.x2 + x2) * z.output_cells();
        &self.channel[row..row + z.output_cells()]
    }
}

#[derive(Serialize, Deserialize)]
struct DmcSpecFile {
    sizes: Alphabets,
    p_s: Vec<f64>,
    /// `[s][x1][x2][y1][y2]`
    channel: Vec<Vec<Vec<Vec<Vec<f64>>>>>,
}

impl TryFrom<DmcSpecFile> for DmcSpec {
    type Error = Error;

    fn try_from(f: DmcSpecFile) -> Result<Self> {
        let z = f.sizes;
        let shape_err =
            || Error::InvalidSpec("channel array does not match the declared sizes".into());
        if f.channel.len() != z.s {
            return Err(shape_err());
        }
        let mut flat = Vec::new();
        for a in &f.channel {
            if a.len() != z.x1 {
                return Err(shape_err());
            }
            for b in a {
                if b.len() != z.x2 {
                    return Err(shape_err());
                }
                for c in b {
                    if c.len() != z.y1 {
                        return Err(shape_err());
                    }
                    for d in c {
                        if d.len() != z.y2 {
                            return Err(shape_err());
                        }
                        flat.extend_from_slice(d);
                    }
                }
            }
        }
        DmcSpec::new(z, f.p_s, flat)
    }
}

impl From<DmcSpec> for DmcSpecFile {
    fn from(d: DmcSpec) -> Self {
        let z = d.sizes;
        let mut it = d.channel.into_iter();
        let channel = (0..z.s)
            .map(|_| {
                (0..z.x1)
                    .map(|_| {
                        (0..z.x2)
                            .map(|_| {
                                (0..z.y1)
                                    .map(|_| it.by_ref().take(z.y2).collect())
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self {
            sizes: z,
            p_s: d.p_s,
            channel,
        }
    }
}

/// Input law `p(s, u1, u2, x1, x2)`, flattened as `[s][u1][u2][x1][x2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxJoint {
    sizes: Alphabets,
    probs: Vec<f64>,
}

impl AuxJoint {
    /// Checks normalization and that the state marginal matches the spec.
    pub fn new(spec: &DmcSpec, probs: Vec<f64>) -> Result<Self> {
        let z = spec.sizes;
        let cells = z.input_cells();
        if probs.len() != z.s * cells {
            return Err(Error::InvalidSpec(format!(
                "aux joint has {} entries, expected {}",
                probs.len(),
                z.s * cells
            )));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidSpec(format!(
                "aux joint: invalid probability {p}"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                what: "aux joint".into(),
                sum: total,
            });
        }
        for (s, block) in probs.chunks(cells).enumerate() {
            let m: f64 = block.iter().sum();
            if (m - spec.p_s[s]).abs() > NORM_TOL {
                return Err(Error::NotNormalized {
                    what: format!("aux joint state marginal at s={s} (p_s = {})", spec.p_s[s]),
                    sum: m,
                });
            }
        }
        Ok(Self { sizes: z, probs })
    }

    /// Builds `p(s) p(u1, u2, x1, x2 | s)` from per-state conditional rows.
    pub fn from_conditional(spec: &DmcSpec, conditional: &[f64]) -> Result<Self> {
        let cells = spec.sizes.input_cells();
        if conditional.len() != spec.sizes.s * cells {
            return Err(Error::InvalidSpec(
                "conditional table has the wrong shape".into(),
            ));
        }
        check_rows("p(u1,u2,x1,x2|s)", conditional, cells)?;
        let probs = conditional
            .chunks(cells)
            .zip(&spec.p_s)
            .flat_map(|(row, &ps)| row.iter().map(move |p| p * ps))
            .collect();
        Self::new(spec, probs)
    }

    /// Input law built from a function of `(s, u1, u2, x1, x2)` giving the
    /// conditional probability given `s`.
    pub fn from_fn(
        spec: &DmcSpec,
        f: impl Fn(usize, usize, usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let z = spec.sizes;
        let mut cond = Vec::with_capacity(z.s * z.input_cells());
        for s in 0..z.s {
            for u1 in 0..z.u1 {
                for u2 in 0..z.u2 {
                    for x1 in 0..z.x1 {
                        for x2 in 0..z.x2 {
                            cond.push(f(s, u1, u2, x1, x2));
                        }
                    }
                }
            }
        }
        Self::from_conditional(spec, &cond)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn sizes(&self) -> Alphabets {
        self.sizes
    }
}

impl Serialize for AuxJoint {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let z = self.sizes;
        let mut it = self.probs.iter().copied();
        let nested: Vec<Vec<Vec<Vec<Vec<f64>>>>> = (0..z.s)
            .map(|_| {
                (0..z.u1)
                    .map(|_| {
                        (0..z.u2)
                            .map(|_| {
                                (0..z.x1)
                                    .map(|_| it.by_ref().take(z.x2).collect())
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        #[derive(Serialize)]
        struct Out<'a> {
            sizes: &'a Alphabets,
            /// `[s][u1][u2][x1][x2]`
            probs: Vec<Vec<Vec<Vec<Vec<f64>>>>>,
        }
        Out {
            sizes: &z,
            probs: nested,
        }
        .serialize(serializer)
    }
}

/// Full joint over `(s, u1, u2, x1, x2, y1, y2)`.
pub fn compose(spec: &DmcSpec, aux: &AuxJoint) -> Result<JointPmf> {
    let z = spec.sizes;
    if aux.sizes != z {
        return Err(Error::InvalidSpec(
            "aux joint built for a different spec".into(),
        ));
    }
    let out = z.output_cells();
    let mut probs = Vec::with_capacity(aux.probs.len() * out);
    let mut k = 0;
    for s in 0..z.s {
        for _u1 in 0..z.u1 {
            for _u2 in 0..z.u2 {
                for x1 in 0..z.x1 {
                    for x2 in 0..z.x2 {
                        let p = aux.probs[k];
                        k += 1;
                        probs.extend(spec.transition(s, x1, x2).iter().map(|t| p * t));
                    }
                }
            }
        }
    }
    // the product of normalized tables is normalized up to round-off
    let sum: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= sum;
    }
    JointPmf::new(
        Axis::ALL.to_vec(),
        vec![z.s, z.u1, z.u2, z.x1, z.x2, z.y1, z.y2],
        probs,
    )
}

use Axis::{S, U1, U2, X1, X2, Y1, Y2};

/// Information terms of the source-only region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InformedSourceTerms {
    /// `I(U1; Y1 | U2, X2)`
    pub private_info: f64,
    /// `I(U1; S | U2, X2)`
    pub private_penalty: f64,
    /// `I(U2; Y1 | X2)`
    pub relay_info: f64,
    /// `I(U2; S | X2)`
    pub relay_penalty: f64,
    /// `I(U2, X2; Y2)`
    pub destination_info: f64,
}

impl InformedSourceTerms {
    pub fn rate_point(&self) -> RatePoint {
        RatePoint::clamped(
            self.private_info - self.private_penalty,
            (self.relay_info - self.relay_penalty).min(self.destination_info - self.relay_penalty),
        )
    }
}

pub fn informed_source_terms(spec: &DmcSpec, aux: &AuxJoint) -> Result<InformedSourceTerms> {
    let j = compose(spec, aux)?;
    Ok(InformedSourceTerms {
        private_info: discrete_cmi(&j, &[U1], &[Y1], &[U2, X2])?,
        private_penalty: discrete_cmi(&j, &[U1], &[S], &[U2, X2])?,
        relay_info: discrete_cmi(&j, &[U2], &[Y1], &[X2])?,
        relay_penalty: discrete_cmi(&j, &[U2], &[S], &[X2])?,
        destination_info: discrete_cmi(&j, &[U2, X2], &[Y2], &[])?,
    })
}

/// Rate point of the source-only region for one input law.
pub fn lemma2_eval(spec: &DmcSpec, aux: &AuxJoint) -> Result<RatePoint> {
    Ok(informed_source_terms(spec, aux)?.rate_point())
}

/// Information terms of the region with the state at the source and relay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InformedBothTerms {
    /// `I(X1; Y1 | S, U1, X2)`
    pub private_info: f64,
    /// `I(U2; Y1 | S, U1)`
    pub relay_info: f64,
    /// `I(U1, U2; Y2)`
    pub destination_info: f64,
    /// `I(U1, U2; S)`
    pub destination_penalty: f64,
}

impl InformedBothTerms {
    pub fn rate_point(&self) -> RatePoint {
        RatePoint::clamped(
            self.private_info,
            self.relay_info
                .min(self.destination_info - self.destination_penalty),
        )
    }
}

pub fn informed_both_terms(spec: &DmcSpec, aux: &AuxJoint) -> Result<InformedBothTerms> {
    let j = compose(spec, aux)?;
    Ok(InformedBothTerms {
        private_info: discrete_cmi(&j, &[X1], &[Y1], &[S, U1, X2])?,
        relay_info: discrete_cmi(&j, &[U2], &[Y1], &[S, U1])?,
        destination_info: discrete_cmi(&j, &[U1, U2], &[Y2], &[])?,
        destination_penalty: discrete_cmi(&j, &[U1, U2], &[S], &[])?,
    })
}

pub fn lemma1_eval(spec: &DmcSpec, aux: &AuxJoint) -> Result<RatePoint> {
    Ok(informed_both_terms(spec, aux)?.rate_point())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn pipes() -> DmcSpec {
        let z = Alphabets {
            s: 1,
            u1: 1,
            u2: 2,
            x1: 2,
            x2: 2,
            y1: 2,
            y2: 2,
        };
        DmcSpec::deterministic(z, vec![1.0], |_, x1, x2| (x1, x2)).unwrap()
    }

    #[test]
    fn pipes_source_only_rate() {
        let spec = pipes();
        // U2 = X1 uniform, X2 uniform and independent
        let aux =
            AuxJoint::from_fn(&spec, |_, _, u2, x1, _| if u2 == x1 { 0.25 } else { 0.0 }).unwrap();
        let t = informed_source_terms(&spec, &aux).unwrap();
        assert_eq!(t.relay_penalty, 0.0);
        assert_eq!(t.private_penalty, 0.0);
        let r = t.rate_point();
        assert!((r.r02 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn informed_both_private_examples() {
        // U1 = X1 leaves nothing to learn about X1
        let z = Alphabets {
            s: 1,
            u1: 2,
            u2: 1,
            x1: 2,
            x2: 1,
            y1: 2,
            y2: 1,
        };
        let spec = DmcSpec::deterministic(z, vec![1.0], |_, x1, _| (x1, 0)).unwrap();
        let aux =
            AuxJoint::from_fn(&spec, |_, u1, _, x1, _| if u1 == x1 { 0.5 } else { 0.0 }).unwrap();
        assert_eq!(lemma1_eval(&spec, &aux).unwrap().r1, 0.0);
        // constant U1, uniform X1 through a noiseless pipe
        let aux =
            AuxJoint::from_fn(&spec, |_, u1, _, _, _| if u1 == 0 { 0.5 } else { 0.0 }).unwrap();
        assert!((lemma1_eval(&spec, &aux).unwrap().r1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn xor_state_hides_relay_layer() {
        // Y1 = X1 xor S with S uniform; U2 independent of (X1, S)
        let z = Alphabets {
            s: 2,
            u1: 1,
            u2: 2,
            x1: 2,
            x2: 1,
            y1: 2,
            y2: 2,
        };
        let spec = DmcSpec::deterministic(z, vec![0.5, 0.5], |s, x1, _| (x1 ^ s, x1)).unwrap();
        let aux = AuxJoint::from_fn(&spec, |_, _, _, _, _| 0.25).unwrap();
        let t = informed_source_terms(&spec, &aux).unwrap();
        assert_eq!(t.relay_info, 0.0);
        assert_eq!(t.relay_penalty, 0.0);
        assert_eq!(t.rate_point().r02, 0.0);
        // U2 = X1 = S: the relay sees a constant output and binning pays for S
        let aux = AuxJoint::from_fn(
            &spec,
            |s, _, u2, x1, _| if u2 == s && x1 == s { 1.0 } else { 0.0 },
        )
        .unwrap();
        let t = informed_source_terms(&spec, &aux).unwrap();
        assert!(t.relay_info.abs() < 1e-15);
        assert!((t.relay_penalty - 1.0).abs() < 1e-15);
        assert_eq!(t.rate_point().r02, 0.0);
        // U2 = X1 xor S: Y1 = U2 but the bin index costs I(U2; S) = 0
        let aux = AuxJoint::from_fn(
            &spec,
            |s, _, u2, x1, _| if u2 == x1 ^ s { 0.5 } else { 0.0 },
        )
        .unwrap();
        let t = informed_source_terms(&spec, &aux).unwrap();
        assert!((t.relay_info - 1.0).abs() < 1e-15);
        assert!(t.relay_penalty.abs() < 1e-15);
    }

    #[test]
    fn spec_validation() {
        let z = Alphabets {
            s: 5,
            u1: 1,
            u2: 1,
            x1: 1,
            x2: 1,
            y1: 1,
            y2: 1,
        };
        assert!(DmcSpec::deterministic(z, vec![0.2; 5], |_, _, _| (0, 0)).is_err());
        let z = Alphabets { s: 1, ..z };
        assert!(matches!(
            DmcSpec::new(z, vec![0.9], vec![1.0]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(DmcSpec::new(z, vec![1.0], vec![0.5]).is_err());
        let spec = DmcSpec::new(z, vec![1.0], vec![1.0]).unwrap();
        assert!(AuxJoint::new(&spec, vec![0.5]).is_err());
    }

    #[test]
    fn aux_marginal_must_match_state_law() {
        let z = Alphabets {
            s: 2,
            u1: 1,
            u2: 1,
            x1: 2,
            x2: 1,
            y1: 1,
            y2: 1,
        };
        let spec = DmcSpec::deterministic(z, vec![0.25, 0.75], |_, _, _| (0, 0)).unwrap();
        assert!(AuxJoint::new(&spec, vec![0.25, 0.25, 0.25, 0.25]).is_err());
        assert!(AuxJoint::new(&spec, vec![0.125, 0.125, 0.5, 0.25]).is_ok());
    }

    #[test]
    fn degraded_constructor_factorizes() {
        let z = Alphabets {
            s: 1,
            u1: 1,
            u2: 1,
            x1: 2,
            x2: 1,
            y1: 2,
            y2: 2,
        };
        // binary symmetric hops with crossovers 0.1 and 0.2
        let relay = [0.9, 0.1, 0.1, 0.9];
        let dest = [0.8, 0.2, 0.2, 0.8];
        let spec = DmcSpec::degraded(z, vec![1.0], &relay, &dest).unwrap();
        assert!((spec.transition(0, 0, 0)[0] - 0.72).abs() < 1e-15);
        assert!((spec.transition(0, 1, 0)[3] - 0.72).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let spec = pipes();
        let text = serde_json::to_string(&spec).unwrap();
        let back: DmcSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let bad = text.replace("[[[[1.0,0.0],[0.0,0.0]]", "[[[[1.0,0.0]]");
        assert!(serde_json::from_str::<DmcSpec>(&bad).is_err());
    }

    fn normalize(raw: &[f64]) -> Vec<f64> {
        let t: f64 = raw.iter().sum();
        raw.iter().map(|p| p / t).collect()
    }

    fn random_case(chan: &[f64], aux: &[f64]) -> (DmcSpec, AuxJoint) {
        // |S| = 2, binary everything else
        let z = Alphabets {
            s: 2,
            u1: 2,
            u2: 2,
            x1: 2,
            x2: 2,
            y1: 2,
            y2: 2,
        };
        let channel: Vec<f64> = chan.chunks(4).flat_map(normalize).collect();
        let spec = DmcSpec::new(z, vec![0.4, 0.6], channel).unwrap();
        let cond: Vec<f64> = aux.chunks(16).flat_map(normalize).collect();
        let aux = AuxJoint::from_conditional(&spec, &cond).unwrap();
        (spec, aux)
    }

    proptest! {
        #[test]
        fn composed_joint_properties(
            chan in proptest::collection::vec(0.01f64..1.0, 32),
            aux in proptest::collection::vec(0.01f64..1.0, 32),
        ) {
            let (spec, aux) = random_case(&chan, &aux);
            let j = compose(&spec, &aux).unwrap();
            let m = j.marginal(&[S, U1, U2, X1, X2]).unwrap();
            for (a, b) in m.iter().zip(aux.probs()) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
            let markov = discrete_cmi(&j, &[U1, U2], &[Y1, Y2], &[X1, X2, S]).unwrap();
            prop_assert!(markov <= 1e-10);
            let lhs = discrete_cmi(&j, &[U1], &[Y1, S], &[]).unwrap();
            let rhs = discrete_cmi(&j, &[U1], &[Y1], &[]).unwrap() + discrete_cmi(&j, &[U1], &[S], &[Y1]).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10);
            let t = informed_both_terms(&spec, &aux).unwrap();
            prop_assert!(t.destination_info - t.destination_penalty <= t.destination_info);
        }
    }

    #[test]
    fn destination_penalty_vanishes_iff_independent_of_state() {
        let z = Alphabets {
            s: 2,
            u1: 2,
            u2: 1,
            x1: 2,
            x2: 1,
            y1: 2,
            y2: 2,
        };
        let spec = DmcSpec::deterministic(z, vec![0.5, 0.5], |s, x1, _| (x1 ^ s, x1)).unwrap();
        let indep =
            AuxJoint::from_fn(&spec, |_, u1, _, x1, _| if u1 == x1 { 0.5 } else { 0.0 }).unwrap();
        let t = informed_both_terms(&spec, &indep).unwrap();
        assert_eq!(t.destination_penalty, 0.0);
        let tied = AuxJoint::from_fn(
            &spec,
            |s, u1, _, x1, _| if u1 == s && x1 == s { 1.0 } else { 0.0 },
        )
        .unwrap();
        let t = informed_both_terms(&spec, &tied).unwrap();
        assert!(t.destination_penalty > 0.5);
        assert!(t.destination_info - t.destination_penalty < t.destination_info);
    }
}
