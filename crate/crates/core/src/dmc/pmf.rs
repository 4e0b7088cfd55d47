use std::collections::HashMap;

use crate::error::{Error, Result};

/// Tolerance on normalization of every probability table.
pub const NORM_TOL: f64 = 1e-12;

/// Random variables of the discrete channel, in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    S,
    U1,
    U2,
    X1,
    X2,
    Y1,
    Y2,
}

impl Axis {
    pub const ALL: [Axis; 7] = [
        Axis::S,
        Axis::U1,
        Axis::U2,
        Axis::X1,
        Axis::X2,
        Axis::Y1,
        Axis::Y2,
    ];
}

/// Joint pmf over named axes, stored row-major in the order of `axes`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    axes: Vec<Axis>,
    sizes: Vec<usize>,
    probs: Vec<f64>,
}

impl JointPmf {
    pub fn new(axes: Vec<Axis>, sizes: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        if axes.len() != sizes.len() {
            return Err(Error::InvalidSpec("one size per axis required".into()));
        }
        for (i, a) in axes.iter().enumerate() {
            if axes[..i].contains(a) {
                return Err(Error::InvalidSpec(format!("axis {a:?} repeated")));
            }
        }
        let cells: usize = sizes.iter().product();
        if probs.len() != cells {
            return Err(Error::InvalidSpec(format!(
                "{} probabilities for {cells} cells",
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidSpec(format!("invalid probability {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                what: "joint pmf".into(),
                sum,
            });
        }
        Ok(Self { axes, sizes, probs })
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    fn position(&self, axis: Axis) -> Result<usize> {
        self.axes
            .iter()
            .position(|a| *a == axis)
            .ok_or_else(|| Error::UnknownLabel(format!("{axis:?}")))
    }

    /// Marginal over `keep`, returned in the order of `keep`.
    pub fn marginal(&self, keep: &[Axis]) -> Result<Vec<f64>> {
        let pos: Vec<usize> = keep
            .iter()
            .map(|&a| self.position(a))
            .collect::<Result<_>>()?;
        let out_len: usize = pos.iter().map(|&p| self.sizes[p]).product();
        let mut out = vec![0.0; out_len];
        let mut digits = vec![0usize; self.sizes.len()];
        for &p in &self.probs {
            if p > 0.0 {
                let mut idx = 0;
                for &k in &pos {
                    idx = idx * self.sizes[k] + digits[k];
                }
                out[idx] += p;
            }
            // advance the row-major counter
            for d in (0..digits.len()).rev() {
                digits[d] += 1;
                if digits[d] < self.sizes[d] {
                    break;
                }
                digits[d] = 0;
            }
        }
        Ok(out)
    }

    /// Shannon entropy (bits) of the marginal over a set of axes.
    pub fn entropy(&self, set: &[Axis]) -> Result<f64> {
        Ok(self
            .marginal(set)?
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum())
    }
}

fn union(sets: &[&[Axis]]) -> Vec<Axis> {
    let mut out: Vec<Axis> = Vec::new();
    for s in sets {
        for a in s.iter() {
            if !out.contains(a) {
                out.push(*a);
            }
        }
    }
    out.sort();
    out
}

/// `I(A; B | C)` in bits with set semantics (shared axes are allowed and
/// axes of `C` inside `A` or `B` carry no information).
pub fn discrete_cmi(joint: &JointPmf, a: &[Axis], b: &[Axis], c: &[Axis]) -> Result<f64> {
    let mut cache: HashMap<Vec<Axis>, f64> = HashMap::new();
    let mut h = |set: Vec<Axis>| -> Result<f64> {
        if let Some(v) = cache.get(&set) {
            return Ok(*v);
        }
        let v = joint.entropy(&set)?;
        cache.insert(set, v);
        Ok(v)
    };
    let v = h(union(&[a, c]))? + h(union(&[b, c]))? - h(union(&[c]))? - h(union(&[a, b, c]))?;
    debug_assert!(v >= -1e-12, "negative information {v}");
    Ok(v.max(0.0))
}
