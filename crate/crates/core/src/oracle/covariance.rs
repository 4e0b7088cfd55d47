use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative residual-variance threshold below which a variable counts as a
/// linear function of the ones already kept.
pub const DEPENDENCE_TOL: f64 = 1e-10;
/// Eigenvalue tolerance for the positive-semidefinite check.
pub const PSD_TOL: f64 = 1e-10;
/// Smallest determinant accepted before a full-rank set is declared singular.
pub const DET_FLOOR: f64 = 1e-300;

/// Joint zero-mean Gaussian over named scalar variables.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceSystem {
    labels: Vec<String>,
    sigma: DMatrix<f64>,
    index: HashMap<String, usize>,
}

impl CovarianceSystem {
    pub fn new(labels: Vec<String>, sigma: DMatrix<f64>) -> Result<Self> {
        let n = labels.len();
        if sigma.nrows() != n || sigma.ncols() != n {
            return Err(Error::InvalidSpec(format!(
                "covariance is {}x{} for {n} labels",
                sigma.nrows(),
                sigma.ncols()
            )));
        }
        let scale = sigma.diagonal().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for i in 0..n {
            for j in 0..i {
                if (sigma[(i, j)] - sigma[(j, i)]).abs() > 1e-12 * scale {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        if n > 0 {
            let min_eig = sigma.clone().symmetric_eigen().eigenvalues.min();
            if min_eig < -PSD_TOL * scale {
                return Err(Error::NotPsd {
                    min_eigenvalue: min_eig,
                });
            }
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidSpec(format!("duplicate label `{l}`")));
            }
        }
        Ok(Self {
            labels,
            sigma,
            index,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sigma(&self) -> &DMatrix<f64> {
        &self.sigma
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn variance(&self, label: &str) -> Result<f64> {
        let i = self.index_of(label)?;
        Ok(self.sigma[(i, i)])
    }

    pub fn covariance(&self, a: &str, b: &str) -> Result<f64> {
        Ok(self.sigma[(self.index_of(a)?, self.index_of(b)?)])
    }

    /// Variance of `sum_k coef_k * label_k`.
    pub fn combination_variance(&self, terms: &[(&str, f64)]) -> Result<f64> {
        let idx: Vec<(usize, f64)> = terms
            .iter()
            .map(|&(l, w)| Ok((self.index_of(l)?, w)))
            .collect::<Result<_>>()?;
        let mut v = 0.0;
        for &(i, wi) in &idx {
            for &(j, wj) in &idx {
                v += wi * wj * self.sigma[(i, j)];
            }
        }
        Ok(v)
    }

    fn resolve(&self, set: &[&str]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(set.len());
        for l in set {
            let i = self.index_of(l)?;
            if !out.contains(&i) {
                out.push(i);
            }
        }
        Ok(out)
    }

    fn sub(&self, idx: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.sigma[(idx[r], idx[c])])
    }

    /// Conditional variance of `i` given the (full-rank) set `kept`.
    fn residual_variance(&self, i: usize, kept: &[usize]) -> f64 {
        let vii = self.sigma[(i, i)];
        if kept.is_empty() {
            return vii;
        }
        let chol = match self.sub(kept).cholesky() {
            Some(c) => c,
            None => return vii,
        };
        let cross = DVector::from_iterator(kept.len(), kept.iter().map(|&k| self.sigma[(k, i)]));
        let solved = chol.solve(&cross);
        vii - cross.dot(&solved)
    }

    /// Greedily extends `base` with the members of `candidates` that are not
    /// almost-surely linear functions of what has been kept so far. Returns
    /// only the newly kept candidates.
    fn independent_extension(&self, base: &[usize], candidates: &[usize]) -> Vec<usize> {
        let mut kept: Vec<usize> = base.to_vec();
        let mut added = Vec::new();
        for &i in candidates {
            if kept.contains(&i) {
                continue;
            }
            let vii = self.sigma[(i, i)];
            if vii <= 0.0 {
                continue;
            }
            if self.residual_variance(i, &kept) > DEPENDENCE_TOL * vii {
                kept.push(i);
                added.push(i);
            }
        }
        added
    }

    fn log_det(&self, idx: &[usize]) -> Result<f64> {
        if idx.is_empty() {
            return Ok(0.0);
        }
        let singular = || Error::SingularSubmatrix {
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
        };
        let chol = self.sub(idx).cholesky().ok_or_else(singular)?;
        let ld: f64 = chol.l().diagonal().iter().map(|d| 2.0 * d.ln()).sum();
        if ld < DET_FLOOR.ln() {
            return Err(singular());
        }
        Ok(ld)
    }
}

/// Builds a [`CovarianceSystem`] from independent sources and linear
/// combinations of already defined variables. Each variable is stored as a
/// row of loadings on unit-variance independent sources, so exact linear
/// relations survive into the covariance.
#[derive(Debug, Default, Clone)]
pub struct GaussianBuilder {
    labels: Vec<String>,
    rows: Vec<Vec<f64>>,
    sources: usize,
}

impl GaussianBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn row(&self, label: &str) -> &[f64] {
        let i = self
            .labels
            .iter()
            .position(|l| l == label)
            .unwrap_or_else(|| panic!("variable `{label}` used before definition"));
        &self.rows[i]
    }

    /// Independent zero-mean Gaussian with the given variance (may be 0).
    pub fn source(&mut self, label: &str, variance: f64) -> &mut Self {
        assert!(variance >= 0.0, "negative variance for `{label}`");
        for r in &mut self.rows {
            r.push(0.0);
        }
        let mut row = vec![0.0; self.sources + 1];
        row[self.sources] = variance.sqrt();
        self.sources += 1;
        self.labels.push(label.to_string());
        self.rows.push(row);
        self
    }

    /// `label = sum_k coef_k * term_k` over previously defined variables.
    pub fn combo(&mut self, label: &str, terms: &[(&str, f64)]) -> &mut Self {
        let mut row = vec![0.0; self.sources];
        for &(t, w) in terms {
            for (acc, v) in row.iter_mut().zip(self.row(t)) {
                *acc += w * v;
            }
        }
        self.labels.push(label.to_string());
        self.rows.push(row);
        self
    }

    /// Covariance restricted to `keep` (in that order), or to all variables
    /// when `keep` is empty.
    pub fn build(&self, keep: &[&str]) -> CovarianceSystem {
        let selected: Vec<usize> = if keep.is_empty() {
            (0..self.labels.len()).collect()
        } else {
            keep.iter()
                .map(|k| {
                    self.labels
                        .iter()
                        .position(|l| l == k)
                        .expect("unknown label")
                })
                .collect()
        };
        let f = DMatrix::from_fn(selected.len(), self.sources, |r, c| {
            self.rows[selected[r]][c]
        });
        let sigma = &f * f.transpose();
        let sigma = (&sigma + sigma.transpose()) * 0.5;
        let labels = selected.iter().map(|&i| self.labels[i].clone()).collect();
        CovarianceSystem::new(labels, sigma).expect("loadings always give a PSD covariance")
    }
}

/// Conditional mutual information `I(A; B | C)` in bits for the joint
/// Gaussian `cov`.
///
/// Labels of `A` or `B` that also appear in `C` are dropped. Members of `C`
/// that are linear functions of other members are eliminated first; members
/// of `A` (resp. `B`) that are linear functions of the remaining conditioning
/// set are then dropped too. The result is
/// `0.5 log2(|S_AC| |S_BC| / (|S_C| |S_ABC|))` on the reduced sets, clamped at
/// zero.
pub fn gaussian_cmi(cov: &CovarianceSystem, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64> {
    let ia = cov.resolve(a)?;
    let ib = cov.resolve(b)?;
    let ic = cov.resolve(c)?;
    if let Some(&shared) = ia.iter().find(|i| ib.contains(i) && !ic.contains(i)) {
        return Err(Error::OverlappingSets(cov.labels[shared].clone()));
    }

    let cb = cov.independent_extension(&[], &ic);
    let ra = cov.independent_extension(&cb, &ia);
    let rb = cov.independent_extension(&cb, &ib);
    if ra.is_empty() || rb.is_empty() {
        return Ok(0.0);
    }

    let join = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().chain(y).copied().collect() };
    let ac = join(&ra, &cb);
    let bc = join(&rb, &cb);
    let abc = join(&ra, &bc);

    // a member of B fully determined by A and C makes the information infinite
    let with_a = join(&cb, &ra);
    if cov.independent_extension(&with_a, &rb).len() < rb.len() {
        return Err(Error::SingularSubmatrix {
            labels: abc.iter().map(|&i| cov.labels[i].clone()).collect(),
        });
    }

    let nats =
        0.5 * (cov.log_det(&ac)? + cov.log_det(&bc)? - cov.log_det(&cb)? - cov.log_det(&abc)?);
    let bits = nats / std::f64::consts::LN_2;
    debug_assert!(bits >= -1e-9, "negative information {bits}");
    Ok(bits.max(0.0))
}
