//! Parameter searches: the no-state max-min over the cooperative split,
//! the GDPC inner maximization, frontier tracing and SNR sweeps.
//!
//! The 3-D search is a deterministic grid followed by shrinking local grids
//! around the incumbent. Grid points are evaluated in parallel, the argmax is
//! reduced sequentially in lexicographic `(rho, beta, alpha2)` order, so the
//! result does not depend on the thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    validate_channel, ChannelParams, Frontier, FrontierPoint, GdpcParams, OptimumParams, RatePoint,
    Scheme, ValidatedChannel, ValidatedGdpc,
};
use crate::rates::{self, c_of};

/// Values within this distance of the incumbent count as ties.
pub const TIE_TOL: f64 = 1e-12;
const BISECTION_WIDTH: f64 = 1e-15;

fn check_gamma(gamma: f64) -> Result<()> {
    if (0.0..=1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            field: "gamma",
            value: gamma,
            lo: 0.0,
            hi: 1.0,
            reason: None,
        })
    }
}

/// Maximizes `min(relay, destination)` of the no-state region over the
/// cooperative split. Returns the smallest maximizer and the value.
///
/// The relay term increases and the destination term decreases in the
/// split, so the optimum is their crossing when it lies inside `[0, 1]`
/// (found by bisection) and the better endpoint otherwise.
pub fn max_beta_nostate(c: &ValidatedChannel, gamma: f64) -> Result<(f64, f64)> {
    check_gamma(gamma)?;
    let gap = |b: f64| {
        let (t1, t2) = rates::nostate_terms(c, gamma, b);
        t1 - t2
    };
    let value = |b: f64| {
        let (t1, t2) = rates::nostate_terms(c, gamma, b);
        t1.min(t2)
    };
    if gap(0.0) >= 0.0 {
        return Ok((0.0, value(0.0)));
    }
    if gap(1.0) <= 0.0 {
        return Ok((1.0, value(1.0)));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // the smaller side of the bracket can only lose to the larger one
    let b = if value(hi) > value(lo) { hi } else { lo };
    Ok((b, value(b)))
}

/// Resolution of the GDPC parameter search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub steps_rho: usize,
    pub steps_beta: usize,
    pub steps_alpha2: usize,
    pub refine_iters: usize,
    pub refine_shrink: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            steps_rho: 33,
            steps_beta: 33,
            steps_alpha2: 33,
            refine_iters: 4,
            refine_shrink: 0.25,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, steps) in [
            ("steps_rho", self.steps_rho),
            ("steps_beta", self.steps_beta),
            ("steps_alpha2", self.steps_alpha2),
        ] {
            if steps < 2 {
                return Err(Error::InvalidGrid(format!(
                    "{name} must be at least 2, got {steps}"
                )));
            }
        }
        if !(self.refine_shrink > 0.0 && self.refine_shrink < 1.0) {
            return Err(Error::InvalidGrid(format!(
                "refine_shrink must lie in (0, 1), got {}",
                self.refine_shrink
            )));
        }
        Ok(())
    }
}

/// Best parameters of a GDPC search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptResult {
    pub best: GdpcParams,
    pub value: f64,
    pub evaluations: usize,
    /// Incumbent after the coarse grid and after each refinement round.
    pub trace: Option<Vec<(GdpcParams, f64)>>,
    /// Whether `(rho, beta, alpha2)` of the optimum sit on the search box.
    pub on_boundary: [bool; 3],
}

#[derive(Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    steps: usize,
}

impl Axis {
    fn new(lo: f64, hi: f64, steps: usize) -> Self {
        let steps = if hi > lo { steps } else { 1 };
        Self { lo, hi, steps }
    }

    fn point(&self, i: usize) -> f64 {
        if self.steps == 1 {
            self.lo
        } else if i + 1 == self.steps {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64
        }
    }

    /// Window of width `width` around `center`, shifted back inside `[lo, hi]`.
    fn window(&self, center: f64, width: f64) -> Self {
        if width >= self.hi - self.lo {
            return *self;
        }
        let mut lo = center - 0.5 * width;
        let mut hi = center + 0.5 * width;
        if lo < self.lo {
            hi += self.lo - lo;
            lo = self.lo;
        }
        if hi > self.hi {
            lo -= hi - self.hi;
            hi = self.hi;
        }
        Self::new(lo.max(self.lo), hi.min(self.hi), self.steps)
    }
}

fn lex_less(a: &GdpcParams, b: &GdpcParams) -> bool {
    (a.rho, a.beta, a.alpha2) < (b.rho, b.beta, b.alpha2)
}

struct Incumbent {
    params: GdpcParams,
    value: f64,
}

impl Incumbent {
    fn offer(&mut self, params: GdpcParams, value: f64) {
        let better = value > self.value + TIE_TOL;
        let tie_smaller =
            value >= self.value && value - self.value <= TIE_TOL && lex_less(&params, &self.params);
        if better || tie_smaller {
            self.params = params;
            self.value = value;
        }
    }
}

fn evaluate(c: &ValidatedChannel, params: GdpcParams) -> f64 {
    rates::gdpc_sum_rate(&ValidatedGdpc::new_unchecked(*c, params))
}

fn scan(c: &ValidatedChannel, gamma: f64, axes: [Axis; 3], inc: &mut Option<Incumbent>) -> usize {
    let [ar, ab, aa] = axes;
    let total = ar.steps * ab.steps * aa.steps;
    let values: Vec<(GdpcParams, f64)> = (0..total)
        .into_par_iter()
        .map(|k| {
            let ia = k % aa.steps;
            let ib = (k / aa.steps) % ab.steps;
            let ir = k / (aa.steps * ab.steps);
            let p = GdpcParams::new(gamma, ar.point(ir), ab.point(ib), aa.point(ia));
            (p, evaluate(c, p))
        })
        .collect();
    for (p, v) in values {
        match inc {
            Some(best) => best.offer(p, v),
            None => {
                *inc = Some(Incumbent {
                    params: p,
                    value: v,
                });
            }
        }
    }
    total
}

fn search(c: &ValidatedChannel, gamma: f64, rho_hi: f64, grid: &GridSpec) -> OptResult {
    let domain = [
        Axis::new(0.0, rho_hi, grid.steps_rho),
        Axis::new(0.0, 1.0, grid.steps_beta),
        Axis::new(0.0, 1.0, grid.steps_alpha2),
    ];
    let mut inc = None;
    let mut evaluations = scan(c, gamma, domain, &mut inc);
    let mut trace = Vec::with_capacity(grid.refine_iters + 1);
    {
        let best = inc.as_ref().expect("grid is non-empty");
        trace.push((best.params, best.value));
    }
    let mut widths = domain.map(|a| a.hi - a.lo);
    for _ in 0..grid.refine_iters {
        let center = inc.as_ref().expect("grid is non-empty").params;
        for w in &mut widths {
            *w *= grid.refine_shrink;
        }
        let axes = [
            domain[0].window(center.rho, widths[0]),
            domain[1].window(center.beta, widths[1]),
            domain[2].window(center.alpha2, widths[2]),
        ];
        evaluations += scan(c, gamma, axes, &mut inc);
        let best = inc.as_ref().expect("grid is non-empty");
        trace.push((best.params, best.value));
    }
    let best = inc.expect("grid is non-empty");
    // re-evaluated through the public validation path
    let value = rates::gdpc_rates(
        &crate::model::validate_gdpc(c, best.params)
            .expect("search stays inside the admissible box"),
    )
    .sum_rate();
    let p = best.params;
    OptResult {
        best: p,
        value,
        evaluations,
        trace: Some(trace),
        on_boundary: [
            p.rho == 0.0 || p.rho == rho_hi,
            p.beta == 0.0 || p.beta == 1.0,
            p.alpha2 == 0.0 || p.alpha2 == 1.0,
        ],
    }
}

/// Plain dirty paper coding: the same search with `rho` frozen at 0.
pub fn max_r02_dpc(c: &ValidatedChannel, gamma: f64, grid: &GridSpec) -> Result<OptResult> {
    check_gamma(gamma)?;
    grid.validate()?;
    Ok(search(c, gamma, 0.0, grid))
}

/// Maximizes `min(r1_sum, r2_sum)` over `(rho, beta, alpha2)` at fixed
/// `gamma`. The `rho = 0` slice is searched as well, so the result never
/// falls below [`max_r02_dpc`] on the same grid.
pub fn max_r02_gdpc(c: &ValidatedChannel, gamma: f64, grid: &GridSpec) -> Result<OptResult> {
    check_gamma(gamma)?;
    grid.validate()?;
    let rho_hi = c.rho_max(gamma);
    let full = search(c, gamma, rho_hi, grid);
    if rho_hi == 0.0 {
        return Ok(full);
    }
    let slice = search(c, gamma, 0.0, grid);
    let evaluations = full.evaluations + slice.evaluations;
    let mut best = if slice.value > full.value + TIE_TOL {
        slice
    } else {
        full
    };
    best.evaluations = evaluations;
    best.on_boundary[0] = best.best.rho == 0.0 || best.best.rho == rho_hi;
    Ok(best)
}

fn frontier_point(
    c: &ValidatedChannel,
    scheme: Scheme,
    gamma: f64,
    grid: &GridSpec,
) -> Result<FrontierPoint> {
    let r1 = c_of(gamma * c.p1 / c.n1);
    let (params, r02) = match scheme {
        Scheme::Gdpc => {
            let r = max_r02_gdpc(c, gamma, grid)?;
            (OptimumParams::Gdpc(r.best), r.value)
        }
        Scheme::Dpc => {
            let r = max_r02_dpc(c, gamma, grid)?;
            (OptimumParams::Gdpc(r.best), r.value)
        }
        Scheme::InformedBoth | Scheme::NostateOuter => {
            let (beta, v) = max_beta_nostate(c, gamma)?;
            (OptimumParams::NoState { beta }, v)
        }
    };
    Ok(FrontierPoint {
        gamma,
        params,
        rate: RatePoint::clamped(r1, r02),
    })
}

/// Keeps the Pareto-optimal points; among exact duplicates the first in
/// `gamma` order survives.
fn pareto(points: Vec<FrontierPoint>) -> Vec<FrontierPoint> {
    let dominated = |i: usize| {
        let p = points[i].rate;
        points.iter().enumerate().any(|(j, q)| {
            let q = q.rate;
            j != i && q.r1 >= p.r1 && q.r02 >= p.r02 && (q.r1 > p.r1 || q.r02 > p.r02 || j < i)
        })
    };
    let keep: Vec<bool> = (0..points.len()).map(|i| !dominated(i)).collect();
    points
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

/// Traces the `(R1, R0+R2)` boundary of `scheme` over a sorted `gamma` grid.
pub fn frontier(
    c: &ValidatedChannel,
    scheme: Scheme,
    gamma_grid: &[f64],
    grid: &GridSpec,
) -> Result<Frontier> {
    if gamma_grid.is_empty() {
        return Err(Error::InvalidGrid("gamma grid is empty".into()));
    }
    for &g in gamma_grid {
        check_gamma(g)?;
    }
    if gamma_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidGrid("gamma grid must be sorted".into()));
    }
    grid.validate()?;
    let points = gamma_grid
        .iter()
        .map(|&g| frontier_point(c, scheme, g, grid))
        .collect::<Result<Vec<_>>>()?;
    Ok(Frontier {
        scheme,
        points: pareto(points),
    })
}

/// Relay-channel rate (`gamma = 0`) of `scheme` at one SNR point.
pub fn relay_rate(c: &ValidatedChannel, scheme: Scheme, grid: &GridSpec) -> Result<f64> {
    Ok(match scheme {
        Scheme::Gdpc => max_r02_gdpc(c, 0.0, grid)?.value,
        Scheme::Dpc => max_r02_dpc(c, 0.0, grid)?.value,
        Scheme::InformedBoth | Scheme::NostateOuter => max_beta_nostate(c, 0.0)?.1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub snr_db: f64,
    pub n1: f64,
    /// `None` when the SNR point violates degradedness.
    pub rate: Option<f64>,
}

/// Relay-channel rates over `snr_db = 10 log10(p1 / n1)`; `base.n1` is
/// ignored. Points whose noise power reaches `n2` are skipped.
pub fn sweep_snr(
    base: ChannelParams,
    snr_db: &[f64],
    scheme: Scheme,
    grid: &GridSpec,
) -> Result<Vec<SweepRow>> {
    grid.validate()?;
    snr_db
        .par_iter()
        .map(|&snr| {
            let n1 = base.p1 / 10f64.powf(snr / 10.0);
            let c = match validate_channel(base.with_n1(n1)) {
                Ok(c) => c,
                Err(Error::NonDegraded { .. }) => {
                    return Ok(SweepRow {
                        snr_db: snr,
                        n1,
                        rate: None,
                    })
                }
                Err(e) => return Err(e),
            };
            Ok(SweepRow {
                snr_db: snr,
                n1,
                rate: Some(relay_rate(&c, scheme, grid)?),
            })
        })
        .collect()
}
