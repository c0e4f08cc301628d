//! The interval map `f(x) = sqrt(2x)/2` on `[0, 1/2)`, `1/2 + sqrt(2x - 1)/2` on `[1/2, 1]`.
//!
//! Pseudo-orbits climb from the fixed point 0 to the fixed point 1, while any
//! small set near 0 stays inside `[0, 1/2)` forever. Claims about real
//! intervals are checked on explicit grids.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Step headroom: `x_{i+1} = f(x_i) + 0.9 delta`.
pub const HEADROOM: f64 = 0.9;

pub fn f_eval(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain(x));
    }
    Ok(if x < 0.5 { 0.5 * (2.0 * x).sqrt() } else { 0.5 + 0.5 * (2.0 * x - 1.0).sqrt() })
}

fn f(x: f64) -> f64 {
    f_eval(x).expect("orbit stays in [0, 1]")
}

/// `x_0 = 0`, `x_{i+1} = min(1, f(x_i) + 0.9 delta)`, up to the first `x_i = 1`.
pub fn ascending_pseudo_orbit(delta: f64) -> Result<Vec<f64>> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Precondition(format!("delta must lie in (0, 1), got {delta}")));
    }
    let mut xs = vec![0.0];
    let mut x = 0.0;
    while x < 1.0 {
        x = (f(x) + HEADROOM * delta).min(1.0);
        xs.push(x);
    }
    Ok(xs)
}

/// Whether `|f(x_i) - x_{i+1}| < delta` for every step.
pub fn is_interval_pseudo_orbit(xs: &[f64], delta: f64) -> bool {
    xs.iter().all(|x| (0.0..=1.0).contains(x)) && xs.windows(2).all(|w| (f(w[0]) - w[1]).abs() < delta)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureCertificate {
    pub epsilon: f64,
    pub grid_step: f64,
    pub grid_points: usize,
    /// Largest `f(x)` over grid points `x` in `[0, 2 epsilon)`.
    pub max_image: f64,
    /// `1/2 - max_image`.
    pub margin: f64,
    /// `f` is nondecreasing along the grid on `[0, 1]`.
    pub monotone: bool,
    /// `f(x) >= x` along the grid on `[0, 1]`.
    pub ascending: bool,
    pub conclusion: String,
}

/// Grid check that `f([0, 2 epsilon)) ⊆ [0, 1/2)`: a set of diameter below
/// `epsilon` that starts within `epsilon` of 0 then never gets within
/// `epsilon` of 1, although pseudo-orbits from 0 reach 1.
pub fn neighborhood_failure_certificate(epsilon: f64, grid_step: f64) -> Result<FailureCertificate> {
    if !(epsilon > 0.0 && epsilon <= 0.25) {
        return Err(Error::Precondition(format!("the argument needs 0 < epsilon <= 1/4, got {epsilon}")));
    }
    if grid_step.is_nan() || grid_step <= 0.0 || grid_step >= 2.0 * epsilon {
        return Err(Error::Invalid(format!("grid step {grid_step} is too coarse for [0, {})", 2.0 * epsilon)));
    }
    let steps = (1.0 / grid_step).floor() as usize;
    let grid: Vec<f64> = (0..=steps).map(|j| j as f64 * grid_step).chain([1.0]).collect();
    let images: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let monotone = images.windows(2).all(|w| w[0] <= w[1]);
    let ascending = grid.iter().zip(&images).all(|(x, y)| y >= x);
    let (mut grid_points, mut max_image) = (0, 0.0f64);
    for (x, y) in grid.iter().zip(&images) {
        if *x < 2.0 * epsilon {
            grid_points += 1;
            max_image = max_image.max(*y);
        }
    }
    let margin = 0.5 - max_image;
    if margin <= 0.0 {
        return Err(Error::Invalid(format!("no positive margin on this grid (max image {max_image})")));
    }
    let conclusion = format!(
        "every set of diameter < {epsilon} meeting [0, {epsilon}) lies in [0, {}) and its forward images stay in \
         [0, 1/2), at distance > 1/2 > {epsilon} from 1",
        2.0 * epsilon
    );
    Ok(FailureCertificate { epsilon, grid_step, grid_points, max_image, margin, monotone, ascending, conclusion })
}

/// Grid points `z` (at most `max_members` of them) whose forward orbits
/// together follow `po` within `epsilon` at every time, or `None`.
pub fn numeric_shadow_search(
    po: &[f64],
    epsilon: f64,
    grid_step: f64,
    max_members: usize,
    budget: u128,
) -> Result<Option<Vec<f64>>> {
    if po.is_empty() {
        return Err(Error::EmptyPseudoOrbit);
    }
    if !(1..=2).contains(&max_members) {
        return Err(Error::Precondition(format!("set size must be 1 or 2, got {max_members}")));
    }
    if grid_step.is_nan() || grid_step <= 0.0 {
        return Err(Error::Invalid(format!("grid step must be positive, got {grid_step}")));
    }
    let steps = (1.0 / grid_step).round() as usize;
    let work = (steps as u128 + 1) * po.len() as u128;
    if work > budget {
        return Err(Error::BudgetExceeded { needed: work, budget });
    }
    let blocks = po.len().div_ceil(64);
    let mut full = vec![u64::MAX; blocks];
    if !po.len().is_multiple_of(64) {
        full[blocks - 1] = (1u64 << (po.len() % 64)) - 1;
    }
    let mut classes: Vec<(Vec<u64>, f64)> = Vec::new();
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    for j in 0..=steps {
        let z0 = (j as f64 * grid_step).min(1.0);
        let mut mask = vec![0u64; blocks];
        let mut z = z0;
        for (i, x) in po.iter().enumerate() {
            if (z - x).abs() < epsilon {
                mask[i / 64] |= 1 << (i % 64);
            }
            z = f(z);
        }
        if mask == full {
            return Ok(Some(vec![z0]));
        }
        if mask.iter().any(|&b| b != 0) && !seen.contains_key(&mask) {
            seen.insert(mask.clone(), classes.len());
            classes.push((mask, z0));
        }
    }
    if max_members == 1 {
        return Ok(None);
    }
    let pairs = (classes.len() as u128) * (classes.len() as u128) / 2;
    if pairs > budget {
        return Err(Error::BudgetExceeded { needed: pairs, budget });
    }
    for (a, (ma, za)) in classes.iter().enumerate() {
        for (mb, zb) in &classes[a + 1..] {
            if ma.iter().zip(mb).zip(&full).all(|((x, y), f)| x | y == *f) {
                return Ok(Some(vec![*za, *zb]));
            }
        }
    }
    Ok(None)
}
