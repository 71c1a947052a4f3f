//! Edge-count calculus for connected simple plane graphs with girth `g` and
//! exterior face degree `h`.
//!
//! All quantities are exact integers. Rational bounds are floored with
//! Euclidean division.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: u64, divisor: u64 },
}

fn invalid(msg: impl Into<String>) -> FormulaError {
    FormulaError::InvalidParams(msg.into())
}

/// `n`, `h`, `g` together with the derived `t = (2n - h - g) / (g - 2)`,
/// edge count `m` and number of inner faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AngulationParams {
    pub n: u64,
    pub h: u64,
    pub g: u64,
    pub t: u64,
    pub m: u64,
    pub inner_faces: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InfeasibleReason {
    /// `g - 2` does not divide `2n - h - g`.
    NotDivisible,
    /// `h < g`.
    HTooSmall,
    /// `h > n`: a simple exterior cycle cannot be longer than `n`.
    HExceedsN,
    /// `2n < h + g`.
    BudgetNegative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<AngulationParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<InfeasibleReason>,
}

impl FeasibilityReport {
    fn infeasible(reason: InfeasibleReason) -> Self {
        FeasibilityReport {
            feasible: false,
            params: None,
            reason: Some(reason),
        }
    }
}

fn check_girth(g: u64) -> Result<(), FormulaError> {
    if g < 3 {
        return Err(invalid(format!("girth must be at least 3, got {g}")));
    }
    Ok(())
}

fn floor_div(num: i128, den: i128) -> i128 {
    num.div_euclid(den)
}

fn to_u64(v: i128, what: &str) -> Result<u64, FormulaError> {
    u64::try_from(v).map_err(|_| invalid(format!("{what} is negative")))
}

/// Largest edge count of a connected simple plane graph on `n` vertices
/// with girth `g` and exterior face degree `h`:
/// `floor(g(n-2)/(g-2) - (h-g)/(g-2))`.
///
/// ```
/// use angulation::formulas::edge_bound;
/// assert_eq!(edge_bound(6, 3, 3).unwrap(), 12);
/// assert_eq!(edge_bound(6, 3, 6).unwrap(), 9);
/// ```
pub fn edge_bound(n: u64, g: u64, h: u64) -> Result<u64, FormulaError> {
    check_girth(g)?;
    if h < g {
        return Err(invalid(format!("exterior degree {h} is below girth {g}")));
    }
    if n < 3 {
        return Err(invalid(format!("need at least 3 vertices, got {n}")));
    }
    let (n, g, h) = (n as i128, g as i128, h as i128);
    let num = g * (n - 2) - (h - g);
    to_u64(floor_div(num, g - 2), "edge bound").map_err(|_| {
        invalid(format!(
            "exterior degree {h} exceeds any walk on {n} vertices"
        ))
    })
}

/// Whether a convex hull g-angulation with these parameters exists, and if
/// so its counts.
pub fn feasibility(n: u64, g: u64, h: u64) -> Result<FeasibilityReport, FormulaError> {
    use InfeasibleReason::*;
    check_girth(g)?;
    if h < g {
        return Ok(FeasibilityReport::infeasible(HTooSmall));
    }
    if h > n {
        return Ok(FeasibilityReport::infeasible(HExceedsN));
    }
    if 2 * n < h + g {
        return Ok(FeasibilityReport::infeasible(BudgetNegative));
    }
    let budget = 2 * n - h - g;
    if !budget.is_multiple_of(g - 2) {
        return Ok(FeasibilityReport::infeasible(NotDivisible));
    }
    let t = budget / (g - 2);
    let params = AngulationParams {
        n,
        h,
        g,
        t,
        m: n + t,
        inner_faces: t + 1,
    };
    Ok(FeasibilityReport {
        feasible: true,
        params: Some(params),
        reason: None,
    })
}

/// Bound for graphs with every vertex on the exterior face (`h = n`):
/// `floor(((g-1)n - g)/(g-2))`.
pub fn convex_bound(n: u64, g: u64) -> Result<u64, FormulaError> {
    check_girth(g)?;
    if n < g {
        return Err(invalid(format!("need n >= g, got n = {n}, g = {g}")));
    }
    let (n, g) = (n as i128, g as i128);
    to_u64(floor_div((g - 1) * n - g, g - 2), "convex bound")
}

/// Counts of a convex g-angulation (`h = n`), defined when
/// `n = g + t(g-2)`.
pub fn convex_counts(n: u64, g: u64) -> Result<AngulationParams, FormulaError> {
    check_girth(g)?;
    if n < g {
        return Err(invalid(format!("need n >= g, got n = {n}, g = {g}")));
    }
    if !(n - g).is_multiple_of(g - 2) {
        return Err(FormulaError::NotDivisible {
            dividend: n - g,
            divisor: g - 2,
        });
    }
    let t = (n - g) / (g - 2);
    Ok(AngulationParams {
        n,
        h: n,
        g,
        t,
        m: n + t,
        inner_faces: t + 1,
    })
}

/// Edges and inner triangles of a triangulation of `n` points with `h` on
/// the hull: `(3n - 3 - h, 2n - 2 - h)`.
pub fn triangulation_counts(n: u64, h: u64) -> Result<(u64, u64), FormulaError> {
    if h < 3 || n < h {
        return Err(invalid(format!("need n >= h >= 3, got n = {n}, h = {h}")));
    }
    Ok((3 * n - 3 - h, 2 * n - 2 - h))
}

/// Bound when the exterior face is itself a `g`-face:
/// `floor(g(n-2)/(g-2))`.
pub fn closed_bound(n: u64, g: u64) -> Result<u64, FormulaError> {
    check_girth(g)?;
    if n < g {
        return Err(invalid(format!("need n >= g, got n = {n}, g = {g}")));
    }
    let (n, g) = (n as i128, g as i128);
    to_u64(floor_div(g * (n - 2), g - 2), "closed bound")
}

/// Counts of a g-angulation (every face, exterior included, a `g`-cycle).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GAngulationCounts {
    /// `(n - g) / (g - 2)`; the general `t` is twice this.
    pub t_prime: u64,
    pub params: AngulationParams,
}

/// Counts of a g-angulation, defined when `n = g + t'(g-2)`.
pub fn g_angulation_counts(n: u64, g: u64) -> Result<GAngulationCounts, FormulaError> {
    check_girth(g)?;
    if n < g {
        return Err(invalid(format!("need n >= g, got n = {n}, g = {g}")));
    }
    if !(n - g).is_multiple_of(g - 2) {
        return Err(FormulaError::NotDivisible {
            dividend: n - g,
            divisor: g - 2,
        });
    }
    let t_prime = (n - g) / (g - 2);
    let t = 2 * t_prime;
    Ok(GAngulationCounts {
        t_prime,
        params: AngulationParams {
            n,
            h: g,
            g,
            t,
            m: n + t,
            inner_faces: t + 1,
        },
    })
}
