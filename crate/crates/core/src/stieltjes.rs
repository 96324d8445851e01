//! Henstock-Stieltjes integrals of piecewise functions, exact.
//!
//! For a regulated integrand u and a BV integrator v (both piecewise
//! polynomial with constant tails) the gauge limit of tagged Riemann-
//! Stieltjes sums decomposes as
//!
//! ```text
//!   int u dv = sum over smooth open pieces of int u(x) v'(x) dx
//!            + sum over breakpoints c of u(c) [v(c+) - v(c-)]
//! ```
//!
//! where each discontinuity is forced to be a tag: the point term pairs the
//! integrand's value AT c with the integrator's two-sided jump.  No terms
//! arise at +-inf because stored values equal the limits there.  A floating-
//! point gauge-sum oracle over explicit tagged partitions validates the
//! decomposition.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::{rat_to_f64, Rat};
use crate::piecewise::{PiecewiseFn, TailClass};

fn require_constant_tails(f: &PiecewiseFn) -> Result<()> {
    if f.tail_class() == TailClass::PolynomialTails {
        return Err(Error::UnboundedAtInfinity);
    }
    Ok(())
}

fn merged_breakpoints(a: &PiecewiseFn, b: &PiecewiseFn) -> Vec<Rat> {
    let mut grid: Vec<Rat> = a.breakpoints().to_vec();
    grid.extend_from_slice(b.breakpoints());
    grid.sort();
    grid.dedup();
    grid
}

/// Shared decomposition: `int u dv` with `u` the integrand (tag values) and
/// `v` the integrator (jumps and smooth differential).
fn stieltjes(u: &PiecewiseFn, v: &PiecewiseFn) -> Result<Rat> {
    require_constant_tails(u)?;
    require_constant_tails(v)?;
    let grid = merged_breakpoints(u, v);
    let mut total = Rat::zero();
    // smooth contributions on the interior finite regions (the tails have
    // constant integrator pieces, so they contribute nothing)
    for w in grid.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let pu = u.piece_covering(Some(lo));
        let pv = v.piece_covering(Some(lo));
        let dv = pv.derivative();
        if !dv.is_zero() {
            total += pu.mul(&dv).definite_integral(lo, hi);
        }
    }
    // tag terms at every breakpoint of either function
    for c in &grid {
        let jump = v.jump(c);
        if !jump.is_zero() {
            total += u.eval_finite(c) * jump;
        }
    }
    Ok(total)
}

/// `int F(x) dg(x)` over the whole extended line.
pub fn hs_integral(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<Rat> {
    stieltjes(f, g)
}

/// `int g(x) dF(x)`: the symmetric orientation, with the tag contribution
/// `g(c) [F(c+) - F(c-)]` at each breakpoint.
pub fn hs_integral_g_df(g: &PiecewiseFn, f: &PiecewiseFn) -> Result<Rat> {
    stieltjes(g, f)
}

/// `int_[a,b] F dg` over a closed finite interval: smooth and interior jump
/// terms as usual, but at the endpoints the integrator can only move from
/// its stored value into the interval, contributing
/// `F(a) [g(a+) - g(a)]` and `F(b) [g(b) - g(b-)]`.
pub fn hs_integral_closed(f: &PiecewiseFn, g: &PiecewiseFn, a: &Rat, b: &Rat) -> Result<Rat> {
    if a > b {
        return Ok(-hs_integral_closed(f, g, b, a)?);
    }
    let mut grid: Vec<Rat> = vec![a.clone()];
    for c in merged_breakpoints(f, g) {
        if &c > a && &c < b {
            grid.push(c);
        }
    }
    grid.push(b.clone());
    let mut total = Rat::zero();
    for w in grid.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let pu = f.piece_covering(Some(lo));
        let pv = g.piece_covering(Some(lo));
        let dv = pv.derivative();
        if !dv.is_zero() {
            total += pu.mul(&dv).definite_integral(lo, hi);
        }
    }
    for c in &grid[1..grid.len() - 1] {
        total += f.eval_finite(c) * g.jump(c);
    }
    total += f.eval_finite(a) * (g.limit_right(a) - g.eval_finite(a));
    total += f.eval_finite(b) * (g.eval_finite(b) - g.limit_left(b));
    Ok(total)
}

/// A tagged partition of the extended real line: strictly increasing
/// division points from -inf to +inf and one tag per subinterval, each tag
/// inside or at an endpoint of its cell.
#[derive(Debug, Clone)]
pub struct TaggedPartition {
    pub points: Vec<f64>,
    pub tags: Vec<f64>,
}

impl TaggedPartition {
    /// Gauge-style refinement at the given level: every entry of `forced`
    /// becomes a division point and the tag of both adjacent cells, shielded
    /// by cells of width `gap * 4^-level` (the gauge is far tighter at the
    /// discontinuities than elsewhere); the remaining span of each gap is
    /// cut into `2^level` uniform cells tagged at their midpoints.  The end
    /// subintervals are genuine cells of the two-point compactification,
    /// tagged -inf and +inf.
    pub fn gauge_refinement(forced: &[f64], level: u32) -> Self {
        assert!(level >= 1);
        let mut points = vec![f64::NEG_INFINITY];
        let mut tags = Vec::new();
        if forced.is_empty() {
            points.push(f64::INFINITY);
            tags.push(f64::NEG_INFINITY);
            return TaggedPartition { points, tags };
        }
        let shrink = 0.25f64.powi(level as i32);
        let cells = 1usize << level.min(26);
        for (i, &c) in forced.iter().enumerate() {
            if i == 0 {
                // left tail: [-inf, c - eps] tagged -inf, then the shield
                let eps = shrink.max(1e-300);
                points.push(c - eps);
                tags.push(f64::NEG_INFINITY);
                points.push(c);
                tags.push(c);
            }
            if let Some(&next) = forced.get(i + 1) {
                let gap = next - c;
                let eps = gap * shrink;
                points.push(c + eps);
                tags.push(c);
                let (lo, hi) = (c + eps, next - eps);
                let dx = (hi - lo) / cells as f64;
                let mut prev_x = lo;
                for j in 1..cells {
                    let x = lo + dx * j as f64;
                    points.push(x);
                    tags.push(0.5 * (prev_x + x));
                    prev_x = x;
                }
                points.push(hi);
                tags.push(0.5 * (prev_x + hi));
                points.push(next);
                tags.push(next);
            } else {
                // right tail mirror
                let eps = shrink.max(1e-300);
                points.push(c + eps);
                tags.push(c);
                points.push(f64::INFINITY);
                tags.push(f64::INFINITY);
            }
        }
        TaggedPartition { points, tags }
    }

    /// Riemann-Stieltjes sum of the partition for `int F dg`, summed in
    /// index order for reproducibility.
    pub fn stieltjes_sum(&self, f: &PiecewiseFn, g: &PiecewiseFn) -> f64 {
        let mut total = 0.0;
        for (i, tag) in self.tags.iter().enumerate() {
            let dv = g.eval_f64(self.points[i + 1]) - g.eval_f64(self.points[i]);
            if dv != 0.0 {
                total += f.eval_f64(*tag) * dv;
            }
        }
        total
    }
}

/// Floating-point Riemann-Stieltjes approximation of `int F dg` over a
/// tagged partition that forces every breakpoint of F and g to be a tag;
/// converges to `hs_integral(F, g)` as the level grows.
pub fn gauge_oracle(f: &PiecewiseFn, g: &PiecewiseFn, level: u32) -> f64 {
    let mut forced: Vec<f64> = merged_breakpoints(f, g)
        .iter()
        .map(rat_to_f64)
        .collect();
    forced.dedup();
    TaggedPartition::gauge_refinement(&forced, level).stieltjes_sum(f, g)
}
