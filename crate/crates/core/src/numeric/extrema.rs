//! Certified polynomial extrema over closed intervals: exact at endpoints
//! and rational critical points, interval-arithmetic enclosures (refined to
//! tolerance) across irrational ones.

use num_traits::{Signed, Zero};

use super::poly::Poly;
use super::roots::{isolate_roots, IsolatingInterval};
use super::{rat_i, Enclosure, ExtReal, Rat};
use crate::error::{Error, Result};

/// Closed rational interval used as an interval-arithmetic value range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn point(q: Rat) -> Self {
        RatInterval { lo: q.clone(), hi: q }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        RatInterval { lo, hi }
    }

    pub fn abs(&self) -> RatInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            RatInterval::new(-self.hi.clone(), -self.lo.clone())
        } else {
            RatInterval::new(Rat::zero(), (-self.lo.clone()).max(self.hi.clone()))
        }
    }

    pub fn as_enclosure(&self) -> Enclosure {
        Enclosure::new(self.lo.clone(), self.hi.clone())
    }
}

/// Interval Horner evaluation: encloses { p(x) | x in iv }.
pub fn interval_eval(p: &Poly, iv: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(iv).add(&RatInterval::point(c.clone()));
    }
    acc
}

/// Value candidates for the extrema of p on [a, b]: the endpoints and every
/// critical point, exact where rational, enclosed (to width <= tol) where not.
fn critical_values(p: &Poly, a: &Rat, b: &Rat, tol: &Rat) -> Result<Vec<Enclosure>> {
    let mut cands = vec![
        Enclosure::point(p.eval(a)),
        Enclosure::point(p.eval(b)),
    ];
    let deriv = p.derivative();
    if deriv.is_constant() {
        return Ok(cands);
    }
    for mut root in isolate_roots(&deriv, a, b)? {
        if root.is_exact() {
            cands.push(Enclosure::point(p.eval(&root.lo)));
            continue;
        }
        cands.push(enclose_value_at_root(p, &deriv, &mut root, tol));
    }
    Ok(cands)
}

/// Enclosure of p at an isolated (possibly irrational) root of q, refined
/// until the value enclosure is narrower than tol.
fn enclose_value_at_root(
    p: &Poly,
    q: &Poly,
    root: &mut IsolatingInterval,
    tol: &Rat,
) -> Enclosure {
    let mut width = root.width();
    loop {
        root.refine(q, &width);
        if root.is_exact() {
            return Enclosure::point(p.eval(&root.lo));
        }
        let iv = interval_eval(p, &RatInterval::new(root.lo.clone(), root.hi.clone()));
        let enc = iv.as_enclosure();
        if enc.width() <= *tol {
            return enc;
        }
        width = &width / rat_i(4);
    }
}

/// Certified enclosure of (min, max) of p over the closed finite interval
/// [a, b].  Exact whenever every critical point of p in (a, b) is rational.
pub fn poly_extrema_on(p: &Poly, a: &Rat, b: &Rat, tol: &Rat) -> Result<(Enclosure, Enclosure)> {
    debug_assert!(a <= b);
    let cands = critical_values(p, a, b, tol)?;
    let mut min = cands[0].clone();
    let mut max = cands[0].clone();
    for c in &cands[1..] {
        min = min.min(c);
        max = max.max(c);
    }
    Ok((min, max))
}

/// Certified enclosure of sup |p| over [a, b] (finite or infinite ends; an
/// infinite end requires a constant polynomial).
pub fn poly_sup_abs(p: &Poly, a: &ExtReal, b: &ExtReal, tol: &Rat) -> Result<Enclosure> {
    if !(a.is_finite() && b.is_finite()) {
        return match p.as_constant() {
            Some(c) => Ok(Enclosure::point(c.abs())),
            None => Err(Error::UnboundedPiece),
        };
    }
    let (a, b) = (a.finite().unwrap(), b.finite().unwrap());
    let (min, max) = poly_extrema_on(p, a, b, tol)?;
    Ok(min.abs().max(&max.abs()))
}

/// Certified enclosure of the total variation of p over [a, b], i.e.
/// int_a^b |p'|.  Splits at the critical points of p; each monotone segment
/// contributes |delta p| exactly, with interval arithmetic across segment
/// ends that are only enclosed.
pub fn poly_variation_on(p: &Poly, a: &Rat, b: &Rat, tol: &Rat) -> Result<Enclosure> {
    debug_assert!(a <= b);
    if p.is_constant() || a == b {
        return Ok(Enclosure::point(Rat::zero()));
    }
    let deriv = p.derivative();
    if deriv.is_constant() {
        return Ok(Enclosure::point((p.eval(b) - p.eval(a)).abs()));
    }
    let mut roots = isolate_roots(&deriv, a, b)?;
    // segment end values as intervals, exact at rational points
    let mut ends: Vec<RatInterval> = vec![RatInterval::point(p.eval(a))];
    let seg_tol = if roots.is_empty() {
        tol.clone()
    } else {
        tol / rat_i(2 * roots.len() as i64)
    };
    for root in &mut roots {
        if root.is_exact() {
            ends.push(RatInterval::point(p.eval(&root.lo)));
        } else {
            let enc = enclose_value_at_root(p, &deriv, root, &seg_tol);
            ends.push(RatInterval::new(enc.lo, enc.hi));
        }
    }
    ends.push(RatInterval::point(p.eval(b)));
    let mut total = RatInterval::point(Rat::zero());
    for w in ends.windows(2) {
        total = total.add(&w[1].sub(&w[0]).abs());
    }
    Ok(total.as_enclosure())
}
