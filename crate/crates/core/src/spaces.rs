//! Validated membership in the primitive and multiplier spaces, and the
//! iterated-integration operator `I^n` with its normalised inverse.
//!
//! * `RegulatedPrimitive` - left-continuous (or continuous) regulated
//!   function vanishing at `-inf`: the unique primitive of a distribution.
//! * `BVFunction` - function of bounded variation, optionally carrying a
//!   normalisation `lambda` (every value equals
//!   `(1-lambda) g(x-) + lambda g(x+)`).
//! * `Multiplier` - the pair `(n, g)` with the n-fold iterated integral
//!   `h = I^n[g]` materialised once and reused by every integral.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::poly::Poly;
use crate::numeric::{rat, rat_i, rat_to_string, Enclosure, Rat};
use crate::piecewise::{PiecewiseFn, TailClass};

fn default_tol() -> Rat {
    rat(1, 1_000_000_000_000)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Continuity {
    /// Left-continuous with right limits: the regulated class.
    LeftContinuous,
    /// Continuous on the extended line: the continuous subclass.
    Continuous,
}

/// A validated primitive: regulated, left continuous, vanishing at -inf,
/// equal to its limits at +-inf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegulatedPrimitive {
    f: PiecewiseFn,
    continuity: Continuity,
}

impl RegulatedPrimitive {
    /// Validate membership, returning the strongest class that holds.
    pub fn validate(f: PiecewiseFn) -> Result<Self> {
        if f.tail_class() == TailClass::PolynomialTails {
            return Err(Error::UnboundedAtInfinity);
        }
        if !f.value_neg_inf().is_zero() {
            return Err(Error::NotVanishingAtNegInf);
        }
        if !f.is_left_continuous() {
            let at = f
                .breakpoints()
                .iter()
                .find(|b| f.eval_finite(b) != f.limit_left(b))
                .map(rat_to_string)
                .unwrap_or_default();
            return Err(Error::NotLeftContinuous { at });
        }
        let continuity = if f.is_continuous() {
            Continuity::Continuous
        } else {
            Continuity::LeftContinuous
        };
        Ok(RegulatedPrimitive { f, continuity })
    }

    pub fn as_fn(&self) -> &PiecewiseFn {
        &self.f
    }

    pub fn into_fn(self) -> PiecewiseFn {
        self.f
    }

    pub fn continuity(&self) -> Continuity {
        self.continuity
    }

    pub fn is_continuous(&self) -> bool {
        self.continuity == Continuity::Continuous
    }
}

/// A validated function of bounded variation with a cached variation
/// enclosure.
#[derive(Debug, Clone)]
pub struct BVFunction {
    f: PiecewiseFn,
    variation: Enclosure,
    normalization: Option<Rat>,
}

impl BVFunction {
    /// Wrap a piecewise function as BV; with `normalization = Some(lambda)`
    /// the point values must already satisfy the lambda rule.
    pub fn validate(f: PiecewiseFn, normalization: Option<Rat>) -> Result<Self> {
        if f.tail_class() == TailClass::PolynomialTails {
            return Err(Error::UnboundedAtInfinity);
        }
        if let Some(lambda) = &normalization {
            let normalized = f.normalize(lambda);
            if normalized != f {
                return Err(Error::Parse(format!(
                    "function is not lambda = {} normalized",
                    rat_to_string(lambda)
                )));
            }
        }
        let variation = f.variation(&default_tol())?;
        Ok(BVFunction { f, variation, normalization })
    }

    /// Normalise first, then wrap; cannot fail the normalisation check.
    pub fn normalized(f: PiecewiseFn, lambda: Rat) -> Result<Self> {
        let g = f.normalize(&lambda);
        Self::validate(g, Some(lambda))
    }

    pub fn plain(f: PiecewiseFn) -> Result<Self> {
        Self::validate(f, None)
    }

    pub fn as_fn(&self) -> &PiecewiseFn {
        &self.f
    }

    pub fn normalization(&self) -> Option<&Rat> {
        self.normalization.as_ref()
    }

    pub fn cached_variation(&self) -> &Enclosure {
        &self.variation
    }
}

/// Integration anchor for one integration pass.
pub(crate) enum Anchor {
    /// Antiderivative vanishing at 0 (the `I^n` convention).
    Zero,
    /// Antiderivative vanishing at -inf; requires a zero left tail.
    NegInf,
}

/// One exact integration pass over a piecewise function (point values are
/// integration-invisible); the result is continuous with point values equal
/// to limits, tails re-classified from the actual tail degrees.
pub(crate) fn integrate_once(f: &PiecewiseFn, anchor: Anchor) -> PiecewiseFn {
    let breaks = f.breakpoints().to_vec();
    let antis: Vec<Poly> = f.pieces().iter().map(Poly::antiderivative).collect();
    let k = breaks.len();
    let mut consts = vec![Rat::zero(); k + 1];
    for i in 0..k {
        let left_value = antis[i].eval(&breaks[i]) + &consts[i];
        consts[i + 1] = left_value - antis[i + 1].eval(&breaks[i]);
    }
    let shift = match anchor {
        Anchor::NegInf => {
            debug_assert!(
                f.pieces()[0].is_zero(),
                "integration from -inf requires a vanishing left tail"
            );
            Rat::zero()
        }
        Anchor::Zero => {
            let idx = breaks.partition_point(|b| b <= &Rat::zero());
            antis[idx].eval(&Rat::zero()) + &consts[idx]
        }
    };
    let pieces: Vec<Poly> = antis
        .iter()
        .zip(&consts)
        .map(|(p, c)| p.add(&Poly::constant(c - &shift)))
        .collect();
    let point_values: Vec<Rat> = breaks
        .iter()
        .enumerate()
        .map(|(i, b)| pieces[i].eval(b))
        .collect();
    let tail_class = if pieces.first().unwrap().is_constant()
        && pieces.last().unwrap().is_constant()
    {
        TailClass::ConstantTails
    } else {
        TailClass::PolynomialTails
    };
    PiecewiseFn::build(breaks, pieces, point_values, tail_class)
}

/// The n-fold iterated integral from 0 of a BV function, exact; the result
/// is C^(n-1) with piece degrees raised by n.
pub fn iterate_integral(g: &BVFunction, n: u32) -> PiecewiseFn {
    let mut h = g.as_fn().clone();
    for _ in 0..n {
        h = integrate_once(&h, Anchor::Zero);
    }
    h
}

/// Inverse of `I^n` on its image: recovers the unique lambda-normalised BV
/// function g with `I^n[g] = h`.  Checks that h is C^(n-1), vanishes with
/// its first n-1 derivatives at 0, and has tail degree at most n.
pub fn inverse_in(h: &PiecewiseFn, n: u32, lambda: &Rat) -> Result<BVFunction> {
    assert!(n >= 1, "inverse of I^0 is the identity");
    for (label, piece) in [
        ("left", h.pieces().first().unwrap()),
        ("right", h.pieces().last().unwrap()),
    ] {
        if piece.degree().unwrap_or(0) > n as usize {
            return Err(Error::NotInIBVn(format!(
                "{label} tail has degree above n = {n}"
            )));
        }
    }
    for (i, b) in h.breakpoints().iter().enumerate() {
        let left = &h.pieces()[i];
        let right = &h.pieces()[i + 1];
        if h.point_values()[i] != left.eval(b) {
            return Err(Error::NotInIBVn(format!(
                "value at {} differs from the limits",
                rat_to_string(b)
            )));
        }
        for m in 0..n {
            if left.nth_derivative(m).eval(b) != right.nth_derivative(m).eval(b) {
                return Err(Error::NotInIBVn(format!(
                    "derivative {m} jumps at {}",
                    rat_to_string(b)
                )));
            }
        }
    }
    let zero = Rat::zero();
    let idx = h.breakpoints().partition_point(|b| b <= &zero);
    for m in 0..n {
        if !h.pieces()[idx].nth_derivative(m).eval(&zero).is_zero() {
            return Err(Error::NotInIBVn(format!("derivative {m} does not vanish at 0")));
        }
    }
    let pieces: Vec<Poly> = h.pieces().iter().map(|p| p.nth_derivative(n)).collect();
    let point_values: Vec<Rat> = h
        .breakpoints()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let left = pieces[i].eval(b);
            let right = pieces[i + 1].eval(b);
            (rat_i(1) - lambda) * left + lambda * right
        })
        .collect();
    let g = PiecewiseFn::build(
        h.breakpoints().to_vec(),
        pieces,
        point_values,
        TailClass::ConstantTails,
    );
    BVFunction::validate(g, Some(lambda.clone()))
}

/// A multiplier: order n plus the normalised BV kernel g, with the iterated
/// integral `h = I^n[g]` materialised eagerly.
#[derive(Debug, Clone)]
pub struct Multiplier {
    order: u32,
    g: BVFunction,
    h: PiecewiseFn,
    lambda: Option<Rat>,
}

impl Multiplier {
    /// At order >= 1 the kernel must carry a normalisation (otherwise g is
    /// not pinned down by h); at order 0 any BV function is a multiplier.
    pub fn new(order: u32, g: BVFunction, lambda: Option<Rat>) -> Result<Self> {
        if g.normalization() != lambda.as_ref() {
            return Err(Error::LambdaMismatch {
                multiplier: g
                    .normalization()
                    .map(rat_to_string)
                    .unwrap_or_else(|| "none".into()),
                requested: lambda
                    .as_ref()
                    .map(rat_to_string)
                    .unwrap_or_else(|| "none".into()),
            });
        }
        if order >= 1 && lambda.is_none() {
            return Err(Error::NotInIBVn(
                "orders >= 1 require a normalised kernel".into(),
            ));
        }
        let h = iterate_integral(&g, order);
        Ok(Multiplier { order, g, h, lambda })
    }

    /// Normalise a raw BV function and build the multiplier.
    pub fn from_bv(order: u32, g: PiecewiseFn, lambda: Rat) -> Result<Self> {
        let g = BVFunction::normalized(g, lambda.clone())?;
        Self::new(order, g, Some(lambda))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn g(&self) -> &BVFunction {
        &self.g
    }

    /// The materialised iterated integral `I^order[g]`.
    pub fn h(&self) -> &PiecewiseFn {
        &self.h
    }

    pub fn lambda(&self) -> Option<&Rat> {
        self.lambda.as_ref()
    }
}

/// `IBV^n` norm of a multiplier: `||g||_inf + V g` of the kernel.
pub fn ibvn_norm(m: &Multiplier, tol: &Rat) -> Result<Enclosure> {
    let half = tol / rat_i(2);
    let sup = m.g().as_fn().sup_norm(&half)?;
    let var = m.g().as_fn().variation(&half)?;
    Ok(sup.add(&var))
}

/// Essential variation: the variation of any normalisation of g (the value
/// is independent of lambda); computed from the left-continuous one.
pub fn essential_variation(g: &BVFunction) -> Result<Enclosure> {
    g.as_fn().normalize(&Rat::zero()).variation(&default_tol())
}
