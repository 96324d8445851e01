//! Shared corpus generators for the integration suites.  Everything is
//! seeded, so failures reproduce.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rpint_core::numeric::poly::Poly;
use rpint_core::spaces::iterate_integral;
use rpint_core::{
    rat, rat_i, BVFunction, Distribution, Multiplier, PiecewiseFn, Rat, RegulatedPrimitive,
    TailClass,
};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rand_rat(rng: &mut StdRng, num_range: i64, den_max: i64) -> Rat {
    rat(
        rng.random_range(-num_range..=num_range),
        rng.random_range(1..=den_max),
    )
}

pub fn rand_breakpoints(rng: &mut StdRng, count: usize) -> Vec<Rat> {
    let mut set = BTreeSet::new();
    while set.len() < count {
        set.insert(rand_rat(rng, 6, 4));
    }
    set.into_iter().collect()
}

pub fn rand_poly(rng: &mut StdRng, max_deg: usize) -> Poly {
    let deg = rng.random_range(0..=max_deg);
    Poly::from_coeffs((0..=deg).map(|_| rand_rat(rng, 3, 3)).collect())
}

/// Random BV function: constant tails, random interior pieces and point
/// values.
pub fn rand_bv(rng: &mut StdRng, max_breaks: usize, max_deg: usize) -> PiecewiseFn {
    let count = rng.random_range(1..=max_breaks.max(1));
    let breaks = rand_breakpoints(rng, count);
    let k = breaks.len();
    let mut pieces = Vec::with_capacity(k + 1);
    for i in 0..=k {
        if i == 0 || i == k {
            pieces.push(Poly::constant(rand_rat(rng, 3, 2)));
        } else {
            pieces.push(rand_poly(rng, max_deg));
        }
    }
    let point_values = (0..k).map(|_| rand_rat(rng, 3, 2)).collect();
    PiecewiseFn::new(breaks, pieces, point_values, TailClass::ConstantTails).unwrap()
}

/// Random BV function vanishing outside its breakpoint span.
pub fn rand_bv_compact(rng: &mut StdRng, max_breaks: usize, max_deg: usize) -> PiecewiseFn {
    let count = rng.random_range(2..=max_breaks.max(2));
    let breaks = rand_breakpoints(rng, count);
    let k = breaks.len();
    let mut pieces = Vec::with_capacity(k + 1);
    for i in 0..=k {
        if i == 0 || i == k {
            pieces.push(Poly::zero());
        } else {
            pieces.push(rand_poly(rng, max_deg));
        }
    }
    let point_values = (0..k).map(|_| rand_rat(rng, 2, 2)).collect();
    PiecewiseFn::new(breaks, pieces, point_values, TailClass::ConstantTails).unwrap()
}

/// Random continuous primitive (vanishing at -inf, constant tails): one
/// integration pass over a compactly supported BV function, re-anchored.
pub fn rand_primitive_bc(rng: &mut StdRng, max_breaks: usize, max_deg: usize) -> PiecewiseFn {
    let g = rand_bv_compact(rng, max_breaks, max_deg.saturating_sub(1));
    let h = iterate_integral(&BVFunction::plain(g).unwrap(), 1);
    assert_eq!(h.tail_class(), TailClass::ConstantTails);
    h.sub(&PiecewiseFn::constant(h.value_neg_inf().clone()))
}

/// Random left-continuous primitive: a continuous base plus a few
/// left-continuous steps.
pub fn rand_primitive_br(rng: &mut StdRng, max_breaks: usize, max_deg: usize) -> PiecewiseFn {
    let mut f = rand_primitive_bc(rng, max_breaks, max_deg);
    for _ in 0..rng.random_range(0..=2) {
        let c = rand_rat(rng, 5, 3);
        let at = rand_rat(rng, 6, 3);
        f = f.add(&PiecewiseFn::step_at(at, Rat::zero()).scale(&c));
    }
    f
}

/// Random piecewise-linear left-continuous primitive (degree <= 1 pieces):
/// the corpus on which lattice operations are exact.
pub fn rand_primitive_linear(rng: &mut StdRng, max_breaks: usize) -> PiecewiseFn {
    let mut f = PiecewiseFn::zero();
    for _ in 0..rng.random_range(1..=max_breaks / 2 + 1) {
        let a = rand_rat(rng, 5, 2);
        let b = &a + rat(rng.random_range(1..=4), rng.random_range(1..=2));
        let c = rand_rat(rng, 3, 2);
        f = f.add(&PiecewiseFn::clamped_ramp(a, b).scale(&c));
    }
    for _ in 0..rng.random_range(0..=2) {
        let c = rand_rat(rng, 2, 2);
        let at = rand_rat(rng, 5, 2);
        f = f.add(&PiecewiseFn::step_at(at, Rat::zero()).scale(&c));
    }
    // keep the corpus clear of the zero function
    if f.is_zero() {
        f = PiecewiseFn::heaviside(Rat::zero());
    }
    f
}

pub fn rand_distribution(rng: &mut StdRng, order: u32, max_breaks: usize, max_deg: usize) -> Distribution {
    let f = if rng.random_bool(0.5) {
        rand_primitive_bc(rng, max_breaks, max_deg)
    } else {
        rand_primitive_br(rng, max_breaks, max_deg)
    };
    Distribution::new(order, RegulatedPrimitive::validate(f).unwrap())
}

/// Desk-scale BV function: breakpoints within [-2, 2], unit-size
/// coefficients, degree <= 2.  Keeps the gauge-sum oracle's midpoint error
/// comfortably under 1e-6 at level 14.
pub fn rand_bv_desk(rng: &mut StdRng, max_breaks: usize) -> PiecewiseFn {
    let count = rng.random_range(1..=max_breaks.max(1));
    let mut set = BTreeSet::new();
    while set.len() < count {
        set.insert(rand_rat(rng, 2, 2));
    }
    let breaks: Vec<Rat> = set.into_iter().collect();
    let k = breaks.len();
    let mut pieces = Vec::with_capacity(k + 1);
    for i in 0..=k {
        if i == 0 || i == k {
            pieces.push(Poly::constant(rand_rat(rng, 1, 2)));
        } else {
            let deg = rng.random_range(0..=2);
            pieces.push(Poly::from_coeffs(
                (0..=deg).map(|_| rand_rat(rng, 1, 2)).collect(),
            ));
        }
    }
    let point_values = (0..k).map(|_| rand_rat(rng, 1, 2)).collect();
    PiecewiseFn::new(breaks, pieces, point_values, TailClass::ConstantTails).unwrap()
}

/// Desk-scale left-continuous primitive to pair with `rand_bv_desk`.
pub fn rand_primitive_desk(rng: &mut StdRng, max_breaks: usize) -> PiecewiseFn {
    let mut g = rand_bv_desk(rng, max_breaks);
    // compactify: zero tails, then integrate once and re-anchor
    g = g.multiply(&PiecewiseFn::indicator_open(rat(-9, 4), rat(9, 4)));
    let h = iterate_integral(&BVFunction::plain(g).unwrap(), 1);
    let mut f = h.sub(&PiecewiseFn::constant(h.value_neg_inf().clone()));
    for _ in 0..rng.random_range(0..=2) {
        let c = rand_rat(rng, 1, 2);
        let at = rand_rat(rng, 2, 2);
        f = f.add(&PiecewiseFn::step_at(at, Rat::zero()).scale(&c));
    }
    f
}

pub fn rand_lambda(rng: &mut StdRng) -> Rat {
    let choices = [rat_i(0), rat(1, 4), rat(1, 2), rat_i(1)];
    choices[rng.random_range(0..choices.len())].clone()
}

pub fn rand_multiplier(rng: &mut StdRng, order: u32, max_breaks: usize, max_deg: usize) -> Multiplier {
    let lam = rand_lambda(rng);
    Multiplier::from_bv(order, rand_bv(rng, max_breaks, max_deg), lam).unwrap()
}
