//! Banach-lattice and Banach-algebra structure transported from the
//! primitives: `f1 <= f2` iff `F1 <= F2` pointwise, join/meet through the
//! pointwise max/min of primitives, the product through `D^n(F1 F2)`.

use num_traits::Signed;

use crate::distribution::{alexiewicz_norm, Distribution};
use crate::error::{Error, Result};
use crate::numeric::extrema::poly_extrema_on;
use crate::numeric::poly::Poly;
use crate::numeric::{rat, rat_i, Enclosure, Rat};
use crate::piecewise::PiecewiseFn;
use crate::spaces::RegulatedPrimitive;

/// Three-valued order decision: `Unknown` only occurs when a sign decision
/// falls inside an unresolved enclosure narrower than the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    True,
    False,
    Unknown,
}

/// Result of a lattice operation; `exact` is false when a crossing had to
/// be placed at a tolerance-level approximation of an irrational root
/// (never happens for primitives of degree <= 1).
#[derive(Debug, Clone)]
pub struct LatticeResult {
    pub value: Distribution,
    pub exact: bool,
}

fn require_same_order(f1: &Distribution, f2: &Distribution) -> Result<()> {
    if f1.order() != f2.order() {
        return Err(Error::OrderMismatch { expected: f1.order(), got: f2.order() });
    }
    Ok(())
}

/// Decides `f1 <= f2`, i.e. nonnegativity of F2 - F1 everywhere (point
/// values included).
pub fn order_leq(f1: &Distribution, f2: &Distribution, tol: &Rat) -> Result<Tri> {
    require_same_order(f1, f2)?;
    let d = f2.primitive().as_fn().sub(f1.primitive().as_fn());
    piecewise_nonnegative(&d, tol)
}

fn piecewise_nonnegative(d: &PiecewiseFn, tol: &Rat) -> Result<Tri> {
    for v in d.point_values() {
        if v.is_negative() {
            return Ok(Tri::False);
        }
    }
    let mut undecided = false;
    let k = d.breakpoints().len();
    for (i, piece) in d.pieces().iter().enumerate() {
        if i == 0 || i == k {
            // constant tails
            if piece.as_constant().expect("constant tails").is_negative() {
                return Ok(Tri::False);
            }
            continue;
        }
        let (min, _) = poly_extrema_on(piece, &d.breakpoints()[i - 1], &d.breakpoints()[i], tol)?;
        if min.hi.is_negative() {
            return Ok(Tri::False);
        }
        if min.lo.is_negative() {
            undecided = true;
        }
    }
    Ok(if undecided { Tri::Unknown } else { Tri::True })
}

/// Join: the distribution whose primitive is the pointwise max of the
/// primitives.
pub fn join(f1: &Distribution, f2: &Distribution, tol: &Rat) -> Result<LatticeResult> {
    require_same_order(f1, f2)?;
    let (m, exact) = f1
        .primitive()
        .as_fn()
        .pointwise_max(f2.primitive().as_fn(), tol)?;
    Ok(LatticeResult {
        value: Distribution::new(
            f1.order(),
            RegulatedPrimitive::validate(m).expect("max of primitives stays in the space"),
        ),
        exact,
    })
}

pub fn meet(f1: &Distribution, f2: &Distribution, tol: &Rat) -> Result<LatticeResult> {
    require_same_order(f1, f2)?;
    let (m, exact) = f1
        .primitive()
        .as_fn()
        .pointwise_min(f2.primitive().as_fn(), tol)?;
    Ok(LatticeResult {
        value: Distribution::new(
            f1.order(),
            RegulatedPrimitive::validate(m).expect("min of primitives stays in the space"),
        ),
        exact,
    })
}

/// |f| = f v (-f): the primitive is |F|.
pub fn abs_value(f: &Distribution, tol: &Rat) -> LatticeResult {
    join(f, &f.neg(), tol).expect("orders agree")
}

/// Jordan decomposition f = f+ - f-: f+ = f v 0, f- = (-f) v 0.  When both
/// halves are exact, the decomposition identities hold canonically and are
/// asserted.
pub fn jordan(f: &Distribution, tol: &Rat) -> (LatticeResult, LatticeResult) {
    let zero = Distribution::zero(f.order());
    let plus = join(f, &zero, tol).expect("orders agree");
    let minus = join(&f.neg(), &zero, tol).expect("orders agree");
    if plus.exact && minus.exact {
        debug_assert_eq!(
            plus.value.sub(&minus.value).expect("same order"),
            *f,
            "f = f+ - f-"
        );
        debug_assert_eq!(
            plus.value.add(&minus.value).expect("same order"),
            abs_value(f, tol).value,
            "|f| = f+ + f-"
        );
    }
    (plus, minus)
}

/// Algebra product f1 f2 = D^n(F1 F2); exact always (no root isolation
/// involved).
pub fn product(f1: &Distribution, f2: &Distribution) -> Result<Distribution> {
    require_same_order(f1, f2)?;
    let p = f1.primitive().as_fn().multiply(f2.primitive().as_fn());
    Ok(Distribution::new(
        f1.order(),
        RegulatedPrimitive::validate(p).expect("product of primitives stays in the space"),
    ))
}

/// Checks the abstract-M-space law `||f1 v f2|| = max(||f1||, ||f2||)` for
/// nonnegative operands (within enclosure width), and that the L-space law
/// fails as it must: the two disjoint triangle bumps have
/// `||F1|| = ||F2|| = ||F1 + F2|| = 1`, not 2.
pub fn m_space_check(f1: &Distribution, f2: &Distribution, tol: &Rat) -> Result<bool> {
    require_same_order(f1, f2)?;
    let zero = Distribution::zero(f1.order());
    for f in [f1, f2] {
        if order_leq(&zero, f, tol)? != Tri::True {
            return Err(Error::NotNonnegative);
        }
    }
    let joined = join(f1, f2, tol)?;
    let lhs = alexiewicz_norm(&joined.value, tol);
    let rhs = alexiewicz_norm(f1, tol).max(&alexiewicz_norm(f2, tol));
    let m_law = lhs.overlaps(&rhs);

    let (t1, t2) = triangle_bumps();
    let sup_sum = t1.add(&t2).sup_norm(tol).expect("constant tails");
    let l_law_fails = sup_sum == Enclosure::point(rat_i(1));
    Ok(m_law && l_law_fails)
}

/// The disjoint triangle bumps 1 - |x| on [-1, 1] and 1 - |x - 2| on [1, 3].
pub fn triangle_bumps() -> (PiecewiseFn, PiecewiseFn) {
    let t1 = PiecewiseFn::new(
        vec![rat_i(-1), rat_i(0), rat_i(1)],
        vec![
            Poly::zero(),
            Poly::from_coeffs(vec![rat_i(1), rat_i(1)]),
            Poly::from_coeffs(vec![rat_i(1), rat_i(-1)]),
            Poly::zero(),
        ],
        vec![rat_i(0), rat_i(1), rat_i(0)],
        crate::piecewise::TailClass::ConstantTails,
    )
    .unwrap();
    let t2 = t1.translate(&rat_i(2));
    (t1, t2)
}

/// `||F - u_k F||_inf` for the approximate-identity ramp u_k (0 below -k,
/// rising to 1 at 1 - k); tends to 0 for continuous primitives as k grows.
pub fn approximate_identity_check(f: &Distribution, k: i64) -> Result<Enclosure> {
    if !f.is_continuous() {
        return Err(Error::NotContinuousPrimitive);
    }
    let u = PiecewiseFn::clamped_ramp(rat_i(-k), rat_i(1 - k));
    let big_f = f.primitive().as_fn();
    let residue = big_f.sub(&u.multiply(big_f));
    residue.sup_norm(&rat(1, 1_000_000_000_000))
}
