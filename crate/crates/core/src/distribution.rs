//! The calculus on distributions of finite order n >= 1 stored through
//! their unique regulated primitives: the regulated primitive integral,
//! interval integrals at order 1, Alexiewicz norms, translation, linear
//! change of variables, moments, reconstruction of the primitive, pairing
//! with test functions, order conversion, the second mean value theorem and
//! compactly supported multipliers.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::poly::Poly;
use crate::numeric::roots::isolate_roots;
use crate::numeric::{rat_i, rat_to_string, Enclosure, ExtReal, Rat};
use crate::piecewise::{PiecewiseFn, TailClass};
use crate::spaces::{
    integrate_once, inverse_in, Anchor, BVFunction, Multiplier, RegulatedPrimitive,
};
use crate::stieltjes::{hs_integral, hs_integral_g_df};

/// A distribution f = F^(n): order n >= 1 plus the unique primitive F.
/// The primitive's continuity flag marks membership in the continuous
/// subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    order: u32,
    primitive: RegulatedPrimitive,
}

impl Distribution {
    pub fn new(order: u32, primitive: RegulatedPrimitive) -> Self {
        assert!(order >= 1, "distribution order starts at 1");
        Distribution { order, primitive }
    }

    pub fn zero(order: u32) -> Self {
        Self::new(
            order,
            RegulatedPrimitive::validate(PiecewiseFn::zero()).unwrap(),
        )
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn primitive(&self) -> &RegulatedPrimitive {
        &self.primitive
    }

    pub fn is_continuous(&self) -> bool {
        self.primitive.is_continuous()
    }

    pub fn is_zero(&self) -> bool {
        self.primitive.as_fn().is_zero()
    }

    fn with_primitive(&self, f: PiecewiseFn) -> Distribution {
        Distribution::new(
            self.order,
            RegulatedPrimitive::validate(f).expect("operation preserves the primitive space"),
        )
    }

    pub fn add(&self, other: &Distribution) -> Result<Distribution> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { expected: self.order, got: other.order });
        }
        Ok(self.with_primitive(self.primitive.as_fn().add(other.primitive.as_fn())))
    }

    pub fn sub(&self, other: &Distribution) -> Result<Distribution> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Distribution {
        self.with_primitive(self.primitive.as_fn().neg())
    }

    pub fn scale(&self, k: &Rat) -> Distribution {
        self.with_primitive(self.primitive.as_fn().scale(k))
    }
}

/// The m-th derivative of the Dirac distribution: the (m+1)-st derivative
/// of the left-continuous Heaviside step.
pub fn dirac_derivative(m: u32) -> Distribution {
    Distribution::new(
        m + 1,
        RegulatedPrimitive::validate(PiecewiseFn::heaviside(Rat::zero())).unwrap(),
    )
}

fn sign_of_order(n: u32) -> Rat {
    if (n - 1).is_multiple_of(2) {
        rat_i(1)
    } else {
        rat_i(-1)
    }
}

/// Coincident-jump sum: over every c where F and g are not both right
/// continuous, `[F(c) - F(c+)] [g(c) - g(c+)]`.  Finite here because both
/// functions are piecewise.
fn coincident_jump_sum(f: &PiecewiseFn, g: &PiecewiseFn) -> Rat {
    let mut cs: Vec<Rat> = f.breakpoints().to_vec();
    cs.extend_from_slice(g.breakpoints());
    cs.sort();
    cs.dedup();
    let mut total = Rat::zero();
    for c in &cs {
        let df = f.eval_finite(c) - f.limit_right(c);
        if df.is_zero() {
            continue;
        }
        let dg = g.eval_finite(c) - g.limit_right(c);
        total += df * dg;
    }
    total
}

/// The regulated primitive integral `int f h` for a multiplier of order
/// n - 1 whose kernel g is normalised to `lambda` (the normalisation is
/// irrelevant when the primitive is continuous).
///
/// Evaluated as
/// `(-1)^(n-1) [ F(inf) g(inf) - int F dg - sum_c [F(c)-F(c+)][g(c)-g(c+)] ]`,
/// with the swapped-orientation route `(-1)^(n-1) int g dF` asserted equal
/// in debug builds.
pub fn integrate(f: &Distribution, m: &Multiplier, lambda: &Rat) -> Result<Rat> {
    if m.order() != f.order() - 1 {
        return Err(Error::OrderMismatch { expected: f.order() - 1, got: m.order() });
    }
    if !f.is_continuous() {
        if let Some(ml) = m.lambda() {
            if ml != lambda {
                return Err(Error::LambdaMismatch {
                    multiplier: rat_to_string(ml),
                    requested: rat_to_string(lambda),
                });
            }
        }
    }
    let big_f = f.primitive().as_fn();
    let g = m.g().as_fn();
    let sign = sign_of_order(f.order());
    let boundary = big_f.value_pos_inf() * g.value_pos_inf();
    let value = &sign * (boundary - hs_integral(big_f, g)? - coincident_jump_sum(big_f, g));
    debug_assert_eq!(
        value,
        sign * hs_integral_g_df(g, big_f)?,
        "the two integral routes must agree"
    );
    Ok(value)
}

/// Interval of the extended real line for order-1 integrals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntervalSpec {
    OpenOpen(Rat, Rat),
    OpenClosed(Rat, Rat),
    ClosedOpen(Rat, Rat),
    ClosedClosed(Rat, Rat),
    Point(Rat),
    ToNegInf { end: Rat, closed: bool },
    ToPosInf { start: Rat, closed: bool },
    FullLine,
}

impl IntervalSpec {
    /// Accepts "full", "{a}", and bracket notation like "(a,b]", "[a,inf)",
    /// "(-inf,b)".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("full") {
            return Ok(IntervalSpec::FullLine);
        }
        if let Some(inner) = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            return Ok(IntervalSpec::Point(crate::numeric::rat_from_str(inner)?));
        }
        let lo_closed = match s.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(Error::Parse(format!("bad interval {s:?}"))),
        };
        let hi_closed = match s.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(Error::Parse(format!("bad interval {s:?}"))),
        };
        let inner = &s[1..s.len() - 1];
        let (lo, hi) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad interval {s:?}")))?;
        let (lo, hi) = (lo.trim(), hi.trim());
        let lo_inf = lo.eq_ignore_ascii_case("-inf");
        let hi_inf = hi.eq_ignore_ascii_case("inf") || hi.eq_ignore_ascii_case("+inf");
        let spec = match (lo_inf, hi_inf) {
            (true, true) => IntervalSpec::FullLine,
            (true, false) => IntervalSpec::ToNegInf {
                end: crate::numeric::rat_from_str(hi)?,
                closed: hi_closed,
            },
            (false, true) => IntervalSpec::ToPosInf {
                start: crate::numeric::rat_from_str(lo)?,
                closed: lo_closed,
            },
            (false, false) => {
                let a = crate::numeric::rat_from_str(lo)?;
                let b = crate::numeric::rat_from_str(hi)?;
                if a >= b {
                    return Err(Error::Parse("interval endpoints must satisfy a < b".into()));
                }
                match (lo_closed, hi_closed) {
                    (false, false) => IntervalSpec::OpenOpen(a, b),
                    (false, true) => IntervalSpec::OpenClosed(a, b),
                    (true, false) => IntervalSpec::ClosedOpen(a, b),
                    (true, true) => IntervalSpec::ClosedClosed(a, b),
                }
            }
        };
        Ok(spec)
    }
}

/// Interval integral of an order-1 distribution: differences of one-sided
/// limits of the primitive, following the endpoint convention of the
/// interval kind.
pub fn integrate_interval(f: &Distribution, spec: &IntervalSpec) -> Result<Rat> {
    if f.order() != 1 {
        return Err(Error::OrderTooHigh(f.order()));
    }
    let p = f.primitive().as_fn();
    let check = |a: &Rat, b: &Rat| -> Result<()> {
        if a >= b {
            return Err(Error::Parse("interval endpoints must satisfy a < b".into()));
        }
        Ok(())
    };
    let v = match spec {
        IntervalSpec::OpenOpen(a, b) => {
            check(a, b)?;
            p.limit_left(b) - p.limit_right(a)
        }
        IntervalSpec::OpenClosed(a, b) => {
            check(a, b)?;
            p.limit_right(b) - p.limit_right(a)
        }
        IntervalSpec::ClosedOpen(a, b) => {
            check(a, b)?;
            p.limit_left(b) - p.limit_left(a)
        }
        IntervalSpec::ClosedClosed(a, b) => {
            check(a, b)?;
            p.limit_right(b) - p.limit_left(a)
        }
        IntervalSpec::Point(a) => p.limit_right(a) - p.limit_left(a),
        IntervalSpec::ToNegInf { end, closed } => {
            let hi = if *closed { p.limit_right(end) } else { p.limit_left(end) };
            hi - p.value_neg_inf()
        }
        IntervalSpec::ToPosInf { start, closed } => {
            let lo = if *closed { p.limit_left(start) } else { p.limit_right(start) };
            p.value_pos_inf() - lo
        }
        IntervalSpec::FullLine => p.value_pos_inf().clone(),
    };
    Ok(v)
}

/// Alexiewicz norm: the uniform norm of the primitive, as a certified
/// enclosure (exact for primitives with rational critical points).
pub fn alexiewicz_norm(f: &Distribution, tol: &Rat) -> Enclosure {
    f.primitive()
        .as_fn()
        .sup_norm(tol)
        .expect("validated primitives have constant tails")
}

/// Translation: shifts the primitive.
pub fn translate(f: &Distribution, t: &Rat) -> Distribution {
    let shifted = f.primitive().as_fn().translate(t);
    Distribution::new(
        f.order(),
        RegulatedPrimitive::validate(shifted).expect("translation preserves the space"),
    )
}

/// Reconstruct the primitive pointwise from the distribution alone: pairs f
/// with the kernel whose (n-1)-st derivative is `(-1)^(n-1) chi_[-inf, x)`,
/// right-continuously normalised, which recovers F(x) exactly.
pub fn reconstruct(f: &Distribution, x: &Rat) -> Rat {
    let n = f.order();
    let sign = sign_of_order(n);
    let g = PiecewiseFn::new(
        vec![x.clone()],
        vec![Poly::constant(sign), Poly::zero()],
        vec![Rat::zero()],
        TailClass::ConstantTails,
    )
    .unwrap();
    let one = rat_i(1);
    let m = Multiplier::from_bv(n - 1, g, one.clone()).expect("kernel is normalised");
    integrate(f, &m, &one).expect("orders match by construction")
}

/// Pairing with a compactly supported test function: requires phi to vanish
/// on both tails and to be C^(n-1) (a spline-like piecewise polynomial);
/// computes `(-1)^n int F phi^(n) dx` exactly.
pub fn pair_test_function(f: &Distribution, phi: &PiecewiseFn) -> Result<Rat> {
    let n = f.order();
    if phi.tail_class() == TailClass::PolynomialTails
        || !phi.pieces().first().unwrap().is_zero()
        || !phi.pieces().last().unwrap().is_zero()
    {
        return Err(Error::NotCompactSupport);
    }
    for (i, b) in phi.breakpoints().iter().enumerate() {
        let left = &phi.pieces()[i];
        let right = &phi.pieces()[i + 1];
        if phi.point_values()[i] != left.eval(b) {
            return Err(Error::NotSmoothEnough(format!(
                "value at {} differs from the limits",
                rat_to_string(b)
            )));
        }
        for d in 0..n {
            if left.nth_derivative(d).eval(b) != right.nth_derivative(d).eval(b) {
                return Err(Error::NotSmoothEnough(format!(
                    "derivative {d} jumps at {}",
                    rat_to_string(b)
                )));
            }
        }
    }
    let big_f = f.primitive().as_fn();
    let mut grid: Vec<Rat> = big_f.breakpoints().to_vec();
    grid.extend_from_slice(phi.breakpoints());
    grid.sort();
    grid.dedup();
    let mut total = Rat::zero();
    for w in grid.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let pf = big_f.piece_covering(Some(lo));
        let pphi = phi.piece_covering(Some(lo)).nth_derivative(n);
        if !pphi.is_zero() {
            total += pf.mul(&pphi).definite_integral(lo, hi);
        }
    }
    let sign = if n.is_multiple_of(2) { rat_i(1) } else { rat_i(-1) };
    Ok(sign * total)
}

/// Moments against P_k(x) = x^k for 0 <= k <= n-2, via the defining
/// reduction `(-1)^(n-1) int F' P^(n-1)`; always zero because the (n-1)-st
/// derivative of P_k vanishes.
pub fn moments(f: &Distribution, k: u32) -> Result<Rat> {
    let n = f.order();
    if n < 2 || k > n - 2 {
        return Err(Error::DegreeTooHigh { k: k as i64, max: n as i64 - 2 });
    }
    let p_k = Poly::x().pow(k);
    let reduced = p_k.nth_derivative(n - 1);
    let c = reduced
        .as_constant()
        .expect("derivative of x^k with k <= n-2 taken n-1 times is constant");
    // int F' c over the line, evaluated through the order-1 machinery
    let big_f = f.primitive().as_fn();
    let g = PiecewiseFn::constant(c.clone());
    let value = big_f.value_pos_inf() * g.value_pos_inf()
        - hs_integral(big_f, &g)?
        - coincident_jump_sum(big_f, &g);
    debug_assert!(value.is_zero());
    Ok(value)
}

fn rat_pow(a: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..n {
        acc *= a;
    }
    acc
}

/// Compose a distribution with psi(x) = a x + b: the primitive of
/// `f o psi` is `a^-n (F o psi - (F o psi)(-inf))`, left-continuously
/// normalised.
pub fn compose_affine(f: &Distribution, a: &Rat, b: &Rat) -> Result<Distribution> {
    if a.is_zero() {
        return Err(Error::DegenerateAffine);
    }
    let n = f.order();
    let composed = f.primitive().as_fn().compose_affine(a, b)?;
    let anchored = composed
        .sub(&PiecewiseFn::constant(composed.value_neg_inf().clone()))
        .normalize(&Rat::zero());
    let scaled = anchored.scale(&rat_pow(a, n).recip());
    Ok(Distribution::new(
        n,
        RegulatedPrimitive::validate(scaled).expect("affine image stays in the space"),
    ))
}

/// Both sides of the linear change-of-variables identity
/// `int f h = |a| int (f o psi)(h o psi)` for psi(x) = a x + b, computed
/// exactly; the kernel of the composed multiplier is `a^(n-1) (g o psi)`
/// with the normalisation mirrored when a < 0.
pub fn change_variables(
    f: &Distribution,
    m: &Multiplier,
    a: &Rat,
    b: &Rat,
) -> Result<(Rat, Rat)> {
    if a.is_zero() {
        return Err(Error::DegenerateAffine);
    }
    let n = f.order();
    let lambda = m.lambda().cloned().unwrap_or_else(Rat::one);
    let lhs = integrate(f, m, &lambda)?;

    let f_composed = compose_affine(f, a, b)?;
    let g_composed = m
        .g()
        .as_fn()
        .compose_affine(a, b)?
        .scale(&rat_pow(a, n - 1));
    let m_composed = match m.lambda() {
        Some(l) => {
            let l2 = if a.is_positive() { l.clone() } else { Rat::one() - l };
            Multiplier::from_bv(n - 1, g_composed, l2)?
        }
        None => Multiplier::new(0, BVFunction::plain(g_composed)?, None)?,
    };
    let lam2 = m_composed.lambda().cloned().unwrap_or_else(Rat::one);
    let rhs = a.abs() * integrate(&f_composed, &m_composed, &lam2)?;
    Ok((lhs, rhs))
}

/// Move a distribution to another order when the spaces allow it:
/// upward by integrating the primitive from -inf (each pass requires the
/// current primitive to vanish at +inf, else the integral leaves the
/// space), downward by pointwise piecewise differentiation (each pass
/// requires the current primitive to be continuous, so that no Dirac terms
/// appear).  `want_continuous` additionally demands the result lie in the
/// continuous subspace.
pub fn convert_order(
    f: &Distribution,
    target: u32,
    want_continuous: bool,
) -> Result<Distribution> {
    assert!(target >= 1);
    let mut current = f.primitive().as_fn().clone();
    let n = f.order();
    if target > n {
        for _ in 0..(target - n) {
            if !current.pieces().last().unwrap().is_zero() {
                return Err(Error::NotInTargetSpace(
                    "primitive does not vanish at +inf, its integral grows without bound"
                        .into(),
                ));
            }
            current = integrate_once(&current, Anchor::NegInf);
            if current.tail_class() == TailClass::PolynomialTails {
                return Err(Error::NotInTargetSpace(
                    "iterated integral is unbounded".into(),
                ));
            }
        }
    } else if target < n {
        let steps = n - target;
        // need C^(steps - 1): distributional and pointwise derivatives agree
        for (i, bp) in current.breakpoints().iter().enumerate() {
            let left = &current.pieces()[i];
            let right = &current.pieces()[i + 1];
            for d in 0..steps {
                if left.nth_derivative(d).eval(bp) != right.nth_derivative(d).eval(bp)
                    || (d == 0 && current.point_values()[i] != left.eval(bp))
                {
                    return Err(Error::NotInTargetSpace(format!(
                        "derivative {d} of the primitive jumps at {}",
                        rat_to_string(bp)
                    )));
                }
            }
        }
        let pieces: Vec<Poly> = current
            .pieces()
            .iter()
            .map(|p| p.nth_derivative(steps))
            .collect();
        let point_values: Vec<Rat> = current
            .breakpoints()
            .iter()
            .enumerate()
            .map(|(i, b)| pieces[i].eval(b))
            .collect();
        current = PiecewiseFn::new(
            current.breakpoints().to_vec(),
            pieces,
            point_values,
            TailClass::ConstantTails,
        )?;
        if !current.value_neg_inf().is_zero() {
            return Err(Error::NotInTargetSpace(
                "derivative does not vanish at -inf".into(),
            ));
        }
    }
    let primitive = RegulatedPrimitive::validate(current)
        .map_err(|e| Error::NotInTargetSpace(e.to_string()))?;
    if want_continuous && !primitive.is_continuous() {
        return Err(Error::NotInTargetSpace(
            "primitive is not continuous".into(),
        ));
    }
    Ok(Distribution::new(target, primitive))
}

/// Second mean value theorem witness: for continuous-primitive f and a
/// monotone kernel g, some xi satisfies
/// `int f h = (-1)^(n-1) [ g(-inf) F(xi) + g(inf) (F(inf) - F(xi)) ]`.
/// Returns an enclosure of the leftmost such xi (exact when rational).
pub fn second_mvt_xi(
    f: &Distribution,
    m: &Multiplier,
    tol: &Rat,
) -> Result<(ExtReal, ExtReal)> {
    if !f.is_continuous() {
        return Err(Error::NotContinuousPrimitive);
    }
    if m.order() != f.order() - 1 {
        return Err(Error::OrderMismatch { expected: f.order() - 1, got: m.order() });
    }
    let g = m.g().as_fn();
    let g_lo = g.value_neg_inf().clone();
    let g_hi = g.value_pos_inf().clone();
    let swing = (&g_hi - &g_lo).abs();
    let var = g.variation(tol).map_err(|_| Error::NotMonotone)?;
    if var.lo > swing || var.hi != swing {
        return Err(Error::NotMonotone);
    }
    if g_lo == g_hi {
        // constant kernel: every xi works, return the convention xi = 0
        return Ok((ExtReal::Finite(Rat::zero()), ExtReal::Finite(Rat::zero())));
    }
    let lambda = m.lambda().cloned().unwrap_or_else(Rat::one);
    let value = integrate(f, m, &lambda)?;
    let big_f = f.primitive().as_fn();
    let sign = sign_of_order(f.order());
    // solve g_lo F(xi) + g_hi (F(inf) - F(xi)) = sign * value for F(xi)
    let target = (sign * value - &g_hi * big_f.value_pos_inf()) / (&g_lo - &g_hi);
    if target.is_zero() {
        return Ok((ExtReal::NegInf, ExtReal::NegInf));
    }
    let breaks = big_f.breakpoints();
    for (i, bp) in breaks.iter().enumerate() {
        if big_f.eval_finite(bp) == target {
            return Ok((ExtReal::Finite(bp.clone()), ExtReal::Finite(bp.clone())));
        }
        if i + 1 < breaks.len() {
            let piece = &big_f.pieces()[i + 1];
            let shifted = piece.sub(&Poly::constant(target.clone()));
            if shifted.is_zero() {
                // the whole piece sits at the target level
                return Ok((ExtReal::Finite(bp.clone()), ExtReal::Finite(bp.clone())));
            }
            if let Some(first) = isolate_roots(&shifted, bp, &breaks[i + 1])?.into_iter().next()
            {
                let mut root = first;
                root.refine(&shifted.square_free_part(), tol);
                return Ok((ExtReal::Finite(root.lo), ExtReal::Finite(root.hi)));
            }
        }
    }
    if big_f.value_pos_inf() == &target {
        return Ok((ExtReal::PosInf, ExtReal::PosInf));
    }
    panic!("second mean value theorem guarantees an admissible xi");
}

fn binomial(n: u32, k: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc = acc * rat_i((n - i) as i64) / rat_i((i + 1) as i64);
    }
    acc
}

/// Rising factorial (z)_m = z (z+1) ... (z+m-1), with (z)_0 = 1.
fn pochhammer(z: i64, m: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..m {
        acc *= rat_i(z + i as i64);
    }
    acc
}

/// Compactly supported multiplier built from the bump
/// `h(x) = (x-a)^p (x-b)^q chi_[a,b](x)` with p, q >= n-1: returns the
/// multiplier whose kernel is the Leibniz expansion
/// `g = chi_(a,b) sum_i C(n-1,i) (p-i+1)_i (q-n+i+2)_(n-i-1)
///      (x-a)^(p-i) (x-b)^(q-n+i+1)`
/// (lambda-normalised), together with the polynomial correction P of degree
/// <= n-2 satisfying `I^(n-1)[g] = h + P`.
pub fn build_compact_multiplier(
    a: &Rat,
    b: &Rat,
    p: u32,
    q: u32,
    n: u32,
    lambda: &Rat,
) -> Result<(Multiplier, Poly)> {
    if a >= b {
        return Err(Error::Parse("bump support requires a < b".into()));
    }
    if n < 1 || p < n - 1 || q < n - 1 {
        return Err(Error::ExponentTooSmall);
    }
    let x_minus_a = Poly::from_coeffs(vec![-a.clone(), Rat::one()]);
    let x_minus_b = Poly::from_coeffs(vec![-b.clone(), Rat::one()]);
    let mut kernel = Poly::zero();
    for i in 0..n {
        let coeff = binomial(n - 1, i)
            * pochhammer(p as i64 - i as i64 + 1, i)
            * pochhammer(q as i64 - n as i64 + i as i64 + 2, n - i - 1);
        let term = x_minus_a
            .pow(p - i)
            .mul(&x_minus_b.pow(q - (n - 1) + i))
            .scale(&coeff);
        kernel = kernel.add(&term);
    }
    let g_raw = PiecewiseFn::new(
        vec![a.clone(), b.clone()],
        vec![Poly::zero(), kernel.clone(), Poly::zero()],
        vec![Rat::zero(), Rat::zero()],
        TailClass::ConstantTails,
    )?;
    if p > n - 1 && q > n - 1 {
        debug_assert!(g_raw.limit_right(a).is_zero() && g_raw.limit_left(b).is_zero());
    }
    let m = Multiplier::from_bv(n - 1, g_raw, lambda.clone())?;

    // exact bump, with closed-interval endpoint values
    let bump = x_minus_a.pow(p).mul(&x_minus_b.pow(q));
    let h_exact = PiecewiseFn::new(
        vec![a.clone(), b.clone()],
        vec![Poly::zero(), bump.clone(), Poly::zero()],
        vec![bump.eval(a), bump.eval(b)],
        TailClass::ConstantTails,
    )?;
    let correction = if n == 1 {
        debug_assert_eq!(m.h(), &h_exact.normalize(lambda));
        Poly::zero()
    } else {
        let diff = m.h().sub(&h_exact);
        let p0 = diff.pieces()[0].clone();
        debug_assert!(
            diff.pieces().iter().all(|pc| *pc == p0),
            "I^(n-1)[g] - h must be a single global polynomial"
        );
        debug_assert!(p0.degree().unwrap_or(0) + 2 <= n as usize || p0.is_zero());
        p0
    };
    Ok((m, correction))
}

/// Deterministic lower-bound estimate of the dual norm: the best value of
/// `int f h` over a family of admissible kernels (steps, reversed steps,
/// ramps and constants, all with sup <= 1 and variation <= 1), built on a
/// dyadically refined grid around the primitive's breakpoints.  Always at
/// most `2 ||f||` by the Holder inequality.
pub fn dual_norm_estimate(f: &Distribution, samples: u32, tol: &Rat) -> Rat {
    let n = f.order();
    let big_f = f.primitive().as_fn();
    let breaks = big_f.breakpoints();
    let (lo, hi) = match (breaks.first(), breaks.last()) {
        (Some(a), Some(b)) => (a - rat_i(1), b + rat_i(1)),
        _ => (rat_i(-1), rat_i(1)),
    };
    let mut grid: Vec<Rat> = vec![lo.clone(), hi.clone()];
    grid.extend_from_slice(breaks);
    grid.sort();
    grid.dedup();
    while grid.len() < samples as usize {
        let mut refined = Vec::with_capacity(grid.len() * 2);
        for w in grid.windows(2) {
            refined.push(w[0].clone());
            refined.push((&w[0] + &w[1]) / rat_i(2));
        }
        refined.push(grid.last().unwrap().clone());
        grid = refined;
    }

    let one = Rat::one();
    let mut kernels: Vec<PiecewiseFn> = vec![PiecewiseFn::constant(one.clone())];
    for c in &grid {
        kernels.push(PiecewiseFn::step_at(c.clone(), one.clone()));
        kernels.push(
            PiecewiseFn::constant(one.clone())
                .sub(&PiecewiseFn::step_at(c.clone(), one.clone())),
        );
    }
    for w in grid.windows(2) {
        kernels.push(PiecewiseFn::clamped_ramp(w[0].clone(), w[1].clone()));
    }

    let mut best = Rat::zero();
    for kernel in kernels {
        for candidate in [kernel.clone(), kernel.neg()] {
            let m = Multiplier::from_bv(n - 1, candidate, one.clone())
                .expect("admissible kernels are BV");
            let v = integrate(f, &m, &one).expect("orders match");
            if v > best {
                best = v;
            }
        }
    }
    debug_assert!({
        let bound = alexiewicz_norm(f, tol);
        best <= bound.hi * rat_i(2)
    });
    best
}

/// Recover the kernel of a multiplier directly from a piecewise function
/// claimed to be an iterated integral (used by callers that deal in h).
pub fn multiplier_from_h(h: &PiecewiseFn, order: u32, lambda: &Rat) -> Result<Multiplier> {
    if order == 0 {
        return Multiplier::new(0, BVFunction::plain(h.clone())?, None);
    }
    let g = inverse_in(h, order, lambda)?;
    Multiplier::new(order, g, Some(lambda.clone()))
}
