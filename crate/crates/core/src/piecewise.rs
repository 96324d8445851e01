//! Piecewise-polynomial functions on the extended real line.
//!
//! A function is a strictly increasing list of rational breakpoints, one
//! polynomial piece per open interval between them (including the two
//! infinite tails), and an explicit value at every breakpoint that is
//! independent of both one-sided limits.  Values at countably many points
//! matter here: the Stieltjes machinery downstream is sensitive to them.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::extrema::{poly_sup_abs, poly_variation_on};
use crate::numeric::poly::Poly;
use crate::numeric::roots::isolate_roots;
use crate::numeric::{rat_i, Enclosure, ExtReal, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailClass {
    /// Both tail pieces are constant; values at +-inf equal the tail
    /// constants.  Every regulated function stored here is of this class.
    ConstantTails,
    /// Tail pieces may be genuine polynomials (iterated integrals grow like
    /// O(x^n)); values at +-inf are undefined.
    PolynomialTails,
}

/// Canonical piecewise-polynomial function.  Instances are always pruned:
/// a breakpoint only survives if the adjacent pieces differ or the stored
/// point value differs from their common value there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseFn {
    breakpoints: Vec<Rat>,
    pieces: Vec<Poly>,
    point_values: Vec<Rat>,
    v_neg_inf: Rat,
    v_pos_inf: Rat,
    tail_class: TailClass,
}

impl PiecewiseFn {
    pub fn new(
        breakpoints: Vec<Rat>,
        pieces: Vec<Poly>,
        point_values: Vec<Rat>,
        tail_class: TailClass,
    ) -> Result<Self> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(Error::Parse(format!(
                "{} breakpoints require {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                pieces.len()
            )));
        }
        if point_values.len() != breakpoints.len() {
            return Err(Error::Parse("one point value per breakpoint required".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("breakpoints must be strictly increasing".into()));
        }
        let (v_neg_inf, v_pos_inf) = match tail_class {
            TailClass::ConstantTails => {
                let lo = pieces.first().unwrap().as_constant();
                let hi = pieces.last().unwrap().as_constant();
                match (lo, hi) {
                    (Some(lo), Some(hi)) => (lo, hi),
                    _ => {
                        return Err(Error::Parse(
                            "constant-tail function has a non-constant tail piece".into(),
                        ))
                    }
                }
            }
            TailClass::PolynomialTails => (Rat::zero(), Rat::zero()),
        };
        let mut f = PiecewiseFn {
            breakpoints,
            pieces,
            point_values,
            v_neg_inf,
            v_pos_inf,
            tail_class,
        };
        f.prune();
        Ok(f)
    }

    pub(crate) fn build(
        breakpoints: Vec<Rat>,
        pieces: Vec<Poly>,
        point_values: Vec<Rat>,
        tail_class: TailClass,
    ) -> Self {
        Self::new(breakpoints, pieces, point_values, tail_class)
            .expect("internally constructed piecewise function must be valid")
    }

    /// Remove breakpoints whose removal changes nothing: identical pieces on
    /// both sides and a point value equal to their common value there.
    fn prune(&mut self) {
        let mut i = 0;
        while i < self.breakpoints.len() {
            let removable = self.pieces[i] == self.pieces[i + 1]
                && self.point_values[i] == self.pieces[i].eval(&self.breakpoints[i]);
            if removable {
                self.breakpoints.remove(i);
                self.point_values.remove(i);
                self.pieces.remove(i + 1);
            } else {
                i += 1;
            }
        }
        if self.tail_class == TailClass::ConstantTails {
            self.v_neg_inf = self.pieces.first().unwrap().as_constant().unwrap();
            self.v_pos_inf = self.pieces.last().unwrap().as_constant().unwrap();
        }
    }

    pub fn zero() -> Self {
        Self::constant(Rat::zero())
    }

    pub fn constant(c: Rat) -> Self {
        PiecewiseFn {
            breakpoints: Vec::new(),
            pieces: vec![Poly::constant(c.clone())],
            point_values: Vec::new(),
            v_neg_inf: c.clone(),
            v_pos_inf: c,
            tail_class: TailClass::ConstantTails,
        }
    }

    /// Heaviside step at 0 with value `lambda` there; `lambda = 0` is the
    /// left-continuous normalisation H_0, `lambda = 1` is H_1.
    pub fn heaviside(lambda: Rat) -> Self {
        Self::build(
            vec![Rat::zero()],
            vec![Poly::zero(), Poly::constant(rat_i(1))],
            vec![lambda],
            TailClass::ConstantTails,
        )
    }

    /// Unit step at `c` with value `v` at the jump.
    pub fn step_at(c: Rat, v: Rat) -> Self {
        Self::build(
            vec![c],
            vec![Poly::zero(), Poly::constant(rat_i(1))],
            vec![v],
            TailClass::ConstantTails,
        )
    }

    /// Indicator of the single point {c}.
    pub fn point_mass_indicator(c: Rat) -> Self {
        Self::build(
            vec![c],
            vec![Poly::zero(), Poly::zero()],
            vec![rat_i(1)],
            TailClass::ConstantTails,
        )
    }

    /// Indicator of the open interval (a, b), zero at both endpoints.
    pub fn indicator_open(a: Rat, b: Rat) -> Self {
        assert!(a < b);
        Self::build(
            vec![a, b],
            vec![Poly::zero(), Poly::constant(rat_i(1)), Poly::zero()],
            vec![Rat::zero(), Rat::zero()],
            TailClass::ConstantTails,
        )
    }

    /// Continuous ramp: 0 for x <= a, (x-a)/(b-a) on [a, b], 1 for x >= b.
    pub fn clamped_ramp(a: Rat, b: Rat) -> Self {
        assert!(a < b);
        let slope = (&b - &a).recip();
        let ramp = Poly::from_coeffs(vec![-&a * &slope, slope]);
        Self::build(
            vec![a, b],
            vec![Poly::zero(), ramp, Poly::constant(rat_i(1))],
            vec![Rat::zero(), rat_i(1)],
            TailClass::ConstantTails,
        )
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn point_values(&self) -> &[Rat] {
        &self.point_values
    }

    pub fn tail_class(&self) -> TailClass {
        self.tail_class
    }

    pub fn value_neg_inf(&self) -> &Rat {
        &self.v_neg_inf
    }

    pub fn value_pos_inf(&self) -> &Rat {
        &self.v_pos_inf
    }

    pub fn is_zero(&self) -> bool {
        self.breakpoints.is_empty() && self.pieces[0].is_zero()
    }

    /// Index of the piece whose open interval contains x, or the breakpoint
    /// index if x is a breakpoint.
    fn locate(&self, x: &Rat) -> Location {
        match self.breakpoints.binary_search(x) {
            Ok(i) => Location::Breakpoint(i),
            Err(i) => Location::Piece(i),
        }
    }

    /// Exact value at a finite point.
    pub fn eval_finite(&self, x: &Rat) -> Rat {
        match self.locate(x) {
            Location::Breakpoint(i) => self.point_values[i].clone(),
            Location::Piece(i) => self.pieces[i].eval(x),
        }
    }

    /// Exact value on the extended real line; infinite arguments require
    /// constant tails.
    pub fn eval(&self, x: &ExtReal) -> Result<Rat> {
        match x {
            ExtReal::Finite(q) => Ok(self.eval_finite(q)),
            _ if self.tail_class == TailClass::PolynomialTails => {
                Err(Error::UnboundedAtInfinity)
            }
            ExtReal::NegInf => Ok(self.v_neg_inf.clone()),
            ExtReal::PosInf => Ok(self.v_pos_inf.clone()),
        }
    }

    /// Left limit at a finite point (the stored point value is ignored).
    pub fn limit_left(&self, x: &Rat) -> Rat {
        match self.locate(x) {
            Location::Breakpoint(i) => self.pieces[i].eval(x),
            Location::Piece(i) => self.pieces[i].eval(x),
        }
    }

    /// Right limit at a finite point.
    pub fn limit_right(&self, x: &Rat) -> Rat {
        match self.locate(x) {
            Location::Breakpoint(i) => self.pieces[i + 1].eval(x),
            Location::Piece(i) => self.pieces[i].eval(x),
        }
    }

    /// Two-sided jump `f(x+) - f(x-)`.
    pub fn jump(&self, x: &Rat) -> Rat {
        self.limit_right(x) - self.limit_left(x)
    }

    /// Replace every point value by `(1 - lambda) f(x-) + lambda f(x+)`.
    pub fn normalize(&self, lambda: &Rat) -> Self {
        let point_values = self
            .breakpoints
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let left = self.pieces[i].eval(b);
                let right = self.pieces[i + 1].eval(b);
                (rat_i(1) - lambda) * left + lambda * right
            })
            .collect();
        Self::build(
            self.breakpoints.clone(),
            self.pieces.clone(),
            point_values,
            self.tail_class,
        )
    }

    /// True if the value at every breakpoint equals the left limit.
    pub fn is_left_continuous(&self) -> bool {
        self.breakpoints
            .iter()
            .enumerate()
            .all(|(i, b)| self.point_values[i] == self.pieces[i].eval(b))
    }

    /// True if the function is continuous on all of R.
    pub fn is_continuous(&self) -> bool {
        self.breakpoints.iter().enumerate().all(|(i, b)| {
            let left = self.pieces[i].eval(b);
            self.point_values[i] == left && self.pieces[i + 1].eval(b) == left
        })
    }

    /// Certified enclosure of `sup_R |f|`, point values included.
    pub fn sup_norm(&self, tol: &Rat) -> Result<Enclosure> {
        if self.tail_class == TailClass::PolynomialTails {
            return Err(Error::UnboundedAtInfinity);
        }
        let mut best = Enclosure::point(self.v_neg_inf.abs());
        best = best.max(&Enclosure::point(self.v_pos_inf.abs()));
        for v in &self.point_values {
            best = best.max(&Enclosure::point(v.abs()));
        }
        let k = self.breakpoints.len();
        for i in 1..k {
            let e = poly_sup_abs(
                &self.pieces[i],
                &ExtReal::Finite(self.breakpoints[i - 1].clone()),
                &ExtReal::Finite(self.breakpoints[i].clone()),
                tol,
            )?;
            best = best.max(&e);
        }
        Ok(best)
    }

    /// Certified enclosure of the total variation over the extended line:
    /// smooth variation of every piece plus, at each breakpoint b,
    /// `|f(b) - f(b-)| + |f(b+) - f(b)|`.
    pub fn variation(&self, tol: &Rat) -> Result<Enclosure> {
        if self.tail_class == TailClass::PolynomialTails {
            return Err(Error::UnboundedAtInfinity);
        }
        let k = self.breakpoints.len();
        let mut total = Enclosure::point(Rat::zero());
        let piece_tol = if k > 1 { tol / rat_i((k - 1) as i64) } else { tol.clone() };
        for i in 1..k {
            let v = poly_variation_on(
                &self.pieces[i],
                &self.breakpoints[i - 1],
                &self.breakpoints[i],
                &piece_tol,
            )?;
            total = total.add(&v);
        }
        for (i, b) in self.breakpoints.iter().enumerate() {
            let left = self.pieces[i].eval(b);
            let right = self.pieces[i + 1].eval(b);
            let v = &self.point_values[i];
            total = total.add(&Enclosure::point((v - left).abs() + (right - v).abs()));
        }
        Ok(total)
    }

    /// Pointwise combination on the merged breakpoint grid.
    fn zip_with(
        &self,
        other: &Self,
        poly_op: impl Fn(&Poly, &Poly) -> Poly,
        val_op: impl Fn(&Rat, &Rat) -> Rat,
    ) -> Self {
        let grid = merge_grids(&self.breakpoints, &other.breakpoints);
        let mut pieces = Vec::with_capacity(grid.len() + 1);
        let mut point_values = Vec::with_capacity(grid.len());
        for region in 0..=grid.len() {
            let lo = region.checked_sub(1).map(|j| &grid[j]);
            let a = self.piece_covering(lo);
            let b = other.piece_covering(lo);
            pieces.push(poly_op(a, b));
        }
        for bp in &grid {
            point_values.push(val_op(&self.eval_finite(bp), &other.eval_finite(bp)));
        }
        let tail_class = if self.tail_class == TailClass::ConstantTails
            && other.tail_class == TailClass::ConstantTails
        {
            TailClass::ConstantTails
        } else {
            TailClass::PolynomialTails
        };
        Self::build(grid, pieces, point_values, tail_class)
    }

    /// The piece valid on the open region whose left end is `lo` (None for
    /// the leftmost tail).
    pub(crate) fn piece_covering(&self, lo: Option<&Rat>) -> &Poly {
        let idx = match lo {
            None => 0,
            Some(x) => self.breakpoints.partition_point(|b| b <= x),
        };
        &self.pieces[idx]
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.add(b), |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.sub(b), |a, b| a - b)
    }

    pub fn multiply(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.mul(b), |a, b| a * b)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::build(
            self.breakpoints.clone(),
            self.pieces.iter().map(|p| p.scale(k)).collect(),
            self.point_values.iter().map(|v| v * k).collect(),
            self.tail_class,
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat_i(-1))
    }

    /// The function x -> f(a x + b); breakpoints map through the inverse
    /// substitution, orientation reverses when a < 0.
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::DegenerateAffine);
        }
        let mut breakpoints: Vec<Rat> =
            self.breakpoints.iter().map(|c| (c - b) / a).collect();
        let mut pieces: Vec<Poly> =
            self.pieces.iter().map(|p| p.compose_affine(a, b)).collect();
        let mut point_values = self.point_values.clone();
        if a.is_negative() {
            breakpoints.reverse();
            pieces.reverse();
            point_values.reverse();
        }
        Ok(Self::build(breakpoints, pieces, point_values, self.tail_class))
    }

    /// x -> f(x - t).
    pub fn translate(&self, t: &Rat) -> Self {
        self.compose_affine(&rat_i(1), &-t.clone())
            .expect("slope 1 is never degenerate")
    }

    /// Pointwise max; exact when every crossing of f - g is rational (always
    /// the case for pieces of degree <= 1), otherwise crossings are placed
    /// within `tol` of the isolated root and the flag comes back false.
    pub fn pointwise_max(&self, other: &Self, tol: &Rat) -> Result<(Self, bool)> {
        self.lattice_select(other, tol, true)
    }

    pub fn pointwise_min(&self, other: &Self, tol: &Rat) -> Result<(Self, bool)> {
        self.lattice_select(other, tol, false)
    }

    fn lattice_select(&self, other: &Self, tol: &Rat, take_larger: bool) -> Result<(Self, bool)> {
        if self.tail_class == TailClass::PolynomialTails
            || other.tail_class == TailClass::PolynomialTails
        {
            return Err(Error::UnboundedAtInfinity);
        }
        let grid = merge_grids(&self.breakpoints, &other.breakpoints);
        let mut exact = true;
        let mut breakpoints: Vec<Rat> = Vec::new();
        let mut pieces: Vec<Poly> = Vec::new();
        let mut point_values: Vec<Rat> = Vec::new();
        let val_op = |a: &Rat, b: &Rat| -> Rat {
            let bigger = a >= b;
            if bigger == take_larger { a.clone() } else { b.clone() }
        };

        for region in 0..=grid.len() {
            let lo = region.checked_sub(1).map(|j| grid[j].clone());
            let hi = grid.get(region).cloned();
            let pa = self.piece_covering(lo.as_ref()).clone();
            let pb = other.piece_covering(lo.as_ref()).clone();
            let d = pa.sub(&pb);

            // split the region at sign changes of d
            let mut cuts: Vec<(Rat, i8)> = Vec::new(); // (crossing x, sign after)
            let lead_sign: i8;
            if d.is_zero() {
                lead_sign = 0;
            } else {
                match (&lo, &hi) {
                    (Some(lo), Some(hi)) => {
                        let roots = isolate_roots(&d, lo, hi)?;
                        let first_probe = match roots.first() {
                            Some(r) if r.is_exact() => (lo + &r.lo) / rat_i(2),
                            Some(r) => r.lo.clone(),
                            None => (lo + hi) / rat_i(2),
                        };
                        lead_sign = d.sign_at(&first_probe);
                        let mut prev_sign = lead_sign;
                        for (ri, r) in roots.iter().enumerate() {
                            // sign after this root: probe between it and the next
                            let probe = match roots.get(ri + 1) {
                                Some(next) if next.is_exact() => (&r.hi + &next.lo) / rat_i(2),
                                Some(next) => next.lo.clone(),
                                None => (&r.hi + hi) / rat_i(2),
                            };
                            let after = d.sign_at(&probe);
                            if after != prev_sign && after != 0 && prev_sign != 0 {
                                let cut = if r.is_exact() {
                                    r.lo.clone()
                                } else {
                                    exact = false;
                                    let mut rr = r.clone();
                                    rr.refine(&d.square_free_part(), tol);
                                    rr.midpoint()
                                };
                                cuts.push((cut, after));
                            }
                            if after != 0 {
                                prev_sign = after;
                            }
                        }
                    }
                    // infinite tails: both pieces constant, sign is global
                    _ => {
                        lead_sign = d
                            .as_constant()
                            .map(|c| {
                                if c.is_zero() { 0 } else if c.is_positive() { 1 } else { -1 }
                            })
                            .expect("constant tails");
                    }
                }
            }

            let choose = |sign: i8| -> Poly {
                let take_a = match sign {
                    0 => true,
                    s => (s > 0) == take_larger,
                };
                if take_a { pa.clone() } else { pb.clone() }
            };

            if let Some(lo) = lo {
                breakpoints.push(lo.clone());
                point_values.push(val_op(&self.eval_finite(&lo), &other.eval_finite(&lo)));
            }
            pieces.push(choose(lead_sign));
            for (cut, after) in cuts {
                let pv = val_op(&self.eval_finite(&cut), &other.eval_finite(&cut));
                breakpoints.push(cut);
                point_values.push(pv);
                pieces.push(choose(after));
            }
        }
        let f = Self::build(breakpoints, pieces, point_values, TailClass::ConstantTails);
        Ok((f, exact))
    }

    /// f64 evaluation for the numeric validation layer (point values at
    /// breakpoints are honoured only when x hits one exactly in f64;
    /// infinite arguments read the stored tail values).
    pub fn eval_f64(&self, x: f64) -> f64 {
        if x == f64::NEG_INFINITY {
            return crate::numeric::rat_to_f64(&self.v_neg_inf);
        }
        if x == f64::INFINITY {
            return crate::numeric::rat_to_f64(&self.v_pos_inf);
        }
        let mut idx = self.breakpoints.len();
        for (i, b) in self.breakpoints.iter().enumerate() {
            let bf = crate::numeric::rat_to_f64(b);
            if x == bf {
                return crate::numeric::rat_to_f64(&self.point_values[i]);
            }
            if x < bf {
                idx = i;
                break;
            }
        }
        self.pieces[idx].eval_f64(x)
    }
}

enum Location {
    Breakpoint(usize),
    Piece(usize),
}

fn merge_grids(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => {
                if x < y {
                    out.push(x.clone());
                    i += 1;
                } else if y < x {
                    out.push(y.clone());
                    j += 1;
                } else {
                    out.push(x.clone());
                    i += 1;
                    j += 1;
                }
            }
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(y)) => {
                out.push(y.clone());
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}
