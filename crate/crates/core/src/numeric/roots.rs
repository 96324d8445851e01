//! Real root isolation via Sturm sequences with rational bisection.
//! Irrational roots are never materialised, only enclosed in intervals with
//! rational endpoints; rational roots are detected exactly where possible.

use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::{rat_i, Rat};
use crate::error::{Error, Result};

/// Direction of the sign change across an isolated simple root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignDir {
    Rising,
    Falling,
}

/// Encloses exactly one distinct real root of the polynomial it was isolated
/// from.  `lo == hi` is a degenerate interval pinning an exact rational root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub direction: Option<SignDir>,
}

impl IsolatingInterval {
    pub fn exact(root: Rat) -> Self {
        IsolatingInterval { lo: root.clone(), hi: root, direction: None }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_i(2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Bisect until the interval is narrower than `width` (checking for an
    /// exact rational hit along the way).  `p` must be the square-free
    /// polynomial the interval was isolated from, or any polynomial with the
    /// same single simple root in the interval.
    pub fn refine(&mut self, p: &Poly, width: &Rat) {
        if self.is_exact() {
            return;
        }
        let sign_lo = p.sign_at(&self.lo);
        debug_assert!(sign_lo != 0 && p.sign_at(&self.hi) == -sign_lo);
        while self.width() > *width {
            let mid = self.midpoint();
            match p.sign_at(&mid) {
                0 => {
                    self.lo = mid.clone();
                    self.hi = mid;
                    self.direction = None;
                    return;
                }
                s if s == sign_lo => self.lo = mid,
                _ => self.hi = mid,
            }
        }
    }
}

/// Sturm chain of a square-free polynomial.
fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].divmod(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &Rat) -> usize {
    let mut count = 0;
    let mut prev: i8 = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s != 0 {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
    }
    count
}

/// Number of distinct roots in (a, b]; standard Sturm count.
fn count_roots(chain: &[Poly], a: &Rat, b: &Rat) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// Simplest rational strictly between lo and hi (smallest denominator,
/// then smallest numerator), via the Stern-Brocot / continued-fraction walk.
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo < hi);
    if lo.is_negative() && hi.is_positive() {
        return Rat::zero();
    }
    if lo.is_zero() {
        // simplest in (0, hi) is 1/k with the smallest admissible k
        let inv = hi.recip();
        let k = inv.floor() + Rat::one();
        return k.recip();
    }
    if hi.is_zero() || hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    // 0 < lo < hi
    let fl = lo.floor();
    if *hi > &fl + Rat::one() {
        return fl + Rat::one();
    }
    let a = lo - &fl;
    let b = hi - &fl;
    if a.is_zero() {
        let inv = b.recip();
        let k = inv.floor() + Rat::one();
        return fl + k.recip();
    }
    fl + simplest_between(&b.recip(), &a.recip()).recip()
}

const EXACT_PROBE_STEPS: u32 = 64;

/// Shrink a bracket known to contain exactly one simple root of `q` in the
/// open interval (lo, hi), probing for exact rational roots.
fn bracket_root(q: &Poly, mut lo: Rat, mut hi: Rat) -> IsolatingInterval {
    if q.degree() == Some(1) {
        let root = -(&q.coeffs()[0] / &q.coeffs()[1]);
        debug_assert!(lo < root && root < hi);
        return IsolatingInterval::exact(root);
    }
    let sign_lo = q.sign_at(&lo);
    debug_assert!(sign_lo != 0 && q.sign_at(&hi) == -sign_lo);
    for _ in 0..EXACT_PROBE_STEPS {
        let cand = simplest_between(&lo, &hi);
        if q.sign_at(&cand) == 0 {
            return IsolatingInterval::exact(cand);
        }
        let mid = (&lo + &hi) / rat_i(2);
        match q.sign_at(&mid) {
            0 => return IsolatingInterval::exact(mid),
            s if s == sign_lo => lo = mid,
            _ => hi = mid,
        }
    }
    let direction = Some(if sign_lo < 0 { SignDir::Rising } else { SignDir::Falling });
    IsolatingInterval { lo, hi, direction }
}

fn isolate_rec(q: &Poly, chain: &[Poly], a: &Rat, b: &Rat, out: &mut Vec<IsolatingInterval>) {
    let cnt = count_roots(chain, a, b);
    if cnt == 0 {
        return;
    }
    if cnt == 1 {
        out.push(bracket_root(q, a.clone(), b.clone()));
        return;
    }
    let mid = (a + b) / rat_i(2);
    if q.sign_at(&mid) == 0 {
        // exact root at the midpoint; deflate and redo both halves
        let (deflated, rem) = q.divmod(&Poly::from_coeffs(vec![-mid.clone(), Rat::one()]));
        debug_assert!(rem.is_zero());
        let sub_chain = sturm_chain(&deflated);
        isolate_rec(&deflated, &sub_chain, a, &mid, out);
        out.push(IsolatingInterval::exact(mid.clone()));
        isolate_rec(&deflated, &sub_chain, &mid, b, out);
        return;
    }
    isolate_rec(q, chain, a, &mid, out);
    isolate_rec(q, chain, &mid, b, out);
}

/// Disjoint isolating intervals covering exactly the distinct real roots of
/// `p` in the open interval (a, b), in increasing order.
pub fn isolate_roots(p: &Poly, a: &Rat, b: &Rat) -> Result<Vec<IsolatingInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a >= b || p.is_constant() {
        return Ok(Vec::new());
    }
    let mut q = p.square_free_part();
    // roots exactly at the window edges are excluded from the open window
    for edge in [a, b] {
        while q.sign_at(edge) == 0 {
            let (d, rem) = q.divmod(&Poly::from_coeffs(vec![-edge.clone(), Rat::one()]));
            debug_assert!(rem.is_zero());
            q = d;
        }
    }
    if q.is_constant() {
        return Ok(Vec::new());
    }
    let chain = sturm_chain(&q);
    let mut out = Vec::new();
    isolate_rec(&q, &chain, a, b, &mut out);
    Ok(out)
}
