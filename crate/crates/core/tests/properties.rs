//! Property suites: lattice/algebra laws on random corpora, norm and
//! integral invariants, oracle agreement, and serialization round-trips.

mod common;

use common::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use rpint_core::distribution::{
    alexiewicz_norm, dirac_derivative, dual_norm_estimate, integrate, translate, Distribution,
};
use rpint_core::lattice::{abs_value, jordan, m_space_check, order_leq, product, Tri};
use rpint_core::numeric::extrema::poly_sup_abs;
use rpint_core::numeric::poly::Poly;
use rpint_core::numeric::roots::isolate_roots;
use rpint_core::numeric::{rat_to_f64, ExtReal};
use rpint_core::oracle::{numeric_integral, numeric_sup_norm, NumericFn};
use rpint_core::serial::{piecewise_from_json, piecewise_to_json};
use rpint_core::spaces::{ibvn_norm, inverse_in, iterate_integral};
use rpint_core::stieltjes::{gauge_oracle, hs_integral, hs_integral_closed, hs_integral_g_df};
use rpint_core::{
    rat, rat_i, BVFunction, Enclosure, Multiplier, PiecewiseFn, Rat, RegulatedPrimitive,
    TailClass,
};

fn tol() -> Rat {
    rat(1, 1_000_000_000)
}

// ---------------------------------------------------------------- piecewise

#[test]
fn left_continuity_of_zero_normalisation() {
    let mut r = rng(21);
    for _ in 0..20 {
        let f = rand_bv(&mut r, 6, 3).normalize(&Rat::zero());
        for b in f.breakpoints() {
            assert_eq!(f.eval_finite(b), f.limit_left(b));
        }
    }
}

#[test]
fn variation_subadditive_and_sup_submultiplicative() {
    let mut r = rng(22);
    for _ in 0..25 {
        let f = rand_primitive_linear(&mut r, 5);
        let g = rand_primitive_linear(&mut r, 5);
        let vf = f.variation(&tol()).unwrap();
        let vg = g.variation(&tol()).unwrap();
        let vsum = f.add(&g).variation(&tol()).unwrap();
        assert!(vsum.lo <= &vf.hi + &vg.hi);

        let nf = f.sup_norm(&tol()).unwrap();
        let ng = g.sup_norm(&tol()).unwrap();
        let nprod = f.multiply(&g).sup_norm(&tol()).unwrap();
        assert!(nprod.hi <= &nf.hi * &ng.hi);
    }
}

#[test]
fn affine_involution_on_random_functions() {
    let mut r = rng(23);
    for _ in 0..25 {
        let f = rand_bv(&mut r, 5, 3);
        let mut a = rand_rat(&mut r, 4, 3);
        if a.is_zero() {
            a = rat(1, 2);
        }
        let b = rand_rat(&mut r, 4, 3);
        let back = f
            .compose_affine(&a, &b)
            .unwrap()
            .compose_affine(&a.clone().recip(), &(-&b / &a))
            .unwrap();
        assert_eq!(back, f);
    }
}

#[test]
fn pointwise_max_agrees_with_sampling() {
    let mut r = rng(24);
    for _ in 0..2 {
        let f = rand_primitive_linear(&mut r, 5);
        let g = rand_primitive_linear(&mut r, 5);
        let (mx, exact) = f.pointwise_max(&g, &tol()).unwrap();
        let (mn, exact2) = f.pointwise_min(&g, &tol()).unwrap();
        assert!(exact && exact2);
        for k in -5000i64..5000 {
            let x = rat(k, 500);
            let (a, b) = (f.eval_finite(&x), g.eval_finite(&x));
            assert_eq!(mx.eval_finite(&x), a.clone().max(b.clone()));
            assert_eq!(mn.eval_finite(&x), a.min(b));
        }
    }
}

// ------------------------------------------------------------------- spaces

#[test]
fn inverse_bijection_on_normalised_inputs() {
    let mut r = rng(31);
    for _ in 0..100 {
        let lambda = rand_lambda(&mut r);
        let g = BVFunction::normalized(rand_bv(&mut r, 6, 1), lambda.clone()).unwrap();
        for n in 1u32..=4 {
            let h = iterate_integral(&g, n);
            let back = inverse_in(&h, n, &lambda).unwrap();
            assert_eq!(back.as_fn(), g.as_fn());
        }
    }
}

#[test]
fn iterated_integral_ignores_normalisation() {
    let mut r = rng(32);
    for _ in 0..20 {
        let base = rand_bv(&mut r, 5, 2);
        let mut images = Vec::new();
        for lambda in [rat_i(0), rat(1, 2), rat_i(1)] {
            let g = BVFunction::normalized(base.clone(), lambda).unwrap();
            images.push(iterate_integral(&g, 2));
        }
        assert!(images.windows(2).all(|w| w[0] == w[1]));
        let plain = iterate_integral(&BVFunction::plain(base).unwrap(), 2);
        assert_eq!(plain, images[0]);
    }
}

// ------------------------------------------------------------- distribution

/// Exact interpolation through deg+1 points; test-side oracle used to
/// rebuild a primitive from reconstructed samples.
fn lagrange(points: &[(Rat, Rat)]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut term = Poly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi - xj;
            term = term.mul(&Poly::from_coeffs(vec![-xj / &denom, denom.recip()]));
        }
        acc = acc.add(&term);
    }
    acc
}

#[test]
fn ftc_reconstruction_rebuilds_the_primitive() {
    let mut r = rng(41);
    for _ in 0..5 {
        let f_fn = rand_primitive_br(&mut r, 4, 3);
        let n = r.random_range(1..=3u32);
        let f = Distribution::new(n, RegulatedPrimitive::validate(f_fn.clone()).unwrap());

        // rebuild every piece of the primitive from pointwise reconstruction
        let breaks = f_fn.breakpoints();
        let mut rebuilt_pieces = Vec::new();
        for i in 0..f_fn.pieces().len() {
            let (lo, hi) = match (i.checked_sub(1).map(|j| &breaks[j]), breaks.get(i)) {
                (None, Some(b)) => (b - rat_i(2), b.clone()),
                (Some(a), Some(b)) => (a.clone(), b.clone()),
                (Some(a), None) => (a.clone(), a + rat_i(2)),
                (None, None) => (rat_i(-1), rat_i(1)),
            };
            let deg = f_fn.pieces()[i].degree().unwrap_or(0);
            let mut samples = Vec::new();
            for k in 1..=(deg + 1) {
                let x = &lo + (&hi - &lo) * rat(k as i64, deg as i64 + 2);
                samples.push((x.clone(), reconstruct_at(&f, &x)));
            }
            rebuilt_pieces.push(lagrange(&samples));
        }
        let rebuilt_values: Vec<Rat> =
            breaks.iter().map(|b| reconstruct_at(&f, b)).collect();
        let rebuilt = PiecewiseFn::new(
            breaks.to_vec(),
            rebuilt_pieces,
            rebuilt_values,
            TailClass::ConstantTails,
        )
        .unwrap();
        assert_eq!(rebuilt, f_fn);
    }
}

fn reconstruct_at(f: &Distribution, x: &Rat) -> Rat {
    rpint_core::distribution::reconstruct(f, x)
}

#[test]
fn integrate_is_bilinear() {
    let mut r = rng(42);
    for _ in 0..25 {
        let n = r.random_range(1..=3u32);
        let f1 = rand_distribution(&mut r, n, 4, 2);
        let f2 = rand_distribution(&mut r, n, 4, 2);
        let lam = rand_lambda(&mut r);
        let g1 = BVFunction::normalized(rand_bv(&mut r, 4, 2), lam.clone()).unwrap();
        let g2 = BVFunction::normalized(rand_bv(&mut r, 4, 2), lam.clone()).unwrap();
        let c = rand_rat(&mut r, 3, 2);

        let m1 = Multiplier::new(n - 1, g1.clone(), Some(lam.clone())).unwrap();
        let m2 = Multiplier::new(n - 1, g2.clone(), Some(lam.clone())).unwrap();

        // linear in f
        let lhs = integrate(&f1.add(&f2.scale(&c)).unwrap(), &m1, &lam).unwrap();
        let rhs = integrate(&f1, &m1, &lam).unwrap()
            + c.clone() * integrate(&f2, &m1, &lam).unwrap();
        assert_eq!(lhs, rhs);

        // linear in the kernel
        let combined = BVFunction::normalized(
            g1.as_fn().add(&g2.as_fn().scale(&c)),
            lam.clone(),
        )
        .unwrap();
        let mc = Multiplier::new(n - 1, combined, Some(lam.clone())).unwrap();
        let lhs = integrate(&f1, &mc, &lam).unwrap();
        let rhs = integrate(&f1, &m1, &lam).unwrap()
            + c * integrate(&f1, &m2, &lam).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn translation_preserves_norm() {
    let mut r = rng(43);
    // exact norms (piecewise-linear primitives): enclosures match exactly
    for _ in 0..20 {
        let f = Distribution::new(
            2,
            RegulatedPrimitive::validate(rand_primitive_linear(&mut r, 5)).unwrap(),
        );
        let t = rand_rat(&mut r, 6, 4);
        let shifted = translate(&f, &t);
        let (ns, nf) = (alexiewicz_norm(&shifted, &tol()), alexiewicz_norm(&f, &tol()));
        assert!(ns.is_exact() && nf.is_exact());
        assert_eq!(ns, nf);
        assert_eq!(translate(&shifted, &(-t)), f);
    }
    // certified norms (cubic pieces, irrational critical points): both
    // enclosures bracket the same translation-invariant supremum
    for _ in 0..10 {
        let f = rand_distribution(&mut r, 2, 5, 3);
        let t = rand_rat(&mut r, 6, 4);
        let ns = alexiewicz_norm(&translate(&f, &t), &tol());
        let nf = alexiewicz_norm(&f, &tol());
        assert!(ns.overlaps(&nf), "{ns} vs {nf}");
        assert!(ns.width() <= tol() && nf.width() <= tol());
    }
}

#[test]
fn norm_continuity_in_the_continuous_subspace() {
    let mut r = rng(44);
    for _ in 0..5 {
        let f_fn = rand_primitive_bc(&mut r, 4, 3);
        if f_fn.is_zero() {
            continue;
        }
        // Lipschitz bound sup |F'| over the pieces
        let mut lip = Enclosure::point(Rat::zero());
        let k = f_fn.breakpoints().len();
        for i in 1..k {
            let d = f_fn.pieces()[i].derivative();
            let e = poly_sup_abs(
                &d,
                &ExtReal::Finite(f_fn.breakpoints()[i - 1].clone()),
                &ExtReal::Finite(f_fn.breakpoints()[i].clone()),
                &tol(),
            )
            .unwrap();
            lip = lip.max(&e);
        }
        let f = Distribution::new(1, RegulatedPrimitive::validate(f_fn).unwrap());
        let mut prev: Option<Rat> = None;
        for kk in 0..=10u32 {
            let t = rat(1, 1 << kk);
            let e = alexiewicz_norm(&f.sub(&translate(&f, &t)).unwrap(), &tol());
            // bounded by the Lipschitz estimate, hence -> 0
            assert!(e.lo <= &lip.hi * &t + tol());
            if let Some(p) = prev {
                assert!(e.lo <= p + tol());
            }
            prev = Some(e.hi);
        }
    }

    // and the step counterexample: the distance stays pinned at 1
    let d = dirac_derivative(0);
    for kk in 0..=6u32 {
        let t = rat(1, 1 << kk);
        let e = alexiewicz_norm(&d.sub(&translate(&d, &t)).unwrap(), &tol());
        assert_eq!(e, Enclosure::point(rat_i(1)));
    }
}

#[test]
fn convergence_theorem_bound() {
    let mut r = rng(45);
    let n = 2u32;
    let lam = rat(1, 2);
    let f = rand_distribution(&mut r, n, 4, 2);
    let d = rand_distribution(&mut r, n, 4, 2);
    let g = BVFunction::normalized(rand_bv(&mut r, 4, 2), lam.clone()).unwrap();
    let e = BVFunction::normalized(rand_bv(&mut r, 4, 2), lam.clone()).unwrap();
    let m = Multiplier::new(n - 1, g.clone(), Some(lam.clone())).unwrap();
    let base = integrate(&f, &m, &lam).unwrap();

    let mut bounds = Vec::new();
    for k in 0..=8u32 {
        let step = rat(1, 1i64 << k);
        let fk = f.add(&d.scale(&step)).unwrap();
        let gk = BVFunction::normalized(
            g.as_fn().add(&e.as_fn().scale(&step)),
            lam.clone(),
        )
        .unwrap();
        let mk = Multiplier::new(n - 1, gk, Some(lam.clone())).unwrap();
        let value = integrate(&fk, &mk, &lam).unwrap();

        let df = alexiewicz_norm(&fk.sub(&f).unwrap(), &tol());
        let diff_kernel = Multiplier::new(
            n - 1,
            BVFunction::normalized(e.as_fn().scale(&step), lam.clone()).unwrap(),
            Some(lam.clone()),
        )
        .unwrap();
        let dh = ibvn_norm(&diff_kernel, &tol()).unwrap();
        let nf = alexiewicz_norm(&f, &tol());
        let nhk = ibvn_norm(&mk, &tol()).unwrap();
        let bound = &df.hi * &nhk.hi + &nf.hi * &dh.hi;
        assert!((&value - &base).abs() <= bound);
        bounds.push(bound);
    }
    // the Holder bound itself collapses geometrically
    assert!(bounds[8].clone() * rat_i(100) <= bounds[0].clone() * rat_i(256));
}

#[test]
fn lambda_only_matters_for_jumpy_primitives() {
    let mut r = rng(46);
    for _ in 0..10 {
        let n = 2u32;
        let f_fn = rand_primitive_bc(&mut r, 4, 2);
        let f = Distribution::new(n, RegulatedPrimitive::validate(f_fn).unwrap());
        let base_g = rand_bv(&mut r, 4, 2);
        let mut values = Vec::new();
        for lam in [rat_i(0), rat(1, 2), rat_i(1)] {
            let m = Multiplier::from_bv(n - 1, base_g.clone(), lam.clone()).unwrap();
            values.push(integrate(&f, &m, &lam).unwrap());
        }
        assert!(values.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn higher_dirac_derivatives_evaluate_the_kernel_at_zero() {
    // integrate(delta^(m), I^m[g]) = (-1)^m g(0) for normalised g
    let mut r = rng(54);
    for _ in 0..20 {
        let m_ord = r.random_range(0..=3u32);
        let lam = rand_lambda(&mut r);
        let g = BVFunction::normalized(rand_bv(&mut r, 4, 2), lam.clone()).unwrap();
        let mult = Multiplier::new(m_ord, g.clone(), Some(lam.clone())).unwrap();
        let value = integrate(&dirac_derivative(m_ord), &mult, &lam).unwrap();
        let sign = if m_ord.is_multiple_of(2) { rat_i(1) } else { rat_i(-1) };
        assert_eq!(value, sign * g.as_fn().eval_finite(&Rat::zero()));
    }
}

#[test]
fn product_against_a_cutoff_kernel_evaluates_the_boundary() {
    // with the right-continuous kernel chi_(-inf, a), the product integral
    // collapses to (-1)^(n-1) F1(a) F2(a); at first order this is the
    // product identity for integrals over (-inf, a)
    let mut r = rng(55);
    for _ in 0..15 {
        let n = r.random_range(1..=3u32);
        let f1 = rand_distribution(&mut r, n, 4, 2);
        let f2 = rand_distribution(&mut r, n, 4, 2);
        let a = rand_rat(&mut r, 6, 3);
        let cutoff = PiecewiseFn::constant(rat_i(1))
            .sub(&PiecewiseFn::step_at(a.clone(), rat_i(1)));
        let m = Multiplier::from_bv(n - 1, cutoff, rat_i(1)).unwrap();
        let value = integrate(&product(&f1, &f2).unwrap(), &m, &rat_i(1)).unwrap();
        let sign = if (n - 1).is_multiple_of(2) { rat_i(1) } else { rat_i(-1) };
        let expect = sign
            * f1.primitive().as_fn().eval_finite(&a)
            * f2.primitive().as_fn().eval_finite(&a);
        assert_eq!(value, expect, "n={n}");
    }
}

#[test]
fn route_agreement_explicit() {
    let mut r = rng(47);
    for _ in 0..30 {
        let n = r.random_range(1..=3u32);
        let f = rand_distribution(&mut r, n, 4, 2);
        let m = rand_multiplier(&mut r, n - 1, 4, 2);
        let lam = m.lambda().cloned().unwrap();
        let sign = if (n - 1).is_multiple_of(2) { rat_i(1) } else { rat_i(-1) };
        let via_swap =
            sign * hs_integral_g_df(m.g().as_fn(), f.primitive().as_fn()).unwrap();
        assert_eq!(integrate(&f, &m, &lam).unwrap(), via_swap);
    }
}

#[test]
fn dual_norm_estimate_is_bounded() {
    let mut r = rng(48);
    for _ in 0..10 {
        let n = r.random_range(1..=2u32);
        let f = rand_distribution(&mut r, n, 4, 2);
        let est = dual_norm_estimate(&f, 8, &tol());
        let norm = alexiewicz_norm(&f, &tol());
        assert!(est <= norm.hi * rat_i(2));
        assert!(!est.is_negative());
    }
}

#[test]
fn test_function_pairing_respects_the_operator_bound() {
    // |<f, phi>| <= ||F||_inf |K| ||phi^(n)||_inf for a spline-like phi
    let mut r = rng(49);
    // cardinal cubic B-spline scaled and shifted: C^2, supports order <= 3
    let base = {
        let p1 = Poly::from_coeffs(vec![rat(4, 3), rat_i(2), rat_i(1), rat(1, 6)]);
        let p2 = Poly::from_coeffs(vec![rat(2, 3), rat_i(0), rat_i(-1), rat(-1, 2)]);
        let p3 = Poly::from_coeffs(vec![rat(2, 3), rat_i(0), rat_i(-1), rat(1, 2)]);
        let p4 = Poly::from_coeffs(vec![rat(4, 3), rat_i(-2), rat_i(1), rat(-1, 6)]);
        PiecewiseFn::new(
            vec![rat_i(-2), rat_i(-1), rat_i(0), rat_i(1), rat_i(2)],
            vec![Poly::zero(), p1, p2, p3, p4, Poly::zero()],
            vec![rat_i(0), rat(1, 6), rat(2, 3), rat(1, 6), rat_i(0)],
            TailClass::ConstantTails,
        )
        .unwrap()
    };
    for _ in 0..10 {
        let n = r.random_range(1..=3u32);
        let f = rand_distribution(&mut r, n, 4, 2);
        let shift = rand_rat(&mut r, 3, 2);
        let scale = rand_rat(&mut r, 2, 2);
        let phi = base.translate(&shift).scale(&scale);
        let value = rpint_core::distribution::pair_test_function(&f, &phi).unwrap();

        let norm_f = alexiewicz_norm(&f, &tol());
        let support = rat_i(4); // |K| for the translated spline
        let mut dn_sup = Enclosure::point(Rat::zero());
        let k = phi.breakpoints().len();
        for i in 1..k {
            let d = phi.pieces()[i].nth_derivative(n);
            let e = poly_sup_abs(
                &d,
                &ExtReal::Finite(phi.breakpoints()[i - 1].clone()),
                &ExtReal::Finite(phi.breakpoints()[i].clone()),
                &tol(),
            )
            .unwrap();
            dn_sup = dn_sup.max(&e);
        }
        assert!(value.abs() <= norm_f.hi * support * dn_sup.hi);
    }
}

#[test]
fn order_relation_is_antisymmetric() {
    let mut r = rng(50);
    for _ in 0..20 {
        let f = Distribution::new(
            1,
            RegulatedPrimitive::validate(rand_primitive_linear(&mut r, 4)).unwrap(),
        );
        let g = Distribution::new(
            1,
            RegulatedPrimitive::validate(rand_primitive_linear(&mut r, 4)).unwrap(),
        );
        assert_eq!(order_leq(&f, &f, &tol()).unwrap(), Tri::True);
        let fwd = order_leq(&f, &g, &tol()).unwrap();
        let bwd = order_leq(&g, &f, &tol()).unwrap();
        if fwd == Tri::True && bwd == Tri::True {
            assert_eq!(f, g, "mutual order forces canonical equality");
        }
    }
}

// ----------------------------------------------------------- lattice laws

#[test]
fn m_space_on_random_nonnegative_pairs() {
    let mut r = rng(51);
    for _ in 0..30 {
        let f1 = abs_value(
            &Distribution::new(
                1,
                RegulatedPrimitive::validate(rand_primitive_linear(&mut r, 4)).unwrap(),
            ),
            &tol(),
        );
        let f2 = abs_value(
            &Distribution::new(
                1,
                RegulatedPrimitive::validate(rand_primitive_linear(&mut r, 4)).unwrap(),
            ),
            &tol(),
        );
        assert!(f1.exact && f2.exact);
        assert!(m_space_check(&f1.value, &f2.value, &tol()).unwrap());
    }
}

#[test]
fn algebra_laws_on_random_corpus() {
    let mut r = rng(52);
    for _ in 0..25 {
        let n = r.random_range(1..=2u32);
        let f1 = rand_distribution(&mut r, n, 4, 2);
        let f2 = rand_distribution(&mut r, n, 4, 2);
        let f3 = rand_distribution(&mut r, n, 4, 2);
        let p12 = product(&f1, &f2).unwrap();
        assert_eq!(p12, product(&f2, &f1).unwrap(), "commutative");
        assert_eq!(
            product(&p12, &f3).unwrap(),
            product(&f1, &product(&f2, &f3).unwrap()).unwrap(),
            "associative"
        );
        assert_eq!(
            product(&f1, &f2.add(&f3).unwrap()).unwrap(),
            product(&f1, &f2).unwrap().add(&product(&f1, &f3).unwrap()).unwrap(),
            "distributive"
        );
        let nf = alexiewicz_norm(&f1, &tol());
        let ng = alexiewicz_norm(&f2, &tol());
        let np = alexiewicz_norm(&p12, &tol());
        assert!(np.lo <= &nf.hi * &ng.hi, "submultiplicative");
    }
}

#[test]
fn jordan_split_respects_integrals() {
    let mut r = rng(53);
    for _ in 0..15 {
        let n = r.random_range(1..=2u32);
        let f = Distribution::new(
            n,
            RegulatedPrimitive::validate(rand_primitive_linear(&mut r, 4)).unwrap(),
        );
        let (plus, minus) = jordan(&f, &tol());
        let m = rand_multiplier(&mut r, n - 1, 4, 1);
        let lam = m.lambda().cloned().unwrap();
        assert_eq!(
            integrate(&f, &m, &lam).unwrap(),
            integrate(&plus.value, &m, &lam).unwrap()
                - integrate(&minus.value, &m, &lam).unwrap()
        );
        // norms of the halves never exceed the norm of f
        let nf = alexiewicz_norm(&f, &tol());
        for half in [&plus.value, &minus.value] {
            assert!(alexiewicz_norm(half, &tol()).hi <= nf.hi);
        }
    }
}

// ------------------------------------------------------------------ oracle

#[test]
fn gauge_oracle_error_is_nonincreasing() {
    let mut r = rng(61);
    for _ in 0..5 {
        let f = rand_primitive_desk(&mut r, 4);
        let g = rand_bv_desk(&mut r, 4);
        let exact = rat_to_f64(&hs_integral(&f, &g).unwrap());
        let mut prev = f64::INFINITY;
        for level in [4u32, 6, 8, 10, 12, 14] {
            let err = (gauge_oracle(&f, &g, level) - exact).abs();
            assert!(
                err <= prev + 1e-12,
                "error grew from {prev} to {err} at level {level}"
            );
            prev = err;
        }
        assert!(prev <= 1e-6);
    }
}

#[test]
fn numeric_layer_agrees_with_exact_engine() {
    let mut r = rng(62);
    for _ in 0..10 {
        let f = rand_primitive_bc(&mut r, 4, 2);
        let nf = NumericFn::from_piecewise(&f);
        // sup norm
        let exact_sup = f.sup_norm(&tol()).unwrap();
        let lo = f.breakpoints().first().map(|b| rat_to_f64(b) - 1.0).unwrap_or(-2.0);
        let hi = f.breakpoints().last().map(|b| rat_to_f64(b) + 1.0).unwrap_or(2.0);
        let approx = numeric_sup_norm(&nf, (lo, hi), 512, 8);
        assert!((approx - rat_to_f64(&exact_sup.hi)).abs() < 1e-6);
        // definite integral across the support span: int_a^b F dx equals the
        // closed-interval Stieltjes integral of F against g(x) = x
        if let (Some(a), Some(b)) = (f.breakpoints().first(), f.breakpoints().last()) {
            let ramp = PiecewiseFn::new(vec![], vec![Poly::x()], vec![], TailClass::PolynomialTails)
                .unwrap();
            let exact = hs_integral_closed(&f, &ramp, a, b).unwrap();
            let approx = numeric_integral(&nf, rat_to_f64(a), rat_to_f64(b), 1e-8).unwrap();
            assert!((approx - rat_to_f64(&exact)).abs() < 1e-6);
        }
    }
}

// -------------------------------------------------------- proptest section

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-24i64..=24, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn arb_piecewise() -> impl Strategy<Value = PiecewiseFn> {
    (
        proptest::collection::btree_set(arb_rat(), 0..5),
        proptest::collection::vec(proptest::collection::vec(arb_rat(), 1..4), 6),
        proptest::collection::vec(arb_rat(), 6),
    )
        .prop_map(|(breaks, coeff_lists, values)| {
            let breaks: Vec<Rat> = breaks.into_iter().collect();
            let k = breaks.len();
            let mut pieces = Vec::with_capacity(k + 1);
            for (i, coeffs) in coeff_lists.iter().take(k + 1).enumerate() {
                if i == 0 || i == k {
                    pieces.push(Poly::constant(coeffs[0].clone()));
                } else {
                    pieces.push(Poly::from_coeffs(coeffs.clone()));
                }
            }
            let point_values = values[..k].to_vec();
            PiecewiseFn::new(breaks, pieces, point_values, TailClass::ConstantTails).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_roundtrips_bit_exactly(f in arb_piecewise()) {
        let json = piecewise_to_json(&f);
        let back = piecewise_from_json(&json).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(piecewise_to_json(&back), json);
    }

    #[test]
    fn definite_integral_additivity(
        coeffs in proptest::collection::vec(arb_rat(), 1..5),
        a in arb_rat(),
        b in arb_rat(),
        c in arb_rat(),
    ) {
        let p = Poly::from_coeffs(coeffs);
        let lhs = p.definite_integral(&a, &b) + p.definite_integral(&b, &c);
        prop_assert_eq!(lhs, p.definite_integral(&a, &c));
    }

    #[test]
    fn planted_rational_roots_recovered(
        roots in proptest::collection::btree_set((-9i64..=9, 1i64..=4), 1..6),
    ) {
        let roots: Vec<Rat> = roots.into_iter().map(|(n, d)| rat(n, d)).collect();
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        let mut p = Poly::constant(rat_i(1));
        for r in &distinct {
            p = p.mul(&Poly::from_coeffs(vec![-r.clone(), rat_i(1)]));
        }
        let lo = distinct.first().unwrap() - rat_i(1);
        let hi = distinct.last().unwrap() + rat_i(1);
        let found = isolate_roots(&p, &lo, &hi).unwrap();
        prop_assert_eq!(found.len(), distinct.len());
        for (iv, expect) in found.iter().zip(&distinct) {
            prop_assert!(iv.is_exact(), "planted rational root returned as a bracket");
            prop_assert_eq!(&iv.lo, expect);
        }
    }

    #[test]
    fn normalisation_is_idempotent(f in arb_piecewise(), lam in 0u8..=4) {
        let lam = rat(lam as i64, 4);
        let once = f.normalize(&lam);
        prop_assert_eq!(once.normalize(&lam), once);
    }
}
