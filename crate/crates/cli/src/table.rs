//! Built-in table of worked reference values, recomputed live by the exact
//! engine (plus two floating-point rows from the numeric layer).

use rpint_core::distribution::{
    alexiewicz_norm, change_variables, dirac_derivative, integrate, integrate_interval,
    moments, reconstruct, second_mvt_xi, translate, Distribution, IntervalSpec,
};
use rpint_core::lattice::{approximate_identity_check, join, product, triangle_bumps};
use rpint_core::oracle::{numeric_integral, numeric_sup_norm, DecayClass, NumericFn};
use rpint_core::spaces::{BVFunction, Multiplier, RegulatedPrimitive};
use rpint_core::{rat, rat_i, rat_to_string, Enclosure, ExtReal, PiecewiseFn, Rat};

pub struct Row {
    pub case: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Row {
    fn exact(case: &str, expected: &Rat, computed: &Rat) -> Row {
        Row {
            case: case.into(),
            expected: rat_to_string(expected),
            computed: rat_to_string(computed),
            pass: expected == computed,
        }
    }

    fn flag(case: &str, pass: bool) -> Row {
        Row {
            case: case.into(),
            expected: "equal".into(),
            computed: if pass { "equal".into() } else { "different".into() },
            pass,
        }
    }

    fn numeric(case: &str, expected: f64, computed: f64, tol: f64) -> Row {
        Row {
            case: case.into(),
            expected: format!("{expected:.9}"),
            computed: format!("{computed:.9}"),
            pass: (expected - computed).abs() <= tol,
        }
    }

    pub fn status(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

fn zero() -> Rat {
    rat_i(0)
}

fn dist(order: u32, f: PiecewiseFn) -> Distribution {
    Distribution::new(order, RegulatedPrimitive::validate(f).unwrap())
}

fn sign(n: u32) -> Rat {
    if (n - 1).is_multiple_of(2) {
        rat_i(1)
    } else {
        rat_i(-1)
    }
}

pub fn reference_rows() -> Vec<Row> {
    let mut rows = Vec::new();
    let tol = rat(1, 1_000_000_000);

    // pairing of the Dirac distribution with a ramp kernel: g(0) = 1/2
    let g = PiecewiseFn::clamped_ramp(rat(-1, 2), rat(1, 2));
    let m = Multiplier::from_bv(0, g, zero()).unwrap();
    let v = integrate(&dirac_derivative(0), &m, &zero()).unwrap();
    rows.push(Row::exact("delta_pairing", &rat(1, 2), &v));

    // Alexiewicz norms of the Dirac derivatives are all 1
    for k in 0u32..=4 {
        let e = alexiewicz_norm(&dirac_derivative(k), &tol);
        let computed = if e.is_exact() { e.lo.clone() } else { rat_i(-1) };
        rows.push(Row::exact(&format!("dirac_norm_m{k}"), &rat_i(1), &computed));
    }

    // normalisation dependence of the step-kernel integral
    for n in 1u32..=5 {
        for (name, lam) in [("0", zero()), ("1/4", rat(1, 4)), ("1/2", rat(1, 2)), ("1", rat_i(1))]
        {
            let m =
                Multiplier::from_bv(n - 1, PiecewiseFn::heaviside(lam.clone()), lam.clone())
                    .unwrap();
            let v = integrate(&dirac_derivative(n - 1), &m, &lam).unwrap();
            let expect = sign(n) * &lam;
            rows.push(Row::exact(
                &format!("lambda_dependence_n{n}_lam{}", name.replace('/', "_")),
                &expect,
                &v,
            ));
        }
    }

    // a single-point kernel sees the jump of the primitive
    let a = rat_i(3);
    let spike = BVFunction::plain(PiecewiseFn::point_mass_indicator(zero()).scale(&a)).unwrap();
    let m = Multiplier::new(0, spike, None).unwrap();
    let v = integrate(&dirac_derivative(0), &m, &zero()).unwrap();
    rows.push(Row::exact("point_spike_jump", &a, &v));

    // reconstruction of the step primitive
    rows.push(Row::exact(
        "ftc_delta_x1",
        &rat_i(1),
        &reconstruct(&dirac_derivative(0), &rat_i(1)),
    ));
    rows.push(Row::exact(
        "ftc_delta_xm1",
        &rat_i(0),
        &reconstruct(&dirac_derivative(0), &rat_i(-1)),
    ));

    // vanishing moments
    rows.push(Row::exact(
        "moments_ddelta_k0",
        &rat_i(0),
        &moments(&dirac_derivative(1), 0).unwrap(),
    ));
    rows.push(Row::exact(
        "moments_d2delta_k1",
        &rat_i(0),
        &moments(&dirac_derivative(2), 1).unwrap(),
    ));

    // M-space law and the failure of the L-space law on the triangle bumps
    let (t1, t2) = triangle_bumps();
    let f1 = dist(1, t1.clone());
    let f2 = dist(1, t2.clone());
    let joined = join(&f1, &f2, &tol).unwrap();
    let nj = alexiewicz_norm(&joined.value, &tol);
    rows.push(Row::exact(
        "m_space_join_norm",
        &rat_i(1),
        &if nj.is_exact() { nj.lo.clone() } else { rat_i(-1) },
    ));
    let sum_norm = t1.add(&t2).sup_norm(&tol).unwrap();
    rows.push(Row::exact(
        "l_space_sum_norm",
        &rat_i(1),
        &if sum_norm == Enclosure::point(rat_i(1)) { rat_i(1) } else { rat_i(-1) },
    ));

    // idempotence of the Dirac derivatives under the algebra product
    for n in 0u32..=3 {
        let d = dirac_derivative(n);
        rows.push(Row::flag(
            &format!("idempotence_n{n}"),
            product(&d, &d).unwrap() == d,
        ));
    }

    // first-order product identity over (-inf, a)
    let f1 = dist(1, PiecewiseFn::clamped_ramp(rat_i(-1), rat_i(1)));
    let f2 = dist(1, PiecewiseFn::clamped_ramp(rat(-1, 2), rat_i(2)));
    let at = rat(1, 3);
    let spec = IntervalSpec::ToNegInf { end: at, closed: false };
    let lhs = integrate_interval(&product(&f1, &f2).unwrap(), &spec).unwrap();
    let rhs =
        integrate_interval(&f1, &spec).unwrap() * integrate_interval(&f2, &spec).unwrap();
    rows.push(Row::exact("ac1_product_identity", &rhs, &lhs));

    // second mean value theorem witness for the ramp against a falling step
    let f = dist(1, PiecewiseFn::clamped_ramp(rat_i(0), rat_i(1)));
    let g = PiecewiseFn::constant(rat_i(1)).sub(&PiecewiseFn::step_at(rat(1, 2), rat_i(1)));
    let m = Multiplier::from_bv(0, g, rat_i(1)).unwrap();
    let (lo, hi) = second_mvt_xi(&f, &m, &tol).unwrap();
    let computed = match (&lo, &hi) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) if a == b => a.clone(),
        _ => rat_i(-1),
    };
    rows.push(Row::exact("second_mvt_xi", &rat(1, 2), &computed));

    // reflection invariance of the integral
    let f = dist(2, PiecewiseFn::clamped_ramp(rat_i(0), rat_i(1)));
    let m = Multiplier::from_bv(1, PiecewiseFn::heaviside(rat(1, 2)), rat(1, 2)).unwrap();
    let (lhs, rhs) = change_variables(&f, &m, &rat_i(-1), &rat(3, 2)).unwrap();
    rows.push(Row::flag("change_of_variables_reflection", lhs == rhs));

    // translation invariance of the norm
    let shifted = translate(&dirac_derivative(1), &rat_i(3));
    let nt = alexiewicz_norm(&shifted, &tol);
    rows.push(Row::exact(
        "translation_invariance_norm",
        &rat_i(1),
        &if nt.is_exact() { nt.lo.clone() } else { rat_i(-1) },
    ));

    // approximate identity: ramp kernel already covers the support
    let f = dist(1, PiecewiseFn::clamped_ramp(rat_i(0), rat_i(1)));
    let e = approximate_identity_check(&f, 3).unwrap();
    rows.push(Row::exact(
        "approx_identity_k3",
        &rat_i(0),
        &if e.is_exact() { e.lo.clone() } else { rat_i(-1) },
    ));

    // numeric desk checks: the Gaussian-derivative distribution has norm 1
    // at order 1 and sqrt(pi) at order 2
    let gauss = NumericFn::new(|x: f64| (-x * x).exp(), DecayClass::Gaussian);
    let n1 = numeric_sup_norm(&gauss, (-8.0, 8.0), 512, 8);
    rows.push(Row::numeric("gaussian_norm_a1", 1.0, n1, 1e-6));
    let n2 = numeric_integral(&gauss, f64::NEG_INFINITY, f64::INFINITY, 1e-9).unwrap();
    rows.push(Row::numeric(
        "gaussian_norm_a2",
        std::f64::consts::PI.sqrt(),
        n2,
        1e-6,
    ));

    rows
}
