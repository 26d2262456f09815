//! Assembly of the invariant coefficients `a(n)`, `b(n)` from the strata,
//! closed-form checks, and evaluation of the degree-four polynomial
//! `q_S(n) = a(n) Q^2 + b(n) Q k^2 + c(n) k^4` on four lattice classes.
//!
//! The raw stratum sums give `sum_m = sum m(sigma,tau,n) = n` and
//! `b = sum m Phi`; the reported `a` is `3 sum_m`, matching the
//! `Q^2`-normalization in which `Q^2(A,A,A,F) = (A.A)(A.F)` while the
//! leading term of the type-1 cube is `3(A.F)(A.A)`. Both numbers are
//! exposed. The `k^4` coefficient is undetermined except in the rational
//! degenerate case `p = q = 1`, where `c(n) = 21 n`.

use crate::lattice::{LatticeClass, SurfaceParams};
use crate::rational::{rat, ratio, Rat};
use crate::strata::{decompose, multiplicity_from_decomposition, square, stratum_data};
use crate::{Error, Result};
use num_traits::Zero;

/// The computed coefficient data for one `(p, q, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantPolynomial {
    pub params: SurfaceParams,
    pub n: i64,
    /// Raw stratum sum `sum m(sigma, tau, n)`; equals `n`.
    pub sum_m: i64,
    /// Normalized leading coefficient `3 sum_m`.
    pub a: i64,
    /// `sum m(sigma, tau, n) Phi(sigma, tau)`.
    pub b: i64,
    /// `21 n` when `p = q = 1`; undetermined otherwise.
    pub c_known: Option<i64>,
}

/// Assemble `a(n)` and `b(n)` stratum by stratum.
pub fn coefficients(n: i64, params: &SurfaceParams) -> Result<InvariantPolynomial> {
    let dec = decompose(n, params)?;
    let mut sum_m = 0i64;
    let mut b = 0i64;
    for s in square(params) {
        let m = multiplicity_from_decomposition(&s, &dec, params);
        sum_m += m;
        b += m * stratum_data(&s, params).phi;
    }
    let c_known = if params.p() == 1 && params.q() == 1 {
        Some(21 * n)
    } else {
        None
    };
    Ok(InvariantPolynomial { params: *params, n, sum_m, a: 3 * sum_m, b, c_known })
}

/// Exact discrepancies of the assembled coefficients against the closed
/// forms `a(n) = 3n` and `b(n) = (2 p^2 q^2 - 2 p^2 - 2 q^2 - 1) n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub n: i64,
    pub closed_a: i64,
    pub closed_b: i64,
    /// `computed - closed`; must be zero.
    pub a_discrepancy: i64,
    pub b_discrepancy: i64,
}

impl ClosedFormReport {
    pub fn is_exact(&self) -> bool {
        self.a_discrepancy == 0 && self.b_discrepancy == 0
    }
}

pub fn b_closed_form(n: i64, params: &SurfaceParams) -> i64 {
    let p = params.p();
    let q = params.q();
    (2 * p * p * q * q - 2 * p * p - 2 * q * q - 1) * n
}

pub fn closed_form_check(n: i64, params: &SurfaceParams) -> Result<ClosedFormReport> {
    let inv = coefficients(n, params)?;
    let closed_a = 3 * n;
    let closed_b = b_closed_form(n, params);
    Ok(ClosedFormReport {
        n,
        closed_a,
        closed_b,
        a_discrepancy: inv.a - closed_a,
        b_discrepancy: inv.b - closed_b,
    })
}

/// Symmetrized degree-two-in-`Q` form:
/// `Q^2 = (1/3) [ (x1.x2)(x3.x4) + (x1.x3)(x2.x4) + (x1.x4)(x2.x3) ]`,
/// so that `Q^2(A,A,A,A) = (A.A)^2`.
pub fn q_squared(xs: &[&LatticeClass; 4]) -> Rat {
    let s = xs[0].pair(xs[1]) * xs[2].pair(xs[3])
        + xs[0].pair(xs[2]) * xs[1].pair(xs[3])
        + xs[0].pair(xs[3]) * xs[1].pair(xs[2]);
    s / rat(3)
}

/// Symmetrized `Q k^2`: the average over the six choices of the `Q`-pair,
/// `(1/6) sum (xi.xj)(k.xk)(k.xl)`, so `Qk^2(A,A,A,A) = (A.A)(A.k)^2`.
pub fn q_k_squared(xs: &[&LatticeClass; 4], k: &LatticeClass) -> Rat {
    let pairs = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2), (1, 2, 0, 3), (1, 3, 0, 2), (2, 3, 0, 1)];
    let mut acc = Rat::zero();
    for (i, j, s, t) in pairs {
        acc += xs[i].pair(xs[j]) * k.pair(xs[s]) * k.pair(xs[t]);
    }
    acc / rat(6)
}

/// `k^4 = prod (k.xi)`.
pub fn k_fourth(xs: &[&LatticeClass; 4], k: &LatticeClass) -> Rat {
    xs.iter().map(|x| k.pair(x)).product()
}

/// Status of the undetermined `c(n) k^4` term in an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CTerm {
    /// `k^4` vanishes on the arguments, so the term contributes nothing.
    Vanishes,
    /// `p = q = 1`: the coefficient is `21 n` and is included in `value`.
    Known(i64),
    /// `k^4` is nonzero and the coefficient is not determined; `value`
    /// excludes the term.
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QEvaluation {
    pub a: i64,
    pub b: i64,
    pub q2: Rat,
    pub qk2: Rat,
    pub k4: Rat,
    pub c_term: CTerm,
    /// `a Q^2 + b Qk^2`, plus `c k^4` when the coefficient is known.
    pub value: Rat,
}

/// Evaluate `q_S(n)` on four classes.
pub fn evaluate_q(
    n: i64,
    xs: &[&LatticeClass; 4],
    params: &SurfaceParams,
) -> Result<QEvaluation> {
    let inv = coefficients(n, params)?;
    let k = params.classes().k;
    let q2 = q_squared(xs);
    let qk2 = q_k_squared(xs, &k);
    let k4 = k_fourth(xs, &k);
    let mut value = rat(inv.a) * &q2 + rat(inv.b) * &qk2;
    let c_term = if k4.is_zero() {
        CTerm::Vanishes
    } else if let Some(c) = inv.c_known {
        value += rat(c) * &k4;
        CTerm::Known(c)
    } else {
        CTerm::Unknown
    };
    Ok(QEvaluation { a: inv.a, b: inv.b, q2, qk2, k4, c_term, value })
}

/// Independent route to `q_S(n)(A, A, A, F)`: sum the stratum cubes
/// `m * mu(A)^3` over both families and compare with
/// `a (A.A)(A.F) + b (1/2)(A.F)(A.k)^2` from the assembled coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MuRouteReport {
    pub stratum_route: Rat,
    pub assembly_route: Rat,
    pub agree: bool,
}

pub fn mu_route_check(n: i64, a: &LatticeClass, params: &SurfaceParams) -> Result<MuRouteReport> {
    let cl = params.classes();
    if a.pair(&cl.fiber).is_zero() {
        return Err(Error::DegenerateMuClass);
    }
    let dec = decompose(n, params)?;
    let mut stratum_route = Rat::zero();
    for s in square(params) {
        let m = multiplicity_from_decomposition(&s, &dec, params);
        let data = stratum_data(&s, params);
        let type1 = crate::hilb2::mu_cubed_type1(a, data.d, params)?;
        let type2 = crate::hilb2::mu_cubed_type2_value(data.phi2, a, params);
        stratum_route += rat(m) * (type1 + type2);
    }
    let inv = coefficients(n, params)?;
    let af = a.pair(&cl.fiber);
    let ak = a.pair(&cl.k);
    let assembly_route =
        rat(inv.a) * a.self_pairing() * &af + rat(inv.b) * ratio(1, 2) * &af * &ak * &ak;
    Ok(MuRouteReport { agree: stratum_route == assembly_route, stratum_route, assembly_route })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(p: i64, q: i64) -> SurfaceParams {
        SurfaceParams::new(p, q).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let inv = coefficients(5, &params(1, 1)).unwrap();
        assert_eq!((inv.sum_m, inv.a, inv.b), (5, 15, -15));
        assert_eq!(inv.c_known, Some(105));

        let inv = coefficients(1, &params(3, 2)).unwrap();
        assert_eq!((inv.sum_m, inv.a, inv.b), (1, 3, 45));
        assert_eq!(inv.c_known, None);

        let inv = coefficients(1, &params(3, 4)).unwrap();
        assert_eq!((inv.a, inv.b), (3, 237));
    }

    #[test]
    fn closed_form_examples() {
        // Constructor normalizes (2,3) to (3,2).
        let rep = closed_form_check(10, &params(2, 3)).unwrap();
        assert!(rep.is_exact());
        assert_eq!(rep.closed_b, 450);

        let rep = closed_form_check(1, &params(5, 2)).unwrap();
        assert!(rep.is_exact());
        assert_eq!(rep.closed_b, 141);

        let rep = closed_form_check(1, &params(1, 1)).unwrap();
        assert!(rep.is_exact());
        assert_eq!((rep.closed_a, rep.closed_b), (3, -3));
    }

    #[test]
    fn closed_form_small_sweep() {
        for (p, q) in [(1, 1), (3, 2), (3, 4), (5, 2), (5, 4), (7, 2), (7, 6), (9, 8)] {
            let pr = params(p, q);
            for n in 1..=60 {
                assert!(
                    closed_form_check(n, &pr).unwrap().is_exact(),
                    "closed form fails at ({p},{q},{n})"
                );
            }
        }
    }

    #[test]
    fn coefficients_linear_in_n() {
        for (p, q) in [(3, 2), (3, 4), (5, 4)] {
            let pr = params(p, q);
            let vals: Vec<(i64, i64)> = (1..=40)
                .map(|n| {
                    let inv = coefficients(n, &pr).unwrap();
                    (inv.a, inv.b)
                })
                .collect();
            for w in vals.windows(3) {
                assert_eq!(w[2].0 - 2 * w[1].0 + w[0].0, 0);
                assert_eq!(w[2].1 - 2 * w[1].1 + w[0].1, 0);
            }
        }
    }

    #[test]
    fn evaluate_q_conventions() {
        // (A, A, A, F) splits as (A.A)(A.F) and (1/2)(A.F)(A.k)^2.
        let pr = params(3, 2);
        let cl = pr.classes();
        let a = LatticeClass::basis(0);
        let xs = [&a, &a, &a, &cl.fiber];
        assert_eq!(q_squared(&xs), a.self_pairing() * a.pair(&cl.fiber));
        let expected_qk2 = ratio(1, 2) * a.pair(&cl.fiber) * a.pair(&cl.k) * a.pair(&cl.k);
        assert_eq!(q_k_squared(&xs, &cl.k), expected_qk2);

        let ev = evaluate_q(1, &xs, &pr).unwrap();
        assert_eq!(ev.value, rat(3699));
        assert_eq!(ev.c_term, CTerm::Vanishes);

        // All arguments equal to k: every term dies.
        let xs = [&cl.k, &cl.k, &cl.k, &cl.k];
        let ev = evaluate_q(1, &xs, &pr).unwrap();
        assert_eq!(ev.value, rat(0));
        assert_eq!(ev.k4, rat(0));
        assert_eq!(ev.c_term, CTerm::Vanishes);

        // Nonvanishing k^4 gets flagged for p*q > 1 and included for (1,1).
        let e0 = LatticeClass::basis(0);
        let xs = [&e0, &e0, &e0, &e0];
        let ev = evaluate_q(1, &xs, &pr).unwrap();
        assert_eq!(ev.c_term, CTerm::Unknown);
        let ev11 = evaluate_q(1, &xs, &params(1, 1)).unwrap();
        assert_eq!(ev11.c_term, CTerm::Known(21));
        assert_eq!(ev11.k4, rat(81));
    }

    #[test]
    fn symmetrization_diagonal_identity() {
        // (Q^2 + Qk^2 + k^4)(A,A,A,A) = (A.A)^2 + (A.A)(A.k)^2 + (A.k)^4.
        let k = params(3, 2).classes().k;
        for coords in [
            [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            [2, -1, 3, 0, 1, 0, 0, -2, 0, 1],
            [0, 1, 1, -1, 0, 2, 0, 0, 0, 0],
        ] {
            let a = LatticeClass::from_integers(coords);
            let xs = [&a, &a, &a, &a];
            let aa = a.self_pairing();
            let ak = a.pair(&k);
            assert_eq!(q_squared(&xs), &aa * &aa);
            assert_eq!(q_k_squared(&xs, &k), &aa * &ak * &ak);
            assert_eq!(k_fourth(&xs, &k), &ak * &ak * &ak * &ak);
        }
    }

    #[test]
    fn mu_route_examples() {
        let pr = params(3, 2);
        let e0 = LatticeClass::basis(0);
        let rep = mu_route_check(1, &e0, &pr).unwrap();
        assert!(rep.agree);
        assert_eq!(rep.stratum_route, rat(3699));

        // Degenerate type-2 terms vanish for (1,1); the identity reduces
        // to the type-1 route.
        let rep = mu_route_check(7, &e0, &params(1, 1)).unwrap();
        assert!(rep.agree);

        let k = pr.classes().k;
        assert!(matches!(mu_route_check(1, &k, &pr), Err(Error::DegenerateMuClass)));
    }

    prop_compose! {
        fn small_class()(coords in proptest::array::uniform10(-6i64..=6)) -> LatticeClass {
            LatticeClass::from_integers(coords)
        }
    }

    proptest! {
        #[test]
        fn evaluate_q_symmetric_and_multilinear(
            w in small_class(),
            x in small_class(),
            y in small_class(),
            z in small_class(),
            extra in small_class(),
            s in -3i64..=3,
        ) {
            let pr = params(3, 2);
            let base = evaluate_q(2, &[&w, &x, &y, &z], &pr).unwrap();
            // Symmetry under a transposition and a 4-cycle.
            let swapped = evaluate_q(2, &[&x, &w, &y, &z], &pr).unwrap();
            let cycled = evaluate_q(2, &[&z, &w, &x, &y], &pr).unwrap();
            prop_assert_eq!(&base.q2, &swapped.q2);
            prop_assert_eq!(&base.qk2, &swapped.qk2);
            prop_assert_eq!(&base.k4, &swapped.k4);
            prop_assert_eq!(&base.q2, &cycled.q2);
            prop_assert_eq!(&base.qk2, &cycled.qk2);
            prop_assert_eq!(&base.k4, &cycled.k4);
            // Multilinearity of each constituent in the first slot.
            let combined = &w.scaled_int(s) + &extra;
            let xs_comb = [&combined, &x, &y, &z];
            let xs_w = [&w, &x, &y, &z];
            let xs_e = [&extra, &x, &y, &z];
            let k = pr.classes().k;
            prop_assert_eq!(
                q_squared(&xs_comb),
                q_squared(&xs_w) * rat(s) + q_squared(&xs_e)
            );
            prop_assert_eq!(
                q_k_squared(&xs_comb, &k),
                q_k_squared(&xs_w, &k) * rat(s) + q_k_squared(&xs_e, &k)
            );
        }

        #[test]
        fn mu_routes_agree_on_random_classes(
            a in small_class(),
            n in 1i64..40,
            pq in proptest::sample::select(vec![(1i64, 1i64), (3, 2), (3, 4), (5, 4)]),
        ) {
            let pr = params(pq.0, pq.1);
            let cl = pr.classes();
            prop_assume!(!a.pair(&cl.fiber).is_zero());
            let rep = mu_route_check(n, &a, &pr).unwrap();
            prop_assert!(rep.agree);
        }
    }
}
