//! Symbolic quartic intersection products on `Pic(Hilb^2 S)` and the
//! `mu(A)^3` evaluators for the two stratum families.
//!
//! `Pic(Hilb^2 S) = Pic(S) + (1/2) Z T`, where `T` is the exceptional
//! class of the Chow map. A formal divisor is a surface class plus a
//! rational `T`-coefficient, and degree-four products are evaluated by
//! multilinear extension of five rules (`A, B, C, D` surface classes,
//! `K` the canonical class, `c2` the Euler number):
//!
//! ```text
//! A.B.C.D = (A.B)(C.D) + (A.C)(B.D) + (A.D)(B.C)
//! A.B.C.T = 0
//! A.B.T.T = -8 (A.B)
//! A.T.T.T =  8 (A.K)
//! T.T.T.T = -8 (K^2 + c2)
//! ```
//!
//! For `G = A + xF + yT` with `F^2 = 0 = F.K` this gives
//! `G^3.F = 3(A.A)(A.F) + 6x(A.F)^2 - 24y^2(A.F)`, which the suite
//! re-derives mechanically as a property test.

use crate::lattice::{LatticeClass, SurfaceParams};
use crate::rational::{rat, ratio, Rat};
use crate::vertical::VerticalDivisor;
use crate::{Error, Result};
use num_traits::Zero;

/// A formal divisor `a = (surface part) + t * T` on `Hilb^2(S)`.
/// Half-integer (indeed arbitrary rational) `t` is permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hilb2Divisor {
    pub surface: LatticeClass,
    pub t: Rat,
}

impl Hilb2Divisor {
    pub fn new(surface: LatticeClass, t: Rat) -> Self {
        Hilb2Divisor { surface, t }
    }

    /// Class induced from a divisor on the surface (no `T`-part).
    pub fn from_surface(surface: LatticeClass) -> Self {
        Hilb2Divisor { surface, t: Rat::zero() }
    }

    /// The exceptional class `T` itself.
    pub fn exceptional() -> Self {
        Hilb2Divisor { surface: LatticeClass::zero(), t: rat(1) }
    }
}

impl std::ops::Add for &Hilb2Divisor {
    type Output = Hilb2Divisor;
    fn add(self, rhs: &Hilb2Divisor) -> Hilb2Divisor {
        Hilb2Divisor {
            surface: &self.surface + &rhs.surface,
            t: &self.t + &rhs.t,
        }
    }
}

/// Quartic intersection number of four formal divisors, by multilinear
/// expansion over the surface/`T` split of each argument.
pub fn quartic(
    a: &Hilb2Divisor,
    b: &Hilb2Divisor,
    c: &Hilb2Divisor,
    d: &Hilb2Divisor,
    canonical: &LatticeClass,
    c2: i64,
) -> Rat {
    let args = [a, b, c, d];
    let mut total = Rat::zero();
    for mask in 0u32..16 {
        // Arguments in `mask` contribute their T-part, the rest their
        // surface part.
        let mut coeff = Rat::from_integer(1.into());
        let mut surf: Vec<&LatticeClass> = Vec::with_capacity(4);
        for (i, arg) in args.iter().enumerate() {
            if mask & (1 << i) != 0 {
                coeff *= &arg.t;
            } else {
                surf.push(&arg.surface);
            }
        }
        if coeff.is_zero() {
            continue;
        }
        let rule = match surf.len() {
            4 => {
                surf[0].pair(surf[1]) * surf[2].pair(surf[3])
                    + surf[0].pair(surf[2]) * surf[1].pair(surf[3])
                    + surf[0].pair(surf[3]) * surf[1].pair(surf[2])
            }
            3 => Rat::zero(),
            2 => rat(-8) * surf[0].pair(surf[1]),
            1 => rat(8) * surf[0].pair(canonical),
            0 => rat(-8) * (canonical.self_pairing() + rat(c2)),
            _ => unreachable!(),
        };
        total += coeff * rule;
    }
    total
}

/// `(A + xF + yT)^3 . F` expanded through [`quartic`].
///
/// Requires `F^2 = 0` and `F.K = 0`; under those the expansion collapses
/// to `3(A.A)(A.F) + 6x(A.F)^2 - 24y^2(A.F)`.
pub fn g_cubed_f_symbolic(
    a: &LatticeClass,
    x: &Rat,
    y: &Rat,
    canonical: &LatticeClass,
    c2: i64,
    fiber: &LatticeClass,
) -> Rat {
    assert!(fiber.self_pairing().is_zero(), "fiber class must be isotropic");
    assert!(fiber.pair(canonical).is_zero(), "fiber must pair to zero with K");
    let g = Hilb2Divisor::new(a + &fiber.scaled(x), y.clone());
    let f = Hilb2Divisor::from_surface(fiber.clone());
    quartic(&g, &g, &g, &f, canonical, c2)
}

/// Odd remainders `s_p = d mod 2p`, `s_q = d mod 2q` (Euclidean, so the
/// values lie in `[0, 2p)` and `[0, 2q)` even for the diagnostic routes).
pub fn remainders(d: i64, params: &SurfaceParams) -> (i64, i64) {
    (d.rem_euclid(2 * params.p()), d.rem_euclid(2 * params.q()))
}

/// The type-1 coefficient function in its validated closed form:
///
/// ```text
/// phi1(d) = (2dpq - d^2)/4 - (2q s_q - s_q^2)/4 - (2p s_p - s_p^2)/4
/// ```
///
/// with `s_p = d mod 2p`, `s_q = d mod 2q`. Only odd positive `d` are
/// meaningful; `12 phi1` is always an integer.
pub fn phi1_of_d(d: i64, params: &SurfaceParams) -> Result<Rat> {
    if d <= 0 || d % 2 == 0 {
        return Err(Error::InvalidFiberDegree { d });
    }
    let (s_p, s_q) = remainders(d, params);
    let p = params.p();
    let q = params.q();
    let main = ratio(2 * d * p * q - d * d, 4);
    let corr_q = ratio(2 * q * s_q - s_q * s_q, 4);
    let corr_p = ratio(2 * p * s_p - s_p * s_p, 4);
    Ok(main - corr_q - corr_p)
}

/// Which floor convention the diagnostic `phi1` route uses for
/// `delta_p`/`delta_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaConvention {
    /// `delta_p = floor(d / 2q) - 1`, as printed alongside the subscheme
    /// construction.
    PrintedMinusOne,
    /// `delta_p = floor(d / 2q)`; the variant consistent with the
    /// validated closed form.
    Floor,
}

impl DeltaConvention {
    pub fn deltas(&self, d: i64, params: &SurfaceParams) -> (i64, i64) {
        let base_p = d.div_euclid(2 * params.q());
        let base_q = d.div_euclid(2 * params.p());
        match self {
            DeltaConvention::Floor => (base_p, base_q),
            DeltaConvention::PrintedMinusOne => (base_p - 1, base_q - 1),
        }
    }
}

/// Diagnostic evaluation of the alternative `phi1` expression
///
/// ```text
/// delta_p q (delta_p q + q - d) + delta_q p (delta_q p + p - d)
///   + d^2/4 + (d/2)(pq - p - q)
/// ```
///
/// under both `delta` conventions, reporting which one matches
/// [`phi1_of_d`]. Under the plain floor convention the two routes agree
/// identically; the printed `floor - 1` convention differs by exactly
/// `q s_q + p s_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phi1Diagnostic {
    pub d: i64,
    pub canonical: Rat,
    pub via_floor: Rat,
    pub via_printed: Rat,
    pub floor_matches: bool,
    pub printed_matches: bool,
}

pub fn phi1_delta_route(d: i64, params: &SurfaceParams) -> Result<Phi1Diagnostic> {
    let canonical = phi1_of_d(d, params)?;
    let eval = |conv: DeltaConvention| -> Rat {
        let (dp, dq) = conv.deltas(d, params);
        let p = params.p();
        let q = params.q();
        let t1 = rat(dp * q * (dp * q + q - d));
        let t2 = rat(dq * p * (dq * p + p - d));
        t1 + t2 + ratio(d * d, 4) + ratio(d * (p * q - p - q), 2)
    };
    let via_floor = eval(DeltaConvention::Floor);
    let via_printed = eval(DeltaConvention::PrintedMinusOne);
    Ok(Phi1Diagnostic {
        d,
        floor_matches: via_floor == canonical,
        printed_matches: via_printed == canonical,
        canonical,
        via_floor,
        via_printed,
    })
}

/// The type-2 coefficient `phi2(alpha, beta) = alpha (q - beta) pq`,
/// valid on the normalized region `alpha q < beta p` (or degenerately
/// when `alpha beta = 0`, where it vanishes).
pub fn phi2(alpha: i64, beta: i64, params: &SurfaceParams) -> Result<i64> {
    let p = params.p();
    let q = params.q();
    if alpha < 0 || beta < 0 || alpha * q + beta * p >= p * q {
        return Err(Error::Phi2Domain { alpha, beta });
    }
    if alpha == 0 || beta == 0 {
        return Ok(0);
    }
    if alpha * q > beta * p {
        return Err(Error::Phi2Normalization { alpha, beta });
    }
    // alpha q = beta p is impossible inside the domain for coprime (p,q).
    assert_ne!(alpha * q, beta * p);
    Ok(alpha * (q - beta) * p * q)
}

/// `mu(A)^3` on a type-1 stratum with parameter `d`:
/// `3 (A.F)(A.A) + 6 phi1(d) (A.F)(A.k)^2`.
pub fn mu_cubed_type1(a: &LatticeClass, d: i64, params: &SurfaceParams) -> Result<Rat> {
    let phi1 = phi1_of_d(d, params)?;
    let cl = params.classes();
    let af = a.pair(&cl.fiber);
    let ak = a.pair(&cl.k);
    Ok(rat(3) * &af * a.self_pairing() + rat(6) * phi1 * &af * &ak * &ak)
}

/// `mu(A)^3` on a type-2 stratum: `3 phi2(alpha,beta) (A.F)(A.k)^2`.
pub fn mu_cubed_type2(
    a: &LatticeClass,
    alpha: i64,
    beta: i64,
    params: &SurfaceParams,
) -> Result<Rat> {
    let phi2 = phi2(alpha, beta, params)?;
    Ok(mu_cubed_type2_value(phi2, a, params))
}

/// The type-2 cube for an already-resolved `phi2` value (used by the
/// assembly route, where the piecewise stratum form handles the symmetry
/// normalization).
pub fn mu_cubed_type2_value(phi2: i64, a: &LatticeClass, params: &SurfaceParams) -> Rat {
    let cl = params.classes();
    let af = a.pair(&cl.fiber);
    let ak = a.pair(&cl.k);
    rat(3 * phi2) * af * &ak * &ak
}

/// The `F`- and `T`-coefficients of the divisor `G = A + xF + yT`
/// representing `mu(A)` on a type-1 family, together with the stratum
/// parameters they came from. The `T`-coefficient is always `(A.D)/4`
/// for `D = -F + alpha F_p + beta F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuCubeData {
    pub d: i64,
    pub delta_p: i64,
    pub delta_q: i64,
    pub x_coeff: Rat,
    pub y_coeff: Rat,
}

impl MuCubeData {
    /// Assemble the coefficients from the displayed decomposition
    ///
    /// ```text
    /// G = A + delta_p(delta_p+1)(A.F_p) F_p~ + delta_q(delta_q+1)(A.F_q) F_q~
    ///     + (A.D)/4 (D~ + 2 delta_p F_p~ + 2 delta_q F_q~ - K~ + T)
    /// ```
    ///
    /// with every vertical class written as a rational multiple of `F`.
    pub fn from_type1_display(
        a: &LatticeClass,
        alpha: i64,
        beta: i64,
        params: &SurfaceParams,
        convention: DeltaConvention,
    ) -> Result<Self> {
        let p = params.p();
        let q = params.q();
        if alpha < 0 || beta < 0 || alpha * q + beta * p >= p * q {
            return Err(Error::Phi2Domain { alpha, beta });
        }
        let d = p * q - alpha * q - beta * p;
        if d <= 0 || d % 2 == 0 {
            return Err(Error::InvalidFiberDegree { d });
        }
        let (delta_p, delta_q) = convention.deltas(d, params);
        let cl = params.classes();
        let a_fp = a.pair(&cl.fiber_p);
        let a_fq = a.pair(&cl.fiber_q);
        // D = -F + alpha F_p + beta F_q = (-d / pq) F.
        let dvert = VerticalDivisor::new(-1, alpha, beta, *params);
        let a_d = ratio(dvert.deg_k(), params.pq()) * a.pair(&cl.fiber);
        // F-multiple of D + 2 delta_p F_p + 2 delta_q F_q - K.
        let lambda = ratio(-2 * p * q + q * (alpha + 2 * delta_p + 1) + p * (beta + 2 * delta_q + 1), p * q);
        let x_coeff = a_fp * ratio(delta_p * (delta_p + 1), p)
            + a_fq * ratio(delta_q * (delta_q + 1), q)
            + &a_d * lambda / rat(4);
        let y_coeff = a_d / rat(4);
        Ok(MuCubeData { d, delta_p, delta_q, x_coeff, y_coeff })
    }

    /// Evaluate `G^3.F` for these coefficients through the quartic rules.
    pub fn g_cubed_f(&self, a: &LatticeClass, params: &SurfaceParams) -> Rat {
        let cl = params.classes();
        g_cubed_f_symbolic(a, &self.x_coeff, &self.y_coeff, &cl.canonical, cl.c2(), &cl.fiber)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(p: i64, q: i64) -> SurfaceParams {
        SurfaceParams::new(p, q).unwrap()
    }

    fn dolgachev_constants(p: i64, q: i64) -> (LatticeClass, i64) {
        let cl = params(p, q).classes();
        (cl.canonical.clone(), cl.c2())
    }

    #[test]
    fn quartic_rule_examples() {
        let (k, c2) = dolgachev_constants(3, 2);
        let f = crate::lattice::fiber_ray_generator();
        let fd = Hilb2Divisor::from_surface(f);
        assert_eq!(quartic(&fd, &fd, &fd, &fd, &k, c2), rat(0));

        // A.A.T.T with A.A = 3: rule three gives -24.
        let a = Hilb2Divisor::from_surface(LatticeClass::from_integers([
            2, 1, 0, 0, 0, 0, 0, 0, 0, 0,
        ]));
        assert_eq!(a.surface.self_pairing(), rat(3));
        let t = Hilb2Divisor::exceptional();
        assert_eq!(quartic(&a, &a, &t, &t, &k, c2), rat(-24));

        // T^4 on Dolgachev constants: -8(0 + 12).
        assert_eq!(quartic(&t, &t, &t, &t, &k, c2), rat(-96));

        // Three surface classes and one T vanish.
        let b = Hilb2Divisor::from_surface(LatticeClass::basis(0));
        assert_eq!(quartic(&a, &b, &b, &t, &k, c2), rat(0));
    }

    #[test]
    fn quartic_invariant_under_all_permutations() {
        let (k, c2) = dolgachev_constants(3, 2);
        let args = [
            Hilb2Divisor::new(LatticeClass::from_integers([1, -2, 0, 3, 0, 0, 1, 0, 0, 0]), ratio(1, 2)),
            Hilb2Divisor::new(LatticeClass::from_integers([0, 1, 1, 0, -1, 0, 0, 2, 0, 0]), rat(-1)),
            Hilb2Divisor::new(LatticeClass::from_integers([2, 0, 0, 0, 0, 1, 0, 0, -3, 0]), rat(0)),
            Hilb2Divisor::new(LatticeClass::from_integers([1, 1, 1, 1, 1, 1, 1, 1, 1, 1]), ratio(-3, 2)),
        ];
        let reference = quartic(&args[0], &args[1], &args[2], &args[3], &k, c2);
        let mut count = 0;
        for a in 0..4usize {
            for b in (0..4).filter(|&b| b != a) {
                for c in (0..4).filter(|&c| c != a && c != b) {
                    let d = 6 - a - b - c;
                    let v = quartic(&args[a], &args[b], &args[c], &args[d], &k, c2);
                    assert_eq!(v, reference, "permutation ({a},{b},{c},{d})");
                    count += 1;
                }
            }
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn g_cubed_example() {
        // A = e0, F = 6f on S(3,2), x = 0, y = 1: 3*1*18 - 24*18 = -378.
        let cl = params(3, 2).classes();
        let a = LatticeClass::basis(0);
        let v = g_cubed_f_symbolic(&a, &rat(0), &rat(1), &cl.canonical, cl.c2(), &cl.fiber);
        assert_eq!(v, rat(-378));
        // x = y = 0 reduces to the leading term.
        let v0 = g_cubed_f_symbolic(&a, &rat(0), &rat(0), &cl.canonical, cl.c2(), &cl.fiber);
        assert_eq!(v0, rat(3) * a.self_pairing() * a.pair(&cl.fiber));
    }

    #[test]
    fn phi1_values() {
        assert_eq!(phi1_of_d(1, &params(1, 1)).unwrap(), ratio(-1, 4));
        assert_eq!(phi1_of_d(1, &params(3, 2)).unwrap(), ratio(3, 4));
        assert_eq!(phi1_of_d(3, &params(3, 2)).unwrap(), ratio(15, 4));
        assert!(phi1_of_d(2, &params(3, 2)).is_err());
        assert!(phi1_of_d(-1, &params(3, 2)).is_err());
        assert!(phi1_of_d(0, &params(3, 2)).is_err());
    }

    #[test]
    fn phi1_dual_route_conventions() {
        let diag = phi1_delta_route(1, &params(1, 1)).unwrap();
        assert_eq!(diag.canonical, ratio(-1, 4));
        assert_eq!(diag.via_floor, ratio(-1, 4));
        assert_eq!(diag.via_printed, ratio(7, 4));
        assert!(diag.floor_matches);
        assert!(!diag.printed_matches);

        // Floor route is an identity; the printed route differs by
        // q s_q + p s_p on every odd d.
        for (p, q) in [(1, 1), (3, 2), (3, 4), (5, 2), (5, 4), (7, 6), (9, 8)] {
            let pr = params(p, q);
            let mut d = 1;
            while d <= 4 * pr.pq() {
                let diag = phi1_delta_route(d, &pr).unwrap();
                assert!(diag.floor_matches, "floor route fails at (p,q,d)=({p},{q},{d})");
                let (s_p, s_q) = remainders(d, &pr);
                let gap = &diag.via_printed - &diag.canonical;
                assert_eq!(gap, rat(pr.q() * s_q + pr.p() * s_p));
                d += 2;
            }
        }
    }

    #[test]
    fn phi2_values_and_domain() {
        assert_eq!(phi2(0, 1, &params(3, 2)).unwrap(), 0);
        assert_eq!(phi2(1, 0, &params(3, 2)).unwrap(), 0);
        assert_eq!(phi2(1, 1, &params(3, 2)).unwrap(), 6);
        assert_eq!(phi2(1, 1, &params(5, 4)).unwrap(), 60);
        assert_eq!(phi2(1, 1, &params(5, 2)).unwrap(), 10);
        // Outside the normalized region: alpha q > beta p with both
        // nonzero is rejected; the stratum route evaluates the swapped
        // form there instead.
        assert!(matches!(
            phi2(1, 1, &params(3, 4)),
            Err(Error::Phi2Normalization { .. })
        ));
        assert!(matches!(
            phi2(2, 1, &params(3, 4)),
            Err(Error::Phi2Normalization { .. })
        ));
        // Outside the index domain entirely.
        assert!(matches!(phi2(3, 1, &params(3, 2)), Err(Error::Phi2Domain { .. })));
        assert!(matches!(phi2(-1, 1, &params(3, 2)), Err(Error::Phi2Domain { .. })));
    }

    #[test]
    fn mu_cube_values() {
        let pr = params(3, 2);
        let e0 = LatticeClass::basis(0);
        assert_eq!(mu_cubed_type1(&e0, 1, &pr).unwrap(), rat(783));
        assert_eq!(mu_cubed_type2(&e0, 1, 1, &pr).unwrap(), rat(2916));
        // Classes orthogonal to the fiber contribute nothing.
        let k = crate::lattice::fiber_ray_generator();
        assert_eq!(mu_cubed_type1(&k, 1, &pr).unwrap(), rat(0));
        assert_eq!(mu_cubed_type2(&k, 1, 1, &pr).unwrap(), rat(0));
        let perp = &LatticeClass::basis(1) - &LatticeClass::basis(2);
        assert_eq!(mu_cubed_type1(&perp, 3, &pr).unwrap(), rat(0));
    }

    #[test]
    fn mu_cube_data_t_coefficient_invariant() {
        // y = (A.D)/4 with D = -F + alpha F_p + beta F_q.
        let pr = params(3, 2);
        let a = LatticeClass::from_integers([2, -1, 0, 1, 0, 0, 0, 0, 0, 0]);
        let data =
            MuCubeData::from_type1_display(&a, 1, 1, &pr, DeltaConvention::Floor).unwrap();
        let cl = pr.classes();
        let d_class = &(&cl.fiber_p + &cl.fiber_q) - &cl.fiber;
        assert_eq!(data.y_coeff, a.pair(&d_class) / rat(4));
        assert_eq!(data.d, 1);
        // The cube evaluates through the same quartic machinery.
        let cube = data.g_cubed_f(&a, &pr);
        let expect = g_cubed_f_symbolic(
            &a,
            &data.x_coeff,
            &data.y_coeff,
            &cl.canonical,
            cl.c2(),
            &cl.fiber,
        );
        assert_eq!(cube, expect);
    }

    prop_compose! {
        fn small_class()(coords in proptest::array::uniform10(-9i64..=9)) -> LatticeClass {
            LatticeClass::from_integers(coords)
        }
    }

    prop_compose! {
        fn small_rat()(n in -12i64..=12, d in 1i64..=4) -> Rat {
            ratio(n, d)
        }
    }

    proptest! {
        #[test]
        fn g_cubed_matches_closed_form(
            a in small_class(),
            x in small_rat(),
            y in small_rat(),
            pq in proptest::sample::select(vec![(1i64, 1i64), (3, 2), (3, 4), (5, 2), (5, 4)]),
        ) {
            let pr = params(pq.0, pq.1);
            let cl = pr.classes();
            let lhs = g_cubed_f_symbolic(&a, &x, &y, &cl.canonical, cl.c2(), &cl.fiber);
            let af = a.pair(&cl.fiber);
            let rhs = rat(3) * a.self_pairing() * &af
                + rat(6) * &x * &af * &af
                - rat(24) * &y * &y * &af;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn twelve_phi1_is_integral(
            d_half in 0i64..200,
            pq in proptest::sample::select(vec![(1i64, 1i64), (3, 2), (3, 4), (5, 4), (7, 2)]),
        ) {
            let d = 2 * d_half + 1;
            let pr = params(pq.0, pq.1);
            let val = phi1_of_d(d, &pr).unwrap() * rat(12);
            prop_assert!(val.is_integer());
        }

        #[test]
        fn quartic_multilinear_in_first_slot(
            a in small_class(),
            a2 in small_class(),
            b in small_class(),
            c in small_class(),
            d in small_class(),
            ta in small_rat(),
            s in -3i64..=3,
        ) {
            let (k, c2) = dolgachev_constants(3, 2);
            let vb = Hilb2Divisor::from_surface(b);
            let vc = Hilb2Divisor::new(c, ratio(1, 2));
            let vd = Hilb2Divisor::from_surface(d);
            let va1 = Hilb2Divisor::new(a.clone(), ta.clone());
            let va2 = Hilb2Divisor::from_surface(a2.clone());
            let combined = Hilb2Divisor::new(
                &a.scaled_int(s) + &a2,
                &ta * rat(s),
            );
            let lhs = quartic(&combined, &vb, &vc, &vd, &k, c2);
            let rhs = quartic(&va1, &vb, &vc, &vd, &k, c2) * rat(s)
                + quartic(&va2, &vb, &vc, &vd, &k, c2);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
