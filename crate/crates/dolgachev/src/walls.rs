//! Wall and chamber queries in the positive cone of the model lattice.
//!
//! For `b_2^+ = 1` the invariants depend on the chamber of the period
//! point. Walls are the hyperplanes `zeta^perp` with `zeta` integral,
//! `zeta ≡ c1 (mod 2)` and `-8 <= zeta^2 <= -1`; `zeta = c1 - 2M` for the
//! reduction `M`. A wall is *effective* only if one of the coupled Dirac
//! indices
//!
//! ```text
//! ind D_L = ((C + c1(L))^2 - Sign(S)) / 8,    C = -K_S,
//! ```
//!
//! for `L = 2M` or `L = 2(c1 - M)` is positive. Reductions orthogonal to
//! `K_S` never produce effective walls: there `M^2` is even, the wall
//! range forces `M^2 = -2`, and both indices vanish.
//!
//! # Enumerating walls crossed by a segment
//!
//! For period points `w0, w1` (same cone component) every `zeta` whose
//! wall meets the segment satisfies `(zeta.w0)(zeta.w1) <= 0`, hence
//!
//! ```text
//! P(zeta) = -zeta^2 + 2 (zeta.w0)(zeta.w1) / (w0.w1) <= -zeta^2 <= 8.
//! ```
//!
//! `P` is positive definite whenever `w0`, `w1` are independent (the
//! reverse Cauchy-Schwarz inequality for a form of signature `(1, 9)`:
//! `(w0.w1)^2 > w0^2 w1^2`), so the candidates are the lattice points of
//! a rational ellipsoid. They are enumerated exactly: an `LDL^T` split of
//! `P` over the rationals turns the bound into nested interval conditions,
//! one coordinate at a time, with the parity constraint `zeta ≡ c1 (mod 2)`
//! built into the scan. The exact wall conditions filter afterwards, so
//! an over-tight split would only ever lose candidates, and the suite
//! cross-checks the output against an independent brute-force enumeration.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::lattice::{fiber_ray_generator, LatticeClass, SurfaceParams, RANK};
use crate::rational::{nearest_with_parity, rat, to_i64, Rat};
use crate::{Error, Result};

/// A period point: a rational class of positive self-intersection in the
/// standard cone component (positive pairing with the fiber ray).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodPoint {
    omega: LatticeClass,
}

impl PeriodPoint {
    pub fn new(omega: LatticeClass) -> Result<Self> {
        let square = omega.self_pairing();
        if !square.is_positive() {
            return Err(Error::NotInPositiveCone { square: square.to_string() });
        }
        if !omega.pair(&fiber_ray_generator()).is_positive() {
            return Err(Error::WrongConeComponent);
        }
        Ok(PeriodPoint { omega })
    }

    pub fn class(&self) -> &LatticeClass {
        &self.omega
    }
}

/// A wall crossed by a segment query, normalized so `zeta.w0 > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub zeta: LatticeClass,
    pub square: i64,
    /// The reduction `M = (c1 - zeta)/2` (integral by the parity
    /// condition).
    pub reduction: LatticeClass,
    pub effective: bool,
}

/// Index of the Dirac operator coupled with a line bundle `L`:
/// `((C + L)^2 + 8)/8` on a surface of signature `-8`.
///
/// When `C` is characteristic and `L` is even the value is an integer;
/// that is asserted.
pub fn dirac_index(l: &LatticeClass, c: &LatticeClass) -> Rat {
    let total = &(c + l).self_pairing() + rat(8);
    let index = total / rat(8);
    let l_even = l.is_integral()
        && l.coords().iter().all(|x| (x.to_integer() % 2i32).is_zero());
    if c.is_characteristic() && l_even {
        assert!(index.is_integer(), "index of an even twist of a characteristic structure");
    }
    index
}

/// Whether the wall defined by the reduction `M` (with `zeta = c1 - 2M`)
/// can affect the invariants: true iff `ind D_{2M} > 0` or
/// `ind D_{2(c1 - M)} > 0`, with the structure class `C = -K_S`.
pub fn wall_effective(m: &LatticeClass, c1: &LatticeClass, params: &SurfaceParams) -> Result<bool> {
    let zeta = c1 - &m.scaled_int(2);
    let square = zeta.self_pairing();
    let sq = to_i64(&square).ok_or(Error::NotIntegral)?;
    if !(-8..=-1).contains(&sq) {
        return Err(Error::OutsideWallRange { square: sq });
    }
    let c = -&params.classes().canonical;
    let ind_m = dirac_index(&m.scaled_int(2), &c);
    let ind_cm = dirac_index(&(c1 - m).scaled_int(2), &c);
    Ok(ind_m.is_positive() || ind_cm.is_positive())
}

/// Applicability of chamber-only dependence: `p1 > -7`, or `p1 = -8` with
/// nonzero `w2`. The bundles computed here have `p1 = -8`, `w2 != 0`.
pub fn chamber_invariance_predicate(p1: i64, w2_nonzero: bool) -> bool {
    p1 > -7 || (p1 == -8 && w2_nonzero)
}

/// All walls separating `w0` from `w1`, each reported once with
/// `zeta.w0 > 0`, sorted by coordinates.
///
/// Errors if either endpoint lies on a wall (the offending `zeta` is
/// reported) or the endpoints sit in different cone components.
pub fn walls_on_segment(
    w0: &PeriodPoint,
    w1: &PeriodPoint,
    c1: &LatticeClass,
    params: &SurfaceParams,
) -> Result<Vec<Wall>> {
    let omega0 = w0.class();
    let omega1 = w1.class();
    let a = omega0.self_pairing();
    let b = omega1.self_pairing();
    let c = omega0.pair(omega1);
    if !c.is_positive() {
        return Err(Error::ConeComponentMismatch);
    }
    let parity = parities(c1)?;

    // Proportional endpoints: no wall can separate them, but an endpoint
    // may still lie on a wall, which the contract rejects. Candidates for
    // that degenerate check come from the single-point ellipsoid
    // -zeta^2 + 2 (zeta.w0)^2 / w0^2 <= 8.
    let gram = if &c * &c == &a * &b {
        ellipsoid_gram(omega0, omega0, &a)
    } else {
        ellipsoid_gram(omega0, omega1, &c)
    };
    let candidates = enumerate_ellipsoid(&gram, &rat(8), &parity);

    let mut found: BTreeSet<LatticeClass> = BTreeSet::new();
    for cand in candidates {
        let square = cand.self_pairing();
        let sq = match to_i64(&square) {
            Some(v) => v,
            None => unreachable!("integral candidates have integral squares"),
        };
        if !(-8..=-1).contains(&sq) {
            continue;
        }
        let s0 = cand.pair(omega0);
        let s1 = cand.pair(omega1);
        if s0.is_zero() || s1.is_zero() {
            return Err(Error::EndpointOnWall { zeta: cand.to_string() });
        }
        if s0.is_positive() != s1.is_positive() {
            let normalized = if s0.is_positive() { cand } else { -&cand };
            found.insert(normalized);
        }
    }

    found
        .into_iter()
        .map(|zeta| {
            let reduction = (c1 - &zeta).scaled(&crate::rational::ratio(1, 2));
            assert!(reduction.is_integral(), "parity constraint makes the reduction integral");
            let square = to_i64(&zeta.self_pairing()).unwrap();
            let effective = wall_effective(&reduction, c1, params)?;
            Ok(Wall { zeta, square, reduction, effective })
        })
        .collect()
}

/// Coordinate parities (0/1) of an integral class.
fn parities(c1: &LatticeClass) -> Result<[i64; RANK]> {
    let ints = c1.to_integers()?;
    Ok(std::array::from_fn(|i| {
        let two = num_bigint::BigInt::from(2);
        let r = ((&ints[i] % &two) + &two) % &two;
        if r.is_zero() {
            0
        } else {
            1
        }
    }))
}

/// Gram matrix of `P(z) = -z^2 + 2 (z.u)(z.v) / scale` in coordinates.
fn ellipsoid_gram(u: &LatticeClass, v: &LatticeClass, scale: &Rat) -> Vec<Vec<Rat>> {
    // Pairing viewed through the diagonal form: (Gz)_i has sign +,-,...,-.
    let gu: Vec<Rat> = (0..RANK)
        .map(|i| if i == 0 { u.coord(i).clone() } else { -u.coord(i) })
        .collect();
    let gv: Vec<Rat> = (0..RANK)
        .map(|i| if i == 0 { v.coord(i).clone() } else { -v.coord(i) })
        .collect();
    let mut m = vec![vec![Rat::zero(); RANK]; RANK];
    for i in 0..RANK {
        for j in 0..RANK {
            let minus_g = if i != j {
                Rat::zero()
            } else if i == 0 {
                rat(-1)
            } else {
                rat(1)
            };
            let cross = (&gu[i] * &gv[j] + &gv[i] * &gu[j]) / scale;
            m[i][j] = minus_g + cross;
        }
    }
    m
}

/// All integral points of `{z : z^T M z <= bound, z_i ≡ parity_i (mod 2)}`
/// for positive definite rational `M`, by exact sequential completion of
/// squares.
fn enumerate_ellipsoid(m: &[Vec<Rat>], bound: &Rat, parity: &[i64; RANK]) -> Vec<LatticeClass> {
    // LDL^T: Q(x) = sum_i d_i (x_i + sum_{j>i} l[i][j] x_j)^2.
    let n = RANK;
    let mut work: Vec<Vec<Rat>> = m.to_vec();
    let mut d = vec![Rat::zero(); n];
    let mut l = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let pivot = work[i][i].clone();
        assert!(pivot.is_positive(), "ellipsoid form must be positive definite");
        d[i] = pivot.clone();
        for j in i + 1..n {
            l[i][j] = &work[i][j] / &pivot;
        }
        for j in i + 1..n {
            for k in j..n {
                let upd = &work[j][k] - &(&d[i] * &l[i][j] * &l[i][k]);
                work[j][k] = upd.clone();
                work[k][j] = upd;
            }
        }
    }

    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    descend(n, &d, &l, bound.clone(), parity, &mut x, &mut out);
    out
}

/// Recursive scan over levels `n-1, ..., 0` of the split form.
fn descend(
    level: usize,
    d: &[Rat],
    l: &[Vec<Rat>],
    rem: Rat,
    parity: &[i64; RANK],
    x: &mut Vec<i64>,
    out: &mut Vec<LatticeClass>,
) {
    if rem.is_negative() {
        return;
    }
    if level == 0 {
        out.push(LatticeClass::from_integers(std::array::from_fn(|i| x[i])));
        return;
    }
    let i = level - 1;
    // Offset from already-fixed deeper coordinates.
    let mut offset = Rat::zero();
    for j in i + 1..RANK {
        offset += &l[i][j] * rat(x[j]);
    }
    let center = -&offset;
    let term = |xi: i64| -> Rat {
        let shifted = rat(xi) + &offset;
        &d[i] * &shifted * &shifted
    };
    let start = match to_i64(&Rat::from_integer(nearest_with_parity(&center, parity[i]))) {
        Some(v) => v,
        None => return,
    };
    // The admissible x_i form one interval; if the nearest aligned point
    // fails, no aligned point can succeed.
    if term(start) > rem {
        return;
    }
    let mut xi = start;
    while term(xi) <= rem {
        x[i] = xi;
        descend(i, d, l, &rem - &term(xi), parity, x, out);
        xi += 2;
    }
    let mut xi = start - 2;
    while term(xi) <= rem {
        x[i] = xi;
        descend(i, d, l, &rem - &term(xi), parity, x, out);
        xi -= 2;
    }
    x[i] = 0;
}
