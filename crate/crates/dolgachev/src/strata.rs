//! The stratum square, its two index bijections, per-stratum quantities,
//! and the signed multiplicities weighting each stratum.
//!
//! The component strata of the relevant moduli are indexed by
//!
//! ```text
//! square = { (sigma, tau) : 0 <= sigma <= (p-1)/2,  0 <= tau <= (q-1)/2 },
//! ```
//!
//! in bijection with the type-1 index set
//! `{(alpha,beta) : (alpha-1)q + (beta-1)p even, alpha/p + beta/q < 1}`
//! and (away from degenerate corners) with the type-2 index set
//! `{(alpha,beta) : alpha q + beta p odd, alpha/p + beta/q < 1}`.
//!
//! Each stratum carries `d = pq - alpha_1 q - beta_1 p` (odd, positive),
//! the odd remainders `s_p = d mod 2p`, `s_q = d mod 2q`, the bracket
//! quantities
//!
//! ```text
//! T_p = (2 sigma + 1)(2p - 2 sigma - 1),      S_p = 2 p s_p - s_p^2,
//! R   = max(pq - p - q - 2 sigma q - 2 tau p, 0),
//! ```
//!
//! their `q`-analogues, and the weight `Phi = 12 phi1 + 6 phi2`. A second,
//! fully expanded route to `Phi` is kept for cross-checking; see
//! [`phi_expanded`].

use crate::hilb2::{phi1_of_d, remainders};
use crate::lattice::SurfaceParams;
use crate::rational::{rat, to_i64, Rat};
use crate::{Error, Result};

/// A cell `(sigma, tau)` of the stratum square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumIndex {
    pub sigma: i64,
    pub tau: i64,
}

/// All cells of the square in lexicographic order;
/// `ceil(p/2) * ceil(q/2)` of them.
pub fn square(params: &SurfaceParams) -> Vec<StratumIndex> {
    let smax = (params.p() - 1) / 2;
    let tmax = (params.q() - 1) / 2;
    let mut out = Vec::with_capacity(((smax + 1) * (tmax + 1)) as usize);
    for sigma in 0..=smax {
        for tau in 0..=tmax {
            out.push(StratumIndex { sigma, tau });
        }
    }
    out
}

fn in_square(s: &StratumIndex, params: &SurfaceParams) -> bool {
    (0..=(params.p() - 1) / 2).contains(&s.sigma) && (0..=(params.q() - 1) / 2).contains(&s.tau)
}

/// Type-1 index of a stratum. Of the two candidates
/// `(2 sigma + 1, 2 tau + 1)` and `(p - 2 sigma - 1, q - 2 tau - 1)`
/// exactly one satisfies `alpha/p + beta/q < 1` (the parity condition
/// holds for both); that one is returned.
pub fn type1_index(s: &StratumIndex, params: &SurfaceParams) -> (i64, i64) {
    assert!(in_square(s, params), "stratum index outside the square");
    let p = params.p();
    let q = params.q();
    let candidates = [
        (2 * s.sigma + 1, 2 * s.tau + 1),
        (p - 2 * s.sigma - 1, q - 2 * s.tau - 1),
    ];
    let valid = |&(alpha, beta): &(i64, i64)| {
        alpha >= 0
            && beta >= 0
            && ((alpha - 1) * q + (beta - 1) * p) % 2 == 0
            && alpha * q + beta * p < p * q
    };
    match (valid(&candidates[0]), valid(&candidates[1])) {
        (true, false) => candidates[0],
        (false, true) => candidates[1],
        other => unreachable!("exactly one type-1 candidate must validate, got {other:?}"),
    }
}

/// Type-2 index of a stratum, possibly degenerate.
///
/// Candidates are `(2 sigma + 1, q - 2 tau - 1)` and
/// `(p - 2 sigma - 1, 2 tau + 1)`; both always have `alpha q + beta p`
/// odd, and at most one satisfies the strict inequality
/// `alpha/p + beta/q < 1`. A valid pair with `alpha beta = 0` is flagged
/// degenerate (no honest component; the coefficient vanishes). At the
/// corner `sigma = (p-1)/2, tau = (q-1)/2` with `q` odd neither candidate
/// validates; the flagged placeholder `(0, 0)` is returned and the
/// piecewise coefficient vanishes there as well.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Type2Index {
    pub alpha: i64,
    pub beta: i64,
    pub degenerate: bool,
}

pub fn type2_index(s: &StratumIndex, params: &SurfaceParams) -> Type2Index {
    assert!(in_square(s, params), "stratum index outside the square");
    let p = params.p();
    let q = params.q();
    let candidates = [
        (2 * s.sigma + 1, q - 2 * s.tau - 1),
        (p - 2 * s.sigma - 1, 2 * s.tau + 1),
    ];
    let valid = |&(alpha, beta): &(i64, i64)| {
        alpha >= 0 && beta >= 0 && (alpha * q + beta * p) % 2 == 1 && alpha * q + beta * p < p * q
    };
    let picks: Vec<(i64, i64)> = candidates.iter().filter(|c| valid(c)).copied().collect();
    assert!(picks.len() <= 1, "type-2 candidates cannot both validate");
    match picks.first() {
        Some(&(alpha, beta)) => Type2Index {
            alpha,
            beta,
            degenerate: alpha == 0 || beta == 0,
        },
        None => Type2Index { alpha: 0, beta: 0, degenerate: true },
    }
}

/// Everything attached to a single stratum.
#[derive(Debug, Clone, PartialEq)]
pub struct StratumData {
    pub index: StratumIndex,
    pub type1_alpha: i64,
    pub type1_beta: i64,
    pub type2: Type2Index,
    /// `pq - alpha_1 q - beta_1 p`; odd, `1 <= d <= pq`.
    pub d: i64,
    /// `d mod 2p`, odd.
    pub s_p: i64,
    /// `d mod 2q`, odd.
    pub s_q: i64,
    pub t_p: i64,
    pub t_q: i64,
    /// `2 p s_p - s_p^2`.
    pub s_defect_p: i64,
    /// `2 q s_q - s_q^2`.
    pub s_defect_q: i64,
    /// `max(pq - p - q - 2 sigma q - 2 tau p, 0)`.
    pub r: i64,
    pub phi1: Rat,
    pub phi2: i64,
    /// `Phi = 12 phi1 + 6 phi2`, always an integer.
    pub phi: i64,
}

/// Compute all per-stratum quantities.
///
/// `d` comes from the type-1 bijection (positive by construction); the
/// piecewise alternative `|pq - (2 sigma + 1) q - (2 tau + 1) p|` is
/// cross-checked against it here. `phi2` uses the piecewise form, which
/// agrees with the normalized closed form on the type-2 index (tested in
/// the suite).
pub fn stratum_data(s: &StratumIndex, params: &SurfaceParams) -> StratumData {
    let p = params.p();
    let q = params.q();
    let (a1, b1) = type1_index(s, params);
    let d = p * q - a1 * q - b1 * p;
    assert!(d >= 1 && d % 2 == 1, "stratum degree must be odd and positive");
    // Piecewise route with the absolute-value reading of the else branch.
    let piecewise = (p * q - (2 * s.sigma + 1) * q - (2 * s.tau + 1) * p).abs();
    assert_eq!(d, piecewise, "bijection and piecewise degree routes must agree");

    let (s_p, s_q) = remainders(d, params);
    assert!(s_p % 2 == 1 && s_q % 2 == 1);
    let t_p = (2 * s.sigma + 1) * (2 * p - 2 * s.sigma - 1);
    let t_q = (2 * s.tau + 1) * (2 * q - 2 * s.tau - 1);
    let s_defect_p = 2 * p * s_p - s_p * s_p;
    let s_defect_q = 2 * q * s_q - s_q * s_q;
    let r = (p * q - p - q - 2 * s.sigma * q - 2 * s.tau * p).max(0);

    let phi1 = phi1_of_d(d, params).expect("d odd and positive");
    let branch_one = 2 * s.sigma * q + 2 * s.tau * p < p * q - p - q;
    let phi2 = if branch_one {
        (2 * s.sigma + 1) * (2 * s.tau + 1) * p * q
    } else {
        (p - 2 * s.sigma - 1) * (q - 2 * s.tau - 1) * p * q
    };
    let phi_rat = rat(12) * &phi1 + rat(6 * phi2);
    let phi = to_i64(&phi_rat).expect("Phi = 12 phi1 + 6 phi2 is integral");

    StratumData {
        index: *s,
        type1_alpha: a1,
        type1_beta: b1,
        type2: type2_index(s, params),
        d,
        s_p,
        s_q,
        t_p,
        t_q,
        s_defect_p,
        s_defect_q,
        r,
        phi1,
        phi2,
        phi,
    }
}

/// Dual-route evaluation of `Phi`.
///
/// The working expansion is
///
/// ```text
/// 3(q^2 T_p - S_p) + 3(p^2 T_q - S_q) + 6 pq R - 3 p^2 q^2,
/// ```
///
/// which equals `12 phi1 + 6 phi2` on every stratum. The variant with
/// `-3(p^2 T_q + S_q)` in place of `+3(p^2 T_q - S_q)` is also evaluated;
/// it disagrees (by `6 p^2 T_q`) and feeds the errata ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiExpansion {
    pub corrected: i64,
    pub printed: i64,
    /// Reference value `12 phi1 + 6 phi2`.
    pub reference: i64,
    pub corrected_matches: bool,
    pub printed_matches: bool,
}

pub fn phi_expanded(s: &StratumIndex, params: &SurfaceParams) -> PhiExpansion {
    let data = stratum_data(s, params);
    let p = params.p();
    let q = params.q();
    let corrected = 3 * (q * q * data.t_p - data.s_defect_p)
        + 3 * (p * p * data.t_q - data.s_defect_q)
        + 6 * p * q * data.r
        - 3 * p * p * q * q;
    let printed = 3 * (q * q * data.t_p - data.s_defect_p)
        - 3 * (p * p * data.t_q + data.s_defect_q)
        + 6 * p * q * data.r
        - 3 * p * p * q * q;
    PhiExpansion {
        corrected,
        printed,
        reference: data.phi,
        corrected_matches: corrected == data.phi,
        printed_matches: printed == data.phi,
    }
}

/// The unique decomposition `n = l pq + A q + B p` with `0 <= A < p`,
/// `0 <= B < q`; `l >= -1` whenever `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NDecomposition {
    pub n: i64,
    pub l: i64,
    /// Coefficient of `q`; `0 <= a < p`.
    pub a: i64,
    /// Coefficient of `p`; `0 <= b < q`.
    pub b: i64,
}

pub fn decompose(n: i64, params: &SurfaceParams) -> Result<NDecomposition> {
    if n < 1 {
        return Err(Error::InvalidChamberParameter { n });
    }
    let p = params.p();
    let q = params.q();
    let a = if p == 1 { 0 } else { (n * mod_inverse(q, p)).rem_euclid(p) };
    let b = if q == 1 { 0 } else { (n * mod_inverse(p, q)).rem_euclid(q) };
    let rem = n - a * q - b * p;
    assert_eq!(rem % (p * q), 0, "decomposition residue must be divisible by pq");
    let l = rem / (p * q);
    assert!(l >= -1);
    Ok(NDecomposition { n, l, a, b })
}

fn mod_inverse(x: i64, modulus: i64) -> i64 {
    // Extended Euclid; gcd(x, modulus) = 1 by construction of the params.
    let (mut r0, mut r1) = (modulus, x.rem_euclid(modulus));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    assert_eq!(r0, 1, "arguments must be coprime");
    t0.rem_euclid(modulus)
}

/// The signed multiplicity `m(sigma, tau, n)`.
///
/// ```text
/// m = (l + 1 + H_p(sigma, A) + H_q(tau, B)) c(sigma) c(tau)
/// ```
///
/// with `H_p = +1/2` if `sigma >= p - A`, `-1/2` if `sigma >= A`, else 0
/// (the two cases are mutually exclusive on the square, asserted here),
/// and `c(sigma) = 1` exactly at the boundary cell `sigma = (p-1)/2`,
/// else 2 (for even `q` the `tau`-boundary is the half-integer `(q-1)/2`,
/// which no integer `tau` reaches, so `c(tau) = 2` throughout).
/// Half-integer `H` contributions always meet an even `c`-product, so
/// `m` is an integer. It may be negative.
pub fn multiplicity(s: &StratumIndex, n: i64, params: &SurfaceParams) -> Result<i64> {
    let dec = decompose(n, params)?;
    Ok(multiplicity_from_decomposition(s, &dec, params))
}

/// `c(sigma) = 1` iff `2 sigma + 1 = p`, i.e. the box boundary is hit.
pub fn boundary_weight(sigma: i64, p: i64) -> i64 {
    if 2 * sigma + 1 == p {
        1
    } else {
        2
    }
}

/// Multiplicity with the decomposition of `n` precomputed, for sweeps.
pub fn multiplicity_from_decomposition(
    s: &StratumIndex,
    dec: &NDecomposition,
    params: &SurfaceParams,
) -> i64 {
    let doubled = 2 * (dec.l + 1)
        + half_case(s.sigma, dec.a, params.p())
        + half_case(s.tau, dec.b, params.q());
    let total = doubled * boundary_weight(s.sigma, params.p()) * boundary_weight(s.tau, params.q());
    assert_eq!(total % 2, 0, "multiplicity must be an integer");
    total / 2
}

/// Twice the three-case half-integer correction.
fn half_case(sigma: i64, a: i64, p: i64) -> i64 {
    let plus = sigma >= p - a;
    let minus = sigma >= a;
    assert!(!(plus && minus), "half-integer cases must be exclusive on the square");
    if plus {
        1
    } else if minus {
        -1
    } else {
        0
    }
}

/// `sum over the square of m(sigma, tau, n)`; equals `n` (the stratum-sum
/// identity, exercised exhaustively by the acceptance suite).
pub fn multiplicity_sum(n: i64, params: &SurfaceParams) -> Result<i64> {
    let dec = decompose(n, params)?;
    Ok(square(params)
        .iter()
        .map(|s| multiplicity_from_decomposition(s, &dec, params))
        .sum())
}
