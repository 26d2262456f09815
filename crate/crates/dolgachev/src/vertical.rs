//! Cohomology of vertical line bundles.
//!
//! A vertical divisor on `S(p,q)` is linearly equivalent to
//! `l F + m F_p + n F_q` for unique integers with `0 <= m < p`,
//! `0 <= n < q` (excess folds into `l` through `p F_p ~ F ~ q F_q`).
//! In normal form the cohomology dimensions depend on `l` alone:
//!
//! ```text
//! h0 = max(l + 1, 0),   h2 = max(-l, 0),   h1 = max(l, -1 - l, 0),
//! ```
//!
//! so `h0 - h1 + h2 = 1` for every vertical line bundle. The two
//! section-count totals below weight the strata of type-1 and type-2
//! bundles; they take the twisting divisor `C` explicitly because its
//! presentation is case dependent and supplied by the caller.

use crate::lattice::SurfaceParams;
use crate::{Error, Result};

/// A vertical divisor class `l F + m F_p + n F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VerticalDivisor {
    pub l: i64,
    pub m: i64,
    pub n: i64,
    pub params: SurfaceParams,
}

impl VerticalDivisor {
    pub fn new(l: i64, m: i64, n: i64, params: SurfaceParams) -> Self {
        VerticalDivisor { l, m, n, params }
    }

    /// Degree against the primitive fiber class: `l pq + m q + n p`.
    /// Invariant under normalization.
    pub fn deg_k(&self) -> i64 {
        self.l * self.params.pq() + self.m * self.params.q() + self.n * self.params.p()
    }

    /// The unique representative with `0 <= m < p` and `0 <= n < q`.
    pub fn normalize(&self) -> VerticalDivisor {
        let p = self.params.p();
        let q = self.params.q();
        let m = self.m.rem_euclid(p);
        let n = self.n.rem_euclid(q);
        let l = self.l + (self.m - m) / p + (self.n - n) / q;
        VerticalDivisor { l, m, n, params: self.params }
    }

    pub fn is_normal_form(&self) -> bool {
        (0..self.params.p()).contains(&self.m) && (0..self.params.q()).contains(&self.n)
    }

    /// Cohomology dimensions of `O_S(lF + mF_p + nF_q)` (normalizes first).
    pub fn cohomology(&self) -> CohomologyDims {
        let l = self.normalize().l;
        CohomologyDims {
            h0: (l + 1).max(0),
            h1: l.max(-1 - l).max(0),
            h2: (-l).max(0),
        }
    }

    pub fn h0(&self) -> i64 {
        self.cohomology().h0
    }

    fn shifted(&self, dl: i64, dm: i64, dn: i64) -> VerticalDivisor {
        VerticalDivisor {
            l: self.l + dl,
            m: self.m + dm,
            n: self.n + dn,
            params: self.params,
        }
    }
}

impl std::fmt::Display for VerticalDivisor {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "{}F + {}F_p + {}F_q", self.l, self.m, self.n)
    }
}

/// Dimensions `(h0, h1, h2)` of a vertical line bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyDims {
    pub h0: i64,
    pub h1: i64,
    pub h2: i64,
}

impl CohomologyDims {
    pub fn euler(&self) -> i64 {
        self.h0 - self.h1 + self.h2
    }
}

/// Section-count total for a type-1 stratum: the sum of `h0` over the four
/// twists `C`, `C - alpha F_p`, `C - beta F_q`, `C - alpha F_p - beta F_q`
/// (a list with repetition when `alpha` or `beta` vanishes).
pub fn ext2_length_type1(c: &VerticalDivisor, alpha: i64, beta: i64) -> Result<i64> {
    if alpha < 0 || beta < 0 {
        return Err(Error::NegativeTwist { alpha, beta });
    }
    let twists = [(0, 0), (alpha, 0), (0, beta), (alpha, beta)];
    Ok(twists
        .iter()
        .map(|&(a, b)| c.shifted(0, -a, -b).h0())
        .sum())
}

/// Section-count total for a type-2 stratum:
/// `h0(O(C)) + h0(O(C - F + alpha F_p + beta F_q))`.
pub fn ext2_length_type2(c: &VerticalDivisor, alpha: i64, beta: i64) -> Result<i64> {
    if alpha < 0 || beta < 0 {
        return Err(Error::NegativeTwist { alpha, beta });
    }
    Ok(c.h0() + c.shifted(-1, alpha, beta).h0())
}
