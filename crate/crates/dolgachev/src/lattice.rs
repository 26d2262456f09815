//! The rank-10 model of `H^2(S; Z)` for a Dolgachev surface `S(p,q)`.
//!
//! The lattice is `Z^{1,9}` with intersection pairing `diag(+1, -1, ..., -1)`
//! in the basis `e0..e9`. The primitive fiber ray generator is fixed as
//!
//! ```text
//! k = f = 3 e0 - e1 - ... - e9,
//! ```
//!
//! which is primitive, isotropic, and has the property that every odd
//! multiple of it is characteristic. The distinguished divisor classes are
//! rational multiples of `f`:
//!
//! ```text
//! F = pq k,   F_p = q k,   F_q = p k,   K_S = (pq - p - q) k,
//! c1(n) = K_S + 2n k.
//! ```
//!
//! `Sign(S) = -8` and `c2(S) = 12` are lattice constants: `b_2^+ = 1` with
//! rank 10 gives the signature, and `K^2 + c2 = 12 chi(O) = 12` with
//! `K^2 = 0` gives the Euler number.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{rat, Rat};
use crate::{Error, Result};

/// Rank of the model lattice.
pub const RANK: usize = 10;

/// Signature of the intersection form (1 positive, 9 negative squares).
pub const SIGNATURE: i64 = -8;

/// Second Chern number of every Dolgachev surface.
pub const EULER_NUMBER: i64 = 12;

/// The coprime pair of fiber multiplicities, normalized so `p` is odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceParams {
    p: i64,
    q: i64,
}

impl SurfaceParams {
    /// Build parameters for `S(p,q)`. Requires `p, q >= 1` coprime; the
    /// constructor swaps the pair if needed so that `p` is odd (coprime
    /// integers cannot both be even). `p = q = 1` is the rational
    /// degenerate case and is allowed.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(Error::NonPositiveMultiplicity { p, q });
        }
        if p.gcd(&q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        if p % 2 == 1 {
            Ok(SurfaceParams { p, q })
        } else {
            Ok(SurfaceParams { p: q, q: p })
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn pq(&self) -> i64 {
        self.p * self.q
    }

    /// `pq - p - q`, the multiple of `k` giving the canonical class.
    /// Always odd for coprime `(p,q)`.
    pub fn canonical_multiple(&self) -> i64 {
        self.p * self.q - self.p - self.q
    }

    pub fn classes(&self) -> DistinguishedClasses {
        DistinguishedClasses::new(self)
    }
}

/// A rational vector in the rank-10 model, paired by `diag(+1,-1,...,-1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeClass {
    coords: [Rat; RANK],
}

impl LatticeClass {
    pub fn new(coords: [Rat; RANK]) -> Self {
        LatticeClass { coords }
    }

    pub fn zero() -> Self {
        LatticeClass {
            coords: std::array::from_fn(|_| Rat::zero()),
        }
    }

    /// Standard basis vector `e_i`.
    pub fn basis(i: usize) -> Self {
        assert!(i < RANK);
        let mut v = Self::zero();
        v.coords[i] = Rat::one();
        v
    }

    pub fn from_integers(coords: [i64; RANK]) -> Self {
        LatticeClass {
            coords: std::array::from_fn(|i| rat(coords[i])),
        }
    }

    pub fn coords(&self) -> &[Rat; RANK] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    /// Intersection pairing `x.y = x0 y0 - x1 y1 - ... - x9 y9`.
    pub fn pair(&self, other: &LatticeClass) -> Rat {
        let mut acc = &self.coords[0] * &other.coords[0];
        for i in 1..RANK {
            acc -= &self.coords[i] * &other.coords[i];
        }
        acc
    }

    pub fn self_pairing(&self) -> Rat {
        self.pair(self)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scaled(&self, s: &Rat) -> LatticeClass {
        LatticeClass {
            coords: std::array::from_fn(|i| &self.coords[i] * s),
        }
    }

    pub fn scaled_int(&self, s: i64) -> LatticeClass {
        self.scaled(&rat(s))
    }

    /// Integer coordinates of an integral class.
    pub fn to_integers(&self) -> Result<[BigInt; RANK]> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        Ok(std::array::from_fn(|i| self.coords[i].to_integer()))
    }

    /// True when the class pairs to `x^2 mod 2` with every integral `x`.
    /// In this model that happens exactly when all ten coordinates are odd
    /// integers, because `x.x ≡ 3x0 + x1 + ... + x9 (mod 2)` for integral
    /// `x`.
    pub fn is_characteristic(&self) -> bool {
        let two = BigInt::from(2);
        self.is_integral()
            && self
                .coords
                .iter()
                .all(|c| (c.to_integer() % &two).abs() == BigInt::one())
    }
}

impl std::ops::Add for &LatticeClass {
    type Output = LatticeClass;
    fn add(self, rhs: &LatticeClass) -> LatticeClass {
        LatticeClass {
            coords: std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]),
        }
    }
}

impl std::ops::Sub for &LatticeClass {
    type Output = LatticeClass;
    fn sub(self, rhs: &LatticeClass) -> LatticeClass {
        LatticeClass {
            coords: std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]),
        }
    }
}

impl std::ops::Neg for &LatticeClass {
    type Output = LatticeClass;
    fn neg(self) -> LatticeClass {
        LatticeClass {
            coords: std::array::from_fn(|i| -&self.coords[i]),
        }
    }
}

impl std::fmt::Display for LatticeClass {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(fm, ",")?;
            }
            write!(fm, "{}", c)?;
        }
        write!(fm, ")")
    }
}

/// The primitive isotropic generator `f = 3e0 - e1 - ... - e9` of the
/// fiber ray.
pub fn fiber_ray_generator() -> LatticeClass {
    LatticeClass::from_integers([3, -1, -1, -1, -1, -1, -1, -1, -1, -1])
}

/// The distinguished classes of `S(p,q)`, all rational multiples of the
/// primitive fiber class `k = f`.
#[derive(Debug, Clone)]
pub struct DistinguishedClasses {
    params: SurfaceParams,
    /// `k = F / pq`, primitive and isotropic.
    pub k: LatticeClass,
    /// Generic fiber `F = pq k`.
    pub fiber: LatticeClass,
    /// Reduced multiple fiber `F_p = F/p = q k`.
    pub fiber_p: LatticeClass,
    /// Reduced multiple fiber `F_q = F/q = p k`.
    pub fiber_q: LatticeClass,
    /// Canonical class `K_S = F - F_p - F_q = (pq - p - q) k`.
    pub canonical: LatticeClass,
}

impl DistinguishedClasses {
    pub fn new(params: &SurfaceParams) -> Self {
        let k = fiber_ray_generator();
        DistinguishedClasses {
            params: *params,
            fiber: k.scaled_int(params.pq()),
            fiber_p: k.scaled_int(params.q()),
            fiber_q: k.scaled_int(params.p()),
            canonical: k.scaled_int(params.canonical_multiple()),
            k,
        }
    }

    pub fn params(&self) -> &SurfaceParams {
        &self.params
    }

    /// First Chern class `c1(n) = K_S + 2n k`, an odd multiple of `k`.
    pub fn c1(&self, n: i64) -> LatticeClass {
        self.k.scaled_int(self.params.canonical_multiple() + 2 * n)
    }

    pub fn sign(&self) -> i64 {
        SIGNATURE
    }

    pub fn c2(&self) -> i64 {
        EULER_NUMBER
    }
}

/// The transvection `T_y(x) = x + (x.y) F`, an isometry of the sublattice
/// `k^perp = {x : x.f = 0}`.
///
/// Both arguments must lie in `k^perp`; outside of it the map is not an
/// isometry and the call is rejected.
pub fn transvection(
    y: &LatticeClass,
    x: &LatticeClass,
    params: &SurfaceParams,
) -> Result<LatticeClass> {
    let f = fiber_ray_generator();
    if !x.pair(&f).is_zero() {
        return Err(Error::NotInFiberPerp { which: "x" });
    }
    if !y.pair(&f).is_zero() {
        return Err(Error::NotInFiberPerp { which: "y" });
    }
    let fiber = f.scaled_int(params.pq());
    Ok(&(x.clone()) + &fiber.scaled(&x.pair(y)))
}

/// Integral basis of `f^perp = {x integral : x.f = 0}` (rank 9, contains
/// the radical `Z f`).
///
/// Built from the linear functional `x -> 3x0 + x1 + ... + x9` by pivoting
/// on the unit coefficient at `e1`.
pub fn fiber_perp_basis() -> [LatticeClass; 9] {
    // Pairing with f, as a coefficient vector: (3, 1, 1, ..., 1).
    let coeff: [i64; RANK] = [3, 1, 1, 1, 1, 1, 1, 1, 1, 1];
    let pivot = 1usize;
    let mut out: Vec<LatticeClass> = Vec::with_capacity(9);
    for j in 0..RANK {
        if j == pivot {
            continue;
        }
        let mut v = [0i64; RANK];
        v[j] = 1;
        v[pivot] = -coeff[j];
        out.push(LatticeClass::from_integers(v));
    }
    out.try_into().unwrap()
}

/// Gram matrix of `k^perp / rad` in an integral basis.
///
/// Computes an integral basis of `f^perp`, expresses `f` in it, completes
/// the coefficient vector of `f` to a unimodular change of basis, and
/// returns the Gram matrix of the eight complementary basis vectors. The
/// induced form is well defined because `f` generates the radical of the
/// pairing restricted to `f^perp`. The result is an even, negative
/// definite, unimodular rank-8 matrix (the `-E8` lattice); those facts are
/// asserted by the verification suite, not here.
pub fn k_perp_quotient_gram(_params: &SurfaceParams) -> [[i64; 8]; 8] {
    let basis = fiber_perp_basis();
    let f = fiber_ray_generator();

    // Coefficients of f over the basis: with basis vectors w_j = e_j - c_j e1
    // (j != 1), matching coordinates gives alpha_j = f_j directly.
    let mut alpha: Vec<BigInt> = Vec::with_capacity(9);
    {
        let fi = f.to_integers().unwrap();
        for (idx, j) in (0..RANK).filter(|&j| j != 1).enumerate() {
            alpha.push(fi[j].clone());
            let _ = idx;
        }
    }
    // Sanity: alpha really expresses f over the basis.
    {
        let mut acc = LatticeClass::zero();
        for (a, w) in alpha.iter().zip(basis.iter()) {
            acc = &acc + &w.scaled(&Rat::from_integer(a.clone()));
        }
        assert_eq!(acc, f, "f must lie in the span of the f^perp basis");
    }

    let w = complete_primitive_row(&alpha);
    // New basis rows: b_i = sum_j w[i][j] * basis[j]; row 0 is f.
    let mut new_basis: Vec<LatticeClass> = Vec::with_capacity(9);
    for row in &w {
        let mut acc = LatticeClass::zero();
        for (c, v) in row.iter().zip(basis.iter()) {
            acc = &acc + &v.scaled(&Rat::from_integer(c.clone()));
        }
        new_basis.push(acc);
    }
    assert_eq!(new_basis[0], f);

    let mut gram = [[0i64; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let val = new_basis[i + 1].pair(&new_basis[j + 1]);
            gram[i][j] = crate::rational::to_i64(&val).expect("integral Gram entry");
        }
    }
    gram
}

/// Complete a primitive integer row vector to a unimodular matrix whose
/// first row is that vector.
///
/// Reduces the row to `(1, 0, ..., 0)` by elementary column operations
/// accumulated into `U`, then returns `U^{-1}` (computed exactly over the
/// rationals; the inverse is integral because `det U = ±1`).
fn complete_primitive_row(alpha: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = alpha.len();
    let mut a = alpha.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    // Column operations on the row vector a, mirrored on U.
    // Invariant: original_alpha * U == a.
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&j| !a[j].is_zero()).collect();
        assert!(!nonzero.is_empty(), "primitive vector cannot be zero");
        if nonzero.len() == 1 {
            let j = nonzero[0];
            assert!(a[j].clone().abs().is_one(), "vector must be primitive");
            if j != 0 {
                a.swap(0, j);
                for row in u.iter_mut() {
                    row.swap(0, j);
                }
            }
            if a[0] == BigInt::from(-1) {
                a[0] = BigInt::one();
                for row in u.iter_mut() {
                    row[0] = -row[0].clone();
                }
            }
            break;
        }
        // Pick the two smallest-|.| nonzero entries and reduce one by the other.
        let mut idx = nonzero.clone();
        idx.sort_by_key(|&j| a[j].clone().abs());
        let (js, jl) = (idx[0], idx[1]);
        let quot = &a[jl] / &a[js];
        // col_jl -= quot * col_js
        a[jl] = &a[jl] - &quot * &a[js];
        for row in u.iter_mut() {
            let t = &row[jl] - &quot * &row[js];
            row[jl] = t;
        }
    }

    invert_unimodular(&u)
}

/// Exact inverse of an integer matrix with determinant `±1`.
fn invert_unimodular(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    // Gauss-Jordan over the rationals on [M | I].
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        Rat::from_integer(m[i][j].clone())
                    } else if j - n == i {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("unimodular matrix is invertible");
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for j in 0..2 * n {
            aug[col][j] = &aug[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for j in 0..2 * n {
                    let t = &aug[r][j] - &(&factor * &aug[col][j]);
                    aug[r][j] = t;
                }
            }
        }
    }
    (0..n)
        .map(|i| {
            (n..2 * n)
                .map(|j| {
                    assert!(aug[i][j].is_integer(), "inverse of unimodular is integral");
                    aug[i][j].to_integer()
                })
                .collect()
        })
        .collect()
}

/// Exact determinant of a small integer matrix (Bareiss elimination in
/// `i128`).
pub fn int_determinant(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| a[r][k] != 0);
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Leading principal minors of the negated matrix, for definiteness tests.
/// `gram` is negative definite iff all returned values are positive.
pub fn negated_leading_minors(gram: &[[i64; 8]; 8]) -> [i128; 8] {
    std::array::from_fn(|k| {
        let m: Vec<Vec<i128>> = (0..=k)
            .map(|i| (0..=k).map(|j| -(gram[i][j] as i128)).collect())
            .collect();
        int_determinant(&m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn params(p: i64, q: i64) -> SurfaceParams {
        SurfaceParams::new(p, q).unwrap()
    }

    #[test]
    fn params_validation_and_normalization() {
        assert!(SurfaceParams::new(4, 6).is_err());
        assert!(SurfaceParams::new(0, 1).is_err());
        let swapped = params(2, 3);
        assert_eq!((swapped.p(), swapped.q()), (3, 2));
        let kept = params(3, 2);
        assert_eq!((kept.p(), kept.q()), (3, 2));
        assert_eq!(params(1, 1).canonical_multiple(), -1);
    }

    #[test]
    fn pairing_basics() {
        let e0 = LatticeClass::basis(0);
        assert_eq!(e0.pair(&e0), rat(1));
        let e1 = LatticeClass::basis(1);
        assert_eq!(e1.pair(&e1), rat(-1));
        assert_eq!(e0.pair(&e1), rat(0));
        let f = fiber_ray_generator();
        assert_eq!(f.pair(&f), rat(0));
    }

    #[test]
    fn distinguished_class_relations() {
        for (p, q) in [(1, 1), (3, 2), (3, 4), (5, 2), (7, 3)] {
            let cl = params(p, q).classes();
            assert_eq!(cl.canonical.pair(&cl.k), rat(0));
            assert_eq!(cl.canonical.self_pairing(), rat(0));
            assert_eq!(&(&cl.fiber - &cl.fiber_p) - &cl.fiber_q, cl.canonical);
            assert_eq!(cl.fiber.pair(&cl.fiber), rat(0));
            assert_eq!(cl.fiber.pair(&cl.fiber_p), rat(0));
            assert_eq!(cl.fiber.pair(&cl.fiber_q), rat(0));
            assert_eq!(cl.fiber_p.pair(&cl.fiber_q), rat(0));
            for n in 0..5 {
                assert_eq!(cl.c1(n).self_pairing(), rat(0));
            }
            // -K_S is characteristic: odd multiple of f, all coords odd.
            let minus_k = -&cl.canonical;
            assert!(minus_k.is_characteristic());
        }
    }

    #[test]
    fn characteristic_predicate_matches_definition() {
        // (-K_S).x - x^2 is even for random integral x.
        let cl = params(3, 2).classes();
        let minus_k = -&cl.canonical;
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..200 {
            let mut coords = [0i64; RANK];
            for c in coords.iter_mut() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                *c = ((state >> 33) % 19) as i64 - 9;
            }
            let x = LatticeClass::from_integers(coords);
            let val = minus_k.pair(&x) - x.self_pairing();
            let int = crate::rational::to_i64(&val).unwrap();
            assert_eq!(int.rem_euclid(2), 0);
        }
    }

    #[test]
    fn transvection_fixed_example() {
        // x = e1 - e2, y = e2 - e3 on S(3,2): x.y = 1, F = 6f.
        let pr = params(3, 2);
        let x = &LatticeClass::basis(1) - &LatticeClass::basis(2);
        let y = &LatticeClass::basis(2) - &LatticeClass::basis(3);
        let t = transvection(&y, &x, &pr).unwrap();
        assert_eq!(
            t,
            LatticeClass::from_integers([18, -5, -7, -6, -6, -6, -6, -6, -6, -6])
        );
        assert_eq!(t.self_pairing(), rat(-2));
        assert_eq!(x.self_pairing(), rat(-2));
    }

    #[test]
    fn transvection_rejects_outside_perp() {
        let pr = params(3, 2);
        let x = LatticeClass::basis(0);
        let y = &LatticeClass::basis(1) - &LatticeClass::basis(2);
        assert!(matches!(
            transvection(&y, &x, &pr),
            Err(Error::NotInFiberPerp { which: "x" })
        ));
        assert!(matches!(
            transvection(&x, &y, &pr),
            Err(Error::NotInFiberPerp { which: "y" })
        ));
    }

    #[test]
    fn transvection_zero_pairing_is_identity() {
        let pr = params(3, 2);
        let x = &LatticeClass::basis(1) - &LatticeClass::basis(2);
        let y = &LatticeClass::basis(3) - &LatticeClass::basis(4);
        assert_eq!(x.pair(&y), rat(0));
        assert_eq!(transvection(&y, &x, &pr).unwrap(), x);
    }

    #[test]
    fn fiber_perp_basis_spans_perp() {
        let f = fiber_ray_generator();
        for v in fiber_perp_basis() {
            assert_eq!(v.pair(&f), rat(0));
            assert!(v.is_integral());
        }
    }

    #[test]
    fn quotient_gram_is_minus_e8_shaped() {
        let gram = k_perp_quotient_gram(&params(3, 2));
        // Even diagonal.
        for i in 0..8 {
            assert_eq!(gram[i][i].rem_euclid(2), 0, "diagonal entry {i} must be even");
        }
        // Symmetric.
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(gram[i][j], gram[j][i]);
            }
        }
        // Unimodular.
        let m: Vec<Vec<i128>> = (0..8)
            .map(|i| (0..8).map(|j| gram[i][j] as i128).collect())
            .collect();
        assert_eq!(int_determinant(&m).abs(), 1);
        // Negative definite.
        for minor in negated_leading_minors(&gram) {
            assert!(minor > 0);
        }
    }

    #[test]
    fn rationals_allowed_but_integrality_detectable() {
        let k = fiber_ray_generator();
        let third = k.scaled(&ratio(1, 3));
        assert!(!third.is_integral());
        assert!(k.is_integral());
    }

    prop_compose! {
        fn perp_vector()(coeffs in proptest::array::uniform9(-6i64..=6)) -> LatticeClass {
            let basis = fiber_perp_basis();
            let mut acc = LatticeClass::zero();
            for (c, v) in coeffs.iter().zip(basis.iter()) {
                acc = &acc + &v.scaled_int(*c);
            }
            acc
        }
    }

    proptest! {
        #[test]
        fn transvection_preserves_pairing_on_perp(
            x in perp_vector(),
            x2 in perp_vector(),
            y in perp_vector(),
        ) {
            let pr = params(3, 2);
            let tx = transvection(&y, &x, &pr).unwrap();
            let tx2 = transvection(&y, &x2, &pr).unwrap();
            prop_assert_eq!(tx.pair(&tx2), x.pair(&x2));
        }

        #[test]
        fn transvection_inverse_round_trip(x in perp_vector(), y in perp_vector()) {
            let pr = params(5, 2);
            let neg_y = -&y;
            let inner = transvection(&neg_y, &x, &pr).unwrap();
            let back = transvection(&y, &inner, &pr).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn pairing_symmetric_bilinear(
            a in proptest::array::uniform10(-9i64..=9),
            b in proptest::array::uniform10(-9i64..=9),
            c in proptest::array::uniform10(-9i64..=9),
            s in -4i64..=4,
        ) {
            let x = LatticeClass::from_integers(a);
            let y = LatticeClass::from_integers(b);
            let z = LatticeClass::from_integers(c);
            prop_assert_eq!(x.pair(&y), y.pair(&x));
            let lhs = x.pair(&(&y.scaled_int(s) + &z));
            let rhs = x.pair(&y) * rat(s) + x.pair(&z);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
