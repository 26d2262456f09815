//! The identity suite: every dual-route computation in the crate is run
//! against its partner over parameter grids, discrepancies between
//! commonly printed formula variants and the validated working forms are
//! collected into the errata ledger, and wall enumeration is cross-checked
//! against an independent brute-force oracle.
//!
//! Hard checks gate the exit status; diagnostics never do.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hilb2::{g_cubed_f_symbolic, phi1_delta_route, remainders};
use crate::invariant::{b_closed_form, coefficients};
use crate::lattice::{
    fiber_perp_basis, int_determinant, k_perp_quotient_gram,
    negated_leading_minors, LatticeClass, SurfaceParams, RANK,
};
use crate::rational::{rat, ratio, Rat};
use crate::strata::{
    decompose, multiplicity_from_decomposition, phi_expanded, square, stratum_data,
};
use crate::vertical::VerticalDivisor;
use crate::walls::{dirac_index, wall_effective, walls_on_segment, PeriodPoint};

/// Sweep sizes for the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyDepth {
    /// `p, q <= 15`, `n <= 200`, 30 wall fixtures.
    Fast,
    /// `p, q <= 25`, `n <= 1000`, 100 wall fixtures.
    Full,
}

impl VerifyDepth {
    pub fn pq_max(&self) -> i64 {
        match self {
            VerifyDepth::Fast => 15,
            VerifyDepth::Full => 25,
        }
    }

    pub fn n_max(&self) -> i64 {
        match self {
            VerifyDepth::Fast => 200,
            VerifyDepth::Full => 1000,
        }
    }

    pub fn wall_fixtures(&self) -> usize {
        match self {
            VerifyDepth::Fast => 30,
            VerifyDepth::Full => 100,
        }
    }

    pub fn reduction_coord_bound(&self) -> i64 {
        match self {
            VerifyDepth::Fast => 3,
            VerifyDepth::Full => 4,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            VerifyDepth::Fast => "fast",
            VerifyDepth::Full => "full",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub depth: VerifyDepth,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { depth: VerifyDepth::Fast, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Diagnostic information; never gates the run.
    Info,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Info => "info",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub hard: bool,
    pub status: CheckStatus,
    pub details: String,
}

/// One catalogued discrepancy between a printed formula variant and the
/// working form, with a concrete witness evaluated by both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrataLedgerEntry {
    pub location: String,
    pub printed_form: String,
    pub working_form: String,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub depth: VerifyDepth,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub ledger: Vec<ErrataLedgerEntry>,
}

impl VerifyReport {
    pub fn hard_failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.hard && c.status == CheckStatus::Fail)
            .count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.hard_failures() == 0 {
            0
        } else {
            1
        }
    }
}

/// All distinct normalized parameter pairs with `p, q <= max`.
pub fn coprime_params(max: i64) -> Vec<SurfaceParams> {
    let mut set = BTreeSet::new();
    for p in 1..=max {
        for q in 1..=max {
            if let Ok(params) = SurfaceParams::new(p, q) {
                set.insert((params.p(), params.q()));
            }
        }
    }
    set.into_iter()
        .map(|(p, q)| SurfaceParams::new(p, q).unwrap())
        .collect()
}

/// Run the whole suite.
pub fn run_verify(opts: &VerifyOptions) -> VerifyReport {
    let checks = vec![
        check_stratum_sum(opts),
        check_closed_forms(opts),
        check_phi_expansion(opts),
        check_piecewise_degree(opts),
        check_phi1_conventions(opts),
        check_cubic_expansion(opts),
        check_euler_characteristic(opts),
        check_quotient_lattice(opts),
        check_transvection_isometry(opts),
        check_orthogonal_reductions(opts),
        check_wall_oracle(opts),
        diagnostic_weighted_sums(),
    ];
    VerifyReport {
        depth: opts.depth,
        seed: opts.seed,
        checks,
        ledger: errata_ledger(),
    }
}

fn pass(name: &str, details: String) -> CheckResult {
    CheckResult { name: name.to_string(), hard: true, status: CheckStatus::Pass, details }
}

fn fail(name: &str, details: String) -> CheckResult {
    CheckResult { name: name.to_string(), hard: true, status: CheckStatus::Fail, details }
}

fn check_stratum_sum(opts: &VerifyOptions) -> CheckResult {
    let name = "stratum multiplicity sum";
    let mut cells = 0u64;
    for params in coprime_params(opts.depth.pq_max()) {
        let cells_of_square = square(&params);
        for n in 1..=opts.depth.n_max() {
            let dec = decompose(n, &params).unwrap();
            let total: i64 = cells_of_square
                .iter()
                .map(|s| multiplicity_from_decomposition(s, &dec, &params))
                .sum();
            cells += 1;
            if total != n {
                return fail(
                    name,
                    format!(
                        "sum over the square is {total}, expected {n} at (p,q,n)=({},{},{n})",
                        params.p(),
                        params.q()
                    ),
                );
            }
        }
    }
    pass(name, format!("sum m = n exactly on {cells} (p,q,n) cells"))
}

fn check_closed_forms(opts: &VerifyOptions) -> CheckResult {
    let name = "closed-form coefficients";
    let mut cells = 0u64;
    for params in coprime_params(opts.depth.pq_max()) {
        let cells_of_square = square(&params);
        let phis: Vec<i64> = cells_of_square
            .iter()
            .map(|s| stratum_data(s, &params).phi)
            .collect();
        for n in 1..=opts.depth.n_max() {
            let dec = decompose(n, &params).unwrap();
            let mut sum_m = 0i64;
            let mut b = 0i64;
            for (s, phi) in cells_of_square.iter().zip(&phis) {
                let m = multiplicity_from_decomposition(s, &dec, &params);
                sum_m += m;
                b += m * phi;
            }
            let a = 3 * sum_m;
            cells += 1;
            if a != 3 * n || b != b_closed_form(n, &params) {
                return fail(
                    name,
                    format!(
                        "(a,b)=({a},{b}) != closed ({},{}) at (p,q,n)=({},{},{n})",
                        3 * n,
                        b_closed_form(n, &params),
                        params.p(),
                        params.q()
                    ),
                );
            }
        }
    }
    // Spot anchors.
    for (p, q, n, b_expect) in [(3i64, 2i64, 1i64, 45i64), (3, 4, 1, 237), (1, 1, 4, -12)] {
        let params = SurfaceParams::new(p, q).unwrap();
        let inv = coefficients(n, &params).unwrap();
        if inv.b != b_expect || inv.a != 3 * n {
            return fail(
                name,
                format!("anchor (p,q,n)=({p},{q},{n}) gave (a,b)=({},{})", inv.a, inv.b),
            );
        }
    }
    pass(name, format!("a = 3n and b = (2p^2q^2-2p^2-2q^2-1)n on {cells} cells"))
}

fn check_phi_expansion(opts: &VerifyOptions) -> CheckResult {
    let name = "stratum weight dual route";
    let max = opts.depth.pq_max().min(15);
    let mut strata = 0u64;
    let mut printed_disagreements = 0u64;
    for params in coprime_params(max) {
        for s in square(&params) {
            let e = phi_expanded(&s, &params);
            strata += 1;
            if !e.corrected_matches {
                return fail(
                    name,
                    format!(
                        "corrected expansion {} != 12 phi1 + 6 phi2 = {} at (p,q,s,t)=({},{},{},{})",
                        e.corrected,
                        e.reference,
                        params.p(),
                        params.q(),
                        s.sigma,
                        s.tau
                    ),
                );
            }
            if !e.printed_matches {
                printed_disagreements += 1;
            }
        }
    }
    // The printed variant must fail at the simplest witness.
    let witness = phi_expanded(
        &crate::strata::StratumIndex { sigma: 0, tau: 0 },
        &SurfaceParams::new(1, 1).unwrap(),
    );
    if witness.printed == -9 && witness.reference == -3 && printed_disagreements > 0 {
        pass(
            name,
            format!(
                "corrected expansion matches on {strata} strata; printed variant disagrees on {printed_disagreements} (witness p=q=1: -9 vs -3)"
            ),
        )
    } else {
        fail(
            name,
            format!(
                "witness values unexpected: printed {} reference {}",
                witness.printed, witness.reference
            ),
        )
    }
}

fn check_piecewise_degree(opts: &VerifyOptions) -> CheckResult {
    // The bijection degree against both else-branch readings. The
    // absolute-value reading is asserted inside stratum_data; here the
    // printed reading is measured.
    let name = "stratum degree dual route";
    let max = opts.depth.pq_max().min(15);
    let mut strata = 0u64;
    let mut printed_disagreements = 0u64;
    for params in coprime_params(max) {
        let p = params.p();
        let q = params.q();
        for s in square(&params) {
            let data = stratum_data(&s, &params);
            strata += 1;
            let branch_one = 2 * s.sigma * q + 2 * s.tau * p < p * q - p - q;
            let printed = if branch_one {
                p * q - (2 * s.sigma + 1) * q - (2 * s.tau + 1) * p
            } else {
                -p * q + (2 * s.sigma + 1) * q - (2 * s.tau + 1) * p
            };
            if printed != data.d {
                printed_disagreements += 1;
            }
        }
    }
    // Witness: (p,q,sigma,tau) = (3,2,1,0): printed -3 vs bijection 3.
    let params = SurfaceParams::new(3, 2).unwrap();
    let data = stratum_data(&crate::strata::StratumIndex { sigma: 1, tau: 0 }, &params);
    let printed_witness = -6 + 3 * 2 - 3;
    if data.d == 3 && printed_witness == -3 && printed_disagreements > 0 {
        pass(
            name,
            format!(
                "bijection degree = |piecewise| on {strata} strata; printed else branch disagrees on {printed_disagreements} (witness (3,2,1,0): -3 vs 3)"
            ),
        )
    } else {
        fail(name, format!("witness degree {} unexpected", data.d))
    }
}

fn check_phi1_conventions(opts: &VerifyOptions) -> CheckResult {
    let name = "phi1 convention dual route";
    let max = opts.depth.pq_max().min(15);
    let mut values = 0u64;
    for params in coprime_params(max) {
        let mut d = 1;
        while d <= 4 * params.pq() {
            let diag = phi1_delta_route(d, &params).unwrap();
            values += 1;
            if !diag.floor_matches {
                return fail(
                    name,
                    format!(
                        "floor convention fails at (p,q,d)=({},{},{d})",
                        params.p(),
                        params.q()
                    ),
                );
            }
            let (s_p, s_q) = remainders(d, &params);
            let gap = &diag.via_printed - &diag.canonical;
            if gap != rat(params.q() * s_q + params.p() * s_p) {
                return fail(
                    name,
                    format!(
                        "printed convention gap {gap} != q s_q + p s_p at (p,q,d)=({},{},{d})",
                        params.p(),
                        params.q()
                    ),
                );
            }
            d += 2;
        }
    }
    pass(
        name,
        format!(
            "floor convention identical to the closed form on {values} odd degrees; printed offset equals q s_q + p s_p throughout"
        ),
    )
}

fn check_cubic_expansion(opts: &VerifyOptions) -> CheckResult {
    let name = "cubic expansion against closed form";
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6375626963);
    let pairs = [(1i64, 1i64), (3, 2), (3, 4), (5, 2), (5, 4), (7, 4), (9, 2), (11, 6), (15, 8)];
    let samples = 1000usize;
    for _ in 0..samples {
        let (p, q) = pairs[rng.gen_range(0..pairs.len())];
        let params = SurfaceParams::new(p, q).unwrap();
        let cl = params.classes();
        let a = LatticeClass::from_integers(std::array::from_fn(|_| rng.gen_range(-9..=9)));
        let x = ratio(rng.gen_range(-12..=12), rng.gen_range(1..=4));
        let y = ratio(rng.gen_range(-12..=12), rng.gen_range(1..=4));
        let lhs = g_cubed_f_symbolic(&a, &x, &y, &cl.canonical, cl.c2(), &cl.fiber);
        let af = a.pair(&cl.fiber);
        let rhs =
            rat(3) * a.self_pairing() * &af + rat(6) * &x * &af * &af - rat(24) * &y * &y * &af;
        if lhs != rhs {
            return fail(
                name,
                format!("expansion {lhs} != closed {rhs} at (p,q)=({p},{q}), A={a}, x={x}, y={y}"),
            );
        }
    }
    pass(
        name,
        format!("{samples} random (A, x, y) samples expand to 3(A.A)(A.F)+6x(A.F)^2-24y^2(A.F)"),
    )
}

fn check_euler_characteristic(opts: &VerifyOptions) -> CheckResult {
    let name = "vertical Euler characteristic";
    let max = opts.depth.pq_max().min(15);
    let mut bundles = 0u64;
    for params in coprime_params(max) {
        for l in -100..=100 {
            for m in 0..params.p() {
                for n in 0..params.q() {
                    let dims = VerticalDivisor::new(l, m, n, params).cohomology();
                    bundles += 1;
                    if dims.euler() != 1 {
                        return fail(
                            name,
                            format!(
                                "chi = {} at (p,q)=({},{}), (l,m,n)=({l},{m},{n})",
                                dims.euler(),
                                params.p(),
                                params.q()
                            ),
                        );
                    }
                }
            }
        }
    }
    pass(name, format!("h0 - h1 + h2 = 1 on {bundles} vertical line bundles"))
}

fn check_quotient_lattice(opts: &VerifyOptions) -> CheckResult {
    let name = "fiber-orthogonal quotient lattice";
    let max = opts.depth.pq_max().min(15);
    for params in coprime_params(max) {
        let gram = k_perp_quotient_gram(&params);
        let as_i128: Vec<Vec<i128>> = (0..8)
            .map(|i| (0..8).map(|j| gram[i][j] as i128).collect())
            .collect();
        let det = int_determinant(&as_i128);
        if det.abs() != 1 {
            return fail(
                name,
                format!("determinant {det} != +-1 at (p,q)=({},{})", params.p(), params.q()),
            );
        }
        if (0..8).any(|i| gram[i][i].rem_euclid(2) != 0) {
            return fail(
                name,
                format!("odd diagonal entry at (p,q)=({},{})", params.p(), params.q()),
            );
        }
        if negated_leading_minors(&gram).iter().any(|&m| m <= 0) {
            return fail(
                name,
                format!("not negative definite at (p,q)=({},{})", params.p(), params.q()),
            );
        }
    }
    pass(name, "rank 8, even, negative definite, |det| = 1 for every swept (p,q)".to_string())
}

fn check_transvection_isometry(opts: &VerifyOptions) -> CheckResult {
    let name = "transvection isometry";
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x7472616e73);
    let basis = fiber_perp_basis();
    let sample = |rng: &mut ChaCha8Rng| -> LatticeClass {
        let mut acc = LatticeClass::zero();
        for v in &basis {
            acc = &acc + &v.scaled_int(rng.gen_range(-6..=6));
        }
        acc
    };
    let pairs = [(3i64, 2i64), (1, 1), (5, 4), (7, 2)];
    for i in 0..200 {
        let params =
            SurfaceParams::new(pairs[i % pairs.len()].0, pairs[i % pairs.len()].1).unwrap();
        let x = sample(&mut rng);
        let x2 = sample(&mut rng);
        let y = sample(&mut rng);
        let tx = crate::lattice::transvection(&y, &x, &params).unwrap();
        let tx2 = crate::lattice::transvection(&y, &x2, &params).unwrap();
        if tx.pair(&tx2) != x.pair(&x2) {
            return fail(name, format!("pairing not preserved at sample {i}"));
        }
        let inner = crate::lattice::transvection(&(-&y), &x, &params).unwrap();
        let back = crate::lattice::transvection(&y, &inner, &params).unwrap();
        if back != x {
            return fail(name, format!("inverse round trip broken at sample {i}"));
        }
    }
    pass(name, "pairing preserved and the inverse round trip closes on 200 sampled triples".to_string())
}

fn check_orthogonal_reductions(opts: &VerifyOptions) -> CheckResult {
    let name = "fiber-orthogonal reductions ineffective";
    let bound = opts.depth.reduction_coord_bound();
    let reductions = orthogonal_wall_reductions(bound);
    let pairs = [(1i64, 1i64), (3, 2), (3, 4)];
    let mut tested = 0u64;
    for m in &reductions {
        let msq = crate::rational::to_i64(&m.self_pairing()).unwrap();
        if msq % 2 != 0 {
            return fail(name, format!("odd self-intersection {msq} for fiber-orthogonal {m}"));
        }
        if (msq + 2) / 2 > 0 {
            return fail(name, format!("positive index for {m}"));
        }
        for (p, q) in pairs {
            let params = SurfaceParams::new(p, q).unwrap();
            let cl = params.classes();
            for n in 1..=5 {
                tested += 1;
                match wall_effective(m, &cl.c1(n), &params) {
                    Ok(false) => {}
                    Ok(true) => {
                        return fail(
                            name,
                            format!("effective wall for {m} at (p,q,n)=({p},{q},{n})"),
                        )
                    }
                    Err(e) => return fail(name, format!("unexpected rejection for {m}: {e}")),
                }
            }
        }
    }
    pass(
        name,
        format!(
            "{} reductions with coordinates <= {bound} in the wall range are all ineffective ({tested} cases)",
            reductions.len()
        ),
    )
}

/// Integral `M` with `|coords| <= bound`, `M . f = 0`, and
/// `-8 <= (c1 - 2M)^2 <= -1` (equivalently `4 M^2` in that range).
/// Enumerated through the sound bound `sum_{i>=1} M_i^2 <= M_0^2 + 2`.
pub fn orthogonal_wall_reductions(bound: i64) -> Vec<LatticeClass> {
    let budget = bound * bound + 2;
    let mut out = Vec::new();
    let mut spatial = [0i64; 9];
    enumerate_spatial(&mut spatial, 0, budget, bound, &mut |sp, norm| {
        let total: i64 = sp.iter().sum();
        if total % 3 != 0 {
            return;
        }
        let m0 = -total / 3;
        if m0.abs() > bound || norm > m0 * m0 + 2 {
            return;
        }
        let square = m0 * m0 - norm;
        if !(-8..=-1).contains(&(4 * square)) {
            return;
        }
        let mut coords = [0i64; RANK];
        coords[0] = m0;
        coords[1..].copy_from_slice(sp);
        out.push(LatticeClass::from_integers(coords));
    });
    out.sort();
    out
}

fn enumerate_spatial(
    spatial: &mut [i64; 9],
    index: usize,
    budget: i64,
    bound: i64,
    emit: &mut impl FnMut(&[i64; 9], i64),
) {
    if index == 9 {
        let norm: i64 = spatial.iter().map(|x| x * x).sum();
        emit(spatial, norm);
        return;
    }
    let cap = bound.min(isqrt(budget));
    for v in -cap..=cap {
        spatial[index] = v;
        enumerate_spatial(spatial, index + 1, budget - v * v, bound, emit);
    }
    spatial[index] = 0;
}

fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn check_wall_oracle(opts: &VerifyOptions) -> CheckResult {
    let name = "wall enumeration oracle";
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x77616c6c73);
    let params = SurfaceParams::new(3, 2).unwrap();
    let mut compared = 0usize;
    let mut nonempty = 0usize;
    let mut attempts = 0usize;
    while compared < opts.depth.wall_fixtures() {
        attempts += 1;
        if attempts > 200 * opts.depth.wall_fixtures() {
            return fail(name, "fixture generation stalled".to_string());
        }
        let n = rng.gen_range(1..=3);
        let c1 = params.classes().c1(n);
        let (w0, w1) = match (sample_period_point(&mut rng), sample_period_point(&mut rng)) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        match oracle_walls(w0.class(), w1.class(), &c1) {
            OracleOutcome::EndpointOnWall => {
                // The implementation must reject the same fixture.
                match walls_on_segment(&w0, &w1, &c1, &params) {
                    Err(crate::Error::EndpointOnWall { .. }) => {}
                    other => {
                        return fail(
                            name,
                            format!(
                                "oracle found an endpoint on a wall but the implementation returned {other:?}"
                            ),
                        )
                    }
                }
            }
            OracleOutcome::Walls(expected) => {
                let got = match walls_on_segment(&w0, &w1, &c1, &params) {
                    Ok(walls) => walls,
                    Err(e) => {
                        return fail(name, format!("implementation rejected a clean fixture: {e}"))
                    }
                };
                let got_set: BTreeSet<LatticeClass> =
                    got.iter().map(|w| w.zeta.clone()).collect();
                if got_set != expected {
                    return fail(
                        name,
                        format!(
                            "wall sets differ on fixture w0={}, w1={}: {} vs oracle {}",
                            w0.class(),
                            w1.class(),
                            got_set.len(),
                            expected.len()
                        ),
                    );
                }
                compared += 1;
                if !expected.is_empty() {
                    nonempty += 1;
                }
            }
        }
    }
    pass(
        name,
        format!(
            "{compared} random segment fixtures agree with brute force ({nonempty} crossing at least one wall)"
        ),
    )
}

/// Random rational period point with coordinates bounded by 3 and
/// self-intersection at least 1 (so the oracle's coordinate bound stays
/// small).
pub fn sample_period_point(rng: &mut ChaCha8Rng) -> Option<PeriodPoint> {
    let den = [1i64, 2, 4][rng.gen_range(0..3)];
    let first = ratio(rng.gen_range(2 * den..=3 * den), den);
    let mut coords: [Rat; RANK] = std::array::from_fn(|_| rat(0));
    coords[0] = first;
    let spots = rng.gen_range(2..=5);
    for _ in 0..spots {
        let idx = rng.gen_range(1..RANK);
        coords[idx] = ratio(rng.gen_range(-den..=den), den);
    }
    let omega = LatticeClass::new(coords);
    if omega.self_pairing() < rat(1) {
        return None;
    }
    PeriodPoint::new(omega).ok()
}

pub enum OracleOutcome {
    EndpointOnWall,
    Walls(BTreeSet<LatticeClass>),
}

/// Independent brute-force wall enumeration.
///
/// Scales each endpoint to integer coordinates (pairing signs are scale
/// invariant), derives the elementary coercivity bound
///
/// ```text
/// |spatial(zeta)|^2 <= 8 max(w0_0^2, w1_0^2) / min(w0^2, w1^2, w0.w1)
/// ```
///
/// (any crossing zeta is orthogonal to some point of the segment, and the
/// square of a segment point is at least the right-hand minimum because
/// `(1-t)^2 A + 2t(1-t) C + t^2 B >= min(A, B, C)` for `C >= 0`), and
/// walks the resulting parity-constrained ball, filtering with the exact
/// conditions. Every candidate with coordinates bounded by 50 is covered:
/// the derived bound is asserted to stay below that.
pub fn oracle_walls(w0: &LatticeClass, w1: &LatticeClass, c1: &LatticeClass) -> OracleOutcome {
    // The coordinate bound comes from the unscaled points (it bounds the
    // actual integer candidates); the scaled integer copies below only
    // speed up the sign checks.
    let budget = {
        use num_traits::ToPrimitive;
        let sq0 = w0.self_pairing();
        let sq1 = w1.self_pairing();
        let cross = w0.pair(w1);
        assert!(sq0 > rat(0) && sq1 > rat(0) && cross > rat(0));
        let gmin = sq0.clone().min(sq1.clone()).min(cross);
        let w00 = w0.coord(0);
        let w10 = w1.coord(0);
        let wmax_sq = (w00 * w00).max(w10 * w10);
        let bound = rat(8) * wmax_sq / gmin;
        bound.ceil().to_integer().to_i64().unwrap()
    };
    let a0 = scale_to_integers(w0);
    let a1 = scale_to_integers(w1);
    let dot = |x: &[i64; RANK], y: &[i64; RANK]| -> i64 {
        let mut acc = x[0] * y[0];
        for i in 1..RANK {
            acc -= x[i] * y[i];
        }
        acc
    };
    let radius = isqrt(budget);
    assert!(radius <= 50, "oracle bound must stay within the stated box");

    let parity = {
        let ints = c1.to_integers().unwrap();
        let arr: [i64; RANK] = std::array::from_fn(|i| {
            use num_traits::ToPrimitive;
            ((&ints[i] % 2i32) + 2i32).to_i64().unwrap().rem_euclid(2)
        });
        arr
    };

    let mut found = BTreeSet::new();
    let mut on_wall = false;
    let mut spatial = [0i64; 9];
    enumerate_spatial_parity(&mut spatial, 0, budget, &parity, &mut |sp, norm| {
        // zeta_0^2 must land in [norm - 8, norm - 1].
        let lo = (norm - 8).max(0);
        let hi = norm - 1;
        if hi < 0 {
            return;
        }
        let z_hi = isqrt(hi);
        let mut z0 = if parity[0] == z_hi.rem_euclid(2) { z_hi } else { z_hi - 1 };
        while z0 >= 0 && z0 * z0 >= lo {
            for signed in if z0 == 0 { vec![0] } else { vec![z0, -z0] } {
                let mut zeta = [0i64; RANK];
                zeta[0] = signed;
                zeta[1..].copy_from_slice(sp);
                let s0 = dot(&zeta, &a0);
                let s1 = dot(&zeta, &a1);
                if s0 == 0 || s1 == 0 {
                    on_wall = true;
                } else if (s0 > 0) != (s1 > 0) {
                    let normalized: [i64; RANK] =
                        if s0 > 0 { zeta } else { std::array::from_fn(|i| -zeta[i]) };
                    found.insert(LatticeClass::from_integers(normalized));
                }
            }
            z0 -= 2;
        }
    });
    if on_wall {
        OracleOutcome::EndpointOnWall
    } else {
        OracleOutcome::Walls(found)
    }
}

fn scale_to_integers(omega: &LatticeClass) -> [i64; RANK] {
    use num_traits::ToPrimitive;
    let mut lcm = num_bigint::BigInt::from(1);
    for c in omega.coords() {
        lcm = num_integer::Integer::lcm(&lcm, c.denom());
    }
    let scale = Rat::from_integer(lcm);
    std::array::from_fn(|i| {
        let v = omega.coord(i) * &scale;
        assert!(v.is_integer());
        v.to_integer().to_i64().unwrap()
    })
}

fn enumerate_spatial_parity(
    spatial: &mut [i64; 9],
    index: usize,
    budget: i64,
    parity: &[i64; RANK],
    emit: &mut impl FnMut(&[i64; 9], i64),
) {
    if index == 9 {
        let norm: i64 = spatial.iter().map(|x| x * x).sum();
        emit(spatial, norm);
        return;
    }
    let cap = isqrt(budget);
    let want = parity[index + 1];
    let mut v = if cap.rem_euclid(2) == want { cap } else { cap - 1 };
    while v >= -cap {
        spatial[index] = v;
        enumerate_spatial_parity(spatial, index + 1, budget - v * v, parity, emit);
        v -= 2;
    }
    spatial[index] = 0;
}

/// Diagnostic evaluation of the three weighted stratum sums whose printed
/// statements sum `S_q(tau)` over `tau` alone even though the remainder
/// depends on both box coordinates. Both plausible readings of the tail
/// sums are reported; neither gates the run.
fn diagnostic_weighted_sums() -> CheckResult {
    let mut agree = [[0u64; 2]; 3];
    let mut total = 0u64;
    let mut sample_rows = Vec::new();
    for (p, q) in [(3i64, 2i64), (3, 4), (5, 2)] {
        let params = SurfaceParams::new(p, q).unwrap();
        for n in 1..=50 {
            total += 1;
            let d = weighted_sum_diagnostic(n, &params);
            for identity in 0..3 {
                for reading in 0..2 {
                    if d.lhs[identity] == d.rhs[identity][reading] {
                        agree[identity][reading] += 1;
                    }
                }
            }
            if n == 1 {
                sample_rows.push(format!(
                    "(p,q)=({p},{q}) n=1: defect-sum lhs {} vs rhs {:?}; bracket-sum lhs {} vs rhs {:?}; slack-sum lhs {} vs rhs {:?}",
                    d.lhs[0], d.rhs[0], d.lhs[1], d.rhs[1], d.lhs[2], d.rhs[2]
                ));
            }
        }
    }
    let details = format!(
        "readings = [row sigma=0, bracket value list]; agreement out of {total}: defect-sum {:?}, bracket-sum {:?}, slack-sum {:?}; {}",
        agree[0],
        agree[1],
        agree[2],
        sample_rows.join("; ")
    );
    CheckResult {
        name: "weighted stratum sums (diagnostic)".to_string(),
        hard: false,
        status: CheckStatus::Info,
        details,
    }
}

struct WeightedSumDiagnostic {
    /// Left sides of the three identities.
    lhs: [i64; 3],
    /// Right sides under the two tail readings.
    rhs: [[i64; 2]; 3],
}

/// Remainder defect for a raw (possibly out-of-square) cell, used only by
/// the diagnostics.
fn raw_defect_q(sigma: i64, tau: i64, params: &SurfaceParams) -> i64 {
    let p = params.p();
    let q = params.q();
    let d = (p * q - (2 * sigma + 1) * q - (2 * tau + 1) * p).abs();
    let s_q = d.rem_euclid(2 * q);
    2 * q * s_q - s_q * s_q
}

fn raw_defect_p(sigma: i64, tau: i64, params: &SurfaceParams) -> i64 {
    let p = params.p();
    let q = params.q();
    let d = (p * q - (2 * sigma + 1) * q - (2 * tau + 1) * p).abs();
    let s_p = d.rem_euclid(2 * p);
    2 * p * s_p - s_p * s_p
}

fn weighted_sum_diagnostic(n: i64, params: &SurfaceParams) -> WeightedSumDiagnostic {
    let p = params.p();
    let q = params.q();
    let dec = decompose(n, params).unwrap();
    let cells = square(params);
    let data: Vec<_> = cells.iter().map(|s| stratum_data(s, params)).collect();
    let ms: Vec<i64> = cells
        .iter()
        .map(|s| multiplicity_from_decomposition(s, &dec, params))
        .collect();

    let lhs_defect: i64 = 3 * ms.iter().zip(&data).map(|(m, d)| m * d.s_defect_q).sum::<i64>();
    let lhs_bracket: i64 = 3 * ms
        .iter()
        .zip(&data)
        .map(|(m, d)| m * (p * p * d.t_q - d.s_defect_q))
        .sum::<i64>();
    let lhs_slack: i64 = 6 * p * q * ms.iter().zip(&data).map(|(m, d)| m * d.r).sum::<i64>();

    let t_q = |tau: i64| (2 * tau + 1) * (2 * q - 2 * tau - 1);
    let t_p = |sigma: i64| (2 * sigma + 1) * (2 * p - 2 * sigma - 1);

    let sq_reading = |tau: i64, reading: usize| -> i64 {
        match reading {
            0 => raw_defect_q(0, tau, params),
            _ => t_q(tau),
        }
    };
    let sp_reading = |sigma: i64, reading: usize| -> i64 {
        match reading {
            0 => raw_defect_p(sigma, 0, params),
            _ => t_p(sigma),
        }
    };

    let b = dec.b;
    let a = dec.a;
    let mut rhs = [[0i64; 2]; 3];
    for reading in 0..2 {
        let tail = if 2 * b <= q {
            -b * p * (2 * q * q + 1)
                + 3 * p * (0..b).map(|tau| sq_reading(tau, reading)).sum::<i64>()
        } else {
            (q - b) * p * (2 * q * q + 1)
                + 3 * p * (0..q - b).map(|tau| sq_reading(tau, reading)).sum::<i64>()
        };
        rhs[0][reading] = n * (2 * q * q + 1) + tail;

        let x_q = if 2 * b <= q {
            -b * p * (2 * q * q + 1) * (p * p - 1)
                + 3 * p
                    * (0..b)
                        .map(|tau| p * p * t_q(tau) - sq_reading(tau, reading))
                        .sum::<i64>()
        } else {
            (q - b) * p * (2 * q * q + 1) * (p * p - 1)
                + 3 * p
                    * (0..q - b)
                        .map(|tau| p * p * t_q(tau) - sq_reading(tau, reading))
                        .sum::<i64>()
        };
        rhs[1][reading] = n * (2 * q * q + 1) * (p * p - 1) + x_q;

        let x_p = if 2 * a <= p {
            -a * q * (2 * p * p + 1) * (q * q - 1)
                + 3 * q
                    * (0..a)
                        .map(|sigma| q * q * t_p(sigma) - sp_reading(sigma, reading))
                        .sum::<i64>()
        } else {
            (p - a) * q * (2 * p * p + 1) * (q * q - 1)
                + 3 * q
                    * (0..p - a)
                        .map(|sigma| q * q * t_p(sigma) - sp_reading(sigma, reading))
                        .sum::<i64>()
        };
        rhs[2][reading] = n * (p * p - 1) * (q * q - 1) - x_p - x_q;
    }

    WeightedSumDiagnostic { lhs: [lhs_defect, lhs_bracket, lhs_slack], rhs }
}

/// The catalogued discrepancies, each evaluated live on its witness.
pub fn errata_ledger() -> Vec<ErrataLedgerEntry> {
    let mut entries = Vec::new();

    // 1. Middle sign of the stratum weight expansion.
    {
        let params = SurfaceParams::new(1, 1).unwrap();
        let e = phi_expanded(&crate::strata::StratumIndex { sigma: 0, tau: 0 }, &params);
        assert_eq!((e.printed, e.reference), (-9, -3));
        entries.push(ErrataLedgerEntry {
            location: "stratum weight expansion, middle sign".to_string(),
            printed_form: "3(q^2 T_p - S_p) - 3(p^2 T_q + S_q) + 6pqR - 3p^2q^2".to_string(),
            working_form: "3(q^2 T_p - S_p) + 3(p^2 T_q - S_q) + 6pqR - 3p^2q^2".to_string(),
            witness: format!(
                "(p,q,sigma,tau,n)=(1,1,0,0,1): printed {} vs working {} = 12 phi1 + 6 phi2",
                e.printed, e.reference
            ),
        });
    }

    // 2. Else branch of the piecewise stratum degree.
    {
        let params = SurfaceParams::new(3, 2).unwrap();
        let data = stratum_data(&crate::strata::StratumIndex { sigma: 1, tau: 0 }, &params);
        let printed = -params.pq() + 3 * params.q() - params.p();
        assert_eq!((printed, data.d), (-3, 3));
        entries.push(ErrataLedgerEntry {
            location: "piecewise stratum degree, else branch".to_string(),
            printed_form: "-pq + (2 sigma + 1)q - (2 tau + 1)p".to_string(),
            working_form:
                "|pq - (2 sigma + 1)q - (2 tau + 1)p| (= pq - alpha q - beta p from the index bijection)"
                    .to_string(),
            witness: format!(
                "(p,q,sigma,tau,n)=(3,2,1,0,1): printed {printed} vs working {}",
                data.d
            ),
        });
    }

    // 3. Floor-offset convention in the degree brackets.
    {
        let params = SurfaceParams::new(1, 1).unwrap();
        let diag = phi1_delta_route(1, &params).unwrap();
        assert_eq!(diag.via_printed, ratio(7, 4));
        assert_eq!(diag.canonical, ratio(-1, 4));
        entries.push(ErrataLedgerEntry {
            location: "floor-offset convention in the degree brackets".to_string(),
            printed_form: "delta_p = floor(d / 2q) - 1".to_string(),
            working_form: "delta_p = floor(d / 2q) (offset variant differs by q s_q + p s_p)"
                .to_string(),
            witness: format!(
                "(p,q,sigma,tau,n)=(1,1,0,0,1) i.e. d=1: printed route {} vs working {}",
                diag.via_printed, diag.canonical
            ),
        });
    }

    // 4. Index arithmetic for fiber-orthogonal reductions.
    {
        let params = SurfaceParams::new(3, 2).unwrap();
        let cl = params.classes();
        let m = &LatticeClass::basis(1) - &LatticeClass::basis(2);
        let working = dirac_index(&m.scaled_int(2), &(-&cl.canonical));
        assert_eq!(working, rat(0));
        let msq = crate::rational::to_i64(&m.self_pairing()).unwrap();
        let printed_intermediate = 4 * msq - 8;
        entries.push(ErrataLedgerEntry {
            location: "index evaluation for fiber-orthogonal reductions".to_string(),
            printed_form: "((C + 2M)^2 - Sign)/8 = 4M^2 - 8".to_string(),
            working_form:
                "((C + 2M)^2 - Sign)/8 = (4M^2 + 8)/8 = (M^2 + 2)/2 for M orthogonal to K"
                    .to_string(),
            witness: format!(
                "(p,q,n)=(3,2,1), M with M^2 = -2 orthogonal to K: intermediate {printed_intermediate} vs working value {working} (the stated final value 0 agrees)"
            ),
        });
    }

    // 5. Second summand of the type-2 section count.
    {
        let params = SurfaceParams::new(3, 4).unwrap();
        let c = VerticalDivisor::new(1, 0, 0, params);
        let working = crate::vertical::ext2_length_type2(&c, 1, 2).unwrap();
        // Literal reading: both twists by the p-fiber, C - F + (alpha+beta) F_p.
        let printed = c.h0() + VerticalDivisor::new(0, 3, 0, params).h0();
        assert_eq!((printed, working), (4, 3));
        entries.push(ErrataLedgerEntry {
            location: "type-2 section-count twist".to_string(),
            printed_form:
                "h0(O(C)) + h0(O(C_F + alpha F_p + beta F_p)) (garbled twist, repeated p-fiber)"
                    .to_string(),
            working_form: "h0(O(C)) + h0(O(C - F + alpha F_p + beta F_q))".to_string(),
            witness: format!(
                "(p,q)=(3,4), C=F, alpha=1, beta=2: repeated-p reading {printed} vs working {working}"
            ),
        });
    }

    // 6. Leading-coefficient normalization.
    {
        let params = SurfaceParams::new(3, 2).unwrap();
        let inv = coefficients(1, &params).unwrap();
        assert_eq!((inv.sum_m, inv.a), (1, 3));
        entries.push(ErrataLedgerEntry {
            location: "leading-coefficient normalization".to_string(),
            printed_form: "a(n) = sum over the square of m(sigma, tau, n)".to_string(),
            working_form:
                "a(n) = 3 sum m = 3n (matches the quartic-form normalization Q^2(A,A,A,F) = (A.A)(A.F) against the leading cube term 3(A.F)(A.A))"
                    .to_string(),
            witness: format!(
                "(p,q,sigma,tau,n)=(3,2,-,-,1): raw sum {} vs reported a = {}",
                inv.sum_m, inv.a
            ),
        });
    }

    entries
}
