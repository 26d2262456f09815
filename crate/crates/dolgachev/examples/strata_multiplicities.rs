//! Walk the stratum square of S(p,q): index bijections, per-stratum
//! quantities, and the signed multiplicities m(sigma, tau, n) whose sum
//! over the square is n.
//!
//! ```bash
//! cargo run -p dolgachev --example strata_multiplicities
//! ```

use dolgachev::strata::{
    decompose, multiplicity, phi_expanded, square, stratum_data, type1_index, type2_index,
};
use dolgachev::SurfaceParams;

fn main() {
    let params = SurfaceParams::new(3, 4).unwrap();
    println!("stratum square of S(3,4):");
    println!(
        "  {:>8} {:>8} {:>10} {:>3} {:>6} {:>5} {:>5}",
        "(s,t)", "type1", "type2", "d", "phi1", "phi2", "Phi"
    );
    for s in square(&params) {
        let data = stratum_data(&s, &params);
        let t1 = type1_index(&s, &params);
        let t2 = type2_index(&s, &params);
        let t2s = if t2.degenerate {
            format!("({},{})*", t2.alpha, t2.beta)
        } else {
            format!("({},{})", t2.alpha, t2.beta)
        };
        println!(
            "  {:>8} {:>8} {:>10} {:>3} {:>6} {:>5} {:>5}",
            format!("({},{})", s.sigma, s.tau),
            format!("({},{})", t1.0, t1.1),
            t2s,
            data.d,
            data.phi1.to_string(),
            data.phi2,
            data.phi
        );
        // The fully expanded route agrees with 12 phi1 + 6 phi2.
        let e = phi_expanded(&s, &params);
        assert!(e.corrected_matches);
    }
    println!("  (* = degenerate: no honest type-2 component, coefficient 0)");
    println!();

    for n in 1..=6 {
        let dec = decompose(n, &params).unwrap();
        let ms: Vec<i64> = square(&params)
            .iter()
            .map(|s| multiplicity(s, n, &params).unwrap())
            .collect();
        let total: i64 = ms.iter().sum();
        println!(
            "n = {n}: decomposition l={}, A={}, B={}; multiplicities {:?} sum to {total}",
            dec.l, dec.a, dec.b, ms
        );
        assert_eq!(total, n);
    }
}
