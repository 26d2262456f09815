//! Compute the invariant coefficients a(n), b(n) for a few surfaces and
//! compare them with the closed forms a(n) = 3n and
//! b(n) = (2p^2q^2 - 2p^2 - 2q^2 - 1)n.
//!
//! ```bash
//! cargo run -p dolgachev --example invariant_coefficients
//! ```

use dolgachev::invariant::{closed_form_check, coefficients};
use dolgachev::SurfaceParams;

fn main() {
    for (p, q) in [(1, 1), (3, 2), (3, 4), (5, 2)] {
        let params = SurfaceParams::new(p, q).unwrap();
        println!("S({},{}):", params.p(), params.q());
        println!("  {:>3} {:>6} {:>6} {:>8} {:>8}", "n", "sum_m", "a", "b", "closed_b");
        for n in 1..=5 {
            let inv = coefficients(n, &params).unwrap();
            let check = closed_form_check(n, &params).unwrap();
            assert!(check.is_exact());
            let c = inv
                .c_known
                .map(|c| format!("  c = {c}"))
                .unwrap_or_default();
            println!(
                "  {:>3} {:>6} {:>6} {:>8} {:>8}{}",
                n, inv.sum_m, inv.a, inv.b, check.closed_b, c
            );
        }
        println!();
    }
    println!("every row matches the closed forms exactly");
}
