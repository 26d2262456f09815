//! The rank-10 model of H^2(S;Z): distinguished classes, the intersection
//! pairing, transvections, and the -E8 shape of k^perp / rad.
//!
//! ```bash
//! cargo run -p dolgachev --example lattice_basics
//! ```

use dolgachev::lattice::{
    int_determinant, k_perp_quotient_gram, negated_leading_minors, transvection, LatticeClass,
};
use dolgachev::SurfaceParams;

fn main() {
    let params = SurfaceParams::new(3, 2).unwrap();
    let cl = params.classes();

    println!("S(3,2) distinguished classes:");
    println!("  k   = {}   k^2 = {}", cl.k, cl.k.self_pairing());
    println!("  F   = {}   (= pq k)", cl.fiber);
    println!("  F_p = {}", cl.fiber_p);
    println!("  F_q = {}", cl.fiber_q);
    println!("  K_S = {}   K^2 = {}, K.k = {}", cl.canonical, cl.canonical.self_pairing(), cl.canonical.pair(&cl.k));
    println!("  c1(1) = {}  c1(1)^2 = {}", cl.c1(1), cl.c1(1).self_pairing());
    println!("  Sign(S) = {}, c2(S) = {}", cl.sign(), cl.c2());
    println!();

    // A transvection in k^perp preserves self-intersections.
    let x = &LatticeClass::basis(1) - &LatticeClass::basis(2);
    let y = &LatticeClass::basis(2) - &LatticeClass::basis(3);
    let tx = transvection(&y, &x, &params).unwrap();
    println!("transvection T_y(x) = x + (x.y) F:");
    println!("  x      = {}   x^2 = {}", x, x.self_pairing());
    println!("  y      = {}   x.y = {}", y, x.pair(&y));
    println!("  T_y(x) = {}   square preserved: {}", tx, tx.self_pairing());
    println!();

    let gram = k_perp_quotient_gram(&params);
    println!("Gram matrix of k^perp / rad:");
    for row in &gram {
        println!("  {:?}", row);
    }
    let m: Vec<Vec<i128>> = (0..8)
        .map(|i| (0..8).map(|j| gram[i][j] as i128).collect())
        .collect();
    println!("  determinant = {} (unimodular)", int_determinant(&m));
    println!(
        "  negated leading minors all positive (negative definite): {:?}",
        negated_leading_minors(&gram)
    );
    println!("  diagonal even: {}", (0..8).all(|i| gram[i][i] % 2 == 0));
}
