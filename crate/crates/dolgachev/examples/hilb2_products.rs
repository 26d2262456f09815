//! Quartic intersection products of formal divisors on Hilb^2(S) and the
//! mu(A)^3 evaluators for both stratum families.
//!
//! ```bash
//! cargo run -p dolgachev --example hilb2_products
//! ```

use dolgachev::hilb2::{
    g_cubed_f_symbolic, mu_cubed_type1, mu_cubed_type2, phi1_of_d, phi2, quartic, Hilb2Divisor,
};
use dolgachev::rational::rat;
use dolgachev::{LatticeClass, SurfaceParams};

fn main() {
    let params = SurfaceParams::new(3, 2).unwrap();
    let cl = params.classes();
    let t = Hilb2Divisor::exceptional();

    println!("product rules on Hilb^2 of S(3,2) (K^2 = 0, c2 = 12):");
    println!(
        "  T^4 = {}",
        quartic(&t, &t, &t, &t, &cl.canonical, cl.c2())
    );
    let a = Hilb2Divisor::from_surface(LatticeClass::from_integers([2, 1, 0, 0, 0, 0, 0, 0, 0, 0]));
    println!(
        "  A.A.T.T with A^2 = 3: {}",
        quartic(&a, &a, &t, &t, &cl.canonical, cl.c2())
    );
    let b = Hilb2Divisor::from_surface(LatticeClass::basis(0));
    println!(
        "  A.B.B.T (three surface classes, one T): {}",
        quartic(&a, &b, &b, &t, &cl.canonical, cl.c2())
    );
    println!();

    // (A + xF + yT)^3 . F through the rules vs its closed form.
    let a = LatticeClass::basis(0);
    let v = g_cubed_f_symbolic(&a, &rat(0), &rat(1), &cl.canonical, cl.c2(), &cl.fiber);
    println!("(e0 + 1*T)^3 . F = {v}  (closed form 3(A.A)(A.F) - 24(A.F) = 54 - 432)");
    println!();

    println!("coefficient functions on S(3,2):");
    for d in [1, 3, 5] {
        println!("  phi1({d}) = {}", phi1_of_d(d, &params).unwrap());
    }
    println!("  phi2(1,1) = {}", phi2(1, 1, &params).unwrap());
    println!();

    println!("mu-cubes against A = e0 (A.F = 18, A.k = 3):");
    println!("  type 1, d = 1: {}", mu_cubed_type1(&a, 1, &params).unwrap());
    println!("  type 2, (alpha,beta) = (1,1): {}", mu_cubed_type2(&a, 1, 1, &params).unwrap());
}
