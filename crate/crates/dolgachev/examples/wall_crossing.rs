//! Wall queries in the positive cone: Dirac indices, effectiveness tests,
//! and the walls crossed by a segment of period points.
//!
//! ```bash
//! cargo run -p dolgachev --example wall_crossing
//! ```

use dolgachev::lattice::fiber_ray_generator;
use dolgachev::rational::ratio;
use dolgachev::walls::{dirac_index, wall_effective, walls_on_segment, PeriodPoint};
use dolgachev::{LatticeClass, SurfaceParams};

fn main() {
    let params = SurfaceParams::new(3, 2).unwrap();
    let cl = params.classes();
    let minus_k = -&cl.canonical;

    println!("Dirac indices on S(3,2) with structure class -K_S:");
    println!("  ind D_0        = {}", dirac_index(&LatticeClass::zero(), &minus_k));
    let m = &LatticeClass::basis(1) - &LatticeClass::basis(2);
    println!("  ind D_2M, M = e1-e2 (M ⟂ K, M^2 = -2): {}", dirac_index(&m.scaled_int(2), &minus_k));
    println!(
        "  wall of M effective for c1 = c1(1)? {}",
        wall_effective(&m, &cl.c1(1), &params).unwrap()
    );
    println!();

    // A short segment near the fiber ray crossing exactly one wall.
    let f = fiber_ray_generator();
    let u = &LatticeClass::basis(1) - &LatticeClass::basis(2);
    let point = |eps| {
        PeriodPoint::new(
            &(&f.scaled_int(4) + &LatticeClass::basis(0).scaled(&ratio(1, 4))) + &u.scaled(&eps),
        )
        .unwrap()
    };
    let w0 = point(ratio(-13, 24));
    let w1 = point(ratio(-7, 12));
    println!("walls crossed between");
    println!("  w0 = {}", w0.class());
    println!("  w1 = {}", w1.class());
    let walls = walls_on_segment(&w0, &w1, &cl.c1(1), &params).unwrap();
    for wall in &walls {
        println!(
            "  zeta = {}  zeta^2 = {}  M = {}  effective = {}",
            wall.zeta, wall.square, wall.reduction, wall.effective
        );
    }
    println!("({} wall(s); each is orthogonal to k, hence ineffective)", walls.len());
}
