//! Cohomology dimensions of vertical line bundles and the section-count
//! totals weighting the two stratum families.
//!
//! ```bash
//! cargo run -p dolgachev --example vertical_cohomology
//! ```

use dolgachev::vertical::{ext2_length_type1, ext2_length_type2, VerticalDivisor};
use dolgachev::SurfaceParams;

fn main() {
    let params = SurfaceParams::new(3, 2).unwrap();

    println!("dimensions of O(lF + mF_p + nF_q) on S(3,2):");
    println!("  {:>14} {:>16} {:>4} {:>4} {:>4}", "divisor", "normal form", "h0", "h1", "h2");
    for (l, m, n) in [(0, 0, 0), (-1, 0, 0), (2, 0, 0), (0, 4, 3), (0, 1, 1), (-2, 2, 1)] {
        let d = VerticalDivisor::new(l, m, n, params);
        let nf = d.normalize();
        let dims = d.cohomology();
        println!(
            "  {:>14} {:>16} {:>4} {:>4} {:>4}",
            format!("({l},{m},{n})"),
            format!("({},{},{})", nf.l, nf.m, nf.n),
            dims.h0,
            dims.h1,
            dims.h2
        );
        assert_eq!(dims.euler(), 1);
    }
    println!("  (h0 - h1 + h2 = 1 in every row)");
    println!();

    // Section-count totals over the four type-1 twists and the two
    // type-2 summands.
    let c = VerticalDivisor::new(0, 1, 1, params);
    println!(
        "type-1 total over {{C, C-aF_p, C-bF_q, C-aF_p-bF_q}} for C = F_p+F_q, a=b=1: {}",
        ext2_length_type1(&c, 1, 1).unwrap()
    );
    let c = VerticalDivisor::new(1, 0, 0, params);
    println!(
        "type-2 total h0(C) + h0(C-F+aF_p+bF_q) for C = F, a=b=1: {}",
        ext2_length_type2(&c, 1, 1).unwrap()
    );
}
