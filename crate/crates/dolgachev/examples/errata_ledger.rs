//! Print the errata ledger: every place where a commonly printed formula
//! variant disagrees with the working form validated end-to-end by the
//! closed-form identities, each with a concrete two-sided witness.
//!
//! ```bash
//! cargo run -p dolgachev --example errata_ledger
//! ```

use dolgachev::verify::{errata_ledger, run_verify, VerifyDepth, VerifyOptions};

fn main() {
    println!("errata ledger ({} entries):", errata_ledger().len());
    for entry in errata_ledger() {
        println!("- {}", entry.location);
        println!("    printed: {}", entry.printed_form);
        println!("    working: {}", entry.working_form);
        println!("    witness: {}", entry.witness);
    }
    println!();

    let report = run_verify(&VerifyOptions { depth: VerifyDepth::Fast, seed: 0 });
    println!("verification suite (fast depth, seed 0):");
    for check in &report.checks {
        println!("  [{}] {}", check.status.as_str(), check.name);
    }
    println!("hard failures: {}", report.hard_failures());
}
