//! Run the full certificate suite: every lower bound and structural claim,
//! each confirmed by complete search or exact checking.
//!
//! ```bash
//! cargo run --example certificates
//! ```

use coupled_chroma::run_all;

fn main() {
    for report in run_all() {
        println!("{:<28} {:?}", report.name, report.status);
        println!("    claim: {}", report.claim);
        println!("    evidence: {}", report.evidence);
    }
}
