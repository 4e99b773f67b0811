//! Scan SO*(2n) highest weights and test every |c-hat| group of the
//! Ansatz sum against the bounded lattice search. No weight of SO*(10)
//! gets certified good, consistent with the expected outcome.
//!
//! ```bash
//! cargo run --release --example explore_sostar            # n=4, bound 1
//! cargo run --release --example explore_sostar -- 5 1 2   # n, bound, radius
//! ```

use branchkit::{explore_sostar, lattice::default_generator_cap};

fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric arguments: n bound radius"))
        .collect();
    let n = args.first().copied().unwrap_or(4);
    let bound = args.get(1).copied().unwrap_or(1) as i64;
    let radius = args.get(2).copied().unwrap_or(2) as u32;

    let rows = explore_sostar(n, bound, radius, default_generator_cap()).unwrap();
    let mut good = 0;
    for row in &rows {
        let statuses: Vec<String> = row
            .groups
            .iter()
            .map(|g| format!("{}:{}", g.key, &g.status[..1]))
            .collect();
        println!(
            "lambda {:>14}  verdict {:<8} [{}]",
            row.lambda.to_string(),
            row.verdict.status(),
            statuses.join(" ")
        );
        if row.verdict.is_good() {
            good += 1;
        }
    }
    println!(
        "\n{} weights, {} certified good (m = member, u = unknown)",
        rows.len(),
        good
    );
}
