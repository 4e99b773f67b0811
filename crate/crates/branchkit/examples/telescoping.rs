//! The telescoping identity in `K^0(K_M)` for su:m,2: the alternating sum
//! of branched exterior-power weights equals the twisted alternating sum
//! of `Lambda^j ptilde_+^[ev]`, exactly.
//!
//! ```bash
//! cargo run --example telescoping
//! ```

use branchkit::{lambda_alt_sum, twist_char, verify_telescoping, GroupFamily, KMLabel};

fn main() {
    for m in 2..=6 {
        let ok = verify_telescoping(m).unwrap();
        println!(
            "su:{m},2  telescoping identity: {}",
            if ok { "exact" } else { "MISMATCH" }
        );
    }

    // what the right-hand side looks like for m = 3
    let fam = GroupFamily::su(3, 2).unwrap();
    let alt = lambda_alt_sum(&fam).unwrap();
    println!("\nsu:3,2 alternating sum: {alt}");
    let twist = KMLabel::Su {
        mu1: vec![0, 0],
        mu2: vec![-1],
        p: 1,
    };
    println!(
        "twisted by tau_(0,0),(-1),1: {}",
        twist_char(&alt, &twist).unwrap()
    );
}
