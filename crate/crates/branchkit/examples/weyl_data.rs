//! The spectral side of the Ansatz: coset representatives, restricted
//! labels, signs, exact c-hat values, the exterior alternating sum, and
//! the |c-hat| groups.
//!
//! ```bash
//! cargo run --example weyl_data
//! ```

use branchkit::{
    enum_wkappa, lambda_alt_sum, ptilde_ev, star_groups, weyl_terms, GroupFamily, KWeight,
};

fn main() {
    for (fam, w) in [
        (
            GroupFamily::su(3, 2).unwrap(),
            KWeight::Su {
                lambda1: vec![2, 1, 0],
                lambda2: vec![1, 0],
            },
        ),
        (
            GroupFamily::soe(2).unwrap(),
            KWeight::Soe {
                p: 0,
                lambda: vec![0, 0],
            },
        ),
        (
            GroupFamily::sostar(5).unwrap(),
            KWeight::Sostar { lambda: vec![0; 5] },
        ),
    ] {
        println!("{fam}: |W_kappa| = {}", enum_wkappa(&fam).len());
        match ptilde_ev(&fam) {
            Ok(pt) => println!("  ptilde_+^[ev] = [{pt}]"),
            Err(_) => println!("  ptilde_+^[ev] is zero-dimensional"),
        }
        println!("  alternating sum: {}", lambda_alt_sum(&fam).unwrap());
        println!("  weyl terms of {w}:");
        for t in weyl_terms(&fam, &w).unwrap() {
            println!(
                "    {:?}  sign {:+}  c-hat {:>3}  [{}]",
                t.elem, t.sign, t.c_hat, t.label
            );
        }
        println!("  groups by |c-hat|:");
        for g in star_groups(&fam, &w).unwrap() {
            println!("    key {:>2}: {}", g.key, g.sum);
        }
        println!();
    }
}
