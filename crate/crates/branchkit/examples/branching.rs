//! Branch highest weights to the cuspidal Levi's maximal compact, in all
//! three families.
//!
//! ```bash
//! cargo run --example branching
//! ```

use branchkit::{branch, branch_raw, GroupFamily, KWeight};

fn show(family: &GroupFamily, w: &KWeight) {
    println!("{family}  pi_({w})|_KM");
    for (label, mult) in branch_raw(family, w).unwrap() {
        let canon = label.canonical();
        if canon == label {
            println!("  {mult} x [{label}]");
        } else {
            println!("  {mult} x [{label}]  (canonical [{canon}])");
        }
    }
    let vc = branch(family, w).unwrap();
    println!("  as a virtual character: {vc}\n");
}

fn main() {
    // SU(2,2): interlacing pairs with the U(1) charge tracked
    let fam = GroupFamily::su(2, 2).unwrap();
    show(
        &fam,
        &KWeight::Su {
            lambda1: vec![1, 0],
            lambda2: vec![0, 0],
        },
    );

    // SO_0(2,4): the vector representation at a few SO(2) characters
    let fam = GroupFamily::soe(2).unwrap();
    for p in [0, 2] {
        show(
            &fam,
            &KWeight::Soe {
                p,
                lambda: vec![1, 0],
            },
        );
    }

    // SO_0(2,6): multiplicities m(k) beyond one
    let fam = GroupFamily::soe(3).unwrap();
    show(
        &fam,
        &KWeight::Soe {
            p: 0,
            lambda: vec![2, 1, 0],
        },
    );

    // SO*(8): the SU(2)-strings of each U(2)-isotypic component
    let fam = GroupFamily::sostar(4).unwrap();
    show(
        &fam,
        &KWeight::Sostar {
            lambda: vec![2, 1, 0, -1],
        },
    );
}
