//! The good-highest-weight classifier across the three families:
//! rank-one surjectivity, the SO_0(2,2n) criterion, and the su:3,2
//! invariant certificates.
//!
//! ```bash
//! cargo run --example goodness
//! ```

use branchkit::{is_good, ClassifyOptions, GroupFamily, KWeight, Verdict};

fn show(fam: &GroupFamily, w: KWeight) {
    let verdict = is_good(fam, &w, &ClassifyOptions::default()).unwrap();
    match &verdict {
        Verdict::Good => println!("{fam}  {w}: good"),
        Verdict::Unknown => println!("{fam}  {w}: unknown"),
        Verdict::NotGood { key, certificate } => {
            println!("{fam}  {w}: not good at |c-hat| = {key}  ({certificate:?})")
        }
    }
}

fn main() {
    // rank one: the restriction map is surjective, everything is good
    let fam = GroupFamily::su(1, 2).unwrap();
    show(
        &fam,
        KWeight::Su {
            lambda1: vec![3],
            lambda2: vec![1, -2],
        },
    );

    // SO_0(2,4): good iff p = n or lambda_n = 0
    let fam = GroupFamily::soe(2).unwrap();
    for (p, lambda) in [(2, vec![1, 1]), (0, vec![1, 1]), (0, vec![2, 0])] {
        show(&fam, KWeight::Soe { p, lambda });
    }

    // su:3,2: every weight fails with an explicit invariant value
    let fam = GroupFamily::su(3, 2).unwrap();
    for (l1, l2) in [
        (vec![0, 0, 0], vec![0, 0]),
        (vec![3, 1, 0], vec![2, -1]),
        (vec![0, -1, -2], vec![2, 1]),
    ] {
        show(
            &fam,
            KWeight::Su {
                lambda1: l1,
                lambda2: l2,
            },
        );
    }

    // families without a closed criterion fall back to the bounded
    // lattice search and stay unknown unless every group is certified
    let fam = GroupFamily::sostar(4).unwrap();
    show(
        &fam,
        KWeight::Sostar {
            lambda: vec![1, 0, 0, -1],
        },
    );
}
