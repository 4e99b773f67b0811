//! Membership oracles for the image of the restriction map: the su:3,2
//! invariant, the exact SO_0(2,2n) span criterion, the bounded HNF
//! lattice search with witnesses, and the rank-one preimage construction.
//!
//! ```bash
//! cargo run --example membership
//! ```

use branchkit::{
    branch, branch_virtual, invariant_i, lattice_member, member_soe, preimage_su1n, GroupFamily,
    KMLabel, KWeight, MembershipResult, VirtualChar,
};

fn main() {
    // the invariant I vanishes on branched representations ...
    let fam = GroupFamily::su(3, 2).unwrap();
    let w = KWeight::Su {
        lambda1: vec![2, 1, -1],
        lambda2: vec![1, 0],
    };
    let image = branch(&fam, &w).unwrap();
    println!("I(branch({w})) = {}", invariant_i(&image).unwrap());
    // ... but not on arbitrary labels
    let single = VirtualChar::single(
        fam,
        KMLabel::Su {
            mu1: vec![1, 0],
            mu2: vec![0],
            p: 0,
        },
        1,
    );
    println!("I(tau_(1,0),(0),0) = {}", invariant_i(&single).unwrap());

    // the soe span criterion with a named violated functional
    let fam = GroupFamily::soe(3).unwrap();
    let lone = VirtualChar::single(
        fam,
        KMLabel::Soe {
            q: 4,
            mu: vec![1, 1],
        },
        1,
    );
    println!(
        "\nsoe single chiral label: {:?}",
        member_soe(&lone).unwrap()
    );
    let mut pair = VirtualChar::zero(fam);
    pair.add_term(
        KMLabel::Soe {
            q: 5,
            mu: vec![1, 1],
        },
        1,
    );
    pair.add_term(
        KMLabel::Soe {
            q: -1,
            mu: vec![1, -1],
        },
        1,
    );
    println!("soe matched pair:        {:?}", member_soe(&pair).unwrap());

    // the lattice search rediscovers the pair with an explicit witness
    match lattice_member(&pair, 2).unwrap() {
        MembershipResult::Member { witness: Some(wit) } => {
            println!("lattice witness: {wit}");
            assert_eq!(branch_virtual(&wit).unwrap(), pair);
        }
        other => println!("lattice search came back {other:?}"),
    }

    // rank one: an explicit preimage of a single label, round-tripped
    let fam = GroupFamily::su(3, 1).unwrap();
    let label = KMLabel::Su {
        mu1: vec![2, 0],
        mu2: vec![],
        p: -1,
    };
    let pre = preimage_su1n(&fam, &label).unwrap();
    println!("\npreimage of [{label}] in su:3,1: {pre}");
    assert_eq!(
        branch_virtual(&pre).unwrap(),
        VirtualChar::single(fam, label, 1)
    );
    println!("round trip: exact");
}
