//! The formal-character engine as an independent oracle: Freudenthal
//! weight multiplicities, tensor and exterior decompositions, and the
//! brute-force restriction compared against the closed-form branching on
//! a small grid.
//!
//! ```bash
//! cargo run --example oracle_crosscheck
//! ```

use branchkit::{
    branch, oracle_restrict, tensor_decompose, weight_multiplicities, Factor, GroupFamily, Shape,
};

fn main() {
    // dominant weight multiplicities of the U(3) adjoint
    let a3 = Shape::new(vec![Factor::TypeA { rank: 3 }]);
    println!("weights of the U(3) irrep (1,0,-1):");
    for (w, m) in weight_multiplicities(&a3, &[1, 0, -1]).unwrap() {
        println!("  {w:?} -> {m}");
    }

    // a type-D tensor square, dimensions 9 + 3 + 3 + 1 = 16
    let d2 = Shape::new(vec![Factor::TypeD { rank: 2 }]);
    println!("\nSO(4): (1,0) tensor (1,0):");
    for (w, m) in tensor_decompose(&d2, &[1, 0], &[1, 0]).unwrap() {
        println!("  {m} x {w:?}  (dim {})", d2.dim(&w));
    }

    // closed-form branching vs the weight oracle over a grid
    println!("\ncross-checking branch = oracle_restrict:");
    let mut checked = 0;
    for fam in [
        GroupFamily::su(2, 2).unwrap(),
        GroupFamily::soe(2).unwrap(),
        GroupFamily::sostar(4).unwrap(),
    ] {
        for w in branchkit::ansatz::scan_weights(&fam, 2) {
            assert_eq!(
                branch(&fam, &w).unwrap(),
                oracle_restrict(&fam, &w).unwrap(),
                "mismatch at {fam} {w}"
            );
            checked += 1;
        }
    }
    println!("  {checked} weights, all equal");
}
