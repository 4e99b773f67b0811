//! Cross-module invariants on randomized (seeded, deterministic) grids:
//! everything the per-module unit tests don't already pin down.

#![allow(clippy::needless_range_loop, clippy::manual_memcpy, clippy::identity_op)]

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use branchkit::charspace::{
    decompose_character, full_weights, km_shape, tensor_decompose, FormalCharacter,
};
use branchkit::{
    branch, invariant_i, is_good, oracle_restrict, star_groups, twist_char, weyl_terms,
    ClassifyOptions, Factor, GroupFamily, KMLabel, KWeight, Shape, VirtualChar, WeylElem,
};

fn random_dominant(rng: &mut ChaCha8Rng, len: usize, lo: i64, hi: i64) -> Vec<i64> {
    let mut v: Vec<i64> = (0..len).map(|_| rng.gen_range(lo..=hi)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn random_zpp(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<i64> {
    let mut v = random_dominant(rng, len, 0, bound);
    let last = v[len - 1];
    v[len - 1] = rng.gen_range(-last..=last);
    v
}

fn random_weight(rng: &mut ChaCha8Rng, family: &GroupFamily, bound: i64) -> KWeight {
    match *family {
        GroupFamily::Su { m, n } => KWeight::Su {
            lambda1: random_dominant(rng, m, -bound, bound),
            lambda2: random_dominant(rng, n, -bound, bound),
        },
        GroupFamily::Soe { n } => KWeight::Soe {
            p: rng.gen_range(-bound..=bound),
            lambda: random_zpp(rng, n, bound),
        },
        GroupFamily::Sostar { n } => KWeight::Sostar {
            lambda: random_dominant(rng, n, -bound, bound),
        },
    }
}

#[test]
fn star_groups_partition_the_weyl_terms() {
    // concatenating all group sums (with signs) equals the direct signed
    // sum over W_kappa, and the member sets are disjoint
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for family in [
        GroupFamily::su(3, 2).unwrap(),
        GroupFamily::soe(3).unwrap(),
        GroupFamily::sostar(5).unwrap(),
    ] {
        for _ in 0..200 {
            let w = random_weight(&mut rng, &family, 4);
            let terms = weyl_terms(&family, &w).unwrap();
            let mut direct = VirtualChar::zero(family);
            for t in &terms {
                direct.add_term(t.label.clone(), t.sign);
            }
            let groups = star_groups(&family, &w).unwrap();
            let mut total = VirtualChar::zero(family);
            let mut members = std::collections::BTreeSet::new();
            let mut last_key = i64::MAX;
            for g in &groups {
                assert!(g.key < last_key, "keys must strictly descend");
                last_key = g.key;
                total = &total + &g.sum;
                for m in &g.members {
                    assert!(members.insert(*m), "member sets must be disjoint");
                }
            }
            assert_eq!(members.len(), family.wkappa_size());
            assert_eq!(total, direct, "{family} {w}");
        }
    }
}

#[test]
fn soe_pairing_and_degeneracy() {
    // the two terms (delta_+, i), (delta_-, i) have SO(2n-2) parts related
    // by negating the last entry and SO(2) parts q+s, q-s with
    // q = p - n + 1, s = lambda_i + n - i; their |c-hat| agree iff
    // lambda_i = -(n-i) or p = n
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in [2usize, 3, 4] {
        let family = GroupFamily::soe(n).unwrap();
        for _ in 0..120 {
            let w = random_weight(&mut rng, &family, 3);
            let KWeight::Soe { p, lambda } = &w else {
                unreachable!()
            };
            let terms = weyl_terms(&family, &w).unwrap();
            for i in 1..=n {
                let plus = terms
                    .iter()
                    .find(|t| t.elem == WeylElem::Soe { plus: true, i })
                    .unwrap();
                let minus = terms
                    .iter()
                    .find(|t| t.elem == WeylElem::Soe { plus: false, i })
                    .unwrap();
                let (KMLabel::Soe { q: qp, mu: mp }, KMLabel::Soe { q: qm, mu: mm }) =
                    (&plus.label, &minus.label)
                else {
                    unreachable!()
                };
                let q = p - n as i64 + 1;
                let s = lambda[i - 1] + n as i64 - i as i64;
                assert_eq!(*qp, q + s);
                assert_eq!(*qm, q - s);
                let mut star = mp.clone();
                star[n - 2] = -star[n - 2];
                assert_eq!(&star, mm, "n={n} i={i} w={w}");

                let degenerate = lambda[i - 1] == -((n - i) as i64) || *p == n as i64;
                assert_eq!(
                    plus.c_hat.abs() == minus.c_hat.abs(),
                    degenerate,
                    "n={n} i={i} w={w}"
                );
            }
        }
    }
}

#[test]
fn su_weyl_labels_match_the_displayed_weights() {
    // the label produced by weyl_terms equals the canonical restriction
    // of the displayed lambda_w weight, computed independently here
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for total in 3..=5usize {
        for m in 1..total {
            let n = total - m;
            let family = GroupFamily::su(m, n).unwrap();
            for _ in 0..40 {
                let w = random_weight(&mut rng, &family, 4);
                let KWeight::Su { lambda1, lambda2 } = &w else {
                    unreachable!()
                };
                for t in weyl_terms(&family, &w).unwrap() {
                    let WeylElem::Su { i, j } = t.elem else {
                        unreachable!()
                    };
                    let mut a = vec![lambda1[i - 1] + 1 - i as i64];
                    for k in 0..i - 1 {
                        a.push(lambda1[k] + 1);
                    }
                    for k in i..m {
                        a.push(lambda1[k]);
                    }
                    let mut b = Vec::new();
                    for k in 0..j - 1 {
                        b.push(lambda2[k]);
                    }
                    for k in j..n {
                        b.push(lambda2[k] - 1);
                    }
                    b.push(lambda2[j - 1] + n as i64 - j as i64);
                    // restrict to the K_M torus: the scalar slot pairs the
                    // first and last coordinates
                    let lab = KMLabel::Su {
                        p: a[0] + b[n - 1],
                        mu1: a[1..].to_vec(),
                        mu2: b[..n - 1].to_vec(),
                    };
                    assert_eq!(t.label, lab.canonical(), "{family} {w} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn weyl_terms_match_the_raw_weyl_action() {
    // recompute every restricted label and c-hat from the Weyl-group
    // action itself: w(lambda + rho) - rho, restricted to the K_M torus,
    // with the per-family rho_Q constant added to the H_kappa pairing
    let mut rng = ChaCha8Rng::seed_from_u64(22);

    // soe: delta_+- composed with the cycle w^(i), rho = (n-1,...,1,0)
    for n in [2usize, 3, 4, 5] {
        let family = GroupFamily::soe(n).unwrap();
        for _ in 0..40 {
            let w = random_weight(&mut rng, &family, 3);
            let KWeight::Soe { p, lambda } = &w else {
                unreachable!()
            };
            let rho: Vec<i64> = (0..n).map(|k| (n - 1 - k) as i64).collect();
            let v: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
            for t in weyl_terms(&family, &w).unwrap() {
                let WeylElem::Soe { plus, i } = t.elem else {
                    unreachable!()
                };
                // (w v)_1 = v_i, (w v)_{k+1} = v_k for k < i, rest fixed
                let mut wv = vec![0i64; n];
                wv[0] = v[i - 1];
                for k in 0..i - 1 {
                    wv[k + 1] = v[k];
                }
                for k in i..n {
                    wv[k] = v[k];
                }
                if !plus {
                    wv[0] = -wv[0];
                    wv[n - 1] = -wv[n - 1];
                }
                let lw: Vec<i64> = wv.iter().zip(&rho).map(|(a, b)| a - b).collect();
                let label = KMLabel::Soe {
                    q: p + lw[0],
                    mu: lw[1..].to_vec(),
                };
                assert_eq!(t.label, label, "{family} {w} ({plus},{i})");
                let c_hat = (2 * n as i64 - 1) + lw[0] - p;
                assert_eq!(t.c_hat, c_hat, "{family} {w} ({plus},{i})");
            }
        }
    }

    // sostar: the shuffle w_ij, rho = ((n-1)/2, ...), doubled to stay
    // integral
    for n in [3usize, 4, 5, 6] {
        let family = GroupFamily::sostar(n).unwrap();
        for _ in 0..40 {
            let w = random_weight(&mut rng, &family, 3);
            let KWeight::Sostar { lambda } = &w else {
                unreachable!()
            };
            let rho2: Vec<i64> = (0..n).map(|k| n as i64 - 1 - 2 * k as i64).collect();
            let v2: Vec<i64> = lambda.iter().zip(&rho2).map(|(a, b)| 2 * a + b).collect();
            for t in weyl_terms(&family, &w).unwrap() {
                let WeylElem::Sostar { i, j } = t.elem else {
                    unreachable!()
                };
                let mut wv2 = Vec::with_capacity(n);
                wv2.push(v2[i - 1]);
                wv2.push(v2[j - 1]);
                for (k, &x) in v2.iter().enumerate() {
                    if k != i - 1 && k != j - 1 {
                        wv2.push(x);
                    }
                }
                let lw: Vec<i64> = wv2
                    .iter()
                    .zip(&rho2)
                    .map(|(a, b)| {
                        assert_eq!((a - b) % 2, 0);
                        (a - b) / 2
                    })
                    .collect();
                let label = KMLabel::Sostar {
                    p: lw[0] - lw[1],
                    nu: lw[2..].to_vec(),
                };
                assert_eq!(t.label, label, "{family} {w} ({i},{j})");
                let c_hat = (2 * n as i64 - 3) + lw[0] + lw[1];
                assert_eq!(t.c_hat, c_hat, "{family} {w} ({i},{j})");
            }
        }
    }

    // su: independent c-hat from the H_kappa pairing of the displayed
    // weight (the labels themselves are covered above)
    for (m, n) in [(3usize, 2usize), (2, 3), (4, 1), (1, 4)] {
        let family = GroupFamily::su(m, n).unwrap();
        for _ in 0..40 {
            let w = random_weight(&mut rng, &family, 3);
            let KWeight::Su { lambda1, lambda2 } = &w else {
                unreachable!()
            };
            let rho1: Vec<i64> = (0..m).map(|k| m as i64 - 1 - 2 * k as i64).collect();
            let rho2: Vec<i64> = (0..n).map(|k| n as i64 - 1 - 2 * k as i64).collect();
            let v1: Vec<i64> = lambda1.iter().zip(&rho1).map(|(a, b)| 2 * a + b).collect();
            let v2: Vec<i64> = lambda2.iter().zip(&rho2).map(|(a, b)| 2 * a + b).collect();
            for t in weyl_terms(&family, &w).unwrap() {
                let WeylElem::Su { i, j } = t.elem else {
                    unreachable!()
                };
                // first coordinate of w_1(lambda' + rho) - rho, doubled
                let a1 = (v1[i - 1] - rho1[0]) / 2;
                // last coordinate of w_2(lambda'' + rho) - rho, doubled
                let bn = (v2[j - 1] - rho2[n - 1]) / 2;
                let c_hat = (m + n - 1) as i64 + a1 - bn;
                assert_eq!(t.c_hat, c_hat, "{family} {w} ({i},{j})");
            }
        }
    }
}

#[test]
fn peeling_recovers_irreducibles() {
    // decompose_character(character(a)) = {a: 1} on random labels
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let shapes = [
        Shape::new(vec![Factor::TypeA { rank: 2 }]),
        Shape::new(vec![Factor::TypeA { rank: 3 }]),
        Shape::new(vec![Factor::TypeD { rank: 2 }]),
        Shape::new(vec![Factor::TypeD { rank: 3 }]),
        Shape::new(vec![Factor::TypeA1, Factor::TypeA { rank: 2 }]),
        km_shape(&GroupFamily::su(3, 2).unwrap()),
    ];
    for shape in &shapes {
        for _ in 0..200 {
            let mut hw = Vec::new();
            for f in &shape.factors {
                match f {
                    Factor::TypeA { rank } => hw.extend(random_dominant(&mut rng, *rank, -3, 3)),
                    Factor::TypeD { rank } => hw.extend(random_zpp(&mut rng, *rank, 3)),
                    Factor::TypeA1 => hw.push(rng.gen_range(0..=3)),
                    Factor::Torus { rank } => hw.extend((0..*rank).map(|_| rng.gen_range(-3..=3))),
                }
            }
            let c = FormalCharacter::of_irrep(shape.clone(), &hw).unwrap();
            let dec = decompose_character(&c).unwrap();
            assert_eq!(dec, std::collections::BTreeMap::from([(hw.clone(), 1)]));
        }
    }
}

#[test]
fn tensor_dimension_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let shape = Shape::new(vec![Factor::TypeA { rank: 3 }]);
    for _ in 0..25 {
        let a = random_dominant(&mut rng, 3, -2, 2);
        let b = random_dominant(&mut rng, 3, -2, 2);
        let prod = tensor_decompose(&shape, &a, &b).unwrap();
        let total: u128 = prod.iter().map(|(w, &m)| shape.dim(w) * m as u128).sum();
        assert_eq!(total, shape.dim(&a) * shape.dim(&b));
    }
}

#[test]
fn exterior_powers_sum_to_two_to_the_dim() {
    // sum_j dim Lambda^j(a) = 2^dim(a), up to dimension 12
    let shape = Shape::new(vec![Factor::TypeA { rank: 2 }]);
    for hw in [vec![2, 0], vec![7, 0], vec![11, 0]] {
        let dim = shape.dim(&hw) as u32;
        assert!(dim <= 12);
        let layers = branchkit::charspace::exterior_all(&shape, &hw).unwrap();
        let total: u128 = layers
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|(w, &m)| shape.dim(w) * m as u128)
                    .sum::<u128>()
            })
            .sum();
        assert_eq!(total, 1u128 << dim, "hw {hw:?}");
    }
}

#[test]
fn tensor_virtual_distributes_over_terms() {
    // (a + b) (x) c = a (x) c + b (x) c, with dimensions multiplying
    let fam = GroupFamily::sostar(4).unwrap();
    let la = KMLabel::Sostar {
        nu: vec![1, 0],
        p: 1,
    };
    let lb = KMLabel::Sostar {
        nu: vec![0, 0],
        p: 2,
    };
    let lc = KMLabel::Sostar {
        nu: vec![1, 1],
        p: 0,
    };
    let a = VirtualChar::single(fam, la, 2);
    let b = VirtualChar::single(fam, lb, -1);
    let c = VirtualChar::single(fam, lc, 1);
    let lhs = branchkit::tensor_virtual(&(&a + &b), &c).unwrap();
    let rhs =
        &branchkit::tensor_virtual(&a, &c).unwrap() + &branchkit::tensor_virtual(&b, &c).unwrap();
    assert_eq!(lhs, rhs);
    let dim = |vc: &VirtualChar| -> BigInt {
        vc.terms()
            .map(|(l, co)| co * BigInt::from(branchkit::km_dimension(&fam, l)))
            .sum()
    };
    assert_eq!(dim(&lhs), dim(&a.clone()) * dim(&c) + dim(&b) * dim(&c));
}

#[test]
fn freudenthal_total_mass_is_weyl_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        for shape in [
            Shape::new(vec![Factor::TypeA {
                rank: rng.gen_range(2..=4),
            }]),
            Shape::new(vec![Factor::TypeD {
                rank: rng.gen_range(2..=4),
            }]),
        ] {
            let hw = match shape.factors[0] {
                Factor::TypeA { rank } => random_dominant(&mut rng, rank, -3, 3),
                Factor::TypeD { rank } => random_zpp(&mut rng, rank, 3),
                _ => unreachable!(),
            };
            let mass: i64 = full_weights(&shape, &hw)
                .unwrap()
                .iter()
                .map(|(_, m)| m)
                .sum();
            assert_eq!(mass as u128, shape.dim(&hw), "{shape:?} {hw:?}");
        }
    }
}

#[test]
fn su_branching_is_multiplicity_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (m, n) in [(2usize, 2usize), (3, 2), (2, 3)] {
        let family = GroupFamily::su(m, n).unwrap();
        for _ in 0..60 {
            let w = random_weight(&mut rng, &family, 3);
            let vc = branch(&family, &w).unwrap();
            assert!(
                vc.terms().all(|(_, c)| *c == BigInt::from(1)),
                "{family} {w} is not multiplicity-free"
            );
        }
    }
}

#[test]
fn oracle_preserves_dimension_and_matches_branch_off_grid() {
    // random weights here are not canonical representatives, so this also
    // exercises the shift-equivalence path of the closed forms
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for family in [
        GroupFamily::su(2, 2).unwrap(),
        GroupFamily::soe(3).unwrap(),
        GroupFamily::sostar(4).unwrap(),
    ] {
        for _ in 0..25 {
            let w = random_weight(&mut rng, &family, 2);
            let vc = oracle_restrict(&family, &w).unwrap();
            let total: BigInt = vc
                .terms()
                .map(|(l, c)| c * BigInt::from(branchkit::km_dimension(&family, l)))
                .sum();
            assert_eq!(total, BigInt::from(branchkit::k_dimension(&family, &w)));
            assert_eq!(branch(&family, &w).unwrap(), vc, "{family} {w}");
        }
    }
}

/// The frozen regression anchors for the su:3,2 case analysis: with the
/// tabulated degeneracies imposed, the invariant of the |D| group takes
/// the stated closed forms.
#[test]
fn su32_group_invariant_anchors() {
    let fam = GroupFamily::su(3, 2).unwrap();
    let twist = KMLabel::Su {
        mu1: vec![0, 0],
        mu2: vec![1],
        p: -1,
    };
    let group_i = |l1: Vec<i64>, l2: Vec<i64>, key: i64| -> BigInt {
        let w = KWeight::Su {
            lambda1: l1,
            lambda2: l2,
        };
        let groups = star_groups(&fam, &w).unwrap();
        let g = groups.iter().find(|g| g.key == key).expect("group exists");
        invariant_i(&twist_char(&g.sum, &twist).unwrap()).unwrap()
    };

    // with C = -D, E = -F and the B-group invariant forced to vanish
    // (the first branch of the case analysis), the |D| group evaluates
    // to -2(x+1)(x-4) with x = l2_1 - l2_2:
    // lambda' = (0,-2,-3), lambda'' = (2,0): D = 4, x = 2
    assert_eq!(
        group_i(vec![0, -2, -3], vec![2, 0], 4),
        BigInt::from(-2 * (2 + 1) * (2 - 4))
    );
    // lambda' = (1,-1,-2), lambda'' = (3,1): x = 2 again, shifted family
    assert_eq!(
        group_i(vec![1, -1, -2], vec![3, 1], 4),
        BigInt::from(-2 * (2 + 1) * (2 - 4))
    );
    // lambda' = (-1,-1,-4), lambda'' = (0,0): x = 0
    assert_eq!(
        group_i(vec![-1, -1, -4], vec![0, 0], 3),
        BigInt::from(-2 * (0 + 1) * (0 - 4))
    );

    // with C = -D, E = -F and A = -B instead: I = 2(x+1)^2
    // lambda' = (0,-1,-2), lambda'' = (2,1): D = 3, x = 1
    assert_eq!(group_i(vec![0, -1, -2], vec![2, 1], 3), BigInt::from(8));
    // lambda' = (3,0,-3), lambda'' = (4,1): x = 3, D = 6
    assert_eq!(
        group_i(vec![3, 0, -3], vec![4, 1], 6),
        BigInt::from(2 * (3 + 1) * (3 + 1))
    );
}

#[test]
fn is_good_is_shift_invariant_for_su() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let fam = GroupFamily::su(3, 2).unwrap();
    let opts = ClassifyOptions::default();
    for _ in 0..40 {
        let w = random_weight(&mut rng, &fam, 3);
        let v0 = is_good(&fam, &w, &opts).unwrap();
        for k in [-2i64, 1, 3] {
            let vk = is_good(&fam, &w.shifted(k), &opts).unwrap();
            assert_eq!(v0, vk, "{w} shifted by {k}");
        }
    }
}

#[test]
fn branch_rejects_invalid_weights() {
    let fam = GroupFamily::su(2, 1).unwrap();
    let bad = KWeight::Su {
        lambda1: vec![0, 1],
        lambda2: vec![0],
    };
    assert!(branch(&fam, &bad).is_err());
    let wrong_len = KWeight::Su {
        lambda1: vec![1],
        lambda2: vec![0],
    };
    assert!(branch(&fam, &wrong_len).is_err());
    let wrong_family = KWeight::Sostar {
        lambda: vec![1, 0, 0],
    };
    assert!(branch(&fam, &wrong_family).is_err());
}
