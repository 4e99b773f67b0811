//! Membership oracles for the image of the restriction map inside
//! `K^0(K_M)`: the quadratic invariant `I` for `su:3,2`, the exact span
//! criterion for `soe`, and the constructive rank-one preimage.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::GroupFamily;
use crate::vchar::{KVirtualChar, VirtualChar};
use crate::weight::{KMLabel, KWeight};

/// A violated vanishing functional, naming the `(mu, parity)` class and
/// the nonzero value it took.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub mu: Vec<i64>,
    pub parity: u8,
    #[serde(serialize_with = "ser_bigint")]
    pub value: BigInt,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(x) => s.serialize_i64(x),
        Err(_) => s.collect_str(v),
    }
}

/// Result of a membership test against `Res(K^0(K))`.
///
/// `Member` witnesses, when present, satisfy `branch(witness) = target`
/// exactly. `Unknown` carries the search radius that was exhausted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipResult {
    Member { witness: Option<KVirtualChar> },
    NonMember { certificate: Certificate },
    Unknown { radius: u32 },
}

impl MembershipResult {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipResult::Member { .. })
    }

    pub fn status(&self) -> &'static str {
        match self {
            MembershipResult::Member { .. } => "member",
            MembershipResult::NonMember { .. } => "nonmember",
            MembershipResult::Unknown { .. } => "unknown",
        }
    }
}

impl Serialize for MembershipResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MembershipResult::Member { witness } => {
                let mut st = s.serialize_struct("MembershipResult", 2)?;
                st.serialize_field("status", "member")?;
                if let Some(w) = witness {
                    let v = serde_json::to_value(w).map_err(serde::ser::Error::custom)?;
                    st.serialize_field("witness", &v["terms"])?;
                }
                st.end()
            }
            MembershipResult::NonMember { certificate } => {
                let mut st = s.serialize_struct("MembershipResult", 2)?;
                st.serialize_field("status", "nonmember")?;
                st.serialize_field("certificate", certificate)?;
                st.end()
            }
            MembershipResult::Unknown { radius } => {
                let mut st = s.serialize_struct("MembershipResult", 2)?;
                st.serialize_field("status", "unknown")?;
                st.serialize_field("radius", radius)?;
                st.end()
            }
        }
    }
}

/// The invariant `I` on a single `su:3,2` label:
/// `(mu'_1 + mu'' - p) + (mu'_2 + mu'' - p) + (mu'_1 + mu'' - p)^2 - (mu'_2 + mu'' - p)^2`.
/// Every summand is invariant under the canonical shift.
fn invariant_i_label(label: &KMLabel) -> BigInt {
    let KMLabel::Su { mu1, mu2, p } = label else {
        unreachable!("family checked by caller")
    };
    let u = BigInt::from(mu1[0] + mu2[0] - p);
    let v = BigInt::from(mu1[1] + mu2[0] - p);
    &u + &v + &u * &u - &v * &v
}

/// Z-linear extension of the invariant `I` to `su:3,2` virtual characters.
/// Vanishes on the image of the restriction map.
pub fn invariant_i(vc: &VirtualChar) -> Result<BigInt> {
    let expected = GroupFamily::Su { m: 3, n: 2 };
    if *vc.family() != expected {
        return Err(Error::WrongFamily {
            expected: expected.to_string(),
            got: vc.family().to_string(),
        });
    }
    let mut total = BigInt::zero();
    for (label, coef) in vc.terms() {
        total += coef * invariant_i_label(label);
    }
    Ok(total)
}

/// Exact membership in the span generated by `tau_{mu,q}` with
/// `mu_{n-1} = 0` and the pairs `tau_{mu,q+s} + tau_{mu*,q-s}`.
///
/// Since `q+s` and `q-s` share parity, an element lies in the span iff for
/// every `mu` with `mu_{n-1} > 0` and each parity class of `q` the
/// coefficient sums over `tau_{mu,.}` and `tau_{mu*,.}` agree. A
/// `NonMember` names the violated `(mu, parity)` functional.
pub fn member_soe(vc: &VirtualChar) -> Result<MembershipResult> {
    let GroupFamily::Soe { n } = vc.family() else {
        return Err(Error::WrongFamily {
            expected: "soe:<n>".into(),
            got: vc.family().to_string(),
        });
    };
    let n = *n;
    // (positive-last mu, parity) -> coefficient sum difference
    let mut sums: BTreeMap<(Vec<i64>, u8), BigInt> = BTreeMap::new();
    for (label, coef) in vc.terms() {
        let KMLabel::Soe { q, mu } = label else {
            unreachable!()
        };
        let last = mu[n - 2];
        if last == 0 {
            continue;
        }
        let parity = (q.rem_euclid(2)) as u8;
        let mut key = mu.clone();
        key[n - 2] = last.abs();
        let entry = sums.entry((key, parity)).or_insert_with(BigInt::zero);
        if last > 0 {
            *entry += coef;
        } else {
            *entry -= coef;
        }
    }
    for ((mu, parity), value) in sums {
        if !value.is_zero() {
            return Ok(MembershipResult::NonMember {
                certificate: Certificate { mu, parity, value },
            });
        }
    }
    Ok(MembershipResult::Member { witness: None })
}

/// `l(mu) = (mu_1 - mu_{m-1}) + ... + (mu_{m-2} - mu_{m-1})`, the induction
/// length of the rank-one surjectivity proof.
pub fn ell_su(mu: &[i64]) -> i64 {
    match mu.last() {
        None => 0,
        Some(&last) => mu[..mu.len() - 1].iter().map(|&x| x - last).sum(),
    }
}

fn preimage_su_m1_label(
    family: &GroupFamily,
    label: &KMLabel,
    memo: &mut BTreeMap<KMLabel, KVirtualChar>,
) -> KVirtualChar {
    let key = label.canonical();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let KMLabel::Su { mu1, p, .. } = &key else {
        unreachable!()
    };
    let m = mu1.len() + 1;
    let result = if ell_su(mu1) == 0 {
        // base case: mu = (q,...,q); tau_{mu,p} = pi_{(2q-p,...,2q-p)}|
        let q = mu1.first().copied().unwrap_or(0);
        let c = 2 * q - p;
        KVirtualChar::single(
            *family,
            KWeight::Su {
                lambda1: vec![c; m],
                lambda2: vec![0],
            },
            1,
        )
    } else {
        // shift so that mu_{m-1} = p, put lambda = (mu_1,...,mu_{m-1},mu_{m-1})
        let k = mu1[m - 2] - p;
        let mu_hat: Vec<i64> = mu1.iter().map(|x| x + k).collect();
        let p_hat = p + 2 * k;
        debug_assert_eq!(mu_hat[m - 2], p_hat);
        let mut lambda1 = mu_hat.clone();
        lambda1.push(mu_hat[m - 2]);
        let w = KWeight::Su {
            lambda1: lambda1.clone(),
            lambda2: vec![0],
        };
        let mut out = KVirtualChar::single(*family, w.clone(), 1);
        // subtract the preimages of the strictly lower terms of branch(w),
        // in lexicographically descending label order
        let raw = crate::branching::branch_raw(family, &w).expect("valid weight");
        let this = KMLabel::Su {
            mu1: mu_hat.clone(),
            mu2: vec![],
            p: p_hat,
        }
        .canonical();
        for (lab, mult) in raw {
            debug_assert_eq!(mult, 1);
            let lab_c = lab.canonical();
            if lab_c == this {
                continue;
            }
            let KMLabel::Su { mu1: nu, .. } = &lab_c else {
                unreachable!()
            };
            debug_assert!(ell_su(nu) < ell_su(&mu_hat));
            let sub = preimage_su_m1_label(family, &lab_c, memo);
            out = &out - &sub;
        }
        out
    };
    memo.insert(key, result.clone());
    result
}

/// Explicit preimage of a `K_M`-label under the restriction map for the
/// rank-one families `su:m,1` / `su:1,n` (the construction of the
/// surjectivity proof, by induction on `l(mu)`).
pub fn preimage_su1n(family: &GroupFamily, label: &KMLabel) -> Result<KVirtualChar> {
    label.validate(family)?;
    match *family {
        GroupFamily::Su { m, n: 1 } if m >= 2 => {
            let mut memo = BTreeMap::new();
            Ok(preimage_su_m1_label(family, label, &mut memo))
        }
        GroupFamily::Su { m: 1, n } if n >= 2 => {
            // swap the two blocks: su(1,n) ~ su(n,1),
            // pi_{l1,l2} <-> pi_{l2,l1}, tau_{mu1,mu2,p} <-> tau_{mu2,mu1,p}
            let swapped_family = GroupFamily::Su { m: n, n: 1 };
            let KMLabel::Su { mu1, mu2, p } = label else {
                unreachable!()
            };
            let swapped = KMLabel::Su {
                mu1: mu2.clone(),
                mu2: mu1.clone(),
                p: *p,
            };
            let pre = preimage_su1n(&swapped_family, &swapped)?;
            let mut out = KVirtualChar::zero(*family);
            for (w, c) in pre.terms() {
                let KWeight::Su { lambda1, lambda2 } = w else {
                    unreachable!()
                };
                out.add_term(
                    KWeight::Su {
                        lambda1: lambda2.clone(),
                        lambda2: lambda1.clone(),
                    },
                    c.clone(),
                );
            }
            Ok(out)
        }
        _ => Err(Error::WrongFamily {
            expected: "su:m,1 or su:1,n".into(),
            got: family.to_string(),
        }),
    }
}

/// Z-linear extension of [`preimage_su1n`] to virtual characters.
pub fn preimage_su1n_virtual(family: &GroupFamily, vc: &VirtualChar) -> Result<KVirtualChar> {
    let mut out = KVirtualChar::zero(*family);
    for (label, coef) in vc.terms() {
        let pre = preimage_su1n(family, label)?;
        out = &out + &pre.scaled(coef);
    }
    Ok(out)
}
