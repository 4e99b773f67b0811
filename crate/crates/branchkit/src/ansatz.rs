//! The Ansatz sum: group Weyl terms by the absolute value of `c-hat`,
//! test each group against the image of the restriction map, and classify
//! highest weights as good or not good.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::Result;
use crate::family::GroupFamily;
use crate::image::{invariant_i, member_soe, Certificate, MembershipResult};
use crate::lattice::{default_generator_cap, lattice_member_capped};
use crate::vchar::VirtualChar;
use crate::weight::{dominant_vectors, KMLabel, KWeight};
use crate::weyl::{lambda_alt_sum, weyl_terms, WeylElem};

/// One `c-hat^2` group of the Ansatz numerator: the key is `|c-hat|`
/// (integral; the uniform normalization is dropped), the sum is the signed
/// canonical combination of its restricted labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CGroup {
    pub key: i64,
    pub sum: VirtualChar,
    pub members: Vec<WeylElem>,
}

/// Groups the Weyl terms of a weight by `|c-hat|`, keys sorted descending.
pub fn star_groups(family: &GroupFamily, w: &KWeight) -> Result<Vec<CGroup>> {
    let terms = weyl_terms(family, w)?;
    let mut by_key: std::collections::BTreeMap<i64, CGroup> = std::collections::BTreeMap::new();
    for t in terms {
        let key = t.c_hat.abs();
        let g = by_key.entry(key).or_insert_with(|| CGroup {
            key,
            sum: VirtualChar::zero(*family),
            members: Vec::new(),
        });
        g.sum.add_term(t.label.clone(), t.sign);
        g.members.push(t.elem);
    }
    Ok(by_key.into_values().rev().collect())
}

/// Machine-checkable reason a weight is not good.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotGoodCertificate {
    /// `su:3,2`: the invariant `I` of the twisted group is nonzero.
    InvariantI { value: BigInt },
    /// `soe`: the pair at index `i` is neither separately contained nor
    /// `c-hat^2`-degenerate.
    PairCriterion {
        index: usize,
        c_plus: i64,
        c_minus: i64,
    },
    /// `soe` membership route: a violated parity functional.
    Parity(Certificate),
}

/// Verdict of the good-highest-weight classifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Good,
    NotGood {
        key: i64,
        certificate: NotGoodCertificate,
    },
    Unknown,
}

impl Verdict {
    pub fn is_good(&self) -> bool {
        matches!(self, Verdict::Good)
    }

    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Good => "good",
            Verdict::NotGood { .. } => "notgood",
            Verdict::Unknown => "unknown",
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Good => {
                let mut st = s.serialize_struct("Verdict", 1)?;
                st.serialize_field("verdict", "good")?;
                st.end()
            }
            Verdict::Unknown => {
                let mut st = s.serialize_struct("Verdict", 1)?;
                st.serialize_field("verdict", "unknown")?;
                st.end()
            }
            Verdict::NotGood { key, certificate } => {
                let mut st = s.serialize_struct("Verdict", 3)?;
                st.serialize_field("verdict", "notgood")?;
                st.serialize_field("key", key)?;
                let cert = match certificate {
                    NotGoodCertificate::InvariantI { value } => serde_json::json!({
                        "kind": "invariant_i",
                        "value": i64::try_from(value).map(serde_json::Value::from)
                            .unwrap_or_else(|_| serde_json::Value::from(value.to_string())),
                    }),
                    NotGoodCertificate::PairCriterion {
                        index,
                        c_plus,
                        c_minus,
                    } => {
                        serde_json::json!({
                            "kind": "pair",
                            "index": index,
                            "c_plus": c_plus,
                            "c_minus": c_minus,
                        })
                    }
                    NotGoodCertificate::Parity(c) => serde_json::json!({
                        "kind": "parity",
                        "certificate": serde_json::to_value(c).map_err(serde::ser::Error::custom)?,
                    }),
                };
                st.serialize_field("certificate", &cert)?;
                st.end()
            }
        }
    }
}

/// Knobs for the classifier routes that search a lattice.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub radius: u32,
    pub max_generators: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            radius: 2,
            max_generators: default_generator_cap(),
        }
    }
}

/// The twist used to match the `su:3,2` table of summands.
pub fn su32_twist() -> KMLabel {
    KMLabel::Su {
        mu1: vec![0, 0],
        mu2: vec![1],
        p: -1,
    }
}

/// `soe` pair criterion for one index: the pair `(delta_+, i), (delta_-, i)`
/// is harmless iff both labels are separately contained (`lambda_n = 0`,
/// only possible for `i < n`) or both have the same `c-hat^2`
/// (`lambda_i = -(n-i)` or `p = n`).
fn soe_pair_ok(n: usize, p: i64, lambda: &[i64], i: usize) -> bool {
    let separately_contained = i < n && lambda[n - 1] == 0;
    let degenerate = lambda[i - 1] == -((n - i) as i64) || p == n as i64;
    separately_contained || degenerate
}

/// Classifies a highest weight as good / not good / unknown.
///
/// Routes per family: rank-one `su` is always good (the restriction map is
/// surjective); `soe` evaluates the per-index pair criterion; `su:3,2`
/// applies the invariant `I` to each twisted group (ascending keys, first
/// nonzero value wins); every other family runs the bounded lattice search
/// on the alternating-sum tensor of each group.
pub fn is_good(family: &GroupFamily, w: &KWeight, opts: &ClassifyOptions) -> Result<Verdict> {
    w.validate(family)?;
    if family.is_rank_one_su() {
        return Ok(Verdict::Good);
    }
    match *family {
        GroupFamily::Soe { n } => {
            let KWeight::Soe { p, lambda } = w else {
                unreachable!()
            };
            for i in 1..=n {
                if !soe_pair_ok(n, *p, lambda, i) {
                    let c_plus = -p + lambda[i - 1] - i as i64 + 2 * n as i64;
                    let c_minus = -p - lambda[i - 1] + i as i64;
                    return Ok(Verdict::NotGood {
                        key: c_plus.abs(),
                        certificate: NotGoodCertificate::PairCriterion {
                            index: i,
                            c_plus,
                            c_minus,
                        },
                    });
                }
            }
            Ok(Verdict::Good)
        }
        GroupFamily::Su { m: 3, n: 2 } => {
            let groups = star_groups(family, w)?;
            let twist = su32_twist();
            // ascending keys; report the first group with nonzero invariant
            for g in groups.iter().rev() {
                let twisted = g.sum.twist(&twist)?;
                let value = invariant_i(&twisted)?;
                if !value.is_zero() {
                    return Ok(Verdict::NotGood {
                        key: g.key,
                        certificate: NotGoodCertificate::InvariantI { value },
                    });
                }
            }
            Ok(Verdict::Unknown)
        }
        _ => {
            let groups = star_groups(family, w)?;
            for g in &groups {
                match lattice_member_capped(&g.sum, opts.radius, opts.max_generators)? {
                    MembershipResult::Member { .. } => {}
                    _ => return Ok(Verdict::Unknown),
                }
            }
            Ok(Verdict::Good)
        }
    }
}

/// The `soe` classification by actual membership of every `c-hat^2` group
/// sum in the span characterization (the reduction that drops the
/// alternating-sum factor, which lies in the image itself, is taken as
/// given). Cross-checks the pair criterion.
pub fn is_good_soe_via_members(family: &GroupFamily, w: &KWeight) -> Result<Verdict> {
    let groups = star_groups(family, w)?;
    for g in &groups {
        match member_soe(&g.sum)? {
            MembershipResult::Member { .. } => {}
            MembershipResult::NonMember { certificate } => {
                return Ok(Verdict::NotGood {
                    key: g.key,
                    certificate: NotGoodCertificate::Parity(certificate),
                })
            }
            MembershipResult::Unknown { .. } => return Ok(Verdict::Unknown),
        }
    }
    Ok(Verdict::Good)
}

/// Telescoping identity for `su:m,2`: the alternating sum of the branched
/// exterior-power preimages equals the twisted alternating sum,
/// `sum_{j=0}^m (-1)^{j-1} branch(pi_{(1)_j,(0,-j)})
///  = tau_{0,-1,1} (x) sum_j (-1)^j Lambda^j ptilde`.
/// Returns `false` on mismatch.
pub fn verify_telescoping(m: usize) -> Result<bool> {
    let family = GroupFamily::su(m, 2)?;
    let mut lhs = VirtualChar::zero(family);
    for j in 0..=m {
        let mut lambda1 = vec![0i64; m];
        for e in lambda1.iter_mut().take(j) {
            *e = 1;
        }
        let w = KWeight::Su {
            lambda1,
            lambda2: vec![0, -(j as i64)],
        };
        let b = crate::branching::branch(&family, &w)?;
        let sign = if j % 2 == 1 { 1 } else { -1 };
        lhs = &lhs + &b.scaled(&BigInt::from(sign));
    }
    let twist = KMLabel::Su {
        mu1: vec![0; m - 1],
        mu2: vec![-1],
        p: 1,
    };
    let rhs = lambda_alt_sum(&family)?.twist(&twist)?;
    Ok(lhs == rhs)
}

/// One row of a goodness scan. Serializes flat:
/// `{"lambda":{...},"groups":[...],"verdict":"...","certificate":{...}}`.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub lambda: KWeight,
    pub groups: Vec<GroupStatus>,
    pub verdict: Verdict,
}

impl Serialize for ScanRow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut v = serde_json::to_value(&self.verdict).map_err(serde::ser::Error::custom)?;
        let obj = v.as_object_mut().expect("verdict serializes to an object");
        obj.insert(
            "lambda".into(),
            serde_json::to_value(&self.lambda).map_err(serde::ser::Error::custom)?,
        );
        obj.insert(
            "groups".into(),
            serde_json::to_value(&self.groups).map_err(serde::ser::Error::custom)?,
        );
        v.serialize(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupStatus {
    pub key: i64,
    pub status: String,
    pub sum: VirtualChar,
}

/// Explores `sostar:n` weights with entries in `[-bound, bound]`: per
/// weight, the group keys, the bounded-lattice status of every Ansatz
/// summand, and a verdict that is `good` only when every group is a
/// certified member. Deterministic row order (lexicographically
/// descending weights).
pub fn explore_sostar(
    n: usize,
    bound: i64,
    radius: u32,
    max_generators: usize,
) -> Result<Vec<ScanRow>> {
    let family = GroupFamily::sostar(n)?;
    let lambdas = dominant_vectors(n, -bound, bound);
    use rayon::prelude::*;
    lambdas
        .into_par_iter()
        .map(|lambda| {
            let w = KWeight::Sostar { lambda };
            let groups = star_groups(&family, &w)?;
            let mut out = Vec::with_capacity(groups.len());
            let mut all_member = true;
            for g in groups {
                let res = lattice_member_capped(&g.sum, radius, max_generators)?;
                if !res.is_member() {
                    all_member = false;
                }
                out.push(GroupStatus {
                    key: g.key,
                    status: res.status().to_string(),
                    sum: g.sum,
                });
            }
            Ok(ScanRow {
                lambda: w,
                groups: out,
                verdict: if all_member {
                    Verdict::Good
                } else {
                    Verdict::Unknown
                },
            })
        })
        .collect()
}

/// Goodness scan over all dominant weights of a family with entries in
/// `[-bound, bound]` (`su` scans canonical weights, `soe` takes
/// `p in [-bound, 2n + bound]`).
pub fn good_scan(
    family: &GroupFamily,
    bound: i64,
    opts: &ClassifyOptions,
) -> Result<Vec<(KWeight, Verdict)>> {
    let weights = scan_weights(family, bound);
    use rayon::prelude::*;
    weights
        .into_par_iter()
        .map(|w| {
            let v = is_good(family, &w, opts)?;
            Ok((w, v))
        })
        .collect()
}

/// The scan grid of a family: every dominant weight with entries in
/// `[-bound, bound]` (canonical representatives for `su`).
pub fn scan_weights(family: &GroupFamily, bound: i64) -> Vec<KWeight> {
    match *family {
        GroupFamily::Su { m, n } => {
            let mut out = Vec::new();
            for lambda1 in dominant_vectors(m, -bound, bound) {
                for tail in dominant_vectors(n - 1, 0, bound) {
                    let mut lambda2 = tail.clone();
                    lambda2.push(0);
                    out.push(KWeight::Su {
                        lambda1: lambda1.clone(),
                        lambda2,
                    });
                }
            }
            out
        }
        GroupFamily::Soe { n } => {
            let mut out = Vec::new();
            for lambda in crate::weight::zpp_vectors(n, bound) {
                for p in -bound..=2 * n as i64 + bound {
                    out.push(KWeight::Soe {
                        p,
                        lambda: lambda.clone(),
                    });
                }
            }
            out
        }
        GroupFamily::Sostar { n } => dominant_vectors(n, -bound, bound)
            .into_iter()
            .map(|lambda| KWeight::Sostar { lambda })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_groups_soe_n2_zero() {
        // keys {3,2,1}; |c| = 2 groups both i=2 terms as -(tau_{(1),-1}+tau_{(-1),-1})
        let fam = GroupFamily::soe(2).unwrap();
        let w = KWeight::Soe {
            p: 0,
            lambda: vec![0, 0],
        };
        let groups = star_groups(&fam, &w).unwrap();
        let keys: Vec<i64> = groups.iter().map(|g| g.key).collect();
        assert_eq!(keys, vec![3, 2, 1]);
        let g2 = &groups[1];
        assert_eq!(g2.members.len(), 2);
        assert_eq!(
            g2.sum.coef(&KMLabel::Soe { q: -1, mu: vec![1] }),
            (-1).into()
        );
        assert_eq!(
            g2.sum.coef(&KMLabel::Soe {
                q: -1,
                mu: vec![-1]
            }),
            (-1).into()
        );
    }

    #[test]
    fn star_groups_su32_zero() {
        // keys {4,3,2,1}: A=3,B=2,C=1,D=4,E=3,F=2
        let fam = GroupFamily::su(3, 2).unwrap();
        let w = KWeight::Su {
            lambda1: vec![0, 0, 0],
            lambda2: vec![0, 0],
        };
        let groups = star_groups(&fam, &w).unwrap();
        let keys: Vec<i64> = groups.iter().map(|g| g.key).collect();
        assert_eq!(keys, vec![4, 3, 2, 1]);
        let sizes: Vec<usize> = groups.iter().map(|g| g.members.len()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1]);
        assert_eq!(groups[0].members, vec![WeylElem::Su { i: 1, j: 2 }]);
        assert_eq!(groups[3].members, vec![WeylElem::Su { i: 3, j: 1 }]);
    }

    #[test]
    fn star_groups_sostar10_zero() {
        let fam = GroupFamily::sostar(5).unwrap();
        let w = KWeight::Sostar { lambda: vec![0; 5] };
        let groups = star_groups(&fam, &w).unwrap();
        let keys: Vec<i64> = groups.iter().map(|g| g.key).collect();
        assert_eq!(keys, vec![7, 6, 5, 4, 3, 2, 1]);
        let sizes: Vec<usize> = groups.iter().map(|g| g.members.len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2, 1, 1]);
    }

    #[test]
    fn soe_goodness_examples() {
        let fam = GroupFamily::soe(2).unwrap();
        let opts = ClassifyOptions::default();
        let good = KWeight::Soe {
            p: 2,
            lambda: vec![1, 1],
        };
        assert!(is_good(&fam, &good, &opts).unwrap().is_good());
        let bad = KWeight::Soe {
            p: 0,
            lambda: vec![1, 1],
        };
        let v = is_good(&fam, &bad, &opts).unwrap();
        assert!(matches!(
            v,
            Verdict::NotGood {
                certificate: NotGoodCertificate::PairCriterion { .. },
                ..
            }
        ));
        // member route agrees
        assert!(is_good_soe_via_members(&fam, &good).unwrap().is_good());
        assert!(!is_good_soe_via_members(&fam, &bad).unwrap().is_good());
    }

    #[test]
    fn su32_zero_weight_not_good_at_key_one() {
        let fam = GroupFamily::su(3, 2).unwrap();
        let w = KWeight::Su {
            lambda1: vec![0, 0, 0],
            lambda2: vec![0, 0],
        };
        let v = is_good(&fam, &w, &ClassifyOptions::default()).unwrap();
        match v {
            Verdict::NotGood {
                key,
                certificate: NotGoodCertificate::InvariantI { value },
            } => {
                assert_eq!(key, 1);
                assert_eq!(value, BigInt::from(6));
            }
            other => panic!("expected NotGood at key 1, got {other:?}"),
        }
    }

    #[test]
    fn su12_always_good() {
        let fam = GroupFamily::su(1, 2).unwrap();
        let w = KWeight::Su {
            lambda1: vec![3],
            lambda2: vec![1, -2],
        };
        assert!(is_good(&fam, &w, &ClassifyOptions::default())
            .unwrap()
            .is_good());
    }

    #[test]
    fn telescoping_small() {
        assert!(verify_telescoping(2).unwrap());
        assert!(verify_telescoping(3).unwrap());
    }

    #[test]
    fn explore_smoke() {
        // structural smoke case: bound 0, radius 0 completes
        let rows = explore_sostar(4, 0, 0, default_generator_cap()).unwrap();
        assert_eq!(rows.len(), 1);
        let keys: Vec<i64> = rows[0].groups.iter().map(|g| g.key).collect();
        assert_eq!(keys, vec![5, 4, 3, 2, 1]);
        // n = 3 has a zero-dimensional ptilde; still completes
        let rows = explore_sostar(3, 0, 0, default_generator_cap()).unwrap();
        let keys: Vec<i64> = rows[0].groups.iter().map(|g| g.key).collect();
        assert_eq!(keys, vec![3, 2, 1]);
    }
}
