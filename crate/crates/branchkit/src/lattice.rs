//! Bounded integer-lattice membership in the branching image: enumerate
//! canonical `K`-weights inside an entry box, assemble the exact linear
//! system of their branchings, and solve it by the Hermite-normal-form
//! pass of the internal solver.
//!
//! The search is a semidecision: it reports `Member` with a re-verified
//! witness or `Unknown` (never `NonMember` - generators outside the
//! radius might contribute). Factorized systems are cached per
//! (family, box, grading class), so scans solve many targets against one
//! echelon.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::branching::{branch, branch_virtual};
use crate::error::{Error, Result};
use crate::family::GroupFamily;
use crate::image::MembershipResult;
use crate::solver::Echelon;
use crate::vchar::{KVirtualChar, VirtualChar};
use crate::weight::{dominant_vectors, zpp_vectors, KMLabel, KWeight};

/// Default cap on the generator enumeration, overridable through the
/// `BRANCHKIT_MAX_GENERATORS` environment variable.
pub fn default_generator_cap() -> usize {
    std::env::var("BRANCHKIT_MAX_GENERATORS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(200_000)
}

/// Entry size of a label, used for the radius box. The `SU(2)` slot of a
/// `sostar` label scales with half the weight entries, hence the rounding.
fn label_entry_scale(label: &KMLabel) -> i64 {
    match label {
        KMLabel::Su { mu1, mu2, p } => mu1
            .iter()
            .chain(mu2.iter())
            .map(|x| x.abs())
            .chain([p.abs()])
            .max()
            .unwrap_or(0),
        KMLabel::Soe { q: _, mu } => mu.iter().map(|x| x.abs()).max().unwrap_or(0),
        KMLabel::Sostar { nu, p } => nu
            .iter()
            .map(|x| x.abs())
            .chain([(p + 1) / 2])
            .max()
            .unwrap_or(0),
    }
}

/// Grading that branching preserves; solving per class keeps the systems
/// small. `Su`: total charge mod `m+n` (exact on raw labels, well defined
/// on canonical ones). `Soe`/`Sostar`: the parity carried by the root
/// lattice.
fn label_grade(family: &GroupFamily, label: &KMLabel) -> i64 {
    match (family, label) {
        (GroupFamily::Su { m, n }, KMLabel::Su { mu1, mu2, p }) => {
            let s: i64 = p + mu1.iter().sum::<i64>() + mu2.iter().sum::<i64>();
            s.rem_euclid((m + n) as i64)
        }
        (GroupFamily::Soe { .. }, KMLabel::Soe { q, mu }) => {
            (q + mu.iter().sum::<i64>()).rem_euclid(2)
        }
        (GroupFamily::Sostar { .. }, KMLabel::Sostar { nu, p }) => {
            (p + nu.iter().sum::<i64>()).rem_euclid(2)
        }
        _ => unreachable!(),
    }
}

fn weight_grade(family: &GroupFamily, w: &KWeight) -> i64 {
    match (family, w) {
        (GroupFamily::Su { m, n }, KWeight::Su { lambda1, lambda2 }) => {
            (lambda1.iter().sum::<i64>() + lambda2.iter().sum::<i64>()).rem_euclid((m + n) as i64)
        }
        (GroupFamily::Soe { .. }, KWeight::Soe { p, lambda }) => {
            (p + lambda.iter().sum::<i64>()).rem_euclid(2)
        }
        (GroupFamily::Sostar { .. }, KWeight::Sostar { lambda }) => {
            lambda.iter().sum::<i64>().rem_euclid(2)
        }
        _ => unreachable!(),
    }
}

fn count_dominant(len: usize, lo: i64, hi: i64) -> u128 {
    // nonincreasing sequences over an alphabet of size hi-lo+1
    let a = (hi - lo + 1) as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..len as u128 {
        num = num.saturating_mul(a + i);
        den *= i + 1;
    }
    num / den
}

/// All canonical `K`-weight generators inside the entry box.
fn enumerate_generators(
    family: &GroupFamily,
    b: i64,
    prange: (i64, i64),
    cap: usize,
) -> Result<Vec<KWeight>> {
    let mut out = Vec::new();
    match *family {
        GroupFamily::Su { m, n } => {
            let est = count_dominant(m, -b, b) * count_dominant(n - 1, 0, b);
            if est > cap as u128 {
                return Err(Error::ResourceCap(format!(
                    "su generator box needs ~{est} weights, cap is {cap}"
                )));
            }
            let tails = dominant_vectors(n - 1, 0, b);
            for lambda1 in dominant_vectors(m, -b, b) {
                for tail in &tails {
                    let mut lambda2 = tail.clone();
                    lambda2.push(0);
                    out.push(KWeight::Su {
                        lambda1: lambda1.clone(),
                        lambda2,
                    });
                }
            }
        }
        GroupFamily::Soe { n } => {
            let (plo, phi) = prange;
            let lambdas = zpp_vectors(n, b);
            let est = lambdas.len() as u128 * (phi - plo + 1).max(0) as u128;
            if est > cap as u128 {
                return Err(Error::ResourceCap(format!(
                    "soe generator box needs ~{est} weights, cap is {cap}"
                )));
            }
            for lambda in lambdas {
                for p in plo..=phi {
                    out.push(KWeight::Soe {
                        p,
                        lambda: lambda.clone(),
                    });
                }
            }
        }
        GroupFamily::Sostar { n } => {
            let est = count_dominant(n, -b, b);
            if est > cap as u128 {
                return Err(Error::ResourceCap(format!(
                    "sostar generator box needs ~{est} weights, cap is {cap}"
                )));
            }
            for lambda in dominant_vectors(n, -b, b) {
                out.push(KWeight::Sostar { lambda });
            }
        }
    }
    if out.len() > cap {
        return Err(Error::ResourceCap(format!(
            "{} generators exceed the cap {cap}",
            out.len()
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct SystemKey {
    family: GroupFamily,
    b: i64,
    prange: (i64, i64),
    grade: i64,
}

struct System {
    gens: Vec<KWeight>,
    rows: Vec<KMLabel>,
    index: BTreeMap<KMLabel, u32>,
    columns: Vec<Vec<(u32, i64)>>,
    echelon: Echelon,
}

fn system_cache() -> &'static Mutex<HashMap<SystemKey, Arc<System>>> {
    static CACHE: OnceLock<Mutex<HashMap<SystemKey, Arc<System>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn build_system(key: &SystemKey, cap: usize) -> Result<Arc<System>> {
    if let Some(hit) = system_cache().lock().unwrap().get(key) {
        return Ok(hit.clone());
    }
    let gens: Vec<KWeight> = enumerate_generators(&key.family, key.b, key.prange, cap)?
        .into_iter()
        .filter(|w| weight_grade(&key.family, w) == key.grade)
        .collect();
    let mut pairs: Vec<(KWeight, VirtualChar)> = gens
        .into_iter()
        .map(|w| {
            let b = branch(&key.family, &w)?;
            Ok((w, b))
        })
        .collect::<Result<_>>()?;
    // short branchings first: they become pivots, which keeps witnesses
    // small (a single-term pivot ends the reduction cascade at its row)
    pairs.sort_by(|a, b| (a.1.len(), &a.0).cmp(&(b.1.len(), &b.0)));
    let (gens, branches): (Vec<KWeight>, Vec<VirtualChar>) = pairs.into_iter().unzip();
    // rows sorted descending by label
    let mut rows: Vec<KMLabel> = {
        let mut set: std::collections::BTreeSet<KMLabel> = std::collections::BTreeSet::new();
        for b in &branches {
            for (l, _) in b.terms() {
                set.insert(l.clone());
            }
        }
        set.into_iter().collect()
    };
    rows.reverse();
    let index: BTreeMap<KMLabel, u32> = rows
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i as u32))
        .collect();
    let columns: Vec<Vec<(u32, i64)>> = branches
        .iter()
        .map(|b| {
            let mut col: Vec<(u32, i64)> = b
                .terms()
                .map(|(l, c)| {
                    (
                        index[l],
                        i64::try_from(c).expect("branch multiplicities fit in i64"),
                    )
                })
                .collect();
            col.sort();
            col
        })
        .collect();
    let echelon = Echelon::build(rows.len(), &columns);
    let sys = Arc::new(System {
        gens,
        rows,
        index,
        columns,
        echelon,
    });
    system_cache()
        .lock()
        .unwrap()
        .insert(key.clone(), sys.clone());
    Ok(sys)
}

/// Bounded membership search with an explicit generator cap.
pub fn lattice_member_capped(
    target: &VirtualChar,
    radius: u32,
    cap: usize,
) -> Result<MembershipResult> {
    let family = *target.family();
    if target.is_zero() {
        return Ok(MembershipResult::Member {
            witness: Some(KVirtualChar::zero(family)),
        });
    }

    let scale = target
        .terms()
        .map(|(l, _)| label_entry_scale(l))
        .max()
        .unwrap_or(0);
    let b = scale + radius as i64;
    // soe: the SO(2) slot of a generator drifts from the produced q by at
    // most the total exponent budget; round the range outward so that
    // nearby targets share one factorized system
    let prange = if let GroupFamily::Soe { n } = family {
        let (qlo, qhi) = target
            .terms()
            .map(|(l, _)| match l {
                KMLabel::Soe { q, .. } => *q,
                _ => unreachable!(),
            })
            .fold((i64::MAX, i64::MIN), |(lo, hi), q| (lo.min(q), hi.max(q)));
        let slack = b * (2 * n as i64 - 1) + radius as i64;
        (
            (qlo - slack).div_euclid(4) * 4,
            (qhi + slack).div_euclid(4) * 4 + 4,
        )
    } else {
        (0, 0)
    };

    // split the target by the preserved grading
    let mut classes: BTreeMap<i64, Vec<(KMLabel, BigInt)>> = BTreeMap::new();
    for (l, c) in target.terms() {
        classes
            .entry(label_grade(&family, l))
            .or_default()
            .push((l.clone(), c.clone()));
    }

    let mut witness = KVirtualChar::zero(family);
    let single_class = classes.len() == 1;
    for (grade, terms) in classes {
        let key = SystemKey {
            family,
            b,
            prange,
            grade,
        };
        let sys = build_system(&key, cap)?;
        let mut tcol: Vec<(u32, BigInt)> = Vec::with_capacity(terms.len());
        for (l, c) in &terms {
            match sys.index.get(l) {
                Some(r) => tcol.push((*r, c.clone())),
                // label unreachable by any generator in the box
                None => return Ok(MembershipResult::Unknown { radius }),
            }
        }
        tcol.sort();
        // a target that is literally one branching gets its natural witness
        if single_class {
            if let Some(gi) = sys.columns.iter().position(|col| {
                col.len() == tcol.len()
                    && col
                        .iter()
                        .zip(&tcol)
                        .all(|((r, v), (tr, tv))| r == tr && BigInt::from(*v) == *tv)
            }) {
                witness.add_term(sys.gens[gi].clone(), 1);
                continue;
            }
        }
        match sys.echelon.solve(sys.rows.len(), &sys.columns, &tcol) {
            Some(combo) => {
                for (gi, coef) in combo {
                    witness.add_term(sys.gens[gi].clone(), coef);
                }
            }
            None => return Ok(MembershipResult::Unknown { radius }),
        }
    }

    // soundness: re-verify the candidate witness by full branching
    let back = branch_virtual(&witness)?;
    if back != *target {
        return Err(Error::Validation(
            "internal: lattice witness failed re-verification".into(),
        ));
    }
    Ok(MembershipResult::Member {
        witness: Some(witness),
    })
}

/// Bounded membership search: enumerates canonical `K`-weights whose
/// entries lie within the target's entry box extended by `radius`, and
/// solves the exact integer system of their branchings.
pub fn lattice_member(target: &VirtualChar, radius: u32) -> Result<MembershipResult> {
    lattice_member_capped(target, radius, default_generator_cap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_targets_are_members() {
        let fam = GroupFamily::su(2, 1).unwrap();
        let w = KWeight::Su {
            lambda1: vec![2, 0],
            lambda2: vec![0],
        };
        let target = branch(&fam, &w).unwrap();
        let r = lattice_member(&target, 1).unwrap();
        let MembershipResult::Member { witness: Some(wit) } = r else {
            panic!("expected member");
        };
        // a literal branching recovers its one-term witness {w: 1}
        assert_eq!(wit, KVirtualChar::single(fam, w, 1));
        assert_eq!(branch_virtual(&wit).unwrap(), target);
    }

    #[test]
    fn su21_single_labels_are_members() {
        // rank-one surjectivity, rediscovered by the lattice search
        let fam = GroupFamily::su(2, 1).unwrap();
        for p in [-2i64, 0, 1, 3] {
            let lab = KMLabel::Su {
                mu1: vec![0],
                mu2: vec![],
                p,
            };
            let target = VirtualChar::single(fam, lab, 1);
            let r = lattice_member(&target, 3).unwrap();
            assert!(r.is_member(), "p = {p}");
        }
    }

    #[test]
    fn soe_chiral_label_stays_unknown() {
        let fam = GroupFamily::soe(2).unwrap();
        let target = VirtualChar::single(fam, KMLabel::Soe { q: 1, mu: vec![1] }, 1);
        let r = lattice_member(&target, 3).unwrap();
        assert_eq!(r, MembershipResult::Unknown { radius: 3 });
    }

    #[test]
    fn soe_pair_is_member() {
        let fam = GroupFamily::soe(2).unwrap();
        let mut target = VirtualChar::zero(fam);
        target.add_term(KMLabel::Soe { q: 3, mu: vec![1] }, 1);
        target.add_term(KMLabel::Soe { q: 1, mu: vec![-1] }, 1);
        let r = lattice_member(&target, 2).unwrap();
        let MembershipResult::Member { witness: Some(wit) } = r else {
            panic!("expected member");
        };
        assert_eq!(branch_virtual(&wit).unwrap(), target);
    }

    #[test]
    fn zero_target() {
        let fam = GroupFamily::sostar(4).unwrap();
        let r = lattice_member(&VirtualChar::zero(fam), 0).unwrap();
        assert!(r.is_member());
    }

    #[test]
    fn cap_triggers_resource_error() {
        let fam = GroupFamily::sostar(5).unwrap();
        let target = VirtualChar::single(
            fam,
            KMLabel::Sostar {
                nu: vec![2, 1, 0],
                p: 1,
            },
            1,
        );
        assert!(matches!(
            lattice_member_capped(&target, 2, 10),
            Err(Error::ResourceCap(_))
        ));
    }
}
