//! Highest-weight labels for `K` and `K_M`, canonical forms, and the
//! interlacing / partition combinatorics behind the branching laws.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::GroupFamily;

pub(crate) fn is_nonincreasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// `Z^k_{++}`: nonincreasing with the last entry free in sign,
/// `v_1 >= ... >= v_{k-1} >= |v_k|`. For `k = 1` every integer qualifies.
pub(crate) fn is_zpp(v: &[i64]) -> bool {
    match v.len() {
        0 | 1 => true,
        k => is_nonincreasing(&v[..k - 1]) && v[k - 2] >= v[k - 1].abs(),
    }
}

fn fmt_vec(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_vec(s: &str) -> Result<Vec<i64>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer token `{t}`")))
        })
        .collect()
}

/// Dominant highest weight of an irreducible `K`-representation.
///
/// `Su` weights are equal as representations iff they differ by the
/// simultaneous shift `(lambda1 + k, lambda2 + k)`; compare via
/// [`KWeight::canonical`], which fixes the last `lambda2` entry to `0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KWeight {
    Su {
        lambda1: Vec<i64>,
        lambda2: Vec<i64>,
    },
    Soe {
        p: i64,
        lambda: Vec<i64>,
    },
    Sostar {
        lambda: Vec<i64>,
    },
}

impl KWeight {
    pub fn validate(&self, family: &GroupFamily) -> Result<()> {
        match (self, family) {
            (KWeight::Su { lambda1, lambda2 }, GroupFamily::Su { m, n }) => {
                if lambda1.len() != *m || lambda2.len() != *n {
                    return Err(Error::Validation(format!(
                        "su:{m},{n} weight needs |lambda1| = {m}, |lambda2| = {n}"
                    )));
                }
                if !is_nonincreasing(lambda1) || !is_nonincreasing(lambda2) {
                    return Err(Error::Validation(format!(
                        "su weight ({},{}) is not dominant",
                        fmt_vec(lambda1),
                        fmt_vec(lambda2)
                    )));
                }
                Ok(())
            }
            (KWeight::Soe { lambda, .. }, GroupFamily::Soe { n }) => {
                if lambda.len() != *n {
                    return Err(Error::Validation(format!(
                        "soe:{n} weight needs {n} lambda entries"
                    )));
                }
                if !is_zpp(lambda) {
                    return Err(Error::Validation(format!(
                        "soe weight ({}) is not in Z^n_++",
                        fmt_vec(lambda)
                    )));
                }
                Ok(())
            }
            (KWeight::Sostar { lambda }, GroupFamily::Sostar { n }) => {
                if lambda.len() != *n {
                    return Err(Error::Validation(format!(
                        "sostar:{n} weight needs {n} lambda entries"
                    )));
                }
                if !is_nonincreasing(lambda) {
                    return Err(Error::Validation(format!(
                        "sostar weight ({}) is not dominant",
                        fmt_vec(lambda)
                    )));
                }
                Ok(())
            }
            _ => Err(Error::WrongFamily {
                expected: family.to_string(),
                got: format!("{self:?}"),
            }),
        }
    }

    /// Canonical representative of the equivalence class: for `Su` the
    /// simultaneous shift with `lambda2` ending in `0`; identity otherwise.
    pub fn canonical(&self) -> KWeight {
        match self {
            KWeight::Su { lambda1, lambda2 } => {
                let k = -*lambda2.last().expect("su weight has n >= 1");
                KWeight::Su {
                    lambda1: lambda1.iter().map(|x| x + k).collect(),
                    lambda2: lambda2.iter().map(|x| x + k).collect(),
                }
            }
            _ => self.clone(),
        }
    }

    /// Simultaneous shift by `k` (only meaningful for `Su`).
    pub fn shifted(&self, k: i64) -> KWeight {
        match self {
            KWeight::Su { lambda1, lambda2 } => KWeight::Su {
                lambda1: lambda1.iter().map(|x| x + k).collect(),
                lambda2: lambda2.iter().map(|x| x + k).collect(),
            },
            _ => self.clone(),
        }
    }

    /// Flat coordinates on the maximal torus of `K`, in the order used by
    /// the character engine.
    pub fn torus_coords(&self) -> Vec<i64> {
        match self {
            KWeight::Su { lambda1, lambda2 } => {
                let mut v = lambda1.clone();
                v.extend_from_slice(lambda2);
                v
            }
            KWeight::Soe { p, lambda } => {
                let mut v = vec![*p];
                v.extend_from_slice(lambda);
                v
            }
            KWeight::Sostar { lambda } => lambda.clone(),
        }
    }

    /// Parses a weight literal: components separated by `|`, entries
    /// comma-separated, `Soe` carries a `p=<int>;` prefix.
    ///
    /// Examples: `1,0|0` (su), `p=2;1,1` (soe), `1,0,0,0,0` (sostar).
    pub fn parse(family: &GroupFamily, s: &str) -> Result<KWeight> {
        let w = match family {
            GroupFamily::Su { .. } => {
                let (a, b) = s.split_once('|').ok_or_else(|| {
                    Error::Parse(format!("su weight `{s}`: expected `lambda1|lambda2`"))
                })?;
                KWeight::Su {
                    lambda1: parse_vec(a)?,
                    lambda2: parse_vec(b)?,
                }
            }
            GroupFamily::Soe { .. } => {
                let rest = s.strip_prefix("p=").ok_or_else(|| {
                    Error::Parse(format!("soe weight `{s}`: expected `p=<int>;<lambda>`"))
                })?;
                let (p, lam) = rest.split_once(';').ok_or_else(|| {
                    Error::Parse(format!("soe weight `{s}`: missing `;` after p"))
                })?;
                KWeight::Soe {
                    p: p.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad integer token `{p}`")))?,
                    lambda: parse_vec(lam)?,
                }
            }
            GroupFamily::Sostar { .. } => KWeight::Sostar {
                lambda: parse_vec(s)?,
            },
        };
        w.validate(family)?;
        Ok(w)
    }
}

impl fmt::Display for KWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KWeight::Su { lambda1, lambda2 } => {
                write!(f, "{}|{}", fmt_vec(lambda1), fmt_vec(lambda2))
            }
            KWeight::Soe { p, lambda } => write!(f, "p={};{}", p, fmt_vec(lambda)),
            KWeight::Sostar { lambda } => write!(f, "{}", fmt_vec(lambda)),
        }
    }
}

/// Dominant highest weight of an irreducible `K_M`-representation.
///
/// `Su` labels are equal as representations iff they differ by the shift
/// `(mu1 + k, mu2 + k, p + 2k)`; [`KMLabel::canonical`] fixes the last
/// `mu2` entry (last `mu1` entry when `n = 1`) to `0`. `Soe` and `Sostar`
/// labels are already unique.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KMLabel {
    Su {
        mu1: Vec<i64>,
        mu2: Vec<i64>,
        p: i64,
    },
    Soe {
        q: i64,
        mu: Vec<i64>,
    },
    Sostar {
        nu: Vec<i64>,
        p: i64,
    },
}

impl KMLabel {
    pub fn validate(&self, family: &GroupFamily) -> Result<()> {
        match (self, family) {
            (KMLabel::Su { mu1, mu2, .. }, GroupFamily::Su { m, n }) => {
                if mu1.len() != m - 1 || mu2.len() != n - 1 {
                    return Err(Error::Validation(format!(
                        "su:{m},{n} label needs |mu1| = {}, |mu2| = {}",
                        m - 1,
                        n - 1
                    )));
                }
                if !is_nonincreasing(mu1) || !is_nonincreasing(mu2) {
                    return Err(Error::Validation(format!(
                        "su label ({};{}) is not dominant",
                        fmt_vec(mu1),
                        fmt_vec(mu2)
                    )));
                }
                Ok(())
            }
            (KMLabel::Soe { mu, .. }, GroupFamily::Soe { n }) => {
                if mu.len() != n - 1 {
                    return Err(Error::Validation(format!(
                        "soe:{n} label needs {} mu entries",
                        n - 1
                    )));
                }
                if !is_zpp(mu) {
                    return Err(Error::Validation(format!(
                        "soe label ({}) is not in Z^(n-1)_++",
                        fmt_vec(mu)
                    )));
                }
                Ok(())
            }
            (KMLabel::Sostar { nu, p }, GroupFamily::Sostar { n }) => {
                if nu.len() != n - 2 {
                    return Err(Error::Validation(format!(
                        "sostar:{n} label needs {} nu entries",
                        n - 2
                    )));
                }
                if !is_nonincreasing(nu) {
                    return Err(Error::Validation(format!(
                        "sostar label ({}) is not dominant",
                        fmt_vec(nu)
                    )));
                }
                if *p < 0 {
                    return Err(Error::Validation(format!(
                        "sostar label has negative SU(2) entry p = {p}"
                    )));
                }
                Ok(())
            }
            _ => Err(Error::WrongFamily {
                expected: family.to_string(),
                got: format!("{self:?}"),
            }),
        }
    }

    /// Shift `tau_{mu1+k, mu2+k, p+2k}` of an `Su` label; identity otherwise.
    pub fn shifted(&self, k: i64) -> KMLabel {
        match self {
            KMLabel::Su { mu1, mu2, p } => KMLabel::Su {
                mu1: mu1.iter().map(|x| x + k).collect(),
                mu2: mu2.iter().map(|x| x + k).collect(),
                p: p + 2 * k,
            },
            _ => self.clone(),
        }
    }

    /// The unique equivalent label in canonical form. Idempotent and
    /// constant on shift classes; `Soe`/`Sostar` labels are returned
    /// unchanged.
    pub fn canonical(&self) -> KMLabel {
        match self {
            KMLabel::Su { mu1, mu2, .. } => {
                let k = if let Some(last) = mu2.last() {
                    -*last
                } else if let Some(last) = mu1.last() {
                    -*last
                } else {
                    // m = n = 1 is excluded at family construction.
                    0
                };
                self.shifted(k)
            }
            _ => self.clone(),
        }
    }

    /// Coordinates on the maximal torus of `K_M`, in the order used by the
    /// character engine (scalar slot first, then the vector parts).
    pub fn torus_coords(&self) -> Vec<i64> {
        match self {
            KMLabel::Su { mu1, mu2, p } => {
                let mut v = vec![*p];
                v.extend_from_slice(mu1);
                v.extend_from_slice(mu2);
                v
            }
            KMLabel::Soe { q, mu } => {
                let mut v = vec![*q];
                v.extend_from_slice(mu);
                v
            }
            KMLabel::Sostar { nu, p } => {
                let mut v = vec![*p];
                v.extend_from_slice(nu);
                v
            }
        }
    }

    /// Inverse of [`KMLabel::torus_coords`].
    pub fn from_torus_coords(family: &GroupFamily, v: &[i64]) -> KMLabel {
        match *family {
            GroupFamily::Su { m, n } => KMLabel::Su {
                p: v[0],
                mu1: v[1..m].to_vec(),
                mu2: v[m..m + n - 1].to_vec(),
            },
            GroupFamily::Soe { .. } => KMLabel::Soe {
                q: v[0],
                mu: v[1..].to_vec(),
            },
            GroupFamily::Sostar { .. } => KMLabel::Sostar {
                p: v[0],
                nu: v[1..].to_vec(),
            },
        }
    }

    /// Parses a label literal: su `mu1|mu2|p`, soe `q=<int>;mu`,
    /// sostar `nu|p`.
    pub fn parse(family: &GroupFamily, s: &str) -> Result<KMLabel> {
        let lab = match family {
            GroupFamily::Su { .. } => {
                let mut parts = s.split('|');
                let (a, b, c) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
                    (Some(a), Some(b), Some(c), None) => (a, b, c),
                    _ => {
                        return Err(Error::Parse(format!(
                            "su label `{s}`: expected `mu1|mu2|p`"
                        )))
                    }
                };
                KMLabel::Su {
                    mu1: parse_vec(a)?,
                    mu2: parse_vec(b)?,
                    p: c.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad integer token `{c}`")))?,
                }
            }
            GroupFamily::Soe { .. } => {
                let rest = s.strip_prefix("q=").ok_or_else(|| {
                    Error::Parse(format!("soe label `{s}`: expected `q=<int>;<mu>`"))
                })?;
                let (q, mu) = rest
                    .split_once(';')
                    .ok_or_else(|| Error::Parse(format!("soe label `{s}`: missing `;` after q")))?;
                KMLabel::Soe {
                    q: q.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad integer token `{q}`")))?,
                    mu: parse_vec(mu)?,
                }
            }
            GroupFamily::Sostar { .. } => {
                let (nu, p) = s
                    .split_once('|')
                    .ok_or_else(|| Error::Parse(format!("sostar label `{s}`: expected `nu|p`")))?;
                KMLabel::Sostar {
                    nu: parse_vec(nu)?,
                    p: p.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad integer token `{p}`")))?,
                }
            }
        };
        lab.validate(family)?;
        Ok(lab)
    }

    /// Colon-joined flat form for TSV output.
    pub fn tsv(&self) -> String {
        self.torus_coords()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(":")
    }
}

impl fmt::Display for KMLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KMLabel::Su { mu1, mu2, p } => {
                write!(f, "{}|{}|{}", fmt_vec(mu1), fmt_vec(mu2), p)
            }
            KMLabel::Soe { q, mu } => write!(f, "q={};{}", q, fmt_vec(mu)),
            KMLabel::Sostar { nu, p } => write!(f, "{}|{}", fmt_vec(nu), p),
        }
    }
}

/// A partition: nonincreasing nonnegative integers, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(mut parts: Vec<i64>) -> Result<Partition> {
        if !is_nonincreasing(&parts) || parts.last().is_some_and(|&x| x < 0) {
            return Err(Error::Validation(format!(
                "({}) is not a partition",
                fmt_vec(&parts)
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let rows = self.0.first().copied().unwrap_or(0);
        let parts = (1..=rows)
            .map(|j| self.0.iter().filter(|&&p| p >= j).count() as i64)
            .collect();
        Partition(parts)
    }
}

/// Transpose of a Young diagram.
pub fn conjugate(p: &Partition) -> Partition {
    p.conjugate()
}

/// The one-step interlacing condition
/// `lam_1 >= mu_1 >= lam_2 >= ... >= mu_{k-1} >= lam_k`.
pub fn interlaces(lam: &[i64], mu: &[i64]) -> Result<bool> {
    if lam.len() != mu.len() + 1 {
        return Err(Error::Validation(format!(
            "interlacing needs lengths k and k-1, got {} and {}",
            lam.len(),
            mu.len()
        )));
    }
    Ok((0..mu.len()).all(|i| lam[i] >= mu[i] && mu[i] >= lam[i + 1]))
}

/// All nonincreasing integer vectors of the given length with entries in
/// `[lo, hi]`, in lexicographically descending order.
pub fn dominant_vectors(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>, len: usize, lo: i64, hi: i64) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let top = cur.last().copied().unwrap_or(hi).min(hi);
        let mut x = top;
        while x >= lo {
            cur.push(x);
            rec(out, cur, len, lo, hi);
            cur.pop();
            x -= 1;
        }
    }
    if len == 0 {
        return vec![Vec::new()];
    }
    rec(&mut out, &mut cur, len, lo, hi);
    out
}

/// All vectors in `Z^len_{++}` with `v_1 <= bound`, lexicographically
/// descending.
pub fn zpp_vectors(len: usize, bound: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    if len == 1 {
        return (-bound..=bound).rev().map(|x| vec![x]).collect();
    }
    let mut out = Vec::new();
    for head in dominant_vectors(len - 1, 0, bound) {
        let last_min = *head.last().unwrap();
        for x in (-last_min..=last_min).rev() {
            let mut v = head.clone();
            v.push(x);
            out.push(v);
        }
    }
    // dominant_vectors is lex-descending on the head; the tail loop keeps
    // the overall order lex-descending.
    out.sort_by(|a, b| b.cmp(a));
    out
}
