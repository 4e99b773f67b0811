//! The coset representatives `W_kappa`, the restricted labels
//! `W_{lambda_w}`, signs, exact integer `c-hat` values, and the exterior
//! alternating sum of `ptilde_+^[ev]`.
//!
//! `c-hat` is stored as the exact integer of the final per-family formulas
//! with the uniform positive normalization dropped; equality of `c-hat^2`
//! is compared as equality of `|c-hat|`.

// The index loops below transcribe displayed per-index label formulas;
// keeping the subscripts visible beats iterator chains here.
#![allow(clippy::needless_range_loop)]

use serde::Serialize;

use crate::charspace::{exterior_all, km_shape};
use crate::error::{Error, Result};
use crate::family::GroupFamily;
use crate::vchar::VirtualChar;
use crate::weight::{KMLabel, KWeight, Partition};

/// One element of `W_kappa`, by its per-family index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum WeylElem {
    /// `(w_1^(i), w_2^(j))`, `1 <= i <= m`, `1 <= j <= n`.
    Su { i: usize, j: usize },
    /// `(delta_+-, w^(i))`, `1 <= i <= n`.
    Soe { plus: bool, i: usize },
    /// `w_{ij}`, `1 <= i < j <= n`.
    Sostar { i: usize, j: usize },
}

/// One summand of the Ansatz numerator: sign, canonical restricted label,
/// and the exact integer `c-hat`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylTerm {
    pub elem: WeylElem,
    pub sign: i64,
    pub label: KMLabel,
    pub c_hat: i64,
}

/// Deterministic enumeration of `W_kappa` (lexicographic in the indices).
pub fn enum_wkappa(family: &GroupFamily) -> Vec<WeylElem> {
    let mut out = Vec::with_capacity(family.wkappa_size());
    match *family {
        GroupFamily::Su { m, n } => {
            for i in 1..=m {
                for j in 1..=n {
                    out.push(WeylElem::Su { i, j });
                }
            }
        }
        GroupFamily::Soe { n } => {
            for i in 1..=n {
                out.push(WeylElem::Soe { plus: true, i });
                out.push(WeylElem::Soe { plus: false, i });
            }
        }
        GroupFamily::Sostar { n } => {
            for i in 1..n {
                for j in i + 1..=n {
                    out.push(WeylElem::Sostar { i, j });
                }
            }
        }
    }
    debug_assert_eq!(out.len(), family.wkappa_size());
    out
}

/// Sign `(-1)^{l(w)}` of a coset representative.
pub fn sign_of(elem: &WeylElem) -> i64 {
    match *elem {
        WeylElem::Su { i, j } => {
            if (i + j) % 2 == 0 {
                1
            } else {
                -1
            }
        }
        WeylElem::Soe { i, .. } => {
            if (i - 1) % 2 == 0 {
                1
            } else {
                -1
            }
        }
        WeylElem::Sostar { i, j } => {
            if (i + j + 1) % 2 == 0 {
                1
            } else {
                -1
            }
        }
    }
}

/// All Weyl terms of a highest weight: canonical labels `W_{lambda_w}`,
/// signs, and exact integer `c-hat` values, per the displayed per-family
/// formulas.
pub fn weyl_terms(family: &GroupFamily, w: &KWeight) -> Result<Vec<WeylTerm>> {
    w.validate(family)?;
    let mut out = Vec::with_capacity(family.wkappa_size());
    match (family, w) {
        (GroupFamily::Su { m, n }, KWeight::Su { lambda1, lambda2 }) => {
            let (m, n) = (*m, *n);
            for elem in enum_wkappa(family) {
                let WeylElem::Su { i, j } = elem else {
                    unreachable!()
                };
                let mut mu1 = Vec::with_capacity(m - 1);
                for k in 0..i - 1 {
                    mu1.push(lambda1[k] + 1);
                }
                for k in i..m {
                    mu1.push(lambda1[k]);
                }
                let mut mu2 = Vec::with_capacity(n - 1);
                for k in 0..j - 1 {
                    mu2.push(lambda2[k]);
                }
                for k in j..n {
                    mu2.push(lambda2[k] - 1);
                }
                let p = lambda1[i - 1] + lambda2[j - 1] + n as i64 + 1 - i as i64 - j as i64;
                let c_hat = lambda1[i - 1] - lambda2[j - 1] + (m - i) as i64 + j as i64;
                out.push(WeylTerm {
                    elem,
                    sign: sign_of(&elem),
                    label: KMLabel::Su { mu1, mu2, p }.canonical(),
                    c_hat,
                });
            }
        }
        (GroupFamily::Soe { n }, KWeight::Soe { p, lambda }) => {
            let n = *n;
            for elem in enum_wkappa(family) {
                let WeylElem::Soe { plus, i } = elem else {
                    unreachable!()
                };
                let mut mu = Vec::with_capacity(n - 1);
                for k in 0..i - 1 {
                    mu.push(lambda[k] + 1);
                }
                if i < n {
                    for k in i..n - 1 {
                        mu.push(lambda[k]);
                    }
                    mu.push(lambda[n - 1]);
                    if !plus {
                        mu[n - 2] = -lambda[n - 1];
                    }
                } else if !plus {
                    // i = n has its separately displayed case
                    mu[n - 2] = -(lambda[n - 2] + 1);
                }
                let (q, c_hat) = if plus {
                    (
                        p + lambda[i - 1] - i as i64 + 1,
                        -p + lambda[i - 1] - i as i64 + 2 * n as i64,
                    )
                } else {
                    (
                        p - lambda[i - 1] - 2 * n as i64 + i as i64 + 1,
                        -p - lambda[i - 1] + i as i64,
                    )
                };
                out.push(WeylTerm {
                    elem,
                    sign: sign_of(&elem),
                    label: KMLabel::Soe { q, mu },
                    c_hat,
                });
            }
        }
        (GroupFamily::Sostar { n }, KWeight::Sostar { lambda }) => {
            let n = *n;
            for elem in enum_wkappa(family) {
                let WeylElem::Sostar { i, j } = elem else {
                    unreachable!()
                };
                let mut nu = Vec::with_capacity(n - 2);
                for k in 0..i - 1 {
                    nu.push(lambda[k] + 2);
                }
                for k in i..j - 1 {
                    nu.push(lambda[k] + 1);
                }
                for k in j..n {
                    nu.push(lambda[k]);
                }
                let p = lambda[i - 1] - lambda[j - 1] - i as i64 + j as i64 - 1;
                let c_hat = lambda[i - 1] + lambda[j - 1] + 2 * n as i64 - i as i64 - j as i64;
                out.push(WeylTerm {
                    elem,
                    sign: sign_of(&elem),
                    label: KMLabel::Sostar { nu, p },
                    c_hat,
                });
            }
        }
        _ => unreachable!("validate() checked the family"),
    }
    Ok(out)
}

/// The `K_M`-label of `ptilde_+^[ev]`. Errors out for the families where
/// that space is zero-dimensional (`su` with `m = 1` or `n = 1`,
/// `sostar:3`); [`lambda_alt_sum`] handles those degenerate cases.
pub fn ptilde_ev(family: &GroupFamily) -> Result<KMLabel> {
    match *family {
        GroupFamily::Su { m, n } => {
            if m < 2 || n < 2 {
                return Err(Error::Validation(format!(
                    "ptilde_+^[ev] of su:{m},{n} is zero-dimensional"
                )));
            }
            let mut mu1 = vec![0; m - 1];
            mu1[0] = 1;
            let mut mu2 = vec![0; n - 1];
            mu2[n - 2] = -1;
            Ok(KMLabel::Su { mu1, mu2, p: 0 })
        }
        GroupFamily::Soe { n } => Ok(KMLabel::Soe {
            q: -2,
            mu: vec![0; n - 1],
        }),
        GroupFamily::Sostar { n } => {
            if n < 4 {
                return Err(Error::Validation(format!(
                    "ptilde_+^[ev] of sostar:{n} is zero-dimensional"
                )));
            }
            let mut nu = vec![0; n - 2];
            nu[0] = 1;
            nu[1] = 1;
            Ok(KMLabel::Sostar { nu, p: 0 })
        }
    }
}

/// Closed form of the exterior alternating sum for `su`: the summands of
/// `Lambda^j` are the pairs `(mu', mu'')` with `mu'` a partition of `j`
/// whose conjugate, reversed and negated, is `mu''`.
fn lambda_alt_sum_su_closed(m: usize, n: usize) -> VirtualChar {
    let family = GroupFamily::Su { m, n };
    let mut vc = VirtualChar::zero(family);
    let rows = m - 1;
    let maxcol = n as i64 - 1;
    // partitions with at most `rows` parts, each part <= maxcol
    let mut stack: Vec<Vec<i64>> = vec![Vec::new()];
    while let Some(parts) = stack.pop() {
        let j: i64 = parts.iter().sum();
        let part = Partition::new(parts.clone()).expect("built nonincreasing");
        let conj = part.conjugate();
        let mut mu1 = parts.clone();
        mu1.resize(rows, 0);
        let mut mu2: Vec<i64> = conj.parts().to_vec();
        mu2.resize(n - 1, 0);
        mu2.reverse();
        for x in &mut mu2 {
            *x = -*x;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        vc.add_term(KMLabel::Su { mu1, mu2, p: 0 }, sign);
        // extend the partition
        if parts.len() < rows {
            let hi = parts.last().copied().unwrap_or(maxcol);
            for next in 1..=hi {
                let mut e = parts.clone();
                e.push(next);
                stack.push(e);
            }
        }
    }
    vc
}

/// The alternating sum `sum_j (-1)^j Lambda^j ptilde_+^[ev]` as a virtual
/// character. When `ptilde_+^[ev]` is zero-dimensional the sum is the
/// trivial character.
pub fn lambda_alt_sum(family: &GroupFamily) -> Result<VirtualChar> {
    let ptilde = match ptilde_ev(family) {
        Ok(l) => l,
        Err(_) => {
            let trivial = trivial_label(family);
            return Ok(VirtualChar::single(*family, trivial, 1));
        }
    };
    let shape = km_shape(family);
    let layers = exterior_all(&shape, &ptilde.torus_coords())?;
    let mut vc = VirtualChar::zero(*family);
    for (j, layer) in layers.iter().enumerate() {
        let sign = if j % 2 == 0 { 1i64 } else { -1 };
        for (v, &mult) in layer {
            vc.add_term(KMLabel::from_torus_coords(family, v), sign * mult);
        }
    }
    if let GroupFamily::Su { m, n } = *family {
        debug_assert_eq!(vc, lambda_alt_sum_su_closed(m, n));
    }
    Ok(vc)
}

/// The trivial one-dimensional `K_M`-label of a family.
pub fn trivial_label(family: &GroupFamily) -> KMLabel {
    match *family {
        GroupFamily::Su { m, n } => KMLabel::Su {
            mu1: vec![0; m - 1],
            mu2: vec![0; n - 1],
            p: 0,
        },
        GroupFamily::Soe { n } => KMLabel::Soe {
            q: 0,
            mu: vec![0; n - 1],
        },
        GroupFamily::Sostar { n } => KMLabel::Sostar {
            nu: vec![0; n - 2],
            p: 0,
        },
    }
}
