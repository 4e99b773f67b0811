//! Closed-form restriction maps `Res: K^0(K) -> K^0(K_M)` for the three
//! families, stated exactly and cross-checked against the weight oracle.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::family::GroupFamily;
use crate::vchar::{KVirtualChar, VirtualChar};
use crate::weight::{is_zpp, KMLabel, KWeight};

/// All `mu` with `lam_1 >= mu_1 >= lam_2 >= ... >= mu_{k-1} >= lam_k`,
/// lexicographically descending.
fn interlacing_vectors(lam: &[i64]) -> Vec<Vec<i64>> {
    if lam.len() <= 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(lam.len() - 1);
    fn rec(lam: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let i = cur.len();
        if i == lam.len() - 1 {
            out.push(cur.clone());
            return;
        }
        let hi = lam[i];
        let lo = lam[i + 1];
        let mut x = hi;
        while x >= lo {
            cur.push(x);
            rec(lam, cur, out);
            cur.pop();
            x -= 1;
        }
    }
    rec(lam, &mut cur, &mut out);
    out
}

fn sgn(x: i64) -> i64 {
    x.signum()
}

/// One `mu`-summand of the `SO_0(2,2n)` branching law: the exponents
/// `l_1..l_{n-1}`, the signed `l_n`, and the multiplicity table `m(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchTermSoe {
    pub mu: Vec<i64>,
    pub ell: Vec<i64>,
    pub ell_n: i64,
    pub ell_total: i64,
    /// `m(k)` for `0 <= k <= ell_total`; `m(0) = m(ell) = 1` and
    /// `m(k) = m(ell - k)`.
    pub multiplicities: Vec<i64>,
}

fn soe_window(lambda: &[i64], mu: &[i64]) -> bool {
    let n = lambda.len();
    if !is_zpp(mu) {
        return false;
    }
    if n == 2 {
        return lambda[0] >= mu[0].abs();
    }
    for i in 0..n - 3 {
        if !(lambda[i] >= mu[i] && mu[i] >= lambda[i + 2]) {
            return false;
        }
    }
    if !(lambda[n - 3] >= mu[n - 3] && mu[n - 3] >= lambda[n - 1].abs()) {
        return false;
    }
    lambda[n - 2] >= mu[n - 2].abs()
}

/// Exponents and multiplicity table for one interlacing `mu`, per the
/// `SO_0(2,2n)` branching law. `mu` outside the window is an error.
///
/// At `n = 2` the generic index ranges collide; there
/// `l_1 = lambda_1 - max(|lambda_2|, |mu_1|)` and
/// `l_n = sgn(lambda_2) sgn(mu_1) min(|lambda_2|, |mu_1|)`, with
/// `sgn(0) = 0` throughout.
pub fn branch_terms_soe(family: &GroupFamily, w: &KWeight, mu: &[i64]) -> Result<BranchTermSoe> {
    let n = match family {
        GroupFamily::Soe { n } => *n,
        _ => {
            return Err(Error::WrongFamily {
                expected: "soe:<n>".into(),
                got: family.to_string(),
            })
        }
    };
    w.validate(family)?;
    let lambda = match w {
        KWeight::Soe { lambda, .. } => lambda,
        _ => unreachable!(),
    };
    if mu.len() != n - 1 || !soe_window(lambda, mu) {
        return Err(Error::NotInSupport(format!(
            "mu = {mu:?} is outside the branching window of lambda = {lambda:?}"
        )));
    }

    let mut ell = Vec::with_capacity(n - 1);
    let ell_n = if n == 2 {
        ell.push(lambda[0] - lambda[1].abs().max(mu[0].abs()));
        sgn(lambda[1]) * sgn(mu[0]) * lambda[1].abs().min(mu[0].abs())
    } else {
        ell.push(lambda[0] - lambda[1].max(mu[0]));
        for i in 2..=n - 2 {
            ell.push(lambda[i - 1].min(mu[i - 2]) - lambda[i].max(mu[i - 1]));
        }
        ell.push(lambda[n - 2].min(mu[n - 3]) - lambda[n - 1].abs().max(mu[n - 2].abs()));
        sgn(lambda[n - 1]) * sgn(mu[n - 2]) * lambda[n - 1].abs().min(mu[n - 2].abs())
    };
    debug_assert!(ell.iter().all(|&l| l >= 0));
    let ell_total: i64 = ell.iter().sum();

    // m(k) = #{0 <= k_i <= l_i with sum k}, by direct convolution
    let mut m = vec![1i64];
    for &li in &ell {
        let mut next = vec![0i64; m.len() + li as usize];
        for (k, &c) in m.iter().enumerate() {
            for t in 0..=li as usize {
                next[k + t] += c;
            }
        }
        m = next;
    }
    debug_assert_eq!(m.len() as i64, ell_total + 1);
    debug_assert_eq!(m[0], 1);
    debug_assert_eq!(*m.last().unwrap(), 1);

    Ok(BranchTermSoe {
        mu: mu.to_vec(),
        ell,
        ell_n,
        ell_total,
        multiplicities: m,
    })
}

/// Raw branching terms `(label, multiplicity)` in deterministic order
/// (lexicographically descending over the interlacing labels), before
/// canonicalization.
pub fn branch_raw(family: &GroupFamily, w: &KWeight) -> Result<Vec<(KMLabel, i64)>> {
    w.validate(family)?;
    let mut out = Vec::new();
    match (family, w) {
        (GroupFamily::Su { .. }, KWeight::Su { lambda1, lambda2 }) => {
            let s1: i64 = lambda1.iter().sum();
            let s2: i64 = lambda2.iter().sum();
            for mu1 in interlacing_vectors(lambda1) {
                let m1: i64 = mu1.iter().sum();
                for mu2 in interlacing_vectors(lambda2) {
                    let m2: i64 = mu2.iter().sum();
                    out.push((
                        KMLabel::Su {
                            mu1: mu1.clone(),
                            mu2,
                            p: s1 + s2 - m1 - m2,
                        },
                        1,
                    ));
                }
            }
        }
        (GroupFamily::Soe { n }, KWeight::Soe { p, lambda }) => {
            for mu in soe_window_vectors(*n, lambda) {
                let term = branch_terms_soe(family, w, &mu)?;
                for (k, &mk) in term.multiplicities.iter().enumerate() {
                    let q = p + term.ell_n + 2 * k as i64 - term.ell_total;
                    out.push((KMLabel::Soe { q, mu: mu.clone() }, mk));
                }
            }
        }
        (GroupFamily::Sostar { n }, KWeight::Sostar { lambda }) => {
            let n = *n;
            let total_l: i64 = lambda.iter().sum();
            for nu in sostar_window_vectors(n, lambda) {
                let total_nu: i64 = nu.iter().sum();
                // The SU(2)-isotypic structure of the nu-component comes
                // from the box of mu with nu interlacing mu interlacing
                // lambda: each mu carries the SU(2)-weight
                // 2|mu| - |lambda| - |nu|, and the string with top p has
                // multiplicity N(s) - N(s+1) where N counts box points of
                // sum s = (p + |lambda| + |nu|)/2. The top string per nu
                // is p(lambda,nu) = lambda_1 - sum |lambda_i - nu_{i-1}|
                // - lambda_n.
                let k = n - 1;
                let mut lo = Vec::with_capacity(k);
                let mut hi = Vec::with_capacity(k);
                for i in 1..=k {
                    lo.push(if i <= n - 2 {
                        lambda[i].max(nu[i - 1])
                    } else {
                        lambda[n - 1]
                    });
                    hi.push(if i >= 2 {
                        lambda[i - 1].min(nu[i - 2])
                    } else {
                        lambda[0]
                    });
                }
                debug_assert!(lo.iter().zip(&hi).all(|(l, h)| l <= h));
                let base: i64 = lo.iter().sum();
                let mut dist = vec![1i64];
                for i in 0..k {
                    let width = (hi[i] - lo[i]) as usize;
                    let mut next = vec![0i64; dist.len() + width];
                    for (s, &c) in dist.iter().enumerate() {
                        for t in 0..=width {
                            next[s + t] += c;
                        }
                    }
                    dist = next;
                }
                let p_top = lambda[0]
                    - (1..n - 1)
                        .map(|i| (lambda[i] - nu[i - 1]).abs())
                        .sum::<i64>()
                    - lambda[n - 1];
                debug_assert_eq!(
                    p_top,
                    2 * (base + dist.len() as i64 - 1) - total_l - total_nu
                );
                for s in (0..dist.len()).rev() {
                    let p = 2 * (base + s as i64) - total_l - total_nu;
                    if p < 0 {
                        break;
                    }
                    let m = dist[s] - dist.get(s + 1).copied().unwrap_or(0);
                    debug_assert!(m >= 0);
                    if m > 0 {
                        out.push((KMLabel::Sostar { nu: nu.clone(), p }, m));
                    }
                }
            }
        }
        _ => unreachable!("validate() checked the family"),
    }
    Ok(out)
}

fn soe_window_vectors(n: usize, lambda: &[i64]) -> Vec<Vec<i64>> {
    let cands = if n == 2 {
        crate::weight::zpp_vectors(1, lambda[0])
    } else {
        crate::weight::zpp_vectors(n - 1, lambda[0])
    };
    cands
        .into_iter()
        .filter(|mu| soe_window(lambda, mu))
        .collect()
}

fn sostar_window_vectors(n: usize, lambda: &[i64]) -> Vec<Vec<i64>> {
    // nu_j in [lambda_{j+2}, lambda_j], kept dominant
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n - 2);
    fn rec(lambda: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>, n: usize) {
        let j = cur.len();
        if j == n - 2 {
            out.push(cur.clone());
            return;
        }
        let hi = lambda[j].min(cur.last().copied().unwrap_or(i64::MAX));
        let lo = lambda[j + 2];
        let mut x = hi;
        while x >= lo {
            cur.push(x);
            rec(lambda, cur, out, n);
            cur.pop();
            x -= 1;
        }
    }
    rec(lambda, &mut cur, &mut out, n);
    out
}

/// The closed-form branching law, as a canonical virtual character.
/// All coefficients are `>= 1` and the dimension is preserved; the `su`
/// branching is multiplicity-free.
pub fn branch(family: &GroupFamily, w: &KWeight) -> Result<VirtualChar> {
    let mut vc = VirtualChar::zero(*family);
    for (label, m) in branch_raw(family, w)? {
        vc.add_term(label, m);
    }
    Ok(vc)
}

/// Z-linear extension of [`branch`] to virtual `K`-characters.
pub fn branch_virtual(kvc: &KVirtualChar) -> Result<VirtualChar> {
    let family = *kvc.family();
    let mut out = VirtualChar::zero(family);
    for (w, c) in kvc.terms() {
        let b = branch(&family, w)?;
        out = &out + &b.scaled(c);
    }
    Ok(out)
}

/// Total dimension of a branching image, for conservation checks.
pub fn km_total_dimension(family: &GroupFamily, vc: &VirtualChar) -> BigInt {
    let mut total = BigInt::from(0);
    for (l, c) in vc.terms() {
        total += c * BigInt::from(crate::charspace::km_dimension(family, l));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charspace::{k_dimension, oracle_restrict};

    #[test]
    fn su_m1_scalar_case() {
        // pi_{(c,...,c)} restricts to the single label tau_{(c,...,c),c}
        let fam = GroupFamily::su(3, 1).unwrap();
        let w = KWeight::Su {
            lambda1: vec![2, 2, 2],
            lambda2: vec![0],
        };
        let vc = branch(&fam, &w).unwrap();
        assert_eq!(vc.len(), 1);
        assert_eq!(
            vc.coef(&KMLabel::Su {
                mu1: vec![2, 2],
                mu2: vec![],
                p: 2
            }),
            1.into()
        );
    }

    #[test]
    fn su22_example() {
        let fam = GroupFamily::su(2, 2).unwrap();
        let w = KWeight::Su {
            lambda1: vec![1, 0],
            lambda2: vec![0, 0],
        };
        let vc = branch(&fam, &w).unwrap();
        assert_eq!(
            vc.coef(&KMLabel::Su {
                mu1: vec![1],
                mu2: vec![0],
                p: 0
            }),
            1.into()
        );
        assert_eq!(
            vc.coef(&KMLabel::Su {
                mu1: vec![0],
                mu2: vec![0],
                p: 1
            }),
            1.into()
        );
        assert_eq!(vc.len(), 2);
    }

    #[test]
    fn soe_vector_rep() {
        let fam = GroupFamily::soe(2).unwrap();
        for p in [-2, 0, 3] {
            let w = KWeight::Soe {
                p,
                lambda: vec![1, 0],
            };
            let vc = branch(&fam, &w).unwrap();
            for (q, mu) in [(p - 1, 0), (p + 1, 0), (p, 1), (p, -1)] {
                assert_eq!(vc.coef(&KMLabel::Soe { q, mu: vec![mu] }), 1.into());
            }
            assert_eq!(vc.len(), 4);
        }
    }

    #[test]
    fn sostar_lower_strings_are_present() {
        // the nu = 0 component of the U(3) adjoint is V_2 + V_0 as an
        // SU(2)-representation; the lower string must not be dropped
        let fam = GroupFamily::sostar(3).unwrap();
        let w = KWeight::Sostar {
            lambda: vec![1, 0, -1],
        };
        let vc = branch(&fam, &w).unwrap();
        assert_eq!(vc.coef(&KMLabel::Sostar { nu: vec![0], p: 2 }), 1.into());
        assert_eq!(vc.coef(&KMLabel::Sostar { nu: vec![0], p: 0 }), 1.into());
        assert_eq!(vc.coef(&KMLabel::Sostar { nu: vec![1], p: 1 }), 1.into());
        assert_eq!(vc.coef(&KMLabel::Sostar { nu: vec![-1], p: 1 }), 1.into());
        assert_eq!(km_total_dimension(&fam, &vc), BigInt::from(8));
    }

    #[test]
    fn sostar_standard_rep() {
        for n in [3usize, 4, 6] {
            let fam = GroupFamily::sostar(n).unwrap();
            let mut lambda = vec![0i64; n];
            lambda[0] = 1;
            let w = KWeight::Sostar { lambda };
            let vc = branch(&fam, &w).unwrap();
            let t1 = KMLabel::Sostar {
                nu: vec![0; n - 2],
                p: 1,
            };
            let mut nu = vec![0; n - 2];
            nu[0] = 1;
            let t2 = KMLabel::Sostar { nu, p: 0 };
            assert_eq!(vc.coef(&t1), 1.into());
            assert_eq!(vc.coef(&t2), 1.into());
            assert_eq!(vc.len(), 2);
            assert_eq!(km_total_dimension(&fam, &vc), BigInt::from(n as i64),);
        }
    }

    #[test]
    fn soe_branch_terms() {
        // lambda' = (1,0,...,0), mu = 0: l_1 = 1, others 0, m(0)=m(1)=1
        let fam = GroupFamily::soe(3).unwrap();
        let w = KWeight::Soe {
            p: 0,
            lambda: vec![1, 0, 0],
        };
        let t = branch_terms_soe(&fam, &w, &[0, 0]).unwrap();
        assert_eq!(t.ell, vec![1, 0]);
        assert_eq!(t.ell_n, 0);
        assert_eq!(t.multiplicities, vec![1, 1]);

        // lambda' = 0, mu = 0: everything vanishes
        let w = KWeight::Soe {
            p: 0,
            lambda: vec![0, 0, 0],
        };
        let t = branch_terms_soe(&fam, &w, &[0, 0]).unwrap();
        assert_eq!(t.ell, vec![0, 0]);
        assert_eq!(t.multiplicities, vec![1]);

        // outside the window
        assert!(matches!(
            branch_terms_soe(&fam, &w, &[1, 0]),
            Err(Error::NotInSupport(_))
        ));
    }

    #[test]
    fn small_grid_matches_oracle() {
        // spot check against the weight oracle; full grids run in the
        // acceptance suite
        let fam = GroupFamily::su(2, 2).unwrap();
        for (l1, l2) in [
            (vec![1, 0], vec![0, -1]),
            (vec![2, 0], vec![1, 0]),
            (vec![1, 1], vec![1, -1]),
        ] {
            let w = KWeight::Su {
                lambda1: l1,
                lambda2: l2,
            };
            assert_eq!(
                branch(&fam, &w).unwrap(),
                oracle_restrict(&fam, &w).unwrap()
            );
        }

        let fam = GroupFamily::soe(3).unwrap();
        for (p, lam) in [(0, vec![2, 1, -1]), (2, vec![1, 1, 1]), (-1, vec![2, 0, 0])] {
            let w = KWeight::Soe { p, lambda: lam };
            let b = branch(&fam, &w).unwrap();
            assert_eq!(b, oracle_restrict(&fam, &w).unwrap());
            assert_eq!(
                km_total_dimension(&fam, &b),
                BigInt::from(k_dimension(&fam, &w))
            );
        }

        let fam = GroupFamily::sostar(4).unwrap();
        for lam in [vec![2, 1, 0, -1], vec![1, 1, 0, 0], vec![3, 0, 0, -2]] {
            let w = KWeight::Sostar { lambda: lam };
            assert_eq!(
                branch(&fam, &w).unwrap(),
                oracle_restrict(&fam, &w).unwrap()
            );
        }
    }

    #[test]
    fn multiplicity_generating_function() {
        // m(k) equals the coefficient of X^{2k-l} in
        // prod (X^{l_i+1} - X^{-l_i-1}) / (X - X^{-1})
        let fam = GroupFamily::soe(3).unwrap();
        let w = KWeight::Soe {
            p: 0,
            lambda: vec![3, 2, -1],
        };
        fn divide_by_x_minus_xinv(num: &mut std::collections::BTreeMap<i64, i64>) {
            let mut quot = std::collections::BTreeMap::new();
            while let Some((&e, &c)) = num.iter().next_back() {
                if c == 0 {
                    num.remove(&e);
                    continue;
                }
                assert!(e > -100, "division by (X - X^-1) is not exact");
                *quot.entry(e - 1).or_insert(0) += c;
                num.insert(e, 0);
                *num.entry(e - 2).or_insert(0) += c;
            }
            *num = quot;
        }
        for mu in super::soe_window_vectors(3, &[3, 2, -1]) {
            let t = branch_terms_soe(&fam, &w, &mu).unwrap();
            // numerator product as exponent -> coefficient map
            let mut num = std::collections::BTreeMap::from([(0i64, 1i64)]);
            for &li in &t.ell {
                let mut next = std::collections::BTreeMap::new();
                for (&e, &c) in &num {
                    *next.entry(e + li + 1).or_insert(0) += c;
                    *next.entry(e - li - 1).or_insert(0) -= c;
                }
                num = next;
            }
            // one division per factor in the product
            for _ in 0..t.ell.len() {
                divide_by_x_minus_xinv(&mut num);
            }
            for (k, &mk) in t.multiplicities.iter().enumerate() {
                let e = 2 * k as i64 - t.ell_total;
                assert_eq!(num.get(&e).copied().unwrap_or(0), mk, "mu {mu:?} k {k}");
            }
            let support: i64 = num.values().sum();
            assert_eq!(support, t.multiplicities.iter().sum::<i64>());
        }
    }
}
