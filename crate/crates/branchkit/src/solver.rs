//! Sparse exact solver for `A x = b` over the integers: a column-echelon
//! Hermite-normal-form pass with rows processed in a fixed order and
//! Euclidean reduction among columns sharing a pivot row. The echelon is
//! target-independent, so one factorization serves many right-hand sides.
//!
//! Arithmetic runs in checked `i128` first and falls back to `BigInt`
//! on overflow, so results are always exact and deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub(crate) trait SolveInt: Clone + Ord + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn checked_add(&self, o: &Self) -> Option<Self>;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    /// Euclidean quotient: `self = q * d + r` with `0 <= r < |d|`.
    fn div_euclid_by(&self, d: &Self) -> Self;
    fn is_negative(&self) -> bool;
}

impl SolveInt for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        i128::try_from(v).ok()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        i128::checked_add(*self, *o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        i128::checked_mul(*self, *o)
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn div_euclid_by(&self, d: &Self) -> Self {
        i128::div_euclid(*self, *d)
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
}

impl SolveInt for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_euclid_by(&self, d: &Self) -> Self {
        let m = d.abs();
        let r = self.mod_floor(&m);
        (self - r) / d
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

#[derive(Debug)]
struct Overflow;

/// Sparse vector sorted by index.
type SVec<T> = Vec<(u32, T)>;

/// `a - q * b`, merging sorted sparse vectors.
fn axpy<T: SolveInt>(a: &SVec<T>, q: &T, b: &SVec<T>) -> Result<SVec<T>, Overflow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some((ra, va)), Some((rb, vb))) => {
                if ra == rb {
                    let t = q.checked_mul(vb).ok_or(Overflow)?;
                    let nt = t.checked_neg().ok_or(Overflow)?;
                    let v = va.checked_add(&nt).ok_or(Overflow)?;
                    i += 1;
                    j += 1;
                    (*ra, v)
                } else if ra < rb {
                    i += 1;
                    (*ra, va.clone())
                } else {
                    let t = q.checked_mul(vb).ok_or(Overflow)?;
                    let v = t.checked_neg().ok_or(Overflow)?;
                    j += 1;
                    (*rb, v)
                }
            }
            (Some((ra, va)), None) => {
                i += 1;
                (*ra, va.clone())
            }
            (None, Some((rb, vb))) => {
                let t = q.checked_mul(vb).ok_or(Overflow)?;
                let v = t.checked_neg().ok_or(Overflow)?;
                j += 1;
                (*rb, v)
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    Ok(out)
}

fn negate<T: SolveInt>(v: &mut SVec<T>) -> Result<(), Overflow> {
    for (_, x) in v.iter_mut() {
        *x = x.checked_neg().ok_or(Overflow)?;
    }
    Ok(())
}

struct Col<T: SolveInt> {
    entries: SVec<T>,
    /// combination of original generator columns this column represents
    combo: SVec<T>,
}

struct EchelonT<T: SolveInt> {
    nrows: usize,
    cols: Vec<Col<T>>,
    /// per row, the index into `cols` of its pivot column
    pivots: Vec<Option<usize>>,
}

impl<T: SolveInt> EchelonT<T> {
    fn build(nrows: usize, columns: &[SVec<i64>]) -> Result<Self, Overflow> {
        let mut cols: Vec<Col<T>> = Vec::with_capacity(columns.len());
        for (ci, c) in columns.iter().enumerate() {
            let entries: SVec<T> = c
                .iter()
                .filter(|(_, v)| *v != 0)
                .map(|(r, v)| {
                    T::from_big(&BigInt::from(*v))
                        .ok_or(Overflow)
                        .map(|t| (*r, t))
                })
                .collect::<Result<_, _>>()?;
            let one = T::from_big(&BigInt::from(1)).ok_or(Overflow)?;
            cols.push(Col {
                entries,
                combo: vec![(ci as u32, one)],
            });
        }

        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); nrows];
        for (ci, c) in cols.iter().enumerate() {
            if let Some((r, _)) = c.entries.first() {
                buckets[*r as usize].push(ci);
            }
        }
        let mut pivots: Vec<Option<usize>> = vec![None; nrows];

        for r in 0..nrows {
            let mut pivot: Option<usize> = None;
            let mut queue: std::collections::VecDeque<usize> = buckets[r].drain(..).collect();
            while let Some(ci) = queue.pop_front() {
                let top = match cols[ci].entries.first() {
                    Some((t, _)) => *t as usize,
                    None => continue,
                };
                if top != r {
                    debug_assert!(top > r);
                    buckets[top].push(ci);
                    continue;
                }
                match pivot {
                    None => pivot = Some(ci),
                    Some(p0) => {
                        // Euclidean reduction of column ci against the pivot
                        let (mut p, mut c) = (p0, ci);
                        loop {
                            let a = cols[p].entries.first().unwrap().1.clone();
                            let bq = cols[c].entries.first().unwrap().1.clone();
                            let q = bq.div_euclid_by(&a);
                            if !q.is_zero() {
                                let e = axpy(&cols[c].entries, &q, &cols[p].entries)?;
                                let k = axpy(&cols[c].combo, &q, &cols[p].combo)?;
                                cols[c].entries = e;
                                cols[c].combo = k;
                            }
                            match cols[c].entries.first() {
                                Some((t, _)) if *t as usize == r => {
                                    // remainder nonzero at r: swap roles
                                    std::mem::swap(&mut p, &mut c);
                                }
                                Some((t, _)) => {
                                    buckets[*t as usize].push(c);
                                    break;
                                }
                                None => break,
                            }
                        }
                        pivot = Some(p);
                    }
                }
            }
            if let Some(p) = pivot {
                if cols[p].entries.first().unwrap().1.is_negative() {
                    negate(&mut cols[p].entries)?;
                    negate(&mut cols[p].combo)?;
                }
                pivots[r] = Some(p);
            }
        }
        Ok(EchelonT {
            nrows,
            cols,
            pivots,
        })
    }

    /// Forward substitution of a target through the pivots. `Ok(None)`
    /// means the target is not in the column lattice.
    fn solve(&self, target: &SVec<BigInt>) -> Result<Option<Vec<(usize, BigInt)>>, Overflow> {
        let mut b: SVec<T> = target
            .iter()
            .filter(|(_, v)| !Zero::is_zero(v))
            .map(|(r, v)| T::from_big(v).ok_or(Overflow).map(|t| (*r, t)))
            .collect::<Result<_, _>>()?;
        let mut combo: SVec<T> = Vec::new();
        for r in 0..self.nrows {
            let Some(pos) = b.iter().position(|(rr, _)| *rr as usize == r) else {
                continue;
            };
            let bv = b[pos].1.clone();
            let Some(p) = self.pivots[r] else {
                return Ok(None);
            };
            let a = self.cols[p].entries.first().unwrap().1.clone();
            let q = bv.div_euclid_by(&a);
            let qa = q.checked_mul(&a).ok_or(Overflow)?;
            let rem = bv
                .checked_add(&qa.checked_neg().ok_or(Overflow)?)
                .ok_or(Overflow)?;
            if !rem.is_zero() {
                return Ok(None);
            }
            b = axpy(&b, &q, &self.cols[p].entries)?;
            combo = axpy(
                &combo,
                &q.checked_neg().ok_or(Overflow)?,
                &self.cols[p].combo,
            )?;
        }
        if !b.is_empty() {
            return Ok(None);
        }
        Ok(Some(
            combo
                .into_iter()
                .map(|(g, v)| (g as usize, v.to_big()))
                .collect(),
        ))
    }
}

/// A reusable exact factorization of a sparse integer column system.
pub(crate) enum Echelon {
    Small(EchelonSmall),
    Big(EchelonBig),
}

pub(crate) struct EchelonSmall(EchelonT<i128>);
pub(crate) struct EchelonBig(EchelonT<BigInt>);

impl Echelon {
    /// Factorizes the columns; `nrows` indexes rows `0..nrows` in the
    /// fixed processing order (callers sort rows descending by label).
    pub(crate) fn build(nrows: usize, columns: &[SVec<i64>]) -> Echelon {
        match EchelonT::<i128>::build(nrows, columns) {
            Ok(e) => Echelon::Small(EchelonSmall(e)),
            Err(Overflow) => Echelon::Big(EchelonBig(
                EchelonT::<BigInt>::build(nrows, columns)
                    .unwrap_or_else(|_| unreachable!("BigInt arithmetic cannot overflow")),
            )),
        }
    }

    /// Decides whether `target` lies in the column lattice; returns the
    /// integer combination of the original columns when it does.
    pub(crate) fn solve(
        &self,
        nrows: usize,
        columns: &[SVec<i64>],
        target: &SVec<BigInt>,
    ) -> Option<Vec<(usize, BigInt)>> {
        match self {
            Echelon::Big(e) => {
                e.0.solve(target)
                    .unwrap_or_else(|_| unreachable!("BigInt arithmetic cannot overflow"))
            }
            Echelon::Small(e) => match e.0.solve(target) {
                Ok(res) => res,
                Err(Overflow) => {
                    // rare: the sweep outgrew i128; redo everything big
                    let big = EchelonT::<BigInt>::build(nrows, columns)
                        .unwrap_or_else(|_| unreachable!());
                    big.solve(target).unwrap_or_else(|_| unreachable!())
                }
            },
        }
    }
}

/// One-shot convenience: factorize and solve a single system.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn solve(
    nrows: usize,
    columns: &[SVec<i64>],
    target: &SVec<BigInt>,
) -> Option<Vec<(usize, BigInt)>> {
    Echelon::build(nrows, columns).solve(nrows, columns, target)
}
