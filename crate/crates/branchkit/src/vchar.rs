//! Elements of the Grothendieck groups `K^0(K_M)` and `K^0(K)`: finite
//! integer combinations of canonical labels with exact big-integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::GroupFamily;
use crate::weight::{KMLabel, KWeight};

/// Keys of a [`Combination`]: anything with a canonical representative.
pub trait CanonicalKey: Ord + Clone {
    fn canonical(&self) -> Self;
    fn validate(&self, family: &GroupFamily) -> Result<()>;
}

impl CanonicalKey for KMLabel {
    fn canonical(&self) -> Self {
        KMLabel::canonical(self)
    }
    fn validate(&self, family: &GroupFamily) -> Result<()> {
        KMLabel::validate(self, family)
    }
}

impl CanonicalKey for KWeight {
    fn canonical(&self) -> Self {
        KWeight::canonical(self)
    }
    fn validate(&self, family: &GroupFamily) -> Result<()> {
        KWeight::validate(self, family)
    }
}

/// A finite integer combination of canonical labels. No zero coefficients
/// are stored; all keys are canonical; arithmetic is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination<L: CanonicalKey> {
    family: GroupFamily,
    terms: BTreeMap<L, BigInt>,
}

/// Element of `K^0(K_M)`, keyed by canonical [`KMLabel`]s.
pub type VirtualChar = Combination<KMLabel>;
/// Element of `K^0(K)`, keyed by canonical [`KWeight`]s.
pub type KVirtualChar = Combination<KWeight>;

impl<L: CanonicalKey> Combination<L> {
    pub fn zero(family: GroupFamily) -> Self {
        Combination {
            family,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(family: GroupFamily, label: L, coef: impl Into<BigInt>) -> Self {
        let mut c = Combination::zero(family);
        c.add_term(label, coef);
        c
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    /// Adds `coef` times the (canonicalized) label.
    pub fn add_term(&mut self, label: L, coef: impl Into<BigInt>) {
        let coef = coef.into();
        if coef.is_zero() {
            return;
        }
        let key = label.canonical();
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coef(&self, label: &L) -> BigInt {
        self.terms
            .get(&label.canonical())
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Terms in lexicographically ascending label order.
    pub fn terms(&self) -> impl Iterator<Item = (&L, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every coefficient is strictly positive.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut out = Combination::zero(self.family);
        if k.is_zero() {
            return out;
        }
        for (l, c) in &self.terms {
            out.terms.insert(l.clone(), c * k);
        }
        out
    }

    fn merge(&self, other: &Self, sign: i64) -> Self {
        assert_eq!(
            self.family, other.family,
            "combining virtual characters of different families"
        );
        let mut out = self.clone();
        for (l, c) in &other.terms {
            let entry = out.terms.entry(l.clone()).or_insert_with(BigInt::zero);
            *entry += c * sign;
            if entry.is_zero() {
                out.terms.remove(l);
            }
        }
        out
    }

    pub fn checked(self, family: &GroupFamily) -> Result<Self> {
        if self.family != *family {
            return Err(Error::WrongFamily {
                expected: family.to_string(),
                got: self.family.to_string(),
            });
        }
        for l in self.terms.keys() {
            l.validate(family)?;
        }
        Ok(self)
    }
}

impl<L: CanonicalKey> Add for &Combination<L> {
    type Output = Combination<L>;
    fn add(self, rhs: Self) -> Combination<L> {
        self.merge(rhs, 1)
    }
}

impl<L: CanonicalKey> Sub for &Combination<L> {
    type Output = Combination<L>;
    fn sub(self, rhs: Self) -> Combination<L> {
        self.merge(rhs, -1)
    }
}

impl<L: CanonicalKey> Neg for &Combination<L> {
    type Output = Combination<L>;
    fn neg(self) -> Combination<L> {
        let mut out = Combination::zero(self.family);
        for (l, c) in &self.terms {
            out.terms.insert(l.clone(), -c);
        }
        out
    }
}

impl VirtualChar {
    /// Tensors every term with the one-dimensional label `t`; the twist of
    /// a highest weight by a character is the coordinatewise sum.
    ///
    /// Fails with [`Error::UnsupportedOperand`] when `t` is not
    /// one-dimensional (use `tensor_decompose` in that case).
    pub fn twist(&self, t: &KMLabel) -> Result<VirtualChar> {
        t.validate(&self.family)?;
        if crate::charspace::km_dimension(&self.family, t) != 1 {
            return Err(Error::UnsupportedOperand(format!(
                "twist by tau = {t} which is not one-dimensional"
            )));
        }
        let tv = t.torus_coords();
        let mut out = VirtualChar::zero(self.family);
        for (l, c) in &self.terms {
            let lv = l.torus_coords();
            let sum: Vec<i64> = lv.iter().zip(&tv).map(|(a, b)| a + b).collect();
            out.add_term(KMLabel::from_torus_coords(&self.family, &sum), c.clone());
        }
        Ok(out)
    }
}

/// Tensor of a virtual character with a one-dimensional `K_M`-label.
pub fn twist_char(vc: &VirtualChar, t: &KMLabel) -> Result<VirtualChar> {
    vc.twist(t)
}

fn bigint_to_json(c: &BigInt) -> serde_json::Value {
    match i64::try_from(c) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(c.to_string()),
    }
}

fn bigint_from_json(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    if let Some(s) = v.as_str() {
        return s.parse::<BigInt>().map_err(|e| e.to_string());
    }
    Err(format!(
        "coefficient `{v}` is neither an integer nor a string"
    ))
}

impl<L: CanonicalKey + Serialize> Serialize for Combination<L> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a, L> {
            label: &'a L,
            coef: serde_json::Value,
        }
        #[derive(Serialize)]
        struct Repr<'a, L> {
            family: &'a GroupFamily,
            terms: Vec<Term<'a, L>>,
        }
        let terms = self
            .terms
            .iter()
            .map(|(label, coef)| Term {
                label,
                coef: bigint_to_json(coef),
            })
            .collect();
        Repr {
            family: &self.family,
            terms,
        }
        .serialize(s)
    }
}

impl<'de, L: CanonicalKey + Deserialize<'de>> Deserialize<'de> for Combination<L> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Term<L> {
            label: L,
            coef: serde_json::Value,
        }
        #[derive(Deserialize)]
        struct Repr<L> {
            family: GroupFamily,
            terms: Vec<Term<L>>,
        }
        let repr: Repr<L> = Repr::deserialize(d)?;
        let mut out = Combination::zero(repr.family);
        for t in repr.terms {
            t.label
                .validate(&repr.family)
                .map_err(|e| D::Error::custom(e.to_string()))?;
            out.add_term(
                t.label,
                bigint_from_json(&t.coef).map_err(D::Error::custom)?,
            );
        }
        Ok(out)
    }
}

impl<L: CanonicalKey + fmt::Display> fmt::Display for Combination<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if a != BigInt::from(1) {
                write!(f, "{a}*")?;
            }
            write!(f, "[{l}]")?;
        }
        Ok(())
    }
}
