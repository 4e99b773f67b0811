use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the three classical Hermitian families handled by this crate.
///
/// The rank parameters are validated on construction:
/// `Su` needs `m, n >= 1` and `m + n >= 3` (the degenerate `SU(1,1)` is
/// rejected), `Soe` needs `n >= 2` and `Sostar` needs `n >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupFamily {
    /// `SU(m,n)`, maximal compact `S(U(m) x U(n))`.
    Su { m: usize, n: usize },
    /// `SO_0(2,2n)`, maximal compact `SO(2) x SO(2n)`.
    Soe { n: usize },
    /// `SO*(2n)`, maximal compact `U(n)`.
    Sostar { n: usize },
}

impl GroupFamily {
    pub fn su(m: usize, n: usize) -> Result<Self> {
        if m < 1 || n < 1 || m + n < 3 {
            return Err(Error::Validation(format!(
                "su({m},{n}): need m,n >= 1 and m+n >= 3"
            )));
        }
        Ok(GroupFamily::Su { m, n })
    }

    pub fn soe(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation(format!("soe({n}): need n >= 2")));
        }
        Ok(GroupFamily::Soe { n })
    }

    pub fn sostar(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Validation(format!("sostar({n}): need n >= 3")));
        }
        Ok(GroupFamily::Sostar { n })
    }

    /// Parses family spec strings: `su:3,2`, `soe:2`, `sostar:5`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, params) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("family `{s}`: expected `<kind>:<params>`")))?;
        let num = |t: &str| -> Result<usize> {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("family `{s}`: bad rank token `{t}`")))
        };
        match kind {
            "su" => {
                let (m, n) = params
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("family `{s}`: expected `su:<m>,<n>`")))?;
                GroupFamily::su(num(m)?, num(n)?)
            }
            "soe" => GroupFamily::soe(num(params)?),
            "sostar" => GroupFamily::sostar(num(params)?),
            _ => Err(Error::Parse(format!("family `{s}`: unknown kind `{kind}`"))),
        }
    }

    /// The cardinality of the coset set `W_kappa`: `mn`, `2n` or `n(n-1)/2`.
    pub fn wkappa_size(&self) -> usize {
        match *self {
            GroupFamily::Su { m, n } => m * n,
            GroupFamily::Soe { n } => 2 * n,
            GroupFamily::Sostar { n } => n * (n - 1) / 2,
        }
    }

    /// True when the restriction map is surjective for rank-one reasons
    /// (`SU(m,1)` or `SU(1,n)`).
    pub fn is_rank_one_su(&self) -> bool {
        matches!(*self, GroupFamily::Su { m, n } if m == 1 || n == 1)
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupFamily::Su { m, n } => write!(f, "su:{m},{n}"),
            GroupFamily::Soe { n } => write!(f, "soe:{n}"),
            GroupFamily::Sostar { n } => write!(f, "sostar:{n}"),
        }
    }
}

impl Serialize for GroupFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GroupFamily::parse(&s).map_err(serde::de::Error::custom)
    }
}
