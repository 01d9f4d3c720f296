//! Defining sequences `(a_i)` of the a-adic groups.
//!
//! A [`Basis`] describes the radices `a(i) >= 2` for every index `i >= offset`.
//! With `offset == 0` it describes the a-adic integers; a negative offset
//! describes the window `Λ_k` (`k = offset`) of the a-adic numbers, i.e. the
//! sequences whose digits vanish below position `k`.
//!
//! Textual form (CLI and config files):
//!
//! ```text
//! const:<c>            a(i) = c for every i
//! cycle:<c0>,<c1>,...  a(i) = c[i mod m], indexed by the absolute position i
//! list:<c0>,<c1>,...   a(offset + j) = c[j]; indices past the list are unavailable
//! ```
//!
//! each optionally followed by `@offset:<k>` with `k <= 0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Constant(u64),
    Cycle(Vec<u64>),
    List(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Basis {
    kind: BasisKind,
    offset: i64,
}

impl Basis {
    pub fn new(kind: BasisKind, offset: i64) -> Result<Self> {
        if offset > 0 {
            return Err(Error::InvalidBasis(format!("offset must be <= 0, got {offset}")));
        }
        let entries: &[u64] = match &kind {
            BasisKind::Constant(c) => std::slice::from_ref(c),
            BasisKind::Cycle(c) | BasisKind::List(c) => c,
        };
        if entries.is_empty() {
            return Err(Error::InvalidBasis("basis needs at least one entry".into()));
        }
        if entries.iter().any(|&a| a < 2) {
            return Err(Error::InvalidBasis("basis entries must be ≥ 2".into()));
        }
        Ok(Basis { kind, offset })
    }

    pub fn constant(c: u64) -> Result<Self> {
        Self::new(BasisKind::Constant(c), 0)
    }

    pub fn cycle(c: &[u64]) -> Result<Self> {
        Self::new(BasisKind::Cycle(c.to_vec()), 0)
    }

    pub fn list(c: &[u64]) -> Result<Self> {
        Self::new(BasisKind::List(c.to_vec()), 0)
    }

    pub fn kind(&self) -> &BasisKind {
        &self.kind
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Largest index with a defined radix, if the sequence is finite.
    pub fn max_index(&self) -> Option<i64> {
        match &self.kind {
            BasisKind::List(c) => Some(self.offset + c.len() as i64 - 1),
            _ => None,
        }
    }

    /// The radix `a(i)`.
    pub fn radix(&self, i: i64) -> Result<u64> {
        if i < self.offset || self.max_index().is_some_and(|m| i > m) {
            return Err(Error::PrecisionOutOfRange { r: i, basis: self.to_string() });
        }
        Ok(match &self.kind {
            BasisKind::Constant(c) => *c,
            BasisKind::Cycle(c) => c[i.rem_euclid(c.len() as i64) as usize],
            BasisKind::List(c) => c[(i - self.offset) as usize],
        })
    }

    /// Checks that `r` is a usable precision: `offset - 1 <= r <= max_index`.
    /// Precision `offset - 1` is the empty product (modulus 1).
    pub fn check_precision(&self, r: i64) -> Result<()> {
        if r < self.offset - 1 || self.max_index().is_some_and(|m| r > m) {
            return Err(Error::PrecisionOutOfRange { r, basis: self.to_string() });
        }
        Ok(())
    }

    /// Radices `a(offset), ..., a(r)`, least significant first.
    pub fn radices(&self, r: i64) -> Result<Vec<u64>> {
        self.check_precision(r)?;
        (self.offset..=r).map(|i| self.radix(i)).collect()
    }

    /// `A(r) = a(offset) ⋯ a(r)`.
    pub fn modulus(&self, r: i64) -> Result<BigUint> {
        Ok(self
            .radices(r)?
            .into_iter()
            .fold(BigUint::one(), |acc, a| acc * a))
    }

    /// `A(r)` as a machine word, failing if it exceeds `limit`.
    pub fn modulus_u64(&self, r: i64, limit: u64) -> Result<u64> {
        let m = self.modulus(r)?;
        match m.to_u64() {
            Some(v) if v <= limit => Ok(v),
            _ => Err(Error::budget("modulus A(r)", m, limit)),
        }
    }

    /// Smallest `r` with `A(r) == modulus`, if any.
    pub fn level_of_modulus(&self, modulus: &BigUint) -> Option<i64> {
        let mut acc = BigUint::one();
        let mut r = self.offset - 1;
        while &acc < modulus {
            r += 1;
            acc *= self.radix(r).ok()?;
        }
        (&acc == modulus).then_some(r)
    }

    /// The same sequence reindexed so that the window starts at 0: `b(i) = a(i + offset)`.
    pub fn rebased(&self) -> Basis {
        let k = self.offset;
        let kind = match &self.kind {
            BasisKind::Constant(c) => BasisKind::Constant(*c),
            BasisKind::Cycle(c) => {
                let m = c.len() as i64;
                BasisKind::Cycle((0..m).map(|j| c[(j + k).rem_euclid(m) as usize]).collect())
            }
            BasisKind::List(c) => BasisKind::List(c.clone()),
        };
        Basis { kind, offset: 0 }
    }

    /// Inverse of [`Basis::rebased`]: shifts an offset-0 basis so that it starts at `k`.
    pub fn windowed(&self, k: i64) -> Result<Basis> {
        if self.offset != 0 {
            return Err(Error::InvalidBasis("windowed() expects an offset-0 basis".into()));
        }
        let kind = match &self.kind {
            BasisKind::Constant(c) => BasisKind::Constant(*c),
            BasisKind::Cycle(c) => {
                let m = c.len() as i64;
                BasisKind::Cycle((0..m).map(|j| c[(j - k).rem_euclid(m) as usize]).collect())
            }
            BasisKind::List(c) => BasisKind::List(c.clone()),
        };
        Basis::new(kind, k)
    }

    /// The basis of `ℤ_a` inside this window: same radices, restricted to `i >= 0`.
    pub fn integer_part(&self) -> Result<Basis> {
        let kind = match &self.kind {
            BasisKind::List(c) => {
                let skip = (-self.offset) as usize;
                if skip >= c.len() {
                    return Err(Error::InvalidBasis(
                        "list does not reach index 0".into(),
                    ));
                }
                BasisKind::List(c[skip..].to_vec())
            }
            other => other.clone(),
        };
        Basis::new(kind, 0)
    }

    /// `a(offset) ⋯ a(-1)`: the index of `ℤ_a` in the window. 1 when `offset == 0`.
    pub fn window_index(&self) -> Result<BigUint> {
        (self.offset..0).try_fold(BigUint::one(), |acc, i| self.radix(i).map(|a| acc * a))
    }
}

fn join(c: &[u64]) -> String {
    c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            BasisKind::Constant(c) => write!(f, "const:{c}")?,
            BasisKind::Cycle(c) => write!(f, "cycle:{}", join(c))?,
            BasisKind::List(c) => write!(f, "list:{}", join(c))?,
        }
        if self.offset != 0 {
            write!(f, "@offset:{}", self.offset)?;
        }
        Ok(())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, offset) = match s.split_once('@') {
            Some((body, rest)) => {
                let k = rest
                    .trim()
                    .strip_prefix("offset:")
                    .ok_or_else(|| Error::InvalidBasis(format!("expected @offset:<k> in {s:?}")))?;
                let k: i64 = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidBasis(format!("bad offset in {s:?}")))?;
                (body.trim(), k)
            }
            None => (s, 0),
        };
        let (tag, values) = body
            .split_once(':')
            .ok_or_else(|| Error::InvalidBasis(format!("expected <kind>:<values> in {s:?}")))?;
        let values: Vec<u64> = values
            .split(',')
            .map(|v| {
                let v = v.trim();
                v.parse::<u64>()
                    .map_err(|_| Error::InvalidBasis(format!("bad basis entry {v:?}")))
            })
            .collect::<Result<_>>()?;
        let kind = match tag.trim() {
            "const" => {
                if values.len() != 1 {
                    return Err(Error::InvalidBasis("const takes exactly one entry".into()));
                }
                BasisKind::Constant(values[0])
            }
            "cycle" => BasisKind::Cycle(values),
            "list" => BasisKind::List(values),
            other => return Err(Error::InvalidBasis(format!("unknown basis kind {other:?}"))),
        };
        Basis::new(kind, offset)
    }
}
