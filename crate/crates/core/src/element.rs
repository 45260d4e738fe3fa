//! Elements of the free abelian group of rank two, written additively.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// The group element `a^i b^j`, stored as its exponent vector `(i, j)`.
///
/// Ordering is lexicographic on `(i, j)`; every sorted listing in the crate
/// relies on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub i: i64,
    pub j: i64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { i: 0, j: 0 };

    pub const fn new(i: i64, j: i64) -> Self {
        GroupElement { i, j }
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    pub fn inverse(self) -> Self {
        -self
    }

    /// `max(|i|, |j|)`, the radius used by all window enumerations.
    pub fn sup_norm(self) -> u64 {
        self.i.unsigned_abs().max(self.j.unsigned_abs())
    }
}

/// Shorthand for [`GroupElement::new`].
pub const fn g(i: i64, j: i64) -> GroupElement {
    GroupElement::new(i, j)
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: GroupElement) -> GroupElement {
        GroupElement::new(self.i + rhs.i, self.j + rhs.j)
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: GroupElement) -> GroupElement {
        GroupElement::new(self.i - rhs.i, self.j - rhs.j)
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement::new(-self.i, -self.j)
    }
}

/// The `m`-th power `g^m`.
impl Mul<GroupElement> for i64 {
    type Output = GroupElement;
    fn mul(self, rhs: GroupElement) -> GroupElement {
        GroupElement::new(self * rhs.i, self * rhs.j)
    }
}

impl From<(i64, i64)> for GroupElement {
    fn from((i, j): (i64, i64)) -> Self {
        GroupElement::new(i, j)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.i, self.j)
    }
}

/// Accepts `i,j` and `(i,j)`, whitespace tolerant.
impl FromStr for GroupElement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(t);
        let (i, j) = t
            .split_once(',')
            .ok_or_else(|| format!("expected `i,j`, got `{s}`"))?;
        let i = i
            .trim()
            .parse()
            .map_err(|e| format!("bad exponent `{}`: {e}", i.trim()))?;
        let j = j
            .trim()
            .parse()
            .map_err(|e| format!("bad exponent `{}`: {e}", j.trim()))?;
        Ok(GroupElement::new(i, j))
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All points with `max(|i|, |j|) <= radius`, in lexicographic order.
pub fn square_window(radius: u64) -> impl Iterator<Item = GroupElement> {
    let r = radius as i64;
    (-r..=r).flat_map(move |i| (-r..=r).map(move |j| GroupElement::new(i, j)))
}

/// The points `(i, 0)` with `|i| <= radius`.
pub fn axis_window(radius: u64) -> impl Iterator<Item = GroupElement> {
    let r = radius as i64;
    (-r..=r).map(|i| GroupElement::new(i, 0))
}
