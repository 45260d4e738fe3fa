//! Deliberately broken partitions for mutation-testing the verifier.

use crate::element::GroupElement;
use crate::error::Result;
use crate::family::{BasicSet, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// Detach `at` from its class, leaving `{at}` and the remainder.
    Split { at: GroupElement },
    /// Fuse the classes of `a` and `b`.
    Merge { a: GroupElement, b: GroupElement },
}

/// A partition wrapper that applies one [`Corruption`] to an inner partition.
#[derive(Clone, Debug)]
pub struct Corrupted<P> {
    inner: P,
    corruption: Corruption,
}

impl<P: Partition> Corrupted<P> {
    pub fn new(inner: P, corruption: Corruption) -> Self {
        Corrupted { inner, corruption }
    }

    pub fn split(inner: P, at: GroupElement) -> Self {
        Self::new(inner, Corruption::Split { at })
    }

    pub fn merge(inner: P, a: GroupElement, b: GroupElement) -> Self {
        Self::new(inner, Corruption::Merge { a, b })
    }

    pub fn corruption(&self) -> Corruption {
        self.corruption
    }

    /// Whether the corruption changes any class at all.
    pub fn is_effective(&self) -> Result<bool> {
        Ok(match self.corruption {
            Corruption::Split { at } => self.inner.class_of(at)?.len() > 1,
            Corruption::Merge { a, b } => self.inner.class_of(a)? != self.inner.class_of(b)?,
        })
    }
}

impl<P: Partition> Partition for Corrupted<P> {
    fn class_of(&self, g: GroupElement) -> Result<BasicSet> {
        let class = self.inner.class_of(g)?;
        match self.corruption {
            Corruption::Split { at } => {
                if !class.contains(at) || class.len() == 1 {
                    Ok(class)
                } else if g == at {
                    Ok(BasicSet::from_points([at]))
                } else {
                    Ok(BasicSet::from_points(
                        class.iter().copied().filter(|&h| h != at),
                    ))
                }
            }
            Corruption::Merge { a, b } => {
                let (ca, cb) = (self.inner.class_of(a)?, self.inner.class_of(b)?);
                if class == ca || class == cb {
                    Ok(BasicSet::from_points(ca.iter().chain(cb.iter()).copied()))
                } else {
                    Ok(class)
                }
            }
        }
    }

    fn is_rank_one(&self) -> bool {
        self.inner.is_rank_one()
    }

    fn label(&self) -> String {
        match self.corruption {
            Corruption::Split { at } => format!("{} (split at {at})", self.inner.label()),
            Corruption::Merge { a, b } => format!("{} (merge {a} with {b})", self.inner.label()),
        }
    }
}
