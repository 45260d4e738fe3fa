//! Subgroups of `Z^2` in canonical Hermite form.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::element::GroupElement;

/// A subgroup of `Z^2` stored by a canonical basis.
///
/// * rank 0: no basis vectors.
/// * rank 1: one vector `(p, q)` with `p > 0`, or `p = 0` and `q > 0`.
/// * rank 2: rows `(p, q)` and `(0, r)` with `p > 0`, `r > 0`, `0 <= q < r`.
///
/// The canonical form is unique, so derived equality is subgroup equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Lattice {
    basis: Vec<GroupElement>,
}

impl Lattice {
    pub fn trivial() -> Self {
        Lattice { basis: Vec::new() }
    }

    pub fn whole() -> Self {
        Lattice {
            basis: vec![GroupElement::new(1, 0), GroupElement::new(0, 1)],
        }
    }

    /// The canonical form of the subgroup generated by `gens`.
    pub fn generated_by<'a, I>(gens: I) -> Self
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        // Row-reduce on the first coordinate: `pivot` ends up with the gcd of
        // all first coordinates, everything else lands on the second axis.
        let mut pivot = GroupElement::IDENTITY;
        let mut axis: i64 = 0;
        for &v in gens {
            let mut v = v;
            if pivot.i == 0 && v.i == 0 {
                axis = axis.gcd(&v.j);
                continue;
            }
            let e = pivot.i.extended_gcd(&v.i);
            let (x, y) = (e.x, e.y);
            let d = e.gcd;
            let new_pivot = GroupElement::new(d, x * pivot.j + y * v.j);
            // The unimodular partner of the combination kills the first entry.
            let (ap, av) = (pivot.i / d, v.i / d);
            v = GroupElement::new(0, ap * v.j - av * pivot.j);
            pivot = new_pivot;
            axis = axis.gcd(&v.j);
        }
        Self::canonical(pivot, axis)
    }

    fn canonical(pivot: GroupElement, axis: i64) -> Self {
        let axis = axis.abs();
        let mut basis = Vec::new();
        if pivot.i == 0 {
            if axis != 0 {
                basis.push(GroupElement::new(0, axis));
            }
        } else if axis == 0 {
            let p = if pivot.i < 0 { -pivot } else { pivot };
            basis.push(p);
        } else {
            let p = if pivot.i < 0 { -pivot } else { pivot };
            basis.push(GroupElement::new(p.i, p.j.rem_euclid(axis)));
            basis.push(GroupElement::new(0, axis));
        }
        Lattice { basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    /// Index in `Z^2` for rank-2 lattices, `None` otherwise (infinite index).
    pub fn index(&self) -> Option<u64> {
        match self.basis.as_slice() {
            [p, r] => Some((p.i * r.j).unsigned_abs()),
            _ => None,
        }
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        match self.basis.as_slice() {
            [] => g.is_identity(),
            [p] => {
                // g = t * p for an integer t
                if p.i != 0 {
                    g.i % p.i == 0 && (g.i / p.i) * p.j == g.j
                } else {
                    g.i == 0 && g.j % p.j == 0
                }
            }
            [p, r] => {
                if g.i % p.i != 0 {
                    return false;
                }
                let t = g.i / p.i;
                (g.j - t * p.j) % r.j == 0
            }
            _ => unreachable!("lattice rank exceeds two"),
        }
    }

    pub fn is_whole(&self) -> bool {
        self.index() == Some(1)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (k, v) in self.basis.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({v})")?;
        }
        f.write_str(">")
    }
}
