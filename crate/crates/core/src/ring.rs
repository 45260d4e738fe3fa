//! Finitely supported elements of the rational group ring of `Z x Z`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::coefficient::Coefficient;
use crate::element::GroupElement;
use crate::error::{Error, Result};

/// A sparse group-ring element `sum alpha_g g`.
///
/// Terms are kept in a `BTreeMap`, so iteration (and serialization) is always
/// lexicographic in `(i, j)`. Zero coefficients are never stored, which makes
/// the derived equality coincide with equality in the group ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingElement {
    terms: BTreeMap<GroupElement, Coefficient>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    /// The unit `1 = g(0,0)`.
    pub fn one() -> Self {
        RingElement::monomial(GroupElement::IDENTITY, Coefficient::one())
    }

    pub fn monomial(g: GroupElement, c: Coefficient) -> Self {
        let mut x = RingElement::zero();
        x.add_term(g, c);
        x
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (GroupElement, Coefficient)>,
    {
        let mut x = RingElement::zero();
        for (g, c) in terms {
            x.add_term(g, c);
        }
        x
    }

    /// The simple quantity of a finite set: every member with coefficient 1.
    pub fn simple_quantity<'a, I>(set: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        let terms: BTreeMap<_, _> = set.into_iter().map(|&g| (g, Coefficient::one())).collect();
        if terms.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(RingElement { terms })
    }

    /// Adds `c * g` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, g: GroupElement, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `g`, zero if absent.
    pub fn coeff(&self, g: GroupElement) -> Coefficient {
        self.terms
            .get(&g)
            .cloned()
            .unwrap_or_else(Coefficient::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Coefficient)> {
        self.terms.iter()
    }

    pub fn support(&self) -> BTreeSet<GroupElement> {
        self.terms.keys().copied().collect()
    }

    /// The distinct nonzero coefficients, ascending.
    pub fn coefficient_values(&self) -> BTreeSet<Coefficient> {
        self.terms.values().cloned().collect()
    }

    pub fn scale(&self, c: &Coefficient) -> RingElement {
        if c.is_zero() {
            return RingElement::zero();
        }
        RingElement {
            terms: self.terms.iter().map(|(g, a)| (*g, a * c)).collect(),
        }
    }

    /// Group-ring product: the coefficient of `g` is the sum of
    /// `x(g1) * y(g2)` over all `g1 + g2 = g`.
    pub fn convolve(&self, other: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (g1, c1) in &self.terms {
            for (g2, c2) in &other.terms {
                out.add_term(*g1 + *g2, c1 * c2);
            }
        }
        out
    }

    /// Pointwise product `x o y`.
    pub fn hadamard(&self, other: &RingElement) -> RingElement {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let terms = small
            .terms
            .iter()
            .filter_map(|(g, c)| large.terms.get(g).map(|d| (*g, c * d)))
            .collect();
        RingElement { terms }
    }

    /// The involution `g -> g^{-1}` extended linearly.
    pub fn star(&self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(g, c)| (-*g, c.clone())).collect(),
        }
    }

    /// The Frobenius map `g -> g^m` extended linearly. For `m = 0` every term
    /// collapses onto the identity.
    pub fn frobenius(&self, m: i64) -> RingElement {
        if m == 0 {
            return RingElement::from_terms(
                self.terms
                    .values()
                    .map(|c| (GroupElement::IDENTITY, c.clone())),
            );
        }
        RingElement {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (m * *g, c.clone()))
                .collect(),
        }
    }

    /// `{g : x(g) = c}` for nonzero `c`.
    pub fn coeff_slice(&self, c: &Coefficient) -> Result<BTreeSet<GroupElement>> {
        if c.is_zero() {
            return Err(Error::ZeroSlice);
        }
        Ok(self
            .terms
            .iter()
            .filter(|(_, a)| *a == c)
            .map(|(g, _)| *g)
            .collect())
    }

    /// Applies a coefficient function given as a finite table. `f(0) = 0` is
    /// implicit; values mapped to zero are dropped.
    pub fn apply_coeff_fn(&self, f: &BTreeMap<Coefficient, Coefficient>) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for (g, c) in &self.terms {
            let v = f
                .get(c)
                .ok_or_else(|| Error::UndefinedCoefficient(c.clone()))?;
            out.add_term(*g, v.clone());
        }
        Ok(out)
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(*g, c.clone());
        }
        out
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(g, c)| (*g, -c)).collect(),
        }
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.convolve(rhs)
    }
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Shorthand for the simple quantity of a non-empty slice of points.
pub fn sq(points: &[GroupElement]) -> RingElement {
    RingElement::simple_quantity(points).expect("sq of an empty set")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::g;

    fn c(n: i64) -> Coefficient {
        Coefficient::from(n)
    }

    #[test]
    fn add_examples() {
        let x = RingElement::monomial(g(1, 0), c(1));
        let y = RingElement::monomial(g(-1, 0), c(1));
        assert_eq!(&x + &y, sq(&[g(1, 0), g(-1, 0)]));
        assert!((&x + &RingElement::monomial(g(1, 0), c(-1))).is_zero());
        let half = RingElement::monomial(g(0, 0), Coefficient::ratio(1, 2).unwrap());
        assert_eq!(&half + &half, RingElement::one());
    }

    #[test]
    fn convolve_examples() {
        let s = sq(&[g(1, 0), g(-1, 0)]);
        let expected =
            RingElement::from_terms([(g(2, 0), c(1)), (g(-2, 0), c(1)), (g(0, 0), c(2))]);
        assert_eq!(&s * &s, expected);

        // (a b + a b^-1)^2 = a^2 b^2 + a^2 b^-2 + 2 a^2
        let t = sq(&[g(1, 1), g(1, -1)]);
        let expected =
            RingElement::from_terms([(g(2, 2), c(1)), (g(2, -2), c(1)), (g(2, 0), c(2))]);
        assert_eq!(&t * &t, expected);

        // (a + a^-1)(a^2 b^-1 + b) at n = 2, j = 1
        let p = &sq(&[g(0, 1), g(2, -1)]) * &sq(&[g(1, 0), g(-1, 0)]);
        assert_eq!(p, sq(&[g(1, 1), g(-1, 1), g(3, -1), g(1, -1)]));
    }

    #[test]
    fn hadamard_examples() {
        let x = RingElement::monomial(g(1, 0), c(2));
        let y = RingElement::from_terms([(g(1, 0), c(3)), (g(0, 1), c(5))]);
        assert_eq!(x.hadamard(&y), RingElement::monomial(g(1, 0), c(6)));
        assert!(sq(&[g(0, 1)]).hadamard(&sq(&[g(1, 0)])).is_zero());
    }

    #[test]
    fn star_examples() {
        let x = RingElement::monomial(g(1, 2), c(3));
        assert_eq!(x.star(), RingElement::monomial(g(-1, -2), c(3)));
        let s = sq(&[g(1, 0), g(-1, 0)]);
        assert_eq!(s.star(), s);
        assert_eq!(sq(&[g(0, 1), g(2, -1)]).star(), sq(&[g(0, -1), g(-2, 1)]));
    }

    #[test]
    fn frobenius_examples() {
        let s = sq(&[g(1, 0), g(-1, 0)]);
        assert_eq!(s.frobenius(2), sq(&[g(2, 0), g(-2, 0)]));
        assert_eq!(
            sq(&[g(0, 1), g(2, -1)]).frobenius(3),
            sq(&[g(0, 3), g(6, -3)])
        );
        assert_eq!(s.frobenius(1), s);
        assert_eq!(s.frobenius(0), RingElement::monomial(g(0, 0), c(2)));
    }

    #[test]
    fn simple_quantity_rejects_empty() {
        assert!(matches!(
            RingElement::simple_quantity(&[]),
            Err(Error::EmptySet)
        ));
        assert_eq!(sq(&[g(0, 0)]), RingElement::one());
    }

    #[test]
    fn slices() {
        let x = RingElement::from_terms([(g(2, 0), c(1)), (g(-2, 0), c(1)), (g(0, 0), c(2))]);
        assert_eq!(x.coeff_slice(&c(2)).unwrap(), BTreeSet::from([g(0, 0)]));
        assert_eq!(
            x.coeff_slice(&c(1)).unwrap(),
            BTreeSet::from([g(-2, 0), g(2, 0)])
        );
        assert!(x.coeff_slice(&c(5)).unwrap().is_empty());
        assert!(matches!(x.coeff_slice(&c(0)), Err(Error::ZeroSlice)));
    }

    #[test]
    fn coefficient_functions() {
        let x = RingElement::from_terms([(g(2, 0), c(1)), (g(-2, 0), c(1)), (g(0, 0), c(2))]);
        let indicator = BTreeMap::from([(c(1), c(0)), (c(2), c(1))]);
        assert_eq!(x.apply_coeff_fn(&indicator).unwrap(), RingElement::one());

        let identity = BTreeMap::from([(c(1), c(1)), (c(2), c(2))]);
        assert_eq!(x.apply_coeff_fn(&identity).unwrap(), x);

        let double = BTreeMap::from([(c(1), c(2)), (c(2), c(4))]);
        assert_eq!(x.apply_coeff_fn(&double).unwrap(), x.scale(&c(2)));

        let partial = BTreeMap::from([(c(1), c(1))]);
        match x.apply_coeff_fn(&partial) {
            Err(Error::UndefinedCoefficient(v)) => assert_eq!(v, c(2)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
