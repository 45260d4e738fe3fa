//! Candidates for the basic set containing `b = (0,1)`, assuming `<a>` is an
//! A-subgroup, so the candidate lies in `b<a> ∪ b^-1<a>`.
//!
//! Each filter is a necessary condition for `D` to be a basic set. Every
//! multiplier `s` used below is an A-set under the stated class of `a`, so
//! `sq(s) * sq(D)` lies in the ring, and so do its support and each of its
//! coefficient slices. A basic set meets an A-set in nothing or in itself.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::coefficient::Coefficient;
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::ring::RingElement;

const B: GroupElement = GroupElement::new(0, 1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AClass {
    /// `{a}` is a basic set, so every `{a^i}` is an A-set.
    Singleton,
    /// `{a, a^-1}` is a basic set, so every `{a^i, a^-i}` is an A-set.
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateConstraint {
    pub a_class: AClass,
    pub exponent_bound: u32,
    pub max_size: usize,
}

impl CandidateConstraint {
    pub const DEFAULT_MAX_SIZE: usize = 4;

    pub fn new(a_class: AClass, exponent_bound: u32, max_size: usize) -> Result<Self> {
        if exponent_bound == 0 || max_size == 0 {
            return Err(Error::InvalidArgument(
                "exponent bound and max size must be at least 1".into(),
            ));
        }
        Ok(CandidateConstraint {
            a_class,
            exponent_bound,
            max_size,
        })
    }

    /// The A-sets tried as multipliers, in increasing exponent order.
    fn multipliers(&self) -> Vec<BTreeSet<GroupElement>> {
        let top = 2 * i64::from(self.exponent_bound);
        match self.a_class {
            AClass::Symmetric => (0..=top)
                .map(|i| BTreeSet::from([GroupElement::new(i, 0), GroupElement::new(-i, 0)]))
                .collect(),
            AClass::Singleton => (0..=top)
                .flat_map(|i| [i, -i])
                .skip(1)
                .map(|i| BTreeSet::from([GroupElement::new(i, 0)]))
                .collect(),
        }
    }
}

/// The classification of a candidate by the five admissible shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "shape")]
pub enum ShapeVerdict {
    /// `{b}`
    #[serde(rename = "B_singleton")]
    Singleton,
    /// `{b, b^-1}`
    #[serde(rename = "B_pm")]
    PlusMinus,
    /// `{b a^i0, b}`, `i0 != 0`
    #[serde(rename = "B_aI0")]
    AI0 { i0: i64 },
    /// `{b^-1 a^i1, b}`, `i1 != 0`
    #[serde(rename = "B_inv_aI1")]
    InvAI1 { i1: i64 },
    /// `{b, b a^i2, b^-1, b^-1 a^-i2}`, `i2 != 0`
    #[serde(rename = "B_quad")]
    Quad { i2: i64 },
    /// Survived every filter but matches no shape.
    #[serde(rename = "unclassified")]
    Unclassified,
    #[serde(rename = "rejected")]
    Rejected,
}

impl ShapeVerdict {
    pub fn is_shape(self) -> bool {
        !matches!(self, ShapeVerdict::Unclassified | ShapeVerdict::Rejected)
    }
}

/// Matches a set against the five shapes; does not run any filter.
pub fn classify_shape(d: &BTreeSet<GroupElement>) -> ShapeVerdict {
    if !d.contains(&B) {
        return ShapeVerdict::Unclassified;
    }
    let others: Vec<GroupElement> = d.iter().copied().filter(|&g| g != B).collect();
    match others.as_slice() {
        [] => ShapeVerdict::Singleton,
        [x] if x.j == -1 && x.i == 0 => ShapeVerdict::PlusMinus,
        [x] if x.j == 1 => ShapeVerdict::AI0 { i0: x.i },
        [x] if x.j == -1 => ShapeVerdict::InvAI1 { i1: x.i },
        [_, _, _] => {
            let forward: Vec<i64> = others.iter().filter(|g| g.j == 1).map(|g| g.i).collect();
            if let [i2] = forward.as_slice() {
                let expected = BTreeSet::from([
                    B,
                    GroupElement::new(*i2, 1),
                    GroupElement::new(0, -1),
                    GroupElement::new(-i2, -1),
                ]);
                if &expected == d {
                    return ShapeVerdict::Quad { i2: *i2 };
                }
            }
            ShapeVerdict::Unclassified
        }
        _ => ShapeVerdict::Unclassified,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Filter {
    /// `D*` is a basic set too, so it equals `D` or misses it.
    N1,
    /// The support of `sq(s) * sq(D)` meets `D` and `D*` fully or not at all.
    N2,
    /// Every coefficient slice of `sq(s) * sq(D)` meets `D` and `D*` fully or
    /// not at all.
    N3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    D,
    DStar,
}

/// A recomputable reason why a candidate cannot be a basic set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub filter: Filter,
    /// The multiplying A-set; empty for N1.
    pub multiplier: BTreeSet<GroupElement>,
    /// `sq(multiplier) * sq(D)`; zero for N1.
    pub product: RingElement,
    /// The slice coefficient for N3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<Coefficient>,
    /// The A-set that cuts the target: `D*` for N1, a support or a slice otherwise.
    pub a_set: BTreeSet<GroupElement>,
    pub target: Target,
    /// `target ∩ a_set`, a proper non-empty subset of the target.
    pub overlap: BTreeSet<GroupElement>,
}

impl Rejection {
    /// Recomputes the witness from the candidate alone.
    pub fn check(&self, d: &BTreeSet<GroupElement>) -> bool {
        let d_star = star(d);
        let target = match self.target {
            Target::D => d,
            Target::DStar => &d_star,
        };
        let a_set = match self.filter {
            Filter::N1 => d_star.clone(),
            Filter::N2 | Filter::N3 => {
                let Ok(s) = RingElement::simple_quantity(&self.multiplier) else {
                    return false;
                };
                let product = s.convolve(&sq(d));
                if product != self.product {
                    return false;
                }
                match (&self.filter, &self.coefficient) {
                    (Filter::N2, None) => product.support(),
                    (Filter::N3, Some(c)) => match product.coeff_slice(c) {
                        Ok(slice) => slice,
                        Err(_) => return false,
                    },
                    _ => return false,
                }
            }
        };
        let overlap: BTreeSet<_> = target.intersection(&a_set).copied().collect();
        a_set == self.a_set
            && overlap == self.overlap
            && !overlap.is_empty()
            && overlap.len() < target.len()
    }
}

/// One enumerated candidate with its verdict and the first witness of every
/// failing filter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateResult {
    pub set: BTreeSet<GroupElement>,
    #[serde(flatten)]
    pub verdict: ShapeVerdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Rejection>,
}

impl CandidateResult {
    pub fn survived(&self) -> bool {
        self.verdict != ShapeVerdict::Rejected
    }
}

fn star(d: &BTreeSet<GroupElement>) -> BTreeSet<GroupElement> {
    d.iter().map(|&g| -g).collect()
}

fn sq(d: &BTreeSet<GroupElement>) -> RingElement {
    RingElement::simple_quantity(d).expect("candidate sets are non-empty")
}

/// The first (target, overlap) where `a_set` cuts `D` or `D*` properly.
fn cut(
    d: &BTreeSet<GroupElement>,
    d_star: &BTreeSet<GroupElement>,
    a_set: &BTreeSet<GroupElement>,
) -> Option<(Target, BTreeSet<GroupElement>)> {
    for (target, set) in [(Target::D, d), (Target::DStar, d_star)] {
        let overlap: BTreeSet<_> = set.intersection(a_set).copied().collect();
        if !overlap.is_empty() && overlap.len() < set.len() {
            return Some((target, overlap));
        }
    }
    None
}

/// Runs N1, N2 and N3 on one candidate containing `b`.
pub fn evaluate_candidate(
    d: &BTreeSet<GroupElement>,
    constraint: &CandidateConstraint,
) -> CandidateResult {
    let done = |witnesses: Vec<Rejection>| {
        let verdict = if witnesses.is_empty() {
            classify_shape(d)
        } else {
            ShapeVerdict::Rejected
        };
        CandidateResult {
            set: d.clone(),
            verdict,
            witnesses,
        }
    };
    if d.len() == 1 && d.contains(&B) {
        return done(Vec::new());
    }

    let d_star = star(d);
    let mut witnesses = Vec::new();
    if d_star != *d {
        let overlap: BTreeSet<_> = d.intersection(&d_star).copied().collect();
        if !overlap.is_empty() {
            witnesses.push(Rejection {
                filter: Filter::N1,
                multiplier: BTreeSet::new(),
                product: RingElement::zero(),
                coefficient: None,
                a_set: d_star.clone(),
                target: Target::D,
                overlap,
            });
        }
    }

    let sq_d = sq(d);
    let (mut n2, mut n3) = (None, None);
    for s in constraint.multipliers() {
        if n2.is_some() && n3.is_some() {
            break;
        }
        let product = sq(&s).convolve(&sq_d);
        if n2.is_none() {
            if let Some((target, overlap)) = cut(d, &d_star, &product.support()) {
                n2 = Some(Rejection {
                    filter: Filter::N2,
                    multiplier: s.clone(),
                    product: product.clone(),
                    coefficient: None,
                    a_set: product.support(),
                    target,
                    overlap,
                });
            }
        }
        if n3.is_none() {
            // Highest coefficients first: repeated terms are the informative cut.
            for c in product.coefficient_values().into_iter().rev() {
                let slice = product.coeff_slice(&c).expect("nonzero coefficient");
                if let Some((target, overlap)) = cut(d, &d_star, &slice) {
                    n3 = Some(Rejection {
                        filter: Filter::N3,
                        multiplier: s.clone(),
                        product: product.clone(),
                        coefficient: Some(c),
                        a_set: slice,
                        target,
                        overlap,
                    });
                    break;
                }
            }
        }
    }
    witnesses.extend(n2);
    witnesses.extend(n3);
    done(witnesses)
}

/// Every subset of `b<a> ∪ b^-1<a>` that contains `b`, has at most
/// `max_size` elements and `a`-exponents in `[-B, B]`, with verdicts.
/// Sorted by size, then by set.
pub fn enumerate_b_candidates(constraint: &CandidateConstraint) -> Vec<CandidateResult> {
    let bound = i64::from(constraint.exponent_bound);
    let pool: Vec<GroupElement> = [1, -1]
        .into_iter()
        .flat_map(|j| (-bound..=bound).map(move |i| GroupElement::new(i, j)))
        .filter(|&g| g != B)
        .collect();

    let mut sets = Vec::new();
    let mut current = vec![B];
    subsets(&pool, 0, constraint.max_size, &mut current, &mut sets);
    sets.sort_by(|x: &BTreeSet<GroupElement>, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));

    sets.par_iter()
        .map(|d| evaluate_candidate(d, constraint))
        .collect()
}

fn subsets(
    pool: &[GroupElement],
    from: usize,
    max_size: usize,
    current: &mut Vec<GroupElement>,
    out: &mut Vec<BTreeSet<GroupElement>>,
) {
    out.push(current.iter().copied().collect());
    if current.len() == max_size {
        return;
    }
    for k in from..pool.len() {
        current.push(pool[k]);
        subsets(pool, k + 1, max_size, current, out);
        current.pop();
    }
}

/// Restricts a candidate under the extra hypothesis that `{a^i0 b^j0}` is a
/// singleton basic set.
///
/// `{a^2i0 b^j0, b^j0} = {a^i0, a^-i0} {a^i0 b^j0}` is then an A-set, as is
/// the Frobenius image `D^(j0)`. Either their intersection is the singleton
/// `{b^j0}`, which leaves only `D = {b}`, or the pair lies inside `D^(j0)`
/// with `i0 != 0`, which leaves the two-element and four-element shapes.
pub fn corollary_filter(d: &BTreeSet<GroupElement>, i0: i64, j0: i64) -> Result<ShapeVerdict> {
    if j0 == 0 {
        return Err(Error::ZeroFrobeniusExponent);
    }
    let shape = classify_shape(d);
    let pair =
        RingElement::simple_quantity(&[GroupElement::new(i0, 0), GroupElement::new(-i0, 0)])?
            .convolve(&RingElement::monomial(
                GroupElement::new(i0, j0),
                Coefficient::one(),
            ))
            .support();
    let image = sq(d).frobenius(j0).support();
    let allowed = if i0 != 0 && pair.is_subset(&image) {
        matches!(shape, ShapeVerdict::AI0 { .. } | ShapeVerdict::Quad { .. })
    } else {
        shape == ShapeVerdict::Singleton
    };
    Ok(if allowed {
        shape
    } else {
        ShapeVerdict::Rejected
    })
}
