//! Exact verification of the Schur-ring axioms for a partition.
//!
//! Class membership is closed-form on the whole group, so every product
//! `sq(C) * sq(D)` is checked against complete classes: the window only
//! decides which pairs `(C, D)` are examined.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::coefficient::Coefficient;
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::family::{enumerate_window, is_basic_set, BasicSet, Family, Partition};
use crate::lattice::Lattice;
use crate::ring::RingElement;

/// A product of two classes whose support cuts a class unevenly.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error(
    "sq({left}) * sq({right}) is not a combination of classes: class {class} has \
     coefficient {expected} at ({anchor}) but {found} at ({element})"
)]
pub struct ClosureViolation {
    pub left: BasicSet,
    pub right: BasicSet,
    pub class: BasicSet,
    pub anchor: GroupElement,
    pub expected: Coefficient,
    pub element: GroupElement,
    pub found: Coefficient,
}

/// `sq(left) * sq(right) = sum_E entries[E] * sq(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureRow {
    pub left: BasicSet,
    pub right: BasicSet,
    /// Sorted by class.
    pub entries: Vec<(BasicSet, Coefficient)>,
}

impl StructureRow {
    /// Re-expands the row into a group-ring element.
    pub fn reconstruct(&self) -> RingElement {
        let mut out = RingElement::zero();
        for (class, lambda) in &self.entries {
            for &g in class.iter() {
                out.add_term(g, lambda.clone());
            }
        }
        out
    }

    /// The structure constant for the class represented by `rep`.
    pub fn lambda(&self, rep: GroupElement) -> Coefficient {
        self.entries
            .iter()
            .find(|(c, _)| c.representative() == rep)
            .map_or_else(Coefficient::zero, |(_, l)| l.clone())
    }
}

impl Serialize for StructureRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entries<'a>(&'a [(BasicSet, Coefficient)]);
        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (class, lambda) in self.0 {
                    m.serialize_entry(&class.representative(), lambda)?;
                }
                m.end()
            }
        }
        let mut m = serializer.serialize_map(Some(4))?;
        m.serialize_entry("left", &self.left)?;
        m.serialize_entry("right", &self.right)?;
        m.serialize_entry("entries", &Entries(&self.entries))?;
        m.serialize_entry(
            "classes",
            &self.entries.iter().map(|(c, _)| c).collect::<Vec<_>>(),
        )?;
        m.end()
    }
}

/// Decomposes a product into classes of `p`, failing on the first class that
/// is cut unevenly.
pub fn decompose<P: Partition + ?Sized>(
    p: &P,
    left: &BasicSet,
    right: &BasicSet,
    product: &RingElement,
) -> Result<Vec<(BasicSet, Coefficient)>> {
    let mut done: BTreeSet<GroupElement> = BTreeSet::new();
    let mut entries = BTreeMap::new();
    for (&g, c) in product.terms() {
        if done.contains(&g) {
            continue;
        }
        let class = p.class_of(g)?;
        for &h in class.iter() {
            let found = product.coeff(h);
            if &found != c {
                return Err(ClosureViolation {
                    left: left.clone(),
                    right: right.clone(),
                    class: class.clone(),
                    anchor: g,
                    expected: c.clone(),
                    element: h,
                    found,
                }
                .into());
            }
            done.insert(h);
        }
        entries.insert(class, c.clone());
    }
    Ok(entries.into_iter().collect())
}

/// The structure-constant row of two classes of `p`.
pub fn structure_constants<P: Partition + ?Sized>(
    p: &P,
    left: &BasicSet,
    right: &BasicSet,
) -> Result<StructureRow> {
    for c in [left, right] {
        if !is_basic_set(p, c.elements())? {
            return Err(Error::NotABasicSet(c.to_string()));
        }
    }
    let product = left.simple_quantity().convolve(&right.simple_quantity());
    let entries = decompose(p, left, right, &product)?;
    Ok(StructureRow {
        left: left.clone(),
        right: right.clone(),
        entries,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Concrete evidence attached to a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// The class function itself failed.
    ClassFunction {
        element: GroupElement,
        message: String,
    },
    /// `member` lies in the class of `element` but has a different class.
    NotAPartition {
        element: GroupElement,
        class: BasicSet,
        member: GroupElement,
        member_class: BasicSet,
    },
    IdentityClass {
        class: BasicSet,
    },
    StarNotAClass {
        class: BasicSet,
        star: BasicSet,
        class_of_star: BasicSet,
    },
    Product(Box<ClosureViolation>),
    HadamardOverlap {
        left: BasicSet,
        right: BasicSet,
        overlap: RingElement,
    },
    Frobenius {
        class: BasicSet,
        power: i64,
        image: BasicSet,
        element: GroupElement,
        element_class: BasicSet,
    },
    SchurWielandt {
        left: BasicSet,
        right: BasicSet,
        coefficient: Coefficient,
        slice: BTreeSet<GroupElement>,
        element: GroupElement,
        element_class: BasicSet,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ClassFunction { element, message } => {
                write!(f, "class of ({element}) failed: {message}")
            }
            Witness::NotAPartition {
                element,
                class,
                member,
                member_class,
            } => write!(
                f,
                "({member}) is in class {class} of ({element}) but its own class is {member_class}"
            ),
            Witness::IdentityClass { class } => write!(f, "identity class is {class}"),
            Witness::StarNotAClass {
                class,
                star,
                class_of_star,
            } => write!(
                f,
                "star of {class} is {star}, but the class there is {class_of_star}"
            ),
            Witness::Product(v) => write!(f, "{v}"),
            Witness::HadamardOverlap {
                left,
                right,
                overlap,
            } => write!(f, "sq({left}) o sq({right}) = {overlap}"),
            Witness::Frobenius {
                class,
                power,
                image,
                element,
                element_class,
            } => write!(
                f,
                "image of {class} under g -> g^{power} is {image}; it contains ({element}) but not \
                 its class {element_class}"
            ),
            Witness::SchurWielandt {
                left,
                right,
                coefficient,
                element,
                element_class,
                ..
            } => write!(
                f,
                "slice at {coefficient} of sq({left}) * sq({right}) contains ({element}) but not \
                 its class {element_class}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    /// How many cases were examined.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    fn from_first_failure(name: &'static str, cases: usize, witness: Option<Witness>) -> Self {
        Check {
            name,
            status: if witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            cases,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub family: String,
    pub window: u64,
    pub frobenius_range: i64,
    pub classes: usize,
    pub checks: Vec<Check>,
    pub overall: Status,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const DEFAULT_FROBENIUS_RANGE: i64 = 3;

pub const CHECK_PARTITION: &str = "partition";
pub const CHECK_IDENTITY: &str = "identity";
pub const CHECK_STAR: &str = "star-closure";
pub const CHECK_PRODUCT: &str = "product-closure";
pub const CHECK_HADAMARD: &str = "hadamard-closure";
pub const CHECK_FROBENIUS: &str = "frobenius-closure";
pub const CHECK_SCHUR_WIELANDT: &str = "schur-wielandt";

/// Runs every axiom check for a catalog family at the default Frobenius range.
pub fn verify_family(family: Family, radius: u64) -> Result<VerificationReport> {
    verify_partition(&family, radius, DEFAULT_FROBENIUS_RANGE)
}

/// Runs every axiom check over the classes meeting the radius window.
///
/// Failures are reported as check entries, never as errors; the only error is
/// an empty window.
pub fn verify_partition<P: Partition + ?Sized>(
    p: &P,
    radius: u64,
    frobenius_range: i64,
) -> Result<VerificationReport> {
    if radius == 0 {
        return Err(Error::EmptyWindow);
    }
    let mut checks = Vec::new();

    // Class function and partition consistency on the window.
    let mut partition_witness = None;
    let mut classes = BTreeSet::new();
    let points = p.window_points(radius);
    for &g in &points {
        match class_or_witness(p, g) {
            Ok(class) => {
                if partition_witness.is_none() && !class.contains(g) {
                    partition_witness = Some(Witness::NotAPartition {
                        element: g,
                        class: class.clone(),
                        member: g,
                        member_class: class.clone(),
                    });
                }
                if partition_witness.is_none() {
                    for &h in class.iter() {
                        match class_or_witness(p, h) {
                            Ok(other) if other == class => {}
                            Ok(other) => {
                                partition_witness = Some(Witness::NotAPartition {
                                    element: g,
                                    class: class.clone(),
                                    member: h,
                                    member_class: other,
                                });
                                break;
                            }
                            Err(w) => {
                                partition_witness = Some(*w);
                                break;
                            }
                        }
                    }
                }
                classes.insert(class);
            }
            Err(w) => {
                partition_witness.get_or_insert(*w);
            }
        }
    }
    checks.push(Check::from_first_failure(
        CHECK_PARTITION,
        points.len(),
        partition_witness,
    ));
    let classes: Vec<BasicSet> = classes.into_iter().collect();

    // Identity axiom.
    let identity_witness = match class_or_witness(p, GroupElement::IDENTITY) {
        Ok(c) if c.len() == 1 => None,
        Ok(c) => Some(Witness::IdentityClass { class: c }),
        Err(w) => Some(*w),
    };
    checks.push(Check::from_first_failure(
        CHECK_IDENTITY,
        1,
        identity_witness,
    ));

    // Star closure.
    let star_witness = classes.iter().find_map(|c| {
        let star = c.star();
        match class_or_witness(p, star.representative()) {
            Ok(found) if found == star => None,
            Ok(found) => Some(Witness::StarNotAClass {
                class: c.clone(),
                star,
                class_of_star: found,
            }),
            Err(w) => Some(*w),
        }
    });
    checks.push(Check::from_first_failure(
        CHECK_STAR,
        classes.len(),
        star_witness,
    ));

    // Products and Schur-Wielandt slices, all ordered pairs.
    let k = classes.len();
    let outcomes: Vec<(Option<Witness>, Option<Witness>)> = (0..k * k)
        .into_par_iter()
        .map(|idx| {
            let (left, right) = (&classes[idx / k], &classes[idx % k]);
            let product = left.simple_quantity().convolve(&right.simple_quantity());
            let closure = match decompose(p, left, right, &product) {
                Ok(_) => None,
                Err(Error::Closure(v)) => Some(Witness::Product(v)),
                Err(e) => Some(Witness::ClassFunction {
                    element: left.representative() + right.representative(),
                    message: e.to_string(),
                }),
            };
            let slices = schur_wielandt_witness(p, left, right, &product);
            (closure, slices)
        })
        .collect();
    let product_witness = outcomes.iter().find_map(|(c, _)| c.clone());
    let slice_witness = outcomes.iter().find_map(|(_, s)| s.clone());
    checks.push(Check::from_first_failure(
        CHECK_PRODUCT,
        k * k,
        product_witness,
    ));

    // Hadamard closure: sq(C) o sq(D) is zero or sq(C).
    let mut hadamard_witness = None;
    'outer: for (x, left) in classes.iter().enumerate() {
        let sl = left.simple_quantity();
        for right in &classes[x..] {
            let h = sl.hadamard(&right.simple_quantity());
            if !(h.is_zero() || (left == right && h == sl)) {
                hadamard_witness = Some(Witness::HadamardOverlap {
                    left: left.clone(),
                    right: right.clone(),
                    overlap: h,
                });
                break 'outer;
            }
        }
    }
    checks.push(Check::from_first_failure(
        CHECK_HADAMARD,
        k * (k + 1) / 2,
        hadamard_witness,
    ));

    // Frobenius closure for 1 <= |m| <= range.
    let powers: Vec<i64> = (1..=frobenius_range).flat_map(|m| [m, -m]).collect();
    let mut frobenius_witness = None;
    'frob: for class in &classes {
        for &m in &powers {
            let image = class.power(m);
            for &h in image.iter() {
                match class_or_witness(p, h) {
                    Ok(c) if c.is_subset(image.elements()) => {}
                    Ok(c) => {
                        frobenius_witness = Some(Witness::Frobenius {
                            class: class.clone(),
                            power: m,
                            image: image.clone(),
                            element: h,
                            element_class: c,
                        });
                        break 'frob;
                    }
                    Err(w) => {
                        frobenius_witness = Some(*w);
                        break 'frob;
                    }
                }
            }
        }
    }
    checks.push(Check::from_first_failure(
        CHECK_FROBENIUS,
        k * powers.len(),
        frobenius_witness,
    ));

    checks.push(Check::from_first_failure(
        CHECK_SCHUR_WIELANDT,
        k * k,
        slice_witness,
    ));

    let overall = if checks.iter().all(|c| c.status == Status::Pass) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(VerificationReport {
        family: p.label(),
        window: radius,
        frobenius_range,
        classes: k,
        checks,
        overall,
    })
}

fn class_or_witness<P: Partition + ?Sized>(
    p: &P,
    g: GroupElement,
) -> std::result::Result<BasicSet, Box<Witness>> {
    p.class_of(g).map_err(|e| {
        Box::new(Witness::ClassFunction {
            element: g,
            message: e.to_string(),
        })
    })
}

/// Every coefficient slice of `product` must be a union of classes.
fn schur_wielandt_witness<P: Partition + ?Sized>(
    p: &P,
    left: &BasicSet,
    right: &BasicSet,
    product: &RingElement,
) -> Option<Witness> {
    for c in product.coefficient_values() {
        let slice = product.coeff_slice(&c).expect("nonzero coefficient");
        for &g in &slice {
            match class_or_witness(p, g) {
                Ok(class) if class.is_subset(&slice) => {}
                Ok(class) => {
                    return Some(Witness::SchurWielandt {
                        left: left.clone(),
                        right: right.clone(),
                        coefficient: c.clone(),
                        slice: slice.clone(),
                        element: g,
                        element_class: class,
                    })
                }
                Err(w) => return Some(*w),
            }
        }
    }
    None
}

/// True when every window point of `lattice` has its whole class inside it.
fn is_window_a_subgroup<P: Partition + ?Sized>(
    p: &P,
    lattice: &Lattice,
    radius: u64,
) -> Result<bool> {
    for g in p.window_points(radius) {
        if lattice.contains(g) && !p.class_of(g)?.iter().all(|&h| lattice.contains(h)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Subgroups generated by single window classes that are unions of classes on
/// the window, plus the whole group. Results are only window-verified.
pub fn detect_a_subgroups<P: Partition + ?Sized>(p: &P, radius: u64) -> Result<Vec<Lattice>> {
    let mut found = BTreeSet::new();
    if !p.is_rank_one() {
        found.insert(Lattice::whole());
    }
    for class in enumerate_window(p, radius)? {
        let lattice = Lattice::generated_by(class.iter());
        if !found.contains(&lattice) && is_window_a_subgroup(p, &lattice, radius)? {
            found.insert(lattice);
        }
    }
    Ok(found.into_iter().collect())
}

/// The image of a rank-two partition under `(i, j) -> j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projection {
    pub family: String,
    pub window: u64,
    pub classes: Vec<BTreeSet<i64>>,
    /// `ZDiscrete` or `ZSymmetric`.
    pub pattern: Family,
}

/// Projects the window classes onto `<b>` along the kernel `<a>`.
pub fn project_to_b<P: Partition + ?Sized>(p: &P, radius: u64) -> Result<Projection> {
    if p.is_rank_one() {
        return Err(Error::NotRankTwo(p.label()));
    }
    let kernel = Lattice::generated_by(&[GroupElement::new(1, 0)]);
    if !detect_a_subgroups(p, radius)?.contains(&kernel) {
        return Err(Error::KernelNotASubgroup(p.label()));
    }
    let classes: BTreeSet<BTreeSet<i64>> = enumerate_window(p, radius)?
        .iter()
        .map(|c| c.iter().map(|g| g.j).collect())
        .collect();
    let matches = |f: Family| {
        classes.iter().all(|image| {
            let j = *image.first().unwrap();
            let expected: BTreeSet<i64> = f
                .basic_set_containing(GroupElement::new(j, 0))
                .unwrap()
                .iter()
                .map(|g| g.i)
                .collect();
            &expected == image
        })
    };
    let pattern = if matches(Family::ZDiscrete) {
        Family::ZDiscrete
    } else if matches(Family::ZSymmetric) {
        Family::ZSymmetric
    } else {
        return Err(Error::ProjectionMismatch(p.label()));
    };
    Ok(Projection {
        family: p.label(),
        window: radius,
        classes: classes.into_iter().collect(),
        pattern,
    })
}
