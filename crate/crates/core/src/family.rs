//! The classified partition families of `Z x Z` and of its rank-one subgroup.
//!
//! Every family here is given by a closed-form rule `g -> class(g)` that is
//! total on the group, so verification never has to truncate a class.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::num::NonZeroI64;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::element::{axis_window, square_window, GroupElement};
use crate::error::{Error, Result};
use crate::ring::RingElement;

/// One of the catalog partitions. Parametrized kinds carry a nonzero `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Every class a singleton.
    Discrete,
    /// Classes `{g, g^-1}`.
    PlusMinus,
    /// Discrete on `<a>` tensor symmetric on `<b>`: `{(i,j), (i,-j)}`.
    TensorDiscSym,
    /// Symmetric on `<a>` tensor discrete on `<b>`: `{(i,j), (-i,j)}`.
    TensorSymDisc,
    /// Symmetric on both factors: `{(+-i, +-j)}`.
    TensorSymSym,
    /// `{(i,j), (nj+i,-j)}`.
    OrbitV(NonZeroI64),
    /// `{(i,j), (nj-i,j)}`.
    OrbitVI(NonZeroI64),
    /// `{(i,j), (nj-i,j), (-i,-j), (i-nj,-j)}`.
    OrbitVII(NonZeroI64),
    /// `{(i,0), (-i,0)}` on the axis, `{(i,j), (nj+i,-j)}` off it.
    TypeVIII(NonZeroI64),
    /// Discrete partition of `<a>`.
    ZDiscrete,
    /// Symmetric partition of `<a>`.
    ZSymmetric,
}

impl Family {
    pub fn orbit_v(n: i64) -> Result<Self> {
        Ok(Family::OrbitV(nonzero(n)?))
    }

    pub fn orbit_vi(n: i64) -> Result<Self> {
        Ok(Family::OrbitVI(nonzero(n)?))
    }

    pub fn orbit_vii(n: i64) -> Result<Self> {
        Ok(Family::OrbitVII(nonzero(n)?))
    }

    pub fn type_viii(n: i64) -> Result<Self> {
        Ok(Family::TypeVIII(nonzero(n)?))
    }

    /// The parameter `n` for the parametrized kinds.
    pub fn parameter(self) -> Option<i64> {
        match self {
            Family::OrbitV(n) | Family::OrbitVI(n) | Family::OrbitVII(n) | Family::TypeVIII(n) => {
                Some(n.get())
            }
            _ => None,
        }
    }

    pub fn is_rank_one(self) -> bool {
        matches!(self, Family::ZDiscrete | Family::ZSymmetric)
    }

    /// The eleven kinds, with each parametrized kind instantiated at every
    /// `n` in `ns` (zeros skipped).
    pub fn catalog(ns: &[i64]) -> Vec<Family> {
        let mut out = vec![
            Family::Discrete,
            Family::PlusMinus,
            Family::TensorDiscSym,
            Family::TensorSymDisc,
            Family::TensorSymSym,
        ];
        let ns: Vec<NonZeroI64> = ns.iter().filter_map(|&n| NonZeroI64::new(n)).collect();
        for ctor in [
            Family::OrbitV as fn(NonZeroI64) -> Family,
            Family::OrbitVI,
            Family::OrbitVII,
            Family::TypeVIII,
        ] {
            out.extend(ns.iter().map(|&n| ctor(n)));
        }
        out.push(Family::ZDiscrete);
        out.push(Family::ZSymmetric);
        out
    }

    /// The class containing `g`, from the closed form of the family.
    pub fn basic_set_containing(self, g: GroupElement) -> Result<BasicSet> {
        let GroupElement { i, j } = g;
        let e = GroupElement::new;
        let points: Vec<GroupElement> = match self {
            Family::Discrete => vec![g],
            Family::PlusMinus => vec![g, -g],
            Family::TensorDiscSym => vec![g, e(i, -j)],
            Family::TensorSymDisc => vec![g, e(-i, j)],
            Family::TensorSymSym => vec![g, e(i, -j), e(-i, j), e(-i, -j)],
            Family::OrbitV(n) => vec![g, e(n.get() * j + i, -j)],
            Family::OrbitVI(n) => vec![g, e(n.get() * j - i, j)],
            Family::OrbitVII(n) => {
                let nj = n.get() * j;
                vec![g, e(nj - i, j), e(-i, -j), e(i - nj, -j)]
            }
            Family::TypeVIII(n) => {
                if j == 0 {
                    vec![g, -g]
                } else {
                    vec![g, e(n.get() * j + i, -j)]
                }
            }
            Family::ZDiscrete | Family::ZSymmetric if j != 0 => {
                return Err(Error::OffAxis {
                    family: self.to_string(),
                    element: g,
                })
            }
            Family::ZDiscrete => vec![g],
            Family::ZSymmetric => vec![g, -g],
        };
        Ok(BasicSet::from_points(points))
    }

    /// Generators of a finite automorphism group whose orbits are the classes.
    /// `None` for type (viii), which is not an orbit partition.
    pub fn orbit_generators(self) -> Option<Vec<Automorphism>> {
        let gens = match self {
            Family::Discrete | Family::ZDiscrete => vec![],
            Family::PlusMinus | Family::ZSymmetric => vec![Automorphism::inversion()],
            Family::TensorDiscSym => vec![Automorphism::invert_b()],
            Family::TensorSymDisc => vec![Automorphism::invert_a()],
            Family::TensorSymSym => vec![Automorphism::invert_a(), Automorphism::invert_b()],
            Family::OrbitV(n) => vec![Automorphism::phi1(n.get())],
            Family::OrbitVI(n) => vec![Automorphism::phi2(n.get())],
            Family::OrbitVII(n) => vec![Automorphism::phi2(n.get()), Automorphism::inversion()],
            Family::TypeVIII(_) => return None,
        };
        Some(gens)
    }
}

fn nonzero(n: i64) -> Result<NonZeroI64> {
    NonZeroI64::new(n).ok_or(Error::ZeroParameter)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Discrete => f.write_str("discrete"),
            Family::PlusMinus => f.write_str("pm"),
            Family::TensorDiscSym => f.write_str("tensor-ds"),
            Family::TensorSymDisc => f.write_str("tensor-sd"),
            Family::TensorSymSym => f.write_str("tensor-ss"),
            Family::OrbitV(n) => write!(f, "orbit-v:n={n}"),
            Family::OrbitVI(n) => write!(f, "orbit-vi:n={n}"),
            Family::OrbitVII(n) => write!(f, "orbit-vii:n={n}"),
            Family::TypeVIII(n) => write!(f, "type-viii:n={n}"),
            Family::ZDiscrete => f.write_str("z-discrete"),
            Family::ZSymmetric => f.write_str("z-symmetric"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, param) = match s.split_once(':') {
            Some((k, p)) => (k.trim(), Some(p.trim())),
            None => (s, None),
        };
        let n = |param: Option<&str>| -> Result<i64> {
            let p = param.ok_or_else(|| {
                Error::UnknownFamily(format!("`{kind}` needs a parameter `:n=<int>`"))
            })?;
            let v = p
                .strip_prefix("n=")
                .ok_or_else(|| Error::UnknownFamily(format!("expected `n=<int>`, got `{p}`")))?;
            v.trim()
                .parse()
                .map_err(|_| Error::UnknownFamily(format!("bad parameter `{v}`")))
        };
        let plain = |f: Family| -> Result<Family> {
            match param {
                None => Ok(f),
                Some(p) => Err(Error::UnknownFamily(format!(
                    "`{kind}` takes no parameter, got `{p}`"
                ))),
            }
        };
        match kind {
            "discrete" => plain(Family::Discrete),
            "pm" => plain(Family::PlusMinus),
            "tensor-ds" => plain(Family::TensorDiscSym),
            "tensor-sd" => plain(Family::TensorSymDisc),
            "tensor-ss" => plain(Family::TensorSymSym),
            "z-discrete" => plain(Family::ZDiscrete),
            "z-symmetric" => plain(Family::ZSymmetric),
            "orbit-v" => Family::orbit_v(n(param)?),
            "orbit-vi" => Family::orbit_vi(n(param)?),
            "orbit-vii" => Family::orbit_vii(n(param)?),
            "type-viii" => Family::type_viii(n(param)?),
            other => Err(Error::UnknownFamily(format!(
                "unknown family `{other}`; expected one of discrete, pm, tensor-ds, tensor-sd, \
                 tensor-ss, orbit-v:n=<int>, orbit-vi:n=<int>, orbit-vii:n=<int>, \
                 type-viii:n=<int>, z-discrete, z-symmetric"
            ))),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// One class of a partition: a non-empty finite set of group elements.
///
/// Ordered by its elements, so sorting classes sorts them by canonical
/// (lexicographically least) representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasicSet(BTreeSet<GroupElement>);

impl BasicSet {
    /// Panics on an empty input; classes are never empty.
    pub fn from_points<I: IntoIterator<Item = GroupElement>>(points: I) -> Self {
        let set: BTreeSet<_> = points.into_iter().collect();
        assert!(!set.is_empty(), "basic set must be non-empty");
        BasicSet(set)
    }

    pub fn new(set: BTreeSet<GroupElement>) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(BasicSet(set))
    }

    pub fn representative(&self) -> GroupElement {
        *self.0.first().unwrap()
    }

    pub fn elements(&self) -> &BTreeSet<GroupElement> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        self.0.contains(&g)
    }

    pub fn is_subset(&self, other: &BTreeSet<GroupElement>) -> bool {
        self.0.is_subset(other)
    }

    /// `D* = {g^-1 : g in D}`.
    pub fn star(&self) -> BasicSet {
        BasicSet(self.0.iter().map(|&g| -g).collect())
    }

    /// `{m g : g in D}`.
    pub fn power(&self, m: i64) -> BasicSet {
        BasicSet(self.0.iter().map(|&g| m * g).collect())
    }

    pub fn simple_quantity(&self) -> RingElement {
        RingElement::simple_quantity(&self.0).unwrap()
    }
}

impl fmt::Display for BasicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({g})")?;
        }
        f.write_str("}")
    }
}

impl Serialize for BasicSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter())
    }
}

/// A partition of `Z x Z` (or of `<a>`) given by a total class function.
///
/// The verifier is written against this trait so that it can also be pointed
/// at deliberately broken partitions (see [`crate::testing`]).
pub trait Partition: Sync {
    fn class_of(&self, g: GroupElement) -> Result<BasicSet>;

    /// True when the partition lives on `<a>` only.
    fn is_rank_one(&self) -> bool;

    fn label(&self) -> String;

    /// The points of the radius-`r` window on which this partition is defined.
    fn window_points(&self, radius: u64) -> Vec<GroupElement> {
        if self.is_rank_one() {
            axis_window(radius).collect()
        } else {
            square_window(radius).collect()
        }
    }
}

impl Partition for Family {
    fn class_of(&self, g: GroupElement) -> Result<BasicSet> {
        self.basic_set_containing(g)
    }

    fn is_rank_one(&self) -> bool {
        Family::is_rank_one(*self)
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

impl<P: Partition + ?Sized> Partition for &P {
    fn class_of(&self, g: GroupElement) -> Result<BasicSet> {
        (**self).class_of(g)
    }

    fn is_rank_one(&self) -> bool {
        (**self).is_rank_one()
    }

    fn label(&self) -> String {
        (**self).label()
    }
}

/// True iff `set` is exactly one class of `p`.
pub fn is_basic_set<P: Partition + ?Sized>(p: &P, set: &BTreeSet<GroupElement>) -> Result<bool> {
    let Some(&g) = set.first() else {
        return Err(Error::EmptySet);
    };
    if p.is_rank_one() && set.iter().any(|h| h.j != 0) {
        return Ok(false);
    }
    Ok(p.class_of(g)?.elements() == set)
}

/// Every class meeting the radius-`r` window, once each, sorted by
/// representative.
pub fn enumerate_window<P: Partition + ?Sized>(p: &P, radius: u64) -> Result<Vec<BasicSet>> {
    if radius == 0 {
        return Err(Error::EmptyWindow);
    }
    let mut classes = BTreeSet::new();
    for g in p.window_points(radius) {
        classes.insert(p.class_of(g)?);
    }
    Ok(classes.into_iter().collect())
}

/// Whether two partitions induce the same classes on every window point.
pub fn windows_agree<P, Q>(p: &P, q: &Q, radius: u64) -> Result<bool>
where
    P: Partition + ?Sized,
    Q: Partition + ?Sized,
{
    if p.is_rank_one() != q.is_rank_one() {
        return Ok(false);
    }
    for g in p.window_points(radius) {
        if p.class_of(g)? != q.class_of(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An automorphism of `Z^2`, acting on exponent vectors by an integer matrix
/// of determinant +-1. The columns are the images of `a` and `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    matrix: [[i64; 2]; 2],
}

impl Automorphism {
    /// `None` unless the determinant is +-1.
    pub fn new(matrix: [[i64; 2]; 2]) -> Option<Self> {
        let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        (det == 1 || det == -1).then_some(Automorphism { matrix })
    }

    /// The automorphism sending `a` and `b` to the given images.
    pub fn from_images(image_a: GroupElement, image_b: GroupElement) -> Option<Self> {
        Self::new([[image_a.i, image_b.i], [image_a.j, image_b.j]])
    }

    pub fn identity() -> Self {
        Automorphism {
            matrix: [[1, 0], [0, 1]],
        }
    }

    /// `g -> g^-1`.
    pub fn inversion() -> Self {
        Automorphism {
            matrix: [[-1, 0], [0, -1]],
        }
    }

    /// `a -> a^-1`, `b -> b`.
    pub fn invert_a() -> Self {
        Automorphism {
            matrix: [[-1, 0], [0, 1]],
        }
    }

    /// `a -> a`, `b -> b^-1`.
    pub fn invert_b() -> Self {
        Automorphism {
            matrix: [[1, 0], [0, -1]],
        }
    }

    /// `a -> a`, `b -> a^n b^-1`.
    pub fn phi1(n: i64) -> Self {
        Automorphism {
            matrix: [[1, n], [0, -1]],
        }
    }

    /// `a -> a^-1`, `b -> a^n b`.
    pub fn phi2(n: i64) -> Self {
        Automorphism {
            matrix: [[-1, n], [0, 1]],
        }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }

    pub fn determinant(&self) -> i64 {
        let m = self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn apply(&self, g: GroupElement) -> GroupElement {
        let m = self.matrix;
        GroupElement::new(m[0][0] * g.i + m[0][1] * g.j, m[1][0] * g.i + m[1][1] * g.j)
    }

    pub fn image_of_a(&self) -> GroupElement {
        self.apply(GroupElement::new(1, 0))
    }

    pub fn image_of_b(&self) -> GroupElement {
        self.apply(GroupElement::new(0, 1))
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a->({}), b->({})", self.image_of_a(), self.image_of_b())
    }
}

impl Serialize for Automorphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Automorphism", 2)?;
        s.serialize_field("a", &self.image_of_a())?;
        s.serialize_field("b", &self.image_of_b())?;
        s.end()
    }
}

pub const DEFAULT_ORBIT_CAP: usize = 64;

/// Closure of `{g}` under `gens`. Fails once the orbit outgrows `cap`.
pub fn orbit_of(
    gens: &[Automorphism],
    g: GroupElement,
    cap: usize,
) -> Result<BTreeSet<GroupElement>> {
    let mut seen = BTreeSet::from([g]);
    let mut queue = VecDeque::from([g]);
    while let Some(h) = queue.pop_front() {
        for phi in gens {
            let k = phi.apply(h);
            if seen.insert(k) {
                if seen.len() > cap {
                    return Err(Error::OrbitCap { element: g, cap });
                }
                queue.push_back(k);
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::g;

    fn set(points: &[GroupElement]) -> BTreeSet<GroupElement> {
        points.iter().copied().collect()
    }

    #[test]
    fn closed_forms() {
        let v2 = Family::orbit_v(2).unwrap();
        assert_eq!(
            v2.basic_set_containing(g(1, 1)).unwrap().elements(),
            &set(&[g(1, 1), g(3, -1)])
        );
        let viii = Family::type_viii(1).unwrap();
        assert_eq!(
            viii.basic_set_containing(g(4, 0)).unwrap().elements(),
            &set(&[g(4, 0), g(-4, 0)])
        );
        let vii = Family::orbit_vii(2).unwrap();
        assert_eq!(
            vii.basic_set_containing(g(0, 1)).unwrap().elements(),
            &set(&[g(0, 1), g(2, 1), g(0, -1), g(-2, -1)])
        );
        // 2i = nj collapses the class to {g, g^-1}
        assert_eq!(
            vii.basic_set_containing(g(1, 1)).unwrap().elements(),
            &set(&[g(1, 1), g(-1, -1)])
        );
        for f in Family::catalog(&[-2, 3]) {
            assert_eq!(
                f.basic_set_containing(GroupElement::IDENTITY)
                    .unwrap()
                    .elements(),
                &set(&[GroupElement::IDENTITY]),
                "{f}"
            );
        }
    }

    #[test]
    fn rank_one_rejects_off_axis() {
        assert!(matches!(
            Family::ZSymmetric.basic_set_containing(g(1, 1)),
            Err(Error::OffAxis { .. })
        ));
        assert!(Family::ZDiscrete.basic_set_containing(g(5, 0)).is_ok());
    }

    #[test]
    fn zero_parameter_rejected() {
        assert!(matches!(Family::orbit_v(0), Err(Error::ZeroParameter)));
        assert!("type-viii:n=0".parse::<Family>().is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        for f in Family::catalog(&[-3, 1, 7]) {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("orbit-v".parse::<Family>().is_err());
        assert!("pm:n=2".parse::<Family>().is_err());
        assert!("wedge".parse::<Family>().is_err());
    }

    #[test]
    fn basic_set_membership() {
        assert!(is_basic_set(&Family::Discrete, &set(&[g(3, 5)])).unwrap());
        assert!(!is_basic_set(&Family::PlusMinus, &set(&[g(1, 0)])).unwrap());
        assert!(is_basic_set(&Family::orbit_v(2).unwrap(), &set(&[g(1, 1), g(3, -1)])).unwrap());
        assert!(!is_basic_set(&Family::ZDiscrete, &set(&[g(0, 1)])).unwrap());
    }

    #[test]
    fn window_enumeration() {
        assert_eq!(enumerate_window(&Family::Discrete, 1).unwrap().len(), 9);
        assert_eq!(enumerate_window(&Family::PlusMinus, 1).unwrap().len(), 5);
        let viii = enumerate_window(&Family::type_viii(1).unwrap(), 1).unwrap();
        // brute force: evaluate the closed form at all nine points and dedupe
        let mut brute = BTreeSet::new();
        for p in square_window(1) {
            let GroupElement { i, j } = p;
            let class = if j == 0 {
                BasicSet::from_points([p, -p])
            } else {
                BasicSet::from_points([p, g(j + i, -j)])
            };
            brute.insert(class);
        }
        assert_eq!(viii, brute.into_iter().collect::<Vec<_>>());
        let frozen: Vec<BasicSet> = [
            vec![g(-2, 1), g(-1, -1)],
            vec![g(-1, 0), g(1, 0)],
            vec![g(-1, 1), g(0, -1)],
            vec![g(0, 0)],
            vec![g(0, 1), g(1, -1)],
            vec![g(1, 1), g(2, -1)],
        ]
        .into_iter()
        .map(BasicSet::from_points)
        .collect();
        assert_eq!(viii, frozen);
    }

    #[test]
    fn automorphisms() {
        assert_eq!(Automorphism::inversion().apply(g(3, -2)), g(-3, 2));
        assert_eq!(Automorphism::phi2(2).apply(g(0, 1)), g(2, 1));
        assert_eq!(Automorphism::phi1(2).apply(g(0, 1)), g(2, -1));
        assert!(Automorphism::new([[2, 0], [0, 1]]).is_none());
        let gens = Family::orbit_v(2).unwrap().orbit_generators().unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].image_of_a(), g(1, 0));
        assert_eq!(gens[0].image_of_b(), g(2, -1));
        assert_eq!(Family::Discrete.orbit_generators(), Some(vec![]));
        assert_eq!(Family::type_viii(1).unwrap().orbit_generators(), None);
    }

    #[test]
    fn orbits() {
        let phi1 = Automorphism::phi1(2);
        assert_eq!(
            orbit_of(&[phi1], g(1, 1), 64).unwrap(),
            set(&[g(1, 1), g(3, -1)])
        );
        let gens = [Automorphism::phi2(2), Automorphism::inversion()];
        assert_eq!(
            orbit_of(&gens, g(0, 1), 64).unwrap(),
            set(&[g(0, 1), g(2, 1), g(0, -1), g(-2, -1)])
        );
        assert_eq!(orbit_of(&[], g(4, 4), 64).unwrap(), set(&[g(4, 4)]));
        // a -> a b generates an infinite group
        let shear = Automorphism::new([[1, 0], [1, 1]]).unwrap();
        assert!(matches!(
            orbit_of(&[shear], g(1, 0), 64),
            Err(Error::OrbitCap { .. })
        ));
    }
}
