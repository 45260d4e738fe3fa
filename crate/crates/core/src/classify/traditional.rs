//! Whether a rank-two family is an orbit ring, a tensor product or a wedge
//! product, and the witnesses that type (viii) is none of them.

use serde::Serialize;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::family::{
    enumerate_window, orbit_of, Automorphism, BasicSet, Family, Partition, DEFAULT_ORBIT_CAP,
};
use crate::lattice::Lattice;
use crate::verify::detect_a_subgroups;

/// The window on which orbit partitions are compared with the closed forms.
pub const ORBIT_CHECK_RADIUS: u64 = 4;

/// A window point whose class differs from its orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitMismatch {
    pub element: GroupElement,
    pub class: BasicSet,
    /// `None` when the orbit outgrew the cap.
    pub orbit: Option<BasicSet>,
}

/// Compares every window class with the orbit of the group generated by
/// `gens`; returns the first disagreement.
pub fn orbit_coincidence<P: Partition + ?Sized>(
    p: &P,
    gens: &[Automorphism],
    radius: u64,
) -> Result<Option<OrbitMismatch>> {
    if radius == 0 {
        return Err(Error::EmptyWindow);
    }
    for g in p.window_points(radius) {
        let class = p.class_of(g)?;
        let orbit = match orbit_of(gens, g, DEFAULT_ORBIT_CAP) {
            Ok(o) => BasicSet::new(o)?,
            Err(Error::OrbitCap { .. }) => {
                return Ok(Some(OrbitMismatch {
                    element: g,
                    class,
                    orbit: None,
                }))
            }
            Err(e) => return Err(e),
        };
        if orbit != class {
            return Ok(Some(OrbitMismatch {
                element: g,
                class,
                orbit: Some(orbit),
            }));
        }
    }
    Ok(None)
}

/// One way of choosing images for `a` and `b` inside their classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub image_of_a: GroupElement,
    pub image_of_b: GroupElement,
    /// `image_of_a + image_of_b`, forced by multiplicativity.
    pub computed_image_of_ab: GroupElement,
    /// The class that `ab` must be mapped into.
    pub class_of_ab: BasicSet,
    pub consistent: bool,
}

/// Why type (viii) is not an orbit ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotOrbit {
    pub n: i64,
    /// All four assignments with `rho(a) in {a, a^-1}`, `rho(b) in {b, a^n b^-1}`.
    pub assignments: Vec<Assignment>,
    /// The assignment that would move `a` to `a^-1`, which an orbit ring
    /// needs: it sends `ab` outside its class.
    pub required_image: GroupElement,
    pub computed_image: GroupElement,
}

/// Shows that no automorphism group has the classes of type (viii) as
/// orbits: any automorphism swapping `a` and `a^-1` while keeping the class
/// of `b` must send `ab` outside the class `{ab, a^(n+1) b^-1}`.
pub fn check_not_orbit_viii(n: i64) -> Result<NotOrbit> {
    let family = Family::type_viii(n)?;
    let a = GroupElement::new(1, 0);
    let b = GroupElement::new(0, 1);
    let class_a = family.class_of(a)?;
    let class_b = family.class_of(b)?;
    let class_ab = family.class_of(a + b)?;

    let mut assignments = Vec::new();
    for &ra in class_a.iter() {
        for &rb in class_b.iter() {
            let computed = ra + rb;
            assignments.push(Assignment {
                image_of_a: ra,
                image_of_b: rb,
                computed_image_of_ab: computed,
                class_of_ab: class_ab.clone(),
                consistent: class_ab.contains(computed),
            });
        }
    }
    if assignments
        .iter()
        .any(|s| s.consistent && s.image_of_a != a)
    {
        return Err(Error::InvalidArgument(format!(
            "type (viii) with n = {n} admits an automorphism moving a inside its class"
        )));
    }
    // The partner of b and of ab inside their classes.
    let partner = |class: &BasicSet, x: GroupElement| *class.iter().find(|&&y| y != x).unwrap();
    let rb = partner(&class_b, b);
    Ok(NotOrbit {
        n,
        assignments,
        required_image: partner(&class_ab, a + b),
        computed_image: -a + rb,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum TensorVerdict {
    /// The window shows a class of size at least 4, or only singletons, so the
    /// size argument does not apply.
    TensorCompatible {
        max_class_size: usize,
        class: BasicSet,
    },
    NotTensor {
        max_class_size: usize,
        witnesses: Vec<TensorWitness>,
    },
}

/// For a rank-one A-subgroup `H` holding a size-2 class: a class that meets
/// two cosets of `H`.
///
/// With classes of size at most 3, a tensor factor holding a size-2 class
/// forces the other factor to be discrete, so every class would sit inside a
/// single coset of that factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorWitness {
    pub subgroup: Lattice,
    pub inside: BasicSet,
    pub complementary: BasicSet,
}

/// A vector completing the generator of a rank-one lattice to a basis of `Z^2`.
fn complement(h: GroupElement) -> Option<GroupElement> {
    use num_integer::Integer;
    let e = h.i.extended_gcd(&h.j);
    (e.gcd.abs() == 1).then(|| GroupElement::new(-e.y * e.gcd, e.x * e.gcd))
}

fn spans_two_cosets(class: &BasicSet, h: &Lattice) -> bool {
    let r = class.representative();
    class.iter().any(|&x| !h.contains(x - r))
}

pub fn check_not_tensor<P: Partition + ?Sized>(p: &P, radius: u64) -> Result<TensorVerdict> {
    if p.is_rank_one() {
        return Err(Error::NotRankTwo(p.label()));
    }
    let classes = enumerate_window(p, radius)?;
    let largest = classes.iter().max_by_key(|c| c.len()).unwrap().clone();
    let max = largest.len();
    if max >= 4 || max == 1 {
        return Ok(TensorVerdict::TensorCompatible {
            max_class_size: max,
            class: largest,
        });
    }
    let mut witnesses = Vec::new();
    for h in detect_a_subgroups(p, radius)? {
        if h.rank() != 1 {
            continue;
        }
        let Some(inside) = classes
            .iter()
            .filter(|c| c.len() == 2 && c.iter().all(|&x| h.contains(x)))
            .min_by_key(|c| (c.iter().map(|x| x.sup_norm()).max(), *c))
        else {
            continue;
        };
        let by_complement = complement(h.basis()[0])
            .map(|c| p.class_of(c))
            .transpose()?
            .filter(|c| spans_two_cosets(c, &h));
        let Some(complementary) =
            by_complement.or_else(|| classes.iter().find(|c| spans_two_cosets(c, &h)).cloned())
        else {
            return Err(Error::InvalidArgument(format!(
                "every window class of {} lies in one coset of {h}",
                p.label()
            )));
        };
        witnesses.push(TensorWitness {
            subgroup: h,
            inside: inside.clone(),
            complementary,
        });
    }
    if witnesses.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no rank-one A-subgroup of {} holds a size-2 class in the window",
            p.label()
        )));
    }
    Ok(TensorVerdict::NotTensor {
        max_class_size: max,
        witnesses,
    })
}

/// The tensor check for type (viii); needs `radius >= |n| + 1` so that the
/// class of `b` and its partner `a^n b^-1` are both in view.
pub fn check_not_tensor_viii(n: i64, radius: u64) -> Result<TensorVerdict> {
    let family = Family::type_viii(n)?;
    let needed = n.unsigned_abs() + 1;
    if radius < needed {
        return Err(Error::WindowTooSmall { radius, needed });
    }
    check_not_tensor(&family, radius)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotWedge {
    pub family: Family,
    /// The largest class; every class is at most this big.
    pub largest_class: BasicSet,
    /// A coset of `<a>` with one more element than `largest_class`, so no
    /// class can be a union of cosets of any subgroup containing `a^k`.
    pub coset_sample: Vec<GroupElement>,
    pub reason: &'static str,
}

/// A wedge product needs a nontrivial subgroup `K` whose cosets tile every
/// class outside some proper A-subgroup. Subgroups of `Z^2` other than `{0}`
/// are infinite while every class here is finite, so no class is a union of
/// `K`-cosets.
pub fn check_not_wedge(family: Family) -> Result<NotWedge> {
    if family.is_rank_one() {
        return Err(Error::NotRankTwo(family.to_string()));
    }
    let largest = enumerate_window(&family, 2)?
        .into_iter()
        .max_by_key(|c| c.len())
        .unwrap();
    let base = GroupElement::new(0, 1);
    let coset_sample = (0..=largest.len() as i64)
        .map(|k| base + GroupElement::new(k, 0))
        .collect();
    Ok(NotWedge {
        family,
        largest_class: largest,
        coset_sample,
        reason: "nontrivial subgroups of Z^2 are infinite and every class is finite",
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Traditional {
    Orbit {
        family: Family,
        generators: Vec<Automorphism>,
        checked_radius: u64,
    },
    Tensor {
        family: Family,
        factors: (Family, Family),
    },
    NotTraditional {
        family: Family,
        not_orbit: NotOrbit,
        not_tensor: TensorVerdict,
        not_wedge: NotWedge,
    },
}

/// Classifies a rank-two catalog family as orbit, tensor or neither.
///
/// Trivial rings only exist over finite groups, so that case never applies.
pub fn is_traditional(family: Family) -> Result<Traditional> {
    match family {
        Family::ZDiscrete | Family::ZSymmetric => Err(Error::NotRankTwo(family.to_string())),
        Family::TensorDiscSym => Ok(Traditional::Tensor {
            family,
            factors: (Family::ZDiscrete, Family::ZSymmetric),
        }),
        Family::TensorSymDisc => Ok(Traditional::Tensor {
            family,
            factors: (Family::ZSymmetric, Family::ZDiscrete),
        }),
        Family::TensorSymSym => Ok(Traditional::Tensor {
            family,
            factors: (Family::ZSymmetric, Family::ZSymmetric),
        }),
        Family::TypeVIII(n) => {
            let n = n.get();
            Ok(Traditional::NotTraditional {
                family,
                not_orbit: check_not_orbit_viii(n)?,
                not_tensor: check_not_tensor_viii(n, n.unsigned_abs() + 2)?,
                not_wedge: check_not_wedge(family)?,
            })
        }
        Family::Discrete
        | Family::PlusMinus
        | Family::OrbitV(_)
        | Family::OrbitVI(_)
        | Family::OrbitVII(_) => {
            let generators = family.orbit_generators().expect("orbit family");
            if let Some(m) = orbit_coincidence(&family, &generators, ORBIT_CHECK_RADIUS)? {
                return Err(Error::OrbitMismatch {
                    family: family.to_string(),
                    element: m.element,
                });
            }
            Ok(Traditional::Orbit {
                family,
                generators,
                checked_radius: ORBIT_CHECK_RADIUS,
            })
        }
    }
}
