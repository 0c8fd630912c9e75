//! Manifold, knot and link descriptors, and the verdict engine over them.
//!
//! Descriptors are declarative: geometric properties (hyperbolicity, the
//! Seifert-mod-P flag, …) are supplied by the caller, never recognized.
//! Every manifold verdict is computed on the Poincaré variety 𝒫(M), so
//! no verdict depends on what a homotopy sphere is.

mod seifert;

use serde::{Deserialize, Serialize};

pub use seifert::{seifert_group, Fraction, Realization, SeifertGroup, SeifertInvariants};

use crate::error::{usage, Error, Result};
use crate::group::{determinant, Cardinal, FiberFactor, Group, GroupElement, IntMatrix};
use crate::matrix::figure8_group;
use crate::rules::{
    decide_group, icc_free_product, icc_index_two_lift_torsion_free, icc_torus_bundle, Statement, Status, Verdict,
    Witness,
};

/// An indecomposable summand of a Kneser–Milnor decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PrimePiece {
    Seifert(SeifertInvariants),
    Hyperbolic {
        finite_volume: bool,
    },
    TorusBundle {
        monodromy: IntMatrix,
    },
    /// S² × S¹ when `orientable_bundle`, else the twisted S² ⋊ S¹.
    SphereBundle {
        orientable_bundle: bool,
    },
    HomotopySphere,
    OtherIrreducible {
        pi1_order: Cardinal,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normal_cyclic_infinite_subgroup: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        contains_nonstandard_p2xi: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seifert_mod_p: Option<bool>,
        /// Homotopy equivalent to P² × S¹ (π₁ = Z × Z/2).
        #[serde(default, skip_serializing_if = "Option::is_none")]
        homotopy_p2_x_s1: Option<bool>,
    },
}

impl PrimePiece {
    /// An irreducible piece with no flags set.
    pub fn other_irreducible(pi1_order: Cardinal) -> PrimePiece {
        PrimePiece::OtherIrreducible {
            pi1_order,
            normal_cyclic_infinite_subgroup: None,
            contains_nonstandard_p2xi: None,
            seifert_mod_p: None,
            homotopy_p2_x_s1: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PrimePiece::Seifert(s) => s.validate(),
            PrimePiece::TorusBundle { monodromy } => {
                if monodromy.len() != 2 || monodromy.iter().any(|r| r.len() != 2) {
                    return usage("torus-bundle monodromy must be a 2×2 matrix");
                }
                match determinant(monodromy) {
                    1 | -1 => Ok(()),
                    d => usage(format!("torus-bundle monodromy has determinant {d}, not ±1")),
                }
            }
            _ => Ok(()),
        }
    }

    /// |π₁| of the piece.
    pub fn pi1_order(&self) -> Result<Cardinal> {
        Ok(match self {
            PrimePiece::Seifert(s) => s.pi1_order()?,
            PrimePiece::Hyperbolic { .. } | PrimePiece::TorusBundle { .. } | PrimePiece::SphereBundle { .. } => {
                Cardinal::Infinite
            }
            PrimePiece::HomotopySphere => Cardinal::Finite(1),
            PrimePiece::OtherIrreducible { pi1_order, .. } => *pi1_order,
        })
    }

    /// A structured group for π₁ with a distinguished element (the fiber
    /// class for Seifert pieces), when the piece carries enough data.
    pub fn realize(&self) -> Result<Option<(Group, Option<GroupElement>)>> {
        Ok(match self {
            PrimePiece::Seifert(s) => seifert_group(s)?.realization.map(|r| (r.group, Some(r.fiber))),
            PrimePiece::TorusBundle { monodromy } => Some((Group::semidirect(monodromy.clone())?, None)),
            PrimePiece::SphereBundle { .. } => Some((Group::infinite_cyclic().renamed(vec!["t".into()])?, None)),
            PrimePiece::HomotopySphere => Some((Group::finite_cyclic(1)?, None)),
            PrimePiece::OtherIrreducible {
                pi1_order: Cardinal::Finite(1),
                ..
            } => Some((Group::finite_cyclic(1)?, None)),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldDescriptor {
    pub orientable: bool,
    pub pieces: Vec<PrimePiece>,
    /// The descriptor already denotes M̂ (sphere boundaries capped).
    #[serde(default)]
    pub boundary_spheres_capped: bool,
}

impl ManifoldDescriptor {
    pub fn new(orientable: bool, pieces: Vec<PrimePiece>) -> Self {
        ManifoldDescriptor {
            orientable,
            pieces,
            boundary_spheres_capped: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.pieces.is_empty() {
            return usage("a manifold descriptor needs at least one piece");
        }
        for p in &self.pieces {
            p.validate()?;
            match p {
                PrimePiece::TorusBundle { monodromy } if (determinant(monodromy) == 1) != self.orientable => {
                    return usage(format!(
                        "a torus bundle with determinant {} is {}orientable, but the manifold is declared {}orientable",
                        determinant(monodromy),
                        if determinant(monodromy) == 1 { "" } else { "non-" },
                        if self.orientable { "" } else { "non-" },
                    ));
                }
                PrimePiece::SphereBundle { orientable_bundle } if self.orientable && !orientable_bundle => {
                    return usage("the twisted sphere bundle is non-orientable");
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// 𝒫(M): drop the summands with trivial π₁ and mark sphere boundaries as
/// capped. With nothing left, the result is S³ as a single homotopy sphere.
pub fn poincare_variety(m: &ManifoldDescriptor) -> ManifoldDescriptor {
    let pieces: Vec<PrimePiece> = m
        .pieces
        .iter()
        .filter(|p| !matches!(p.pi1_order(), Ok(c) if c.is_trivial()))
        .cloned()
        .collect();
    ManifoldDescriptor {
        orientable: m.orientable,
        pieces: if pieces.is_empty() {
            vec![PrimePiece::HomotopySphere]
        } else {
            pieces
        },
        boundary_spheres_capped: true,
    }
}

/// π₁ of the whole manifold as one structured group: the free product of
/// the realized pieces of 𝒫(M).
pub fn realize_manifold(m: &ManifoldDescriptor) -> Result<(Group, Option<GroupElement>)> {
    m.validate()?;
    let p = poincare_variety(m);
    let mut parts = Vec::new();
    for piece in &p.pieces {
        if !m.orientable && matches!(piece, PrimePiece::Seifert(_)) {
            return Err(Error::Unsupported(
                "Seifert invariants are realized for an orientable total space only".into(),
            ));
        }
        match piece.realize()? {
            Some(r) => parts.push(r),
            None => {
                return Err(Error::Unsupported(format!(
                    "no structured group is available for the piece {}",
                    piece_name(piece)
                )))
            }
        }
    }
    if parts.len() == 1 {
        return Ok(parts.pop().expect("one part"));
    }
    let mut acc = parts.pop().expect("nonempty").0;
    while let Some((g, _)) = parts.pop() {
        acc = Group::free_product(&g, &acc)?;
    }
    Ok((acc, None))
}

fn piece_name(p: &PrimePiece) -> &'static str {
    match p {
        PrimePiece::Seifert(_) => "seifert",
        PrimePiece::Hyperbolic { .. } => "hyperbolic",
        PrimePiece::TorusBundle { .. } => "torus_bundle",
        PrimePiece::SphereBundle { .. } => "sphere_bundle",
        PrimePiece::HomotopySphere => "homotopy_sphere",
        PrimePiece::OtherIrreducible { .. } => "other_irreducible",
    }
}

/// The Seifert verdict for the orientable total space of `s`.
pub fn icc_seifert(s: &SeifertInvariants) -> Result<Verdict> {
    let sg = seifert_group(s)?;
    if let Cardinal::Finite(n) = sg.order {
        let v = Verdict::finite(sg.order);
        return Ok(if n > 1 {
            v.cite(Statement::Prop2, format!("π₁ is finite of order {n}, not trivial"))
        } else {
            v.cite(Statement::Prop2, "π₁ is trivial: the manifold is simply connected")
        });
    }
    let class = if sg.fiber_central {
        "h commutes with every generator, so its class is {h}"
    } else {
        "each generator fixes or inverts h, so its class is {h, h'}"
    };
    let witness = match &sg.realization {
        Some(r) => Witness::element(&r.group, r.fiber.clone(), format!("{class}; realization: {}", r.note)),
        None => Witness::symbolic("regular fiber class h", format!("{class} (read off the relations)")),
    };
    Ok(Verdict::not_icc(
        Statement::Lemma1,
        "the regular fiber class h generates a normal infinite cyclic subgroup",
        witness,
    )
    .cite(
        Statement::Prop2,
        "an infinite group with a finite nontrivial class is not ICC",
    ))
}

fn infinite_cyclic_verdict(detail: &str) -> Result<Verdict> {
    let g = Group::infinite_cyclic().renamed(vec!["t".into()])?;
    Ok(Verdict::not_icc(
        Statement::Definition,
        format!("{detail}: π₁ = Z is abelian and infinite"),
        Witness::element(&g, g.generator(0)?, "Z is abelian, so every class is a singleton"),
    ))
}

/// Free-product rule on the π₁-orders of two or more nontrivial pieces.
fn decide_sum(p: &ManifoldDescriptor) -> Result<Verdict> {
    let orders: Vec<Cardinal> = p.pieces.iter().map(PrimePiece::pi1_order).collect::<Result<_>>()?;
    let shown: Vec<String> = orders.iter().map(Cardinal::to_string).collect();
    let km = Verdict::icc(
        Statement::KneserMilnor,
        format!(
            "π₁ is the free product of {} piece groups of orders {}",
            orders.len(),
            shown.join(", ")
        ),
    );
    let rest = if orders.len() == 2 {
        orders[1]
    } else {
        Cardinal::Infinite
    };
    let mut v = icc_free_product(orders[0], rest)?.after(&km);
    if v.status == Status::NotIcc {
        if let Ok((g, _)) = realize_manifold(p) {
            let concrete = decide_group(&g)?;
            if concrete.status == Status::NotIcc {
                v.witness = concrete.witness;
            }
        }
    }
    Ok(v)
}

fn decide_orientable_piece(piece: &PrimePiece) -> Result<Verdict> {
    match piece {
        PrimePiece::Seifert(s) => icc_seifert(s),
        PrimePiece::Hyperbolic { finite_volume: true } => Ok(Verdict::icc(
            Statement::Prop21,
            "finite-volume hyperbolic: π₁ is a lattice in PSL(2, C)",
        )),
        PrimePiece::Hyperbolic { finite_volume: false } => Ok(Verdict::unknown(
            Statement::Prop21,
            "hypotheses not met: the hyperbolic structure has infinite volume",
        )),
        PrimePiece::TorusBundle { monodromy } => icc_torus_bundle(monodromy),
        PrimePiece::SphereBundle { .. } => infinite_cyclic_verdict("S² × S¹"),
        PrimePiece::HomotopySphere => Ok(Verdict::finite(Cardinal::Finite(1))),
        PrimePiece::OtherIrreducible {
            pi1_order,
            normal_cyclic_infinite_subgroup,
            ..
        } => {
            if let Cardinal::Finite(_) = pi1_order {
                return Ok(Verdict::finite(*pi1_order));
            }
            Ok(match normal_cyclic_infinite_subgroup {
                Some(true) => Verdict::not_icc(
                    Statement::SeifertConjecture,
                    "π₁ has a normal infinite cyclic subgroup, so M is Seifert",
                    Witness::symbolic(
                        "generator z of the normal infinite cyclic subgroup",
                        "conjugation preserves ⟨z⟩, so the class of z lies in {z, z'}",
                    ),
                )
                .cite(
                    Statement::Prop2,
                    "an infinite group with a finite nontrivial class is not ICC",
                ),
                Some(false) => Verdict::icc(
                    Statement::Theorem12,
                    "irreducible, π₁ infinite and without a normal infinite cyclic subgroup: not Seifert, so ICC",
                ),
                None => Verdict::unknown(
                    Statement::Theorem12,
                    "hypotheses not met: normal_cyclic_infinite_subgroup is not supplied",
                ),
            })
        }
    }
}

pub fn decide_icc_orientable(m: &ManifoldDescriptor) -> Result<Verdict> {
    if !m.orientable {
        return usage("decide_icc_orientable needs an orientable descriptor");
    }
    m.validate()?;
    let p = poincare_variety(m);
    let head = Verdict::icc(
        Statement::Theorem13,
        format!(
            "decided on the Poincaré variety 𝒫(M) with {} summand(s)",
            p.pieces.len()
        ),
    );
    let v = if p.pieces.len() == 1 {
        decide_orientable_piece(&p.pieces[0])?
    } else {
        decide_sum(&p)?
    };
    Ok(v.after(&head))
}

fn outside_theorem19(detail: &str) -> Verdict {
    Verdict::unknown(Statement::Theorem19, format!("outside Theorem 19 hypotheses: {detail}"))
}

fn decide_nonorientable_piece(piece: &PrimePiece) -> Result<Verdict> {
    match piece {
        PrimePiece::Seifert(_) => Ok(Verdict::not_icc(
            Statement::Theorem19,
            "M is a Seifert manifold",
            Witness::symbolic(
                "regular fiber class h",
                "every element fixes or inverts h, so its class lies in {h, h'}",
            ),
        )
        .cite(
            Statement::Prop2,
            "an infinite group with a finite nontrivial class is not ICC",
        )),
        PrimePiece::Hyperbolic { finite_volume: true } => {
            let sub = Verdict::icc(
                Statement::Prop21,
                "the orientation double cover is finite-volume hyperbolic: its π₁ is a lattice in PSL(2, C)",
            );
            Ok(icc_index_two_lift_torsion_free(&sub))
        }
        PrimePiece::Hyperbolic { finite_volume: false } => Ok(Verdict::unknown(
            Statement::Prop21,
            "hypotheses not met: the hyperbolic structure has infinite volume",
        )),
        PrimePiece::TorusBundle { monodromy } => decide_group(&Group::semidirect(monodromy.clone())?),
        PrimePiece::SphereBundle { .. } => infinite_cyclic_verdict("S² ⋊ S¹"),
        PrimePiece::HomotopySphere => Ok(Verdict::finite(Cardinal::Finite(1))),
        PrimePiece::OtherIrreducible {
            pi1_order,
            seifert_mod_p,
            homotopy_p2_x_s1,
            ..
        } => {
            if let Cardinal::Finite(_) = pi1_order {
                return Ok(Verdict::finite(*pi1_order));
            }
            if *homotopy_p2_x_s1 == Some(true) {
                return Ok(Verdict::not_icc(
                    Statement::Lemma16,
                    "M has the homotopy type of P² × S¹: π₁ = Z × Z/2",
                    Witness::symbolic("the element of order 2", "it is central, so its class is a singleton"),
                ));
            }
            Ok(match seifert_mod_p {
                Some(true) => Verdict::not_icc(
                    Statement::Theorem15,
                    "M is Seifert modulo P: π₁ has a nontrivial normal cyclic subgroup",
                    Witness::symbolic(
                        "generator z of the normal cyclic subgroup",
                        "conjugation preserves ⟨z⟩, so the class of z lies in {z, z'}",
                    ),
                )
                .cite(
                    Statement::Prop2,
                    "an infinite group with a finite nontrivial class is not ICC",
                ),
                Some(false) => Verdict::icc(
                    Statement::Prop18,
                    "π₁ infinite, no non-standard P² × I, and not Seifert modulo P",
                )
                .cite(Statement::Theorem19, "the four conditions are equivalent"),
                None => Verdict::unknown(Statement::Prop18, "hypotheses not met: seifert_mod_p is not supplied"),
            })
        }
    }
}

pub fn decide_icc_nonorientable(m: &ManifoldDescriptor) -> Result<Verdict> {
    if m.orientable {
        return usage("decide_icc_nonorientable needs a non-orientable descriptor");
    }
    m.validate()?;
    let p = poincare_variety(m);
    let head = Verdict::icc(
        Statement::Theorem19,
        format!(
            "decided on the Poincaré variety 𝒫(M) with {} summand(s)",
            p.pieces.len()
        ),
    );
    for piece in &p.pieces {
        if let PrimePiece::OtherIrreducible {
            contains_nonstandard_p2xi,
            ..
        } = piece
        {
            match contains_nonstandard_p2xi {
                Some(false) => {}
                Some(true) => return Ok(outside_theorem19("a piece contains a non-standard P² × I").after(&head)),
                None => {
                    return Ok(outside_theorem19("contains_nonstandard_p2xi is not supplied").after(&head));
                }
            }
        }
    }
    let v = if p.pieces.len() == 1 {
        decide_nonorientable_piece(&p.pieces[0])?
    } else {
        let orders: Vec<Cardinal> = p.pieces.iter().map(PrimePiece::pi1_order).collect::<Result<_>>()?;
        if orders == [Cardinal::Finite(2), Cardinal::Finite(2)] {
            return Ok(outside_theorem19("π₁ is infinite dihedral").after(&head));
        }
        decide_sum(&p)?
    };
    Ok(v.after(&head))
}

pub fn decide_manifold(m: &ManifoldDescriptor) -> Result<Verdict> {
    if m.orientable {
        decide_icc_orientable(m)
    } else {
        decide_icc_nonorientable(m)
    }
}

/// Property (ii) of the orientable classification, when the descriptor
/// supplies it: π₁ has a normal infinite cyclic subgroup.
pub fn supplied_normal_cyclic_flag(m: &ManifoldDescriptor) -> Option<bool> {
    let p = poincare_variety(m);
    match p.pieces.as_slice() {
        [PrimePiece::OtherIrreducible {
            normal_cyclic_infinite_subgroup,
            ..
        }] => *normal_cyclic_infinite_subgroup,
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotDescriptor {
    Torus {
        p: i64,
        q: i64,
    },
    Hyperbolic,
    /// The figure-eight knot: hyperbolic, with an exact matrix group.
    FigureEight,
    Other {
        is_torus: bool,
    },
}

impl KnotDescriptor {
    pub fn validate(&self) -> Result<()> {
        if let KnotDescriptor::Torus { p, q } = self {
            if *p == 0 || *q == 0 {
                return usage("torus-knot parameters must be nonzero");
            }
            if num_integer::gcd(*p, *q) != 1 {
                return usage(format!("torus-knot parameters ({p}, {q}) are not coprime"));
            }
        }
        Ok(())
    }

    /// The knot group with a named central element where there is one.
    pub fn realize(&self) -> Result<Option<(Group, Option<GroupElement>)>> {
        self.validate()?;
        Ok(match self {
            KnotDescriptor::Torus { p, q } => {
                let (p, q) = (p.abs(), q.abs());
                if p.min(q) == 1 {
                    Some((Group::infinite_cyclic().renamed(vec!["x".into()])?, None))
                } else {
                    let g = torus_knot_group(p, q)?;
                    let c = g.parse_element(&format!("x^{p}"))?;
                    Some((g, Some(c)))
                }
            }
            KnotDescriptor::FigureEight => Some((figure8_group(), None)),
            _ => None,
        })
    }
}

/// ⟨x, y | xᵖ = y^q⟩ as the fibered group with h = xᵖ.
pub fn torus_knot_group(p: i64, q: i64) -> Result<Group> {
    Group::fibered(
        vec![
            FiberFactor::Periodic { alpha: p, beta: 1 },
            FiberFactor::Periodic { alpha: q, beta: 1 },
        ],
        vec!["x".into(), "y".into(), "h".into()],
    )
}

pub fn decide_icc_knot(k: &KnotDescriptor) -> Result<Verdict> {
    k.validate()?;
    let infinite = Verdict::icc(
        Statement::Cor20,
        "knot groups are infinite: the abelianization is infinite cyclic",
    );
    let v = match k {
        KnotDescriptor::Torus { p, q } => {
            let (p, q) = (p.abs(), q.abs());
            if p.min(q) == 1 {
                infinite_cyclic_verdict("the unknot")?
                    .cite(Statement::Cor20, format!("T({p}, {q}) is the trivial torus knot"))
            } else {
                let g = torus_knot_group(p, q)?;
                let c = g.parse_element(&format!("x^{p}"))?;
                let mut w = Witness::element(
                    &g,
                    c,
                    format!("x^{p} = y^{q} commutes with x and y, so it is central and its class is a singleton"),
                );
                w.description = format!("x^{p}");
                Verdict::not_icc(Statement::Cor20, format!("T({p}, {q}) is a torus knot"), w).cite(
                    Statement::Prop2,
                    "an infinite group with a finite nontrivial class is not ICC",
                )
            }
        }
        KnotDescriptor::Hyperbolic | KnotDescriptor::FigureEight => {
            Verdict::icc(Statement::Cor20, "a hyperbolic knot is not a torus knot")
                .cite(Statement::Prop21, "the complement is finite-volume hyperbolic")
        }
        KnotDescriptor::Other { is_torus: false } => Verdict::icc(Statement::Cor20, "the knot is not a torus knot"),
        KnotDescriptor::Other { is_torus: true } => Verdict::not_icc(
            Statement::Cor20,
            "the knot is a torus knot",
            Witness::symbolic(
                "x^p = y^q",
                "central in ⟨x, y | x^p = y^q⟩, so its class is a singleton",
            ),
        ),
    };
    Ok(v.after(&infinite))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDescriptor {
    pub components: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_seifert_fiber_union: Option<bool>,
}

pub fn decide_icc_link(l: &LinkDescriptor) -> Result<Verdict> {
    if l.components == 0 {
        return usage("a link has at least one component");
    }
    Ok(match l.is_seifert_fiber_union {
        Some(true) => Verdict::not_icc(
            Statement::LinkRemark,
            format!(
                "the {}-component link is a union of fibers of a Seifert fibration of S³",
                l.components
            ),
            Witness::symbolic(
                "regular fiber class h of the complement",
                "h is central in the complement's group, so its class is a singleton",
            ),
        )
        .cite(
            Statement::Prop2,
            "an infinite group with a finite nontrivial class is not ICC",
        ),
        Some(false) => Verdict::icc(
            Statement::LinkRemark,
            format!("the {}-component link is not a union of Seifert fibers", l.components),
        ),
        None => Verdict::unknown(
            Statement::LinkRemark,
            "hypotheses not met: is_seifert_fiber_union is not supplied",
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::commutes_with_generators;

    fn t3() -> PrimePiece {
        PrimePiece::Seifert(SeifertInvariants::closed(1, true, vec![], 0))
    }

    fn trefoil() -> PrimePiece {
        PrimePiece::Seifert(SeifertInvariants::bounded(0, true, 1, vec![(2, 1), (3, 1)]))
    }

    fn rp3() -> PrimePiece {
        PrimePiece::Seifert(SeifertInvariants::closed(0, true, vec![], 2))
    }

    fn orientable(pieces: Vec<PrimePiece>) -> ManifoldDescriptor {
        ManifoldDescriptor::new(true, pieces)
    }

    #[test]
    fn poincare_variety_examples() {
        let m = orientable(vec![t3(), PrimePiece::HomotopySphere]);
        assert_eq!(poincare_variety(&m).pieces, vec![t3()]);
        let s3 = orientable(vec![PrimePiece::HomotopySphere]);
        assert_eq!(poincare_variety(&s3).pieces, vec![PrimePiece::HomotopySphere]);
        let plain = orientable(vec![t3(), rp3()]);
        assert_eq!(poincare_variety(&plain).pieces, plain.pieces);
        let p = poincare_variety(&m);
        assert_eq!(poincare_variety(&p), p);
        assert!(p.boundary_spheres_capped);
    }

    #[test]
    fn trefoil_complement_is_not_icc() {
        let v = decide_icc_orientable(&orientable(vec![trefoil()])).unwrap();
        assert_eq!(v.status, Status::NotIcc);
        assert!(v.reasons.cites(Statement::Prop2));
        let (g, h) = v.witness_element().unwrap();
        assert_eq!(*h, g.parse_element("x^2").unwrap());
        assert!(commutes_with_generators(g, h).unwrap());
    }

    #[test]
    fn orientable_single_pieces() {
        let hyp = decide_icc_orientable(&orientable(vec![PrimePiece::Hyperbolic { finite_volume: true }])).unwrap();
        assert_eq!(hyp.status, Status::Icc);
        assert!(hyp.reasons.cites(Statement::Prop21));
        let s2s1 = decide_icc_orientable(&orientable(vec![PrimePiece::SphereBundle {
            orientable_bundle: true,
        }]))
        .unwrap();
        assert_eq!(s2s1.status, Status::NotIcc);
        let anosov = PrimePiece::TorusBundle {
            monodromy: vec![vec![2, 1], vec![1, 1]],
        };
        let v = decide_icc_orientable(&orientable(vec![anosov])).unwrap();
        assert_eq!(v.status, Status::Icc);
        assert!(v.reasons.cites(Statement::Lemma10));
        let mut flagged = PrimePiece::other_irreducible(Cardinal::Infinite);
        assert_eq!(
            decide_icc_orientable(&orientable(vec![flagged.clone()]))
                .unwrap()
                .status,
            Status::Unknown
        );
        if let PrimePiece::OtherIrreducible {
            normal_cyclic_infinite_subgroup,
            ..
        } = &mut flagged
        {
            *normal_cyclic_infinite_subgroup = Some(true);
        }
        assert_eq!(
            decide_icc_orientable(&orientable(vec![flagged])).unwrap().status,
            Status::NotIcc
        );
    }

    #[test]
    fn connected_sums() {
        let v = decide_icc_orientable(&orientable(vec![rp3(), rp3()])).unwrap();
        assert_eq!(v.status, Status::NotIcc);
        assert!(v.reasons.0.iter().any(|c| c.detail.contains("infinite dihedral")));
        let (g, w) = v.witness_element().unwrap();
        assert_eq!(g.render(w), "a b");
        let v = decide_icc_orientable(&orientable(vec![rp3(), PrimePiece::HomotopySphere, t3()])).unwrap();
        assert_eq!(v.status, Status::Icc);
        assert!(v.reasons.cites(Statement::Prop3i));
        let v = decide_icc_orientable(&orientable(vec![rp3(), rp3(), rp3()])).unwrap();
        assert_eq!(v.status, Status::Icc);
    }

    #[test]
    fn two_projective_spaces_as_one_seifert_piece() {
        let s = SeifertInvariants::closed(1, false, vec![], 0);
        let v = decide_icc_orientable(&orientable(vec![PrimePiece::Seifert(s)])).unwrap();
        assert_eq!(v.status, Status::NotIcc);
        let (g, h) = v.witness_element().unwrap();
        let rep = crate::oracle::conjugacy_class_ball(g, h, 6, 3).unwrap();
        assert_eq!(rep.conjugates.len(), 2);
    }

    #[test]
    fn orientation_mismatches_are_usage_errors() {
        let m = ManifoldDescriptor::new(false, vec![t3()]);
        assert!(matches!(decide_icc_orientable(&m), Err(Error::Usage(_))));
        let m = orientable(vec![t3()]);
        assert!(matches!(decide_icc_nonorientable(&m), Err(Error::Usage(_))));
        let flip = orientable(vec![PrimePiece::TorusBundle {
            monodromy: vec![vec![0, 1], vec![1, 0]],
        }]);
        assert!(flip.validate().is_err());
        assert!(orientable(vec![]).validate().is_err());
    }

    fn nonorientable(flags: (Option<bool>, Option<bool>)) -> ManifoldDescriptor {
        ManifoldDescriptor::new(
            false,
            vec![PrimePiece::OtherIrreducible {
                pi1_order: Cardinal::Infinite,
                normal_cyclic_infinite_subgroup: None,
                contains_nonstandard_p2xi: flags.0,
                seifert_mod_p: flags.1,
                homotopy_p2_x_s1: None,
            }],
        )
    }

    #[test]
    fn nonorientable_flags() {
        let st = |m| decide_icc_nonorientable(&m).unwrap().status;
        assert_eq!(st(nonorientable((Some(false), Some(true)))), Status::NotIcc);
        assert_eq!(st(nonorientable((Some(false), Some(false)))), Status::Icc);
        assert_eq!(st(nonorientable((Some(true), Some(false)))), Status::Unknown);
        assert_eq!(st(nonorientable((None, Some(false)))), Status::Unknown);
        let v = decide_icc_nonorientable(&nonorientable((Some(true), None))).unwrap();
        assert!(v
            .reasons
            .0
            .iter()
            .any(|c| c.detail.contains("outside Theorem 19 hypotheses")));
    }

    #[test]
    fn knots() {
        let v = decide_icc_knot(&KnotDescriptor::Torus { p: 2, q: 3 }).unwrap();
        assert_eq!(v.status, Status::NotIcc);
        assert_eq!(v.witness.as_ref().unwrap().description, "x^2");
        assert!(v.reasons.cites(Statement::Cor20));
        assert_eq!(
            decide_icc_knot(&KnotDescriptor::Hyperbolic).unwrap().status,
            Status::Icc
        );
        assert_eq!(
            decide_icc_knot(&KnotDescriptor::Torus { p: 1, q: 1 }).unwrap().status,
            Status::NotIcc
        );
        assert!(decide_icc_knot(&KnotDescriptor::Torus { p: 2, q: 4 }).is_err());
        assert_eq!(
            decide_icc_knot(&KnotDescriptor::Other { is_torus: false })
                .unwrap()
                .status,
            Status::Icc
        );
    }

    #[test]
    fn torus_knot_and_seifert_paths_agree() {
        let knot = decide_icc_knot(&KnotDescriptor::Torus { p: 2, q: 3 }).unwrap();
        let seif = decide_icc_orientable(&orientable(vec![trefoil()])).unwrap();
        assert_eq!(knot.status, seif.status);
        let (gk, wk) = knot.witness_element().unwrap();
        let (gs, ws) = seif.witness_element().unwrap();
        assert_eq!(gk.structure(), gs.structure());
        assert_eq!(wk.form(), ws.form());
    }

    #[test]
    fn links() {
        let l = |f| LinkDescriptor {
            components: 2,
            is_seifert_fiber_union: f,
        };
        assert_eq!(decide_icc_link(&l(Some(true))).unwrap().status, Status::NotIcc);
        assert_eq!(decide_icc_link(&l(Some(false))).unwrap().status, Status::Icc);
        assert_eq!(decide_icc_link(&l(None)).unwrap().status, Status::Unknown);
    }

    #[test]
    fn piece_serde_shape() {
        let json = r#"{"kind":"torus_bundle","monodromy":[[2,1],[1,1]]}"#;
        let p: PrimePiece = serde_json::from_str(json).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), json);
        let s: PrimePiece =
            serde_json::from_str(r#"{"kind":"seifert","base_genus":0,"base_orientable":true,"boundary_components":1,"exceptional_fibers":[[2,1],[3,1]]}"#)
                .unwrap();
        assert_eq!(s, trefoil());
        let o: PrimePiece = serde_json::from_str(r#"{"kind":"other_irreducible","pi1_order":"infinite"}"#).unwrap();
        assert_eq!(o.pi1_order().unwrap(), Cardinal::Infinite);
        assert!(serde_json::from_str::<PrimePiece>(r#"{"kind":"hyperbolic","finite_volume":true,"x":1}"#).is_err());
        assert!(serde_json::from_str::<PrimePiece>(
            r#"{"kind":"seifert","base_genus":0,"base_orientable":true,"bogus":1}"#
        )
        .is_err());
        assert!(serde_json::from_str::<PrimePiece>(r#"{"kind":"other_irreducible","pi1_order":0}"#).is_err());
    }
}
