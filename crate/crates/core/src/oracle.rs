//! Brute-force evidence on Cayley balls: conjugacy-class growth, an
//! approximation of the union of finite classes, and greedy sequences
//! witnessing strong ICC.
//!
//! Everything here is a lower bound or a search result, not a proof of
//! finiteness. The one exception is [`commutes_with_generators`], which is
//! exact because normal forms already encode every relator.

use std::collections::HashSet;

use crate::error::{usage, Result};
use crate::group::{Group, GroupElement};

pub const DEFAULT_WINDOW: usize = 3;

#[derive(Clone, Debug)]
pub struct ClassBallReport {
    pub element: GroupElement,
    pub radius: usize,
    pub window: usize,
    /// Distinct w g w⁻¹ for |w| ≤ radius, in order of first discovery.
    pub conjugates: Vec<GroupElement>,
    /// Number of distinct conjugates by the ball of each radius 0..=radius.
    pub counts_by_radius: Vec<usize>,
    /// The conjugate set did not change over the last `window` radii.
    pub stabilized: bool,
}

fn check_radius(radius: usize, window: usize) -> Result<()> {
    if window == 0 || radius < window {
        return usage(format!(
            "need radius ≥ window ≥ 1, got radius {radius} and window {window}"
        ));
    }
    Ok(())
}

/// Conjugates of `g` by each layer of the ball, deduplicated, with running
/// counts per radius.
fn class_by_layers(
    group: &Group,
    layers: &[Vec<GroupElement>],
    g: &GroupElement,
) -> Result<(Vec<GroupElement>, Vec<usize>)> {
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut conjugates = Vec::new();
    let mut counts = Vec::with_capacity(layers.len());
    for layer in layers {
        for w in layer {
            let c = group.conjugate(g, w)?;
            if seen.insert(c.clone()) {
                conjugates.push(c);
            }
        }
        counts.push(conjugates.len());
    }
    Ok((conjugates, counts))
}

fn stabilized(counts: &[usize], window: usize) -> bool {
    let r = counts.len() - 1;
    // Conjugate sets only grow, so equal counts mean equal sets.
    counts[r] == counts[r - window]
}

pub fn conjugacy_class_ball(group: &Group, g: &GroupElement, radius: usize, window: usize) -> Result<ClassBallReport> {
    check_radius(radius, window)?;
    let layers = group.ball_layers(radius);
    let (conjugates, counts_by_radius) = class_by_layers(group, &layers, g)?;
    Ok(ClassBallReport {
        element: g.clone(),
        radius,
        window,
        stabilized: stabilized(&counts_by_radius, window),
        conjugates,
        counts_by_radius,
    })
}

/// Nontrivial elements of ball(radius − window) whose class ball
/// stabilized: an over-approximation of the union of finite classes
/// restricted to the ball.
pub fn fc_center_candidates(group: &Group, radius: usize, window: usize) -> Result<Vec<GroupElement>> {
    check_radius(radius, window)?;
    let layers = group.ball_layers(radius);
    let mut out = Vec::new();
    for x in layers[..=radius - window].iter().flatten() {
        if group.is_identity(x) {
            continue;
        }
        let (_, counts) = class_by_layers(group, &layers, x)?;
        if stabilized(&counts, window) {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// Whether `g` commutes with every generator. Normal forms satisfy all
/// relators, so this proves `g` central.
pub fn commutes_with_generators(group: &Group, g: &GroupElement) -> Result<bool> {
    for i in 0..group.generators().len() {
        if !group.commutes(g, &group.generator(i)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct WitnessSequence {
    pub targets: Vec<GroupElement>,
    pub gammas: Vec<GroupElement>,
    pub requested: usize,
    /// All requested γⱼ were found and every target's conjugates by them
    /// are pairwise distinct.
    pub verified: bool,
    /// Radius of the last γ chosen when verified, else the searched radius.
    pub radius: usize,
}

/// Greedy breadth-first search for γ₁, …, γ_k with γⱼ f γⱼ⁻¹ pairwise
/// distinct for each f in `targets`.
pub fn strong_icc_witness(
    group: &Group,
    targets: &[GroupElement],
    k: usize,
    search_radius: usize,
) -> Result<WitnessSequence> {
    if k == 0 {
        return usage("witness length must be at least 1");
    }
    for f in targets {
        if group.is_identity(f) {
            return usage("the target set must not contain the identity");
        }
        group.multiply(f, f)?;
    }
    let mut seen: Vec<HashSet<GroupElement>> = vec![HashSet::new(); targets.len()];
    let mut gammas = Vec::new();
    let mut radius = search_radius;
    group.walk_ball(search_radius, |r, layer| {
        for gamma in layer {
            // Owners already checked above, so conjugation cannot fail.
            let conj: Vec<GroupElement> = targets
                .iter()
                .map(|f| group.conjugate(f, gamma).expect("same owner"))
                .collect();
            if conj.iter().zip(&seen).any(|(c, s)| s.contains(c)) {
                continue;
            }
            for (c, s) in conj.into_iter().zip(seen.iter_mut()) {
                s.insert(c);
            }
            gammas.push(gamma.clone());
            if gammas.len() == k {
                radius = r;
                return false;
            }
        }
        true
    });
    Ok(WitnessSequence {
        targets: targets.to_vec(),
        verified: gammas.len() == k,
        requested: k,
        gammas,
        radius,
    })
}

/// Independent re-check of a sequence's defining inequalities.
pub fn verify_witness(group: &Group, targets: &[GroupElement], gammas: &[GroupElement]) -> Result<bool> {
    for f in targets {
        let mut seen = HashSet::new();
        for g in gammas {
            if !seen.insert(group.conjugate(f, g)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral() -> Group {
        let z2 = Group::finite_cyclic(2).unwrap();
        Group::free_product(&z2, &z2).unwrap()
    }

    fn free2() -> Group {
        let z = Group::infinite_cyclic();
        Group::free_product(&z, &z)
            .unwrap()
            .renamed(vec!["x".into(), "y".into()])
            .unwrap()
    }

    #[test]
    fn dihedral_translation_class() {
        let d = dihedral();
        let ab = d.parse_element("a b").unwrap();
        let rep = conjugacy_class_ball(&d, &ab, 6, 3).unwrap();
        assert!(rep.stabilized);
        assert_eq!(rep.counts_by_radius, vec![1, 2, 2, 2, 2, 2, 2]);
        assert!(rep.conjugates.contains(&d.parse_element("b a").unwrap()));
    }

    #[test]
    fn radius_must_cover_window() {
        let d = dihedral();
        assert!(conjugacy_class_ball(&d, &d.identity(), 2, 3).is_err());
        assert!(conjugacy_class_ball(&d, &d.identity(), 2, 0).is_err());
        let id = conjugacy_class_ball(&d, &d.identity(), 3, 3).unwrap();
        assert_eq!(id.conjugates.len(), 1);
        assert!(id.stabilized);
    }

    #[test]
    fn free_group_has_no_fc_candidates() {
        assert!(fc_center_candidates(&free2(), 6, 3).unwrap().is_empty());
    }

    #[test]
    fn dihedral_fc_candidates_are_translations() {
        let d = dihedral();
        let got = fc_center_candidates(&d, 8, 3).unwrap();
        let names: Vec<String> = got.iter().map(|x| d.render(x)).collect();
        assert_eq!(got.len(), 4, "{names:?}");
        for x in &got {
            let rep = conjugacy_class_ball(&d, x, 8, 3).unwrap();
            assert_eq!(rep.conjugates.len(), 2);
        }
    }

    #[test]
    fn abelian_fc_candidates_fill_the_ball() {
        let z2 = Group::semidirect(vec![vec![1]]).unwrap();
        let got = fc_center_candidates(&z2, 4, 1).unwrap();
        assert_eq!(got.len(), z2.enumerate_ball(3).len() - 1);
    }

    #[test]
    fn free_group_witness_sequence() {
        let f = free2();
        let x = f.parse_element("x").unwrap();
        let w = strong_icc_witness(&f, std::slice::from_ref(&x), 3, 4).unwrap();
        assert!(w.verified);
        let rendered: Vec<String> = w.gammas.iter().map(|g| f.render(g)).collect();
        assert_eq!(rendered, vec!["1", "y", "y'"]);
        assert!(verify_witness(&f, &[x], &w.gammas).unwrap());
        assert_eq!(w.radius, 1);
    }

    #[test]
    fn dihedral_witness_exhausts() {
        let d = dihedral();
        let ab = d.parse_element("a b").unwrap();
        for r in [2, 5, 8] {
            let w = strong_icc_witness(&d, std::slice::from_ref(&ab), 3, r).unwrap();
            assert!(!w.verified);
            assert_eq!(w.gammas.len(), 2);
            assert_eq!(w.radius, r);
        }
        assert!(strong_icc_witness(&d, &[d.identity()], 3, 2).is_err());
    }

    #[test]
    fn central_element_is_recognized() {
        let g = Group::semidirect(vec![vec![0, -1], vec![1, 0]]).unwrap();
        let t4 = g.parse_element("t^4").unwrap();
        assert!(commutes_with_generators(&g, &t4).unwrap());
        let t = g.parse_element("t").unwrap();
        assert!(!commutes_with_generators(&g, &t).unwrap());
    }
}
