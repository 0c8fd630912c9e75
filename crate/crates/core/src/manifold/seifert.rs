//! Seifert invariants, the standard presentation of π₁, and a concrete
//! realization with the regular fiber h as a distinguished element.
//!
//! Conventions: the exceptional fiber (α, β) contributes qᵅ = hᵝ, and a
//! closed base contributes q₁⋯qₙ · Π[aᵢ, bᵢ] = h⁻ᵇ (orientable base) or
//! q₁⋯qₙ · c₁²⋯cₖ² = h⁻ᵇ (non-orientable base). The total space is taken
//! orientable: h is central over an orientable base and inverted by each
//! one-sided generator cᵢ otherwise.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::group::{Cardinal, FiberFactor, Group, GroupElement, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeifertInvariants {
    pub base_genus: u32,
    pub base_orientable: bool,
    #[serde(default)]
    pub boundary_components: u32,
    #[serde(default)]
    pub exceptional_fibers: Vec<(i64, i64)>,
    /// The obstruction b; present exactly when the base is closed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_obstruction: Option<i64>,
}

const MAX_MULTIPLICITY: i64 = 1 << 20;

impl SeifertInvariants {
    pub fn closed(base_genus: u32, base_orientable: bool, fibers: Vec<(i64, i64)>, b: i64) -> Self {
        SeifertInvariants {
            base_genus,
            base_orientable,
            boundary_components: 0,
            exceptional_fibers: fibers,
            euler_obstruction: Some(b),
        }
    }

    pub fn bounded(base_genus: u32, base_orientable: bool, boundary: u32, fibers: Vec<(i64, i64)>) -> Self {
        SeifertInvariants {
            base_genus,
            base_orientable,
            boundary_components: boundary,
            exceptional_fibers: fibers,
            euler_obstruction: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.base_orientable && self.base_genus == 0 {
            return usage("a non-orientable base has genus at least 1");
        }
        for &(a, b) in &self.exceptional_fibers {
            if !(2..=MAX_MULTIPLICITY).contains(&a) {
                return usage(format!(
                    "exceptional fiber multiplicity {a} must lie in 2..={MAX_MULTIPLICITY}"
                ));
            }
            if a.gcd(&b) != 1 {
                return usage(format!("exceptional fiber ({a}, {b}) is not a coprime pair"));
            }
            if b.abs() > MAX_MULTIPLICITY {
                return usage(format!("exceptional fiber ({a}, {b}) is out of range"));
            }
        }
        match (self.boundary_components, self.euler_obstruction) {
            (0, None) => usage("a closed base needs euler_obstruction"),
            (n, Some(_)) if n > 0 => usage("euler_obstruction is only defined for a closed base"),
            (_, Some(b)) if b.abs() > MAX_MULTIPLICITY => usage(format!("euler_obstruction {b} is out of range")),
            _ => Ok(()),
        }
    }

    fn base_euler(&self) -> i128 {
        let g = self.base_genus as i128;
        let handles = if self.base_orientable { 2 * g } else { g };
        2 - handles - self.boundary_components as i128
    }

    /// χ of the base orbifold, 2 − 2g − B − Σ(1 − 1/α) or 2 − g − B − Σ(1 − 1/α).
    pub fn orbifold_euler(&self) -> Fraction {
        self.exceptional_fibers
            .iter()
            .fold(Fraction::int(self.base_euler()), |acc, &(a, _)| {
                acc.add(Fraction::new(-(a as i128) + 1, a as i128))
            })
    }

    /// e = −(b + Σ β/α) for a closed base.
    pub fn euler_number(&self) -> Option<Fraction> {
        let b = self.euler_obstruction?;
        let sum = self
            .exceptional_fibers
            .iter()
            .fold(Fraction::int(b as i128), |acc, &(a, beta)| {
                acc.add(Fraction::new(beta as i128, a as i128))
            });
        Some(sum.neg())
    }

    /// |π₁|: finite exactly for closed bases with χ > 0 and e ≠ 0.
    pub fn pi1_order(&self) -> Result<Cardinal> {
        self.validate()?;
        let Some(e) = self.euler_number() else {
            return Ok(Cardinal::Infinite);
        };
        let chi = self.orbifold_euler();
        if chi.num <= 0 || e.num == 0 {
            return Ok(Cardinal::Infinite);
        }
        if self.base_orientable && self.exceptional_fibers.len() <= 2 {
            return Ok(Cardinal::Finite(self.cyclic_order()? as u64));
        }
        // Good spherical orbifold: |π₁| = |π₁ᵒʳᵇ|² · |e| = 4|e| / χ².
        let order = Fraction::int(4).mul(e.abs()).div(chi.mul(chi));
        if order.den != 1 {
            return Err(Error::Invalid(format!(
                "non-integral order {}/{} from Seifert data",
                order.num, order.den
            )));
        }
        u64::try_from(order.num)
            .map(Cardinal::Finite)
            .map_err(|_| Error::Overflow("Seifert group order"))
    }

    /// Over S² with at most two exceptional fibers π₁ is cyclic of order
    /// |α₁α₂b + α₁β₂ + α₂β₁| (0 meaning Z), missing fibers read as (1, 0).
    fn cyclic_order(&self) -> Result<u128> {
        let (a1, b1, a2, b2) = self.two_fibers();
        let b = self.euler_obstruction.unwrap_or(0) as i128;
        let n = a1 * a2 * b + a1 * b2 + a2 * b1;
        Ok(n.unsigned_abs())
    }

    fn two_fibers(&self) -> (i128, i128, i128, i128) {
        let mut f = self.exceptional_fibers.iter().map(|&(a, b)| (a as i128, b as i128));
        let (a1, b1) = f.next().unwrap_or((1, 0));
        let (a2, b2) = f.next().unwrap_or((1, 0));
        (a1, b1, a2, b2)
    }
}

/// Exact rational with positive denominator, reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: i128,
    pub den: i128,
}

impl Fraction {
    pub fn new(num: i128, den: i128) -> Fraction {
        let g = num.gcd(&den).max(1) * den.signum();
        Fraction {
            num: num / g,
            den: den / g,
        }
    }

    pub fn int(n: i128) -> Fraction {
        Fraction { num: n, den: 1 }
    }

    fn add(self, o: Fraction) -> Fraction {
        Fraction::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    fn mul(self, o: Fraction) -> Fraction {
        Fraction::new(self.num * o.num, self.den * o.den)
    }

    fn div(self, o: Fraction) -> Fraction {
        Fraction::new(self.num * o.den, self.den * o.num)
    }

    fn neg(self) -> Fraction {
        Fraction {
            num: -self.num,
            den: self.den,
        }
    }

    fn abs(self) -> Fraction {
        Fraction {
            num: self.num.abs(),
            den: self.den,
        }
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A group with normal forms in which the fiber class is a concrete element.
#[derive(Clone, Debug)]
pub struct Realization {
    pub group: Group,
    pub fiber: GroupElement,
    /// How the realization relates to the emitted presentation.
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct SeifertGroup {
    pub invariants: SeifertInvariants,
    pub generators: Vec<String>,
    /// Defining relations, written as equations.
    pub relations: Vec<String>,
    pub fiber_word: String,
    pub order: Cardinal,
    /// h is central (orientable base); otherwise each cᵢ inverts it.
    pub fiber_central: bool,
    pub realization: Option<Realization>,
}

impl SeifertGroup {
    /// Whether the presentation itself shows the class of h is inside
    /// {h, h⁻¹}: every generator s has a relation s h s⁻¹ = h^±1.
    pub fn fiber_class_bounded_by_relations(&self) -> bool {
        let h = &self.fiber_word;
        self.generators.iter().filter(|s| *s != h).all(|s| {
            self.relations
                .iter()
                .any(|r| *r == format!("{s} {h} {s}' = {h}") || *r == format!("{s} {h} {s}' = {h}'"))
        })
    }
}

struct Builder {
    names: Vec<String>,
    relators: Vec<Vec<Letter>>,
    relations: Vec<String>,
}

fn power_text(name: &str, k: i64) -> String {
    match k {
        0 => "1".into(),
        1 => name.into(),
        -1 => format!("{name}'"),
        _ => format!("{name}^{k}"),
    }
}

impl Builder {
    fn relate(&mut self, lhs: Vec<Letter>, rhs: Vec<Letter>) {
        let show = |w: &[Letter]| -> String {
            if w.is_empty() {
                return "1".into();
            }
            w.iter()
                .map(|l| power_text(&self.names[l.generator], l.exponent))
                .collect::<Vec<_>>()
                .join(" ")
        };
        self.relations.push(format!("{} = {}", show(&lhs), show(&rhs)));
        let mut r = lhs;
        r.extend(rhs.iter().rev().map(|l| l.inverse()));
        self.relators.push(r);
    }
}

fn fiber_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("q{i}")).collect()
    }
}

/// Completion budgets: finite groups always complete, so they get room;
/// infinite ones are tried briefly.
const MAX_RULES_FINITE: usize = 400;
const MAX_RULES_INFINITE: usize = 60;

/// The standard presentation of π₁ with fiber h, and a realization when one
/// is available: the fibered normal form for bounded orientable bases, a
/// cyclic group or Z² ⋊ Z in the small closed cases, and a completed
/// rewriting system otherwise.
pub fn seifert_group(s: &SeifertInvariants) -> Result<SeifertGroup> {
    let order = s.pi1_order()?;
    let g = s.base_genus as usize;
    let mut names: Vec<String> = if s.base_orientable {
        (1..=g).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect()
    } else {
        (1..=g).map(|i| format!("c{i}")).collect()
    };
    let surface_gens = names.len();
    names.extend((1..s.boundary_components).map(|i| format!("d{i}")));
    let free_gens = names.len();
    names.extend(fiber_names(s.exceptional_fibers.len()));
    names.push("h".into());
    let h = names.len() - 1;
    let mut b = Builder {
        names,
        relators: Vec::new(),
        relations: Vec::new(),
    };
    for i in 0..h {
        let inverts = !s.base_orientable && i < surface_gens;
        let rhs = Letter::new(h, if inverts { -1 } else { 1 });
        b.relate(
            vec![Letter::new(i, 1), Letter::new(h, 1), Letter::new(i, -1)],
            vec![rhs],
        );
    }
    for (j, &(alpha, beta)) in s.exceptional_fibers.iter().enumerate() {
        let q = free_gens + j;
        let rhs = if beta == 0 { vec![] } else { vec![Letter::new(h, beta)] };
        b.relate(vec![Letter::new(q, alpha)], rhs);
    }
    if let Some(e) = s.euler_obstruction {
        let mut lhs: Vec<Letter> = (0..s.exceptional_fibers.len())
            .map(|j| Letter::new(free_gens + j, 1))
            .collect();
        if s.base_orientable {
            for i in 0..g {
                let (x, y) = (2 * i, 2 * i + 1);
                lhs.extend([
                    Letter::new(x, 1),
                    Letter::new(y, 1),
                    Letter::new(x, -1),
                    Letter::new(y, -1),
                ]);
            }
        } else {
            lhs.extend((0..g).map(|i| Letter::new(i, 2)));
        }
        let rhs = if e == 0 { vec![] } else { vec![Letter::new(h, -e)] };
        b.relate(lhs, rhs);
    }
    let realization = realize(s, &b, order)?;
    Ok(SeifertGroup {
        invariants: s.clone(),
        generators: b.names,
        relations: b.relations,
        fiber_word: "h".into(),
        order,
        fiber_central: s.base_orientable,
        realization,
    })
}

fn realize(s: &SeifertInvariants, b: &Builder, order: Cardinal) -> Result<Option<Realization>> {
    let h = b.names.len() - 1;
    if s.base_orientable && s.boundary_components > 0 {
        let free = b.names.len() - 1 - s.exceptional_fibers.len();
        let mut factors = vec![FiberFactor::Free; free];
        factors.extend(
            s.exceptional_fibers
                .iter()
                .map(|&(alpha, beta)| FiberFactor::Periodic { alpha, beta }),
        );
        let group = Group::fibered(factors, b.names.clone())?;
        let fiber = group.generator(h)?;
        return Ok(Some(Realization {
            group,
            fiber,
            note: "same generators; fibered normal form hᵏ · (free product syllables)".into(),
        }));
    }
    if s.base_orientable && s.base_genus == 0 && s.exceptional_fibers.len() <= 2 {
        let (a1, b1, _, _) = s.two_fibers();
        let n = s.cyclic_order()?;
        let group = if n == 0 {
            Group::infinite_cyclic()
        } else {
            Group::finite_cyclic(u64::try_from(n).map_err(|_| Error::Overflow("cyclic Seifert group"))?)?
        };
        let a = group.generator(0)?;
        let fiber = group.power(&a, a1 as i64)?;
        let note = if s.exceptional_fibers.is_empty() {
            "cyclic group generated by a = h".to_string()
        } else {
            format!("cyclic group generated by a, with h = a^{a1} and x = a^{b1}")
        };
        return Ok(Some(Realization { group, fiber, note }));
    }
    if s.base_orientable && s.base_genus == 1 && s.exceptional_fibers.is_empty() {
        // t e₁ t⁻¹ = e₁ e₂ᵇ is [a1, b1] = h⁻ᵇ with a1 = e₁, h = e₂, b1 = t.
        let e = s.euler_obstruction.expect("closed base");
        let group =
            Group::semidirect(vec![vec![1, 0], vec![e, 1]])?.renamed(vec!["a1".into(), "h".into(), "b1".into()])?;
        let fiber = group.generator(1)?;
        return Ok(Some(Realization {
            group,
            fiber,
            note: "Z² ⋊ Z with a1 = e1, h = e2, b1 = t".into(),
        }));
    }
    // h smallest moves fiber powers to the front; h largest to the back.
    let rest: Vec<usize> = (0..h).collect();
    let mut first = vec![h];
    first.extend(&rest);
    let mut last = rest.clone();
    last.push(h);
    let budget = if order.is_infinite() {
        MAX_RULES_INFINITE
    } else {
        MAX_RULES_FINITE
    };
    match Group::presented(b.names.clone(), &b.relators, &[first, last], budget, Some(order)) {
        Ok(group) => {
            let fiber = group.generator(h)?;
            Ok(Some(Realization {
                group,
                fiber,
                note: "same generators; shortlex normal forms of the presentation".into(),
            }))
        }
        Err(Error::Unsupported(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::commutes_with_generators;

    fn ball_size(g: &Group, radius: usize) -> usize {
        g.enumerate_ball(radius).len()
    }

    #[test]
    fn validation() {
        assert!(SeifertInvariants::closed(0, true, vec![(2, 2)], 0).validate().is_err());
        assert!(SeifertInvariants::closed(0, true, vec![(1, 0)], 0).validate().is_err());
        assert!(SeifertInvariants::bounded(0, true, 1, vec![]).validate().is_ok());
        let mut s = SeifertInvariants::bounded(0, true, 1, vec![]);
        s.euler_obstruction = Some(0);
        assert!(s.validate().is_err());
        s.boundary_components = 0;
        assert!(s.validate().is_ok());
        s.euler_obstruction = None;
        assert!(s.validate().is_err());
        assert!(SeifertInvariants::closed(0, false, vec![], 0).validate().is_err());
    }

    #[test]
    fn trefoil_complement() {
        let s = SeifertInvariants::bounded(0, true, 1, vec![(2, 1), (3, 1)]);
        let sg = seifert_group(&s).unwrap();
        assert_eq!(sg.generators, vec!["x", "y", "h"]);
        assert!(sg.relations.contains(&"x^2 = h".to_string()));
        assert!(sg.relations.contains(&"y^3 = h".to_string()));
        let r = sg.realization.unwrap();
        let x2 = r.group.parse_element("x^2").unwrap();
        let y3 = r.group.parse_element("y^3").unwrap();
        assert_eq!(x2, r.fiber);
        assert_eq!(y3, r.fiber);
        assert!(commutes_with_generators(&r.group, &r.fiber).unwrap());
        assert_eq!(sg.order, Cardinal::Infinite);
    }

    #[test]
    fn three_torus() {
        let s = SeifertInvariants::closed(1, true, vec![], 0);
        let sg = seifert_group(&s).unwrap();
        let r = sg.realization.unwrap();
        assert_eq!(r.group.render(&r.fiber), "h");
        let ball = r.group.enumerate_ball(1);
        for x in &ball {
            for y in &ball {
                assert!(r.group.commutes(x, y).unwrap());
            }
        }
        assert_eq!(ball_size(&r.group, 2), 25);
    }

    #[test]
    fn heisenberg_commutator_is_a_fiber_power() {
        let s = SeifertInvariants::closed(1, true, vec![], 2);
        let r = seifert_group(&s).unwrap().realization.unwrap();
        let comm = r.group.parse_element("a1 b1 a1' b1'").unwrap();
        assert_eq!(comm, r.group.power(&r.fiber, -2).unwrap());
    }

    #[test]
    fn lens_spaces_and_s2xs1() {
        let lens = SeifertInvariants::closed(0, true, vec![], 5);
        assert_eq!(lens.pi1_order().unwrap(), Cardinal::Finite(5));
        let s2s1 = SeifertInvariants::closed(0, true, vec![], 0);
        assert_eq!(s2s1.pi1_order().unwrap(), Cardinal::Infinite);
        let two = SeifertInvariants::closed(0, true, vec![(2, 1), (3, 1)], -1);
        // |2·3·(−1) + 2 + 3| = 1: a homology sphere with trivial π₁.
        assert_eq!(two.pi1_order().unwrap(), Cardinal::Finite(1));
        let sg = seifert_group(&SeifertInvariants::closed(0, true, vec![(2, 1), (3, 1)], 1)).unwrap();
        assert_eq!(sg.order, Cardinal::Finite(11));
        let r = sg.realization.unwrap();
        assert_eq!(r.group.render(&r.fiber), "a^2");
    }

    #[test]
    fn spherical_orders_match_the_presentation() {
        let cases = [
            SeifertInvariants::closed(0, true, vec![(2, 1), (2, 1), (2, 1)], -1),
            SeifertInvariants::closed(0, true, vec![(2, 1), (2, 1), (3, 1)], -1),
            SeifertInvariants::closed(0, true, vec![(2, -1), (3, 1), (3, 1)], 0),
            SeifertInvariants::closed(0, true, vec![(2, -1), (3, 1), (5, 1)], 0),
            SeifertInvariants::closed(1, false, vec![], 1),
            SeifertInvariants::closed(1, false, vec![], 3),
            SeifertInvariants::closed(1, false, vec![(2, 1)], 0),
            SeifertInvariants::closed(1, false, vec![(2, 1)], 1),
            SeifertInvariants::closed(1, false, vec![(3, 1)], -1),
        ];
        for s in cases {
            let sg = seifert_group(&s).unwrap();
            let Cardinal::Finite(n) = sg.order else {
                panic!("{s:?} should be finite")
            };
            let r = sg.realization.unwrap_or_else(|| panic!("{s:?} not realized"));
            let layers = r.group.ball_layers(n as usize);
            let total: usize = layers.iter().map(Vec::len).sum();
            assert_eq!(total as u64, n, "{s:?}");
        }
    }

    #[test]
    fn poincare_sphere_has_order_120() {
        let s = SeifertInvariants::closed(0, true, vec![(2, -1), (3, 1), (5, 1)], 0);
        assert_eq!(s.orbifold_euler(), Fraction::new(1, 30));
        assert_eq!(s.pi1_order().unwrap(), Cardinal::Finite(120));
    }

    #[test]
    fn two_projective_spaces() {
        let s = SeifertInvariants::closed(1, false, vec![], 0);
        let sg = seifert_group(&s).unwrap();
        assert_eq!(sg.order, Cardinal::Infinite);
        assert!(!sg.fiber_central);
        assert!(sg.fiber_class_bounded_by_relations());
        let r = sg.realization.unwrap();
        let c = r.group.generator(0).unwrap();
        let hinv = r.group.invert(&r.fiber).unwrap();
        assert_eq!(r.group.conjugate(&r.fiber, &c).unwrap(), hinv);
        assert!(!r.group.is_identity(&r.group.power(&r.fiber, 7).unwrap()));
    }
}
