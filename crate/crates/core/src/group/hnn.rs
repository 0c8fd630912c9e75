//! HNN extensions ⟨G, t | t a t⁻¹ = φ(a), a ∈ A⟩.
//!
//! Normal form g₀ t^ε₁ g₁ ⋯ t^εₙ gₙ where gᵢ (i ≥ 1) is a right coset
//! representative of A when εᵢ = +1 and of B = φ(A) when εᵢ = −1, and no
//! pinch t^ε 1 t^−ε occurs. By Britton's lemma this form is unique.

use super::amalgam::EdgeEmbedding;
use super::word::{collect_letters, Letter};
use super::{Exp, Form, StructuredGroup};
use crate::error::{invalid, Result};

/// The associated subgroups A → B.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Associated {
    /// Finite A with explicit embeddings; images[0] spans A, images[1] spans B
    /// and t·images[0][k]·t⁻¹ = images[1][k].
    Finite(EdgeEmbedding),
    /// Base Z = ⟨a⟩ with t·a^from·t⁻¹ = a^to.
    Cyclic { from: i64, to: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EdgeElem {
    Index(usize),
    Int(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HnnData {
    pub base: StructuredGroup,
    pub assoc: Associated,
}

impl HnnData {
    pub fn new(base: StructuredGroup, assoc: Associated) -> Result<Self> {
        if let Associated::Cyclic { from, to } = assoc {
            if base != StructuredGroup::InfiniteCyclic {
                return invalid("cyclic associated subgroups need an infinite cyclic base");
            }
            if from == 0 || to == 0 {
                return invalid("associated cyclic subgroups must be nontrivial");
            }
        }
        Ok(HnnData { base, assoc })
    }

    /// Whether associated subgroup `side` (0 = A, 1 = B) is all of the base.
    pub fn associated_is_whole_base(&self, side: usize) -> bool {
        match &self.assoc {
            Associated::Cyclic { from, to } => [from, to][side].abs() == 1,
            Associated::Finite(e) => {
                let _ = side;
                matches!(self.base.order(), Some(super::Cardinal::Finite(n)) if n as usize == e.subgroup.order())
            }
        }
    }

    /// x = ι_side(c) · rep.
    fn decompose(&self, side: usize, x: &Form) -> (EdgeElem, Form) {
        match &self.assoc {
            Associated::Finite(e) => {
                let (c, r) = e.decompose(&self.base, side, x);
                (EdgeElem::Index(c), r)
            }
            Associated::Cyclic { from, to } => {
                let Form::Residue(k) = x else {
                    panic!("cyclic payload expected")
                };
                let m = [*from, *to][side];
                let q = k.0.div_euclid(m);
                (EdgeElem::Int(q), Form::Residue(Exp(k.0.rem_euclid(m))))
            }
        }
    }

    fn embed_edge(&self, side: usize, c: EdgeElem) -> Form {
        match (&self.assoc, c) {
            (Associated::Finite(e), EdgeElem::Index(k)) => e.images[side][k].clone(),
            (Associated::Cyclic { from, to }, EdgeElem::Int(q)) => {
                let m = [*from, *to][side];
                Form::Residue(Exp(m.checked_mul(q).expect("integer overflow in HNN edge")))
            }
            _ => unreachable!("edge element kind matches the associated data"),
        }
    }

    fn parts(x: &Form) -> (&Form, &[(Exp, Form)]) {
        match x {
            Form::Hnn { head, tail } => (head, tail),
            _ => panic!("HNN payload expected"),
        }
    }

    /// Subgroup side that a syllable after t^ε must be reduced against.
    fn side_after(e: Exp) -> usize {
        if e.0 > 0 {
            0
        } else {
            1
        }
    }

    /// nf := nf · x for a base element x.
    fn push_base(&self, head: &mut Form, tail: &mut [(Exp, Form)], x: &Form) {
        let mut carry = x.clone();
        for (e, g) in tail.iter_mut().rev() {
            if self.base.is_identity(&carry) {
                return;
            }
            let y = self.base.mul(g, &carry);
            let side = Self::side_after(*e);
            let (c, r) = self.decompose(side, &y);
            *g = r;
            // t^ε ι_side(c) = ι_other(c) t^ε
            carry = self.embed_edge(1 - side, c);
        }
        *head = self.base.mul(head, &carry);
    }

    /// nf := nf · t^e for e = ±1.
    fn push_stable(&self, tail: &mut Vec<(Exp, Form)>, e: i64) {
        if let Some((last_e, last_g)) = tail.last() {
            if last_e.0 == -e && self.base.is_identity(last_g) {
                tail.pop();
                return;
            }
        }
        tail.push((Exp(e), self.base.identity()));
    }

    pub fn embed_base(&self, x: &Form) -> Form {
        Form::Hnn {
            head: Box::new(x.clone()),
            tail: Vec::new(),
        }
    }

    pub fn stable_letter(&self) -> Form {
        Form::Hnn {
            head: Box::new(self.base.identity()),
            tail: vec![(Exp(1), self.base.identity())],
        }
    }

    pub fn mul(&self, a: &Form, b: &Form) -> Form {
        let (ha, ta) = Self::parts(a);
        let (hb, tb) = Self::parts(b);
        let mut head = ha.clone();
        let mut tail = ta.to_vec();
        self.push_base(&mut head, &mut tail, hb);
        for (e, g) in tb {
            self.push_stable(&mut tail, e.0);
            self.push_base(&mut head, &mut tail, g);
        }
        Form::Hnn {
            head: Box::new(head),
            tail,
        }
    }

    pub fn inv(&self, a: &Form) -> Form {
        let (h, t) = Self::parts(a);
        let mut head = self.base.identity();
        let mut tail = Vec::new();
        for (e, g) in t.iter().rev() {
            self.push_base(&mut head, &mut tail, &self.base.inv(g));
            self.push_stable(&mut tail, -e.0);
        }
        self.push_base(&mut head, &mut tail, &self.base.inv(h));
        Form::Hnn {
            head: Box::new(head),
            tail,
        }
    }

    pub fn generator_forms(&self) -> Vec<Form> {
        let mut out: Vec<Form> = self.base.generator_forms().iter().map(|g| self.embed_base(g)).collect();
        out.push(self.stable_letter());
        out
    }

    pub fn spell(&self, x: &Form) -> Option<Vec<Letter>> {
        let (h, t) = Self::parts(x);
        let stable = self.base.generator_count();
        let mut out = self.base.spell(h)?;
        for (e, g) in t {
            out.push(Letter::new(stable, e.0));
            out.extend(self.base.spell(g)?);
        }
        Some(collect_letters(out))
    }

    /// Whether a normal form contains a pinch t^ε g t^−ε with g in the
    /// associated subgroup for ε (A for +1, B for −1).
    pub fn has_pinch(&self, x: &Form) -> bool {
        let (_, t) = Self::parts(x);
        t.windows(2).any(|w| {
            let (e1, g) = &w[0];
            let (e2, _) = &w[1];
            e1.0 == -e2.0 && {
                let (_, r) = self.decompose(Self::side_after(*e1), g);
                self.base.is_identity(&r)
            }
        })
    }
}
