//! Γ₁ ∗_{Γ₀} Γ₂ over a finite edge group Γ₀.
//!
//! Normal form: an edge element c followed by alternating nontrivial right
//! coset representatives r₁ … rₙ, value ι(c)·r₁⋯rₙ. The representative of
//! Γ₀·x is the identity when x ∈ Γ₀ and otherwise the least element of the
//! coset in payload order. Edge elements are pushed leftwards.

use super::finite::FiniteGroup;
use super::word::{shift_letters, Letter};
use super::{Cardinal, Form, StructuredGroup, Syllable};
use crate::error::{invalid, Result};

/// A finite group with two injective homomorphisms into ambient groups.
/// `images[s][k]` is the image of table element k under embedding s.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeEmbedding {
    pub subgroup: FiniteGroup,
    pub images: [Vec<Form>; 2],
}

impl EdgeEmbedding {
    /// Both embeddings land in the same `ambient` group (the HNN case).
    pub fn new(ambient: &StructuredGroup, subgroup: FiniteGroup, images: [Vec<Form>; 2]) -> Result<Self> {
        for side in &images {
            check_embedding(ambient, &subgroup, side)?;
        }
        Ok(EdgeEmbedding { subgroup, images })
    }

    /// x = images[side][c] · rep.
    pub(crate) fn decompose(&self, ambient: &StructuredGroup, side: usize, x: &Form) -> (usize, Form) {
        decompose(ambient, &self.subgroup, &self.images[side], x)
    }
}

pub(crate) fn check_embedding(ambient: &StructuredGroup, sub: &FiniteGroup, images: &[Form]) -> Result<()> {
    let n = sub.order();
    if images.len() != n {
        return invalid(format!("edge embedding needs {n} images, got {}", images.len()));
    }
    if !ambient.is_identity(&images[0]) {
        return invalid("edge embedding must send the identity to the identity");
    }
    for a in 0..n {
        for b in 0..n {
            if ambient.mul(&images[a], &images[b]) != images[sub.mul(a, b)] {
                return invalid(format!("edge embedding is not a homomorphism at ({a},{b})"));
            }
        }
        if images[..a].contains(&images[a]) {
            return invalid("edge embedding is not injective");
        }
    }
    Ok(())
}

pub(crate) fn decompose(ambient: &StructuredGroup, sub: &FiniteGroup, images: &[Form], x: &Form) -> (usize, Form) {
    let mut best: Option<(Form, usize)> = None;
    for (k, img) in images.iter().enumerate() {
        let y = ambient.mul(img, x);
        if ambient.is_identity(&y) {
            return (sub.inv(k), y);
        }
        if best.as_ref().is_none_or(|(b, _)| y < *b) {
            best = Some((y, k));
        }
    }
    let (rep, k) = best.expect("edge group is nonempty");
    (sub.inv(k), rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmalgamData {
    pub left: StructuredGroup,
    pub right: StructuredGroup,
    pub edge: FiniteGroup,
    pub left_images: Vec<Form>,
    pub right_images: Vec<Form>,
}

impl AmalgamData {
    pub fn new(
        left: StructuredGroup,
        right: StructuredGroup,
        edge: FiniteGroup,
        left_images: Vec<Form>,
        right_images: Vec<Form>,
    ) -> Result<Self> {
        check_embedding(&left, &edge, &left_images)?;
        check_embedding(&right, &edge, &right_images)?;
        Ok(AmalgamData {
            left,
            right,
            edge,
            left_images,
            right_images,
        })
    }

    pub fn factor(&self, side: u8) -> &StructuredGroup {
        if side == 0 {
            &self.left
        } else {
            &self.right
        }
    }

    pub fn images(&self, side: u8) -> &[Form] {
        if side == 0 {
            &self.left_images
        } else {
            &self.right_images
        }
    }

    /// [Γ_side : Γ₀] from the factor order; `None` when the factor order is
    /// not known.
    pub fn index(&self, side: u8) -> Option<Cardinal> {
        match self.factor(side).order()? {
            Cardinal::Finite(n) => Some(Cardinal::Finite(n / self.edge.order() as u64)),
            Cardinal::Infinite => Some(Cardinal::Infinite),
        }
    }

    /// A right transversal of Γ₀ in a finite factor, identity first.
    pub fn transversal(&self, side: u8, ball: &[Form]) -> Vec<Form> {
        let f = self.factor(side);
        let mut reps: Vec<Form> = ball
            .iter()
            .map(|x| decompose(f, &self.edge, self.images(side), x).1)
            .collect();
        reps.sort();
        reps.dedup();
        if let Some(pos) = reps.iter().position(|r| f.is_identity(r)) {
            let id = reps.remove(pos);
            reps.insert(0, id);
        }
        reps
    }

    fn parts(x: &Form) -> (usize, &[Syllable]) {
        match x {
            Form::Amalgam { edge, syllables } => (*edge, syllables),
            _ => panic!("amalgam payload expected"),
        }
    }

    /// nf := nf · ι(c), carrying edge elements leftwards through each syllable.
    fn absorb_edge(&self, edge: &mut usize, syl: &mut [Syllable], c: usize) {
        let mut c = c;
        for s in syl.iter_mut().rev() {
            if c == 0 {
                return;
            }
            let f = self.factor(s.side);
            let y = f.mul(&s.value, &self.images(s.side)[c]);
            let (c2, r) = decompose(f, &self.edge, self.images(s.side), &y);
            s.value = r;
            c = c2;
        }
        *edge = self.edge.mul(*edge, c);
    }

    /// nf := nf · x for x in factor `side`.
    fn push(&self, edge: &mut usize, syl: &mut Vec<Syllable>, side: u8, x: &Form) {
        let f = self.factor(side);
        let y = match syl.last() {
            Some(last) if last.side == side => {
                let v = f.mul(&last.value, x);
                syl.pop();
                v
            }
            _ => x.clone(),
        };
        let (c, r) = decompose(f, &self.edge, self.images(side), &y);
        self.absorb_edge(edge, syl, c);
        if !f.is_identity(&r) {
            syl.push(Syllable { side, value: r });
        }
    }

    pub fn embed(&self, side: u8, x: &Form) -> Form {
        let mut edge = 0;
        let mut syl = Vec::new();
        self.push(&mut edge, &mut syl, side, x);
        Form::Amalgam { edge, syllables: syl }
    }

    pub fn mul(&self, a: &Form, b: &Form) -> Form {
        let (mut edge, syl_a) = Self::parts(a);
        let mut syl = syl_a.to_vec();
        let (cb, syl_b) = Self::parts(b);
        self.absorb_edge(&mut edge, &mut syl, cb);
        for s in syl_b {
            self.push(&mut edge, &mut syl, s.side, &s.value);
        }
        Form::Amalgam { edge, syllables: syl }
    }

    pub fn inv(&self, a: &Form) -> Form {
        let (c, syl_a) = Self::parts(a);
        let mut edge = 0;
        let mut syl = Vec::new();
        for s in syl_a.iter().rev() {
            let f = self.factor(s.side);
            self.push(&mut edge, &mut syl, s.side, &f.inv(&s.value));
        }
        self.absorb_edge(&mut edge, &mut syl, self.edge.inv(c));
        Form::Amalgam { edge, syllables: syl }
    }

    pub fn generator_forms(&self) -> Vec<Form> {
        let mut out: Vec<Form> = self.left.generator_forms().iter().map(|g| self.embed(0, g)).collect();
        out.extend(self.right.generator_forms().iter().map(|g| self.embed(1, g)));
        out
    }

    pub fn spell(&self, x: &Form) -> Option<Vec<Letter>> {
        let (c, syl) = Self::parts(x);
        let mut out = self.left.spell(&self.left_images[c])?;
        let offset = self.left.generator_count();
        for s in syl {
            let w = self.factor(s.side).spell(&s.value)?;
            out.extend(if s.side == 0 { w } else { shift_letters(w, offset) });
        }
        Some(super::word::collect_letters(out))
    }
}
