//! Γ₁ ∗ Γ₂: alternating words of nontrivial factor elements.

use super::word::{shift_letters, Letter};
use super::{Form, StructuredGroup, Syllable};

fn syllables(x: &Form) -> &[Syllable] {
    match x {
        Form::Free(s) => s,
        _ => panic!("free-product payload expected"),
    }
}

fn factor<'a>(l: &'a StructuredGroup, r: &'a StructuredGroup, side: u8) -> &'a StructuredGroup {
    if side == 0 {
        l
    } else {
        r
    }
}

pub(super) fn embed(child: &StructuredGroup, side: u8, x: Form) -> Form {
    if child.is_identity(&x) {
        Form::Free(Vec::new())
    } else {
        Form::Free(vec![Syllable { side, value: x }])
    }
}

pub(super) fn mul(l: &StructuredGroup, r: &StructuredGroup, a: &Form, b: &Form) -> Form {
    let mut out: Vec<Syllable> = syllables(a).to_vec();
    let mut rest = syllables(b).iter().peekable();
    // Merge across the junction while the touching syllables share a side.
    while let (Some(last), Some(first)) = (out.last(), rest.peek()) {
        if last.side != first.side {
            break;
        }
        let side = last.side;
        let merged = factor(l, r, side).mul(&last.value, &first.value);
        out.pop();
        rest.next();
        if !factor(l, r, side).is_identity(&merged) {
            out.push(Syllable { side, value: merged });
            break;
        }
    }
    out.extend(rest.cloned());
    Form::Free(out)
}

pub(super) fn inv(l: &StructuredGroup, r: &StructuredGroup, a: &Form) -> Form {
    Form::Free(
        syllables(a)
            .iter()
            .rev()
            .map(|s| Syllable {
                side: s.side,
                value: factor(l, r, s.side).inv(&s.value),
            })
            .collect(),
    )
}

pub(super) fn spell(l: &StructuredGroup, r: &StructuredGroup, x: &Form) -> Option<Vec<Letter>> {
    let offset = l.generator_count();
    let mut out = Vec::new();
    for s in syllables(x) {
        let w = factor(l, r, s.side).spell(&s.value)?;
        out.extend(if s.side == 0 { w } else { shift_letters(w, offset) });
    }
    Some(out)
}
