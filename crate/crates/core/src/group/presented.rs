//! Finitely presented groups whose presentation admits a finite complete
//! shortlex rewriting system under one of a few letter orderings.

use super::rewriting::{inverse_word, RewritingSystem};
use super::word::{collect_letters, Letter};
use super::{Cardinal, Form};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentedData {
    rewriting: RewritingSystem,
    /// Rewriting letter of each generator.
    letters: Vec<u16>,
    /// Order supplied by the caller, when known from outside the rewriting.
    order: Option<Cardinal>,
}

fn encode(letters: &[u16], word: &[Letter]) -> Vec<u16> {
    let mut out = Vec::new();
    for l in word {
        let c = if l.exponent > 0 {
            letters[l.generator]
        } else {
            letters[l.generator] ^ 1
        };
        out.extend(std::iter::repeat_n(c, l.exponent.unsigned_abs() as usize));
    }
    out
}

impl PresentedData {
    /// Complete ⟨g₀…g_{n−1} | relators⟩. Each ordering in `orderings` lists
    /// generator indices from smallest to largest letter; they are tried in
    /// turn until one completes within `max_rules`.
    pub fn new(
        generators: usize,
        relators: &[Vec<Letter>],
        orderings: &[Vec<usize>],
        max_rules: usize,
        order: Option<Cardinal>,
    ) -> Result<Self> {
        if relators.iter().flatten().any(|l| l.generator >= generators) {
            return invalid("relator uses an undeclared generator");
        }
        let mut last = None;
        for ordering in orderings {
            let mut sorted = ordering.clone();
            sorted.sort_unstable();
            if sorted != (0..generators).collect::<Vec<_>>() {
                return invalid("letter ordering must be a permutation of the generators");
            }
            let mut letters = vec![0u16; generators];
            for (rank, &g) in ordering.iter().enumerate() {
                letters[g] = 2 * rank as u16;
            }
            let encoded: Vec<Vec<u16>> = relators.iter().map(|r| encode(&letters, r)).collect();
            match RewritingSystem::complete(generators, &encoded, max_rules) {
                Ok(rewriting) => {
                    return Ok(PresentedData {
                        rewriting,
                        letters,
                        order,
                    })
                }
                Err(e @ Error::Unsupported(_)) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::Unsupported("no letter ordering supplied".into())))
    }

    pub fn order(&self) -> Option<Cardinal> {
        self.order
    }

    pub fn rule_count(&self) -> usize {
        self.rewriting.rules().len()
    }

    fn word(x: &Form) -> &[u16] {
        match x {
            Form::Rewritten(w) => w,
            _ => panic!("rewritten payload expected"),
        }
    }

    pub fn mul(&self, a: &Form, b: &Form) -> Form {
        let mut w = Self::word(a).to_vec();
        w.extend_from_slice(Self::word(b));
        Form::Rewritten(self.rewriting.reduce(&w))
    }

    pub fn inv(&self, a: &Form) -> Form {
        Form::Rewritten(self.rewriting.reduce(&inverse_word(Self::word(a))))
    }

    pub fn generator_count(&self) -> usize {
        self.letters.len()
    }

    pub fn generator_forms(&self) -> Vec<Form> {
        self.letters
            .iter()
            .map(|&c| Form::Rewritten(self.rewriting.reduce(&[c])))
            .collect()
    }

    pub fn spell(&self, x: &Form) -> Option<Vec<Letter>> {
        Some(collect_letters(Self::word(x).iter().map(|&l| {
            let index = self
                .letters
                .iter()
                .position(|&c| c == l & !1)
                .expect("letter of this group");
            Letter::new(index, if l & 1 == 0 { 1 } else { -1 })
        })))
    }
}
