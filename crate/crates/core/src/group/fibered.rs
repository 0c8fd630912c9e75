//! Central extensions ⟨g₁, …, gₖ, h | h central, gⱼ^αⱼ = h^βⱼ⟩ of a free
//! product of cyclic groups by the infinite cyclic fiber ⟨h⟩.
//!
//! Normal form hᶠ · s₁ ⋯ sₙ with alternating syllables; a periodic syllable
//! has exponent in [1, α − 1], a free one any nonzero exponent. Overflowing
//! periodic exponents spill α-multiples into the central part.

use num_integer::Integer;

use super::word::{collect_letters, Letter};
use super::{Exp, Form};
use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberFactor {
    /// Infinite cyclic factor commuting with h.
    Free,
    /// g^α = h^β with α ≥ 1 and gcd(α, β) = 1.
    Periodic { alpha: i64, beta: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberedData {
    pub factors: Vec<FiberFactor>,
}

impl FiberedData {
    pub fn new(factors: Vec<FiberFactor>) -> Result<Self> {
        for f in &factors {
            if let FiberFactor::Periodic { alpha, beta } = f {
                if *alpha < 1 {
                    return invalid(format!("fiber multiplicity {alpha} must be positive"));
                }
                if alpha.gcd(beta) != 1 {
                    return invalid(format!("fiber pair ({alpha}, {beta}) is not coprime"));
                }
            }
        }
        Ok(FiberedData { factors })
    }

    fn parts(x: &Form) -> (i64, &[(usize, Exp)]) {
        match x {
            Form::Fibered { fiber, syllables } => (fiber.0, syllables),
            _ => panic!("fibered payload expected"),
        }
    }

    fn push(&self, fiber: &mut i64, syl: &mut Vec<(usize, Exp)>, j: usize, e: i64) {
        let mut e = e;
        if let Some(&(last, le)) = syl.last() {
            if last == j {
                e += le.0;
                syl.pop();
            }
        }
        match self.factors[j] {
            FiberFactor::Free => {
                if e != 0 {
                    syl.push((j, Exp(e)));
                }
            }
            FiberFactor::Periodic { alpha, beta } => {
                let (q, r) = e.div_mod_floor(&alpha);
                *fiber = fiber
                    .checked_add(beta.checked_mul(q).expect("fiber overflow"))
                    .expect("fiber overflow");
                if r != 0 {
                    syl.push((j, Exp(r)));
                }
            }
        }
    }

    pub fn mul(&self, a: &Form, b: &Form) -> Form {
        let (fa, sa) = Self::parts(a);
        let (fb, sb) = Self::parts(b);
        let mut fiber = fa.checked_add(fb).expect("fiber overflow");
        let mut syl = sa.to_vec();
        for &(j, e) in sb {
            self.push(&mut fiber, &mut syl, j, e.0);
        }
        Form::Fibered {
            fiber: Exp(fiber),
            syllables: syl,
        }
    }

    pub fn inv(&self, a: &Form) -> Form {
        let (f, s) = Self::parts(a);
        let mut fiber = -f;
        let mut syl = Vec::new();
        for &(j, e) in s.iter().rev() {
            self.push(&mut fiber, &mut syl, j, -e.0);
        }
        Form::Fibered {
            fiber: Exp(fiber),
            syllables: syl,
        }
    }

    pub fn generator(&self, j: usize) -> Form {
        let mut fiber = 0;
        let mut syl = Vec::new();
        self.push(&mut fiber, &mut syl, j, 1);
        Form::Fibered {
            fiber: Exp(fiber),
            syllables: syl,
        }
    }

    pub fn fiber(&self) -> Form {
        Form::Fibered {
            fiber: Exp(1),
            syllables: Vec::new(),
        }
    }

    pub fn generator_forms(&self) -> Vec<Form> {
        let mut out: Vec<Form> = (0..self.factors.len()).map(|j| self.generator(j)).collect();
        out.push(self.fiber());
        out
    }

    pub fn spell(&self, x: &Form) -> Option<Vec<Letter>> {
        let (f, s) = Self::parts(x);
        let mut out = vec![Letter::new(self.factors.len(), f)];
        out.extend(s.iter().map(|&(j, e)| Letter::new(j, e.0)));
        Some(collect_letters(out))
    }
}
