//! Exact 2×2 matrices over the Eisenstein integers Z[ω], ω² = −1 − ω.
//!
//! Entries are arbitrary precision, so products of long words never
//! overflow. The figure-eight knot group is realized here by the parabolic
//! pair A = [[1,1],[0,1]], B = [[1,0],[−ω,1]].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::group::Group;

/// a + bω with ω² = −1 − ω.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisensteinInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        EisensteinInt::new(0, 0)
    }

    pub fn one() -> Self {
        EisensteinInt::new(1, 0)
    }

    pub fn omega() -> Self {
        EisensteinInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// N(a + bω) = a² − ab + b².
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }
}

impl Add for &EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, rhs: &EisensteinInt) -> EisensteinInt {
        let bb = &self.b * &rhs.b;
        EisensteinInt {
            a: &self.a * &rhs.a - &bb,
            b: &self.a * &rhs.b + &rhs.a * &self.b - bb,
        }
    }
}

impl Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for EisensteinInt {
            type Output = EisensteinInt;
            fn $m(self, rhs: EisensteinInt) -> EisensteinInt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        -&self
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => write!(f, "ω"),
            (true, false) if self.b == -BigInt::one() => write!(f, "-ω"),
            (true, false) => write!(f, "{}ω", self.b),
            (false, false) => {
                let sign = if self.b < BigInt::zero() { "-" } else { "+" };
                let mag = if self.b < BigInt::zero() {
                    -&self.b
                } else {
                    self.b.clone()
                };
                if mag.is_one() {
                    write!(f, "{}{}ω", self.a, sign)
                } else {
                    write!(f, "{}{}{}ω", self.a, sign, mag)
                }
            }
        }
    }
}

/// A determinant-one 2×2 matrix [[p, q], [r, s]] over Z[ω].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2E {
    entries: [EisensteinInt; 4],
}

impl Mat2E {
    pub fn new(p: EisensteinInt, q: EisensteinInt, r: EisensteinInt, s: EisensteinInt) -> Result<Self> {
        let m = Mat2E { entries: [p, q, r, s] };
        if m.det() != EisensteinInt::one() {
            return invalid(format!("matrix {m} does not have determinant 1"));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Mat2E {
            entries: [
                EisensteinInt::one(),
                EisensteinInt::zero(),
                EisensteinInt::zero(),
                EisensteinInt::one(),
            ],
        }
    }

    pub fn entries(&self) -> &[EisensteinInt; 4] {
        &self.entries
    }

    pub fn det(&self) -> EisensteinInt {
        let [p, q, r, s] = &self.entries;
        &(p * s) - &(q * r)
    }

    pub fn trace(&self) -> EisensteinInt {
        &self.entries[0] + &self.entries[3]
    }

    pub fn mul(&self, rhs: &Mat2E) -> Mat2E {
        let [p, q, r, s] = &self.entries;
        let [p2, q2, r2, s2] = &rhs.entries;
        Mat2E {
            entries: [
                &(p * p2) + &(q * r2),
                &(p * q2) + &(q * s2),
                &(r * p2) + &(s * r2),
                &(r * q2) + &(s * s2),
            ],
        }
    }

    /// Inverse of [[p,q],[r,s]] is [[s,−q],[−r,p]] since det = 1.
    pub fn inverse(&self) -> Mat2E {
        let [p, q, r, s] = &self.entries;
        Mat2E {
            entries: [s.clone(), -q, -r, p.clone()],
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2E::identity()
    }
}

impl fmt::Display for Mat2E {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q, r, s] = &self.entries;
        write!(f, "[[{p}, {q}], [{r}, {s}]]")
    }
}

/// Generators A = [[1,1],[0,1]] and B = [[1,0],[−ω,1]] of the figure-eight
/// knot group.
pub fn figure8_generators() -> (Mat2E, Mat2E) {
    let a = Mat2E::new(
        EisensteinInt::one(),
        EisensteinInt::one(),
        EisensteinInt::zero(),
        EisensteinInt::one(),
    )
    .expect("det 1");
    let b = Mat2E::new(
        EisensteinInt::one(),
        EisensteinInt::zero(),
        -EisensteinInt::omega(),
        EisensteinInt::one(),
    )
    .expect("det 1");
    (a, b)
}

/// The figure-eight knot group as the exact matrix group ⟨A, B⟩, flagged
/// as a lattice. Faithfulness of this representation is taken from the
/// literature; every claim computed here is about the matrices themselves.
pub fn figure8_group() -> Group {
    let (a, b) = figure8_generators();
    Group::matrix_group(vec![a, b], true, vec!["A".into(), "B".into()]).expect("two named generators")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_examples() {
        let one_plus_omega = EisensteinInt::new(1, 1);
        assert_eq!(&one_plus_omega * &one_plus_omega, EisensteinInt::omega());
        assert_eq!(EisensteinInt::new(2, 1).norm(), BigInt::from(3));
        assert_eq!(
            &EisensteinInt::new(1, 0) + &EisensteinInt::new(0, 1),
            EisensteinInt::new(1, 1)
        );
        // ω³ = 1
        let w = EisensteinInt::omega();
        assert_eq!(&(&w * &w) * &w, EisensteinInt::one());
    }

    #[test]
    fn figure8_trace_of_product() {
        let (a, b) = figure8_generators();
        // [[1,1],[0,1]]·[[1,0],[−ω,1]] = [[1−ω, 1], [−ω, 1]], trace 2 − ω.
        assert_eq!(a.mul(&b).trace(), EisensteinInt::new(2, -1));
        assert!(a.mul(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_wrong_determinant() {
        let two = EisensteinInt::new(2, 0);
        assert!(Mat2E::new(two.clone(), EisensteinInt::zero(), EisensteinInt::zero(), two).is_err());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(EisensteinInt::new(2, -1).to_string(), "2-ω");
        assert_eq!(EisensteinInt::new(0, -1).to_string(), "-ω");
        let (_, b) = figure8_generators();
        assert_eq!(b.to_string(), "[[1, 0], [-ω, 1]]");
    }

    #[test]
    fn figure8_group_inverse_and_class_growth() {
        let g = figure8_group();
        let a = g.generator_by_name("A").unwrap();
        assert!(g.is_identity(&g.multiply(&a, &g.invert(&a).unwrap()).unwrap()));
        let rep = crate::oracle::conjugacy_class_ball(&g, &a, 6, 3).unwrap();
        assert!(!rep.stabilized);
        assert!(rep.counts_by_radius.windows(2).skip(1).all(|w| w[0] < w[1]));
        assert_eq!(rep.counts_by_radius, vec![1, 3, 9, 27, 80, 230, 658]);
    }
}
