//! Zⁿ ⋊_φ Z for n ≤ 3: pairs (v, m) standing for v·tᵐ with t v t⁻¹ = φ(v),
//! so (v₁, m₁)(v₂, m₂) = (v₁ + φ^m₁ v₂, m₁ + m₂).

use num_integer::Integer;

use super::word::{collect_letters, Letter};
use super::{Exp, Form};
use crate::error::{invalid, Result};

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectData {
    phi: IntMatrix,
    phi_inv: IntMatrix,
}

pub fn determinant(m: &IntMatrix) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => panic!("rank 1..=3 expected"),
    }
}

/// Adjugate-based inverse of a unimodular matrix.
fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    let det = determinant(m);
    let minor = |r: usize, c: usize| -> i64 {
        let sub: IntMatrix = (0..n)
            .filter(|&i| i != r)
            .map(|i| (0..n).filter(|&j| j != c).map(|j| m[i][j]).collect())
            .collect();
        if sub.is_empty() {
            1
        } else {
            determinant(&sub)
        }
    };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    // inverse = adj / det, det = ±1
                    sign * minor(j, i) * det
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .try_fold(0i64, |acc, (a, b)| acc.checked_add(a.checked_mul(*b)?))
                .expect("integer overflow in semidirect arithmetic")
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// φᵏ − λ·I.
pub fn power_minus_scalar(phi: &IntMatrix, k: u32, lambda: i64) -> IntMatrix {
    let n = phi.len();
    let mut p: IntMatrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..k {
        p = mat_mul(&p, phi);
    }
    for (i, row) in p.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    p
}

/// A primitive nonzero integer vector in the kernel of a singular matrix
/// of size 1 to 3, or `None` when the matrix is invertible over Q.
pub fn kernel_vector(m: &IntMatrix) -> Option<Vec<i64>> {
    let n = m.len();
    if determinant(m) != 0 {
        return None;
    }
    let nonzero: Vec<&Vec<i64>> = m.iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    let candidates: Vec<Vec<i64>> = match n {
        1 => vec![vec![1]],
        2 => match nonzero.first() {
            Some(r) => vec![vec![r[1], -r[0]]],
            None => vec![vec![1, 0]],
        },
        _ => {
            let mut c = Vec::new();
            for i in 0..nonzero.len() {
                for j in i + 1..nonzero.len() {
                    let (a, b) = (nonzero[i], nonzero[j]);
                    c.push(vec![
                        a[1] * b[2] - a[2] * b[1],
                        a[2] * b[0] - a[0] * b[2],
                        a[0] * b[1] - a[1] * b[0],
                    ]);
                }
            }
            if let Some(r) = nonzero.first() {
                c.extend([vec![r[1], -r[0], 0], vec![r[2], 0, -r[0]], vec![0, r[2], -r[1]]]);
            }
            c.push(vec![1, 0, 0]);
            c
        }
    };
    candidates
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .find(|v| mat_vec(m, v).iter().all(|&x| x == 0))
        .map(|v| {
            let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
            let sign = if v.iter().find(|&&x| x != 0).copied().unwrap_or(1) < 0 {
                -1
            } else {
                1
            };
            v.into_iter().map(|x| sign * x / g).collect()
        })
}

impl SemidirectData {
    pub fn new(phi: IntMatrix) -> Result<Self> {
        let n = phi.len();
        if !(1..=3).contains(&n) || phi.iter().any(|r| r.len() != n) {
            return invalid("semidirect monodromy must be a square matrix of size 1 to 3");
        }
        let det = determinant(&phi);
        if det.abs() != 1 {
            return invalid(format!("semidirect monodromy has determinant {det}, expected ±1"));
        }
        let phi_inv = unimodular_inverse(&phi);
        Ok(SemidirectData { phi, phi_inv })
    }

    pub fn rank(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self) -> &IntMatrix {
        &self.phi
    }

    /// φᵐ(v).
    pub fn act(&self, m: i64, v: &[i64]) -> Vec<i64> {
        let mat = if m >= 0 { &self.phi } else { &self.phi_inv };
        let mut out = v.to_vec();
        for _ in 0..m.unsigned_abs() {
            out = mat_vec(mat, &out);
        }
        out
    }

    fn parts(x: &Form) -> (Vec<i64>, i64) {
        match x {
            Form::Semidirect { v, m } => (v.iter().map(|e| e.0).collect(), m.0),
            _ => panic!("semidirect payload expected"),
        }
    }

    pub fn form(v: &[i64], m: i64) -> Form {
        Form::Semidirect {
            v: v.iter().map(|&x| Exp(x)).collect(),
            m: Exp(m),
        }
    }

    pub fn mul(&self, a: &Form, b: &Form) -> Form {
        let (v1, m1) = Self::parts(a);
        let (v2, m2) = Self::parts(b);
        let w = self.act(m1, &v2);
        let v: Vec<i64> = v1
            .iter()
            .zip(&w)
            .map(|(x, y)| x.checked_add(*y).expect("integer overflow in semidirect arithmetic"))
            .collect();
        Self::form(&v, m1 + m2)
    }

    /// (v, m)⁻¹ = (−φ^−m v, −m).
    pub fn inv(&self, a: &Form) -> Form {
        let (v, m) = Self::parts(a);
        let w: Vec<i64> = self.act(-m, &v).into_iter().map(|x| -x).collect();
        Self::form(&w, -m)
    }

    pub fn generator_forms(&self) -> Vec<Form> {
        let n = self.rank();
        let mut out: Vec<Form> = (0..n)
            .map(|i| {
                let v: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
                Self::form(&v, 0)
            })
            .collect();
        out.push(Self::form(&vec![0; n], 1));
        out
    }

    pub fn spell(&self, x: &Form) -> Option<Vec<Letter>> {
        let (v, m) = Self::parts(x);
        let mut out: Vec<Letter> = v.iter().enumerate().map(|(i, &k)| Letter::new(i, k)).collect();
        out.push(Letter::new(v.len(), m));
        Some(collect_letters(out))
    }
}
