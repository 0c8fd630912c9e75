//! Surface groups. Each surface is modeled by an equivalent construction:
//! bounded surfaces by free groups, the small closed surfaces by cyclic or
//! Z ⋊ Z groups, and closed hyperbolic surfaces by a completed shortlex
//! rewriting system for the one-relator presentation.

use super::rewriting::{inverse_word, RewritingSystem};
use super::word::{collect_letters, Letter};
use super::{Cardinal, Form, SemidirectData, StructuredGroup};
use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceModel {
    Delegate(StructuredGroup),
    Rewriting(RewritingSystem),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceData {
    pub genus: u32,
    pub orientable: bool,
    pub boundary: u32,
    model: SurfaceModel,
    /// Rewriting letter of each generator. The shortlex order on these
    /// letters is chosen so that completion terminates.
    letters: Vec<u16>,
}

fn free_group(rank: usize) -> StructuredGroup {
    match rank {
        0 => StructuredGroup::FiniteCyclic { order: 1 },
        1 => StructuredGroup::InfiniteCyclic,
        _ => StructuredGroup::FreeProduct(
            Box::new(StructuredGroup::InfiniteCyclic),
            Box::new(free_group(rank - 1)),
        ),
    }
}

impl SurfaceData {
    pub fn new(genus: u32, orientable: bool, boundary: u32) -> Result<Self> {
        if !orientable && genus == 0 {
            return invalid("a non-orientable surface has genus at least 1");
        }
        let handles = if orientable { 2 * genus } else { genus } as usize;
        let mut letters: Vec<u16> = (0..handles as u16).map(|i| 2 * i).collect();
        let model = if boundary > 0 {
            SurfaceModel::Delegate(free_group(handles + boundary as usize - 1))
        } else {
            match (orientable, genus) {
                (true, 0) => SurfaceModel::Delegate(StructuredGroup::FiniteCyclic { order: 1 }),
                (true, 1) => {
                    SurfaceModel::Delegate(StructuredGroup::SemidirectZnByZ(SemidirectData::new(vec![vec![1]])?))
                }
                (false, 1) => SurfaceModel::Delegate(StructuredGroup::FiniteCyclic { order: 2 }),
                (false, 2) => {
                    SurfaceModel::Delegate(StructuredGroup::SemidirectZnByZ(SemidirectData::new(vec![vec![-1]])?))
                }
                _ => {
                    // Orientable: a₁ < … < a_g < b₁ < … < b_g. Non-orientable:
                    // the last generator is encoded by an inverse letter.
                    let g = genus as u16;
                    if orientable {
                        letters = (0..g).flat_map(|i| [2 * i, 2 * (g + i)]).collect();
                    } else {
                        letters[g as usize - 1] ^= 1;
                    }
                    let relator: Vec<u16> = if orientable {
                        (0..g)
                            .flat_map(|i| {
                                let (a, b) = (2 * i, 2 * (g + i));
                                [a, b, a ^ 1, b ^ 1]
                            })
                            .collect()
                    } else {
                        letters.iter().flat_map(|&c| [c, c]).collect()
                    };
                    SurfaceModel::Rewriting(RewritingSystem::complete(handles, &[relator], 4000)?)
                }
            }
        };
        Ok(SurfaceData {
            genus,
            orientable,
            boundary,
            model,
            letters,
        })
    }

    /// Disk, annulus, Möbius band, sphere, projective plane, torus and
    /// Klein bottle: the surfaces with finite or virtually abelian π₁.
    pub fn is_exceptional(&self) -> bool {
        let chi = self.euler_characteristic();
        chi >= 0
    }

    pub fn euler_characteristic(&self) -> i64 {
        let g = self.genus as i64;
        let b = self.boundary as i64;
        if self.orientable {
            2 - 2 * g - b
        } else {
            2 - g - b
        }
    }

    pub fn order(&self) -> Cardinal {
        match &self.model {
            SurfaceModel::Delegate(s) => s.order().expect("surface models have known order"),
            SurfaceModel::Rewriting(_) => Cardinal::Infinite,
        }
    }

    pub fn default_names(&self) -> Vec<String> {
        match &self.model {
            SurfaceModel::Delegate(StructuredGroup::SemidirectZnByZ(_)) if !self.orientable => {
                vec!["x".into(), "y".into()]
            }
            SurfaceModel::Delegate(StructuredGroup::FiniteCyclic { order: 1 }) => vec!["e".into()],
            _ => {
                let mut names: Vec<String> = if self.orientable {
                    (1..=self.genus)
                        .flat_map(|i| [format!("a{i}"), format!("b{i}")])
                        .collect()
                } else {
                    (1..=self.genus).map(|i| format!("c{i}")).collect()
                };
                names.extend((1..self.boundary).map(|i| format!("d{i}")));
                names
            }
        }
    }

    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    pub fn identity(&self) -> Form {
        match &self.model {
            SurfaceModel::Delegate(s) => s.identity(),
            SurfaceModel::Rewriting(_) => Form::Rewritten(Vec::new()),
        }
    }

    fn word(x: &Form) -> &[u16] {
        match x {
            Form::Rewritten(w) => w,
            _ => panic!("rewritten payload expected"),
        }
    }

    pub fn mul(&self, a: &Form, b: &Form) -> Form {
        match &self.model {
            SurfaceModel::Delegate(s) => s.mul(a, b),
            SurfaceModel::Rewriting(r) => {
                let mut w = Self::word(a).to_vec();
                w.extend_from_slice(Self::word(b));
                Form::Rewritten(r.reduce(&w))
            }
        }
    }

    pub fn inv(&self, a: &Form) -> Form {
        match &self.model {
            SurfaceModel::Delegate(s) => s.inv(a),
            SurfaceModel::Rewriting(r) => Form::Rewritten(r.reduce(&inverse_word(Self::word(a)))),
        }
    }

    pub fn generator_count(&self) -> usize {
        match &self.model {
            SurfaceModel::Delegate(s) => s.generator_count(),
            SurfaceModel::Rewriting(r) => r.generators(),
        }
    }

    pub fn generator_forms(&self) -> Vec<Form> {
        match &self.model {
            SurfaceModel::Delegate(s) => s.generator_forms(),
            SurfaceModel::Rewriting(_) => self.letters.iter().map(|&c| Form::Rewritten(vec![c])).collect(),
        }
    }

    pub fn spell(&self, x: &Form) -> Option<Vec<Letter>> {
        match &self.model {
            SurfaceModel::Delegate(s) => s.spell(x),
            SurfaceModel::Rewriting(_) => Some(collect_letters(Self::word(x).iter().map(|&l| {
                let index = self
                    .letters
                    .iter()
                    .position(|&c| c / 2 == l / 2)
                    .expect("letter of this surface");
                Letter::new(index, if self.letters[index] == l { 1 } else { -1 })
            }))),
        }
    }
}
