//! Structured groups with canonical normal forms.
//!
//! Every construction stores enough data to put any product of generators
//! into a unique normal form, so element equality is payload equality.
//! [`Group`] wraps a [`StructuredGroup`] with generator names and an owner
//! id; [`GroupElement`]s remember their owner so mixing groups is caught.

mod amalgam;
mod fibered;
pub mod finite;
mod free_product;
mod hnn;
mod presented;
pub mod rewriting;
mod semidirect;
mod surface;
pub mod word;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

pub use amalgam::{AmalgamData, EdgeEmbedding};
pub use fibered::{FiberFactor, FiberedData};
pub use finite::FiniteGroup;
pub use hnn::{Associated, HnnData};
pub use presented::PresentedData;
pub use semidirect::{determinant, kernel_vector, power_minus_scalar, IntMatrix, SemidirectData};
pub use surface::SurfaceData;
pub use word::Letter;

use crate::error::{invalid, usage, Error, Result};
use crate::matrix::Mat2E;

/// Integer exponent whose ordering is 0 < 1 < −1 < 2 < −2 < …, so that the
/// identity payload sorts first and x precedes x⁻¹.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exp(pub i64);

impl Exp {
    fn key(self) -> u128 {
        let k = self.0 as i128;
        if k > 0 {
            (2 * k - 1) as u128
        } else {
            (-2 * k) as u128
        }
    }
}

impl Ord for Exp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One factor syllable of a free-product or amalgam normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub side: u8,
    pub value: Form,
}

/// Canonical normal-form payload. Two elements of the same group are equal
/// iff their forms are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    /// Residue mod n for Z/n, or the integer itself for Z.
    Residue(Exp),
    /// Alternating nontrivial syllables.
    Free(Vec<Syllable>),
    /// Edge element (index into the edge table) followed by alternating
    /// nontrivial coset representatives.
    Amalgam {
        edge: usize,
        syllables: Vec<Syllable>,
    },
    /// Britton-reduced g₀ t^ε₁ g₁ … t^εₙ gₙ with each gᵢ a coset representative.
    Hnn {
        head: Box<Form>,
        tail: Vec<(Exp, Form)>,
    },
    /// v·tᵐ in Zⁿ ⋊ Z.
    Semidirect {
        v: Vec<Exp>,
        m: Exp,
    },
    /// (h, f) in H × F.
    Pair {
        h: Box<Form>,
        f: usize,
    },
    /// Element index of a finite table.
    Table(usize),
    /// hᵏ followed by alternating factor syllables.
    Fibered {
        fiber: Exp,
        syllables: Vec<(usize, Exp)>,
    },
    /// Irreducible word of a complete rewriting system.
    Rewritten(Vec<u16>),
    Matrix(Mat2E),
}

/// |G|: a finite count or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cardinal {
    Finite(u64),
    Infinite,
}

impl Cardinal {
    pub fn is_trivial(self) -> bool {
        self == Cardinal::Finite(1)
    }

    pub fn is_infinite(self) -> bool {
        self == Cardinal::Infinite
    }

    /// Comparison with a finite bound: ∞ exceeds everything.
    pub fn at_least(self, n: u64) -> bool {
        match self {
            Cardinal::Finite(k) => k >= n,
            Cardinal::Infinite => true,
        }
    }
}

/// JSON form: a positive integer, or the string "infinite".
impl serde::Serialize for Cardinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cardinal::Finite(n) => s.serialize_u64(*n),
            Cardinal::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Cardinal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Count(u64),
            Word(String),
        }
        match Repr::deserialize(d)? {
            Repr::Count(0) => Err(serde::de::Error::custom("a group order is at least 1")),
            Repr::Count(n) => Ok(Cardinal::Finite(n)),
            Repr::Word(w) if w == "infinite" => Ok(Cardinal::Infinite),
            Repr::Word(w) => Err(serde::de::Error::custom(format!(
                "expected a positive integer or \"infinite\", found \"{w}\""
            ))),
        }
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Infinite => write!(f, "∞"),
        }
    }
}

/// Exact 2×2 matrix group over Z[ω]; `hyperbolic_lattice` records the
/// caller's assertion that the group is a finite-covolume Kleinian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixGroupData {
    pub generators: Vec<Mat2E>,
    pub hyperbolic_lattice: bool,
}

/// A group described by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StructuredGroup {
    FiniteCyclic {
        order: u64,
    },
    InfiniteCyclic,
    FreeProduct(Box<StructuredGroup>, Box<StructuredGroup>),
    Amalgam(Box<AmalgamData>),
    Hnn(Box<HnnData>),
    SemidirectZnByZ(SemidirectData),
    DirectWithFinite {
        h: Box<StructuredGroup>,
        f: FiniteGroup,
    },
    /// An arbitrary finite group by multiplication table.
    Finite(FiniteGroup),
    Surface(Box<SurfaceData>),
    /// Central extension of a free product of cyclic groups by ⟨h⟩:
    /// bounded-base Seifert groups and torus-knot groups.
    FiberedFreeProduct(FiberedData),
    MatrixGroupSL2Eisenstein(MatrixGroupData),
    /// A presentation with a finite complete rewriting system.
    Presented(Box<PresentedData>),
}

impl StructuredGroup {
    pub fn identity(&self) -> Form {
        match self {
            StructuredGroup::FiniteCyclic { .. } | StructuredGroup::InfiniteCyclic => Form::Residue(Exp(0)),
            StructuredGroup::FreeProduct(..) => Form::Free(Vec::new()),
            StructuredGroup::Amalgam(_) => Form::Amalgam {
                edge: 0,
                syllables: Vec::new(),
            },
            StructuredGroup::Hnn(d) => Form::Hnn {
                head: Box::new(d.base.identity()),
                tail: Vec::new(),
            },
            StructuredGroup::SemidirectZnByZ(d) => Form::Semidirect {
                v: vec![Exp(0); d.rank()],
                m: Exp(0),
            },
            StructuredGroup::DirectWithFinite { h, .. } => Form::Pair {
                h: Box::new(h.identity()),
                f: 0,
            },
            StructuredGroup::Finite(_) => Form::Table(0),
            StructuredGroup::Surface(d) => d.identity(),
            StructuredGroup::FiberedFreeProduct(_) => Form::Fibered {
                fiber: Exp(0),
                syllables: Vec::new(),
            },
            StructuredGroup::MatrixGroupSL2Eisenstein(_) => Form::Matrix(Mat2E::identity()),
            StructuredGroup::Presented(_) => Form::Rewritten(Vec::new()),
        }
    }

    pub fn is_identity(&self, x: &Form) -> bool {
        *x == self.identity()
    }

    pub fn mul(&self, a: &Form, b: &Form) -> Form {
        match self {
            StructuredGroup::FiniteCyclic { order } => {
                let (Form::Residue(x), Form::Residue(y)) = (a, b) else {
                    panic!("cyclic payload expected")
                };
                Form::Residue(Exp((x.0 + y.0).rem_euclid(*order as i64)))
            }
            StructuredGroup::InfiniteCyclic => {
                let (Form::Residue(x), Form::Residue(y)) = (a, b) else {
                    panic!("cyclic payload expected")
                };
                Form::Residue(Exp(x.0.checked_add(y.0).expect("integer overflow in Z")))
            }
            StructuredGroup::FreeProduct(l, r) => free_product::mul(l, r, a, b),
            StructuredGroup::Amalgam(d) => d.mul(a, b),
            StructuredGroup::Hnn(d) => d.mul(a, b),
            StructuredGroup::SemidirectZnByZ(d) => d.mul(a, b),
            StructuredGroup::DirectWithFinite { h, f } => {
                let (Form::Pair { h: h1, f: f1 }, Form::Pair { h: h2, f: f2 }) = (a, b) else {
                    panic!("pair payload expected")
                };
                Form::Pair {
                    h: Box::new(h.mul(h1, h2)),
                    f: f.mul(*f1, *f2),
                }
            }
            StructuredGroup::Finite(t) => {
                let (Form::Table(x), Form::Table(y)) = (a, b) else {
                    panic!("table payload expected")
                };
                Form::Table(t.mul(*x, *y))
            }
            StructuredGroup::Surface(d) => d.mul(a, b),
            StructuredGroup::FiberedFreeProduct(d) => d.mul(a, b),
            StructuredGroup::Presented(d) => d.mul(a, b),
            StructuredGroup::MatrixGroupSL2Eisenstein(_) => {
                let (Form::Matrix(x), Form::Matrix(y)) = (a, b) else {
                    panic!("matrix payload expected")
                };
                Form::Matrix(x.mul(y))
            }
        }
    }

    pub fn inv(&self, a: &Form) -> Form {
        match self {
            StructuredGroup::FiniteCyclic { order } => {
                let Form::Residue(x) = a else {
                    panic!("cyclic payload expected")
                };
                Form::Residue(Exp((-x.0).rem_euclid(*order as i64)))
            }
            StructuredGroup::InfiniteCyclic => {
                let Form::Residue(x) = a else {
                    panic!("cyclic payload expected")
                };
                Form::Residue(Exp(-x.0))
            }
            StructuredGroup::FreeProduct(l, r) => free_product::inv(l, r, a),
            StructuredGroup::Amalgam(d) => d.inv(a),
            StructuredGroup::Hnn(d) => d.inv(a),
            StructuredGroup::SemidirectZnByZ(d) => d.inv(a),
            StructuredGroup::DirectWithFinite { h, f } => {
                let Form::Pair { h: h1, f: f1 } = a else {
                    panic!("pair payload expected")
                };
                Form::Pair {
                    h: Box::new(h.inv(h1)),
                    f: f.inv(*f1),
                }
            }
            StructuredGroup::Finite(t) => {
                let Form::Table(x) = a else {
                    panic!("table payload expected")
                };
                Form::Table(t.inv(*x))
            }
            StructuredGroup::Surface(d) => d.inv(a),
            StructuredGroup::FiberedFreeProduct(d) => d.inv(a),
            StructuredGroup::Presented(d) => d.inv(a),
            StructuredGroup::MatrixGroupSL2Eisenstein(_) => {
                let Form::Matrix(x) = a else {
                    panic!("matrix payload expected")
                };
                Form::Matrix(x.inverse())
            }
        }
    }

    pub fn pow(&self, a: &Form, k: i64) -> Form {
        let mut base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = self.identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn conj(&self, g: &Form, by: &Form) -> Form {
        self.mul(&self.mul(by, g), &self.inv(by))
    }

    /// Designated generating set, in generator-index order.
    pub fn generator_forms(&self) -> Vec<Form> {
        match self {
            StructuredGroup::FiniteCyclic { order } => {
                vec![Form::Residue(Exp(if *order == 1 { 0 } else { 1 }))]
            }
            StructuredGroup::InfiniteCyclic => vec![Form::Residue(Exp(1))],
            StructuredGroup::FreeProduct(l, r) => {
                let mut out: Vec<Form> = l
                    .generator_forms()
                    .into_iter()
                    .map(|g| free_product::embed(l, 0, g))
                    .collect();
                out.extend(r.generator_forms().into_iter().map(|g| free_product::embed(r, 1, g)));
                out
            }
            StructuredGroup::Amalgam(d) => d.generator_forms(),
            StructuredGroup::Hnn(d) => d.generator_forms(),
            StructuredGroup::SemidirectZnByZ(d) => d.generator_forms(),
            StructuredGroup::DirectWithFinite { h, f } => {
                let mut out: Vec<Form> = h
                    .generator_forms()
                    .into_iter()
                    .map(|g| Form::Pair { h: Box::new(g), f: 0 })
                    .collect();
                out.extend(f.generators().iter().map(|&g| Form::Pair {
                    h: Box::new(h.identity()),
                    f: g,
                }));
                out
            }
            StructuredGroup::Finite(t) => t.generators().iter().map(|&g| Form::Table(g)).collect(),
            StructuredGroup::Surface(d) => d.generator_forms(),
            StructuredGroup::FiberedFreeProduct(d) => d.generator_forms(),
            StructuredGroup::Presented(d) => d.generator_forms(),
            StructuredGroup::MatrixGroupSL2Eisenstein(d) => d.generators.iter().cloned().map(Form::Matrix).collect(),
        }
    }

    pub fn generator_count(&self) -> usize {
        match self {
            StructuredGroup::FiniteCyclic { .. } | StructuredGroup::InfiniteCyclic => 1,
            StructuredGroup::FreeProduct(l, r) => l.generator_count() + r.generator_count(),
            StructuredGroup::Amalgam(d) => d.left.generator_count() + d.right.generator_count(),
            StructuredGroup::Hnn(d) => d.base.generator_count() + 1,
            StructuredGroup::SemidirectZnByZ(d) => d.rank() + 1,
            StructuredGroup::DirectWithFinite { h, f } => h.generator_count() + f.generators().len(),
            StructuredGroup::Finite(t) => t.generators().len(),
            StructuredGroup::Surface(d) => d.generator_count(),
            StructuredGroup::FiberedFreeProduct(d) => d.factors.len() + 1,
            StructuredGroup::MatrixGroupSL2Eisenstein(d) => d.generators.len(),
            StructuredGroup::Presented(d) => d.generator_count(),
        }
    }

    /// Which construction block each generator belongs to.
    pub(crate) fn generator_blocks(&self) -> Vec<usize> {
        let n = self.generator_count();
        match self {
            StructuredGroup::FreeProduct(l, _) => {
                let k = l.generator_count();
                (0..n).map(|i| usize::from(i >= k)).collect()
            }
            StructuredGroup::Amalgam(d) => {
                let k = d.left.generator_count();
                (0..n).map(|i| usize::from(i >= k)).collect()
            }
            StructuredGroup::Hnn(_) | StructuredGroup::SemidirectZnByZ(_) | StructuredGroup::FiberedFreeProduct(_) => {
                (0..n).map(|i| usize::from(i + 1 == n)).collect()
            }
            StructuredGroup::DirectWithFinite { h, .. } => {
                let k = h.generator_count();
                (0..n).map(|i| usize::from(i >= k)).collect()
            }
            _ => vec![0; n],
        }
    }

    /// Spell a normal form as a word over the designated generators. Matrix
    /// payloads keep no spelling and return `None`.
    pub fn spell(&self, x: &Form) -> Option<Vec<Letter>> {
        let letters = match self {
            StructuredGroup::FiniteCyclic { order } => {
                let Form::Residue(k) = x else { return None };
                if k.0 == 0 || *order == 1 {
                    vec![]
                } else if 2 * k.0 > *order as i64 {
                    vec![Letter::new(0, k.0 - *order as i64)]
                } else {
                    vec![Letter::new(0, k.0)]
                }
            }
            StructuredGroup::InfiniteCyclic => {
                let Form::Residue(k) = x else { return None };
                word::collect_letters([Letter::new(0, k.0)])
            }
            StructuredGroup::FreeProduct(l, r) => free_product::spell(l, r, x)?,
            StructuredGroup::Amalgam(d) => d.spell(x)?,
            StructuredGroup::Hnn(d) => d.spell(x)?,
            StructuredGroup::SemidirectZnByZ(d) => d.spell(x)?,
            StructuredGroup::DirectWithFinite { h, f } => {
                let Form::Pair { h: hx, f: fx } = x else { return None };
                let mut w = h.spell(hx)?;
                w.extend(word::shift_letters(f.spell(*fx).to_vec(), h.generator_count()));
                w
            }
            StructuredGroup::Finite(t) => {
                let Form::Table(i) = x else { return None };
                t.spell(*i).to_vec()
            }
            StructuredGroup::Surface(d) => d.spell(x)?,
            StructuredGroup::FiberedFreeProduct(d) => d.spell(x)?,
            StructuredGroup::Presented(d) => d.spell(x)?,
            StructuredGroup::MatrixGroupSL2Eisenstein(_) => return None,
        };
        Some(letters)
    }

    pub fn order(&self) -> Option<Cardinal> {
        match self {
            StructuredGroup::FiniteCyclic { order } => Some(Cardinal::Finite(*order)),
            StructuredGroup::InfiniteCyclic => Some(Cardinal::Infinite),
            StructuredGroup::FreeProduct(l, r) => match (l.order()?, r.order()?) {
                (a, b) if a.is_trivial() => Some(b),
                (a, b) if b.is_trivial() => Some(a),
                _ => Some(Cardinal::Infinite),
            },
            StructuredGroup::Amalgam(d) => {
                let (il, ir) = (d.index(0)?, d.index(1)?);
                if il.is_trivial() {
                    d.right.order()
                } else if ir.is_trivial() {
                    d.left.order()
                } else {
                    Some(Cardinal::Infinite)
                }
            }
            StructuredGroup::Hnn(_) | StructuredGroup::SemidirectZnByZ(_) | StructuredGroup::FiberedFreeProduct(_) => {
                Some(Cardinal::Infinite)
            }
            StructuredGroup::DirectWithFinite { h, f } => match h.order()? {
                Cardinal::Finite(n) => Some(Cardinal::Finite(n * f.order() as u64)),
                Cardinal::Infinite => Some(Cardinal::Infinite),
            },
            StructuredGroup::Finite(t) => Some(Cardinal::Finite(t.order() as u64)),
            StructuredGroup::Surface(d) => Some(d.order()),
            StructuredGroup::MatrixGroupSL2Eisenstein(d) => {
                if d.hyperbolic_lattice {
                    Some(Cardinal::Infinite)
                } else {
                    None
                }
            }
            StructuredGroup::Presented(d) => d.order(),
        }
    }

    /// Whether `x` is a payload of the right shape for this construction.
    pub(crate) fn accepts(&self, x: &Form) -> bool {
        matches!(
            (self, x),
            (
                StructuredGroup::FiniteCyclic { .. } | StructuredGroup::InfiniteCyclic,
                Form::Residue(_)
            ) | (StructuredGroup::FreeProduct(..), Form::Free(_))
                | (StructuredGroup::Amalgam(_), Form::Amalgam { .. })
                | (StructuredGroup::Hnn(_), Form::Hnn { .. })
                | (StructuredGroup::SemidirectZnByZ(_), Form::Semidirect { .. })
                | (StructuredGroup::DirectWithFinite { .. }, Form::Pair { .. })
                | (StructuredGroup::Finite(_), Form::Table(_))
                | (StructuredGroup::FiberedFreeProduct(_), Form::Fibered { .. })
                | (StructuredGroup::MatrixGroupSL2Eisenstein(_), Form::Matrix(_))
                | (StructuredGroup::Presented(_), Form::Rewritten(_))
        ) || matches!(self, StructuredGroup::Surface(_))
    }

    /// Child construction blocks that are themselves groups embedded in
    /// this one (free factors, amalgam factors, HNN base, direct factors).
    pub fn components(&self) -> Vec<&StructuredGroup> {
        match self {
            StructuredGroup::FreeProduct(l, r) => vec![l, r],
            StructuredGroup::Amalgam(d) => vec![&d.left, &d.right],
            StructuredGroup::Hnn(d) => vec![&d.base],
            StructuredGroup::DirectWithFinite { h, .. } => vec![h],
            _ => vec![],
        }
    }

    /// Image of a component element in this group.
    pub fn embed_component(&self, index: usize, x: &Form) -> Option<Form> {
        match self {
            StructuredGroup::FreeProduct(l, r) => {
                let child = if index == 0 { l } else { r };
                Some(free_product::embed(child, index as u8, x.clone()))
            }
            StructuredGroup::Amalgam(d) if index < 2 => Some(d.embed(index as u8, x)),
            StructuredGroup::Hnn(d) if index == 0 => Some(d.embed_base(x)),
            StructuredGroup::DirectWithFinite { .. } if index == 0 => Some(Form::Pair {
                h: Box::new(x.clone()),
                f: 0,
            }),
            _ => None,
        }
    }

    /// Number of generators contributed before component `index`.
    fn component_offset(&self, index: usize) -> usize {
        self.components()[..index].iter().map(|c| c.generator_count()).sum()
    }
}

/// A named generator of a [`Group`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub name: String,
    /// Construction block the generator comes from (0 = left factor or base).
    pub factor_index: usize,
}

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

struct GroupInner {
    id: u64,
    structure: StructuredGroup,
    symbols: Vec<GeneratorSymbol>,
    generator_forms: Vec<Form>,
}

/// A structured group together with named generators. Cheap to clone.
#[derive(Clone)]
pub struct Group {
    inner: Arc<GroupInner>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("id", &self.inner.id)
            .field("generators", &self.generator_names())
            .field("structure", &self.inner.structure)
            .finish()
    }
}

/// An element of a [`Group`] in canonical normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    owner: u64,
    form: Form,
}

impl GroupElement {
    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn owner(&self) -> u64 {
        self.owner
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.form.cmp(&other.form).then(self.owner.cmp(&other.owner))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

const RESERVED: [&str; 2] = ["t", "h"];

/// Letters a, b, c, … skipping the reserved stable/fiber names, then a1, b1, ….
pub(crate) fn fresh_names(n: usize) -> Vec<String> {
    let letters: Vec<char> = ('a'..='z')
        .filter(|c| !RESERVED.contains(&c.to_string().as_str()))
        .collect();
    (0..n)
        .map(|i| {
            let round = i / letters.len();
            let c = letters[i % letters.len()];
            if round == 0 {
                c.to_string()
            } else {
                format!("{c}{round}")
            }
        })
        .collect()
}

fn has_duplicates(names: &[String]) -> bool {
    let mut seen = HashSet::new();
    names.iter().any(|n| !seen.insert(n))
}

impl Group {
    /// Wrap a structure with explicit generator names.
    pub fn new(structure: StructuredGroup, names: Vec<String>) -> Result<Group> {
        if names.len() != structure.generator_count() {
            return invalid(format!(
                "expected {} generator names, got {}",
                structure.generator_count(),
                names.len()
            ));
        }
        if has_duplicates(&names) {
            return invalid("generator names must be unique");
        }
        if let Some(bad) = names
            .iter()
            .find(|n| n.is_empty() || *n == "1" || !n.chars().all(|c| c.is_alphanumeric() || c == '_'))
        {
            return invalid(format!("bad generator name `{bad}`"));
        }
        let blocks = structure.generator_blocks();
        let symbols = names
            .into_iter()
            .zip(blocks)
            .map(|(name, factor_index)| GeneratorSymbol { name, factor_index })
            .collect();
        let generator_forms = structure.generator_forms();
        Ok(Group {
            inner: Arc::new(GroupInner {
                id: NEXT_GROUP_ID.fetch_add(1, AtomicOrdering::Relaxed),
                structure,
                symbols,
                generator_forms,
            }),
        })
    }

    /// Keep the child-provided names unless they clash, in which case the
    /// child part is relettered a, b, c, ….
    fn assemble(structure: StructuredGroup, child_names: Vec<String>, own: Vec<String>) -> Result<Group> {
        let mut names = child_names.clone();
        names.extend(own.iter().cloned());
        if has_duplicates(&names) {
            names = fresh_names(child_names.len());
            names.extend(own);
        }
        Group::new(structure, names)
    }

    pub fn finite_cyclic(order: u64) -> Result<Group> {
        if order == 0 {
            return invalid("cyclic order must be at least 1");
        }
        Group::new(StructuredGroup::FiniteCyclic { order }, vec!["a".into()])
    }

    pub fn infinite_cyclic() -> Group {
        Group::new(StructuredGroup::InfiniteCyclic, vec!["a".into()]).expect("valid")
    }

    pub fn free_product(left: &Group, right: &Group) -> Result<Group> {
        let structure =
            StructuredGroup::FreeProduct(Box::new(left.structure().clone()), Box::new(right.structure().clone()));
        let mut names = left.generator_names();
        names.extend(right.generator_names());
        Group::assemble(structure, names, vec![])
    }

    /// Γ₁ ∗_{Γ₀} Γ₂ for a finite edge group Γ₀ with the given embeddings
    /// (images indexed by the edge table's elements).
    pub fn amalgam(
        left: &Group,
        right: &Group,
        edge: FiniteGroup,
        left_images: &[GroupElement],
        right_images: &[GroupElement],
    ) -> Result<Group> {
        let li = left.forms_of(left_images)?;
        let ri = right.forms_of(right_images)?;
        let data = AmalgamData::new(left.structure().clone(), right.structure().clone(), edge, li, ri)?;
        let mut names = left.generator_names();
        names.extend(right.generator_names());
        Group::assemble(StructuredGroup::Amalgam(Box::new(data)), names, vec![])
    }

    /// HNN extension of `base` with a finite associated subgroup: the stable
    /// letter conjugates `from_images[k]` to `to_images[k]`.
    pub fn hnn_finite(
        base: &Group,
        edge: FiniteGroup,
        from_images: &[GroupElement],
        to_images: &[GroupElement],
        stable: &str,
    ) -> Result<Group> {
        let fi = base.forms_of(from_images)?;
        let ti = base.forms_of(to_images)?;
        let assoc = Associated::Finite(EdgeEmbedding::new(base.structure(), edge, [fi, ti])?);
        let data = HnnData::new(base.structure().clone(), assoc)?;
        Group::assemble(
            StructuredGroup::Hnn(Box::new(data)),
            base.generator_names(),
            vec![stable.into()],
        )
    }

    /// HNN extension of Z = ⟨a⟩ with t aᵐ t⁻¹ = aⁿ (Baumslag–Solitar).
    pub fn hnn_cyclic(base: &Group, from_power: i64, to_power: i64, stable: &str) -> Result<Group> {
        let data = HnnData::new(
            base.structure().clone(),
            Associated::Cyclic {
                from: from_power,
                to: to_power,
            },
        )?;
        Group::assemble(
            StructuredGroup::Hnn(Box::new(data)),
            base.generator_names(),
            vec![stable.into()],
        )
    }

    /// Zⁿ ⋊_φ Z with t v t⁻¹ = φ(v); generators e1…en, t.
    pub fn semidirect(phi: Vec<Vec<i64>>) -> Result<Group> {
        let data = SemidirectData::new(phi)?;
        let mut names: Vec<String> = (1..=data.rank()).map(|i| format!("e{i}")).collect();
        names.push("t".into());
        Group::new(StructuredGroup::SemidirectZnByZ(data), names)
    }

    pub fn direct_with_finite(h: &Group, f: FiniteGroup) -> Result<Group> {
        let fnames: Vec<String> = (1..=f.generators().len()).map(|i| format!("f{i}")).collect();
        let structure = StructuredGroup::DirectWithFinite {
            h: Box::new(h.structure().clone()),
            f,
        };
        let mut names = h.generator_names();
        names.extend(fnames);
        Group::assemble(structure, names, vec![])
    }

    pub fn finite(table: FiniteGroup) -> Result<Group> {
        let names = fresh_names(table.generators().len());
        Group::new(StructuredGroup::Finite(table), names)
    }

    pub fn surface(genus: u32, orientable: bool, boundary: u32) -> Result<Group> {
        let data = SurfaceData::new(genus, orientable, boundary)?;
        let names = data.default_names();
        Group::new(StructuredGroup::Surface(Box::new(data)), names)
    }

    /// ⟨g₁…gₖ, h | h central, gⱼ^αⱼ = h^βⱼ for periodic factors⟩; generators
    /// are named by the caller, the fiber last.
    pub fn fibered(factors: Vec<FiberFactor>, names: Vec<String>) -> Result<Group> {
        let data = FiberedData::new(factors)?;
        Group::new(StructuredGroup::FiberedFreeProduct(data), names)
    }

    pub fn matrix_group(generators: Vec<Mat2E>, hyperbolic_lattice: bool, names: Vec<String>) -> Result<Group> {
        if generators.is_empty() {
            return invalid("matrix group needs at least one generator");
        }
        Group::new(
            StructuredGroup::MatrixGroupSL2Eisenstein(MatrixGroupData {
                generators,
                hyperbolic_lattice,
            }),
            names,
        )
    }

    /// ⟨names | relators⟩ via shortlex completion; see [`PresentedData::new`].
    pub fn presented(
        names: Vec<String>,
        relators: &[Vec<Letter>],
        orderings: &[Vec<usize>],
        max_rules: usize,
        order: Option<Cardinal>,
    ) -> Result<Group> {
        let data = PresentedData::new(names.len(), relators, orderings, max_rules, order)?;
        Group::new(StructuredGroup::Presented(Box::new(data)), names)
    }

    /// Same structure, new generator names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Group> {
        Group::new(self.structure().clone(), names)
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn structure(&self) -> &StructuredGroup {
        &self.inner.structure
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.inner.symbols
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.inner.symbols.iter().map(|s| s.name.clone()).collect()
    }

    pub fn order(&self) -> Option<Cardinal> {
        self.structure().order()
    }

    pub fn identity(&self) -> GroupElement {
        self.wrap(self.structure().identity())
    }

    pub fn generator(&self, index: usize) -> Result<GroupElement> {
        match self.inner.generator_forms.get(index) {
            Some(f) => Ok(self.wrap(f.clone())),
            None => usage(format!("generator index {index} out of range")),
        }
    }

    pub fn generator_by_name(&self, name: &str) -> Result<GroupElement> {
        match self.generator_index(name) {
            Some(i) => self.generator(i),
            None => usage(format!("unknown generator `{name}`")),
        }
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.inner.symbols.iter().position(|s| s.name == name)
    }

    pub(crate) fn wrap(&self, form: Form) -> GroupElement {
        GroupElement {
            owner: self.inner.id,
            form,
        }
    }

    /// Wrap an externally produced payload after a shape check.
    pub fn element_from_form(&self, form: Form) -> Result<GroupElement> {
        if !self.structure().accepts(&form) {
            return usage("payload does not belong to this group");
        }
        Ok(self.wrap(form))
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.owner != self.inner.id {
            return usage("element belongs to a different group");
        }
        Ok(())
    }

    fn forms_of(&self, elems: &[GroupElement]) -> Result<Vec<Form>> {
        elems
            .iter()
            .map(|e| {
                self.check(e)?;
                Ok(e.form.clone())
            })
            .collect()
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        self.structure().is_identity(&g.form)
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.wrap(self.structure().mul(&g.form, &h.form)))
    }

    pub fn invert(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(self.wrap(self.structure().inv(&g.form)))
    }

    pub fn power(&self, g: &GroupElement, k: i64) -> Result<GroupElement> {
        self.check(g)?;
        Ok(self.wrap(self.structure().pow(&g.form, k)))
    }

    /// by · g · by⁻¹.
    pub fn conjugate(&self, g: &GroupElement, by: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(by)?;
        Ok(self.wrap(self.structure().conj(&g.form, &by.form)))
    }

    pub fn commutes(&self, g: &GroupElement, h: &GroupElement) -> Result<bool> {
        Ok(self.multiply(g, h)? == self.multiply(h, g)?)
    }

    /// Normal form of a product of generator powers.
    pub fn reduce_word(&self, letters: &[Letter]) -> Result<GroupElement> {
        let s = self.structure();
        let mut acc = s.identity();
        for l in letters {
            let Some(g) = self.inner.generator_forms.get(l.generator) else {
                return usage(format!("unknown generator index {}", l.generator));
            };
            acc = s.mul(&acc, &s.pow(g, l.exponent));
        }
        Ok(self.wrap(acc))
    }

    /// Parse the word syntax (`a b' a^2`) against this group's generator names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        word::tokenize(text)?
            .into_iter()
            .map(|t| match self.generator_index(&t.name) {
                Some(i) => Ok(Letter::new(i, t.exponent)),
                None => Err(Error::Usage(format!("unknown generator `{}`", t.name))),
            })
            .collect()
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let letters = self.parse_word(text)?;
        self.reduce_word(&letters)
    }

    /// A word spelling `g`: read off the normal form, or for matrix groups a
    /// shortest word found by breadth-first search (up to length 12).
    pub fn spell(&self, g: &GroupElement) -> Result<Option<Vec<Letter>>> {
        self.check(g)?;
        if let Some(w) = self.structure().spell(&g.form) {
            return Ok(Some(w));
        }
        Ok(self.search_spelling(&g.form, 12))
    }

    fn search_spelling(&self, target: &Form, max_len: usize) -> Option<Vec<Letter>> {
        let s = self.structure();
        let steps = self.steps_with_letters();
        let mut parent: HashMap<Form, Option<(Form, Letter)>> = HashMap::new();
        let id = s.identity();
        parent.insert(id.clone(), None);
        let mut frontier = vec![id];
        for _ in 0..=max_len {
            if let Some(found) = frontier.iter().find(|f| *f == target).cloned() {
                let mut letters = Vec::new();
                let mut cur = found;
                while let Some(Some((prev, l))) = parent.get(&cur).cloned() {
                    letters.push(l);
                    cur = prev;
                }
                letters.reverse();
                return Some(word::collect_letters(letters));
            }
            let mut next = Vec::new();
            for x in &frontier {
                for (step, letter) in &steps {
                    let y = s.mul(x, step);
                    if !parent.contains_key(&y) {
                        parent.insert(y.clone(), Some((x.clone(), *letter)));
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        None
    }

    /// Human-readable element: a word when one is available, else the payload.
    pub fn render(&self, g: &GroupElement) -> String {
        match self.spell(g) {
            Ok(Some(w)) => word::render_letters(&w, &self.generator_names()),
            _ => match &g.form {
                Form::Matrix(m) => m.to_string(),
                other => format!("{other:?}"),
            },
        }
    }

    /// Generator steps s and s⁻¹ (deduplicated, identity dropped) with the
    /// letter realizing each, in canonical order.
    fn steps_with_letters(&self) -> Vec<(Form, Letter)> {
        let s = self.structure();
        let mut steps: Vec<(Form, Letter)> = Vec::new();
        for (i, g) in self.inner.generator_forms.iter().enumerate() {
            for e in [1i64, -1] {
                let f = if e == 1 { g.clone() } else { s.inv(g) };
                if s.is_identity(&f) || steps.iter().any(|(x, _)| *x == f) {
                    continue;
                }
                steps.push((f, Letter::new(i, e)));
            }
        }
        steps.sort_by(|a, b| a.0.cmp(&b.0));
        steps
    }

    /// Spheres of the Cayley ball: layer r holds the elements at word
    /// length exactly r, sorted by payload.
    pub fn ball_layers(&self, radius: usize) -> Vec<Vec<GroupElement>> {
        let mut layers = Vec::new();
        self.walk_ball(radius, |_, layer| {
            layers.push(layer.to_vec());
            true
        });
        layers
    }

    /// Visit the spheres of radius 0, 1, … up to `radius` in order; stop
    /// early when `visit` returns false.
    pub fn walk_ball(&self, radius: usize, mut visit: impl FnMut(usize, &[GroupElement]) -> bool) {
        let s = self.structure();
        let steps: Vec<Form> = self.steps_with_letters().into_iter().map(|(f, _)| f).collect();
        let id = s.identity();
        let mut seen: HashSet<Form> = HashSet::from([id.clone()]);
        let mut layer: Vec<Form> = vec![id];
        for r in 0..=radius {
            let wrapped: Vec<GroupElement> = layer.iter().map(|f| self.wrap(f.clone())).collect();
            if !visit(r, &wrapped) || r == radius {
                return;
            }
            let mut next: BTreeSet<Form> = BTreeSet::new();
            for x in &layer {
                for step in &steps {
                    let y = s.mul(x, step);
                    if !seen.contains(&y) {
                        next.insert(y);
                    }
                }
            }
            seen.extend(next.iter().cloned());
            layer = next.into_iter().collect();
        }
    }

    /// All elements of word length ≤ radius, by length then payload.
    pub fn enumerate_ball(&self, radius: usize) -> Vec<GroupElement> {
        self.ball_layers(radius).into_iter().flatten().collect()
    }

    /// Sub-group for component `index` (see [`StructuredGroup::components`]),
    /// keeping its generator names.
    pub fn component(&self, index: usize) -> Result<Group> {
        let comps = self.structure().components();
        let Some(child) = comps.get(index) else {
            return usage(format!("component {index} does not exist"));
        };
        let offset = self.structure().component_offset(index);
        let names = self.generator_names()[offset..offset + child.generator_count()].to_vec();
        Group::new((*child).clone(), names)
    }

    /// Image in this group of an element of `component(index)`.
    pub fn embed_component(&self, index: usize, component: &Group, x: &GroupElement) -> Result<GroupElement> {
        component.check(x)?;
        match self.structure().embed_component(index, &x.form) {
            Some(f) => Ok(self.wrap(f)),
            None => usage(format!("component {index} does not exist")),
        }
    }
}
