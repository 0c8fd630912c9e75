//! The JSON descriptor file format: a top-level `"type"` of `group`,
//! `manifold`, `knot` or `link`, `"schema_version": 1`, and the fields of
//! the corresponding description. Unknown fields are rejected.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::group::{FiberFactor, FiniteGroup, Group, GroupElement, IntMatrix};
use crate::manifold::{
    decide_icc_knot, decide_icc_link, decide_manifold, icc_seifert, realize_manifold, seifert_group, KnotDescriptor,
    LinkDescriptor, ManifoldDescriptor, PrimePiece, SeifertInvariants,
};
use crate::matrix::{figure8_group, EisensteinInt, Mat2E};
use crate::rules::{decide_group, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DescriptorFile {
    Group(GroupFile),
    Manifold(ManifoldFile),
    Knot(KnotFile),
    Link(LinkFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub construction: Construction,
    /// Replacement generator names, in generator order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub orientable: bool,
    pub pieces: Vec<PrimePiece>,
    #[serde(default)]
    pub boundary_spheres_capped: bool,
}

/// Exactly one of `torus`, `hyperbolic`, `figure_eight`, `is_torus`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperbolic: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub figure_eight: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_torus: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub components: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_seifert_fiber_union: Option<bool>,
}

/// A structured group by construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Construction {
    Cyclic(u64),
    InfiniteCyclic,
    /// Right-nested: [G₁, G₂, G₃] is G₁ ∗ (G₂ ∗ G₃).
    FreeProduct(Vec<Construction>),
    Amalgam(Box<AmalgamSpec>),
    Hnn(Box<HnnSpec>),
    /// Z = ⟨a⟩ extended by t with t aᶠʳᵒᵐ t⁻¹ = aᵗᵒ.
    HnnCyclic(HnnCyclicSpec),
    /// φ for Zⁿ ⋊_φ Z.
    Semidirect(IntMatrix),
    DirectWithFinite(Box<DirectSpec>),
    Finite(FiniteSpec),
    Surface(SurfaceSpec),
    Fibered(FiberedSpec),
    Seifert(SeifertInvariants),
    FigureEight,
    MatrixGroup(MatrixSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FiniteSpec {
    Cyclic(usize),
    Symmetric3,
    /// Full multiplication table with 0 as identity.
    Table {
        rows: Vec<Vec<usize>>,
        generators: Vec<usize>,
    },
}

/// Edge embeddings give the image of each designated edge generator as a
/// word in the factor (or base) group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmalgamSpec {
    pub left: Construction,
    pub right: Construction,
    pub edge: FiniteSpec,
    pub left_images: Vec<String>,
    pub right_images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HnnSpec {
    pub base: Construction,
    pub edge: FiniteSpec,
    pub from: Vec<String>,
    pub to: Vec<String>,
    #[serde(default = "stable_default")]
    pub stable: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HnnCyclicSpec {
    pub from: i64,
    pub to: i64,
    #[serde(default = "stable_default")]
    pub stable: String,
}

fn stable_default() -> String {
    "t".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectSpec {
    pub h: Construction,
    pub f: FiniteSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub orientable: bool,
    #[serde(default)]
    pub boundary: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FactorSpec {
    Free,
    /// (α, β) with gᵅ = hᵝ.
    Periodic(i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberedSpec {
    pub factors: Vec<FactorSpec>,
    /// One name per factor followed by the fiber's name.
    pub names: Vec<String>,
}

/// Entries are [a, b] for a + bω.
pub type EisensteinSpec = [i64; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub generators: Vec<[[EisensteinSpec; 2]; 2]>,
    #[serde(default)]
    pub lattice: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// A group built from a descriptor, with the element the descriptor singles
/// out (the Seifert fiber, the central element of a torus-knot group).
#[derive(Clone, Debug)]
pub struct Subject {
    pub group: Group,
    pub distinguished: Option<GroupElement>,
}

/// Parse a descriptor; errors carry the line and column reported by the
/// JSON reader.
pub fn parse_descriptor(text: &str) -> Result<DescriptorFile> {
    let file: DescriptorFile = serde_json::from_str(text).map_err(|e| Error::Parse(locate(text, e)))?;
    let version = file.schema_version();
    if version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema_version must be {SCHEMA_VERSION}, found {version}"
        )));
    }
    file.validate()?;
    Ok(file)
}

// Tagged enums are buffered before the variant is read, so their errors
// lose the position; recover it from the first quoted token in the message.
fn locate(text: &str, e: serde_json::Error) -> String {
    let msg = e.to_string();
    if e.line() > 0 {
        return msg;
    }
    let token = msg.split('`').nth(1).map(|t| format!("\"{t}\""));
    match token.and_then(|t| text.find(&t)) {
        Some(offset) => {
            let before = &text[..offset];
            let line = before.matches('\n').count() + 1;
            let column = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
            format!("{msg} at line {line} column {column}")
        }
        None => msg,
    }
}

pub fn load_descriptor(path: &std::path::Path) -> Result<DescriptorFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    parse_descriptor(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

impl DescriptorFile {
    pub fn schema_version(&self) -> u32 {
        match self {
            DescriptorFile::Group(f) => f.schema_version,
            DescriptorFile::Manifold(f) => f.schema_version,
            DescriptorFile::Knot(f) => f.schema_version,
            DescriptorFile::Link(f) => f.schema_version,
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            DescriptorFile::Group(f) => f.name.as_deref(),
            DescriptorFile::Manifold(f) => f.name.as_deref(),
            DescriptorFile::Knot(f) => f.name.as_deref(),
            DescriptorFile::Link(f) => f.name.as_deref(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DescriptorFile::Group(_) => "group",
            DescriptorFile::Manifold(_) => "manifold",
            DescriptorFile::Knot(_) => "knot",
            DescriptorFile::Link(_) => "link",
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            DescriptorFile::Group(_) => Ok(()),
            DescriptorFile::Manifold(f) => f.descriptor().validate(),
            DescriptorFile::Knot(f) => f.descriptor()?.validate(),
            DescriptorFile::Link(f) => {
                if f.components == 0 {
                    return usage("a link has at least one component");
                }
                Ok(())
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptors serialize")
    }

    pub fn decide(&self) -> Result<Verdict> {
        match self {
            DescriptorFile::Group(f) => match &f.construction {
                Construction::Seifert(s) => icc_seifert(s),
                _ => decide_group(&f.build()?.group),
            },
            DescriptorFile::Manifold(f) => decide_manifold(&f.descriptor()),
            DescriptorFile::Knot(f) => decide_icc_knot(&f.descriptor()?),
            DescriptorFile::Link(f) => decide_icc_link(&f.descriptor()),
        }
    }

    /// The structured group the descriptor denotes, when one is available.
    pub fn subject(&self) -> Result<Subject> {
        match self {
            DescriptorFile::Group(f) => f.build(),
            DescriptorFile::Manifold(f) => {
                let (group, distinguished) = realize_manifold(&f.descriptor())?;
                Ok(Subject { group, distinguished })
            }
            DescriptorFile::Knot(f) => match f.descriptor()?.realize()? {
                Some((group, distinguished)) => Ok(Subject { group, distinguished }),
                None => Err(Error::Unsupported(
                    "this knot carries no group data; only the verdict is available".into(),
                )),
            },
            DescriptorFile::Link(_) => Err(Error::Unsupported(
                "link descriptors carry no group data; only the verdict is available".into(),
            )),
        }
    }
}

impl ManifoldFile {
    pub fn descriptor(&self) -> ManifoldDescriptor {
        ManifoldDescriptor {
            orientable: self.orientable,
            pieces: self.pieces.clone(),
            boundary_spheres_capped: self.boundary_spheres_capped,
        }
    }

    pub fn from_descriptor(name: Option<String>, m: &ManifoldDescriptor) -> ManifoldFile {
        ManifoldFile {
            schema_version: SCHEMA_VERSION,
            name,
            orientable: m.orientable,
            pieces: m.pieces.clone(),
            boundary_spheres_capped: m.boundary_spheres_capped,
        }
    }
}

impl KnotFile {
    pub fn descriptor(&self) -> Result<KnotDescriptor> {
        let mut found = Vec::new();
        if let Some((p, q)) = self.torus {
            found.push(KnotDescriptor::Torus { p, q });
        }
        match self.hyperbolic {
            Some(true) => found.push(KnotDescriptor::Hyperbolic),
            Some(false) => return usage("\"hyperbolic\": false says nothing; use \"is_torus\" instead"),
            None => {}
        }
        match self.figure_eight {
            Some(true) => found.push(KnotDescriptor::FigureEight),
            Some(false) => return usage("\"figure_eight\" may only be true"),
            None => {}
        }
        if let Some(is_torus) = self.is_torus {
            found.push(KnotDescriptor::Other { is_torus });
        }
        match found.len() {
            1 => Ok(found.pop().expect("one")),
            0 => usage("a knot needs one of torus, hyperbolic, figure_eight, is_torus"),
            _ => usage("a knot takes exactly one of torus, hyperbolic, figure_eight, is_torus"),
        }
    }
}

impl LinkFile {
    pub fn descriptor(&self) -> LinkDescriptor {
        LinkDescriptor {
            components: self.components,
            is_seifert_fiber_union: self.is_seifert_fiber_union,
        }
    }
}

impl FiniteSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            FiniteSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
            FiniteSpec::Symmetric3 => Ok(FiniteGroup::symmetric3()),
            FiniteSpec::Table { rows, generators } => FiniteGroup::new(rows.clone(), generators.clone()),
        }
    }
}

/// Images of every element of `edge`, given images of its designated
/// generators, extended along shortest spellings.
fn edge_images(target: &Group, edge: &FiniteGroup, generator_images: &[String]) -> Result<Vec<GroupElement>> {
    if generator_images.len() != edge.generators().len() {
        return usage(format!(
            "expected images of {} edge generators, got {}",
            edge.generators().len(),
            generator_images.len()
        ));
    }
    let gens: Vec<GroupElement> = generator_images
        .iter()
        .map(|w| target.parse_element(w))
        .collect::<Result<_>>()?;
    (0..edge.order())
        .map(|x| {
            edge.spell(x).iter().try_fold(target.identity(), |acc, l| {
                let step = target.power(&gens[l.generator], l.exponent)?;
                target.multiply(&acc, &step)
            })
        })
        .collect()
}

impl Construction {
    pub fn build(&self) -> Result<Subject> {
        let plain = |group: Group| Subject {
            group,
            distinguished: None,
        };
        Ok(match self {
            Construction::Cyclic(0) => return usage("cyclic order must be at least 1"),
            Construction::Cyclic(n) => plain(Group::finite_cyclic(*n)?),
            Construction::InfiniteCyclic => plain(Group::infinite_cyclic()),
            Construction::FreeProduct(parts) => {
                if parts.len() < 2 {
                    return usage("a free product needs at least two factors");
                }
                let mut groups: Vec<Group> = parts.iter().map(|p| Ok(p.build()?.group)).collect::<Result<_>>()?;
                let mut acc = groups.pop().expect("two or more");
                while let Some(g) = groups.pop() {
                    acc = Group::free_product(&g, &acc)?;
                }
                plain(acc)
            }
            Construction::Amalgam(a) => {
                let left = a.left.build()?.group;
                let right = a.right.build()?.group;
                let edge = a.edge.build()?;
                let li = edge_images(&left, &edge, &a.left_images)?;
                let ri = edge_images(&right, &edge, &a.right_images)?;
                plain(Group::amalgam(&left, &right, edge, &li, &ri)?)
            }
            Construction::Hnn(h) => {
                let base = h.base.build()?.group;
                let edge = h.edge.build()?;
                let from = edge_images(&base, &edge, &h.from)?;
                let to = edge_images(&base, &edge, &h.to)?;
                plain(Group::hnn_finite(&base, edge, &from, &to, &h.stable)?)
            }
            Construction::HnnCyclic(h) => plain(Group::hnn_cyclic(&Group::infinite_cyclic(), h.from, h.to, &h.stable)?),
            Construction::Semidirect(phi) => plain(Group::semidirect(phi.clone())?),
            Construction::DirectWithFinite(d) => plain(Group::direct_with_finite(&d.h.build()?.group, d.f.build()?)?),
            Construction::Finite(f) => plain(Group::finite(f.build()?)?),
            Construction::Surface(s) => plain(Group::surface(s.genus, s.orientable, s.boundary)?),
            Construction::Fibered(f) => {
                let factors = f
                    .factors
                    .iter()
                    .map(|x| match *x {
                        FactorSpec::Free => FiberFactor::Free,
                        FactorSpec::Periodic(alpha, beta) => FiberFactor::Periodic { alpha, beta },
                    })
                    .collect();
                let group = Group::fibered(factors, f.names.clone())?;
                let fiber = group.generator(group.generators().len() - 1)?;
                Subject {
                    group,
                    distinguished: Some(fiber),
                }
            }
            Construction::Seifert(s) => match seifert_group(s)?.realization {
                Some(r) => Subject {
                    group: r.group,
                    distinguished: Some(r.fiber),
                },
                None => {
                    return Err(Error::Unsupported(
                        "no normal form is available for this Seifert group; only the verdict is".into(),
                    ))
                }
            },
            Construction::FigureEight => plain(figure8_group()),
            Construction::MatrixGroup(m) => {
                let gens = m
                    .generators
                    .iter()
                    .map(|[[p, q], [r, s]]| {
                        let e = |x: &EisensteinSpec| EisensteinInt::new(x[0], x[1]);
                        Mat2E::new(e(p), e(q), e(r), e(s))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let names = m
                    .names
                    .clone()
                    .unwrap_or_else(|| (1..=gens.len()).map(|i| format!("M{i}")).collect());
                plain(Group::matrix_group(gens, m.lattice, names)?)
            }
        })
    }
}

impl GroupFile {
    pub fn build(&self) -> Result<Subject> {
        let mut s = self.construction.build()?;
        if let Some(names) = &self.names {
            let renamed = s.group.renamed(names.clone())?;
            s.distinguished = s
                .distinguished
                .map(|x| renamed.element_from_form(x.form().clone()))
                .transpose()?;
            s.group = renamed;
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::Status;

    #[test]
    fn cli_examples_parse_and_decide() {
        let knot = parse_descriptor(r#"{"type":"knot","schema_version":1,"torus":[2,3]}"#).unwrap();
        let v = knot.decide().unwrap();
        assert_eq!(v.status, Status::NotIcc);
        assert_eq!(v.witness.unwrap().description, "x^2");
        let d = parse_descriptor(
            r#"{"type":"group","schema_version":1,"construction":{"free_product":[{"cyclic":2},{"cyclic":2}]}}"#,
        )
        .unwrap();
        assert_eq!(d.decide().unwrap().status, Status::NotIcc);
        let m = parse_descriptor(
            r#"{"type":"manifold","schema_version":1,"orientable":true,"pieces":[{"kind":"torus_bundle","monodromy":[[2,1],[1,1]]}]}"#,
        )
        .unwrap();
        assert_eq!(m.decide().unwrap().status, Status::Icc);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_descriptor("{\"type\":\"knot\",\n\"schema_version\":1,\n\"torus\":[2,3],\n\"colour\":1}")
            .unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("line 4"), "{msg}");
        assert!(msg.contains("colour"), "{msg}");
        let e = parse_descriptor(r#"{"type":"knot","torus":[2,3]}"#).unwrap_err();
        assert!(e.to_string().contains("schema_version"), "{e}");
        let e = parse_descriptor(r#"{"type":"knot","schema_version":2,"torus":[2,3]}"#).unwrap_err();
        assert!(e.to_string().contains("must be 1"), "{e}");
        assert!(parse_descriptor(r#"{"type":"knot","schema_version":1,"torus":[2,4]}"#).is_err());
        assert!(parse_descriptor(r#"{"type":"knot","schema_version":1}"#).is_err());
        assert!(parse_descriptor(r#"{"type":"spaceship","schema_version":1}"#).is_err());
    }

    #[test]
    fn constructions_build() {
        let cases = [
            r#""infinite_cyclic""#,
            r#"{"hnn_cyclic":{"from":1,"to":2}}"#,
            r#"{"semidirect":[[1,1],[0,1]]}"#,
            r#"{"direct_with_finite":{"h":"infinite_cyclic","f":{"cyclic":2}}}"#,
            r#"{"finite":"symmetric3"}"#,
            r#"{"finite":{"table":{"rows":[[0,1],[1,0]],"generators":[1]}}}"#,
            r#"{"surface":{"genus":2,"orientable":true}}"#,
            r#"{"fibered":{"factors":[{"periodic":[2,1]},{"periodic":[3,1]}],"names":["x","y","h"]}}"#,
            r#"{"seifert":{"base_genus":1,"base_orientable":true,"euler_obstruction":0}}"#,
            r#""figure_eight""#,
            r#"{"matrix_group":{"generators":[[[[1,0],[1,0]],[[0,0],[1,0]]]],"names":["A"]}}"#,
            r#"{"amalgam":{"left":{"finite":"symmetric3"},"right":{"cyclic":4},"edge":{"cyclic":2},"left_images":["a"],"right_images":["a^2"]}}"#,
            r#"{"hnn":{"base":{"cyclic":4},"edge":{"cyclic":2},"from":["a^2"],"to":["a^2"]}}"#,
        ];
        for c in cases {
            let text = format!(r#"{{"type":"group","schema_version":1,"construction":{c}}}"#);
            let d = parse_descriptor(&text).unwrap_or_else(|e| panic!("{c}: {e}"));
            d.subject().unwrap_or_else(|e| panic!("{c}: {e}"));
            d.decide().unwrap_or_else(|e| panic!("{c}: {e}"));
            let again = parse_descriptor(&d.to_json()).unwrap();
            assert_eq!(again, d);
        }
    }

    #[test]
    fn renaming_keeps_the_distinguished_element() {
        let d = parse_descriptor(
            r#"{"type":"group","schema_version":1,"construction":{"fibered":{"factors":["free"],"names":["a","h"]}},"names":["u","z"]}"#,
        )
        .unwrap();
        let s = d.subject().unwrap();
        assert_eq!(s.group.render(s.distinguished.as_ref().unwrap()), "z");
    }

    #[test]
    fn links_have_no_group() {
        let d = parse_descriptor(r#"{"type":"link","schema_version":1,"components":2,"is_seifert_fiber_union":true}"#)
            .unwrap();
        assert_eq!(d.decide().unwrap().status, Status::NotIcc);
        assert!(matches!(d.subject(), Err(Error::Unsupported(_))));
    }
}
