//! Three-valued ICC verdicts with cited reasons, and the group-level
//! decision combinators.
//!
//! The criteria are sufficient conditions. When a hypothesis cannot be
//! checked the verdict is `Unknown`, never a guessed negative.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{usage, Result};
use crate::group::{
    determinant, kernel_vector, power_minus_scalar, Associated, Cardinal, Exp, FiniteGroup, Form, Group, GroupElement,
    HnnData, IntMatrix, SemidirectData, StructuredGroup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Icc,
    NotIcc,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Icc => "ICC",
            Status::NotIcc => "NotICC",
            Status::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// The fixed list of statements a reason may cite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    /// ICC groups are infinite with every nontrivial class infinite.
    Definition,
    /// Surface groups: which surfaces have ICC fundamental group.
    Surfaces,
    /// π₁ of a connected sum is the free product of the pieces' groups.
    KneserMilnor,
    Lemma1,
    Prop2,
    /// Orientable irreducible M with an infinite cyclic normal subgroup in π₁ is Seifert.
    SeifertConjecture,
    Prop3i,
    Prop3ii,
    Prop3iii,
    Prop3iv,
    Prop3v,
    Lemma4,
    Lemma5,
    Lemma6,
    Lemma10,
    Theorem12,
    Theorem13,
    Theorem15,
    Lemma16,
    Prop17,
    Prop18,
    Theorem19,
    Cor20,
    /// A link group is ICC unless the link is a union of Seifert fibers.
    LinkRemark,
    Prop21,
    Prop24,
}

impl Statement {
    pub const ALL: [Statement; 26] = [
        Statement::Definition,
        Statement::Surfaces,
        Statement::KneserMilnor,
        Statement::Lemma1,
        Statement::Prop2,
        Statement::SeifertConjecture,
        Statement::Prop3i,
        Statement::Prop3ii,
        Statement::Prop3iii,
        Statement::Prop3iv,
        Statement::Prop3v,
        Statement::Lemma4,
        Statement::Lemma5,
        Statement::Lemma6,
        Statement::Lemma10,
        Statement::Theorem12,
        Statement::Theorem13,
        Statement::Theorem15,
        Statement::Lemma16,
        Statement::Prop17,
        Statement::Prop18,
        Statement::Theorem19,
        Statement::Cor20,
        Statement::LinkRemark,
        Statement::Prop21,
        Statement::Prop24,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Statement::Definition => "Definition",
            Statement::Surfaces => "Surface groups",
            Statement::KneserMilnor => "Kneser-Milnor",
            Statement::Lemma1 => "Lemma 1",
            Statement::Prop2 => "Prop 2",
            Statement::SeifertConjecture => "Seifert fibration conjecture",
            Statement::Prop3i => "Prop 3(i)",
            Statement::Prop3ii => "Prop 3(ii)",
            Statement::Prop3iii => "Prop 3(iii)",
            Statement::Prop3iv => "Prop 3(iv)",
            Statement::Prop3v => "Prop 3(v)",
            Statement::Lemma4 => "Lemma 4",
            Statement::Lemma5 => "Lemma 5",
            Statement::Lemma6 => "Lemma 6",
            Statement::Lemma10 => "Lemma 10",
            Statement::Theorem12 => "Theorem 12",
            Statement::Theorem13 => "Theorem 13",
            Statement::Theorem15 => "Theorem 15",
            Statement::Lemma16 => "Lemma 16",
            Statement::Prop17 => "Prop 17",
            Statement::Prop18 => "Prop 18",
            Statement::Theorem19 => "Theorem 19",
            Statement::Cor20 => "Cor 20",
            Statement::LinkRemark => "Link remark",
            Statement::Prop21 => "Prop 21",
            Statement::Prop24 => "Prop 24",
        }
    }

    pub fn from_label(label: &str) -> Option<Statement> {
        Statement::ALL.into_iter().find(|s| s.label() == label)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Statement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Citation {
    #[serde(rename = "label")]
    pub statement: Statement,
    pub detail: String,
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.statement, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ReasonChain(pub Vec<Citation>);

impl ReasonChain {
    pub fn labels(&self) -> Vec<&'static str> {
        self.0.iter().map(|c| c.statement.label()).collect()
    }

    pub fn cites(&self, s: Statement) -> bool {
        self.0.iter().any(|c| c.statement == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// A concrete element of a structured group.
    Element,
    /// An element named by its role, with no coordinates.
    Symbolic,
    /// The group is finite, so it is not ICC by definition.
    FiniteGroup,
}

/// Why a group fails to be ICC.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub description: String,
    /// Why the class is finite.
    pub finite_class: String,
    /// The element and its group, when one was constructed.
    #[serde(skip)]
    pub element: Option<(Group, GroupElement)>,
}

impl Witness {
    pub fn element(group: &Group, g: GroupElement, finite_class: impl Into<String>) -> Witness {
        let description = match g.form() {
            Form::Semidirect { v, m } => format!("{} = {}", group.render(&g), semidirect_coordinates(v, *m)),
            _ => group.render(&g),
        };
        Witness {
            kind: WitnessKind::Element,
            description,
            finite_class: finite_class.into(),
            element: Some((group.clone(), g)),
        }
    }

    pub fn symbolic(description: impl Into<String>, finite_class: impl Into<String>) -> Witness {
        Witness {
            kind: WitnessKind::Symbolic,
            description: description.into(),
            finite_class: finite_class.into(),
            element: None,
        }
    }

    pub fn finite_group(order: Cardinal) -> Witness {
        Witness {
            kind: WitnessKind::FiniteGroup,
            description: "group is finite".into(),
            finite_class: format!("the group has order {order}, and ICC groups are infinite"),
            element: None,
        }
    }
}

fn semidirect_coordinates(v: &[Exp], m: Exp) -> String {
    let v: Vec<String> = v.iter().map(|x| x.0.to_string()).collect();
    format!("(({}),{})", v.join(","), m.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub reasons: ReasonChain,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn new(status: Status, statement: Statement, detail: impl Into<String>) -> Verdict {
        Verdict {
            status,
            reasons: ReasonChain(vec![Citation {
                statement,
                detail: detail.into(),
            }]),
            witness: None,
        }
    }

    pub fn icc(statement: Statement, detail: impl Into<String>) -> Verdict {
        Verdict::new(Status::Icc, statement, detail)
    }

    pub fn not_icc(statement: Statement, detail: impl Into<String>, witness: Witness) -> Verdict {
        Verdict::new(Status::NotIcc, statement, detail).with_witness(witness)
    }

    pub fn unknown(statement: Statement, detail: impl Into<String>) -> Verdict {
        Verdict::new(Status::Unknown, statement, detail)
    }

    /// A finite group is never ICC.
    pub fn finite(order: Cardinal) -> Verdict {
        Verdict::not_icc(
            Statement::Definition,
            format!("the group is finite (order {order})"),
            Witness::finite_group(order),
        )
    }

    pub fn cite(mut self, statement: Statement, detail: impl Into<String>) -> Verdict {
        self.reasons.0.push(Citation {
            statement,
            detail: detail.into(),
        });
        self
    }

    /// Prepend the reasons of `earlier`, keeping this verdict's status.
    pub fn after(mut self, earlier: &Verdict) -> Verdict {
        let mut chain = earlier.reasons.0.clone();
        chain.append(&mut self.reasons.0);
        self.reasons.0 = chain;
        self
    }

    pub fn with_witness(mut self, w: Witness) -> Verdict {
        self.witness = Some(w);
        self
    }

    /// NotICC carries a witness and the chain is nonempty.
    pub fn is_well_formed(&self) -> bool {
        !self.reasons.0.is_empty() && (self.status != Status::NotIcc || self.witness.is_some())
    }

    pub fn witness_element(&self) -> Option<&(Group, GroupElement)> {
        self.witness.as_ref()?.element.as_ref()
    }
}

/// Γ₁ ∗ Γ₂ from the factor orders alone.
pub fn icc_free_product(left: Cardinal, right: Cardinal) -> Result<Verdict> {
    if left.is_trivial() || right.is_trivial() {
        return usage("a free product with a trivial factor is not a genuine free product");
    }
    if left.at_least(3) || right.at_least(3) {
        return Ok(Verdict::icc(
            Statement::Prop3i,
            format!("free product of groups of orders {left} and {right}, one of order at least 3"),
        ));
    }
    Ok(Verdict::not_icc(
        Statement::Prop3i,
        "Z/2 * Z/2 is the infinite dihedral group",
        Witness::symbolic(
            "translation ab",
            "ab generates the index-2 translation subgroup; its class is {ab, ba}",
        ),
    ))
}

fn edge_subgroup_forms(images: &[Form], k: &[usize]) -> Vec<Form> {
    k.iter().map(|&i| images[i].clone()).collect()
}

/// Whether g K g⁻¹ ⊆ K for every generator g of `ambient`. For finite K
/// this is normality.
fn normalized_by_generators(ambient: &StructuredGroup, k: &[Form]) -> bool {
    let gens = ambient.generator_forms();
    gens.iter().all(|g| {
        let gi = ambient.inv(g);
        k.iter()
            .all(|x| k.contains(&ambient.conj(x, g)) && k.contains(&ambient.conj(x, &gi)))
    })
}

/// Γ₁ ∗_{Γ₀} Γ₂ over a finite edge.
pub fn icc_amalgam(g: &Group, factor_verdicts: [Option<&Verdict>; 2]) -> Result<Verdict> {
    let StructuredGroup::Amalgam(d) = g.structure() else {
        return usage("icc_amalgam needs an amalgamated product");
    };
    let (Some(i0), Some(i1)) = (d.index(0), d.index(1)) else {
        return Ok(Verdict::unknown(
            Statement::Prop3ii,
            "hypotheses not met: factor orders unknown",
        ));
    };
    let indices_ok = (i0.at_least(3) && i1.at_least(2)) || (i1.at_least(3) && i0.at_least(2));
    if !indices_ok {
        return Ok(Verdict::unknown(
            Statement::Prop3ii,
            format!("hypotheses not met: edge indices {i0} and {i1}, need one at least 3 and the other at least 2"),
        ));
    }
    for (side, v) in factor_verdicts.iter().enumerate() {
        if let Some(v) = v {
            if v.status == Status::Icc {
                return Ok(Verdict::icc(
                    Statement::Prop3ii,
                    format!("factor {} is ICC and the edge indices are {i0} and {i1}", side + 1),
                )
                .after(v));
            }
        }
    }
    let shared: Vec<Vec<usize>> = d
        .edge
        .subgroups()
        .into_iter()
        .filter(|k| k.len() > 1)
        .filter(|k| {
            normalized_by_generators(&d.left, &edge_subgroup_forms(&d.left_images, k))
                && normalized_by_generators(&d.right, &edge_subgroup_forms(&d.right_images, k))
        })
        .collect();
    if shared.is_empty() {
        return Ok(Verdict::icc(
            Statement::Prop3iii,
            format!(
                "no nontrivial subgroup of the order-{} edge group is normal in both factors",
                d.edge.order()
            ),
        ));
    }
    Ok(Verdict::unknown(
        Statement::Prop3iii,
        format!(
            "hypotheses not met: a subgroup of order {} of the edge group is normal in both factors and is finite, hence not ICC",
            shared[0].len()
        ),
    ))
}

fn associated_is_proper(d: &HnnData) -> bool {
    match &d.assoc {
        Associated::Cyclic { from, to } => from.abs() > 1 || to.abs() > 1,
        Associated::Finite(_) => !d.associated_is_whole_base(0),
    }
}

/// HNN extension over a finite associated subgroup, or of Z along cyclic
/// subgroups.
pub fn icc_hnn(g: &Group, base_verdict: Option<&Verdict>) -> Result<Verdict> {
    let StructuredGroup::Hnn(d) = g.structure() else {
        return usage("icc_hnn needs an HNN extension");
    };
    if !associated_is_proper(d) {
        return Ok(Verdict::unknown(
            Statement::Prop3iv,
            "hypotheses not met: both associated subgroups are the whole base",
        ));
    }
    if let Some(v) = base_verdict {
        if v.status == Status::Icc {
            return Ok(Verdict::icc(Statement::Prop3iv, "the base group is ICC").after(v));
        }
    }
    match &d.assoc {
        Associated::Cyclic { from, to } => {
            // ⟨aᵏ⟩ ⊆ A ∩ B is t-invariant exactly when |from| = |to|.
            if from.abs() == to.abs() {
                Ok(Verdict::unknown(
                    Statement::Prop3v,
                    format!("hypotheses not met: ⟨a^{}⟩ is normal and abelian", from.abs()),
                ))
            } else {
                Ok(Verdict::icc(
                    Statement::Prop3v,
                    format!(
                        "t a^{from} t' = a^{to} with |{from}| ≠ |{to}|: no nontrivial subgroup of ⟨a^{from}⟩ is normal"
                    ),
                ))
            }
        }
        Associated::Finite(e) => {
            let s = g.structure();
            let normal: Vec<Vec<usize>> = e
                .subgroup
                .subgroups()
                .into_iter()
                .filter(|k| k.len() > 1)
                .filter(|k| {
                    let forms: Vec<Form> = k.iter().map(|&i| d.embed_base(&e.images[0][i])).collect();
                    normalized_by_generators(s, &forms)
                })
                .collect();
            if normal.is_empty() {
                Ok(Verdict::icc(
                    Statement::Prop3v,
                    format!(
                        "no nontrivial subgroup of the order-{} associated subgroup is normal in the extension",
                        e.subgroup.order()
                    ),
                ))
            } else {
                Ok(Verdict::unknown(
                    Statement::Prop3v,
                    format!(
                        "hypotheses not met: a subgroup of order {} of the associated subgroup is normal and finite",
                        normal[0].len()
                    ),
                ))
            }
        }
    }
}

/// Finite-index subgroups of ICC groups are ICC.
pub fn icc_finite_index_descend(super_verdict: &Verdict) -> Result<Verdict> {
    if super_verdict.status != Status::Icc {
        return usage("finite-index descent needs an ICC group");
    }
    Ok(super_verdict
        .clone()
        .cite(Statement::Lemma4, "a finite-index subgroup of an ICC group is ICC"))
}

/// G ⊇ H of index 2 with H ICC.
pub fn icc_index_two_lift(sub_verdict: &Verdict, has_central_involution: bool) -> Verdict {
    if sub_verdict.status != Status::Icc {
        return Verdict::unknown(
            Statement::Lemma6,
            "hypotheses not met: the index-2 subgroup is not known to be ICC",
        )
        .after(sub_verdict);
    }
    let out = if has_central_involution {
        Verdict::not_icc(
            Statement::Lemma6,
            "G = H × Z/2 with a central involution",
            Witness::symbolic("central involution z", "z is central, so its class is {z}"),
        )
    } else {
        Verdict::icc(Statement::Lemma6, "G has no central involution, so G is ICC")
    };
    out.after(sub_verdict)
}

/// Lemma 5: a torsion-free group with an ICC index-2 subgroup is ICC.
pub fn icc_index_two_lift_torsion_free(sub_verdict: &Verdict) -> Verdict {
    if sub_verdict.status != Status::Icc {
        return Verdict::unknown(
            Statement::Lemma5,
            "hypotheses not met: the index-2 subgroup is not known to be ICC",
        )
        .after(sub_verdict);
    }
    Verdict::icc(Statement::Lemma5, "torsion-free with an ICC subgroup of index 2").after(sub_verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MonodromyClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for MonodromyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonodromyClass::Elliptic => "elliptic",
            MonodromyClass::Parabolic => "parabolic",
            MonodromyClass::Hyperbolic => "hyperbolic",
        })
    }
}

fn check_two_by_two(phi: &IntMatrix) -> Result<()> {
    if phi.len() != 2 || phi.iter().any(|r| r.len() != 2) {
        return usage("monodromy must be a 2×2 integer matrix");
    }
    Ok(())
}

/// Spectral type of φ ∈ GL(2, Z).
pub fn classify_monodromy(phi: &IntMatrix) -> Result<MonodromyClass> {
    check_two_by_two(phi)?;
    let det = determinant(phi);
    let tr = phi[0][0] + phi[1][1];
    match det {
        1 => Ok(match tr.abs() {
            0 | 1 => MonodromyClass::Elliptic,
            2 => MonodromyClass::Parabolic,
            _ => MonodromyClass::Hyperbolic,
        }),
        // x² − tr·x − 1 has real roots; they are ±1 exactly when tr = 0.
        -1 => Ok(if tr == 0 {
            MonodromyClass::Parabolic
        } else {
            MonodromyClass::Hyperbolic
        }),
        _ => usage(format!("monodromy determinant is {det}, expected ±1")),
    }
}

/// The torus bundle with monodromy φ ∈ SL(2, Z).
pub fn icc_torus_bundle(phi: &IntMatrix) -> Result<Verdict> {
    check_two_by_two(phi)?;
    if determinant(phi) != 1 {
        return usage("torus-bundle rule needs determinant +1 (orientable bundle)");
    }
    let g = Group::semidirect(phi.clone())?;
    decide_group(&g)
}

fn semidirect_element(g: &Group, v: &[i64], m: i64) -> GroupElement {
    g.element_from_form(SemidirectData::form(v, m))
        .expect("semidirect payload")
}

fn render_matrix(phi: &IntMatrix) -> String {
    let rows: Vec<String> = phi
        .iter()
        .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn decide_semidirect(g: &Group, d: &SemidirectData) -> Result<Verdict> {
    let phi = d.phi();
    let n = d.rank();
    let shown = render_matrix(phi);
    if n == 2 && determinant(phi) == 1 {
        let class = classify_monodromy(phi)?;
        let tr = phi[0][0] + phi[1][1];
        return Ok(match class {
            MonodromyClass::Hyperbolic => Verdict::icc(
                Statement::Lemma10,
                format!("hyperbolic monodromy {shown} (trace {tr}): the torus-bundle group is ICC"),
            ),
            MonodromyClass::Parabolic => {
                let lambda = tr / 2;
                let v = kernel_vector(&power_minus_scalar(phi, 1, lambda)).expect("parabolic φ has eigenvalue ±1");
                let class_note = if lambda == 1 {
                    "φ(v) = v, so v commutes with t and with Z²: its class is {v}".to_string()
                } else {
                    "φ(v) = −v, so its class is {v, v'}".to_string()
                };
                let w = Witness::element(g, semidirect_element(g, &v, 0), class_note);
                Verdict::not_icc(
                    Statement::Lemma10,
                    format!("parabolic monodromy {shown} (trace {tr}): the bundle is Seifert"),
                    w,
                )
                .cite(Statement::Prop2, "the fiber class has a finite conjugacy class")
            }
            MonodromyClass::Elliptic => {
                let k = [1u32, 2, 3, 4, 6]
                    .into_iter()
                    .find(|&k| power_minus_scalar(phi, k, 1).iter().flatten().all(|&x| x == 0))
                    .expect("elliptic elements of SL(2, Z) have order dividing 4 or 6");
                let w = Witness::element(
                    g,
                    semidirect_element(g, &[0, 0], k as i64),
                    format!("regular fiber class h, realized as t^{k}: φ^{k} = 1, so t^{k} is central"),
                );
                Verdict::not_icc(
                    Statement::Lemma10,
                    format!("elliptic monodromy {shown} (trace {tr}): the bundle is Seifert"),
                    w,
                )
                .cite(Statement::Prop2, "the regular fiber class h is central")
            }
        });
    }
    // An eigenvalue that is a root of unity of order k has degree φ(k) ≤ n ≤ 3.
    if let Some(k) = [1u32, 2, 3, 4, 6]
        .into_iter()
        .find(|&k| determinant(&power_minus_scalar(phi, k, 1)) == 0)
    {
        let v = kernel_vector(&power_minus_scalar(phi, k, 1)).expect("singular matrix");
        let w = Witness::element(
            g,
            semidirect_element(g, &v, 0),
            format!("φ^{k}(v) = v, so the class of v is its φ-orbit, of size at most {k}"),
        );
        return Ok(Verdict::not_icc(
            Statement::Definition,
            format!("φ = {shown} has a root-of-unity eigenvalue, giving a finite class"),
            w,
        ));
    }
    if n == 2 {
        // det φ = −1, and φ² ∈ SL(2, Z) has trace tr² + 2 ≥ 3.
        let phi2 = power_minus_scalar(phi, 2, 0);
        let sub = Verdict::icc(
            Statement::Lemma10,
            format!(
                "the index-2 subgroup Z² ⋊ ⟨t²⟩ has hyperbolic monodromy {}",
                render_matrix(&phi2)
            ),
        );
        return Ok(icc_index_two_lift_torsion_free(&sub));
    }
    Ok(Verdict::unknown(
        Statement::Lemma10,
        format!("Z^{n} ⋊ Z with φ = {shown} is outside the encoded criteria"),
    ))
}

/// π₁ of a compact surface.
pub fn icc_surface(genus: u32, orientable: bool, boundary: u32) -> Result<Verdict> {
    if !orientable && genus == 0 {
        return usage("a non-orientable surface has genus at least 1");
    }
    let chi = if orientable {
        2 - 2 * genus as i64
    } else {
        2 - genus as i64
    } - boundary as i64;
    if chi < 0 {
        let detail = if boundary > 0 {
            "bounded surface with χ < 0: π₁ is free of rank at least 2"
        } else {
            "closed surface with χ < 0: π₁ is a non-elementary surface group"
        };
        return Ok(Verdict::icc(Statement::Surfaces, detail));
    }
    let g = Group::surface(genus, orientable, boundary)?;
    let name = surface_name(genus, orientable, boundary);
    if let Some(Cardinal::Finite(n)) = g.order() {
        return Ok(Verdict::finite(Cardinal::Finite(n)).cite(Statement::Surfaces, format!("{name}: π₁ is finite")));
    }
    let (w, note) = if name == "Klein bottle" {
        (
            g.parse_element("y^2")?,
            "y² is central (conjugation by y inverts x and fixes y)",
        )
    } else {
        (g.generator(0)?, "π₁ is abelian, so every class is a singleton")
    };
    Ok(Verdict::not_icc(
        Statement::Surfaces,
        format!("{name}: π₁ is virtually abelian"),
        Witness::element(&g, w, note),
    ))
}

fn surface_name(genus: u32, orientable: bool, boundary: u32) -> &'static str {
    match (orientable, genus, boundary) {
        (true, 0, 0) => "sphere",
        (true, 0, 1) => "disk",
        (true, 0, 2) => "annulus",
        (true, 1, 0) => "torus",
        (false, 1, 0) => "projective plane",
        (false, 1, 1) => "Möbius band",
        (false, 2, 0) => "Klein bottle",
        _ => "surface",
    }
}

/// First generator of component block `block` that is not the identity.
fn nontrivial_generator(g: &Group, block: usize) -> Option<GroupElement> {
    (0..g.generators().len())
        .filter(|&i| g.generators()[i].factor_index == block)
        .map(|i| g.generator(i).expect("index in range"))
        .find(|x| !g.is_identity(x))
}

fn decide_free_product(g: &Group, l: &StructuredGroup, r: &StructuredGroup) -> Result<Verdict> {
    let (Some(lo), Some(ro)) = (l.order(), r.order()) else {
        return Ok(Verdict::unknown(Statement::Prop3i, "a factor has unknown order"));
    };
    if lo.is_trivial() {
        return decide_group(&g.component(1)?);
    }
    if ro.is_trivial() {
        return decide_group(&g.component(0)?);
    }
    let mut v = icc_free_product(lo, ro)?;
    if v.status == Status::NotIcc {
        let a = nontrivial_generator(g, 0).expect("nontrivial factor");
        let b = nontrivial_generator(g, 1).expect("nontrivial factor");
        let ab = g.multiply(&a, &b)?;
        let note = format!(
            "{} generates the index-2 translation subgroup and is inverted by {}: its class is {{{}, {}}}",
            g.render(&ab),
            g.render(&a),
            g.render(&ab),
            g.render(&g.invert(&ab)?)
        );
        v.witness = Some(Witness::element(g, ab, note));
    }
    Ok(v)
}

fn decide_direct_with_finite(g: &Group, f: &FiniteGroup) -> Result<Verdict> {
    if f.order() == 1 {
        return decide_group(&g.component(0)?);
    }
    let centre = f.center();
    let (idx, central) = match centre.get(1) {
        Some(&z) => (z, true),
        None => (1, false),
    };
    let StructuredGroup::DirectWithFinite { h, .. } = g.structure() else {
        unreachable!()
    };
    let x = g.element_from_form(Form::Pair {
        h: Box::new(h.identity()),
        f: idx,
    })?;
    let note = if central {
        "central element of the finite factor: its class is a singleton".to_string()
    } else {
        format!(
            "lies in the finite normal factor F, so its class has at most {} elements",
            f.order()
        )
    };
    Ok(Verdict::not_icc(
        Statement::Lemma6,
        format!(
            "G = H × F with |F| = {}: F lies in the union of finite classes",
            f.order()
        ),
        Witness::element(g, x, note),
    ))
}

/// Decide a structured group by dispatching on its construction.
pub fn decide_group(g: &Group) -> Result<Verdict> {
    let s = g.structure();
    if let Some(Cardinal::Finite(n)) = s.order() {
        return Ok(Verdict::finite(Cardinal::Finite(n)));
    }
    match s {
        StructuredGroup::FiniteCyclic { .. } | StructuredGroup::Finite(_) => {
            unreachable!("finite groups handled above")
        }
        StructuredGroup::InfiniteCyclic => Ok(Verdict::not_icc(
            Statement::Definition,
            "Z is abelian and infinite",
            Witness::element(g, g.generator(0)?, "Z is abelian, so every class is a singleton"),
        )),
        StructuredGroup::FreeProduct(l, r) => decide_free_product(g, l, r),
        StructuredGroup::Amalgam(d) => {
            match (d.index(0), d.index(1)) {
                (Some(i), _) if i.is_trivial() => return decide_group(&g.component(1)?),
                (_, Some(i)) if i.is_trivial() => return decide_group(&g.component(0)?),
                _ => {}
            }
            let left = decide_group(&g.component(0)?)?;
            let right = decide_group(&g.component(1)?)?;
            icc_amalgam(g, [Some(&left), Some(&right)])
        }
        StructuredGroup::Hnn(_) => {
            let base = decide_group(&g.component(0)?)?;
            icc_hnn(g, Some(&base))
        }
        StructuredGroup::SemidirectZnByZ(d) => decide_semidirect(g, d),
        StructuredGroup::DirectWithFinite { f, .. } => decide_direct_with_finite(g, f),
        StructuredGroup::Surface(d) => {
            let mut v = icc_surface(d.genus, d.orientable, d.boundary)?;
            // Re-anchor the witness in this group (the names may differ).
            if let Some(w) = v.witness.as_mut() {
                if let Some((_, x)) = w.element.take() {
                    let moved = g.element_from_form(x.form().clone())?;
                    *w = Witness::element(g, moved, w.finite_class.clone());
                }
            }
            Ok(v)
        }
        StructuredGroup::FiberedFreeProduct(_) => {
            let h = g.generator(g.generators().len() - 1)?;
            Ok(Verdict::not_icc(
                Statement::Lemma1,
                "the fiber class h generates an infinite cyclic central subgroup",
                Witness::element(
                    g,
                    h,
                    "h is central (it commutes with every generator), so its class is {h}",
                ),
            )
            .cite(
                Statement::Prop2,
                "an infinite group with a finite nontrivial class is not ICC",
            ))
        }
        StructuredGroup::MatrixGroupSL2Eisenstein(d) => {
            if d.hyperbolic_lattice {
                Ok(Verdict::icc(
                    Statement::Prop21,
                    "lattice in PSL(2, C): π₁ of a finite-volume hyperbolic 3-manifold",
                ))
            } else {
                Ok(Verdict::unknown(
                    Statement::Prop21,
                    "hypotheses not met: the matrix group is not asserted to be a lattice",
                ))
            }
        }
        StructuredGroup::Presented(_) => Ok(Verdict::unknown(
            Statement::Definition,
            "no structural criterion applies to a bare presentation",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Group {
        Group::finite_cyclic(n).unwrap()
    }

    fn cyclic_amalgam(m: u64, n: u64, edge: u64) -> Group {
        let (l, r) = (z(m), z(n));
        let li: Vec<_> = (0..edge)
            .map(|k| l.power(&l.generator(0).unwrap(), (k * m / edge) as i64).unwrap())
            .collect();
        let ri: Vec<_> = (0..edge)
            .map(|k| r.power(&r.generator(0).unwrap(), (k * n / edge) as i64).unwrap())
            .collect();
        Group::amalgam(&l, &r, FiniteGroup::cyclic(edge as usize).unwrap(), &li, &ri).unwrap()
    }

    #[test]
    fn free_product_orders() {
        let two = Cardinal::Finite(2);
        assert_eq!(icc_free_product(two, two).unwrap().status, Status::NotIcc);
        assert_eq!(icc_free_product(two, Cardinal::Finite(3)).unwrap().status, Status::Icc);
        assert_eq!(icc_free_product(Cardinal::Infinite, two).unwrap().status, Status::Icc);
        assert!(icc_free_product(Cardinal::Finite(1), two).is_err());
        let v = icc_free_product(two, two).unwrap();
        assert!(v.reasons.0[0].detail.contains("infinite dihedral"));
    }

    #[test]
    fn trivial_edge_amalgam_is_a_free_product() {
        let g = cyclic_amalgam(2, 3, 1);
        let v = icc_amalgam(&g, [None, None]).unwrap();
        assert_eq!(v.status, Status::Icc);
        assert!(v.reasons.cites(Statement::Prop3iii));
    }

    #[test]
    fn central_edge_amalgam_is_unknown() {
        let g = cyclic_amalgam(4, 6, 2);
        let v = icc_amalgam(&g, [None, None]).unwrap();
        assert_eq!(v.status, Status::Unknown);
    }

    #[test]
    fn non_normal_edge_amalgam_is_icc() {
        let s3 = Group::finite(FiniteGroup::symmetric3()).unwrap();
        let z4 = z(4);
        let li = vec![s3.identity(), s3.element_from_form(Form::Table(2)).unwrap()];
        let ri = vec![z4.identity(), z4.parse_element("a^2").unwrap()];
        let g = Group::amalgam(&s3, &z4, FiniteGroup::cyclic(2).unwrap(), &li, &ri).unwrap();
        let v = icc_amalgam(&g, [None, None]).unwrap();
        assert_eq!(v.status, Status::Icc);
        assert_eq!(decide_group(&g).unwrap().status, Status::Icc);
    }

    #[test]
    fn amalgam_rule_rejects_other_groups() {
        assert!(matches!(icc_amalgam(&z(3), [None, None]), Err(crate::Error::Usage(_))));
        assert!(matches!(icc_hnn(&z(3), None), Err(crate::Error::Usage(_))));
    }

    #[test]
    fn hnn_with_icc_base() {
        let base = Group::free_product(&z(2), &z(3)).unwrap();
        let g = Group::hnn_finite(
            &base,
            FiniteGroup::cyclic(1).unwrap(),
            &[base.identity()],
            &[base.identity()],
            "t",
        )
        .unwrap();
        let bv = decide_group(&base).unwrap();
        assert_eq!(icc_hnn(&g, Some(&bv)).unwrap().status, Status::Icc);
        assert!(icc_hnn(&g, Some(&bv)).unwrap().reasons.cites(Statement::Prop3iv));
    }

    #[test]
    fn free_group_as_hnn_of_z() {
        let base = Group::infinite_cyclic();
        let g = Group::hnn_finite(
            &base,
            FiniteGroup::cyclic(1).unwrap(),
            &[base.identity()],
            &[base.identity()],
            "t",
        )
        .unwrap();
        let v = decide_group(&g).unwrap();
        assert_eq!(v.status, Status::Icc);
        assert!(v.reasons.cites(Statement::Prop3v));
    }

    #[test]
    fn normal_finite_associated_subgroup_is_unknown() {
        let base = Group::direct_with_finite(&Group::infinite_cyclic(), FiniteGroup::cyclic(2).unwrap()).unwrap();
        let f = base.generator_by_name("f1").unwrap();
        let g = Group::hnn_finite(
            &base,
            FiniteGroup::cyclic(2).unwrap(),
            &[base.identity(), f.clone()],
            &[base.identity(), f],
            "t",
        )
        .unwrap();
        assert_eq!(decide_group(&g).unwrap().status, Status::Unknown);
    }

    #[test]
    fn baumslag_solitar_one_two() {
        let g = Group::hnn_cyclic(&Group::infinite_cyclic(), 1, 2, "t").unwrap();
        assert_eq!(decide_group(&g).unwrap().status, Status::Icc);
        let g = Group::hnn_cyclic(&Group::infinite_cyclic(), 2, -2, "t").unwrap();
        assert_eq!(decide_group(&g).unwrap().status, Status::Unknown);
    }

    #[test]
    fn descent_and_lifts() {
        let icc = Verdict::icc(Statement::Prop3i, "test");
        let down = icc_finite_index_descend(&icc).unwrap();
        assert_eq!(down.status, Status::Icc);
        assert!(down.reasons.cites(Statement::Lemma4));
        let not = icc_free_product(Cardinal::Finite(2), Cardinal::Finite(2)).unwrap();
        assert!(matches!(icc_finite_index_descend(&not), Err(crate::Error::Usage(_))));

        assert_eq!(icc_index_two_lift(&icc, false).status, Status::Icc);
        let lifted = icc_index_two_lift(&icc, true);
        assert_eq!(lifted.status, Status::NotIcc);
        assert!(lifted.is_well_formed());
        let tf = icc_index_two_lift_torsion_free(&icc);
        assert_eq!(tf.status, Status::Icc);
        assert!(tf.reasons.cites(Statement::Lemma5));
    }

    #[test]
    fn monodromy_examples() {
        assert_eq!(
            classify_monodromy(&vec![vec![1, 5], vec![0, 1]]).unwrap(),
            MonodromyClass::Parabolic
        );
        assert_eq!(
            classify_monodromy(&vec![vec![0, -1], vec![1, 0]]).unwrap(),
            MonodromyClass::Elliptic
        );
        assert_eq!(
            classify_monodromy(&vec![vec![2, 1], vec![1, 1]]).unwrap(),
            MonodromyClass::Hyperbolic
        );
        assert_eq!(
            classify_monodromy(&vec![vec![-1, 1], vec![0, -1]]).unwrap(),
            MonodromyClass::Parabolic
        );
        assert_eq!(
            classify_monodromy(&vec![vec![1, 0], vec![0, -1]]).unwrap(),
            MonodromyClass::Parabolic
        );
        assert_eq!(
            classify_monodromy(&vec![vec![1, 1], vec![1, 0]]).unwrap(),
            MonodromyClass::Hyperbolic
        );
        assert!(classify_monodromy(&vec![vec![2, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn torus_bundle_examples() {
        let hyp = icc_torus_bundle(&vec![vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(hyp.status, Status::Icc);
        assert!(hyp.reasons.0[0].detail.contains("hyperbolic"));

        let par = icc_torus_bundle(&vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(par.status, Status::NotIcc);
        let (_, w) = par.witness_element().unwrap();
        assert_eq!(*w.form(), SemidirectData::form(&[1, 0], 0));
        assert!(par.reasons.cites(Statement::Prop2));

        let ell = icc_torus_bundle(&vec![vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(ell.status, Status::NotIcc);
        let (_, w) = ell.witness_element().unwrap();
        assert_eq!(*w.form(), SemidirectData::form(&[0, 0], 4));

        let minus = icc_torus_bundle(&vec![vec![-1, 0], vec![0, -1]]).unwrap();
        assert_eq!(minus.status, Status::NotIcc);
        assert!(icc_torus_bundle(&vec![vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn orientation_reversing_and_rank_three_monodromy() {
        let g = Group::semidirect(vec![vec![1, 1], vec![1, 0]]).unwrap();
        let v = decide_group(&g).unwrap();
        assert_eq!(v.status, Status::Icc);
        assert!(v.reasons.cites(Statement::Lemma5));
        let t3 = Group::semidirect(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(decide_group(&t3).unwrap().status, Status::NotIcc);
        let g = Group::semidirect(vec![vec![2, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let v = decide_group(&g).unwrap();
        assert_eq!(v.status, Status::NotIcc);
        assert_eq!(
            *v.witness_element().unwrap().1.form(),
            SemidirectData::form(&[0, 0, 1], 0)
        );
    }

    #[test]
    fn surface_examples() {
        assert_eq!(icc_surface(1, true, 0).unwrap().status, Status::NotIcc);
        assert_eq!(icc_surface(2, true, 0).unwrap().status, Status::Icc);
        let disk = icc_surface(0, true, 1).unwrap();
        assert_eq!(disk.status, Status::NotIcc);
        assert_eq!(disk.witness.unwrap().kind, WitnessKind::FiniteGroup);
        for (g, o, b) in [(0, true, 2), (1, false, 1), (1, false, 0), (2, false, 0), (0, true, 0)] {
            let v = icc_surface(g, o, b).unwrap();
            assert_eq!(v.status, Status::NotIcc, "{g} {o} {b}");
            assert!(v.is_well_formed());
        }
        for (g, o, b) in [(0, true, 3), (1, true, 1), (3, false, 0), (2, false, 1)] {
            assert_eq!(icc_surface(g, o, b).unwrap().status, Status::Icc, "{g} {o} {b}");
        }
    }

    #[test]
    fn dihedral_witness_is_ab() {
        let d = Group::free_product(&z(2), &z(2)).unwrap();
        let v = decide_group(&d).unwrap();
        assert_eq!(v.status, Status::NotIcc);
        assert_eq!(v.witness.as_ref().unwrap().description, "a b");
    }

    #[test]
    fn labels_round_trip() {
        for s in Statement::ALL {
            assert_eq!(Statement::from_label(s.label()), Some(s));
        }
    }
}
