//! JSON and LaTeX serialization of every constructed object.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::clifford::{cl17_basis, cl7_basis, cl8_basis, GammaBasis, Signature};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::representations::{all_bases, GenIndex, Kind, LieBasis};
use crate::scalar::ExactScalar;
use crate::subalgebras::{coefficient_constraints, g2_basis, restrict, su3_embedding, Relation};
use crate::triality::{
    apply_outer, graded_basis, parity_cleanup, quartet, s3_closure, slot, GradedBasis, OpName,
    OuterOp,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitObject {
    GammasCl7,
    GammasCl8,
    GammasCl17,
    Vector,
    SpinorLeft,
    SpinorRight,
    H,
    K,
    T,
    G2Lambda,
    G2Constraints,
    Su3Blocks,
    Graded,
}

impl EmitObject {
    pub const ALL: [EmitObject; 13] = [
        EmitObject::GammasCl7,
        EmitObject::GammasCl8,
        EmitObject::GammasCl17,
        EmitObject::Vector,
        EmitObject::SpinorLeft,
        EmitObject::SpinorRight,
        EmitObject::H,
        EmitObject::K,
        EmitObject::T,
        EmitObject::G2Lambda,
        EmitObject::G2Constraints,
        EmitObject::Su3Blocks,
        EmitObject::Graded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EmitObject::GammasCl7 => "gammas-cl7",
            EmitObject::GammasCl8 => "gammas-cl8",
            EmitObject::GammasCl17 => "gammas-cl17",
            EmitObject::Vector => "vector",
            EmitObject::SpinorLeft => "spinor-left",
            EmitObject::SpinorRight => "spinor-right",
            EmitObject::H => "H",
            EmitObject::K => "K",
            EmitObject::T => "T",
            EmitObject::G2Lambda => "g2-lambda",
            EmitObject::G2Constraints => "g2-constraints",
            EmitObject::Su3Blocks => "su3-blocks",
            EmitObject::Graded => "graded",
        }
    }

    pub fn parse(s: &str) -> Result<EmitObject> {
        Self::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Parse(format!("object {s:?}")))
    }

    /// Signatures the object exists in; the first is the default.
    pub fn signatures(self) -> &'static [Signature] {
        match self {
            EmitObject::Vector
            | EmitObject::SpinorLeft
            | EmitObject::SpinorRight
            | EmitObject::Graded => &[Signature::EUCLIDEAN, Signature::LORENTZIAN],
            EmitObject::GammasCl17 | EmitObject::T => &[Signature::LORENTZIAN],
            _ => &[Signature::EUCLIDEAN],
        }
    }

    pub fn resolve_signature(self, requested: Option<Signature>) -> Result<Signature> {
        let allowed = self.signatures();
        match requested {
            None => Ok(allowed[0]),
            Some(s) if allowed.contains(&s) => Ok(s),
            Some(s) => Err(Error::NotApplicable(format!(
                "object {} has no signature ({})",
                self.name(),
                s.label()
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            _ => Err(Error::Parse(format!("format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Matrix,
}

/// A named list of matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixSet {
    pub object: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub signature: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kind: Option<String>,
    pub items: Vec<NamedMatrix>,
}

impl MatrixSet {
    fn to_latex(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            out.push_str(&format!("% {}\n{}\n\n", item.name, item.matrix.to_latex()));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintRecord {
    pub dependent: String,
    pub terms: Vec<crate::subalgebras::Term>,
    pub text: String,
}

impl From<&Relation> for ConstraintRecord {
    fn from(r: &Relation) -> Self {
        ConstraintRecord {
            dependent: r.dependent.clone(),
            terms: r.terms.clone(),
            text: r.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintDoc {
    pub object: String,
    pub unknowns: usize,
    pub rank: usize,
    pub free: usize,
    pub relations: Vec<ConstraintRecord>,
}

fn relation_latex(r: &Relation) -> String {
    let mut s = format!("{} =", r.dependent);
    for (n, t) in r.terms.iter().enumerate() {
        let c = &t.coefficient;
        let neg = c.as_rational().is_some_and(Signed::is_negative);
        let mag = if neg { -c } else { c.clone() };
        let sign = match (n, neg) {
            (0, false) => " ".to_string(),
            (0, true) => " -".to_string(),
            (_, false) => " + ".to_string(),
            (_, true) => " - ".to_string(),
        };
        s.push_str(&sign);
        if !mag.is_one() {
            s.push_str(&format!("\\left({}\\right)", mag.to_latex()));
        }
        s.push_str(&t.unknown);
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub generator: String,
    pub coefficient: ExactScalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedItem {
    pub name: String,
    pub part: String,
    pub eigenvalue: ExactScalar,
    pub coefficients: Vec<Coefficient>,
    pub matrix: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDoc {
    pub object: String,
    pub signature: String,
    pub source: String,
    pub op: String,
    pub items: Vec<GradedItem>,
}

fn part_name(p: crate::triality::Part) -> &'static str {
    use crate::triality::Part;
    match p {
        Part::G2Three => "g2-3",
        Part::G2Eight => "g2-8",
        Part::Right => "right",
        Part::Left => "left",
    }
}

pub fn graded_doc(g: &GradedBasis) -> GradedDoc {
    GradedDoc {
        object: "graded".into(),
        signature: g.signature.label(),
        source: g.source.symbol().into(),
        op: g.op.label().into(),
        items: g
            .generators
            .iter()
            .map(|x| GradedItem {
                name: x.name.clone(),
                part: part_name(x.part).into(),
                eigenvalue: x.eigenvalue.clone(),
                coefficients: x
                    .coefficients
                    .iter()
                    .map(|(idx, c)| Coefficient {
                        generator: crate::representations::generator_name(g.source, *idx),
                        coefficient: c.clone(),
                    })
                    .collect(),
                matrix: x.matrix.clone(),
            })
            .collect(),
    }
}

fn gamma_set(object: EmitObject, basis: &GammaBasis) -> MatrixSet {
    MatrixSet {
        object: object.name().into(),
        signature: Some(basis.signature.label()),
        kind: None,
        items: basis
            .indices()
            .map(|k| NamedMatrix {
                name: format!("Gamma_{k}"),
                matrix: basis.gamma(k).clone(),
            })
            .collect(),
    }
}

/// A basis as a [`MatrixSet`] in generator order.
pub fn basis_set(object: &str, basis: &LieBasis) -> MatrixSet {
    MatrixSet {
        object: object.into(),
        signature: Some(basis.signature.label()),
        kind: Some(basis.kind.symbol().into()),
        items: basis
            .iter()
            .map(|(idx, m)| NamedMatrix {
                name: basis.name(idx),
                matrix: m.clone(),
            })
            .collect(),
    }
}

/// Reads a basis emitted by [`basis_set`] back, checking names and order.
pub fn parse_basis(json: &str) -> Result<LieBasis> {
    let set: MatrixSet = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let kind = Kind::parse(set.kind.as_deref().ok_or_else(|| Error::Parse("missing kind".into()))?)?;
    let signature = Signature::parse(
        set.signature
            .as_deref()
            .ok_or_else(|| Error::Parse("missing signature".into()))?,
    )?;
    if set.items.len() != GenIndex::COUNT {
        return Err(Error::Parse(format!("{} generators", set.items.len())));
    }
    for (idx, item) in GenIndex::all().zip(&set.items) {
        let want = crate::representations::generator_name(kind, idx);
        if item.name != want {
            return Err(Error::Parse(format!("expected {want}, found {}", item.name)));
        }
    }
    LieBasis::new(kind, signature, set.items.into_iter().map(|i| i.matrix).collect())
}

fn core_set(op: &OuterOp) -> MatrixSet {
    MatrixSet {
        object: op.name.label().into(),
        signature: Some(op.signature().label()),
        kind: None,
        items: vec![NamedMatrix {
            name: op.name.label().into(),
            matrix: op.core.clone(),
        }],
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Serializes one object.
pub fn emit(object: EmitObject, signature: Option<Signature>, format: Format) -> Result<String> {
    let sig = object.resolve_signature(signature)?;
    let set = match object {
        EmitObject::GammasCl7 => gamma_set(object, &cl7_basis()),
        EmitObject::GammasCl8 => gamma_set(object, &cl8_basis()),
        EmitObject::GammasCl17 => gamma_set(object, &cl17_basis(false)),
        EmitObject::Vector | EmitObject::SpinorLeft | EmitObject::SpinorRight => {
            let [v, l, r] = all_bases(sig)?;
            let b = match object {
                EmitObject::Vector => v,
                EmitObject::SpinorLeft => l,
                _ => r,
            };
            basis_set(object.name(), &b)
        }
        EmitObject::H => core_set(&OuterOp::h()),
        EmitObject::K => core_set(&OuterOp::k()),
        EmitObject::T => core_set(&OuterOp::t()),
        EmitObject::G2Lambda => {
            let g2 = g2_basis()?;
            MatrixSet {
                object: object.name().into(),
                signature: Some(sig.label()),
                kind: None,
                items: g2
                    .lambdas
                    .iter()
                    .enumerate()
                    .map(|(k, m)| NamedMatrix {
                        name: format!("Lambda_{{{}}}", k + 1),
                        matrix: m.clone(),
                    })
                    .collect(),
            }
        }
        EmitObject::Su3Blocks => {
            let emb = su3_embedding(&g2_basis()?)?;
            MatrixSet {
                object: object.name().into(),
                signature: Some(sig.label()),
                kind: None,
                items: emb
                    .blocks
                    .iter()
                    .enumerate()
                    .map(|(k, m)| NamedMatrix {
                        name: format!("U Lambda_{{{}}} U^dagger", k + 1),
                        matrix: m.clone(),
                    })
                    .collect(),
            }
        }
        EmitObject::G2Constraints => return constraints(format),
        EmitObject::Graded => {
            let [v, _, _] = all_bases(sig)?;
            let op = if sig == Signature::EUCLIDEAN {
                OuterOp::h()
            } else {
                OuterOp::t()
            };
            let g = graded_basis(&v, &op)?;
            return Ok(match format {
                Format::Json => to_json(&graded_doc(&g)),
                Format::Latex => g
                    .generators
                    .iter()
                    .map(|x| format!("% {}\n{}\n\n", x.name, x.matrix.to_latex()))
                    .collect(),
            });
        }
    };
    Ok(match format {
        Format::Json => to_json(&set),
        Format::Latex => set.to_latex(),
    })
}

fn euclidean_constraints() -> Result<crate::subalgebras::ConstraintSystem> {
    let [v, l, _] = all_bases(Signature::EUCLIDEAN)?;
    Ok(coefficient_constraints(&restrict(&v, 0), &restrict(&l, 0)))
}

pub fn constraint_doc() -> Result<ConstraintDoc> {
    let sys = euclidean_constraints()?;
    Ok(ConstraintDoc {
        object: EmitObject::G2Constraints.name().into(),
        unknowns: sys.unknowns.len(),
        rank: sys.rank,
        free: sys.nullity,
        relations: sys.presented().iter().map(ConstraintRecord::from).collect(),
    })
}

fn constraints(format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => to_json(&constraint_doc()?),
        Format::Latex => euclidean_constraints()?
            .presented()
            .iter()
            .map(|r| format!("{} \\\\\n", relation_latex(r)))
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappedGenerator {
    pub name: String,
    pub terms: Vec<Coefficient>,
    pub matches_reference: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub op: String,
    pub signature: String,
    pub from: String,
    pub to: String,
    pub generators: Vec<MappedGenerator>,
    /// Whether every image equals the reference basis of the target kind.
    pub matches_reference: bool,
    /// For K: whether the image matches after conjugation by P.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matches_after_parity_cleanup: Option<bool>,
}

/// The images of every generator of `from` under `op`.
pub fn map_doc(op: &OuterOp, from: Kind) -> Result<MapDoc> {
    let sig = op.signature();
    let bases = all_bases(sig)?;
    let source = bases.iter().find(|b| b.kind == from).expect("three kinds");
    let image = apply_outer(op, source)?;
    let reference = bases.iter().find(|b| b.kind == image.kind).expect("three kinds");
    let generators = GenIndex::all()
        .map(|idx| {
            let (r, k) = slot(idx);
            let q = quartet(k);
            let terms = (0..4)
                .filter(|&c| !op.core.get(r, c).is_zero())
                .map(|c| Coefficient {
                    generator: if op.antilinear {
                        format!("{}^*", source.name(q[c]))
                    } else {
                        source.name(q[c])
                    },
                    coefficient: op.core.get(r, c).clone(),
                })
                .collect();
            MappedGenerator {
                name: image.name(idx),
                terms,
                matches_reference: image.get(idx) == reference.get(idx),
            }
        })
        .collect();
    let cleanup = if op.name == OpName::K {
        Some(parity_cleanup(&image)?.first_difference(reference).is_none())
    } else {
        None
    };
    Ok(MapDoc {
        op: op.name.label().into(),
        signature: sig.label(),
        from: from.symbol().into(),
        to: image.kind.symbol().into(),
        matches_reference: image.first_difference(reference).is_none(),
        generators,
        matches_after_parity_cleanup: cleanup,
    })
}

pub fn map_json(op: &OuterOp, from: Kind) -> Result<String> {
    Ok(to_json(&map_doc(op, from)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElementDoc {
    pub matrix: Matrix,
    pub antilinear: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct S3Doc {
    pub signature: String,
    pub generators: Vec<String>,
    pub order: usize,
    pub dihedral_relation: bool,
    pub is_s3: bool,
    pub path: String,
    pub elements: Vec<GroupElementDoc>,
    pub table: Vec<Vec<usize>>,
}

pub fn s3_doc(signature: Signature) -> Result<S3Doc> {
    let gens = if signature == Signature::EUCLIDEAN {
        [OuterOp::h(), OuterOp::k()]
    } else if signature == Signature::LORENTZIAN {
        [OuterOp::t(), OuterOp::conj()]
    } else {
        return Err(Error::UnsupportedSignature {
            p: signature.p,
            q: signature.q,
        });
    };
    let report = s3_closure(&gens)?;
    Ok(S3Doc {
        signature: signature.label(),
        generators: gens.iter().map(|g| g.name.label().to_string()).collect(),
        order: report.order,
        dihedral_relation: report.dihedral_relation,
        is_s3: report.is_s3,
        path: "raw cores".into(),
        elements: report
            .elements
            .iter()
            .map(|e| GroupElementDoc {
                matrix: e.matrix.clone(),
                antilinear: e.antilinear,
            })
            .collect(),
        table: report.table,
    })
}

pub fn s3_json(signature: Signature) -> Result<String> {
    Ok(to_json(&s3_doc(signature)?))
}

pub fn graded_json(signature: Signature) -> Result<String> {
    emit(EmitObject::Graded, Some(signature), Format::Json)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::vector_basis;

    #[test]
    fn every_object_emits_in_both_formats() {
        for object in EmitObject::ALL {
            for &sig in object.signatures() {
                for format in [Format::Json, Format::Latex] {
                    let out = emit(object, Some(sig), format).unwrap();
                    assert!(!out.is_empty(), "{}", object.name());
                }
            }
        }
    }

    #[test]
    fn incompatible_signature_is_rejected() {
        assert!(matches!(
            emit(EmitObject::H, Some(Signature::LORENTZIAN), Format::Json),
            Err(Error::NotApplicable(_))
        ));
        assert!(EmitObject::parse("spinor-middle").is_err());
    }

    #[test]
    fn h_json_has_half_entries() {
        let out = emit(EmitObject::H, None, Format::Json).unwrap();
        let set: MatrixSet = serde_json::from_str(&out).unwrap();
        assert_eq!(set.items[0].matrix, OuterOp::h().core);
        assert!(out.contains("\"1/2\"") && out.contains("\"-1/2\""));
    }

    #[test]
    fn lorentzian_vector_latex_has_28_blocks() {
        let out = emit(EmitObject::Vector, Some(Signature::LORENTZIAN), Format::Latex).unwrap();
        assert_eq!(out.matches("\\begin{pmatrix}").count(), 28);
        assert_eq!(out.matches("\\end{pmatrix}").count(), 28);
    }

    #[test]
    fn basis_round_trip() {
        let v = vector_basis(Signature::LORENTZIAN).unwrap();
        let json = emit(EmitObject::Vector, Some(Signature::LORENTZIAN), Format::Json).unwrap();
        assert_eq!(parse_basis(&json).unwrap(), v);
        let broken = json.replacen("V_{0,1}", "V_{0,2}", 1);
        assert!(parse_basis(&broken).is_err());
    }

    #[test]
    fn constraints_lead_with_b_relations() {
        let doc = constraint_doc().unwrap();
        assert_eq!(doc.rank, 28);
        assert_eq!(doc.free, 14);
        assert_eq!(doc.relations[0].text, "b_{1,2} = b_{4,7} + b_{5,6}");
        let latex = emit(EmitObject::G2Constraints, None, Format::Latex).unwrap();
        assert!(latex.starts_with("b_{1,2} = b_{4,7} + b_{5,6} \\\\\n"));
    }

    #[test]
    fn map_documents() {
        let doc = map_doc(&OuterOp::h(), Kind::V).unwrap();
        assert_eq!(doc.to, "L");
        assert!(doc.matches_reference);
        assert_eq!(doc.generators[0].terms.len(), 4);
        let k = map_doc(&OuterOp::k(), Kind::L).unwrap();
        assert!(!k.matches_reference);
        assert_eq!(k.matches_after_parity_cleanup, Some(true));
        let c = map_doc(&OuterOp::conj(), Kind::L).unwrap();
        assert!(c.matches_reference);
        assert!(c.generators[0].terms[0].generator.ends_with("^*"));
    }

    #[test]
    fn s3_documents() {
        let doc = s3_doc(Signature::EUCLIDEAN).unwrap();
        assert_eq!(doc.order, 6);
        assert!(doc.is_s3);
        assert!(s3_doc(Signature::DIRAC).is_err());
    }
}
