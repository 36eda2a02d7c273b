//! The verification suite: one check per checked property, assembled into a
//! deterministic report.

use std::fmt::{self, Write as _};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{cl17_basis, cl7_basis, cl8_basis, volume_element, Signature};
use crate::error::{Error, Result};
use crate::linalg::{first_unclosed_pair, Subspace};
use crate::matrix::{commutator, Matrix};
use crate::representations::{
    all_bases, same_span, same_structure_constants, GenIndex, Kind, LieBasis,
};
use crate::scalar::ExactScalar;
use crate::subalgebras::{
    coefficient_constraints, g2_basis, intersect, restrict, su3_block_scalar, su3_embedding,
    su3_embedding_with, su3_transform, G2Basis,
};
use crate::triality::{
    apply_outer, diagonalize, graded_basis, k_prime, killing, killing_trace, parity_cleanup,
    s3_closure, t_eigenvectors, unpack, GradedBasis, OuterOp, Part,
};

pub const SCHEMA: &str = "triality-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Euclidean,
    Lorentzian,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Suite> {
        match s {
            "euclidean" => Ok(Suite::Euclidean),
            "lorentzian" => Ok(Suite::Lorentzian),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("suite {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Euclidean => "euclidean",
            Suite::Lorentzian => "lorentzian",
            Suite::All => "all",
        }
    }

    fn euclidean(self) -> bool {
        self != Suite::Lorentzian
    }

    fn lorentzian(self) -> bool {
        self != Suite::Euclidean
    }
}

/// Test-only corruption of a vendored triality matrix, seen only by the
/// cycling check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Negates entry (0, 0) of H.
    HSign,
    /// Negates entry (0, 0) of T.
    TSign,
}

impl Fault {
    pub fn parse(s: &str) -> Result<Fault> {
        match s {
            "h-sign" => Ok(Fault::HSign),
            "t-sign" => Ok(Fault::TSign),
            _ => Err(Error::Parse(format!("fault {s:?}"))),
        }
    }

    fn for_suite(suite: Suite) -> Fault {
        match suite {
            Suite::Lorentzian => Fault::TSign,
            _ => Fault::HSign,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Holds after a documented change of normalization.
    Reported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Reported => "reported",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub claim: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub reported: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub suite: Suite,
    pub version: String,
    pub summary: Summary,
    pub results: Vec<CheckResult>,
}

impl Report {
    fn new(suite: Suite, results: Vec<CheckResult>) -> Report {
        let count = |s| results.iter().filter(|r| r.status == s).count();
        Report {
            schema: SCHEMA.into(),
            suite,
            version: env!("CARGO_PKG_VERSION").into(),
            summary: Summary {
                total: results.len(),
                pass: count(Status::Pass),
                fail: count(Status::Fail),
                reported: count(Status::Reported),
            },
            results,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn result(&self, check_id: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.check_id == check_id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "triality verify: suite {} (version {})", self.suite.name(), self.version).unwrap();
        for r in &self.results {
            writeln!(out, "[{:<8}] {}  {}", r.status.to_string(), r.check_id, r.claim).unwrap();
            writeln!(out, "           {}", r.detail).unwrap();
        }
        let s = &self.summary;
        writeln!(
            out,
            "{} checks: {} pass, {} fail, {} reported",
            s.total, s.pass, s.fail, s.reported
        )
        .unwrap();
        out
    }
}

/// Shared constructions, built once per run.
struct Ctx {
    suite: Suite,
    fault: Option<Fault>,
    euclidean: OnceLock<Result<[LieBasis; 3]>>,
    lorentzian: OnceLock<Result<[LieBasis; 3]>>,
    euclidean_graded: OnceLock<Result<[GradedBasis; 3]>>,
    lorentzian_graded: OnceLock<Result<[GradedBasis; 3]>>,
    g2: OnceLock<Result<G2Basis>>,
}

fn cached<T>(cell: &OnceLock<Result<T>>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

impl Ctx {
    fn new(suite: Suite, fault: Option<Fault>) -> Ctx {
        Ctx {
            suite,
            fault,
            euclidean: OnceLock::new(),
            lorentzian: OnceLock::new(),
            euclidean_graded: OnceLock::new(),
            lorentzian_graded: OnceLock::new(),
            g2: OnceLock::new(),
        }
    }

    fn bases(&self, sig: Signature) -> Result<&[LieBasis; 3]> {
        if sig == Signature::EUCLIDEAN {
            cached(&self.euclidean, || all_bases(sig))
        } else {
            cached(&self.lorentzian, || all_bases(sig))
        }
    }

    fn graded(&self, sig: Signature) -> Result<&[GradedBasis; 3]> {
        let (cell, op) = if sig == Signature::EUCLIDEAN {
            (&self.euclidean_graded, OuterOp::h())
        } else {
            (&self.lorentzian_graded, OuterOp::t())
        };
        cached(cell, || {
            let [v, l, r] = self.bases(sig)?;
            Ok([
                graded_basis(v, &op)?,
                graded_basis(l, &op)?,
                graded_basis(r, &op)?,
            ])
        })
    }

    fn g2(&self) -> Result<&G2Basis> {
        cached(&self.g2, g2_basis)
    }

    fn signatures(&self) -> Vec<Signature> {
        let mut out = Vec::new();
        if self.suite.euclidean() {
            out.push(Signature::EUCLIDEAN);
        }
        if self.suite.lorentzian() {
            out.push(Signature::LORENTZIAN);
        }
        out
    }
}

/// Collects expectations for one check.
#[derive(Default)]
struct Tally {
    failures: Vec<String>,
    notes: Vec<String>,
    reported: bool,
}

impl Tally {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(self) -> (Status, String) {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if self.reported {
            Status::Reported
        } else {
            Status::Pass
        };
        let mut parts = Vec::new();
        if !self.failures.is_empty() {
            parts.push(format!("FAILED: {}", self.failures.join("; ")));
        }
        parts.extend(self.notes);
        (status, parts.join("; "))
    }
}

fn sig_label(sig: Signature) -> String {
    format!("({})", sig.label())
}

type CheckFn = fn(&Ctx, &mut Tally) -> Result<()>;

struct CheckDef {
    id: &'static str,
    claim: &'static str,
    euclidean: bool,
    lorentzian: bool,
    run: CheckFn,
}

const CHECKS: [CheckDef; 16] = [
    CheckDef {
        id: "01-clifford",
        claim: "the gamma matrices satisfy the Clifford relations of their metric",
        euclidean: true,
        lorentzian: true,
        run: check_clifford,
    },
    CheckDef {
        id: "02-volume",
        claim: "the Euclidean volume element squares to +1 and anticommutes with every gamma; the Lorentzian one squares to -1",
        euclidean: true,
        lorentzian: true,
        run: check_volume,
    },
    CheckDef {
        id: "03-euclidean-reality",
        claim: "Euclidean V, L, R generators are real antisymmetric and span one 28-dimensional space",
        euclidean: true,
        lorentzian: false,
        run: check_reality,
    },
    CheckDef {
        id: "04-structure-constants",
        claim: "V, L and R have identical structure constants",
        euclidean: true,
        lorentzian: true,
        run: check_structure_constants,
    },
    CheckDef {
        id: "05-triality-cycling",
        claim: "the triality matrix sends V to L to R to V generator by generator",
        euclidean: true,
        lorentzian: true,
        run: check_cycling,
    },
    CheckDef {
        id: "06-duality",
        claim: "K then P-conjugation maps L to R; complex conjugation maps Lorentzian L to R",
        euclidean: true,
        lorentzian: true,
        run: check_duality,
    },
    CheckDef {
        id: "07-s3",
        claim: "{H, K} and {T, conj} each generate a 6-element group isomorphic to S3",
        euclidean: true,
        lorentzian: true,
        run: check_s3,
    },
    CheckDef {
        id: "08-operator-identities",
        claim: "T^2 = T* = T^-1 with T symmetric, B real orthogonal, U^dagger K U = K'",
        euclidean: true,
        lorentzian: true,
        run: check_operator_identities,
    },
    CheckDef {
        id: "09-intersection",
        claim: "the axis-0 spin(7) restrictions meet in a 14-dimensional space cut out by seven relations plus a = b",
        euclidean: true,
        lorentzian: false,
        run: check_intersection,
    },
    CheckDef {
        id: "10-g2",
        claim: "the 14 Lambda matrices form an orthogonal g2 basis containing su(3) with commuting partners",
        euclidean: true,
        lorentzian: false,
        run: check_g2,
    },
    CheckDef {
        id: "11-su3",
        claim: "the special unitary U block-diagonalizes Lambda_1..Lambda_8 into lambda_k and -lambda_k^T",
        euclidean: true,
        lorentzian: false,
        run: check_su3,
    },
    CheckDef {
        id: "12-grading",
        claim: "the triality-diagonal basis is graded by eigenvalue with g2 closed and handed siblings paired",
        euclidean: true,
        lorentzian: true,
        run: check_grading,
    },
    CheckDef {
        id: "13-killing",
        claim: "Killing traces are -28 on the original bases and -14 on the graded ones, handed generators are null",
        euclidean: true,
        lorentzian: true,
        run: check_killing,
    },
    CheckDef {
        id: "14-form-preservation",
        claim: "graded generators preserve the bilinear form, and vector-kind ones the Hermitian form",
        euclidean: true,
        lorentzian: true,
        run: check_forms,
    },
    CheckDef {
        id: "15-lorentz-hermiticity",
        claim: "Lorentzian spinor boosts are Hermitian and rotations anti-Hermitian",
        euclidean: false,
        lorentzian: true,
        run: check_hermiticity,
    },
    CheckDef {
        id: "16-tooling",
        claim: "the suite is deterministic and the negative control fails exactly one check",
        euclidean: true,
        lorentzian: true,
        run: check_tooling,
    },
];

/// Ids of every check, in report order.
pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

fn run_checks(suite: Suite, fault: Option<Fault>, include_tooling: bool) -> Result<Report> {
    let ctx = Ctx::new(suite, fault);
    let selected: Vec<&CheckDef> = CHECKS
        .iter()
        .filter(|c| (c.euclidean && suite.euclidean()) || (c.lorentzian && suite.lorentzian()))
        .filter(|c| include_tooling || c.id != "16-tooling")
        .collect();
    let mut results = selected
        .par_iter()
        .map(|c| {
            let mut tally = Tally::default();
            (c.run)(&ctx, &mut tally)?;
            let (status, detail) = tally.finish();
            Ok(CheckResult {
                check_id: c.id.into(),
                claim: c.claim.into(),
                status,
                detail,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    results.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(Report::new(suite, results))
}

/// Runs every check that applies to `suite`.
pub fn verify(suite: Suite) -> Result<Report> {
    run_checks(suite, None, true)
}

/// As [`verify`], with a deliberately corrupted triality matrix.
pub fn verify_with_fault(suite: Suite, fault: Option<Fault>) -> Result<Report> {
    run_checks(suite, fault, true)
}

fn check_clifford(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    if ctx.suite.euclidean() {
        let b = cl8_basis();
        t.expect(
            b.clifford_defect().is_none(),
            format!("(8,0) pair {:?}", b.clifford_defect()),
        );
        t.expect(cl7_basis().clifford_defect().is_none(), "Cl(7) seed gammas");
        t.note("(8,0): 36 pairs exact, Cl(7) seed: 28 pairs exact");
    }
    if ctx.suite.lorentzian() {
        for chiral in [false, true] {
            let b = cl17_basis(chiral);
            t.expect(
                b.clifford_defect().is_none(),
                format!("(1,7) chiral={chiral} pair {:?}", b.clifford_defect()),
            );
        }
        t.note("(1,7): 36 pairs exact in the original and chiral bases");
    }
    Ok(())
}

fn check_volume(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    if ctx.suite.euclidean() {
        let w = volume_element(&cl8_basis());
        t.expect(w.squares_to(1), "(8,0) omega^2 != +1");
        t.expect(w.anticommutes_with_all(), "(8,0) omega fails to anticommute");
        t.note("(8,0): omega^2 = +I16, anticommutes with all 8 gammas");
    }
    if ctx.suite.lorentzian() {
        let w = volume_element(&cl17_basis(false));
        t.expect(w.squares_to(-1), "(1,7) omega^2 != -1");
        t.note("(1,7): omega^2 = -I16");
    }
    Ok(())
}

fn check_reality(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let bases = ctx.bases(Signature::EUCLIDEAN)?;
    for b in bases {
        for (idx, x) in b.iter() {
            t.expect(
                x.is_real() && x.is_antisymmetric(),
                format!("{} not real antisymmetric", b.name(idx)),
            );
        }
    }
    let [v, l, r] = bases;
    for (x, y) in [(v, l), (l, r)] {
        let cmp = same_span(x, y);
        t.expect(
            cmp.equal && cmp.dim_first == 28,
            format!(
                "span {:?} vs {:?}: dims {}/{}, meet {}",
                x.kind, y.kind, cmp.dim_first, cmp.dim_second, cmp.dim_intersection
            ),
        );
    }
    t.note("84 generators real antisymmetric; spans of V, L, R coincide, dim 28");
    Ok(())
}

fn check_structure_constants(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    for sig in ctx.signatures() {
        let [v, l, r] = ctx.bases(sig)?;
        for (x, y) in [(v, l), (l, r)] {
            let cmp = same_structure_constants(x, y)?;
            t.expect(
                cmp.equal,
                format!(
                    "{} {:?} vs {:?} first differ at {:?}",
                    sig_label(sig),
                    x.kind,
                    y.kind,
                    cmp.first_mismatch
                ),
            );
        }
        t.note(format!("{}: f_ab^c of V, L, R agree entrywise", sig_label(sig)));
    }
    Ok(())
}

fn faulted(op: OuterOp, fault: Option<Fault>) -> OuterOp {
    let hit = matches!(
        (op.name, fault),
        (crate::triality::OpName::H, Some(Fault::HSign))
            | (crate::triality::OpName::T, Some(Fault::TSign))
    );
    if !hit {
        return op;
    }
    let mut core = op.core.clone();
    let x = -core.get(0, 0);
    core.set(0, 0, x);
    OuterOp { core, ..op }
}

fn check_cycling(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    for sig in ctx.signatures() {
        let op = if sig == Signature::EUCLIDEAN {
            OuterOp::h()
        } else {
            OuterOp::t()
        };
        let op = faulted(op, ctx.fault);
        let [v, l, r] = ctx.bases(sig)?;
        let once = apply_outer(&op, v)?;
        let twice = apply_outer(&op, &once)?;
        let thrice = apply_outer(&op, &twice)?;
        for (got, want) in [(&once, l), (&twice, r), (&thrice, v)] {
            if let Some(idx) = got.first_difference(want) {
                t.expect(
                    false,
                    format!(
                        "{} {} applied to V differs from {:?} at {}",
                        sig_label(sig),
                        op.name.label(),
                        want.kind,
                        want.name(idx)
                    ),
                );
            }
        }
        t.expect(
            unpack(&op).pow(3).is_identity(),
            format!("{} unpacked {}^3 != I28", sig_label(sig), op.name.label()),
        );
        t.note(format!(
            "{}: {} maps V to L to R to V on all 28 generators",
            sig_label(sig),
            op.name.label()
        ));
    }
    Ok(())
}

fn check_duality(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    if ctx.suite.euclidean() {
        let [_, l, r] = ctx.bases(Signature::EUCLIDEAN)?;
        let raw = apply_outer(&OuterOp::k(), l)?;
        let cleaned = parity_cleanup(&raw)?;
        t.expect(
            cleaned.first_difference(r).is_none(),
            format!("(8,0) P K L differs from R at {:?}", cleaned.first_difference(r)),
        );
        let raw_diff = raw.first_difference(r);
        t.note(format!(
            "(8,0): K L then P-conjugation equals R; raw K L {}",
            if raw_diff.is_some() {
                "differs from R as expected"
            } else {
                "already equals R"
            }
        ));
    }
    if ctx.suite.lorentzian() {
        let [_, l, r] = ctx.bases(Signature::LORENTZIAN)?;
        let lc = apply_outer(&OuterOp::conj(), l)?;
        let rc = apply_outer(&OuterOp::conj(), r)?;
        t.expect(lc.first_difference(r).is_none(), "(1,7) L* != R");
        t.expect(rc.first_difference(l).is_none(), "(1,7) R* != L");
        t.note("(1,7): L* = R and R* = L exactly");
    }
    Ok(())
}

fn check_s3(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let mut groups = Vec::new();
    if ctx.suite.euclidean() {
        groups.push(("{H,K}", [OuterOp::h(), OuterOp::k()]));
    }
    if ctx.suite.lorentzian() {
        groups.push(("{T,conj}", [OuterOp::t(), OuterOp::conj()]));
    }
    for (name, gens) in groups {
        let report = s3_closure(&gens)?;
        t.expect(
            report.is_s3,
            format!(
                "{name}: order {}, dihedral relation {}",
                report.order, report.dihedral_relation
            ),
        );
        t.note(format!(
            "{name}: raw closure has {} elements with s r s^-1 = r^2 (raw path passed)",
            report.order
        ));
    }
    Ok(())
}

fn check_operator_identities(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    if ctx.suite.euclidean() {
        let kp = Matrix::from_int_rows(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]);
        t.expect(k_prime() == kp, "U^dagger K U != K'");
        let d = diagonalize(&OuterOp::h())?;
        t.expect(d.change.is_unitary(), "U not unitary");
        t.expect(unpack(&OuterOp::h()).pow(3).is_identity(), "unpacked H^3 != I28");
        t.expect(unpack(&OuterOp::k()).pow(2).is_identity(), "unpacked K^2 != I28");
        t.note(format!(
            "(8,0): U^dagger K U = K'; U unitary; U^-1 H^T U = diag({})",
            join_scalars(&d.eigenvalues)
        ));
    }
    if ctx.suite.lorentzian() {
        let tm = OuterOp::t().core;
        let t2 = tm.pow(2);
        t.expect(t2 == tm.conj(), "T^2 != T*");
        t.expect((&t2 * &tm).is_identity(), "T^2 != T^-1");
        t.expect(tm.is_symmetric(), "T not symmetric");
        let b = t_eigenvectors();
        t.expect(b.is_real() && b.is_orthogonal(), "B not real orthogonal");
        let d = diagonalize(&OuterOp::t())?;
        let ut = unpack(&OuterOp::t());
        t.expect(ut.pow(2).matrix == ut.matrix.conj(), "unpacked T^2 != T*");
        t.expect(ut.pow(3).is_identity(), "unpacked T^3 != I28");
        t.note(format!(
            "(1,7): T^2 = T* = T^-1, T symmetric, B real orthogonal; B^T T^T B = diag({})",
            join_scalars(&d.eigenvalues)
        ));
    }
    Ok(())
}

fn join_scalars(xs: &[ExactScalar]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Expected relations among the `b` coefficients.
pub const EXPECTED_RELATIONS: [&str; 7] = [
    "b_{1,2} = b_{4,7} + b_{5,6}",
    "b_{1,3} = -b_{4,6} + b_{5,7}",
    "b_{1,4} = -b_{2,7} + b_{3,6}",
    "b_{1,5} = -b_{2,6} + b_{3,7}",
    "b_{1,6} = b_{2,5} - b_{3,4}",
    "b_{1,7} = b_{2,4} + b_{3,5}",
    "b_{2,3} = b_{4,5} + b_{6,7}",
];

fn check_intersection(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let [v, l, r] = ctx.bases(Signature::EUCLIDEAN)?;
    let (rv, rl, rr) = (restrict(v, 0), restrict(l, 0), restrict(r, 0));
    let vl = intersect(&[&rv.gens, &rl.gens]);
    t.expect(vl.dim() == 14, format!("dim V∩L = {}", vl.dim()));
    for (name, s) in [
        ("V∩R", intersect(&[&rv.gens, &rr.gens])),
        ("L∩R", intersect(&[&rl.gens, &rr.gens])),
        ("V∩L∩R", intersect(&[&rv.gens, &rl.gens, &rr.gens])),
    ] {
        t.expect(s == vl, format!("{name} differs from V∩L (dim {})", s.dim()));
    }
    let sys = coefficient_constraints(&rv, &rl);
    t.expect(
        sys.rank == 28 && sys.unknowns.len() == 42,
        format!("rank {} of {} unknowns", sys.rank, sys.unknowns.len()),
    );
    let shown: Vec<String> = sys.b_relations().iter().map(|r| r.to_string()).collect();
    for (got, want) in shown.iter().zip(EXPECTED_RELATIONS) {
        t.expect(got == want, format!("relation {got:?} != {want:?}"));
    }
    t.expect(
        shown.len() == EXPECTED_RELATIONS.len(),
        format!("{} b-relations", shown.len()),
    );
    t.expect(sys.a_equals_b(), "a_ij = b_ij does not hold");
    t.note(format!(
        "dim 14; rank {} of {} unknowns; 7 relations match; a_ij = b_ij; all pairwise and triple intersections equal",
        sys.rank,
        sys.unknowns.len()
    ));
    Ok(())
}

fn check_g2(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let g2 = match ctx.g2() {
        Ok(g) => g,
        Err(Error::ClosureFailure { a, b }) => {
            t.expect(false, format!("[Lambda_{}, Lambda_{}] leaves the span", a + 1, b + 1));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    t.note("14 Lambda matrices close under the bracket");
    let [v, l, _] = ctx.bases(Signature::EUCLIDEAN)?;
    let inter = intersect(&[&restrict(v, 0).gens, &restrict(l, 0).gens]);
    for (k, x) in g2.lambdas.iter().enumerate() {
        t.expect(
            inter.contains_matrix(x),
            format!("Lambda_{} outside the intersection", k + 1),
        );
    }
    t.expect(
        g2.first_non_orthogonal().is_none(),
        format!("<Lambda_j, Lambda_k> != 0 for {:?}", g2.first_non_orthogonal()),
    );
    t.expect(g2.su3_closed()?, "Lambda_1..Lambda_8 not closed");
    let bad = g2.noncommuting_partners();
    t.expect(bad.is_empty(), format!("[Lambda_k, Lambda_k+7] != 0 for k in {bad:?}"));
    let norms = g2.norms();
    let uniform = norms.iter().all(|n| *n == norms[0]);
    t.expect(uniform, "norms not uniform");
    if !norms[0].is_one() {
        t.reported = true;
    }
    t.note(format!(
        "all inside the intersection; pairwise orthogonal under tr(X^dagger Y)/2 with uniform norm^2 {}; Lambda_1..Lambda_8 closed; [Lambda_k, Lambda_k+7] = 0 after the 8<->10 swap (also before it)",
        norms[0]
    ));
    Ok(())
}

fn check_su3(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let u = su3_transform();
    t.expect(u.is_unitary(), "U not unitary");
    let det = u.determinant()?;
    t.expect(det.is_one(), format!("det U = {det}"));
    let g2 = ctx.g2()?;
    match su3_embedding(g2) {
        Ok(_) => t.note(format!(
            "U unitary, det U = 1; U Lambda_k U^dagger = s diag(0, lambda_k, -lambda_k^T) for k = 1..8 with uniform s = {}",
            su3_block_scalar()
        )),
        Err(Error::BlockMismatch { k, row, col }) => {
            t.expect(false, format!("Lambda_{k} block entry ({row},{col})"))
        }
        Err(e) => return Err(e),
    }
    if let Err(Error::BlockMismatch { k, row, col }) = su3_embedding_with(g2, &ExactScalar::one()) {
        t.note(format!(
            "without the scalar the first mismatch is Lambda_{k} entry ({row},{col}), as anti-Hermitian matrices cannot equal Hermitian lambda_k"
        ));
    }
    Ok(())
}

fn coefficient_vector(g: &crate::triality::GradedGenerator) -> Vec<ExactScalar> {
    let mut w = vec![ExactScalar::zero(); GenIndex::COUNT];
    for (idx, c) in &g.coefficients {
        w[idx.position()] = c.clone();
    }
    w
}

fn check_grading(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    for sig in ctx.signatures() {
        let label = sig_label(sig);
        let op = if sig == Signature::EUCLIDEAN {
            OuterOp::h()
        } else {
            OuterOp::t()
        };
        let graded = ctx.graded(sig)?;

        // Eigenvalue labels, at matrix level and on unpacked coefficients.
        for (n, g) in graded.iter().enumerate() {
            let next = &graded[(n + 1) % 3];
            for (x, y) in g.generators.iter().zip(&next.generators) {
                t.expect(
                    y.matrix == x.matrix.scale(&x.eigenvalue),
                    format!("{label} {} eigenvalue label fails on {:?}", x.name, g.source),
                );
            }
        }
        let action = unpack(&op).matrix.transpose();
        for g in &graded[0].generators {
            let w = coefficient_vector(g);
            let scaled: Vec<ExactScalar> = w.iter().map(|c| c * &g.eigenvalue).collect();
            t.expect(
                action.mul_vec(&w)? == scaled,
                format!("{label} unpacked operator does not scale {}", g.name),
            );
        }

        let g = &graded[0];
        let (g2, right, left) = (g.g2_part(), g.right_part(), g.left_part());
        let (g2_span, right_span, left_span) = (
            Subspace::span_of(&g2),
            Subspace::span_of(&right),
            Subspace::span_of(&left),
        );
        for (a, b, target, what) in [
            (&right, &right, &left_span, "[R,R] not in left"),
            (&left, &left, &right_span, "[L,L] not in right"),
            (&left, &right, &g2_span, "[L,R] not in g2"),
        ] {
            let ok = a.iter().all(|x| {
                b.iter()
                    .all(|y| commutator(x, y).is_ok_and(|c| target.contains_matrix(&c)))
            });
            t.expect(ok, format!("{label} {what}"));
        }
        t.expect(
            first_unclosed_pair(&g2)?.is_none(),
            format!("{label} g2 part not closed"),
        );
        let handed: Vec<Matrix> = right.iter().chain(&left).cloned().collect();
        t.expect(
            first_unclosed_pair(&handed)?.is_some(),
            format!("{label} handed generators closed"),
        );

        // Sibling pairing.
        let all = g.all();
        for (part, own, other, offset) in [
            (Part::Right, &right, &left, 21),
            (Part::Left, &left, &right, 14),
        ] {
            for (k, x) in own.iter().enumerate() {
                let commuting: Vec<usize> = other
                    .iter()
                    .enumerate()
                    .filter(|(_, y)| commutator(x, y).is_ok_and(|c| c.is_zero()))
                    .map(|(n, _)| n)
                    .collect();
                let paired: Vec<usize> = all
                    .iter()
                    .enumerate()
                    .filter(|(_, y)| !killing(x, y).is_zero())
                    .map(|(n, _)| n)
                    .collect();
                t.expect(
                    commuting == [k] && paired == [offset + k],
                    format!(
                        "{label} {:?} generator {} commutes with {commuting:?}, pairs with {paired:?}",
                        part,
                        k + 1
                    ),
                );
            }
        }
        t.note(format!(
            "{label}: {} graded V, L, R: labels hold; [R,R] in left, [L,L] in right, [L,R] in g2; g2 part closed; handed part not closed; each handed generator pairs with its sibling only",
            op.name.label()
        ));
    }
    Ok(())
}

fn check_killing(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    for sig in ctx.signatures() {
        let label = sig_label(sig);
        let bases = ctx.bases(sig)?;
        let originals: Vec<String> = bases
            .iter()
            .map(|b| killing_trace(b.generators()).to_string())
            .collect();
        if sig == Signature::EUCLIDEAN {
            for (b, tr) in bases.iter().zip(&originals) {
                t.expect(tr == "-28", format!("{label} {:?} trace {tr}", b.kind));
            }
        }
        for g in ctx.graded(sig)? {
            let tr = killing_trace(&g.all());
            t.expect(
                tr == ExactScalar::from_int(-14),
                format!("{label} graded {:?} trace {tr}", g.source),
            );
            for x in g.generators.iter().filter(|x| matches!(x.part, Part::Left | Part::Right)) {
                t.expect(
                    killing(&x.matrix, &x.matrix).is_zero(),
                    format!("{label} {} not null", x.name),
                );
            }
        }
        t.note(format!(
            "{label}: original traces V, L, R = {}; graded traces -14; 14 handed generators null per basis",
            originals.join(", ")
        ));
    }
    Ok(())
}

fn check_forms(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let hform = Signature::LORENTZIAN.metric_matrix();
    for sig in ctx.signatures() {
        let label = sig_label(sig);
        let eta = sig.metric_matrix();
        for g in ctx.graded(sig)? {
            for x in &g.generators {
                let m = &x.matrix;
                let ok = (&(&m.transpose() * &eta) + &(&eta * m)).is_zero();
                t.expect(ok, format!("{label} {} breaks the bilinear form", x.name));
                if g.source == Kind::V {
                    let ok = (&(&m.adjoint() * &hform) + &(&hform * m)).is_zero();
                    t.expect(ok, format!("{label} {} breaks the Hermitian form", x.name));
                }
            }
        }
        t.note(if sig == Signature::EUCLIDEAN {
            format!("{label}: all 84 graded generators satisfy X^T = -X; graded V satisfies X^dagger h + h X = 0")
        } else {
            format!("{label}: all 84 graded generators satisfy X^T eta + eta X = 0; graded V satisfies X^dagger h + h X = 0")
        });
    }
    Ok(())
}

fn check_hermiticity(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let [_, l, r] = ctx.bases(Signature::LORENTZIAN)?;
    for b in [l, r] {
        for (idx, x) in b.iter() {
            let ok = if idx.i() == 0 {
                x.is_hermitian()
            } else {
                x.is_antihermitian()
            };
            t.expect(ok, format!("{} has the wrong Hermiticity", b.name(idx)));
        }
    }
    t.note("L and R: 14 boosts Hermitian, 42 rotations anti-Hermitian");
    Ok(())
}

fn check_tooling(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let first = run_checks(ctx.suite, None, false)?.to_json();
    let second = run_checks(ctx.suite, None, false)?.to_json();
    t.expect(first == second, "two runs differ");
    let fault = Fault::for_suite(ctx.suite);
    let faulted = run_checks(ctx.suite, Some(fault), false)?;
    let failing: Vec<&str> = faulted
        .results
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| r.check_id.as_str())
        .collect();
    t.expect(
        failing == ["05-triality-cycling"],
        format!("negative control failed {failing:?}"),
    );
    t.note(format!(
        "two clean runs byte-identical ({} bytes); {:?} injection fails only {}",
        first.len(),
        fault,
        failing.join(", ")
    ));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_statuses() {
        let mut t = Tally::default();
        t.note("fine");
        assert_eq!(t.finish(), (Status::Pass, "fine".into()));
        let mut t = Tally::default();
        t.expect(false, "broken");
        t.note("n");
        assert_eq!(t.finish(), (Status::Fail, "FAILED: broken; n".into()));
        let t = Tally {
            reported: true,
            ..Tally::default()
        };
        assert_eq!(t.finish().0, Status::Reported);
    }

    #[test]
    fn parse_names() {
        assert_eq!(Suite::parse("all").unwrap(), Suite::All);
        assert!(Suite::parse("both").is_err());
        assert_eq!(Fault::parse("h-sign").unwrap(), Fault::HSign);
        assert_eq!(check_ids().len(), 16);
    }

    #[test]
    fn faulted_h_differs_in_one_entry() {
        let h = faulted(OuterOp::h(), Some(Fault::HSign));
        let diffs = (0..4)
            .flat_map(|r| (0..4).map(move |c| (r, c)))
            .filter(|&(r, c)| h.core.get(r, c) != OuterOp::h().core.get(r, c))
            .count();
        assert_eq!(diffs, 1);
        assert_eq!(faulted(OuterOp::t(), Some(Fault::HSign)), OuterOp::t());
    }
}
