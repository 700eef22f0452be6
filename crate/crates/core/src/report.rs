//! Run reports: assembly of every check for one prime, a stable JSON wire
//! format, and plain-text rendering.
//!
//! On the wire every integer is a decimal string and every `F_{p²}` entry is
//! a `[c0, c1]` pair, so documents survive consumers without big integers.

use std::fmt::{self, Display, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::legendre;
use crate::chern::{
    audit_printed_basis, displayed_u_vectors, format_combination, kummer_report, ChernMap,
    H11Class, KummerReport, NsResidue, TConvention,
};
use crate::error::Result;
use crate::field::{Field, Fp2};
use crate::lattice::{gram_matrix, GramAnalysis};
use crate::quat::{order_basis, AlgebraParams, OrderElement, ORDER_BASIS_NAMES};

/// An integer carried as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dec<T>(pub T);

impl<T: Display> Serialize for Dec<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de, T: FromStr> Deserialize<'de> for Dec<T>
where
    T::Err: Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(Dec).map_err(D::Error::custom)
    }
}

impl<T: Display> Display for Dec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub type WireFp2 = [Dec<u64>; 2];

fn wire_fp2(x: &Fp2) -> WireFp2 {
    [Dec(x.c0), Dec(x.c1)]
}

fn wire_class(c: &H11Class) -> Vec<WireFp2> {
    c.iter().map(wire_fp2).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsReport {
    pub p: Dec<u64>,
    pub q: Dec<u64>,
    pub a: Dec<u64>,
}

impl From<AlgebraParams> for ParamsReport {
    fn from(x: AlgebraParams) -> Self {
        Self {
            p: Dec(x.p),
            q: Dec(x.q),
            a: Dec(x.a),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderBasisEntry {
    pub name: String,
    pub value: String,
    pub reduced_norm: Dec<BigInt>,
}

pub fn order_basis_report(params: AlgebraParams) -> Vec<OrderBasisEntry> {
    order_basis(params)
        .iter()
        .zip(ORDER_BASIS_NAMES)
        .map(|(w, name)| OrderBasisEntry {
            name: name.into(),
            value: w.to_string(),
            reduced_norm: Dec(w.nrd().to_integer()),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramReport {
    pub matrix: Vec<Vec<Dec<BigInt>>>,
    pub rank: Dec<usize>,
    pub signature: [Dec<usize>; 2],
    pub determinant: Dec<BigInt>,
}

impl From<&GramAnalysis> for GramReport {
    fn from(g: &GramAnalysis) -> Self {
        Self {
            matrix: g
                .matrix
                .iter()
                .map(|r| r.iter().cloned().map(Dec).collect())
                .collect(),
            rank: Dec(g.rank),
            signature: [Dec(g.signature.0), Dec(g.signature.1)],
            determinant: Dec(g.determinant.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueVector {
    pub residues: Vec<Dec<u64>>,
    pub divisor: String,
}

impl ResidueVector {
    pub fn new(v: &NsResidue, p: u64) -> Self {
        Self {
            residues: v.iter().copied().map(Dec).collect(),
            divisor: format_combination(v, p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub dimension: Dec<usize>,
    pub image_dimension: Dec<usize>,
    pub basis: Vec<ResidueVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub label: String,
    pub formula: String,
    pub vector: ResidueVector,
    pub member: bool,
    pub residual: Option<Vec<WireFp2>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiteralSubscriptReport {
    pub expression: String,
    pub in_order: bool,
    pub order_coords: Vec<String>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub ell: Dec<u64>,
    pub literal_subscript: LiteralSubscriptReport,
    pub candidates: Vec<CandidateReport>,
    /// Labeled as derived: obtained by elimination, not from a printed formula.
    pub derived_second_vector: ResidueVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KummerSummary {
    pub ns_rank_abelian: Dec<usize>,
    pub exceptional_curves: Dec<usize>,
    pub ns_rank_kummer: Dec<usize>,
    pub kernel_dimension_abelian: Dec<usize>,
    pub kernel_dimension_kummer: Dec<usize>,
    pub artin_invariant: Dec<u32>,
}

impl From<&KummerReport> for KummerSummary {
    fn from(k: &KummerReport) -> Self {
        Self {
            ns_rank_abelian: Dec(k.ns_rank_abelian),
            exceptional_curves: Dec(k.exceptional_curves),
            ns_rank_kummer: Dec(k.ns_rank_kummer),
            kernel_dimension_abelian: Dec(k.kernel_dimension_abelian),
            kernel_dimension_kummer: Dec(k.kernel_dimension_kummer),
            artin_invariant: Dec(k.artin_invariant),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub params: ParamsReport,
    pub order_basis: Vec<OrderBasisEntry>,
    pub gram: GramReport,
    /// Rows `Ω₁..Ω₄`, columns `u₁..u₆`.
    pub chern_matrix: Vec<Vec<WireFp2>>,
    pub kernel: KernelReport,
    pub audit: AuditReport,
    pub kummer: KummerSummary,
    pub checks: Vec<Check>,
    pub pass: bool,
}

pub fn kernel_report(params: AlgebraParams) -> KernelReport {
    let k = ChernMap::new(params).kernel();
    KernelReport {
        dimension: Dec(k.dimension),
        image_dimension: Dec(k.image_dimension),
        basis: k
            .vectors
            .iter()
            .map(|v| ResidueVector::new(v, params.p))
            .collect(),
    }
}

pub fn chern_rows(params: AlgebraParams) -> Vec<Vec<WireFp2>> {
    ChernMap::new(params)
        .matrix()
        .rows()
        .iter()
        .map(|r| r.iter().map(wire_fp2).collect())
        .collect()
}

pub fn audit_report(params: AlgebraParams) -> Result<AuditReport> {
    let audit = audit_printed_basis(params)?;
    let p = params.p;
    Ok(AuditReport {
        ell: Dec(audit.ell),
        literal_subscript: LiteralSubscriptReport {
            expression: audit.literal_subscript.expression.clone(),
            in_order: audit.literal_subscript.in_order,
            order_coords: audit.literal_subscript.order_coords.to_vec(),
            note: if audit.literal_subscript.in_order {
                "literal reading is an order element".into()
            } else {
                "literal reading not an order element; candidate (ii) reads the subscript as (a+F)α/q"
                    .into()
            },
        },
        candidates: audit
            .candidates
            .iter()
            .map(|c| CandidateReport {
                label: c.label.clone(),
                formula: c.description.clone(),
                vector: ResidueVector::new(&c.vector, p),
                member: c.member,
                residual: c.residual.as_ref().map(wire_class),
            })
            .collect(),
        derived_second_vector: ResidueVector::new(&audit.corrected_second_vector, p),
    })
}

/// Runs every verification for one parameter set.
pub fn run_report(params: AlgebraParams) -> Result<RunReport> {
    let map = ChernMap::new(params);
    let chern = map.matrix();
    let kernel = map.kernel();
    let gram = gram_matrix(params);
    let audit = audit_printed_basis(params)?;
    let kummer = kummer_report(params);
    let k = map.field();

    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool| {
        checks.push(Check {
            name: name.into(),
            passed,
        })
    };

    let revalidated = AlgebraParams::new(params.p, params.q, params.a).is_ok()
        && legendre(-(params.q as i128), params.p) == -1;
    check(
        "params satisfy q ≡ 3 (mod 8), (-q|p) = -1, a² ≡ -p (mod q)",
        revalidated,
    );

    let basis: Vec<OrderElement> = (0..4).map(|i| OrderElement::basis(params, i)).collect();
    let closed = basis
        .iter()
        .all(|x| basis.iter().all(|y| x.checked_mul(y).is_ok()));
    check("order basis products lie in O", closed);

    let phi_ok = basis.iter().all(|x| {
        basis
            .iter()
            .all(|y| map.phi(&(x * y)) == k.mul(&map.phi(x), &map.phi(y)))
            && map.phi(&x.conj()) == k.frobenius(&map.phi(x))
    });
    check(
        "φ is multiplicative and φ∘conj = Frobenius∘φ on the order basis",
        phi_ok,
    );

    check("Gram matrix has rank 6", gram.rank == 6);
    check("Gram matrix has signature (1, 5)", gram.signature == (1, 5));

    check(
        "Chern columns match the closed-form u₁..u₆",
        chern.columns == displayed_u_vectors(params),
    );
    check("u₅ = u₂", chern.columns[4] == chern.columns[1]);
    check(
        "Chern matrix has rank 4 over F_{p²}",
        chern.rank_over_fp2() == 4,
    );
    check("kernel dimension is 2", kernel.dimension == 2);
    check("image dimension is 4", kernel.image_dimension == 4);

    let via_lattice = kernel
        .vectors
        .iter()
        .all(|v| map.c1_of_residue(v).iter().all(|e| k.is_zero(e)));
    check(
        "kernel vectors vanish under c₁ recomputed through NS(A)",
        via_lattice,
    );

    let conjugate = ChernMap::with_convention(params, TConvention::AlphaIsMinusT).kernel();
    check(
        "kernel is invariant under t ↦ -t",
        conjugate.vectors == kernel.vectors,
    );

    check(
        "candidate (i) Δ_{F(1+α)/2} - E₂ is in the kernel",
        audit.candidate("i").is_some_and(|c| c.member),
    );
    check(
        "derived second vector is in the kernel",
        chern.annihilates(&audit.corrected_second_vector),
    );

    let pass = checks.iter().all(|c| c.passed);
    Ok(RunReport {
        params: params.into(),
        order_basis: order_basis_report(params),
        gram: (&gram).into(),
        chern_matrix: chern_rows(params),
        kernel: kernel_report(params),
        audit: audit_report(params)?,
        kummer: (&kummer).into(),
        checks,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: Dec<u64>,
    pub q: Dec<u64>,
    pub a: Dec<u64>,
    pub kernel_dimension: Dec<usize>,
    pub image_dimension: Dec<usize>,
    pub audit_ii_member: bool,
    pub pass: bool,
}

impl From<&RunReport> for SweepRow {
    fn from(r: &RunReport) -> Self {
        Self {
            p: r.params.p.clone(),
            q: r.params.q.clone(),
            a: r.params.a.clone(),
            kernel_dimension: r.kernel.dimension.clone(),
            image_dimension: r.kernel.image_dimension.clone(),
            audit_ii_member: r
                .audit
                .candidates
                .iter()
                .any(|c| c.label == "ii" && c.member),
            pass: r.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub p_min: Dec<u64>,
    pub p_max: Dec<u64>,
    pub rows: Vec<SweepRow>,
    pub all_pass: bool,
}

fn fmt_fp2(w: &WireFp2) -> String {
    Fp2::new(w[0].0, w[1].0).to_string()
}

fn fmt_residues(v: &ResidueVector) -> String {
    let parts: Vec<String> = v.residues.iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn render_params(p: &ParamsReport) -> String {
    format!("p={} q={} a={}\n", p.p, p.q, p.a)
}

pub fn render_order_basis(entries: &[OrderBasisEntry]) -> String {
    let mut out = String::from("order basis:\n");
    for e in entries {
        let _ = writeln!(
            out,
            "  {:<10} = {:<28} nrd = {}",
            e.name, e.value, e.reduced_norm
        );
    }
    out
}

pub fn render_gram(g: &GramReport) -> String {
    let mut out =
        String::from("Gram matrix (E₁, E₂, Δ, Δ_{(1+α)/2}, Δ_{F(1+α)/2}, Δ_{(a+F)α/q}):\n");
    let width = g
        .matrix
        .iter()
        .flatten()
        .map(|x| x.to_string().len())
        .max()
        .unwrap_or(1);
    for row in &g.matrix {
        let cells: Vec<String> = row
            .iter()
            .map(|x| format!("{:>width$}", x.to_string()))
            .collect();
        let _ = writeln!(out, "  [{}]", cells.join(" "));
    }
    let _ = writeln!(
        out,
        "rank {}  signature ({}, {})  determinant {}",
        g.rank, g.signature[0], g.signature[1], g.determinant
    );
    out
}

pub fn render_chern(rows: &[Vec<WireFp2>]) -> String {
    let mut out = String::from("Chern matrix (rows Ω₁..Ω₄, columns u₁..u₆):\n");
    for row in rows {
        let cells: Vec<String> = row.iter().map(|e| format!("{:>8}", fmt_fp2(e))).collect();
        let _ = writeln!(out, "  [{}]", cells.join(" "));
    }
    out
}

pub fn render_kernel(k: &KernelReport) -> String {
    let mut out = format!(
        "kernel dimension {}  image dimension {}\n",
        k.dimension, k.image_dimension
    );
    for v in &k.basis {
        let _ = writeln!(out, "  {}  {}", fmt_residues(v), v.divisor);
    }
    out
}

pub fn render_audit(a: &AuditReport) -> String {
    let mut out = format!("audit (ℓ = {}):\n", a.ell);
    let lit = &a.literal_subscript;
    let _ = writeln!(
        out,
        "  {}: {} (order coordinates [{}])",
        lit.expression,
        lit.note,
        lit.order_coords.join(", ")
    );
    for c in &a.candidates {
        let verdict = if c.member { "member" } else { "NOT a member" };
        let _ = writeln!(out, "  ({}) {}", c.label, c.formula);
        let _ = writeln!(
            out,
            "      {}  {}  {verdict}",
            fmt_residues(&c.vector),
            c.vector.divisor
        );
        if let Some(res) = &c.residual {
            let cells: Vec<String> = res.iter().map(fmt_fp2).collect();
            let _ = writeln!(out, "      residual c₁ = ({})", cells.join(", "));
        }
    }
    let _ = writeln!(
        out,
        "  derived second vector {}  {}",
        fmt_residues(&a.derived_second_vector),
        a.derived_second_vector.divisor
    );
    out
}

pub fn render_kummer(p: &ParamsReport, k: &KummerSummary) -> String {
    format!(
        "Kummer surface of E×E at p={}:\n  rank NS(Ã) = {} + {} = {}\n  NS(Ã)/p ≅ NS(Km(A))/p (p odd)\n  kernel dimension: abelian {}  Kummer {}\n  Artin invariant σ₀ = {}\n",
        p.p,
        k.ns_rank_abelian,
        k.exceptional_curves,
        k.ns_rank_kummer,
        k.kernel_dimension_abelian,
        k.kernel_dimension_kummer,
        k.artin_invariant
    )
}

pub fn render_run(r: &RunReport) -> String {
    let mut out = render_params(&r.params);
    out += &render_order_basis(&r.order_basis);
    out += &render_gram(&r.gram);
    out += &render_chern(&r.chern_matrix);
    out += &render_kernel(&r.kernel);
    out += &render_audit(&r.audit);
    out += &render_kummer(&r.params, &r.kummer);
    out += "checks:\n";
    for c in &r.checks {
        let _ = writeln!(
            out,
            "  [{}] {}",
            if c.passed { "pass" } else { "FAIL" },
            c.name
        );
    }
    let _ = writeln!(out, "overall: {}", if r.pass { "PASS" } else { "FAIL" });
    out
}

pub fn render_sweep(s: &SweepReport) -> String {
    let mut out = format!(
        "{:>6} {:>6} {:>6} {:>7} {:>6} {:>8} {:>5}\n",
        "p", "q", "a", "ker-dim", "im-dim", "audit-ii", "pass"
    );
    for r in &s.rows {
        let _ = writeln!(
            out,
            "{:>6} {:>6} {:>6} {:>7} {:>6} {:>8} {:>5}",
            r.p.to_string(),
            r.q.to_string(),
            r.a.to_string(),
            r.kernel_dimension.to_string(),
            r.image_dimension.to_string(),
            if r.audit_ii_member { "member" } else { "no" },
            if r.pass { "yes" } else { "NO" }
        );
    }
    let _ = writeln!(
        out,
        "{} primes in [{}, {}]: {}",
        s.rows.len(),
        s.p_min,
        s.p_max,
        if s.all_pass { "all pass" } else { "FAILURES" }
    );
    out
}
