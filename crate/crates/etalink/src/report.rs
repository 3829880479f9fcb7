//! One report type per command. Text and JSON renderings are produced from
//! the same struct, so both carry the same numbers.

use std::fmt::Write;
use std::str::FromStr;

use chirality::{
    epsilon_types, obstruction_report, ChiralityVerdict, Declarations, Evidence, Obstruction, ReportOptions,
    SatelliteExpr,
};
use conway::{conway_polynomial, is_unknotted, Unknottedness};
use cover::{eta_by_cover, eta_via_surgery};
use diagram::LinkDiagram;
use eta::{eta_with_fallback, EtaResult, Provenance, SearchOptions};
use laurent::{alexander_from_conway, LaurentPoly, ZPoly};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;
use crate::input::{Input, Presentation};
use crate::plus::eta_plus;

/// Which role orders of a two-component link to report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Role {
    /// `eta1`: the first component is lifted, the second is linked.
    First,
    /// `eta2`: the roles swapped.
    Second,
    #[default]
    Both,
}

impl Role {
    /// `(label, k1, k2)` for each selected order.
    pub fn orders(self) -> Vec<(&'static str, usize, usize)> {
        let first = ("eta1", 0, 1);
        let second = ("eta2", 1, 0);
        match self {
            Role::First => vec![first],
            Role::Second => vec![second],
            Role::Both => vec![first, second],
        }
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(Role::First),
            "2" => Ok(Role::Second),
            "both" => Ok(Role::Both),
            _ => Err(format!("expected 1, 2 or both, got {s:?}")),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub search: SearchOptions,
    pub role: Role,
}

fn header(out: &mut String, link: &str, name: &str) {
    writeln!(out, "link: {link} ({name})").unwrap();
}

/// Integers as JSON numbers when they fit, else as decimal strings.
fn int_value(b: &BigInt) -> Value {
    i64::try_from(b).map_or_else(|_| Value::String(b.to_string()), Value::from)
}

/// Conway polynomial without multiplication signs, like `2z^3`.
fn compact_z(p: &ZPoly) -> String {
    p.to_string().replace('*', "")
}

fn int_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairValue {
    pub i: usize,
    pub j: usize,
    pub value: i64,
}

fn linking_numbers(d: &LinkDiagram) -> Result<Vec<PairValue>, CliError> {
    let n = d.num_components();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(PairValue {
                i,
                j,
                value: d.linking_number(i, j)?,
            });
        }
    }
    Ok(out)
}

fn write_linking(out: &mut String, lk: &[PairValue]) {
    for p in lk {
        writeln!(out, "lk({},{}) = {}", p.i, p.j, p.value).unwrap();
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveInfo {
    pub name: String,
    pub component: usize,
    pub epsilon: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationInfo {
    pub kind: String,
    pub axis: usize,
    pub cut: usize,
    pub curves: Vec<CurveInfo>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParseReport {
    pub link: String,
    pub name: String,
    pub components: usize,
    pub crossings: usize,
    pub writhe: i32,
    /// Self-crossing count of each component.
    pub self_crossings: Vec<usize>,
    pub linking: Vec<PairValue>,
    pub presentation: Option<PresentationInfo>,
    pub pd: String,
}

pub fn parse_report(input: &Input) -> Result<ParseReport, CliError> {
    let d = &input.diagram;
    let presentation = input.presentation.as_ref().map(|p| match p {
        Presentation::Annular(a) => PresentationInfo {
            kind: "annular".into(),
            axis: a.axis(),
            cut: a.cut(),
            curves: Vec::new(),
        },
        Presentation::Surgery(s) => PresentationInfo {
            kind: "surgery".into(),
            axis: s.annular().axis(),
            cut: s.annular().cut(),
            curves: s
                .curves()
                .iter()
                .enumerate()
                .map(|(r, c)| CurveInfo {
                    name: format!("T{r}"),
                    component: c.component,
                    epsilon: c.epsilon,
                })
                .collect(),
        },
    });
    Ok(ParseReport {
        link: input.path.clone(),
        name: input.name.clone(),
        components: d.num_components(),
        crossings: d.num_crossings(),
        writhe: d.writhe(),
        self_crossings: (0..d.num_components()).map(|k| d.self_crossings(k).len()).collect(),
        linking: linking_numbers(d)?,
        presentation,
        pd: d.to_string(),
    })
}

impl ParseReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        header(&mut out, &self.link, &self.name);
        writeln!(out, "components: {}", self.components).unwrap();
        writeln!(out, "crossings: {}", self.crossings).unwrap();
        writeln!(out, "writhe: {}", self.writhe).unwrap();
        writeln!(out, "self-crossings: {:?}", self.self_crossings).unwrap();
        write_linking(&mut out, &self.linking);
        if let Some(p) = &self.presentation {
            writeln!(out, "presentation: {} (axis {}, cut {})", p.kind, p.axis, p.cut).unwrap();
            for c in &p.curves {
                writeln!(out, "  {} = component {}, sign {:+}", c.name, c.component, c.epsilon).unwrap();
            }
        }
        writeln!(out, "pd:\n{}", self.pd.trim_end()).unwrap();
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KnotInfo {
    pub component: usize,
    pub conway: String,
    pub unknotted: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsReport {
    pub link: String,
    pub name: String,
    pub components: usize,
    pub conway: String,
    /// Symmetric Alexander polynomial, when the Conway polynomial has only
    /// even powers.
    pub alexander: Option<String>,
    pub linking: Vec<PairValue>,
    pub knots: Vec<KnotInfo>,
}

pub fn invariants_report(input: &Input) -> Result<InvariantsReport, CliError> {
    let d = &input.diagram;
    let nabla = conway_polynomial(d)?;
    let mut knots = Vec::new();
    for k in 0..d.num_components() {
        let unknotted = match is_unknotted(d, k)? {
            Unknottedness::Yes => "yes",
            Unknottedness::No => "no",
            Unknottedness::Unknown => "unknown",
        };
        knots.push(KnotInfo {
            component: k,
            conway: compact_z(&conway_polynomial(&d.sublink(&[k])?)?),
            unknotted: unknotted.into(),
        });
    }
    Ok(InvariantsReport {
        link: input.path.clone(),
        name: input.name.clone(),
        components: d.num_components(),
        conway: compact_z(&nabla),
        alexander: alexander_from_conway(&nabla).ok().map(|a| a.to_compact_string()),
        linking: linking_numbers(d)?,
        knots,
    })
}

impl InvariantsReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        header(&mut out, &self.link, &self.name);
        writeln!(out, "components: {}", self.components).unwrap();
        writeln!(out, "conway = {}", self.conway).unwrap();
        match &self.alexander {
            Some(a) => writeln!(out, "alexander = {a}").unwrap(),
            None => writeln!(out, "alexander: not a polynomial in t (odd Conway powers)").unwrap(),
        }
        write_linking(&mut out, &self.linking);
        for k in &self.knots {
            writeln!(
                out,
                "component {}: conway = {}, unknotted: {}",
                k.component, k.conway, k.unknotted
            )
            .unwrap();
        }
        out
    }
}

/// Eta with roles `(k1, k2)`. For a presentation, `eta1` comes from the
/// presentation itself: the surgery determinant or the cover of the axis.
pub fn compute_eta(input: &Input, k1: usize, k2: usize, opts: &Options) -> Result<EtaResult, CliError> {
    let n = input.diagram.num_components();
    if n != 2 {
        return Err(CliError::Unsupported(format!(
            "eta needs a two-component link, {} has {n} components",
            input.path
        )));
    }
    let order = opts.search.order;
    match (&input.presentation, (k1, k2)) {
        (Some(Presentation::Surgery(sp)), (0, 1)) => Ok(EtaResult::new(
            eta_via_surgery(sp)?,
            0,
            1,
            Provenance::SurgeryDeterminant,
            Vec::new(),
            order,
        )?),
        (Some(Presentation::Annular(a)), (0, 1)) => {
            let other = 1 - a.axis();
            let eta = eta_by_cover(a, other)?;
            Ok(EtaResult::new(eta.into(), 0, 1, Provenance::Cover, Vec::new(), order)?)
        }
        _ => Ok(eta_with_fallback(&input.diagram, k1, k2, &opts.search)?),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepInfo {
    pub crossing: usize,
    pub sign: i32,
    pub n: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaEntry {
    pub role: String,
    pub k1: usize,
    pub k2: usize,
    pub eta: String,
    /// Positive-degree part, when eta is a polynomial.
    pub eta_plus: Option<String>,
    pub provenance: String,
    pub steps: Vec<StepInfo>,
}

fn eta_entry(role: &str, r: &EtaResult) -> Result<EtaEntry, CliError> {
    let eta_plus = match r.eta.as_poly() {
        Some(p) => Some(eta_plus(p)?.to_compact_string()),
        None => None,
    };
    Ok(EtaEntry {
        role: role.into(),
        k1: r.k1,
        k2: r.k2,
        eta: r.eta.to_compact_string(),
        eta_plus,
        provenance: r.provenance.to_string(),
        steps: r
            .steps
            .iter()
            .map(|s| StepInfo {
                crossing: s.crossing,
                sign: s.sign,
                n: s.n,
            })
            .collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaReport {
    pub link: String,
    pub name: String,
    pub etas: Vec<EtaEntry>,
}

pub fn eta_report(input: &Input, opts: &Options) -> Result<EtaReport, CliError> {
    let etas = opts
        .role
        .orders()
        .into_iter()
        .map(|(label, k1, k2)| eta_entry(label, &compute_eta(input, k1, k2, opts)?))
        .collect::<Result<_, _>>()?;
    Ok(EtaReport {
        link: input.path.clone(),
        name: input.name.clone(),
        etas,
    })
}

impl EtaReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        header(&mut out, &self.link, &self.name);
        for e in &self.etas {
            writeln!(out, "{} = {}", e.role, e.eta).unwrap();
            writeln!(out, "  K1 = component {}, K2 = component {}", e.k1, e.k2).unwrap();
            if let Some(p) = &e.eta_plus {
                writeln!(out, "  {}+ = {p}", e.role).unwrap();
            }
            writeln!(out, "  provenance: {}", e.provenance).unwrap();
            for s in &e.steps {
                writeln!(out, "  step: crossing {}, sign {:+}, n = {}", s.crossing, s.sign, s.n).unwrap();
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BetaEntry {
    pub role: String,
    pub k1: usize,
    pub k2: usize,
    pub eta: String,
    pub provenance: String,
    /// `beta_1..beta_N`.
    pub betas: Vec<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BetasReport {
    pub link: String,
    pub name: String,
    pub order: usize,
    pub etas: Vec<BetaEntry>,
}

pub fn betas_report(input: &Input, opts: &Options) -> Result<BetasReport, CliError> {
    let mut etas = Vec::new();
    for (label, k1, k2) in opts.role.orders() {
        let r = compute_eta(input, k1, k2, opts)?;
        etas.push(BetaEntry {
            role: label.into(),
            k1: r.k1,
            k2: r.k2,
            eta: r.eta.to_compact_string(),
            provenance: r.provenance.to_string(),
            betas: r.betas().iter().map(int_value).collect(),
        });
    }
    Ok(BetasReport {
        link: input.path.clone(),
        name: input.name.clone(),
        order: opts.search.order,
        etas,
    })
}

impl BetasReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        header(&mut out, &self.link, &self.name);
        writeln!(out, "order: {}", self.order).unwrap();
        for e in &self.etas {
            writeln!(out, "{} = {}", e.role, e.eta).unwrap();
            writeln!(out, "  K1 = component {}, K2 = component {}", e.k1, e.k2).unwrap();
            writeln!(out, "  provenance: {}", e.provenance).unwrap();
            let b: Vec<String> = e.betas.iter().map(int_text).collect();
            writeln!(out, "  betas: [{}]", b.join(", ")).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeInfo {
    pub eps: String,
    pub status: String,
    /// Labels of the evidence ruling this type out.
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvidenceInfo {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiralityReport {
    pub link: String,
    pub name: String,
    pub summary: String,
    pub absolutely_chiral: bool,
    pub setwise_chiral: bool,
    pub types: Vec<TypeInfo>,
    pub evidence: Vec<EvidenceInfo>,
    pub notes: Vec<String>,
}

/// Short name of an obstruction; `eta1` and `eta2` for two components.
fn label(o: &Obstruction, components: usize) -> String {
    match (*o, components) {
        (Obstruction::Eta(0, 1), 2) => "eta1".into(),
        (Obstruction::Eta(1, 0), 2) => "eta2".into(),
        (Obstruction::EtaAsymmetry(_, _), 2) => "eta1 != eta2".into(),
        (Obstruction::Eta(a, b), _) => format!("eta({a},{b})"),
        (Obstruction::EtaAsymmetry(a, b), _) => format!("eta({a},{b}) != eta({b},{a})"),
        (Obstruction::Linking(i, j), _) => format!("lk({i},{j})"),
    }
}

fn cite(e: &Evidence, components: usize) -> String {
    match e.obstruction {
        Obstruction::EtaAsymmetry(..) => label(&e.obstruction, components),
        _ => format!("{} = {}", label(&e.obstruction, components), e.value),
    }
}

fn summary(v: &ChiralityVerdict, components: usize) -> String {
    let mut s = if v.absolutely_chiral {
        let decisive = v
            .evidence
            .iter()
            .find(|e| matches!(e.obstruction, Obstruction::Eta(..)))
            .map(|e| cite(e, components))
            .unwrap_or_else(|| {
                let lk: Vec<String> = v
                    .evidence
                    .iter()
                    .filter(|e| matches!(e.obstruction, Obstruction::Linking(..)))
                    .map(|e| cite(e, components))
                    .collect();
                lk.join(", ")
            });
        format!("absolutely chiral ({decisive})")
    } else if v.types.iter().any(|t| t.status.is_chiral()) {
        let ruled: Vec<String> = v
            .types
            .iter()
            .filter(|t| t.status.is_chiral())
            .map(|t| t.eps.to_string())
            .collect();
        format!("chiral for types {}", ruled.join(" "))
    } else {
        "no chirality obstruction found".into()
    };
    if v.setwise_chiral {
        let why = v
            .evidence
            .iter()
            .find(|e| matches!(e.obstruction, Obstruction::EtaAsymmetry(..)))
            .map(|e| label(&e.obstruction, components))
            .unwrap_or_default();
        write!(s, "; set-wise chiral ({why})").unwrap();
    }
    s
}

pub fn chirality_report(input: &Input, opts: &Options) -> Result<ChiralityReport, CliError> {
    let d = &input.diagram;
    let n = d.num_components();
    let roles = match (opts.role, n) {
        (Role::Both, _) => None,
        (r, 2) => r.orders().first().map(|&(_, a, b)| (a, b)),
        (_, _) => {
            return Err(CliError::Unsupported(
                "--role applies to two-component links only".into(),
            ))
        }
    };
    let ropts = ReportOptions {
        roles,
        search: opts.search.clone(),
        ..ReportOptions::default()
    };
    let v = obstruction_report(d, &ropts);
    let labels: Vec<String> = v.evidence.iter().map(|e| label(&e.obstruction, n)).collect();
    Ok(ChiralityReport {
        link: input.path.clone(),
        name: input.name.clone(),
        summary: summary(&v, n),
        absolutely_chiral: v.absolutely_chiral,
        setwise_chiral: v.setwise_chiral,
        types: v
            .types
            .iter()
            .map(|t| TypeInfo {
                eps: t.eps.to_string(),
                status: t.status.to_string(),
                reasons: t.reasons.iter().map(|&i| labels[i].clone()).collect(),
            })
            .collect(),
        evidence: v
            .evidence
            .iter()
            .zip(&labels)
            .map(|(e, l)| EvidenceInfo {
                label: l.clone(),
                value: e.value.clone(),
            })
            .collect(),
        notes: v.notes.clone(),
    })
}

fn write_types(out: &mut String, types: &[TypeInfo]) {
    for t in types {
        write!(out, "type {}: {}", t.eps, t.status).unwrap();
        if !t.reasons.is_empty() {
            write!(out, " [{}]", t.reasons.join(", ")).unwrap();
        }
        out.push('\n');
    }
}

impl ChiralityReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        header(&mut out, &self.link, &self.name);
        writeln!(out, "{}", self.summary).unwrap();
        write_types(&mut out, &self.types);
        for e in &self.evidence {
            writeln!(out, "evidence: {} [{}]", e.value, e.label).unwrap();
        }
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExprReport {
    pub expression: String,
    pub components: usize,
    pub absolutely_chiral: bool,
    pub types: Vec<TypeInfo>,
    /// Rests on the iterated Bing doubling law beyond its derived depth.
    pub asserted: bool,
    pub advisories: Vec<String>,
}

pub fn expr_report(expr: &str, decls: &Declarations) -> Result<ExprReport, CliError> {
    let e: SatelliteExpr = expr.parse()?;
    let table = epsilon_types(&e, decls)?;
    Ok(ExprReport {
        expression: e.to_string(),
        components: table.components,
        absolutely_chiral: table.absolutely_chiral(),
        types: table
            .entries
            .iter()
            .map(|(eps, st)| TypeInfo {
                eps: eps.to_string(),
                status: st.to_string(),
                reasons: Vec::new(),
            })
            .collect(),
        asserted: table.asserted,
        advisories: table.advisories.clone(),
    })
}

impl ExprReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "expression: {}", self.expression).unwrap();
        writeln!(out, "components: {}", self.components).unwrap();
        if self.absolutely_chiral {
            writeln!(out, "absolutely chiral").unwrap();
        }
        write_types(&mut out, &self.types);
        if self.asserted {
            writeln!(out, "asserted: relies on the iterated Bing doubling law").unwrap();
        }
        for a in &self.advisories {
            writeln!(out, "advisory: {a}").unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub link: String,
    pub name: String,
    pub role: String,
    pub eta: String,
    pub eta_plus: Option<String>,
    pub expected: Option<String>,
    pub provenance: String,
    /// `ok`, `mismatch` or `unchecked`.
    pub status: String,
}

/// One table row: eta of the first selected role, its positive part and
/// the comparison with the `eta_plus` expectation of the file.
pub fn table_row(input: &Input, opts: &Options) -> Result<TableRow, CliError> {
    let (role, k1, k2) = opts.role.orders()[0];
    let r = compute_eta(input, k1, k2, opts)?;
    let plus = r.eta.as_poly().map(eta_plus).transpose()?;
    let expected = input.expect.get("eta_plus").cloned();
    let status = match (&expected, &plus) {
        (Some(want), Some(got)) => {
            let want: LaurentPoly = want.parse()?;
            if &want == got {
                "ok"
            } else {
                "mismatch"
            }
        }
        (Some(_), None) => "mismatch",
        (None, _) => "unchecked",
    };
    Ok(TableRow {
        link: input.path.clone(),
        name: input.name.clone(),
        role: role.into(),
        eta: r.eta.to_compact_string(),
        eta_plus: plus.map(|p| p.to_compact_string()),
        expected,
        provenance: r.provenance.to_string(),
        status: status.into(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub file: String,
    pub rows: Vec<TableRow>,
    pub checked: usize,
    pub matched: usize,
}

impl TableReport {
    pub fn new(file: String, rows: Vec<TableRow>) -> Self {
        let checked = rows.iter().filter(|r| r.status != "unchecked").count();
        let matched = rows.iter().filter(|r| r.status == "ok").count();
        Self {
            file,
            rows,
            checked,
            matched,
        }
    }

    pub fn text(&self) -> String {
        let head = ["link", "role", "eta+", "expected", "provenance", "status", "eta"];
        let cells: Vec<[String; 7]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.name.clone(),
                    r.role.clone(),
                    r.eta_plus.clone().unwrap_or_else(|| "-".into()),
                    r.expected.clone().unwrap_or_else(|| "-".into()),
                    r.provenance.clone(),
                    r.status.clone(),
                    r.eta.clone(),
                ]
            })
            .collect();
        let width: Vec<usize> = (0..7)
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].len())
                    .chain([head[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        writeln!(out, "file: {}", self.file).unwrap();
        let line = |out: &mut String, row: &[&str]| {
            let cols: Vec<String> = row.iter().zip(&width).map(|(s, w)| format!("{s:<w$}")).collect();
            writeln!(out, "{}", cols.join("  ").trim_end()).unwrap();
        };
        line(&mut out, &head);
        for r in &cells {
            line(&mut out, &r.iter().map(String::as_str).collect::<Vec<_>>());
        }
        writeln!(out, "matched {} of {} checked", self.matched, self.checked).unwrap();
        out
    }
}

/// Report of any command.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Parse(ParseReport),
    Invariants(InvariantsReport),
    Eta(EtaReport),
    Betas(BetasReport),
    Chirality(ChiralityReport),
    Expr(ExprReport),
    Table(TableReport),
}

impl Report {
    pub fn text(&self) -> String {
        match self {
            Report::Parse(r) => r.text(),
            Report::Invariants(r) => r.text(),
            Report::Eta(r) => r.text(),
            Report::Betas(r) => r.text(),
            Report::Chirality(r) => r.text(),
            Report::Expr(r) => r.text(),
            Report::Table(r) => r.text(),
        }
    }
}
