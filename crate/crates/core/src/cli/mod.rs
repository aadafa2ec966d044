//! Batch front end: JSON case files in, JSON or plain-text reports out.
//!
//! A document is one case object or an array of them. Each case goes through
//! three stages: structural parsing (unknown fields rejected unless lenient),
//! semantic validation into engine types, and evaluation. Failures in the first
//! two stages are input errors (exit 2); a module invariant tripping during
//! evaluation is a bug (exit 3).

mod schema;
pub mod selfcheck;
mod table;

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

pub use schema::{
    BlowUpBlock, CaseFile, ExactInt, ExactRational, ManifoldBlock, PrimitiveBlock, Query, SpinCBlock, SurfaceBlock,
    SwBlock,
};
pub use table::render_table;

use crate::adjunction::{best_bound, max_insertion_degree, AdjunctionCase, TheoremVerdict};
use crate::error::Error;
use crate::oracle;
use crate::reduction::{
    complete_primitive, l_invariant, l_lower_bound_constructive, referee_bound, EmbeddingMap, PrimitiveAVector,
};
use crate::swtopology::{
    blow_up, d_invariant, mod8_consistent, BlowUpSpec, Chamber, InsertionData, ManifoldData, SpinCData, SurfaceData,
};
use crate::symplattice::{verify_basis, BasisCheck, SymplecticBasis};
use crate::BigRational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// A problem with one field of the input, tagged with the rule it broke.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldError {
    pub path: String,
    pub rule: String,
    pub message: String,
}

impl FieldError {
    fn new(path: impl Into<String>, rule: &str, message: impl Into<String>) -> Self {
        Self { path: path.into(), rule: rule.into(), message: message.into() }
    }
}

/// How the `c1² ≡ τ (mod 8)` check is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Mod8Mode {
    Off,
    #[default]
    Warn,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Options {
    pub lenient: bool,
    pub mod8: Mod8Mode,
}

/// Result of one case.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Ok(Value),
    InputError(Vec<FieldError>),
    Internal(String),
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Ok(_) => EXIT_OK,
            Outcome::InputError(_) => EXIT_INPUT,
            Outcome::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Outcome::Ok(v) => v.clone(),
            Outcome::InputError(errors) => json!({ "status": "input_error", "errors": errors }),
            Outcome::Internal(message) => json!({ "status": "internal_error", "message": message }),
        }
    }
}

/// All outcomes of a document, in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentReport {
    pub batch: bool,
    pub outcomes: Vec<Outcome>,
}

impl DocumentReport {
    /// 3 if any case hit an internal error, else 2 if any input was rejected, else 0.
    pub fn exit_code(&self) -> i32 {
        exit_code(&self.outcomes)
    }

    pub fn to_json(&self) -> Value {
        if self.batch {
            Value::Array(self.outcomes.iter().map(Outcome::to_json).collect())
        } else {
            self.outcomes.first().map(Outcome::to_json).unwrap_or(Value::Null)
        }
    }
}

pub fn exit_code(outcomes: &[Outcome]) -> i32 {
    outcomes.iter().map(Outcome::exit_code).max().unwrap_or(EXIT_OK)
}

fn int_json(x: &BigInt) -> Value {
    serde_json::to_value(ExactInt(x.clone())).expect("integers always serialize")
}

fn opt_int_json(x: &Option<BigInt>) -> Value {
    x.as_ref().map(int_json).unwrap_or(Value::Null)
}

fn index_path(block: &str, i: usize, field: &str) -> String {
    if field.is_empty() {
        format!("{block}[{i}]")
    } else {
        format!("{block}[{i}].{field}")
    }
}

// ---------------------------------------------------------------------------
// Parsing

fn classify_serde(message: &str) -> &'static str {
    if message.starts_with("missing field") {
        "missing_field"
    } else if message.starts_with("unknown variant") || message.starts_with("invalid value") {
        "invalid_value"
    } else if message.contains("floating-point") {
        "float_not_allowed"
    } else if message.contains("zero denominator") {
        "zero_denominator"
    } else {
        "invalid_type"
    }
}

/// Rewrites `serde_ignored` paths (`spinc.0.?.x`) into the `spinc[0].x` form
/// used by every other error.
fn tidy_path(raw: &str) -> String {
    let mut out = String::new();
    for seg in raw.split('.').filter(|s| *s != "?" && !s.is_empty()) {
        if seg.bytes().all(|b| b.is_ascii_digit()) {
            out.push_str(&format!("[{seg}]"));
        } else {
            if !out.is_empty() {
                out.push('.');
            }
            out.push_str(seg);
        }
    }
    out
}

fn backtick_name(message: &str) -> Option<&str> {
    let start = message.find('`')? + 1;
    let len = message[start..].find('`')?;
    Some(&message[start..start + len])
}

/// Structural parse of one case. Unknown fields are errors unless `lenient`,
/// in which case they come back as warnings.
fn deserialize_case(value: Value, opts: &Options) -> Result<(CaseFile, Vec<FieldError>), Vec<FieldError>> {
    let mut unknown = Vec::new();
    let mut track = serde_path_to_error::Track::new();
    let de = serde_path_to_error::Deserializer::new(value, &mut track);
    let parsed: Result<CaseFile, serde_json::Error> = serde_ignored::deserialize(de, |p| unknown.push(p.to_string()));
    match parsed {
        Ok(case) => {
            let unknown: Vec<FieldError> = unknown
                .into_iter()
                .map(|p| FieldError::new(tidy_path(&p), "unknown_field", "field is not part of the case schema"))
                .collect();
            if !opts.lenient && !unknown.is_empty() {
                Err(unknown)
            } else {
                Ok((case, unknown))
            }
        }
        Err(e) => {
            let message = e.to_string();
            let rule = classify_serde(&message);
            let mut path = track.path().to_string();
            if rule == "missing_field" {
                if let Some(field) = backtick_name(&message) {
                    path = if path == "." { field.to_string() } else { format!("{path}.{field}") };
                }
            }
            Err(vec![FieldError::new(path, rule, message)])
        }
    }
}

/// Parses and fully validates a single case object.
pub fn parse_case(text: &str, opts: &Options) -> Result<CaseFile, Vec<FieldError>> {
    let value: Value = serde_json::from_str(text).map_err(|e| vec![FieldError::new("", "json_syntax", e.to_string())])?;
    if !value.is_object() {
        return Err(vec![FieldError::new("", "invalid_type", "expected a single case object")]);
    }
    let (case, _) = deserialize_case(value, opts)?;
    prepare(&case, opts)?;
    Ok(case)
}

/// Parses a document holding one case or an array of cases, without running
/// anything. Semantic validation is included.
pub fn parse_document(text: &str, opts: &Options) -> Result<Vec<Result<CaseFile, Vec<FieldError>>>, FieldError> {
    let value: Value = serde_json::from_str(text).map_err(|e| FieldError::new("", "json_syntax", e.to_string()))?;
    let items = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    Ok(items
        .into_iter()
        .map(|v| {
            let (case, _) = deserialize_case(v, opts)?;
            prepare(&case, opts)?;
            Ok(case)
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Validation

/// Engine-ready view of a case.
struct Prepared {
    echo: CaseFile,
    manifold: Option<ManifoldData<BigInt>>,
    surface: Option<SurfaceData<BigInt>>,
    cases: Vec<AdjunctionCase<BigInt>>,
    primitive: Option<PrimitiveAVector<BigInt>>,
    warnings: Vec<FieldError>,
}

fn required_blocks(q: Query) -> &'static [&'static str] {
    match q {
        Query::GenusBound | Query::MaxInsertionDegree => &["manifold", "surface", "spinc"],
        Query::Blowup => &["manifold", "surface", "spinc", "blowup"],
        Query::LInvariant => &["manifold", "surface", "surface.embedding"],
        Query::CompletePrimitive => &["primitive"],
    }
}

fn block_present(c: &CaseFile, block: &str) -> bool {
    match block {
        "manifold" => c.manifold.is_some(),
        "surface" => c.surface.is_some(),
        "spinc" => !c.spinc.is_empty(),
        "blowup" => c.blowup.is_some(),
        "primitive" => c.primitive.is_some(),
        "surface.embedding" => c.surface.as_ref().is_some_and(|s| s.embedding.is_some()),
        _ => false,
    }
}

fn uses_spinc(q: Query) -> bool {
    matches!(q, Query::GenusBound | Query::MaxInsertionDegree | Query::Blowup)
}

fn prepare_embedding(
    rows: &[Vec<ExactRational>],
    genus: usize,
    b1: Option<usize>,
    errors: &mut Vec<FieldError>,
) -> Option<EmbeddingMap<BigInt>> {
    let mut ok = true;
    if let Some(b1) = b1 {
        if rows.len() != b1 {
            errors.push(FieldError::new(
                "surface.embedding",
                "dimension_mismatch",
                format!("expected b1 = {b1} rows, found {}", rows.len()),
            ));
            ok = false;
        }
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != 2 * genus {
            errors.push(FieldError::new(
                format!("surface.embedding[{i}]"),
                "dimension_mismatch",
                format!("expected 2g = {} entries, found {}", 2 * genus, row.len()),
            ));
            ok = false;
        }
    }
    if !ok {
        return None;
    }
    let matrix: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|q| q.0.clone()).collect()).collect();
    match EmbeddingMap::new(genus, rows.len(), matrix) {
        Ok(e) => Some(e),
        Err(e) => {
            errors.push(FieldError::new("surface.embedding", "dimension_mismatch", e.to_string()));
            None
        }
    }
}

fn resolve_spinc_d(
    i: usize,
    sp: &SpinCBlock,
    m: &ManifoldBlock,
    opts: &Options,
    errors: &mut Vec<FieldError>,
    warnings: &mut Vec<FieldError>,
) -> Option<BigInt> {
    if let (Some(c1), Some(tau)) = (&sp.c1_square, &m.tau) {
        if opts.mod8 != Mod8Mode::Off && !mod8_consistent(&c1.0, &tau.0) {
            let err = FieldError::new(
                index_path("spinc", i, "c1_square"),
                "mod8",
                format!("c1^2 = {} is not congruent to tau = {} mod 8", c1.0, tau.0),
            );
            match opts.mod8 {
                Mod8Mode::Error => errors.push(err),
                _ => warnings.push(err),
            }
        }
    }
    let computed = match (&sp.c1_square, &m.chi, &m.tau) {
        (Some(c1), Some(chi), Some(tau)) => match d_invariant(&c1.0, &chi.0, &tau.0) {
            Ok(d) => Some(d),
            Err(e) => {
                errors.push(FieldError::new(index_path("spinc", i, "c1_square"), "d_not_integral", e.to_string()));
                return None;
            }
        },
        _ => None,
    };
    match (sp.d_s.as_ref().map(|d| &d.0), computed) {
        (Some(s), Some(c)) if *s != c => {
            errors.push(FieldError::new(
                index_path("spinc", i, "d_s"),
                "d_mismatch",
                format!("d_s = {s} but (c1^2 - 2 chi - 3 tau)/4 = {c}"),
            ));
            None
        }
        (Some(s), _) => Some(s.clone()),
        (None, Some(c)) => Some(c),
        (None, None) => {
            errors.push(FieldError::new(
                index_path("spinc", i, "d_s"),
                "d_unavailable",
                "give d_s, or c1_square together with manifold chi and tau",
            ));
            None
        }
    }
}

/// Insertion used when the case file gives none: `U^{floor(d/2)}`, which is
/// the basic-class insertion whenever `d` is even and non-negative.
fn default_insertion(d: &BigInt) -> InsertionData {
    if d.is_negative() {
        InsertionData::default()
    } else {
        InsertionData::u_power(d.div_floor(&BigInt::from(2)).to_usize().unwrap_or(usize::MAX))
    }
}

fn prepare(c: &CaseFile, opts: &Options) -> Result<Prepared, Vec<FieldError>> {
    let mut errors = Vec::new();
    let mut warnings = Vec::new();
    for block in required_blocks(c.query) {
        if !block_present(c, block) {
            errors.push(FieldError::new(
                *block,
                "missing_block",
                format!("query '{}' needs the '{block}' block", c.query.label()),
            ));
        }
    }

    let manifold = c.manifold.as_ref().and_then(|m| {
        let chi = m.chi.as_ref().map(|x| x.0.clone());
        let tau = m.tau.as_ref().map(|x| x.0.clone());
        match ManifoldData::new(m.b1, m.b2_plus, chi, tau) {
            Ok(md) => Some(md),
            Err(e) => {
                errors.push(FieldError::new("manifold.b2_plus", "b2_plus_positive", e.to_string()));
                None
            }
        }
    });

    let surface = c.surface.as_ref().and_then(|s| {
        if s.genus == 0 {
            errors.push(FieldError::new("surface.genus", "genus_positive", "the surface genus must be at least 1"));
            return None;
        }
        let embedding = match &s.embedding {
            Some(rows) => Some(prepare_embedding(rows, s.genus, c.manifold.as_ref().map(|m| m.b1), &mut errors)?),
            None => None,
        };
        SurfaceData::new(s.genus, s.self_intersection.0.clone(), s.non_torsion, embedding)
            .map_err(|e| errors.push(FieldError::new("surface", "dimension_mismatch", e.to_string())))
            .ok()
    });

    if let (Some(l), Some(s)) = (c.l_sigma, &c.surface) {
        if l > s.genus {
            errors.push(FieldError::new("l_sigma", "l_sigma_range", format!("l_sigma = {l} exceeds the genus {}", s.genus)));
        }
    }

    let primitive = c.primitive.as_ref().and_then(|p| {
        let coeffs: Vec<BigInt> = p.coeffs.iter().map(|x| x.0.clone()).collect();
        PrimitiveAVector::new(coeffs)
            .map_err(|e| errors.push(FieldError::new("primitive.coeffs", "non_primitive", e.to_string())))
            .ok()
    });

    let mut echo = c.clone();
    let mut cases = Vec::new();
    if uses_spinc(c.query) {
        if let (Some(mb), Some(md), Some(sd)) = (&c.manifold, &manifold, &surface) {
            for (i, sp) in c.spinc.iter().enumerate() {
                let Some(e) = &sp.pairing_e else {
                    errors.push(FieldError::new(
                        index_path("spinc", i, "pairing_e"),
                        "missing_field",
                        "pairing_e = <[Σ], c1(s)> is required by this query",
                    ));
                    continue;
                };
                let Some(d) = resolve_spinc_d(i, sp, mb, opts, &mut errors, &mut warnings) else { continue };
                let chamber = sp.chamber.unwrap_or(Chamber::NotApplicable);
                let insertion = sp.sw.insertion.unwrap_or_else(|| default_insertion(&d));
                let spinc = SpinCData {
                    name: sp.name.clone(),
                    c1_square: sp.c1_square.as_ref().map(|x| x.0.clone()),
                    pairing_e: e.0.clone(),
                    sw_nonvanishing: sp.sw.nonvanishing,
                    chamber,
                };
                match AdjunctionCase::new(md.clone(), sd.clone(), spinc, d.clone(), insertion) {
                    Ok(adj) => {
                        let norm = &mut echo.spinc[i];
                        norm.d_s = Some(ExactInt(d));
                        norm.chamber = Some(chamber);
                        norm.sw.insertion = Some(insertion);
                        cases.push(adj);
                    }
                    Err(Error::Validation { rule, message }) => {
                        let field = match rule {
                            "chamber_required" => "chamber",
                            "wu_parity" => "pairing_e",
                            _ => "",
                        };
                        errors.push(FieldError::new(index_path("spinc", i, field), rule, message));
                    }
                    Err(Error::DimensionMismatch { expected, found }) => errors.push(FieldError::new(
                        "surface.embedding",
                        "dimension_mismatch",
                        format!("expected b1 = {expected} rows, found {found}"),
                    )),
                    Err(e) => errors.push(FieldError::new(index_path("spinc", i, ""), "invalid_case", e.to_string())),
                }
            }
        }
    }

    if errors.is_empty() {
        Ok(Prepared { echo, manifold, surface, cases, primitive, warnings })
    } else {
        Err(errors)
    }
}

// ---------------------------------------------------------------------------
// Evaluation

fn verdict_json(v: &TheoremVerdict<BigInt>) -> Value {
    json!({
        "theorem_id": v.theorem_id.label(),
        "applicable": v.applicable,
        "failed_hypotheses": v.failed_hypotheses.iter().map(|h| h.label()).collect::<Vec<_>>(),
        "genus_lower_bound": opt_int_json(&v.genus_lower_bound),
        "lhs": opt_int_json(&v.lhs),
    })
}

fn basis_rows(b: &SymplecticBasis<BigInt>) -> Value {
    Value::Array(
        b.vectors()
            .iter()
            .map(|v| Value::Array(v.coeffs().iter().map(int_json).collect()))
            .collect(),
    )
}

fn check_basis(b: &SymplecticBasis<BigInt>, what: &str) -> crate::Result<()> {
    match verify_basis(b) {
        BasisCheck::Symplectic => Ok(()),
        v => Err(Error::Invariant(format!("{what} is not symplectic: {v:?}"))),
    }
}

fn max_bound(values: impl Iterator<Item = Option<BigInt>>) -> Option<BigInt> {
    values.flatten().max()
}

fn run_genus_bound(p: &Prepared, l_sigma: Option<usize>) -> crate::Result<(Vec<Value>, Value)> {
    let mut results = Vec::new();
    let mut bounds = Vec::new();
    for adj in &p.cases {
        let r = best_bound(adj, l_sigma)?;
        results.push(json!({
            "spinc": adj.spinc.name,
            "d_s": int_json(&adj.d_s),
            "insertion_degree": adj.insertion.degree(),
            "normalization_applied": r.normalization_applied,
            "l_sigma": { "value": r.l_sigma, "source": r.l_source },
            "verdicts": r.verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
            "best_bound": opt_int_json(&r.best_bound),
            "degree_cap": opt_int_json(&r.degree_cap),
        }));
        bounds.push(r.best_bound);
    }
    Ok((results, opt_int_json(&max_bound(bounds.into_iter()))))
}

fn run_max_insertion(p: &Prepared) -> (Vec<Value>, Value) {
    let mut results = Vec::new();
    let mut bounds = Vec::new();
    for adj in &p.cases {
        let cap = max_insertion_degree(adj);
        results.push(json!({
            "spinc": adj.spinc.name,
            "d_s": int_json(&adj.d_s),
            "insertion_degree": adj.insertion.degree(),
            "verdict": verdict_json(&cap.verdict),
            "degree_cap": opt_int_json(&cap.degree_cap),
        }));
        bounds.push(cap.verdict.genus_lower_bound);
    }
    (results, opt_int_json(&max_bound(bounds.into_iter())))
}

fn run_blowup(p: &Prepared, r: usize) -> crate::Result<Value> {
    let spec = BlowUpSpec { r };
    let rr = BigInt::from(r);
    let mut out = p.echo.clone();
    out.blowup = None;
    if let Some(m) = &mut out.manifold {
        m.chi = m.chi.take().map(|x| ExactInt(x.0 + &rr));
        m.tau = m.tau.take().map(|x| ExactInt(x.0 - &rr));
    }
    if let Some(s) = &mut out.surface {
        s.self_intersection = ExactInt(&s.self_intersection.0 - &rr);
    }
    let mut d_values = Vec::new();
    let mut transfers = Vec::new();
    for (block, adj) in out.spinc.iter_mut().zip(&p.cases) {
        let b = blow_up(&adj.manifold, &adj.surface, &adj.spinc, &adj.d_s, spec);
        let was_basic = adj.is_basic_insertion();
        block.c1_square = b.spinc.c1_square.clone().map(ExactInt);
        block.pairing_e = Some(ExactInt(b.spinc.pairing_e.clone()));
        block.d_s = Some(ExactInt(b.d.clone()));
        if was_basic && r > 0 {
            block.sw.insertion = Some(default_insertion(&b.d));
        }
        transfers.push(json!({
            "spinc": adj.spinc.name,
            "sw_transferred": adj.spinc.sw_nonvanishing,
            "basic_class": was_basic && !b.d.is_negative(),
        }));
        d_values.push(int_json(&b.d));
    }
    let blown = json!({
        "manifold": out.manifold,
        "surface": out.surface,
        "spinc": out.spinc,
    });
    Ok(json!({ "r": r, "blown_up": blown, "d_s": d_values, "transfer": transfers }))
}

fn run_l_invariant(p: &Prepared) -> crate::Result<Value> {
    let s = p.surface.as_ref().ok_or_else(|| Error::Invariant("validated surface missing".into()))?;
    let e = s.embedding.as_ref().ok_or_else(|| Error::Invariant("validated embedding missing".into()))?;
    let l = l_invariant(e);
    let cons = l_lower_bound_constructive(e)?;
    if cons.l != l {
        return Err(Error::Invariant(format!("constructive l = {} but l = {l}", cons.l)));
    }
    check_basis(&cons.witness, "l witness basis")?;
    let witness = cons.witness.a_vectors()[..l].to_vec();
    if let Some(bad) = witness.iter().position(|v| !e.kills(v)) {
        return Err(Error::Invariant(format!("witness A{} is not in the kernel", bad + 1)));
    }
    let b1 = p.manifold.as_ref().map(|m| m.b1).unwrap_or(e.ambient_b1());
    Ok(json!({
        "l_invariant": l,
        "referee_bound": referee_bound(s.genus, b1),
        "kernel_rank": e.kernel().len(),
        "witness": witness.iter().map(|v| v.coeffs().iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "steps": cons.steps.len(),
    }))
}

fn run_complete_primitive(p: &Prepared) -> crate::Result<Value> {
    let v = p.primitive.as_ref().ok_or_else(|| Error::Invariant("validated primitive vector missing".into()))?;
    let trace = complete_primitive(v)?;
    let replayed = oracle::replay(&trace)?;
    if replayed != trace.final_basis {
        return Err(Error::CorruptTrace("replay does not reproduce the final basis".into()));
    }
    check_basis(&trace.final_basis, "completed basis")?;
    for w in trace.metrics.windows(2) {
        if !w[0].precedes(&w[1]) {
            return Err(Error::Invariant("descent metric did not decrease".into()));
        }
    }
    Ok(json!({
        "slot": "A1",
        "steps": trace.steps.iter().map(|s| json!({ "kind": s.kind(), "text": s.to_string() })).collect::<Vec<_>>(),
        "metrics": trace.metrics.iter().map(|m| json!({ "nonzero": m.nonzero, "min_pair_gcd": int_json(&m.min_pair_gcd) })).collect::<Vec<_>>(),
        "final_basis": basis_rows(&trace.final_basis),
        "verified": true,
    }))
}

fn evaluate(c: &CaseFile, p: &Prepared) -> crate::Result<Value> {
    let mut report = json!({
        "status": "ok",
        "query": c.query.label(),
        "input": p.echo,
        "warnings": p.warnings,
    });
    let obj = report.as_object_mut().expect("report is an object");
    match c.query {
        Query::GenusBound => {
            let (results, best) = run_genus_bound(p, c.l_sigma)?;
            obj.insert("results".into(), Value::Array(results));
            obj.insert("best_bound".into(), best);
        }
        Query::MaxInsertionDegree => {
            let (results, best) = run_max_insertion(p);
            obj.insert("results".into(), Value::Array(results));
            obj.insert("best_bound".into(), best);
        }
        Query::Blowup => {
            let r = c.blowup.as_ref().map(|b| b.r).unwrap_or(0);
            obj.insert("result".into(), run_blowup(p, r)?);
        }
        Query::LInvariant => {
            let v = run_l_invariant(p)?;
            obj.insert("l_invariant".into(), v["l_invariant"].clone());
            obj.insert("result".into(), v);
        }
        Query::CompletePrimitive => {
            obj.insert("result".into(), run_complete_primitive(p)?);
        }
    }
    if c.query != Query::LInvariant {
        if let Some(e) = p.surface.as_ref().and_then(|s| s.embedding.as_ref()) {
            obj.insert("l_invariant".into(), json!(l_invariant(e)));
        }
    }
    Ok(report)
}

/// Maps an evaluation result to an outcome. Broken module invariants and
/// corrupt traces are internal errors; any other engine error means the input
/// asked for something the engine refuses.
pub fn outcome_of(result: crate::Result<Value>) -> Outcome {
    match result {
        Ok(v) => Outcome::Ok(v),
        Err(e @ (Error::Invariant(_) | Error::CorruptTrace(_))) => Outcome::Internal(e.to_string()),
        Err(e) => Outcome::InputError(vec![FieldError::new("", "precondition", e.to_string())]),
    }
}

fn run_with_warnings(c: &CaseFile, extra_warnings: Vec<FieldError>, opts: &Options) -> Outcome {
    let mut p = match prepare(c, opts) {
        Ok(p) => p,
        Err(errors) => return Outcome::InputError(errors),
    };
    p.warnings.splice(0..0, extra_warnings);
    match catch_unwind(AssertUnwindSafe(|| evaluate(c, &p))) {
        Ok(result) => outcome_of(result),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Outcome::Internal(msg)
        }
    }
}

/// Validates and evaluates one parsed case.
pub fn run_query(c: &CaseFile, opts: &Options) -> Outcome {
    run_with_warnings(c, Vec::new(), opts)
}

/// Parses and runs a whole document. A top-level JSON syntax error yields a
/// single input-error outcome.
pub fn run_document(text: &str, opts: &Options) -> DocumentReport {
    let value: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => {
            return DocumentReport {
                batch: false,
                outcomes: vec![Outcome::InputError(vec![FieldError::new("", "json_syntax", e.to_string())])],
            }
        }
    };
    let (batch, items) = match value {
        Value::Array(items) => (true, items),
        other => (false, vec![other]),
    };
    let outcomes = items
        .into_iter()
        .map(|v| match deserialize_case(v, opts) {
            Ok((case, warnings)) => run_with_warnings(&case, warnings, opts),
            Err(errors) => Outcome::InputError(errors),
        })
        .collect();
    DocumentReport { batch, outcomes }
}
