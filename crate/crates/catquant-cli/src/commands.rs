//! Command implementations behind the `catquant` binary.
//!
//! Exit-code contract: 0 when every requested law holds, 1 when a law check
//! fails, 2 for input problems (unreadable files, malformed documents,
//! enumeration caps without `--sample`). Reports are printed as text on
//! stdout and, with `--json PATH`, also written as a JSON file.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use catquant::arrow_field::{
    check_monoid_laws, delta_field, endo_antirep_check, enumerate_arrow_fields, field_count,
    identity_field, ArrowField, DEFAULT_FIELD_CAP,
};
use catquant::category::FiniteCategory;
use catquant::generators::{
    chain_category, fig_one, fig_two, group_action_category, isham_two_object, poset_category,
    topology_category, ArrowMode, DEFAULT_MAP_CAP,
};
use catquant::linalg::C64;
use catquant::presheaf::{set_presheaf, trivial_presheaf, validate_presheaf, HilbertPresheaf};
use catquant::rep::{
    a_op, adjoint_formula_check, alpha_op, beta_hat_op, beta_mom_op, block_structure_check,
    commutant_dimension, connected_components, cqm_homomorphism_check, multiplier_check,
    number_ops_check, separation_report, v_op, ConfigFunction, OPERATOR_TOL,
};
use catquant::report::CheckReport;
use catquant::Section;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;

use crate::doc::{
    sha256_hex, BetaDocument, CategoryDocument, DigestEntry, FieldDocument, GroupActionInput,
    MatrixDoc, PosetsInput, PresheafDocument, RunManifest, SpacesInput,
};

/// Whether the requested laws all held. `main` turns this into the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    LawViolation,
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

pub type CmdResult = Result<Outcome, InputError>;

fn input<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

/// Enumeration caps; `CATQUANT_CAP` overrides both when set.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub map_cap: usize,
    pub field_cap: usize,
}

impl Caps {
    pub fn from_env() -> Result<Self, InputError> {
        let mut caps = Caps {
            map_cap: DEFAULT_MAP_CAP,
            field_cap: DEFAULT_FIELD_CAP,
        };
        if let Ok(value) = std::env::var("CATQUANT_CAP") {
            let parsed: usize = value
                .parse()
                .map_err(|_| InputError(format!("CATQUANT_CAP={:?} is not a number", value)))?;
            caps.map_cap = parsed;
            caps.field_cap = parsed;
        }
        Ok(caps)
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let bytes =
        fs::read(path).map_err(|e| InputError(format!("cannot read {}: {}", path.display(), e)))?;
    serde_json::from_slice(&bytes)
        .map_err(|e| InputError(format!("cannot parse {}: {}", path.display(), e)))
}

/// Write via a temp file and rename so partially written artifacts never
/// appear under the final name.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), InputError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| InputError(format!("cannot create {}: {}", parent.display(), e)))?;
        }
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)
        .map_err(|e| InputError(format!("cannot write {}: {}", tmp.display(), e)))?;
    fs::rename(&tmp, path)
        .map_err(|e| InputError(format!("cannot move {} into place: {}", tmp.display(), e)))?;
    Ok(())
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

/// Resolve a category argument: a built-in name or a document path.
///
/// Built-ins: `isham-2obj`, `isham-2obj-antichain`, `fig1`, `fig1-injective`,
/// `fig2`, `chain-N`.
pub fn load_category(spec: &str, _caps: &Caps) -> Result<FiniteCategory, InputError> {
    match spec {
        "isham-2obj" => return Ok(isham_two_object(false)),
        "isham-2obj-antichain" => return Ok(isham_two_object(true)),
        "fig1" => return Ok(fig_one(ArrowMode::AllMonotone)),
        "fig1-injective" => return Ok(fig_one(ArrowMode::InjectiveMonotone)),
        "fig2" => return Ok(fig_two()),
        _ => {}
    }
    if let Some(n) = spec.strip_prefix("chain-") {
        let n: usize = n
            .parse()
            .map_err(|_| InputError(format!("bad chain length in {:?}", spec)))?;
        return chain_category(n).map_err(|e| InputError(e.to_string()));
    }
    let doc: CategoryDocument = read_json(Path::new(spec))?;
    doc.to_category().map_err(|e| InputError(e.to_string()))
}

/// Resolve a presheaf selector: `set`, `trivial`, or a document path.
pub fn load_presheaf(selector: &str, cat: &FiniteCategory) -> Result<HilbertPresheaf, InputError> {
    match selector {
        "set" => set_presheaf(cat).map_err(|e| InputError(e.to_string())),
        "trivial" => Ok(trivial_presheaf(cat)),
        path => {
            let doc: PresheafDocument = read_json(Path::new(path))?;
            doc.to_presheaf(cat).map_err(|e| InputError(e.to_string()))
        }
    }
}

// ---------------------------------------------------------------------------
// validate

pub fn cmd_validate(
    category: &str,
    presheaf: Option<&str>,
    json_out: Option<&Path>,
    caps: &Caps,
) -> CmdResult {
    let cat = load_category(category, caps)?;
    let report = cat.validate();
    let mut all_ok = report.is_valid();
    println!(
        "category {}: {} objects, {} arrows — {}",
        category,
        cat.num_objects(),
        cat.num_arrows(),
        if report.is_valid() {
            "valid"
        } else {
            "INVALID"
        }
    );
    if !report.is_valid() {
        println!("{}", report.describe(&cat));
    }

    let mut presheaf_json = json!(null);
    if let Some(selector) = presheaf {
        let p = load_presheaf(selector, &cat)?;
        let preport = validate_presheaf(&cat, &p);
        let ok = preport.is_valid();
        all_ok &= ok;
        println!(
            "presheaf {}: total dimension {} — {}",
            selector,
            p.total_dim(),
            if ok { "valid" } else { "INVALID" }
        );
        for a in &preport.identity_violations {
            println!(
                "  kappa(id) is not the identity at object {}",
                cat.object(*a).name
            );
        }
        for (f, g) in &preport.functoriality_violations {
            println!(
                "  kappa({f})·kappa({g}) ≠ kappa({g}∘{f})",
                f = cat.arrow(*f).name,
                g = cat.arrow(*g).name
            );
        }
        presheaf_json = json!({
            "selector": selector,
            "valid": ok,
            "identity_violations": preport.identity_violations.iter()
                .map(|a| cat.object(*a).name.clone()).collect::<Vec<_>>(),
            "functoriality_violations": preport.functoriality_violations.iter()
                .map(|(f, g)| json!([cat.arrow(*f).name, cat.arrow(*g).name]))
                .collect::<Vec<_>>(),
        });
    }

    if let Some(path) = json_out {
        let payload = json!({
            "command": "validate",
            "category": category,
            "category_valid": report.is_valid(),
            "violations": report.violations.iter()
                .map(|v| format!("{:?}", v)).collect::<Vec<_>>(),
            "violations_text": report.describe(&cat),
            "presheaf": presheaf_json,
            "all_valid": all_ok,
        });
        write_atomic(path, &pretty(&payload))?;
    }
    Ok(if all_ok {
        Outcome::Clean
    } else {
        Outcome::LawViolation
    })
}

// ---------------------------------------------------------------------------
// gen

pub struct GenParams {
    pub n: Option<usize>,
    pub injective: bool,
    pub forget_order: bool,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

pub fn cmd_gen(kind: &str, params: &GenParams, caps: &Caps) -> CmdResult {
    let mode = if params.injective {
        ArrowMode::InjectiveMonotone
    } else {
        ArrowMode::AllMonotone
    };
    let cat = match kind {
        "chain" => {
            let n = params.n.unwrap_or(3);
            chain_category(n).map_err(|e| InputError(e.to_string()))?
        }
        "fig1" => fig_one(mode),
        "fig2" => fig_two(),
        "isham-2obj" => isham_two_object(params.forget_order),
        "poset" => {
            let Some(path) = &params.input else {
                return input("gen poset needs --input <posets.json>");
            };
            let docs: PosetsInput = read_json(path)?;
            let posets = docs
                .posets
                .iter()
                .map(|p| p.to_poset())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| InputError(e.to_string()))?;
            poset_category(&posets, mode, caps.map_cap).map_err(|e| InputError(e.to_string()))?
        }
        "topology" => {
            let Some(path) = &params.input else {
                return input("gen topology needs --input <spaces.json>");
            };
            let docs: SpacesInput = read_json(path)?;
            let spaces = docs
                .spaces
                .iter()
                .map(|s| s.to_topology())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| InputError(e.to_string()))?;
            topology_category(&spaces, caps.map_cap).map_err(|e| InputError(e.to_string()))?
        }
        "group" => {
            let Some(path) = &params.input else {
                return input("gen group needs --input <action.json>");
            };
            let doc: GroupActionInput = read_json(path)?;
            let action = doc.to_action().map_err(|e| InputError(e.to_string()))?;
            group_action_category(&action)
        }
        other => return input(format!("unknown generator kind {:?}", other)),
    };
    let doc = CategoryDocument::from_category(&cat);
    let text = pretty(&doc);
    match &params.out {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{}", text),
    }
    Ok(Outcome::Clean)
}

// ---------------------------------------------------------------------------
// rep

pub struct RepParams {
    pub category: String,
    pub presheaf: String,
    pub field: Option<PathBuf>,
    pub delta: Option<String>,
    pub iota: bool,
    pub beta: Option<PathBuf>,
    pub emit: Option<PathBuf>,
    pub check: bool,
    pub json: Option<PathBuf>,
    pub seed: u64,
}

fn select_field(
    params: &RepParams,
    cat: &FiniteCategory,
) -> Result<(ArrowField, String), InputError> {
    let picked = [params.field.is_some(), params.delta.is_some(), params.iota]
        .into_iter()
        .filter(|&b| b)
        .count();
    if picked > 1 {
        return input("choose exactly one of --field, --delta, --iota");
    }
    if let Some(path) = &params.field {
        let doc: FieldDocument = read_json(path)?;
        let field = doc.to_field(cat).map_err(|e| InputError(e.to_string()))?;
        return Ok((field, format!("field file {}", path.display())));
    }
    if let Some(name) = &params.delta {
        let arrow = cat
            .arrow_by_name(name)
            .ok_or_else(|| InputError(format!("unknown arrow {:?}", name)))?;
        return Ok((delta_field(cat, arrow), format!("delta field of {}", name)));
    }
    Ok((identity_field(cat), "identity field".to_string()))
}

pub fn cmd_rep(params: &RepParams, caps: &Caps) -> CmdResult {
    let cat = load_category(&params.category, caps)?;
    let report = cat.validate();
    if !report.is_valid() {
        return input(format!(
            "category does not satisfy the axioms:\n{}",
            report.describe(&cat)
        ));
    }
    let p = load_presheaf(&params.presheaf, &cat)?;
    let preport = validate_presheaf(&cat, &p);
    if !preport.is_valid() {
        return input("presheaf does not satisfy the functoriality laws; run validate for details");
    }
    let (field, field_desc) = select_field(params, &cat)?;
    let beta = match &params.beta {
        Some(path) => {
            let doc: BetaDocument = read_json(path)?;
            Some(doc.to_config(&cat).map_err(|e| InputError(e.to_string()))?)
        }
        None => None,
    };

    let a = a_op(&cat, &p, &field);
    println!(
        "â for {} on {} ({} presheaf, dimension {})",
        field_desc,
        params.category,
        params.presheaf,
        p.total_dim()
    );

    if let Some(dir) = &params.emit {
        let mut emitted = vec![
            ("a.json", a.matrix().clone()),
            ("a_dagger.json", a.adjoint().matrix().clone()),
            ("alpha.json", alpha_op(&cat, &p, &field).matrix().clone()),
            (
                "beta_mom.json",
                beta_mom_op(&cat, &p, &field).matrix().clone(),
            ),
        ];
        if let Some(beta) = &beta {
            emitted.push(("v.json", v_op(&cat, &p, beta).matrix().clone()));
            emitted.push((
                "beta_hat.json",
                beta_hat_op(&cat, &p, beta).matrix().clone(),
            ));
        }
        for (name, matrix) in &emitted {
            let path = dir.join(name);
            write_atomic(&path, &pretty(&MatrixDoc::from_matrix(matrix)))?;
            println!("wrote {}", path.display());
        }
    }

    let mut outcome = Outcome::Clean;
    let mut suites: Vec<SuiteOutcome> = Vec::new();
    if params.check {
        let mut merged = CheckReport::new("single-field representation checks");
        // homomorphism on the field with itself
        let combined = a_op(&cat, &p, &catquant::combine(&cat, &field, &field));
        merged.case(a.mul(&a).approx_eq(&combined, OPERATOR_TOL), || {
            "â(X)â(X) ≠ â(X&X)".to_string()
        });
        // momentum decomposition
        let alpha = alpha_op(&cat, &p, &field);
        let beta_m = beta_mom_op(&cat, &p, &field);
        merged.case(alpha.matrix().is_self_adjoint(OPERATOR_TOL), || {
            "α̂ is not self-adjoint".to_string()
        });
        merged.case(beta_m.matrix().is_self_adjoint(OPERATOR_TOL), || {
            "β̂ is not self-adjoint".to_string()
        });
        let recomposed = alpha.add(&beta_m.scale(C64::new(0.0, 1.0)));
        merged.case(recomposed.approx_eq(&a, OPERATOR_TOL), || {
            "â ≠ α̂ + iβ̂".to_string()
        });
        // exchange relation with the given or seeded betas
        let betas = match &beta {
            Some(b) => vec![b.clone()],
            None => seeded_betas(&cat, 3, params.seed),
        };
        let rho_x = catquant::rho(&cat, &field);
        for b in &betas {
            let lhs = a.mul(&v_op(&cat, &p, b));
            let rhs = v_op(&cat, &p, &b.compose_rho(&rho_x)).mul(&a);
            merged.case(lhs.approx_eq(&rhs, OPERATOR_TOL), || {
                "â(X)V̂(β) ≠ V̂(β∘ρ_X)â(X)".to_string()
            });
        }
        // counting-measure adjoint structure
        for rep in [
            adjoint_formula_check(&cat, &field),
            number_ops_check(&cat, &field),
        ] {
            merged.cases += rep.cases;
            merged.violations.extend(rep.violations);
        }
        println!("{}", merged);
        if !merged.passed() {
            outcome = Outcome::LawViolation;
        }
        suites.push(SuiteOutcome::from_report(&merged, json!(null)));
    }

    if let Some(path) = &params.json {
        let payload = json!({
            "command": "rep",
            "category": params.category,
            "presheaf": params.presheaf,
            "field": field_desc,
            "total_dimension": p.total_dim(),
            "suites": suites,
            "all_passed": outcome == Outcome::Clean,
        });
        write_atomic(path, &pretty(&payload))?;
    }
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// check

pub struct CheckParams {
    pub category: String,
    pub presheaf: String,
    pub suites: Vec<String>,
    pub sample: Option<usize>,
    pub seed: u64,
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub violation_count: usize,
    pub first_counterexample: Option<String>,
    pub details: serde_json::Value,
}

impl SuiteOutcome {
    fn from_report(report: &CheckReport, details: serde_json::Value) -> Self {
        SuiteOutcome {
            name: report.name.clone(),
            cases: report.cases,
            passed: report.passed(),
            violation_count: report.violations.len(),
            first_counterexample: report.first_counterexample().map(String::from),
            details,
        }
    }

    fn print(&self) {
        let status = if self.passed { "pass" } else { "FAIL" };
        match &self.first_counterexample {
            Some(first) if !self.passed => println!(
                "  {:<12} {:>8} cases  {}  ({} violations; first: {})",
                self.name, self.cases, status, self.violation_count, first
            ),
            _ => println!("  {:<12} {:>8} cases  {}", self.name, self.cases, status),
        }
    }
}

const ALL_SUITES: &[&str] = &[
    "category",
    "monoid",
    "presheaf",
    "multiplier",
    "homomorphism",
    "adjoint",
    "momentum",
    "separation",
    "connectedness",
    "commutant",
];

fn seeded_betas(cat: &FiniteCategory, how_many: usize, seed: u64) -> Vec<ConfigFunction> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..how_many)
        .map(|_| {
            ConfigFunction::new(
                (0..cat.num_objects())
                    .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
                    .collect(),
            )
        })
        .collect()
}

/// The field set a suite runs over: the full enumeration when it fits the
/// cap, otherwise (with `--sample`) the identity field, every delta field,
/// and seeded random fields up to the requested size. Delta fields realize
/// every `(arrow, object)` multiplier case, so the sampled multiplier check
/// still covers the cocycle condition completely.
fn suite_fields(
    cat: &FiniteCategory,
    caps: &Caps,
    sample: Option<usize>,
    seed: u64,
) -> Result<(Vec<ArrowField>, bool), InputError> {
    match enumerate_arrow_fields(cat, caps.field_cap) {
        Ok(fields) => Ok((fields, false)),
        Err(refusal) => {
            let Some(n) = sample else {
                return input(format!("{}; pass --sample N to check a subset", refusal));
            };
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            let mut fields = vec![identity_field(cat)];
            seen.insert(fields[0].assignment().iter().map(|a| a.0).collect());
            for f in cat.arrows() {
                let field = delta_field(cat, f);
                if seen.insert(field.assignment().iter().map(|a| a.0).collect()) {
                    fields.push(field);
                }
            }
            let out: Vec<Vec<catquant::ArrowId>> =
                cat.objects().map(|a| cat.out_arrows(a)).collect();
            let mut rng = StdRng::seed_from_u64(seed);
            let mut attempts = 0;
            while fields.len() < n.max(fields.len()) && attempts < 20 * n {
                attempts += 1;
                let assignment: Vec<catquant::ArrowId> = out
                    .iter()
                    .map(|choices| choices[rng.gen_range(0..choices.len())])
                    .collect();
                if seen.insert(assignment.iter().map(|a| a.0).collect()) {
                    fields.push(
                        ArrowField::new(cat, assignment).expect("out-arrows by construction"),
                    );
                }
            }
            Ok((fields, true))
        }
    }
}

pub fn cmd_check(params: &CheckParams, caps: &Caps) -> CmdResult {
    let cat = load_category(&params.category, caps)?;
    // every suite beyond "category" assumes the axioms; refuse to run them
    // on a non-category and report the violations instead
    let axiom_report = cat.validate();
    if !axiom_report.is_valid() {
        println!(
            "check {}: the category axioms fail, skipping dependent suites",
            params.category
        );
        println!("{}", axiom_report.describe(&cat));
        if let Some(path) = &params.json {
            let payload = json!({
                "command": "check",
                "category": params.category,
                "category_valid": false,
                "violations": axiom_report.violations.iter()
                    .map(|v| format!("{:?}", v)).collect::<Vec<_>>(),
                "all_passed": false,
            });
            write_atomic(path, &pretty(&payload))?;
        }
        return Ok(Outcome::LawViolation);
    }
    let p = load_presheaf(&params.presheaf, &cat)?;
    let requested: Vec<String> = if params.suites.is_empty() {
        ALL_SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        for s in &params.suites {
            if !ALL_SUITES.contains(&s.as_str()) {
                return input(format!(
                    "unknown suite {:?}; available: {}",
                    s,
                    ALL_SUITES.join(", ")
                ));
            }
        }
        params.suites.clone()
    };
    let wants = |name: &str| requested.iter().any(|s| s == name);

    let needs_fields = [
        "monoid",
        "multiplier",
        "homomorphism",
        "adjoint",
        "connectedness",
    ]
    .iter()
    .any(|s| wants(s));
    let (fields, sampled) = if needs_fields {
        suite_fields(&cat, caps, params.sample, params.seed)?
    } else {
        (Vec::new(), false)
    };

    println!(
        "check {} ({} presheaf): {} objects, {} arrows, {} arrow fields{}",
        params.category,
        params.presheaf,
        cat.num_objects(),
        cat.num_arrows(),
        field_count(&cat),
        if sampled {
            format!(" (sampled {})", fields.len())
        } else {
            String::new()
        }
    );

    let mut outcomes: Vec<SuiteOutcome> = Vec::new();

    if wants("category") {
        let report = cat.validate();
        let mut check = CheckReport::new("category");
        check.cases = cat.num_arrows() * cat.num_arrows();
        check.violations = report
            .violations
            .iter()
            .map(|v| format!("{:?}", v))
            .collect();
        outcomes.push(SuiteOutcome::from_report(&check, json!(null)));
    }
    if wants("monoid") {
        let mut report = check_monoid_laws(&cat, &fields);
        report.name = "monoid".into();
        for a in cat.objects() {
            let endo = endo_antirep_check(&cat, a);
            report.cases += endo.cases;
            report.violations.extend(endo.violations);
        }
        outcomes.push(SuiteOutcome::from_report(&report, json!(null)));
    }
    if wants("presheaf") {
        let preport = validate_presheaf(&cat, &p);
        let mut check = CheckReport::new("presheaf");
        check.cases = cat.num_arrows() * cat.num_arrows() + cat.num_objects();
        for a in &preport.identity_violations {
            check
                .violations
                .push(format!("kappa(id) ≠ I at {}", cat.object(*a).name));
        }
        for (f, g) in &preport.functoriality_violations {
            check.violations.push(format!(
                "kappa({f})kappa({g}) ≠ kappa({g}∘{f})",
                f = cat.arrow(*f).name,
                g = cat.arrow(*g).name
            ));
        }
        outcomes.push(SuiteOutcome::from_report(&check, json!(null)));
    }
    if wants("multiplier") {
        let mut report = multiplier_check(&cat, &p, &fields);
        report.name = "multiplier".into();
        outcomes.push(SuiteOutcome::from_report(
            &report,
            json!({ "fields": fields.len(), "sampled": sampled }),
        ));
    }
    if wants("homomorphism") {
        let betas = seeded_betas(&cat, 3, params.seed);
        let mut report = cqm_homomorphism_check(&cat, &p, &fields, &betas);
        report.name = "homomorphism".into();
        outcomes.push(SuiteOutcome::from_report(
            &report,
            json!({ "betas": betas.len(), "seed": params.seed }),
        ));
    }
    if wants("adjoint") {
        let mut report = CheckReport::new("adjoint");
        for x in &fields {
            for sub in [adjoint_formula_check(&cat, x), number_ops_check(&cat, x)] {
                report.cases += sub.cases;
                report.violations.extend(sub.violations);
            }
            let a = a_op(&cat, &p, x);
            let alpha = alpha_op(&cat, &p, x);
            let beta_m = beta_mom_op(&cat, &p, x);
            report.case(alpha.matrix().is_self_adjoint(OPERATOR_TOL), || {
                format!("α̂ not self-adjoint for X = [{}]", x.describe(&cat))
            });
            report.case(beta_m.matrix().is_self_adjoint(OPERATOR_TOL), || {
                format!("β̂ not self-adjoint for X = [{}]", x.describe(&cat))
            });
            let recomposed = alpha.add(&beta_m.scale(C64::new(0.0, 1.0)));
            report.case(recomposed.approx_eq(&a, OPERATOR_TOL), || {
                format!("â ≠ α̂ + iβ̂ for X = [{}]", x.describe(&cat))
            });
        }
        outcomes.push(SuiteOutcome::from_report(&report, json!(null)));
    }
    if wants("momentum") {
        let mut report = CheckReport::new("momentum");
        let mut unsquared_fails = false;
        let mut checked = Vec::new();
        for f in cat.arrows() {
            if cat.dom(f) == cat.cod(f) {
                continue;
            }
            checked.push(cat.arrow(f).name.clone());
            let x = delta_field(&cat, f);
            let alpha = alpha_op(&cat, &p, &x);
            let beta_m = beta_mom_op(&cat, &p, &x);
            let lhs = alpha.mul(&alpha).sub(&alpha);
            report.case(lhs.approx_eq(&beta_m.mul(&beta_m), OPERATOR_TOL), || {
                format!("α̂² − α̂ ≠ β̂² for f = {}", cat.arrow(f).name)
            });
            if !lhs.approx_eq(&beta_m, OPERATOR_TOL) {
                unsquared_fails = true;
            }
        }
        let details = json!({
            "identity": "alpha^2 - alpha = beta_mom^2 for arrows with dom ≠ cod",
            "unsquared_variant_fails": unsquared_fails,
            "arrows_checked": checked,
        });
        if unsquared_fails {
            println!(
                "  note: the unsquared variant α̂² − α̂ = β̂ fails on this category \
                 (recorded in the momentum suite details)"
            );
        }
        outcomes.push(SuiteOutcome::from_report(&report, details));
    }
    if wants("separation") {
        let sep = separation_report(&cat, &p);
        let mut check = CheckReport::new("separation");
        for &(f, g, separated) in &sep.pairs {
            check.case(separated, || {
                format!(
                    "parallel arrows {} and {} get the same operator",
                    cat.arrow(f).name,
                    cat.arrow(g).name
                )
            });
        }
        // separation restricted to endo pairs is exactly faithfulness of the
        // fibre representation of each Hom(A, A)
        let fibre_faithful: Vec<serde_json::Value> = cat
            .objects()
            .map(|a| {
                let faithful = sep
                    .pairs
                    .iter()
                    .filter(|&&(f, _, _)| cat.dom(f) == a && cat.cod(f) == a)
                    .all(|&(_, _, separated)| separated);
                json!({ "object": cat.object(a).name, "hom_monoid_faithful": faithful })
            })
            .collect();
        let details = json!({
            "arrow_separating": sep.is_separating(),
            "fibre_faithfulness": fibre_faithful,
            "pairs": sep.pairs.iter().map(|&(f, g, separated)| json!({
                "f": cat.arrow(f).name,
                "g": cat.arrow(g).name,
                "separated": separated,
            })).collect::<Vec<_>>(),
        });
        outcomes.push(SuiteOutcome::from_report(&check, details));
    }
    if wants("connectedness") {
        let components = connected_components(&cat);
        let mut report = block_structure_check(&cat, &p, &fields);
        report.name = "connectedness".into();
        let details = json!({
            "component_count": components.len(),
            "components": components.iter().map(|comp| {
                comp.iter().map(|a| cat.object(*a).name.clone()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        });
        outcomes.push(SuiteOutcome::from_report(&report, details));
    }
    if wants("commutant") {
        let dim = commutant_dimension(&cat, &p, true);
        let mut check = CheckReport::new("commutant");
        check.cases = 1;
        let details = json!({
            "dimension": dim,
            "include_adjoints": true,
            "irreducible": dim == 1,
        });
        println!("  commutant dimension (with adjoints): {}", dim);
        outcomes.push(SuiteOutcome::from_report(&check, details));
    }

    for outcome in &outcomes {
        outcome.print();
    }
    let all_passed = outcomes.iter().all(|o| o.passed);
    println!("overall: {}", if all_passed { "pass" } else { "FAIL" });

    if let Some(path) = &params.json {
        let payload = json!({
            "command": "check",
            "category": params.category,
            "presheaf": params.presheaf,
            "seed": params.seed,
            "sampled": sampled,
            "field_count": field_count(&cat).to_string(),
            "fields_used": fields.len(),
            "suites": outcomes,
            "all_passed": all_passed,
        });
        write_atomic(path, &pretty(&payload))?;
    }
    Ok(if all_passed {
        Outcome::Clean
    } else {
        Outcome::LawViolation
    })
}

// ---------------------------------------------------------------------------
// example bundles

pub fn cmd_example(name: &str, n: Option<usize>, out: Option<&Path>, caps: &Caps) -> CmdResult {
    let default_dir = PathBuf::from(format!("catquant-{}", name));
    let dir = out.map(Path::to_path_buf).unwrap_or(default_dir);
    let mut emitted: Vec<(String, String)> = Vec::new(); // (relative name, contents)
    let command = match name {
        "isham-2obj" => {
            let cat = isham_two_object(false);
            let p = set_presheaf(&cat).map_err(|e| InputError(e.to_string()))?;
            for arrow in ["f1", "f2", "g", "r", "s"] {
                let field = delta_field(&cat, cat.arrow_by_name(arrow).unwrap());
                let m = a_op(&cat, &p, &field);
                emitted.push((
                    format!("a_{}.json", arrow),
                    pretty(&MatrixDoc::from_matrix(m.matrix())),
                ));
            }
            let beta = ConfigFunction::new(vec![1.0, 2.0]);
            let bh = beta_hat_op(&cat, &p, &beta);
            emitted.push((
                "beta_hat.json".into(),
                pretty(&MatrixDoc::from_matrix(bh.matrix())),
            ));
            // the order-forgotten category adds the transposition p
            let anti = isham_two_object(true);
            let pa = set_presheaf(&anti).map_err(|e| InputError(e.to_string()))?;
            let field = delta_field(&anti, anti.arrow_by_name("p").unwrap());
            let m = a_op(&anti, &pa, &field);
            emitted.push((
                "a_p.json".into(),
                pretty(&MatrixDoc::from_matrix(m.matrix())),
            ));
            emitted.push((
                "category.json".into(),
                pretty(&CategoryDocument::from_category(&cat)),
            ));
            "example isham-2obj".to_string()
        }
        "chain" => {
            let n = n.unwrap_or(6);
            let cat = chain_category(n).map_err(|e| InputError(e.to_string()))?;
            let p = trivial_presheaf(&cat);
            let assignment = cat
                .objects()
                .map(|a| {
                    if a.0 + 1 < n {
                        cat.arrow_by_name(&format!("{}to{}", a.0, a.0 + 1)).unwrap()
                    } else {
                        cat.identity(a).unwrap()
                    }
                })
                .collect();
            let shift = ArrowField::new(&cat, assignment).expect("shift field is well-formed");
            let a = a_op(&cat, &p, &shift);
            emitted.push(("a.json".into(), pretty(&MatrixDoc::from_matrix(a.matrix()))));
            emitted.push((
                "a_dagger.json".into(),
                pretty(&MatrixDoc::from_matrix(a.adjoint().matrix())),
            ));
            emitted.push((
                "alpha.json".into(),
                pretty(&MatrixDoc::from_matrix(alpha_op(&cat, &p, &shift).matrix())),
            ));
            emitted.push((
                "beta_mom.json".into(),
                pretty(&MatrixDoc::from_matrix(
                    beta_mom_op(&cat, &p, &shift).matrix(),
                )),
            ));
            emitted.push((
                "category.json".into(),
                pretty(&CategoryDocument::from_category(&cat)),
            ));
            format!("example chain --n {}", n)
        }
        "fig2" => {
            let cat = fig_two();
            let p = trivial_presheaf(&cat);
            let arrow = |n: &str| cat.arrow_by_name(n).unwrap();
            let x = ArrowField::new(
                &cat,
                vec![
                    arrow("x1"),
                    arrow("x2"),
                    arrow("x3"),
                    arrow("y"),
                    arrow("id_C"),
                ],
            )
            .unwrap();
            let a = a_op(&cat, &p, &x);
            let ad = a.adjoint();
            let ket = |name: &str| Section::ket(&p, cat.object_by_name(name).unwrap());
            let zero = Section::zero(&p);
            let sum_a = ket("A1").add(&ket("A2")).add(&ket("A3"));
            let three_b = ket("B").scale(C64::new(3.0, 0.0));
            let relations: Vec<(&str, Section, Section)> = vec![
                ("a_dagger|A1> = |B>", ad.apply(&ket("A1")), ket("B")),
                ("a_dagger|A2> = |B>", ad.apply(&ket("A2")), ket("B")),
                ("a_dagger|A3> = |B>", ad.apply(&ket("A3")), ket("B")),
                ("a_dagger|B> = |C>", ad.apply(&ket("B")), ket("C")),
                ("a_dagger|C> = |C>", ad.apply(&ket("C")), ket("C")),
                ("a|A1> = 0", a.apply(&ket("A1")), zero.clone()),
                ("a|A2> = 0", a.apply(&ket("A2")), zero.clone()),
                ("a|A3> = 0", a.apply(&ket("A3")), zero.clone()),
                ("a|B> = |A1>+|A2>+|A3>", a.apply(&ket("B")), sum_a),
                (
                    "a|C> = |B>+|C>",
                    a.apply(&ket("C")),
                    ket("B").add(&ket("C")),
                ),
                (
                    "a_dagger(|A1>-|A2>) = 0",
                    ad.apply(&ket("A1").sub(&ket("A2"))),
                    zero.clone(),
                ),
                (
                    "a_dagger a|B> = 3|B>",
                    ad.apply(&a.apply(&ket("B"))),
                    three_b,
                ),
            ];
            let mut all_hold = true;
            let rows: Vec<serde_json::Value> = relations
                .iter()
                .map(|(label, got, want)| {
                    let holds = got.max_abs_diff(want) == 0.0;
                    all_hold &= holds;
                    json!({ "relation": label, "holds": holds })
                })
                .collect();
            emitted.push((
                "ket_relations.json".into(),
                pretty(&json!({ "relations": rows, "all_hold": all_hold })),
            ));
            emitted.push(("a.json".into(), pretty(&MatrixDoc::from_matrix(a.matrix()))));
            emitted.push((
                "a_dagger.json".into(),
                pretty(&MatrixDoc::from_matrix(ad.matrix())),
            ));
            emitted.push((
                "category.json".into(),
                pretty(&CategoryDocument::from_category(&cat)),
            ));
            if !all_hold {
                return input("internal: a ket relation failed in the fig2 bundle");
            }
            "example fig2".to_string()
        }
        "fig1" => {
            let cat = fig_one(ArrowMode::AllMonotone);
            emitted.push((
                "category.json".into(),
                pretty(&CategoryDocument::from_category(&cat)),
            ));
            let hom_counts: Vec<Vec<usize>> = cat
                .objects()
                .map(|a| cat.objects().map(|b| cat.hom_set(a, b).len()).collect())
                .collect();
            emitted.push((
                "hom_counts.json".into(),
                pretty(&json!({
                    "objects": cat.objects().map(|a| cat.object(a).name.clone()).collect::<Vec<_>>(),
                    "hom_counts": hom_counts,
                    "valid": cat.validate().is_valid(),
                })),
            ));
            "example fig1".to_string()
        }
        other => return input(format!("unknown example {:?}", other)),
    };
    let _ = caps;

    let mut entries = Vec::new();
    for (name, contents) in &emitted {
        write_atomic(&dir.join(name), contents)?;
        entries.push(DigestEntry {
            name: name.clone(),
            sha256: sha256_hex(contents.as_bytes()),
        });
        println!("wrote {}", dir.join(name).display());
    }
    let manifest = RunManifest {
        command,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        inputs: Vec::new(),
        emitted: entries,
    };
    write_atomic(&dir.join("manifest.json"), &pretty(&manifest))?;
    println!("wrote {}", dir.join("manifest.json").display());
    Ok(Outcome::Clean)
}
