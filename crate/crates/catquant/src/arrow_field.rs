//! Arrow fields and their monoid.
//!
//! An arrow field assigns to every object an arrow leaving it. Unlike
//! individual arrows, arrow fields always combine:
//!
//! ```text
//! (X1 & X2)(A) = X2(cod X1(A)) ∘ X1(A)
//! ```
//!
//! follow `X1` out of `A`, then follow `X2` from wherever it lands. The
//! combination is associative with the identity-assigning field as unit, so
//! the arrow fields of a finite category form a finite monoid. Each field
//! moves objects by `rho(A) = cod X(A)`, a right action: `rho_{X2} ∘ rho_{X1}
//! = rho_{X1 & X2}`.
//!
//! Everything here is stored densely and checked exhaustively;
//! [`enumerate_arrow_fields`] refuses categories whose field count exceeds
//! the cap rather than sampling silently.

use crate::category::{ArrowId, FiniteCategory, ObjectId};
use crate::report::CheckReport;

/// Default bound on how many arrow fields an exhaustive check will enumerate.
pub const DEFAULT_FIELD_CAP: usize = 100_000;

/// A total assignment of an out-arrow to every object.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrowField {
    assignment: Vec<ArrowId>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum FieldError {
    #[error("assignment has length {got}, expected one arrow per object ({expected})")]
    AssignmentLength { got: usize, expected: usize },
    #[error("assigned arrow at object {object} has domain {dom}, not the object itself")]
    WrongDomain { object: usize, dom: usize },
    #[error("category has {count} arrow fields, over the cap of {cap}")]
    CountExceedsCap { count: u128, cap: usize },
    #[error("object {0} has no identity arrow; validate the category first")]
    MissingIdentity(usize),
}

impl ArrowField {
    pub fn new(cat: &FiniteCategory, assignment: Vec<ArrowId>) -> Result<Self, FieldError> {
        if assignment.len() != cat.num_objects() {
            return Err(FieldError::AssignmentLength {
                got: assignment.len(),
                expected: cat.num_objects(),
            });
        }
        for (i, &f) in assignment.iter().enumerate() {
            if cat.dom(f) != ObjectId(i) {
                return Err(FieldError::WrongDomain {
                    object: i,
                    dom: cat.dom(f).0,
                });
            }
        }
        Ok(ArrowField { assignment })
    }

    pub fn arrow_at(&self, a: ObjectId) -> ArrowId {
        self.assignment[a.0]
    }

    pub fn assignment(&self) -> &[ArrowId] {
        &self.assignment
    }

    /// Human-readable listing `A ↦ f, B ↦ g, ...`.
    pub fn describe(&self, cat: &FiniteCategory) -> String {
        self.assignment
            .iter()
            .enumerate()
            .map(|(i, &f)| format!("{} ↦ {}", cat.object(ObjectId(i)).name, cat.arrow(f).name))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// The unit field `ι`, assigning each object its identity arrow.
///
/// Requires a category whose identities all exist (a validated one).
pub fn identity_field(cat: &FiniteCategory) -> ArrowField {
    let assignment = cat
        .objects()
        .map(|a| cat.identity(a).expect("identity_field needs identities"))
        .collect();
    ArrowField { assignment }
}

/// The field concentrated on one arrow: `X_f(dom f) = f`, identity elsewhere.
pub fn delta_field(cat: &FiniteCategory, f: ArrowId) -> ArrowField {
    let mut field = identity_field(cat);
    field.assignment[cat.dom(f).0] = f;
    field
}

/// The combination `X1 & X2`, always defined.
///
/// Panics if the composition table lacks a needed entry, which cannot happen
/// on a validated category.
pub fn combine(cat: &FiniteCategory, x1: &ArrowField, x2: &ArrowField) -> ArrowField {
    let assignment = cat
        .objects()
        .map(|a| {
            let first = x1.arrow_at(a);
            let second = x2.arrow_at(cat.cod(first));
            cat.compose(second, first)
                .expect("composition table is total on composables")
        })
        .collect();
    ArrowField { assignment }
}

/// The object action of a field: `rho[A] = cod X(A)`.
pub fn rho(cat: &FiniteCategory, x: &ArrowField) -> Vec<ObjectId> {
    cat.objects().map(|a| cat.cod(x.arrow_at(a))).collect()
}

/// Number of arrow fields, the product of out-degrees over all objects.
pub fn field_count(cat: &FiniteCategory) -> u128 {
    cat.objects()
        .map(|a| cat.out_arrows(a).len() as u128)
        .product()
}

/// All arrow fields in lexicographic order of their assignments, where each
/// position ranges over the object's out-arrows in arrow-index order.
pub fn enumerate_arrow_fields(
    cat: &FiniteCategory,
    cap: usize,
) -> Result<Vec<ArrowField>, FieldError> {
    let count = field_count(cat);
    if count > cap as u128 {
        return Err(FieldError::CountExceedsCap { count, cap });
    }
    let out: Vec<Vec<ArrowId>> = cat.objects().map(|a| cat.out_arrows(a)).collect();
    if out.iter().any(|o| o.is_empty()) {
        return Ok(Vec::new());
    }
    let n = out.len();
    let mut fields = Vec::with_capacity(count as usize);
    let mut digits = vec![0usize; n];
    loop {
        fields.push(ArrowField {
            assignment: (0..n).map(|i| out[i][digits[i]]).collect(),
        });
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(fields);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < out[pos].len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Exhaustively verify the monoid structure over the given fields:
/// associativity of `&` on all triples, the two unit laws, and the
/// right-action law `rho_{X2} ∘ rho_{X1} = rho_{X1 & X2}` on all pairs.
///
/// When the list is the complete enumeration in canonical order, the triple
/// check runs over a precomputed Cayley table instead of recombining fields,
/// which keeps categories with hundreds of fields interactive.
pub fn check_monoid_laws(cat: &FiniteCategory, fields: &[ArrowField]) -> CheckReport {
    if let Some(report) = check_monoid_laws_complete(cat, fields) {
        return report;
    }
    let mut report = CheckReport::new("arrow-field monoid laws");
    let iota = identity_field(cat);
    for x in fields {
        report.case(&combine(cat, &iota, x) == x, || {
            format!("ι & X ≠ X at X = [{}]", x.describe(cat))
        });
        report.case(&combine(cat, x, &iota) == x, || {
            format!("X & ι ≠ X at X = [{}]", x.describe(cat))
        });
    }
    for x1 in fields {
        for x2 in fields {
            let x12 = combine(cat, x1, x2);
            let rho1 = rho(cat, x1);
            let rho2 = rho(cat, x2);
            let composed: Vec<ObjectId> = rho1.iter().map(|&a| rho2[a.0]).collect();
            report.case(composed == rho(cat, &x12), || {
                format!(
                    "ρ_X2 ∘ ρ_X1 ≠ ρ_(X1&X2) at X1 = [{}], X2 = [{}]",
                    x1.describe(cat),
                    x2.describe(cat)
                )
            });
            for x3 in fields {
                let left = combine(cat, x1, &combine(cat, x2, x3));
                let right = combine(cat, &x12, x3);
                report.case(left == right, || {
                    let bad = left
                        .assignment
                        .iter()
                        .zip(&right.assignment)
                        .position(|(a, b)| a != b)
                        .unwrap();
                    format!(
                        "associativity fails at object {} for X1 = [{}], X2 = [{}], X3 = [{}]",
                        cat.object(ObjectId(bad)).name,
                        x1.describe(cat),
                        x2.describe(cat),
                        x3.describe(cat)
                    )
                });
            }
        }
    }
    report
}

// Cayley-table cap: the table takes n² u32 entries.
const COMPLETE_TABLE_LIMIT: usize = 4096;

/// Fast path for the complete field monoid: index fields by their
/// mixed-radix position, tabulate all pairwise combinations once, and run
/// the unit, right-action and associativity checks by table lookup. Returns
/// `None` when the list is not the full enumeration in canonical order.
fn check_monoid_laws_complete(cat: &FiniteCategory, fields: &[ArrowField]) -> Option<CheckReport> {
    let n = fields.len();
    if n == 0 || n > COMPLETE_TABLE_LIMIT || (n as u128) != field_count(cat) {
        return None;
    }
    let out: Vec<Vec<ArrowId>> = cat.objects().map(|a| cat.out_arrows(a)).collect();
    let digit: Vec<std::collections::HashMap<ArrowId, usize>> = out
        .iter()
        .map(|arrows| arrows.iter().enumerate().map(|(d, &f)| (f, d)).collect())
        .collect();
    let mut strides = vec![1usize; out.len()];
    for i in (0..out.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * out[i + 1].len();
    }
    let index_of = |x: &ArrowField| -> usize {
        x.assignment
            .iter()
            .enumerate()
            .map(|(i, f)| digit[i][f] * strides[i])
            .sum()
    };
    if fields.iter().enumerate().any(|(i, x)| index_of(x) != i) {
        return None; // not in canonical order; use the general path
    }

    let mut report = CheckReport::new("arrow-field monoid laws");
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = index_of(&combine(cat, &fields[i], &fields[j])) as u32;
        }
    }
    let iota = index_of(&identity_field(cat));
    for (i, x) in fields.iter().enumerate() {
        report.case(table[iota * n + i] as usize == i, || {
            format!("ι & X ≠ X at X = [{}]", x.describe(cat))
        });
        report.case(table[i * n + iota] as usize == i, || {
            format!("X & ι ≠ X at X = [{}]", x.describe(cat))
        });
    }
    let rhos: Vec<Vec<ObjectId>> = fields.iter().map(|x| rho(cat, x)).collect();
    for i in 0..n {
        for j in 0..n {
            let combined = &rhos[table[i * n + j] as usize];
            let agrees = (0..rhos[i].len()).all(|a| rhos[j][rhos[i][a].0] == combined[a]);
            report.case(agrees, || {
                format!(
                    "ρ_X2 ∘ ρ_X1 ≠ ρ_(X1&X2) at X1 = [{}], X2 = [{}]",
                    fields[i].describe(cat),
                    fields[j].describe(cat)
                )
            });
        }
    }
    let mut assoc_failures = Vec::new();
    let mut assoc_cases = 0usize;
    for i in 0..n {
        for j in 0..n {
            let ij = table[i * n + j] as usize;
            for k in 0..n {
                assoc_cases += 1;
                let jk = table[j * n + k] as usize;
                if table[ij * n + k] != table[i * n + jk] {
                    assoc_failures.push((i, j, k));
                }
            }
        }
    }
    report.cases += assoc_cases;
    for (i, j, k) in assoc_failures {
        report.violations.push(format!(
            "associativity fails for X1 = [{}], X2 = [{}], X3 = [{}]",
            fields[i].describe(cat),
            fields[j].describe(cat),
            fields[k].describe(cat)
        ));
    }
    Some(report)
}

/// Verify `X_f & X_g = X_{g ∘ f}` over the endomorphism monoid of `a`:
/// delta fields anti-represent `Hom(a, a)` inside the arrow-field monoid.
pub fn endo_antirep_check(cat: &FiniteCategory, a: ObjectId) -> CheckReport {
    let mut report = CheckReport::new(format!(
        "delta-field anti-representation of Hom({0}, {0})",
        cat.object(a).name
    ));
    let endos = cat.hom_set(a, a);
    for &f in &endos {
        for &g in &endos {
            let gf = cat
                .compose(g, f)
                .expect("endomorphisms compose in a valid category");
            let combined = combine(cat, &delta_field(cat, f), &delta_field(cat, g));
            report.case(combined == delta_field(cat, gf), || {
                format!(
                    "X_{f} & X_{g} ≠ X_{gf} for f = {f}, g = {g}",
                    f = cat.arrow(f).name,
                    g = cat.arrow(g).name,
                    gf = cat.arrow(gf).name
                )
            });
        }
    }
    report
}
