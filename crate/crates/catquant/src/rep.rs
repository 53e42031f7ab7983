//! Operator representations of the category quantisation monoid.
//!
//! The category quantisation monoid is the semidirect product of the
//! arrow-field monoid with the real-valued functions on objects, with
//! product `(X1, β1)(X2, β2) = (X1 & X2, β1 + β2 ∘ ρ_{X1})`. Given a
//! Hilbert presheaf it is represented on the total space `⊕_A K(A)` by
//!
//! ```text
//! (â(X) ψ)(A)  = κ(X(A)) ψ(ρ_X A)        one presheaf block per object row
//! (V̂(β) ψ)(A) = e^{iβ(A)} ψ(A)           block-diagonal unitary
//! ```
//!
//! so `â(X1) â(X2) = â(X1 & X2)`, `V̂(β1) V̂(β2) = V̂(β1 + β2)` and
//! `â(X) V̂(β) = V̂(β ∘ ρ_X) â(X)`, and the multipliers `m(X, A) = κ(X(A))`
//! satisfy the cocycle condition `m(X1, A) m(X2, ρ_{X1} A) = m(X1 & X2, A)`.
//!
//! Adjoints are taken with respect to the counting inner product.
//! `â(X)` is generally not unitary; its self-adjoint parts
//! `α̂ = (â + â†)/2` and `β̂ = (â − â†)/2i` play the role of averaged
//! position and momentum. The diagnostics at the end of the module probe
//! whether a representation can be irreducible: arrow separation,
//! connectedness of the object graph, and the commutant dimension of the
//! generated *-algebra.

use std::collections::HashMap;

use crate::arrow_field::{combine, delta_field, rho, ArrowField};
use crate::category::{ArrowId, FiniteCategory, ObjectId};
use crate::linalg::{self, CMat, C64, ZERO};
use crate::presheaf::{trivial_presheaf, HilbertPresheaf, Section};
use crate::report::CheckReport;

/// Tolerance for floating-point operator comparisons.
pub const OPERATOR_TOL: f64 = 1e-12;
/// Pivot tolerance for the commutant rank computation.
pub const COMMUTANT_TOL: f64 = 1e-10;

/// A real-valued configuration function on objects.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFunction {
    values: Vec<f64>,
}

impl ConfigFunction {
    pub fn new(values: Vec<f64>) -> Self {
        ConfigFunction { values }
    }

    pub fn zero(cat: &FiniteCategory) -> Self {
        ConfigFunction {
            values: vec![0.0; cat.num_objects()],
        }
    }

    /// Indicator of a single object.
    pub fn indicator(cat: &FiniteCategory, a: ObjectId) -> Self {
        let mut values = vec![0.0; cat.num_objects()];
        values[a.0] = 1.0;
        ConfigFunction { values }
    }

    pub fn value(&self, a: ObjectId) -> f64 {
        self.values[a.0]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn add(&self, other: &ConfigFunction) -> ConfigFunction {
        ConfigFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `β ∘ ρ`: precompose with an object map.
    pub fn compose_rho(&self, rho: &[ObjectId]) -> ConfigFunction {
        ConfigFunction {
            values: rho.iter().map(|&a| self.values[a.0]).collect(),
        }
    }
}

/// An element `(X, β)` of the category quantisation monoid.
#[derive(Debug, Clone, PartialEq)]
pub struct CqmElement {
    pub field: ArrowField,
    pub beta: ConfigFunction,
}

impl CqmElement {
    /// The semidirect product `(X1, β1)(X2, β2) = (X1 & X2, β1 + β2 ∘ ρ_{X1})`.
    pub fn product(cat: &FiniteCategory, e1: &CqmElement, e2: &CqmElement) -> CqmElement {
        let rho1 = rho(cat, &e1.field);
        CqmElement {
            field: combine(cat, &e1.field, &e2.field),
            beta: e1.beta.add(&e2.beta.compose_rho(&rho1)),
        }
    }
}

/// A square matrix on the total space `⊕_A K(A)`, carrying the block
/// offsets so sub-blocks can be addressed by object pair.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    mat: CMat,
    dims: Vec<usize>,
    offsets: Vec<usize>,
}

impl OperatorMatrix {
    fn zeros(p: &HilbertPresheaf) -> Self {
        let n = p.total_dim();
        OperatorMatrix {
            mat: CMat::zeros(n, n),
            dims: p.dims().to_vec(),
            offsets: p.offsets(),
        }
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// The sub-block with row object `a` and column object `b`.
    pub fn block(&self, a: ObjectId, b: ObjectId) -> CMat {
        let mut out = CMat::zeros(self.dims[a.0], self.dims[b.0]);
        for i in 0..self.dims[a.0] {
            for j in 0..self.dims[b.0] {
                out.set(
                    i,
                    j,
                    self.mat.get(self.offsets[a.0] + i, self.offsets[b.0] + j),
                );
            }
        }
        out
    }

    fn set_block(&mut self, a: ObjectId, b: ObjectId, m: &CMat) {
        assert_eq!((m.rows(), m.cols()), (self.dims[a.0], self.dims[b.0]));
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                self.mat
                    .set(self.offsets[a.0] + i, self.offsets[b.0] + j, m.get(i, j));
            }
        }
    }

    pub fn mul(&self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix {
            mat: self.mat.mul(&rhs.mat),
            dims: self.dims.clone(),
            offsets: self.offsets.clone(),
        }
    }

    pub fn add(&self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix {
            mat: self.mat.add(&rhs.mat),
            dims: self.dims.clone(),
            offsets: self.offsets.clone(),
        }
    }

    pub fn sub(&self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix {
            mat: self.mat.sub(&rhs.mat),
            dims: self.dims.clone(),
            offsets: self.offsets.clone(),
        }
    }

    pub fn scale(&self, s: C64) -> OperatorMatrix {
        OperatorMatrix {
            mat: self.mat.scale(s),
            dims: self.dims.clone(),
            offsets: self.offsets.clone(),
        }
    }

    /// Conjugate transpose with respect to the counting inner product.
    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix {
            mat: self.mat.dagger(),
            dims: self.dims.clone(),
            offsets: self.offsets.clone(),
        }
    }

    pub fn apply(&self, psi: &Section) -> Section {
        let flat = self.mat.apply(&psi.flatten());
        let mut blocks = Vec::with_capacity(self.dims.len());
        let mut at = 0;
        for &d in &self.dims {
            blocks.push(flat[at..at + d].to_vec());
            at += d;
        }
        Section::from_raw_blocks(blocks)
    }

    pub fn approx_eq(&self, rhs: &OperatorMatrix, tol: f64) -> bool {
        self.mat.approx_eq(&rhs.mat, tol)
    }

    pub fn eq_exact(&self, rhs: &OperatorMatrix) -> bool {
        self.mat.eq_exact(&rhs.mat)
    }

    pub fn identity(p: &HilbertPresheaf) -> Self {
        OperatorMatrix {
            mat: CMat::identity(p.total_dim()),
            dims: p.dims().to_vec(),
            offsets: p.offsets(),
        }
    }
}

/// The arrow-field operator: block `(A, ρ_X A)` is `κ(X(A))`, all other
/// blocks zero, so applying it gives `(â(X) ψ)(A) = κ(X(A)) ψ(ρ_X A)`.
pub fn a_op(cat: &FiniteCategory, p: &HilbertPresheaf, x: &ArrowField) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(p);
    for a in cat.objects() {
        let f = x.arrow_at(a);
        op.set_block(a, cat.cod(f), p.kappa(f));
    }
    op
}

/// The exponentiated configuration operator: block-diagonal
/// `e^{iβ(A)} I_{dim A}`; unitary.
pub fn v_op(cat: &FiniteCategory, p: &HilbertPresheaf, beta: &ConfigFunction) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(p);
    for a in cat.objects() {
        let phase = C64::from_polar(1.0, beta.value(a));
        op.set_block(a, a, &CMat::identity(p.dim(a)).scale(phase));
    }
    op
}

/// The unexponentiated configuration operator: block-diagonal
/// `β(A) I_{dim A}`; self-adjoint.
pub fn beta_hat_op(
    cat: &FiniteCategory,
    p: &HilbertPresheaf,
    beta: &ConfigFunction,
) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(p);
    for a in cat.objects() {
        let scale = C64::new(beta.value(a), 0.0);
        op.set_block(a, a, &CMat::identity(p.dim(a)).scale(scale));
    }
    op
}

/// The representation of a CQM element, `V̂(β) · â(X)`. This operator order
/// is the one that turns the semidirect product law into a homomorphism,
/// given the exchange relation `â(X) V̂(β) = V̂(β ∘ ρ_X) â(X)`.
pub fn cqm_rep(cat: &FiniteCategory, p: &HilbertPresheaf, e: &CqmElement) -> OperatorMatrix {
    v_op(cat, p, &e.beta).mul(&a_op(cat, p, &e.field))
}

/// Averaged-position part `α̂(X) = (â(X) + â(X)†)/2`.
pub fn alpha_op(cat: &FiniteCategory, p: &HilbertPresheaf, x: &ArrowField) -> OperatorMatrix {
    let a = a_op(cat, p, x);
    a.add(&a.adjoint()).scale(C64::new(0.5, 0.0))
}

/// Momentum part `β̂(X) = (â(X) − â(X)†)/2i`.
pub fn beta_mom_op(cat: &FiniteCategory, p: &HilbertPresheaf, x: &ArrowField) -> OperatorMatrix {
    let a = a_op(cat, p, x);
    a.sub(&a.adjoint()).scale(C64::new(0.0, -0.5))
}

/// On the trivial presheaf, check the two ket formulas directly from the
/// object action, for every object `A`:
///
/// ```text
/// â(X)† â(X) |A⟩ = |ρ_X⁻¹{A}| |A⟩
/// â(X) â(X)† |A⟩ = Σ_{C ∈ ρ_X⁻¹{ρ_X A}} |C⟩
/// ```
pub fn number_ops_check(cat: &FiniteCategory, x: &ArrowField) -> CheckReport {
    let p = trivial_presheaf(cat);
    let mut report = CheckReport::new("number-operator ket formulas (trivial presheaf)");
    let a = a_op(cat, &p, x);
    let ad = a.adjoint();
    let rho_map = rho(cat, x);
    for b in cat.objects() {
        let ket = Section::ket(&p, b);
        let lhs = ad.mul(&a).apply(&ket);
        let preimage = cat.objects().filter(|c| rho_map[c.0] == b).count();
        let rhs = ket.scale(C64::new(preimage as f64, 0.0));
        report.case(lhs.max_abs_diff(&rhs) == 0.0, || {
            format!("â†â|{0}⟩ ≠ |ρ⁻¹({0})|·|{0}⟩", cat.object(b).name)
        });
        let lhs = a.mul(&ad).apply(&ket);
        let mut rhs = Section::zero(&p);
        for c in cat.objects() {
            if rho_map[c.0] == rho_map[b.0] {
                rhs = rhs.add(&Section::ket(&p, c));
            }
        }
        report.case(lhs.max_abs_diff(&rhs) == 0.0, || {
            format!("ââ†|{0}⟩ ≠ Σ_(ρC = ρ{0}) |C⟩", cat.object(b).name)
        });
    }
    report
}

/// On the trivial presheaf, check that the matrix adjoint agrees with the
/// ket formula `â(X)† |B⟩ = |ρ_X B⟩` built directly.
pub fn adjoint_formula_check(cat: &FiniteCategory, x: &ArrowField) -> CheckReport {
    let p = trivial_presheaf(cat);
    let mut report = CheckReport::new("adjoint ket formula (trivial presheaf)");
    let ad = a_op(cat, &p, x).adjoint();
    let rho_map = rho(cat, x);
    for b in cat.objects() {
        let lhs = ad.apply(&Section::ket(&p, b));
        let rhs = Section::ket(&p, rho_map[b.0]);
        report.case(lhs.max_abs_diff(&rhs) == 0.0, || {
            format!(
                "â†|{}⟩ ≠ |{}⟩",
                cat.object(b).name,
                cat.object(rho_map[b.0]).name
            )
        });
    }
    report
}

/// Per-pair outcome of the arrow-separation test.
#[derive(Debug, Clone)]
pub struct SeparationReport {
    /// `(f, g, separated)` for every unordered parallel pair.
    pub pairs: Vec<(ArrowId, ArrowId, bool)>,
}

impl SeparationReport {
    pub fn is_separating(&self) -> bool {
        self.pairs.iter().all(|&(_, _, sep)| sep)
    }

    pub fn unseparated(&self) -> Vec<(ArrowId, ArrowId)> {
        self.pairs
            .iter()
            .filter(|&&(_, _, sep)| !sep)
            .map(|&(f, g, _)| (f, g))
            .collect()
    }
}

/// For every parallel pair `f ≠ g`, compare `â(X_f)` with `â(X_g)`.
/// A representation separates arrows when all pairs get distinct operators.
pub fn separation_report(cat: &FiniteCategory, p: &HilbertPresheaf) -> SeparationReport {
    let pairs = cat
        .parallel_pairs()
        .into_iter()
        .map(|(f, g)| {
            let of = a_op(cat, p, &delta_field(cat, f));
            let og = a_op(cat, p, &delta_field(cat, g));
            (f, g, !of.approx_eq(&og, OPERATOR_TOL))
        })
        .collect();
    SeparationReport { pairs }
}

/// Connected components of the undirected arrow-existence graph on objects.
/// A representation of a disconnected category decomposes blockwise, so
/// connectedness is necessary for irreducibility.
pub fn connected_components(cat: &FiniteCategory) -> Vec<Vec<ObjectId>> {
    let n = cat.num_objects();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for f in cat.arrows() {
        let (a, b) = (cat.dom(f).0, cat.cod(f).0);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut groups: HashMap<usize, Vec<ObjectId>> = HashMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(ObjectId(i));
    }
    let mut components: Vec<Vec<ObjectId>> = groups.into_values().collect();
    components.sort_by_key(|c| c[0]);
    components
}

/// Check that no operator links distinct connected components: for every
/// given field, every block of `â(X)` between objects in different
/// components is zero.
pub fn block_structure_check(
    cat: &FiniteCategory,
    p: &HilbertPresheaf,
    fields: &[ArrowField],
) -> CheckReport {
    let mut component_of = vec![0usize; cat.num_objects()];
    for (ci, comp) in connected_components(cat).iter().enumerate() {
        for &a in comp {
            component_of[a.0] = ci;
        }
    }
    let mut report = CheckReport::new("operators stay within connected components");
    for x in fields {
        let op = a_op(cat, p, x);
        for a in cat.objects() {
            for b in cat.objects() {
                if component_of[a.0] == component_of[b.0] {
                    continue;
                }
                report.case(op.block(a, b).is_zero(0.0), || {
                    format!(
                        "â(X) has a nonzero block ({}, {}) across components for X = [{}]",
                        cat.object(a).name,
                        cat.object(b).name,
                        x.describe(cat)
                    )
                });
            }
        }
    }
    report
}

/// Verify the multiplier cocycle condition with `m(X, A) = κ(X(A))`:
/// `m(X1, A) · m(X2, ρ_{X1} A) = m(X1 & X2, A)` for all field pairs and
/// objects. Since the multiplier depends on a field only through its value
/// at the object in question, covering all delta fields covers all of
/// `AF(Q)`; pass an exhaustive field list when it is enumerable.
pub fn multiplier_check(
    cat: &FiniteCategory,
    p: &HilbertPresheaf,
    fields: &[ArrowField],
) -> CheckReport {
    let mut report = CheckReport::new("multiplier cocycle condition");
    for x1 in fields {
        let rho1 = rho(cat, x1);
        for x2 in fields {
            let x12 = combine(cat, x1, x2);
            for a in cat.objects() {
                let lhs = p.kappa(x1.arrow_at(a)).mul(p.kappa(x2.arrow_at(rho1[a.0])));
                let rhs = p.kappa(x12.arrow_at(a));
                report.case(lhs.approx_eq(rhs, OPERATOR_TOL), || {
                    format!(
                        "m(X1,A)m(X2,ρA) ≠ m(X1&X2,A) at A = {}, X1 = [{}], X2 = [{}]",
                        cat.object(a).name,
                        x1.describe(cat),
                        x2.describe(cat)
                    )
                });
            }
        }
    }
    report
}

/// Verify the representation relations over the given fields and betas:
///
/// * `â(X1) â(X2) = â(X1 & X2)` for all pairs (exact when the presheaf is
///   0/1-valued, else to tolerance);
/// * `V̂(β1) V̂(β2) = V̂(β1 + β2)`;
/// * `â(X) V̂(β) = V̂(β ∘ ρ_X) â(X)`;
/// * the product law: `rep(e1) · rep(e2) = rep(e1 · e2)` with
///   `rep(X, β) = V̂(β) â(X)`.
pub fn cqm_homomorphism_check(
    cat: &FiniteCategory,
    p: &HilbertPresheaf,
    fields: &[ArrowField],
    betas: &[ConfigFunction],
) -> CheckReport {
    let mut report = CheckReport::new("category quantisation monoid representation");
    let exact = p.is_zero_one();
    let a_tol = if exact { 0.0 } else { OPERATOR_TOL };
    let a_ops: Vec<OperatorMatrix> = fields.iter().map(|x| a_op(cat, p, x)).collect();
    let v_ops: Vec<OperatorMatrix> = betas.iter().map(|b| v_op(cat, p, b)).collect();
    // reps[bi][fi] = V̂(β_bi) · â(X_fi)
    let reps: Vec<Vec<OperatorMatrix>> = v_ops
        .iter()
        .map(|v| a_ops.iter().map(|a| v.mul(a)).collect())
        .collect();

    for (bi, b1) in betas.iter().enumerate() {
        for (bj, b2) in betas.iter().enumerate() {
            let lhs = v_ops[bi].mul(&v_ops[bj]);
            let rhs = v_op(cat, p, &b1.add(b2));
            report.case(lhs.approx_eq(&rhs, OPERATOR_TOL), || {
                "V̂(β1)V̂(β2) ≠ V̂(β1+β2)".to_string()
            });
        }
    }
    for (i, x) in fields.iter().enumerate() {
        let rho_x = rho(cat, x);
        for (bi, beta) in betas.iter().enumerate() {
            let lhs = a_ops[i].mul(&v_ops[bi]);
            let rhs = v_op(cat, p, &beta.compose_rho(&rho_x)).mul(&a_ops[i]);
            report.case(lhs.approx_eq(&rhs, OPERATOR_TOL), || {
                format!("â(X)V̂(β) ≠ V̂(β∘ρ_X)â(X) for X = [{}]", x.describe(cat))
            });
        }
    }
    for (i, x1) in fields.iter().enumerate() {
        let rho1 = rho(cat, x1);
        for (j, x2) in fields.iter().enumerate() {
            let a_combined = a_op(cat, p, &combine(cat, x1, x2));
            report.case(
                a_ops[i].mul(&a_ops[j]).approx_eq(&a_combined, a_tol),
                || {
                    format!(
                        "â(X1)â(X2) ≠ â(X1&X2) for X1 = [{}], X2 = [{}]",
                        x1.describe(cat),
                        x2.describe(cat)
                    )
                },
            );
            for (bi, b1) in betas.iter().enumerate() {
                for (bj, b2) in betas.iter().enumerate() {
                    let lhs = reps[bi][i].mul(&reps[bj][j]);
                    let product_beta = b1.add(&b2.compose_rho(&rho1));
                    let rhs = v_op(cat, p, &product_beta).mul(&a_combined);
                    report.case(lhs.approx_eq(&rhs, OPERATOR_TOL), || {
                        format!(
                            "rep(e1)rep(e2) ≠ rep(e1·e2) for X1 = [{}], X2 = [{}]",
                            x1.describe(cat),
                            x2.describe(cat)
                        )
                    });
                }
            }
        }
    }
    report
}

/// The default generator set for irreducibility diagnostics: `â(X_f)` for
/// every arrow `f` and the indicator configuration operators `β̂(δ_A)` for
/// every object, plus adjoints when requested.
pub fn commutant_generators(
    cat: &FiniteCategory,
    p: &HilbertPresheaf,
    include_adjoints: bool,
) -> Vec<OperatorMatrix> {
    let mut gens: Vec<OperatorMatrix> = cat
        .arrows()
        .map(|f| a_op(cat, p, &delta_field(cat, f)))
        .collect();
    for a in cat.objects() {
        gens.push(beta_hat_op(cat, p, &ConfigFunction::indicator(cat, a)));
    }
    if include_adjoints {
        let adjoints: Vec<OperatorMatrix> = gens.iter().map(|g| g.adjoint()).collect();
        gens.extend(adjoints);
    }
    gens
}

/// Dimension of the space of matrices commuting with every generator,
/// computed by solving `[M, P] = 0` as a linear system in the entries of
/// `M`. Dimension 1 with adjoints included certifies that the generated
/// *-algebra is irreducible (its commutant is the scalars).
pub fn commutant_dimension(
    cat: &FiniteCategory,
    p: &HilbertPresheaf,
    include_adjoints: bool,
) -> usize {
    let gens = commutant_generators(cat, p, include_adjoints);
    let d = p.total_dim();
    let unknowns = d * d;
    let mut rows: Vec<Vec<C64>> = Vec::with_capacity(gens.len() * unknowns);
    for gen in &gens {
        let g = gen.matrix();
        // (MP - PM)[r][c] = Σ_j M[r][j] P[j][c] − Σ_i P[r][i] M[i][c]
        for r in 0..d {
            for c in 0..d {
                let mut row = vec![ZERO; unknowns];
                for j in 0..d {
                    row[r * d + j] += g.get(j, c);
                    row[j * d + c] -= g.get(r, j);
                }
                rows.push(row);
            }
        }
    }
    unknowns - linalg::rank(rows, COMMUTANT_TOL)
}
