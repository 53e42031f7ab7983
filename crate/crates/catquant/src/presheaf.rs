//! Presheaves of finite-dimensional complex Hilbert spaces over a category.
//!
//! A presheaf assigns a fibre dimension to every object and a linear map
//! `kappa(f) : K(cod f) -> K(dom f)` to every arrow, contravariantly:
//! `kappa(f) · kappa(g) = kappa(g ∘ f)` whenever `cod f = dom g`, and
//! `kappa(id) = I`. State vectors are sections: one complex block per
//! object, living in the direct sum of the fibres with the counting-measure
//! inner product.
//!
//! For a category of sets the canonical presheaf pulls functions back:
//! `K(A)` is the function space on the carrier of `A` and
//! `(kappa(f) v)(a) = v(f(a))`, i.e. a 0/1 matrix with exactly one 1 per
//! row. [`set_presheaf`] builds it from the element payloads.

use crate::category::{ArrowId, FiniteCategory, ObjectId};
use crate::linalg::{CMat, C64, ONE, ZERO};

pub const PRESHEAF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, thiserror::Error)]
pub enum PresheafError {
    #[error("dimension list has length {got}, expected one per object ({expected})")]
    DimListLength { got: usize, expected: usize },
    #[error("kappa list has length {got}, expected one matrix per arrow ({expected})")]
    KappaListLength { got: usize, expected: usize },
    #[error("fibre dimension at object {object} must be at least 1")]
    ZeroDimension { object: usize },
    #[error(
        "kappa({arrow}) has shape {got:?}, expected {expected:?} \
         (dim(dom) rows by dim(cod) columns)"
    )]
    KappaShape {
        arrow: usize,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("object {object} has no element payload, so the pull-back presheaf is undefined")]
    MissingElements { object: usize },
    #[error("arrow {arrow} has no element map, so the pull-back presheaf is undefined")]
    MissingMap { arrow: usize },
    #[error("section block at object {object} has length {got}, expected {expected}")]
    SectionShape {
        object: usize,
        got: usize,
        expected: usize,
    },
}

/// Fibre dimensions plus one matrix per arrow.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertPresheaf {
    dims: Vec<usize>,
    kappa: Vec<CMat>,
}

impl HilbertPresheaf {
    /// Build from explicit data, checking shapes against the category:
    /// `kappa(f)` must be `dim(dom f) × dim(cod f)`. Functoriality is *not*
    /// checked here; that is [`validate_presheaf`]'s job.
    pub fn new(
        cat: &FiniteCategory,
        dims: Vec<usize>,
        kappa: Vec<CMat>,
    ) -> Result<Self, PresheafError> {
        if dims.len() != cat.num_objects() {
            return Err(PresheafError::DimListLength {
                got: dims.len(),
                expected: cat.num_objects(),
            });
        }
        if let Some(object) = dims.iter().position(|&d| d == 0) {
            return Err(PresheafError::ZeroDimension { object });
        }
        if kappa.len() != cat.num_arrows() {
            return Err(PresheafError::KappaListLength {
                got: kappa.len(),
                expected: cat.num_arrows(),
            });
        }
        for (i, m) in kappa.iter().enumerate() {
            let f = ArrowId(i);
            let expected = (dims[cat.dom(f).0], dims[cat.cod(f).0]);
            if (m.rows(), m.cols()) != expected {
                return Err(PresheafError::KappaShape {
                    arrow: i,
                    got: (m.rows(), m.cols()),
                    expected,
                });
            }
        }
        Ok(HilbertPresheaf { dims, kappa })
    }

    pub fn dim(&self, a: ObjectId) -> usize {
        self.dims[a.0]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Start offset of each object's block in the total space, in canonical
    /// object order.
    pub fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            offsets.push(acc);
            acc += d;
        }
        offsets
    }

    pub fn kappa(&self, f: ArrowId) -> &CMat {
        &self.kappa[f.0]
    }

    /// Replace one structure map, keeping the shape constraint. Used to load
    /// file-defined presheaves and to corrupt fixtures in tests.
    pub fn set_kappa(
        &mut self,
        cat: &FiniteCategory,
        f: ArrowId,
        m: CMat,
    ) -> Result<(), PresheafError> {
        let expected = (self.dims[cat.dom(f).0], self.dims[cat.cod(f).0]);
        if (m.rows(), m.cols()) != expected {
            return Err(PresheafError::KappaShape {
                arrow: f.0,
                got: (m.rows(), m.cols()),
                expected,
            });
        }
        self.kappa[f.0] = m;
        Ok(())
    }

    /// All structure maps 0/1-valued (true for pull-back presheaves).
    pub fn is_zero_one(&self) -> bool {
        self.kappa.iter().all(|m| m.is_zero_one())
    }
}

/// The pull-back presheaf of a category of sets: `dim(A) = |A|` and
/// `kappa(f)[a][b] = 1` iff `f(a) = b`.
pub fn set_presheaf(cat: &FiniteCategory) -> Result<HilbertPresheaf, PresheafError> {
    let mut dims = Vec::with_capacity(cat.num_objects());
    for a in cat.objects() {
        let elems = cat
            .object(a)
            .elements()
            .ok_or(PresheafError::MissingElements { object: a.0 })?;
        dims.push(elems.len());
    }
    let mut kappa = Vec::with_capacity(cat.num_arrows());
    for f in cat.arrows() {
        let map = cat
            .arrow(f)
            .map
            .as_deref()
            .ok_or(PresheafError::MissingMap { arrow: f.0 })?;
        let mut m = CMat::zeros(dims[cat.dom(f).0], dims[cat.cod(f).0]);
        for (a, &fa) in map.iter().enumerate() {
            m.set(a, fa, ONE);
        }
        kappa.push(m);
    }
    HilbertPresheaf::new(cat, dims, kappa)
}

/// The one-dimensional presheaf: every fibre is C, every map the scalar 1.
/// Representations built on it see only the object action of a field, not
/// the arrows themselves.
pub fn trivial_presheaf(cat: &FiniteCategory) -> HilbertPresheaf {
    let dims = vec![1; cat.num_objects()];
    let kappa = (0..cat.num_arrows()).map(|_| CMat::identity(1)).collect();
    HilbertPresheaf::new(cat, dims, kappa).expect("trivial shapes always match")
}

/// Result of checking the presheaf laws: `kappa(identity) = I` per object
/// and `kappa(f) · kappa(g) = kappa(g ∘ f)` per composable pair, to
/// [`PRESHEAF_TOL`] (exact for integer matrices).
#[derive(Debug, Clone, Default)]
pub struct PresheafReport {
    pub identity_violations: Vec<ObjectId>,
    pub functoriality_violations: Vec<(ArrowId, ArrowId)>,
}

impl PresheafReport {
    pub fn is_valid(&self) -> bool {
        self.identity_violations.is_empty() && self.functoriality_violations.is_empty()
    }
}

pub fn validate_presheaf(cat: &FiniteCategory, p: &HilbertPresheaf) -> PresheafReport {
    let mut report = PresheafReport::default();
    for a in cat.objects() {
        if let Some(id) = cat.identity(a) {
            if !p
                .kappa(id)
                .approx_eq(&CMat::identity(p.dim(a)), PRESHEAF_TOL)
            {
                report.identity_violations.push(a);
            }
        }
    }
    for f in cat.arrows() {
        for g in cat.arrows() {
            if cat.cod(f) != cat.dom(g) {
                continue;
            }
            let Some(gf) = cat.compose(g, f) else {
                continue; // reported by category validation
            };
            let lhs = p.kappa(f).mul(p.kappa(g));
            if !lhs.approx_eq(p.kappa(gf), PRESHEAF_TOL) {
                report.functoriality_violations.push((f, g));
            }
        }
    }
    report
}

/// A state vector: one complex block per object, of the fibre dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    blocks: Vec<Vec<C64>>,
}

impl Section {
    pub fn zero(p: &HilbertPresheaf) -> Self {
        Section {
            blocks: p.dims().iter().map(|&d| vec![ZERO; d]).collect(),
        }
    }

    pub fn from_blocks(p: &HilbertPresheaf, blocks: Vec<Vec<C64>>) -> Result<Self, PresheafError> {
        if blocks.len() != p.dims().len() {
            return Err(PresheafError::DimListLength {
                got: blocks.len(),
                expected: p.dims().len(),
            });
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.len() != p.dims()[i] {
                return Err(PresheafError::SectionShape {
                    object: i,
                    got: b.len(),
                    expected: p.dims()[i],
                });
            }
        }
        Ok(Section { blocks })
    }

    /// Internal constructor for already-shaped block data (operator results).
    pub(crate) fn from_raw_blocks(blocks: Vec<Vec<C64>>) -> Self {
        Section { blocks }
    }

    /// The basis section supported at `a` with a single 1 in slot `k`.
    pub fn basis(p: &HilbertPresheaf, a: ObjectId, k: usize) -> Self {
        let mut s = Section::zero(p);
        s.blocks[a.0][k] = ONE;
        s
    }

    /// The ket `|A⟩` of a one-dimensional fibre.
    pub fn ket(p: &HilbertPresheaf, a: ObjectId) -> Self {
        assert_eq!(p.dim(a), 1, "ket() expects a one-dimensional fibre");
        Section::basis(p, a, 0)
    }

    pub fn block(&self, a: ObjectId) -> &[C64] {
        &self.blocks[a.0]
    }

    pub fn block_mut(&mut self, a: ObjectId) -> &mut [C64] {
        &mut self.blocks[a.0]
    }

    pub fn flatten(&self) -> Vec<C64> {
        self.blocks.iter().flatten().copied().collect()
    }

    pub fn from_flat(p: &HilbertPresheaf, v: &[C64]) -> Result<Self, PresheafError> {
        if v.len() != p.total_dim() {
            return Err(PresheafError::SectionShape {
                object: 0,
                got: v.len(),
                expected: p.total_dim(),
            });
        }
        let mut blocks = Vec::with_capacity(p.dims().len());
        let mut at = 0;
        for &d in p.dims() {
            blocks.push(v[at..at + d].to_vec());
            at += d;
        }
        Ok(Section { blocks })
    }

    pub fn add(&self, other: &Section) -> Section {
        Section {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Section) -> Section {
        Section {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Section {
        Section {
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|x| x * s).collect())
                .collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Section) -> f64 {
        self.blocks
            .iter()
            .flatten()
            .zip(other.blocks.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// The counting-measure inner product `Σ_A ⟨ψ(A), φ(A)⟩`, conjugate-linear
/// in the first argument.
pub fn inner_product(
    p: &HilbertPresheaf,
    psi: &Section,
    phi: &Section,
) -> Result<C64, PresheafError> {
    for (i, &d) in p.dims().iter().enumerate() {
        for (which, s) in [psi, phi].into_iter().enumerate() {
            if s.blocks[i].len() != d {
                let _ = which;
                return Err(PresheafError::SectionShape {
                    object: i,
                    got: s.blocks[i].len(),
                    expected: d,
                });
            }
        }
    }
    Ok(psi
        .blocks
        .iter()
        .flatten()
        .zip(phi.blocks.iter().flatten())
        .map(|(a, b)| a.conj() * b)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fig_two, isham_two_object};

    #[test]
    fn trivial_presheaf_dimensions() {
        let cat = isham_two_object(false);
        assert_eq!(trivial_presheaf(&cat).total_dim(), 2);
        assert_eq!(trivial_presheaf(&fig_two()).total_dim(), 5);
        assert!(validate_presheaf(&cat, &trivial_presheaf(&cat)).is_valid());
    }

    #[test]
    fn set_presheaf_requires_payloads() {
        let cat = crate::generators::chain_category(2).unwrap();
        assert!(matches!(
            set_presheaf(&cat),
            Err(PresheafError::MissingElements { .. })
        ));
    }

    #[test]
    fn shape_mismatch_is_a_constructor_error() {
        let cat = isham_two_object(false);
        let p = set_presheaf(&cat).unwrap();
        let mut p2 = p.clone();
        let g = cat.arrow_by_name("g").unwrap();
        // kappa(g) must be 2x1; a 1x2 matrix is a shape error, not a law violation
        assert!(matches!(
            p2.set_kappa(&cat, g, CMat::zeros(1, 2)),
            Err(PresheafError::KappaShape { .. })
        ));
    }

    #[test]
    fn disjoint_blocks_are_orthogonal() {
        let cat = isham_two_object(false);
        let p = set_presheaf(&cat).unwrap();
        let at_a = Section::basis(&p, ObjectId(0), 0);
        let at_b = Section::basis(&p, ObjectId(1), 0);
        assert_eq!(inner_product(&p, &at_a, &at_b).unwrap(), ZERO);
    }
}
