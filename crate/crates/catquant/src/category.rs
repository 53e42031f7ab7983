//! Finite categories: objects, arrows, identities, and an explicit
//! composition table.
//!
//! A [`FiniteCategory`] stores finitely many objects and arrows together
//! with a partial composition table indexed by arrow pairs. Nothing is
//! assumed about the table at construction beyond index validity;
//! [`FiniteCategory::validate`] checks the actual category axioms by
//! exhaustive enumeration and reports every violation it finds, so a
//! corrupted input can be diagnosed rather than rejected at the first
//! problem.
//!
//! The composition convention is `compose(g, f) = g ∘ f`, defined exactly
//! when `cod(f) = dom(g)`, acting "first f, then g".

use std::collections::HashMap;
use std::fmt;

use crate::structures::{FinitePoset, FiniteTopology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The set-with-structure an object may carry. Categories of structured
/// sets keep their carriers here so that element-level data (and the
/// pull-back presheaf built from it) stays available.
#[derive(Debug, Clone, PartialEq)]
pub enum ObjectPayload {
    Set { elements: Vec<String> },
    Poset(FinitePoset),
    Topology(FiniteTopology),
}

impl ObjectPayload {
    pub fn elements(&self) -> &[String] {
        match self {
            ObjectPayload::Set { elements } => elements,
            ObjectPayload::Poset(p) => &p.elements,
            ObjectPayload::Topology(t) => &t.points,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ObjectRec {
    pub name: String,
    pub payload: Option<ObjectPayload>,
}

impl ObjectRec {
    pub fn abstract_object(name: impl Into<String>) -> Self {
        ObjectRec {
            name: name.into(),
            payload: None,
        }
    }

    pub fn elements(&self) -> Option<&[String]> {
        self.payload.as_ref().map(|p| p.elements())
    }
}

#[derive(Debug, Clone)]
pub struct ArrowRec {
    pub name: String,
    pub dom: ObjectId,
    pub cod: ObjectId,
    /// Element-level map for set-categories: `map[i]` is the index (into the
    /// codomain's element list) of the image of the domain's `i`-th element.
    pub map: Option<Vec<usize>>,
}

/// Composition-table entries `((g, f), g∘f)`.
pub type CompositeEntries = Vec<((ArrowId, ArrowId), ArrowId)>;

/// Raw pieces of a category, used to build one and to rebuild tweaked
/// variants (tests corrupt tables this way).
#[derive(Debug, Clone, Default)]
pub struct CategoryParts {
    pub objects: Vec<ObjectRec>,
    pub arrows: Vec<ArrowRec>,
    pub identities: Vec<Option<ArrowId>>,
    pub composites: CompositeEntries,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum CategoryStructureError {
    #[error("arrow {arrow} references object index {index} out of range")]
    ObjectIndexOutOfRange { arrow: usize, index: usize },
    #[error("composite entry references arrow index {0} out of range")]
    ArrowIndexOutOfRange(usize),
    #[error("identity list has length {got}, expected one entry per object ({expected})")]
    IdentityListLength { got: usize, expected: usize },
    #[error("duplicate composite entry for (g={g}, f={f})")]
    DuplicateComposite { g: usize, f: usize },
    #[error("element map on arrow {arrow} has length {got}, expected {expected}")]
    ElementMapLength {
        arrow: usize,
        got: usize,
        expected: usize,
    },
    #[error("element map on arrow {arrow} hits index {image} outside the codomain")]
    ElementMapImage { arrow: usize, image: usize },
    #[error("arrow {arrow} carries an element map but object {object} has no elements")]
    ElementMapWithoutElements { arrow: usize, object: usize },
}

/// One failed category axiom, with the witnessing data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingIdentity {
        object: ObjectId,
    },
    IdentityEndpoints {
        object: ObjectId,
        arrow: ArrowId,
    },
    /// `cod(f) = dom(g)` but the table has no entry for `g ∘ f`.
    MissingComposite {
        g: ArrowId,
        f: ArrowId,
    },
    /// The table defines `g ∘ f` although `cod(f) != dom(g)`.
    SpuriousComposite {
        g: ArrowId,
        f: ArrowId,
    },
    /// `g ∘ f` exists but has the wrong domain or codomain.
    CompositeEndpoints {
        g: ArrowId,
        f: ArrowId,
        gf: ArrowId,
    },
    LeftIdentity {
        f: ArrowId,
        got: ArrowId,
    },
    RightIdentity {
        f: ArrowId,
        got: ArrowId,
    },
    /// `h ∘ (g ∘ f) != (h ∘ g) ∘ f` on a composable triple.
    Associativity {
        h: ArrowId,
        g: ArrowId,
        f: ArrowId,
        left: ArrowId,
        right: ArrowId,
    },
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, cat: &FiniteCategory) -> String {
        if self.is_valid() {
            return "all category axioms hold".to_string();
        }
        let name = |a: ArrowId| cat.arrow(a).name.clone();
        self.violations
            .iter()
            .map(|v| match v {
                Violation::MissingIdentity { object } => {
                    format!("object {} has no identity arrow", cat.object(*object).name)
                }
                Violation::IdentityEndpoints { object, arrow } => format!(
                    "identity of {} is {}, whose endpoints differ",
                    cat.object(*object).name,
                    name(*arrow)
                ),
                Violation::MissingComposite { g, f } => {
                    format!("{} ∘ {} is composable but undefined", name(*g), name(*f))
                }
                Violation::SpuriousComposite { g, f } => format!(
                    "{} ∘ {} is defined although the endpoints do not match",
                    name(*g),
                    name(*f)
                ),
                Violation::CompositeEndpoints { g, f, gf } => format!(
                    "{} ∘ {} = {} has the wrong endpoints",
                    name(*g),
                    name(*f),
                    name(*gf)
                ),
                Violation::LeftIdentity { f, got } => {
                    format!(
                        "id ∘ {} = {} differs from {}",
                        name(*f),
                        name(*got),
                        name(*f)
                    )
                }
                Violation::RightIdentity { f, got } => {
                    format!(
                        "{} ∘ id = {} differs from {}",
                        name(*f),
                        name(*got),
                        name(*f)
                    )
                }
                Violation::Associativity {
                    h,
                    g,
                    f,
                    left,
                    right,
                } => format!(
                    "{h} ∘ ({g} ∘ {f}) = {l} but ({h} ∘ {g}) ∘ {f} = {r}",
                    h = name(*h),
                    g = name(*g),
                    f = name(*f),
                    l = name(*left),
                    r = name(*right)
                ),
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// A finite category with an explicit composition table.
#[derive(Debug, Clone)]
pub struct FiniteCategory {
    objects: Vec<ObjectRec>,
    arrows: Vec<ArrowRec>,
    identities: Vec<Option<ArrowId>>,
    table: Vec<Option<ArrowId>>, // table[g * arrows.len() + f]
}

impl FiniteCategory {
    /// Build from parts, checking structural well-formedness only (index
    /// ranges and element-map shapes). Axioms are checked by [`validate`],
    /// so an axiom-violating table can still be constructed and diagnosed.
    ///
    /// [`validate`]: FiniteCategory::validate
    pub fn from_parts(parts: CategoryParts) -> Result<Self, CategoryStructureError> {
        let CategoryParts {
            objects,
            arrows,
            identities,
            composites,
        } = parts;
        let n_obj = objects.len();
        let n_arr = arrows.len();
        for (i, a) in arrows.iter().enumerate() {
            for end in [a.dom, a.cod] {
                if end.0 >= n_obj {
                    return Err(CategoryStructureError::ObjectIndexOutOfRange {
                        arrow: i,
                        index: end.0,
                    });
                }
            }
            if let Some(map) = &a.map {
                let dom_elems = objects[a.dom.0].elements().ok_or(
                    CategoryStructureError::ElementMapWithoutElements {
                        arrow: i,
                        object: a.dom.0,
                    },
                )?;
                let cod_elems = objects[a.cod.0].elements().ok_or(
                    CategoryStructureError::ElementMapWithoutElements {
                        arrow: i,
                        object: a.cod.0,
                    },
                )?;
                if map.len() != dom_elems.len() {
                    return Err(CategoryStructureError::ElementMapLength {
                        arrow: i,
                        got: map.len(),
                        expected: dom_elems.len(),
                    });
                }
                if let Some(&img) = map.iter().find(|&&img| img >= cod_elems.len()) {
                    return Err(CategoryStructureError::ElementMapImage {
                        arrow: i,
                        image: img,
                    });
                }
            }
        }
        if identities.len() != n_obj {
            return Err(CategoryStructureError::IdentityListLength {
                got: identities.len(),
                expected: n_obj,
            });
        }
        if let Some(id) = identities.iter().flatten().find(|id| id.0 >= n_arr) {
            return Err(CategoryStructureError::ArrowIndexOutOfRange(id.0));
        }
        let mut table = vec![None; n_arr * n_arr];
        for ((g, f), gf) in composites {
            for a in [g, f, gf] {
                if a.0 >= n_arr {
                    return Err(CategoryStructureError::ArrowIndexOutOfRange(a.0));
                }
            }
            let slot = &mut table[g.0 * n_arr + f.0];
            if slot.is_some() {
                return Err(CategoryStructureError::DuplicateComposite { g: g.0, f: f.0 });
            }
            *slot = Some(gf);
        }
        Ok(FiniteCategory {
            objects,
            arrows,
            identities,
            table,
        })
    }

    pub fn to_parts(&self) -> CategoryParts {
        let n = self.arrows.len();
        let composites = (0..n)
            .flat_map(|g| (0..n).map(move |f| (g, f)))
            .filter_map(|(g, f)| self.table[g * n + f].map(|gf| ((ArrowId(g), ArrowId(f)), gf)))
            .collect();
        CategoryParts {
            objects: self.objects.clone(),
            arrows: self.arrows.clone(),
            identities: self.identities.clone(),
            composites,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn object(&self, a: ObjectId) -> &ObjectRec {
        &self.objects[a.0]
    }

    pub fn arrow(&self, f: ArrowId) -> &ArrowRec {
        &self.arrows[f.0]
    }

    pub fn dom(&self, f: ArrowId) -> ObjectId {
        self.arrows[f.0].dom
    }

    pub fn cod(&self, f: ArrowId) -> ObjectId {
        self.arrows[f.0].cod
    }

    pub fn identity(&self, a: ObjectId) -> Option<ArrowId> {
        self.identities[a.0]
    }

    /// `g ∘ f`, if the table defines it.
    pub fn compose(&self, g: ArrowId, f: ArrowId) -> Option<ArrowId> {
        self.table[g.0 * self.arrows.len() + f.0]
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjectId> {
        self.objects
            .iter()
            .position(|o| o.name == name)
            .map(ObjectId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    pub fn rename_object(&mut self, a: ObjectId, name: impl Into<String>) {
        self.objects[a.0].name = name.into();
    }

    pub fn rename_arrow(&mut self, f: ArrowId, name: impl Into<String>) {
        self.arrows[f.0].name = name.into();
    }

    /// All arrows from `a` to `b`, in arrow-index order.
    pub fn hom_set(&self, a: ObjectId, b: ObjectId) -> Vec<ArrowId> {
        self.arrows()
            .filter(|&f| self.dom(f) == a && self.cod(f) == b)
            .collect()
    }

    /// All arrows with domain `a`, in arrow-index order.
    pub fn out_arrows(&self, a: ObjectId) -> Vec<ArrowId> {
        self.arrows().filter(|&f| self.dom(f) == a).collect()
    }

    /// The multiplication table of the endomorphism monoid `Hom(a, a)`.
    pub fn endo_monoid(&self, a: ObjectId) -> MonoidTable {
        let arrows = self.hom_set(a, a);
        let products = arrows
            .iter()
            .map(|&g| arrows.iter().map(|&f| self.compose(g, f)).collect())
            .collect();
        MonoidTable { arrows, products }
    }

    /// All unordered pairs of distinct parallel arrows (same domain and
    /// codomain), in index order.
    pub fn parallel_pairs(&self) -> Vec<(ArrowId, ArrowId)> {
        let n = self.arrows.len();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let (f, g) = (ArrowId(i), ArrowId(j));
                if self.dom(f) == self.dom(g) && self.cod(f) == self.cod(g) {
                    pairs.push((f, g));
                }
            }
        }
        pairs
    }

    /// Check every category axiom by exhaustive enumeration and report all
    /// violations found: identity existence and endpoint laws, totality and
    /// endpoint correctness of composition on composable pairs, absence of
    /// spurious entries, and associativity over all composable triples.
    ///
    /// Associativity is only compared where both sides evaluate; a missing
    /// intermediate composite is already reported as `MissingComposite` and
    /// is not double-counted here.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for a in self.objects() {
            match self.identity(a) {
                None => violations.push(Violation::MissingIdentity { object: a }),
                Some(id) => {
                    if self.dom(id) != a || self.cod(id) != a {
                        violations.push(Violation::IdentityEndpoints {
                            object: a,
                            arrow: id,
                        });
                    }
                }
            }
        }
        for g in self.arrows() {
            for f in self.arrows() {
                let composable = self.cod(f) == self.dom(g);
                match self.compose(g, f) {
                    None if composable => {
                        violations.push(Violation::MissingComposite { g, f });
                    }
                    Some(_) if !composable => {
                        violations.push(Violation::SpuriousComposite { g, f });
                    }
                    Some(gf)
                        if composable
                            && (self.dom(gf) != self.dom(f) || self.cod(gf) != self.cod(g)) =>
                    {
                        violations.push(Violation::CompositeEndpoints { g, f, gf });
                    }
                    _ => {}
                }
            }
        }
        for f in self.arrows() {
            if let Some(id) = self.identity(self.cod(f)) {
                if let Some(got) = self.compose(id, f) {
                    if got != f {
                        violations.push(Violation::LeftIdentity { f, got });
                    }
                }
            }
            if let Some(id) = self.identity(self.dom(f)) {
                if let Some(got) = self.compose(f, id) {
                    if got != f {
                        violations.push(Violation::RightIdentity { f, got });
                    }
                }
            }
        }
        for f in self.arrows() {
            for g in self.arrows() {
                if self.cod(f) != self.dom(g) {
                    continue;
                }
                for h in self.arrows() {
                    if self.cod(g) != self.dom(h) {
                        continue;
                    }
                    let left = self.compose(g, f).and_then(|gf| self.compose(h, gf));
                    let right = self.compose(h, g).and_then(|hg| self.compose(hg, f));
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            violations.push(Violation::Associativity {
                                h,
                                g,
                                f,
                                left: l,
                                right: r,
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}

/// Multiplication table of an endomorphism set `Hom(a, a)`.
///
/// `products[i][j]` is `arrows[i] ∘ arrows[j]` (first `arrows[j]`), `None`
/// where the underlying table has no entry.
#[derive(Debug, Clone)]
pub struct MonoidTable {
    pub arrows: Vec<ArrowId>,
    pub products: Vec<Vec<Option<ArrowId>>>,
}

impl MonoidTable {
    /// Closed: every product is defined and lands back in the table's arrows.
    pub fn is_closed(&self) -> bool {
        self.products
            .iter()
            .flatten()
            .all(|p| p.is_some_and(|x| self.arrows.contains(&x)))
    }

    pub fn is_unital(&self, unit: ArrowId) -> bool {
        let Some(e) = self.arrows.iter().position(|&a| a == unit) else {
            return false;
        };
        self.arrows
            .iter()
            .enumerate()
            .all(|(i, &a)| self.products[e][i] == Some(a) && self.products[i][e] == Some(a))
    }

    pub fn is_associative(&self) -> bool {
        let idx = |a: ArrowId| self.arrows.iter().position(|&x| x == a);
        let prod = |i: usize, j: usize| self.products[i][j].and_then(idx);
        let n = self.arrows.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = prod(i, j).and_then(|ij| prod(ij, k));
                    let right = prod(j, k).and_then(|jk| prod(i, jk));
                    if left != right || left.is_none() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every element has a two-sided inverse w.r.t. `unit`; with closure and
    /// associativity this makes the monoid a group.
    pub fn is_group(&self, unit: ArrowId) -> bool {
        self.is_closed()
            && self.is_unital(unit)
            && self.arrows.iter().enumerate().all(|(i, _)| {
                (0..self.arrows.len())
                    .any(|j| self.products[i][j] == Some(unit) && self.products[j][i] == Some(unit))
            })
    }
}

/// Derive a composition table from element maps: `g ∘ f` is the unique
/// arrow whose endpoints and element map agree with the composite map.
/// Requires every arrow to carry a map, and no two parallel arrows to share
/// one. Pairs whose composite map matches no arrow are left undefined, so
/// a non-closed arrow collection shows up in `validate` rather than here.
pub fn derive_composition(arrows: &[ArrowRec]) -> Result<CompositeEntries, DeriveError> {
    let mut by_key: HashMap<(ObjectId, ObjectId, &[usize]), ArrowId> = HashMap::new();
    for (i, a) in arrows.iter().enumerate() {
        let map = a
            .map
            .as_deref()
            .ok_or(DeriveError::MissingElementMap { arrow: i })?;
        if by_key.insert((a.dom, a.cod, map), ArrowId(i)).is_some() {
            return Err(DeriveError::AmbiguousArrow { arrow: i });
        }
    }
    let mut composites = Vec::new();
    for (gi, g) in arrows.iter().enumerate() {
        for (fi, f) in arrows.iter().enumerate() {
            if f.cod != g.dom {
                continue;
            }
            let fmap = f.map.as_deref().expect("checked above");
            let gmap = g.map.as_deref().expect("checked above");
            let composite: Vec<usize> = fmap.iter().map(|&x| gmap[x]).collect();
            if let Some(&gf) = by_key.get(&(f.dom, g.cod, composite.as_slice())) {
                composites.push(((ArrowId(gi), ArrowId(fi)), gf));
            }
        }
    }
    Ok(composites)
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum DeriveError {
    #[error("arrow {arrow} has no element map; derived composition needs one on every arrow")]
    MissingElementMap { arrow: usize },
    #[error("arrow {arrow} duplicates the endpoints and element map of an earlier arrow")]
    AmbiguousArrow { arrow: usize },
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One object, one identity arrow.
    fn identity_only() -> FiniteCategory {
        FiniteCategory::from_parts(CategoryParts {
            objects: vec![ObjectRec::abstract_object("A")],
            arrows: vec![ArrowRec {
                name: "id_A".into(),
                dom: ObjectId(0),
                cod: ObjectId(0),
                map: None,
            }],
            identities: vec![Some(ArrowId(0))],
            composites: vec![((ArrowId(0), ArrowId(0)), ArrowId(0))],
        })
        .unwrap()
    }

    #[test]
    fn identity_only_category_is_valid() {
        let cat = identity_only();
        assert!(cat.validate().is_valid());
        assert_eq!(cat.hom_set(ObjectId(0), ObjectId(0)), vec![ArrowId(0)]);
        let m = cat.endo_monoid(ObjectId(0));
        assert_eq!(m.arrows.len(), 1);
        assert!(m.is_closed() && m.is_unital(ArrowId(0)) && m.is_associative());
        assert!(cat.parallel_pairs().is_empty());
    }

    #[test]
    fn out_of_range_indices_are_structural_errors() {
        let bad = CategoryParts {
            objects: vec![ObjectRec::abstract_object("A")],
            arrows: vec![ArrowRec {
                name: "f".into(),
                dom: ObjectId(0),
                cod: ObjectId(3),
                map: None,
            }],
            identities: vec![Some(ArrowId(0))],
            composites: vec![],
        };
        assert!(matches!(
            FiniteCategory::from_parts(bad),
            Err(CategoryStructureError::ObjectIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn missing_identity_is_an_axiom_violation() {
        let mut parts = identity_only().to_parts();
        parts.identities[0] = None;
        let cat = FiniteCategory::from_parts(parts).unwrap();
        let report = cat.validate();
        assert_eq!(
            report.violations,
            vec![Violation::MissingIdentity {
                object: ObjectId(0)
            }]
        );
    }

    #[test]
    fn spurious_composite_is_reported() {
        // two objects, two identities, plus a bogus id_B ∘ id_A entry
        let cat = FiniteCategory::from_parts(CategoryParts {
            objects: vec![
                ObjectRec::abstract_object("A"),
                ObjectRec::abstract_object("B"),
            ],
            arrows: vec![
                ArrowRec {
                    name: "id_A".into(),
                    dom: ObjectId(0),
                    cod: ObjectId(0),
                    map: None,
                },
                ArrowRec {
                    name: "id_B".into(),
                    dom: ObjectId(1),
                    cod: ObjectId(1),
                    map: None,
                },
            ],
            identities: vec![Some(ArrowId(0)), Some(ArrowId(1))],
            composites: vec![
                ((ArrowId(0), ArrowId(0)), ArrowId(0)),
                ((ArrowId(1), ArrowId(1)), ArrowId(1)),
                ((ArrowId(1), ArrowId(0)), ArrowId(1)),
            ],
        })
        .unwrap();
        let report = cat.validate();
        assert_eq!(
            report.violations,
            vec![Violation::SpuriousComposite {
                g: ArrowId(1),
                f: ArrowId(0)
            }]
        );
    }
}
