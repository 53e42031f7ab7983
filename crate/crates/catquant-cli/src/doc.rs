//! JSON interchange formats: category documents, presheaves, arrow fields,
//! configuration functions, matrices, structured-set inputs, and run
//! manifests.
//!
//! Complex numbers are always `[re, im]` pairs; matrices are row-major.
//! Name-keyed maps use `BTreeMap` so serialization is deterministic, and
//! regenerating a document from the same inputs is byte-identical.

use std::collections::{BTreeMap, BTreeSet};

use catquant::category::{
    derive_composition, ArrowId, ArrowRec, CategoryParts, FiniteCategory, ObjectId, ObjectPayload,
    ObjectRec,
};
use catquant::linalg::{CMat, C64};
use catquant::presheaf::HilbertPresheaf;
use catquant::rep::ConfigFunction;
use catquant::structures::{FiniteGroupAction, FinitePoset, FiniteTopology, GroupTable};
use catquant::ArrowField;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct DocError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, DocError> {
    Err(DocError(msg.into()))
}

// ---------------------------------------------------------------------------
// category documents

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CategoryDocument {
    pub objects: Vec<ObjectDoc>,
    pub arrows: Vec<ArrowDoc>,
    pub composition: CompositionDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ObjectDoc {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    /// Order relation pairs `[below, above]` on element names; the closure
    /// is taken on load.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ArrowDoc {
    pub name: String,
    pub dom: String,
    pub cod: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CompositionDoc {
    /// The string "derived": compose element maps and look the result up.
    Mode(String),
    /// Explicit entries `g ∘ f = gf` by arrow name.
    Table(Vec<CompositeEntry>),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CompositeEntry {
    pub g: String,
    pub f: String,
    pub gf: String,
}

impl CategoryDocument {
    pub fn from_category(cat: &FiniteCategory) -> Self {
        let objects = cat
            .objects()
            .map(|a| {
                let rec = cat.object(a);
                match &rec.payload {
                    None => ObjectDoc {
                        name: rec.name.clone(),
                        elements: None,
                        leq: None,
                        opens: None,
                    },
                    Some(ObjectPayload::Set { elements }) => ObjectDoc {
                        name: rec.name.clone(),
                        elements: Some(elements.clone()),
                        leq: None,
                        opens: None,
                    },
                    Some(ObjectPayload::Poset(p)) => ObjectDoc {
                        name: rec.name.clone(),
                        elements: Some(p.elements.clone()),
                        leq: Some(
                            p.relation_pairs()
                                .into_iter()
                                .map(|(x, y)| (p.elements[x].clone(), p.elements[y].clone()))
                                .collect(),
                        ),
                        opens: None,
                    },
                    Some(ObjectPayload::Topology(t)) => ObjectDoc {
                        name: rec.name.clone(),
                        elements: Some(t.points.clone()),
                        leq: None,
                        opens: Some(
                            t.opens()
                                .iter()
                                .map(|open| open.iter().map(|&i| t.points[i].clone()).collect())
                                .collect(),
                        ),
                    },
                }
            })
            .collect();
        let arrows = cat
            .arrows()
            .map(|f| {
                let rec = cat.arrow(f);
                let map = rec.map.as_ref().map(|m| {
                    let dom_elems = cat.object(rec.dom).elements().unwrap();
                    let cod_elems = cat.object(rec.cod).elements().unwrap();
                    m.iter()
                        .enumerate()
                        .map(|(i, &img)| (dom_elems[i].clone(), cod_elems[img].clone()))
                        .collect()
                });
                ArrowDoc {
                    name: rec.name.clone(),
                    dom: cat.object(rec.dom).name.clone(),
                    cod: cat.object(rec.cod).name.clone(),
                    map,
                }
            })
            .collect();
        let parts = cat.to_parts();
        let composition = CompositionDoc::Table(
            parts
                .composites
                .iter()
                .map(|((g, f), gf)| CompositeEntry {
                    g: cat.arrow(*g).name.clone(),
                    f: cat.arrow(*f).name.clone(),
                    gf: cat.arrow(*gf).name.clone(),
                })
                .collect(),
        );
        CategoryDocument {
            objects,
            arrows,
            composition,
        }
    }

    /// Resolve names and build the category. Name problems (duplicates,
    /// dangling references, bad element maps) are document errors; axiom
    /// violations are not checked here.
    pub fn to_category(&self) -> Result<FiniteCategory, DocError> {
        let mut object_index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if object_index.insert(&o.name, i).is_some() {
                return err(format!("duplicate object name {:?}", o.name));
            }
        }
        let mut objects = Vec::with_capacity(self.objects.len());
        for o in &self.objects {
            let payload = build_payload(o)?;
            objects.push(ObjectRec {
                name: o.name.clone(),
                payload,
            });
        }
        let mut arrow_index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if arrow_index.insert(&a.name, i).is_some() {
                return err(format!("duplicate arrow name {:?}", a.name));
            }
        }
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for a in &self.arrows {
            let &dom = object_index
                .get(a.dom.as_str())
                .ok_or_else(|| DocError(format!("arrow {:?}: unknown dom {:?}", a.name, a.dom)))?;
            let &cod = object_index
                .get(a.cod.as_str())
                .ok_or_else(|| DocError(format!("arrow {:?}: unknown cod {:?}", a.name, a.cod)))?;
            let map = match &a.map {
                None => None,
                Some(name_map) => Some(resolve_map(
                    &a.name,
                    name_map,
                    objects[dom].elements(),
                    objects[cod].elements(),
                )?),
            };
            arrows.push(ArrowRec {
                name: a.name.clone(),
                dom: ObjectId(dom),
                cod: ObjectId(cod),
                map,
            });
        }
        let composites = match &self.composition {
            CompositionDoc::Mode(mode) if mode == "derived" => {
                derive_composition(&arrows).map_err(|e| DocError(e.to_string()))?
            }
            CompositionDoc::Mode(other) => {
                return err(format!("unknown composition mode {:?}", other));
            }
            CompositionDoc::Table(entries) => {
                let mut list = Vec::with_capacity(entries.len());
                for e in entries {
                    let lookup = |name: &str| {
                        arrow_index.get(name).copied().map(ArrowId).ok_or_else(|| {
                            DocError(format!(
                                "composition entry references unknown arrow {:?}",
                                name
                            ))
                        })
                    };
                    list.push(((lookup(&e.g)?, lookup(&e.f)?), lookup(&e.gf)?));
                }
                list
            }
        };
        let identities = detect_identities(&objects, &arrows, &composites);
        FiniteCategory::from_parts(CategoryParts {
            objects,
            arrows,
            identities,
            composites,
        })
        .map_err(|e| DocError(e.to_string()))
    }
}

fn build_payload(o: &ObjectDoc) -> Result<Option<ObjectPayload>, DocError> {
    let Some(elements) = &o.elements else {
        if o.leq.is_some() || o.opens.is_some() {
            return err(format!(
                "object {:?} has structure but no element list",
                o.name
            ));
        }
        return Ok(None);
    };
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e, i).is_some() {
            return err(format!("object {:?} has duplicate element {:?}", o.name, e));
        }
    }
    let resolve = |e: &str| {
        index
            .get(e)
            .copied()
            .ok_or_else(|| DocError(format!("object {:?}: unknown element {:?}", o.name, e)))
    };
    match (&o.leq, &o.opens) {
        (Some(_), Some(_)) => err(format!(
            "object {:?} declares both an order and a topology",
            o.name
        )),
        (Some(leq), None) => {
            let pairs: Vec<(usize, usize)> = leq
                .iter()
                .map(|(a, b)| Ok((resolve(a)?, resolve(b)?)))
                .collect::<Result<_, DocError>>()?;
            let poset = FinitePoset::from_relations(elements.clone(), &pairs)
                .map_err(|e| DocError(format!("object {:?}: {}", o.name, e)))?;
            Ok(Some(ObjectPayload::Poset(poset)))
        }
        (None, Some(opens)) => {
            let sets: BTreeSet<BTreeSet<usize>> = opens
                .iter()
                .map(|open| open.iter().map(|e| resolve(e)).collect())
                .collect::<Result<_, DocError>>()?;
            let topo = FiniteTopology::new(elements.clone(), sets)
                .map_err(|e| DocError(format!("object {:?}: {}", o.name, e)))?;
            Ok(Some(ObjectPayload::Topology(topo)))
        }
        (None, None) => Ok(Some(ObjectPayload::Set {
            elements: elements.clone(),
        })),
    }
}

fn resolve_map(
    arrow: &str,
    name_map: &BTreeMap<String, String>,
    dom_elems: Option<&[String]>,
    cod_elems: Option<&[String]>,
) -> Result<Vec<usize>, DocError> {
    let dom = dom_elems.ok_or_else(|| {
        DocError(format!(
            "arrow {:?} has a map but its domain has no elements",
            arrow
        ))
    })?;
    let cod = cod_elems.ok_or_else(|| {
        DocError(format!(
            "arrow {:?} has a map but its codomain has no elements",
            arrow
        ))
    })?;
    if let Some(stray) = name_map.keys().find(|k| !dom.contains(k)) {
        return Err(DocError(format!(
            "arrow {:?}: map key {:?} is not an element of the domain",
            arrow, stray
        )));
    }
    dom.iter()
        .map(|e| {
            let img = name_map.get(e).ok_or_else(|| {
                DocError(format!("arrow {:?}: no image for element {:?}", arrow, e))
            })?;
            cod.iter().position(|c| c == img).ok_or_else(|| {
                DocError(format!(
                    "arrow {:?}: image {:?} is not an element of the codomain",
                    arrow, img
                ))
            })
        })
        .collect()
}

/// Identity detection: the arrow with the identity element map if maps are
/// present, otherwise the two-sided unit of the composition table. `None`
/// when absent; validation reports that as a missing identity.
fn detect_identities(
    objects: &[ObjectRec],
    arrows: &[ArrowRec],
    composites: &[((ArrowId, ArrowId), ArrowId)],
) -> Vec<Option<ArrowId>> {
    let table: BTreeMap<(ArrowId, ArrowId), ArrowId> = composites.iter().copied().collect();
    (0..objects.len())
        .map(|obj| {
            let candidates: Vec<ArrowId> = arrows
                .iter()
                .enumerate()
                .filter(|(_, a)| a.dom == ObjectId(obj) && a.cod == ObjectId(obj))
                .map(|(i, _)| ArrowId(i))
                .collect();
            // an identity element map wins outright
            for &e in &candidates {
                if let Some(map) = &arrows[e.0].map {
                    if map.iter().enumerate().all(|(i, &x)| i == x) {
                        return Some(e);
                    }
                }
            }
            candidates.into_iter().find(|&e| {
                arrows.iter().enumerate().all(|(i, a)| {
                    let f = ArrowId(i);
                    let left_ok = a.cod != ObjectId(obj) || table.get(&(e, f)) == Some(&f);
                    let right_ok = a.dom != ObjectId(obj) || table.get(&(f, e)) == Some(&f);
                    left_ok && right_ok
                })
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// matrices, presheaves, fields, configuration functions

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    /// Row-major `[re, im]` pairs.
    pub entries: Vec<[f64; 2]>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &CMat) -> Self {
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMat, DocError> {
        let entries = self
            .entries
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        CMat::from_entries(self.rows, self.cols, entries).map_err(|e| DocError(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresheafDocument {
    pub dims: BTreeMap<String, usize>,
    pub kappa: BTreeMap<String, MatrixDoc>,
}

impl PresheafDocument {
    pub fn from_presheaf(cat: &FiniteCategory, p: &HilbertPresheaf) -> Self {
        PresheafDocument {
            dims: cat
                .objects()
                .map(|a| (cat.object(a).name.clone(), p.dim(a)))
                .collect(),
            kappa: cat
                .arrows()
                .map(|f| {
                    (
                        cat.arrow(f).name.clone(),
                        MatrixDoc::from_matrix(p.kappa(f)),
                    )
                })
                .collect(),
        }
    }

    pub fn to_presheaf(&self, cat: &FiniteCategory) -> Result<HilbertPresheaf, DocError> {
        let dims = cat
            .objects()
            .map(|a| {
                self.dims.get(&cat.object(a).name).copied().ok_or_else(|| {
                    DocError(format!("no dimension for object {:?}", cat.object(a).name))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let kappa = cat
            .arrows()
            .map(|f| {
                self.kappa
                    .get(&cat.arrow(f).name)
                    .ok_or_else(|| DocError(format!("no matrix for arrow {:?}", cat.arrow(f).name)))
                    .and_then(|m| m.to_matrix())
            })
            .collect::<Result<Vec<_>, _>>()?;
        HilbertPresheaf::new(cat, dims, kappa).map_err(|e| DocError(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldDocument {
    pub assignment: BTreeMap<String, String>,
}

impl FieldDocument {
    pub fn from_field(cat: &FiniteCategory, x: &ArrowField) -> Self {
        FieldDocument {
            assignment: cat
                .objects()
                .map(|a| {
                    (
                        cat.object(a).name.clone(),
                        cat.arrow(x.arrow_at(a)).name.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_field(&self, cat: &FiniteCategory) -> Result<ArrowField, DocError> {
        let assignment = cat
            .objects()
            .map(|a| {
                let obj_name = &cat.object(a).name;
                let arrow_name = self.assignment.get(obj_name).ok_or_else(|| {
                    DocError(format!("no arrow assigned to object {:?}", obj_name))
                })?;
                cat.arrow_by_name(arrow_name)
                    .ok_or_else(|| DocError(format!("unknown arrow {:?}", arrow_name)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ArrowField::new(cat, assignment).map_err(|e| DocError(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BetaDocument {
    pub beta: BTreeMap<String, f64>,
}

impl BetaDocument {
    pub fn to_config(&self, cat: &FiniteCategory) -> Result<ConfigFunction, DocError> {
        let values = cat
            .objects()
            .map(|a| {
                self.beta.get(&cat.object(a).name).copied().ok_or_else(|| {
                    DocError(format!("no value for object {:?}", cat.object(a).name))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ConfigFunction::new(values))
    }
}

// ---------------------------------------------------------------------------
// structured-set inputs for `gen`

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetsInput {
    pub posets: Vec<PosetDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetDoc {
    pub name: String,
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl PosetDoc {
    pub fn to_poset(&self) -> Result<(String, FinitePoset), DocError> {
        let resolve = |e: &str| {
            self.elements
                .iter()
                .position(|x| x == e)
                .ok_or_else(|| DocError(format!("poset {:?}: unknown element {:?}", self.name, e)))
        };
        let pairs: Vec<(usize, usize)> = self
            .leq
            .iter()
            .map(|(a, b)| Ok((resolve(a)?, resolve(b)?)))
            .collect::<Result<_, DocError>>()?;
        let poset = FinitePoset::from_relations(self.elements.clone(), &pairs)
            .map_err(|e| DocError(format!("poset {:?}: {}", self.name, e)))?;
        Ok((self.name.clone(), poset))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpacesInput {
    pub spaces: Vec<SpaceDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub name: String,
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

impl SpaceDoc {
    pub fn to_topology(&self) -> Result<(String, FiniteTopology), DocError> {
        let resolve = |e: &str| {
            self.points
                .iter()
                .position(|x| x == e)
                .ok_or_else(|| DocError(format!("space {:?}: unknown point {:?}", self.name, e)))
        };
        let opens: BTreeSet<BTreeSet<usize>> = self
            .opens
            .iter()
            .map(|open| open.iter().map(|e| resolve(e)).collect())
            .collect::<Result<_, DocError>>()?;
        let topo = FiniteTopology::new(self.points.clone(), opens)
            .map_err(|e| DocError(format!("space {:?}: {}", self.name, e)))?;
        Ok((self.name.clone(), topo))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupActionInput {
    pub group: GroupDoc,
    pub carrier: Vec<String>,
    /// `action[g][q]` is a carrier point name.
    pub action: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDoc {
    pub names: Vec<String>,
    /// `table[g][h]` is the name of `g·h`.
    pub table: Vec<Vec<String>>,
}

impl GroupActionInput {
    pub fn to_action(&self) -> Result<FiniteGroupAction, DocError> {
        let gix = |e: &str| {
            self.group
                .names
                .iter()
                .position(|x| x == e)
                .ok_or_else(|| DocError(format!("unknown group element {:?}", e)))
        };
        let qix = |e: &str| {
            self.carrier
                .iter()
                .position(|x| x == e)
                .ok_or_else(|| DocError(format!("unknown carrier point {:?}", e)))
        };
        let table: Vec<Vec<usize>> = self
            .group
            .table
            .iter()
            .map(|row| row.iter().map(|e| gix(e)).collect())
            .collect::<Result<_, DocError>>()?;
        let group = GroupTable::new(self.group.names.clone(), table)
            .map_err(|e| DocError(e.to_string()))?;
        let action: Vec<Vec<usize>> = self
            .action
            .iter()
            .map(|row| row.iter().map(|e| qix(e)).collect())
            .collect::<Result<_, DocError>>()?;
        FiniteGroupAction::new(group, self.carrier.clone(), action)
            .map_err(|e| DocError(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// run manifests

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    pub timestamp: String,
    pub inputs: Vec<DigestEntry>,
    pub emitted: Vec<DigestEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DigestEntry {
    pub name: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(bytes))
}
