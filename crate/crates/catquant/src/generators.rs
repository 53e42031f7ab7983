//! Generators for concrete finite categories.
//!
//! Categories of structured sets are built by enumerating every
//! structure-preserving map between every ordered pair of carriers:
//! order-preserving maps for posets (optionally restricted to embeddings),
//! continuous maps for finite topological spaces, group elements for a
//! group action. Composition is function composition, derived by looking
//! the composite map up among the generated arrows.
//!
//! Enumeration order is canonical so that regenerating a category is
//! deterministic: objects in declaration order, arrows grouped by
//! `(domain, codomain)` pairs in row-major object order, and maps within a
//! pair in lexicographic order of their value tables.

use crate::category::{
    derive_composition, ArrowId, ArrowRec, CategoryParts, FiniteCategory, ObjectId, ObjectPayload,
    ObjectRec,
};
use crate::structures::{FiniteGroupAction, FinitePoset, FiniteTopology, GroupTable};

/// Which maps become arrows between posets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowMode {
    AllMonotone,
    InjectiveMonotone,
}

/// Default bound on `|dst|^|src|` candidate maps per object pair.
pub const DEFAULT_MAP_CAP: usize = 1_000_000;

#[derive(Debug, Clone, thiserror::Error)]
pub enum GenError {
    #[error(
        "{candidates} candidate maps from {src} to {dst} exceed the cap of {cap}; \
         raise the cap to enumerate anyway"
    )]
    MapCapExceeded {
        src: String,
        dst: String,
        candidates: u128,
        cap: usize,
    },
    #[error("chain length must be at least 1")]
    EmptyChain,
    #[error("generated arrows are inconsistent: {0}")]
    Internal(String),
}

/// All maps `[0, src_size) -> [0, dst_size)` in lexicographic order of the
/// value table, filtered by `keep`. Refuses (rather than truncates) when the
/// candidate count `dst_size^src_size` exceeds `cap`.
pub fn enumerate_maps(
    src_size: usize,
    dst_size: usize,
    cap: usize,
    mut keep: impl FnMut(&[usize]) -> bool,
) -> Result<Vec<Vec<usize>>, u128> {
    let candidates = (dst_size as u128)
        .checked_pow(src_size as u32)
        .unwrap_or(u128::MAX);
    if candidates > cap as u128 {
        return Err(candidates);
    }
    if src_size == 0 {
        let empty: Vec<usize> = Vec::new();
        return Ok(if keep(&empty) { vec![empty] } else { vec![] });
    }
    if dst_size == 0 {
        return Ok(Vec::new()); // no maps out of a nonempty set into the empty set
    }
    let mut out = Vec::new();
    let mut current = vec![0usize; src_size];
    loop {
        if keep(&current) {
            out.push(current.clone());
        }
        // odometer with the last position fastest = lexicographic order
        let mut pos = src_size;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < dst_size {
                break;
            }
            current[pos] = 0;
        }
    }
}

fn injective(map: &[usize]) -> bool {
    map.iter()
        .enumerate()
        .all(|(i, a)| map[..i].iter().all(|b| a != b))
}

/// All order-preserving maps `src -> dst`, lexicographic in the value table.
pub fn monotone_maps(
    src: &FinitePoset,
    dst: &FinitePoset,
    mode: ArrowMode,
    cap: usize,
) -> Result<Vec<Vec<usize>>, u128> {
    enumerate_maps(src.len(), dst.len(), cap, |m| {
        src.is_monotone(m, dst) && (mode == ArrowMode::AllMonotone || injective(m))
    })
}

/// All continuous maps `src -> dst` (preimage of every open is open),
/// lexicographic in the value table; optionally embeddings only.
pub fn continuous_maps(
    src: &FiniteTopology,
    dst: &FiniteTopology,
    injective_only: bool,
    cap: usize,
) -> Result<Vec<Vec<usize>>, u128> {
    enumerate_maps(src.len(), dst.len(), cap, |m| {
        src.is_continuous(m, dst) && (!injective_only || injective(m))
    })
}

/// Shared assembly once the per-pair map lists are known.
fn category_of_maps(
    objects: Vec<ObjectRec>,
    maps_for_pair: impl Fn(usize, usize) -> Result<Vec<Vec<usize>>, GenError>,
) -> Result<FiniteCategory, GenError> {
    let n = objects.len();
    let mut arrows: Vec<ArrowRec> = Vec::new();
    let mut identities: Vec<Option<ArrowId>> = vec![None; n];
    for s in 0..n {
        for d in 0..n {
            let src_size = objects[s].elements().map_or(0, |e| e.len());
            for map in maps_for_pair(s, d)? {
                let id = ArrowId(arrows.len());
                let is_identity = s == d && map.iter().enumerate().all(|(i, &x)| i == x);
                let name = if is_identity {
                    identities[s] = Some(id);
                    format!("id_{}", objects[s].name)
                } else {
                    format!(
                        "{}>{}#{}",
                        objects[s].name,
                        objects[d].name,
                        arrows
                            .iter()
                            .filter(|a| a.dom == ObjectId(s) && a.cod == ObjectId(d))
                            .count()
                    )
                };
                debug_assert_eq!(map.len(), src_size);
                arrows.push(ArrowRec {
                    name,
                    dom: ObjectId(s),
                    cod: ObjectId(d),
                    map: Some(map),
                });
            }
        }
    }
    let composites = derive_composition(&arrows).map_err(|e| GenError::Internal(e.to_string()))?;
    FiniteCategory::from_parts(CategoryParts {
        objects,
        arrows,
        identities,
        composites,
    })
    .map_err(|e| GenError::Internal(e.to_string()))
}

/// The category whose objects are the given posets and whose arrows are all
/// (optionally injective) order-preserving maps, composed as functions.
pub fn poset_category(
    posets: &[(String, FinitePoset)],
    mode: ArrowMode,
    cap: usize,
) -> Result<FiniteCategory, GenError> {
    let objects: Vec<ObjectRec> = posets
        .iter()
        .map(|(name, p)| ObjectRec {
            name: name.clone(),
            payload: Some(ObjectPayload::Poset(p.clone())),
        })
        .collect();
    category_of_maps(objects, |s, d| {
        monotone_maps(&posets[s].1, &posets[d].1, mode, cap).map_err(|candidates| {
            GenError::MapCapExceeded {
                src: posets[s].0.clone(),
                dst: posets[d].0.clone(),
                candidates,
                cap,
            }
        })
    })
}

/// The category whose objects are the given spaces and whose arrows are all
/// continuous maps.
pub fn topology_category(
    spaces: &[(String, FiniteTopology)],
    cap: usize,
) -> Result<FiniteCategory, GenError> {
    let objects: Vec<ObjectRec> = spaces
        .iter()
        .map(|(name, t)| ObjectRec {
            name: name.clone(),
            payload: Some(ObjectPayload::Topology(t.clone())),
        })
        .collect();
    category_of_maps(objects, |s, d| {
        continuous_maps(&spaces[s].1, &spaces[d].1, false, cap).map_err(|candidates| {
            GenError::MapCapExceeded {
                src: spaces[s].0.clone(),
                dst: spaces[d].0.clone(),
                candidates,
                cap,
            }
        })
    })
}

/// The action category of a group action: objects are the carrier points,
/// and there is one arrow `q -> g.q` for every pair `(q, g)`, labelled by
/// the group element. Composition multiplies the labels, so `Hom(q, q')` is
/// the transporter set `{g | g.q = q'}` and `Hom(q, q)` the isotropy group.
pub fn group_action_category(ga: &FiniteGroupAction) -> FiniteCategory {
    let nq = ga.carrier.len();
    let ng = ga.group.len();
    let objects: Vec<ObjectRec> = ga
        .carrier
        .iter()
        .map(|name| ObjectRec::abstract_object(name.clone()))
        .collect();
    // arrow index for (q, g) is q*ng + g
    let arrow_of = |q: usize, g: usize| ArrowId(q * ng + g);
    let identities = (0..nq)
        .map(|q| Some(arrow_of(q, ga.group.unit())))
        .collect();
    let mut arrows = Vec::with_capacity(nq * ng);
    for q in 0..nq {
        for g in 0..ng {
            arrows.push(ArrowRec {
                name: format!("{}@{}", ga.group.names[g], ga.carrier[q]),
                dom: ObjectId(q),
                cod: ObjectId(ga.apply(g, q)),
                map: None,
            });
        }
    }
    let mut composites = Vec::new();
    for q in 0..nq {
        for g1 in 0..ng {
            let mid = ga.apply(g1, q);
            for g2 in 0..ng {
                composites.push((
                    (arrow_of(mid, g2), arrow_of(q, g1)),
                    arrow_of(q, ga.group.mul(g2, g1)),
                ));
            }
        }
    }
    FiniteCategory::from_parts(CategoryParts {
        objects,
        arrows,
        identities,
        composites,
    })
    .expect("action category construction is index-safe")
}

/// The truncated total order: objects `0 .. n-1` with exactly one arrow
/// `i -> j` whenever `i <= j`. Composition is forced by uniqueness.
pub fn chain_category(n: usize) -> Result<FiniteCategory, GenError> {
    if n == 0 {
        return Err(GenError::EmptyChain);
    }
    let objects: Vec<ObjectRec> = (0..n)
        .map(|i| ObjectRec::abstract_object(i.to_string()))
        .collect();
    // arrows in row-major order over pairs i <= j, triangular numbering
    let arrow_of = |i: usize, j: usize| ArrowId(i * (2 * n - i + 1) / 2 + (j - i));
    let identities = (0..n).map(|i| Some(arrow_of(i, i))).collect();
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i..n {
            debug_assert_eq!(arrow_of(i, j).0, arrows.len());
            let name = if i == j {
                format!("id_{}", i)
            } else {
                format!("{}to{}", i, j)
            };
            arrows.push(ArrowRec {
                name,
                dom: ObjectId(i),
                cod: ObjectId(j),
                map: None,
            });
        }
    }
    let mut composites = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                composites.push(((arrow_of(j, k), arrow_of(i, j)), arrow_of(i, k)));
            }
        }
    }
    FiniteCategory::from_parts(CategoryParts {
        objects,
        arrows,
        identities,
        composites,
    })
    .map_err(|e| GenError::Internal(e.to_string()))
}

/// The two-object category of causal sets `A = {a}` and `B = {b1 <= b2}`
/// with all order-preserving maps. With `forget_order` the order on `B` is
/// dropped, which adds the transposition `p : B -> B`.
///
/// Arrows are renamed to the conventional letters: `f1, f2 : A -> B`,
/// `g : B -> A`, `r, s : B -> B` (the two constant maps onto `b1` and `b2`)
/// and, order forgotten, `p`.
pub fn isham_two_object(forget_order: bool) -> FiniteCategory {
    let a = FinitePoset::antichain(vec!["a".into()]);
    let b = if forget_order {
        FinitePoset::antichain(vec!["b1".into(), "b2".into()])
    } else {
        FinitePoset::chain(vec!["b1".into(), "b2".into()])
    };
    let mut cat = poset_category(
        &[("A".into(), a), ("B".into(), b)],
        ArrowMode::AllMonotone,
        DEFAULT_MAP_CAP,
    )
    .expect("two tiny posets are enumerable");
    let (oa, ob) = (ObjectId(0), ObjectId(1));
    let rename = |cat: &mut FiniteCategory, dom, cod, map: &[usize], name: &str| {
        let found = cat
            .arrows()
            .find(|&f| {
                cat.dom(f) == dom && cat.cod(f) == cod && cat.arrow(f).map.as_deref() == Some(map)
            })
            .expect("expected arrow present");
        cat.rename_arrow(found, name);
    };
    rename(&mut cat, oa, ob, &[0], "f1");
    rename(&mut cat, oa, ob, &[1], "f2");
    rename(&mut cat, ob, oa, &[0, 0], "g");
    rename(&mut cat, ob, ob, &[0, 0], "r");
    rename(&mut cat, ob, ob, &[1, 1], "s");
    if forget_order {
        rename(&mut cat, ob, ob, &[1, 0], "p");
    }
    cat
}

/// The four causal sets drawn as a motivating collection: a point, a
/// two-chain, a two-chain branching into two tops, and a three-chain, with
/// order-preserving maps as arrows.
pub fn fig_one(mode: ArrowMode) -> FiniteCategory {
    let c1 = FinitePoset::antichain(vec!["x0".into()]);
    let c2 = FinitePoset::chain(vec!["x0".into(), "x1".into()]);
    let c3 = FinitePoset::from_relations(
        vec!["x0".into(), "x1".into(), "x2".into(), "x3".into()],
        &[(0, 1), (1, 2), (1, 3)],
    )
    .expect("branching poset is a poset");
    let c4 = FinitePoset::chain(vec!["x0".into(), "x1".into(), "x2".into()]);
    poset_category(
        &[
            ("C1".into(), c1),
            ("C2".into(), c2),
            ("C3".into(), c3),
            ("C4".into(), c4),
        ],
        mode,
        DEFAULT_MAP_CAP,
    )
    .expect("four small posets are enumerable")
}

/// The five-object category underlying the standard arrow-field picture:
/// `x_i : A_i -> B` for `i = 1,2,3`, `y : B -> C`, the identities, and the
/// composites `y ∘ x_i` forced by closure. Objects carry singleton element
/// sets so the pull-back presheaf exists (it is one-dimensional per fibre).
pub fn fig_two() -> FiniteCategory {
    let objects: Vec<ObjectRec> = ["A1", "A2", "A3", "B", "C"]
        .iter()
        .map(|name| ObjectRec {
            name: (*name).into(),
            payload: Some(ObjectPayload::Set {
                elements: vec!["*".into()],
            }),
        })
        .collect();
    let (b, c) = (ObjectId(3), ObjectId(4));
    let mut arrows = Vec::new();
    let mut identities = vec![None; 5];
    for i in 0..5 {
        identities[i] = Some(ArrowId(arrows.len()));
        arrows.push(ArrowRec {
            name: format!("id_{}", objects[i].name),
            dom: ObjectId(i),
            cod: ObjectId(i),
            map: Some(vec![0]),
        });
    }
    for i in 0..3 {
        arrows.push(ArrowRec {
            name: format!("x{}", i + 1),
            dom: ObjectId(i),
            cod: b,
            map: Some(vec![0]),
        });
    }
    arrows.push(ArrowRec {
        name: "y".into(),
        dom: b,
        cod: c,
        map: Some(vec![0]),
    });
    for i in 0..3 {
        arrows.push(ArrowRec {
            name: format!("y.x{}", i + 1),
            dom: ObjectId(i),
            cod: c,
            map: Some(vec![0]),
        });
    }
    let composites = derive_composition(&arrows).expect("hom-sets are singletons");
    FiniteCategory::from_parts(CategoryParts {
        objects,
        arrows,
        identities,
        composites,
    })
    .expect("construction is index-safe")
}

/// Convenience: the swap action of the two-element group on two points.
pub fn z2_swap_action() -> FiniteGroupAction {
    FiniteGroupAction::new(
        GroupTable::cyclic(2),
        vec!["p".into(), "q".into()],
        vec![vec![0, 1], vec![1, 0]],
    )
    .expect("swap action is compatible")
}
