//! Finite structured sets: posets, topological spaces, and group actions.
//!
//! These are the raw materials the category generators work from. Posets
//! model causal sets; finite topologies model spatial slices; group actions
//! recover the homogeneous-space picture. All invariants are checked by
//! exhaustive enumeration at construction time, which is cheap at the sizes
//! this crate is meant for.
//!
//! Posets and T0 topologies determine each other: the topology generated by
//! the lower sets of a poset, and the specialization order `x <= y` iff
//! `y` lies in the closure of `{x}`. [`poset_to_topology`] and
//! [`topology_to_poset`] implement the two directions, and the round trip
//! starting from a poset is the identity.

use std::collections::BTreeSet;

#[derive(Debug, Clone, thiserror::Error)]
pub enum StructureError {
    #[error("relation pair ({0}, {1}) is out of range")]
    RelationOutOfRange(usize, usize),
    #[error("order is not antisymmetric: {0} and {1} are related both ways")]
    NotAntisymmetric(String, String),
    #[error("open set contains point index {0}, which is out of range")]
    OpenOutOfRange(usize),
    #[error("topology does not contain the empty set")]
    MissingEmptySet,
    #[error("topology does not contain the full point set")]
    MissingFullSet,
    #[error("topology is not closed under {op}: witness {witness}")]
    NotClosed { op: &'static str, witness: String },
    #[error("space is not T0: points {0} and {1} have identical open neighbourhoods")]
    NotT0(String, String),
    #[error("group table is not square or references an element out of range")]
    MalformedGroupTable,
    #[error("group table has no two-sided unit")]
    NoUnit,
    #[error("group element {0} has no inverse")]
    NoInverse(String),
    #[error("group multiplication is not associative: witness ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("action table has the wrong shape")]
    MalformedAction,
    #[error("action does not fix points under the unit: point {0}")]
    UnitActsNontrivially(String),
    #[error("action is not compatible with the group law: witness (g2={0}, g1={1}, q={2})")]
    ActionNotCompatible(String, String, String),
}

/// A finite partially ordered set over labelled elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    pub elements: Vec<String>,
    leq: Vec<bool>, // dense n*n, leq[a*n+b] == true iff a <= b
}

impl FinitePoset {
    /// Build from generating relation pairs `(a, b)` meaning `a <= b`.
    ///
    /// The reflexive-transitive closure is taken automatically; antisymmetry
    /// is then checked and a cycle between distinct elements is an error.
    pub fn from_relations(
        elements: Vec<String>,
        relations: &[(usize, usize)],
    ) -> Result<Self, StructureError> {
        let n = elements.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(StructureError::RelationOutOfRange(a, b));
            }
            leq[a * n + b] = true;
        }
        // Warshall closure
        for k in 0..n {
            for a in 0..n {
                if leq[a * n + k] {
                    for b in 0..n {
                        if leq[k * n + b] {
                            leq[a * n + b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(StructureError::NotAntisymmetric(
                        elements[a].clone(),
                        elements[b].clone(),
                    ));
                }
            }
        }
        Ok(FinitePoset { elements, leq })
    }

    /// A totally unordered poset (only the reflexive pairs).
    pub fn antichain(elements: Vec<String>) -> Self {
        FinitePoset::from_relations(elements, &[]).expect("antichain is always a poset")
    }

    /// The linear order `e0 <= e1 <= ...` on the given labels.
    pub fn chain(elements: Vec<String>) -> Self {
        let rel: Vec<(usize, usize)> = (1..elements.len()).map(|i| (i - 1, i)).collect();
        FinitePoset::from_relations(elements, &rel).expect("chain is always a poset")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    /// All pairs `(a, b)` with `a <= b`, in row-major order.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.leq(a, b))
            .collect()
    }

    /// Re-check reflexivity, antisymmetry and transitivity by enumeration.
    pub fn validate(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return false;
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return false;
                }
                for c in 0..n {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Is `map` (element index -> element index in `dst`) order-preserving?
    pub fn is_monotone(&self, map: &[usize], dst: &FinitePoset) -> bool {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if self.leq(a, b) && !dst.leq(map[a], map[b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// A finite topological space: labelled points and the set of open subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    pub points: Vec<String>,
    opens: BTreeSet<BTreeSet<usize>>,
}

impl FiniteTopology {
    /// Build and check that `opens` really is a topology (contains the empty
    /// and full sets, closed under pairwise union and intersection).
    pub fn new(
        points: Vec<String>,
        opens: BTreeSet<BTreeSet<usize>>,
    ) -> Result<Self, StructureError> {
        let n = points.len();
        for open in &opens {
            if let Some(&p) = open.iter().find(|&&p| p >= n) {
                return Err(StructureError::OpenOutOfRange(p));
            }
        }
        if !opens.contains(&BTreeSet::new()) {
            return Err(StructureError::MissingEmptySet);
        }
        let full: BTreeSet<usize> = (0..n).collect();
        if !opens.contains(&full) {
            return Err(StructureError::MissingFullSet);
        }
        for u in &opens {
            for v in &opens {
                let union: BTreeSet<usize> = u.union(v).copied().collect();
                if !opens.contains(&union) {
                    return Err(StructureError::NotClosed {
                        op: "union",
                        witness: format!("{:?} ∪ {:?}", u, v),
                    });
                }
                let inter: BTreeSet<usize> = u.intersection(v).copied().collect();
                if !opens.contains(&inter) {
                    return Err(StructureError::NotClosed {
                        op: "intersection",
                        witness: format!("{:?} ∩ {:?}", u, v),
                    });
                }
            }
        }
        Ok(FiniteTopology { points, opens })
    }

    /// Every subset open: the discrete topology.
    pub fn discrete(points: Vec<String>) -> Self {
        let n = points.len();
        let mut opens = BTreeSet::new();
        for mask in 0u64..(1 << n) {
            opens.insert((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
        FiniteTopology { points, opens }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn opens(&self) -> &BTreeSet<BTreeSet<usize>> {
        &self.opens
    }

    pub fn is_open(&self, s: &BTreeSet<usize>) -> bool {
        self.opens.contains(s)
    }

    /// Is `map : self -> dst` continuous? Checked by the preimage test:
    /// the preimage of every open of `dst` must be open here.
    pub fn is_continuous(&self, map: &[usize], dst: &FiniteTopology) -> bool {
        for open in &dst.opens {
            let preimage: BTreeSet<usize> = (0..self.len())
                .filter(|&p| open.contains(&map[p]))
                .collect();
            if !self.opens.contains(&preimage) {
                return false;
            }
        }
        true
    }
}

/// The topology generated by the lower sets of a poset: its opens are
/// exactly the down-closed subsets (this family is already closed under
/// arbitrary unions and intersections).
pub fn poset_to_topology(p: &FinitePoset) -> FiniteTopology {
    let n = p.len();
    assert!(n < 32, "poset too large to enumerate subsets");
    let mut opens = BTreeSet::new();
    for mask in 0u64..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let down_closed = members
            .iter()
            .all(|&b| (0..n).all(|a| !p.leq(a, b) || mask & (1 << a) != 0));
        if down_closed {
            opens.insert(members.into_iter().collect());
        }
    }
    FiniteTopology {
        points: p.elements.clone(),
        opens,
    }
}

/// The specialization order of a topology: `x <= y` iff `y` lies in the
/// closure of `{x}`, equivalently iff every open containing `y` contains `x`.
/// Fails when the space is not T0, since the order is then not antisymmetric.
pub fn topology_to_poset(t: &FiniteTopology) -> Result<FinitePoset, StructureError> {
    let n = t.len();
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let le = t.opens().iter().all(|u| !u.contains(&y) || u.contains(&x));
            if le {
                pairs.push((x, y));
            }
        }
    }
    FinitePoset::from_relations(t.points.clone(), &pairs).map_err(|e| match e {
        StructureError::NotAntisymmetric(a, b) => StructureError::NotT0(a, b),
        other => other,
    })
}

/// A finite group presented by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub names: Vec<String>,
    mul: Vec<usize>, // mul[g*n+h] = g*h
    unit: usize,
}

impl GroupTable {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, StructureError> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(StructureError::MalformedGroupTable);
        }
        let mut mul = vec![0usize; n * n];
        for (g, row) in table.iter().enumerate() {
            for (h, &gh) in row.iter().enumerate() {
                if gh >= n {
                    return Err(StructureError::MalformedGroupTable);
                }
                mul[g * n + h] = gh;
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|g| mul[e * n + g] == g && mul[g * n + e] == g))
            .ok_or(StructureError::NoUnit)?;
        for g in 0..n {
            if !(0..n).any(|h| mul[g * n + h] == unit && mul[h * n + g] == unit) {
                return Err(StructureError::NoInverse(names[g].clone()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a * n + b] * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(StructureError::NotAssociative(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(GroupTable { names, mul, unit })
    }

    /// The cyclic group of order `n`, elements named `g0..g{n-1}`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| format!("g{}", i)).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        GroupTable::new(names, table).expect("cyclic group is a group")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.len() + h]
    }
}

/// A finite group acting on a finite carrier set.
#[derive(Debug, Clone)]
pub struct FiniteGroupAction {
    pub group: GroupTable,
    pub carrier: Vec<String>,
    act: Vec<usize>, // act[g*|carrier|+q] = g.q
}

impl FiniteGroupAction {
    /// `action[g][q]` is the point `g.q`. Checked: the unit fixes every
    /// point and `g2.(g1.q) = (g2 g1).q` for all pairs.
    pub fn new(
        group: GroupTable,
        carrier: Vec<String>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, StructureError> {
        let ng = group.len();
        let nq = carrier.len();
        if action.len() != ng || action.iter().any(|r| r.len() != nq) {
            return Err(StructureError::MalformedAction);
        }
        if action.iter().flatten().any(|&q| q >= nq) {
            return Err(StructureError::MalformedAction);
        }
        let mut act = vec![0usize; ng * nq];
        for (g, row) in action.iter().enumerate() {
            for (q, &gq) in row.iter().enumerate() {
                act[g * nq + q] = gq;
            }
        }
        let e = group.unit();
        for q in 0..nq {
            if act[e * nq + q] != q {
                return Err(StructureError::UnitActsNontrivially(carrier[q].clone()));
            }
        }
        for g2 in 0..ng {
            for g1 in 0..ng {
                for q in 0..nq {
                    if act[g2 * nq + act[g1 * nq + q]] != act[group.mul(g2, g1) * nq + q] {
                        return Err(StructureError::ActionNotCompatible(
                            group.names[g2].clone(),
                            group.names[g1].clone(),
                            carrier[q].clone(),
                        ));
                    }
                }
            }
        }
        Ok(FiniteGroupAction {
            group,
            carrier,
            act,
        })
    }

    pub fn apply(&self, g: usize, q: usize) -> usize {
        self.act[g * self.carrier.len() + q]
    }
}
