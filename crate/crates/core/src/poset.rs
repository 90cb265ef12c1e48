//! Finite posets with canonical element indices.
//!
//! A `Poset` stores the full order relation as a dense boolean matrix plus
//! the Hasse diagram (transitive reduction). Construction validates the
//! partial-order axioms; all later code may assume them.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

/// Canonical index of a poset element, `0..n`.
pub type ElemId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element name `{0}`")]
    UnknownName(String),
    #[error("cover relation has a directed cycle through {0:?}")]
    CycleDetected(Vec<String>),
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    /// Row-major `n*n`; `leq[i*n + j]` means `i <= j`.
    leq: Vec<bool>,
    /// Transitive reduction of `leq`, sorted.
    covers: Vec<(ElemId, ElemId)>,
}

impl Poset {
    /// Builds a poset from cover pairs given by element index. The order is
    /// the reflexive-transitive closure; covers are re-reduced, so redundant
    /// input pairs are harmless.
    pub fn new(names: Vec<String>, cover_pairs: &[(ElemId, ElemId)]) -> Result<Poset, PosetError> {
        let n = names.len();
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(PosetError::DuplicateName(name.clone()));
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in cover_pairs {
            assert!(a < n && b < n, "cover pair out of range");
            leq[a * n + b] = true;
        }
        transitive_close(&mut leq, n);
        // Antisymmetry: a two-way reachability between distinct elements is a cycle.
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    let cycle: Vec<String> = (0..n)
                        .filter(|&k| leq[i * n + k] && leq[k * n + i])
                        .map(|k| names[k].clone())
                        .collect();
                    return Err(PosetError::CycleDetected(cycle));
                }
            }
        }
        let covers = reduce(&leq, n);
        Ok(Poset { names, leq, covers })
    }

    /// Resolves cover pairs by name.
    pub fn from_named_covers(names: &[&str], covers: &[(&str, &str)]) -> Result<Poset, PosetError> {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut index = HashMap::new();
        for (i, name) in owned.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(PosetError::DuplicateName(name.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let ia = *index
                .get(*a)
                .ok_or_else(|| PosetError::UnknownName(a.to_string()))?;
            let ib = *index
                .get(*b)
                .ok_or_else(|| PosetError::UnknownName(b.to_string()))?;
            pairs.push((ia, ib));
        }
        Poset::new(owned, &pairs)
    }

    /// Builds a poset from a full relation matrix, validating reflexivity,
    /// antisymmetry and transitivity.
    pub fn from_leq_matrix(names: Vec<String>, leq: Vec<bool>) -> Result<Poset, PosetError> {
        let n = names.len();
        assert_eq!(leq.len(), n * n, "relation matrix has wrong size");
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(PosetError::NotPartialOrder(format!(
                    "not reflexive at `{}`",
                    names[i]
                )));
            }
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(PosetError::NotPartialOrder(format!(
                        "not antisymmetric on `{}`, `{}`",
                        names[i], names[j]
                    )));
                }
                for k in 0..n {
                    if leq[i * n + j] && leq[j * n + k] && !leq[i * n + k] {
                        return Err(PosetError::NotPartialOrder(format!(
                            "not transitive on `{}`, `{}`, `{}`",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(PosetError::DuplicateName(name.clone()));
            }
        }
        let covers = reduce(&leq, n);
        Ok(Poset { names, leq, covers })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: ElemId) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<ElemId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: ElemId, b: ElemId) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: ElemId, b: ElemId) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: ElemId, b: ElemId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Hasse edges `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(ElemId, ElemId)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: ElemId) -> impl Iterator<Item = ElemId> + '_ {
        self.covers
            .iter()
            .filter(move |&&(a, _)| a == x)
            .map(|&(_, b)| b)
    }

    pub fn lower_covers(&self, x: ElemId) -> impl Iterator<Item = ElemId> + '_ {
        self.covers
            .iter()
            .filter(move |&&(_, b)| b == x)
            .map(|&(a, _)| a)
    }

    /// The principal ideal of `x` as a membership vector.
    pub fn down_set(&self, x: ElemId) -> Vec<bool> {
        (0..self.len()).map(|y| self.leq(y, x)).collect()
    }

    pub fn minimal_elements(&self) -> Vec<ElemId> {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|y| !self.lt(y, x)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<ElemId> {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|y| !self.lt(x, y)))
            .collect()
    }

    /// If `set` is a principal ideal, returns its generator.
    pub fn principal_ideal_generator(&self, set: &[bool]) -> Option<ElemId> {
        let members: Vec<ElemId> = (0..self.len()).filter(|&x| set[x]).collect();
        let &g = members.iter().find(|&&g| members.iter().all(|&y| self.leq(y, g)))?;
        // downward closure: everything below g must be in the set
        (0..self.len())
            .all(|y| !self.leq(y, g) || set[y])
            .then_some(g)
    }

    /// Number of edges in a longest chain (one less than its element count).
    pub fn longest_chain_length(&self) -> usize {
        let mut height = vec![0usize; self.len()];
        // covers are processed in topological order via repeated relaxation;
        // the Hasse diagram is acyclic so `n` rounds suffice
        for _ in 0..self.len() {
            for &(a, b) in &self.covers {
                if height[a] + 1 > height[b] {
                    height[b] = height[a] + 1;
                }
            }
        }
        height.into_iter().max().unwrap_or(0)
    }

    /// Height of an element: longest chain length below it.
    pub fn height(&self, x: ElemId) -> usize {
        let mut h = vec![0usize; self.len()];
        for _ in 0..self.len() {
            for &(a, b) in &self.covers {
                if h[a] + 1 > h[b] {
                    h[b] = h[a] + 1;
                }
            }
        }
        h[x]
    }

    /// All maximal chains, each listed bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<ElemId>> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<ElemId>> =
            self.minimal_elements().into_iter().map(|m| vec![m]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            let ups: Vec<ElemId> = self.upper_covers(last).collect();
            if ups.is_empty() {
                out.push(chain);
            } else {
                for u in ups {
                    let mut next = chain.clone();
                    next.push(u);
                    stack.push(next);
                }
            }
        }
        out.sort();
        out
    }

    /// Checks that the listed elements form a chain in the given order.
    pub fn is_ascending_chain(&self, elems: &[ElemId]) -> bool {
        elems.windows(2).all(|w| self.lt(w[0], w[1]))
    }

    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(j, i);
            }
        }
        let covers = reduce(&leq, n);
        Poset {
            names: self.names.clone(),
            leq,
            covers,
        }
    }
}

fn transitive_close(leq: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
}

fn reduce(leq: &[bool], n: usize) -> Vec<(ElemId, ElemId)> {
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && leq[a * n + b] {
                let direct = !(0..n).any(|c| c != a && c != b && leq[a * n + c] && leq[c * n + b]);
                if direct {
                    covers.push((a, b));
                }
            }
        }
    }
    covers.sort();
    covers
}

/// The product poset with componentwise order. Element `(i, j)` of
/// `left x right` has index `i * right.len() + j` and name `(a,b)`.
#[derive(Debug, Clone)]
pub struct ProductPoset {
    pub poset: Arc<Poset>,
    pub left: Arc<Poset>,
    pub right: Arc<Poset>,
}

impl ProductPoset {
    pub fn new(left: Arc<Poset>, right: Arc<Poset>) -> ProductPoset {
        let (np, nq) = (left.len(), right.len());
        let n = np * nq;
        let mut names = Vec::with_capacity(n);
        for i in 0..np {
            for j in 0..nq {
                names.push(format!("({},{})", left.name(i), right.name(j)));
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..np {
            for j in 0..nq {
                for k in 0..np {
                    for l in 0..nq {
                        if left.leq(i, k) && right.leq(j, l) {
                            leq[(i * nq + j) * n + (k * nq + l)] = true;
                        }
                    }
                }
            }
        }
        let poset =
            Poset::from_leq_matrix(names, leq).expect("componentwise order is a partial order");
        ProductPoset {
            poset: Arc::new(poset),
            left,
            right,
        }
    }

    pub fn pair_index(&self, i: ElemId, j: ElemId) -> ElemId {
        i * self.right.len() + j
    }

    pub fn split_index(&self, k: ElemId) -> (ElemId, ElemId) {
        (k / self.right.len(), k % self.right.len())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum MapError {
    #[error("map is not isotone: {x} <= {y} but images are not ordered")]
    NotIsotone { x: String, y: String },
    #[error("inverse image of the principal ideal of `{q}` is not principal")]
    PreimageNotPrincipal { q: String },
    #[error("map does not cover element `{0}`")]
    Incomplete(String),
}

/// A set map between posets, stored by index.
#[derive(Debug, Clone)]
pub struct PosetMap {
    pub dom: Arc<Poset>,
    pub cod: Arc<Poset>,
    map: Vec<ElemId>,
}

impl PosetMap {
    pub fn new(dom: Arc<Poset>, cod: Arc<Poset>, map: Vec<ElemId>) -> PosetMap {
        assert_eq!(map.len(), dom.len());
        assert!(map.iter().all(|&y| y < cod.len()));
        PosetMap { dom, cod, map }
    }

    pub fn from_named_pairs(
        dom: Arc<Poset>,
        cod: Arc<Poset>,
        pairs: &[(&str, &str)],
    ) -> Result<PosetMap, MapError> {
        let mut map = vec![usize::MAX; dom.len()];
        for (a, b) in pairs {
            let ia = dom
                .index_of(a)
                .ok_or_else(|| MapError::Incomplete(a.to_string()))?;
            let ib = cod
                .index_of(b)
                .ok_or_else(|| MapError::Incomplete(b.to_string()))?;
            map[ia] = ib;
        }
        if let Some(missing) = map.iter().position(|&y| y == usize::MAX) {
            return Err(MapError::Incomplete(dom.name(missing).to_string()));
        }
        Ok(PosetMap::new(dom, cod, map))
    }

    pub fn apply(&self, x: ElemId) -> ElemId {
        self.map[x]
    }

    pub fn check_isotone(&self) -> Result<(), MapError> {
        for x in 0..self.dom.len() {
            for y in 0..self.dom.len() {
                if self.dom.leq(x, y) && !self.cod.leq(self.map[x], self.map[y]) {
                    return Err(MapError::NotIsotone {
                        x: self.dom.name(x).to_string(),
                        y: self.dom.name(y).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Checks that the inverse image of every principal ideal is principal,
    /// returning the generator map `q -> generator of h^{-1}(down q)`.
    pub fn preimage_generators(&self) -> Result<Vec<ElemId>, MapError> {
        let mut gens = Vec::with_capacity(self.cod.len());
        for q in 0..self.cod.len() {
            let set: Vec<bool> = (0..self.dom.len())
                .map(|p| self.cod.leq(self.map[p], q))
                .collect();
            match self.dom.principal_ideal_generator(&set) {
                Some(g) => gens.push(g),
                None => {
                    return Err(MapError::PreimageNotPrincipal {
                        q: self.cod.name(q).to_string(),
                    })
                }
            }
        }
        Ok(gens)
    }

    /// The upper adjoint of a map whose principal-ideal preimages are
    /// principal: `q` maps to the generator of `h^{-1}(down q)`. Together with
    /// `self` it forms a Galois connection `h(p) <= q  iff  p <= G(h)(q)`.
    pub fn galois_upper_adjoint(&self) -> Result<PosetMap, MapError> {
        let gens = self.preimage_generators()?;
        Ok(PosetMap::new(
            Arc::clone(&self.cod),
            Arc::clone(&self.dom),
            gens,
        ))
    }
}
