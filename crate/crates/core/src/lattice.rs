//! Finite lattices as posets with full meet/join tables, plus the
//! classification machinery: identity checks, diamond/pentagon sublattice
//! search, breadth, irreducible and prime elements.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::poset::{ElemId, Poset, ProductPoset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("empty carrier: lattices are assumed nonempty")]
    Empty,
    #[error("poset is not a lattice: pair (`{x}`, `{y}`) has no unique {bound}")]
    NotALattice {
        bound: BoundKind,
        x: String,
        y: String,
    },
    #[error("carrier has {size} elements, above the configured limit {limit}")]
    SizeLimit { size: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Join,
    Meet,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundKind::Join => write!(f, "least upper bound"),
            BoundKind::Meet => write!(f, "greatest lower bound"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Lattice {
    poset: Arc<Poset>,
    meet: Vec<ElemId>,
    join: Vec<ElemId>,
    bottom: ElemId,
    top: ElemId,
}

/// Default cap for the exponential subset searches (`breadth`).
pub const DEFAULT_SEARCH_LIMIT: usize = 16;

impl Lattice {
    /// Computes full meet/join tables by exhaustive bound search.
    pub fn from_poset(poset: Poset) -> Result<Lattice, LatticeError> {
        Lattice::from_arc(Arc::new(poset))
    }

    pub fn from_arc(poset: Arc<Poset>) -> Result<Lattice, LatticeError> {
        let n = poset.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        for x in 0..n {
            for y in x..n {
                let j = unique_bound(&poset, x, y, BoundKind::Join)?;
                let m = unique_bound(&poset, x, y, BoundKind::Meet)?;
                join[x * n + y] = j;
                join[y * n + x] = j;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|y| poset.leq(b, y)))
            .expect("meet of all elements exists");
        let top = (0..n)
            .find(|&t| (0..n).all(|y| poset.leq(y, t)))
            .expect("join of all elements exists");
        Ok(Lattice {
            poset,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, x: ElemId) -> &str {
        self.poset.name(x)
    }

    pub fn index_of(&self, name: &str) -> Option<ElemId> {
        self.poset.index_of(name)
    }

    pub fn leq(&self, a: ElemId, b: ElemId) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet(&self, a: ElemId, b: ElemId) -> ElemId {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: ElemId, b: ElemId) -> ElemId {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> ElemId {
        self.bottom
    }

    pub fn top(&self) -> ElemId {
        self.top
    }

    pub fn meet_all(&self, elems: impl IntoIterator<Item = ElemId>) -> ElemId {
        elems.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, elems: impl IntoIterator<Item = ElemId>) -> ElemId {
        elems
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn dual(&self) -> Lattice {
        Lattice::from_poset(self.poset.dual()).expect("dual of a lattice is a lattice")
    }

    /// Componentwise product lattice.
    pub fn direct_product(&self, other: &Lattice) -> Lattice {
        let prod = ProductPoset::new(Arc::clone(&self.poset), Arc::clone(&other.poset));
        Lattice::from_arc(Arc::clone(&prod.poset)).expect("product of lattices is a lattice")
    }

    /// Modular law `x <= z  =>  x v (y ^ z) = (x v y) ^ z`, exhaustive.
    /// Returns a violating triple if any.
    pub fn modular_violation(&self) -> Option<(ElemId, ElemId, ElemId)> {
        let n = self.len();
        for x in 0..n {
            for z in 0..n {
                if !self.leq(x, z) {
                    continue;
                }
                for y in 0..n {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Distributive law `x ^ (y v z) = (x ^ y) v (x ^ z)`, exhaustive.
    pub fn distributive_violation(&self) -> Option<(ElemId, ElemId, ElemId)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z))
                        != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Searches for a diamond sublattice: three pairwise-incomparable
    /// elements with a common pairwise meet and common pairwise join.
    /// Returns `[bottom, a, b, c, top]` with the least-index witness.
    pub fn find_diamond(&self) -> Option<[ElemId; 5]> {
        let n = self.len();
        for a in 0..n {
            for b in (a + 1)..n {
                if self.poset.comparable(a, b) {
                    continue;
                }
                let m = self.meet(a, b);
                let j = self.join(a, b);
                for c in (b + 1)..n {
                    if self.poset.comparable(a, c) || self.poset.comparable(b, c) {
                        continue;
                    }
                    if self.meet(a, c) == m
                        && self.meet(b, c) == m
                        && self.join(a, c) == j
                        && self.join(b, c) == j
                    {
                        return Some([m, a, b, c, j]);
                    }
                }
            }
        }
        None
    }

    /// Searches for a pentagon sublattice: `a < b` and `c` incomparable to
    /// both with equal meets and equal joins against the pair.
    /// Returns `[bottom, a, b, c, top]` with `a < b`.
    pub fn find_pentagon(&self) -> Option<[ElemId; 5]> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if !self.poset.lt(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.poset.comparable(a, c) || self.poset.comparable(b, c) {
                        continue;
                    }
                    let m = self.meet(a, c);
                    let j = self.join(a, c);
                    if self.meet(b, c) == m && self.join(b, c) == j {
                        return Some([m, a, b, c, j]);
                    }
                }
            }
        }
        None
    }

    pub fn classify(&self) -> ClassificationReport {
        let modular_violation = self.modular_violation();
        let distributive_violation = self.distributive_violation();
        let report = ClassificationReport {
            is_modular: modular_violation.is_none(),
            modular_violation,
            is_distributive: distributive_violation.is_none(),
            distributive_violation,
            diamond: self.find_diamond(),
            pentagon: self.find_pentagon(),
        };
        debug_assert!(report.replay(self));
        report
    }

    /// Exact breadth via exhaustive subset search: the largest size of a
    /// set whose meet strictly exceeds the meet of every proper subset.
    /// Fails loudly above `limit` since the search is exponential.
    pub fn breadth(&self, limit: usize) -> Result<(usize, Vec<ElemId>), LatticeError> {
        let n = self.len();
        if n > limit {
            return Err(LatticeError::SizeLimit { size: n, limit });
        }
        let mut best: (usize, Vec<ElemId>) = (0, Vec::new());
        for mask in 1u32..(1u32 << n) {
            let size = mask.count_ones() as usize;
            if size <= best.0 {
                continue;
            }
            let set: Vec<ElemId> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if self.is_meet_irredundant(&set) {
                best = (size, set);
            }
        }
        Ok(best)
    }

    /// Meet of the empty set is the top element, so a singleton `{x}` is
    /// meet-irredundant exactly when `x` is not the top.
    pub fn is_meet_irredundant(&self, set: &[ElemId]) -> bool {
        if set.is_empty() {
            return false;
        }
        let all = self.meet_all(set.iter().copied());
        (0..set.len()).all(|skip| {
            let partial = self.meet_all(
                set.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &x)| x),
            );
            partial != all
        })
    }

    /// Join-irreducible elements: non-bottom elements that are not the join
    /// of their strict lower set.
    pub fn join_irreducibles(&self) -> Vec<ElemId> {
        (0..self.len())
            .filter(|&x| {
                x != self.bottom
                    && self.join_all((0..self.len()).filter(|&y| self.poset.lt(y, x))) != x
            })
            .collect()
    }

    /// Join-prime elements: non-bottom `y` with `w v z >= y` only if
    /// `w >= y` or `z >= y`. Exhaustive pair check.
    pub fn join_primes(&self) -> Vec<ElemId> {
        let n = self.len();
        (0..n)
            .filter(|&y| {
                y != self.bottom
                    && (0..n).all(|w| {
                        (0..n).all(|z| {
                            !self.leq(y, self.join(w, z)) || self.leq(y, w) || self.leq(y, z)
                        })
                    })
            })
            .collect()
    }

    /// Order isomorphism search by backtracking; practical for the small
    /// lattices this crate works with. Returns the element mapping.
    pub fn isomorphism_to(&self, other: &Lattice) -> Option<Vec<ElemId>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        // cheap invariants first
        let profile = |l: &Lattice, x: ElemId| {
            let up = l.poset.upper_covers(x).count();
            let down = l.poset.lower_covers(x).count();
            let below = (0..n).filter(|&y| l.leq(y, x)).count();
            (up, down, below)
        };
        let mut mine: Vec<_> = (0..n).map(|x| profile(self, x)).collect();
        let mut theirs: Vec<_> = (0..n).map(|x| profile(other, x)).collect();
        mine.sort();
        theirs.sort();
        if mine != theirs {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            a: &Lattice,
            b: &Lattice,
            x: ElemId,
            map: &mut Vec<ElemId>,
            used: &mut Vec<bool>,
        ) -> bool {
            let n = a.len();
            if x == n {
                return true;
            }
            for y in 0..n {
                if used[y] {
                    continue;
                }
                let ok = (0..x).all(|p| {
                    a.leq(p, x) == b.leq(map[p], y) && a.leq(x, p) == b.leq(y, map[p])
                });
                if ok {
                    map[x] = y;
                    used[y] = true;
                    if go(a, b, x + 1, map, used) {
                        return true;
                    }
                    used[y] = false;
                    map[x] = usize::MAX;
                }
            }
            false
        }
        go(self, other, 0, &mut map, &mut used).then_some(map)
    }

    pub fn is_isomorphic_to(&self, other: &Lattice) -> bool {
        self.isomorphism_to(other).is_some()
    }
}

/// Result of the exhaustive identity checks and sublattice searches.
/// Witnesses replay through the meet/join tables.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub is_modular: bool,
    pub modular_violation: Option<(ElemId, ElemId, ElemId)>,
    pub is_distributive: bool,
    pub distributive_violation: Option<(ElemId, ElemId, ElemId)>,
    /// `[bottom, a, b, c, top]` of a diamond sublattice, if any.
    pub diamond: Option<[ElemId; 5]>,
    /// `[bottom, a, b, c, top]` of a pentagon sublattice (`a < b`), if any.
    pub pentagon: Option<[ElemId; 5]>,
}

impl ClassificationReport {
    /// Re-derives every reported fact from the lattice tables.
    pub fn replay(&self, l: &Lattice) -> bool {
        if let Some((x, y, z)) = self.modular_violation {
            if !(l.leq(x, z) && l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z)) {
                return false;
            }
        }
        if let Some((x, y, z)) = self.distributive_violation {
            if l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z)) {
                return false;
            }
        }
        if let Some([m, a, b, c, j]) = self.diamond {
            let pairs = [(a, b), (a, c), (b, c)];
            let ok = pairs.iter().all(|&(p, q)| {
                !l.poset().comparable(p, q) && l.meet(p, q) == m && l.join(p, q) == j
            });
            if !ok {
                return false;
            }
        }
        if let Some([m, a, b, c, j]) = self.pentagon {
            let ok = l.poset().lt(a, b)
                && !l.poset().comparable(a, c)
                && !l.poset().comparable(b, c)
                && l.meet(a, c) == m
                && l.meet(b, c) == m
                && l.join(a, c) == j
                && l.join(b, c) == j;
            if !ok {
                return false;
            }
        }
        // the sublattice theorem ties the searches to the identity checks
        self.is_distributive == (self.diamond.is_none() && self.pentagon.is_none())
            && self.is_modular == self.pentagon.is_none()
    }
}

fn unique_bound(p: &Poset, x: ElemId, y: ElemId, kind: BoundKind) -> Result<ElemId, LatticeError> {
    let n = p.len();
    let bounds: Vec<ElemId> = (0..n)
        .filter(|&u| match kind {
            BoundKind::Join => p.leq(x, u) && p.leq(y, u),
            BoundKind::Meet => p.leq(u, x) && p.leq(u, y),
        })
        .collect();
    let found = bounds.iter().copied().find(|&u| {
        bounds.iter().all(|&v| match kind {
            BoundKind::Join => p.leq(u, v),
            BoundKind::Meet => p.leq(v, u),
        })
    });
    found.ok_or_else(|| LatticeError::NotALattice {
        bound: kind,
        x: p.name(x).to_string(),
        y: p.name(y).to_string(),
    })
}
