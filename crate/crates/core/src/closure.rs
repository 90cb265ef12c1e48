//! Closure systems: a finite ground set with an intersection-closed family
//! of closed subsets containing the ground set. Subsets are stored as
//! bitmasks over the ground set (at most 64 elements).

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::Lattice;
use crate::poset::{ElemId, Poset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosureError {
    #[error("ground set holds {0} elements; at most 64 are supported")]
    TooLarge(usize),
    #[error("duplicate ground element `{0}`")]
    DuplicateName(String),
    #[error("unknown ground element `{0}`")]
    UnknownName(String),
    #[error("ground set must be nonempty")]
    EmptyGround,
}

#[derive(Debug, Clone)]
pub struct ClosureSystem {
    ground: Vec<String>,
    /// Sorted, deduplicated closed-set masks; always contains the full mask.
    closed: Vec<u64>,
    /// Number of sets the constructor had to add to close the family under
    /// pairwise intersection. Zero means the input was already a closure
    /// system.
    completed_by: usize,
}

impl ClosureSystem {
    /// Builds a closure system from named closed sets. The full ground set
    /// is always included; the family is completed under intersection, and
    /// `completed_by()` reports how many sets that added.
    pub fn new(ground: Vec<String>, closed_sets: &[Vec<String>]) -> Result<ClosureSystem, ClosureError> {
        let n = ground.len();
        if n == 0 {
            return Err(ClosureError::EmptyGround);
        }
        if n > 64 {
            return Err(ClosureError::TooLarge(n));
        }
        let mut index = HashMap::new();
        for (i, g) in ground.iter().enumerate() {
            if index.insert(g.clone(), i).is_some() {
                return Err(ClosureError::DuplicateName(g.clone()));
            }
        }
        let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
        let mut masks = vec![full];
        for set in closed_sets {
            let mut m = 0u64;
            for name in set {
                let i = index
                    .get(name)
                    .ok_or_else(|| ClosureError::UnknownName(name.clone()))?;
                m |= 1 << i;
            }
            masks.push(m);
        }
        masks.sort_unstable();
        masks.dedup();
        let before = masks.len();
        // fixpoint completion under pairwise intersection
        loop {
            let mut added = Vec::new();
            for i in 0..masks.len() {
                for j in (i + 1)..masks.len() {
                    let m = masks[i] & masks[j];
                    if masks.binary_search(&m).is_err() && !added.contains(&m) {
                        added.push(m);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            masks.extend(added);
            masks.sort_unstable();
            masks.dedup();
        }
        let completed_by = masks.len() - before;
        Ok(ClosureSystem {
            ground,
            closed: masks,
            completed_by,
        })
    }

    /// The presentation of the diamond on three points: singletons closed,
    /// every two-element set closing to the whole ground set.
    pub fn m3_presentation() -> ClosureSystem {
        let ground = vec!["0".into(), "1".into(), "2".into()];
        let closed = vec![
            vec![],
            vec!["0".into()],
            vec!["1".into()],
            vec!["2".into()],
        ];
        ClosureSystem::new(ground, &closed).unwrap()
    }

    /// Represents a finite lattice by closed subsets of its set of
    /// join-irreducible elements: `cl(S) = X intersect (down join S)`.
    /// Returns the system and, for each ground index, the lattice element
    /// it stands for.
    pub fn from_join_irreducibles(l: &Lattice) -> (ClosureSystem, Vec<ElemId>) {
        let irr = l.join_irreducibles();
        let ground: Vec<String> = irr.iter().map(|&x| l.name(x).to_string()).collect();
        let mut closed = Vec::new();
        for x in 0..l.len() {
            let set: Vec<String> = irr
                .iter()
                .filter(|&&j| l.leq(j, x))
                .map(|&j| l.name(j).to_string())
                .collect();
            closed.push(set);
        }
        let sys = ClosureSystem::new(ground, &closed).expect("irreducibles are distinct");
        (sys, irr)
    }

    pub fn ground_len(&self) -> usize {
        self.ground.len()
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn ground_index(&self, name: &str) -> Option<usize> {
        self.ground.iter().position(|g| g == name)
    }

    pub fn full_mask(&self) -> u64 {
        if self.ground.len() == 64 {
            !0
        } else {
            (1u64 << self.ground.len()) - 1
        }
    }

    pub fn completed_by(&self) -> usize {
        self.completed_by
    }

    pub fn closed_sets(&self) -> &[u64] {
        &self.closed
    }

    pub fn is_closed(&self, mask: u64) -> bool {
        self.closed.binary_search(&mask).is_ok()
    }

    /// Least closed superset; well defined because the ground set is closed
    /// and the family is intersection-closed.
    pub fn cl(&self, mask: u64) -> u64 {
        self.closed
            .iter()
            .filter(|&&c| c & mask == mask)
            .fold(self.full_mask(), |acc, &c| acc & c)
    }

    pub fn set_names(&self, mask: u64) -> Vec<&str> {
        (0..self.ground.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.ground[i].as_str())
            .collect()
    }

    /// The lattice of closed sets ordered by inclusion, with element `i`
    /// standing for mask `closed_sets()[i]`. Meet is intersection and join
    /// is the closure of the union; both are re-derived (and so re-verified)
    /// from the order by the lattice constructor.
    pub fn closed_set_lattice(&self) -> (Lattice, Vec<u64>) {
        let sets = self.closed.clone();
        let n = sets.len();
        let names: Vec<String> = sets
            .iter()
            .map(|&m| format!("{{{}}}", self.set_names(m).join(" ")))
            .collect();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = sets[i] & sets[j] == sets[i];
            }
        }
        let poset = Poset::from_leq_matrix(names, leq).expect("inclusion is a partial order");
        let lattice = Lattice::from_arc(Arc::new(poset))
            .expect("an intersection-closed family with top is a lattice");
        (lattice, sets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn m3_presentation_closure() {
        let sys = ClosureSystem::m3_presentation();
        assert_eq!(sys.closed_sets().len(), 5); // {}, three singletons, X
        assert_eq!(sys.cl(0b011), 0b111);
        assert_eq!(sys.cl(0b001), 0b001);
        assert_eq!(sys.cl(0), 0);
        let (l, _) = sys.closed_set_lattice();
        assert!(l.is_isomorphic_to(&presets::m3()));
    }

    #[test]
    fn completion_under_intersection() {
        // {0,1} and {1,2} forces {1}
        let sys = ClosureSystem::new(
            vec!["0".into(), "1".into(), "2".into()],
            &[
                vec!["0".into(), "1".into()],
                vec!["1".into(), "2".into()],
            ],
        )
        .unwrap();
        assert!(sys.completed_by() > 0);
        assert!(sys.is_closed(0b010));
    }

    #[test]
    fn join_irreducible_presentation_round_trip() {
        for l in [
            presets::m3(),
            presets::n5(),
            presets::boolean(3),
            presets::chain(4),
            presets::gluing5(),
        ] {
            let (sys, _irr) = ClosureSystem::from_join_irreducibles(&l);
            let (lcl, _) = sys.closed_set_lattice();
            assert!(lcl.is_isomorphic_to(&l), "closed-set lattice mismatch");
        }
    }

    #[test]
    fn pentagon_presentation_is_the_bounded_pair_shape() {
        // join-irreducibles of the pentagon: a, b, c with closed sets
        // {}, {a}, {a b}, {c}, X
        let (sys, _) = ClosureSystem::from_join_irreducibles(&presets::n5());
        assert_eq!(sys.ground(), &["a".to_string(), "b".into(), "c".into()]);
        assert_eq!(sys.closed_sets().len(), 5);
        let a = 1 << sys.ground_index("a").unwrap();
        let b = 1 << sys.ground_index("b").unwrap();
        let c = 1 << sys.ground_index("c").unwrap();
        assert!(sys.is_closed(0));
        assert!(sys.is_closed(a));
        assert!(sys.is_closed(a | b));
        assert!(sys.is_closed(c));
        assert!(!sys.is_closed(b));
        assert_eq!(sys.cl(b | c), a | b | c);
    }
}
