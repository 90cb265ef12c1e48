//! Subcomplexes cut out by bounded pairs: for a family `S` of comparable
//! pairs `(x, y)`, the points `f` such that `f(x)` and `f(y)` never both lie
//! strictly between 0 and 1. With join-prime second coordinates this is a
//! sublattice of the full complex containing all vertices and every Hasse
//! edge of the host.

use std::sync::Arc;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;
use thiserror::Error;

use crate::delta::{sample_point_with, DeltaPoint};
use crate::lattice::Lattice;
use crate::poset::{ElemId, Poset};
use crate::rat::rone;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairsError {
    #[error("pair (`{x}`, `{y}`) violates x <= y")]
    NotComparable { x: String, y: String },
    #[error("pair (`{x}`, `{y}`) must be strict (x < y) for this operation")]
    NotStrict { x: String, y: String },
    #[error("second coordinate of pair (`{x}`, `{y}`) is not join-prime")]
    SecondCoordinateNotJoinPrime { x: String, y: String },
    #[error("point lives over a different host poset")]
    HostMismatch,
}

/// A normalized family of comparable pairs over a host poset. Pairs whose
/// interval contains another listed pair's interval impose no extra
/// condition and are dropped, so the stored family is an antichain under
/// interval inclusion.
#[derive(Debug, Clone)]
pub struct PairConstraintSet {
    host: Arc<Poset>,
    pairs: Vec<(ElemId, ElemId)>,
}

impl PairConstraintSet {
    pub fn new(
        host: Arc<Poset>,
        pairs: &[(ElemId, ElemId)],
    ) -> Result<PairConstraintSet, PairsError> {
        for &(x, y) in pairs {
            if !host.leq(x, y) {
                return Err(PairsError::NotComparable {
                    x: host.name(x).to_string(),
                    y: host.name(y).to_string(),
                });
            }
        }
        let mut kept: Vec<(ElemId, ElemId)> = Vec::new();
        for &(x, y) in pairs {
            if !kept.contains(&(x, y)) {
                kept.push((x, y));
            }
        }
        // drop pairs dominated by a sub-interval in the family
        let dominated = |&(x, y): &(ElemId, ElemId), list: &[(ElemId, ElemId)]| {
            list.iter()
                .any(|&(x2, y2)| (x2, y2) != (x, y) && host.leq(x, x2) && host.leq(y2, y))
        };
        let normalized: Vec<(ElemId, ElemId)> = kept
            .iter()
            .filter(|p| !dominated(p, &kept))
            .copied()
            .collect();
        Ok(PairConstraintSet {
            host,
            pairs: normalized,
        })
    }

    pub fn from_names(
        host: Arc<Poset>,
        pairs: &[(&str, &str)],
    ) -> Result<PairConstraintSet, PairsError> {
        let resolved: Vec<(ElemId, ElemId)> = pairs
            .iter()
            .map(|(x, y)| {
                let ix = host.index_of(x).expect("unknown pair element");
                let iy = host.index_of(y).expect("unknown pair element");
                (ix, iy)
            })
            .collect();
        PairConstraintSet::new(host, &resolved)
    }

    pub fn host(&self) -> &Arc<Poset> {
        &self.host
    }

    pub fn pairs(&self) -> &[(ElemId, ElemId)] {
        &self.pairs
    }

    /// The first violated pair, if any: both coordinates strictly inside
    /// (0,1).
    pub fn violation(&self, f: &DeltaPoint) -> Option<(ElemId, ElemId)> {
        let interior = |v: &crate::rat::Rat| !v.is_zero() && *v < rone();
        self.pairs
            .iter()
            .copied()
            .find(|&(x, y)| interior(f.value(x)) && interior(f.value(y)))
    }

    pub fn is_member(&self, f: &DeltaPoint) -> bool {
        self.violation(f).is_none()
    }

    fn require_join_prime(&self, lat: &Lattice) -> Result<(), PairsError> {
        let primes = lat.join_primes();
        for &(x, y) in &self.pairs {
            if !primes.contains(&y) {
                return Err(PairsError::SecondCoordinateNotJoinPrime {
                    x: self.host.name(x).to_string(),
                    y: self.host.name(y).to_string(),
                });
            }
        }
        Ok(())
    }

    fn require_strict(&self) -> Result<(), PairsError> {
        for &(x, y) in &self.pairs {
            if x == y {
                return Err(PairsError::NotStrict {
                    x: self.host.name(x).to_string(),
                    y: self.host.name(y).to_string(),
                });
            }
        }
        Ok(())
    }

    /// Samples member pairs and verifies that meet and join stay inside the
    /// subcomplex. Requires join-prime second coordinates; any violation is
    /// returned as a replayable certificate.
    pub fn check_closure(
        &self,
        lat: &Lattice,
        samples: usize,
        seed: u64,
    ) -> Result<PairClosureReport, PairsError> {
        if !crate::delta::same_host(&self.host, lat.poset()) {
            return Err(PairsError::HostMismatch);
        }
        self.require_join_prime(lat)?;
        let mut rng = StdRng::seed_from_u64(seed);
        let mut checked = 0usize;
        let mut violations = Vec::new();
        let mut attempts = 0usize;
        while checked < samples && attempts < samples.saturating_mul(100) {
            attempts += 1;
            let f = sample_point_with(lat.poset(), &mut rng, 16);
            let g = sample_point_with(lat.poset(), &mut rng, 16);
            if !self.is_member(&f) || !self.is_member(&g) {
                continue;
            }
            checked += 1;
            let m = lat.delta_meet(&f, &g).expect("same host");
            let j = lat.delta_join(&f, &g).expect("same host");
            for (op, out) in [("meet", &m), ("join", &j)] {
                if let Some((x, y)) = self.violation(out) {
                    violations.push(PairClosureViolation {
                        op: op.to_string(),
                        left: f.values().iter().map(|v| v.to_string()).collect(),
                        right: g.values().iter().map(|v| v.to_string()).collect(),
                        pair: (
                            self.host.name(x).to_string(),
                            self.host.name(y).to_string(),
                        ),
                    });
                }
            }
        }
        Ok(PairClosureReport {
            member_pairs_checked: checked,
            violations,
        })
    }

    /// Verifies that every Hasse edge of the host stays inside the
    /// subcomplex. A segment from the vertex of `p` to the vertex of a cover
    /// `q` leaves the subcomplex exactly when some pair has both coordinates
    /// in `down q` minus `down p`, so the check is symbolic. Requires strict
    /// pairs with join-prime second coordinates.
    pub fn hasse_edges(&self, lat: &Lattice) -> Result<Option<(ElemId, ElemId)>, PairsError> {
        if !crate::delta::same_host(&self.host, lat.poset()) {
            return Err(PairsError::HostMismatch);
        }
        self.require_strict()?;
        self.require_join_prime(lat)?;
        for &(p, q) in self.host.covers() {
            for &(x, y) in &self.pairs {
                let inside = |z: ElemId| self.host.leq(z, q) && !self.host.leq(z, p);
                if inside(x) && inside(y) {
                    return Ok(Some((p, q)));
                }
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairClosureViolation {
    pub op: String,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub pair: (String, String),
}

#[derive(Debug, Clone, Serialize)]
pub struct PairClosureReport {
    pub member_pairs_checked: usize,
    pub violations: Vec<PairClosureViolation>,
}
