//! Points of the order complex of a finite poset, realized as exact-rational
//! functions whose positive level sets are principal ideals, together with
//! the induced lattice operations.
//!
//! For a point `f` and threshold `t` in `(0,1]`, the level set is
//! `{x | f(x) >= t}`. Meets are pointwise minima; the join rebuilds values
//! from the joins of level-set generators over the merged grid of attained
//! values, which is exact because level sets only change at attained values.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::lattice::Lattice;
use crate::poset::{ElemId, Poset};
use crate::rat::{in_unit_interval, rone, rzero, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeltaError {
    #[error("points live over different host posets")]
    HostMismatch,
    #[error("value {value} at `{elem}` lies outside [0,1]")]
    ValueOutOfRange { elem: String, value: String },
    #[error("{0}")]
    NotAPoint(MembershipFailure),
    #[error("invalid chain form: {0}")]
    InvalidChainForm(String),
    #[error("`{z}` is not comparable to `{other}`")]
    NotComparable { z: String, other: String },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("family is not meet-irredundant: member {index} is redundant")]
    NotMeetIrredundant { index: usize },
    #[error("invalid breadth family arguments: {0}")]
    BadFamily(String),
}

/// A failed level-set check: the threshold at which the level set is not a
/// principal ideal, and that level set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipFailure {
    pub threshold: Rat,
    pub level_set: Vec<ElemId>,
}

impl std::fmt::Display for MembershipFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "level set at t={} is not a principal ideal (elements {:?})",
            self.threshold, self.level_set
        )
    }
}

/// Checks that every positive attained level set, and the level set at 1,
/// is a principal ideal. Level sets are constant between attained values,
/// so these finitely many checks decide membership for every threshold.
pub fn check_membership(host: &Poset, values: &[Rat]) -> Result<(), MembershipFailure> {
    assert_eq!(values.len(), host.len(), "value map must be total");
    let mut thresholds: Vec<&Rat> = values.iter().filter(|v| !v.is_zero()).collect();
    let one = rone();
    thresholds.push(&one);
    thresholds.sort();
    thresholds.dedup();
    for t in thresholds {
        let set: Vec<bool> = values.iter().map(|v| *v >= *t).collect();
        if host.principal_ideal_generator(&set).is_none() {
            return Err(MembershipFailure {
                threshold: t.clone(),
                level_set: (0..host.len()).filter(|&x| set[x]).collect(),
            });
        }
    }
    Ok(())
}

/// A point of the order complex: a validated value map over its host poset.
#[derive(Debug, Clone)]
pub struct DeltaPoint {
    host: Arc<Poset>,
    values: Vec<Rat>,
}

impl PartialEq for DeltaPoint {
    fn eq(&self, other: &Self) -> bool {
        same_host(&self.host, &other.host) && self.values == other.values
    }
}

impl Eq for DeltaPoint {}

impl Hash for DeltaPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.values.hash(state);
    }
}

pub(crate) fn same_host(a: &Arc<Poset>, b: &Arc<Poset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl DeltaPoint {
    /// Validates the value map (range and level sets) and wraps it.
    pub fn new(host: Arc<Poset>, values: Vec<Rat>) -> Result<DeltaPoint, DeltaError> {
        assert_eq!(values.len(), host.len(), "value map must be total");
        for (x, v) in values.iter().enumerate() {
            if !in_unit_interval(v) {
                return Err(DeltaError::ValueOutOfRange {
                    elem: host.name(x).to_string(),
                    value: v.to_string(),
                });
            }
        }
        check_membership(&host, &values).map_err(DeltaError::NotAPoint)?;
        Ok(DeltaPoint { host, values })
    }

    /// The characteristic function of the principal ideal of `x`.
    pub fn vertex(host: Arc<Poset>, x: ElemId) -> DeltaPoint {
        let values = (0..host.len())
            .map(|y| if host.leq(y, x) { rone() } else { rzero() })
            .collect();
        DeltaPoint { host, values }
    }

    pub fn host(&self) -> &Arc<Poset> {
        &self.host
    }

    pub fn value(&self, x: ElemId) -> &Rat {
        &self.values[x]
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Pointwise order.
    pub fn leq(&self, other: &DeltaPoint) -> bool {
        same_host(&self.host, &other.host)
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a <= b)
    }

    /// Distinct positive values, ascending.
    pub fn attained_levels(&self) -> Vec<Rat> {
        let mut levels: Vec<Rat> = self
            .values
            .iter()
            .filter(|v| !v.is_zero())
            .cloned()
            .collect();
        levels.sort();
        levels.dedup();
        levels
    }

    /// Generator of the level set at `t` in `(0,1]`.
    pub fn level_generator(&self, t: &Rat) -> Result<ElemId, DeltaError> {
        if t.is_zero() || !in_unit_interval(t) {
            return Err(DeltaError::ParameterOutOfRange(format!(
                "threshold {t} outside (0,1]"
            )));
        }
        let set: Vec<bool> = self.values.iter().map(|v| v >= t).collect();
        Ok(self
            .host
            .principal_ideal_generator(&set)
            .expect("level sets of a valid point are principal"))
    }

    /// The unique expansion as a convex combination of characteristic
    /// functions of a chain of principal ideals, every coefficient nonzero.
    pub fn chain_form(&self) -> ChainForm {
        let levels = self.attained_levels();
        let mut terms: Vec<(ElemId, Rat)> = Vec::with_capacity(levels.len());
        let mut prev = rzero();
        for v in levels {
            let gen = self
                .level_generator(&v)
                .expect("attained levels are valid thresholds");
            let coeff = &v - &prev;
            terms.push((gen, coeff));
            prev = v;
        }
        terms.reverse(); // ascending elements: highest threshold has the smallest ideal
        ChainForm { terms }
    }

    /// Convex step toward the vertex of `z`, which must be comparable to
    /// every element of the host: `(1-s) f + s (down z)`.
    pub fn contract_toward(&self, z: ElemId, s: &Rat) -> Result<DeltaPoint, DeltaError> {
        if !in_unit_interval(s) {
            return Err(DeltaError::ParameterOutOfRange(format!(
                "homotopy time {s} outside [0,1]"
            )));
        }
        for other in 0..self.host.len() {
            if !self.host.comparable(z, other) {
                return Err(DeltaError::NotComparable {
                    z: self.host.name(z).to_string(),
                    other: self.host.name(other).to_string(),
                });
            }
        }
        let one_minus = rone() - s;
        let values: Vec<Rat> = (0..self.host.len())
            .map(|x| {
                let vertex = if self.host.leq(x, z) { rone() } else { rzero() };
                &one_minus * &self.values[x] + s * vertex
            })
            .collect();
        let out = DeltaPoint {
            host: Arc::clone(&self.host),
            values,
        };
        debug_assert!(check_membership(&out.host, &out.values).is_ok());
        Ok(out)
    }
}

/// Chain-form view of a point: terms `(element, coefficient)` with strictly
/// increasing elements and positive coefficients summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainForm {
    pub terms: Vec<(ElemId, Rat)>,
}

impl ChainForm {
    pub fn to_point(&self, host: Arc<Poset>) -> Result<DeltaPoint, DeltaError> {
        if self.terms.is_empty() {
            return Err(DeltaError::InvalidChainForm("no terms".into()));
        }
        for w in self.terms.windows(2) {
            if !host.lt(w[0].0, w[1].0) {
                return Err(DeltaError::InvalidChainForm(format!(
                    "`{}` does not precede `{}` in the host order",
                    host.name(w[0].0),
                    host.name(w[1].0)
                )));
            }
        }
        let mut total = rzero();
        for (_, c) in &self.terms {
            if *c <= rzero() {
                return Err(DeltaError::InvalidChainForm(
                    "coefficients must be positive".into(),
                ));
            }
            total += c;
        }
        if total != rone() {
            return Err(DeltaError::InvalidChainForm(format!(
                "coefficients sum to {total}, not 1"
            )));
        }
        let values: Vec<Rat> = (0..host.len())
            .map(|x| {
                self.terms
                    .iter()
                    .filter(|(z, _)| host.leq(x, *z))
                    .map(|(_, c)| c.clone())
                    .sum()
            })
            .collect();
        DeltaPoint::new(host, values)
    }
}

impl Lattice {
    pub fn delta_vertex(&self, x: ElemId) -> DeltaPoint {
        DeltaPoint::vertex(Arc::clone(self.poset()), x)
    }

    fn delta_hosts_match(&self, f: &DeltaPoint, g: &DeltaPoint) -> Result<(), DeltaError> {
        if same_host(f.host(), self.poset()) && same_host(g.host(), self.poset()) {
            Ok(())
        } else {
            Err(DeltaError::HostMismatch)
        }
    }

    /// Greatest lower bound: the pointwise minimum.
    pub fn delta_meet(&self, f: &DeltaPoint, g: &DeltaPoint) -> Result<DeltaPoint, DeltaError> {
        self.delta_hosts_match(f, g)?;
        let values: Vec<Rat> = f
            .values
            .iter()
            .zip(&g.values)
            .map(|(a, b)| a.min(b).clone())
            .collect();
        let out = DeltaPoint {
            host: Arc::clone(f.host()),
            values,
        };
        debug_assert!(check_membership(&out.host, &out.values).is_ok());
        Ok(out)
    }

    /// Least upper bound: at each threshold the level set of the join is the
    /// join of the two generators; values are rebuilt as the largest grid
    /// threshold whose generator majorizes the element.
    pub fn delta_join(&self, f: &DeltaPoint, g: &DeltaPoint) -> Result<DeltaPoint, DeltaError> {
        self.delta_hosts_match(f, g)?;
        let mut grid = f.attained_levels();
        grid.extend(g.attained_levels());
        grid.sort();
        grid.dedup();
        let gens: Vec<ElemId> = grid
            .iter()
            .map(|t| {
                let a = f.level_generator(t).expect("grid thresholds are valid");
                let b = g.level_generator(t).expect("grid thresholds are valid");
                self.join(a, b)
            })
            .collect();
        let values: Vec<Rat> = (0..self.len())
            .map(|x| {
                grid.iter()
                    .zip(&gens)
                    .rev()
                    .find(|(_, &gen)| self.leq(x, gen))
                    .map(|(t, _)| t.clone())
                    .unwrap_or_else(rzero)
            })
            .collect();
        let out = DeltaPoint {
            host: Arc::clone(f.host()),
            values,
        };
        debug_assert!(check_membership(&out.host, &out.values).is_ok());
        Ok(out)
    }
}

/// Deterministic sample: a uniformly chosen maximal chain with a strictly
/// decreasing ladder of suffix sums whose denominators divide
/// `max(max_denominator, chain length + 1)`. Always a valid point.
pub fn sample_point(host: &Arc<Poset>, seed: u64, max_denominator: u64) -> DeltaPoint {
    assert!(max_denominator >= 1);
    let mut rng = StdRng::seed_from_u64(seed);
    sample_point_with(host, &mut rng, max_denominator)
}

pub fn sample_point_with(host: &Arc<Poset>, rng: &mut StdRng, max_denominator: u64) -> DeltaPoint {
    let chains = host.maximal_chains();
    let chain = chains.choose(rng).expect("poset is nonempty").clone();
    let k = chain.len() - 1;
    let denom = max_denominator.max(k as u64 + 1);
    // suffix sums 1 = s_0 > s_1 > ... > s_k > 0; f(x) = s_i for the least i
    // with x below chain[i]
    let mut cuts: Vec<u64> = Vec::new();
    while cuts.len() < k {
        let c = rng.random_range(1..denom);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    cuts.reverse();
    let mut suffix: Vec<Rat> = vec![rone()];
    for c in cuts {
        suffix.push(Rat::new((c as i64).into(), (denom as i64).into()));
    }
    let values: Vec<Rat> = (0..host.len())
        .map(|x| {
            chain
                .iter()
                .position(|&z| host.leq(x, z))
                .map(|i| suffix[i].clone())
                .unwrap_or_else(rzero)
        })
        .collect();
    let out = DeltaPoint {
        host: Arc::clone(host),
        values,
    };
    debug_assert!(check_membership(&out.host, &out.values).is_ok());
    out
}

pub fn sample_points(
    host: &Arc<Poset>,
    seed: u64,
    count: usize,
    max_denominator: u64,
) -> Vec<DeltaPoint> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| sample_point_with(host, &mut rng, max_denominator))
        .collect()
}

/// Closes a set of points under meet and join and returns the resulting
/// abstract lattice together with the embedding back into the complex.
/// Terminates because every generated value already occurs in some input.
pub fn generated_sublattice(
    lat: &Lattice,
    points: &[DeltaPoint],
) -> Result<(Lattice, Vec<DeltaPoint>), DeltaError> {
    assert!(!points.is_empty(), "need at least one generator");
    for p in points {
        if !same_host(p.host(), lat.poset()) {
            return Err(DeltaError::HostMismatch);
        }
    }
    let meet = |a: &DeltaPoint, b: &DeltaPoint| lat.delta_meet(a, b).expect("same host");
    let join = |a: &DeltaPoint, b: &DeltaPoint| lat.delta_join(a, b).expect("same host");
    let leq = |a: &DeltaPoint, b: &DeltaPoint| a.leq(b);
    crate::generate::generate_lattice(points, meet, join, leq)
        .map_err(|e| DeltaError::BadFamily(e.to_string()))
}

/// The meet-irredundant family attached to a chain `0 = x_0 < ... < x_n`
/// and coefficients `1 > r_1 > ... > r_n >= 0`: the i-th member has value 1
/// on the ideal of `x_{i-1}` and `r_i` elsewhere.
pub fn breadth_family(
    lat: &Lattice,
    chain: &[ElemId],
    coeffs: &[Rat],
) -> Result<Vec<DeltaPoint>, DeltaError> {
    if chain.is_empty() || chain[0] != lat.bottom() {
        return Err(DeltaError::BadFamily(
            "chain must start at the bottom element".into(),
        ));
    }
    if !lat.poset().is_ascending_chain(chain) {
        return Err(DeltaError::BadFamily(
            "elements must form a strictly increasing chain".into(),
        ));
    }
    let n = chain.len() - 1;
    if coeffs.len() != n {
        return Err(DeltaError::BadFamily(format!(
            "need {n} coefficients for a chain of length {n}"
        )));
    }
    for (i, r) in coeffs.iter().enumerate() {
        let prev = if i == 0 { rone() } else { coeffs[i - 1].clone() };
        if !(*r < prev) || *r < rzero() {
            return Err(DeltaError::BadFamily(
                "coefficients must satisfy 1 > r_1 > ... > r_n >= 0".into(),
            ));
        }
    }
    let mut family = Vec::with_capacity(n);
    for i in 1..=n {
        let ideal = chain[i - 1];
        let r = &coeffs[i - 1];
        let values: Vec<Rat> = (0..lat.len())
            .map(|x| {
                if lat.leq(x, ideal) {
                    rone()
                } else {
                    r.clone()
                }
            })
            .collect();
        family.push(DeltaPoint {
            host: Arc::clone(lat.poset()),
            values,
        });
    }
    debug_assert!(family
        .iter()
        .all(|f| check_membership(&f.host, &f.values).is_ok()));
    Ok(family)
}

/// Checks irredundance of the family's meet: dropping any single member
/// must change it. (Equality against an arbitrary proper subset reduces to
/// these checks because meets shrink as sets grow.)
pub fn meet_irredundant(lat: &Lattice, points: &[DeltaPoint]) -> Result<Option<usize>, DeltaError> {
    assert!(!points.is_empty());
    let mut total = points[0].clone();
    for p in &points[1..] {
        total = lat.delta_meet(&total, p)?;
    }
    if points.len() == 1 {
        // the meet of the empty family is the top point
        let top = lat.delta_vertex(lat.top());
        return Ok(if total == top { Some(0) } else { None });
    }
    for skip in 0..points.len() {
        let mut acc: Option<DeltaPoint> = None;
        for (i, p) in points.iter().enumerate() {
            if i == skip {
                continue;
            }
            acc = Some(match acc {
                None => p.clone(),
                Some(a) => lat.delta_meet(&a, p)?,
            });
        }
        if acc.expect("len >= 2") == total {
            return Ok(Some(skip));
        }
    }
    Ok(None)
}

/// Recovers from a verified meet-irredundant family of size `n` a strictly
/// increasing chain `0 < x_1 < x_1 v x_2 < ... ` of length `n` in the host:
/// pick for each member a separating element where it is strictly below the
/// others, order by the attained separation values (descending), and take
/// running joins.
pub fn extract_chain(lat: &Lattice, points: &[DeltaPoint]) -> Result<Vec<ElemId>, DeltaError> {
    assert!(!points.is_empty());
    for p in points {
        if !same_host(p.host(), lat.poset()) {
            return Err(DeltaError::HostMismatch);
        }
    }
    if let Some(index) = meet_irredundant(lat, points)? {
        return Err(DeltaError::NotMeetIrredundant { index });
    }
    let n = points.len();
    let mut picks: Vec<(usize, ElemId)> = Vec::with_capacity(n);
    for (i, f) in points.iter().enumerate() {
        // meet of the other members; the empty meet is the top vertex
        let mut rest = lat.delta_vertex(lat.top());
        for (j, g) in points.iter().enumerate() {
            if j != i {
                rest = lat.delta_meet(&rest, g)?;
            }
        }
        let x = (0..lat.len())
            .find(|&x| f.value(x) < rest.value(x))
            .expect("irredundance provides a separating element");
        picks.push((i, x));
    }
    // descending separation values, ties broken by member index
    picks.sort_by(|(i, xi), (j, xj)| {
        points[*j]
            .value(*xj)
            .cmp(points[*i].value(*xi))
            .then(i.cmp(j))
    });
    let mut chain = vec![lat.bottom()];
    let mut cur = lat.bottom();
    for &(_, x) in &picks {
        let next = lat.join(cur, x);
        assert!(
            lat.poset().lt(cur, next),
            "separating elements always advance the running join"
        );
        chain.push(next);
        cur = next;
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::rat::rat;

    fn m3_point(vals: [(i64, i64); 5]) -> Result<DeltaPoint, DeltaError> {
        let l = presets::m3();
        let values = vals.iter().map(|&(p, q)| rat(p, q)).collect();
        DeltaPoint::new(Arc::clone(l.poset()), values)
    }

    #[test]
    fn vertex_membership() {
        let l = presets::m3();
        let a = l.index_of("a").unwrap();
        let v = l.delta_vertex(a);
        assert!(check_membership(l.poset(), v.values()).is_ok());
        assert_eq!(v.value(0), &rone());
        assert_eq!(v.value(a), &rone());
    }

    #[test]
    fn membership_failures() {
        // level set {0, a, b} is not principal
        let err = m3_point([(1, 1), (1, 1), (1, 1), (0, 1), (0, 1)]).unwrap_err();
        match err {
            DeltaError::NotAPoint(fail) => {
                assert_eq!(fail.threshold, rone());
                assert_eq!(fail.level_set, vec![0, 1, 2]);
            }
            other => panic!("unexpected {other:?}"),
        }
        // value 1 never attained: the level set at 1 is empty
        let err = m3_point([(1, 2), (0, 1), (0, 1), (0, 1), (0, 1)]).unwrap_err();
        match err {
            DeltaError::NotAPoint(fail) => {
                assert_eq!(fail.threshold, rone());
                assert!(fail.level_set.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
        // out-of-range value
        assert!(matches!(
            m3_point([(1, 1), (3, 2), (0, 1), (0, 1), (0, 1)]),
            Err(DeltaError::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn vertices_embed_the_lattice() {
        for l in [presets::m3(), presets::n5(), presets::boolean(3)] {
            for x in 0..l.len() {
                for y in 0..l.len() {
                    let (vx, vy) = (l.delta_vertex(x), l.delta_vertex(y));
                    let m = l.delta_meet(&vx, &vy).unwrap();
                    let j = l.delta_join(&vx, &vy).unwrap();
                    assert_eq!(m, l.delta_vertex(l.meet(x, y)));
                    assert_eq!(j, l.delta_vertex(l.join(x, y)));
                }
            }
        }
    }

    #[test]
    fn join_of_half_vertices_is_top() {
        let l = presets::m3();
        let f = m3_point([(1, 1), (1, 1), (1, 2), (1, 2), (1, 2)]).unwrap();
        let g = m3_point([(1, 1), (1, 2), (1, 1), (1, 2), (1, 2)]).unwrap();
        let j = l.delta_join(&f, &g).unwrap();
        assert!(j.values().iter().all(|v| *v == rone()));
        let m = l.delta_meet(&f, &g).unwrap();
        let expect = m3_point([(1, 1), (1, 2), (1, 2), (1, 2), (1, 2)]).unwrap();
        assert_eq!(m, expect);
    }

    #[test]
    fn level_generators() {
        let l = presets::m3();
        let a = l.index_of("a").unwrap();
        // (1/2) down-a + (1/2) down-1
        let f = m3_point([(1, 1), (1, 1), (1, 2), (1, 2), (1, 2)]).unwrap();
        assert_eq!(f.level_generator(&rat(3, 4)).unwrap(), a);
        assert_eq!(f.level_generator(&rat(1, 2)).unwrap(), l.top());
        assert!(f.level_generator(&rzero()).is_err());
        assert!(f.level_generator(&rat(5, 4)).is_err());
        // vertices generate themselves at every threshold
        for x in 0..l.len() {
            let v = l.delta_vertex(x);
            for t in [rat(1, 3), rat(1, 2), rone()] {
                assert_eq!(v.level_generator(&t).unwrap(), x);
            }
        }
    }

    #[test]
    fn chain_form_round_trip() {
        let l = presets::m3();
        let a = l.index_of("a").unwrap();
        let f = m3_point([(1, 1), (1, 1), (1, 2), (1, 2), (1, 2)]).unwrap();
        let cf = f.chain_form();
        assert_eq!(cf.terms, vec![(a, rat(1, 2)), (l.top(), rat(1, 2))]);
        let back = cf.to_point(Arc::clone(l.poset())).unwrap();
        assert_eq!(back, f);

        // vertex has a single unit term
        let v = l.delta_vertex(a);
        assert_eq!(v.chain_form().terms, vec![(a, rone())]);

        // sampled round trips
        for seed in 0..200 {
            let p = sample_point(l.poset(), seed, 16);
            assert_eq!(p.chain_form().to_point(Arc::clone(l.poset())).unwrap(), p);
        }
    }

    #[test]
    fn chain_form_validation() {
        let l = presets::m3();
        let (a, b) = (l.index_of("a").unwrap(), l.index_of("b").unwrap());
        let bad = ChainForm {
            terms: vec![(a, rat(1, 2)), (b, rat(1, 2))],
        };
        assert!(matches!(
            bad.to_point(Arc::clone(l.poset())),
            Err(DeltaError::InvalidChainForm(_))
        ));
        let bad_sum = ChainForm {
            terms: vec![(a, rat(1, 2))],
        };
        assert!(bad_sum.to_point(Arc::clone(l.poset())).is_err());
    }

    #[test]
    fn contract_homotopy() {
        let l = presets::m3();
        let a = l.index_of("a").unwrap();
        let f = l.delta_vertex(a);
        assert_eq!(f.contract_toward(l.top(), &rzero()).unwrap(), f);
        assert_eq!(
            f.contract_toward(l.top(), &rone()).unwrap(),
            l.delta_vertex(l.top())
        );
        let half = f.contract_toward(l.top(), &rat(1, 2)).unwrap();
        let expect = m3_point([(1, 1), (1, 1), (1, 2), (1, 2), (1, 2)]).unwrap();
        assert_eq!(half, expect);
        // interior elements are not comparable to everything
        assert!(matches!(
            f.contract_toward(a, &rat(1, 2)),
            Err(DeltaError::NotComparable { .. })
        ));
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let l = presets::n5();
        let p1 = sample_point(l.poset(), 1, 8);
        let p2 = sample_point(l.poset(), 1, 8);
        assert_eq!(p1, p2);
        for seed in 0..100 {
            let p = sample_point(l.poset(), seed, 8);
            assert!(check_membership(l.poset(), p.values()).is_ok());
        }
        let single = presets::chain(1);
        let p = sample_point(single.poset(), 7, 4);
        assert_eq!(p.value(0), &rone());
    }

    #[test]
    fn generated_sublattice_of_vertices() {
        let l = presets::m3();
        let gens: Vec<DeltaPoint> = ["a", "b", "c"]
            .iter()
            .map(|n| l.delta_vertex(l.index_of(n).unwrap()))
            .collect();
        let (abs, embed) = generated_sublattice(&l, &gens).unwrap();
        assert_eq!(abs.len(), 5);
        assert!(abs.is_isomorphic_to(&presets::m3()));
        assert_eq!(embed.len(), 5);

        let single = generated_sublattice(&l, &gens[..1]).unwrap().0;
        assert_eq!(single.len(), 1);

        let two = vec![l.delta_vertex(l.bottom()), l.delta_vertex(l.top())];
        let (two_lat, _) = generated_sublattice(&l, &two).unwrap();
        assert!(two_lat.is_isomorphic_to(&presets::chain(2)));
    }

    #[test]
    fn breadth_family_and_extract_chain() {
        let l = presets::m3();
        let a = l.index_of("a").unwrap();
        let chain = vec![l.bottom(), a, l.top()];
        let coeffs = vec![rat(1, 2), rat(1, 4)];
        let family = breadth_family(&l, &chain, &coeffs).unwrap();
        assert_eq!(family.len(), 2);
        assert_eq!(
            family[0],
            m3_point([(1, 1), (1, 2), (1, 2), (1, 2), (1, 2)]).unwrap()
        );
        assert_eq!(
            family[1],
            m3_point([(1, 1), (1, 1), (1, 4), (1, 4), (1, 4)]).unwrap()
        );
        assert_eq!(meet_irredundant(&l, &family).unwrap(), None);
        let rec = extract_chain(&l, &family).unwrap();
        assert_eq!(rec, chain);

        // singleton below the top
        let single = vec![family[0].clone()];
        let rec = extract_chain(&l, &single).unwrap();
        assert_eq!(rec.len(), 2);

        // a redundant family errors with the offending index
        let f = family[0].clone();
        let g = family[1].clone();
        let fg = l.delta_meet(&f, &g).unwrap();
        let err = extract_chain(&l, &[f, fg, g]).unwrap_err();
        assert!(matches!(err, DeltaError::NotMeetIrredundant { .. }));
    }

    #[test]
    fn breadth_family_validation() {
        let l = presets::m3();
        let a = l.index_of("a").unwrap();
        assert!(breadth_family(&l, &[a, l.top()], &[rat(1, 2)]).is_err());
        assert!(breadth_family(&l, &[l.bottom(), a], &[rat(1, 2), rat(1, 4)]).is_err());
        assert!(breadth_family(&l, &[l.bottom(), a, l.top()], &[rat(1, 4), rat(1, 2)]).is_err());
    }

    #[test]
    fn host_mismatch() {
        let l = presets::m3();
        let other = presets::n5();
        let f = l.delta_vertex(0);
        let g = other.delta_vertex(0);
        assert!(matches!(l.delta_meet(&f, &g), Err(DeltaError::HostMismatch)));
        assert!(matches!(l.delta_join(&f, &g), Err(DeltaError::HostMismatch)));
    }
}
