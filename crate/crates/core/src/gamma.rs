//! Lattice-valued step functions on `[0,1]` up to finite differences,
//! with pointwise lattice operations and the cost-weighted disagreement
//! metric `d(f,g) = integral over {f != g} of c(f(t)) + c(g(t)) dt`.
//!
//! Functions are kept in right-continuous canonical form: half-open pieces
//! `[t_i, t_{i+1})` (the last piece closed), no two adjacent values equal.
//! That makes canonical equality the same as almost-everywhere equality,
//! with no stored exceptional sets.
//!
//! Over an unbounded-cost host (the flat lattice with `c(x_i) = i + 1`)
//! the metric shows its noncompact pathologies: every neighbourhood
//! contains arbitrarily wide intervals and generates unbounded
//! subsemilattices. The witness constructors build certified examples.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::Rng;
use thiserror::Error;

use crate::clat::{flat_cost, ComputableLattice, FlatElem, FlatLattice};
use crate::rat::{rone, rzero, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("pieces do not tile [0,1]: {0}")]
    BadPieces(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

/// A step function in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepFunction<E> {
    /// `0 = cuts[0] < ... < cuts[k] = 1`
    cuts: Vec<Rat>,
    /// `values[i]` on `[cuts[i], cuts[i+1])`; the last piece is closed.
    values: Vec<E>,
}

impl<E: Clone + Eq> StepFunction<E> {
    pub fn constant(value: E) -> StepFunction<E> {
        StepFunction {
            cuts: vec![rzero(), rone()],
            values: vec![value],
        }
    }

    /// Builds from `(start, end, value)` pieces that must tile `[0,1]`
    /// exactly (zero-length pieces are dropped).
    pub fn from_pieces(pieces: Vec<(Rat, Rat, E)>) -> Result<StepFunction<E>, GammaError> {
        let mut pieces: Vec<(Rat, Rat, E)> = pieces
            .into_iter()
            .filter(|(s, e, _)| s != e)
            .collect();
        pieces.sort_by(|a, b| a.0.cmp(&b.0));
        if pieces.is_empty() {
            return Err(GammaError::BadPieces("no pieces".into()));
        }
        let mut cuts = Vec::with_capacity(pieces.len() + 1);
        let mut values = Vec::with_capacity(pieces.len());
        let mut cursor = rzero();
        for (s, e, v) in pieces {
            if s != cursor {
                return Err(GammaError::BadPieces(format!(
                    "gap or overlap at {cursor}"
                )));
            }
            if e < s {
                return Err(GammaError::BadPieces(format!("piece ends before it starts at {s}")));
            }
            cuts.push(s);
            values.push(v);
            cursor = e;
        }
        if cursor != rone() {
            return Err(GammaError::BadPieces(format!(
                "pieces stop at {cursor}, not 1"
            )));
        }
        cuts.push(rone());
        Ok(StepFunction { cuts, values }.canonical())
    }

    fn canonical(mut self) -> StepFunction<E> {
        let mut i = 0;
        while i + 1 < self.values.len() {
            if self.values[i] == self.values[i + 1] {
                self.values.remove(i + 1);
                self.cuts.remove(i + 1);
            } else {
                i += 1;
            }
        }
        self
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&Rat, &Rat, &E)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (&self.cuts[i], &self.cuts[i + 1], v))
    }

    pub fn piece_count(&self) -> usize {
        self.values.len()
    }

    /// Right-continuous evaluation; `t = 1` returns the last value.
    pub fn value_at(&self, t: &Rat) -> &E {
        assert!(!t.is_negative() && *t <= rone(), "argument outside [0,1]");
        let i = match self.cuts.iter().rposition(|c| c <= t) {
            Some(i) => i.min(self.values.len() - 1),
            None => 0,
        };
        &self.values[i]
    }

    /// The eventual value as `t` approaches `s` from above, for `s` in
    /// (0,1); by right-continuity this is just the value at `s`.
    pub fn eventual_value(&self, s: &Rat) -> Result<&E, GammaError> {
        if s.is_zero() || !s.is_positive() || *s >= rone() {
            return Err(GammaError::OutOfRange(format!("{s} outside (0,1)")));
        }
        Ok(self.value_at(s))
    }

    /// Merged cut grid of two functions.
    fn refined_cuts(&self, other: &StepFunction<E>) -> Vec<Rat> {
        let mut cuts = self.cuts.clone();
        cuts.extend(other.cuts.iter().cloned());
        cuts.sort();
        cuts.dedup();
        cuts
    }

    /// Pointwise combination over the refined grid.
    pub fn zip_with<F: Fn(&E, &E) -> E>(&self, other: &StepFunction<E>, op: F) -> StepFunction<E> {
        let cuts = self.refined_cuts(other);
        let values: Vec<E> = cuts[..cuts.len() - 1]
            .iter()
            .map(|t| op(self.value_at(t), other.value_at(t)))
            .collect();
        StepFunction { cuts, values }.canonical()
    }

    /// The homotopy splice: agrees with `g` on `[0,s)` and with `f` on
    /// `[s,1]`; at `s = 0` this is `f`, at `s = 1` it is `g`.
    pub fn splice(f: &StepFunction<E>, g: &StepFunction<E>, s: &Rat) -> StepFunction<E> {
        assert!(!s.is_negative() && *s <= rone(), "splice time outside [0,1]");
        let mut pieces: Vec<(Rat, Rat, E)> = Vec::new();
        for (a, b, v) in g.pieces() {
            let end = b.min(s);
            if a < end {
                pieces.push((a.clone(), end.clone(), v.clone()));
            }
        }
        for (a, b, v) in f.pieces() {
            let start = a.max(s);
            if start < b {
                pieces.push((start.clone(), b.clone(), v.clone()));
            }
        }
        StepFunction::from_pieces(pieces).expect("splices tile the interval")
    }

    /// Replaces values on `[from, to)` by `value`.
    pub fn overwrite(&self, from: &Rat, to: &Rat, value: E) -> StepFunction<E> {
        assert!(from <= to, "empty-or-forward window required");
        let mut pieces: Vec<(Rat, Rat, E)> = Vec::new();
        for (a, b, v) in self.pieces() {
            let left_end = b.min(from).clone();
            if *a < left_end {
                pieces.push((a.clone(), left_end, v.clone()));
            }
            let right_start = a.max(to).clone();
            if right_start < *b {
                pieces.push((right_start, b.clone(), v.clone()));
            }
        }
        if from < to {
            pieces.push((from.clone(), to.clone(), value));
        }
        StepFunction::from_pieces(pieces).expect("overwrite tiles the interval")
    }
}

pub fn gamma_meet<C: ComputableLattice>(
    host: &C,
    f: &StepFunction<C::Elem>,
    g: &StepFunction<C::Elem>,
) -> StepFunction<C::Elem> {
    f.zip_with(g, |a, b| host.meet(a, b))
}

pub fn gamma_join<C: ComputableLattice>(
    host: &C,
    f: &StepFunction<C::Elem>,
    g: &StepFunction<C::Elem>,
) -> StepFunction<C::Elem> {
    f.zip_with(g, |a, b| host.join(a, b))
}

/// Exact disagreement metric for a subadditive cost bounded below by 1.
pub fn gamma_metric<E: Clone + Eq>(
    f: &StepFunction<E>,
    g: &StepFunction<E>,
    cost: &dyn Fn(&E) -> Rat,
) -> Rat {
    let cuts = f.refined_cuts(g);
    let mut total = rzero();
    for w in cuts.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let (va, vb) = (f.value_at(a), g.value_at(a));
        if va != vb {
            total += (b - a) * (cost(va) + cost(vb));
        }
    }
    total
}

pub fn gamma_homotopy<E: Clone + Eq>(
    f: &StepFunction<E>,
    g: &StepFunction<E>,
    s: &Rat,
) -> StepFunction<E> {
    StepFunction::splice(f, g, s)
}

/// Certificate for an arbitrarily wide interval inside a small ball: both
/// endpoints stay within `eps` of the base point while some member of the
/// interval sits at least `target` away. All distances are recomputed
/// exactly before returning.
#[derive(Debug, Clone)]
pub struct IntervalWitness {
    pub lower: StepFunction<FlatElem>,
    pub upper: StepFunction<FlatElem>,
    pub inner: StepFunction<FlatElem>,
    pub interval_end: Rat,
    pub d_lower: Rat,
    pub d_upper: Rat,
    pub d_inner: Rat,
}

fn base_cost_bound(r: &StepFunction<FlatElem>) -> Rat {
    let mut m = rone();
    for (_, _, v) in r.pieces() {
        m = m.max(flat_cost(v));
    }
    m
}

fn max_mid_index(r: &StepFunction<FlatElem>) -> u64 {
    r.pieces()
        .filter_map(|(_, _, v)| match v {
            FlatElem::Mid(i) => Some(*i),
            _ => None,
        })
        .max()
        .map(|i| i + 1)
        .unwrap_or(0)
}

fn rat_ceil_u64(r: &Rat) -> u64 {
    if r.is_negative() {
        return 0;
    }
    r.ceil().to_integer().to_u64().expect("witness index fits in u64")
}

/// Witnesses that the interval `[p, q]` around `r` is unbounded: `p` and
/// `q` replace `r` by bottom resp. top on a short prefix `[0, delta)` with
/// `delta = eps / 4m`, and the inner point uses a middle element expensive
/// enough to push the distance past `target`.
pub fn witness_unbounded_interval(
    r: &StepFunction<FlatElem>,
    eps: &Rat,
    target: &Rat,
) -> Result<IntervalWitness, GammaError> {
    if !eps.is_positive() {
        return Err(GammaError::OutOfRange("eps must be positive".into()));
    }
    let m = base_cost_bound(r);
    let delta = (eps / (Rat::from_integer(4.into()) * &m)).min(Rat::new(1.into(), 2.into()));
    let lower = r.overwrite(&rzero(), &delta, FlatElem::Bottom);
    let upper = r.overwrite(&rzero(), &delta, FlatElem::Top);
    let needed = rat_ceil_u64(&(target / &delta));
    let idx = needed.max(max_mid_index(r));
    let inner = r.overwrite(&rzero(), &delta, FlatElem::Mid(idx));
    let witness = IntervalWitness {
        d_lower: gamma_metric(&lower, r, &flat_cost),
        d_upper: gamma_metric(&upper, r, &flat_cost),
        d_inner: gamma_metric(&inner, r, &flat_cost),
        lower,
        upper,
        inner,
        interval_end: delta,
    };
    debug_assert!(witness.d_lower < *eps && witness.d_upper < *eps);
    debug_assert!(witness.d_inner >= *target);
    Ok(witness)
}

/// Certificate that small balls generate unbounded join-subsemilattices:
/// many near copies of the base point whose join is far away. The dual
/// flag builds the meet variant.
#[derive(Debug, Clone)]
pub struct SemilatticeWitness {
    pub parts: Vec<StepFunction<FlatElem>>,
    pub combined: StepFunction<FlatElem>,
    pub max_part_distance: Rat,
    pub combined_distance: Rat,
    pub dual: bool,
}

pub fn witness_unbounded_join(
    r: &StepFunction<FlatElem>,
    eps: &Rat,
    target: &Rat,
) -> Result<SemilatticeWitness, GammaError> {
    witness_semilattice(r, eps, target, false)
}

pub fn witness_unbounded_meet(
    r: &StepFunction<FlatElem>,
    eps: &Rat,
    target: &Rat,
) -> Result<SemilatticeWitness, GammaError> {
    witness_semilattice(r, eps, target, true)
}

fn witness_semilattice(
    r: &StepFunction<FlatElem>,
    eps: &Rat,
    target: &Rat,
    dual: bool,
) -> Result<SemilatticeWitness, GammaError> {
    if !eps.is_positive() {
        return Err(GammaError::OutOfRange("eps must be positive".into()));
    }
    let host = FlatLattice;
    let m = base_cost_bound(r);
    let lambda = (eps / (Rat::from_integer(4.into()) * &m)).min(Rat::new(1.into(), 2.into()));
    let filler = if dual { FlatElem::Top } else { FlatElem::Bottom };
    let base = r.overwrite(&rzero(), &lambda, filler);
    // the middle element must be expensive enough that a full copy of it on
    // [0, lambda) is `target` away, yet each 1/n^2 sliver stays near `base`
    let n = rat_ceil_u64(&(target / &lambda))
        .max(2)
        .max(max_mid_index(r) + 1);
    if n > 2_000 {
        return Err(GammaError::OutOfRange(format!(
            "witness needs {} parts; lower the target or raise eps",
            n * n
        )));
    }
    let x = FlatElem::Mid(n - 1);
    let slots = n * n;
    let width = &lambda / Rat::from_integer((slots as i64).into());
    let mut parts = Vec::with_capacity(slots as usize);
    for i in 0..slots {
        let from = &width * Rat::from_integer((i as i64).into());
        let to = &width * Rat::from_integer((i as i64 + 1).into());
        parts.push(base.overwrite(&from, &to, x));
    }
    let combined = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| {
        if dual {
            gamma_meet(&host, &acc, p)
        } else {
            gamma_join(&host, &acc, p)
        }
    });
    let max_part_distance = parts
        .iter()
        .map(|p| gamma_metric(p, r, &flat_cost))
        .max()
        .expect("at least one part");
    let combined_distance = gamma_metric(&combined, r, &flat_cost);
    debug_assert!(max_part_distance < *eps);
    debug_assert!(combined_distance >= *target);
    Ok(SemilatticeWitness {
        parts,
        combined,
        max_part_distance,
        combined_distance,
        dual,
    })
}

/// A deterministic random step function over the flat lattice.
pub fn sample_step(
    rng: &mut StdRng,
    max_pieces: usize,
    max_mid: u64,
    denominator: u64,
) -> StepFunction<FlatElem> {
    let pieces = rng.random_range(1..=max_pieces.max(1));
    let mut cuts: Vec<u64> = Vec::new();
    while cuts.len() + 1 < pieces {
        let c = rng.random_range(1..denominator);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    let mut bounds: Vec<Rat> = vec![rzero()];
    bounds.extend(
        cuts.iter()
            .map(|&c| Rat::new((c as i64).into(), (denominator as i64).into())),
    );
    bounds.push(rone());
    let mut spans = Vec::with_capacity(pieces);
    for w in bounds.windows(2) {
        let v = match rng.random_range(0..=max_mid + 1) {
            0 => FlatElem::Bottom,
            k if k == max_mid + 1 => FlatElem::Top,
            k => FlatElem::Mid(k - 1),
        };
        spans.push((w[0].clone(), w[1].clone(), v));
    }
    StepFunction::from_pieces(spans).expect("spans tile the interval")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use rand::SeedableRng;

    fn xf(i: u64) -> FlatElem {
        FlatElem::Mid(i)
    }

    #[test]
    fn canonical_form_merges() {
        let f = StepFunction::from_pieces(vec![
            (rzero(), rat(1, 2), xf(1)),
            (rat(1, 2), rone(), xf(1)),
        ])
        .unwrap();
        assert_eq!(f, StepFunction::constant(xf(1)));
        assert_eq!(f.piece_count(), 1);
    }

    #[test]
    fn bad_tilings_rejected() {
        assert!(StepFunction::from_pieces(vec![(rzero(), rat(1, 2), xf(1))]).is_err());
        assert!(StepFunction::from_pieces(vec![
            (rzero(), rat(2, 3), xf(1)),
            (rat(1, 3), rone(), xf(2)),
        ])
        .is_err());
        let empty: Vec<(Rat, Rat, FlatElem)> = vec![];
        assert!(StepFunction::from_pieces(empty).is_err());
    }

    #[test]
    fn pointwise_ops() {
        let host = FlatLattice;
        let f = StepFunction::constant(xf(1));
        let g = StepFunction::constant(xf(2));
        assert_eq!(gamma_join(&host, &f, &g), StepFunction::constant(FlatElem::Top));
        assert_eq!(gamma_join(&host, &f, &f), f);
        let h = StepFunction::from_pieces(vec![
            (rzero(), rat(1, 2), xf(1)),
            (rat(1, 2), rone(), xf(2)),
        ])
        .unwrap();
        let expected = StepFunction::from_pieces(vec![
            (rzero(), rat(1, 2), xf(1)),
            (rat(1, 2), rone(), FlatElem::Bottom),
        ])
        .unwrap();
        assert_eq!(gamma_meet(&host, &h, &f), expected);
    }

    #[test]
    fn metric_examples() {
        let f = StepFunction::constant(xf(1));
        assert_eq!(gamma_metric(&f, &f, &flat_cost), rzero());
        let g = StepFunction::constant(xf(2));
        // costs 2 and 3 over the whole interval
        assert_eq!(gamma_metric(&f, &g, &flat_cost), rat(5, 1));
        let h = f.overwrite(&rzero(), &rat(1, 4), FlatElem::Bottom);
        assert_eq!(gamma_metric(&f, &h, &flat_cost), rat(3, 4));
    }

    #[test]
    fn homotopy_endpoints_and_middle() {
        let f = StepFunction::constant(xf(1));
        let g = StepFunction::constant(xf(2));
        assert_eq!(gamma_homotopy(&f, &g, &rzero()), f);
        assert_eq!(gamma_homotopy(&f, &g, &rone()), g);
        let mid = gamma_homotopy(&f, &g, &rat(1, 2));
        let expected = StepFunction::from_pieces(vec![
            (rzero(), rat(1, 2), xf(2)),
            (rat(1, 2), rone(), xf(1)),
        ])
        .unwrap();
        assert_eq!(mid, expected);
    }

    #[test]
    fn eventual_values() {
        let f = StepFunction::from_pieces(vec![
            (rzero(), rat(1, 2), xf(1)),
            (rat(1, 2), rone(), xf(2)),
        ])
        .unwrap();
        assert_eq!(f.eventual_value(&rat(1, 4)).unwrap(), &xf(1));
        assert_eq!(f.eventual_value(&rat(1, 2)).unwrap(), &xf(2));
        assert!(f.eventual_value(&rone()).is_err());
        assert!(f.eventual_value(&rzero()).is_err());
        let c = StepFunction::constant(xf(3));
        for s in [rat(1, 3), rat(2, 3)] {
            assert_eq!(c.eventual_value(&s).unwrap(), &xf(3));
        }
    }

    #[test]
    fn eventual_value_is_a_homomorphism_on_samples() {
        let host = FlatLattice;
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let f = sample_step(&mut rng, 4, 5, 12);
            let g = sample_step(&mut rng, 4, 5, 12);
            let j = gamma_join(&host, &f, &g);
            let m = gamma_meet(&host, &f, &g);
            for s in [rat(1, 5), rat(1, 2), rat(7, 9)] {
                let (fs, gs) = (f.eventual_value(&s).unwrap(), g.eventual_value(&s).unwrap());
                assert_eq!(j.eventual_value(&s).unwrap(), &host.join(fs, gs));
                assert_eq!(m.eventual_value(&s).unwrap(), &host.meet(fs, gs));
            }
        }
    }

    #[test]
    fn interval_witness_verifies() {
        let r = StepFunction::constant(xf(1));
        let w = witness_unbounded_interval(&r, &rat(1, 10), &rat(10, 1)).unwrap();
        assert!(w.d_lower < rat(1, 10));
        assert!(w.d_upper < rat(1, 10));
        assert!(w.d_inner >= rat(10, 1));
        // the inner point lies in the interval
        let host = FlatLattice;
        assert_eq!(gamma_join(&host, &w.lower, &w.inner), w.inner);
        assert_eq!(gamma_meet(&host, &w.upper, &w.inner), w.inner);
        // zero target is satisfied trivially but still verified
        let w0 = witness_unbounded_interval(&r, &rat(2, 1), &rzero()).unwrap();
        assert!(w0.d_inner >= rzero());
    }

    #[test]
    fn join_witness_verifies() {
        let r = StepFunction::constant(FlatElem::Bottom);
        let w = witness_unbounded_join(&r, &rat(1, 10), &rat(5, 1)).unwrap();
        assert!(w.max_part_distance < rat(1, 10));
        assert!(w.combined_distance >= rat(5, 1));
        let w = witness_unbounded_meet(&StepFunction::constant(FlatElem::Top), &rat(1, 10), &rat(5, 1))
            .unwrap();
        assert!(w.max_part_distance < rat(1, 10));
        assert!(w.combined_distance >= rat(5, 1));
    }

    #[test]
    fn canonicalization_is_metric_invariant() {
        // two names for the same class have distance zero and compare equal
        let f = StepFunction::from_pieces(vec![
            (rzero(), rat(1, 3), xf(2)),
            (rat(1, 3), rone(), xf(2)),
        ])
        .unwrap();
        let g = StepFunction::constant(xf(2));
        assert_eq!(f, g);
        assert_eq!(gamma_metric(&f, &g, &flat_cost), rzero());
    }
}
