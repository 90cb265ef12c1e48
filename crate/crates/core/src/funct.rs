//! Functorial maps between order complexes, and the product isomorphism.
//!
//! Covariantly, an isotone map `h: P -> Q` pushes a point forward by
//! mapping its chain form through `h`; equivalently the image value at `y`
//! is the maximum of `f(x)` over `h(x) >= y`. Contravariantly, a map whose
//! principal-ideal preimages are principal pulls points back by
//! composition; pullbacks always respect meets and the top but may break
//! joins.

use std::sync::Arc;

use thiserror::Error;

use crate::delta::{same_host, DeltaPoint};
use crate::poset::{MapError, PosetMap, ProductPoset};
use crate::rat::{rone, rzero, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("{0}")]
    Map(#[from] MapError),
    #[error("point lives over the wrong host for this map")]
    HostMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// Pushforward along an isotone map: the image of a convex combination of
/// vertex points is the same combination of the image vertices.
pub fn covariant_map(h: &PosetMap, f: &DeltaPoint) -> Result<DeltaPoint, FunctorError> {
    h.check_isotone()?;
    if !same_host(f.host(), &h.dom) {
        return Err(FunctorError::HostMismatch);
    }
    let values: Vec<Rat> = (0..h.cod.len())
        .map(|y| {
            (0..h.dom.len())
                .filter(|&x| h.cod.leq(y, h.apply(x)))
                .map(|x| f.value(x).clone())
                .max()
                .unwrap_or_else(rzero)
        })
        .collect();
    Ok(DeltaPoint::new(Arc::clone(&h.cod), values).expect("images of points are points"))
}

/// Pullback along a map with principal preimages of principal ideals:
/// composition with `h`.
pub fn contravariant_map(h: &PosetMap, f: &DeltaPoint) -> Result<DeltaPoint, FunctorError> {
    h.preimage_generators()?; // verifies the precondition
    if !same_host(f.host(), &h.cod) {
        return Err(FunctorError::HostMismatch);
    }
    let values: Vec<Rat> = (0..h.dom.len())
        .map(|x| f.value(h.apply(x)).clone())
        .collect();
    Ok(DeltaPoint::new(Arc::clone(&h.dom), values).expect("pullbacks of points are points"))
}

pub fn functor_map(
    h: &PosetMap,
    f: &DeltaPoint,
    variance: Variance,
) -> Result<DeltaPoint, FunctorError> {
    match variance {
        Variance::Covariant => covariant_map(h, f),
        Variance::Contravariant => contravariant_map(h, f),
    }
}

/// The isomorphism of complexes over a product poset: a pair of points maps
/// to `f(x, y) = fP(x) ^ fQ(y)`.
pub fn product_point(
    prod: &ProductPoset,
    fp: &DeltaPoint,
    fq: &DeltaPoint,
) -> Result<DeltaPoint, FunctorError> {
    if !same_host(fp.host(), &prod.left) || !same_host(fq.host(), &prod.right) {
        return Err(FunctorError::HostMismatch);
    }
    let values: Vec<Rat> = (0..prod.poset.len())
        .map(|k| {
            let (i, j) = prod.split_index(k);
            fp.value(i).min(fq.value(j)).clone()
        })
        .collect();
    Ok(DeltaPoint::new(Arc::clone(&prod.poset), values).expect("products of points are points"))
}

/// Inverse of [`product_point`]: evaluate along the axes through any pair
/// where the point attains 1 (the generator of its top level set).
pub fn product_split(
    prod: &ProductPoset,
    f: &DeltaPoint,
) -> Result<(DeltaPoint, DeltaPoint), FunctorError> {
    if !same_host(f.host(), &prod.poset) {
        return Err(FunctorError::HostMismatch);
    }
    let peak = f
        .level_generator(&rone())
        .expect("points attain 1 somewhere");
    let (p, q) = prod.split_index(peak);
    let left: Vec<Rat> = (0..prod.left.len())
        .map(|x| f.value(prod.pair_index(x, q)).clone())
        .collect();
    let right: Vec<Rat> = (0..prod.right.len())
        .map(|y| f.value(prod.pair_index(p, y)).clone())
        .collect();
    let fp = DeltaPoint::new(Arc::clone(&prod.left), left).expect("axis slices are points");
    let fq = DeltaPoint::new(Arc::clone(&prod.right), right).expect("axis slices are points");
    Ok((fp, fq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::sample_points;
    use crate::lattice::Lattice;
    use crate::poset::Poset;
    use crate::presets;
    use crate::rat::rat;

    #[test]
    fn covariant_sends_vertices_to_vertices() {
        let m3 = presets::m3();
        let c2 = presets::chain(2);
        let h = PosetMap::from_named_pairs(
            Arc::clone(m3.poset()),
            Arc::clone(c2.poset()),
            &[("0", "0"), ("c", "0"), ("a", "1"), ("b", "1"), ("1", "1")],
        )
        .unwrap();
        for x in 0..m3.len() {
            let img = covariant_map(&h, &m3.delta_vertex(x)).unwrap();
            assert_eq!(img, c2.delta_vertex(h.apply(x)));
        }
    }

    #[test]
    fn covariant_requires_isotone() {
        let c2 = presets::chain(2);
        let h = PosetMap::from_named_pairs(
            Arc::clone(c2.poset()),
            Arc::clone(c2.poset()),
            &[("0", "1"), ("1", "0")],
        )
        .unwrap();
        let err = covariant_map(&h, &c2.delta_vertex(0)).unwrap_err();
        assert!(matches!(err, FunctorError::Map(MapError::NotIsotone { .. })));
    }

    #[test]
    fn covariant_preserves_ops_when_the_map_does() {
        // coordinate projection of the square respects joins and meets
        let b2 = presets::boolean(2);
        let c2 = presets::chain(2);
        let h = PosetMap::from_named_pairs(
            Arc::clone(b2.poset()),
            Arc::clone(c2.poset()),
            &[("00", "0"), ("01", "0"), ("10", "1"), ("11", "1")],
        )
        .unwrap();
        let pts = sample_points(b2.poset(), 5, 40, 8);
        for fg in pts.chunks(2) {
            let [f, g] = fg else { break };
            let (hf, hg) = (
                covariant_map(&h, f).unwrap(),
                covariant_map(&h, g).unwrap(),
            );
            let j = b2.delta_join(f, g).unwrap();
            let m = b2.delta_meet(f, g).unwrap();
            assert_eq!(covariant_map(&h, &j).unwrap(), c2.delta_join(&hf, &hg).unwrap());
            assert_eq!(covariant_map(&h, &m).unwrap(), c2.delta_meet(&hf, &hg).unwrap());
        }
    }

    /// The five-element sublattice `{(i,j,0)} + {(1,1,1)}` of the cube.
    fn counterexample_maps() -> (Lattice, Lattice, PosetMap) {
        let q = presets::boolean(3);
        let p = Poset::from_named_covers(
            &["000", "100", "010", "110", "111"],
            &[("000", "100"), ("000", "010"), ("100", "110"), ("010", "110"), ("110", "111")],
        )
        .unwrap();
        let p = Lattice::from_poset(p).unwrap();
        let pairs: Vec<(&str, &str)> = ["000", "100", "010", "110", "111"]
            .iter()
            .map(|&n| (n, n))
            .collect();
        let h = PosetMap::from_named_pairs(
            Arc::clone(p.poset()),
            Arc::clone(q.poset()),
            &pairs,
        )
        .unwrap();
        (p, q, h)
    }

    #[test]
    fn contravariant_need_not_preserve_joins() {
        let (p, q, h) = counterexample_maps();
        let v101 = q.delta_vertex(q.index_of("101").unwrap());
        let v011 = q.delta_vertex(q.index_of("011").unwrap());
        let pull_then_join = p
            .delta_join(
                &contravariant_map(&h, &v101).unwrap(),
                &contravariant_map(&h, &v011).unwrap(),
            )
            .unwrap();
        assert_eq!(pull_then_join, p.delta_vertex(p.index_of("110").unwrap()));
        let join_then_pull =
            contravariant_map(&h, &q.delta_join(&v101, &v011).unwrap()).unwrap();
        assert_eq!(join_then_pull, p.delta_vertex(p.index_of("111").unwrap()));
        assert_ne!(pull_then_join, join_then_pull);
    }

    #[test]
    fn contravariant_preserves_meets_and_top() {
        let (p, q, h) = counterexample_maps();
        let pts = sample_points(q.poset(), 9, 60, 8);
        for fg in pts.chunks(2) {
            let [f, g] = fg else { break };
            let lhs = contravariant_map(&h, &q.delta_meet(f, g).unwrap()).unwrap();
            let rhs = p
                .delta_meet(
                    &contravariant_map(&h, f).unwrap(),
                    &contravariant_map(&h, g).unwrap(),
                )
                .unwrap();
            assert_eq!(lhs, rhs);
        }
        let top = q.delta_vertex(q.top());
        assert_eq!(
            contravariant_map(&h, &top).unwrap(),
            p.delta_vertex(p.top())
        );
    }

    #[test]
    fn contravariant_requires_principal_preimages() {
        let b2 = presets::boolean(2);
        let c2 = presets::chain(2);
        let h = PosetMap::from_named_pairs(
            Arc::clone(b2.poset()),
            Arc::clone(c2.poset()),
            &[("00", "0"), ("10", "0"), ("01", "0"), ("11", "1")],
        )
        .unwrap();
        let err = contravariant_map(&h, &c2.delta_vertex(0)).unwrap_err();
        assert!(matches!(
            err,
            FunctorError::Map(MapError::PreimageNotPrincipal { .. })
        ));
    }

    #[test]
    fn product_round_trip_two_chains() {
        let c2 = presets::chain(2);
        let prod = ProductPoset::new(Arc::clone(c2.poset()), Arc::clone(c2.poset()));
        let fp = DeltaPoint::new(Arc::clone(c2.poset()), vec![rone(), rat(1, 3)]).unwrap();
        let fq = DeltaPoint::new(Arc::clone(c2.poset()), vec![rone(), rat(2, 3)]).unwrap();
        let f = product_point(&prod, &fp, &fq).unwrap();
        assert_eq!(f.value(prod.pair_index(0, 0)), &rone());
        assert_eq!(f.value(prod.pair_index(1, 0)), &rat(1, 3));
        assert_eq!(f.value(prod.pair_index(0, 1)), &rat(2, 3));
        assert_eq!(f.value(prod.pair_index(1, 1)), &rat(1, 3));
        let (gp, gq) = product_split(&prod, &f).unwrap();
        assert_eq!(gp, fp);
        assert_eq!(gq, fq);
    }

    #[test]
    fn vertices_pair_to_vertices() {
        let (p, q) = (presets::m3(), presets::n5());
        let prod = ProductPoset::new(Arc::clone(p.poset()), Arc::clone(q.poset()));
        for x in 0..p.len() {
            for y in 0..q.len() {
                let f = product_point(&prod, &p.delta_vertex(x), &q.delta_vertex(y)).unwrap();
                let vertex = DeltaPoint::vertex(Arc::clone(&prod.poset), prod.pair_index(x, y));
                assert_eq!(f, vertex);
            }
        }
    }
}
