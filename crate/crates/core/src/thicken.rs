//! Thickened cubes over a closure system: the maps `f: X -> [0,1]` such
//! that for every threshold `t`, the level set at `t - c` contains the
//! closure of the level set at `t`. For `c` in (0,1) this relaxes the
//! order-complex presentation to a full-dimensional lattice which is never
//! distributive and, over the three-point diamond presentation, contains
//! pentagons but no diamonds.
//!
//! Meets are pointwise minima. Joins start from the pointwise maximum and
//! repair violations by raising the offending coordinate to the forced
//! value `t - c`; every raise holds in any upper bound and the values live
//! on a finite grid, so the fixpoint is the least upper bound.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::closure::ClosureSystem;
use crate::rat::{in_unit_interval, rone, rzero, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThickenError {
    #[error("thickening constant must lie strictly between 0 and 1, got {0}")]
    ConstantOutOfRange(String),
    #[error("value {value} at `{elem}` lies outside [0,1]")]
    ValueOutOfRange { elem: String, value: String },
    #[error("{side} operand is not a member: {violation}")]
    NotMember {
        side: &'static str,
        violation: ThickViolation,
    },
    #[error("per-pair constants require z in cl(Y) and nonempty Y")]
    BadPairConstant,
    #[error("per-pair constants and the family variant cap the ground set at {0} elements")]
    GroundTooLarge(usize),
    #[error("lattice operations are not defined for the family-of-subsets variant")]
    UnsupportedVariant,
}

/// A failed thickening condition: the threshold and, for the closure
/// variants, the coordinate whose value is too small.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThickViolation {
    pub threshold: String,
    pub elem: Option<String>,
}

impl std::fmt::Display for ThickViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.elem {
            Some(e) => write!(f, "at t={} the value at `{e}` is below t - c", self.threshold),
            None => write!(
                f,
                "at t={} no family member fits between the level sets",
                self.threshold
            ),
        }
    }
}

const ENUMERATION_CAP: usize = 12;

#[derive(Debug, Clone)]
pub struct ThickenedSpace {
    system: ClosureSystem,
    c: Rat,
    /// Per-pair constants `(Y, z, c)` overriding the default for that pair.
    pairwise: Vec<(u64, usize, Rat)>,
    /// When present, membership asks the level set at `t - c` to contain
    /// some member of this family containing the level set at `t`.
    family: Option<Vec<u64>>,
}

impl ThickenedSpace {
    pub fn new(system: ClosureSystem, c: Rat) -> Result<ThickenedSpace, ThickenError> {
        if c <= rzero() || c >= rone() {
            return Err(ThickenError::ConstantOutOfRange(c.to_string()));
        }
        Ok(ThickenedSpace {
            system,
            c,
            pairwise: Vec::new(),
            family: None,
        })
    }

    /// Thickening whose constant varies with the pair `(Y, z)`; unlisted
    /// pairs use the default `c`. Membership then enumerates all subsets,
    /// so the ground set is capped.
    pub fn with_pairwise(
        system: ClosureSystem,
        c: Rat,
        pairwise: Vec<(u64, usize, Rat)>,
    ) -> Result<ThickenedSpace, ThickenError> {
        let mut space = ThickenedSpace::new(system, c)?;
        if space.system.ground_len() > ENUMERATION_CAP {
            return Err(ThickenError::GroundTooLarge(ENUMERATION_CAP));
        }
        for (y, z, cyz) in &pairwise {
            if *y == 0 || *z >= space.system.ground_len() {
                return Err(ThickenError::BadPairConstant);
            }
            if space.system.cl(*y) >> *z & 1 == 0 {
                return Err(ThickenError::BadPairConstant);
            }
            if *cyz <= rzero() || *cyz >= rone() {
                return Err(ThickenError::ConstantOutOfRange(cyz.to_string()));
            }
        }
        space.pairwise = pairwise;
        Ok(space)
    }

    /// The family-of-subsets variant: membership only, over the given raw
    /// family (the full ground set is always admitted).
    pub fn family_variant(
        system: ClosureSystem,
        mut family: Vec<u64>,
        c: Rat,
    ) -> Result<ThickenedSpace, ThickenError> {
        let mut space = ThickenedSpace::new(system, c)?;
        if space.system.ground_len() > ENUMERATION_CAP {
            return Err(ThickenError::GroundTooLarge(ENUMERATION_CAP));
        }
        family.push(space.system.full_mask());
        family.sort_unstable();
        family.dedup();
        space.family = Some(family);
        Ok(space)
    }

    pub fn system(&self) -> &ClosureSystem {
        &self.system
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }

    pub fn has_pairwise(&self) -> bool {
        !self.pairwise.is_empty()
    }

    pub fn is_family_variant(&self) -> bool {
        self.family.is_some()
    }

    fn check_range(&self, values: &[Rat]) -> Result<(), ThickenError> {
        assert_eq!(values.len(), self.system.ground_len());
        for (i, v) in values.iter().enumerate() {
            if !in_unit_interval(v) {
                return Err(ThickenError::ValueOutOfRange {
                    elem: self.system.ground()[i].to_string(),
                    value: v.to_string(),
                });
            }
        }
        Ok(())
    }

    fn level_mask(values: &[Rat], t: &Rat) -> u64 {
        values
            .iter()
            .enumerate()
            .filter(|(_, v)| *v >= t)
            .fold(0u64, |m, (i, _)| m | 1 << i)
    }

    fn thresholds(values: &[Rat]) -> Vec<Rat> {
        let mut ts: Vec<Rat> = values.iter().filter(|v| !v.is_zero()).cloned().collect();
        ts.sort();
        ts.dedup();
        ts
    }

    /// Membership check; complete because level sets only change at
    /// attained values (and, for per-pair constants, by enumerating every
    /// nonempty subset with its own constant).
    pub fn membership(&self, values: &[Rat]) -> Result<(), ThickViolation> {
        if let Some(family) = &self.family {
            for t in Self::thresholds(values) {
                let upper = Self::level_mask(values, &t);
                let floor = &t - &self.c;
                let lower = if floor <= rzero() {
                    self.system.full_mask()
                } else {
                    Self::level_mask(values, &floor)
                };
                let fits = family
                    .iter()
                    .any(|&a| a & upper == upper && lower & a == a);
                if !fits {
                    return Err(ThickViolation {
                        threshold: crate::rat::fmt_rat(&t),
                        elem: None,
                    });
                }
            }
            return Ok(());
        }
        if self.pairwise.is_empty() {
            for t in Self::thresholds(values) {
                let closed = self.system.cl(Self::level_mask(values, &t));
                let floor = &t - &self.c;
                if floor <= rzero() {
                    continue;
                }
                for z in 0..self.system.ground_len() {
                    if closed >> z & 1 == 1 && values[z] < floor {
                        return Err(ThickViolation {
                            threshold: crate::rat::fmt_rat(&t),
                            elem: Some(self.system.ground()[z].to_string()),
                        });
                    }
                }
            }
            return Ok(());
        }
        // varying constants: every nonempty subset carries its own bound
        let n = self.system.ground_len();
        for y in 1u64..(1 << n) {
            let t = (0..n)
                .filter(|i| y >> i & 1 == 1)
                .map(|i| values[i].clone())
                .min()
                .expect("nonempty subset");
            let closed = self.system.cl(y);
            for z in 0..n {
                if closed >> z & 1 == 0 {
                    continue;
                }
                let cyz = self.constant_for(y, z);
                let floor = &t - cyz;
                if floor > rzero() && values[z] < floor {
                    return Err(ThickViolation {
                        threshold: crate::rat::fmt_rat(&t),
                        elem: Some(self.system.ground()[z].to_string()),
                    });
                }
            }
        }
        Ok(())
    }

    fn constant_for(&self, y: u64, z: usize) -> &Rat {
        self.pairwise
            .iter()
            .find(|(py, pz, _)| *py == y && *pz == z)
            .map(|(_, _, c)| c)
            .unwrap_or(&self.c)
    }

    pub fn is_member(&self, values: &[Rat]) -> bool {
        self.check_range(values).is_ok() && self.membership(values).is_ok()
    }

    fn require_member(&self, values: &[Rat], side: &'static str) -> Result<(), ThickenError> {
        self.check_range(values)?;
        self.membership(values)
            .map_err(|violation| ThickenError::NotMember { side, violation })
    }

    /// Greatest lower bound: the pointwise minimum (closed by
    /// `cl(A n B) <= cl(A) n cl(B)`).
    pub fn meet(&self, f: &[Rat], g: &[Rat]) -> Result<Vec<Rat>, ThickenError> {
        if self.family.is_some() {
            return Err(ThickenError::UnsupportedVariant);
        }
        self.require_member(f, "left")?;
        self.require_member(g, "right")?;
        let out: Vec<Rat> = f.iter().zip(g).map(|(a, b)| a.min(b).clone()).collect();
        debug_assert!(self.membership(&out).is_ok());
        Ok(out)
    }

    /// Least upper bound by repair fixpoint: start at the pointwise maximum
    /// and raise any coordinate below a forced floor to that floor.
    pub fn join(&self, f: &[Rat], g: &[Rat]) -> Result<Vec<Rat>, ThickenError> {
        if self.family.is_some() {
            return Err(ThickenError::UnsupportedVariant);
        }
        self.require_member(f, "left")?;
        self.require_member(g, "right")?;
        let mut h: Vec<Rat> = f.iter().zip(g).map(|(a, b)| a.max(b).clone()).collect();
        loop {
            match self.first_repair(&h) {
                None => break,
                Some((z, floor)) => {
                    debug_assert!(h[z] < floor);
                    h[z] = floor;
                }
            }
        }
        debug_assert!(self.membership(&h).is_ok());
        Ok(h)
    }

    fn first_repair(&self, values: &[Rat]) -> Option<(usize, Rat)> {
        let n = self.system.ground_len();
        if self.pairwise.is_empty() {
            for t in Self::thresholds(values).into_iter().rev() {
                let closed = self.system.cl(Self::level_mask(values, &t));
                let floor = &t - &self.c;
                if floor <= rzero() {
                    continue;
                }
                for z in 0..n {
                    if closed >> z & 1 == 1 && values[z] < floor {
                        return Some((z, floor));
                    }
                }
            }
            return None;
        }
        for y in 1u64..(1 << n) {
            let t = (0..n)
                .filter(|i| y >> i & 1 == 1)
                .map(|i| values[i].clone())
                .min()
                .expect("nonempty subset");
            let closed = self.system.cl(y);
            for z in 0..n {
                if closed >> z & 1 == 0 {
                    continue;
                }
                let floor = &t - self.constant_for(y, z);
                if floor > rzero() && values[z] < floor {
                    return Some((z, floor));
                }
            }
        }
        None
    }
}

/// Monotone cell of a coordinate ordering: the values are weakly
/// decreasing along the permutation. Members of a common cell are closed
/// under pointwise max and min inside the thickened cube, making each cell
/// a distributive sublattice.
pub fn in_cell(perm: &[usize], values: &[Rat]) -> bool {
    perm.windows(2).all(|w| values[w[0]] >= values[w[1]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn m3_space(c: Rat) -> ThickenedSpace {
        ThickenedSpace::new(ClosureSystem::m3_presentation(), c).unwrap()
    }

    fn v(vals: [(i64, i64); 3]) -> Vec<Rat> {
        vals.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn membership_examples() {
        let s = m3_space(rat(1, 4));
        assert!(s.membership(&v([(1, 1), (3, 4), (1, 1)])).is_ok());
        let err = s.membership(&v([(1, 1), (0, 1), (1, 1)])).unwrap_err();
        assert_eq!(err.threshold, "1/1");
        assert_eq!(err.elem.as_deref(), Some("1"));
        // constant maps always belong
        for k in [(0, 1), (1, 2), (1, 1)] {
            assert!(s.membership(&v([k, k, k])).is_ok());
        }
        // c = 3/4 is allowed by the type; this map satisfies the condition
        let wide = m3_space(rat(3, 4));
        assert!(wide.membership(&v([(1, 1), (1, 4), (0, 1)])).is_ok());
    }

    #[test]
    fn constant_must_be_interior() {
        assert!(matches!(
            ThickenedSpace::new(ClosureSystem::m3_presentation(), rat(1, 1)),
            Err(ThickenError::ConstantOutOfRange(_))
        ));
        assert!(matches!(
            ThickenedSpace::new(ClosureSystem::m3_presentation(), rat(0, 1)),
            Err(ThickenError::ConstantOutOfRange(_))
        ));
    }

    #[test]
    fn join_raises_the_squeezed_coordinate() {
        let s = m3_space(rat(1, 4));
        let j = s.join(&v([(1, 1), (0, 1), (0, 1)]), &v([(0, 1), (0, 1), (1, 1)])).unwrap();
        assert_eq!(j, v([(1, 1), (3, 4), (1, 1)]));
    }

    #[test]
    fn distributivity_fails_as_computed() {
        let s = m3_space(rat(1, 4));
        let a = v([(0, 1), (1, 1), (0, 1)]);
        let b = v([(1, 1), (0, 1), (0, 1)]);
        let c = v([(0, 1), (0, 1), (1, 1)]);
        let lhs = s.meet(&a, &s.join(&b, &c).unwrap()).unwrap();
        assert_eq!(lhs, v([(0, 1), (3, 4), (0, 1)]));
        let rhs = s
            .join(&s.meet(&a, &b).unwrap(), &s.meet(&a, &c).unwrap())
            .unwrap();
        assert_eq!(rhs, v([(0, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn pentagon_data() {
        for c in [rat(1, 4), rat(1, 2), rat(3, 4)] {
            let s = m3_space(c.clone());
            let low = v([(1, 1), (0, 1), (0, 1)]);
            let mid_level = if c <= rat(1, 2) { c.clone() } else { rone() - &c };
            let high = vec![rone(), mid_level, rzero()];
            let q = v([(0, 1), (0, 1), (1, 1)]);
            assert!(s.is_member(&low) && s.is_member(&high) && s.is_member(&q));
            assert_eq!(s.join(&low, &q).unwrap(), s.join(&high, &q).unwrap());
            assert_eq!(s.meet(&low, &q).unwrap(), s.meet(&high, &q).unwrap());
        }
    }

    #[test]
    fn not_member_reported_with_side() {
        let s = m3_space(rat(1, 4));
        let bad = v([(1, 1), (0, 1), (1, 1)]);
        let ok = v([(0, 1), (0, 1), (0, 1)]);
        match s.join(&bad, &ok).unwrap_err() {
            ThickenError::NotMember { side, .. } => assert_eq!(side, "left"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pairwise_constants() {
        // relax the constant for Y = {0,1}, z = 2 only
        let sys = ClosureSystem::m3_presentation();
        let s = ThickenedSpace::with_pairwise(
            sys,
            rat(1, 4),
            vec![(0b011, 2, rat(1, 2))],
        )
        .unwrap();
        // value at 2 only needs to reach 1 - 1/2 when 0 and 1 are full
        assert!(s.membership(&v([(1, 1), (1, 1), (1, 2)])).is_ok());
        assert!(s.membership(&v([(1, 1), (1, 1), (1, 4)])).is_err());
        // other pairs still use the default
        assert!(s.membership(&v([(1, 1), (1, 2), (1, 1)])).is_err());
        assert!(s.membership(&v([(1, 1), (3, 4), (1, 1)])).is_ok());
        // joins still work and produce members
        let j = s.join(&v([(1, 1), (0, 1), (0, 1)]), &v([(0, 1), (1, 1), (0, 1)])).unwrap();
        assert!(s.membership(&j).is_ok());
    }

    #[test]
    fn family_variant_membership_only() {
        let sys = ClosureSystem::m3_presentation();
        // family: singletons and the full set, but NOT the empty set
        let fam = vec![0b001, 0b010, 0b100];
        let s = ThickenedSpace::family_variant(sys, fam, rat(1, 4)).unwrap();
        assert!(s.membership(&v([(1, 1), (3, 4), (1, 1)])).is_ok());
        assert!(s.membership(&v([(1, 1), (0, 1), (1, 1)])).is_err());
        assert!(matches!(
            s.join(&v([(1, 1), (1, 1), (1, 1)]), &v([(1, 1), (1, 1), (1, 1)])),
            Err(ThickenError::UnsupportedVariant)
        ));
    }

    #[test]
    fn cells() {
        let perm = [0usize, 1, 2];
        assert!(in_cell(&perm, &v([(1, 1), (1, 2), (1, 2)])));
        assert!(!in_cell(&perm, &v([(0, 1), (1, 2), (1, 2)])));
    }
}
