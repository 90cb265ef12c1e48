//! Computable lattices: meet/join/order given as total functions rather
//! than tables, for parametric carriers (the rational unit interval and
//! square) and the infinite flat lattice with countably many incomparable
//! middle elements. No enumeration is ever attempted on these.

use serde::{Deserialize, Serialize};

use crate::rat::{rone, rzero, Rat};

pub trait ComputableLattice {
    type Elem: Clone + Eq + std::hash::Hash + std::fmt::Debug;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// The rational unit interval under min/max.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnitInterval;

impl ComputableLattice for UnitInterval {
    type Elem = Rat;

    fn leq(&self, a: &Rat, b: &Rat) -> bool {
        a <= b
    }

    fn meet(&self, a: &Rat, b: &Rat) -> Rat {
        a.min(b).clone()
    }

    fn join(&self, a: &Rat, b: &Rat) -> Rat {
        a.max(b).clone()
    }
}

/// The rational unit square under componentwise operations.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnitSquare;

impl ComputableLattice for UnitSquare {
    type Elem = (Rat, Rat);

    fn leq(&self, a: &(Rat, Rat), b: &(Rat, Rat)) -> bool {
        a.0 <= b.0 && a.1 <= b.1
    }

    fn meet(&self, a: &(Rat, Rat), b: &(Rat, Rat)) -> (Rat, Rat) {
        (a.0.min(&b.0).clone(), a.1.min(&b.1).clone())
    }

    fn join(&self, a: &(Rat, Rat), b: &(Rat, Rat)) -> (Rat, Rat) {
        (a.0.max(&b.0).clone(), a.1.max(&b.1).clone())
    }
}

/// Element of the flat lattice: bottom, top, and incomparable `x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FlatElem {
    Bottom,
    Mid(u64),
    Top,
}

impl std::fmt::Display for FlatElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FlatElem::Bottom => write!(f, "0"),
            FlatElem::Top => write!(f, "1"),
            FlatElem::Mid(i) => write!(f, "x{i}"),
        }
    }
}

impl FlatElem {
    pub fn parse(s: &str) -> Option<FlatElem> {
        match s {
            "0" => Some(FlatElem::Bottom),
            "1" => Some(FlatElem::Top),
            _ => s.strip_prefix('x').and_then(|i| i.parse().ok().map(FlatElem::Mid)),
        }
    }
}

/// The lattice with bottom, top, and infinitely many pairwise incomparable
/// elements `x_i` between them: `x_i v x_j = 1` and `x_i ^ x_j = 0` for
/// `i != j`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FlatLattice;

impl ComputableLattice for FlatLattice {
    type Elem = FlatElem;

    fn leq(&self, a: &FlatElem, b: &FlatElem) -> bool {
        matches!(
            (a, b),
            (FlatElem::Bottom, _) | (_, FlatElem::Top)
        ) || a == b
    }

    fn meet(&self, a: &FlatElem, b: &FlatElem) -> FlatElem {
        if a == b {
            *a
        } else if *a == FlatElem::Top {
            *b
        } else if *b == FlatElem::Top {
            *a
        } else {
            FlatElem::Bottom
        }
    }

    fn join(&self, a: &FlatElem, b: &FlatElem) -> FlatElem {
        if a == b {
            *a
        } else if *a == FlatElem::Bottom {
            *b
        } else if *b == FlatElem::Bottom {
            *a
        } else {
            FlatElem::Top
        }
    }
}

/// The unbounded subadditive cost on the flat lattice: bottom and top cost
/// 1, and `x_i` costs `i + 1`.
pub fn flat_cost(e: &FlatElem) -> Rat {
    match e {
        FlatElem::Bottom | FlatElem::Top => rone(),
        FlatElem::Mid(i) => Rat::from_integer(((i + 1) as i64).into()),
    }
}

/// Spot check of the lattice axioms and, when a cost is supplied, of the
/// subadditivity of the cost under both operations.
pub fn check_axioms_on<C: ComputableLattice>(
    lat: &C,
    elems: &[C::Elem],
    cost: Option<&dyn Fn(&C::Elem) -> Rat>,
) -> Result<(), String> {
    for a in elems {
        if lat.meet(a, a) != *a || lat.join(a, a) != *a {
            return Err(format!("idempotence fails at {a:?}"));
        }
        for b in elems {
            if lat.meet(a, b) != lat.meet(b, a) || lat.join(a, b) != lat.join(b, a) {
                return Err(format!("commutativity fails at {a:?}, {b:?}"));
            }
            if lat.meet(a, &lat.join(a, b)) != *a || lat.join(a, &lat.meet(a, b)) != *a {
                return Err(format!("absorption fails at {a:?}, {b:?}"));
            }
            if let Some(cost) = cost {
                let bound = cost(a) + cost(b);
                if cost(&lat.join(a, b)) > bound || cost(&lat.meet(a, b)) > bound {
                    return Err(format!("cost is not subadditive at {a:?}, {b:?}"));
                }
            }
            for c in elems {
                if lat.meet(a, &lat.meet(b, c)) != lat.meet(&lat.meet(a, b), c)
                    || lat.join(a, &lat.join(b, c)) != lat.join(&lat.join(a, b), c)
                {
                    return Err(format!("associativity fails at {a:?}, {b:?}, {c:?}"));
                }
            }
        }
    }
    let _ = rzero();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn flat_lattice_rules() {
        let l = FlatLattice;
        let (x1, x2) = (FlatElem::Mid(1), FlatElem::Mid(2));
        assert_eq!(l.join(&x1, &x2), FlatElem::Top);
        assert_eq!(l.meet(&x1, &x2), FlatElem::Bottom);
        assert_eq!(l.join(&x1, &x1), x1);
        assert!(l.leq(&FlatElem::Bottom, &x1));
        assert!(!l.leq(&x1, &x2));
        assert_eq!(flat_cost(&x2), rat(3, 1));
        assert_eq!(flat_cost(&FlatElem::Top), rone());
    }

    #[test]
    fn axioms_spot_check() {
        let elems = [
            FlatElem::Bottom,
            FlatElem::Top,
            FlatElem::Mid(0),
            FlatElem::Mid(3),
            FlatElem::Mid(7),
        ];
        check_axioms_on(&FlatLattice, &elems, Some(&flat_cost)).unwrap();

        let sq = [
            (rzero(), rzero()),
            (rone(), rat(1, 2)),
            (rat(1, 3), rat(2, 3)),
            (rone(), rone()),
        ];
        check_axioms_on(&UnitSquare, &sq, None).unwrap();
    }

    #[test]
    fn parse_display_round_trip() {
        for e in [FlatElem::Bottom, FlatElem::Top, FlatElem::Mid(42)] {
            assert_eq!(FlatElem::parse(&e.to_string()), Some(e));
        }
        assert_eq!(FlatElem::parse("y3"), None);
    }
}
