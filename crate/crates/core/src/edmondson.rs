//! Interval pair spaces over two computable lattices: the points `(x, y)`
//! with `a(x) <= y <= b(x)` for isotone bounding maps `a <= b`, under
//! componentwise order with corrected operations
//!
//! ```text
//! (x,y) v (x',y') = (x v x',  y v y' v a(x v x'))
//! (x,y) ^ (x',y') = (x ^ x',  y ^ y' ^ b(x ^ x'))
//! ```
//!
//! Wherever `a` fails to be a join homomorphism badly enough, the space
//! contains pentagons; `pentagon_witness` produces the generating triple
//! and the closure machinery confirms the shape.

use thiserror::Error;

use crate::clat::{ComputableLattice, UnitInterval, UnitSquare};
use crate::generate::{generate_lattice, GenerateError};
use crate::lattice::Lattice;
use crate::rat::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdmondsonError {
    #[error("not a member: the second component violates the {side} bound")]
    NotMember { side: &'static str },
}

type BoundFn<L, M> =
    Box<dyn Fn(&<L as ComputableLattice>::Elem) -> <M as ComputableLattice>::Elem + Send + Sync>;

/// Which of the two dual inequalities produced a pentagon witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PentagonBranch {
    /// `a(x) v a(x') < a(x v x') ^ b(x)`
    JoinDefect,
    /// `b(x) ^ b(x') > b(x ^ x') v a(x)`
    MeetDefect,
}

pub struct EdmondsonSpace<L: ComputableLattice, M: ComputableLattice> {
    pub base_l: L,
    pub base_m: M,
    a: BoundFn<L, M>,
    b: BoundFn<L, M>,
}

pub type Point<L, M> = (
    <L as ComputableLattice>::Elem,
    <M as ComputableLattice>::Elem,
);

impl<L: ComputableLattice, M: ComputableLattice> EdmondsonSpace<L, M> {
    pub fn new(base_l: L, base_m: M, a: BoundFn<L, M>, b: BoundFn<L, M>) -> Self {
        EdmondsonSpace { base_l, base_m, a, b }
    }

    pub fn lower(&self, x: &L::Elem) -> M::Elem {
        (self.a)(x)
    }

    pub fn upper(&self, x: &L::Elem) -> M::Elem {
        (self.b)(x)
    }

    pub fn membership(&self, p: &Point<L, M>) -> Result<(), EdmondsonError> {
        let (x, y) = p;
        if !self.base_m.leq(&self.lower(x), y) {
            return Err(EdmondsonError::NotMember { side: "lower" });
        }
        if !self.base_m.leq(y, &self.upper(x)) {
            return Err(EdmondsonError::NotMember { side: "upper" });
        }
        Ok(())
    }

    pub fn is_member(&self, p: &Point<L, M>) -> bool {
        self.membership(p).is_ok()
    }

    pub fn leq(&self, p: &Point<L, M>, q: &Point<L, M>) -> bool {
        self.base_l.leq(&p.0, &q.0) && self.base_m.leq(&p.1, &q.1)
    }

    pub fn join(&self, p: &Point<L, M>, q: &Point<L, M>) -> Result<Point<L, M>, EdmondsonError> {
        self.membership(p)?;
        self.membership(q)?;
        let x = self.base_l.join(&p.0, &q.0);
        let y = self
            .base_m
            .join(&self.base_m.join(&p.1, &q.1), &self.lower(&x));
        let out = (x, y);
        debug_assert!(self.is_member(&out));
        Ok(out)
    }

    pub fn meet(&self, p: &Point<L, M>, q: &Point<L, M>) -> Result<Point<L, M>, EdmondsonError> {
        self.membership(p)?;
        self.membership(q)?;
        let x = self.base_l.meet(&p.0, &q.0);
        let y = self
            .base_m
            .meet(&self.base_m.meet(&p.1, &q.1), &self.upper(&x));
        let out = (x, y);
        debug_assert!(self.is_member(&out));
        Ok(out)
    }

    /// If one of the two defect inequalities holds strictly at `(x, x')`,
    /// returns the three points generating a pentagon; the first two share
    /// the first component and are strictly comparable.
    pub fn pentagon_witness(
        &self,
        x: &L::Elem,
        xp: &L::Elem,
    ) -> Option<(PentagonBranch, [Point<L, M>; 3])> {
        let m = &self.base_m;
        let strictly_less = |u: &M::Elem, v: &M::Elem| m.leq(u, v) && u != v;

        let lhs = m.join(&self.lower(x), &self.lower(xp));
        let rhs = m.meet(&self.lower(&self.base_l.join(x, xp)), &self.upper(x));
        if strictly_less(&lhs, &rhs) {
            let triple = [
                (x.clone(), lhs),
                (x.clone(), rhs),
                (xp.clone(), self.lower(xp)),
            ];
            debug_assert!(triple.iter().all(|p| self.is_member(p)));
            return Some((PentagonBranch::JoinDefect, triple));
        }

        let lhs = m.meet(&self.upper(x), &self.upper(xp));
        let rhs = m.join(&self.upper(&self.base_l.meet(x, xp)), &self.lower(x));
        if strictly_less(&rhs, &lhs) {
            let triple = [
                (x.clone(), lhs),
                (x.clone(), rhs),
                (xp.clone(), self.upper(xp)),
            ];
            debug_assert!(triple.iter().all(|p| self.is_member(p)));
            return Some((PentagonBranch::MeetDefect, triple));
        }
        None
    }

    /// Closes points under the corrected operations into an abstract
    /// lattice plus the embedding.
    pub fn generated(
        &self,
        gens: &[Point<L, M>],
    ) -> Result<(Lattice, Vec<Point<L, M>>), GenerateError> {
        generate_lattice(
            gens,
            |p, q| self.meet(p, q).expect("members stay members"),
            |p, q| self.join(p, q).expect("members stay members"),
            |p, q| self.leq(p, q),
        )
    }
}

/// The classic cell example: pairs `((x,y), z)` in the unit cube with
/// `x*y <= z <= x`.
pub fn classic() -> EdmondsonSpace<UnitSquare, UnitInterval> {
    EdmondsonSpace::new(
        UnitSquare,
        UnitInterval,
        Box::new(|(x, y): &(Rat, Rat)| x * y),
        Box::new(|(x, _): &(Rat, Rat)| x.clone()),
    )
}

/// The order complex of the pentagon in interval-pair form: over the
/// coordinates of its three join-irreducible elements the points are
/// exactly `x1 ^ x2 <= x3 <= x1`.
pub fn pentagon_complex() -> EdmondsonSpace<UnitSquare, UnitInterval> {
    EdmondsonSpace::new(
        UnitSquare,
        UnitInterval,
        Box::new(|(x, y): &(Rat, Rat)| x.min(y).clone()),
        Box::new(|(x, _): &(Rat, Rat)| x.clone()),
    )
}
