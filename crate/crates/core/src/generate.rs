//! Closing a finite set of elements under a pair of lattice operations and
//! abstracting the result as a `Lattice`. Shared by the order-complex,
//! thickened-cube and bounded-pair constructions.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::Lattice;
use crate::poset::Poset;

/// Growth cap for closures; generated sublattices in this crate are tiny,
/// so hitting this means the supplied operations are not lawful.
pub const CLOSURE_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("closure exceeded {0} elements")]
    TooLarge(usize),
    #[error("operations are not lattice operations: {0}")]
    NotLattice(String),
}

/// Closes `gens` under `meet`/`join` and builds the abstract lattice on the
/// closure, with elements named `g0, g1, ...` in insertion order. The
/// resulting tables are cross-checked against the supplied operations.
pub fn generate_lattice<T, FM, FJ, FL>(
    gens: &[T],
    meet: FM,
    join: FJ,
    leq: FL,
    ) -> Result<(Lattice, Vec<T>), GenerateError>
where
    T: Clone + Eq + Hash,
    FM: Fn(&T, &T) -> T,
    FJ: Fn(&T, &T) -> T,
    FL: Fn(&T, &T) -> bool,
{
    assert!(!gens.is_empty());
    let mut elems: Vec<T> = Vec::new();
    let mut index: HashMap<T, usize> = HashMap::new();
    for g in gens {
        if !index.contains_key(g) {
            index.insert(g.clone(), elems.len());
            elems.push(g.clone());
        }
    }
    let mut frontier = 0;
    while frontier < elems.len() {
        let hi = elems.len();
        for i in 0..hi {
            let lo = i.max(frontier);
            for j in lo..hi {
                for candidate in [meet(&elems[i], &elems[j]), join(&elems[i], &elems[j])] {
                    if !index.contains_key(&candidate) {
                        if elems.len() >= CLOSURE_CAP {
                            return Err(GenerateError::TooLarge(CLOSURE_CAP));
                        }
                        index.insert(candidate.clone(), elems.len());
                        elems.push(candidate);
                    }
                }
            }
        }
        frontier = hi;
    }
    let n = elems.len();
    let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let mut matrix = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            matrix[i * n + j] = leq(&elems[i], &elems[j]);
        }
    }
    let poset = Poset::from_leq_matrix(names, matrix)
        .map_err(|e| GenerateError::NotLattice(e.to_string()))?;
    let lattice = Lattice::from_arc(Arc::new(poset))
        .map_err(|e| GenerateError::NotLattice(e.to_string()))?;
    // abstract tables must agree with the concrete operations
    for i in 0..n {
        for j in 0..n {
            let m = &elems[lattice.meet(i, j)];
            let jn = &elems[lattice.join(i, j)];
            if *m != meet(&elems[i], &elems[j]) || *jn != join(&elems[i], &elems[j]) {
                return Err(GenerateError::NotLattice(format!(
                    "table/operation mismatch at pair ({i}, {j})"
                )));
            }
        }
    }
    Ok((lattice, elems))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closes_small_integer_lattice() {
        // divisibility on {1..12} restricted to divisors of 12 is a lattice
        let gcd = |a: &u64, b: &u64| {
            let (mut x, mut y) = (*a, *b);
            while y != 0 {
                (x, y) = (y, x % y);
            }
            x
        };
        let lcm = |a: &u64, b: &u64| a / gcd(a, b) * b;
        let (lat, elems) = generate_lattice(
            &[4u64, 6u64],
            |a, b| gcd(a, b),
            |a, b| lcm(a, b),
            |a, b| b % a == 0,
        )
        .unwrap();
        assert_eq!(lat.len(), 4); // 2, 4, 6, 12
        assert!(elems.contains(&12));
        assert!(elems.contains(&2));
    }
}
