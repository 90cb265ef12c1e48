//! The standard small lattices used throughout the crate and the CLI:
//! chains, Boolean cubes, the diamond and pentagon, the five-element
//! square-plus-segment lattice, and bundles of parallel chains sharing
//! bottom and top.

use crate::lattice::Lattice;
use crate::poset::Poset;

/// Chain with `n` elements named `0..n-1`.
pub fn chain(n: usize) -> Lattice {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Lattice::from_poset(Poset::new(names, &covers).unwrap()).unwrap()
}

/// Boolean lattice `2^n`, elements named as bitstrings (`"101"` contains
/// coordinates 0 and 2).
pub fn boolean(n: usize) -> Lattice {
    assert!(n <= 10, "boolean preset capped at 2^10 elements");
    let size = 1usize << n;
    let names: Vec<String> = (0..size)
        .map(|m| (0..n).map(|b| if m >> b & 1 == 1 { '1' } else { '0' }).collect())
        .collect();
    let mut covers = Vec::new();
    for m in 0..size {
        for b in 0..n {
            if m >> b & 1 == 0 {
                covers.push((m, m | 1 << b));
            }
        }
    }
    Lattice::from_poset(Poset::new(names, &covers).unwrap()).unwrap()
}

/// The diamond: bottom, three incomparable atoms, top.
pub fn m3() -> Lattice {
    parallel_chains(&[1, 1, 1])
}

/// The pentagon: `0 < a < b < 1` and `0 < c < 1`.
pub fn n5() -> Lattice {
    let p = Poset::from_named_covers(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
    .unwrap();
    Lattice::from_poset(p).unwrap()
}

/// The five-element lattice whose order complex is a square with a segment
/// glued on top: bottom `0`, atoms `a`, `b`, their join `x`, and a top `y`
/// covering `x`.
pub fn gluing5() -> Lattice {
    let p = Poset::from_named_covers(
        &["0", "a", "b", "x", "y"],
        &[("0", "a"), ("0", "b"), ("a", "x"), ("b", "x"), ("x", "y")],
    )
    .unwrap();
    Lattice::from_poset(p).unwrap()
}

/// Parallel chains glued at a common bottom `0` and top `1`. `inner[i]` is
/// the number of elements strictly between `0` and `1` on the i-th chain;
/// those elements are named `a1, a2, ...` on the first chain, `b1, ...` on
/// the second, and so on (single inner elements drop the digit).
///
/// `parallel_chains(&[1,1,1])` is the diamond, `&[2,1]` the pentagon; the
/// shapes `[2,1,1]`, `[2,2,1]` and `[2,2,2]` are the pentagon-like bundles
/// whose order complexes mix facet dimensions.
pub fn parallel_chains(inner: &[usize]) -> Lattice {
    assert!(!inner.is_empty());
    assert!(inner.len() <= 26);
    let mut names = vec!["0".to_string()];
    let mut covers: Vec<(usize, usize)> = Vec::new();
    for (i, &k) in inner.iter().enumerate() {
        assert!(k >= 1, "each chain needs at least one inner element");
        let letter = (b'a' + i as u8) as char;
        let mut prev = 0usize; // bottom
        for j in 1..=k {
            let name = if k == 1 {
                letter.to_string()
            } else {
                format!("{letter}{j}")
            };
            names.push(name);
            let id = names.len() - 1;
            covers.push((prev, id));
            prev = id;
        }
        covers.push((prev, usize::MAX)); // patched to top below
    }
    names.push("1".to_string());
    let top = names.len() - 1;
    for c in covers.iter_mut() {
        if c.1 == usize::MAX {
            c.1 = top;
        }
    }
    Lattice::from_poset(Poset::new(names, &covers).unwrap()).unwrap()
}

/// Looks up a preset by CLI-friendly name: `m3`, `n5`, `gluing5`,
/// `chain<k>`, `boolean<k>`, or `chains:2,1,1`.
pub fn by_name(name: &str) -> Option<Lattice> {
    match name {
        "m3" => return Some(m3()),
        "n5" => return Some(n5()),
        "gluing5" => return Some(gluing5()),
        _ => {}
    }
    if let Some(spec) = name.strip_prefix("chains:") {
        let inner: Option<Vec<usize>> = spec.split(',').map(|s| s.trim().parse().ok()).collect();
        let inner = inner?;
        if inner.is_empty() || inner.iter().any(|&k| k == 0 || k > 20) {
            return None;
        }
        return Some(parallel_chains(&inner));
    }
    if let Some(k) = name.strip_prefix("chain") {
        let k: usize = k.parse().ok().filter(|&k| (1..=32).contains(&k))?;
        return Some(chain(k));
    }
    if let Some(k) = name.strip_prefix("boolean") {
        let k: usize = k.parse().ok().filter(|&k| k <= 10)?;
        return Some(boolean(k));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_shapes() {
        assert_eq!(m3().len(), 5);
        assert_eq!(n5().len(), 5);
        assert_eq!(gluing5().len(), 5);
        assert_eq!(boolean(3).len(), 8);
        assert_eq!(chain(4).poset().longest_chain_length(), 3);
        assert_eq!(boolean(3).poset().longest_chain_length(), 3);
        assert_eq!(m3().poset().longest_chain_length(), 2);
    }

    #[test]
    fn pentagon_named_covers() {
        let l = n5();
        let (a, b, c) = (
            l.index_of("a").unwrap(),
            l.index_of("b").unwrap(),
            l.index_of("c").unwrap(),
        );
        assert!(l.poset().lt(a, b));
        assert!(!l.poset().comparable(a, c));
        assert_eq!(l.join(a, c), l.top());
        assert_eq!(l.meet(b, c), l.bottom());
        assert!(l.is_isomorphic_to(&parallel_chains(&[2, 1])));
    }

    #[test]
    fn chain_bundles() {
        // mixed-dimension bundles from the pentagon family
        for (inner, size) in [(&[2usize, 1, 1][..], 6), (&[2, 2, 1][..], 7), (&[2, 2, 2][..], 8)] {
            let l = parallel_chains(inner);
            assert_eq!(l.len(), size);
            let c = l.classify();
            assert!(!c.is_modular);
        }
    }

    #[test]
    fn lookup() {
        assert!(by_name("m3").is_some());
        assert!(by_name("chain7").is_some());
        assert!(by_name("boolean3").is_some());
        assert!(by_name("chains:2,1").is_some());
        assert!(by_name("nope").is_none());
        assert!(by_name("chain0").is_none());
    }
}
