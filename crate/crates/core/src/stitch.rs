//! Stitching a family of posets along a shared chain: the parts are
//! disjoint outside a common chain `C`, every element has a least chain
//! element above it and a greatest below it, and cross-part order is
//! mediated by those projections. Unlike gluing or pasting, the result has
//! no colimit property; it is how the order complex of the diamond
//! decomposes into three triangles along the common edge.

use std::collections::HashSet;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;
use thiserror::Error;

use crate::delta::{sample_point_with, DeltaPoint};
use crate::lattice::{Lattice, LatticeError};
use crate::poset::{ElemId, Poset};
use crate::rat::{rone, rzero, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StitchError {
    #[error("shared chain violation: {0}")]
    SharedChainViolation(String),
    #[error("element name `{0}` appears in two parts outside the chain")]
    NameClash(String),
    #[error("{0}")]
    Lattice(LatticeError),
}

/// A family of posets sharing a chain, validated on construction.
#[derive(Debug, Clone)]
pub struct StitchFamily {
    parts: Vec<Poset>,
    chain: Vec<String>,
    /// Per part: local ids of the chain elements, ascending.
    chain_ids: Vec<Vec<ElemId>>,
    /// Per part, per local element: chain index of the least chain element
    /// above it / the greatest below it.
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl StitchFamily {
    pub fn new(parts: Vec<Poset>, chain: Vec<String>) -> Result<StitchFamily, StitchError> {
        if parts.is_empty() {
            return Err(StitchError::SharedChainViolation("no parts given".into()));
        }
        if chain.is_empty() {
            return Err(StitchError::SharedChainViolation(
                "the shared chain must be nonempty".into(),
            ));
        }
        let mut chain_ids = Vec::new();
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (pi, part) in parts.iter().enumerate() {
            let ids: Result<Vec<ElemId>, StitchError> = chain
                .iter()
                .map(|name| {
                    part.index_of(name).ok_or_else(|| {
                        StitchError::SharedChainViolation(format!(
                            "part {pi} is missing chain element `{name}`"
                        ))
                    })
                })
                .collect();
            let ids = ids?;
            for w in ids.windows(2) {
                if !part.lt(w[0], w[1]) {
                    return Err(StitchError::SharedChainViolation(format!(
                        "chain order is not respected in part {pi}"
                    )));
                }
            }
            let mut part_up = Vec::with_capacity(part.len());
            let mut part_down = Vec::with_capacity(part.len());
            for x in 0..part.len() {
                let u = ids.iter().position(|&c| part.leq(x, c));
                let d = ids.iter().rposition(|&c| part.leq(c, x));
                match (u, d) {
                    (Some(u), Some(d)) => {
                        part_up.push(u);
                        part_down.push(d);
                    }
                    _ => {
                        return Err(StitchError::SharedChainViolation(format!(
                            "element `{}` of part {pi} has no chain bound",
                            part.name(x)
                        )))
                    }
                }
            }
            chain_ids.push(ids);
            up.push(part_up);
            down.push(part_down);
        }
        // parts must be disjoint outside the chain
        let chain_set: HashSet<&String> = chain.iter().collect();
        let mut seen: HashSet<&String> = HashSet::new();
        for part in &parts {
            for name in part.names() {
                if chain_set.contains(name) {
                    continue;
                }
                if !seen.insert(name) {
                    return Err(StitchError::NameClash(name.clone()));
                }
            }
        }
        Ok(StitchFamily {
            parts,
            chain,
            chain_ids,
            up,
            down,
        })
    }

    pub fn parts(&self) -> &[Poset] {
        &self.parts
    }

    pub fn chain(&self) -> &[String] {
        &self.chain
    }

    /// Chain index of the least chain element above `x` in part `pi`.
    pub fn u(&self, pi: usize, x: ElemId) -> usize {
        self.up[pi][x]
    }

    /// Chain index of the greatest chain element below `x` in part `pi`.
    pub fn d(&self, pi: usize, x: ElemId) -> usize {
        self.down[pi][x]
    }

    fn is_chain_name(&self, name: &str) -> bool {
        self.chain.iter().any(|c| c == name)
    }

    /// The stitched poset: carrier is the union, order within parts is
    /// inherited, and across parts `x <= y` holds when the least chain
    /// element above `x` sits below the greatest chain element below `y`.
    pub fn stitch(&self) -> Poset {
        let mut names: Vec<String> = self.chain.clone();
        // (part, local) for every global element; chain elements use part 0
        let mut origin: Vec<(usize, ElemId)> = self
            .chain_ids[0]
            .iter()
            .map(|&c| (0usize, c))
            .collect();
        for (pi, part) in self.parts.iter().enumerate() {
            for x in 0..part.len() {
                let name = part.name(x);
                if !self.is_chain_name(name) {
                    names.push(name.to_string());
                    origin.push((pi, x));
                }
            }
        }
        let n = names.len();
        // local view of a global element inside a given part, when it has one
        let local_in = |g: usize, pi: usize| -> Option<ElemId> {
            let (op, ox) = origin[g];
            if op == pi {
                Some(ox)
            } else if g < self.chain.len() {
                Some(self.chain_ids[pi][g])
            } else {
                None
            }
        };
        let mut leq = vec![false; n * n];
        for x in 0..n {
            let (px, lx) = origin[x];
            for y in 0..n {
                let (py, ly) = origin[y];
                let rel = if let Some(lx_in_py) = local_in(x, py) {
                    self.parts[py].leq(lx_in_py, ly)
                } else if let Some(ly_in_px) = local_in(y, px) {
                    self.parts[px].leq(lx, ly_in_px)
                } else {
                    // genuinely cross-part: u_i(x) <= d_j(y) on the chain
                    self.up[px][lx] <= self.down[py][ly]
                };
                leq[x * n + y] = rel;
            }
        }
        Poset::from_leq_matrix(names, leq).expect("stitched order is a partial order")
    }

    /// Stitch and verify lattice structure by exhaustive bound search.
    pub fn stitch_lattice(&self) -> Result<Lattice, StitchError> {
        Lattice::from_poset(self.stitch()).map_err(StitchError::Lattice)
    }

    /// Checks that the four equivalent formulations of the cross-part order
    /// agree on every cross pair, and that the projection formulas compute
    /// joins and meets when the parts are lattices.
    pub fn verify_order_conditions(&self) -> Result<(), String> {
        let stitched = self.stitch();
        let part_lattices: Vec<Option<Lattice>> = self
            .parts
            .iter()
            .map(|p| Lattice::from_poset(p.clone()).ok())
            .collect();
        let chain_len = self.chain.len();
        let global_of = |pi: usize, x: ElemId| -> usize {
            stitched
                .index_of(self.parts[pi].name(x))
                .expect("all part elements appear")
        };
        for (i, pi) in self.parts.iter().enumerate() {
            for (j, pj) in self.parts.iter().enumerate() {
                if i == j {
                    continue;
                }
                for x in 0..pi.len() {
                    for y in 0..pj.len() {
                        let ci = &self.chain_ids[i];
                        let cj = &self.chain_ids[j];
                        let c1 = self.up[i][x] <= self.down[j][y];
                        let c2 = pj.leq(cj[self.up[i][x]], y);
                        let c3 = pi.leq(x, ci[self.down[j][y]]);
                        let c4 = (0..chain_len).any(|k| pi.leq(x, ci[k]) && pj.leq(cj[k], y));
                        if !(c1 == c2 && c2 == c3 && c3 == c4) {
                            return Err(format!(
                                "order conditions disagree at `{}`, `{}`",
                                pi.name(x),
                                pj.name(y)
                            ));
                        }
                    }
                }
            }
        }
        // join/meet projection formulas against the stitched tables
        if let Ok(lat) = Lattice::from_poset(stitched.clone()) {
            for i in 0..self.parts.len() {
                for j in 0..self.parts.len() {
                    if i == j {
                        continue;
                    }
                    let (Some(li), Some(_)) = (&part_lattices[i], &part_lattices[j]) else {
                        continue;
                    };
                    for x in 0..self.parts[i].len() {
                        for y in 0..self.parts[j].len() {
                            let gx = global_of(i, x);
                            let gy = global_of(j, y);
                            // x v y = x v_i u_j(y) when u_i(x) >= u_j(y)
                            if self.up[i][x] >= self.up[j][y] {
                                let formula = li.join(x, self.chain_ids[i][self.up[j][y]]);
                                if lat.join(gx, gy) != global_of(i, formula) {
                                    return Err(format!(
                                        "join formula disagrees at `{}`, `{}`",
                                        self.parts[i].name(x),
                                        self.parts[j].name(y)
                                    ));
                                }
                            }
                            // x ^ y = x ^_i d_j(y) when d_i(x) <= d_j(y)
                            if self.down[i][x] <= self.down[j][y] {
                                let formula = li.meet(x, self.chain_ids[i][self.down[j][y]]);
                                if lat.meet(gx, gy) != global_of(i, formula) {
                                    return Err(format!(
                                        "meet formula disagrees at `{}`, `{}`",
                                        self.parts[i].name(x),
                                        self.parts[j].name(y)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StitchDeltaReport {
    pub samples: usize,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// For parts sharing exactly the chain `{bottom, top}`, verifies on samples
/// that the order complex of the stitched poset is the stitching of the
/// parts' complexes along their common edge: every sampled point extends a
/// point of one part by its top value, and order, meet and join agree with
/// the projection formulas computed part-wise.
pub fn stitch_delta_check(
    family: &StitchFamily,
    samples: usize,
    seed: u64,
) -> Result<StitchDeltaReport, StitchError> {
    if family.chain.len() != 2 {
        return Err(StitchError::SharedChainViolation(
            "the complex-level comparison needs a two-element shared chain".into(),
        ));
    }
    let stitched = Arc::new(family.stitch());
    let lat = Lattice::from_arc(Arc::clone(&stitched)).map_err(StitchError::Lattice)?;
    let top = lat.top();
    let bottom = lat.bottom();
    let part_lattices: Vec<Lattice> = family
        .parts
        .iter()
        .map(|p| Lattice::from_poset(p.clone()).map_err(StitchError::Lattice))
        .collect::<Result<_, _>>()?;

    // global ids of each part's carrier
    let part_globals: Vec<Vec<ElemId>> = family
        .parts
        .iter()
        .map(|p| {
            (0..p.len())
                .map(|x| stitched.index_of(p.name(x)).expect("carrier is the union"))
                .collect()
        })
        .collect();

    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(seed);

    // a point belongs to part i when it is the extension-by-f(top) of a
    // point of that part's complex
    let carried_by = |f: &DeltaPoint, i: usize| -> bool {
        let inside: HashSet<ElemId> = part_globals[i].iter().copied().collect();
        (0..stitched.len()).all(|z| inside.contains(&z) || f.value(z) == f.value(top))
    };
    let restrict = |f: &DeltaPoint, i: usize| -> DeltaPoint {
        let values: Vec<Rat> = part_globals[i].iter().map(|&g| f.value(g).clone()).collect();
        DeltaPoint::new(Arc::clone(part_lattices[i].poset()), values)
            .expect("restriction of a carried point is a point")
    };
    let extend = |p: &DeltaPoint, i: usize| -> DeltaPoint {
        let top_local = family.chain_ids[i][1];
        let mut values: Vec<Rat> = vec![p.value(top_local).clone(); stitched.len()];
        for (x, &g) in part_globals[i].iter().enumerate() {
            values[g] = p.value(x).clone();
        }
        DeltaPoint::new(Arc::clone(&stitched), values).expect("extension is a point")
    };
    // projections to the shared edge, expressed as the value at the top
    let u_of = |f: &DeltaPoint, i: usize| -> Rat {
        part_globals[i]
            .iter()
            .filter(|&&g| g != bottom)
            .map(|&g| f.value(g).clone())
            .max()
            .unwrap_or_else(rzero)
    };
    let d_of = |f: &DeltaPoint| -> Rat { f.value(top).clone() };
    let edge_point = |v: &Rat, i: usize| -> DeltaPoint {
        // the two-element-chain point with value v at the top, seen in part i
        let li = &part_lattices[i];
        let values: Vec<Rat> = (0..li.len())
            .map(|x| if x == li.bottom() { rone() } else { v.clone() })
            .collect();
        DeltaPoint::new(Arc::clone(li.poset()), values).expect("edge points are points")
    };

    for _ in 0..samples {
        let f = sample_point_with(&stitched, &mut rng, 16);
        let g = sample_point_with(&stitched, &mut rng, 16);
        let pf = (0..family.parts.len()).find(|&i| carried_by(&f, i));
        let pg = (0..family.parts.len()).find(|&i| carried_by(&g, i));
        let (Some(pf), Some(pg)) = (pf, pg) else {
            failures.push("sampled point carried by no part".into());
            continue;
        };
        // a point off the shared edge lives in exactly one part
        for (h, p) in [(&f, pf), (&g, pg)] {
            let on_edge = (0..stitched.len())
                .all(|z| z == bottom || z == top || h.value(z) == h.value(top));
            let owners = (0..family.parts.len())
                .filter(|&i| carried_by(h, i))
                .count();
            if !on_edge && owners != 1 {
                failures.push(format!("interior point carried by {owners} parts"));
            }
        }
        // round trip through the part complex
        if extend(&restrict(&f, pf), pf) != f {
            failures.push("restriction/extension round trip failed".into());
        }

        let direct_meet = lat.delta_meet(&f, &g).expect("same host");
        let direct_join = lat.delta_join(&f, &g).expect("same host");
        let (stitched_join, stitched_meet) = if pf == pg {
            let li = &part_lattices[pf];
            let (rf, rg) = (restrict(&f, pf), restrict(&g, pf));
            (
                extend(&li.delta_join(&rf, &rg).expect("same host"), pf),
                extend(&li.delta_meet(&rf, &rg).expect("same host"), pf),
            )
        } else {
            // cross-part: project the other operand onto the shared edge
            let join = if u_of(&f, pf) >= u_of(&g, pg) {
                let li = &part_lattices[pf];
                let rf = restrict(&f, pf);
                let e = edge_point(&u_of(&g, pg), pf);
                extend(&li.delta_join(&rf, &e).expect("same host"), pf)
            } else {
                let lj = &part_lattices[pg];
                let rg = restrict(&g, pg);
                let e = edge_point(&u_of(&f, pf), pg);
                extend(&lj.delta_join(&rg, &e).expect("same host"), pg)
            };
            let meet = if d_of(&f) <= d_of(&g) {
                let lj = &part_lattices[pg];
                let rg = restrict(&g, pg);
                let e = edge_point(&d_of(&f), pg);
                extend(&lj.delta_meet(&rg, &e).expect("same host"), pg)
            } else {
                let li = &part_lattices[pf];
                let rf = restrict(&f, pf);
                let e = edge_point(&d_of(&g), pf);
                extend(&li.delta_meet(&rf, &e).expect("same host"), pf)
            };
            (join, meet)
        };
        if stitched_join != direct_join {
            failures.push("join disagrees with the stitched description".into());
        }
        if stitched_meet != direct_meet {
            failures.push("meet disagrees with the stitched description".into());
        }
        // cross-part order agrees with the edge projections
        if pf != pg {
            let expected = u_of(&f, pf) <= d_of(&g);
            if f.leq(&g) != expected {
                failures.push("cross-part order disagrees with the projections".into());
            }
        }
    }
    Ok(StitchDeltaReport {
        samples,
        pass: failures.is_empty(),
        failures,
    })
}

/// Convenience: stitch chains with the given inner element counts along a
/// shared `{0, 1}`, naming inner elements like the parallel-chain presets.
pub fn chain_family(inner: &[usize]) -> StitchFamily {
    assert!(!inner.is_empty() && inner.len() <= 26);
    let mut parts = Vec::new();
    for (i, &k) in inner.iter().enumerate() {
        let letter = (b'a' + i as u8) as char;
        let mut names: Vec<String> = vec!["0".into()];
        for j in 1..=k {
            names.push(if k == 1 {
                letter.to_string()
            } else {
                format!("{letter}{j}")
            });
        }
        names.push("1".into());
        let covers: Vec<(usize, usize)> = (1..names.len()).map(|i| (i - 1, i)).collect();
        parts.push(Poset::new(names, &covers).unwrap());
    }
    StitchFamily::new(parts, vec!["0".into(), "1".into()]).unwrap()
}
