//! Quandle colorings and shadow colorings of link diagrams.
//!
//! Crossing relation: the under-arc on the left of the over-strand carries
//! `x * y`, where `x` is the under-arc on its right and `y` the over-arc. At a
//! positive crossing that reads `outgoing = incoming * over`; at a negative
//! crossing `incoming = outgoing * over`.
//!
//! Region rule: crossing an arc of color `a` from its right side to its left
//! side sends a region color `r` to `r * a`. Both rules use the same side of
//! the over-strand, which makes every coloring extend to a shadow coloring.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::diagram::LinkDiagram;
use crate::quandle::FiniteRack;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {got} arc colors, diagram has {expected} arcs")]
    WrongLength { got: usize, expected: usize },
    #[error("color {0} is not an element of the quandle")]
    OutOfRange(usize),
    #[error("crossing {0} violates the coloring relation")]
    RelationViolated(usize),
    #[error("shadow extension is inconsistent across edge {0}")]
    InconsistentShadow(usize),
}

/// Arc colors, indexed by arc.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Coloring(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ShadowColoring {
    pub arcs: Vec<usize>,
    pub regions: Vec<usize>,
}

/// One signed triple `(r, x, y)` per crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FundamentalCycle {
    pub terms: Vec<(i64, [usize; 3])>,
}

impl FundamentalCycle {
    /// Terms collected into a chain on `X^3`, zero coefficients dropped.
    pub fn chain(&self) -> BTreeMap<Vec<usize>, i64> {
        let mut chain = BTreeMap::new();
        for &(sign, t) in &self.terms {
            *chain.entry(t.to_vec()).or_insert(0) += sign;
        }
        chain.retain(|_, c| *c != 0);
        chain
    }

    /// The chain with degenerate triples removed.
    pub fn quotient_chain(&self) -> BTreeMap<Vec<usize>, i64> {
        let mut c = self.chain();
        c.retain(|t, _| !crate::homology::is_degenerate(t));
        c
    }

    /// Boundary in the quandle complex; empty iff this is a 3-cycle there.
    pub fn quotient_boundary(&self, x: &FiniteRack) -> BTreeMap<Vec<usize>, i64> {
        let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for (t, c) in self.chain() {
            for (face, coeff) in crate::homology::rack_boundary_terms(x, &t) {
                if !crate::homology::is_degenerate(&face) {
                    *out.entry(face).or_insert(0) += c * coeff;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<[i64; 4]> = self
            .terms
            .iter()
            .map(|&(s, [r, a, b])| [s, r as i64, a as i64, b as i64])
            .collect();
        serde_json::to_string(&rows).expect("serializable")
    }
}

/// Whether `arcs` satisfies the relation at every crossing.
pub fn is_coloring(d: &LinkDiagram, x: &FiniteRack, arcs: &[usize]) -> Result<(), ColoringError> {
    if arcs.len() != d.arc_count() {
        return Err(ColoringError::WrongLength {
            got: arcs.len(),
            expected: d.arc_count(),
        });
    }
    if let Some(&bad) = arcs.iter().find(|&&a| a >= x.size()) {
        return Err(ColoringError::OutOfRange(bad));
    }
    for c in 0..d.crossing_count() {
        let (s, o, t) = (d.source_under_arc(c), d.over_arc(c), d.target_under_arc(c));
        if x.op(arcs[s], arcs[o]) != arcs[t] {
            return Err(ColoringError::RelationViolated(c));
        }
    }
    Ok(())
}

struct Search<'a> {
    x: &'a FiniteRack,
    /// `(source, over, target)` arcs per crossing
    relations: Vec<(usize, usize, usize)>,
    order: Vec<usize>,
}

impl Search<'_> {
    fn new<'a>(d: &LinkDiagram, x: &'a FiniteRack, order: Vec<usize>) -> Search<'a> {
        let relations = (0..d.crossing_count())
            .map(|c| (d.source_under_arc(c), d.over_arc(c), d.target_under_arc(c)))
            .collect();
        Search {
            x,
            relations,
            order,
        }
    }

    /// Fills forced colors; `false` on a contradiction.
    fn propagate(&self, assign: &mut [Option<usize>]) -> bool {
        loop {
            let mut changed = false;
            for &(s, o, t) in &self.relations {
                match (assign[s], assign[o], assign[t]) {
                    (Some(a), Some(b), Some(c)) => {
                        if self.x.op(a, b) != c {
                            return false;
                        }
                    }
                    (Some(a), Some(b), None) => {
                        assign[t] = Some(self.x.op(a, b));
                        changed = true;
                    }
                    (None, Some(b), Some(c)) => {
                        assign[s] = Some(self.x.op_inv(c, b));
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&self, assign: &mut [Option<usize>], visit: &mut dyn FnMut(&[Option<usize>])) {
        if !self.propagate(assign) {
            return;
        }
        let Some(&arc) = self.order.iter().find(|&&a| assign[a].is_none()) else {
            visit(assign);
            return;
        };
        for v in 0..self.x.size() {
            let mut next = assign.to_vec();
            next[arc] = Some(v);
            self.run(&mut next, visit);
        }
    }
}

/// All colorings in lexicographic order.
pub fn enumerate_colorings(d: &LinkDiagram, x: &FiniteRack) -> Vec<Coloring> {
    enumerate_colorings_with_order(d, x, &(0..d.arc_count()).collect::<Vec<_>>())
}

/// Same set as [`enumerate_colorings`], branching on arcs in `order` first.
pub fn enumerate_colorings_with_order(
    d: &LinkDiagram,
    x: &FiniteRack,
    order: &[usize],
) -> Vec<Coloring> {
    let mut order = order.to_vec();
    let rest: Vec<usize> = (0..d.arc_count()).filter(|a| !order.contains(a)).collect();
    order.extend(rest);
    let search = Search::new(d, x, order);
    let mut out = Vec::new();
    let mut assign = vec![None; d.arc_count()];
    search.run(&mut assign, &mut |a| {
        out.push(Coloring(a.iter().map(|c| c.unwrap()).collect()))
    });
    out.sort();
    out
}

/// Number of colorings, without materialising them.
pub fn count_colorings(d: &LinkDiagram, x: &FiniteRack) -> u64 {
    let search = Search::new(d, x, (0..d.arc_count()).collect());
    let mut count = 0u64;
    let mut assign = vec![None; d.arc_count()];
    search.run(&mut assign, &mut |_| count += 1);
    count
}

/// Region colors determined by `base` on the infinity region.
pub fn extend_to_shadow(
    d: &LinkDiagram,
    x: &FiniteRack,
    coloring: &Coloring,
    base: usize,
) -> Result<ShadowColoring, ColoringError> {
    is_coloring(d, x, &coloring.0)?;
    if base >= x.size() {
        return Err(ColoringError::OutOfRange(base));
    }
    // (neighbour, arc color, forward?) where forward means right -> left
    let mut adjacency: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); d.region_count()];
    for e in 1..=d.edge_count() {
        let (left, right) = d.edge_faces(e);
        let a = coloring.0[d.arc_of_edge(e)];
        adjacency[right].push((left, a, true));
        adjacency[left].push((right, a, false));
    }
    let mut regions = vec![None; d.region_count()];
    regions[d.infinity_region()] = Some(base);
    let mut queue = VecDeque::from([d.infinity_region()]);
    while let Some(r) = queue.pop_front() {
        let color = regions[r].unwrap();
        for &(next, a, forward) in &adjacency[r] {
            if regions[next].is_none() {
                regions[next] = Some(if forward {
                    x.op(color, a)
                } else {
                    x.op_inv(color, a)
                });
                queue.push_back(next);
            }
        }
    }
    let regions: Vec<usize> = regions
        .into_iter()
        .map(|r| r.expect("region graph is connected"))
        .collect();
    for e in 1..=d.edge_count() {
        let (left, right) = d.edge_faces(e);
        if x.op(regions[right], coloring.0[d.arc_of_edge(e)]) != regions[left] {
            return Err(ColoringError::InconsistentShadow(e));
        }
    }
    Ok(ShadowColoring {
        arcs: coloring.0.clone(),
        regions,
    })
}

/// Every shadow coloring, by extending each coloring from every base color.
pub fn enumerate_shadow_colorings(
    d: &LinkDiagram,
    x: &FiniteRack,
) -> Result<Vec<ShadowColoring>, ColoringError> {
    let mut out = Vec::new();
    for c in enumerate_colorings(d, x) {
        for base in 0..x.size() {
            out.push(extend_to_shadow(d, x, &c, base)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn count_shadow_colorings(d: &LinkDiagram, x: &FiniteRack) -> Result<u64, ColoringError> {
    Ok(enumerate_shadow_colorings(d, x)?.len() as u64)
}

/// `sum_c sign(c) (r_c, x_c, y_c)`: `r_c` colors the source region, `x_c` the
/// under-arc on the right of the over-strand, `y_c` the over-arc.
pub fn fundamental_cycle(d: &LinkDiagram, shadow: &ShadowColoring) -> FundamentalCycle {
    let terms = (0..d.crossing_count())
        .map(|c| {
            (
                d.crossing_sign(c).value(),
                [
                    shadow.regions[d.source_region(c)],
                    shadow.arcs[d.source_under_arc(c)],
                    shadow.arcs[d.over_arc(c)],
                ],
            )
        })
        .collect();
    FundamentalCycle { terms }
}

pub fn colorings_json(colorings: &[Coloring]) -> String {
    serde_json::to_string(&colorings.iter().map(|c| &c.0).collect::<Vec<_>>())
        .expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::standard::*;
    use crate::diagram::{Side, Sign};

    fn r(n: usize) -> FiniteRack {
        FiniteRack::dihedral(n).unwrap()
    }

    #[test]
    fn trefoil_counts() {
        let t = trefoil();
        assert_eq!(count_colorings(&t, &r(3)), 9);
        assert_eq!(enumerate_colorings(&t, &r(3)).len(), 9);
        assert_eq!(count_colorings(&t, &FiniteRack::trivial(3).unwrap()), 3);
        assert_eq!(count_shadow_colorings(&t, &r(3)), Ok(27));
    }

    #[test]
    fn figure_eight_counts() {
        let f = figure_eight();
        assert_eq!(count_colorings(&f, &r(3)), 3);
        assert_eq!(count_colorings(&f, &r(5)), 25);
        assert_eq!(count_shadow_colorings(&f, &r(3)), Ok(9));
    }

    #[test]
    fn unknot_has_one_coloring_per_element() {
        let u = unknot();
        let x = FiniteRack::alexander(5, 2).unwrap();
        assert_eq!(count_colorings(&u, &x), 5);
        assert_eq!(
            count_shadow_colorings(&u, &FiniteRack::trivial(1).unwrap()),
            Ok(1)
        );
        let s = extend_to_shadow(&u, &x, &Coloring(vec![3]), 1).unwrap();
        assert_eq!(s.regions[u.infinity_region()], 1);
        assert_eq!(s.regions[0], x.op(1, 3));
    }

    #[test]
    fn trivial_quandle_shadow_is_constant() {
        let t3 = FiniteRack::trivial(3).unwrap();
        let d = figure_eight();
        for c in enumerate_colorings(&d, &t3) {
            let s = extend_to_shadow(&d, &t3, &c, 2).unwrap();
            assert!(s.regions.iter().all(|&r| r == 2));
        }
    }

    #[test]
    fn constant_coloring_on_r3_alternates_regions() {
        let t = trefoil();
        let s = extend_to_shadow(&t, &r(3), &Coloring(vec![0; 3]), 1).unwrap();
        assert!(s.regions.iter().all(|&c| c == 1 || c == 2));
        assert!(s.regions.contains(&2));
    }

    #[test]
    fn order_does_not_change_the_set() {
        let f = figure_eight();
        let x = r(5);
        let base = enumerate_colorings(&f, &x);
        assert_eq!(enumerate_colorings_with_order(&f, &x, &[3, 1, 0, 2]), base);
        assert_eq!(enumerate_colorings_with_order(&f, &x, &[2]), base);
    }

    #[test]
    fn fundamental_cycle_of_trefoil() {
        let t = trefoil();
        let x = r(3);
        let coloring = enumerate_colorings(&t, &x).into_iter().find(|c| {
            let mut v = c.0.clone();
            v.sort_unstable();
            v == vec![0, 1, 2]
        });
        let s = extend_to_shadow(&t, &x, &coloring.unwrap(), 0).unwrap();
        let z = fundamental_cycle(&t, &s);
        assert_eq!(z.terms.len(), 3);
        assert!(z.terms.iter().all(|&(sign, _)| sign == 1));
        assert!(z.quotient_boundary(&x).is_empty());
    }

    #[test]
    fn constant_trivial_cycle_is_degenerate() {
        let t3 = FiniteRack::trivial(3).unwrap();
        let s = extend_to_shadow(&trefoil(), &t3, &Coloring(vec![1; 3]), 1).unwrap();
        let z = fundamental_cycle(&trefoil(), &s);
        assert!(z.quotient_chain().is_empty());
    }

    #[test]
    fn every_shadow_gives_a_cycle() {
        let x = FiniteRack::alexander(5, 2).unwrap();
        let d = figure_eight()
            .reidemeister1_insert(2, Sign::Negative, Side::Left)
            .unwrap();
        for s in enumerate_shadow_colorings(&d, &x).unwrap() {
            assert!(fundamental_cycle(&d, &s).quotient_boundary(&x).is_empty());
        }
    }

    #[test]
    fn rejects_non_colorings() {
        let t = trefoil();
        assert_eq!(
            extend_to_shadow(&t, &r(3), &Coloring(vec![0, 0]), 0),
            Err(ColoringError::WrongLength {
                got: 2,
                expected: 3
            })
        );
        assert!(matches!(
            is_coloring(&t, &r(3), &[0, 1, 1]),
            Err(ColoringError::RelationViolated(_))
        ));
    }
}
