//! Pre-cubic sets behind the rack space and the extended rack space, the
//! rack and quandle graphs, and the cell inventory of the extended quandle
//! space through dimension three.

use std::fmt::Write as _;

use petgraph::algo::{connected_components, kosaraju_scc};
use petgraph::graph::DiGraph;
use serde::Serialize;
use thiserror::Error;

use crate::homology::{
    all_tuples, is_degenerate, ChainComplex, Coefficients, HomologyError, HomologyGroup,
    SparseMatrix, Theory, TupleIndex,
};
use crate::quandle::FiniteRack;

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("the extended quandle space needs a quandle")]
    NotAQuandle,
    #[error("degree {requested} exceeds the bound {bound} for this construction")]
    DegreeBound { requested: usize, bound: usize },
    #[error("face relation fails at degree {degree} on {cell:?} (i={i}, j={j}, eps={eps}, delta={delta})")]
    Relation {
        degree: usize,
        cell: Vec<usize>,
        i: usize,
        j: usize,
        eps: u8,
        delta: u8,
    },
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

pub const RACK_SPACE_MAX_DEGREE: usize = 4;
pub const EXTENDED_SPACE_MAX_DEGREE: usize = 3;

/// `BX` has degree-`n` cells `X^n`; `B_X X` has `X^{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellShape {
    Rack,
    Extended,
}

#[derive(Debug, Clone)]
pub struct PreCubicSet {
    rack: FiniteRack,
    shape: CellShape,
    cells: Vec<Vec<Vec<usize>>>,
}

impl PreCubicSet {
    pub fn shape(&self) -> CellShape {
        self.shape
    }

    pub fn max_degree(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, n: usize) -> &[Vec<usize>] {
        &self.cells[n]
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    fn offset(&self) -> usize {
        match self.shape {
            CellShape::Rack => 0,
            CellShape::Extended => 1,
        }
    }

    /// `d_i^eps` for `1 <= i <= n` on a degree-`n` cell. In the rack space
    /// `d_1^0 = d_1^1` drops the first entry; the extended space uses the
    /// rack faces shifted by one position.
    pub fn face(&self, i: usize, eps: u8, cell: &[usize]) -> Vec<usize> {
        let j = i + self.offset();
        assert!(j >= 1 && j <= cell.len(), "face index {i} out of range");
        let pivot = cell[j - 1];
        let mut out = Vec::with_capacity(cell.len() - 1);
        for &a in &cell[..j - 1] {
            out.push(if eps == 0 { a } else { self.rack.op(a, pivot) });
        }
        out.extend_from_slice(&cell[j..]);
        out
    }

    /// `d_i^eps d_j^delta = d_{j-1}^delta d_i^eps` for all `i < j`, checked
    /// on every cell of every degree.
    pub fn verify_relations(&self) -> Result<(), SpaceError> {
        for n in 2..=self.max_degree() {
            for cell in &self.cells[n] {
                for j in 2..=n {
                    for i in 1..j {
                        for eps in 0..2u8 {
                            for delta in 0..2u8 {
                                let lhs = self.face(i, eps, &self.face(j, delta, cell));
                                let rhs = self.face(j - 1, delta, &self.face(i, eps, cell));
                                if lhs != rhs {
                                    return Err(SpaceError::Relation {
                                        degree: n,
                                        cell: cell.clone(),
                                        i,
                                        j,
                                        eps,
                                        delta,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Cellular chain complex of the realization with
    /// `∂ = sum_{i=1}^{n} (-1)^{i+1} (d_i^0 - d_i^1)`. With `quotient`, cells
    /// labelled by degenerate tuples are killed, which is the effect of the
    /// mapping cones attached to them.
    pub fn cellular_complex(&self, quotient: bool) -> ChainComplex {
        let size = self.rack.size();
        let bases: Vec<Vec<Vec<usize>>> = self
            .cells
            .iter()
            .map(|cs| {
                cs.iter()
                    .filter(|c| !quotient || !is_degenerate(c))
                    .cloned()
                    .collect()
            })
            .collect();
        let arities: Vec<usize> = (0..bases.len()).map(|n| n + self.offset()).collect();
        let mut boundaries = vec![SparseMatrix::zeros(0, bases[0].len())];
        for n in 1..bases.len() {
            let index = TupleIndex::new(size, arities[n - 1], &bases[n - 1]);
            let columns = bases[n]
                .iter()
                .map(|cell| {
                    let mut col = Vec::with_capacity(2 * n);
                    for i in 1..=n {
                        let sign = if i % 2 == 1 { 1 } else { -1 };
                        for (eps, s) in [(0u8, sign), (1u8, -sign)] {
                            if let Some(r) = index.get(&self.face(i, eps, cell)) {
                                col.push((r, s));
                            }
                        }
                    }
                    col
                })
                .collect();
            boundaries.push(SparseMatrix::from_columns(bases[n - 1].len(), columns));
        }
        let theory = if quotient {
            Theory::Quandle
        } else {
            Theory::Rack
        };
        ChainComplex::from_parts(theory, size, arities, bases, boundaries)
    }
}

/// Pre-cubic set `(X^n, d_i^0, d_i^1)` of the rack space.
pub fn build_rack_space_cells(
    x: &FiniteRack,
    max_degree: usize,
) -> Result<PreCubicSet, SpaceError> {
    if max_degree > RACK_SPACE_MAX_DEGREE {
        return Err(SpaceError::DegreeBound {
            requested: max_degree,
            bound: RACK_SPACE_MAX_DEGREE,
        });
    }
    let cells = (0..=max_degree).map(|n| all_tuples(x.size(), n)).collect();
    let set = PreCubicSet {
        rack: x.clone(),
        shape: CellShape::Rack,
        cells,
    };
    set.verify_relations()?;
    Ok(set)
}

/// Pre-cubic set `(X^{n+1}, d_{i+1}^0, d_{i+1}^1)` of the extended rack space.
pub fn build_extended_rack_space_cells(
    x: &FiniteRack,
    max_degree: usize,
) -> Result<PreCubicSet, SpaceError> {
    if max_degree > EXTENDED_SPACE_MAX_DEGREE {
        return Err(SpaceError::DegreeBound {
            requested: max_degree,
            bound: EXTENDED_SPACE_MAX_DEGREE,
        });
    }
    let cells = (0..=max_degree)
        .map(|n| all_tuples(x.size(), n + 1))
        .collect();
    let set = PreCubicSet {
        rack: x.clone(),
        shape: CellShape::Extended,
        cells,
    };
    set.verify_relations()?;
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Rack,
    ExtendedRack,
    ExtendedQuandle,
}

/// `H_n` of a space from its cellular chain complex. Equals `H_n^R(X)` for
/// the rack space, `H_{n+1}^R(X)` for the extended rack space and
/// `H_{n+1}^Q(X)` for the extended quandle space.
pub fn space_homology(
    x: &FiniteRack,
    space: Space,
    n: usize,
    coefficients: Coefficients,
) -> Result<HomologyGroup, SpaceError> {
    let complex = match space {
        Space::Rack => build_rack_space_cells(x, n + 1)?.cellular_complex(false),
        Space::ExtendedRack => build_extended_rack_space_cells(x, n + 1)?.cellular_complex(false),
        Space::ExtendedQuandle => {
            if !x.is_quandle() {
                return Err(SpaceError::NotAQuandle);
            }
            build_extended_rack_space_cells(x, n + 1)?.cellular_complex(true)
        }
    };
    complex.check_chain_condition()?;
    Ok(complex.homology(n, coefficients)?)
}

/// The 1-skeleton of the extended rack space: an edge `(a, b)` from `a` to
/// `a*b` for every pair. The quandle graph drops the loops `(a, a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledGraph {
    pub vertices: usize,
    pub edges: Vec<GraphEdge>,
    pub quandle_graph: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub label: (usize, usize),
    pub source: usize,
    pub target: usize,
}

impl GraphEdge {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

pub fn rack_graph(x: &FiniteRack) -> LabeledGraph {
    build_graph(x, false)
}

pub fn quandle_graph(x: &FiniteRack) -> LabeledGraph {
    build_graph(x, true)
}

fn build_graph(x: &FiniteRack, drop_diagonal: bool) -> LabeledGraph {
    let n = x.size();
    let edges = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !(drop_diagonal && a == b))
        .map(|(a, b)| GraphEdge {
            label: (a, b),
            source: a,
            target: x.op(a, b),
        })
        .collect();
    LabeledGraph {
        vertices: n,
        edges,
        quandle_graph: drop_diagonal,
    }
}

impl LabeledGraph {
    fn to_petgraph(&self) -> DiGraph<(), (usize, usize)> {
        let mut g = DiGraph::new();
        let nodes: Vec<_> = (0..self.vertices).map(|_| g.add_node(())).collect();
        for e in &self.edges {
            g.add_edge(nodes[e.source], nodes[e.target], e.label);
        }
        g
    }

    /// Weakly connected components.
    pub fn component_count(&self) -> usize {
        connected_components(&self.to_petgraph())
    }

    pub fn strong_component_count(&self) -> usize {
        kosaraju_scc(&self.to_petgraph()).len()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    /// Deterministic DOT text; edges in label order.
    pub fn to_dot(&self) -> String {
        let name = if self.quandle_graph {
            "quandle_graph"
        } else {
            "rack_graph"
        };
        let mut out = format!("digraph {name} {{\n");
        for v in 0..self.vertices {
            let _ = writeln!(out, "  {v};");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"({},{})\"];",
                e.source, e.target, e.label.0, e.label.1
            );
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeCase {
    /// `(a, b, b)`: the square is a sphere and one 3-cell fills it.
    Sphere,
    /// `(a, a, b)`: the square is the side of a cylinder closed by two disks.
    Cylinder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeCell {
    pub label: Vec<usize>,
    pub case: ConeCase,
    /// The square the 3-cell is attached along.
    pub attaching_square: Vec<usize>,
    /// Capping disks `D_(c,c)` in the attaching set, recorded by `c`.
    pub attaching_disks: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimensionCount {
    pub original: usize,
    pub capping: usize,
    pub cone: usize,
}

impl DimensionCount {
    pub fn total(&self) -> usize {
        self.original + self.capping + self.cone
    }
}

/// Cells of the 3-skeleton: cubes of the extended rack space, disks capping
/// the loops `(a, a)`, and the 3-cells filling degenerate squares.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellCensus {
    pub action_variant: bool,
    pub dimensions: [DimensionCount; 4],
    pub capping_disks: Vec<usize>,
    pub cone_cells: Vec<ConeCell>,
}

impl CellCensus {
    pub fn totals(&self) -> [usize; 4] {
        self.dimensions.map(|d| d.total())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn extended_quandle_census(x: &FiniteRack) -> Result<CellCensus, SpaceError> {
    census(x, false)
}

/// Same inventory for the action quandle space: no capping disks and only
/// the `(a, b, b)` cells in dimension three.
pub fn action_quandle_census(x: &FiniteRack) -> Result<CellCensus, SpaceError> {
    census(x, true)
}

fn census(x: &FiniteRack, action: bool) -> Result<CellCensus, SpaceError> {
    if !x.is_quandle() {
        return Err(SpaceError::NotAQuandle);
    }
    let n = x.size();
    let capping_disks: Vec<usize> = if action { Vec::new() } else { (0..n).collect() };
    let mut cone_cells = Vec::new();
    for t in all_tuples(n, 3) {
        let (a, b, c) = (t[0], t[1], t[2]);
        if b == c {
            cone_cells.push(ConeCell {
                label: t.clone(),
                case: ConeCase::Sphere,
                attaching_square: t,
                attaching_disks: Vec::new(),
            });
        } else if a == b && !action {
            let disks = vec![a, x.op(a, c)];
            cone_cells.push(ConeCell {
                label: t.clone(),
                case: ConeCase::Cylinder,
                attaching_square: t,
                attaching_disks: disks,
            });
        }
    }
    let dim = |original, capping, cone| DimensionCount {
        original,
        capping,
        cone,
    };
    let dimensions = [
        dim(n, 0, 0),
        dim(n * n, 0, 0),
        dim(n.pow(3), capping_disks.len(), 0),
        dim(n.pow(4), 0, cone_cells.len()),
    ];
    Ok(CellCensus {
        action_variant: action,
        dimensions,
        capping_disks,
        cone_cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> FiniteRack {
        FiniteRack::dihedral(3).unwrap()
    }

    #[test]
    fn rack_space_cells() {
        let s = build_rack_space_cells(&r3(), 3).unwrap();
        assert_eq!(s.cell_counts(), vec![1, 3, 9, 27]);
        assert_eq!(s.face(1, 0, &[0]), Vec::<usize>::new());
        assert_eq!(s.face(1, 1, &[0, 1]), vec![1]);
        assert_eq!(s.face(2, 1, &[0, 1]), vec![2]);
        assert!(build_rack_space_cells(&r3(), 5).is_err());
    }

    #[test]
    fn extended_space_cells() {
        let s = build_extended_rack_space_cells(&r3(), 2).unwrap();
        assert_eq!(s.cell_counts(), vec![3, 9, 27]);
        assert_eq!(s.face(1, 0, &[0, 1]), vec![0]);
        assert_eq!(s.face(1, 1, &[0, 1]), vec![2]);
        let t3 = FiniteRack::trivial(3).unwrap();
        assert_eq!(rack_graph(&t3).loop_count(), 9);
    }

    #[test]
    fn graphs() {
        let g = quandle_graph(&r3());
        assert_eq!(g.edges.len(), 6);
        assert_eq!(g.component_count(), 1);
        assert_eq!(g.strong_component_count(), 1);
        assert_eq!(
            rack_graph(&FiniteRack::dihedral(4).unwrap()).component_count(),
            2
        );
        assert_eq!(
            rack_graph(&FiniteRack::trivial(3).unwrap()).component_count(),
            3
        );
        let t1 = rack_graph(&FiniteRack::trivial(1).unwrap());
        assert_eq!(
            t1.to_dot(),
            "digraph rack_graph {\n  0;\n  0 -> 0 [label=\"(0,0)\"];\n}\n"
        );
    }

    #[test]
    fn census_formulas() {
        assert_eq!(
            extended_quandle_census(&r3()).unwrap().totals(),
            [3, 9, 30, 96]
        );
        assert_eq!(
            extended_quandle_census(&FiniteRack::trivial(2).unwrap())
                .unwrap()
                .totals(),
            [2, 4, 10, 22]
        );
        let action = action_quandle_census(&r3()).unwrap();
        assert_eq!(action.totals(), [3, 9, 27, 81 + 9]);
        let c = extended_quandle_census(&r3()).unwrap();
        let cyl = c
            .cone_cells
            .iter()
            .find(|c| c.label == vec![0, 0, 1])
            .unwrap();
        assert_eq!(cyl.attaching_disks, vec![0, 2]);
        assert!(matches!(
            extended_quandle_census(&FiniteRack::cyclic(2).unwrap()),
            Err(SpaceError::NotAQuandle)
        ));
    }

    #[test]
    fn space_homology_matches_shift() {
        let z = Coefficients::Integers;
        let r4 = FiniteRack::dihedral(4).unwrap();
        assert_eq!(
            space_homology(&r4, Space::ExtendedRack, 0, z)
                .unwrap()
                .to_string(),
            "Z^2"
        );
        assert_eq!(
            space_homology(&r3(), Space::ExtendedQuandle, 0, z)
                .unwrap()
                .to_string(),
            "Z"
        );
        assert_eq!(
            space_homology(&r3(), Space::ExtendedQuandle, 1, z)
                .unwrap()
                .to_string(),
            "0"
        );
        assert_eq!(
            space_homology(&r3(), Space::ExtendedQuandle, 2, z)
                .unwrap()
                .to_string(),
            "Z/3"
        );
    }
}
