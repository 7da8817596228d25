//! Oriented link diagrams given by PD codes.
//!
//! Convention: each crossing `X[a,b,c,d]` lists its four edge slots
//! counterclockwise, starting from the incoming under-edge. Slot 0 is the
//! incoming under-edge, slot 2 the outgoing under-edge, slots 1 and 3 carry
//! the over-strand. The crossing is positive when the over-strand enters at
//! slot 3 and leaves at slot 1, negative otherwise.
//!
//! The slot order also fixes the rotation system of the underlying planar
//! 4-valent graph, so regions are the orbits of the face-tracing permutation
//! "follow the edge, then turn to the next slot counterclockwise". A dart
//! walked this way keeps its face on its right.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("edge {edge} occurs {count} times, expected exactly 2")]
    UnmatchedEdge { edge: usize, count: usize },
    #[error("edge labels must be positive")]
    ZeroLabel,
    #[error("strand orientation is inconsistent on the component through edge {0}")]
    InconsistentOrientation(usize),
    #[error("face tracing is not planar or the shadow is split: V - E + F = {euler} (V={vertices}, E={edges}, F={faces})")]
    NotPlanar {
        vertices: usize,
        edges: usize,
        faces: usize,
        euler: i64,
    },
    #[error("no arc with index {0}")]
    InvalidArc(usize),
    #[error("no region with index {0}")]
    InvalidRegion(usize),
    #[error("arcs {0} and {1} do not border a common region")]
    NoCommonRegion(usize, usize),
    #[error("connected sum needs knots, got {0} components")]
    NotAKnot(usize),
    #[error("arc {0} does not border the infinity region")]
    NotOnInfinityRegion(usize),
    #[error("no orientation-compatible edge pair on the chosen arcs")]
    IncompatibleArcs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+1",
            Sign::Negative => "-1",
        })
    }
}

/// A slot occurrence: `(crossing index, slot 0..4)`.
pub type Dart = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeEnds {
    pub tail: Dart,
    pub head: Dart,
}

/// A face of the diagram's shadow as a cyclic list of `(edge, side)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    pub boundary: Vec<(usize, Side)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[usize; 4]>,
    /// `edges[e - 1]`; empty for the crossingless unknot.
    edges: Vec<EdgeEnds>,
    arcs: Vec<Vec<usize>>,
    arc_of_edge: Vec<usize>,
    signs: Vec<Sign>,
    regions: Vec<Region>,
    face_of_dart: Vec<[usize; 4]>,
    /// `(left face, right face)` per edge.
    edge_faces: Vec<(usize, usize)>,
    infinity: usize,
    components: usize,
}

impl LinkDiagram {
    /// The crossingless unknot: one edge, one arc, two regions.
    pub fn unknot() -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            edges: Vec::new(),
            arcs: vec![vec![1]],
            arc_of_edge: vec![0],
            signs: Vec::new(),
            // inside (left of the circle) and outside
            regions: vec![
                Region {
                    boundary: vec![(1, Side::Left)],
                },
                Region {
                    boundary: vec![(1, Side::Right)],
                },
            ],
            face_of_dart: Vec::new(),
            edge_faces: vec![(0, 1)],
            infinity: 1,
            components: 1,
        }
    }

    /// Builds a diagram from crossing quadruples with arbitrary positive
    /// labels, each used exactly twice. Edges are relabelled `1..=2n`
    /// consecutively along each component in the direction of travel;
    /// components are ordered by their least input label.
    pub fn from_crossings(crossings: Vec<[usize; 4]>) -> Result<Self, DiagramError> {
        if crossings.is_empty() {
            return Ok(Self::unknot());
        }
        let (relabelled, heads) = canonical_labels(&crossings)?;
        Self::derive(relabelled, heads)
    }

    pub fn parse_pd(text: &str) -> Result<Self, DiagramError> {
        Self::from_crossings(parse_pd_quadruples(text)?)
    }

    fn derive(crossings: Vec<[usize; 4]>, heads: Vec<Dart>) -> Result<Self, DiagramError> {
        let n = crossings.len();
        let edge_count = 2 * n;
        let mut occurrences: Vec<Vec<Dart>> = vec![Vec::new(); edge_count];
        for (c, quad) in crossings.iter().enumerate() {
            for (s, &e) in quad.iter().enumerate() {
                occurrences[e - 1].push((c, s));
            }
        }
        let mut edges = Vec::with_capacity(edge_count);
        for (i, occ) in occurrences.iter().enumerate() {
            let head = heads[i];
            let tail = if occ[0] == head { occ[1] } else { occ[0] };
            edges.push(EdgeEnds { tail, head });
        }
        for (i, ends) in edges.iter().enumerate() {
            if ends.head.1 == 2 || ends.tail.1 == 0 {
                return Err(DiagramError::InconsistentOrientation(i + 1));
            }
        }

        let signs: Vec<Sign> = (0..n)
            .map(|c| {
                let d = crossings[c][3];
                if edges[d - 1].head == (c, 3) {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            })
            .collect();

        let next_edge = |e: usize| -> usize {
            let (c, s) = edges[e - 1].head;
            crossings[c][(s + 2) % 4]
        };

        let mut component_of = vec![usize::MAX; edge_count];
        let mut components = 0;
        for start in 1..=edge_count {
            if component_of[start - 1] != usize::MAX {
                continue;
            }
            let mut e = start;
            loop {
                component_of[e - 1] = components;
                e = next_edge(e);
                if e == start {
                    break;
                }
            }
            components += 1;
        }

        // Arcs begin right after an under-passage and run through over-passages.
        let mut arcs: Vec<Vec<usize>> = Vec::new();
        let mut arc_of_edge = vec![usize::MAX; edge_count];
        let mut starts: Vec<usize> = (1..=edge_count)
            .filter(|&e| edges[e - 1].tail.1 == 2)
            .collect();
        for comp in 0..components {
            let has_under =
                (1..=edge_count).any(|e| component_of[e - 1] == comp && edges[e - 1].tail.1 == 2);
            if !has_under {
                starts.push(
                    (1..=edge_count)
                        .find(|&e| component_of[e - 1] == comp)
                        .unwrap(),
                );
            }
        }
        starts.sort_unstable();
        for &start in &starts {
            let id = arcs.len();
            let mut arc = Vec::new();
            let mut e = start;
            loop {
                arc.push(e);
                arc_of_edge[e - 1] = id;
                if edges[e - 1].head.1 == 0 {
                    break;
                }
                e = next_edge(e);
                if e == start {
                    break;
                }
            }
            arcs.push(arc);
        }

        // Face tracing: from dart (c, s) go along the edge to its other end
        // (c', s'), then continue with dart (c', s' + 1).
        let other_end = |(c, s): Dart| -> Dart {
            let e = crossings[c][s];
            let ends = edges[e - 1];
            if ends.tail == (c, s) {
                ends.head
            } else {
                ends.tail
            }
        };
        let mut face_raw = vec![[usize::MAX; 4]; n];
        let mut raw_faces: Vec<Vec<Dart>> = Vec::new();
        for c in 0..n {
            for s in 0..4 {
                if face_raw[c][s] != usize::MAX {
                    continue;
                }
                let id = raw_faces.len();
                let mut face = Vec::new();
                let mut dart = (c, s);
                loop {
                    if face_raw[dart.0][dart.1] != usize::MAX {
                        break;
                    }
                    face_raw[dart.0][dart.1] = id;
                    face.push(dart);
                    let (c2, s2) = other_end(dart);
                    dart = (c2, (s2 + 1) % 4);
                }
                if dart != (c, s) {
                    return Err(DiagramError::NotPlanar {
                        vertices: n,
                        edges: edge_count,
                        faces: raw_faces.len(),
                        euler: 0,
                    });
                }
                raw_faces.push(face);
            }
        }
        let side_of = |(c, s): Dart| -> (usize, Side) {
            let e = crossings[c][s];
            if edges[e - 1].tail == (c, s) {
                (e, Side::Right)
            } else {
                (e, Side::Left)
            }
        };
        let mut faces: Vec<(Vec<(usize, Side)>, usize)> = raw_faces
            .iter()
            .enumerate()
            .map(|(id, darts)| {
                let mut boundary: Vec<(usize, Side)> = darts.iter().map(|&d| side_of(d)).collect();
                let min_pos = (0..boundary.len()).min_by_key(|&i| boundary[i]).unwrap();
                boundary.rotate_left(min_pos);
                (boundary, id)
            })
            .collect();
        faces.sort_by(|a, b| a.0[0].cmp(&b.0[0]));
        let mut renumber = vec![0; faces.len()];
        for (new, (_, old)) in faces.iter().enumerate() {
            renumber[*old] = new;
        }
        let face_of_dart: Vec<[usize; 4]> = face_raw
            .iter()
            .map(|row| {
                [
                    renumber[row[0]],
                    renumber[row[1]],
                    renumber[row[2]],
                    renumber[row[3]],
                ]
            })
            .collect();
        let regions: Vec<Region> = faces
            .into_iter()
            .map(|(boundary, _)| Region { boundary })
            .collect();

        let euler = n as i64 - edge_count as i64 + regions.len() as i64;
        if euler != 2 {
            return Err(DiagramError::NotPlanar {
                vertices: n,
                edges: edge_count,
                faces: regions.len(),
                euler,
            });
        }

        let edge_faces: Vec<(usize, usize)> = edges
            .iter()
            .map(|ends| {
                (
                    face_of_dart[ends.head.0][ends.head.1],
                    face_of_dart[ends.tail.0][ends.tail.1],
                )
            })
            .collect();
        let infinity = edge_faces[edge_count - 1].1;

        Ok(LinkDiagram {
            crossings,
            edges,
            arcs,
            arc_of_edge,
            signs,
            regions,
            face_of_dart,
            edge_faces,
            infinity,
            components,
        })
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        if self.crossings.is_empty() {
            1
        } else {
            2 * self.crossings.len()
        }
    }

    pub fn is_crossingless(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Tail and head of edge `e` (1-based); `None` on the crossingless unknot.
    pub fn edge_ends(&self, e: usize) -> Option<EdgeEnds> {
        self.edges.get(e - 1).copied()
    }

    pub fn arcs(&self) -> &[Vec<usize>] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_of_edge(&self, e: usize) -> usize {
        self.arc_of_edge[e - 1]
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    pub fn infinity_region(&self) -> usize {
        self.infinity
    }

    /// Same diagram with a different distinguished outer region.
    pub fn with_infinity_region(&self, region: usize) -> Result<Self, DiagramError> {
        if region >= self.regions.len() {
            return Err(DiagramError::InvalidRegion(region));
        }
        let mut d = self.clone();
        d.infinity = region;
        Ok(d)
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn crossing_sign(&self, c: usize) -> Sign {
        self.signs[c]
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    /// `(left, right)` faces of edge `e` relative to its orientation.
    pub fn edge_faces(&self, e: usize) -> (usize, usize) {
        self.edge_faces[e - 1]
    }

    pub fn over_arc(&self, c: usize) -> usize {
        self.arc_of_edge(self.crossings[c][1])
    }

    pub fn under_in_arc(&self, c: usize) -> usize {
        self.arc_of_edge(self.crossings[c][0])
    }

    pub fn under_out_arc(&self, c: usize) -> usize {
        self.arc_of_edge(self.crossings[c][2])
    }

    /// The under-arc on the right of the over-strand: the incoming one at a
    /// positive crossing, the outgoing one at a negative crossing.
    pub fn source_under_arc(&self, c: usize) -> usize {
        match self.signs[c] {
            Sign::Positive => self.under_in_arc(c),
            Sign::Negative => self.under_out_arc(c),
        }
    }

    /// The under-arc on the left of the over-strand.
    pub fn target_under_arc(&self, c: usize) -> usize {
        match self.signs[c] {
            Sign::Positive => self.under_out_arc(c),
            Sign::Negative => self.under_in_arc(c),
        }
    }

    /// The region at crossing `c` lying to the right of both strands.
    pub fn source_region(&self, c: usize) -> usize {
        match self.signs[c] {
            Sign::Positive => self.face_of_dart[c][1],
            Sign::Negative => self.face_of_dart[c][2],
        }
    }

    /// Region holding the corner between slot `s` and the next slot
    /// counterclockwise at crossing `c`.
    pub fn corner_region(&self, c: usize, s: usize) -> usize {
        self.face_of_dart[c][(s + 1) % 4]
    }

    /// Regions bordered by at least one edge of `arc`, with the side.
    pub fn arc_regions(&self, arc: usize) -> Vec<(usize, usize, Side)> {
        let mut out = Vec::new();
        for &e in &self.arcs[arc] {
            let (l, r) = self.edge_faces(e);
            out.push((l, e, Side::Left));
            out.push((r, e, Side::Right));
        }
        out
    }

    pub fn to_pd(&self) -> String {
        let body: Vec<String> = self
            .crossings
            .iter()
            .map(|q| format!("X[{},{},{},{}]", q[0], q[1], q[2], q[3]))
            .collect();
        format!("PD[{}]", body.join(","))
    }

    pub fn dump(&self) -> DiagramDump {
        DiagramDump {
            pd: self.to_pd(),
            crossings: self.crossings.clone(),
            signs: self.signs.iter().map(|s| s.value()).collect(),
            arcs: self.arcs.clone(),
            regions: self
                .regions
                .iter()
                .map(|r| {
                    r.boundary
                        .iter()
                        .map(|&(e, s)| (e, if s == Side::Left { "L" } else { "R" }))
                        .collect()
                })
                .collect(),
            infinity_region: self.infinity,
            components: self.components,
            writhe: self.writhe(),
        }
    }

    /// The mirror image, obtained by switching every crossing.
    pub fn mirror(&self) -> Self {
        if self.is_crossingless() {
            return self.clone();
        }
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(&[a, b, c, d], sign)| match sign {
                Sign::Positive => [d, a, b, c],
                Sign::Negative => [b, c, d, a],
            })
            .collect();
        Self::from_crossings(crossings).expect("crossing change keeps the diagram valid")
    }

    fn fresh_label(&self) -> usize {
        self.edge_count() + 1
    }

    /// Adds a kink on the first edge of `arc`. `sign` is the sign of the new
    /// crossing, `side` the side of the strand the small loop sits on.
    pub fn reidemeister1_insert(
        &self,
        arc: usize,
        sign: Sign,
        side: Side,
    ) -> Result<Self, DiagramError> {
        if arc >= self.arcs.len() {
            return Err(DiagramError::InvalidArc(arc));
        }
        let e = self.arcs[arc][0];
        let mut crossings = self.crossings.clone();
        let (e_in, e_out, lp) = if self.is_crossingless() {
            (e, e, self.fresh_label())
        } else {
            let out = self.fresh_label();
            let head = self.edges[e - 1].head;
            crossings[head.0][head.1] = out;
            (e, out, out + 1)
        };
        // Local pictures, strand entering from the south:
        //   under first, loop on the left  -> over-strand enters at slot 3
        //   under first, loop on the right -> over-strand enters at slot 1
        //   over first, loop on the right  -> enters over at slot 3, returns under
        //   over first, loop on the left   -> enters over at slot 1, returns under
        let kink = match (sign, side) {
            (Sign::Positive, Side::Left) => [e_in, e_out, lp, lp],
            (Sign::Negative, Side::Right) => [e_in, lp, lp, e_out],
            (Sign::Positive, Side::Right) => [lp, lp, e_out, e_in],
            (Sign::Negative, Side::Left) => [lp, e_in, e_out, lp],
        };
        crossings.push(kink);
        Self::from_crossings(crossings)
    }

    /// Pushes a finger of `arc_over` across `arc_under` inside a region the
    /// two arcs share (the first such region, then the first edges found).
    pub fn reidemeister2_insert(
        &self,
        arc_over: usize,
        arc_under: usize,
    ) -> Result<Self, DiagramError> {
        for &a in &[arc_over, arc_under] {
            if a >= self.arcs.len() {
                return Err(DiagramError::InvalidArc(a));
            }
        }
        let over_sides = self.arc_regions(arc_over);
        let under_sides = self.arc_regions(arc_under);
        let mut choice = None;
        'search: for region in 0..self.regions.len() {
            for &(f1, e1, s1) in &over_sides {
                if f1 != region {
                    continue;
                }
                for &(f2, e2, s2) in &under_sides {
                    if f2 == region && (e1 != e2 || s1 == s2) {
                        choice = Some((e1, s1, e2, s2));
                        break 'search;
                    }
                }
            }
        }
        let (e1, s1, e2, s2) = choice.ok_or(DiagramError::NoCommonRegion(arc_over, arc_under))?;
        self.reidemeister2_at(e1, s1, e2, s2)
    }

    /// R2 insertion along explicit edges: `over` borders the chosen region on
    /// side `over_side`, `under` on side `under_side`.
    pub fn reidemeister2_at(
        &self,
        over: usize,
        over_side: Side,
        under: usize,
        under_side: Side,
    ) -> Result<Self, DiagramError> {
        // Local model: the under piece runs along the x-axis with the region
        // above it; the over piece runs above the region and dips across the
        // x-axis at P, returning at Q.
        let d1: i32 = if over_side == Side::Right { 1 } else { -1 };
        let d2: i32 = if under_side == Side::Left { 1 } else { -1 };
        let mut crossings = self.crossings.clone();
        let mut next = self.fresh_label();
        let mut fresh = || {
            next += 1;
            next - 1
        };
        let (e1a, e1b, e1c, e2a, e2b, e2c);
        if self.is_crossingless() {
            // one closed strand: over pass first, then the under pass
            e1a = over;
            e1b = fresh();
            e1c = fresh();
            e2a = e1c;
            e2b = fresh();
            e2c = e1a;
        } else if over == under {
            let head = self.edges[over - 1].head;
            // over pass first along the edge
            e1a = over;
            e1b = fresh();
            e1c = fresh();
            e2a = e1c;
            e2b = fresh();
            e2c = fresh();
            crossings[head.0][head.1] = e2c;
        } else {
            let h1 = self.edges[over - 1].head;
            let h2 = self.edges[under - 1].head;
            e1a = over;
            e1b = fresh();
            e1c = fresh();
            e2a = under;
            e2b = fresh();
            e2c = fresh();
            crossings[h1.0][h1.1] = e1c;
            crossings[h2.0][h2.1] = e2c;
        }
        let first_on_under = -d2;
        let build = |x: i32, over_dir: (i32, i32), over_in: usize, over_out: usize| {
            let (under_in, under_out) = if x == first_on_under {
                (e2a, e2b)
            } else {
                (e2b, e2c)
            };
            planar_crossing((d2, 0), over_dir, under_in, under_out, over_in, over_out)
        };
        let p = build(-d1, (0, -1), e1a, e1b);
        let q = build(d1, (0, 1), e1b, e1c);
        crossings.push(p);
        crossings.push(q);
        Self::from_crossings(crossings)
    }

    /// Connected sum of two knot diagrams, joined across their infinity
    /// regions next to `arc1` and `arc2`.
    pub fn connected_sum(
        &self,
        other: &Self,
        arc1: usize,
        arc2: usize,
    ) -> Result<Self, DiagramError> {
        for d in [self, other] {
            if d.components != 1 {
                return Err(DiagramError::NotAKnot(d.components));
            }
        }
        if arc1 >= self.arcs.len() {
            return Err(DiagramError::InvalidArc(arc1));
        }
        if arc2 >= other.arcs.len() {
            return Err(DiagramError::InvalidArc(arc2));
        }
        let outer = |d: &Self, arc: usize| -> Vec<(usize, Side)> {
            d.arc_regions(arc)
                .into_iter()
                .filter(|&(f, _, _)| f == d.infinity)
                .map(|(_, e, s)| (e, s))
                .collect()
        };
        let o1 = outer(self, arc1);
        let o2 = outer(other, arc2);
        if o1.is_empty() {
            return Err(DiagramError::NotOnInfinityRegion(arc1));
        }
        if o2.is_empty() {
            return Err(DiagramError::NotOnInfinityRegion(arc2));
        }
        if self.is_crossingless() {
            return Ok(other.clone());
        }
        if other.is_crossingless() {
            return Ok(self.clone());
        }
        // The band joins two edges that face it from the same side, which
        // makes them antiparallel across the band.
        let (e1, e2) = o1
            .iter()
            .find_map(|&(e1, s1)| {
                o2.iter()
                    .find(|&&(_, s2)| s2 == s1)
                    .map(|&(e2, _)| (e1, e2))
            })
            .ok_or(DiagramError::IncompatibleArcs)?;
        let offset = self.edge_count();
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|q| q.map(|e| e + offset)));
        let c_off = self.crossings.len();
        let t1 = self.edges[e1 - 1].tail;
        let h1 = self.edges[e1 - 1].head;
        let t2 = other.edges[e2 - 1].tail;
        let h2 = other.edges[e2 - 1].head;
        let f = e1;
        let g = e2 + offset;
        crossings[t1.0][t1.1] = f;
        crossings[h2.0 + c_off][h2.1] = f;
        crossings[t2.0 + c_off][t2.1] = g;
        crossings[h1.0][h1.1] = g;
        Self::from_crossings(crossings)
    }

    /// Connected sum using the first orientation-compatible pair of arcs on
    /// the two infinity regions.
    pub fn connected_sum_auto(&self, other: &Self) -> Result<Self, DiagramError> {
        for a1 in 0..self.arcs.len() {
            for a2 in 0..other.arcs.len() {
                match self.connected_sum(other, a1, a2) {
                    Ok(d) => return Ok(d),
                    Err(DiagramError::NotAKnot(k)) => return Err(DiagramError::NotAKnot(k)),
                    Err(_) => continue,
                }
            }
        }
        Err(DiagramError::IncompatibleArcs)
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramDump {
    pub pd: String,
    pub crossings: Vec<[usize; 4]>,
    pub signs: Vec<i64>,
    pub arcs: Vec<Vec<usize>>,
    pub regions: Vec<Vec<(usize, &'static str)>>,
    pub infinity_region: usize,
    pub components: usize,
    pub writhe: i64,
}

/// Slot order for a crossing drawn with direction vectors: rays from the
/// centre are `-u` (under in), `u` (under out), `-o` (over in), `o` (over out),
/// listed counterclockwise from `-u`.
fn planar_crossing(
    under_dir: (i32, i32),
    over_dir: (i32, i32),
    under_in: usize,
    under_out: usize,
    over_in: usize,
    over_out: usize,
) -> [usize; 4] {
    let back = (-under_dir.0, -under_dir.1);
    let quarter = (-back.1, back.0);
    if over_dir.0 * quarter.0 + over_dir.1 * quarter.1 > 0 {
        [under_in, over_out, under_out, over_in]
    } else {
        [under_in, over_in, under_out, over_out]
    }
}

/// Orients every component, then relabels edges consecutively.
fn canonical_labels(
    crossings: &[[usize; 4]],
) -> Result<(Vec<[usize; 4]>, Vec<Dart>), DiagramError> {
    let mut occ: BTreeMap<usize, Vec<Dart>> = BTreeMap::new();
    for (c, quad) in crossings.iter().enumerate() {
        for (s, &e) in quad.iter().enumerate() {
            if e == 0 {
                return Err(DiagramError::ZeroLabel);
            }
            occ.entry(e).or_default().push((c, s));
        }
    }
    for (&e, list) in &occ {
        if list.len() != 2 {
            return Err(DiagramError::UnmatchedEdge {
                edge: e,
                count: list.len(),
            });
        }
    }
    let other = |e: usize, d: Dart| -> Dart {
        let l = &occ[&e];
        if l[0] == d {
            l[1]
        } else {
            l[0]
        }
    };
    // head occurrence per label once oriented
    let mut head: BTreeMap<usize, Dart> = BTreeMap::new();
    let mut order: Vec<Vec<usize>> = Vec::new();
    let labels: Vec<usize> = occ.keys().copied().collect();
    for &start in &labels {
        if head.contains_key(&start) {
            continue;
        }
        // walk with a provisional orientation: occurrence 0 of `start` is its head
        let mut walk: Vec<(usize, Dart)> = Vec::new();
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut e = start;
        let mut h = occ[&start][0];
        loop {
            if !seen.insert(e) {
                return Err(DiagramError::InconsistentOrientation(e));
            }
            walk.push((e, h));
            let partner = (h.0, (h.1 + 2) % 4);
            let next = crossings[partner.0][partner.1];
            let next_head = other(next, partner);
            if next == start {
                if next_head != occ[&start][0] {
                    return Err(DiagramError::InconsistentOrientation(start));
                }
                break;
            }
            e = next;
            h = next_head;
        }
        let mut agree = 0;
        let mut disagree = 0;
        for &(e, h) in &walk {
            let t = other(e, h);
            for (d, is_head) in [(h, true), (t, false)] {
                match (d.1, is_head) {
                    (0, true) | (2, false) => agree += 1,
                    (0, false) | (2, true) => disagree += 1,
                    _ => {}
                }
            }
        }
        let flip = if agree > 0 && disagree > 0 {
            return Err(DiagramError::InconsistentOrientation(start));
        } else if disagree > 0 {
            true
        } else if agree > 0 {
            false
        } else {
            // over-strand only: follow the input numbering
            let mut sorted: Vec<usize> = walk.iter().map(|&(e, _)| e).collect();
            sorted.sort_unstable();
            let pos = sorted.iter().position(|&x| x == start).unwrap();
            let succ = sorted[(pos + 1) % sorted.len()];
            let forward = walk.get(1).map(|w| w.0).unwrap_or(start);
            forward != succ && walk.last().map(|w| w.0) == Some(succ)
        };
        let mut seq: Vec<usize> = Vec::with_capacity(walk.len());
        if flip {
            for &(e, h) in &walk {
                head.insert(e, other(e, h));
            }
            seq.push(walk[0].0);
            seq.extend(walk[1..].iter().rev().map(|w| w.0));
        } else {
            for &(e, h) in &walk {
                head.insert(e, h);
            }
            seq.extend(walk.iter().map(|w| w.0));
        }
        order.push(seq);
    }
    // components ordered by least label, each starting at its least label
    for seq in order.iter_mut() {
        let pos = (0..seq.len()).min_by_key(|&i| seq[i]).unwrap();
        seq.rotate_left(pos);
    }
    order.sort_by_key(|seq| seq[0]);
    let mut new_label: BTreeMap<usize, usize> = BTreeMap::new();
    for e in order.iter().flatten() {
        let next = new_label.len() + 1;
        new_label.insert(*e, next);
    }
    let mut heads = vec![(0, 0); new_label.len()];
    for (old, new) in &new_label {
        heads[new - 1] = head[old];
    }
    Ok((
        crossings.iter().map(|q| q.map(|e| new_label[&e])).collect(),
        heads,
    ))
}

/// Parses `PD[X[a,b,c,d], ...]` or one quadruple per line
/// (`a b c d`, `a,b,c,d` or `X[a,b,c,d]`).
pub fn parse_pd_quadruples(text: &str) -> Result<Vec<[usize; 4]>, DiagramError> {
    // `#` comment lines are blanked in place so byte offsets in errors stay meaningful.
    let cleaned: String = text
        .split_inclusive('\n')
        .map(|line| {
            if line.trim_start().starts_with('#') {
                line.chars()
                    .map(|c| if c == '\n' { c } else { ' ' })
                    .collect()
            } else {
                line.to_string()
            }
        })
        .collect();
    let text = cleaned.as_str();
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    if trimmed.starts_with("PD") {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: offset + 2,
        };
        p.expect(b'[')?;
        let mut out = Vec::new();
        p.skip_ws();
        if p.peek() == Some(b']') {
            p.pos += 1;
        } else {
            loop {
                out.push(p.crossing()?);
                p.skip_ws();
                match p.peek() {
                    Some(b',') => p.pos += 1,
                    Some(b']') => {
                        p.pos += 1;
                        break;
                    }
                    _ => return Err(p.error("expected ',' or ']'")),
                }
            }
        }
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    let mut line_start = 0;
    for line in text.split_inclusive('\n') {
        let body = line.split('#').next().unwrap_or("");
        if !body.trim().is_empty() {
            let mut p = Parser {
                src: text.as_bytes(),
                pos: line_start,
            };
            p.skip_ws();
            let quad = if p.peek() == Some(b'X') {
                p.crossing()?
            } else {
                let mut q = [0; 4];
                for (i, slot) in q.iter_mut().enumerate() {
                    if i > 0 {
                        p.skip_inline_ws();
                        if p.peek() == Some(b',') {
                            p.pos += 1;
                        }
                    }
                    p.skip_inline_ws();
                    *slot = p.number()?;
                }
                q
            };
            p.skip_inline_ws();
            let end = line_start + body.len();
            if p.pos < end && !matches!(p.peek(), Some(b'\n') | Some(b'\r')) {
                return Err(p.error("trailing characters on line"));
            }
            out.push(quad);
        }
        line_start += line.len();
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> DiagramError {
        DiagramError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn skip_inline_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), DiagramError> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", byte as char)))
        }
    }

    fn number(&mut self) -> Result<usize, DiagramError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an edge label"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| DiagramError::Syntax {
                position: start,
                message: "label too large".into(),
            })
    }

    fn crossing(&mut self) -> Result<[usize; 4], DiagramError> {
        self.expect(b'X')?;
        self.expect(b'[')?;
        let mut q = [0; 4];
        for (i, slot) in q.iter_mut().enumerate() {
            if i > 0 {
                self.expect(b',')?;
            }
            self.skip_ws();
            *slot = self.number()?;
        }
        self.expect(b']')?;
        Ok(q)
    }
}

/// Standard diagrams used across tests and the CLI.
pub mod standard {
    use super::LinkDiagram;

    /// Right-handed trefoil (all crossings positive).
    pub const TREFOIL: &str = "PD[X[4,2,5,1],X[6,4,1,3],X[2,6,3,5]]";
    pub const FIGURE_EIGHT: &str = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]";
    pub const HOPF: &str = "PD[X[4,1,3,2],X[2,3,1,4]]";

    pub fn trefoil() -> LinkDiagram {
        LinkDiagram::parse_pd(TREFOIL).unwrap()
    }

    pub fn figure_eight() -> LinkDiagram {
        LinkDiagram::parse_pd(FIGURE_EIGHT).unwrap()
    }

    pub fn hopf() -> LinkDiagram {
        LinkDiagram::parse_pd(HOPF).unwrap()
    }

    pub fn unknot() -> LinkDiagram {
        LinkDiagram::unknot()
    }
}
