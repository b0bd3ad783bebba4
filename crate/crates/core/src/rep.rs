//! Orthogonal representations: per-corner angles plus per-edge turn words,
//! and the validity checker.
//!
//! Corner `i` at vertex `v` is the clockwise gap between `rotation[v][i]`
//! and its successor; a degree-1 vertex has a single 360-degree corner.
//! Turn words are stored for the canonical edge direction `u -> v`;
//! traversing an edge backwards reverses the word and flips every turn.

use alloc::vec::Vec;

use crate::graph::{Half, PlaneGraph};

/// One bend on an edge, as seen walking the canonical direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    L,
    R,
}

impl Turn {
    pub fn flip(self) -> Turn {
        match self {
            Turn::L => Turn::R,
            Turn::R => Turn::L,
        }
    }

    /// Turn in right-positive units.
    pub fn units(self) -> i32 {
        match self {
            Turn::L => -1,
            Turn::R => 1,
        }
    }
}

/// A (claimed) orthogonal representation of an embedded graph.
#[derive(Debug, Clone)]
pub struct OrthogonalRepresentation {
    graph: PlaneGraph,
    /// `angles[v][i]` in degrees, one entry per corner.
    angles: Vec<Vec<u16>>,
    /// Bend sequence per edge in canonical direction.
    turns: Vec<Vec<Turn>>,
}

/// A reported H1/H2 violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Angle sum at a vertex differs from 360.
    AngleSum { vertex: u64, sum: u32 },
    /// A face's turn total is off: -4 expected on internal faces, +4 on the
    /// external face (right-positive turns along the face walk).
    FaceSum { face: u32, got: i32, expected: i32 },
    /// An angle outside {90, 180, 270, 360}.
    BadAngle { vertex: u64, corner: usize, angle: u16 },
}

/// Checks an angle labeling: true plus an empty report when both the
/// vertex angle sums and the face turn totals hold everywhere.
pub fn check_representation(rep: &OrthogonalRepresentation) -> (bool, Vec<Violation>) {
    let violations = rep.check();
    (violations.is_empty(), violations)
}

impl OrthogonalRepresentation {
    pub fn new(graph: PlaneGraph, angles: Vec<Vec<u16>>, turns: Vec<Vec<Turn>>) -> Self {
        assert_eq!(angles.len(), graph.vertex_count());
        assert_eq!(turns.len(), graph.edge_count());
        for v in 0..graph.vertex_count() {
            assert_eq!(angles[v].len(), graph.degree(v as u32));
        }
        OrthogonalRepresentation { graph, angles, turns }
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn angle(&self, v: u32, corner: usize) -> u16 {
        self.angles[v as usize][corner]
    }

    pub fn angles_at(&self, v: u32) -> &[u16] {
        &self.angles[v as usize]
    }

    pub fn turns(&self, e: u32) -> &[Turn] {
        &self.turns[e as usize]
    }

    pub fn total_bends(&self) -> usize {
        self.turns.iter().map(|w| w.len()).sum()
    }

    /// Signed turn total along an edge walked in the direction of `h`.
    pub fn edge_turn_units(&self, h: Half) -> i32 {
        let raw: i32 = self.turns[h.edge() as usize].iter().map(|t| t.units()).sum();
        if h.is_rev() { -raw } else { raw }
    }

    /// Clockwise angle sweep at `v` from the corner after rotation position
    /// `from` up to position `to`; a full revolution when they coincide.
    pub fn sweep_cw(&self, v: u32, from: usize, to: usize) -> u32 {
        let deg = self.graph.degree(v);
        if from == to {
            return 360;
        }
        let mut sum = 0u32;
        let mut i = from;
        while i != to {
            sum += self.angles[v as usize][i] as u32;
            i = (i + 1) % deg;
        }
        sum
    }

    /// Turn contribution, right-positive, when a walk arrives at `v` along
    /// `arrive` and departs along `depart` (both halves point along the
    /// walk). The swept corners are those on the left of the walk.
    pub fn turn_through(&self, arrive: Half, depart: Half) -> i32 {
        let v = self.graph.target(arrive);
        debug_assert_eq!(self.graph.source(depart), v);
        let from = self.graph.rot_pos(arrive.edge(), v) as usize;
        let to = self.graph.rot_pos(depart.edge(), v) as usize;
        let sweep = self.sweep_cw(v, from, to);
        (sweep as i32 - 180) / 90
    }

    /// Checks H1 and H2, returning all violations (empty when valid).
    pub fn check(&self) -> Vec<Violation> {
        let g = &self.graph;
        let mut out = Vec::new();
        for v in 0..g.vertex_count() as u32 {
            let mut sum = 0u32;
            for (i, &a) in self.angles[v as usize].iter().enumerate() {
                if !matches!(a, 90 | 180 | 270 | 360) {
                    out.push(Violation::BadAngle { vertex: g.vertex_id(v), corner: i, angle: a });
                }
                sum += a as u32;
            }
            if sum != 360 {
                out.push(Violation::AngleSum { vertex: g.vertex_id(v), sum });
            }
        }
        for (fi, walk) in g.faces().iter().enumerate() {
            let mut total = 0i32;
            for (i, &h) in walk.iter().enumerate() {
                total += self.edge_turn_units(h);
                let next = walk[(i + 1) % walk.len()];
                total += self.turn_through(h, next);
            }
            let expected = if fi as u32 == g.external_face() { 4 } else { -4 };
            if total != expected {
                out.push(Violation::FaceSum { face: fi as u32, got: total, expected });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_empty()
    }

    /// Replaces the turn word of one edge (used by substitution).
    pub(crate) fn set_turns(&mut self, e: u32, word: Vec<Turn>) {
        self.turns[e as usize] = word;
    }

    pub(crate) fn set_angle(&mut self, v: u32, corner: usize, angle: u16) {
        self.angles[v as usize][corner] = angle;
    }
}
