//! Integer grid coordinates for an orthogonal representation, by
//! rectangular refinement and longest-path layering. Correctness over area:
//! the drawing realizes the representation exactly, with no attempt at
//! minimizing size.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::biconnect_augment;
use crate::rep::{OrthogonalRepresentation, Turn};

/// An orthogonal grid drawing: integer points per vertex, rectilinear
/// polylines per edge (interior points are the bends, in order from the
/// stored edge source).
#[derive(Debug, Clone)]
pub struct GridDrawing {
    pub coords: Vec<(i64, i64)>,
    pub polylines: Vec<Vec<(i64, i64)>>,
}

/// Mutable rectilinear structure during refinement: straight edges only,
/// rotations plus corner angles.
struct Work {
    rot: Vec<Vec<u32>>,
    angles: Vec<Vec<u16>>,
    ends: Vec<[u32; 2]>,
    /// Provenance: for every work vertex, the original vertex (if any).
    orig_vertex: Vec<Option<u32>>,
    /// For every original edge, its chain of work vertices in order.
    chains: Vec<Vec<u32>>,
    /// Edges introduced after the original graph (connector, box,
    /// refinement); they carry no provenance.
    first_extra_edge: u32,
}

impl Work {
    fn new_vertex(&mut self, orig: Option<u32>) -> u32 {
        self.rot.push(Vec::new());
        self.angles.push(Vec::new());
        self.orig_vertex.push(orig);
        (self.rot.len() - 1) as u32
    }

    fn new_edge(&mut self, a: u32, b: u32) -> u32 {
        self.ends.push([a, b]);
        (self.ends.len() - 1) as u32
    }

    fn other(&self, e: u32, v: u32) -> u32 {
        let [a, b] = self.ends[e as usize];
        if a == v { b } else { a }
    }

    fn pos(&self, e: u32, v: u32) -> usize {
        self.rot[v as usize].iter().position(|&x| x == e).expect("edge in rotation")
    }

    /// Next half along the face to the left.
    fn next(&self, h: (u32, u32)) -> (u32, u32) {
        // A half is (edge, source vertex).
        let (e, src) = h;
        let v = self.other(e, src);
        let p = self.pos(e, v);
        let rot = &self.rot[v as usize];
        let f = rot[(p + 1) % rot.len()];
        (f, v)
    }

    /// Turn at the corner between arriving along `h` and departing along
    /// `self.next(h)`, right-positive.
    fn turn(&self, h: (u32, u32)) -> i32 {
        let (e, src) = h;
        let v = self.other(e, src);
        let p = self.pos(e, v);
        (self.angles[v as usize][p] as i32 - 180) / 90
    }

    /// Splits a reflex corner: walks the face from it, finds the edge hit
    /// by extending the arriving segment, subdivides it and inserts the
    /// extension edge. Returns true if a reflex was found on this face.
    fn refine_face(&mut self, start: (u32, u32)) -> bool {
        // Earlier refinements may have re-homed this half; skip stale ones
        // (the outer sweep re-collects faces until none change).
        let [a, b] = self.ends[start.0 as usize];
        if a != start.1 && b != start.1 {
            return false;
        }
        // Collect the walk.
        let mut walk = vec![start];
        let mut h = self.next(start);
        while h != start {
            walk.push(h);
            h = self.next(h);
        }
        let turns: Vec<i32> = walk.iter().map(|&h| self.turn(h)).collect();
        let Some(i) = turns.iter().position(|&t| t > 0) else {
            return false;
        };
        // Scan from the reflex for the first edge at relative heading -1.
        let n = walk.len();
        let mut rel = turns[i];
        let mut k = (i + 1) % n;
        let hit = loop {
            if rel == -1 {
                break walk[k];
            }
            rel += turns[k];
            k = (k + 1) % n;
            assert_ne!(k, (i + 1) % n, "projection ray must hit the face boundary");
        };

        // Vertex r where the reflex sits: target of walk[i].
        let (e_in, src_in) = walk[i];
        let r = self.other(e_in, src_in);
        let p_in = self.pos(e_in, r);
        let old = self.angles[r as usize][p_in];
        debug_assert!(old >= 270);

        // Subdivide the hit edge (hit.0, from hit.1 toward its far end).
        let (he, hsrc) = hit;
        let hdst = self.other(he, hsrc);
        let m = self.new_vertex(None);
        // he keeps its source side, a fresh edge covers m..hdst.
        let tail = self.new_edge(m, hdst);
        let hp = self.pos(he, hdst);
        self.ends[he as usize] = [
            if self.ends[he as usize][0] == hdst { m } else { self.ends[he as usize][0] },
            if self.ends[he as usize][1] == hdst { m } else { self.ends[he as usize][1] },
        ];
        self.rot[hdst as usize][hp] = tail;
        let conn = self.new_edge(r, m);
        // At m: walking hsrc -> m -> hdst, the face lies left; the
        // connector sticks into the face. Clockwise: [toward hdst,
        // toward hsrc, connector] with angles [180 at the far side, 90, 90].
        self.rot[m as usize] = vec![tail, he, conn];
        self.angles[m as usize] = vec![180, 90, 90];
        // At r: the connector extends e_in; insert after it.
        self.rot[r as usize].insert(p_in + 1, conn);
        self.angles[r as usize][p_in] = 180;
        self.angles[r as usize].insert(p_in + 1, old - 180);

        // Chains need no update: the hit point is collinear on its
        // segment, so polylines read out straight through it.
        true
    }
}

/// Computes a planar grid drawing realizing the representation.
pub fn compact(rep: &OrthogonalRepresentation) -> GridDrawing {
    // Work on a biconnected host: re-add the dummy edge when needed.
    let (host, dummy) = augmented(rep);
    let g = host.graph();

    // Straighten bends into subdivision vertices.
    let mut w = Work {
        rot: Vec::new(),
        angles: Vec::new(),
        ends: Vec::new(),
        orig_vertex: Vec::new(),
        chains: vec![Vec::new(); g.edge_count()],
            first_extra_edge: 0,
    };
    for v in 0..g.vertex_count() as u32 {
        let id = w.new_vertex(Some(v));
        debug_assert_eq!(id, v);
    }
    // Edge chains: w-vertices [u, bends.., v]; edges created per segment.
    // Segment k of edge e gets angles from the turn word.
    let mut seg_of_edge: Vec<Vec<u32>> = vec![Vec::new(); g.edge_count()];
    for e in 0..g.edge_count() as u32 {
        let [u, v] = g.endpoints(e);
        let word = host.turns(e);
        let mut chain = vec![u];
        for _ in word {
            chain.push(w.new_vertex(None));
        }
        chain.push(v);
        w.chains[e as usize] = chain.clone();
        for k in 0..chain.len() - 1 {
            let id = w.new_edge(chain[k], chain[k + 1]);
            seg_of_edge[e as usize].push(id);
        }
        // Rotations and angles at the bend vertices: walking u -> v, a
        // right turn leaves 270 on the left.
        for (k, t) in word.iter().enumerate() {
            let m = chain[k + 1];
            let e_in = seg_of_edge[e as usize][k];
            let e_out = seg_of_edge[e as usize][k + 1];
            let tu = t.units();
            w.rot[m as usize] = vec![e_in, e_out];
            w.angles[m as usize] = vec![(180 + 90 * tu) as u16, (180 - 90 * tu) as u16];
        }
    }
    // Rotations and angles at the real vertices: replace each edge by its
    // incident segment.
    for v in 0..g.vertex_count() as u32 {
        let rot: Vec<u32> = g
            .rotation(v)
            .iter()
            .map(|&e| {
                let segs = &seg_of_edge[e as usize];
                if g.endpoints(e)[0] == v { segs[0] } else { *segs.last().unwrap() }
            })
            .collect();
        w.rot[v as usize] = rot;
        w.angles[v as usize] = host.angles_at(v).to_vec();
    }
    w.first_extra_edge = w.ends.len() as u32;

    // Surround with a box: attach a connector at an external corner of
    // turn >= +1, then refine every internal face (the ring included).
    let ext_walk = external_walk(&host, &seg_of_edge);
    add_box(&mut w, &ext_walk);

    // Refinement sweep: fix reflexes until none remain on internal faces.
    // Faces are re-walked from a queue of candidate starts. Every fix
    // removes one reflex corner and adds none, so the step count is
    // bounded by the corner count.
    let mut guard = 0usize;
    let budget = 8 * w.ends.len() + 64;
    loop {
        let mut progressed = false;
        let starts = internal_face_starts(&w);
        for h in starts {
            while w.refine_face(h) {
                progressed = true;
                guard += 1;
                assert!(guard < budget, "refinement failed to converge");
            }
        }
        if !progressed {
            break;
        }
    }

    // Orient all edge ends by propagating directions across corners.
    let dirs = orient(&w);

    // Longest-path coordinates per axis.
    let xs = layer(&w, &dirs, 1); // east arcs
    let ys = layer(&w, &dirs, 0); // north arcs

    let coords_all: Vec<(i64, i64)> = (0..w.rot.len()).map(|v| (xs[v], ys[v])).collect();

    // Read out the original drawing.
    let out_graph = rep.graph();
    let mut coords = Vec::with_capacity(out_graph.vertex_count());
    for v in 0..out_graph.vertex_count() {
        coords.push(coords_all[v]);
    }
    let mut polylines = Vec::with_capacity(out_graph.edge_count());
    for e in 0..out_graph.edge_count() as u32 {
        let host_e = e; // augmentation appends the dummy last, ids align
        let chain = &w.chains[host_e as usize];
        let mut pts: Vec<(i64, i64)> = Vec::with_capacity(chain.len());
        for (k, &cv) in chain.iter().enumerate() {
            let p = coords_all[cv as usize];
            if k > 0 && k + 1 < chain.len() {
                // Keep only genuine corners.
                let prev = *pts.last().unwrap();
                let next = coords_all[chain[k + 1] as usize];
                if (prev.0 == p.0 && p.0 == next.0) || (prev.1 == p.1 && p.1 == next.1) {
                    continue;
                }
            }
            pts.push(p);
        }
        polylines.push(pts);
        debug_assert_eq!(
            polylines[e as usize].len() - 2,
            rep.turns(e).len(),
            "polyline corners equal the bend count"
        );
    }
    let _ = dummy;
    GridDrawing { coords, polylines }
}

/// Returns a representation on a biconnected host graph; when the input is
/// not biconnected, the dummy edge is added and closed with a turn word
/// that satisfies the face conditions.
fn augmented(rep: &OrthogonalRepresentation) -> (OrthogonalRepresentation, Option<u32>) {
    if rep.graph().is_biconnected() {
        return (rep.clone(), None);
    }
    let (aug, added) = biconnect_augment(rep.graph()).expect("drawable graphs augment");
    assert!(added);
    let e = aug.dummy_edge().expect("dummy present");
    let [s, t] = aug.endpoints(e);

    // Copy angles; split the corner the dummy was inserted into.
    let mut angles: Vec<Vec<u16>> = Vec::with_capacity(aug.vertex_count());
    for v in 0..aug.vertex_count() as u32 {
        if v != s && v != t {
            angles.push(rep.angles_at(v).to_vec());
            continue;
        }
        let pos = aug.rot_pos(e, v) as usize;
        let deg = aug.degree(v);
        // The old corner sat between the dummy's rotation neighbours.
        let old_prev = (pos + deg - 1) % deg;
        let mut list = Vec::with_capacity(deg);
        for i in 0..deg {
            if i == pos {
                list.push(0); // placeholder: corner dummy -> next
                continue;
            }
            // Map to the original corner index: rotations only gained the
            // dummy entry at `pos`.
            let orig_i = if i < pos { i } else { i - 1 };
            list.push(rep.angle(v, orig_i));
        }
        // Previous corner value gets split across (old_prev, pos).
        let v_old = list[old_prev];
        list[old_prev] = 0;
        let _ = v_old;
        angles.push(list);
    }
    let mut turns: Vec<Vec<Turn>> = (0..aug.edge_count() as u32)
        .map(|ei| if ei == e { Vec::new() } else { rep.turns(ei).to_vec() })
        .collect();

    // Close the internal face left of the dummy from s to t: choose the two
    // pole corners and the word.
    let h_st = aug.half_from(e, s);
    let mut rest = 0i32;
    let mut h = aug.face_next(h_st);
    loop {
        if h.edge() == e {
            break;
        }
        let raw: i32 = turns[h.edge() as usize].iter().map(|t| t.units()).sum();
        rest += if h.is_rev() { -raw } else { raw };
        let next = aug.face_next(h);
        if next.edge() != e {
            let v = aug.target(h);
            let from = aug.rot_pos(h.edge(), v) as usize;
            let to = aug.rot_pos(next.edge(), v) as usize;
            let deg = aug.degree(v);
            let mut sweep = 0i32;
            let mut i = from;
            if from == to {
                sweep = 360;
            } else {
                while i != to {
                    sweep += angles[v as usize][i] as i32;
                    i = (i + 1) % deg;
                }
            }
            rest += (sweep - 180) / 90;
        }
        h = next;
    }
    let needed = -4 - rest;
    // Free split V at each pole: the merged corner minus 90 for the other
    // side, at least 90 each.
    let split_range = |v: u32| -> (i32, i32) {
        let pos = aug.rot_pos(e, v) as usize;
        let deg = aug.degree(v);
        let orig_prev = {
            let i = (pos + deg - 1) % deg;
            if i < pos { i } else { i - 1 }
        };
        let total = rep.angle(v, orig_prev) as i32;
        (-1, (total - 270) / 90)
    };
    let (s_lo, s_hi) = split_range(s);
    let (t_lo, t_hi) = split_range(t);
    let tsum = needed.clamp(s_lo + t_lo, s_hi + t_hi);
    let mut ts = s_lo;
    while ts < s_hi && tsum - ts > t_hi {
        ts += 1;
    }
    let tt = tsum - ts;
    assert!((t_lo..=t_hi).contains(&tt), "dummy closure splits fit");
    let word_n = needed - tsum;

    // Write the corners: internal-face corner precedes the dummy at s and
    // follows it at t; the other side absorbs the rest.
    for (v, tv) in [(s, ts), (t, tt)] {
        let pos = aug.rot_pos(e, v) as usize;
        let deg = aug.degree(v);
        let prev = (pos + deg - 1) % deg;
        let orig_prev = if prev < pos { prev } else { prev - 1 };
        let total = rep.angle(v, orig_prev) as i32;
        let (int_corner, ext_corner) = if v == s { (prev, pos) } else { (pos, prev) };
        angles[v as usize][int_corner] = (180 + 90 * tv) as u16;
        angles[v as usize][ext_corner] = (total - (180 + 90 * tv)) as u16;
    }
    if word_n != 0 {
        let ch = if word_n > 0 { Turn::R } else { Turn::L };
        let forward = aug.endpoints(e)[0] == s;
        turns[e as usize] =
            (0..word_n.abs()).map(|_| if forward { ch } else { ch.flip() }).collect();
    }
    let out = OrthogonalRepresentation::new(aug, angles, turns);
    assert!(out.is_valid(), "augmented representation stays valid: {:?}", out.check());
    let dummy = out.graph().dummy_edge();
    (out, dummy)
}

/// External face walk of the host, in work-segment halves.
fn external_walk(host: &OrthogonalRepresentation, seg_of_edge: &[Vec<u32>]) -> Vec<(u32, u32)> {
    let g = host.graph();
    let walk = &g.faces()[g.external_face() as usize];
    let mut out = Vec::new();
    for &h in walk {
        let e = h.edge();
        let segs = &seg_of_edge[e as usize];
        let [u, _v] = g.endpoints(e);
        let chain_len = segs.len();
        if h.is_rev() {
            // Walk v -> u: segments reversed; sources are the far ends.
            for k in (0..chain_len).rev() {
                let src = if k + 1 == chain_len { g.endpoints(e)[1] } else { u32::MAX };
                out.push((segs[k], src));
            }
        } else {
            for (k, &sg) in segs.iter().enumerate() {
                let src = if k == 0 { u } else { u32::MAX };
                out.push((sg, src));
            }
        }
    }
    out
}

/// Attaches the surrounding box through a connector at an external corner
/// with turn at least +1.
fn add_box(w: &mut Work, ext: &[(u32, u32)]) {
    // Resolve the u32::MAX placeholders: walk and fill sources.
    let mut walk: Vec<(u32, u32)> = Vec::with_capacity(ext.len());
    // Find a starting half with a known source.
    let start_ix = ext.iter().position(|&(_, s)| s != u32::MAX).expect("real vertex on walk");
    let mut src = ext[start_ix].1;
    for k in 0..ext.len() {
        let (e, s) = ext[(start_ix + k) % ext.len()];
        let use_src = if s != u32::MAX { s } else { src };
        walk.push((e, use_src));
        src = w.other(e, use_src);
    }

    // Find a corner with positive turn.
    let pos = walk
        .iter()
        .position(|&h| w.turn(h) >= 1)
        .expect("external walk has a positive corner");
    let h = walk[pos];
    let (e_in, src_in) = h;
    let r = w.other(e_in, src_in);
    let p_in = w.pos(e_in, r);
    let old = w.angles[r as usize][p_in];
    debug_assert!(old >= 270);

    // Box vertices b0..b3 and the attachment midpoint bm on one side.
    let b: Vec<u32> = (0..4).map(|_| w.new_vertex(None)).collect();
    let bm = w.new_vertex(None);
    let conn = w.new_edge(r, bm);
    // Connector extends the arriving segment.
    w.rot[r as usize].insert(p_in + 1, conn);
    w.angles[r as usize][p_in] = 180;
    w.angles[r as usize].insert(p_in + 1, old - 180);

    // Box edges: b0-bm-b1 on one side, then b1-b2, b2-b3, b3-b0.
    let e0 = w.new_edge(b[0], bm);
    let e1 = w.new_edge(bm, b[1]);
    let e2 = w.new_edge(b[1], b[2]);
    let e3 = w.new_edge(b[2], b[3]);
    let e4 = w.new_edge(b[3], b[0]);
    // bm: ring side faces the graph; the connector points inward.
    // Clockwise around bm seen from outside the box: [e0-side, conn,
    // e1-side] with the straight 180 on the outer face.
    w.rot[bm as usize] = vec![e0, conn, e1];
    w.angles[bm as usize] = vec![90, 90, 180];
    // Box corners: 90 toward the outside, 270 toward the ring.
    let corner = |w: &mut Work, v: u32, ea: u32, eb: u32| {
        w.rot[v as usize] = vec![ea, eb];
        w.angles[v as usize] = vec![90, 270];
    };
    corner(w, b[0], e4, e0);
    corner(w, b[1], e1, e2);
    corner(w, b[2], e2, e3);
    corner(w, b[3], e3, e4);
}

/// Starting halves of all internal faces (everything but the box outer
/// face, identified by its all-positive turns).
fn internal_face_starts(w: &Work) -> Vec<(u32, u32)> {
    let ne = w.ends.len();
    let mut seen = vec![false; ne * 2];
    let mut starts = Vec::new();
    for e in 0..ne as u32 {
        for side in 0..2 {
            let h = (e, w.ends[e as usize][side]);
            let key = (e as usize) * 2 + side;
            if seen[key] {
                continue;
            }
            let mut sum = 0;
            let mut cur = h;
            loop {
                let (ce, csrc) = cur;
                let cside = if w.ends[ce as usize][0] == csrc { 0 } else { 1 };
                seen[(ce as usize) * 2 + cside] = true;
                sum += w.turn(cur);
                cur = w.next(cur);
                if cur == h {
                    break;
                }
            }
            if sum == -4 {
                starts.push(h);
            } else {
                assert_eq!(sum, 4, "face turn sums are +-4");
            }
        }
    }
    starts
}

/// Absolute directions (0 N, 1 E, 2 S, 3 W) for every edge end, stored per
/// (edge, endpoint slot).
fn orient(w: &Work) -> Vec<[u8; 2]> {
    let ne = w.ends.len();
    let mut dir = vec![[u8::MAX; 2]; ne];
    let mut stack = vec![(0u32, 0usize, 1u8)]; // edge 0, slot 0, east
    while let Some((e, slot, d)) = stack.pop() {
        if dir[e as usize][slot] != u8::MAX {
            assert_eq!(dir[e as usize][slot], d, "direction propagation consistent");
            continue;
        }
        dir[e as usize][slot] = d;
        // Across the edge: the other end points back.
        let oslot = 1 - slot;
        let od = (d + 2) % 4;
        if dir[e as usize][oslot] == u8::MAX {
            stack.push((e, oslot, od));
        }
        // Around the vertex: successor end rotates clockwise by the corner.
        let v = w.ends[e as usize][slot];
        let rot = &w.rot[v as usize];
        let p = w.pos(e, v);
        let deg = rot.len();
        let pn = (p + 1) % deg;
        let steps = (w.angles[v as usize][p] / 90) as u8;
        let f = rot[pn];
        let fslot = if w.ends[f as usize][0] == v { 0 } else { 1 };
        let fd = (d + steps) % 4;
        if dir[f as usize][fslot] == u8::MAX {
            stack.push((f, fslot, fd));
        } else {
            assert_eq!(dir[f as usize][fslot], fd, "angle-consistent directions");
        }
    }
    dir
}

/// Longest-path layering along one axis. `axis_dir` is the direction arcs
/// point to (1: east for x, 0: north for y).
fn layer(w: &Work, dirs: &[[u8; 2]], axis_dir: u8) -> Vec<i64> {
    let nv = w.rot.len();
    // Union vertices along edges perpendicular to the axis.
    let mut class = (0..nv as u32).collect::<Vec<u32>>();
    fn find(class: &mut Vec<u32>, x: u32) -> u32 {
        let mut root = x;
        while class[root as usize] != root {
            root = class[root as usize];
        }
        let mut cur = x;
        while class[cur as usize] != root {
            let next = class[cur as usize];
            class[cur as usize] = root;
            cur = next;
        }
        root
    }
    for e in 0..w.ends.len() {
        let d = dirs[e][0];
        let perpendicular = d % 2 != axis_dir % 2;
        if perpendicular {
            let [a, b] = w.ends[e];
            let (ra, rb) = (find(&mut class, a), find(&mut class, b));
            if ra != rb {
                class[ra as usize] = rb;
            }
        }
    }
    // Arcs between classes for axis-parallel edges.
    let mut arcs: Vec<(u32, u32)> = Vec::new();
    for e in 0..w.ends.len() {
        let [a, b] = w.ends[e];
        let d0 = dirs[e][0];
        if d0 % 2 == axis_dir % 2 {
            // slot 0's direction tells which endpoint is lower.
            let (from, to) = if d0 == axis_dir { (a, b) } else { (b, a) };
            arcs.push((find(&mut class, from), find(&mut class, to)));
        }
    }
    let mut indeg = vec![0u32; nv];
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nv];
    for &(a, b) in &arcs {
        adj[a as usize].push(b);
        indeg[b as usize] += 1;
    }
    let mut value = vec![0i64; nv];
    let mut queue: Vec<u32> =
        (0..nv as u32).filter(|&v| find(&mut class, v) == v && indeg[v as usize] == 0).collect();
    let mut processed = 0;
    while let Some(v) = queue.pop() {
        processed += 1;
        for i in 0..adj[v as usize].len() {
            let to = adj[v as usize][i];
            value[to as usize] = value[to as usize].max(value[v as usize] + 1);
            indeg[to as usize] -= 1;
            if indeg[to as usize] == 0 {
                queue.push(to);
            }
        }
    }
    let roots = (0..nv as u32).filter(|&v| find(&mut class, v) == v).count();
    assert_eq!(processed, roots, "constraint graph is acyclic");
    (0..nv as u32).map(|v| value[find(&mut class, v) as usize]).collect()
}
