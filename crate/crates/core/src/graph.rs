//! Embedded series-parallel 4-multigraphs.
//!
//! A [`PlaneGraph`] carries its combinatorial embedding: a clockwise rotation
//! of edge ends around every vertex plus a designated external face. Faces
//! are always derived from the rotation system, never taken from input.
//!
//! Orientation conventions used across the crate:
//!
//! * `rotation[v]` lists the edges incident to `v` in clockwise order as
//!   drawn (y axis pointing up).
//! * The *left face* of the directed edge `u -> v` is the face traced by the
//!   rule: at `v`, depart along the rotation successor of the arrival edge.
//!   With clockwise rotations this walks internal faces counterclockwise.
//! * Corner `i` at a vertex sits clockwise between `rotation[v][i]` and
//!   `rotation[v][i + 1 mod deg]`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Directed edge side: edge index shifted left, low bit = direction
/// (0: stored `u -> v`, 1: reversed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half(pub u32);

impl Half {
    pub fn new(edge: u32, rev: bool) -> Self {
        Half(edge << 1 | rev as u32)
    }

    pub fn edge(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_rev(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn reversed(self) -> Half {
        Half(self.0 ^ 1)
    }
}

/// Which side of a directed edge names the external face in input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeSide {
    Left,
    Right,
}

/// Id-level description of an embedded graph, as read from input files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInput {
    pub vertices: Vec<u64>,
    /// `(edge id, u id, v id)`.
    pub edges: Vec<(u64, u64, u64)>,
    /// Clockwise rotation per vertex, by edge ids.
    pub rotations: Vec<(u64, Vec<u64>)>,
    /// The external face lies on this side of this edge.
    pub external: (u64, EdgeSide),
    pub reference: Option<u64>,
}

/// A validated plane multigraph with maximum degree four.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    vertex_ids: Vec<u64>,
    edge_ids: Vec<u64>,
    endpoints: Vec<[u32; 2]>,
    rotation: Vec<Vec<u32>>,
    /// Position of each edge inside the rotation list of its two endpoints.
    rot_pos: Vec<[u32; 2]>,
    faces: Vec<Vec<Half>>,
    /// Face to the left of each half.
    face_of: Vec<[u32; 2]>,
    external: u32,
    reference: Option<u32>,
    dummy: Option<u32>,
}

impl PlaneGraph {
    /// Validates and builds a plane graph from id-level input.
    pub fn from_input(input: &GraphInput) -> Result<Self> {
        let mut vmap = BTreeMap::new();
        for (ix, &id) in input.vertices.iter().enumerate() {
            if vmap.insert(id, ix as u32).is_some() {
                return Err(Error::DuplicateVertex(id));
            }
        }
        let mut emap = BTreeMap::new();
        let mut endpoints = Vec::with_capacity(input.edges.len());
        let mut edge_ids = Vec::with_capacity(input.edges.len());
        for (ix, &(id, u, v)) in input.edges.iter().enumerate() {
            if emap.insert(id, ix as u32).is_some() {
                return Err(Error::DuplicateEdge(id));
            }
            let ui = *vmap.get(&u).ok_or(Error::UnknownVertex(u))?;
            let vi = *vmap.get(&v).ok_or(Error::UnknownVertex(v))?;
            if ui == vi {
                return Err(Error::SelfLoop(id));
            }
            endpoints.push([ui, vi]);
            edge_ids.push(id);
        }
        let mut rotation = vec![Vec::new(); input.vertices.len()];
        for (vid, edges) in &input.rotations {
            let vi = *vmap.get(vid).ok_or(Error::UnknownVertex(*vid))?;
            let mut rot = Vec::with_capacity(edges.len());
            for eid in edges {
                rot.push(*emap.get(eid).ok_or(Error::UnknownEdge(*eid))?);
            }
            rotation[vi as usize] = rot;
        }
        let ext_edge = *emap.get(&input.external.0).ok_or(Error::UnknownEdge(input.external.0))?;
        let ext_half = Half::new(ext_edge, input.external.1 == EdgeSide::Right);
        let reference = match input.reference {
            Some(id) => Some(*emap.get(&id).ok_or(Error::UnknownEdge(id))?),
            None => None,
        };
        Self::from_parts(input.vertices.clone(), edge_ids, endpoints, rotation, ext_half, reference)
    }

    /// Builds from dense parts. `external` is a half whose left face is the
    /// external face.
    pub fn from_parts(
        vertex_ids: Vec<u64>,
        edge_ids: Vec<u64>,
        endpoints: Vec<[u32; 2]>,
        rotation: Vec<Vec<u32>>,
        external: Half,
        reference: Option<u32>,
    ) -> Result<Self> {
        let nv = vertex_ids.len();
        let ne = edge_ids.len();
        assert_eq!(endpoints.len(), ne);
        assert_eq!(rotation.len(), nv);

        // Degree and rotation consistency.
        let mut rot_pos = vec![[u32::MAX; 2]; ne];
        let mut seen = vec![0u8; ne];
        for v in 0..nv {
            if rotation[v].len() > 4 {
                return Err(Error::DegreeExceeded(vertex_ids[v]));
            }
            for (pos, &e) in rotation[v].iter().enumerate() {
                if e as usize >= ne {
                    return Err(Error::UnknownEdge(e as u64));
                }
                let side = if endpoints[e as usize][0] == v as u32 {
                    0
                } else if endpoints[e as usize][1] == v as u32 {
                    1
                } else {
                    return Err(Error::RotationMismatch(vertex_ids[v]));
                };
                if rot_pos[e as usize][side] != u32::MAX {
                    return Err(Error::RotationMismatch(vertex_ids[v]));
                }
                rot_pos[e as usize][side] = pos as u32;
                seen[e as usize] += 1;
            }
        }
        if seen.iter().any(|&s| s != 2) {
            let e = seen.iter().position(|&s| s != 2).unwrap();
            return Err(Error::RotationMismatch(edge_ids[e]));
        }

        // Connectivity over edges.
        if nv == 0 || ne == 0 {
            return Err(Error::Disconnected);
        }
        let mut visited = vec![false; nv];
        let mut stack = vec![0u32];
        visited[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &e in &rotation[v as usize] {
                let [a, b] = endpoints[e as usize];
                let w = if a == v { b } else { a };
                if !visited[w as usize] {
                    visited[w as usize] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != nv {
            return Err(Error::Disconnected);
        }

        // Trace faces.
        let (faces, face_of) = trace_faces(&endpoints, &rotation, &rot_pos);
        let nf = faces.len();
        if nv + nf != ne + 2 {
            return Err(Error::NotPlanar { vertices: nv, edges: ne, faces: nf });
        }

        if external.edge() as usize >= ne {
            return Err(Error::BadExternalFace);
        }
        let ext_face = face_of[external.edge() as usize][external.is_rev() as usize];

        if let Some(r) = reference {
            if r as usize >= ne {
                return Err(Error::UnknownEdge(r as u64));
            }
            let fo = face_of[r as usize];
            if fo[0] != ext_face && fo[1] != ext_face {
                return Err(Error::ReferenceNotExternal);
            }
        }

        Ok(PlaneGraph {
            vertex_ids,
            edge_ids,
            endpoints,
            rotation,
            rot_pos,
            faces,
            face_of,
            external: ext_face,
            reference,
            dummy: None,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_id(&self, v: u32) -> u64 {
        self.vertex_ids[v as usize]
    }

    pub fn edge_id(&self, e: u32) -> u64 {
        self.edge_ids[e as usize]
    }

    pub fn vertex_index(&self, id: u64) -> Option<u32> {
        self.vertex_ids.iter().position(|&x| x == id).map(|i| i as u32)
    }

    pub fn edge_index(&self, id: u64) -> Option<u32> {
        self.edge_ids.iter().position(|&x| x == id).map(|i| i as u32)
    }

    pub fn endpoints(&self, e: u32) -> [u32; 2] {
        self.endpoints[e as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.rotation[v as usize].len()
    }

    pub fn rotation(&self, v: u32) -> &[u32] {
        &self.rotation[v as usize]
    }

    /// Position of edge `e` in the rotation list at its endpoint `v`.
    pub fn rot_pos(&self, e: u32, v: u32) -> u32 {
        let side = if self.endpoints[e as usize][0] == v { 0 } else { 1 };
        self.rot_pos[e as usize][side]
    }

    pub fn source(&self, h: Half) -> u32 {
        self.endpoints[h.edge() as usize][h.is_rev() as usize]
    }

    pub fn target(&self, h: Half) -> u32 {
        self.endpoints[h.edge() as usize][1 - h.is_rev() as usize]
    }

    /// The half of edge `e` directed out of `v`.
    pub fn half_from(&self, e: u32, v: u32) -> Half {
        Half::new(e, self.endpoints[e as usize][0] != v)
    }

    pub fn faces(&self) -> &[Vec<Half>] {
        &self.faces
    }

    pub fn face_of(&self, h: Half) -> u32 {
        self.face_of[h.edge() as usize][h.is_rev() as usize]
    }

    pub fn external_face(&self) -> u32 {
        self.external
    }

    pub fn reference_edge(&self) -> Option<u32> {
        self.reference
    }

    pub fn dummy_edge(&self) -> Option<u32> {
        self.dummy
    }

    pub fn set_reference(&mut self, e: u32) -> Result<()> {
        let fo = self.face_of[e as usize];
        if fo[0] != self.external && fo[1] != self.external {
            return Err(Error::ReferenceNotExternal);
        }
        self.reference = Some(e);
        Ok(())
    }

    /// Fresh vertex id not used yet.
    pub fn fresh_vertex_id(&self) -> u64 {
        self.vertex_ids.iter().copied().max().unwrap_or(0) + 1
    }

    /// Fresh edge id not used yet.
    pub fn fresh_edge_id(&self) -> u64 {
        self.edge_ids.iter().copied().max().unwrap_or(0) + 1
    }

    /// The default reference edge: the input one, else the edge with the
    /// smallest id on the external face (the dummy edge, when present).
    pub fn default_reference(&self) -> u32 {
        if let Some(r) = self.reference {
            return r;
        }
        if let Some(d) = self.dummy {
            return d;
        }
        self.faces[self.external as usize]
            .iter()
            .map(|h| h.edge())
            .min_by_key(|&e| self.edge_ids[e as usize])
            .expect("external face has edges")
    }

    /// Next half along the face to the left of `h`.
    pub fn face_next(&self, h: Half) -> Half {
        face_next(&self.endpoints, &self.rotation, &self.rot_pos, h)
    }

    /// Whether the graph is biconnected in the sense needed for an SPQ*
    /// decomposition: no cut vertex and no bridge.
    pub fn is_biconnected(&self) -> bool {
        let blocks = self.blocks();
        blocks.len() == 1 && blocks[0].len() >= 2
    }

    /// Edge sets of the biconnected components, discovered in DFS order.
    pub fn blocks(&self) -> Vec<Vec<u32>> {
        let nv = self.vertex_count();
        let ne = self.edge_count();
        let mut disc = vec![0u32; nv];
        let mut low = vec![0u32; nv];
        let mut timer = 1u32;
        let mut blocks = Vec::new();
        let mut estack: Vec<u32> = Vec::new();
        let mut edge_seen = vec![false; ne];
        // Iterative DFS frame: (vertex, parent edge, rotation cursor).
        let mut frames: Vec<(u32, Option<u32>, usize)> = vec![(0, None, 0)];
        disc[0] = timer;
        low[0] = timer;
        timer += 1;
        while let Some(frame) = frames.last_mut() {
            let (v, _pe, cursor) = (frame.0, frame.1, &mut frame.2);
            let rot = &self.rotation[v as usize];
            if *cursor < rot.len() {
                let e = rot[*cursor];
                *cursor += 1;
                if edge_seen[e as usize] {
                    continue;
                }
                edge_seen[e as usize] = true;
                let [a, b] = self.endpoints[e as usize];
                let w = if a == v { b } else { a };
                estack.push(e);
                if disc[w as usize] == 0 {
                    disc[w as usize] = timer;
                    low[w as usize] = timer;
                    timer += 1;
                    frames.push((w, Some(e), 0));
                } else {
                    low[v as usize] = low[v as usize].min(disc[w as usize]);
                }
            } else {
                let done = frames.pop().unwrap();
                let (v, pe) = (done.0, done.1);
                if let Some(parent) = frames.last_mut() {
                    let p = parent.0;
                    low[p as usize] = low[p as usize].min(low[v as usize]);
                    if low[v as usize] >= disc[p as usize] {
                        // The tree edge into v closes a block.
                        let tree_edge = pe.unwrap();
                        let mut block = Vec::new();
                        while let Some(top) = estack.pop() {
                            block.push(top);
                            if top == tree_edge {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
        blocks
    }

    /// Replaces an edge by a path through `k` fresh subdivision vertices.
    /// Returns the new graph and the fragment edge indices in order from
    /// the original edge's source.
    pub fn subdivide_edge(&self, e: u32, k: u32) -> (PlaneGraph, Vec<u32>) {
        assert!(k >= 1);
        let [u, v] = self.endpoints(e);
        let mut vertex_ids = self.vertex_ids.clone();
        let mut edge_ids = self.edge_ids.clone();
        let mut endpoints = self.endpoints.clone();
        let mut rotation = self.rotation.clone();
        let mut next_vid = self.fresh_vertex_id();
        let mut next_eid = self.fresh_edge_id();
        let mut mids = Vec::with_capacity(k as usize);
        for _ in 0..k {
            vertex_ids.push(next_vid);
            next_vid += 1;
            rotation.push(Vec::new());
            mids.push((vertex_ids.len() - 1) as u32);
        }
        // Reuse slot `e` for the first fragment, append the rest.
        endpoints[e as usize] = [u, mids[0]];
        let mut fragments = vec![e];
        let mut prev = mids[0];
        for i in 1..=k as usize {
            let to = if i == k as usize { v } else { mids[i] };
            let id = endpoints.len() as u32;
            edge_ids.push(next_eid);
            next_eid += 1;
            endpoints.push([prev, to]);
            fragments.push(id);
            prev = to;
        }
        // Rotations: v's entry for e becomes the last fragment; the interior
        // vertices see [previous, next].
        let pos_v = self.rot_pos(e, v) as usize;
        rotation[v as usize][pos_v] = *fragments.last().unwrap();
        for (i, &m) in mids.iter().enumerate() {
            rotation[m as usize] = vec![fragments[i], fragments[i + 1]];
        }
        let ext = {
            // The external face keeps its designation via the surviving
            // fragment when it was named by `e`.
            let old = self.faces[self.external as usize][0];
            if old.edge() == e { Half::new(e, old.is_rev()) } else { old }
        };
        let mut g = PlaneGraph::from_parts(
            vertex_ids,
            edge_ids,
            endpoints,
            rotation,
            ext,
            self.reference,
        )
        .expect("subdivision preserves validity");
        g.dummy = self.dummy;
        (g, fragments)
    }

    /// Removes an edge, keeping ids, and re-traces faces. The external face
    /// becomes the face containing `keep_half`'s left side after removal.
    pub fn remove_edge(&self, e: u32, external_hint: Half) -> Result<PlaneGraph> {
        assert_ne!(external_hint.edge(), e);
        let mut edge_ids = Vec::with_capacity(self.edge_count() - 1);
        let mut endpoints = Vec::with_capacity(self.edge_count() - 1);
        let mut remap = vec![u32::MAX; self.edge_count()];
        for old in 0..self.edge_count() as u32 {
            if old == e {
                continue;
            }
            remap[old as usize] = edge_ids.len() as u32;
            edge_ids.push(self.edge_ids[old as usize]);
            endpoints.push(self.endpoints[old as usize]);
        }
        let rotation: Vec<Vec<u32>> = self
            .rotation
            .iter()
            .map(|rot| rot.iter().filter(|&&x| x != e).map(|&x| remap[x as usize]).collect())
            .collect();
        let ext = Half::new(remap[external_hint.edge() as usize], external_hint.is_rev());
        let reference = self.reference.and_then(|r| {
            if r == e { None } else { Some(remap[r as usize]) }
        });
        let mut g = PlaneGraph::from_parts(
            self.vertex_ids.clone(),
            edge_ids,
            endpoints,
            rotation,
            ext,
            reference,
        )?;
        g.dummy = self.dummy.and_then(|d| if d == e { None } else { Some(remap[d as usize]) });
        Ok(g)
    }
}

fn face_next(
    endpoints: &[[u32; 2]],
    rotation: &[Vec<u32>],
    rot_pos: &[[u32; 2]],
    h: Half,
) -> Half {
    let e = h.edge() as usize;
    let v = endpoints[e][1 - h.is_rev() as usize];
    let side = if endpoints[e][0] == v { 0 } else { 1 };
    let pos = rot_pos[e][side] as usize;
    let rot = &rotation[v as usize];
    let f = rot[(pos + 1) % rot.len()];
    Half::new(f, endpoints[f as usize][0] != v)
}

fn trace_faces(
    endpoints: &[[u32; 2]],
    rotation: &[Vec<u32>],
    rot_pos: &[[u32; 2]],
) -> (Vec<Vec<Half>>, Vec<[u32; 2]>) {
    let ne = endpoints.len();
    let mut face_of = vec![[u32::MAX; 2]; ne];
    let mut faces = Vec::new();
    for start in (0..ne as u32 * 2).map(Half) {
        if face_of[start.edge() as usize][start.is_rev() as usize] != u32::MAX {
            continue;
        }
        let id = faces.len() as u32;
        let mut walk = Vec::new();
        let mut h = start;
        loop {
            face_of[h.edge() as usize][h.is_rev() as usize] = id;
            walk.push(h);
            h = face_next(endpoints, rotation, rot_pos, h);
            if h == start {
                break;
            }
        }
        faces.push(walk);
    }
    (faces, face_of)
}

/// Result of [`biconnect_augment`]: possibly-augmented graph plus a flag
/// telling whether a dummy edge was added.
pub fn biconnect_augment(g: &PlaneGraph) -> Result<(PlaneGraph, bool)> {
    if g.is_biconnected() {
        return Ok((g.clone(), false));
    }

    // Block-cut structure must be a path of blocks.
    let blocks = g.blocks();
    if blocks.len() == 1 {
        // One block that is not usable-biconnected: the graph is a single
        // edge. A parallel dummy edge turns it into a digon.
        let [s, t] = g.endpoints(blocks[0][0]);
        return insert_dummy(g, s, t);
    }
    let nv = g.vertex_count();
    let mut block_count = vec![0u8; nv];
    let mut vblocks: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (bi, block) in blocks.iter().enumerate() {
        let mut verts: Vec<u32> = block
            .iter()
            .flat_map(|&e| g.endpoints(e))
            .collect();
        verts.sort_unstable();
        verts.dedup();
        for &v in &verts {
            block_count[v as usize] += 1;
            vblocks[v as usize].push(bi);
        }
    }
    // Cut vertices belong to >= 2 blocks; a path allows exactly 2.
    if block_count.iter().any(|&c| c > 2) {
        return Err(Error::NotAugmentable);
    }
    // Walk the block path from an end block.
    let mut cuts_per_block: Vec<Vec<u32>> = vec![Vec::new(); blocks.len()];
    for v in 0..nv as u32 {
        if block_count[v as usize] == 2 {
            for &bi in &vblocks[v as usize] {
                cuts_per_block[bi].push(v);
            }
        }
    }
    let ends: Vec<usize> =
        (0..blocks.len()).filter(|&bi| cuts_per_block[bi].len() == 1).collect();
    if ends.len() != 2 || cuts_per_block.iter().any(|c| c.len() > 2 || c.is_empty() && blocks.len() > 1)
    {
        return Err(Error::NotAugmentable);
    }

    let mut external = vec![false; nv];
    for &h in &g.faces()[g.external_face() as usize] {
        external[g.target(h) as usize] = true;
    }
    let s = end_block_terminal(g, &blocks[ends[0]], cuts_per_block[ends[0]][0], &external)?;
    let t = end_block_terminal(g, &blocks[ends[1]], cuts_per_block[ends[1]][0], &external)?;

    insert_dummy(g, s, t)
}

/// Finds a vertex `x` of an end block such that the block is two-terminal
/// series-parallel between `x` and the cut vertex `c`, `x` lies on the
/// external face and has a free degree slot for the dummy edge.
fn end_block_terminal(g: &PlaneGraph, block: &[u32], c: u32, external: &[bool]) -> Result<u32> {
    if block.len() == 1 {
        let [a, b] = g.endpoints(block[0]);
        return Ok(if a == c { b } else { a });
    }
    let usable =
        |x: u32| x != c && g.degree(x) <= 3 && external[x as usize];
    // Fast path: reduce fixing only `c`; the surviving partner is a valid
    // terminal, though possibly not a usable one.
    if let Some(ends) = reduce_block(g, block, &[c]) {
        let p = if ends[0] == c { ends[1] } else { ends[0] };
        if ends.contains(&c) && usable(p) {
            return Ok(p);
        }
    }
    // Otherwise probe every usable candidate with both terminals fixed.
    let mut verts: Vec<u32> = block.iter().flat_map(|&e| g.endpoints(e)).collect();
    verts.sort_unstable();
    verts.dedup();
    for &x in &verts {
        if !usable(x) {
            continue;
        }
        if let Some(ends) = reduce_block(g, block, &[x, c]) {
            let mut got = ends;
            got.sort_unstable();
            let mut want = [x, c];
            want.sort_unstable();
            if got == want {
                return Ok(x);
            }
        }
    }
    Err(Error::NotAugmentable)
}

/// Series-parallel reduction of a block, never reducing the fixed
/// vertices. Returns the final edge's endpoints when exactly one remains.
fn reduce_block(g: &PlaneGraph, block: &[u32], fixed: &[u32]) -> Option<[u32; 2]> {
    let mut verts: Vec<u32> = block.iter().flat_map(|&e| g.endpoints(e)).collect();
    verts.sort_unstable();
    verts.dedup();
    let local = |v: u32| verts.binary_search(&v).unwrap() as u32;
    let n = verts.len();
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    let mut alive = vec![true; block.len()];
    let mut ends: Vec<[u32; 2]> = Vec::with_capacity(block.len());
    for (slot, &e) in block.iter().enumerate() {
        let [a, b] = g.endpoints(e);
        let (la, lb) = (local(a), local(b));
        ends.push([la, lb]);
        adj[la as usize].push((slot, lb));
        adj[lb as usize].push((slot, la));
    }
    let is_fixed = |v: u32| fixed.contains(&verts[v as usize]);
    let mut queue: Vec<u32> = (0..n as u32).collect();
    let mut remaining = block.len();
    while let Some(v) = queue.pop() {
        loop {
            let live: Vec<(usize, u32)> =
                adj[v as usize].iter().copied().filter(|&(s, _)| alive[s]).collect();
            // Parallel-reduce multi-edges at v.
            let mut reduced = false;
            'outer: for i in 0..live.len() {
                for j in i + 1..live.len() {
                    if live[i].1 == live[j].1 {
                        alive[live[j].0] = false;
                        remaining -= 1;
                        reduced = true;
                        break 'outer;
                    }
                }
            }
            if reduced {
                continue;
            }
            if !is_fixed(v) && live.len() == 2 {
                // Series-reduce v: merge the two edges into one.
                let (s1, a) = live[0];
                let (s2, b) = live[1];
                alive[s2] = false;
                remaining -= 1;
                ends[s1] = [a, b];
                adj[a as usize].retain(|&(s, _)| s != s1 && s != s2);
                adj[b as usize].retain(|&(s, _)| s != s1 && s != s2);
                adj[a as usize].push((s1, b));
                adj[b as usize].push((s1, a));
                adj[v as usize].clear();
                queue.push(a);
                queue.push(b);
            }
            break;
        }
    }
    if remaining != 1 {
        return None;
    }
    let slot = alive.iter().position(|&a| a).unwrap();
    let [a, b] = ends[slot];
    Some([verts[a as usize], verts[b as usize]])
}

/// Inserts a dummy edge `(s, t)` through the external face. Exposed for the
/// compaction step, which re-adds the dummy of a stripped representation.
pub(crate) fn insert_dummy(g: &PlaneGraph, s: u32, t: u32) -> Result<(PlaneGraph, bool)> {
    if g.degree(s) >= 4 {
        return Err(Error::DegreeExceeded(g.vertex_id(s)));
    }
    if g.degree(t) >= 4 {
        return Err(Error::DegreeExceeded(g.vertex_id(t)));
    }
    // Locate the external corner of s and t: the arrival half of the
    // external walk whose target is the vertex.
    let ext_walk = &g.faces()[g.external_face() as usize];
    let corner_after = |v: u32| -> Option<u32> {
        // Returns the rotation position to insert after at v.
        let mut found = None;
        for &h in ext_walk {
            if g.target(h) == v {
                if found.is_some() {
                    // Cut vertices appear twice; terminals never do.
                    return None;
                }
                found = Some(g.rot_pos(h.edge(), v));
            }
        }
        found
    };
    let ps = corner_after(s).ok_or(Error::NotAugmentable)?;
    let pt = corner_after(t).ok_or(Error::NotAugmentable)?;

    let mut edge_ids = g.edge_ids.clone();
    let mut endpoints = g.endpoints.clone();
    let dummy_ix = edge_ids.len() as u32;
    edge_ids.push(g.fresh_edge_id());
    endpoints.push([s, t]);
    let mut rotation = g.rotation.clone();
    rotation[s as usize].insert(ps as usize + 1, dummy_ix);
    rotation[t as usize].insert(pt as usize + 1, dummy_ix);

    // External face: to the right of the dummy from s to t.
    let ext = Half::new(dummy_ix, true);
    let mut out = PlaneGraph::from_parts(
        g.vertex_ids.clone(),
        edge_ids,
        endpoints,
        rotation,
        ext,
        Some(dummy_ix),
    )?;
    out.dummy = Some(dummy_ix);
    debug_assert!(out.is_biconnected());
    Ok((out, true))
}
