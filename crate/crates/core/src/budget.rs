//! Bottom-up visit: per-node bend budgets, post-budget spirality intervals,
//! flexibility breakpoints and the cumulative optimum.
//!
//! A node's budget is positive exactly when its representability condition
//! fails; Q*- and S-nodes never need own bends. The cumulative budget at the
//! root equals the bend count of a bend-minimum orthogonal representation.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{biconnect_augment, PlaneGraph};
use crate::interval::{
    interval_distance, interval_p2, interval_p3, interval_qstar, interval_series, p2_difference,
    p2_raw_bounds, p3_shifted, SpiralityInterval,
};
use crate::spqtree::{build_spq_tree, NodeId, NodeKind, PNodeType, SpqTree};
use crate::Result;

/// Admissible spiralities of the non-reference root child, imposed by
/// closing the external cycle through the reference edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootWindow(pub SpiralityInterval);

/// Chooses the root window from alias-vertex coincidence: a pole's alias
/// coincides with the pole exactly when the child has indegree one there.
pub fn root_window(tree: &SpqTree) -> RootWindow {
    let eta = tree.node(tree.eta());
    let coincident =
        (eta.indeg(0) == 1) as u32 + (eta.indeg(1) == 1) as u32;
    RootWindow(match coincident {
        2 => SpiralityInterval::whole(2, 6),
        1 => SpiralityInterval::whole(3, 5),
        _ => SpiralityInterval::whole(4, 4),
    })
}

/// Result of the budget computation for a P-node with three children.
#[derive(Debug, Clone, Copy)]
pub struct P3Budget {
    pub bends: u32,
    pub interval: SpiralityInterval,
    /// Index (0 left, 1 center, 2 right) of the renamed `x` child — the one
    /// with the smallest shifted maximum.
    pub x: usize,
    /// Index of the renamed `z` child — largest shifted minimum.
    pub z: usize,
}

/// Budget and post-budget interval of a three-child P-node whose condition
/// failed. Ties in the renaming break by the fixed order left, center,
/// right.
pub fn budget_p3(
    il: &SpiralityInterval,
    ic: &SpiralityInterval,
    ir: &SpiralityInterval,
) -> P3Budget {
    assert!(interval_p3(il, ic, ir).is_none(), "budget_p3 on a satisfiable node");
    let shifted = p3_shifted(il, ic, ir);
    let z = (0..3).reduce(|best, i| if shifted[i].lo() > shifted[best].lo() { i } else { best });
    let x = (0..3).reduce(|best, i| if shifted[i].hi() < shifted[best].hi() { i } else { best });
    let (z, x) = (z.unwrap(), x.unwrap());
    assert_ne!(z, x, "disjointness forces distinct extremal children");
    let y = 3 - z - x;
    let b2 = shifted[z].lo() - shifted[x].hi();
    assert!(b2 > 0 && b2 % 2 == 0, "budget must be a positive whole number");
    let lo = shifted[x].hi().max(shifted[y].lo());
    let hi = shifted[z].lo().min(shifted[y].hi());
    P3Budget {
        bends: (b2 / 2) as u32,
        interval: SpiralityInterval::new(lo, hi),
        x,
        z,
    }
}

/// Flexibility breakpoints of a rectilinear-planar P-node of type
/// `Pio2(2,2)`, from its children's (post-budget) intervals.
pub fn flexibility_breakpoints(
    il: &SpiralityInterval,
    ir: &SpiralityInterval,
) -> (u32, u32) {
    let plus2 = (ir.hi() + 4 - il.hi()).abs();
    let minus2 = (il.lo() - 4 - ir.lo()).abs();
    debug_assert_eq!(plus2 % 2, 0);
    debug_assert_eq!(minus2 % 2, 0);
    ((plus2 / 2) as u32, (minus2 / 2) as u32)
}

/// Exposure pattern of a two-child P-node's children. A child without an
/// exposed edge carries its flexibility breakpoints `(b+, b-)`.
#[derive(Debug, Clone, Copy)]
pub enum Exposure {
    Both,
    LeftUnexposed { bp: (u32, u32) },
    RightUnexposed { bp: (u32, u32) },
}

/// Budget and post-budget interval of a two-child P-node whose condition
/// failed. The raw Table-1 bounds `m`, `M` are used even though the
/// condition does not hold.
pub fn budget_p2(
    ty: &PNodeType,
    il: &SpiralityInterval,
    ir: &SpiralityInterval,
    exposure: Exposure,
) -> (u32, SpiralityInterval) {
    assert!(interval_p2(ty, il, ir).is_none(), "budget_p2 on a satisfiable node");
    let diff = p2_difference(il, ir);
    let window = ty.window();
    let b2 = interval_distance(&diff, &window);
    assert!(b2 > 0 && b2 % 2 == 0);
    let b = (b2 / 2) as u32;
    let (m, big_m) = p2_raw_bounds(ty, il, ir);
    let wide = 2 * b as i32;
    let fails_low = diff.hi() < window.lo();
    let interval = match exposure {
        Exposure::Both => SpiralityInterval::new(m - wide, big_m + wide),
        Exposure::LeftUnexposed { bp: (bp_plus, bp_minus) } => {
            if fails_low {
                let cap = 2 * bp_plus.min(b) as i32;
                SpiralityInterval::new(m - wide, big_m + cap)
            } else {
                let cap = 2 * bp_minus.min(b) as i32;
                SpiralityInterval::new(m - cap, big_m + wide)
            }
        }
        Exposure::RightUnexposed { bp: (bp_plus, bp_minus) } => {
            // Mirror image of the left-unexposed case: when the condition
            // fails low, raising the node tracks the exposed left child
            // while lowering is capped by the right child's breakpoint.
            if fails_low {
                let cap = 2 * bp_minus.min(b) as i32;
                SpiralityInterval::new(m - cap, big_m + wide)
            } else {
                let cap = 2 * bp_plus.min(b) as i32;
                SpiralityInterval::new(m - wide, big_m + cap)
            }
        }
    };
    (b, interval)
}

/// Budget of the root: zero for a dummy reference edge, otherwise the
/// distance between the child interval and the root window.
pub fn budget_root(i_eta: &SpiralityInterval, window: &RootWindow, is_dummy: bool) -> u32 {
    if is_dummy {
        return 0;
    }
    let d2 = interval_distance(i_eta, &window.0);
    assert_eq!(d2 % 2, 0, "root gap must be a whole number of bends");
    (d2 / 2) as u32
}

/// Per-node results of the bottom-up visit.
#[derive(Debug, Clone)]
pub struct Annotations {
    /// Post-budget admissible interval (equals the representability
    /// interval when the node is rectilinear planar). Root entry unused.
    pub interval: Vec<SpiralityInterval>,
    /// Whether the node's own representability condition held.
    pub rect: Vec<bool>,
    pub budget: Vec<u32>,
    pub cumulative: Vec<u64>,
    pub window: RootWindow,
    /// Total bends of a bend-minimum representation.
    pub total: u64,
}

impl Annotations {
    pub fn node_interval(&self, id: NodeId) -> &SpiralityInterval {
        &self.interval[id as usize]
    }
}

/// Extra unit-rate bend capacity of a `Pio2(2,2)` node beyond its own
/// budget: the breakpoint formula evaluated on its children's post-budget
/// intervals, less the bends the node already needs for itself.
pub fn effective_breakpoints(
    tree: &SpqTree,
    ann_interval: &[SpiralityInterval],
    ann_budget: &[u32],
    p: NodeId,
) -> (u32, u32) {
    let child = tree.node(p);
    assert_eq!(child.kind, NodeKind::P, "unexposed S-node has only P children");
    assert!(
        matches!(child.ty, Some(PNodeType::Pio2 { lambda: 2, beta: 2, .. })),
        "children of an unexposed S-node are Pio2(2,2)"
    );
    let [a, b] = [child.children[0], child.children[1]];
    let (plus, minus) =
        flexibility_breakpoints(&ann_interval[a as usize], &ann_interval[b as usize]);
    let own = ann_budget[p as usize];
    (plus.saturating_sub(own), minus.saturating_sub(own))
}

/// Breakpoints of an S-node without exposed edges: the sums over its
/// children, which are all P-nodes of type `Pio2(2,2)`.
pub fn s_breakpoints(
    tree: &SpqTree,
    ann_interval: &[SpiralityInterval],
    ann_budget: &[u32],
    s: NodeId,
) -> (u32, u32) {
    let node = tree.node(s);
    debug_assert_eq!(node.kind, NodeKind::S);
    let mut plus = 0u32;
    let mut minus = 0u32;
    for &c in &node.children {
        let (p, m) = effective_breakpoints(tree, ann_interval, ann_budget, c);
        plus += p;
        minus += m;
    }
    (plus, minus)
}

/// Bottom-up visit over the whole tree.
pub fn bottom_up(g: &PlaneGraph, tree: &SpqTree) -> Annotations {
    let n = tree.len();
    let mut interval = vec![SpiralityInterval::point(0); n];
    let mut rect = vec![true; n];
    let mut budget = vec![0u32; n];
    let mut cumulative = vec![0u64; n];
    let window = root_window(tree);
    let is_dummy = g.dummy_edge() == Some(tree.reference_edge());

    for id in tree.post_order() {
        let node = tree.node(id);
        let idx = id as usize;
        match node.kind {
            NodeKind::QStar => {
                interval[idx] = interval_qstar(node.qstar_len());
            }
            NodeKind::S => {
                interval[idx] =
                    interval_series(node.children.iter().map(|&c| &interval[c as usize]));
            }
            NodeKind::P => {
                if node.children.len() == 3 {
                    let [l, c, r] = [node.children[0], node.children[1], node.children[2]];
                    for &ch in &node.children {
                        assert!(
                            tree.node(ch).exposed.is_some(),
                            "three-child P-node children always have exposed edges"
                        );
                    }
                    let (il, ic, ir) =
                        (interval[l as usize], interval[c as usize], interval[r as usize]);
                    match interval_p3(&il, &ic, &ir) {
                        Some(i) => interval[idx] = i,
                        None => {
                            let res = budget_p3(&il, &ic, &ir);
                            rect[idx] = false;
                            budget[idx] = res.bends;
                            interval[idx] = res.interval;
                        }
                    }
                } else {
                    let [l, r] = [node.children[0], node.children[1]];
                    let ty = node.ty.as_ref().expect("two-child P-node has a type");
                    let (il, ir) = (interval[l as usize], interval[r as usize]);
                    match interval_p2(ty, &il, &ir) {
                        Some(i) => interval[idx] = i,
                        None => {
                            let exp_l = tree.node(l).exposed.is_some();
                            let exp_r = tree.node(r).exposed.is_some();
                            let exposure = match (exp_l, exp_r) {
                                (true, true) => Exposure::Both,
                                (false, true) => Exposure::LeftUnexposed {
                                    bp: s_breakpoints(tree, &interval, &budget, l),
                                },
                                (true, false) => Exposure::RightUnexposed {
                                    bp: s_breakpoints(tree, &interval, &budget, r),
                                },
                                (false, false) => {
                                    unreachable!("both children of a P-node unexposed")
                                }
                            };
                            let (b, i) = budget_p2(ty, &il, &ir, exposure);
                            rect[idx] = false;
                            budget[idx] = b;
                            interval[idx] = i;
                        }
                    }
                }
            }
            NodeKind::PRoot => {
                let i_eta = interval[tree.eta() as usize];
                let b = budget_root(&i_eta, &window, is_dummy);
                budget[idx] = b;
                rect[idx] = b == 0;
            }
        }
        cumulative[idx] = budget[idx] as u64
            + node.children.iter().map(|&c| cumulative[c as usize]).sum::<u64>();
    }

    let total = cumulative[tree.root() as usize];
    Annotations { interval, rect, budget, cumulative, window, total }
}

/// A fully analyzed instance: the (possibly augmented) graph, its tree and
/// the bottom-up annotations.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph: PlaneGraph,
    pub tree: SpqTree,
    pub ann: Annotations,
    pub dummy_added: bool,
}

/// Runs augmentation, tree construction and the bottom-up visit.
pub fn analyze(g: &PlaneGraph) -> Result<Analysis> {
    let (mut aug, dummy_added) = biconnect_augment(g)?;
    let reference = aug.default_reference();
    aug.set_reference(reference)?;
    let tree = build_spq_tree(&aug, reference)?;
    let ann = bottom_up(&aug, &tree);
    Ok(Analysis { graph: aug, tree, ann, dummy_added })
}

/// Rectilinear planarity test: true exactly when the bend minimum is zero.
pub fn rectilinear_test(g: &PlaneGraph) -> Result<(bool, Analysis)> {
    let a = analyze(g)?;
    Ok((a.ann.total == 0, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spqtree::Side;

    #[test]
    fn p3_budget_example() {
        // Children chosen so the shifted triple is x: [-7,0], y: [-2,2],
        // z: [2,3] — budget 2 between the extremes, interval [0, 2].
        let il = SpiralityInterval::whole(-5, 2);
        let ic = SpiralityInterval::whole(-2, 2);
        let ir = SpiralityInterval::whole(0, 1);
        let res = budget_p3(&il, &ic, &ir);
        assert_eq!(res.bends, 2);
        assert_eq!(res.interval, SpiralityInterval::whole(0, 2));
        assert_eq!((res.x, res.z), (0, 2));
    }

    #[test]
    fn p3_budget_brute_force() {
        // Independent oracle: place b subdivision vertices on the chains of
        // a three-chain P-node in all ways; the admissible spiralities are
        // the composition values over the widened chain intervals.
        fn sigma_set(lens: [u32; 3], bends: [u32; 3]) -> Option<SpiralityInterval> {
            let iv = |i: usize| interval_qstar(lens[i]).widen(bends[i]);
            interval_p3(&iv(0), &iv(1), &iv(2))
        }
        for ll in 1..=4u32 {
            for lc in 1..=3u32 {
                for lr in 1..=3u32 {
                    let base = [
                        interval_qstar(ll),
                        interval_qstar(lc),
                        interval_qstar(lr),
                    ];
                    if interval_p3(&base[0], &base[1], &base[2]).is_some() {
                        continue;
                    }
                    let res = budget_p3(&base[0], &base[1], &base[2]);
                    // Minimum bends over exhaustive placements.
                    let mut best: Option<u32> = None;
                    let mut reachable: Option<SpiralityInterval> = None;
                    'outer: for total in 0..=6u32 {
                        for bl in 0..=total {
                            for bc in 0..=(total - bl) {
                                let br = total - bl - bc;
                                if let Some(iv) = sigma_set([ll, lc, lr], [bl, bc, br]) {
                                    best = Some(total);
                                    reachable = Some(iv);
                                    // Union over all placements with this many bends.
                                    for bl2 in 0..=total {
                                        for bc2 in 0..=(total - bl2) {
                                            let br2 = total - bl2 - bc2;
                                            if let Some(iv2) =
                                                sigma_set([ll, lc, lr], [bl2, bc2, br2])
                                            {
                                                let lo = reachable.unwrap().lo().min(iv2.lo());
                                                let hi = reachable.unwrap().hi().max(iv2.hi());
                                                reachable =
                                                    Some(SpiralityInterval::new(lo, hi));
                                            }
                                        }
                                    }
                                    break 'outer;
                                }
                            }
                        }
                    }
                    assert_eq!(best, Some(res.bends), "chains {:?}", (ll, lc, lr));
                    assert_eq!(reachable, Some(res.interval), "chains {:?}", (ll, lc, lr));
                }
            }
        }
    }

    #[test]
    fn breakpoints_examples() {
        let (plus, _minus) = flexibility_breakpoints(
            &SpiralityInterval::whole(-3, 3),
            &SpiralityInterval::whole(-2, -2),
        );
        assert_eq!(plus, 3);

        // Simultaneously extremal children: both breakpoints zero.
        let (plus, minus) = flexibility_breakpoints(
            &SpiralityInterval::whole(0, 2),
            &SpiralityInterval::whole(-2, 0),
        );
        assert_eq!((plus, minus), (0, 0));

        // A component with positive breakpoint 3 and negative breakpoint 1.
        let (plus, minus) = flexibility_breakpoints(
            &SpiralityInterval::whole(-3, 3),
            &SpiralityInterval::whole(-4, -2),
        );
        assert_eq!((plus, minus), (3, 1));
    }

    #[test]
    fn p2_budget_example() {
        // Point children [0,0] and [1,1] at a Pio2(1,1) node: three bends,
        // post-budget interval [-2, 3].
        let ty = PNodeType::pio2(1, 1);
        let (b, i) = budget_p2(
            &ty,
            &SpiralityInterval::whole(0, 0),
            &SpiralityInterval::whole(1, 1),
            Exposure::Both,
        );
        assert_eq!(b, 3);
        assert_eq!(i, SpiralityInterval::whole(-2, 3));
    }

    #[test]
    fn p2_budget_unexposed_left() {
        // A Pin3(l,l) node failing low by one unit, with left breakpoints
        // capping the upside.
        let ty = PNodeType::pin3(Side::L, Side::L);
        let il = SpiralityInterval::whole(0, 0);
        let ir = SpiralityInterval::whole(-2, -2);
        // Difference [2, 2], window [3, 3]: fails low by 1.
        let (b, i) = budget_p2(&ty, &il, &ir, Exposure::LeftUnexposed { bp: (2, 2) });
        assert_eq!(b, 1);
        // m = max(-1, 0) = 0, M = min(-1, 0) = -1.
        assert_eq!(i, SpiralityInterval::whole(-1, 0));

        // With a zero upside breakpoint the interval cannot rise above M.
        let (b, i) = budget_p2(&ty, &il, &ir, Exposure::LeftUnexposed { bp: (0, 5) });
        assert_eq!(b, 1);
        assert_eq!(i, SpiralityInterval::whole(-1, -1));
    }

    #[test]
    fn root_budgets() {
        let i = SpiralityInterval::whole(-1, -1);
        assert_eq!(budget_root(&i, &RootWindow(SpiralityInterval::whole(2, 6)), false), 3);
        assert_eq!(budget_root(&i, &RootWindow(SpiralityInterval::whole(3, 5)), false), 4);
        assert_eq!(budget_root(&i, &RootWindow(SpiralityInterval::whole(4, 4)), false), 5);
        let j = SpiralityInterval::whole(4, 4);
        assert_eq!(budget_root(&j, &RootWindow(SpiralityInterval::whole(4, 4)), false), 0);
        assert_eq!(budget_root(&i, &RootWindow(SpiralityInterval::whole(2, 6)), true), 0);
    }
}
