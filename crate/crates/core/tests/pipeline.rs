//! End-to-end pipeline tests: analysis, construction, validity and the
//! worked example, cross-checked against the min-cost-flow oracle.

mod common;

use common::*;
use orthobend_core::budget::analyze;
use orthobend_core::build::{build, measure_spirality};
use orthobend_core::flow::flow_min_bends;
use orthobend_core::spqtree::{NodeKind, PNodeType, Side};

#[test]
fn small_instances() {
    for (g, want) in [
        (square(), 0u64),
        (triangle(), 1),
        (digon(), 2),
        (path(4), 0),
        (path(2), 0),
    ] {
        let a = analyze(&g).unwrap();
        assert_eq!(a.ann.total, want, "budget on the fixture");
        assert_eq!(flow_min_bends(&g), want, "oracle agrees");
        let built = build(&a);
        assert!(built.rep.is_valid(), "violations: {:?}", built.rep.check());
        assert_eq!(built.rep.total_bends() as u64, want);
    }
}

#[test]
fn square_tree_shape() {
    let a = analyze(&square()).unwrap();
    let t = &a.tree;
    let root = t.node(t.root());
    assert_eq!(root.kind, NodeKind::PRoot);
    assert_eq!(root.children.len(), 2);
    let eta = t.node(t.eta());
    assert_eq!(eta.kind, NodeKind::QStar);
    assert_eq!(eta.qstar_len(), 3);
}

#[test]
fn single_edge_plus_dummy_tree() {
    let a = analyze(&path(2)).unwrap();
    let t = &a.tree;
    assert!(a.dummy_added);
    let root = t.node(t.root());
    assert_eq!(root.children.len(), 2);
    for &c in &root.children {
        let n = t.node(c);
        assert_eq!(n.kind, NodeKind::QStar);
        assert_eq!(n.qstar_len(), 1);
    }
}

#[test]
fn worked_example_golden() {
    let g = worked_example();
    assert_eq!(g.vertex_count(), 11);
    let a = analyze(&g).unwrap();
    let t = &a.tree;

    // The component at poles (2, 11) is a Pio2(1,2) node with budget 3;
    // the root adds two more; total five.
    let v2 = g.vertex_index(2).unwrap();
    let v11 = g.vertex_index(11).unwrap();
    let v1 = g.vertex_index(1).unwrap();
    let nu3 = t
        .ids()
        .find(|&id| {
            let n = t.node(id);
            n.kind == NodeKind::P && n.poles == [v2, v11]
        })
        .expect("inner P-node present");
    assert!(matches!(
        t.node(nu3).ty,
        Some(PNodeType::Pio2 { lambda: 1, beta: 2, .. })
    ));
    assert_eq!(a.ann.budget[nu3 as usize], 3);
    assert_eq!(a.ann.budget[t.root() as usize], 2);
    assert_eq!(a.ann.total, 5);
    assert_eq!(flow_min_bends(&g), 5);

    // The non-reference root child is a Pio3(l) node at poles (1, 11) with
    // interval [0, 2].
    let eta = t.node(t.eta());
    assert_eq!(eta.poles, [v1, v11]);
    assert!(matches!(
        eta.ty,
        Some(PNodeType::Pio3 { d: Side::L, lambda: 1, beta: 1, .. })
    ));
    let i_eta = a.ann.node_interval(t.eta());
    assert_eq!((i_eta.lo(), i_eta.hi()), (0, 4)); // [0, 2] doubled

    let built = build(&a);
    assert!(built.rep.is_valid(), "violations: {:?}", built.rep.check());
    assert_eq!(built.rep.total_bends(), 5);
    // Three bends on edge (2,11), two on the reference edge (1,11).
    let e211 = g.edge_index(3).unwrap();
    let e111 = g.edge_index(1).unwrap();
    assert_eq!(built.rep.turns(e211).len(), 3);
    assert_eq!(built.rep.turns(e111).len(), 2);

    // Spiralities realized by the construction: eta at its maximum 2, the
    // inner component at five halves.
    assert_eq!(measure_spirality(&built.rep_aug(), t, t.eta()), 4);
    assert_eq!(measure_spirality(&built.rep_aug(), t, nu3), 5);

    // Every node hits its target.
    for id in t.ids() {
        if id == t.root() || id == t.ref_child() {
            continue;
        }
        let target = built.targets[id as usize].expect("assigned");
        assert_eq!(
            measure_spirality(&built.rep_aug(), t, id),
            target,
            "node {id} of kind {:?}",
            t.node(id).kind
        );
    }
}

#[test]
fn targets_met_on_fixtures() {
    for g in [square(), triangle(), digon(), path(5)] {
        let a = analyze(&g).unwrap();
        let built = build(&a);
        for id in a.tree.ids() {
            if id == a.tree.root() || id == a.tree.ref_child() {
                continue;
            }
            let target = built.targets[id as usize].unwrap();
            assert_eq!(measure_spirality(&built.rep_aug(), &a.tree, id), target);
        }
    }
}

#[test]
fn checker_report() {
    use orthobend_core::rep::check_representation;
    let a = analyze(&square()).unwrap();
    let built = build(&a);
    let (ok, report) = check_representation(&built.rep);
    assert!(ok && report.is_empty());
}

#[test]
fn rectilinear_examples() {
    use orthobend_core::budget::rectilinear_test;
    // A square is drawable without bends.
    assert!(rectilinear_test(&square()).unwrap().0);
    // The worked example needs five.
    assert!(!rectilinear_test(&worked_example()).unwrap().0);
    // Two parallel two-edge paths plus a parallel edge: the three-child
    // composition condition is empty.
    let g = common::graph(
        &[1, 2, 3, 4],
        &[(1, 1, 2), (2, 1, 3), (3, 3, 2), (4, 1, 4), (5, 4, 2)],
        &[
            (1, &[1, 2, 4]),
            (3, &[2, 3]),
            (4, &[4, 5]),
            (2, &[1, 5, 3]),
        ],
        (1, orthobend_core::graph::EdgeSide::Left),
        None,
    );
    let (rect, _) = rectilinear_test(&g).unwrap();
    assert!(!rect);
    assert!(flow_min_bends(&g) > 0);
}

#[test]
fn root_windows() {
    use orthobend_core::budget::root_window;
    use orthobend_core::interval::SpiralityInterval;
    // Both alias vertices coincide with the poles.
    let a = analyze(&digon()).unwrap();
    assert_eq!(root_window(&a.tree).0, SpiralityInterval::whole(2, 6));
    // Neither does (the worked example).
    let a = analyze(&worked_example()).unwrap();
    assert_eq!(root_window(&a.tree).0, SpiralityInterval::whole(4, 4));
    // Exactly one: an edge in series with a parallel of two-chains.
    let g = common::graph(
        &[1, 2, 3, 4, 5],
        &[(1, 1, 2), (2, 2, 4), (3, 4, 3), (4, 2, 5), (5, 5, 3), (6, 1, 3)],
        &[
            (1, &[6, 1]),
            (2, &[1, 2, 4]),
            (4, &[2, 3]),
            (5, &[4, 5]),
            (3, &[6, 5, 3]),
        ],
        (6, orthobend_core::graph::EdgeSide::Right),
        Some(6),
    );
    let a = analyze(&g).unwrap();
    assert_eq!(root_window(&a.tree).0, SpiralityInterval::whole(3, 5));
}

#[test]
fn straight_chain_measures_zero() {
    let g = path(5);
    let a = analyze(&g).unwrap();
    let built = build(&a);
    assert_eq!(
        measure_spirality(&built.rep_aug(), &a.tree, a.tree.eta()),
        0,
        "a path drawn with a dummy reference stays straight"
    );
}

#[test]
fn tree_dump_golden() {
    let a = analyze(&worked_example()).unwrap();
    let dump = a.tree.dump_text(&a.graph);
    assert!(dump.starts_with("P^r poles=(1,11)"), "{dump}");
    assert!(dump.contains("Q* poles=(1,11) len=1"));
    assert!(dump.contains("Pio3 { d: L"), "{dump}");
    assert!(dump.contains("Pio2 { lambda: 1, beta: 2"), "{dump}");
    // Indentation reflects depth.
    assert!(dump.lines().any(|l| l.starts_with("      ")), "{dump}");
}
