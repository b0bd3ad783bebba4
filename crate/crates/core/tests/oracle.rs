//! Randomized cross-checks of the interval/budget machinery against the
//! min-cost-flow oracle, plus construction validity on every instance.

mod common;

use orthobend_core::budget::{analyze, rectilinear_test};
use orthobend_core::build::{build, build_with, measure_spirality, substitute, BuildOptions};
use orthobend_core::flow::flow_min_bends;
use orthobend_core::gen::{generate_sp, GeneratorSpec};

fn spec(seed: u64, n: u32) -> GeneratorSpec {
    GeneratorSpec {
        target_vertices: n,
        seed,
        ..Default::default()
    }
}

#[test]
fn oracle_equivalence_small() {
    let mut mismatches = Vec::new();
    for seed in 0..300u64 {
        let g = generate_sp(&spec(seed, 4 + (seed % 26) as u32)).unwrap();
        if g.vertex_count() > 30 {
            continue;
        }
        let a = analyze(&g).unwrap();
        let want = flow_min_bends(&g);
        if a.ann.total != want {
            mismatches.push((seed, a.ann.total, want));
        }
        let (rect, _) = rectilinear_test(&g).unwrap();
        assert_eq!(rect, want == 0, "rectilinearity agrees with a zero oracle (seed {seed})");
    }
    assert!(mismatches.is_empty(), "budget vs oracle mismatches: {mismatches:?}");
}

#[test]
fn construction_valid_everywhere() {
    for seed in 1000..1200u64 {
        let g = generate_sp(&spec(seed, 4 + (seed % 24) as u32)).unwrap();
        let a = analyze(&g).unwrap();
        let built = build(&a);
        assert!(
            built.rep.is_valid(),
            "seed {seed}: violations {:?}",
            built.rep.check()
        );
        assert_eq!(built.rep.total_bends() as u64, a.ann.total, "seed {seed}");
        assert!(built.rep_aug().is_valid(), "seed {seed} (augmented)");
        for id in a.tree.ids() {
            if id == a.tree.root() || id == a.tree.ref_child() {
                continue;
            }
            let target = built.targets[id as usize].expect("target assigned");
            let got = measure_spirality(&built.rep_aug(), &a.tree, id);
            assert_eq!(got, target, "seed {seed}, node {id}");
        }
    }
}

#[test]
fn seeded_variants_and_substitution() {
    let mut done = 0u32;
    let mut seed = 0u64;
    while done < 100 {
        seed += 1;
        let g = generate_sp(&spec(seed * 7 + 3, 8 + (seed % 18) as u32)).unwrap();
        let a = analyze(&g).unwrap();
        let base = build(&a);
        let variant = build_with(&a, &BuildOptions { choice_seed: Some(seed) });
        assert!(variant.rep.is_valid());
        assert_eq!(variant.rep.total_bends() as u64, a.ann.total);
        for id in a.tree.ids() {
            if id == a.tree.root() || id == a.tree.ref_child() {
                continue;
            }
            let sa = measure_spirality(&base.rep_aug(), &a.tree, id);
            let sb = measure_spirality(&variant.rep_aug(), &a.tree, id);
            if sa != sb {
                continue;
            }
            let merged = substitute(&base.rep_aug(), &a.tree, id, &variant.rep_aug()).unwrap();
            assert!(
                merged.is_valid(),
                "seed {seed} node {id}: {:?}",
                merged.check()
            );
            // Substituting a component by itself is the identity.
            let same = substitute(&base.rep_aug(), &a.tree, id, &base.rep_aug()).unwrap();
            assert!(same.is_valid());
            assert_eq!(same.total_bends(), base.rep_aug().total_bends());
            done += 1;
            if done >= 100 {
                break;
            }
        }
        assert!(seed < 500, "enough equal-spirality pairs exist");
    }
}
