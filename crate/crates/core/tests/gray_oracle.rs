//! Cross-validation of the streaming tree generator against the brute-force
//! oracle: partition of the tree sets by children sequences, the first/last
//! relations the zigzag relies on, duality with dissection flips, and delta
//! replay.

use std::collections::{HashMap, HashSet};

use flipgray::dissection::Dissection;
use flipgray::gray::KaryGray;
use flipgray::kary::{Direction, KAryTree, Rotation};
use flipgray::oracle::{
    self, count_kary, enumerate_dissections, rotation_adjacent, FlipGraph,
};

/// All k-ary trees with n vertices, via the dissection enumeration (an
/// independent route from the children-sequence machinery).
fn all_trees(n: usize, k: usize) -> Vec<KAryTree> {
    if n == 0 {
        return vec![KAryTree::empty(k)];
    }
    enumerate_dissections((k - 1) * n + 2, k)
        .iter()
        .map(Dissection::to_tree)
        .collect()
}

#[test]
fn children_sequences_partition_the_next_level() {
    for k in 2..=4usize {
        for n in 1..=if k == 2 { 7 } else { 5 } {
            let mut seen: HashMap<String, usize> = HashMap::new();
            for t in all_trees(n - 1, k) {
                for c in t.children_sequence() {
                    *seen.entry(c.encode()).or_default() += 1;
                }
            }
            let expected: Vec<String> = all_trees(n, k).iter().map(KAryTree::encode).collect();
            assert_eq!(seen.len(), expected.len(), "k={k} n={n}");
            assert!(seen.values().all(|&c| c == 1), "k={k} n={n} multiplicity");
            assert!(expected.iter().all(|e| seen.contains_key(e)));
        }
    }
}

/// For trees T ~ T' (one clean rotation of pivot b): the first entries of
/// their children sequences are always adjacent; the last entries are
/// adjacent unless b is the end of the rightmost branch (the largest
/// label), in which case the last entry on the down-earlier side pairs with
/// the r-th-last on the other, r = steps plus one unless the move starts or
/// ends in the parent position.
#[test]
fn first_last_children_relations() {
    for k in 2..=4usize {
        let n_max = if k == 2 { 6 } else { 4 };
        for n in 2..=n_max {
            for t in all_trees(n, k) {
                for pivot in 1..=n as u32 {
                    for steps in 1..k {
                        let mut u = t.clone();
                        if u
                            .rotate(Rotation {
                                pivot,
                                dir: Direction::Down,
                                steps,
                            })
                            .is_err()
                        {
                            continue;
                        }
                        if !u.has_canonical_labels() {
                            continue; // not a clean configuration
                        }
                        let ct = t.children_sequence();
                        let cu = u.children_sequence();
                        assert!(
                            rotation_adjacent(&ct[0], &cu[0]),
                            "first entries k={k} {}",
                            t.encode()
                        );
                        if pivot as usize != n {
                            assert!(
                                rotation_adjacent(
                                    ct.last().unwrap(),
                                    cu.last().unwrap()
                                ),
                                "last entries k={k} {} pivot {pivot}",
                                t.encode()
                            );
                        } else {
                            // t is down-earlier; its last entry pairs with
                            // the r-th-last of the rotated tree
                            let above = t.child(pivot, 1).is_some();
                            let r = if above { steps } else { steps + 1 };
                            assert!(
                                rotation_adjacent(
                                    ct.last().unwrap(),
                                    &cu[cu.len() - r]
                                ),
                                "cross relation k={k} {} pivot {pivot} steps {steps}",
                                t.encode()
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn generator_matches_oracle_count_distinct_adjacent() {
    for (k, n) in [(2usize, 9usize), (3, 6), (4, 5), (5, 4)] {
        let mut gen = KaryGray::new(k, n).unwrap();
        let mut seen = HashSet::new();
        seen.insert(gen.tree().encode());
        let mut prev = gen.tree().clone();
        while let Some(_) = gen.next_rotation() {
            assert!(rotation_adjacent(&prev, gen.tree()), "k={k} n={n}");
            assert!(seen.insert(gen.tree().encode()), "k={k} n={n} duplicate");
            prev = gen.tree().clone();
        }
        assert_eq!(
            num_bigint::BigUint::from(seen.len()),
            count_kary(n, k),
            "k={k} n={n}"
        );
    }
}

#[test]
fn delta_replay_reproduces_snapshots() {
    for (k, n) in [(2usize, 6usize), (3, 5), (4, 4)] {
        let mut gen = KaryGray::new(k, n).unwrap();
        let mut snapshots = vec![gen.tree().encode()];
        let mut deltas = Vec::new();
        while let Some(rot) = gen.next_rotation() {
            deltas.push(rot);
            snapshots.push(gen.tree().encode());
        }
        let mut tree = KAryTree::decode(&snapshots[0], k).unwrap();
        let mut replayed = vec![tree.encode()];
        for rot in deltas {
            tree.rotate(rot).unwrap();
            replayed.push(tree.encode());
        }
        assert_eq!(snapshots, replayed, "k={k} n={n}");
    }
}

#[test]
fn binary_streams_never_need_multistep_rotations() {
    for n in 2..=9 {
        let mut gen = KaryGray::new(2, n).unwrap();
        while let Some(rot) = gen.next_rotation() {
            assert_eq!(rot.steps, 1);
        }
    }
}

#[test]
fn duality_is_edge_preserving() {
    // the flip graph on dissections equals the rotation graph on dual trees
    for (k, n_points) in [(2usize, 7usize), (3, 8), (4, 11)] {
        let dissections = enumerate_dissections(n_points, k);
        let by_text: HashMap<String, KAryTree> = dissections
            .iter()
            .map(|d| (d.to_text(), d.to_tree()))
            .collect();
        let flip_graph = FlipGraph::build(
            dissections.iter().map(|d| d.to_text()).collect(),
            |s| {
                let d = Dissection::from_text(s, k).unwrap();
                d.flips().into_iter().map(|(_, x)| x.to_text()).collect()
            },
        )
        .unwrap();
        for (i, a) in flip_graph.nodes.iter().enumerate() {
            for &j in &flip_graph.adj[i] {
                let b = &flip_graph.nodes[j];
                assert!(
                    rotation_adjacent(&by_text[a], &by_text[b]),
                    "flip without rotation: {a} / {b}"
                );
            }
        }
        // and edge counts agree with the rotation graph built structurally
        let trees: Vec<KAryTree> = dissections.iter().map(Dissection::to_tree).collect();
        let mut rotation_edges = 0;
        for i in 0..trees.len() {
            for j in i + 1..trees.len() {
                if rotation_adjacent(&trees[i], &trees[j]) {
                    rotation_edges += 1;
                }
            }
        }
        assert_eq!(flip_graph.edge_count(), rotation_edges, "k={k}");
    }
}

#[test]
fn tree_dissection_roundtrip_exhaustive() {
    for n_points in [5usize, 8, 10] {
        for d in oracle::enumerate_triangulations(n_points) {
            assert_eq!(Dissection::from_tree(&d.to_tree()).unwrap(), d);
        }
    }
    for d in enumerate_dissections(10, 3) {
        assert_eq!(Dissection::from_tree(&d.to_tree()).unwrap(), d);
    }
}
