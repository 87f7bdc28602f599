use bicusp::boxes::Boxcode;
use bicusp::conditions::TerminalCondition;
use bicusp::prooftree::{
    parse_tree, search, tree_height, verify_tree, Node, ProofTree, SearchConfig, VerifyOptions, VerifyStatus,
};
use bicusp::words::Word;
use bicusp_oracle::trees::random_tree;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn whitehead_root(depth: usize) -> Boxcode {
    Boxcode::containing([2.0, 1.0, 1.0, 0.0, 1.0, 0.0], depth).unwrap()
}

#[test]
fn random_trees_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..1000 {
        let tree = random_tree(&mut rng, 8);
        let text = tree.serialize();
        let back = parse_tree(text.as_bytes()).unwrap();
        assert_eq!(back, tree);
        assert_eq!(back.serialize(), text);
    }
}

#[test]
fn leaves_partition_the_root() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..200 {
        let tree = random_tree(&mut rng, 10);
        let root = tree.root_or_default();
        let leaves = tree.node.leaves(&root);
        assert_eq!(leaves.len(), tree.node.leaf_count());
        // measure adds up to the whole root
        let total: f64 = leaves.iter().map(|(c, _)| 0.5f64.powi((c.depth() - root.depth()) as i32)).sum();
        assert_eq!(total, 1.0);
        for (i, (a, _)) in leaves.iter().enumerate() {
            assert!(root.is_prefix_of(a));
            for (b, _) in &leaves[i + 1..] {
                assert!(!a.is_prefix_of(b) && !b.is_prefix_of(a));
                assert!(a < b, "preorder is lexicographic");
            }
        }
        assert!(leaves.iter().all(|(c, _)| c.depth() - root.depth() <= tree_height(&tree)));
    }
}

#[test]
fn whitehead_box_certifies_with_necklace() {
    let root = whitehead_root(42);
    let tree = search(&root, &SearchConfig::main()).unwrap();
    let leaves = tree.node.leaves(&root);
    assert!(leaves.iter().all(|(_, c)| **c != TerminalCondition::Hole));
    let w = [2.0, 1.0, 1.0, 0.0, 1.0, 0.0];
    let (_, cond) = leaves.iter().find(|(c, _)| c.to_box().contains(&w)).unwrap();
    let TerminalCondition::Necklace(word) = cond else { panic!("{cond}") };
    assert!((4..=7).contains(&word.g_length()), "{word}");

    let report = verify_tree(&tree, &root, &VerifyOptions::main());
    assert_eq!(report.status, VerifyStatus::Pass, "{report}");
    assert_eq!(report.leaf_count as usize, leaves.len());
}

#[test]
fn search_is_deterministic_across_parallelism() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let mut roots = vec![whitehead_root(36)];
    roots.extend((0..3).map(|_| Boxcode::from_bits((0..24).map(|_| rng.gen()).collect()).unwrap()));
    for root in roots {
        let seq = SearchConfig { max_depth: root.depth() + 8, parallel: false, ..SearchConfig::main() };
        let par = SearchConfig { parallel: true, ..seq };
        let a = search(&root, &seq).unwrap();
        let b = search(&root, &par).unwrap();
        assert_eq!(a.serialize(), b.serialize(), "{root}");
        assert_eq!(a.serialize(), search(&root, &seq).unwrap().serialize());

        let opts = VerifyOptions { allow_holes: true, parallel: false, ..VerifyOptions::main() };
        let ra = verify_tree(&a, &root, &opts);
        let rb = verify_tree(&a, &root, &VerifyOptions { parallel: true, ..opts });
        assert_eq!(ra, rb);
        assert!(ra.passed(), "{ra}");
    }
}

#[test]
fn tampered_leaf_is_reported() {
    let root = whitehead_root(42);
    let word = Word::parse("gg").unwrap();
    let tree = ProofTree::new(Some(root.clone()), Node::Leaf(TerminalCondition::Necklace(word)));
    let r = verify_tree(&tree, &root, &VerifyOptions::main());
    assert_eq!(r.status, VerifyStatus::Fail);
    assert_eq!(r.failures[0].boxcode, root);
    assert!(r.to_string().contains(&format!("FAIL {root} Ngg")), "{r}");
}

#[test]
fn holes_need_permission() {
    let root = whitehead_root(42);
    let tree = parse_tree(b"X\nH\nH\n").unwrap();
    let strict = verify_tree(&tree, &root, &VerifyOptions::main());
    assert_eq!(strict.status, VerifyStatus::Fail);
    assert_eq!(strict.failures.len(), 2);
    let lax = verify_tree(&tree, &root, &VerifyOptions { allow_holes: true, ..VerifyOptions::main() });
    assert_eq!((lax.status, lax.hole_count), (VerifyStatus::PassWithHoles, 2));
}

#[test]
fn identify_rejects_pairs_outside_whitelist() {
    let root = whitehead_root(100);
    let text = "VgMGGMgN,gMGGMgN\n";
    let tree = parse_tree(text.as_bytes()).unwrap();
    let r = verify_tree(&tree, &root, &VerifyOptions::identify());
    assert_eq!(r.status, VerifyStatus::Fail);
    assert!(r.failures[0].reason.contains("whitelist"), "{r}");
    // main mode refuses variety leaves outright
    assert_eq!(verify_tree(&tree, &root, &VerifyOptions::main()).status, VerifyStatus::Fail);
}
