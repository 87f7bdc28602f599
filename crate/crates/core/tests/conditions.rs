use bicusp::boxes::{Boxcode, ParamBox};
use bicusp::conditions::{
    certify_boundary, certify_killer, certify_necklace, certify_variety, BoxContext, Boundary, CertStatus, Mode,
    TerminalCondition,
};
use bicusp::prooftree::{search, SearchConfig};
use bicusp::words::Word;
use bicusp_oracle::pointwise::holds_at;
use bicusp_oracle::soundness::{random_t, sample_point};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn boundary_cases() -> Vec<(&'static str, ParamBox)> {
    let bx = |p, s, l| ParamBox::around(p, s, l, 0.01);
    vec![
        ("0", bx(c(0.1, 0.1), c(0.3, 0.3), c(0.2, 2.0))),
        ("1a", bx(c(0.1, 0.5), c(1.5, -0.5), c(0.2, 2.0))),
        ("1b", bx(c(0.1, 0.5), c(1.0, 1.0), c(0.2, -2.0))),
        ("1c", bx(c(0.1, -0.5), c(1.0, 1.0), c(0.2, 2.0))),
        ("1d", bx(c(-0.3, 0.5), c(1.0, 1.0), c(0.2, 2.0))),
        ("2", bx(c(0.1, 0.5), c(1.0, 1.0), c(0.8, 2.0))),
        ("3", bx(c(0.1, 0.2), c(1.0, 1.0), c(0.1, 0.5))),
        ("4", bx(c(0.1, 1.5), c(1.0, 1.0), c(0.2, 2.0))),
        ("5", bx(c(0.8, 0.5), c(1.0, 1.0), c(0.2, 2.0))),
        ("6", bx(c(0.1, 0.5), c(2.0, 1.0), c(0.2, 2.0))),
    ]
}

#[test]
fn constructed_boxes_certify_their_boundary() {
    for (label, bx) in boundary_cases() {
        let b = Boundary::parse(label).unwrap();
        let r = certify_boundary(&bx, b, &Mode::MAIN);
        assert_eq!(r.status, CertStatus::Certified, "B{label}: {}", r.witness);
        if b.index == 1 {
            assert!(certify_boundary(&bx, Boundary::new(1), &Mode::MAIN).is_certified());
        }
        // the other conditions hold on these boxes; Im L < 0 forces Im P > Im L / 2
        let implied = if label == "1b" { "4" } else { "" };
        let others: Vec<String> = Boundary::SEARCH_ORDER
            .iter()
            .filter(|o| ![label, implied].contains(&o.to_string().as_str()))
            .filter(|o| certify_boundary(&bx, **o, &Mode::MAIN).is_certified())
            .map(|o| o.to_string())
            .collect();
        assert!(others.is_empty(), "B{label} box also violates {others:?}");
    }
}

#[test]
fn whitehead_box_violates_nothing() {
    let code = Boxcode::containing([2.0, 1.0, 1.0, 0.0, 1.0, 0.0], 42).unwrap();
    let ctx = BoxContext::new(code.to_box());
    for b in Boundary::SEARCH_ORDER.into_iter().chain([Boundary::new(1)]) {
        assert!(!ctx.boundary(b, &Mode::MAIN).is_certified(), "B{b}");
    }
    // area 4 lies beyond the identify bound
    assert!(ctx.boundary(Boundary::new(6), &Mode::IDENTIFY).is_certified());
}

#[test]
fn identify_area_bound_is_tighter() {
    // area about 4: inside the main region, outside the identify one
    let bx = ParamBox::around(c(0.1, 0.5), c(1.0, 1.0), c(0.2, 2.0), 0.001);
    assert!(!certify_boundary(&bx, Boundary::new(6), &Mode::MAIN).is_certified());
    assert!(certify_boundary(&bx, Boundary::new(6), &Mode::IDENTIFY).is_certified());
}

fn random_code(rng: &mut impl Rng, depth: usize) -> Boxcode {
    Boxcode::from_bits((0..depth).map(|_| rng.gen()).collect()).unwrap()
}

#[test]
fn boundary_certification_is_inherited_by_children() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut hits = 0;
    for _ in 0..3000 {
        let depth = rng.gen_range(0..50);
        let code = random_code(&mut rng, depth);
        let bx = code.to_box();
        for b in Boundary::SEARCH_ORDER {
            if certify_boundary(&bx, b, &Mode::MAIN).is_certified() {
                hits += 1;
                for bit in [false, true] {
                    let child = code.child(bit).unwrap().to_box();
                    assert!(certify_boundary(&child, b, &Mode::MAIN).is_certified(), "B{b} on {code}");
                }
            }
        }
    }
    assert!(hits > 1000);
}

#[test]
fn searched_leaves_hold_at_sampled_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut roots = vec![Boxcode::containing([2.0, 1.0, 1.0, 0.0, 1.0, 0.0], 40).unwrap()];
    for _ in 0..6 {
        roots.push(random_code(&mut rng, 24));
    }
    let mut kinds = std::collections::BTreeSet::new();
    let mut checked = 0;
    for root in roots {
        let cfg = SearchConfig { max_depth: root.depth() + 8, parallel: false, ..SearchConfig::main() };
        let tree = search(&root, &cfg).unwrap();
        for (code, cond) in tree.node.leaves(&root) {
            if *cond == TerminalCondition::Hole {
                continue;
            }
            kinds.insert(cond.kind());
            let bx = code.to_box();
            for _ in 0..20 {
                let pt = sample_point(&bx, random_t(&mut rng));
                assert!(holds_at(cond, &pt, &Mode::MAIN), "{cond} fails in {code}");
                checked += 1;
            }
        }
    }
    assert!(kinds.contains("boundary") && kinds.contains("necklace"), "{kinds:?}");
    assert!(checked > 100);
}

#[test]
fn killer_and_necklace_examples() {
    // g^2 = [-1, P; P S^2, -1 - P^2 S^2]
    let bx = ParamBox::around(c(0.25, 0.0), c(1.5, 0.0), c(0.0, 2.0), 1e-9);
    let gg = Word::parse("gg").unwrap();
    assert!(certify_killer(&bx, &gg).is_certified());
    assert!(certify_necklace(&bx, &gg, &Mode::MAIN).is_certified());
    for pt in (0..20).map(|k| sample_point(&bx, [k as f64 / 20.0 - 0.5; 6])) {
        assert!(holds_at(&TerminalCondition::Killer(gg.clone()), &pt, &Mode::MAIN));
    }
    let w = Word::parse("gMGGMgN").unwrap();
    let wbox = ParamBox::around(c(0.0, 1.0), c(1.0, 1.0), c(0.0, 2.0), 1e-9);
    // c vanishes at the Whitehead point, so the word is trivial-looking there
    assert!(!certify_killer(&wbox, &w).is_certified());
}

#[test]
fn structural_refusals() {
    let bx = ParamBox::around(c(0.0, 1.0), c(1.0, 1.0), c(0.0, 2.0), 1e-6);
    let w = Word::parse("gMGGMgN").unwrap();
    assert_eq!(certify_variety(&bx, &w, &w, &Mode::MAIN).status, CertStatus::RefutedPrecondition);
    assert!(certify_variety(&bx, &w, &w, &Mode::IDENTIFY).is_certified());
    let g8 = Word::parse("gggggggg").unwrap();
    assert_eq!(certify_necklace(&bx, &g8, &Mode::MAIN).status, CertStatus::RefutedPrecondition);
    let unreduced = Word::parse("gGgMg").unwrap();
    assert_eq!(certify_necklace(&bx, &unreduced, &Mode::MAIN).status, CertStatus::RefutedPrecondition);
    let g4 = Word::parse("gMgMgMg").unwrap();
    assert_eq!(certify_necklace(&bx, &g4, &Mode::IDENTIFY).status, CertStatus::RefutedPrecondition);
    assert_eq!(certify_killer(&bx, &Word::new(vec![])).status, CertStatus::RefutedPrecondition);
}
