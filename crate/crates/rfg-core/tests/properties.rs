//! Property suites for the algebraic invariants: normal forms, cover actions
//! and the canonical completion, over randomized words and fixture graphs.

use proptest::prelude::*;

use rfg_core::{
    ball, canonical_complete, check_local_isometry, enumerate_covers, geodesic_length,
    normal_form, random_square_closed, separating_cover, Letter, Sign, SimplicialGraph, Word,
};

fn fixtures() -> Vec<SimplicialGraph> {
    vec![
        SimplicialGraph::new(&["a"], &[]).unwrap(),
        SimplicialGraph::new(&["a", "b"], &[]).unwrap(),
        SimplicialGraph::new(&["a", "b"], &[("a", "b")]).unwrap(),
        SimplicialGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap(),
        SimplicialGraph::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap(),
    ]
}

fn arb_word(max_len: usize) -> impl Strategy<Value = (usize, Vec<(usize, bool)>)> {
    (0..fixtures().len(), prop::collection::vec((0..8usize, any::<bool>()), 0..max_len))
}

fn build_word(graph: &SimplicialGraph, raw: &[(usize, bool)]) -> Word {
    Word::new(
        raw.iter()
            .map(|&(g, pos)| Letter {
                gen: g % graph.gen_count(),
                sign: if pos { Sign::Pos } else { Sign::Neg },
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn normal_form_is_idempotent((gi, raw) in arb_word(12)) {
        let graph = &fixtures()[gi];
        let w = build_word(graph, &raw);
        let nf = normal_form(graph, &w);
        let again = normal_form(graph, &nf.as_word());
        prop_assert_eq!(nf, again);
    }

    #[test]
    fn shuffle_of_commuting_letters_preserves_normal_form(
        (gi, raw) in arb_word(12),
        at in 0usize..16,
    ) {
        let graph = &fixtures()[gi];
        let w = build_word(graph, &raw);
        let letters = w.letters().to_vec();
        if letters.len() >= 2 {
            let i = at % (letters.len() - 1);
            let (x, y) = (letters[i], letters[i + 1]);
            if x.gen != y.gen && graph.adjacent(x.gen, y.gen) {
                let mut swapped = letters.clone();
                swapped.swap(i, i + 1);
                prop_assert_eq!(
                    normal_form(graph, &w),
                    normal_form(graph, &Word::new(swapped))
                );
            }
        }
    }

    #[test]
    fn length_is_subadditive((gi, raw_u) in arb_word(10), raw_v in prop::collection::vec((0..8usize, any::<bool>()), 0..10)) {
        let graph = &fixtures()[gi];
        let u = build_word(graph, &raw_u);
        let v = build_word(graph, &raw_v);
        let lu = geodesic_length(graph, &u);
        let lv = geodesic_length(graph, &v);
        let luv = geodesic_length(graph, &u.concat(&v));
        prop_assert!(luv <= lu + lv);
    }

    #[test]
    fn length_is_inverse_symmetric((gi, raw) in arb_word(12)) {
        let graph = &fixtures()[gi];
        let w = build_word(graph, &raw);
        prop_assert_eq!(geodesic_length(graph, &w), geodesic_length(graph, &w.inverse()));
    }

    #[test]
    fn action_is_a_homomorphism_and_factors_through_the_group(
        (gi, raw_u) in arb_word(8),
        raw_v in prop::collection::vec((0..8usize, any::<bool>()), 0..8),
        degree in 1usize..4,
        pick in any::<u16>(),
    ) {
        let graph = &fixtures()[gi];
        let covers = enumerate_covers(graph, degree);
        prop_assume!(!covers.is_empty());
        let cover = &covers[pick as usize % covers.len()];
        let u = build_word(graph, &raw_u);
        let v = build_word(graph, &raw_v);
        let pu = cover.act(&u).unwrap();
        let pv = cover.act(&v).unwrap();
        let puv = cover.act(&u.concat(&v)).unwrap();
        let composed: Vec<usize> = (0..cover.degree()).map(|x| pv[pu[x]]).collect();
        prop_assert_eq!(&puv, &composed);
        // action depends only on the element, not the spelling
        let nf = normal_form(graph, &u).as_word();
        prop_assert_eq!(cover.act(&nf).unwrap(), pu);
    }

    #[test]
    fn enumerated_covers_kill_all_relators(gi in 0..fixtures().len(), degree in 1usize..4) {
        let graph = &fixtures()[gi];
        let identity: Vec<usize> = (0..degree).collect();
        for cover in enumerate_covers(graph, degree) {
            for (a, b) in graph.edges() {
                let relator = Word::new(vec![
                    Letter::pos(a),
                    Letter::pos(b),
                    Letter::neg(a),
                    Letter::neg(b),
                ]);
                prop_assert_eq!(cover.act(&relator).unwrap(), identity.clone());
            }
        }
    }

    #[test]
    fn random_square_closed_partials_complete_and_embed(
        gi in 0..fixtures().len(),
        vertices in 1usize..8,
        seed in any::<u64>(),
    ) {
        let graph = &fixtures()[gi];
        let pc = random_square_closed(graph, vertices, 3 * vertices, seed);
        prop_assert!(check_local_isometry(graph, &pc).is_empty());
        let cover = canonical_complete(graph, &pc)
            .expect("locally isometric input always completes");
        prop_assert_eq!(cover.degree(), pc.vertex_count());
        for g in 0..graph.gen_count() {
            for v in 0..pc.vertex_count() {
                if let Some(w) = pc.image(g, v) {
                    prop_assert_eq!(cover.perm(g)[v], w);
                }
            }
        }
    }
}

#[test]
fn certificates_hold_over_small_balls() {
    for graph in fixtures() {
        for e in ball(&graph, 3) {
            let cert = separating_cover(&graph, &e.as_word())
                .unwrap_or_else(|err| panic!("{}: {err}", e.display(&graph)));
            assert!(cert.degree <= e.len() + 1);
            assert!(cert.cover.separates(&e.as_word()));
            assert!(cert.cover.is_transitive());
            cert.chain.validate(&graph, &e).unwrap();
        }
    }
}

/// Randomized deep sweep of the witness pipeline on graphs with richer link
/// structure than the acceptance fixtures, with words well past the
/// acceptance radius. Guards the completeness of the chain search.
#[test]
fn certificates_hold_for_long_random_words() {
    use rfg_core::SplitMix64;

    let graphs = [
        SimplicialGraph::new(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("a", "d")])
            .unwrap(), // star
        SimplicialGraph::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")],
        )
        .unwrap(), // triangle with a pendant edge
        SimplicialGraph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")])
            .unwrap(), // path P4
        SimplicialGraph::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")],
        )
        .unwrap(), // diamond
        SimplicialGraph::new(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
        )
        .unwrap(), // five-cycle
    ];
    let mut rng = SplitMix64::new(0x5eed);
    let mut nontrivial = 0u64;
    for case in 0..50_000u64 {
        let graph = &graphs[(case % graphs.len() as u64) as usize];
        let len = 1 + rng.below(16);
        let letters: Vec<Letter> = (0..len)
            .map(|_| Letter {
                gen: rng.below(graph.gen_count()),
                sign: if rng.below(2) == 0 { Sign::Pos } else { Sign::Neg },
            })
            .collect();
        let w = Word::new(letters);
        let nf = normal_form(graph, &w);
        if nf.is_empty() {
            continue;
        }
        let cert = separating_cover(graph, &w)
            .unwrap_or_else(|err| panic!("case {case} ({}): {err}", nf.display(graph)));
        assert!(cert.degree <= nf.len() + 1);
        assert!(cert.cover.separates(&w));
        nontrivial += 1;
    }
    assert!(nontrivial > 40_000, "sweep must exercise plenty of nontrivial elements");
}
