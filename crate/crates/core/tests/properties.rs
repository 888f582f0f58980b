use proptest::prelude::*;

use strahler_core::game::{attractor, is_trap, validate_dominion_strategy};
use strahler_core::io::{generate_random, parse_game, write_game, GenParams};
use strahler_core::lifting::{bit_budget, strahler_solve};
use strahler_core::oracles::{brute_force_solve, exact_strahler, OracleBudget};
use strahler_core::register::{
    build_def, build_reg, lehtinen_number, register_number, state_count, DEFAULT_STATE_CAP,
};
use strahler_core::universal::{
    b_leaves, is_b_leaf, level_successor, min_descendant, DEFAULT_LEAF_CAP,
};
use strahler_core::zielonka::{
    decomposition_tree, extract_decomposition, validate_decomposition, zielonka_solve,
};
use strahler_core::{ParityGame, Player, TreeParams, VertexSet};

fn small_game(max_n: usize, max_d: u32) -> impl Strategy<Value = ParityGame> {
    (any::<u64>(), 1..=max_n, 0..=max_d, 1usize..=3, 0.0f64..=1.0).prop_map(
        |(seed, n, d, max_degree, audrey_fraction)| {
            let params = GenParams {
                n,
                d,
                min_degree: 1,
                max_degree: max_degree.min(n),
                audrey_fraction,
            };
            generate_random(seed, params).unwrap()
        },
    )
}

fn tree_params(max_t: u32, max_h: u32) -> impl Strategy<Value = TreeParams> {
    (0..=max_t, 1..=max_h)
        .prop_flat_map(|(t, h)| (Just(t), Just(h), 1..=h))
        .prop_map(|(t, h, k)| TreeParams::new(t, h, k).unwrap())
}

fn won_subgame(game: &ParityGame, player: Player) -> Option<ParityGame> {
    let z = zielonka_solve(game);
    let region = z.region(player);
    (!region.is_empty()).then(|| game.subgame(region).unwrap().game)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn file_round_trip(game in small_game(12, 8)) {
        let text = write_game(&game);
        let back = parse_game(&text).unwrap();
        prop_assert_eq!(&back, &game);
        prop_assert_eq!(write_game(&back), text);
    }

    #[test]
    fn generator_is_deterministic(seed in any::<u64>(), n in 1usize..20) {
        let params = GenParams { n, d: 6, min_degree: 1, max_degree: n.min(3), audrey_fraction: 0.5 };
        prop_assert_eq!(generate_random(seed, params).unwrap(), generate_random(seed, params).unwrap());
    }

    #[test]
    fn attractors_leave_traps(game in small_game(10, 6), mask in any::<u16>(), steven in any::<bool>()) {
        let player = if steven { Player::Steven } else { Player::Audrey };
        let n = game.num_vertices();
        let targets = VertexSet::from_vertices(n, (0..n).filter(|v| mask >> v & 1 == 1));
        let (attr, _) = attractor(&game, player, &targets);
        prop_assert!(targets.is_subset(&attr));
        prop_assert!(is_trap(&game, player, &attr.complement()));
    }

    #[test]
    fn solvers_agree(game in small_game(8, 6)) {
        let z = zielonka_solve(&game);
        prop_assert!(z.w_even.is_disjoint(&z.w_odd));
        prop_assert_eq!(z.w_even.len() + z.w_odd.len(), game.num_vertices());
        prop_assert!(is_trap(&game, Player::Audrey, &z.w_even));
        prop_assert!(is_trap(&game, Player::Steven, &z.w_odd));
        let (w_even, _) = brute_force_solve(&game, &OracleBudget::default()).unwrap();
        prop_assert_eq!(&w_even, &z.w_even);
        let s = strahler_solve(&game, None).unwrap();
        prop_assert_eq!(&s.w_even, &z.w_even);
        prop_assert!(validate_dominion_strategy(&game, &s.w_even, &s.sigma_even));
        prop_assert!(validate_dominion_strategy(&game, &s.w_odd, &s.sigma_odd));
        prop_assert!(s.k_final <= bit_budget(game.num_vertices()) + 1);
    }

    #[test]
    fn decompositions_are_valid_and_bounded(game in small_game(6, 4), steven in any::<bool>()) {
        let player = if steven { Player::Steven } else { Player::Audrey };
        if let Some(sub) = won_subgame(&game, player) {
            let h = extract_decomposition(&sub, player).unwrap();
            prop_assert!(validate_decomposition(&sub, &h, player));
            let read_off = decomposition_tree(&h).strahler() as u32;
            let exact = exact_strahler(&sub, player, &OracleBudget::exact()).unwrap();
            prop_assert!(exact <= read_off);
            prop_assert!(exact <= bit_budget(sub.num_vertices()) + 1);
        }
    }

    #[test]
    fn leaves_are_sorted_and_valid(p in tree_params(3, 5)) {
        let leaves = b_leaves(p, DEFAULT_LEAF_CAP).unwrap();
        prop_assert!(leaves.windows(2).all(|w| w[0].compare_prefix(&w[1], 1).is_lt()));
        for leaf in &leaves {
            prop_assert!(is_b_leaf(p, leaf));
            prop_assert!(leaf.entry_count() as u32 <= p.k - 1 + p.t);
        }
    }

    #[test]
    fn successors_and_descendants(p in tree_params(3, 5), pick in any::<prop::sample::Index>(), level in 1u32..=5) {
        let leaves = b_leaves(p, DEFAULT_LEAF_CAP).unwrap();
        let leaf = pick.get(&leaves);
        let level = level.min(p.h);
        let low = min_descendant(p, leaf, level);
        prop_assert!(is_b_leaf(p, &low));
        prop_assert!(low.compare_prefix(leaf, level).is_eq());
        prop_assert!(low.compare_prefix(leaf, 1).is_le());
        if let Some(next) = level_successor(p, leaf, level).unwrap() {
            prop_assert!(is_b_leaf(p, &next));
            prop_assert!(next.compare_prefix(leaf, level).is_gt());
        }
    }

    #[test]
    fn register_games(game in small_game(4, 4), k in 1u32..=2) {
        let reg = build_reg(&game, k, DEFAULT_STATE_CAP).unwrap();
        let def = build_def(&game, k, DEFAULT_STATE_CAP).unwrap();
        prop_assert_eq!(reg.game.num_vertices() as u64, state_count(game.num_vertices(), game.ceiling(), k));
        for id in reg.game.vertices() {
            let state = reg.state(id).unwrap();
            prop_assert!(state.registers.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(state.registers[0] <= game.ceiling());
            let rank = reg.game.priority(id);
            prop_assert!((1..=2 * k + 1).contains(&rank));
        }
        let reg_won = zielonka_solve(&reg.game).w_even;
        let def_won = zielonka_solve(&def.game).w_even;
        for id in reg.game.vertices() {
            let state = reg.state(id).unwrap();
            if def_won.contains(def.id(&state).unwrap()) {
                prop_assert!(reg_won.contains(id));
            }
        }
    }

    #[test]
    fn register_and_lehtinen_numbers(game in small_game(5, 4)) {
        let register = register_number(&game, 3, DEFAULT_STATE_CAP).unwrap();
        let lehtinen = lehtinen_number(&game, 3, DEFAULT_STATE_CAP).unwrap();
        prop_assert!(register.abs_diff(lehtinen) <= 1);
        prop_assert!(register <= 1 + bit_budget(game.num_vertices()));
    }
}
