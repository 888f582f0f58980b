//! McNaughton–Zielonka recursive solver and attractor decompositions.

use thiserror::Error;

use crate::game::{
    attractor_within, is_trap_within, ParityGame, Player, PositionalStrategy, VertexSet,
};
use crate::trees::OrderedTree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZielonkaError {
    #[error("{0} does not win every vertex of the game")]
    NotADominion(Player),
}

/// Winning regions and positional winning strategies of both players.
#[derive(Clone, Debug)]
pub struct Solution {
    pub w_even: VertexSet,
    pub sigma_even: PositionalStrategy,
    pub w_odd: VertexSet,
    pub sigma_odd: PositionalStrategy,
}

impl Solution {
    pub fn region(&self, player: Player) -> &VertexSet {
        match player {
            Player::Steven => &self.w_even,
            Player::Audrey => &self.w_odd,
        }
    }

    pub fn strategy(&self, player: Player) -> &PositionalStrategy {
        match player {
            Player::Steven => &self.sigma_even,
            Player::Audrey => &self.sigma_odd,
        }
    }

    /// The winner of every vertex.
    pub fn winners(&self) -> Vec<Player> {
        (0..self.w_even.universe())
            .map(|v| {
                if self.w_even.contains(v) {
                    Player::Steven
                } else {
                    Player::Audrey
                }
            })
            .collect()
    }
}

/// Solves `game` with the recursive algorithm.
pub fn zielonka_solve(game: &ParityGame) -> Solution {
    let ([w_even, w_odd], [sigma_even, sigma_odd]) = solve_within(game, &game.all_vertices());
    Solution {
        w_even,
        sigma_even,
        w_odd,
        sigma_odd,
    }
}

type Regions = [VertexSet; 2];
type Strategies = [PositionalStrategy; 2];

fn index(player: Player) -> usize {
    player.parity() as usize
}

/// Solves the subgame induced by `arena` (which must be a subgame).
pub(crate) fn solve_within(game: &ParityGame, arena: &VertexSet) -> (Regions, Strategies) {
    let n = game.num_vertices();
    let mut regions = [VertexSet::empty(n), VertexSet::empty(n)];
    let mut strategies = [
        PositionalStrategy::new(Player::Steven, n),
        PositionalStrategy::new(Player::Audrey, n),
    ];
    let Some(top) = arena.iter().map(|v| game.priority(v)).max() else {
        return (regions, strategies);
    };
    let alpha = Player::of_priority(top);
    let beta = alpha.opponent();
    let targets = VertexSet::from_vertices(n, arena.iter().filter(|&v| game.priority(v) == top));
    let (attracted, attractor_strategy) = attractor_within(game, arena, alpha, &targets);
    let rest = arena.difference(&attracted);
    let (sub_regions, sub_strategies) = solve_within(game, &rest);

    if sub_regions[index(beta)].is_empty() {
        let mut sigma = sub_strategies[index(alpha)].clone();
        sigma.absorb(&attractor_strategy);
        for v in targets.iter().filter(|&v| game.owner(v) == alpha) {
            let stay = game
                .successors(v)
                .iter()
                .copied()
                .find(|&u| arena.contains(u))
                .expect("arena is a subgame");
            sigma.set(v, stay);
        }
        regions[index(alpha)] = arena.clone();
        strategies[index(alpha)] = sigma;
        return (regions, strategies);
    }

    let (beta_attracted, beta_strategy) =
        attractor_within(game, arena, beta, &sub_regions[index(beta)]);
    let remainder = arena.difference(&beta_attracted);
    let (rem_regions, rem_strategies) = solve_within(game, &remainder);

    let mut sigma_beta = rem_strategies[index(beta)].clone();
    sigma_beta.absorb(&sub_strategies[index(beta)]);
    sigma_beta.absorb(&beta_strategy);
    regions[index(beta)] = rem_regions[index(beta)].union(&beta_attracted);
    strategies[index(beta)] = sigma_beta;
    regions[index(alpha)] = rem_regions[index(alpha)].clone();
    strategies[index(alpha)] = rem_strategies[index(alpha)].clone();
    (regions, strategies)
}

/// One layer `(S_i, H_i, A_i)` of an attractor decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionPart {
    pub s: VertexSet,
    pub sub: AttractorDecomposition,
    pub attr: VertexSet,
}

/// A `degree`-attractor decomposition `⟨A, (S_1, H_1, A_1), …⟩`.
///
/// For Audrey the sets are vertex sets of the original game while
/// `degree` refers to the dual game (owners swapped, priorities + 1), so
/// it is always even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttractorDecomposition {
    pub top_attractor: VertexSet,
    pub parts: Vec<DecompositionPart>,
    pub degree: u32,
}

fn oriented(game: &ParityGame, player: Player) -> std::borrow::Cow<'_, ParityGame> {
    match player {
        Player::Steven => std::borrow::Cow::Borrowed(game),
        Player::Audrey => std::borrow::Cow::Owned(game.dual()),
    }
}

/// A decomposition for `player` of a game that `player` wins everywhere,
/// read off the layers of the recursive solver.
pub fn extract_decomposition(
    game: &ParityGame,
    player: Player,
) -> Result<AttractorDecomposition, ZielonkaError> {
    let g = oriented(game, player);
    decompose(&g, &g.all_vertices(), g.ceiling()).ok_or(ZielonkaError::NotADominion(player))
}

fn decompose(game: &ParityGame, arena: &VertexSet, degree: u32) -> Option<AttractorDecomposition> {
    let n = game.num_vertices();
    let top = VertexSet::from_vertices(n, arena.iter().filter(|&v| game.priority(v) == degree));
    let (top_attractor, _) = attractor_within(game, arena, Player::Steven, &top);
    let mut residual = arena.difference(&top_attractor);
    let mut parts = Vec::new();
    while !residual.is_empty() {
        if degree == 0 {
            return None;
        }
        let odd = VertexSet::from_vertices(
            n,
            residual.iter().filter(|&v| game.priority(v) == degree - 1),
        );
        let (odd_attractor, _) = attractor_within(game, &residual, Player::Audrey, &odd);
        let rest = residual.difference(&odd_attractor);
        let (regions, _) = solve_within(game, &rest);
        let s = regions[index(Player::Steven)].clone();
        if s.is_empty() {
            return None;
        }
        let sub = decompose(game, &s, degree - 2)?;
        let (attr, _) = attractor_within(game, &residual, Player::Steven, &s);
        residual.difference_with(&attr);
        parts.push(DecompositionPart { s, sub, attr });
    }
    Some(AttractorDecomposition {
        top_attractor,
        parts,
        degree,
    })
}

/// Checks every clause of the inductive definition of a decomposition of
/// the whole game for `player`.
pub fn validate_decomposition(
    game: &ParityGame,
    h: &AttractorDecomposition,
    player: Player,
) -> bool {
    let g = oriented(game, player);
    check(&g, &g.all_vertices(), h)
}

fn check(game: &ParityGame, arena: &VertexSet, h: &AttractorDecomposition) -> bool {
    let n = game.num_vertices();
    let d = h.degree;
    if d % 2 != 0 || arena.iter().any(|v| game.priority(v) > d) {
        return false;
    }
    if d == 0 && !h.parts.is_empty() {
        return false;
    }
    let top = VertexSet::from_vertices(n, arena.iter().filter(|&v| game.priority(v) == d));
    let (top_attractor, _) = attractor_within(game, arena, Player::Steven, &top);
    if top_attractor != h.top_attractor {
        return false;
    }
    let mut residual = arena.difference(&top_attractor);
    for part in &h.parts {
        let s = &part.s;
        if s.is_empty()
            || !s.is_subset(&residual)
            || !is_trap_within(game, &residual, Player::Audrey, s)
            || s.iter().any(|v| game.priority(v) + 2 > d)
            || part.sub.degree + 2 != d
            || !check(game, s, &part.sub)
        {
            return false;
        }
        let (attr, _) = attractor_within(game, &residual, Player::Steven, s);
        if attr != part.attr {
            return false;
        }
        residual.difference_with(&attr);
    }
    residual.is_empty()
}

/// The tree of a decomposition: `⟨⟩` without parts, otherwise the
/// sequence of the parts' trees.
pub fn decomposition_tree(h: &AttractorDecomposition) -> OrderedTree {
    if h.parts.is_empty() {
        return OrderedTree::leaf();
    }
    OrderedTree::node(h.parts.iter().map(|p| decomposition_tree(&p.sub)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::validate_dominion_strategy;
    use Player::{Audrey, Steven};

    fn game(spec: &[(u32, Player, &[usize])]) -> ParityGame {
        ParityGame::new(
            spec.iter().map(|s| s.1).collect(),
            spec.iter().map(|s| s.0).collect(),
            spec.iter().map(|s| s.2.to_vec()).collect(),
        )
        .unwrap()
    }

    fn assert_sound(g: &ParityGame, sol: &Solution) {
        assert!(sol.w_even.is_disjoint(&sol.w_odd));
        assert_eq!(sol.w_even.union(&sol.w_odd), g.all_vertices());
        for player in [Steven, Audrey] {
            if !sol.region(player).is_empty() {
                assert!(validate_dominion_strategy(
                    g,
                    sol.region(player),
                    sol.strategy(player)
                ));
            }
        }
    }

    #[test]
    fn self_loops() {
        let even = game(&[(2, Steven, &[0])]);
        let sol = zielonka_solve(&even);
        assert_eq!(sol.w_even.to_vec(), vec![0]);
        assert_sound(&even, &sol);
        let odd = game(&[(1, Steven, &[0])]);
        let sol = zielonka_solve(&odd);
        assert_eq!(sol.w_odd.to_vec(), vec![0]);
        assert_sound(&odd, &sol);
    }

    #[test]
    fn mixed_game() {
        // Steven at 0 chooses between an odd loop and an even loop.
        let g = game(&[
            (0, Steven, &[1, 2]),
            (3, Audrey, &[1]),
            (4, Steven, &[2, 3]),
            (1, Audrey, &[3, 2]),
        ]);
        let sol = zielonka_solve(&g);
        assert_sound(&g, &sol);
        assert_eq!(sol.w_even.to_vec(), vec![0, 2]);
        assert_eq!(sol.w_odd.to_vec(), vec![1, 3]);
    }

    #[test]
    fn self_loop_decomposition() {
        let g = game(&[(2, Steven, &[0])]);
        let h = extract_decomposition(&g, Steven).unwrap();
        assert_eq!(h.top_attractor.to_vec(), vec![0]);
        assert!(h.parts.is_empty());
        assert!(validate_decomposition(&g, &h, Steven));
        assert_eq!(decomposition_tree(&h), OrderedTree::leaf());
        assert_eq!(
            extract_decomposition(&g, Audrey),
            Err(ZielonkaError::NotADominion(Audrey))
        );
    }

    fn two_part_game() -> ParityGame {
        // Audrey can only leave the loop at 2 through 1, where Steven
        // escapes to the loop at 0.
        game(&[
            (0, Steven, &[0]),
            (1, Steven, &[0, 2]),
            (0, Audrey, &[2, 1]),
        ])
    }

    #[test]
    fn two_parts_give_strahler_two() {
        let g = two_part_game();
        let h = extract_decomposition(&g, Steven).unwrap();
        assert!(validate_decomposition(&g, &h, Steven));
        let tree = decomposition_tree(&h);
        assert_eq!(tree, OrderedTree::repeated(&OrderedTree::leaf(), 2));
        assert_eq!(tree.strahler(), 2);
    }

    #[test]
    fn broken_decompositions_are_rejected() {
        let g = two_part_game();
        let h = extract_decomposition(&g, Steven).unwrap();

        let mut unfinished = h.clone();
        unfinished.parts.pop();
        assert!(!validate_decomposition(&g, &unfinished, Steven));

        // A part holding the odd vertex exceeds the d - 2 ceiling.
        let mut high = h.clone();
        high.parts[0].s.insert(1);
        assert!(!validate_decomposition(&g, &high, Steven));
    }

    #[test]
    fn audrey_decomposition_via_dual() {
        let g = game(&[(1, Audrey, &[0]), (3, Steven, &[0, 1])]);
        let h = extract_decomposition(&g, Audrey).unwrap();
        assert!(validate_decomposition(&g, &h, Audrey));
        assert!(!validate_decomposition(&g, &h, Steven));
    }
}
