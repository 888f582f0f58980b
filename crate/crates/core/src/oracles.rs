//! Exhaustive reference implementations for tiny games: solving by
//! positional-strategy enumeration, the exact Strahler number of a
//! dominion, and enumeration of small trees.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::game::{attractor_within, is_trap_within, ParityGame, Player, Vertex, VertexSet};
use crate::scc::strongly_connected_components;
use crate::trees::{small_trees, OrderedTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("{0} does not win every vertex of the game")]
    NotADominion(Player),
    #[error("bad budget specification: {0}")]
    BadBudget(String),
}

/// Size and time limits for the exponential oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_priorities: u32,
    pub max_leaves: usize,
    pub time_cap: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 10,
            max_priorities: 8,
            max_leaves: 8,
            time_cap: Duration::from_secs(60),
        }
    }
}

impl OracleBudget {
    /// The default limits of [`exact_strahler`]: six vertices, priorities
    /// up to 4.
    pub fn exact() -> Self {
        OracleBudget {
            max_vertices: 6,
            max_priorities: 4,
            ..OracleBudget::default()
        }
    }

    /// Applies overrides written as `key=value` pairs separated by commas
    /// or whitespace. Keys: `max_vertices`, `max_priorities`, `max_leaves`,
    /// `time_cap_ms`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, OracleError> {
        for pair in spec.split(|c: char| c == ',' || c.is_whitespace()) {
            if pair.is_empty() {
                continue;
            }
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| OracleError::BadBudget(format!("'{pair}' is not key=value")))?;
            let number: u64 = value
                .parse()
                .map_err(|_| OracleError::BadBudget(format!("'{value}' is not a number")))?;
            if number == 0 {
                return Err(OracleError::BadBudget(format!("{key} must be positive")));
            }
            match key {
                "max_vertices" => self.max_vertices = number as usize,
                "max_priorities" => self.max_priorities = number as u32,
                "max_leaves" => self.max_leaves = number as usize,
                "time_cap_ms" => self.time_cap = Duration::from_millis(number),
                _ => return Err(OracleError::BadBudget(format!("unknown key '{key}'"))),
            }
        }
        Ok(self)
    }

    fn check_game(&self, game: &ParityGame) -> Result<(), OracleError> {
        if game.num_vertices() > self.max_vertices {
            return Err(OracleError::BudgetExceeded(format!(
                "{} vertices, limit {}",
                game.num_vertices(),
                self.max_vertices
            )));
        }
        if game.max_priority() > self.max_priorities {
            return Err(OracleError::BudgetExceeded(format!(
                "priority {}, limit {}",
                game.max_priority(),
                self.max_priorities
            )));
        }
        Ok(())
    }
}

struct Clock {
    start: Instant,
    cap: Duration,
}

impl Clock {
    fn new(cap: Duration) -> Self {
        Clock {
            start: Instant::now(),
            cap,
        }
    }

    fn check(&self) -> Result<(), OracleError> {
        if self.start.elapsed() > self.cap {
            return Err(OracleError::BudgetExceeded(format!(
                "time cap of {:?}",
                self.cap
            )));
        }
        Ok(())
    }
}

/// Vertices from which Audrey can reach a cycle with odd top priority in
/// the graph `adjacency`.
fn odd_cycle_reach(game: &ParityGame, adjacency: &[Vec<Vertex>]) -> VertexSet {
    let n = game.num_vertices();
    let mut bad = VertexSet::empty(n);
    for p in (1..=game.max_priority()).step_by(2) {
        let low = VertexSet::from_vertices(n, game.vertices().filter(|&v| game.priority(v) <= p));
        for component in strongly_connected_components(adjacency, &low) {
            let cyclic = component.len() > 1 || adjacency[component[0]].contains(&component[0]);
            if cyclic && component.iter().any(|&v| game.priority(v) == p) {
                for v in component {
                    bad.insert(v);
                }
            }
        }
    }
    // Backward closure.
    let mut reverse: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for (v, succ) in adjacency.iter().enumerate() {
        for &u in succ {
            reverse[u].push(v);
        }
    }
    let mut stack = bad.to_vec();
    while let Some(u) = stack.pop() {
        for &v in &reverse[u] {
            if bad.insert(v) {
                stack.push(v);
            }
        }
    }
    bad
}

/// Winning regions by trying every Steven positional strategy.
pub fn brute_force_solve(
    game: &ParityGame,
    budget: &OracleBudget,
) -> Result<(VertexSet, VertexSet), OracleError> {
    if game.num_vertices() > budget.max_vertices {
        return Err(OracleError::BudgetExceeded(format!(
            "{} vertices, limit {}",
            game.num_vertices(),
            budget.max_vertices
        )));
    }
    let clock = Clock::new(budget.time_cap);
    let n = game.num_vertices();
    let steven: Vec<Vertex> = game
        .vertices()
        .filter(|&v| game.owner(v) == Player::Steven)
        .collect();
    let mut adjacency: Vec<Vec<Vertex>> = game
        .vertices()
        .map(|v| game.successors(v).to_vec())
        .collect();
    let mut choice = vec![0usize; steven.len()];
    let mut w_even = VertexSet::empty(n);
    loop {
        for (i, &v) in steven.iter().enumerate() {
            adjacency[v] = vec![game.successors(v)[choice[i]]];
        }
        let losing = odd_cycle_reach(game, &adjacency);
        w_even.union_with(&losing.complement());
        // Next strategy in mixed-radix order.
        let mut i = 0;
        loop {
            if i == steven.len() {
                let w_odd = w_even.complement();
                return Ok((w_even, w_odd));
            }
            choice[i] += 1;
            if choice[i] < game.successors(steven[i]).len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        clock.check()?;
    }
}

/// Summary of the Strahler numbers of a sequence of sibling subtrees:
/// the largest value and whether it occurs at least twice. Lexicographic
/// order on summaries is compatible with adding further siblings.
type Summary = (u32, bool);

fn add_child(summary: Summary, s: u32) -> Summary {
    match summary.0.cmp(&s) {
        std::cmp::Ordering::Less => (s, false),
        std::cmp::Ordering::Equal => (s, true),
        std::cmp::Ordering::Greater => summary,
    }
}

struct StrahlerSearch<'a> {
    game: &'a ParityGame,
    clock: Clock,
    best_memo: HashMap<(u64, u32), Option<u32>>,
    parts_memo: HashMap<(u64, u32), Option<Summary>>,
}

impl StrahlerSearch<'_> {
    fn set(&self, mask: u64) -> VertexSet {
        VertexSet::from_vertices(
            self.game.num_vertices(),
            (0..self.game.num_vertices()).filter(|&v| mask >> v & 1 == 1),
        )
    }

    fn mask(set: &VertexSet) -> u64 {
        set.iter().fold(0, |m, v| m | 1 << v)
    }

    /// Least Strahler number of a Steven `d`-attractor decomposition of
    /// the subgame `arena`, or `None` if there is none.
    fn best(&mut self, arena: u64, d: u32) -> Result<Option<u32>, OracleError> {
        if let Some(&hit) = self.best_memo.get(&(arena, d)) {
            return Ok(hit);
        }
        self.clock.check()?;
        let g = self.game;
        let set = self.set(arena);
        let top =
            VertexSet::from_vertices(g.num_vertices(), set.iter().filter(|&v| g.priority(v) == d));
        let (attracted, _) = attractor_within(g, &set, Player::Steven, &top);
        let residual = Self::mask(&set.difference(&attracted));
        let result = if residual == 0 {
            Some(1)
        } else if d < 2 {
            None
        } else {
            self.parts(residual, d)?.map(|(m, dup)| m + dup as u32)
        };
        self.best_memo.insert((arena, d), result);
        Ok(result)
    }

    /// Least summary over the part sequences `(S_1, H_1, A_1), …` that
    /// exhaust the non-empty residual game `residual`.
    fn parts(&mut self, residual: u64, d: u32) -> Result<Option<Summary>, OracleError> {
        if let Some(&hit) = self.parts_memo.get(&(residual, d)) {
            return Ok(hit);
        }
        let g = self.game;
        let n = g.num_vertices();
        let arena = self.set(residual);
        let allowed = Self::mask(&VertexSet::from_vertices(
            n,
            arena.iter().filter(|&v| g.priority(v) + 2 <= d),
        ));
        let mut best: Option<Summary> = None;
        // Non-empty submasks of the low-priority vertices.
        let mut s = allowed;
        while s != 0 {
            let candidate = self.set(s);
            if is_trap_within(g, &arena, Player::Audrey, &candidate) {
                if let Some(value) = self.best(s, d - 2)? {
                    let (attr, _) = attractor_within(g, &arena, Player::Steven, &candidate);
                    let rest = residual & !Self::mask(&attr);
                    let tail = if rest == 0 {
                        Some((0, false))
                    } else {
                        self.parts(rest, d)?
                    };
                    if let Some(tail) = tail {
                        let summary = add_child(tail, value);
                        if best.is_none_or(|b| summary < b) {
                            best = Some(summary);
                        }
                    }
                }
            }
            s = (s - 1) & allowed;
        }
        self.parts_memo.insert((residual, d), best);
        Ok(best)
    }
}

/// The least Strahler number over all `player` attractor decompositions
/// of a game that `player` wins everywhere.
pub fn exact_strahler(
    game: &ParityGame,
    player: Player,
    budget: &OracleBudget,
) -> Result<u32, OracleError> {
    budget.check_game(game)?;
    if game.num_vertices() > 63 {
        return Err(OracleError::BudgetExceeded("more than 63 vertices".into()));
    }
    let oriented = match player {
        Player::Steven => game.clone(),
        Player::Audrey => game.dual(),
    };
    let mut search = StrahlerSearch {
        game: &oriented,
        clock: Clock::new(budget.time_cap),
        best_memo: HashMap::new(),
        parts_memo: HashMap::new(),
    };
    let all = (1u64 << oriented.num_vertices()) - 1;
    search
        .best(all, oriented.ceiling())?
        .ok_or(OracleError::NotADominion(player))
}

/// Every ordered tree with at most `n` leaves and height at most `h`.
pub fn enumerate_trees(
    n: usize,
    h: usize,
    budget: &OracleBudget,
) -> Result<Vec<OrderedTree>, OracleError> {
    if n > budget.max_leaves {
        return Err(OracleError::BudgetExceeded(format!(
            "{n} leaves, limit {}",
            budget.max_leaves
        )));
    }
    Ok(small_trees(n, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Player::{Audrey, Steven};

    fn game(spec: &[(u32, Player, &[usize])]) -> ParityGame {
        ParityGame::new(
            spec.iter().map(|s| s.1).collect(),
            spec.iter().map(|s| s.0).collect(),
            spec.iter().map(|s| s.2.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn brute_force_self_loops() {
        let budget = OracleBudget::default();
        let (we, wo) = brute_force_solve(&game(&[(2, Steven, &[0])]), &budget).unwrap();
        assert_eq!((we.to_vec(), wo.to_vec()), (vec![0], vec![]));
        let (we, wo) = brute_force_solve(&game(&[(1, Steven, &[0])]), &budget).unwrap();
        assert_eq!((we.to_vec(), wo.to_vec()), (vec![], vec![0]));
    }

    #[test]
    fn brute_force_mixed() {
        let g = game(&[
            (0, Steven, &[1, 2]),
            (3, Audrey, &[1]),
            (4, Steven, &[2, 3]),
            (1, Audrey, &[3, 2]),
        ]);
        let (we, _) = brute_force_solve(&g, &OracleBudget::default()).unwrap();
        assert_eq!(we.to_vec(), vec![0, 2]);
    }

    #[test]
    fn exact_strahler_examples() {
        let budget = OracleBudget::exact();
        assert_eq!(
            exact_strahler(&game(&[(2, Steven, &[0])]), Steven, &budget),
            Ok(1)
        );
        // Two priority-0 loops that Audrey can only link through an odd
        // vertex where Steven escapes.
        let g = game(&[
            (0, Steven, &[0]),
            (1, Steven, &[0, 2]),
            (0, Audrey, &[2, 1]),
        ]);
        assert_eq!(exact_strahler(&g, Steven, &budget), Ok(2));
        assert_eq!(
            exact_strahler(&g, Audrey, &budget),
            Err(OracleError::NotADominion(Audrey))
        );
        assert!(matches!(
            exact_strahler(&game(&[(6, Steven, &[0])]), Steven, &budget),
            Err(OracleError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn budget_overrides() {
        let b = OracleBudget::default()
            .with_overrides("max_vertices=5, time_cap_ms=20")
            .unwrap();
        assert_eq!(b.max_vertices, 5);
        assert_eq!(b.time_cap, Duration::from_millis(20));
        assert!(OracleBudget::default().with_overrides("depth=3").is_err());
        assert!(OracleBudget::default()
            .with_overrides("max_leaves=0")
            .is_err());
    }

    #[test]
    fn tree_enumeration() {
        let budget = OracleBudget::default();
        let single = enumerate_trees(1, 3, &budget).unwrap();
        assert_eq!(single.len(), 3);
        assert!(single.iter().all(|t| t.leaves() == 1));
        let two = enumerate_trees(2, 2, &budget).unwrap();
        assert_eq!(two.len(), 3);
        assert!(enumerate_trees(20, 2, &budget).is_err());
    }
}
