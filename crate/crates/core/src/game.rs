//! Parity game data model and the basic game-theoretic primitives.
//!
//! Games use max-parity semantics: a cycle is won by Steven (Even) when
//! the largest priority on it is even, and by Audrey (Odd) otherwise.

use std::fmt;

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scc::strongly_connected_components;

/// Dense vertex identifier in `0..n`.
pub type Vertex = usize;

/// The two players. Steven plays Even, Audrey plays Odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    Steven,
    Audrey,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Steven => Player::Audrey,
            Player::Audrey => Player::Steven,
        }
    }

    /// 0 for Steven, 1 for Audrey.
    pub fn parity(self) -> u32 {
        match self {
            Player::Steven => 0,
            Player::Audrey => 1,
        }
    }

    /// The player who wins a cycle whose largest priority is `priority`.
    pub fn of_priority(priority: u32) -> Player {
        if priority % 2 == 0 {
            Player::Steven
        } else {
            Player::Audrey
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Steven => write!(f, "Even"),
            Player::Audrey => write!(f, "Odd"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("a parity game needs at least one vertex")]
    Empty,
    #[error("vertex {0} has no outgoing edge")]
    NoSuccessor(Vertex),
    #[error("edge ({from}, {to}) leaves the vertex range")]
    DanglingEdge { from: Vertex, to: Vertex },
    #[error("owner, priority and successor tables disagree on the number of vertices")]
    LengthMismatch,
    #[error("vertex {0} has no outgoing edge inside the requested subgame")]
    NotASubgame(Vertex),
    #[error("the vertex set is empty")]
    EmptySet,
}

/// A set of vertices of a fixed game, backed by a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: BitVec,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            bits: bitvec![0; n],
        }
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            bits: bitvec![1; n],
        }
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut set = Self::empty(n);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    /// Size of the underlying universe (the number of vertices of the game).
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.get(v).map(|b| *b).unwrap_or(false)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        let was = self.bits[v];
        self.bits.set(v, true);
        !was
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        let was = self.bits[v];
        self.bits.set(v, false);
        was
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.not_any()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.iter_ones()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits |= &other.bits;
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits &= &other.bits;
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for v in other.iter() {
            self.bits.set(v, false);
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet {
            bits: !self.bits.clone(),
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite parity game. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    priority: Vec<u32>,
    successors: Vec<Vec<Vertex>>,
    predecessors: Vec<Vec<Vertex>>,
}

impl ParityGame {
    /// Builds a game from per-vertex owners, priorities and successor lists.
    ///
    /// Successor lists are deduplicated and sorted.
    pub fn new(
        owner: Vec<Player>,
        priority: Vec<u32>,
        successors: Vec<Vec<Vertex>>,
    ) -> Result<Self, GameError> {
        let n = owner.len();
        if n == 0 {
            return Err(GameError::Empty);
        }
        if priority.len() != n || successors.len() != n {
            return Err(GameError::LengthMismatch);
        }
        let mut successors = successors;
        let mut predecessors = vec![Vec::new(); n];
        for (v, succ) in successors.iter_mut().enumerate() {
            succ.sort_unstable();
            succ.dedup();
            if succ.is_empty() {
                return Err(GameError::NoSuccessor(v));
            }
            for &u in succ.iter() {
                if u >= n {
                    return Err(GameError::DanglingEdge { from: v, to: u });
                }
                predecessors[u].push(v);
            }
        }
        Ok(ParityGame {
            owner,
            priority,
            successors,
            predecessors,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.owner.len()
    }

    pub fn num_edges(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.num_vertices()
    }

    pub fn owner(&self, v: Vertex) -> Player {
        self.owner[v]
    }

    pub fn priority(&self, v: Vertex) -> u32 {
        self.priority[v]
    }

    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        &self.successors[v]
    }

    pub fn predecessors(&self, v: Vertex) -> &[Vertex] {
        &self.predecessors[v]
    }

    pub fn has_edge(&self, from: Vertex, to: Vertex) -> bool {
        self.successors
            .get(from)
            .is_some_and(|succ| succ.binary_search(&to).is_ok())
    }

    pub fn max_priority(&self) -> u32 {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    /// The least even number bounding every priority (the `d` of the game).
    pub fn ceiling(&self) -> u32 {
        let max = self.max_priority();
        max + max % 2
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.num_vertices())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.num_vertices())
    }

    /// Vertices whose priority is exactly `p`.
    pub fn vertices_with_priority(&self, p: u32) -> VertexSet {
        VertexSet::from_vertices(
            self.num_vertices(),
            self.vertices().filter(|&v| self.priority[v] == p),
        )
    }

    /// Swaps the owners and shifts every priority up by one, so that
    /// Audrey's objective in `self` becomes Steven's objective in the dual.
    pub fn dual(&self) -> ParityGame {
        ParityGame {
            owner: self.owner.iter().map(|p| p.opponent()).collect(),
            priority: self.priority.iter().map(|p| p + 1).collect(),
            successors: self.successors.clone(),
            predecessors: self.predecessors.clone(),
        }
    }

    /// The substructure induced by `s`, provided every vertex of `s` keeps
    /// an outgoing edge inside `s`.
    pub fn subgame(&self, s: &VertexSet) -> Result<SubGame, GameError> {
        if s.is_empty() {
            return Err(GameError::EmptySet);
        }
        let origin: Vec<Vertex> = s.iter().collect();
        let mut local = vec![usize::MAX; self.num_vertices()];
        for (i, &v) in origin.iter().enumerate() {
            local[v] = i;
        }
        let mut owner = Vec::with_capacity(origin.len());
        let mut priority = Vec::with_capacity(origin.len());
        let mut successors = Vec::with_capacity(origin.len());
        for &v in &origin {
            let succ: Vec<Vertex> = self.successors[v]
                .iter()
                .filter(|&&u| s.contains(u))
                .map(|&u| local[u])
                .collect();
            if succ.is_empty() {
                return Err(GameError::NotASubgame(v));
            }
            owner.push(self.owner[v]);
            priority.push(self.priority[v]);
            successors.push(succ);
        }
        let game = ParityGame::new(owner, priority, successors)?;
        Ok(SubGame { game, origin })
    }
}

/// A game induced on a subset of another game's vertices, together with
/// the map back to the parent's vertex ids.
#[derive(Clone, Debug)]
pub struct SubGame {
    pub game: ParityGame,
    pub origin: Vec<Vertex>,
}

impl SubGame {
    /// Maps a set of local vertices to the parent game.
    pub fn lift_set(&self, local: &VertexSet, parent_size: usize) -> VertexSet {
        VertexSet::from_vertices(parent_size, local.iter().map(|v| self.origin[v]))
    }

    /// Maps a local strategy to the parent game.
    pub fn lift_strategy(
        &self,
        local: &PositionalStrategy,
        parent_size: usize,
    ) -> PositionalStrategy {
        let mut out = PositionalStrategy::new(local.player(), parent_size);
        for (v, u) in local.choices() {
            out.set(self.origin[v], self.origin[u]);
        }
        out
    }
}

/// A positional strategy: one chosen successor per vertex of its domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionalStrategy {
    player: Player,
    choice: Vec<Option<Vertex>>,
}

impl PositionalStrategy {
    pub fn new(player: Player, n: usize) -> Self {
        PositionalStrategy {
            player,
            choice: vec![None; n],
        }
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn get(&self, v: Vertex) -> Option<Vertex> {
        self.choice.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, u: Vertex) {
        self.choice[v] = Some(u);
    }

    pub fn clear(&mut self, v: Vertex) {
        self.choice[v] = None;
    }

    /// Iterates over `(vertex, chosen successor)` pairs.
    pub fn choices(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.choice
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|u| (v, u)))
    }

    /// Copies every choice of `other` into `self`, overriding existing ones.
    pub fn absorb(&mut self, other: &PositionalStrategy) {
        debug_assert_eq!(self.player, other.player);
        for (v, u) in other.choices() {
            self.choice[v] = Some(u);
        }
    }

    /// Keeps only the choices of vertices in `domain`.
    pub fn restrict(&mut self, domain: &VertexSet) {
        for (v, c) in self.choice.iter_mut().enumerate() {
            if !domain.contains(v) {
                *c = None;
            }
        }
    }
}

/// The `player` attractor to `targets`, with a reachability strategy on
/// the attracted vertices outside `targets`.
pub fn attractor(
    game: &ParityGame,
    player: Player,
    targets: &VertexSet,
) -> (VertexSet, PositionalStrategy) {
    attractor_within(game, &game.all_vertices(), player, targets)
}

/// Attractor computed inside the subgame induced by `arena`.
///
/// `targets` is intersected with `arena`. Vertices outside `arena` are
/// treated as absent, so `arena` should induce a subgame.
pub fn attractor_within(
    game: &ParityGame,
    arena: &VertexSet,
    player: Player,
    targets: &VertexSet,
) -> (VertexSet, PositionalStrategy) {
    let n = game.num_vertices();
    let mut attracted = targets.intersection(arena);
    let mut strategy = PositionalStrategy::new(player, n);
    // Remaining escape count for opponent vertices.
    let mut escapes: Vec<usize> = vec![0; n];
    for v in arena.iter() {
        if game.owner(v) != player {
            escapes[v] = game
                .successors(v)
                .iter()
                .filter(|&&u| arena.contains(u))
                .count();
        }
    }

    let mut queue: Vec<Vertex> = attracted.iter().collect();
    while let Some(u) = queue.pop() {
        for &v in game.predecessors(u) {
            if !arena.contains(v) || attracted.contains(v) {
                continue;
            }
            if game.owner(v) == player {
                attracted.insert(v);
                strategy.set(v, u);
                queue.push(v);
            } else {
                escapes[v] -= 1;
                if escapes[v] == 0 {
                    attracted.insert(v);
                    queue.push(v);
                }
            }
        }
    }
    (attracted, strategy)
}

/// Whether `r` is a trap for `trapped`: that player cannot leave `r` and
/// the other player can always stay in it.
pub fn is_trap(game: &ParityGame, trapped: Player, r: &VertexSet) -> bool {
    is_trap_within(game, &game.all_vertices(), trapped, r)
}

/// Trap test inside the subgame induced by `arena`.
pub fn is_trap_within(
    game: &ParityGame,
    arena: &VertexSet,
    trapped: Player,
    r: &VertexSet,
) -> bool {
    r.iter().all(|v| {
        if !arena.contains(v) {
            return false;
        }
        let mut succ = game.successors(v).iter().filter(|&&u| arena.contains(u));
        if game.owner(v) == trapped {
            succ.all(|&u| r.contains(u))
        } else {
            succ.any(|&u| r.contains(u))
        }
    })
}

/// Whether `sigma` is a dominion strategy for its player on `d_set`: it
/// traps the opponent in `d_set` and every cycle it allows there is won
/// by its player.
pub fn validate_dominion_strategy(
    game: &ParityGame,
    d_set: &VertexSet,
    sigma: &PositionalStrategy,
) -> bool {
    let player = sigma.player();
    let n = game.num_vertices();
    let mut adjacency: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in d_set.iter() {
        if game.owner(v) == player {
            match sigma.get(v) {
                Some(u) if game.has_edge(v, u) && d_set.contains(u) => adjacency[v].push(u),
                _ => return false,
            }
        } else {
            for &u in game.successors(v) {
                if !d_set.contains(u) {
                    return false;
                }
                adjacency[v].push(u);
            }
        }
    }
    cycles_favour(game, &adjacency, d_set, player)
}

/// Every cycle of `adjacency` inside `mask` has a top priority of
/// `player`'s parity. Recursively strips the top priority of each
/// non-trivial strongly connected component.
fn cycles_favour(
    game: &ParityGame,
    adjacency: &[Vec<Vertex>],
    mask: &VertexSet,
    player: Player,
) -> bool {
    for component in strongly_connected_components(adjacency, mask) {
        let nontrivial = component.len() > 1 || adjacency[component[0]].contains(&component[0]);
        if !nontrivial {
            continue;
        }
        let top = component.iter().map(|&v| game.priority(v)).max().unwrap();
        if Player::of_priority(top) != player {
            return false;
        }
        let rest = VertexSet::from_vertices(
            mask.universe(),
            component
                .iter()
                .copied()
                .filter(|&v| game.priority(v) != top),
        );
        if !rest.is_empty() && !cycles_favour(game, adjacency, &rest, player) {
            return false;
        }
    }
    true
}
