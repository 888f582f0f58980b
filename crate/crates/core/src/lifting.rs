//! Progress-measure lifting over navigable ordered trees and the solver
//! that runs it on succinct Strahler-universal trees of growing Strahler
//! number.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::game::{
    attractor, attractor_within, ParityGame, Player, PositionalStrategy, Vertex, VertexSet,
};
use crate::trees::OrderedTree;
use crate::universal::{self, SuccinctLeaf, TreeError, TreeParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftingError {
    #[error("tree of height {tree} is too short for a game with even ceiling {ceiling}")]
    TreeTooShort { tree: u32, ceiling: u32 },
    #[error("materialized trees must have all leaves at the same depth")]
    NonUniformDepth,
    #[error("vertices remain undecided after k = {k_max}")]
    KMaxExceeded { k_max: u32 },
    #[error("Steven does not win every vertex")]
    NotFullyWon,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Leaf navigation in an ordered tree whose leaves all sit at depth
/// `height - 1`. Components of a leaf are indexed `height - 1` (just
/// below the root) down to `1`; level `l` refers to the prefix of
/// components `>= l`.
pub trait TreeNavigator {
    type Leaf: Clone + Ord + fmt::Debug;

    fn height(&self) -> u32;

    fn min_leaf(&self) -> Self::Leaf;

    /// Least leaf whose level-`level` prefix is strictly greater.
    fn level_successor(&self, leaf: &Self::Leaf, level: u32) -> Option<Self::Leaf>;

    /// Least leaf with the same level-`level` prefix.
    fn min_descendant(&self, leaf: &Self::Leaf, level: u32) -> Self::Leaf;

    fn compare_prefix(&self, a: &Self::Leaf, b: &Self::Leaf, level: u32) -> Ordering;

    fn render(&self, leaf: &Self::Leaf) -> String;
}

/// Navigation of `B(t, h, k)` on sparse leaf tuples.
#[derive(Clone, Copy, Debug)]
pub struct SuccinctNavigator {
    params: TreeParams,
}

impl SuccinctNavigator {
    pub fn new(params: TreeParams) -> Self {
        SuccinctNavigator { params }
    }

    pub fn params(&self) -> TreeParams {
        self.params
    }
}

impl TreeNavigator for SuccinctNavigator {
    type Leaf = SuccinctLeaf;

    fn height(&self) -> u32 {
        self.params.h
    }

    fn min_leaf(&self) -> SuccinctLeaf {
        universal::min_leaf(self.params).expect("parameters checked on construction")
    }

    fn level_successor(&self, leaf: &SuccinctLeaf, level: u32) -> Option<SuccinctLeaf> {
        universal::level_successor_unchecked(self.params, leaf, level)
    }

    fn min_descendant(&self, leaf: &SuccinctLeaf, level: u32) -> SuccinctLeaf {
        universal::min_descendant(self.params, leaf, level)
    }

    fn compare_prefix(&self, a: &SuccinctLeaf, b: &SuccinctLeaf, level: u32) -> Ordering {
        a.compare_prefix(b, level)
    }

    fn render(&self, leaf: &SuccinctLeaf) -> String {
        leaf.to_string()
    }
}

/// Navigation of an explicit tree. Leaves are indices into the sorted
/// list of natural-label paths.
#[derive(Clone, Debug)]
pub struct MaterializedNavigator {
    paths: Vec<Vec<usize>>,
    height: u32,
}

impl MaterializedNavigator {
    pub fn new(tree: &OrderedTree) -> Result<Self, LiftingError> {
        let mut paths = tree.leaf_paths();
        let depth = paths[0].len();
        if paths.iter().any(|p| p.len() != depth) {
            return Err(LiftingError::NonUniformDepth);
        }
        paths.sort();
        Ok(MaterializedNavigator {
            paths,
            height: depth as u32 + 1,
        })
    }

    pub fn leaf_count(&self) -> usize {
        self.paths.len()
    }

    fn prefix(&self, leaf: usize, level: u32) -> &[usize] {
        let keep = (self.height as usize).saturating_sub(level.max(1) as usize);
        &self.paths[leaf][..keep]
    }
}

impl TreeNavigator for MaterializedNavigator {
    type Leaf = usize;

    fn height(&self) -> u32 {
        self.height
    }

    fn min_leaf(&self) -> usize {
        0
    }

    fn level_successor(&self, leaf: &usize, level: u32) -> Option<usize> {
        if level == 0 || level >= self.height {
            return None;
        }
        let prefix = self.prefix(*leaf, level);
        let len = prefix.len();
        let next = self.paths.partition_point(|p| &p[..len] <= prefix);
        (next < self.paths.len()).then_some(next)
    }

    fn min_descendant(&self, leaf: &usize, level: u32) -> usize {
        let prefix = self.prefix(*leaf, level);
        let len = prefix.len();
        self.paths.partition_point(|p| &p[..len] < prefix)
    }

    fn compare_prefix(&self, a: &usize, b: &usize, level: u32) -> Ordering {
        self.prefix(*a, level).cmp(self.prefix(*b, level))
    }

    fn render(&self, leaf: &usize) -> String {
        let parts: Vec<String> = self.paths[*leaf].iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

/// A leaf or the extra top element `⊤`, which is above every leaf.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MeasureValue<L> {
    Leaf(L),
    Top,
}

impl<L> MeasureValue<L> {
    pub fn is_top(&self) -> bool {
        matches!(self, MeasureValue::Top)
    }
}

/// The level whose prefix is the `p`-truncation of a tuple
/// `⟨m_{d-1}, m_{d-3}, …, m_1⟩` stored with `m_q` at component `(q+1)/2`.
pub fn truncation_level(p: u32) -> u32 {
    p / 2 + 1
}

/// Compares the `p`-truncations of `a` and `b`.
pub fn truncation_compare<N: TreeNavigator>(
    nav: &N,
    a: &MeasureValue<N::Leaf>,
    b: &MeasureValue<N::Leaf>,
    p: u32,
) -> Ordering {
    match (a, b) {
        (MeasureValue::Top, MeasureValue::Top) => Ordering::Equal,
        (MeasureValue::Top, _) => Ordering::Greater,
        (_, MeasureValue::Top) => Ordering::Less,
        (MeasureValue::Leaf(x), MeasureValue::Leaf(y)) => {
            nav.compare_prefix(x, y, truncation_level(p))
        }
    }
}

/// An assignment of measure values to vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressMeasure<L> {
    values: Vec<MeasureValue<L>>,
}

impl<L: Clone + Ord + fmt::Debug> ProgressMeasure<L> {
    /// Every vertex at `value`.
    pub fn constant(n: usize, value: MeasureValue<L>) -> Self {
        ProgressMeasure {
            values: vec![value; n],
        }
    }

    pub fn from_values(values: Vec<MeasureValue<L>>) -> Self {
        ProgressMeasure { values }
    }

    pub fn get(&self, v: Vertex) -> &MeasureValue<L> {
        &self.values[v]
    }

    pub fn set(&mut self, v: Vertex, value: MeasureValue<L>) {
        self.values[v] = value;
    }

    pub fn values(&self) -> &[MeasureValue<L>] {
        &self.values
    }

    /// Vertices not at `⊤`.
    pub fn support(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.values.len(),
            self.values
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.is_top())
                .map(|(v, _)| v),
        )
    }

    /// One `<vertex> <tuple>` line per vertex, `T` for `⊤`.
    pub fn dump<N: TreeNavigator<Leaf = L>>(&self, nav: &N) -> String {
        let mut out = String::new();
        for (v, m) in self.values.iter().enumerate() {
            let text = match m {
                MeasureValue::Leaf(l) => nav.render(l),
                MeasureValue::Top => "T".to_string(),
            };
            out.push_str(&format!("{v} {text}\n"));
        }
        out
    }
}

/// Whether the edge `(v, u)` is progressive under `mu`.
pub fn is_progressive<N: TreeNavigator>(
    game: &ParityGame,
    nav: &N,
    mu: &ProgressMeasure<N::Leaf>,
    v: Vertex,
    u: Vertex,
) -> bool {
    let p = game.priority(v);
    let mv = mu.get(v);
    if mv.is_top() {
        return true;
    }
    let ord = truncation_compare(nav, mv, mu.get(u), p);
    if p % 2 == 0 {
        ord != Ordering::Less
    } else {
        ord == Ordering::Greater
    }
}

/// The least value whose `π(v)`-truncation makes `(v, u)` progressive.
fn edge_requirement<N: TreeNavigator>(
    nav: &N,
    p: u32,
    target: &MeasureValue<N::Leaf>,
) -> MeasureValue<N::Leaf> {
    let MeasureValue::Leaf(leaf) = target else {
        return MeasureValue::Top;
    };
    let level = truncation_level(p);
    if p % 2 == 0 {
        MeasureValue::Leaf(nav.min_descendant(leaf, level))
    } else {
        match nav.level_successor(leaf, level) {
            Some(next) => MeasureValue::Leaf(next),
            None => MeasureValue::Top,
        }
    }
}

fn best_requirement<N: TreeNavigator>(
    game: &ParityGame,
    nav: &N,
    mu: &ProgressMeasure<N::Leaf>,
    v: Vertex,
) -> (MeasureValue<N::Leaf>, Vertex) {
    let p = game.priority(v);
    let steven = game.owner(v) == Player::Steven;
    let mut best: Option<(MeasureValue<N::Leaf>, Vertex)> = None;
    for &u in game.successors(v) {
        let need = edge_requirement(nav, p, mu.get(u));
        let better = match &best {
            None => true,
            Some((b, _)) => {
                if steven {
                    need < *b
                } else {
                    need > *b
                }
            }
        };
        if better {
            // Nothing exceeds ⊤, so Audrey can stop here.
            let stop = !steven && need.is_top();
            best = Some((need, u));
            if stop {
                break;
            }
        }
    }
    best.expect("every vertex has a successor")
}

/// Whether `v` is locally progressive: some edge for Steven, every edge
/// for Audrey.
fn locally_progressive<N: TreeNavigator>(
    game: &ParityGame,
    nav: &N,
    mu: &ProgressMeasure<N::Leaf>,
    v: Vertex,
) -> bool {
    let mut edges = game.successors(v).iter();
    match game.owner(v) {
        Player::Steven => edges.any(|&u| is_progressive(game, nav, mu, v, u)),
        Player::Audrey => edges.all(|&u| is_progressive(game, nav, mu, v, u)),
    }
}

/// The least value `>= mu(v)` that makes `v` locally progressive, or `⊤`.
pub fn lift<N: TreeNavigator>(
    game: &ParityGame,
    nav: &N,
    mu: &ProgressMeasure<N::Leaf>,
    v: Vertex,
) -> MeasureValue<N::Leaf> {
    let current = mu.get(v);
    if current.is_top() || locally_progressive(game, nav, mu, v) {
        return current.clone();
    }
    let (need, _) = best_requirement(game, nav, mu, v);
    debug_assert!(need > *current);
    need
}

/// Order in which vertices waiting for a lift are processed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WorkList {
    /// Highest priority first.
    #[default]
    Priority,
    /// First in, first out.
    Fifo,
}

enum Queue {
    Heap(BinaryHeap<(u32, std::cmp::Reverse<Vertex>)>),
    Fifo(VecDeque<Vertex>),
}

impl Queue {
    fn push(&mut self, game: &ParityGame, v: Vertex) {
        match self {
            Queue::Heap(h) => h.push((game.priority(v), std::cmp::Reverse(v))),
            Queue::Fifo(q) => q.push_back(v),
        }
    }

    fn pop(&mut self) -> Option<Vertex> {
        match self {
            Queue::Heap(h) => h.pop().map(|(_, std::cmp::Reverse(v))| v),
            Queue::Fifo(q) => q.pop_front(),
        }
    }
}

/// Result of a lifting run.
#[derive(Clone, Debug)]
pub struct LiftOutcome<L> {
    pub dominion: VertexSet,
    pub strategy: PositionalStrategy,
    pub measure: ProgressMeasure<L>,
    pub lifts: u64,
}

fn check_height<N: TreeNavigator>(game: &ParityGame, nav: &N) -> Result<(), LiftingError> {
    let ceiling = game.ceiling();
    if nav.height() < ceiling / 2 + 1 {
        return Err(LiftingError::TreeTooShort {
            tree: nav.height(),
            ceiling,
        });
    }
    Ok(())
}

/// Lifts from the all-minimal measure to the least fixpoint for Steven.
pub fn lift_to_fixpoint<N: TreeNavigator>(
    game: &ParityGame,
    nav: &N,
    policy: WorkList,
) -> Result<(ProgressMeasure<N::Leaf>, u64), LiftingError> {
    let mut run = LiftRun::new(game, nav, Player::Steven, policy, &game.empty_set())?;
    run.run(None);
    Ok((run.mu, run.lifts))
}

/// A resumable lifting run for one player. Audrey runs lift on the dual
/// game.
pub struct LiftRun<'a, N: TreeNavigator> {
    game: Cow<'a, ParityGame>,
    nav: &'a N,
    player: Player,
    mu: ProgressMeasure<N::Leaf>,
    queue: Queue,
    queued: Vec<bool>,
    lifts: u64,
}

impl<'a, N: TreeNavigator> LiftRun<'a, N> {
    /// Starts from the all-minimal measure with `lost` at `⊤`. The
    /// fixpoint is unchanged as long as no vertex of `lost` belongs to a
    /// `player` dominion, for instance when the opponent is known to win
    /// all of `lost`.
    pub fn new(
        game: &'a ParityGame,
        nav: &'a N,
        player: Player,
        policy: WorkList,
        lost: &VertexSet,
    ) -> Result<Self, LiftingError> {
        let game = match player {
            Player::Steven => Cow::Borrowed(game),
            Player::Audrey => Cow::Owned(game.dual()),
        };
        check_height(&game, nav)?;
        let n = game.num_vertices();
        let queue = match policy {
            WorkList::Priority => Queue::Heap(BinaryHeap::with_capacity(n)),
            WorkList::Fifo => Queue::Fifo(VecDeque::with_capacity(n)),
        };
        let mut run = LiftRun {
            mu: ProgressMeasure::constant(n, MeasureValue::Leaf(nav.min_leaf())),
            queued: vec![false; n],
            game,
            nav,
            player,
            queue,
            lifts: 0,
        };
        for v in lost.iter() {
            run.mu.set(v, MeasureValue::Top);
        }
        for v in 0..n {
            if !lost.contains(v) {
                run.enqueue(v);
            }
        }
        Ok(run)
    }

    fn enqueue(&mut self, v: Vertex) {
        if !self.queued[v] && !self.mu.get(v).is_top() {
            self.queued[v] = true;
            self.queue.push(&self.game, v);
        }
    }

    fn raise(&mut self, v: Vertex, value: MeasureValue<N::Leaf>) {
        self.mu.set(v, value);
        for i in 0..self.game.predecessors(v).len() {
            let w = self.game.predecessors(v)[i];
            self.enqueue(w);
        }
    }

    /// Processes up to `max_steps` queued vertices (all if `None`) and
    /// reports whether the fixpoint has been reached.
    pub fn run(&mut self, max_steps: Option<u64>) -> bool {
        let mut steps = 0;
        while max_steps.is_none_or(|m| steps < m) {
            let Some(v) = self.queue.pop() else {
                return true;
            };
            steps += 1;
            self.queued[v] = false;
            let next = lift(&self.game, self.nav, &self.mu, v);
            if next != *self.mu.get(v) {
                self.lifts += 1;
                self.raise(v, next);
            }
        }
        false
    }

    /// Moves `lost` to `⊤` mid-run, under the same condition as in
    /// [`LiftRun::new`].
    pub fn mark_lost(&mut self, lost: &VertexSet) {
        for v in lost.iter() {
            if !self.mu.get(v).is_top() {
                self.raise(v, MeasureValue::Top);
            }
        }
    }

    pub fn lifts(&self) -> u64 {
        self.lifts
    }

    /// The dominion and strategy of a finished run.
    pub fn finish(self) -> LiftOutcome<N::Leaf> {
        let mut outcome = steven_outcome(&self.game, self.nav, self.mu, self.lifts);
        if self.player == Player::Audrey {
            let mut strategy = PositionalStrategy::new(Player::Audrey, self.game.num_vertices());
            for (v, u) in outcome.strategy.choices() {
                strategy.set(v, u);
            }
            outcome.strategy = strategy;
        }
        outcome
    }
}

/// Steven's dominion and a dominion strategy read off a fixpoint measure.
fn steven_outcome<N: TreeNavigator>(
    game: &ParityGame,
    nav: &N,
    mu: ProgressMeasure<N::Leaf>,
    lifts: u64,
) -> LiftOutcome<N::Leaf> {
    let dominion = mu.support();
    let mut strategy = PositionalStrategy::new(Player::Steven, game.num_vertices());
    for v in dominion.iter() {
        if game.owner(v) == Player::Steven {
            let (need, u) = best_requirement(game, nav, &mu, v);
            debug_assert!(need <= *mu.get(v));
            strategy.set(v, u);
        }
    }
    LiftOutcome {
        dominion,
        strategy,
        measure: mu,
        lifts,
    }
}

/// The largest `player` dominion certified by a progress measure into the
/// navigator's tree, with a dominion strategy. Audrey is handled on the
/// dual game.
pub fn solve_with_tree<N: TreeNavigator>(
    game: &ParityGame,
    nav: &N,
    player: Player,
) -> Result<LiftOutcome<N::Leaf>, LiftingError> {
    solve_with_tree_using(game, nav, player, WorkList::default())
}

/// [`solve_with_tree`] with an explicit work-list policy.
pub fn solve_with_tree_using<N: TreeNavigator>(
    game: &ParityGame,
    nav: &N,
    player: Player,
    policy: WorkList,
) -> Result<LiftOutcome<N::Leaf>, LiftingError> {
    let mut run = LiftRun::new(game, nav, player, policy, &game.empty_set())?;
    run.run(None);
    Ok(run.finish())
}

/// `⌊lg n⌋`, the bit budget of the trees used for an `n`-vertex game.
pub fn bit_budget(n: usize) -> u32 {
    n.max(1).ilog2()
}

/// Parameters of `B(⌊lg n⌋, d/2 + 1, min(k, d/2 + 1))` for `game`.
pub fn tree_for(game: &ParityGame, k: u32) -> TreeParams {
    let h = game.ceiling() / 2 + 1;
    TreeParams::new(bit_budget(game.num_vertices()), h, k.clamp(1, h))
        .expect("h >= k >= 1 by construction")
}

/// Full solution from [`strahler_solve`].
#[derive(Clone, Debug)]
pub struct StrahlerSolution {
    pub w_even: VertexSet,
    pub sigma_even: PositionalStrategy,
    pub w_odd: VertexSet,
    pub sigma_odd: PositionalStrategy,
    pub k_used_even: u32,
    pub k_used_odd: u32,
    /// The last `k` tried.
    pub k_final: u32,
    pub lifts: u64,
    /// Most `(component, bit)` entries held by any measure value.
    pub max_measure_entries: usize,
    /// Tree parameters of the last Steven and Audrey runs. The bit budget
    /// may be below `⌊lg n⌋` when a smaller tree already settled the game.
    pub trees: (TreeParams, TreeParams),
}

/// Lifts for Steven on `even_tree`, then for Audrey on `odd_tree` with
/// Steven's attractor to his dominion at ⊤.
fn run_pair(
    game: &ParityGame,
    even_tree: TreeParams,
    odd_tree: TreeParams,
    lost_even: &VertexSet,
) -> Result<(LiftOutcome<SuccinctLeaf>, LiftOutcome<SuccinctLeaf>, u64), LiftingError> {
    let policy = WorkList::default();
    let even_nav = SuccinctNavigator::new(even_tree);
    let mut run = LiftRun::new(game, &even_nav, Player::Steven, policy, lost_even)?;
    run.run(None);
    let even = run.finish();
    let lost_odd = attractor(game, Player::Steven, &even.dominion).0;
    let odd_nav = SuccinctNavigator::new(odd_tree);
    let mut run = LiftRun::new(game, &odd_nav, Player::Audrey, policy, &lost_odd)?;
    run.run(None);
    let odd = run.finish();
    let lifts = even.lifts + odd.lifts;
    Ok((even, odd, lifts))
}

/// Solves `game` by lifting on succinct trees `B(⌊lg n⌋, d/2+1, k+1)` for
/// `k = 1, 2, …` until the two dominions cover every vertex.
///
/// Each round runs both sides on the part of the game not yet decided.
/// Dominions found there are closed under attractors and removed, and the
/// rest is solved as a game of its own. Within a `k`, rounds first use the
/// bit budgets 0, 1, 2, 4, … below `⌊lg n⌋`: those trees are subtrees of
/// the full one, so whatever they certify is a genuine dominion.
pub fn strahler_solve(
    game: &ParityGame,
    k_max: Option<u32>,
) -> Result<StrahlerSolution, LiftingError> {
    let n = game.num_vertices();
    let limit = bit_budget(n) + 1;
    let last = k_max.map_or(limit, |m| m.min(limit));
    let mut won = [game.empty_set(), game.empty_set()];
    let mut sigma = [
        PositionalStrategy::new(Player::Steven, n),
        PositionalStrategy::new(Player::Audrey, n),
    ];
    let mut k_used = [1, 1];
    let mut lifts = 0;
    let mut max_measure_entries = 0;
    let mut trees = (tree_for(game, 2), tree_for(&game.dual(), 2));
    let mut k = 1;
    let mut budget = 0;
    loop {
        let rest = won[0].union(&won[1]).complement();
        if rest.is_empty() {
            let [w_even, w_odd] = won;
            let [sigma_even, sigma_odd] = sigma;
            return Ok(StrahlerSolution {
                w_even,
                sigma_even,
                w_odd,
                sigma_odd,
                k_used_even: k_used[0],
                k_used_odd: k_used[1],
                k_final: k,
                lifts,
                max_measure_entries,
                trees,
            });
        }
        let sub = game
            .subgame(&rest)
            .expect("removing attractors leaves a subgame");
        let even_tree = tree_for(&sub.game, k + 1);
        let odd_tree = tree_for(&sub.game.dual(), k + 1);
        let budget_used = budget.min(even_tree.t);
        let small = |p: TreeParams| TreeParams {
            t: budget_used,
            ..p
        };
        let (even, odd, spent) = run_pair(
            &sub.game,
            small(even_tree),
            small(odd_tree),
            &sub.game.empty_set(),
        )?;
        lifts += spent;
        trees = (small(even_tree), small(odd_tree));
        for outcome in [&even, &odd] {
            for value in outcome.measure.values() {
                if let MeasureValue::Leaf(leaf) = value {
                    max_measure_entries = max_measure_entries.max(leaf.entry_count());
                }
            }
        }
        if even.dominion.is_empty() && odd.dominion.is_empty() {
            if budget_used < even_tree.t {
                budget = (budget * 2).max(1);
            } else if k < last {
                k += 1;
                budget = 0;
            } else {
                return Err(LiftingError::KMaxExceeded { k_max: last });
            }
            continue;
        }
        for (side, outcome) in [even, odd].into_iter().enumerate() {
            if outcome.dominion.is_empty() {
                continue;
            }
            let player = if side == 0 {
                Player::Steven
            } else {
                Player::Audrey
            };
            let dominion = sub.lift_set(&outcome.dominion, n);
            let (region, reach) = attractor_within(game, &rest, player, &dominion);
            sigma[side].absorb(&sub.lift_strategy(&outcome.strategy, n));
            sigma[side].absorb(&reach);
            won[side].union_with(&region);
            k_used[side] = k;
        }
    }
}

/// The least `k` (at most `d/2 + 1`) such that lifting on
/// `B(⌊lg n⌋, d/2+1, k)` certifies Steven on every vertex.
pub fn pm_strahler_estimate(game: &ParityGame) -> Result<u32, LiftingError> {
    let h = game.ceiling() / 2 + 1;
    for k in 1..=h {
        let nav = SuccinctNavigator::new(tree_for(game, k));
        let outcome = solve_with_tree(game, &nav, Player::Steven)?;
        if outcome.dominion.len() == game.num_vertices() {
            return Ok(k);
        }
    }
    Err(LiftingError::NotFullyWon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::validate_dominion_strategy;
    use crate::universal::{b_leaves, build_u};
    use crate::zielonka::zielonka_solve;
    use Player::{Audrey, Steven};

    fn game(spec: &[(u32, Player, &[usize])]) -> ParityGame {
        ParityGame::new(
            spec.iter().map(|s| s.1).collect(),
            spec.iter().map(|s| s.0).collect(),
            spec.iter().map(|s| s.2.to_vec()).collect(),
        )
        .unwrap()
    }

    fn nav(t: u32, h: u32, k: u32) -> SuccinctNavigator {
        SuccinctNavigator::new(TreeParams::new(t, h, k).unwrap())
    }

    fn leaf(s: &str) -> MeasureValue<SuccinctLeaf> {
        MeasureValue::Leaf(SuccinctLeaf::parse(s).unwrap())
    }

    #[test]
    fn truncation_examples() {
        let n = nav(1, 3, 2);
        let a = leaf("-,0");
        let b = leaf("-,01");
        assert_eq!(truncation_compare(&n, &a, &b, 3), Ordering::Equal);
        assert_eq!(truncation_compare(&n, &a, &b, 1), Ordering::Less);
        assert_eq!(truncation_compare(&n, &a, &b, 4), Ordering::Equal);
        assert_eq!(
            truncation_compare(&n, &MeasureValue::Top, &b, 0),
            Ordering::Greater
        );
        assert_eq!(
            truncation_compare(&n, &MeasureValue::Top, &MeasureValue::Top, 0),
            Ordering::Equal
        );
    }

    #[test]
    fn progressive_edges() {
        let g = game(&[(2, Steven, &[1]), (1, Steven, &[1]), (0, Audrey, &[0])]);
        let n = nav(1, 3, 2);
        let same = ProgressMeasure::constant(3, leaf("-,0"));
        assert!(is_progressive(&g, &n, &same, 0, 1));
        assert!(!is_progressive(&g, &n, &same, 1, 1));
        let mu = ProgressMeasure::from_values(vec![leaf("-,0"), leaf("-,01"), MeasureValue::Top]);
        // Priority 2 only looks at the top component.
        assert!(is_progressive(&g, &n, &mu, 0, 1));
        assert!(!is_progressive(&g, &n, &mu, 1, 1));
        assert!(is_progressive(&g, &n, &mu, 2, 0));
        assert!(!is_progressive(&g, &n, &mu, 0, 2));
    }

    #[test]
    fn lift_examples() {
        let n = nav(1, 3, 2);
        let g = game(&[(2, Steven, &[1]), (1, Steven, &[1])]);
        let mu = ProgressMeasure::constant(2, MeasureValue::Leaf(n.min_leaf()));
        assert_eq!(lift(&g, &n, &mu, 0), MeasureValue::Leaf(n.min_leaf()));
        let max = b_leaves(n.params(), 100).unwrap().pop().unwrap();
        let mu = ProgressMeasure::from_values(vec![
            MeasureValue::Leaf(n.min_leaf()),
            MeasureValue::Leaf(max),
        ]);
        assert_eq!(lift(&g, &n, &mu, 1), MeasureValue::Top);
    }

    /// Least leaf `>= mu(v)` satisfying the edge condition for the best
    /// successor, by scanning the sorted leaf list.
    fn naive_lift(
        g: &ParityGame,
        n: &SuccinctNavigator,
        leaves: &[SuccinctLeaf],
        mu: &ProgressMeasure<SuccinctLeaf>,
        v: Vertex,
    ) -> MeasureValue<SuccinctLeaf> {
        let p = g.priority(v);
        let need = |u: Vertex| -> MeasureValue<SuccinctLeaf> {
            let target = mu.get(u);
            leaves
                .iter()
                .map(|l| MeasureValue::Leaf(l.clone()))
                .find(|cand| {
                    let ord = truncation_compare(n, cand, target, p);
                    if p % 2 == 0 {
                        ord != Ordering::Less
                    } else {
                        ord == Ordering::Greater
                    }
                })
                .unwrap_or(MeasureValue::Top)
        };
        let needs = g.successors(v).iter().map(|&u| need(u));
        let best = if g.owner(v) == Steven {
            needs.min().unwrap()
        } else {
            needs.max().unwrap()
        };
        best.max(mu.get(v).clone())
    }

    #[test]
    fn lift_matches_naive_scan() {
        let n = nav(1, 3, 2);
        let leaves = b_leaves(n.params(), 100).unwrap();
        let g = game(&[
            (3, Steven, &[1, 2]),
            (2, Audrey, &[0, 3]),
            (1, Audrey, &[2, 3]),
            (4, Steven, &[0]),
        ]);
        let materialized = MaterializedNavigator::new(&build_u(n.params(), 100).unwrap()).unwrap();
        let mut state = 7u64;
        for _ in 0..200 {
            let values: Vec<MeasureValue<SuccinctLeaf>> = (0..4)
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    let i = (state >> 33) as usize % (leaves.len() + 1);
                    leaves
                        .get(i)
                        .cloned()
                        .map_or(MeasureValue::Top, MeasureValue::Leaf)
                })
                .collect();
            let indices: Vec<MeasureValue<usize>> = values
                .iter()
                .map(|m| match m {
                    MeasureValue::Leaf(l) => {
                        MeasureValue::Leaf(leaves.iter().position(|x| x == l).unwrap())
                    }
                    MeasureValue::Top => MeasureValue::Top,
                })
                .collect();
            let mu = ProgressMeasure::from_values(values);
            let mu_index = ProgressMeasure::from_values(indices);
            for v in 0..4 {
                let fast = lift(&g, &n, &mu, v);
                assert_eq!(fast, naive_lift(&g, &n, &leaves, &mu, v));
                let by_index = lift(&g, &materialized, &mu_index, v);
                let expected = match &fast {
                    MeasureValue::Leaf(l) => {
                        MeasureValue::Leaf(leaves.iter().position(|x| x == l).unwrap())
                    }
                    MeasureValue::Top => MeasureValue::Top,
                };
                assert_eq!(by_index, expected);
            }
        }
    }

    #[test]
    fn materialized_navigation() {
        let tree = build_u(TreeParams::new(1, 3, 2).unwrap(), 100).unwrap();
        let m = MaterializedNavigator::new(&tree).unwrap();
        assert_eq!(m.leaf_count(), 9);
        assert_eq!(m.height(), 3);
        assert_eq!(m.level_successor(&0, 2), Some(1));
        assert_eq!(m.level_successor(&3, 2), Some(6));
        assert_eq!(m.level_successor(&0, 1), Some(1));
        assert_eq!(m.level_successor(&8, 1), None);
        assert_eq!(m.min_descendant(&5, 2), 3);
        assert_eq!(m.min_descendant(&5, 3), 0);
        let lopsided = OrderedTree::node(vec![OrderedTree::leaf(), OrderedTree::chain(2)]);
        assert_eq!(
            MaterializedNavigator::new(&lopsided).unwrap_err(),
            LiftingError::NonUniformDepth
        );
    }

    #[test]
    fn self_loops() {
        let even = game(&[(2, Steven, &[0])]);
        let out = solve_with_tree(&even, &nav(0, 2, 1), Steven).unwrap();
        assert_eq!(out.dominion.to_vec(), vec![0]);
        let odd = game(&[(1, Steven, &[0])]);
        let out = solve_with_tree(&odd, &nav(2, 2, 2), Steven).unwrap();
        assert!(out.dominion.is_empty());
        let out = solve_with_tree(&odd, &nav(2, 2, 2), Audrey).unwrap();
        assert_eq!(out.dominion.to_vec(), vec![0]);
        assert!(validate_dominion_strategy(
            &odd,
            &out.dominion,
            &out.strategy
        ));
    }

    #[test]
    fn short_tree_is_rejected() {
        let g = game(&[(4, Steven, &[0])]);
        assert!(matches!(
            solve_with_tree(&g, &nav(0, 2, 1), Steven),
            Err(LiftingError::TreeTooShort { .. })
        ));
    }

    #[test]
    fn strahler_solve_small_games() {
        let g = game(&[(2, Steven, &[0])]);
        let sol = strahler_solve(&g, None).unwrap();
        assert_eq!(sol.w_even.to_vec(), vec![0]);
        assert_eq!(sol.k_used_even, 1);
        assert_eq!(pm_strahler_estimate(&g).unwrap(), 1);

        let g = game(&[
            (0, Steven, &[1, 2]),
            (3, Audrey, &[1]),
            (4, Steven, &[2, 3]),
            (1, Audrey, &[3, 2]),
        ]);
        let sol = strahler_solve(&g, None).unwrap();
        let z = zielonka_solve(&g);
        assert_eq!(sol.w_even, z.w_even);
        assert!(validate_dominion_strategy(&g, &sol.w_even, &sol.sigma_even));
        assert!(validate_dominion_strategy(&g, &sol.w_odd, &sol.sigma_odd));
        assert_eq!(pm_strahler_estimate(&g), Err(LiftingError::NotFullyWon));
    }

    #[test]
    fn work_lists_agree() {
        let g = game(&[
            (3, Steven, &[1, 2]),
            (2, Audrey, &[0, 3]),
            (1, Audrey, &[2, 3]),
            (4, Steven, &[0]),
            (5, Audrey, &[3, 4]),
        ]);
        let n = nav(2, 4, 3);
        let a = solve_with_tree_using(&g, &n, Steven, WorkList::Priority).unwrap();
        let b = solve_with_tree_using(&g, &n, Steven, WorkList::Fifo).unwrap();
        assert_eq!(a.measure, b.measure);
    }

    #[test]
    fn dump_format() {
        let g = game(&[(2, Steven, &[0]), (1, Steven, &[1])]);
        let n = nav(1, 2, 2);
        let out = solve_with_tree(&g, &n, Steven).unwrap();
        assert_eq!(out.measure.dump(&n), "0 00\n1 T\n");
    }
}
