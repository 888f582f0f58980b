//! Lehtinen's `k`-register games, their defensive variants, and the
//! register and Lehtinen numbers computed by solving them.

use std::collections::HashMap;

use thiserror::Error;

use crate::game::{ParityGame, Player, Vertex, VertexSet};
use crate::zielonka::zielonka_solve;

pub const DEFAULT_K_CAP: u32 = 3;
pub const DEFAULT_STATE_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegisterError {
    #[error("register game would have {states} states, cap is {cap}")]
    StateSpaceExceeded { states: u64, cap: u64 },
    #[error("no k up to {k_cap} qualifies")]
    CapExceeded { k_cap: u32 },
    #[error("k must be at least 1")]
    ZeroRegisters,
}

/// A state `(v, ⟨r_k, …, r_1⟩)` (no rank: the rank-1 pre-move state) or
/// `(v, ⟨r_k, …, r_1⟩, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegisterState {
    pub vertex: Vertex,
    /// `r_k` first.
    pub registers: Vec<u32>,
    pub rank: Option<u32>,
}

/// A constructed register game with its state table.
#[derive(Clone, Debug)]
pub struct RegisterGame {
    pub game: ParityGame,
    pub k: u32,
    tuples: Vec<Vec<u32>>,
    tuple_index: HashMap<Vec<u32>, usize>,
    vertices: usize,
    /// The absorbing losing state of a defensive game.
    sink: Option<Vertex>,
}

impl RegisterGame {
    fn tuple_count(&self) -> usize {
        self.tuples.len()
    }

    fn ranks(&self) -> usize {
        2 * self.k as usize + 1
    }

    /// Id of `state` in [`RegisterGame::game`], if it is a valid state.
    pub fn id(&self, state: &RegisterState) -> Option<Vertex> {
        if state.vertex >= self.vertices {
            return None;
        }
        let t = *self.tuple_index.get(&state.registers)?;
        let pair = state.vertex * self.tuple_count() + t;
        match state.rank {
            None => Some(pair),
            Some(p) if (1..=self.ranks() as u32).contains(&p) => {
                Some(self.vertices * self.tuple_count() + pair * self.ranks() + (p as usize - 1))
            }
            Some(_) => None,
        }
    }

    /// The state behind an id; `None` for the sink.
    pub fn state(&self, id: Vertex) -> Option<RegisterState> {
        let pairs = self.vertices * self.tuple_count();
        if Some(id) == self.sink {
            return None;
        }
        if id < pairs {
            return Some(RegisterState {
                vertex: id / self.tuple_count(),
                registers: self.tuples[id % self.tuple_count()].clone(),
                rank: None,
            });
        }
        let rest = id - pairs;
        let pair = rest / self.ranks();
        Some(RegisterState {
            vertex: pair / self.tuple_count(),
            registers: self.tuples[pair % self.tuple_count()].clone(),
            rank: Some((rest % self.ranks()) as u32 + 1),
        })
    }

    /// Ids of the pre-move states `(v, r̄)` for all register tuples.
    pub fn pair_states(&self, v: Vertex) -> impl Iterator<Item = (Vertex, &[u32])> + '_ {
        let base = v * self.tuple_count();
        self.tuples
            .iter()
            .enumerate()
            .map(move |(i, t)| (base + i, t.as_slice()))
    }
}

/// Non-increasing tuples of length `k` over `0..=d`, `r_k` first.
fn register_tuples(k: u32, d: u32) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, k: usize, bound: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for r in 0..=bound {
            prefix.push(r);
            extend(prefix, k, r, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), k as usize, d, &mut out);
    out
}

fn binomial(n: u64, r: u64) -> u64 {
    (0..r).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `n · C(d + k, k) · (2k + 2)`.
pub fn state_count(n: usize, d: u32, k: u32) -> u64 {
    (n as u64)
        .saturating_mul(binomial(d as u64 + k as u64, k as u64))
        .saturating_mul(2 * k as u64 + 2)
}

/// Steven's reset of registers `i, …, 1` at a vertex of priority
/// `priority`: the new registers (`r_k` first) and the rank reached.
pub fn reset(registers: &[u32], priority: u32, i: u32) -> (Vec<u32>, u32) {
    let k = registers.len();
    let i = i as usize;
    // registers[k - j] holds r_j.
    let mut next = vec![0; k];
    for j in (i + 1)..=k {
        next[k - j] = registers[k - j].max(priority);
    }
    let rank = if i == 0 {
        1
    } else {
        next[k - i] = priority;
        let top = registers[k - i].max(priority);
        if top % 2 == 0 {
            2 * i as u32
        } else {
            2 * i as u32 + 1
        }
    };
    (next, rank)
}

fn build(
    game: &ParityGame,
    k: u32,
    defensive: bool,
    cap: u64,
) -> Result<RegisterGame, RegisterError> {
    if k == 0 {
        return Err(RegisterError::ZeroRegisters);
    }
    let n = game.num_vertices();
    let d = game.ceiling();
    let states = state_count(n, d, k) + defensive as u64;
    if states > cap {
        return Err(RegisterError::StateSpaceExceeded { states, cap });
    }
    let tuples = register_tuples(k, d);
    let tuple_index: HashMap<Vec<u32>, usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let mut shell = RegisterGame {
        game: ParityGame::new(vec![Player::Steven], vec![0], vec![vec![0]]).expect("valid"),
        k,
        tuples,
        tuple_index,
        vertices: n,
        sink: None,
    };
    let total = states as usize;
    let losing_rank = 2 * k + 1;
    let mut owner = vec![Player::Steven; total];
    let mut priority = vec![1; total];
    let mut successors: Vec<Vec<Vertex>> = vec![Vec::new(); total];
    let sink = defensive.then_some(total - 1);
    for v in game.vertices() {
        for t in 0..shell.tuple_count() {
            let registers = shell.tuples[t].clone();
            let pair = shell
                .id(&RegisterState {
                    vertex: v,
                    registers: registers.clone(),
                    rank: None,
                })
                .unwrap();
            for i in 0..=k {
                let (next, rank) = reset(&registers, game.priority(v), i);
                let target = shell
                    .id(&RegisterState {
                        vertex: v,
                        registers: next,
                        rank: Some(rank),
                    })
                    .expect("reset keeps registers valid");
                successors[pair].push(target);
            }
            for p in 1..=losing_rank {
                let id = shell
                    .id(&RegisterState {
                        vertex: v,
                        registers: registers.clone(),
                        rank: Some(p),
                    })
                    .unwrap();
                owner[id] = game.owner(v);
                priority[id] = p;
                successors[id] = match sink {
                    Some(s) if p == losing_rank => vec![s],
                    _ => game
                        .successors(v)
                        .iter()
                        .map(|&u| u * shell.tuple_count() + t)
                        .collect(),
                };
            }
        }
    }
    if let Some(s) = sink {
        owner[s] = Player::Audrey;
        priority[s] = losing_rank;
        successors[s] = vec![s];
    }
    shell.sink = sink;
    shell.game = ParityGame::new(owner, priority, successors).expect("register game is total");
    Ok(shell)
}

/// `Reg_k(G)` with ranks as priorities.
pub fn build_reg(game: &ParityGame, k: u32, cap: u64) -> Result<RegisterGame, RegisterError> {
    build(game, k, false, cap)
}

/// `Def_k(G)`: `Reg_k(G)` where every rank-`(2k+1)` state moves only to
/// an absorbing odd sink.
pub fn build_def(game: &ParityGame, k: u32, cap: u64) -> Result<RegisterGame, RegisterError> {
    build(game, k, true, cap)
}

fn steven_region(game: &ParityGame) -> VertexSet {
    zielonka_solve(game).w_even
}

/// Least `k <= k_cap` such that every vertex Steven wins in `game` has a
/// pre-move state won by Steven in `Reg_k`.
pub fn register_number(game: &ParityGame, k_cap: u32, cap: u64) -> Result<u32, RegisterError> {
    let won = steven_region(game);
    if won.is_empty() {
        return Ok(1);
    }
    for k in 1..=k_cap {
        let reg = build_reg(game, k, cap)?;
        let reg_won = steven_region(&reg.game);
        if won
            .iter()
            .all(|v| reg.pair_states(v).any(|(id, _)| reg_won.contains(id)))
        {
            return Ok(k);
        }
    }
    Err(RegisterError::CapExceeded { k_cap })
}

/// Least `k <= k_cap` such that Steven wins `Def_k` from every pre-move
/// state `(v, ⟨r_k, …, r_1⟩)` with `v` won by Steven in `game` and `r_k`
/// even and at least every priority in Steven's winning region.
pub fn lehtinen_number(game: &ParityGame, k_cap: u32, cap: u64) -> Result<u32, RegisterError> {
    let won = steven_region(game);
    if won.is_empty() {
        return Ok(1);
    }
    let floor = won.iter().map(|v| game.priority(v)).max().unwrap_or(0);
    for k in 1..=k_cap {
        let def = build_def(game, k, cap)?;
        let def_won = steven_region(&def.game);
        let ok = won.iter().all(|v| {
            def.pair_states(v)
                .filter(|(_, regs)| regs[0] % 2 == 0 && regs[0] >= floor)
                .all(|(id, _)| def_won.contains(id))
        });
        if ok {
            return Ok(k);
        }
    }
    Err(RegisterError::CapExceeded { k_cap })
}
