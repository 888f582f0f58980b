//! The PGSolver-style text format, a seeded random game generator and
//! the serializable solution report.
//!
//! A file is an optional `parity <max-id>;` header followed by one record
//! per vertex:
//!
//! ```text
//! <id> <priority> <owner> <succ>,<succ>,… ["name"];
//! ```
//!
//! The owner bit is `0` for Even (Steven) and `1` for Odd (Audrey).
//! Records may span lines. Ids need not be contiguous; they are mapped to
//! dense vertices in increasing id order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{GameError, ParityGame, Player, PositionalStrategy, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("{line}:{col}: syntax error: {message}")]
    SyntaxError {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: successor {id} is not defined")]
    DanglingSuccessor { line: usize, col: usize, id: u64 },
    #[error("{line}:{col}: vertex {id} has no successor")]
    NoSuccessor { line: usize, col: usize, id: u64 },
    #[error("{line}:{col}: vertex {id} is defined twice")]
    DuplicateId { line: usize, col: usize, id: u64 },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// A parsed file: the game plus the original ids and names.
#[derive(Clone, Debug)]
pub struct GameFile {
    pub game: ParityGame,
    /// Original id of each dense vertex.
    pub ids: Vec<u64>,
    pub names: Vec<Option<String>>,
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(u64),
    Word(String),
    Str(String),
    Comma,
    Semi,
}

#[derive(Clone, Debug)]
struct Spanned {
    token: Token,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> IoError {
    IoError::SyntaxError {
        line,
        col,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, IoError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (start_line, start_col) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        let token = match c {
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            ',' => {
                bump(&mut chars);
                Token::Comma
            }
            ';' => {
                bump(&mut chars);
                Token::Semi
            }
            '"' => {
                bump(&mut chars);
                let mut s = String::new();
                loop {
                    match chars.peek() {
                        None => return Err(syntax(start_line, start_col, "unterminated string")),
                        Some('"') => {
                            bump(&mut chars);
                            break;
                        }
                        Some(_) => s.push(bump(&mut chars)),
                    }
                }
                Token::Str(s)
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    s.push(bump(&mut chars));
                }
                let value = s
                    .parse()
                    .map_err(|_| syntax(start_line, start_col, "integer out of range"))?;
                Token::Int(value)
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while chars
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    s.push(bump(&mut chars));
                }
                Token::Word(s)
            }
            other => {
                return Err(syntax(
                    start_line,
                    start_col,
                    format!("unexpected character '{other}'"),
                ))
            }
        };
        out.push(Spanned {
            token,
            line: start_line,
            col: start_col,
        });
    }
    Ok(out)
}

struct Record {
    id: u64,
    priority: u32,
    owner: Player,
    successors: Vec<(u64, usize, usize)>,
    name: Option<String>,
    line: usize,
    col: usize,
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |s| (s.line, s.col))
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn int(&mut self, what: &str) -> Result<(u64, usize, usize), IoError> {
        let (line, col) = self.here();
        match self.next() {
            Some(Spanned {
                token: Token::Int(v),
                ..
            }) => Ok((v, line, col)),
            _ => Err(syntax(line, col, format!("expected {what}"))),
        }
    }

    fn semi(&mut self) -> Result<(), IoError> {
        let (line, col) = self.here();
        match self.next() {
            Some(Spanned {
                token: Token::Semi, ..
            }) => Ok(()),
            _ => Err(syntax(line, col, "expected ';'")),
        }
    }

    fn record(&mut self) -> Result<Record, IoError> {
        let (id, line, col) = self.int("vertex id")?;
        let (priority, pl, pc) = self.int("priority")?;
        let priority = u32::try_from(priority).map_err(|_| syntax(pl, pc, "priority too large"))?;
        let (owner, ol, oc) = self.int("owner bit")?;
        let owner = match owner {
            0 => Player::Steven,
            1 => Player::Audrey,
            _ => return Err(syntax(ol, oc, "owner must be 0 or 1")),
        };
        let mut successors = Vec::new();
        if matches!(
            self.peek(),
            Some(Spanned {
                token: Token::Int(_),
                ..
            })
        ) {
            successors.push(self.int("successor")?);
            while matches!(
                self.peek(),
                Some(Spanned {
                    token: Token::Comma,
                    ..
                })
            ) {
                self.pos += 1;
                successors.push(self.int("successor")?);
            }
        }
        let name = match self.peek() {
            Some(Spanned {
                token: Token::Str(s),
                ..
            }) => {
                let s = s.clone();
                self.pos += 1;
                Some(s)
            }
            _ => None,
        };
        self.semi()?;
        if successors.is_empty() {
            return Err(IoError::NoSuccessor { line, col, id });
        }
        Ok(Record {
            id,
            priority,
            owner,
            successors,
            name,
            line,
            col,
        })
    }
}

/// Parses a game file, keeping ids and names.
pub fn parse_game_file(text: &str) -> Result<GameFile, IoError> {
    let tokens = tokenize(text)?;
    let last_line = text.lines().count().max(1);
    let last_col = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    let mut p = Parser {
        tokens,
        pos: 0,
        end: (last_line, last_col),
    };
    // Optional `parity N;` and `start N;` headers.
    while let Some(Spanned {
        token: Token::Word(w),
        line,
        col,
    }) = p.peek().cloned()
    {
        if w != "parity" && w != "start" {
            return Err(syntax(line, col, format!("unknown header '{w}'")));
        }
        p.pos += 1;
        p.int("header value")?;
        p.semi()?;
    }
    let mut records: BTreeMap<u64, Record> = BTreeMap::new();
    while p.peek().is_some() {
        let r = p.record()?;
        if records.contains_key(&r.id) {
            return Err(IoError::DuplicateId {
                line: r.line,
                col: r.col,
                id: r.id,
            });
        }
        records.insert(r.id, r);
    }
    if records.is_empty() {
        return Err(IoError::Game(GameError::Empty));
    }
    let dense: BTreeMap<u64, Vertex> = records.keys().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut owner = Vec::with_capacity(records.len());
    let mut priority = Vec::with_capacity(records.len());
    let mut successors = Vec::with_capacity(records.len());
    let mut names = Vec::with_capacity(records.len());
    for r in records.values() {
        let mut succ = Vec::with_capacity(r.successors.len());
        for &(id, line, col) in &r.successors {
            match dense.get(&id) {
                Some(&v) => succ.push(v),
                None => return Err(IoError::DanglingSuccessor { line, col, id }),
            }
        }
        owner.push(r.owner);
        priority.push(r.priority);
        successors.push(succ);
        names.push(r.name.clone());
    }
    Ok(GameFile {
        game: ParityGame::new(owner, priority, successors)?,
        ids: records.keys().copied().collect(),
        names,
    })
}

/// Parses a game file into a game over dense vertex ids.
pub fn parse_game(text: &str) -> Result<ParityGame, IoError> {
    Ok(parse_game_file(text)?.game)
}

/// Writes `game` with ids `0..n`.
pub fn write_game(game: &ParityGame) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "parity {};", game.num_vertices() - 1);
    for v in game.vertices() {
        let succ: Vec<String> = game.successors(v).iter().map(|u| u.to_string()).collect();
        let _ = writeln!(
            out,
            "{v} {} {} {};",
            game.priority(v),
            game.owner(v).parity(),
            succ.join(",")
        );
    }
    out
}

/// Generator settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub d: u32,
    pub min_degree: usize,
    pub max_degree: usize,
    pub audrey_fraction: f64,
}

/// A random game, deterministic in `seed`: priorities uniform in
/// `0..=d`, owners Audrey with probability `audrey_fraction`, out-degree
/// uniform in `min_degree..=max_degree` with distinct successors.
pub fn generate_random(seed: u64, params: GenParams) -> Result<ParityGame, IoError> {
    let GenParams {
        n,
        d,
        min_degree,
        max_degree,
        audrey_fraction,
    } = params;
    if n == 0 {
        return Err(IoError::InvalidParams("n must be at least 1".into()));
    }
    if min_degree == 0 || min_degree > max_degree || max_degree > n {
        return Err(IoError::InvalidParams(format!(
            "need 1 <= min_degree <= max_degree <= n, got {min_degree}..{max_degree} with n = {n}"
        )));
    }
    if !(0.0..=1.0).contains(&audrey_fraction) {
        return Err(IoError::InvalidParams(format!(
            "audrey_fraction {audrey_fraction} is not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut owner = Vec::with_capacity(n);
    let mut priority = Vec::with_capacity(n);
    let mut successors = Vec::with_capacity(n);
    for _ in 0..n {
        priority.push(rng.gen_range(0..=d));
        owner.push(if rng.gen_bool(audrey_fraction) {
            Player::Audrey
        } else {
            Player::Steven
        });
        let degree = rng.gen_range(min_degree..=max_degree);
        successors.push(sample(&mut rng, n, degree).into_vec());
    }
    Ok(ParityGame::new(owner, priority, successors)?)
}

/// Machine-readable solver output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    /// `"even"` or `"odd"` per vertex.
    pub winner: Vec<String>,
    /// Chosen successor of each vertex that its owner wins.
    pub strategy: Vec<Option<Vertex>>,
    pub algo: String,
    /// `[k_used_even, k_used_odd]` for the Strahler solver.
    pub k_bracket: Option<[u32; 2]>,
    /// `[t, h, k]` of the last trees used, if any.
    pub tree: Option<Vec<[u32; 3]>>,
    pub lifts: Option<u64>,
    pub millis: f64,
    /// Original file ids of the dense vertices.
    pub ids: Vec<u64>,
}

impl SolutionReport {
    pub fn new(
        game: &ParityGame,
        winners: &[Player],
        sigma_even: &PositionalStrategy,
        sigma_odd: &PositionalStrategy,
        algo: &str,
    ) -> Self {
        let strategy = game
            .vertices()
            .map(|v| match (game.owner(v), winners[v]) {
                (Player::Steven, Player::Steven) => sigma_even.get(v),
                (Player::Audrey, Player::Audrey) => sigma_odd.get(v),
                _ => None,
            })
            .collect();
        SolutionReport {
            winner: winners
                .iter()
                .map(|w| match w {
                    Player::Steven => "even".to_string(),
                    Player::Audrey => "odd".to_string(),
                })
                .collect(),
            strategy,
            algo: algo.to_string(),
            k_bracket: None,
            tree: None,
            lifts: None,
            millis: 0.0,
            ids: game.vertices().map(|v| v as u64).collect(),
        }
    }
}
