use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use strahler_core::game::validate_dominion_strategy;
use strahler_core::io::{
    generate_random, parse_game_file, write_game, GameFile, GenParams, SolutionReport,
};
use strahler_core::lifting::{pm_strahler_estimate, strahler_solve};
use strahler_core::oracles::{brute_force_solve, exact_strahler, OracleBudget};
use strahler_core::register::{self, build_reg, lehtinen_number, register_number};
use strahler_core::universal::{b_leaves, leaf_bound, render_leaves, DEFAULT_LEAF_CAP};
use strahler_core::zielonka::{decomposition_tree, extract_decomposition, zielonka_solve};
use strahler_core::{ParityGame, Player, PositionalStrategy, TreeParams, VertexSet};

const BUDGET_VAR: &str = "STRAHLER_BUDGET";

#[derive(Parser)]
#[command(
    name = "strahler",
    version,
    about = "Parity game solving with Strahler-universal trees"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Strahler,
    Zielonka,
    Brute,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Strahler => "strahler",
            Algo::Zielonka => "zielonka",
            Algo::Brute => "brute",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve a game file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Strahler)]
        algo: Algo,
        /// Give up after this many Strahler rounds.
        #[arg(long)]
        k_max: Option<u32>,
        /// Also print the attractor decomposition trees of both regions.
        #[arg(long)]
        tree_dump: bool,
    },
    /// Report Strahler numbers of both winning regions.
    Strahler { file: PathBuf },
    /// Compute the Lehtinen number.
    Lehtinen {
        file: PathBuf,
        #[arg(long, default_value_t = register::DEFAULT_K_CAP)]
        k_cap: u32,
    },
    /// Compute the register number.
    Register {
        file: PathBuf,
        #[arg(long, default_value_t = register::DEFAULT_K_CAP)]
        k_cap: u32,
        /// Write the register game for the resulting k to this file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Generate a random game.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        min_degree: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 0.5)]
        audrey_fraction: f64,
        /// Output file; standard output if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Size of the universal tree B(t, h, k).
    Trees {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        k: u32,
        /// List the leaves.
        #[arg(long)]
        materialize: bool,
    },
    /// Run every solver and compare the results.
    Verify {
        /// A game file; otherwise a seeded random corpus.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        d: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn budget() -> Result<OracleBudget> {
    oracle_budget(OracleBudget::default())
}

fn oracle_budget(base: OracleBudget) -> Result<OracleBudget> {
    match std::env::var(BUDGET_VAR) {
        Ok(spec) => base
            .with_overrides(&spec)
            .with_context(|| format!("in {BUDGET_VAR}")),
        Err(_) => Ok(base),
    }
}

fn load(path: &Path) -> Result<GameFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_game_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn winners(n: usize, w_even: &VertexSet) -> Vec<Player> {
    (0..n)
        .map(|v| {
            if w_even.contains(v) {
                Player::Steven
            } else {
                Player::Audrey
            }
        })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            file,
            algo,
            k_max,
            tree_dump,
        } => solve(&file, algo, k_max, tree_dump, cli.json)?,
        Command::Strahler { file } => strahler(&file, cli.json)?,
        Command::Lehtinen { file, k_cap } => {
            let f = load(&file)?;
            let k = lehtinen_number(&f.game, k_cap, register::DEFAULT_STATE_CAP)?;
            emit_number("lehtinen", k, cli.json)?;
        }
        Command::Register {
            file,
            k_cap,
            export,
        } => {
            let f = load(&file)?;
            let k = register_number(&f.game, k_cap, register::DEFAULT_STATE_CAP)?;
            if let Some(path) = export {
                let reg = build_reg(&f.game, k, register::DEFAULT_STATE_CAP)?;
                fs::write(&path, write_game(&reg.game))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            emit_number("register", k, cli.json)?;
        }
        Command::Gen {
            seed,
            n,
            d,
            min_degree,
            max_degree,
            audrey_fraction,
            output,
        } => {
            let params = GenParams {
                n,
                d,
                min_degree,
                max_degree,
                audrey_fraction,
            };
            let text = write_game(&generate_random(seed, params)?);
            match output {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
        }
        Command::Trees {
            t,
            h,
            k,
            materialize,
        } => trees(t, h, k, materialize, cli.json)?,
        Command::Verify {
            file,
            seed,
            count,
            n,
            d,
        } => return verify(file.as_deref(), seed, count, n, d, cli.json),
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_number(name: &str, k: u32, json: bool) -> Result<()> {
    if json {
        print_json(&serde_json::json!({ name: k }))
    } else {
        println!("{name} number: {k}");
        Ok(())
    }
}

fn solve(file: &Path, algo: Algo, k_max: Option<u32>, tree_dump: bool, json: bool) -> Result<()> {
    let f = load(file)?;
    let game = &f.game;
    let n = game.num_vertices();
    let start = Instant::now();
    let mut report = match algo {
        Algo::Zielonka => {
            let s = zielonka_solve(game);
            SolutionReport::new(game, &s.winners(), &s.sigma_even, &s.sigma_odd, algo.name())
        }
        Algo::Strahler => {
            let s = strahler_solve(game, k_max)?;
            let mut r = SolutionReport::new(
                game,
                &winners(n, &s.w_even),
                &s.sigma_even,
                &s.sigma_odd,
                algo.name(),
            );
            r.k_bracket = Some([s.k_used_even, s.k_used_odd]);
            r.tree = Some(
                [s.trees.0, s.trees.1]
                    .iter()
                    .map(|p| [p.t, p.h, p.k])
                    .collect(),
            );
            r.lifts = Some(s.lifts);
            r
        }
        Algo::Brute => {
            let (w_even, _) = brute_force_solve(game, &budget()?)?;
            // The oracle reports regions only; strategies come from the
            // recursive solver, which agrees on the partition.
            let z = zielonka_solve(game);
            if z.w_even != w_even {
                bail!("brute force and zielonka disagree");
            }
            SolutionReport::new(
                game,
                &winners(n, &w_even),
                &z.sigma_even,
                &z.sigma_odd,
                algo.name(),
            )
        }
    };
    report.millis = start.elapsed().as_secs_f64() * 1000.0;
    report.ids = f.ids.clone();
    let dumps = if tree_dump {
        decomposition_dumps(game)?
    } else {
        Vec::new()
    };
    if json {
        let mut value = serde_json::to_value(&report)?;
        if tree_dump {
            value["decompositions"] = serde_json::to_value(&dumps)?;
        }
        return print_json(&value);
    }
    for v in game.vertices() {
        let strategy = report.strategy[v]
            .map(|u| format!(" -> {}", f.ids[u]))
            .unwrap_or_default();
        println!("{} {}{}", f.ids[v], report.winner[v], strategy);
    }
    if let Some([even, odd]) = report.k_bracket {
        println!("# k used: even {even}, odd {odd}");
    }
    if let Some(lifts) = report.lifts {
        println!("# lifts: {lifts}");
    }
    println!("# {:.3} ms", report.millis);
    for dump in dumps {
        println!(
            "# {} decomposition, strahler {}: {}",
            dump.player, dump.strahler, dump.tree
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct DecompositionDump {
    player: &'static str,
    strahler: usize,
    tree: String,
}

fn region_subgame(game: &ParityGame, region: &VertexSet) -> Option<ParityGame> {
    (!region.is_empty()).then(|| {
        game.subgame(region)
            .expect("winning regions are traps")
            .game
    })
}

fn decomposition_dumps(game: &ParityGame) -> Result<Vec<DecompositionDump>> {
    let z = zielonka_solve(game);
    let mut out = Vec::new();
    for (player, name) in [(Player::Steven, "even"), (Player::Audrey, "odd")] {
        if let Some(sub) = region_subgame(game, z.region(player)) {
            let tree = decomposition_tree(&extract_decomposition(&sub, player)?);
            out.push(DecompositionDump {
                player: name,
                strahler: tree.strahler(),
                tree: tree.render().trim_end().to_string(),
            });
        }
    }
    Ok(out)
}

#[derive(Serialize, Default)]
struct StrahlerSide {
    /// Vertices in the region.
    size: usize,
    exact: Option<u32>,
    estimate: Option<u32>,
    /// Strahler number of the decomposition read off the recursive solver.
    decomposition: Option<usize>,
}

#[derive(Serialize)]
struct StrahlerReport {
    even: StrahlerSide,
    odd: StrahlerSide,
    /// Rounds the lifting solver needed, per side.
    k_bracket: [u32; 2],
    /// The larger of the two exact values, when both are known.
    game: Option<u32>,
}

fn strahler(file: &Path, json: bool) -> Result<()> {
    let f = load(file)?;
    let game = &f.game;
    let z = zielonka_solve(game);
    let exact_budget = oracle_budget(OracleBudget::exact())?;
    let mut sides = Vec::new();
    for player in [Player::Steven, Player::Audrey] {
        let mut side = StrahlerSide {
            size: z.region(player).len(),
            ..StrahlerSide::default()
        };
        if let Some(sub) = region_subgame(game, z.region(player)) {
            side.exact = exact_strahler(&sub, player, &exact_budget).ok();
            let oriented = match player {
                Player::Steven => sub.clone(),
                Player::Audrey => sub.dual(),
            };
            side.estimate = Some(pm_strahler_estimate(&oriented)?);
            side.decomposition =
                Some(decomposition_tree(&extract_decomposition(&sub, player)?).strahler());
        }
        sides.push(side);
    }
    let s = strahler_solve(game, None)?;
    let odd = sides.pop().unwrap();
    let even = sides.pop().unwrap();
    let both = |f: fn(&StrahlerSide) -> Option<u32>| match (f(&even), f(&odd)) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, None) if odd.size == 0 => a,
        (None, b) if even.size == 0 => b,
        _ => None,
    };
    let report = StrahlerReport {
        game: both(|s| s.exact),
        even,
        odd,
        k_bracket: [s.k_used_even, s.k_used_odd],
    };
    if json {
        return print_json(&report);
    }
    let show = |x: Option<u32>| x.map_or("-".to_string(), |k| k.to_string());
    for (name, side) in [("even", &report.even), ("odd", &report.odd)] {
        println!(
            "{name}: {} vertices, exact {}, estimate {}, decomposition {}",
            side.size,
            show(side.exact),
            show(side.estimate),
            side.decomposition
                .map_or("-".to_string(), |k| k.to_string()),
        );
    }
    println!(
        "k used: even {}, odd {}",
        report.k_bracket[0], report.k_bracket[1]
    );
    println!("game: {}", show(report.game));
    Ok(())
}

#[derive(Serialize)]
struct TreesReport {
    t: u32,
    h: u32,
    k: u32,
    leaves: usize,
    bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    listing: Option<Vec<String>>,
}

fn trees(t: u32, h: u32, k: u32, materialize: bool, json: bool) -> Result<()> {
    let params = TreeParams::new(t, h, k)?;
    let leaves = b_leaves(params, DEFAULT_LEAF_CAP)?;
    let report = TreesReport {
        t,
        h,
        k,
        leaves: leaves.len(),
        bound: leaf_bound(params)?.to_string(),
        listing: materialize.then(|| leaves.iter().map(|l| l.to_string()).collect()),
    };
    if json {
        return print_json(&report);
    }
    println!("leaves: {}", report.leaves);
    println!("bound: {}", report.bound);
    if materialize {
        print!("{}", render_leaves(&leaves));
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyCase {
    label: String,
    /// Solvers that disagree with the recursive solver or produced an
    /// invalid strategy.
    problems: Vec<String>,
}

fn check_strategies(
    game: &ParityGame,
    w_even: &VertexSet,
    even: &PositionalStrategy,
    odd: &PositionalStrategy,
) -> bool {
    validate_dominion_strategy(game, w_even, even)
        && validate_dominion_strategy(game, &w_even.complement(), odd)
}

fn verify_game(label: String, game: &ParityGame, budget: &OracleBudget) -> VerifyCase {
    let mut problems = Vec::new();
    let z = zielonka_solve(game);
    if !check_strategies(game, &z.w_even, &z.sigma_even, &z.sigma_odd) {
        problems.push("zielonka strategy".to_string());
    }
    match strahler_solve(game, None) {
        Ok(s) => {
            if s.w_even != z.w_even || s.w_odd != z.w_odd {
                problems.push("strahler partition".to_string());
            }
            if !check_strategies(game, &s.w_even, &s.sigma_even, &s.sigma_odd) {
                problems.push("strahler strategy".to_string());
            }
        }
        Err(e) => problems.push(format!("strahler failed: {e}")),
    }
    // Games beyond the oracle budget are checked by the other two only.
    if let Ok((w_even, w_odd)) = brute_force_solve(game, budget) {
        if w_even != z.w_even || w_odd != z.w_odd {
            problems.push("brute partition".to_string());
        }
    }
    VerifyCase { label, problems }
}

fn verify(
    file: Option<&Path>,
    seed: u64,
    count: u64,
    n: usize,
    d: u32,
    json: bool,
) -> Result<ExitCode> {
    let budget = budget()?;
    let cases: Vec<VerifyCase> = match file {
        Some(path) => {
            let f = load(path)?;
            vec![verify_game(path.display().to_string(), &f.game, &budget)]
        }
        None => {
            let params = GenParams {
                n,
                d,
                min_degree: 1,
                max_degree: 3.min(n),
                audrey_fraction: 0.5,
            };
            // Fail on bad parameters before fanning out.
            generate_random(seed, params)?;
            (seed..seed + count)
                .into_par_iter()
                .map(|s| {
                    let game = generate_random(s, params).expect("parameters checked");
                    verify_game(format!("seed {s}"), &game, &budget)
                })
                .collect()
        }
    };
    let failures: Vec<&VerifyCase> = cases.iter().filter(|c| !c.problems.is_empty()).collect();
    if json {
        print_json(&serde_json::json!({
            "games": cases.len(),
            "failures": failures,
        }))?;
    } else {
        for case in &failures {
            println!("{}: {}", case.label, case.problems.join(", "));
        }
        println!("{} games, {} disagreements", cases.len(), failures.len());
    }
    Ok(if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
