//! `basis-reconfig`: decide, solve and check basis-sequence reconfiguration
//! instances from the command line.
//!
//! Exit codes: 0 on success or YES, 1 on NO or a failed verification, 2 on
//! usage or input errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use basis_reconfig::brute::{bfs_solve, brute_coloops, DEFAULT_STATE_CAP};
use basis_reconfig::gadget::{build_gadget, cover_to_sequence, sequence_to_cover, SetCoverInstance};
use basis_reconfig::{
    build_union, coloops, decide_with_certificate, random_instance, solve, verify, ElementSet, Move,
    ProblemInstance, Profile, RandomConfig, ReconfigSequence,
};

#[derive(Parser)]
#[command(name = "basis-reconfig", version, about = "Reconfiguration of disjoint matroid basis sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input file, stdin when omitted or "-".
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Output file, stdout when omitted or "-".
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print YES if the target is reachable, otherwise NO with the coloop certificate.
    Decide(Io),
    /// Print a move sequence from source to target as JSON lines.
    Solve(Io),
    /// Replay a move list against an instance.
    Verify {
        #[command(flatten)]
        io: Io,
        /// Move list as JSON lines or a JSON array ("-" for stdin).
        #[arg(short, long)]
        moves: PathBuf,
    },
    /// Print the coloops of the matroid union as a sorted JSON array.
    Coloops(Io),
    /// Print the union exchange graph of the source in DOT.
    Graph(Io),
    /// Shortest move sequence by exhaustive search.
    BruteSolve {
        #[command(flatten)]
        io: Io,
        /// Refuse once this many states have been visited.
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        cap_states: usize,
    },
    /// Coloops by enumerating all bases.
    BruteColoops(Io),
    /// Build the two-matroid instance for a Set Cover JSON file.
    GenGadget(Io),
    /// Moves for a set cover of a gadget, as JSON lines.
    Cover2seq {
        #[command(flatten)]
        io: Io,
        /// Comma-separated set indices.
        #[arg(short, long, value_delimiter = ',', required = true)]
        cover: Vec<usize>,
    },
    /// Set cover extracted from a verified gadget move list.
    Seq2cover {
        #[command(flatten)]
        io: Io,
        /// Move list as JSON lines or a JSON array ("-" for stdin).
        #[arg(short, long)]
        moves: PathBuf,
    },
    /// Seeded random instance.
    Random {
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of matroids, 1..=8.
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        /// uniform, partition, graphic or mixed.
        #[arg(long, default_value = "mixed")]
        profile: Profile,
        /// Size of the union ground set, 1..=4096.
        #[arg(long, default_value_t = 8)]
        size: usize,
        /// Reach the target by random legal moves, so the answer is YES.
        #[arg(long)]
        yes_by_walk: bool,
    },
}

// Exit code plus the diagnostic for stderr.
struct Failure(u8, String);

type Outcome = Result<u8, Failure>;

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure(2, e.to_string())
}

fn is_stdio(p: &Option<PathBuf>) -> bool {
    p.as_deref().is_none_or(|p| p == Path::new("-"))
}

fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    let mut text = String::new();
    match path.filter(|p| *p != Path::new("-")) {
        Some(p) => text = fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?,
        None => {
            io::stdin().read_to_string(&mut text).map_err(input_error)?;
        }
    }
    Ok(text)
}

fn load(io: &Io) -> Result<ProblemInstance, Failure> {
    ProblemInstance::from_json(&read_text(io.input.as_deref())?).map_err(input_error)
}

fn load_set_cover(io: &Io) -> Result<SetCoverInstance, Failure> {
    let sc: SetCoverInstance =
        serde_json::from_str(&read_text(io.input.as_deref())?).map_err(input_error)?;
    sc.validate().map_err(input_error)?;
    Ok(sc)
}

fn load_moves(path: &Path) -> Result<ReconfigSequence, Failure> {
    let text = read_text(Some(path))?;
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(&text).map_err(|e| input_error(format!("moves: {e}")));
    }
    let mut moves = Vec::new();
    for (n, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let mv: Move = serde_json::from_str(line)
            .map_err(|e| input_error(format!("moves line {}: {e}", n + 1)))?;
        moves.push(mv);
    }
    Ok(ReconfigSequence::new(moves))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    if is_stdio(output) {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes()).map_err(input_error)
    } else {
        let p = output.as_ref().expect("checked above");
        fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display())))
    }
}

fn move_lines(seq: &ReconfigSequence) -> String {
    seq.iter()
        .enumerate()
        .map(|(t, mv)| {
            json!({"step": t, "matroid": mv.matroid, "remove": mv.remove, "add": mv.add}).to_string() + "\n"
        })
        .collect()
}

fn set_json(set: &ElementSet) -> String {
    serde_json::to_string(set).expect("element sets serialize") + "\n"
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Decide(io) => {
            let inst = load(&io)?;
            let d = decide_with_certificate(&inst.matroids, &inst.source, &inst.target).map_err(input_error)?;
            if d.reconfigurable {
                emit(&io.output, "YES\n")?;
                Ok(0)
            } else {
                let cert = json!({
                    "coloops": d.coloops,
                    "source": d.source_coloops,
                    "target": d.target_coloops,
                });
                emit(&io.output, &format!("NO\n{cert}\n"))?;
                Ok(1)
            }
        }
        Command::Solve(io) => {
            let inst = load(&io)?;
            match solve(&inst.matroids, &inst.source, &inst.target).map_err(input_error)? {
                Some(seq) => {
                    emit(&io.output, &move_lines(&seq))?;
                    Ok(0)
                }
                None => Err(Failure(1, "target is not reachable: coloop placements differ".into())),
            }
        }
        Command::Verify { io, moves } => {
            if is_stdio(&io.input) && moves == Path::new("-") {
                return Err(input_error("instance and moves cannot both come from stdin"));
            }
            let inst = load(&io)?;
            let seq = load_moves(&moves)?;
            let report = verify(&inst.matroids, &inst.source, &inst.target, &seq);
            emit(&io.output, &(serde_json::to_string(&report).map_err(input_error)? + "\n"))?;
            Ok(if report.ok { 0 } else { 1 })
        }
        Command::Coloops(io) => {
            let inst = load(&io)?;
            let k = coloops(&inst.matroids, &inst.source).map_err(input_error)?;
            emit(&io.output, &set_json(&k))?;
            Ok(0)
        }
        Command::Graph(io) => {
            let inst = load(&io)?;
            let g = build_union(&inst.matroids, &inst.source).map_err(input_error)?;
            emit(&io.output, &g.to_dot())?;
            Ok(0)
        }
        Command::BruteSolve { io, cap_states } => {
            let inst = load(&io)?;
            match bfs_solve(&inst.matroids, &inst.source, &inst.target, cap_states).map_err(input_error)? {
                Some((_, seq)) => {
                    emit(&io.output, &move_lines(&seq))?;
                    Ok(0)
                }
                None => Err(Failure(1, "target is not reachable".into())),
            }
        }
        Command::BruteColoops(io) => {
            let inst = load(&io)?;
            let k = brute_coloops(&inst.matroids).map_err(input_error)?;
            emit(&io.output, &set_json(&k))?;
            Ok(0)
        }
        Command::GenGadget(io) => {
            let sc = load_set_cover(&io)?;
            if sc.n() < 4 {
                eprintln!("warning: universe has {} < 4 elements; the length/cover correspondence needs n >= 4", sc.n());
            }
            let g = build_gadget(&sc).map_err(input_error)?;
            let inst = ProblemInstance::new(g.matroids, g.source, g.target).map_err(input_error)?;
            emit(&io.output, &inst.to_json().map_err(input_error)?)?;
            Ok(0)
        }
        Command::Cover2seq { io, cover } => {
            let sc = load_set_cover(&io)?;
            let g = build_gadget(&sc).map_err(input_error)?;
            let seq = cover_to_sequence(&g, &cover).map_err(input_error)?;
            emit(&io.output, &move_lines(&seq))?;
            Ok(0)
        }
        Command::Seq2cover { io, moves } => {
            if is_stdio(&io.input) && moves == Path::new("-") {
                return Err(input_error("set cover and moves cannot both come from stdin"));
            }
            let sc = load_set_cover(&io)?;
            let g = build_gadget(&sc).map_err(input_error)?;
            let seq = load_moves(&moves)?;
            // an invalid sequence is a failed verification, not bad input
            let cover = sequence_to_cover(&g, &seq).map_err(|e| Failure(1, e.to_string()))?;
            emit(&io.output, &(serde_json::to_string(&cover).map_err(input_error)? + "\n"))?;
            Ok(0)
        }
        Command::Random { output, seed, k, profile, size, yes_by_walk } => {
            let cfg = RandomConfig::new(seed, k, profile, size).with_walk(yes_by_walk);
            let inst = random_instance(&cfg).map_err(input_error)?;
            emit(&output, &inst.to_json().map_err(input_error)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("basis-reconfig: {msg}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn move_lines_round_trip_in_both_formats() {
        let seq = ReconfigSequence::new(vec![Move::new(0, "a", "c"), Move::new(1, 2, "a")]);
        let lines = move_lines(&seq);
        assert_eq!(lines.lines().next(), Some(r#"{"step":0,"matroid":0,"remove":"a","add":"c"}"#));
        let dir = std::env::temp_dir().join(format!("basis-reconfig-moves-{}", std::process::id()));
        fs::write(&dir, &lines).unwrap();
        assert_eq!(load_moves(&dir).ok().unwrap(), seq);
        fs::write(&dir, serde_json::to_string(&seq).unwrap()).unwrap();
        assert_eq!(load_moves(&dir).ok().unwrap(), seq);
        fs::write(&dir, "{\"matroid\":0}\n").unwrap();
        let Err(Failure(code, msg)) = load_moves(&dir) else { panic!("incomplete move accepted") };
        assert_eq!(code, 2);
        assert!(msg.contains("line 1"));
        fs::remove_file(&dir).unwrap();
    }

    #[test]
    fn cli_parses_subcommands() {
        Cli::try_parse_from(["basis-reconfig", "cover2seq", "--cover", "0,2"]).unwrap();
        Cli::try_parse_from(["basis-reconfig", "random", "--profile", "graphic", "--yes-by-walk"]).unwrap();
        assert!(Cli::try_parse_from(["basis-reconfig", "verify"]).is_err());
        assert!(Cli::try_parse_from(["basis-reconfig", "cover2seq"]).is_err());
    }
}
