//! Command-line workbench for singular marked graph mosaics.
//!
//! Exit codes: 0 success / proved-yes, 1 proved-no, 2 unknown, 3 and above
//! usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use smg_core::analysis::{self, Budget, Verdict};
use smg_core::census::{self, BoundsConfig, CensusFilter, LemmaConfig};
use smg_core::equiv::{equivalent_within, SearchCaps};
use smg_core::io;
use smg_core::mosaic::Mosaic;
use smg_core::moves::{self, default_table, load_move_table, Direction, MoveTable};
use smg_core::resolution::{resolve_mosaic, trace};
use smg_core::tile::{Sign, Symmetry, TileKind};

#[derive(Parser)]
#[command(name = "smg", version, about = "workbench for singular marked graph mosaics")]
struct Cli {
    /// Move-table document overriding the built-in table.
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Ascii,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Check suitable connectivity, reporting offending cells.
    Validate { file: PathBuf },
    /// Render a mosaic.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ascii")]
        style: StyleArg,
    },
    /// Resolve every marked and singular vertex in one direction.
    Resolve {
        file: PathBuf,
        #[arg(long, value_enum)]
        sign: SignArg,
    },
    /// Strand-follow a resolution and print component count and PD code.
    Trace {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
    },
    /// Are both resolutions trivial links?
    Admissible { file: PathBuf },
    /// Are both resolutions H-trivial links?
    #[command(name = "h-admissible")]
    HAdmissible { file: PathBuf },
    /// Count crossings, marked vertices and singular vertices.
    Chs { file: PathBuf },
    /// Surface statistics: component count and Euler characteristic.
    Surface { file: PathBuf },
    /// Move-table operations.
    Moves {
        #[command(subcommand)]
        cmd: MovesCmd,
    },
    /// Bounded equivalence search between two mosaics.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 6)]
        board_cap: usize,
        #[arg(long, default_value_t = 20)]
        depth_cap: usize,
    },
    /// Enumerate suitably connected n-mosaics under a filter.
    Census {
        #[arg(long)]
        n: usize,
        /// Comma-separated predicates: singular>=K, singular=K, chs<=K,
        /// admissible, surface=K.
        #[arg(long, default_value = "")]
        filter: String,
        /// Print each accepted board as a document.
        #[arg(long)]
        print: bool,
    },
    /// Exact suitably connected count via the frontier transfer.
    Count {
        #[arg(long)]
        n: usize,
        /// Tile codes restricting the alphabet, e.g. ".abcd-|sz".
        #[arg(long)]
        tileset: Option<String>,
    },
    /// Boundary-ring completions of an inner block.
    Twofold { file: PathBuf },
    /// Report removable kinks.
    Kinks { file: PathBuf },
    /// Certified mosaic-number bounds.
    Bounds {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        board_cap: usize,
        #[arg(long, default_value_t = 16)]
        depth_cap: usize,
    },
    /// Machine-checkable support for the one-singular-vertex lemma.
    #[command(name = "lemma-report")]
    LemmaReport {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        sample: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Convert an H-admissible pattern to its singular form.
    ConvertSingularity {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "upper")]
        kind: KindArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Upper,
    Lower,
    Both,
}

#[derive(Subcommand)]
enum MovesCmd {
    /// List the rules of the move table.
    List,
    /// List every applicable move site on a board.
    Applicable { file: PathBuf },
    /// Apply a move at an anchor.
    Apply {
        file: PathBuf,
        #[arg(long)]
        rule: String,
        /// 1-based row of the window anchor.
        #[arg(long)]
        row: usize,
        /// 1-based column of the window anchor.
        #[arg(long)]
        col: usize,
        #[arg(long, default_value_t = 0)]
        orientation: usize,
        #[arg(long, default_value_t = false)]
        backward: bool,
    },
}

fn load(path: &PathBuf) -> Result<Mosaic, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    io::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_table(cli_table: &Option<PathBuf>) -> Result<MoveTable, String> {
    match cli_table {
        None => Ok(default_table().clone()),
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            load_move_table(&text).map_err(|e| e.to_string())
        }
    }
}

fn sign_of(arg: SignArg) -> Sign {
    match arg {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    }
}

fn verdict_exit(v: &Verdict) -> ExitCode {
    println!("{}", v.state());
    println!("  {}", v.witness());
    ExitCode::from(v.exit_code())
}

fn parse_filter(spec: &str) -> Result<CensusFilter, String> {
    let mut filter = CensusFilter::empty();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if part == "admissible" {
            filter.require_admissible = true;
        } else if let Some(v) = part.strip_prefix("singular>=") {
            filter.min_singular = v.parse().map_err(|_| format!("bad filter {part:?}"))?;
        } else if let Some(v) = part.strip_prefix("singular=") {
            let n = v.parse().map_err(|_| format!("bad filter {part:?}"))?;
            filter.min_singular = n;
            filter.max_singular = Some(n);
        } else if let Some(v) = part.strip_prefix("chs<=") {
            filter.max_chs = Some(v.parse().map_err(|_| format!("bad filter {part:?}"))?);
        } else if let Some(v) = part.strip_prefix("chs>=") {
            filter.min_chs = v.parse().map_err(|_| format!("bad filter {part:?}"))?;
        } else if let Some(v) = part.strip_prefix("surface=") {
            filter.surface_target = Some(v.parse().map_err(|_| format!("bad filter {part:?}"))?);
        } else {
            return Err(format!("unknown filter predicate {part:?}"));
        }
    }
    Ok(filter)
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    let budget = Budget::from_env();
    let table = load_table(&cli.table)?;
    match cli.command {
        Command::Validate { file } => {
            let m = load(&file)?;
            let report = m.validate();
            if report.suitably_connected {
                println!("suitably connected");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("not suitably connected; offenders:");
                for o in &report.offenders {
                    println!("  cell ({},{}) edges {}", o.row, o.col, o.edges);
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Render { file, style } => {
            let m = load(&file)?;
            match style {
                StyleArg::Ascii => print!("{}", io::render_ascii(&m)),
                StyleArg::Svg => print!("{}", io::render_svg(&m)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Resolve { file, sign } => {
            let m = load(&file)?;
            let r = resolve_mosaic(&m, sign_of(sign)).map_err(|e| e.to_string())?;
            print!("{}", io::serialize(&r.base));
            Ok(ExitCode::SUCCESS)
        }
        Command::Trace { file, sign } => {
            let m = load(&file)?;
            let r = resolve_mosaic(&m, sign_of(sign)).map_err(|e| e.to_string())?;
            let t = trace(&r);
            println!("components {}", t.components);
            print!("{}", t.pd.to_text());
            Ok(ExitCode::SUCCESS)
        }
        Command::Admissible { file } => {
            let m = load(&file)?;
            let v = analysis::admissible(&m, &budget).map_err(|e| e.to_string())?;
            Ok(verdict_exit(&v))
        }
        Command::HAdmissible { file } => {
            let m = load(&file)?;
            let v = analysis::h_admissible(&m, &budget).map_err(|e| e.to_string())?;
            Ok(verdict_exit(&v))
        }
        Command::Chs { file } => {
            let m = load(&file)?;
            println!("{}", m.chs());
            Ok(ExitCode::SUCCESS)
        }
        Command::Surface { file } => {
            let m = load(&file)?;
            let comps = analysis::surface_components(&m).map_err(|e| e.to_string())?;
            println!("surface components: {comps}");
            match analysis::euler_characteristic(&m, &budget) {
                Ok(chi) => println!("euler characteristic: {chi}"),
                Err(e) => println!("euler characteristic: {e}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Moves { cmd } => match cmd {
            MovesCmd::List => {
                for rule in table.rules() {
                    println!(
                        "{} ({}x{} window)",
                        rule.name, rule.window.0, rule.window.1
                    );
                }
                Ok(ExitCode::SUCCESS)
            }
            MovesCmd::Applicable { file } => {
                let m = load(&file)?;
                for site in moves::applicable_moves(&m, &table) {
                    println!("{site}");
                }
                Ok(ExitCode::SUCCESS)
            }
            MovesCmd::Apply { file, rule, row, col, orientation, backward } => {
                let m = load(&file)?;
                if orientation >= 8 {
                    return Err("orientation must be 0..8".into());
                }
                let site = moves::MoveSite {
                    rule: moves::normalize_name(&rule),
                    anchor: (row.checked_sub(1).ok_or("row is 1-based")?,
                             col.checked_sub(1).ok_or("col is 1-based")?),
                    orientation: Symmetry::ALL[orientation],
                    direction: if backward { Direction::Backward } else { Direction::Forward },
                };
                let out = moves::apply_move(&m, &table, &site).map_err(|e| e.to_string())?;
                print!("{}", io::serialize(&out));
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Equiv { a, b, board_cap, depth_cap } => {
            let ma = load(&a)?;
            let mb = load(&b)?;
            let caps = SearchCaps::new(board_cap, depth_cap);
            let v = equivalent_within(&ma, &mb, &table, caps, &budget).map_err(|e| e.to_string())?;
            if let Verdict::ProvedYes { steps, .. } = &v {
                for s in steps {
                    println!("  {s}");
                }
            }
            Ok(verdict_exit(&v))
        }
        Command::Census { n, filter, print } => {
            let filter = parse_filter(&filter)?;
            let census = census::enumerate_mosaics(n, &filter, &budget);
            println!(
                "suitably-connected {} accepted {} unknown {}",
                census.total_suitably_connected,
                census.mosaics.len(),
                census.unknown.len()
            );
            if print {
                for m in &census.mosaics {
                    print!("{}", io::serialize(m));
                    println!();
                }
            }
            for (m, why) in &census.unknown {
                println!("unknown: {} ({why})", m.key());
            }
            Ok(if census.unknown.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Count { n, tileset } => {
            let tiles: Vec<TileKind> = match tileset {
                None => TileKind::ALL.to_vec(),
                Some(s) => s
                    .chars()
                    .map(|c| TileKind::from_code(c).ok_or(format!("unknown tile code {c:?}")))
                    .collect::<Result<_, _>>()?,
            };
            println!("{}", census::count_mosaics(n, &tiles));
            Ok(ExitCode::SUCCESS)
        }
        Command::Twofold { file } => {
            let block = load(&file)?;
            let completions = census::twofold_completions(&block).map_err(|e| e.to_string())?;
            println!("{} completion(s)", completions.len());
            for m in &completions {
                print!("{}", io::serialize(m));
                println!();
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Kinks { file } => {
            let m = load(&file)?;
            let kinks = census::find_kinks(&m);
            for k in &kinks {
                println!(
                    "{:?} kink removable by {}",
                    k.kind, k.site
                );
            }
            println!("{} kink(s)", kinks.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { file, board_cap, depth_cap } => {
            let m = load(&file)?;
            let config = BoundsConfig {
                equiv_caps: SearchCaps::new(board_cap, depth_cap),
                ..BoundsConfig::default()
            };
            let report = census::mosaic_number_bounds(&m, &config).map_err(|e| e.to_string())?;
            println!("lower {} upper {}", report.lower, report.upper);
            for line in &report.certificate {
                println!("  {line}");
            }
            if report.conditional() {
                println!("conditional: {} unresolved verdict(s)", report.unresolved);
            }
            print!("{}", io::serialize(&report.upper_witness));
            Ok(if report.conditional() { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::LemmaReport { n, sample, seed } => {
            let config = LemmaConfig { board: n, sample_cap: sample, seed };
            let report = census::lemma_support_report(&config);
            println!("{}", report.summary());
            Ok(ExitCode::SUCCESS)
        }
        Command::ConvertSingularity { file, kind } => {
            let m = load(&file)?;
            let kind = match kind {
                KindArg::Upper => moves::SingularityKind::Upper,
                KindArg::Lower => moves::SingularityKind::Lower,
                KindArg::Both => moves::SingularityKind::Both,
            };
            let region = ((0, 0), (m.rows() - 1, m.cols() - 1));
            let out = moves::convert_h_singularity(&m, region, kind).map_err(|e| e.to_string())?;
            print!("{}", io::serialize(&out));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
