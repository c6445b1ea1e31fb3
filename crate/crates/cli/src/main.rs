use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use foxcalc::catalog::{builtin_catalog, lookup, FiniteGroup};
use foxcalc::finquot::{enumerate_homs, GroupHom, Modulus};
use foxcalc::fox::fox_derive_word;
use foxcalc::freegroup::{all_gen_sets, format_gen_set, parse_gen_set, parse_word, GenIndex};
use foxcalc::freiheit::{certify, gildenhuys_check, Certificate};
use foxcalc::membership::{theorem2_sweep, MembershipContext, SweepConfig};
use foxcalc::schreier::SchreierSystem;

#[derive(Parser)]
#[command(
    name = "foxcalc",
    version,
    about = "Fox calculus on free groups and finite quotients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Fox derivative D_k(w).
    Derive {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        word: String,
    },
    /// Inspect the built-in group catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print the Schreier transversal and free generators of ker(hom).
    Schreier {
        #[arg(long)]
        rank: usize,
        /// Catalog name or path to a group file.
        #[arg(long)]
        group: String,
        /// Images of x1, x2, ... as element indices, e.g. 0,1.
        #[arg(long)]
        images: String,
    },
    /// Compare the derivative criterion with subgroup membership for one word.
    Theorem2 {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        group: String,
        /// Generator images; without this every hom into the group is tried.
        #[arg(long)]
        images: Option<String>,
        #[arg(long, default_value_t = 0)]
        d: i64,
        /// Generator subset K, e.g. 1,2 (empty for none).
        #[arg(long = "K", default_value = "")]
        k: String,
        #[arg(long)]
        word: String,
    },
    /// Compare both sides over all homs, subsets K and short words.
    #[command(name = "theorem2-sweep")]
    Theorem2Sweep {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 0)]
        d: i64,
        #[arg(long)]
        maxlen: usize,
        /// Extra random words per configuration.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print one line per configuration.
        #[arg(long)]
        verbose: bool,
    },
    /// Certify whether D_n(r) vanishes modulo Z[F](R-1).
    Freiheit {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 16)]
        limit: usize,
    },
    /// Check the relator x1^p [x2, x1^p] against catalog p-groups.
    Gildenhuys {
        #[arg(long)]
        p: u64,
        /// Largest group order searched (default 16 for p=2, 27 for p=3).
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List group names and orders.
    List,
    /// Print a group in the table file format.
    Show { name: String },
}

fn load_group(name_or_path: &str) -> Result<Arc<FiniteGroup>> {
    match lookup(name_or_path) {
        Ok(group) => Ok(group),
        Err(e) if Path::new(name_or_path).is_file() => {
            let text = std::fs::read_to_string(name_or_path)
                .with_context(|| format!("reading {name_or_path}"))?;
            let group = FiniteGroup::load(&text)
                .with_context(|| format!("loading {name_or_path} ({e})"))?;
            Ok(Arc::new(group))
        }
        Err(e) => Err(e.into()),
    }
}

fn parse_images(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .with_context(|| format!("bad element index {part:?}"))
        })
        .collect()
}

fn build_hom(group: Arc<FiniteGroup>, rank: usize, images: &str) -> Result<GroupHom> {
    let images = parse_images(images)?;
    if images.len() != rank {
        bail!("expected {rank} images, got {}", images.len());
    }
    Ok(GroupHom::new(group, images)?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Derive { rank, k, word } => {
            let w = parse_word(&word, rank)?;
            println!("{}", fox_derive_word(GenIndex::new(k, rank)?, &w));
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            for group in builtin_catalog() {
                println!("{} {}", group.name(), group.order());
            }
        }
        Command::Catalog {
            action: CatalogAction::Show { name },
        } => print!("{}", lookup(&name)?.save()),
        Command::Schreier {
            rank,
            group,
            images,
        } => {
            let hom = build_hom(load_group(&group)?, rank, &images)?;
            print!("{}", SchreierSystem::build(&hom));
        }
        Command::Theorem2 {
            rank,
            group,
            images,
            d,
            k,
            word,
        } => {
            let group = load_group(&group)?;
            let gens = parse_gen_set(&k, rank)?;
            let d = Modulus::new(d)?;
            let v = parse_word(&word, rank)?;
            let single = images.is_some();
            let homs: Vec<GroupHom> = match images {
                Some(images) => vec![build_hom(group, rank, &images)?],
                None => enumerate_homs(rank, &group).collect(),
            };
            let mut disagree = false;
            for hom in homs {
                let verdict = MembershipContext::new(&hom, &gens, d)?.check(&v)?;
                disagree |= verdict.is_disagreement();
                if single {
                    println!("{verdict}");
                } else {
                    println!("hom={hom} {verdict}");
                }
            }
            if disagree {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Theorem2Sweep {
            rank,
            group,
            d,
            maxlen,
            random,
            seed,
            verbose,
        } => {
            let config = SweepConfig {
                rank,
                groups: vec![load_group(&group)?],
                gen_sets: all_gen_sets(rank),
                moduli: vec![Modulus::new(d)?],
                max_len: maxlen,
                random_words: random,
                random_max_len: maxlen,
                seed,
            };
            let report = theorem2_sweep(&config)?;
            if verbose {
                print!("{report}");
            } else {
                for o in report
                    .outcomes
                    .iter()
                    .filter(|o| !o.disagreements.is_empty())
                {
                    for (w, v) in &o.disagreements {
                        println!("{} K={} {w}: {v}", o.hom, format_gen_set(&o.gens));
                    }
                }
                println!("{}", report.summary());
            }
            if report.disagreements() > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Freiheit {
            rank,
            n,
            word,
            limit,
        } => {
            let r = parse_word(&word, rank)?;
            let certificate = certify(&r, GenIndex::new(n, rank)?, limit)?;
            println!("{certificate}");
            if certificate == Certificate::Unknown {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Gildenhuys { p, limit } => {
            let limit = limit.unwrap_or(if p == 3 { 27 } else { 16 });
            let report = gildenhuys_check(p, limit)?;
            print!("{report}");
            if !report.assertions_hold() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
