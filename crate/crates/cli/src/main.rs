//! `rainbow`: generate graph collections, check rainbow panconnectivity,
//! classify extremal structure, replay the explicit constructions and run
//! seeded verification campaigns.
//!
//! Exit codes: 0 property holds / clean pass, 1 property fails, 2 usage error
//! or infeasible request, 3 inconclusive (search budget exhausted).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rainbow_core::analysis::{
    classify_ham_path_obstruction, is_rainbow_panconnected, recognize_clique_split, recognize_f_family,
    recognize_join_partition, ObstructionCase, Verdict,
};
use rainbow_core::campaign::{run_campaign, run_single_trial, CampaignConfig, CampaignId};
use rainbow_core::instances::{generate, Family, GenSpec, LemmaShape};
use rainbow_core::proof::{replay_proof, ReplayVerdict};
use rainbow_core::search::DEFAULT_NODE_LIMIT;
use rainbow_core::{BitSet, GraphCollection, Outcome, SearchBudget, Searcher};

const HOLDS: u8 = 0;
const FAILS: u8 = 1;
const USAGE: u8 = 2;
const INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow paths in graph collections")]
struct Cli {
    /// Node budget per search call
    #[arg(long, global = true, env = "RAINBOW_BUDGET", default_value_t = DEFAULT_NODE_LIMIT)]
    budget: u64,

    /// Worker threads for trials and pairs (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Random,
    /// Exceptional family: identical copies of an independent set joined to a
    /// graph with a single-edge component
    F,
    TwoCliques,
    JoinPartition,
    /// Planted configuration for one of the explicit constructions
    Shape,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a collection; writes the instance and its spec as JSON
    Gen {
        #[arg(long, value_enum, default_value = "random")]
        family: FamilyArg,
        /// Shape name for `--family shape`
        #[arg(long)]
        shape: Option<String>,
        #[arg(long)]
        n: usize,
        /// Number of graphs (default: what the family requires, else n - 1)
        #[arg(long)]
        m: Option<usize>,
        /// Minimum degree for random collections (default: ceil((n+1)/2))
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edges of the joined side for `--family f`, local indices, e.g. `0-1,2-3`
        #[arg(long, value_delimiter = ',', value_parser = parse_edge)]
        q2_edges: Option<Vec<(usize, usize)>>,
        /// Instance file; the spec goes to `<out>.spec.json`. Stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check rainbow panconnectivity, or a single pair and length
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["X", "Y"], requires = "k")]
        pair: Option<Vec<usize>>,
        #[arg(long, requires = "pair")]
        k: Option<usize>,
        /// Write the certificate JSON here
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Recognize the exceptional family, two cliques or a join partition
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run a seeded verification campaign
    Verify {
        #[arg(long, alias = "theorem")]
        campaign: String,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rerun one trial with this exact seed (single n only)
        #[arg(long, conflicts_with_all = ["trials", "seed"])]
        trial_seed: Option<u64>,
        /// Report JSON file; stdout if absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild every path from the explicit constructions and cross-check by search
    Replay {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let (u, v) = s.split_once('-').ok_or_else(|| format!("expected `u-v`, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((p(u)?, p(v)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let budget = SearchBudget::new(cli.budget)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            bail!("--jobs must be positive");
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build()?;
    pool.install(|| match cli.command {
        Command::Gen { family, shape, n, m, min_degree, seed, q2_edges, out } => {
            cmd_gen(family, shape, n, m, min_degree, seed, q2_edges, out.as_deref())
        }
        Command::Check { input, pair, k, cert } => cmd_check(&input, pair.zip(k), cert.as_deref(), budget),
        Command::Classify { input } => cmd_classify(&input, budget),
        Command::Verify { campaign, n, trials, seed, trial_seed, out } => {
            cmd_verify(&campaign, n, trials, seed, trial_seed, out.as_deref(), budget)
        }
        Command::Replay { input, out } => cmd_replay(&input, out.as_deref(), budget),
    })
}

fn read_instance(path: &Path) -> anyhow::Result<GraphCollection> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    GraphCollection::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, json: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, format!("{json}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    family: FamilyArg,
    shape: Option<String>,
    n: usize,
    m: Option<usize>,
    min_degree: Option<usize>,
    seed: u64,
    q2_edges: Option<Vec<(usize, usize)>>,
    out: Option<&Path>,
) -> anyhow::Result<u8> {
    if shape.is_some() != matches!(family, FamilyArg::Shape) {
        bail!("--shape goes together with --family shape");
    }
    if q2_edges.is_some() && !matches!(family, FamilyArg::F) {
        bail!("--q2-edges only applies to --family f");
    }
    let family = match family {
        FamilyArg::Random => Family::Random,
        FamilyArg::F => Family::FFamily { q2_edges },
        FamilyArg::TwoCliques => Family::TwoCliquesObstruction,
        FamilyArg::JoinPartition => Family::JoinPartitionObstruction,
        FamilyArg::Shape => {
            let name = shape.unwrap_or_default();
            let shape = LemmaShape::from_name(&name).with_context(|| {
                let names: Vec<_> = LemmaShape::ALL.iter().map(|s| s.name()).collect();
                format!("unknown shape `{name}`; expected one of {}", names.join(", "))
            })?;
            Family::LemmaShape { shape }
        }
    };
    let default_m = match family {
        Family::TwoCliquesObstruction | Family::JoinPartitionObstruction => n,
        _ => n.saturating_sub(1),
    };
    let spec = GenSpec { n, m: m.unwrap_or(default_m), min_degree: min_degree.unwrap_or(n / 2 + 1), seed, family };
    let generated = generate(&spec)?;
    let text = generated.collection.to_text();
    match out {
        Some(p) => {
            fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            let mut spec_path = p.as_os_str().to_owned();
            spec_path.push(".spec.json");
            fs::write(&spec_path, format!("{}\n", spec.to_json()))
                .with_context(|| format!("writing {}", Path::new(&spec_path).display()))?;
        }
        None => {
            print!("{text}");
            eprintln!("{}", spec.to_json());
        }
    }
    Ok(HOLDS)
}

fn cmd_check(
    input: &Path,
    query: Option<(Vec<usize>, usize)>,
    cert: Option<&Path>,
    budget: SearchBudget,
) -> anyhow::Result<u8> {
    let coll = read_instance(input)?;
    if let Some((pair, k)) = query {
        let (x, y) = (pair[0], pair[1]);
        let mut searcher = Searcher::new(coll.view(), budget);
        let outcome = searcher.path(x, y, k, BitSet::EMPTY)?;
        let (status, code) = match &outcome {
            Outcome::Found(_) => ("found", HOLDS),
            Outcome::NotFound => ("none", FAILS),
            Outcome::Exhausted => ("inconclusive", INCONCLUSIVE),
        };
        match &outcome {
            Outcome::Found(p) => println!("rainbow {k}-path {x} -> {y}: {:?} colors {:?}", p.vertices, p.colors),
            Outcome::NotFound => println!("no rainbow {k}-path joins {x} and {y}"),
            Outcome::Exhausted => println!("inconclusive: budget exhausted for ({x}, {y}, {k})"),
        }
        if let Some(p) = cert {
            let doc = json!({ "x": x, "y": y, "k": k, "status": status, "path": outcome.found() });
            emit(Some(p), &serde_json::to_string_pretty(&doc)?)?;
        }
        return Ok(code);
    }

    let certificate = is_rainbow_panconnected(&coll, budget)?;
    let code = match (certificate.verdict, certificate.failure) {
        (Verdict::Holds, _) => {
            println!("holds: rainbow panconnected (n = {}, m = {})", certificate.n, certificate.m);
            HOLDS
        }
        (Verdict::Fails, Some(t)) => {
            println!("fails: no rainbow {}-path joins {} and {}", t.k, t.x, t.y);
            println!("failing triple ({}, {}, {})", t.x, t.y, t.k);
            FAILS
        }
        _ => {
            println!("inconclusive: search budget exhausted");
            INCONCLUSIVE
        }
    };
    if let Some(p) = cert {
        emit(Some(p), &certificate.to_json())?;
    }
    Ok(code)
}

fn cmd_classify(input: &Path, budget: SearchBudget) -> anyhow::Result<u8> {
    let coll = read_instance(input)?;
    let (n, m) = (coll.n(), coll.m());
    let recognized = recognize_f_family(&coll)
        .map(|w| ("f_family", w))
        .or_else(|| recognize_clique_split(&coll).map(|w| ("two_cliques", w)))
        .or_else(|| recognize_join_partition(&coll).map(|w| ("join_partition", w)));
    if let Some((class, witness)) = recognized {
        println!("{}", serde_json::to_string_pretty(&json!({ "class": class, "witness": witness }))?);
        eprintln!("{class}: partition {:?}", witness.partition);
        return Ok(HOLDS);
    }

    // Nothing structural: report whether a rainbow Hamiltonian path exists.
    let (case, path) = if m == n {
        let r = classify_ham_path_obstruction(&coll, budget)?;
        (r.case, r.path)
    } else if m + 1 >= n {
        match Searcher::new(coll.view(), budget).any_ham_path()? {
            Outcome::Found(p) => (ObstructionCase::HamPath, Some(p)),
            Outcome::NotFound => (ObstructionCase::Unresolved, None),
            Outcome::Exhausted => (ObstructionCase::Inconclusive, None),
        }
    } else {
        (ObstructionCase::Unresolved, None)
    };
    let doc = json!({ "class": "none", "case": case.to_string(), "path": path });
    println!("{}", serde_json::to_string_pretty(&doc)?);
    eprintln!("none / case {case}");
    Ok(if case == ObstructionCase::Inconclusive { INCONCLUSIVE } else { HOLDS })
}

fn cmd_verify(
    campaign: &str,
    ns: Vec<usize>,
    trials: usize,
    seed: u64,
    trial_seed: Option<u64>,
    out: Option<&Path>,
    budget: SearchBudget,
) -> anyhow::Result<u8> {
    let campaign: CampaignId = campaign.parse().with_context(|| {
        let names: Vec<_> = CampaignId::ALL.iter().map(|c| c.name()).collect();
        format!("campaigns: {}", names.join(", "))
    })?;
    let report = match trial_seed {
        Some(s) => {
            let [n] = ns[..] else { bail!("--trial-seed needs exactly one --n") };
            run_single_trial(campaign, n, s, budget)?
        }
        None => run_campaign(&CampaignConfig { campaign, ns, trials, seed, budget })?,
    };
    emit(out, &report.to_json())?;
    eprint!("{}", report.summary());
    Ok(if report.fail > 0 {
        FAILS
    } else if report.inconclusive > 0 {
        INCONCLUSIVE
    } else {
        HOLDS
    })
}

fn cmd_replay(input: &Path, out: Option<&Path>, budget: SearchBudget) -> anyhow::Result<u8> {
    let coll = read_instance(input)?;
    let certificate = replay_proof(&coll, budget)?;
    emit(out, &serde_json::to_string_pretty(&certificate)?)?;
    eprintln!(
        "{:?}: {} pairs, {} discrepancies, routes {:?}",
        certificate.verdict,
        certificate.pairs.len(),
        certificate.discrepancy_count,
        certificate.routes
    );
    if certificate.discrepancy_count > 0 {
        return Ok(FAILS);
    }
    Ok(match certificate.verdict {
        ReplayVerdict::Constructed | ReplayVerdict::Exceptional | ReplayVerdict::Delegated => HOLDS,
        ReplayVerdict::Violated => FAILS,
        ReplayVerdict::Inconclusive => INCONCLUSIVE,
    })
}
