use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use bglab::algebra::{validate, ValidationError};
use bglab::analysis::analyze;
use bglab::checker::{
    check_identity_block, check_identity_exhaustive, check_identity_sampled, default_budget, Domains, Identity,
    Status, DEFAULT_SEED,
};
use bglab::constructions::{
    brandt_monoid_b21, brandt_semigroup, hall_semiring, involution_power, involution_power_semiring,
    kadourek_semigroup, make_group, power_semiring, subset_b, Group, GroupSpec,
};
use bglab::suite::{run_suite, Profile};
use bglab::terms::{parse_term, u_word, v_word, w_word, zeta_expand, Term, Variable};
use bglab::FiniteAlgebra;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bglab", version, about = "Finite semigroups, semirings and block-group identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and write it as JSON.
    Build(BuildArgs),
    /// Validate an algebra file and print its analysis report.
    Analyze { file: PathBuf },
    /// Print a member of a word family.
    Words(WordsArgs),
    /// Look for a counterexample to an identity.
    Check(CheckArgs),
    /// Run the verification suite.
    VerifySuite {
        #[arg(long, default_value = "quick")]
        profile: Profile,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct BuildArgs {
    #[command(subcommand)]
    construction: Option<Construction>,
    /// Output file; `.gz` compresses. Without it the JSON goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Rebuild from the `meta` of an existing algebra file.
    #[arg(long)]
    from_meta: Option<PathBuf>,
}

#[derive(Subcommand, Clone)]
enum Construction {
    B21,
    Group {
        #[arg(long)]
        group: GroupSpec,
    },
    Brandt {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        n: usize,
    },
    PowerSemiring {
        #[arg(long)]
        group: GroupSpec,
        /// Drop the empty set.
        #[arg(long)]
        nonempty: bool,
    },
    InvolutionPower {
        #[arg(long)]
        group: GroupSpec,
        /// Keep union as addition.
        #[arg(long)]
        with_add: bool,
    },
    Hall {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        no_star: bool,
    },
    Kadourek {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: usize,
    },
    SubsetB {
        #[arg(long, default_value = "S3")]
        group: GroupSpec,
        /// Subgroup members as comma-separated labels.
        #[arg(long, default_value = "e,(12)", value_delimiter = ',')]
        h: Vec<String>,
        #[arg(long, default_value = "(13)")]
        g: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    U,
    V,
    W,
    Zeta,
}

#[derive(Clone, Copy, ValueEnum)]
enum WordFormat {
    Dsl,
    Json,
}

#[derive(clap::Args)]
struct WordsArgs {
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum, default_value = "dsl")]
    format: WordFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
    Block,
}

#[derive(clap::Args)]
struct CheckArgs {
    #[arg(long)]
    algebra: PathBuf,
    #[arg(long)]
    identity: String,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: Mode,
    /// Evaluation budget; defaults to BGLAB_BUDGET or 10^8.
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// `VAR=FILE` restricts one variable; `*=FILE` sets the default.
    #[arg(long)]
    domain: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Analyze { file } => cmd_analyze(&file),
        Command::Words(args) => cmd_words(args),
        Command::Check(args) => cmd_check(args),
        Command::VerifySuite { profile, out } => cmd_verify_suite(profile, out),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn group(spec: GroupSpec) -> Result<Group> {
    Ok(Group::from_spec(spec)?)
}

fn construct(c: &Construction) -> Result<FiniteAlgebra> {
    Ok(match c {
        Construction::B21 => brandt_monoid_b21(),
        Construction::Group { group: g } => make_group(*g)?,
        Construction::Brandt { group: g, n } => brandt_semigroup(&group(*g)?, *n)?,
        Construction::PowerSemiring { group: g, nonempty } => power_semiring(&group(*g)?, *nonempty)?,
        Construction::InvolutionPower { group: g, with_add } => {
            let g = group(*g)?;
            if *with_add {
                involution_power_semiring(&g)?
            } else {
                involution_power(&g)?
            }
        }
        Construction::Hall { n, no_star } => hall_semiring(*n, !no_star)?,
        Construction::Kadourek { n, h } => kadourek_semigroup(*n, *h)?.algebra,
        Construction::SubsetB { group: g, h, g: elem } => {
            let g = group(*g)?;
            let mut mask = 0u64;
            for label in h {
                let i = g.element(label.trim()).ok_or_else(|| anyhow!("no element {label:?} in the group"))?;
                mask |= 1 << i;
            }
            let x = g.element(elem).ok_or_else(|| anyhow!("no element {elem:?} in the group"))?;
            subset_b(&g, mask, x)?.algebra(&g)?
        }
    })
}

fn from_meta(meta: &Value) -> Result<Construction> {
    let field = |k: &str| meta.get(k).ok_or_else(|| anyhow!("meta has no {k:?}"));
    let usize_field = |k: &str| -> Result<usize> {
        field(k)?.as_u64().map(|v| v as usize).ok_or_else(|| anyhow!("meta field {k:?} is not an integer"))
    };
    let bool_field = |k: &str| -> Result<bool> {
        field(k)?.as_bool().ok_or_else(|| anyhow!("meta field {k:?} is not a boolean"))
    };
    let group_field = || -> Result<GroupSpec> {
        let s = field("group")?.as_str().ok_or_else(|| anyhow!("meta group is not a string"))?;
        Ok(s.parse()?)
    };
    let name = field("construction")?.as_str().unwrap_or_default();
    Ok(match name {
        "b21" => Construction::B21,
        "group" => Construction::Group { group: group_field()? },
        "brandt" => Construction::Brandt {
            group: group_field()?,
            n: usize_field("index_count")?,
        },
        "power-semiring" => Construction::PowerSemiring {
            group: group_field()?,
            nonempty: bool_field("nonempty_only")?,
        },
        "involution-power" => Construction::InvolutionPower {
            group: group_field()?,
            with_add: false,
        },
        "involution-power-semiring" => Construction::InvolutionPower {
            group: group_field()?,
            with_add: true,
        },
        "hall" => Construction::Hall {
            n: usize_field("n")?,
            no_star: !bool_field("star")?,
        },
        "kadourek" => Construction::Kadourek {
            n: usize_field("n")?,
            h: usize_field("h")?,
        },
        "subset-b" => Construction::SubsetB {
            group: group_field()?,
            h: field("h")?
                .as_array()
                .ok_or_else(|| anyhow!("meta h is not a list"))?
                .iter()
                .map(|v| v.as_str().map(str::to_string).ok_or_else(|| anyhow!("meta h holds a non-label")))
                .collect::<Result<_>>()?,
            g: field("g")?.as_str().ok_or_else(|| anyhow!("meta g is not a label"))?.to_string(),
        },
        other => bail!("cannot rebuild construction {other:?} from meta"),
    })
}

fn cmd_build(args: BuildArgs) -> Result<ExitCode> {
    let construction = match (&args.construction, &args.from_meta) {
        (Some(_), Some(_)) => bail!("give either a construction or --from-meta, not both"),
        (Some(c), None) => c.clone(),
        (None, Some(path)) => {
            let text = read_text(path)?;
            let value: Value = serde_json::from_str(&text).context("meta file is not JSON")?;
            from_meta(value.get("meta").unwrap_or(&value))?
        }
        (None, None) => bail!("give a construction or --from-meta"),
    };
    let alg = construct(&construction)?;
    match &args.out {
        Some(path) => {
            alg.write_file(path)?;
            println!("{} elements written to {}", alg.size(), path.display());
        }
        None => {
            println!("{}", alg.to_json());
            eprintln!("{} elements", alg.size());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read_text(path: &Path) -> Result<String> {
    if path.extension().is_some_and(|e| e == "gz") {
        let alg = FiniteAlgebra::read_file(path)?;
        return Ok(alg.to_json());
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<FiniteAlgebra> {
    FiniteAlgebra::read_file(path).with_context(|| format!("loading {}", path.display()))
}

fn cmd_analyze(path: &Path) -> Result<ExitCode> {
    let alg = load(path)?;
    match validate(&alg) {
        Ok(()) => {}
        Err(ValidationError::Violation(v)) => {
            println!("{}", json!({ "valid": false, "violation": v }));
            eprintln!("error: {v}");
            return Ok(ExitCode::from(2));
        }
        Err(e) => bail!(e),
    }
    println!("{}", serde_json::to_string_pretty(&analyze(&alg))?);
    Ok(ExitCode::SUCCESS)
}

fn need<T>(v: Option<T>, name: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("{family} needs --{name}"))
}

fn cmd_words(args: WordsArgs) -> Result<ExitCode> {
    let n = args.n;
    let term: Term = match args.family {
        Family::U => u_word(n, need(args.k, "k", "u")?, need(args.m, "m", "u")?)?,
        Family::V => v_word(n, need(args.m, "m", "v")?, need(args.h, "h", "v")?)?.flatten()?,
        Family::W => w_word(n, need(args.h, "h", "w")?)?,
        Family::Zeta => zeta_expand(
            n,
            need(args.m, "m", "zeta")?,
            need(args.h, "h", "zeta")?,
            need(args.r, "r", "zeta")?,
        )?,
    };
    match args.format {
        WordFormat::Dsl => println!("{term}"),
        WordFormat::Json => {
            let letters: Vec<Value> = term
                .letters()
                .iter()
                .map(|l| json!({"indices": l.var.indices(), "exp": if l.inverse { -1 } else { 1 }}))
                .collect();
            let alphabet: Vec<Vec<u32>> = term.alphabet().iter().map(|v| v.indices().to_vec()).collect();
            println!("{}", json!({ "alphabet": alphabet, "letters": letters }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// A set file is a JSON list of labels or indices, or labels separated by
/// whitespace or commas.
fn read_set(alg: &FiniteAlgebra, path: &Path) -> Result<Vec<usize>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let lookup = |label: &str| alg.index_of(label).ok_or_else(|| anyhow!("no element {label:?} in the algebra"));
    let mut set = match serde_json::from_str::<Vec<Value>>(&text) {
        Ok(items) => items
            .iter()
            .map(|v| match v {
                Value::String(s) => lookup(s),
                Value::Number(n) => n
                    .as_u64()
                    .map(|i| i as usize)
                    .filter(|&i| i < alg.size())
                    .ok_or_else(|| anyhow!("index {n} out of range")),
                _ => bail!("set entries must be labels or indices"),
            })
            .collect::<Result<Vec<_>>>()?,
        Err(_) => text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(lookup)
            .collect::<Result<Vec<_>>>()?,
    };
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

fn parse_variable(text: &str) -> Result<Variable> {
    let term = parse_term(text)?;
    match term.letters() {
        [l] if !l.inverse => Ok(l.var.clone()),
        _ => bail!("{text:?} is not a variable"),
    }
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode> {
    let alg = load(&args.algebra)?;
    let identity: Identity = args.identity.parse()?;
    let mut domains = Domains::all();
    for spec in &args.domain {
        let (var, file) = spec.split_once('=').ok_or_else(|| anyhow!("--domain expects VAR=FILE"))?;
        let set = read_set(&alg, Path::new(file))?;
        domains = if var.trim() == "*" {
            Domains { default: Some(set), ..domains }
        } else {
            domains.with(parse_variable(var.trim())?, set)
        };
    }
    let budget = args.budget.unwrap_or_else(default_budget);
    let verdict = match args.mode {
        Mode::Exhaustive => check_identity_exhaustive(&alg, &identity, &domains, budget)?,
        Mode::Sampled => check_identity_sampled(&alg, &identity, &domains, args.samples, args.seed)?,
        Mode::Block => check_identity_block(&alg, &identity, &domains, budget)?,
    };
    println!("{}", verdict.to_json(&alg));
    Ok(match verdict.status {
        Status::Holds | Status::NoCounterexampleFound => ExitCode::SUCCESS,
        Status::Counterexample => ExitCode::from(1),
        Status::BudgetExceeded => ExitCode::from(2),
    })
}

fn cmd_verify_suite(profile: Profile, out: Option<PathBuf>) -> Result<ExitCode> {
    let report = run_suite(profile);
    for c in &report.checks {
        let status = match (c.passed, c.mandatory) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (optional)",
        };
        println!("{:<40} {status:<16} {:>10.1} ms  {}", c.id, c.wall_ms, c.detail);
    }
    println!("suite {}", if report.pass { "PASS" } else { "FAIL" });
    if let Some(path) = out {
        fs::write(&path, serde_json::to_string_pretty(&report)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
