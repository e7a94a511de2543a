//! `woc`: count, enumerate and cross-check weak-ordering chains grown under
//! a stopping condition.
//!
//! Exit codes: 0 on success, 1 when independent engines disagree or a
//! verification fails, 2 on usage errors.

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use woc_core::bijections::{
    chain_from_colored, colored_from_chain, marked_perm_from_new_inactive,
    new_inactive_from_marked_perm, weighted_count, SiteKind,
};
use woc_core::chain::{Relation, StoppingPattern};
use woc_core::counting::{counts_table, series_counts_table, LevelCounts};
use woc_core::series::{gf, Gf, GfName};
use woc_core::treesim::{enumerate_leaves, oracle_tally, tally, LeafClass, SimConfig};
use woc_core::Family;

#[derive(Parser)]
#[command(
    name = "woc",
    version,
    about = "Exact enumeration of weak-ordering chains under stopping conditions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tabulate per-level leaf counts.
    Count {
        #[command(flatten)]
        condition: ConditionArg,
        /// Largest level to tabulate.
        #[arg(long)]
        n_max: usize,
        /// Which counting engine(s) to run.
        #[arg(long, value_enum, default_value_t = EngineArg::All)]
        engine: EngineArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
        format: FormatArg,
        /// Cap on simultaneously active chains in the simulation engine.
        #[arg(long, default_value_t = SimConfig::default().frontier_cap)]
        frontier_cap: usize,
    },
    /// List the leaves of one level.
    Enumerate {
        #[command(flatten)]
        condition: ConditionArg,
        /// Level to enumerate.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = WhichArg::Active)]
        which: WhichArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
        format: FormatArg,
        #[arg(long, default_value_t = SimConfig::default().frontier_cap)]
        frontier_cap: usize,
    },
    /// Expand a cataloged generating function.
    Series {
        /// Catalog name: C, E, G, N, L, A3, B3, W3, A4, B4, W4, A5, B5, W5.
        #[arg(long)]
        name: String,
        /// Truncation order.
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
        format: FormatArg,
    },
    /// Cross-check the counting engines and bijections against each other.
    Verify {
        /// `all` runs simulations up to n = 9, `quick` stops at n = 6.
        #[arg(long, value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    All,
    Quick,
}

#[derive(Args)]
struct ConditionArg {
    /// Stopping condition: tie, lt, le, strict123, weak123, mixed123,
    /// kequal:<k>, lt-eq, le-eq, or a raw relation list such as "<=,<".
    #[arg(long)]
    condition: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    /// Tree simulation.
    Sim,
    /// Closed forms and recurrences.
    Formula,
    /// Generating-function coefficients.
    Series,
    /// Every engine applicable to the condition, cross-checked.
    All,
}

impl EngineArg {
    fn name(self) -> &'static str {
        match self {
            EngineArg::Sim => "sim",
            EngineArg::Formula => "formula",
            EngineArg::Series => "series",
            EngineArg::All => "all",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Tsv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhichArg {
    /// Chains still avoiding the condition.
    Active,
    /// Inactive leaves of the depth-n tree: chains that stopped at any
    /// level up to n. A chain stopped at level m < n stays a leaf, so it
    /// is listed with m variables.
    Inactive,
}

fn parse_condition(text: &str) -> Result<StoppingPattern, String> {
    use Relation::{Eq, Le, Lt};
    let rels: Vec<Relation> = match text {
        "tie" => vec![Eq],
        "lt" => vec![Lt],
        "le" => vec![Le],
        "strict123" => vec![Lt, Lt],
        "weak123" => vec![Le, Le],
        "mixed123" => vec![Le, Lt],
        "lt-eq" => vec![Lt, Eq],
        "le-eq" => vec![Le, Eq],
        _ => {
            if let Some(k) = text.strip_prefix("kequal:") {
                let k: usize = k
                    .parse()
                    .map_err(|_| format!("bad k in '{text}': expected kequal:<integer>"))?;
                return StoppingPattern::k_equal(k).map_err(|e| e.to_string());
            }
            text.split(',')
                .map(|r| match r.trim() {
                    "<" => Ok(Lt),
                    "<=" => Ok(Le),
                    "=" => Ok(Eq),
                    other => Err(format!("unknown relation '{other}' in condition")),
                })
                .collect::<Result<_, _>>()?
        }
    };
    StoppingPattern::new(rels).map_err(|e| e.to_string())
}

// usage error (exit 2)
fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

// data/verification error (exit 1)
fn failure(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn print_levels(condition: &str, engine: EngineArg, levels: &[LevelCounts], format: FormatArg) {
    match format {
        FormatArg::Tsv => {
            println!("n\ta\tdelta\tb\tw");
            for (i, lc) in levels.iter().enumerate() {
                println!("{}\t{}\t{}\t{}\t{}", i + 1, lc.a, lc.delta, lc.b, lc.w);
            }
        }
        FormatArg::Json => {
            let rows: Vec<serde_json::Value> = levels
                .iter()
                .enumerate()
                .map(|(i, lc)| {
                    serde_json::json!({
                        "n": i + 1,
                        "a": lc.a.to_string(),
                        "delta": lc.delta.to_string(),
                        "b": lc.b.to_string(),
                        "w": lc.w.to_string(),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "condition": condition,
                "engine": engine.name(),
                "levels": rows,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
}

fn run_count(
    condition: &str,
    n_max: usize,
    engine: EngineArg,
    format: FormatArg,
    frontier_cap: usize,
) -> ExitCode {
    let pattern = match parse_condition(condition) {
        Ok(p) => p,
        Err(e) => return usage(&e),
    };
    let family = Family::from_pattern(&pattern);
    let cfg = SimConfig { frontier_cap };

    let sim = |needed: bool| -> Result<Option<Vec<LevelCounts>>, String> {
        if !needed {
            return Ok(None);
        }
        tally(&pattern, n_max, &cfg)
            .map(|t| Some(t.levels().to_vec()))
            .map_err(|e| e.to_string())
    };

    let mut results: Vec<(&'static str, Vec<LevelCounts>)> = Vec::new();
    match engine {
        EngineArg::Sim => match sim(true) {
            Ok(t) => results.push(("sim", t.unwrap())),
            Err(e) => return failure(&e),
        },
        EngineArg::Formula => {
            let Some(family) = family else {
                return usage("no formula engine for this condition");
            };
            match counts_table(family, n_max) {
                Ok(t) => results.push(("formula", t)),
                Err(e) => return usage(&e.to_string()),
            }
        }
        EngineArg::Series => {
            let Some(family) = family else {
                return usage("no series engine for this condition");
            };
            match series_counts_table(family, n_max) {
                Ok(t) => results.push(("series", t)),
                Err(e) => return usage(&e.to_string()),
            }
        }
        EngineArg::All => {
            match sim(true) {
                Ok(t) => results.push(("sim", t.unwrap())),
                Err(e) => return failure(&e),
            }
            if let Some(family) = family {
                match counts_table(family, n_max) {
                    Ok(t) => results.push(("formula", t)),
                    Err(e) => return usage(&e.to_string()),
                }
                if family.series_names().is_some() {
                    match series_counts_table(family, n_max) {
                        Ok(t) => results.push(("series", t)),
                        Err(e) => return usage(&e.to_string()),
                    }
                }
            }
        }
    }

    let first = &results[0].1;
    let matched = results[1..].iter().all(|(_, table)| table == first);

    if engine != EngineArg::All {
        print_levels(condition, engine, first, format);
        return ExitCode::SUCCESS;
    }

    // One table per engine plus an explicit match flag; data columns stay
    // n/a/delta/b/w so the per-engine blocks parse like single-engine output.
    match format {
        FormatArg::Tsv => {
            for (name, table) in &results {
                println!("# engine: {name}");
                println!("n\ta\tdelta\tb\tw");
                for (i, lc) in table.iter().enumerate() {
                    println!("{}\t{}\t{}\t{}\t{}", i + 1, lc.a, lc.delta, lc.b, lc.w);
                }
            }
            println!("# match: {matched}");
        }
        FormatArg::Json => {
            let engines: serde_json::Map<String, serde_json::Value> = results
                .iter()
                .map(|(name, table)| {
                    let rows: Vec<serde_json::Value> = table
                        .iter()
                        .enumerate()
                        .map(|(i, lc)| {
                            serde_json::json!({
                                "n": i + 1,
                                "a": lc.a.to_string(),
                                "delta": lc.delta.to_string(),
                                "b": lc.b.to_string(),
                                "w": lc.w.to_string(),
                            })
                        })
                        .collect();
                    (name.to_string(), serde_json::Value::Array(rows))
                })
                .collect();
            let doc = serde_json::json!({
                "condition": condition,
                "engines": engines,
                "match": matched,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    if matched {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: engines disagree for condition '{condition}'");
        ExitCode::from(1)
    }
}

fn run_enumerate(
    condition: &str,
    n: usize,
    which: WhichArg,
    format: FormatArg,
    frontier_cap: usize,
) -> ExitCode {
    let pattern = match parse_condition(condition) {
        Ok(p) => p,
        Err(e) => return usage(&e),
    };
    if n == 0 {
        return usage("levels start at 1");
    }
    let cfg = SimConfig { frontier_cap };
    let leaves = match which {
        WhichArg::Active => match enumerate_leaves(&pattern, n, LeafClass::Active, &cfg) {
            Ok(l) => l,
            Err(e) => return failure(&e.to_string()),
        },
        WhichArg::Inactive => {
            let mut all = Vec::new();
            for m in 1..=n {
                match enumerate_leaves(&pattern, m, LeafClass::NewlyInactive, &cfg) {
                    Ok(l) => all.extend(l),
                    Err(e) => return failure(&e.to_string()),
                }
            }
            all
        }
    };
    match format {
        FormatArg::Tsv => {
            for c in &leaves {
                println!("{}", c.format());
            }
        }
        FormatArg::Json => {
            let rows: Vec<String> = leaves.iter().map(|c| c.format()).collect();
            let doc = serde_json::json!({
                "condition": condition,
                "n": n,
                "which": match which { WhichArg::Active => "active", WhichArg::Inactive => "inactive" },
                "chains": rows,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    ExitCode::SUCCESS
}

fn run_series(name: &str, order: usize, format: FormatArg) -> ExitCode {
    let gf_name = match GfName::parse(name) {
        Ok(g) => g,
        Err(e) => return usage(&e.to_string()),
    };
    let expansion = match gf(gf_name, order) {
        Ok(g) => g,
        Err(e) => return failure(&e.to_string()),
    };
    let coeffs: Vec<String> = match &expansion {
        Gf::Univariate(s) => (0..=order)
            .map(|k| s.coeff(k).unwrap().to_string())
            .collect(),
        Gf::Bivariate(s) => (0..=order)
            .map(|k| s.coeff(k).unwrap().to_string())
            .collect(),
    };
    match format {
        FormatArg::Tsv => {
            println!("n\tcoefficient");
            for (k, c) in coeffs.iter().enumerate() {
                println!("{k}\t{c}");
            }
        }
        FormatArg::Json => {
            let doc = serde_json::json!({
                "name": gf_name.as_str(),
                "order": order,
                "bivariate": gf_name.is_bivariate(),
                "coefficients": coeffs,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    ExitCode::SUCCESS
}

fn run_verify(scope: ScopeArg) -> ExitCode {
    let n_max = match scope {
        ScopeArg::All => 9,
        ScopeArg::Quick => 6,
    };
    let mut all_ok = true;
    let mut check = |name: &str, ok: bool| {
        println!("{}: {name}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    };
    let cfg = SimConfig::default();
    let oracle_max = n_max.min(6);
    let families = [
        Family::Tie,
        Family::Lt,
        Family::Le,
        Family::Strict123,
        Family::Weak123,
        Family::Mixed123,
        Family::KEqual(3),
        Family::KEqual(4),
        Family::LtEq,
        Family::LeEq,
    ];

    for family in families {
        let pattern = family.pattern();
        let sim = tally(&pattern, n_max, &cfg).unwrap();
        let formulas = counts_table(family, n_max).unwrap();
        check(
            &format!("simulation matches formulas for {family:?} up to n={n_max}"),
            sim.levels() == &formulas[..],
        );
        let oracle = oracle_tally(&pattern, oracle_max).unwrap();
        check(
            &format!("exhaustive oracle matches simulation for {family:?} up to n={oracle_max}"),
            oracle.levels() == &sim.levels()[..oracle_max],
        );
        if family.series_names().is_some() {
            let series = series_counts_table(family, n_max).unwrap();
            check(
                &format!("series coefficients match formulas for {family:?} up to n={n_max}"),
                series == formulas,
            );
        }
    }

    for kind in [
        SiteKind::DownUpOrTripleDown,
        SiteKind::UpDownDown,
        SiteKind::DownUp,
    ] {
        let family = kind.family();
        let table = counts_table(family, n_max.min(10)).unwrap();
        let ok = (1..=n_max.min(10))
            .all(|n| weighted_count(kind, n).unwrap() == table[n - 1].a);
        check(
            &format!("marked-path weighted counts match active counts for {family:?}"),
            ok,
        );

        let mut round_trips = true;
        for n in 1..=n_max.min(5) {
            let active = enumerate_leaves(&family.pattern(), n, LeafClass::Active, &cfg).unwrap();
            let mut image = BTreeSet::new();
            for chain in &active {
                let cp = match colored_from_chain(chain, kind) {
                    Ok(cp) => cp,
                    Err(_) => {
                        round_trips = false;
                        continue;
                    }
                };
                round_trips &= chain_from_colored(&cp).as_ref() == Ok(chain);
                image.insert(format!("{cp}"));
            }
            round_trips &= image.len() == active.len();
        }
        check(
            &format!("marked-path encoding round-trips for {family:?}"),
            round_trips,
        );
    }

    {
        let pattern = Family::Mixed123.pattern();
        let mut ok = true;
        for n in 3..=n_max.min(6) {
            let stopped = enumerate_leaves(&pattern, n, LeafClass::NewlyInactive, &cfg).unwrap();
            for chain in &stopped {
                ok &= marked_perm_from_new_inactive(chain)
                    .and_then(|up| new_inactive_from_marked_perm(&up))
                    .as_ref()
                    == Ok(chain);
            }
        }
        check("marked-permutation map round-trips on newly stopped chains", ok);
    }

    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Count {
            condition,
            n_max,
            engine,
            format,
            frontier_cap,
        } => run_count(&condition.condition, n_max, engine, format, frontier_cap),
        Cmd::Enumerate {
            condition,
            n,
            which,
            format,
            frontier_cap,
        } => run_enumerate(&condition.condition, n, which, format, frontier_cap),
        Cmd::Series {
            name,
            order,
            format,
        } => run_series(&name, order, format),
        Cmd::Verify { scope } => run_verify(scope),
    }
}
