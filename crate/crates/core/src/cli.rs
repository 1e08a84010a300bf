//! Command-line front end. All configuration comes from flags (no
//! environment variables); reports are deterministic given the seed, and
//! every rational in JSON output is a decimal string.
//!
//! Exit codes: 0 on success with all checks holding, 1 when a mathematical
//! check fails or a computation errors out, 2 on usage errors.

use std::collections::BTreeSet;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, SmoothProperStatus};
use crate::devissage::{
    blowup_value_identity, propagate_property_p, BlowupSquareInstance, PropertyPLedger,
};
use crate::error::{Error, Result};
use crate::lattice::{lemma21_check, sampling, Lemma21Report};
use crate::schemes::{CountBudget, GroundField};
use crate::special::verify_milne;
use crate::zeta::{weight_factorization, weil_bound_check, WeilBoundReport, WeilFactorization};

#[derive(Parser, Debug)]
#[command(
    name = "zetavals",
    version,
    about = "Exact zeta functions over prime fields, their special values, and the p-adic identities behind them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Catalog registry operations.
    Catalog {
        #[command(subcommand)]
        sub: CatalogCommand,
    },
    /// Reconstruct Z(X,t) from point counts.
    Zeta(ZetaArgs),
    /// Special value C(X,n) with valuations.
    Value(ValueArgs),
    /// Verification pipelines.
    Verify {
        #[command(subcommand)]
        sub: VerifyCommand,
    },
    /// Randomized determinant/cokernel identity suite.
    Lemma21(Lemma21Args),
    /// Decomposition calculus for squares and propagation ledgers.
    Devissage {
        #[command(subcommand)]
        sub: DevissageCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// List the registered scheme names.
    List {
        #[arg(long)]
        json: bool,
        /// Prime for feasibility metadata.
        #[arg(long, default_value_t = 5)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Full pipeline: counts -> zeta -> special value -> correction
    /// exponent -> inferred exponent.
    Milne(MilneArgs),
}

#[derive(Subcommand, Debug)]
enum DevissageCommand {
    /// Check the value identity across a registered square.
    Square(SquareArgs),
    /// Propagate the verified-formula property to a fixpoint.
    Propagate(PropagateArgs),
}

#[derive(Args, Debug)]
struct ZetaArgs {
    #[arg(long)]
    scheme: String,
    #[arg(long)]
    p: u64,
    /// Also compute the weight factorization and Weil bound report.
    #[arg(long)]
    factor: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = CountBudget::default().limit)]
    budget: u64,
}

#[derive(Args, Debug)]
struct ValueArgs {
    #[arg(long)]
    scheme: String,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: i64,
    /// Extra primes at which to report valuations, comma separated.
    #[arg(long, value_delimiter = ',')]
    extra_primes: Vec<u64>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = CountBudget::default().limit)]
    budget: u64,
}

#[derive(Args, Debug)]
struct MilneArgs {
    #[arg(long)]
    scheme: String,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: i64,
    #[arg(long, value_delimiter = ',')]
    extra_primes: Vec<u64>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = CountBudget::default().limit)]
    budget: u64,
}

#[derive(Args, Debug)]
struct Lemma21Args {
    #[arg(long, default_value_t = 200)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 6)]
    rank_max: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SquareArgs {
    /// Registered square: `blowup:<surface>` or `thickening:<scheme>`.
    #[arg(long, conflicts_with = "file")]
    square: Option<String>,
    /// Square document (JSON with y_prime / x_prime / y / x descriptors).
    #[arg(long)]
    file: Option<std::path::PathBuf>,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: i64,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = CountBudget::default().limit)]
    budget: u64,
}

#[derive(Args, Debug)]
struct PropagateArgs {
    /// Ledger document (JSON: known / squares / triples).
    #[arg(long)]
    file: std::path::PathBuf,
    /// Also seed the known set with catalog entries whose verification
    /// pipeline is consistent over this prime.
    #[arg(long)]
    seed_catalog: bool,
    #[arg(long, default_value_t = 5, requires = "seed_catalog")]
    p: u64,
    #[arg(long)]
    json: bool,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/version on stdout with success status
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(all_hold) => {
            if all_hold {
                0
            } else {
                1
            }
        }
        Err(Error::Argument(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Catalog { sub: CatalogCommand::List { json, p } } => catalog_list(json, p),
        Command::Zeta(args) => zeta_cmd(args),
        Command::Value(args) => value_cmd(args),
        Command::Verify { sub: VerifyCommand::Milne(args) } => milne_cmd(args),
        Command::Lemma21(args) => lemma21_cmd(args),
        Command::Devissage { sub } => match sub {
            DevissageCommand::Square(args) => square_cmd(args),
            DevissageCommand::Propagate(args) => propagate_cmd(args),
        },
    }
}

#[derive(Serialize)]
struct CatalogRow {
    name: String,
    descriptor: String,
    dimension: i64,
    smooth_proper: String,
    zeta_feasible: bool,
}

fn catalog_list(json: bool, p: u64) -> Result<bool> {
    let field = GroundField::new(p)?;
    let budget = CountBudget::default();
    let mut rows = Vec::new();
    for name in catalog::CATALOG_NAMES {
        let concrete = if *name == "E:a,b" { "E:1,0" } else { name };
        let desc = catalog::resolve(concrete)?;
        let status = match catalog::smooth_proper_status(&desc, &field, &budget) {
            Ok(SmoothProperStatus::Certified) => "certified".to_string(),
            Ok(SmoothProperStatus::Heuristic { checked_up_to }) => {
                format!("heuristic(k<={checked_up_to})")
            }
            Ok(SmoothProperStatus::No { reason }) => format!("no ({reason})"),
            Err(e) => format!("no ({e})"),
        };
        rows.push(CatalogRow {
            name: name.to_string(),
            descriptor: desc.short_name(),
            dimension: desc.dimension(),
            smooth_proper: status,
            zeta_feasible: catalog::zeta_feasible(&desc, &field, &budget),
        });
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&rows)?);
    } else {
        for row in rows {
            println!(
                "{:<12} {:<24} dim {:<3} smooth/proper: {:<22} zeta feasible: {}",
                row.name, row.descriptor, row.dimension, row.smooth_proper, row.zeta_feasible
            );
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct ZetaReport {
    scheme: String,
    p: u64,
    counts_used: Vec<String>,
    num: crate::numerics::poly::IntPolynomial,
    den: crate::numerics::poly::IntPolynomial,
    #[serde(skip_serializing_if = "Option::is_none")]
    factorization: Option<WeilFactorization>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weil_bounds: Option<WeilBoundReport>,
}

fn zeta_cmd(args: ZetaArgs) -> Result<bool> {
    let field = GroundField::new(args.p)?;
    let budget = CountBudget { limit: args.budget };
    let desc = catalog::resolve(&args.scheme)?;
    let computation = catalog::zeta_of_scheme(&desc, &field, &budget)?;
    let mut report = ZetaReport {
        scheme: args.scheme.clone(),
        p: args.p,
        counts_used: computation.counts.counts.iter().map(|c| c.to_string()).collect(),
        num: computation.zeta.num.clone(),
        den: computation.zeta.den.clone(),
        factorization: None,
        weil_bounds: None,
    };
    let mut all_hold = true;
    if args.factor {
        match catalog::smooth_proper_status(&desc, &field, &budget)? {
            SmoothProperStatus::No { reason } => {
                return Err(Error::Unsupported(format!(
                    "weight factorization needs a smooth proper scheme: {reason}"
                )));
            }
            _ => {
                let f = weight_factorization(
                    &computation.zeta,
                    args.p,
                    desc.dimension().max(0) as usize,
                )?;
                let bounds = weil_bound_check(&f, args.p)?;
                all_hold = bounds.pass;
                report.factorization = Some(f);
                report.weil_bounds = Some(bounds);
            }
        }
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("Z({}, t) = ({}) / ({})", report.scheme, report.num, report.den);
        println!("counts N_1..N_K: {}", report.counts_used.join(", "));
        if let Some(f) = &report.factorization {
            for (i, poly) in &f.factors {
                println!("P_{i} = {poly}");
            }
        }
        if let Some(b) = &report.weil_bounds {
            println!(
                "weil bounds: {} (max deviations {:?})",
                if b.pass { "pass" } else { "FAIL" },
                b.deviations
            );
        }
    }
    Ok(all_hold)
}

fn value_cmd(args: ValueArgs) -> Result<bool> {
    let field = GroundField::new(args.p)?;
    let budget = CountBudget { limit: args.budget };
    let desc = catalog::resolve(&args.scheme)?;
    let computation = catalog::zeta_of_scheme(&desc, &field, &budget)?;
    let report =
        crate::special::special_value(&computation.zeta, args.p, args.n, &args.extra_primes)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!(
            "C({}, {}) = {}   rho = {}   v_{} = {}{}",
            args.scheme,
            args.n,
            crate::ser::rational_to_string(&report.value),
            report.rho,
            args.p,
            report.p_valuation,
            report
                .extra_valuations
                .iter()
                .map(|(l, v)| format!("   v_{l} = {v}"))
                .collect::<String>(),
        );
    }
    Ok(true)
}

fn milne_cmd(args: MilneArgs) -> Result<bool> {
    let field = GroundField::new(args.p)?;
    let budget = CountBudget { limit: args.budget };
    let desc = catalog::resolve(&args.scheme)?;
    let report = verify_milne(&desc, &field, args.n, &args.extra_primes, &budget)?;
    let consistent = report.consistent;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!(
            "{} over F_{}, n = {}: C = {}, rho = {}, v_p = {}, correction = {}, inferred exponent = {}, consistent = {}",
            report.scheme,
            report.p,
            report.n,
            crate::ser::rational_to_string(&report.special.value),
            report.special.rho,
            report.special.p_valuation,
            report.correction_exp,
            report.inferred_syntomic_exp,
            report.consistent
        );
        for caveat in &report.caveats {
            println!("  caveat: {caveat}");
        }
    }
    Ok(consistent)
}

#[derive(Serialize)]
struct Lemma21Suite {
    p: u64,
    trials: u32,
    seed: u64,
    rank_max: usize,
    holds: u32,
    all_hold: bool,
    first_failure: Option<Lemma21Report>,
}

fn lemma21_cmd(args: Lemma21Args) -> Result<bool> {
    let _ = GroundField::new(args.p)?;
    if args.rank_max == 0 {
        return Err(Error::Argument("rank-max must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut holds = 0u32;
    let mut first_failure = None;
    for _ in 0..args.trials {
        let inst = sampling::random_instance(&mut rng, args.p, args.rank_max);
        let report = lemma21_check(&inst)?;
        if report.holds {
            holds += 1;
        } else if first_failure.is_none() {
            first_failure = Some(report);
        }
    }
    let suite = Lemma21Suite {
        p: args.p,
        trials: args.trials,
        seed: args.seed,
        rank_max: args.rank_max,
        holds,
        all_hold: holds == args.trials,
        first_failure,
    };
    let all = suite.all_hold;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&suite)?);
    } else {
        println!(
            "lemma21 suite: {}/{} hold (p = {}, seed = {}, ranks <= {})",
            suite.holds, suite.trials, suite.p, suite.seed, suite.rank_max
        );
    }
    Ok(all)
}

fn square_cmd(args: SquareArgs) -> Result<bool> {
    let field = GroundField::new(args.p)?;
    let budget = CountBudget { limit: args.budget };
    let (label, square) = match (&args.square, &args.file) {
        (Some(name), None) => (name.clone(), parse_square(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))?;
            let sq: BlowupSquareInstance = serde_json::from_str(&text)?;
            (path.display().to_string(), sq)
        }
        _ => {
            return Err(Error::Argument(
                "give exactly one of --square <name> or --file <square.json>".into(),
            ))
        }
    };
    let report = blowup_value_identity(&square, &field, args.n, &budget)?;
    let holds = report.holds;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!(
            "square {} at n = {}: C(X)C(Y') = {}, C(X')C(Y) = {}, rho {} vs {}: {}",
            label,
            args.n,
            crate::ser::rational_to_string(&report.lhs),
            crate::ser::rational_to_string(&report.rhs),
            report.rho_lhs,
            report.rho_rhs,
            if holds { "holds" } else { "FAILS" }
        );
    }
    Ok(holds)
}

fn parse_square(selector: &str) -> Result<BlowupSquareInstance> {
    if let Some(base) = selector.strip_prefix("blowup:") {
        let desc = catalog::resolve(base)?;
        if desc.dimension() != 2 {
            return Err(Error::Argument(format!(
                "blowup squares are registered for surfaces, {base} has dimension {}",
                desc.dimension()
            )));
        }
        return Ok(BlowupSquareInstance::of_surface_blowup(desc));
    }
    if let Some(name) = selector.strip_prefix("thickening:") {
        let desc = catalog::resolve(name)?;
        return Ok(BlowupSquareInstance::of_thickening(desc));
    }
    Err(Error::Argument(format!(
        "unknown square '{selector}': use blowup:<surface> or thickening:<scheme>"
    )))
}

#[derive(Serialize, Deserialize)]
struct PropagateReport {
    known_before: BTreeSet<String>,
    known_after: BTreeSet<String>,
    newly_derived: BTreeSet<String>,
    note: String,
}

fn propagate_cmd(args: PropagateArgs) -> Result<bool> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| Error::Argument(format!("cannot read {}: {e}", args.file.display())))?;
    let mut ledger: PropertyPLedger = serde_json::from_str(&text)?;
    if args.seed_catalog {
        let field = GroundField::new(args.p)?;
        let names: Vec<&str> = catalog::CATALOG_NAMES
            .iter()
            .map(|n| if *n == "E:a,b" { "E:1,0" } else { *n })
            .collect();
        let seeded =
            crate::devissage::seed_known_from_catalog(&names, &field, &CountBudget::default())?;
        ledger.known.extend(seeded.known);
    }
    let closed = propagate_property_p(&ledger);
    let newly: BTreeSet<String> = closed.known.difference(&ledger.known).cloned().collect();
    let report = PropagateReport {
        known_before: ledger.known.clone(),
        known_after: closed.known.clone(),
        newly_derived: newly,
        note: "the ledger tracks derivability of the special-value formula, not an independent numerical verification".into(),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("known before: {}", report.known_before.iter().cloned().collect::<Vec<_>>().join(", "));
        println!("known after:  {}", report.known_after.iter().cloned().collect::<Vec<_>>().join(", "));
        println!("note: {}", report.note);
    }
    Ok(true)
}
