//! Subcommand implementations.
//!
//! Exit-code contract: 0 on success, 1 when a verified identity fails,
//! 2 on input errors, 3 on budget exhaustion.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use opal::algebra_core::{perfect_radical, uce, AlgebraKind, StructureConstantAlgebra};
use opal::exact_linalg::ScalarDomain;
use opal::homology_theories::{
    stability_sweep, theory_homology, Budget, SweepSide, TheoryError, TheoryTag,
};
use opal::matrix_families::{rings, sl, MatrixAlgebraSpec};
use opal::operad_kit::{
    admissibility_probe, classical_operad, free_operad, ClassicalOperad, OperadTruncation,
};
use opal::plus_construction::{
    cone_presentation, hurewicz, otree_telescope, plus_pi0, FormalElement, QuasiFreePresentation,
};

use crate::formats;

/// Exact computational homological algebra for algebras over operads.
///
/// Thread count for the parallel kernels follows RAYON_NUM_THREADS.
#[derive(Parser)]
#[command(name = "opal", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of a classical complex of an algebra read from a file.
    Homology(HomologyArgs),
    /// Verification suites for the matrix-algebra identities.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Stabilization sweep over matrix sizes.
    Sweep(SweepArgs),
    /// Operad construction and checking.
    Operad {
        #[command(subcommand)]
        what: OperadCommand,
    },
    /// The π₀-level plus-construction.
    Plus {
        #[command(subcommand)]
        what: PlusCommand,
    },
    /// Universal-acyclic-algebra telescopes over O-trees.
    Utree {
        #[command(subcommand)]
        what: UtreeCommand,
    },
    /// The Hurewicz comparison map of a quasi-free presentation.
    Hurewicz(HurewiczArgs),
}

#[derive(Args)]
struct HomologyArgs {
    /// ce | leibniz | hochschild | cyclic
    #[arg(long)]
    theory: String,
    #[arg(long)]
    algebra: PathBuf,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// tsv | json
    #[arg(long, default_value = "tsv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// per-degree basis size cap
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// HC_d(R) against the matrix-side homology of sl_n(R) (d = 1) or of
    /// uce(sl_n(R)) (d ≥ 2), per the classical corollary.
    Corollary(CorollaryArgs),
    /// HC_i(M_k(R)) against HC_i(R) for i ≤ max-degree.
    Morita(MoritaArgs),
    /// Additivity of HC and HH over a product of rings.
    Products(ProductsArgs),
}

#[derive(Args)]
struct CorollaryArgs {
    #[arg(long)]
    ring: PathBuf,
    #[arg(long)]
    n: usize,
    /// ring-side degree: 1 checks HC₁/HH₁ vs H₂ of sl_n, 2 checks HC₂ vs
    /// H₃ of uce(sl_n), 3 likewise in degree 4
    #[arg(long)]
    degree: usize,
    /// lie (cyclic side) | leibniz (Hochschild side)
    #[arg(long, default_value = "lie")]
    theory: String,
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
struct MoritaArgs {
    #[arg(long)]
    ring: PathBuf,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
struct ProductsArgs {
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    right: PathBuf,
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    ring: PathBuf,
    /// ce-sl | ce-uce | leibniz-sl
    #[arg(long, default_value = "ce-sl")]
    side: String,
    /// matrix-side homological degree (ring side is degree - 1)
    #[arg(long)]
    degree: usize,
    #[arg(long, default_value_t = 2)]
    n_from: usize,
    #[arg(long)]
    n_to: usize,
    #[arg(long)]
    budget: Option<usize>,
    /// tsv | json
    #[arg(long, default_value = "tsv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OperadCommand {
    /// Dimensions of the free operad on a Σ-module file.
    Free(OperadFreeArgs),
    /// May-axiom checks (and optional admissibility probe) for a builtin
    /// operad.
    Check(OperadCheckArgs),
}

#[derive(Args)]
struct OperadFreeArgs {
    #[arg(long)]
    module: PathBuf,
    #[arg(long, default_value_t = 4)]
    arity_max: usize,
    /// also run the May-axiom checker
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct OperadCheckArgs {
    /// com | as | lie | leib
    #[arg(long)]
    name: String,
    #[arg(long, default_value_t = 4)]
    arity_max: usize,
    /// Q | Fp:<p>
    #[arg(long, default_value = "Q")]
    scalars: String,
    /// run the admissibility probe with W_d for this d
    #[arg(long)]
    admissibility_d: Option<i64>,
    #[arg(long, default_value_t = 2)]
    weight_max: usize,
    #[arg(long, default_value_t = 4)]
    degree_max: i64,
}

#[derive(Subcommand)]
enum PlusCommand {
    /// Quotient a discrete algebra by its perfect radical.
    Pi0(PlusPi0Args),
}

#[derive(Args)]
struct PlusPi0Args {
    #[arg(long)]
    algebra: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum UtreeCommand {
    /// Build a telescope presentation and report its invariants.
    Build(UtreeArgs),
    /// Build the cone of a telescope and report its invariants.
    Cone(UtreeArgs),
    /// Verify the telescope and cone laws; exit 1 on failure.
    Check(UtreeArgs),
}

#[derive(Args)]
struct UtreeArgs {
    #[arg(long)]
    tree: PathBuf,
    #[arg(long, default_value_t = 1)]
    r_max: usize,
    #[arg(long, default_value_t = 3)]
    weight_max: usize,
    #[arg(long, default_value_t = 3)]
    degree_max: i64,
}

#[derive(Args)]
struct HurewiczArgs {
    /// builtin operad for a free presentation: com | as | lie | leib
    #[arg(long, default_value = "lie")]
    operad: String,
    /// degree of the single free generator
    #[arg(long, default_value_t = 1)]
    generator_degree: i64,
    #[arg(long, default_value_t = 3)]
    max_degree: i64,
    #[arg(long, default_value_t = 3)]
    weight_max: usize,
}

pub enum CliOutcome {
    Success,
    VerificationFailed,
    BudgetExhausted,
}

impl CliOutcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliOutcome::Success => 0,
            CliOutcome::VerificationFailed => 1,
            CliOutcome::BudgetExhausted => 3,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Budget(m) => write!(f, "budget exhausted: {m}"),
        }
    }
}

fn read_algebra(path: &Path) -> Result<(String, StructureConstantAlgebra), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    formats::parse_algebra(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn budget_of(cap: Option<usize>) -> Budget {
    match cap {
        Some(max_basis) => Budget { max_basis },
        None => Budget::default(),
    }
}

fn map_theory_err(e: TheoryError) -> CliError {
    match e {
        TheoryError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
        }
    }
}

pub fn run(cli: Cli) -> Result<CliOutcome, CliError> {
    match cli.command {
        Command::Homology(args) => cmd_homology(args),
        Command::Verify { what } => match what {
            VerifyCommand::Corollary(args) => cmd_corollary(args),
            VerifyCommand::Morita(args) => cmd_morita(args),
            VerifyCommand::Products(args) => cmd_products(args),
        },
        Command::Sweep(args) => cmd_sweep(args),
        Command::Operad { what } => match what {
            OperadCommand::Free(args) => cmd_operad_free(args),
            OperadCommand::Check(args) => cmd_operad_check(args),
        },
        Command::Plus { what } => match what {
            PlusCommand::Pi0(args) => cmd_plus_pi0(args),
        },
        Command::Utree { what } => match what {
            UtreeCommand::Build(args) => cmd_utree(args, UtreeMode::Build),
            UtreeCommand::Cone(args) => cmd_utree(args, UtreeMode::Cone),
            UtreeCommand::Check(args) => cmd_utree(args, UtreeMode::Check),
        },
        Command::Hurewicz(args) => cmd_hurewicz(args),
    }
}

fn cmd_homology(args: HomologyArgs) -> Result<CliOutcome, CliError> {
    let (name, algebra) = read_algebra(&args.algebra)?;
    let tag = TheoryTag::from_str(&args.theory).map_err(|e| CliError::Input(e.to_string()))?;
    let budget = budget_of(args.budget);
    let report =
        theory_homology(tag, &algebra, args.max_degree, &budget).map_err(map_theory_err)?;
    let text = match args.format.as_str() {
        "tsv" => format!("# {tag} homology of {name}\n{}", report.to_tsv()),
        "json" => report.to_json() + "\n",
        other => return Err(CliError::Input(format!("unknown format `{other}`"))),
    };
    emit(&text, &args.out)?;
    Ok(CliOutcome::Success)
}

fn matrix_side_dims(
    ring: &StructureConstantAlgebra,
    n: usize,
    degree: usize,
    lie_side: bool,
    use_uce: bool,
    budget: &Budget,
) -> Result<usize, CliError> {
    let kind = if lie_side {
        AlgebraKind::Lie
    } else {
        AlgebraKind::Leibniz
    };
    let spec = MatrixAlgebraSpec::new(ring.clone(), n, kind)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let sl_data = sl(&spec).map_err(|e| CliError::Input(e.to_string()))?;
    let algebra = if use_uce {
        let lie = sl_data
            .algebra
            .as_kind(AlgebraKind::Lie)
            .map_err(|e| CliError::Input(e.to_string()))?;
        uce(&lie, AlgebraKind::Lie)
            .map_err(|e| CliError::Input(e.to_string()))?
            .algebra
    } else {
        sl_data.algebra
    };
    let tag = if lie_side {
        TheoryTag::CE
    } else {
        TheoryTag::Leibniz
    };
    let report = theory_homology(tag, &algebra, degree, budget).map_err(map_theory_err)?;
    Ok(report.dim(degree as i32))
}

fn cmd_corollary(args: CorollaryArgs) -> Result<CliOutcome, CliError> {
    let (name, ring) = read_algebra(&args.ring)?;
    if args.degree < 1 {
        return Err(CliError::Input("degree must be at least 1".into()));
    }
    let lie_side = match args.theory.as_str() {
        "lie" => true,
        "leibniz" => false,
        other => return Err(CliError::Input(format!("unknown theory `{other}`"))),
    };
    let budget = budget_of(args.budget);
    let ring_tag = if lie_side {
        TheoryTag::CyclicConnes
    } else {
        TheoryTag::Hochschild
    };
    let ring_dim = theory_homology(ring_tag, &ring, args.degree, &budget)
        .map_err(map_theory_err)?
        .dim(args.degree as i32);
    let use_uce = args.degree >= 2;
    let matrix_degree = args.degree + 1;
    let matrix_dim = matrix_side_dims(&ring, args.n, matrix_degree, lie_side, use_uce, &budget)?;
    let side_name = if use_uce { "uce(sl_n)" } else { "sl_n" };
    let matrix_theory = if lie_side { "H^Lie" } else { "H^Leib" };
    println!(
        "ring side:   dim {ring_tag}_{}({name}) = {ring_dim}",
        args.degree
    );
    println!(
        "matrix side: dim {matrix_theory}_{matrix_degree}({side_name}, n = {}) = {matrix_dim}",
        args.n
    );
    if ring_dim == matrix_dim {
        println!("PASS: both sides equal {ring_dim}");
        Ok(CliOutcome::Success)
    } else {
        println!("FAIL: {ring_dim} != {matrix_dim}");
        Ok(CliOutcome::VerificationFailed)
    }
}

fn cmd_morita(args: MoritaArgs) -> Result<CliOutcome, CliError> {
    let (name, ring) = read_algebra(&args.ring)?;
    let budget = budget_of(args.budget);
    let matrix = rings::matrix_over(&ring, args.k).map_err(|e| CliError::Input(e.to_string()))?;
    let base = theory_homology(TheoryTag::CyclicConnes, &ring, args.max_degree, &budget)
        .map_err(map_theory_err)?;
    let big = theory_homology(TheoryTag::CyclicConnes, &matrix, args.max_degree, &budget)
        .map_err(map_theory_err)?;
    let mut ok = true;
    println!("degree\tHC({name})\tHC(M_{}({name}))", args.k);
    for i in 0..=args.max_degree as i32 {
        let (a, b) = (base.dim(i), big.dim(i));
        println!("{i}\t{a}\t{b}");
        ok &= a == b;
    }
    if ok {
        println!(
            "PASS: Morita invariance holds up to degree {}",
            args.max_degree
        );
        Ok(CliOutcome::Success)
    } else {
        println!("FAIL: dimensions differ");
        Ok(CliOutcome::VerificationFailed)
    }
}

fn cmd_products(args: ProductsArgs) -> Result<CliOutcome, CliError> {
    let (lname, left) = read_algebra(&args.left)?;
    let (rname, right) = read_algebra(&args.right)?;
    let product = left
        .direct_sum(&right)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let budget = budget_of(args.budget);
    let mut ok = true;
    for tag in [TheoryTag::CyclicConnes, TheoryTag::Hochschild] {
        let l = theory_homology(tag, &left, args.max_degree, &budget).map_err(map_theory_err)?;
        let r = theory_homology(tag, &right, args.max_degree, &budget).map_err(map_theory_err)?;
        let p = theory_homology(tag, &product, args.max_degree, &budget).map_err(map_theory_err)?;
        println!("theory {tag}: degree\t{lname}\t{rname}\tsum\tproduct");
        for i in 0..=args.max_degree as i32 {
            let (a, b, c) = (l.dim(i), r.dim(i), p.dim(i));
            println!("{i}\t{a}\t{b}\t{}\t{c}", a + b);
            ok &= a + b == c;
        }
    }
    if ok {
        println!("PASS: additivity holds up to degree {}", args.max_degree);
        Ok(CliOutcome::Success)
    } else {
        println!("FAIL: additivity violated");
        Ok(CliOutcome::VerificationFailed)
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<CliOutcome, CliError> {
    let (name, ring) = read_algebra(&args.ring)?;
    let side = match args.side.as_str() {
        "ce-sl" => SweepSide::CeSl,
        "ce-uce" => SweepSide::CeUce,
        "leibniz-sl" => SweepSide::LeibnizSl,
        other => return Err(CliError::Input(format!("unknown side `{other}`"))),
    };
    if args.n_from > args.n_to || args.n_from < 2 {
        return Err(CliError::Input("need 2 <= n-from <= n-to".into()));
    }
    let budget = budget_of(args.budget);
    let table = stability_sweep(&ring, side, args.degree, args.n_from..=args.n_to, &budget)
        .map_err(map_theory_err)?;
    let text = match args.format.as_str() {
        "tsv" => format!(
            "# sweep {side:?} of {name}, degree {}\n{}",
            args.degree,
            table.to_tsv()
        ),
        "json" => table.to_json() + "\n",
        other => return Err(CliError::Input(format!("unknown format `{other}`"))),
    };
    emit(&text, &args.out)?;
    if table.rows.iter().any(|r| r.truncated) {
        Ok(CliOutcome::BudgetExhausted)
    } else {
        Ok(CliOutcome::Success)
    }
}

fn cmd_operad_free(args: OperadFreeArgs) -> Result<CliOutcome, CliError> {
    let text = fs::read_to_string(&args.module)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.module.display())))?;
    let (name, module) = formats::parse_sigma_module(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.module.display())))?;
    let free = free_operad(&module, args.arity_max).map_err(|e| CliError::Input(e.to_string()))?;
    println!("# free operad on {name}");
    println!("arity\tdimension");
    for n in 2..=args.arity_max {
        println!("{n}\t{}", free.dim(n));
    }
    if args.check {
        match free.may_check() {
            Ok(()) => println!("may_axioms\tPASS"),
            Err(e) => {
                println!("may_axioms\tFAIL: {e}");
                return Ok(CliOutcome::VerificationFailed);
            }
        }
    }
    Ok(CliOutcome::Success)
}

fn parse_builtin_operad(
    name: &str,
    arity_max: usize,
    domain: ScalarDomain,
) -> Result<OperadTruncation, CliError> {
    let which = ClassicalOperad::from_str(name).map_err(|e| CliError::Input(e.to_string()))?;
    classical_operad(which, arity_max, domain).map_err(|e| CliError::Input(e.to_string()))
}

fn parse_scalars(s: &str) -> Result<ScalarDomain, CliError> {
    if s == "Q" {
        return Ok(ScalarDomain::Rational);
    }
    if let Some(p) = s.strip_prefix("Fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| CliError::Input(format!("bad modulus `{p}`")))?;
        return ScalarDomain::fp(p).map_err(|e| CliError::Input(e.to_string()));
    }
    Err(CliError::Input(format!("unknown scalar domain `{s}`")))
}

fn cmd_operad_check(args: OperadCheckArgs) -> Result<CliOutcome, CliError> {
    let domain = parse_scalars(&args.scalars)?;
    let operad = parse_builtin_operad(&args.name, args.arity_max, domain)?;
    println!(
        "# operad {} over {domain}, arities 2..={}",
        args.name, args.arity_max
    );
    println!("arity\tdimension");
    for n in 2..=args.arity_max {
        println!("{n}\t{}", operad.dim(n));
    }
    let mut outcome = CliOutcome::Success;
    match operad.may_check() {
        Ok(()) => println!("may_axioms\tPASS"),
        Err(e) => {
            println!("may_axioms\tFAIL: {e}");
            outcome = CliOutcome::VerificationFailed;
        }
    }
    if let Some(d) = args.admissibility_d {
        let verdict = admissibility_probe(&operad, None, d, args.weight_max, args.degree_max)
            .map_err(|e| CliError::Input(e.to_string()))?;
        println!("admissibility\t{verdict}");
    }
    Ok(outcome)
}

fn cmd_plus_pi0(args: PlusPi0Args) -> Result<CliOutcome, CliError> {
    let (name, algebra) = read_algebra(&args.algebra)?;
    let radical = perfect_radical(&algebra).map_err(|e| CliError::Input(e.to_string()))?;
    let plus = plus_pi0(&algebra).map_err(|e| CliError::Input(e.to_string()))?;
    println!("input:            {name}, dim {}", algebra.dim());
    println!("perfect radical:  dim {}", radical.dim());
    println!("plus(pi0) output: dim {}", plus.dim());
    if let Some(path) = &args.out {
        let text = formats::write_algebra(&format!("{name}_plus"), &plus);
        fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(CliOutcome::Success)
}

enum UtreeMode {
    Build,
    Cone,
    Check,
}

fn cmd_utree(args: UtreeArgs, mode: UtreeMode) -> Result<CliOutcome, CliError> {
    let text = fs::read_to_string(&args.tree)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.tree.display())))?;
    let file = formats::parse_otree(&text, ScalarDomain::Rational)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.tree.display())))?;
    let operad = parse_builtin_operad(&file.operad, file.arity_max, ScalarDomain::Rational)?;
    let telescope = otree_telescope(
        &operad,
        &file.tree,
        args.r_max,
        args.weight_max,
        args.degree_max,
    )
    .map_err(|e| CliError::Input(e.to_string()))?;

    let mut report = String::new();
    let _ = writeln!(
        report,
        "# telescope of {} at r_max = {}",
        file.name, args.r_max
    );
    let _ = writeln!(
        report,
        "generators\tx: {}\ty: {}\tfrontier: {}",
        telescope.x_gens.len(),
        telescope.y_gens.len(),
        telescope.frontier.len()
    );
    let hq = telescope
        .presentation
        .quillen_homology(0..=2)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let _ = writeln!(
        report,
        "telescope H^Q\t0:{}\t1:{}\t2:{}",
        hq.dim(0),
        hq.dim(1),
        hq.dim(2)
    );
    let pi0 = telescope.presentation.pi0();
    let pi0_dims: Vec<String> = (1..=args.weight_max)
        .map(|w| format!("w{w}:{}", pi0.dim(w)))
        .collect();
    let _ = writeln!(report, "telescope pi0\t{}", pi0_dims.join("\t"));

    match mode {
        UtreeMode::Build => {
            print!("{report}");
            Ok(CliOutcome::Success)
        }
        UtreeMode::Cone | UtreeMode::Check => {
            let cone = cone_presentation(&telescope, args.weight_max, args.degree_max)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let cone_pi0 = cone.pi0();
            let cone_hq = cone
                .quillen_homology(0..=2)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let _ = writeln!(
                report,
                "cone pi0 total\t{}\ncone H^Q\t0:{}\t1:{}\t2:{}",
                cone_pi0.total_dim,
                cone_hq.dim(0),
                cone_hq.dim(1),
                cone_hq.dim(2)
            );
            let mut ok = true;
            if matches!(mode, UtreeMode::Check) {
                // telescope laws: H^Q vanishes in positive degrees and the
                // degree-0 classes are exactly the frontier generators
                let t1 = hq.dim(1) == 0 && hq.dim(2) == 0;
                let t2 = hq.dim(0) == telescope.frontier.len();
                let c1 = cone_pi0.is_zero();
                let c2 = cone_hq.dim(0) == 0 && cone_hq.dim(1) == 0 && cone_hq.dim(2) == 0;
                for (label, pass) in [
                    ("telescope_positive_acyclic", t1),
                    ("telescope_h0_is_frontier", t2),
                    ("cone_pi0_zero", c1),
                    ("cone_hq_zero", c2),
                ] {
                    let _ = writeln!(report, "{label}\t{}", if pass { "PASS" } else { "FAIL" });
                    ok &= pass;
                }
            }
            print!("{report}");
            if ok {
                Ok(CliOutcome::Success)
            } else {
                Ok(CliOutcome::VerificationFailed)
            }
        }
    }
}

fn cmd_hurewicz(args: HurewiczArgs) -> Result<CliOutcome, CliError> {
    let arity = (args.weight_max).clamp(2, 6);
    let operad = parse_builtin_operad(&args.operad, arity, ScalarDomain::Rational)?;
    if args.generator_degree < 1 {
        return Err(CliError::Input(
            "generator degree must be at least 1".into(),
        ));
    }
    let p = QuasiFreePresentation::new(
        operad,
        vec![("x".into(), args.generator_degree)],
        vec![FormalElement::zero()],
        args.weight_max,
        args.max_degree + 1,
    )
    .map_err(|e| CliError::Input(e.to_string()))?;
    let report = hurewicz(&p, args.max_degree).map_err(|e| CliError::Input(e.to_string()))?;
    println!(
        "# Hurewicz for the free {} algebra on one degree-{} generator",
        args.operad, args.generator_degree
    );
    println!("degree\tpi\thq\tiso\tepi");
    for k in 0..=args.max_degree {
        println!(
            "{k}\t{}\t{}\t{}\t{}",
            report.pi.dim(k as i32),
            report.hq.dim(k as i32),
            report.is_iso_at(k),
            report.is_epi_at(k)
        );
    }
    match report.connectivity {
        Some(n) => println!(
            "connectivity\t{n} (theorem range: iso <= {}, epi at {})",
            2 * n + 1,
            2 * n + 2
        ),
        None => println!("connectivity\tnone (pi_0 != 0)"),
    }
    Ok(CliOutcome::Success)
}
