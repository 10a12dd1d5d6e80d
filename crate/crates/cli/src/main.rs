use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use variety_forge::algebra::{
    catalog as acat, check_variety, join_polarization, load_algebra, split_polarization, tensor,
    write_algebra, Algebra,
};
use variety_forge::error::{AlgebraError, EngineError, OperadError, ScalarError, TermError};
use variety_forge::operad::{
    block_dims, free_delta_p_basis, koszul_dual_variety, koszulness_witness, KoszulMode,
    QuadraticPresentation,
};
use variety_forge::scalar::{parse_rational, Rational};
use variety_forge::term::{parse_expr, Signature, Symmetry};
use variety_forge::variety::catalog::{self as vcat, depolarized};
use variety_forge::variety::{
    consequence_certificate, dim_multilinear, dims_sampled, equivalent, parse_variety, write_variety,
    EngineOptions, Variety,
};

/// Highest arity computed exactly unless `--mode` says otherwise.
const AUTO_EXACT_LIMIT: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "variety-forge", version, about = "Identities, dimensions and Koszul duals of Poisson-type varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    Yes,
    No,
}

#[derive(clap::Args, Debug)]
struct ParamArgs {
    /// Value of the parameter delta, e.g. -1 or 1/2.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    delta: Option<Rational>,
}

#[derive(clap::Args, Debug)]
struct SampleArgs {
    /// exact, or sampled over random values of delta.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Number of parameter values in sampled mode.
    #[arg(long, default_value_t = 3)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of the multilinear component of a given arity.
    Dim {
        variety: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        arity: u32,
        #[command(flatten)]
        param: ParamArgs,
        #[command(flatten)]
        sample: SampleArgs,
        /// Leave out the timing line.
        #[arg(long)]
        no_timing: bool,
    },
    /// Whether an identity follows from a variety.
    Consequence {
        variety: String,
        /// An expression such as `bracket(dot(x1,x2),x3)`, or an identity name.
        #[arg(long)]
        target: String,
        #[arg(long)]
        arity: Option<usize>,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Whether two varieties have the same consequences at an arity.
    Equiv {
        first: String,
        second: String,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Evaluates the identities of a variety on an algebra.
    Check {
        algebra: String,
        variety: String,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Tensor product of two algebras.
    Tensor {
        first: String,
        second: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Splits one product into its symmetric and antisymmetric halves, or
    /// joins a two-operation algebra back into one product.
    Depolarize {
        algebra: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Koszul dual of a quadratic variety.
    Dual {
        variety: String,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Composes the generating series of a variety and its dual.
    Koszul {
        variety: String,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[command(flatten)]
        param: ParamArgs,
        #[command(flatten)]
        sample: SampleArgs,
        /// Print only `key=value` lines.
        #[arg(long)]
        kv: bool,
    },
    /// Spanning families of the free anti-Poisson algebra.
    FreeBasis {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        arity: u32,
        /// Also verify independence against the engine.
        #[arg(long)]
        check: bool,
    },
    /// Writes every catalog variety and algebra as a file.
    ExportCatalog {
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("'{s}' is not a rational number"))
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Resource(String),
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::ArityTooLarge { .. } | EngineError::Scalar(ScalarError::DegreeOverflow { .. }) => {
                Failure::Resource(e.to_string())
            }
            EngineError::Term(TermError::Scalar(ScalarError::DegreeOverflow { .. })) => {
                Failure::Resource(e.to_string())
            }
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<OperadError> for Failure {
    fn from(e: OperadError) -> Self {
        match e {
            OperadError::Engine(e) => e.into(),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Scalar(ScalarError::DegreeOverflow { .. }) => Failure::Resource(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn identity_alias(name: &str) -> &str {
    let name = name.strip_suffix("-identity").unwrap_or(name);
    match name {
        "sc1" => "A1",
        "sc2" => "A2",
        "tsc1" => "S1",
        "tsc2" => "S2",
        other => other,
    }
}

/// A variety file, a catalog name, `depol:<name>` for the one-operation
/// form, or the name of a catalog identity.
fn load_variety(arg: &str) -> Result<Variety, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        return parse_variety(&read(path)?).map_err(|e| Failure::Input(format!("{arg}: {e}")));
    }
    if let Some(rest) = arg.strip_prefix("depol:") {
        let v = load_variety(rest)?;
        let poisson_like = v.signature.len() == 2
            && v.signature.ops().iter().any(|o| o.symmetry == Symmetry::Symmetric)
            && v.signature.ops().iter().any(|o| o.symmetry == Symmetry::Antisymmetric);
        if !poisson_like {
            return Err(Failure::Input(format!("{rest}: depolarization needs a dot and a bracket")));
        }
        return Ok(depolarized(&v));
    }
    if let Some(v) = vcat::variety(arg) {
        return Ok(v);
    }
    let id = vcat::identity(identity_alias(arg))
        .ok_or_else(|| Failure::Input(format!("'{arg}' is neither a file nor a catalog variety or identity")))?;
    Ok(Variety::new(id.name, id.signature, id.elements))
}

fn load_algebra_arg(arg: &str) -> Result<Algebra, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let mut a = load_algebra(&read(path)?).map_err(|e| Failure::Input(format!("{arg}: {e}")))?;
        if a.name == "algebra" {
            if let Some(stem) = path.file_stem() {
                a.name = stem.to_string_lossy().into_owned();
            }
        }
        return Ok(a);
    }
    acat::algebra(arg).ok_or_else(|| Failure::Input(format!("'{arg}' is neither a file nor a catalog algebra")))
}

fn with_param(v: Variety, p: &ParamArgs) -> Variety {
    match &p.delta {
        Some(d) => v.specialize(d),
        None => v,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(answer: bool, expect: Option<Expect>) -> ExitCode {
    match expect {
        Some(e) if (e == Expect::Yes) != answer => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => {
            fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            eprintln!("wrote {}", p.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn sampled(mode: Option<Mode>, arity: usize) -> bool {
    match mode {
        Some(m) => m == Mode::Sampled,
        None => arity > AUTO_EXACT_LIMIT,
    }
}

fn cmd_dim(variety: &str, arity: usize, param: &ParamArgs, s: &SampleArgs, no_timing: bool) -> Outcome {
    let v = with_param(load_variety(variety)?, param);
    let opts = EngineOptions::from_env();
    let start = Instant::now();
    if sampled(s.mode, arity) {
        if s.mode.is_none() {
            eprintln!("warning: arity {arity} is above {AUTO_EXACT_LIMIT}; using sampled mode");
        }
        let r = dims_sampled(&v, arity, s.samples, s.seed, &opts)?;
        println!("dim={}", r.dims[arity - 1]);
        if r.probabilistic {
            let at: Vec<String> = r.samples.iter().map(|(q, _)| q.to_string()).collect();
            println!("probabilistic=true");
            println!("samples={}", at.join(","));
        }
    } else {
        println!("dim={}", dim_multilinear(&v, arity, &opts)?);
    }
    if !no_timing {
        println!("time={:.3}s", start.elapsed().as_secs_f64());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_consequence(variety: &str, target: &str, arity: Option<usize>, param: &ParamArgs, expect: Option<Expect>) -> Outcome {
    let v = with_param(load_variety(variety)?, param);
    let t = match vcat::identity(identity_alias(target)) {
        Some(id) if !target.contains('(') => {
            let sig: &Signature = &v.signature;
            if &id.signature != sig {
                return Err(Failure::Input(format!("identity '{target}' uses a different signature")));
            }
            id.elements[0].clone()
        }
        _ => parse_expr(target, &v.signature).map_err(|e| Failure::Input(format!("target: {e}")))?,
    };
    if let Some(n) = arity {
        if n != t.arity() {
            return Err(Failure::Input(format!("target has arity {}, not {n}", t.arity())));
        }
    }
    let cert = consequence_certificate(&v, &t, &EngineOptions::from_env())?;
    println!("consequence={}", yes_no(cert.is_some()));
    if let Some(c) = cert {
        println!("certificate={c}");
    }
    Ok(verdict(cert.is_some(), expect))
}

fn cmd_equiv(a: &str, b: &str, arity: usize, param: &ParamArgs, expect: Option<Expect>) -> Outcome {
    let v1 = with_param(load_variety(a)?, param);
    let v2 = with_param(load_variety(b)?, param);
    let same = equivalent(&v1, &v2, arity, &EngineOptions::from_env())?;
    println!("equivalent={}", yes_no(same));
    Ok(verdict(same, expect))
}

fn cmd_check(algebra: &str, variety: &str, param: &ParamArgs, expect: Option<Expect>) -> Outcome {
    let a = load_algebra_arg(algebra)?;
    let v = with_param(load_variety(variety)?, param);
    let report = check_variety(&a, &v)?;
    println!("{report}");
    println!("satisfied={}", yes_no(report.satisfied()));
    Ok(verdict(report.satisfied(), expect))
}

fn cmd_tensor(a: &str, b: &str, output: Option<&Path>) -> Outcome {
    let t = tensor(&load_algebra_arg(a)?, &load_algebra_arg(b)?)?;
    emit(&write_algebra(&t), output)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_depolarize(a: &str, output: Option<&Path>) -> Outcome {
    let a = load_algebra_arg(a)?;
    let plain = a.signature().len() == 1 && a.signature().symmetry(0) == Symmetry::None;
    let out = if plain { split_polarization(&a)? } else { join_polarization(&a)? };
    emit(&write_algebra(&out), output)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_dual(variety: &str, param: &ParamArgs, output: Option<&Path>) -> Outcome {
    let v = with_param(load_variety(variety)?, param);
    let dual = koszul_dual_variety(&v)?;
    let mut text = write_variety(&dual);
    if !dual.needs_generic() {
        let p = QuadraticPresentation::<Rational>::from_variety(&dual)?;
        if let Some(b) = block_dims(&p) {
            text += &format!(
                "# relations: {} total, {} mixed, {} in {} only, {} in {} only\n",
                b.total,
                b.mixed,
                b.pure_dot,
                dual.signature.name(0),
                b.pure_bracket,
                dual.signature.name(1),
            );
            if b.is_block_diagonal() && b.mixed == 0 {
                text += "# no relation mixes the two operations\n";
            }
        }
    }
    emit(&text, output)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_koszul(variety: &str, order: usize, param: &ParamArgs, s: &SampleArgs, kv: bool) -> Outcome {
    let v = with_param(load_variety(variety)?, param);
    let mode = if sampled(s.mode, order) {
        if s.mode.is_none() {
            eprintln!("warning: order {order} is above {AUTO_EXACT_LIMIT}; using sampled mode");
        }
        KoszulMode::Sampled { samples: s.samples, seed: s.seed }
    } else {
        KoszulMode::Exact
    };
    let w = koszulness_witness(&v, order, mode, &EngineOptions::from_env())?;
    if kv {
        print!("{}", w.to_key_values());
        return Ok(ExitCode::SUCCESS);
    }
    let list = |d: &[usize]| d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    println!("dims={}", list(&w.dims));
    println!("dual_dims={}", list(&w.dual_dims));
    println!("H(H!(t))={}", w.composition);
    match &w.deviation {
        Some((n, c)) => println!("deviation={c} at t^{n}"),
        None => println!("deviation=none through t^{order}"),
    }
    if w.probabilistic {
        println!("probabilistic=true");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_free_basis(arity: usize, check: bool) -> Outcome {
    let b = free_delta_p_basis(arity);
    let sig = Signature::poisson();
    for f in &b.families {
        println!("{} ({}):", f.name, f.trees.len());
        for t in &f.trees {
            println!("  {}", t.to_text(&sig));
        }
    }
    println!("{b}");
    if check {
        let ap = vcat::variety("anti-poisson").expect("catalog variety");
        let ok = b.is_basis_for(&ap, &EngineOptions::from_env())?;
        println!("basis={}", yes_no(ok));
        return Ok(verdict(ok, Some(Expect::Yes)));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(dir: &Path) -> Outcome {
    let io = |e: std::io::Error| Failure::Input(format!("{}: {e}", dir.display()));
    let vdir = dir.join("varieties");
    let adir = dir.join("algebras");
    fs::create_dir_all(&vdir).map_err(io)?;
    fs::create_dir_all(&adir).map_err(io)?;
    let mut count = 0;
    for n in vcat::variety_names() {
        let v = vcat::variety(n).expect("catalog variety");
        fs::write(vdir.join(format!("{n}.var")), write_variety(&v)).map_err(io)?;
        count += 1;
    }
    for n in acat::algebra_names() {
        let a = acat::algebra(n).expect("catalog algebra");
        fs::write(adir.join(format!("{n}.alg")), write_algebra(&a)).map_err(io)?;
        count += 1;
    }
    println!("exported {count} files to {}", dir.display());
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Dim { variety, arity, param, sample, no_timing } => {
            cmd_dim(&variety, arity as usize, &param, &sample, no_timing)
        }
        Command::Consequence { variety, target, arity, param, expect } => {
            cmd_consequence(&variety, &target, arity, &param, expect)
        }
        Command::Equiv { first, second, arity, param, expect } => cmd_equiv(&first, &second, arity, &param, expect),
        Command::Check { algebra, variety, param, expect } => cmd_check(&algebra, &variety, &param, expect),
        Command::Tensor { first, second, output } => cmd_tensor(&first, &second, output.as_deref()),
        Command::Depolarize { algebra, output } => cmd_depolarize(&algebra, output.as_deref()),
        Command::Dual { variety, param, output } => cmd_dual(&variety, &param, output.as_deref()),
        Command::Koszul { variety, order, param, sample, kv } => cmd_koszul(&variety, order, &param, &sample, kv),
        Command::FreeBasis { arity, check } => cmd_free_basis(arity as usize, check),
        Command::ExportCatalog { output } => cmd_export(&output),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
