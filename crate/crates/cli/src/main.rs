//! Command-line front end: build algebras, check axes, compute span
//! chains, run the identity-verification suite, and export artifacts.
//!
//! Exit codes: 0 full success, 1 verification failure, 2 usage or
//! configuration error. All JSON artifacts have sorted keys and canonical
//! scalar strings, so identical configurations produce byte-identical
//! output regardless of worker count.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use axial_core::{
    frobenius_form, hall_set, matsuo_algebra, s_chain, sym_transpositions, transposition_closure,
    FieldDescriptor, FieldKind, FrobeniusForm, FusionLaw, Permutation, RuleId, StructureAlgebra,
    SuiteMode, Vector, Verifier,
};

#[derive(Parser)]
#[command(
    name = "axial",
    version,
    about = "Exact computations in axial algebras of Jordan type",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 usage/config error.\n\
                  Set AXIAL_WORKERS to pin the number of verification threads;\n\
                  results are identical for any worker count."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an algebra and report its shape
    Build {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check basis elements against the fusion law
    Axes {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Comma-separated axes to check (default: every basis element)
        #[arg(long)]
        gens: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compute the span chain of a generator list
    Chain {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Comma-separated generators (default: four canonical ones)
        #[arg(long)]
        gens: Option<String>,
        /// Depth budget for the chain
        #[arg(long, default_value_t = 8)]
        max_level: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the identity-verification suite on four generators
    Verify {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Comma-separated generators, exactly four (default: canonical)
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Number of sampled instances for --mode sample
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Seed for --mode sample
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated rule names to restrict the suite to
        #[arg(long)]
        rules: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Write structure constants, Gram matrix, and chain dims to a directory
    Export {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Comma-separated generators for the chain (default: canonical)
        #[arg(long)]
        gens: Option<String>,
        /// Depth budget for the chain
        #[arg(long, default_value_t = 8)]
        max_level: usize,
        /// Also run a verification suite and write its report
        #[arg(long, value_enum, default_value_t = ExportMode::None)]
        mode: ExportMode,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for the artifact files
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportMode {
    None,
    Exhaustive,
    Sample,
}

#[derive(Args)]
struct AlgebraArgs {
    /// symN | hall81 | perms:FILE (JSON list of permutation image arrays)
    /// | sc:FILE (structure-constant JSON as written by export)
    #[arg(long)]
    algebra: String,
    /// Scalar field: q | fp | generic-eta
    #[arg(long)]
    field: Option<String>,
    /// Prime modulus, required for --field fp
    #[arg(long)]
    p: Option<u64>,
    /// Fusion parameter: exact rational such as 1/2, a residue for fp,
    /// or the keyword generic
    #[arg(long)]
    eta: Option<String>,
    /// Element cap when closing permutation generators
    #[arg(long, default_value_t = 4096)]
    cap: usize,
}

#[derive(Args)]
struct OutputArgs {
    /// Print the JSON artifact instead of the text summary
    #[arg(long)]
    json: bool,
    /// Also write the JSON artifact to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Ok(w) = std::env::var("AXIAL_WORKERS") {
        let n: usize = w
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .context("AXIAL_WORKERS must be a positive integer")?;
        // Ignore the error from setting the pool twice (tests call run
        // repeatedly in one process).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli.command {
        Command::Build { alg, out } => cmd_build(&alg, &out),
        Command::Axes { alg, gens, out } => cmd_axes(&alg, gens.as_deref(), &out),
        Command::Chain {
            alg,
            gens,
            max_level,
            out,
        } => cmd_chain(&alg, gens.as_deref(), max_level, &out),
        Command::Verify {
            alg,
            gens,
            mode,
            samples,
            seed,
            rules,
            out,
        } => cmd_verify(&alg, gens.as_deref(), mode, samples, seed, rules.as_deref(), &out),
        Command::Export {
            alg,
            gens,
            max_level,
            mode,
            samples,
            seed,
            out_dir,
        } => cmd_export(&alg, gens.as_deref(), max_level, mode, samples, seed, &out_dir),
    }
}

/// The resolved algebra together with the name used in reports.
struct Resolved {
    name: String,
    alg: StructureAlgebra,
}

fn resolve_field(args: &AlgebraArgs) -> Result<Option<FieldDescriptor>> {
    let explicit = args.field.is_some() || args.p.is_some() || args.eta.is_some();
    if !explicit {
        return Ok(None);
    }
    let generic_eta = args.eta.as_deref() == Some("generic");
    let kind = match &args.field {
        Some(f) => {
            let kind = FieldKind::parse(f).map_err(|e| anyhow!("{e}"))?;
            if generic_eta && kind != FieldKind::GenericEta {
                bail!("--eta generic contradicts --field {f}");
            }
            kind
        }
        None if generic_eta => FieldKind::GenericEta,
        None => FieldKind::Rationals,
    };
    if kind != FieldKind::PrimeField && args.p.is_some() {
        bail!("--p only applies to --field fp");
    }
    if kind == FieldKind::PrimeField && args.p.is_none() {
        bail!("--field fp needs --p");
    }
    let eta_spec = match kind {
        FieldKind::GenericEta => None,
        _ => args.eta.as_deref(),
    };
    FieldDescriptor::make(kind, args.p, eta_spec)
        .map(Some)
        .map_err(|e| anyhow!("invalid field: {e}"))
}

fn resolve_algebra(args: &AlgebraArgs) -> Result<Resolved> {
    let requested = resolve_field(args)?;
    let name = args.algebra.clone();
    if let Some(path) = args.algebra.strip_prefix("sc:") {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
        let alg = StructureAlgebra::from_json(&v).map_err(|e| anyhow!("{path}: {e}"))?;
        if let Some(want) = requested {
            if want.label() != alg.field().label() {
                bail!(
                    "field {} requested but {path} is over {}",
                    want.label(),
                    alg.field().label()
                );
            }
        }
        return Ok(Resolved { name, alg });
    }
    let desc = requested.unwrap_or_else(|| {
        FieldDescriptor::rationals(num::rational::BigRational::new(1.into(), 2.into()))
            .expect("1/2 is a valid fusion parameter")
    });
    if let Some(path) = args.algebra.strip_prefix("perms:") {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
        let arr = v
            .as_array()
            .ok_or_else(|| anyhow!("{path}: expected a JSON list of image arrays"))?;
        let gens = arr
            .iter()
            .map(|g| Permutation::from_json(g).map_err(|e| anyhow!("{path}: {e}")))
            .collect::<Result<Vec<_>>>()?;
        let set = transposition_closure(&gens, args.cap).map_err(|e| anyhow!("{e}"))?;
        let alg = matsuo_algebra(&set, &desc).map_err(|e| anyhow!("{e}"))?;
        return Ok(Resolved { name, alg });
    }
    if args.algebra == "hall81" {
        let alg = matsuo_algebra(&hall_set(), &desc).map_err(|e| anyhow!("{e}"))?;
        return Ok(Resolved { name, alg });
    }
    if let Some(n) = args.algebra.strip_prefix("sym") {
        let n: usize = n
            .parse()
            .map_err(|_| anyhow!("unknown algebra '{}'", args.algebra))?;
        let set = sym_transpositions(n).map_err(|e| anyhow!("{e}"))?;
        let alg = matsuo_algebra(&set, &desc).map_err(|e| anyhow!("{e}"))?;
        return Ok(Resolved { name, alg });
    }
    bail!(
        "unknown algebra '{}'; expected symN, hall81, perms:FILE, or sc:FILE",
        args.algebra
    )
}

/// A generator token is a basis label (t12, 1000, b5), a unit-point name
/// eK for the 81-point set, or a 0-based basis index.
fn parse_generator(alg: &StructureAlgebra, token: &str) -> Result<usize> {
    if let Some(i) = alg.label_index(token) {
        return Ok(i);
    }
    if let Some(k) = token.strip_prefix('e') {
        if let Ok(k) = k.parse::<usize>() {
            if (1..=4).contains(&k) {
                let mut label = ['0'; 4];
                label[k - 1] = '1';
                let label: String = label.iter().collect();
                if let Some(i) = alg.label_index(&label) {
                    return Ok(i);
                }
            }
        }
    }
    if let Ok(i) = token.parse::<usize>() {
        if i < alg.dim() {
            return Ok(i);
        }
        bail!("generator index {i} out of range for dimension {}", alg.dim());
    }
    bail!("unknown generator '{token}'")
}

fn parse_generators(alg: &StructureAlgebra, spec: Option<&str>) -> Result<Vec<usize>> {
    match spec {
        Some(s) => s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| parse_generator(alg, t))
            .collect(),
        // Canonical default: the four unit points when present, otherwise
        // the first basis elements cycled up to four.
        None => {
            let unit_points: Option<Vec<usize>> = (1..=4)
                .map(|k| {
                    let mut label = ['0'; 4];
                    label[k - 1] = '1';
                    alg.label_index(&label.iter().collect::<String>())
                })
                .collect();
            Ok(unit_points.unwrap_or_else(|| (0..4).map(|i| i % alg.dim()).collect()))
        }
    }
}

fn gen_vectors(alg: &StructureAlgebra, idx: &[usize]) -> Vec<Vector> {
    idx.iter().map(|&i| alg.basis_vector(i)).collect()
}

fn gen_labels(alg: &StructureAlgebra, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| alg.label(i).to_string()).collect()
}

fn build_form(alg: &StructureAlgebra) -> Result<FrobeniusForm> {
    frobenius_form(alg).map_err(|e| anyhow!("invariant form: {e}"))
}

fn emit(out: &OutputArgs, artifact: &Value, human: &str) -> Result<()> {
    let rendered = to_pretty(artifact);
    if out.json {
        println!("{rendered}");
    } else {
        print!("{human}");
    }
    if let Some(path) = &out.out {
        fs::write(path, rendered + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON serialization cannot fail")
}

fn cmd_build(args: &AlgebraArgs, out: &OutputArgs) -> Result<bool> {
    let r = resolve_algebra(args)?;
    let human = format!(
        "algebra {} over {}: dimension {}, basis [{}]\n",
        r.name,
        r.alg.field().label(),
        r.alg.dim(),
        summarize_labels(r.alg.labels())
    );
    emit(out, &r.alg.to_json(), &human)?;
    Ok(true)
}

fn summarize_labels(labels: &[String]) -> String {
    if labels.len() <= 8 {
        labels.join(", ")
    } else {
        format!(
            "{}, .., {} ({} total)",
            labels[..4].join(", "),
            labels[labels.len() - 1],
            labels.len()
        )
    }
}

fn cmd_axes(args: &AlgebraArgs, gens: Option<&str>, out: &OutputArgs) -> Result<bool> {
    let r = resolve_algebra(args)?;
    let targets = match gens {
        Some(s) => parse_generators(&r.alg, Some(s))?,
        None => (0..r.alg.dim()).collect(),
    };
    let law = FusionLaw::jordan();
    let mut rows = Vec::new();
    let mut human = format!(
        "{:<8} {:>10} {:>10} {:>12} {:>7} {:>10}\n",
        "axis", "idempotent", "semisimple", "eigen-dims", "fusion", "primitive"
    );
    let mut all_pass = true;
    for &i in &targets {
        let report = r
            .alg
            .check_axis(&r.alg.basis_vector(i), &law)
            .map_err(|e| anyhow!("axis {}: {e}", r.alg.label(i)))?;
        all_pass &= report.is_primitive_axis();
        human.push_str(&format!(
            "{:<8} {:>10} {:>10} {:>12} {:>7} {:>10}\n",
            r.alg.label(i),
            report.idempotent,
            report.semisimple,
            format!("{:?}", [report.eigen_dims.0, report.eigen_dims.1, report.eigen_dims.2]),
            report.fusion_ok(),
            report.primitive
        ));
        rows.push(json!({
            "axis": r.alg.label(i),
            "report": report.to_json(),
        }));
    }
    human.push_str(&format!(
        "{} of {} basis elements are primitive axes\n",
        rows.iter()
            .filter(|row| row["report"]["pass"] == json!(true))
            .count(),
        rows.len()
    ));
    let artifact = json!({
        "algebra": r.name,
        "field": r.alg.field().to_json(),
        "axes": rows,
        "pass": all_pass,
    });
    emit(out, &artifact, &human)?;
    Ok(all_pass)
}

fn cmd_chain(
    args: &AlgebraArgs,
    gens: Option<&str>,
    max_level: usize,
    out: &OutputArgs,
) -> Result<bool> {
    let r = resolve_algebra(args)?;
    let idx = parse_generators(&r.alg, gens)?;
    if idx.is_empty() {
        bail!("chain needs at least one generator");
    }
    let form = build_form(&r.alg)?;
    let profile = s_chain(&r.alg, &form, &gen_vectors(&r.alg, &idx), max_level)
        .map_err(|e| anyhow!("{e}"))?;
    let labels = gen_labels(&r.alg, &idx);
    let human = format!(
        "chain of [{}] in {}: dims {:?}, {}\n",
        labels.join(", "),
        r.name,
        profile.dims(),
        match profile.stabilized_at() {
            Some(k) => format!("stable at level {k} with dimension {}", profile.final_dim()),
            None => format!("not yet stable at depth {max_level}"),
        }
    );
    let mut artifact = json!({
        "algebra": r.name,
        "field": r.alg.field().to_json(),
        "generators": labels,
    });
    merge(&mut artifact, profile.to_json(false));
    emit(out, &artifact, &human)?;
    Ok(true)
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        for (k, v) in e {
            t.insert(k, v);
        }
    }
}

fn suite_mode(mode: Mode, samples: usize, seed: u64) -> SuiteMode {
    match mode {
        Mode::Exhaustive => SuiteMode::Exhaustive,
        Mode::Sample => SuiteMode::Sample {
            count: samples,
            seed,
        },
    }
}

fn parse_rules(spec: Option<&str>) -> Result<Option<Vec<RuleId>>> {
    match spec {
        None => Ok(None),
        Some(s) => s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| RuleId::parse(t).map_err(|e| anyhow!("{e}")))
            .collect::<Result<Vec<_>>>()
            .map(Some),
    }
}

fn cmd_verify(
    args: &AlgebraArgs,
    gens: Option<&str>,
    mode: Mode,
    samples: usize,
    seed: u64,
    rules: Option<&str>,
    out: &OutputArgs,
) -> Result<bool> {
    let r = resolve_algebra(args)?;
    let idx = parse_generators(&r.alg, gens)?;
    if idx.len() != 4 {
        bail!("verification needs exactly 4 generators, got {}", idx.len());
    }
    let form = build_form(&r.alg)?;
    let vecs = gen_vectors(&r.alg, &idx);
    let four: [Vector; 4] = vecs.try_into().expect("length checked above");
    let verifier = Verifier::new(&r.alg, &form, four).map_err(|e| anyhow!("{e}"))?;
    let rule_filter = parse_rules(rules)?;
    let mut report = verifier
        .run_suite(suite_mode(mode, samples, seed), rule_filter.as_deref())
        .map_err(|e| anyhow!("{e}"))?;
    report.algebra = r.name;
    emit(out, &report.to_json(), &report.human_summary())?;
    Ok(report.passed())
}

#[allow(clippy::too_many_arguments)]
fn cmd_export(
    args: &AlgebraArgs,
    gens: Option<&str>,
    max_level: usize,
    mode: ExportMode,
    samples: usize,
    seed: u64,
    out_dir: &std::path::Path,
) -> Result<bool> {
    let r = resolve_algebra(args)?;
    let idx = parse_generators(&r.alg, gens)?;
    let form = build_form(&r.alg)?;
    let profile = s_chain(&r.alg, &form, &gen_vectors(&r.alg, &idx), max_level)
        .map_err(|e| anyhow!("{e}"))?;
    fs::create_dir_all(out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;
    let mut written = vec![];
    let mut write = |name: &str, v: &Value| -> Result<()> {
        let path = out_dir.join(name);
        fs::write(&path, to_pretty(v) + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        written.push(name.to_string());
        Ok(())
    };
    write("algebra.json", &r.alg.to_json())?;
    write("gram.json", &form.to_json())?;
    let mut chain = json!({
        "algebra": r.name,
        "field": r.alg.field().to_json(),
        "generators": gen_labels(&r.alg, &idx),
    });
    merge(&mut chain, profile.to_json(false));
    write("chain.json", &chain)?;
    let mut passed = true;
    if mode != ExportMode::None {
        if idx.len() != 4 {
            bail!("verification needs exactly 4 generators, got {}", idx.len());
        }
        let four: [Vector; 4] = gen_vectors(&r.alg, &idx)
            .try_into()
            .expect("length checked above");
        let verifier = Verifier::new(&r.alg, &form, four).map_err(|e| anyhow!("{e}"))?;
        let suite = match mode {
            ExportMode::Exhaustive => SuiteMode::Exhaustive,
            ExportMode::Sample => SuiteMode::Sample {
                count: samples,
                seed,
            },
            ExportMode::None => unreachable!(),
        };
        let mut report = verifier.run_suite(suite, None).map_err(|e| anyhow!("{e}"))?;
        report.algebra = r.name.clone();
        write("report.json", &report.to_json())?;
        passed = report.passed();
    }
    println!(
        "exported {} to {}",
        written.join(", "),
        out_dir.display()
    );
    Ok(passed)
}
