//! Command-line surface for the rigged configuration bijection: wire-format
//! conversions, operator application, enumeration, the verification
//! battery, DOT export of crystal graphs, and the combinatorial R matrix.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use rigged_core::crystal_tableaux::{path_op, Path};
use rigged_core::bijection::{combinatorial_r, phi, phi_inv};
use rigged_core::rigged_config::{enumerate_all, rc_op, RiggedConfiguration};
use rigged_core::root_data::{AffineType, DynkinSpec};
use rigged_core::verify::{
    check_axioms, check_bijection, check_commutativity, check_convexity, check_r_isomorphism,
    tensor_elements, SuiteReport,
};
use rigged_core::Dir;

const DEFAULT_CAP: usize = 1_000_000;

#[derive(Parser)]
#[command(
    name = "rigged",
    about = "Rigged configurations, KR tableaux, and the bijection between them",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "A")]
    A,
    #[value(name = "D")]
    D,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    E,
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Commutativity,
    Axioms,
    Bijection,
    Convexity,
    Rmatrix,
}

#[derive(clap::Args)]
struct ShapeArgs {
    /// Affine family.
    #[arg(long = "type")]
    family: Family,
    /// Rank n of the family.
    #[arg(long)]
    rank: usize,
    /// Tensor product shape, leftmost factor first: "2,2:3,2" is
    /// B^{2,2} (x) B^{3,2}.
    #[arg(long)]
    shape: String,
    /// Abort any enumeration growing past this many elements.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Map a rigged configuration (JSON on stdin) to its tensor product.
    Rc2path,
    /// Map a tensor product (JSON on stdin) to its rigged configuration.
    Path2rc,
    /// Apply a Kashiwara operator to the element on stdin (either wire
    /// format); prints the image or "null".
    Op {
        /// Which operator: e or f.
        #[arg(long)]
        op: OpName,
        /// Dynkin node the operator acts at.
        #[arg(long)]
        index: usize,
    },
    /// Run verification suites over one tensor product shape; prints one
    /// report per line.
    Verify {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Single suite to run; the default battery runs all of them.
        #[arg(long)]
        suite: Option<SuiteName>,
    },
    /// List every rigged configuration of a shape, one JSON per line.
    Enumerate {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Print only the configuration at this position of the sorted
        /// enumeration.
        #[arg(long)]
        index: Option<usize>,
    },
    /// Emit the crystal graph of a tensor product as DOT text.
    Graph {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Write the DOT text to this file instead of stdout.
        #[arg(long)]
        dot_out: Option<PathBuf>,
    },
    /// Apply the combinatorial R matrix to the two leftmost factors of the
    /// tensor product on stdin.
    Rmatrix,
}

fn parse_shape(text: &str) -> anyhow::Result<Vec<(usize, usize)>> {
    let mut shape = Vec::new();
    for part in text.split(':') {
        let (r, s) = part
            .split_once(',')
            .ok_or_else(|| anyhow!("factor {part:?} is not of the form r,s"))?;
        let r: usize = r.trim().parse().context("bad node in --shape")?;
        let s: usize = s.trim().parse().context("bad width in --shape")?;
        shape.push((r, s));
    }
    if shape.is_empty() {
        return Err(anyhow!("--shape needs at least one factor"));
    }
    Ok(shape)
}

fn spec_of(args: &ShapeArgs) -> anyhow::Result<(DynkinSpec, Vec<(usize, usize)>)> {
    let family = match args.family {
        Family::A => AffineType::A,
        Family::D => AffineType::D,
    };
    let spec = DynkinSpec::new(family, args.rank)?;
    let shape = parse_shape(&args.shape)?;
    for &(r, _) in &shape {
        spec.check_node(r)?;
    }
    Ok((spec, shape))
}

fn read_stdin() -> anyhow::Result<String> {
    let mut buf = String::new();
    io::stdin().read_to_string(&mut buf).context("reading stdin")?;
    Ok(buf)
}

// Kept free of context so main can spot a closed pipe and stop quietly.
fn emit(line: &str) -> io::Result<()> {
    let mut stdout = io::stdout().lock();
    stdout.write_all(line.as_bytes())?;
    stdout.write_all(b"\n")
}

fn escape_label(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot_graph(spec: DynkinSpec, paths: &[Path]) -> String {
    let mut out = String::from("digraph crystal {\n");
    for (k, p) in paths.iter().enumerate() {
        out.push_str(&format!("  v{k} [label=\"{}\"];\n", escape_label(&p.to_string())));
    }
    let index: std::collections::BTreeMap<&Path, usize> =
        paths.iter().enumerate().map(|(k, p)| (p, k)).collect();
    for (k, p) in paths.iter().enumerate() {
        for i in spec.nodes() {
            if let Some(q) = path_op(p, i, Dir::F) {
                let j = index
                    .get(&q)
                    .expect("the tensor product is closed under the operators");
                out.push_str(&format!("  v{k} -> v{j} [label=\"{i}\"];\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

fn run_suite(
    name: SuiteName,
    spec: DynkinSpec,
    shape: &[(usize, usize)],
    cap: usize,
) -> anyhow::Result<SuiteReport> {
    let report = match name {
        SuiteName::Commutativity => check_commutativity(spec, shape, cap)?,
        SuiteName::Axioms => check_axioms(spec, shape, cap)?,
        SuiteName::Bijection => check_bijection(spec, shape, cap)?,
        SuiteName::Convexity => check_convexity(spec, shape, cap)?,
        SuiteName::Rmatrix => check_r_isomorphism(spec, shape, cap)?,
    };
    Ok(report)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Cmd::Rc2path => {
            let rc: RiggedConfiguration =
                serde_json::from_str(&read_stdin()?).context("parsing the configuration")?;
            let p = phi(&rc)?;
            emit(&serde_json::to_string(&p)?)?;
            Ok(0)
        }
        Cmd::Path2rc => {
            let p: Path =
                serde_json::from_str(&read_stdin()?).context("parsing the tensor product")?;
            let rc = phi_inv(&p)?;
            emit(&serde_json::to_string(&rc)?)?;
            Ok(0)
        }
        Cmd::Op { op, index } => {
            let dir = match op {
                OpName::E => Dir::E,
                OpName::F => Dir::F,
            };
            let value: serde_json::Value =
                serde_json::from_str(&read_stdin()?).context("parsing the element")?;
            if value.get("nu").is_some() {
                let rc: RiggedConfiguration = serde_json::from_value(value)?;
                rc.spec.check_node(index)?;
                match rc_op(&rc, index, dir) {
                    Some(out) => emit(&serde_json::to_string(&out)?)?,
                    None => emit("null")?,
                }
            } else if value.get("factors").is_some() {
                let p: Path = serde_json::from_value(value)?;
                p.spec.check_node(index)?;
                match path_op(&p, index, dir) {
                    Some(out) => emit(&serde_json::to_string(&out)?)?,
                    None => emit("null")?,
                }
            } else {
                return Err(anyhow!(
                    "stdin is neither a configuration (nu) nor a tensor product (factors)"
                ));
            }
            Ok(0)
        }
        Cmd::Verify { shape: args, suite } => {
            let (spec, shape) = spec_of(&args)?;
            let battery = match suite {
                Some(name) => vec![name],
                None => {
                    let mut all = vec![
                        SuiteName::Commutativity,
                        SuiteName::Axioms,
                        SuiteName::Bijection,
                        SuiteName::Convexity,
                    ];
                    if shape.len() >= 2 {
                        all.push(SuiteName::Rmatrix);
                    }
                    all
                }
            };
            let mut ok = true;
            for name in battery {
                let report = run_suite(name, spec, &shape, args.cap)?;
                ok &= report.is_ok();
                emit(&serde_json::to_string(&report)?)?;
            }
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Enumerate { shape: args, index } => {
            let (spec, shape) = spec_of(&args)?;
            let rcs = enumerate_all(spec, &shape, args.cap)?;
            match index {
                Some(k) => {
                    let rc = rcs.get(k).ok_or_else(|| {
                        anyhow!("index {k} out of range, {} configurations", rcs.len())
                    })?;
                    emit(&serde_json::to_string(rc)?)?;
                }
                None => {
                    let mut stdout = io::stdout().lock();
                    for rc in &rcs {
                        writeln!(stdout, "{}", serde_json::to_string(rc)?)?;
                    }
                }
            }
            Ok(0)
        }
        Cmd::Graph { shape: args, dot_out } => {
            let (spec, shape) = spec_of(&args)?;
            let paths = tensor_elements(spec, &shape, args.cap)?;
            let text = dot_graph(spec, &paths);
            match dot_out {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => io::stdout().lock().write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Cmd::Rmatrix => {
            let p: Path =
                serde_json::from_str(&read_stdin()?).context("parsing the tensor product")?;
            let out = combinatorial_r(&p)?;
            emit(&serde_json::to_string(&out)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        // The consumer hung up mid-stream; not an error on our side.
        Err(err)
            if err
                .downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
