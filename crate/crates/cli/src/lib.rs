//! Command-line jobs: parse input files, run one computation, and write a
//! deterministic report.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use sha2::{Digest, Sha256};

use koszul::barcobar::{cobar, BarComplex, HarrisonComplex};
use koszul::dg::HomologyReport;
use koszul::format::{
    detect, from_str, parse_element, parse_words, AlgebraFile, CoalgebraFile, GroupFile, HopfFile,
    Kind, LieFile, SimplicialFile,
};
use koszul::hopf::{
    hopf_invariant, integrate, parametrized_formula, AlgebraMap, BarCocycle, ParametrizedData,
};
use koszul::lie::chevalley_eilenberg;
use koszul::linalg::{format_scalar, parse_scalar, Ring};
use koszul::simplicial::{
    chains_with_coproduct, classifying_complex, collapse_quotient, CollapsePair,
};
use koszul::{Error, Result};

/// Version tag of the sign conventions, embedded in every report.
pub const CONVENTIONS: &str = "koszul-signs/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Homology,
    Cobar,
    Bar,
    GroupHomology,
    Harrison,
    Ce,
    FreeLie,
    Hopf,
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Homology => "homology",
            Command::Cobar => "cobar",
            Command::Bar => "bar",
            Command::GroupHomology => "group-homology",
            Command::Harrison => "harrison",
            Command::Ce => "ce",
            Command::FreeLie => "free-lie",
            Command::Hopf => "hopf",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Z")]
    Z,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "koszul", version, about = "Exact bar and cobar computations")]
pub struct Job {
    /// Computation to run.
    #[arg(value_enum)]
    pub command: Command,
    /// Input file (JSON).
    #[arg(long)]
    pub input: PathBuf,
    /// Top degree N of every construction.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    pub window: u32,
    #[arg(long, value_enum, default_value = "Q")]
    pub ring: RingArg,
    /// Report path; standard output if absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Subcomplex to collapse (simplicial inputs).
    #[arg(long)]
    pub sub: Option<PathBuf>,
    /// Comma-separated parameters for the parametrized formula.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub t_values: Vec<String>,
    /// Weight cap for bar words.
    #[arg(long)]
    pub max_weight: Option<usize>,
}

/// Process exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 1,
        Error::Verification(_) => 2,
        Error::Precondition(_) | Error::WindowTooSmall(_) => 3,
        Error::Internal(_) => 4,
    }
}

struct Inputs {
    main: String,
    sub: Option<String>,
    hash: String,
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load(job: &Job) -> Result<Inputs> {
    let main = read(&job.input)?;
    let sub = job.sub.as_ref().map(read).transpose()?;
    let mut h = Sha256::new();
    h.update(main.as_bytes());
    if let Some(s) = &sub {
        h.update([0u8]);
        h.update(s.as_bytes());
    }
    Ok(Inputs {
        main,
        sub,
        hash: hex::encode(h.finalize()),
    })
}

fn ring(job: &Job) -> Ring {
    match job.ring {
        RingArg::Q => Ring::Q,
        RingArg::Z => Ring::Z,
    }
}

fn rational_only(job: &Job) -> Result<()> {
    if job.ring == RingArg::Z {
        return Err(Error::Precondition(format!(
            "{} works over Q",
            job.command.name()
        )));
    }
    Ok(())
}

fn kind(text: &str) -> Result<Kind> {
    detect(&serde_json::from_str(text)?)
}

fn homology_lines(out: &mut String, c: &koszul::dg::Complex) -> Result<()> {
    let report: HomologyReport = c.homology(c.valid_degrees())?;
    write!(out, "{report}").expect("writing to a string");
    Ok(())
}

fn simplicial_coalgebra(inputs: &Inputs, n: usize, ring: Ring) -> Result<koszul::dg::DgCoalgebra> {
    let x = from_str::<SimplicialFile>(&inputs.main)?.build()?;
    match &inputs.sub {
        Some(s) => {
            let sub = from_str::<SimplicialFile>(s)?.build()?;
            let sub = x.subcomplex(
                sub.facets()
                    .iter()
                    .map(|f| {
                        f.iter()
                            .map(|&v| {
                                let name = &sub.vertices()[v];
                                x.vertices().iter().position(|u| u == name).ok_or_else(|| {
                                    Error::Precondition(format!(
                                        "vertex `{name}` is not in the complex"
                                    ))
                                })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            )?;
            collapse_quotient(&CollapsePair::new(x, sub)?, n, ring)
        }
        None => chains_with_coproduct(&x, n, ring),
    }
}

fn body(job: &Job, inputs: &Inputs) -> Result<String> {
    let n = job.window as usize;
    let r = ring(job);
    let mut out = String::new();
    let text = &inputs.main;
    match job.command {
        Command::Homology => {
            let c = match kind(text)? {
                Kind::Simplicial => simplicial_coalgebra(inputs, n, r)?.complex().clone(),
                Kind::Algebra => from_str::<AlgebraFile>(text)?.build(r)?.complex().clone(),
                Kind::Coalgebra => from_str::<CoalgebraFile>(text)?.build(r)?.complex().clone(),
                Kind::Group => {
                    classifying_complex(&from_str::<GroupFile>(text)?.build()?, n, true, r)
                }
                _ => {
                    return Err(Error::Parse(
                        "homology needs a complex, algebra, coalgebra or group".into(),
                    ))
                }
            };
            homology_lines(&mut out, &c)?;
        }
        Command::Cobar => {
            let c = match kind(text)? {
                Kind::Simplicial => simplicial_coalgebra(inputs, n + 1, r)?,
                Kind::Coalgebra => from_str::<CoalgebraFile>(text)?.build(r)?,
                _ => {
                    return Err(Error::Parse(
                        "cobar needs a coalgebra or simplicial complex".into(),
                    ))
                }
            };
            c.verify()?;
            homology_lines(&mut out, cobar(&c, n)?.complex())?;
        }
        Command::Bar => {
            let a = from_str::<AlgebraFile>(text)?.build(r)?;
            a.verify()?;
            homology_lines(&mut out, BarComplex::new(&a, n, job.max_weight)?.complex())?;
        }
        Command::GroupHomology => {
            let g = from_str::<GroupFile>(text)?.build()?;
            homology_lines(&mut out, &classifying_complex(&g, n, true, r))?;
        }
        Command::Harrison => {
            let a = from_str::<AlgebraFile>(text)?.build(r)?;
            let h = HarrisonComplex::new(&a, n, job.max_weight)?;
            homology_lines(&mut out, h.complex())?;
        }
        Command::Ce => {
            rational_only(job)?;
            let l = from_str::<LieFile>(text)?.build(n)?;
            l.verify()?;
            homology_lines(&mut out, &chevalley_eilenberg(&l, n)?)?;
        }
        Command::FreeLie => {
            rational_only(job)?;
            let l = from_str::<LieFile>(text)?.build(n)?;
            l.verify()?;
            let m = l.module();
            for d in 1..=l.window() {
                writeln!(out, "L_{d}: dim {} [{}]", m.dim(d), m.names(d).join(", "))
                    .expect("writing to a string");
            }
        }
        Command::Hopf => {
            rational_only(job)?;
            let file = from_str::<HopfFile>(text)?;
            let w = file.sphere()?;
            let value = match &file.map {
                None => {
                    let gamma =
                        BarCocycle::new(w.algebra(), parse_words(w.algebra(), &file.cocycle)?)?;
                    integrate(&w, &gamma)?
                }
                Some(map) => {
                    let source = map.source.build(Ring::Q)?;
                    let sm = source.complex().module();
                    let mut images = Vec::new();
                    for (name, image) in &map.images {
                        let g = sm
                            .find(name)
                            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
                        images.push((g, parse_element(w.algebra().complex().module(), image)?));
                    }
                    let f = AlgebraMap::new(&source, w.algebra(), images)?;
                    let gamma = BarCocycle::new(&source, parse_words(&source, &file.cocycle)?)?;
                    hopf_invariant(&gamma, &f, &w)?
                }
            };
            writeln!(out, "invariant = {}", format_scalar(&value)).expect("writing to a string");
            if !job.t_values.is_empty() {
                let p = file.parametrized.as_ref().ok_or_else(|| {
                    Error::Parse("--t-values needs a `parametrized` section".into())
                })?;
                let m = w.algebra().complex().module();
                let data = ParametrizedData {
                    xs: p
                        .x
                        .iter()
                        .map(|e| parse_element(m, e))
                        .collect::<Result<_>>()?,
                    ys: p
                        .y
                        .iter()
                        .map(|e| parse_element(m, e))
                        .collect::<Result<_>>()?,
                    theta: parse_element(m, &p.theta)?,
                };
                for t in &job.t_values {
                    let t = parse_scalar(t)?;
                    let ts = vec![t.clone(); data.xs.len()];
                    let v = parametrized_formula(&w, &data, &ts)?;
                    writeln!(
                        out,
                        "formula(t = {}) = {}",
                        format_scalar(&t),
                        format_scalar(&v)
                    )
                    .expect("writing to a string");
                }
            }
        }
        Command::Verify => {
            let k = kind(text)?;
            let what = match k {
                Kind::Simplicial => {
                    let c = simplicial_coalgebra(inputs, n, r)?;
                    c.verify()?;
                    "simplicial complex"
                }
                Kind::Group => {
                    from_str::<GroupFile>(text)?.build()?;
                    "group"
                }
                Kind::Algebra => {
                    from_str::<AlgebraFile>(text)?.build(r)?.verify()?;
                    "dg algebra"
                }
                Kind::Coalgebra => {
                    let reduced = from_str::<CoalgebraFile>(text)?.build(r)?.verify()?;
                    writeln!(out, "1-reduced = {reduced}").expect("writing to a string");
                    "dg coalgebra"
                }
                Kind::Lie => {
                    from_str::<LieFile>(text)?.build(n)?.verify()?;
                    "lie algebra"
                }
                Kind::Hopf => {
                    let file = from_str::<HopfFile>(text)?;
                    let w = file.sphere()?;
                    if file.map.is_none() {
                        BarCocycle::new(w.algebra(), parse_words(w.algebra(), &file.cocycle)?)?;
                    }
                    "sphere model"
                }
            };
            writeln!(out, "object = {what}").expect("writing to a string");
            writeln!(out, "status = ok").expect("writing to a string");
        }
    }
    Ok(out)
}

/// Runs a job and returns the report text.
pub fn run(job: &Job) -> Result<String> {
    let inputs = load(job)?;
    let body = body(job, &inputs)?;
    let mut report = String::new();
    writeln!(report, "command = {}", job.command.name()).expect("writing to a string");
    writeln!(report, "input-sha256 = {}", inputs.hash).expect("writing to a string");
    writeln!(report, "window = {}", job.window).expect("writing to a string");
    writeln!(report, "ring = {}", ring(job)).expect("writing to a string");
    writeln!(report, "conventions = {CONVENTIONS}").expect("writing to a string");
    report.push_str(&body);
    Ok(report)
}

/// Parses arguments, runs, writes the report, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let job = match Job::try_parse_from(args) {
        Ok(job) => job,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = run(&job).and_then(|report| match &job.output {
        Some(path) => std::fs::write(path, &report)
            .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{report}");
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
