//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::boolean::BooleanFunction;
use crate::codec::{decode_cell, encode_cell, random_valid_word, Scheme, SchemeKind};
use crate::constructions::{
    invariance_suite, read_instance, write_instance, Construction, ConstructionId, InstanceHeader,
};
use crate::error::{Error, Result};
use crate::groups::{map_index, GeneratorClass};
use crate::measures::{measure_report, Measure};
use crate::pointer::{random_symbol, Tag};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "transitive", version, about = "Transitive Boolean function toolkit")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ConstructionArgs {
    #[arg(long)]
    pub construction: String,
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 4)]
    pub b: usize,
}

impl ConstructionArgs {
    fn build(&self) -> Result<Construction> {
        Construction::new(self.construction.parse::<ConstructionId>()?, self.n, self.k, self.b)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluates a function on a bit string or a construction on an instance file.
    Eval {
        #[arg(long, conflicts_with = "construction")]
        function: Option<String>,
        /// Input bits, first variable first.
        #[arg(long)]
        bits: Option<String>,
        #[arg(long)]
        construction: Option<String>,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        b: usize,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Exact complexity measures of a function.
    Measure {
        #[arg(long)]
        function: String,
        /// Comma-separated subset of D,s,s0,s1,bs,C,C0,C1,deg,lambda,adeg.
        #[arg(long)]
        measures: Option<String>,
    },
    /// Decodes an instance file, or one cell codeword given in hex.
    Decode {
        #[arg(long)]
        construction: Option<String>,
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        hex: Option<String>,
    },
    /// Builds a random 1-input of a construction.
    Witness {
        #[command(flatten)]
        c: ConstructionArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orbit size of an index under the construction's generators.
    Orbit {
        #[command(flatten)]
        c: ConstructionArgs,
        #[arg(long, default_value_t = 0)]
        start: usize,
        /// Random index pairs connected by generator words.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Checks that every generator class preserves the construction's value.
    Invariance {
        #[command(flatten)]
        c: ConstructionArgs,
        /// Builder 1-inputs, and as many random inputs.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        per_class: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Encodes random symbols, rearranges the codewords and decodes them.
    Roundtrip {
        #[arg(long)]
        scheme: String,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        words: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the first codeword in hex.
        #[arg(long)]
        hex: bool,
    },
    /// Measures of the named functions at small parameters.
    Report {
        #[arg(long, default_value = "summary")]
        table: String,
        #[arg(long)]
        measures: Option<String>,
    },
}

/// Functions listed by `report --table summary`.
pub const SUMMARY_FUNCTIONS: &[&str] = &[
    "AND:4",
    "OR:4",
    "PARITY:4",
    "MAJORITY:5",
    "NAND_TREE:2",
    "XNOR_TREE:2",
    "NW",
    "NW^2",
    "RUB:3",
    "GSS1:4",
    "GSS2:6",
    "KSUM:4,2,2",
    "OR:2 o AND:3",
];

const SUMMARY_MEASURES: &[Measure] = &[
    Measure::D,
    Measure::S,
    Measure::Bs,
    Measure::C,
    Measure::Deg,
    Measure::Lambda,
    Measure::Adeg,
];

enum Outcome {
    Pass,
    Fail,
}

/// Runs the tool; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                eprint!("{text}");
            }
            return code;
        }
    };
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match dispatch(&cli, out) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) => 1,
                _ => 2,
            }
        }
    }
}

fn emit(out: &mut dyn Write, s: &str) -> Result<()> {
    writeln!(out, "{s}")?;
    Ok(())
}

fn parse_bits(s: &str) -> Result<BitString> {
    s.parse()
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::Eval {
            function,
            bits,
            construction,
            n,
            k,
            b,
            input,
        } => {
            let v = match (function, construction) {
                (Some(f), None) => {
                    let f = BooleanFunction::parse(f)?;
                    let bits = bits
                        .as_deref()
                        .ok_or_else(|| Error::Parse("--bits is required with --function".into()))?;
                    f.eval(&parse_bits(bits)?)?
                }
                (None, Some(c)) => {
                    let c = Construction::new(c.parse()?, *n, *k, *b)?;
                    let x = match (input, bits) {
                        (Some(p), _) => read_instance(p, Some(c.len()))?.1,
                        (None, Some(s)) => parse_bits(s)?,
                        (None, None) => return Err(Error::Parse("--input or --bits is required".into())),
                    };
                    c.eval(x.as_slice())?
                }
                _ => return Err(Error::Parse("give exactly one of --function and --construction".into())),
            };
            emit(out, if v { "1" } else { "0" })?;
            Ok(Outcome::Pass)
        }
        Command::Measure { function, measures } => {
            let f = BooleanFunction::parse(function)?;
            let ms = match measures {
                Some(m) => Measure::parse_list(m)?,
                None => Measure::ALL.to_vec(),
            };
            let report = measure_report(&f.truth_table()?, &ms)?;
            if csv {
                emit(out, &ms.iter().map(|m| m.name()).collect::<Vec<_>>().join(","))?;
                let row: Vec<String> = ms.iter().map(|&m| report.value(m).unwrap_or_else(|| "NA".into())).collect();
                emit(out, &row.join(","))?;
            } else {
                emit(out, &report.line(&ms))?;
            }
            Ok(Outcome::Pass)
        }
        Command::Decode {
            construction,
            scheme,
            n,
            input,
            hex,
        } => {
            if let (Some(s), Some(h)) = (scheme, hex) {
                let scheme = Scheme::new(s.parse::<SchemeKind>()?, *n)?;
                let bits = BitString::from_hex(h, scheme.cell_len())?;
                let d = decode_cell(&scheme, bits.as_slice());
                emit(
                    out,
                    &format!("valid={} symbol={} tag={}", d.valid as u8, d.symbol, d.tag.to_char()),
                )?;
                return Ok(Outcome::Pass);
            }
            let (Some(c), Some(p)) = (construction, input) else {
                return Err(Error::Parse(
                    "decode needs --scheme with --hex, or --construction with --input".into(),
                ));
            };
            let c = Construction::new(c.parse()?, *n, 1, 4)?;
            let x = read_instance(p, Some(c.len()))?.1;
            let (m, t) = c.decode(x.as_slice())?;
            write!(out, "{}", m.to_text())?;
            emit(out, "tags:")?;
            write!(out, "{}", t.to_text())?;
            Ok(Outcome::Pass)
        }
        Command::Witness { c: args, seed, out: path } => {
            let c = args.build()?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let x = c.build_one_input(&mut rng)?;
            let v = c.eval(x.as_slice())?;
            match path {
                Some(p) => {
                    let header = InstanceHeader {
                        construction: c.id.name().to_string(),
                        n: args.n,
                        k: args.k,
                        b: args.b,
                        seed: *seed,
                        len: x.len(),
                    };
                    write_instance(p, &header, &x)?;
                    emit(out, &format!("N={} value={} out={}", x.len(), v as u8, p.display()))?;
                }
                None => emit(out, &x.to_hex())?,
            }
            Ok(if v { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Orbit {
            c: args,
            start,
            samples,
            seed,
        } => {
            let c = args.build()?;
            let action = c.group()?;
            let n = action.len();
            if *start >= n {
                return Err(Error::Dimensions(format!("start {start} outside 0..{n}")));
            }
            let size = action.orbit(*start);
            let transitive = size == n;
            let verdict = if transitive { "TRANSITIVE" } else { "NOT TRANSITIVE" };
            let mut ok = transitive;
            let mut mapped = 0;
            if *samples > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                for _ in 0..*samples {
                    let p = rng.gen_range(0..n);
                    let q = rng.gen_range(0..n);
                    if let Ok(w) = map_index(&action, p, q) {
                        if action.apply_word(&w, p) == q {
                            mapped += 1;
                        }
                    }
                }
                ok &= mapped == *samples;
            }
            if csv {
                emit(out, "construction,orbit,N,verdict,mapped,samples")?;
                emit(out, &format!("{},{size},{n},{verdict},{mapped},{samples}", c.id))?;
            } else {
                emit(out, &format!("orbit={size}/{n} {verdict}"))?;
                if *samples > 0 {
                    emit(out, &format!("map_index={mapped}/{samples}"))?;
                }
            }
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Invariance {
            c: args,
            samples,
            per_class,
            seed,
        } => {
            let c = args.build()?;
            let s = invariance_suite(&c, *samples, *samples, *per_class, *seed)?;
            if csv {
                emit(out, "class,checks")?;
            }
            for class in GeneratorClass::ALL {
                let k = s.report.per_class.get(&class).copied().unwrap_or(0);
                emit(out, &if csv { format!("{},{k}", class.name()) } else { format!("{}={k}", class.name()) })?;
            }
            let line = format!(
                "checks={} violations={} control_violations={}/{}",
                s.report.checks,
                s.report.violations.len(),
                s.control.violations.len(),
                s.control.checks
            );
            emit(out, &line)?;
            for v in s.report.violations.iter().take(10) {
                emit(out, &format!("violation input={} generator={:?}", v.input, v.generator))?;
            }
            Ok(if s.passed() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Roundtrip {
            scheme,
            n,
            samples,
            words,
            seed,
            hex,
        } => {
            let scheme = Scheme::new(scheme.parse::<SchemeKind>()?, *n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let (rows, cols) = scheme.matrix_shape();
            let kind = scheme.matrix_type();
            let (mut ok, mut total) = (0usize, 0usize);
            for i in 0..*samples {
                let sym = random_symbol(rows, cols, kind, &mut rng);
                let tags = scheme.tags();
                let tag: Tag = tags[rng.gen_range(0..tags.len())];
                let base = encode_cell(&scheme, &sym, tag, Some(&mut rng))?;
                if *hex && i == 0 {
                    emit(out, &base.to_hex())?;
                }
                for _ in 0..*words {
                    let mut w = base.clone().into_vec();
                    random_valid_word(&scheme, &mut w, &mut rng);
                    let d = decode_cell(&scheme, &w);
                    total += 1;
                    if d.valid && d.symbol == sym && d.tag == tag {
                        ok += 1;
                    }
                }
            }
            let verdict = if ok == total { "OK" } else { "FAIL" };
            if csv {
                emit(out, "scheme,n,ok,total,verdict")?;
                emit(out, &format!("{},{n},{ok},{total},{verdict}", scheme.kind()))?;
            } else {
                emit(out, &format!("roundtrip={ok}/{total} {verdict}"))?;
            }
            Ok(if ok == total { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Report { table, measures } => {
            if table != "summary" {
                return Err(Error::Parse(format!("unknown table `{table}`")));
            }
            let ms = match measures {
                Some(m) => Measure::parse_list(m)?,
                None => SUMMARY_MEASURES.to_vec(),
            };
            if csv {
                let head: Vec<&str> = ms.iter().map(|m| m.name()).collect();
                emit(out, &format!("function,n,{}", head.join(",")))?;
            }
            for spec in SUMMARY_FUNCTIONS {
                let f = BooleanFunction::parse(spec)?;
                let r = measure_report(&f.truth_table()?, &ms)?;
                if csv {
                    let row: Vec<String> = ms.iter().map(|&m| r.value(m).unwrap_or_else(|| "NA".into())).collect();
                    emit(out, &format!("\"{spec}\",{},{}", f.arity(), row.join(",")))?;
                } else {
                    emit(out, &format!("{spec:<14} n={:<3} {}", f.arity(), r.line(&ms)))?;
                }
            }
            Ok(Outcome::Pass)
        }
    }
}
