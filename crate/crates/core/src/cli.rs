//! The `cantor` command line tool.
//!
//! Every subcommand reads artifacts in the text formats of [`crate::artifact`]
//! and prints canonical text. Failures print `error: <code>: <detail>` and
//! exit with status 2; membership tests exit 1 for a negative answer.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;

use crate::anchored::AnchoredHomeo;
use crate::artifact::{parse_artifact, print_anchored, print_mealy, print_prefix_map, Artifact};
use crate::circle;
use crate::error::{Error, Result};
use crate::germ;
use crate::mealy::SyncVerdict;
use crate::prefix_map::{self, PrefixMap};
use crate::words::{Params, Word};

/// Environment variable overriding certified depth bounds.
pub const DEPTH_ENV: &str = "CANTOR_DEPTH_BOUND";

#[derive(Parser, Debug)]
#[command(
    name = "cantor",
    about = "Exact computation with prefix maps and synchronizing transducers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArg {
    /// Write the result here instead of standard output.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct ParamArgs {
    #[arg(long, default_value_t = 2)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    r: u32,
}

impl ParamArgs {
    fn params(self) -> Result<Params> {
        Params::new(self.n, self.r)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Group {
    Gnr,
    Tnr,
    Bnr,
    Tbnr,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Render {
    Value,
    Word,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// First A, then B.
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    Invert {
        a: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Minimal machine, or canonical form of an element.
    Minimize {
        a: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    Sync {
        a: PathBuf,
    },
    Core {
        a: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    Member {
        #[arg(long, value_enum)]
        group: Group,
        a: PathBuf,
    },
    Germ {
        a: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Product of two elements of small support.
    Decompose {
        a: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// H⁻¹ G H.
    Conjugate {
        g: PathBuf,
        h: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    Apply {
        a: PathBuf,
        #[arg(long, conflicts_with = "point", required_unless_present = "point")]
        word: Option<String>,
        #[arg(long)]
        point: Option<String>,
    },
    Value {
        #[arg(long)]
        point: String,
        #[arg(long = "as", value_enum, default_value_t = Render::Value)]
        render: Render,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessKind {
    /// Some g with (E1)g inside E2; cone lists are comma separated.
    Flex {
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Identity outside U and moving x into V.
    Rubin {
        #[arg(long)]
        x: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Sends the n-adic values xs to ys in order.
    Transitive {
        #[arg(long)]
        xs: String,
        #[arg(long)]
        ys: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Fixes the n-adic point with offsets d = i and e = j.
    Germ {
        #[arg(long)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
        #[arg(long)]
        avoid: Option<String>,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArg,
    },
}

/// Runs the tool on `argv` (program name first) and returns the exit status.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
                let _ = writeln!(err, "error: Usage: {first}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {}", e.code(), e);
            2
        }
    }
}

fn read(path: &PathBuf) -> Result<Artifact> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_artifact(&text)
}

fn emit(text: &str, target: &OutputArg, out: &mut dyn Write) -> Result<()> {
    match &target.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string())),
    }
}

fn say(out: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(out, "{line}").map_err(|e| Error::Io(e.to_string()))
}

/// The element an artifact denotes, in anchored form.
pub fn as_element(a: &Artifact) -> Result<AnchoredHomeo> {
    match a {
        Artifact::PrefixMap(g) => Ok(AnchoredHomeo::from_prefix_map(g)),
        Artifact::Anchored(h) => Ok(h.clone()),
        Artifact::Raw(t) => t.to_anchored(),
        Artifact::Mealy(_) => Err(Error::Unsupported(
            "a bare machine has no dot letters; wrap it as an anchored element".into(),
        )),
    }
}

/// Depth override from the environment, if set.
pub fn depth_override() -> Result<Option<usize>> {
    match std::env::var(DEPTH_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidParams(format!("{DEPTH_ENV}={v:?} is not a depth"))),
        Err(_) => Ok(None),
    }
}

fn word_list(text: &str, params: &Params) -> Result<Vec<Word>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| Word::parse(s, params))
        .collect()
}

fn value_list(text: &str) -> Result<Vec<BigRational>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::InvalidWord(format!("cannot read value {s:?}")))
        })
        .collect()
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Compose { a, b, out: target } => {
            let text = match (read(&a)?, read(&b)?) {
                (Artifact::Mealy(x), Artifact::Mealy(y)) => print_mealy(&x.product(&y)?),
                (x, y) => print_anchored(&as_element(&x)?.compose(&as_element(&y)?)?),
            };
            emit(&text, &target, out)?;
        }
        Command::Invert { a, out: target } => {
            let text = match read(&a)? {
                Artifact::PrefixMap(g) => print_prefix_map(&g.inverse().canonicalize()),
                Artifact::Mealy(t) => print_mealy(&t.invert()?),
                other => print_anchored(&as_element(&other)?.inverse()?),
            };
            emit(&text, &target, out)?;
        }
        Command::Minimize { a, out: target } => {
            let text = match read(&a)? {
                Artifact::PrefixMap(g) => print_prefix_map(&g.canonicalize()),
                Artifact::Mealy(t) => print_mealy(&t.minimize().0),
                other => print_anchored(&as_element(&other)?.canonical()),
            };
            emit(&text, &target, out)?;
        }
        Command::Sync { a } => {
            let machine = match read(&a)? {
                Artifact::Mealy(t) => t,
                other => as_element(&other)?.core().clone(),
            };
            match machine.synchronization_certificate() {
                SyncVerdict::Synchronizing(cert) => {
                    let core = machine.core_states()?.len();
                    say(out, &format!("synchronizing level={} core_states={core}", cert.level))?;
                }
                SyncVerdict::NotSynchronizing(cycle) => {
                    let subset: Vec<String> = cycle[0].iter().map(|q| q.to_string()).collect();
                    say(out, &format!("not-synchronizing witness={{{}}}", subset.join(",")))?;
                    return Ok(1);
                }
            }
        }
        Command::Core { a, out: target } => {
            let core = match read(&a)? {
                Artifact::Mealy(t) => t.core_extract()?,
                other => as_element(&other)?.canonical().core().clone(),
            };
            emit(&print_mealy(&core), &target, out)?;
        }
        Command::Member { group, a } => {
            let artifact = read(&a)?;
            let verdict = membership(group, &artifact)?;
            let name = format!("{group:?}").to_lowercase();
            return match verdict {
                None => {
                    say(out, &format!("member group={name}"))?;
                    Ok(0)
                }
                Some(reason) => {
                    say(out, &format!("non-member group={name} reason={reason}"))?;
                    Ok(1)
                }
            };
        }
        Command::Germ { a, point } => {
            let h = as_element(&read(&a)?)?;
            let x = circle::parse_point(&point, &h.params())?;
            let g = germ::germ_at_depth(&h, &x, depth_override()?)?;
            say(out, &g.to_string())?;
        }
        Command::Decompose { a, out: target } => {
            let g = match read(&a)? {
                Artifact::PrefixMap(g) => g,
                other => as_element(&other)?
                    .trivial_core_extract()
                    .map_err(|_| Error::Unsupported("decompose needs a prefix map".into()))?,
            };
            let f = g.small_support_decompose()?;
            let n = g.params().n;
            let text = format!(
                "# fixes {}\n{}# fixes {}\n{}",
                f.first_fixed.to_text(n),
                print_prefix_map(&f.first),
                f.second_fixed.to_text(n),
                print_prefix_map(&f.second)
            );
            emit(&text, &target, out)?;
        }
        Command::Witness { kind } => {
            let (g, target) = witness(kind)?;
            emit(&print_prefix_map(&g), &target, out)?;
        }
        Command::Conjugate { g, h, out: target } => {
            let g = as_element(&read(&g)?)?;
            let h = as_element(&read(&h)?)?;
            emit(&print_anchored(&g.conjugate(&h)?), &target, out)?;
        }
        Command::Apply { a, word, point } => {
            let h = as_element(&read(&a)?)?;
            let params = h.params();
            if let Some(word) = word {
                let w = Word::parse(&word, &params)?;
                if !w.is_rooted() {
                    return Err(Error::InvalidWord(format!("{word} is not rooted")));
                }
                let image = h.evaluate_word(&w);
                let suffix = if image.complete { "" } else { " partial" };
                say(out, &format!("{}{suffix}", image.output.to_text(params.n)))?;
            } else if let Some(point) = point {
                let x = circle::parse_point(&point, &params)?;
                say(out, &h.evaluate_point(&x).to_text(params.n))?;
            }
        }
        Command::Value { point, render, params } => {
            let params = params.params()?;
            let x = circle::parse_point(&point, &params)?;
            let line = match render {
                Render::Value => circle::point_value(&x, &params).to_string(),
                Render::Word => match circle::nadic_expansions(&x, &params) {
                    Ok((left, right)) => format!("{} {}", left.to_text(params.n), right.to_text(params.n)),
                    Err(_) => x.to_text(params.n),
                },
            };
            say(out, &line)?;
        }
    }
    Ok(0)
}

fn witness(kind: WitnessKind) -> Result<(PrefixMap, OutputArg)> {
    Ok(match kind {
        WitnessKind::Flex { e1, e2, params, out } => {
            let params = params.params()?;
            let g = prefix_map::flexibility_witness(params, &word_list(&e1, &params)?, &word_list(&e2, &params)?)?;
            (g, out)
        }
        WitnessKind::Rubin { x, u, v, params, out } => {
            let params = params.params()?;
            let x = circle::parse_point(&x, &params)?;
            let g = prefix_map::rubin_witness(params, &x, &word_list(&u, &params)?, &word_list(&v, &params)?)?;
            (g, out)
        }
        WitnessKind::Transitive { xs, ys, params, out } => {
            let params = params.params()?;
            (
                prefix_map::transitive_witness(params, &value_list(&xs)?, &value_list(&ys)?)?,
                out,
            )
        }
        WitnessKind::Germ {
            point,
            i,
            j,
            avoid,
            params,
            out,
        } => {
            let params = params.params()?;
            let x = circle::parse_point(&point, &params)?;
            let avoid = avoid.map(|w| Word::parse(&w, &params)).transpose()?;
            (prefix_map::realize_germ(params, &x, i, j, avoid.as_ref())?, out)
        }
    })
}

/// `None` for a member, otherwise the reason it is not one.
fn membership(group: Group, artifact: &Artifact) -> Result<Option<String>> {
    let h = match as_element(artifact) {
        Ok(h) => h,
        Err(
            e @ (Error::NotSynchronizing(_)
            | Error::InverseNotSynchronizing
            | Error::CoreNotSynchronous(..)
            | Error::CoreNotInvertible(_)
            | Error::MissingRootOutput(_)
            | Error::NotBijective(..)
            | Error::NotSurjective),
        ) => return Ok(Some(e.code().to_string())),
        Err(e) => return Err(e),
    };
    let trivial = || h.trivial_core_extract().ok();
    Ok(match group {
        Group::Bnr => None,
        Group::Gnr => trivial().is_none().then(|| "NontrivialCore".to_string()),
        Group::Tnr => match trivial() {
            None => Some("NontrivialCore".to_string()),
            Some(g) if g.is_torder().is_none() => Some("NotCyclic".to_string()),
            Some(_) => None,
        },
        Group::Tbnr => (!circle::simeq_compatible(&h)?.compatible()).then(|| "NotCircleMap".to_string()),
    })
}
