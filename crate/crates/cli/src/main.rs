//! `pecat`: command-line access to the parabolic and Borel combinatorics of
//! `pe(n)`, its weight maps and characters, the injectivity classifiers and
//! the verification suite.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on invalid input.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pe_parabolic::characters::{even_verma_character, induced_character, verma_character};
use pe_parabolic::oracle::{self, Suite, VerifyOptions};
use pe_parabolic::partitions::{enumerate, to_sign_form, Bipartition, BrpClass};
use pe_parabolic::periplectic::{
    borel_hasse_edges, borel_odd_dim, borel_odd_roots, canonicalize, decompose, duality_weight_map,
    hat_dual, levi_type, parabolic_hasse_edges, parabolic_included, pi_predicates,
    ringel_weight_map, tilting_odd_reflection, verma_socle_label, zeta,
};
use pe_parabolic::piclass::{self, FamilyWeight};
use pe_parabolic::weights::{parse_q_list, Family, Parity, ParityWeight, Root, Weight, Q};
use pe_parabolic::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "pecat",
    version,
    about = "Parabolic subalgebras, weight maps and characters for pe(n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical bipartition and decomposition induced by an integral δ.
    Classify {
        #[arg(long)]
        n: usize,
        /// Comma-separated rationals, e.g. "5,-5" or "3/2,0".
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// All Borel subalgebras containing the standard even Borel.
    Borels {
        #[arg(long)]
        n: usize,
        /// Print the inclusion Hasse diagram in DOT format.
        #[arg(long)]
        dot: bool,
    },
    /// All reduced parabolic subalgebras containing the standard even Borel.
    Parabolics {
        #[arg(long)]
        n: usize,
        /// Include the inclusion order and its covering relations.
        #[arg(long)]
        order: bool,
        /// Print the inclusion Hasse diagram in DOT format.
        #[arg(long)]
        dot: bool,
    },
    /// Label of the dual reduced parabolic.
    Dual {
        #[arg(long)]
        n: usize,
        /// JSON such as {"mu":[2,1],"nu":[]}.
        #[arg(long)]
        bipartition: String,
    },
    /// Weight-level maps.
    Weightmap {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        map: MapKind,
        /// Borel label as bipartition JSON (inj-label, tilt-label, socle).
        #[arg(long)]
        borel: Option<String>,
        /// Reduced parabolic label as bipartition JSON (ringel).
        #[arg(long)]
        parabolic: Option<String>,
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// Odd root as comma-separated coordinates (tilting-reflection).
        #[arg(long, allow_hyphen_values = true)]
        root: Option<String>,
    },
    /// Injectivity of the projective cover P(λ) in the full category O.
    Piclass {
        #[arg(long, value_enum)]
        family: FamilyKind,
        /// Comma-separated family parameters: pe/q "n", gl "m,n", spo "n,m", d21 "zeta".
        #[arg(long, default_value = "")]
        params: String,
        /// "δ-block|ε-block"; families without a δ-block take the ε-block alone.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Truncated formal character.
    Char {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        borel: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = CharKind::Verma)]
        kind: CharKind,
        /// Parity of the highest weight, 0 or 1.
        #[arg(long, default_value_t = 0)]
        parity: u8,
    },
    /// Brute-force verification suite.
    Verify {
        #[arg(long)]
        n: usize,
        /// Grid bound for the δ sweeps; defaults to n + 2.
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Random weights per Ringel check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MapKind {
    Ringel,
    Duality,
    TiltingReflection,
    InjLabel,
    TiltLabel,
    Socle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyKind {
    Pe,
    Gl,
    Q,
    SpoEven,
    SpoOdd,
    D21,
    G3,
    F31,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CharKind {
    Verma,
    EvenVerma,
    Induced,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    All,
    Classification,
    Orders,
    Levi,
    Ringel,
    Flag,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Classification => Suite::Classification,
            SuiteArg::Orders => Suite::Orders,
            SuiteArg::Levi => Suite::Levi,
            SuiteArg::Ringel => Suite::Ringel,
            SuiteArg::Flag => Suite::Flag,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// What a command produced: text for stdout and whether verification passed.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn json(v: Value) -> Output {
        Output {
            text: serde_json::to_string_pretty(&v).expect("JSON values serialize"),
            ok: true,
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn parse_bipartition(s: &str) -> Result<Bipartition> {
    serde_json::from_str(s).map_err(|e| Error::Parse {
        position: e.column().saturating_sub(1),
        message: format!("bipartition JSON: {e}"),
    })
}

fn parse_eps_weight(s: &str, n: usize) -> Result<Weight> {
    let c = parse_q_list(s)?;
    if c.len() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("{n} coordinates"),
            found: c.len().to_string(),
        });
    }
    Ok(Weight::eps_only(c))
}

/// Splits `"δ|ε"`; without a bar the whole string is the ε-block.
fn parse_blocks(s: &str) -> Result<(Vec<Q>, Vec<Q>)> {
    match s.split_once('|') {
        None => Ok((vec![], parse_q_list(s)?)),
        Some((d, e)) => {
            let delta = parse_q_list(d)?;
            let eps = parse_q_list(e).map_err(|err| match err {
                Error::Parse { position, message } => Error::Parse {
                    position: position + d.len() + 1,
                    message,
                },
                other => other,
            })?;
            Ok((delta, eps))
        }
    }
}

fn parse_family(kind: FamilyKind, params: &str) -> Result<Family> {
    let p = parse_q_list(params)?;
    let count = |k: usize| -> Result<()> {
        if p.len() == k {
            Ok(())
        } else {
            Err(usage(format!(
                "{kind:?} expects {k} parameter(s), got {}",
                p.len()
            )))
        }
    };
    let rank = |x: &Q| -> Result<usize> {
        if x.is_integer() && *x.numer() > 0 {
            Ok(*x.numer() as usize)
        } else {
            Err(usage(format!("rank must be a positive integer, got {x}")))
        }
    };
    Ok(match kind {
        FamilyKind::Pe => {
            count(1)?;
            Family::Pe { n: rank(&p[0])? }
        }
        FamilyKind::Q => {
            count(1)?;
            Family::Q { n: rank(&p[0])? }
        }
        FamilyKind::Gl => {
            count(2)?;
            Family::Gl {
                m: rank(&p[0])?,
                n: rank(&p[1])?,
            }
        }
        FamilyKind::SpoEven => {
            count(2)?;
            Family::SpoEven {
                n: rank(&p[0])?,
                m: rank(&p[1])?,
            }
        }
        FamilyKind::SpoOdd => {
            count(2)?;
            Family::SpoOdd {
                n: rank(&p[0])?,
                m: rank(&p[1])?,
            }
        }
        FamilyKind::D21 => {
            count(1)?;
            Family::D21 { zeta: p[0] }
        }
        FamilyKind::G3 => {
            count(0)?;
            Family::G3
        }
        FamilyKind::F31 => {
            count(0)?;
            Family::F31
        }
    })
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn dot(name: &str, labels: &[Bipartition], edges: &[(usize, usize)]) -> String {
    let mut out = format!("digraph {name} {{\n");
    for (i, x) in labels.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{x}\"];\n"));
    }
    for (i, j) in edges {
        out.push_str(&format!("  n{i} -> n{j};\n"));
    }
    out.push('}');
    out
}

fn run(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Classify { n, delta } => {
            let d = parse_eps_weight(&delta, n)?;
            let x = canonicalize(&d, n)?;
            let decomposition = decompose(&d, n)?;
            Ok(Output::json(json!({
                "n": n,
                "delta": d,
                "bipartition": x,
                "zeta": zeta(&x, n)?,
                "decomposition": decomposition,
                "reduced": decomposition.is_reduced(),
                "borel": decomposition.is_borel(),
            })))
        }
        Command::Borels { n, dot: as_dot } => {
            let all = enumerate(n, BrpClass::Borel);
            let edges = borel_hasse_edges(n)?;
            if as_dot {
                return Ok(Output {
                    text: dot("borels", &all, &edges),
                    ok: true,
                });
            }
            let entries = all
                .iter()
                .map(|x| {
                    Ok(json!({
                        "label": x,
                        "odd_roots": borel_odd_roots(x, n)?.iter().map(|r| &r.weight).collect::<Vec<_>>(),
                        "dim": borel_odd_dim(x, n)?,
                    }))
                })
                .collect::<Result<Vec<Value>>>()?;
            Ok(Output::json(
                json!({ "n": n, "borels": entries, "hasse_edges": edges }),
            ))
        }
        Command::Parabolics {
            n,
            order,
            dot: as_dot,
        } => {
            let all = enumerate(n, BrpClass::Reduced);
            let edges = parabolic_hasse_edges(n)?;
            if as_dot {
                return Ok(Output {
                    text: dot("parabolics", &all, &edges),
                    ok: true,
                });
            }
            let forms = all
                .iter()
                .map(|x| to_sign_form(x, n))
                .collect::<Result<Vec<_>>>()?;
            let entries = all
                .iter()
                .zip(&forms)
                .map(|(x, s)| {
                    Ok(json!({
                        "label": x,
                        "sign_form": s,
                        "levi_type": levi_type(x, n)?,
                    }))
                })
                .collect::<Result<Vec<Value>>>()?;
            let mut out = json!({ "n": n, "parabolics": entries });
            if order {
                let mut leq = Vec::new();
                for (i, a) in forms.iter().enumerate() {
                    for (j, b) in forms.iter().enumerate() {
                        if i != j && parabolic_included(a, b)? {
                            leq.push((i, j));
                        }
                    }
                }
                out["strict_inclusions"] = to_json(&leq);
                out["hasse_edges"] = to_json(&edges);
            }
            Ok(Output::json(out))
        }
        Command::Dual { n, bipartition } => {
            let x = parse_bipartition(&bipartition)?;
            Ok(Output::json(
                json!({ "label": x, "dual": hat_dual(&x, n)? }),
            ))
        }
        Command::Weightmap {
            n,
            map,
            borel,
            parabolic,
            weight,
            root,
        } => {
            let l = parse_eps_weight(&weight, n)?;
            let need = |flag: Option<String>, name: &str| -> Result<Bipartition> {
                let s = flag.ok_or_else(|| usage(format!("--map {map:?} requires --{name}")))?;
                parse_bipartition(&s)
            };
            let output = match map {
                MapKind::Ringel => {
                    let x = need(parabolic, "parabolic")?;
                    to_json(&ringel_weight_map(&to_sign_form(&x, n)?, &l)?)
                }
                MapKind::Duality => to_json(&duality_weight_map(&l, n)?),
                MapKind::TiltingReflection => {
                    let r =
                        root.ok_or_else(|| usage("--map tilting-reflection requires --root"))?;
                    let alpha = Root::odd(parse_eps_weight(&r, n)?);
                    to_json(&tilting_odd_reflection(&l, &alpha)?)
                }
                MapKind::InjLabel => {
                    to_json(&pi_predicates(&need(borel, "borel")?, &l, n)?.injective_label)
                }
                MapKind::TiltLabel => {
                    let (b, w) = pi_predicates(&need(borel, "borel")?, &l, n)?.tilting_label;
                    json!({ "borel": b, "weight": w })
                }
                MapKind::Socle => to_json(&verma_socle_label(&need(borel, "borel")?, &l, n)?),
            };
            Ok(Output::json(
                json!({ "map": format!("{map:?}"), "input": l, "output": output }),
            ))
        }
        Command::Piclass {
            family,
            params,
            weight,
        } => {
            let fam = parse_family(family, &params)?;
            let (lambda, mu) = parse_blocks(&weight)?;
            let fw = FamilyWeight::new(fam, lambda, mu)?;
            Ok(Output::json(to_json(&piclass::report(&fw)?)))
        }
        Command::Char {
            n,
            borel,
            weight,
            depth,
            kind,
            parity,
        } => {
            let b = parse_bipartition(&borel)?;
            let parity = Parity::try_from(parity)?;
            let lam = ParityWeight::new(parse_eps_weight(&weight, n)?, parity);
            let c = match kind {
                CharKind::Verma => verma_character(&b, &lam, depth, n)?,
                CharKind::EvenVerma => even_verma_character(&b, &lam, depth, n)?,
                CharKind::Induced => {
                    induced_character(&even_verma_character(&b, &lam, depth, n)?, n)?
                }
            };
            Ok(Output::json(to_json(&c)))
        }
        Command::Verify {
            n,
            bound,
            suite,
            samples,
            seed,
            format,
        } => {
            let opts = VerifyOptions {
                bound,
                samples,
                seed,
                ..VerifyOptions::default()
            };
            let report = oracle::verify(n, suite.into(), opts)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report).expect("report serializes"),
                Format::Table => report.to_table(),
            };
            Ok(Output {
                text,
                ok: report.passed(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            println!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
