//! `lamw`: command-line front end to the workbench.
//!
//! Exit codes: 0 all Ok, 1 a check failed, 2 Unknown (fuel ran out),
//! 3 bad input or usage.

use clap::{Parser, Subcommand, ValueEnum};
use lambda_omega::combinators::{
    build_ab, compile_tree, gk_bar, verify_ab_unfold, verify_f_cycle, verify_g_cycles, x_reduct,
    Bar, CombError, Construction, TreeSpec, XVerdict,
};
use lambda_omega::encodings::{
    church, godel_decode, godel_encode, godel_indices, i, k, kleene_j, kstar, omega, seq_decode,
    seq_encode, unchurch, Unchurch,
};
use lambda_omega::ordinals::{hscale, hsum, Ordinal, ProofSkeleton};
use lambda_omega::proofcheck::{
    check_canonical_endpiece, check_canonical_proof, check_standard_form, load_bundle,
    load_certificate, Verdict,
};
use lambda_omega::reduction::{gk_trace, head_reduce, is_normal, normalize, Trace};
use lambda_omega::suite::{certificate_for, run_suite, scripted_construction, SuiteConfig};
use lambda_omega::term::{list_redexes, parse_with_defs, Term};
use num_bigint::BigUint;
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lamw", version, about = "λβη workbench")]
struct Cli {
    /// Reduction budget; each subcommand has its own default.
    #[arg(long, global = true, env = "WORKBENCH_FUEL")]
    fuel: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the sampled suite checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Which F, G, H₁, H₂ to use.
    #[arg(long, global = true, value_enum, default_value_t = Which::Canonical)]
    construction: Which,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    /// P = Q = I with the Kleene enumerator.
    Canonical,
    /// P = Q = I with an enumerator sending index 2 to Ω and the rest to I.
    Scripted,
}

#[derive(Subcommand)]
enum Cmd {
    #[command(subcommand)]
    Term(TermCmd),
    /// Print the Church numeral n, or read one back.
    Church {
        n: Option<u64>,
        #[arg(long, conflicts_with = "n")]
        read: Option<String>,
    },
    #[command(subcommand)]
    Seq(SeqCmd),
    #[command(subcommand)]
    Godel(GodelCmd),
    #[command(subcommand)]
    Enum(EnumCmd),
    #[command(subcommand)]
    Comb(CombCmd),
    #[command(subcommand)]
    Tree(TreeCmd),
    #[command(subcommand)]
    Ord(OrdCmd),
    #[command(subcommand)]
    Proof(ProofCmd),
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Subcommand)]
enum TermCmd {
    /// βη-normal form by normal order.
    Normalize { term: String },
    /// Print a reduction trace.
    Trace {
        term: String,
        #[arg(long, value_enum, default_value_t = TraceKind::Normal)]
        strategy: TraceKind,
    },
    /// List the redexes of a term.
    Redexes { term: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TraceKind {
    Normal,
    Head,
    Gk,
}

#[derive(Subcommand)]
enum SeqCmd {
    Encode { items: Vec<BigUint> },
    Decode { code: BigUint },
    Concat { a: BigUint, b: BigUint },
}

#[derive(Subcommand)]
enum GodelCmd {
    Encode { term: String },
    Decode { index: BigUint },
    /// Several indices of the same term.
    Indices {
        term: String,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum EnumCmd {
    /// Normalize J n̲.
    J {
        #[arg(long)]
        index: u64,
    },
}

#[derive(Subcommand)]
enum CombCmd {
    /// Build H₁, H₂, F, G from P, Q and an enumerator.
    Build {
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        j: Option<String>,
        /// Print the terms, not just their sizes.
        #[arg(long)]
        show: bool,
    },
    /// Replay the head cycle G →* G H₂.
    VerifyG {
        #[arg(long, default_value_t = 1)]
        iterations: usize,
    },
    /// Replay F Z A B C →* F (Z(H₁C)) B A C.
    VerifyF {
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        #[arg(long)]
        z: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
    },
    /// gk̄ of a term in the F or G sequence.
    Gkbar { term: String },
    /// Look for a leftmost-outermost reduct headed by F or G.
    Xreduct { term: String },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Compile a tree spec (inline JSON or @file) to T.
    Compile {
        spec: String,
        /// Compare T c̲ with the native predicate for codes 0..=N.
        #[arg(long)]
        check_upto: Option<u64>,
    },
    /// Build the pair A, B for a tree.
    Ab {
        spec: String,
        #[arg(long)]
        show: bool,
    },
    /// Check the unfoldings of A and B.
    Unfold { spec: String },
}

#[derive(Subcommand)]
enum OrdCmd {
    /// Natural sum of the arguments.
    Sum { items: Vec<String> },
    Scale { a: String, n: u64 },
    Cmp { a: String, b: String },
    /// Ordinal and rank of a proof skeleton (inline JSON or @file).
    Assign { skeleton: String },
}

#[derive(Subcommand)]
enum ProofCmd {
    CheckEndpiece {
        file: String,
        /// Stop after the standard-form checks.
        #[arg(long)]
        standard_only: bool,
    },
    CheckProof { file: String },
}

#[derive(Subcommand)]
enum SuiteCmd {
    Run {
        /// Comma-separated check ids.
        #[arg(long, value_delimiter = ',')]
        filter: Vec<u32>,
        /// Include wall times in JSON output.
        #[arg(long)]
        timings: bool,
    },
    /// Write the certificate a suite check builds.
    EmitCert {
        #[arg(long)]
        id: u32,
        #[arg(long)]
        out: String,
    },
}

/// Usage and input errors; always exit 3.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Res = Result<u8, InputError>;

struct Ctx {
    fuel: Option<u64>,
    format: Format,
    which: Which,
}

impl Ctx {
    fn fuel(&self, default: u64) -> u64 {
        self.fuel.unwrap_or(default)
    }

    fn construction(&self) -> &'static Construction {
        match self.which {
            Which::Canonical => Construction::canonical(),
            Which::Scripted => scripted_construction(),
        }
    }

    fn emit(&self, text: impl AsRef<str>, value: Value) {
        match self.format {
            Format::Text => println!("{}", text.as_ref()),
            Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
        }
    }

    /// A term: a decimal is a Church numeral; I, K, Kstar, Omega and, when
    /// mentioned, F, G, H1, H2 of the chosen construction are predefined.
    fn term(&self, src: &str) -> Result<Term, InputError> {
        let src = src.trim();
        if let Ok(n) = src.parse::<u64>() {
            return Ok(church(n));
        }
        let mut defs: HashMap<String, Term> = [("I", i()), ("K", k()), ("Kstar", kstar()), ("Omega", omega())]
            .into_iter()
            .map(|(n, t)| (n.to_string(), t))
            .collect();
        let words: BTreeSet<&str> =
            src.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty()).collect();
        if ["F", "G", "H1", "H2"].iter().any(|w| words.contains(w)) {
            let c = self.construction();
            for (n, t) in [("F", &c.f), ("G", &c.g), ("H1", &c.h1), ("H2", &c.h2)] {
                defs.insert(n.into(), t.clone());
            }
        }
        let t = parse_with_defs(src, &defs)?;
        if !t.is_closed() {
            return Err(InputError(format!("{src:?} is not closed")));
        }
        Ok(t)
    }
}

/// Inline JSON, or the contents of a file when prefixed with `@`.
fn json_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, InputError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => arg.to_string(),
    };
    Ok(serde_json::from_str(&text)?)
}

fn trace_json(tr: &Trace) -> Value {
    json!({
        "start": tr.start.to_string(),
        "steps": tr.steps.iter().map(|s| json!({
            "site": s.site,
            "result": s.result.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Ok { .. } => 0,
        Verdict::Fail(_) => 1,
        Verdict::Unknown { .. } => 2,
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Ok { notes } if notes.is_empty() => "Ok".into(),
        Verdict::Ok { notes } => format!("Ok\n  note: {}", notes.join("\n  note: ")),
        Verdict::Fail(f) => format!(
            "Fail at {:?} {} clause {:?}: {}",
            f.path, f.location, f.clause, f.detail
        ),
        Verdict::Unknown { obligations } => {
            format!("Unknown\n  open: {}", obligations.join("\n  open: "))
        }
    }
}

fn comb_error(e: CombError) -> Res {
    eprintln!("{e}");
    Ok(1)
}

fn run(cli: Cli) -> Res {
    let cx = Ctx { fuel: cli.fuel, format: cli.format, which: cli.construction };
    match cli.cmd {
        Cmd::Term(c) => term_cmd(&cx, c),
        Cmd::Church { n, read } => match (n, read) {
            (Some(n), _) => {
                let t = church(n);
                cx.emit(t.to_string(), json!({ "n": n, "term": t.to_string() }));
                Ok(0)
            }
            (None, Some(src)) => {
                let fuel = cx.fuel(10_000);
                match unchurch(&cx.term(&src)?, fuel) {
                    Unchurch::Numeral(n) => {
                        cx.emit(n.to_string(), json!({ "numeral": n, "fuel": fuel }));
                        Ok(0)
                    }
                    Unchurch::NotANumeral => {
                        cx.emit("not a numeral", json!({ "numeral": null, "fuel": fuel }));
                        Ok(1)
                    }
                    Unchurch::Unknown => {
                        cx.emit(format!("unknown (fuel {fuel})"), json!({ "unknown": true, "fuel": fuel }));
                        Ok(2)
                    }
                }
            }
            (None, None) => Err(InputError("give n or --read TERM".into())),
        },
        Cmd::Seq(c) => {
            let (text, value) = match c {
                SeqCmd::Encode { items } => {
                    let code = seq_encode(&items);
                    (code.to_string(), json!({ "code": code.to_string() }))
                }
                SeqCmd::Decode { code } => {
                    let items: Vec<String> = seq_decode(&code).iter().map(|x| x.to_string()).collect();
                    (format!("<{}>", items.join(", ")), json!({ "items": items }))
                }
                SeqCmd::Concat { a, b } => {
                    let code = lambda_omega::encodings::seq_concat(&a, &b);
                    (code.to_string(), json!({ "code": code.to_string() }))
                }
            };
            cx.emit(text, value);
            Ok(0)
        }
        Cmd::Godel(c) => {
            let (text, value) = match c {
                GodelCmd::Encode { term } => {
                    let n = godel_encode(&cx.term(&term)?);
                    (n.to_string(), json!({ "index": n.to_string() }))
                }
                GodelCmd::Decode { index } => {
                    let t = godel_decode(&index);
                    (t.to_string(), json!({ "term": t.to_string() }))
                }
                GodelCmd::Indices { term, count } => {
                    let ns: Vec<String> =
                        godel_indices(&cx.term(&term)?, count).iter().map(|n| n.to_string()).collect();
                    (ns.join("\n"), json!({ "indices": ns }))
                }
            };
            cx.emit(text, value);
            Ok(0)
        }
        Cmd::Enum(EnumCmd::J { index }) => {
            let fuel = cx.fuel(10_000_000);
            let app = Term::app(kleene_j(), church(index));
            match lambda_omega::reduction::normalize_fast(&app, fuel) {
                Ok((t, used)) => {
                    cx.emit(
                        format!("{t}\n({used} steps, fuel {fuel})"),
                        json!({ "index": index, "term": t.to_string(), "steps": used, "fuel": fuel }),
                    );
                    Ok(0)
                }
                Err(_) => {
                    cx.emit(
                        format!("unknown: no normal form within fuel {fuel}"),
                        json!({ "index": index, "unknown": true, "fuel": fuel }),
                    );
                    Ok(2)
                }
            }
        }
        Cmd::Comb(c) => comb_cmd(&cx, c),
        Cmd::Tree(c) => tree_cmd(&cx, c),
        Cmd::Ord(c) => ord_cmd(&cx, c),
        Cmd::Proof(c) => proof_cmd(&cx, c),
        Cmd::Suite(c) => suite_cmd(&cx, c, cli.seed),
    }
}

fn term_cmd(cx: &Ctx, c: TermCmd) -> Res {
    match c {
        TermCmd::Normalize { term } => {
            let fuel = cx.fuel(10_000);
            let t = cx.term(&term)?;
            let n = normalize(&t, fuel);
            let steps = n.trace().len();
            if n.is_normal() {
                cx.emit(
                    n.term().to_string(),
                    json!({ "normal_form": n.term().to_string(), "steps": steps, "fuel": fuel }),
                );
                Ok(0)
            } else {
                cx.emit(
                    format!("unknown: no normal form within fuel {fuel}\nreached {}", n.term()),
                    json!({ "unknown": true, "reached": n.term().to_string(), "steps": steps, "fuel": fuel }),
                );
                Ok(2)
            }
        }
        TermCmd::Trace { term, strategy } => {
            let fuel = cx.fuel(1_000);
            let t = cx.term(&term)?;
            let tr = match strategy {
                TraceKind::Normal => normalize(&t, fuel).trace().clone(),
                TraceKind::Head => head_reduce(&t, fuel),
                TraceKind::Gk => {
                    let mut tr = Trace::new(t.clone(), lambda_omega::reduction::Strategy::Gk);
                    for _ in 0..fuel {
                        let round = gk_trace(tr.last());
                        if round.is_empty() {
                            break;
                        }
                        tr.extend(round);
                    }
                    tr
                }
            };
            let text: Vec<String> = tr.terms().iter().enumerate().map(|(n, t)| format!("{n}: {t}")).collect();
            cx.emit(text.join("\n"), trace_json(&tr));
            Ok(0)
        }
        TermCmd::Redexes { term } => {
            let t = cx.term(&term)?;
            let sites = list_redexes(&t);
            let text: Vec<String> = sites
                .iter()
                .map(|s| {
                    let sub = t.subterm(&s.path).expect("redex path");
                    format!("{:?} at {:?}: {sub}", s.kind, s.path)
                })
                .collect();
            let text = if text.is_empty() { "normal".to_string() } else { text.join("\n") };
            cx.emit(text, json!({ "normal": is_normal(&t), "redexes": sites }));
            Ok(0)
        }
    }
}

fn comb_cmd(cx: &Ctx, c: CombCmd) -> Res {
    match c {
        CombCmd::Build { p, q, j, show } => {
            let built;
            let con = if p.is_none() && q.is_none() && j.is_none() {
                cx.construction()
            } else {
                let p = p.map_or(Ok(i()), |s| cx.term(&s))?;
                let q = q.map_or(Ok(i()), |s| cx.term(&s))?;
                let j = j.map_or_else(|| Ok(kleene_j()), |s| cx.term(&s))?;
                built = Construction::new(&p, &q, &j);
                &built
            };
            let parts = [("H1", &con.h1), ("H2", &con.h2), ("F", &con.f), ("G", &con.g)];
            let text: Vec<String> = parts
                .iter()
                .map(|(n, t)| if show { format!("{n} = {t}") } else { format!("{n}: size {}", t.size()) })
                .collect();
            let value: serde_json::Map<String, Value> = parts
                .iter()
                .map(|(n, t)| (n.to_string(), json!({ "size": t.size(), "term": t.to_string() })))
                .collect();
            cx.emit(text.join("\n"), Value::Object(value));
            Ok(0)
        }
        CombCmd::VerifyG { iterations } => match verify_g_cycles(&cx.construction().g, iterations) {
            Ok(tr) => {
                let per = tr.len() / iterations.max(1);
                cx.emit(
                    format!("G →* G H₂ repeated {iterations} times: {} head steps ({per} per cycle)", tr.len()),
                    json!({ "iterations": iterations, "steps": tr.len(), "steps_per_cycle": per }),
                );
                Ok(0)
            }
            Err(e) => comb_error(e),
        },
        CombCmd::VerifyF { iterations, z, a, b, c } => {
            let con = cx.construction();
            let (z, a, b, c) = (cx.term(&z)?, cx.term(&a)?, cx.term(&b)?, cx.term(&c)?);
            match verify_f_cycle(&con.f, &z, &a, &b, &c, iterations) {
                Ok(tr) => {
                    let args = con.f_args(tr.last()).expect("F-headed end");
                    let swapped = iterations % 2 == 1;
                    let parity_ok = if swapped { (&args[1], &args[2]) == (&b, &a) } else { (&args[1], &args[2]) == (&a, &b) };
                    let order = if swapped { "swapped" } else { "in original order" };
                    cx.emit(
                        format!(
                            "{iterations} rounds, {} head steps (8 per round); arguments 2/3 {order}",
                            tr.len()
                        ),
                        json!({ "iterations": iterations, "steps": tr.len(), "swapped": swapped, "parity_ok": parity_ok }),
                    );
                    Ok(if parity_ok { 0 } else { 1 })
                }
                Err(e) => comb_error(e),
            }
        }
        CombCmd::Gkbar { term } => {
            let fuel = cx.fuel(10_000);
            match gk_bar(cx.construction(), &cx.term(&term)?, fuel) {
                Ok(Bar::Reached(t)) => {
                    cx.emit(t.to_string(), json!({ "term": t.to_string(), "fuel": fuel }));
                    Ok(0)
                }
                Ok(Bar::Unknown) => {
                    cx.emit(format!("unknown (fuel {fuel})"), json!({ "unknown": true, "fuel": fuel }));
                    Ok(2)
                }
                Err(e) => comb_error(e),
            }
        }
        CombCmd::Xreduct { term } => {
            let fuel = cx.fuel(10_000);
            match x_reduct(cx.construction(), &cx.term(&term)?, fuel) {
                XVerdict::InX => {
                    cx.emit("in X", json!({ "in_x": true, "fuel": fuel }));
                    Ok(0)
                }
                XVerdict::Reduct(t) => {
                    cx.emit(
                        format!("not in X: reduces to {t}"),
                        json!({ "in_x": false, "reduct": t.to_string(), "fuel": fuel }),
                    );
                    Ok(1)
                }
                XVerdict::Unknown => {
                    cx.emit(format!("unknown (fuel {fuel})"), json!({ "unknown": true, "fuel": fuel }));
                    Ok(2)
                }
            }
        }
    }
}

fn tree_cmd(cx: &Ctx, c: TreeCmd) -> Res {
    match c {
        TreeCmd::Compile { spec, check_upto } => {
            let spec: TreeSpec = json_arg(&spec)?;
            let t = compile_tree(&spec)?;
            let Some(upto) = check_upto else {
                cx.emit(t.to_string(), json!({ "term": t.to_string(), "size": t.size() }));
                return Ok(0);
            };
            let fuel = cx.fuel(5_000_000);
            let mut mismatches = Vec::new();
            for n in 0..=upto {
                let native = spec.contains(n)?;
                match lambda_omega::reduction::normalize_fast(&Term::app(t.clone(), church(n)), fuel) {
                    Ok((nf, _)) if nf == if native { i() } else { kstar() } => {}
                    Ok(_) => mismatches.push(n),
                    Err(_) => {
                        cx.emit(format!("unknown at code {n} (fuel {fuel})"), json!({ "unknown": n, "fuel": fuel }));
                        return Ok(2);
                    }
                }
            }
            cx.emit(
                format!("size {}; codes 0..={upto}: {} mismatches {mismatches:?}", t.size(), mismatches.len()),
                json!({ "size": t.size(), "checked": upto + 1, "mismatches": mismatches, "fuel": fuel }),
            );
            Ok(if mismatches.is_empty() { 0 } else { 1 })
        }
        TreeCmd::Ab { spec, show } => {
            let t = compile_tree(&json_arg(&spec)?)?;
            let con = cx.construction();
            let (a, b) = build_ab(&t, &con.f, &con.g);
            let text = if show {
                format!("A = {a}\nB = {b}")
            } else {
                format!("A: size {}\nB: size {}", a.size(), b.size())
            };
            cx.emit(text, json!({ "A": a.to_string(), "B": b.to_string() }));
            Ok(0)
        }
        TreeCmd::Unfold { spec } => {
            let t = compile_tree(&json_arg(&spec)?)?;
            let con = cx.construction();
            let (a, b) = build_ab(&t, &con.f, &con.g);
            let fuel = cx.fuel(64);
            match verify_ab_unfold(&a, &b, fuel) {
                Ok((ta, tb)) => {
                    cx.emit(
                        format!("A unfolds in {} steps, B in {} steps", ta.len(), tb.len()),
                        json!({ "a_steps": ta.len(), "b_steps": tb.len(), "fuel": fuel }),
                    );
                    Ok(0)
                }
                Err(e) => comb_error(e),
            }
        }
    }
}

fn ord_cmd(cx: &Ctx, c: OrdCmd) -> Res {
    let parse = |s: &str| s.parse::<Ordinal>().map_err(InputError::from);
    match c {
        OrdCmd::Sum { items } => {
            let mut acc = Ordinal::zero();
            for s in &items {
                acc = hsum(&acc, &parse(s)?);
            }
            cx.emit(acc.to_string(), json!({ "sum": acc }));
        }
        OrdCmd::Scale { a, n } => {
            let r = hscale(&parse(&a)?, n);
            cx.emit(r.to_string(), json!({ "scaled": r }));
        }
        OrdCmd::Cmp { a, b } => {
            let (a, b) = (parse(&a)?, parse(&b)?);
            let sym = match a.cmp(&b) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            cx.emit(format!("{a} {sym} {b}"), json!({ "cmp": sym }));
        }
        OrdCmd::Assign { skeleton } => {
            let s: ProofSkeleton = json_arg(&skeleton)?;
            let ord = s.ord()?;
            let rank = s.rank().ok();
            let attained = s.sup_attained();
            let mut text = format!("ord {ord}");
            if let Some(r) = &rank {
                text += &format!("\nrank {r}");
            }
            if !attained.is_empty() {
                text += &format!("\nsup attained at {attained:?}");
            }
            cx.emit(text, json!({ "ord": ord, "rank": rank, "sup_attained": attained, "depth": s.depth() }));
        }
    }
    Ok(0)
}

fn proof_cmd(cx: &Ctx, c: ProofCmd) -> Res {
    let fuel = cx.fuel(10_000);
    let v = match c {
        ProofCmd::CheckEndpiece { file, standard_only } => {
            let cert = load_certificate(&std::fs::read_to_string(&file)?)?;
            let standard = check_standard_form(&cert);
            if standard_only || !standard.is_ok() {
                standard
            } else {
                check_canonical_endpiece(&cert, cx.construction(), fuel)
            }
        }
        ProofCmd::CheckProof { file } => {
            let (skel, certs) = load_bundle(&std::fs::read_to_string(&file)?)?;
            check_canonical_proof(&skel, &certs, cx.construction(), fuel)
        }
    };
    let mut value = serde_json::to_value(&v)?;
    value["fuel"] = json!(fuel);
    cx.emit(format!("{} (fuel {fuel})", verdict_text(&v)), value);
    Ok(verdict_code(&v))
}

fn suite_cmd(cx: &Ctx, c: SuiteCmd, seed: u64) -> Res {
    match c {
        SuiteCmd::Run { filter, timings } => {
            let only: Option<BTreeSet<u32>> =
                if filter.is_empty() { None } else { Some(filter.into_iter().collect()) };
            if let Some(bad) = only.iter().flatten().find(|id| !(1..=10).contains(*id)) {
                return Err(InputError(format!("no suite check {bad}")));
            }
            let mut report = run_suite(&SuiteConfig { seed, fuel: cx.fuel, only });
            let text: Vec<String> = report
                .checks
                .iter()
                .map(|r| {
                    format!(
                        "{:>2} {:<18} {:<7} steps={} fuel={} {:.0}ms  {}\n   {}",
                        r.id,
                        r.name,
                        format!("{:?}", r.verdict).to_uppercase(),
                        r.steps,
                        r.fuel,
                        r.wall_ms.unwrap_or(0.0),
                        r.anchor,
                        r.detail
                    )
                })
                .collect();
            let code = report.exit_code() as u8;
            if !timings {
                report.strip_timings();
            }
            cx.emit(text.join("\n"), serde_json::to_value(&report)?);
            Ok(code)
        }
        SuiteCmd::EmitCert { id, out } => {
            let cert = certificate_for(id)
                .ok_or_else(|| InputError(format!("suite check {id} does not build a certificate")))?;
            std::fs::write(&out, cert.to_json())?;
            cx.emit(format!("wrote {out}"), json!({ "id": id, "path": out }));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
