//! Command-line driver. [`run`] returns the exit code and both output
//! streams so it can be tested without spawning a process.
//!
//! Exit codes: 0 success (proved, valid, certified), 1 negative answer
//! (failed, rejected, no certificate), 2 exhausted, 3 soundness violation,
//! 64 usage or query syntax error, 66 unreadable file or invalid program,
//! 70 internal error.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::calculus::{check_in_mode, register_lemma, AxiomEnv, Mode, Semantics};
use crate::engine::{resolve, Outcome, Query, DEFAULT_DEPTH};
use crate::oracle::{
    certify_gfp, certify_gfp_symbolic, gfp_in, lfp_in, valid, HerbrandBase, Policy,
    DEFAULT_MAX_ITERS,
};
use crate::program::Program;
use crate::proof::ProofTerm;
use crate::report::{
    atom_strings, CertificateReport, DerivationNode, LemmaReport, ModelReport, RunReport,
    VerdictReport,
};
use crate::syntax::{parse_atom, parse_formula, parse_program, parse_proof};
use crate::term::HornClause;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;
pub const EXIT_UNSOUND: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 66;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(
    name = "tcres",
    version,
    about = "Proof-relevant Horn clause resolution"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Ind,
    Coind,
    Ext,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Ind => Mode::Inductive,
            ModeArg::Coind => Mode::Coinductive,
            ModeArg::Ext => Mode::Extended,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SemanticsArg {
    Least,
    Greatest,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolicyArg {
    Opt,
    Pess,
}

#[derive(clap::Args, Debug)]
struct Output {
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Render ν, λ and ⇒.
    #[arg(long)]
    unicode: bool,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a proof of a query.
    Resolve {
        program: String,
        #[arg(long)]
        query: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Prove and register this formula first (repeatable).
        #[arg(long)]
        lemma: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Propose lemmas by anti-unification when the search fails.
        #[arg(long)]
        auto_lemma: bool,
        /// Goal expansions before giving up.
        #[arg(long)]
        budget: Option<usize>,
        /// Print the resolution trace.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Check a proof term against a formula.
    Check {
        program: String,
        #[arg(long)]
        proof: String,
        #[arg(long)]
        formula: String,
        /// Formula for a compound closed head in the proof (repeatable).
        #[arg(long)]
        lemma: Vec<String>,
        #[arg(long, value_enum, default_value = "ext")]
        mode: ModeArg,
        #[command(flatten)]
        out: Output,
    },
    /// Print a bounded least or greatest Herbrand model.
    Model {
        program: String,
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
        #[arg(long)]
        depth: usize,
        /// Reading of body atoms outside the base; defaults to pess for
        /// least and opt for greatest.
        #[arg(long, value_enum)]
        policy: Option<PolicyArg>,
        #[command(flatten)]
        out: Output,
    },
    /// Find a finite post-fixed point containing a ground atom.
    Certify {
        program: String,
        #[arg(long)]
        atom: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Resolve, then check the result in the matching Herbrand model.
    VerifySoundness {
        program: String,
        #[arg(long)]
        query: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        lemma: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Depth of the ground terms the oracle substitutes.
        #[arg(long, default_value_t = 3)]
        base_depth: usize,
        #[command(flatten)]
        out: Output,
    },
}

/// Exit code, stdout and stderr of one invocation.
pub type RunOutput = (i32, String, String);

struct Fail(i32, String);

pub fn run<I, S>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                (EXIT_USAGE, String::new(), text)
            } else {
                (EXIT_OK, text, String::new())
            };
        }
    };
    let args = argv.iter().skip(1).cloned().collect();
    match dispatch(cli.command, args) {
        Ok((code, out)) => (code, out, String::new()),
        Err(Fail(code, msg)) => (code, String::new(), format!("error: {msg}\n")),
    }
}

fn read_program(path: &str) -> Result<Program, Fail> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Fail(EXIT_INPUT, format!("{path}: {e}")))?;
    parse_program(&text)
        .map(|p| p.program)
        .map_err(|e| Fail(EXIT_INPUT, format!("{path}: {e}")))
}

fn formula(text: &str, what: &str) -> Result<HornClause, Fail> {
    parse_formula(text).map_err(|e| Fail(EXIT_USAGE, format!("{what} `{text}`: {e}")))
}

fn emit(report: &RunReport, out: &Output, derivation: Option<String>) -> String {
    if out.json {
        report.to_json()
    } else {
        report.to_text(derivation.as_deref())
    }
}

fn proof_string(e: &ProofTerm, unicode: bool) -> String {
    if unicode {
        e.to_unicode()
    } else {
        e.to_string()
    }
}

struct Clock {
    on: bool,
    marks: BTreeMap<String, f64>,
}

impl Clock {
    fn new(on: bool) -> Self {
        Clock {
            on,
            marks: BTreeMap::new(),
        }
    }

    fn time<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let r = f();
        if self.on {
            self.marks
                .insert(label.to_string(), start.elapsed().as_secs_f64() * 1e3);
        }
        r
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.on.then_some(self.marks)
    }
}

fn dispatch(cmd: Command, args: Vec<String>) -> Result<(i32, String), Fail> {
    match cmd {
        Command::Resolve {
            program,
            query,
            mode,
            lemma,
            depth,
            auto_lemma,
            budget,
            trace,
            out,
        } => {
            let p = read_program(&program)?;
            let goal = formula(&query, "query")?;
            let mut q = Query::new(goal, mode.into())
                .depth(depth)
                .auto_lemma(auto_lemma);
            for l in &lemma {
                q = q.lemma(formula(l, "lemma")?);
            }
            if let Some(b) = budget {
                q.node_budget = b;
            }
            if depth == 0 {
                return Err(Fail(EXIT_USAGE, "--depth must be at least 1".into()));
            }
            let mut clock = Clock::new(out.timings);
            let res = clock
                .time("resolve", || resolve(&p, &q))
                .map_err(|e| Fail(EXIT_INTERNAL, e.to_string()))?;
            let mut report = RunReport {
                command: "resolve".into(),
                args,
                program: Some(program),
                mode: Some(q.mode.name().into()),
                depth: Some(depth),
                outcome: res.outcome.name().into(),
                lemmas: res
                    .lemmas
                    .iter()
                    .map(|l| LemmaReport {
                        formula: crate::calculus::render_formula(&l.formula, out.unicode),
                        evidence: proof_string(&l.evidence, out.unicode),
                        proposed: l.auto,
                    })
                    .collect(),
                ..Default::default()
            };
            if let Some(f) = &res.lemma_failure {
                report.reason = Some(format!("lemma {} not registered: {}", f.formula, f.reason));
            }
            if trace {
                report.trace = res.trace.iter().map(|e| e.to_string()).collect();
                if res.trace_truncated {
                    report.notes.push("trace truncated".into());
                }
            }
            let mut dtext = None;
            let code = match &res.outcome {
                Outcome::Proved {
                    evidence,
                    derivation,
                } => {
                    report.proof = Some(proof_string(evidence, out.unicode));
                    report.derivation =
                        Some(DerivationNode::from_derivation(derivation, out.unicode));
                    dtext = Some(derivation.render(out.unicode));
                    EXIT_OK
                }
                Outcome::Failed => EXIT_NO,
                Outcome::Exhausted => {
                    report.notes.push(format!(
                        "search exhausted at depth {depth} after {} goals",
                        res.nodes
                    ));
                    EXIT_EXHAUSTED
                }
            };
            report.timings_ms = clock.finish();
            Ok((code, emit(&report, &out, dtext)))
        }
        Command::Check {
            program,
            proof,
            formula: f,
            lemma,
            mode,
            out,
        } => {
            let p = read_program(&program)?;
            let e = parse_proof(&proof)
                .map_err(|err| Fail(EXIT_USAGE, format!("proof `{proof}`: {err}")))?;
            let goal = formula(&f, "formula")?;
            let mode: Mode = mode.into();
            let mut lemmas = Vec::new();
            for l in &lemma {
                lemmas.push(formula(l, "lemma")?);
            }
            let mut clock = Clock::new(out.timings);
            let mut report = RunReport {
                command: "check".into(),
                args,
                program: Some(program),
                mode: Some(mode.name().into()),
                proof: Some(proof_string(&e, out.unicode)),
                ..Default::default()
            };
            let env = register_heads(
                &mut report,
                AxiomEnv::from_program(&p),
                &e,
                &lemmas,
                mode,
                out.unicode,
            );
            let result = clock.time("check", || check_in_mode(&env, &e, &goal, mode));
            report.timings_ms = clock.finish();
            match result {
                Ok(d) => {
                    report.outcome = "VALID".into();
                    report.derivation = Some(DerivationNode::from_derivation(&d, out.unicode));
                    Ok((EXIT_OK, emit(&report, &out, Some(d.render(out.unicode)))))
                }
                Err(r) => {
                    report.outcome = "REJECTED".into();
                    report.reason = Some(r.to_string());
                    Ok((EXIT_NO, emit(&report, &out, None)))
                }
            }
        }
        Command::Model {
            program,
            semantics,
            depth,
            policy,
            out,
        } => {
            let p = read_program(&program)?;
            if depth == 0 {
                return Err(Fail(EXIT_USAGE, "--depth must be at least 1".into()));
            }
            let policy = match (policy, semantics) {
                (Some(PolicyArg::Opt), _) | (None, SemanticsArg::Greatest) => Policy::Optimistic,
                (Some(PolicyArg::Pess), _) | (None, SemanticsArg::Least) => Policy::Pessimistic,
            };
            let base = HerbrandBase::new(p.signature().clone(), depth);
            let mut clock = Clock::new(out.timings);
            let (name, fp) = match semantics {
                SemanticsArg::Least => (
                    "least",
                    clock.time("model", || lfp_in(&p, &base, policy, DEFAULT_MAX_ITERS)),
                ),
                SemanticsArg::Greatest => (
                    "greatest",
                    clock.time("model", || gfp_in(&p, &base, policy)),
                ),
            };
            let mut report = RunReport {
                command: "model".into(),
                args,
                program: Some(program),
                depth: Some(depth),
                outcome: if fp.converged {
                    "CONVERGED"
                } else {
                    "NOT_CONVERGED"
                }
                .into(),
                model: Some(ModelReport {
                    semantics: name.into(),
                    policy: policy.to_string(),
                    base_depth: depth,
                    base_size: base.len(),
                    converged: fp.converged,
                    atoms: atom_strings(&fp.model.atoms),
                }),
                ..Default::default()
            };
            report.notes.push(match policy {
                Policy::Pessimistic => {
                    "atoms needing support outside the base are dropped: a lower bound of the model restricted to the base"
                        .into()
                }
                Policy::Optimistic => {
                    "atoms outside the base are assumed to hold: an upper bound of the model restricted to the base".into()
                }
            });
            if base.universe.is_empty() {
                report
                    .notes
                    .push("signature has no constants: the Herbrand universe is empty".into());
            }
            report.timings_ms = clock.finish();
            Ok((EXIT_OK, emit(&report, &out, None)))
        }
        Command::Certify {
            program,
            atom,
            depth,
            out,
        } => {
            let p = read_program(&program)?;
            let a =
                parse_atom(&atom).map_err(|e| Fail(EXIT_USAGE, format!("atom `{atom}`: {e}")))?;
            if !a.is_ground() {
                return Err(Fail(EXIT_USAGE, format!("atom `{atom}` is not ground")));
            }
            let mut clock = Clock::new(out.timings);
            let ground = clock.time("certify", || certify_gfp(&p, &a, depth));
            let mut report = RunReport {
                command: "certify".into(),
                args,
                program: Some(program),
                depth: Some(depth),
                ..Default::default()
            };
            let code = if let Some(c) = ground {
                report.outcome = "CERTIFIED".into();
                report.certificate = Some(CertificateReport {
                    target: c.target.to_string(),
                    kind: "ground".into(),
                    support: atom_strings(&c.support),
                    search_depth: depth,
                });
                EXIT_OK
            } else {
                report
                    .notes
                    .push(format!("no ground certificate within depth {depth}"));
                match clock.time("certify_symbolic", || {
                    certify_gfp_symbolic(&p, &a, p.signature())
                }) {
                    Some(c) => {
                        report.outcome = "CERTIFIED".into();
                        report.notes.push(
                            "pattern certificate: each pattern stands for all its ground instances"
                                .into(),
                        );
                        report.certificate = Some(CertificateReport {
                            target: c.target.to_string(),
                            kind: "pattern".into(),
                            support: atom_strings(&c.patterns),
                            search_depth: depth,
                        });
                        EXIT_OK
                    }
                    None => {
                        report.outcome = "NO_CERTIFICATE".into();
                        report.notes.push("no certificate within bound".into());
                        EXIT_NO
                    }
                }
            };
            report.timings_ms = clock.finish();
            Ok((code, emit(&report, &out, None)))
        }
        Command::VerifySoundness {
            program,
            query,
            mode,
            lemma,
            depth,
            base_depth,
            out,
        } => {
            let p = read_program(&program)?;
            let goal = formula(&query, "query")?;
            let mut q = Query::new(goal.clone(), mode.into()).depth(depth);
            for l in &lemma {
                q = q.lemma(formula(l, "lemma")?);
            }
            if depth == 0 || base_depth == 0 {
                return Err(Fail(EXIT_USAGE, "depths must be at least 1".into()));
            }
            let mut clock = Clock::new(out.timings);
            let res = clock
                .time("resolve", || resolve(&p, &q))
                .map_err(|e| Fail(EXIT_INTERNAL, e.to_string()))?;
            let mut report = RunReport {
                command: "verify-soundness".into(),
                args,
                program: Some(program),
                mode: Some(q.mode.name().into()),
                depth: Some(depth),
                ..Default::default()
            };
            let semantics = q.mode.semantics();
            let mut code = EXIT_OK;
            if let Some(e) = res.outcome.evidence() {
                report.proof = Some(proof_string(e, out.unicode));
                let mut claims: Vec<&HornClause> = res.lemmas.iter().map(|l| &l.formula).collect();
                claims.push(&goal);
                for f in claims {
                    let v = clock
                        .time("oracle", || valid(&p, f, semantics, base_depth))
                        .map_err(|e| Fail(EXIT_USAGE, e.to_string()))?;
                    if v.is_invalid() {
                        code = EXIT_UNSOUND;
                    }
                    report.verdicts.push(VerdictReport {
                        formula: f.to_string(),
                        semantics: semantics.to_string(),
                        verdict: v.label(),
                        ground_depth: v.ground_depth,
                        base_depth: v.base_depth,
                    });
                }
                report.outcome = if code == EXIT_UNSOUND {
                    "UNSOUND".into()
                } else {
                    "SOUND".into()
                };
            } else {
                report.outcome = "SOUND".into();
                report.notes.push(format!(
                    "query not proved ({}); nothing to validate",
                    res.outcome.name()
                ));
            }
            report.timings_ms = clock.finish();
            Ok((code, emit(&report, &out, None)))
        }
    }
}

/// Registers closed compound heads of `e` as lemmas, pairing each with the
/// first `--lemma` formula it checks against.
fn register_heads(
    report: &mut RunReport,
    mut env: AxiomEnv,
    e: &ProofTerm,
    lemmas: &[HornClause],
    mode: Mode,
    unicode: bool,
) -> AxiomEnv {
    let semantics = match mode {
        Mode::Inductive => Semantics::Inductive,
        _ => Semantics::Coinductive,
    };
    let mut heads = Vec::new();
    compound_heads(e, &mut heads);
    for h in heads {
        if env.lemmas().any(|l| l.evidence.alpha_eq(h)) {
            continue;
        }
        for f in lemmas {
            if let Ok(next) = register_lemma(&env, h, f, semantics) {
                env = next;
                report.lemmas.push(LemmaReport {
                    formula: crate::calculus::render_formula(f, unicode),
                    evidence: proof_string(h, unicode),
                    proposed: false,
                });
                break;
            }
        }
    }
    env
}

fn compound_heads<'a>(e: &'a ProofTerm, out: &mut Vec<&'a ProofTerm>) {
    let (head, args) = e.spine();
    if !args.is_empty()
        && matches!(head, ProofTerm::Lambda(..) | ProofTerm::Nu(..))
        && head.is_closed()
    {
        out.push(head);
    }
    match head {
        ProofTerm::Lambda(_, b) | ProofTerm::Nu(_, b) => compound_heads(b, out),
        _ => {}
    }
    for a in args {
        compound_heads(a, out);
    }
}
