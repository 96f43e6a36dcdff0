//! Axiom environments and the proof checker for the rules Lp-m, Lam, Nu'
//! and Nu.
//!
//! The checker does no search: the evidence term dictates the shape of the
//! derivation, and every Lp-m matcher is unique when it exists.
//!
//! Variables of a goal become rigid once a Lam node introduces its
//! hypotheses. Hypotheses introduced by Lam are then matched up to equality
//! only, while ν-hypotheses and axioms stay schematic in their other
//! variables.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::program::Program;
use crate::proof::ProofTerm;
use crate::term::{match_atom_fixing, Atom, HornClause, MatchError, Substitution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntryKind {
    Axiom,
    Hypothesis,
    Lemma,
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryKind::Axiom => "axiom",
            EntryKind::Hypothesis => "hypothesis",
            EntryKind::Lemma => "lemma",
        })
    }
}

/// One `(e : F)` entry. Variables of `formula` listed in `rigid` are not
/// instantiated when the entry is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub evidence: ProofTerm,
    pub formula: HornClause,
    pub kind: EntryKind,
    pub rigid: BTreeSet<String>,
}

impl Entry {
    pub fn axiom(name: impl Into<String>, formula: HornClause) -> Self {
        Entry {
            evidence: ProofTerm::konst(name),
            formula,
            kind: EntryKind::Axiom,
            rigid: BTreeSet::new(),
        }
    }

    pub fn hypothesis(
        name: impl Into<String>,
        formula: HornClause,
        rigid: BTreeSet<String>,
    ) -> Self {
        Entry {
            evidence: ProofTerm::var(name),
            formula,
            kind: EntryKind::Hypothesis,
            rigid,
        }
    }

    /// Label used in traces and derivations.
    pub fn label(&self) -> String {
        self.evidence.to_string()
    }

    /// Matches the entry's head against `goal`.
    pub fn match_head(&self, goal: &Atom) -> Result<Substitution, MatchError> {
        match_atom_fixing(&self.formula.head, goal, &self.rigid)
    }
}

/// An ordered axiom environment Φ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomEnv {
    entries: Vec<Entry>,
}

impl AxiomEnv {
    pub fn new() -> Self {
        Self::default()
    }

    /// One axiom per program clause, in source order.
    pub fn from_program(p: &Program) -> Self {
        AxiomEnv {
            entries: p
                .clauses()
                .iter()
                .map(|c| Entry::axiom(c.name.clone(), c.clause.clone()))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    pub fn axioms(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.kind == EntryKind::Axiom)
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.kind == EntryKind::Lemma)
    }

    pub fn hypotheses(&self) -> impl Iterator<Item = &Entry> {
        self.entries
            .iter()
            .filter(|e| e.kind == EntryKind::Hypothesis)
    }

    fn lookup(&self, head: &ProofTerm) -> Option<&Entry> {
        match head {
            ProofTerm::Const(_) => self
                .entries
                .iter()
                .find(|e| e.kind == EntryKind::Axiom && &e.evidence == head),
            ProofTerm::Var(_) => self
                .entries
                .iter()
                .rev()
                .find(|e| e.kind == EntryKind::Hypothesis && &e.evidence == head),
            _ => self
                .entries
                .iter()
                .find(|e| e.kind == EntryKind::Lemma && e.evidence.alpha_eq(head)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    LpM,
    Lam,
    NuPrime,
    Nu,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::LpM => "LP_M",
            Rule::Lam => "LAM",
            Rule::NuPrime => "NU_PRIME",
            Rule::Nu => "NU",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The three resolution calculi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Lp-m and Lam.
    Inductive,
    /// Lp-m and Nu'.
    Coinductive,
    /// Lp-m, Lam, Nu' and Nu.
    Extended,
}

impl Mode {
    pub fn allows(self, rule: Rule) -> bool {
        match self {
            Mode::Inductive => matches!(rule, Rule::LpM | Rule::Lam),
            Mode::Coinductive => matches!(rule, Rule::LpM | Rule::NuPrime),
            Mode::Extended => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Inductive => "inductive",
            Mode::Coinductive => "coinductive",
            Mode::Extended => "extended",
        }
    }

    pub fn semantics(self) -> Semantics {
        match self {
            Mode::Inductive => Semantics::Inductive,
            Mode::Coinductive | Mode::Extended => Semantics::Coinductive,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Least or greatest Herbrand model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    Inductive,
    Coinductive,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Inductive => "inductive",
            Semantics::Coinductive => "coinductive",
        })
    }
}

/// A checked derivation tree. Each node records the hypotheses it adds to
/// the environment of its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub evidence: ProofTerm,
    pub formula: HornClause,
    /// Present on Lp-m nodes.
    pub matcher: Option<Substitution>,
    /// Label of the environment entry used by an Lp-m node.
    pub entry: Option<String>,
    pub introduced: Vec<(String, HornClause)>,
    pub children: Vec<Derivation>,
}

impl Derivation {
    pub fn depth(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(Derivation::depth)
            .max()
            .unwrap_or(0)
    }

    pub fn rules(&self) -> BTreeSet<Rule> {
        let mut out = BTreeSet::new();
        self.walk(&mut |d| {
            out.insert(d.rule);
        });
        out
    }

    pub fn walk(&self, f: &mut impl FnMut(&Derivation)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }

    /// Indented tree, one node per line.
    pub fn render(&self, unicode: bool) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0, unicode);
        out
    }

    fn render_into(&self, out: &mut String, indent: usize, unicode: bool) {
        use fmt::Write;
        let evidence = if unicode {
            self.evidence.to_unicode()
        } else {
            self.evidence.to_string()
        };
        let formula = render_formula(&self.formula, unicode);
        let _ = write!(
            out,
            "{:indent$}{} {} : {}",
            "",
            self.rule,
            evidence,
            formula,
            indent = indent
        );
        if let Some(e) = &self.entry {
            let _ = write!(out, "  by {e}");
        }
        if let Some(m) = &self.matcher {
            if !m.is_empty() {
                let _ = write!(out, " with {m}");
            }
        }
        for (h, f) in &self.introduced {
            let _ = write!(out, "  [{h} : {}]", render_formula(f, unicode));
        }
        out.push('\n');
        for c in &self.children {
            c.render_into(out, indent + 2, unicode);
        }
    }
}

/// `B1, .., Bn => A`; with `unicode`, the arrow is `⇒`.
pub fn render_formula(f: &HornClause, unicode: bool) -> String {
    let s = f.to_string();
    if unicode {
        s.replace("=>", "⇒")
    } else {
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RejectReason {
    UnboundVar,
    NoMatch,
    HnfRequired,
    RuleShape,
    Arity,
    /// A rule outside the calculus of the requested mode.
    Mode,
}

impl RejectReason {
    pub fn name(self) -> &'static str {
        match self {
            RejectReason::UnboundVar => "UNBOUND_VAR",
            RejectReason::NoMatch => "NO_MATCH",
            RejectReason::HnfRequired => "HNF_REQUIRED",
            RejectReason::RuleShape => "RULE_SHAPE",
            RejectReason::Arity => "ARITY",
            RejectReason::Mode => "MODE",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The first failing node and why it failed.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{reason} at `{evidence}` : {goal}: {message}")]
pub struct Rejection {
    pub reason: RejectReason,
    pub evidence: ProofTerm,
    pub goal: HornClause,
    pub message: String,
}

fn reject(
    reason: RejectReason,
    evidence: &ProofTerm,
    goal: &HornClause,
    message: impl Into<String>,
) -> Rejection {
    Rejection {
        reason,
        evidence: evidence.clone(),
        goal: goal.clone(),
        message: message.into(),
    }
}

struct Checker<'a> {
    env: &'a AxiomEnv,
    hyps: Vec<Entry>,
    rigid: BTreeSet<String>,
}

impl Checker<'_> {
    fn lookup(&self, head: &ProofTerm) -> Option<&Entry> {
        if let ProofTerm::Var(_) = head {
            if let Some(h) = self.hyps.iter().rev().find(|h| &h.evidence == head) {
                return Some(h);
            }
        }
        self.env.lookup(head)
    }

    fn check(&mut self, e: &ProofTerm, f: &HornClause) -> Result<Derivation, Rejection> {
        match e {
            ProofTerm::Nu(alpha, body) => {
                if !body.is_hnf() {
                    return Err(reject(
                        RejectReason::HnfRequired,
                        e,
                        f,
                        format!("body `{body}` of nu is not in head normal form"),
                    ));
                }
                let rule = if f.is_atomic() {
                    Rule::NuPrime
                } else {
                    Rule::Nu
                };
                let hyp = Entry::hypothesis(alpha.clone(), f.clone(), self.rigid.clone());
                self.hyps.push(hyp);
                let child = self.check(body, f);
                self.hyps.pop();
                let child = child?;
                if rule == Rule::Nu && child.rule != Rule::Lam {
                    return Err(reject(
                        RejectReason::RuleShape,
                        body,
                        f,
                        "a Horn formula must be introduced by an abstraction",
                    ));
                }
                Ok(Derivation {
                    rule,
                    evidence: e.clone(),
                    formula: f.clone(),
                    matcher: None,
                    entry: None,
                    introduced: vec![(alpha.clone(), f.clone())],
                    children: vec![child],
                })
            }
            ProofTerm::Lambda(bs, body) => {
                if f.is_atomic() {
                    return Err(reject(
                        RejectReason::RuleShape,
                        e,
                        f,
                        "abstraction checked against an atomic formula",
                    ));
                }
                if bs.len() != f.body.len() {
                    return Err(reject(
                        RejectReason::RuleShape,
                        e,
                        f,
                        format!(
                            "{} binder(s) for a body of {} atom(s)",
                            bs.len(),
                            f.body.len()
                        ),
                    ));
                }
                let saved = self.rigid.clone();
                self.rigid.extend(f.vars().into_iter().map(String::from));
                let n = self.hyps.len();
                let mut introduced = Vec::new();
                for (b, atom) in bs.iter().zip(&f.body) {
                    let fact = HornClause::fact(atom.clone());
                    introduced.push((b.clone(), fact.clone()));
                    self.hyps
                        .push(Entry::hypothesis(b.clone(), fact, self.rigid.clone()));
                }
                let head = HornClause::fact(f.head.clone());
                let child = self.check(body, &head);
                self.hyps.truncate(n);
                self.rigid = saved;
                Ok(Derivation {
                    rule: Rule::Lam,
                    evidence: e.clone(),
                    formula: f.clone(),
                    matcher: None,
                    entry: None,
                    introduced,
                    children: vec![child?],
                })
            }
            _ if !f.is_atomic() => Err(reject(
                RejectReason::RuleShape,
                e,
                f,
                "a Horn formula must be introduced by an abstraction",
            )),
            _ => self.check_lpm(e, &f.head),
        }
    }

    fn check_lpm(&mut self, e: &ProofTerm, goal: &Atom) -> Result<Derivation, Rejection> {
        let f = HornClause::fact(goal.clone());
        let (head, args) = e.spine();
        let entry = match head {
            ProofTerm::Const(k) => self.lookup(head).ok_or_else(|| {
                reject(
                    RejectReason::UnboundVar,
                    e,
                    &f,
                    format!("no axiom named {k}"),
                )
            })?,
            ProofTerm::Var(v) => self.lookup(head).ok_or_else(|| {
                reject(
                    RejectReason::UnboundVar,
                    e,
                    &f,
                    format!("proof variable {v} is not bound"),
                )
            })?,
            _ => {
                if !head.is_closed() {
                    return Err(reject(
                        RejectReason::UnboundVar,
                        e,
                        &f,
                        format!("lemma evidence `{head}` is not closed"),
                    ));
                }
                self.lookup(head).ok_or_else(|| {
                    reject(
                        RejectReason::NoMatch,
                        e,
                        &f,
                        format!("no lemma registered for `{head}`"),
                    )
                })?
            }
        };
        let entry = entry.clone();
        if args.len() != entry.formula.body.len() {
            return Err(reject(
                RejectReason::Arity,
                e,
                &f,
                format!(
                    "{} applied to {} argument(s), its clause body has {}",
                    entry.label(),
                    args.len(),
                    entry.formula.body.len()
                ),
            ));
        }
        let sigma = entry.match_head(goal).map_err(|err| match err {
            MatchError::NoMatch => reject(
                RejectReason::NoMatch,
                e,
                &f,
                format!(
                    "head `{}` of {} does not match",
                    entry.formula.head,
                    entry.label()
                ),
            ),
            MatchError::Arity { .. } => reject(RejectReason::Arity, e, &f, err.to_string()),
        })?;
        let mut children = Vec::with_capacity(args.len());
        for (arg, b) in args.iter().zip(&entry.formula.body) {
            children.push(self.check_atom(arg, &sigma.apply_atom(b))?);
        }
        Ok(Derivation {
            rule: Rule::LpM,
            evidence: e.clone(),
            formula: f,
            matcher: Some(sigma),
            entry: Some(entry.label()),
            introduced: Vec::new(),
            children,
        })
    }

    fn check_atom(&mut self, e: &ProofTerm, goal: &Atom) -> Result<Derivation, Rejection> {
        self.check(e, &HornClause::fact(goal.clone()))
    }
}

/// Checks `env ⊢ e : f` in the union of all rules.
pub fn check(env: &AxiomEnv, e: &ProofTerm, f: &HornClause) -> Result<Derivation, Rejection> {
    Checker {
        env,
        hyps: Vec::new(),
        rigid: BTreeSet::new(),
    }
    .check(e, f)
}

/// Checks `env ⊢ e : f` and that the derivation only uses rules of `mode`.
pub fn check_in_mode(
    env: &AxiomEnv,
    e: &ProofTerm,
    f: &HornClause,
    mode: Mode,
) -> Result<Derivation, Rejection> {
    let d = check(env, e, f)?;
    let mut bad = None;
    d.walk(&mut |n| {
        if bad.is_none() && !mode.allows(n.rule) {
            bad = Some(reject(
                RejectReason::Mode,
                &n.evidence,
                &n.formula,
                format!("rule {} is not part of the {mode} calculus", n.rule),
            ));
        }
    });
    match bad {
        Some(r) => Err(r),
        None => Ok(d),
    }
}

/// Re-validates every node of `d` locally against its rule, including
/// zero-binder Lam nodes produced by [`admissibility_view`].
pub fn check_derivation(env: &AxiomEnv, d: &Derivation) -> Result<(), Rejection> {
    Checker {
        env,
        hyps: Vec::new(),
        rigid: BTreeSet::new(),
    }
    .validate(d)
}

impl Checker<'_> {
    fn validate(&mut self, d: &Derivation) -> Result<(), Rejection> {
        let bad = |msg: &str| reject(RejectReason::RuleShape, &d.evidence, &d.formula, msg);
        match d.rule {
            Rule::LpM => {
                if !d.formula.is_atomic() {
                    return Err(bad("Lp-m concludes an atomic formula"));
                }
                let (head, args) = d.evidence.spine();
                let entry = self.lookup(head).cloned().ok_or_else(|| {
                    reject(
                        RejectReason::UnboundVar,
                        &d.evidence,
                        &d.formula,
                        "unknown head",
                    )
                })?;
                if args.len() != entry.formula.body.len() || d.children.len() != args.len() {
                    return Err(reject(
                        RejectReason::Arity,
                        &d.evidence,
                        &d.formula,
                        "argument count",
                    ));
                }
                let sigma = entry.match_head(&d.formula.head).map_err(|_| {
                    reject(
                        RejectReason::NoMatch,
                        &d.evidence,
                        &d.formula,
                        "head does not match",
                    )
                })?;
                if d.matcher.as_ref() != Some(&sigma) {
                    return Err(bad("recorded matcher differs"));
                }
                for ((child, arg), b) in d.children.iter().zip(&args).zip(&entry.formula.body) {
                    if &child.evidence != *arg
                        || child.formula != HornClause::fact(sigma.apply_atom(b))
                    {
                        return Err(bad("premise does not fit the clause body"));
                    }
                    self.validate(child)?;
                }
                Ok(())
            }
            Rule::Lam => {
                let [child] = d.children.as_slice() else {
                    return Err(bad("Lam has one premise"));
                };
                let (binders, body): (Vec<String>, &ProofTerm) = match &d.evidence {
                    ProofTerm::Lambda(bs, b) => (bs.clone(), b),
                    other => (Vec::new(), other),
                };
                if binders.len() != d.formula.body.len()
                    || &child.evidence != body
                    || child.formula != HornClause::fact(d.formula.head.clone())
                {
                    return Err(bad("Lam premise does not fit"));
                }
                let expected: Vec<(String, HornClause)> = binders
                    .iter()
                    .cloned()
                    .zip(d.formula.body.iter().cloned().map(HornClause::fact))
                    .collect();
                if d.introduced != expected {
                    return Err(bad("Lam hypotheses must be the body atoms"));
                }
                let saved = self.rigid.clone();
                self.rigid
                    .extend(d.formula.vars().into_iter().map(String::from));
                let n = self.hyps.len();
                for (b, f) in &d.introduced {
                    self.hyps
                        .push(Entry::hypothesis(b.clone(), f.clone(), self.rigid.clone()));
                }
                let r = self.validate(child);
                self.hyps.truncate(n);
                self.rigid = saved;
                r
            }
            Rule::NuPrime | Rule::Nu => {
                let ProofTerm::Nu(alpha, body) = &d.evidence else {
                    return Err(bad("nu rule needs nu evidence"));
                };
                let [child] = d.children.as_slice() else {
                    return Err(bad("nu rule has one premise"));
                };
                if !body.is_hnf() {
                    return Err(reject(
                        RejectReason::HnfRequired,
                        &d.evidence,
                        &d.formula,
                        "body not in HNF",
                    ));
                }
                if d.rule == Rule::NuPrime && !d.formula.is_atomic() {
                    return Err(bad("Nu' concludes an atomic formula"));
                }
                if d.rule == Rule::Nu && child.rule != Rule::Lam {
                    return Err(bad("Nu premise is an abstraction"));
                }
                if &child.evidence != body.as_ref()
                    || child.formula != d.formula
                    || d.introduced != vec![(alpha.clone(), d.formula.clone())]
                {
                    return Err(bad("nu premise does not fit"));
                }
                self.hyps.push(Entry::hypothesis(
                    alpha.clone(),
                    d.formula.clone(),
                    self.rigid.clone(),
                ));
                let r = self.validate(child);
                self.hyps.pop();
                r
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AdmissibilityError {
    #[error("root rule is {0}, not NU_PRIME")]
    NotNuPrime(Rule),
}

/// Re-expresses a Nu' root as Nu over a zero-binder Lam.
pub fn admissibility_view(d: &Derivation) -> Result<Derivation, AdmissibilityError> {
    if d.rule != Rule::NuPrime {
        return Err(AdmissibilityError::NotNuPrime(d.rule));
    }
    let child = d.children[0].clone();
    let lam = Derivation {
        rule: Rule::Lam,
        evidence: child.evidence.clone(),
        formula: d.formula.clone(),
        matcher: None,
        entry: None,
        introduced: Vec::new(),
        children: vec![child],
    };
    Ok(Derivation {
        rule: Rule::Nu,
        children: vec![lam],
        ..d.clone()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RegisterError {
    #[error("HNF_REQUIRED: `{0}` is not in head normal form under its nu binders")]
    HnfRequired(ProofTerm),
    #[error("CHECK_FAILED: {0}")]
    CheckFailed(Rejection),
    #[error("lemma evidence `{0}` must be a closed compound term")]
    BadEvidence(ProofTerm),
}

/// Adds `evidence : f` as a lemma. Under coinductive semantics the evidence
/// must be in head normal form once its leading ν binders are removed.
pub fn register_lemma(
    env: &AxiomEnv,
    evidence: &ProofTerm,
    f: &HornClause,
    semantics: Semantics,
) -> Result<AxiomEnv, RegisterError> {
    if matches!(evidence, ProofTerm::Const(_)) || !evidence.is_closed() {
        return Err(RegisterError::BadEvidence(evidence.clone()));
    }
    let mode = match semantics {
        Semantics::Inductive => Mode::Inductive,
        Semantics::Coinductive => {
            if !evidence.strip_nus().1.is_hnf() {
                return Err(RegisterError::HnfRequired(evidence.clone()));
            }
            Mode::Extended
        }
    };
    check_in_mode(env, evidence, f, mode).map_err(RegisterError::CheckFailed)?;
    let mut out = env.clone();
    out.push(Entry {
        evidence: evidence.clone(),
        formula: f.clone(),
        kind: EntryKind::Lemma,
        rigid: BTreeSet::new(),
    });
    Ok(out)
}
