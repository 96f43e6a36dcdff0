//! Proof search in the inductive, coinductive and extended calculi.
//!
//! Search is depth-first with matching only; goals are never instantiated.
//! At each atomic goal the alternatives are tried in this order: hypotheses
//! newest first, then registered lemmas, then axioms in source order.
//!
//! In the coinductive calculi every atomic goal `G` opens a candidate
//! hypothesis `α : ⇒ G`. It is only visible while `G` is being resolved by
//! an axiom, so every use sits beneath a κ and the term `να. κ ē` is in
//! head normal form by construction. A Horn goal `B̄ ⇒ A` in the extended
//! calculus is handled the same way with `α : B̄ ⇒ A` plus one rigid fact
//! `β_i : ⇒ B_i` per body atom.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::calculus::{
    check_in_mode, register_lemma, AxiomEnv, Derivation, EntryKind, Mode, Rejection,
};
use crate::program::Program;
use crate::proof::ProofTerm;
use crate::term::{match_atom_fixing, Atom, HornClause, Substitution, Term};

pub const DEFAULT_DEPTH: usize = 8;
pub const DEFAULT_NODE_BUDGET: usize = 200_000;
const TRACE_CAP: usize = 50_000;
const AUTO_LEMMA_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    /// An empty body means an atomic query.
    pub goal: HornClause,
    pub mode: Mode,
    pub depth_limit: usize,
    /// Proved in order and registered before the goal is attempted.
    pub lemmas: Vec<HornClause>,
    /// On failure, propose lemmas by anti-unification and retry.
    pub auto_lemma: bool,
    /// Goals expanded before the run is reported as exhausted.
    pub node_budget: usize,
}

impl Query {
    pub fn new(goal: HornClause, mode: Mode) -> Self {
        Query {
            goal,
            mode,
            depth_limit: DEFAULT_DEPTH,
            lemmas: Vec::new(),
            auto_lemma: false,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn depth(mut self, d: usize) -> Self {
        self.depth_limit = d;
        self
    }

    pub fn lemma(mut self, l: HornClause) -> Self {
        self.lemmas.push(l);
        self
    }

    pub fn auto_lemma(mut self, on: bool) -> Self {
        self.auto_lemma = on;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Outcome {
    Proved {
        evidence: ProofTerm,
        derivation: Derivation,
    },
    /// Some branch hit the depth limit or the node budget.
    Exhausted,
    /// The whole search space was closed without hitting any limit.
    Failed,
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Proved { .. } => "PROVED",
            Outcome::Exhausted => "EXHAUSTED",
            Outcome::Failed => "FAILED",
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, Outcome::Proved { .. })
    }

    pub fn evidence(&self) -> Option<&ProofTerm> {
        match self {
            Outcome::Proved { evidence, .. } => Some(evidence),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceResult {
    Matched(Substitution),
    NoMatch,
    Hidden,
    DepthLimit,
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub depth: usize,
    pub goal: Atom,
    /// Label of the entry tried; empty for limit events.
    pub entry: String,
    pub kind: Option<EntryKind>,
    pub result: TraceResult,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:indent$}{} ",
            "",
            self.goal,
            indent = 2 * self.depth.saturating_sub(1)
        )?;
        match &self.result {
            TraceResult::Matched(s) => write!(f, "<- {} {s}", self.entry),
            TraceResult::NoMatch => write!(f, "x {}", self.entry),
            TraceResult::Hidden => write!(f, "- {} (unguarded here)", self.entry),
            TraceResult::DepthLimit => f.write_str("! depth limit"),
            TraceResult::Budget => f.write_str("! node budget"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisteredLemma {
    pub formula: HornClause,
    pub evidence: ProofTerm,
    /// Proposed by anti-unification rather than given in the query.
    pub auto: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaFailure {
    pub formula: HornClause,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub trace: Vec<TraceEvent>,
    pub trace_truncated: bool,
    pub nodes: usize,
    /// Axioms plus every lemma registered during the run.
    pub env: AxiomEnv,
    pub lemmas: Vec<RegisteredLemma>,
    pub lemma_failure: Option<LemmaFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("internal error: found evidence `{evidence}` fails to check: {rejection}")]
    Recheck {
        evidence: ProofTerm,
        rejection: Rejection,
    },
    #[error("depth limit must be at least 1")]
    ZeroDepth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Fail {
    Exhausted,
    Failed,
}

struct Hyp {
    name: String,
    formula: HornClause,
    rigid: BTreeSet<String>,
    min_depth: usize,
    active: bool,
}

struct Search<'a> {
    env: &'a AxiomEnv,
    mode: Mode,
    limit: usize,
    budget: usize,
    nodes: usize,
    hyps: Vec<Hyp>,
    rigid: BTreeSet<String>,
    fresh_nu: usize,
    fresh_lam: usize,
    trace: Vec<TraceEvent>,
    trace_truncated: bool,
    path: Vec<Atom>,
    proposals: Option<Vec<HornClause>>,
}

impl<'a> Search<'a> {
    fn new(env: &'a AxiomEnv, mode: Mode, limit: usize, budget: usize, propose: bool) -> Self {
        Search {
            env,
            mode,
            limit,
            budget,
            nodes: 0,
            hyps: Vec::new(),
            rigid: BTreeSet::new(),
            fresh_nu: 0,
            fresh_lam: 0,
            trace: Vec::new(),
            trace_truncated: false,
            path: Vec::new(),
            proposals: propose.then(Vec::new),
        }
    }

    fn event(
        &mut self,
        depth: usize,
        goal: &Atom,
        entry: String,
        kind: Option<EntryKind>,
        result: TraceResult,
    ) {
        if self.trace.len() >= TRACE_CAP {
            self.trace_truncated = true;
            return;
        }
        self.trace.push(TraceEvent {
            depth,
            goal: goal.clone(),
            entry,
            kind,
            result,
        });
    }

    fn nu_name(&mut self) -> String {
        self.fresh_nu += 1;
        format!("a{}", self.fresh_nu)
    }

    fn lam_name(&mut self) -> String {
        self.fresh_lam += 1;
        format!("b{}", self.fresh_lam)
    }

    fn solve_formula(&mut self, f: &HornClause) -> Result<ProofTerm, Fail> {
        if f.is_atomic() {
            return self.solve(&f.head, 1, None);
        }
        match self.mode {
            // Without Lam there is no way to introduce an implication.
            Mode::Coinductive => Err(Fail::Failed),
            Mode::Inductive => {
                let binders = self.push_lambda_hyps(f);
                let body = self.solve(&f.head, 1, None);
                self.hyps.truncate(self.hyps.len() - binders.len());
                Ok(ProofTerm::lambda(binders, body?))
            }
            Mode::Extended => {
                let alpha = self.nu_name();
                self.hyps.push(Hyp {
                    name: alpha.clone(),
                    formula: f.clone(),
                    rigid: self.rigid.clone(),
                    min_depth: 2,
                    active: false,
                });
                let owner = self.hyps.len() - 1;
                let binders = self.push_lambda_hyps(f);
                let body = self.solve(&f.head, 1, Some(owner));
                self.hyps.truncate(owner);
                let e = ProofTerm::lambda(binders, body?);
                Ok(if e.free_proof_vars().contains(&alpha) {
                    ProofTerm::nu(alpha, e)
                } else {
                    e
                })
            }
        }
    }

    fn push_lambda_hyps(&mut self, f: &HornClause) -> Vec<String> {
        self.rigid.extend(f.vars().into_iter().map(String::from));
        let mut binders = Vec::new();
        for b in &f.body {
            let name = self.lam_name();
            self.hyps.push(Hyp {
                name: name.clone(),
                formula: HornClause::fact(b.clone()),
                rigid: self.rigid.clone(),
                min_depth: 0,
                active: true,
            });
            binders.push(name);
        }
        binders
    }

    /// Resolves an atomic goal. `owner` is the hypothesis that the goal's
    /// axiom step guards; when absent, a candidate is opened in the
    /// coinductive calculi.
    fn solve(
        &mut self,
        goal: &Atom,
        depth: usize,
        owner: Option<usize>,
    ) -> Result<ProofTerm, Fail> {
        if depth > self.limit {
            self.event(depth, goal, String::new(), None, TraceResult::DepthLimit);
            return Err(Fail::Exhausted);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.event(depth, goal, String::new(), None, TraceResult::Budget);
            return Err(Fail::Exhausted);
        }
        if let Some(props) = self.proposals.as_mut() {
            for anc in &self.path {
                if let Some(l) = propose_lemma(goal, anc) {
                    if !props.contains(&l) {
                        props.push(l);
                    }
                }
            }
        }
        self.path.push(goal.clone());
        let (owner, candidate) = match owner {
            Some(i) => (Some(i), None),
            None if self.mode != Mode::Inductive => {
                let name = self.nu_name();
                self.hyps.push(Hyp {
                    name: name.clone(),
                    formula: HornClause::fact(goal.clone()),
                    rigid: self.rigid.clone(),
                    min_depth: depth + 1,
                    active: false,
                });
                (Some(self.hyps.len() - 1), Some(name))
            }
            None => (None, None),
        };
        let result = self.alternatives(goal, depth, owner);
        if candidate.is_some() {
            self.hyps.pop();
        }
        self.path.pop();
        let e = result?;
        Ok(match candidate {
            Some(a) if e.free_proof_vars().contains(&a) => ProofTerm::nu(a, e),
            _ => e,
        })
    }

    fn alternatives(
        &mut self,
        goal: &Atom,
        depth: usize,
        owner: Option<usize>,
    ) -> Result<ProofTerm, Fail> {
        let mut exhausted = false;
        let mut note = |r: Result<ProofTerm, Fail>| -> Option<ProofTerm> {
            match r {
                Ok(e) => Some(e),
                Err(Fail::Exhausted) => {
                    exhausted = true;
                    None
                }
                Err(Fail::Failed) => None,
            }
        };

        for i in (0..self.hyps.len()).rev() {
            let h = &self.hyps[i];
            if h.formula.head.pred != goal.pred {
                continue;
            }
            let (name, formula) = (h.name.clone(), h.formula.clone());
            if !h.active || depth < h.min_depth {
                if Some(i) != owner {
                    self.event(
                        depth,
                        goal,
                        name,
                        Some(EntryKind::Hypothesis),
                        TraceResult::Hidden,
                    );
                }
                continue;
            }
            let m = match_atom_fixing(&formula.head, goal, &h.rigid);
            if let Some(e) = note(self.try_entry(
                goal,
                depth,
                ProofTerm::Var(name),
                EntryKind::Hypothesis,
                &formula,
                m.ok(),
            )) {
                return Ok(e);
            }
        }

        let env = self.env;
        for entry in env.lemmas().chain(env.axioms()) {
            if entry.formula.head.pred != goal.pred {
                continue;
            }
            let m = entry.match_head(goal).ok();
            let is_axiom = entry.kind == EntryKind::Axiom;
            if is_axiom && m.is_some() {
                if let Some(i) = owner {
                    self.hyps[i].active = true;
                }
            }
            let r = self.try_entry(
                goal,
                depth,
                entry.evidence.clone(),
                entry.kind,
                &entry.formula,
                m,
            );
            if let Some(i) = owner {
                self.hyps[i].active = false;
            }
            if let Some(e) = note(r) {
                return Ok(e);
            }
        }
        if exhausted {
            Err(Fail::Exhausted)
        } else {
            Err(Fail::Failed)
        }
    }

    fn try_entry(
        &mut self,
        goal: &Atom,
        depth: usize,
        head: ProofTerm,
        kind: EntryKind,
        formula: &HornClause,
        sigma: Option<Substitution>,
    ) -> Result<ProofTerm, Fail> {
        let label = head.to_string();
        let Some(sigma) = sigma else {
            self.event(depth, goal, label, Some(kind), TraceResult::NoMatch);
            return Err(Fail::Failed);
        };
        self.event(
            depth,
            goal,
            label,
            Some(kind),
            TraceResult::Matched(sigma.clone()),
        );
        // Subgoals share no instantiable variables, so each is solved on
        // its own; one definite failure sinks the step.
        let mut args = Vec::with_capacity(formula.body.len());
        let mut exhausted = false;
        for b in &formula.body {
            match self.solve(&sigma.apply_atom(b), depth + 1, None) {
                Ok(e) => args.push(e),
                Err(Fail::Failed) => return Err(Fail::Failed),
                Err(Fail::Exhausted) => exhausted = true,
            }
        }
        if exhausted {
            return Err(Fail::Exhausted);
        }
        Ok(ProofTerm::apply_all(head, args))
    }
}

struct Attempt {
    result: Result<ProofTerm, Fail>,
    trace: Vec<TraceEvent>,
    truncated: bool,
    nodes: usize,
    proposals: Vec<HornClause>,
}

fn attempt(env: &AxiomEnv, goal: &HornClause, q: &Query, propose: bool) -> Attempt {
    let mut s = Search::new(env, q.mode, q.depth_limit, q.node_budget, propose);
    let result = s.solve_formula(goal).map(|e| e.canonicalize());
    Attempt {
        result,
        trace: s.trace,
        truncated: s.trace_truncated,
        nodes: s.nodes,
        proposals: s.proposals.unwrap_or_default(),
    }
}

/// Runs a query: lemmas first, then the goal, then (if enabled and the goal
/// was not proved) proposed lemmas with a retry.
pub fn resolve(program: &Program, q: &Query) -> Result<SearchResult, EngineError> {
    if q.depth_limit == 0 {
        return Err(EngineError::ZeroDepth);
    }
    let mut res = SearchResult {
        outcome: Outcome::Failed,
        trace: Vec::new(),
        trace_truncated: false,
        nodes: 0,
        env: AxiomEnv::from_program(program),
        lemmas: Vec::new(),
        lemma_failure: None,
    };

    for l in &q.lemmas {
        if let Err((outcome, reason)) = prove_and_register(&mut res, l, q, false) {
            res.outcome = outcome;
            res.lemma_failure = Some(LemmaFailure {
                formula: l.clone(),
                reason,
            });
            return Ok(res);
        }
    }

    let a = attempt(&res.env, &q.goal, q, q.auto_lemma);
    absorb(&mut res, &a);
    let mut result = a.result;

    if result.is_err() && q.auto_lemma {
        for l in a.proposals.into_iter().take(AUTO_LEMMA_CAP) {
            if res.lemmas.iter().any(|r| r.formula == l) || l == q.goal {
                continue;
            }
            if prove_and_register(&mut res, &l, q, true).is_err() {
                continue;
            }
            let retry = attempt(&res.env, &q.goal, q, false);
            absorb(&mut res, &retry);
            result = retry.result;
            if result.is_ok() {
                break;
            }
        }
    }

    res.outcome = match result {
        Ok(evidence) => {
            let derivation =
                check_in_mode(&res.env, &evidence, &q.goal, q.mode).map_err(|rejection| {
                    EngineError::Recheck {
                        evidence: evidence.clone(),
                        rejection,
                    }
                })?;
            Outcome::Proved {
                evidence,
                derivation,
            }
        }
        Err(Fail::Exhausted) => Outcome::Exhausted,
        Err(Fail::Failed) => Outcome::Failed,
    };
    Ok(res)
}

fn absorb(res: &mut SearchResult, a: &Attempt) {
    let room = TRACE_CAP.saturating_sub(res.trace.len());
    res.trace.extend(a.trace.iter().take(room).cloned());
    res.trace_truncated |= a.truncated || a.trace.len() > room;
    res.nodes += a.nodes;
}

fn prove_and_register(
    res: &mut SearchResult,
    lemma: &HornClause,
    q: &Query,
    auto: bool,
) -> Result<(), (Outcome, String)> {
    let a = attempt(&res.env, lemma, q, false);
    absorb(res, &a);
    let evidence = match a.result {
        Ok(e) => e,
        Err(Fail::Exhausted) => return Err((Outcome::Exhausted, "lemma search exhausted".into())),
        Err(Fail::Failed) => return Err((Outcome::Failed, "lemma search failed".into())),
    };
    let env = register_lemma(&res.env, &evidence, lemma, q.mode.semantics())
        .map_err(|e| (Outcome::Failed, e.to_string()))?;
    res.env = env;
    res.lemmas.push(RegisteredLemma {
        formula: lemma.clone(),
        evidence,
        auto,
    });
    Ok(())
}

/// Proposes `p(Y1), .., p(Yk) ⇒ p(g)` where `g` anti-unifies the arguments
/// of a unary goal and an ancestor whose argument it strictly contains.
pub fn propose_lemma(goal: &Atom, ancestor: &Atom) -> Option<HornClause> {
    if goal.pred != ancestor.pred || goal.arity() != 1 || ancestor.arity() != 1 {
        return None;
    }
    let (t, u) = (&goal.args[0], &ancestor.args[0]);
    if t == u || !t.contains(u) {
        return None;
    }
    let mut pairs = Vec::new();
    let g = anti_unify(t, u, &mut pairs);
    if g.is_var() {
        return None;
    }
    let body = pairs
        .iter()
        .map(|(_, _, v)| Atom::new(goal.pred.clone(), vec![Term::var(v.clone())]))
        .collect();
    Some(HornClause::new(body, Atom::new(goal.pred.clone(), vec![g])))
}

/// Least general generalization. `pairs` memoizes the variable chosen for
/// each pair of disagreeing subterms.
pub fn anti_unify(s: &Term, t: &Term, pairs: &mut Vec<(Term, Term, String)>) -> Term {
    match (s, t) {
        _ if s == t => s.clone(),
        (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => Term::App(
            f.clone(),
            xs.iter()
                .zip(ys)
                .map(|(x, y)| anti_unify(x, y, pairs))
                .collect(),
        ),
        _ => {
            if let Some((_, _, v)) = pairs.iter().find(|(a, b, _)| a == s && b == t) {
                return Term::var(v.clone());
            }
            let v = if pairs.is_empty() {
                "Y".to_string()
            } else {
                format!("Y{}", pairs.len())
            };
            pairs.push((s.clone(), t.clone(), v.clone()));
            Term::var(v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_program, parse_proof};

    fn prog(src: &str) -> Program {
        parse_program(src).unwrap().program
    }

    fn run(src: &str, goal: &str, mode: Mode, depth: usize) -> SearchResult {
        resolve(
            &prog(src),
            &Query::new(parse_formula(goal).unwrap(), mode).depth(depth),
        )
        .unwrap()
    }

    fn proof_of(r: &SearchResult) -> String {
        r.outcome
            .evidence()
            .map(|e| e.to_string())
            .unwrap_or_else(|| r.outcome.name().to_string())
    }

    const PAIR: &str = "k1 : eq(X), eq(Y) => eq(pair(X,Y)).\nk2 : => eq(int).";
    const EVENODD: &str = "k1 : eq(X), eq(evenList(X)) => eq(oddList(X)).\n\
                           k2 : eq(X), eq(oddList(X)) => eq(evenList(X)).\n\
                           k3 : => eq(int).";
    const BUSH: &str = "k1 : => eq(int).\nk2 : eq(X), eq(bush(bush(X))) => eq(bush(X)).";

    #[test]
    fn pair_inductive() {
        let r = run(PAIR, "eq(pair(int,int))", Mode::Inductive, 8);
        assert_eq!(proof_of(&r), "k1 k2 k2");
    }

    #[test]
    fn evenodd_coinductive_and_inductive() {
        let r = run(EVENODD, "eq(evenList(int))", Mode::Coinductive, 8);
        assert_eq!(proof_of(&r), "nu a. k2 k3 (k1 k3 a)");
        let r = run(EVENODD, "eq(evenList(int))", Mode::Inductive, 8);
        assert_eq!(r.outcome, Outcome::Exhausted);
    }

    #[test]
    fn bush_lemma_then_goal() {
        let q = Query::new(parse_formula("eq(bush(int))").unwrap(), Mode::Extended)
            .lemma(parse_formula("eq(X) => eq(bush(X))").unwrap());
        let r = resolve(&prog(BUSH), &q).unwrap();
        assert_eq!(
            r.lemmas[0].evidence.to_string(),
            "nu a. \\b -> k2 b (a (a b))"
        );
        assert_eq!(proof_of(&r), "(nu a. \\b -> k2 b (a (a b))) k1");
    }

    #[test]
    fn bush_auto_lemma() {
        let q =
            Query::new(parse_formula("eq(bush(int))").unwrap(), Mode::Extended).auto_lemma(true);
        let r = resolve(&prog(BUSH), &q).unwrap();
        assert_eq!(r.lemmas.len(), 1);
        assert!(r.lemmas[0].auto);
        assert_eq!(r.lemmas[0].formula.to_string(), "eq(Y) => eq(bush(Y))");
        assert_eq!(proof_of(&r), "(nu a. \\b -> k2 b (a (a b))) k1");
    }

    #[test]
    fn bush_without_lemma_is_exhausted() {
        let r = run(BUSH, "eq(bush(int))", Mode::Extended, 8);
        assert_eq!(r.outcome, Outcome::Exhausted);
    }

    #[test]
    fn implication_by_lambda() {
        let r = run("k1 : A => B.\nk2 : B => C.", "A => C", Mode::Inductive, 8);
        assert_eq!(proof_of(&r), "\\b -> k2 (k1 b)");
        let r = run("", "A => A", Mode::Extended, 4);
        assert_eq!(proof_of(&r), "\\b -> b");
    }

    #[test]
    fn incompleteness_negatives() {
        for mode in [Mode::Inductive, Mode::Coinductive, Mode::Extended] {
            let r = run("k1 : => A(f(X)).\nk2 : => A(g).", "A(X)", mode, 8);
            assert_eq!(r.outcome, Outcome::Failed, "{mode}");
        }
        for mode in [Mode::Inductive, Mode::Extended] {
            let r = run("k1 : => A(f).\nk2 : => B(f).", "B(X) => A(X)", mode, 8);
            assert_eq!(r.outcome, Outcome::Failed, "{mode}");
        }
        let r = run(
            "k1 : D(X,s(Y)) => D(s(X),Y).\nk2 : D(s(X),z) => D(z,X).",
            "D(z,z)",
            Mode::Extended,
            12,
        );
        assert_eq!(r.outcome, Outcome::Exhausted);
    }

    #[test]
    fn completeness_example_non_ground() {
        let r = run("k1 : p(f(X)) => p(X).", "p(X)", Mode::Coinductive, 8);
        assert_eq!(proof_of(&r), "nu a. k1 a");
    }

    #[test]
    fn horn_goal_fails_in_coinductive_mode() {
        let r = run("k1 : A => B.", "A => B", Mode::Coinductive, 8);
        assert_eq!(r.outcome, Outcome::Failed);
    }

    #[test]
    fn failed_lemma_aborts_query() {
        let q = Query::new(parse_formula("eq(int)").unwrap(), Mode::Extended)
            .lemma(parse_formula("eq(X) => eq(pair(X,X))").unwrap());
        let r = resolve(&prog("k2 : => eq(int)."), &q).unwrap();
        assert_eq!(r.outcome, Outcome::Failed);
        assert!(r.lemma_failure.is_some());
    }

    #[test]
    fn proved_terms_recheck_and_are_guarded() {
        let r = run(EVENODD, "eq(oddList(int))", Mode::Extended, 8);
        let e = r.outcome.evidence().unwrap();
        assert!(e.is_guarded());
        assert_eq!(*e, parse_proof("nu a. k1 k3 (k2 k3 a)").unwrap());
    }

    #[test]
    fn deterministic_trace() {
        let a = run(EVENODD, "eq(evenList(int))", Mode::Coinductive, 6);
        let b = run(EVENODD, "eq(evenList(int))", Mode::Coinductive, 6);
        assert_eq!(a, b);
        assert!(!a.trace.is_empty());
    }

    #[test]
    fn propose_lemma_cases() {
        let a = |s: &str| crate::syntax::parse_atom(s).unwrap();
        assert_eq!(
            propose_lemma(&a("eq(bush(bush(X)))"), &a("eq(bush(X))"))
                .unwrap()
                .to_string(),
            "eq(Y) => eq(bush(Y))"
        );
        assert_eq!(
            propose_lemma(&a("eq(evenList(int))"), &a("eq(evenList(int))")),
            None
        );
        assert_eq!(propose_lemma(&a("D(s(z),z)"), &a("D(z,s(z))")), None);
        assert_eq!(propose_lemma(&a("eq(int)"), &a("eq(bush(int))")), None);
    }

    #[test]
    fn zero_depth_rejected() {
        let q = Query::new(parse_formula("eq(int)").unwrap(), Mode::Inductive).depth(0);
        assert_eq!(resolve(&prog(PAIR), &q), Err(EngineError::ZeroDepth));
    }
}
