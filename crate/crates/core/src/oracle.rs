//! Bounded Herbrand models: the operator `T_P`, least and greatest fixed
//! points over a depth-bounded base, gfp membership certificates, validity
//! and model preservation.
//!
//! A ground clause instance may need body atoms deeper than the base. The
//! [`Policy`] decides how those are read: `Pessimistic` treats them as
//! false, `Optimistic` as true. Pessimistic fixed points under-approximate
//! the true models restricted to the base; optimistic ones over-approximate
//! them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::calculus::Semantics;
use crate::program::{
    enumerate_ground_terms, groundings, tuples, LoadError, Program, Signature, SignatureError,
};
use crate::term::{match_atom, Atom, HornClause, Substitution, Term};

pub const DEFAULT_MAX_ITERS: usize = 10_000;
const SPLIT_BUDGET: usize = 3;
const WIDEN_ROUNDS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Policy {
    Optimistic,
    Pessimistic,
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Policy::Optimistic => "optimistic",
            Policy::Pessimistic => "pessimistic",
        })
    }
}

/// All ground atoms over a signature with argument terms of depth at most
/// `depth`. An empty universe (no constants) gives an empty base.
#[derive(Clone, Debug)]
pub struct HerbrandBase {
    pub signature: Signature,
    pub depth: usize,
    pub universe: Vec<Term>,
    atoms: Vec<Atom>,
    index: BTreeMap<Atom, usize>,
}

impl HerbrandBase {
    pub fn new(signature: Signature, depth: usize) -> Self {
        let universe = enumerate_ground_terms(&signature, depth.max(1)).unwrap_or_default();
        let mut atoms = Vec::new();
        for (p, &n) in &signature.predicates {
            if n > 0 && universe.is_empty() {
                continue;
            }
            for args in tuples(&universe, n) {
                atoms.push(Atom::new(p.clone(), args));
            }
        }
        atoms.sort();
        let index = atoms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        HerbrandBase {
            signature,
            depth,
            universe,
            atoms,
            index,
        }
    }

    /// The base for `program` extended with the symbols of `extra`.
    pub fn for_program(
        program: &Program,
        depth: usize,
        extra: &[&HornClause],
    ) -> Result<Self, SignatureError> {
        let mut sig = program.signature().clone();
        for f in extra {
            sig.add_clause(f)?;
        }
        Ok(HerbrandBase::new(sig, depth))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.index.contains_key(a)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn full(&self) -> Interpretation {
        Interpretation {
            atoms: self.atoms.iter().cloned().collect(),
            base_depth: self.depth,
        }
    }

    pub fn empty(&self) -> Interpretation {
        Interpretation {
            atoms: BTreeSet::new(),
            base_depth: self.depth,
        }
    }

    pub fn interpretation(&self, atoms: impl IntoIterator<Item = Atom>) -> Interpretation {
        Interpretation {
            atoms: atoms.into_iter().filter(|a| self.contains(a)).collect(),
            base_depth: self.depth,
        }
    }
}

/// A set of ground atoms inside a bounded base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub atoms: BTreeSet<Atom>,
    pub base_depth: usize,
}

impl Interpretation {
    pub fn contains(&self, a: &Atom) -> bool {
        self.atoms.contains(a)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.atoms.is_subset(&other.atoms)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// Ground instances of a program whose heads lie in a base; body atoms
/// outside the base are `None`.
struct GroundSystem<'b> {
    base: &'b HerbrandBase,
    rules: Vec<(usize, Vec<Option<usize>>)>,
}

impl<'b> GroundSystem<'b> {
    fn new(program: &Program, base: &'b HerbrandBase) -> Self {
        let mut rules = Vec::new();
        for (i, a) in base.atoms.iter().enumerate() {
            for c in program.clauses() {
                if let Ok(s) = match_atom(&c.clause.head, a) {
                    let body = c
                        .clause
                        .body
                        .iter()
                        .map(|b| base.index.get(&s.apply_atom(b)).copied())
                        .collect();
                    rules.push((i, body));
                }
            }
        }
        GroundSystem { base, rules }
    }

    fn step(&self, s: &[bool], policy: Policy) -> Vec<bool> {
        let mut out = vec![false; s.len()];
        for (h, body) in &self.rules {
            if out[*h] {
                continue;
            }
            let fires = body.iter().all(|b| match b {
                Some(j) => s[*j],
                None => policy == Policy::Optimistic,
            });
            if fires {
                out[*h] = true;
            }
        }
        out
    }

    fn iterate(
        &self,
        start: Vec<bool>,
        policy: Policy,
        max_iters: usize,
    ) -> (Vec<bool>, bool, usize) {
        let mut cur = start;
        for i in 0..max_iters {
            let next = self.step(&cur, policy);
            if next == cur {
                return (cur, true, i);
            }
            cur = next;
        }
        (cur, false, max_iters)
    }

    fn to_interp(&self, s: &[bool]) -> Interpretation {
        self.base.interpretation(
            s.iter()
                .zip(&self.base.atoms)
                .filter(|(b, _)| **b)
                .map(|(_, a)| a.clone()),
        )
    }

    fn mask_of(&self, i: &Interpretation) -> Vec<bool> {
        self.base.atoms.iter().map(|a| i.contains(a)).collect()
    }
}

/// One application of `T_P` inside `base`.
pub fn tp_step(
    program: &Program,
    base: &HerbrandBase,
    i: &Interpretation,
    policy: Policy,
) -> Interpretation {
    let sys = GroundSystem::new(program, base);
    sys.to_interp(&sys.step(&sys.mask_of(i), policy))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixpoint {
    pub model: Interpretation,
    pub converged: bool,
    pub iterations: usize,
}

/// Least fixed point from ∅ under the pessimistic policy.
pub fn lfp(program: &Program, depth: usize, max_iters: usize) -> Fixpoint {
    let base = HerbrandBase::new(program.signature().clone(), depth);
    lfp_in(program, &base, Policy::Pessimistic, max_iters)
}

pub fn lfp_in(
    program: &Program,
    base: &HerbrandBase,
    policy: Policy,
    max_iters: usize,
) -> Fixpoint {
    let sys = GroundSystem::new(program, base);
    let (s, converged, iterations) = sys.iterate(vec![false; base.len()], policy, max_iters);
    Fixpoint {
        model: sys.to_interp(&s),
        converged,
        iterations,
    }
}

/// Greatest fixed point from the full base.
pub fn gfp_bounded(program: &Program, depth: usize, policy: Policy) -> Interpretation {
    let base = HerbrandBase::new(program.signature().clone(), depth);
    gfp_in(program, &base, policy).model
}

pub fn gfp_in(program: &Program, base: &HerbrandBase, policy: Policy) -> Fixpoint {
    let sys = GroundSystem::new(program, base);
    let (s, converged, iterations) = sys.iterate(vec![true; base.len()], policy, DEFAULT_MAX_ITERS);
    Fixpoint {
        model: sys.to_interp(&s),
        converged,
        iterations,
    }
}

/// A finite post-fixed point containing `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: Atom,
    pub support: BTreeSet<Atom>,
}

/// Searches for a finite set of ground atoms `S` with `target ∈ S ⊆ T_P(S)`
/// whose terms have depth at most `search_depth`.
///
/// Every post-fixed point inside the bounded base is contained in the
/// pessimistic greatest fixed point, so the target is looked up there and
/// its support is read back along the clause instances that keep it alive.
/// The result is re-validated with [`tp_step`].
pub fn certify_gfp(program: &Program, target: &Atom, search_depth: usize) -> Option<Certificate> {
    if !target.is_ground() {
        return None;
    }
    let mut sig = program.signature().clone();
    sig.add_atom(target).ok()?;
    let base = HerbrandBase::new(sig, search_depth.max(target.depth()));
    let sys = GroundSystem::new(program, &base);
    let (gfp, _, _) = sys.iterate(
        vec![true; base.len()],
        Policy::Pessimistic,
        DEFAULT_MAX_ITERS,
    );
    let t = *base.index.get(target)?;
    if !gfp[t] {
        return None;
    }
    let mut support = BTreeSet::from([t]);
    let mut todo = vec![t];
    while let Some(a) = todo.pop() {
        let (_, body) = sys
            .rules
            .iter()
            .find(|(h, body)| *h == a && body.iter().all(|b| b.is_some_and(|j| gfp[j])))?;
        for j in body.iter().flatten() {
            if support.insert(*j) {
                todo.push(*j);
            }
        }
    }
    let cert = Certificate {
        target: target.clone(),
        support: support.into_iter().map(|i| base.atoms[i].clone()).collect(),
    };
    validate_certificate(program, &cert).then_some(cert)
}

/// Checks `target ∈ support ⊆ T_P(support)` by one application of `T_P`.
pub fn validate_certificate(program: &Program, cert: &Certificate) -> bool {
    if !cert.support.contains(&cert.target) || cert.support.iter().any(|a| !a.is_ground()) {
        return false;
    }
    let mut sig = program.signature().clone();
    if cert.support.iter().any(|a| sig.add_atom(a).is_err()) {
        return false;
    }
    let depth = cert
        .support
        .iter()
        .map(Atom::depth)
        .max()
        .unwrap_or(1)
        .max(1);
    let base = HerbrandBase::new(sig, depth);
    let s = base.interpretation(cert.support.iter().cloned());
    s.len() == cert.support.len() && s.is_subset(&tp_step(program, &base, &s, Policy::Pessimistic))
}

/// A post-fixed point given by patterns: each pattern stands for all of
/// its ground instances over the signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCertificate {
    pub target: Atom,
    pub patterns: Vec<Atom>,
}

impl PatternCertificate {
    pub fn covers(&self, a: &Atom) -> bool {
        self.patterns.iter().any(|p| match_atom(p, a).is_ok())
    }
}

/// Searches for a pattern certificate for a ground `target`, generalizing
/// by anti-unification whenever a body instance is not yet covered. A
/// result is returned only after [`verify_patterns`] accepts it, which
/// makes it sound over the unbounded universe.
pub fn certify_gfp_symbolic(
    program: &Program,
    target: &Atom,
    signature: &Signature,
) -> Option<PatternCertificate> {
    if !signature.has_constants() {
        return None;
    }
    let mut sig = signature.clone();
    sig.add_clause(&HornClause::fact(target.clone())).ok()?;
    for c in program.clauses() {
        sig.add_clause(&c.clause).ok()?;
    }
    let mut patterns = vec![target.clone()];
    for _ in 0..WIDEN_ROUNDS {
        let mut fresh = 0;
        let mut missing = Vec::new();
        for p in &patterns {
            uncovered(
                program,
                &sig,
                p,
                &patterns,
                SPLIT_BUDGET,
                &mut fresh,
                &mut missing,
            );
        }
        if missing.is_empty() {
            let cert = PatternCertificate {
                target: target.clone(),
                patterns: patterns.clone(),
            };
            return verify_patterns(program, &sig, &cert).then_some(cert);
        }
        let before = patterns.clone();
        for m in missing {
            widen(&mut patterns, &m);
        }
        if patterns == before {
            return None;
        }
    }
    None
}

/// Collects body instances that no pattern covers. Pushes `p` itself when
/// neither a clause head nor a case split covers it.
fn uncovered(
    program: &Program,
    sig: &Signature,
    p: &Atom,
    patterns: &[Atom],
    budget: usize,
    fresh: &mut usize,
    missing: &mut Vec<Atom>,
) {
    for c in program.clauses() {
        if let Ok(s) = match_atom(&c.clause.head, p) {
            for b in &c.clause.body {
                let b = s.apply_atom(b);
                if !patterns.iter().any(|q| match_atom(q, &b).is_ok()) && !missing.contains(&b) {
                    missing.push(b);
                }
            }
            return;
        }
    }
    let vars = p.vars();
    if budget == 0 || vars.is_empty() {
        if !missing.contains(p) {
            missing.push(p.clone());
        }
        return;
    }
    for case in split(sig, p, vars[0], fresh) {
        uncovered(program, sig, &case, patterns, budget - 1, fresh, missing);
    }
}

fn split(sig: &Signature, p: &Atom, var: &str, fresh: &mut usize) -> Vec<Atom> {
    sig.functors
        .iter()
        .map(|(f, &n)| {
            let args = (0..n)
                .map(|_| {
                    *fresh += 1;
                    Term::var(format!("V#{fresh}"))
                })
                .collect();
            Substitution::singleton(var, Term::app(f.clone(), args)).apply_atom(p)
        })
        .collect()
}

fn widen(patterns: &mut Vec<Atom>, a: &Atom) {
    if patterns.iter().any(|q| match_atom(q, a).is_ok()) {
        return;
    }
    if let Some(i) = patterns
        .iter()
        .position(|q| q.pred == a.pred && q.arity() == a.arity())
    {
        let mut pairs = Vec::new();
        let args = patterns[i]
            .args
            .iter()
            .zip(&a.args)
            .map(|(x, y)| crate::engine::anti_unify(x, y, &mut pairs))
            .collect();
        let g = Atom::new(a.pred.clone(), args);
        patterns.retain(|q| match_atom(&g, q).is_err());
        patterns.push(g);
    } else {
        patterns.push(a.clone());
    }
}

/// Every ground instance of every pattern is the head of a clause instance
/// whose body atoms are again instances of patterns.
pub fn verify_patterns(program: &Program, sig: &Signature, cert: &PatternCertificate) -> bool {
    if !cert.covers(&cert.target) {
        return false;
    }
    let mut fresh = 0;
    cert.patterns
        .iter()
        .all(|p| covered(program, sig, p, &cert.patterns, SPLIT_BUDGET, &mut fresh))
}

fn covered(
    program: &Program,
    sig: &Signature,
    p: &Atom,
    patterns: &[Atom],
    budget: usize,
    fresh: &mut usize,
) -> bool {
    for c in program.clauses() {
        if let Ok(s) = match_atom(&c.clause.head, p) {
            if c.clause.body.iter().all(|b| {
                patterns
                    .iter()
                    .any(|q| match_atom(q, &s.apply_atom(b)).is_ok())
            }) {
                return true;
            }
        }
    }
    if budget == 0 {
        return false;
    }
    p.vars().iter().any(|v| {
        split(sig, p, v, fresh)
            .iter()
            .all(|case| covered(program, sig, case, patterns, budget - 1, fresh))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// A grounding whose instance fails inside the bounded base.
    Invalid(Substitution),
    /// Some instance could not be decided within the bound.
    Unknown(Substitution),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub verdict: Verdict,
    pub semantics: Semantics,
    /// Depth of the terms substituted for the formula's variables.
    pub ground_depth: usize,
    /// Depth of the Herbrand base the models were computed in.
    pub base_depth: usize,
    pub instances: usize,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }

    pub fn is_invalid(&self) -> bool {
        matches!(self.verdict, Verdict::Invalid(_))
    }

    pub fn label(&self) -> String {
        match &self.verdict {
            Verdict::Valid => "VALID".into(),
            Verdict::Invalid(s) => format!("INVALID {s}"),
            Verdict::Unknown(s) => format!("UNKNOWN {s}"),
        }
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} semantics, groundings to depth {}, base depth {})",
            self.label(),
            self.semantics,
            self.ground_depth,
            self.base_depth
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Truth {
    True,
    False,
    Unknown,
}

struct Bounds<'a> {
    program: &'a Program,
    semantics: Semantics,
    base: HerbrandBase,
    lower: Interpretation,
    upper: Interpretation,
    patterns: Vec<PatternCertificate>,
    refuted: BTreeSet<Atom>,
}

impl<'a> Bounds<'a> {
    fn new(program: &'a Program, semantics: Semantics, base: HerbrandBase) -> Self {
        let (lower, upper) = match semantics {
            Semantics::Inductive => (
                lfp_in(program, &base, Policy::Pessimistic, DEFAULT_MAX_ITERS).model,
                lfp_in(program, &base, Policy::Optimistic, DEFAULT_MAX_ITERS).model,
            ),
            Semantics::Coinductive => (
                gfp_in(program, &base, Policy::Pessimistic).model,
                gfp_in(program, &base, Policy::Optimistic).model,
            ),
        };
        Bounds {
            program,
            semantics,
            base,
            lower,
            upper,
            patterns: Vec::new(),
            refuted: BTreeSet::new(),
        }
    }

    fn truth(&mut self, a: &Atom) -> Truth {
        if self.lower.contains(a) {
            return Truth::True;
        }
        if self.base.contains(a) && !self.upper.contains(a) {
            return Truth::False;
        }
        if self.semantics == Semantics::Coinductive {
            if self.patterns.iter().any(|c| c.covers(a)) {
                return Truth::True;
            }
            if !self.refuted.contains(a) {
                match certify_gfp_symbolic(self.program, a, &self.base.signature) {
                    Some(c) => {
                        self.patterns.push(c);
                        return Truth::True;
                    }
                    None => {
                        self.refuted.insert(a.clone());
                    }
                }
            }
        }
        Truth::Unknown
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Load(#[from] LoadError),
}

/// Validity of `f` for every grounding by terms of depth at most `depth`.
/// The base is deep enough to contain every such instance.
pub fn valid(
    program: &Program,
    f: &HornClause,
    semantics: Semantics,
    depth: usize,
) -> Result<ValidityReport, OracleError> {
    let atom_depth = std::iter::once(&f.head)
        .chain(&f.body)
        .map(Atom::depth)
        .max()
        .unwrap_or(0);
    let base_depth = (depth + atom_depth).saturating_sub(1).max(depth);
    valid_with(program, f, semantics, depth, base_depth)
}

pub fn valid_with(
    program: &Program,
    f: &HornClause,
    semantics: Semantics,
    ground_depth: usize,
    base_depth: usize,
) -> Result<ValidityReport, OracleError> {
    let base = HerbrandBase::for_program(program, base_depth, &[f])?;
    let universe = enumerate_ground_terms(&base.signature, ground_depth).unwrap_or_default();
    let vars = f.vars();
    let mut bounds = Bounds::new(program, semantics, base);
    let mut unknown = None;
    let gs = if vars.is_empty() {
        vec![Substitution::new()]
    } else {
        groundings(&vars, &universe)
    };
    let instances = gs.len();
    for s in gs {
        let mut body = Truth::True;
        for b in &f.body {
            match bounds.truth(&s.apply_atom(b)) {
                Truth::False => {
                    body = Truth::False;
                    break;
                }
                Truth::Unknown => body = Truth::Unknown,
                Truth::True => {}
            }
        }
        if body == Truth::False {
            continue;
        }
        match (body, bounds.truth(&s.apply_atom(&f.head))) {
            (_, Truth::True) => {}
            (Truth::True, Truth::False) => {
                return Ok(ValidityReport {
                    verdict: Verdict::Invalid(s),
                    semantics,
                    ground_depth,
                    base_depth,
                    instances,
                })
            }
            _ => {
                unknown.get_or_insert(s);
            }
        }
    }
    Ok(ValidityReport {
        verdict: unknown.map_or(Verdict::Valid, Verdict::Unknown),
        semantics,
        ground_depth,
        base_depth,
        instances,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationReport {
    pub preserved: bool,
    pub semantics: Semantics,
    pub depth: usize,
    /// In the model of the extended program only.
    pub added: Vec<Atom>,
    /// In the model of the original program only.
    pub removed: Vec<Atom>,
    /// Added atoms confirmed by a ground certificate of the extended program.
    pub certified: Vec<Atom>,
}

/// Compares the model of `program` with that of `program` plus `f` on the
/// shared bounded base.
pub fn preserves_model(
    program: &Program,
    f: &HornClause,
    semantics: Semantics,
    depth: usize,
) -> Result<PreservationReport, OracleError> {
    let extended = program.with_lemma(program.fresh_name("lemma"), f.clone())?;
    let base = HerbrandBase::for_program(program, depth, &[f])?;
    let (before, after) = match semantics {
        Semantics::Inductive => (
            lfp_in(program, &base, Policy::Pessimistic, DEFAULT_MAX_ITERS).model,
            lfp_in(&extended, &base, Policy::Pessimistic, DEFAULT_MAX_ITERS).model,
        ),
        Semantics::Coinductive => (
            gfp_in(program, &base, Policy::Optimistic).model,
            gfp_in(&extended, &base, Policy::Optimistic).model,
        ),
    };
    let added: Vec<Atom> = after.atoms.difference(&before.atoms).cloned().collect();
    let removed: Vec<Atom> = before.atoms.difference(&after.atoms).cloned().collect();
    let certified = if semantics == Semantics::Coinductive {
        added
            .iter()
            .filter(|a| certify_gfp(&extended, a, depth).is_some())
            .cloned()
            .collect()
    } else {
        Vec::new()
    };
    Ok(PreservationReport {
        preserved: added.is_empty() && removed.is_empty(),
        semantics,
        depth,
        added,
        removed,
        certified,
    })
}

/// `i ⊆ j` implies `T_P(i) ⊆ T_P(j)` for this pair.
pub fn tp_monotone_check(
    program: &Program,
    base: &HerbrandBase,
    i: &Interpretation,
    j: &Interpretation,
    policy: Policy,
) -> bool {
    tp_step(program, base, i, policy).is_subset(&tp_step(program, base, j, policy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_atom, parse_formula, parse_program};

    fn prog(src: &str) -> Program {
        parse_program(src).unwrap().program
    }
    fn atoms(xs: &[&str]) -> BTreeSet<Atom> {
        xs.iter().map(|s| parse_atom(s).unwrap()).collect()
    }

    const PAIR: &str = "k1 : eq(X), eq(Y) => eq(pair(X,Y)).\nk2 : => eq(int).";
    const EVENODD: &str = "k1 : eq(X), eq(evenList(X)) => eq(oddList(X)).\n\
                           k2 : eq(X), eq(oddList(X)) => eq(evenList(X)).\n\
                           k3 : => eq(int).";
    const P11: &str = "k1 : D(X,s(Y)) => D(s(X),Y).\nk2 : D(s(X),z) => D(z,X).";
    const BUSH: &str = "k1 : => eq(int).\nk2 : eq(X), eq(bush(bush(X))) => eq(bush(X)).";

    #[test]
    fn tp_pair_steps() {
        let p = prog(PAIR);
        let base = HerbrandBase::new(p.signature().clone(), 2);
        let one = tp_step(&p, &base, &base.empty(), Policy::Pessimistic);
        assert_eq!(one.atoms, atoms(&["eq(int)"]));
        let two = tp_step(&p, &base, &one, Policy::Pessimistic);
        assert_eq!(two.atoms, atoms(&["eq(int)", "eq(pair(int,int))"]));
    }

    #[test]
    fn lfp_examples() {
        let r = lfp(&prog(PAIR), 2, DEFAULT_MAX_ITERS);
        assert!(r.converged);
        assert_eq!(r.model.atoms, atoms(&["eq(int)", "eq(pair(int,int))"]));
        assert_eq!(
            lfp(&prog(EVENODD), 2, DEFAULT_MAX_ITERS).model.atoms,
            atoms(&["eq(int)"])
        );
        assert_eq!(
            lfp(
                &prog("k1 : => A(f(X)).\nk2 : => A(g)."),
                3,
                DEFAULT_MAX_ITERS
            )
            .model
            .atoms,
            atoms(&["A(g)", "A(f(g))", "A(f(f(g)))"])
        );
    }

    #[test]
    fn lfp_reports_non_convergence() {
        let r = lfp(&prog("k1 : => A(f(X)).\nk2 : => A(g)."), 3, 1);
        assert!(!r.converged);
    }

    #[test]
    fn gfp_examples() {
        assert_eq!(
            gfp_bounded(&prog(EVENODD), 2, Policy::Pessimistic).atoms,
            atoms(&["eq(int)", "eq(evenList(int))", "eq(oddList(int))"])
        );
        let inf = prog("k : p(X) => p(f(X)).\nk0 : => q(g).");
        assert!(gfp_bounded(&inf, 4, Policy::Pessimistic)
            .atoms
            .iter()
            .all(|a| a.pred != "p"));
    }

    #[test]
    fn certificates() {
        let c = certify_gfp(&prog(EVENODD), &parse_atom("eq(evenList(int))").unwrap(), 3).unwrap();
        assert_eq!(
            c.support,
            atoms(&["eq(int)", "eq(evenList(int))", "eq(oddList(int))"])
        );
        let c = certify_gfp(&prog(PAIR), &parse_atom("eq(pair(int,int))").unwrap(), 2).unwrap();
        assert_eq!(c.support, atoms(&["eq(int)", "eq(pair(int,int))"]));
        assert!(certify_gfp(
            &prog("k : p(X) => p(f(X))."),
            &parse_atom("p(g)").unwrap(),
            5
        )
        .is_none());
    }

    #[test]
    fn p11_has_no_finite_ground_support() {
        let p = prog(P11);
        for d in 1..=8 {
            assert!(certify_gfp(&p, &parse_atom("D(z,z)").unwrap(), d).is_none());
        }
    }

    #[test]
    fn symbolic_certificates() {
        let p = prog(P11);
        let c = certify_gfp_symbolic(&p, &parse_atom("D(z,z)").unwrap(), p.signature()).unwrap();
        assert_eq!(c.patterns, vec![parse_atom("D(Y,Y1)").unwrap()]);
        let p = prog(BUSH);
        let c =
            certify_gfp_symbolic(&p, &parse_atom("eq(bush(int))").unwrap(), p.signature()).unwrap();
        assert_eq!(c.patterns, vec![parse_atom("eq(Y)").unwrap()]);
        let p = prog("k : p(X) => p(f(X)).\nk0 : => q(g).");
        assert!(certify_gfp_symbolic(&p, &parse_atom("p(g)").unwrap(), p.signature()).is_none());
    }

    #[test]
    fn bogus_pattern_certificate_rejected() {
        let p = prog("k : p(X) => p(f(X)).\nk0 : => q(g).");
        let cert = PatternCertificate {
            target: parse_atom("p(g)").unwrap(),
            patterns: vec![parse_atom("p(X)").unwrap()],
        };
        assert!(!verify_patterns(&p, p.signature(), &cert));
    }

    #[test]
    fn validity_examples() {
        let p7 = prog("k1 : => A(f).\nk2 : => B(f).");
        let r = valid(
            &p7,
            &parse_formula("B(X) => A(X)").unwrap(),
            Semantics::Inductive,
            1,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Valid);
        let eo = prog(EVENODD);
        let g = parse_formula("eq(evenList(int))").unwrap();
        assert!(valid(&eo, &g, Semantics::Coinductive, 2)
            .unwrap()
            .is_valid());
        assert_eq!(
            valid(&eo, &g, Semantics::Inductive, 2).unwrap().verdict,
            Verdict::Invalid(Substitution::new())
        );
        for s in [Semantics::Inductive, Semantics::Coinductive] {
            assert!(valid(&eo, &parse_formula("eq(int)").unwrap(), s, 2)
                .unwrap()
                .is_valid());
        }
        let p11 = prog(P11);
        assert!(valid(
            &p11,
            &parse_formula("D(z,z)").unwrap(),
            Semantics::Coinductive,
            3
        )
        .unwrap()
        .is_valid());
    }

    #[test]
    fn preservation_examples() {
        let p = prog("k1 : A => B.\nk2 : B => C.");
        let r = preserves_model(
            &p,
            &parse_formula("A => C").unwrap(),
            Semantics::Inductive,
            1,
        )
        .unwrap();
        assert!(r.preserved);
        let p = prog("k : A => B.");
        let r = preserves_model(
            &p,
            &parse_formula("A => A").unwrap(),
            Semantics::Coinductive,
            1,
        )
        .unwrap();
        assert!(!r.preserved);
        assert_eq!(r.added, atoms(&["A", "B"]).into_iter().collect::<Vec<_>>());
        assert_eq!(r.certified.len(), 2);
        let r = preserves_model(
            &prog(BUSH),
            &parse_formula("eq(X) => eq(bush(X))").unwrap(),
            Semantics::Coinductive,
            3,
        )
        .unwrap();
        assert!(r.preserved);
    }

    #[test]
    fn lfp_below_optimistic_gfp() {
        for src in [PAIR, EVENODD, P11, BUSH] {
            let p = prog(src);
            let l = lfp(&p, 3, DEFAULT_MAX_ITERS).model;
            assert!(l.is_subset(&gfp_bounded(&p, 3, Policy::Optimistic)));
        }
    }
}
