//! First-order terms, atoms, Horn clauses and substitutions.
//!
//! Variables are identifiers starting with an uppercase letter (or `_`);
//! everything else is a function or predicate symbol. Resolution in this
//! crate never unifies goals: the only binding operation used during proof
//! search is one-way [`match_atom`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// A first-order term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(String),
    /// Function application; constants are applications with no arguments.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }

    /// `depth(c) = depth(X) = 1`, `depth(f(t1..tn)) = 1 + max depth(ti)`.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// True if `sub` occurs in `self` (including `self == sub`).
    pub fn contains(&self, sub: &Term) -> bool {
        if self == sub {
            return true;
        }
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.contains(sub)),
        }
    }

    fn occurs(&self, var: &str) -> bool {
        match self {
            Term::Var(v) => v == var,
            Term::App(_, args) => args.iter().any(|a| a.occurs(var)),
        }
    }

    pub(crate) fn for_each_functor<'a>(&'a self, f: &mut impl FnMut(&'a str, usize)) {
        if let Term::App(name, args) = self {
            f(name, args.len());
            args.iter().for_each(|a| a.for_each_functor(f));
        }
    }
}

// Terms are ordered by depth first, then by functor name, then argument-wise.
// Variables sort before applications of the same depth.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.depth()
            .cmp(&other.depth())
            .then_with(|| match (self, other) {
                (Term::Var(a), Term::Var(b)) => a.cmp(b),
                (Term::Var(_), Term::App(..)) => Ordering::Less,
                (Term::App(..), Term::Var(_)) => Ordering::Greater,
                (Term::App(f, xs), Term::App(g, ys)) => f
                    .cmp(g)
                    .then_with(|| xs.len().cmp(&ys.len()))
                    .then_with(|| xs.cmp(ys)),
            })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(name, args) => {
                f.write_str(name)?;
                write_args(f, args)
            }
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

/// An atomic formula `p(t1, ..., tn)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            pred: pred.into(),
            args,
        }
    }

    pub fn prop(pred: impl Into<String>) -> Self {
        Atom::new(pred, Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    /// Maximum argument depth; 0 for propositional atoms.
    pub fn depth(&self) -> usize {
        self.args.iter().map(Term::depth).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        for a in &self.args {
            a.collect_vars(&mut out);
        }
        out
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        write_args(f, &self.args)
    }
}

/// A Horn formula `B1, ..., Bn => A`. Atomic formulae have an empty body.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct HornClause {
    pub body: Vec<Atom>,
    pub head: Atom,
}

impl HornClause {
    pub fn new(body: Vec<Atom>, head: Atom) -> Self {
        HornClause { body, head }
    }

    pub fn fact(head: Atom) -> Self {
        HornClause::new(Vec::new(), head)
    }

    pub fn is_atomic(&self) -> bool {
        self.body.is_empty()
    }

    /// Variables of the whole formula, head first.
    pub fn vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        for a in std::iter::once(&self.head).chain(&self.body) {
            for t in &a.args {
                t.collect_vars(&mut out);
            }
        }
        out
    }

    /// Body variables that do not occur in the head.
    pub fn existential_vars(&self) -> Vec<&str> {
        let head: BTreeSet<&str> = self.head.vars().into_iter().collect();
        let mut out: Vec<&str> = Vec::new();
        for b in &self.body {
            for v in b.vars() {
                if !head.contains(v) && !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Rename every variable `X` to `X#suffix`. `#` cannot appear in parsed
    /// identifiers, so renamed clauses never clash with source variables.
    pub fn rename_apart(&self, suffix: usize) -> HornClause {
        let subst: Substitution = self
            .vars()
            .into_iter()
            .map(|v| (v.to_string(), Term::var(format!("{v}#{suffix}"))))
            .collect();
        subst.apply_clause(self)
    }
}

impl fmt::Display for HornClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.body.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        if !self.body.is_empty() {
            f.write_str(" => ")?;
        }
        write!(f, "{}", self.head)
    }
}

/// A finite map from variables to terms, applied simultaneously.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Substitution {
    bindings: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(var: impl Into<String>, term: Term) -> Self {
        let mut s = Self::new();
        s.bind(var, term);
        s
    }

    /// Binds `var`, dropping the binding when it is the identity.
    pub fn bind(&mut self, var: impl Into<String>, term: Term) {
        let var = var.into();
        if term == Term::Var(var.clone()) {
            self.bindings.remove(&var);
        } else {
            self.bindings.insert(var, term);
        }
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.bindings.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.bindings.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| self.apply_term(a)).collect())
            }
        }
    }

    pub fn apply_atom(&self, a: &Atom) -> Atom {
        Atom {
            pred: a.pred.clone(),
            args: a.args.iter().map(|t| self.apply_term(t)).collect(),
        }
    }

    pub fn apply_clause(&self, c: &HornClause) -> HornClause {
        HornClause {
            body: c.body.iter().map(|b| self.apply_atom(b)).collect(),
            head: self.apply_atom(&c.head),
        }
    }

    /// `compose(σ, τ)` satisfies `apply(compose(σ, τ), t) == apply(σ, apply(τ, t))`.
    pub fn compose(sigma: &Substitution, tau: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &tau.bindings {
            out.bind(v.clone(), sigma.apply_term(t));
        }
        for (v, t) in &sigma.bindings {
            if !tau.bindings.contains_key(v) {
                out.bind(v.clone(), t.clone());
            }
        }
        out
    }

    /// No binding's range mentions a variable of the domain.
    pub fn is_idempotent(&self) -> bool {
        self.bindings
            .values()
            .all(|t| self.bindings.keys().all(|v| !t.occurs(v)))
    }
}

impl FromIterator<(String, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        let mut s = Substitution::new();
        for (v, t) in iter {
            s.bind(v, t);
        }
        s
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} := {t}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("no matcher exists")]
    NoMatch,
    #[error("symbol `{symbol}` used with arities {left} and {right}")]
    Arity {
        symbol: String,
        left: usize,
        right: usize,
    },
}

/// One-way matching: finds σ with `σ(pattern) == target`. Variables of the
/// target are never bound, even when they share names with pattern variables.
pub fn match_atom(pattern: &Atom, target: &Atom) -> Result<Substitution, MatchError> {
    match_atom_fixing(pattern, target, &BTreeSet::new())
}

/// Like [`match_atom`], but pattern variables in `fixed` are rigid: they
/// only match themselves.
pub fn match_atom_fixing(
    pattern: &Atom,
    target: &Atom,
    fixed: &BTreeSet<String>,
) -> Result<Substitution, MatchError> {
    if pattern.pred != target.pred {
        return Err(MatchError::NoMatch);
    }
    if pattern.args.len() != target.args.len() {
        return Err(MatchError::Arity {
            symbol: pattern.pred.clone(),
            left: pattern.args.len(),
            right: target.args.len(),
        });
    }
    let mut bindings = BTreeMap::new();
    for (p, t) in pattern.args.iter().zip(&target.args) {
        match_term(p, t, fixed, &mut bindings)?;
    }
    Ok(bindings.into_iter().collect())
}

pub fn match_term_to(pattern: &Term, target: &Term) -> Result<Substitution, MatchError> {
    let mut bindings = BTreeMap::new();
    match_term(pattern, target, &BTreeSet::new(), &mut bindings)?;
    Ok(bindings.into_iter().collect())
}

fn match_term(
    pattern: &Term,
    target: &Term,
    fixed: &BTreeSet<String>,
    bindings: &mut BTreeMap<String, Term>,
) -> Result<(), MatchError> {
    match (pattern, target) {
        (Term::Var(v), _) if fixed.contains(v) => {
            if matches!(target, Term::Var(w) if w == v) {
                Ok(())
            } else {
                Err(MatchError::NoMatch)
            }
        }
        (Term::Var(v), _) => match bindings.get(v) {
            Some(bound) if bound == target => Ok(()),
            Some(_) => Err(MatchError::NoMatch),
            None => {
                bindings.insert(v.clone(), target.clone());
                Ok(())
            }
        },
        (Term::App(..), Term::Var(_)) => Err(MatchError::NoMatch),
        (Term::App(f, xs), Term::App(g, ys)) => {
            if f != g {
                return Err(MatchError::NoMatch);
            }
            if xs.len() != ys.len() {
                return Err(MatchError::Arity {
                    symbol: f.clone(),
                    left: xs.len(),
                    right: ys.len(),
                });
            }
            for (x, y) in xs.iter().zip(ys) {
                match_term(x, y, fixed, bindings)?;
            }
            Ok(())
        }
    }
}

/// Most general unifier with occurs check, in triangular-free (solved) form.
pub fn unify_atoms(a: &Atom, b: &Atom) -> Option<Substitution> {
    if a.pred != b.pred || a.args.len() != b.args.len() {
        return None;
    }
    let mut s = Substitution::new();
    let mut work: Vec<(Term, Term)> = a.args.iter().cloned().zip(b.args.iter().cloned()).collect();
    while let Some((x, y)) = work.pop() {
        let x = s.apply_term(&x);
        let y = s.apply_term(&y);
        match (x, y) {
            (x, y) if x == y => {}
            (Term::Var(v), t) | (t, Term::Var(v)) => {
                if t.occurs(&v) {
                    return None;
                }
                s = Substitution::compose(&Substitution::singleton(v, t), &s);
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return None;
                }
                work.extend(xs.into_iter().zip(ys));
            }
        }
    }
    Some(s)
}

/// True iff the atoms have a most general unifier (occurs check on).
pub fn unifiable(a: &Atom, b: &Atom) -> bool {
    unify_atoms(a, b).is_some()
}
