//! Programs, signatures and bounded ground enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::term::{unifiable, Atom, HornClause, Substitution, Term};

/// Arities of function and predicate symbols. The two namespaces are kept
/// apart, so `A` may be a predicate while `a` is a constant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub functors: BTreeMap<String, usize>,
    pub predicates: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("{kind} `{symbol}` used with arity {expected} and {found}")]
    Arity {
        kind: &'static str,
        symbol: String,
        expected: usize,
        found: usize,
    },
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_functor(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        insert_arity(&mut self.functors, "functor", name, arity)
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        insert_arity(&mut self.predicates, "predicate", name, arity)
    }

    pub fn add_term(&mut self, t: &Term) -> Result<(), SignatureError> {
        let mut result = Ok(());
        t.for_each_functor(&mut |name, arity| {
            if result.is_ok() {
                result = self.add_functor(name, arity);
            }
        });
        result
    }

    pub fn add_atom(&mut self, a: &Atom) -> Result<(), SignatureError> {
        self.add_predicate(&a.pred, a.arity())?;
        a.args.iter().try_for_each(|t| self.add_term(t))
    }

    pub fn add_clause(&mut self, c: &HornClause) -> Result<(), SignatureError> {
        self.add_atom(&c.head)?;
        c.body.iter().try_for_each(|b| self.add_atom(b))
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.functors
            .iter()
            .filter(|(_, &n)| n == 0)
            .map(|(f, _)| f.as_str())
    }

    pub fn has_constants(&self) -> bool {
        self.constants().next().is_some()
    }
}

fn insert_arity(
    map: &mut BTreeMap<String, usize>,
    kind: &'static str,
    name: &str,
    arity: usize,
) -> Result<(), SignatureError> {
    match map.get(name) {
        Some(&expected) if expected != arity => Err(SignatureError::Arity {
            kind,
            symbol: name.to_string(),
            expected,
            found: arity,
        }),
        Some(_) => Ok(()),
        None => {
            map.insert(name.to_string(), arity);
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseKind {
    Axiom,
    /// Added after load (a proved lemma or a transformation under test);
    /// exempt from the overlap check.
    Lemma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedClause {
    pub name: String,
    pub clause: HornClause,
    pub kind: ClauseKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("clause {clause}: existential variable(s) {}", vars.join(", "))]
    ExistentialVar { clause: String, vars: Vec<String> },
    #[error(
        "clauses {first} and {second} have unifiable heads: `{first_head}` and `{second_head}`"
    )]
    Overlap {
        first: String,
        first_head: String,
        second: String,
        second_head: String,
    },
    #[error("clause {clause}: {source}")]
    Arity {
        clause: String,
        #[source]
        source: SignatureError,
    },
    #[error("clause name {0} defined twice")]
    DuplicateName(String),
}

/// A validated logic program. Clause order is source order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    clauses: Vec<NamedClause>,
    signature: Signature,
}

impl Program {
    /// Loads axioms, enforcing signature consistency, the absence of
    /// existential variables and pairwise non-unifiable heads.
    pub fn new<S: Into<String>>(
        clauses: impl IntoIterator<Item = (S, HornClause)>,
    ) -> Result<Program, LoadError> {
        let mut p = Program {
            clauses: Vec::new(),
            signature: Signature::new(),
        };
        for (name, clause) in clauses {
            p.push(name.into(), clause, ClauseKind::Axiom)?;
        }
        Ok(p)
    }

    fn push(
        &mut self,
        name: String,
        clause: HornClause,
        kind: ClauseKind,
    ) -> Result<(), LoadError> {
        if self.clauses.iter().any(|c| c.name == name) {
            return Err(LoadError::DuplicateName(name));
        }
        let ex = clause.existential_vars();
        if !ex.is_empty() {
            return Err(LoadError::ExistentialVar {
                clause: name,
                vars: ex.into_iter().map(String::from).collect(),
            });
        }
        let mut sig = self.signature.clone();
        sig.add_clause(&clause).map_err(|source| LoadError::Arity {
            clause: name.clone(),
            source,
        })?;
        if kind == ClauseKind::Axiom {
            let fresh = clause.rename_apart(0);
            for other in self.axioms() {
                if unifiable(&other.clause.rename_apart(1).head, &fresh.head) {
                    return Err(LoadError::Overlap {
                        first: other.name.clone(),
                        first_head: other.clause.head.to_string(),
                        second: name,
                        second_head: clause.head.to_string(),
                    });
                }
            }
        }
        self.signature = sig;
        self.clauses.push(NamedClause { name, clause, kind });
        Ok(())
    }

    /// A copy of this program with one more clause that may overlap
    /// existing heads.
    pub fn with_lemma(
        &self,
        name: impl Into<String>,
        clause: HornClause,
    ) -> Result<Program, LoadError> {
        let mut p = self.clone();
        p.push(name.into(), clause, ClauseKind::Lemma)?;
        Ok(p)
    }

    /// A name not yet used by any clause, of the form `lemma`, `lemma2`, ...
    pub fn fresh_name(&self, stem: &str) -> String {
        (1..)
            .map(|i| {
                if i == 1 {
                    stem.to_string()
                } else {
                    format!("{stem}{i}")
                }
            })
            .find(|n| self.get(n).is_none())
            .unwrap()
    }

    pub fn clauses(&self) -> &[NamedClause] {
        &self.clauses
    }

    pub fn axioms(&self) -> impl Iterator<Item = &NamedClause> {
        self.clauses.iter().filter(|c| c.kind == ClauseKind::Axiom)
    }

    pub fn get(&self, name: &str) -> Option<&NamedClause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            f.write_str(&c.name)?;
            f.write_str(" :")?;
            for (i, b) in c.clause.body.iter().enumerate() {
                f.write_str(if i == 0 { " " } else { ", " })?;
                write!(f, "{b}")?;
            }
            writeln!(f, " => {}.", c.clause.head)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("signature has no constants, so the Herbrand universe is empty")]
    NoConstants,
    #[error("depth must be at least 1")]
    ZeroDepth,
}

/// All ground terms of depth at most `depth`, sorted by the term order.
pub fn enumerate_ground_terms(
    sig: &Signature,
    depth: usize,
) -> Result<Vec<Term>, EnumerationError> {
    if depth == 0 {
        return Err(EnumerationError::ZeroDepth);
    }
    if !sig.has_constants() {
        return Err(EnumerationError::NoConstants);
    }
    let mut terms: BTreeSet<Term> = sig.constants().map(Term::constant).collect();
    for _ in 1..depth {
        let prev: Vec<Term> = terms.iter().cloned().collect();
        let mut next = terms.clone();
        for (f, &n) in &sig.functors {
            if n == 0 {
                continue;
            }
            for args in tuples(&prev, n) {
                next.insert(Term::app(f.clone(), args));
            }
        }
        if next.len() == terms.len() {
            break;
        }
        terms = next;
    }
    Ok(terms.into_iter().collect())
}

/// All `n`-tuples over `items`, in lexicographic order.
pub fn tuples<T: Clone>(items: &[T], n: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Every grounding substitution for `vars` over `universe`.
pub fn groundings(vars: &[&str], universe: &[Term]) -> Vec<Substitution> {
    tuples(universe, vars.len())
        .into_iter()
        .map(|ts| vars.iter().map(|v| v.to_string()).zip(ts).collect())
        .collect()
}

/// All instantiations of the head variables of `c` by elements of `universe`.
pub fn ground_instances(c: &HornClause, universe: &[Term]) -> Vec<HornClause> {
    let vars = c.head.vars();
    groundings(&vars, universe)
        .iter()
        .map(|s| s.apply_clause(c))
        .collect()
}
