//! Shared fixtures and seeded generators for integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tcres::program::Program;
use tcres::proof::ProofTerm;
use tcres::syntax::parse_program;
use tcres::term::{Atom, HornClause, Substitution, Term};

pub const PAIR: &str = include_str!("../../data/pair.hc");
pub const EVENODD: &str = include_str!("../../data/evenodd.hc");
pub const BUSH: &str = include_str!("../../data/bush.hc");
pub const CHAIN: &str = include_str!("../../data/chain.hc");
pub const P6: &str = include_str!("../../data/p6.hc");
pub const P7: &str = include_str!("../../data/p7.hc");
pub const P11: &str = include_str!("../../data/p11.hc");
pub const INF: &str = include_str!("../../data/inf.hc");
pub const AB: &str = include_str!("../../data/ab.hc");
pub const PFX: &str = include_str!("../../data/pfx.hc");

pub const CORPUS: &[(&str, &str)] = &[
    ("pair", PAIR),
    ("evenodd", EVENODD),
    ("bush", BUSH),
    ("chain", CHAIN),
    ("p6", P6),
    ("p7", P7),
    ("p11", P11),
    ("inf", INF),
    ("ab", AB),
    ("pfx", PFX),
];

pub fn load(src: &str) -> Program {
    parse_program(src).unwrap().program
}

pub fn data_path(name: &str) -> String {
    format!("{}/data/{name}.hc", env!("CARGO_MANIFEST_DIR"))
}

/// A random signature: at most two predicates and at most two function
/// symbols, at least one of them a constant.
#[derive(Clone, Debug)]
pub struct Sig {
    pub preds: Vec<(String, usize)>,
    pub functors: Vec<(String, usize)>,
}

pub fn gen_sig(rng: &mut ChaCha8Rng) -> Sig {
    let n_preds = rng.gen_range(1..=2);
    let preds = ["p", "q"][..n_preds]
        .iter()
        .map(|p| (p.to_string(), *[0usize, 1, 1, 1, 2].choose(rng).unwrap()))
        .collect();
    let functors = match rng.gen_range(0..4) {
        0 => vec![("c".into(), 0)],
        1 => vec![("c".into(), 0), ("d".into(), 0)],
        2 => vec![("c".into(), 0), ("f".into(), 1)],
        _ => vec![("c".into(), 0), ("g".into(), 2)],
    };
    Sig { preds, functors }
}

pub fn gen_term(rng: &mut ChaCha8Rng, sig: &Sig, vars: &[&str], depth: usize) -> Term {
    let leaf = depth <= 1 || rng.gen_bool(0.4);
    if !vars.is_empty() && rng.gen_bool(if leaf { 0.6 } else { 0.2 }) {
        return Term::var(*vars.choose(rng).unwrap());
    }
    let candidates: Vec<&(String, usize)> = sig
        .functors
        .iter()
        .filter(|(_, n)| !leaf || *n == 0)
        .collect();
    let (f, n) = candidates.choose(rng).unwrap();
    Term::app(
        f.clone(),
        (0..*n)
            .map(|_| gen_term(rng, sig, vars, depth - 1))
            .collect(),
    )
}

pub fn gen_atom(rng: &mut ChaCha8Rng, sig: &Sig, vars: &[&str], depth: usize) -> Atom {
    let (p, n) = sig.preds.choose(rng).unwrap();
    Atom::new(
        p.clone(),
        (0..*n).map(|_| gen_term(rng, sig, vars, depth)).collect(),
    )
}

/// Up to four clauses; overlapping or otherwise invalid clauses are dropped.
pub fn gen_program(rng: &mut ChaCha8Rng) -> (Sig, Program) {
    let sig = gen_sig(rng);
    let n = rng.gen_range(1..=4);
    let mut clauses: Vec<(String, HornClause)> = Vec::new();
    for i in 0..n {
        for _ in 0..8 {
            let head = gen_atom(rng, &sig, &["X", "Y"], 2);
            let hv: Vec<String> = head.vars().iter().map(|s| s.to_string()).collect();
            let hv: Vec<&str> = hv.iter().map(String::as_str).collect();
            let body = (0..rng.gen_range(0..=2))
                .map(|_| gen_atom(rng, &sig, &hv, 2))
                .collect();
            let clause = HornClause::new(body, head);
            let mut candidate = clauses.clone();
            candidate.push((format!("k{}", i + 1), clause));
            if Program::new(candidate.clone()).is_ok() {
                clauses = candidate;
                break;
            }
        }
    }
    let p = Program::new(clauses).unwrap();
    (sig, p)
}

/// A query over the program's signature: ground, with a variable, or a
/// Horn formula with one body atom when `horn` is set.
pub fn gen_query(rng: &mut ChaCha8Rng, sig: &Sig, horn: bool) -> HornClause {
    let vars: &[&str] = if rng.gen_bool(0.5) { &["X"] } else { &[] };
    let head = gen_atom(rng, sig, vars, 2);
    if horn {
        let hv: Vec<String> = head.vars().iter().map(|s| s.to_string()).collect();
        let hv: Vec<&str> = hv.iter().map(String::as_str).collect();
        HornClause::new(vec![gen_atom(rng, sig, &hv, 2)], head)
    } else {
        HornClause::fact(head)
    }
}

pub fn gen_subst(rng: &mut ChaCha8Rng, sig: &Sig, vars: &[&str]) -> Substitution {
    let mut s = Substitution::new();
    for v in vars {
        if rng.gen_bool(0.7) {
            s.bind(*v, gen_term(rng, sig, &["X", "Y", "Z"], 3));
        }
    }
    s
}

pub fn gen_proof(rng: &mut ChaCha8Rng, bound: &mut Vec<String>, depth: usize) -> ProofTerm {
    let consts = ["k1", "k2", "k3"];
    if depth <= 1 || rng.gen_bool(0.3) {
        if !bound.is_empty() && rng.gen_bool(0.5) {
            return ProofTerm::var(bound.choose(rng).unwrap().clone());
        }
        return ProofTerm::konst(*consts.choose(rng).unwrap());
    }
    match rng.gen_range(0..4) {
        0 | 1 => {
            let f = gen_proof(rng, bound, depth - 1);
            let a = gen_proof(rng, bound, depth - 1);
            ProofTerm::apply(f, a)
        }
        2 => {
            let n = rng.gen_range(1..=2);
            let names: Vec<String> = (0..n).map(|i| format!("b{}", bound.len() + i)).collect();
            let len = bound.len();
            bound.extend(names.iter().cloned());
            let body = gen_proof(rng, bound, depth - 1);
            bound.truncate(len);
            ProofTerm::Lambda(names, Box::new(body))
        }
        _ => {
            let name = format!("a{}", bound.len());
            bound.push(name.clone());
            let body = gen_proof(rng, bound, depth - 1);
            bound.pop();
            ProofTerm::nu(name, body)
        }
    }
}
