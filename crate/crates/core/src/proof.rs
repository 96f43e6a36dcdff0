//! Proof terms: `E ::= K | U | E E | λU.E | νU.E`.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ProofTerm {
    /// A clause symbol κ naming an axiom.
    Const(String),
    /// A proof variable bound by λ or ν, or declared in the environment.
    Var(String),
    Apply(Box<ProofTerm>, Box<ProofTerm>),
    /// Multi-ary abstraction `λβ1..βn. e`; the binder list is nonempty.
    Lambda(Vec<String>, Box<ProofTerm>),
    Nu(String, Box<ProofTerm>),
}

impl ProofTerm {
    pub fn konst(name: impl Into<String>) -> Self {
        ProofTerm::Const(name.into())
    }

    pub fn var(name: impl Into<String>) -> Self {
        ProofTerm::Var(name.into())
    }

    pub fn apply(f: ProofTerm, arg: ProofTerm) -> Self {
        ProofTerm::Apply(Box::new(f), Box::new(arg))
    }

    /// `head a1 .. an`, left-associated.
    pub fn apply_all(head: ProofTerm, args: impl IntoIterator<Item = ProofTerm>) -> Self {
        args.into_iter().fold(head, ProofTerm::apply)
    }

    /// `λ binders. body`; an empty binder list returns `body` unchanged.
    pub fn lambda(binders: Vec<String>, body: ProofTerm) -> Self {
        if binders.is_empty() {
            body
        } else {
            ProofTerm::Lambda(binders, Box::new(body))
        }
    }

    pub fn nu(binder: impl Into<String>, body: ProofTerm) -> Self {
        ProofTerm::Nu(binder.into(), Box::new(body))
    }

    /// Splits `h a1 .. an` into `(h, [a1, .., an])`; `h` is not an application.
    pub fn spine(&self) -> (&ProofTerm, Vec<&ProofTerm>) {
        let mut args = Vec::new();
        let mut head = self;
        while let ProofTerm::Apply(f, a) = head {
            args.push(a.as_ref());
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// Strips leading λ binders (possibly several nested abstractions).
    pub fn strip_lambdas(&self) -> (Vec<&str>, &ProofTerm) {
        let mut binders = Vec::new();
        let mut body = self;
        while let ProofTerm::Lambda(bs, b) = body {
            binders.extend(bs.iter().map(String::as_str));
            body = b;
        }
        (binders, body)
    }

    /// Strips leading ν binders.
    pub fn strip_nus(&self) -> (Vec<&str>, &ProofTerm) {
        let mut binders = Vec::new();
        let mut body = self;
        while let ProofTerm::Nu(a, b) = body {
            binders.push(a.as_str());
            body = b;
        }
        (binders, body)
    }

    pub fn size(&self) -> usize {
        match self {
            ProofTerm::Const(_) | ProofTerm::Var(_) => 1,
            ProofTerm::Apply(f, a) => 1 + f.size() + a.size(),
            ProofTerm::Lambda(_, b) | ProofTerm::Nu(_, b) => 1 + b.size(),
        }
    }

    /// Head normal form: `λᾱ. κ ē` with zero or more binders and arguments.
    pub fn is_hnf(&self) -> bool {
        let (_, body) = self.strip_lambdas();
        matches!(body.spine().0, ProofTerm::Const(_))
    }

    pub fn free_proof_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            ProofTerm::Const(_) => {}
            ProofTerm::Var(v) => {
                if !bound.contains(&v.as_str()) {
                    out.insert(v.clone());
                }
            }
            ProofTerm::Apply(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            ProofTerm::Lambda(bs, b) => {
                let n = bound.len();
                bound.extend(bs.iter().map(String::as_str));
                b.collect_free(bound, out);
                bound.truncate(n);
            }
            ProofTerm::Nu(x, b) => {
                bound.push(x);
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_proof_vars().is_empty()
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let ProofTerm::Const(k) = t {
                out.insert(k.clone());
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&ProofTerm)) {
        f(self);
        match self {
            ProofTerm::Const(_) | ProofTerm::Var(_) => {}
            ProofTerm::Apply(g, a) => {
                g.visit(f);
                a.visit(f);
            }
            ProofTerm::Lambda(_, b) | ProofTerm::Nu(_, b) => b.visit(f),
        }
    }

    /// Every ν-bound variable occurs in its body only as (part of) an
    /// argument of a κ-headed application.
    pub fn is_guarded(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |t| {
            if let ProofTerm::Nu(a, b) = t {
                ok &= occurrences_guarded(b, a, false);
            }
        });
        ok
    }

    /// Alpha-equivalence.
    pub fn alpha_eq(&self, other: &ProofTerm) -> bool {
        alpha(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// Renames bound variables deterministically: ν binders become
    /// `a, a2, a3, ..` and λ binders `b, b2, ..` in left-to-right order,
    /// skipping names that occur free.
    pub fn canonicalize(&self) -> ProofTerm {
        let free = self.free_proof_vars();
        let mut st = Canon {
            free,
            nu: 0,
            lam: 0,
        };
        st.go(self, &mut Vec::new())
    }

    /// Concrete syntax using `ν`, `λ` instead of `nu`, `\ ->`.
    pub fn to_unicode(&self) -> String {
        let mut s = String::new();
        write_term(&mut s, self, true).unwrap();
        s
    }
}

fn occurrences_guarded(t: &ProofTerm, a: &str, guarded: bool) -> bool {
    match t {
        ProofTerm::Const(_) => true,
        ProofTerm::Var(v) => v != a || guarded,
        ProofTerm::Apply(..) => {
            let (head, args) = t.spine();
            let inner = guarded || matches!(head, ProofTerm::Const(_));
            occurrences_guarded(head, a, guarded)
                && args.iter().all(|x| occurrences_guarded(x, a, inner))
        }
        ProofTerm::Lambda(bs, b) => bs.iter().any(|x| x == a) || occurrences_guarded(b, a, guarded),
        ProofTerm::Nu(x, b) => x == a || occurrences_guarded(b, a, guarded),
    }
}

fn alpha<'a>(
    x: &'a ProofTerm,
    y: &'a ProofTerm,
    bx: &mut Vec<&'a str>,
    by: &mut Vec<&'a str>,
) -> bool {
    match (x, y) {
        (ProofTerm::Const(a), ProofTerm::Const(b)) => a == b,
        (ProofTerm::Var(a), ProofTerm::Var(b)) => {
            let ia = bx.iter().rposition(|v| v == a);
            let ib = by.iter().rposition(|v| v == b);
            match (ia, ib) {
                (Some(i), Some(j)) => i == j,
                (None, None) => a == b,
                _ => false,
            }
        }
        (ProofTerm::Apply(f, a), ProofTerm::Apply(g, b)) => {
            alpha(f, g, bx, by) && alpha(a, b, bx, by)
        }
        (ProofTerm::Lambda(xs, b1), ProofTerm::Lambda(ys, b2)) => {
            if xs.len() != ys.len() {
                return false;
            }
            let (n, m) = (bx.len(), by.len());
            bx.extend(xs.iter().map(String::as_str));
            by.extend(ys.iter().map(String::as_str));
            let r = alpha(b1, b2, bx, by);
            bx.truncate(n);
            by.truncate(m);
            r
        }
        (ProofTerm::Nu(a, b1), ProofTerm::Nu(b, b2)) => {
            bx.push(a);
            by.push(b);
            let r = alpha(b1, b2, bx, by);
            bx.pop();
            by.pop();
            r
        }
        _ => false,
    }
}

struct Canon {
    free: BTreeSet<String>,
    nu: usize,
    lam: usize,
}

impl Canon {
    fn fresh(&mut self, nu: bool) -> String {
        loop {
            let (stem, n) = if nu {
                self.nu += 1;
                ("a", self.nu)
            } else {
                self.lam += 1;
                ("b", self.lam)
            };
            let name = if n == 1 {
                stem.to_string()
            } else {
                format!("{stem}{n}")
            };
            if !self.free.contains(&name) {
                return name;
            }
        }
    }

    fn go(&mut self, t: &ProofTerm, env: &mut Vec<(String, String)>) -> ProofTerm {
        match t {
            ProofTerm::Const(_) => t.clone(),
            ProofTerm::Var(v) => match env.iter().rev().find(|(old, _)| old == v) {
                Some((_, new)) => ProofTerm::Var(new.clone()),
                None => t.clone(),
            },
            ProofTerm::Apply(f, a) => {
                let f = self.go(f, env);
                ProofTerm::apply(f, self.go(a, env))
            }
            ProofTerm::Lambda(bs, b) => {
                let n = env.len();
                let mut fresh = Vec::new();
                for x in bs {
                    let y = self.fresh(false);
                    env.push((x.clone(), y.clone()));
                    fresh.push(y);
                }
                let body = self.go(b, env);
                env.truncate(n);
                ProofTerm::Lambda(fresh, Box::new(body))
            }
            ProofTerm::Nu(x, b) => {
                let y = self.fresh(true);
                env.push((x.clone(), y.clone()));
                let body = self.go(b, env);
                env.pop();
                ProofTerm::Nu(y, Box::new(body))
            }
        }
    }
}

fn write_term(out: &mut impl fmt::Write, t: &ProofTerm, unicode: bool) -> fmt::Result {
    match t {
        ProofTerm::Const(n) | ProofTerm::Var(n) => out.write_str(n),
        ProofTerm::Apply(f, a) => {
            if matches!(**f, ProofTerm::Lambda(..) | ProofTerm::Nu(..)) {
                out.write_str("(")?;
                write_term(out, f, unicode)?;
                out.write_str(")")?;
            } else {
                write_term(out, f, unicode)?;
            }
            out.write_str(" ")?;
            if matches!(**a, ProofTerm::Const(_) | ProofTerm::Var(_)) {
                write_term(out, a, unicode)
            } else {
                out.write_str("(")?;
                write_term(out, a, unicode)?;
                out.write_str(")")
            }
        }
        ProofTerm::Lambda(bs, b) => {
            if unicode {
                write!(out, "λ{}. ", bs.join(" "))?;
            } else {
                write!(out, "\\{} -> ", bs.join(" "))?;
            }
            write_term(out, b, unicode)
        }
        ProofTerm::Nu(x, b) => {
            if unicode {
                write!(out, "ν{x}. ")?;
            } else {
                write!(out, "nu {x}. ")?;
            }
            write_term(out, b, unicode)
        }
    }
}

impl fmt::Display for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, false)
    }
}
