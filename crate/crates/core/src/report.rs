//! Machine-readable run reports. Field names are stable; see
//! `docs/report-schema.md`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::calculus::{render_formula, Derivation};
use crate::term::Atom;

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub args: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub program: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivation: Option<DerivationNode>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lemmas: Vec<LemmaReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<VerdictReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DerivationNode {
    pub rule: String,
    pub evidence: String,
    pub formula: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entry: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matcher: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub introduced: Vec<Hypothesis>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<DerivationNode>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub formula: String,
}

impl DerivationNode {
    pub fn from_derivation(d: &Derivation, unicode: bool) -> Self {
        DerivationNode {
            rule: d.rule.name().to_string(),
            evidence: if unicode {
                d.evidence.to_unicode()
            } else {
                d.evidence.to_string()
            },
            formula: render_formula(&d.formula, unicode),
            entry: d.entry.clone(),
            matcher: d.matcher.as_ref().map(|m| {
                m.iter()
                    .map(|(v, t)| (v.to_string(), t.to_string()))
                    .collect()
            }),
            introduced: d
                .introduced
                .iter()
                .map(|(n, f)| Hypothesis {
                    name: n.clone(),
                    formula: render_formula(f, unicode),
                })
                .collect(),
            children: d
                .children
                .iter()
                .map(|c| Self::from_derivation(c, unicode))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LemmaReport {
    pub formula: String,
    pub evidence: String,
    pub proposed: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ModelReport {
    pub semantics: String,
    pub policy: String,
    pub base_depth: usize,
    pub base_size: usize,
    pub converged: bool,
    pub atoms: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CertificateReport {
    pub target: String,
    /// `ground` or `pattern`.
    pub kind: String,
    pub support: Vec<String>,
    pub search_depth: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerdictReport {
    pub formula: String,
    pub semantics: String,
    pub verdict: String,
    pub ground_depth: usize,
    pub base_depth: usize,
}

pub fn atom_strings<'a>(atoms: impl IntoIterator<Item = &'a Atom>) -> Vec<String> {
    atoms.into_iter().map(Atom::to_string).collect()
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Human-readable rendering.
    pub fn to_text(&self, derivation_text: Option<&str>) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: &str| {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(v);
            out.push('\n');
        };
        line("outcome", &self.outcome);
        if let Some(p) = &self.proof {
            line("proof", p);
        }
        if let Some(r) = &self.reason {
            line("reason", r);
        }
        for l in &self.lemmas {
            let tag = if l.proposed {
                "proposed lemma"
            } else {
                "lemma"
            };
            line(tag, &format!("{} : {}", l.evidence, l.formula));
        }
        if let Some(m) = &self.model {
            line(
                "model",
                &format!(
                    "{} fixed point, {} policy, base depth {} ({} atoms){}",
                    m.semantics,
                    m.policy,
                    m.base_depth,
                    m.base_size,
                    if m.converged { "" } else { ", NOT converged" }
                ),
            );
            line("atoms", &format!("{{{}}}", m.atoms.join(", ")));
        }
        if let Some(c) = &self.certificate {
            line(
                &format!("{} certificate", c.kind),
                &format!("{{{}}}", c.support.join(", ")),
            );
        }
        for v in &self.verdicts {
            line(
                "verdict",
                &format!(
                    "{} : {} ({} semantics, groundings to depth {}, base depth {})",
                    v.formula, v.verdict, v.semantics, v.ground_depth, v.base_depth
                ),
            );
        }
        for n in &self.notes {
            line("note", n);
        }
        if let Some(d) = derivation_text {
            out.push_str("derivation:\n");
            for l in d.lines() {
                out.push_str("  ");
                out.push_str(l);
                out.push('\n');
            }
        }
        if !self.trace.is_empty() {
            out.push_str("trace:\n");
            for l in &self.trace {
                out.push_str("  ");
                out.push_str(l);
                out.push('\n');
            }
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                out.push_str(&format!("time {k}: {v:.3} ms\n"));
            }
        }
        out
    }
}
