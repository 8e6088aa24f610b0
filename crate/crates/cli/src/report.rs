//! Text and JSON renderings. Each command builds one serializable report and
//! derives its text from it, so both outputs carry the same facts.

use std::fmt::Write as _;

use jsl_core::enumerate::{Claim, EnumerationReport};
use jsl_core::omod::{Fact, OModWitness, ProofLabeling};
use jsl_core::{ConstructionTrace, EmbeddedSub, JoinSemilattice, StrongReading};
use serde::Serialize;

fn yn(b: bool) -> &'static str {
    if b {
        "Y"
    } else {
        "N"
    }
}

#[derive(Debug, Serialize)]
pub struct Quintuple {
    pub a: String,
    pub b: String,
    pub c: String,
    pub x: String,
    pub y: String,
}

impl Quintuple {
    fn new(s: &JoinSemilattice, [a, b, c, x, y]: [usize; 5]) -> Self {
        let n = |i: usize| s.name(i).to_string();
        Quintuple {
            a: n(a),
            b: n(b),
            c: n(c),
            x: n(x),
            y: n(y),
        }
    }

    pub fn definition_form(s: &JoinSemilattice, w: &OModWitness) -> Self {
        Self::new(s, [w.a, w.b, w.c, w.x, w.y])
    }

    pub fn proof_form(s: &JoinSemilattice, p: &ProofLabeling) -> Self {
        Self::new(s, [p.a, p.b, p.c, p.x, p.y])
    }

    fn render(&self) -> String {
        format!(
            "a={} b={} c={} x={} y={}",
            self.a, self.b, self.c, self.x, self.y
        )
    }
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub omodular: bool,
    pub witness_definition_form: Option<Quintuple>,
    pub witness_proof_form: Option<Quintuple>,
}

impl CheckReport {
    pub fn text(&self) -> String {
        match (&self.witness_definition_form, &self.witness_proof_form) {
            (Some(d), Some(p)) => format!(
                "not o-modular\nwitness(def): {}\nwitness(proof): {}\n",
                d.render(),
                p.render()
            ),
            _ => "o-modular\n".into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SubReport {
    pub template: String,
    pub members: Vec<String>,
    pub roles: Vec<(String, String)>,
    pub semi_strong: bool,
    pub strict_strong: bool,
    pub lu_strong: bool,
}

impl SubReport {
    pub fn new(s: &JoinSemilattice, e: &EmbeddedSub) -> Self {
        SubReport {
            template: e.template.name().into(),
            members: e.members.iter().map(|&m| s.name(m).to_string()).collect(),
            roles: e
                .template
                .roles()
                .iter()
                .zip(&e.roles)
                .map(|(r, &el)| (r.to_string(), s.name(el).to_string()))
                .collect(),
            semi_strong: e.strength.semi_strong,
            strict_strong: e.strength.strong_strict,
            lu_strong: e.strength.strong_lu,
        }
    }

    pub fn line(&self) -> String {
        let roles: Vec<String> = self.roles.iter().map(|(r, e)| format!("{r}={e}")).collect();
        format!(
            "{} {{{}}} roles[{}] semi-strong={} strict-strong={} lu-strong={}",
            self.template,
            self.members.join(","),
            roles.join(" "),
            yn(self.semi_strong),
            yn(self.strict_strong),
            yn(self.lu_strong)
        )
    }
}

#[derive(Debug, Serialize)]
pub struct ForbiddenReport {
    pub strength: StrongReading,
    pub embeddings: Vec<SubReport>,
    /// A semi-strong M2 or an M4 strong under `strength`.
    pub forbidden_present: bool,
}

impl ForbiddenReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        if self.embeddings.is_empty() {
            out.push_str("no M2 or M4 embeddings\n");
        }
        for e in &self.embeddings {
            out.push_str(&e.line());
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "semi-strong M2 or {}-strong M4: {}",
            self.strength.name(),
            if self.forbidden_present { "present" } else { "absent" }
        );
        out
    }
}

#[derive(Debug, Serialize)]
pub struct FactLine {
    pub id: String,
    pub statement: String,
    pub holds: bool,
}

impl From<&Fact> for FactLine {
    fn from(f: &Fact) -> Self {
        FactLine {
            id: f.id.clone(),
            statement: f.statement.clone(),
            holds: f.holds,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConstructReport {
    pub omodular: bool,
    pub witness_definition_form: Option<Quintuple>,
    pub witness_proof_form: Option<Quintuple>,
    pub facts: Vec<FactLine>,
    pub t2: Option<SubReport>,
    pub lbc: Option<Vec<String>>,
    pub v: Option<String>,
    pub t4: Option<SubReport>,
    pub nset: Option<Vec<String>>,
    pub w: Option<String>,
    pub t5: Option<SubReport>,
    /// `M2` when `L(b, c)` is empty, `M4` otherwise.
    pub branch: Option<String>,
}

impl ConstructReport {
    pub fn omodular() -> Self {
        ConstructReport {
            omodular: true,
            witness_definition_form: None,
            witness_proof_form: None,
            facts: Vec::new(),
            t2: None,
            lbc: None,
            v: None,
            t4: None,
            nset: None,
            w: None,
            t5: None,
            branch: None,
        }
    }

    pub fn new(s: &JoinSemilattice, t: &ConstructionTrace) -> Self {
        let names = |v: &[usize]| v.iter().map(|&i| s.name(i).to_string()).collect::<Vec<_>>();
        ConstructReport {
            omodular: false,
            witness_definition_form: Some(Quintuple::definition_form(s, &t.witness)),
            witness_proof_form: Some(Quintuple::proof_form(s, &t.labels)),
            facts: t.facts.iter().map(FactLine::from).collect(),
            t2: Some(SubReport::new(s, &t.t2)),
            lbc: Some(names(&t.lbc)),
            v: t.v.map(|v| s.name(v).to_string()),
            t4: t.t4.as_ref().map(|e| SubReport::new(s, e)),
            nset: t.nset.as_deref().map(names),
            w: t.w.map(|w| s.name(w).to_string()),
            t5: t.t5.as_ref().map(|e| SubReport::new(s, e)),
            branch: Some(if t.lbc.is_empty() { "M2" } else { "M4" }.into()),
        }
    }

    pub fn text(&self) -> String {
        if self.omodular {
            return "o-modular\n".into();
        }
        let mut out = String::new();
        if let Some(d) = &self.witness_definition_form {
            let _ = writeln!(out, "witness(def): {}", d.render());
        }
        if let Some(p) = &self.witness_proof_form {
            let _ = writeln!(out, "witness(proof): {}", p.render());
        }
        for f in &self.facts {
            let _ = writeln!(
                out,
                "{:<16} {:<48} {}",
                f.id,
                f.statement,
                if f.holds { "PASS" } else { "FAIL" }
            );
        }
        if let Some(t2) = &self.t2 {
            let _ = writeln!(out, "T2: {}", t2.line());
        }
        if let Some(lbc) = &self.lbc {
            let _ = writeln!(out, "L(b,c) = {{{}}}", lbc.join(","));
        }
        if let Some(v) = &self.v {
            let _ = writeln!(out, "v = {v}");
        }
        if let Some(t4) = &self.t4 {
            let _ = writeln!(out, "T4: {}", t4.line());
        }
        if let Some(nset) = &self.nset {
            let _ = writeln!(out, "n-set = {{{}}}", nset.join(","));
        }
        if let Some(w) = &self.w {
            let _ = writeln!(out, "⋁n = {w}");
        }
        if let Some(t5) = &self.t5 {
            let _ = writeln!(out, "T5: {}", t5.line());
        }
        match (self.branch.as_deref(), &self.t2, &self.t5) {
            (Some("M2"), Some(t2), _) => {
                let _ = writeln!(
                    out,
                    "result: semi-strong M2 {{{}}}",
                    t2.members.join(",")
                );
            }
            (Some("M4"), _, Some(t5)) => {
                let _ = writeln!(
                    out,
                    "result: lu-strong M4 {{{}}} (strict-strong={})",
                    t5.members.join(","),
                    yn(t5.strict_strong)
                );
            }
            _ => {}
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub jsl_count: usize,
}

pub fn census_text(r: &EnumerationReport) -> String {
    let headers = [
        "n",
        "structures",
        "o-modular",
        "non-o-modular",
        "semi-strong M2",
        "semi-strong M4",
        "strict-strong M4",
        "lu-strong M4",
    ];
    let values = [
        r.n,
        r.jsl_count,
        r.omodular_count,
        r.non_omodular_count,
        r.with_semi_strong_m2,
        r.with_semi_strong_m4,
        r.with_strict_strong_m4,
        r.with_lu_strong_m4,
    ];
    let mut head = String::new();
    let mut row = String::new();
    for (h, v) in headers.iter().zip(values) {
        let w = h.len().max(v.to_string().len());
        let _ = write!(head, "{h:>w$}  ");
        let _ = write!(row, "{v:>w$}  ");
    }
    let mut out = format!("{}\n{}\n", head.trim_end(), row.trim_end());
    if r.violations.is_empty() {
        out.push_str("violations: none\n");
    } else {
        let _ = writeln!(out, "violations: {}", r.violations.len());
        for v in &r.violations {
            let asserted = Claim::parse(&v.claim).is_some_and(Claim::is_asserted);
            let tag = if asserted { "" } else { "  (reported only)" };
            let _ = writeln!(out, "  {:<9} {}{tag}", v.claim, v.canonical);
        }
    }
    let _ = writeln!(out, "result: {}", if r.passed() { "PASS" } else { "FAIL" });
    out
}

/// Hasse diagram in DOT, nodes and edges in index order.
pub fn dot(s: &JoinSemilattice, highlight: &[usize]) -> String {
    fn quote(name: &str) -> String {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    }
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    for (i, name) in s.names().iter().enumerate() {
        if highlight.contains(&i) {
            let _ = writeln!(
                out,
                "  {} [style=filled, fillcolor=lightblue, penwidth=2];",
                quote(name)
            );
        } else {
            let _ = writeln!(out, "  {};", quote(name));
        }
    }
    for (lo, hi) in s.poset().covers() {
        let _ = writeln!(out, "  {} -> {};", quote(s.name(lo)), quote(s.name(hi)));
    }
    out.push_str("}\n");
    out
}
