use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ledger::{read_ledger, MalformedLine};
use super::record::Verdict;
use crate::error::Result;
use crate::graph::{blow_up, canonical_form, SimpleGraph};
use crate::witness::paper_g1;

/// The graphs the published search left undecided: the rook's graph on 9
/// vertices and three 10-vertex graphs.
pub fn known_survivors() -> Vec<(&'static str, SimpleGraph)> {
    let c5 = SimpleGraph::cycle(5).expect("5 vertices");
    let mut g3 = SimpleGraph::from_edges(10, &[(0, 1), (1, 3), (3, 5), (5, 4), (4, 2), (2, 0)]).expect("10 vertices");
    for a in 0..6 {
        for b in 6..10 {
            g3.add_edge(a, b);
        }
    }
    let mut g4 = SimpleGraph::empty(10).expect("10 vertices");
    for a in 0..5 {
        for b in 0..5 {
            if a != b {
                g4.add_edge(a, 5 + b);
            }
        }
    }
    vec![
        ("G1", paper_g1()),
        ("G2", blow_up(&c5, 2).expect("10 vertices")),
        ("G3", g3),
        ("G4", g4),
    ]
}

/// Undecided graphs of one order set against the published survivors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorCheck {
    pub n: usize,
    pub expected: Vec<String>,
    /// Undecided keys, with the survivor name when recognised.
    pub found: Vec<(String, Option<String>)>,
}

impl SurvivorCheck {
    pub fn matches(&self) -> bool {
        let mut names: Vec<&str> = self.found.iter().filter_map(|(_, n)| n.as_deref()).collect();
        names.sort_unstable();
        self.found.iter().all(|(_, n)| n.is_some()) && names == self.expected.iter().map(String::as_str).collect::<Vec<_>>()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub records: usize,
    pub by_n: BTreeMap<usize, BTreeMap<Verdict, usize>>,
    pub by_stage: BTreeMap<String, usize>,
    pub undecided: Vec<String>,
    pub survivors: Vec<SurvivorCheck>,
    pub corrupt: Vec<MalformedLine>,
}

impl Report {
    pub fn count(&self, v: Verdict) -> usize {
        self.by_n.values().map(|m| m.get(&v).copied().unwrap_or(0)).sum()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "records: {}", self.records);
        let _ = write!(s, "{:>4}", "n");
        for v in Verdict::ALL {
            let _ = write!(s, " {:>20}", v.as_str());
        }
        s.push('\n');
        for (n, counts) in &self.by_n {
            let _ = write!(s, "{n:>4}");
            for v in Verdict::ALL {
                let _ = write!(s, " {:>20}", counts.get(&v).copied().unwrap_or(0));
            }
            s.push('\n');
        }
        s.push_str("deciding stage:\n");
        for (stage, c) in &self.by_stage {
            let _ = writeln!(s, "  {stage:<16} {c}");
        }
        let _ = writeln!(s, "undecided: {}", self.undecided.len());
        for k in &self.undecided {
            let _ = writeln!(s, "  {k}");
        }
        for c in &self.survivors {
            let found: Vec<String> = c
                .found
                .iter()
                .map(|(k, name)| name.clone().unwrap_or_else(|| k.clone()))
                .collect();
            let _ = writeln!(
                s,
                "survivors n={}: expected [{}], found [{}] ({})",
                c.n,
                c.expected.join(", "),
                found.join(", "),
                if c.matches() { "match" } else { "differs" }
            );
        }
        if !self.corrupt.is_empty() {
            let _ = writeln!(s, "corrupt lines: {}", self.corrupt.len());
            for m in &self.corrupt {
                let _ = writeln!(s, "  line {}: {}", m.line, m.message);
            }
        }
        s
    }

    /// One JSON object per line: a `summary` line, then one line per
    /// undecided graph and per corrupt ledger line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        let summary = serde_json::json!({
            "type": "summary",
            "records": self.records,
            "by_n": self.by_n,
            "by_stage": self.by_stage,
            "survivors": self.survivors,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        for k in &self.undecided {
            out.push_str(&serde_json::json!({ "type": "undecided", "key": k }).to_string());
            out.push('\n');
        }
        for m in &self.corrupt {
            out.push_str(&serde_json::json!({ "type": "corrupt", "line": m.line, "message": m.message }).to_string());
            out.push('\n');
        }
        out
    }
}

/// Summarises a ledger. Corrupt lines are listed rather than fatal.
pub fn report(path: &Path) -> Result<Report> {
    let contents = read_ledger(path)?;
    let known: Vec<(String, usize, &str)> = known_survivors()
        .into_iter()
        .map(|(name, g)| (canonical_form(&g).graph6, g.n(), name))
        .collect();
    let mut r = Report {
        records: contents.records.len(),
        corrupt: contents.corrupt,
        ..Report::default()
    };
    for (_, rec) in &contents.records {
        *r.by_n.entry(rec.n).or_default().entry(rec.verdict).or_default() += 1;
        let stage = rec.stage.map_or("none", |s| s.as_str()).to_string();
        *r.by_stage.entry(stage).or_default() += 1;
        if rec.verdict == Verdict::Undecided {
            r.undecided.push(rec.key.clone());
        }
    }
    for &n in r.by_n.keys() {
        let expected: Vec<String> = known.iter().filter(|k| k.1 == n).map(|k| k.2.to_string()).collect();
        let found = contents
            .records
            .iter()
            .filter(|(_, rec)| rec.n == n && rec.verdict == Verdict::Undecided)
            .map(|(_, rec)| {
                let name = known.iter().find(|k| k.0 == rec.key).map(|k| k.2.to_string());
                (rec.key.clone(), name)
            })
            .collect();
        r.survivors.push(SurvivorCheck { n, expected, found });
    }
    Ok(r)
}
