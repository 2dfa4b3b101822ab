use std::collections::{BTreeMap, HashSet};
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::classify::classify;
use super::config::PipelineConfig;
use super::record::{ClassificationRecord, Verdict};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, enumerate_graphs, enumerate_trees, parse_graph6, read_graph6_file, SimpleGraph};

/// Where the pipeline takes its graphs from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSource {
    /// A graph6 file, one graph per line.
    File(PathBuf),
    /// All graphs on `n` vertices.
    AllGraphs(usize),
    /// All trees on `n` vertices.
    Trees(usize),
    Graphs(Vec<SimpleGraph>),
}

impl FromStr for InputSource {
    type Err = Error;

    /// `builtin:nN`, `builtin:treesN`, or a file path.
    fn from_str(s: &str) -> Result<Self> {
        let Some(rest) = s.strip_prefix("builtin:") else {
            return Ok(InputSource::File(PathBuf::from(s)));
        };
        let bad = || Error::InvalidArgument(format!("unknown builtin input {s:?}; use builtin:nN or builtin:treesN"));
        if let Some(n) = rest.strip_prefix("trees") {
            return n.parse().map(InputSource::Trees).map_err(|_| bad());
        }
        if let Some(n) = rest.strip_prefix('n') {
            return n.parse().map(InputSource::AllGraphs).map_err(|_| bad());
        }
        Err(bad())
    }
}

/// An input line that could not be parsed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MalformedLine {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub input_graphs: usize,
    /// Inputs isomorphic to an earlier input or already in the ledger.
    pub skipped: usize,
    pub classified: usize,
    pub malformed: Vec<MalformedLine>,
    pub by_verdict: BTreeMap<Verdict, usize>,
    pub by_stage: BTreeMap<String, usize>,
}

impl Summary {
    pub fn count(&self, v: Verdict) -> usize {
        self.by_verdict.get(&v).copied().unwrap_or(0)
    }
}

/// Records of a ledger file plus any lines that failed to parse.
#[derive(Clone, Debug, Default)]
pub struct LedgerContents {
    pub records: Vec<(usize, ClassificationRecord)>,
    pub corrupt: Vec<MalformedLine>,
}

pub fn read_ledger(path: &Path) -> Result<LedgerContents> {
    let mut out = LedgerContents::default();
    if !path.exists() {
        return Ok(out);
    }
    for (i, line) in BufReader::new(fs::File::open(path)?).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match ClassificationRecord::from_json_line(&line) {
            Ok(r) => out.records.push((i + 1, r)),
            Err(e) => out.corrupt.push(MalformedLine {
                line: i + 1,
                message: e.to_string(),
            }),
        }
    }
    Ok(out)
}

/// Drops a partial last line left by an interrupted write.
fn truncate_partial_tail(path: &Path) -> Result<()> {
    let mut f = OpenOptions::new().read(true).write(true).open(path)?;
    let mut data = Vec::new();
    f.read_to_end(&mut data)?;
    if data.is_empty() || data.ends_with(b"\n") {
        return Ok(());
    }
    let keep = data.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
    f.set_len(keep as u64)?;
    f.seek(SeekFrom::End(0))?;
    Ok(())
}

fn load_inputs(input: &InputSource, malformed: &mut Vec<MalformedLine>) -> Result<Vec<SimpleGraph>> {
    match input {
        InputSource::AllGraphs(n) => enumerate_graphs(*n),
        InputSource::Trees(n) => enumerate_trees(*n),
        InputSource::Graphs(gs) => Ok(gs.clone()),
        InputSource::File(path) => {
            let mut out = Vec::new();
            for (line, parsed) in read_graph6_file(path)? {
                match parsed {
                    Ok(g) => out.push(g),
                    Err(e) => malformed.push(MalformedLine {
                        line,
                        message: e.to_string(),
                    }),
                }
            }
            Ok(out)
        }
    }
}

/// Classifies every input graph not yet in the ledger and appends the new
/// records.
///
/// Inputs are deduplicated up to isomorphism. Work is handed to the pool in
/// chunks and each chunk is written in input order before the next starts,
/// so an interrupted run loses at most one chunk and the file contents do
/// not depend on the worker count.
pub fn run_pipeline(input: &InputSource, cfg: &PipelineConfig, ledger: &Path) -> Result<Summary> {
    cfg.validate()?;
    let mut summary = Summary::default();
    let graphs = load_inputs(input, &mut summary.malformed)?;
    summary.input_graphs = graphs.len();

    if ledger.exists() {
        truncate_partial_tail(ledger)?;
    }
    let mut done: HashSet<String> = read_ledger(ledger)?.records.into_iter().map(|(_, r)| r.key).collect();
    let mut todo = Vec::new();
    for g in graphs {
        let cf = canonical_form(&g);
        if done.insert(cf.graph6) {
            todo.push(cf.graph);
        } else {
            summary.skipped += 1;
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let mut file = OpenOptions::new().create(true).append(true).open(ledger)?;
    for chunk in todo.chunks(32 * cfg.workers) {
        let records: Vec<Result<ClassificationRecord>> =
            pool.install(|| chunk.par_iter().map(|g| classify(g, cfg)).collect());
        let mut text = String::new();
        for r in records {
            let r = r?;
            *summary.by_verdict.entry(r.verdict).or_default() += 1;
            let stage = r.stage.map_or("none", |s| s.as_str()).to_string();
            *summary.by_stage.entry(stage).or_default() += 1;
            summary.classified += 1;
            text.push_str(&r.to_json_line());
            text.push('\n');
        }
        file.write_all(text.as_bytes())?;
        file.flush()?;
        log::info!("{} of {} graphs classified", summary.classified, todo.len());
    }
    Ok(summary)
}

/// Outcome of re-checking a ledger.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerCheck {
    pub records: usize,
    pub failures: Vec<MalformedLine>,
}

impl LedgerCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-verifies the evidence of every record exactly. Unparseable lines and
/// repeated keys count as failures.
pub fn verify_ledger(path: &Path) -> Result<LedgerCheck> {
    if !path.exists() {
        return Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("ledger {} not found", path.display()),
        )));
    }
    let contents = read_ledger(path)?;
    let mut seen = HashSet::new();
    let mut failures: Vec<MalformedLine> = contents.corrupt;
    let results: Vec<(usize, String, Result<()>)> = contents
        .records
        .par_iter()
        .map(|(line, r)| (*line, r.key.clone(), r.verify()))
        .collect();
    for (line, key, outcome) in results {
        if !seen.insert(key.clone()) {
            failures.push(MalformedLine {
                line,
                message: format!("{key}: duplicate key"),
            });
        }
        if let Err(e) = outcome {
            failures.push(MalformedLine {
                line,
                message: format!("{key}: {e}"),
            });
        }
    }
    failures.sort_by_key(|f| f.line);
    Ok(LedgerCheck {
        records: contents.records.len(),
        failures,
    })
}

/// Graph keyed by a canonical graph6 string.
pub fn graph_of(record: &ClassificationRecord) -> Result<SimpleGraph> {
    parse_graph6(&record.key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::config::Stage;

    fn quick() -> PipelineConfig {
        let mut cfg = PipelineConfig::default();
        cfg.minimizer.restarts = 20;
        cfg
    }

    #[test]
    fn parses_sources() {
        assert_eq!("builtin:n5".parse::<InputSource>().unwrap(), InputSource::AllGraphs(5));
        assert_eq!("builtin:trees9".parse::<InputSource>().unwrap(), InputSource::Trees(9));
        assert!("builtin:x".parse::<InputSource>().is_err());
        assert_eq!("a.g6".parse::<InputSource>().unwrap(), InputSource::File("a.g6".into()));
    }

    #[test]
    fn empty_input_gives_empty_summary() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("l.jsonl");
        let s = run_pipeline(&InputSource::Graphs(vec![]), &quick(), &path).unwrap();
        assert_eq!(s, Summary::default());
        assert!(verify_ledger(&path).unwrap().passed());
    }

    #[test]
    fn resume_matches_uninterrupted_run() {
        let dir = tempfile::tempdir().unwrap();
        let all = enumerate_graphs(5).unwrap();
        let full = dir.path().join("full.jsonl");
        run_pipeline(&InputSource::Graphs(all.clone()), &quick(), &full).unwrap();
        let part = dir.path().join("part.jsonl");
        run_pipeline(&InputSource::Graphs(all[..13].to_vec()), &quick(), &part).unwrap();
        let mut text = fs::read_to_string(&part).unwrap();
        text.push_str("{\"key\": \"Dh");
        fs::write(&part, text).unwrap();
        let s = run_pipeline(&InputSource::Graphs(all.clone()), &quick(), &part).unwrap();
        assert_eq!((s.skipped, s.classified), (13, all.len() - 13));
        let a = read_ledger(&full).unwrap().records;
        let b = read_ledger(&part).unwrap().records;
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|((_, x), (_, y))| x.same_content(y)));
        assert!(verify_ledger(&part).unwrap().passed());
    }

    #[test]
    fn worker_count_does_not_change_records() {
        let dir = tempfile::tempdir().unwrap();
        let mut outs = Vec::new();
        for workers in [1, 3] {
            let path = dir.path().join(format!("w{workers}.jsonl"));
            let cfg = PipelineConfig { workers, ..quick() };
            run_pipeline(&InputSource::AllGraphs(5), &cfg, &path).unwrap();
            outs.push(read_ledger(&path).unwrap().records);
        }
        assert!(outs[0].iter().zip(&outs[1]).all(|((_, x), (_, y))| x.same_content(y)));
    }

    #[test]
    fn malformed_input_lines_are_reported() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.g6");
        fs::write(&input, "Bw\n!!bad\nC~\nBw\n").unwrap();
        let path = dir.path().join("l.jsonl");
        let s = run_pipeline(&InputSource::File(input), &quick(), &path).unwrap();
        assert_eq!(s.malformed.len(), 1);
        assert_eq!(s.malformed[0].line, 2);
        assert_eq!((s.input_graphs, s.skipped, s.classified), (3, 1, 2));
    }

    #[test]
    fn tampering_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("l.jsonl");
        let cfg = PipelineConfig {
            stages: vec![Stage::EdgeParity],
            ..quick()
        };
        run_pipeline(&InputSource::Graphs(vec![SimpleGraph::complete(3).unwrap()]), &cfg, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("\"-1\"", "\"1\"");
        fs::write(&path, text).unwrap();
        let check = verify_ledger(&path).unwrap();
        assert!(!check.passed());
        assert!(check.failures[0].message.contains("Bw"));
    }
}
