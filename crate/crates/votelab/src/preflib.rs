//! Preflib strict-order-complete (SOC) election files and corpus-level
//! axiom evaluation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::json;

use crate::axioms;
use crate::rules::{RuleSpec, TieBreakOrder};
use crate::sampling::EstimatedAxiom;
use crate::{Error, Profile, Ranking, Result};

/// One parsed SOC election.
#[derive(Debug, Clone)]
pub struct PreflibRecord {
    pub source: Option<PathBuf>,
    pub title: String,
    pub m: usize,
    pub voters: u64,
    pub profile: Profile,
    /// Original alternative id and display name per normalized id `1..=m`.
    pub alternatives: Vec<(u64, String)>,
}

/// Parses SOC content in the current (`# KEY: value` metadata plus
/// `count: a,b,c` rows), legacy (`m` / id lines / `n,sum,unique` header /
/// `count,a,b,c` rows), or bare (`count: a,b,c` rows only) layout.
///
/// Rankings must be complete and strict; ties (`{..}`) or missing
/// alternatives are rejected with their line number, and a declared voter
/// count that disagrees with the row sum is a validation error.
pub fn parse_soc(content: &str) -> Result<PreflibRecord> {
    let lines: Vec<(usize, &str)> = content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    if lines.is_empty() {
        return Err(Error::Parse("empty file".into()));
    }
    if lines[0].1.starts_with('#') || lines[0].1.contains(':') {
        parse_modern(&lines)
    } else {
        parse_legacy(&lines)
    }
}

struct RawRow {
    lineno: usize,
    count: u64,
    ids: Vec<u64>,
}

fn parse_ranking_ids(lineno: usize, s: &str) -> Result<Vec<u64>> {
    if s.contains('{') {
        return Err(Error::Parse(format!(
            "line {lineno}: tied ranking segments are not strict orders"
        )));
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("line {lineno}: bad alternative id {p:?}")))
        })
        .collect()
}

fn parse_modern(lines: &[(usize, &str)]) -> Result<PreflibRecord> {
    let mut title = String::new();
    let mut declared_m: Option<usize> = None;
    let mut declared_n: Option<u64> = None;
    let mut declared_unique: Option<u64> = None;
    let mut names: BTreeMap<u64, String> = BTreeMap::new();
    let mut name_order: Vec<u64> = Vec::new();
    let mut rows: Vec<RawRow> = Vec::new();

    for &(lineno, line) in lines {
        if let Some(meta) = line.strip_prefix('#') {
            let Some((key, value)) = meta.split_once(':') else {
                continue;
            };
            let key = key.trim().to_ascii_uppercase();
            let value = value.trim();
            match key.as_str() {
                "TITLE" => title = value.to_string(),
                "NUMBER ALTERNATIVES" => {
                    declared_m = Some(value.parse().map_err(|_| {
                        Error::Parse(format!("line {lineno}: bad alternative count"))
                    })?)
                }
                "NUMBER VOTERS" => {
                    declared_n = Some(value.parse().map_err(|_| {
                        Error::Parse(format!("line {lineno}: bad voter count"))
                    })?)
                }
                "NUMBER UNIQUE ORDERS" => {
                    declared_unique = Some(value.parse().map_err(|_| {
                        Error::Parse(format!("line {lineno}: bad unique-order count"))
                    })?)
                }
                other => {
                    if let Some(id_str) = other.strip_prefix("ALTERNATIVE NAME") {
                        let id: u64 = id_str.trim().parse().map_err(|_| {
                            Error::Parse(format!("line {lineno}: bad alternative id"))
                        })?;
                        if names.insert(id, value.to_string()).is_none() {
                            name_order.push(id);
                        }
                    }
                }
            }
            continue;
        }
        let Some((count_str, rank_str)) = line.split_once(':') else {
            return Err(Error::Parse(format!(
                "line {lineno}: expected `count: a,b,c`"
            )));
        };
        let count: u64 = count_str.trim().parse().map_err(|_| {
            Error::Parse(format!("line {lineno}: bad vote count {count_str:?}"))
        })?;
        rows.push(RawRow {
            lineno,
            count,
            ids: parse_ranking_ids(lineno, rank_str)?,
        });
    }
    assemble(
        title,
        declared_m,
        declared_n,
        declared_unique,
        name_order
            .into_iter()
            .map(|id| (id, names[&id].clone()))
            .collect(),
        rows,
    )
}

fn parse_legacy(lines: &[(usize, &str)]) -> Result<PreflibRecord> {
    let (first_lineno, first) = lines[0];
    let m: usize = first.parse().map_err(|_| {
        Error::Parse(format!(
            "line {first_lineno}: expected the alternative count"
        ))
    })?;
    if lines.len() < m + 2 {
        return Err(Error::Parse("truncated legacy header".into()));
    }
    let mut alternatives = Vec::with_capacity(m);
    for &(lineno, line) in &lines[1..=m] {
        let (id_str, name) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("line {lineno}: expected `id,name`")))?;
        let id: u64 = id_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("line {lineno}: bad id")))?;
        alternatives.push((id, name.trim().to_string()));
    }
    let (hdr_lineno, hdr) = lines[m + 1];
    let parts: Vec<&str> = hdr.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "line {hdr_lineno}: expected `voters,sum,unique`"
        )));
    }
    let voters: u64 = parts[0]
        .parse()
        .map_err(|_| Error::Parse(format!("line {hdr_lineno}: bad voter count")))?;
    let unique: u64 = parts[2]
        .parse()
        .map_err(|_| Error::Parse(format!("line {hdr_lineno}: bad unique count")))?;
    let mut rows = Vec::new();
    for &(lineno, line) in &lines[m + 2..] {
        let mut ids = parse_ranking_ids(lineno, line)?;
        if ids.len() < 2 {
            return Err(Error::Parse(format!("line {lineno}: truncated row")));
        }
        let count = ids.remove(0);
        rows.push(RawRow { lineno, count, ids });
    }
    assemble(
        String::new(),
        Some(m),
        Some(voters),
        Some(unique),
        alternatives,
        rows,
    )
}

fn assemble(
    title: String,
    declared_m: Option<usize>,
    declared_n: Option<u64>,
    declared_unique: Option<u64>,
    mut alternatives: Vec<(u64, String)>,
    rows: Vec<RawRow>,
) -> Result<PreflibRecord> {
    if rows.is_empty() {
        return Err(Error::Parse("no ranking rows".into()));
    }
    // Alternative ids normalized to 1..m, preserving file order: declared
    // name order when present, otherwise order of first appearance.
    if alternatives.is_empty() {
        for row in &rows {
            for &id in &row.ids {
                if !alternatives.iter().any(|(x, _)| *x == id) {
                    alternatives.push((id, format!("alternative {id}")));
                }
            }
        }
    }
    let m = alternatives.len();
    if let Some(dm) = declared_m {
        if dm != m {
            return Err(Error::Parse(format!(
                "declared {dm} alternatives but {m} are named"
            )));
        }
    }
    if m < 2 {
        return Err(Error::Parse("need at least two alternatives".into()));
    }
    let relabel: BTreeMap<u64, u8> = alternatives
        .iter()
        .enumerate()
        .map(|(i, (id, _))| (*id, i as u8 + 1))
        .collect();

    let mut profile = Profile::new(m);
    let mut total = 0u64;
    for row in &rows {
        if row.ids.len() != m {
            return Err(Error::Parse(format!(
                "line {}: ranking lists {} of {m} alternatives (incomplete orders are rejected)",
                row.lineno,
                row.ids.len()
            )));
        }
        let mut order = Vec::with_capacity(m);
        for id in &row.ids {
            let mapped = relabel.get(id).ok_or_else(|| {
                Error::Parse(format!("line {}: unknown alternative {id}", row.lineno))
            })?;
            order.push(*mapped);
        }
        let ranking = Ranking::new(order).map_err(|_| {
            Error::Parse(format!(
                "line {}: ranking repeats an alternative",
                row.lineno
            ))
        })?;
        profile.add_int(ranking, row.count)?;
        total += row.count;
    }
    if let Some(n) = declared_n {
        if n != total {
            return Err(Error::Parse(format!(
                "declared {n} voters but rows sum to {total}"
            )));
        }
    }
    if let Some(u) = declared_unique {
        let distinct = profile.support().count() as u64;
        if u != distinct && u != rows.len() as u64 {
            return Err(Error::Parse(format!(
                "declared {u} unique orders but found {distinct}"
            )));
        }
    }
    Ok(PreflibRecord {
        source: None,
        title,
        m,
        voters: total,
        profile,
        alternatives,
    })
}

/// Serializes a record in the current SOC layout.
pub fn to_soc(record: &PreflibRecord) -> String {
    let mut out = String::new();
    out.push_str(&format!("# TITLE: {}\n", record.title));
    out.push_str(&format!("# NUMBER ALTERNATIVES: {}\n", record.m));
    out.push_str(&format!("# NUMBER VOTERS: {}\n", record.voters));
    out.push_str(&format!(
        "# NUMBER UNIQUE ORDERS: {}\n",
        record.profile.support().count()
    ));
    for (i, (_, name)) in record.alternatives.iter().enumerate() {
        out.push_str(&format!("# ALTERNATIVE NAME {}: {}\n", i + 1, name));
    }
    for (r, w) in record.profile.support() {
        let ids: Vec<String> = r.order().iter().map(|a| a.to_string()).collect();
        out.push_str(&format!("{}: {}\n", crate::profile::fmt_rat(w), ids.join(",")));
    }
    out
}

/// Per-file verdict for one (rule, axiom) pair. `None` means the evaluation
/// was skipped (parallel-universe search beyond the guard).
pub type Verdict = Option<bool>;

#[derive(Debug, Clone)]
pub struct CorpusRow {
    pub rule: String,
    pub axiom: EstimatedAxiom,
    pub satisfied: u64,
    pub evaluated: u64,
    pub skipped: u64,
}

impl CorpusRow {
    /// Percentage of satisfied files among evaluated ones, one decimal.
    pub fn percent(&self) -> f64 {
        if self.evaluated == 0 {
            return 0.0;
        }
        (self.satisfied as f64 * 1000.0 / self.evaluated as f64).round() / 10.0
    }
}

#[derive(Debug, Clone)]
pub struct CorpusReport {
    pub rows: Vec<CorpusRow>,
    /// JSON lines, one per (file, rule, axiom) evaluation.
    pub audit: Vec<String>,
    pub files: Vec<PathBuf>,
    pub failures: Vec<(PathBuf, String)>,
}

fn evaluate_record(
    record: &PreflibRecord,
    rule: &RuleSpec,
    axiom: EstimatedAxiom,
    tiebreak: &TieBreakOrder,
    put_bound: usize,
) -> Result<Verdict> {
    let m = record.m;
    let tb = if tiebreak.m() == m {
        tiebreak.clone()
    } else {
        TieBreakOrder::identity(m)
    };
    match axiom {
        EstimatedAxiom::CondorcetCriterion => {
            // Condorcet-consistent rules hold by construction; deciding via
            // the majority structure avoids any parallel-universe search.
            if rule.is_condorcet_consistent() {
                return Ok(Some(true));
            }
            if rule.is_mrse() && m > put_bound {
                return Ok(None);
            }
            Ok(Some(axioms::sat_cc(rule, &record.profile)?.satisfied))
        }
        EstimatedAxiom::Participation => Ok(Some(
            axioms::sat_par(rule, &record.profile, &tb)?.satisfied,
        )),
    }
}

/// Evaluates every `.soc` file under `dir` against the rule/axiom grid.
/// Unreadable files are reported in `failures` and skipped.
pub fn evaluate_corpus(
    dir: &Path,
    rules: &[RuleSpec],
    axioms_list: &[EstimatedAxiom],
    tiebreak: &TieBreakOrder,
    put_bound: usize,
) -> Result<CorpusReport> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().map(|e| e == "soc").unwrap_or(false))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::Parse(format!(
            "no .soc files under {}",
            dir.display()
        )));
    }
    evaluate_files(&paths, rules, axioms_list, tiebreak, put_bound)
}

pub fn evaluate_files(
    paths: &[PathBuf],
    rules: &[RuleSpec],
    axioms_list: &[EstimatedAxiom],
    tiebreak: &TieBreakOrder,
    put_bound: usize,
) -> Result<CorpusReport> {
    let mut rows: Vec<CorpusRow> = Vec::new();
    for rule in rules {
        for &axiom in axioms_list {
            rows.push(CorpusRow {
                rule: rule.to_string(),
                axiom,
                satisfied: 0,
                evaluated: 0,
                skipped: 0,
            });
        }
    }
    // Per-file evaluation is independent; the aggregation below is a pure
    // fold over the results in path order.
    let per_file: Vec<(PathBuf, std::result::Result<(PreflibRecord, Vec<Verdict>), String>)> =
        paths
            .par_iter()
            .map(|path| {
                let outcome = (|| -> std::result::Result<(PreflibRecord, Vec<Verdict>), String> {
                    let content =
                        std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                    let mut record = parse_soc(&content).map_err(|e| e.to_string())?;
                    record.source = Some(path.clone());
                    let mut verdicts = Vec::new();
                    for rule in rules {
                        for &axiom in axioms_list {
                            let v = evaluate_record(&record, rule, axiom, tiebreak, put_bound)
                                .map_err(|e| e.to_string())?;
                            verdicts.push(v);
                        }
                    }
                    Ok((record, verdicts))
                })();
                (path.clone(), outcome)
            })
            .collect();

    let mut audit = Vec::new();
    let mut failures = Vec::new();
    let mut files = Vec::new();
    for (path, outcome) in per_file {
        let (record, verdicts) = match outcome {
            Ok(v) => v,
            Err(e) => {
                failures.push((path, e));
                continue;
            }
        };
        files.push(path.clone());
        let mut row_idx = 0usize;
        for rule in rules {
            for &axiom in axioms_list {
                let verdict = verdicts[row_idx];
                let row = &mut rows[row_idx];
                match verdict {
                    Some(true) => {
                        row.satisfied += 1;
                        row.evaluated += 1;
                    }
                    Some(false) => {
                        row.evaluated += 1;
                    }
                    None => {
                        row.skipped += 1;
                    }
                }
                audit.push(
                    json!({
                        "file": path.file_name().and_then(|s| s.to_str()).unwrap_or(""),
                        "rule": rule.to_string(),
                        "axiom": axiom.to_string(),
                        "m": record.m,
                        "n": record.voters,
                        "satisfied": verdict,
                    })
                    .to_string(),
                );
                row_idx += 1;
            }
        }
    }
    Ok(CorpusReport {
        rows,
        audit,
        files,
        failures,
    })
}

/// CSV with one row per rule and one column per axiom, matching the
/// published table layout.
pub fn report_csv(report: &CorpusReport) -> String {
    let mut axioms_seen: Vec<EstimatedAxiom> = Vec::new();
    for row in &report.rows {
        if !axioms_seen.contains(&row.axiom) {
            axioms_seen.push(row.axiom);
        }
    }
    let mut out = String::from("rule");
    for a in &axioms_seen {
        out.push_str(&format!(",{a}_percent,{a}_satisfied,{a}_evaluated,{a}_skipped"));
    }
    out.push('\n');
    let mut rules_seen: Vec<&str> = Vec::new();
    for row in &report.rows {
        if !rules_seen.contains(&row.rule.as_str()) {
            rules_seen.push(&row.rule);
        }
    }
    for rule in rules_seen {
        out.push_str(rule);
        for a in &axioms_seen {
            let row = report
                .rows
                .iter()
                .find(|r| r.rule == rule && r.axiom == *a)
                .unwrap();
            out.push_str(&format!(
                ",{:.1},{},{},{}",
                row.percent(),
                row.satisfied,
                row.evaluated,
                row.skipped
            ));
        }
        out.push('\n');
    }
    out
}
