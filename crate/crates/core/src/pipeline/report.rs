use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::json;

use super::ClassificationRecord;
use crate::fpgroup::format_invariant;

/// Compares names with embedded numbers numerically, so `7_2 < 7_10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let o = match (x, y) {
            ((true, p), (true, q)) => {
                let (p, q) = (p.trim_start_matches('0'), q.trim_start_matches('0'));
                p.len().cmp(&q.len()).then_with(|| p.cmp(q))
            }
            ((_, p), (_, q)) => p.cmp(q),
        };
        if o != Ordering::Equal {
            return o;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

/// One JSON object per computed `(knot, n)` pair, in processing order.
pub fn jsonl_report(r: &ClassificationRecord) -> String {
    let mut out = String::new();
    for h in &r.history {
        let line = json!({
            "knot": h.knot,
            "n": h.n,
            "invariant": h.invariant,
            "display": format_invariant(&h.invariant),
        });
        writeln!(out, "{line}").unwrap();
    }
    out
}

/// `knot,index,invariant` rows in natural name order; unresolved knots have
/// an empty index.
pub fn csv_report(r: &ClassificationRecord) -> String {
    let mut rows: Vec<(&str, String, String)> = r
        .classified
        .iter()
        .map(|(k, (n, v))| (k.as_str(), n.to_string(), format_invariant(v)))
        .collect();
    for g in &r.unresolved {
        for k in &g.knots {
            rows.push((k.as_str(), String::new(), format_invariant(&g.invariant)));
        }
    }
    rows.sort_by(|a, b| natural_cmp(a.0, b.0));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["knot", "index", "invariant"]).unwrap();
    for (k, n, v) in rows {
        w.write_record([k, n.as_str(), v.as_str()]).unwrap();
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 fields")
}

/// Knot counts by family (the name up to the first `_`, usually the crossing
/// number) and classifying index, then `N` and any unresolved groups.
pub fn summary_table(r: &ClassificationRecord) -> String {
    let family = |k: &str| k.split('_').next().unwrap_or(k).to_string();
    let mut grid: BTreeMap<String, BTreeMap<usize, usize>> = BTreeMap::new();
    for (k, &(n, _)) in &r.classified {
        *grid.entry(family(k)).or_default().entry(n).or_default() += 1;
    }
    for g in &r.unresolved {
        for k in &g.knots {
            grid.entry(family(k)).or_default();
        }
    }
    let mut families: Vec<&String> = grid.keys().collect();
    families.sort_by(|a, b| natural_cmp(a, b));
    let levels: Vec<usize> = {
        let mut v: Vec<usize> = r.classified.values().map(|&(n, _)| n).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let unresolved_in = |f: &str| r.unresolved.iter().flat_map(|g| &g.knots).filter(|k| family(k) == f).count();
    let mut out = String::new();
    write!(out, "{:<8}", "family").unwrap();
    for n in &levels {
        write!(out, " {:>6}", format!("n={n}")).unwrap();
    }
    writeln!(out, " {:>10}", "unresolved").unwrap();
    for f in families {
        write!(out, "{f:<8}").unwrap();
        for n in &levels {
            write!(out, " {:>6}", grid[f].get(n).copied().unwrap_or(0)).unwrap();
        }
        writeln!(out, " {:>10}", unresolved_in(f)).unwrap();
    }
    let total = r.classified.len() + r.unresolved.iter().map(|g| g.knots.len()).sum::<usize>();
    writeln!(out, "classified {} of {}, N = {}", r.classified.len(), total, r.index).unwrap();
    for g in &r.unresolved {
        writeln!(out, "unresolved at n = {}: {} share {}", g.n, g.knots.join(" "), format_invariant(&g.invariant)).unwrap();
    }
    out
}
