//! Pattern and family strings accepted on the command line.

use minorlab_core::constructions::{
    catalog_entry, pattern_graph, split_graph, split_matching_graph, PatternSpec,
};
use minorlab_core::{EdgeList, Graph};

/// Parses `Kr-`, `Kr=`, `Kr`, `K5-`, `paths:2,2,3`, `edges:(0,1),(1,2)` or `F1`..`F19`.
/// `r` fills in the order where the string leaves it open.
pub fn parse_pattern(s: &str, r: Option<usize>) -> Result<PatternSpec, String> {
    let s = s.trim();
    let need_r = || r.ok_or_else(|| format!("pattern {s:?} needs --r"));
    if let Some(rest) = s.strip_prefix("paths:") {
        let ks = parse_list(rest)?;
        return PatternSpec::paths(need_r()?, ks).map_err(|e| e.to_string());
    }
    if let Some(rest) = s.strip_prefix("edges:") {
        let m = parse_edges(rest)?;
        return PatternSpec::edges(need_r()?, &m).map_err(|e| e.to_string());
    }
    if let Some(rest) = s.strip_prefix('K').or_else(|| s.strip_prefix('k')) {
        let (order, tail) = split_order(rest);
        let order = match order {
            "r" | "R" => need_r()?,
            digits => {
                let v: usize = digits.parse().map_err(|_| format!("bad pattern {s:?}"))?;
                if let Some(r) = r {
                    if r != v {
                        return Err(format!("pattern {s:?} has order {v} but --r is {r}"));
                    }
                }
                v
            }
        };
        let spec = match tail {
            "" => PatternSpec::clique(order),
            "-" => PatternSpec::kr_minus(order),
            "=" => PatternSpec::kr_double_minus(order),
            _ => return Err(format!("bad pattern {s:?}; expected a suffix of '-', '=' or nothing")),
        };
        return spec.map_err(|e| e.to_string());
    }
    if s.starts_with(['F', 'f']) && s[1..].chars().all(|c| c.is_ascii_digit()) && s.len() > 1 {
        let entry = catalog_entry(s).map_err(|e| e.to_string())?;
        if let Some(r) = r {
            if r != entry.spec.r {
                return Err(format!("{} lives in K{} but --r is {r}", entry.name, entry.spec.r));
            }
        }
        return Ok(entry.spec);
    }
    Err(format!(
        "bad pattern {s:?}; expected Kr-, Kr=, Kr, paths:k1,k2,..., edges:(i,j),... or F1..F19"
    ))
}

fn split_order(rest: &str) -> (&str, &str) {
    let end = rest
        .find(|c: char| !(c.is_ascii_alphanumeric()))
        .unwrap_or(rest.len());
    (&rest[..end], &rest[end..])
}

pub fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse().map_err(|_| format!("bad number {p:?} in {s:?}")))
        .collect()
}

/// `(0,1),(1,2)` into an edge list.
pub fn parse_edges(s: &str) -> Result<EdgeList, String> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pairs = Vec::new();
    for chunk in cleaned.split(')') {
        let chunk = chunk.trim_start_matches(',');
        if chunk.is_empty() {
            continue;
        }
        let inner = chunk
            .strip_prefix('(')
            .ok_or_else(|| format!("bad edge list {s:?}"))?;
        let ends = parse_list(inner)?;
        if ends.len() != 2 {
            return Err(format!("bad edge ({inner}) in {s:?}"));
        }
        pairs.push((ends[0], ends[1]));
    }
    EdgeList::from_pairs(pairs).map_err(|e| e.to_string())
}

/// Graph for `construct --family`.
pub fn build_family(
    family: &str,
    n: Option<usize>,
    r: Option<usize>,
    t: Option<usize>,
    paths: Option<&str>,
    edges: Option<&str>,
) -> Result<Graph, String> {
    let family = family.trim();
    if let Some((name, n, t)) = parse_split_call(family)? {
        return split_family(name, n, t);
    }
    match family {
        "S" | "F" => {
            let n = n.ok_or("--n is required for split families")?;
            let t = match (t, r) {
                (Some(t), _) => t,
                (None, Some(r)) if r >= 3 => r - 3,
                (None, Some(r)) => return Err(format!("--r must be at least 3, got {r}")),
                (None, None) => return Err("split families need --r or --t".into()),
            };
            split_family(family, n, t)
        }
        "pattern" => {
            let spec = match (paths, edges) {
                (Some(p), None) => parse_pattern(&format!("paths:{p}"), r)?,
                (None, Some(e)) => parse_pattern(&format!("edges:{e}"), r)?,
                _ => return Err("--family pattern needs exactly one of --paths or --edges".into()),
            };
            pattern_graph(&spec).map_err(|e| e.to_string())
        }
        other => {
            let spec = parse_pattern(other, r)?;
            pattern_graph(&spec).map_err(|e| e.to_string())
        }
    }
}

/// `S(10,2)` or `F(9,2)`.
fn parse_split_call(s: &str) -> Result<Option<(&str, usize, usize)>, String> {
    let Some(open) = s.find('(') else { return Ok(None) };
    let name = &s[..open];
    if name != "S" && name != "F" {
        return Ok(None);
    }
    let inner = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| format!("bad family {s:?}"))?;
    let args = parse_list(inner)?;
    match args[..] {
        [n, t] => Ok(Some((name, n, t))),
        _ => Err(format!("bad family {s:?}; expected {name}(n,t)")),
    }
}

fn split_family(name: &str, n: usize, t: usize) -> Result<Graph, String> {
    let g = if name == "S" { split_graph(n, t) } else { split_matching_graph(n, t) };
    g.map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use minorlab_core::constructions::Deletion;

    #[test]
    fn grammar() {
        assert_eq!(parse_pattern("Kr-", Some(5)).unwrap(), PatternSpec::kr_minus(5).unwrap());
        assert_eq!(parse_pattern("K4=", None).unwrap(), PatternSpec::kr_double_minus(4).unwrap());
        assert_eq!(parse_pattern("Kr", Some(4)).unwrap(), PatternSpec::clique(4).unwrap());
        assert_eq!(
            parse_pattern("paths:2,2,3", Some(8)).unwrap().deletion,
            Deletion::PathFamily(vec![2, 2, 3])
        );
        let e = parse_pattern("edges:(0,1), (1,2)", Some(5)).unwrap();
        assert_eq!(e.deletion, Deletion::ExplicitEdges(vec![(0, 1), (1, 2)]));
        assert_eq!(parse_pattern("F3", None).unwrap().r, 4);
        assert!(parse_pattern("Kr-", None).is_err());
        assert!(parse_pattern("K4-", Some(5)).is_err());
        assert!(parse_pattern("F20", None).is_err());
        assert!(parse_pattern("G7", Some(4)).is_err());
    }

    #[test]
    fn families() {
        let s = build_family("S", Some(10), Some(5), None, None, None).unwrap();
        assert_eq!(s, split_graph(10, 2).unwrap());
        assert_eq!(build_family("F(9,2)", None, None, None, None, None).unwrap(), split_matching_graph(9, 2).unwrap());
        assert_eq!(build_family("Kr-", None, Some(4), None, None, None).unwrap().edge_count(), 5);
        assert_eq!(
            build_family("pattern", None, Some(5), None, Some("2,2"), None).unwrap().edge_count(),
            8
        );
        assert!(build_family("S", None, Some(5), None, None, None).is_err());
    }
}
