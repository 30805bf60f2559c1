//! The GCT text format:
//!
//! ```text
//! # comments start with '#'
//! rank 3
//! pairs 1
//! edge 0 1 1
//! edge 1 1 1
//! edge 2 1 1
//! ```

use super::{ColoredGraph, Edge};
use crate::error::{Error, Result};

pub fn parse_gct(text: &str) -> Result<ColoredGraph> {
    let mut rank = None;
    let mut pairs = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| Error::Parse { line: line_no, msg };
        let mut toks = line.split_whitespace();
        let key = toks.next().unwrap_or_default();
        let nums: Vec<usize> = toks
            .map(|t| t.parse::<usize>().map_err(|_| parse_err(format!("expected a non-negative integer, found {t:?}"))))
            .collect::<Result<_>>()?;
        match (key, rank, pairs) {
            ("rank", None, None) if nums.len() == 1 => rank = Some(nums[0]),
            ("pairs", Some(_), None) if nums.len() == 1 => pairs = Some(nums[0]),
            ("edge", Some(_), Some(_)) if nums.len() == 3 => edges.push(Edge::new(nums[0], nums[1], nums[2])),
            ("rank", ..) | ("pairs", ..) | ("edge", ..) => {
                return Err(parse_err(format!(
                    "unexpected {key:?} line (header is `rank K` then `pairs N`, then `edge C W B` lines)"
                )))
            }
            _ => return Err(parse_err(format!("unknown directive {key:?}"))),
        }
    }
    let (Some(rank), Some(pairs)) = (rank, pairs) else {
        return Err(Error::Parse { line: 0, msg: "missing `rank` or `pairs` header".into() });
    };
    ColoredGraph::validate(rank, pairs, &edges)
}

/// Serialize with edges ordered by (color, white); LF line endings.
pub fn to_gct(g: &ColoredGraph) -> String {
    let mut s = format!("rank {}\npairs {}\n", g.rank(), g.pairs());
    for e in g.edges() {
        s.push_str(&format!("edge {} {} {}\n", e.color, e.white, e.black));
    }
    s
}
