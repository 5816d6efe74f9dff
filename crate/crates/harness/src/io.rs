//! PACE `.gr` / `.td` and DIMACS `.cnf` readers and writers.
//!
//! Files are 1-indexed; everything in memory is 0-indexed.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use tdkernel::reductions::{CnfFormula, Literal};
use tdkernel::treedecomp::{validate, TreeDecomposition};
use tdkernel::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    At { line: usize, msg: String },
    #[error("{0}")]
    Whole(String),
}

fn at(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::At {
        line,
        msg: msg.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('c') {
            None
        } else {
            Some((i + 1, l.split_whitespace().collect()))
        }
    })
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| at(line, format!("{what} `{tok}` is not a number")))
}

/// Reads a graph. The header is `p tds n m`; `p tw` and `p ds` are accepted
/// as well since other PACE tracks use them.
pub fn parse_gr(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| ParseError::Whole("missing `p tds n m` header".into()))?;
    if header.len() != 4 || header[0] != "p" || !matches!(header[1], "tds" | "tw" | "ds") {
        return Err(at(hl, "malformed header, expected `p tds n m`"));
    }
    let n: usize = number(hl, header[2], "vertex count")?;
    let m: usize = number(hl, header[3], "edge count")?;
    let mut seen = BTreeSet::new();
    let mut edges = Vec::with_capacity(m);
    for (ln, toks) in lines {
        if toks.len() != 2 {
            return Err(at(ln, "edge line must hold exactly two vertices"));
        }
        let u: usize = number(ln, toks[0], "vertex")?;
        let v: usize = number(ln, toks[1], "vertex")?;
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(at(ln, format!("vertex {w} outside 1..={n}")));
            }
        }
        if u == v {
            return Err(at(ln, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(at(ln, format!("duplicate edge {u} {v}")));
        }
        edges.push((u - 1, v - 1));
    }
    if edges.len() != m {
        return Err(at(
            hl,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, &edges).map_err(|e| ParseError::Whole(e.to_string()))
}

/// Writes edges in ascending order, so `write_gr(parse_gr(x))` normalizes `x`.
pub fn write_gr(g: &Graph) -> String {
    let mut out = format!("p tds {} {}\n", g.vertex_count(), g.edge_count());
    let mut edges: Vec<_> = g.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    for (u, v) in edges {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Reads a decomposition of `g` and validates it; a failed validation is
/// reported with the validator's message unchanged.
pub fn parse_td(text: &str, g: &Graph) -> Result<TreeDecomposition, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| ParseError::Whole("missing `s td` header".into()))?;
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(at(
            hl,
            "malformed header, expected `s td <bags> <max bag size> <n>`",
        ));
    }
    let k: usize = number(hl, header[2], "bag count")?;
    let max_bag: usize = number(hl, header[3], "max bag size")?;
    let n: usize = number(hl, header[4], "vertex count")?;
    if n != g.vertex_count() {
        return Err(at(
            hl,
            format!(
                "decomposition is for {n} vertices, graph has {}",
                g.vertex_count()
            ),
        ));
    }
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; k];
    let mut edges = Vec::new();
    for (ln, toks) in lines {
        if toks[0] == "b" {
            let i: usize = number(ln, toks.get(1).copied().unwrap_or(""), "bag id")?;
            if i == 0 || i > k {
                return Err(at(ln, format!("bag id {i} outside 1..={k}")));
            }
            if bags[i - 1].is_some() {
                return Err(at(ln, format!("bag {i} given twice")));
            }
            let mut bag = Vec::new();
            for tok in &toks[2..] {
                let v: usize = number(ln, tok, "vertex")?;
                if v == 0 || v > n {
                    return Err(at(ln, format!("vertex {v} outside 1..={n}")));
                }
                bag.push(v - 1);
            }
            if bag.len() > max_bag {
                return Err(at(
                    ln,
                    format!(
                        "bag {i} has {} vertices, header allows {max_bag}",
                        bag.len()
                    ),
                ));
            }
            bags[i - 1] = Some(bag);
        } else {
            if toks.len() != 2 {
                return Err(at(ln, "tree edge line must hold exactly two bag ids"));
            }
            let a: usize = number(ln, toks[0], "bag id")?;
            let b: usize = number(ln, toks[1], "bag id")?;
            for x in [a, b] {
                if x == 0 || x > k {
                    return Err(at(ln, format!("bag id {x} outside 1..={k}")));
                }
            }
            edges.push((a - 1, b - 1));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| ParseError::Whole(format!("bag {} is missing", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let td = TreeDecomposition::new(bags, edges);
    validate(g, &td).map_err(|v| ParseError::Whole(v.to_string()))?;
    Ok(td)
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let max_bag = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.node_count(), max_bag, n);
    for (i, bag) in td.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in td.tree_edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Reads `p cnf n m` followed by zero-terminated clauses (which may span lines).
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;
    for (ln, toks) in content_lines(text) {
        last_line = ln;
        if toks[0] == "p" {
            if header.is_some() {
                return Err(at(ln, "second header"));
            }
            if toks.len() != 4 || toks[1] != "cnf" {
                return Err(at(ln, "malformed header, expected `p cnf n m`"));
            }
            header = Some((
                number(ln, toks[2], "variable count")?,
                number(ln, toks[3], "clause count")?,
            ));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(at(ln, "clause before the `p cnf` header"));
        };
        for tok in toks {
            if tok == "%" {
                break;
            }
            let lit: i64 = number(ln, tok, "literal")?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(at(ln, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() as usize > n {
                return Err(at(ln, format!("literal {lit} outside 1..={n}")));
            }
            current.push(Literal::from_dimacs(lit).expect("non-zero literal"));
        }
    }
    let (n, m) = header.ok_or_else(|| ParseError::Whole("missing `p cnf n m` header".into()))?;
    if !current.is_empty() {
        return Err(at(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(ParseError::Whole(format!(
            "header announces {m} clauses, found {}",
            clauses.len()
        )));
    }
    CnfFormula::new(n, clauses).map_err(|e| ParseError::Whole(e.to_string()))
}

pub fn write_dimacs_cnf(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.variable_count(), f.clauses().len());
    for clause in f.clauses() {
        for lit in clause {
            let v = lit.var as i64 + 1;
            write!(out, "{} ", if lit.positive { v } else { -v }).unwrap();
        }
        out.push_str("0\n");
    }
    out
}
