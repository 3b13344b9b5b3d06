//! Line-oriented text formats shared by the command line and the web demo.
//!
//! Structure files:
//!
//! ```text
//! # comment
//! base: a b c
//! rel R/2: (a,b) (b,c)
//! ```
//!
//! Tables are rendered with a tab-separated header of column names in
//! enumeration order followed by one tab-separated line per row. The empty
//! table is the single line `EMPTY schema=*` and `{<>}` is the single line
//! `()`.

use std::fmt::Write as _;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::mapping::{Decomposition, Mapping};
use crate::table::{Base, Structure, Table, Value};
use crate::var::{parse_var_list, Variable, VarSet};

pub const EMPTY_MARKER: &str = "EMPTY schema=*";
pub const UNIT_MARKER: &str = "()";

fn valid_value(tok: &str) -> bool {
    !tok.is_empty() && !tok.chars().any(|c| c.is_whitespace() || "(),:#/".contains(c))
}

/// Parses a structure file. `base:` must come before any `rel` line.
pub fn parse_structure(src: &str) -> Result<Structure> {
    let mut structure: Option<Structure> = None;
    let mut offset = 0;
    for raw in src.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let line = raw.split('#').next().unwrap_or("");
        let content = line.trim();
        if content.is_empty() {
            continue;
        }
        let at = |sub: &str| line_start + (sub.as_ptr() as usize - raw.as_ptr() as usize);
        if let Some(rest) = content.strip_prefix("base:") {
            if structure.is_some() {
                return Err(Error::parse(src, at(content), "base declared twice"));
            }
            let mut elems = Vec::new();
            for tok in rest.split_whitespace() {
                if !valid_value(tok) {
                    return Err(Error::parse(src, at(tok), format!("invalid value `{tok}`")));
                }
                elems.push(tok);
            }
            structure = Some(Structure::new(Base::new(elems)));
        } else if let Some(rest) = content.strip_prefix("rel ") {
            let Some(s) = structure.as_mut() else {
                return Err(Error::parse(src, at(content), "relation declared before the base"));
            };
            let (head, body) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(src, at(rest), "expected `rel NAME/ARITY: tuples`"))?;
            let (name, arity) = head
                .trim()
                .split_once('/')
                .ok_or_else(|| Error::parse(src, at(head), "expected `NAME/ARITY`"))?;
            let arity: usize =
                arity.trim().parse().map_err(|_| Error::parse(src, at(arity), format!("invalid arity `{arity}`")))?;
            let tuples = parse_tuples(body).map_err(|(sub_off, msg)| Error::parse(src, at(body) + sub_off, msg))?;
            s.add_relation(name.trim(), arity, tuples)
                .map_err(|e| Error::parse(src, at(content), e.to_string()))?;
        } else {
            return Err(Error::parse(src, at(content), "expected `base:` or `rel` line"));
        }
    }
    structure.ok_or_else(|| Error::parse(src, src.len(), "missing `base:` line"))
}

fn parse_tuples(body: &str) -> std::result::Result<Vec<Vec<&str>>, (usize, String)> {
    let mut tuples = Vec::new();
    let mut rest = body;
    loop {
        let trimmed = rest.trim_start();
        let off = body.len() - trimmed.len();
        if trimmed.is_empty() {
            return Ok(tuples);
        }
        if !trimmed.starts_with('(') {
            return Err((off, "expected `(`".into()));
        }
        let close = trimmed.find(')').ok_or((off, "unclosed tuple".to_owned()))?;
        let inner = &trimmed[1..close];
        let tuple: Vec<&str> = if inner.trim().is_empty() { Vec::new() } else { inner.split(',').map(str::trim).collect() };
        if let Some(bad) = tuple.iter().find(|v| !valid_value(v)) {
            return Err((off, format!("invalid value `{bad}` in tuple")));
        }
        tuples.push(tuple);
        rest = &trimmed[close + 1..];
    }
}

/// Machine format: tab-separated header and rows.
pub fn render_tsv(t: &Table) -> String {
    match t {
        Table::Empty => format!("{EMPTY_MARKER}\n"),
        Table::NonEmpty(body) if body.columns().is_empty() => format!("{UNIT_MARKER}\n"),
        Table::NonEmpty(body) => {
            let mut out = String::new();
            let header: Vec<String> = body.columns().iter().map(ToString::to_string).collect();
            out.push_str(&header.join("\t"));
            out.push('\n');
            for row in body.raw_rows() {
                let vals: Vec<&str> = row.iter().map(Value::as_str).collect();
                out.push_str(&vals.join("\t"));
                out.push('\n');
            }
            out
        }
    }
}

/// Human format: aligned columns under a rule, with a row count.
pub fn render_pretty(t: &Table) -> String {
    match t {
        Table::Empty => format!("{EMPTY_MARKER}\n"),
        Table::NonEmpty(body) if body.columns().is_empty() => format!("{UNIT_MARKER}\n(1 row)\n"),
        Table::NonEmpty(body) => {
            let header: Vec<String> = body.columns().iter().map(ToString::to_string).collect();
            let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for row in body.raw_rows() {
                for (w, v) in widths.iter_mut().zip(row) {
                    *w = (*w).max(v.as_str().chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join(" | ").trim_end().to_owned()
            };
            let mut out = String::new();
            let _ = writeln!(out, "{}", line(header.iter().map(String::as_str).collect()));
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            let _ = writeln!(out, "{}", rule.join("-+-"));
            for row in body.raw_rows() {
                let _ = writeln!(out, "{}", line(row.iter().map(Value::as_str).collect()));
            }
            let n = body.len();
            let _ = writeln!(out, "({n} row{})", if n == 1 { "" } else { "s" });
            out
        }
    }
}

/// Inverse of [`render_tsv`].
pub fn parse_tsv(src: &str) -> Result<Table> {
    let mut lines = src.lines();
    let header = lines.next().ok_or_else(|| Error::parse(src, 0, "empty table text"))?;
    if header == EMPTY_MARKER || header == UNIT_MARKER {
        if let Some(extra) = lines.find(|l| !l.is_empty()) {
            let off = extra.as_ptr() as usize - src.as_ptr() as usize;
            return Err(Error::parse(src, off, "unexpected line after table marker"));
        }
        return Ok(if header == EMPTY_MARKER { Table::Empty } else { Table::unit() });
    }
    let columns: Vec<Variable> = header
        .split('\t')
        .map(|name| Variable::named(name).map_err(|e| Error::parse(src, 0, e.to_string())))
        .collect::<Result<_>>()?;
    let schema: VarSet = columns.iter().copied().collect();
    if schema.len() != columns.len() || columns.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::parse(src, 0, "header must list distinct variables in enumeration order"));
    }
    let mut rows = Vec::new();
    for line in lines.filter(|l| !l.is_empty()) {
        let row: Vec<&str> = line.split('\t').collect();
        if row.len() != columns.len() || !row.iter().all(|v| valid_value(v)) {
            let off = line.as_ptr() as usize - src.as_ptr() as usize;
            return Err(Error::parse(src, off, format!("row does not fit the {}-column header", columns.len())));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(src, src.len(), "a table with a header needs at least one row"));
    }
    Table::from_rows(&schema, rows)
}

/// Parses `x->y` pairs separated by commas into a map `dom -> cod`.
pub fn parse_mapping(pairs: &str, dom: &str, cod: &str) -> Result<Mapping> {
    let dom = parse_var_list(dom)?;
    let cod = parse_var_list(cod)?;
    let mut graph = BTreeMap::new();
    for pair in pairs.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (x, y) = pair
            .split_once("->")
            .ok_or_else(|| Error::Mapping(format!("expected `x->y`, found `{pair}`")))?;
        let (x, y) = (Variable::named(x.trim())?, Variable::named(y.trim())?);
        if graph.insert(x, y).is_some_and(|prev| prev != y) {
            return Err(Error::Mapping(format!("{x} is mapped twice")));
        }
    }
    Mapping::new(&dom, cod, graph)
}

/// The factorization `λ = ι∘ξ∘δ`, one map per line, followed by the
/// recomposition check.
pub fn render_decomposition(lambda: &Mapping, d: &Decomposition) -> String {
    let check = match d.recompose() {
        Ok(back) if back == *lambda => "verified: ι∘ξ∘δ = λ".to_owned(),
        Ok(back) => format!("MISMATCH: ι∘ξ∘δ = {back}"),
        Err(e) => format!("MISMATCH: {e}"),
    };
    format!(
        "λ = {lambda}\nδ = {}  (folding)\nξ = {}  (bijection)\nι = {}  (inclusion)\n{check}\n",
        d.folding, d.bijection, d.inclusion
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# sample\nbase: a b c\nrel R/2: (a,b) (b, c)\n\nrel P/1: (a)   # trailing\nrel N/1:\n";

    #[test]
    fn parses_structure_files() {
        let s = parse_structure(SAMPLE).unwrap();
        assert_eq!(s.base(), &Base::from_letters("abc"));
        let r = s.relation("R").unwrap();
        assert_eq!(r.arity, 2);
        assert_eq!(r.tuples.len(), 2);
        assert!(r.tuples.contains(&vec![Value::new("b"), Value::new("c")]));
        assert!(s.relation("N").unwrap().tuples.is_empty());
    }

    #[test]
    fn structure_errors() {
        let err = parse_structure("rel R/1: (a)\nbase: a").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse_structure("base: a\nrel R/2: (a,z)").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("not in the base"));
        let err = parse_structure("base: a\nrel R/1: (a) (a,a)").unwrap_err();
        assert!(err.to_string().contains("length 2"), "{err}");
        let err = parse_structure("base: a\nrel R/x: (a)").unwrap_err();
        assert!(err.to_string().contains("invalid arity"), "{err}");
        let err = parse_structure("base: a\nrel R/1: (a").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 10, .. }), "{err}");
        assert!(parse_structure("# nothing\n").is_err());
        assert!(parse_structure("base: a\nbase: b").is_err());
        assert!(parse_structure("bogus line").is_err());
    }

    #[test]
    fn renders_markers() {
        assert_eq!(render_tsv(&Table::Empty), "EMPTY schema=*\n");
        assert_eq!(render_tsv(&Table::unit()), "()\n");
        assert_eq!(parse_tsv("EMPTY schema=*\n").unwrap(), Table::Empty);
        assert_eq!(parse_tsv("()\n").unwrap(), Table::unit());
    }

    #[test]
    fn tsv_round_trip() {
        let schema: VarSet = [Variable::x(1), Variable::x(3)].into();
        let t = Table::from_rows(&schema, [["b", "a"], ["a", "c"]]).unwrap();
        let text = render_tsv(&t);
        assert_eq!(text, "x1\tx3\na\tc\nb\ta\n");
        assert_eq!(parse_tsv(&text).unwrap(), t);
        assert!(parse_tsv("x3\tx1\na\tb\n").is_err());
        assert!(parse_tsv("x1\n").is_err());
        assert!(parse_tsv("x1\na\tb\n").is_err());
    }

    #[test]
    fn mapping_text() {
        let m = parse_mapping("x1->y1, x2->y1", "x1 x2", "y1").unwrap();
        let d = m.decompose();
        let text = render_decomposition(&m, &d);
        assert!(text.contains("δ = x1->x1,x2->x1: {x1,x2} -> {x1}"), "{text}");
        assert!(text.contains("ξ = x1->y1: {x1} -> {y1}"), "{text}");
        assert!(text.ends_with("verified: ι∘ξ∘δ = λ\n"), "{text}");
        assert!(parse_mapping("x1->y1", "x1 x2", "y1").is_err());
        assert!(parse_mapping("x1->y1,x1->y2", "x1", "y1,y2").is_err());
        assert!(parse_mapping("x1=y1", "x1", "y1").is_err());
        assert!(parse_mapping("", "", "").is_ok());
    }

    #[test]
    fn pretty_output() {
        let schema: VarSet = [Variable::x(1), Variable::x(10)].into();
        let t = Table::from_rows(&schema, [["alpha", "b"]]).unwrap();
        assert_eq!(render_pretty(&t), "x1    | x10\n------+----\nalpha | b\n(1 row)\n");
    }
}
