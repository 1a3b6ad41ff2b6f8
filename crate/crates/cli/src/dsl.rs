//! The definition language: a parser to [`DslDocument`] and a printer whose
//! output parses back to the same document.

use std::collections::HashSet;
use std::fmt;

use plethory_core::expr::Expr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslDocument {
    pub field: String,
    pub items: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Biring(BiringBlock),
    Plethory(PlethoryBlock),
    Ring(RingBlock),
    Task(Task),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Biring,
    Hopf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Coadd,
    Comul,
    CounitAdd,
    CounitMul,
    Antipode,
    Beta,
}

impl MapKind {
    pub const ALL: [MapKind; 6] =
        [MapKind::Coadd, MapKind::Comul, MapKind::CounitAdd, MapKind::CounitMul, MapKind::Antipode, MapKind::Beta];

    pub fn keyword(self) -> &'static str {
        match self {
            MapKind::Coadd => "coadd",
            MapKind::Comul => "comul",
            MapKind::CounitAdd => "counit+",
            MapKind::CounitMul => "counit*",
            MapKind::Antipode => "antipode",
            MapKind::Beta => "beta",
        }
    }

    fn from_keyword(s: &str) -> Option<MapKind> {
        MapKind::ALL.into_iter().find(|k| k.keyword() == s)
    }

    /// Whether a Hopf block (no multiplicative structure) admits the clause.
    pub fn additive(self) -> bool {
        matches!(self, MapKind::Coadd | MapKind::CounitAdd | MapKind::Antipode)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Expr,
    pub rhs: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapClause {
    pub kind: MapKind,
    pub gen: String,
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiringBlock {
    pub kind: BlockKind,
    pub name: String,
    pub gens: Vec<String>,
    pub grading: Option<Vec<u32>>,
    pub rels: Vec<Relation>,
    pub maps: Vec<MapClause>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub left: String,
    pub right: String,
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlethoryBlock {
    pub name: String,
    pub base: String,
    pub circ: Vec<Entry>,
    pub unit: Option<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingBlock {
    pub name: String,
    pub gens: Vec<String>,
    pub rels: Vec<Relation>,
    pub acts: Vec<Entry>,
}

pub const TASKS: [&str; 5] = ["check", "prim", "linearize", "versch", "pi0"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub command: String,
    pub object: String,
    pub degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected {}, found {}", self.line, self.column, self.expected.join(" or "), self.found)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

/// One significant source line: comment stripped, original positions kept.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn column_of(&self, rest: &str) -> usize {
        self.text[..self.text.len() - rest.len()].chars().count() + 1
    }

    fn error(&self, rest: &str, expected: &[&str]) -> ParseError {
        let found = match rest.trim_start().split_whitespace().next() {
            Some(tok) => format!("`{tok}`"),
            None => "end of line".to_string(),
        };
        let rest = rest.trim_start();
        ParseError {
            line: self.number,
            column: self.column_of(rest),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    /// Splits off the first whitespace-delimited word.
    fn word<'b>(&self, rest: &'b str) -> (&'b str, &'b str) {
        let rest = rest.trim_start();
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        (&rest[..end], &rest[end..])
    }

    fn name<'b>(&self, rest: &'b str, what: &str) -> PResult<(&'b str, &'b str)> {
        let (w, tail) = self.word(rest);
        if is_name(w) {
            Ok((w, tail))
        } else {
            Err(self.error(rest, &[what]))
        }
    }

    fn symbol<'b>(&self, rest: &'b str, sym: &str) -> PResult<&'b str> {
        let t = rest.trim_start();
        t.strip_prefix(sym).ok_or_else(|| self.error(rest, &[&format!("`{sym}`")]))
    }

    fn end(&self, rest: &str) -> PResult<()> {
        if rest.trim().is_empty() {
            Ok(())
        } else {
            Err(self.error(rest, &["end of line"]))
        }
    }

    fn expr(&self, rest: &str) -> PResult<Expr> {
        let t = rest.trim_start();
        Expr::parse(t.trim_end()).map_err(|e| {
            let col = self.column_of(t) + t[..e.offset.min(t.len())].chars().count();
            let found = if e.offset >= t.trim_end().len() { "end of line".to_string() } else { e.found.clone() };
            ParseError { line: self.number, column: col, expected: e.expected.clone(), found }
        })
    }

    /// `lhs = rhs` with both sides expressions.
    fn equation(&self, rest: &str) -> PResult<Relation> {
        let Some(eq) = rest.find('=') else {
            let end = &rest[rest.len()..];
            return Err(self.error(end, &["`=`"]));
        };
        Ok(Relation { lhs: self.expr(&rest[..eq])?, rhs: self.expr(&rest[eq + 1..])? })
    }
}

fn is_name(w: &str) -> bool {
    let mut chars = w.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn names_list(line: &Line, rest: &str) -> PResult<Vec<String>> {
    let mut out = Vec::new();
    let mut tail = rest;
    loop {
        let t = tail.trim_start().trim_start_matches(',').trim_start();
        if t.is_empty() {
            break;
        }
        let end = t.find(|c: char| c.is_whitespace() || c == ',').unwrap_or(t.len());
        let w = &t[..end];
        if !is_name(w) {
            return Err(line.error(t, &["generator name"]));
        }
        if out.iter().any(|x: &String| x == w) {
            return Err(line.error(t, &["a new generator name"]));
        }
        out.push(w.to_string());
        tail = &t[end..];
    }
    if out.is_empty() {
        return Err(line.error(rest, &["generator name"]));
    }
    Ok(out)
}

/// Parses a whole document.
pub fn parse_dsl(text: &str) -> PResult<DslDocument> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line { number: i + 1, text: l.split('#').next().unwrap_or("") })
        .filter(|l| !l.text.trim().is_empty())
        .collect();
    let mut it = lines.iter().peekable();
    let Some(first) = it.next() else {
        return Err(ParseError { line: 1, column: 1, expected: vec!["`field`".into()], found: "end of input".into() });
    };
    let (kw, rest) = first.word(first.text);
    if kw != "field" {
        return Err(first.error(first.text, &["`field`"]));
    }
    let field = rest.trim();
    if field.is_empty() {
        return Err(first.error(rest, &["field descriptor"]));
    }
    let mut doc = DslDocument { field: field.to_string(), items: Vec::new() };
    let mut algebras: HashSet<String> = HashSet::new();
    let mut objects: HashSet<String> = HashSet::new();
    while let Some(line) = it.next() {
        let (kw, rest) = line.word(line.text);
        match kw {
            "biring" | "hopf" | "plethory" | "ring" => {
                let (name, mut rest) = line.name(rest, "block name")?;
                if objects.contains(name) {
                    return Err(line.error(rest_of(line.text, name), &["an undeclared name"]));
                }
                let mut base = None;
                if kw == "plethory" {
                    rest = line.symbol(rest, "on")?;
                    let (b, tail) = line.name(rest, "biring name")?;
                    if !algebras.contains(b) {
                        return Err(line.error(rest, &["a declared biring"]));
                    }
                    base = Some(b.to_string());
                    rest = tail;
                }
                let rest = line.symbol(rest, "{")?;
                line.end(rest)?;
                let mut body = Vec::new();
                loop {
                    let Some(l) = it.next() else {
                        let last = lines.last().unwrap();
                        return Err(ParseError {
                            line: last.number,
                            column: last.text.chars().count() + 1,
                            expected: vec!["`}`".into()],
                            found: "end of input".into(),
                        });
                    };
                    if l.text.trim() == "}" {
                        break;
                    }
                    body.push(l);
                }
                let item = match kw {
                    "plethory" => Item::Plethory(plethory_block(name, base.unwrap(), &body)?),
                    "ring" => Item::Ring(ring_block(name, &body)?),
                    k => {
                        let kind = if k == "hopf" { BlockKind::Hopf } else { BlockKind::Biring };
                        algebras.insert(name.to_string());
                        Item::Biring(biring_block(kind, name, line, &body)?)
                    }
                };
                objects.insert(name.to_string());
                doc.items.push(item);
            }
            "task" => {
                let (cmd, rest) = line.word(rest);
                if !TASKS.contains(&cmd) {
                    return Err(line.error(rest_of(line.text, cmd), &TASKS));
                }
                let (obj, rest) = line.name(rest, "object name")?;
                if !objects.contains(obj) {
                    return Err(line.error(rest_of(line.text, obj), &["a declared object"]));
                }
                let (w, tail) = line.word(rest);
                let degree = match w {
                    "" => None,
                    "degree" => {
                        let (d, after) = line.word(tail);
                        let d = d.parse::<u32>().map_err(|_| line.error(tail, &["degree bound"]))?;
                        line.end(after)?;
                        Some(d)
                    }
                    _ => return Err(line.error(rest, &["`degree`", "end of line"])),
                };
                doc.items.push(Item::Task(Task { command: cmd.to_string(), object: obj.to_string(), degree }));
            }
            _ => return Err(line.error(line.text, &["`biring`", "`hopf`", "`plethory`", "`ring`", "`task`"])),
        }
    }
    Ok(doc)
}

fn rest_of<'a>(text: &'a str, word: &str) -> &'a str {
    let at = text.find(word).unwrap_or(0);
    &text[at..]
}

fn biring_block(kind: BlockKind, name: &str, header: &Line, body: &[&Line]) -> PResult<BiringBlock> {
    let mut b = BiringBlock { kind, name: name.to_string(), gens: Vec::new(), grading: None, rels: Vec::new(), maps: Vec::new() };
    let allowed: Vec<&str> = MapKind::ALL
        .iter()
        .filter(|k| kind == BlockKind::Biring || k.additive())
        .map(|k| k.keyword())
        .chain(["gens", "grading", "rel"])
        .collect();
    for line in body {
        let (kw, rest) = line.word(line.text);
        match kw {
            "gens" if b.gens.is_empty() => b.gens = names_list(line, rest)?,
            "grading" if !b.gens.is_empty() && b.grading.is_none() => {
                let ws: Vec<&str> = rest.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
                let mut weights = Vec::new();
                for w in &ws {
                    weights.push(w.parse::<u32>().map_err(|_| line.error(rest_of(line.text, w), &["positive weight"]))?);
                }
                if weights.len() != b.gens.len() || weights.contains(&0) {
                    return Err(line.error(rest, &["one positive weight per generator"]));
                }
                b.grading = Some(weights);
            }
            "rel" if !b.gens.is_empty() => b.rels.push(line.equation(rest)?),
            _ => match MapKind::from_keyword(kw).filter(|k| allowed.contains(&k.keyword())) {
                Some(k) if !b.gens.is_empty() => {
                    let (g, tail) = line.name(rest, "generator name")?;
                    if !b.gens.iter().any(|x| x == g) {
                        return Err(line.error(rest, &["a declared generator"]));
                    }
                    let tail = line.symbol(tail, "=")?;
                    b.maps.push(MapClause { kind: k, gen: g.to_string(), expr: line.expr(tail)? });
                }
                _ if b.gens.is_empty() => return Err(line.error(line.text, &["`gens`"])),
                _ => return Err(line.error(line.text, &allowed)),
            },
        }
    }
    if b.gens.is_empty() {
        return Err(header.error(&header.text[header.text.len()..], &["`gens` clause in the block"]));
    }
    Ok(b)
}

fn entry(line: &Line, rest: &str) -> PResult<Entry> {
    let (l, rest) = line.name(rest, "generator name")?;
    let (r, rest) = line.name(rest, "generator name")?;
    let rest = line.symbol(rest, "=")?;
    Ok(Entry { left: l.to_string(), right: r.to_string(), expr: line.expr(rest)? })
}

fn plethory_block(name: &str, base: String, body: &[&Line]) -> PResult<PlethoryBlock> {
    let mut p = PlethoryBlock { name: name.to_string(), base, circ: Vec::new(), unit: None };
    for line in body {
        let (kw, rest) = line.word(line.text);
        match kw {
            "circ" => p.circ.push(entry(line, rest)?),
            "unit" if p.unit.is_none() => {
                let rest = line.symbol(rest, "=")?;
                p.unit = Some(line.expr(rest)?);
            }
            _ => return Err(line.error(line.text, &["`circ`", "`unit`"])),
        }
    }
    Ok(p)
}

fn ring_block(name: &str, body: &[&Line]) -> PResult<RingBlock> {
    let mut r = RingBlock { name: name.to_string(), gens: Vec::new(), rels: Vec::new(), acts: Vec::new() };
    for line in body {
        let (kw, rest) = line.word(line.text);
        match kw {
            "gens" if r.gens.is_empty() => r.gens = names_list(line, rest)?,
            "rel" => r.rels.push(line.equation(rest)?),
            "act" => r.acts.push(entry(line, rest)?),
            _ => return Err(line.error(line.text, &["`gens`", "`rel`", "`act`"])),
        }
    }
    Ok(r)
}

impl fmt::Display for DslDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        for item in &self.items {
            match item {
                Item::Biring(b) => {
                    let kw = if b.kind == BlockKind::Hopf { "hopf" } else { "biring" };
                    writeln!(f, "\n{kw} {} {{", b.name)?;
                    writeln!(f, "  gens {}", b.gens.join(", "))?;
                    if let Some(w) = &b.grading {
                        let ws: Vec<String> = w.iter().map(u32::to_string).collect();
                        writeln!(f, "  grading {}", ws.join(", "))?;
                    }
                    for r in &b.rels {
                        writeln!(f, "  rel {} = {}", r.lhs, r.rhs)?;
                    }
                    for m in &b.maps {
                        writeln!(f, "  {} {} = {}", m.kind.keyword(), m.gen, m.expr)?;
                    }
                    writeln!(f, "}}")?;
                }
                Item::Plethory(p) => {
                    writeln!(f, "\nplethory {} on {} {{", p.name, p.base)?;
                    for e in &p.circ {
                        writeln!(f, "  circ {} {} = {}", e.left, e.right, e.expr)?;
                    }
                    if let Some(u) = &p.unit {
                        writeln!(f, "  unit = {u}")?;
                    }
                    writeln!(f, "}}")?;
                }
                Item::Ring(r) => {
                    writeln!(f, "\nring {} {{", r.name)?;
                    writeln!(f, "  gens {}", r.gens.join(", "))?;
                    for rel in &r.rels {
                        writeln!(f, "  rel {} = {}", rel.lhs, rel.rhs)?;
                    }
                    for e in &r.acts {
                        writeln!(f, "  act {} {} = {}", e.left, e.right, e.expr)?;
                    }
                    writeln!(f, "}}")?;
                }
                Item::Task(t) => match t.degree {
                    Some(d) => writeln!(f, "task {} {} degree {d}", t.command, t.object)?,
                    None => writeln!(f, "task {} {}", t.command, t.object)?,
                },
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GA: &str = "field Q\n\nbiring ga {\n  gens e\n  coadd e = e(1) + e(2)\n  comul e = e(1)*e(2)\n  counit+ e = 0\n  counit* e = 1\n  antipode e = -e\n  beta e = c\n}\n";

    #[test]
    fn round_trip() {
        let doc = parse_dsl(GA).unwrap();
        assert_eq!(doc.to_string(), GA);
        assert_eq!(parse_dsl(&doc.to_string()).unwrap(), doc);
        let Item::Biring(b) = &doc.items[0] else { panic!() };
        assert_eq!(b.maps.len(), 6);
        assert_eq!(b.maps[1].expr.to_string(), "e(1)*e(2)");
    }

    #[test]
    fn incomplete_expression_reports_end_of_line() {
        let src = "field Q\nbiring g {\n  gens e\n  coadd e = e(1) + \n}\n";
        let err = parse_dsl(src).unwrap_err();
        assert_eq!(err.line, 4);
        assert_eq!(err.found, "end of line");
        assert!(err.column > 15, "{err}");
        assert!(!err.expected.is_empty());
    }

    #[test]
    fn names_are_declared_before_use() {
        let src = "field Q\nplethory P on B {\n  unit = e\n}\n";
        let err = parse_dsl(src).unwrap_err();
        assert_eq!((err.line, err.expected.clone()), (2, vec!["a declared biring".to_string()]));
        let src = "field Q\nbiring g {\n  gens e\n  comul x = x(1)\n}\n";
        assert_eq!(parse_dsl(src).unwrap_err().expected, vec!["a declared generator".to_string()]);
        let src = "field Q\nhopf h {\n  gens e\n  comul e = e(1)\n}\n";
        assert_eq!(parse_dsl(src).unwrap_err().line, 4);
        assert_eq!(parse_dsl("biring").unwrap_err().expected, vec!["`field`".to_string()]);
    }

    #[test]
    fn comments_and_separators() {
        let src = "# header\nfield F2   # binary\nbiring d {\n  gens e x\n  comul x = x(1)*e(2) + e(1)*x(2)\n}\ntask check d degree 3\n";
        let doc = parse_dsl(src).unwrap();
        let Item::Biring(b) = &doc.items[0] else { panic!() };
        assert_eq!(b.gens, ["e", "x"]);
        assert_eq!(doc.items[1], Item::Task(Task { command: "check".into(), object: "d".into(), degree: Some(3) }));
        assert_eq!(parse_dsl(&doc.to_string()).unwrap(), doc);
    }
}
