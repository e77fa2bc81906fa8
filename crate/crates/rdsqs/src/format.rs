//! Line-oriented text formats for designs, derived resolutions and star
//! certificates.
//!
//! All three share the same lexical rules: `#` starts a comment line, blank
//! lines are ignored, tokens are separated by ASCII whitespace, and labels are
//! written `n`, `a_i`, `inf_i` (or `0`, `1`, `a^k` under `SCHEME gf16`).

use std::fmt::Write as _;

use rdsqs_core::star::{StarGroup, StarPointCertificate};
use rdsqs_core::{
    derived_design, derived_gdd, Block, Design, DesignError, Gdd, GddType, Label, LabelTable,
    ParallelClass, Resolution, Scheme,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        msg: msg.into(),
    })
}

fn at(line: usize) -> impl Fn(DesignError) -> ParseError {
    move |e| ParseError {
        line,
        msg: e.to_string(),
    }
}

/// Non-comment, non-blank lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignKind {
    Sqs,
    Sts,
    Gdd,
    Td,
    Raw,
}

impl DesignKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DesignKind::Sqs => "SQS",
            DesignKind::Sts => "STS",
            DesignKind::Gdd => "GDD",
            DesignKind::Td => "TD",
            DesignKind::Raw => "RAW",
        }
    }

    pub fn parse(s: &str) -> Option<DesignKind> {
        Some(match s {
            "SQS" => DesignKind::Sqs,
            "STS" => DesignKind::Sts,
            "GDD" => DesignKind::Gdd,
            "TD" => DesignKind::Td,
            "RAW" => DesignKind::Raw,
            _ => return None,
        })
    }

    fn grouped(self) -> bool {
        matches!(self, DesignKind::Gdd | DesignKind::Td)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Plain(Design),
    Grouped(Gdd),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignFile {
    pub kind: DesignKind,
    pub body: Body,
}

impl DesignFile {
    pub fn plain(kind: DesignKind, d: Design) -> DesignFile {
        DesignFile {
            kind,
            body: Body::Plain(d),
        }
    }

    pub fn grouped(kind: DesignKind, g: Gdd) -> DesignFile {
        DesignFile {
            kind,
            body: Body::Grouped(g),
        }
    }

    pub fn design(&self) -> &Design {
        match &self.body {
            Body::Plain(d) => d,
            Body::Grouped(g) => g.design(),
        }
    }

    pub fn gdd(&self) -> Option<&Gdd> {
        match &self.body {
            Body::Grouped(g) => Some(g),
            Body::Plain(_) => None,
        }
    }
}

fn labels_line(labels: &LabelTable) -> String {
    let parts: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    parts.join(" ")
}

pub fn emit_design(f: &DesignFile) -> String {
    let d = f.design();
    let mut out = String::new();
    let _ = writeln!(out, "KIND {}", f.kind.as_str());
    if d.labels().scheme() == Scheme::Gf16 {
        out.push_str("SCHEME gf16\n");
    }
    let _ = writeln!(out, "T {}", d.t());
    let ks: Vec<String> = d.block_sizes().iter().map(|k| k.to_string()).collect();
    let _ = writeln!(out, "K {}", ks.join(" "));
    let _ = writeln!(out, "V {}", d.v());
    let _ = writeln!(out, "LABELS {}", labels_line(d.labels()));
    if let Some(g) = f.gdd() {
        let _ = writeln!(out, "TYPE {}", g.declared_type());
        let _ = writeln!(out, "GROUPS {}", g.groups().len());
        for grp in g.groups() {
            let _ = writeln!(out, "{}", d.labels().render(grp));
        }
    }
    let _ = writeln!(out, "BLOCKS {}", d.blocks().len());
    for b in d.blocks() {
        let _ = writeln!(out, "{}", d.labels().render(b.points()));
    }
    out
}

fn parse_labels(tokens: &[&str], scheme: Scheme, line: usize) -> Result<Vec<Label>, ParseError> {
    tokens
        .iter()
        .map(|t| Label::parse(t, scheme).map_err(at(line)))
        .collect()
}

fn ids_of(labels: &LabelTable, tokens: &[Label], line: usize) -> Result<Vec<u32>, ParseError> {
    tokens
        .iter()
        .map(|l| match labels.id_of(l) {
            Some(id) => Ok(id),
            None => err(line, format!("unknown label {l}")),
        })
        .collect()
}

fn count_arg(rest: &[&str], key: &str, line: usize) -> Result<usize, ParseError> {
    match rest {
        [n] => n
            .parse()
            .map_err(|_| ParseError {
                line,
                msg: format!("{key} expects a count, got {n:?}"),
            }),
        _ => err(line, format!("{key} expects one count")),
    }
}

pub fn parse_design(text: &str) -> Result<DesignFile, ParseError> {
    let mut lines = content_lines(text).peekable();
    let mut kind = None;
    let mut scheme = Scheme::Standard;
    let mut t = None;
    let mut ks: Option<Vec<usize>> = None;
    let mut v = None;
    let mut labels: Option<(LabelTable, usize)> = None;
    let mut ty: Option<GddType> = None;
    let mut groups: Option<Vec<Vec<u32>>> = None;
    let mut blocks: Option<Vec<Block>> = None;
    let mut last_line = 0;

    while let Some((ln, line)) = lines.next() {
        last_line = ln;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (key, rest) = (toks[0], &toks[1..]);
        let table = |labels: &Option<(LabelTable, usize)>| -> Result<LabelTable, ParseError> {
            match labels {
                Some((l, _)) => Ok(l.clone()),
                None => err(ln, format!("{key} before LABELS")),
            }
        };
        match key {
            "KIND" => match rest {
                [k] => {
                    kind = Some(DesignKind::parse(k).ok_or_else(|| ParseError {
                        line: ln,
                        msg: format!("unknown kind {k:?}"),
                    })?)
                }
                _ => return err(ln, "KIND expects one value"),
            },
            "SCHEME" => match rest {
                ["gf16"] => scheme = Scheme::Gf16,
                ["standard"] => scheme = Scheme::Standard,
                _ => return err(ln, "SCHEME expects gf16 or standard"),
            },
            "T" => t = Some(count_arg(rest, "T", ln)?),
            "K" => {
                let parsed = rest
                    .iter()
                    .map(|k| k.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| ParseError {
                        line: ln,
                        msg: "K expects block sizes".into(),
                    })?;
                if parsed.is_empty() {
                    return err(ln, "K expects at least one block size");
                }
                ks = Some(parsed);
            }
            "V" => v = Some(count_arg(rest, "V", ln)?),
            "LABELS" => {
                let ls = parse_labels(rest, scheme, ln)?;
                let table = LabelTable::new(ls).map_err(at(ln))?;
                labels = Some((table, ln));
            }
            "TYPE" => ty = Some(GddType::parse(&rest.join(" ")).map_err(at(ln))?),
            "GROUPS" => {
                let n = count_arg(rest, "GROUPS", ln)?;
                let table = table(&labels)?;
                let mut gs = Vec::with_capacity(n);
                for _ in 0..n {
                    let Some((gl, g)) = lines.next() else {
                        return err(ln, format!("GROUPS declares {n} groups, file ends early"));
                    };
                    let toks: Vec<&str> = g.split_whitespace().collect();
                    let ls = parse_labels(&toks, scheme, gl)?;
                    gs.push(ids_of(&table, &ls, gl)?);
                }
                groups = Some(gs);
            }
            "BLOCKS" => {
                let n = count_arg(rest, "BLOCKS", ln)?;
                let table = table(&labels)?;
                let sizes = ks.clone().ok_or(ParseError {
                    line: ln,
                    msg: "BLOCKS before K".into(),
                })?;
                let mut bs = Vec::with_capacity(n);
                for _ in 0..n {
                    let Some((bl, b)) = lines.next() else {
                        return err(ln, format!("BLOCKS declares {n} blocks, file ends early"));
                    };
                    let toks: Vec<&str> = b.split_whitespace().collect();
                    if !sizes.contains(&toks.len()) {
                        return err(bl, format!("block of size {} outside K = {sizes:?}", toks.len()));
                    }
                    let ls = parse_labels(&toks, scheme, bl)?;
                    bs.push(Block::new(ids_of(&table, &ls, bl)?).map_err(at(bl))?);
                }
                blocks = Some(bs);
                if let Some((extra, _)) = lines.peek() {
                    return err(*extra, "content after the last block");
                }
            }
            other => return err(ln, format!("unknown header {other:?}")),
        }
    }

    let need = |what: &str| ParseError {
        line: last_line,
        msg: format!("missing {what}"),
    };
    let kind = kind.ok_or_else(|| need("KIND"))?;
    let t = t.ok_or_else(|| need("T"))?;
    let ks = ks.ok_or_else(|| need("K"))?;
    let v = v.ok_or_else(|| need("V"))?;
    let (table, labels_ln) = labels.ok_or_else(|| need("LABELS"))?;
    let blocks = blocks.ok_or_else(|| need("BLOCKS"))?;
    if table.len() != v {
        return err(labels_ln, format!("V = {v} but {} labels", table.len()));
    }
    match kind {
        DesignKind::Sqs if t != 3 || ks != [4] => return err(last_line, "SQS needs T 3 and K 4"),
        DesignKind::Sts if t != 2 || ks != [3] => return err(last_line, "STS needs T 2 and K 3"),
        _ => {}
    }
    let design = Design::new(table, t, ks, blocks).map_err(at(last_line))?;
    let body = if kind.grouped() {
        let gs = groups.ok_or_else(|| need("GROUPS"))?;
        let g = match ty {
            Some(ty) => Gdd::with_declared_type(design, gs, ty),
            None => Gdd::new(design, gs),
        }
        .map_err(at(last_line))?;
        Body::Grouped(g)
    } else {
        if groups.is_some() {
            return err(last_line, format!("GROUPS given for kind {}", kind.as_str()));
        }
        Body::Plain(design)
    };
    Ok(DesignFile { kind, body })
}

/// What a resolution file's point sections are resolved against.
#[derive(Debug, Clone, Copy)]
pub enum Companion<'a> {
    /// Derived designs of a design.
    Design(&'a Design),
    /// Derived GDDs: the whole group of the point is removed.
    Gdd(&'a Gdd),
}

impl<'a> Companion<'a> {
    pub fn design(&self) -> &'a Design {
        match self {
            Companion::Design(d) => d,
            Companion::Gdd(g) => g.design(),
        }
    }

    /// The derived design at a point.
    pub fn derived(&self, x: &Label) -> Result<Design, DesignError> {
        match self {
            Companion::Design(d) => derived_design(d, x),
            Companion::Gdd(g) => derived_gdd(g, x).map(Gdd::into_design),
        }
    }
}

impl<'a> From<&'a DesignFile> for Companion<'a> {
    fn from(f: &'a DesignFile) -> Companion<'a> {
        match &f.body {
            Body::Plain(d) => Companion::Design(d),
            Body::Grouped(g) => Companion::Gdd(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionFile {
    /// The `DESIGN` header, naming the companion.
    pub design: Option<String>,
    pub points: Vec<(Label, Resolution)>,
}

enum Section {
    Header(String),
    Point(usize, Label),
    Class(usize),
    Special(usize),
    Group(usize, usize),
    Common(usize, Vec<Label>),
    Block(usize, Vec<Label>),
}

fn sections(text: &str, scheme: Scheme) -> Result<Vec<Section>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let s = match toks[0] {
            "DESIGN" => match &toks[1..] {
                [name] => Section::Header(name.to_string()),
                _ => return err(ln, "DESIGN expects one name"),
            },
            "POINT" => match &toks[1..] {
                [p] => Section::Point(ln, Label::parse(p, scheme).map_err(at(ln))?),
                _ => return err(ln, "POINT expects one label"),
            },
            "CLASS" if toks.len() == 1 => Section::Class(ln),
            "SPECIAL" if toks.len() == 1 => Section::Special(ln),
            "GROUP" => Section::Group(ln, count_arg(&toks[1..], "GROUP", ln)?),
            "COMMON" => Section::Common(ln, parse_labels(&toks[1..], scheme, ln)?),
            _ => Section::Block(ln, parse_labels(&toks, scheme, ln)?),
        };
        out.push(s);
    }
    Ok(out)
}

fn to_block(labels: &LabelTable, ls: &[Label], ln: usize) -> Result<Block, ParseError> {
    Block::new(ids_of(labels, ls, ln)?).map_err(at(ln))
}

// A point section being read: point, derived labels, classes, class lines.
type Open = (Label, LabelTable, Vec<Vec<Block>>, Vec<usize>);

/// Per-point resolutions, keyed by point, in file order. They are checked for
/// shape only; verification is left to the caller.
pub fn parse_resolution(text: &str, companion: Companion<'_>) -> Result<ResolutionFile, ParseError> {
    let scheme = companion.design().labels().scheme();
    let mut design = None;
    let mut points: Vec<(Label, Resolution)> = Vec::new();
    let mut cur: Option<Open> = None;

    fn finish(
        cur: Option<Open>,
        points: &mut Vec<(Label, Resolution)>,
        point_line: usize,
    ) -> Result<(), ParseError> {
        let Some((p, labels, classes, starts)) = cur else {
            return Ok(());
        };
        if classes.is_empty() {
            return err(point_line, format!("point {p} has no classes"));
        }
        for (c, s) in classes.iter().zip(&starts) {
            if c.is_empty() {
                return err(*s, "empty CLASS section");
            }
        }
        if let Some(i) = classes.iter().position(|c| c.len() != classes[0].len()) {
            return err(starts[i], format!("ragged class: {} blocks, expected {}", classes[i].len(), classes[0].len()));
        }
        let classes = classes.into_iter().map(ParallelClass::new).collect();
        points.push((p, Resolution::new(labels, classes)));
        Ok(())
    }

    let mut point_line = 0;
    for s in sections(text, scheme)? {
        match s {
            Section::Header(name) => {
                if design.is_some() || cur.is_some() {
                    return err(point_line, "DESIGN must come first and once");
                }
                design = Some(name);
            }
            Section::Point(ln, p) => {
                finish(cur.take(), &mut points, point_line)?;
                if points.iter().any(|(q, _)| *q == p) {
                    return err(ln, format!("point {p} listed twice"));
                }
                if companion.design().labels().id_of(&p).is_none() {
                    return err(ln, format!("unknown point label {p}"));
                }
                let derived = companion.derived(&p).map_err(at(ln))?;
                cur = Some((p, derived.labels().clone(), Vec::new(), Vec::new()));
                point_line = ln;
            }
            Section::Class(ln) => match cur.as_mut() {
                Some((_, _, classes, starts)) => {
                    classes.push(Vec::new());
                    starts.push(ln);
                }
                None => return err(ln, "CLASS outside a POINT section"),
            },
            Section::Block(ln, ls) => match cur.as_mut() {
                Some((_, labels, classes, _)) if !classes.is_empty() => {
                    let b = to_block(labels, &ls, ln)?;
                    classes.last_mut().expect("non-empty").push(b);
                }
                _ => return err(ln, "block outside a CLASS section"),
            },
            Section::Special(ln) | Section::Group(ln, _) | Section::Common(ln, _) => {
                return err(ln, "star-certificate keyword in a resolution file")
            }
        }
    }
    finish(cur, &mut points, point_line)?;
    Ok(ResolutionFile { design, points })
}

pub fn emit_resolution(design: Option<&str>, points: &[(Label, Resolution)]) -> String {
    let mut out = String::new();
    if let Some(name) = design {
        let _ = writeln!(out, "DESIGN {name}");
    }
    for (p, r) in points {
        let _ = writeln!(out, "POINT {p}");
        for c in &r.classes {
            out.push_str("CLASS\n");
            for b in &c.blocks {
                let _ = writeln!(out, "{}", r.labels.render(b.points()));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarFile {
    pub design: Option<String>,
    pub points: Vec<StarPointCertificate>,
}

/// Star certificates, one per `POINT` section. Each section holds a
/// `SPECIAL` class followed by `GROUP k` sections with a `COMMON` triple and
/// exactly three `CLASS` sections.
pub fn parse_star(text: &str, design: &Design) -> Result<StarFile, ParseError> {
    let scheme = design.labels().scheme();
    let mut name = None;
    let mut points = Vec::new();

    struct Cur {
        line: usize,
        point: Label,
        labels: LabelTable,
        special: Option<Vec<Block>>,
        groups: Vec<(usize, Option<Block>, Vec<Vec<Block>>)>,
        // 0 = special, 1 = group header, 2 = class
        mode: u8,
    }

    fn finish(cur: Option<Cur>, out: &mut Vec<StarPointCertificate>, ground: usize) -> Result<(), ParseError> {
        let Some(c) = cur else { return Ok(()) };
        let arity = ground / 3;
        let special = match c.special {
            Some(s) if s.len() == arity => s,
            Some(s) => return err(c.line, format!("SPECIAL has {} triples, expected {arity}", s.len())),
            None => return err(c.line, format!("point {} has no SPECIAL class", c.point)),
        };
        if c.groups.len() != arity {
            return err(c.line, format!("point {} has {} groups, expected {arity}", c.point, c.groups.len()));
        }
        let mut groups = Vec::with_capacity(arity);
        for (gl, common, classes) in c.groups {
            let Some(common) = common else {
                return err(gl, "GROUP without COMMON");
            };
            if classes.len() != 3 {
                return err(gl, format!("GROUP has {} classes, expected 3", classes.len()));
            }
            if let Some(bad) = classes.iter().find(|x| x.len() != arity) {
                return err(gl, format!("class of {} triples in GROUP, expected {arity}", bad.len()));
            }
            let mut it = classes.into_iter().map(ParallelClass::new);
            let classes = [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
            groups.push(StarGroup { common, classes });
        }
        out.push(StarPointCertificate {
            point: c.point,
            labels: c.labels,
            special: ParallelClass::new(special),
            groups,
        });
        Ok(())
    }

    let mut cur: Option<Cur> = None;
    let ground = design.v().saturating_sub(1);
    for s in sections(text, scheme)? {
        match s {
            Section::Header(n) => {
                if name.is_some() || cur.is_some() {
                    return err(0, "DESIGN must come first and once");
                }
                name = Some(n);
            }
            Section::Point(ln, p) => {
                finish(cur.take(), &mut points, ground)?;
                if design.labels().id_of(&p).is_none() {
                    return err(ln, format!("unknown point label {p}"));
                }
                let derived = derived_design(design, &p).map_err(at(ln))?;
                cur = Some(Cur {
                    line: ln,
                    point: p,
                    labels: derived.labels().clone(),
                    special: None,
                    groups: Vec::new(),
                    mode: 0,
                });
            }
            Section::Special(ln) => match cur.as_mut() {
                Some(c) if c.special.is_none() && c.groups.is_empty() => {
                    c.special = Some(Vec::new());
                    c.mode = 0;
                }
                _ => return err(ln, "misplaced SPECIAL"),
            },
            Section::Group(ln, k) => match cur.as_mut() {
                Some(c) if c.special.is_some() => {
                    if k != c.groups.len() + 1 {
                        return err(ln, format!("GROUP {k} out of order"));
                    }
                    c.groups.push((ln, None, Vec::new()));
                    c.mode = 1;
                }
                _ => return err(ln, "GROUP before SPECIAL"),
            },
            Section::Common(ln, ls) => match cur.as_mut() {
                Some(c) if c.mode == 1 => {
                    let b = to_block(&c.labels, &ls, ln)?;
                    let g = c.groups.last_mut().expect("mode 1 has a group");
                    if g.1.is_some() || !g.2.is_empty() {
                        return err(ln, "COMMON must open its GROUP");
                    }
                    g.1 = Some(b);
                }
                _ => return err(ln, "COMMON outside a GROUP"),
            },
            Section::Class(ln) => match cur.as_mut() {
                Some(c) if !c.groups.is_empty() => {
                    let g = c.groups.last_mut().expect("non-empty");
                    if let Some(prev) = g.2.last() {
                        if prev.is_empty() {
                            return err(ln, "empty CLASS section");
                        }
                    }
                    g.2.push(Vec::new());
                    c.mode = 2;
                }
                _ => return err(ln, "CLASS outside a GROUP"),
            },
            Section::Block(ln, ls) => match cur.as_mut() {
                Some(c) => {
                    let b = to_block(&c.labels, &ls, ln)?;
                    match c.mode {
                        0 => c.special.as_mut().ok_or(ParseError { line: ln, msg: "block before SPECIAL".into() })?.push(b),
                        2 => c.groups.last_mut().expect("mode 2").2.last_mut().expect("class").push(b),
                        _ => return err(ln, "block between GROUP and CLASS"),
                    }
                }
                None => return err(ln, "block outside a POINT section"),
            },
        }
    }
    finish(cur, &mut points, ground)?;
    Ok(StarFile { design: name, points })
}

pub fn emit_star(design: Option<&str>, points: &[StarPointCertificate]) -> String {
    let mut out = String::new();
    if let Some(name) = design {
        let _ = writeln!(out, "DESIGN {name}");
    }
    for pc in points {
        let _ = writeln!(out, "POINT {}", pc.point);
        out.push_str("SPECIAL\n");
        for b in &pc.special.blocks {
            let _ = writeln!(out, "{}", pc.labels.render(b.points()));
        }
        for (k, g) in pc.groups.iter().enumerate() {
            let _ = writeln!(out, "GROUP {}", k + 1);
            let _ = writeln!(out, "COMMON {}", pc.labels.render(g.common.points()));
            for c in &g.classes {
                out.push_str("CLASS\n");
                for b in &c.blocks {
                    let _ = writeln!(out, "{}", pc.labels.render(b.points()));
                }
            }
        }
    }
    out
}
