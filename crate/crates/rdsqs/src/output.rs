//! Directory layout written by `construct` and read back by `report`.
//!
//! ```text
//! out/MANIFEST
//! out/design.design
//! out/points/<label>.res      one per point
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rdsqs_core::construction::QuadrupleAssembly;
use rdsqs_core::{Design, Label, Resolution};

use crate::data::read;
use crate::format::{emit_design, emit_resolution, parse_design, parse_resolution, Companion, DesignFile, DesignKind};
use crate::Error;

pub const MANIFEST: &str = "MANIFEST";
pub const DESIGN_FILE: &str = "design.design";
pub const POINTS_DIR: &str = "points";

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn point_file(p: &Label) -> String {
    format!("{POINTS_DIR}/{p}.res")
}

pub fn manifest(design: &Design, resolutions: &[Resolution]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "design {DESIGN_FILE}");
    let _ = writeln!(out, "v {}", design.v());
    let _ = writeln!(out, "blocks {}", design.blocks().len());
    let _ = writeln!(out, "steiner PASS");
    let _ = writeln!(out, "points {}", resolutions.len());
    let _ = writeln!(out, "resolved {}", resolutions.len());
    for (p, r) in resolutions.iter().enumerate() {
        let label = design.labels().label(p as u32);
        let _ = writeln!(out, "point {label} classes {} file {}", r.classes.len(), point_file(&label));
    }
    out
}

/// Writes the verified assembly. Every byte depends only on the assembly.
pub fn write_construction(dir: &Path, a: &QuadrupleAssembly) -> Result<(), Error> {
    let io = |source| Error::Io {
        path: dir.join(POINTS_DIR),
        source,
    };
    fs::create_dir_all(dir.join(POINTS_DIR)).map_err(io)?;
    let name = format!("sqs{}", a.design.v());
    write(&dir.join(DESIGN_FILE), &emit_design(&DesignFile::plain(DesignKind::Sqs, a.design.clone())))?;
    for (p, r) in a.resolutions.iter().enumerate() {
        let label = a.design.labels().label(p as u32);
        let text = emit_resolution(Some(&name), &[(label, r.clone())]);
        write(&dir.join(point_file(&label)), &text)?;
    }
    write(&dir.join(MANIFEST), &manifest(&a.design, &a.resolutions))
}

/// Design and per-point resolutions of an output directory, parsed but not
/// verified.
pub fn read_construction(dir: &Path) -> Result<(Design, Vec<(Label, Resolution)>), Error> {
    let mpath = dir.join(MANIFEST);
    let manifest = read(&mpath)?;
    let bad = |line: usize, msg: &str| Error::Parse {
        path: mpath.clone(),
        source: crate::format::ParseError { line, msg: msg.into() },
    };
    let mut design_file = None;
    let mut files = Vec::new();
    for (i, line) in manifest.lines().enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["design", f] => design_file = Some(f.to_string()),
            ["point", _, "classes", _, "file", f] => files.push((i + 1, f.to_string())),
            ["v" | "blocks" | "steiner" | "points" | "resolved", _] | [] => {}
            _ => return Err(bad(i + 1, "unrecognised manifest line")),
        }
    }
    let design_file = design_file.ok_or_else(|| bad(0, "no design line"))?;
    let dpath = dir.join(&design_file);
    let parsed = parse_design(&read(&dpath)?).map_err(|e| Error::parse(&dpath, e))?;
    let design = parsed.design().clone();
    let mut points = Vec::with_capacity(files.len());
    for (_, f) in files {
        let path = dir.join(&f);
        let res = parse_resolution(&read(&path)?, Companion::Design(&design)).map_err(|e| Error::parse(&path, e))?;
        points.extend(res.points);
    }
    Ok((design, points))
}
