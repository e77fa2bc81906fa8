//! The checked-in datasets: derived resolutions of the two filled GDDs and
//! the star certificate seeds for SQS(28).
//!
//! Files are looked up in `$DESIGN_DATA_DIR`, falling back to the `data/`
//! directory of this crate.

use std::path::{Path, PathBuf};

use rdsqs_core::catalog;
use rdsqs_core::star::{expand_certificate, StarCertificate, StarPointCertificate};
use rdsqs_core::{Design, DesignError, Gdd, Label, Resolution};

use crate::format::{parse_resolution, parse_star, Companion};
use crate::Error;

pub const RDGDD24: &str = "rdgdd24.res";
pub const RDGDD42: &str = "rdgdd42.res";
pub const SQS28_STAR: &str = "sqs28.star";

pub fn data_dir() -> PathBuf {
    match std::env::var_os("DESIGN_DATA_DIR") {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("data"),
    }
}

pub fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_gdd_resolutions(g: &Gdd, file: &str) -> Result<Vec<(Label, Resolution)>, Error> {
    let path = data_dir().join(file);
    let text = read(&path)?;
    let parsed = parse_resolution(&text, Companion::Gdd(g)).map_err(|e| Error::parse(&path, e))?;
    Ok(parsed.points)
}

/// The filled RDGDD of type 3^8 with its 24 listed derived resolutions.
pub fn rdgdd24_listing() -> Result<(Gdd, Vec<(Label, Resolution)>), Error> {
    let g = catalog::rdgdd24()?;
    let res = load_gdd_resolutions(&g, RDGDD24)?;
    Ok((g, res))
}

/// The filled RDGDD of type 3^14 with its 42 listed derived resolutions.
pub fn rdgdd42_listing() -> Result<(Gdd, Vec<(Label, Resolution)>), Error> {
    let g = catalog::rdgdd42()?;
    let res = load_gdd_resolutions(&g, RDGDD42)?;
    Ok((g, res))
}

/// The stored seed certificates of SQS(28), unexpanded.
pub fn sqs28_star_seeds(d: &Design) -> Result<Vec<StarPointCertificate>, Error> {
    let path = data_dir().join(SQS28_STAR);
    let text = read(&path)?;
    Ok(parse_star(&text, d).map_err(|e| Error::parse(&path, e))?.points)
}

/// Completes seed certificates to one per point. Seeds covering every point
/// are taken as they are; otherwise they are developed by `+s` on the first
/// coordinate of pair labels, modulo the number of first coordinates.
pub fn complete_certificate(
    design: Design,
    seeds: Vec<StarPointCertificate>,
) -> Result<StarCertificate, Error> {
    if seeds.len() == design.v() {
        let mut points = seeds;
        points.sort_by_key(|c| c.point);
        return Ok(StarCertificate { design, points });
    }
    let mut firsts: Vec<u32> = Vec::new();
    for l in design.labels().iter() {
        match l {
            Label::Pair(a, _) => firsts.push(a),
            Label::Infinity(_) => {}
            other => {
                return Err(DesignError::param(format!(
                    "cannot develop seeds over label {other}; list every point"
                ))
                .into())
            }
        }
    }
    firsts.sort_unstable();
    firsts.dedup();
    let modulus = firsts.len() as u32;
    if modulus == 0 || seeds.len() * modulus as usize != design.v() {
        return Err(DesignError::param(format!(
            "{} seeds do not develop to {} points",
            seeds.len(),
            design.v()
        ))
        .into());
    }
    Ok(expand_certificate(design, &seeds, modulus)?)
}

/// SQS(28) with its full star certificate: the stored seeds developed to all
/// 28 points, each image re-verified.
pub fn sqs28_star() -> Result<StarCertificate, Error> {
    let d = catalog::sqs28()?;
    let seeds = sqs28_star_seeds(&d)?;
    complete_certificate(d, seeds)
}
