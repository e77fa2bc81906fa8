//! `rdsqs`: generate, verify, derive, construct and resolve designs.
//!
//! Exit status: 0 when every check passed, 1 on a verification failure
//! (witnesses on stderr), 2 on a usage or parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rdsqs::data::{self, read};
use rdsqs::format::{
    emit_design, emit_resolution, emit_star, parse_design, parse_resolution, parse_star, Companion, DesignFile,
    DesignKind,
};
use rdsqs::output::{read_construction, write_construction, MANIFEST};
use rdsqs::parallel::{self, with_jobs};
use rdsqs::Error;
use rdsqs_core::catalog::{self, Entry};
use rdsqs_core::resolver::{ResolveOutcome, DEFAULT_BUDGET};
use rdsqs_core::verify::verify_gdd_with;
use rdsqs_core::{derived_design, derived_gdd, verify_steiner_with, Label, VerifyReport, DEFAULT_WITNESS_LIMIT};

#[derive(Parser)]
#[command(name = "rdsqs", version, about = "Steiner quadruple systems with resolvable derived designs")]
struct Cli {
    /// Worker threads for per-point work (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a catalog design, with its resolutions or star seeds when known.
    Gen {
        name: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Check a design file, optionally with a resolution or star file.
    Verify {
        #[arg(long, value_enum)]
        kind: Kind,
        design: PathBuf,
        extra: Option<PathBuf>,
    },
    /// Write the derived design at a point.
    Derive {
        design: PathBuf,
        point: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the design on four times as many points from a star certificate.
    Construct {
        star: PathBuf,
        out: PathBuf,
        /// Design file the certificate refers to (default: its DESIGN catalog name).
        #[arg(long)]
        design: Option<PathBuf>,
    },
    /// Search for resolutions of derived designs.
    Resolve {
        design: PathBuf,
        /// Only this point (default: every point).
        point: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Re-read and re-verify a `construct` output directory.
    Report { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Sqs,
    Sts,
    Gdd,
    Td,
    Rdsqs,
    Rdgdd,
    Star,
}

enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Design(d) => Failure::Usage(d.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<rdsqs_core::DesignError> for Failure {
    fn from(e: rdsqs_core::DesignError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    match with_jobs(jobs, || run(cli.cmd)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Prints one claim line; failures also go to stderr with their witnesses.
fn claim(name: &str, report: &VerifyReport, ok: &mut bool) {
    println!("{name}: {report}");
    if !report.passed() {
        *ok = false;
        for v in report.violations() {
            eprintln!("{name}: {v}");
        }
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_design(path: &Path) -> Result<DesignFile, Failure> {
    parse_design(&read(path)?).map_err(|e| Error::parse(path, e).into())
}

fn label_arg(s: &str, file: &DesignFile) -> Result<Label, Failure> {
    Label::parse(s, file.design().labels().scheme()).map_err(Failure::from)
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Gen { name, out } => gen(&name, &out),
        Cmd::Verify { kind, design, extra } => verify(kind, &design, extra.as_deref()),
        Cmd::Derive { design, point, out } => {
            let file = load_design(&design)?;
            let x = label_arg(&point, &file)?;
            let derived = match file.gdd() {
                Some(g) => DesignFile::grouped(DesignKind::Gdd, derived_gdd(g, &x)?),
                None => {
                    let d = derived_design(file.design(), &x)?;
                    let kind = if d.t() == 2 && d.uniform_block_size() == Some(3) { DesignKind::Sts } else { DesignKind::Raw };
                    DesignFile::plain(kind, d)
                }
            };
            let text = emit_design(&derived);
            match out {
                Some(p) => write(&p, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Cmd::Construct { star, out, design } => construct(&star, &out, design.as_deref()),
        Cmd::Resolve { design, point, budget } => {
            let file = load_design(&design)?;
            let d = file.design();
            let results = match point {
                Some(p) => {
                    let x = label_arg(&p, &file)?;
                    let dd = Companion::from(&file).derived(&x)?;
                    vec![(x, rdsqs_core::resolver::find_resolution(&dd, budget))]
                }
                None if file.gdd().is_some() => {
                    let c = Companion::from(&file);
                    let points: Vec<Label> = d.labels().iter().collect();
                    use rayon::prelude::*;
                    points
                        .par_iter()
                        .map(|x| {
                            let dd = c.derived(x)?;
                            Ok((*x, rdsqs_core::resolver::find_resolution(&dd, budget)))
                        })
                        .collect::<Result<Vec<_>, rdsqs_core::DesignError>>()?
                }
                None => parallel::confirm_rds(d, budget),
            };
            let mut ok = true;
            for (x, r) in &results {
                println!("point {x}: {} ({} nodes)", r.outcome.as_str(), r.nodes);
                ok &= matches!(r.outcome, ResolveOutcome::Found(_));
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Cmd::Report { dir } => {
            let (d, points) = read_construction(&dir)?;
            let mut ok = true;
            claim("design", &verify_steiner_with(&d, DEFAULT_WITNESS_LIMIT), &mut ok);
            let reports = parallel::verify_point_resolutions(Companion::Design(&d), &points, DEFAULT_WITNESS_LIMIT);
            let passed = reports.iter().filter(|(_, r)| r.passed()).count();
            for (x, r) in &reports {
                if !r.passed() {
                    claim(&format!("point {x}"), r, &mut ok);
                }
            }
            if points.len() != d.v() {
                ok = false;
                println!("points: FAIL ({} of {} have resolutions)", points.len(), d.v());
            }
            println!("{} points, {} blocks, {passed} resolutions verified", d.v(), d.blocks().len());
            if ok {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn gen(name: &str, out: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(out).map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
    let entry = catalog::by_name(name)?;
    let file = match entry {
        Entry::Design(d) => DesignFile::plain(DesignKind::Sqs, d),
        Entry::Gdd(g) => DesignFile::grouped(DesignKind::Gdd, g),
    };
    write(&out.join(format!("{name}.design")), &emit_design(&file))?;
    match name {
        "sqs22" => {
            let (_, res) = catalog::sqs22_with_resolutions()?;
            write(&out.join("sqs22.res"), &emit_resolution(Some(name), &res))?;
        }
        "rdgdd24" => {
            let (_, res) = data::rdgdd24_listing()?;
            write(&out.join("rdgdd24.res"), &emit_resolution(Some(name), &res))?;
        }
        "rdgdd42" => {
            let (_, res) = data::rdgdd42_listing()?;
            write(&out.join("rdgdd42.res"), &emit_resolution(Some(name), &res))?;
        }
        "sqs28" => {
            let seeds = data::sqs28_star_seeds(file.design())?;
            write(&out.join("sqs28.star"), &emit_star(Some(name), &seeds))?;
        }
        _ => {}
    }
    Ok(())
}

fn verify(kind: Kind, path: &Path, extra: Option<&Path>) -> Result<(), Failure> {
    let file = load_design(path)?;
    let d = file.design();
    let limit = DEFAULT_WITNESS_LIMIT;
    let mut ok = true;
    let need_extra = || extra.ok_or_else(|| Failure::Usage("this kind needs a second file".into()));
    let need_gdd = || file.gdd().ok_or_else(|| Failure::Usage("design file has no GROUPS".into()));
    match kind {
        Kind::Sqs | Kind::Sts => {
            let (t, k) = if matches!(kind, Kind::Sqs) { (3, 4) } else { (2, 3) };
            if d.t() != t || d.uniform_block_size() != Some(k) {
                return Err(Failure::Usage(format!("not an S({t},{k},v) file")));
            }
            claim("steiner", &verify_steiner_with(d, limit), &mut ok);
        }
        Kind::Gdd => claim("gdd", &verify_gdd_with(need_gdd()?, limit), &mut ok),
        Kind::Td => {
            let g = need_gdd()?;
            let k = d.uniform_block_size();
            let n = g.groups().first().map(Vec::len);
            let uniform = g.groups().iter().all(|x| Some(x.len()) == n);
            if k != Some(g.groups().len()) || !uniform {
                return Err(Failure::Usage("not a transversal design: groups and block size disagree".into()));
            }
            claim("td", &verify_gdd_with(g, limit), &mut ok);
        }
        Kind::Rdsqs | Kind::Rdgdd => {
            let companion = if matches!(kind, Kind::Rdsqs) {
                claim("steiner", &verify_steiner_with(d, limit), &mut ok);
                Companion::Design(d)
            } else {
                let g = need_gdd()?;
                claim("gdd", &verify_gdd_with(g, limit), &mut ok);
                Companion::Gdd(g)
            };
            let rpath = need_extra()?;
            let res = parse_resolution(&read(rpath)?, companion).map_err(|e| Error::parse(rpath, e))?;
            for (x, r) in parallel::verify_point_resolutions(companion, &res.points, limit) {
                claim(&format!("point {x}"), &r, &mut ok);
            }
            if res.points.len() != d.v() {
                ok = false;
                println!("coverage: FAIL (resolutions at {} of {} points)", res.points.len(), d.v());
            }
        }
        Kind::Star => {
            let spath = need_extra()?;
            let star = parse_star(&read(spath)?, d).map_err(|e| Error::parse(spath, e))?;
            let cert = data::complete_certificate(d.clone(), star.points);
            match cert {
                Ok(cert) => claim("star", &parallel::verify_star(&cert, limit), &mut ok),
                Err(Error::Design(e)) => {
                    ok = false;
                    println!("star: FAIL ({e})");
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn construct(star: &Path, out: &Path, design: Option<&Path>) -> Result<(), Failure> {
    let text = read(star)?;
    let d = match design {
        Some(p) => load_design(p)?.design().clone(),
        None => {
            let name = text
                .lines()
                .find_map(|l| l.trim().strip_prefix("DESIGN "))
                .ok_or_else(|| Failure::Usage("star file names no DESIGN; pass --design".into()))?;
            catalog::by_name(name.trim())?.design().clone()
        }
    };
    let seeds = parse_star(&text, &d).map_err(|e| Error::parse(star, e))?;
    let cert = match data::complete_certificate(d, seeds.points) {
        Ok(c) => c,
        Err(Error::Design(e)) => {
            println!("certificate: FAIL ({e})");
            return Err(Failure::Check);
        }
        Err(e) => return Err(e.into()),
    };
    let mut ok = true;
    claim("star", &parallel::verify_star(&cert, DEFAULT_WITNESS_LIMIT), &mut ok);
    if !ok {
        return Err(Failure::Check);
    }
    let assembly = match parallel::construct(&cert) {
        Ok(a) => a,
        Err(e) => {
            println!("construction: FAIL ({e})");
            return Err(Failure::Check);
        }
    };
    write_construction(out, &assembly)?;
    println!(
        "construction: PASS ({} points, {} blocks, {} points resolved; see {})",
        assembly.design.v(),
        assembly.design.blocks().len(),
        assembly.resolutions.len(),
        out.join(MANIFEST).display()
    );
    Ok(())
}
