//! Command-line front end: JSON in, JSON verdicts and documents out.
//! Exit codes: 0 success / true verdict, 1 false verdict, 2 error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use framedq::atlas::{
    chart_dimension, classify_coordinates, coordinate_label, pluecker, verify_relations,
    RelationPoly,
};
use framedq::chart::{iso_check, normal_form, project_chart, section, transition, IsoDecision};
use framedq::error::Error;
use framedq::field::Field;
use framedq::io::{
    emit, ingest, skeleton_from_list, ChartPointDoc, RepDoc, SkeletonDoc,
};
use framedq::oracle::{orbit_iso_bruteforce, stability_bruteforce, OracleBudget};
use framedq::quiver::{FramedShape, Quiver};
use framedq::random::random_stable;
use framedq::rep::{FramedRep, RowBundle};
use framedq::skeleton::{
    enumerate_abstract_skeleta, greedy_skeleton, skeleta_of_rep, PathUniverse,
};

#[derive(Parser)]
#[command(name = "framedq", about = "Stable framed quiver representations: skeleta, normal forms, isomorphism, chart atlas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum UniverseKind {
    /// union of all abstract skeleta, plus one-arrow extensions
    Exact,
    /// all framed paths below the total-dimension length bound
    Superset,
}

#[derive(Args)]
struct UniverseOpt {
    #[arg(long, value_enum, default_value = "exact")]
    universe: UniverseKind,
}

#[derive(Subcommand)]
enum Command {
    /// Decide stability of a representation
    Stable { file: PathBuf },
    /// Greedy skeleton of a stable representation
    Skeleton { file: PathBuf },
    /// All skeleta of a stable representation
    Skeleta { file: PathBuf },
    /// Abstract chart atlas of a shape: skeleta, path universe, dimension
    Charts { qfile: PathBuf },
    /// Normal form with respect to a skeleton (greedy one by default)
    NormalForm {
        file: PathBuf,
        #[arg(long)]
        skeleton: Option<String>,
    },
    /// Decide isomorphism of two representations, with witness
    Iso { file1: PathBuf, file2: PathBuf },
    /// Local chart coordinates of a representation
    Project {
        file: PathBuf,
        #[arg(long)]
        skeleton: String,
    },
    /// Rebuild the normal-form representation from chart coordinates
    Section {
        qfile: PathBuf,
        #[arg(long)]
        skeleton: String,
        #[arg(long)]
        coords: PathBuf,
    },
    /// Transition of a chart point into another chart
    Transition {
        qfile: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        coords: PathBuf,
    },
    /// All Pluecker coordinates of a representation
    Pluecker {
        file: PathBuf,
        #[command(flatten)]
        universe: UniverseOpt,
    },
    /// Essential/exceed classification of Pluecker coordinates for a shape
    Coords { qfile: PathBuf },
    /// Evaluate relation polynomials on a representation's Pluecker vector
    Verify {
        file: PathBuf,
        #[arg(long)]
        relations: PathBuf,
        #[command(flatten)]
        universe: UniverseOpt,
    },
    /// Draw a seeded random stable representation for a shape
    Random {
        qfile: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "10")]
        entry_bound: i64,
        /// override the document field: rational or prime:p
        #[arg(long)]
        field: Option<String>,
    },
    /// Brute-force ground-truth checks over prime fields
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exhaustive subrepresentation search
    Stable {
        file: PathBuf,
        #[arg(long, default_value = "6")]
        max_dim: usize,
        #[arg(long, default_value = "2000000")]
        cap: u64,
    },
    /// Exhaustive group-orbit search
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value = "6")]
        max_dim: usize,
        #[arg(long, default_value = "2000000")]
        cap: u64,
    },
}

fn read_doc(path: &PathBuf) -> Result<RepDoc, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    ingest(&text)
}

fn read_rep(path: &PathBuf) -> Result<FramedRep, Error> {
    read_doc(path)?.to_rep()
}

fn universe_paths(
    kind: UniverseKind,
    quiver: &Quiver,
    shape: &FramedShape,
) -> Result<Vec<framedq::quiver::FramedPath>, Error> {
    let u = match kind {
        UniverseKind::Exact => PathUniverse::compute(quiver, shape)?,
        UniverseKind::Superset => PathUniverse::superset(quiver, shape)?,
    };
    Ok(u.gamma_tilde)
}

fn parse_field_flag(text: &str) -> Result<Field, Error> {
    if text == "rational" {
        return Ok(Field::Rational);
    }
    if let Some(p) = text.strip_prefix("prime:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Document(format!("bad field `{text}`")))?;
        return Field::prime(p);
    }
    Err(Error::Document(format!("bad field `{text}`: expected rational or prime:p")))
}

fn group_to_doc(g: &framedq::rep::GroupElement) -> BTreeMap<String, Vec<Vec<String>>> {
    let mut out = BTreeMap::new();
    for (i, b) in g.blocks().iter().enumerate() {
        let rows: Vec<Vec<String>> = (0..b.rows())
            .map(|r| (0..b.cols()).map(|c| b.at(r, c).to_string()).collect())
            .collect();
        out.insert((i + 1).to_string(), rows);
    }
    out
}

/// Ok(true) prints and exits 0, Ok(false) prints and exits 1.
fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Stable { file } => {
            let rep = read_rep(&file)?;
            let stable = rep.is_stable();
            print!("{}", emit(&json!({ "stable": stable })));
            Ok(stable)
        }
        Command::Skeleton { file } => {
            let rep = read_rep(&file)?;
            let s = greedy_skeleton(&rep)?;
            print!("{}", emit(&SkeletonDoc::from_skeleton(&s, rep.quiver())));
            Ok(true)
        }
        Command::Skeleta { file } => {
            let rep = read_rep(&file)?;
            let list: Vec<SkeletonDoc> = skeleta_of_rep(&rep)?
                .iter()
                .map(|s| SkeletonDoc::from_skeleton(s, rep.quiver()))
                .collect();
            print!("{}", emit(&json!({ "count": list.len(), "skeleta": list })));
            Ok(true)
        }
        Command::Charts { qfile } => {
            let (quiver, shape, _) = read_doc(&qfile)?.context()?;
            let skeleta = enumerate_abstract_skeleta(&quiver, &shape)?;
            let universe = PathUniverse::compute(&quiver, &shape)?;
            let docs: Vec<SkeletonDoc> =
                skeleta.iter().map(|s| SkeletonDoc::from_skeleton(s, &quiver)).collect();
            let tilde: Vec<String> =
                universe.gamma_tilde.iter().map(|p| p.format(&quiver)).collect();
            print!(
                "{}",
                emit(&json!({
                    "skeleta": docs,
                    "universe": universe.gamma.iter().map(|p| p.format(&quiver)).collect::<Vec<_>>(),
                    "universe_extended": tilde,
                    "dimension": chart_dimension(&quiver, &shape),
                }))
            );
            Ok(true)
        }
        Command::NormalForm { file, skeleton } => {
            let rep = read_rep(&file)?;
            let s = match skeleton {
                Some(list) => skeleton_from_list(&list, rep.quiver(), rep.shape())?,
                None => greedy_skeleton(&rep)?,
            };
            let nf = normal_form(&rep, &s)?;
            print!("{}", emit(&RepDoc::from_rep(&nf)));
            Ok(true)
        }
        Command::Iso { file1, file2 } => {
            let rep1 = read_rep(&file1)?;
            let rep2 = read_rep(&file2)?;
            match iso_check(&rep1, &rep2)? {
                IsoDecision::Isomorphic { witness, skeleton } => {
                    print!(
                        "{}",
                        emit(&json!({
                            "isomorphic": true,
                            "witness": group_to_doc(&witness),
                            "skeleton": SkeletonDoc::from_skeleton(&skeleton, rep1.quiver()).paths,
                        }))
                    );
                    Ok(true)
                }
                IsoDecision::NotIsomorphic => {
                    print!("{}", emit(&json!({ "isomorphic": false })));
                    Ok(false)
                }
            }
        }
        Command::Project { file, skeleton } => {
            let rep = read_rep(&file)?;
            let s = skeleton_from_list(&skeleton, rep.quiver(), rep.shape())?;
            let c = project_chart(&rep, &s)?;
            print!("{}", emit(&ChartPointDoc::from_chart_point(&c, rep.quiver())));
            Ok(true)
        }
        Command::Section { qfile, skeleton, coords } => {
            let (quiver, shape, field) = read_doc(&qfile)?.context()?;
            let s = skeleton_from_list(&skeleton, &quiver, &shape)?;
            let text = std::fs::read_to_string(&coords)
                .map_err(|e| Error::Document(format!("{}: {e}", coords.display())))?;
            let cdoc: ChartPointDoc = ingest(&text)?;
            let c = cdoc.to_chart_point(&quiver, &shape, field)?;
            let rep = section(&quiver, field, &s, &c)?;
            print!("{}", emit(&RepDoc::from_rep(&rep)));
            Ok(true)
        }
        Command::Transition { qfile, from, to, coords } => {
            let (quiver, shape, field) = read_doc(&qfile)?.context()?;
            let s1 = skeleton_from_list(&from, &quiver, &shape)?;
            let s2 = skeleton_from_list(&to, &quiver, &shape)?;
            let text = std::fs::read_to_string(&coords)
                .map_err(|e| Error::Document(format!("{}: {e}", coords.display())))?;
            let cdoc: ChartPointDoc = ingest(&text)?;
            let c = cdoc.to_chart_point(&quiver, &shape, field)?;
            let out = transition(&quiver, field, &s1, &s2, &c)?;
            print!("{}", emit(&ChartPointDoc::from_chart_point(&out, &quiver)));
            Ok(true)
        }
        Command::Pluecker { file, universe } => {
            let rep = read_rep(&file)?;
            let paths = universe_paths(universe.universe, rep.quiver(), rep.shape())?;
            let bundle = RowBundle::build(&rep, &paths)?;
            let pv = pluecker(&bundle, rep.quiver())?;
            let labels: BTreeMap<String, String> = pv
                .labels(rep.quiver())
                .into_iter()
                .map(|(k, v)| (k, v.to_string()))
                .collect();
            print!("{}", emit(&labels));
            Ok(true)
        }
        Command::Coords { qfile } => {
            let (quiver, shape, _) = read_doc(&qfile)?.context()?;
            let c = classify_coordinates(&quiver, &shape)?;
            let essential: Vec<String> = c
                .per_vertex
                .iter()
                .flat_map(|v| v.essential.iter().map(|e| coordinate_label(&quiver, &e.paths)))
                .collect();
            let exceed: Vec<String> = c
                .per_vertex
                .iter()
                .flat_map(|v| v.exceed.iter().map(|s| coordinate_label(&quiver, s)))
                .collect();
            print!(
                "{}",
                emit(&json!({
                    "total": c.total(),
                    "essential": essential,
                    "exceed": exceed,
                }))
            );
            Ok(true)
        }
        Command::Verify { file, relations, universe } => {
            let rep = read_rep(&file)?;
            let text = std::fs::read_to_string(&relations)
                .map_err(|e| Error::Document(format!("{}: {e}", relations.display())))?;
            let rels: Vec<RelationPoly> = ingest(&text)?;
            let paths = universe_paths(universe.universe, rep.quiver(), rep.shape())?;
            let bundle = RowBundle::build(&rep, &paths)?;
            let labels = pluecker(&bundle, rep.quiver())?.labels(rep.quiver());
            let report = verify_relations(&rels, std::slice::from_ref(&labels), rep.field())?;
            let per: Vec<bool> = report.zero.iter().map(|row| row[0]).collect();
            let ok = report.all_zero();
            print!("{}", emit(&json!({ "all_zero": ok, "zero": per })));
            Ok(ok)
        }
        Command::Random { qfile, seed, entry_bound, field } => {
            let (quiver, shape, doc_field) = read_doc(&qfile)?.context()?;
            let field = match field {
                Some(f) => parse_field_flag(&f)?,
                None => doc_field,
            };
            let draw = random_stable(&quiver, &shape, field, seed, entry_bound)?;
            print!("{}", emit(&RepDoc::from_rep(&draw.rep)));
            eprintln!("{}", emit(&json!({ "rejections": draw.rejections })).trim_end());
            Ok(true)
        }
        Command::Oracle(cmd) => match cmd {
            OracleCommand::Stable { file, max_dim, cap } => {
                let rep = read_rep(&file)?;
                let budget = OracleBudget { max_total_dim: max_dim, cap };
                let stable = stability_bruteforce(&rep, &budget)?;
                print!("{}", emit(&json!({ "stable": stable })));
                Ok(stable)
            }
            OracleCommand::Iso { file1, file2, max_dim, cap } => {
                let rep1 = read_rep(&file1)?;
                let rep2 = read_rep(&file2)?;
                let budget = OracleBudget { max_total_dim: max_dim, cap };
                match orbit_iso_bruteforce(&rep1, &rep2, &budget)? {
                    Some(g) => {
                        print!(
                            "{}",
                            emit(&json!({ "isomorphic": true, "witness": group_to_doc(&g) }))
                        );
                        Ok(true)
                    }
                    None => {
                        print!("{}", emit(&json!({ "isomorphic": false })));
                        Ok(false)
                    }
                }
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
