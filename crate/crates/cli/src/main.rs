//! `gallai`: JSON in, JSON out front end for the Gallai multigraph library.
//!
//! Exit codes: 0 success, 1 a verification found a violation, 2 bad usage or input.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use gallai_core::color::{ColorSet, Palette};
use gallai_core::construction::gamma::{signatures_from_json, SignatureJson};
use gallai_core::construction::{
    delta_f, delta_f_all, delta_t, for_each_realization, gamma, ConstructionSpec, LeafPool,
    SigmaChoice,
};
use gallai_core::decomposition::{decompose, verify_tree_property, DecompositionJson, TreeReport};
use gallai_core::maximal::{is_maximal, maximal_closure};
use gallai_core::mixed::{MixedGraph, MixedGraphJson};
use gallai_core::multigraph::ColoredMultigraph;
use gallai_core::oracle::census::{enumerate_census, SearchBounds};
use gallai_core::oracle::completeness::completeness_check;
use gallai_core::oracle::roundtrip::roundtrip_check;
use gallai_core::rainbow::rainbow_triangles;
use gallai_core::reduce::{is_reduced, reduce};
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "gallai",
    version,
    about = "Gallai multigraphs: checks, decomposition, constructions and census"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report Gallai, reduced and maximal status with rainbow witnesses.
    Check {
        input: PathBuf,
        /// Report at most this many rainbow triangles.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Collapse isolated pairs; prints the reduced multigraph.
    Reduce {
        input: PathBuf,
        /// Also write the vertex merge map to this file.
        #[arg(long)]
        merge_out: Option<PathBuf>,
    },
    /// Greedy maximal closure within the palette.
    Maximalize { input: PathBuf },
    /// The level sequence M_0, M_1, ... up to the first repeated partition.
    Decompose {
        input: PathBuf,
        /// Write one Graphviz file per level into this directory.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Check the tree property at every level; exit 1 if it fails.
        #[arg(long)]
        verify: bool,
    },
    /// Realize a construction spec as a multigraph.
    Construct {
        input: PathBuf,
        /// Emit every realization of the spec's base (JSON lines) instead.
        #[arg(long)]
        all: bool,
        /// Vertex bound for `--all`.
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// Trees with a new root dominating the input mixed graph (JSON lines).
    DeltaT {
        input: PathBuf,
        /// The two dominating colors, e.g. `A,B`.
        #[arg(long, value_delimiter = ',', required = true)]
        tau: Vec<String>,
        /// Only the generated signature relation, not its coarsenings.
        #[arg(long)]
        restrict_sigma: bool,
        /// Palette for inputs that do not name one.
        #[arg(long, value_delimiter = ',')]
        palette: Option<Vec<String>>,
    },
    /// Substitute trees for the vertices of a base mixed graph.
    DeltaF {
        /// `{"base": ..., "trees": [...], "signatures": [...]}`.
        input: PathBuf,
        /// Treat `trees` as candidates and emit every substitution (JSON lines).
        #[arg(long)]
        all: bool,
        /// Vertex bound for `--all`.
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// Exhaustive census of complete multigraphs up to isomorphism.
    Enumerate {
        #[arg(long)]
        vertices: usize,
        #[command(flatten)]
        palette: PaletteArgs,
        #[arg(long, default_value_t = 2)]
        multiplicity_cap: usize,
        /// Include the reduced maximal Gallai representatives.
        #[arg(long)]
        representatives: bool,
    },
    /// Check that every reduced maximal Gallai multigraph on up to N
    /// vertices is realized by the constructed family.
    VerifyCompleteness {
        #[arg(long)]
        vertices: usize,
        #[command(flatten)]
        palette: PaletteArgs,
    },
    /// Rebuild a reduced maximal Gallai multigraph from its first level.
    Roundtrip { input: PathBuf },
}

#[derive(Args)]
struct PaletteArgs {
    /// Use the standard labels A, B, ... for this many colors.
    #[arg(long, conflicts_with = "palette")]
    colors: Option<usize>,
    /// Explicit color labels.
    #[arg(long, value_delimiter = ',')]
    palette: Option<Vec<String>>,
}

impl PaletteArgs {
    fn resolve(&self) -> Result<Palette> {
        match (&self.colors, &self.palette) {
            (Some(c), None) => Ok(Palette::standard(*c)?),
            (None, Some(labels)) => Ok(Palette::new(labels.clone())?),
            _ => bail!("give either --colors or --palette"),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ForestInput {
    base: MixedGraphJson,
    trees: Vec<MixedGraphJson>,
    #[serde(default)]
    signatures: Vec<SignatureJson>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_multigraph(path: &Path) -> Result<ColoredMultigraph> {
    ColoredMultigraph::from_json(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))
}

fn mixed_from(mut j: MixedGraphJson, fallback: Option<&Palette>) -> Result<MixedGraph> {
    if j.palette.is_none() {
        j.palette = fallback.map(|p| p.labels().to_vec());
    }
    Ok(MixedGraph::from_json_value(j)?)
}

#[derive(Serialize)]
struct Witness {
    vertices: [usize; 3],
    witness: [String; 3],
}

#[derive(Serialize)]
struct CheckReport {
    gallai: bool,
    reduced: bool,
    maximal: bool,
    rainbow_witnesses: Vec<Witness>,
}

#[derive(Serialize)]
struct DecomposeReport {
    #[serde(flatten)]
    sequence: DecompositionJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    tree_property: Option<Vec<TreeReport>>,
}

struct Out<'a> {
    w: BufWriter<io::StdoutLock<'a>>,
}

impl Out<'_> {
    fn line(&mut self, value: &impl Serialize) -> Result<()> {
        serde_json::to_writer(&mut self.w, value)?;
        self.w.write_all(b"\n")?;
        Ok(())
    }
}

/// `Ok(true)` on success, `Ok(false)` when a verification failed.
fn run(cli: Cli, out: &mut Out) -> Result<bool> {
    match cli.command {
        Command::Check { input, limit } => {
            let g = read_multigraph(&input)?;
            let p = g.palette();
            let triangles = rainbow_triangles(&g, limit);
            out.line(&CheckReport {
                gallai: triangles.is_empty(),
                reduced: is_reduced(&g),
                maximal: is_maximal(&g),
                rainbow_witnesses: triangles
                    .iter()
                    .map(|t| Witness {
                        vertices: t.vertices,
                        witness: t.witness.map(|c| p.label(c).to_string()),
                    })
                    .collect(),
            })?;
        }
        Command::Reduce { input, merge_out } => {
            let r = reduce(&read_multigraph(&input)?);
            if let Some(path) = merge_out {
                fs::write(&path, serde_json::to_string(&r.merge)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            out.line(&r.graph.to_json_value())?;
        }
        Command::Maximalize { input } => {
            let g = maximal_closure(&read_multigraph(&input)?)?;
            out.line(&g.to_json_value())?;
        }
        Command::Decompose { input, dot, verify } => {
            let seq = decompose(&read_multigraph(&input)?);
            if let Some(dir) = dot {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for m in &seq.levels {
                    let path = dir.join(format!("level_{}.dot", m.level));
                    fs::write(&path, m.to_dot(&format!("M{}", m.level)))
                        .with_context(|| format!("writing {}", path.display()))?;
                }
            }
            let tree_property = if verify {
                Some(
                    (0..seq.levels.len())
                        .map(|k| verify_tree_property(&seq, k))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            } else {
                None
            };
            let passed = tree_property.iter().flatten().all(|r| r.passed);
            out.line(&DecomposeReport {
                sequence: seq.to_json_value(),
                tree_property,
            })?;
            return Ok(passed);
        }
        Command::Construct {
            input,
            all,
            max_size,
        } => {
            let spec = ConstructionSpec::from_json(&read(&input)?)?;
            if all {
                let pool = LeafPool::uniform(&spec.base.palette, max_size);
                let mut lines = Vec::new();
                for_each_realization(&spec.base, &pool, max_size, &mut |s, r| {
                    lines
                        .push(json!({"spec": s.to_json_value(), "graph": r.graph.to_json_value()}));
                })?;
                for l in &lines {
                    out.line(l)?;
                }
            } else {
                out.line(&gamma(&spec)?.to_json_value())?;
            }
        }
        Command::DeltaT {
            input,
            tau,
            restrict_sigma,
            palette,
        } => {
            let fallback = palette.map(Palette::new).transpose()?;
            let m = mixed_from(serde_json::from_str(&read(&input)?)?, fallback.as_ref())?;
            let two: ColorSet = m.palette.set_of(&tau)?;
            let choice = if restrict_sigma {
                SigmaChoice::GeneratedOnly
            } else {
                SigmaChoice::AllCoarsenings
            };
            for t in delta_t(&m, two, choice)? {
                out.line(&t.to_json_value())?;
            }
        }
        Command::DeltaF {
            input,
            all,
            max_size,
        } => {
            let f: ForestInput = serde_json::from_str(&read(&input)?)?;
            let base = MixedGraph::from_json_value(f.base)?;
            let trees = f
                .trees
                .into_iter()
                .map(|t| mixed_from(t, Some(&base.palette)))
                .collect::<Result<Vec<_>>>()?;
            if all {
                let mut found = Vec::new();
                delta_f_all(&base, &trees, max_size, &mut |m| found.push(m))?;
                for m in &found {
                    out.line(&m.to_json_value())?;
                }
            } else {
                let sizes: Vec<usize> = trees.iter().map(MixedGraph::size).collect();
                let signatures = signatures_from_json(&f.signatures, &sizes, &base.palette)?;
                out.line(&delta_f(&base, &trees, &signatures)?.to_json_value())?;
            }
        }
        Command::Enumerate {
            vertices,
            palette,
            multiplicity_cap,
            representatives,
        } => {
            let p = palette.resolve()?;
            let census =
                enumerate_census(vertices, &p, multiplicity_cap, &SearchBounds::from_env()?)?;
            if representatives {
                out.line(&census.fixture())?;
            } else {
                out.line(&census.record)?;
            }
        }
        Command::VerifyCompleteness { vertices, palette } => {
            let report =
                completeness_check(vertices, &palette.resolve()?, &SearchBounds::from_env()?)?;
            out.line(&report)?;
            return Ok(report.passed);
        }
        Command::Roundtrip { input } => {
            let report = roundtrip_check(&read_multigraph(&input)?);
            out.line(&report)?;
            return Ok(report.passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = Out {
        w: BufWriter::new(stdout.lock()),
    };
    let result = run(cli, &mut out);
    let flushed = out.w.flush();
    match (result, flushed) {
        (Ok(true), Ok(())) => ExitCode::SUCCESS,
        (Ok(false), Ok(())) => ExitCode::from(1),
        (Err(e), _) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        (_, Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
