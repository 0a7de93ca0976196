//! Argument parsing and dispatch.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nervekit::cech::{cech_delta_with, verify_nerve_theorem_with};
use nervekit::fixtures::{self, Fixture};
use nervekit::homology::{simplicial_homology_with, sset_homology, HomologyResult};
use nervekit::nerves::{
    completed_nerve, completion_with, eta_fiber_mismatches, eta_map, is_complete, nerve, vbar,
    verify_completion_with, verify_eta_with,
};
use nervekit::posets::{
    chain_cover, covex_cover, detection_check_with, essential_chains, gamma_poset, is_cutset,
    pi1_abelianized, pq_join, r_complex, s0, subset_token, verify_cutset, verify_fiber_with, Cutset,
    FiberMode,
};
use nervekit::random::{coned_cover, random_connected_poset, random_cover, rng};
use nervekit::{
    order_complex, Coefficients, Execution, IndexedCover, Poset, PosetMap, SimplicialComplex, Verdict,
};
use serde_json::{json, Value};

use crate::manifest::{self, resolve, Manifest};
use crate::report::Report;
use crate::CliError;

pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Debug, Parser)]
#[command(
    name = "nervekit",
    version,
    about = "Nerve constructions and exact homology checks for simplicial covers and posets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// q, z, f2 or fp:<p>
    #[arg(long, global = true, default_value = "q")]
    pub coeffs: Coefficients,
    /// Connectivity parameter of the verifiers.
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    pub n: i64,
    /// Highest homology degree reported.
    #[arg(long, global = true, default_value_t = 3)]
    pub maxdim: usize,
    /// Write the constructed object here as a manifest.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Evaluate batch work on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct CoverArg {
    /// Fixture name or cover manifest path.
    #[arg(long)]
    pub cover: String,
}

#[derive(Debug, Args)]
pub struct PosetArg {
    /// Fixture name or poset manifest path.
    #[arg(long)]
    pub poset: String,
}

#[derive(Debug, Args)]
pub struct CutsetArgs {
    #[arg(long)]
    pub poset: String,
    /// Comma-separated element tokens.
    #[arg(long, value_delimiter = ',', required = true)]
    pub set: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Borsuk nerve of a cover.
    Nerve(CoverArg),
    /// Completed nerve of a cover, as a poset.
    CompletedNerve(CoverArg),
    /// Discrete Čech complex through --maxdim.
    CechDelta(CoverArg),
    /// Completion of a cover.
    Completion(CoverArg),
    /// Poset of components of intersections.
    Vbar(CoverArg),
    /// Homology of a complex, of the order complex of a poset, or of a cover's space.
    Homology {
        #[arg(long)]
        complex: String,
    },
    /// The map η from the subdivision to the completed nerve.
    Eta(CoverArg),
    /// Cutset complex R(P, X) and Γ(P, X).
    Cutset(CutsetArgs),
    /// Essential chains of a poset.
    EssentialChains(PosetArg),
    #[command(subcommand)]
    /// Build fixtures and seeded instances.
    Gen(Gen),
    #[command(subcommand)]
    /// Check a theorem's hypotheses, then its homological conclusions.
    Verify(Verify),
}

#[derive(Debug, Subcommand)]
pub enum Gen {
    /// A named fixture; lists the names when none is given.
    Fixture { name: Option<String> },
    /// P^Q and its projection.
    PqJoin {
        #[arg(long)]
        poset: String,
        /// `element=fiber`, where fiber is s0, point, empty, a fixture or a path.
        #[arg(long)]
        fiber: Vec<String>,
        #[arg(long, default_value = "s0")]
        default_fiber: String,
    },
    /// The preimage cover of maximal chains in P^{S⁰}.
    Covex(PosetArg),
    /// A seeded random full cover.
    RandomCover {
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        #[arg(long, default_value_t = 5)]
        max_members: usize,
    },
    /// A seeded cover by vertex stars whose intersections are n-acyclic.
    ConedCover {
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
    },
    /// A seeded random connected poset.
    RandomPoset {
        #[arg(long, default_value_t = 8)]
        size: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Quillen,
    Copo,
    Achain,
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Ambient space against the completed nerve and Čᵟ.
    NerveTheorem(CoverArg),
    /// Δη over uniformly n-acyclic covers.
    Eta(CoverArg),
    /// Δf from Quillen, copo or maximal-chain fiber conditions.
    Fiber {
        /// Fixture name or posetmap manifest path.
        #[arg(long)]
        map: String,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// H₁ of R(P, X) against H₁ of Δ(P).
    Cutset(CutsetArgs),
    /// Detection of Δf through a cover of Δ(codomain); the maximal-chain cover by default.
    Detection {
        #[arg(long)]
        map: String,
        #[arg(long)]
        cover: Option<String>,
    },
    /// Ambient space against the completion.
    Completion(CoverArg),
}

pub fn parse(args: &[String]) -> Result<Cli, clap::Error> {
    Cli::try_parse_from(args)
}

/// Parses and runs `args` (without the program name).
pub fn run<S: AsRef<str>>(args: &[S]) -> Report {
    let args: Vec<String> = args.iter().map(|a| a.as_ref().to_string()).collect();
    let full: Vec<String> = std::iter::once("nervekit".to_string())
        .chain(args.iter().cloned())
        .collect();
    match parse(&full) {
        Ok(cli) => execute(cli, args),
        Err(e) => Report::error(args, e.to_string()),
    }
}

pub fn execute(cli: Cli, echo: Vec<String>) -> Report {
    let start = Instant::now();
    let mut report = match dispatch(&cli) {
        Ok((verdict, result)) => Report::new(echo, verdict, result),
        Err(e) => Report::error(echo, e.to_string()),
    };
    report.timing.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    report
}

fn kind(v: &Fixture) -> &'static str {
    match v {
        Fixture::Complex(_) => "complex",
        Fixture::Poset(_) => "poset",
        Fixture::Cover(_) => "cover",
        Fixture::PosetMap(_) => "posetmap",
    }
}

fn wrong_kind(arg: &str, want: &str, got: &Fixture) -> CliError {
    CliError::Input(format!("{arg}: expected a {want}, got a {}", kind(got)))
}

fn load_cover(arg: &str) -> Result<IndexedCover, CliError> {
    match resolve(arg)? {
        Fixture::Cover(c) => Ok(c),
        other => Err(wrong_kind(arg, "cover", &other)),
    }
}

fn load_poset(arg: &str) -> Result<Poset, CliError> {
    match resolve(arg)? {
        Fixture::Poset(p) => Ok(p),
        other => Err(wrong_kind(arg, "poset", &other)),
    }
}

fn load_map(arg: &str) -> Result<PosetMap, CliError> {
    match resolve(arg)? {
        Fixture::PosetMap(f) => Ok(f),
        other => Err(wrong_kind(arg, "posetmap", &other)),
    }
}

fn tokens(p: &Poset) -> Vec<String> {
    p.elements().iter().map(|e| e.to_string()).collect()
}

fn torsion_json(h: &HomologyResult) -> Value {
    let t: Vec<Vec<Value>> = h
        .torsion
        .iter()
        .map(|ts| {
            ts.iter()
                .map(|t| {
                    let s = t.to_string();
                    s.parse::<u64>().map(Value::from).unwrap_or(Value::String(s))
                })
                .collect()
        })
        .collect();
    json!(t)
}

fn homology_json(h: &HomologyResult) -> Value {
    json!({
        "coefficients": h.coefficients.to_string(),
        "betti": h.betti,
        "torsion": torsion_json(h),
        "computed_through": h.computed_through,
    })
}

impl Cli {
    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn homology(&self, k: &SimplicialComplex) -> HomologyResult {
        simplicial_homology_with(k, self.maxdim, self.coeffs, self.exec())
    }

    /// Saves `value` when `--out` was given and reports where.
    fn emit(&self, value: &Fixture, name: &str, result: &mut Value) -> Result<(), CliError> {
        let m = Manifest::from_value(value).named(name);
        if let Some(path) = &self.out {
            manifest::save(&m, path)?;
            result["written"] = json!(path.display().to_string());
        }
        Ok(())
    }

    /// Like [`Cli::emit`], but includes the manifest itself when nothing is
    /// written.
    fn emit_inline(&self, value: &Fixture, name: &str, result: &mut Value) -> Result<(), CliError> {
        self.emit(value, name, result)?;
        if self.out.is_none() {
            result["manifest"] = serde_json::to_value(Manifest::from_value(value).named(name)).expect("json");
        }
        Ok(())
    }
}

type Outcome = Result<(Verdict, Option<Value>), CliError>;

fn constructed(result: Value) -> Outcome {
    Ok((Verdict::default(), Some(result)))
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Nerve(a) => {
            let cov = load_cover(&a.cover)?;
            let k = nerve(&cov);
            let counts: Vec<usize> = (0..=k.dim().unwrap_or(0)).map(|d| k.num_simplices(d)).collect();
            let facets: Vec<String> = k.facets().iter().map(|f| f.to_string()).collect();
            let mut r =
                json!({"simplices": counts, "facets": facets, "homology": homology_json(&cli.homology(&k))});
            cli.emit(&Fixture::Complex(k), "nerve", &mut r)?;
            constructed(r)
        }
        Command::CompletedNerve(a) => {
            let cov = load_cover(&a.cover)?;
            let c = completed_nerve(&cov);
            let h = cli.homology(&order_complex(&c.poset));
            let mut r = json!({"elements": tokens(&c.poset), "homology": homology_json(&h)});
            cli.emit(&Fixture::Poset(c.poset), "completed-nerve", &mut r)?;
            constructed(r)
        }
        Command::CechDelta(a) => {
            if cli.out.is_some() {
                return Err(CliError::Input(
                    "--out: simplicial sets have no manifest format".into(),
                ));
            }
            let cov = load_cover(&a.cover)?;
            let s = cech_delta_with(&cov, cli.maxdim + 1, cli.exec());
            let h = sset_homology(&s, cli.maxdim, cli.coeffs)?;
            let labels: Vec<Vec<String>> = (0..=cli.maxdim).map(|k| s.labels(k).to_vec()).collect();
            constructed(json!({
                "nondegenerate": (0..=cli.maxdim).map(|k| s.num_simplices(k)).collect::<Vec<_>>(),
                "labels": labels,
                "homology": homology_json(&h),
            }))
        }
        Command::Completion(a) => {
            let cov = load_cover(&a.cover)?;
            let c = completion_with(&cov, cli.exec())?;
            let as_cover = c.as_cover(cov.ambient());
            let h = cli.homology(&order_complex(&c.poset));
            let c_map = match &c.c {
                Ok(_) => json!("defined"),
                Err(s) => json!(format!("undefined: ⋂ at {s} is disconnected")),
            };
            let mut r = json!({
                "members": tokens(&c.poset),
                "tilde": tokens(&c.tilde),
                "c": c_map,
                "complete": is_complete(&as_cover).is_ok(),
                "homology": homology_json(&h),
            });
            cli.emit(&Fixture::Cover(as_cover), "completion", &mut r)?;
            constructed(r)
        }
        Command::Vbar(a) => {
            let cov = load_cover(&a.cover)?;
            let v = vbar(&cov);
            let h = cli.homology(&order_complex(&v.poset));
            let mut r = json!({"elements": tokens(&v.poset), "homology": homology_json(&h)});
            cli.emit(&Fixture::Poset(v.poset), "vbar", &mut r)?;
            constructed(r)
        }
        Command::Homology { complex } => {
            let (of, k) = match resolve(complex)? {
                Fixture::Complex(k) => ("complex", k),
                Fixture::Poset(p) => ("order complex", order_complex(&p)),
                Fixture::Cover(c) => ("cover space", c.ambient().clone()),
                other => return Err(wrong_kind(complex, "complex, poset or cover", &other)),
            };
            let h = cli.homology(&k);
            let mut r = homology_json(&h);
            r["of"] = json!(of);
            r["euler_characteristic"] = json!(k.euler_characteristic());
            constructed(r)
        }
        Command::Eta(a) => {
            let cov = load_cover(&a.cover)?;
            let eta = eta_map(&cov)?;
            let mismatches = eta_fiber_mismatches(&eta, cli.exec());
            let assignment: serde_json::Map<String, Value> = eta
                .poset_map
                .assignment_tokens()
                .into_iter()
                .map(|(a, b)| (a.to_string(), json!(b.to_string())))
                .collect();
            let mut r = json!({"assignment": assignment, "fiber_mismatches": mismatches});
            cli.emit(&Fixture::PosetMap(eta.poset_map), "eta", &mut r)?;
            constructed(r)
        }
        Command::Cutset(a) => {
            let p = load_poset(&a.poset)?;
            if let Err(chain) = is_cutset(&p, &a.set)? {
                return Err(CliError::Input(format!(
                    "--set: not a cutset; maximal chain {} misses it",
                    subset_token(&p, &chain)
                )));
            }
            let cut = Cutset::new(&p, &a.set)?;
            let g = gamma_poset(&cut);
            let mut r = json!({"gamma": tokens(&g.poset)});
            if p.is_connected() {
                let rc = r_complex(&cut)?;
                let (rank, torsion) = pi1_abelianized(&rc)?;
                r["r_complex"] = json!({
                    "vertices": rc.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "edges": rc.edges.iter().map(|e| e.token.clone()).collect::<Vec<_>>(),
                    "triangles": rc.triangles.len(),
                });
                r["h1"] = json!({"rank": rank, "torsion": torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()});
            }
            constructed(r)
        }
        Command::EssentialChains(a) => {
            let p = load_poset(&a.poset)?;
            let chains: Vec<Vec<String>> = essential_chains(&p)
                .iter()
                .map(|c| c.elements.iter().map(|&i| p.element(i).to_string()).collect())
                .collect();
            constructed(json!({"chains": chains}))
        }
        Command::Gen(g) => generate(cli, g),
        Command::Verify(v) => verify(cli, v),
    }
}

fn fiber_poset(spec: &str) -> Result<Poset, CliError> {
    match spec {
        "s0" => Ok(s0()),
        "point" => Ok(Poset::from_tokens::<&str>(&["*"], &[])?),
        "empty" => Ok(Poset::new(Vec::new(), Vec::new())?),
        other => load_poset(other),
    }
}

fn generate(cli: &Cli, g: &Gen) -> Outcome {
    let mut r = json!({});
    match g {
        Gen::Fixture { name: None } => return constructed(json!({"fixtures": fixtures::NAMES})),
        Gen::Fixture { name: Some(name) } => {
            let m = manifest::fixture(name)?;
            r["kind"] = json!(m.kind());
            cli.emit_inline(&m.to_value()?, name, &mut r)?;
        }
        Gen::PqJoin {
            poset,
            fiber,
            default_fiber,
        } => {
            let p = load_poset(poset)?;
            let mut fibers = vec![fiber_poset(default_fiber)?; p.len()];
            for f in fiber {
                let (e, spec) = f
                    .split_once('=')
                    .ok_or_else(|| CliError::Input(format!("--fiber {f:?}: expected element=fiber")))?;
                let i = p
                    .index_of(e)
                    .ok_or_else(|| CliError::Input(format!("--fiber: unknown element {e:?}")))?;
                fibers[i] = fiber_poset(spec)?;
            }
            let j = pq_join(&p, &fibers)?;
            r["elements"] = json!(j.poset.len());
            cli.emit_inline(&Fixture::PosetMap(j.projection), "pq-join", &mut r)?;
        }
        Gen::Covex(a) => {
            let cov = covex_cover(&load_poset(&a.poset)?)?;
            r["members"] = json!(cov.len());
            cli.emit_inline(&Fixture::Cover(cov), "covex", &mut r)?;
        }
        Gen::RandomCover {
            max_vertices,
            max_members,
        } => {
            let cov = random_cover(&mut rng(cli.seed), *max_vertices, (*max_members).max(2));
            r["seed"] = json!(cli.seed);
            cli.emit_inline(&Fixture::Cover(cov), "random-cover", &mut r)?;
        }
        Gen::ConedCover { max_vertices } => {
            let cov = coned_cover(&mut rng(cli.seed), *max_vertices, cli.n);
            r["seed"] = json!(cli.seed);
            cli.emit_inline(&Fixture::Cover(cov), "coned-cover", &mut r)?;
        }
        Gen::RandomPoset { size, density } => {
            if !(0.0..=1.0).contains(density) {
                return Err(CliError::Input("--density: must lie in [0, 1]".into()));
            }
            let p = random_connected_poset(&mut rng(cli.seed), (*size).max(1), *density);
            r["seed"] = json!(cli.seed);
            cli.emit_inline(&Fixture::Poset(p), "random-poset", &mut r)?;
        }
    }
    constructed(r)
}

fn verify(cli: &Cli, v: &Verify) -> Outcome {
    let (exec, n, coeffs) = (cli.exec(), cli.n, cli.coeffs);
    let verdict = match v {
        Verify::NerveTheorem(a) => verify_nerve_theorem_with(&load_cover(&a.cover)?, n, coeffs, exec)?,
        Verify::Eta(a) => verify_eta_with(&load_cover(&a.cover)?, n, coeffs, exec)?,
        Verify::Completion(a) => verify_completion_with(&load_cover(&a.cover)?, n, coeffs, exec)?,
        Verify::Fiber { map, mode } => {
            let mode = match mode {
                Mode::Quillen => FiberMode::Quillen(n),
                Mode::Copo => FiberMode::Copo(n),
                Mode::Achain => FiberMode::Achain(n),
            };
            verify_fiber_with(&load_map(map)?, mode, coeffs, exec)?
        }
        Verify::Cutset(a) => verify_cutset(&load_poset(&a.poset)?, &a.set)?,
        Verify::Detection { map, cover } => {
            let f = load_map(map)?;
            let cov = match cover {
                Some(c) => load_cover(c)?,
                None => chain_cover(f.codomain()),
            };
            detection_check_with(&f.order_complex_map(), &cov, n, coeffs, exec)?
        }
    };
    Ok((verdict, None))
}
