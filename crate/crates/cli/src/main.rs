use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use inproj::corpus::{gen_variety_with, FixtureKind, IdealDocument};
use inproj::geometry::{classify, inner_project, successive_project, Centers, PointedIdeal};
use inproj::groebner::{eliminate, Ideal};
use inproj::module::{GradedModuleSpec, ModuleKind, Structure};
use inproj::pei::{filtration, subquotient_spec};
use inproj::tor::{betti_window, TorEngine};
use inproj::verify::{verify_suite, VerifyConfig};
use inproj::{Error, MonomialOrder, PrimeField, DEFAULT_CHAR};

#[derive(Parser)]
#[command(name = "inproj", version, about = "Inner projections, partial elimination ideals and Betti tables")]
struct Cli {
    /// Machine-readable output with sorted keys.
    #[arg(long, global = true)]
    json: bool,
    /// Field characteristic; overrides the one in the document.
    #[arg(long = "char", global = true)]
    characteristic: Option<u32>,
    /// Maximal number of S-pairs per Gröbner basis.
    #[arg(long, global = true, default_value_t = inproj::groebner::DEFAULT_PAIR_BUDGET)]
    pair_budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Grevlex,
    BlockX0,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleArg {
    Quotient,
    Ideal,
    Subquotient,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    R,
    S,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis.
    Gb {
        doc: PathBuf,
        #[arg(long, value_enum, default_value = "grevlex")]
        order: OrderArg,
    },
    /// Eliminates the leading variables up to and including `--front`.
    Eliminate {
        doc: PathBuf,
        #[arg(long, default_value = "x0")]
        front: String,
    },
    /// Partial elimination ideals K_0, ..., K_upto.
    Pei {
        doc: PathBuf,
        #[arg(long)]
        upto: Option<u32>,
    },
    /// Graded Betti numbers over a window.
    Betti {
        doc: PathBuf,
        #[arg(long, value_enum, default_value = "quotient")]
        module: ModuleArg,
        #[arg(long)]
        imax: Option<usize>,
        #[arg(long)]
        jmax: Option<i64>,
        #[arg(long, value_enum, default_value = "r")]
        ring: RingArg,
    },
    /// Inner projection from a labeled point or explicit coordinates.
    Project {
        doc: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Successive inner projections. Points given with `--point` are seeds
    /// in the original coordinates; without them every step projects from
    /// (1:0:...:0).
    Chain {
        doc: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        point: Vec<String>,
        /// Allow singular centers.
        #[arg(long)]
        permissive: bool,
    },
    /// Numeric classification by delta, depth and N_{2,p} level.
    Classify { doc: PathBuf },
    /// Writes a fixture document: rnc:d, scroll:a,b,..., veronese:n,d,
    /// segre:m,n, plucker24, two_planes_p4.
    Gen {
        kind: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Runs named checks, or all of them.
    Verify {
        checks: Vec<String>,
        /// Seconds allowed for the Segre strand before it is skipped.
        #[arg(long, default_value_t = 600)]
        segre_budget: u64,
    },
}

struct Ctx {
    json: bool,
    characteristic: Option<u32>,
    pair_budget: usize,
}

impl Ctx {
    fn load(&self, path: &PathBuf) -> inproj::Result<IdealDocument> {
        let text = fs::read_to_string(path)?;
        let mut doc = IdealDocument::parse_any(&text)?;
        if let Some(p) = self.characteristic {
            doc.char = p;
            doc = IdealDocument::parse_text(&doc.to_text())?;
        }
        Ok(doc)
    }

    fn ideal(&self, doc: &IdealDocument, orders: &[MonomialOrder]) -> inproj::Result<Ideal> {
        let ideal = doc.ideal()?;
        for &o in orders {
            ideal.groebner_with_budget(o, self.pair_budget)?;
        }
        Ok(ideal)
    }

    fn emit(&self, text: String, value: Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        } else {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
    }
}

fn gens_of(i: &Ideal) -> Vec<String> {
    i.generators().iter().map(|g| g.to_string()).collect()
}

fn parse_point(doc: &IdealDocument, spec: &str) -> inproj::Result<Vec<u32>> {
    if let Some(p) = doc.point(spec) {
        return Ok(p.coords.clone());
    }
    let coords: std::result::Result<Vec<u32>, _> =
        spec.split([',', ' ', ':']).filter(|s| !s.is_empty()).map(|s| s.parse::<u32>()).collect();
    coords.map_err(|_| Error::InvalidParameter(format!("`{spec}` is neither a point label nor coordinates")))
}

/// Exit status: 0 ok, 1 check failure, 2 usage error, 3 budget exceeded.
fn status_of(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded(_) => 3,
        Error::Parse(_)
        | Error::Document { .. }
        | Error::InvalidParameter(_)
        | Error::UnknownCheck(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::NotOnVariety(_)
        | Error::ZeroPoint
        | Error::RosterMismatch(_)
        | Error::X0Unavailable(_) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> inproj::Result<u8> {
    let ctx = Ctx { json: cli.json, characteristic: cli.characteristic, pair_budget: cli.pair_budget };
    match cli.command {
        Command::Gb { doc, order } => {
            let order = match order {
                OrderArg::Grevlex => MonomialOrder::GrevLex,
                OrderArg::BlockX0 => MonomialOrder::BLOCK_X0,
            };
            let d = ctx.load(&doc)?;
            let i = ctx.ideal(&d, &[order])?;
            let gb = i.groebner(order)?;
            let polys: Vec<String> = gb.polynomials().iter().map(|p| p.to_string()).collect();
            ctx.emit(polys.join("\n"), json!({ "order": format!("{order:?}"), "basis": polys }));
        }
        Command::Eliminate { doc, front } => {
            let d = ctx.load(&doc)?;
            let k = d
                .vars
                .iter()
                .position(|v| *v == front)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown variable `{front}`")))?
                + 1;
            let i = ctx.ideal(&d, &[MonomialOrder::Block { front: k }])?;
            let e = eliminate(&i, k)?;
            let g = gens_of(&e);
            let text = if g.is_empty() { "0".to_string() } else { g.join("\n") };
            ctx.emit(text, json!({ "vars": e.ring().names(), "generators": g }));
        }
        Command::Pei { doc, upto } => {
            let d = ctx.load(&doc)?;
            let i = ctx.ideal(&d, &[MonomialOrder::BLOCK_X0])?;
            let f = filtration(&i)?;
            let top = upto.map_or(f.ideals.len() - 1, |u| (u as usize).min(f.ideals.len() - 1));
            let mut text = String::new();
            let mut list = Vec::new();
            for (k, ideal) in f.ideals.iter().enumerate().take(top + 1) {
                let g = gens_of(ideal);
                text.push_str(&format!("K_{k}: ({})\n", g.join(", ")));
                list.push(json!({ "index": k, "generators": g }));
            }
            text.push_str(&format!("stabilization index: {}\n", f.stabilization_index));
            ctx.emit(text, json!({ "ideals": list, "stabilization_index": f.stabilization_index }));
        }
        Command::Betti { doc, module, imax, jmax, ring } => {
            let d = ctx.load(&doc)?;
            let i = ctx.ideal(&d, &[MonomialOrder::GrevLex])?;
            let structure = match ring {
                RingArg::R => Structure::OverR,
                RingArg::S => Structure::OverS,
            };
            let spec = match module {
                ModuleArg::Quotient => GradedModuleSpec::quotient(&i, structure)?,
                ModuleArg::Ideal => GradedModuleSpec::ideal(&i, structure)?,
                ModuleArg::Subquotient => subquotient_spec(ModuleKind::Subquotient, &i, structure)?,
            };
            let engine = TorEngine::new(Arc::new(spec));
            let i_max = imax.unwrap_or(engine.n_acting());
            let j_max = jmax.unwrap_or(i.max_degree() as i64 + 4);
            let t = betti_window(&engine, i_max, j_max);
            ctx.emit(t.to_string(), t.to_json());
        }
        Command::Project { doc, point } => {
            let d = ctx.load(&doc)?;
            let i = ctx.ideal(&d, &[MonomialOrder::GrevLex])?;
            let q = parse_point(&d, &point)?;
            let (image, report) = inner_project(&PointedIdeal::new(i, q)?)?;
            let g = gens_of(&image);
            let text = format!(
                "image: ({})\nsmooth center: {}, tangent dim {}\nbeta02 {} -> {} (identity {})\npd {} -> {}, depth {} -> {}\ndelta {} -> {}, N2p level {} -> {}\n",
                g.join(", "),
                report.smooth,
                report.tangent_dim,
                report.beta02_before,
                report.beta02_after,
                if report.quadric_identity_ok { "holds" } else { "fails" },
                report.pd_before,
                report.pd_after,
                report.depth_before,
                report.depth_after,
                report.delta_before,
                report.delta_after,
                report.n2p_before,
                report.n2p_after
            );
            ctx.emit(text, json!({ "image": { "vars": image.ring().names(), "generators": g }, "report": report }));
        }
        Command::Chain { doc, steps, point, permissive } => {
            let d = ctx.load(&doc)?;
            let i = ctx.ideal(&d, &[MonomialOrder::GrevLex])?;
            let centers = if point.is_empty() {
                let n = i.ring().nvars();
                Centers::Explicit((0..steps).map(|k| { let mut v = vec![0; n - k]; v[0] = 1; v }).collect())
            } else {
                Centers::Auto(point.iter().map(|p| parse_point(&d, p)).collect::<inproj::Result<_>>()?)
            };
            let chain = successive_project(&i, &centers, steps, !permissive)?;
            let mut text = String::new();
            for (k, (r, ideal)) in chain.reports.iter().zip(&chain.ideals[1..]).enumerate() {
                text.push_str(&format!(
                    "step {}: beta02 {} -> {}, delta {} -> {}, pd {} -> {}, smooth {}\n  ({})\n",
                    k + 1,
                    r.beta02_before,
                    r.beta02_after,
                    r.delta_before,
                    r.delta_after,
                    r.pd_before,
                    r.pd_after,
                    r.smooth,
                    gens_of(ideal).join(", ")
                ));
            }
            text.push_str(&format!(
                "delta constant on smooth steps: {}; quadric recursion: {}\n",
                chain.delta_constant, chain.quadric_recursion_ok
            ));
            let ideals: Vec<Vec<String>> = chain.ideals.iter().map(gens_of).collect();
            let mut v = serde_json::to_value(&chain).expect("serializable");
            v["ideals"] = json!(ideals);
            ctx.emit(text, v);
        }
        Command::Classify { doc } => {
            let d = ctx.load(&doc)?;
            let i = ctx.ideal(&d, &[MonomialOrder::GrevLex])?;
            let r = classify(&i)?;
            let text = format!(
                "verdict: {:?}\ndelta {}, codim {}, ACM {}, N2p level {}\n{}\n",
                r.verdict, r.delta, r.codim, r.acm, r.n2p_level, r.note
            );
            ctx.emit(text, serde_json::to_value(&r).expect("serializable"));
        }
        Command::Gen { kind, output } => {
            let kind: FixtureKind = kind.parse()?;
            let field = PrimeField::new(ctx.characteristic.unwrap_or(DEFAULT_CHAR))?;
            let doc = gen_variety_with(&kind, field)?;
            let text = if ctx.json {
                serde_json::to_string_pretty(&doc.to_json()).expect("serializable") + "\n"
            } else {
                doc.to_text()
            };
            match output {
                Some(p) => fs::write(p, text)?,
                None => print!("{text}"),
            }
        }
        Command::Verify { checks, segre_budget } => {
            let config = VerifyConfig {
                characteristic: ctx.characteristic.unwrap_or(DEFAULT_CHAR),
                segre_budget: Duration::from_secs(segre_budget),
                ..VerifyConfig::default()
            };
            let report = verify_suite(&checks, &config)?;
            ctx.emit(report.render(), report.to_json());
            if !report.all_passed() {
                let only_budget = report.checks.iter().filter(|c| c.status == inproj::verify::Status::Fail).all(|c| c.budget_exceeded);
                return Ok(if only_budget { 3 } else { 1 });
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(status_of(&e))
        }
    }
}
