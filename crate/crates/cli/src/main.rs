use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use cremona_core::algebra::mpoly::default_names;
use cremona_core::algebra::{MPoly, PrimeField, RatFn, Rational};
use cremona_core::birmap::{Point, ProjMap};
use cremona_core::deform::{deformation_family, normal_derivative, normal_split};
use cremona_core::jonquieres::{det_class, extract, in_j1, is_in_jn};
use cremona_core::oracle::{probably_equal, OracleConfig};
use cremona_core::paths::{connect_to_identity, verify_path, ConnectOptions};
use cremona_core::simplicity::{noether_check, simplicity_pipeline, Checks, SimplicityOptions};
use cremona_core::text::{
    artifact, format_jonq, from_artifact, map_to_json, parse_affine, parse_certified, parse_map,
    parse_point, parse_rational_arg, PathArtifact, Parsed,
};

/// Birational maps of projective space: composition, inversion, normal
/// derivatives, paths to the identity and normal-closure constructions.
#[derive(Parser)]
#[command(name = "cremona", version)]
struct Cli {
    /// `q` for exact arithmetic, `fp:<prime>` for evaluation mod a prime.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 5)]
    trials: usize,
    /// Structured output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// f ∘ g.
    Compose { f: String, g: String },
    /// Inverse from a certificate or an inversion rule.
    Inverse { f: String },
    /// Evaluate at a point `(a0 : ... : an)`.
    Eval { f: String, point: String },
    /// Normal derivative along y = 0 of an affine map (y the last coordinate).
    Nder { f: String },
    /// The deformation family at a parameter.
    Deform {
        f: String,
        #[arg(long)]
        t: String,
    },
    /// Square class of the fiber determinant of a de Jonquières element.
    Detclass { e: String },
    /// Construct a path from the identity to a certified map.
    Path {
        #[arg(long)]
        to: String,
        /// Write the path artifact (JSON) here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a path artifact: exact endpoints and random-parameter inverse checks.
    VerifyPath { file: PathBuf },
    /// From h, build a nontrivial fiberwise element of its normal closure.
    SimplicityDemo {
        #[arg(long)]
        h: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// The plane generator identities.
    NoetherCheck,
    /// Randomized equality of two maps.
    OracleEqual { f: String, g: String },
}

enum Field {
    Exact,
    Prime(PrimeField),
}

fn parse_field(s: &str) -> Result<Field> {
    if s == "q" {
        return Ok(Field::Exact);
    }
    let p = s
        .strip_prefix("fp:")
        .ok_or_else(|| anyhow!("--field expects q or fp:<prime>"))?
        .parse::<u64>()
        .context("prime modulus")?;
    Ok(Field::Prime(PrimeField::new(p).ok_or_else(|| anyhow!("{p} is not a usable prime"))?))
}

/// Rational functions print in the affine variables `x1, x2, ...`.
fn show(r: &RatFn) -> String {
    r.display_with(&default_names(r.nvars(), 1)).to_string()
}

fn show_poly(p: &MPoly) -> String {
    p.display_with(&default_names(p.nvars(), 1)).to_string()
}

fn checks_json(c: &Checks) -> Value {
    Value::Array(c.0.iter().map(|(n, ok)| json!({"check": n, "passed": ok})).collect())
}

fn print_checks(c: &Checks) {
    for (name, ok) in &c.0 {
        println!("  [{}] {name}", if *ok { "ok" } else { "FAIL" });
    }
}

fn run(cli: Cli) -> Result<bool> {
    let field = parse_field(&cli.field)?;
    if cli.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let oracle_cfg = |f: &Field| -> OracleConfig {
        let field = match f {
            Field::Prime(p) => *p,
            Field::Exact => PrimeField::default_oracle(),
        };
        OracleConfig {
            field,
            trials: cli.trials,
            seed: cli.seed,
        }
    };
    match cli.cmd {
        Command::Compose { f, g } => {
            let h = parse_certified(&f)?.compose(&parse_certified(&g)?)?;
            if cli.json {
                println!("{}", json!({"map": map_to_json(&h), "text": h.to_string()}));
            } else {
                println!("{h}");
            }
        }
        Command::Inverse { f } => {
            let g = parse_certified(&f)?.invert()?;
            if cli.json {
                println!("{}", json!({"map": map_to_json(&g), "text": g.to_string()}));
            } else {
                println!("{g}");
            }
        }
        Command::Eval { f, point } => {
            let f = parse_certified(&f)?;
            let coords = parse_point(&point)?;
            match field {
                Field::Exact => {
                    let img = f.evaluate(&Point::new(coords)?)?;
                    if cli.json {
                        let c: Vec<String> = img.coords().iter().map(|c| c.to_string()).collect();
                        println!("{}", json!({"image": c, "text": img.to_string()}));
                    } else {
                        println!("{img}");
                    }
                }
                Field::Prime(p) => {
                    let x: Vec<u64> = coords
                        .iter()
                        .map(|c| p.from_rational(c).ok_or_else(|| anyhow!("coordinate does not reduce mod p")))
                        .collect::<Result<_>>()?;
                    let img = f.eval_fp(&p, &x).ok_or_else(|| anyhow!("a coefficient does not reduce mod p"))?;
                    if img.iter().all(|&c| c == 0) {
                        bail!("point lies in the base locus");
                    }
                    if cli.json {
                        println!("{}", json!({"image": img, "modulus": p.modulus()}));
                    } else {
                        let s: Vec<String> = img.iter().map(|c| c.to_string()).collect();
                        println!("({}) mod {}", s.join(" : "), p.modulus());
                    }
                }
            }
        }
        Command::Nder { f } => {
            let f = parse_affine(&f)?;
            let split = normal_split(&f)?;
            let f0 = normal_derivative(&f)?;
            let jonq = is_in_jn(&f0);
            if cli.json {
                println!(
                    "{}",
                    json!({"f0": f0.to_string(), "g_y": show(&split.gy), "in_jn": jonq})
                );
            } else {
                println!("f0 = {f0}");
                println!("g_Y = {}", show(&split.gy));
                println!("de Jonquieres: {jonq}");
                if let Ok(e) = extract(&f0) {
                    println!("element: {}", format_jonq(&e));
                }
            }
        }
        Command::Deform { f, t } => {
            let f = parse_affine(&f)?;
            let t0: Rational = parse_rational_arg(&t)?;
            let ft = deformation_family(&f)?;
            let g = normal_split(&f)?.specialize(&t0);
            let proj = ft.specialize(&t0)?;
            if cli.json {
                println!("{}", json!({"t": t0.to_string(), "affine": g.to_string(), "map": map_to_json(&proj)}));
            } else {
                println!("F({t0}) = {g}");
            }
        }
        Command::Detclass { e } => {
            let e = match parse_map(&e)? {
                Parsed::Jonq(e) => e,
                Parsed::Affine(f) => extract(&f)?,
                Parsed::Proj(f) => extract(&f.to_affine()?)?,
            };
            let class = det_class(e.fiber());
            let rep = show_poly(class.representative());
            let trivial = in_j1(e.fiber());
            if cli.json {
                println!("{}", json!({"class": rep, "trivial": trivial, "det": show(&e.fiber().det())}));
            } else {
                println!("det = {}", show(&e.fiber().det()));
                println!("square class = [{rep}] (trivial: {trivial})");
            }
        }
        Command::Path { to, out } => {
            let g = parse_certified(&to)?;
            let opts = ConnectOptions {
                seed: cli.seed,
                ..Default::default()
            };
            let p = connect_to_identity(&g, &opts)?;
            let id = ProjMap::identity(g.dim());
            let art = artifact(&p, &id, &g);
            let text = serde_json::to_string_pretty(&art)?;
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                    if cli.json {
                        println!("{}", json!({"written": path.display().to_string(), "nodes": p.size()}));
                    } else {
                        println!("path with {} nodes written to {}", p.size(), path.display());
                        println!("exclusion: {}", p.exclusion().display_with(&["t".to_string()]));
                    }
                }
                None => println!("{text}"),
            }
        }
        Command::VerifyPath { file } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let art: PathArtifact = serde_json::from_str(&text).context("parsing path artifact")?;
            let (p, start, end) = from_artifact(&art)?;
            let rep = verify_path(&p, &start, &end, cli.trials, cli.seed);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "passed": rep.passed(),
                        "endpoint0": rep.endpoint0,
                        "endpoint1": rep.endpoint1,
                        "trials": rep.trials_requested,
                        "trials_passed": rep.trials_passed,
                        "failures": rep.failures,
                    })
                );
            } else {
                println!("endpoint t=0: {}", if rep.endpoint0 { "ok" } else { "FAIL" });
                println!("endpoint t=1: {}", if rep.endpoint1 { "ok" } else { "FAIL" });
                println!("inverse checks: {}/{}", rep.trials_passed, rep.trials_requested);
                for f in &rep.failures {
                    println!("  {f}");
                }
                println!("{}", if rep.passed() { "PASS" } else { "FAIL" });
            }
            return Ok(rep.passed());
        }
        Command::SimplicityDemo { h, n } => {
            let h = match h {
                Some(text) => parse_certified(&text)?,
                None => ProjMap::standard_involution(n),
            };
            if h.dim() != n {
                bail!("--h has dimension {} but --n is {n}", h.dim());
            }
            let opts = SimplicityOptions {
                seed: cli.seed,
                ..Default::default()
            };
            let run = simplicity_pipeline(&h, &opts)?;
            let ok = run.checks.all_passed();
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "h": h.to_string(),
                        "p": run.standardized.p.to_string(),
                        "q": run.standardized.q.to_string(),
                        "h_std": run.standardized.h_std.to_string(),
                        "lambda": run.fixing.lambda,
                        "g": run.fixing.g.to_string(),
                        "word_g": run.fixing.word.to_string(),
                        "tangent": run.fixing.tangent.to_string(),
                        "f": run.descent.f.to_string(),
                        "restriction": run.descent.restriction.to_string(),
                        "f0": format_jonq(&run.descent.f0),
                        "beta": run.commutator.beta.to_string(),
                        "r": format_jonq(&run.commutator.r),
                        "checks": checks_json(&run.checks),
                        "passed": ok,
                    })
                );
            } else {
                println!("h = {h}");
                println!("p = {}, q = h(p) = {}", run.standardized.p, run.standardized.q);
                println!("h' = {}", run.standardized.h_std);
                println!("lambda = {}", run.fixing.lambda);
                println!("g = {}", run.fixing.g);
                println!("  word: {}", run.fixing.word);
                println!("  tangent action at p: {}", run.fixing.tangent);
                println!("f = sigma g sigma = {}", run.descent.f);
                println!("  restriction to H0: {}", run.descent.restriction);
                println!("f0 = {}", format_jonq(&run.descent.f0));
                println!("beta = {}", run.commutator.beta);
                println!("r = {}", format_jonq(&run.commutator.r));
                print_checks(&run.checks);
                println!("{}", if ok { "PASS" } else { "FAIL" });
            }
            return Ok(ok);
        }
        Command::NoetherCheck => {
            let c = noether_check();
            if cli.json {
                println!("{}", json!({"checks": checks_json(&c), "passed": c.all_passed()}));
            } else {
                print_checks(&c);
            }
            return Ok(c.all_passed());
        }
        Command::OracleEqual { f, g } => {
            let f = parse_certified(&f)?;
            let g = parse_certified(&g)?;
            let (equal, how) = match field {
                Field::Exact => (f == g, "exact".to_string()),
                Field::Prime(_) => {
                    let cfg = oracle_cfg(&field);
                    (probably_equal(&f, &g, &cfg)?, format!("fp:{} trials={}", cfg.field.modulus(), cfg.trials))
                }
            };
            if cli.json {
                println!("{}", json!({"equal": equal, "method": how}));
            } else {
                println!("{equal} ({how})");
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
