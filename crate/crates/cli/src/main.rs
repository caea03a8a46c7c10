use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use torelli_core::catalog::{load_or_build, validate_catalog};
use torelli_core::commutator::{rewrite, OrderedBasisContext};
use torelli_core::genset::{build, johnson_bound, theorem_bound, Variant, CLAIM};
use torelli_core::handle_graph::{build_instance_by_name, connectivity};
use torelli_core::johnson::{closed_tau_span_rank, curated_family, lambda3_dim, tau, tau_span_rank};
use torelli_core::verify::run_suite;
use torelli_core::{FreeAutomorphism, Word};

const SCHEMA: &str = "torelli-cli/1";

#[derive(Parser)]
#[command(name = "torelli", version, about = "Torelli group generating sets and the algebra behind them")]
struct Cli {
    /// Emit JSON on stdout
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Theorem and Johnson generating-set bounds
    Counts {
        #[arg(long)]
        genus: usize,
    },
    /// Emit the generating set
    Gens {
        #[arg(long)]
        genus: usize,
        /// One boundary component instead of a closed surface
        #[arg(long)]
        boundary: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print both bound formulas
        #[arg(long)]
        compare_johnson: bool,
        /// Include homology matrices in the JSON
        #[arg(long)]
        matrices: bool,
    },
    /// Curve catalog tools
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Factor a commutator-subgroup word in the Tomaszewski basis
    Rewrite {
        #[arg(long)]
        rank: usize,
        /// Comma-separated letter indices, e.g. "3,4,1,2"
        #[arg(long)]
        order: Option<String>,
        /// Re-multiply the factorization and report the check
        #[arg(long)]
        verify: bool,
        /// Word such as "a1 b1 A1 B1" or "x1 x2 X1 X2"
        word: String,
    },
    /// Johnson homomorphism tools
    Johnson {
        #[command(subcommand)]
        cmd: JohnsonCmd,
    },
    /// Handle graph instance from the catalog
    HandleGraph {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Alternating path between two curves
        #[arg(long, num_args = 2, value_names = ["FROM", "TO"])]
        path: Option<Vec<String>>,
    },
    /// Run every check suite
    VerifyAll {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        /// Exponent bound for the case-identity box
        #[arg(long, default_value_t = 2)]
        case_bound: i64,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    Validate {
        #[arg(long)]
        genus: usize,
    },
    Export {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum JohnsonCmd {
    /// τ-span rank of the curated bounding-pair family
    Rank {
        #[arg(long)]
        genus: usize,
        /// Rank in the closed quotient Λ³H/H
        #[arg(long)]
        closed: bool,
    },
}

enum Outcome {
    Ok(Value, String),
    Failed(Value, String),
    Usage(String),
}

fn usage(e: impl std::fmt::Display) -> Outcome {
    Outcome::Usage(e.to_string())
}

fn counts(genus: usize) -> Outcome {
    let (Ok(tc), Ok(tb), Ok(jc), Ok(jb)) = (
        theorem_bound(genus, Variant::Closed),
        theorem_bound(genus, Variant::OneBoundary),
        johnson_bound(genus, Variant::Closed),
        johnson_bound(genus, Variant::OneBoundary),
    ) else {
        return usage(format!("genus must be at least 3, got {genus}"));
    };
    let v = json!({
        "schema": SCHEMA, "genus": genus,
        "theorem_bound": {"closed": tc, "one_boundary": tb},
        "johnson_bound": {"closed": jc.to_string(), "one_boundary": jb.to_string()},
    });
    let text = format!("genus {genus}\ntheorem bound: {tc} (one boundary: {tb})\njohnson bound: {jc} (one boundary: {jb})");
    Outcome::Ok(v, text)
}

fn gens(genus: usize, boundary: bool, out: Option<PathBuf>, compare: bool, matrices: bool) -> Outcome {
    let variant = if boundary { Variant::OneBoundary } else { Variant::Closed };
    let set = match build(genus, variant) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let check = set.check(genus <= 8);
    let mut doc = set.to_json(matrices);
    if compare {
        doc["johnson_bound"] = json!(johnson_bound(genus, variant).unwrap().to_string());
    }
    doc["check"] = json!(check);
    let mut text = format!(
        "genus {genus} {variant:?}: {} descriptors over {} triples, bound {}, {} materialized\n{CLAIM}",
        set.total(),
        set.triples.len(),
        set.bound,
        check.materialized
    );
    if compare {
        text.push_str(&format!("\ntheorem bound {} vs johnson bound {}", set.bound, doc["johnson_bound"].as_str().unwrap()));
    }
    if let Some(p) = out {
        if let Err(e) = std::fs::write(&p, serde_json::to_string_pretty(&doc).unwrap() + "\n") {
            return usage(format!("cannot write {}: {e}", p.display()));
        }
        text.push_str(&format!("\nwritten to {}", p.display()));
        let summary = json!({"schema": SCHEMA, "genus": genus, "variant": variant, "bound": set.bound,
                             "total": set.total(), "claim": CLAIM, "out": p.display().to_string(), "check": check});
        doc = summary;
    }
    if check.passed() {
        Outcome::Ok(doc, text)
    } else {
        Outcome::Failed(doc, text)
    }
}

fn catalog_cmd(cmd: CatalogCmd) -> Outcome {
    match cmd {
        CatalogCmd::Validate { genus } => {
            let cat = match load_or_build(genus) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let r = validate_catalog(&cat);
            let fails = r.all_failures();
            let v = json!({"schema": SCHEMA, "genus": genus, "curves": r.curves,
                           "twists": r.twist_reports.len(), "extra_checks": r.extra_checks, "failures": fails});
            let text = format!("genus {genus}: {} curves, {} twists, {} failures", r.curves, r.twist_reports.len(), fails.len());
            if r.passed() {
                Outcome::Ok(v, text)
            } else {
                Outcome::Failed(v, format!("{text}\n{}", fails.join("\n")))
            }
        }
        CatalogCmd::Export { genus, out } => {
            let cat = match load_or_build(genus) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let s = cat.to_json();
            match out {
                Some(p) => match std::fs::write(&p, s + "\n") {
                    Ok(()) => Outcome::Ok(json!({"schema": SCHEMA, "genus": genus, "out": p.display().to_string()}),
                                          format!("written to {}", p.display())),
                    Err(e) => usage(format!("cannot write {}: {e}", p.display())),
                },
                None => {
                    let v: Value = serde_json::from_str(&s).unwrap();
                    Outcome::Ok(v, s)
                }
            }
        }
    }
}

fn rewrite_cmd(rank: usize, order: Option<String>, verify: bool, word: &str) -> Outcome {
    let w = match Word::parse(word) {
        Ok(w) => w,
        Err(e) => return usage(e),
    };
    let ctx = match order {
        Some(o) => match OrderedBasisContext::parse(rank, &o) {
            Ok(c) => c,
            Err(e) => return usage(e),
        },
        None => OrderedBasisContext::standard(rank),
    };
    match rewrite(&w, &ctx) {
        Ok(f) => {
            let mut v = json!({"schema": SCHEMA, "rank": rank, "order": ctx.order(), "word": w.to_x_string(),
                               "factors": f.elements});
            let mut text: Vec<String> = f.elements.iter().map(|e| e.to_string()).collect();
            if verify {
                let ok = f.product(&ctx) == w;
                v["verified"] = json!(ok);
                text.push(format!("verified: {ok}"));
                if !ok {
                    return Outcome::Failed(v, text.join("\n"));
                }
            }
            Outcome::Ok(v, text.join("\n"))
        }
        Err(e) => usage(e),
    }
}

fn johnson_rank(genus: usize, closed: bool) -> Outcome {
    let cat = match load_or_build(genus) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let (label, fam): (&str, Vec<FreeAutomorphism>) = match curated_family(&cat) {
        Ok(f) => ("curated", f.into_iter().map(|x| x.1).collect()),
        Err(_) => {
            let bps = cat.bounding_pairs();
            let fam = bps.iter().map(|(a, b)| cat.bounding_pair(a, b)).collect::<Result<Vec<_>, _>>();
            match fam {
                Ok(f) => ("catalog_bounding_pairs", f),
                Err(e) => return usage(e),
            }
        }
    };
    let rank = match tau_span_rank(&fam) {
        Ok(r) => r,
        Err(e) => return Outcome::Failed(json!({"error": e.to_string()}), e.to_string()),
    };
    let mut v = json!({"schema": SCHEMA, "genus": genus, "family": label, "size": fam.len(),
                       "rank": rank, "lambda3_dim": lambda3_dim(genus),
                       "claim": "necessary-condition certificate; free part only"});
    let mut text = format!("genus {genus} {label} family of {}: τ-span rank {rank} of {}", fam.len(), lambda3_dim(genus));
    if closed {
        let taus: Vec<_> = fam.iter().filter_map(|f| tau(f).ok()).collect();
        let cr = closed_tau_span_rank(&taus);
        let dim = lambda3_dim(genus) - 2 * genus;
        v["closed_rank"] = json!(cr);
        v["closed_dim"] = json!(dim);
        text.push_str(&format!("\nclosed quotient rank {cr} of {dim}"));
    }
    Outcome::Ok(v, text)
}

fn handle_graph_cmd(genus: usize, a: &str, b: &str, path: Option<Vec<String>>) -> Outcome {
    let cat = match load_or_build(genus) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let inst = match build_instance_by_name(&cat, a, b) {
        Ok(i) => i,
        Err(e) => return usage(e),
    };
    let c = connectivity(&inst);
    let bad: Vec<_> = c.certificates.iter().filter(|p| !inst.verify_certificate(p)).collect();
    let names = |vs: &[usize]| -> Vec<String> { vs.iter().map(|&k| inst.vertices[k].curve.clone()).collect() };
    let mut v = json!({"schema": SCHEMA, "genus": genus, "a": a, "b": b, "instance": inst,
                       "components": c.components.len(), "certificates": c.certificates.len(),
                       "certificates_verified": bad.is_empty()});
    let mut text = format!(
        "H({a},{b}) genus {genus}: {} vertices, {} edges, {} component(s), {} certificates",
        inst.vertices.len(),
        inst.edges.len(),
        c.components.len(),
        c.certificates.len()
    );
    if let Some(p) = path {
        let (from, to) = match (inst.index_of(&p[0]), inst.index_of(&p[1])) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(e), _) | (_, Err(e)) => return usage(e),
        };
        match inst.path(from, to) {
            Some(cert) => {
                let ns = names(&cert.vertices);
                text.push_str(&format!("\npath: {}", ns.join(", ")));
                v["path"] = json!(ns);
            }
            None => {
                v["path"] = Value::Null;
                return Outcome::Failed(v, format!("{text}\nno path from {} to {}", p[0], p[1]));
            }
        }
    }
    if bad.is_empty() {
        Outcome::Ok(v, text)
    } else {
        Outcome::Failed(v, text)
    }
}

fn verify_all(genus: usize, seed: u64, threads: Option<usize>, case_bound: i64) -> Outcome {
    if genus < 2 {
        return usage("genus must be at least 2");
    }
    if let Some(t) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            return usage(e);
        }
    }
    let r = run_suite(genus, seed, case_bound);
    let text: Vec<String> = r
        .checks
        .iter()
        .map(|c| format!("[{}] {} {}", if c.passed { "PASS" } else { "FAIL" }, c.criterion, c.name))
        .collect();
    let v = json!({"schema": SCHEMA, "report": r});
    if r.passed {
        Outcome::Ok(v, text.join("\n"))
    } else {
        Outcome::Failed(v, text.join("\n"))
    }
}

// a closed pipe (`| head`) is not an error
fn out(s: &str) {
    let mut o = std::io::stdout().lock();
    let _ = writeln!(o, "{s}").and_then(|_| o.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Counts { genus } => counts(genus),
        Cmd::Gens { genus, boundary, out, compare_johnson, matrices } => gens(genus, boundary, out, compare_johnson, matrices),
        Cmd::Catalog { cmd } => catalog_cmd(cmd),
        Cmd::Rewrite { rank, order, verify, word } => rewrite_cmd(rank, order, verify, &word),
        Cmd::Johnson { cmd: JohnsonCmd::Rank { genus, closed } } => johnson_rank(genus, closed),
        Cmd::HandleGraph { genus, a, b, path } => handle_graph_cmd(genus, &a, &b, path),
        Cmd::VerifyAll { genus, seed, threads, case_bound } => verify_all(genus, seed, threads, case_bound),
    };
    let emit = |v: &Value, text: &str| {
        if cli.json {
            out(&serde_json::to_string_pretty(v).unwrap());
        } else {
            out(text);
        }
    };
    match outcome {
        Outcome::Ok(v, text) => {
            emit(&v, &text);
            ExitCode::SUCCESS
        }
        Outcome::Failed(v, text) => {
            // failure reports are JSON regardless of --json
            if cli.json {
                emit(&v, &text);
            } else {
                eprintln!("{text}");
                out(&serde_json::to_string_pretty(&v).unwrap());
            }
            ExitCode::from(1)
        }
        Outcome::Usage(msg) => {
            if cli.json {
                out(&json!({"schema": SCHEMA, "error": msg}).to_string());
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
