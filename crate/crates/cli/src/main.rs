//! `symdiff`: construct and verify half-density families avoiding powers of
//! interval unions as symmetric differences.
//!
//! JSON goes to stdout (or `--out`), one-line summaries to stderr. Exit
//! status: 0 verified/constructed, 1 property violated, 2 usage or input
//! error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use symdiff_core::algebra_checks::{check_omega_identity, expand_valueset, verify_independence};
use symdiff_core::code_builder::{
    build_code, build_graph_code, graph_family_sweep, restrict_to_best_slice, sample_check,
    sweep_exhaustive, CodeCertificate, GraphCertificate, GraphParityCode, ParityCode,
};
use symdiff_core::interval_union::{
    count_by_boundary_sets, count_by_pascal, count_unions, enumerate_unions,
};
use symdiff_core::witness_walks::{bfs_bipartite, odd_closed_walk, verify_walk, Walk, WalkJson};
use symdiff_core::{Error, PointSet, ValueSet};

#[derive(Parser)]
#[command(name = "symdiff", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the parity code and emit its certificate.
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: usize,
        /// Defaults to ⌊d/2⌋.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a code or graph certificate.
    VerifyCode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rank of the inclusion matrix between I_k and the value sets.
    Rank {
        #[command(flatten)]
        params: Params,
        /// Include wall-clock time; the output is then no longer reproducible.
        #[arg(long)]
        timing: bool,
    },
    /// |I_k| by enumeration and by both closed forms.
    Counts {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
    },
    /// Check the signed ω-sum identity on given or random endpoints.
    LemmaOmega {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', requires = "l", conflicts_with = "random")]
        a: Option<Vec<u32>>,
        #[arg(long = "L", id = "l", value_delimiter = ',', requires = "a")]
        l: Option<Vec<usize>>,
        #[arg(long, required_unless_present = "a")]
        random: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit the odd closed walk for k > ⌊d/2⌋.
    OddWalk {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a walk file against I_k over [n]^d.
    VerifyWalk {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        params: Params,
    },
    /// Brute-force 2-colouring of the explicit graph.
    Bipartite {
        #[command(flatten)]
        params: Params,
    },
    /// Build the graph code and emit its certificate.
    GraphCode {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Express the indicator of V(T) as a GF(2) sum of powers.
    Expand {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: usize,
        #[arg(long = "T", value_delimiter = ',', required = true)]
        t: Vec<u32>,
    },
    /// Restrict a family to [N]^d along its most popular outside part.
    Restrict {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "N")]
        big_n: u32,
    },
}

#[derive(Args)]
struct Params {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: usize,
}

enum Failure {
    Usage(String),
    Violation(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::Inconsistent => {
                Failure::Violation(json!({ "error": e.to_string() }))
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Outcome {
    let text = serde_json::to_string_pretty(value).expect("serializable output") + "\n";
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Emits `value` and fails with exit status 1 unless `ok`.
fn verdict<T: Serialize>(value: &T, ok: bool) -> Outcome {
    if ok {
        emit(value, None)
    } else {
        Err(Failure::Violation(
            serde_json::to_value(value).expect("serializable output"),
        ))
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Exact integers beyond u64 are written as decimal strings.
fn big_json(x: &BigUint) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn construct(n: u32, d: usize, k: Option<usize>, out: Option<PathBuf>) -> Outcome {
    let k = k.unwrap_or(d / 2);
    let code = build_code(n, d, k)?;
    eprintln!(
        "constructed code n={n} d={d} k={k} with {} witness points",
        code.witness().len()
    );
    emit(&code.to_certificate(), out.as_deref())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Certificate {
    Code(CodeCertificate),
    Graph(GraphCertificate),
}

fn verify_code(input: &Path, exhaustive: bool, samples: Option<u64>, seed: u64) -> Outcome {
    match read_json::<Certificate>(input)? {
        Certificate::Code(cert) => {
            let code = ParityCode::from_certificate(&cert)?;
            let violations: Vec<String> = code
                .parity_violations()
                .iter()
                .map(ToString::to_string)
                .collect();
            let mut ok = violations.is_empty();
            let mut report = json!({
                "kind": "code",
                "n": cert.n,
                "d": cert.d,
                "k": cert.k,
                "witness_size": cert.witness_points.len(),
                "parity_violations": violations,
            });
            if exhaustive {
                let r = sweep_exhaustive(&code)?;
                ok &= r.violations == 0 && 2 * r.members == r.subsets;
                report["exhaustive"] = serde_json::to_value(&r).expect("serializable");
            }
            if let Some(samples) = samples {
                let r = sample_check(&code, samples, seed)?;
                ok &= r.violations == 0;
                report["sampled"] = json!({ "seed": seed, "report": r });
            }
            report["verified"] = ok.into();
            eprintln!(
                "code certificate {}",
                if ok { "verified" } else { "REJECTED" }
            );
            verdict(&report, ok)
        }
        Certificate::Graph(cert) => {
            if samples.is_some() {
                return Err(Failure::Usage(
                    "--samples applies to code certificates only".into(),
                ));
            }
            let code = GraphParityCode::from_certificate(&cert)?;
            let violations: Vec<[u32; 2]> = code
                .parity_violations()
                .iter()
                .map(|&(a, b)| [a, b])
                .collect();
            let mut ok = violations.is_empty();
            let mut report = json!({
                "kind": "graph",
                "n": cert.n,
                "witness_size": cert.witness_edges.len(),
                "parity_violations": violations,
            });
            if exhaustive {
                let r = graph_family_sweep(&code)?;
                ok &= r.forbidden_pairs == 0 && 2 * r.members == r.graphs;
                report["exhaustive"] = serde_json::to_value(&r).expect("serializable");
            }
            report["verified"] = ok.into();
            eprintln!(
                "graph certificate {}",
                if ok { "verified" } else { "REJECTED" }
            );
            verdict(&report, ok)
        }
    }
}

#[derive(Serialize)]
struct RankReport {
    rows: usize,
    cols: usize,
    rank: usize,
    independent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
}

fn rank(p: Params, timing: bool) -> Outcome {
    let r = verify_independence(p.n, p.d, p.k)?;
    let report = RankReport {
        rows: r.rows,
        cols: r.cols,
        rank: r.rank,
        independent: r.independent,
        elapsed_ms: r.elapsed_ms.filter(|_| timing),
    };
    eprintln!("{}x{} inclusion matrix, rank {}", r.rows, r.cols, r.rank);
    verdict(&report, r.independent)
}

/// Enumeration is skipped above this many unions.
const ENUMERATE_LIMIT: u64 = 1 << 22;

fn counts(n: u32, k: usize) -> Outcome {
    if n == 0 || k == 0 {
        return Err(Failure::Usage("need n >= 1 and k >= 1".into()));
    }
    let count = count_unions(n, k);
    let boundary = count_by_boundary_sets(n, k);
    let pascal = (2 * k <= n as usize).then(|| count_by_pascal(n, k));
    let enumerated = u64::try_from(&count)
        .ok()
        .filter(|&c| c <= ENUMERATE_LIMIT)
        .map(|_| enumerate_unions(n, k).len() as u64);
    let ok = boundary == count
        && pascal.as_ref().is_none_or(|p| *p == count)
        && enumerated.is_none_or(|e| count == e.into());
    let report = json!({
        "n": n,
        "k": k,
        "count": big_json(&count),
        "by_boundary_sets": big_json(&boundary),
        "by_pascal": pascal.as_ref().map(big_json),
        "enumerated": enumerated,
        "agree": ok,
    });
    eprintln!("|I_{k}| over [{n}] = {count}");
    verdict(&report, ok)
}

fn random_instance(n: u32, d: usize, rng: &mut ChaCha8Rng) -> (Vec<u32>, Vec<usize>) {
    let mut a: Vec<u32> = rand::seq::index::sample(rng, n as usize, d)
        .into_iter()
        .map(|x| x as u32 + 1)
        .collect();
    a.sort_unstable();
    let l = (1..=d).filter(|_| rng.gen_bool(0.5)).collect();
    (a, l)
}

fn lemma_omega(
    n: u32,
    d: usize,
    a: Option<Vec<u32>>,
    l: Option<Vec<usize>>,
    random: Option<u64>,
    seed: u64,
) -> Outcome {
    let instances = match (a, l, random) {
        (Some(a), Some(l), _) => vec![(a, l)],
        (_, _, Some(r)) => {
            if (n as usize) < d {
                return Err(Failure::Usage(format!(
                    "need n >= d for random endpoints, got n={n}, d={d}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..r).map(|_| random_instance(n, d, &mut rng)).collect()
        }
        _ => return Err(Failure::Usage("give --a and --L, or --random".into())),
    };
    let mut results = Vec::with_capacity(instances.len());
    for (a, l) in instances {
        let holds = check_omega_identity(n, d, &a, &l)?;
        results.push(json!({ "a": a, "L": l, "holds": holds }));
    }
    let ok = results.iter().all(|r| r["holds"] == true);
    eprintln!("omega identity checked on {} instance(s)", results.len());
    verdict(
        &json!({ "n": n, "d": d, "instances": results, "all_hold": ok }),
        ok,
    )
}

fn odd_walk(p: Params, out: Option<PathBuf>) -> Outcome {
    let walk = odd_closed_walk(p.n, p.d, p.k)?;
    if !verify_walk(&walk, p.n, p.d, p.k) {
        return Err(Failure::Violation(
            json!({ "error": "generated walk failed verification" }),
        ));
    }
    eprintln!("closed walk of length {}", walk.len());
    emit(&walk.to_json(), out.as_deref())
}

fn verify_walk_file(input: &Path, p: Params) -> Outcome {
    let json: WalkJson = read_json(input)?;
    let walk = Walk::from_json(&json, p.n, p.d)?;
    let valid = verify_walk(&walk, p.n, p.d, p.k);
    eprintln!("walk {}", if valid { "verified" } else { "REJECTED" });
    verdict(
        &json!({ "mode": json.mode, "length": walk.len(), "closed": walk.closed, "valid": valid }),
        valid,
    )
}

fn bipartite(p: Params) -> Outcome {
    let r = bfs_bipartite(p.n, p.d, p.k)?;
    let mut report = serde_json::to_value(r.summary(p.n, p.d, p.k)).expect("serializable");
    let mut ok = r
        .odd_cycle
        .as_ref()
        .is_none_or(|c| c.len() % 2 == 1 && verify_walk(c, p.n, p.d, p.k));
    // Below the threshold the colouring must agree with the parity code.
    if r.bipartite {
        if let Ok(code) = build_code(p.n, p.d, p.k) {
            let mut consistent = true;
            for v in 0..r.vertices {
                let root = u64::from(r.root[v as usize]);
                let mv = code.membership(&PointSet::from_word(p.n, p.d, v)?)?;
                let mr = code.membership(&PointSet::from_word(p.n, p.d, root)?)?;
                consistent &= (r.side[v as usize] == r.side[root as usize]) == (mv == mr);
            }
            report["consistent_with_code"] = consistent.into();
            ok &= consistent;
        }
    }
    eprintln!(
        "{} vertices, {} components, {}",
        r.vertices,
        r.components,
        if r.bipartite {
            "bipartite"
        } else {
            "not bipartite"
        }
    );
    verdict(&report, ok)
}

fn graph_code(n: u32, out: Option<PathBuf>) -> Outcome {
    let code = build_graph_code(n)?;
    eprintln!(
        "graph code on {n} vertices with {} witness edges",
        code.witness_edges().len()
    );
    emit(&code.to_certificate(), out.as_deref())
}

fn expand(n: u32, d: usize, t: Vec<u32>) -> Outcome {
    let t = ValueSet::new(t, n)?;
    let unions = expand_valueset(&t, n, d)?;
    eprintln!("V({t}) is a sum of {} powers", unions.len());
    emit(
        &json!({
            "n": n,
            "d": d,
            "T": t.elems(),
            "unions": unions.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "verified": true,
        }),
        None,
    )
}

#[derive(Deserialize)]
struct FamilyFile {
    n: u32,
    d: usize,
    family: Vec<Vec<Vec<u32>>>,
}

fn restrict(input: &Path, big_n: u32) -> Outcome {
    let file: FamilyFile = read_json(input)?;
    let family = file
        .family
        .iter()
        .map(|pts| PointSet::from_sparse(file.n, file.d, pts))
        .collect::<Result<Vec<_>, _>>()?;
    let slice = restrict_to_best_slice(&family, big_n)?;
    let ok = slice.density_not_decreased();
    eprintln!(
        "density {:.6} -> {:.6}",
        slice.family_density(),
        slice.subfamily_density()
    );
    verdict(
        &json!({
            "n": file.n,
            "d": file.d,
            "N": big_n,
            "outside": slice.outside.sparse(),
            "subfamily": slice.subfamily.iter().map(PointSet::sparse).collect::<Vec<_>>(),
            "family_size": slice.family_size,
            "family_density": slice.family_density(),
            "subfamily_density": slice.subfamily_density(),
            "density_not_decreased": ok,
        }),
        ok,
    )
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Construct { n, d, k, out } => construct(n, d, k, out),
        Command::VerifyCode {
            input,
            exhaustive,
            samples,
            seed,
        } => verify_code(&input, exhaustive, samples, seed),
        Command::Rank { params, timing } => rank(params, timing),
        Command::Counts { n, k } => counts(n, k),
        Command::LemmaOmega {
            n,
            d,
            a,
            l,
            random,
            seed,
        } => lemma_omega(n, d, a, l, random, seed),
        Command::OddWalk { params, out } => odd_walk(params, out),
        Command::VerifyWalk { input, params } => verify_walk_file(&input, params),
        Command::Bipartite { params } => bipartite(params),
        Command::GraphCode { n, out } => graph_code(n, out),
        Command::Expand { n, d, t } => expand(n, d, t),
        Command::Restrict { input, big_n } => restrict(&input, big_n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(diagnosis)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&diagnosis).expect("serializable output")
            );
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
