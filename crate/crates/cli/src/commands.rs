use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use elliptope::certificates::{replay_counterexample, Which};
use elliptope::oracle::{brute_force_maxcut, exact_sum_decision};
use elliptope::rational::{format_rational, parse_rational};
use elliptope::recognizer::{
    build_hardness_instance, kpartite_exact_maxcut, kpartite_exactness, recognize_complement_core,
    verify_split_decomposable, KpartiteVerdict, SplitDecompVerdict, SplitDecompWitness,
};
use elliptope::sdp::{exactness_numeric, solve_phi_with, ExactnessVerdict, SolverOptions};
use elliptope::suite::{run_suite, SuiteName, SuiteReport};
use elliptope::{corpus, ops, Graph};
use serde_json::{json, Value};

use crate::{GenFamily, Outcome};

pub struct Options {
    pub tol: f64,
    pub seed: u64,
}

impl Options {
    fn solver(&self) -> SolverOptions {
        SolverOptions {
            seed: self.seed,
            ..SolverOptions::with_tol(self.tol)
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn positive(doc: Value, text: String) -> Result<Outcome> {
    Ok(Outcome {
        doc,
        text,
        negative: false,
    })
}

/// Reads an edge-list file, falling back to the built-in corpus by name.
pub fn load_graph(spec: &str) -> Result<Graph> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return Graph::parse_edge_list(&text).with_context(|| format!("parsing {spec}"));
    }
    corpus::load(spec).with_context(|| format!("`{spec}` is neither a file nor a corpus entry"))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn generate(family: &GenFamily) -> Result<Outcome> {
    let g = match family {
        GenFamily::Join { a, b } => ops::join(&load_graph(a)?, &load_graph(b)?),
        GenFamily::Lex { a, b } => ops::lex_product(&load_graph(a)?, &load_graph(b)?),
        GenFamily::Split { graph, p } => {
            let spec = ops::SplitSpec::new(p.clone())?;
            ops::split(&load_graph(graph)?, &spec)?.0
        }
        GenFamily::Kpartite { parts } => ops::complete_kpartite(parts)?,
        GenFamily::Wcomplete { masses } => {
            let m = masses
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()?;
            ops::complete_weighted(&m)?
        }
        GenFamily::Cycle { n } => ops::cycle(*n)?,
        GenFamily::Path { n } => ops::path(*n)?,
        GenFamily::Complete { n } => ops::complete(*n)?,
        GenFamily::Edgeless { n } => ops::edgeless(*n)?,
        GenFamily::Complement { graph } => load_graph(graph)?.complement()?,
    };
    positive(to_value(&g), g.to_edge_list())
}

pub fn maxcut(graph: &str, all_cuts: bool) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let r = brute_force_maxcut(&g)?;
    let mut doc = json!({
        "n": g.n(),
        "maxcut": format_rational(&r.value),
        "optimal_partitions": r.count,
        "unique": r.is_unique(),
    });
    let shown: Vec<String> = if all_cuts {
        r.optimal_cuts.iter().map(|p| p.to_string()).collect()
    } else {
        r.optimal_cuts.iter().take(1).map(|p| p.to_string()).collect()
    };
    doc["cuts"] = to_value(&shown);
    let mut text = format!("maxcut {}\noptimal partitions {}\n", format_rational(&r.value), r.count);
    for c in &shown {
        let _ = writeln!(text, "cut {c}");
    }
    positive(doc, text)
}

pub fn phi(graph: &str, opts: &Options) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let r = solve_phi_with(&g, &opts.solver())?;
    let text = format!(
        "phi {:.10}\nprimal {:.10}\ngap {:.3e}\niterations {}\n",
        r.phi, r.primal_value, r.gap, r.iterations
    );
    positive(to_value(&r), text)
}

pub fn exactness(graph: &str, opts: &Options) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let r = exactness_numeric(&g, opts.tol)?;
    let (label, negative) = match r.verdict {
        ExactnessVerdict::ExactWithin { .. } => ("exact", false),
        ExactnessVerdict::GapAtLeast { .. } => ("gap", true),
        ExactnessVerdict::Undecided { .. } => bail!(
            "solver value {} lies below the maximum cut {} beyond the band {:.3e}",
            r.phi,
            format_rational(&r.maxcut),
            r.band
        ),
    };
    let text = format!(
        "verdict {label}\nphi {:.10}\nmaxcut {}\ngap {:.6}\n",
        r.phi,
        format_rational(&r.maxcut),
        r.delta
    );
    Ok(Outcome {
        doc: to_value(&r),
        text,
        negative,
    })
}

pub fn recognize(graph: &str) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let r = recognize_complement_core(&g)?;
    let text = match (&r.value, &r.cut) {
        (Some(v), Some(c)) => format!("matched ({:?})\nvalue {}\ncut {c}\n", r.reason, format_rational(v)),
        _ => format!("declined ({:?})\n", r.reason),
    };
    Ok(Outcome {
        doc: to_value(&r),
        negative: !r.matched,
        text,
    })
}

fn sorted_parts(parts: &[usize]) -> Result<Vec<usize>> {
    if parts.is_empty() {
        bail!("expected a comma-separated list of part sizes");
    }
    let mut a = parts.to_vec();
    a.sort_unstable();
    Ok(a)
}

pub fn kpartite(parts: &[usize]) -> Result<Outcome> {
    let a = sorted_parts(parts)?;
    let v = kpartite_exactness(&a)?;
    let mc = kpartite_exact_maxcut(&a, &v);
    let doc = json!({
        "parts": a,
        "verdict": to_value(&v),
        "maxcut": mc.as_ref().map(format_rational),
    });
    let mut text = format!("{v:?}\n");
    if let Some(m) = &mc {
        let _ = writeln!(text, "maxcut {}", format_rational(m));
    }
    Ok(Outcome {
        doc,
        text,
        negative: v == KpartiteVerdict::NotExact,
    })
}

pub fn hardness(parts: &[usize], emit_graph: bool) -> Result<Outcome> {
    let g = build_hardness_instance(parts)?;
    if emit_graph {
        return positive(to_value(&g), g.to_edge_list());
    }
    let ints: Vec<u64> = parts.iter().map(|&x| x as u64).collect();
    let subset = exact_sum_decision(&ints)?;
    let a = sorted_parts(parts)?;
    let verdict = kpartite_exactness(&a)?;
    let doc = json!({
        "parts": parts,
        "n": g.n(),
        "edges": g.edge_count(),
        "exact_sum": subset.is_some(),
        "subset": subset,
        "kpartite": to_value(&verdict),
    });
    let text = format!(
        "instance K({}) on {} vertices, {} edges\nexact sum {}\nverdict {verdict:?}\n",
        parts.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
        g.n(),
        g.edge_count(),
        if subset.is_some() { "yes" } else { "no" },
    );
    Ok(Outcome {
        doc,
        text,
        negative: subset.is_none(),
    })
}

pub fn verify_decomp(graph: &str, witness: &Path) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let w: SplitDecompWitness = read_json(witness)?;
    let v = verify_split_decomposable(&g, &w, None);
    let text = match &v {
        SplitDecompVerdict::Accepted {
            maxcut,
            skeleton_maxcut,
            route,
        } => format!(
            "accepted via {route:?}\nskeleton maxcut {}\nmaxcut {}\n",
            format_rational(skeleton_maxcut),
            format_rational(maxcut)
        ),
        SplitDecompVerdict::Rejected { reason, detail } => format!("rejected: {reason:?}\n{detail}\n"),
    };
    Ok(Outcome {
        doc: to_value(&v),
        negative: !v.is_accepted(),
        text,
    })
}

pub fn counterexample(which: u8) -> Result<Outcome> {
    let which = if which == 1 { Which::One } else { Which::Two };
    let r = replay_counterexample(which)?;
    let fmt_list = |v: &[elliptope::Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(", ");
    let mut text = format!(
        "masses ({})\nmaxcut {} with {} optimal partition(s)\nZ objective {}, rank {}\n",
        fmt_list(&r.masses),
        format_rational(&r.maxcut),
        r.partition_count,
        format_rational(&r.objective),
        r.z_rank
    );
    let _ = writeln!(text, "decomposition coefficients ({})", fmt_list(&r.coefficients));
    let _ = writeln!(text, "d' = ({})", fmt_list(&r.d_prime));
    let _ = writeln!(text, "{}", if r.passed { "passed" } else { "FAILED" });
    Ok(Outcome {
        doc: to_value(&r),
        negative: !r.passed,
        text,
    })
}

pub fn suite(name: &str, opts: &Options) -> Result<Outcome> {
    let names: Vec<SuiteName> = if name == "all" {
        SuiteName::ALL.to_vec()
    } else {
        vec![name.parse().map_err(anyhow::Error::msg)?]
    };
    let reports: Vec<SuiteReport> = names.iter().map(|&n| run_suite(n, &opts.solver())).collect();
    let mut text = String::new();
    for r in &reports {
        for c in &r.cases {
            let _ = writeln!(text, "[{}] {} {}", if c.passed { "pass" } else { "FAIL" }, r.name, c.name);
        }
        let _ = writeln!(text, "{}: {}/{} pass", r.name, r.passed, r.total);
    }
    let negative = reports.iter().any(|r| r.passed != r.total);
    let doc = if reports.len() == 1 {
        to_value(&reports[0])
    } else {
        to_value(&reports)
    };
    Ok(Outcome { doc, text, negative })
}
