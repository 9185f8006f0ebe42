use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use elliptope::certificates::{
    cert_from_cut, cert_join_balanced, cert_join_unbalanced, cert_nondominating, lift_lex,
    lift_split_certificate, verify_certificate, Certificate,
};
use elliptope::oracle::brute_force_maxcut;
use elliptope::rational::{format_rational, sqrt_exact};
use elliptope::{ops, Graph, Rational, SymMatrix};
use serde::Deserialize;
use serde_json::json;

use crate::commands::{load_graph, read_json};
use crate::{Method, Outcome};

/// Largest number of complement components searched for a join split.
const COMPONENT_SEARCH_CAP: usize = 20;

#[derive(Deserialize)]
struct JoinWitness {
    side_a: Vec<usize>,
}

#[derive(Deserialize)]
struct MassWitness {
    #[serde(with = "elliptope::rational::serde_str::vec")]
    m: Vec<Rational>,
}

#[derive(Deserialize)]
struct LexWitness {
    g1: Graph,
    g2: Graph,
}

#[derive(Deserialize)]
struct SplitWitness {
    base: Graph,
    p: Vec<usize>,
}

pub fn run(graph: &str, method: Method, witness: Option<&Path>, dump: bool) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let cert = match method {
        Method::JoinBalanced | Method::JoinUnbalanced => {
            let balanced = matches!(method, Method::JoinBalanced);
            let side_a = match witness {
                Some(p) => Some(read_json::<JoinWitness>(p)?.side_a),
                None => None,
            };
            join_certificate(&g, side_a, balanced)?
        }
        Method::Nondominating => {
            let m = match witness {
                Some(p) => read_json::<MassWitness>(p)?.m,
                None => recover_masses(&g)?,
            };
            if ops::complete_weighted(&m)? != g {
                bail!("graph is not the complete graph weighted by m_i m_j");
            }
            cert_nondominating(&m)?
        }
        Method::Lex => {
            let w: LexWitness = read_json(witness.context("--method lex needs --witness {g1, g2}")?)?;
            if ops::lex_product(&w.g1, &w.g2) != g {
                bail!("graph is not the lexicographic product of the witness factors");
            }
            let base = rank_one_optimum(&w.g1)?;
            lift_lex(&base.x, &base.y, &w.g1, &w.g2)?
        }
        Method::SplitLift => {
            let w: SplitWitness =
                read_json(witness.context("--method split-lift needs --witness {base, p}")?)?;
            let spec = ops::SplitSpec::new(w.p)?;
            if ops::split(&w.base, &spec)?.0 != g {
                bail!("graph is not the split of the witness base graph");
            }
            lift_split_certificate(&rank_one_optimum(&w.base)?, &spec)?
        }
    };
    render(&cert, dump)
}

fn render(cert: &Certificate, dump: bool) -> Result<Outcome> {
    let report = verify_certificate(cert)?;
    let optimal = report.is_optimal();
    let mut doc = json!({
        "provenance": cert.provenance,
        "objective": format_rational(&cert.objective),
        "optimal": optimal,
        "dual_route": cert.dual_route,
        "report": report,
    });
    let mut text = format!(
        "{} certificate ({:?})\nobjective {}\nrank X {}, rank S {}\n",
        if optimal { "verified" } else { "INVALID" },
        cert.provenance,
        format_rational(&cert.objective),
        report.rank_x,
        report.rank_s
    );
    if dump {
        let y: Vec<String> = cert.y.diagonal().iter().map(format_rational).collect();
        doc["y"] = json!(y);
        doc["x"] = json!(cert.x.lower_rows_text());
        let _ = writeln!(text, "Y\n{}", y.join(" "));
        let _ = write!(text, "X\n{}", cert.x.dump());
        let _ = writeln!(text, "report\n{}", serde_json::to_string_pretty(&report)?);
    }
    Ok(Outcome {
        doc,
        text,
        negative: !optimal,
    })
}

fn rank_one_optimum(g: &Graph) -> Result<Certificate> {
    let mc = brute_force_maxcut(g)?;
    let c = cert_from_cut(g, &mc.optimal_cuts[0])?;
    if !verify_certificate(&c)?.is_optimal() {
        bail!("the base graph has no rank-one optimal pair at its maximum cut");
    }
    Ok(c)
}

/// `w_ij w_ik / w_jk = m_i²` on a complete weighted graph.
fn recover_masses(g: &Graph) -> Result<Vec<Rational>> {
    let n = g.n();
    if n < 3 {
        bail!("need at least three vertices to recover masses");
    }
    let w = |a: usize, b: usize| {
        g.weight(a, b)
            .cloned()
            .ok_or_else(|| anyhow!("edge {{{a}, {b}}} is missing; graph is not complete"))
    };
    (0..n)
        .map(|i| {
            let (j, k) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let sq = w(i, j)? * w(i, k)? / w(j, k)?;
            sqrt_exact(&sq).ok_or_else(|| anyhow!("m_{i}² = {} is not a rational square; pass --witness", sq))
        })
        .collect()
}

fn join_certificate(g: &Graph, side_a: Option<Vec<usize>>, balanced: bool) -> Result<Certificate> {
    let n = g.n();
    let candidates: Vec<Vec<usize>> = match side_a {
        Some(a) => vec![a],
        None => component_unions(g)?
            .into_iter()
            .filter(|a| if balanced { 2 * a.len() == n } else { 2 * a.len() < n })
            .collect(),
    };
    let mut last = anyhow!("no complement-component split fits {} join", if balanced { "a balanced" } else { "an unbalanced" });
    for a in candidates {
        match certify_split(g, &a, balanced) {
            Ok(c) => return Ok(c),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn component_unions(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let comps = g.complement()?.connected_components();
    if comps.len() > COMPONENT_SEARCH_CAP {
        bail!("{} complement components; pass --witness", comps.len());
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << comps.len()) - 1 {
        let mut a: Vec<usize> = (0..comps.len())
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| comps[i].iter().copied())
            .collect();
        a.sort_unstable();
        out.push(a);
    }
    out.sort_by_key(|a| std::cmp::Reverse(a.len()));
    Ok(out)
}

fn certify_split(g: &Graph, side_a: &[usize], balanced: bool) -> Result<Certificate> {
    let n = g.n();
    let mut in_a = vec![false; n];
    for &v in side_a {
        if v >= n || std::mem::replace(&mut in_a[v], true) {
            bail!("side_a entry {v} is out of range or repeated");
        }
    }
    let side_b: Vec<usize> = (0..n).filter(|&v| !in_a[v]).collect();
    let order: Vec<usize> = side_a.iter().copied().chain(side_b.iter().copied()).collect();
    let ga = g.induced_subgraph(side_a)?;
    let gb = g.induced_subgraph(&side_b)?;
    if ops::join(&ga, &gb).permuted(&order)? != *g {
        bail!("graph is not the join of the two sides");
    }
    let c = if balanced {
        cert_join_balanced(&ga, &gb)?
    } else {
        cert_join_unbalanced(&ga, &gb)?
    };
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let x = SymMatrix::from_fn(n, |a, b| c.x.get(pos[a], pos[b]).clone());
    let y = (0..n).map(|a| c.y.get(pos[a], pos[a]).clone()).collect();
    let mut out = Certificate::new(g, x, y, c.provenance)?;
    out.dual_route = c.dual_route;
    Ok(out)
}
