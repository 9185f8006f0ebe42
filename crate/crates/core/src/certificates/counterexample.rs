use num_traits::One;
use serde::Serialize;

use super::{cert_nondominating, nondominating_parts, verify_certificate, CertError, Certificate, Provenance};
use crate::graph::VertexPartition;
use crate::linalg::{psd_check_exact, rank_exact, SymMatrix};
use crate::oracle::brute_force_maxcut;
use crate::rational::{int, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Which {
    One,
    Two,
}

/// Everything checked while replaying one of the two weighted `K₄` examples.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleReport {
    pub which: Which,
    #[serde(with = "crate::rational::serde_str::vec")]
    pub masses: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub maxcut: Rational,
    pub optimal_partitions: Vec<VertexPartition>,
    pub partition_count: u64,
    /// Lower triangle of the higher-rank optimum under study.
    pub z: Vec<Vec<String>>,
    pub z_feasible: bool,
    #[serde(with = "crate::rational::serde_str")]
    pub objective: Rational,
    pub z_rank: usize,
    pub z_optimal: bool,
    #[serde(with = "crate::rational::serde_str::vec")]
    pub d_prime: Vec<Rational>,
    pub d_prime_expected: bool,
    pub x_g: Vec<Vec<String>>,
    pub x_g_rank: usize,
    pub x_g_optimal: bool,
    /// Rank-one optima used in the decomposition, in order.
    pub rank_one_cuts: Vec<VertexPartition>,
    /// Weights of the rank-one optima, then of `X_G`.
    #[serde(with = "crate::rational::serde_str::vec")]
    pub coefficients: Vec<Rational>,
    pub decomposition_holds: bool,
    /// Every rank-one optimum has `X_12 = -1`, so an entry other than `-1`
    /// there puts a matrix outside their convex hull.
    pub z_outside_rank_one_hull: bool,
    pub x_g_outside_rank_one_hull: bool,
    pub passed: bool,
}

fn lower_text(m: &SymMatrix<Rational>) -> Vec<Vec<String>> {
    m.lower_rows_text()
}

fn masses(which: Which) -> Vec<Rational> {
    match which {
        Which::One => vec![int(5), int(3), int(4), int(4)],
        Which::Two => vec![int(2), int(2), int(4), int(4)],
    }
}

fn z_matrix(which: Which) -> SymMatrix<Rational> {
    let one = Rational::one();
    let rows = match which {
        Which::One => vec![
            vec![one.clone()],
            vec![rat(-1, 3), one.clone()],
            vec![rat(-1, 2), rat(-1, 6), one.clone()],
            vec![rat(-1, 2), rat(-1, 6), rat(-1, 4), one],
        ],
        Which::Two => vec![
            vec![one.clone()],
            vec![rat(-1, 5), one.clone()],
            vec![rat(-1, 5), rat(-1, 5), one.clone()],
            vec![rat(-1, 5), rat(-1, 5), rat(-4, 5), one],
        ],
    };
    SymMatrix::from_lower_rows(rows).expect("well-formed literal")
}

/// Replays an example: checks the oracle, the higher-rank optimum `Z`,
/// the rank `n-1` optimum `X_G` and the exact convex decomposition of `Z`.
pub fn replay_counterexample(which: Which) -> Result<CounterexampleReport, CertError> {
    let m = masses(which);
    let parts = nondominating_parts(&m)?;
    let cert = cert_nondominating(&m)?;
    let g = cert.source_graph.clone();
    let oracle = brute_force_maxcut(&g)?;

    let (rank_one_cuts, coefficients, expected_d, z_rank_expected) = match which {
        Which::One => (
            vec![VertexPartition::from_side_a(4, &[0, 1])?],
            vec![rat(1, 48), rat(47, 48)],
            vec![rat(125, 752), rat(27, 752), rat(15, 188), rat(15, 188)],
            3,
        ),
        Which::Two => (
            vec![
                VertexPartition::from_side_a(4, &[0, 3])?,
                VertexPartition::from_side_a(4, &[0, 2])?,
            ],
            vec![rat(3, 20), rat(3, 20), rat(7, 10)],
            vec![rat(1, 42), rat(1, 42), rat(4, 21), rat(4, 21)],
            3,
        ),
    };

    let z = z_matrix(which);
    let z_cert = Certificate::new(&g, z.clone(), cert.y.diagonal(), Provenance::Manual)?;
    let z_report = verify_certificate(&z_cert)?;
    let z_feasible = z_report.feasible_primal;
    let z_rank = rank_exact(&z);

    let x_g_report = verify_certificate(&cert)?;

    let rank_one: Vec<SymMatrix<Rational>> = rank_one_cuts
        .iter()
        .map(|p| SymMatrix::outer(&p.sign_vector()))
        .collect();
    let mut combo = SymMatrix::zeros(4);
    for (x, c) in rank_one.iter().zip(&coefficients) {
        combo = &combo + &x.scale(c);
    }
    combo = &combo + &cert.x.scale(coefficients.last().expect("nonempty"));
    let weights_sum: Rational = coefficients.iter().fold(int(0), |acc, c| acc + c);
    let decomposition_holds = combo == z && weights_sum.is_one();

    let oracle_matches = oracle.count == rank_one_cuts.len() as u64
        && rank_one_cuts
            .iter()
            .all(|p| oracle.optimal_cuts.iter().any(|q| q.same_cut(p)));
    let hull_entry_fixed = rank_one.iter().all(|x| *x.get(0, 1) == int(-1));
    let z_outside = hull_entry_fixed && *z.get(0, 1) != int(-1);
    let x_g_outside = hull_entry_fixed && *cert.x.get(0, 1) != int(-1);

    let total = &parts.total;
    let objective_expected = total * total / int(4);
    let passed = oracle_matches
        && oracle.value == objective_expected
        && z_feasible
        && psd_check_exact(&z).is_psd()
        && z_report.primal_value == objective_expected
        && z_report.is_optimal()
        && z_rank == z_rank_expected
        && parts.d == expected_d
        && x_g_report.is_optimal()
        && x_g_report.rank_x == 3
        && decomposition_holds
        && match which {
            Which::One => true,
            Which::Two => z_outside && x_g_outside,
        };

    Ok(CounterexampleReport {
        which,
        masses: m,
        maxcut: oracle.value.clone(),
        optimal_partitions: oracle.optimal_cuts.clone(),
        partition_count: oracle.count,
        z: lower_text(&z),
        z_feasible,
        objective: z_report.primal_value.clone(),
        z_rank,
        z_optimal: z_report.is_optimal(),
        d_prime_expected: parts.d == expected_d,
        d_prime: parts.d,
        x_g: lower_text(&cert.x),
        x_g_rank: x_g_report.rank_x,
        x_g_optimal: x_g_report.is_optimal(),
        rank_one_cuts,
        coefficients,
        decomposition_holds,
        z_outside_rank_one_hull: z_outside,
        x_g_outside_rank_one_hull: x_g_outside,
        passed,
    })
}
