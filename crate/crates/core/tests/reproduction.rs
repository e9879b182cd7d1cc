//! Reference spectra and ground states, reproduced through the library API.

#![allow(clippy::excessive_precision, clippy::needless_range_loop)]

use descm::presets::{self, GroundStateRow, Table, TABLE2_REFERENCE};
use descm::{
    converge, reconstruct_wavefunction, solve, solve_with_vectors, ConvergenceOptions, DescmProblem,
    EvenPolynomialPotential, MeshStrategy,
};

fn check_ground_states(rows: &[GroundStateRow], max_dn: usize) {
    for row in rows {
        let p = EvenPolynomialPotential::new(row.coefficients.clone()).unwrap();
        let trace = converge(&DescmProblem::new(p.clone()), 0, &ConvergenceOptions::default()).unwrap();
        let last = trace.last();
        assert!(trace.converged, "{}", p.to_spec());
        assert!(
            (last.value - row.reference_energy).abs() < 1e-10,
            "{}: {} vs {}",
            p.to_spec(),
            last.value,
            row.reference_energy
        );
        assert!(
            last.n.abs_diff(row.reference_n) <= max_dn,
            "{}: N = {}",
            p.to_spec(),
            last.n
        );
    }
}

#[test]
fn quartic_family() {
    check_ground_states(&presets::table3_rows(), 1);
}

#[test]
fn sextic_family() {
    check_ground_states(&presets::table4_rows(), 1);
}

#[test]
fn octic_family() {
    check_ground_states(&presets::table5_rows(), 1);
}

#[test]
fn decic_family() {
    check_ground_states(&presets::table6_rows(), 2);
}

#[test]
fn spectrum_tables_row_by_row() {
    for id in [1, 2] {
        let Some(Table::Spectrum {
            potential,
            truncations,
            reference,
        }) = presets::table(id)
        else {
            panic!("table {id} is a spectrum preset")
        };
        let problem = DescmProblem::new(EvenPolynomialPotential::new(potential).unwrap()).with_levels(3);
        for (n, r) in truncations.iter().zip(&reference) {
            let e = solve(&problem, *n).unwrap();
            for i in 0..3 {
                assert!(
                    (e.eigenvalues()[i] - r[i]).abs() < 5e-12,
                    "table {id}, N={n}, level {i}"
                );
            }
        }
    }
}

#[test]
fn octic_rows_are_not_reproduced_at_their_printed_labels() {
    // documents the mislabelled truncation column: the printed N = 12 row
    // is off by far more than round-off when taken literally
    let problem = DescmProblem::new(EvenPolynomialPotential::new(vec![1.0, 0.0, 0.0, 100.0]).unwrap()).with_levels(3);
    let (label, row) = TABLE2_REFERENCE[3];
    assert_eq!(label, 12);
    let literal = solve(&problem, 12).unwrap();
    assert!((literal.eigenvalues()[0] - row[0]).abs() > 1e-8);
    let relabelled = solve(&problem, 20).unwrap();
    assert!((relabelled.eigenvalues()[0] - row[0]).abs() < 1e-12);
}

#[test]
fn trace_minimised_mesh_converges_ten_well_in_a_few_dozen_steps() {
    let p = EvenPolynomialPotential::chebyshev_well(20, -1.0).unwrap();
    let options = ConvergenceOptions {
        n_max: 1000,
        ..Default::default()
    };
    let hat = converge(
        &DescmProblem::new(p.clone()).with_strategy(MeshStrategy::trace_minimized()),
        0,
        &options,
    )
    .unwrap();
    assert!(hat.converged);
    assert!(hat.last().n < 150);
    // the closed-form mesh is still far off at the same truncation
    let opt = solve(&DescmProblem::new(p), hat.last().n).unwrap();
    assert!((opt.eigenvalues()[0] - hat.last().value).abs() > 1e-6);
}

#[test]
fn ground_state_wavefunction_is_normalised_and_even() {
    let p = EvenPolynomialPotential::new(vec![1.0, 1.0]).unwrap();
    let r = solve_with_vectors(&DescmProblem::new(p), 30).unwrap();
    // trapezoid on a fine grid
    let (a, steps) = (8.0, 4000);
    let dx = 2.0 * a / steps as f64;
    let norm: f64 = (0..=steps)
        .map(|i| {
            let x = -a + i as f64 * dx;
            let psi = reconstruct_wavefunction(&r, 0, x).unwrap();
            let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
            w * psi * psi * dx
        })
        .sum();
    assert!((norm - 1.0).abs() < 1e-6, "norm {norm}");
    for x in [0.3, 1.1, 2.5] {
        let (l, rr) = (
            reconstruct_wavefunction(&r, 0, -x).unwrap(),
            reconstruct_wavefunction(&r, 0, x).unwrap(),
        );
        assert!((l - rr).abs() < 1e-9);
    }
    assert!(reconstruct_wavefunction(&r, 0, 0.0).unwrap() > 0.0);
}
