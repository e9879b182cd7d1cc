use descm::de_map::TransformedProblem;
use descm::{assemble_k, eigen_symmetric, lambert_w0, optimal_h, trace_of_k, DenseMatrix, EvenPolynomialPotential};
use proptest::prelude::*;

fn potential_strategy() -> impl Strategy<Value = EvenPolynomialPotential> {
    (1usize..=5, -5.0..5.0f64)
        .prop_flat_map(|(m, c0)| (Just(c0), prop::collection::vec(-10.0..10.0f64, m - 1), 0.1..10.0f64))
        .prop_map(|(c0, mut lower, leading)| {
            lower.push(leading);
            EvenPolynomialPotential::with_constant(c0, lower).unwrap()
        })
}

fn symmetric_matrix(max_dim: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..=max_dim).prop_flat_map(|n| {
        prop::collection::vec(-10.0..10.0f64, n * n).prop_map(move |raw| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i <= j { raw[i * n + j] } else { raw[j * n + i] })
                        .collect()
                })
                .collect()
        })
    })
}

proptest! {
    #[test]
    fn potential_is_even(p in potential_strategy(), x in -5.0..5.0f64) {
        prop_assert_eq!(p.evaluate(x), p.evaluate(-x));
        let t = TransformedProblem::new(p);
        prop_assert_eq!(t.transformed_potential(x), t.transformed_potential(-x));
    }

    #[test]
    fn chebyshev_well_matches_trigonometric_form(half in 1u32..=10, shift in -2.0..2.0f64, x in -1.0..1.0f64) {
        let n = 2 * half;
        let p = EvenPolynomialPotential::chebyshev_well(n, shift).unwrap();
        let expected = (n as f64 * x.acos()).cos() + shift;
        // error measured against the size of the summands, which is what
        // monomial evaluation can guarantee (near roots nothing better exists)
        let x2 = x * x;
        let magnitude = p.coefficients().iter().enumerate()
            .map(|(i, c)| c.abs() * x2.powi(i as i32 + 1))
            .sum::<f64>() + p.constant().abs();
        prop_assert!((p.evaluate(x) - expected).abs() <= 1e-12 * magnitude.max(1.0),
            "T_{}({}) + {} = {} vs {}", n, x, shift, p.evaluate(x), expected);
    }

    #[test]
    fn closed_form_trace_matches_assembly(p in potential_strategy(), n in 1usize..40, h in 0.02..0.6f64) {
        let closed = trace_of_k(&p, n, h).unwrap();
        let assembled = assemble_k(&p, n, h).unwrap().trace();
        prop_assert!((closed - assembled).abs() <= 1e-12 * assembled.abs());
    }

    #[test]
    fn assembled_matrix_is_exactly_symmetric(p in potential_strategy(), n in 1usize..20, h in 0.05..0.5f64) {
        let k = assemble_k(&p, n, h).unwrap();
        for j in -(n as i64)..=n as i64 {
            for i in -(n as i64)..=n as i64 {
                prop_assert_eq!(k.entry(j, i).to_bits(), k.entry(i, j).to_bits());
            }
        }
    }

    #[test]
    fn eigenvalues_preserve_trace_and_frobenius_norm(rows in symmetric_matrix(12)) {
        let a = DenseMatrix::from_rows(&rows).unwrap();
        let eig = eigen_symmetric(&a, false).unwrap();
        let sum: f64 = eig.eigenvalues.iter().sum();
        let sum_sq: f64 = eig.eigenvalues.iter().map(|l| l * l).sum();
        let fro = a.frobenius_norm().powi(2);
        prop_assert!((sum - a.trace()).abs() <= 1e-11 * fro.sqrt().max(1.0));
        prop_assert!((sum_sq - fro).abs() <= 1e-11 * fro.max(1.0));
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn eigenvalues_invariant_under_permutation(rows in symmetric_matrix(10), seed in any::<u64>()) {
        let n = rows.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = DenseMatrix::from_rows(&rows).unwrap();
        let b = DenseMatrix::from_fn(n, |i, j| rows[perm[i]][perm[j]]);
        let ea = eigen_symmetric(&a, false).unwrap().eigenvalues;
        let eb = eigen_symmetric(&b, false).unwrap().eigenvalues;
        let scale = a.frobenius_norm().max(1.0);
        for (x, y) in ea.iter().zip(&eb) {
            prop_assert!((x - y).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn eigenvectors_satisfy_residual(rows in symmetric_matrix(10)) {
        let a = DenseMatrix::from_rows(&rows).unwrap();
        let eig = eigen_symmetric(&a, true).unwrap();
        let scale = a.frobenius_norm().max(1.0);
        for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
            let v = eig.eigenvector(i).unwrap();
            let av = a.mul_vec(&v);
            let res = av.iter().zip(&v).map(|(x, y)| (x - lambda * y).powi(2)).sum::<f64>().sqrt();
            prop_assert!(res <= 1e-12 * scale);
        }
    }

    #[test]
    fn lambert_w_inverts(z in 1e-8..1e8f64) {
        let w = lambert_w0(z).unwrap();
        prop_assert!((w * w.exp() - z).abs() <= 1e-13 * z);
    }

    #[test]
    fn optimal_h_shrinks_with_n(p in potential_strategy(), n in 1usize..200) {
        prop_assert!(optimal_h(&p, n + 1).unwrap() < optimal_h(&p, n).unwrap());
    }

    #[test]
    fn constant_shifts_spectrum(p in potential_strategy(), shift in -3.0..3.0f64) {
        let q = EvenPolynomialPotential::with_constant(p.constant() + shift, p.coefficients().to_vec()).unwrap();
        let h = optimal_h(&p, 8).unwrap();
        let ep = eigen_symmetric(assemble_k(&p, 8, h).unwrap().matrix(), false).unwrap().eigenvalues;
        let eq = eigen_symmetric(assemble_k(&q, 8, h).unwrap().matrix(), false).unwrap().eigenvalues;
        prop_assert!((eq[0] - ep[0] - shift).abs() <= 1e-9 * ep[0].abs().max(1.0));
    }
}
