//! Jacobi eigensolver against nalgebra's Hermitian eigendecomposition.

use majbound::quantum::{spectral_decompose, ComplexMatrix, Complex64, HermitianOperator};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |raw| {
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                let (re, im) = raw[i * dim + j];
                let z = Complex64::new(re, im);
                let (r2, i2) = raw[j * dim + i];
                let w = Complex64::new(r2, i2).conj();
                m[(i, j)] = (z + w) * 0.5;
            }
        }
        m
    })
}

fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<Complex64> {
    let n = m.dim();
    DMatrix::from_fn(n, n, |i, j| m[(i, j)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigenvalues_match_nalgebra(m in (2usize..=6).prop_flat_map(hermitian)) {
        let op = HermitianOperator::new(m.clone()).unwrap();
        let ours = spectral_decompose(&op).unwrap();
        let mut theirs: Vec<f64> = to_nalgebra(&m).symmetric_eigen().eigenvalues.iter().copied().collect();
        theirs.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in ours.eigenvalues().iter().zip(&theirs) {
            prop_assert!((a - b).abs() < 1e-10, "{:?} vs {:?}", ours.eigenvalues(), theirs);
        }
    }

    #[test]
    fn decomposition_reconstructs(m in (2usize..=6).prop_flat_map(hermitian)) {
        let op = HermitianOperator::new(m.clone()).unwrap();
        let dec = spectral_decompose(&op).unwrap();
        prop_assert!(dec.reconstruct().max_abs_diff(&m) < 1e-10);
        let v = dec.eigenvectors();
        let gram = &v.adjoint() * v;
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(m.dim())) < 1e-10);
        prop_assert!(dec.eigenvalues().windows(2).all(|w| w[0] >= w[1]));
    }
}

#[test]
fn degenerate_spectrum() {
    // Rank-one projector in dimension 4: eigenvalues (1, 0, 0, 0).
    let h = 0.5;
    let v = vec![Complex64::new(h, 0.0), Complex64::new(0.0, h), Complex64::new(-h, 0.0), Complex64::new(0.0, -h)];
    let op = HermitianOperator::projector(&v);
    let dec = spectral_decompose(&op).unwrap();
    let want = [1.0, 0.0, 0.0, 0.0];
    for (a, b) in dec.eigenvalues().iter().zip(want) {
        assert!((a - b).abs() < 1e-12);
    }
    let top = dec.eigenvector(0);
    let overlap: Complex64 = top.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
    assert!((overlap.norm() - 1.0).abs() < 1e-12);
}
