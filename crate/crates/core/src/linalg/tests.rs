use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::scalars::{Cyclotomic, Field, FieldDescriptor, Rational};

type Q = Rational;

fn q(n: i64) -> Q {
    Q::from_int(n)
}

/// Textbook dense elimination with first-nonzero pivoting, used as an oracle.
fn dense_rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        for i in r + 1..rows {
            let f = a[i][c].clone() * &inv;
            for j in c..cols {
                let t = a[r][j].clone();
                a[i][j].sub_mul(&f, &t);
            }
        }
        r += 1;
    }
    r
}

fn jordan(n: usize) -> ExactMatrix<Q> {
    ExactMatrix::from_triplets(n, n, (1..n).map(|i| (i - 1, i, Q::one())))
}

#[test]
fn identity_and_zero() {
    let i5 = ExactMatrix::<Q>::identity(5);
    assert_eq!(rank(&i5), 5);
    assert_eq!(kernel_basis(&i5).dim(), 0);
    let z = ExactMatrix::<Q>::zeros(3, 4);
    assert_eq!(rank(&z), 0);
    assert_eq!(kernel_basis(&z).dim(), 4);
}

#[test]
fn jordan_block_powers() {
    let d = jordan(3);
    assert_eq!(rank(&d), 2);
    assert_eq!(rank(&d.pow(2)), 1);
    assert_eq!(rank(&d.pow(3)), 0);
}

#[test]
fn quotient_of_plane_by_line() {
    let z = Subspace::<Q>::full(2);
    let b = Subspace::span(2, vec![SparseVec::unit(0)]);
    let c = quotient_coordinates(&z, &b, &SparseVec::unit(1)).unwrap();
    assert_eq!(c, SparseVec::unit(0));
    let c0 = quotient_coordinates(&z, &b, &SparseVec::from_dense(&[q(7), q(0)])).unwrap();
    assert!(c0.is_zero());
    // a class is independent of the chosen representative
    let c1 = quotient_coordinates(&z, &b, &SparseVec::from_dense(&[q(-3), q(2)])).unwrap();
    assert_eq!(c1, SparseVec::from_dense(&[q(2)]));
}

#[test]
fn quotient_errors() {
    let z = Subspace::span(3, vec![SparseVec::<Q>::unit(0)]);
    assert!(matches!(Quotient::new(z.clone(), &[SparseVec::unit(1)]), Err(crate::NcxError::NotSubspace)));
    let qt = Quotient::new(z, &[]).unwrap();
    assert!(matches!(qt.coordinates(&SparseVec::unit(2)), Err(crate::NcxError::NotMember)));
}

#[test]
fn random_quotient_dimension() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let cols = 8;
        let a = ExactMatrix::from_triplets(
            5,
            cols,
            (0..12).map(|_| (rng.gen_range(0..5), rng.gen_range(0..cols), q(rng.gen_range(-3..4)))),
        );
        let z = kernel_basis(&a);
        // B: images of random combinations of Z
        let gens: Vec<SparseVec<Q>> = (0..3)
            .map(|_| {
                let c = SparseVec::from_dense(&(0..z.dim()).map(|_| q(rng.gen_range(-2..3))).collect::<Vec<_>>());
                z.combine(&c)
            })
            .collect();
        let b = Subspace::span(cols, gens.clone());
        let qt = Quotient::new(z.clone(), &gens).unwrap();
        assert_eq!(qt.dim(), z.dim() - b.dim());
        for g in &gens {
            assert!(qt.coordinates(g).unwrap().is_zero());
        }
        for i in 0..qt.dim() {
            assert_eq!(qt.coordinates(qt.representative(i)).unwrap(), SparseVec::unit(i));
        }
    }
}

#[test]
fn solve_and_membership() {
    let m = ExactMatrix::from_dense(&[vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]]);
    let b = SparseVec::from_dense(&[q(5), q(10), q(2)]);
    let x = solve(&m, &b).unwrap();
    assert_eq!(m.apply(&x), b);
    assert!(solve(&m, &SparseVec::from_dense(&[q(1), q(0), q(0)])).is_none());
    let im = image_basis(&m);
    assert!(membership(&im, &b));
    assert!(!membership(&im, &SparseVec::unit(0)));
}

#[test]
fn cyclotomic_rank() {
    // [[1, ζ], [ζ², ζ³]] has rank 1 over Q(ζ_5)
    let z = Cyclotomic::root_of_unity(5, 1);
    let m = ExactMatrix::from_dense(&[vec![Cyclotomic::one(), z.clone()], vec![z.pow(2), z.pow(3)]]);
    assert_eq!(rank(&m), 1);
    let k = kernel_basis(&m);
    assert_eq!(k.dim(), 1);
    assert!(m.apply(&k.basis()[0]).is_zero());
}

#[test]
fn json_round_trip() {
    let m = ExactMatrix::from_dense(&[vec![q(1), Q::new(-2, 3)], vec![q(0), q(5)]]);
    let v = m.to_json(&FieldDescriptor::rationals());
    assert_eq!(v["entries"][1][2], "-2/3");
    assert_eq!(ExactMatrix::<Q>::from_json(&v).unwrap(), m);
    let z = Cyclotomic::root_of_unity(3, 1);
    let mc = ExactMatrix::from_dense(&[vec![z.clone(), Cyclotomic::zero()]]);
    let back = ExactMatrix::<Cyclotomic>::from_json(&mc.to_json(&crate::scalars::make_cyclotomic(3))).unwrap();
    assert_eq!(back, mc);
}

#[test]
fn kron_and_direct_sum() {
    let a = ExactMatrix::from_dense(&[vec![q(1), q(2)], vec![q(3), q(4)]]);
    let b = ExactMatrix::from_dense(&[vec![q(0), q(1)], vec![q(1), q(0)]]);
    let k = a.kron(&b);
    assert_eq!(k.get(0, 1), q(1));
    assert_eq!(k.get(3, 2), q(4));
    assert_eq!(k.get(2, 1), q(3));
    let ab = a.kron(&ExactMatrix::identity(2)).mul(&ExactMatrix::identity(2).kron(&b));
    assert_eq!(ab, k);
    let s = a.direct_sum(&b);
    assert_eq!(rank(&s), 4);
    assert_eq!(s.get(2, 3), q(1));
}

fn small_matrix(max: usize) -> impl Strategy<Value = ExactMatrix<Q>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec((0..r, 0..c, -3i64..4), 0..(r * c).min(60))
            .prop_map(move |t| ExactMatrix::from_triplets(r, c, t.into_iter().map(|(i, j, v)| (i, j, q(v)))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(m in small_matrix(30)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        prop_assert_eq!(rank(&m), dense_rank(&m.to_dense()));
    }

    #[test]
    fn kernel_is_annihilated(m in small_matrix(20)) {
        let k = kernel_basis(&m);
        for v in k.basis() {
            prop_assert!(m.apply(v).is_zero());
        }
        prop_assert_eq!(k.dim() + image_basis(&m).dim(), m.cols());
        prop_assert_eq!(m.mul(&k.basis_matrix()).is_zero(), true);
    }

    #[test]
    fn tracked_coordinates(m in small_matrix(12), seed in 0u64..1000) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cols = m.columns();
        let indep: Vec<SparseVec<Q>> = {
            let e = Echelon::new(m.rows(), cols.clone(), false);
            // the pivot columns of the transpose elimination are independent rows of m^T
            let et = Echelon::new(m.cols(), m.row_vecs().to_vec(), false);
            let _ = e;
            et.pivots().iter().map(|&p| cols[p].clone()).collect()
        };
        let s = Subspace::from_independent(m.rows(), indep.clone()).unwrap();
        let c = SparseVec::from_dense(&(0..s.dim()).map(|_| q(rng.gen_range(-3..4))).collect::<Vec<_>>());
        let v = s.combine(&c);
        prop_assert_eq!(s.coordinates(&v), Some(c));
    }
}
