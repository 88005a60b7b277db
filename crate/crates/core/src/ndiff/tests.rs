use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::*;
use super::*;
use crate::linalg::SparseVec;
use crate::scalars::Rational;

type Q = Rational;

/// dim H_(m) of a single block D_b inside an N-differential module:
/// nullity of d^m is min(m, b), rank of d^{N-m} is max(b - N + m, 0).
fn block_homology(n: usize, b: usize, m: usize) -> usize {
    m.min(b) - (b + m).saturating_sub(n)
}

fn expected_dims(n: usize, mult: &[usize]) -> Vec<usize> {
    (1..n).map(|m| mult.iter().enumerate().map(|(i, c)| c * block_homology(n, i + 1, m)).sum()).collect()
}

fn module(n: usize, blocks: &[usize]) -> NDiffModule<Q> {
    NDiffModule::from_blocks(n, blocks).unwrap()
}

#[test]
fn rejects_non_nilpotent() {
    let d = ExactMatrix::<Q>::identity(2);
    assert!(matches!(NDiffModule::new(3, d), Err(NcxError::NotNilpotent { n: 3 })));
    let b = module(4, &[4]);
    assert!(matches!(NDiffModule::new(3, b.d().clone()), Err(NcxError::NotNilpotent { .. })));
}

#[test]
fn homology_examples() {
    let h = module(3, &[3]).homology();
    assert_eq!((h.dim(1), h.dim(2)), (0, 0));
    let h = module(3, &[3, 1]).homology();
    assert_eq!((h.dim(1), h.dim(2)), (1, 1));
    let zero = NDiffModule::new(4, ExactMatrix::<Q>::zeros(5, 5)).unwrap();
    assert!(zero.homology().dims().iter().all(|d| d.dim_h == 5));
    let h = module(3, &[3, 1]).homology();
    for m in 1..3 {
        for r in h.piece(m).representatives() {
            assert!(module(3, &[3, 1]).power(m).apply(&r).is_zero());
        }
    }
}

#[test]
fn multiplicity_examples() {
    let e = module(3, &[3]);
    assert_eq!(e.multiplicities().unwrap(), vec![0, 0, 1]);
    let r = proposition4_check(&e).unwrap();
    assert!(r.holds);
    assert_eq!(r.rows[0].formula, 0);

    let e = NDiffModule::<Q>::from_multiplicities(3, &[1, 0, 1]).unwrap();
    let r = proposition4_check(&e).unwrap();
    assert!(r.holds);
    assert_eq!(r.rows[0].dim_h_k, 1);

    let e = NDiffModule::<Q>::from_multiplicities(4, &[0, 1, 0, 1]).unwrap();
    assert_eq!(e.dim(), 6);
    let r = proposition4_check(&e).unwrap();
    assert!(r.holds);
    assert_eq!(r.rows.iter().map(|x| x.formula).collect::<Vec<_>>(), vec![1, 2]);
}

#[test]
fn induced_map_examples() {
    let zero = NDiffModule::new(4, ExactMatrix::<Q>::zeros(3, 3)).unwrap();
    let h = zero.homology();
    for m in 1..3 {
        assert_eq!(induced_i(&h, m).unwrap(), ExactMatrix::identity(3));
    }
    let e = module(3, &[3, 1]);
    let h = e.homology();
    let d = induced_d(&e, &h, 1).unwrap();
    assert_eq!((d.rows(), d.cols()), (1, 1));
    assert!(d.is_zero());
    assert!(induced_i(&h, 2).is_err());
}

#[test]
fn d_after_i_is_induced_by_d() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let n = 3 + (rand::Rng::gen_range(&mut rng, 0..3));
        let (e, _) = random_module::<Q, _>(&mut rng, n, 20);
        let h = e.homology();
        for m in 1..n - 1 {
            let di = induced_d(&e, &h, m).unwrap().mul(&induced_i(&h, m).unwrap());
            let direct = induced_map(h.piece(m), h.piece(m), |v| e.d().apply(v)).unwrap();
            assert_eq!(di, direct);
        }
    }
}

#[test]
fn hexagon_examples() {
    let zero = NDiffModule::new(5, ExactMatrix::<Q>::zeros(4, 4)).unwrap();
    assert!(all_hexagons(&zero).unwrap().iter().all(|h| h.exactness.exact));
    let e = module(5, &[5, 2, 2]);
    let h = e.homology();
    assert!(hexagon_check(&e, &h, 1, 2).unwrap().exactness.exact);
    assert!(hexagon_check(&e, &h, 2, 3).is_err());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let n = 3 + rand::Rng::gen_range(&mut rng, 0..3);
        let (e, _) = random_module::<Q, _>(&mut rng, n, 25);
        for hx in all_hexagons(&e).unwrap() {
            assert!(hx.exactness.exact, "{hx:?}");
        }
    }
}

#[test]
fn homotopy_criterion_on_a_single_block() {
    for n in 2..7 {
        let e = module(n, &[n]);
        // h_k sends e_0 to e_{N-1} for every k
        let h = ExactMatrix::from_triplets(n, n, [(n - 1, 0, Q::one())]);
        assert!(homotopy_criterion_lemma3(&e, &vec![h; n]).unwrap());
        let zeros = vec![ExactMatrix::zeros(n, n); n];
        assert!(!homotopy_criterion_lemma3(&e, &zeros).unwrap());
    }
}

#[test]
fn scalar_homotopy_requires_a1() {
    let e = module(3, &[3]);
    let h = ExactMatrix::zeros(3, 3);
    assert!(matches!(homotopy_criterion_lemma4(&e, &h, &Q::one()), Err(NcxError::Assumption(_))));
}

#[test]
fn green_examples() {
    let a = module(2, &[2]);
    let g = green_tensor(&a, &a).unwrap();
    assert_eq!(g.n(), 3);
    let expect = ExactMatrix::from_triplets(4, 4, [(0, 1, Q::one()), (0, 2, Q::one()), (1, 3, Q::one()), (2, 3, Q::one())]);
    assert_eq!(*g.d(), expect);
    assert!(!g.power(2).is_zero());
    let g3 = green_tensor(&g, &a).unwrap();
    assert_eq!(g3.n(), 4);
    assert!(!g3.power(3).is_zero());
    // d'' = 0 adds one to N without changing nilpotency order
    let z = NDiffModule::new(2, ExactMatrix::<Q>::zeros(2, 2)).unwrap();
    let b = module(3, &[3]);
    let t = green_tensor(&b, &z).unwrap();
    assert_eq!(t.n(), 4);
    assert!(t.power(3).is_zero());
}

#[test]
fn split_sequence_has_zero_connecting_map() {
    let s = split_ses(&module(3, &[2, 1]), &module(3, &[3, 1, 1])).unwrap();
    let (he, hg) = (s.e.homology(), s.g.homology());
    for m in 1..3 {
        assert!(ses_connecting(&s, &hg, &he, m).unwrap().is_zero());
    }
    assert!(ses_hexagon_check(&s).unwrap().iter().all(|r| r.exactness.exact));
}

#[test]
fn snake_for_n_equal_two() {
    // E = k (d=0), F = D_2, G = k (d=0): H(F) = 0 so ∂ is invertible
    let f = module(2, &[2]);
    let s = ses_from_generators(f, &[SparseVec::unit(0)]).unwrap();
    let (he, hg) = (s.e.homology(), s.g.homology());
    let c = ses_connecting(&s, &hg, &he, 1).unwrap();
    assert_eq!((c.rows(), c.cols()), (1, 1));
    assert!(!c.get(0, 0).is_zero());
    assert!(s.f.homology().is_zero());
}

#[test]
fn random_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..15 {
        let n = 3 + rand::Rng::gen_range(&mut rng, 0..2);
        let s = random_ses::<Q, _>(&mut rng, n, 20);
        let (he, hg) = (s.e.homology(), s.g.homology());
        for m in 1..n {
            assert!(ses::connecting_is_well_defined(&s, &hg, &he, m, &mut rng).unwrap());
        }
        assert!(ses_hexagon_check(&s).unwrap().iter().all(|r| r.exactness.exact));
    }
}

#[test]
fn json_round_trip() {
    let e = module(4, &[3, 2]);
    let v = e.to_json(&crate::scalars::FieldDescriptor::rationals());
    let back = NDiffModule::<Q>::from_json(&v).unwrap();
    assert_eq!(back.d(), e.d());
    let mut bad = v.clone();
    bad["N"] = 2.into();
    assert!(NDiffModule::<Q>::from_json(&bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplicities_recovered(seed in any::<u64>(), n in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (e, mult) = random_module::<Q, _>(&mut rng, n, 30);
        prop_assert_eq!(e.multiplicities().unwrap(), mult.clone());
        let dims: Vec<usize> = e.homology().dims().iter().map(|d| d.dim_h).collect();
        prop_assert_eq!(&dims, &expected_dims(n, &mult));
        // H_(k) and H_(N-k) have equal dimension
        for k in 1..n {
            prop_assert_eq!(dims[k - 1], dims[n - k - 1]);
        }
        prop_assert!(proposition4_check(&e).unwrap().holds);
    }

    #[test]
    fn one_vanishing_homology_kills_all(seed in any::<u64>(), n in 3usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (e, _) = random_module::<Q, _>(&mut rng, n, 24);
        let dims: Vec<usize> = e.homology().dims().iter().map(|d| d.dim_h).collect();
        if dims.iter().any(|&d| d == 0) {
            prop_assert!(dims.iter().all(|&d| d == 0));
        }
    }
}
