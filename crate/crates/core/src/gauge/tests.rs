use proptest::prelude::*;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::examples::{synthetic_example, z2_example};
use super::*;
use crate::linalg::{solve, ExactMatrix, SparseVec};
use crate::ndiff::{multiplicity_formula, NDiffModule};
use crate::scalars::{Cyclotomic, Field, FieldDescriptor, Rational};

type Q = Rational;
type C = Cyclotomic;

fn q_for(n: usize) -> C {
    C::root_of_unity(2 * n as u32, 1)
}

fn int_matrix(rows: &[&[i64]]) -> ExactMatrix<C> {
    ExactMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| C::from_i64(x)).collect()).collect::<Vec<_>>())
}

fn vector(xs: &[i64]) -> SparseVec<C> {
    SparseVec::from_dense(&xs.iter().map(|&x| C::from_i64(x)).collect::<Vec<_>>())
}

fn ambient_homology(n: usize, a: &ExactMatrix<C>) -> Vec<usize> {
    let m = NDiffModule::new(n, a.clone()).unwrap();
    (1..n).map(|k| m.homology().dim(k)).collect()
}

fn extended_homology(n: usize, ext: &ExtendedSpace<C>) -> Vec<usize> {
    ambient_homology(n, ext.q_matrix())
}

#[test]
fn everything_invariant_collapses_to_a() {
    let n = 3;
    let a = NDiffModule::<C>::from_blocks(n, &[3, 2, 1]).unwrap().d().clone();
    let gens = (0..6).map(SparseVec::unit).collect();
    let g = GaugeInstance::new(n, a.clone(), gens, q_for(n)).unwrap();
    let ext = extend(&g).unwrap();
    assert_eq!(ext.quotient_dim(), 0);
    assert_eq!(ext.q_matrix(), &a);
    assert_eq!(extended_homology(n, &ext), ambient_homology(n, &a));
    assert!(theorem5_verify(&g).unwrap().holds);
}

#[test]
fn nothing_invariant_and_a_zero_has_no_homology() {
    for n in [2, 3, 4] {
        let g = GaugeInstance::new(n, ExactMatrix::zeros(3, 3), vec![], q_for(n)).unwrap();
        let ext = extend(&g).unwrap();
        assert_eq!(ext.dim(), 3 * n);
        assert!(extended_homology(n, &ext).iter().all(|&x| x == 0));
        let r = theorem5_verify(&g).unwrap();
        assert!(r.holds && r.rows.iter().all(|row| row.extended == 0));
    }
}

#[test]
fn cyclic_span_of_two_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let n = 3;
    let a = crate::ndiff::random::conjugate_randomly(&mut rng, NDiffModule::<C>::from_blocks(n, &[3, 2, 1]).unwrap().d(), 12);
    let (v, w) = (vector(&[1, 0, -1, 2, 0, 1]), vector(&[0, 1, 1, 0, -1, 0]));
    let gens = vec![v.clone(), a.apply(&v), a.apply(&a.apply(&v)), w.clone(), a.apply(&w), a.apply(&a.apply(&w))];
    let g = GaugeInstance::new(n, a, gens, q_for(n)).unwrap();
    let r = theorem5_verify(&g).unwrap();
    assert!(r.holds, "{r:?}");
    assert_eq!(r.dim_h, 6);
}

/// The extension of A is forced by A d = q² d A; recover it by solving instead.
#[test]
fn extension_of_a_is_the_solved_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [3, 4] {
        let g = random_instance::<C, _>(&mut rng, n, 10, q_for(n)).unwrap();
        let ext = extend(&g).unwrap();
        let (h, r) = (g.dim(), ext.quotient_dim());
        if r == 0 {
            continue;
        }
        let q2 = g.q().clone() * g.q();
        let pi = ext.d().block(h, h + r, 0, h);
        for j in 0..r {
            // any preimage of the j-th basis class under π
            let v = solve(&pi, &SparseVec::unit(j)).unwrap();
            let want = pi.apply(&g.a().apply(&v)).scale(&q2);
            let got = ext.a().block(h, h + r, h, h + r).column(j);
            assert_eq!(got, want);
        }
        for m in 1..n - 1 {
            let (lo, hi) = (ext.offset(m), ext.offset(m + 1));
            let here = ext.a().block(lo, lo + r, lo, lo + r);
            let next = ext.a().block(hi, hi + r, hi, hi + r);
            assert_eq!(next, here.scale(&q2));
        }
    }
}

#[test]
fn bad_instances_are_rejected() {
    let a = int_matrix(&[&[0, 1], &[0, 0]]);
    // q² = 1 is not primitive
    assert!(GaugeInstance::new(3, a.clone(), vec![], C::from_i64(-1)).is_err());
    // q = ζ_6 gives q² of order 3, not 2
    assert!(GaugeInstance::new(2, a.clone(), vec![], q_for(3)).is_err());
    // e_0 is killed by A, e_1 is not stable
    assert!(GaugeInstance::new(2, a.clone(), vec![vector(&[0, 1])], q_for(2)).is_err());
    assert!(GaugeInstance::new(2, a.clone(), vec![vector(&[1, 0])], q_for(2)).is_ok());
    assert!(GaugeInstance::new(2, a.mul(&a).add(&a).add(&ExactMatrix::identity(2)), vec![], q_for(2)).is_err());
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = random_instance::<C, _>(&mut rng, 4, 9, q_for(4)).unwrap();
    let field = crate::scalars::make_cyclotomic(8);
    let v = g.to_json(&field);
    let back = GaugeInstance::<C>::from_json(&v).unwrap();
    assert_eq!(back.to_json(&field), v);
    assert_eq!(back.a(), g.a());
    assert_eq!(v["N"], 4);
    let bad = serde_json::json!({"N": 2, "A": v["A"], "HI_basis": v["HI_basis"], "q": "1"});
    assert!(GaugeInstance::<C>::from_json(&bad).is_err());
    let _ = FieldDescriptor::rationals();
}

#[test]
fn random_suite_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..60 {
        let n = 3 + trial % 3;
        let g = random_instance::<C, _>(&mut rng, n, 20, q_for(n)).unwrap();
        let r = theorem5_verify(&g).unwrap();
        assert!(r.holds, "trial {trial}: {r:?}");
    }
}

#[test]
fn wznw_shaped_dims() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = 3;
    let g = wznw_shaped::<C, _>(&mut rng, n, q_for(n)).unwrap();
    assert_eq!((g.dim(), g.hi().dim()), (81, 5));
    let r = theorem5_verify(&g).unwrap();
    assert!(r.holds);
    // ℋ_I carries one chain of each length N and N-1
    let mut mult = vec![0; n];
    mult[n - 1] = 1;
    mult[n - 2] = 1;
    for row in &r.rows {
        assert_eq!(row.invariant, multiplicity_formula(n, &mult, row.k));
    }
    assert_eq!(r.rows.iter().map(|x| x.extended).collect::<Vec<_>>(), vec![1, 1]);
}

// ---- Hochschild cochains ----

#[test]
fn differential_is_the_cosimplicial_d1_at_q_squared() {
    for (u, g, action) in [z2_example().unwrap(), synthetic_example().unwrap()] {
        let c = HochschildExtension::new(&u, &g, action, 4).unwrap();
        assert!(c.matches_cosimplicial().unwrap());
    }
}

#[test]
fn coefficient_identity_on_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let (u, g, action) = synthetic_example().unwrap();
    let c = HochschildExtension::new(&u, &g, action, 3).unwrap();
    for _ in 0..10 {
        let psi = SparseVec::from_dense(&(0..4).map(|_| C::from_i64(rng.gen_range(-3..=3))).collect::<Vec<_>>());
        let x = SparseVec::from_dense(&(0..4).map(|_| C::from_i64(rng.gen_range(-3..=3))).collect::<Vec<_>>());
        for m in 1..3 {
            assert!(c.coefficient_identity_holds(&psi, &x, m).unwrap());
        }
    }
    // invariant vectors are killed by every power
    for b in g.hi().basis() {
        for m in 1..=3 {
            assert!(c.d_power(b, m).is_zero());
        }
    }
    // and a non-invariant one survives up to N-1
    let psi = vector(&[1, 0, 0, 0]);
    assert!(!c.d_power(&psi, 1).is_zero() && !c.d_power(&psi, 2).is_zero());
}

#[test]
fn trivial_algebra_gives_a_itself() {
    let u = AugmentedAlgebra::<C>::trivial();
    let n = 3;
    let a = NDiffModule::<C>::from_blocks(n, &[3, 2, 1, 1]).unwrap().d().clone();
    let g = GaugeInstance::new(n, a.clone(), (0..7).map(SparseVec::unit).collect(), q_for(n)).unwrap();
    let c = HochschildExtension::new(&u, &g, vec![ExactMatrix::identity(7)], 5).unwrap();
    assert_eq!(c.invariants().dim(), 7);
    let direct = ambient_homology(n, &a);
    for k in 1..n {
        assert_eq!(c.filtration_f0(k).unwrap().dim(), direct[k - 1]);
    }
    assert!(theorem6_verify(&u, &g, vec![ExactMatrix::identity(7)], 5).unwrap().holds);
}

#[test]
fn z2_filtration_quotients() {
    let (u, g, action) = z2_example().unwrap();
    let r = theorem6_verify(&u, &g, action, 5).unwrap();
    assert!(r.holds, "{r:?}");
    // A = 0 on the fixed line: every H_(k) is the line itself
    assert!(r.rows.iter().all(|row| row.f0 == 1 && row.invariant == 1));
}

#[test]
fn synthetic_filtration_quotients() {
    let (u, g, action) = synthetic_example().unwrap();
    let r = theorem6_verify(&u, &g, action, 5).unwrap();
    assert!(r.holds, "{r:?}");
    assert_eq!(r.rows.iter().map(|row| row.f0).collect::<Vec<_>>(), vec![1, 1]);
}

#[test]
fn hochschild_inputs_are_checked() {
    let (u, g, action) = z2_example().unwrap();
    // g² ≠ 1
    let bad = vec![ExactMatrix::identity(2), int_matrix(&[&[0, 2], &[1, 0]])];
    assert!(HochschildExtension::new(&u, &g, bad, 3).is_err());
    // wrong invariant subspace
    let g2 = GaugeInstance::new(3, ExactMatrix::zeros(2, 2), vec![vector(&[1, 0])], q_for(3)).unwrap();
    assert!(HochschildExtension::new(&u, &g2, action.clone(), 3).is_err());
    // A not commuting with the swap
    let g3 = GaugeInstance::new(3, int_matrix(&[&[0, 0], &[0, 0]]).add(&int_matrix(&[&[1, -1], &[1, -1]])), vec![vector(&[1, 1])], q_for(3)).unwrap();
    assert!(HochschildExtension::new(&u, &g3, action.clone(), 3).is_err());
    assert!(theorem6_verify(&u, &g, action.clone(), 4).is_err());
    let c = HochschildExtension::new(&u, &g, action, 4).unwrap();
    assert!(c.filtration_f0(1).is_ok());
    assert!(c.filtration_f0(2).is_err());
}

#[test]
fn extended_space_sits_inside_cochains() {
    for (u, g, action) in [z2_example().unwrap(), synthetic_example().unwrap()] {
        let c = HochschildExtension::new(&u, &g, action, 4).unwrap();
        let ext = extend(&g).unwrap();
        let iota = c.embedding(&ext).unwrap();
        assert!(c.embedding_is_chain_map(&ext).unwrap());
        assert_eq!(crate::linalg::rank(&iota), ext.dim());
    }
}

#[test]
fn extension_universal_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (u, g, action) in [z2_example().unwrap(), synthetic_example().unwrap()] {
        let c = HochschildExtension::new(&u, &g, action.clone(), 4).unwrap();
        let target = c.d_complex().unwrap();
        let ext = extend(&g).unwrap();
        let h = g.dim();
        // α = identity, and α = random U-equivariant maps built from the action
        let mut alphas = vec![ExactMatrix::identity(h)];
        for _ in 0..3 {
            let mut m = ExactMatrix::zeros(h, h);
            for x in &action {
                m = m.add(&x.scale(&C::from_i64(rng.gen_range(-2..=2))));
            }
            alphas.push(m);
        }
        for alpha in alphas {
            let e = universal_extension(&ext, &target, &alpha, g.hi()).unwrap();
            assert!(e.chain_map && e.unique);
            assert_eq!(e.maps.len(), g.n());
        }
        // a map sending ℋ_I outside the d-cycles has no extension
        let v = g.hi().basis()[0].clone();
        let mut off = SparseVec::new();
        for i in 0..h {
            if !c.d_power(&SparseVec::unit(i), 1).is_zero() {
                off = SparseVec::unit(i);
                break;
            }
        }
        let alpha = ExactMatrix::from_columns(h, &(0..h).map(|i| if v.get(i).is_zero() { SparseVec::new() } else { off.clone() }).collect::<Vec<_>>());
        assert!(universal_extension(&ext, &target, &alpha, g.hi()).is_err());
    }
}

// ---- light-cone examples ----

#[test]
fn spin1_at_standard_momentum() {
    let p = Momentum::from_ints([1, 1, 0, 0]).unwrap();
    for alpha in [C::root_of_unity(4, 1), C::one(), C::from_ratio(-3, 2)] {
        let r = spin1_complex(&p, alpha).unwrap().report();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.components, [1, 4, 1]);
        assert_eq!((r.z0, r.b0), (3, 1));
        assert_eq!(r.homology, [0, 2, 0]);
    }
}

#[test]
fn spin2_at_standard_momentum() {
    let p = Momentum::from_ints([1, 1, 0, 0]).unwrap();
    for alpha in [C::root_of_unity(4, 1), C::one()] {
        let r = spin2_complex(&p, alpha).unwrap().report();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.components, [4, 10, 4]);
        assert_eq!((r.z0, r.b0), (6, 4));
    }
}

#[test]
fn other_cone_points() {
    for p in [[5, 3, 4, 0], [1, 0, 0, 1], [13, 0, 5, 12], [3, -2, 2, 1]] {
        let p = Momentum::from_ints(p).unwrap();
        assert!(spin1_complex(&p, C::root_of_unity(4, 1)).unwrap().report().holds);
        assert!(spin2_complex(&p, C::root_of_unity(4, 3)).unwrap().report().holds);
    }
    assert!(Momentum::from_ints([1, 1, 1, 0]).is_err());
    assert!(Momentum::from_ints([-1, 1, 0, 0]).is_err());
    assert!(Momentum::from_ints([0, 0, 0, 0]).is_err());
}

#[test]
fn one_particle_q() {
    let p = Momentum::from_ints([1, 1, 0, 0]).unwrap();
    let q = spin1_q::<Q>(&p).unwrap();
    assert!(q.d().mul(q.d()).is_zero());
    let form = spin1_form::<Q>();
    assert_eq!(form.mul(q.d()), q.d().transpose().mul(&form));
    let h = q.homology();
    assert_eq!((h.dims()[0].dim_z, h.dims()[0].dim_b, h.dim(1)), (3, 1, 2));
    // the form is positive semi-definite on Z(p) with B(p) as its radical there
    let z = crate::linalg::Subspace::kernel_of(q.d());
    for a in z.basis() {
        let v = a.dot(&form.apply(a));
        assert!(v >= Q::from_i64(0));
    }
}

#[test]
fn two_particles() {
    let p1 = Momentum::from_ints([1, 1, 0, 0]).unwrap();
    let p2 = Momentum::from_ints([1, 0, 1, 0]).unwrap();
    let r = two_particle_study::<Q>(&p1, &p2).unwrap();
    assert!(r.holds, "{r:?}");
    assert!(r.square_nonzero && r.cube_zero);
    assert_eq!((r.h1, r.h2, r.zz, r.physical), (9, 9, 9, 4));
    assert!(two_particle_study::<Q>(&p1, &p1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn extension_identities(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_instance::<C, _>(&mut rng, n, 12, q_for(n)).unwrap();
        let ext = extend(&g).unwrap();
        let q2 = g.q().clone() * g.q();
        prop_assert!(ext.a().mul(ext.d()).sub(&ext.d().mul(ext.a()).scale(&q2)).is_zero());
        prop_assert!(ext.q_matrix().pow(n).is_zero());
        prop_assert!(theorem5_verify(&g).unwrap().holds);
    }

    #[test]
    fn spin_checks_do_not_depend_on_alpha(num in 1i64..6, den in 1i64..6, k in 0i64..4) {
        let p = Momentum::from_ints([5, 4, 3, 0]).unwrap();
        let alpha = C::root_of_unity(4, k) * &C::from_ratio(num, den);
        let r1 = spin1_complex(&p, alpha.clone()).unwrap().report();
        let r2 = spin2_complex(&p, alpha).unwrap().report();
        prop_assert!(r1.holds && r2.holds);
        prop_assert_eq!((r2.z0, r2.b0), (6, 4));
    }
}
