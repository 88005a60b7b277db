use proptest::prelude::*;

use super::examples::{abelian_model, field, mono, syzygy_model, var};
use super::*;
use crate::poly::{monomial_count, Poly};
use crate::scalars::Rational;

type Q = Rational;

/// H dims at (weight, degree) from a report, 0 when absent.
fn h(rows: &[CohomologyRow], w: i64, k: i64) -> usize {
    rows.iter().find(|r| r.weight == w && r.degree == k).map_or(0, |r| r.dim)
}

#[test]
fn ghost_signs() {
    let (p1, p2, c1) = (Ghost::<Q>::pi(2, 0), Ghost::<Q>::pi(2, 1), Ghost::<Q>::chi(2, 0));
    assert!(p1.mul(&p1).is_zero());
    assert_eq!(p2.mul(&p1), p1.mul(&p2).neg());
    assert_eq!(c1.mul(&p1), p1.mul(&c1).neg());
    let x = Ghost::poly(var(2, 0));
    assert_eq!(x.mul(&c1), c1.mul(&x));
    // π2 χ1 π1 = −π2 π1 χ1 = π1 π2 χ1
    assert_eq!(p2.mul(&c1).mul(&p1), p1.mul(&p2).mul(&c1));
}

#[test]
fn koszul_of_one_variable() {
    let d = 3;
    let r = koszul_report(&[var(d, 0)], d, 5, true).unwrap();
    assert!(r.acyclic && r.h0_matches && !r.discrepancy);
    for w in 0..=5 {
        let h0 = r.rows.iter().find(|x| x.weight == w && x.degree == 0).unwrap().dim;
        assert_eq!(h0, monomial_count(2, w));
    }
}

#[test]
fn koszul_of_two_variables() {
    let d = 3;
    let r = koszul_report(&[var(d, 0), var(d, 1)], d, 5, true).unwrap();
    assert!(r.acyclic && r.h0_matches);
    assert!(r.rows.iter().filter(|x| x.degree == 0).all(|x| x.dim == 1));
    let c = koszul(&[var(d, 0), var(d, 1)], d, 3).unwrap();
    assert_eq!(c.degrees(), -2..=0);
}

#[test]
fn koszul_of_a_repeated_constraint() {
    let d = 2;
    let r = koszul_report(&[var(d, 0), var(d, 0)], d, 3, true).unwrap();
    assert!(!r.acyclic && r.discrepancy);
    // π1 − π2 is a cycle at weight 1
    assert_eq!(r.rows.iter().find(|x| x.weight == 1 && x.degree == -1).unwrap().dim, 1);
    assert!(!koszul_report(&[var(d, 0), var(d, 0)], d, 3, false).unwrap().discrepancy);
}

#[test]
fn koszul_of_a_quadric() {
    // u = x1 x2 − x3²: Poly/(u) has 2w + 1 monomials' worth in degree w
    let d = 3;
    let u = mono(d, &[(0, 1), (1, 1)], 1).add(&mono(d, &[(2, 2)], -1));
    let r = koszul_report(&[u.clone()], d, 5, true).unwrap();
    assert!(r.acyclic && r.h0_matches);
    for w in 0..=5 {
        assert_eq!(quotient_dim(&[u.clone()], d, w), 2 * w + 1);
    }
}

#[test]
fn delta0_cohomology_is_concentrated() {
    for sys in [abelian_model(2, 2), syzygy_model()] {
        let k = build_delta0_delta1(&sys).unwrap();
        let mp = sys.fields().len() as i64;
        for w in k.weights().lowest()..=4 {
            for j in 0..=mp {
                for i in -(sys.constraints().len() as i64)..0 {
                    assert_eq!(k.delta0_cohomology(w, i, j).unwrap(), 0);
                }
                // H^{0,j} = (Poly/(u)) ⊗ Λ^j: sum over χ-monomials of the right weight
                let mut expected = 0;
                for t in crate::cosimplicial::increasing_tuples(mp as usize, j as usize) {
                    let g = w - t.iter().map(|a| sys.field_weight(*a)).sum::<i64>();
                    if g >= 0 {
                        expected += quotient_dim(sys.constraints(), sys.vars(), g as usize);
                    }
                }
                assert_eq!(k.delta0_cohomology(w, 0, j).unwrap(), expected, "w={w} j={j}");
            }
        }
    }
}

#[test]
fn constant_field_with_linear_constraint_needs_no_tower() {
    let d = 2;
    let sys = PolyConstraintSystem::new(d, vec![var(d, 0)], vec![VectorField::coordinate(d, 1)], None, None, true).unwrap();
    let mut k = build_delta0_delta1(&sys).unwrap();
    assert!(tower_sum(k.deltas(), 2, &Ghost::pi(d, 0)).is_zero());
    k.delta_tower().unwrap();
    assert_eq!(k.top(), 1);
    assert_eq!(k.structural_bound(), 1);
}

#[test]
fn abelian_model_anticommutes_and_reduces_to_a_point() {
    let sys = abelian_model(2, 2);
    let mut k = build_delta0_delta1(&sys).unwrap();
    for g in generators::<Q>(4, 2, 2) {
        assert!(tower_sum(k.deltas(), 1, &g).is_zero());
        assert!(tower_sum(k.deltas(), 2, &g).is_zero());
    }
    k.delta_tower().unwrap();
    assert_eq!(k.top(), 1);
    let r = theorem4_verify(&sys, 4).unwrap();
    assert!(r.holds && r.koszul_acyclic);
    // leaves fill V, so only constants survive
    let total: usize = r.rows.iter().map(|x| x.brs).sum();
    assert_eq!(total, 1);
    assert_eq!(r.rows.iter().find(|x| x.weight == 0 && x.degree == 0).unwrap().brs, 1);
}

#[test]
fn abelian_model_with_transverse_directions() {
    // x1..x3, p1..p3 with u = (p1, p2), ξ = (∂x1, ∂x2): invariants are ℚ[x3, p3]
    let sys = abelian_model(3, 2);
    let r = theorem4_verify(&sys, 4).unwrap();
    assert!(r.holds);
    for w in 0..=4 {
        let h0 = r.rows.iter().find(|x| x.weight == w && x.degree == 0).unwrap().brs;
        assert_eq!(h0, w as usize + 1);
        assert!(r.rows.iter().filter(|x| x.weight == w && x.degree != 0).all(|x| x.brs == 0));
    }
}

#[test]
fn one_constraint_one_field() {
    // (x, y, p), u = p, ξ = ∂x: invariant functions ℚ[y]
    let d = 3;
    let sys = PolyConstraintSystem::new(d, vec![var(d, 2)], vec![VectorField::coordinate(d, 0)], None, None, true).unwrap();
    let r = theorem4_verify(&sys, 5).unwrap();
    assert!(r.holds);
    for w in 0..=5 {
        assert_eq!(r.rows.iter().find(|x| x.weight == w && x.degree == 0).unwrap().brs, 1);
        assert_eq!(r.rows.iter().find(|x| x.weight == w && x.degree == 1).unwrap().brs, 0);
    }
}

#[test]
fn no_constraints_gives_the_longitudinal_complex() {
    let d = 2;
    let sys = PolyConstraintSystem::new(d, vec![], vec![VectorField::<Q>::coordinate(d, 0)], None, None, true).unwrap();
    let mut k = build_delta0_delta1(&sys).unwrap();
    assert!(k.deltas()[0].is_zero());
    k.delta_tower().unwrap();
    let r = theorem4_verify(&sys, 4).unwrap();
    assert!(r.holds);
    assert!(r.rows.iter().filter(|x| x.degree == 0).all(|x| x.brs == 1));
}

#[test]
fn nonabelian_linear_fields_need_no_tower() {
    // u = z, ξ1 = x∂x, ξ2 = y∂x with [ξ1, ξ2] = −ξ2; constant structure constants keep δ1² = 0
    let d = 3;
    let f1 = field(d, &[(0, var(d, 0))]);
    let f2 = field(d, &[(0, var(d, 1))]);
    let sys = PolyConstraintSystem::new(d, vec![var(d, 2)], vec![f1, f2], None, None, true).unwrap();
    assert_eq!(*sys.structure(1, 0, 1), mono(d, &[], -1));
    let mut k = build_delta0_delta1(&sys).unwrap();
    for g in generators::<Q>(d, 1, 2) {
        assert!(tower_sum(k.deltas(), 2, &g).is_zero());
    }
    k.delta_tower().unwrap();
    assert_eq!(k.top(), 1);
    assert!(theorem4_verify(&sys, 4).unwrap().holds);
}

#[test]
fn syzygy_model_has_a_second_order_term() {
    let sys = syzygy_model();
    let mut k = build_delta0_delta1(&sys).unwrap();
    assert!(!tower_sum(k.deltas(), 2, &Ghost::pi(3, 0)).is_zero());
    k.delta_tower().unwrap();
    assert_eq!(k.top(), 2);
    // δ2 π1 = z1 π1 π2 χ1 χ2
    let expected = Ghost::basis(0b11, 0b11, var(3, 1));
    assert_eq!(k.deltas()[2].on_pi[0], expected);
    for n in 0..=4 {
        for g in generators::<Q>(3, 2, 2) {
            assert!(tower_sum(k.deltas(), n, &g).is_zero());
        }
    }
    for w in k.weights().lowest()..=3 {
        // d² = 0 is checked when the complex is assembled
        k.weight_complex(w).unwrap();
    }
    let r = theorem4_verify(&sys, 3).unwrap();
    assert!(r.holds && r.tower_top == 2);
}

#[test]
fn installed_maps_obey_leibniz() {
    let mut k = build_delta0_delta1(&syzygy_model()).unwrap();
    k.delta_tower().unwrap();
    assert!(k.deltas().iter().all(leibniz_holds));
}

#[test]
fn bad_witnesses_are_rejected() {
    let d = 3;
    let zero = vec![vec![Poly::zero(); 1]; 1];
    let mut a = zero.clone();
    a[0][0] = mono(d, &[], 1);
    // ξ = ∂x, u = z: ξ(u) = 0 ≠ 1·u
    let r = PolyConstraintSystem::new(d, vec![var(d, 2)], vec![VectorField::coordinate(d, 0)], None, Some(vec![a]), true);
    assert!(r.is_err());
    // ∂z is not tangent to z = 0
    assert!(PolyConstraintSystem::new(d, vec![var(d, 2)], vec![VectorField::coordinate(d, 2)], None, None, true).is_err());
    // [∂x, x∂y] = ∂y is not in the span of the two
    let f = field(d, &[(1, var(d, 0))]);
    assert!(PolyConstraintSystem::new(d, vec![], vec![VectorField::coordinate(d, 0), f], None, None, true).is_err());
}

#[test]
fn small_window_is_refused() {
    let d = 3;
    let u = mono(d, &[(2, 2)], 1);
    let sys = PolyConstraintSystem::new(d, vec![u], vec![VectorField::coordinate(d, 0)], None, None, true).unwrap();
    assert!(theorem4_verify(&sys, 1).is_err());
}

#[test]
fn de_rham_forms() {
    let d = 2;
    let forms = derivation_forms(d, vec![VectorField::<Q>::coordinate(d, 0), VectorField::coordinate(d, 1)], 2).unwrap();
    let rows = forms.cohomology(0, 5).unwrap();
    assert_eq!(h(&rows, 0, 0), 1);
    assert!(rows.iter().all(|r| r.dim == 0 || (r.weight, r.degree) == (0, 0)));
}

#[test]
fn forms_along_one_direction() {
    let d = 2;
    let rows = derivation_forms(d, vec![VectorField::<Q>::coordinate(d, 0)], 1).unwrap().cohomology(0, 5).unwrap();
    for w in 0..=5 {
        assert_eq!(h(&rows, w, 0), 1);
        assert_eq!(h(&rows, w, 1), 0);
    }
}

#[test]
fn forms_without_derivations() {
    let d = 2;
    let rows = derivation_forms::<Q>(d, vec![], 0).unwrap().cohomology(0, 4).unwrap();
    for w in 0..=4 {
        assert_eq!(h(&rows, w, 0), w as usize + 1);
    }
}

#[test]
fn forms_reject_open_families() {
    let d = 2;
    let f = field(d, &[(1, var(d, 0))]);
    assert!(derivation_forms(d, vec![VectorField::coordinate(d, 0), f], 2).is_err());
}

#[test]
fn system_json_round_trip() {
    let sys = syzygy_model();
    let back = PolyConstraintSystem::<Q>::from_json(&sys.to_json()).unwrap();
    assert_eq!(back.to_json(), sys.to_json());
    let v: serde_json::Value = serde_json::from_str(
        r#"{"vars": 2, "constraints": [{"1,0": 1}], "vector_fields": [[{}, {"0,0": "1"}]]}"#,
    )
    .unwrap();
    let s = PolyConstraintSystem::<Q>::from_json(&v).unwrap();
    assert!(theorem4_verify(&s, 3).unwrap().holds);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn constant_foliations_match(a in -2i64..=2, b in -2i64..=2, c in -2i64..=2, e in -2i64..=2) {
        prop_assume!(a * e - b * c != 0);
        // (x1, x2, x3, p), u = p, fields two independent constant combinations of ∂x1, ∂x2
        let d = 4;
        let k = |s: i64| mono(d, &[], s);
        let f1 = field(d, &[(0, k(a)), (1, k(b))]);
        let f2 = field(d, &[(0, k(c)), (1, k(e))]);
        let f1 = if f1.is_zero() { VectorField::coordinate(d, 0) } else { f1 };
        let sys = PolyConstraintSystem::new(d, vec![var(d, 3)], vec![f1, f2], None, None, true).unwrap();
        let r = theorem4_verify(&sys, 3).unwrap();
        prop_assert!(r.holds);
        for w in 0..=3 {
            prop_assert_eq!(r.rows.iter().find(|x| x.weight == w && x.degree == 0).unwrap().brs, 1);
        }
    }
}
