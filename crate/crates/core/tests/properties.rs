mod common;

use common::*;
use lorentz_core::convgeom::{affine_dim, BodyFamily, Polytope};
use lorentz_core::derivs::DerivativeTable;
use lorentz_core::ineq::{pr_check, rkt_sweep, supermodularity_check, RktConstant, Sweep};
use lorentz_core::lorentz::{inertia, is_lorentzian};
use lorentz_core::matrix::SymMatrix;
use lorentz_core::matroid::{nd_with, submodularity_triple_check};
use lorentz_core::schurmix::{derived_schur, md_hodge_form, mixed_discriminant, Partition};
use lorentz_core::{HomPoly, MultiIndex, Rat};
use num::{Signed, Zero};
use proptest::prelude::*;

fn signed_rat() -> impl Strategy<Value = Rat> {
    (-8i64..=8, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn nonneg_rat() -> impl Strategy<Value = Rat> {
    (0i64..=8, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec(nonneg_rat(), n)
}

fn signed_point(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec(signed_rat(), n)
}

/// A form with nonnegative coefficients, not identically zero.
fn form(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    (point(n), 0..n).prop_map(|(mut v, i)| {
        if v.iter().all(Zero::is_zero) {
            v[i] = int(1);
        }
        v
    })
}

/// Products of `d ≤ 4` nonnegative forms in `n ≤ 3` variables, with a point.
fn product_and_point() -> impl Strategy<Value = (HomPoly, Vec<Rat>)> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(n, d)| {
        (proptest::collection::vec(form(n), d), point(n)).prop_map(|(forms, x)| (product_of_forms(&forms), x))
    })
}

fn signed_poly() -> impl Strategy<Value = HomPoly> {
    (1usize..=3, 1u32..=3).prop_flat_map(|(n, d)| {
        let monos = MultiIndex::all_of_degree(n, d);
        proptest::collection::vec(signed_rat(), monos.len()).prop_map(move |cs| {
            let terms = monos.iter().cloned().zip(cs).filter(|(_, c)| !c.is_zero());
            HomPoly::new(n, d, terms).unwrap()
        })
    })
}

fn polytope(n: usize) -> impl Strategy<Value = Polytope> {
    proptest::collection::vec(signed_point(n), 1..=5).prop_map(move |pts| Polytope::new(n, pts).unwrap())
}

fn pd_matrix(n: usize) -> impl Strategy<Value = SymMatrix> {
    proptest::collection::vec(-2i64..=2, n * n).prop_map(move |b| {
        SymMatrix::from_fn(n, |i, j| {
            let dot: i64 = (0..n).map(|k| b[k * n + i] * b[k * n + j]).sum();
            int(dot + i64::from(i == j))
        })
    })
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn euler_identity((f, x) in signed_poly().prop_flat_map(|f| { let n = f.nvars(); (Just(f), signed_point(n)) })) {
        let grad = f.gradient_at(&x).unwrap();
        let lhs: Rat = grad.iter().zip(&x).map(|(g, xi)| g * xi).sum();
        prop_assert_eq!(lhs, int(f.degree() as i64) * f.evaluate(&x).unwrap());
    }

    #[test]
    fn partials_commute(f in signed_poly(), i in 0usize..3, j in 0usize..3) {
        let n = f.nvars();
        let (i, j) = (i % n, j % n);
        let ij = f.partial_var(i).unwrap().partial_var(j).unwrap();
        let ji = f.partial_var(j).unwrap().partial_var(i).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn evaluation_is_multiplicative(f in signed_poly(), g in signed_poly(), x in signed_point(3)) {
        prop_assume!(f.nvars() == g.nvars());
        let x = &x[..f.nvars()];
        let fg = &f * &g;
        prop_assert_eq!(fg.evaluate(x).unwrap(), f.evaluate(x).unwrap() * g.evaluate(x).unwrap());
    }

    #[test]
    fn derivative_table_agrees_with_symbolic_partials((f, x) in product_and_point()) {
        let table = DerivativeTable::new(&f, &x).unwrap();
        for alpha in MultiIndex::all_up_to_degree(f.nvars(), f.degree()) {
            prop_assert_eq!(table.exact(&alpha), f.partial(&alpha).unwrap().evaluate(&x).unwrap());
        }
    }

    #[test]
    fn products_of_nonnegative_forms_are_lorentzian((f, _) in product_and_point()) {
        prop_assert!(is_lorentzian(&f).holds);
        for i in 0..f.nvars() {
            prop_assert!(is_lorentzian(&f.partial_var(i).unwrap()).holds);
        }
    }

    #[test]
    fn lorentzian_hessians_have_one_positive_eigenvalue((f, x) in product_and_point()) {
        prop_assume!(f.degree() >= 2 && x.iter().all(|v| v.is_positive()));
        prop_assert!(inertia(&f.hessian_at(&x).unwrap()).positive <= 1);
    }

    #[test]
    fn membership_is_invariant_under_variable_permutation(f in signed_poly()) {
        let n = f.nvars();
        let reversed: Vec<Vec<Rat>> = (0..n)
            .map(|j| (0..n).map(|k| if k == n - 1 - j { int(1) } else { int(0) }).collect())
            .collect();
        let g = f.substitute_linear(&reversed, n).unwrap();
        prop_assert_eq!(is_lorentzian(&f).holds, is_lorentzian(&g).holds);
    }

    #[test]
    fn rkt_holds_on_products((f, x) in product_and_point()) {
        let rep = rkt_sweep(&f, &[x], RktConstant::Proven, Sweep::Full).unwrap();
        prop_assert!(rep.verdict.holds, "{:?}", rep.verdict);
    }

    #[test]
    fn pr_and_supermodularity_hold_on_products((f, x) in product_and_point(), y in point(3), z in point(3)) {
        let n = f.nvars();
        prop_assert!(pr_check(&f, &x, &y[..n], &z[..n]).unwrap().holds);
        prop_assert!(supermodularity_check(&f, &x, &y[..n], &z[..n]).unwrap().holds);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn volume_is_translation_invariant_and_homogeneous(p in polytope(3), t in signed_point(3), c in nonneg_rat()) {
        prop_assert_eq!(p.translate(&t).unwrap().volume().clone(), p.volume().clone());
        let scaled = p.scale(&c).unwrap();
        prop_assert_eq!(scaled.volume(), &(p.volume() * &c * &c * &c));
        prop_assert_eq!(Polytope::new(3, p.vertices().to_vec()).unwrap(), p);
    }

    #[test]
    fn doubling_multiplies_volume_by_two_to_the_n(p in polytope(2)) {
        prop_assert_eq!(p.minkowski_sum(&p).unwrap().volume().clone(), p.volume() * int(4));
    }

    #[test]
    fn affine_dim_of_a_sum_is_the_rank_of_joint_directions(a in polytope(3), b in polytope(3)) {
        let dirs = |p: &Polytope| -> Vec<Vec<Rat>> {
            let v0 = &p.vertices()[0];
            p.vertices().iter().map(|v| v.iter().zip(v0).map(|(x, y)| x - y).collect()).collect()
        };
        let mut all = dirs(&a);
        all.extend(dirs(&b));
        let s = a.minkowski_sum(&b).unwrap();
        prop_assert_eq!(s.affine_dim(), rank(&all));
        prop_assert_eq!(affine_dim(&s), s.affine_dim());
    }

    #[test]
    fn mixed_volume_is_symmetric_and_diagonal(a in polytope(2), b in polytope(2)) {
        let ab = BodyFamily::new(vec![a.clone(), b.clone()]).unwrap().mixed_volume(&[1, 1]).unwrap();
        let ba = BodyFamily::new(vec![b, a.clone()]).unwrap().mixed_volume(&[1, 1]).unwrap();
        prop_assert_eq!(&ab, &ba);
        prop_assert!(!ab.is_negative());
        let aa = BodyFamily::new(vec![a.clone(), a.clone()]).unwrap().mixed_volume(&[1, 1]).unwrap();
        prop_assert_eq!(&aa, a.volume());
    }

    #[test]
    fn nd_is_affine_invariant_and_monotone(a in polytope(3), b in polytope(3), t in signed_point(3), m in 1usize..=3) {
        let w = Polytope::cube(3);
        let base = nd_with(&a, m, &w).unwrap();
        prop_assert_eq!(base, m.min(a.affine_dim()));
        prop_assert_eq!(nd_with(&a, m, &Polytope::standard_simplex(3)).unwrap(), base);
        prop_assert_eq!(nd_with(&a.translate(&t).unwrap(), m, &w).unwrap(), base);
        prop_assert_eq!(nd_with(&a.scale(&int(3)).unwrap(), m, &w).unwrap(), base);
        let sum = nd_with(&a.minkowski_sum(&b).unwrap(), m, &w).unwrap();
        prop_assert!(sum >= base.max(nd_with(&b, m, &w).unwrap()));
    }

    #[test]
    fn nd_submodularity_on_triples(a in polytope(3), b in polytope(3), c in polytope(3), m in 1usize..=3) {
        prop_assert!(submodularity_triple_check(&a, &b, &c, m, None).unwrap().holds);
    }

    #[test]
    fn derived_schur_has_nonnegative_coefficients(size in 1u32..=4, e in 2u32..=3, pick in 0usize..16, i in 0u32..=4) {
        let all = Partition::all_of_size(size, e);
        let lambda = &all[pick % all.len()];
        let i = i.min(size);
        prop_assert!(derived_schur(lambda, e, i).unwrap().has_nonnegative_coefficients());
    }

    #[test]
    fn mixed_discriminant_of_equal_matrices_is_the_determinant(a in pd_matrix(3)) {
        prop_assert_eq!(mixed_discriminant(&[a.clone(), a.clone(), a.clone()]).unwrap(), a.det());
    }

    #[test]
    fn hodge_form_has_lorentzian_signature(w in pd_matrix(3), h in pd_matrix(3), m in 2usize..=3) {
        let hyps = if m == 3 { vec![h] } else { vec![] };
        let g = md_hodge_form(&hyps, &w, m).unwrap();
        let ine = inertia(&g);
        prop_assert_eq!((ine.positive, ine.zero, ine.negative), (1, 0, 5));
    }
}
