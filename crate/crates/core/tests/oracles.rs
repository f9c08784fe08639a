mod common;

use common::*;
use lorentz_core::convgeom::{minkowski_sum_all, mixed_volume, MixedVolumeSpec, Polytope};
use lorentz_core::harness::corpus::{corpus_poly, coordinate, trial_rng};
use lorentz_core::ineq::{pr_constant, rkt_constant, rkt_optimal_constant, RktConstant};
use lorentz_core::lorentz::{is_lorentzian, lorentzian_rayleigh_constant, m_convex_support};
use lorentz_core::schurmix::{schur, Partition};
use lorentz_core::{MultiIndex, Rat};
use rand::Rng;

#[test]
fn rkt_constants_match_factorial_formula() {
    for d in 1..=12 {
        for k in 0..=d {
            for l in 0..=d - k {
                assert_eq!(rkt_constant(d, k, l).unwrap(), rkt_constant_oracle(d, k, l), "({d},{k},{l})");
                assert!(rkt_optimal_constant(d, k, l).unwrap() <= rkt_constant(d, k, l).unwrap());
            }
        }
        assert!(rkt_constant(d, d, 1).is_err());
    }
}

#[test]
fn pr_constant_is_the_largest_rkt_constant_and_sits_on_the_top_degree() {
    for d in 1..=12 {
        let all: Vec<(u32, u32, Rat)> = (0..=d)
            .flat_map(|k| (0..=d - k).map(move |l| (k, l, rkt_constant_oracle(d, k, l))))
            .collect();
        let best = all.iter().map(|(_, _, c)| c.clone()).max().unwrap();
        assert_eq!(pr_constant(d), best, "d = {d}");
        assert!(all.iter().any(|(k, l, c)| *c == best && k + l == d), "d = {d}");
    }
}

#[test]
fn rayleigh_constant_is_the_first_rkt_constant() {
    for d in 2..=12 {
        assert_eq!(rkt_constant(d, 1, 1).unwrap(), lorentzian_rayleigh_constant(d));
        assert_eq!(RktConstant::Proven.value(d, 1, 1).unwrap(), rat(2 * (d as i64 - 1), d as i64));
    }
}

#[test]
fn optimal_constant_is_one_on_the_top_degree() {
    for d in 1..=6 {
        for k in 0..=d {
            assert_eq!(rkt_optimal_constant(d, k, d - k).unwrap(), int(1), "({d},{k})");
        }
    }
    assert_eq!(rkt_optimal_constant(3, 1, 1).unwrap(), rat(4, 3));
    assert_eq!(rkt_optimal_constant(5, 2, 1).unwrap(), rat(9, 5));
}

#[test]
fn schur_matches_conjugate_bialternant() {
    for e in 1..=4u32 {
        for size in 0..=6u32 {
            for lambda in Partition::all_of_size(size, e) {
                let s = schur(&lambda, e).unwrap();
                assert!(s.has_nonnegative_coefficients(), "{lambda}");
                let (top, vandermonde) = bialternant_pair(lambda.parts(), e);
                assert_eq!(&s * &vandermonde, top, "{lambda} with e = {e}");
            }
        }
    }
}

#[test]
fn zonotope_volumes_match_determinant_sums() {
    let mut rng = trial_rng(7, 0);
    for n in 2..=3usize {
        for count in n..=n + 2 {
            let gens: Vec<Vec<Rat>> = (0..count).map(|_| (0..n).map(|_| coordinate(&mut rng)).collect()).collect();
            let segs: Vec<Polytope> =
                gens.iter().map(|g| Polytope::segment(vec![int(0); n], g.clone()).unwrap()).collect();
            let refs: Vec<&Polytope> = segs.iter().collect();
            let z = minkowski_sum_all(&refs).unwrap();
            assert_eq!(z.volume(), &zonotope_volume(&gens), "generators {gens:?}");
            if count == n {
                let spec = MixedVolumeSpec::new(segs.clone(), vec![1; n]).unwrap();
                assert_eq!(mixed_volume(&spec).unwrap(), segment_mixed_volume(&gens));
            }
        }
    }
}

#[test]
fn m_convexity_matches_the_definition() {
    let mut rng = trial_rng(11, 0);
    let all = MultiIndex::all_of_degree(3, 3);
    for _ in 0..300 {
        let set: Vec<MultiIndex> = all.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
        let raw: Vec<Vec<u32>> = set.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(m_convex_support(&set).unwrap().holds, m_convex_oracle(&raw), "{raw:?}");
    }
}

#[test]
fn products_of_forms_are_lorentzian() {
    let forms = vec![ints(&[1, 2, 0]), ints(&[0, 1, 3]), ints(&[4, 0, 1])];
    assert!(is_lorentzian(&product_of_forms(&forms)).holds);
    let squares = &product_of_forms(&[ints(&[1, 0])]).pow(2) + &product_of_forms(&[ints(&[0, 1])]).pow(2);
    assert!(!is_lorentzian(&squares).holds);
}

#[test]
fn corpus_is_deterministic_and_matches_the_golden_fixture() {
    let golden: serde_json::Value =
        serde_json::from_str(include_str!("fixtures/corpus_seed0_trial0.json")).unwrap();
    assert_eq!(corpus_poly(0, 0).to_json(), golden);
    for t in 0..20 {
        assert_eq!(corpus_poly(3, t).to_json(), corpus_poly(3, t).to_json());
        assert!(is_lorentzian(&corpus_poly(3, t).poly).holds);
    }
    assert_ne!(corpus_poly(0, 1).to_json(), corpus_poly(1, 1).to_json());
}
