mod common;

use common::grp;
use num_rational::Ratio;
use proptest::prelude::*;
use untwist::oracle::dw_partition_full_sum;
use untwist::torsion::{
    br_n_mod_m, coboundary, cohomology_mod_m, dw_partition, dw_weight, homology_exponent, is_cocycle, omega_regular_elements,
    orbifold_partition,
};
use untwist::{h0n, orbit_representatives, sha_n, BarBasis, CochainVector, Config, Error};

fn cfg() -> Config {
    Config::default()
}

#[test]
fn degree_two_weight_is_the_commutator_phase() {
    let g = grp("C4xC2");
    let m = 4;
    let vals: Vec<u64> = (0..49).map(|i| (i * i + 3 * i) % m).collect();
    let w = CochainVector::from_values(&g, 2, m, vals).unwrap();
    for a in 0..8 {
        for b in 0..8 {
            let expect = (w.eval(8, &[a, b]) + m - w.eval(8, &[b, a])) % m;
            assert_eq!(dw_weight(&g, &w, &[a, b]).unwrap(), expect);
        }
    }
}

#[test]
fn degree_three_weight_is_the_six_term_sum() {
    let g = grp("C2^3");
    let basis = BarBasis::new(&g, 3, &cfg().budgets).unwrap();
    let m = 5;
    let vals: Vec<u64> = (0..basis.size() as u64).map(|i| (7 * i + 2) % m).collect();
    let w = CochainVector::from_values(&g, 3, m, vals).unwrap();
    let (a, b, c) = (1, 2, 4);
    let f = |x: usize, y: usize, z: usize| w.eval(8, &[x, y, z]) as i64;
    let six = f(a, b, c) - f(a, c, b) - f(b, a, c) + f(b, c, a) + f(c, a, b) - f(c, b, a);
    assert_eq!(dw_weight(&g, &w, &[a, b, c]).unwrap() as i64, six.rem_euclid(m as i64));
}

#[test]
fn klein_twisted_classes_have_six_negative_pairs() {
    let c = cfg();
    let g = grp("C2xC2");
    let h = cohomology_mod_m(&g, 2, 2, &c).unwrap();
    let br = br_n_mod_m(&g, 2, 2, &c).unwrap();
    for coords in h.enumerate(100).unwrap() {
        let w = h.class(&coords);
        let negative = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).filter(|&(a, b)| dw_weight(&g, &w, &[a, b]).unwrap() == 1).count();
        let z = dw_partition_full_sum(&g, 2, &w).unwrap().exact_real().unwrap();
        if br.project(&w).is_ok() {
            assert_eq!((negative, z), (0, Ratio::from_integer(4)));
        } else {
            assert_eq!((negative, z), (6, Ratio::from_integer(1)));
        }
    }
}

#[test]
fn emitted_representatives_are_cocycles() {
    let c = cfg();
    for (s, n) in [("S3", 3), ("Q8", 2), ("D8", 3), ("C3xC3", 2), ("A4", 3)] {
        let g = grp(s);
        let m = homology_exponent(&g, n, &c).unwrap().max(2);
        for set in [cohomology_mod_m(&g, n, m, &c).unwrap(), br_n_mod_m(&g, n, m, &c).unwrap()] {
            for w in set.basis() {
                assert!(is_cocycle(&g, w, &c).unwrap(), "{s} n={n}");
            }
        }
    }
}

#[test]
fn regularity_characterizes_br2() {
    let c = cfg();
    for s in ["C2xC2", "C2xC4", "D8", "Q8", "C2^3", "S3", "C3xC3"] {
        let g = grp(s);
        let m = homology_exponent(&g, 2, &c).unwrap().max(2);
        let h = cohomology_mod_m(&g, 2, m, &c).unwrap();
        let br = br_n_mod_m(&g, 2, m, &c).unwrap();
        for coords in h.enumerate(10_000).unwrap() {
            let w = h.class(&coords);
            let all = omega_regular_elements(&g, &w).unwrap().len() == g.order();
            assert_eq!(all, br.project(&w).is_ok(), "{s} {coords:?}");
        }
    }
}

#[test]
fn sha_order_divides_h0n_order() {
    let c = cfg();
    for s in ["S3", "D8", "Q8", "A4", "D10", "C2^3"] {
        let g = grp(s);
        for n in 2..=3 {
            let sh = sha_n(&g, n, &c).unwrap().torsion_order();
            let h0 = h0n(&g, n, &c).unwrap().torsion_order();
            assert!((h0 % sh).is_zero(), "{s} n={n}");
        }
    }
}

#[test]
fn br_examples() {
    let c = cfg();
    let b = br_n_mod_m(&grp("C2^3"), 3, 2, &c).unwrap();
    // Ext(H_2, Z/2) = (Z/2)^3 sits inside, on top of H_03 = (Z/2)^6.
    assert_eq!(b.invariants().torsion_u64(), vec![2; 9]);
    assert_eq!(br_n_mod_m(&grp("S3"), 3, 6, &c).unwrap().invariants().torsion_u64(), vec![6]);
}

#[test]
fn partition_checks() {
    let c = cfg();
    let g = grp("D8");
    let h = cohomology_mod_m(&g, 3, 4, &c).unwrap();
    assert!(matches!(h.enumerate(2), Err(Error::BudgetExceeded { .. })));
    for coords in h.enumerate(10_000).unwrap().into_iter().take(12) {
        let w = h.class(&coords);
        let orbit = dw_partition(&g, 3, &w, &c).unwrap();
        let full = dw_partition_full_sum(&g, 3, &w).unwrap();
        assert_eq!(orbit.histogram, full);
        let reps = orbit_representatives(&g, 3, &c.budgets, c.exec).unwrap();
        let ones = (0..reps.len()).map(|i| (i, num_complex::Complex64::new(1.0, 0.0))).collect();
        let z = orbifold_partition(&g, 3, &w, &ones, &c).unwrap();
        assert!((z - orbit.value).norm() < 1e-9);
    }
    let zero = CochainVector::zero(&g, 2, 2);
    let z = dw_partition(&g, 2, &zero, &c).unwrap();
    // |X_2(G)| / |G| is the number of conjugacy classes, 5 for D8.
    assert_eq!(z.histogram.exact_real(), Some(Ratio::from_integer(5)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn class_weights_are_invariant(coords in prop::collection::vec(0u64..6, 1), alpha in prop::collection::vec(0u64..6, 25), k in 0usize..6) {
        let c = cfg();
        let g = grp("S3");
        let h = cohomology_mod_m(&g, 3, 6, &c).unwrap();
        let w = h.class(&coords);
        let alpha = CochainVector::from_values(&g, 2, 6, alpha).unwrap();
        let db = coboundary(&g, &alpha, &c).unwrap();
        prop_assert!(is_cocycle(&g, &db, &c).unwrap());
        prop_assert!(h.project(&db).unwrap().iter().all(|&x| x == 0));
        let shifted = w.add(&db);
        for o in orbit_representatives(&g, 3, &c.budgets, c.exec).unwrap() {
            let t = &o.rep;
            let base = dw_weight(&g, &w, t).unwrap();
            prop_assert_eq!(dw_weight(&g, &shifted, t).unwrap(), base);
            let ct: Vec<usize> = t.iter().map(|&x| g.conj(k, x)).collect();
            prop_assert_eq!(dw_weight(&g, &w, &ct).unwrap(), base);
        }
    }
}
