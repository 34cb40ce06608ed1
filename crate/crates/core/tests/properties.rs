use jetloci::covers::compute_covers;
use jetloci::curve::resolve_plane_curve;
use jetloci::lefschetz::{lefschetz_number, zeta_factorization};
use jetloci::model::fixtures::{cusp, node};
use jetloci::oracle::{contact_count, naive_count, CountOptions, DEFAULT_NAIVE_CAP};
use jetloci::separation::{is_m_separating, separate};
use jetloci::spectral::{contributing_set, e1_page};
use jetloci::weights::{solve_weights, validate_weights};
use jetloci::{Polynomial, SncConfiguration};
use num::integer::gcd;
use proptest::prelude::*;

fn brieskorn(p: u32, q: u32) -> SncConfiguration {
    resolve_plane_curve(&Polynomial::parse(&format!("x^{p}+y^{q}")).unwrap()).unwrap().0
}

fn polynomial(terms: &[((u32, u32), i64)]) -> Polynomial {
    let owned: Vec<([u32; 2], i64)> = terms.iter().map(|&((a, b), c)| ([a, b], c)).collect();
    let refs: Vec<(&[u32], i64)> = owned.iter().map(|(e, c)| (&e[..], *c)).collect();
    Polynomial::from_terms(&["x", "y"], &refs).unwrap()
}

fn continued_fraction_sum(mut a: u32, mut b: u32) -> u32 {
    let mut s = 0;
    while b != 0 {
        s += a / b;
        (a, b) = (b, a % b);
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn separation_invariants(p in 2u32..=5, q in 2u32..=6, m in 1u64..=12) {
        let cfg = brieskorn(p, q);
        let sep = separate(&cfg, m).unwrap();
        prop_assert!(is_m_separating(&sep.config, m).unwrap());
        prop_assert!(sep.config.validate().is_valid());
        for r in &sep.records {
            let a = sep.config.divisor(r.a).unwrap();
            let b = sep.config.divisor(r.b).unwrap();
            prop_assert_eq!(r.mult, a.mult + b.mult);
            prop_assert_eq!(r.disc, a.disc + b.disc);
        }
        for n in 1..=12 {
            prop_assert_eq!(lefschetz_number(&cfg, n).unwrap(), lefschetz_number(&sep.config, n).unwrap());
        }
        prop_assert_eq!(zeta_factorization(&cfg).unwrap().reduced(), zeta_factorization(&sep.config).unwrap().reduced());
        let again = separate(&sep.config, m).unwrap();
        prop_assert!(again.records.is_empty());
        prop_assert_eq!(again.config, sep.config);
    }

    #[test]
    fn scaled_weights_stay_valid(p in 2u32..=5, q in 2u32..=6, c in 1u64..=7, m in 1u64..=12) {
        let cfg = separate(&brieskorn(p, q), m).unwrap().config;
        let w = solve_weights(&cfg).unwrap();
        prop_assert!(validate_weights(&cfg, &w).unwrap());
        prop_assert!(validate_weights(&cfg, &w.scaled(c)).unwrap());
        let set = contributing_set(&cfg, &w, m).unwrap();
        let ids: Vec<_> = set.members.iter().map(|mb| mb.divisor).collect();
        let covers = compute_covers(&cfg, &ids).unwrap();
        let a = e1_page(&cfg, &w, m, &covers).unwrap();
        let b = e1_page(&cfg, &w.scaled(c), m, &covers).unwrap();
        prop_assert_eq!(a.content(), b.content());
        prop_assert_eq!(a.euler_characteristic(), b.euler_characteristic());
    }

    #[test]
    fn pruned_search_matches_naive(
        terms in proptest::collection::vec(((0u32..=3, 0u32..=3), -2i64..=2), 1..=4),
        m in 1u64..=3,
        extra in 0u64..=1,
        q in prop::sample::select(vec![2u64, 3]),
    ) {
        let f = polynomial(&terms);
        let l = (m + extra).min(4);
        let naive = naive_count(&f, m, l, q, DEFAULT_NAIVE_CAP).unwrap();
        for shortcut in [true, false] {
            let opts = CountOptions { shortcut, ..Default::default() };
            let fast = contact_count(&f, m, l, q, &opts).unwrap();
            prop_assert_eq!(&fast.strata, &naive.strata);
            prop_assert_eq!(fast.total, naive.total);
        }
    }

    #[test]
    fn dummy_variable_multiplies_by_free_jets(
        terms in proptest::collection::vec(((0u32..=3, 0u32..=3), -2i64..=2), 1..=4),
        m in 1u64..=3,
        q in prop::sample::select(vec![3u64, 5]),
    ) {
        let f = polynomial(&terms);
        let g = f.with_extra_vars(1);
        let opts = CountOptions::default();
        let a = contact_count(&f, m, m, q, &opts).unwrap().total;
        let b = contact_count(&g, m, m, q, &opts).unwrap().total;
        prop_assert_eq!(b, a * (q as u128).pow(m as u32));
    }

    #[test]
    fn powers_vanish_off_divisibility(r in 2u64..=5, m in 1u64..=8, q in prop::sample::select(vec![3u64, 5, 7])) {
        let f = Polynomial::parse(&format!("x^{r}")).unwrap();
        let n = contact_count(&f, m, m, q, &CountOptions::default()).unwrap().total;
        prop_assert_eq!(n, jetloci::oracle::closed_form_power(r, m, q));
        if m % r != 0 {
            prop_assert_eq!(n, 0);
        }
    }

    #[test]
    fn brieskorn_resolution_shape(p in 2u32..=5, q in 3u32..=9) {
        prop_assume!(p < q && gcd(p, q) == 1);
        let cfg = brieskorn(p, q);
        let exc = cfg.exceptional_ids();
        prop_assert_eq!(exc.len() as u32, continued_fraction_sum(q, p));
        let top = cfg.divisors.iter().filter(|d| d.exceptional).max_by_key(|d| d.mult).unwrap();
        prop_assert_eq!(top.mult, (p * q) as u64);
        prop_assert_eq!(top.disc, (p + q) as u64);
        prop_assert_eq!(top.self_int, Some(-1));
    }

    #[test]
    fn puncture_double_counting(p in 2u32..=5, q in 2u32..=6) {
        let cfg = brieskorn(p, q);
        let chi: i64 = cfg.divisors.iter().map(|d| cfg.euler_open_stratum(d.id).unwrap()).sum();
        let points: i64 = cfg.cells.iter().map(|c| c.count as i64).sum();
        let genus: i64 = cfg.divisors.iter().map(|d| 2 - 2 * d.genus.unwrap() as i64).sum();
        prop_assert_eq!(chi + 2 * points, genus);
    }
}

#[test]
fn fixtures_separate_at_every_order() {
    for cfg in [cusp(), node()] {
        for m in 1..=12 {
            let sep = separate(&cfg, m).unwrap();
            assert!(is_m_separating(&sep.config, m).unwrap());
        }
    }
}

#[test]
fn counts_independent_of_partitioning() {
    let f = Polynomial::parse("x^2+y^3").unwrap();
    let par = contact_count(&f, 6, 7, 5, &CountOptions::default()).unwrap();
    let seq = contact_count(&f, 6, 7, 5, &CountOptions { parallel: false, ..Default::default() }).unwrap();
    assert_eq!(par.strata, seq.strata);
}
