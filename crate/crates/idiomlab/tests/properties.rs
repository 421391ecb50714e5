//! Property-based checks over the Z/n family: lattice axioms, nucleus laws,
//! and the Galois connection between Ler and tau hold for arbitrary moduli.

use std::sync::Arc;

use proptest::prelude::*;

use idiomlab::finalg::{FiniteModule, FiniteRing, HomCache, ModuleSpec, RingSpec};
use idiomlab::theory::ModuleAnalysis;
use idiomlab::Limits;

fn analysis_zn(n: usize) -> ModuleAnalysis {
    let limits = Limits::default();
    let ring = Arc::new(FiniteRing::construct(&RingSpec::Zn { n }, &limits).unwrap());
    let m = FiniteModule::construct(&ring, &ModuleSpec::Regular, &limits).unwrap();
    let cache = HomCache::new();
    ModuleAnalysis::compute(&m, &cache, &limits).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zn_lattice_is_modular_and_product_associative(n in 2usize..=60) {
        let a = analysis_zn(n);
        prop_assert!(a.amb.check_modular().is_none());
        prop_assert!(a.lattice.check_product_associative().is_none());
    }

    #[test]
    fn zn_nuclei_satisfy_the_laws(n in 2usize..=48) {
        let a = analysis_zn(n);
        for nucleus in [&a.mu, &a.tau, &a.tau_fi] {
            let laws = idiomlab::ptfree::check_nucleus_laws(&a.amb, &a.fi, nucleus);
            prop_assert!(laws.is_nucleus());
            prop_assert!(laws.is_multiplicative());
        }
    }

    #[test]
    fn zn_ler_tau_galois_connection(n in 2usize..=48) {
        let a = analysis_zn(n);
        // Ler(N) <= L iff N <= tau(L), both sides over Lambda^fi
        for (pos, &nn) in a.fi.members.iter().enumerate() {
            for &l in &a.fi.members {
                let lhs = a.ler_sets[pos].is_subset(&a.lattice.members[l]);
                let rhs = a.lattice.le(nn, a.tau.apply(l));
                prop_assert_eq!(lhs, rhs, "n = {}, N = {}, L = {}", n, nn, l);
            }
        }
    }

    #[test]
    fn zn_spec_matches_prime_divisors(n in 2usize..=60) {
        let a = analysis_zn(n);
        let prime_count = {
            let mut m = n;
            let mut count = 0;
            let mut p = 2;
            while p * p <= m {
                if m % p == 0 {
                    count += 1;
                    while m % p == 0 { m /= p; }
                }
                p += 1;
            }
            if m > 1 { count += 1 }
            count
        };
        prop_assert_eq!(a.spec.len(), prime_count);
        prop_assert_eq!(a.mx.len(), prime_count);
        prop_assert_eq!(&a.spec, &a.mx);
    }
}
