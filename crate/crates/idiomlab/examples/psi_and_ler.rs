//! The Ler operator, its frame of fixed points Psi(M), and the
//! homeomorphism Theta between mx^fi(M) and the points of Psi(M).

use std::sync::Arc;

use idiomlab::finalg::{FiniteModule, FiniteRing, HomCache, ModuleSpec, RingSpec};
use idiomlab::theory::{psi_spm_isomorphism, theta_homeomorphism, ModuleAnalysis};
use idiomlab::Limits;

fn main() {
    let limits = Limits::default();
    let ring = Arc::new(FiniteRing::construct(&RingSpec::Zn { n: 12 }, &limits).unwrap());
    let m = FiniteModule::construct(&ring, &ModuleSpec::Regular, &limits).unwrap();
    let cache = HomCache::new();
    let a = ModuleAnalysis::compute(&m, &cache, &limits).unwrap();

    let label = |i: usize| a.lattice.member_label(i);

    // Ler(N) = {m : N + Ann_M(Rm) = M}, computed elementwise.
    println!("Ler on the fully invariant submodules of {}:", m.name);
    for (pos, &n) in a.fi.members.iter().enumerate() {
        match a.ler[pos] {
            Some(l) => println!("  Ler({}) = {}", label(n), label(l)),
            None => println!("  Ler({}) is not a submodule", label(n)),
        }
    }

    let name_all = |ix: &[usize]| ix.iter().map(|&i| label(i)).collect::<Vec<_>>().join(", ");
    println!("\nPsi(M) = {{{}}}  (N with N <= Ler(N))", name_all(&a.psi));

    // Theta sends a maximal fully invariant submodule to Ler of it.
    let theta = theta_homeomorphism(&a).unwrap();
    println!("\nTheta: mx^fi -> pt(Psi) is a homeomorphism: {}", theta.homeomorphism);

    // Ler and tau are mutually inverse between Psi(M) and SPm(M).
    let iso = psi_spm_isomorphism(&a);
    println!("Psi(M) ~ SPm(M) via Ler/tau: {}", iso.is_isomorphism);
}
