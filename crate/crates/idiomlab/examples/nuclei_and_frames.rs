//! The hull-kernel nuclei mu and tau and their fixed-point frames SP(M)
//! and SPm(M) — the semiprime and semiprimitive submodules.

use std::sync::Arc;

use idiomlab::finalg::{FiniteModule, FiniteRing, HomCache, ModuleSpec, RingSpec};
use idiomlab::ptfree::check_nucleus_laws;
use idiomlab::theory::ModuleAnalysis;
use idiomlab::Limits;

fn main() {
    let limits = Limits::default();
    let ring = Arc::new(FiniteRing::construct(&RingSpec::Zn { n: 12 }, &limits).unwrap());
    let m = FiniteModule::construct(&ring, &ModuleSpec::Regular, &limits).unwrap();
    let cache = HomCache::new();
    let a = ModuleAnalysis::compute(&m, &cache, &limits).unwrap();

    let label = |i: usize| a.lattice.member_label(i);

    println!("mu over Spec(M), tau over mx(M):");
    for &n in &a.fi.members {
        println!(
            "  mu({}) = {}   tau({}) = {}",
            label(n),
            label(a.mu.apply(n)),
            label(n),
            label(a.tau.apply(n)),
        );
    }

    let laws = check_nucleus_laws(&a.amb, &a.fi, &a.mu);
    println!(
        "\nmu is a nucleus: {} (multiplicative: {})",
        laws.is_nucleus(),
        laws.is_multiplicative()
    );

    let name_all = |ix: &[usize]| ix.iter().map(|&i| label(i)).collect::<Vec<_>>().join(", ");
    println!("\nSP(M)  = {{{}}} (mu-fixed points: semiprime submodules)", name_all(&a.sp));
    println!("SPm(M) = {{{}}} (tau-fixed points: semiprimitive submodules)", name_all(&a.spm));

    // Two independent oracles agree with the nucleus route.
    assert_eq!(a.sp, a.sp_oracle_intersections());
    assert_eq!(a.sp, a.sp_oracle_semiprime());
    assert_eq!(a.spm, a.spm_oracle());
    println!("\noracle agreement: SP via prime intersections and semiprime test, SPm via maximal intersections");
}
