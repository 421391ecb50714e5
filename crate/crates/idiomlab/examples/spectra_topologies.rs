//! Spectra of a module and their hull-kernel topologies: LgSpec, Spec, the
//! maximal spectra, and the separation axioms they satisfy.

use std::sync::Arc;

use idiomlab::finalg::{FiniteModule, FiniteRing, HomCache, ModuleSpec, RingSpec};
use idiomlab::theory::ModuleAnalysis;
use idiomlab::Limits;

fn show(rspec: &RingSpec, mspec: &ModuleSpec) {
    let limits = Limits::default();
    let ring = Arc::new(FiniteRing::construct(rspec, &limits).unwrap());
    let m = FiniteModule::construct(&ring, mspec, &limits).unwrap();
    let cache = HomCache::new();
    let a = ModuleAnalysis::compute(&m, &cache, &limits).unwrap();

    println!("== {} ==", m.name);
    let name_all = |ix: &[usize]| {
        ix.iter()
            .map(|&i| a.lattice.member_label(i))
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("  LgSpec  = {{{}}}", name_all(&a.lgspec));
    println!("  Spec    = {{{}}}", name_all(&a.spec));
    println!("  mx      = {{{}}}", name_all(&a.mx));
    println!("  mx^fi   = {{{}}}", name_all(&a.mx_fi));

    // Hull-kernel spaces and their separation properties.
    let spec_space = idiomlab::theory::eta_spectral_map(&a).codomain;
    println!(
        "  Spec(M) hull-kernel: Hausdorff={} normal={}",
        spec_space.is_hausdorff(),
        spec_space.is_normal()
    );
    println!();
}

fn main() {
    show(&RingSpec::Zn { n: 12 }, &ModuleSpec::Regular);
    show(
        &RingSpec::UpperTriangular {
            base: Box::new(RingSpec::Zn { n: 2 }),
            size: 2,
        },
        &ModuleSpec::Regular,
    );
    show(
        &RingSpec::Zn { n: 6 },
        &ModuleSpec::Abelian {
            invariants: vec![2, 3],
        },
    );
}
