//! The submodule lattice of a module, its fully invariant part, and the
//! module product N_M L that makes it a quasi-quantale.

use std::sync::Arc;

use idiomlab::finalg::{FiniteModule, FiniteRing, HomCache, ModuleSpec, RingSpec};
use idiomlab::sublat::SubmoduleLattice;
use idiomlab::Limits;

fn main() {
    let limits = Limits::default();
    let ring = Arc::new(FiniteRing::construct(&RingSpec::Zn { n: 12 }, &limits).unwrap());
    let m = FiniteModule::construct(&ring, &ModuleSpec::Regular, &limits).unwrap();
    let cache = HomCache::new();
    let lat = SubmoduleLattice::compute(&m, &cache, &limits).unwrap();

    println!("submodules of {}:", m.name);
    for i in 0..lat.len() {
        let tag = if lat.fi.contains(&i) { " (fully invariant)" } else { "" };
        println!("  [{i}] {}{tag}", lat.member_label(i));
    }

    println!("\ncoatoms: {:?}", lat.coatoms());
    println!("product associative on Lambda: {}", lat.check_product_associative().is_none());

    // N_M L for every pair — in Z12 this is submodule multiplication.
    println!("\nproduct table (indices):");
    for n in 0..lat.len() {
        let row: Vec<usize> = (0..lat.len()).map(|l| lat.prod[n][l]).collect();
        println!("  {row:?}");
    }

    // Condition (*) of the paper, on the fully invariant part.
    let star = lat.check_star_condition(&lat.fi);
    println!("\ncondition (*) on Lambda^fi: {}", star.is_none());
}
