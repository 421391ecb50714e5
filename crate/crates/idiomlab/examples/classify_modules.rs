//! Deciding the four module classes — strongly harmonic, Gelfand,
//! quasi-duo, pm — across the built-in catalog.

use std::sync::Arc;

use idiomlab::catalog::catalog;
use idiomlab::finalg::{FiniteModule, FiniteRing, HomCache};
use idiomlab::theory::{classify, ClassVerdict, ModuleAnalysis};
use idiomlab::Limits;

fn main() {
    let limits = Limits::default();
    println!(
        "{:<16} {:>3} {:>8} {:>8} {:>10} {:>6}",
        "instance", "|M|", "harmonic", "gelfand", "quasi-duo", "pm"
    );
    for spec in catalog() {
        let ring = Arc::new(FiniteRing::construct(&spec.ring, &limits).unwrap());
        let m = FiniteModule::construct(&ring, &spec.module, &limits).unwrap();
        let cache = HomCache::new();
        let a = ModuleAnalysis::compute(&m, &cache, &limits).unwrap();
        let c = classify(&a);
        let mark = |v: &ClassVerdict| if v.holds() { "yes" } else { "no" };
        println!(
            "{:<16} {:>3} {:>8} {:>8} {:>10} {:>6}",
            spec.display_name(),
            m.size,
            mark(&c.strongly_harmonic),
            mark(&c.gelfand),
            mark(&c.quasi_duo),
            mark(&c.pm),
        );
        if let ClassVerdict::Fails { witness } = &c.strongly_harmonic {
            let labels: Vec<String> = witness.iter().map(|&i| a.lattice.member_label(i)).collect();
            println!("{:<16}     not separated: {}", "", labels.join(" vs "));
        }
    }
}
