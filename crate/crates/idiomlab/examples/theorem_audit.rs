//! Running the full theorem audit on one instance and printing every entry
//! with its hypothesis status and verdict.

use std::sync::Arc;

use idiomlab::finalg::{FiniteModule, FiniteRing, HomCache, ModuleSpec, RingSpec};
use idiomlab::theory::{theorem_audit, ModuleAnalysis, Verdict};
use idiomlab::Limits;

fn main() {
    let limits = Limits::default();
    let ring = Arc::new(
        FiniteRing::construct(
            &RingSpec::UpperTriangular {
                base: Box::new(RingSpec::Zn { n: 2 }),
                size: 2,
            },
            &limits,
        )
        .unwrap(),
    );
    let m = FiniteModule::construct(&ring, &ModuleSpec::Regular, &limits).unwrap();
    let cache = HomCache::new();
    let a = ModuleAnalysis::compute(&m, &cache, &limits).unwrap();
    let entries = theorem_audit(&a, &cache, &limits).unwrap();

    let mut pass = 0;
    let mut unmet = 0;
    let mut violated = 0;
    for e in &entries {
        let tag = match &e.verdict {
            Verdict::Pass => {
                pass += 1;
                "PASS".to_string()
            }
            Verdict::HypothesesUnmet => {
                unmet += 1;
                let names: Vec<&str> = e
                    .hypotheses
                    .iter()
                    .filter(|(_, s)| !s.admits_audit())
                    .map(|(n, _)| n.as_str())
                    .collect();
                format!("SKIP ({})", names.join(", "))
            }
            Verdict::Violated { witness } => {
                violated += 1;
                format!("VIOLATED: {witness}")
            }
        };
        println!("{:<40} {}", e.name, tag);
    }
    println!("\n{pass} passed, {unmet} hypotheses unmet, {violated} violated");
    assert_eq!(violated, 0);
}
