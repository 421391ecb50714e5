//! Constructing finite rings and modules from declarative specs.

use std::sync::Arc;

use idiomlab::finalg::{FiniteModule, FiniteRing, ModuleSpec, RingSpec};
use idiomlab::Limits;

fn main() {
    let limits = Limits::default();

    // Z/12 acting on itself.
    let z12 = Arc::new(FiniteRing::construct(&RingSpec::Zn { n: 12 }, &limits).unwrap());
    let m = FiniteModule::construct(&z12, &ModuleSpec::Regular, &limits).unwrap();
    println!("{}: {} elements over {}", m.name, m.size, m.ring.name);

    // Upper triangular 2x2 matrices over F2 — the noncommutative counterexample.
    let ut2 = Arc::new(
        FiniteRing::construct(
            &RingSpec::UpperTriangular {
                base: Box::new(RingSpec::Zn { n: 2 }),
                size: 2,
            },
            &limits,
        )
        .unwrap(),
    );
    let r = FiniteModule::construct(&ut2, &ModuleSpec::Regular, &limits).unwrap();
    println!("{}: {} elements, commutative ring? no", r.name, r.size);

    // Z2 + Z3 as an abelian group with Z/6 scalars.
    let z6 = Arc::new(FiniteRing::construct(&RingSpec::Zn { n: 6 }, &limits).unwrap());
    let mixed = FiniteModule::construct(
        &z6,
        &ModuleSpec::Abelian {
            invariants: vec![2, 3],
        },
        &limits,
    )
    .unwrap();
    println!("{}: {} elements", mixed.name, mixed.size);

    // Direct squares via the spec language.
    let square = FiniteModule::construct(
        &z6,
        &ModuleSpec::DirectSum {
            of: Box::new(ModuleSpec::Abelian {
                invariants: vec![2, 3],
            }),
            copies: 2,
        },
        &limits,
    )
    .unwrap();
    println!("{}: {} elements", square.name, square.size);
}
