use super::analysis::ModuleAnalysis;

/// Decision for one module class, with a witness for the failing side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassVerdict {
    Holds,
    /// The pair of maximal submodules (lattice indices) that cannot be
    /// separated, or the single element breaking the defining condition.
    Fails { witness: Vec<usize> },
}

impl ClassVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ClassVerdict::Holds)
    }
}

/// The four module classes of interest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub strongly_harmonic: ClassVerdict,
    pub gelfand: ClassVerdict,
    pub quasi_duo: ClassVerdict,
    pub pm: ClassVerdict,
}

/// Separation over an ordered pair (n, l) of distinct maximals: separators
/// n' not below n and l' not below l, drawn from `pool`, with l' * n' = 0.
fn separated(a: &ModuleAnalysis, pool: &[usize], n: usize, l: usize) -> bool {
    let lat = &a.lattice;
    pool.iter().any(|&np| {
        !lat.le(np, n)
            && pool
                .iter()
                .any(|&lp| !lat.le(lp, l) && lat.prod[lp][np] == lat.bottom())
    })
}

fn separation_class(a: &ModuleAnalysis, maximals: &[usize], pool: &[usize]) -> ClassVerdict {
    for &n in maximals {
        for &l in maximals {
            if n == l {
                continue;
            }
            if !separated(a, pool, n, l) {
                return ClassVerdict::Fails { witness: vec![n, l] };
            }
        }
    }
    ClassVerdict::Holds
}

/// Strongly harmonic: every ordered pair of distinct maximal fully
/// invariant submodules is separated by fully invariant annihilating pairs.
pub fn is_strongly_harmonic(a: &ModuleAnalysis) -> ClassVerdict {
    separation_class(a, &a.mx_fi, &a.fi.members)
}

/// Gelfand: the same separation condition over all maximal submodules,
/// separators still drawn from the fully invariant submodules.
pub fn is_gelfand(a: &ModuleAnalysis) -> ClassVerdict {
    separation_class(a, &a.mx, &a.fi.members)
}

/// Quasi-duo: every maximal submodule is fully invariant.
pub fn is_quasi_duo(a: &ModuleAnalysis) -> ClassVerdict {
    match a.mx.iter().copied().find(|&m| !a.fi.members.contains(&m)) {
        None => ClassVerdict::Holds,
        Some(m) => ClassVerdict::Fails { witness: vec![m] },
    }
}

/// pm: every prime lies below exactly one maximal submodule.
pub fn is_pm(a: &ModuleAnalysis) -> ClassVerdict {
    for &p in &a.spec {
        let above: Vec<usize> = a.mx.iter().copied().filter(|&m| a.lattice.le(p, m)).collect();
        if above.len() != 1 {
            let mut witness = vec![p];
            witness.extend(above);
            return ClassVerdict::Fails { witness };
        }
    }
    ClassVerdict::Holds
}

pub fn classify(a: &ModuleAnalysis) -> Classification {
    Classification {
        strongly_harmonic: is_strongly_harmonic(a),
        gelfand: is_gelfand(a),
        quasi_duo: is_quasi_duo(a),
        pm: is_pm(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::{FiniteModule, FiniteRing, HomCache, ModuleSpec, RingSpec};
    use crate::limits::Limits;
    use std::sync::Arc;

    fn analyze(rspec: &RingSpec, mspec: &ModuleSpec) -> ModuleAnalysis {
        let limits = Limits::default();
        let r = Arc::new(FiniteRing::construct(rspec, &limits).unwrap());
        let m = FiniteModule::construct(&r, mspec, &limits).unwrap();
        ModuleAnalysis::compute(&m, &HomCache::new(), &limits).unwrap()
    }

    #[test]
    fn z12_is_everything() {
        let a = analyze(&RingSpec::Zn { n: 12 }, &ModuleSpec::Regular);
        let c = classify(&a);
        assert!(c.strongly_harmonic.holds());
        assert!(c.gelfand.holds());
        assert!(c.quasi_duo.holds());
        assert!(c.pm.holds());
    }

    #[test]
    fn triangular_ring_is_quasi_duo_but_not_harmonic() {
        let a = analyze(
            &RingSpec::UpperTriangular {
                base: Box::new(RingSpec::Zn { n: 2 }),
                size: 2,
            },
            &ModuleSpec::Regular,
        );
        let c = classify(&a);
        assert!(c.quasi_duo.holds());
        assert!(!c.strongly_harmonic.holds());
        assert!(!c.gelfand.holds());
        if let ClassVerdict::Fails { witness } = &c.strongly_harmonic {
            assert_eq!(witness.len(), 2);
            assert!(a.mx_fi.contains(&witness[0]));
            assert!(a.mx_fi.contains(&witness[1]));
        }
    }

    #[test]
    fn z2_plus_z3_square_is_not_quasi_duo() {
        let a = analyze(
            &RingSpec::Zn { n: 6 },
            &ModuleSpec::DirectSum {
                of: Box::new(ModuleSpec::Abelian {
                    invariants: vec![2, 3],
                }),
                copies: 2,
            },
        );
        assert_eq!(a.mx.len(), 7);
        assert_eq!(a.fi.members.len(), 4);
        let c = classify(&a);
        assert!(!c.quasi_duo.holds());
        assert!(!c.gelfand.holds());
    }

    #[test]
    fn matrix_ring_is_vacuously_strongly_harmonic() {
        let a = analyze(
            &RingSpec::Matrix {
                base: Box::new(RingSpec::Zn { n: 2 }),
                size: 2,
            },
            &ModuleSpec::Regular,
        );
        assert_eq!(a.fi.members.len(), 2);
        let c = classify(&a);
        assert!(c.strongly_harmonic.holds());
    }
}
