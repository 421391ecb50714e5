use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::module::{quotient_with_projection, FiniteModule};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A module homomorphism tabulated on every element of the source.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModuleMap {
    pub table: Vec<usize>,
}

impl ModuleMap {
    pub fn identity(m: &FiniteModule) -> Self {
        ModuleMap {
            table: (0..m.size).collect(),
        }
    }

    pub fn zero(source: &FiniteModule, target: &FiniteModule) -> Self {
        ModuleMap {
            table: vec![target.zero; source.size],
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// self after other: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            table: other.table.iter().map(|&x| self.table[x]).collect(),
        }
    }

    pub fn kernel(&self, source: &FiniteModule, target: &FiniteModule) -> BitSet {
        let mut set = BitSet::new(source.size);
        for x in 0..source.size {
            if self.table[x] == target.zero {
                set.insert(x);
            }
        }
        set
    }

    pub fn image(&self, target_size: usize) -> BitSet {
        let mut set = BitSet::new(target_size);
        for &y in &self.table {
            set.insert(y);
        }
        set
    }

    pub fn image_of(&self, set: &BitSet, target_size: usize) -> BitSet {
        let mut out = BitSet::new(target_size);
        for x in set.iter() {
            out.insert(self.table[x]);
        }
        out
    }

    pub fn is_hom(&self, source: &FiniteModule, target: &FiniteModule) -> bool {
        if self.table.len() != source.size || self.table.iter().any(|&y| y >= target.size) {
            return false;
        }
        for x in 0..source.size {
            for y in 0..source.size {
                if self.table[source.add.get(x, y)]
                    != target.add.get(self.table[x], self.table[y])
                {
                    return false;
                }
            }
            for r in 0..source.ring.size {
                if self.table[source.act.get(r, x)] != target.act.get(r, self.table[x]) {
                    return false;
                }
            }
        }
        true
    }
}

/// A minimal-by-greed generating sequence: each element is outside the
/// submodule generated by its predecessors.
pub fn greedy_generators(m: &FiniteModule) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = super::module::closure(m, &[]);
    for x in 0..m.size {
        if !span.contains(x) {
            gens.push(x);
            span = super::module::closure(m, &gens);
            if span.count() == m.size {
                break;
            }
        }
    }
    gens
}

/// Propagate a partial map from generators to a full table, or detect a
/// conflict. `img[x] = Some(y)` for already-determined values.
fn propagate(
    source: &FiniteModule,
    target: &FiniteModule,
    img: &mut [Option<usize>],
    seed: usize,
) -> bool {
    let mut work = vec![seed];
    while let Some(x) = work.pop() {
        let fx = img[x].expect("worklist entries are determined");
        for r in 0..source.ring.size {
            let rx = source.act.get(r, x);
            let frx = target.act.get(r, fx);
            match img[rx] {
                None => {
                    img[rx] = Some(frx);
                    work.push(rx);
                }
                Some(v) if v != frx => return false,
                _ => {}
            }
        }
        for y in 0..source.size {
            if let Some(fy) = img[y] {
                let s = source.add.get(x, y);
                let fs = target.add.get(fx, fy);
                match img[s] {
                    None => {
                        img[s] = Some(fs);
                        work.push(s);
                    }
                    Some(v) if v != fs => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// All homomorphisms source -> target, sorted lexicographically by table.
pub fn enumerate_homs(
    source: &Arc<FiniteModule>,
    target: &Arc<FiniteModule>,
    limits: &Limits,
) -> Result<Vec<ModuleMap>> {
    if !Arc::ptr_eq(&source.ring, &target.ring) && source.ring.size != target.ring.size {
        return Err(Error::IncompatibleRing(
            "hom set between modules over different rings".into(),
        ));
    }
    let gens = greedy_generators(source);
    let mut bound: u64 = 1;
    for _ in &gens {
        bound = bound.saturating_mul(target.size as u64);
    }
    if bound > limits.max_hom_candidates {
        return Err(Error::SearchSpaceExceeded {
            what: format!("Hom({}, {})", source.name, target.name),
            needed: bound,
            cap: limits.max_hom_candidates,
        });
    }
    let mut out = Vec::new();
    let mut img: Vec<Option<usize>> = vec![None; source.size];
    img[source.zero] = Some(target.zero);
    dfs_homs(source, target, &gens, 0, &mut img, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn dfs_homs(
    source: &FiniteModule,
    target: &FiniteModule,
    gens: &[usize],
    depth: usize,
    img: &mut Vec<Option<usize>>,
    out: &mut Vec<ModuleMap>,
) {
    if depth == gens.len() {
        // all generators placed; propagation has filled the whole table
        debug_assert!(img.iter().all(|v| v.is_some()));
        out.push(ModuleMap {
            table: img.iter().map(|v| v.unwrap()).collect(),
        });
        return;
    }
    let g = gens[depth];
    if img[g].is_some() {
        // already forced by earlier propagation
        dfs_homs(source, target, gens, depth + 1, img, out);
        return;
    }
    for y in 0..target.size {
        let saved = img.clone();
        img[g] = Some(y);
        if propagate(source, target, img, g) {
            dfs_homs(source, target, gens, depth + 1, img, out);
        }
        *img = saved;
    }
}

/// Shared cache of hom sets keyed by (source id, target id).
#[derive(Default)]
pub struct HomCache {
    map: Mutex<HashMap<(u64, u64), Arc<Vec<ModuleMap>>>>,
}

impl HomCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn homs(
        &self,
        source: &Arc<FiniteModule>,
        target: &Arc<FiniteModule>,
        limits: &Limits,
    ) -> Result<Arc<Vec<ModuleMap>>> {
        let key = (source.id, target.id);
        if let Some(h) = self.map.lock().unwrap().get(&key) {
            return Ok(Arc::clone(h));
        }
        let homs = Arc::new(enumerate_homs(source, target, limits)?);
        self.map
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&homs));
        Ok(homs)
    }

    pub fn endos(&self, m: &Arc<FiniteModule>, limits: &Limits) -> Result<Arc<Vec<ModuleMap>>> {
        self.homs(m, m, limits)
    }
}

/// Outcome of the quasi-projectivity search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiProjectivity {
    Holds,
    /// Some map to a quotient admits no lifting; witness records the
    /// submodule that was factored out.
    Fails { kernel: BitSet },
    /// The search space exceeded the configured cap.
    Undetermined { reason: String },
}

/// M is quasi-projective when every hom M -> M/K lifts through the
/// projection. Checked against every submodule K of M.
pub fn check_quasi_projective(
    m: &Arc<FiniteModule>,
    submodules: &[BitSet],
    cache: &HomCache,
    limits: &Limits,
) -> Result<QuasiProjectivity> {
    let endos = match cache.endos(m, limits) {
        Ok(e) => e,
        Err(Error::SearchSpaceExceeded { what, needed, cap }) => {
            return Ok(QuasiProjectivity::Undetermined {
                reason: format!("{what} needs {needed} candidates, cap {cap}"),
            })
        }
        Err(e) => return Err(e),
    };
    for k in submodules {
        if k.count() == 1 {
            continue; // projection is an isomorphism; every map lifts via it
        }
        let (q, proj) = quotient_with_projection(m, k)?;
        let homs = match cache.homs(m, &q, limits) {
            Ok(h) => h,
            Err(Error::SearchSpaceExceeded { what, needed, cap }) => {
                return Ok(QuasiProjectivity::Undetermined {
                    reason: format!("{what} needs {needed} candidates, cap {cap}"),
                })
            }
            Err(e) => return Err(e),
        };
        for alpha in homs.iter() {
            // want beta: M -> M with proj(beta(x)) = alpha(x) everywhere
            let lifted = endos
                .iter()
                .any(|beta| (0..m.size).all(|x| proj[beta.apply(x)] == alpha.apply(x)));
            if !lifted {
                return Ok(QuasiProjectivity::Fails { kernel: k.clone() });
            }
        }
    }
    Ok(QuasiProjectivity::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::{FiniteRing, ModuleSpec, RingSpec};

    fn zn(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::construct(&RingSpec::Zn { n }, &Limits::default()).unwrap())
    }

    fn module(r: &Arc<FiniteRing>, spec: &ModuleSpec) -> Arc<FiniteModule> {
        FiniteModule::construct(r, spec, &Limits::default()).unwrap()
    }

    #[test]
    fn endos_of_z4_are_the_four_multiplications() {
        let r = zn(4);
        let m = module(&r, &ModuleSpec::Regular);
        let homs = enumerate_homs(&m, &m, &Limits::default()).unwrap();
        assert_eq!(homs.len(), 4);
        for h in &homs {
            assert!(h.is_hom(&m, &m));
        }
    }

    #[test]
    fn hom_z2_to_z3_is_only_zero() {
        let r = zn(6);
        let z2 = module(
            &r,
            &ModuleSpec::Abelian {
                invariants: vec![2],
            },
        );
        let z3 = module(
            &r,
            &ModuleSpec::Abelian {
                invariants: vec![3],
            },
        );
        let homs = enumerate_homs(&z2, &z3, &Limits::default()).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0], ModuleMap::zero(&z2, &z3));
    }

    #[test]
    fn endos_of_f2_square_form_the_matrix_ring() {
        let r = zn(2);
        let m = module(
            &r,
            &ModuleSpec::DirectSum {
                of: Box::new(ModuleSpec::Regular),
                copies: 2,
            },
        );
        let homs = enumerate_homs(&m, &m, &Limits::default()).unwrap();
        assert_eq!(homs.len(), 16);
    }

    #[test]
    fn oracle_brute_force_agrees_on_small_modules() {
        // every map table vs the generator search, on Z6 regular
        let r = zn(6);
        let m = module(&r, &ModuleSpec::Regular);
        let fast = enumerate_homs(&m, &m, &Limits::default()).unwrap();
        let mut slow = Vec::new();
        // endos of a cyclic module are determined by the image of 1
        for y in 0..m.size {
            let table: Vec<usize> = (0..m.size).map(|x| m.act.get(x, y)).collect();
            let cand = ModuleMap { table };
            if cand.is_hom(&m, &m) {
                slow.push(cand);
            }
        }
        slow.sort_unstable();
        assert_eq!(fast, slow);
    }

    #[test]
    fn z12_regular_is_quasi_projective() {
        let r = zn(12);
        let m = module(&r, &ModuleSpec::Regular);
        let subs: Vec<BitSet> = [1usize, 2, 3, 4, 6, 12]
            .iter()
            .map(|&d| super::super::module::closure(&m, &[d % 12]))
            .collect();
        let cache = HomCache::new();
        let got = check_quasi_projective(&m, &subs, &cache, &Limits::default()).unwrap();
        assert_eq!(got, QuasiProjectivity::Holds);
    }
}
