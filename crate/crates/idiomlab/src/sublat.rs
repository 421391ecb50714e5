//! Submodule lattices and the module product that makes them quasi-quantales.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::finalg::{closure, FiniteModule, HomCache, ModuleMap};
use crate::limits::Limits;

/// The complete lattice of submodules of a fixed module, with the product
/// N * L = sum of f(N) over f in End(M) with im(f) inside L.
pub struct SubmoduleLattice {
    pub module: Arc<FiniteModule>,
    /// All submodules, sorted by (cardinality, element set); index 0 is 0,
    /// the last index is M.
    pub members: Vec<BitSet>,
    /// Indices of the fully invariant members, in increasing order.
    pub fi: Vec<usize>,
    /// leq[i] = set of j with members[i] <= members[j].
    pub leq: Vec<BitSet>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub prod: Vec<Vec<usize>>,
    pub endos: Arc<Vec<ModuleMap>>,
}

impl SubmoduleLattice {
    pub fn compute(m: &Arc<FiniteModule>, cache: &HomCache, limits: &Limits) -> Result<SubmoduleLattice> {
        if m.size > limits.max_analysis_size {
            return Err(Error::SizeLimitExceeded {
                what: format!("module {} analysis", m.name),
                needed: m.size as u64,
                cap: limits.max_analysis_size as u64,
            });
        }
        let members = enumerate_submodules(m, limits)?;
        let endos = cache.endos(m, limits)?;
        let index: HashMap<BitSet, usize> = members
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let n = members.len();
        let mut leq = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if members[i].is_subset(&members[j]) {
                    leq[i].insert(j);
                }
            }
        }
        let mut join = vec![vec![0usize; n]; n];
        let mut meet = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut cap = members[i].clone();
                cap.intersect_with(&members[j]);
                meet[i][j] = index[&cap];
                let mut cup = members[i].union(&members[j]);
                if !index.contains_key(&cup) {
                    cup = closure(m, &cup.iter().collect::<Vec<_>>());
                }
                join[i][j] = index[&cup];
            }
        }
        // fully invariant: stable under every endomorphism
        let fi: Vec<usize> = (0..n)
            .filter(|&i| {
                endos
                    .iter()
                    .all(|f| f.image_of(&members[i], m.size).is_subset(&members[i]))
            })
            .collect();
        // product: precompute f(N) for every endo and submodule image target
        let mut prod = vec![vec![0usize; n]; n];
        for i in 0..n {
            let images: Vec<(BitSet, BitSet)> = endos
                .iter()
                .map(|f| (f.image(m.size), f.image_of(&members[i], m.size)))
                .collect();
            for j in 0..n {
                let mut acc = BitSet::new(m.size);
                acc.insert(m.zero);
                for (full_img, img_of_i) in &images {
                    if full_img.is_subset(&members[j]) {
                        acc.union_with(img_of_i);
                    }
                }
                let closed = if index.contains_key(&acc) {
                    acc
                } else {
                    closure(m, &acc.iter().collect::<Vec<_>>())
                };
                prod[i][j] = index[&closed];
            }
        }
        Ok(SubmoduleLattice {
            module: Arc::clone(m),
            members,
            fi,
            leq,
            join,
            meet,
            prod,
            endos,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i].contains(j)
    }

    pub fn index_of(&self, set: &BitSet) -> Option<usize> {
        self.members.iter().position(|s| s == set)
    }

    /// Join of an arbitrary family, bottom when empty.
    pub fn join_all(&self, idxs: impl IntoIterator<Item = usize>) -> usize {
        idxs.into_iter().fold(0, |a, b| self.join[a][b])
    }

    /// Meet of an arbitrary family, top when empty.
    pub fn meet_all(&self, idxs: impl IntoIterator<Item = usize>) -> usize {
        idxs.into_iter().fold(self.top(), |a, b| self.meet[a][b])
    }

    /// Indices of the maximal proper submodules.
    pub fn coatoms(&self) -> Vec<usize> {
        let top = self.top();
        (0..self.len())
            .filter(|&i| {
                i != top && (0..self.len()).all(|j| j == i || j == top || !self.le(i, j))
            })
            .collect()
    }

    /// Coatoms of the sublattice spanned by `subset` (must contain top).
    pub fn coatoms_within(&self, subset: &[usize]) -> Vec<usize> {
        let top = self.top();
        subset
            .iter()
            .copied()
            .filter(|&i| {
                i != top
                    && subset
                        .iter()
                        .all(|&j| j == i || j == top || !self.le(i, j))
            })
            .collect()
    }

    /// Every proper element lies under a coatom (restricted to `subset`).
    pub fn is_coatomic_within(&self, subset: &[usize]) -> bool {
        let coats = self.coatoms_within(subset);
        let top = self.top();
        subset
            .iter()
            .all(|&i| i == top || coats.iter().any(|&c| self.le(i, c)))
    }

    /// The product is associative on all of Lambda(M) iff this is true.
    pub fn check_product_associative(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.prod[a][b];
                for c in 0..n {
                    if self.prod[ab][c] != self.prod[a][self.prod[b][c]] {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Condition (*) for a sub-collection B containing 0 and M:
    /// 1*b <= b and b*1 <= b for every b in B. Returns a failing b.
    pub fn check_star_condition(&self, subset: &[usize]) -> Option<usize> {
        let top = self.top();
        subset.iter().copied().find(|&b| {
            !self.le(self.prod[top][b], b) || !self.le(self.prod[b][top], b)
        })
    }

    /// M is a self-generator when every submodule is generated by images of
    /// endomorphisms landing inside it, i.e. N * anything recovers: here the
    /// usual criterion M * N = N for all N.
    pub fn is_self_generator(&self) -> bool {
        let top = self.top();
        (0..self.len()).all(|n| self.prod[top][n] == n)
    }

    /// Names for members, used in reports: "0", "M", or the element set.
    pub fn member_label(&self, i: usize) -> String {
        if i == self.bottom() {
            "0".into()
        } else if i == self.top() {
            "M".into()
        } else {
            format!("{}", self.members[i])
        }
    }
}

/// Bottom-up worklist enumeration of all submodules, returned sorted by
/// (cardinality, element set).
pub fn enumerate_submodules(m: &Arc<FiniteModule>, limits: &Limits) -> Result<Vec<BitSet>> {
    let bottom = closure(m, &[]);
    let mut seen: HashMap<BitSet, ()> = HashMap::new();
    seen.insert(bottom.clone(), ());
    let mut work = vec![bottom];
    while let Some(cur) = work.pop() {
        for x in 0..m.size {
            if cur.contains(x) {
                continue;
            }
            let mut seed: Vec<usize> = cur.iter().collect();
            seed.push(x);
            let next = closure(m, &seed);
            if !seen.contains_key(&next) {
                if seen.len() >= limits.max_search as usize {
                    return Err(Error::SearchSpaceExceeded {
                        what: format!("submodule lattice of {}", m.name),
                        needed: seen.len() as u64 + 1,
                        cap: limits.max_search,
                    });
                }
                seen.insert(next.clone(), ());
                work.push(next);
            }
        }
    }
    let mut out: Vec<BitSet> = seen.into_keys().collect();
    out.sort_unstable_by_key(|s| s.order_key());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::{FiniteRing, ModuleSpec, RingSpec};

    fn lattice_of(rspec: &RingSpec, mspec: &ModuleSpec) -> SubmoduleLattice {
        let limits = Limits::default();
        let r = Arc::new(FiniteRing::construct(rspec, &limits).unwrap());
        let m = FiniteModule::construct(&r, mspec, &limits).unwrap();
        SubmoduleLattice::compute(&m, &HomCache::new(), &limits).unwrap()
    }

    #[test]
    fn z12_has_six_submodules_all_fully_invariant() {
        let lat = lattice_of(&RingSpec::Zn { n: 12 }, &ModuleSpec::Regular);
        assert_eq!(lat.len(), 6);
        assert_eq!(lat.fi.len(), 6);
        // product on the regular module is the ideal product: 2Z * 3Z = 6Z
        let two = lat.index_of(&closure(&lat.module, &[2])).unwrap();
        let three = lat.index_of(&closure(&lat.module, &[3])).unwrap();
        let six = lat.index_of(&closure(&lat.module, &[6])).unwrap();
        assert_eq!(lat.prod[two][three], six);
        assert_eq!(lat.check_product_associative(), None);
        assert_eq!(lat.check_star_condition(&(0..lat.len()).collect::<Vec<_>>()), None);
    }

    #[test]
    fn f2_square_lattice_and_star_failure() {
        let lat = lattice_of(
            &RingSpec::Zn { n: 2 },
            &ModuleSpec::DirectSum {
                of: Box::new(ModuleSpec::Regular),
                copies: 2,
            },
        );
        assert_eq!(lat.len(), 5);
        // only 0 and M are fully invariant
        assert_eq!(lat.fi, vec![lat.bottom(), lat.top()]);
        // any 1-dim subspace N has N * M = M, so (*) fails on all of Lambda
        let all: Vec<usize> = (0..lat.len()).collect();
        let witness = lat.check_star_condition(&all);
        assert!(witness.is_some());
        let w = witness.unwrap();
        assert_eq!(lat.members[w].count(), 2);
        // but it holds on the fully invariant part
        assert_eq!(lat.check_star_condition(&lat.fi), None);
    }

    #[test]
    fn triangular_ring_left_ideals() {
        let lat = lattice_of(
            &RingSpec::UpperTriangular {
                base: Box::new(RingSpec::Zn { n: 2 }),
                size: 2,
            },
            &ModuleSpec::Regular,
        );
        assert_eq!(lat.len(), 7);
        assert_eq!(lat.fi.len(), 5);
        // the two fi coatoms multiply to the socle entry, not zero
        let coats = lat.coatoms_within(&lat.fi);
        assert_eq!(coats.len(), 2);
        let p = lat.prod[coats[0]][coats[1]];
        let q = lat.prod[coats[1]][coats[0]];
        assert!(p != lat.bottom() || q != lat.bottom());
    }

    #[test]
    fn coatoms_of_z12() {
        let lat = lattice_of(&RingSpec::Zn { n: 12 }, &ModuleSpec::Regular);
        let coats = lat.coatoms();
        let labels: Vec<usize> = coats.iter().map(|&c| lat.members[c].count()).collect();
        assert_eq!(coats.len(), 2);
        assert_eq!(labels, vec![4, 6]); // 3Z12 and 2Z12
    }

    #[test]
    fn self_generator_checks() {
        let z12 = lattice_of(&RingSpec::Zn { n: 12 }, &ModuleSpec::Regular);
        assert!(z12.is_self_generator());
    }
}
