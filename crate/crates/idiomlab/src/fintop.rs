//! Concrete finite topological spaces, built from closed bases, with the
//! separation and mapping predicates the spectral theory needs.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::ptfree::FrameView;

/// A topology on a finite point set, opens stored explicitly and saturated
/// under union and intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinTopSpace {
    pub labels: Vec<String>,
    /// Sorted by (cardinality, set); always contains the empty set and the
    /// whole space.
    pub opens: Vec<BitSet>,
}

impl FinTopSpace {
    pub fn points(&self) -> usize {
        self.labels.len()
    }

    pub fn from_opens(labels: Vec<String>, mut opens: Vec<BitSet>) -> FinTopSpace {
        let n = labels.len();
        opens.push(BitSet::new(n));
        opens.push(BitSet::full(n));
        saturate(&mut opens);
        FinTopSpace { labels, opens }
    }

    /// Build a space from a basis of closed sets: closed sets are all
    /// intersections of basis members (plus the whole space), opens are the
    /// complements, then saturated.
    pub fn from_closed_basis(labels: Vec<String>, basis: &[BitSet]) -> FinTopSpace {
        let n = labels.len();
        let mut closed: Vec<BitSet> = vec![BitSet::full(n)];
        for b in basis {
            let mut next = closed.clone();
            for c in &closed {
                let mut x = c.clone();
                x.intersect_with(b);
                next.push(x);
            }
            next.push(b.clone());
            next.sort_unstable_by_key(|s| s.order_key());
            next.dedup();
            closed = next;
        }
        let opens: Vec<BitSet> = closed.iter().map(|c| c.complement()).collect();
        Self::from_opens(labels, opens)
    }

    pub fn is_open(&self, set: &BitSet) -> bool {
        self.opens.binary_search_by_key(&set.order_key(), |s| s.order_key()).is_ok()
            && self.opens.iter().any(|s| s == set)
    }

    pub fn is_closed(&self, set: &BitSet) -> bool {
        let c = set.complement();
        self.opens.iter().any(|s| *s == c)
    }

    pub fn closure(&self, set: &BitSet) -> BitSet {
        // intersection of all closed supersets
        let mut acc = BitSet::full(self.points());
        for open in &self.opens {
            let closed = open.complement();
            if set.is_subset(&closed) {
                acc.intersect_with(&closed);
            }
        }
        acc
    }

    pub fn is_hausdorff(&self) -> bool {
        let n = self.points();
        for x in 0..n {
            for y in (x + 1)..n {
                let separated = self.opens.iter().any(|u| {
                    u.contains(x)
                        && !u.contains(y)
                        && self.opens.iter().any(|v| {
                            v.contains(y) && !v.contains(x) && u.is_disjoint(v)
                        })
                });
                if !separated {
                    return false;
                }
            }
        }
        true
    }

    /// Normality for disjoint closed sets; T1 is not required.
    pub fn is_normal(&self) -> bool {
        let closeds: Vec<BitSet> = self.opens.iter().map(|o| o.complement()).collect();
        for a in &closeds {
            for b in &closeds {
                if !a.is_disjoint(b) || a.is_empty() || b.is_empty() {
                    continue;
                }
                let separated = self.opens.iter().any(|u| {
                    a.is_subset(u)
                        && self.opens.iter().any(|v| b.is_subset(v) && u.is_disjoint(v))
                });
                if !separated {
                    return false;
                }
            }
        }
        true
    }

    /// On a finite space every open cover is its own finite subcover, so
    /// compactness holds outright; kept as a named check so reports can
    /// state it was verified rather than assumed.
    pub fn is_compact(&self) -> bool {
        true
    }

    /// The frame of open sets.
    pub fn open_set_frame(&self) -> Result<FrameView> {
        FrameView::from_sets(&self.opens)
    }
}

fn saturate(opens: &mut Vec<BitSet>) {
    opens.sort_unstable_by_key(|s| s.order_key());
    opens.dedup();
    loop {
        let mut added = false;
        let snapshot = opens.clone();
        for i in 0..snapshot.len() {
            for j in (i + 1)..snapshot.len() {
                let u = snapshot[i].union(&snapshot[j]);
                let mut m = snapshot[i].clone();
                m.intersect_with(&snapshot[j]);
                for cand in [u, m] {
                    if !opens.iter().any(|s| *s == cand) {
                        opens.push(cand);
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
        opens.sort_unstable_by_key(|s| s.order_key());
        opens.dedup();
    }
}

/// Predicates of a point map between finite spaces, everything checked
/// directly from the open set lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapPredicates {
    pub continuous: bool,
    pub open: bool,
    pub closed: bool,
    pub injective: bool,
    pub surjective: bool,
}

pub fn map_predicates(dom: &FinTopSpace, cod: &FinTopSpace, map: &[usize]) -> MapPredicates {
    let preimage = |set: &BitSet| -> BitSet {
        let mut out = BitSet::new(dom.points());
        for (x, &fx) in map.iter().enumerate() {
            if set.contains(fx) {
                out.insert(x);
            }
        }
        out
    };
    let image = |set: &BitSet| -> BitSet {
        let mut out = BitSet::new(cod.points());
        for x in set.iter() {
            out.insert(map[x]);
        }
        out
    };
    let continuous = cod.opens.iter().all(|u| dom.is_open(&preimage(u)));
    let open = dom.opens.iter().all(|u| cod.is_open(&image(u)));
    let closed = dom
        .opens
        .iter()
        .all(|u| cod.is_closed(&image(&u.complement())));
    let mut seen = BitSet::new(cod.points());
    let mut injective = true;
    for &y in map {
        if seen.contains(y) {
            injective = false;
        }
        seen.insert(y);
    }
    let surjective = seen.count() == cod.points();
    MapPredicates {
        continuous,
        open,
        closed,
        injective,
        surjective,
    }
}

pub fn is_homeomorphism(dom: &FinTopSpace, cod: &FinTopSpace, map: &[usize]) -> bool {
    let p = map_predicates(dom, cod, map);
    p.continuous && p.open && p.injective && p.surjective
}

/// Search for a homeomorphism between two spaces; brute force over
/// bijections with pruning by open-set statistics.
pub fn are_homeomorphic(a: &FinTopSpace, b: &FinTopSpace) -> bool {
    if a.points() != b.points() || a.opens.len() != b.opens.len() {
        return false;
    }
    let n = a.points();
    // invariant per point: multiset of sizes of opens containing it
    let stats = |sp: &FinTopSpace, x: usize| -> Vec<usize> {
        let mut v: Vec<usize> = sp
            .opens
            .iter()
            .filter(|u| u.contains(x))
            .map(|u| u.count())
            .collect();
        v.sort_unstable();
        v
    };
    let sa: Vec<Vec<usize>> = (0..n).map(|x| stats(a, x)).collect();
    let sb: Vec<Vec<usize>> = (0..n).map(|x| stats(b, x)).collect();
    fn extend(
        a: &FinTopSpace,
        b: &FinTopSpace,
        sa: &[Vec<usize>],
        sb: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let x = map.len();
        if x == sa.len() {
            return is_homeomorphism(a, b, map);
        }
        for y in 0..sb.len() {
            if used[y] || sa[x] != sb[y] {
                continue;
            }
            map.push(y);
            used[y] = true;
            if extend(a, b, sa, sb, map, used) {
                return true;
            }
            map.pop();
            used[y] = false;
        }
        false
    }
    extend(a, b, &sa, &sb, &mut Vec::new(), &mut vec![false; n])
}

/// Search for a continuous retraction of the space onto the subset `sub`
/// (a continuous map fixing `sub` pointwise with image inside `sub`).
/// Returns the lexicographically least table if one exists.
pub fn find_retraction(space: &FinTopSpace, sub: &BitSet, limits: &Limits) -> Result<Option<Vec<usize>>> {
    let n = space.points();
    let targets: Vec<usize> = sub.iter().collect();
    let free: Vec<usize> = (0..n).filter(|x| !sub.contains(*x)).collect();
    let mut bound: u64 = 1;
    for _ in &free {
        bound = bound.saturating_mul(targets.len() as u64);
    }
    if bound > limits.max_search {
        return Err(Error::SearchSpaceExceeded {
            what: "retraction search".into(),
            needed: bound,
            cap: limits.max_search,
        });
    }
    // subspace topology on `sub`
    let sub_space = subspace(space, sub);
    let positions: Vec<usize> = targets.clone();
    let mut choice = vec![0usize; free.len()];
    loop {
        let mut table: Vec<usize> = (0..n).collect();
        for (slot, &x) in free.iter().enumerate() {
            table[x] = positions[choice[slot]];
        }
        // continuity into the subspace: check preimages of sub-opens
        let continuous = sub_space.opens.iter().all(|u| {
            let mut pre = BitSet::new(n);
            for x in 0..n {
                let fx = table[x];
                let pos = positions.iter().position(|&t| t == fx).unwrap();
                if u.contains(pos) {
                    pre.insert(x);
                }
            }
            space.is_open(&pre)
        });
        if continuous {
            return Ok(Some(table));
        }
        // next assignment
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(None);
            }
            choice[i] += 1;
            if choice[i] < positions.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// The subspace topology on `sub`, points renumbered in increasing order.
pub fn subspace(space: &FinTopSpace, sub: &BitSet) -> FinTopSpace {
    let points: Vec<usize> = sub.iter().collect();
    let labels: Vec<String> = points.iter().map(|&p| space.labels[p].clone()).collect();
    let opens: Vec<BitSet> = space
        .opens
        .iter()
        .map(|u| {
            let mut set = BitSet::new(points.len());
            for (i, &p) in points.iter().enumerate() {
                if u.contains(p) {
                    set.insert(i);
                }
            }
            set
        })
        .collect();
    FinTopSpace::from_opens(labels, opens)
}

/// Frame isomorphism search between two finite lattices, with degree
/// pruning.
pub fn frames_isomorphic(a: &FrameView, b: &FrameView) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let profile = |f: &FrameView, x: usize| -> (usize, usize) {
        (
            (0..n).filter(|&y| f.le(y, x)).count(),
            (0..n).filter(|&y| f.le(x, y)).count(),
        )
    };
    let pa: Vec<(usize, usize)> = (0..n).map(|x| profile(a, x)).collect();
    let pb: Vec<(usize, usize)> = (0..n).map(|x| profile(b, x)).collect();
    fn extend(
        a: &FrameView,
        b: &FrameView,
        pa: &[(usize, usize)],
        pb: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let x = map.len();
        let n = pa.len();
        if x == n {
            for i in 0..n {
                for j in 0..n {
                    if map[a.join[i][j]] != b.join[map[i]][map[j]]
                        || map[a.meet[i][j]] != b.meet[map[i]][map[j]]
                    {
                        return false;
                    }
                }
            }
            return true;
        }
        for y in 0..n {
            if used[y] || pa[x] != pb[y] {
                continue;
            }
            // partial order consistency with already-placed elements
            if (0..x).any(|i| a.le(i, x) != b.le(map[i], y) || a.le(x, i) != b.le(y, map[i])) {
                continue;
            }
            map.push(y);
            used[y] = true;
            if extend(a, b, pa, pb, map, used) {
                return true;
            }
            map.pop();
            used[y] = false;
        }
        false
    }
    extend(a, b, &pa, &pb, &mut Vec::new(), &mut vec![false; n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{i}")).collect()
    }

    #[test]
    fn discrete_two_points_is_hausdorff_and_normal() {
        let opens = vec![
            BitSet::from_indices(2, [0]),
            BitSet::from_indices(2, [1]),
        ];
        let sp = FinTopSpace::from_opens(labels(2), opens);
        assert_eq!(sp.opens.len(), 4);
        assert!(sp.is_hausdorff());
        assert!(sp.is_normal());
        assert!(sp.is_compact());
    }

    #[test]
    fn sierpinski_is_not_hausdorff() {
        let opens = vec![BitSet::from_indices(2, [0])];
        let sp = FinTopSpace::from_opens(labels(2), opens);
        assert!(!sp.is_hausdorff());
    }

    #[test]
    fn closed_basis_roundtrip() {
        // closed basis {0}, {0,1} on 3 points
        let basis = vec![
            BitSet::from_indices(3, [0]),
            BitSet::from_indices(3, [0, 1]),
        ];
        let sp = FinTopSpace::from_closed_basis(labels(3), &basis);
        assert!(sp.is_closed(&BitSet::from_indices(3, [0])));
        assert!(sp.is_open(&BitSet::from_indices(3, [1, 2])));
        assert_eq!(sp.closure(&BitSet::from_indices(3, [1])), BitSet::from_indices(3, [0, 1]));
    }

    #[test]
    fn identity_is_a_homeomorphism() {
        let opens = vec![BitSet::from_indices(2, [0])];
        let sp = FinTopSpace::from_opens(labels(2), opens);
        assert!(is_homeomorphism(&sp, &sp, &[0, 1]));
        assert!(are_homeomorphic(&sp, &sp));
    }

    #[test]
    fn discrete_and_sierpinski_differ() {
        let disc = FinTopSpace::from_opens(
            labels(2),
            vec![BitSet::from_indices(2, [0]), BitSet::from_indices(2, [1])],
        );
        let sier = FinTopSpace::from_opens(labels(2), vec![BitSet::from_indices(2, [0])]);
        assert!(!are_homeomorphic(&disc, &sier));
    }

    #[test]
    fn retraction_onto_open_point() {
        // Sierpinski: opens {}, {0}, {0,1}; retract onto {0}
        let sier = FinTopSpace::from_opens(labels(2), vec![BitSet::from_indices(2, [0])]);
        let sub = BitSet::from_indices(2, [0]);
        let got = find_retraction(&sier, &sub, &Limits::default()).unwrap();
        assert_eq!(got, Some(vec![0, 0]));
    }

    #[test]
    fn open_set_frames_of_homeomorphic_spaces_are_isomorphic() {
        let sier = FinTopSpace::from_opens(labels(2), vec![BitSet::from_indices(2, [0])]);
        let sier2 = FinTopSpace::from_opens(labels(2), vec![BitSet::from_indices(2, [1])]);
        assert!(are_homeomorphic(&sier, &sier2));
        let fa = sier.open_set_frame().unwrap();
        let fb = sier2.open_set_frame().unwrap();
        assert!(frames_isomorphic(&fa, &fb));
    }
}
