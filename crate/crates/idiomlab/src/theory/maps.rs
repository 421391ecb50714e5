//! The structure-transporting maps of the theory, each packaged as a
//! verification record: every claimed property is re-checked on the concrete
//! instance and the outcome recorded, never assumed.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::finalg::ModuleMap;
use crate::fintop::{find_retraction, is_homeomorphism, map_predicates, FinTopSpace, MapPredicates};
use crate::limits::Limits;
use crate::ptfree::FrameView;

use super::analysis::ModuleAnalysis;

/// Record for a point map between two spectral spaces.
#[derive(Clone, Debug)]
pub struct SpectralMapReport {
    pub domain: FinTopSpace,
    pub codomain: FinTopSpace,
    /// Point table, domain position to codomain position; meaningless when
    /// not well defined.
    pub map: Vec<usize>,
    /// Every image lands where the construction claims it does.
    pub well_defined: bool,
    pub predicates: MapPredicates,
    pub homeomorphism: bool,
    /// For the eta map: image of each basic closed set V(N), N fully
    /// invariant, equals the corresponding V(N) downstairs.
    pub basis_image_identity: Option<bool>,
}

/// Record for the Ler/tau pair between Psi(M) and SPm(M).
#[derive(Clone, Debug)]
pub struct PsiSpmReport {
    /// Failing pair (N, L) of the adjunction Ler(N) <= L iff N <= tau(L).
    pub galois_failure: Option<(usize, usize)>,
    pub tau_into_spm: bool,
    pub ler_into_psi: bool,
    pub mutually_inverse: bool,
    /// tau carries ambient joins and meets of Psi to the SPm frame
    /// operations.
    pub preserves_structure: bool,
    pub is_isomorphism: bool,
}

/// Record for the retraction gamma of the prime spectrum onto the maximals.
#[derive(Clone, Debug)]
pub struct GammaReport {
    /// Per prime (in spectrum order), the maximal submodules above it.
    pub maximals_over: Vec<Vec<usize>>,
    /// The pm condition: exactly one maximal over each prime.
    pub unique_maximal: bool,
    /// Sum form of each gamma value, in spectrum order.
    pub sum_form: Vec<usize>,
    /// Sum form equals the unique maximal, when there is one.
    pub sum_form_agrees: Option<bool>,
    /// Primes that are themselves maximal are sent to themselves.
    pub fixes_maximals: bool,
    pub predicates: Option<MapPredicates>,
    /// Whether a brute-force continuous retraction exists, when the
    /// maximals sit inside the spectrum.
    pub search_agrees: Option<bool>,
}

/// Record for the frame morphism induced by an epimorphism.
#[derive(Clone, Debug)]
pub struct FrameMorphismReport {
    /// L in Lambda^fi(M) with rho(Ler L) not inside Ler(rho L).
    pub roler_failure: Option<usize>,
    /// Pair where Ler o rho fails to carry a sum to a sum.
    pub sum_failure: Option<(usize, usize)>,
    /// Pair where Ler o rho fails to carry an intersection to one.
    pub meet_failure: Option<(usize, usize)>,
    /// L in Psi(M) whose image leaves Psi(N).
    pub psi_escape: Option<usize>,
    /// Pair in Psi(M) where rho fails sum or intersection preservation.
    pub psi_failure: Option<(usize, usize)>,
    pub is_frame_morphism: bool,
}

/// Ler of an arbitrary submodule (by lattice index) as an element set.
pub(crate) fn ler_set(a: &ModuleAnalysis, n: usize) -> BitSet {
    let lat = &a.lattice;
    let mut set = BitSet::new(a.module.size);
    for x in 0..a.module.size {
        if lat.join[n][a.ann_rm[x]] == lat.top() {
            set.insert(x);
        }
    }
    set
}

/// Hull-kernel space on a list of lattice points, closed basis drawn from
/// the fully invariant submodules.
pub(crate) fn hk_space(a: &ModuleAnalysis, points: &[usize], basis: &[usize]) -> FinTopSpace {
    let labels: Vec<String> = points.iter().map(|&p| a.lattice.member_label(p)).collect();
    let closed: Vec<BitSet> = basis
        .iter()
        .map(|&b| {
            BitSet::from_indices(
                points.len(),
                points
                    .iter()
                    .enumerate()
                    .filter(|&(_, &p)| a.lattice.le(b, p))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    FinTopSpace::from_closed_basis(labels, &closed)
}

fn failed_predicates() -> MapPredicates {
    MapPredicates {
        continuous: false,
        open: false,
        closed: false,
        injective: false,
        surjective: false,
    }
}

/// The frame Psi(M) as a lattice of element sets under inclusion.
pub(crate) fn psi_frame(a: &ModuleAnalysis) -> Result<FrameView> {
    let sets: Vec<BitSet> = a.psi.iter().map(|&n| a.lattice.members[n].clone()).collect();
    FrameView::from_sets(&sets)
}

/// Theta: mx^fi(M) -> pt(Psi(M)), maximal fully invariant N to Ler(N).
pub fn theta_homeomorphism(a: &ModuleAnalysis) -> Result<SpectralMapReport> {
    let frame = psi_frame(a)?;
    let points = frame.points();
    let domain = hk_space(a, &a.mx_fi, &a.fi.members);
    let labels: Vec<String> = points
        .iter()
        .map(|&p| a.lattice.member_label(a.psi[p]))
        .collect();
    let codomain = FinTopSpace::from_opens(labels, frame.point_opens(&points));

    let mut map = vec![0usize; a.mx_fi.len()];
    let mut well_defined = true;
    for (i, &mm) in a.mx_fi.iter().enumerate() {
        let target = a.ler_of(mm).and_then(|l| {
            let psi_pos = a.psi.iter().position(|&n| n == l)?;
            points.iter().position(|&p| p == psi_pos)
        });
        match target {
            Some(t) => map[i] = t,
            None => well_defined = false,
        }
    }
    let predicates = if well_defined {
        map_predicates(&domain, &codomain, &map)
    } else {
        failed_predicates()
    };
    let homeomorphism = well_defined && is_homeomorphism(&domain, &codomain, &map);
    Ok(SpectralMapReport {
        domain,
        codomain,
        map,
        well_defined,
        predicates,
        homeomorphism,
        basis_image_identity: None,
    })
}

/// The Galois pair Ler -| tau between Psi(M) and SPm(M).
pub fn psi_spm_isomorphism(a: &ModuleAnalysis) -> PsiSpmReport {
    let lat = &a.lattice;

    let mut galois_failure = None;
    'outer: for (pos, &n) in a.fi.members.iter().enumerate() {
        for &l in &a.fi.members {
            let lhs = a.ler_sets[pos].is_subset(&lat.members[l]);
            let rhs = lat.le(n, a.tau.apply(l));
            if lhs != rhs {
                galois_failure = Some((n, l));
                break 'outer;
            }
        }
    }

    let tau_into_spm = a
        .psi
        .iter()
        .all(|&n| a.spm.binary_search(&a.tau.apply(n)).is_ok());
    let ler_into_psi = a
        .spm
        .iter()
        .all(|&l| matches!(a.ler_of(l), Some(x) if a.psi.binary_search(&x).is_ok()));
    let mutually_inverse = a.psi.iter().all(|&n| a.ler_of(a.tau.apply(n)) == Some(n))
        && a.spm
            .iter()
            .all(|&l| a.ler_of(l).map(|x| a.tau.apply(x)) == Some(l));

    // spm frame positions of tau images
    let spm_pos = |x: usize| a.spm.iter().position(|&s| s == x);
    let preserves_structure = mutually_inverse
        && a.psi.iter().all(|&n| {
            a.psi.iter().all(|&m| {
                let (tn, tm) = (a.tau.apply(n), a.tau.apply(m));
                let (Some(pn), Some(pm)) = (spm_pos(tn), spm_pos(tm)) else {
                    return false;
                };
                let join_ok = spm_pos(a.tau.apply(lat.join[n][m]))
                    == Some(a.spm_frame.join[pn][pm]);
                let meet_ok = spm_pos(a.tau.apply(lat.meet[n][m]))
                    == Some(a.spm_frame.meet[pn][pm]);
                join_ok && meet_ok
            })
        });

    let is_isomorphism = galois_failure.is_none()
        && tau_into_spm
        && ler_into_psi
        && mutually_inverse
        && preserves_structure;
    PsiSpmReport {
        galois_failure,
        tau_into_spm,
        ler_into_psi,
        mutually_inverse,
        preserves_structure,
        is_isomorphism,
    }
}

/// Both gamma candidates on Spec(M): the unique maximal over each prime and
/// the sum form.
pub fn gamma_retraction(a: &ModuleAnalysis, limits: &Limits) -> Result<GammaReport> {
    let lat = &a.lattice;
    let maximals_over: Vec<Vec<usize>> = a
        .spec
        .iter()
        .map(|&p| a.mx.iter().copied().filter(|&m| lat.le(p, m)).collect())
        .collect();
    let unique_maximal = maximals_over.iter().all(|ms| ms.len() == 1);
    let sum_form: Vec<usize> = a
        .spec
        .iter()
        .map(|&p| {
            lat.join_all(
                a.fi
                    .members
                    .iter()
                    .copied()
                    .filter(|&n| lat.join[n][p] != lat.top()),
            )
        })
        .collect();
    let sum_form_agrees = unique_maximal.then(|| {
        sum_form
            .iter()
            .zip(&maximals_over)
            .all(|(&s, ms)| s == ms[0])
    });
    let fixes_maximals = a
        .spec
        .iter()
        .zip(&maximals_over)
        .filter(|(p, _)| a.mx.contains(p))
        .all(|(&p, ms)| ms == &vec![p]);

    let predicates = if unique_maximal {
        let dom = hk_space(a, &a.spec, &a.fi.members);
        let cod = hk_space(a, &a.mx, &a.fi.members);
        let map: Vec<usize> = maximals_over
            .iter()
            .map(|ms| a.mx.iter().position(|&m| m == ms[0]).unwrap())
            .collect();
        Some(map_predicates(&dom, &cod, &map))
    } else {
        None
    };

    let search_agrees = if a.mx.iter().all(|m| a.spec.contains(m)) {
        let dom = hk_space(a, &a.spec, &a.fi.members);
        let sub = BitSet::from_indices(
            a.spec.len(),
            a.spec
                .iter()
                .enumerate()
                .filter(|&(_, p)| a.mx.contains(p))
                .map(|(i, _)| i),
        );
        Some(find_retraction(&dom, &sub, limits)?.is_some())
    } else {
        None
    };

    Ok(GammaReport {
        maximals_over,
        unique_maximal,
        sum_form,
        sum_form_agrees,
        fixes_maximals,
        predicates,
        search_agrees,
    })
}

/// Eta: LgSpec(M) -> Spec(M), sending Q to the greatest fully invariant
/// submodule inside it.
pub fn eta_spectral_map(a: &ModuleAnalysis) -> SpectralMapReport {
    let domain = hk_space(a, &a.lgspec, &a.full.members);
    let codomain = hk_space(a, &a.spec, &a.fi.members);
    let mut map = vec![0usize; a.lgspec.len()];
    let mut well_defined = true;
    for (i, &q) in a.lgspec.iter().enumerate() {
        match a.spec.iter().position(|&p| p == a.eta(q)) {
            Some(t) => map[i] = t,
            None => well_defined = false,
        }
    }
    let predicates = if well_defined {
        map_predicates(&domain, &codomain, &map)
    } else {
        failed_predicates()
    };
    let homeomorphism = well_defined && is_homeomorphism(&domain, &codomain, &map);
    let basis_image_identity = well_defined.then(|| {
        a.fi.members.iter().all(|&n| {
            let image: BitSet = BitSet::from_indices(
                a.spec.len(),
                a.lgspec
                    .iter()
                    .enumerate()
                    .filter(|&(_, &q)| a.lattice.le(n, q))
                    .map(|(i, _)| map[i]),
            );
            let downstairs = BitSet::from_indices(
                a.spec.len(),
                a.spec
                    .iter()
                    .enumerate()
                    .filter(|&(_, &p)| a.lattice.le(n, p))
                    .map(|(i, _)| i),
            );
            image == downstairs
        })
    });
    SpectralMapReport {
        domain,
        codomain,
        map,
        well_defined,
        predicates,
        homeomorphism,
        basis_image_identity,
    }
}

/// The morphism of frames Psi(M) -> Psi(N) induced by an epimorphism
/// rho: M -> N, with the supporting lemmas checked along the way.
pub fn induced_frame_morphism(
    src: &ModuleAnalysis,
    tgt: &ModuleAnalysis,
    rho: &ModuleMap,
) -> Result<FrameMorphismReport> {
    if !rho.is_hom(&src.module, &tgt.module) {
        return Err(Error::InvalidTables(
            "induced morphism requires a module homomorphism".into(),
        ));
    }
    if rho.image(tgt.module.size).count() != tgt.module.size {
        return Err(Error::InvalidTables(
            "induced morphism requires an epimorphism".into(),
        ));
    }
    // image of a source submodule as a target lattice index
    let push = |n: usize| -> usize {
        let set = rho.image_of(&src.lattice.members[n], tgt.module.size);
        tgt.lattice
            .index_of(&set)
            .expect("homomorphic image of a submodule is a submodule")
    };
    let ler_push = |n: usize| -> BitSet { ler_set(tgt, push(n)) };
    let ler_push_idx = |n: usize| -> Option<usize> { tgt.lattice.index_of(&ler_push(n)) };

    let mut roler_failure = None;
    for (pos, &l) in src.fi.members.iter().enumerate() {
        let lhs = rho.image_of(&src.ler_sets[pos], tgt.module.size);
        if !lhs.is_subset(&ler_push(l)) {
            roler_failure = Some(l);
            break;
        }
    }

    let mut sum_failure = None;
    let mut meet_failure = None;
    'pairs: for &l in &src.fi.members {
        for &k in &src.fi.members {
            let (Some(il), Some(ik)) = (ler_push_idx(l), ler_push_idx(k)) else {
                sum_failure = Some((l, k));
                break 'pairs;
            };
            if ler_push_idx(src.lattice.join[l][k]) != Some(tgt.lattice.join[il][ik])
                && sum_failure.is_none()
            {
                sum_failure = Some((l, k));
            }
            let meet_lhs = ler_push(src.lattice.meet[l][k]);
            if meet_lhs != ler_push(l).intersection(&ler_push(k)) && meet_failure.is_none() {
                meet_failure = Some((l, k));
            }
            if sum_failure.is_some() && meet_failure.is_some() {
                break 'pairs;
            }
        }
    }

    let psi_escape = src
        .psi
        .iter()
        .copied()
        .find(|&l| tgt.psi.binary_search(&push(l)).is_err());
    let mut psi_failure = None;
    'psi: for &l in &src.psi {
        for &k in &src.psi {
            let sum_ok = push(src.lattice.join[l][k]) == tgt.lattice.join[push(l)][push(k)];
            let meet_ok = push(src.lattice.meet[l][k]) == tgt.lattice.meet[push(l)][push(k)];
            if !sum_ok || !meet_ok {
                psi_failure = Some((l, k));
                break 'psi;
            }
        }
    }

    let is_frame_morphism = psi_escape.is_none() && psi_failure.is_none();
    Ok(FrameMorphismReport {
        roler_failure,
        sum_failure,
        meet_failure,
        psi_escape,
        psi_failure,
        is_frame_morphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::{
        closure, quotient_with_projection, FiniteModule, FiniteRing, HomCache, ModuleSpec,
        RingSpec,
    };
    use std::sync::Arc;

    fn analyze(rspec: &RingSpec, mspec: &ModuleSpec) -> ModuleAnalysis {
        let limits = Limits::default();
        let r = Arc::new(FiniteRing::construct(rspec, &limits).unwrap());
        let m = FiniteModule::construct(&r, mspec, &limits).unwrap();
        ModuleAnalysis::compute(&m, &HomCache::new(), &limits).unwrap()
    }

    #[test]
    fn z12_theta_is_a_homeomorphism() {
        let a = analyze(&RingSpec::Zn { n: 12 }, &ModuleSpec::Regular);
        let rep = theta_homeomorphism(&a).unwrap();
        assert!(rep.well_defined);
        assert!(rep.homeomorphism);
        assert_eq!(rep.domain.points(), 2);
    }

    #[test]
    fn z12_psi_spm_isomorphism_holds() {
        let a = analyze(&RingSpec::Zn { n: 12 }, &ModuleSpec::Regular);
        let rep = psi_spm_isomorphism(&a);
        assert_eq!(rep.galois_failure, None);
        assert!(rep.is_isomorphism);
    }

    #[test]
    fn z12_gamma_is_the_identity_retraction() {
        let a = analyze(&RingSpec::Zn { n: 12 }, &ModuleSpec::Regular);
        let rep = gamma_retraction(&a, &Limits::default()).unwrap();
        assert!(rep.unique_maximal);
        assert_eq!(rep.sum_form_agrees, Some(true));
        assert!(rep.fixes_maximals);
        assert_eq!(rep.search_agrees, Some(true));
        let p = rep.predicates.unwrap();
        assert!(p.continuous && p.surjective);
    }

    #[test]
    fn eta_collapses_the_f2_square_spectrum() {
        let a = analyze(
            &RingSpec::Zn { n: 2 },
            &ModuleSpec::DirectSum {
                of: Box::new(ModuleSpec::Regular),
                copies: 2,
            },
        );
        let rep = eta_spectral_map(&a);
        assert!(rep.well_defined);
        assert_eq!(rep.codomain.points(), 1);
        assert!(rep.predicates.surjective && rep.predicates.continuous && rep.predicates.closed);
        assert_eq!(rep.basis_image_identity, Some(true));
    }

    #[test]
    fn z12_eta_is_the_identity() {
        let a = analyze(&RingSpec::Zn { n: 12 }, &ModuleSpec::Regular);
        let rep = eta_spectral_map(&a);
        assert!(rep.well_defined);
        assert!(rep.homeomorphism);
    }

    #[test]
    fn quotient_projection_induces_a_frame_morphism() {
        let limits = Limits::default();
        let r = Arc::new(FiniteRing::construct(&RingSpec::Zn { n: 12 }, &limits).unwrap());
        let m = FiniteModule::construct(&r, &ModuleSpec::Regular, &limits).unwrap();
        let cache = HomCache::new();
        let src = ModuleAnalysis::compute(&m, &cache, &limits).unwrap();
        let four = closure(&m, &[4]);
        let (q, proj) = quotient_with_projection(&m, &four).unwrap();
        let tgt = ModuleAnalysis::compute(&q, &cache, &limits).unwrap();
        let rho = ModuleMap { table: proj };
        let rep = induced_frame_morphism(&src, &tgt, &rho).unwrap();
        assert_eq!(rep.roler_failure, None);
        assert_eq!(rep.sum_failure, None);
        assert_eq!(rep.meet_failure, None);
        assert!(rep.is_frame_morphism);
    }

    #[test]
    fn identity_induces_the_trivial_frame_morphism() {
        let limits = Limits::default();
        let r = Arc::new(FiniteRing::construct(&RingSpec::Zn { n: 6 }, &limits).unwrap());
        let m = FiniteModule::construct(&r, &ModuleSpec::Regular, &limits).unwrap();
        let cache = HomCache::new();
        let a = ModuleAnalysis::compute(&m, &cache, &limits).unwrap();
        let rho = ModuleMap::identity(&m);
        let rep = induced_frame_morphism(&a, &a, &rho).unwrap();
        assert!(rep.is_frame_morphism);
        assert_eq!(rep.roler_failure, None);
    }
}
