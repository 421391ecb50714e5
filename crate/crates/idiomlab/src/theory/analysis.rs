use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::Result;
use crate::finalg::{check_quasi_projective, FiniteModule, HomCache, QuasiProjectivity};
use crate::limits::Limits;
use crate::ptfree::{
    fixed_points, nucleus_from_subspace, p_condition, spec_rel, FrameView, MultLattice,
    NucleusMap, SubLatticeView,
};
use crate::sublat::SubmoduleLattice;

/// Greatest annihilator on the chosen side, when it exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annihilator {
    Exists(usize),
    /// The sum of all annihilating candidates fails to annihilate; the
    /// offending sum is recorded.
    NoGreatest { sum: usize },
}

/// Status of a theorem hypothesis on a concrete module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypothesisStatus {
    Met,
    Unmet,
    /// Stands in for an infinitary property via the finite proxy described
    /// in the report.
    AssumedByProxy,
    /// The deciding search exceeded its cap.
    Undetermined,
}

impl HypothesisStatus {
    pub fn admits_audit(self) -> bool {
        matches!(self, HypothesisStatus::Met | HypothesisStatus::AssumedByProxy)
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            HypothesisStatus::Met
        } else {
            HypothesisStatus::Unmet
        }
    }
}

/// Hypothesis flags shared by the theorem audit.
#[derive(Clone, Debug)]
pub struct Hypotheses {
    /// Proxy for "M is projective in sigma[M]": quasi-projectivity plus an
    /// associative product on Lambda(M).
    pub projective_sigma: HypothesisStatus,
    /// Proxy for "M is a self-progenerator": the above plus self-generation.
    pub self_progenerator: HypothesisStatus,
    pub product_associative: bool,
    pub star_full: bool,
    pub star_fi: bool,
    pub p_condition_full: bool,
    pub p_condition_fi: bool,
    pub coatomic_fi: bool,
    pub mx_meet_zero: bool,
    pub mx_fi_meet_zero: bool,
    pub quasi_projective: HypothesisStatus,
    pub self_generator: bool,
}

/// Everything the theory computes about one module, staged so later pieces
/// reuse earlier ones.
pub struct ModuleAnalysis {
    pub module: Arc<FiniteModule>,
    pub lattice: SubmoduleLattice,
    pub amb: MultLattice,
    /// B = all of Lambda(M).
    pub full: SubLatticeView,
    /// B = the fully invariant submodules.
    pub fi: SubLatticeView,
    /// Primes of Lambda(M) relative to the full lattice.
    pub lgspec: Vec<usize>,
    /// Primes among the fully invariant submodules relative to Lambda^fi.
    pub spec: Vec<usize>,
    /// Maximal submodules.
    pub mx: Vec<usize>,
    /// Maximal fully invariant submodules.
    pub mx_fi: Vec<usize>,
    /// Nucleus from the full spectrum over Lambda^fi.
    pub mu: NucleusMap,
    /// Nucleus from LgSpec over the full lattice.
    pub mu_lg: NucleusMap,
    /// Nucleus from the maximal submodules over Lambda^fi.
    pub tau: NucleusMap,
    /// Nucleus from the maximal fully invariant submodules over Lambda^fi.
    pub tau_fi: NucleusMap,
    /// Fixed points of mu within Lambda^fi: the semiprime submodules.
    pub sp: Vec<usize>,
    /// Fixed points of tau within Lambda^fi.
    pub spm: Vec<usize>,
    pub sp_frame: FrameView,
    pub spm_frame: FrameView,
    /// Per element m: lattice index of the greatest K with K * Rm = 0.
    pub ann_rm: Vec<usize>,
    /// Ler of each fully invariant submodule, as an element set, indexed in
    /// step with `fi.members`.
    pub ler_sets: Vec<BitSet>,
    /// Lattice index of each Ler set when it happens to be a submodule.
    pub ler: Vec<Option<usize>>,
    /// Lattice indices (all fully invariant) of the members of Psi(M).
    pub psi: Vec<usize>,
    pub quasi_projective: QuasiProjectivity,
    pub hypotheses: Hypotheses,
}

impl ModuleAnalysis {
    pub fn compute(m: &Arc<FiniteModule>, cache: &HomCache, limits: &Limits) -> Result<ModuleAnalysis> {
        let lattice = SubmoduleLattice::compute(m, cache, limits)?;
        let amb = MultLattice::from_sublattice(&lattice);
        let all: Vec<usize> = (0..lattice.len()).collect();
        let full = SubLatticeView::new(&amb, all.clone())?;
        let fi = SubLatticeView::new(&amb, lattice.fi.clone())?;

        let lgspec = spec_rel(&amb, &full, &all);
        let spec = spec_rel(&amb, &fi, &fi.members);
        let mx = lattice.coatoms();
        let mx_fi = lattice.coatoms_within(&fi.members);

        let mu = nucleus_from_subspace(&amb, &fi, &spec);
        let mu_lg = nucleus_from_subspace(&amb, &full, &lgspec);
        let tau = nucleus_from_subspace(&amb, &fi, &mx);
        let tau_fi = nucleus_from_subspace(&amb, &fi, &mx_fi);

        let sp = fixed_points(&fi, &mu);
        let spm = fixed_points(&fi, &tau);
        let sp_frame = FrameView::from_fixed_points(&amb, &sp, &mu)?;
        let spm_frame = FrameView::from_fixed_points(&amb, &spm, &tau)?;

        // annihilator of each cyclic submodule, reused by Ler
        let mut ann_rm = vec![0usize; m.size];
        for x in 0..m.size {
            let cyc = lattice
                .index_of(&m.cyclic(x))
                .expect("cyclic submodule is in the lattice");
            ann_rm[x] = ann_left_idx(&lattice, cyc);
        }

        let mut ler_sets = Vec::with_capacity(fi.members.len());
        let mut ler = Vec::with_capacity(fi.members.len());
        for &n in &fi.members {
            let mut set = BitSet::new(m.size);
            for x in 0..m.size {
                if lattice.join[n][ann_rm[x]] == lattice.top() {
                    set.insert(x);
                }
            }
            ler.push(lattice.index_of(&set));
            ler_sets.push(set);
        }
        let psi: Vec<usize> = fi
            .members
            .iter()
            .enumerate()
            .filter(|&(pos, &n)| lattice.members[n].is_subset(&ler_sets[pos]))
            .map(|(_, &n)| n)
            .collect();

        let product_associative = lattice.check_product_associative().is_none();
        let star_full = lattice.check_star_condition(&full.members).is_none();
        let star_fi = lattice.check_star_condition(&fi.members).is_none();
        let p_full = p_condition(&amb, &full, &lgspec).is_none();
        let p_fi = p_condition(&amb, &fi, &spec).is_none();
        let coatomic_fi = lattice.is_coatomic_within(&fi.members);
        let mx_meet_zero = lattice.meet_all(mx.iter().copied()) == lattice.bottom();
        let mx_fi_meet_zero = lattice.meet_all(mx_fi.iter().copied()) == lattice.bottom();

        let quasi_projective = check_quasi_projective(m, &lattice.members, cache, limits)?;
        let qp_status = match &quasi_projective {
            QuasiProjectivity::Holds => HypothesisStatus::Met,
            QuasiProjectivity::Fails { .. } => HypothesisStatus::Unmet,
            QuasiProjectivity::Undetermined { .. } => HypothesisStatus::Undetermined,
        };
        let self_generator = lattice.is_self_generator();
        let combine = |parts: &[HypothesisStatus]| -> HypothesisStatus {
            if parts.iter().any(|&p| p == HypothesisStatus::Unmet) {
                HypothesisStatus::Unmet
            } else if parts.iter().any(|&p| p == HypothesisStatus::Undetermined) {
                HypothesisStatus::Undetermined
            } else {
                HypothesisStatus::AssumedByProxy
            }
        };
        let projective_sigma = combine(&[qp_status, HypothesisStatus::from_bool(product_associative)]);
        let self_progenerator = combine(&[
            qp_status,
            HypothesisStatus::from_bool(product_associative),
            HypothesisStatus::from_bool(self_generator),
        ]);
        let hypotheses = Hypotheses {
            projective_sigma,
            self_progenerator,
            product_associative,
            star_full,
            star_fi,
            p_condition_full: p_full,
            p_condition_fi: p_fi,
            coatomic_fi,
            mx_meet_zero,
            mx_fi_meet_zero,
            quasi_projective: qp_status,
            self_generator,
        };

        Ok(ModuleAnalysis {
            module: Arc::clone(m),
            lattice,
            amb,
            full,
            fi,
            lgspec,
            spec,
            mx,
            mx_fi,
            mu,
            mu_lg,
            tau,
            tau_fi,
            sp,
            spm,
            sp_frame,
            spm_frame,
            ann_rm,
            ler_sets,
            ler,
            psi,
            quasi_projective,
            hypotheses,
        })
    }

    /// Greatest K with K * N = 0; always exists since the product
    /// distributes over joins in its left argument.
    pub fn ann_left(&self, n: usize) -> usize {
        ann_left_idx(&self.lattice, n)
    }

    /// Greatest L with N * L = 0, when the sum of all candidates still
    /// annihilates.
    pub fn ann_right(&self, n: usize) -> Annihilator {
        let lat = &self.lattice;
        let sum = lat.join_all((0..lat.len()).filter(|&l| lat.prod[n][l] == lat.bottom()));
        if lat.prod[n][sum] == lat.bottom() {
            Annihilator::Exists(sum)
        } else {
            Annihilator::NoGreatest { sum }
        }
    }

    /// The greatest fully invariant submodule inside N: the join of the
    /// fully invariant members below it.
    pub fn eta(&self, n: usize) -> usize {
        self.lattice
            .join_all(self.fi.members.iter().copied().filter(|&f| self.lattice.le(f, n)))
    }

    /// Position of a lattice index within the fully invariant members.
    pub fn fi_pos(&self, n: usize) -> Option<usize> {
        self.fi.members.iter().position(|&f| f == n)
    }

    /// Ler of a fully invariant submodule, as a lattice index when the
    /// element set is a submodule.
    pub fn ler_of(&self, n: usize) -> Option<usize> {
        self.fi_pos(n).and_then(|pos| self.ler[pos])
    }

    /// Independent description of the mu fixed points: all meets of subsets
    /// of Spec, plus M.
    pub fn sp_oracle_intersections(&self) -> Vec<usize> {
        let mut acc: Vec<usize> = vec![self.lattice.top()];
        acc.extend(self.spec.iter().copied());
        loop {
            let mut added = false;
            let snapshot = acc.clone();
            for &a in &snapshot {
                for &p in &self.spec {
                    let m = self.lattice.meet[a][p];
                    if !acc.contains(&m) {
                        acc.push(m);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        acc.sort_unstable();
        acc.dedup();
        acc
    }

    /// Second independent description: the fully invariant N with
    /// L * L <= N implying L <= N for all fully invariant L.
    pub fn sp_oracle_semiprime(&self) -> Vec<usize> {
        self.fi
            .members
            .iter()
            .copied()
            .filter(|&n| {
                self.fi
                    .members
                    .iter()
                    .all(|&l| !self.lattice.le(self.lattice.prod[l][l], n) || self.lattice.le(l, n))
            })
            .collect()
    }

    /// Independent description of the tau fixed points: eta of every meet
    /// of maximal submodules, plus M.
    pub fn spm_oracle(&self) -> Vec<usize> {
        let mut meets: Vec<usize> = vec![self.lattice.top()];
        meets.extend(self.mx.iter().copied());
        loop {
            let mut added = false;
            let snapshot = meets.clone();
            for &a in &snapshot {
                for &p in &self.mx {
                    let m = self.lattice.meet[a][p];
                    if !meets.contains(&m) {
                        meets.push(m);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut out: Vec<usize> = meets.into_iter().map(|x| self.eta(x)).collect();
        out.push(self.lattice.top());
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn ann_left_idx(lat: &SubmoduleLattice, n: usize) -> usize {
    lat.join_all((0..lat.len()).filter(|&k| lat.prod[k][n] == lat.bottom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::{closure, FiniteRing, ModuleSpec, RingSpec};

    fn analyze(rspec: &RingSpec, mspec: &ModuleSpec) -> ModuleAnalysis {
        let limits = Limits::default();
        let r = Arc::new(FiniteRing::construct(rspec, &limits).unwrap());
        let m = FiniteModule::construct(&r, mspec, &limits).unwrap();
        ModuleAnalysis::compute(&m, &HomCache::new(), &limits).unwrap()
    }

    fn idx(a: &ModuleAnalysis, gen: usize) -> usize {
        a.lattice
            .index_of(&closure(&a.lattice.module, &[gen]))
            .unwrap()
    }

    #[test]
    fn z12_spectra_and_fixed_points() {
        let a = analyze(&RingSpec::Zn { n: 12 }, &ModuleSpec::Regular);
        let two = idx(&a, 2);
        let three = idx(&a, 3);
        let six = idx(&a, 6);
        let top = a.lattice.top();
        assert_eq!(a.spec, vec![three, two]);
        assert_eq!(a.mx, vec![three, two]);
        assert_eq!(a.lgspec, a.spec);
        let mut want_sp = vec![six, three, two, top];
        want_sp.sort_unstable();
        assert_eq!(a.sp, want_sp);
        assert_eq!(a.spm, a.sp);
        // mu sends 0 to the meet of the primes
        assert_eq!(a.mu.apply(a.lattice.bottom()), six);
        assert_eq!(a.sp_oracle_intersections(), a.sp);
        assert_eq!(a.sp_oracle_semiprime(), a.sp);
        assert_eq!(a.spm_oracle(), a.spm);
    }

    #[test]
    fn z12_annihilators_ler_and_psi() {
        let a = analyze(&RingSpec::Zn { n: 12 }, &ModuleSpec::Regular);
        let two = idx(&a, 2);
        let three = idx(&a, 3);
        let four = idx(&a, 4);
        let six = idx(&a, 6);
        assert_eq!(a.ann_left(four), three);
        assert_eq!(a.ann_left(three), four);
        assert_eq!(a.ann_left(six), two);
        assert_eq!(a.ann_right(four), Annihilator::Exists(three));
        assert_eq!(a.ler_of(two), Some(four));
        assert_eq!(a.ler_of(three), Some(three));
        let mut want_psi = vec![a.lattice.bottom(), three, four, a.lattice.top()];
        want_psi.sort_unstable();
        assert_eq!(a.psi, want_psi);
    }

    #[test]
    fn f2_square_has_trivial_fi_spectrum() {
        let a = analyze(
            &RingSpec::Zn { n: 2 },
            &ModuleSpec::DirectSum {
                of: Box::new(ModuleSpec::Regular),
                copies: 2,
            },
        );
        // Lambda^fi = {0, M}; 0 is the only fi prime
        assert_eq!(a.fi.members.len(), 2);
        assert_eq!(a.spec, vec![a.lattice.bottom()]);
        // all five proper submodules are primes of the full lattice
        assert_eq!(a.lgspec.len(), 4);
        assert!(!a.hypotheses.star_full);
        assert!(a.hypotheses.star_fi);
    }

    #[test]
    fn eta_matches_the_preimage_description() {
        let a = analyze(
            &RingSpec::UpperTriangular {
                base: Box::new(RingSpec::Zn { n: 2 }),
                size: 2,
            },
            &ModuleSpec::Regular,
        );
        for n in 0..a.lattice.len() {
            // intersection of f^{-1}(N) over all endomorphisms
            let nset = &a.lattice.members[n];
            let mut pre = BitSet::full(a.module.size);
            for f in a.lattice.endos.iter() {
                let mut fpre = BitSet::new(a.module.size);
                for x in 0..a.module.size {
                    if nset.contains(f.apply(x)) {
                        fpre.insert(x);
                    }
                }
                pre.intersect_with(&fpre);
            }
            assert_eq!(a.lattice.members[a.eta(n)], pre);
        }
    }

    #[test]
    fn triangular_hypotheses() {
        let a = analyze(
            &RingSpec::UpperTriangular {
                base: Box::new(RingSpec::Zn { n: 2 }),
                size: 2,
            },
            &ModuleSpec::Regular,
        );
        assert_eq!(a.fi.members.len(), 5);
        assert_eq!(a.mx_fi.len(), 2);
        assert!(a.hypotheses.product_associative);
        // N_M R is the two-sided ideal generated by N, so (*) fails on the
        // full lattice of left ideals; it holds on the fully invariant part.
        assert!(!a.hypotheses.star_full);
        assert!(a.hypotheses.star_fi);
    }
}
