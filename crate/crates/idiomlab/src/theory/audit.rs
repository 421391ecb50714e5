//! The executable theorem audit. Every result of the theory is re-checked
//! on the concrete instance: hypotheses are evaluated first (infinitary ones
//! through their finite proxies), then the conclusion, and the outcome is
//! recorded as pass / hypotheses-unmet / violated.

use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::finalg::{direct_power, quotient_with_projection, HomCache, ModuleMap};
use crate::fintop::{find_retraction, frames_isomorphic, FinTopSpace};
use crate::limits::Limits;
use crate::ptfree::{check_normal_fixed, check_normal_mult, check_nucleus_laws, NucleusMap};

use super::analysis::{Annihilator, HypothesisStatus, ModuleAnalysis};
use super::classify::{is_gelfand, is_pm, is_quasi_duo, is_strongly_harmonic};
use super::maps::{hk_space, induced_frame_morphism, psi_frame};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    HypothesesUnmet,
    Violated { witness: String },
}

#[derive(Clone, Debug)]
pub struct AuditEntry {
    pub name: String,
    pub statement: &'static str,
    pub hypotheses: Vec<(String, HypothesisStatus)>,
    pub verdict: Verdict,
}

impl AuditEntry {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn violated(&self) -> bool {
        matches!(self.verdict, Verdict::Violated { .. })
    }
}

fn entry(
    name: impl Into<String>,
    statement: &'static str,
    hypotheses: Vec<(&str, HypothesisStatus)>,
    conclusion: impl FnOnce() -> Option<String>,
) -> AuditEntry {
    let hypotheses: Vec<(String, HypothesisStatus)> = hypotheses
        .into_iter()
        .map(|(n, s)| (n.to_string(), s))
        .collect();
    let verdict = if hypotheses.iter().all(|(_, s)| s.admits_audit()) {
        match conclusion() {
            None => Verdict::Pass,
            Some(witness) => Verdict::Violated { witness },
        }
    } else {
        Verdict::HypothesesUnmet
    };
    AuditEntry {
        name: name.into(),
        statement,
        hypotheses,
        verdict,
    }
}

fn iff(label: &str, lhs: bool, rhs: bool) -> Option<String> {
    (lhs != rhs).then(|| format!("{label}: {lhs} vs {rhs}"))
}

fn implies(label: &str, lhs: bool, rhs: bool) -> Option<String> {
    (lhs && !rhs).then(|| format!("{label}: antecedent holds, consequent fails"))
}

/// Shorthand for V(b) as positions within a point list.
fn hull(a: &ModuleAnalysis, points: &[usize], b: usize) -> BitSet {
    BitSet::from_indices(
        points.len(),
        points
            .iter()
            .enumerate()
            .filter(|&(_, &p)| a.lattice.le(b, p))
            .map(|(i, _)| i),
    )
}

/// All the per-instance facts the individual audits share.
struct Ctx<'a> {
    a: &'a ModuleAnalysis,
    sh: bool,
    gelfand: bool,
    quasi_duo: bool,
    pm: bool,
    spec_space: FinTopSpace,
    mx_space: FinTopSpace,
    mx_fi_space: FinTopSpace,
    fi_normal: bool,
    sp_normal: bool,
    spm_normal: bool,
    /// Continuous retraction of Spec(M) onto mx(M), when decidable.
    mx_retract: Option<bool>,
}

impl<'a> Ctx<'a> {
    fn build(a: &'a ModuleAnalysis, limits: &Limits) -> Ctx<'a> {
        let spec_space = hk_space(a, &a.spec, &a.fi.members);
        let mx_in_spec = a
            .mx
            .iter()
            .all(|m| a.spec.contains(m))
            .then(|| {
                BitSet::from_indices(
                    a.spec.len(),
                    a.spec
                        .iter()
                        .enumerate()
                        .filter(|&(_, p)| a.mx.contains(p))
                        .map(|(i, _)| i),
                )
            });
        let mx_retract = match &mx_in_spec {
            Some(sub) => find_retraction(&spec_space, sub, limits)
                .ok()
                .map(|r| r.is_some()),
            None => Some(false),
        };
        Ctx {
            sh: is_strongly_harmonic(a).holds(),
            gelfand: is_gelfand(a).holds(),
            quasi_duo: is_quasi_duo(a).holds(),
            pm: is_pm(a).holds(),
            mx_space: hk_space(a, &a.mx, &a.fi.members),
            mx_fi_space: hk_space(a, &a.mx_fi, &a.fi.members),
            fi_normal: check_normal_mult(&a.amb, &a.fi).is_none(),
            sp_normal: check_normal_fixed(&a.amb, &a.fi, &a.mu).is_none(),
            spm_normal: check_normal_fixed(&a.amb, &a.fi, &a.tau).is_none(),
            spec_space,
            mx_retract,
            a,
        }
    }

    fn met(&self, b: bool) -> HypothesisStatus {
        HypothesisStatus::from_bool(b)
    }
}

/// Ler of a submodule given by lattice index, as an element set.
fn ler_set(a: &ModuleAnalysis, n: usize) -> BitSet {
    super::maps::ler_set(a, n)
}

fn lemmap_entries(ctx: &Ctx, out: &mut Vec<AuditEntry>) {
    let a = ctx.a;
    let configs: [(&str, &[usize], &[usize], &NucleusMap, bool); 2] = [
        ("lemmap over Lambda", &a.full.members, &a.lgspec, &a.mu_lg, a.hypotheses.star_full),
        ("lemmap over Lambda^fi", &a.fi.members, &a.spec, &a.mu, a.hypotheses.star_fi),
    ];
    for (name, members, spec, nucleus, star) in configs {
        out.push(entry(
            name,
            "V is antitone, V(x) = V(mu x), xy <= mu(0) iff U(x) and U(y) are disjoint, and x v y = 1 forces disjoint hulls (conversely under the p-condition)",
            vec![("condition (*)", ctx.met(star))],
            || {
                let mu0 = nucleus.apply(a.lattice.bottom());
                let p_cond = members
                    .iter()
                    .all(|&b| b == a.lattice.top() || spec.iter().any(|&p| a.lattice.le(b, p)));
                for &x in members {
                    for &y in members {
                        if a.lattice.le(x, y) && !hull(a, spec, y).is_subset(&hull(a, spec, x)) {
                            return Some(format!("(a) fails at ({x},{y})"));
                        }
                        let lhs = a.lattice.le(a.lattice.prod[x][y], mu0);
                        let rhs = hull(a, spec, x).union(&hull(a, spec, y))
                            == BitSet::full(spec.len());
                        if lhs != rhs {
                            return Some(format!("(c) fails at ({x},{y})"));
                        }
                        let joined = a.lattice.join[x][y] == a.lattice.top();
                        let disjoint = hull(a, spec, x).is_disjoint(&hull(a, spec, y));
                        if joined && !disjoint {
                            return Some(format!("(d) fails at ({x},{y})"));
                        }
                        if p_cond && disjoint && !joined {
                            return Some(format!("(d) converse fails at ({x},{y})"));
                        }
                    }
                    if hull(a, spec, x) != hull(a, spec, nucleus.apply(x)) {
                        return Some(format!("(b) fails at {x}"));
                    }
                }
                None
            },
        ));
        out.push(entry(
            name.replace("lemmap", "lemaV"),
            "the chain x v y = 1 => mu(x) v mu(y) = 1 => mu of that = 1 => disjoint hulls of mu-images => disjoint hulls; all equivalent under the p-condition",
            vec![("condition (*)", ctx.met(star))],
            || {
                let p_cond = members
                    .iter()
                    .all(|&b| b == a.lattice.top() || spec.iter().any(|&p| a.lattice.le(b, p)));
                for &x in members {
                    for &y in members {
                        let top = a.lattice.top();
                        let ca = a.lattice.join[x][y] == top;
                        let jx = nucleus.apply(x);
                        let jy = nucleus.apply(y);
                        let cb = a.lattice.join[jx][jy] == top;
                        let cc = nucleus.apply(a.lattice.join[jx][jy]) == top;
                        let cd = hull(a, spec, jx).is_disjoint(&hull(a, spec, jy));
                        let ce = hull(a, spec, x).is_disjoint(&hull(a, spec, y));
                        let chain = (!ca || cb) && (!cb || cc) && (!cc || cd) && (!cd || ce);
                        if !chain {
                            return Some(format!("chain breaks at ({x},{y})"));
                        }
                        if p_cond && (ca != cb || cb != cc || cc != cd || cd != ce) {
                            return Some(format!("equivalence fails at ({x},{y})"));
                        }
                    }
                }
                None
            },
        ));
        out.push(entry(
            name.replace("lemmap", "bcompspeccomp"),
            "with B compact, the relative spectrum is a compact space exactly when the p-condition holds; finitely, the space is compact outright so the p-condition must hold",
            vec![("condition (*)", ctx.met(star))],
            || {
                members
                    .iter()
                    .find(|&&b| b != a.lattice.top() && !spec.iter().any(|&p| a.lattice.le(b, p)))
                    .map(|&b| format!("proper element {b} lies under no relative prime"))
            },
        ));
    }
}

fn nucleus_entries(ctx: &Ctx, out: &mut Vec<AuditEntry>) {
    let a = ctx.a;
    let configs: [(&str, &NucleusMap, bool, bool); 4] = [
        ("nucleus laws: mu on Lambda", &a.mu_lg, true, a.hypotheses.star_full),
        ("nucleus laws: mu on Lambda^fi", &a.mu, false, a.hypotheses.star_fi),
        ("nucleus laws: tau (mx)", &a.tau, false, a.hypotheses.star_fi),
        ("nucleus laws: tau (mx^fi)", &a.tau_fi, false, a.hypotheses.star_fi),
    ];
    for (name, nucleus, full, star) in configs {
        let b_set = if full { &a.full } else { &a.fi };
        out.push(entry(
            name,
            "the hull-kernel operator is an inflatory, monotone, idempotent, meet-preserving, multiplicative nucleus",
            vec![("condition (*)", ctx.met(star))],
            || {
                let laws = check_nucleus_laws(&a.amb, b_set, nucleus);
                if !laws.is_nucleus() {
                    Some(format!("nucleus law fails: {laws:?}"))
                } else if !laws.is_multiplicative() {
                    Some(format!("multiplicativity fails: {:?}", laws.multiplicative))
                } else {
                    None
                }
            },
        ));
    }
}

fn normality_entries(ctx: &Ctx, limits: &Limits, out: &mut Vec<AuditEntry>) {
    let a = ctx.a;
    let proj = a.hypotheses.projective_sigma;

    out.push(entry(
        "lattice modularity",
        "the submodule lattice satisfies the modular law",
        vec![],
        || {
            a.amb
                .check_modular()
                .map(|(x, y, z)| format!("modularity fails at ({x},{y},{z})"))
        },
    ));

    out.push(entry(
        "compatomic2",
        "compact Lambda^fi is coatomic; finitely, Lambda^fi must be coatomic",
        vec![("projective in sigma[M] (proxy)", proj)],
        || (!a.hypotheses.coatomic_fi).then(|| "Lambda^fi is not coatomic".into()),
    ));

    out.push(entry(
        "maxfiinspec",
        "every maximal fully invariant submodule is a relative prime",
        vec![("projective in sigma[M] (proxy)", proj)],
        || {
            a.mx_fi
                .iter()
                .find(|m| !a.spec.contains(m))
                .map(|&m| format!("coatom {} escapes Spec", a.lattice.member_label(m)))
        },
    ));

    out.push(entry(
        "mufix",
        "mu fixes the coatoms of Lambda^fi",
        vec![("projective in sigma[M] (proxy)", proj)],
        || {
            a.mx_fi
                .iter()
                .find(|&&m| a.mu.apply(m) != m)
                .map(|&m| format!("mu moves {}", a.lattice.member_label(m)))
        },
    ));

    let fixes_coatoms = a.mx_fi.iter().all(|&m| a.mu.apply(m) == m);
    out.push(entry(
        "lema1",
        "for a coatomic idiom with coatom-fixing nucleus, mu(x v y) = 1 forces x v y = 1",
        vec![
            ("Lambda^fi coatomic", ctx.met(a.hypotheses.coatomic_fi)),
            ("mu fixes coatoms", ctx.met(fixes_coatoms)),
        ],
        || {
            for &x in &a.fi.members {
                for &y in &a.fi.members {
                    let j = a.lattice.join[x][y];
                    if a.mu.apply(j) == a.lattice.top() && j != a.lattice.top() {
                        return Some(format!("fails at ({x},{y})"));
                    }
                }
            }
            None
        },
    ));

    out.push(entry(
        "lema2",
        "normality of the ambient idiom passes to the fixed points of the nucleus",
        vec![
            ("Lambda^fi coatomic", ctx.met(a.hypotheses.coatomic_fi)),
            ("mu fixes coatoms", ctx.met(fixes_coatoms)),
            ("Lambda^fi normal", ctx.met(ctx.fi_normal)),
        ],
        || (!ctx.sp_normal).then(|| "fixed-point lattice of mu is not normal".into()),
    ));

    out.push(entry(
        "mu (partial converse)",
        "if the fixed points are normal and mu(0) = 0, the ambient idiom is normal",
        vec![
            ("Lambda^fi coatomic", ctx.met(a.hypotheses.coatomic_fi)),
            ("mu fixes coatoms", ctx.met(fixes_coatoms)),
            ("fixed points normal", ctx.met(ctx.sp_normal)),
            ("mu(0) = 0", ctx.met(a.mu.apply(a.lattice.bottom()) == a.lattice.bottom())),
        ],
        || (!ctx.fi_normal).then(|| "Lambda^fi is not normal".into()),
    ));

    // pronormal for the three subspaces of interest
    let pronormal: [(&str, &[usize], &NucleusMap); 3] = [
        ("pronormal: S = Spec", &a.spec, &a.mu),
        ("pronormal: S = mx", &a.mx, &a.tau),
        ("pronormal: S = mx^fi", &a.mx_fi, &a.tau_fi),
    ];
    for (name, points, nucleus) in pronormal {
        out.push(entry(
            name,
            "the subspace is normal exactly when the fixed-point lattice of its nucleus is normal",
            vec![("condition (*)", ctx.met(a.hypotheses.star_fi))],
            || {
                let space = hk_space(a, points, &a.fi.members);
                let lattice_normal = check_normal_fixed(&a.amb, &a.fi, nucleus).is_none();
                iff("space vs lattice", space.is_normal(), lattice_normal)
            },
        ));
    }

    out.push(entry(
        "normaleq",
        "Spec(M) is normal exactly when the frame SP(M) is normal",
        vec![("projective in sigma[M] (proxy)", proj)],
        || iff("Spec vs SP", ctx.spec_space.is_normal(), ctx.sp_normal),
    ));

    out.push(entry(
        "NormaleqMax",
        "mx(M) is normal exactly when the frame SPm(M) is normal",
        vec![("projective in sigma[M] (proxy)", proj)],
        || iff("mx vs SPm", ctx.mx_space.is_normal(), ctx.spm_normal),
    ));

    out.push(entry(
        "norstr",
        "a normal Lambda^fi gives a strongly harmonic module; equivalent when Lambda^fi is compact",
        vec![("projective in sigma[M] (proxy)", proj)],
        || iff("normal vs strongly harmonic", ctx.fi_normal, ctx.sh),
    ));

    out.push(entry(
        "theoremsth",
        "strongly harmonic => Lambda^fi normal => SP normal <=> Spec normal; all equivalent when the maximal fully invariant submodules meet in zero",
        vec![("projective in sigma[M] (proxy)", proj)],
        || {
            let (ca, cb, cc, cd) = (ctx.sh, ctx.fi_normal, ctx.sp_normal, ctx.spec_space.is_normal());
            implies("(a)=>(b)", ca, cb)
                .or_else(|| implies("(b)=>(c)", cb, cc))
                .or_else(|| iff("(c)<=>(d)", cc, cd))
                .or_else(|| {
                    (a.hypotheses.mx_fi_meet_zero && (ca != cb || cb != cc))
                        .then(|| "equivalence fails under zero radical".into())
                })
        },
    ));

    out.push(entry(
        "retractnormal",
        "a compact Hausdorff mx(M) that is a retract of Spec(M) forces Spec(M) to be normal",
        vec![
            ("mx(M) Hausdorff", ctx.met(ctx.mx_space.is_hausdorff())),
            (
                "mx(M) is a retract of Spec(M)",
                match ctx.mx_retract {
                    Some(r) => ctx.met(r),
                    None => HypothesisStatus::Undetermined,
                },
            ),
        ],
        || (!ctx.spec_space.is_normal()).then(|| "Spec(M) is not normal".into()),
    ));

    out.push(entry(
        "etacontinua",
        "eta from LgSpec to Spec is surjective, continuous, closed, and carries basic hulls to basic hulls",
        vec![],
        || {
            let rep = super::maps::eta_spectral_map(a);
            if !rep.well_defined {
                return Some("eta leaves Spec(M)".into());
            }
            if !rep.predicates.surjective {
                return Some("eta is not surjective".into());
            }
            if !rep.predicates.continuous {
                return Some("eta is not continuous".into());
            }
            if !rep.predicates.closed {
                return Some("eta is not closed".into());
            }
            (rep.basis_image_identity != Some(true)).then(|| "basic hull identity fails".into())
        },
    ));

    let _ = limits;
}

fn harmonic_entries(ctx: &Ctx, out: &mut Vec<AuditEntry>) {
    let a = ctx.a;
    let proj = a.hypotheses.projective_sigma;
    let progen = a.hypotheses.self_progenerator;

    out.push(entry(
        "STRONGLY",
        "the three phrasings of strong harmonicity (fully invariant separators, arbitrary separators, element separators) agree",
        vec![("associative product", ctx.met(a.hypotheses.product_associative))],
        || {
            let full_sep = separation_over(a, &a.mx_fi, &a.full.members);
            let elem_sep = element_separation(a, &a.mx_fi);
            iff("(a)<=>(b)", ctx.sh, full_sep).or_else(|| iff("(a)<=>(c)", ctx.sh, elem_sep))
        },
    ));

    out.push(entry(
        "stmaxhausdorf",
        "strongly harmonic makes mx^fi Hausdorff; the converse holds when the coatoms meet in zero",
        vec![("projective in sigma[M] (proxy)", proj)],
        || {
            implies("SH => Hausdorff", ctx.sh, ctx.mx_fi_space.is_hausdorff()).or_else(|| {
                (a.hypotheses.mx_fi_meet_zero)
                    .then(|| iff("converse", ctx.mx_fi_space.is_hausdorff(), ctx.sh))
                    .flatten()
            })
        },
    ));

    out.push(entry(
        "kohmodules",
        "strongly harmonic with compact mx^fi gives a normal mx^fi",
        vec![
            ("projective in sigma[M] (proxy)", proj),
            ("strongly harmonic", ctx.met(ctx.sh)),
        ],
        || (!ctx.mx_fi_space.is_normal()).then(|| "mx^fi is not normal".into()),
    ));

    out.push(entry(
        "compatomic",
        "Lambda^fi compact iff mx^fi compact and Lambda^fi coatomic; finitely this is coatomicity",
        vec![("projective in sigma[M] (proxy)", proj)],
        || (!a.hypotheses.coatomic_fi).then(|| "Lambda^fi is not coatomic".into()),
    ));

    out.push(entry(
        "ler1",
        "below a coatom, Ler(coatom) <= N != M forces N <= coatom; and M = N + Ann^r(L) forces L <= Ler(N)",
        vec![
            ("projective in sigma[M] (proxy)", proj),
            ("Lambda^fi coatomic", ctx.met(a.hypotheses.coatomic_fi)),
            ("strongly harmonic", ctx.met(ctx.sh)),
        ],
        || {
            for &mm in &a.mx_fi {
                let lm = ler_set(a, mm);
                for &n in &a.fi.members {
                    if n != a.lattice.top()
                        && lm.is_subset(&a.lattice.members[n])
                        && !a.lattice.le(n, mm)
                    {
                        return Some(format!(
                            "(a) fails at coatom {}, N = {}",
                            a.lattice.member_label(mm),
                            a.lattice.member_label(n)
                        ));
                    }
                }
            }
            for (pos, &n) in a.fi.members.iter().enumerate() {
                for &l in &a.fi.members {
                    let Annihilator::Exists(annr) = a.ann_right(l) else {
                        continue;
                    };
                    if a.lattice.join[n][annr] == a.lattice.top()
                        && !a.lattice.members[l].is_subset(&a.ler_sets[pos])
                    {
                        return Some(format!(
                            "(b) fails at N = {}, L = {}",
                            a.lattice.member_label(n),
                            a.lattice.member_label(l)
                        ));
                    }
                }
            }
            None
        },
    ));

    out.push(entry(
        "dreamtheo",
        "the five characterizations of strong harmonicity (normal idiom, Ler reflection at coatoms, sum preservation, join covering) agree",
        vec![("self-progenerator (proxy)", progen)],
        || {
            let ca = ctx.sh;
            let cb = ctx.fi_normal;
            let cc = a.fi.members.iter().enumerate().all(|(pos, &n)| {
                a.mx_fi.iter().all(|&mm| {
                    a.ler_sets[pos].is_subset(&a.lattice.members[mm]) == a.lattice.le(n, mm)
                })
            });
            let cd = a.fi.members.iter().all(|&n| {
                a.fi.members.iter().all(|&l| {
                    let join = a.lattice.join[n][l];
                    match (a.ler_of(n), a.ler_of(l), a.ler_of(join)) {
                        (Some(ln), Some(ll), Some(lj)) => a.lattice.join[ln][ll] == lj,
                        _ => false,
                    }
                })
            });
            let ce = a.fi.members.iter().enumerate().all(|(pn, &n)| {
                a.fi.members.iter().enumerate().all(|(pl, &l)| {
                    a.lattice.join[n][l] != a.lattice.top() || {
                        let mut u = a.ler_sets[pn].clone();
                        u.union_with(&a.ler_sets[pl]);
                        match (a.ler_of(n), a.ler_of(l)) {
                            (Some(ln), Some(ll)) => a.lattice.join[ln][ll] == a.lattice.top(),
                            _ => u == BitSet::full(a.module.size),
                        }
                    }
                })
            });
            let all = [ca, cb, cc, cd, ce];
            (!all.iter().all(|&x| x == ca))
                .then(|| format!("conditions disagree: {all:?}"))
        },
    ));

    out.push(entry(
        "ler2",
        "Ler is idempotent",
        vec![
            ("self-progenerator (proxy)", progen),
            ("strongly harmonic", ctx.met(ctx.sh)),
        ],
        || {
            for (pos, &n) in a.fi.members.iter().enumerate() {
                let Some(ln) = a.ler[pos] else {
                    return Some(format!(
                        "Ler({}) is not a submodule",
                        a.lattice.member_label(n)
                    ));
                };
                if ler_set(a, ln) != a.ler_sets[pos] {
                    return Some(format!("Ler^2 != Ler at {}", a.lattice.member_label(n)));
                }
            }
            None
        },
    ));

    out.push(entry(
        "homeo",
        "Theta: mx^fi -> pt(Psi) by Ler is a homeomorphism",
        vec![
            ("self-progenerator (proxy)", progen),
            ("strongly harmonic", ctx.met(ctx.sh)),
        ],
        || match super::maps::theta_homeomorphism(a) {
            Ok(rep) if rep.homeomorphism => None,
            Ok(rep) => Some(format!(
                "Theta fails: well_defined={}, predicates={:?}",
                rep.well_defined, rep.predicates
            )),
            Err(e) => Some(format!("Psi is not a lattice of sets: {e}")),
        },
    ));

    out.push(entry(
        "dreamcon",
        "Psi(M) is a regular frame, by the pseudocomplement route and by the r-operator route",
        vec![
            ("self-progenerator (proxy)", progen),
            ("strongly harmonic", ctx.met(ctx.sh)),
        ],
        || {
            let frame = match psi_frame(a) {
                Ok(f) => f,
                Err(e) => return Some(format!("Psi is not a lattice of sets: {e}")),
            };
            if !frame.is_regular() {
                return Some("pseudocomplement route: Psi is not regular".into());
            }
            // r(N) = sum of K in Psi with N + K^r = M, K^r = Ler(Ann(K))
            for &n in &a.psi {
                let r_n = a.lattice.join_all(a.psi.iter().copied().filter(|&k| {
                    let kr = a
                        .lattice
                        .index_of(&ler_set(a, a.ann_left(k)))
                        .unwrap_or(a.lattice.bottom());
                    a.lattice.join[n][kr] == a.lattice.top()
                }));
                if r_n != n {
                    return Some(format!(
                        "r-operator route: r({}) = {}",
                        a.lattice.member_label(n),
                        a.lattice.member_label(r_n)
                    ));
                }
            }
            None
        },
    ));

    out.push(entry(
        "corhomeo",
        "Psi(M) is isomorphic to the open-set frame of mx^fi",
        vec![
            ("self-progenerator (proxy)", progen),
            ("strongly harmonic", ctx.met(ctx.sh)),
        ],
        || {
            let frame = match psi_frame(a) {
                Ok(f) => f,
                Err(e) => return Some(format!("Psi is not a lattice of sets: {e}")),
            };
            let opens = match ctx.mx_fi_space.open_set_frame() {
                Ok(f) => f,
                Err(e) => return Some(format!("open sets fail to form a frame: {e}")),
            };
            (!frames_isomorphic(&frame, &opens)).then(|| "frames are not isomorphic".into())
        },
    ));

    out.push(entry(
        "propertyeta",
        "the greatest fully invariant submodule of a relative prime is a prime of Lambda^fi",
        vec![],
        || {
            a.lgspec
                .iter()
                .find(|&&q| !a.spec.contains(&a.eta(q)))
                .map(|&q| format!("eta({}) escapes Spec", a.lattice.member_label(q)))
        },
    ));

    out.push(entry(
        "Mf",
        "preimages of a maximal submodule under endomorphisms not landing inside it are maximal",
        vec![],
        || {
            for &mm in &a.mx {
                let mset = &a.lattice.members[mm];
                for f in a.lattice.endos.iter() {
                    let img = f.image(a.module.size);
                    if img.is_subset(mset) {
                        continue;
                    }
                    let mut pre = BitSet::new(a.module.size);
                    for x in 0..a.module.size {
                        if mset.contains(f.apply(x)) {
                            pre.insert(x);
                        }
                    }
                    let idx = a.lattice.index_of(&pre);
                    if idx.is_none_or(|i| !a.mx.contains(&i)) {
                        return Some(format!(
                            "preimage of {} is not maximal",
                            a.lattice.member_label(mm)
                        ));
                    }
                }
            }
            None
        },
    ));
}

fn gelfand_entries(ctx: &Ctx, out: &mut Vec<AuditEntry>) {
    let a = ctx.a;
    let proj = a.hypotheses.projective_sigma;
    let progen = a.hypotheses.self_progenerator;

    out.push(entry(
        "Gelfand (equivalent forms)",
        "the three phrasings of the Gelfand condition agree",
        vec![("associative product", ctx.met(a.hypotheses.product_associative))],
        || {
            let full_sep = separation_over(a, &a.mx, &a.full.members);
            let elem_sep = element_separation(a, &a.mx);
            iff("(a)<=>(b)", ctx.gelfand, full_sep)
                .or_else(|| iff("(a)<=>(c)", ctx.gelfand, elem_sep))
        },
    ));

    out.push(entry(
        "Gispm",
        "over a Gelfand module no prime sits under two distinct maximals",
        vec![("Gelfand", ctx.met(ctx.gelfand))],
        || {
            for &p in &a.spec {
                let over: Vec<usize> = a.mx.iter().copied().filter(|&m| a.lattice.le(p, m)).collect();
                if over.len() > 1 {
                    return Some(format!(
                        "prime {} sits under {} maximals",
                        a.lattice.member_label(p),
                        over.len()
                    ));
                }
            }
            None
        },
    ));

    out.push(entry(
        "MaxGelfand",
        "a Gelfand module is quasi-duo",
        vec![("Gelfand", ctx.met(ctx.gelfand))],
        || (!ctx.quasi_duo).then(|| "a maximal submodule is not fully invariant".into()),
    ));

    out.push(entry(
        "gelcoa",
        "a Gelfand module projective in sigma[M] has coatomic Lambda^fi",
        vec![
            ("projective in sigma[M] (proxy)", proj),
            ("Gelfand", ctx.met(ctx.gelfand)),
        ],
        || (!a.hypotheses.coatomic_fi).then(|| "Lambda^fi is not coatomic".into()),
    ));

    out.push(entry(
        "Glemma10.11H",
        "for a quasi-duo module the maximal submodules are exactly the maximal fully invariant ones",
        vec![
            ("projective in sigma[M] (proxy)", proj),
            ("quasi-duo", ctx.met(ctx.quasi_duo)),
        ],
        || {
            let mut mx = a.mx.clone();
            let mut mx_fi = a.mx_fi.clone();
            mx.sort_unstable();
            mx_fi.sort_unstable();
            (mx != mx_fi).then(|| "mx(M) differs from mx^fi(M)".into())
        },
    ));

    out.push(entry(
        "SHDuoGelfand",
        "Gelfand is the same as strongly harmonic plus quasi-duo",
        vec![("projective in sigma[M] (proxy)", proj)],
        || iff("Gelfand vs SH+quasi-duo", ctx.gelfand, ctx.sh && ctx.quasi_duo),
    ));

    out.push(entry(
        "DreamcomG",
        "Ler and tau are mutually inverse frame isomorphisms between Psi(M) and SPm(M)",
        vec![
            ("self-progenerator (proxy)", progen),
            ("Gelfand", ctx.met(ctx.gelfand)),
        ],
        || {
            let rep = super::maps::psi_spm_isomorphism(a);
            (!rep.is_isomorphism).then(|| format!("isomorphism fails: {rep:?}"))
        },
    ));

    out.push(entry(
        "gamma (sum form)",
        "with Spec normal and mu(0) = 0, the sum form of gamma retracts Spec onto a Hausdorff mx^fi",
        vec![
            ("projective in sigma[M] (proxy)", proj),
            ("Spec(M) normal", ctx.met(ctx.spec_space.is_normal())),
            (
                "mu(0) = 0",
                ctx.met(a.mu.apply(a.lattice.bottom()) == a.lattice.bottom()),
            ),
        ],
        || {
            if !ctx.mx_fi_space.is_hausdorff() {
                return Some("mx^fi is not Hausdorff".into());
            }
            for &p in &a.spec {
                let g = a.lattice.join_all(
                    a.fi
                        .members
                        .iter()
                        .copied()
                        .filter(|&n| a.lattice.join[n][p] != a.lattice.top()),
                );
                if !a.mx_fi.contains(&g) {
                    return Some(format!(
                        "gamma({}) = {} is not a coatom of Lambda^fi",
                        a.lattice.member_label(p),
                        a.lattice.member_label(g)
                    ));
                }
                if a.mx_fi.contains(&p) && g != p {
                    return Some(format!("gamma moves the maximal {}", a.lattice.member_label(p)));
                }
            }
            None
        },
    ));

    out.push(entry(
        "DOS",
        "the Demarco-Orsatti-Simmons chain: Gelfand <=> quasi-duo strongly harmonic => quasi-duo pm Hausdorff => retract => normal, all equivalent when the maximals meet in zero",
        vec![("projective in sigma[M] (proxy)", proj)],
        || {
            let ca = ctx.gelfand;
            let cb = ctx.quasi_duo && ctx.sh;
            let cc = ctx.quasi_duo && ctx.pm && ctx.mx_space.is_hausdorff();
            let retract = ctx.mx_retract?;
            let cd = ctx.quasi_duo && ctx.mx_space.is_hausdorff() && retract;
            let ce = ctx.quasi_duo && ctx.spec_space.is_normal();
            iff("(a)<=>(b)", ca, cb)
                .or_else(|| implies("(b)=>(c)", cb, cc))
                .or_else(|| implies("(c)=>(d)", cc, cd))
                .or_else(|| implies("(d)=>(e)", cd, ce))
                .or_else(|| {
                    (a.hypotheses.mx_meet_zero
                        && [cb, cc, cd, ce].iter().any(|&x| x != ca))
                        .then(|| format!("equivalence fails: {:?}", [ca, cb, cc, cd, ce]))
                })
        },
    ));
}

/// Separation of every ordered pair of distinct members of `maximals` by
/// annihilating pairs drawn from `pool`.
fn separation_over(a: &ModuleAnalysis, maximals: &[usize], pool: &[usize]) -> bool {
    let lat = &a.lattice;
    maximals.iter().all(|&n| {
        maximals.iter().all(|&l| {
            n == l
                || pool.iter().any(|&np| {
                    !lat.le(np, n)
                        && pool
                            .iter()
                            .any(|&lp| !lat.le(lp, l) && lat.prod[lp][np] == lat.bottom())
                })
        })
    })
}

/// Element-level separation: a not in N, b not in L, a in Ann(Rb).
fn element_separation(a: &ModuleAnalysis, maximals: &[usize]) -> bool {
    maximals.iter().all(|&n| {
        maximals.iter().all(|&l| {
            n == l
                || (0..a.module.size).any(|x| {
                    !a.lattice.members[n].contains(x)
                        && (0..a.module.size).any(|y| {
                            !a.lattice.members[l].contains(y)
                                && a.lattice.members[a.ann_rm[y]].contains(x)
                        })
                })
        })
    })
}

fn derived_entries(
    a: &ModuleAnalysis,
    ctx: &Ctx,
    cache: &HomCache,
    limits: &Limits,
    out: &mut Vec<AuditEntry>,
) -> Result<()> {
    let qp = a.hypotheses.quasi_projective;
    let progen = a.hypotheses.self_progenerator;

    for &n in &a.fi.members {
        if n == a.lattice.top() {
            continue;
        }
        let label = a.lattice.member_label(n);
        let (q, proj_table) = quotient_with_projection(&a.module, &a.lattice.members[n])?;
        let qa = match ModuleAnalysis::compute(&q, cache, limits) {
            Ok(qa) => qa,
            Err(Error::SizeLimitExceeded { .. }) | Err(Error::SearchSpaceExceeded { .. }) => {
                out.push(entry(
                    format!("quotient audit [M/{label}]"),
                    "the quotient analysis stays within the configured caps",
                    vec![("within analysis caps", HypothesisStatus::Undetermined)],
                    || None,
                ));
                continue;
            }
            Err(e) => return Err(e),
        };
        let rho = ModuleMap { table: proj_table };

        out.push(entry(
            format!("lemmapp [M/{label}]"),
            "fully invariant submodules pull back along the projection, and push forward when M is quasi-projective",
            vec![("quasi-projective", qp)],
            || {
                for &l2 in &qa.fi.members {
                    let mut pre = BitSet::new(a.module.size);
                    for x in 0..a.module.size {
                        if qa.lattice.members[l2].contains(rho.apply(x)) {
                            pre.insert(x);
                        }
                    }
                    let up = a.lattice.index_of(&pre);
                    if up.is_none_or(|i| !a.fi.contains(i)) {
                        return Some("a fully invariant submodule fails to pull back".into());
                    }
                }
                for &l1 in &a.fi.members {
                    let img = rho.image_of(&a.lattice.members[l1], qa.module.size);
                    let down = qa.lattice.index_of(&img);
                    if down.is_none_or(|i| !qa.fi.contains(i)) {
                        return Some("a fully invariant submodule fails to push forward".into());
                    }
                }
                None
            },
        ));

        out.push(entry(
            format!("maxFI [M/{label}]"),
            "a fully invariant submodule is a coatom of Lambda^fi exactly when the quotient is FI-simple",
            vec![("quasi-projective", qp)],
            || iff("coatom vs FI-simple", a.mx_fi.contains(&n), qa.fi.members.len() == 2),
        ));

        let q_sh = is_strongly_harmonic(&qa).holds();
        out.push(entry(
            format!("summandfa [M/{label}]"),
            "quotients of a quasi-projective strongly harmonic module by fully invariant submodules are strongly harmonic",
            vec![
                ("quasi-projective", qp),
                ("strongly harmonic", HypothesisStatus::from_bool(ctx.sh)),
            ],
            || (!q_sh).then(|| "the quotient is not strongly harmonic".into()),
        ));

        let q_gel = is_gelfand(&qa).holds();
        out.push(entry(
            format!("summandgel [M/{label}]"),
            "quotients of a quasi-projective Gelfand module are Gelfand",
            vec![
                ("quasi-projective", qp),
                ("Gelfand", HypothesisStatus::from_bool(ctx.gelfand)),
            ],
            || (!q_gel).then(|| "the quotient is not Gelfand".into()),
        ));

        let morphism = induced_frame_morphism(a, &qa, &rho)?;
        out.push(entry(
            format!("roler [M/{label}]"),
            "the projection carries Ler below Ler of the image",
            vec![("projective in sigma[M] (proxy)", a.hypotheses.projective_sigma)],
            || {
                morphism
                    .roler_failure
                    .map(|l| format!("fails at L = {}", a.lattice.member_label(l)))
            },
        ));
        out.push(entry(
            format!("idmorf [M/{label}]"),
            "Ler after the projection preserves sums and finite intersections",
            vec![
                ("quasi-projective", qp),
                ("quotient strongly harmonic", HypothesisStatus::from_bool(q_sh)),
                ("quotient self-progenerator (proxy)", qa.hypotheses.self_progenerator),
            ],
            || {
                morphism
                    .sum_failure
                    .map(|(l, k)| format!("sum fails at ({l},{k})"))
                    .or_else(|| morphism.meet_failure.map(|(l, k)| format!("meet fails at ({l},{k})")))
            },
        ));
        out.push(entry(
            format!("framemor [M/{label}]"),
            "the projection restricts to a frame morphism Psi(M) -> Psi(M/N)",
            vec![
                ("self-progenerator (proxy)", progen),
                ("quotient strongly harmonic", HypothesisStatus::from_bool(q_sh)),
                ("quotient self-progenerator (proxy)", qa.hypotheses.self_progenerator),
            ],
            || {
                morphism
                    .psi_escape
                    .map(|l| format!("image of {} leaves Psi", a.lattice.member_label(l)))
                    .or_else(|| morphism.psi_failure.map(|(l, k)| format!("fails at ({l},{k})")))
            },
        ));
    }

    // direct square
    let square_fits = a
        .module
        .size
        .checked_mul(a.module.size)
        .is_some_and(|s| s <= limits.max_analysis_size);
    if !square_fits {
        out.push(entry(
            "direct square audit [M^(2)]",
            "the direct square stays within the configured caps",
            vec![("within analysis caps", HypothesisStatus::Undetermined)],
            || None,
        ));
        return Ok(());
    }
    let square = Arc::new(direct_power(&a.module, 2, limits)?);
    let sa = match ModuleAnalysis::compute(&square, cache, limits) {
        Ok(sa) => sa,
        Err(Error::SizeLimitExceeded { .. }) | Err(Error::SearchSpaceExceeded { .. }) => {
            out.push(entry(
                "direct square audit [M^(2)]",
                "the direct square stays within the configured caps",
                vec![("within analysis caps", HypothesisStatus::Undetermined)],
                || None,
            ));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let s_sh = is_strongly_harmonic(&sa).holds();

    out.push(entry(
        "isosumafi [M^(2)]",
        "N -> N^(2) is a lattice isomorphism Lambda^fi(M) -> Lambda^fi(M^(2)) restricting to a bijection on coatoms",
        vec![("quasi-projective", a.hypotheses.quasi_projective)],
        || {
            let size = a.module.size;
            let mut images = Vec::with_capacity(a.fi.members.len());
            for &n in &a.fi.members {
                let mut set = BitSet::new(square.size);
                for x in a.lattice.members[n].iter() {
                    for y in a.lattice.members[n].iter() {
                        set.insert(x * size + y);
                    }
                }
                match sa.lattice.index_of(&set) {
                    Some(i) if sa.fi.contains(i) => images.push(i),
                    _ => {
                        return Some(format!(
                            "{}^(2) is not fully invariant in the square",
                            a.lattice.member_label(n)
                        ))
                    }
                }
            }
            let mut sorted = images.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != a.fi.members.len() || sorted != sa.fi.members {
                return Some("the map is not a bijection onto Lambda^fi(M^(2))".into());
            }
            for (i, &n) in a.fi.members.iter().enumerate() {
                for (j, &l) in a.fi.members.iter().enumerate() {
                    if a.lattice.le(n, l) != sa.lattice.le(images[i], images[j]) {
                        return Some("the map does not preserve order".into());
                    }
                }
            }
            let coatom_images: Vec<usize> = a
                .fi
                .members
                .iter()
                .enumerate()
                .filter(|(_, n)| a.mx_fi.contains(n))
                .map(|(i, _)| images[i])
                .collect();
            let mut want = sa.mx_fi.clone();
            want.sort_unstable();
            let mut got = coatom_images;
            got.sort_unstable();
            (got != want).then(|| "the coatom bijection fails".into())
        },
    ));

    out.push(entry(
        "dirsumfa / shdirsum [M^(2)]",
        "a quasi-projective module is strongly harmonic exactly when its direct square is",
        vec![("quasi-projective", a.hypotheses.quasi_projective)],
        || iff("M vs M^(2)", ctx.sh, s_sh),
    ));

    Ok(())
}

/// Run every audit against one analysis. Derived-module audits construct the
/// quotients by fully invariant submodules and the direct square, one level
/// deep.
pub fn theorem_audit(
    a: &ModuleAnalysis,
    cache: &HomCache,
    limits: &Limits,
) -> Result<Vec<AuditEntry>> {
    theorem_audit_with(a, cache, limits, true)
}

/// As `theorem_audit`, with the derived-module audits optional.
pub fn theorem_audit_with(
    a: &ModuleAnalysis,
    cache: &HomCache,
    limits: &Limits,
    derived: bool,
) -> Result<Vec<AuditEntry>> {
    let ctx = Ctx::build(a, limits);
    let mut out = Vec::new();
    lemmap_entries(&ctx, &mut out);
    nucleus_entries(&ctx, &mut out);
    normality_entries(&ctx, limits, &mut out);
    harmonic_entries(&ctx, &mut out);
    gelfand_entries(&ctx, &mut out);
    if derived {
        derived_entries(a, &ctx, cache, limits, &mut out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::{FiniteModule, FiniteRing, ModuleSpec, RingSpec};

    fn audit(rspec: &RingSpec, mspec: &ModuleSpec) -> Vec<AuditEntry> {
        let limits = Limits::default();
        let r = Arc::new(FiniteRing::construct(rspec, &limits).unwrap());
        let m = FiniteModule::construct(&r, mspec, &limits).unwrap();
        let cache = HomCache::new();
        let a = ModuleAnalysis::compute(&m, &cache, &limits).unwrap();
        theorem_audit(&a, &cache, &limits).unwrap()
    }

    #[test]
    fn z12_audit_has_no_violations() {
        let entries = audit(&RingSpec::Zn { n: 12 }, &ModuleSpec::Regular);
        let violated: Vec<&AuditEntry> = entries.iter().filter(|e| e.violated()).collect();
        assert!(
            violated.is_empty(),
            "violations: {:?}",
            violated.iter().map(|e| &e.name).collect::<Vec<_>>()
        );
        // the Gelfand chain passes outright on a commutative instance
        for name in ["SHDuoGelfand", "DOS", "DreamcomG", "dreamtheo", "homeo"] {
            let e = entries.iter().find(|e| e.name == name).unwrap();
            assert_eq!(e.verdict, Verdict::Pass, "{name}");
        }
    }

    #[test]
    fn triangular_audit_flags_unmet_not_violated() {
        let entries = audit(
            &RingSpec::UpperTriangular {
                base: Box::new(RingSpec::Zn { n: 2 }),
                size: 2,
            },
            &ModuleSpec::Regular,
        );
        let violated: Vec<&AuditEntry> = entries.iter().filter(|e| e.violated()).collect();
        assert!(
            violated.is_empty(),
            "violations: {:?}",
            violated
                .iter()
                .map(|e| (&e.name, &e.verdict))
                .collect::<Vec<_>>()
        );
        // the module is not strongly harmonic, so the SH-hypothesis audits sit out
        let ler2 = entries.iter().find(|e| e.name == "ler2").unwrap();
        assert_eq!(ler2.verdict, Verdict::HypothesesUnmet);
        for name in ["maxfiinspec", "pronormal: S = Spec", "lemmapp [M/0]"] {
            let e = entries.iter().find(|e| e.name == *name).unwrap();
            assert_eq!(e.verdict, Verdict::Pass, "{name}");
        }
    }

    #[test]
    fn semisimple_sum_audit_passes_gelfand_chain() {
        let entries = audit(
            &RingSpec::Zn { n: 6 },
            &ModuleSpec::Abelian {
                invariants: vec![2, 3],
            },
        );
        assert!(entries.iter().all(|e| !e.violated()));
        for name in ["SHDuoGelfand", "DOS"] {
            let e = entries.iter().find(|e| e.name == name).unwrap();
            assert_eq!(e.verdict, Verdict::Pass, "{name}");
        }
    }
}
