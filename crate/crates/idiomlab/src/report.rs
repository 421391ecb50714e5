//! Deterministic JSON reports and DOT exports for one analyzed instance.

use serde::{Deserialize, Serialize};

use crate::catalog::InstanceSpec;
use crate::theory::{
    AuditEntry, ClassVerdict, Classification, HypothesisStatus, ModuleAnalysis, Verdict,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub instance: String,
    pub ring: String,
    pub module: String,
    pub module_size: usize,
    pub hypotheses: HypothesesReport,
    pub lattice: LatticeSummary,
    pub spectra: SpectraSummary,
    pub frames: FrameSummary,
    pub classes: ClassSummary,
    pub audit: Vec<AuditEntryReport>,
    pub violated: usize,
    pub passed: usize,
    pub hypotheses_unmet: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesesReport {
    pub projective_sigma: String,
    pub self_progenerator: String,
    pub quasi_projective: String,
    pub product_associative: bool,
    pub star_full: bool,
    pub star_fi: bool,
    pub p_condition_full: bool,
    pub p_condition_fi: bool,
    pub coatomic_fi: bool,
    pub mx_meet_zero: bool,
    pub mx_fi_meet_zero: bool,
    pub self_generator: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub full_size: usize,
    pub fi_size: usize,
    pub coatoms: Vec<String>,
    pub fi_coatoms: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectraSummary {
    pub lgspec: Vec<String>,
    pub spec: Vec<String>,
    pub mx: Vec<String>,
    pub mx_fi: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrameSummary {
    pub sp: Vec<String>,
    pub spm: Vec<String>,
    pub psi: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassSummary {
    pub strongly_harmonic: VerdictReport,
    pub gelfand: VerdictReport,
    pub quasi_duo: VerdictReport,
    pub pm: VerdictReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerdictReport {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditEntryReport {
    pub name: String,
    pub statement: String,
    pub hypotheses: Vec<(String, String)>,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

fn status_str(s: HypothesisStatus) -> String {
    match s {
        HypothesisStatus::Met => "met",
        HypothesisStatus::Unmet => "unmet",
        HypothesisStatus::AssumedByProxy => "assumed-by-proxy",
        HypothesisStatus::Undetermined => "undetermined",
    }
    .to_string()
}

fn verdict_report(a: &ModuleAnalysis, v: &ClassVerdict) -> VerdictReport {
    match v {
        ClassVerdict::Holds => VerdictReport {
            holds: true,
            witness: Vec::new(),
        },
        ClassVerdict::Fails { witness } => VerdictReport {
            holds: false,
            witness: witness
                .iter()
                .map(|&i| a.lattice.member_label(i))
                .collect(),
        },
    }
}

fn labels(a: &ModuleAnalysis, ix: &[usize]) -> Vec<String> {
    ix.iter().map(|&i| a.lattice.member_label(i)).collect()
}

pub fn build_report(
    spec: &InstanceSpec,
    a: &ModuleAnalysis,
    classes: &Classification,
    audit: &[AuditEntry],
) -> Report {
    let h = &a.hypotheses;
    let audit_reports: Vec<AuditEntryReport> = audit
        .iter()
        .map(|e| AuditEntryReport {
            name: e.name.clone(),
            statement: e.statement.to_string(),
            hypotheses: e
                .hypotheses
                .iter()
                .map(|(n, s)| (n.clone(), status_str(*s)))
                .collect(),
            verdict: match &e.verdict {
                Verdict::Pass => "pass".to_string(),
                Verdict::HypothesesUnmet => "hypotheses-unmet".to_string(),
                Verdict::Violated { .. } => "violated".to_string(),
            },
            witness: match &e.verdict {
                Verdict::Violated { witness } => Some(witness.clone()),
                _ => None,
            },
        })
        .collect();
    Report {
        schema_version: SCHEMA_VERSION,
        instance: spec.display_name(),
        ring: a.module.ring.name.clone(),
        module: a.module.name.clone(),
        module_size: a.module.size,
        hypotheses: HypothesesReport {
            projective_sigma: status_str(h.projective_sigma),
            self_progenerator: status_str(h.self_progenerator),
            quasi_projective: status_str(h.quasi_projective),
            product_associative: h.product_associative,
            star_full: h.star_full,
            star_fi: h.star_fi,
            p_condition_full: h.p_condition_full,
            p_condition_fi: h.p_condition_fi,
            coatomic_fi: h.coatomic_fi,
            mx_meet_zero: h.mx_meet_zero,
            mx_fi_meet_zero: h.mx_fi_meet_zero,
            self_generator: h.self_generator,
        },
        lattice: LatticeSummary {
            full_size: a.full.members.len(),
            fi_size: a.fi.members.len(),
            coatoms: labels(a, &a.lattice.coatoms()),
            fi_coatoms: labels(a, &a.mx_fi),
        },
        spectra: SpectraSummary {
            lgspec: labels(a, &a.lgspec),
            spec: labels(a, &a.spec),
            mx: labels(a, &a.mx),
            mx_fi: labels(a, &a.mx_fi),
        },
        frames: FrameSummary {
            sp: labels(a, &a.sp),
            spm: labels(a, &a.spm),
            psi: labels(a, &a.psi),
        },
        classes: ClassSummary {
            strongly_harmonic: verdict_report(a, &classes.strongly_harmonic),
            gelfand: verdict_report(a, &classes.gelfand),
            quasi_duo: verdict_report(a, &classes.quasi_duo),
            pm: verdict_report(a, &classes.pm),
        },
        violated: audit_reports.iter().filter(|e| e.verdict == "violated").count(),
        passed: audit_reports.iter().filter(|e| e.verdict == "pass").count(),
        hypotheses_unmet: audit_reports
            .iter()
            .filter(|e| e.verdict == "hypotheses-unmet")
            .count(),
        audit: audit_reports,
    }
}

impl Report {
    pub fn clean(&self) -> bool {
        self.violated == 0
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram of a subset of the submodule lattice, edges drawn upward
/// along covers within the subset.
fn hasse_dot(a: &ModuleAnalysis, title: &str, members: &[usize]) -> String {
    let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n  node [shape=box];\n", dot_escape(title));
    for &m in members {
        out.push_str(&format!(
            "  n{} [label=\"{}\"];\n",
            m,
            dot_escape(&a.lattice.member_label(m))
        ));
    }
    for &x in members {
        for &y in members {
            if x != y
                && a.lattice.le(x, y)
                && !members
                    .iter()
                    .any(|&z| z != x && z != y && a.lattice.le(x, z) && a.lattice.le(z, y))
            {
                out.push_str(&format!("  n{x} -> n{y};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// A hull-kernel spectrum: point nodes plus one annotation per basis element
/// listing its open hull complement U(b).
fn space_dot(a: &ModuleAnalysis, title: &str, points: &[usize], basis: &[usize]) -> String {
    let mut out = format!("digraph \"{}\" {{\n  node [shape=ellipse];\n", dot_escape(title));
    for &p in points {
        out.push_str(&format!(
            "  p{} [label=\"{}\"];\n",
            p,
            dot_escape(&a.lattice.member_label(p))
        ));
    }
    for &b in basis {
        let open: Vec<String> = points
            .iter()
            .filter(|&&p| !a.lattice.le(b, p))
            .map(|&p| a.lattice.member_label(p))
            .collect();
        out.push_str(&format!(
            "  // U({}) = {{{}}}\n",
            a.lattice.member_label(b),
            open.join(", ")
        ));
    }
    out.push_str("}\n");
    out
}

/// All DOT exports for one analysis, as (file name, content) pairs.
pub fn export_dot(a: &ModuleAnalysis) -> Vec<(String, String)> {
    vec![
        (
            "lambda_fi.dot".to_string(),
            hasse_dot(a, "Lambda^fi(M)", &a.fi.members),
        ),
        ("psi.dot".to_string(), hasse_dot(a, "Psi(M)", &a.psi)),
        ("sp.dot".to_string(), hasse_dot(a, "SP(M)", &a.sp)),
        ("spm.dot".to_string(), hasse_dot(a, "SPm(M)", &a.spm)),
        (
            "spec.dot".to_string(),
            space_dot(a, "Spec(M)", &a.spec, &a.fi.members),
        ),
        (
            "mx_fi.dot".to_string(),
            space_dot(a, "mx^fi(M)", &a.mx_fi, &a.fi.members),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_get;
    use crate::finalg::{FiniteModule, FiniteRing, HomCache};
    use crate::limits::Limits;
    use crate::theory::{classify, theorem_audit};
    use std::sync::Arc;

    #[test]
    fn z12_report_is_deterministic_and_clean() {
        let spec = catalog_get("Z12").unwrap();
        let limits = Limits::default();
        let r = Arc::new(FiniteRing::construct(&spec.ring, &limits).unwrap());
        let m = FiniteModule::construct(&r, &spec.module, &limits).unwrap();
        let cache = HomCache::new();
        let a = ModuleAnalysis::compute(&m, &cache, &limits).unwrap();
        let classes = classify(&a);
        let audit = theorem_audit(&a, &cache, &limits).unwrap();
        let report = build_report(&spec, &a, &classes, &audit);
        assert!(report.clean());
        assert!(report.classes.gelfand.holds);
        assert_eq!(report.frames.psi.len(), 4);
        let again = build_report(&spec, &a, &classes, &audit);
        assert_eq!(report.to_json(), again.to_json());
        let dots = export_dot(&a);
        assert_eq!(dots.len(), 6);
        assert!(dots[0].1.contains("rankdir=BT"));
    }
}
