/// Resource caps. Exhaustive enumeration is exponential in the worst case;
/// the caps turn a silent hang into an explicit error.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest module size admitted to a full analysis.
    pub max_analysis_size: usize,
    /// Largest ring/module size admitted to construction at all.
    pub max_construct_size: usize,
    /// Cap on candidate generator-image assignments during hom enumeration.
    pub max_hom_candidates: u64,
    /// Cap on brute-force searches (retractions, isomorphisms).
    pub max_search: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_analysis_size: 256,
            max_construct_size: 4096,
            max_hom_candidates: 10_000_000,
            max_search: 10_000_000,
        }
    }
}

impl Limits {
    /// Default limits with the analysis cap overridden by `IDIOMLAB_MAX_SIZE`
    /// when that variable is set.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Ok(v) = std::env::var("IDIOMLAB_MAX_SIZE") {
            if let Ok(n) = v.trim().parse::<usize>() {
                l.max_analysis_size = n;
            }
        }
        l
    }
}
