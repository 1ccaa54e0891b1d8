/// Size guards for closure computations.
///
/// State spaces and tensor products are computed by saturating a set of
/// generators under joins; on adversarial inputs these closures can be
/// exponentially large, so every closure loop checks against a ceiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of elements any single semimodule closure may reach.
    pub max_elements: usize,
    /// Maximum boundary-sequence length accepted by the general state
    /// space builder.
    pub max_sign_len: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 4096,
            max_sign_len: 6,
        }
    }
}

impl Limits {
    /// Default limits, with `max_elements` overridden by the
    /// `BOOLTOP_LIMIT` environment variable when it parses as a number.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Ok(s) = std::env::var("BOOLTOP_LIMIT") {
            if let Ok(n) = s.trim().parse::<usize>() {
                limits.max_elements = n;
            }
        }
        limits
    }
}
