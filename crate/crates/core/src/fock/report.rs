use alloc::string::String;

/// Outcome of one numerical check. `pass` is `max_residual <= tolerance`;
/// informational reports document a finding and never fail a suite.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckReport {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub notes: String,
    #[cfg_attr(feature = "serde", serde(default))]
    pub informational: bool,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, max_residual: f64, tolerance: f64, notes: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            max_residual,
            tolerance,
            pass: max_residual <= tolerance,
            notes: notes.into(),
            informational: false,
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    /// True when this report should make a verification run fail.
    pub fn is_failure(&self) -> bool {
        !self.informational && !self.pass
    }

    /// Merges reports of the same check over many samples, keeping the worst
    /// residual.
    pub fn worst<'a>(name: impl Into<String>, tolerance: f64, reports: impl IntoIterator<Item = &'a CheckReport>, notes: impl Into<String>) -> Self {
        let mut worst = 0.0f64;
        let mut count = 0usize;
        for r in reports {
            count += 1;
            // NaN propagates as a failure
            if r.max_residual.is_nan() || r.max_residual > worst {
                worst = r.max_residual;
            }
        }
        let mut notes: String = notes.into();
        if !notes.is_empty() {
            notes.push_str("; ");
        }
        notes.push_str(&alloc::format!("{count} samples"));
        Self::new(name, worst, tolerance, notes)
    }
}
