use serde::Serialize;

/// One rank condition: `rank(matrix) == expected`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    pub label: String,
    pub expected: usize,
    pub actual: usize,
}

impl RankCheck {
    pub fn new(label: impl Into<String>, expected: usize, actual: usize) -> Self {
        RankCheck {
            label: label.into(),
            expected,
            actual,
        }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

pub(crate) fn all_passed(checks: &[RankCheck]) -> bool {
    checks.iter().all(RankCheck::passed)
}

pub(crate) fn violations(checks: &[RankCheck]) -> Vec<&RankCheck> {
    checks.iter().filter(|c| !c.passed()).collect()
}
