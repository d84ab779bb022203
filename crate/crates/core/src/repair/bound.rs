use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::zigzag::CodeParams;

fn ratio_str<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Lower bound on parity-repair disk I/O against what the constructed repair
/// matrices achieve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IoBoundReport {
    pub k: usize,
    pub symbols_per_node: usize,
    /// `kN + N - k`.
    pub achieved_io: i64,
    /// `kN + (k-3)N / (2(k-1))`, exact.
    #[serde(serialize_with = "ratio_str")]
    pub lower_bound: Ratio<i64>,
    /// I/O is integral, so this is what `achieved_io` is compared against.
    pub lower_bound_ceil: i64,
    /// `achieved_io - lower_bound`.
    #[serde(serialize_with = "ratio_str")]
    pub gap: Ratio<i64>,
    /// Nonzero-column floor for each repair matrix, `N - N/(2(k-1))`.
    #[serde(serialize_with = "ratio_str")]
    pub per_matrix_bound: Ratio<i64>,
    /// Set for `k = 2`, where the `(k-3)` correction term is negative and the
    /// bound falls below `kN`. The bound is still reported unclamped.
    pub negative_correction: bool,
}

impl IoBoundReport {
    pub fn achieved_meets_bound(&self) -> bool {
        self.achieved_io >= self.lower_bound_ceil
    }
}

pub fn io_lower_bound(k: usize) -> Result<IoBoundReport> {
    let params = CodeParams::new(k)?;
    let n = params.symbols_per_node() as i64;
    let k = k as i64;
    let correction = Ratio::new((k - 3) * n, 2 * (k - 1));
    let lower_bound = Ratio::from_integer(k * n) + correction;
    let achieved_io = params.parity_repair_io() as i64;
    Ok(IoBoundReport {
        k: k as usize,
        symbols_per_node: n as usize,
        achieved_io,
        lower_bound,
        lower_bound_ceil: lower_bound.ceil().to_integer(),
        gap: Ratio::from_integer(achieved_io) - lower_bound,
        per_matrix_bound: Ratio::from_integer(n) - Ratio::new(n, 2 * (k - 1)),
        negative_correction: k < 3,
    })
}
