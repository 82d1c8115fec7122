/// Truncation policy for the infinite series inside the bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSpec {
    /// Target upper bound on the neglected tail.
    pub tail_tol: f64,
    /// Hard cap on evaluated terms. Hitting it leaves a larger reported bound.
    pub max_terms: usize,
}

impl Default for SeriesSpec {
    fn default() -> Self {
        Self {
            tail_tol: 1e-12,
            max_terms: 2_000_000,
        }
    }
}

impl SeriesSpec {
    pub fn with_tol(tail_tol: f64) -> Self {
        Self {
            tail_tol,
            ..Self::default()
        }
    }
}

/// A truncated series value together with a certified bound on what was
/// left out.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub truncation_bound: f64,
    pub terms: usize,
}

impl SeriesValue {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            truncation_bound: 0.0,
            terms: 0,
        }
    }

    /// `max(value, 0)`: capacity is nonnegative, so a negative lower-bound
    /// expression is replaced by the trivial bound.
    pub fn clamped(&self) -> f64 {
        self.value.max(0.0)
    }
}

/// Upper bound on `sum_{k > last} t_k` given the first omitted term and a
/// bound `ratio < 1` on `t_{k+1} / t_k` for every omitted `k`.
pub(crate) fn geometric_tail(first_omitted: f64, ratio: f64) -> f64 {
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    first_omitted / (1.0 - ratio)
}
