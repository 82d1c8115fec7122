//! Grid-seeded golden-section search for smooth scalar objectives on an
//! interval.

/// Golden-section settings for maximizing over a bounded interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarSearch {
    pub lo: f64,
    pub hi: f64,
    /// Number of equispaced seed points (including both ends).
    pub grid: usize,
    /// Stop once the bracket is narrower than this.
    pub tol: f64,
}

impl Default for ScalarSearch {
    fn default() -> Self {
        Self {
            lo: 1e-6,
            hi: 1.0 - 1e-6,
            grid: 64,
            tol: 1e-8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
    pub evals: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

impl ScalarSearch {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    /// Maximizes `f` on `[lo, hi]`.
    ///
    /// The best seed point and its neighbours form the initial bracket, so a
    /// multi-modal objective is handled as long as the grid resolves the
    /// basin of the global maximum.
    pub fn maximize<F: FnMut(f64) -> f64>(&self, mut f: F) -> Maximum {
        assert!(self.grid >= 3 && self.lo < self.hi);
        let step = (self.hi - self.lo) / (self.grid - 1) as f64;
        let point = |k: usize| {
            if k + 1 == self.grid {
                self.hi
            } else {
                self.lo + k as f64 * step
            }
        };
        let mut best = Maximum {
            arg: self.lo,
            value: f64::NEG_INFINITY,
            evals: 0,
        };
        let mut best_k = 0;
        for k in 0..self.grid {
            let x = point(k);
            let v = f(x);
            best.evals += 1;
            if v > best.value {
                best.value = v;
                best.arg = x;
                best_k = k;
            }
        }
        let mut a = point(best_k.saturating_sub(1));
        let mut b = point((best_k + 1).min(self.grid - 1));
        let mut x1 = b - INV_PHI * (b - a);
        let mut x2 = a + INV_PHI * (b - a);
        let mut f1 = f(x1);
        let mut f2 = f(x2);
        best.evals += 2;
        while b - a > self.tol {
            if f1 >= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - INV_PHI * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + INV_PHI * (b - a);
                f2 = f(x2);
            }
            best.evals += 1;
        }
        for (x, v) in [(x1, f1), (x2, f2)] {
            if v > best.value {
                best.value = v;
                best.arg = x;
            }
        }
        best
    }
}
