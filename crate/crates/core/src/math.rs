//! Small numeric helpers shared by the bound and oracle modules.

/// Binary entropy in bits, with `0 log 0 = 0`.
///
/// Arguments within 1e-12 outside `[0, 1]` are treated as the nearest
/// endpoint; anything further out is a caller bug.
pub fn h2(p: f64) -> f64 {
    debug_assert!(
        (-1e-12..=1.0 + 1e-12).contains(&p),
        "h2 argument {p} outside [0, 1]"
    );
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// `-q log2 q` with the `0 log 0 = 0` convention.
pub fn neg_xlog2x(q: f64) -> f64 {
    if q <= 0.0 {
        0.0
    } else {
        -q * q.log2()
    }
}

/// Shannon entropy (bits) of a list of probabilities. Masses need not sum to 1.
pub fn entropy_bits<I: IntoIterator<Item = f64>>(masses: I) -> f64 {
    masses.into_iter().map(neg_xlog2x).sum()
}

/// Exact binomial coefficient, `None` on u64 overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc * (n - j) / (j + 1) stays integral at every step.
        acc = acc * u128::from(n - j) / u128::from(j + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Table of `ln k!` for `k = 0..=n_max`.
#[derive(Clone, Debug)]
pub struct LnFactorial {
    table: Vec<f64>,
}

impl LnFactorial {
    pub fn new(n_max: usize) -> Self {
        let mut table = Vec::with_capacity(n_max + 1);
        table.push(0.0);
        let mut acc = 0.0;
        for k in 1..=n_max {
            acc += (k as f64).ln();
            table.push(acc);
        }
        Self { table }
    }

    pub fn n_max(&self) -> usize {
        self.table.len() - 1
    }

    pub fn ln_fact(&self, n: usize) -> f64 {
        self.table[n]
    }

    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        if k > n {
            return f64::NEG_INFINITY;
        }
        self.table[n] - self.table[k] - self.table[n - k]
    }
}
