use crate::error::{Error, Result};

/// Probability mass function on a contiguous integer range `[lo, hi]`.
///
/// Mass outside the stored range is not represented point-wise; its total is
/// carried in `tail_mass` so that `sum(masses) + tail_mass == 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerPmf {
    lo: i64,
    masses: Vec<f64>,
    tail_mass: f64,
}

const NORMALIZATION_SLACK: f64 = 1e-10;

impl IntegerPmf {
    pub fn new(lo: i64, masses: Vec<f64>, tail_mass: f64) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::InvalidArgument("pmf support is empty".into()));
        }
        if masses.iter().any(|m| !m.is_finite() || *m < 0.0) || !(0.0..=1.0).contains(&tail_mass) {
            return Err(Error::InvalidArgument(
                "pmf masses must be finite and >= 0".into(),
            ));
        }
        let total: f64 = masses.iter().sum::<f64>() + tail_mass;
        if (total - 1.0).abs() > NORMALIZATION_SLACK {
            return Err(Error::InvalidArgument(format!(
                "pmf masses plus tail sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            lo,
            masses,
            tail_mass,
        })
    }

    /// Unit mass at `z`.
    pub fn point(z: i64) -> Self {
        Self {
            lo: z,
            masses: vec![1.0],
            tail_mass: 0.0,
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.masses.len() as i64 - 1
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Mass at `z`; zero outside the stored support.
    pub fn mass(&self, z: i64) -> f64 {
        if z < self.lo || z > self.hi() {
            return 0.0;
        }
        self.masses[(z - self.lo) as usize]
    }

    /// `(z, mass)` pairs over the stored support.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .map(move |(k, &m)| (self.lo + k as i64, m))
    }

    pub fn stored_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn entropy_bits(&self) -> f64 {
        crate::math::entropy_bits(self.masses.iter().copied())
    }

    /// Distribution of the sum of independent draws from `self` and `other`.
    ///
    /// The product of the stored parts is exact; everything else is
    /// accounted for as tail mass `1 - (1 - t_a)(1 - t_b)`.
    pub fn convolve(&self, other: &IntegerPmf) -> IntegerPmf {
        let mut out = vec![0.0; self.masses.len() + other.masses.len() - 1];
        for (a, &ma) in self.masses.iter().enumerate() {
            if ma == 0.0 {
                continue;
            }
            for (b, &mb) in other.masses.iter().enumerate() {
                out[a + b] += ma * mb;
            }
        }
        IntegerPmf {
            lo: self.lo + other.lo,
            masses: out,
            tail_mass: 1.0 - (1.0 - self.tail_mass) * (1.0 - other.tail_mass),
        }
    }

    /// Drops exact-zero masses at both ends of the support.
    pub fn trimmed(mut self) -> Self {
        while self.masses.len() > 1 && self.masses[self.masses.len() - 1] == 0.0 {
            self.masses.pop();
        }
        let lead = self
            .masses
            .iter()
            .take(self.masses.len() - 1)
            .take_while(|m| **m == 0.0)
            .count();
        if lead > 0 {
            self.masses.drain(..lead);
            self.lo += lead as i64;
        }
        self
    }
}
