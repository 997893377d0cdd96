/// Order-insensitive accumulator for probability mass.
///
/// Ordinary contributions go through Neumaier compensated summation; terms
/// below `1e-300` are folded into a running log-sum-exp so they are not lost
/// to subnormal rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassAccumulator {
    sum: f64,
    compensation: f64,
    log_tiny: f64,
}

const TINY: f64 = 1e-300;

impl Default for MassAccumulator {
    fn default() -> Self {
        Self {
            sum: 0.0,
            compensation: 0.0,
            log_tiny: f64::NEG_INFINITY,
        }
    }
}

impl MassAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `exp(log_p)`.
    pub fn add_log(&mut self, log_p: f64) {
        if log_p == f64::NEG_INFINITY {
            return;
        }
        let p = log_p.exp();
        if p < TINY {
            self.log_tiny = log_add_exp(self.log_tiny, log_p);
        } else {
            self.add(p);
        }
    }

    pub fn add(&mut self, p: f64) {
        let t = self.sum + p;
        if self.sum.abs() >= p.abs() {
            self.compensation += (self.sum - t) + p;
        } else {
            self.compensation += (p - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &MassAccumulator) {
        self.add(other.sum);
        self.add(other.compensation);
        self.log_tiny = log_add_exp(self.log_tiny, other.log_tiny);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation + self.log_tiny.exp()
    }
}

/// `ln(exp(a) + exp(b))`.
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}
