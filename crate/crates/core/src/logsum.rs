//! Natural-log accumulation.

pub const LN_2: f64 = std::f64::consts::LN_2;

/// `ln(e^a + e^b)` without overflow; `-inf` is the additive identity.
pub fn ln_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Streaming log-sum-exp accumulator.
///
/// Keeps a running maximum and a sum scaled by it, rescaling when a larger
/// term arrives.
#[derive(Debug, Clone, Copy)]
pub struct LogSumExp {
    max: f64,
    scaled: f64,
}

impl Default for LogSumExp {
    fn default() -> Self {
        Self::new()
    }
}

impl LogSumExp {
    pub fn new() -> Self {
        LogSumExp {
            max: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }

    pub fn push(&mut self, ln_term: f64) {
        if ln_term == f64::NEG_INFINITY {
            return;
        }
        if ln_term <= self.max {
            self.scaled += (ln_term - self.max).exp();
        } else {
            self.scaled = self.scaled * (self.max - ln_term).exp() + 1.0;
            self.max = ln_term;
        }
    }

    pub fn merge(&self, other: &LogSumExp) -> LogSumExp {
        let mut out = *self;
        if other.max == f64::NEG_INFINITY {
            return out;
        }
        if out.max == f64::NEG_INFINITY {
            return *other;
        }
        if other.max <= out.max {
            out.scaled += other.scaled * (other.max - out.max).exp();
        } else {
            out.scaled = out.scaled * (out.max - other.max).exp() + other.scaled;
            out.max = other.max;
        }
        out
    }

    /// Natural log of the accumulated sum (`-inf` when empty).
    pub fn ln(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.scaled.ln()
        }
    }
}

/// `ln C(n, k)` for small `k`, exact product form. `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (0..k)
        .map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}
