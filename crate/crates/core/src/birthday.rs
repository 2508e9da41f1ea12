//! The noiseless special case: exact probabilities that no symbol is drawn
//! more than `L` times among `M` i.i.d. draws, for arbitrary and product
//! distributions.
//!
//! The engine is the scaled exponential-generating-function recursion
//! `ĉ[m] = m!·[x^m] ∏_x Σ_{j≤L} (P(x)x)^j/j!`. Every scaled coefficient is a
//! probability, so all intermediates stay in `[0, 1]`. Symbols of equal
//! probability are grouped into classes; a class with multiplicity at least
//! `M` is expanded with the power recurrence for `g^N` (all terms
//! nonnegative in that regime), smaller classes go symbol by symbol.

use serde::Serialize;

use crate::budget::Budget;
use crate::dist::Dist;
use crate::measures::renyi_entropy;
use crate::{Error, Result};

/// Draw `M` symbols i.i.d. from `dist`; ask for no symbol more than `L` times.
#[derive(Debug, Clone)]
pub struct OccupancyInstance {
    pub dist: Dist,
    pub draws: u64,
    pub max_mult: u32,
}

impl OccupancyInstance {
    pub fn new(dist: Dist, draws: u64, max_mult: u32) -> Result<Self> {
        if draws == 0 || max_mult == 0 {
            return Err(Error::InvalidArgument(
                "draws and max multiplicity must be at least 1".into(),
            ));
        }
        Ok(OccupancyInstance {
            dist,
            draws,
            max_mult,
        })
    }
}

/// `count` symbols, each with probability `prob`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct ProbClass {
    prob: f64,
    count: f64,
}

fn classes_of(dist: &Dist) -> Vec<ProbClass> {
    let mut probs: Vec<f64> = dist.support().iter().map(|&x| dist.prob(x)).collect();
    probs.sort_by(|a, b| b.total_cmp(a));
    let mut out: Vec<ProbClass> = Vec::new();
    for p in probs {
        match out.last_mut() {
            Some(c) if c.prob == p => c.count += 1.0,
            _ => out.push(ProbClass {
                prob: p,
                count: 1.0,
            }),
        }
    }
    out
}

fn ln_factorial(k: u32) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// Classes of the i.i.d. product `Pⁿ`: one per composition of `n` over the
/// distinct probability values of `P`.
fn product_classes(dist: &Dist, n: u32) -> Vec<ProbClass> {
    let base = classes_of(dist);
    let r = base.len();
    let mut out = Vec::new();
    let mut counts = vec![0u32; r];
    fn walk(
        base: &[ProbClass],
        idx: usize,
        left: u32,
        n: u32,
        counts: &mut [u32],
        out: &mut Vec<ProbClass>,
    ) {
        if idx + 1 == base.len() {
            counts[idx] = left;
            let mut ln_prob = 0.0;
            let mut ln_count = ln_factorial(n);
            for (c, k) in base.iter().zip(counts.iter()) {
                ln_prob += *k as f64 * c.prob.ln();
                ln_count += *k as f64 * c.count.ln() - ln_factorial(*k);
            }
            out.push(ProbClass {
                prob: ln_prob.exp(),
                count: ln_count.exp().round(),
            });
            return;
        }
        for k in 0..=left {
            counts[idx] = k;
            walk(base, idx + 1, left - k, n, counts, out);
        }
    }
    walk(&base, 0, n, n, &mut counts, &mut out);
    out.retain(|c| c.prob > 0.0 && c.count > 0.0);
    out.sort_by(|a, b| b.prob.total_cmp(&a.prob));
    let mut merged: Vec<ProbClass> = Vec::with_capacity(out.len());
    for c in out {
        match merged.last_mut() {
            Some(m) if m.prob == c.prob => m.count += c.count,
            _ => merged.push(c),
        }
    }
    merged
}

/// Coefficient `p^k/k! · (m-1)!/(m-k)!` of the power recurrence.
fn power_coeff(p: f64, m: u64, k: u32) -> f64 {
    let mut c = 1.0;
    for i in 1..=k as u64 {
        c *= p / i as f64;
        if i < k as u64 {
            c *= (m - i) as f64;
        }
    }
    c
}

/// Scaled coefficients `b[0..=len]` of `(Σ_{j≤L} (px)^j/j!)^N` via
/// `b_m = Σ_k ((N+1)k - m)·p^k/k!·(m-1)!/(m-k)!·b_{m-k}`. Only used with
/// `N ≥ len`, where every factor is positive.
fn power_class(class: ProbClass, len: u64, max_mult: u32) -> Vec<f64> {
    let mut b = vec![0.0; len as usize + 1];
    b[0] = 1.0;
    for m in 1..=len {
        let mut acc = 0.0;
        for k in 1..=(max_mult as u64).min(m) {
            let weight = (class.count + 1.0) * k as f64 - m as f64;
            acc += weight * power_coeff(class.prob, m, k as u32) * b[(m - k) as usize];
        }
        b[m as usize] = acc;
    }
    b
}

/// Final coefficient of a single large class with an `L`-term window.
fn power_class_last(class: ProbClass, target: u64, max_mult: u32) -> f64 {
    let window = max_mult as usize + 1;
    let mut ring = vec![0.0; window];
    ring[0] = 1.0;
    let mut zero_run = 0;
    for m in 1..=target {
        let mut acc = 0.0;
        for k in 1..=(max_mult as u64).min(m) {
            let weight = (class.count + 1.0) * k as f64 - m as f64;
            acc +=
                weight * power_coeff(class.prob, m, k as u32) * ring[((m - k) as usize) % window];
        }
        ring[m as usize % window] = acc;
        zero_run = if acc == 0.0 { zero_run + 1 } else { 0 };
        if zero_run >= max_mult {
            return 0.0;
        }
    }
    ring[target as usize % window]
}

/// Multiplies the scaled series `c` (current degree `deg`) by one symbol's
/// factor `Σ_{j≤L} (px)^j/j!`, in place.
fn absorb_symbol(c: &mut [f64], deg: usize, p: f64, max_mult: u32) -> usize {
    let top = c.len() - 1;
    let new_deg = (deg + max_mult as usize).min(top);
    for m in (1..=new_deg).rev() {
        let mut acc = c[m];
        let mut factor = 1.0;
        for j in 1..=(max_mult as usize).min(m) {
            // C(m, j) p^j built incrementally
            factor *= (m - j + 1) as f64 * p / j as f64;
            acc += factor * c[m - j];
        }
        c[m] = acc;
    }
    new_deg
}

/// Binomial convolution of two scaled series, truncated to `len`.
fn convolve(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut ln_fact = vec![0.0f64; len + 1];
    for i in 1..=len {
        ln_fact[i] = ln_fact[i - 1] + (i as f64).ln();
    }
    let ln_a: Vec<f64> = a.iter().map(|v| v.ln()).collect();
    let ln_b: Vec<f64> = b.iter().map(|v| v.ln()).collect();
    let mut out = vec![0.0; len + 1];
    for (m, slot) in out.iter_mut().enumerate() {
        let lo = m.saturating_sub(b.len() - 1);
        let hi = m.min(a.len() - 1);
        let mut acc = 0.0;
        for j in lo..=hi {
            if a[j] == 0.0 || b[m - j] == 0.0 {
                continue;
            }
            acc += (ln_fact[m] - ln_fact[j] - ln_fact[m - j] + ln_a[j] + ln_b[m - j]).exp();
        }
        *slot = acc.min(1.0);
    }
    out
}

fn occupancy_from_classes(
    classes: &[ProbClass],
    draws: u64,
    max_mult: u32,
    budget: &Budget,
) -> Result<f64> {
    if draws <= max_mult as u64 {
        return Ok(1.0);
    }
    let capacity: f64 = classes.iter().map(|c| c.count).sum::<f64>() * max_mult as f64;
    if capacity < draws as f64 {
        return Ok(0.0);
    }
    let m = draws as u128;
    let l = max_mult as u128;
    let (large, small): (Vec<ProbClass>, Vec<ProbClass>) =
        classes.iter().partition(|c| c.count >= draws as f64);
    let small_symbols: u128 = small.iter().map(|c| c.count as u128).sum();
    let mut cost = small_symbols * m * l + large.len() as u128 * m * l;
    if large.len() > 1 {
        cost += (large.len() as u128 - 1) * m * m / 2;
    }
    budget.check("occupancy dynamic program cells", cost, budget.dp_cells)?;

    if small.is_empty() && large.len() == 1 {
        return Ok(finish(power_class_last(large[0], draws, max_mult)));
    }
    let len = draws as usize;
    let mut series: Option<Vec<f64>> = None;
    for class in &large {
        let poly = power_class(*class, draws, max_mult);
        series = Some(match series {
            None => poly,
            Some(acc) => convolve(&acc, &poly, len),
        });
    }
    let (mut c, mut deg) = match series {
        Some(s) => {
            let deg = s.iter().rposition(|&v| v != 0.0).unwrap_or(0);
            (s, deg)
        }
        None => {
            let mut s = vec![0.0; len + 1];
            s[0] = 1.0;
            (s, 0)
        }
    };
    for class in &small {
        for _ in 0..class.count as u64 {
            deg = absorb_symbol(&mut c, deg, class.prob, max_mult);
        }
    }
    Ok(finish(c[len]))
}

/// Clamps to `[0, 1]`; subnormal results carry no reliable digits and
/// become 0.
fn finish(p: f64) -> f64 {
    if p < f64::MIN_POSITIVE {
        0.0
    } else {
        p.min(1.0)
    }
}

/// Probability that no symbol appears more than `L` times among `M` draws.
pub fn exact_no_multicollision_prob(inst: &OccupancyInstance, budget: &Budget) -> Result<f64> {
    occupancy_from_classes(&classes_of(&inst.dist), inst.draws, inst.max_mult, budget)
}

/// Same probability for draws from the i.i.d. product `Pⁿ`, using the
/// type-class compression of the `|supp P|ⁿ` alphabet.
pub fn product_no_multicollision_prob(
    dist: &Dist,
    n: u32,
    draws: u64,
    max_mult: u32,
    budget: &Budget,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "blocklength must be at least 1".into(),
        ));
    }
    if draws == 0 || max_mult == 0 {
        return Err(Error::InvalidArgument(
            "draws and max multiplicity must be at least 1".into(),
        ));
    }
    occupancy_from_classes(&product_classes(dist, n), draws, max_mult, budget)
}

/// `⌊2^{nR}⌋` when it fits in a u64.
pub fn messages_at_rate(n: u32, rate: f64) -> Option<u64> {
    let exponent = n as f64 * rate;
    if !(0.0..63.0).contains(&exponent) {
        return None;
    }
    Some(exponent.exp2().floor() as u64)
}

/// Growth of the noiseless birthday quantity along `M_n = ⌊2^{nR}⌋`.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdPoint {
    pub n: u32,
    /// `M_n`, absent when it exceeds u64.
    pub messages: Option<u64>,
    pub log2_messages: f64,
    /// `(L+1) log₂ M_n - L·n·H_{L+1}(P)`.
    pub diagnostic: f64,
    /// Exact no-multicollision probability, when within budget.
    pub probability: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RateRegime {
    /// The diagnostic falls: random codebooks are zero-error with
    /// probability tending to one.
    Below,
    /// The diagnostic grows: the probability tends to zero.
    Above,
    Critical,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdSeries {
    pub rate: f64,
    pub list_size: u32,
    /// `(L/(L+1))·H_{L+1}(P)`.
    pub threshold_bits: f64,
    pub points: Vec<ThresholdPoint>,
    /// Diagnostic slope per letter measured across the series.
    pub slope: f64,
    pub regime: RateRegime,
}

/// Diagnostic series for `n ∈ ns`. Probabilities are left out where the
/// dynamic program would exceed the budget.
pub fn birthday_threshold_check(
    dist: &Dist,
    rate: f64,
    max_mult: u32,
    ns: impl IntoIterator<Item = u32>,
    budget: &Budget,
) -> Result<ThresholdSeries> {
    if rate.is_nan() || rate < 0.0 || !rate.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "rate {rate} must be finite and nonnegative"
        )));
    }
    if max_mult == 0 {
        return Err(Error::InvalidArgument(
            "max multiplicity must be at least 1".into(),
        ));
    }
    let l = max_mult as f64;
    let h = renyi_entropy(dist, max_mult + 1)?.bits();
    let mut points = Vec::new();
    for n in ns {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "blocklength must be at least 1".into(),
            ));
        }
        let messages = messages_at_rate(n, rate);
        let log2_messages = match messages {
            Some(m) => (m as f64).log2(),
            None => n as f64 * rate,
        };
        let probability = match messages {
            Some(m) => match product_no_multicollision_prob(dist, n, m, max_mult, budget) {
                Ok(p) => Some(p),
                Err(Error::GuardExceeded { .. }) => None,
                Err(e) => return Err(e),
            },
            None => None,
        };
        points.push(ThresholdPoint {
            n,
            messages,
            log2_messages,
            diagnostic: (l + 1.0) * log2_messages - l * n as f64 * h,
            probability,
        });
    }
    let slope = match (points.first(), points.last()) {
        (Some(a), Some(b)) if b.n > a.n => (b.diagnostic - a.diagnostic) / (b.n - a.n) as f64,
        _ => (l + 1.0) * rate - l * h,
    };
    let regime = if slope < -1e-12 {
        RateRegime::Below
    } else if slope > 1e-12 {
        RateRegime::Above
    } else {
        RateRegime::Critical
    };
    Ok(ThresholdSeries {
        rate,
        list_size: max_mult,
        threshold_bits: l / (l + 1.0) * h,
        points,
        slope,
        regime,
    })
}

/// Result of a blocklength search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NStar {
    pub n: u32,
    pub probability: f64,
    /// False if the scanned probabilities ever decreased in `n`.
    pub monotone: bool,
}

const LINEAR_SCAN_LIMIT: u32 = 32;
const MAX_BLOCKLENGTH: u32 = 1 << 12;

/// Least `n ≥ 1` such that `M` i.i.d. `Pⁿ` words have no symbol repeated
/// more than `L` times with probability at least `1 - ε`.
///
/// Scans `n = 1..=32`, then doubles and bisects. Bisection assumes the
/// probability is nondecreasing in `n`; the answer is re-checked at `n - 1`
/// and a linear scan takes over if that check fails.
pub fn n_star(draws: u64, eps: f64, dist: &Dist, max_mult: u32, budget: &Budget) -> Result<NStar> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon {eps} outside (0, 1)"
        )));
    }
    if draws == 0 || max_mult == 0 {
        return Err(Error::InvalidArgument(
            "draws and max multiplicity must be at least 1".into(),
        ));
    }
    if draws <= max_mult as u64 {
        return Ok(NStar {
            n: 1,
            probability: 1.0,
            monotone: true,
        });
    }
    if dist.support().len() < 2 {
        return Err(Error::Unreachable(
            "a point mass repeats every draw, so no blocklength suffices".into(),
        ));
    }
    let target = 1.0 - eps;
    let prob = |n: u32| product_no_multicollision_prob(dist, n, draws, max_mult, budget);
    let mut monotone = true;
    let mut previous = 0.0;
    for n in 1..=LINEAR_SCAN_LIMIT {
        let p = prob(n)?;
        if p < previous - 1e-12 {
            monotone = false;
        }
        previous = p;
        if p >= target {
            return Ok(NStar {
                n,
                probability: p,
                monotone,
            });
        }
    }
    let mut lo = LINEAR_SCAN_LIMIT;
    let mut hi = 2 * LINEAR_SCAN_LIMIT;
    let mut p_hi = prob(hi)?;
    while p_hi < target {
        if p_hi < previous - 1e-12 {
            monotone = false;
        }
        previous = p_hi;
        lo = hi;
        hi *= 2;
        if hi > MAX_BLOCKLENGTH {
            return Err(Error::Unreachable(format!(
                "probability {p_hi} still below {target} at n = {lo}"
            )));
        }
        p_hi = prob(hi)?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let p = prob(mid)?;
        if p >= target {
            hi = mid;
            p_hi = p;
        } else {
            lo = mid;
        }
    }
    if hi > 1 && prob(hi - 1)? >= target {
        monotone = false;
        for n in LINEAR_SCAN_LIMIT + 1..hi {
            let p = prob(n)?;
            if p >= target {
                return Ok(NStar {
                    n,
                    probability: p,
                    monotone,
                });
            }
        }
    }
    Ok(NStar {
        n: hi,
        probability: p_hi,
        monotone,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioPoint {
    pub messages: u64,
    pub n_star: u32,
    /// `log₂ M / n*`.
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioCurve {
    /// `(L/(L+1))·H_{L+1}(P)`.
    pub limit_bits: f64,
    pub points: Vec<RatioPoint>,
    /// Set when collisions are certain and no blocklength works.
    pub unreachable: bool,
}

/// `log₂ M / n*(M, ε)` for each `M`.
pub fn renyi_ratio_curve(
    dist: &Dist,
    max_mult: u32,
    eps: f64,
    messages: &[u64],
    budget: &Budget,
) -> Result<RatioCurve> {
    let l = max_mult as f64;
    let limit_bits = l / (l + 1.0) * renyi_entropy(dist, max_mult + 1)?.bits();
    let mut points = Vec::with_capacity(messages.len());
    for &m in messages {
        match n_star(m, eps, dist, max_mult, budget) {
            Ok(ns) => points.push(RatioPoint {
                messages: m,
                n_star: ns.n,
                ratio: (m as f64).log2() / ns.n as f64,
            }),
            Err(Error::Unreachable(_)) if dist.support().len() < 2 => {
                return Ok(RatioCurve {
                    limit_bits,
                    points: Vec::new(),
                    unreachable: true,
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(RatioCurve {
        limit_bits,
        points,
        unreachable: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    fn distinct_product(k: u64, m: u64) -> f64 {
        (0..m)
            .map(|i| k.saturating_sub(i) as f64 / k as f64)
            .product()
    }

    #[test]
    fn classical_birthday() {
        let inst = OccupancyInstance::new(Dist::uniform(365).unwrap(), 23, 1).unwrap();
        let p = exact_no_multicollision_prob(&inst, &b()).unwrap();
        assert!((p - distinct_product(365, 23)).abs() < 1e-12);
        assert!((1.0 - p - 0.507297).abs() < 1e-6);
    }

    #[test]
    fn small_examples() {
        let u2 = Dist::uniform(2).unwrap();
        let p =
            exact_no_multicollision_prob(&OccupancyInstance::new(u2.clone(), 3, 1).unwrap(), &b())
                .unwrap();
        assert_eq!(p, 0.0);
        let p =
            exact_no_multicollision_prob(&OccupancyInstance::new(u2, 2, 1).unwrap(), &b()).unwrap();
        assert_eq!(p, 0.5);
    }

    #[test]
    fn paths_agree() {
        // the same uniform alphabet handled as one large class, and as a
        // non-uniform mix that forces symbol-by-symbol absorption
        let u = Dist::uniform(50).unwrap();
        for l in 1..4 {
            let p = exact_no_multicollision_prob(
                &OccupancyInstance::new(u.clone(), 30, l).unwrap(),
                &b(),
            )
            .unwrap();
            let mut c = vec![0.0; 31];
            c[0] = 1.0;
            let mut deg = 0;
            for _ in 0..50 {
                deg = absorb_symbol(&mut c, deg, 0.02, l);
            }
            assert!((p - c[30]).abs() < 1e-13, "L={l}: {p} vs {}", c[30]);
        }
    }

    #[test]
    fn large_class_convolution() {
        // two large classes exercise the binomial convolution
        let mut probs = vec![0.3 / 40.0; 40];
        probs.extend(vec![0.7 / 60.0; 60]);
        let d = Dist::new(probs.clone()).unwrap();
        let fast =
            exact_no_multicollision_prob(&OccupancyInstance::new(d, 25, 2).unwrap(), &b()).unwrap();
        let mut c = vec![0.0; 26];
        c[0] = 1.0;
        let mut deg = 0;
        for p in probs {
            deg = absorb_symbol(&mut c, deg, p, 2);
        }
        assert!((fast - c[25]).abs() < 1e-12);
    }

    #[test]
    fn product_classes_cover_mass() {
        let d = Dist::new(vec![0.5, 0.25, 0.25]).unwrap();
        let classes = product_classes(&d, 5);
        let total: f64 = classes.iter().map(|c| c.prob * c.count).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let n: f64 = classes.iter().map(|c| c.count).sum();
        assert_eq!(n, 243.0);
    }

    #[test]
    fn product_matches_explicit_power() {
        let d = Dist::new(vec![0.6, 0.3, 0.1]).unwrap();
        for n in 1..4 {
            let explicit = d.power(n).unwrap();
            for m in [2u64, 5, 9] {
                for l in 1..3 {
                    let a = product_no_multicollision_prob(&d, n, m, l, &b()).unwrap();
                    let c = exact_no_multicollision_prob(
                        &OccupancyInstance::new(explicit.clone(), m, l).unwrap(),
                        &b(),
                    )
                    .unwrap();
                    assert!((a - c).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn n_star_examples() {
        let u2 = Dist::uniform(2).unwrap();
        assert_eq!(n_star(2, 0.5, &u2, 1, &b()).unwrap().n, 1);
        assert_eq!(n_star(3, 0.5, &u2, 3, &b()).unwrap().n, 1);
        // product-formula oracle: first n with (1-1/2^n)(1-2/2^n)(1-3/2^n) >= 0.6
        let oracle = (1..).find(|&n| distinct_product(1 << n, 4) >= 0.6).unwrap();
        assert_eq!(oracle, 4);
        assert_eq!(n_star(4, 0.4, &u2, 1, &b()).unwrap().n, oracle);
        assert!(matches!(
            n_star(3, 0.1, &Dist::point_mass(2, 0).unwrap(), 1, &b()),
            Err(Error::Unreachable(_))
        ));
        assert!(n_star(3, 1.5, &u2, 1, &b()).is_err());
    }

    #[test]
    fn n_star_beyond_linear_scan() {
        let u2 = Dist::uniform(2).unwrap();
        let ns = n_star(1 << 18, 0.1, &u2, 1, &b()).unwrap();
        assert!(ns.n > LINEAR_SCAN_LIMIT);
        assert!(ns.probability >= 0.9);
        assert!(product_no_multicollision_prob(&u2, ns.n - 1, 1 << 18, 1, &b()).unwrap() < 0.9);
    }

    #[test]
    fn threshold_examples() {
        let p = Dist::new(vec![0.5, 0.3, 0.2]).unwrap();
        let h2 = renyi_entropy(&p, 2).unwrap().bits();
        let small = Budget::default().with_enumeration_limit(10_000_000);
        let below = birthday_threshold_check(&p, 0.4 * h2, 1, 1..=24, &small).unwrap();
        assert_eq!(below.regime, RateRegime::Below);
        let above = birthday_threshold_check(&p, h2, 1, 1..=24, &small).unwrap();
        assert!(above.points.iter().any(|pt| pt.probability.is_none()));
        assert_eq!(above.regime, RateRegime::Above);
        let zero = birthday_threshold_check(&p, 0.0, 1, 1..=10, &b()).unwrap();
        assert_eq!(zero.regime, RateRegime::Below);
        assert!(zero.points.iter().all(|pt| pt.probability == Some(1.0)));
    }

    #[test]
    fn ratio_curve_point_mass() {
        let curve =
            renyi_ratio_curve(&Dist::point_mass(3, 0).unwrap(), 1, 0.1, &[4, 8], &b()).unwrap();
        assert!(curve.unreachable && curve.points.is_empty());
    }

    #[test]
    fn messages_at_rate_floor() {
        assert_eq!(messages_at_rate(4, 0.5), Some(4));
        assert_eq!(messages_at_rate(16, 1.5), Some(1 << 24));
        assert_eq!(messages_at_rate(10, 0.0), Some(1));
        assert_eq!(messages_at_rate(100, 1.0), None);
    }
}
