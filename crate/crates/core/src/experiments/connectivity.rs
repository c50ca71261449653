//! Probability that G(n, p) is connected, and threshold curves.

use num_bigint::{BigInt, Sign};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orders up to which the recursion is evaluated exactly.
pub const EXACT_LIMIT: usize = 64;

/// P(G(n, p) is connected) from the recursion
///
/// ```text
/// C(1) = 1
/// C(n) = 1 - sum_{i=1}^{n-1} C(i) * binom(n-1, i-1) * (1-p)^(i(n-i))
/// ```
///
/// Every `f64` is a dyadic rational, so for n ≤ [`EXACT_LIMIT`] the sum is
/// carried out exactly over integers scaled by a power of two and rounded
/// once at the end. Larger orders use the same recursion in `f64` with
/// log-space terms.
pub fn connectedness_probability(n: usize, p: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidOrder { min: 1, got: 0 });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if n <= EXACT_LIMIT {
        Ok(exact(n, p))
    } else {
        Ok(float(n, p))
    }
}

/// `num / 2^exp`.
#[derive(Clone, Debug)]
struct Dyadic {
    num: BigInt,
    exp: u64,
}

impl Dyadic {
    fn from_f64(x: f64) -> Dyadic {
        if x == 0.0 {
            return Dyadic { num: BigInt::zero(), exp: 0 };
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1 << 52) - 1);
        let (mantissa, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | 1 << 52, raw_exp - 1075) };
        let tz = mantissa.trailing_zeros() as i64;
        let (m, e) = (mantissa >> tz, e + tz);
        if e >= 0 {
            Dyadic { num: BigInt::from(m) << e as usize, exp: 0 }
        } else {
            Dyadic { num: BigInt::from(m), exp: (-e) as u64 }
        }
    }

    fn one() -> Dyadic {
        Dyadic { num: BigInt::one(), exp: 0 }
    }

    fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic { num: &self.num * &o.num, exp: self.exp + o.exp }
    }

    fn scale(&self, k: &BigInt) -> Dyadic {
        Dyadic { num: &self.num * k, exp: self.exp }
    }

    fn aligned(&self, exp: u64) -> BigInt {
        &self.num << (exp - self.exp) as usize
    }

    fn sub(&self, o: &Dyadic) -> Dyadic {
        let exp = self.exp.max(o.exp);
        Dyadic { num: self.aligned(exp) - o.aligned(exp), exp }
    }

    fn add(&self, o: &Dyadic) -> Dyadic {
        let exp = self.exp.max(o.exp);
        Dyadic { num: self.aligned(exp) + o.aligned(exp), exp }
    }

    /// Correctly rounded for results in the normal range.
    fn to_f64(&self) -> f64 {
        let neg = self.num.sign() == Sign::Minus;
        let mag = self.num.magnitude();
        let bits = mag.bits();
        let (top, shift) = if bits > 128 {
            let s = bits - 128;
            let mut top = mag >> s as usize;
            if mag.trailing_zeros().unwrap_or(0) < s {
                top |= num_bigint::BigUint::one();
            }
            (top, s as i64)
        } else {
            (mag.clone(), 0)
        };
        // two scalings so the intermediate neither overflows nor underflows
        let v = top.to_f64().expect("finite") * 2f64.powi(-128) * 2f64.powi((shift - self.exp as i64 + 128) as i32);
        if neg {
            -v
        } else {
            v
        }
    }
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let next = &row[k - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(next);
    }
    row
}

fn exact(n: usize, p: f64) -> f64 {
    let q = Dyadic::one().sub(&Dyadic::from_f64(p));
    let max_pow = (n / 2) * (n - n / 2);
    let mut q_pow = vec![Dyadic::one()];
    for k in 1..=max_pow {
        q_pow.push(q_pow[k - 1].mul(&q));
    }
    let mut conn = vec![Dyadic::one()];
    for m in 2..=n {
        let binom = binomial_row(m - 1);
        let mut sum = Dyadic { num: BigInt::zero(), exp: 0 };
        for i in 1..m {
            let term = conn[i - 1].mul(&q_pow[i * (m - i)]).scale(&binom[i - 1]);
            sum = sum.add(&term);
        }
        conn.push(Dyadic::one().sub(&sum));
    }
    conn[n - 1].to_f64()
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|j| ((n - j) as f64 / (j + 1) as f64).ln()).sum()
}

fn float(n: usize, p: f64) -> f64 {
    let q = 1.0 - p;
    let mut conn = vec![1.0f64];
    for m in 2..=n {
        let mut sum = 0.0;
        for i in 1..m {
            let k = (i * (m - i)) as f64;
            let term = if q == 0.0 {
                0.0
            } else {
                (conn[i - 1].ln() + ln_binomial(m - 1, i - 1) + k * q.ln()).exp()
            };
            sum += term;
        }
        conn.push((1.0 - sum).clamp(0.0, 1.0));
    }
    conn[n - 1]
}

/// Reference curves for plots over (order, edge count).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ThresholdKind {
    /// ½·n·ln n edges: the sharp connectivity threshold of G(n, m).
    HalfNLogN,
    /// c·n edges.
    LinearCn { c: f64 },
    /// C(n, 2) − 1 edges: one edge short of complete.
    BinomMinus,
}

pub fn threshold_curve(kind: ThresholdKind, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidOrder { min: 2, got: n });
    }
    let nf = n as f64;
    Ok(match kind {
        ThresholdKind::HalfNLogN => 0.5 * nf * nf.ln(),
        ThresholdKind::LinearCn { c } => c * nf,
        ThresholdKind::BinomMinus => (n * (n - 1) / 2 - 1) as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        for p in [0.0, 0.3, 1.0] {
            assert_eq!(connectedness_probability(1, p).unwrap(), 1.0);
        }
        for p in [0.0, 0.1, 0.5, 0.77, 1.0] {
            assert_eq!(connectedness_probability(2, p).unwrap(), p);
        }
        assert_eq!(connectedness_probability(3, 0.5).unwrap(), 0.5);
        assert!(connectedness_probability(0, 0.5).is_err());
        assert!(connectedness_probability(3, 1.5).is_err());
        assert!(connectedness_probability(3, f64::NAN).is_err());
    }

    #[test]
    fn three_vertices_closed_form() {
        // connected labeled graphs on 3 vertices: three paths and the triangle
        for p in [0.1, 0.3, 0.7, 0.9] {
            let q: f64 = 1.0 - p;
            let want = 3.0 * p * p * q + p * p * p;
            let got = connectedness_probability(3, p).unwrap();
            assert!((got - want).abs() < 1e-15, "{p}: {got} vs {want}");
        }
    }

    #[test]
    fn exact_and_float_agree_near_switch() {
        for p in [0.05, 0.1, 0.2] {
            let e = exact(64, p);
            let f = float(64, p);
            assert!((e - f).abs() < 1e-9, "{p}: {e} vs {f}");
        }
        let big = connectedness_probability(200, 0.05).unwrap();
        assert!(big > 0.9 && big <= 1.0);
    }

    #[test]
    fn endpoints() {
        for n in 2..=70 {
            assert_eq!(connectedness_probability(n, 0.0).unwrap(), 0.0);
            assert_eq!(connectedness_probability(n, 1.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn dyadic_round_trip() {
        for x in [0.1, 0.3, 1.0, 1e-300, 5e-324, 0.999_999_999] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn threshold_examples() {
        let a = threshold_curve(ThresholdKind::HalfNLogN, 10).unwrap();
        assert!((a - 11.512925464970229).abs() < 1e-12);
        assert_eq!(threshold_curve(ThresholdKind::BinomMinus, 7).unwrap(), 20.0);
        assert_eq!(threshold_curve(ThresholdKind::LinearCn { c: 1.0 }, 50).unwrap(), 50.0);
        assert!(threshold_curve(ThresholdKind::BinomMinus, 1).is_err());
    }
}
