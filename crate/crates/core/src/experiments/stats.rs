//! Small regression helpers for trend checks on sweep output.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    /// slope / stderr
    pub t: f64,
    pub n: usize,
}

/// Ordinary least squares of `y` on `x`. `None` with fewer than three points
/// or no spread in `x`.
pub fn ols(x: &[f64], y: &[f64]) -> Option<SlopeFit> {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    if n < 3 {
        return None;
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let stderr = (sse / (nf - 2.0) / sxx).sqrt();
    Some(SlopeFit {
        slope,
        intercept,
        stderr,
        t: slope / stderr,
        n,
    })
}

/// Nondecreasing least-squares fit (pool adjacent violators). `x` must be
/// sorted; ties in `x` are pooled first.
pub fn isotonic(x: &[f64], y: &[f64]) -> Vec<f64> {
    assert_eq!(x.len(), y.len());
    // blocks of (sum, weight, len)
    let mut blocks: Vec<(f64, f64, usize)> = Vec::new();
    let mut i = 0;
    while i < x.len() {
        let mut j = i;
        let mut s = 0.0;
        while j < x.len() && x[j] == x[i] {
            s += y[j];
            j += 1;
        }
        blocks.push((s, (j - i) as f64, j - i));
        while blocks.len() > 1 {
            let (s1, w1, l1) = blocks[blocks.len() - 1];
            let (s0, w0, l0) = blocks[blocks.len() - 2];
            if s0 / w0 <= s1 / w1 {
                break;
            }
            blocks.pop();
            *blocks.last_mut().unwrap() = (s0 + s1, w0 + w1, l0 + l1);
        }
        i = j;
    }
    blocks
        .iter()
        .flat_map(|&(s, w, l)| std::iter::repeat_n(s / w, l))
        .collect()
}

/// Sample variance (n − 1 denominator); 0 for fewer than two values.
pub fn variance(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let m = v.iter().sum::<f64>() / v.len() as f64;
    v.iter().map(|a| (a - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64
}
