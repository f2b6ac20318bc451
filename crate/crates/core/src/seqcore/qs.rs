use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Empirical quasisymmetry profile of a finite map `xs[i] ↦ ys[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QsProfile {
    /// `(t, ρ)` per ordered triple: domain ratio `|x − y|/|x − z|` and image
    /// ratio `|f(x) − f(y)|/|f(x) − f(z)|`.
    pub samples: Vec<(f64, f64)>,
    /// Nondecreasing upper staircase: at each distinct `t`, the largest `ρ`
    /// observed at any domain ratio up to `t`.
    pub envelope: Vec<(f64, f64)>,
}

impl QsProfile {
    /// Envelope value at `t`: the largest image ratio seen at domain ratios
    /// not exceeding `t`, or 0 below the first sample.
    pub fn eta(&self, t: f64) -> f64 {
        let i = self.envelope.partition_point(|&(s, _)| s <= t);
        if i == 0 {
            0.0
        } else {
            self.envelope[i - 1].1
        }
    }
}

pub fn qs_profile(xs: &[f64], ys: &[f64]) -> Result<QsProfile> {
    if xs.len() != ys.len() {
        return Err(Error::SizeMismatch(alloc::format!("{} points, {} images", xs.len(), ys.len())));
    }
    if xs.len() < 3 {
        return Err(Error::SizeMismatch("need at least three points".into()));
    }
    let distinct = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(f64::total_cmp);
        s.windows(2).all(|w| w[0] != w[1])
    };
    if !distinct(xs) || !distinct(ys) {
        return Err(Error::Malformed("points and images must be distinct".into()));
    }
    let n = xs.len();
    let mut samples = Vec::with_capacity(n * (n - 1) * (n - 1));
    for x in 0..n {
        for y in 0..n {
            if y == x {
                continue;
            }
            for z in 0..n {
                if z == x {
                    continue;
                }
                let t = (xs[x] - xs[y]).abs() / (xs[x] - xs[z]).abs();
                let rho = (ys[x] - ys[y]).abs() / (ys[x] - ys[z]).abs();
                samples.push((t, rho));
            }
        }
    }
    let mut sorted = samples.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut envelope: Vec<(f64, f64)> = Vec::new();
    let mut run = f64::NEG_INFINITY;
    for (t, rho) in sorted {
        run = run.max(rho);
        match envelope.last_mut() {
            Some(last) if last.0 == t => last.1 = run,
            _ => envelope.push((t, run)),
        }
    }
    Ok(QsProfile { samples, envelope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn identity_profile_is_diagonal() {
        let xs = vec![-3.0, -1.0, 0.0, 2.0, 7.0];
        let p = qs_profile(&xs, &xs).unwrap();
        assert!(p.envelope.iter().all(|&(t, r)| t == r));
        let doubled: Vec<f64> = xs.iter().map(|x| 2.0 * x).collect();
        let q = qs_profile(&xs, &doubled).unwrap();
        assert_eq!(p.envelope, q.envelope);
    }

    #[test]
    fn size_mismatch() {
        assert!(qs_profile(&[0.0, 1.0, 2.0], &[0.0, 1.0]).is_err());
        assert!(qs_profile(&[0.0, 1.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn envelope_dominates_samples() {
        let xs = vec![0.0, 1.0, 2.0, 3.0];
        let ys = vec![0.0, 3.0, 1.0, 2.0];
        let p = qs_profile(&xs, &ys).unwrap();
        assert!(p.envelope.windows(2).all(|w| w[0].1 <= w[1].1));
        for &(t, r) in &p.samples {
            assert!(p.eta(t) >= r);
        }
    }
}
