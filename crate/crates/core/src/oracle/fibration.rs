//! Empirical check that the chart map `x_i = y_d y_i (i < ν)`, `x_i = y_i`
//! (otherwise) has fibers of size `q^{(ν-1)m}` on jets with `ord y_d = m`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::series::{require_prime, TruncatedSeries};
use crate::error::{Error, Result};

pub const DEFAULT_FIBRATION_CAP: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationReport {
    pub m: u64,
    pub l: u64,
    pub q: u64,
    pub d: u64,
    pub nu: u64,
    pub expected_fiber: u128,
    pub source_jets: u128,
    pub image_points: u128,
    /// Fiber size → number of image points with that fiber size.
    pub histogram: BTreeMap<u128, u128>,
    pub pass: bool,
}

pub fn verify_chart_fibration(m: u64, l: u64, q: u64, d: u64, nu: u64) -> Result<FibrationReport> {
    require_prime(q)?;
    if l < m {
        return Err(Error::Precondition(format!("jet level {l} is below m = {m}")));
    }
    if d == 0 || nu == 0 || nu > d {
        return Err(Error::Precondition(format!("need 1 ≤ ν ≤ d, got ν = {nu}, d = {d}")));
    }
    let (d, nu, m, l) = (d as usize, nu as usize, m as usize, l as usize);
    let width = l + 1;
    let size = (q as u128).checked_pow((d * width) as u32).unwrap_or(u128::MAX);
    if size > DEFAULT_FIBRATION_CAP {
        return Err(Error::Resource {
            what: "chart fibration enumeration".into(),
            cap: DEFAULT_FIBRATION_CAP,
            estimated: size,
        });
    }
    // coordinates 0..d-1 free except the last, whose first m coefficients
    // vanish and whose t^m coefficient is a unit
    let last_free = width - m - 1;
    let mut fibers: HashMap<Vec<u64>, u128> = HashMap::new();
    let mut digits = vec![0u64; (d - 1) * width + last_free];
    let mut lead = 1u64;
    let mut source = 0u128;
    loop {
        let mut ys: Vec<TruncatedSeries> =
            (0..d - 1).map(|i| TruncatedSeries::from_coeffs(q, digits[i * width..(i + 1) * width].to_vec())).collect();
        let mut yd = vec![0u64; width];
        yd[m] = lead;
        yd[m + 1..].copy_from_slice(&digits[(d - 1) * width..]);
        let yd = TruncatedSeries::from_coeffs(q, yd);
        for y in ys.iter_mut().take(nu - 1) {
            *y = y.mul(&yd);
        }
        ys.push(yd);
        let key: Vec<u64> = ys.iter().flat_map(|s| s.coeffs().iter().copied()).collect();
        *fibers.entry(key).or_insert(0) += 1;
        source += 1;

        let mut carried = true;
        for x in digits.iter_mut() {
            *x += 1;
            if *x < q {
                carried = false;
                break;
            }
            *x = 0;
        }
        if carried {
            lead += 1;
            if lead == q {
                break;
            }
        }
    }
    let mut histogram = BTreeMap::new();
    for &n in fibers.values() {
        *histogram.entry(n).or_insert(0) += 1;
    }
    let expected_fiber = (q as u128).pow(((nu - 1) * m) as u32);
    let pass = histogram.keys().all(|&k| k == expected_fiber);
    Ok(FibrationReport {
        m: m as u64,
        l: l as u64,
        q,
        d: d as u64,
        nu: nu as u64,
        expected_fiber,
        source_jets: source,
        image_points: fibers.len() as u128,
        histogram,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_fibers() {
        let r = verify_chart_fibration(1, 1, 3, 2, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.histogram.keys().copied().collect::<Vec<_>>(), vec![3]);
        let r = verify_chart_fibration(2, 2, 3, 2, 2).unwrap();
        assert_eq!(r.histogram.keys().copied().collect::<Vec<_>>(), vec![9]);
        let r = verify_chart_fibration(0, 1, 3, 2, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.expected_fiber, 1);
        assert_eq!(r.source_jets, r.image_points);
    }

    #[test]
    fn identity_chart() {
        let r = verify_chart_fibration(2, 2, 3, 2, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.expected_fiber, 1);
    }

    #[test]
    fn bad_arguments() {
        assert!(verify_chart_fibration(3, 2, 3, 2, 2).is_err());
        assert!(verify_chart_fibration(1, 1, 3, 2, 3).is_err());
    }
}
