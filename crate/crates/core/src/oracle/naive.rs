//! Exhaustive enumeration of every jet, used to cross-check the pruned search.

use std::collections::BTreeMap;
use std::time::Instant;

use super::count::{CountReport, Stratum};
use super::series::{evaluate_on_jet, require_prime, TruncatedSeries};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub const DEFAULT_NAIVE_CAP: u128 = 5_000_000;

pub fn naive_count(f: &Polynomial, m: u64, l: u64, q: u64, cap: u128) -> Result<CountReport> {
    let started = Instant::now();
    require_prime(q)?;
    if m == 0 || l < m {
        return Err(Error::Precondition(format!("need 1 ≤ m ≤ l, got m = {m}, l = {l}")));
    }
    let d = f.num_vars();
    let free = d * l as usize;
    let size = (q as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::Resource { what: format!("naive jet enumeration for f = {f}"), cap, estimated: size });
    }
    let level = l as usize;
    let mut digits = vec![0u64; free];
    let mut strata: BTreeMap<Vec<u32>, u128> = BTreeMap::new();
    for _ in 0..size {
        let jet: Vec<TruncatedSeries> = (0..d)
            .map(|i| {
                let mut c = vec![0];
                c.extend_from_slice(&digits[i * level..(i + 1) * level]);
                TruncatedSeries::from_coeffs(q, c)
            })
            .collect();
        let value = evaluate_on_jet(f, &jet)?;
        let c = value.coeffs();
        if c[..m as usize].iter().all(|&x| x == 0) && c[m as usize] == 1 {
            let orders = jet.iter().map(|s| s.order().unwrap_or(level + 1) as u32).collect();
            *strata.entry(orders).or_insert(0) += 1;
        }
        for x in digits.iter_mut() {
            *x += 1;
            if *x < q {
                break;
            }
            *x = 0;
        }
    }
    let strata: Vec<Stratum> = strata.into_iter().map(|(orders, count)| Stratum { orders, count }).collect();
    Ok(CountReport {
        f: f.to_string(),
        m,
        l,
        q,
        total: strata.iter().map(|s| s.count).sum(),
        strata,
        nodes: size as u64,
        shortcut: false,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances() {
        let f = Polynomial::parse("x*y").unwrap();
        assert_eq!(naive_count(&f, 2, 2, 3, DEFAULT_NAIVE_CAP).unwrap().total, 18);
        let f = Polynomial::parse("x^2+y^3").unwrap();
        let r = naive_count(&f, 2, 2, 5, DEFAULT_NAIVE_CAP).unwrap();
        assert_eq!(r.total, 250);
        assert_eq!(r.stratum(&[1, 1]), 200);
        assert!(naive_count(&f, 2, 6, 5, 1000).is_err());
    }
}
