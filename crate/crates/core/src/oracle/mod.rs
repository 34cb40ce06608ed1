//! Brute-force ground truth over finite fields: contact jet counts, their
//! stratification by vanishing orders, Euler characteristics by
//! interpolation, and an empirical check of the chart fibration.

mod count;
mod fibration;
mod fit;
mod naive;
mod series;
mod strata;

use num::integer::gcd;

pub use count::{contact_count, stratified_count, CountOptions, CountReport, Stratum, DEFAULT_NODE_CAP};
pub use fibration::{verify_chart_fibration, FibrationReport, DEFAULT_FIBRATION_CAP};
pub use fit::{interpolate, interpolate_chi, ChiFit};
pub use naive::{naive_count, DEFAULT_NAIVE_CAP};
pub use series::{evaluate_on_jet, is_prime, reduce, require_prime, TruncatedSeries};
pub use strata::{attribute_strata, AttributionReport, StratumAttribution};

use crate::covers::{split_count_linear, split_point_count};
use crate::error::Result;
use crate::model::SncConfiguration;
use crate::poly::UPoly;
use crate::separation::require_m_separating;
use crate::spectral::divisors_dividing;

pub const DEFAULT_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

/// Primes from `pool` with `q ≡ 1 mod modulus`.
pub fn congruence_filter(pool: &[u64], modulus: u64) -> Vec<u64> {
    pool.iter().copied().filter(|&q| modulus > 0 && q % modulus == 1 % modulus).collect()
}

/// The first `count` primes `q ≥ 3` with `q ≡ 1 mod modulus`.
pub fn primes_congruent_one(modulus: u64, count: usize) -> Vec<u64> {
    (3..).filter(|&q| is_prime(q) && q % modulus == 1 % modulus).take(count).collect()
}

/// Count of `x^r` contact jets of level `m`: `gcd(r, q-1)·q^{m-m/r}` when
/// `r | m`, else zero.
pub fn closed_form_power(r: u64, m: u64, q: u64) -> u128 {
    if r == 0 || !m.is_multiple_of(r) {
        return 0;
    }
    gcd(r, q - 1) as u128 * (q as u128).pow((m - m / r) as u32)
}

/// `Σ_{S_m} #Ẽ_i°(F_q)·q^{d·l - k_iν_i}`, available when every cover point
/// count is known in closed form.
pub fn predicted_contact_count(cfg: &SncConfiguration, m: u64, l: u64, q: u64) -> Result<Option<u128>> {
    require_m_separating(cfg, m)?;
    let d = cfg.ambient_dim as u64;
    let mut total = 0u128;
    for (id, k, nu) in divisors_dividing(cfg, m) {
        let Some(points) = split_point_count(cfg, id, q)? else { return Ok(None) };
        let Some(exp) = (d * l).checked_sub(k * nu) else { return Ok(None) };
        total += points * (q as u128).pow(exp as u32);
    }
    Ok(Some(total))
}

/// The predicted count as a polynomial in `q`, valid for `q ≡ 1` modulo
/// every multiplicity in `S_m`, together with that modulus.
pub fn predicted_count_polynomial(cfg: &SncConfiguration, m: u64, l: u64) -> Result<Option<(UPoly, u64)>> {
    require_m_separating(cfg, m)?;
    let d = cfg.ambient_dim as u64;
    let mut total = UPoly::zero();
    let mut modulus = 1;
    for (id, k, nu) in divisors_dividing(cfg, m) {
        let Some((a, b)) = split_count_linear(cfg, id)? else { return Ok(None) };
        let Some(exp) = (d * l).checked_sub(k * nu) else { return Ok(None) };
        let mut coeffs = vec![0i64; exp as usize + 2];
        coeffs[exp as usize] = b;
        coeffs[exp as usize + 1] = a;
        total = total.add(&UPoly::from_i64s(&coeffs));
        modulus = num::integer::lcm(modulus, cfg.divisor(id)?.mult);
    }
    Ok(Some((total, modulus)))
}
