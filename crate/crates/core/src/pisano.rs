//! Periods of recurrence sequences under a modulus, by state-cycle
//! detection, plus the parity facts used by the odd-window arguments.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::{CompanionMatrix, RecurrenceSpec};

/// Largest tolerated state space `m^d` for cycle detection.
pub const STATE_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodResult {
    pub modulus: u64,
    pub preperiod: u64,
    pub period: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParityCertificate {
    pub modulus: u64,
    pub period: u64,
    pub parity: Parity,
    /// Companion determinant reduced modulo `m`.
    pub det_mod: u64,
    /// True when `det = -1 (mod m)`, `m > 2`, and the companion power at
    /// the period is the identity, which forces the period to be even.
    pub forced_even: bool,
}

fn coeffs_mod(spec: &RecurrenceSpec, m: u64) -> Vec<u64> {
    let big_m = num_bigint::BigInt::from(m);
    spec.coeffs()
        .iter()
        .map(|c| c.mod_floor(&big_m).to_u64().unwrap())
        .collect()
}

/// Minimal preperiod and period of the residue sequence modulo `m >= 1`.
///
/// The walk visits at most `m^d` states, one per distinct window of `d`
/// consecutive residues; the cap refuses state spaces past [`STATE_CAP`].
pub fn pisano(spec: &RecurrenceSpec, m: u64) -> Result<PeriodResult> {
    if m < 1 {
        return Err(Error::BadModulus { got: m, min: 1 });
    }
    let d = spec.order();
    let mut states: u128 = 1;
    for _ in 0..d {
        states = states.saturating_mul(m as u128);
        if states > STATE_CAP {
            return Err(Error::StateSpaceTooLarge {
                modulus: m,
                states,
                cap: STATE_CAP,
            });
        }
    }

    let c = coeffs_mod(spec, m);
    let mut window = spec.residues(d, m)?;
    let encode = |w: &[u64]| -> u128 {
        let mut code: u128 = 0;
        for &v in w {
            code = code * m as u128 + v as u128;
        }
        code
    };

    let mut seen: HashMap<u128, u64> = HashMap::new();
    let mut idx: u64 = 0;
    loop {
        let code = encode(&window);
        if let Some(&first) = seen.get(&code) {
            return Ok(PeriodResult {
                modulus: m,
                preperiod: first,
                period: idx - first,
            });
        }
        seen.insert(code, idx);
        let mut acc: u128 = 0;
        for i in 0..d {
            acc = (acc + c[i] as u128 * window[d - 1 - i] as u128) % m as u128;
        }
        window.rotate_left(1);
        window[d - 1] = acc as u64;
        idx += 1;
    }
}

fn mat_mul_mod(a: &[u64], b: &[u64], d: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0u64; d * d];
    for i in 0..d {
        for k in 0..d {
            if a[i * d + k] == 0 {
                continue;
            }
            for j in 0..d {
                let v = out[i * d + j] as u128 + a[i * d + k] as u128 * b[k * d + j] as u128;
                out[i * d + j] = (v % m as u128) as u64;
            }
        }
    }
    out
}

fn mat_pow_mod(m0: &[u64], d: usize, mut e: u64, m: u64) -> Vec<u64> {
    let mut result = vec![0u64; d * d];
    for i in 0..d {
        result[i * d + i] = 1 % m;
    }
    let mut base = m0.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul_mod(&result, &base, d, m);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul_mod(&base, &base, d, m);
        }
    }
    result
}

/// Period parity with the determinant-based explanation where it applies.
/// Requires an invertible state map, i.e. `gcd(c_d, m) = 1`.
pub fn parity_certificate(spec: &RecurrenceSpec, m: u64) -> Result<ParityCertificate> {
    if m < 2 {
        return Err(Error::BadModulus { got: m, min: 2 });
    }
    let c = coeffs_mod(spec, m);
    if c.last().unwrap().gcd(&m) != 1 {
        return Err(Error::NonInvertibleState { modulus: m });
    }
    let result = pisano(spec, m)?;
    debug_assert_eq!(result.preperiod, 0);

    let comp = CompanionMatrix::of(spec);
    let big_m = num_bigint::BigInt::from(m);
    let det_mod = comp.determinant().mod_floor(&big_m).to_u64().unwrap();

    let d = spec.order();
    let comp_mod: Vec<u64> = comp
        .data()
        .iter()
        .map(|v| v.mod_floor(&big_m).to_u64().unwrap())
        .collect();
    let power = mat_pow_mod(&comp_mod, d, result.period, m);
    let mut identity = vec![0u64; d * d];
    for i in 0..d {
        identity[i * d + i] = 1 % m;
    }
    let forced_even = m > 2 && det_mod == m - 1 && power == identity;

    let parity = if result.period % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    };
    if forced_even {
        assert_eq!(
            parity,
            Parity::Even,
            "determinant witness contradicts period"
        );
    }
    Ok(ParityCertificate {
        modulus: m,
        period: result.period,
        parity,
        det_mod,
        forced_even,
    })
}

/// Whether every length-`window` sum of consecutive terms vanishes modulo
/// `m` for all starts `0..=horizon`. `m = 1` holds trivially.
pub fn window_divisibility(
    spec: &RecurrenceSpec,
    window: u32,
    m: u64,
    horizon: i64,
) -> Result<bool> {
    if m < 1 {
        return Err(Error::BadModulus { got: m, min: 1 });
    }
    if horizon < 0 {
        return Err(Error::InvalidRange("horizon must be non-negative".into()));
    }
    let count = horizon as usize + window as usize + 1;
    let res = spec.residues(count, m)?;
    let window = window as usize;
    let mut sum: u128 = res[..window].iter().map(|&v| v as u128).sum();
    for n in 0..=horizon as usize {
        if !sum.is_multiple_of(m as u128) {
            return Ok(false);
        }
        if n + window < count {
            sum = sum + res[n + window] as u128 - res[n] as u128;
        }
    }
    Ok(true)
}
