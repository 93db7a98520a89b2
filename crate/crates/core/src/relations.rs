//! Empirical search for fixed-multiple window relations.
//!
//! For a sequence `f` and window length `N`, a relation is an identity
//! `sum_{i=0}^{N-1} f(n+i) = C * f(n+k)` with one integer constant `C` and
//! one offset `k` holding at every swept `n`. The search keeps ratios as
//! exact rationals, so a relation is certified over the whole horizon or
//! refuted with the first failing index per candidate offset.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::closed_form_constant;
use crate::sequences::{self, RecurrenceSpec, TermTable};

fn ser_opt_bigint<S: serde::Serializer>(
    v: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_some(&b.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessDetail {
    /// Ratio at `n` departs from the constant seen at the first sample.
    RatioMismatch { expected: String, got: String },
    /// Probed term is zero past the support start, so no ratio exists.
    ZeroTerm,
    /// The ratio is constant across the sweep but not a positive integer.
    ConstantNotPositiveInteger { ratio: String },
    /// Fewer than three usable sample indices; nothing can be certified.
    UnsupportedRange,
}

/// First failing index for one candidate offset.
#[derive(Debug, Clone, Serialize)]
pub struct OffsetWitness {
    pub offset: i64,
    pub n: i64,
    #[serde(flatten)]
    pub detail: WitnessDetail,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationVerdict {
    pub label: String,
    pub window: u32,
    pub found: bool,
    #[serde(serialize_with = "ser_opt_bigint")]
    pub constant: Option<BigInt>,
    pub offset: Option<i64>,
    pub n_min: i64,
    pub horizon: i64,
    pub witnesses: Vec<OffsetWitness>,
}

impl RelationVerdict {
    /// One CSV row: label,N,found,C,k,horizon.
    pub fn csv_row(&self) -> String {
        let c = self
            .constant
            .as_ref()
            .map(|v| v.to_string())
            .unwrap_or_default();
        let k = self.offset.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            csv_quote(&self.label),
            self.window,
            self.found,
            c,
            k,
            self.horizon
        )
    }
}

pub fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Searches for a window relation over `n in [n_min, horizon]`.
///
/// Candidate offsets default to `[0, N+2]`, a superset of the proven band,
/// so violations of the band would be detected rather than assumed away.
/// `n_min` defaults to the first index past the leading zeros.
pub fn search_relation(
    spec: &RecurrenceSpec,
    window: u32,
    n_min: Option<i64>,
    horizon: i64,
    offsets: Option<std::ops::RangeInclusive<i64>>,
) -> Result<RelationVerdict> {
    if window < 1 {
        return Err(Error::InvalidRange("window must be at least 1".into()));
    }
    let support = spec.support_start();
    let n_min = n_min.unwrap_or(support);
    if n_min < 0 {
        return Err(Error::InvalidRange("n_min must be non-negative".into()));
    }
    if horizon < n_min + 3 {
        return Err(Error::InvalidRange(format!(
            "horizon {horizon} must be at least n_min + 3 = {}",
            n_min + 3
        )));
    }
    let offsets = offsets.unwrap_or(0..=(window as i64 + 2));
    let max_index = horizon + window as i64 + offsets.end().max(&0) + 1;
    let table = TermTable::build(spec, max_index);

    let mut witnesses = Vec::new();
    let mut candidates: Vec<(BigInt, i64)> = Vec::new();
    for k in offsets {
        let mut first_ratio: Option<BigRational> = None;
        let mut failed = false;
        let mut samples = 0usize;
        for n in n_min..=horizon {
            if n + k < 0 {
                continue;
            }
            let denom = table.t(n + k);
            if denom.is_zero() {
                if n + k < support {
                    continue; // leading zero, ratio not probed here
                }
                witnesses.push(OffsetWitness {
                    offset: k,
                    n,
                    detail: WitnessDetail::ZeroTerm,
                });
                failed = true;
                break;
            }
            let sum = table.window(n, window as i64);
            let ratio = BigRational::new(sum, denom.clone());
            samples += 1;
            match &first_ratio {
                None => first_ratio = Some(ratio),
                Some(c0) if *c0 != ratio => {
                    witnesses.push(OffsetWitness {
                        offset: k,
                        n,
                        detail: WitnessDetail::RatioMismatch {
                            expected: c0.to_string(),
                            got: ratio.to_string(),
                        },
                    });
                    failed = true;
                    break;
                }
                Some(_) => {}
            }
        }
        if failed {
            continue;
        }
        match first_ratio {
            Some(c0) if samples >= 3 => {
                if c0.is_integer() && c0.numer().is_positive() {
                    candidates.push((c0.to_integer(), k));
                } else {
                    witnesses.push(OffsetWitness {
                        offset: k,
                        n: n_min,
                        detail: WitnessDetail::ConstantNotPositiveInteger {
                            ratio: c0.to_string(),
                        },
                    });
                }
            }
            _ => witnesses.push(OffsetWitness {
                offset: k,
                n: n_min,
                detail: WitnessDetail::UnsupportedRange,
            }),
        }
    }

    // Deep horizons admit at most one offset; keep the smallest if a short
    // sweep ever produced ties.
    candidates.sort_by_key(|c| c.1);
    let verdict = match candidates.into_iter().next() {
        Some((c, k)) => RelationVerdict {
            label: spec.label().to_string(),
            window,
            found: true,
            constant: Some(c),
            offset: Some(k),
            n_min,
            horizon,
            witnesses: Vec::new(),
        },
        None => RelationVerdict {
            label: spec.label().to_string(),
            window,
            found: false,
            constant: None,
            offset: None,
            n_min,
            horizon,
            witnesses,
        },
    };
    Ok(verdict)
}

/// Runs [`search_relation`] for every window length `1..=window_max`.
pub fn classify(
    spec: &RecurrenceSpec,
    window_max: u32,
    n_min: Option<i64>,
    horizon: i64,
) -> Result<Vec<RelationVerdict>> {
    (1..=window_max)
        .map(|w| search_relation(spec, w, n_min, horizon, None))
        .collect()
}

/// Exact analytic value of the would-be relation constant.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticVerdict {
    Integer(BigInt),
    NonIntegerRational(BigRational),
    Irrational {
        rational_part: BigRational,
        irrational_coeff: BigRational,
        radicand: i64,
    },
}

impl AnalyticVerdict {
    pub fn describe(&self) -> String {
        match self {
            Self::Integer(c) => format!("integer {c}"),
            Self::NonIntegerRational(q) => format!("non-integer rational {q}"),
            Self::Irrational {
                rational_part,
                irrational_coeff,
                radicand,
            } => format!("irrational {rational_part} + {irrational_coeff}*sqrt({radicand})"),
        }
    }
}

/// Evaluates `sum_{i=0}^{N-1} alpha^(i-k)` exactly and classifies the
/// result. Whenever the search certifies `(C, k)` for an order-2 seed, this
/// must return the same integer `C`.
pub fn analytic_check(r: i64, s: i64, window: u32, offset: i64) -> Result<AnalyticVerdict> {
    let c = closed_form_constant(r, s, window, offset)?;
    if !c.irrational_coeff().is_zero() {
        return Ok(AnalyticVerdict::Irrational {
            rational_part: c.rational_part().clone(),
            irrational_coeff: c.irrational_coeff().clone(),
            radicand: c.radicand(),
        });
    }
    if c.rational_part().is_integer() {
        Ok(AnalyticVerdict::Integer(c.rational_part().to_integer()))
    } else {
        Ok(AnalyticVerdict::NonIntegerRational(
            c.rational_part().clone(),
        ))
    }
}

/// Window-4 scan over the family `f(n) = r f(n-1) + f(n-2)`, seed (0, 1).
pub fn scan_r4(r_max: i64, n_min: Option<i64>, horizon: i64) -> Result<Vec<RelationVerdict>> {
    (1..=r_max)
        .map(|r| {
            let spec = sequences::lucas_u(r, 1)?;
            search_relation(&spec, 4, n_min, horizon, None)
        })
        .collect()
}

/// Scans the two-parameter family over `s in {-1, +1}` and nontrivial
/// windows `2..=window_max`.
pub fn lucas_family_scan(
    r_range: std::ops::RangeInclusive<i64>,
    s_values: &[i64],
    window_max: u32,
    horizon: i64,
) -> Result<Vec<RelationVerdict>> {
    for s in s_values {
        if *s != 1 && *s != -1 {
            return Err(Error::InvalidRange(format!(
                "family scan restricts s to -1 or +1, got {s}"
            )));
        }
    }
    let mut out = Vec::new();
    for r in r_range {
        for &s in s_values {
            let spec = sequences::lucas_u(r, s)?;
            for w in 2..=window_max {
                out.push(search_relation(&spec, w, None, horizon, None)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn pell_window_4_found() {
        let v = search_relation(&sequences::pell(), 4, Some(1), 100, None).unwrap();
        assert!(v.found);
        assert_eq!(v.constant, Some(BigInt::from(4)));
        assert_eq!(v.offset, Some(2));
    }

    #[test]
    fn pell_window_6_not_found() {
        let v = search_relation(&sequences::pell(), 6, Some(1), 100, None).unwrap();
        assert!(!v.found);
        assert!(!v.witnesses.is_empty());
    }

    #[test]
    fn fib_window_3_found() {
        let v = search_relation(&sequences::fibonacci(), 3, Some(1), 100, None).unwrap();
        assert!(v.found);
        assert_eq!(v.constant, Some(BigInt::from(2)));
        assert_eq!(v.offset, Some(2));
    }

    #[test]
    fn identity_window_is_trivial() {
        let v = search_relation(&sequences::pell(), 1, Some(1), 100, None).unwrap();
        assert!(v.found);
        assert_eq!(v.constant, Some(BigInt::one()));
        assert_eq!(v.offset, Some(0));
    }

    #[test]
    fn pell_classification_table() {
        let table = classify(&sequences::pell(), 12, Some(1), 150).unwrap();
        let found: Vec<(u32, BigInt, i64)> = table
            .iter()
            .filter(|v| v.found)
            .map(|v| (v.window, v.constant.clone().unwrap(), v.offset.unwrap()))
            .collect();
        let want = vec![
            (1, BigInt::from(1), 0),
            (4, BigInt::from(4), 2),
            (8, BigInt::from(24), 4),
            (12, BigInt::from(140), 6),
        ];
        assert_eq!(found, want);
    }

    #[test]
    fn fibonacci_classification_table() {
        let table = classify(&sequences::fibonacci(), 12, Some(1), 150).unwrap();
        let found: Vec<(u32, BigInt, i64)> = table
            .iter()
            .filter(|v| v.found)
            .map(|v| (v.window, v.constant.clone().unwrap(), v.offset.unwrap()))
            .collect();
        // brute-force oracle; window 10 carries L(5) = 11 at offset 6
        let want = vec![
            (1, BigInt::from(1), 0),
            (2, BigInt::from(1), 2),
            (3, BigInt::from(2), 2),
            (6, BigInt::from(4), 4),
            (10, BigInt::from(11), 6),
        ];
        assert_eq!(found, want);
    }

    #[test]
    fn lucas_window_6_relation() {
        let v = search_relation(&sequences::lucas(), 6, Some(1), 150, None).unwrap();
        assert!(v.found);
        assert_eq!(v.constant, Some(BigInt::from(4)));
        assert_eq!(v.offset, Some(4));
    }

    #[test]
    fn analytic_trichotomy() {
        assert_eq!(
            analytic_check(2, 1, 8, 4).unwrap(),
            AnalyticVerdict::Integer(BigInt::from(24))
        );
        assert!(matches!(
            analytic_check(2, 1, 4, 1).unwrap(),
            AnalyticVerdict::Irrational { .. }
        ));
        assert_eq!(
            analytic_check(1, 1, 2, 2).unwrap(),
            AnalyticVerdict::Integer(BigInt::one())
        );
    }

    #[test]
    fn r4_scan_unique_at_two() {
        let rows = scan_r4(10, Some(1), 150).unwrap();
        for v in &rows {
            let r: i64 = v.label["lucasU(".len()..]
                .split(',')
                .next()
                .unwrap()
                .parse()
                .unwrap();
            if r == 2 {
                assert!(v.found);
                assert_eq!(v.constant, Some(BigInt::from(4)));
                assert_eq!(v.offset, Some(2));
            } else {
                assert!(!v.found, "r={r} unexpectedly found");
            }
        }
    }

    #[test]
    fn family_scan_examples() {
        let rows = lucas_family_scan(3..=3, &[-1], 12, 150).unwrap();
        let w3 = rows.iter().find(|v| v.window == 3).unwrap();
        assert!(w3.found);
        assert_eq!(w3.constant, Some(BigInt::from(4)));
        assert_eq!(w3.offset, Some(1));
        // the analytic constant agrees on the s=-1 family too
        assert_eq!(
            analytic_check(3, -1, 3, 1).unwrap(),
            AnalyticVerdict::Integer(BigInt::from(4))
        );

        let rows = lucas_family_scan(3..=3, &[1], 12, 150).unwrap();
        assert!(rows.iter().all(|v| !v.found));

        // (1,1) is the same sequence as the classical (1,1) seed
        let rows = lucas_family_scan(1..=1, &[1], 12, 150).unwrap();
        let windows: Vec<u32> = rows.iter().filter(|v| v.found).map(|v| v.window).collect();
        assert_eq!(windows, vec![2, 3, 6, 10]);

        assert!(lucas_family_scan(2..=2, &[0], 4, 100).is_err());
    }

    #[test]
    fn zero_terms_are_reported_not_skipped() {
        // periodic seed with zeros beyond the leading block
        let spec = sequences::lucas_u(1, -1).unwrap();
        let v = search_relation(&spec, 3, None, 60, None).unwrap();
        assert!(!v.found);
        assert!(v
            .witnesses
            .iter()
            .any(|w| matches!(w.detail, WitnessDetail::ZeroTerm)));
    }

    #[test]
    fn horizon_precondition() {
        assert!(search_relation(&sequences::pell(), 4, Some(5), 6, None).is_err());
    }
}
