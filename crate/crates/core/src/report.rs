//! Verification reports produced by the finite-range identity sweeps.

use num_bigint::BigInt;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub params: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of sweeping one identity over a parameter rectangle. Sides are
/// recorded as exact decimal strings, never rounded.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub rectangle: String,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn pass(identity: impl Into<String>, rectangle: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            rectangle: rectangle.into(),
            passed: true,
            counterexample: None,
        }
    }

    pub fn fail(
        identity: impl Into<String>,
        rectangle: impl Into<String>,
        params: String,
        lhs: &BigInt,
        rhs: &BigInt,
    ) -> Self {
        Self {
            identity: identity.into(),
            rectangle: rectangle.into(),
            passed: false,
            counterexample: Some(Counterexample {
                params,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }),
        }
    }

    /// Collapses sub-identity reports into one, keeping the first
    /// counterexample and prefixing it with the sub-identity it came from.
    pub fn merge(
        identity: impl Into<String>,
        rectangle: impl Into<String>,
        parts: Vec<VerificationReport>,
    ) -> Self {
        let mut merged = Self::pass(identity, rectangle);
        for part in parts {
            if !part.passed && merged.passed {
                merged.passed = false;
                merged.counterexample = part.counterexample.map(|mut c| {
                    c.params = format!("{}: {}", part.identity, c.params);
                    c
                });
            }
        }
        merged
    }
}

/// Sweeps an exact equality `lhs(p, q) == rhs(p, q)` over the rectangle
/// `p_range x q_range`, skipping points outside the domain predicate.
/// Stops at the first counterexample.
#[allow(clippy::too_many_arguments)]
pub(crate) fn sweep_pair<D, L, R>(
    identity: &str,
    rectangle: String,
    p_name: &str,
    q_name: &str,
    p_range: std::ops::RangeInclusive<i64>,
    q_range: std::ops::RangeInclusive<i64>,
    domain: D,
    lhs: L,
    rhs: R,
) -> VerificationReport
where
    D: Fn(i64, i64) -> bool,
    L: Fn(i64, i64) -> BigInt,
    R: Fn(i64, i64) -> BigInt,
{
    for q in q_range {
        for p in p_range.clone() {
            if !domain(p, q) {
                continue;
            }
            let l = lhs(p, q);
            let r = rhs(p, q);
            if l != r {
                return VerificationReport::fail(
                    identity,
                    rectangle,
                    format!("{p_name}={p}, {q_name}={q}"),
                    &l,
                    &r,
                );
            }
        }
    }
    VerificationReport::pass(identity, rectangle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_reports_first_counterexample() {
        let rep = sweep_pair(
            "toy",
            "n in [0,5], k in [0,2]".into(),
            "n",
            "k",
            0..=5,
            0..=2,
            |_, _| true,
            |n, k| BigInt::from(n + k),
            |n, k| BigInt::from(if n == 3 && k == 1 { 0 } else { n + k }),
        );
        assert!(!rep.passed);
        let ce = rep.counterexample.unwrap();
        assert_eq!(ce.params, "n=3, k=1");
        assert_eq!(ce.lhs, "4");
        assert_eq!(ce.rhs, "0");
    }

    #[test]
    fn domain_predicate_skips_points() {
        let rep = sweep_pair(
            "toy",
            "".into(),
            "n",
            "k",
            0..=5,
            0..=5,
            |n, k| n >= k,
            |n, k| BigInt::from(n - k),
            |n, k| BigInt::from((n - k).abs()),
        );
        assert!(rep.passed);
    }

    #[test]
    fn merge_prefixes_sub_identity() {
        let good = VerificationReport::pass("a", "r");
        let bad =
            VerificationReport::fail("b", "r", "n=1".into(), &BigInt::from(1), &BigInt::from(2));
        let merged = VerificationReport::merge("all", "r", vec![good, bad]);
        assert!(!merged.passed);
        assert_eq!(merged.counterexample.unwrap().params, "b: n=1");
    }
}
