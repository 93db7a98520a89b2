//! Order-(k+1) and order-k specifics: the 2k+2 window identity, scans for
//! further windows, odd-window constraint checks, and the growth bounds
//! for the order-k family.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::relations::search_relation;
use crate::report::{sweep_pair, VerificationReport};
use crate::sequences::{self, CompanionMatrix, TermTable};

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FoundWindow {
    pub window: u32,
    #[serde(serialize_with = "ser_bigint")]
    pub constant: BigInt,
    pub offset: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureScanResult {
    pub k: u32,
    pub i: u32,
    pub window_range: (u32, u32),
    pub horizon: i64,
    pub found_windows: Vec<FoundWindow>,
}

/// `sum_{j=0}^{2k+1} p(n+j) = 4 p(n+2k)` for the `(k, i)` seed over
/// `n in [k, n_max]`.
pub fn gen_pell_sum_check(k: u32, i: u32, n_max: i64) -> Result<VerificationReport> {
    let spec = sequences::gen_pell(k, i)?;
    let t = TermTable::build(&spec, n_max + 2 * k as i64 + 2);
    let kk = k as i64;
    Ok(sweep_pair(
        &format!("gen-pell-sum(k={k},i={i})"),
        format!("n in [{k},{n_max}]"),
        "n",
        "k",
        kk..=n_max,
        kk..=kk,
        |_, _| true,
        |n, _| t.window(n, 2 * kk + 2),
        |n, _| BigInt::from(4) * t.t(n + 2 * kk),
    ))
}

/// Scans every nontrivial window length `2..=window_max` for a fixed
/// integer-multiple relation. Evidence-gathering only: entries are
/// certified up to the horizon, not proven beyond it.
pub fn conjecture_scan(
    k: u32,
    i: u32,
    window_max: u32,
    horizon: i64,
) -> Result<ConjectureScanResult> {
    if k < 2 {
        return Err(Error::InvalidRange(
            "conjecture scan requires k >= 2".into(),
        ));
    }
    let spec = sequences::gen_pell(k, i)?;
    let mut found = Vec::new();
    for w in 2..=window_max {
        let v = search_relation(&spec, w, None, horizon, None)?;
        if v.found {
            found.push(FoundWindow {
                window: w,
                constant: v.constant.unwrap(),
                offset: v.offset.unwrap(),
            });
        }
    }
    Ok(ConjectureScanResult {
        k,
        i,
        window_range: (2, window_max),
        horizon,
        found_windows: found,
    })
}

/// Joint report for the odd-window scans of the `(k, k-1)` seed.
#[derive(Debug, Clone, Serialize)]
pub struct OddWindowReport {
    pub k: u32,
    /// Odd window lengths swept (3, 5, ...).
    pub windows: Vec<u32>,
    pub horizon: i64,
    /// Relations found among those windows; expected empty.
    pub relations_found: Vec<FoundWindow>,
    /// Even-k path: the early-term closed forms held.
    pub early_terms_ok: Option<bool>,
    /// Even-k path: residues modulo 2 match the block pattern.
    pub mod2_ok: Option<bool>,
    /// Odd-k path: companion determinant, expected -1.
    pub determinant: Option<i64>,
    /// Found relations breaking the odd-constant or window-size
    /// constraints; meaningful only if `relations_found` is nonempty.
    pub constraint_violations: Vec<String>,
}

fn odd_windows_up_to(max: u32) -> Vec<u32> {
    (3..=max).step_by(2).collect()
}

fn scan_windows(
    spec: &sequences::RecurrenceSpec,
    windows: &[u32],
    horizon: i64,
) -> Result<Vec<FoundWindow>> {
    let mut found = Vec::new();
    for &w in windows {
        let v = search_relation(spec, w, None, horizon, None)?;
        if v.found {
            found.push(FoundWindow {
                window: w,
                constant: v.constant.unwrap(),
                offset: v.offset.unwrap(),
            });
        }
    }
    Ok(found)
}

/// Residues modulo 2 of the `(k, k-1)` seed follow the block pattern:
/// 1 exactly when `k+1` divides `n+1`.
pub fn gen_pell_mod2_matches(k: u32, n_max: u64) -> Result<bool> {
    let spec = sequences::gen_pell(k, k - 1)?;
    let res = spec.residues(n_max as usize + 1, 2)?;
    for (n, &r) in res.iter().enumerate() {
        let want = u64::from((n as u64 + 1).is_multiple_of(k as u64 + 1));
        if r != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Early terms of the `(k, k-1)` seed: `p(k+i) = 2^i` for `1 <= i <= k`,
/// then `2^(k+1)+1`, `2^(k+2)+4`, `2^(k+3)+12` (the last three for
/// `k >= 2`).
pub fn early_term_closed_forms(k: u32) -> Result<bool> {
    let spec = sequences::gen_pell(k, k - 1)?;
    let kk = k as i64;
    let t = spec.terms(0, (2 * kk + 4) as usize)?;
    for i in 1..=kk {
        if t[(kk + i) as usize] != BigInt::from(2).pow(i as u32) {
            return Ok(false);
        }
    }
    if k >= 2 {
        let two = |e: u32| BigInt::from(2).pow(e);
        if t[(2 * kk + 1) as usize] != two(k + 1) + BigInt::one()
            || t[(2 * kk + 2) as usize] != two(k + 2) + BigInt::from(4)
            || t[(2 * kk + 3) as usize] != two(k + 3) + BigInt::from(12)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Even `k`: checks the early-term closed forms and the mod-2 block
/// pattern, then scans odd windows. Any relation that did turn up must
/// carry an odd constant and a window beyond `2k+2`.
pub fn odd_window_constraints(
    k: u32,
    odd_window_max: u32,
    horizon: i64,
) -> Result<OddWindowReport> {
    if !k.is_multiple_of(2) || k == 0 {
        return Err(Error::InvalidRange(format!(
            "odd-window constraint check applies to even k >= 2, got {k}"
        )));
    }
    let spec = sequences::gen_pell(k, k - 1)?;
    let windows = odd_windows_up_to(odd_window_max);
    let relations_found = scan_windows(&spec, &windows, horizon)?;
    let mut violations = Vec::new();
    for f in &relations_found {
        if f.constant.is_even() {
            violations.push(format!("window {}: even constant {}", f.window, f.constant));
        }
        if f.window <= 2 * k + 2 {
            violations.push(format!(
                "window {} does not exceed 2k+2 = {}",
                f.window,
                2 * k + 2
            ));
        }
    }
    Ok(OddWindowReport {
        k,
        windows,
        horizon,
        relations_found,
        early_terms_ok: Some(early_term_closed_forms(k)?),
        mod2_ok: Some(gen_pell_mod2_matches(k, 300)?),
        determinant: None,
        constraint_violations: violations,
    })
}

/// Odd `k`: the companion determinant is -1, so the period-parity argument
/// carries over; the scan double-checks that no odd window admits a
/// relation.
pub fn gen_pell_odd_window(k: u32, odd_window_max: u32, horizon: i64) -> Result<OddWindowReport> {
    if k.is_multiple_of(2) {
        return Err(Error::InvalidRange(format!(
            "determinant-parity check applies to odd k, got {k}"
        )));
    }
    let spec = sequences::gen_pell(k, k - 1)?;
    let det = CompanionMatrix::of(&spec).determinant();
    let windows = odd_windows_up_to(odd_window_max);
    let relations_found = scan_windows(&spec, &windows, horizon)?;
    Ok(OddWindowReport {
        k,
        windows,
        horizon,
        relations_found,
        early_terms_ok: None,
        mod2_ok: None,
        determinant: Some(if det == BigInt::from(-1) { -1 } else { 1 }),
        constraint_violations: Vec::new(),
    })
}

/// Growth bounds for the order-k family: cumulative sums stay below the
/// term two past the range, the term ratio stays below 2, and odd windows
/// are sandwiched between twice their closing terms.
pub fn gen_fib_checks(k: u32, r_max: i64) -> Result<VerificationReport> {
    if k < 2 {
        return Err(Error::InvalidRange("growth checks require k >= 2".into()));
    }
    let spec = sequences::gen_fib(k)?;
    let t = TermTable::build(&spec, r_max + 2);
    let kk = k as i64;
    let rect = format!("k={k}, r in [0,{r_max}]");
    let lt = |good: bool| -> BigInt { BigInt::from(if good { 1 } else { 0 }) };
    let parts = vec![
        sweep_pair(
            "cumulative-bound",
            rect.clone(),
            "r",
            "k",
            (2 * kk + 2)..=(r_max - 2),
            kk..=kk,
            |_, _| true,
            |r, _| lt(t.window(0, r + 1) < *t.t(r + 2)),
            |_, _| BigInt::one(),
        ),
        sweep_pair(
            "ratio-bound",
            rect.clone(),
            "n",
            "k",
            (2 * kk + 2)..=(r_max - 1),
            kk..=kk,
            |_, _| true,
            |n, _| lt(*t.t(n + 1) < BigInt::from(2) * t.t(n)),
            |_, _| BigInt::one(),
        ),
        sweep_pair(
            "window-sandwich",
            rect.clone(),
            "n",
            "2N",
            0..=(r_max - 2),
            (kk + 2)..=(r_max / 2),
            |n, two_n| two_n % 2 == 0 && n >= 2 * kk - two_n + 2 && n + two_n < r_max,
            |n, two_n| {
                let sum = t.window(n, two_n + 1);
                let lo = BigInt::from(2) * t.t(n + two_n);
                let hi = BigInt::from(2) * t.t(n + two_n + 1);
                lt(lo < sum && sum < hi)
            },
            |_, _| BigInt::one(),
        ),
    ];
    Ok(VerificationReport::merge(
        format!("gen-fib-growth(k={k})"),
        rect,
        parts,
    ))
}

/// Odd-window scan for the order-k family with even `k`. Windows past
/// `k+2` must admit no relation; shorter odd windows are reported on the
/// side, where the order-2 three-term doubling lives.
#[derive(Debug, Clone, Serialize)]
pub struct GenFibOddScan {
    pub k: u32,
    pub horizon: i64,
    pub scanned_windows: Vec<u32>,
    /// Relations on odd windows longer than k+2; expected empty.
    pub violations: Vec<FoundWindow>,
    /// Relations on odd windows of length at most k+2.
    pub small_window_findings: Vec<FoundWindow>,
}

pub fn gen_fib_odd_window_scan(k: u32, odd_window_max: u32, horizon: i64) -> Result<GenFibOddScan> {
    if !k.is_multiple_of(2) || k == 0 {
        return Err(Error::InvalidRange(format!(
            "odd-window scan applies to even k >= 2, got {k}"
        )));
    }
    let spec = sequences::gen_fib(k)?;
    let windows = odd_windows_up_to(odd_window_max);
    let mut violations = Vec::new();
    let mut small = Vec::new();
    for &w in &windows {
        let v = search_relation(&spec, w, None, horizon, None)?;
        if v.found {
            let f = FoundWindow {
                window: w,
                constant: v.constant.unwrap(),
                offset: v.offset.unwrap(),
            };
            if w > k + 2 {
                violations.push(f);
            } else {
                small.push(f);
            }
        }
    }
    Ok(GenFibOddScan {
        k,
        horizon,
        scanned_windows: windows,
        violations,
        small_window_findings: small,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_check_small_cases() {
        // k=1 reduces to the classical window of four
        assert!(gen_pell_sum_check(1, 0, 80).unwrap().passed);
        let rep = gen_pell_sum_check(2, 1, 80).unwrap();
        assert!(rep.passed, "{:?}", rep.counterexample);
        assert!(gen_pell_sum_check(3, 2, 80).unwrap().passed);
        assert!(gen_pell_sum_check(3, 0, 80).unwrap().passed);
    }

    #[test]
    fn conjecture_scan_k2() {
        for i in [0, 1] {
            let r = conjecture_scan(2, i, 20, 200).unwrap();
            assert_eq!(
                r.found_windows,
                vec![FoundWindow {
                    window: 6,
                    constant: BigInt::from(4),
                    offset: 4,
                }],
                "i={i}"
            );
        }
        assert!(conjecture_scan(1, 0, 10, 100).is_err());
    }

    #[test]
    fn conjecture_scan_k3() {
        let r = conjecture_scan(3, 2, 20, 200).unwrap();
        assert_eq!(
            r.found_windows,
            vec![FoundWindow {
                window: 8,
                constant: BigInt::from(4),
                offset: 6,
            }]
        );
    }

    #[test]
    fn mod2_block_pattern() {
        for k in 1..=6 {
            assert!(gen_pell_mod2_matches(k, 300).unwrap(), "k={k}");
        }
    }

    #[test]
    fn even_k_constraints() {
        let rep = odd_window_constraints(2, 15, 200).unwrap();
        assert_eq!(rep.early_terms_ok, Some(true));
        assert_eq!(rep.mod2_ok, Some(true));
        assert!(rep.relations_found.is_empty());
        assert!(rep.constraint_violations.is_empty());
        let rep = odd_window_constraints(4, 15, 200).unwrap();
        assert!(rep.relations_found.is_empty());
        assert!(odd_window_constraints(3, 15, 200).is_err());
    }

    #[test]
    fn odd_k_determinant_path() {
        let rep = gen_pell_odd_window(3, 15, 200).unwrap();
        assert_eq!(rep.determinant, Some(-1));
        assert!(rep.relations_found.is_empty());
        let rep = gen_pell_odd_window(1, 15, 200).unwrap();
        assert!(rep.relations_found.is_empty());
        assert!(gen_pell_odd_window(2, 15, 200).is_err());
    }

    #[test]
    fn growth_checks_tribonacci_sample() {
        // k=3, r=8: cumulative sum 52 stays below term 81 two past the end
        let f = sequences::gen_fib(3).unwrap();
        assert_eq!(f.window_sum(0, 9).unwrap(), BigInt::from(52));
        assert_eq!(f.term(10).unwrap(), BigInt::from(81));
        for k in [2, 3, 4] {
            let rep = gen_fib_checks(k, 150).unwrap();
            assert!(rep.passed, "k={k}: {:?}", rep.counterexample);
        }
    }

    #[test]
    fn gen_fib_odd_windows() {
        let scan = gen_fib_odd_window_scan(2, 15, 200).unwrap();
        assert!(scan.violations.is_empty());
        // order-2 three-term doubling shows up as the small-window finding
        assert_eq!(
            scan.small_window_findings,
            vec![FoundWindow {
                window: 3,
                constant: BigInt::from(2),
                offset: 2,
            }]
        );
        let scan = gen_fib_odd_window_scan(4, 15, 200).unwrap();
        assert!(scan.violations.is_empty());
        assert!(gen_fib_odd_window_scan(3, 15, 200).is_err());
    }
}
