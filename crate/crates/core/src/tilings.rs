//! Combinatorial cross-validation: tilings of a 1 x n board with colored
//! unit squares and one longer polyomino shape.
//!
//! With `a` square colors and `b` polyomino kinds of length `k+1`, the
//! number of tilings satisfies `p(n) = a p(n-1) + b p(n-k-1)`, which ties
//! the boards to the order-(k+1) sequences: `p(n)` with weights (2, 1)
//! equals the `(k, k-1)` seed shifted by `k`. Exhaustive enumeration
//! provides the independent count for the dynamic program.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::report::{sweep_pair, VerificationReport};

/// Hard ceiling on how many tilings the exhaustive walk will visit.
pub const ENUMERATION_CAP: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TilingConfig {
    /// Polyomino length is `k + 1`.
    pub k: u32,
    pub board_len: u32,
    /// Number of unit-square colors (`a`).
    pub square_weight: u32,
    /// Number of polyomino kinds (`b`), read as distinguishable pieces so
    /// the enumeration stays exhaustive; the counts agree with the purely
    /// weighted reading.
    pub omino_weight: u32,
}

impl TilingConfig {
    pub fn new(k: u32, board_len: u32, square_weight: u32, omino_weight: u32) -> Result<Self> {
        if k < 1 || square_weight < 1 || omino_weight < 1 {
            return Err(Error::InvalidRange(
                "tiling config requires k >= 1 and positive weights".into(),
            ));
        }
        Ok(Self {
            k,
            board_len,
            square_weight,
            omino_weight,
        })
    }
}

/// One piece of a tiling, in board order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    Square { color: u32 },
    Omino { kind: u32, len: u32 },
}

impl Piece {
    fn encode(&self, cfg: &TilingConfig) -> String {
        match *self {
            Piece::Square { color } => {
                if cfg.square_weight == 2 {
                    if color == 0 {
                        "B".into()
                    } else {
                        "W".into()
                    }
                } else {
                    format!("S{color}")
                }
            }
            Piece::Omino { kind, len } => {
                if cfg.omino_weight == 1 {
                    format!("G{len}")
                } else {
                    format!("G{len}.{kind}")
                }
            }
        }
    }
}

/// Count by the recurrence `p(n) = a p(n-1) + b p(n-k-1)`, `p(0) = 1`.
pub fn count_dp(cfg: &TilingConfig) -> BigInt {
    count_table(cfg, cfg.board_len)
        .pop()
        .expect("table has board_len + 1 entries")
}

/// `p(0)..p(max)` for the given weights.
pub fn count_table(cfg: &TilingConfig, max: u32) -> Vec<BigInt> {
    let a = BigInt::from(cfg.square_weight);
    let b = BigInt::from(cfg.omino_weight);
    let span = cfg.k as usize + 1;
    let mut p: Vec<BigInt> = Vec::with_capacity(max as usize + 1);
    p.push(BigInt::one());
    for n in 1..=max as usize {
        let mut v = &a * &p[n - 1];
        if n >= span {
            v += &b * &p[n - span];
        }
        p.push(v);
    }
    p
}

fn check_enumerable(cfg: &TilingConfig) -> Result<()> {
    if cfg.square_weight > 4 {
        return Err(Error::InvalidRange(
            "enumeration supports at most 4 square colors".into(),
        ));
    }
    let expected = count_dp(cfg);
    if expected.to_u64().is_none_or(|c| c > ENUMERATION_CAP) {
        return Err(Error::EnumerationTooLarge {
            count: expected.to_string(),
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// Exhaustive count: walks every tiling piece by piece. Independent of the
/// recurrence on purpose; [`count_dp`] must agree wherever this is
/// feasible.
pub fn enumerate(cfg: &TilingConfig) -> Result<u64> {
    check_enumerable(cfg)?;
    fn walk(rem: u32, cfg: &TilingConfig) -> u64 {
        if rem == 0 {
            return 1;
        }
        let mut total = 0u64;
        for _color in 0..cfg.square_weight {
            total += walk(rem - 1, cfg);
        }
        if rem > cfg.k {
            for _kind in 0..cfg.omino_weight {
                total += walk(rem - cfg.k - 1, cfg);
            }
        }
        total
    }
    Ok(walk(cfg.board_len, cfg))
}

/// Exhaustive listing in lexicographic piece order, one encoded tiling per
/// entry: colors as `B`/`W` (or `S<i>`), ominoes as `G<len>`.
pub fn enumerate_listing(cfg: &TilingConfig) -> Result<Vec<String>> {
    check_enumerable(cfg)?;
    let mut out = Vec::new();
    let mut path: Vec<Piece> = Vec::new();
    fn walk(rem: u32, cfg: &TilingConfig, path: &mut Vec<Piece>, out: &mut Vec<String>) {
        if rem == 0 {
            let line: Vec<String> = path.iter().map(|p| p.encode(cfg)).collect();
            out.push(line.join(" "));
            return;
        }
        for color in 0..cfg.square_weight {
            path.push(Piece::Square { color });
            walk(rem - 1, cfg, path, out);
            path.pop();
        }
        if rem > cfg.k {
            for kind in 0..cfg.omino_weight {
                path.push(Piece::Omino {
                    kind,
                    len: cfg.k + 1,
                });
                walk(rem - cfg.k - 1, cfg, path, out);
                path.pop();
            }
        }
    }
    walk(cfg.board_len, cfg, &mut path, &mut out);
    Ok(out)
}

/// Conditioning on the last unit square: for every residue `r in [0, k]`,
///
/// `p((k+1)n + r + 1) = a * sum_{m=0}^{n} b^(n-m) p(m(k+1) + r)`,
///
/// plus `b^(n+1)` exactly when `r = k`, where the all-omino tiling of the
/// fully divisible board contributes one choice per block. With one omino
/// kind the extra term is the familiar `+1`.
pub fn block_sum_check(k: u32, n_max: u32, a: u32, b: u32) -> Result<VerificationReport> {
    let cfg = TilingConfig::new(k, 0, a, b)?;
    let p = count_table(&cfg, n_max);
    let span = k as i64 + 1;
    let big_b = BigInt::from(b);
    let rect = format!("k={k}, (a,b)=({a},{b}), indices up to {n_max}");
    let mut parts = Vec::new();
    for r in 0..=k as i64 {
        parts.push(sweep_pair(
            &format!("block-sum(r={r})"),
            rect.clone(),
            "n",
            "r",
            0..=((n_max as i64 - r - 1) / span),
            r..=r,
            |n, r| span * n + r < n_max as i64,
            |n, r| p[(span * n + r + 1) as usize].clone(),
            |n, r| {
                let mut acc = BigInt::zero();
                let mut power = BigInt::one();
                // m runs downward so the factor b^(n-m) builds up
                for m in (0..=n).rev() {
                    acc += &power * &p[(m * span + r) as usize];
                    power *= &big_b;
                }
                let mut rhs = BigInt::from(a) * acc;
                if r == k as i64 {
                    rhs += big_b.pow(n as u32 + 1);
                }
                rhs
            },
        ));
    }
    if a == 2 && b == 1 {
        // consequence: cumulative sums fold into a short window one step up
        parts.push(sweep_pair(
            "cumulative-window",
            rect.clone(),
            "M",
            "k",
            -1..=(n_max as i64 - 1),
            (k as i64)..=(k as i64),
            |_, _| true,
            |m, _| {
                let mut acc = BigInt::one();
                for j in 0..=m {
                    acc += BigInt::from(2) * &p[j as usize];
                }
                acc
            },
            |m, kk| {
                let mut acc = BigInt::zero();
                for j in (m - kk + 1)..=(m + 1) {
                    if j >= 0 {
                        acc += &p[j as usize];
                    }
                }
                acc
            },
        ));
    }
    Ok(VerificationReport::merge(
        format!("block-sum(k={k},a={a},b={b})"),
        rect,
        parts,
    ))
}
