//! Recurrence specifications and exact term generation.
//!
//! A [`RecurrenceSpec`] describes an order-`d` integer linear recurrence
//! `u(n) = c_1 u(n-1) + ... + c_d u(n-d)` together with the initial values
//! `u(0)..u(d-1)`. Terms are produced by plain iteration, by binary
//! exponentiation of the companion matrix, or modulo `m` without ever
//! building the full integer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    coeffs: Vec<BigInt>,
    init: Vec<BigInt>,
    label: String,
}

impl RecurrenceSpec {
    /// Builds a spec from the coefficient list `c_1..c_d` and the initial
    /// values `u(0)..u(d-1)`. Rejects degenerate input: empty order,
    /// mismatched lengths, `c_d = 0`, or an identically-zero start.
    pub fn new<S: Into<String>>(coeffs: Vec<BigInt>, init: Vec<BigInt>, label: S) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSpec("order must be at least 1".into()));
        }
        if coeffs.len() != init.len() {
            return Err(Error::InvalidSpec(format!(
                "{} coefficients but {} initial values",
                coeffs.len(),
                init.len()
            )));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::InvalidSpec(
                "trailing coefficient c_d must be nonzero".into(),
            ));
        }
        if init.iter().all(Zero::is_zero) {
            return Err(Error::InvalidSpec("initial values are all zero".into()));
        }
        Ok(Self {
            coeffs,
            init,
            label: label.into(),
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn init(&self) -> &[BigInt] {
        &self.init
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Whether the recurrence extends to negative indices over the integers,
    /// i.e. `|c_d| = 1`.
    pub fn backward_ok(&self) -> bool {
        self.coeffs.last().unwrap().abs().is_one()
    }

    /// Exact term `u(n)`. Negative `n` is accepted only when `|c_d| = 1`.
    pub fn term(&self, n: i64) -> Result<BigInt> {
        Ok(self.range_values(n, 1)?.pop().unwrap())
    }

    /// Exact terms `u(from), u(from+1), ..., u(from+count-1)` in one pass.
    pub fn terms(&self, from: i64, count: usize) -> Result<Vec<BigInt>> {
        self.range_values(from, count as i64)
    }

    /// Sum of `len` consecutive terms starting at index `start`.
    pub fn window_sum(&self, start: i64, len: u32) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for v in self.range_values(start, len as i64)? {
            acc += v;
        }
        Ok(acc)
    }

    /// `u(n)` via binary exponentiation of the companion matrix applied to
    /// the initial state vector.
    pub fn term_by_matrix(&self, n: u64) -> BigInt {
        let d = self.order();
        let m = CompanionMatrix::of(self);
        let p = mat_pow(m.data(), d, n);
        // state(0) as a column: (u(d-1), ..., u(0)); u(n) is the last row
        // of P * state(0).
        let mut acc = BigInt::zero();
        for j in 0..d {
            acc += &p[(d - 1) * d + j] * &self.init[d - 1 - j];
        }
        acc
    }

    /// `u(n) mod m` computed on residues only. Requires `m >= 2`.
    pub fn term_mod(&self, n: u64, m: u64) -> Result<u64> {
        if m < 2 {
            return Err(Error::BadModulus { got: m, min: 2 });
        }
        let r = self.residues(n as usize + 1, m)?;
        Ok(r[n as usize])
    }

    /// First `count` residues of the sequence modulo `m` (`m >= 1`).
    pub fn residues(&self, count: usize, m: u64) -> Result<Vec<u64>> {
        if m < 1 {
            return Err(Error::BadModulus { got: m, min: 1 });
        }
        let d = self.order();
        let big_m = BigInt::from(m);
        let to_res = |v: &BigInt| -> u64 { v.mod_floor(&big_m).to_u64().unwrap() };
        let c: Vec<u64> = self.coeffs.iter().map(to_res).collect();
        let mut out: Vec<u64> = self.init.iter().take(count).map(to_res).collect();
        for n in d..count {
            let mut acc: u128 = 0;
            for i in 0..d {
                acc = (acc + c[i] as u128 * out[n - 1 - i] as u128) % m as u128;
            }
            out.push(acc as u64);
        }
        out.truncate(count);
        Ok(out)
    }

    /// First index from which every later term within the sampled prefix is
    /// nonzero; used as the default sweep start when ratios must be
    /// well-defined. Leading zeros of the seeded families end here.
    pub fn support_start(&self) -> i64 {
        let probe = 4 * self.order() + 8;
        let vals = self
            .range_values(0, probe as i64)
            .expect("non-negative range");
        let mut start = 0i64;
        for (i, v) in vals.iter().enumerate() {
            if v.is_zero() {
                start = i as i64 + 1;
            }
        }
        start
    }

    /// Values for indices `from, from+1, ..., from+count-1`.
    fn range_values(&self, from: i64, count: i64) -> Result<Vec<BigInt>> {
        if count < 0 {
            return Err(Error::InvalidRange("negative count".into()));
        }
        let d = self.order() as i64;
        let hi = from + count; // exclusive
        let mut out: Vec<BigInt> = Vec::with_capacity(count as usize);
        if from < 0 && !self.backward_ok() {
            return Err(Error::BackwardExtension {
                n: from,
                last_coeff: self.coeffs.last().unwrap().to_string(),
            });
        }

        // Backward portion: walk the window u(t..t+d) down from t = 0.
        if from < 0 {
            let cd = self.coeffs.last().unwrap();
            let mut window: Vec<BigInt> = self.init.clone(); // u(t..t+d), t = 0
            let mut t = 0i64;
            let mut rev: Vec<BigInt> = Vec::new();
            while t > from {
                // u(t-1) = (u(t+d-1) - sum_{i=1..d-1} c_i u(t+d-1-i)) / c_d
                let mut v = window[d as usize - 1].clone();
                for i in 1..d as usize {
                    v -= &self.coeffs[i - 1] * &window[d as usize - 1 - i];
                }
                let prev = v / cd;
                window.pop();
                window.insert(0, prev.clone());
                t -= 1;
                if t < hi {
                    rev.push(prev);
                }
            }
            out.extend(rev.into_iter().rev());
        }

        // Forward portion.
        if hi > 0 {
            let lo = from.max(0);
            let mut window: Vec<BigInt> = self.init.clone();
            for (n, v) in window.iter().enumerate() {
                let n = n as i64;
                if n >= lo && n < hi {
                    out.push(v.clone());
                }
            }
            let mut n = d;
            while n < hi {
                let mut v = BigInt::zero();
                for i in 0..d as usize {
                    v += &self.coeffs[i] * &window[d as usize - 1 - i];
                }
                window.rotate_left(1);
                window[d as usize - 1] = v.clone();
                if n >= lo {
                    out.push(v);
                }
                n += 1;
            }
        }
        debug_assert_eq!(out.len(), count as usize);
        Ok(out)
    }
}

impl std::fmt::Display for RecurrenceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label)
    }
}

/// The `d x d` matrix with the coefficient list as first row and ones on the
/// subdiagonal; its powers drive the state vector of the recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionMatrix {
    dim: usize,
    data: Vec<BigInt>,
}

impl CompanionMatrix {
    pub fn of(spec: &RecurrenceSpec) -> Self {
        let d = spec.order();
        let mut data = vec![BigInt::zero(); d * d];
        for (j, c) in spec.coeffs().iter().enumerate() {
            data[j] = c.clone();
        }
        for r in 1..d {
            data[r * d + (r - 1)] = BigInt::one();
        }
        Self { dim: d, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.data[row * self.dim + col]
    }

    pub fn data(&self) -> &[BigInt] {
        &self.data
    }

    /// Exact determinant by cofactor expansion along the first row, skipping
    /// zero entries. Dimensions here stay in single digits.
    pub fn determinant(&self) -> BigInt {
        mat_det(&self.data, self.dim)
    }

    pub fn pow(&self, e: u64) -> Vec<BigInt> {
        mat_pow(&self.data, self.dim, e)
    }
}

fn mat_mul(a: &[BigInt], b: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = &a[i * d + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..d {
                let prod = aik * &b[k * d + j];
                out[i * d + j] += prod;
            }
        }
    }
    out
}

fn mat_pow(m: &[BigInt], d: usize, mut e: u64) -> Vec<BigInt> {
    let mut result = vec![BigInt::zero(); d * d];
    for i in 0..d {
        result[i * d + i] = BigInt::one();
    }
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base, d);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base, d);
        }
    }
    result
}

fn mat_det(m: &[BigInt], d: usize) -> BigInt {
    if d == 1 {
        return m[0].clone();
    }
    let mut det = BigInt::zero();
    for j in 0..d {
        let a = &m[j];
        if a.is_zero() {
            continue;
        }
        let mut minor = Vec::with_capacity((d - 1) * (d - 1));
        for r in 1..d {
            for c in 0..d {
                if c != j {
                    minor.push(m[r * d + c].clone());
                }
            }
        }
        let cof = a * mat_det(&minor, d - 1);
        if j % 2 == 0 {
            det += cof;
        } else {
            det -= cof;
        }
    }
    det
}

/// Precomputed terms `u(0)..u(max)` with prefix sums, for horizon sweeps
/// where repeated window sums would otherwise dominate.
#[derive(Debug, Clone)]
pub struct TermTable {
    terms: Vec<BigInt>,
    prefix: Vec<BigInt>,
}

impl TermTable {
    pub fn build(spec: &RecurrenceSpec, max_index: i64) -> Self {
        let terms = spec
            .terms(0, (max_index + 1) as usize)
            .expect("non-negative range");
        let mut prefix = Vec::with_capacity(terms.len() + 1);
        prefix.push(BigInt::zero());
        for t in &terms {
            let last = prefix.last().unwrap().clone();
            prefix.push(last + t);
        }
        Self { terms, prefix }
    }

    pub fn max_index(&self) -> i64 {
        self.terms.len() as i64 - 1
    }

    pub fn t(&self, n: i64) -> &BigInt {
        &self.terms[n as usize]
    }

    /// Sum of `len` consecutive terms starting at `start`.
    pub fn window(&self, start: i64, len: i64) -> BigInt {
        &self.prefix[(start + len) as usize] - &self.prefix[start as usize]
    }
}

// ---------------------------------------------------------------------------
// Seeded families
// ---------------------------------------------------------------------------

pub fn pell() -> RecurrenceSpec {
    RecurrenceSpec::new(vec![2.into(), 1.into()], vec![0.into(), 1.into()], "pell").unwrap()
}

pub fn fibonacci() -> RecurrenceSpec {
    RecurrenceSpec::new(
        vec![1.into(), 1.into()],
        vec![0.into(), 1.into()],
        "fibonacci",
    )
    .unwrap()
}

pub fn lucas() -> RecurrenceSpec {
    RecurrenceSpec::new(vec![1.into(), 1.into()], vec![2.into(), 1.into()], "lucas").unwrap()
}

pub fn pell_lucas() -> RecurrenceSpec {
    RecurrenceSpec::new(
        vec![2.into(), 1.into()],
        vec![2.into(), 2.into()],
        "pellLucas",
    )
    .unwrap()
}

/// First-kind family `U(n) = r U(n-1) + s U(n-2)`, `U(0)=0, U(1)=1`.
pub fn lucas_u(r: i64, s: i64) -> Result<RecurrenceSpec> {
    if s == 0 {
        return Err(Error::InvalidSpec("lucasU requires s != 0".into()));
    }
    RecurrenceSpec::new(
        vec![r.into(), s.into()],
        vec![0.into(), 1.into()],
        format!("lucasU({r},{s})"),
    )
}

/// Second-kind family `V(n) = r V(n-1) + s V(n-2)`, `V(0)=2, V(1)=r`.
pub fn lucas_v(r: i64, s: i64) -> Result<RecurrenceSpec> {
    if s == 0 {
        return Err(Error::InvalidSpec("lucasV requires s != 0".into()));
    }
    RecurrenceSpec::new(
        vec![r.into(), s.into()],
        vec![2.into(), r.into()],
        format!("lucasV({r},{s})"),
    )
}

/// Order-(k+1) family `p(n) = 2 p(n-1) + p(n-k-1)` seeded with `i+1` zeros
/// followed by ones; requires `0 <= i <= k-1`.
pub fn gen_pell(k: u32, i: u32) -> Result<RecurrenceSpec> {
    if k < 1 {
        return Err(Error::InvalidSpec("genPell requires k >= 1".into()));
    }
    if i > k - 1 {
        return Err(Error::InvalidSpec(format!(
            "genPell({k},{i}): i must lie in [0, {}]",
            k - 1
        )));
    }
    let d = (k + 1) as usize;
    let mut coeffs = vec![BigInt::zero(); d];
    coeffs[0] = 2.into();
    coeffs[d - 1] = 1.into();
    let init = (0..d)
        .map(|n| {
            if n as u32 <= i {
                BigInt::zero()
            } else {
                BigInt::one()
            }
        })
        .collect();
    RecurrenceSpec::new(coeffs, init, format!("genPell({k},{i})"))
}

/// Order-k family summing the previous k terms, seeded with `k-1` zeros and
/// a single one. Index 0 here corresponds to the customary index 1.
pub fn gen_fib(k: u32) -> Result<RecurrenceSpec> {
    if k < 1 {
        return Err(Error::InvalidSpec("genFib requires k >= 1".into()));
    }
    let d = k as usize;
    let coeffs = vec![BigInt::one(); d];
    let mut init = vec![BigInt::zero(); d];
    init[d - 1] = BigInt::one();
    RecurrenceSpec::new(coeffs, init, format!("genFib({k})"))
}

/// Resolves a textual selector such as `pell`, `lucasU(3,-1)`, or
/// `genPell(2,1)` to its spec.
pub fn builtin(selector: &str) -> Result<RecurrenceSpec> {
    let s = selector.trim();
    let (name, args) = match s.find('(') {
        Some(p) => {
            let rest = &s[p + 1..];
            let close = rest
                .find(')')
                .ok_or_else(|| Error::UnknownSequence(s.to_string()))?;
            let args: Vec<i64> = rest[..close]
                .split(',')
                .map(|a| a.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::UnknownSequence(s.to_string()))?;
            (&s[..p], args)
        }
        None => (s, Vec::new()),
    };
    let need = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!(
                "{name} expects {n} parameter(s), got {}",
                args.len()
            )))
        }
    };
    match name.to_ascii_lowercase().as_str() {
        "pell" => {
            need(0)?;
            Ok(pell())
        }
        "fibonacci" | "fib" => {
            need(0)?;
            Ok(fibonacci())
        }
        "lucas" => {
            need(0)?;
            Ok(lucas())
        }
        "pelllucas" | "pell-lucas" => {
            need(0)?;
            Ok(pell_lucas())
        }
        "lucasu" => {
            need(2)?;
            lucas_u(args[0], args[1])
        }
        "lucasv" => {
            need(2)?;
            lucas_v(args[0], args[1])
        }
        "genpell" => {
            need(2)?;
            if args[0] < 1 || args[1] < 0 {
                return Err(Error::InvalidSpec(format!(
                    "genPell({},{}) out of range",
                    args[0], args[1]
                )));
            }
            gen_pell(args[0] as u32, args[1] as u32)
        }
        "genfib" => {
            need(1)?;
            if args[0] < 1 {
                return Err(Error::InvalidSpec(format!(
                    "genFib({}) out of range",
                    args[0]
                )));
            }
            gen_fib(args[0] as u32)
        }
        _ => Err(Error::UnknownSequence(selector.to_string())),
    }
}
