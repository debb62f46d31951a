//! Figurate triangles built around the cube coefficient `U(n,k) = 6nk - 6k^2 + 1`
//! (OEIS A287326) and its relatives: Pascal, Rascal, the `2^k`-scaled Pascal
//! triangle, the geometric-row triangles `V_M`, and the two reduced triangles
//! obtained by removing `n^2` and then `n` from the interior of the `U` rows.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::{binom, int_pow, serde_exact, ExactInt};

/// `U(n,k) = 6nk - 6k^2 + 1`, evaluated for any integers (not only `0 <= k <= n`).
pub fn u_coeff(n: impl Into<ExactInt>, k: impl Into<ExactInt>) -> ExactInt {
    let n = n.into();
    let k = k.into();
    ExactInt::from(6) * &k * (n - &k) + 1
}

/// Rascal triangle entry, obtained from `U = 6 * rascal - 5`.
pub fn rascal(n: impl Into<ExactInt>, k: impl Into<ExactInt>) -> ExactInt {
    let shifted: ExactInt = u_coeff(n, k) + 5;
    let (q, r) = shifted.div_rem(&ExactInt::from(6));
    assert!(r.is_zero(), "U(n,k) + 5 is always a multiple of 6");
    q
}

/// `V_M(n,k)`: `n^0 + n^1 + ... + n^M` for `0 < k < n`, and `1` on the row boundary.
pub fn v_coeff(m: u32, n: impl Into<ExactInt>, k: impl Into<ExactInt>) -> Result<ExactInt> {
    let n = n.into();
    let k = k.into();
    if k < ExactInt::zero() || k > n {
        return Err(domain(format!("V_{m}({n},{k}): k must lie in [0, n]")));
    }
    if k.is_zero() || k == n {
        return Ok(ExactInt::one());
    }
    Ok((0..=m).map(|i| int_pow(&n, i)).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleKind {
    /// `U(n,k)`, OEIS A287326.
    U,
    /// `C(n,k)`, OEIS A007318.
    Pascal,
    /// `nk - k^2 + 1`, OEIS A077028.
    Rascal,
    /// `C(n,k) * 2^k`.
    ScaledPascal2k,
    /// `V_M(n,k)` for the given `M`.
    V(u32),
    /// `U(n,k) - n^2` inside the row, `1` on the boundary.
    Reduced1,
    /// `U(n,k) - n^2 - n` inside the row, `1` on the boundary.
    Reduced2,
    /// All ones, OEIS A000012.
    Ones,
}

impl TriangleKind {
    pub fn entry(self, n: u64, k: u64) -> ExactInt {
        debug_assert!(k <= n);
        let boundary = k == 0 || k == n;
        match self {
            TriangleKind::U => u_coeff(n, k),
            TriangleKind::Pascal => binom(n, k as i64),
            TriangleKind::Rascal => rascal(n, k),
            TriangleKind::ScaledPascal2k => binom(n, k as i64) << k,
            TriangleKind::V(m) => v_coeff(m, n, k).expect("k within row"),
            TriangleKind::Ones => ExactInt::one(),
            TriangleKind::Reduced1 if boundary => ExactInt::one(),
            TriangleKind::Reduced2 if boundary => ExactInt::one(),
            TriangleKind::Reduced1 => u_coeff(n, k) - ExactInt::from(n) * n,
            TriangleKind::Reduced2 => u_coeff(n, k) - ExactInt::from(n) * n - n,
        }
    }
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangleKind::U => f.write_str("u"),
            TriangleKind::Pascal => f.write_str("pascal"),
            TriangleKind::Rascal => f.write_str("rascal"),
            TriangleKind::ScaledPascal2k => f.write_str("scaled-pascal"),
            TriangleKind::V(m) => write!(f, "v{m}"),
            TriangleKind::Reduced1 => f.write_str("reduced1"),
            TriangleKind::Reduced2 => f.write_str("reduced2"),
            TriangleKind::Ones => f.write_str("ones"),
        }
    }
}

impl FromStr for TriangleKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "u" => TriangleKind::U,
            "pascal" => TriangleKind::Pascal,
            "rascal" => TriangleKind::Rascal,
            "scaled-pascal" => TriangleKind::ScaledPascal2k,
            "reduced1" => TriangleKind::Reduced1,
            "reduced2" => TriangleKind::Reduced2,
            "ones" => TriangleKind::Ones,
            other => match other.strip_prefix('v').map(str::parse::<u32>) {
                Some(Ok(m)) => TriangleKind::V(m),
                _ => return Err(domain(format!("unknown triangle kind `{other}`"))),
            },
        })
    }
}

impl Serialize for TriangleKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleRow {
    pub kind: TriangleKind,
    pub n: u64,
    #[serde(serialize_with = "serde_exact::int_vec")]
    pub entries: Vec<ExactInt>,
}

pub fn triangle_row(kind: TriangleKind, n: u64) -> TriangleRow {
    TriangleRow {
        kind,
        n,
        entries: (0..=n).map(|k| kind.entry(n, k)).collect(),
    }
}

/// Rows `0..=last`, generated in parallel and returned in row order.
pub fn triangle_rows(kind: TriangleKind, last: u64) -> Vec<TriangleRow> {
    (0..=last)
        .into_par_iter()
        .map(|n| triangle_row(kind, n))
        .collect()
}

/// Centered text rendering, one row per line, entries separated by single spaces.
pub fn render_text(rows: &[TriangleRow]) -> String {
    let lines: Vec<String> = rows
        .iter()
        .map(|r| {
            r.entries
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    let width = lines.iter().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for line in &lines {
        let pad = (width - line.len()) / 2;
        out.push_str(&" ".repeat(pad));
        out.push_str(line);
        out.push('\n');
    }
    out
}

/// `n,e0,e1,...` per line.
pub fn render_csv(rows: &[TriangleRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&r.n.to_string());
        for e in &r.entries {
            out.push(',');
            out.push_str(&e.to_string());
        }
        out.push('\n');
    }
    out
}

/// One JSON object per line.
pub fn render_json_lines(rows: &[TriangleRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&serde_json::to_string(r).expect("row serializes"));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowRange {
    /// `k = 0..n-1`
    ExclLast,
    /// `k = 0..=n`
    InclLast,
    /// `k = 1..=n`
    ExclFirst,
}

/// Sums the entries of row `n` of the `U` triangle over `range`.
pub fn row_sum_u(n: u64, range: RowRange) -> ExactInt {
    let ks = match range {
        RowRange::ExclLast => 0..n,
        RowRange::InclLast => 0..n + 1,
        RowRange::ExclFirst => 1..n + 1,
    };
    ks.map(|k| u_coeff(n, k)).sum()
}

/// Which of the two coefficient pairs to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AbPair {
    /// `(A0, B0)`, from the row sum over `k = 0..n-1`.
    Zero,
    /// `(A1, B1)`, from the row sum over `k = 1..n`.
    One,
}

/// Coefficients with `A*x - B = x^3` for both pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbCoefficients {
    #[serde(serialize_with = "serde_exact::int")]
    pub x: ExactInt,
    #[serde(serialize_with = "serde_exact::int")]
    pub a0: ExactInt,
    #[serde(serialize_with = "serde_exact::int")]
    pub b0: ExactInt,
    #[serde(serialize_with = "serde_exact::int")]
    pub a1: ExactInt,
    #[serde(serialize_with = "serde_exact::int")]
    pub b1: ExactInt,
}

impl AbCoefficients {
    pub fn pair(&self, which: AbPair) -> (&ExactInt, &ExactInt) {
        match which {
            AbPair::Zero => (&self.a0, &self.b0),
            AbPair::One => (&self.a1, &self.b1),
        }
    }
}

/// Closed forms `A0 = 3x^2 - 3x`, `B0 = 2x^3 - 3x^2`, `A1 = 3x^2 + 3x`,
/// `B1 = 2x^3 + 3x^2`.
///
/// The printed reference table lists `B0 = 25` at `x = 3`; that value violates
/// `A0*x - B0 = x^3` and is not reproduced. At `x = 1` the table lists
/// `(A0, B0) = (1, 0)` where the closed forms give `(0, -1)`; both satisfy the
/// constraint, since only the combination `A*x - B` is determined.
pub fn ab_coefficients(x: &ExactInt) -> Result<AbCoefficients> {
    if *x < ExactInt::one() {
        return Err(domain(format!("ab_coefficients: x={x} must be >= 1")));
    }
    let x2 = x * x;
    let x3 = &x2 * x;
    Ok(AbCoefficients {
        x: x.clone(),
        a0: 3 * &x2 - 3 * x,
        b0: 2 * &x3 - 3 * &x2,
        a1: 3 * &x2 + 3 * x,
        b1: 2 * &x3 + 3 * &x2,
    })
}

/// `U((n^2 + n + 2)/2, 1)`, the central polygonal row read at `k = 1`, which
/// equals the cube difference `(n+1)^3 - n^3`.
pub fn central_polygonal_pointer(n: &ExactInt) -> ExactInt {
    let row = (n * n + n + 2) / 2;
    let value = u_coeff(row, 1);
    debug_assert_eq!(value, 3 * n * n + 3 * n + 1);
    value
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterationSet {
    /// `{1, ..., x}`
    A,
    /// `{0, ..., x}`
    B,
    /// `{0, ..., x-1}`
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumForm {
    /// `sum 6mx - 6m^2 + 1` over the set.
    T,
    /// `x + 6 * sum (mx - m^2)` over the set.
    U,
}

/// Evaluates the cube sum `T` or `U` over one of the index sets; every admitted
/// combination returns `x^3`. `T` over `B` counts the extra `+1` at `m = x` and
/// is rejected.
pub fn iteration_set_sum(x: u64, set: IterationSet, form: SumForm) -> Result<ExactInt> {
    if x < 1 {
        return Err(domain("iteration_set_sum: x must be >= 1"));
    }
    let range = match set {
        IterationSet::A => 1..x + 1,
        IterationSet::B => 0..x + 1,
        IterationSet::C => 0..x,
    };
    let xb = ExactInt::from(x);
    match form {
        SumForm::T if set == IterationSet::B => {
            Err(domain("the T form is only stated over the sets A and C"))
        }
        SumForm::T => Ok(range.map(|m| u_coeff(x, m)).sum()),
        SumForm::U => {
            let inner: ExactInt = range
                .map(|m| {
                    let m = ExactInt::from(m);
                    &m * &xb - &m * &m
                })
                .sum();
            Ok(xb + 6 * inner)
        }
    }
}
