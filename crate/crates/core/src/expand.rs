//! Interchangeable expansions of `x^n`.
//!
//! Every strategy returns the list of summands it produced together with their
//! total, and the total is checked against direct exponentiation before it is
//! handed back. Summands may be rational (the `U`-family strategies multiply by
//! `x^(n-3)`, which is fractional for `n < 3`), but the total is always an integer.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact::{binom, int_pow, int_pow_signed, serde_exact, to_rat, ExactInt, ExactRat};
use crate::findiff::gsum_int;
use crate::triangle::{ab_coefficients, u_coeff, v_coeff, AbPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyId {
    /// `sum_{k=0}^{x-1} V_{n-1}(x, k)`
    VRow,
    /// `1 + sum_{k=0}^{n-1} (x^(k+1) - x^k)`
    TelescopeGeom,
    /// `sum_{k=0}^{x-1} U(x,k) x^(n-3)`
    URow,
    /// `sum_{k=0}^{x-1} (U(x+1,k) + U(x-1,k))/2 * x^(n-3)`
    URecurrenceN,
    /// `sum_{k=0}^{x-1} (U(2x-k,k) + U(2x-k,0))/2 * x^(n-3)`
    UReflect,
    /// `sum_{k=0}^{x-1} U((k^2+k+2)/2, 1) * x^(n-3)`
    UCentral,
    /// `sum_{k=0}^{j} (-1)^k C(j,k) A^(j-k) B^k x^(n-2j-k)` with `A*x - B = x^3`.
    GenBinomial { depth: u32, pair: AbPair },
    /// `sum_k sum_j C(n,k) C(k,j) (-1)^(k-j) x^j`, grouped by `k`.
    DoubleBinomial,
    /// `sum_{j=0}^{x-1} sum_{k=1}^{n} C(n,k) j^(n-k)`, grouped by `j`.
    BinomialDiffSum,
}

impl StrategyId {
    pub fn gen_binomial(depth: u32) -> Self {
        StrategyId::GenBinomial {
            depth,
            pair: AbPair::Zero,
        }
    }

    /// The eight strategies without a depth parameter, plus `GenBinomial` at depth 1.
    pub fn all() -> Vec<StrategyId> {
        vec![
            StrategyId::VRow,
            StrategyId::TelescopeGeom,
            StrategyId::URow,
            StrategyId::URecurrenceN,
            StrategyId::UReflect,
            StrategyId::UCentral,
            StrategyId::BinomialDiffSum,
            StrategyId::DoubleBinomial,
            StrategyId::gen_binomial(1),
        ]
    }

    fn needs_positive_x(self) -> bool {
        matches!(
            self,
            StrategyId::URow
                | StrategyId::URecurrenceN
                | StrategyId::UReflect
                | StrategyId::UCentral
                | StrategyId::GenBinomial { .. }
        )
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyId::VRow => f.write_str("v-row"),
            StrategyId::TelescopeGeom => f.write_str("telescope-geom"),
            StrategyId::URow => f.write_str("u-row"),
            StrategyId::URecurrenceN => f.write_str("u-recurrence"),
            StrategyId::UReflect => f.write_str("u-reflect"),
            StrategyId::UCentral => f.write_str("u-central"),
            StrategyId::GenBinomial { depth, pair } => match pair {
                AbPair::Zero => write!(f, "gen-binomial:{depth}"),
                AbPair::One => write!(f, "gen-binomial:{depth}:1"),
            },
            StrategyId::DoubleBinomial => f.write_str("double-binomial"),
            StrategyId::BinomialDiffSum => f.write_str("binomial-diff-sum"),
        }
    }
}

impl FromStr for StrategyId {
    type Err = Error;

    /// Accepts the names produced by `Display`; `gen-binomial` alone means depth 1
    /// with the `(A0, B0)` pair.
    fn from_str(s: &str) -> Result<Self> {
        let simple = match s {
            "v-row" => Some(StrategyId::VRow),
            "telescope-geom" => Some(StrategyId::TelescopeGeom),
            "u-row" => Some(StrategyId::URow),
            "u-recurrence" => Some(StrategyId::URecurrenceN),
            "u-reflect" => Some(StrategyId::UReflect),
            "u-central" => Some(StrategyId::UCentral),
            "double-binomial" => Some(StrategyId::DoubleBinomial),
            "binomial-diff-sum" => Some(StrategyId::BinomialDiffSum),
            _ => None,
        };
        if let Some(s) = simple {
            return Ok(s);
        }
        let mut parts = s.split(':');
        if parts.next() != Some("gen-binomial") {
            return Err(domain(format!("unknown strategy `{s}`")));
        }
        let bad = || domain(format!("malformed strategy `{s}`"));
        let depth = match parts.next() {
            None => 1,
            Some(d) => d.parse::<u32>().map_err(|_| bad())?,
        };
        let pair = match parts.next() {
            None | Some("0") => AbPair::Zero,
            Some("1") => AbPair::One,
            Some(_) => return Err(bad()),
        };
        if depth == 0 || parts.next().is_some() {
            return Err(bad());
        }
        Ok(StrategyId::GenBinomial { depth, pair })
    }
}

impl Serialize for StrategyId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionResult {
    #[serde(serialize_with = "serde_exact::int")]
    pub x: ExactInt,
    pub n: u32,
    pub strategy: StrategyId,
    #[serde(serialize_with = "serde_exact::int")]
    pub value: ExactInt,
    /// Summands in iteration order.
    #[serde(serialize_with = "serde_exact::rat_vec")]
    pub terms: Vec<ExactRat>,
}

/// Expands `x^n` with `strategy`.
///
/// Domain: `x >= 0` throughout; the `U`-family and `GenBinomial` need `x >= 1`;
/// `VRow` has no summands at `x = 0` and so rejects `(0, 0)`.
pub fn expand_power(x: &ExactInt, n: u32, strategy: StrategyId) -> Result<ExpansionResult> {
    if x.is_negative() {
        return Err(domain(format!("{strategy}: x={x} must be nonnegative")));
    }
    if strategy.needs_positive_x() && x.is_zero() {
        return Err(domain(format!("{strategy}: x must be >= 1")));
    }
    let terms = match strategy {
        StrategyId::VRow => v_row_terms(x, n)?,
        StrategyId::TelescopeGeom => telescope_geom_terms(x, n),
        StrategyId::URow => u_family_terms(x, n, |x, k| to_rat(&u_coeff(x.clone(), k.clone())))?,
        StrategyId::URecurrenceN => u_family_terms(x, n, |x, k| {
            ExactRat::new(u_coeff(x + 1, k.clone()) + u_coeff(x - 1, k.clone()), 2.into())
        })?,
        StrategyId::UReflect => u_family_terms(x, n, |x, k| {
            let row: ExactInt = 2 * x - k;
            ExactRat::new(u_coeff(row.clone(), k.clone()) + u_coeff(row, 0), 2.into())
        })?,
        StrategyId::UCentral => u_family_terms(x, n, |_, k| {
            let row = (k * k + k + 2) / 2;
            to_rat(&u_coeff(row, 1))
        })?,
        StrategyId::GenBinomial { depth, pair } => gen_binomial_terms(x, n, depth, pair)?,
        StrategyId::DoubleBinomial => double_binomial_grouped(x, n),
        StrategyId::BinomialDiffSum => binomial_diff_sum_terms(x, n),
    };
    let total: ExactRat = terms.iter().sum();
    let expected = int_pow(x, n);
    if !total.is_integer() || total.numer() != &expected {
        return Err(Error::ExpansionMismatch {
            strategy: strategy.to_string(),
            x: x.to_string(),
            n,
            got: total.to_string(),
        });
    }
    Ok(ExpansionResult {
        x: x.clone(),
        n,
        strategy,
        value: expected,
        terms,
    })
}

fn count(x: &ExactInt) -> Result<u64> {
    u64::try_from(x).map_err(|_| domain(format!("x={x} is too large to iterate over")))
}

fn v_row_terms(x: &ExactInt, n: u32) -> Result<Vec<ExactRat>> {
    if x.is_zero() && n == 0 {
        return Err(domain("v-row: x = 0 has no summands, so 0^0 is not representable"));
    }
    (0..count(x)?)
        .map(|k| {
            // V_{-1} has the empty sum as its interior value.
            let v = match n {
                0 if k > 0 => ExactInt::zero(),
                0 => ExactInt::one(),
                _ => v_coeff(n - 1, x.clone(), k)?,
            };
            Ok(to_rat(&v))
        })
        .collect()
}

fn telescope_geom_terms(x: &ExactInt, n: u32) -> Vec<ExactRat> {
    std::iter::once(ExactRat::one())
        .chain((0..n).map(|k| to_rat(&(int_pow(x, k + 1) - int_pow(x, k)))))
        .collect()
}

fn u_family_terms<F>(x: &ExactInt, n: u32, coeff: F) -> Result<Vec<ExactRat>>
where
    F: Fn(&ExactInt, &ExactInt) -> ExactRat,
{
    let scale = int_pow_signed(x, i64::from(n) - 3)?;
    Ok((0..count(x)?)
        .map(|k| coeff(x, &ExactInt::from(k)) * &scale)
        .collect())
}

fn gen_binomial_terms(x: &ExactInt, n: u32, depth: u32, pair: AbPair) -> Result<Vec<ExactRat>> {
    let ab = ab_coefficients(x)?;
    let (a, b) = ab.pair(pair);
    (0..=depth)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let coeff = sign * binom(depth.into(), k.into()) * int_pow(a, depth - k) * int_pow(b, k);
            let exp = i64::from(n) - 2 * i64::from(depth) - i64::from(k);
            Ok(to_rat(&coeff) * int_pow_signed(x, exp)?)
        })
        .collect()
}

/// The `(n+1)(n+2)/2` raw summands `C(n,k) C(k,j) (-1)^(k-j) m^j`, ordered by `k`
/// then `j`.
pub fn double_binomial_summands(m: &ExactInt, n: u32) -> Vec<ExactInt> {
    let mut out = Vec::with_capacity(((n + 1) * (n + 2) / 2) as usize);
    for k in 0..=n {
        let outer = binom(n.into(), k.into());
        for j in 0..=k {
            let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
            out.push(sign * &outer * binom(k.into(), j.into()) * int_pow(m, j));
        }
    }
    out
}

fn double_binomial_grouped(m: &ExactInt, n: u32) -> Vec<ExactRat> {
    let raw = double_binomial_summands(m, n);
    let mut grouped = Vec::with_capacity(n as usize + 1);
    let mut start = 0;
    for k in 0..=n as usize {
        let group: ExactInt = raw[start..start + k + 1].iter().sum();
        grouped.push(to_rat(&group));
        start += k + 1;
    }
    grouped
}

/// Inner sums `sum_{k=1}^{n} C(n,k) j^(n-k)` for `j = 0..x-1`. At `n = 0` the inner
/// sums are empty and the initial value `0^0 = 1` of the telescoped function is
/// emitted as the single summand.
fn binomial_diff_sum_terms(x: &ExactInt, n: u32) -> Vec<ExactRat> {
    if n == 0 {
        return vec![ExactRat::one()];
    }
    let upper = count(x).unwrap_or(0);
    (0..upper)
        .map(|j| {
            let j = ExactInt::from(j);
            let inner: ExactInt = (1..=n)
                .map(|k| binom(n.into(), k.into()) * int_pow(&j, n - k))
                .sum();
            to_rat(&inner)
        })
        .collect()
}

/// `(x+y)^n = 1 + (x+y-1) * gsum(x+y, n)`, with the regrouping into an
/// `x`-weighted, a `y`-weighted and a unit-weighted geometric sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinomialPair {
    #[serde(serialize_with = "serde_exact::int")]
    pub value: ExactInt,
    #[serde(serialize_with = "serde_exact::int")]
    pub x_total: ExactInt,
    #[serde(serialize_with = "serde_exact::int")]
    pub y_total: ExactInt,
    #[serde(serialize_with = "serde_exact::int")]
    pub unit_total: ExactInt,
}

pub fn expand_binomial_pair(x: &ExactInt, y: &ExactInt, n: u32) -> Result<BinomialPair> {
    let s = x + y;
    if s < ExactInt::one() {
        return Err(domain(format!("expand_binomial_pair: x+y={s} must be >= 1")));
    }
    let g = gsum_int(&s, n);
    let value = ExactInt::one() + (&s - 1) * &g;
    assert_eq!(value, int_pow(&s, n));
    Ok(BinomialPair {
        value,
        x_total: x * &g,
        y_total: y * &g,
        unit_total: g,
    })
}

/// `(x_1 + ... + x_k)^n` as `1 + (S - 1) * gsum(S, n)` with `S = sum x_i`.
pub fn expand_multinomial(xs: &[ExactInt], n: u32) -> Result<ExactInt> {
    let s: ExactInt = xs.iter().sum();
    if s < ExactInt::one() {
        return Err(domain(format!("expand_multinomial: sum {s} must be >= 1")));
    }
    let value = ExactInt::one() + (&s - 1) * gsum_int(&s, n);
    assert_eq!(value, int_pow(&s, n));
    Ok(value)
}

/// `x^n/(x-1) - 1/(x-1)`, which equals `gsum(x, n)`.
pub fn geom_ratio_identity(x: &ExactInt, n: u32) -> Result<ExactRat> {
    if *x < ExactInt::from(2) {
        return Err(domain(format!("geom_ratio_identity: x={x} must be >= 2")));
    }
    let d: ExactInt = x - 1;
    let value = ExactRat::new(int_pow(x, n), d.clone()) - ExactRat::new(ExactInt::one(), d);
    assert_eq!(value, to_rat(&gsum_int(x, n)));
    Ok(value)
}
