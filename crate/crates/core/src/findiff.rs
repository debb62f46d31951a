//! Forward differences with unit step, difference tables of powers, and the
//! telescoping and geometric-sum forms of `x^n` and its first difference.

use std::ops::Sub;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::{binom, int_pow, rat_pow, to_rat, ExactInt, ExactRat};

fn forward_diff<T>(values: &[T]) -> Vec<T>
where
    for<'a> &'a T: Sub<&'a T, Output = T>,
{
    values.windows(2).map(|w| &w[1] - &w[0]).collect()
}

/// The `order`-th iterated forward difference of `values`.
pub fn forward_diff_seq(values: &[ExactRat], order: usize) -> Result<Vec<ExactRat>> {
    if order >= values.len() {
        return Err(domain(format!(
            "difference of order {order} needs more than {} values",
            values.len()
        )));
    }
    let mut cur = values.to_vec();
    for _ in 0..order {
        cur = forward_diff(&cur);
    }
    Ok(cur)
}

/// Difference table of `f(x) = x^n` on `x = 0..=x_max`.
///
/// `columns[0]` holds `f`, `columns[d]` the `d`-th difference (length `x_max + 1 - d`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceTable {
    pub n: u32,
    pub x_max: u64,
    pub depth: usize,
    #[serde(serialize_with = "columns_as_strings")]
    pub columns: Vec<Vec<ExactInt>>,
}

fn columns_as_strings<S: serde::Serializer>(
    cols: &[Vec<ExactInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(cols.len()))?;
    for col in cols {
        let col: Vec<String> = col.iter().map(ToString::to_string).collect();
        seq.serialize_element(&col)?;
    }
    seq.end()
}

pub fn difference_table(n: u32, x_max: u64, depth: usize) -> Result<DifferenceTable> {
    if n == 0 {
        return Err(domain("difference_table: power n must be >= 1"));
    }
    if depth as u64 > x_max {
        return Err(domain(format!(
            "difference_table: depth {depth} exceeds x_max {x_max}"
        )));
    }
    let base: Vec<ExactInt> = (0..=x_max).map(|x| int_pow(&x.into(), n)).collect();
    let mut columns = vec![base];
    for d in 1..=depth {
        let next = forward_diff(&columns[d - 1]);
        columns.push(next);
    }
    Ok(DifferenceTable {
        n,
        x_max,
        depth,
        columns,
    })
}

impl DifferenceTable {
    pub fn cell(&self, x: u64, order: usize) -> Option<&ExactInt> {
        self.columns.get(order)?.get(x as usize)
    }

    fn header(&self) -> Vec<String> {
        let mut h = vec!["x".to_string(), format!("x^{}", self.n)];
        for d in 1..=self.depth {
            if d == 1 {
                h.push(format!("D(x^{})", self.n));
            } else {
                h.push(format!("D^{d}(x^{})", self.n));
            }
        }
        h
    }

    fn rows(&self) -> Vec<Vec<String>> {
        (0..=self.x_max)
            .map(|x| {
                let mut row = vec![x.to_string()];
                for d in 0..=self.depth {
                    row.push(self.cell(x, d).map(ToString::to_string).unwrap_or_default());
                }
                row
            })
            .collect()
    }

    /// Right-aligned columns separated by `|`.
    pub fn render_text(&self) -> String {
        let header = self.header();
        let rows = self.rows();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                rows.iter()
                    .map(|r| r[c].len())
                    .chain(std::iter::once(header[c].len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let fmt_row = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join(" | ")
                .trim_end()
                .to_string()
        };
        let mut out = fmt_row(&header);
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&rule.join("-+-"));
        out.push('\n');
        for r in &rows {
            out.push_str(&fmt_row(r));
            out.push('\n');
        }
        out
    }

    /// Header line then one line per `x`; cells past the end of a column are empty.
    pub fn render_csv(&self) -> String {
        let mut out = self.header().join(",");
        out.push('\n');
        for r in self.rows() {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}

/// `(x + h)^n - x^n` through its binomial expansion `sum_{k=1}^{n} C(n,k) x^(n-k) h^k`.
///
/// Panics if the expansion disagrees with the direct difference.
pub fn binomial_diff(x: &ExactRat, n: u32, h: &ExactRat) -> ExactRat {
    let value: ExactRat = (1..=n)
        .map(|k| {
            to_rat(&binom(n.into(), k.into()))
                * rat_pow(x, (n - k).into()).expect("nonnegative exponent")
                * rat_pow(h, k.into()).expect("nonnegative exponent")
        })
        .sum();
    let direct = rat_pow(&(x + h), n.into()).unwrap() - rat_pow(x, n.into()).unwrap();
    assert_eq!(value, direct, "binomial form of the forward difference");
    value
}

/// `x^n` as the telescoping sum of its unit-step differences, with the per-step terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Telescoped {
    pub value: ExactInt,
    pub terms: Vec<ExactInt>,
}

pub fn telescope_power(x: u64, n: u32) -> Telescoped {
    let terms: Vec<ExactInt> = (0..x)
        .map(|k| {
            let k = ExactInt::from(k);
            int_pow(&(&k + 1), n) - int_pow(&k, n)
        })
        .collect();
    let value = terms.iter().sum();
    Telescoped { value, terms }
}

/// `x^0 + x^1 + ... + x^(n-1)`; zero when `n = 0`.
pub fn gsum(x: &ExactRat, n: u32) -> ExactRat {
    let mut acc = ExactRat::zero();
    let mut p = ExactRat::one();
    for _ in 0..n {
        acc += &p;
        p *= x;
    }
    acc
}

/// `gsum` at an integer point.
pub fn gsum_int(x: &ExactInt, n: u32) -> ExactInt {
    let mut acc = ExactInt::zero();
    let mut p = ExactInt::one();
    for _ in 0..n {
        acc += &p;
        p *= x;
    }
    acc
}

/// First difference of `x^n` in the form `x * [g(x+1) - g(x)] + g(x)` with
/// `g = gsum(., n)`.
///
/// Panics if the result disagrees with `(x+1)^n - x^n`.
pub fn v_first_diff(x: u64, n: u32) -> Result<ExactInt> {
    if x < 1 {
        return Err(domain("v_first_diff: x must be >= 1"));
    }
    let xb = ExactInt::from(x);
    let g0 = gsum_int(&xb, n);
    let g1 = gsum_int(&(&xb + 1), n);
    let value = &xb * (g1 - &g0) + g0;
    assert_eq!(value, int_pow(&(&xb + 1), n) - int_pow(&xb, n));
    Ok(value)
}

/// `1 + sum_{j=0}^{n} 6j`, the cube difference `(n+1)^3 - n^3` written through
/// the hexagonal-lattice coordination numbers.
pub fn hex_footnote_check(n: u64) -> ExactInt {
    let value: ExactInt = ExactInt::one() + (0..=n).map(|j| ExactInt::from(6 * j)).sum::<ExactInt>();
    let nb = ExactInt::from(n);
    assert_eq!(value, int_pow(&(&nb + 1), 3) - int_pow(&nb, 3));
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn rats(v: &[i64]) -> Vec<ExactRat> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn forward_diff_examples() {
        assert_eq!(forward_diff_seq(&rats(&[0, 1, 8, 27]), 1).unwrap(), rats(&[1, 7, 19]));
        assert_eq!(forward_diff_seq(&rats(&[4, 4, 4, 4]), 1).unwrap(), rats(&[0, 0, 0]));
        assert_eq!(forward_diff_seq(&rats(&[0, 1, 8, 27, 64]), 3).unwrap(), rats(&[6, 6]));
        assert!(forward_diff_seq(&rats(&[1, 2]), 2).is_err());
        assert_eq!(forward_diff_seq(&rats(&[1, 2]), 0).unwrap(), rats(&[1, 2]));
    }

    #[test]
    fn table_row_seven() {
        let t = difference_table(3, 10, 3).unwrap();
        let row: Vec<ExactInt> = (0..=3).map(|d| t.cell(7, d).unwrap().clone()).collect();
        assert_eq!(row, vec![int(343), int(169), int(48), int(6)]);
        assert!(t.cell(8, 3).is_none());
        assert_eq!(t.columns[3].len(), 8);
    }

    #[test]
    fn table_errors() {
        assert!(difference_table(3, 2, 3).is_err());
        assert!(difference_table(0, 5, 1).is_err());
    }

    #[test]
    fn linear_table() {
        let t = difference_table(1, 5, 1).unwrap();
        assert!(t.columns[1].iter().all(|v| *v == int(1)));
    }

    #[test]
    fn quartic_table_is_constant_24() {
        let t = difference_table(4, 8, 4).unwrap();
        assert!(t.columns[4].iter().all(|v| *v == int(24)));
    }

    #[test]
    fn binomial_diff_examples() {
        assert_eq!(binomial_diff(&rat(3, 1), 3, &rat(1, 1)), rat(37, 1));
        assert_eq!(binomial_diff(&rat(7, 3), 4, &rat(0, 1)), rat(0, 1));
        assert_eq!(binomial_diff(&rat(1, 1), 2, &rat(2, 1)), rat(8, 1));
    }

    #[test]
    fn telescope_examples() {
        let t = telescope_power(3, 3);
        assert_eq!(t.value, int(27));
        assert_eq!(t.terms, vec![int(1), int(7), int(19)]);
        assert_eq!(telescope_power(0, 4).value, int(0));
        let t = telescope_power(5, 2);
        assert_eq!(t.terms, [1, 3, 5, 7, 9].map(int).to_vec());
    }

    #[test]
    fn gsum_examples() {
        assert_eq!(gsum(&rat(4, 1), 3), rat(21, 1));
        assert_eq!(gsum(&rat(9, 7), 1), rat(1, 1));
        assert_eq!(gsum(&rat(3, 1), 3), rat(13, 1));
        assert_eq!(gsum(&rat(3, 1), 0), rat(0, 1));
        assert_eq!(gsum(&rat(1, 2), 3), rat(7, 4));
    }

    #[test]
    fn v_first_diff_examples() {
        assert_eq!(v_first_diff(3, 3).unwrap(), int(37));
        assert_eq!(v_first_diff(1, 1).unwrap(), int(1));
        assert_eq!(v_first_diff(5, 4).unwrap(), int(671));
        assert!(v_first_diff(0, 2).is_err());
    }

    #[test]
    fn hex_examples() {
        assert_eq!(hex_footnote_check(0), int(1));
        assert_eq!(hex_footnote_check(2), int(19));
        assert_eq!(hex_footnote_check(9), int(271));
    }

    #[test]
    fn csv_layout() {
        let t = difference_table(3, 3, 2).unwrap();
        assert_eq!(
            t.render_csv(),
            "x,x^3,D(x^3),D^2(x^3)\n0,0,1,6\n1,1,7,12\n2,8,19,\n3,27,,\n"
        );
    }
}
