//! Partial sums of `e^x = sum x^n / n!` at natural `x`, with every `x^n` produced
//! by one of the power expansions, and rigorous rational tail bounds.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::{factorial, int_pow, int_pow_signed, serde_exact, to_rat, ExactInt, ExactRat};
use crate::expand::{expand_power, StrategyId};
use crate::findiff::gsum_int;
use crate::triangle::u_coeff;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpPartial {
    #[serde(serialize_with = "serde_exact::int")]
    pub x: ExactInt,
    pub terms_used: u32,
    pub strategy: StrategyId,
    /// `sum_{n=0}^{N} x^n / n!`
    #[serde(serialize_with = "serde_exact::rat")]
    pub value: ExactRat,
    /// Upper bound on `sum_{n>N} x^n / n!`.
    #[serde(serialize_with = "serde_exact::rat")]
    pub tail_bound: ExactRat,
}

/// Bound on `sum_{n>N} x^n/n!`.
///
/// Once `N + 2 > x` the term ratio `x/(n+1)` stays below `r = x/(N+2)` and the tail
/// is dominated by a geometric series: `x^(N+1)/(N+1)! * (N+2)/(N+2-x)`. For smaller
/// `N` the terms up to `x - 1` are added exactly and the geometric bound starts there.
pub fn tail_bound(x: &ExactInt, terms_used: u32) -> ExactRat {
    if x.is_zero() {
        return ExactRat::zero();
    }
    let x_u32 = u32::try_from(x).expect("exp tail bound needs a machine-sized x");
    let start = terms_used.max(x_u32.saturating_sub(1));
    let exact_part: ExactRat = (terms_used + 1..=start)
        .map(|n| ExactRat::new(int_pow(x, n), factorial(n)))
        .sum();
    let next = ExactRat::new(int_pow(x, start + 1), factorial(start + 1));
    let ratio = ExactRat::new(ExactInt::from(start + 2), ExactInt::from(start + 2) - x);
    exact_part + next * ratio
}

/// `sum_{n=0}^{N} x^n/n!` with each power computed by `strategy`.
///
/// At `x = 0` only the `n = 0` term is nonzero and the strategy is not consulted.
pub fn exp_partial(x: &ExactInt, terms_used: u32, strategy: StrategyId) -> Result<ExpPartial> {
    if x.is_negative() {
        return Err(domain(format!("exp_partial: x={x} must be nonnegative")));
    }
    let value = if x.is_zero() {
        ExactRat::one()
    } else {
        let mut acc = ExactRat::zero();
        let mut fact = ExactInt::one();
        for n in 0..=terms_used {
            if n > 0 {
                fact *= n;
            }
            let power = expand_power(x, n, strategy)?.value;
            acc += ExactRat::new(power, fact.clone());
        }
        acc
    };
    Ok(ExpPartial {
        x: x.clone(),
        terms_used,
        strategy,
        value,
        tail_bound: tail_bound(x, terms_used),
    })
}

/// Inner expression `sum_{m=1}^{x-1} U(x,m) x^(n-3) + (x^(n-4) + ... + x + 1)`
/// of the `e^x - e` representation, evaluated at a single `n >= 3`.
pub fn exp_minus_e_inner(x: &ExactInt, n: u32) -> Result<ExactRat> {
    if n < 3 {
        return Err(domain("the U-form inner expression needs n >= 3"));
    }
    let upper = u64::try_from(x).map_err(|_| domain("x out of range"))?;
    let row: ExactInt = (1..upper).map(|m| u_coeff(x.clone(), m)).sum();
    let scaled = to_rat(&row) * int_pow_signed(x, i64::from(n) - 3)?;
    Ok(scaled + to_rat(&gsum_int(x, n - 3)))
}

/// Partial sum over `n = 0..=N` of the `e^x - e` representation, using the
/// `U`-form inner expression for `n >= 3` and the direct term `(x^n - 1)/n!` for
/// `n < 3`, where the `U`-form has no meaning.
pub fn exp_minus_e_partial(x: &ExactInt, terms_used: u32) -> Result<ExactRat> {
    if *x < ExactInt::from(2) {
        return Err(domain(format!("exp_minus_e_partial: x={x} must be >= 2")));
    }
    if terms_used < 3 {
        return Err(domain("exp_minus_e_partial: N must be >= 3"));
    }
    let mut acc = ExactRat::zero();
    for n in 0..=terms_used {
        let numer = if n < 3 {
            to_rat(&(int_pow(x, n) - 1))
        } else {
            exp_minus_e_inner(x, n)?
        };
        acc += numer / to_rat(&factorial(n));
    }
    Ok(acc)
}

/// Direct `sum_{n=0}^{N} (x^n - 1)/n!`.
pub fn exp_minus_e_direct(x: &ExactInt, terms_used: u32) -> ExactRat {
    (0..=terms_used)
        .map(|n| ExactRat::new(int_pow(x, n) - 1, factorial(n)))
        .sum()
}

/// Smallest `N` with `tail_bound(x, N) < 10^(-digits)`.
pub fn exp_convergence_report(x: &ExactInt, digits: u32) -> u32 {
    let eps = ExactRat::new(ExactInt::one(), int_pow(&ExactInt::from(10), digits));
    (0..)
        .find(|&n| tail_bound(x, n) < eps)
        .expect("tail bound tends to zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn zero_base() {
        for s in StrategyId::all() {
            let p = exp_partial(&int(0), 7, s).unwrap();
            assert_eq!(p.value, rat(1, 1));
            assert_eq!(p.tail_bound, rat(0, 1));
        }
    }

    #[test]
    fn small_partial_sum() {
        let p = exp_partial(&int(1), 4, StrategyId::TelescopeGeom).unwrap();
        assert_eq!(p.value, rat(65, 24));
    }

    #[test]
    fn u_row_matches_direct_summation() {
        let p = exp_partial(&int(2), 10, StrategyId::URow).unwrap();
        let direct: ExactRat = (0..=10u32)
            .map(|n| ExactRat::new(ExactInt::from(2u64.pow(n)), factorial(n)))
            .sum();
        assert_eq!(p.value, direct);
    }

    #[test]
    fn convergence_examples() {
        assert_eq!(exp_convergence_report(&int(1), 15), 17);
        assert_eq!(exp_convergence_report(&int(0), 9), 0);
    }

    #[test]
    fn tail_bound_below_threshold_uses_exact_terms() {
        // N + 2 <= x: the bound includes the exact terms N+1..x-1.
        let b = tail_bound(&int(5), 1);
        let exact: ExactRat = (2..=4u32)
            .map(|n| ExactRat::new(int_pow(&int(5), n), factorial(n)))
            .sum();
        let geometric = ExactRat::new(int_pow(&int(5), 5), factorial(5)) * rat(6, 1);
        assert_eq!(b, exact + geometric);
    }

    #[test]
    fn inner_expression_at_two_and_three() {
        for n in 3..20 {
            assert_eq!(exp_minus_e_inner(&int(2), n).unwrap(), to_rat(&(int_pow(&int(2), n) - 1)));
        }
        assert_eq!(exp_minus_e_inner(&int(3), 4).unwrap(), rat(79, 1));
        assert!(exp_minus_e_inner(&int(3), 2).is_err());
    }

    #[test]
    fn exp_minus_e_errors() {
        assert!(exp_minus_e_partial(&int(1), 10).is_err());
        assert!(exp_minus_e_partial(&int(2), 2).is_err());
        assert_eq!(exp_minus_e_partial(&int(2), 20).unwrap(), exp_minus_e_direct(&int(2), 20));
    }
}
