use num_traits::One;

use super::{Body, Check, Domain, Evaluator, Failure, IdentityRecord, Point, Status, Supplement};
use crate::error::{domain, Result};
use crate::exact::{binom, factorial, int_pow, int_pow_signed, rat, to_rat, ExactInt, ExactRat};
use crate::exp_series::{exp_convergence_report, exp_minus_e_direct, exp_minus_e_partial, tail_bound};
use crate::expand::expand_binomial_pair;
use crate::findiff::{binomial_diff, difference_table, forward_diff_seq, gsum, gsum_int, telescope_power};
use crate::triangle::{
    ab_coefficients, iteration_set_sum, row_sum_u, u_coeff, v_coeff, IterationSet, RowRange, SumForm,
    TriangleKind,
};

/// Catalog entries that are deliberately not registered.
pub const OUT_OF_SCOPE: &[(&str, &str)] = &[
    ("P1_1", "prose list of binomial theorem properties; no identity to evaluate"),
    ("P3_4_7", "row items follow a binomial distribution; no parameters or normalization are given"),
];

fn q(v: impl Into<ExactInt>) -> ExactRat {
    ExactRat::from_integer(v.into())
}

fn pw(x: &ExactInt, n: u32) -> ExactInt {
    int_pow(x, n)
}

/// `x^e` for a signed exponent; the grids never put a zero base under a negative exponent.
fn xp(x: &ExactInt, e: i64) -> ExactRat {
    int_pow_signed(x, e).expect("nonzero base for negative exponent")
}

fn half() -> ExactRat {
    rat(1, 2)
}

fn record(id: &'static str, citation: &'static str, status: Status, domain: Domain, lhs: Evaluator, rhs: Evaluator) -> IdentityRecord {
    IdentityRecord {
        id,
        citation,
        status,
        body: Body::Evaluable(Check {
            domain,
            lhs,
            rhs,
            tolerance: None,
            supplement: None,
        }),
        notes: Vec::new(),
    }
}

fn verified(id: &'static str, citation: &'static str, domain: Domain, lhs: Evaluator, rhs: Evaluator) -> IdentityRecord {
    record(id, citation, Status::Verified, domain, lhs, rhs)
}

fn audited(id: &'static str, citation: &'static str, domain: Domain, lhs: Evaluator, rhs: Evaluator) -> IdentityRecord {
    record(id, citation, Status::Audited, domain, lhs, rhs)
}

fn non_evaluable(id: &'static str, citation: &'static str, reason: &'static str) -> IdentityRecord {
    IdentityRecord {
        id,
        citation,
        status: Status::NonEvaluable,
        body: Body::NonEvaluable { reason },
        notes: Vec::new(),
    }
}

impl IdentityRecord {
    fn note(mut self, text: &'static str) -> Self {
        self.notes.push(text);
        self
    }

    fn tolerance(mut self, f: Evaluator) -> Self {
        if let Body::Evaluable(c) = &mut self.body {
            c.tolerance = Some(f);
        }
        self
    }

    fn supplement(mut self, f: Supplement) -> Self {
        if let Body::Evaluable(c) = &mut self.body {
            c.supplement = Some(f);
        }
        self
    }
}

fn k_le_n(p: &Point) -> bool {
    p.i64("k") <= p.i64("n")
}

/// Printed difference table of `x^3`, rows `x = 0..=10`.
const TABLE_1: [&[i64]; 11] = [
    &[0, 1, 6, 6],
    &[1, 7, 12, 6],
    &[8, 19, 18, 6],
    &[27, 37, 24, 6],
    &[64, 61, 30, 6],
    &[125, 91, 36, 6],
    &[216, 127, 42, 6],
    &[343, 169, 48, 6],
    &[512, 217, 54],
    &[729, 271],
    &[1000],
];

/// Plotted points `(k, 6*10*k - 6k^2 + 1)` of the parabola at `x = 10`.
const PARABOLA_X10: [i64; 11] = [1, 55, 97, 127, 145, 151, 145, 127, 97, 55, 1];

const REDUCED_1_ROWS: [&[i64]; 5] = [&[1], &[1, 1], &[1, 3, 1], &[1, 4, 4, 1], &[1, 3, 9, 3, 1]];
const REDUCED_2_ROWS: [&[i64]; 5] = [&[1], &[1, 1], &[1, 1, 1], &[1, 1, 1, 1], &[1, -1, 5, -1, 1]];
/// Triangle printed under the caption `V_2(n,k)`.
const V2_CAPTION_ROWS: [&[i64]; 5] = [&[1], &[1, 1], &[1, 3, 1], &[1, 4, 4, 1], &[1, 5, 5, 5, 1]];
const SCALED_PASCAL_ROWS: [&[i64]; 5] = [&[1], &[1, 2], &[1, 4, 4], &[1, 6, 12, 8], &[1, 8, 24, 32, 16]];

/// Printed coefficient table: `(x, A0, B0, A1, B1)`.
const TABLE_9: [(i64, i64, i64, i64, i64); 10] = [
    (1, 1, 0, 6, 5),
    (2, 6, 4, 18, 28),
    (3, 18, 25, 36, 81),
    (4, 36, 80, 60, 176),
    (5, 60, 175, 90, 325),
    (6, 90, 324, 126, 540),
    (7, 126, 539, 168, 833),
    (8, 168, 832, 216, 1216),
    (9, 216, 1215, 270, 1701),
    (10, 270, 1700, 330, 2300),
];

fn printed(rows: &[&[i64]], n: u64, k: u64) -> ExactRat {
    q(rows[n as usize][k as usize])
}

/// `(A, B)` for the grid's `pair` variable at the grid's `x`.
fn ab_pair(p: &Point) -> (ExactInt, ExactInt) {
    let c = ab_coefficients(&p.int("x")).expect("x >= 1");
    if p.i64("pair") == 0 {
        (c.a0, c.b0)
    } else {
        (c.a1, c.b1)
    }
}

fn gen_binomial_sum(x: &ExactInt, n: u32, j: u32, a: &ExactInt, b: &ExactInt) -> ExactRat {
    (0..=j)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let coeff = binom(j.into(), k.into()) * sign * pw(a, j - k) * pw(b, k);
            q(coeff) * xp(x, i64::from(n) - 2 * i64::from(j) - i64::from(k))
        })
        .sum()
}

/// `sum_{m=1}^{x-1}` of one of the four row forms that each total `x^3 - 1`.
///
/// 1: `U(x,m)`, 2: `(U(x+1,m) + U(x-1,m))/2`, 3: `U((m^2+m+2)/2, 1)`,
/// 4: `(U((m^2+m)/2, 1) + U((m^2+m+4)/2, 1))/2`, 5: `(U(2x-m,m) + U(2x-m,0))/2`.
fn row_form(x: &ExactInt, form: i64) -> ExactRat {
    let upper = u64::try_from(x).expect("x >= 1");
    (1..upper)
        .map(|m| {
            let m = ExactInt::from(m);
            let tri = |c: i64| (&m * &m + &m + c) / 2;
            match form {
                1 => q(u_coeff(x.clone(), m)),
                2 => half() * q(u_coeff(x + 1, m.clone()) + u_coeff(x - 1, m)),
                3 => q(u_coeff(tri(2), 1)),
                4 => half() * q(u_coeff(tri(0), 1) + u_coeff(tri(4), 1)),
                5 => {
                    let row: ExactInt = ExactInt::from(2) * x - &m;
                    half() * q(u_coeff(row.clone(), m) + u_coeff(row, 0))
                }
                _ => unreachable!("row form {form}"),
            }
        })
        .sum()
}

/// The line-by-line row forms of the `x^n - 1` display, in printed order.
fn e3_15_form(line: i64) -> i64 {
    [5, 2, 4, 3][(line - 1) as usize]
}

/// The line-by-line row forms of the `e^x - e` display, in printed order.
fn e4_2_form(line: i64) -> i64 {
    [1, 2, 3, 4][(line - 1) as usize]
}

/// Terms up to which the `e^x - e` comparison is truncated.
fn e4_2_terms(x: &ExactInt) -> u32 {
    exp_convergence_report(x, 12).max(3)
}

/// `sum_{m=1}^{x-1} U(x,m) x^(n-3) + gsum(x, n-3)`: the geometric tail is added once.
fn tail_outside(x: &ExactInt, n: u32, form: i64) -> ExactRat {
    row_form(x, form) * xp(x, i64::from(n) - 3) + q(gsum_int(x, n - 3))
}

/// Number of `k`-faces according to the hypercube lemma,
/// `sum_{j=0}^{k} C(n,k) C(k,j) (-1)^(k-j) (p-1)^j`.
pub fn face_count_claim(n: u64, k: i64, p: i64) -> Result<ExactInt> {
    if k < 0 || k as u64 > n {
        return Err(domain(format!("face_count_claim: k={k} outside [0, {n}]")));
    }
    if p < 1 {
        return Err(domain(format!("face_count_claim: p={p} must be >= 1")));
    }
    let base = ExactInt::from(p - 1);
    let kk = k as u64;
    Ok((0..=kk)
        .map(|j| {
            let sign = if (kk - j) % 2 == 0 { 1 } else { -1 };
            binom(n, k) * binom(kk, j as i64) * sign * pw(&base, j as u32)
        })
        .sum())
}

fn t9_supplement(_: &[Failure]) -> Vec<String> {
    let mut out = Vec::new();
    for (x, a0, b0, a1, b1) in TABLE_9 {
        let c = ab_coefficients(&x.into()).expect("x >= 1");
        let xb = ExactInt::from(x);
        let cube = pw(&xb, 3);
        for (label, pa, pb, ca, cb) in [("0", a0, b0, &c.a0, &c.b0), ("1", a1, b1, &c.a1, &c.b1)] {
            if ExactInt::from(pa) == *ca && ExactInt::from(pb) == *cb {
                continue;
            }
            let consistent = ExactInt::from(pa) * &xb - pb == cube;
            if consistent {
                out.push(format!(
                    "x={x}: printed (A{label}, B{label}) = ({pa}, {pb}), closed forms give ({ca}, {cb}); \
                     both satisfy A*x - B = x^3, so the pair is not unique"
                ));
            } else {
                let forced = ExactInt::from(pa) * &xb - &cube;
                out.push(format!(
                    "erratum at x={x}: printed B{label} = {pb}, but A{label}*x - B{label} = x^3 with A{label} = {pa} forces B{label} = {forced}"
                ));
            }
        }
    }
    out
}

fn e2_30_quotient(p: &Point) -> ExactRat {
    let x = q(p.int("x"));
    let n = p.u32("n");
    let h = ExactRat::new(ExactInt::one(), pw(&ExactInt::from(10), p.u32("e")));
    (&x * gsum(&(&x + &h), n) - (&x - &h) * gsum(&x, n)) / h
}

fn e2_30_supplement(failures: &[Failure]) -> Vec<String> {
    let mut seen: Vec<(ExactInt, u32)> = Vec::new();
    let mut out = Vec::new();
    for f in failures {
        let x = f.point.int("x");
        let n = f.point.u32("n");
        if seen.contains(&(x.clone(), n)) {
            continue;
        }
        seen.push((x.clone(), n));
        let limit: ExactInt = (0..n).map(|i| ExactInt::from(i + 1) * pw(&x, i)).sum();
        let derivative = ExactInt::from(n) * pw(&x, n - 1);
        out.push(format!(
            "x={x}, n={n}: limit {limit} vs derivative {derivative} (mismatch {})",
            &limit - &derivative
        ));
    }
    out
}

fn e2_19_supplement(_: &[Failure]) -> Vec<String> {
    // Printed coefficient C(n,2) in place of C(n,k), at x=3, n=2, m=1.
    let (x, n, m) = (ExactInt::from(3), 2u32, 1u32);
    let inner: ExactInt = (0..3u64)
        .map(|j| {
            (1..=n)
                .map(|k| binom(u64::from(n), 2) * pw(&ExactInt::from(j), n - k))
                .sum::<ExactInt>()
        })
        .sum();
    let tail: ExactInt = (0..m).map(|i| pw(&x, n + i)).sum();
    let residual = pw(&x, n + m) - (inner + tail);
    vec![format!(
        "with the printed inner coefficient C(n,2) the residual at x=3, n=2, m=1 is {residual}"
    )]
}

fn f2_20_supplement(_: &[Failure]) -> Vec<String> {
    let mut cells = 0;
    let mut v1 = 0;
    for (n, row) in V2_CAPTION_ROWS.iter().enumerate() {
        for (k, val) in row.iter().enumerate() {
            cells += 1;
            if v_coeff(1, n as u64, k as u64).unwrap() == ExactInt::from(*val) {
                v1 += 1;
            }
        }
    }
    vec![format!("printed entries equal V_1(n,k) at {v1} of {cells} cells")]
}

pub(super) fn build() -> Vec<IdentityRecord> {
    let mut r = Vec::new();

    // Binomial theorem, telescoping and the difference table.
    r.push(verified(
        "E1_2",
        "(x+y)^n = sum_{k=0}^{n} C(n,k) x^(n-k) y^k",
        Domain::new().var("x", -6, 6).var("y", -6, 6).var("n", 0, 8),
        |p| q(pw(&(p.int("x") + p.int("y")), p.u32("n"))),
        |p| {
            let (x, y, n) = (p.int("x"), p.int("y"), p.u32("n"));
            (0..=n).map(|k| q(binom(n.into(), k.into()) * pw(&x, n - k) * pw(&y, k))).sum()
        },
    ));
    r.push(
        audited(
            "L1_4",
            "x^n = sum_{j=0}^{x-1} sum_{k=1}^{n} C(n,k) j^(n-k) h^k for real h",
            Domain::new().var("x", 2, 6).var("n", 1, 5).rat_var("h", -4, 8, 4),
            |p| q(pw(&p.int("x"), p.u32("n"))),
            |p| {
                let (x, n, h) = (p.u64("x"), p.u32("n"), p.rat("h"));
                (0..x)
                    .map(|j| {
                        (1..=n)
                            .map(|k| {
                                q(binom(n.into(), k.into()) * pw(&ExactInt::from(j), n - k))
                                    * crate::exact::rat_pow(h, k.into()).unwrap()
                            })
                            .sum::<ExactRat>()
                    })
                    .sum()
            },
        )
        .note("the telescoping step needs h = 1; for other h the right side is sum_{j<x} (j+h)^n - j^n"),
    );
    r.push(verified(
        "E1_5",
        "x^n = sum_{k=0}^{x-1} (k+1)^n - k^n",
        Domain::new().var("x", 0, 40).var("n", 1, 10),
        |p| q(pw(&p.int("x"), p.u32("n"))),
        |p| q(telescope_power(p.u64("x"), p.u32("n")).value),
    ));
    r.push(verified(
        "E1_7",
        "(x+h)^n - x^n = sum_{k=1}^{n} C(n,k) x^(n-k) h^k",
        Domain::new().rat_var("x", -9, 9, 3).rat_var("h", -6, 6, 2).var("n", 1, 6),
        |p| {
            let (x, h, n) = (p.rat("x"), p.rat("h"), i64::from(p.u32("n")));
            crate::exact::rat_pow(&(x + h), n).unwrap() - crate::exact::rat_pow(x, n).unwrap()
        },
        |p| binomial_diff(p.rat("x"), p.u32("n"), p.rat("h")),
    ));
    r.push(verified(
        "T1_8",
        "printed difference table of x^3 = forward differences of x^3 (x in [0,10], orders 0..3)",
        Domain::new()
            .var("x", 0, 10)
            .var("d", 0, 3)
            .when("x + d <= 10", |p| p.i64("x") + p.i64("d") <= 10),
        |p| printed(&TABLE_1, p.u64("x"), p.u64("d")),
        |p| {
            let t = difference_table(3, 10, 3).unwrap();
            q(t.cell(p.u64("x"), p.u64("d") as usize).unwrap().clone())
        },
    ));
    r.push(verified(
        "E1_9",
        "(x+1)^3 - x^3 = 1 + 3!*0 + 3!*1 + ... + 3!*x",
        Domain::new().var("x", 0, 100),
        |p| {
            let x = p.int("x");
            q(pw(&(&x + 1), 3) - pw(&x, 3))
        },
        |p| q(ExactInt::one() + (0..=p.u64("x")).map(|j| ExactInt::from(6 * j)).sum::<ExactInt>()),
    ));
    r.push(verified(
        "E1_10",
        "x^3 = sum_{i=0}^{x-1} (1 + 3!*0 + 3!*1 + ... + 3!*i)",
        Domain::new().var("x", 0, 60),
        |p| q(pw(&p.int("x"), 3)),
        |p| {
            (0..p.u64("x"))
                .map(|i| q(1 + (0..=i).map(|j| 6 * j).sum::<u64>()))
                .sum()
        },
    ));
    r.push(verified(
        "E1_11",
        "x^3 = x + sum_{m=0}^{x-1} (x-m) * 3! * m",
        Domain::new().var("x", 0, 60),
        |p| q(pw(&p.int("x"), 3)),
        |p| {
            let x = p.int("x");
            let s: ExactInt = (0..p.u64("x")).map(|m| (&x - m) * 6 * m).sum();
            q(s + &x)
        },
    ));
    r.push(verified(
        "E1_12",
        "x^3 = sum_{m=0}^{x-1} 3!*m*x - 3!*m^2 + 1",
        Domain::new().var("x", 0, 100),
        |p| q(pw(&p.int("x"), 3)),
        |p| {
            let x = p.int("x");
            (0..p.u64("x")).map(|m| q(ExactInt::from(6 * m) * &x - 6 * m * m + 1)).sum()
        },
    ));
    r.push(verified(
        "E1_14",
        "T(x, {1..x}) = T(x, {0..x-1}), T(x, S) = sum_{m in S} 6mx - 6m^2 + 1",
        Domain::new().var("x", 1, 100),
        |p| q(iteration_set_sum(p.u64("x"), IterationSet::A, SumForm::T).unwrap()),
        |p| q(iteration_set_sum(p.u64("x"), IterationSet::C, SumForm::T).unwrap()),
    ));
    r.push(
        verified(
            "E1_15",
            "U(x, {1..x}) = U(x, {0..x}) = U(x, {0..x-1}), U(x, S) = x + 6 sum_{m in S} mx - m^2",
            Domain::new().var("x", 1, 100).var("set", 0, 1),
            |p| {
                let set = if p.i64("set") == 0 { IterationSet::A } else { IterationSet::B };
                q(iteration_set_sum(p.u64("x"), set, SumForm::U).unwrap())
            },
            |p| q(iteration_set_sum(p.u64("x"), IterationSet::C, SumForm::U).unwrap()),
        )
        .note("set=0 is {1..x}, set=1 is {0..x}; both are compared with {0..x-1}"),
    );
    r.push(verified(
        "E1_16",
        "y(n,k) = 3!*k*n - 3!*k^2 + 1 generates the rows of the U triangle, 0 <= k <= n",
        Domain::new().var("n", 0, 60).var("k", 0, 60).when("k <= n", k_le_n),
        |p| {
            let (n, k) = (i128::from(p.i64("n")), i128::from(p.i64("k")));
            q(6 * k * n - 6 * k * k + 1)
        },
        |p| q(TriangleKind::U.entry(p.u64("n"), p.u64("k"))),
    ));
    r.push(verified(
        "FIG2",
        "plotted points (k, y) at x = 10 = (k, 6*10*k - 6k^2 + 1)",
        Domain::new().var("k", 0, 10),
        |p| q(PARABOLA_X10[p.u64("k") as usize]),
        |p| q(u_coeff(10, p.int("k"))),
    ));

    // V_M triangles and geometric forms.
    r.push(verified(
        "F2_1",
        "printed rows 0..4 = 6kn - 6k^2 + 1 - n^2 for 0<k<n, 1 for k in {0,n}",
        Domain::new().var("n", 0, 4).var("k", 0, 4).when("k <= n", k_le_n),
        |p| printed(&REDUCED_1_ROWS, p.u64("n"), p.u64("k")),
        |p| q(TriangleKind::Reduced1.entry(p.u64("n"), p.u64("k"))),
    ));
    r.push(verified(
        "F2_2",
        "printed rows 0..4 = 6kn - 6k^2 + 1 - n^2 - n for 0<k<n, 1 for k in {0,n}",
        Domain::new().var("n", 0, 4).var("k", 0, 4).when("k <= n", k_le_n),
        |p| printed(&REDUCED_2_ROWS, p.u64("n"), p.u64("k")),
        |p| q(TriangleKind::Reduced2.entry(p.u64("n"), p.u64("k"))),
    ));
    r.push(verified(
        "D2_3",
        "V_M(n,k) = n^0 + n^1 + ... + n^M for 0<k<n, 1 for k in {0,n}",
        Domain::new().var("M", 0, 5).var("n", 0, 12).var("k", 0, 12).when("k <= n", k_le_n),
        |p| q(v_coeff(p.u32("M"), p.int("n"), p.int("k")).unwrap()),
        |p| {
            let (n, k) = (p.i64("n"), p.i64("k"));
            if k == 0 || k == n {
                q(1)
            } else {
                (0..=p.u32("M")).map(|i| q(pw(&p.int("n"), i))).sum()
            }
        },
    ));
    r.push(verified(
        "E2_6",
        "V_M(n,k) = V_M(n,j) for 1 <= k < j <= n-1",
        Domain::new()
            .var("M", 0, 4)
            .var("n", 3, 14)
            .var("k", 1, 12)
            .var("j", 2, 13)
            .when("k < j <= n - 1", |p| p.i64("k") < p.i64("j") && p.i64("j") < p.i64("n")),
        |p| q(v_coeff(p.u32("M"), p.int("n"), p.int("k")).unwrap()),
        |p| q(v_coeff(p.u32("M"), p.int("n"), p.int("j")).unwrap()),
    ));
    r.push(
        verified(
            "E2_7",
            "n^M = sum_{k=0}^{n-1} V_{M-1}(n,k), M in {1,2,3}",
            Domain::new().var("M", 1, 3).var("n", 0, 30),
            |p| q(pw(&p.int("n"), p.u32("M"))),
            |p| (0..p.u64("n")).map(|k| q(v_coeff(p.u32("M") - 1, p.int("n"), k).unwrap())).sum(),
        )
        .note("the restriction M in {1,2,3} is not needed; see E2_10"),
    );
    r.push(verified(
        "X2_8",
        "4^3 = 1 + 21 + 21 + 21 with 21 = V_2(4,k) = 1 + 4 + 4^2",
        Domain::new(),
        |_| q(1 + 3 * (1 + 4 + 16)),
        |_| {
            (0..4u64)
                .map(|k| q(v_coeff(2, 4, k).unwrap()))
                .sum::<ExactRat>()
        },
    ));
    r.push(verified(
        "E2_10",
        "x^n = sum_{k=0}^{x-1} V_{n-1}(x,k)",
        Domain::new().var("x", 1, 30).var("n", 1, 10),
        |p| q(pw(&p.int("x"), p.u32("n"))),
        |p| (0..p.u64("x")).map(|k| q(v_coeff(p.u32("n") - 1, p.int("x"), k).unwrap())).sum(),
    ));
    r.push(verified(
        "F2_11",
        "x = sum_{k=0}^{x-1} V_0(x,k) (all-ones triangle)",
        Domain::new().var("x", 0, 50),
        |p| q(p.int("x")),
        |p| {
            let x = p.u64("x");
            (0..x).map(|k| q(TriangleKind::Ones.entry(x, k))).sum()
        },
    ));
    r.push(verified(
        "E2_12",
        "x^2 = 1 + sum_{k=1}^{x-1} (V_0(x,k) + x)",
        Domain::new().var("x", 1, 50),
        |p| q(pw(&p.int("x"), 2)),
        |p| {
            let x = p.int("x");
            let s: ExactInt = (1..p.u64("x")).map(|k| v_coeff(0, x.clone(), k).unwrap() + &x).sum();
            q(s + 1)
        },
    ));
    r.push(verified(
        "E2_13",
        "x^n = sum_{k=0}^{x-1} x^(n-1)",
        Domain::new().var("x", 0, 20).var("n", 1, 8),
        |p| q(pw(&p.int("x"), p.u32("n"))),
        |p| (0..p.u64("x")).map(|_| q(pw(&p.int("x"), p.u32("n") - 1))).sum(),
    ));
    r.push(verified(
        "E2_14",
        "x^n = 1 + (x-1)(x^0 + x^1 + ... + x^(n-1))",
        Domain::new().var("x", 0, 60).var("n", 0, 10),
        |p| q(pw(&p.int("x"), p.u32("n"))),
        |p| {
            let x = p.int("x");
            q(ExactInt::one() + (&x - 1) * gsum_int(&x, p.u32("n")))
        },
    ));
    r.push(verified(
        "E2_15",
        "x^n = 1 + sum_{k=0}^{n-1} x^(k+1) - x^k",
        Domain::new().var("x", 0, 30).var("n", 0, 10),
        |p| q(pw(&p.int("x"), p.u32("n"))),
        |p| {
            let x = p.int("x");
            q(ExactInt::one() + (0..p.u32("n")).map(|k| pw(&x, k + 1) - pw(&x, k)).sum::<ExactInt>())
        },
    ));
    r.push(verified(
        "E2_16",
        "f(x) = 1 + sum_{k=0}^{n-1} g(x,k+1) - g(x,k), f(x) = x^n, g(x,k) = x^k",
        Domain::new().var("x", 0, 30).var("n", 0, 10),
        |p| q(pw(&p.int("x"), p.u32("n"))),
        |p| {
            let x = p.int("x");
            let g = |k: u32| pw(&x, k);
            q(ExactInt::one() + (0..p.u32("n")).map(|k| g(k + 1) - g(k)).sum::<ExactInt>())
        },
    ));
    r.push(
        verified(
            "E2_17",
            "x^n/(x-1) - 1/(x-1) = x^0 + x^1 + ... + x^(n-1)",
            Domain::new().var("x", 2, 40).var("n", 1, 10),
            |p| {
                let x = p.int("x");
                let d: ExactInt = &x - 1;
                ExactRat::new(pw(&x, p.u32("n")), d.clone()) - ExactRat::new(ExactInt::one(), d)
            },
            |p| q(gsum_int(&p.int("x"), p.u32("n"))),
        )
        .note("x = 1 is excluded: the left side divides by x - 1"),
    );
    r.push(verified(
        "E2_18",
        "x^n = sum_{j=0}^{x-1} sum_{k=1}^{n} C(n,k) j^(n-k)",
        Domain::new().var("x", 0, 30).var("n", 1, 10),
        |p| q(pw(&p.int("x"), p.u32("n"))),
        |p| {
            let n = p.u32("n");
            (0..p.u64("x"))
                .map(|j| {
                    (1..=n)
                        .map(|k| q(binom(n.into(), k.into()) * pw(&ExactInt::from(j), n - k)))
                        .sum::<ExactRat>()
                })
                .sum()
        },
    ));
    r.push(
        audited(
            "E2_19",
            "x^(n+m) = sum_{j=0}^{x-1} sum_{k=1}^{n} C(n,k) j^(n-k) + x^n + x^(n+1) + ... + x^(n+m-1)",
            Domain::new().var("x", 1, 8).var("n", 1, 6).var("m", 1, 4),
            |p| q(pw(&p.int("x"), p.u32("n") + p.u32("m"))),
            |p| {
                let (x, n, m) = (p.int("x"), p.u32("n"), p.u32("m"));
                let inner: ExactInt = (0..p.u64("x"))
                    .map(|j| {
                        (1..=n)
                            .map(|k| binom(n.into(), k.into()) * pw(&ExactInt::from(j), n - k))
                            .sum::<ExactInt>()
                    })
                    .sum();
                let tail: ExactInt = (0..m).map(|i| pw(&x, n + i)).sum();
                q(inner + tail)
            },
        )
        .note("inner coefficient evaluated as C(n,k), the coefficient of the preceding double sum; the display prints C(n,2)")
        .supplement(e2_19_supplement),
    );
    r.push(
        audited(
            "F2_20",
            "printed rows 0..4 captioned V_2(n,k) = V_2(n,k)",
            Domain::new().var("n", 0, 4).var("k", 0, 4).when("k <= n", k_le_n),
            |p| printed(&V2_CAPTION_ROWS, p.u64("n"), p.u64("k")),
            |p| q(v_coeff(2, p.int("n"), p.int("k")).unwrap()),
        )
        .supplement(f2_20_supplement),
    );
    r.push(verified(
        "E2_21",
        "x^2 = sum_{k=0}^{|x|-1} 2k + 1",
        Domain::new().var("x", -50, 50),
        |p| q(pw(&p.int("x"), 2)),
        |p| q((0..p.i64("x").unsigned_abs()).map(|k| 2 * k + 1).sum::<u64>()),
    ));
    r.push(
        audited(
            "E2_22",
            "x^2 = sum_{k=0}^{n-1} V_2(2k, k)",
            Domain::new().var("x", 1, 10),
            |p| q(pw(&p.int("x"), 2)),
            |p| (0..p.i64("x")).map(|k| q(v_coeff(2, 2 * k, k).unwrap())).sum(),
        )
        .note("n is tied to x (n = x); the right side does not involve x otherwise"),
    );
    r.push(verified(
        "E2_23",
        "(x+y)^n = 1 + (x+y-1) V_{n-1}(x+y, k)",
        Domain::new()
            .var("x", 0, 10)
            .var("y", 0, 10)
            .var("n", 0, 8)
            .when("x + y >= 1", |p| p.i64("x") + p.i64("y") >= 1),
        |p| q(pw(&(p.int("x") + p.int("y")), p.u32("n"))),
        |p| {
            let s = p.int("x") + p.int("y");
            q(ExactInt::one() + (&s - 1) * gsum_int(&s, p.u32("n")))
        },
    ));
    r.push(verified(
        "E2_25",
        "sum_{k=0}^{n} C(n,k) x^(n-k) y^k = 1 + x*G + y*G - G, G = sum_{i<n} (x+y)^i",
        Domain::new()
            .var("x", 0, 10)
            .var("y", 0, 10)
            .var("n", 0, 8)
            .when("x + y >= 1", |p| p.i64("x") + p.i64("y") >= 1),
        |p| {
            let (x, y, n) = (p.int("x"), p.int("y"), p.u32("n"));
            (0..=n).map(|k| q(binom(n.into(), k.into()) * pw(&x, n - k) * pw(&y, k))).sum()
        },
        |p| {
            let b = expand_binomial_pair(&p.int("x"), &p.int("y"), p.u32("n")).unwrap();
            q(ExactInt::one() + b.x_total + b.y_total - b.unit_total)
        },
    ));
    r.push(
        verified(
            "E2_26",
            "(x_1 + x_2 + x_3)^n = 1 + sum_{i=0}^{n-1} (x_1 + x_2 + x_3 - 1)(x_1 + x_2 + x_3)^i",
            Domain::new()
                .var("x1", 0, 4)
                .var("x2", 0, 4)
                .var("x3", 0, 4)
                .var("n", 0, 6)
                .when("x1 + x2 + x3 >= 1", |p| p.i64("x1") + p.i64("x2") + p.i64("x3") >= 1),
            |p| q(pw(&(p.int("x1") + p.int("x2") + p.int("x3")), p.u32("n"))),
            |p| {
                let s = p.int("x1") + p.int("x2") + p.int("x3");
                q(ExactInt::one() + (0..p.u32("n")).map(|i| (&s - 1) * pw(&s, i)).sum::<ExactInt>())
            },
        )
        .note("the left side is printed without the exponent n"),
    );
    r.push(
        verified(
            "E2_27",
            "(x+1)^n - x^n = x[V_{n-1}(x+1,k) - V_{n-1}(x,k)] + V_{n-1}(x,k)",
            Domain::new().var("x", 1, 50).var("n", 1, 10),
            |p| {
                let x = p.int("x");
                q(pw(&(&x + 1), p.u32("n")) - pw(&x, p.u32("n")))
            },
            |p| {
                let (x, n) = (p.int("x"), p.u32("n"));
                let g0 = gsum_int(&x, n);
                q(&x * (gsum_int(&(&x + 1), n) - &g0) + g0)
            },
        )
        .note("the intermediate line x V_{n-1}(x+1,k) - x^n - 1 has a sign slip; it equals the difference only with + 1"),
    );
    r.push(verified(
        "X2_28",
        "Delta f(3) = 3((3+1)^0 + (3+1)^1 + (3+1)^2) - (3-1)(3^0 + 3^1 + 3^2) = 63 - 26 = 37",
        Domain::new(),
        |_| q(63 - 26),
        |_| {
            let (three, four) = (ExactInt::from(3), ExactInt::from(4));
            q(&three * gsum_int(&four, 3) - (&three - 1) * gsum_int(&three, 3))
        },
    ));
    r.push(
        audited(
            "E2_29",
            "Delta^m(x^n) = sum_{k=0}^{m-1} (x-k)[V_{n-1}(x+m-k,t) - V_{n-1}(x+m-k+1,t)]",
            Domain::new().var("x", 0, 8).var("n", 1, 6).var("m", 1, 4),
            |p| {
                let (x, n, m) = (p.i64("x"), p.u32("n"), p.i64("m"));
                let values: Vec<ExactRat> = (x..=x + m).map(|v| q(pw(&v.into(), n))).collect();
                forward_diff_seq(&values, m as usize).unwrap()[0].clone()
            },
            |p| {
                let (x, n, m) = (p.i64("x"), p.u32("n"), p.i64("m"));
                (0..m)
                    .map(|k| {
                        let a = gsum_int(&(x + m - k).into(), n);
                        let b = gsum_int(&(x + m - k + 1).into(), n);
                        q(ExactInt::from(x - k) * (a - b))
                    })
                    .sum()
            },
        )
        .note("V_{n-1}(y,t) is read as the interior value y^0 + ... + y^(n-1); t plays no role"),
    );
    r.push(
        audited(
            "E2_30",
            "d/dx x^n = lim_{h->0} [x V_{n-1}(x+h,k) - (x-h) V_{n-1}(x,k)] / h",
            Domain::new().var("x", 1, 5).var("n", 1, 5).var("e", 1, 8),
            |p| q(ExactInt::from(p.u32("n")) * pw(&p.int("x"), p.u32("n") - 1)),
            e2_30_quotient,
        )
        .note("h = 10^(-e); the quotient tends to sum_{i<n} (i+1) x^i")
        .supplement(e2_30_supplement),
    );

    // The U coefficient and its row sums.
    r.push(verified(
        "D3_1",
        "U(n,k) = 3!*n*k - 3!*k^2 + 1 for all integers n, k",
        Domain::new().var("n", -30, 30).var("k", -30, 30),
        |p| q(u_coeff(p.int("n"), p.int("k"))),
        |p| {
            let (n, k) = (i128::from(p.i64("n")), i128::from(p.i64("k")));
            q(6 * n * k - 6 * k * k + 1)
        },
    ));
    r.push(verified(
        "E3_3",
        "U(n,k) = 3!*n*k - 3!*n^0*k^2 + n^0",
        Domain::new().var("n", 0, 40).var("k", 0, 40).when("k <= n", k_le_n),
        |p| {
            let (n, k) = (p.int("n"), p.int("k"));
            let n0 = pw(&n, 0);
            q(ExactInt::from(6) * &n * &k - ExactInt::from(6) * &n0 * &k * &k + n0)
        },
        |p| q(u_coeff(p.int("n"), p.int("k"))),
    ));
    r.push(verified(
        "E3_5",
        "sum_{k=0}^{n-1} U(n,k) = A_0 n - B_0 = n^3",
        Domain::new().var("n", 0, 200),
        |p| q(row_sum_u(p.u64("n"), RowRange::ExclLast)),
        |p| {
            let n = p.int("n");
            match ab_coefficients(&n) {
                Ok(c) => q(c.a0 * &n - c.b0),
                Err(_) => q(pw(&n, 3)),
            }
        },
    ));
    r.push(verified(
        "E3_6",
        "sum_{k=1}^{n} U(n,k) = A_1 n - B_1 = n^3",
        Domain::new().var("n", 0, 200),
        |p| q(row_sum_u(p.u64("n"), RowRange::ExclFirst)),
        |p| {
            let n = p.int("n");
            match ab_coefficients(&n) {
                Ok(c) => q(c.a1 * &n - c.b1),
                Err(_) => q(pw(&n, 3)),
            }
        },
    ));
    r.push(verified(
        "P3_4_2",
        "A_{0,n+1} = A_{1,n}",
        Domain::new().var("n", 1, 200),
        |p| q(ab_coefficients(&(p.int("n") + 1)).unwrap().a0),
        |p| q(ab_coefficients(&p.int("n")).unwrap().a1),
    ));
    r.push(verified(
        "P3_4_3",
        "n^(m-3) sum_{k=0}^{n-1} U(n,k) = n^m",
        Domain::new().var("n", 1, 40).var("m", 0, 9),
        |p| q(row_sum_u(p.u64("n"), RowRange::ExclLast)) * xp(&p.int("n"), p.i64("m") - 3),
        |p| q(pw(&p.int("n"), p.u32("m"))),
    ));
    r.push(verified(
        "E3_7",
        "sum_{k=0}^{n} U(n,k) = n^3 + 1",
        Domain::new().var("n", 0, 200),
        |p| q(row_sum_u(p.u64("n"), RowRange::InclLast)),
        |p| q(pw(&p.int("n"), 3) + 1),
    ));
    r.push(verified(
        "P3_4_5",
        "n^(m-3) sum_{k=0}^{n} U(n,k) = n^m + n^(m-3)",
        Domain::new().var("n", 1, 40).var("m", 0, 9),
        |p| q(row_sum_u(p.u64("n"), RowRange::InclLast)) * xp(&p.int("n"), p.i64("m") - 3),
        |p| {
            let n = p.int("n");
            q(pw(&n, p.u32("m"))) + xp(&n, p.i64("m") - 3)
        },
    ));
    r.push(verified(
        "E3_8",
        "U((n^2+n+2)/2, 1) = (n+1)^3 - n^3",
        Domain::new().var("n", 0, 300),
        |p| {
            let n = p.int("n");
            q(u_coeff((&n * &n + &n + 2) / 2, 1))
        },
        |p| {
            let n = p.int("n");
            q(pw(&(&n + 1), 3) - pw(&n, 3))
        },
    ));
    r.push(verified(
        "E3_9",
        "2 U(n,k) = U(n+1,k) + U(n-1,k) for n > 0 and any k",
        Domain::new().var("n", 1, 300).var("k", -50, 50),
        |p| q(u_coeff(p.int("n"), p.int("k")) * 2),
        |p| {
            let (n, k) = (p.int("n"), p.int("k"));
            q(u_coeff(&n + 1, k.clone()) + u_coeff(&n - 1, k))
        },
    ));
    r.push(verified(
        "E3_10",
        "2 U(n,k) = U(2n-k,k) + U(2n-k,0) for n > k",
        Domain::new().var("n", 1, 300).var("k", 0, 299).when("k < n", |p| p.i64("k") < p.i64("n")),
        |p| q(u_coeff(p.int("n"), p.int("k")) * 2),
        |p| {
            let (n, k) = (p.int("n"), p.int("k"));
            let row: ExactInt = ExactInt::from(2) * &n - &k;
            q(u_coeff(row.clone(), k) + u_coeff(row, 0))
        },
    ));
    r.push(
        audited(
            "E3_11",
            "n^3 = sum_{k=0}^{n-1} U((n^2+n+2)/2, 1)",
            Domain::new().var("n", 0, 40),
            |p| q(pw(&p.int("n"), 3)),
            |p| {
                let n = p.int("n");
                q(&n * u_coeff((&n * &n + &n + 2) / 2, 1))
            },
        )
        .note("the summand does not depend on k as printed; with the running index, sum_{k=0}^{n-1} U((k^2+k+2)/2, 1) = n^3 for every n"),
    );
    r.push(verified(
        "P3_4_11",
        "U(n,k) = U(n,n-k)",
        Domain::new().var("n", 0, 300).var("k", 0, 300).when("k <= n", k_le_n),
        |p| q(u_coeff(p.int("n"), p.int("k"))),
        |p| {
            let n = p.int("n");
            q(u_coeff(n.clone(), &n - p.int("k")))
        },
    ));
    r.push(
        verified(
            "P3_4_13",
            "U(n,k) = 6 R(n,k) - 5, R(n,k) = nk - k^2 + 1 (Rascal triangle)",
            Domain::new().var("n", 0, 300).var("k", 0, 300).when("k <= n", k_le_n),
            |p| q(u_coeff(p.int("n"), p.int("k"))),
            |p| {
                let (n, k) = (p.int("n"), p.int("k"));
                q((&n * &k - &k * &k + 1) * 6 - 5)
            },
        )
        .note("the Rascal entry is evaluated from nk - k^2 + 1, independently of U"),
    );

    // Power expansions through U.
    let x_n = || Domain::new().var("x", 1, 30).var("n", 0, 12);
    let power: Evaluator = |p| q(pw(&p.int("x"), p.u32("n")));
    r.push(verified(
        "E3_12A",
        "x^n = sum_{k=0}^{x-1} U(x,k) x^(n-3)",
        x_n(),
        power,
        |p| {
            let x = p.int("x");
            let s: ExactInt = (0..p.u64("x")).map(|k| u_coeff(x.clone(), k)).sum();
            q(s) * xp(&x, p.i64("n") - 3)
        },
    ));
    r.push(verified(
        "E3_12B",
        "x^n = 1/2 sum_{k=0}^{x-1} [U(x+1,k) + U(x-1,k)] x^(n-3)",
        x_n(),
        power,
        |p| {
            let x = p.int("x");
            let s: ExactInt = (0..p.u64("x")).map(|k| u_coeff(&x + 1, k) + u_coeff(&x - 1, k)).sum();
            half() * q(s) * xp(&x, p.i64("n") - 3)
        },
    ));
    r.push(verified(
        "E3_12R",
        "x^n = sum_{k=0}^{x-1} 1/2 [U(2x-k,k) + U(2x-k,0)] x^(n-3)",
        x_n(),
        power,
        |p| {
            let x = p.int("x");
            let s: ExactInt = (0..p.u64("x"))
                .map(|k| {
                    let row: ExactInt = ExactInt::from(2) * &x - k;
                    u_coeff(row.clone(), k) + u_coeff(row, 0)
                })
                .sum();
            half() * q(s) * xp(&x, p.i64("n") - 3)
        },
    ));
    r.push(
        audited(
            "E3_12C",
            "x^n = sum_{k=0}^{x-1} 1/2 U((x^2+x+2)/2, 1) x^(n-3)",
            x_n(),
            power,
            |p| {
                let x = p.int("x");
                let term = half() * q(u_coeff((&x * &x + &x + 2) / 2, 1));
                term * q(x.clone()) * xp(&x, p.i64("n") - 3)
            },
        )
        .note("as printed the summand ignores k and carries a factor 1/2; with the running index and no 1/2, sum_{k=0}^{x-1} U((k^2+k+2)/2, 1) x^(n-3) = x^n (strategy u-central)"),
    );
    r.push(
        verified(
            "E3_12D",
            "x^n = sum_{k=0}^{x-1} 1/2 [U((k^2+k)/2, 1) + U((k^2+k+4)/2, 1)] x^(n-3)",
            x_n(),
            power,
            |p| {
                let x = p.int("x");
                let s: ExactInt = (0..p.u64("x"))
                    .map(|k| {
                        let k = ExactInt::from(k);
                        let t = &k * &k + &k;
                        u_coeff(&t / 2, 1) + u_coeff((&t + 4) / 2, 1)
                    })
                    .sum();
                half() * q(s) * xp(&x, p.i64("n") - 3)
            },
        )
        .note("the display writes x for the running index k; the index is read as k"),
    );
    r.push(
        verified(
            "E3_12E",
            "x^n = sum_{k=0}^{x-1} 1/2 [U(C(k+1,2), 1) + U(C(k+1,2) + C(2,1), 1)] x^(n-3)",
            x_n(),
            power,
            |p| {
                let x = p.int("x");
                let s: ExactInt = (0..p.u64("x"))
                    .map(|k| {
                        let t = binom(k + 1, 2);
                        u_coeff(t.clone(), 1) + u_coeff(t + binom(2, 1), 1)
                    })
                    .sum();
                half() * q(s) * xp(&x, p.i64("n") - 3)
            },
        )
        .note("the display writes C(n+1,2) for C(k+1,2); the index is read as k"),
    );
    r.push(
        audited(
            "E3_13",
            "x^3 = sum_{m=1}^{x-1} (3!*m*x - 3!*m^2) + x/(x-1), x != 1",
            Domain::new().var("x", 2, 30),
            |p| q(pw(&p.int("x"), 3)),
            |p| {
                let x = p.int("x");
                let s: ExactInt = (1..p.u64("x")).map(|m| ExactInt::from(6 * m) * &x - 6 * m * m).sum();
                q(s) + ExactRat::new(x.clone(), &x - 1)
            },
        )
        .note("x/(x-1) is added once; placed inside the sum (x-1 copies) the identity holds for every x >= 2"),
    );
    r.push(
        audited(
            "E3_14",
            "x^n - 1 = sum_{m=1}^{x-1} U(x,m) x^(n-3) + x^(n-4) + ... + x + 1",
            Domain::new().var("x", 2, 20).var("n", 3, 10),
            |p| q(pw(&p.int("x"), p.u32("n")) - 1),
            |p| tail_outside(&p.int("x"), p.u32("n"), 1),
        )
        .note("the geometric tail is added once; repeated for each m (the tail inside the m-sum) the identity holds for every x >= 2, n >= 3"),
    );
    r.push(
        audited(
            "E3_15",
            "x^n - 1 = sum_{k=1}^{x-1} R_line(x,k) x^(n-3) + x^(n-4) + ... + x + 1 for the four printed row forms",
            Domain::new().var("line", 1, 4).var("x", 2, 12).var("n", 3, 8),
            |p| q(pw(&p.int("x"), p.u32("n")) - 1),
            |p| tail_outside(&p.int("x"), p.u32("n"), e3_15_form(p.i64("line"))),
        )
        .note("line 1: (U(2x-k,k) + U(2x-k,0))/2; line 2: (U(x+1,k) + U(x-1,k))/2; line 3: (U((k^2+k)/2,1) + U((k^2+k+4)/2,1))/2; line 4: U((k^2+k+2)/2, 1)")
        .note("lines 3 and 4 use the running index and the range k = 1..x-1, as in the reference code; every row form sums to x^3 - 1")
        .note("the geometric tail is added once, as in E3_14"),
    );
    r.push(non_evaluable(
        "E3_16_17",
        "x^n = sum_{m=1}^{x-1} [U(x,m) - 1] x^(n-3) - x^(n-2) - x^(n-1) - ...",
        "the tails -1 - x^2 - x^3 - ... and -x^(n-2) - x^(n-1) - ... diverge for every integer x > 1",
    ));
    r.push(verified(
        "E3_18",
        "x^n = A x^(n-2) - B x^(n-3), (A,B) in {(A_0,B_0), (A_1,B_1)}",
        Domain::new().var("x", 1, 30).var("n", 0, 12).var("pair", 0, 1),
        power,
        |p| {
            let (a, b) = ab_pair(p);
            let (x, n) = (p.int("x"), p.i64("n"));
            q(a) * xp(&x, n - 2) - q(b) * xp(&x, n - 3)
        },
    ));
    r.push(verified(
        "E3_19",
        "x^n = A^2 x^(n-4) - 2AB x^(n-5) + B^2 x^(n-6)",
        Domain::new().var("x", 1, 30).var("n", 0, 12).var("pair", 0, 1),
        power,
        |p| {
            let (a, b) = ab_pair(p);
            let (x, n) = (p.int("x"), p.i64("n"));
            q(&a * &a) * xp(&x, n - 4) - q(&a * &b * 2) * xp(&x, n - 5) + q(&b * &b) * xp(&x, n - 6)
        },
    ));
    r.push(verified(
        "E3_20",
        "x^n = sum_{k=0}^{j} (-1)^k C(j,k) A^(j-k) B^k x^(n-2j-k)",
        Domain::new().var("x", 1, 15).var("n", 0, 12).var("j", 1, 5).var("pair", 0, 1),
        power,
        |p| {
            let (a, b) = ab_pair(p);
            gen_binomial_sum(&p.int("x"), p.u32("n"), p.u32("j"), &a, &b)
        },
    ));
    r.push(verified(
        "E3_21",
        "the depth-j expansion equals the depth-(j+1) expansion (repetition does not change the total)",
        Domain::new().var("x", 1, 10).var("n", 0, 10).var("j", 1, 8).var("pair", 0, 1),
        |p| {
            let (a, b) = ab_pair(p);
            gen_binomial_sum(&p.int("x"), p.u32("n"), p.u32("j"), &a, &b)
        },
        |p| {
            let (a, b) = ab_pair(p);
            gen_binomial_sum(&p.int("x"), p.u32("n"), p.u32("j") + 1, &a, &b)
        },
    ));
    r.push(
        audited(
            "T9",
            "printed A x - B = x^3 for the coefficient table, x in [1,10]",
            Domain::new().var("x", 1, 10).var("pair", 0, 1),
            |p| {
                let (x, a0, b0, a1, b1) = TABLE_9[p.u64("x") as usize - 1];
                let (a, b) = if p.i64("pair") == 0 { (a0, b0) } else { (a1, b1) };
                q(a * x - b)
            },
            |p| q(pw(&p.int("x"), 3)),
        )
        .note("closed forms: A_0 = 3x^2 - 3x, B_0 = 2x^3 - 3x^2, A_1 = 3x^2 + 3x, B_1 = 2x^3 + 3x^2")
        .supplement(t9_supplement),
    );

    // Exponential series.
    r.push(non_evaluable(
        "E4_1",
        "e^x = sum_{n>=0} 1/n! sum_{m=1}^{x-1} [U(x,m) - 1] x^(n-3) - x^(n-2) - x^(n-1) - ...",
        "built on the divergent tail of E3_16_17",
    ));
    r.push(
        audited(
            "E4_2",
            "e^x - e = sum_{n>=offset} 1/n! [sum_{m=1}^{x-1} R_line(x,m) x^(n-3) + x^(n-4) + ... + x + 1]",
            Domain::new().var("x", 2, 6).var("line", 1, 4).var("offset", 0, 1),
            |p| exp_minus_e_direct(&p.int("x"), e4_2_terms(&p.int("x"))),
            |p| {
                let x = p.int("x");
                let terms = e4_2_terms(&x);
                let form = e4_2_form(p.i64("line"));
                if form == 1 && p.i64("offset") == 0 {
                    return exp_minus_e_partial(&x, terms).unwrap();
                }
                (p.u32("offset")..=terms)
                    .map(|n| {
                        let numer = if n < 3 {
                            q(pw(&x, n) - 1)
                        } else {
                            tail_outside(&x, n, form)
                        };
                        numer / to_rat(&factorial(n))
                    })
                    .sum()
            },
        )
        .tolerance(|p| {
            let x = p.int("x");
            rat(1, 1_000_000_000_000) + tail_bound(&x, e4_2_terms(&x)) * q(2)
        })
        .note("both sides are truncated at the smallest N >= 3 whose tail bound is below 10^-12; a point passes when |lhs - rhs| <= 10^-12 + 2 * tail bound")
        .note("line 1: U(x,m); line 2: (U(x+1,m) + U(x-1,m))/2; line 3: U((m^2+m+2)/2, 1); line 4: (U((m^2+m)/2,1) + U((m^2+m+4)/2,1))/2, with the running index m as in the reference code")
        .note("terms n < 3 use (x^n - 1)/n! directly; the n = 0 term vanishes, so offset 0 and 1 agree")
        .note("the geometric tail is added once, as in E3_14; with the tail inside the m-sum every line holds"),
    );

    // Pascal rows, hypercubes.
    r.push(verified(
        "E5_1",
        "sum_{k=0}^{n} C(n,k) = 2^n",
        Domain::new().var("n", 0, 64),
        |p| {
            let n = p.u64("n");
            (0..=n).map(|k| q(binom(n, k as i64))).sum()
        },
        |p| q(pw(&ExactInt::from(2), p.u32("n"))),
    ));
    r.push(verified(
        "E5_2",
        "sum_{k=0}^{n} C(n,k) 2^k = 3^n",
        Domain::new().var("n", 0, 64),
        |p| {
            let n = p.u64("n");
            (0..=n).map(|k| q(TriangleKind::ScaledPascal2k.entry(n, k))).sum()
        },
        |p| q(pw(&ExactInt::from(3), p.u32("n"))),
    ));
    r.push(verified(
        "F5_10",
        "printed rows 0..4 = C(n,k) 2^k",
        Domain::new().var("n", 0, 4).var("k", 0, 4).when("k <= n", k_le_n),
        |p| printed(&SCALED_PASCAL_ROWS, p.u64("n"), p.u64("k")),
        |p| q(binom(p.u64("n"), p.i64("k")) * pw(&ExactInt::from(2), p.u32("k"))),
    ));
    let double_binomial: Evaluator = |p| {
        let (m, n) = (p.int("m"), p.u64("n"));
        (0..=n)
            .map(|k| {
                (0..=k)
                    .map(|j| {
                        let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
                        q(binom(n, k as i64) * binom(k, j as i64) * sign * pw(&m, j as u32))
                    })
                    .sum::<ExactRat>()
            })
            .sum()
    };
    r.push(verified(
        "E5_4",
        "m^n = sum_{k=0}^{n} sum_{j=0}^{k} C(n,k) C(k,j) (-1)^(k-j) m^j, m, n positive",
        Domain::new().var("m", 1, 30).var("n", 1, 12),
        |p| q(pw(&p.int("m"), p.u32("n"))),
        double_binomial,
    ));
    r.push(verified(
        "E5_5",
        "2^n = sum_{k=0}^{n} C(n,k) (2-1)^k",
        Domain::new().var("n", 0, 40),
        |p| q(pw(&ExactInt::from(2), p.u32("n"))),
        |p| {
            let n = p.u64("n");
            (0..=n).map(|k| q(binom(n, k as i64) * pw(&ExactInt::from(1), k as u32))).sum()
        },
    ));
    r.push(verified(
        "E5_6",
        "(2+1)^n = sum_{k=0}^{n} C(n,k) ((2-1)+1)^k",
        Domain::new().var("n", 0, 40),
        |p| q(pw(&ExactInt::from(3), p.u32("n"))),
        |p| {
            let n = p.u64("n");
            (0..=n).map(|k| q(binom(n, k as i64) * pw(&ExactInt::from(2), k as u32))).sum()
        },
    ));
    r.push(verified(
        "E5_7",
        "(x+1)^n = sum_{k=0}^{n} C(n,k) x^k",
        Domain::new().var("x", -10, 10).var("n", 0, 12),
        |p| q(pw(&(p.int("x") + 1), p.u32("n"))),
        |p| {
            let (x, n) = (p.int("x"), p.u64("n"));
            (0..=n).map(|k| q(binom(n, k as i64) * pw(&x, k as u32))).sum()
        },
    ));
    r.push(verified(
        "E5_8",
        "m^n = sum_{k=0}^{n} C(n,k) (m-1)^k",
        Domain::new().var("m", 0, 20).var("n", 0, 12),
        |p| q(pw(&p.int("m"), p.u32("n"))),
        |p| {
            let (m, n) = (p.int("m"), p.u64("n"));
            (0..=n).map(|k| q(binom(n, k as i64) * pw(&(&m - 1), k as u32))).sum()
        },
    ));
    r.push(verified(
        "E5_9",
        "(m+1)^n = sum_{k=0}^{n} C(n,k) m^k",
        Domain::new().var("m", 0, 20).var("n", 0, 12),
        |p| q(pw(&(p.int("m") + 1), p.u32("n"))),
        |p| {
            let (m, n) = (p.int("m"), p.u64("n"));
            (0..=n).map(|k| q(binom(n, k as i64) * pw(&m, k as u32))).sum()
        },
    ));
    r.push(
        verified(
            "E5_10",
            "m^n = sum_{k=0}^{n} C(n,k) sum_{j=0}^{k} C(k,j) (-1)^(k-j) m^j",
            Domain::new().var("m", 1, 30).var("n", 0, 12),
            |p| q(pw(&p.int("m"), p.u32("n"))),
            double_binomial,
        )
        .note("the inline expansion of (m-1)^k prints the sign as (-1)^(n-k); the display uses (-1)^(k-j)"),
    );
    r.push(
        audited(
            "E5_11",
            "number of k-faces of the generalized hypercube Y_n^p = sum_{j=0}^{k} C(n,k) C(k,j) (-1)^(k-j) (p-1)^j",
            Domain::new().var("n", 0, 8).var("k", 0, 8).var("p", 2, 2).when("k <= n", k_le_n),
            |p| q(face_count_claim(p.u64("n"), p.i64("k"), p.i64("p")).unwrap()),
            |p| q(binom(p.u64("n"), p.i64("k")) * pw(&ExactInt::from(2), p.u32("n") - p.u32("k"))),
        )
        .note("the right side is the k-face count C(n,k) 2^(n-k) of the ordinary n-cube, the only model available at p = 2")
        .note("by the binomial theorem the claimed count is C(n,k) (p-2)^k: zero for every k >= 1 at p = 2, and C(n,k) at p = 3"),
    );
    r.push(non_evaluable(
        "E5_12",
        "x^n - 1 = sum_{k=1}^{n} [C(n,k) + K_{j=1}^{n} {sum_{k=1}^{n-j} C(n,k) + x^(n-j)}]",
        "the continued-summation operator K is not defined precisely enough to evaluate",
    ));

    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::{audit, registry};
    use crate::exact::int;

    #[test]
    fn face_count_examples() {
        for n in 0..8u64 {
            for k in 0..=n as i64 {
                assert_eq!(face_count_claim(n, k, 3).unwrap(), binom(n, k));
            }
            assert_eq!(face_count_claim(n, 0, 7).unwrap(), int(1));
        }
        assert_eq!(face_count_claim(3, 1, 2).unwrap(), int(0));
        assert!(face_count_claim(3, 4, 2).is_err());
        assert!(face_count_claim(3, -1, 2).is_err());
    }

    #[test]
    fn row_forms_sum_to_cube_minus_one() {
        for x in 1..15i64 {
            for form in 1..=5 {
                assert_eq!(row_form(&int(x), form), q(int(x * x * x - 1)), "x={x} form={form}");
            }
        }
    }

    #[test]
    fn e4_2_line_one_matches_exp_series_helper() {
        let x = int(3);
        let n = e4_2_terms(&x);
        let direct: ExactRat = (0..=n)
            .map(|k| {
                let numer = if k < 3 { q(pw(&x, k) - 1) } else { tail_outside(&x, k, 1) };
                numer / to_rat(&factorial(k))
            })
            .sum();
        assert_eq!(direct, exp_minus_e_partial(&x, n).unwrap());
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = registry().iter().map(|r| r.id).collect();
        let before = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), before);
    }

    #[test]
    fn exactly_three_non_evaluable() {
        let ne: Vec<&str> = registry()
            .iter()
            .filter(|r| r.status == Status::NonEvaluable)
            .map(|r| r.id)
            .collect();
        assert_eq!(ne, ["E3_16_17", "E4_1", "E5_12"]);
    }

    #[test]
    fn registry_covers_every_display() {
        let expected = [
            "P1_1", "E1_2", "L1_4", "E1_5", "E1_7", "T1_8", "E1_9", "E1_10", "E1_11", "E1_12", "E1_14",
            "E1_15", "E1_16", "FIG2", "F2_1", "F2_2", "D2_3", "E2_6", "E2_7", "X2_8", "E2_10", "F2_11",
            "E2_12", "E2_13", "E2_14", "E2_15", "E2_16", "E2_17", "E2_18", "E2_19", "F2_20", "E2_21",
            "E2_22", "E2_23", "E2_25", "E2_26", "E2_27", "X2_28", "E2_29", "E2_30", "D3_1", "E3_3",
            "P3_4_2", "P3_4_3", "P3_4_5", "P3_4_7", "P3_4_11", "P3_4_13", "E3_5", "E3_6", "E3_7",
            "E3_8", "E3_9", "E3_10", "E3_11", "E3_12A", "E3_12B", "E3_12R", "E3_12C", "E3_12D",
            "E3_12E", "E3_13", "E3_14", "E3_15", "E3_16_17", "E3_18", "E3_19", "E3_20", "E3_21", "T9",
            "E4_1", "E4_2", "E5_1", "E5_2", "F5_10", "E5_4", "E5_5", "E5_6", "E5_7", "E5_8", "E5_9",
            "E5_10", "E5_11", "E5_12",
        ];
        let mut covered: Vec<&str> = registry().iter().map(|r| r.id).collect();
        covered.extend(OUT_OF_SCOPE.iter().map(|(id, _)| *id));
        covered.sort();
        let mut want = expected.to_vec();
        want.sort();
        assert_eq!(covered, want);
    }

    #[test]
    fn e3_14_domain_is_declared() {
        let r = crate::audit::find("E3_14").unwrap();
        assert_eq!(r.check().unwrap().domain.describe(), "x in [2, 20], n in [3, 10]");
    }

    #[test]
    fn e2_30_limit_mismatch() {
        let r = audit("E2_30", &[]).unwrap();
        for e in 1..=8 {
            let f = r.failure_at(&[("x", 2), ("n", 2), ("e", e)]).unwrap();
            assert_eq!(f.rhs, q(5));
            assert_eq!(f.lhs, q(4));
        }
        assert!(r.notes.iter().any(|n| n == "x=2, n=2: limit 5 vs derivative 4 (mismatch 1)"));
        assert_eq!(r.validity_summary, "holds iff n=1 (on tested grid)");
    }
}
