//! Describes the set of passing grid points with the simplest predicate found
//! among single comparisons `var = c`, `var <= c`, `var >= c`, `var != c` and
//! their pairwise disjunctions and conjunctions.

use std::fmt;

use crate::exact::ExactRat;

use super::Point;

const SCOPE: &str = " (on tested grid)";

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn or(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
}

#[derive(Clone, Copy)]
enum Op {
    Eq,
    Le,
    Ge,
    Ne,
}

struct Atom {
    vi: usize,
    var: &'static str,
    op: Op,
    value: ExactRat,
    mask: Bits,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.op {
            Op::Eq => "=",
            Op::Le => "<=",
            Op::Ge => ">=",
            Op::Ne => "!=",
        };
        write!(f, "{}{}{}", self.var, op, self.value)
    }
}

fn atoms(points: &[Point]) -> Vec<Atom> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let names: Vec<&'static str> = first.coords().iter().map(|(n, _)| *n).collect();
    let mut by_op: [Vec<Atom>; 4] = Default::default();
    for (vi, name) in names.iter().enumerate() {
        let mut values: Vec<ExactRat> = points.iter().map(|p| p.coords()[vi].1.clone()).collect();
        values.sort();
        values.dedup();
        if values.len() < 2 {
            continue;
        }
        let last = values.len() - 1;
        for (i, v) in values.iter().enumerate() {
            let mut ops = vec![Op::Eq];
            if i > 0 && i < last {
                ops.extend([Op::Le, Op::Ge]);
            }
            if values.len() > 2 {
                ops.push(Op::Ne);
            }
            for op in ops {
                let mut mask = Bits::new(points.len());
                for (pi, p) in points.iter().enumerate() {
                    let x = &p.coords()[vi].1;
                    let hit = match op {
                        Op::Eq => x == v,
                        Op::Le => x <= v,
                        Op::Ge => x >= v,
                        Op::Ne => x != v,
                    };
                    if hit {
                        mask.set(pi);
                    }
                }
                let slot = op as usize;
                by_op[slot].push(Atom {
                    vi,
                    var: name,
                    op,
                    value: v.clone(),
                    mask,
                });
            }
        }
    }
    by_op.into_iter().flatten().collect()
}

/// Builds the summary for the pass/fail pattern `pass` over `points`.
pub(crate) fn synthesize(points: &[Point], pass: &[bool]) -> String {
    let total = points.len();
    let mut passing = Bits::new(total);
    for (i, ok) in pass.iter().enumerate() {
        if *ok {
            passing.set(i);
        }
    }
    let held = passing.count();
    if held == total && total == 1 {
        return "holds at the single tested point".to_string();
    }
    if held == total {
        return format!("holds at all {total} tested points");
    }
    if held == 0 && total == 1 {
        return "fails at the single tested point".to_string();
    }
    if held == 0 {
        return format!("fails at all {total} tested points");
    }
    let atoms = atoms(points);
    if let Some(a) = atoms.iter().find(|a| a.mask == passing) {
        return format!("holds iff {a}{SCOPE}");
    }
    let failing: Vec<String> = points
        .iter()
        .zip(pass)
        .filter(|(_, ok)| !**ok)
        .map(|(p, _)| p.to_string())
        .collect();
    if failing.len() <= 2 {
        return format!("holds except at {}{SCOPE}", failing.join("; "));
    }

    let inside: Vec<&Atom> = atoms.iter().filter(|a| a.mask.subset_of(&passing)).collect();
    for (i, a) in inside.iter().enumerate() {
        for b in &inside[i + 1..] {
            if a.mask.or(&b.mask) == passing {
                let (first, second) = if b.mask.count() > a.mask.count() { (b, a) } else { (a, b) };
                return format!("holds iff {first} or {second}{SCOPE}");
            }
        }
    }
    let around: Vec<&Atom> = atoms.iter().filter(|a| passing.subset_of(&a.mask)).collect();
    for (i, a) in around.iter().enumerate() {
        for b in &around[i + 1..] {
            if a.mask.and(&b.mask) == passing {
                let (first, second) = if b.vi < a.vi { (b, a) } else { (a, b) };
                return format!("holds iff {first} and {second}{SCOPE}");
            }
        }
    }
    let top = inside.iter().map(|a| a.mask.count()).max().unwrap_or(0);
    match inside.iter().find(|a| top > 0 && a.mask.count() == top) {
        Some(best) => {
            format!(
                "holds whenever {best}; also at {} other points{SCOPE}",
                held - top
            )
        }
        None => format!("holds at {held} of {total} tested points{SCOPE}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::Domain;

    fn run(d: &Domain, f: impl Fn(&Point) -> bool) -> String {
        let pts = d.points();
        let pass: Vec<bool> = pts.iter().map(f).collect();
        synthesize(&pts, &pass)
    }

    #[test]
    fn disjunction_orders_by_coverage() {
        let d = Domain::new().var("x", 2, 20).var("n", 3, 10);
        let s = run(&d, |p| p.i64("n") == 3 || p.i64("x") == 2);
        assert_eq!(s, "holds iff n=3 or x=2 (on tested grid)");
    }

    #[test]
    fn single_atoms() {
        let d = Domain::new().var("x", 1, 10);
        assert_eq!(run(&d, |p| p.i64("x") == 1), "holds iff x=1 (on tested grid)");
        assert_eq!(run(&d, |p| p.i64("x") >= 4), "holds iff x>=4 (on tested grid)");
        assert_eq!(run(&d, |p| p.i64("x") != 7), "holds iff x!=7 (on tested grid)");
        assert_eq!(run(&d, |_| true), "holds at all 10 tested points");
        assert_eq!(run(&d, |_| false), "fails at all 10 tested points");
    }

    #[test]
    fn isolated_failures() {
        let d = Domain::new().var("x", 1, 10).var("pair", 0, 1);
        let s = run(&d, |p| !(p.i64("x") == 3 && p.i64("pair") == 0));
        assert_eq!(s, "holds except at x=3, pair=0 (on tested grid)");
    }

    #[test]
    fn conjunction() {
        let d = Domain::new().var("x", 0, 5).var("y", 0, 5);
        let s = run(&d, |p| p.i64("x") >= 2 && p.i64("y") <= 3);
        assert_eq!(s, "holds iff x>=2 and y<=3 (on tested grid)");
    }

    #[test]
    fn fallback() {
        let d = Domain::new().var("x", 0, 5).var("y", 0, 5);
        let s = run(&d, |p| p.i64("x") == 1 || (p.i64("x") + p.i64("y")) % 4 == 0);
        assert!(s.starts_with("holds whenever x=1; also at "), "{s}");
    }
}
