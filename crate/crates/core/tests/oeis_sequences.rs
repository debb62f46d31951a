use powerexp::exact::{int_pow, ExactInt};
use powerexp::oeis::{bundled_text, generate, parse_bfile, serialize_bfile, Source, SUPPORTED};
use powerexp::triangle::{triangle_row, TriangleKind};
use proptest::prelude::*;

fn without_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
        .map(|l| format!("{l}\n"))
        .collect()
}

#[test]
fn every_fixture_agrees_with_generator_over_its_length() {
    for id in SUPPORTED {
        let b = parse_bfile(id, bundled_text(id).unwrap(), Source::Bundled).unwrap();
        assert_eq!(b.offset, 0, "{id}");
        assert!(b.len() >= 50, "{id} has {} terms", b.len());
        let generated = generate(id, b.len()).unwrap();
        assert!(b.values().eq(generated.iter()), "{id}");
    }
}

#[test]
fn fixtures_round_trip_modulo_comments() {
    for id in SUPPORTED {
        let text = bundled_text(id).unwrap();
        let b = parse_bfile(id, text, Source::Bundled).unwrap();
        let out = serialize_bfile(&b);
        assert_eq!(out, without_comments(text), "{id}");
        assert_eq!(parse_bfile(id, &out, Source::Bundled).unwrap(), b);
    }
}

#[test]
fn a008458_partial_sums_are_cube_differences() {
    // a(0) = 1 supplies the leading 1 of (n+1)^3 - n^3 = 1 + 6 + 12 + ... + 6n.
    let a = generate("A008458", 101).unwrap();
    let mut acc = ExactInt::from(0);
    for (n, term) in a.iter().enumerate() {
        acc += term;
        let n = ExactInt::from(n);
        assert_eq!(acc, int_pow(&(&n + 1), 3) - int_pow(&n, 3), "n={n}");
    }
}

#[test]
fn a000124_points_at_cube_differences() {
    let rows = generate("A000124", 60).unwrap();
    for (n, row) in rows.iter().enumerate() {
        let n = ExactInt::from(n);
        let u = powerexp::triangle::u_coeff(row.clone(), 1);
        assert_eq!(u, int_pow(&(&n + 1), 3) - int_pow(&n, 3));
    }
}

proptest! {
    #[test]
    fn a287326_is_the_flattened_u_triangle(count in 1usize..400) {
        let flat: Vec<ExactInt> = (0u64..40)
            .flat_map(|n| triangle_row(TriangleKind::U, n).entries)
            .take(count)
            .collect();
        prop_assert_eq!(generate("A287326", count).unwrap(), flat);
    }

    #[test]
    fn generation_is_prefix_stable(id in proptest::sample::select(SUPPORTED.to_vec()), a in 1usize..120, b in 1usize..120) {
        let (short, long) = (a.min(b), a.max(b));
        let s = generate(id, short).unwrap();
        let l = generate(id, long).unwrap();
        prop_assert_eq!(&l[..short], &s[..]);
    }

    #[test]
    fn serialize_parse_round_trip(offset in -5i64..5, values in proptest::collection::vec(-10_000i64..10_000, 1..40)) {
        let text: String = values.iter().enumerate().map(|(i, v)| format!("{} {v}\n", offset + i as i64)).collect();
        let b = parse_bfile("A000012", &text, Source::Cached).unwrap();
        prop_assert_eq!(b.offset, offset);
        prop_assert_eq!(serialize_bfile(&b), text);
    }
}
