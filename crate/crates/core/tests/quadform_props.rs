mod common;

use common::{is_prime, rep};
use proptest::prelude::*;
use wzcong::quadform::{exhaustive, is_represented, represent, represent_4p27, sqrt_mod};
use wzcong::Error;

fn expected(p: u64, d: u64) -> bool {
    match d {
        2 => matches!(p % 8, 1 | 3),
        3 => p % 3 == 1,
        4 => p % 4 == 1,
        7 => matches!(p % 7, 1 | 2 | 4),
        _ => unreachable!(),
    }
}

#[test]
fn examples() {
    assert_eq!(represent(13, 4).unwrap(), (3, 1));
    assert_eq!(represent(11, 2).unwrap(), (3, 1));
    assert_eq!(represent(7, 4), Err(Error::NoRepresentation));
    assert_eq!(represent_4p27(7).unwrap(), (1, 1));
    assert_eq!(represent_4p27(13).unwrap(), (5, 1));
    assert_eq!(represent_4p27(11), Err(Error::NoRepresentation));
}

#[test]
fn representations_below_2000_are_exact_and_unique() {
    for p in (11..2000).filter(|&p| is_prime(p)) {
        for d in [2u64, 3, 4, 7] {
            assert_eq!(is_represented(p, d), expected(p, d), "criterion p={p} d={d}");
            match represent(p, d) {
                Ok((x, y)) => {
                    assert_eq!(x * x + d * y * y, p);
                    assert!(x > 0 && y > 0 && x % p != 0);
                    assert_eq!(exhaustive(p, d), vec![(x, y)], "unique p={p} d={d}");
                    assert_eq!(rep(p, d), Some((x, y)));
                }
                Err(e) => {
                    assert_eq!(e, Error::NoRepresentation);
                    assert!(!expected(p, d));
                    assert!(exhaustive(p, d).is_empty());
                }
            }
        }
        match represent_4p27(p) {
            Ok((x, y)) => {
                assert_eq!(x * x + 27 * y * y, 4 * p);
                assert_eq!(exhaustive(4 * p, 27), vec![(x, y)]);
            }
            Err(_) => assert_eq!(p % 3, 2),
        }
    }
}

proptest! {
    #[test]
    fn sqrt_mod_squares_back(p in (3u64..100_000).prop_filter("prime", |&p| is_prime(p)), a in 0u64..100_000) {
        let a = a % p;
        match sqrt_mod(a, p) {
            Some(r) => prop_assert_eq!(r * r % p, a),
            None => prop_assert!((1..p).all(|r| r * r % p != a)),
        }
    }
}
