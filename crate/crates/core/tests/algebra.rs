use matroidkit::algebra::{cyc_normalize, cyclotomic_polynomial, CyclotomicNumber, Matrix, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Textbook Gauss-Jordan rank over Q.
fn gauss_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i == rank || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone() / pivot.clone();
            let pivot_row = rows[rank].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * y);
            }
        }
        rank += 1;
    }
    rank
}

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..5, 1i64..4).prop_map(|(n, d)| Rational::ratio(n, d).unwrap())
}

fn matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1usize..5, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(rational(), c), r))
}

fn poly() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), 0..12)
}

fn cyc(order: u32) -> impl Strategy<Value = CyclotomicNumber> {
    poly().prop_map(move |p| CyclotomicNumber::new(order, &p))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn cyclotomic_product_is_x_m_minus_one() {
    for m in 1..=30u32 {
        let product = (1..=m)
            .filter(|d| m % d == 0)
            .fold(vec![BigInt::from(1)], |acc, d| poly_mul(&acc, &cyclotomic_polynomial(d)));
        let mut expected = vec![BigInt::from(0); m as usize + 1];
        expected[0] = BigInt::from(-1);
        expected[m as usize] = BigInt::from(1);
        assert_eq!(product, expected, "m = {m}");
        let phi = (1..=m).filter(|&k| gcd(k, m) == 1).count();
        assert_eq!(cyclotomic_polynomial(m).len() - 1, phi, "deg Φ_{m}");
        assert_eq!(CyclotomicNumber::one(m).degree(), phi);
    }
}

proptest! {
    #[test]
    fn bareiss_matches_gauss(rows in matrix()) {
        let cols = rows[0].len();
        let m = Matrix::from_rows(rows.clone(), cols).unwrap();
        prop_assert_eq!(m.rank(), gauss_rank(rows));
    }

    #[test]
    fn normalize_is_idempotent(p in poly(), order in 1u32..13) {
        let once = cyc_normalize(&p, order);
        let twice = cyc_normalize(once.coeffs(), order);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn field_axioms(a in cyc(5), b in cyc(5), c in cyc(5)) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inverse().unwrap()), CyclotomicNumber::one(5));
        }
    }

    #[test]
    fn roots_have_the_right_order(order in 1u32..16, k in 0u32..40) {
        let z = CyclotomicNumber::root_power(order, k);
        let mut p = CyclotomicNumber::one(order);
        for _ in 0..order {
            p = p.mul(&z);
        }
        prop_assert_eq!(p, CyclotomicNumber::one(order));
    }
}
