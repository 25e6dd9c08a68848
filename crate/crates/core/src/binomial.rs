use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient `C(a, k)` for any integer upper index.
///
/// `a(a-1)...(a-k+1)/k!` for `k >= 0` and zero for `k < 0`, so `C(-1, k) = (-1)^k`.
pub fn generalized_binomial(a: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let a = BigInt::from(a);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc holds C(a, i); each step stays integral.
        acc = acc * (&a - i) / (i + 1);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn int_pow(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn falling_factorial_oracle(a: i64, k: i64) -> BigInt {
        if k < 0 {
            return BigInt::zero();
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..k {
            num *= a - i;
            den *= i + 1;
        }
        num / den
    }

    #[test]
    fn small_values() {
        assert_eq!(generalized_binomial(-1, 0), BigInt::from(1));
        assert_eq!(generalized_binomial(-1, 2), BigInt::from(1));
        assert_eq!(generalized_binomial(3, 5), BigInt::from(0));
        assert_eq!(generalized_binomial(5, 2), BigInt::from(10));
        assert_eq!(generalized_binomial(-2, 3), BigInt::from(-4));
        assert_eq!(generalized_binomial(4, -1), BigInt::from(0));
    }

    #[test]
    fn matches_falling_factorial() {
        for a in -12..=12 {
            for k in -2..=14 {
                assert_eq!(generalized_binomial(a, k), falling_factorial_oracle(a, k), "C({a},{k})");
            }
        }
    }

    #[test]
    fn pascal_rule_holds_for_negative_upper() {
        for a in -10..=10 {
            for k in 1..=10 {
                assert_eq!(
                    generalized_binomial(a, k),
                    generalized_binomial(a - 1, k) + generalized_binomial(a - 1, k - 1)
                );
            }
        }
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(int_pow(0, 0), BigInt::from(1));
        assert_eq!(int_pow(0, 3), BigInt::from(0));
        assert_eq!(int_pow(-2, 3), BigInt::from(-8));
    }
}
