use num_bigint::BigInt;
use num_traits::One;

use super::{ConstField, Rational};

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// B_0..=B_n from Σ_{k=0}^{m} C(m+1,k)·B_k = 0, so B_1 = −1/2.
pub fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += &(&Rational::from_bigint(binomial(m as u64 + 1, k as u64)) * bk);
        }
        b.push(-(s / Rational::integer(m as i64 + 1)));
    }
    b
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_table(n).pop().expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), Rational::integer(1));
        assert_eq!(bernoulli(1), Rational::new(-1, 2));
        assert_eq!(bernoulli(2), Rational::new(1, 6));
        assert_eq!(bernoulli(4), Rational::new(-1, 30));
        assert_eq!(bernoulli(6), Rational::new(1, 42));
        assert_eq!(bernoulli(12), Rational::new(-691, 2730));
        assert_eq!(bernoulli(7), Rational::integer(0));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 2), BigInt::from(45));
        assert_eq!(binomial(16, 8), BigInt::from(12870));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
