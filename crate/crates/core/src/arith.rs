//! Small integer helpers shared by the searches.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes `2 ≤ p ≤ max`, ascending.
pub fn primes_up_to(max: u64) -> Vec<u64> {
    (2..=max).filter(|&n| is_prime(n)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_up_to(97).len(), 25);
        assert!(!is_prime(1) && !is_prime(91) && is_prime(97));
    }

    #[test]
    fn gcd_and_pow() {
        assert_eq!(gcd(4, 2), 2);
        assert_eq!(gcd(7, 3), 1);
        assert_eq!(checked_pow(2, 10), Some(1024));
        assert_eq!(checked_pow(97, 20), None);
    }
}
