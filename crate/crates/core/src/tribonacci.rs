//! Tribonacci numbers and the count of arc-covered configurations.

/// `T_0 = T_1 = T_2 = 1`, `T_{k+1} = T_k + T_{k-1} + T_{k-2}`.
pub fn tribonacci(n: usize) -> u128 {
    let (mut a, mut b, mut c) = (1u128, 1u128, 1u128);
    for _ in 2..n {
        let next = a
            .checked_add(b)
            .and_then(|s| s.checked_add(c))
            .expect("tribonacci overflows u128");
        (a, b, c) = (b, c, next);
    }
    c
}

/// Number of configurations of `k` generators under an arc:
/// `U_0 = U_1 = U_2 = 1` and `U_k = U_{k-2} + 2 * (U_0 + ... + U_{k-3})`.
pub fn u_sequence(k: usize) -> u128 {
    let mut u: Vec<u128> = vec![1, 1, 1];
    // running sum U_0 + ... + U_{j}
    let mut prefix: Vec<u128> = vec![1, 2, 3];
    for j in 3..=k {
        let value = prefix[j - 3]
            .checked_mul(2)
            .and_then(|s| s.checked_add(u[j - 2]))
            .expect("u_sequence overflows u128");
        u.push(value);
        prefix.push(prefix[j - 1].checked_add(value).expect("u_sequence overflows u128"));
    }
    u[k]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tribonacci_values() {
        let expected = [1, 1, 1, 3, 5, 9, 17, 31, 57, 105, 193];
        for (n, &t) in expected.iter().enumerate() {
            assert_eq!(tribonacci(n), t, "T_{n}");
        }
        assert_eq!(tribonacci(11), 355);
        assert_eq!(tribonacci(12), 653);
    }

    #[test]
    fn u_sequence_values() {
        assert_eq!(u_sequence(0), 1);
        assert_eq!(u_sequence(3), 3);
        assert_eq!(u_sequence(4), 5);
    }

    #[test]
    fn u_sequence_matches_tribonacci() {
        for k in 0..=20 {
            assert_eq!(u_sequence(k), tribonacci(k), "k={k}");
        }
        for k in 3..=20 {
            assert_eq!(u_sequence(k + 1), u_sequence(k) + u_sequence(k - 1) + u_sequence(k - 2));
        }
    }
}
