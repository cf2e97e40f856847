//! Closed-form bounds on game values, evaluated with exact integer arithmetic.

use crate::game::Player;

/// `value >= -log2(n)`, i.e. `2^(-value) <= n`.
pub fn at_least_neg_log2(value: i32, n: usize) -> bool {
    if value >= 0 {
        return true;
    }
    let e = (-value) as u32;
    e < 64 && (1u64 << e) <= n as u64
}

/// `value <= n/2 + log2(n)`, i.e. `2^(2*value - n) <= n^2`.
pub fn at_most_half_plus_log2(value: i32, n: usize) -> bool {
    let t = 2 * value as i64 - n as i64;
    if t <= 0 {
        return true;
    }
    t < 127 && (1u128 << t) <= (n as u128) * (n as u128)
}

/// `value <= n/2`.
pub fn at_most_half(value: i32, n: usize) -> bool {
    2 * value as i64 <= n as i64
}

/// The global balance-game bounds for graphs of order `n`:
///
/// | start | n even | n odd |
/// |---|---|---|
/// | A | `-log2 n <= b <= n/2` | `0 <= b <= n/2 + log2 n` |
/// | I | `0 <= b <= n/2 + log2 n` | `-log2 n <= b <= n/2` |
pub fn balance_global_bounds_hold(n: usize, start: Player, value: i32) -> bool {
    if n == 0 {
        return value == 0;
    }
    let tight_upper = (n % 2 == 0) == (start == Player::Admirable);
    if tight_upper {
        at_least_neg_log2(value, n) && at_most_half(value, n)
    } else {
        value >= 0 && at_most_half_plus_log2(value, n)
    }
}

/// Greedy cordiality upper bound `c <= n/2 + t*Δ` with `t = 2` when the
/// starting player's parity is favourable (A-start even, I-start odd) and
/// `t = 3` otherwise.
pub fn cordiality_global_bound_holds(n: usize, start: Player, max_degree: usize, value: i32) -> bool {
    let favourable = (n % 2 == 0) == (start == Player::Admirable);
    let t = if favourable { 2 } else { 3 };
    2 * value as i64 <= n as i64 + 2 * t * max_degree as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_bounds() {
        assert!(at_least_neg_log2(-3, 8));
        assert!(!at_least_neg_log2(-4, 15));
        assert!(at_least_neg_log2(-4, 16));
        assert!(at_least_neg_log2(-1, 2));
        assert!(!at_least_neg_log2(-1, 1));
        assert!(!at_least_neg_log2(-70, 64));

        // n=5: n/2 + log2 5 ≈ 4.82
        assert!(at_most_half_plus_log2(4, 5));
        assert!(!at_most_half_plus_log2(5, 5));
        // n=8: 4 + 3 = 7 exactly
        assert!(at_most_half_plus_log2(7, 8));
        assert!(!at_most_half_plus_log2(8, 8));
    }

    #[test]
    fn global_table() {
        // C5: b^A = 3 <= 2.5 + 2.32, b^I = -1 >= -2.32
        assert!(balance_global_bounds_hold(5, Player::Admirable, 3));
        assert!(balance_global_bounds_hold(5, Player::Impish, -1));
        assert!(!balance_global_bounds_hold(5, Player::Admirable, -1));
        // Petersen: b^A = -1 with n = 10 even
        assert!(balance_global_bounds_hold(10, Player::Admirable, -1));
        assert!(!balance_global_bounds_hold(10, Player::Impish, -1));
        assert!(!balance_global_bounds_hold(10, Player::Admirable, 6));
    }

    #[test]
    fn cordiality_bound() {
        assert!(cordiality_global_bound_holds(4, Player::Admirable, 1, 4));
        assert!(!cordiality_global_bound_holds(4, Player::Admirable, 1, 5));
        assert!(cordiality_global_bound_holds(4, Player::Impish, 1, 5));
    }
}
