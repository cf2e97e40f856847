//! Exact non-negative dyadic rationals `m * 2^e`.
//!
//! The danger potential sums powers of two whose exponents range over
//! roughly `[-m - Δ, m + Δ]`, so floating point would silently lose the
//! comparisons the strategy depends on.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Sub, SubAssign};

use num_bigint::BigUint;

/// Invariant: `mant` is odd, or zero with `exp == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    mant: BigUint,
    exp: i32,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic::default()
    }

    pub fn from_int(x: u64) -> Self {
        Dyadic::normalized(BigUint::from(x), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i32) -> Self {
        Dyadic { mant: BigUint::from(1u32), exp: e }
    }

    fn normalized(mant: BigUint, exp: i32) -> Self {
        match mant.trailing_zeros() {
            None => Dyadic::zero(),
            Some(tz) => Dyadic { mant: mant >> tz, exp: exp + tz as i32 },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.bits() == 0
    }

    /// Multiplies by `2^k`.
    pub fn shl(&self, k: i32) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Both mantissas scaled to the smaller exponent.
    fn aligned(&self, other: &Dyadic) -> (BigUint, BigUint, i32) {
        let e = self.exp.min(other.exp);
        (
            &self.mant << (self.exp - e) as usize,
            &other.mant << (other.exp - e) as usize,
            e,
        )
    }

    /// `self - other`, or `None` if that would be negative.
    pub fn checked_sub(&self, other: &Dyadic) -> Option<Dyadic> {
        let (a, b, e) = self.aligned(other);
        (a >= b).then(|| Dyadic::normalized(a - b, e))
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        if bits == 0 {
            return 0.0;
        }
        // Keep the top 64 bits; exact enough for display.
        let drop = bits.saturating_sub(64);
        let top: u64 = (&self.mant >> drop).try_into().unwrap_or(u64::MAX);
        top as f64 * 2f64.powi(self.exp + drop as i32)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        // Compare magnitudes by bit length before aligning.
        let top = |d: &Dyadic| d.mant.bits() as i64 + d.exp as i64;
        match top(self).cmp(&top(other)) {
            Ordering::Equal => {
                let (a, b, _) = self.aligned(other);
                a.cmp(&b)
            }
            o => o,
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Dyadic> for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(rhs);
        Dyadic::normalized(a + b, e)
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl Sub<&Dyadic> for &Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self.checked_sub(rhs).expect("dyadic subtraction underflow")
    }
}

impl SubAssign<&Dyadic> for Dyadic {
    fn sub_assign(&mut self, rhs: &Dyadic) {
        *self = &*self - rhs;
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}
