use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative ring used for table entries in homomorphism counting.
pub trait Weight: Clone + Send + Sync {
    fn additive_identity() -> Self;
    fn multiplicative_identity() -> Self;
    fn from_count(n: usize) -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn is_zero_weight(&self) -> bool;
}

impl Weight for i128 {
    fn additive_identity() -> Self {
        0
    }
    fn multiplicative_identity() -> Self {
        1
    }
    fn from_count(n: usize) -> Self {
        n as i128
    }
    #[inline]
    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }
    #[inline]
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero_weight(&self) -> bool {
        *self == 0
    }
}

impl Weight for f64 {
    fn additive_identity() -> Self {
        0.0
    }
    fn multiplicative_identity() -> Self {
        1.0
    }
    fn from_count(n: usize) -> Self {
        n as f64
    }
    #[inline]
    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }
    #[inline]
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero_weight(&self) -> bool {
        *self == 0.0
    }
}

impl Weight for BigInt {
    fn additive_identity() -> Self {
        Zero::zero()
    }
    fn multiplicative_identity() -> Self {
        One::one()
    }
    fn from_count(n: usize) -> Self {
        BigInt::from(n)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero_weight(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Weight for BigRational {
    fn additive_identity() -> Self {
        Zero::zero()
    }
    fn multiplicative_identity() -> Self {
        One::one()
    }
    fn from_count(n: usize) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero_weight(&self) -> bool {
        Zero::is_zero(self)
    }
}
