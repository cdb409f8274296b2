use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator (guaranteed by `BigRational`).
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(s: &Scalar) -> bool {
    s.denom().is_one()
}

/// `3`, `-2`, `5/7`.
pub fn scalar_to_string(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}
