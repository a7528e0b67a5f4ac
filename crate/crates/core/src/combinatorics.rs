//! Exact big-integer counting primitives and the few real-valued helpers
//! (entropy, `log2` of huge counts) the rate functions build on.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::RateScalar;

/// Arbitrary-precision non-negative count (code sizes, ball sizes, space sizes).
pub type ExactCount = BigUint;

/// Exact non-negative rational kept in lowest terms with a positive denominator.
pub type Ratio = num_rational::Ratio<BigUint>;

/// Binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> ExactCount {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `log2` of an exact count with relative error far below 1e-12.
///
/// Uses the bit length and the leading 64 bits, so counts with millions of
/// digits are handled without overflow. Returns `-inf` for zero.
pub fn log2_count(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return (x.to_u64().expect("fits in 64 bits") as f64).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("exactly 64 bits");
    (top as f64).log2() + shift as f64
}

/// `log2 C(n, k)`, `-inf` when the coefficient vanishes.
pub fn log2_binomial(n: u64, k: i64) -> f64 {
    log2_count(&binomial(n, k))
}

/// Binary entropy `h(p) = -p log2 p - (1-p) log2 (1-p)` with `h(0) = h(1) = 0`.
///
/// Arguments within rounding slack of [0, 1] are clamped; anything further
/// out is a domain error.
pub fn binary_entropy<T: RateScalar>(p: T) -> Result<T> {
    let slack = T::unit_slack();
    if p.is_nan() || p < -slack || p > T::one() + slack {
        return Err(Error::Domain {
            function: "binary_entropy",
            value: p.to_f64().unwrap_or(f64::NAN),
            reason: "argument must lie in [0, 1]".into(),
        });
    }
    let p = p.max(T::zero()).min(T::one());
    if p == T::zero() || p == T::one() {
        return Ok(T::zero());
    }
    let q = T::one() - p;
    Ok(-(p * p.log2()) - q * q.log2())
}

/// `ceil(num / den)` for exact counts; `den` must be positive.
pub fn ceil_div(num: &BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

pub fn ratio_ceil(r: &Ratio) -> BigUint {
    ceil_div(r.numer(), r.denom())
}

pub fn ratio_floor(r: &Ratio) -> BigUint {
    r.numer() / r.denom()
}

/// Polynomial with exact non-negative coefficients, indexed by distance.
///
/// The zero polynomial has an empty coefficient vector; otherwise the last
/// stored coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CountPolynomial {
    coeffs: Vec<ExactCount>,
}

impl CountPolynomial {
    pub fn new(mut coeffs: Vec<ExactCount>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        CountPolynomial { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn zero() -> Self {
        CountPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        CountPolynomial {
            coeffs: vec![BigUint::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[ExactCount] {
        &self.coeffs
    }

    /// Coefficient at `z^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> ExactCount {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Sum of the coefficients at `z^0 ..= z^upto`.
    pub fn prefix_sum(&self, upto: usize) -> ExactCount {
        self.coeffs.iter().take(upto.saturating_add(1)).sum()
    }

    /// Sum of all coefficients, i.e. the value at `z = 1`.
    pub fn total(&self) -> ExactCount {
        self.coeffs.iter().sum()
    }

    /// Schoolbook product keeping only the terms of degree `<= max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(max_degree + 1);
        let mut out = vec![BigUint::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }
}

impl Mul for &CountPolynomial {
    type Output = CountPolynomial;

    fn mul(self, rhs: &CountPolynomial) -> CountPolynomial {
        self.mul_truncated(rhs, usize::MAX - 1)
    }
}

impl fmt::Debug for CountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.coeffs.iter().map(|c| c.to_string()))
            .finish()
    }
}

/// Coefficients `0..=max_degree` of `p^m`, by square-and-multiply over
/// truncated convolutions.
pub fn poly_power_truncated(p: &CountPolynomial, m: u32, max_degree: usize) -> CountPolynomial {
    let mut result = CountPolynomial::one();
    let mut base = p.truncate(max_degree);
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul_truncated(&base, max_degree);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul_truncated(&base, max_degree);
        }
    }
    result
}

/// Number of tuples `(u_1, .., u_m)` of non-negative integers with
/// `u_1 + .. + u_m <= t`, which is `C(t + m, m)`.
pub fn weak_composition_count(t: u64, m: u64) -> ExactCount {
    binomial(t + m, m as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(5, 7), big(0));
        assert_eq!(binomial(5, -1), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn binomial_60_30_against_pascal() {
        let mut row = vec![big(1)];
        for _ in 0..60 {
            let mut next = vec![big(1)];
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(big(1));
            row = next;
        }
        assert_eq!(row[30], big(118_264_581_564_861_424));
        assert_eq!(binomial(60, 30), row[30]);
    }

    #[test]
    fn binomial_symmetry_and_pascal_up_to_64() {
        for n in 0..=64u64 {
            for k in 0..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n, n as i64 - k));
                if n > 0 {
                    assert_eq!(
                        binomial(n, k),
                        binomial(n - 1, k - 1) + binomial(n - 1, k),
                        "pascal at ({n},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(binary_entropy(0.5f64).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0f64).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0f64).unwrap(), 0.0);
        let h = binary_entropy(0.11f64).unwrap();
        // series in ln: h(p) = -(p ln p + (1-p) ln(1-p)) / ln 2, ln(1-p) by Taylor
        let p = 0.11f64;
        let ln1mp: f64 = -(1..200).map(|k| p.powi(k) / k as f64).sum::<f64>();
        let series = -(p * p.ln() + (1.0 - p) * ln1mp) / std::f64::consts::LN_2;
        assert!((h - series).abs() < 1e-12);
        assert!((h - 0.499916).abs() < 1e-6);
        let h32 = binary_entropy(0.11f32).unwrap();
        assert!((h32 as f64 - h).abs() < 1e-5);
    }

    #[test]
    fn entropy_domain() {
        assert!(binary_entropy(-0.1f64).is_err());
        assert!(binary_entropy(1.5f64).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
        assert_eq!(binary_entropy(1.0f64 + 1e-13).unwrap(), 0.0);
        assert_eq!(binary_entropy(-1e-13f64).unwrap(), 0.0);
    }

    #[test]
    fn log2_of_huge_counts() {
        let x = binomial(3000, 1500);
        let direct: f64 = (1..=1500u64)
            .map(|i| ((3000 - 1500 + i) as f64).log2() - (i as f64).log2())
            .sum();
        let got = log2_count(&x);
        assert!(((got - direct) / direct).abs() < 1e-12, "{got} vs {direct}");
        assert_eq!(log2_count(&big(1024)), 10.0);
        assert_eq!(log2_count(&BigUint::zero()), f64::NEG_INFINITY);
        let pow = BigUint::one() << 1000u32;
        assert_eq!(log2_count(&pow), 1000.0);
    }

    #[test]
    fn poly_power_examples() {
        let p = CountPolynomial::from_u64s(&[1, 1]);
        assert_eq!(poly_power_truncated(&p, 2, 2), CountPolynomial::from_u64s(&[1, 2, 1]));
        let p = CountPolynomial::from_u64s(&[1, 4]);
        assert_eq!(poly_power_truncated(&p, 3, 1), CountPolynomial::from_u64s(&[1, 12]));
        let p = CountPolynomial::from_u64s(&[1, 2, 1]);
        let pascal8: Vec<u64> = (0..=8).map(|k| binomial(8, k).to_u64().unwrap()).collect();
        assert_eq!(poly_power_truncated(&p, 4, 8), CountPolynomial::from_u64s(&pascal8));
    }

    #[test]
    fn zero_polynomial_is_trimmed() {
        let p = CountPolynomial::from_u64s(&[0, 0]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        let q = CountPolynomial::from_u64s(&[3, 0, 2, 0]);
        assert_eq!(q.degree(), Some(2));
        assert!((&p * &q).is_zero());
    }

    #[test]
    fn weak_composition_examples() {
        assert_eq!(weak_composition_count(0, 5), big(1));
        assert_eq!(weak_composition_count(2, 2), big(6));
        assert_eq!(weak_composition_count(3, 3), big(20));
    }

    fn brute_weak(t: u64, m: u32) -> u64 {
        fn rec(left: u64, slots: u32) -> u64 {
            if slots == 0 {
                return 1;
            }
            (0..=left).map(|u| rec(left - u, slots - 1)).sum()
        }
        rec(t, m)
    }

    #[test]
    fn weak_composition_matches_enumeration() {
        for t in 0..=6 {
            for m in 1..=5u32 {
                assert_eq!(weak_composition_count(t, m as u64), big(brute_weak(t, m)));
            }
        }
    }

    #[test]
    fn ceil_and_floor_of_ratios() {
        let r = Ratio::new(big(49), big(25));
        assert_eq!(ratio_ceil(&r), big(2));
        assert_eq!(ratio_floor(&r), big(1));
        let exact = Ratio::new(big(36), big(9));
        assert_eq!(ratio_ceil(&exact), big(4));
        assert_eq!(ratio_floor(&exact), big(4));
    }

    /// Monotonicity of `C(w,k) C(L-w,k)` for `0 < k <= w (L-w) / L`.
    #[test]
    fn balanced_product_increases_below_mean_distance() {
        for l in 3..=24u64 {
            for w in 1..l {
                let mut k = 1u64;
                while k * l <= w * (l - w) {
                    let cur = binomial(w, k as i64) * binomial(l - w, k as i64);
                    let prev = binomial(w, k as i64 - 1) * binomial(l - w, k as i64 - 1);
                    assert!(cur > prev, "L={l} w={w} k={k}");
                    k += 1;
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn schoolbook(a: &[u64], b: &[u64]) -> Vec<BigUint> {
            let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += BigUint::from(*x) * BigUint::from(*y);
                }
            }
            out
        }

        proptest! {
            #[test]
            fn product_is_convolution(
                a in prop::collection::vec(0u64..1000, 1..8),
                b in prop::collection::vec(0u64..1000, 1..8),
            ) {
                let prod = &CountPolynomial::from_u64s(&a) * &CountPolynomial::from_u64s(&b);
                prop_assert_eq!(prod, CountPolynomial::new(schoolbook(&a, &b)));
            }

            #[test]
            fn truncated_power_is_prefix_of_full_power(
                a in prop::collection::vec(0u64..50, 1..5),
                m in 1u32..6,
                cut in 0usize..12,
            ) {
                let p = CountPolynomial::from_u64s(&a);
                let mut full = CountPolynomial::one();
                for _ in 0..m {
                    full = &full * &p;
                }
                prop_assert_eq!(poly_power_truncated(&p, m, cut), full.truncate(cut));
            }

            /// Log-concavity: any split of z into m parts has binomial product
            /// at most the balanced split's.
            #[test]
            fn balanced_split_maximises_binomial_product(
                (n, parts) in (1u64..=12).prop_flat_map(|n| {
                    (Just(n), prop::collection::vec(0..=n, 1..=6))
                }),
            ) {
                let m = parts.len() as u64;
                let z: u64 = parts.iter().sum();
                let lo = z / m;
                let hi = z.div_ceil(m);
                let m1 = m * hi - z;
                let lhs: BigUint = parts.iter().map(|&k| binomial(n, k as i64)).product();
                let rhs = binomial(n, lo as i64).pow(m1 as u32)
                    * binomial(n, hi as i64).pow((m - m1) as u32);
                prop_assert!(lhs <= rhs);
            }
        }
    }
}
