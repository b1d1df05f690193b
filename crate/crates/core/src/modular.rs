//! Level-one modular forms: cusp-space dimensions, exact q-expansions,
//! L-values with truncation bounds, periods and the nonvanishing certificates.
//!
//! All floating point arithmetic in the crate lives here. Every exported number
//! comes with an error bound.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use statrs::function::gamma::{gamma, gamma_ur};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_PRECISION: usize = 60;
pub const CERTIFICATE_MARGIN: f64 = 10.0;

/// Relative accuracy assumed for one evaluation of `Γ` or the regularized
/// incomplete gamma function, including the products around it.
const SPECIAL_FUNCTION_RELATIVE_ERROR: f64 = 1e-14;

/// Weights with a one-dimensional cusp space.
pub const ONE_DIMENSIONAL_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

/// `s_k`, the dimension of weight-`k` cusp forms for `SL2(Z)`.
pub fn dim_cusp_forms(k: i64) -> u64 {
    if k < 12 || k % 2 != 0 {
        return 0;
    }
    let base = (k / 12) as u64;
    if k % 12 == 2 {
        base - 1
    } else {
        base
    }
}

/// Truncated `q`-expansion `a(0) + a(1) q + ... + a(N) q^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    weight: u32,
    coefficients: Vec<BigRational>,
}

impl QExpansion {
    pub fn new(weight: u32, coefficients: Vec<BigRational>) -> Self {
        assert!(!coefficients.is_empty(), "a q-expansion needs a(0)");
        QExpansion { weight, coefficients }
    }

    pub fn from_integers(weight: u32, coefficients: impl IntoIterator<Item = i128>) -> Self {
        Self::new(weight, coefficients.into_iter().map(|c| BigRational::from_integer(c.into())).collect())
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Largest `n` with a known coefficient.
    pub fn precision(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coefficients[n]
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn is_cusp_form(&self) -> bool {
        self.coefficients[0].is_zero()
    }

    pub fn is_normalized(&self) -> bool {
        self.coefficients.get(1).is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &QExpansion) -> QExpansion {
        let n = self.precision().min(other.precision());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coefficients[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QExpansion::new(self.weight + other.weight, out)
    }

    pub fn pow(&self, e: u32) -> QExpansion {
        let mut one = vec![BigRational::zero(); self.precision() + 1];
        one[0] = BigRational::one();
        let mut acc = QExpansion::new(0, one);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn sub(&self, other: &QExpansion) -> QExpansion {
        assert_eq!(self.weight, other.weight, "weights differ");
        let n = self.precision().min(other.precision());
        QExpansion::new(self.weight, (0..=n).map(|i| &self.coefficients[i] - &other.coefficients[i]).collect())
    }

    pub fn scale(&self, c: &BigRational) -> QExpansion {
        QExpansion::new(self.weight, self.coefficients.iter().map(|a| a * c).collect())
    }

    pub fn truncate(&self, n: usize) -> QExpansion {
        QExpansion::new(self.weight, self.coefficients[..=n.min(self.precision())].to_vec())
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coefficients.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

fn divisor_power_sum(n: u64, r: u32) -> i128 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| (d as i128).pow(r)).sum()
}

/// `E_4` or `E_6` to precision `n`.
pub fn eisenstein(k: u32, n: usize) -> Result<QExpansion> {
    let (c, r) = match k {
        4 => (240, 3),
        6 => (-504, 5),
        _ => {
            return Err(Error::UnsupportedWeight { weight: k.into(), reason: "only E4 and E6 are constructed".into() });
        }
    };
    let coeffs = (0..=n as u64).map(|m| if m == 0 { 1 } else { c * divisor_power_sum(m, r) });
    Ok(QExpansion::from_integers(k, coeffs))
}

/// `Δ = (E_4^3 − E_6^2) / 1728`, exactly.
pub fn delta(n: usize) -> QExpansion {
    let e4 = eisenstein(4, n).expect("weight 4");
    let e6 = eisenstein(6, n).expect("weight 6");
    let num = e4.pow(3).sub(&e6.pow(2));
    num.scale(&BigRational::new(1.into(), 1728.into()))
}

/// `τ(0..=n)` from `Δ = q ∏ (1 − q^m)^24`, using Jacobi's
/// `∏ (1 − q^m)^3 = Σ (−1)^j (2j+1) q^{j(j+1)/2}`. `τ(0) = 0`.
pub fn ramanujan_tau(n: usize) -> Vec<i128> {
    let len = n; // coefficients of q^0..q^{n-1} of the product
    let mut cube = vec![0i128; len.max(1)];
    let mut j = 0usize;
    while j * (j + 1) / 2 < len {
        cube[j * (j + 1) / 2] = if j.is_multiple_of(2) { 2 * j as i128 + 1 } else { -(2 * j as i128 + 1) };
        j += 1;
    }
    let square = |p: &[i128]| -> Vec<i128> {
        let mut out = vec![0i128; p.len()];
        for (i, a) in p.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (k, b) in p[..p.len() - i].iter().enumerate() {
                out[i + k] += a * b;
            }
        }
        out
    };
    let p24 = square(&square(&square(&cube)));
    let mut tau = vec![0i128; n + 1];
    tau[1..=n].copy_from_slice(&p24[..n]);
    tau
}

/// The normalized eigenform spanning a one-dimensional cusp space.
pub fn eigenform(k: u32, n: usize) -> Result<QExpansion> {
    if !ONE_DIMENSIONAL_WEIGHTS.contains(&k) {
        let s = dim_cusp_forms(k.into());
        return Err(Error::UnsupportedWeight {
            weight: k.into(),
            reason: format!("cusp space has dimension {s}; eigenforms are built only when it is 1"),
        });
    }
    let rest = k - 12;
    let i = (0..=rest / 4).find(|i| (rest - 4 * i).is_multiple_of(6)).expect("weights in the list are reachable");
    let j = (rest - 4 * i) / 6;
    let mut f = delta(n);
    if i > 0 {
        f = f.mul(&eisenstein(4, n)?.pow(i));
    }
    if j > 0 {
        f = f.mul(&eisenstein(6, n)?.pow(j));
    }
    debug_assert!(f.is_normalized());
    Ok(f)
}

/// Monomials `E_4^i E_6^j` spanning `M_k`.
pub fn modular_forms_basis(k: u32, n: usize) -> Vec<QExpansion> {
    let e4 = eisenstein(4, n).expect("weight 4");
    let e6 = eisenstein(6, n).expect("weight 6");
    if !k.is_multiple_of(2) {
        return Vec::new();
    }
    (0..=k / 4)
        .filter(|i| (k - 4 * i).is_multiple_of(6))
        .map(|i| e4.pow(i).mul(&e6.pow((k - 4 * i) / 6)))
        .collect()
}

/// Dimension of the cusp subspace of the span of the `E_4^i E_6^j` monomials,
/// measured by exact rank on enough coefficients to separate forms.
pub fn cusp_dimension_from_basis(k: u32) -> usize {
    let n = (k / 12) as usize + 3;
    let basis = modular_forms_basis(k, n);
    if basis.is_empty() {
        return 0;
    }
    let full = Matrix::from_rows(basis.iter().map(|f| f.coefficients().to_vec()).collect());
    let constant_terms = Matrix::from_rows(basis.iter().map(|f| vec![f.coeff(0).clone()]).collect());
    // Cusp forms are the kernel of the a(0) functional on the span.
    full.rank() - constant_terms.rank()
}

/// First `(m, n)` with `gcd(m, n) = 1` and `a(mn) ≠ a(m) a(n)`.
pub fn hecke_multiplicativity_violation(a: &[i128]) -> Option<(usize, usize)> {
    let top = a.len() - 1;
    for m in 2..=top {
        for n in (m + 1)..=(top / m) {
            if m.gcd(&n) == 1 && a[m * n] != a[m] * a[n] {
                return Some((m, n));
            }
        }
    }
    None
}

fn divisor_count(n: u64) -> u64 {
    let mut count = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    count
}

/// Checks `|a(n)| <= d(n) n^{(k-1)/2}` exactly on every computed coefficient.
pub fn check_coefficient_bound(f: &QExpansion) -> Result<()> {
    let coeffs = f.integer_coefficients().ok_or_else(|| Error::InvalidArgument("coefficients must be integral".into()))?;
    for (n, a) in coeffs.iter().enumerate().skip(1) {
        let d = BigInt::from(divisor_count(n as u64));
        let lhs = a * a;
        let rhs = &d * &d * BigInt::from(n).pow(f.weight() - 1);
        if lhs > rhs {
            return Err(Error::CoefficientBound { n });
        }
    }
    Ok(())
}

/// A value with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LValue {
    pub s: f64,
    pub value: Complex64,
    pub error_bound: f64,
    pub terms: usize,
}

/// Numeric data of a cusp form with integral coefficients checked against the
/// coefficient bound.
#[derive(Clone, Debug)]
pub struct LSeries {
    weight: u32,
    a: Vec<f64>,
}

impl LSeries {
    pub fn new(f: &QExpansion) -> Result<Self> {
        if !f.is_cusp_form() {
            return Err(Error::InvalidArgument("L-values are computed for cusp forms".into()));
        }
        if !f.weight().is_multiple_of(2) || f.weight() < 12 {
            return Err(Error::UnsupportedWeight { weight: f.weight().into(), reason: "no level-one cusp forms".into() });
        }
        check_coefficient_bound(f)?;
        let a = f.coefficients().iter().map(|c| c.to_f64().expect("finite")).collect();
        Ok(LSeries { weight: f.weight(), a })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Root number `(−1)^{k/2}`.
    pub fn epsilon(&self) -> f64 {
        if (self.weight / 2).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    fn k(&self) -> f64 {
        f64::from(self.weight)
    }

    /// `Λ(s) = (2π)^{−s} Γ(s) L(s)`, splitting the Mellin integral at `y = split`.
    pub fn completed(&self, s: f64, split: f64, tolerance: f64) -> Result<LValue> {
        self.check_strip(s)?;
        self.check_tolerance(tolerance)?;
        let k = self.k();
        let n = self.terms_needed(s, split, tolerance)?;
        let (g1, g2) = (gamma(s), gamma(k - s));
        let eps = self.epsilon();
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for m in 1..=n {
            let x = 2.0 * PI * m as f64;
            let t1 = x.powf(-s) * gamma_ur(s, x * split) * g1;
            let t2 = eps * x.powf(s - k) * gamma_ur(k - s, x / split) * g2;
            let term = self.a[m] * (t1 + t2);
            sum += term;
            abs_sum += term.abs();
        }
        let error_bound = self.tail_bound(s, split, n) + SPECIAL_FUNCTION_RELATIVE_ERROR * abs_sum;
        Ok(LValue { s, value: Complex64::new(sum, 0.0), error_bound, terms: n })
    }

    /// `L(f, s)` for `0 < s < k`.
    pub fn l_value(&self, s: f64, tolerance: f64) -> Result<LValue> {
        // Error in Λ is scaled by the same factor as the value.
        let factor = (2.0 * PI).powf(s) / gamma(s);
        let inner = self.completed(s, 1.0, tolerance / factor)?;
        let value = inner.value * factor;
        let error_bound = inner.error_bound * factor + SPECIAL_FUNCTION_RELATIVE_ERROR * value.norm();
        if error_bound > tolerance {
            return Err(Error::PrecisionUnreachable { precision: self.precision(), tolerance });
        }
        Ok(LValue { s, value, error_bound, terms: inner.terms })
    }

    /// `|Λ(s) − ε Λ(k − s)|` with both sides split at `y = 1.25`, so the two
    /// evaluations share no terms. Returns `(residual, combined bound)`.
    pub fn functional_equation_residual(&self, s: f64, tolerance: f64) -> Result<(f64, f64)> {
        let left = self.completed(s, 1.25, tolerance)?;
        let right = self.completed(self.k() - s, 1.25, tolerance)?;
        let residual = (left.value - right.value * self.epsilon()).norm();
        Ok((residual, left.error_bound + right.error_bound))
    }

    /// `∏_{p <= bound} (1 − a(p) p^{−s} + p^{k−1−2s})^{−1}` with the relative
    /// error of the omitted primes, valid for `s > (k + 1)/2`.
    pub fn euler_product(&self, s: f64, prime_bound: usize) -> Result<LValue> {
        let sigma = s - (self.k() - 1.0) / 2.0;
        if sigma <= 1.0 {
            return Err(Error::InvalidArgument(format!("Euler product needs s > (k+1)/2, got s = {s}")));
        }
        if prime_bound > self.precision() {
            return Err(Error::PrecisionUnreachable { precision: self.precision(), tolerance: 0.0 });
        }
        let primes = primes_up_to(prime_bound);
        let mut value = 1.0;
        for &p in &primes {
            let pf = p as f64;
            let local = 1.0 - self.a[p] * pf.powf(-s) + pf.powf(self.k() - 1.0 - 2.0 * s);
            value /= local;
        }
        let p = prime_bound as f64;
        let log_tail = 2.0 * p.powf(1.0 - sigma) / ((sigma - 1.0) * (1.0 - p.powf(-sigma)));
        let relative = log_tail.exp_m1() + SPECIAL_FUNCTION_RELATIVE_ERROR * primes.len() as f64;
        Ok(LValue { s, value: Complex64::new(value, 0.0), error_bound: relative * value.abs(), terms: primes.len() })
    }

    pub fn precision(&self) -> usize {
        self.a.len() - 1
    }

    fn check_strip(&self, s: f64) -> Result<()> {
        if !(s > 0.0 && s < self.k()) {
            return Err(Error::InvalidArgument(format!("need 0 < s < {}, got {s}", self.weight)));
        }
        Ok(())
    }

    fn check_tolerance(&self, tolerance: f64) -> Result<()> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tolerance}")));
        }
        Ok(())
    }

    fn terms_needed(&self, s: f64, split: f64, tolerance: f64) -> Result<usize> {
        for n in 1..=self.precision() {
            if self.tail_bound(s, split, n) < tolerance / 2.0 {
                return Ok(n);
            }
        }
        Err(Error::PrecisionUnreachable { precision: self.precision(), tolerance })
    }

    /// Bound on `Σ_{m > n}` of the Λ terms, from `|a(m)| <= d(m) m^{(k−1)/2} <= 2 m^{k/2}`
    /// and `Γ(a, x) <= x^{a−1} e^{−x} / (1 − (a−1)/x)` for `x > a − 1`.
    fn tail_bound(&self, s: f64, split: f64, n: usize) -> f64 {
        let k = self.k();
        let m = (n + 1) as f64;
        let piece = |a: f64, c: f64, scale: f64| -> f64 {
            let x = c * m;
            let cx = if a <= 1.0 {
                1.0
            } else if x > a - 1.0 {
                1.0 / (1.0 - (a - 1.0) / x)
            } else {
                return f64::INFINITY;
            };
            let first = 2.0 * m.powf(k / 2.0 - 1.0) / (2.0 * PI) * scale * cx * (-x).exp();
            let ratio = ((m + 1.0) / m).powf(k / 2.0 - 1.0) * (-c).exp();
            if ratio >= 1.0 {
                return f64::INFINITY;
            }
            first / (1.0 - ratio)
        };
        piece(s, 2.0 * PI * split, split.powf(s - 1.0)) + piece(k - s, 2.0 * PI / split, split.powf(s + 1.0 - k))
    }
}

fn primes_up_to(n: usize) -> Vec<usize> {
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if sieve[p] {
            out.push(p);
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
    }
    out
}

/// Convenience wrapper: `L(f, s)` from a `q`-expansion.
pub fn l_value(f: &QExpansion, s: f64, tolerance: f64) -> Result<LValue> {
    LSeries::new(f)?.l_value(s, tolerance)
}

/// `r_n(f) = n! (−2πi)^{−n−1} L(f, n+1)` for `0 <= n <= k − 2`.
pub fn period(f: &QExpansion, n: u32, tolerance: f64) -> Result<LValue> {
    let series = LSeries::new(f)?;
    period_of(&series, n, tolerance)
}

fn period_of(series: &LSeries, n: u32, tolerance: f64) -> Result<LValue> {
    if n > series.weight() - 2 {
        return Err(Error::InvalidArgument(format!("period index {n} exceeds k − 2 = {}", series.weight() - 2)));
    }
    let factorial: f64 = (1..=n).map(f64::from).product();
    let scale = factorial * (2.0 * PI).powi(-(n as i32) - 1);
    // (−i)^{−n−1} = i^{n+1}
    let phase = Complex64::i().powu(n + 1);
    let l = series.l_value(f64::from(n) + 1.0, tolerance / scale.max(1.0))?;
    Ok(LValue { s: f64::from(n), value: l.value * phase * scale, error_bound: l.error_bound * scale, terms: l.terms })
}

/// `Σ_n C(m, n) r_n(f) X^n Y^{m−n}` with `m = k − 2`. The coefficient of
/// `X^n Y^{m−n}` lies in the torus eigenline of weight `2n − m`.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodPolynomial {
    pub degree: u32,
    pub coefficients: Vec<Complex64>,
    pub error_bounds: Vec<f64>,
}

impl PeriodPolynomial {
    pub fn eigenline_weight(&self, n: u32) -> i64 {
        2 * i64::from(n) - i64::from(self.degree)
    }

    /// `max_n |c_{m−n} − (−1)^{n+1} c_n|`, which vanishes by the functional equation.
    pub fn symmetry_residual(&self) -> f64 {
        let m = self.degree as usize;
        (0..=m)
            .map(|n| {
                let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
                (self.coefficients[m - n] - self.coefficients[n] * sign).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Even-index coefficients are purely imaginary and odd-index ones real;
    /// returns the largest violation.
    pub fn parity_residual(&self) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 0 { c.re.abs() } else { c.im.abs() })
            .fold(0.0, f64::max)
    }
}

pub fn period_polynomial(f: &QExpansion, tolerance: f64) -> Result<PeriodPolynomial> {
    let series = LSeries::new(f)?;
    let m = series.weight() - 2;
    let mut coefficients = Vec::new();
    let mut error_bounds = Vec::new();
    for n in 0..=m {
        let binom = binomial(m, n);
        let r = period_of(&series, n, tolerance)?;
        coefficients.push(r.value * binom);
        error_bounds.push(r.error_bound * binom);
    }
    Ok(PeriodPolynomial { degree: m, coefficients, error_bounds })
}

fn binomial(m: u32, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * f64::from(m - i) / f64::from(i + 1))
}

/// Nonvanishing certificate for `L(f, a+3)`, `f` the eigenform of weight `a+b+4`.
#[derive(Clone, Debug, Serialize)]
pub struct NonvanishingCertificate {
    pub a: u32,
    pub b: u32,
    pub weight: u32,
    pub s: u32,
    pub value: LValue,
    pub margin: f64,
    /// `2(a+2) > a+b+4`: `s` lies in the region of absolute convergence of the Euler product.
    pub convergence_inequality: (u32, u32),
    /// `(ζ(2σ)/ζ(σ))^2 <= |L(f, s)|` with `σ = s − (k−1)/2`.
    pub analytic_lower_bound: f64,
    pub certified: bool,
}

pub fn nonvanishing_check(a: u32, b: u32, tolerance: f64) -> Result<NonvanishingCertificate> {
    if !(a + b).is_multiple_of(2) {
        return Err(Error::OddParity(a + b));
    }
    if a <= b {
        return Err(Error::InvalidArgument(format!("nonvanishing check needs a > b, got ({a},{b})")));
    }
    let k = a + b + 4;
    let s_k = dim_cusp_forms(k.into());
    if s_k != 1 {
        let reason = if s_k == 0 {
            "no cusp forms of this weight".to_string()
        } else {
            format!("cusp space has dimension {s_k}; only one-dimensional spaces are certified")
        };
        return Err(Error::UnsupportedWeight { weight: k.into(), reason });
    }
    let f = eigenform(k, DEFAULT_PRECISION)?;
    let s = a + 3;
    let value = l_value(&f, f64::from(s), tolerance)?;
    let sigma = f64::from(s) - (f64::from(k) - 1.0) / 2.0;
    let bound = zeta_ratio_lower_bound(sigma);
    let lhs = 2 * (a + 2);
    let certified = lhs > k && value.value.norm() > CERTIFICATE_MARGIN * value.error_bound;
    Ok(NonvanishingCertificate {
        a,
        b,
        weight: k,
        s,
        value,
        margin: CERTIFICATE_MARGIN,
        convergence_inequality: (lhs, k),
        analytic_lower_bound: bound,
        certified,
    })
}

/// Lower bound for `(ζ(2σ)/ζ(σ))^2`, `σ > 1`: partial sums bound `ζ(2σ)` from
/// below and the integral test bounds `ζ(σ)` from above.
fn zeta_ratio_lower_bound(sigma: f64) -> f64 {
    let terms = 10_000;
    let partial = |x: f64| (1..=terms).map(|n| (n as f64).powf(-x)).sum::<f64>();
    let lower_2s = partial(2.0 * sigma);
    let upper_s = partial(sigma) + (terms as f64).powf(1.0 - sigma) / (sigma - 1.0);
    (lower_2s / upper_s).powi(2) * (1.0 - 1e-12)
}

/// `(value, error)` rounded to the number of decimals the error bound certifies.
pub fn certified_decimals(error_bound: f64) -> usize {
    if error_bound <= 0.0 || !error_bound.is_finite() {
        return 17;
    }
    (-error_bound.log10()).floor().clamp(0.0, 17.0) as usize
}

pub fn round_to(x: f64, decimals: usize) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    let r = (x * scale).round() / scale;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}
