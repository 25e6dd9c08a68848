//! The Chow ring of projective space, `A_*P^N = Z[H]/(H^{N+1})`.
//!
//! Classes are stored by codimension: `coeffs[i]` multiplies `H^i`. The
//! component of dimension `k` therefore lives at index `N - k`.
//!
//! Besides the ring structure this module carries the three operations that
//! generate the involutions of the Chow group: the alternating-sign
//! [`ChowClass::dual`], the Picard action [`ChowClass::tensor_line`], and
//! their combination [`ChowClass::involution`],
//! `i_{n,L}(a) = c(L)^n (a^dual (x) L)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::binomial::{generalized_binomial, int_pow};
use crate::error::{Error, Result};

/// An element of `A_*P^N` with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChowClass {
    coeffs: Vec<BigInt>,
}

/// The line bundle `O(m)` on `P^N`, with `c(O(m)) = 1 + mH`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct LineBundle {
    pub twist: i64,
}

impl LineBundle {
    pub const TRIVIAL: LineBundle = LineBundle { twist: 0 };

    pub fn new(twist: i64) -> Self {
        LineBundle { twist }
    }

    /// `L (x) M`; twists add.
    pub fn tensor(self, other: LineBundle) -> LineBundle {
        LineBundle::new(self.twist + other.twist)
    }

    pub fn dual(self) -> LineBundle {
        LineBundle::new(-self.twist)
    }

    /// `c(L)^k` in `A_*P^N` for any integer `k`.
    pub fn chern_power(self, ambient_dim: usize, k: i64) -> ChowClass {
        chern_power(ambient_dim, self, k)
    }

    /// `c_1(L) = mH`.
    pub fn first_chern(self, ambient_dim: usize) -> ChowClass {
        ChowClass::monomial(ambient_dim, 1, BigInt::from(self.twist))
    }
}

/// `(1 + mH)^k`, expanded with generalized binomial coefficients so negative
/// `k` needs no inversion.
pub fn chern_power(ambient_dim: usize, line: LineBundle, k: i64) -> ChowClass {
    let coeffs = (0..=ambient_dim)
        .map(|j| generalized_binomial(k, j as i64) * int_pow(line.twist, j as u32))
        .collect();
    ChowClass { coeffs }
}

impl ChowClass {
    /// Builds a class from codimension-indexed coefficients; the ambient
    /// dimension is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a class on P^N needs N+1 coefficients");
        ChowClass { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn zero(ambient_dim: usize) -> Self {
        ChowClass { coeffs: vec![BigInt::zero(); ambient_dim + 1] }
    }

    pub fn one(ambient_dim: usize) -> Self {
        Self::monomial(ambient_dim, 0, BigInt::one())
    }

    /// `c * H^codim`; zero when `codim > ambient_dim`.
    pub fn monomial(ambient_dim: usize, codim: usize, c: BigInt) -> Self {
        let mut out = Self::zero(ambient_dim);
        if codim <= ambient_dim {
            out.coeffs[codim] = c;
        }
        out
    }

    /// `H^codim`.
    pub fn hyperplane_power(ambient_dim: usize, codim: usize) -> Self {
        Self::monomial(ambient_dim, codim, BigInt::one())
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `H^codim`.
    pub fn codim_coeff(&self, codim: usize) -> &BigInt {
        &self.coeffs[codim]
    }

    /// Coefficient of the dimension-`dim` component, i.e. of `H^{N-dim}`.
    pub fn dim_coeff(&self, dim: usize) -> &BigInt {
        &self.coeffs[self.ambient_dim() - dim]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Proper pushforward to a point: the coefficient of `H^N`.
    pub fn degree(&self) -> BigInt {
        self.coeffs[self.ambient_dim()].clone()
    }

    fn check_same_ambient(&self, other: &ChowClass) -> Result<()> {
        if self.ambient_dim() == other.ambient_dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.ambient_dim(), right: other.ambient_dim() })
        }
    }

    /// Truncated product in `Z[H]/(H^{N+1})`.
    pub fn ring_product(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_same_ambient(other)?;
        let n = self.ambient_dim();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(ChowClass { coeffs: out })
    }

    pub fn checked_add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_same_ambient(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(ChowClass { coeffs })
    }

    pub fn checked_sub(&self, other: &ChowClass) -> Result<ChowClass> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &BigInt) -> ChowClass {
        ChowClass { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplicative inverse of a class whose constant term is `+1` or `-1`.
    pub fn unit_inverse(&self) -> Result<ChowClass> {
        let lead = &self.coeffs[0];
        if lead.abs() != BigInt::one() {
            return Err(Error::NonUnitLeading(lead.clone()));
        }
        let n = self.ambient_dim();
        // lead^{-1} == lead
        let mut inv: Vec<BigInt> = Vec::with_capacity(n + 1);
        inv.push(lead.clone());
        for k in 1..=n {
            let acc: BigInt = (1..=k).map(|i| &self.coeffs[i] * &inv[k - i]).sum();
            inv.push(-(lead * acc));
        }
        Ok(ChowClass { coeffs: inv })
    }

    /// `sum (-1)^i a^i`: negates odd codimensions.
    pub fn dual(&self) -> ChowClass {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        ChowClass { coeffs }
    }

    /// The Picard action `sum a^i / c(L)^i`.
    pub fn tensor_line(&self, line: LineBundle) -> ChowClass {
        let n = self.ambient_dim();
        if line.twist == 0 {
            return self.clone();
        }
        // Horner in t = H / c(L): a_0 + t(a_1 + t(a_2 + ...))
        let t = &ChowClass::hyperplane_power(n, 1) * &chern_power(n, line, -1);
        let mut out = ChowClass::monomial(n, 0, self.coeffs[n].clone());
        for a in self.coeffs[..n].iter().rev() {
            out = &out * &t;
            out.coeffs[0] += a;
        }
        out
    }

    /// `i_{n,L}(a) = c(L)^n (a^dual (x) L)`, an involution for every `n` and `L`.
    pub fn involution(&self, n: i64, line: LineBundle) -> ChowClass {
        let twisted = self.dual().tensor_line(line);
        &chern_power(self.ambient_dim(), line, n) * &twisted
    }

    /// Integer coefficient vector as a JSON array `[c0, ..., cN]`.
    pub fn to_json_array(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }

    /// Parses `[c0, ..., cN]`; the ambient dimension is the array length minus one.
    pub fn from_json_array(text: &str) -> Result<ChowClass> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("class array: {e}")))?;
        Self::from_json_value(&value)
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<ChowClass> {
        let items = value
            .as_array()
            .ok_or_else(|| Error::Parse("class must be a JSON array of integers".into()))?;
        if items.is_empty() {
            return Err(Error::Parse("class array must have at least one entry".into()));
        }
        let coeffs = items
            .iter()
            .enumerate()
            .map(|(i, v)| json_integer(v).map_err(|e| Error::Parse(format!("entry {i}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChowClass { coeffs })
    }

    /// Parses the text form, e.g. `3H + 1H^2` or `1 - H^3`.
    ///
    /// Without `ambient_dim`, the ambient dimension is the largest exponent
    /// that appears (zero for a constant).
    pub fn parse(text: &str, ambient_dim: Option<usize>) -> Result<ChowClass> {
        let terms = parse_terms(text)?;
        let top = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        let n = match ambient_dim {
            Some(n) if top > n => {
                return Err(Error::Parse(format!("term H^{top} exceeds ambient dimension {n}")))
            }
            Some(n) => n,
            None => top,
        };
        let mut out = ChowClass::zero(n);
        for (e, c) in terms {
            out.coeffs[e] += c;
        }
        Ok(out)
    }

    /// Dimension-indexed rendering, e.g. `1[P^0] + 2[P^1]`, for display only.
    pub fn dimension_annotation(&self) -> String {
        let n = self.ambient_dim();
        let terms: Vec<String> = (0..=n)
            .filter(|&k| !self.dim_coeff(k).is_zero())
            .map(|k| format!("{}[P^{k}]", self.dim_coeff(k)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

pub(crate) fn json_integer(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(num) => {
            num.to_string().parse::<BigInt>().map_err(|_| format!("`{num}` is not an integer"))
        }
        other => Err(format!("expected integer, found {other}")),
    }
}

fn parse_terms(text: &str) -> Result<Vec<(usize, BigInt)>> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty class literal".into()));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    while pos < s.len() {
        let negative = match s[pos] {
            '+' => {
                pos += 1;
                false
            }
            '-' => {
                pos += 1;
                true
            }
            _ if pos == 0 => false,
            c => return Err(Error::Parse(format!("expected '+' or '-' at offset {pos}, found '{c}'"))),
        };
        let digits_start = pos;
        while pos < s.len() && s[pos].is_ascii_digit() {
            pos += 1;
        }
        let mut coeff = if pos > digits_start {
            s[digits_start..pos].iter().collect::<String>().parse::<BigInt>().unwrap()
        } else {
            BigInt::one()
        };
        let had_digits = pos > digits_start;
        if had_digits && pos < s.len() && s[pos] == '*' {
            pos += 1;
        }
        let mut exponent = 0usize;
        if pos < s.len() && s[pos] == 'H' {
            pos += 1;
            exponent = 1;
            if pos < s.len() && s[pos] == '^' {
                pos += 1;
                let e_start = pos;
                while pos < s.len() && s[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == e_start {
                    return Err(Error::Parse(format!("missing exponent after '^' at offset {pos}")));
                }
                exponent = s[e_start..pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse("exponent out of range".into()))?;
            }
        } else if !had_digits {
            return Err(Error::Parse(format!("expected a coefficient or 'H' at offset {pos}")));
        }
        if pos < s.len() && s[pos] != '+' && s[pos] != '-' {
            return Err(Error::Parse(format!("unexpected '{}' at offset {pos}", s[pos])));
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((exponent, coeff));
    }
    Ok(terms)
}

/// Canonical text form: nonzero terms by increasing codimension, every
/// coefficient written out (`1H`, not `H`), `0` for the zero class.
impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}H")?,
                _ => write!(f, "{mag}H^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        ChowClass { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        -&self
    }
}

// The operator impls panic on mismatched ambient dimensions; use the
// `checked_*` / `ring_product` methods where that is not already known.

impl Add for &ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.checked_add(rhs).expect("adding classes on different P^N")
    }
}

impl Add for ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: ChowClass) -> ChowClass {
        &self + &rhs
    }
}

impl AddAssign<&ChowClass> for ChowClass {
    fn add_assign(&mut self, rhs: &ChowClass) {
        assert_eq!(self.ambient_dim(), rhs.ambient_dim(), "adding classes on different P^N");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self.checked_sub(rhs).expect("subtracting classes on different P^N")
    }
}

impl Sub for ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: ChowClass) -> ChowClass {
        &self - &rhs
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: &ChowClass) -> ChowClass {
        self.ring_product(rhs).expect("multiplying classes on different P^N")
    }
}

impl Mul for ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: ChowClass) -> ChowClass {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64]) -> ChowClass {
        ChowClass::from_i64s(v)
    }

    // Inverse of 1 + t by the geometric series sum (-t)^k, t nilpotent.
    fn geometric_inverse(a: &ChowClass) -> ChowClass {
        let n = a.ambient_dim();
        let t = a - &ChowClass::one(n);
        let mut term = ChowClass::one(n);
        let mut sum = ChowClass::one(n);
        for _ in 0..n {
            term = &term * &(-&t);
            sum += &term;
        }
        sum
    }

    #[test]
    fn ring_product_examples() {
        assert_eq!(&c(&[1, 1, 0]) * &c(&[1, 1, 0]), c(&[1, 2, 1]));
        assert_eq!(&c(&[1, 0, 3]) * &c(&[0, 3, 1]), c(&[0, 3, 1]));
        assert_eq!(&c(&[0, 1]) * &c(&[0, 1]), c(&[0, 0]));
    }

    #[test]
    fn ring_product_rejects_mismatch() {
        assert_eq!(
            c(&[1, 0]).ring_product(&c(&[1, 0, 0])),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn unit_inverse_examples() {
        assert_eq!(c(&[1, 3, 0]).unit_inverse().unwrap(), c(&[1, -3, 9]));
        assert_eq!(c(&[1, 1, 0, 0]).unit_inverse().unwrap(), c(&[1, -1, 1, -1]));
        assert_eq!(ChowClass::one(4).unit_inverse().unwrap(), ChowClass::one(4));
        assert_eq!(geometric_inverse(&c(&[1, 3, 0])), c(&[1, -3, 9]));
        assert_eq!(geometric_inverse(&c(&[1, 1, 0, 0])), c(&[1, -1, 1, -1]));
    }

    #[test]
    fn unit_inverse_negative_lead() {
        let a = c(&[-1, 2, 5, -7]);
        let inv = a.unit_inverse().unwrap();
        assert_eq!(&a * &inv, ChowClass::one(3));
    }

    #[test]
    fn unit_inverse_rejects_non_unit() {
        assert_eq!(c(&[2, 1]).unit_inverse(), Err(Error::NonUnitLeading(BigInt::from(2))));
        assert!(c(&[0, 1]).unit_inverse().is_err());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(c(&[1, 1, 1]).dual(), c(&[1, -1, 1]));
        assert_eq!(c(&[0, 0, 1]).dual(), c(&[0, 0, 1]));
        assert_eq!(c(&[0, 0, 1, -2]).dual(), c(&[0, 0, 1, 2]));
    }

    #[test]
    fn tensor_line_examples() {
        let a = c(&[3, -1, 4, 1]);
        assert_eq!(a.tensor_line(LineBundle::TRIVIAL), a);
        assert_eq!(c(&[1, 1, 1]).tensor_line(LineBundle::new(1)), c(&[1, 1, 0]));
        assert_eq!(c(&[0, 0, 1, -2]).tensor_line(LineBundle::new(2)), c(&[0, 0, 1, -6]));
    }

    #[test]
    fn involution_examples() {
        let a = c(&[2, -5, 7]);
        for n in -3..=3 {
            assert_eq!(a.involution(n, LineBundle::TRIVIAL), a.dual());
        }
        assert_eq!(c(&[0, 1, 0]).involution(2, LineBundle::new(1)), c(&[0, -1, -1]));
        assert_eq!(c(&[0, 0, 1, 2]).involution(3, LineBundle::new(2)), c(&[0, 0, 1, 0]));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(c(&[0, 3, 1]).degree(), BigInt::from(1));
        assert_eq!(c(&[0, 2, 5, 4]).degree(), BigInt::from(4));
        assert_eq!(ChowClass::one(3).degree(), BigInt::from(0));
    }

    #[test]
    fn chern_power_examples() {
        let l = LineBundle::new(3);
        assert_eq!(l.chern_power(2, 2), c(&[1, 6, 9]));
        assert_eq!(l.chern_power(2, -1), c(&[1, -3, 9]));
        assert_eq!(l.chern_power(2, -1), c(&[1, 3, 0]).unit_inverse().unwrap());
        assert_eq!(LineBundle::new(-7).chern_power(5, 0), ChowClass::one(5));
    }

    #[test]
    fn chern_power_matches_repeated_product() {
        for m in -3..=3 {
            let l = LineBundle::new(m);
            let base = l.chern_power(5, 1);
            let inv = base.unit_inverse().unwrap();
            let mut pos = ChowClass::one(5);
            let mut neg = ChowClass::one(5);
            for k in 0..6 {
                assert_eq!(l.chern_power(5, k), pos);
                assert_eq!(l.chern_power(5, -k), neg);
                pos = &pos * &base;
                neg = &neg * &inv;
            }
        }
    }

    #[test]
    fn text_form_examples() {
        assert_eq!(c(&[0, 3, 1]).to_string(), "3H + 1H^2");
        assert_eq!(c(&[0, -1, -1]).to_string(), "-1H - 1H^2");
        assert_eq!(c(&[1, 0, -3]).to_string(), "1 - 3H^2");
        assert_eq!(ChowClass::zero(3).to_string(), "0");
        assert_eq!(ChowClass::parse("3H + 1H^2", None).unwrap(), c(&[0, 3, 1]));
        assert_eq!(ChowClass::parse("-H-H^2", Some(3)).unwrap(), c(&[0, -1, -1, 0]));
        assert_eq!(ChowClass::parse("1H", Some(2)).unwrap(), c(&[0, 1, 0]));
        assert_eq!(ChowClass::parse("2*H^2 + 3 + H^2", None).unwrap(), c(&[3, 0, 3]));
        assert_eq!(ChowClass::parse("0", Some(2)).unwrap(), ChowClass::zero(2));
    }

    #[test]
    fn text_form_rejects_garbage() {
        for bad in ["", "H^", "3X", "1H^2 3H", "+", "H^3 - ", "1H^2", "**"] {
            let res = ChowClass::parse(bad, Some(1));
            assert!(res.is_err(), "{bad:?} parsed as {res:?}");
        }
    }

    #[test]
    fn json_array_form() {
        let a = c(&[1, -3, 9]);
        assert_eq!(a.to_json_array(), "[1, -3, 9]");
        assert_eq!(ChowClass::from_json_array("[1, -3, 9]").unwrap(), a);
        let big = ChowClass::new(vec![BigInt::from(1), "-123456789012345678901234567890".parse().unwrap()]);
        assert_eq!(ChowClass::from_json_array(&big.to_json_array()).unwrap(), big);
        assert!(ChowClass::from_json_array("[]").is_err());
        assert!(ChowClass::from_json_array("[1.5]").is_err());
        assert!(ChowClass::from_json_array("{\"a\":1}").is_err());
    }

    #[test]
    fn dimension_indexing() {
        let a = c(&[0, 2, 5, 4]);
        assert_eq!(a.dim_coeff(0), &BigInt::from(4));
        assert_eq!(a.dim_coeff(2), &BigInt::from(2));
        assert_eq!(a.dimension_annotation(), "4[P^0] + 5[P^1] + 2[P^2]");
    }
}
