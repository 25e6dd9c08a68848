//! Correspondences on `P^N x P^N`, i.e. classes in
//! `Z[x,y]/(x^{N+1}, y^{N+1})`, acting on `A_*P^N` by pull-multiply-push.
//!
//! `x` is the hyperplane class of the source factor and `y` of the target.
//! Pushing forward along the source projection keeps the coefficient of
//! `x^N`; every lower power of `x` maps to zero.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::binomial::{generalized_binomial, int_pow};
use crate::chowring::{json_integer, ChowClass};
use crate::error::{Error, Result};

/// `grid[i][j]` is the coefficient of `x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Correspondence {
    grid: Vec<Vec<BigInt>>,
}

/// Matrix of a linear operator on `A_*P^N` in the basis `1, H, ..., H^N`:
/// entry `(i, j)` is the coefficient of `H^i` in the image of `H^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorMatrix {
    entries: Vec<Vec<BigInt>>,
}

impl OperatorMatrix {
    pub fn new(entries: Vec<Vec<BigInt>>) -> Result<Self> {
        let size = entries.len();
        if size == 0 || entries.iter().any(|row| row.len() != size) {
            return Err(Error::Parse("operator matrix must be square and non-empty".into()));
        }
        Ok(OperatorMatrix { entries })
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().copied().map(BigInt::from).collect()).collect())
    }

    pub fn identity(ambient_dim: usize) -> Self {
        let size = ambient_dim + 1;
        let entries = (0..size)
            .map(|i| (0..size).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        OperatorMatrix { entries }
    }

    /// Matrix of `op` evaluated on each `H^j`.
    pub fn of_operator(ambient_dim: usize, op: impl Fn(&ChowClass) -> ChowClass) -> Self {
        let size = ambient_dim + 1;
        let columns: Vec<ChowClass> =
            (0..size).map(|j| op(&ChowClass::hyperplane_power(ambient_dim, j))).collect();
        let entries = (0..size)
            .map(|i| columns.iter().map(|col| col.codim_coeff(i).clone()).collect())
            .collect();
        OperatorMatrix { entries }
    }

    pub fn ambient_dim(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn apply(&self, class: &ChowClass) -> Result<ChowClass> {
        if class.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { left: self.ambient_dim(), right: class.ambient_dim() });
        }
        let coeffs = self
            .entries
            .iter()
            .map(|row| row.iter().zip(class.coeffs()).map(|(a, b)| a * b).sum())
            .collect();
        Ok(ChowClass::new(coeffs))
    }

    pub fn checked_mul(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.ambient_dim() != rhs.ambient_dim() {
            return Err(Error::DimensionMismatch { left: self.ambient_dim(), right: rhs.ambient_dim() });
        }
        let size = self.entries.len();
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| (0..size).map(|k| &self.entries[i][k] * &rhs.entries[k][j]).sum())
                    .collect()
            })
            .collect();
        Ok(OperatorMatrix { entries })
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.checked_mul(rhs).expect("operator matrices of different size")
    }
}

impl Correspondence {
    pub fn new(grid: Vec<Vec<BigInt>>) -> Result<Self> {
        let size = grid.len();
        if size < 2 || grid.iter().any(|row| row.len() != size) {
            return Err(Error::Parse(
                "correspondence grid must be (N+1)x(N+1) with N >= 1".into(),
            ));
        }
        Ok(Correspondence { grid })
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().copied().map(BigInt::from).collect()).collect())
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Correspondence { grid: vec![vec![BigInt::zero(); ambient_dim + 1]; ambient_dim + 1] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.grid.len() - 1
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &BigInt {
        &self.grid[i][j]
    }

    pub fn grid(&self) -> &[Vec<BigInt>] {
        &self.grid
    }

    /// The diagonal `sum_j x^{N-j} y^j`, which acts as the identity.
    pub fn diagonal(ambient_dim: usize) -> Self {
        let mut out = Self::zero(ambient_dim);
        for j in 0..=ambient_dim {
            out.grid[ambient_dim - j][j] = BigInt::one();
        }
        out
    }

    /// The correspondence inducing `i_{n,O(m)}`:
    /// `a_{N-j,i} = (-1)^j C(n-j, i-j) m^{i-j}`, with `0^0 = 1`.
    pub fn involutive(ambient_dim: usize, n: i64, m: i64) -> Self {
        let mut out = Self::zero(ambient_dim);
        for j in 0..=ambient_dim {
            for i in j..=ambient_dim {
                let shift = (i - j) as i64;
                let mut value = generalized_binomial(n - j as i64, shift) * int_pow(m, shift as u32);
                if j % 2 == 1 {
                    value = -value;
                }
                out.grid[ambient_dim - j][i] = value;
            }
        }
        out
    }

    fn check_class(&self, class: &ChowClass) -> Result<()> {
        if class.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { left: self.ambient_dim(), right: class.ambient_dim() });
        }
        Ok(())
    }

    /// `alpha_*(beta) = q_*(alpha . p^* beta)`.
    pub fn pushforward(&self, beta: &ChowClass) -> Result<ChowClass> {
        self.check_class(beta)?;
        let n = self.ambient_dim();
        // coefficient of x^N in alpha(x, y) * beta(x)
        let coeffs = (0..=n)
            .map(|i| (0..=n).map(|j| &self.grid[n - j][i] * beta.codim_coeff(j)).sum())
            .collect();
        Ok(ChowClass::new(coeffs))
    }

    /// `alpha^*(gamma) = p_*(alpha . q^* gamma)`.
    pub fn pullback(&self, gamma: &ChowClass) -> Result<ChowClass> {
        self.check_class(gamma)?;
        let n = self.ambient_dim();
        let coeffs = (0..=n)
            .map(|i| (0..=n).map(|k| &self.grid[i][n - k] * gamma.codim_coeff(k)).sum())
            .collect();
        Ok(ChowClass::new(coeffs))
    }

    /// Matrix of `alpha_*`: `M[i][j] = a_{N-j,i}`.
    pub fn to_matrix(&self) -> OperatorMatrix {
        let n = self.ambient_dim();
        let entries = (0..=n).map(|i| (0..=n).map(|j| self.grid[n - j][i].clone()).collect()).collect();
        OperatorMatrix { entries }
    }

    /// The unique correspondence whose pushforward has the given matrix.
    pub fn from_matrix(matrix: &OperatorMatrix) -> Result<Self> {
        let n = matrix.ambient_dim();
        if n < 1 {
            return Err(Error::Parse("correspondences need N >= 1".into()));
        }
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n {
                out.grid[n - j][i] = matrix.entries[i][j].clone();
            }
        }
        Ok(out)
    }

    /// `outer o inner`, defined by `(outer o inner)_* = outer_* o inner_*`.
    pub fn compose(&self, inner: &Correspondence) -> Result<Self> {
        let product = self.to_matrix().checked_mul(&inner.to_matrix())?;
        Self::from_matrix(&product)
    }

    /// Composition through the triple product on `P^N x P^N x P^N`:
    /// pull `inner` back from the first two factors and `self` from the last
    /// two, multiply, and push forward along the middle factor.
    pub fn compose_by_intersection(&self, inner: &Correspondence) -> Result<Self> {
        let n = self.ambient_dim();
        if inner.ambient_dim() != n {
            return Err(Error::DimensionMismatch { left: n, right: inner.ambient_dim() });
        }
        let mut out = Self::zero(n);
        for a in 0..=n {
            for e in 0..=n {
                // middle exponents b + c = N survive the pushforward
                out.grid[a][e] = (0..=n).map(|b| &inner.grid[a][b] * &self.grid[n - b][e]).sum();
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Correspondence) -> Result<Self> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch { left: self.ambient_dim(), right: other.ambient_dim() });
        }
        let grid = self
            .grid
            .iter()
            .zip(&other.grid)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
            .collect();
        Ok(Correspondence { grid })
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .grid
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("{{\"ambient\": {}, \"grid\": [{}]}}", self.ambient_dim(), rows.join(", "))
    }

    /// Parses `{"ambient": N, "grid": [[...], ...]}`, rows indexed by the
    /// `x` exponent.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("correspondence: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("correspondence must be a JSON object".into()))?;
        if let Some(key) = obj.keys().find(|k| *k != "ambient" && *k != "grid") {
            return Err(Error::Parse(format!("unknown field `{key}` in correspondence")));
        }
        let ambient = obj
            .get("ambient")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Parse("field `ambient` must be a non-negative integer".into()))?
            as usize;
        let rows = obj
            .get("grid")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("field `grid` must be an array of rows".into()))?;
        let grid = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.as_array()
                    .ok_or_else(|| Error::Parse(format!("grid[{i}] must be an array")))?
                    .iter()
                    .enumerate()
                    .map(|(j, v)| json_integer(v).map_err(|e| Error::Parse(format!("grid[{i}][{j}]: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if grid.len() != ambient + 1 {
            return Err(Error::Parse(format!(
                "grid has {} rows but ambient {} needs {}",
                grid.len(),
                ambient,
                ambient + 1
            )));
        }
        Self::new(grid)
    }

    /// Parses a polynomial in `x` and `y`, e.g. `x + x*y - y` or `3*x^2*y^2`.
    ///
    /// Without `ambient_dim` the ambient dimension is the largest exponent
    /// (at least 1).
    pub fn parse(text: &str, ambient_dim: Option<usize>) -> Result<Self> {
        let terms = parse_xy_terms(text)?;
        let top = terms.iter().map(|&(a, b, _)| a.max(b)).max().unwrap_or(0);
        let n = match ambient_dim {
            Some(n) if top > n => {
                return Err(Error::Parse(format!("exponent {top} exceeds ambient dimension {n}")))
            }
            Some(n) => n,
            None => top.max(1),
        };
        if n < 1 {
            return Err(Error::Parse("correspondences need N >= 1".into()));
        }
        let mut out = Self::zero(n);
        for (a, b, c) in terms {
            out.grid[a][b] += c;
        }
        Ok(out)
    }
}

/// Canonical text form: monomials by decreasing `x` exponent, then increasing
/// `y` exponent; unit coefficients are omitted.
impl fmt::Display for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.ambient_dim();
        let mut first = true;
        for a in (0..=n).rev() {
            for b in 0..=n {
                let c = &self.grid[a][b];
                if c.is_zero() {
                    continue;
                }
                if first {
                    if c.is_negative() {
                        f.write_str("-")?;
                    }
                } else {
                    f.write_str(if c.is_negative() { " - " } else { " + " })?;
                }
                first = false;
                let mag = c.abs();
                let mut factors: Vec<String> = Vec::new();
                if !mag.is_one() || (a == 0 && b == 0) {
                    factors.push(mag.to_string());
                }
                match a {
                    0 => {}
                    1 => factors.push("x".into()),
                    _ => factors.push(format!("x^{a}")),
                }
                match b {
                    0 => {}
                    1 => factors.push("y".into()),
                    _ => factors.push(format!("y^{b}")),
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn parse_xy_terms(text: &str) -> Result<Vec<(usize, usize, BigInt)>> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty correspondence literal".into()));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    let read_uint = |pos: &mut usize| -> Option<String> {
        let start = *pos;
        while *pos < s.len() && s[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then(|| s[start..*pos].iter().collect())
    };
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
        let mut coeff = BigInt::one();
        let (mut xe, mut ye) = (0usize, 0usize);
        let mut factors = 0;
        loop {
            if factors > 0 {
                if pos < s.len() && s[pos] == '*' {
                    pos += 1;
                } else if !(pos < s.len() && (s[pos] == 'x' || s[pos] == 'y')) {
                    break;
                }
            }
            if pos >= s.len() {
                return Err(Error::Parse("term ends unexpectedly".into()));
            }
            match s[pos] {
                'x' | 'y' => {
                    let var = s[pos];
                    pos += 1;
                    let mut e = 1usize;
                    if pos < s.len() && s[pos] == '^' {
                        pos += 1;
                        e = read_uint(&mut pos)
                            .ok_or_else(|| Error::Parse(format!("missing exponent at offset {pos}")))?
                            .parse()
                            .map_err(|_| Error::Parse("exponent out of range".into()))?;
                    }
                    if var == 'x' {
                        xe += e;
                    } else {
                        ye += e;
                    }
                }
                c if c.is_ascii_digit() => {
                    let digits = read_uint(&mut pos).unwrap();
                    coeff *= digits.parse::<BigInt>().unwrap();
                }
                c => return Err(Error::Parse(format!("unexpected '{c}' at offset {pos}"))),
            }
            factors += 1;
        }
        if pos < s.len() && s[pos] != '+' && s[pos] != '-' {
            return Err(Error::Parse(format!("unexpected '{}' at offset {pos}", s[pos])));
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((xe, ye, coeff));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chowring::LineBundle;

    fn corr(text: &str, n: usize) -> Correspondence {
        Correspondence::parse(text, Some(n)).unwrap()
    }

    #[test]
    fn involutive_examples() {
        assert_eq!(Correspondence::involutive(1, 0, 0), corr("x - y", 1));
        assert_eq!(Correspondence::involutive(1, 1, 1), corr("x + x*y - y", 1));
        assert_eq!(Correspondence::involutive(2, 0, 0), corr("x^2 - x*y + y^2", 2));
    }

    #[test]
    fn pushforward_examples() {
        let beta = ChowClass::from_i64s(&[5, -7]);
        assert_eq!(Correspondence::diagonal(1).pushforward(&beta).unwrap(), beta);
        assert_eq!(corr("x - y", 1).pushforward(&beta).unwrap(), ChowClass::from_i64s(&[5, 7]));
        assert_eq!(
            corr("x + x*y - y", 1).pushforward(&beta).unwrap(),
            ChowClass::from_i64s(&[5, 12])
        );
        assert_eq!(
            corr("x + x*y - y", 1).pushforward(&beta).unwrap(),
            beta.involution(1, LineBundle::new(1))
        );
        assert!(Correspondence::diagonal(2).pushforward(&beta).is_err());
    }

    #[test]
    fn pullback_examples() {
        let gamma = ChowClass::from_i64s(&[3, 4]);
        assert_eq!(Correspondence::diagonal(1).pullback(&gamma).unwrap(), gamma);
        assert_eq!(corr("x - y", 1).pullback(&gamma).unwrap(), ChowClass::from_i64s(&[-3, 4]));
        assert_eq!(corr("x*y", 1).pullback(&gamma).unwrap(), ChowClass::from_i64s(&[0, 3]));
    }

    #[test]
    fn pushforward_and_pullback_differ_for_dual() {
        // The pushforward of x - y is diag(1,-1), its pullback diag(-1,1).
        let a = corr("x - y", 1);
        let push = OperatorMatrix::of_operator(1, |b| a.pushforward(b).unwrap());
        let pull = OperatorMatrix::of_operator(1, |b| a.pullback(b).unwrap());
        assert_eq!(push, OperatorMatrix::from_i64s(&[&[1, 0], &[0, -1]]).unwrap());
        assert_eq!(pull, OperatorMatrix::from_i64s(&[&[-1, 0], &[0, 1]]).unwrap());
    }

    #[test]
    fn compose_examples() {
        let a = Correspondence::involutive(3, 2, -1);
        assert_eq!(a.compose(&Correspondence::diagonal(3)).unwrap(), a);
        assert_eq!(corr("x - y", 1).compose(&corr("x - y", 1)).unwrap(), corr("x + y", 1));
        let b = corr("x + x*y - y", 1);
        assert_eq!(b.compose(&b).unwrap(), Correspondence::diagonal(1));
    }

    #[test]
    fn compose_routes_agree() {
        let a = corr("3*x^2 - x*y + 2*y^2 + 5*x^2*y^2 - 1", 2);
        let b = corr("x^2*y - 4*x + y^2 + 7*x*y^2", 2);
        assert_eq!(a.compose(&b).unwrap(), a.compose_by_intersection(&b).unwrap());
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(Correspondence::diagonal(4).to_matrix(), OperatorMatrix::identity(4));
        assert_eq!(
            Correspondence::from_matrix(&OperatorMatrix::identity(4)).unwrap(),
            Correspondence::diagonal(4)
        );
        assert_eq!(corr("x - y", 1).to_matrix(), OperatorMatrix::from_i64s(&[&[1, 0], &[0, -1]]).unwrap());
        assert_eq!(
            corr("x + x*y - y", 1).to_matrix(),
            OperatorMatrix::from_i64s(&[&[1, 0], &[1, -1]]).unwrap()
        );
        assert!(Correspondence::from_matrix(&OperatorMatrix::identity(0)).is_err());
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(Correspondence::diagonal(1).to_string(), "x + y");
        assert_eq!(Correspondence::diagonal(2).to_string(), "x^2 + x*y + y^2");
    }

    #[test]
    fn text_form() {
        assert_eq!(corr("x + x*y - y", 1).to_string(), "x + x*y - y");
        assert_eq!(corr("-y+x", 1).to_string(), "x - y");
        assert_eq!(corr("3*x^2*y - 1 + 2 y", 2).to_string(), "3*x^2*y - 1 + 2*y");
        assert_eq!(Correspondence::zero(2).to_string(), "0");
        assert_eq!(Correspondence::parse("0", None).unwrap(), Correspondence::zero(1));
        assert_eq!(Correspondence::parse("x^3", None).unwrap().ambient_dim(), 3);
        for bad in ["", "x^", "z", "x + ", "x^2", "2**x"] {
            assert!(Correspondence::parse(bad, Some(1)).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn json_form() {
        let a = corr("x + x*y - y", 1);
        assert_eq!(a.to_json(), r#"{"ambient": 1, "grid": [[0, -1], [1, 1]]}"#);
        assert_eq!(Correspondence::from_json(&a.to_json()).unwrap(), a);
        assert!(Correspondence::from_json(r#"{"ambient": 2, "grid": [[0, -1], [1, 1]]}"#).is_err());
        assert!(Correspondence::from_json(r#"{"ambient": 1, "grid": [[0, -1], [1]]}"#).is_err());
        assert!(Correspondence::from_json(r#"{"ambient": 1, "grid": [[0, -1], [1, 1]], "x": 0}"#).is_err());
    }
}
