//! Characteristic classes of a degree-`d` hypersurface `X` in `P^N`, computed
//! from the Segre class `s(X_s, P^N)` of its singular scheme.
//!
//! Every class is stored as its pushforward to `A_*P^N`. The Segre class is
//! an input: either one of the closed-form models (smooth, reduced points,
//! a linear subspace) or an explicit coefficient vector.
//!
//! With `O(X) = O(d)`:
//!
//! * Fulton class `c_F = c(TP^N) / c(O(X)) . [X]`
//! * CSM class `c_SM = c(TP^N) / c(O(X)) . ([X] + s^dual (x) O(X))`
//! * Milnor class `M = c_SM - c_F = c(TP^N) / c(O(X)) . (s^dual (x) O(X))`
//! * `alpha_X(n) = c(T*P^N (x) O(X)) c(O(X))^{n+1-N} . s`, so that
//!   `M = i_{n,O(X)}(alpha_X(n))` for every `n`
//! * Le class `alpha_X(N)`, mu-class `alpha_X(N-1)`, Aluffi class `c(O(X)) . M`
//! * `nu_X(n) = c(T*P^N (x) O(X)) c(O(X))^{n-N} . (-[X])`, with
//!   `c_SM = i_{n,O(X)}(nu_X(n) + alpha_X(n))`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::binomial::{generalized_binomial, int_pow};
use crate::bundles::VirtualBundle;
use crate::chowring::{json_integer, ChowClass, LineBundle};
use crate::error::{Error, Result};

/// How the Segre class of the singular scheme is supplied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularScheme {
    Smooth,
    /// `count` reduced points.
    Points(u64),
    /// A reduced linear subspace `P^k`.
    Linear(usize),
    /// Codimension-indexed coefficients `[s0, ..., sN]`, `s0 = 0`.
    Explicit(Vec<BigInt>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelTag {
    Smooth,
    Points,
    Linear,
    Explicit,
}

impl ModelTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelTag::Smooth => "smooth",
            ModelTag::Points => "points",
            ModelTag::Linear => "linear",
            ModelTag::Explicit => "explicit",
        }
    }
}

/// Sign used in the dimension-by-dimension Milnor/Le formulas.
///
/// `Derived` uses `(-1)^{N-k-j}`, which agrees with `i_{N,O(X)}` exchanging
/// the Milnor and Le classes. `Paper` uses the literature's `(-1)^{j+k}` and
/// differs from `Derived` by the global factor `(-1)^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    Derived,
    Paper,
}

impl std::str::FromStr for SignConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "derived" => Ok(SignConvention::Derived),
            "paper" => Ok(SignConvention::Paper),
            other => Err(Error::Parse(format!("unknown sign convention `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    ambient_dim: usize,
    degree: i64,
    segre_singular: ChowClass,
    tag: ModelTag,
}

impl Hypersurface {
    pub fn from_model(ambient_dim: usize, degree: i64, model: SingularScheme) -> Result<Self> {
        if ambient_dim < 1 {
            return Err(Error::InvalidModel("a hypersurface needs ambient dimension N >= 1".into()));
        }
        if degree < 1 {
            return Err(Error::InvalidModel(format!("degree must be at least 1, got {degree}")));
        }
        let n = ambient_dim;
        let (segre, tag) = match model {
            SingularScheme::Smooth => (ChowClass::zero(n), ModelTag::Smooth),
            SingularScheme::Points(0) => {
                return Err(Error::InvalidModel("points model needs count >= 1".into()))
            }
            SingularScheme::Points(r) => {
                (ChowClass::monomial(n, n, BigInt::from(r)), ModelTag::Points)
            }
            SingularScheme::Linear(k) if k >= n => {
                return Err(Error::InvalidModel(format!(
                    "linear singular locus P^{k} must have 0 <= k <= {}",
                    n - 1
                )))
            }
            SingularScheme::Linear(k) => {
                // s(P^k, P^N) = c(O(1)^{N-k})^{-1} . [P^k]
                let codim = n - k;
                let normal_inv = LineBundle::new(1).chern_power(n, -(codim as i64));
                (&normal_inv * &ChowClass::hyperplane_power(n, codim), ModelTag::Linear)
            }
            SingularScheme::Explicit(coeffs) => {
                if coeffs.len() != n + 1 {
                    return Err(Error::InvalidModel(format!(
                        "explicit segre class needs {} coefficients, got {}",
                        n + 1,
                        coeffs.len()
                    )));
                }
                if !coeffs[0].is_zero() {
                    return Err(Error::InvalidModel(
                        "explicit segre class must have zero codimension-0 entry".into(),
                    ));
                }
                (ChowClass::new(coeffs), ModelTag::Explicit)
            }
        };
        Ok(Hypersurface { ambient_dim, degree, segre_singular: segre, tag })
    }

    /// Parses the hypersurface JSON document
    /// `{"ambient": N, "degree": d, "singular": {"model": ...}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: HypersurfaceJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let model = match raw.singular {
            SingularJson::Smooth => SingularScheme::Smooth,
            SingularJson::Points { count } => SingularScheme::Points(count),
            SingularJson::Linear { dim } => SingularScheme::Linear(dim),
            SingularJson::Explicit { segre } => SingularScheme::Explicit(
                segre
                    .iter()
                    .enumerate()
                    .map(|(i, v)| json_integer(v).map_err(|e| Error::Parse(format!("singular.segre[{i}]: {e}"))))
                    .collect::<Result<_>>()?,
            ),
        };
        Self::from_model(raw.ambient, raw.degree, model)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn tag(&self) -> ModelTag {
        self.tag
    }

    pub fn segre_singular(&self) -> &ChowClass {
        &self.segre_singular
    }

    /// `O(X) = O(d)`.
    pub fn line_bundle(&self) -> LineBundle {
        LineBundle::new(self.degree)
    }

    /// `[X] = dH`.
    pub fn fundamental_class(&self) -> ChowClass {
        self.line_bundle().first_chern(self.ambient_dim)
    }

    // c(TP^N) / c(O(X))
    fn tangent_over_normal(&self) -> ChowClass {
        let n = self.ambient_dim;
        &VirtualBundle::tangent(n).chern_total() * &self.line_bundle().chern_power(n, -1)
    }

    // c(T*P^N (x) O(X))
    fn twisted_cotangent(&self) -> ChowClass {
        VirtualBundle::cotangent(self.ambient_dim).tensor_line(self.line_bundle()).chern_total()
    }

    // s^dual (x) O(X)
    fn twisted_dual_segre(&self) -> ChowClass {
        self.segre_singular.dual().tensor_line(self.line_bundle())
    }

    pub fn fulton(&self) -> ChowClass {
        &self.tangent_over_normal() * &self.fundamental_class()
    }

    pub fn csm(&self) -> ChowClass {
        &self.tangent_over_normal() * &(&self.fundamental_class() + &self.twisted_dual_segre())
    }

    pub fn milnor(&self) -> ChowClass {
        &self.tangent_over_normal() * &self.twisted_dual_segre()
    }

    /// `c(O(X)) c(T*P^N (x) O(X)) . s`.
    pub fn le_class(&self) -> ChowClass {
        let l = self.line_bundle().chern_power(self.ambient_dim, 1);
        &(&l * &self.twisted_cotangent()) * &self.segre_singular
    }

    /// `c(T*P^N (x) O(X)) . s`.
    pub fn mu_class(&self) -> ChowClass {
        &self.twisted_cotangent() * &self.segre_singular
    }

    pub fn alpha(&self, n: i64) -> ChowClass {
        let exp = n + 1 - self.ambient_dim as i64;
        let l = self.line_bundle().chern_power(self.ambient_dim, exp);
        &(&self.twisted_cotangent() * &l) * &self.segre_singular
    }

    pub fn nu(&self, n: i64) -> ChowClass {
        let exp = n - self.ambient_dim as i64;
        let l = self.line_bundle().chern_power(self.ambient_dim, exp);
        &(&self.twisted_cotangent() * &l) * &(-self.fundamental_class())
    }

    /// `c(O(X)) . M(X)`.
    pub fn aluffi_class(&self) -> ChowClass {
        &self.line_bundle().chern_power(self.ambient_dim, 1) * &self.milnor()
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.csm().degree()
    }

    pub fn aluffi_degree(&self) -> BigInt {
        self.aluffi_class().degree()
    }

    /// Milnor class assembled component-wise from the Le class.
    pub fn milnor_components_from_le(&self, convention: SignConvention) -> ChowClass {
        component_transform(&self.le_class(), self.degree, convention)
    }

    /// Le class assembled component-wise from the Milnor class.
    pub fn le_components_from_milnor(&self, convention: SignConvention) -> ChowClass {
        component_transform(&self.milnor(), self.degree, convention)
    }
}

/// Dimension-`k` component `sum_j sign * C(j+k, j) (dH)^j . src_{j+k}`, summed
/// over all `j` with `j + k <= N`.
///
/// With [`SignConvention::Derived`] the sign is `(-1)^{N-k-j}` and the map is
/// `i_{N,O(d)}` written out; it sends the Le class to the Milnor class and back.
///
/// The literature states the sum bound with `d` the dimension of the singular
/// locus, and elsewhere with `d = dim X`; here the index is always `N = dim P^N`,
/// the only choice under which Le `= alpha_X(d)`. Terms beyond the singular
/// locus vanish anyway, so the bound only matters through the sign.
pub fn component_transform(src: &ChowClass, degree: i64, convention: SignConvention) -> ChowClass {
    let n = src.ambient_dim();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for k in 0..=n {
        let mut acc = BigInt::zero();
        for j in 0..=(n - k) {
            let term = src.dim_coeff(j + k);
            if term.is_zero() {
                continue;
            }
            let exponent = match convention {
                SignConvention::Derived => n - k - j,
                SignConvention::Paper => j + k,
            };
            let sign = if exponent % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            acc += sign
                * generalized_binomial((j + k) as i64, j as i64)
                * int_pow(degree, j as u32)
                * term;
        }
        coeffs[n - k] = acc;
    }
    ChowClass::new(coeffs)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HypersurfaceJson {
    ambient: usize,
    degree: i64,
    singular: SingularJson,
}

#[derive(Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
enum SingularJson {
    Smooth,
    Points { count: u64 },
    Linear { dim: usize },
    Explicit { segre: Vec<serde_json::Value> },
}

/// Nodal plane cubic: one ordinary double point.
pub fn nodal_cubic() -> Hypersurface {
    Hypersurface::from_model(2, 3, SingularScheme::Points(1)).expect("valid model")
}

/// Two planes in `P^3` meeting along a line.
pub fn two_planes() -> Hypersurface {
    Hypersurface::from_model(3, 2, SingularScheme::Linear(1)).expect("valid model")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64]) -> ChowClass {
        ChowClass::from_i64s(v)
    }

    fn smooth(n: usize, d: i64) -> Hypersurface {
        Hypersurface::from_model(n, d, SingularScheme::Smooth).unwrap()
    }

    #[test]
    fn closed_form_segre_models() {
        assert_eq!(nodal_cubic().segre_singular(), &c(&[0, 0, 1]));
        assert_eq!(two_planes().segre_singular(), &c(&[0, 0, 1, -2]));
        assert!(smooth(4, 3).segre_singular().is_zero());
        let pts = Hypersurface::from_model(3, 4, SingularScheme::Points(5)).unwrap();
        assert_eq!(pts.segre_singular(), &c(&[0, 0, 0, 5]));
    }

    #[test]
    fn model_validation() {
        let bad = [
            (2, 3, SingularScheme::Linear(2)),
            (2, 3, SingularScheme::Points(0)),
            (2, 0, SingularScheme::Smooth),
            (0, 1, SingularScheme::Smooth),
            (2, 3, SingularScheme::Explicit(vec![1.into(), 0.into(), 0.into()])),
            (2, 3, SingularScheme::Explicit(vec![0.into(), 0.into()])),
        ];
        for (n, d, m) in bad {
            assert!(Hypersurface::from_model(n, d, m.clone()).is_err(), "{n} {d} {m:?}");
        }
    }

    #[test]
    fn fulton_examples() {
        assert_eq!(nodal_cubic().fulton(), c(&[0, 3, 0]));
        assert_eq!(two_planes().fulton(), c(&[0, 2, 4, 4]));
        assert_eq!(smooth(2, 1).fulton(), c(&[0, 1, 2]));
    }

    #[test]
    fn csm_examples() {
        assert_eq!(nodal_cubic().csm(), c(&[0, 3, 1]));
        assert_eq!(two_planes().csm(), c(&[0, 2, 5, 4]));
        assert_eq!(smooth(2, 2).csm(), c(&[0, 2, 2]));
        assert_eq!(nodal_cubic().euler_characteristic(), BigInt::from(1));
        assert_eq!(two_planes().euler_characteristic(), BigInt::from(4));
    }

    #[test]
    fn milnor_le_mu_aluffi_examples() {
        let x = nodal_cubic();
        assert_eq!(x.milnor(), c(&[0, 0, 1]));
        assert_eq!(x.le_class(), c(&[0, 0, 1]));
        assert_eq!(x.mu_class(), c(&[0, 0, 1]));
        assert_eq!(x.aluffi_class(), c(&[0, 0, 1]));

        let y = two_planes();
        assert_eq!(y.milnor(), c(&[0, 0, 1, 0]));
        assert_eq!(y.le_class(), c(&[0, 0, 1, 2]));
        assert_eq!(y.mu_class(), c(&[0, 0, 1, 0]));
        assert_eq!(y.aluffi_class(), c(&[0, 0, 1, 2]));

        let z = smooth(3, 4);
        for class in [z.milnor(), z.le_class(), z.mu_class(), z.aluffi_class()] {
            assert!(class.is_zero());
        }
    }

    #[test]
    fn alpha_examples() {
        let y = two_planes();
        assert_eq!(y.alpha(3), c(&[0, 0, 1, 2]));
        assert_eq!(y.alpha(2), c(&[0, 0, 1, 0]));
        for n in -4..=6 {
            assert!(smooth(3, 2).alpha(n).is_zero());
        }
    }

    #[test]
    fn nu_examples() {
        let line = smooth(2, 1);
        assert_eq!(line.nu(2), c(&[0, -1, 1]));
        assert_eq!(c(&[0, -1, 1]).involution(2, LineBundle::new(1)), line.fulton());

        // (1+2H)^3 / (1+3H) . (-3H) = -3H - 9H^2 on P^2
        let cubic = nodal_cubic();
        assert_eq!(cubic.nu(2), c(&[0, -3, -9]));
        assert_eq!(cubic.nu(2).involution(2, LineBundle::new(3)), cubic.fulton());

        let a = Hypersurface::from_model(4, 3, SingularScheme::Points(2)).unwrap();
        let b = Hypersurface::from_model(4, 3, SingularScheme::Linear(2)).unwrap();
        for n in -3..=5 {
            assert_eq!(a.nu(n), b.nu(n));
        }
    }

    #[test]
    fn component_formula_examples() {
        let y = two_planes();
        assert_eq!(y.milnor_components_from_le(SignConvention::Derived), y.milnor());
        assert_eq!(y.le_components_from_milnor(SignConvention::Derived), y.le_class());
        let x = nodal_cubic();
        assert_eq!(x.milnor_components_from_le(SignConvention::Derived), c(&[0, 0, 1]));
        // N = 3: printed sign differs by (-1)^3
        assert_eq!(y.milnor_components_from_le(SignConvention::Paper), -y.milnor());
        assert_eq!(x.milnor_components_from_le(SignConvention::Paper), x.milnor());
        assert!(smooth(3, 2).milnor_components_from_le(SignConvention::Derived).is_zero());
    }

    #[test]
    fn component_formula_is_involution_n() {
        let src = c(&[0, 4, -2, 7, 1]);
        for d in 1..=4 {
            assert_eq!(
                component_transform(&src, d, SignConvention::Derived),
                src.involution(4, LineBundle::new(d))
            );
        }
    }

    #[test]
    fn smooth_plane_curve_euler_characteristic() {
        for d in 1..=6i64 {
            let genus = (d - 1) * (d - 2) / 2;
            assert_eq!(smooth(2, d).euler_characteristic(), BigInt::from(2 - 2 * genus));
        }
    }

    #[test]
    fn json_schema() {
        let x = Hypersurface::from_json(r#"{"ambient": 2, "degree": 3, "singular": {"model": "points", "count": 1}}"#)
            .unwrap();
        assert_eq!(x, nodal_cubic());
        let y = Hypersurface::from_json(r#"{"ambient": 3, "degree": 2, "singular": {"model": "linear", "dim": 1}}"#)
            .unwrap();
        assert_eq!(y, two_planes());
        let e = Hypersurface::from_json(
            r#"{"ambient": 3, "degree": 2, "singular": {"model": "explicit", "segre": [0, 0, 1, -2]}}"#,
        )
        .unwrap();
        assert_eq!(e.milnor(), y.milnor());
        assert_eq!(e.tag(), ModelTag::Explicit);
        let s = Hypersurface::from_json(r#"{"ambient": 4, "degree": 3, "singular": {"model": "smooth"}}"#).unwrap();
        assert_eq!(s.tag(), ModelTag::Smooth);
    }

    #[test]
    fn json_schema_errors_name_the_problem() {
        let missing = Hypersurface::from_json(r#"{"ambient": 2, "singular": {"model": "smooth"}}"#).unwrap_err();
        assert!(missing.to_string().contains("degree"), "{missing}");
        let bad_model =
            Hypersurface::from_json(r#"{"ambient": 2, "degree": 1, "singular": {"model": "cusp"}}"#).unwrap_err();
        assert!(bad_model.to_string().contains("cusp"), "{bad_model}");
        let bad_entry = Hypersurface::from_json(
            r#"{"ambient": 1, "degree": 1, "singular": {"model": "explicit", "segre": [0, "x"]}}"#,
        )
        .unwrap_err();
        assert!(bad_entry.to_string().contains("segre[1]"), "{bad_entry}");
        let syntax = Hypersurface::from_json("{\n\"ambient\": 2,\n\"degree\": }").unwrap_err();
        assert!(syntax.to_string().contains("line 3"), "{syntax}");
    }
}
