//! Split virtual bundles on `P^N`: formal sums `sum mu_i [O(a_i)]` in the
//! Grothendieck group, with possibly negative multiplicities and rank.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chowring::{chern_power, ChowClass, LineBundle};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VirtualBundle {
    ambient_dim: usize,
    // twist -> multiplicity, never zero
    roots: BTreeMap<i64, i64>,
}

#[derive(Serialize, Deserialize)]
struct BundleJson {
    roots: Vec<(i64, i64)>,
}

impl VirtualBundle {
    /// Merges repeated twists and drops zero multiplicities.
    pub fn new(ambient_dim: usize, roots: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut merged = BTreeMap::new();
        for (twist, mult) in roots {
            *merged.entry(twist).or_insert(0) += mult;
        }
        merged.retain(|_, m| *m != 0);
        VirtualBundle { ambient_dim, roots: merged }
    }

    pub fn trivial(ambient_dim: usize) -> Self {
        Self::new(ambient_dim, [])
    }

    pub fn line(ambient_dim: usize, line: LineBundle) -> Self {
        Self::new(ambient_dim, [(line.twist, 1)])
    }

    /// `TP^N = O(1)^{N+1} - O`, from the Euler sequence.
    pub fn tangent(ambient_dim: usize) -> Self {
        Self::new(ambient_dim, [(1, ambient_dim as i64 + 1), (0, -1)])
    }

    pub fn cotangent(ambient_dim: usize) -> Self {
        Self::tangent(ambient_dim).dual()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// `(twist, multiplicity)` pairs sorted by twist.
    pub fn roots(&self) -> Vec<(i64, i64)> {
        self.roots.iter().map(|(&t, &m)| (t, m)).collect()
    }

    pub fn rank(&self) -> i64 {
        self.roots.values().sum()
    }

    /// `c(E) = prod (1 + a_i H)^{mu_i}`.
    pub fn chern_total(&self) -> ChowClass {
        let n = self.ambient_dim;
        self.roots.iter().fold(ChowClass::one(n), |acc, (&twist, &mult)| {
            &acc * &chern_power(n, LineBundle::new(twist), mult)
        })
    }

    pub fn dual(&self) -> VirtualBundle {
        Self::new(self.ambient_dim, self.roots.iter().map(|(&t, &m)| (-t, m)))
    }

    pub fn tensor_line(&self, line: LineBundle) -> VirtualBundle {
        Self::new(self.ambient_dim, self.roots.iter().map(|(&t, &m)| (t + line.twist, m)))
    }

    /// Formal sum `E + F`.
    pub fn direct_sum(&self, other: &VirtualBundle) -> Result<VirtualBundle> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { left: self.ambient_dim, right: other.ambient_dim });
        }
        Ok(Self::new(self.ambient_dim, self.roots().into_iter().chain(other.roots())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&BundleJson { roots: self.roots() }).expect("bundle serializes")
    }

    pub fn from_json(ambient_dim: usize, text: &str) -> Result<Self> {
        let raw: BundleJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bundle: {e}")))?;
        Ok(Self::new(ambient_dim, raw.roots))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64]) -> ChowClass {
        ChowClass::from_i64s(v)
    }

    #[test]
    fn chern_total_examples() {
        assert_eq!(VirtualBundle::tangent(2).chern_total(), c(&[1, 3, 3]));
        let twisted_cotangent = VirtualBundle::cotangent(3).tensor_line(LineBundle::new(2));
        assert_eq!(twisted_cotangent.roots(), vec![(1, 4), (2, -1)]);
        assert_eq!(twisted_cotangent.chern_total(), c(&[1, 2, 2, 0]));
        assert_eq!(VirtualBundle::trivial(4).chern_total(), ChowClass::one(4));
    }

    #[test]
    fn twisted_cotangent_by_hand_division() {
        // (1+H)^4 = 1+4H+6H^2+4H^3, divided by 1+2H: long division
        let num = c(&[1, 4, 6, 4]);
        let den_inv = c(&[1, 2, 0, 0]).unit_inverse().unwrap();
        assert_eq!(&num * &den_inv, c(&[1, 2, 2, 0]));
    }

    #[test]
    fn dual_bundle_examples() {
        assert_eq!(VirtualBundle::tangent(3).dual().roots(), vec![(-1, 4), (0, -1)]);
        assert_eq!(VirtualBundle::new(2, [(2, 1)]).dual().roots(), vec![(-2, 1)]);
        let e = VirtualBundle::new(3, [(1, 2), (-3, -1), (0, 5)]);
        assert_eq!(e.dual().dual(), e);
        assert_eq!(e.dual().chern_total(), e.chern_total().dual());
    }

    #[test]
    fn tensor_by_line_examples() {
        let e = VirtualBundle::new(3, [(-1, 4), (0, -1)]);
        assert_eq!(e.tensor_line(LineBundle::new(2)).roots(), vec![(1, 4), (2, -1)]);
        assert_eq!(e.tensor_line(LineBundle::TRIVIAL), e);
        assert_eq!(VirtualBundle::new(2, [(1, 2)]).tensor_line(LineBundle::new(-1)).roots(), vec![(0, 2)]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(VirtualBundle::tangent(5).rank(), 5);
        assert_eq!(VirtualBundle::new(3, [(1, 4), (2, -1)]).rank(), 3);
        assert_eq!(VirtualBundle::trivial(2).rank(), 0);
    }

    #[test]
    fn normalization_merges_and_drops() {
        let e = VirtualBundle::new(2, [(3, 1), (1, 2), (3, -1), (1, 1), (0, 0)]);
        assert_eq!(e.roots(), vec![(1, 3)]);
    }

    #[test]
    fn json_form_normalizes_on_ingest() {
        let e = VirtualBundle::from_json(3, r#"{"roots": [[2, 1], [-1, 4], [2, -2], [5, 0]]}"#).unwrap();
        assert_eq!(e.roots(), vec![(-1, 4), (2, -1)]);
        assert_eq!(e.to_json(), r#"{"roots":[[-1,4],[2,-1]]}"#);
        assert_eq!(VirtualBundle::from_json(3, &e.to_json()).unwrap(), e);
        assert!(VirtualBundle::from_json(3, r#"{"roots": [[1]]}"#).is_err());
    }

    #[test]
    fn direct_sum_multiplicative() {
        let e = VirtualBundle::new(4, [(1, 2), (-2, -1)]);
        let f = VirtualBundle::new(4, [(1, -1), (3, 2)]);
        let sum = e.direct_sum(&f).unwrap();
        assert_eq!(sum.chern_total(), &e.chern_total() * &f.chern_total());
        assert!(e.direct_sum(&VirtualBundle::trivial(2)).is_err());
    }
}
