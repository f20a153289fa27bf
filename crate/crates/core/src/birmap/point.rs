use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::linalg::{determinant, mat_mul};
use crate::algebra::scalar::{format_rational, Rational};
use crate::error::{Error, Result};

/// A point of projective space, compared up to a nonzero scalar by
/// [`Point::projectively_eq`]. Derived equality is exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroInput("projective point"));
        }
        Ok(Point { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| crate::algebra::rat(c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Ambient dimension `n` for a point of `P^n`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Scaled so that the first nonzero coordinate is 1.
    pub fn normalized(&self) -> Point {
        let lead = self.coords.iter().find(|c| !c.is_zero()).unwrap().clone();
        Point {
            coords: self.coords.iter().map(|c| c / &lead).collect(),
        }
    }

    pub fn projectively_eq(&self, other: &Point) -> bool {
        self.coords.len() == other.coords.len() && self.normalized() == other.normalized()
    }

    /// Affine coordinates in the chart `x_n = 1`, distinguished coordinate
    /// `x_0` last: `(x1/xn, ..., x_{n-1}/xn, x0/xn)`.
    pub fn to_affine(&self) -> Result<Vec<Rational>> {
        let n = self.dim();
        let w = &self.coords[n];
        if w.is_zero() {
            return Err(Error::NotInChart);
        }
        let mut out: Vec<Rational> = (1..n).map(|i| &self.coords[i] / w).collect();
        out.push(&self.coords[0] / w);
        Ok(out)
    }

    pub fn from_affine(v: &[Rational]) -> Point {
        let n = v.len();
        let mut coords = Vec::with_capacity(n + 1);
        coords.push(v[n - 1].clone());
        coords.extend(v[..n - 1].iter().cloned());
        coords.push(Rational::one());
        Point { coords }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// Invertible square matrix up to scalar: the action on a projectivized tangent space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentAction {
    matrix: Vec<Vec<Rational>>,
}

impl TangentAction {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("tangent action must be square".into()));
        }
        if n > 0 && determinant(&matrix).is_zero() {
            return Err(Error::NotLocalIsomorphism);
        }
        Ok(TangentAction { matrix })
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    /// Scalar matrices act trivially on the projectivized tangent space.
    pub fn is_scalar(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    self.matrix[i][i] == self.matrix[0][0]
                } else {
                    self.matrix[i][j].is_zero()
                }
            })
        })
    }

    pub fn compose(&self, other: &TangentAction) -> TangentAction {
        TangentAction {
            matrix: mat_mul(&self.matrix, &other.matrix),
        }
    }

    fn normalized(&self) -> Vec<Vec<Rational>> {
        let lead = self
            .matrix
            .iter()
            .flatten()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or_else(Rational::one);
        self.matrix
            .iter()
            .map(|r| r.iter().map(|c| c / &lead).collect())
            .collect()
    }

    pub fn projectively_eq(&self, other: &TangentAction) -> bool {
        self.size() == other.size() && self.normalized() == other.normalized()
    }
}

impl fmt::Display for TangentAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(format_rational).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
