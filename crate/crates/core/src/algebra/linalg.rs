//! Small dense linear algebra over exact fields.

use num_traits::{One, Zero};

use super::ratfn::RatFn;
use super::scalar::{PrimeField, Rational};

/// Minimal field interface for elimination. Elements know enough about
/// themselves (variable count, modulus) to produce `0` and `1`.
pub trait FieldElem: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_e(&self, o: &Self) -> Self;
    fn sub_e(&self, o: &Self) -> Self;
    fn mul_e(&self, o: &Self) -> Self;
    /// Caller guarantees `o` is nonzero.
    fn div_e(&self, o: &Self) -> Self;
    fn neg_e(&self) -> Self {
        self.zero_like().sub_e(self)
    }
}

impl FieldElem for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_e(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_e(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_e(&self, o: &Self) -> Self {
        self * o
    }
    fn div_e(&self, o: &Self) -> Self {
        self / o
    }
}

impl FieldElem for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        RatFn::one(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_e(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_e(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_e(&self, o: &Self) -> Self {
        self * o
    }
    fn div_e(&self, o: &Self) -> Self {
        self / o
    }
}

/// Residue together with its field, for generic elimination mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub v: u64,
    pub field: PrimeField,
}

impl FieldElem for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, field: self.field }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, field: self.field }
    }
    fn is_zero_elem(&self) -> bool {
        self.v == 0
    }
    fn add_e(&self, o: &Self) -> Self {
        Fp { v: self.field.add(self.v, o.v), field: self.field }
    }
    fn sub_e(&self, o: &Self) -> Self {
        Fp { v: self.field.sub(self.v, o.v), field: self.field }
    }
    fn mul_e(&self, o: &Self) -> Self {
        Fp { v: self.field.mul(self.v, o.v), field: self.field }
    }
    fn div_e(&self, o: &Self) -> Self {
        let inv = self.field.inv(o.v).expect("division by zero residue");
        Fp { v: self.field.mul(self.v, inv), field: self.field }
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

pub fn identity_like<T: FieldElem>(proto: &T, n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { proto.one_like() } else { proto.zero_like() })
                .collect()
        })
        .collect()
}

pub fn mat_mul<T: FieldElem>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = a[i][0].zero_like();
                    for l in 0..k {
                        if !a[i][l].is_zero_elem() && !b[l][j].is_zero_elem() {
                            acc = acc.add_e(&a[i][l].mul_e(&b[l][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn determinant<T: FieldElem>(a: &Matrix<T>) -> T {
    let n = a.len();
    let mut m = a.clone();
    let mut det = m[0][0].one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero_elem()) else {
            return m[0][0].zero_like();
        };
        if p != c {
            m.swap(p, c);
            det = det.neg_e();
        }
        det = det.mul_e(&m[c][c]);
        for r in c + 1..n {
            if m[r][c].is_zero_elem() {
                continue;
            }
            let f = m[r][c].div_e(&m[c][c]);
            for k in c..n {
                let t = f.mul_e(&m[c][k]);
                m[r][k] = m[r][k].sub_e(&t);
            }
        }
    }
    det
}

pub fn inverse<T: FieldElem>(a: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = identity_like(&a[0][0], n);
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero_elem())?;
        m.swap(p, c);
        inv.swap(p, c);
        let piv = m[c][c].clone();
        for k in 0..n {
            m[c][k] = m[c][k].div_e(&piv);
            inv[c][k] = inv[c][k].div_e(&piv);
        }
        for r in 0..n {
            if r == c || m[r][c].is_zero_elem() {
                continue;
            }
            let f = m[r][c].clone();
            for k in 0..n {
                let t = f.mul_e(&m[c][k]);
                m[r][k] = m[r][k].sub_e(&t);
                let t = f.mul_e(&inv[c][k]);
                inv[r][k] = inv[r][k].sub_e(&t);
            }
        }
    }
    Some(inv)
}

/// Elementary transvection `I + lambda * e_{row,col}` with `row != col`.
#[derive(Clone, Debug, PartialEq)]
pub struct Transvection<T> {
    pub row: usize,
    pub col: usize,
    pub lambda: T,
}

/// Factor an invertible matrix as `T_1 * ... * T_k * diag(d)` with transvections `T_i`.
pub fn transvection_decomposition<T: FieldElem>(
    a: &Matrix<T>,
) -> Option<(Vec<Transvection<T>>, Vec<T>)> {
    let n = a.len();
    let mut m = a.clone();
    // Row operations R_i += c R_j, recorded in application order.
    let mut ops: Vec<Transvection<T>> = Vec::new();
    let apply = |m: &mut Matrix<T>, i: usize, j: usize, c: &T| {
        for k in 0..n {
            let t = c.mul_e(&m[j][k]);
            m[i][k] = m[i][k].add_e(&t);
        }
    };
    for j in 0..n {
        if m[j][j].is_zero_elem() {
            let i = (j + 1..n).find(|&i| !m[i][j].is_zero_elem())?;
            let one = m[i][j].one_like();
            apply(&mut m, j, i, &one);
            ops.push(Transvection { row: j, col: i, lambda: one });
        }
        for i in 0..n {
            if i == j || m[i][j].is_zero_elem() {
                continue;
            }
            let c = m[i][j].div_e(&m[j][j]).neg_e();
            apply(&mut m, i, j, &c);
            ops.push(Transvection { row: i, col: j, lambda: c });
        }
    }
    let diag: Vec<T> = (0..n).map(|i| m[i][i].clone()).collect();
    // E_k ... E_1 A = D  =>  A = E_1^{-1} ... E_k^{-1} D.
    let factors = ops
        .into_iter()
        .map(|t| Transvection {
            row: t.row,
            col: t.col,
            lambda: t.lambda.neg_e(),
        })
        .collect();
    Some((factors, diag))
}

pub fn transvection_matrix<T: FieldElem>(proto: &T, n: usize, t: &Transvection<T>) -> Matrix<T> {
    let mut m = identity_like(proto, n);
    m[t.row][t.col] = t.lambda.clone();
    m
}
