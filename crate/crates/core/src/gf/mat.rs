use alloc::vec;
use alloc::vec::Vec;

use super::{Fe, Field, GfError, Poly};

/// Dense square or rectangular matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    d: Vec<Fe>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            d: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.d[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.d[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.d[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map(&self, g: impl Fn(Fe) -> Fe) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            d: self.d.iter().map(|&x| g(x)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn add(&self, f: &Field, o: &Mat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            d: self
                .d
                .iter()
                .zip(&o.d)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Field, a: Fe) -> Mat {
        self.map(|x| f.mul(x, a))
    }

    /// `a * self + b * o`.
    pub fn combine(&self, f: &Field, a: Fe, o: &Mat, b: Fe) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            d: self
                .d
                .iter()
                .zip(&o.d)
                .map(|(&x, &y)| f.add(f.mul(a, x), f.mul(b, y)))
                .collect(),
        }
    }

    pub fn mul(&self, f: &Field, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = f.add(out.get(i, j), f.mul(a, o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// `v^T self w`.
    pub fn bilinear(&self, f: &Field, v: &[Fe], w: &[Fe]) -> Fe {
        let mw = self.mul_vec(f, w);
        v.iter()
            .zip(&mw)
            .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// Row echelon form in place; returns pivot columns.
    pub(crate) fn echelon(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.d.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().echelon(f).len()
    }

    pub fn det(&self, f: &Field) -> Fe {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Fe::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Fe::ZERO;
            };
            if p != c {
                for j in 0..n {
                    a.d.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = a.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("pivot is nonzero");
            for i in c + 1..n {
                let factor = f.mul(a.get(i, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(a.get(i, j), f.mul(factor, a.get(c, j)));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &Field) -> Result<Mat, GfError> {
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fe::ONE);
        }
        let piv = aug.echelon(f);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(GfError::Singular);
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Basis of the right kernel `{v : self v = 0}`.
    pub fn kernel(&self, f: &Field) -> Vec<Vec<Fe>> {
        let mut a = self.clone();
        let piv = a.echelon(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[fc] = Fe::ONE;
                for (r, &pc) in piv.iter().enumerate() {
                    v[pc] = f.neg(a.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(T I - self)` (Berkowitz, division free).
    pub fn charpoly(&self, f: &Field) -> Poly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // Coefficient vectors are highest degree first.
        let mut v: Vec<Fe> = vec![Fe::ONE];
        for r in 0..n {
            // Leading principal submatrix of size r+1; partition on the last index.
            let a = self.get(r, r);
            let col: Vec<Fe> = (0..r).map(|i| self.get(i, r)).collect();
            let row: Vec<Fe> = (0..r).map(|j| self.get(r, j)).collect();
            // t_k = row * A_r^k * col for k = 0..r-1.
            let mut t = vec![Fe::ONE, f.neg(a)];
            let mut cur = col.clone();
            for _ in 0..r {
                let val = row
                    .iter()
                    .zip(&cur)
                    .fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                t.push(f.neg(val));
                let mut next = vec![Fe::ZERO; r];
                for (i, nx) in next.iter_mut().enumerate() {
                    for (j, &cj) in cur.iter().enumerate() {
                        *nx = f.add(*nx, f.mul(self.get(i, j), cj));
                    }
                }
                cur = next;
            }
            // New polynomial = Toeplitz(t) * v.
            let mut nv = vec![Fe::ZERO; r + 2];
            for (i, out) in nv.iter_mut().enumerate() {
                for (j, &vj) in v.iter().enumerate() {
                    if i >= j && i - j < t.len() {
                        *out = f.add(*out, f.mul(t[i - j], vj));
                    }
                }
            }
            v = nv;
        }
        v.reverse();
        Poly::new(v)
    }

    /// Evaluate a polynomial at this matrix.
    pub fn eval_poly(&self, f: &Field, p: &Poly) -> Mat {
        let n = self.rows;
        let mut acc = Mat::zeros(n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(f, self);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }
}

/// Symmetric Gaussian reduction of a symmetric matrix in odd characteristic.
///
/// Returns the rank and the product of the nonzero diagonal entries of a
/// diagonal form congruent to `m`.
pub fn diagonalize(f: &Field, m: &Mat) -> (usize, Fe) {
    let n = m.rows();
    let mut a = m.clone();
    let mut prod = Fe::ONE;
    let mut rank = 0;
    let swap = |a: &mut Mat, i: usize, j: usize| {
        if i == j {
            return;
        }
        for k in 0..n {
            let (x, y) = (a.get(i, k), a.get(j, k));
            a.set(i, k, y);
            a.set(j, k, x);
        }
        for k in 0..n {
            let (x, y) = (a.get(k, i), a.get(k, j));
            a.set(k, i, y);
            a.set(k, j, x);
        }
    };
    for k in 0..n {
        if let Some(p) = (k..n).find(|&i| !a.get(i, i).is_zero()) {
            swap(&mut a, k, p);
        } else {
            let found =
                (k..n).find_map(|i| (i + 1..n).find(|&j| !a.get(i, j).is_zero()).map(|j| (i, j)));
            let Some((i, j)) = found else { break };
            // x_i -> x_i + x_j makes the diagonal entry 2 a_ij != 0.
            for c in 0..n {
                let v = f.add(a.get(i, c), a.get(j, c));
                a.set(i, c, v);
            }
            for r in 0..n {
                let v = f.add(a.get(r, i), a.get(r, j));
                a.set(r, i, v);
            }
            swap(&mut a, k, i);
        }
        let piv = a.get(k, k);
        let inv = f.inv(piv).expect("pivot is nonzero");
        for i in k + 1..n {
            let factor = f.mul(a.get(i, k), inv);
            if factor.is_zero() {
                continue;
            }
            for c in k..n {
                let v = f.sub(a.get(i, c), f.mul(factor, a.get(k, c)));
                a.set(i, c, v);
            }
            for r in k..n {
                let v = f.sub(a.get(r, i), f.mul(factor, a.get(r, k)));
                a.set(r, i, v);
            }
        }
        prod = f.mul(prod, piv);
        rank += 1;
    }
    (rank, prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(f: &Field, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn charpoly_companion() {
        let f = Field::new(7, 1).unwrap();
        // Companion matrix of T^3 - 2T - 5.
        let m = mat(&f, &[&[0, 0, 5], &[1, 0, 2], &[0, 1, 0]]);
        let cp = m.charpoly(&f);
        let expect = Poly::new([-5, -2, 0, 1].iter().map(|&c| f.from_int(c)).collect());
        assert_eq!(cp, expect);
        assert!(m.eval_poly(&f, &cp).d.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let f = Field::new(5, 1).unwrap();
        let h = mat(&f, &[&[0, 1], &[1, 0]]);
        let (r, d) = diagonalize(&f, &h);
        assert_eq!(r, 2);
        // Discriminant of a hyperbolic plane is -1.
        assert_eq!(f.chi(d), f.chi(f.from_int(-1)));
    }

    proptest! {
        #[test]
        fn diagonal_product_matches_determinant(entries in proptest::collection::vec(0i64..11, 15)) {
            let f = Field::new(11, 1).unwrap();
            let mut m = Mat::zeros(5, 5);
            let mut it = entries.iter();
            for i in 0..5 {
                for j in i..5 {
                    let x = f.from_int(*it.next().unwrap());
                    m.set(i, j, x);
                    m.set(j, i, x);
                }
            }
            let (r, d) = diagonalize(&f, &m);
            prop_assert_eq!(r, m.rank(&f));
            if r == 5 {
                prop_assert_eq!(f.chi(d), f.chi(m.det(&f)));
            }
        }

        #[test]
        fn charpoly_matches_det(entries in proptest::collection::vec(0i64..5, 16), x in 0i64..5) {
            let f = Field::new(5, 1).unwrap();
            let rows: Vec<Vec<Fe>> = entries.chunks(4).map(|c| c.iter().map(|&v| f.from_int(v)).collect()).collect();
            let m = Mat::from_rows(rows);
            let t = f.from_int(x);
            let mut shifted = m.scale(&f, f.from_int(-1));
            for i in 0..4 {
                let v = f.add(shifted.get(i, i), t);
                shifted.set(i, i, v);
            }
            prop_assert_eq!(m.charpoly(&f).eval(&f, t), shifted.det(&f));
        }
    }
}
