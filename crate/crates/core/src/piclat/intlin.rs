//! Small exact integer and rational linear algebra.

use alloc::vec;
use alloc::vec::Vec;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exact rational number with `i128` parts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Q {
    n: i128,
    d: i128,
}

impl Q {
    pub fn int(n: i128) -> Q {
        Q { n, d: 1 }
    }
    fn norm(n: i128, d: i128) -> Q {
        let g = gcd(n, d).max(1);
        let s = if d < 0 { -1 } else { 1 };
        Q {
            n: s * n / g,
            d: s * d / g,
        }
    }
    pub fn is_zero(self) -> bool {
        self.n == 0
    }
    pub fn add(self, o: Q) -> Q {
        Q::norm(self.n * o.d + o.n * self.d, self.d * o.d)
    }
    pub fn sub(self, o: Q) -> Q {
        Q::norm(self.n * o.d - o.n * self.d, self.d * o.d)
    }
    pub fn mul(self, o: Q) -> Q {
        Q::norm(self.n * o.n, self.d * o.d)
    }
    pub fn div(self, o: Q) -> Q {
        Q::norm(self.n * o.d, self.d * o.n)
    }
    pub fn as_int(self) -> Option<i128> {
        (self.d == 1).then_some(self.n)
    }
}

/// Reduced row echelon form over `Q`; returns pivot columns.
pub(crate) fn rref(a: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let piv = a[r][c];
        for x in a[r].iter_mut() {
            *x = x.div(piv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..cols {
                    let v = a[i][j].sub(f.mul(a[r][j]));
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over `Q` of integer vectors.
pub(crate) fn rank(vectors: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<Q>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| Q::int(x as i128)).collect())
        .collect();
    rref(&mut a).len()
}

/// A `Q`-basis of `{x : A x = 0}`, scaled to primitive integer vectors.
pub(crate) fn kernel(a: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .map(|v| v.iter().map(|&x| Q::int(x as i128)).collect())
        .collect();
    let piv = if m.is_empty() {
        Vec::new()
    } else {
        rref(&mut m)
    };
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Q::int(0); cols];
            v[fc] = Q::int(1);
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = Q::int(0).sub(m[r][fc]);
            }
            let l = v.iter().fold(1i128, |acc, x| acc / gcd(acc, x.d) * x.d);
            let ints: Vec<i128> = v.iter().map(|x| x.n * (l / x.d)).collect();
            let g = ints.iter().fold(0i128, |acc, &x| gcd(acc, x)).max(1);
            ints.iter().map(|&x| (x / g) as i64).collect()
        })
        .collect()
}

/// Solve `B c = v` for `c` over `Q`, where the columns of `B` are `basis`.
pub(crate) fn solve(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<Q>> {
    let n = v.len();
    let k = basis.len();
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = basis.iter().map(|b| Q::int(b[i] as i128)).collect();
            row.push(Q::int(v[i] as i128));
            row
        })
        .collect();
    let piv = rref(&mut m);
    if piv.contains(&k) {
        return None;
    }
    let mut c = vec![Q::int(0); k];
    for (r, &pc) in piv.iter().enumerate() {
        c[pc] = m[r][k];
    }
    Some(c)
}

/// Characteristic polynomial `det(T - A)` of an integer matrix over `Q`
/// (Faddeev-LeVerrier); coefficients lowest degree first.
pub(crate) fn charpoly(a: &[Vec<Q>]) -> Vec<Q> {
    let n = a.len();
    let mut c = vec![Q::int(0); n + 1];
    c[n] = Q::int(1);
    let mut m = vec![vec![Q::int(0); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Q::int(0); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::int(0);
                for l in 0..n {
                    s = s.add(a[i][l].mul(m[l][j]));
                }
                if i == j {
                    s = s.add(c[n - k + 1]);
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = Q::int(0);
        for i in 0..n {
            for l in 0..n {
                tr = tr.add(a[i][l].mul(m[l][i]));
            }
        }
        c[n - k] = Q::int(0).sub(tr.div(Q::int(k as i128)));
    }
    c
}

/// Smith normal form diagonal of an integer matrix (nonzero entries only).
pub(crate) fn smith_diagonal(a: &[Vec<i64>]) -> Vec<i64> {
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Find the nonzero entry of least absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut done = true;
        for i in t + 1..rows {
            let q = m[i][t] / m[t][t];
            if q != 0 {
                for j in t..cols {
                    let v = m[t][j];
                    m[i][j] -= q * v;
                }
            }
            if m[i][t] != 0 {
                done = false;
            }
        }
        for j in t + 1..cols {
            let q = m[t][j] / m[t][t];
            if q != 0 {
                for row in m.iter_mut().skip(t) {
                    let v = row[t];
                    row[j] -= q * v;
                }
            }
            if m[t][j] != 0 {
                done = false;
            }
        }
        if !done {
            continue;
        }
        // Divisibility: the pivot must divide the rest of the block.
        let p = m[t][t];
        let bad = (t + 1..rows).find_map(|i| (t + 1..cols).find(|&j| m[i][j] % p != 0).map(|_| i));
        if let Some(i) = bad {
            for j in t..cols {
                let v = m[i][j];
                m[t][j] += v;
            }
            continue;
        }
        diag.push(p.abs() as i64);
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(smith_diagonal(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_diagonal(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_diagonal(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
    }

    #[test]
    fn kernel_is_orthogonal() {
        let a = vec![vec![1, 2, 3], vec![0, 1, 1]];
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            assert_eq!(row.iter().zip(&k[0]).map(|(x, y)| x * y).sum::<i64>(), 0);
        }
    }

    #[test]
    fn charpoly_of_rotation() {
        let a = vec![vec![Q::int(0), Q::int(-1)], vec![Q::int(1), Q::int(0)]];
        let c = charpoly(&a);
        assert_eq!(c, vec![Q::int(1), Q::int(0), Q::int(1)]);
    }
}
