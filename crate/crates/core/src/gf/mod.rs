//! Finite fields `F_{p^m}`, polynomials, factorization and matrices.

mod factor;
mod field;
mod mat;
mod poly;
pub(crate) mod prime;

pub use factor::{factor, roots, Factorization};
pub use field::{embed, prime_power, Embedding, Fe, Field, MAX_FIELD_SIZE};
pub use mat::{diagonalize, Mat};
pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field {p}^{m} exceeds the table limit")]
    TooLarge { p: u32, m: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero is not allowed here")]
    ZeroNotAllowed,
    #[error("quadratic character is undefined in characteristic 2")]
    EvenCharacteristic,
    #[error("malformed field element")]
    BadElement,
    #[error("not a subfield")]
    NotSubfield,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("matrix is singular")]
    Singular,
}

/// Multiplication-by-`d` matrix on `F_q[T]/(F)` in the basis `1, T, ..., T^{n-1}`.
pub fn multiplication_matrix(f: &Field, modulus: &Poly, d: &Poly) -> Mat {
    let n = modulus.deg();
    let mut m = Mat::zeros(n, n);
    let mut basis = Poly::one();
    let t = Poly::monomial(1);
    for j in 0..n {
        let col = d.mulmod(f, &basis, modulus);
        for i in 0..n {
            m.set(i, j, col.coeff(i));
        }
        basis = basis.mulmod(f, &t, modulus);
    }
    m
}

/// Norm of `d` from `F_q[T]/(F)` to `F_q`, the determinant of multiplication by `d`.
pub fn norm(f: &Field, modulus: &Poly, d: &Poly) -> Fe {
    multiplication_matrix(f, modulus, d).det(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_on_split_algebra_is_product_of_values() {
        let f = Field::new(7, 1).unwrap();
        let a = f.from_int(2);
        let b = f.from_int(5);
        let modulus = Poly::linear(&f, a).mul(&f, &Poly::linear(&f, b));
        let d = Poly::new(vec![f.from_int(3), f.from_int(1)]);
        let expect = f.mul(d.eval(&f, a), d.eval(&f, b));
        assert_eq!(norm(&f, &modulus, &d), expect);
    }

    #[test]
    fn norm_of_quadratic_extension_element() {
        // In F_3[T]/(T^2+1) = F_9, N(T) = T * T^3 = T^4 = 1.
        let f = Field::new(3, 1).unwrap();
        let modulus = Poly::new(vec![f.one(), f.zero(), f.one()]);
        assert_eq!(norm(&f, &modulus, &Poly::monomial(1)), f.one());
    }
}
