use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// Largest Picard rank handled (degree 3: `Z^{1,6}`).
pub const MAX_DIM: usize = 7;

/// A divisor class `a E_0 + sum b_i E_i` in `Z^{1,r}`; unused coordinates are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Class(pub [i32; MAX_DIM]);

impl Class {
    pub fn from_slice(c: &[i32]) -> Class {
        let mut a = [0; MAX_DIM];
        a[..c.len()].copy_from_slice(c);
        Class(a)
    }

    /// The basis class `E_i` (`E_0` is the pullback of a line).
    pub fn e(i: usize) -> Class {
        let mut a = [0; MAX_DIM];
        a[i] = 1;
        Class(a)
    }

    /// `E_0 - E_i - E_j - E_k`.
    pub fn line3(i: usize, j: usize, k: usize) -> Class {
        Class::e(0) - Class::e(i) - Class::e(j) - Class::e(k)
    }

    /// `E_0 - E_i - E_j`.
    pub fn line2(i: usize, j: usize) -> Class {
        Class::e(0) - Class::e(i) - Class::e(j)
    }

    /// `E_i - E_j`.
    pub fn diff(i: usize, j: usize) -> Class {
        Class::e(i) - Class::e(j)
    }

    /// Intersection pairing with signature `(1, r)`.
    pub fn dot(&self, o: &Class) -> i32 {
        let mut s = self.0[0] * o.0[0];
        for i in 1..MAX_DIM {
            s -= self.0[i] * o.0[i];
        }
        s
    }

    pub fn square(&self) -> i32 {
        self.dot(self)
    }

    pub fn coords(&self) -> &[i32; MAX_DIM] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let _ = write!(s, "{self}");
        s
    }
}

impl Add for Class {
    type Output = Class;
    fn add(self, o: Class) -> Class {
        let mut a = self.0;
        for (x, y) in a.iter_mut().zip(o.0) {
            *x += y;
        }
        Class(a)
    }
}

impl Sub for Class {
    type Output = Class;
    fn sub(self, o: Class) -> Class {
        self + (-o)
    }
}

impl Neg for Class {
    type Output = Class;
    fn neg(self) -> Class {
        Class(self.0.map(|x| -x))
    }
}

impl Mul<Class> for i32 {
    type Output = Class;
    fn mul(self, o: Class) -> Class {
        Class(o.0.map(|x| x * self))
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "E{i}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
