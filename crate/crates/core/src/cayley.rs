//! The split Cayley algebra in the basis `u1..u8`.
//!
//! The stored table is the twisted product `x ⋆ y = π(x) π(y)`. The unit of
//! the ordinary product is `u4 + u5`, and `π(x) = 1 ⋆ x`.

use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CayleyError {
    #[error("x·π(x) is not a scalar multiple of 1")]
    NotScalarMultiple,
    #[error("multiplication table failed validation: {0}")]
    TableInvalid(String),
}

/// `STAR[i][j] = ±(k+1)` means `u_{i+1} ⋆ u_{j+1} = ±u_{k+1}`; `0` is zero.
pub const STAR: [[i8; 8]; 8] = [
    [0, 0, 0, -1, 0, -2, 3, -4],
    [0, 0, 1, 0, -2, 0, -5, -6],
    [0, -1, 0, 0, -3, -5, 0, 7],
    [0, -2, -3, 5, 0, 0, 0, -8],
    [-1, 0, 0, 0, 4, -6, -7, 0],
    [2, 0, -4, -6, 0, 0, -8, 0],
    [-3, -4, 0, -7, 0, 8, 0, 0],
    [-5, 6, -7, 0, -8, 0, 0, 0],
];

/// Index pairs `(i, j)` with a nonzero `u_i ⋆ u_j`, grouped by `i`.
fn star_entries() -> &'static [Vec<(usize, usize, bool)>; 8] {
    static ENTRIES: OnceLock<[Vec<(usize, usize, bool)>; 8]> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        std::array::from_fn(|i| {
            (0..8)
                .filter(|&j| STAR[i][j] != 0)
                .map(|j| {
                    let e = STAR[i][j];
                    (j, e.unsigned_abs() as usize - 1, e < 0)
                })
                .collect()
        })
    })
}

/// Element of the split octonions, coordinates in `u1..u8`.
#[derive(Clone, PartialEq)]
pub struct Oct<S> {
    pub c: [S; 8],
}

impl<S: Scalar> Oct<S> {
    pub fn zero() -> Self {
        Oct { c: std::array::from_fn(|_| S::zero()) }
    }

    /// The unit `u4 + u5`.
    pub fn one() -> Self {
        let mut x = Self::zero();
        x.c[3] = S::one();
        x.c[4] = S::one();
        x
    }

    /// `u_{i+1}` (zero-based index).
    pub fn basis(i: usize) -> Self {
        let mut x = Self::zero();
        x.c[i] = S::one();
        x
    }

    pub fn from_slice(v: &[S]) -> Self {
        assert_eq!(v.len(), 8, "octonions have 8 coordinates");
        Oct { c: std::array::from_fn(|i| v[i].clone()) }
    }

    pub fn scalar(a: S) -> Self {
        let mut x = Self::zero();
        x.c[3] = a.clone();
        x.c[4] = a;
        x
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, y: &Self) -> Self {
        Oct { c: std::array::from_fn(|i| self.c[i].clone() + y.c[i].clone()) }
    }

    pub fn sub(&self, y: &Self) -> Self {
        Oct { c: std::array::from_fn(|i| self.c[i].clone() - y.c[i].clone()) }
    }

    pub fn neg(&self) -> Self {
        Oct { c: std::array::from_fn(|i| -self.c[i].clone()) }
    }

    pub fn scale(&self, a: &S) -> Self {
        Oct { c: std::array::from_fn(|i| self.c[i].mul_ref(a)) }
    }

    /// Applies a scalar map coordinatewise.
    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Oct { c: std::array::from_fn(|i| f(&self.c[i])) }
    }

    pub fn star(&self, y: &Self) -> Self {
        let mut out = Self::zero();
        let entries = star_entries();
        for i in 0..8 {
            if self.c[i].is_zero() {
                continue;
            }
            for &(j, k, neg) in &entries[i] {
                if y.c[j].is_zero() {
                    continue;
                }
                if neg {
                    out.c[k].sub_mul(&self.c[i], &y.c[j]);
                } else {
                    out.c[k].add_mul(&self.c[i], &y.c[j]);
                }
            }
        }
        out
    }

    /// The standard involution `π(x) = 1 ⋆ x`.
    pub fn conj(&self) -> Self {
        Self::one().star(self)
    }

    /// The ordinary product `xy = π(x) ⋆ π(y)`.
    pub fn mul(&self, y: &Self) -> Self {
        self.conj().star(&y.conj())
    }

    /// `n(x)`, defined by `x π(x) = n(x) 1`.
    pub fn norm(&self) -> Result<S, CayleyError> {
        let p = self.mul(&self.conj());
        let a = p.c[3].clone();
        let scalar = p.c[4] == a && p.c.iter().enumerate().all(|(i, x)| i == 3 || i == 4 || x.is_zero());
        if scalar {
            Ok(a)
        } else {
            Err(CayleyError::NotScalarMultiple)
        }
    }

    /// `n(x, y) = n(x + y) - n(x) - n(y)`.
    pub fn norm_bilinear(&self, y: &Self) -> Result<S, CayleyError> {
        Ok(self.add(y).norm()? - self.norm()? - y.norm()?)
    }

    /// `t(x) = n(x, 1)`.
    pub fn trace(&self) -> S {
        self.c[3].clone() + self.c[4].clone()
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, sample: impl Fn(&mut R) -> S) -> Self {
        Oct { c: std::array::from_fn(|_| sample(rng)) }
    }
}

impl<S: Scalar> fmt::Debug for Oct<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Oct{self}")
    }
}

impl<S: Scalar> fmt::Display for Oct<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

fn check_table() -> Result<(), CayleyError> {
    type Q = Oct<Rational>;
    let fail = |msg: String| Err(CayleyError::TableInvalid(msg));
    let one = Q::one();
    for i in 0..8 {
        let u = Q::basis(i);
        if one.mul(&u) != u || u.mul(&one) != u {
            return fail(format!("u4+u5 is not a unit for u{}", i + 1));
        }
        if u.conj().conj() != u {
            return fail(format!("π is not an involution on u{}", i + 1));
        }
    }
    if (0..8).all(|i| one.star(&Q::basis(i)) == Q::basis(i)) {
        return fail("⋆ is unexpectedly unital".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c7a);
    let sample = |rng: &mut ChaCha8Rng| Q::random(rng, |r| Rational::from_integer(r.gen_range(-3..=3)));
    for _ in 0..40 {
        let x = sample(&mut rng);
        let y = sample(&mut rng);
        let (Ok(nx), Ok(ny), Ok(nxy)) = (x.norm(), y.norm(), x.mul(&y).norm()) else {
            return fail("norm is not scalar".into());
        };
        if nxy != nx * ny {
            return fail("norm is not multiplicative".into());
        }
        if x.mul(&x).mul(&y) != x.mul(&x.mul(&y)) || y.mul(&x).mul(&x) != y.mul(&x.mul(&x)) {
            return fail("product is not alternative".into());
        }
    }
    Ok(())
}

/// Validates the transcribed table and the choice of unit. Computed once.
pub fn validate_table() -> Result<(), CayleyError> {
    static RESULT: OnceLock<Result<(), CayleyError>> = OnceLock::new();
    RESULT.get_or_init(check_table).clone()
}
