//! The Freudenthal triple system `(B, b, t)` attached to a Brown algebra.

use crate::linalg::{rank, Matrix};
use num_traits::{One, Zero};

use crate::scalar::Scalar;

use super::{brace, skew_psi, BrownAlgebra, BrownElem, BrownError, DIM};

/// `b(x, y) = ψ(x, y) s0` and
/// `t(y, z, w) = 2{y, s0 z, w} − b(z,w)y − b(z,y)w − b(y,w)z`
/// for `s0` the algebra's skew generator times `scale`.
pub struct TripleSystem<'a, A: BrownAlgebra> {
    alg: &'a A,
    s0: BrownElem<A::Up>,
    mu: A::Field,
    gram: Matrix<A::Field>,
    gram_rows: Vec<Vec<(usize, A::Field)>>,
}

impl<'a, A: BrownAlgebra> TripleSystem<'a, A> {
    pub fn new(alg: &'a A) -> Result<Self, BrownError> {
        Self::with_scale(alg, A::Field::one())
    }

    /// Uses `scale · s0` as the skew generator; `b` and `t` scale by the same factor.
    pub fn with_scale(alg: &'a A, scale: A::Field) -> Result<Self, BrownError> {
        if scale.is_zero() {
            return Err(BrownError::NotSkewSpan);
        }
        let s0 = alg.s0().scale(&alg.lift(&scale));
        let mu = alg.mu().mul_ref(&scale).mul_ref(&scale);
        let mut ts = TripleSystem { alg, s0, mu, gram: Matrix::zeros(DIM, DIM), gram_rows: vec![] };
        let basis = alg.basis();
        let mut gram = Matrix::zeros(DIM, DIM);
        for i in 0..DIM {
            for j in i + 1..DIM {
                let v = ts.b_direct(&basis[i], &basis[j])?;
                if !v.is_zero() {
                    gram.set(j, i, -v.clone());
                    gram.set(i, j, v);
                }
            }
        }
        if rank(&gram) != DIM {
            return Err(BrownError::Degenerate);
        }
        ts.gram_rows = (0..DIM)
            .map(|i| (0..DIM).filter(|&j| !gram.get(i, j).is_zero()).map(|j| (j, gram.get(i, j).clone())).collect())
            .collect();
        ts.gram = gram;
        Ok(ts)
    }

    pub fn algebra(&self) -> &'a A {
        self.alg
    }

    pub fn s0(&self) -> &BrownElem<A::Up> {
        &self.s0
    }

    pub fn mu(&self) -> &A::Field {
        &self.mu
    }

    pub fn gram(&self) -> &Matrix<A::Field> {
        &self.gram
    }

    /// `b` resolved from the element `ψ(x, y) s0 = b(x, y)·1`.
    pub fn b_direct(&self, x: &BrownElem<A::Up>, y: &BrownElem<A::Up>) -> Result<A::Field, BrownError> {
        let (p, _) = skew_psi(self.alg, x, y)?;
        let r = self.alg.mul(&p, &self.s0);
        if r.alpha != r.beta || !r.j.is_zero() || !r.jp.is_zero() {
            return Err(BrownError::NotScalar);
        }
        self.alg.lower(&r.alpha)
    }

    /// `b` in coordinates, through the Gram matrix.
    pub fn b_coords(&self, x: &[A::Field], y: &[A::Field]) -> A::Field {
        let mut t = A::Field::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let mut r = A::Field::zero();
            for (j, g) in &self.gram_rows[i] {
                if !y[*j].is_zero() {
                    r.add_mul(g, &y[*j]);
                }
            }
            if !r.is_zero() {
                t.add_mul(xi, &r);
            }
        }
        t
    }

    pub fn b(&self, x: &BrownElem<A::Up>, y: &BrownElem<A::Up>) -> Result<A::Field, BrownError> {
        Ok(self.b_coords(&self.alg.coords(x)?, &self.alg.coords(y)?))
    }

    pub fn t(
        &self,
        y: &BrownElem<A::Up>,
        z: &BrownElem<A::Up>,
        w: &BrownElem<A::Up>,
    ) -> Result<BrownElem<A::Up>, BrownError> {
        let (yc, zc, wc) = (self.alg.coords(y)?, self.alg.coords(z)?, self.alg.coords(w)?);
        Ok(self.t_with_coords(y, z, w, &yc, &zc, &wc))
    }

    /// `t` when ground-field coordinates of the arguments are already known.
    pub fn t_with_coords(
        &self,
        y: &BrownElem<A::Up>,
        z: &BrownElem<A::Up>,
        w: &BrownElem<A::Up>,
        yc: &[A::Field],
        zc: &[A::Field],
        wc: &[A::Field],
    ) -> BrownElem<A::Up> {
        let s0z = self.alg.mul(&self.s0, z);
        let mut out = brace(self.alg, y, &s0z, w);
        out = out.add(&out);
        let lift = |c: A::Field| self.alg.lift(&c);
        out.add_scaled(&-lift(self.b_coords(zc, wc)), y);
        out.add_scaled(&-lift(self.b_coords(zc, yc)), w);
        out.add_scaled(&-lift(self.b_coords(yc, wc)), z);
        out
    }

    /// `q(x, y, z, w) = b(x, t(y, z, w))`.
    pub fn q(
        &self,
        x: &BrownElem<A::Up>,
        y: &BrownElem<A::Up>,
        z: &BrownElem<A::Up>,
        w: &BrownElem<A::Up>,
    ) -> Result<A::Field, BrownError> {
        self.b(x, &self.t(y, z, w)?)
    }

    /// `ν(x) = q(x, x, x, x) / (12 μ)`.
    pub fn nu(&self, x: &BrownElem<A::Up>) -> Result<A::Field, BrownError> {
        let q = self.q(x, x, x, x)?;
        Ok(q.try_div(&self.mu.scaled(12))?)
    }
}
