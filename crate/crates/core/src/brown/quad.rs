//! `B(J, Δ)` for `Δ = Q(δ)`, `δ² = d`: the elements of `B(J⊗Δ, Δ×Δ)`
//! fixed by `ϖ⊗ι`. Products are computed upstairs.
//!
//! Ground-field coordinates are `(Re α, Im α, Re j, Im j)`; the element they
//! describe is `[α j; ι(j) ι(α)]`.

use num_traits::One;

use crate::albert::{self, AlbertCtx, AlbertElem};
use crate::scalar::{QuadExt, QuadField, Rational, Scalar};

use super::{BrownAlgebra, BrownCtx, BrownElem, BrownError, Variant, DIM};

#[derive(Clone, Debug)]
pub struct QuadBrown {
    field: QuadField,
    up: BrownCtx<QuadExt>,
}

impl QuadBrown {
    /// `B(H3(C^d, γ), Q(sqrt d))`.
    pub fn new(gamma: [Rational; 3], d: i64) -> Result<Self, BrownError> {
        let field = QuadField::new(d)?;
        let gamma = gamma.map(|g| field.from_rational(&g));
        let albert = AlbertCtx::new(gamma)?;
        Ok(QuadBrown { field, up: BrownCtx::new(albert, QuadExt::one())? })
    }

    pub fn split(d: i64) -> Result<Self, BrownError> {
        Self::new([Rational::from_integer(1), Rational::from_integer(1), Rational::from_integer(1)], d)
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn delta(&self) -> QuadExt {
        self.field.sqrt_d()
    }

    /// The split algebra over `Δ` that this one descends from.
    pub fn upstairs(&self) -> &BrownCtx<QuadExt> {
        &self.up
    }

    /// `ϖ⊗ι`: `[α j; j′ β] ↦ [ι(β) ι(j′); ι(j) ι(α)]`.
    pub fn varpi_iota(&self, x: &BrownElem<QuadExt>) -> BrownElem<QuadExt> {
        let c = |s: &QuadExt| s.conj();
        BrownElem { alpha: c(&x.beta), j: x.jp.map(c), jp: x.j.map(c), beta: c(&x.alpha) }
    }

    pub fn is_fixed(&self, x: &BrownElem<QuadExt>) -> bool {
        self.varpi_iota(x) == *x
    }

    /// Product with the descent condition checked on operands and result.
    pub fn try_mul(&self, x: &BrownElem<QuadExt>, y: &BrownElem<QuadExt>) -> Result<BrownElem<QuadExt>, BrownError> {
        if !self.is_fixed(x) || !self.is_fixed(y) {
            return Err(BrownError::NotFixed);
        }
        let p = self.mul(x, y);
        if !self.is_fixed(&p) {
            return Err(BrownError::NotFixed);
        }
        Ok(p)
    }

    /// The descent element with the given `α ∈ Δ` and `j ∈ J⊗Δ`.
    pub fn element(&self, alpha: QuadExt, j: AlbertElem<QuadExt>) -> BrownElem<QuadExt> {
        let jp = j.map(|s| s.conj());
        let beta = alpha.conj();
        BrownElem { alpha, j, jp, beta }
    }

    /// `f1 = [1 1; 1 1]`.
    pub fn f1(&self) -> BrownElem<QuadExt> {
        self.element(QuadExt::one(), AlbertElem::one())
    }

    /// `f2 = δ[−1 −1; 1 1]`.
    pub fn f2(&self) -> BrownElem<QuadExt> {
        let d = self.delta();
        self.element(-d.clone(), AlbertElem::one().scale(&-d))
    }

    fn split_parts(&self, s: &QuadExt) -> (Rational, Rational) {
        (s.rational_part().clone(), s.irrational_part().clone())
    }
}

impl BrownAlgebra for QuadBrown {
    type Up = QuadExt;
    type Field = Rational;

    fn albert(&self) -> &AlbertCtx<QuadExt> {
        self.up.albert()
    }

    fn zeta(&self) -> &QuadExt {
        self.up.zeta()
    }

    fn variant(&self) -> Variant {
        Variant::Quadratic(self.field.d())
    }

    /// `δ·diag(1, −1)`.
    fn s0(&self) -> BrownElem<QuadExt> {
        let d = self.delta();
        BrownElem::diag(d.clone(), -d)
    }

    fn mu(&self) -> Rational {
        Rational::from_integer(self.field.d())
    }

    fn lift(&self, c: &Rational) -> QuadExt {
        self.field.from_rational(c)
    }

    fn lower(&self, c: &QuadExt) -> Result<Rational, BrownError> {
        if c.is_rational() {
            Ok(c.rational_part().clone())
        } else {
            Err(BrownError::NotFixed)
        }
    }

    fn coords(&self, x: &BrownElem<QuadExt>) -> Result<Vec<Rational>, BrownError> {
        if !self.is_fixed(x) {
            return Err(BrownError::NotFixed);
        }
        let mut v = Vec::with_capacity(DIM);
        let (p, q) = self.split_parts(&x.alpha);
        v.push(p);
        v.push(q);
        let (re, im): (Vec<_>, Vec<_>) = x.j.coords().iter().map(|s| self.split_parts(s)).unzip();
        v.extend(re);
        v.extend(im);
        Ok(v)
    }

    fn from_coords(&self, v: &[Rational]) -> Result<BrownElem<QuadExt>, BrownError> {
        if v.len() != DIM {
            return Err(BrownError::WrongLength { expected: DIM, got: v.len() });
        }
        let n = albert::DIM;
        let alpha = self.field.elem(v[0].clone(), v[1].clone());
        let j: Vec<QuadExt> = (0..n).map(|i| self.field.elem(v[2 + i].clone(), v[2 + n + i].clone())).collect();
        Ok(self.element(alpha, AlbertElem::from_coords(j)?))
    }
}
