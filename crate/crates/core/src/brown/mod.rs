//! Brown algebras `B(J, F×F, ζ)` and `B(J, Δ)`.
//!
//! An element is a 2×2 block `[α j; j′ β]` with scalar corners and Albert
//! off-diagonal entries. The quadratic variant lives in [`quad`], and the
//! associated Freudenthal triple system in [`fts`].

pub mod fts;
pub mod quad;

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::albert::{self, AlbertCtx, AlbertElem, AlbertError};
use crate::linalg::{LinalgError, LinearMap, Matrix};
use crate::scalar::{Scalar, ScalarError};

pub use fts::TripleSystem;
pub use quad::QuadBrown;

/// Dimension of a Brown algebra over its ground field.
pub const DIM: usize = 56;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BrownError {
    #[error("ζ must be nonzero")]
    InvalidZeta,
    #[error("operation requires ζ = 1")]
    VariantMismatch,
    #[error("operands come from incompatible contexts: {0}")]
    ContextMismatch(String),
    #[error("ψ(x, y) is not a multiple of s0")]
    NotSkewSpan,
    #[error("product is not a scalar multiple of 1")]
    NotScalar,
    #[error("element is not fixed by ϖ⊗ι")]
    NotFixed,
    #[error("map is not a norm similarity with the given multiplier")]
    NotSimilarity,
    #[error("the bilinear form b is degenerate")]
    Degenerate,
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Albert(#[from] AlbertError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `[α j; j′ β]`.
#[derive(Clone, PartialEq)]
pub struct BrownElem<S> {
    pub alpha: S,
    pub j: AlbertElem<S>,
    pub jp: AlbertElem<S>,
    pub beta: S,
}

impl<S: Scalar> BrownElem<S> {
    pub fn new(alpha: S, j: AlbertElem<S>, jp: AlbertElem<S>, beta: S) -> Self {
        BrownElem { alpha, j, jp, beta }
    }

    pub fn zero() -> Self {
        Self::diag(S::zero(), S::zero())
    }

    pub fn one() -> Self {
        Self::diag(S::one(), S::one())
    }

    pub fn diag(alpha: S, beta: S) -> Self {
        BrownElem { alpha, j: AlbertElem::zero(), jp: AlbertElem::zero(), beta }
    }

    /// The `i`th coordinate vector in the order `(α, j, j′, β)`.
    pub fn basis(i: usize) -> Self {
        let mut v = vec![S::zero(); DIM];
        v[i] = S::one();
        Self::from_coords(&v).expect("56 coordinates")
    }

    pub fn from_coords(v: &[S]) -> Result<Self, BrownError> {
        if v.len() != DIM {
            return Err(BrownError::WrongLength { expected: DIM, got: v.len() });
        }
        Ok(BrownElem {
            alpha: v[0].clone(),
            j: AlbertElem::from_coords(v[1..28].to_vec())?,
            jp: AlbertElem::from_coords(v[28..55].to_vec())?,
            beta: v[55].clone(),
        })
    }

    pub fn coords(&self) -> Vec<S> {
        let mut v = Vec::with_capacity(DIM);
        v.push(self.alpha.clone());
        v.extend(self.j.coords().iter().cloned());
        v.extend(self.jp.coords().iter().cloned());
        v.push(self.beta.clone());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero() && self.j.is_zero() && self.jp.is_zero()
    }

    pub fn add(&self, y: &Self) -> Self {
        BrownElem {
            alpha: self.alpha.clone() + y.alpha.clone(),
            j: self.j.add(&y.j),
            jp: self.jp.add(&y.jp),
            beta: self.beta.clone() + y.beta.clone(),
        }
    }

    pub fn sub(&self, y: &Self) -> Self {
        BrownElem {
            alpha: self.alpha.clone() - y.alpha.clone(),
            j: self.j.sub(&y.j),
            jp: self.jp.sub(&y.jp),
            beta: self.beta.clone() - y.beta.clone(),
        }
    }

    /// `self += c * y`
    pub fn add_scaled(&mut self, c: &S, y: &Self) {
        if c.is_zero() {
            return;
        }
        self.alpha.add_mul(c, &y.alpha);
        self.j.add_scaled(c, &y.j);
        self.jp.add_scaled(c, &y.jp);
        self.beta.add_mul(c, &y.beta);
    }

    pub fn neg(&self) -> Self {
        BrownElem { alpha: -self.alpha.clone(), j: self.j.neg(), jp: self.jp.neg(), beta: -self.beta.clone() }
    }

    pub fn scale(&self, c: &S) -> Self {
        BrownElem { alpha: self.alpha.mul_ref(c), j: self.j.scale(c), jp: self.jp.scale(c), beta: self.beta.mul_ref(c) }
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        BrownElem { alpha: f(&self.alpha), j: self.j.map(&f), jp: self.jp.map(&f), beta: f(&self.beta) }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, mut sample: impl FnMut(&mut R) -> S) -> Self {
        let v: Vec<S> = (0..DIM).map(|_| sample(rng)).collect();
        Self::from_coords(&v).expect("56 coordinates")
    }
}

impl<S: Scalar> fmt::Debug for BrownElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BrownElem[{} | {} | {} | {}]", self.alpha, self.j, self.jp, self.beta)
    }
}

impl<S: Scalar> fmt::Display for BrownElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Split,
    Quadratic(i64),
}

/// A Brown algebra as seen by the generic triple-system code.
///
/// Elements are stored over `Up` (the split algebra's scalars, or `Δ` for the
/// quadratic variant); coordinates are taken over the ground field `Field`.
pub trait BrownAlgebra: Send + Sync {
    type Up: Scalar;
    type Field: Scalar;

    fn albert(&self) -> &AlbertCtx<Self::Up>;

    fn zeta(&self) -> &Self::Up;

    fn variant(&self) -> Variant;

    /// The chosen generator of the skew elements.
    fn s0(&self) -> BrownElem<Self::Up>;

    /// `s0² = μ·1`.
    fn mu(&self) -> Self::Field;

    fn lift(&self, c: &Self::Field) -> Self::Up;

    fn lower(&self, c: &Self::Up) -> Result<Self::Field, BrownError>;

    fn coords(&self, x: &BrownElem<Self::Up>) -> Result<Vec<Self::Field>, BrownError>;

    fn from_coords(&self, v: &[Self::Field]) -> Result<BrownElem<Self::Up>, BrownError>;

    fn basis(&self) -> Vec<BrownElem<Self::Up>> {
        (0..DIM)
            .map(|i| {
                let mut v = vec![Self::Field::zero(); DIM];
                v[i] = Self::Field::one();
                self.from_coords(&v).expect("unit vectors are valid coordinates")
            })
            .collect()
    }

    /// `[α1 j1; j1′ β1][α2 j2; j2′ β2]`.
    fn mul(&self, x: &BrownElem<Self::Up>, y: &BrownElem<Self::Up>) -> BrownElem<Self::Up> {
        let alb = self.albert();
        let zeta = self.zeta();
        let mut alpha = x.alpha.mul_ref(&y.alpha);
        alpha.add_mul(zeta, &alb.trace_form(&x.j, &y.jp));
        let mut beta = x.beta.mul_ref(&y.beta);
        beta.add_mul(zeta, &alb.trace_form(&y.j, &x.jp));
        let mut j = alb.cross(&x.jp, &y.jp);
        if !zeta.is_one() {
            j = j.scale(zeta);
        }
        j.add_scaled(&x.alpha, &y.j);
        j.add_scaled(&y.beta, &x.j);
        let mut jp = alb.cross(&x.j, &y.j);
        jp.add_scaled(&y.alpha, &x.jp);
        jp.add_scaled(&x.beta, &y.jp);
        BrownElem { alpha, j, jp, beta }
    }

    /// The involution swaps the diagonal corners.
    fn bar(&self, x: &BrownElem<Self::Up>) -> BrownElem<Self::Up> {
        BrownElem { alpha: x.beta.clone(), j: x.j.clone(), jp: x.jp.clone(), beta: x.alpha.clone() }
    }
}

/// `{x, y, z} = (x ȳ) z + (z ȳ) x − (z x̄) y`.
pub fn brace<A: BrownAlgebra>(
    alg: &A,
    x: &BrownElem<A::Up>,
    y: &BrownElem<A::Up>,
    z: &BrownElem<A::Up>,
) -> BrownElem<A::Up> {
    BraceOp::new(alg, x, y).apply(z)
}

/// `z ↦ {x, y, z}` with the products not involving `z` computed once.
#[derive(Debug, Clone)]
pub struct BraceOp<'a, A: BrownAlgebra> {
    alg: &'a A,
    x: BrownElem<A::Up>,
    y: BrownElem<A::Up>,
    xyb: BrownElem<A::Up>,
    yb: BrownElem<A::Up>,
    xb: BrownElem<A::Up>,
}

impl<'a, A: BrownAlgebra> BraceOp<'a, A> {
    pub fn new(alg: &'a A, x: &BrownElem<A::Up>, y: &BrownElem<A::Up>) -> Self {
        let yb = alg.bar(y);
        BraceOp { alg, x: x.clone(), y: y.clone(), xyb: alg.mul(x, &yb), yb, xb: alg.bar(x) }
    }

    pub fn apply(&self, z: &BrownElem<A::Up>) -> BrownElem<A::Up> {
        let alg = self.alg;
        let mut out = alg.mul(&self.xyb, z);
        out = out.add(&alg.mul(&alg.mul(z, &self.yb), &self.x));
        out.sub(&alg.mul(&alg.mul(z, &self.xb), &self.y))
    }
}

fn map_from_images<A: BrownAlgebra>(
    alg: &A,
    f: impl Fn(&BrownElem<A::Up>) -> BrownElem<A::Up>,
) -> Result<LinearMap<A::Field>, BrownError> {
    let cols = alg.basis().iter().map(|e| alg.coords(&f(e))).collect::<Result<Vec<_>, _>>()?;
    Ok(LinearMap::from_images(DIM, &cols)?)
}

/// `V_{x,y} z = {x, y, z}` as a matrix over the ground field.
pub fn v_operator<A: BrownAlgebra>(
    alg: &A,
    x: &BrownElem<A::Up>,
    y: &BrownElem<A::Up>,
) -> Result<LinearMap<A::Field>, BrownError> {
    let v = BraceOp::new(alg, x, y);
    map_from_images(alg, |z| v.apply(z))
}

/// `U_e x = {e, x, e}`.
pub fn u_apply<A: BrownAlgebra>(alg: &A, e: &BrownElem<A::Up>, x: &BrownElem<A::Up>) -> BrownElem<A::Up> {
    brace(alg, e, x, e)
}

/// `U_e` as a matrix over the ground field.
pub fn u_operator<A: BrownAlgebra>(alg: &A, e: &BrownElem<A::Up>) -> Result<LinearMap<A::Field>, BrownError> {
    map_from_images(alg, |x| u_apply(alg, e, x))
}

/// `ψ(x, y) = x ȳ − y x̄` together with the scalar `λ` such that `ψ(x, y) = λ s0`.
pub fn skew_psi<A: BrownAlgebra>(
    alg: &A,
    x: &BrownElem<A::Up>,
    y: &BrownElem<A::Up>,
) -> Result<(BrownElem<A::Up>, A::Field), BrownError> {
    let p = alg.mul(x, &alg.bar(y)).sub(&alg.mul(y, &alg.bar(x)));
    let pc = alg.coords(&p)?;
    let sc = alg.coords(&alg.s0())?;
    let k = sc.iter().position(|c| !c.is_zero()).ok_or(BrownError::NotSkewSpan)?;
    let lambda = pc[k].try_div(&sc[k])?;
    for (a, b) in pc.iter().zip(&sc) {
        if *a != lambda.mul_ref(b) {
            return Err(BrownError::NotSkewSpan);
        }
    }
    Ok((p, lambda))
}

/// The split algebra `B(J, F×F, ζ)`; `s0 = diag(1, −1)`, `μ = 1`.
#[derive(Clone, Debug)]
pub struct BrownCtx<S: Scalar> {
    albert: AlbertCtx<S>,
    zeta: S,
}

impl<S: Scalar> BrownCtx<S> {
    pub fn new(albert: AlbertCtx<S>, zeta: S) -> Result<Self, BrownError> {
        if zeta.is_zero() {
            return Err(BrownError::InvalidZeta);
        }
        Ok(BrownCtx { albert, zeta })
    }

    /// `B(J^d, F×F)` with `ζ = 1`.
    pub fn split() -> Self {
        Self::new(AlbertCtx::split(), S::one()).expect("ζ = 1")
    }

    fn require_unit_zeta(&self) -> Result<(), BrownError> {
        if self.zeta.is_one() {
            Ok(())
        } else {
            Err(BrownError::VariantMismatch)
        }
    }

    /// `ϖ[α j; j′ β] = [β j′; j α]`, an automorphism when `ζ = 1`.
    pub fn varpi(&self, x: &BrownElem<S>) -> Result<BrownElem<S>, BrownError> {
        self.require_unit_zeta()?;
        Ok(BrownElem { alpha: x.beta.clone(), j: x.jp.clone(), jp: x.j.clone(), beta: x.alpha.clone() })
    }

    /// `φ_k`: `[α j; j′ β] ↦ [α + βN(k) + T(j′,k) + T(j,k#), j + βk; j′ + j×k + βk#, β]`.
    pub fn phi(&self, k: &AlbertElem<S>, x: &BrownElem<S>) -> Result<BrownElem<S>, BrownError> {
        self.require_unit_zeta()?;
        let alb = &self.albert;
        let ks = alb.sharp(k);
        let mut alpha = x.alpha.clone();
        alpha.add_mul(&x.beta, &alb.norm(k)?);
        alpha += &alb.trace_form(&x.jp, k);
        alpha += &alb.trace_form(&x.j, &ks);
        let mut j = x.j.clone();
        j.add_scaled(&x.beta, k);
        let mut jp = x.jp.add(&alb.cross(&x.j, k));
        jp.add_scaled(&x.beta, &ks);
        Ok(BrownElem { alpha, j, jp, beta: x.beta.clone() })
    }

    /// `ψ_k`: `[α j; j′ β] ↦ [α, j + j′×k + αk#; j′ + αk, β + αN(k) + T(j,k) + T(j′,k#)]`.
    pub fn psi(&self, k: &AlbertElem<S>, x: &BrownElem<S>) -> Result<BrownElem<S>, BrownError> {
        self.require_unit_zeta()?;
        let alb = &self.albert;
        let ks = alb.sharp(k);
        let mut j = x.j.add(&alb.cross(&x.jp, k));
        j.add_scaled(&x.alpha, &ks);
        let mut jp = x.jp.clone();
        jp.add_scaled(&x.alpha, k);
        let mut beta = x.beta.clone();
        beta.add_mul(&x.alpha, &alb.norm(k)?);
        beta += &alb.trace_form(&x.j, k);
        beta += &alb.trace_form(&x.jp, &ks);
        Ok(BrownElem { alpha: x.alpha.clone(), j, jp, beta })
    }

    pub fn phi_map(&self, k: &AlbertElem<S>) -> Result<LinearMap<S>, BrownError> {
        self.require_unit_zeta()?;
        map_from_images(self, |x| self.phi(k, x).expect("ζ = 1 checked"))
    }

    pub fn psi_map(&self, k: &AlbertElem<S>) -> Result<LinearMap<S>, BrownError> {
        self.require_unit_zeta()?;
        map_from_images(self, |x| self.psi(k, x).expect("ζ = 1 checked"))
    }

    /// `f_φ[α j; j′ β] = [λ⁻¹α φ(j); φ†(j′) λβ]` for a norm similarity `φ`
    /// with multiplier `λ`. The similarity is checked on the probe set
    /// `{e_i, e_i ± e_j, e_i + e_j + e_k}`, on which a cubic form is determined.
    pub fn f_phi(&self, phi: &LinearMap<S>, lambda: &S) -> Result<LinearMap<S>, BrownError> {
        let alb = &self.albert;
        if phi.dim() != albert::DIM || lambda.is_zero() {
            return Err(BrownError::NotSimilarity);
        }
        let check = |x: &AlbertElem<S>| -> Result<bool, BrownError> {
            Ok(alb.norm(&alb.apply_map(phi, x))? == lambda.mul_ref(&alb.norm(x)?))
        };
        let e = |i| AlbertElem::<S>::e(i);
        for i in 0..albert::DIM {
            if !check(&e(i))? {
                return Err(BrownError::NotSimilarity);
            }
            for j in i + 1..albert::DIM {
                if !check(&e(i).add(&e(j)))? || !check(&e(i).sub(&e(j)))? {
                    return Err(BrownError::NotSimilarity);
                }
                for k in j + 1..albert::DIM {
                    if !check(&e(i).add(&e(j)).add(&e(k)))? {
                        return Err(BrownError::NotSimilarity);
                    }
                }
            }
        }
        let dagger = alb.dagger(phi).map_err(|_| BrownError::NotSimilarity)?;
        let inv = lambda.inverse()?;
        let mut m = Matrix::zeros(DIM, DIM);
        m.set(0, 0, inv);
        m.set(DIM - 1, DIM - 1, lambda.clone());
        for r in 0..albert::DIM {
            for c in 0..albert::DIM {
                m.set(1 + r, 1 + c, phi.matrix().get(r, c).clone());
                m.set(28 + r, 28 + c, dagger.matrix().get(r, c).clone());
            }
        }
        Ok(LinearMap::new(m)?)
    }

    /// `f[α j; j′ β] = [ζα j; j′ β]` from `B(J, F×F)` to `B(J, F×F, ζ)`.
    pub fn similarity_f(&self, target: &BrownCtx<S>) -> Result<LinearMap<S>, BrownError> {
        self.require_unit_zeta()?;
        if self.albert.gamma() != target.albert.gamma() {
            return Err(BrownError::ContextMismatch("different Albert algebras".into()));
        }
        let mut diag = vec![S::one(); DIM];
        diag[0] = target.zeta.clone();
        Ok(LinearMap::new(Matrix::from_diagonal(&diag))?)
    }

    /// `π[α j; j′ β] = [β j′; ζ⁻¹j α]` from `B(J, F×F, ζ)` to `B(J, F×F, ζ²)`.
    pub fn zeta_swap(&self, x: &BrownElem<S>) -> Result<BrownElem<S>, BrownError> {
        let zinv = self.zeta.inverse()?;
        Ok(BrownElem { alpha: x.beta.clone(), j: x.jp.clone(), jp: x.j.scale(&zinv), beta: x.alpha.clone() })
    }

    /// `h[α j; j′ β] = [α/δ δj; j′ δ²β]`.
    pub fn h_map(&self, delta: &S, x: &BrownElem<S>) -> Result<BrownElem<S>, BrownError> {
        let inv = delta.inverse()?;
        Ok(BrownElem {
            alpha: x.alpha.mul_ref(&inv),
            j: x.j.scale(delta),
            jp: x.jp.clone(),
            beta: x.beta.mul_ref(&delta.mul_ref(delta)),
        })
    }

    /// `m = φ_{−1/(2δ)} ψ_δ h`, with scalars embedded in `J` as multiples of 1.
    pub fn m_apply(&self, delta: &S, x: &BrownElem<S>) -> Result<BrownElem<S>, BrownError> {
        let inv2 = delta.scaled(2).inverse()?;
        let k_phi = AlbertElem::one().scale(&-inv2);
        let k_psi = AlbertElem::one().scale(delta);
        let y = self.h_map(delta, x)?;
        let y = self.psi(&k_psi, &y)?;
        self.phi(&k_phi, &y)
    }

    pub fn m_map(&self, delta: &S) -> Result<LinearMap<S>, BrownError> {
        self.require_unit_zeta()?;
        delta.inverse()?;
        map_from_images(self, |x| self.m_apply(delta, x).expect("checked above"))
    }

    pub fn apply(&self, f: &LinearMap<S>, x: &BrownElem<S>) -> BrownElem<S> {
        BrownElem::from_coords(&f.apply(&x.coords())).expect("56 coordinates")
    }
}

impl<S: Scalar> BrownAlgebra for BrownCtx<S> {
    type Up = S;
    type Field = S;

    fn albert(&self) -> &AlbertCtx<S> {
        &self.albert
    }

    fn zeta(&self) -> &S {
        &self.zeta
    }

    fn variant(&self) -> Variant {
        Variant::Split
    }

    fn s0(&self) -> BrownElem<S> {
        BrownElem::diag(S::one(), -S::one())
    }

    fn mu(&self) -> S {
        S::one()
    }

    fn lift(&self, c: &S) -> S {
        c.clone()
    }

    fn lower(&self, c: &S) -> Result<S, BrownError> {
        Ok(c.clone())
    }

    fn coords(&self, x: &BrownElem<S>) -> Result<Vec<S>, BrownError> {
        Ok(x.coords())
    }

    fn from_coords(&self, v: &[S]) -> Result<BrownElem<S>, BrownError> {
        BrownElem::from_coords(v)
    }
}

#[cfg(test)]
mod tests;
