//! Reduced Albert algebras `H3(C, γ)` over the split octonions.
//!
//! Elements are stored as 27 coordinates `(ε0, ε1, ε2, a1..a8, b1..b8,
//! c1..c8)`. The associated hermitian matrix is
//!
//! ```text
//! [ ε0            c             γ2/γ0 π(b) ]
//! [ γ0/γ1 π(c)    ε1            a          ]
//! [ b             γ1/γ2 π(a)    ε2         ]
//! ```
//!
//! The Jordan product `½(XY + YX)` of these matrices is tabulated once per
//! context on basis pairs; [`AlbertCtx::jordan_mul_embedded`] keeps the
//! matrix route available as a cross-check.

use std::fmt;

use rand::Rng;

use crate::cayley::{CayleyError, Oct};
use crate::linalg::{dual_solve, invert, LinalgError, LinearMap, Matrix, RowReducer, Subspace};
use crate::scalar::{Scalar, ScalarError};

pub const DIM: usize = 27;
const A: usize = 3;
const B: usize = 11;
const C: usize = 19;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlbertError {
    #[error("γ entries must be nonzero")]
    InvalidGamma,
    #[error("symmetrized product does not have the hermitian shape")]
    ReadbackMismatch,
    #[error("characteristic residual is not a scalar multiple of 1")]
    NotScalarMultiple,
    #[error("similarity multiplier must be nonzero (and λ0λ1λ2 = 1 for S_λ)")]
    InvalidMultiplier,
    #[error("rank-one sampler hit a degenerate draw")]
    SamplerDegenerate,
    #[error("element is not of rank one")]
    NotRankOne,
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Element of a reduced Albert algebra.
#[derive(Clone, PartialEq)]
pub struct AlbertElem<S> {
    v: Vec<S>,
}

impl<S: Scalar> AlbertElem<S> {
    pub fn zero() -> Self {
        AlbertElem { v: vec![S::zero(); DIM] }
    }

    pub fn one() -> Self {
        Self::diag(S::one(), S::one(), S::one())
    }

    pub fn diag(e0: S, e1: S, e2: S) -> Self {
        let mut x = Self::zero();
        x.v[0] = e0;
        x.v[1] = e1;
        x.v[2] = e2;
        x
    }

    /// The diagonal idempotent `e_i`.
    pub fn e(i: usize) -> Self {
        let mut x = Self::zero();
        x.v[i] = S::one();
        x
    }

    pub fn basis(i: usize) -> Self {
        Self::e(i)
    }

    pub fn from_parts(eps: [S; 3], a: &Oct<S>, b: &Oct<S>, c: &Oct<S>) -> Self {
        let mut v = Vec::with_capacity(DIM);
        v.extend(eps);
        v.extend(a.c.iter().cloned());
        v.extend(b.c.iter().cloned());
        v.extend(c.c.iter().cloned());
        AlbertElem { v }
    }

    pub fn from_coords(v: Vec<S>) -> Result<Self, AlbertError> {
        if v.len() != DIM {
            return Err(AlbertError::WrongLength { expected: DIM, got: v.len() });
        }
        Ok(AlbertElem { v })
    }

    pub fn coords(&self) -> &[S] {
        &self.v
    }

    pub fn into_coords(self) -> Vec<S> {
        self.v
    }

    pub fn eps(&self, i: usize) -> &S {
        &self.v[i]
    }

    pub fn a(&self) -> Oct<S> {
        Oct::from_slice(&self.v[A..B])
    }

    pub fn b(&self) -> Oct<S> {
        Oct::from_slice(&self.v[B..C])
    }

    pub fn c(&self) -> Oct<S> {
        Oct::from_slice(&self.v[C..DIM])
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, y: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(y);
        out
    }

    pub fn add_assign(&mut self, y: &Self) {
        for (a, b) in self.v.iter_mut().zip(&y.v) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    /// `self += c * y`
    pub fn add_scaled(&mut self, c: &S, y: &Self) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.v.iter_mut().zip(&y.v) {
            if !b.is_zero() {
                a.add_mul(c, b);
            }
        }
    }

    pub fn sub(&self, y: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.v.iter_mut().zip(&y.v) {
            if !b.is_zero() {
                *a -= b;
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        AlbertElem { v: self.v.iter().map(|x| -x.clone()).collect() }
    }

    pub fn scale(&self, c: &S) -> Self {
        AlbertElem { v: self.v.iter().map(|x| if x.is_zero() { x.clone() } else { x.mul_ref(c) }).collect() }
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        AlbertElem { v: self.v.iter().map(f).collect() }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, mut sample: impl FnMut(&mut R) -> S) -> Self {
        AlbertElem { v: (0..DIM).map(|_| sample(rng)).collect() }
    }
}

impl<S: Scalar> fmt::Debug for AlbertElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlbertElem({self})")
    }
}

impl<S: Scalar> fmt::Display for AlbertElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.v.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Sparse structure constants of a bilinear map `F^n × F^n → F^m`.
#[derive(Clone, Debug)]
pub(crate) struct Bilinear<S> {
    /// `by_left[i]` lists `(j, k, c)` with `e_i * e_j = Σ c e_k`.
    by_left: Vec<Vec<(usize, usize, S)>>,
    by_right: Vec<Vec<(usize, usize, S)>>,
    out_dim: usize,
}

impl<S: Scalar> Bilinear<S> {
    pub(crate) fn from_fn(n: usize, out_dim: usize, symmetric: bool, f: impl Fn(usize, usize) -> Vec<S>) -> Self {
        let mut by_left = vec![Vec::new(); n];
        let mut by_right = vec![Vec::new(); n];
        for i in 0..n {
            let start = if symmetric { i } else { 0 };
            for j in start..n {
                let prod = f(i, j);
                for (k, c) in prod.into_iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    by_left[i].push((j, k, c.clone()));
                    by_right[j].push((i, k, c.clone()));
                    if symmetric && i != j {
                        by_left[j].push((i, k, c.clone()));
                        by_right[i].push((j, k, c));
                    }
                }
            }
        }
        Bilinear { by_left, by_right, out_dim }
    }

    pub(crate) fn apply(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.out_dim];
        let nx = x.iter().filter(|c| !c.is_zero()).count();
        let ny = y.iter().filter(|c| !c.is_zero()).count();
        let (outer, inner, table) = if nx <= ny { (x, y, &self.by_left) } else { (y, x, &self.by_right) };
        for (i, xi) in outer.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, k, c) in &table[i] {
                let yj = &inner[*j];
                if yj.is_zero() {
                    continue;
                }
                let t = xi.mul_ref(c);
                out[*k].add_mul(&t, yj);
            }
        }
        out
    }

    /// Matrix of `y ↦ x * y`.
    pub(crate) fn left_matrix(&self, x: &[S]) -> Matrix<S> {
        let n = self.by_left.len();
        let mut m = Matrix::<S>::zeros(self.out_dim, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, k, c) in &self.by_left[i] {
                m.get_mut(*k, *j).add_mul(xi, c);
            }
        }
        m
    }
}

/// A reduced Albert algebra `H3(C, γ)` with precomputed structure tables.
#[derive(Clone)]
pub struct AlbertCtx<S> {
    gamma: [S; 3],
    /// `γ2/γ0`, `γ0/γ1`, `γ1/γ2`
    ratios: [S; 3],
    jordan: Bilinear<S>,
    cross: Bilinear<S>,
    gram: Matrix<S>,
    gram_rows: Vec<Vec<(usize, S)>>,
    gram_inverse: Matrix<S>,
}

impl<S: Scalar> fmt::Debug for AlbertCtx<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlbertCtx(γ = ({}, {}, {}))", self.gamma[0], self.gamma[1], self.gamma[2])
    }
}

type OctMat<S> = [[Oct<S>; 3]; 3];

impl<S: Scalar> AlbertCtx<S> {
    /// The split Albert algebra, `γ = (1, 1, 1)`.
    pub fn split() -> Self {
        Self::new([S::one(), S::one(), S::one()]).expect("split Albert algebra is well formed")
    }

    pub fn new(gamma: [S; 3]) -> Result<Self, AlbertError> {
        crate::cayley::validate_table()?;
        if gamma.iter().any(|g| g.is_zero()) {
            return Err(AlbertError::InvalidGamma);
        }
        let ratios = [
            gamma[2].try_div(&gamma[0])?,
            gamma[0].try_div(&gamma[1])?,
            gamma[1].try_div(&gamma[2])?,
        ];
        let mut ctx = AlbertCtx {
            gamma,
            ratios,
            jordan: Bilinear { by_left: vec![], by_right: vec![], out_dim: DIM },
            cross: Bilinear { by_left: vec![], by_right: vec![], out_dim: DIM },
            gram: Matrix::zeros(0, 0),
            gram_rows: vec![],
            gram_inverse: Matrix::zeros(0, 0),
        };

        let mut products = vec![vec![None; DIM]; DIM];
        for i in 0..DIM {
            for j in i..DIM {
                let p = ctx.jordan_mul_embedded(&AlbertElem::e(i), &AlbertElem::e(j))?;
                products[i][j] = Some(p.into_coords());
            }
        }
        ctx.jordan = Bilinear::from_fn(DIM, DIM, true, |i, j| products[i][j].clone().expect("computed above"));

        let mut gram = Matrix::<S>::zeros(DIM, DIM);
        for i in 0..DIM {
            for j in i..DIM {
                let p = products[i][j].as_ref().expect("computed above");
                let t = p[0].clone() + p[1].clone() + p[2].clone();
                if !t.is_zero() {
                    gram.set(i, j, t.clone());
                    gram.set(j, i, t);
                }
            }
        }
        ctx.gram_inverse = invert(&gram).map_err(|_| LinalgError::SingularGram)?;
        ctx.gram_rows = (0..DIM)
            .map(|i| (0..DIM).filter(|&j| !gram.get(i, j).is_zero()).map(|j| (j, gram.get(i, j).clone())).collect())
            .collect();
        ctx.gram = gram;

        // x × y = 2xy − T(x)y − T(y)x + (T(x)T(y) − T(x,y))·1
        let trace_of = |k: usize| if k < 3 { S::one() } else { S::zero() };
        let cross = Bilinear::from_fn(DIM, DIM, true, |i, j| {
            let mut out: Vec<S> = products[i][j].as_ref().expect("computed above").iter().map(|c| c.scaled(2)).collect();
            let (ti, tj) = (trace_of(i), trace_of(j));
            out[j] -= &ti;
            out[i] -= &tj;
            let s = ti.mul_ref(&tj) - ctx.gram.get(i, j).clone();
            for d in out.iter_mut().take(3) {
                *d += &s;
            }
            out
        });
        ctx.cross = cross;
        Ok(ctx)
    }

    pub fn gamma(&self) -> &[S; 3] {
        &self.gamma
    }

    pub fn is_split(&self) -> bool {
        self.gamma.iter().all(|g| g.is_one())
    }

    pub fn gram(&self) -> &Matrix<S> {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix<S> {
        &self.gram_inverse
    }

    fn embed(&self, x: &AlbertElem<S>) -> OctMat<S> {
        let (a, b, c) = (x.a(), x.b(), x.c());
        let s = |i: usize| Oct::scalar(x.eps(i).clone());
        [
            [s(0), c.clone(), b.conj().scale(&self.ratios[0])],
            [c.conj().scale(&self.ratios[1]), s(1), a.clone()],
            [b, a.conj().scale(&self.ratios[2]), s(2)],
        ]
    }

    fn read_back(&self, m: &OctMat<S>) -> Result<AlbertElem<S>, AlbertError> {
        let mut eps: [S; 3] = std::array::from_fn(|_| S::zero());
        for (i, e) in eps.iter_mut().enumerate() {
            let d = &m[i][i];
            if d.c[3] != d.c[4] || d.c.iter().enumerate().any(|(k, x)| k != 3 && k != 4 && !x.is_zero()) {
                return Err(AlbertError::ReadbackMismatch);
            }
            *e = d.c[3].clone();
        }
        let x = AlbertElem::from_parts(eps, &m[1][2], &m[2][0], &m[0][1]);
        if self.embed(&x) != *m {
            return Err(AlbertError::ReadbackMismatch);
        }
        Ok(x)
    }

    /// Jordan product through the matrix embedding; the reference route.
    pub fn jordan_mul_embedded(&self, x: &AlbertElem<S>, y: &AlbertElem<S>) -> Result<AlbertElem<S>, AlbertError> {
        let (mx, my) = (self.embed(x), self.embed(y));
        let half = S::ratio(1, 2);
        let mut out: OctMat<S> = std::array::from_fn(|_| std::array::from_fn(|_| Oct::zero()));
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Oct::zero();
                for k in 0..3 {
                    acc = acc.add(&mx[i][k].mul(&my[k][j])).add(&my[i][k].mul(&mx[k][j]));
                }
                out[i][j] = acc.scale(&half);
            }
        }
        self.read_back(&out)
    }

    pub fn jordan_mul(&self, x: &AlbertElem<S>, y: &AlbertElem<S>) -> AlbertElem<S> {
        AlbertElem { v: self.jordan.apply(&x.v, &y.v) }
    }

    pub fn trace(&self, x: &AlbertElem<S>) -> S {
        x.v[0].clone() + x.v[1].clone() + x.v[2].clone()
    }

    /// `T(x, y) = T(x·y)`, evaluated through the Gram matrix.
    pub fn trace_form(&self, x: &AlbertElem<S>, y: &AlbertElem<S>) -> S {
        let mut t = S::zero();
        for (i, xi) in x.v.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let mut r = S::zero();
            for (j, g) in &self.gram_rows[i] {
                if !y.v[*j].is_zero() {
                    r.add_mul(g, &y.v[*j]);
                }
            }
            if !r.is_zero() {
                t.add_mul(xi, &r);
            }
        }
        t
    }

    /// The covector `y ↦ T(x, y)`.
    pub fn trace_covector(&self, x: &AlbertElem<S>) -> Vec<S> {
        let mut out = vec![S::zero(); DIM];
        for (i, xi) in x.v.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, g) in &self.gram_rows[i] {
                out[*j].add_mul(xi, g);
            }
        }
        out
    }

    /// Cubic norm from `x³ − T(x)x² + S(x)x = N(x)·1`.
    pub fn norm(&self, x: &AlbertElem<S>) -> Result<S, AlbertError> {
        let x2 = self.jordan_mul(x, x);
        let x3 = self.jordan_mul(&x2, x);
        let t = self.trace(x);
        let s = (t.mul_ref(&t) - self.trace(&x2)).mul_ref(&S::ratio(1, 2));
        let mut r = x3;
        r.add_scaled(&-t, &x2);
        r.add_scaled(&s, x);
        let n = r.v[0].clone();
        if r.v[1] != n || r.v[2] != n || r.v[3..].iter().any(|c| !c.is_zero()) {
            return Err(AlbertError::NotScalarMultiple);
        }
        Ok(n)
    }

    pub fn cross(&self, x: &AlbertElem<S>, y: &AlbertElem<S>) -> AlbertElem<S> {
        AlbertElem { v: self.cross.apply(&x.v, &y.v) }
    }

    /// `x^# = ½ x × x`.
    pub fn sharp(&self, x: &AlbertElem<S>) -> AlbertElem<S> {
        self.cross(x, x).scale(&S::ratio(1, 2))
    }

    /// The `t`-coefficient of `N(x + t y)`, from exact evaluation at
    /// `t = 0, 1, −1, 2`.
    pub fn norm_derivative(&self, x: &AlbertElem<S>, y: &AlbertElem<S>) -> Result<S, AlbertError> {
        let at = |t: i64| {
            let mut z = x.clone();
            z.add_scaled(&S::from_i64(t), y);
            self.norm(&z)
        };
        let (f0, f1, fm1, f2) = (at(0)?, at(1)?, at(-1)?, at(2)?);
        let a = f1 - f0.clone();
        let b = fm1 - f0.clone();
        let c = f2 - f0;
        let n2 = (a.clone() + b.clone()).mul_ref(&S::ratio(1, 2));
        let p = (a - b).mul_ref(&S::ratio(1, 2));
        let r = (c - n2.scaled(4)).mul_ref(&S::ratio(1, 2));
        let n3 = (r - p.clone()).mul_ref(&S::ratio(1, 3));
        Ok(p - n3)
    }

    /// `x^#` as the dual of the derivative of `N` at `x`; the reference route.
    pub fn sharp_by_derivative(&self, x: &AlbertElem<S>) -> Result<AlbertElem<S>, AlbertError> {
        let f = (0..DIM).map(|i| self.norm_derivative(x, &AlbertElem::e(i))).collect::<Result<Vec<_>, _>>()?;
        Ok(AlbertElem { v: dual_solve(&self.gram, &f)? })
    }

    /// Matrix of `y ↦ x × y`.
    pub fn cross_matrix(&self, x: &AlbertElem<S>) -> Matrix<S> {
        self.cross.left_matrix(&x.v)
    }

    /// Matrix of `y ↦ x · y`.
    pub fn jordan_matrix(&self, x: &AlbertElem<S>) -> Matrix<S> {
        self.jordan.left_matrix(&x.v)
    }

    /// `⟨x, y⟩ j = ½ (y × (x × j) − T(j, y) x − ⅓ T(x, y) j)`.
    pub fn bracket_apply(&self, x: &AlbertElem<S>, y: &AlbertElem<S>, j: &AlbertElem<S>) -> AlbertElem<S> {
        let mut out = self.cross(y, &self.cross(x, j));
        out.add_scaled(&-self.trace_form(j, y), x);
        out.add_scaled(&-(self.trace_form(x, y).mul_ref(&S::ratio(1, 3))), j);
        out.scale(&S::ratio(1, 2))
    }

    pub fn bracket(&self, x: &AlbertElem<S>, y: &AlbertElem<S>) -> LinearMap<S> {
        let cx = self.cross_matrix(x);
        let cy = self.cross_matrix(y);
        let mut m = cy.mul(&cx).expect("square matrices");
        let gy = self.trace_covector(y);
        for k in 0..DIM {
            if x.v[k].is_zero() {
                continue;
            }
            for (j, g) in gy.iter().enumerate() {
                if !g.is_zero() {
                    m.get_mut(k, j).sub_mul(&x.v[k], g);
                }
            }
        }
        let t = self.trace_form(x, y).mul_ref(&S::ratio(1, 3));
        for k in 0..DIM {
            *m.get_mut(k, k) -= &t;
        }
        LinearMap::new(m.scale(&S::ratio(1, 2))).expect("square")
    }

    /// `f* = G⁻¹ fᵀ G`.
    pub fn adjoint(&self, f: &LinearMap<S>) -> LinearMap<S> {
        let m = self.gram_inverse.mul(&f.matrix().transpose()).and_then(|m| m.mul(&self.gram)).expect("27×27");
        LinearMap::new(m).expect("square")
    }

    /// `f† = (f⁻¹)*`.
    pub fn dagger(&self, f: &LinearMap<S>) -> Result<LinearMap<S>, AlbertError> {
        Ok(self.adjoint(&f.inverse()?))
    }

    /// `ψ_λ(ε; a, b, c) = (λε0, λε1, λ⁻¹ε2; a, b, λc)`, a norm similarity with multiplier `λ`.
    pub fn psi_similarity(&self, lambda: &S) -> Result<LinearMap<S>, AlbertError> {
        if lambda.is_zero() {
            return Err(AlbertError::InvalidMultiplier);
        }
        let inv = lambda.inverse()?;
        let diag: Vec<S> = (0..DIM)
            .map(|k| match k {
                0 | 1 => lambda.clone(),
                2 => inv.clone(),
                k if k >= C => lambda.clone(),
                _ => S::one(),
            })
            .collect();
        Ok(LinearMap::new(Matrix::from_diagonal(&diag))?)
    }

    /// `S_λ(ε; a, b, c) = (λ0⁻²ε0, λ1⁻²ε1, λ2⁻²ε2; λ0 a, λ1 b, λ2 c)` for `λ0λ1λ2 = 1`.
    pub fn diag_similarity(&self, lambda: &[S; 3]) -> Result<LinearMap<S>, AlbertError> {
        let prod = lambda[0].mul_ref(&lambda[1]).mul_ref(&lambda[2]);
        if !prod.is_one() {
            return Err(AlbertError::InvalidMultiplier);
        }
        let inv2: Vec<S> = lambda.iter().map(|l| l.inverse().map(|i| i.mul_ref(&i))).collect::<Result<_, _>>()?;
        let diag: Vec<S> = (0..DIM)
            .map(|k| match k {
                0..=2 => inv2[k].clone(),
                k if k < B => lambda[0].clone(),
                k if k < C => lambda[1].clone(),
                _ => lambda[2].clone(),
            })
            .collect();
        Ok(LinearMap::new(Matrix::from_diagonal(&diag))?)
    }

    pub fn apply_map(&self, f: &LinearMap<S>, x: &AlbertElem<S>) -> AlbertElem<S> {
        AlbertElem { v: f.apply(&x.v) }
    }

    pub fn is_rank_one(&self, d: &AlbertElem<S>) -> bool {
        !d.is_zero() && self.sharp(d).is_zero()
    }

    /// One draw of the rank-one sampler: choose `ε0` so that `N(x) = 0`, then
    /// return `x^#`.
    pub fn try_random_rank_one<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        sample: &mut dyn FnMut(&mut R) -> S,
    ) -> Result<AlbertElem<S>, AlbertError> {
        let mut x = AlbertElem::random(rng, |r| sample(r));
        x.v[0] = S::zero();
        let n0 = self.norm(&x)?;
        x.v[0] = S::one();
        let slope = self.norm(&x)? - n0.clone();
        if slope.is_zero() {
            return Err(AlbertError::SamplerDegenerate);
        }
        x.v[0] = -n0.try_div(&slope)?;
        let d = self.sharp(&x);
        if d.is_zero() {
            return Err(AlbertError::SamplerDegenerate);
        }
        Ok(d)
    }

    /// Rank-one element from the sampler, resampling degenerate draws.
    pub fn random_rank_one<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        sample: &mut dyn FnMut(&mut R) -> S,
    ) -> Result<AlbertElem<S>, AlbertError> {
        let mut last = AlbertError::SamplerDegenerate;
        for _ in 0..32 {
            match self.try_random_rank_one(rng, sample) {
                Ok(d) => return Ok(d),
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    /// The hyperline `d × J`.
    pub fn hyperline(&self, d: &AlbertElem<S>) -> Result<Subspace<S>, AlbertError> {
        if !self.is_rank_one(d) {
            return Err(AlbertError::NotRankOne);
        }
        Ok(Subspace::column_space(&self.cross_matrix(d)))
    }

    pub fn elems(&self, w: &Subspace<S>) -> Vec<AlbertElem<S>> {
        w.basis_vectors().into_iter().map(|v| AlbertElem { v }).collect()
    }

    pub fn span(&self, elems: &[AlbertElem<S>]) -> Subspace<S> {
        Subspace::span(DIM, elems.iter().map(|e| e.v.clone()).collect()).expect("27 coordinates")
    }

    /// Every element of `W` has rank at most one.
    pub fn is_totally_singular(&self, w: &Subspace<S>) -> bool {
        if w.ambient_dim() != DIM {
            return false;
        }
        let basis = self.elems(w);
        for (i, x) in basis.iter().enumerate() {
            if !self.sharp(x).is_zero() {
                return false;
            }
            for y in &basis[i + 1..] {
                if !self.cross(x, y).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// `{ j : ⟨w, j⟩ = 0 for all w ∈ W }`.
    pub fn duality_map(&self, w: &Subspace<S>) -> Result<Subspace<S>, AlbertError> {
        if w.ambient_dim() != DIM {
            return Err(LinalgError::AmbientMismatch(w.ambient_dim(), DIM).into());
        }
        // For fixed w, the coefficient of y_m in the k-th coordinate of
        // 2⟨w, y⟩ e_j is (e_m × (w × e_j))_k − T(e_j, e_m) w_k − ⅓ T(w, e_m) δ_jk.
        let mut reducer = RowReducer::new(DIM);
        let third = S::ratio(1, 3);
        for x in self.elems(w) {
            let cw = self.cross_matrix(&x);
            let tw = self.trace_covector(&x);
            for j in 0..DIM {
                let vj = AlbertElem { v: cw.column(j) };
                let cv = self.cross_matrix(&vj);
                for k in 0..DIM {
                    let mut row = cv.row(k).to_vec();
                    if !x.v[k].is_zero() {
                        for (m, g) in &self.gram_rows[j] {
                            row[*m].sub_mul(g, &x.v[k]);
                        }
                    }
                    if j == k {
                        for (r, t) in row.iter_mut().zip(&tw) {
                            if !t.is_zero() {
                                r.sub_mul(&third, t);
                            }
                        }
                    }
                    reducer.push(row);
                    if reducer.rank() == DIM {
                        return Ok(Subspace::zero(DIM));
                    }
                }
            }
        }
        Ok(reducer.kernel())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::{One, Zero};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;
    type E = AlbertElem<Q>;

    fn u(i: usize) -> Oct<Q> {
        Oct::basis(i - 1)
    }

    fn off(a: Oct<Q>, b: Oct<Q>, c: Oct<Q>) -> E {
        E::from_parts([Q::zero(), Q::zero(), Q::zero()], &a, &b, &c)
    }

    fn small(rng: &mut ChaCha8Rng) -> Q {
        Q::from_integer(rng.gen_range(-3..=3))
    }

    fn ctxs() -> Vec<AlbertCtx<Q>> {
        vec![AlbertCtx::split(), AlbertCtx::new([Q::from_integer(2), Q::from_integer(-3), Q::from_integer(5)]).unwrap()]
    }

    #[test]
    fn gamma_must_be_nonzero() {
        assert_eq!(AlbertCtx::new([Q::one(), Q::zero(), Q::one()]).err(), Some(AlbertError::InvalidGamma));
    }

    #[test]
    fn jordan_examples() {
        let ctx = AlbertCtx::<Q>::split();
        assert_eq!(ctx.jordan_mul(&E::e(0), &E::e(0)), E::e(0));
        assert!(ctx.jordan_mul(&E::e(0), &E::e(1)).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = E::random(&mut rng, small);
        assert_eq!(ctx.jordan_mul(&E::one(), &x), x);
    }

    #[test]
    fn trace_examples() {
        let ctx = AlbertCtx::<Q>::split();
        assert_eq!(ctx.trace(&E::one()), Q::from_integer(3));
        assert_eq!(ctx.trace_form(&E::e(0), &E::e(0)), Q::one());
    }

    #[test]
    fn norm_examples() {
        let ctx = AlbertCtx::<Q>::split();
        assert_eq!(ctx.norm(&E::one()).unwrap(), Q::one());
        let d = E::diag(Q::from_integer(2), Q::from_integer(-3), Q::new(1, 5));
        assert_eq!(ctx.norm(&d).unwrap(), Q::new(-6, 5));
        assert_eq!(ctx.norm(&E::e(1).add(&E::e(2))).unwrap(), Q::zero());
    }

    #[test]
    fn sharp_examples() {
        for ctx in ctxs() {
            assert_eq!(ctx.sharp(&E::e(1).add(&E::e(2))), E::e(0));
            assert_eq!(ctx.sharp(&E::one()), E::one());
        }
        let ctx = AlbertCtx::<Q>::split();
        let j = off(u(1), Oct::zero(), u(4).neg());
        assert_eq!(ctx.sharp(&j), off(Oct::zero(), u(1), Oct::zero()));
        assert_eq!(ctx.sharp_by_derivative(&j).unwrap(), off(Oct::zero(), u(1), Oct::zero()));
    }

    #[test]
    fn cross_examples() {
        let ctx = AlbertCtx::<Q>::split();
        assert!(ctx.cross(&E::e(0), &E::e(0)).is_zero());
        assert_eq!(ctx.cross(&E::e(1), &E::e(2)), E::e(0));
    }

    #[test]
    fn rank_one_examples() {
        let ctx = AlbertCtx::<Q>::split();
        assert!(ctx.is_rank_one(&E::e(0)));
        assert!(ctx.is_rank_one(&off(Oct::zero(), u(1), Oct::zero())));
        assert!(!ctx.is_rank_one(&E::one()));
        assert!(!ctx.is_rank_one(&E::zero()));
    }

    #[test]
    fn hyperline_of_e0() {
        let ctx = AlbertCtx::<Q>::split();
        let h = ctx.hyperline(&E::e(0)).unwrap();
        let expected: Vec<E> = [1, 2].into_iter().map(E::e).chain((A..B).map(E::e)).collect();
        assert_eq!(h, ctx.span(&expected));
        assert_eq!(h.dim(), 10);
        assert_eq!(ctx.hyperline(&E::one()).err(), Some(AlbertError::NotRankOne));
        assert_eq!(ctx.hyperline(&E::e(0).scale(&Q::from_integer(-7))).unwrap(), h);
    }

    #[test]
    fn totally_singular_examples() {
        let ctx = AlbertCtx::<Q>::split();
        assert!(ctx.is_totally_singular(&ctx.span(&[E::e(0)])));
        let w = ctx.span(&[off(u(1), Oct::zero(), Oct::zero()), off(Oct::zero(), u(2), Oct::zero()), off(Oct::zero(), Oct::zero(), u(5))]);
        assert!(ctx.is_totally_singular(&w));
        assert!(!ctx.is_totally_singular(&ctx.span(&[E::e(0), E::e(1)])));
    }

    #[test]
    fn bracket_matches_displayed_formula_up_to_factor_two() {
        let ctx = AlbertCtx::<Q>::split();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let jp = E::random(&mut rng, small);
            let ap = Oct::random(&mut rng, small);
            let got = ctx.bracket_apply(&E::e(0), &jp, &off(ap.clone(), Oct::zero(), Oct::zero()));
            let (b, c) = (jp.b(), jp.c());
            let displayed = off(
                ap.scale(&(jp.eps(0).clone() * Q::new(2, 3))),
                ap.star(&c).neg(),
                b.star(&ap).neg(),
            );
            assert_eq!(got.scale(&Q::from_integer(2)), displayed);
            let m = ctx.bracket(&E::e(0), &jp);
            assert_eq!(ctx.apply_map(&m, &off(ap, Oct::zero(), Oct::zero())), got);
        }
    }

    #[test]
    fn bracket_of_isotropic_vector_vanishes() {
        let ctx = AlbertCtx::<Q>::split();
        let x = off(u(1), Oct::zero(), Oct::zero());
        assert_eq!(ctx.trace_form(&x, &x), Q::zero());
        assert!(ctx.bracket(&x, &x).matrix().is_zero());
    }

    #[test]
    fn duality_examples() {
        let ctx = AlbertCtx::<Q>::split();
        let fe0 = ctx.span(&[E::e(0)]);
        let h = ctx.hyperline(&E::e(0)).unwrap();
        assert_eq!(ctx.duality_map(&fe0).unwrap(), h);
        assert_eq!(ctx.duality_map(&h).unwrap(), fe0);

        let w = ctx.span(&[E::e(2), off(u(1), Oct::zero(), Oct::zero())]);
        assert!(ctx.is_totally_singular(&w));
        let mut wp = vec![E::e(0)];
        for i in 1..=8 {
            let c = u(i).star(&u(1));
            if !c.is_zero() {
                wp.push(off(Oct::zero(), Oct::zero(), c));
            }
        }
        let wp = ctx.span(&wp);
        assert_eq!(wp.dim(), 5);
        assert_eq!(ctx.duality_map(&w).unwrap(), wp);
        assert_eq!(ctx.duality_map(&wp).unwrap(), w);

        let mut six = vec![E::e(2), off(Oct::zero(), u(1), Oct::zero())];
        for i in 1..=8 {
            let a = u(i).star(&u(1));
            if !a.is_zero() {
                six.push(off(a, Oct::zero(), Oct::zero()));
            }
        }
        let six = ctx.span(&six);
        assert_eq!(six.dim(), 6);
        assert!(ctx.is_totally_singular(&six));
        assert!(ctx.duality_map(&six).unwrap().is_zero());
    }

    #[test]
    fn embedded_and_tabulated_products_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for ctx in ctxs() {
            for _ in 0..10 {
                let x = E::random(&mut rng, small);
                let y = E::random(&mut rng, small);
                assert_eq!(ctx.jordan_mul_embedded(&x, &y).unwrap(), ctx.jordan_mul(&x, &y));
            }
        }
    }

    #[test]
    fn sharp_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for ctx in ctxs() {
            for _ in 0..4 {
                let x = E::random(&mut rng, small);
                assert_eq!(ctx.sharp_by_derivative(&x).unwrap(), ctx.sharp(&x));
            }
        }
    }

    #[test]
    fn similarities() {
        let ctx = AlbertCtx::<Q>::split();
        let two = Q::from_integer(2);
        let psi = ctx.psi_similarity(&two).unwrap();
        assert_eq!(ctx.norm(&ctx.apply_map(&psi, &E::one())).unwrap(), two);
        assert_eq!(ctx.psi_similarity(&Q::zero()).err(), Some(AlbertError::InvalidMultiplier));
        let bad = [Q::one(), Q::one(), two.clone()];
        assert_eq!(ctx.diag_similarity(&bad).err(), Some(AlbertError::InvalidMultiplier));

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let lam = [Q::new(2, 3), Q::from_integer(-5), Q::new(-3, 10)];
        let s = ctx.diag_similarity(&lam).unwrap();
        let psi_dag = ctx.dagger(&psi).unwrap();
        for _ in 0..5 {
            let x = E::random(&mut rng, small);
            let y = E::random(&mut rng, small);
            assert_eq!(ctx.norm(&ctx.apply_map(&s, &x)).unwrap(), ctx.norm(&x).unwrap());
            let lhs = ctx.cross(&ctx.apply_map(&psi, &x), &ctx.apply_map(&psi, &y));
            let rhs = ctx.apply_map(&psi_dag, &ctx.cross(&x, &y)).scale(&two);
            assert_eq!(lhs, rhs);
            // ψ† has multiplier 1/λ
            assert_eq!(ctx.norm(&ctx.apply_map(&psi_dag, &x)).unwrap(), ctx.norm(&x).unwrap() * Q::new(1, 2));
        }
        assert_eq!(ctx.adjoint(&LinearMap::identity(DIM)), LinearMap::identity(DIM));
    }

    #[test]
    fn sampled_rank_one_elements_have_ten_dimensional_hyperlines() {
        let ctx = AlbertCtx::<Q>::split();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut sample = |r: &mut ChaCha8Rng| Q::from_integer(r.gen_range(-2..=2));
        for _ in 0..20 {
            let d = ctx.random_rank_one(&mut rng, &mut sample).unwrap();
            assert!(ctx.is_rank_one(&d));
            assert_eq!(ctx.hyperline(&d).unwrap().dim(), 10);
        }
    }
}
