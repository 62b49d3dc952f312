//! Singular elements, inner ideals and singular ideals of a Brown algebra.
//!
//! A subspace `I` is an inner ideal when `U_e B ⊆ I` for every `e ∈ I`, and a
//! singular ideal when in addition every nonzero element is singular. Since
//! `U_e` is quadratic in `e`, the quantifier over `e ∈ I` is replaced by the
//! basis elements and their pairwise polarizations.

use num_traits::Zero;
use rand::Rng;

use crate::albert::{AlbertCtx, AlbertElem};
use crate::brown::{brace, BrownAlgebra, BrownCtx, BrownElem, BrownError, QuadBrown, TripleSystem, DIM};
use crate::cayley::Oct;
use crate::flags;
use crate::linalg::{LinalgError, LinearMap, RowReducer, Subspace};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error("U-criterion says inner={u_says}, t-criterion says inner={t_says}")]
    CriteriaDisagree { u_says: bool, t_says: bool },
    #[error("expected a subspace of dimension-{expected} space, got ambient {got}")]
    WrongAmbient { expected: usize, got: usize },
    #[error(transparent)]
    Brown(#[from] BrownError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone)]
pub struct IdealReport<U: Scalar, F: Scalar> {
    pub subspace: Subspace<F>,
    pub is_inner: bool,
    pub is_singular: bool,
    pub dim: usize,
    /// An image escaping `I` when not inner; a nonsingular element of `I`
    /// when inner but not singular.
    pub witness: Option<BrownElem<U>>,
}

/// `U_{e,f} x = {e, x, f} + {f, x, e}`, so that `U_{e,e} = 2 U_e`.
pub fn u_polar<A: BrownAlgebra>(
    alg: &A,
    e: &BrownElem<A::Up>,
    f: &BrownElem<A::Up>,
    x: &BrownElem<A::Up>,
) -> BrownElem<A::Up> {
    brace(alg, e, x, f).add(&brace(alg, f, x, e))
}

/// Whether `y ∈ F·e` for `e ≠ 0`, comparing ground-field coordinates.
fn on_line<F: Scalar>(e: &[F], y: &[F]) -> bool {
    let Some(k) = e.iter().position(|c| !c.is_zero()) else {
        return y.iter().all(|c| c.is_zero());
    };
    let lam = y[k].try_div(&e[k]).expect("pivot is nonzero");
    e.iter().zip(y).all(|(a, b)| *b == lam.mul_ref(a))
}

/// `e ≠ 0` and `U_e B ⊆ F e`.
pub fn is_singular_element<A: BrownAlgebra>(alg: &A, e: &BrownElem<A::Up>) -> bool {
    if e.is_zero() {
        return false;
    }
    let Ok(ec) = alg.coords(e) else {
        return false;
    };
    alg.basis().iter().all(|x| match alg.coords(&brace(alg, e, x, e)) {
        Ok(y) => on_line(&ec, &y),
        Err(_) => false,
    })
}

/// The four conditions characterizing singular `(α, j, j′, β)` when `ζ = 1`:
/// `T(j, j′) = 3αβ`, `j′# = αj`, `j# = βj′`, `⟨j, j′⟩ = 0`.
pub fn singularity_conditions<S: Scalar>(ctx: &BrownCtx<S>, e: &BrownElem<S>) -> Result<[bool; 4], BrownError> {
    if !ctx.zeta().is_one() {
        return Err(BrownError::VariantMismatch);
    }
    let a = ctx.albert();
    let ab = e.alpha.mul_ref(&e.beta);
    Ok([
        a.trace_form(&e.j, &e.jp) == ab.clone() + ab.clone() + ab,
        a.sharp(&e.jp) == e.j.scale(&e.alpha),
        a.sharp(&e.j) == e.jp.scale(&e.beta),
        a.bracket(&e.j, &e.jp).matrix().is_zero(),
    ])
}

fn check_ambient<F: Scalar>(i: &Subspace<F>) -> Result<(), IdealError> {
    if i.ambient_dim() != DIM {
        return Err(IdealError::WrongAmbient { expected: DIM, got: i.ambient_dim() });
    }
    Ok(())
}

fn elements<A: BrownAlgebra>(alg: &A, i: &Subspace<A::Field>) -> Result<Vec<BrownElem<A::Up>>, IdealError> {
    Ok(i.basis_vectors().iter().map(|v| alg.from_coords(v)).collect::<Result<_, _>>()?)
}

/// First polarized `U` image of a basis pair escaping `I`, if any.
fn u_escape<A: BrownAlgebra>(
    alg: &A,
    elems: &[BrownElem<A::Up>],
    basis: &[BrownElem<A::Up>],
    i: &Subspace<A::Field>,
) -> Result<Option<BrownElem<A::Up>>, IdealError> {
    for (p, e) in elems.iter().enumerate() {
        for f in &elems[..=p] {
            for x in basis {
                let y = u_polar(alg, e, f, x);
                if !i.contains(&alg.coords(&y)?) {
                    return Ok(Some(y));
                }
            }
        }
    }
    Ok(None)
}

/// Outcome of scanning `t(u, v, z)` over basis pairs of `I` and all basis `z`.
/// With `singular_only` the scan stops at the first failure of the singular identity.
struct TScan<U> {
    inner: bool,
    singular: bool,
    /// A basis pair on which the singular identity fails.
    bad_pair: Option<(usize, usize)>,
    escape: Option<BrownElem<U>>,
}

fn t_scan<A: BrownAlgebra>(
    ts: &TripleSystem<'_, A>,
    elems: &[BrownElem<A::Up>],
    i: &Subspace<A::Field>,
    singular_only: bool,
) -> Result<TScan<A::Up>, IdealError> {
    let alg = ts.algebra();
    let basis = alg.basis();
    let ecs: Vec<Vec<A::Field>> = elems.iter().map(|e| alg.coords(e)).collect::<Result<_, _>>()?;
    let zcs: Vec<Vec<A::Field>> = basis.iter().map(|z| alg.coords(z)).collect::<Result<_, _>>()?;
    let mut scan = TScan { inner: true, singular: true, bad_pair: None, escape: None };
    for p in 0..elems.len() {
        for q in 0..=p {
            for (z, zc) in basis.iter().zip(&zcs) {
                let t = ts.t_with_coords(&elems[p], &elems[q], z, &ecs[p], &ecs[q], zc);
                let tc = alg.coords(&t)?;
                if scan.singular {
                    let mut r = t.clone();
                    r.add_scaled(&-alg.lift(&ts.b_coords(zc, &ecs[q])), &elems[p]);
                    r.add_scaled(&-alg.lift(&ts.b_coords(zc, &ecs[p])), &elems[q]);
                    if !r.is_zero() {
                        scan.singular = false;
                        scan.bad_pair = Some((p, q));
                        if singular_only {
                            return Ok(scan);
                        }
                    }
                }
                if !i.contains(&tc) {
                    scan.inner = false;
                    scan.singular = false;
                    scan.escape = Some(t);
                    return Ok(scan);
                }
            }
        }
    }
    Ok(scan)
}

/// Inner-ideal test by the `U` criterion, cross-checked against `t(I, I, B) ⊆ I`.
pub fn is_inner_ideal<A: BrownAlgebra>(
    ts: &TripleSystem<'_, A>,
    i: &Subspace<A::Field>,
) -> Result<IdealReport<A::Up, A::Field>, IdealError> {
    check_ambient(i)?;
    let alg = ts.algebra();
    let elems = elements(alg, i)?;
    let escape = u_escape(alg, &elems, &alg.basis(), i)?;
    let scan = t_scan(ts, &elems, i, false)?;
    if escape.is_none() != scan.inner {
        return Err(IdealError::CriteriaDisagree { u_says: escape.is_none(), t_says: scan.inner });
    }
    let is_inner = scan.inner;
    let is_singular = is_inner && scan.singular;
    let witness = match (escape, scan.bad_pair) {
        (Some(y), _) => Some(y),
        (None, Some((p, q))) if !is_singular => {
            let sum = elems[p].add(&elems[q]);
            [elems[p].clone(), elems[q].clone(), sum].into_iter().find(|e| !is_singular_element(alg, e))
        }
        _ => None,
    };
    Ok(IdealReport { subspace: i.clone(), is_inner, is_singular, dim: i.dim(), witness })
}

/// `t(u, v, z) = b(z, v) u + b(z, u) v` on basis triples.
pub fn is_singular_ideal<A: BrownAlgebra>(ts: &TripleSystem<'_, A>, i: &Subspace<A::Field>) -> Result<bool, IdealError> {
    check_ambient(i)?;
    if i.is_zero() {
        return Ok(true);
    }
    let elems = elements(ts.algebra(), i)?;
    let scan = t_scan(ts, &elems, i, true)?;
    Ok(scan.singular)
}

/// Basis elements gathered by [`inner_closure`], in discovery order.
struct Closure<A: BrownAlgebra> {
    elems: Vec<BrownElem<A::Up>>,
    reducer: RowReducer<A::Field>,
}

impl<A: BrownAlgebra> Closure<A> {
    fn push(&mut self, alg: &A, y: BrownElem<A::Up>) -> Result<(), IdealError> {
        if self.reducer.push(alg.coords(&y)?) {
            self.elems.push(y);
        }
        Ok(())
    }

    fn full(&self) -> bool {
        self.reducer.rank() == DIM
    }
}

/// Smallest inner ideal containing `generators`.
///
/// Pairs of basis elements are processed once each, in discovery order. Once
/// the span exceeds 12 dimensions, `U_e B` for a combination `e` of the basis
/// found so far is added as well; these vectors lie in any inner ideal
/// containing the generators, and usually finish the run at full rank.
pub fn inner_closure<A: BrownAlgebra>(alg: &A, generators: &[BrownElem<A::Up>]) -> Result<Subspace<A::Field>, IdealError> {
    let basis = alg.basis();
    let mut cl: Closure<A> = Closure { elems: Vec::new(), reducer: RowReducer::new(DIM) };
    for g in generators {
        cl.push(alg, g.clone())?;
    }
    let mut jumped = false;
    let mut p = 0;
    while p < cl.elems.len() && !cl.full() {
        if !jumped && cl.elems.len() > 12 {
            jumped = true;
            let mut e = BrownElem::zero();
            for (k, v) in cl.elems.iter().enumerate() {
                e.add_scaled(&alg.lift(&A::Field::from_i64(k as i64 + 1)), v);
            }
            for x in &basis {
                cl.push(alg, brace(alg, &e, x, &e))?;
                if cl.full() {
                    break;
                }
            }
        }
        let e = cl.elems[p].clone();
        for q in 0..=p {
            let f = cl.elems[q].clone();
            for x in &basis {
                cl.push(alg, u_polar(alg, &e, &f, x))?;
                if cl.full() {
                    break;
                }
            }
        }
        p += 1;
    }
    Ok(cl.reducer.row_space())
}

/// `(α, 0, j′, 0)` for `α ∈ F` and `j′ ∈ V`.
pub fn singular_family_ideal<S: Scalar>(v: &Subspace<S>) -> Subspace<S> {
    let mut rows = vec![BrownElem::diag(S::one(), S::zero()).coords()];
    for w in v.basis_vectors() {
        let j = AlbertElem::from_coords(w).expect("27 coordinates");
        rows.push(BrownElem::new(S::zero(), AlbertElem::zero(), j, S::zero()).coords());
    }
    Subspace::span(DIM, rows).expect("56 coordinates")
}

/// `(F, F d, d × J, 0)` for rank-one `d`.
pub fn nonsingular_ideal<S: Scalar>(a: &AlbertCtx<S>, d: &AlbertElem<S>) -> Result<Subspace<S>, IdealError> {
    let h = a.hyperline(d).map_err(BrownError::from)?;
    let mut rows = vec![
        BrownElem::diag(S::one(), S::zero()).coords(),
        BrownElem::new(S::zero(), d.clone(), AlbertElem::zero(), S::zero()).coords(),
    ];
    for w in h.basis_vectors() {
        let j = AlbertElem::from_coords(w).expect("27 coordinates");
        rows.push(BrownElem::new(S::zero(), AlbertElem::zero(), j, S::zero()).coords());
    }
    Ok(Subspace::span(DIM, rows)?)
}

/// The six-dimensional singular ideal `{(0, w, ι w, 0) : w ∈ W ⊗ Δ}` with
/// `W = (0,0,0; F u1, F u2, F u5)`.
pub fn i6_ideal(alg: &QuadBrown) -> Subspace<Rational> {
    let w = flags::self_dual_space::<Rational>();
    let mut rows = Vec::new();
    for v in w.basis_vectors() {
        for im in [false, true] {
            let mut c = vec![Rational::zero(); DIM];
            for (k, x) in v.iter().enumerate() {
                c[2 + k + if im { crate::albert::DIM } else { 0 }] = x.clone();
            }
            debug_assert!(alg.from_coords(&c).is_ok());
            rows.push(c);
        }
    }
    Subspace::span(DIM, rows).expect("56 coordinates")
}

/// The singular ideals `(F, 0, V, 0)` of dimensions 1 through 7 and the
/// 12-dimensional ideal for `d = e0`.
pub fn canonical_ideals<S: Scalar>(ctx: &BrownCtx<S>) -> Result<Vec<(String, Subspace<S>)>, IdealError> {
    let mut out = Vec::new();
    for (k, v) in flags::totally_singular_chain::<S>().into_iter().enumerate() {
        out.push((format!("singular{}", k + 1), singular_family_ideal(&v)));
    }
    out.push(("nonsingular12".to_string(), nonsingular_ideal(ctx.albert(), &AlbertElem::e(0))?));
    Ok(out)
}

/// One letter of a word in the transformations `φ_k`, `ψ_k`, `f_{ψ_λ}`.
#[derive(Debug, Clone, PartialEq)]
pub enum Letter<S: Scalar> {
    Phi(AlbertElem<S>),
    Psi(AlbertElem<S>),
    FPsi(S),
}

/// A product of letters acting on `B(J, F×F)` with `ζ = 1`; the last letter acts first.
#[derive(Debug, Clone)]
pub struct GroupWord<S: Scalar> {
    pub letters: Vec<Letter<S>>,
    fpsi: Vec<Option<LinearMap<S>>>,
}

impl<S: Scalar> GroupWord<S> {
    pub fn new(ctx: &BrownCtx<S>, letters: Vec<Letter<S>>) -> Result<Self, BrownError> {
        let fpsi = letters
            .iter()
            .map(|l| match l {
                Letter::FPsi(lam) => {
                    let psi = ctx.albert().psi_similarity(lam)?;
                    ctx.f_phi(&psi, lam).map(Some)
                }
                _ => Ok(None),
            })
            .collect::<Result<_, _>>()?;
        Ok(GroupWord { letters, fpsi })
    }

    /// A word of `len` letters with sparse `k` (two or three entries in
    /// `{±1, ±2}`) and `λ ∈ {±1, ±2, ±1/2}`.
    pub fn random<R: Rng + ?Sized>(ctx: &BrownCtx<S>, rng: &mut R, len: usize) -> Result<Self, BrownError> {
        let mut letters = Vec::with_capacity(len);
        for _ in 0..len {
            let letter = match rng.gen_range(0..3) {
                0 | 1 => {
                    let mut v = vec![S::zero(); crate::albert::DIM];
                    for _ in 0..rng.gen_range(2..=3) {
                        let k = rng.gen_range(0..crate::albert::DIM);
                        let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
                        v[k] = S::from_i64(c);
                    }
                    let k = AlbertElem::from_coords(v)?;
                    if letters.len() % 2 == 0 {
                        Letter::Phi(k)
                    } else {
                        Letter::Psi(k)
                    }
                }
                _ => {
                    let (p, q) = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)][rng.gen_range(0..6)];
                    Letter::FPsi(S::ratio(p, q))
                }
            };
            letters.push(letter);
        }
        Self::new(ctx, letters)
    }

    pub fn apply(&self, ctx: &BrownCtx<S>, x: &BrownElem<S>) -> Result<BrownElem<S>, BrownError> {
        let mut y = x.clone();
        for (l, f) in self.letters.iter().zip(&self.fpsi).rev() {
            y = match (l, f) {
                (Letter::Phi(k), _) => ctx.phi(k, &y)?,
                (Letter::Psi(k), _) => ctx.psi(k, &y)?,
                (Letter::FPsi(_), Some(f)) => ctx.apply(f, &y),
                (Letter::FPsi(_), None) => unreachable!("built in new"),
            };
        }
        Ok(y)
    }

    pub fn apply_subspace(&self, ctx: &BrownCtx<S>, w: &Subspace<S>) -> Result<Subspace<S>, IdealError> {
        let rows = w
            .basis_vectors()
            .iter()
            .map(|v| Ok(self.apply(ctx, &BrownElem::from_coords(v)?)?.coords()))
            .collect::<Result<Vec<_>, BrownError>>()?;
        Ok(Subspace::span(DIM, rows)?)
    }
}

/// A rank-one element: a diagonal idempotent, a single octonion unit off the
/// diagonal, or a draw from the rank-one sampler.
pub fn sample_rank_one<S: Scalar, R: Rng + ?Sized>(a: &AlbertCtx<S>, rng: &mut R) -> AlbertElem<S> {
    loop {
        let d = match rng.gen_range(0..3) {
            0 => AlbertElem::e(rng.gen_range(0..3)),
            1 => {
                let i = rng.gen_range(0..8);
                let u = Oct::basis(i);
                let mut parts = [Oct::zero(), Oct::zero(), Oct::zero()];
                parts[rng.gen_range(0..3)] = u;
                AlbertElem::from_parts([S::zero(), S::zero(), S::zero()], &parts[0], &parts[1], &parts[2])
            }
            _ => match a.random_rank_one(rng, &mut |r: &mut R| S::from_i64(r.gen_range(-2..=2))) {
                Ok(d) => d,
                Err(_) => continue,
            },
        };
        if a.is_rank_one(&d) {
            return d;
        }
    }
}

/// Where a closure run started from and where it ended.
#[derive(Debug, Clone)]
pub struct CorpusRun {
    pub label: String,
    pub dim: usize,
    pub singular: bool,
}

impl CorpusRun {
    pub fn proper(&self) -> bool {
        self.dim < DIM
    }

    /// Proper closures are singular of dimension at most 7 or nonsingular of dimension 12.
    pub fn within_bounds(&self) -> bool {
        !self.proper() || (self.singular && self.dim <= 7) || (!self.singular && self.dim == 12)
    }
}

/// Closures of `n` seed sets: a canonical ideal (the `(F, 0, V, 0)` family,
/// the 12-dimensional example, or a flag space `W_j`) plus one extra element,
/// all moved by a random group word of length at most 2. The extra element is
/// a singular corner element, a translate of `diag(0,1)`, a generic element,
/// or a random element of one of the larger ideals.
pub fn closure_corpus<S: Scalar, R: Rng + ?Sized>(
    ts: &TripleSystem<'_, BrownCtx<S>>,
    rng: &mut R,
    n: usize,
) -> Result<Vec<CorpusRun>, IdealError> {
    let ctx = ts.algebra();
    let mut bases = canonical_ideals(ctx)?;
    for (j, w) in flags::e7_spaces::<S>().into_iter().enumerate() {
        bases.push((format!("W{}", j + 1), w));
    }
    let big: Vec<Subspace<S>> = [7, bases.len() - 1, 6].iter().map(|&k| bases[k].1.clone()).collect();
    let mut runs = Vec::with_capacity(n);
    for s in 0..n {
        let (name, base) = &bases[s % bases.len()];
        let kind = (s / bases.len() + s) % 8;
        let z = S::zero;
        let extra = match kind {
            0 => BrownElem::new(z(), sample_rank_one(ctx.albert(), rng), AlbertElem::zero(), z()),
            1 => BrownElem::new(z(), AlbertElem::zero(), sample_rank_one(ctx.albert(), rng), z()),
            2 => BrownElem::diag(S::one(), z()),
            3 => GroupWord::random(ctx, rng, 1)?.apply(ctx, &BrownElem::diag(z(), S::one()))?,
            4 => BrownElem::random(rng, |r| S::from_i64(r.gen_range(-2..=2))),
            k => {
                let mut e = BrownElem::zero();
                for v in big[k - 5].basis_vectors() {
                    e.add_scaled(&S::from_i64(rng.gen_range(-2..=2)), &BrownElem::from_coords(&v)?);
                }
                e
            }
        };
        let len = rng.gen_range(0..=2);
        let word = GroupWord::random(ctx, rng, len)?;
        let mut gens = elements(ctx, base)?;
        gens.push(extra);
        let gens = gens.iter().map(|g| word.apply(ctx, g)).collect::<Result<Vec<_>, _>>()?;
        let cl = inner_closure(ctx, &gens)?;
        let singular = cl.dim() < DIM && is_singular_ideal(ts, &cl)?;
        runs.push(CorpusRun { label: format!("{name}+extra{kind}/word{len}"), dim: cl.dim(), singular });
    }
    Ok(runs)
}
