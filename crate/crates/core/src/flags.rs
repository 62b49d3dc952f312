//! Flag spaces of the E6 geometry on `J` and the E7 geometry on `B`.
//!
//! E6 i-spaces are totally singular subspaces of dimension 1, 2, 3, 5 (with a
//! 2-dimensional dual), 6, and hyperlines `d × J`. E7 i-spaces are singular
//! ideals of dimension 1, 2, 3, 4, 6 (maximal), 7, and 12-dimensional inner
//! ideals.

use std::fmt;

use num_traits::Zero;

use crate::albert::{self, AlbertCtx, AlbertElem};
use crate::brown::{BrownAlgebra, BrownElem, BrownError, TripleSystem, DIM};
use crate::cayley::Oct;
use crate::ideals::{is_inner_ideal, is_singular_ideal, IdealError};
use crate::linalg::{LinalgError, RowReducer, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlagError {
    #[error("space is not of any flag type")]
    Unclassified,
    #[error("spaces belong to different geometries")]
    GeometryMismatch,
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    E6,
    E7,
}

impl Geometry {
    /// Dimension of an `i`-space, indexed from 1.
    pub fn dims(self) -> &'static [usize] {
        match self {
            Geometry::E6 => &[1, 2, 3, 5, 6, 10],
            Geometry::E7 => &[1, 2, 3, 4, 6, 7, 12],
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::E6 => "e6",
            Geometry::E7 => "e7",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceType {
    pub geometry: Geometry,
    pub index: usize,
}

impl SpaceType {
    pub fn dim(&self) -> usize {
        self.geometry.dims()[self.index - 1]
    }
}

fn u<S: Scalar>(i: usize) -> Oct<S> {
    Oct::basis(i - 1)
}

fn j_span<S: Scalar>(eps: &[usize], a: &[usize], b: &[usize], c: &[usize]) -> Subspace<S> {
    let mut rows = Vec::new();
    for &i in eps {
        rows.push(AlbertElem::<S>::e(i).into_coords());
    }
    let z = Oct::zero;
    let zero = [S::zero(), S::zero(), S::zero()];
    for &i in a {
        rows.push(AlbertElem::from_parts(zero.clone(), &u(i), &z(), &z()).into_coords());
    }
    for &i in b {
        rows.push(AlbertElem::from_parts(zero.clone(), &z(), &u(i), &z()).into_coords());
    }
    for &i in c {
        rows.push(AlbertElem::from_parts(zero.clone(), &z(), &z(), &u(i)).into_coords());
    }
    Subspace::span(albert::DIM, rows).expect("27 coordinates")
}

/// `V1 … V6`: `V1 = (0,0,F;0,0,0)`, then `a` grows through `F u1`,
/// `F u1 + F u2` and `u1⋆C`; `V5` has `a ∈ C⋆u1` and `b ∈ F u1`; `V6 = e0 × J`.
pub fn e6_spaces<S: Scalar>() -> Vec<Subspace<S>> {
    vec![
        j_span(&[2], &[], &[], &[]),
        j_span(&[2], &[1], &[], &[]),
        j_span(&[2], &[1, 2], &[], &[]),
        j_span(&[2], &[1, 2, 3, 4], &[], &[]),
        j_span(&[2], &[1, 2, 3, 5], &[1], &[]),
        j_span(&[1, 2], &[1, 2, 3, 4, 5, 6, 7, 8], &[], &[]),
    ]
}

/// Totally singular subspaces of dimensions 0 through 6, nested inside `V5`.
pub fn totally_singular_chain<S: Scalar>() -> Vec<Subspace<S>> {
    vec![
        Subspace::zero(albert::DIM),
        j_span(&[2], &[], &[], &[]),
        j_span(&[2], &[1], &[], &[]),
        j_span(&[2], &[1, 2], &[], &[]),
        j_span(&[2], &[1, 2, 3], &[], &[]),
        j_span(&[2], &[1, 2, 3, 5], &[], &[]),
        j_span(&[2], &[1, 2, 3, 5], &[1], &[]),
    ]
}

/// The self-dual space `(0,0,0; F u1, F u2, F u5)`.
pub fn self_dual_space<S: Scalar>() -> Subspace<S> {
    j_span(&[], &[1], &[2], &[5])
}

/// `W1 … W7`: `W_j = [0 V_{j−1}; 0 F]` and `W7 = [0 V6; F e0 F]`.
pub fn e7_spaces<S: Scalar>() -> Vec<Subspace<S>> {
    let beta = BrownElem::<S>::diag(S::zero(), S::one()).coords();
    let j_rows = |v: &Subspace<S>| {
        v.basis_vectors()
            .into_iter()
            .map(|w| BrownElem::new(S::zero(), AlbertElem::from_coords(w).expect("27"), AlbertElem::zero(), S::zero()).coords())
            .collect::<Vec<_>>()
    };
    let mut vs = vec![Subspace::zero(albert::DIM)];
    vs.extend(e6_spaces::<S>());
    let mut out = Vec::new();
    for v in &vs[..6] {
        let mut rows = j_rows(v);
        rows.push(beta.clone());
        out.push(Subspace::span(DIM, rows).expect("56"));
    }
    let mut rows = j_rows(&vs[6]);
    rows.push(beta);
    rows.push(BrownElem::new(S::zero(), AlbertElem::zero(), AlbertElem::e(0), S::zero()).coords());
    out.push(Subspace::span(DIM, rows).expect("56"));
    out
}

/// The E6 type of a subspace of `J`, if it has one.
pub fn classify_e6<S: Scalar>(ctx: &AlbertCtx<S>, w: &Subspace<S>) -> Option<SpaceType> {
    if w.ambient_dim() != albert::DIM || w.is_zero() {
        return None;
    }
    let ty = |index| Some(SpaceType { geometry: Geometry::E6, index });
    if ctx.is_totally_singular(w) {
        return match w.dim() {
            1 => ty(1),
            2 => ty(2),
            3 => ty(3),
            5 if ctx.duality_map(w).ok()?.dim() == 2 => ty(4),
            6 => ty(5),
            _ => None,
        };
    }
    if w.dim() == 10 {
        let line = ctx.duality_map(w).ok()?;
        if line.dim() == 1 {
            let d = AlbertElem::from_coords(line.basis_vectors().remove(0)).ok()?;
            if ctx.hyperline(&d).ok().as_ref() == Some(w) {
                return ty(6);
            }
        }
    }
    None
}

/// Result of searching for a one-dimensional singular extension of a singular ideal.
#[derive(Debug, Clone, PartialEq)]
pub enum Maximality<F: Scalar> {
    /// No `z ∉ I` satisfies the conditions linear in `z`.
    Maximal,
    /// `I + F z` is a singular ideal.
    Extends(Subspace<F>),
    /// Linear candidates exist but none of those tried extends `I`.
    Undecided,
}

/// Certifies maximality of a singular ideal `I` among singular ideals.
///
/// If `I + F z` is singular then `t(u, z, w) = b(w, z) u + b(w, u) z` for all
/// `u ∈ I`, `w ∈ B`. These conditions are linear in `z` and cut out a space
/// `L ⊇ I`; when `L = I` no extension exists. Otherwise the basis vectors of
/// `L` outside `I` are tried one at a time.
pub fn singular_maximality<A: BrownAlgebra>(
    ts: &TripleSystem<'_, A>,
    i: &Subspace<A::Field>,
) -> Result<Maximality<A::Field>, FlagError> {
    let alg = ts.algebra();
    let basis = alg.basis();
    let bc: Vec<Vec<A::Field>> = basis.iter().map(|x| alg.coords(x)).collect::<Result<_, BrownError>>().map_err(IdealError::from)?;
    let elems: Vec<BrownElem<A::Up>> =
        i.basis_vectors().iter().map(|v| alg.from_coords(v)).collect::<Result<_, _>>().map_err(IdealError::from)?;
    let uc = i.basis_vectors();
    let bound = DIM - i.dim();
    let mut reducer = RowReducer::new(DIM);
    'outer: for (u, ucoords) in elems.iter().zip(&uc) {
        for w in 0..DIM {
            // Column a holds R(u, e_a, e_w) = t(u, e_a, e_w) − b(e_w, e_a) u − b(e_w, u) e_a.
            let bwu = ts.b_coords(&bc[w], ucoords);
            let mut cols = Vec::with_capacity(DIM);
            for a in 0..DIM {
                let mut r = ts.t_with_coords(u, &basis[a], &basis[w], ucoords, &bc[a], &bc[w]);
                r.add_scaled(&-alg.lift(&ts.b_coords(&bc[w], &bc[a])), u);
                r.add_scaled(&-alg.lift(&bwu), &basis[a]);
                cols.push(alg.coords(&r).map_err(IdealError::from)?);
            }
            for c in 0..DIM {
                let row: Vec<A::Field> = cols.iter().map(|col| col[c].clone()).collect();
                if row.iter().all(|x| x.is_zero()) {
                    continue;
                }
                reducer.push(row);
                if reducer.rank() == bound {
                    break 'outer;
                }
            }
        }
    }
    if reducer.rank() == bound {
        return Ok(Maximality::Maximal);
    }
    let l = reducer.kernel();
    for z in l.basis_vectors() {
        if i.contains(&z) {
            continue;
        }
        let ext = i.sum(&Subspace::span(DIM, vec![z])?)?;
        if is_singular_ideal(ts, &ext)? {
            return Ok(Maximality::Extends(ext));
        }
    }
    Ok(Maximality::Undecided)
}

/// The E7 type of a subspace of `B`, if it has one. A 6-dimensional singular
/// ideal is typed only when [`singular_maximality`] certifies it maximal.
pub fn classify_e7<A: BrownAlgebra>(ts: &TripleSystem<'_, A>, i: &Subspace<A::Field>) -> Result<Option<SpaceType>, FlagError> {
    if i.ambient_dim() != DIM || i.is_zero() || i.is_full() || !matches!(i.dim(), 1..=4 | 6 | 7 | 12) {
        return Ok(None);
    }
    let report = is_inner_ideal(ts, i)?;
    if !report.is_inner {
        return Ok(None);
    }
    let ty = |index| Ok(Some(SpaceType { geometry: Geometry::E7, index }));
    match (report.is_singular, i.dim()) {
        (true, d @ 1..=4) => ty(d),
        (true, 6) => match singular_maximality(ts, i)? {
            Maximality::Maximal => ty(5),
            _ => Ok(None),
        },
        (true, 7) => ty(6),
        (false, 12) => ty(7),
        _ => Ok(None),
    }
}

/// Required intersection dimensions for the pairs whose incidence is not inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceRules {
    pub e6_4_5: usize,
    pub e6_5_6: usize,
    pub e7_5_6: usize,
    pub e7_6_7: usize,
}

impl IncidenceRules {
    /// Thresholds read off the canonical chamber, whose members are pairwise incident.
    pub fn computed() -> Self {
        let v = e6_spaces::<crate::Rational>();
        let w = e7_spaces::<crate::Rational>();
        let meet = |a: &Subspace<crate::Rational>, b: &Subspace<crate::Rational>| a.intersect(b).expect("same ambient").dim();
        IncidenceRules {
            e6_4_5: meet(&v[3], &v[4]),
            e6_5_6: meet(&v[4], &v[5]),
            e7_5_6: meet(&w[4], &w[5]),
            e7_6_7: meet(&w[5], &w[6]),
        }
    }

    /// The stricter stated thresholds: 3 for the E6 (4,5)
    /// pair and 4 for the E7 (5,6) pair.
    pub fn strict() -> Self {
        IncidenceRules { e6_4_5: 3, e7_5_6: 4, ..Self::computed() }
    }

    fn threshold(&self, g: Geometry, lo: usize, hi: usize) -> Option<usize> {
        match (g, lo, hi) {
            (Geometry::E6, 4, 5) => Some(self.e6_4_5),
            (Geometry::E6, 5, 6) => Some(self.e6_5_6),
            (Geometry::E7, 5, 6) => Some(self.e7_5_6),
            (Geometry::E7, 6, 7) => Some(self.e7_6_7),
            _ => None,
        }
    }
}

/// Incidence of two typed spaces: inclusion, except for the special pairs
/// where the intersection must have the configured dimension.
pub fn incident<S: Scalar>(
    rules: &IncidenceRules,
    a: (SpaceType, &Subspace<S>),
    b: (SpaceType, &Subspace<S>),
) -> Result<bool, FlagError> {
    if a.0.geometry != b.0.geometry {
        return Err(FlagError::GeometryMismatch);
    }
    let (lo, hi) = if a.0.index <= b.0.index { (a, b) } else { (b, a) };
    if let Some(t) = rules.threshold(lo.0.geometry, lo.0.index, hi.0.index) {
        return Ok(lo.1.intersect(hi.1)?.dim() == t);
    }
    Ok(lo.1.contains_subspace(hi.1) || hi.1.contains_subspace(lo.1))
}
