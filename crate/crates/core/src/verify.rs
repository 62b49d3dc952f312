//! Property suites over every layer, reported one line per check.

use std::error::Error;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::albert::{AlbertCtx, AlbertElem};
use crate::brown::{brace, BraceOp, skew_psi, u_apply, BrownAlgebra, BrownCtx, BrownElem, QuadBrown, TripleSystem, DIM};
use crate::cayley::{validate_table, Oct};
use crate::flags::{self, classify_e6, classify_e7, incident, Geometry, IncidenceRules, SpaceType};
use crate::ideals::{self, is_inner_ideal, is_singular_element, singularity_conditions, GroupWord};
use crate::linalg::{kernel, LinearMap, Subspace};
use crate::scalar::{QuadExt, Rational, Scalar};

type Q = Rational;
type Res = Result<bool, Box<dyn Error>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Cayley,
    Albert,
    Brown,
    Fts,
    Duality,
    Ideals,
    Flags,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = ["all", "cayley", "albert", "brown", "fts", "duality", "ideals", "flags"];
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "cayley" => Suite::Cayley,
            "albert" => Suite::Albert,
            "brown" => Suite::Brown,
            "fts" => Suite::Fts,
            "duality" => Suite::Duality,
            "ideals" => Suite::Ideals,
            "flags" => Suite::Flags,
            _ => return Err(format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", "))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub ok: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn all_ok(&self) -> bool {
        self.results.iter().all(|r| r.ok)
    }

    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| !r.ok).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, r) in self.results.iter().enumerate() {
            let status = if r.ok { "ok" } else { "not ok" };
            write!(f, "{status} {} {}", n + 1, r.name)?;
            if let Some(d) = &r.detail {
                write!(f, " # {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Options for [`run`]. `height` bounds numerators and denominators of random scalars.
#[derive(Debug, Clone)]
pub struct Options {
    pub seed: u64,
    pub height: i64,
    pub corpus_size: usize,
    pub rules: IncidenceRules,
}

impl Options {
    pub fn new(seed: u64) -> Self {
        Options { seed, height: 9, corpus_size: 100, rules: IncidenceRules::computed() }
    }
}

struct Runner {
    rng: ChaCha8Rng,
    height: i64,
    report: Report,
}

impl Runner {
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce(&mut Self) -> Res) {
        let name = name.into();
        let (ok, detail) = match f(self) {
            Ok(ok) => (ok, None),
            Err(e) => (false, Some(e.to_string())),
        };
        self.report.results.push(CheckResult { name, ok, detail });
    }

    /// Like [`Runner::check`] with a note attached to the line.
    fn check_noted(&mut self, name: impl Into<String>, f: impl FnOnce(&mut Self) -> Result<(bool, String), Box<dyn Error>>) {
        let name = name.into();
        let (ok, detail) = match f(self) {
            Ok((ok, note)) => (ok, Some(note)),
            Err(e) => (false, Some(e.to_string())),
        };
        self.report.results.push(CheckResult { name, ok, detail });
    }

    fn q(&mut self) -> Q {
        Q::random(&mut self.rng, self.height)
    }

    fn oct(&mut self) -> Oct<Q> {
        let h = self.height;
        Oct::random(&mut self.rng, |r| Q::random(r, h))
    }

    fn jelem(&mut self) -> AlbertElem<Q> {
        let h = self.height;
        AlbertElem::random(&mut self.rng, |r| Q::random(r, h))
    }

    fn belem(&mut self) -> BrownElem<Q> {
        let h = self.height;
        BrownElem::random(&mut self.rng, |r| Q::random(r, h))
    }

    /// Small integer entries, for the checks whose cost grows with coordinate height.
    fn belem_small(&mut self) -> BrownElem<Q> {
        BrownElem::random(&mut self.rng, |r| Q::from_integer(r.gen_range(-3..=3)))
    }

    fn quad_elem(&mut self, c: &QuadBrown) -> Result<BrownElem<QuadExt>, Box<dyn Error>> {
        let v: Vec<Q> = (0..DIM).map(|_| Q::from_integer(self.rng.gen_range(-3..=3))).collect();
        Ok(c.from_coords(&v)?)
    }
}

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn u(i: usize) -> Oct<Q> {
    Oct::basis(i - 1)
}

fn off(a: Oct<Q>, b: Oct<Q>, c: Oct<Q>) -> AlbertElem<Q> {
    AlbertElem::from_parts([q(0), q(0), q(0)], &a, &b, &c)
}

/// Runs `suite` with a fixed seed; the same options give the same report.
pub fn run(suite: Suite, opts: &Options) -> Report {
    let mut r = Runner { rng: ChaCha8Rng::seed_from_u64(opts.seed), height: opts.height, report: Report::default() };
    let all = suite == Suite::All;
    if all || suite == Suite::Cayley {
        cayley_suite(&mut r);
    }
    if all || suite == Suite::Albert {
        albert_suite(&mut r);
    }
    if all || suite == Suite::Brown {
        brown_suite(&mut r);
    }
    if all || suite == Suite::Fts {
        fts_suite(&mut r);
    }
    if all || suite == Suite::Duality {
        duality_suite(&mut r);
    }
    if all || suite == Suite::Ideals {
        ideals_suite(&mut r, opts.corpus_size);
    }
    if all || suite == Suite::Flags {
        flags_suite(&mut r, &opts.rules);
    }
    r.report
}

fn cayley_suite(r: &mut Runner) {
    r.check("cayley: structure table validates", |_| Ok(validate_table().is_ok()));
    r.check("cayley: pi is an involution", |r| {
        Ok((0..50).all(|_| {
            let x = r.oct();
            x.conj().conj() == x
        }))
    });
    r.check("cayley: unit laws", |r| {
        let one = Oct::one();
        Ok((0..200).all(|_| {
            let x = r.oct();
            one.mul(&x) == x && x.mul(&one) == x
        }))
    });
    r.check("cayley: norm is multiplicative on 200 pairs", |r| {
        for _ in 0..200 {
            let (x, y) = (r.oct(), r.oct());
            if x.mul(&y).norm()? != x.norm()? * y.norm()? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    r.check("cayley: alternativity on 100 pairs", |r| {
        Ok((0..100).all(|_| {
            let (x, y) = (r.oct(), r.oct());
            x.mul(&x).mul(&y) == x.mul(&x.mul(&y)) && y.mul(&x).mul(&x) == y.mul(&x.mul(&x))
        }))
    });
}

fn albert_ctxs() -> Vec<AlbertCtx<Q>> {
    vec![AlbertCtx::split(), AlbertCtx::new([q(1), q(-1), Q::new(2, 3)]).expect("nonzero gamma")]
}

fn albert_suite(r: &mut Runner) {
    let a = AlbertCtx::<Q>::split();
    r.check("albert: (e1+e2)# = e0", |_| Ok(a.sharp(&AlbertElem::e(1).add(&AlbertElem::e(2))) == AlbertElem::e(0)));
    r.check("albert: (0,0,0;u1,0,-u4)# = (0,0,0;0,u1,0)", |_| {
        let x = off(u(1), Oct::zero(), u(4).neg());
        Ok(a.sharp(&x) == off(Oct::zero(), u(1), Oct::zero()))
    });
    r.check("albert: N(1) = 1 and T(1) = 3", |_| Ok(a.norm(&AlbertElem::one())? == q(1) && a.trace(&AlbertElem::one()) == q(3)));
    for (k, c) in albert_ctxs().iter().enumerate() {
        r.check(format!("albert[{k}]: x## = N(x) x on 50 elements"), |r| {
            for _ in 0..50 {
                let x = r.jelem();
                if c.sharp(&c.sharp(&x)) != x.scale(&c.norm(&x)?) {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        r.check(format!("albert[{k}]: tabulated and embedded Jordan products agree"), |r| {
            for _ in 0..10 {
                let (x, y) = (r.jelem(), r.jelem());
                if c.jordan_mul(&x, &y) != c.jordan_mul_embedded(&x, &y)? {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        r.check(format!("albert[{k}]: sharp agrees with the norm-derivative route"), |r| {
            for _ in 0..5 {
                let x = r.jelem();
                if c.sharp(&x) != c.sharp_by_derivative(&x)? {
                    return Ok(false);
                }
            }
            Ok(true)
        });
    }
    r.check("albert: hyperline e0 x J has dimension 10", |_| Ok(a.hyperline(&AlbertElem::e(0))?.dim() == 10));
    r.check("albert: 20 sampled hyperlines have dimension 10", |r| {
        for _ in 0..20 {
            let d = a.random_rank_one(&mut r.rng, &mut |g: &mut ChaCha8Rng| Q::random(g, 3))?;
            if a.hyperline(&d)?.dim() != 10 {
                return Ok(false);
            }
        }
        Ok(true)
    });
}

fn structurable_identity<A: BrownAlgebra>(
    alg: &A,
    x: &BrownElem<A::Up>,
    y: &BrownElem<A::Up>,
    z: &BrownElem<A::Up>,
    w: &BrownElem<A::Up>,
) -> bool {
    let vxy = BraceOp::new(alg, x, y);
    let vzw = BraceOp::new(alg, z, w);
    let vpw = BraceOp::new(alg, &vxy.apply(z), w);
    let vzr = BraceOp::new(alg, z, &brace(alg, y, x, w));
    // The operators are linear over the upstairs field, so the standard basis
    // there suffices; its vectors are sparse, unlike the fixed basis.
    (0..DIM).map(BrownElem::<A::Up>::basis).all(|e| {
        let lhs = vxy.apply(&vzw.apply(&e)).sub(&vzw.apply(&vxy.apply(&e)));
        lhs == vpw.apply(&e).sub(&vzr.apply(&e))
    })
}

/// `[V_{x,y}, V_{z,w}] = V_{V_{x,y} z, w} − V_{z, V_{y,x} w}` for `n` random
/// quadruples in the split context and `n` in `B(J, Q(√2))`.
pub fn structurable_identity_runs(seed: u64, n: usize) -> Result<(usize, usize), Box<dyn Error>> {
    let mut r = Runner { rng: ChaCha8Rng::seed_from_u64(seed), height: 3, report: Report::default() };
    let c = BrownCtx::<Q>::split();
    let qb = QuadBrown::split(2)?;
    let mut passed = (0, 0);
    for _ in 0..n {
        let v: Vec<_> = (0..4).map(|_| r.belem_small()).collect();
        passed.0 += structurable_identity(&c, &v[0], &v[1], &v[2], &v[3]) as usize;
        let v = (0..4).map(|_| r.quad_elem(&qb)).collect::<Result<Vec<_>, _>>()?;
        passed.1 += structurable_identity(&qb, &v[0], &v[1], &v[2], &v[3]) as usize;
    }
    Ok(passed)
}

fn brown_suite(r: &mut Runner) {
    let c = BrownCtx::<Q>::split();
    let a = c.albert().clone();
    r.check("brown: diag(1,0) diag(0,1) = 0 and diag(a,b) diag(b,a) = ab", |r| {
        let (x, y) = (r.q(), r.q());
        Ok(c.mul(&BrownElem::diag(q(1), q(0)), &BrownElem::diag(q(0), q(1))).is_zero()
            && c.mul(&BrownElem::diag(x.clone(), y.clone()), &BrownElem::diag(y.clone(), x.clone())) == BrownElem::one().scale(&(x * y)))
    });
    r.check("brown: s0^2 = mu in split and quadratic contexts", |_| {
        let qb = QuadBrown::split(2)?;
        let s = qb.s0();
        Ok(c.mul(&c.s0(), &c.s0()) == BrownElem::one() && qb.mul(&s, &s) == BrownElem::one().scale(&qb.lift(&qb.mu())))
    });
    r.check("brown: {1,1,z} = z", |r| {
        let z = r.belem();
        Ok(brace(&c, &BrownElem::one(), &BrownElem::one(), &z) == z)
    });
    r.check("brown: U_e diag(0,1) = (2a^2, 2 j'#, 2a j', T(j,j') - ab)", |r| {
        for _ in 0..10 {
            let e = r.belem();
            let expected = BrownElem::new(
                q(2) * e.alpha.clone() * e.alpha.clone(),
                a.sharp(&e.jp).scale(&q(2)),
                e.jp.scale(&(q(2) * e.alpha.clone())),
                a.trace_form(&e.j, &e.jp) - e.alpha.clone() * e.beta.clone(),
            );
            if u_apply(&c, &e, &BrownElem::diag(q(0), q(1))) != expected {
                return Ok(false);
            }
        }
        Ok(true)
    });
    r.check("brown: skew elements are the line F s0", |_| {
        let imgs: Vec<Vec<Q>> = c.basis().iter().map(|e| e.add(&c.bar(e)).coords()).collect();
        let skew = kernel(LinearMap::from_images(DIM, &imgs)?.matrix());
        Ok(skew.dim() == 1 && skew.contains(&c.s0().coords()))
    });
    r.check("brown: psi(x,y) is a multiple of s0", |r| {
        let (x, y) = (r.belem(), r.belem());
        Ok(skew_psi(&c, &x, &y).is_ok())
    });
    r.check("brown: structurable identity, 3 split and 3 quadratic quadruples", |r| {
        let seed = r.rng.gen();
        Ok(structurable_identity_runs(seed, 3)? == (3, 3))
    });
    r.check("brown: varpi is an automorphism with varpi(s0) = -s0", |r| {
        for _ in 0..10 {
            let (x, y) = (r.belem(), r.belem());
            if c.varpi(&c.mul(&x, &y))? != c.mul(&c.varpi(&x)?, &c.varpi(&y)?) {
                return Ok(false);
            }
        }
        Ok(c.varpi(&c.s0())? == c.s0().neg())
    });
    r.check("brown: phi_k(diag(0,1)) = (N(k), k, k#, 1)", |r| {
        let k = r.jelem();
        Ok(c.phi(&k, &BrownElem::diag(q(0), q(1)))? == BrownElem::new(a.norm(&k)?, k.clone(), a.sharp(&k), q(1)))
    });
    r.check("brown: phi_k phi_-k = psi_k psi_-k = id", |r| {
        let k = r.jelem();
        let x = r.belem();
        Ok(c.phi(&k.neg(), &c.phi(&k, &x)?)? == x && c.psi(&k.neg(), &c.psi(&k, &x)?)? == x)
    });
    r.check("brown: similarity to zeta = 5 scales b by 5 and q by 25", |r| {
        let c5 = BrownCtx::new(AlbertCtx::split(), q(5))?;
        let f = c.similarity_f(&c5)?;
        let (t1, t5) = (TripleSystem::new(&c)?, TripleSystem::new(&c5)?);
        let (x, y) = (r.belem_small(), r.belem_small());
        let (fx, fy) = (c.apply(&f, &x), c.apply(&f, &y));
        Ok(t5.b(&fx, &fy)? == q(5) * t1.b(&x, &y)? && t5.q(&fx, &fx, &fx, &fx)? == q(25) * t1.q(&x, &x, &x, &x)?)
    });
    r.check("brown: zeta swap is an isomorphism onto zeta^2", |r| {
        let (c1, c2) = (BrownCtx::new(AlbertCtx::split(), q(-3))?, BrownCtx::new(AlbertCtx::split(), q(9))?);
        let (x, y) = (r.belem(), r.belem());
        Ok(c1.zeta_swap(&c1.mul(&x, &y))? == c2.mul(&c1.zeta_swap(&x)?, &c1.zeta_swap(&y)?))
    });
    r.check("brown: quadratic descent is closed under the product", |r| {
        let qb = QuadBrown::split(2)?;
        for _ in 0..3 {
            let (x, y) = (r.quad_elem(&qb)?, r.quad_elem(&qb)?);
            qb.try_mul(&x, &y)?;
        }
        Ok(qb.is_fixed(&qb.s0()))
    });
    r.check("brown: m(f1) = (0,0,0,8 delta^2) and m(f2) = (-1,0,0,0) over Q(sqrt 2)", |_| {
        let qb = QuadBrown::split(2)?;
        let (up, d) = (qb.upstairs(), qb.delta());
        let m1 = up.m_apply(&d, &qb.f1())?;
        let m2 = up.m_apply(&d, &qb.f2())?;
        Ok(m1 == BrownElem::diag(QuadExt::zero(), d.clone() * d * QuadExt::from_i64(8))
            && m2 == BrownElem::diag(-QuadExt::one(), QuadExt::zero())
            && is_singular_element(&qb, &qb.f1())
            && is_singular_element(&qb, &qb.f2()))
    });
}

fn b_expression(c: &BrownCtx<Q>, x: &BrownElem<Q>, y: &BrownElem<Q>) -> Q {
    let a = c.albert();
    let t = a.trace_form(&x.j, &y.jp) - a.trace_form(&x.jp, &y.j);
    x.alpha.clone() * y.beta.clone() - y.alpha.clone() * x.beta.clone() + c.zeta().clone() * t
}

fn q_expression(c: &BrownCtx<Q>, x: &BrownElem<Q>) -> Result<Q, Box<dyn Error>> {
    let a = c.albert();
    let z = c.zeta().clone();
    let s = x.alpha.clone() * x.beta.clone() - z.clone() * a.trace_form(&x.j, &x.jp);
    let inner = q(4) * x.alpha.clone() * z.clone() * a.norm(&x.j)?
        + q(4) * x.beta.clone() * z.clone() * z.clone() * a.norm(&x.jp)?
        - q(4) * z.clone() * z * a.trace_form(&a.sharp(&x.jp), &a.sharp(&x.j))
        + s.clone() * s;
    Ok(q(12) * inner)
}

/// `b` against the trace-form expression and `q(x,x,x,x)` against the
/// norm-form expression on `n` random elements for each `ζ ∈ {1, 2, −3}`.
pub fn formula_match_runs(seed: u64, n: usize) -> Result<bool, Box<dyn Error>> {
    let mut r = Runner { rng: ChaCha8Rng::seed_from_u64(seed), height: 9, report: Report::default() };
    for z in [1, 2, -3] {
        let c = BrownCtx::new(AlbertCtx::split(), q(z))?;
        let ts = TripleSystem::new(&c)?;
        for _ in 0..n {
            let (x, y) = (r.belem(), r.belem());
            if ts.b(&x, &y)? != b_expression(&c, &x, &y) || ts.q(&x, &x, &x, &x)? != q_expression(&c, &x)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

const PERMS: [[usize; 4]; 24] = [
    [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
    [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
    [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
    [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
];

/// FTS1 on `quads` random 4-tuples, FTS2, and FTS3 on `pairs` random pairs for
/// `ζ ∈ {1, 2, −3}`. Returns one flag per axiom.
pub fn fts_axiom_runs(seed: u64, quads: usize, pairs: usize) -> Result<[bool; 3], Box<dyn Error>> {
    let mut r = Runner { rng: ChaCha8Rng::seed_from_u64(seed), height: 9, report: Report::default() };
    let mut ok = [true; 3];
    for z in [1, 2, -3] {
        let c = BrownCtx::new(AlbertCtx::split(), q(z))?;
        let ts = TripleSystem::new(&c)?;
        for _ in 0..quads {
            let v: Vec<_> = (0..4).map(|_| r.belem_small()).collect();
            let q0 = ts.q(&v[0], &v[1], &v[2], &v[3])?;
            for p in &PERMS[1..] {
                if ts.q(&v[p[0]], &v[p[1]], &v[p[2]], &v[p[3]])? != q0 {
                    ok[0] = false;
                }
            }
        }
        let d = BrownElem::diag(q(1), q(1));
        ok[1] &= !ts.q(&d, &d, &d, &d)?.is_zero();
        for _ in 0..pairs {
            let (x, y) = (r.belem(), r.belem());
            let txxx = ts.t(&x, &x, &x)?;
            let mut rhs = txxx.scale(&ts.b(&y, &x)?);
            rhs.add_scaled(&ts.q(&y, &x, &x, &x)?, &x);
            if ts.t(&txxx, &x, &y)? != rhs {
                ok[2] = false;
            }
        }
    }
    Ok(ok)
}

fn fts_suite(r: &mut Runner) {
    r.check("fts: b is nondegenerate for zeta in {1,2,-3} and in B(J, Q(sqrt 2))", |_| {
        for z in [1, 2, -3] {
            TripleSystem::new(&BrownCtx::new(AlbertCtx::split(), q(z))?)?;
        }
        TripleSystem::new(&QuadBrown::split(2)?)?;
        Ok(true)
    });
    let seed = r.rng.gen();
    match fts_axiom_runs(seed, 3, 10) {
        Ok(ok) => {
            for (k, name) in ["FTS1 q is symmetric under S4", "FTS2 q is not identically zero", "FTS3 t(t(x,x,x),x,y) identity"].iter().enumerate() {
                r.check(format!("fts: {name}"), |_| Ok(ok[k]));
            }
        }
        Err(e) => r.check("fts: axioms", |_| Err(e)),
    }
    r.check("fts: b and q match the trace and norm expressions", |r| {
        let seed = r.rng.gen();
        formula_match_runs(seed, 20)
    });
    r.check("fts: q(diag(1,1)) = 12 and nu(1) = 1", |_| {
        let c = BrownCtx::<Q>::split();
        let ts = TripleSystem::new(&c)?;
        let d = BrownElem::diag(q(1), q(1));
        Ok(ts.q(&d, &d, &d, &d)? == q(12) && ts.nu(&BrownElem::one())? == q(1))
    });
    r.check("fts: t is symmetric and FTS3 holds in B(J, Q(sqrt 2))", |r| {
        let qb = QuadBrown::split(2)?;
        let ts = TripleSystem::new(&qb)?;
        let (x, y) = (r.quad_elem(&qb)?, r.quad_elem(&qb)?);
        let txxx = ts.t(&x, &x, &x)?;
        let mut rhs = txxx.scale(&qb.lift(&ts.b(&y, &x)?));
        rhs.add_scaled(&qb.lift(&ts.q(&y, &x, &x, &x)?), &x);
        Ok(ts.t(&x, &x, &y)? == ts.t(&x, &y, &x)? && ts.t(&txxx, &x, &y)? == rhs)
    });
    r.check("fts: translations and f_psi preserve b and q", |r| {
        let c = BrownCtx::<Q>::split();
        let ts = TripleSystem::new(&c)?;
        let k = AlbertElem::random(&mut r.rng, |g| Q::from_integer(g.gen_range(-2..=2)));
        let lam = Q::new(-1, 2);
        let fpsi = c.f_phi(&c.albert().psi_similarity(&lam)?, &lam)?;
        let (x, y) = (r.belem_small(), r.belem_small());
        let maps: [Box<dyn Fn(&BrownElem<Q>) -> Result<BrownElem<Q>, Box<dyn Error>>>; 3] = [
            Box::new(|e| Ok(c.phi(&k, e)?)),
            Box::new(|e| Ok(c.psi(&k, e)?)),
            Box::new(|e| Ok(c.apply(&fpsi, e))),
        ];
        for f in &maps {
            let (fx, fy) = (f(&x)?, f(&y)?);
            if ts.b(&fx, &fy)? != ts.b(&x, &y)? || ts.q(&fx, &fx, &fx, &fy)? != ts.q(&x, &x, &x, &y)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
}

/// The three standard duality pairs and the 6-dimensional space mapping to 0.
pub fn duality_pairs() -> Result<[bool; 4], Box<dyn Error>> {
    let a = AlbertCtx::<Q>::split();
    let fe0 = a.span(&[AlbertElem::e(0)]);
    let h = a.hyperline(&AlbertElem::e(0))?;
    let first = a.duality_map(&fe0)? == h && a.duality_map(&h)? == fe0;

    let w = a.span(&[AlbertElem::e(2), off(u(1), Oct::zero(), Oct::zero())]);
    let mut wp = vec![AlbertElem::e(0)];
    for i in 1..=8 {
        let c = u(i).star(&u(1));
        if !c.is_zero() {
            wp.push(off(Oct::zero(), Oct::zero(), c));
        }
    }
    let wp = a.span(&wp);
    let second = wp.dim() == 5 && a.duality_map(&w)? == wp && a.duality_map(&wp)? == w;

    let t = flags::self_dual_space::<Q>();
    let third = t.dim() == 3 && a.is_totally_singular(&t) && a.duality_map(&t)? == t;

    let mut six = vec![AlbertElem::e(2), off(Oct::zero(), u(1), Oct::zero())];
    for i in 1..=8 {
        let x = u(i).star(&u(1));
        if !x.is_zero() {
            six.push(off(x, Oct::zero(), Oct::zero()));
        }
    }
    let six = a.span(&six);
    let fourth = six.dim() == 6 && a.is_totally_singular(&six) && a.duality_map(&six)?.is_zero();
    Ok([first, second, third, fourth])
}

fn duality_suite(r: &mut Runner) {
    match duality_pairs() {
        Ok(ok) => {
            let names = [
                "duality: F e0 <-> e0 x J",
                "duality: 2-dim (e2, u1) <-> 5-dim (e0, C*u1 in c)",
                "duality: (0,0,0;Fu1,Fu2,Fu5) is self-dual",
                "duality: the 6-dim totally singular space maps to 0",
            ];
            for (k, n) in names.iter().enumerate() {
                r.check(*n, |_| Ok(ok[k]));
            }
        }
        Err(e) => r.check("duality: pairs", |_| Err(e)),
    }
}

/// The singular-element examples: corner elements, `(0, j, 0, 0)` with
/// `j# = 0`, and the element `(0, e0, (0,0,0;u1,0,0), 0)` tested against
/// "satisfies (1)-(3) but not (4), and is not singular".
pub fn singularity_examples() -> Result<(bool, bool), Box<dyn Error>> {
    let c = BrownCtx::<Q>::split();
    let corners = is_singular_element(&c, &BrownElem::diag(q(1), q(0)))
        && is_singular_element(&c, &BrownElem::diag(q(0), q(1)))
        && is_singular_element(&c, &BrownElem::new(q(0), AlbertElem::e(0), AlbertElem::zero(), q(0)))
        && is_singular_element(&c, &BrownElem::new(q(0), off(u(1), Oct::zero(), Oct::zero()), AlbertElem::zero(), q(0)));
    let e = BrownElem::new(q(0), AlbertElem::e(0), off(u(1), Oct::zero(), Oct::zero()), q(0));
    let displayed = singularity_conditions(&c, &e)? == [true, true, true, false] && !is_singular_element(&c, &e);
    Ok((corners, displayed))
}

/// Dimensions and types of the canonical ideals: the `(F,0,V,0)` family,
/// the 12-dimensional example, and `I6` over `Q(√2)`.
pub fn canonical_ideal_checks() -> Result<[bool; 3], Box<dyn Error>> {
    let c = BrownCtx::<Q>::split();
    let ts = TripleSystem::new(&c)?;
    let mut fam = true;
    let mut big = false;
    for (k, (name, i)) in ideals::canonical_ideals(&c)?.iter().enumerate() {
        let rep = is_inner_ideal(&ts, i)?;
        if name == "nonsingular12" {
            big = rep.is_inner && !rep.is_singular && rep.dim == 12;
        } else {
            fam &= rep.is_inner && rep.is_singular && rep.dim == k + 1;
        }
    }
    let qb = QuadBrown::split(2)?;
    let qts = TripleSystem::new(&qb)?;
    let i6 = ideals::i6_ideal(&qb);
    let rep = is_inner_ideal(&qts, &i6)?;
    Ok([fam, big, rep.is_inner && rep.is_singular && rep.dim == 6])
}

fn ideals_suite(r: &mut Runner, corpus: usize) {
    let c = BrownCtx::<Q>::split();
    let ts = match TripleSystem::new(&c) {
        Ok(ts) => ts,
        Err(e) => return r.check("ideals: triple system", |_| Err(e.into())),
    };
    r.check("ideals: diag(1,0), diag(0,1), (0,j,0,0) with j# = 0 are singular", |_| Ok(singularity_examples()?.0));
    r.check("ideals: (0,e0,(0,0,0;0,u1,0),0) meets (1)-(3), fails (4), is not singular", |_| {
        let e = BrownElem::new(q(0), AlbertElem::e(0), off(Oct::zero(), u(1), Oct::zero()), q(0));
        Ok(singularity_conditions(&c, &e)? == [true, true, true, false] && !is_singular_element(&c, &e))
    });
    r.check_noted("ideals: (0,e0,(0,0,0;u1,0,0),0) has j' in e0 x J and is singular", |_| {
        let e = BrownElem::new(q(0), AlbertElem::e(0), off(u(1), Oct::zero(), Oct::zero()), q(0));
        let ok = singularity_conditions(&c, &e)? == [true; 4] && is_singular_element(&c, &e);
        Ok((ok, "j' lies in e0 x J, so condition (4) holds as well".into()))
    });
    r.check("ideals: four conditions agree with the definition on translates", |r| {
        for _ in 0..6 {
            let g = GroupWord::random(&c, &mut r.rng, 2)?;
            let e = g.apply(&c, &BrownElem::diag(q(0), q(1)))?;
            let x = r.belem_small();
            for v in [e, x] {
                if singularity_conditions(&c, &v)?.iter().all(|b| *b) != is_singular_element(&c, &v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    match canonical_ideal_checks() {
        Ok(ok) => {
            r.check("ideals: (F,0,V,0) family has dims 1..7 and is singular", |_| Ok(ok[0]));
            r.check("ideals: (F,Fd,dxJ,0) is inner, not singular, dim 12", |_| Ok(ok[1]));
            r.check("ideals: I6 over Q(sqrt 2) is a 6-dim singular ideal", |_| Ok(ok[2]));
        }
        Err(e) => r.check("ideals: canonical ideals", |_| Err(e)),
    }
    r.check("ideals: U and t criteria agree on 50 subspaces of dims 1..13", |r| {
        let canon = ideals::canonical_ideals(&c)?;
        for n in 0..50 {
            let dim = 1 + n % 13;
            let i = if n % 2 == 0 {
                let rows = (0..dim).map(|_| r.belem_small().coords()).collect();
                Subspace::span(DIM, rows)?
            } else {
                let host = &canon[if dim <= 7 { 6 } else { 7 }].1;
                let basis = host.basis_vectors();
                let rows = (0..dim.min(host.dim()))
                    .map(|_| {
                        let mut v = vec![q(0); DIM];
                        for b in &basis {
                            let s = Q::from_integer(r.rng.gen_range(-2..=2));
                            for (x, y) in v.iter_mut().zip(b) {
                                x.add_mul(&s, y);
                            }
                        }
                        v
                    })
                    .collect();
                Subspace::span(DIM, rows)?
            };
            is_inner_ideal(&ts, &i)?;
        }
        Ok(true)
    });
    r.check("ideals: closure of diag(1,0) is its line", |_| {
        let d = BrownElem::diag(q(1), q(0));
        Ok(ideals::inner_closure(&c, std::slice::from_ref(&d))? == Subspace::span(DIM, vec![d.coords()])?)
    });
    r.check("ideals: closure of diag(1,0), (0,e0,0,0) is the 12-dim ideal", |_| {
        let seeds = [BrownElem::diag(q(1), q(0)), BrownElem::new(q(0), AlbertElem::e(0), AlbertElem::zero(), q(0))];
        Ok(ideals::inner_closure(&c, &seeds)? == ideals::nonsingular_ideal(c.albert(), &AlbertElem::e(0))?)
    });
    r.check("ideals: closure of a generic element is everything", |r| Ok(ideals::inner_closure(&c, &[r.belem_small()])?.is_full()));
    r.check_noted(format!("ideals: {corpus} seeded closures stay within the dimension bounds"), |r| {
        let runs = ideals::closure_corpus(&ts, &mut r.rng, corpus)?;
        let proper = runs.iter().filter(|x| x.proper()).count();
        let max_proper = runs.iter().filter(|x| x.proper()).map(|x| x.dim).max().unwrap_or(0);
        let max_sing = runs.iter().filter(|x| x.singular).map(|x| x.dim).max().unwrap_or(0);
        let ok = runs.len() == corpus && runs.iter().all(|x| x.within_bounds());
        Ok((ok, format!("{proper} proper, largest proper {max_proper}, largest singular {max_sing}")))
    });
}

fn flags_suite(r: &mut Runner, rules: &IncidenceRules) {
    let a = AlbertCtx::<Q>::split();
    let c = BrownCtx::<Q>::split();
    let ts = match TripleSystem::new(&c) {
        Ok(ts) => ts,
        Err(e) => return r.check("flags: triple system", |_| Err(e.into())),
    };
    let v = flags::e6_spaces::<Q>();
    let w = flags::e7_spaces::<Q>();
    r.check("flags: classify_e6(V_i) = i", |_| Ok(v.iter().enumerate().all(|(i, s)| classify_e6(&a, s).map(|t| t.index) == Some(i + 1))));
    r.check("flags: classify_e6(e0 x J) = 6 and span{e0,e1} has no type", |_| {
        let h = a.hyperline(&AlbertElem::e(0))?;
        Ok(classify_e6(&a, &h).map(|t| t.index) == Some(6) && classify_e6(&a, &a.span(&[AlbertElem::e(0), AlbertElem::e(1)])).is_none())
    });
    r.check("flags: classify_e7(W_j) = j", |_| {
        for (j, s) in w.iter().enumerate() {
            if classify_e7(&ts, s)?.map(|t| t.index) != Some(j + 1) {
                return Ok(false);
            }
        }
        Ok(classify_e7(&ts, &Subspace::full(DIM))?.is_none())
    });
    r.check("flags: duality sends V2 to a 4-space and back", |_| {
        let d = a.duality_map(&v[1])?;
        Ok(classify_e6(&a, &d).map(|t| t.index) == Some(4) && classify_e6(&a, &a.duality_map(&d)?).map(|t| t.index) == Some(2))
    });
    r.check("flags: canonical chambers are pairwise incident", |_| {
        for (g, spaces) in [(Geometry::E6, &v), (Geometry::E7, &w)] {
            for (i, x) in spaces.iter().enumerate() {
                for (j, y) in spaces.iter().enumerate() {
                    let tx = SpaceType { geometry: g, index: i + 1 };
                    let ty = SpaceType { geometry: g, index: j + 1 };
                    if !incident(rules, (tx, x), (ty, y))? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    });
    r.check("flags: E7 types of W_j survive 5 random group words", |r| {
        for n in 0..5 {
            let g = GroupWord::random(&c, &mut r.rng, 1 + n % 4)?;
            for (j, s) in w.iter().enumerate() {
                if classify_e7(&ts, &g.apply_subspace(&c, s)?)?.map(|t| t.index) != Some(j + 1) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    r.check_noted("flags: maximality certificate decides I6", |_| {
        let qb = QuadBrown::split(2)?;
        let qts = TripleSystem::new(&qb)?;
        let m = flags::singular_maximality(&qts, &ideals::i6_ideal(&qb))?;
        let note = match &m {
            flags::Maximality::Maximal => "maximal: E7 5-space".to_string(),
            flags::Maximality::Extends(e) => format!("extends to a {}-dim singular ideal", e.dim()),
            flags::Maximality::Undecided => "undecided".to_string(),
        };
        Ok((m != flags::Maximality::Undecided, note))
    });
}
