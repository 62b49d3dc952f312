use super::*;
use crate::albert::AlbertElem;
use crate::cayley::Oct;
use crate::linalg::{kernel, LinearMap};
use crate::scalar::{QuadExt, Rational};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Rational;
type E = BrownElem<Q>;
type J = AlbertElem<Q>;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn small(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(-3..=3))
}

fn ctx(zeta: i64) -> BrownCtx<Q> {
    BrownCtx::new(AlbertCtx::split(), q(zeta)).unwrap()
}

fn rand_elem(rng: &mut ChaCha8Rng) -> E {
    E::random(rng, small)
}

fn b_expression(c: &BrownCtx<Q>, x: &E, y: &E) -> Q {
    let t = c.albert().trace_form(&x.j, &y.jp) - c.albert().trace_form(&x.jp, &y.j);
    x.alpha.clone() * y.beta.clone() - y.alpha.clone() * x.beta.clone() + c.zeta().clone() * t
}

fn q_expression(c: &BrownCtx<Q>, x: &E) -> Q {
    let a = c.albert();
    let z = c.zeta().clone();
    let s = x.alpha.clone() * x.beta.clone() - z.clone() * a.trace_form(&x.j, &x.jp);
    let inner = q(4) * x.alpha.clone() * z.clone() * a.norm(&x.j).unwrap()
        + q(4) * x.beta.clone() * z.clone() * z.clone() * a.norm(&x.jp).unwrap()
        - q(4) * z.clone() * z * a.trace_form(&a.sharp(&x.jp), &a.sharp(&x.j))
        + s.clone() * s;
    q(12) * inner
}

#[test]
fn product_examples() {
    let c = ctx(1);
    assert!(c.mul(&E::diag(q(1), q(0)), &E::diag(q(0), q(1))).is_zero());
    let (a, b) = (Q::new(2, 3), q(-5));
    assert_eq!(c.mul(&E::diag(a.clone(), b.clone()), &E::diag(b.clone(), a.clone())), E::one().scale(&(a * b)));
    let s0 = c.s0();
    assert_eq!(c.mul(&s0, &s0), E::one());
}

#[test]
fn brace_examples() {
    let c = ctx(2);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let z = rand_elem(&mut rng);
    assert_eq!(brace(&c, &E::one(), &E::one(), &z), z);
    for _ in 0..5 {
        let (x, y, z) = (rand_elem(&mut rng), rand_elem(&mut rng), rand_elem(&mut rng));
        let (p, _) = skew_psi(&c, &x, &z).unwrap();
        assert_eq!(brace(&c, &x, &y, &z).sub(&brace(&c, &z, &y, &x)), c.mul(&p, &y));
    }
}

fn structurable_identity_holds<A: BrownAlgebra>(alg: &A, x: &BrownElem<A::Up>, y: &BrownElem<A::Up>, z: &BrownElem<A::Up>, w: &BrownElem<A::Up>) -> bool {
    let p = brace(alg, x, y, z);
    let r = brace(alg, y, x, w);
    alg.basis().iter().all(|u| {
        let lhs = brace(alg, x, y, &brace(alg, z, w, u)).sub(&brace(alg, z, w, &brace(alg, x, y, u)));
        let rhs = brace(alg, &p, w, u).sub(&brace(alg, z, &r, u));
        lhs == rhs
    })
}

#[test]
fn structurable_identity_split() {
    let c = ctx(1);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..2 {
        let v: Vec<E> = (0..4).map(|_| rand_elem(&mut rng)).collect();
        assert!(structurable_identity_holds(&c, &v[0], &v[1], &v[2], &v[3]));
    }
}

#[test]
fn structurable_identity_quadratic() {
    let c = QuadBrown::split(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut v = Vec::new();
    for _ in 0..4 {
        let coords: Vec<Q> = (0..DIM).map(|_| small(&mut rng)).collect();
        v.push(c.from_coords(&coords).unwrap());
    }
    assert!(structurable_identity_holds(&c, &v[0], &v[1], &v[2], &v[3]));
}

#[test]
fn u_operator_on_lower_corner() {
    let c = ctx(1);
    let a = c.albert();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..5 {
        let e = rand_elem(&mut rng);
        let got = u_apply(&c, &e, &E::diag(q(0), q(1)));
        let expected = E::new(
            q(2) * e.alpha.clone() * e.alpha.clone(),
            a.sharp(&e.jp).scale(&q(2)),
            e.jp.scale(&(q(2) * e.alpha.clone())),
            a.trace_form(&e.j, &e.jp) - e.alpha.clone() * e.beta.clone(),
        );
        assert_eq!(got, expected);
        let lam = Q::new(-3, 2);
        let ue = u_operator(&c, &e).unwrap();
        let ul = u_operator(&c, &e.scale(&lam)).unwrap();
        assert_eq!(ul, ue.scale(&(lam.clone() * lam)));
    }
    let e = E::diag(q(1), q(0));
    let img = u_operator(&c, &e).unwrap();
    let span = crate::linalg::Subspace::column_space(img.matrix());
    assert!(span.dim() <= 1 && (span.is_zero() || span.contains(&e.coords())));
}

#[test]
fn skew_elements_form_a_line() {
    for z in [1, -3] {
        let c = ctx(z);
        let m = LinearMap::from_images(DIM, &c.basis().iter().map(|e| e.add(&c.bar(e)).coords()).collect::<Vec<_>>()).unwrap();
        let skew = kernel(m.matrix());
        assert_eq!(skew.dim(), 1);
        assert!(skew.contains(&c.s0().coords()));
    }
    let c = ctx(1);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = rand_elem(&mut rng);
    assert!(skew_psi(&c, &x, &x).unwrap().0.is_zero());
    let (_, lam) = skew_psi(&c, &E::diag(q(1), q(0)), &E::diag(q(0), q(1))).unwrap();
    assert_eq!(lam, q(1));
    let (p, _) = skew_psi(&c, &E::one(), &c.s0()).unwrap();
    assert_eq!(c.bar(&p), p.neg());
}

#[test]
fn b_matches_trace_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for z in [1, 2, -3] {
        let c = ctx(z);
        let ts = TripleSystem::new(&c).unwrap();
        assert_eq!(ts.b(&E::diag(q(1), q(0)), &E::diag(q(0), q(1))).unwrap(), q(1));
        for _ in 0..10 {
            let (x, y) = (rand_elem(&mut rng), rand_elem(&mut rng));
            let b = ts.b(&x, &y).unwrap();
            assert_eq!(b, b_expression(&c, &x, &y));
            assert_eq!(b, ts.b_direct(&x, &y).unwrap());
            assert!(ts.b(&x, &x).unwrap().is_zero());
        }
    }
}

#[test]
fn q_matches_norm_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for z in [1, 2, -3] {
        let c = ctx(z);
        let ts = TripleSystem::new(&c).unwrap();
        for _ in 0..5 {
            let x = rand_elem(&mut rng);
            assert_eq!(ts.q(&x, &x, &x, &x).unwrap(), q_expression(&c, &x));
        }
    }
    let c = ctx(1);
    let ts = TripleSystem::new(&c).unwrap();
    let d = E::diag(q(1), q(1));
    assert_eq!(ts.q(&d, &d, &d, &d).unwrap(), q(12));
    assert_eq!(ts.nu(&E::one()).unwrap(), q(1));
}

#[test]
fn t_is_symmetric_and_satisfies_fts3() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let c = ctx(2);
    let ts = TripleSystem::new(&c).unwrap();
    for _ in 0..3 {
        let (x, y, z) = (rand_elem(&mut rng), rand_elem(&mut rng), rand_elem(&mut rng));
        let t = ts.t(&x, &y, &z).unwrap();
        for p in [(&x, &z, &y), (&y, &x, &z), (&y, &z, &x), (&z, &x, &y), (&z, &y, &x)] {
            assert_eq!(ts.t(p.0, p.1, p.2).unwrap(), t);
        }
        let txxx = ts.t(&x, &x, &x).unwrap();
        let lhs = ts.t(&txxx, &x, &y).unwrap();
        let mut rhs = txxx.scale(&ts.b(&y, &x).unwrap());
        rhs.add_scaled(&ts.q(&y, &x, &x, &x).unwrap(), &x);
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn rescaling_s0_rescales_b_and_t() {
    let c = ctx(1);
    let lam = Q::new(-2, 3);
    let ts = TripleSystem::new(&c).unwrap();
    let ts2 = TripleSystem::with_scale(&c, lam.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (x, y, z) = (rand_elem(&mut rng), rand_elem(&mut rng), rand_elem(&mut rng));
    assert_eq!(ts2.b(&x, &y).unwrap(), lam.clone() * ts.b(&x, &y).unwrap());
    assert_eq!(ts2.t(&x, &y, &z).unwrap(), ts.t(&x, &y, &z).unwrap().scale(&lam));
    assert_eq!(ts2.mu(), &(lam.clone() * lam));
}

#[test]
fn varpi_is_an_automorphism() {
    let c = ctx(1);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    assert_eq!(c.varpi(&E::diag(q(1), q(0))).unwrap(), E::diag(q(0), q(1)));
    assert_eq!(c.varpi(&c.s0()).unwrap(), c.s0().neg());
    for _ in 0..5 {
        let (x, y) = (rand_elem(&mut rng), rand_elem(&mut rng));
        let lhs = c.varpi(&c.mul(&x, &y)).unwrap();
        assert_eq!(lhs, c.mul(&c.varpi(&x).unwrap(), &c.varpi(&y).unwrap()));
        assert_eq!(c.varpi(&c.varpi(&x).unwrap()).unwrap(), x);
    }
    assert_eq!(ctx(2).varpi(&E::one()).err(), Some(BrownError::VariantMismatch));
}

#[test]
fn translations_are_automorphisms_of_the_triple_system() {
    let c = ctx(1);
    let ts = TripleSystem::new(&c).unwrap();
    let a = c.albert();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let k = J::random(&mut rng, small);
        let e = c.phi(&k, &E::diag(q(0), q(1))).unwrap();
        assert_eq!(e, E::new(a.norm(&k).unwrap(), k.clone(), a.sharp(&k), q(1)));
        let (pk, qk) = (c.phi_map(&k).unwrap(), c.psi_map(&k).unwrap());
        assert_eq!(pk.compose(&c.phi_map(&k.neg()).unwrap()).unwrap(), LinearMap::identity(DIM));
        assert_eq!(qk.compose(&c.psi_map(&k.neg()).unwrap()).unwrap(), LinearMap::identity(DIM));
        let (x, y) = (rand_elem(&mut rng), rand_elem(&mut rng));
        for f in [&pk, &qk] {
            let (fx, fy) = (c.apply(f, &x), c.apply(f, &y));
            assert_eq!(ts.b(&fx, &fy).unwrap(), ts.b(&x, &y).unwrap());
            assert_eq!(ts.q(&fx, &fx, &fx, &fy).unwrap(), ts.q(&x, &x, &x, &y).unwrap());
        }
    }
    assert!(ctx(3).phi(&J::one(), &E::one()).is_err());
}

#[test]
fn f_phi_preserves_the_triple_system() {
    let c = ctx(1);
    let ts = TripleSystem::new(&c).unwrap();
    let a = c.albert();
    assert_eq!(c.f_phi(&LinearMap::identity(27), &q(1)).unwrap(), LinearMap::identity(DIM));
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for lam in [q(2), q(-1), Q::new(1, 3)] {
        let f = c.f_phi(&a.psi_similarity(&lam).unwrap(), &lam).unwrap();
        let x = rand_elem(&mut rng);
        let fx = c.apply(&f, &x);
        assert_eq!(ts.q(&fx, &fx, &fx, &fx).unwrap(), ts.q(&x, &x, &x, &x).unwrap());
    }
    let s = a.diag_similarity(&[q(2), Q::new(1, 6), q(3)]).unwrap();
    let f = c.f_phi(&s, &q(1)).unwrap();
    let (x, y) = (rand_elem(&mut rng), rand_elem(&mut rng));
    assert_eq!(ts.b(&c.apply(&f, &x), &c.apply(&f, &y)).unwrap(), ts.b(&x, &y).unwrap());
    let psi2 = a.psi_similarity(&q(2)).unwrap();
    assert_eq!(c.f_phi(&psi2, &q(3)).err(), Some(BrownError::NotSimilarity));
}

#[test]
fn similarity_to_other_zeta() {
    let (c1, c5) = (ctx(1), ctx(5));
    let (t1, t5) = (TripleSystem::new(&c1).unwrap(), TripleSystem::new(&c5).unwrap());
    let f = c1.similarity_f(&c5).unwrap();
    assert_eq!(c1.similarity_f(&c1).unwrap(), LinearMap::identity(DIM));
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..3 {
        let (x, y) = (rand_elem(&mut rng), rand_elem(&mut rng));
        let (fx, fy) = (c1.apply(&f, &x), c1.apply(&f, &y));
        assert_eq!(t5.b(&fx, &fy).unwrap(), q(5) * t1.b(&x, &y).unwrap());
        assert_eq!(t5.q(&fx, &fx, &fx, &fx).unwrap(), q(25) * t1.q(&x, &x, &x, &x).unwrap());
    }
}

#[test]
fn zeta_swap_is_an_isomorphism() {
    let (c, c2) = (ctx(-3), ctx(9));
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..3 {
        let (x, y) = (rand_elem(&mut rng), rand_elem(&mut rng));
        let lhs = c.zeta_swap(&c.mul(&x, &y)).unwrap();
        let rhs = c2.mul(&c.zeta_swap(&x).unwrap(), &c.zeta_swap(&y).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn quadratic_descent() {
    let c = QuadBrown::split(2).unwrap();
    let s0 = c.s0();
    assert!(c.is_fixed(&s0));
    assert_eq!(c.mul(&s0, &s0), BrownElem::one().scale(&QuadExt::from_i64(2)));
    assert_eq!(c.mu(), q(2));
    assert!(c.is_fixed(&c.f1()) && c.is_fixed(&c.f2()));
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..5 {
        let x = c.from_coords(&(0..DIM).map(|_| small(&mut rng)).collect::<Vec<_>>()).unwrap();
        let y = c.from_coords(&(0..DIM).map(|_| small(&mut rng)).collect::<Vec<_>>()).unwrap();
        c.try_mul(&x, &y).unwrap();
        assert_eq!(c.from_coords(&c.coords(&x).unwrap()).unwrap(), x);
    }
    let ts = TripleSystem::new(&c).unwrap();
    let x = c.from_coords(&(0..DIM).map(|_| small(&mut rng)).collect::<Vec<_>>()).unwrap();
    let y = c.from_coords(&(0..DIM).map(|_| small(&mut rng)).collect::<Vec<_>>()).unwrap();
    assert_eq!(ts.b(&x, &y).unwrap(), ts.b_direct(&x, &y).unwrap());
    let t = ts.t(&x, &x, &y).unwrap();
    assert_eq!(ts.t(&x, &y, &x).unwrap(), t);
    assert!(c.is_fixed(&t));
}

#[test]
fn m_map_anchors() {
    let c = QuadBrown::split(2).unwrap();
    let up = c.upstairs();
    let d = c.delta();
    let m1 = up.m_apply(&d, &c.f1()).unwrap();
    let m2 = up.m_apply(&d, &c.f2()).unwrap();
    assert_eq!(m1, BrownElem::diag(QuadExt::zero(), (d.clone() * d.clone()).scaled(8)));
    assert_eq!(m2, BrownElem::diag(-QuadExt::one(), QuadExt::zero()));
    let h = up.h_map(&d, &BrownElem::diag(QuadExt::one(), QuadExt::zero())).unwrap();
    assert_eq!(h, BrownElem::diag(d.inverse().unwrap(), QuadExt::zero()));
    let mm = up.m_map(&d).unwrap();
    assert_eq!(up.apply(&mm, &c.f1()), m1);
}

#[test]
fn h_is_an_isometry_onto_the_standard_system() {
    let c = QuadBrown::split(3).unwrap();
    let up = c.upstairs();
    let d = c.delta();
    let std = TripleSystem::new(up).unwrap();
    let scaled = TripleSystem::with_scale(up, d.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let sample = |r: &mut ChaCha8Rng| c.field().random(r, 3);
    let x = BrownElem::random(&mut rng, sample);
    let y = BrownElem::random(&mut rng, sample);
    let z = BrownElem::random(&mut rng, sample);
    let h = |v: &BrownElem<QuadExt>| up.h_map(&d, v).unwrap();
    assert_eq!(std.b(&h(&x), &h(&y)).unwrap(), scaled.b(&x, &y).unwrap());
    assert_eq!(std.t(&h(&x), &h(&y), &h(&z)).unwrap(), h(&scaled.t(&x, &y, &z).unwrap()));
}

#[test]
fn octonion_entries_survive_coordinates() {
    let mut j = J::zero();
    j = j.add(&J::from_parts([q(0), q(0), q(0)], &Oct::basis(0), &Oct::zero(), &Oct::zero()));
    let e = E::new(q(1), j.clone(), J::zero(), q(0));
    assert_eq!(E::from_coords(&e.coords()).unwrap(), e);
    assert_eq!(e.coords()[4], q(1));
}
