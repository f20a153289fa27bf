use proptest::prelude::*;

use cremona_core::algebra::{
    gcd, is_squarefree, rat, PrimeField, square_class_of, squarefree_decompose, MPoly, Monomial, RatFn, Rational,
};
use cremona_core::birmap::{canonicalize, AffineMap, Point, ProjMap};
use cremona_core::deform::normal_derivative;
use cremona_core::jonquieres::{det_class, extract, f_h, in_j1, is_in_jn, JonqElt, Mat2K};
use cremona_core::oracle::{probably_equal, OracleConfig};
use cremona_core::paths::{
    connect_to_identity, pgl_path, pointwise_invert, pointwise_product, reverse, ConnectOptions,
};
use cremona_core::text::{parse_affine, parse_proj};

fn poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -5i64..=5), 1..=max_terms)
        .prop_map(move |ts| MPoly::from_terms(nvars, ts.into_iter().map(|(e, c)| (Monomial::new(e), rat(c)))))
}

fn nonzero_poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    poly(nvars, max_exp, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfn(nvars: usize) -> impl Strategy<Value = RatFn> {
    (nonzero_poly(nvars, 2, 3), nonzero_poly(nvars, 2, 2)).prop_map(|(a, b)| RatFn::new(a, b).unwrap())
}

fn to_rat(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

fn matrix(k: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, k), k)
        .prop_filter("invertible", |m| ProjMap::linear(&to_rat(m)).is_ok())
}

fn linear(k: usize) -> impl Strategy<Value = ProjMap> {
    matrix(k).prop_map(|m| ProjMap::linear(&to_rat(&m)).unwrap())
}

/// `a ∘ σ ∘ b` in the plane.
fn quadratic() -> impl Strategy<Value = ProjMap> {
    (linear(3), linear(3)).prop_map(|(a, b)| {
        a.compose(&ProjMap::standard_involution(2)).unwrap().compose(&b).unwrap()
    })
}

/// Linear maps of the plane fixing `(1:1:1)`.
fn fixing_linear() -> impl Strategy<Value = ProjMap> {
    (prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 3), 1i64..=4).prop_filter_map(
        "invertible",
        |(m, s)| {
            let rows: Vec<Vec<i64>> = m.iter().map(|r| vec![r[0], r[1], s - r[0] - r[1]]).collect();
            ProjMap::linear(&to_rat(&rows)).ok()
        },
    )
}

fn mobius_base() -> impl Strategy<Value = AffineMap> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter("invertible", |(a, b, c, d)| a * d - b * c != 0)
        .prop_map(|(a, b, c, d)| {
            let x = RatFn::var(1, 0);
            let one = RatFn::one(1);
            let m = |p: i64, q: i64, r: i64, s: i64| {
                let num = &x.scale(&rat(p)) + &one.scale(&rat(q));
                let den = &x.scale(&rat(r)) + &one.scale(&rat(s));
                AffineMap::new(vec![&num * &den.recip().unwrap()]).unwrap()
            };
            m(a, b, c, d).certify(m(d, -b, -c, a)).unwrap()
        })
}

fn fiber(m: usize) -> impl Strategy<Value = Mat2K> {
    prop::collection::vec(poly(m, 1, 2), 4).prop_filter_map("invertible", move |e| {
        Mat2K::new([0, 1, 2, 3].map(|i| RatFn::from_poly(e[i].clone()))).ok()
    })
}

fn plane_jonq() -> impl Strategy<Value = JonqElt> {
    (fiber(1), mobius_base()).prop_map(|(a, b)| JonqElt::new(a, b).unwrap())
}

fn space_jonq() -> impl Strategy<Value = JonqElt> {
    (fiber(2), -2i64..=2).prop_map(|(a, k)| {
        let (u, v) = (RatFn::var(2, 0), RatFn::var(2, 1));
        let base = AffineMap::new(vec![&u + &v.scale(&rat(k)), v.clone()])
            .unwrap()
            .certify(AffineMap::new(vec![&u - &v.scale(&rat(k)), v]).unwrap())
            .unwrap();
        JonqElt::new(a, base).unwrap()
    })
}

/// Maps of the plane preserving `y = 0`: a shear in `y` after a de Jonquières
/// element whose fiber fixes `y = 0`.
fn x_preserving() -> impl Strategy<Value = AffineMap> {
    (fiber(1), mobius_base(), poly(1, 2, 2)).prop_filter_map("fiber fixes 0", |(a, b, p)| {
        let e = a.entries();
        let moved = Mat2K::new([e[0].clone(), RatFn::zero(1), e[2].clone(), e[3].clone()]).ok()?;
        let j = JonqElt::new(moved, b).ok()?.embed().ok()?;
        let y = RatFn::var(2, 1);
        let py = &RatFn::from_poly(p.remap(2, &[1])) * &y;
        let x = RatFn::var(2, 0);
        let shear = AffineMap::new(vec![&x + &py, y.clone()])
            .unwrap()
            .certify(AffineMap::new(vec![&x - &py, y]).unwrap())
            .unwrap();
        shear.compose(&j).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gcd_divides_with_coprime_cofactors(g in nonzero_poly(3, 2, 3), u in nonzero_poly(3, 2, 3), v in nonzero_poly(3, 2, 3)) {
        let (a, b) = (&g * &u, &g * &v);
        let d = gcd(&a, &b);
        let ca = a.div_exact(&d).unwrap();
        let cb = b.div_exact(&d).unwrap();
        prop_assert!(gcd(&ca, &cb).is_one());
        prop_assert!(d.div_exact(&g.monic()).is_some());
    }

    #[test]
    fn squarefree_reassembles(f in nonzero_poly(2, 2, 3), g in nonzero_poly(2, 2, 2), c in 1i64..=5) {
        let p = (&f * &g.pow(2)).scale(&rat(c));
        let dec = squarefree_decompose(&p).unwrap();
        prop_assert_eq!(dec.reassemble(2), p);
        for (q, _) in &dec.factors {
            prop_assert!(is_squarefree(q));
        }
    }

    #[test]
    fn square_class_laws(h in ratfn(2), k in ratfn(2), s in ratfn(2)) {
        let c = square_class_of(&h).unwrap();
        prop_assert_eq!(square_class_of(&(&h * &(&s * &s))).unwrap(), c.clone());
        prop_assert_eq!(square_class_of(&(&h * &k)).unwrap(), c.mul(&square_class_of(&k).unwrap()));
    }

    #[test]
    fn polynomial_ring_laws(p in poly(3, 2, 4), q in poly(3, 2, 4), r in poly(3, 2, 4)) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&(&p - &p), &MPoly::zero(3));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn compose_is_associative(f in quadratic(), g in quadratic(), h in linear(3)) {
        let lhs = f.compose(&g).unwrap().compose(&h).unwrap();
        let rhs = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn certified_inverses_compose_to_identity(f in quadratic()) {
        let g = f.inverse().unwrap();
        prop_assert!(f.compose(&g).unwrap().is_identity());
        prop_assert!(g.compose(&f).unwrap().is_identity());
        prop_assert_eq!(f.invert().unwrap(), g);
    }

    #[test]
    fn canonical_form_is_idempotent(f in quadratic(), c in 1i64..=7) {
        let scaled: Vec<MPoly> = f.components().iter().map(|p| p.scale(&rat(c))).collect();
        prop_assert_eq!(canonicalize(scaled).unwrap(), f.clone());
        prop_assert_eq!(canonicalize(f.components().to_vec()).unwrap(), f);
    }

    #[test]
    fn evaluation_respects_composition(f in quadratic(), g in quadratic(), p in prop::collection::vec(-4i64..=4, 3)) {
        let Ok(pt) = Point::from_ints(&p) else { return Ok(()) };
        let fg = f.compose(&g).unwrap();
        if let (Ok(a), Ok(b)) = (fg.evaluate(&pt), g.evaluate(&pt).and_then(|q| f.evaluate(&q))) {
            prop_assert!(a.projectively_eq(&b));
        }
    }

    #[test]
    fn tangent_actions_multiply(a in fixing_linear(), b in fixing_linear(), c in fixing_linear()) {
        let p = Point::from_ints(&[1, 1, 1]).unwrap();
        let f = a.compose(&ProjMap::standard_involution(2)).unwrap().compose(&b).unwrap();
        let g = c;
        prop_assert!(f.evaluate(&p).unwrap().projectively_eq(&p));
        let tf = f.tangent_action(&p).unwrap();
        let tg = g.tangent_action(&p).unwrap();
        let tfg = f.compose(&g).unwrap().tangent_action(&p).unwrap();
        prop_assert!(tfg.projectively_eq(&tf.compose(&tg)));
    }

    #[test]
    fn oracle_agrees_with_equality(f in quadratic(), g in quadratic()) {
        let cfg = OracleConfig::new(PrimeField::default_oracle(), 20, 1).unwrap();
        prop_assert_eq!(probably_equal(&f, &g, &cfg).unwrap(), f == g);
        prop_assert!(probably_equal(&f, &f.compose(&ProjMap::identity(2)).unwrap(), &cfg).unwrap());
    }

    #[test]
    fn affine_round_trip(f in quadratic()) {
        prop_assert_eq!(f.to_affine().unwrap().to_proj().unwrap(), f);
    }

    #[test]
    fn print_parse_round_trip(f in quadratic(), r in ratfn(2), s in ratfn(2)) {
        prop_assert_eq!(parse_proj(&f.to_string()).unwrap(), f);
        let g = AffineMap::new(vec![r, s]).unwrap();
        prop_assert_eq!(parse_affine(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn embed_is_a_homomorphism(e in plane_jonq(), o in plane_jonq()) {
        let lhs = e.compose(&o).unwrap().embed().unwrap();
        let rhs = e.embed().unwrap().compose(&o.embed().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(extract(&e.embed().unwrap()).unwrap(), e.clone());
        prop_assert!(in_j1(&e.fiber().mul(e.fiber())));
    }

    #[test]
    fn embed_is_a_homomorphism_in_space(e in space_jonq(), o in space_jonq()) {
        let lhs = e.compose(&o).unwrap().embed().unwrap();
        let rhs = e.embed().unwrap().compose(&o.embed().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(det_class(&e.fiber().mul(o.fiber())), det_class(e.fiber()).mul(&det_class(o.fiber())));
    }

    #[test]
    fn involutions_f_h(h in ratfn(1), k in ratfn(1)) {
        let e = f_h(&h).unwrap().embed().unwrap();
        prop_assert!(e.compose(&e).unwrap().is_identity());
        let same = det_class(f_h(&h).unwrap().fiber()) == det_class(f_h(&k).unwrap().fiber());
        let quotient = &h * &k.recip().unwrap();
        prop_assert_eq!(same, square_class_of(&quotient).unwrap().is_trivial());
    }

    #[test]
    fn normal_derivative_is_idempotent(f in x_preserving()) {
        let f0 = normal_derivative(&f).unwrap();
        prop_assert_eq!(normal_derivative(&f0).unwrap(), f0.clone());
        prop_assert!(is_in_jn(&f0));
    }

    #[test]
    fn pgl_paths_multiply(a in matrix(3), b in matrix(3)) {
        let (ra, rb) = (to_rat(&a), to_rat(&b));
        let p = pointwise_product(&pgl_path(&ra).unwrap(), &pgl_path(&rb).unwrap()).unwrap();
        let ab = ProjMap::linear(&ra).unwrap().compose(&ProjMap::linear(&rb).unwrap()).unwrap();
        prop_assert_eq!(p.specialize(&rat(1)).unwrap(), ab);
        prop_assert!(p.specialize(&rat(0)).unwrap().is_identity());
        prop_assert!(p.exclusion().eval(&[rat(0)]) != rat(0) && p.exclusion().eval(&[rat(1)]) != rat(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn inverted_path_ends_at_the_inverse(g in quadratic(), seed in 0u64..100) {
        let p = connect_to_identity(&g, &ConnectOptions { seed, ..Default::default() }).unwrap();
        prop_assert_eq!(p.specialize(&rat(1)).unwrap(), g.clone());
        let q = pointwise_invert(&p).unwrap();
        prop_assert_eq!(q.specialize(&rat(1)).unwrap(), g.inverse().unwrap());
        let r = reverse(&p);
        prop_assert_eq!(r.specialize(&rat(0)).unwrap(), g);
        prop_assert!(r.specialize(&rat(1)).unwrap().is_identity());
    }
}
