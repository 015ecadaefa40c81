use detlab_core::groebner::Ideal;
use detlab_core::polar::{hessian, PolarMapData};
use detlab_core::polyring::{Field, MonomialOrder, Monomial, PolyRing, Polynomial, PrimeField, Rationals, Ring, Q};
use detlab_core::structmat::{PolyMatrix, Provenance};
use detlab_core::syzygy::{betti_matches_hilbert, first_syzygy_module, graded_betti, linear_syzygies};
use detlab_core::Budget;
use proptest::prelude::*;

const NV: usize = 3;
const P: u64 = 1_000_003;

type Terms = Vec<(Vec<u16>, i64, i64)>;

fn terms(max_deg: u16, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, NV), -9i64..=9, 1i64..=4), 0..=max_terms)
}

fn homogeneous_terms(deg: u16, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(((0..=deg), (0..=deg), -5i64..=5), 1..=max_terms).prop_map(move |v| {
        v.into_iter()
            .map(|(a, b, c)| {
                let a = a.min(deg);
                let b = b.min(deg - a);
                (vec![a, b, deg - a - b], c, 1)
            })
            .collect()
    })
}

fn qpoly(ring: &Ring<Rationals>, t: &Terms) -> Polynomial<Rationals> {
    ring.from_terms(t.iter().map(|(e, n, d)| (Monomial::from_exps(e).unwrap(), Q::new(*n, *d))))
}

fn fpoly(ring: &Ring<PrimeField>, t: &Terms) -> Polynomial<PrimeField> {
    let f = *ring.field();
    ring.from_terms(t.iter().map(|(e, n, d)| (Monomial::from_exps(e).unwrap(), f.mul(&f.from_i64(*n), &f.inv(&f.from_i64(*d)).unwrap()))))
}

fn qring() -> Ring<Rationals> {
    PolyRing::xs(Rationals, NV)
}

fn fring() -> Ring<PrimeField> {
    PolyRing::xs(PrimeField::new(P).unwrap(), NV)
}

fn budget() -> Budget {
    Budget::seconds(5).step_cap(Some(20_000))
}

/// Unwraps a computation; a budget timeout discards the case instead of failing it.
macro_rules! done {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) if e.is_timeout() => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    };
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_rational(a in terms(3, 4), b in terms(3, 4), c in terms(3, 4)) {
        let r = qring();
        let (a, b, c) = (qpoly(&r, &a), qpoly(&r, &b), qpoly(&r, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn ring_axioms_modular(a in terms(3, 4), b in terms(3, 4), c in terms(3, 4)) {
        let r = fring();
        let (a, b, c) = (fpoly(&r, &a), fpoly(&r, &b), fpoly(&r, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_division_recovers_factor(a in terms(3, 4), b in terms(2, 3)) {
        let r = qring();
        let (a, b) = (qpoly(&r, &a), qpoly(&r, &b));
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), Some(a));
    }

    #[test]
    fn leibniz_rule(a in terms(3, 4), b in terms(3, 4), i in 0..NV) {
        let r = qring();
        let (a, b) = (qpoly(&r, &a), qpoly(&r, &b));
        let lhs = (&a * &b).differentiate(i).unwrap();
        let rhs = &(&a.differentiate(i).unwrap() * &b) + &(&a * &b.differentiate(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_identity(t in homogeneous_terms(4, 6)) {
        let r = qring();
        let f = qpoly(&r, &t);
        prop_assume!(!f.is_zero());
        let d = f.degree().unwrap() as i64;
        let mut sum = r.zero();
        for i in 0..NV {
            sum = &sum + &(&r.var(i) * &f.differentiate(i).unwrap());
        }
        prop_assert_eq!(sum, f.scale(&Q::int(d)));
        prop_assert!(PolarMapData::new(&f).unwrap().euler_holds());
    }

    #[test]
    fn hessian_is_symmetric(t in homogeneous_terms(3, 5)) {
        let f = qpoly(&qring(), &t);
        let h = hessian(&f).unwrap();
        for i in 0..NV {
            for j in 0..NV {
                prop_assert_eq!(h.get(i, j), h.get(j, i));
            }
        }
    }

    #[test]
    fn evaluation_is_multiplicative(a in terms(3, 4), b in terms(3, 4), pt in prop::collection::vec(-20i64..20, NV)) {
        let r = qring();
        let (a, b) = (qpoly(&r, &a), qpoly(&r, &b));
        let pt: Vec<Q> = pt.into_iter().map(Q::int).collect();
        let lhs = (&a * &b).evaluate(&pt).unwrap();
        prop_assert_eq!(lhs, a.evaluate(&pt).unwrap().mul(&b.evaluate(&pt).unwrap()));
    }

    #[test]
    fn rational_and_modular_agree(a in terms(3, 4), b in terms(3, 4)) {
        let (q, f) = (qring(), fring());
        let (qa, qb) = (qpoly(&q, &a), qpoly(&q, &b));
        let (fa, fb) = (fpoly(&f, &a), fpoly(&f, &b));
        prop_assert_eq!((&qa * &qb).reduce_mod(&f).unwrap(), &fa * &fb);
        prop_assert_eq!((&qa + &qb).reduce_mod(&f).unwrap(), &fa + &fb);
    }

    #[test]
    fn determinant_routes_agree_and_alternate(e in prop::collection::vec(terms(1, 2), 9)) {
        let r = qring();
        let entries: Vec<_> = e.iter().map(|t| qpoly(&r, t)).collect();
        let m = PolyMatrix::new(&r, 3, 3, entries, Provenance::Custom).unwrap();
        let d = m.det_cofactor();
        prop_assert_eq!(&d, &m.det_bareiss().unwrap());
        prop_assert_eq!(m.swap_rows(0, 2).det_cofactor(), -&d);
    }
}

fn small_ideal() -> impl Strategy<Value = Vec<Terms>> {
    prop::collection::vec(terms(2, 3), 1..=3)
}

fn homogeneous_ideal() -> impl Strategy<Value = Vec<Terms>> {
    prop::collection::vec(homogeneous_terms(2, 3), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn groebner_bases_self_certify(gens in small_ideal()) {
        let b = budget();
        let r = qring();
        let ideal = Ideal::new(&r, gens.iter().map(|t| qpoly(&r, t)).collect());
        let gb = done!(ideal.gb(&b));
        prop_assert!(gb.verify().unwrap());
        for g in ideal.gens() {
            prop_assert!(gb.reduces_to_zero(g).unwrap());
        }
        let r = fring();
        let ideal = Ideal::new(&r, gens.iter().map(|t| fpoly(&r, t)).collect());
        for ord in [MonomialOrder::grevlex(), MonomialOrder::lex()] {
            let gb = done!(ideal.groebner_basis(&ord, &b));
            prop_assert!(gb.verify().unwrap());
            for g in ideal.gens() {
                prop_assert!(gb.reduces_to_zero(g).unwrap());
            }
        }
    }

    #[test]
    fn hilbert_data_is_order_independent(gens in homogeneous_ideal()) {
        let r = qring();
        let ideal = Ideal::new(&r, gens.iter().map(|t| qpoly(&r, t)).collect());
        let b = budget();
        let a = done!(ideal.hilbert_data(&b));
        let l = done!(ideal.hilbert_data_for(&MonomialOrder::lex(), &b));
        prop_assert_eq!(a.dimension, l.dimension);
        prop_assert_eq!(a.multiplicity, l.multiplicity);
    }

    #[test]
    fn colon_and_intersection_containments(g1 in homogeneous_ideal(), g2 in homogeneous_ideal()) {
        let r = qring();
        let i = Ideal::new(&r, g1.iter().map(|t| qpoly(&r, t)).collect());
        let j = Ideal::new(&r, g2.iter().map(|t| qpoly(&r, t)).collect());
        prop_assume!(!j.is_zero());
        let b = budget();
        prop_assert!(done!(done!(i.colon(&j, &b)).contains_ideal(&i, &b)));
        let meet = done!(i.intersect(&j, &b));
        prop_assert!(done!(i.contains_ideal(&meet, &b)));
        prop_assert!(done!(j.contains_ideal(&meet, &b)));
    }

    #[test]
    fn betti_numbers_match_hilbert_numerator(gens in homogeneous_ideal()) {
        let r = qring();
        let ideal = Ideal::new(&r, gens.iter().map(|t| qpoly(&r, t)).collect());
        prop_assume!(!ideal.is_zero());
        let b = budget();
        let betti = done!(graded_betti(&ideal, NV + 2, &b));
        prop_assert!(betti_matches_hilbert(&betti, &done!(ideal.hilbert_data(&b))));
    }

    #[test]
    fn syzygy_columns_are_exact(gens in prop::collection::vec(homogeneous_terms(2, 3), 2..=4)) {
        let r = qring();
        let forms: Vec<_> = gens.iter().map(|t| qpoly(&r, t)).collect();
        prop_assume!(forms.iter().all(|f| !f.is_zero()));
        let full = done!(first_syzygy_module(&forms, &budget()));
        prop_assert!(full.verify(&forms));
        prop_assert!(linear_syzygies(&forms).unwrap().verify(&forms));
    }
}

#[test]
fn structured_syzygies_and_betti_tables() {
    let b = budget();
    for m in [PolyMatrix::hankel(Rationals, 3).unwrap(), PolyMatrix::catalecticant(Rationals, 3, 2).unwrap()] {
        let f = m.determinant().unwrap();
        let forms = f.gradient();
        assert!(linear_syzygies(&forms).unwrap().verify(&forms));
        assert!(first_syzygy_module(&forms, &b).unwrap().verify(&forms));
        let ideal = m.minors_ideal(2).unwrap();
        let betti = graded_betti(&ideal, 8, &b).unwrap();
        assert!(betti_matches_hilbert(&betti, &ideal.hilbert_data(&b).unwrap()));
        assert_eq!(betti.get(0, 0), 1);
    }
}
