use chamber_zeta::algebra::{QPoly, RationalFn, Series, UPoly};
use chamber_zeta::complex::{
    chamber_vertices, enumerate_box, gallery_panel_types, out_steps, out_transitions, vertex_type, ChamberBox,
    PointedChamber,
};
use chamber_zeta::determinant::{assemble_m, det_bareiss, det_modular, schur_iterate, PolyMatrix};
use chamber_zeta::gallery::{enumerate_closed, weighted_count};
use chamber_zeta::transfer::trace_stabilized;
use chamber_zeta::QMode;
use num_bigint::BigInt;
use proptest::prelude::*;

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-20i64..20, 0..5).prop_map(|c| QPoly::from_i64s(&c))
}

fn upoly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(qpoly(), 0..5).prop_map(UPoly::from_coeffs)
}

/// Polynomials with constant term one, so they are units in the series ring.
fn unit_upoly() -> impl Strategy<Value = UPoly> {
    upoly().prop_map(|p| &UPoly::one() + &p.shift(1))
}

fn chamber() -> impl Strategy<Value = PointedChamber> {
    (0u32..12, 0u32..12, 0usize..6).prop_map(|(a, b, slot)| PointedChamber::from_slot(a + b, b, slot))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qpoly_ring_axioms(a in qpoly(), b in qpoly(), c in qpoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn qpoly_exact_division(a in qpoly(), b in qpoly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn qpoly_specialization_is_a_ring_map(a in qpoly(), b in qpoly(), q in -6i64..6) {
        let q = BigInt::from(q);
        prop_assert_eq!((&a * &b).specialize(&q), &a.specialize(&q) * &b.specialize(&q));
        prop_assert_eq!((&a + &b).eval(&q), a.eval(&q) + b.eval(&q));
    }

    #[test]
    fn upoly_ring_axioms(a in upoly(), b in upoly(), c in upoly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn ratfn_field_operations(a in unit_upoly(), b in unit_upoly(), c in upoly()) {
        let x = RationalFn::new(c, a.clone()).unwrap();
        let y = RationalFn::new(b.clone(), a).unwrap();
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&y * &y.recip().unwrap(), RationalFn::one());
        prop_assert_eq!(x.checked_div(&y).unwrap(), &x * &y.recip().unwrap());
    }

    #[test]
    fn series_exp_log_roundtrip(p in unit_upoly()) {
        let s = Series::from_upoly(&p, 8);
        prop_assert_eq!(s.log().unwrap().exp().unwrap(), s.clone());
        prop_assert_eq!(&s * &s.inverse().unwrap(), Series::one(8));
    }

    #[test]
    fn modular_determinant_matches_bareiss(entries in prop::collection::vec(upoly(), 16)) {
        let rows: Vec<Vec<UPoly>> = entries.chunks(4).map(|r| r.to_vec()).collect();
        let m = PolyMatrix::from_rows(rows);
        prop_assert_eq!(det_modular(&m), det_bareiss(&m).unwrap());
    }

    #[test]
    fn out_weight_is_q(c in chamber()) {
        let total = out_transitions(c).into_iter().fold(QPoly::zero(), |acc, (_, w)| &acc + &w);
        prop_assert_eq!(total, QPoly::q());
    }

    #[test]
    fn chambers_have_type_one(c in chamber()) {
        let [a, b, d] = chamber_vertices(c).map(vertex_type);
        prop_assert_eq!((a + 1) % 3, b);
        prop_assert_eq!((b + 1) % 3, d);
    }

    #[test]
    fn steps_cross_a_panel(c in chamber()) {
        let [_, v1, v2] = chamber_vertices(c);
        for (dst, _) in out_steps(c) {
            let w = chamber_vertices(dst);
            prop_assert_eq!(w[0], v1);
            prop_assert_eq!(w[1], v2);
            prop_assert_eq!(gallery_panel_types(&[c, dst]).unwrap(), vec![vertex_type(chamber_vertices(c)[0])]);
        }
    }

    #[test]
    fn trace_matches_enumeration(n in 1usize..8, q in 2i64..40) {
        let q = QMode::numeric(q);
        prop_assert_eq!(trace_stabilized(n as u32, &q), weighted_count(n, &q));
    }

    #[test]
    fn schur_route_matches_blocks(k in 1usize..4, n in 1usize..4, q in 2i64..30) {
        let q = QMode::numeric(q);
        let direct = det_modular(&assemble_m(k, n, &q).assembled);
        let schur = det_modular(&schur_iterate(k, n, &q).level_matrix(&q));
        prop_assert_eq!(direct, schur);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_walks_canonical_and_cyclic(n in 3usize..10, pick in any::<prop::sample::Index>(), r in 0usize..12) {
        let walks = enumerate_closed(n);
        prop_assume!(!walks.is_empty());
        let w = &walks[pick.index(walks.len())];
        let canon = w.canonical();
        prop_assert_eq!(canon.canonical(), canon.clone());
        prop_assert_eq!(w.rotate(r).canonical(), canon);
        prop_assert_eq!(w.rotate(r).weight(), w.weight());
        prop_assert_eq!(n % w.period(), 0);
        prop_assert_eq!(w.rotate(w.period()), w.clone());

        let mut closed = w.chambers().to_vec();
        closed.push(closed[0]);
        let types = gallery_panel_types(&closed).unwrap();
        for pair in types.windows(2) {
            prop_assert_eq!((pair[0] + 1) % 3, pair[1]);
        }
    }

    #[test]
    fn powers_decompose(n in 1usize..5) {
        // a walk repeated j times has the same period and weight raised to j
        for w in enumerate_closed(n) {
            let mut rep = w.chambers().to_vec();
            rep.extend_from_slice(w.chambers());
            let twice = chamber_zeta::gallery::ClosedWalk::new(rep).unwrap();
            prop_assert_eq!(twice.period(), w.period());
            prop_assert_eq!(twice.weight(), w.weight().pow(2));
        }
    }
}

#[test]
fn box_chambers_all_have_out_weight_q() {
    for c in enumerate_box(ChamberBox::new(5, 5)) {
        let total = out_transitions(c).into_iter().fold(QPoly::zero(), |acc, (_, w)| &acc + &w);
        assert_eq!(total, QPoly::q(), "{c}");
    }
}
