use proptest::prelude::*;
use symstring_core::field::{Field, FieldElement};
use symstring_core::forms::{
    build_phi, is_hyperbolic_basis, prescribed_arf, radical_closed_form, type_pattern, QuadraticSpace, WittType,
};
use symstring_core::linalg::{normalize_point, vec_add};

fn nonzero(q: u32) -> impl Strategy<Value = FieldElement> {
    (1..q).prop_map(|b| FieldElement(b as u16))
}

fn any_elem(q: u32) -> impl Strategy<Value = FieldElement> {
    (0..q).prop_map(|b| FieldElement(b as u16))
}

fn scalars(k: u32, d: usize) -> impl Strategy<Value = (Field, Vec<FieldElement>)> {
    let f = Field::new(k).unwrap();
    prop::collection::vec(nonzero(f.q()), d - 1).prop_map(move |s| (f.clone(), s))
}

/// Witt type from the number of zeros of φ on all of V:
/// q^(2m−1) + ε(q^m − q^(m−1)).
fn witt_type_by_count(s: &QuadraticSpace) -> WittType {
    let q = s.field().q() as u64;
    let d = s.dim();
    let m = (d / 2) as u32;
    let mut zeros = 0u64;
    let mut v = vec![FieldElement::ZERO; d];
    for code in 0..q.pow(d as u32) {
        let mut c = code;
        for x in v.iter_mut() {
            *x = FieldElement((c % q) as u16);
            c /= q;
        }
        if s.eval_phi(&v).unwrap().is_zero() {
            zeros += 1;
        }
    }
    let base = q.pow(2 * m - 1);
    let delta = q.pow(m) - q.pow(m - 1);
    if zeros == base + delta {
        WittType::Plus
    } else {
        assert_eq!(zeros, base - delta);
        WittType::Minus
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polarization((f, s) in scalars(3, 5), u in prop::collection::vec(any_elem(8), 5), v in prop::collection::vec(any_elem(8), 5)) {
        let sp = build_phi(&f, &s).unwrap();
        let lhs = sp.eval_bil(&u, &v).unwrap();
        let rhs = f.add(sp.eval_phi(&vec_add(&f, &u, &v)).unwrap(), f.add(sp.eval_phi(&u).unwrap(), sp.eval_phi(&v).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn witt_type_matches_zero_count_q4_d4((f, s) in scalars(2, 4)) {
        let sp = build_phi(&f, &s).unwrap();
        prop_assert_eq!(sp.witt_type().unwrap(), witt_type_by_count(&sp));
    }

    #[test]
    fn witt_type_matches_zero_count_q8_d4((f, s) in scalars(3, 4)) {
        let sp = build_phi(&f, &s).unwrap();
        prop_assert_eq!(sp.witt_type().unwrap(), witt_type_by_count(&sp));
    }

    #[test]
    fn witt_type_matches_zero_count_q4_d6((f, s) in scalars(2, 6)) {
        let sp = build_phi(&f, &s).unwrap();
        prop_assert_eq!(sp.witt_type().unwrap(), witt_type_by_count(&sp));
    }

    #[test]
    fn closed_and_greedy_bases_agree((f, s) in scalars(4, 8)) {
        let sp = build_phi(&f, &s).unwrap();
        let closed = sp.hyperbolic_basis().unwrap();
        let greedy = sp.hyperbolic_basis_greedy().unwrap();
        prop_assert!(is_hyperbolic_basis(&sp, &closed).unwrap());
        prop_assert!(is_hyperbolic_basis(&sp, &greedy).unwrap());
        prop_assert_eq!(sp.arf_with_basis(&closed).unwrap(), sp.arf_with_basis(&greedy).unwrap());
        // a space without scalar metadata takes the greedy route
        let plain = QuadraticSpace::from_form_matrix(sp.phi().clone()).unwrap();
        prop_assert_eq!(plain.arf().unwrap(), sp.arf().unwrap());
    }

    #[test]
    fn radical_is_one_dimensional_or_zero((f, s) in scalars(3, 6)) {
        let sp = build_phi(&f, &s).unwrap();
        prop_assert!(sp.radical().is_empty());
    }
}

#[test]
fn radical_closed_form_sweep() {
    // 100 scalar tuples per (d, q) from a fixed LCG
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as u32
    };
    for k in [2u32, 3] {
        let f = Field::new(k).unwrap();
        for d in [3usize, 5, 7] {
            for _ in 0..100 {
                let s: Vec<FieldElement> =
                    (0..d - 1).map(|_| FieldElement((1 + next() % (f.q() - 1)) as u16)).collect();
                let sp = build_phi(&f, &s).unwrap();
                let rad = sp.radical();
                assert_eq!(rad.len(), 1);
                let z = radical_closed_form(&f, &s).unwrap();
                assert_eq!(normalize_point(&f, &rad[0]), z);
                assert_eq!(sp.radical_is_singular().unwrap(), sp.eval_phi(&z).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn closed_form_arf_matches_direct_exhaustively() {
    for k in 2..=4 {
        let f = Field::new(k).unwrap();
        for m in 2..=6 {
            for l in f.nonzero_elements() {
                for mu in f.nonzero_elements() {
                    let sp = build_phi(&f, &type_pattern(m, l, mu)).unwrap();
                    assert_eq!(sp.arf().unwrap(), prescribed_arf(&f, m, l, mu).unwrap(), "k={k} m={m}");
                }
            }
        }
    }
}

#[test]
fn type_regimes_by_m_mod_4() {
    for k in 2..=5 {
        let f = Field::new(k).unwrap();
        let inv_outside_n = |x: FieldElement| !f.in_artin_schreier(f.inv(x).unwrap());
        for m in 2..=7 {
            for l in f.nonzero_elements().filter(|&l| inv_outside_n(l)) {
                let sp = build_phi(&f, &type_pattern(m, l, l)).unwrap();
                assert_eq!(sp.arf().unwrap() == 0, m % 4 == 0 || m % 4 == 3);
                for mu in f.nonzero_elements().filter(|&mu| inv_outside_n(mu)) {
                    if f.in_artin_schreier(f.div(mu, f.square(l)).unwrap()) {
                        let sp = build_phi(&f, &type_pattern(m, l, mu)).unwrap();
                        assert_eq!(sp.arf().unwrap() == 0, m % 4 == 1 || m % 4 == 2);
                    }
                }
            }
        }
    }
}
