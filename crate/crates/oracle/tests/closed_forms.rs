use adams_core::cofree_q::q_char_poly;
use adams_core::combinatorics::{WeightedAlphabet, DEFAULT_WORD_CAP};
use adams_core::ring::{int, rational};
use adams_core::spectra::schur_indicator;
use adams_core::{Laurent, Poly, Rational};
use adams_oracle::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(int(n))
}

fn rational_instances(m: usize) -> Vec<(&'static str, HopfInstance<Rational>)> {
    let opts = BuildOptions::default();
    let sh = |v: &[u64]| build_shuffle(&WeightedAlphabet::from_u64(v), q(1), m, opts).unwrap();
    vec![
        ("shuffle(1)", sh(&[1])),
        ("shuffle(2)", sh(&[2])),
        ("shuffle(1,1)", sh(&[1, 1])),
        ("shuffle(1,1,3)", sh(&[1, 1, 3])),
        ("sym_powersum", build_sym_powersum(m, opts).unwrap()),
        ("qsym_monomial", build_qsym_monomial(m, opts).unwrap()),
    ]
}

#[test]
fn adams_char_polys_match_closed_form() {
    let ns = [q(-2), q(-1), q(0), q(1), q(2), q(3), rational(1, 2)];
    for (name, inst) in rational_instances(4) {
        for c in check_adams_char_polys(&inst, &ns, 4).unwrap() {
            assert!(c.ok, "{name}: n={} m={}: oracle {} vs closed form {}", c.n, c.m, c.oracle, c.closed_form);
        }
    }
}

#[test]
fn antipodes_match_basis_formulas() {
    for (name, inst) in rational_instances(5) {
        let s = antipode(&inst, 5).unwrap();
        let id = GradedEndomorphism::identity(&inst, 5);
        let e = GradedEndomorphism::unit_counit(&inst, 5);
        assert_eq!(convolution(&s, &id, &inst).unwrap(), e, "{name}");
        assert_eq!(convolution(&id, &s, &inst).unwrap(), e, "{name}");
        for m in 0..=5 {
            assert_eq!(s.block(m), &antipode_formula(&inst, m).unwrap(), "{name} m={m}");
            // eigenvalues are ±1 only
            let chi = char_poly_exact(s.block(m));
            let plus = Poly::from_ints(&[-1, 1]).pow(chi.root_multiplicity(&q(1)) as u64);
            let minus = Poly::from_ints(&[1, 1]).pow(chi.root_multiplicity(&q(-1)) as u64);
            assert_eq!(chi, plus.mul(&minus), "{name} m={m}");
        }
    }
}

#[test]
fn negative_adams_are_antipode_powers() {
    for (name, inst) in rational_instances(4) {
        for n in 1..=3i64 {
            let lhs = adams_endomorphism(&inst, &q(-n), 4).unwrap();
            assert_eq!(lhs, convolution_power(&inst, -n, 4).unwrap(), "{name} n={n}");
        }
    }
}

#[test]
fn schur_indicators() {
    for (name, inst) in rational_instances(4).into_iter().filter(|(n, _)| n.starts_with("shuffle")) {
        let profile = dimension_profile(&inst).unwrap();
        for n in [q(1), q(2)] {
            let s = antipode(&inst, 4).unwrap();
            let psi = adams_endomorphism(&inst, &n, 4).unwrap();
            let composite = s.compose(&psi);
            for m in 0..=4 {
                assert_eq!(composite.block(m).trace(), schur_indicator(&profile, &n, m).unwrap(), "{name} n={n} m={m}");
            }
        }
    }
}

#[test]
fn q_antipode_char_polys() {
    for v in [vec![1u64, 1], vec![2], vec![1, 0, 1], vec![3]] {
        let a = WeightedAlphabet::from_u64(&v);
        let inst = build_shuffle(&a, Laurent::q(), 4, BuildOptions::default()).unwrap();
        for m in 0..=4 {
            let s = antipode_matrix(&inst, m).unwrap();
            assert_eq!(s, antipode_formula(&inst, m).unwrap());
            let expected = q_char_poly(&a, m, DEFAULT_WORD_CAP).unwrap().to_poly();
            assert_eq!(char_poly_exact(&s), expected, "v={v:?} m={m}");
        }
    }
}

#[test]
fn numeric_q_instance_is_still_hopf() {
    let inst = build_shuffle(&WeightedAlphabet::from_u64(&[1, 1]), rational(2, 3), 4, BuildOptions::default()).unwrap();
    let s = antipode(&inst, 4).unwrap();
    let id = GradedEndomorphism::identity(&inst, 4);
    assert_eq!(convolution(&s, &id, &inst).unwrap(), GradedEndomorphism::unit_counit(&inst, 4));
    for m in 0..=4 {
        assert_eq!(s.block(m), &antipode_formula(&inst, m).unwrap());
    }
}

#[test]
fn json_fixtures_round_trip() {
    for (name, inst) in rational_instances(3) {
        let js = inst.to_json();
        let back = HopfInstance::<Rational>::from_json(&js, BuildOptions::default()).unwrap();
        assert_eq!(back.dims(), inst.dims(), "{name}");
        assert_eq!(antipode_matrix(&back, 3).unwrap(), antipode_matrix(&inst, 3).unwrap(), "{name}");
        assert!(antipode_formula(&back, 3).is_none());
    }
}
