use jacobi::diagrams::{chord_diagram, random_chord_diagram, random_closed_diagram, ChordCode, Diagram, LinComb};
use jacobi::lambda::{character, omega0_hat, t_hat};
use jacobi::weights::*;
use jacobi::{q, qi};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lc(d: &Diagram) -> LinComb {
    LinComb::from_diagram(d).unwrap()
}

#[test]
fn empty_and_single_chord() {
    let e = lc(&Diagram::empty());
    assert_eq!(wsys_sl(&e).unwrap().to_string(), "1");
    let chord = lc(&chord_diagram(&[1, 0]).unwrap());
    assert_eq!(wsys_sl(&chord).unwrap().to_string(), "N^1 - N^-1");
    assert_eq!(wsys_gl(&chord).unwrap().to_string(), "N^1");
    // Casimir of so_N in the vector representation with the half-trace form
    let so = wsys_so(&chord).unwrap();
    assert_eq!(so.eval(&qi(5)).unwrap(), oracle_scalar(&chord_diagram(&[1, 0]).unwrap(), "so5"));
}

fn oracle_scalar(d: &Diagram, name: &str) -> jacobi::Q {
    match oracle_eval(d, &LieAlgebraSpec::by_name(name).unwrap()).unwrap() {
        OracleValue::Scalar(x) => x,
        _ => panic!("closed diagram gave a tensor"),
    }
}

#[test]
fn so_calibration() {
    assert_eq!(so_scale().unwrap(), qi(1));
    let (tri, that) = calibration_pair().unwrap();
    let r = wsys_so(&lc(&that)).unwrap().div_exact(&wsys_so(&lc(&tri)).unwrap()).unwrap();
    assert_eq!(r, &LaurentPolyN::n() - &LaurentPolyN::int(2));
}

#[test]
fn characters_of_generators() {
    for (f, v) in [(Family::Sl, VogelParams::sl()), (Family::So, VogelParams::so())] {
        assert_eq!(character(&t_hat().unwrap(), f).unwrap(), v.t());
        assert_eq!(character(&omega0_hat().unwrap(), f).unwrap(), v.omega());
    }
}

#[test]
fn universal_dimensions() {
    let n = LaurentPolyN::n();
    assert_eq!(universal_dim(&VogelParams::sl()).unwrap(), &(&n * &n) - &LaurentPolyN::one());
    for (name, dim) in [("G2", 14), ("F4", 52), ("E6", 78), ("E7", 133), ("E8", 248)] {
        assert_eq!(universal_dim(&VogelParams::exceptional(name).unwrap()).unwrap(), LaurentPolyN::int(dim));
    }
    assert!(VogelParams::exceptional("E9").is_err());
}

#[test]
fn p_sl_character() {
    let p = VogelPoly::p_sl();
    assert!(character_eval(&p, &VogelParams::sl()).is_zero());
    assert!(!character_eval(&p, &VogelParams::so()).is_zero());
    assert!(!character_eval(&p, &VogelParams::exceptional("E8").unwrap()).is_zero());
}

#[test]
fn cubic_relation() {
    for (name, v) in [("sl2", VogelParams::sl().at(2)), ("sl3", VogelParams::sl().at(3)), ("so5", VogelParams::so().at(5))] {
        assert_eq!(cubic_relation_check(&LieAlgebraSpec::by_name(name).unwrap(), &v.unwrap()).unwrap(), qi(0), "{name}");
    }
}

#[test]
fn explicit_algebras_satisfy_jacobi() {
    for name in ["gl2", "sl2", "sl3", "so4", "so5"] {
        LieAlgebraSpec::by_name(name).unwrap().check().unwrap();
    }
    assert!(matches!(LieAlgebraSpec::by_name("sl9"), Err(jacobi::Error::Capacity(_))));
    assert!(LieAlgebraSpec::by_name("xx2").is_err());
}

#[test]
fn oracle_budget_is_enforced() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let d = random_chord_diagram(5, &mut rng).unwrap();
    let r = oracle_eval_budget(&d, &LieAlgebraSpec::by_name("sl3").unwrap(), 10);
    assert!(matches!(r, Err(jacobi::Error::Budget(_))));
}

#[test]
fn laurent_arithmetic() {
    let n = LaurentPolyN::n();
    let x = &n - &LaurentPolyN::monomial(q(1, 2), -1);
    let y = &x * &x;
    assert_eq!(y.div_exact(&x).unwrap(), x);
    assert_eq!(x.to_string(), "N^1 - 1/2*N^-1");
    assert_eq!(x.eval(&qi(2)).unwrap(), q(7, 4));
    assert!(LaurentPolyN::int(0).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ribbon_states_agree_with_stu(seed in any::<u64>(), n in 1usize..=5, merges in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = lc(&random_closed_diagram(n, merges, &mut rng).unwrap());
        prop_assert_eq!(wsys_sl(&d).unwrap(), wsys_sl_stu(&d).unwrap());
    }

    #[test]
    fn state_sums_match_oracles_in_degree_five(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_chord_diagram(5, &mut rng).unwrap();
        let code = ChordCode::from_diagram(&d).unwrap();
        prop_assert_eq!(chord_weight(Family::Sl, code).unwrap().eval(&qi(2)).unwrap(), oracle_scalar(&d, "sl2"));
        prop_assert_eq!(chord_weight(Family::So, code).unwrap().eval(&qi(4)).unwrap(), oracle_scalar(&d, "so4"));
    }

    #[test]
    fn jacobi_diagrams_match_oracles(seed in any::<u64>(), n in 2usize..=4, merges in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_closed_diagram(n, merges, &mut rng).unwrap();
        let x = lc(&d);
        prop_assert_eq!(wsys_sl(&x).unwrap().eval(&qi(3)).unwrap(), oracle_scalar(&d, "sl3"));
        prop_assert_eq!(wsys_so(&x).unwrap().eval(&qi(5)).unwrap(), oracle_scalar(&d, "so5"));
    }

    #[test]
    fn sl_from_gl_by_deleting_chords(seed in any::<u64>(), n in 1usize..=5) {
        // the sl propagator is the gl one minus 1/N times the identity, which deletes the chord
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_chord_diagram(n, &mut rng).unwrap();
        let chords = ChordCode::from_diagram(&d).unwrap().chords();
        let mut total = LaurentPolyN::zero();
        for mask in 0u32..1 << n {
            let kept: Vec<(usize, usize)> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| chords[i]).collect();
            let mut pts: Vec<usize> = kept.iter().flat_map(|&(a, b)| [a, b]).collect();
            pts.sort();
            let pos = |p: usize| pts.iter().position(|&x| x == p).unwrap();
            let mut m = vec![0; pts.len()];
            for &(a, b) in &kept {
                m[pos(a)] = pos(b);
                m[pos(b)] = pos(a);
            }
            let sub = if m.is_empty() { Diagram::empty() } else { chord_diagram(&m).unwrap() };
            let k = mask.count_ones() as i32;
            let sign = if k % 2 == 0 { qi(1) } else { qi(-1) };
            total = &total + &wsys_gl(&lc(&sub)).unwrap().shift(-k).scale(&sign);
        }
        prop_assert_eq!(total, wsys_sl(&lc(&d)).unwrap());
    }

    #[test]
    fn laurent_text_round_trip(cs in proptest::collection::vec((-5i32..5, -20i64..20, 1i64..4), 0..6)) {
        let mut p = LaurentPolyN::zero();
        for (e, a, b) in cs {
            p.add_term(e, q(a, b));
        }
        let s = p.to_string();
        prop_assert_eq!(s.parse::<LaurentPolyN>().unwrap(), p);
    }
}
