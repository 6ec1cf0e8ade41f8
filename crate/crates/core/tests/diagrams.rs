use jacobi::diagrams::*;
use jacobi::kernel::bubble;
use jacobi::lambda::{t_hat, x_hat};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Same diagram under fresh half-edge and vertex numbering, with every
/// internal cyclic order rotated by a random amount.
fn relabel(d: &Diagram, rng: &mut ChaCha8Rng) -> Diagram {
    let mut hperm: Vec<usize> = (0..d.pairing.len()).collect();
    hperm.shuffle(rng);
    let mut vperm: Vec<usize> = (0..d.vertices.len()).collect();
    vperm.shuffle(rng);
    let mut pairing = vec![0; d.pairing.len()];
    for h in 0..d.pairing.len() {
        pairing[hperm[h]] = hperm[d.pairing[h]];
    }
    let mut vertices = vec![vec![]; d.vertices.len()];
    for (v, hs) in d.vertices.iter().enumerate() {
        let mut hs: Vec<usize> = hs.iter().map(|&h| hperm[h]).collect();
        // rigid 4-valent vertices keep their order
        if hs.len() == 3 {
            let r = rand::Rng::gen_range(rng, 0..3);
            hs.rotate_left(r);
        }
        vertices[vperm[v]] = hs;
    }
    let mut wilson = d.wilson.as_ref().map(|w| w.iter().map(|&v| vperm[v]).collect::<Vec<_>>());
    if let Some(w) = wilson.as_mut() {
        if !w.is_empty() {
            let r = rand::Rng::gen_range(rng, 0..w.len());
            w.rotate_left(r);
        }
    }
    let mut legs = d.legs.as_ref().map(|l| l.iter().map(|&v| vperm[v]).collect::<Vec<_>>());
    if d.kind == Kind::OpenJacobi {
        if let Some(l) = legs.as_mut() {
            l.shuffle(rng);
        }
    }
    Diagram {
        kind: d.kind,
        pairing,
        vertices,
        wilson,
        legs,
        marks: d.marks.iter().map(|&(v, m)| (vperm[v], m)).collect(),
    }
}

fn flip_first_vertex(d: &Diagram) -> Option<Diagram> {
    let v = d.trivalent().into_iter().next()?;
    let mut e = d.clone();
    e.vertices[v].swap(0, 1);
    Some(e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn keys_ignore_labels(seed in any::<u64>(), n in 1usize..6, merges in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_closed_diagram(n, merges, &mut rng).unwrap();
        let a = canonicalize(&d).unwrap();
        let b = canonicalize(&relabel(&d, &mut rng)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn one_vertex_flip_negates(seed in any::<u64>(), n in 2usize..6, merges in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_closed_diagram(n, merges, &mut rng).unwrap();
        if let Some(e) = flip_first_vertex(&d) {
            let a = canonicalize(&d).unwrap();
            let b = canonicalize(&e).unwrap();
            prop_assert_eq!(&a.key, &b.key);
            prop_assert_eq!(a.sign, -b.sign);
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), n in 1usize..6, merges in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_closed_diagram(n, merges, &mut rng).unwrap();
        let back = from_json(&to_json(&d).unwrap()).unwrap();
        prop_assert_eq!(&back, &d);
        let dot = from_dot(&to_dot(&d, "x").unwrap()).unwrap();
        prop_assert_eq!(canonicalize(&dot).unwrap(), canonicalize(&d).unwrap());
    }

    #[test]
    fn key_representative_is_canonical(seed in any::<u64>(), n in 1usize..5, merges in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_closed_diagram(n, merges, &mut rng).unwrap();
        let cf = canonicalize(&d).unwrap();
        if cf.sign != 0 {
            let rep = cf.key.diagram().unwrap();
            let again = canonicalize(&rep).unwrap();
            prop_assert_eq!(again.key, cf.key.clone());
            prop_assert_eq!(again.sign, 1);
        }
    }
}

#[test]
fn chord_enumeration_counts() {
    // chord diagrams up to rotation of the circle
    let counts: Vec<usize> = (1..=5).map(|n| enumerate_chord_diagrams(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 18, 105]);
}

#[test]
fn degree_two_open_diagrams() {
    // the tripod reverses sign under a rotation of its legs, so only the bubble survives
    let d = enumerate_connected_open_diagrams(2, 4).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].key.diagram().unwrap().n_legs(), 2);
}

#[test]
fn lambda_generators_are_antisymmetric_in_legs() {
    for x in [t_hat().unwrap(), x_hat(3).unwrap()] {
        for (k, _) in x.terms.iter() {
            let d = k.diagram().unwrap();
            let mut e = d.clone();
            e.legs.as_mut().unwrap().swap(0, 1);
            let a = canonicalize(&d).unwrap();
            let b = canonicalize(&e).unwrap();
            assert_eq!(a.key, b.key);
            assert_eq!(a.sign, -b.sign);
        }
    }
}

#[test]
fn empty_diagram() {
    let e = Diagram::empty();
    assert_eq!(e.degree(), 0);
    let dot = to_dot(&e, "empty").unwrap();
    assert!(dot.contains("loop [shape=circle"));
    assert_eq!(from_dot(&dot).unwrap(), e);
}

#[test]
fn product_is_commutative() {
    let a = chord_diagram(&[1, 0]).unwrap();
    let b = chord_diagram(&[2, 3, 0, 1]).unwrap();
    let ab = LinComb::from_diagram(&product(&a, &b).unwrap()).unwrap();
    let ba = LinComb::from_diagram(&product(&b, &a).unwrap()).unwrap();
    assert_eq!(ab, ba);
    assert_eq!(ab.degree().unwrap(), 3);
}

#[test]
fn bubble_closes_to_degree_two() {
    let b = bubble().unwrap();
    assert_eq!(b.n_legs(), 2);
    let c = close(&b.to_open()).unwrap();
    assert_eq!(c.degree().unwrap(), 2);
}

#[test]
fn structural_errors() {
    let mut d = chord_diagram(&[1, 0]).unwrap();
    d.pairing[0] = 0;
    assert!(canonicalize(&d).is_err());
    assert!(from_json("{\"kind\": 3}").is_err());
}
