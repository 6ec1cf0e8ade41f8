use jacobi::diagrams::{random_closed_diagram, LinComb};
use jacobi::relations::dims::{dim_a, dim_p, generating_series};
use jacobi::relations::*;
use jacobi::{qi, Q};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Textbook dense Gaussian elimination over the rationals.
fn dense_rank(mut m: Vec<Vec<Q>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for j in c..cols {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, planted_rank: usize) -> Vec<Vec<Q>> {
    let entry = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.6) {
            Q::zero()
        } else {
            Q::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into())
        }
    };
    let basis: Vec<Vec<Q>> = (0..planted_rank).map(|_| (0..cols).map(|_| entry(rng)).collect()).collect();
    (0..rows)
        .map(|_| {
            let mut r = vec![Q::zero(); cols];
            for b in &basis {
                let k = qi(rng.gen_range(-3..=3));
                for (x, y) in r.iter_mut().zip(b) {
                    *x += &k * y;
                }
            }
            r
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn sparse_rank_matches_dense(seed in any::<u64>(), planted in 0usize..=30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut rng, 30, 40, planted);
        prop_assert_eq!(rank_of(&m), dense_rank(m));
    }

    #[test]
    fn stu_pivot_order_is_irrelevant(seed in any::<u64>(), n in 1usize..=4, merges in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_closed_diagram(n, merges, &mut rng).unwrap();
        prop_assert!(stu_order_independence_check(&d, 3, &mut rng).unwrap());
    }
}

#[test]
fn empty_relations_keep_everything() {
    let e = Echelon::new(5);
    let q = Quotient::new(1, (0..5usize).collect(), e);
    assert_eq!(q.dim(), 5);
    assert_eq!(rank_of(&[]), 0);
}

#[test]
fn low_degree_dimensions() {
    let a: Vec<usize> = (1..=4).map(|n| dim_a(n, None).unwrap()).collect();
    let p: Vec<usize> = (1..=5).map(|n| dim_p(n, None).unwrap()).collect();
    assert_eq!(a, vec![0, 1, 1, 3]);
    assert_eq!(p, vec![0, 1, 1, 2, 3]);
}

#[test]
fn framed_chord_dimensions() {
    // without 1T the isolated chord survives: 1, 2, 3, 6
    let dims: Vec<usize> = (1..=4).map(|n| chord_quotient(n, false).unwrap().dim()).collect();
    assert_eq!(dims, vec![1, 2, 3, 6]);
}

#[test]
fn generating_series_counts_partitions() {
    // one primitive per degree gives the partition numbers
    assert_eq!(generating_series(&[1, 1, 1, 1, 1, 1], 6), vec![1, 1, 2, 3, 5, 7, 11]);
    assert!(generating_check(&[0, 1, 1, 3], &[0, 1, 1, 2]).is_ok());
    assert!(generating_check(&[0, 1, 2, 3], &[0, 1, 1, 2]).is_err());
}

#[test]
fn dims_table_bounds() {
    assert!(dims_table(0, None).unwrap().is_empty());
    assert!(matches!(dims_table(8, None), Err(jacobi::Error::Capacity(_))));
}

#[test]
fn disk_cache_matches_fresh_computation() {
    let dir = tempfile::tempdir().unwrap();
    let cold = dims_table(4, Some(dir.path())).unwrap();
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(files > 0);
    let warm = dims_table(4, Some(dir.path())).unwrap();
    assert_eq!(cold, warm);
    assert_eq!(cold, dims_table(4, None).unwrap());
}

#[test]
fn four_term_relations_are_in_the_span() {
    let q = chord_quotient(4, false).unwrap();
    let (_, rels) = four_term_codes(4).unwrap();
    for r in rels.iter().take(50) {
        let v: Vec<_> = r.iter().map(|(c, m)| (*c, qi(*m))).collect();
        let coords = q.coordinates(v.iter().map(|(c, m)| (c, m))).unwrap();
        assert!(coords.iter().all(|c| c.is_zero()));
    }
}

#[test]
fn stu_reduction_gives_chord_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let d = random_closed_diagram(4, 3, &mut rng).unwrap();
    let x = stu_reduce(&LinComb::from_diagram(&d).unwrap()).unwrap();
    for (d, _) in x.diagrams().unwrap() {
        assert!(d.trivalent().is_empty());
    }
}
