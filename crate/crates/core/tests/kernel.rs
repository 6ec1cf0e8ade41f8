use jacobi::diagrams::{close_lc, enumerate_connected_open_diagrams, LinComb};
use jacobi::kernel::*;
use jacobi::lambda::{first_trivalent, insert, omega_p_sl};
use jacobi::weights::{wsys_sl, wsys_so, Family};
use jacobi::qi;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn order8() -> &'static KernelElement {
    static E: OnceLock<KernelElement> = OnceLock::new();
    E.get_or_init(|| build_primitive_kernel(8).unwrap().remove(0))
}

#[test]
fn order8_vanishes_on_sl_but_not_on_so() {
    let e = order8();
    assert!(wsys_sl(&e.closed_form).unwrap().is_zero());
    let direct = wsys_so(&e.closed_form).unwrap();
    assert!(!direct.is_zero());
    assert_eq!(direct, wsys_factored(e, Family::So).unwrap());
}

#[test]
fn order8_is_primitive() {
    let e = order8();
    assert!(e.is_primitive());
    let open = e.open_form.as_ref().unwrap();
    assert!(!open.is_zero());
    for (d, _) in open.diagrams().unwrap() {
        assert_eq!(d.components().len(), 1);
        assert!(!d.trivalent().is_empty());
    }
}

#[test]
fn dropping_a_term_breaks_the_kernel() {
    let m = order8().mutated();
    assert!(!wsys_sl(&m).unwrap().is_zero());
}

#[test]
fn omega_p_sl_kills_random_connected_diagrams() {
    let lambda = omega_p_sl().unwrap();
    let mut pool = vec![];
    for n in 2..=3 {
        for cf in enumerate_connected_open_diagrams(n, 4).unwrap() {
            let d = cf.key.diagram().unwrap();
            if first_trivalent(&d).is_some() {
                pool.push(d);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for u in pool.choose_multiple(&mut rng, 10) {
        let x = insert(&lambda, u, first_trivalent(u).unwrap()).unwrap();
        let closed = close_lc(&x).unwrap();
        assert!(wsys_sl(&closed).unwrap().is_zero());
    }
}

#[test]
fn order6_element() {
    let es = build_nonprimitive_kernel(6).unwrap();
    assert_eq!(es.len(), 1);
    let x = &es[0].closed_form;
    assert!(wsys_sl(x).unwrap().is_zero());
    let c = quotient_coordinates(x, 6).unwrap();
    assert!(c.iter().any(|v| *v != qi(0)));
    // the drawn combination is a multiple of the product form
    let fig = quotient_coordinates(&order6_figure().unwrap(), 6).unwrap();
    assert_eq!(jacobi::relations::rank_of(&[c, fig]), 1);
}

#[test]
fn order7_elements() {
    let es = build_nonprimitive_kernel(7).unwrap();
    assert_eq!(es.len(), 3);
    for e in &es {
        assert!(wsys_sl(&e.closed_form).unwrap().is_zero(), "{}", e.name);
    }
    let xs: Vec<&LinComb> = es.iter().map(|e| &e.closed_form).collect();
    assert_eq!(quotient_rank(&xs, 7).unwrap(), 3);
}

#[test]
fn order9_elements() {
    let es = build_primitive_kernel(9).unwrap();
    assert_eq!(es.len(), 2);
    let opt = VerifyOptions { oracles: vec![], ..Default::default() };
    let rows: Vec<KernelRow> = es.iter().map(|e| verify_kernel(e, &opt).unwrap()).collect();
    assert!(rows.iter().all(|r| r.verified && r.sl.is_zero()));
    assert_eq!(so_rank(&rows), 2);
}

#[test]
fn order8_report_row() {
    let row = verify_kernel(order8(), &VerifyOptions::default()).unwrap();
    assert!(row.verified);
    assert_eq!(row.so_method, "characters");
    let json = serde_json::to_value(&row).unwrap();
    assert_eq!(json["sl"], "0");
}

#[test]
fn orders_without_elements() {
    assert!(build_order(5).unwrap().is_empty());
    assert!(kernel_dims_report(11, &VerifyOptions::default()).is_err());
    let rep = kernel_dims_report(5, &VerifyOptions::default()).unwrap();
    assert!(rep.rows.is_empty());
    assert!(rep.orders.iter().all(|o| o.constructed == 0 && o.bound == 0 && o.saturated));
}

#[test]
fn split_closure_direct_matches_factored() {
    let e = order8();
    let direct = split_direct(e, Family::So).unwrap();
    assert!(!direct.is_zero());
    assert_eq!(direct, split_factored(e, Family::So).unwrap());
    assert!(split_direct(e, Family::Sl).unwrap().is_zero());
}
