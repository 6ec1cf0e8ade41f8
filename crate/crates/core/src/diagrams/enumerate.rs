use super::chord::chord_codes;
use super::{canonicalize, CanonicalForm, Diagram, Key, Kind, NONE};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

pub fn enumerate_chord_diagrams(n: usize) -> Result<Vec<CanonicalForm>> {
    if n == 0 || n > 8 {
        return Err(Error::Capacity(format!("chord enumeration supports 1..=8, got {n}")));
    }
    let mut out: Vec<CanonicalForm> = chord_codes(n)
        .iter()
        .map(|c| canonicalize(&c.diagram()?))
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(out)
}

fn subdivide(d: &mut Diagram, h: usize) -> usize {
    let p = d.pairing[h];
    let b = d.pairing.len();
    d.pairing.extend([h, p, NONE]);
    d.pairing[h] = b;
    d.pairing[p] = b + 1;
    d.vertices.push(vec![b, b + 1, b + 2]);
    b + 2
}

fn new_leg(d: &mut Diagram, f: usize) {
    let b = d.pairing.len();
    d.pairing.push(f);
    d.pairing[f] = b;
    d.vertices.push(vec![b]);
    d.legs.as_mut().unwrap().push(d.vertices.len() - 1);
}

fn edges(d: &Diagram) -> Vec<usize> {
    (0..d.pairing.len()).filter(|&h| h < d.pairing[h]).collect()
}

/// One-step extensions: new leg on an edge, a new edge between two edge
/// points, or a tadpole on an edge.
fn extensions(d: &Diagram, max_legs: usize) -> Vec<Diagram> {
    let es = edges(d);
    let mut out = vec![];
    for &e in &es {
        if d.n_legs() < max_legs {
            let mut x = d.clone();
            let f = subdivide(&mut x, e);
            new_leg(&mut x, f);
            out.push(x);
        }
        let mut x = d.clone();
        let f = subdivide(&mut x, e);
        let b = x.pairing.len();
        x.pairing.extend([f, b + 2, b + 1]);
        x.pairing[f] = b;
        x.vertices.push(vec![b, b + 1, b + 2]);
        out.push(x);
    }
    for (i, &e1) in es.iter().enumerate() {
        for &e2 in &es[i..] {
            let mut x = d.clone();
            let f1 = subdivide(&mut x, e1);
            // after subdividing, e2's half-edge still names an edge
            let h2 = if e1 == e2 { x.pairing[e1] } else { e2 };
            let f2 = subdivide(&mut x, h2);
            x.join(f1, f2);
            out.push(x);
        }
    }
    out
}

/// Every connected open diagram of degree `n` with 1..=max_legs legs,
/// AS-null and tadpole diagrams included, keyed canonically.
pub fn open_diagrams_all(n: usize, max_legs: usize) -> Result<Vec<BTreeSet<Key>>> {
    if n == 0 || n > 7 {
        return Err(Error::Capacity(format!("open enumeration supports 1..=7, got {n}")));
    }
    let strut = {
        let mut b = super::Builder::new();
        let (x, y) = (b.vertex(1), b.vertex(1));
        let (hx, hy) = (b.he(x, 0), b.he(y, 0));
        b.edge(hx, hy);
        b.build(Kind::OpenJacobi, None, Some(vec![x, y]))?
    };
    let tad = {
        let mut b = super::Builder::new();
        let (x, t) = (b.vertex(1), b.vertex(3));
        let (h, t0, t1, t2) = (b.he(x, 0), b.he(t, 0), b.he(t, 1), b.he(t, 2));
        b.edge(h, t0);
        b.edge(t1, t2);
        b.build(Kind::OpenJacobi, None, Some(vec![x]))?
    };
    let mut levels = vec![BTreeSet::new()];
    for d in [&strut, &tad] {
        if d.n_legs() <= max_legs {
            levels[0].insert(canonicalize(d)?.key);
        }
    }
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for k in levels.last().unwrap() {
            let d = k.diagram()?;
            for x in extensions(&d, max_legs) {
                next.insert(canonicalize(&x)?.key);
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

pub fn enumerate_connected_open_diagrams(n: usize, max_legs: usize) -> Result<Vec<CanonicalForm>> {
    let levels = open_diagrams_all(n, max_legs)?;
    let mut out = vec![];
    for k in &levels[n - 1] {
        let cf = canonicalize(&k.diagram()?)?;
        if cf.sign != 0 {
            out.push(CanonicalForm { key: k.clone(), sign: 1 });
        }
    }
    Ok(out)
}

/// Group keys by leg count.
pub fn by_legs(keys: &[Key]) -> Result<BTreeMap<usize, Vec<Key>>> {
    let mut m: BTreeMap<usize, Vec<Key>> = BTreeMap::new();
    for k in keys {
        m.entry(k.diagram()?.n_legs()).or_default().push(k.clone());
    }
    Ok(m)
}
