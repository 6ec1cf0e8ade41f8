//! IHX relations on legged diagrams.

use super::linalg::{integer_row, Echelon, Quotient};
use super::{RelationSet, Tag};
use crate::diagrams::{canonicalize, open_diagrams_all, Diagram, Key, Kind};
use crate::{qi, Result};
use std::collections::{BTreeMap, HashMap};

/// The three terms of the Jacobi identity at the edge through half-edge h,
/// or None if h is not an edge between two distinct trivalent vertices.
/// With (h, a, b) at one end and (p, c, d) at the other, the terms put
/// (x, y, h) and (p, z, w) at the ends for (x, y | z, w) running over
/// (a, b | c, d), (b, c | a, d), (c, a | b, d); their sum vanishes.
pub fn ihx_terms(d: &Diagram, h: usize) -> Option<[Diagram; 3]> {
    let owner = d.owner();
    let p = d.pairing[h];
    let (u, v) = (owner[h], owner[p]);
    if u == v || d.vertices[u].len() != 3 || d.vertices[v].len() != 3 || d.mark_of(u).is_some() || d.mark_of(v).is_some() {
        return None;
    }
    let rot = |o: &Vec<usize>, x: usize| {
        let k = o.iter().position(|&y| y == x).unwrap();
        (o[(k + 1) % 3], o[(k + 2) % 3])
    };
    let (a, b) = rot(&d.vertices[u], h);
    let (c, e) = rot(&d.vertices[v], p);
    let mk = |x: usize, y: usize, z: usize, w: usize| {
        let mut t = d.clone();
        t.vertices[u] = vec![x, y, h];
        t.vertices[v] = vec![p, z, w];
        t
    };
    Some([mk(a, b, c, e), mk(b, c, a, e), mk(c, a, b, e)])
}

/// IHX relations over the given ambient keys (canonical legged diagrams).
pub fn ihx_relations(ambient: &[Key], degree: usize) -> Result<RelationSet> {
    let idx: HashMap<&Key, usize> = ambient.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rels = vec![];
    let mut seen = std::collections::BTreeSet::new();
    for k in ambient {
        let d = k.diagram()?;
        for h in 0..d.pairing.len() {
            if h > d.pairing[h] {
                continue;
            }
            let Some(ts) = ihx_terms(&d, h) else { continue };
            let mut row: BTreeMap<usize, i64> = BTreeMap::new();
            for t in &ts {
                let cf = canonicalize(t)?;
                if cf.sign == 0 {
                    continue;
                }
                let i = *idx.get(&cf.key).ok_or_else(|| {
                    crate::Error::Consistency("IHX term outside the ambient basis".into())
                })?;
                *row.entry(i).or_default() += cf.sign as i64;
            }
            let mut r: Vec<(usize, i64)> = row.into_iter().filter(|x| x.1 != 0).collect();
            if r.is_empty() {
                continue;
            }
            if r[0].1 < 0 {
                r.iter_mut().for_each(|x| x.1 = -x.1);
            }
            if seen.insert(r.clone()) {
                rels.push((r.iter().map(|&(i, c)| (i, qi(c))).collect(), Tag::Ihx));
            }
        }
    }
    Ok(RelationSet { degree, ambient_basis: ambient.to_vec(), relations: rels })
}

/// Non-null connected open diagrams of degree n, grouped by leg count.
pub fn open_ambient(n: usize, max_legs: usize) -> Result<BTreeMap<usize, Vec<Key>>> {
    let levels = open_diagrams_all(n, max_legs)?;
    let mut m: BTreeMap<usize, Vec<Key>> = BTreeMap::new();
    for k in &levels[n - 1] {
        let d = k.diagram()?;
        if canonicalize(&d)?.sign != 0 {
            m.entry(d.n_legs()).or_default().push(k.clone());
        }
    }
    Ok(m)
}

/// Connected open diagrams of degree n with l legs modulo AS and IHX.
pub fn open_quotient(n: usize, l: usize) -> Result<Quotient<Key>> {
    let amb = open_ambient(n, l)?.remove(&l).unwrap_or_default();
    quotient_of(ihx_relations(&amb, n)?)
}

/// Connected diagrams of degree n with l numbered legs modulo AS and IHX.
pub fn fixed_quotient(n: usize, l: usize) -> Result<Quotient<Key>> {
    let open = open_ambient(n, l)?.remove(&l).unwrap_or_default();
    let mut amb = std::collections::BTreeSet::new();
    for k in &open {
        let d = k.diagram()?.to_fixed();
        let legs = d.legs.clone().unwrap();
        for p in crate::diagrams::all_permutations(l) {
            let mut x = d.clone();
            x.legs = Some(p.iter().map(|&i| legs[i]).collect());
            x.kind = Kind::FixedLegged;
            let cf = canonicalize(&x)?;
            if cf.sign != 0 {
                amb.insert(cf.key);
            }
        }
    }
    let amb: Vec<Key> = amb.into_iter().collect();
    quotient_of(ihx_relations(&amb, n)?)
}

pub fn quotient_of(rs: RelationSet) -> Result<Quotient<Key>> {
    let mut e = Echelon::new(rs.ambient_basis.len());
    for (r, _) in &rs.relations {
        e.add(integer_row(r));
    }
    Ok(Quotient::new(rs.degree, rs.ambient_basis, e))
}
