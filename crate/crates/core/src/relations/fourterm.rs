//! 4T and 1T relations on chord diagrams.

use super::linalg::{integer_row, Echelon, Quotient};
use super::{RelationSet, Tag};
use crate::diagrams::{canonicalize, chord_codes, ChordCode, Key};
use crate::{qi, Error, Result, Q};
use std::collections::{BTreeSet, HashMap};

fn check(n: usize) -> Result<()> {
    if n == 0 || n > 8 {
        return Err(Error::Capacity(format!("chord relations support degrees 1..=8, got {n}")));
    }
    Ok(())
}

/// Move point `x` so that it sits right before (`after = false`) or right
/// after position `t` of the sequence with `x` removed.
fn moved(m: &[u8], x: usize, t: usize, after: bool) -> ChordCode {
    let len = m.len();
    // labels of points in order, without x
    let rest: Vec<usize> = (0..len).filter(|&i| i != x).collect();
    let mut seq = Vec::with_capacity(len);
    for &i in &rest {
        if i == t && !after {
            seq.push(x);
        }
        seq.push(i);
        if i == t && after {
            seq.push(x);
        }
    }
    let mut pos = vec![0u8; len];
    for (k, &i) in seq.iter().enumerate() {
        pos[i] = k as u8;
    }
    let mm: Vec<u8> = seq.iter().map(|&i| pos[m[i] as usize]).collect();
    ChordCode::from_matching(&mm)
}

/// 4T relations as sparse rows over chord codes, deduplicated.
pub fn four_term_codes(n: usize) -> Result<(Vec<ChordCode>, Vec<Vec<(ChordCode, i64)>>)> {
    check(n)?;
    let codes = chord_codes(n);
    let mut seen = BTreeSet::new();
    let mut rels = vec![];
    for c in &codes {
        let m = c.matching();
        let len = m.len();
        for x in 0..len {
            for a1 in 0..len {
                let a2 = m[a1] as usize;
                if a1 > a2 || a1 == x || a2 == x {
                    continue;
                }
                let mut t: HashMap<ChordCode, i64> = HashMap::new();
                *t.entry(moved(&m, x, a1, false)).or_default() += 1;
                *t.entry(moved(&m, x, a1, true)).or_default() -= 1;
                *t.entry(moved(&m, x, a2, false)).or_default() += 1;
                *t.entry(moved(&m, x, a2, true)).or_default() -= 1;
                let mut r: Vec<(ChordCode, i64)> = t.into_iter().filter(|x| x.1 != 0).collect();
                if r.is_empty() {
                    continue;
                }
                r.sort();
                if r[0].1 < 0 {
                    for e in r.iter_mut() {
                        e.1 = -e.1;
                    }
                }
                if seen.insert(r.clone()) {
                    rels.push(r);
                }
            }
        }
    }
    Ok((codes, rels))
}

pub fn one_term_codes(n: usize) -> Result<Vec<ChordCode>> {
    check(n)?;
    Ok(chord_codes(n)
        .into_iter()
        .filter(|c| {
            let m = c.matching();
            let len = m.len();
            (0..len).any(|i| m[i] as usize == (i + 1) % len)
        })
        .collect())
}

fn keys_of(codes: &[ChordCode]) -> Result<(Vec<Key>, HashMap<ChordCode, usize>)> {
    let mut keys = vec![];
    let mut idx = HashMap::new();
    for (i, c) in codes.iter().enumerate() {
        keys.push(canonicalize(&c.diagram()?)?.key);
        idx.insert(*c, i);
    }
    Ok((keys, idx))
}

pub fn four_term_relations(n: usize) -> Result<RelationSet> {
    let (codes, rels) = four_term_codes(n)?;
    let (keys, idx) = keys_of(&codes)?;
    Ok(RelationSet {
        degree: n,
        ambient_basis: keys,
        relations: rels
            .iter()
            .map(|r| (r.iter().map(|(c, x)| (idx[c], qi(*x))).collect(), Tag::FourT))
            .collect(),
    })
}

pub fn one_term_relations(n: usize) -> Result<RelationSet> {
    let codes = chord_codes(n);
    let ones = one_term_codes(n)?;
    let (keys, idx) = keys_of(&codes)?;
    Ok(RelationSet {
        degree: n,
        ambient_basis: keys,
        relations: ones.iter().map(|c| (vec![(idx[c], qi(1))], Tag::OneT)).collect(),
    })
}

/// Chord diagrams of degree n modulo 4T, and also 1T when `unframed`.
pub fn chord_quotient(n: usize, unframed: bool) -> Result<Quotient<ChordCode>> {
    if n == 0 {
        return Ok(Quotient::new(0, vec![ChordCode::empty()], Echelon::new(1)));
    }
    let (codes, rels) = four_term_codes(n)?;
    let idx: HashMap<ChordCode, usize> = codes.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut e = Echelon::new(codes.len());
    if unframed {
        for c in one_term_codes(n)? {
            e.add(integer_row(&[(idx[&c], qi(1))]));
        }
    }
    for r in &rels {
        let row: Vec<(usize, Q)> = r.iter().map(|(c, x)| (idx[c], qi(*x))).collect();
        e.add(integer_row(&row));
    }
    Ok(Quotient::new(n, codes, e))
}
