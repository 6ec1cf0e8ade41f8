//! Sparse fraction-free row reduction over the integers.

use crate::{Error, Result, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub type Row = Vec<(usize, BigInt)>;

fn content_normalize(r: &mut Row) {
    let mut g = BigInt::zero();
    for (_, c) in r.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if r.first().map_or(false, |x| x.1.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, c) in r.iter_mut() {
            *c /= &g;
        }
    }
}

/// Integer row from rational entries (scaled by the common denominator).
pub fn integer_row(entries: &[(usize, Q)]) -> Row {
    let mut den = BigInt::one();
    for (_, c) in entries {
        den = den.lcm(c.denom());
    }
    let mut m: std::collections::BTreeMap<usize, BigInt> = std::collections::BTreeMap::new();
    for (i, c) in entries {
        *m.entry(*i).or_insert_with(BigInt::zero) += c.numer() * (&den / c.denom());
    }
    let mut r: Row = m.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    content_normalize(&mut r);
    r
}

/// r <- a*r - b*p, merged by column.
fn combine(r: &Row, a: &BigInt, p: &Row, b: &BigInt) -> Row {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let ci = r.get(i).map_or(usize::MAX, |x| x.0);
        let cj = p.get(j).map_or(usize::MAX, |x| x.0);
        if ci < cj {
            out.push((ci, a * &r[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &p[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &p[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental echelon form. Each stored row vanishes on the pivot columns of
/// all rows stored before it, so reducing in creation order terminates.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Echelon {
    pub ncols: usize,
    pub rows: Vec<Row>,
    pub pivots: Vec<usize>,
    #[serde(skip)]
    piv_of: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon { ncols, ..Default::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn reindex(&mut self) {
        self.piv_of = self.pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    }

    fn next_pivot<T>(&self, r: &[(usize, T)]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (k, (c, _)) in r.iter().enumerate() {
            if let Some(&i) = self.piv_of.get(c) {
                if best.map_or(true, |b| i < b.0) {
                    best = Some((i, k));
                }
            }
        }
        best
    }

    /// Reduce an integer row; the result is a scalar multiple of the true remainder.
    pub fn reduce_int(&self, mut r: Row) -> Row {
        while let Some((i, k)) = self.next_pivot(&r) {
            let p = &self.rows[i];
            let pc = &p.iter().find(|x| x.0 == self.pivots[i]).unwrap().1;
            let rc = r[k].1.clone();
            let g = pc.gcd(&rc);
            r = combine(&r, &(pc / &g), p, &(rc / &g));
            content_normalize(&mut r);
        }
        r
    }

    /// Add a relation; returns true if the rank grew.
    pub fn add(&mut self, r: Row) -> bool {
        let r = self.reduce_int(r);
        if r.is_empty() {
            return false;
        }
        // pivot of minimal bit-length, then smallest column
        let k = (0..r.len()).min_by_key(|&k| (r[k].1.bits(), r[k].0)).unwrap();
        self.pivots.push(r[k].0);
        self.piv_of.insert(r[k].0, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Exact rational remainder of a vector modulo the row span; linear in the input.
    pub fn reduce(&self, v: &[(usize, Q)]) -> Vec<(usize, Q)> {
        let mut r: std::collections::BTreeMap<usize, Q> = v.iter().filter(|x| !x.1.is_zero()).cloned().collect();
        loop {
            let vec: Vec<(usize, ())> = r.keys().map(|&c| (c, ())).collect();
            let Some((i, _)) = self.next_pivot(&vec) else { break };
            let p = &self.rows[i];
            let pcol = self.pivots[i];
            let pc = &p.iter().find(|x| x.0 == pcol).unwrap().1;
            let f = r[&pcol].clone() / Q::from_integer(pc.clone());
            for (c, x) in p {
                let e = r.entry(*c).or_insert_with(Q::zero);
                *e -= &f * Q::from_integer(x.clone());
                if e.is_zero() {
                    r.remove(c);
                }
            }
        }
        r.into_iter().collect()
    }
}

/// Quotient of a finite ambient basis by a span of relations.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "K: Serialize", deserialize = "K: serde::de::DeserializeOwned"))]
pub struct Quotient<K> {
    pub degree: usize,
    pub ambient: Vec<K>,
    pub echelon: Echelon,
    #[serde(skip)]
    index: HashMap<K, usize>,
}

impl<K: Clone + Eq + std::hash::Hash> Quotient<K> {
    pub fn new(degree: usize, ambient: Vec<K>, echelon: Echelon) -> Quotient<K> {
        let mut q = Quotient { degree, ambient, echelon, index: HashMap::new() };
        q.rebuild();
        q
    }

    pub(crate) fn rebuild(&mut self) {
        self.index = self.ambient.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        self.echelon.reindex();
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn dim(&self) -> usize {
        self.ambient.len() - self.rank()
    }

    pub fn index_of(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    /// Non-pivot ambient elements, in ambient order.
    pub fn basis(&self) -> Vec<K> {
        let piv: std::collections::HashSet<usize> = self.echelon.pivots.iter().cloned().collect();
        (0..self.ambient.len()).filter(|i| !piv.contains(i)).map(|i| self.ambient[i].clone()).collect()
    }

    /// Coordinates with respect to `basis()`.
    pub fn coordinates<'a, I: IntoIterator<Item = (&'a K, &'a Q)>>(&self, v: I) -> Result<Vec<Q>>
    where
        K: 'a,
    {
        let mut e = vec![];
        for (k, c) in v {
            let i = self.index_of(k).ok_or_else(|| Error::Input("element outside the ambient basis".into()))?;
            e.push((i, c.clone()));
        }
        let r = self.echelon.reduce(&e);
        let piv: std::collections::HashSet<usize> = self.echelon.pivots.iter().cloned().collect();
        let pos: HashMap<usize, usize> =
            (0..self.ambient.len()).filter(|i| !piv.contains(i)).enumerate().map(|(j, i)| (i, j)).collect();
        let mut out = vec![Q::zero(); pos.len()];
        for (i, c) in r {
            out[pos[&i]] = c;
        }
        Ok(out)
    }
}

/// Rank of a rational matrix given by rows.
pub fn rank_of(rows: &[Vec<Q>]) -> usize {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut e = Echelon::new(ncols);
    for r in rows {
        let entries: Vec<(usize, Q)> = r.iter().cloned().enumerate().filter(|x| !x.1.is_zero()).collect();
        e.add(integer_row(&entries));
    }
    e.rank()
}
