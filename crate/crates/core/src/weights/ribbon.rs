//! Weight systems of closed Jacobi diagrams as sums over ribbon states.
//!
//! The Wilson loop is a disk, each trivalent vertex is a small disk whose
//! rotation is either its cyclic order (sign +) or the reverse (sign -), and
//! edges are bands. The value of a state is N^{#boundary components - 1}.
//! For sl only chords carry the trace correction, since the structure
//! constants vanish on the centre of gl. Cost is 2^(vertices + chords) per
//! diagram, against 2^vertices STU leaves each needing its own chord sum.
//!
//! so is not handled here: a vertex edge would need both band twists, which
//! makes the sum exponential in the edge count.

use super::statesum::{Dsu, Family};
use super::LaurentPolyN;
use crate::diagrams::Diagram;
use crate::{Error, Result};
use std::collections::HashMap;

fn l(h: usize) -> usize {
    2 * h
}

fn r(h: usize) -> usize {
    2 * h + 1
}

/// Integer state sum; keys are exponents of N.
pub(super) fn ribbon_sum(f: Family, d: &Diagram) -> Result<HashMap<i32, i64>> {
    if f == Family::So {
        return Err(Error::Kind("ribbon evaluation covers gl and sl".into()));
    }
    if !d.kind.has_loop() || !d.marks.is_empty() {
        return Err(Error::Kind("ribbon evaluation needs an unmarked closed diagram".into()));
    }
    let nh = d.pairing.len();
    let mut out = HashMap::new();
    if nh == 0 {
        out.insert(0, 1);
        return Ok(out);
    }
    let owner = d.owner();
    let ext: Vec<bool> = (0..d.vertices.len()).map(|v| d.is_external(v)).collect();
    let mut dsu = Dsu::new(2 * nh);
    let w: Vec<usize> = d.wilson.as_ref().unwrap().iter().map(|&v| d.vertices[v][0]).collect();
    for i in 0..w.len() {
        dsu.union(l(w[i]), r(w[(i + 1) % w.len()]));
    }
    let mut chords = vec![];
    for h in 0..nh {
        let k = d.pairing[h];
        if h > k {
            continue;
        }
        if ext[owner[h]] && ext[owner[k]] {
            chords.push((h, k));
        } else {
            dsu.union(l(h), r(k));
            dsu.union(r(h), l(k));
        }
    }
    let tri: Vec<[usize; 3]> = d.vertices.iter().filter(|hs| hs.len() == 3).map(|hs| [hs[0], hs[1], hs[2]]).collect();
    struct Ctx<'a> {
        f: Family,
        chords: &'a [(usize, usize)],
        tri: &'a [[usize; 3]],
        out: HashMap<i32, i64>,
    }
    fn corners(dsu: &mut Dsu, o: [usize; 3]) {
        for i in 0..3 {
            dsu.union(l(o[i]), r(o[(i + 1) % 3]));
        }
    }
    fn verts(c: &mut Ctx, j: usize, dsu: &mut Dsu, sign: i64, shift: i32) {
        if j == c.tri.len() {
            *c.out.entry(dsu.classes as i32 - 1 + shift).or_default() += sign;
            return;
        }
        let [a, b, e] = c.tri[j];
        corners(dsu, [a, b, e]);
        verts(c, j + 1, dsu, sign, shift);
        for _ in 0..3 {
            dsu.undo();
        }
        corners(dsu, [a, e, b]);
        verts(c, j + 1, dsu, -sign, shift);
        for _ in 0..3 {
            dsu.undo();
        }
    }
    fn chord(c: &mut Ctx, j: usize, dsu: &mut Dsu, sign: i64, shift: i32) {
        if j == c.chords.len() {
            return verts(c, 0, dsu, sign, shift);
        }
        let (h, k) = c.chords[j];
        dsu.union(l(h), r(k));
        dsu.union(r(h), l(k));
        chord(c, j + 1, dsu, sign, shift);
        dsu.undo();
        dsu.undo();
        match c.f {
            Family::Gl | Family::So => {}
            Family::Sl => {
                // the chord is cut: each end closes the loop strand on itself
                dsu.union(l(h), r(h));
                dsu.union(l(k), r(k));
                chord(c, j + 1, dsu, -sign, shift - 1);
                dsu.undo();
                dsu.undo();
            }
        }
    }
    let mut c = Ctx { f, chords: &chords, tri: &tri, out };
    chord(&mut c, 0, &mut dsu, 1, 0);
    c.out.retain(|_, v| *v != 0);
    Ok(c.out)
}

pub(super) fn to_laurent(m: &HashMap<i32, i64>) -> LaurentPolyN {
    let mut p = LaurentPolyN::zero();
    for (&e, &c) in m {
        p.add_term(e, crate::qi(c));
    }
    p
}

pub fn ribbon_raw(f: Family, d: &Diagram) -> Result<LaurentPolyN> {
    Ok(to_laurent(&ribbon_sum(f, d)?))
}
