//! Diagram data model: half-edge graphs with an optional Wilson loop.

mod canon;
pub mod chord;
mod draw;
mod enumerate;
mod io;
mod lincomb;
mod random;

pub use canon::{canonicalize, CanonicalForm, Key};
pub use chord::{chord_codes, ChordCode};
pub use draw::{polar, Drawing};
pub use enumerate::{by_legs, enumerate_chord_diagrams, enumerate_connected_open_diagrams, open_diagrams_all};
pub use io::{from_dot, from_json, to_dot, to_json, DiagramJson, LinCombJson};
pub use lincomb::LinComb;
pub use random::{random_chord_diagram, random_closed_diagram};

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

pub const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Chord,
    ClosedJacobi,
    OpenJacobi,
    FixedLegged,
}

impl Kind {
    pub fn has_loop(self) -> bool {
        matches!(self, Kind::Chord | Kind::ClosedJacobi)
    }
    pub(crate) fn tag(self) -> u8 {
        self as u8
    }
    pub(crate) fn from_tag(t: u8) -> Option<Kind> {
        [Kind::Chord, Kind::ClosedJacobi, Kind::OpenJacobi, Kind::FixedLegged]
            .get(t as usize)
            .copied()
    }
}

/// Mark on a 4-valent vertex. `Rung(p)` is a collapsed marked rung with
/// half-edges in order (TR, TL, BL, BR); `Cross(p)` is the central vertex of
/// eps_p with order (NE, NW, SW, SE). Both are rigid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Rung(u32),
    Cross(u32),
}

impl Mark {
    pub fn value(self) -> u32 {
        match self {
            Mark::Rung(p) | Mark::Cross(p) => p,
        }
    }
    /// Number of trivalent vertices the mark stands for.
    pub fn weight(self) -> usize {
        match self {
            Mark::Rung(p) => 6 + 4 * p as usize,
            Mark::Cross(p) => 8 + 4 * p as usize,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub kind: Kind,
    /// partner of each half-edge
    pub pairing: Vec<usize>,
    /// half-edges at each vertex, cyclic order for internal vertices
    pub vertices: Vec<Vec<usize>>,
    /// loop points in loop order
    pub wilson: Option<Vec<usize>>,
    pub legs: Option<Vec<usize>>,
    pub marks: Vec<(usize, Mark)>,
}

impl Diagram {
    pub fn empty() -> Diagram {
        Diagram {
            kind: Kind::Chord,
            pairing: vec![],
            vertices: vec![],
            wilson: Some(vec![]),
            legs: None,
            marks: vec![],
        }
    }

    pub fn half_edges(&self) -> usize {
        self.pairing.len()
    }

    pub fn owner(&self) -> Vec<usize> {
        let mut o = vec![NONE; self.pairing.len()];
        for (v, hs) in self.vertices.iter().enumerate() {
            for &h in hs {
                o[h] = v;
            }
        }
        o
    }

    pub fn mark_of(&self, v: usize) -> Option<Mark> {
        self.marks.iter().find(|m| m.0 == v).map(|m| m.1)
    }

    pub fn is_external(&self, v: usize) -> bool {
        self.vertices[v].len() == 1
    }

    pub fn trivalent(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].len() == 3).collect()
    }

    pub fn externals(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].len() == 1).collect()
    }

    pub fn n_legs(&self) -> usize {
        self.legs.as_ref().map_or(0, |l| l.len())
    }

    /// Degree counts a marked vertex by the number of trivalent vertices it stands for.
    pub fn degree(&self) -> usize {
        let mut w = 0;
        for v in 0..self.vertices.len() {
            w += match self.mark_of(v) {
                Some(m) => m.weight(),
                None => 1,
            };
        }
        w / 2
    }

    pub fn total_mark(&self) -> u32 {
        self.marks.iter().map(|m| m.1.value()).sum()
    }

    pub fn neighbours(&self, v: usize, owner: &[usize]) -> Vec<usize> {
        self.vertices[v].iter().map(|&h| owner[self.pairing[h]]).collect()
    }

    /// Connected components of the vertex graph (loop adjacency not included).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let owner = self.owner();
        let n = self.vertices.len();
        let mut comp = vec![NONE; n];
        let mut out = vec![];
        for s in 0..n {
            if comp[s] != NONE {
                continue;
            }
            let id = out.len();
            let mut st = vec![s];
            comp[s] = id;
            let mut c = vec![];
            while let Some(v) = st.pop() {
                c.push(v);
                for w in self.neighbours(v, &owner) {
                    if comp[w] == NONE {
                        comp[w] = id;
                        st.push(w);
                    }
                }
            }
            c.sort();
            out.push(c);
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::Structural(s));
        let nh = self.pairing.len();
        for (h, &p) in self.pairing.iter().enumerate() {
            if p >= nh || p == h || self.pairing[p] != h {
                return bad(format!("pairing is not a fixed-point-free involution at {h}"));
            }
        }
        let mut seen = vec![false; nh];
        for (v, hs) in self.vertices.iter().enumerate() {
            for &h in hs {
                if h >= nh || seen[h] {
                    return bad(format!("half-edge {h} misplaced at vertex {v}"));
                }
                seen[h] = true;
            }
            let marked = self.mark_of(v).is_some();
            match (hs.len(), marked) {
                (1, false) | (3, false) | (4, true) => {}
                _ => return bad(format!("vertex {v} has valence {} (marked: {marked})", hs.len())),
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("half-edge not in any vertex".into());
        }
        for &(v, _) in &self.marks {
            if v >= self.vertices.len() {
                return bad(format!("mark on missing vertex {v}"));
            }
        }
        let mut ext = self.externals();
        let listed = match self.kind {
            Kind::Chord | Kind::ClosedJacobi => {
                if self.legs.is_some() {
                    return bad("closed diagram with legs".into());
                }
                self.wilson.clone().ok_or(Error::Structural("missing Wilson loop".into()))?
            }
            Kind::OpenJacobi | Kind::FixedLegged => {
                if self.wilson.is_some() {
                    return bad("legged diagram with Wilson loop".into());
                }
                self.legs.clone().ok_or(Error::Structural("missing legs".into()))?
            }
        };
        let mut l = listed.clone();
        l.sort();
        ext.sort();
        if l != ext {
            return bad("external vertices do not match the loop/leg list".into());
        }
        if self.kind == Kind::Chord && ext.len() != self.vertices.len() {
            return bad("chord diagram with internal vertices".into());
        }
        if self.vertices.len() % 2 != 0 && self.marks.is_empty() {
            return bad("odd vertex count".into());
        }
        match self.kind {
            Kind::ClosedJacobi | Kind::Chord => {
                for c in self.components() {
                    if !c.iter().any(|&v| self.is_external(v)) {
                        return bad("internal component not touching the Wilson loop".into());
                    }
                }
            }
            Kind::OpenJacobi => {
                for c in self.components() {
                    if !c.iter().any(|&v| self.is_external(v)) {
                        return bad("component without legs".into());
                    }
                }
            }
            Kind::FixedLegged => {}
        }
        Ok(())
    }

    /// Attach the legs to a Wilson loop in the given order.
    pub fn attach(&self, order: &[usize]) -> Result<Diagram> {
        let legs = self.legs.as_ref().ok_or(Error::Kind("attach needs a legged diagram".into()))?;
        let w: Vec<usize> = order.iter().map(|&i| legs[i]).collect();
        let kind = if self.vertices.len() == legs.len() { Kind::Chord } else { Kind::ClosedJacobi };
        Ok(Diagram { kind, wilson: Some(w), legs: None, ..self.clone() })
    }

    /// Forget leg numbering.
    pub fn to_open(&self) -> Diagram {
        let mut d = self.clone();
        if d.kind == Kind::FixedLegged {
            d.kind = Kind::OpenJacobi;
        }
        d
    }

    pub fn to_fixed(&self) -> Diagram {
        let mut d = self.clone();
        if d.kind == Kind::OpenJacobi {
            d.kind = Kind::FixedLegged;
        }
        d
    }

    /// Disjoint union of vertex sets; returns the offsets of `other`.
    pub(crate) fn absorb(&mut self, other: &Diagram) -> (usize, usize) {
        let ho = self.pairing.len();
        let vo = self.vertices.len();
        self.pairing.extend(other.pairing.iter().map(|p| p + ho));
        self.vertices.extend(other.vertices.iter().map(|hs| hs.iter().map(|h| h + ho).collect()));
        self.marks.extend(other.marks.iter().map(|&(v, m)| (v + vo, m)));
        (ho, vo)
    }

    /// Drop the given vertices (their half-edges must already be unused) and renumber.
    pub(crate) fn compact(&mut self, dead_v: &[usize]) {
        let nv = self.vertices.len();
        let mut vmap = vec![NONE; nv];
        let mut k = 0;
        for v in 0..nv {
            if !dead_v.contains(&v) {
                vmap[v] = k;
                k += 1;
            }
        }
        let mut hmap = vec![NONE; self.pairing.len()];
        let mut nh = 0;
        for v in 0..nv {
            if vmap[v] != NONE {
                for &h in &self.vertices[v] {
                    hmap[h] = nh;
                    nh += 1;
                }
            }
        }
        let mut pairing = vec![NONE; nh];
        for (h, &p) in self.pairing.iter().enumerate() {
            if hmap[h] != NONE {
                pairing[hmap[h]] = hmap[p];
            }
        }
        let vertices = (0..nv)
            .filter(|&v| vmap[v] != NONE)
            .map(|v| self.vertices[v].iter().map(|&h| hmap[h]).collect())
            .collect();
        self.pairing = pairing;
        self.vertices = vertices;
        self.marks = self.marks.iter().filter(|m| vmap[m.0] != NONE).map(|&(v, m)| (vmap[v], m)).collect();
        self.marks.sort();
        if let Some(w) = &mut self.wilson {
            *w = w.iter().map(|&v| vmap[v]).collect();
        }
        if let Some(l) = &mut self.legs {
            *l = l.iter().map(|&v| vmap[v]).collect();
        }
    }

    pub(crate) fn join(&mut self, a: usize, b: usize) {
        self.pairing[a] = b;
        self.pairing[b] = a;
    }
}

/// Connected sum along the Wilson loops, cut just before loop point 0 of each
/// canonical representative.
pub fn product(d1: &Diagram, d2: &Diagram) -> Result<Diagram> {
    if !d1.kind.has_loop() || !d2.kind.has_loop() {
        return Err(Error::Kind("product needs closed diagrams".into()));
    }
    let a = canonicalize(d1)?.key.diagram()?;
    let b = canonicalize(d2)?.key.diagram()?;
    let mut d = a.clone();
    let (_, vo) = d.absorb(&b);
    let mut w = a.wilson.clone().unwrap();
    w.extend(b.wilson.as_ref().unwrap().iter().map(|v| v + vo));
    d.wilson = Some(w);
    d.kind = if a.kind == Kind::Chord && b.kind == Kind::Chord { Kind::Chord } else { Kind::ClosedJacobi };
    Ok(d)
}

/// Product of two closed linear combinations.
pub fn product_lc(x: &LinComb, y: &LinComb) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (k1, c1) in x.iter() {
        let d1 = k1.diagram()?;
        for (k2, c2) in y.iter() {
            out.add_diagram(&product(&d1, &k2.diagram()?)?, &(c1 * c2))?;
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Average over all attachments of the legs to a Wilson loop.
pub fn close(d: &Diagram) -> Result<LinComb> {
    if d.kind.has_loop() {
        return Err(Error::Kind("close needs an open or fixed-legged diagram".into()));
    }
    let l = d.n_legs();
    if l == 0 || l > 8 {
        return Err(Error::Capacity(format!("close supports 1..=8 legs, got {l}")));
    }
    let mut out = LinComb::zero();
    let mut nf = 1i64;
    for i in 2..=l as i64 {
        nf *= i;
    }
    let c = crate::q(1, nf);
    // rotations give equal closures; fix the first leg
    let mut count = 0;
    for p in permutations(l - 1) {
        let mut order = vec![0];
        order.extend(p.iter().map(|i| i + 1));
        out.add_diagram(&d.attach(&order)?, &c)?;
        count += 1;
    }
    debug_assert_eq!(count * l as i64, nf);
    out.scale(&crate::qi(l as i64));
    Ok(out)
}

pub fn close_lc(x: &LinComb) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (k, c) in x.iter() {
        let mut t = close(&k.diagram()?)?;
        t.scale(c);
        out.add(&t);
    }
    Ok(out)
}

/// Legs on a Wilson loop that also carries one extra chord: the loop reads
/// chord end, legs order[..j], other chord end, legs order[j..].
pub fn split_attach(d: &Diagram, order: &[usize], j: usize) -> Result<Diagram> {
    let legs = d.legs.as_ref().ok_or(Error::Kind("split closure needs a legged diagram".into()))?;
    if order.len() != legs.len() || j > legs.len() {
        return Err(Error::Input("leg order does not match the legs".into()));
    }
    let mut e = Diagram { kind: Kind::ClosedJacobi, legs: None, wilson: None, ..d.clone() };
    let h = e.pairing.len();
    e.pairing.extend([h + 1, h]);
    e.vertices.push(vec![h]);
    e.vertices.push(vec![h + 1]);
    let (c1, c2) = (e.vertices.len() - 2, e.vertices.len() - 1);
    let mut w = vec![c1];
    w.extend(order[..j].iter().map(|&i| legs[i]));
    w.push(c2);
    w.extend(order[j..].iter().map(|&i| legs[i]));
    if w.len() == e.vertices.len() {
        e.kind = Kind::Chord;
    }
    e.wilson = Some(w);
    e.validate()?;
    Ok(e)
}

/// Average of `split_attach` over all orders of the legs, with
/// min(j, legs) legs on the first arc.
pub fn split_close(d: &Diagram, j: usize) -> Result<LinComb> {
    let l = d.n_legs();
    if l == 0 || l > 7 {
        return Err(Error::Capacity(format!("split closure supports 1..=7 legs, got {l}")));
    }
    let perms = permutations(l);
    let c = crate::q(1, perms.len() as i64);
    let mut out = LinComb::zero();
    for p in perms {
        out.add_diagram(&split_attach(d, &p, j.min(l))?, &c)?;
    }
    Ok(out)
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    permutations(n)
}

/// Simple constructor for hand-built diagrams.
#[derive(Default)]
pub struct Builder {
    pub(crate) pairing: Vec<usize>,
    pub(crate) vertices: Vec<Vec<usize>>,
    pub(crate) marks: Vec<(usize, Mark)>,
}

impl Builder {
    pub fn new() -> Builder {
        Builder::default()
    }
    pub fn vertex(&mut self, valence: usize) -> usize {
        let h0 = self.pairing.len();
        self.pairing.extend(std::iter::repeat(NONE).take(valence));
        self.vertices.push((h0..h0 + valence).collect());
        self.vertices.len() - 1
    }
    pub fn marked(&mut self, m: Mark) -> usize {
        let v = self.vertex(4);
        self.marks.push((v, m));
        v
    }
    pub fn he(&self, v: usize, i: usize) -> usize {
        self.vertices[v][i]
    }
    pub fn edge(&mut self, a: usize, b: usize) {
        self.pairing[a] = b;
        self.pairing[b] = a;
    }
    pub fn build(self, kind: Kind, wilson: Option<Vec<usize>>, legs: Option<Vec<usize>>) -> Result<Diagram> {
        let d = Diagram { kind, pairing: self.pairing, vertices: self.vertices, wilson, legs, marks: self.marks };
        if d.pairing.contains(&NONE) {
            return Err(Error::Structural("unpaired half-edge".into()));
        }
        d.validate()?;
        Ok(d)
    }
}

/// Chord diagram from a matching on 2n loop points.
pub fn chord_diagram(m: &[usize]) -> Result<Diagram> {
    let mut b = Builder::new();
    let vs: Vec<usize> = (0..m.len()).map(|_| b.vertex(1)).collect();
    for i in 0..m.len() {
        if m[m[i]] != i || m[i] == i {
            return Err(Error::Structural("not a matching".into()));
        }
        if i < m[i] {
            let (a, c) = (b.he(vs[i], 0), b.he(vs[m[i]], 0));
            b.edge(a, c);
        }
    }
    b.build(Kind::Chord, Some(vs), None)
}

/// Replace vertex `v` of `u` by the fixed-legged fragment `frag`: leg k of the
/// fragment takes over the k-th half-edge of `v`. Strands of the fragment that
/// run leg to leg are passed through.
pub fn splice(u: &Diagram, v: usize, frag: &Diagram) -> Result<Diagram> {
    let legs = frag.legs.as_ref().filter(|_| frag.kind == Kind::FixedLegged);
    let legs = legs.ok_or(Error::Kind("splice needs a fixed-legged fragment".into()))?;
    let hv = u.vertices.get(v).ok_or(Error::Structural(format!("no vertex {v}")))?.clone();
    if u.is_external(v) {
        return Err(Error::Kind("cannot splice into an external vertex".into()));
    }
    if hv.len() != legs.len() {
        return Err(Error::Structural(format!("vertex {v} has valence {}, fragment has {} legs", hv.len(), legs.len())));
    }
    let mut d = u.clone();
    let (_, vo) = d.absorb(frag);
    let lh: Vec<usize> = legs.iter().map(|&l| d.vertices[l + vo][0]).collect();
    let nh = d.pairing.len();
    // joint[h] crosses the boundary between outer and inner side
    let mut joint = vec![NONE; nh];
    for k in 0..hv.len() {
        joint[hv[k]] = lh[k];
        joint[lh[k]] = hv[k];
    }
    let mut newp = d.pairing.clone();
    for x in 0..nh {
        if joint[x] != NONE || joint[d.pairing[x]] == NONE {
            continue;
        }
        let mut y = d.pairing[x];
        let mut steps = 0;
        while joint[y] != NONE {
            y = d.pairing[joint[y]];
            steps += 1;
            if steps > nh {
                return Err(Error::Pattern("splice closes a free loop".into()));
            }
        }
        newp[x] = y;
    }
    // loops made only of boundary strands
    for k in 0..hv.len() {
        let mut y = hv[k];
        let mut ok = false;
        for _ in 0..=nh {
            y = d.pairing[y];
            if joint[y] == NONE {
                ok = true;
                break;
            }
            y = joint[y];
        }
        if !ok {
            return Err(Error::Pattern("splice closes a free loop".into()));
        }
    }
    d.pairing = newp;
    let mut dead = vec![v];
    dead.extend(legs.iter().map(|&l| l + vo));
    d.compact(&dead);
    d.validate()?;
    Ok(d)
}
