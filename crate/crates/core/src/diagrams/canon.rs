//! Canonical labelling by colour refinement and individualisation, with the
//! AS sign tracked through the cyclic orders.

use super::{Diagram, Kind, Mark, NONE};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Key(pub Vec<u8>);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalForm {
    pub key: Key,
    pub sign: i8,
}

const EXT: u8 = 0;
const TRI: u8 = 1;
const RUNG: u8 = 2;
const CROSS: u8 = 3;

fn vtype(d: &Diagram, v: usize) -> (u8, u8) {
    match d.mark_of(v) {
        Some(Mark::Rung(p)) => (RUNG, p as u8),
        Some(Mark::Cross(p)) => (CROSS, p as u8),
        None if d.vertices[v].len() == 1 => (EXT, 0),
        None => (TRI, 0),
    }
}

struct Ctx<'a> {
    d: &'a Diagram,
    kind: Kind,
    owner: Vec<usize>,
    nbr: Vec<Vec<usize>>,
    ty: Vec<(u8, u8)>,
    n_anchor: usize,
    best: Option<Vec<u8>>,
    signs: (bool, bool),
}

fn rank_by<T: Ord + Clone>(sig: &[T]) -> (Vec<u32>, usize) {
    let mut idx: Vec<usize> = (0..sig.len()).collect();
    idx.sort_by(|&a, &b| sig[a].cmp(&sig[b]));
    let mut col = vec![0u32; sig.len()];
    let mut c = 0u32;
    for i in 0..idx.len() {
        if i > 0 && sig[idx[i]] != sig[idx[i - 1]] {
            c += 1;
        }
        col[idx[i]] = c;
    }
    let n = if sig.is_empty() { 0 } else { c as usize + 1 };
    (col, n)
}

impl<'a> Ctx<'a> {
    fn refine(&self, col: &mut Vec<u32>) -> usize {
        let mut ncol = rank_by(col).1;
        loop {
            let sig: Vec<Vec<u32>> = (0..col.len())
                .map(|v| {
                    let mut s: Vec<u32> = self.nbr[v].iter().map(|&w| col[w]).collect();
                    if self.ty[v].0 == TRI || self.ty[v].0 == EXT {
                        s.sort();
                    }
                    s.insert(0, col[v]);
                    s
                })
                .collect();
            let (c, n) = rank_by(&sig);
            *col = c;
            if n == ncol {
                return n;
            }
            ncol = n;
        }
    }

    fn search(&mut self, mut col: Vec<u32>) {
        let n = col.len();
        let ncell = self.refine(&mut col);
        if ncell == n {
            self.leaf(&col);
            return;
        }
        let mut count = vec![0usize; ncell];
        for &c in &col {
            count[c as usize] += 1;
        }
        let c = (0..ncell).find(|&c| count[c] > 1).unwrap() as u32;
        for v in 0..n {
            if col[v] != c {
                continue;
            }
            let nc: Vec<u32> = (0..n)
                .map(|u| {
                    if col[u] > c {
                        col[u] + 1
                    } else if col[u] == c && u != v {
                        c + 1
                    } else {
                        col[u]
                    }
                })
                .collect();
            self.search(nc);
        }
    }

    fn leaf(&mut self, lab: &[u32]) {
        let d = self.d;
        let n = lab.len();
        let mut inv = vec![0usize; n];
        for v in 0..n {
            inv[lab[v] as usize] = v;
        }
        // free groups: (vertex, half-edges whose order is not forced)
        let mut free: Vec<Vec<usize>> = vec![];
        for &v in &inv {
            if self.ty[v].0 != TRI {
                continue;
            }
            let hs = &d.vertices[v];
            let mut groups: Vec<(usize, Vec<usize>)> = vec![];
            for &h in hs {
                let w = self.owner[d.pairing[h]];
                match groups.iter_mut().find(|g| g.0 == w) {
                    Some(g) => g.1.push(h),
                    None => groups.push((w, vec![h])),
                }
            }
            for (w, g) in groups {
                if g.len() > 1 && lab[w] >= lab[v] {
                    free.push(g);
                }
            }
        }
        let perms: Vec<Vec<Vec<usize>>> = free.iter().map(|g| super::all_permutations(g.len())).collect();
        let mut choice = vec![0usize; free.len()];
        loop {
            self.emit(lab, &inv, &free, &perms, &choice);
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return;
                }
                choice[i] += 1;
                if choice[i] < perms[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    fn emit(&mut self, lab: &[u32], inv: &[usize], free: &[Vec<usize>], perms: &[Vec<Vec<usize>>], choice: &[usize]) {
        let d = self.d;
        let nh = d.pairing.len();
        // rank of a half-edge inside its free group
        let mut grank = vec![0usize; nh];
        for (gi, g) in free.iter().enumerate() {
            let p = &perms[gi][choice[gi]];
            for (j, &h) in g.iter().enumerate() {
                grank[h] = p[j];
            }
        }
        let mut slot = vec![NONE; nh];
        let mut off = vec![0usize; inv.len() + 1];
        for (l, &v) in inv.iter().enumerate() {
            off[l + 1] = off[l] + d.vertices[v].len();
        }
        let mut order: Vec<Vec<usize>> = Vec::with_capacity(inv.len());
        for &v in inv {
            let hs = &d.vertices[v];
            let o: Vec<usize> = if self.ty[v].0 == TRI {
                let mut o = hs.clone();
                let lv = lab[v];
                o.sort_by_key(|&h| {
                    let p = d.pairing[h];
                    let w = self.owner[p];
                    let lw = lab[w];
                    let t = if lw < lv { slot[p] } else { grank[h] };
                    (lw, t)
                });
                o
            } else {
                hs.clone()
            };
            for (i, &h) in o.iter().enumerate() {
                slot[h] = i;
            }
            order.push(o);
        }
        let g = |h: usize| off[lab[self.owner[h]] as usize] + slot[h];
        let mut code = Vec::with_capacity(3 + inv.len() + nh);
        code.push(self.kind.tag());
        code.push(inv.len() as u8);
        code.push(self.n_anchor as u8);
        let mut sign = 1i8;
        for (l, &v) in inv.iter().enumerate() {
            let (t, m) = self.ty[v];
            code.push(t);
            if t >= RUNG {
                code.push(m);
            }
            for &h in &order[l] {
                code.push(g(d.pairing[h]) as u8);
            }
            if t == TRI {
                let s: Vec<usize> = d.vertices[v].iter().map(|&h| slot[h]).collect();
                if (s[1] + 3 - s[0]) % 3 != 1 {
                    sign = -sign;
                }
            }
        }
        match &self.best {
            Some(b) if code > *b => {}
            Some(b) if code == *b => {
                if sign > 0 {
                    self.signs.0 = true
                } else {
                    self.signs.1 = true
                }
            }
            _ => {
                self.best = Some(code);
                self.signs = (sign > 0, sign < 0);
            }
        }
    }
}

pub fn canonicalize(d: &Diagram) -> Result<CanonicalForm> {
    d.validate()?;
    if d.pairing.len() > 250 || d.vertices.len() > 250 {
        return Err(Error::Capacity("diagram too large for canonical keys".into()));
    }
    let mut kind = d.kind;
    if kind == Kind::ClosedJacobi && d.vertices.iter().all(|h| h.len() == 1) {
        kind = Kind::Chord;
    }
    let owner = d.owner();
    let n = d.vertices.len();
    let nbr = (0..n).map(|v| d.neighbours(v, &owner)).collect();
    let ty: Vec<(u8, u8)> = (0..n).map(|v| vtype(d, v)).collect();
    // tadpoles vanish by AS
    let tadpole = (0..n).any(|v| ty[v].0 == TRI && d.vertices[v].iter().any(|&h| owner[d.pairing[h]] == v));
    let mut cf = canonicalize_raw(d, kind, owner, nbr, ty)?;
    if tadpole {
        cf.sign = 0;
    }
    Ok(cf)
}

fn canonicalize_raw(d: &Diagram, kind: Kind, owner: Vec<usize>, nbr: Vec<Vec<usize>>, ty: Vec<(u8, u8)>) -> Result<CanonicalForm> {
    let n = d.vertices.len();
    let anchors: Vec<usize> = match kind {
        Kind::Chord | Kind::ClosedJacobi => d.wilson.clone().unwrap(),
        Kind::FixedLegged => d.legs.clone().unwrap(),
        Kind::OpenJacobi => vec![],
    };
    let k = anchors.len();
    let mut ctx = Ctx { d, kind, owner, nbr, ty, n_anchor: k, best: None, signs: (false, false) };
    let rotations = if kind.has_loop() { k.max(1) } else { 1 };
    for r in 0..rotations {
        let sig: Vec<(u32, u8, u8)> = (0..n)
            .map(|v| match anchors.iter().position(|&a| a == v) {
                Some(i) => (((i + k - r) % k.max(1)) as u32, 0, 0),
                None => (k as u32 + 1, ctx.ty[v].0, ctx.ty[v].1),
            })
            .collect();
        let (col, _) = rank_by(&sig);
        ctx.search(col);
    }
    let key = Key(ctx.best.unwrap_or_else(|| vec![kind.tag(), 0, 0]));
    let sign = match ctx.signs {
        (true, true) => 0,
        (true, false) => 1,
        _ => -1,
    };
    Ok(CanonicalForm { key, sign })
}

impl Key {
    /// The canonical representative; it canonicalises to this key with sign +1.
    pub fn diagram(&self) -> Result<Diagram> {
        let b = &self.0;
        let bad = || Error::Input("malformed canonical key".into());
        if b.len() < 3 {
            return Err(bad());
        }
        let kind = Kind::from_tag(b[0]).ok_or_else(bad)?;
        let n = b[1] as usize;
        let k = b[2] as usize;
        let mut i = 3;
        let mut vertices = vec![];
        let mut partner = vec![];
        let mut marks = vec![];
        let mut exts = vec![];
        let mut h = 0;
        for v in 0..n {
            let t = *b.get(i).ok_or_else(bad)?;
            i += 1;
            let val = match t {
                EXT => 1,
                TRI => 3,
                RUNG | CROSS => {
                    let m = *b.get(i).ok_or_else(bad)? as u32;
                    i += 1;
                    marks.push((v, if t == RUNG { Mark::Rung(m) } else { Mark::Cross(m) }));
                    4
                }
                _ => return Err(bad()),
            };
            if t == EXT {
                exts.push(v);
            }
            vertices.push((h..h + val).collect::<Vec<_>>());
            for _ in 0..val {
                partner.push(*b.get(i).ok_or_else(bad)? as usize);
                i += 1;
            }
            h += val;
        }
        let (wilson, legs) = match kind {
            Kind::Chord | Kind::ClosedJacobi => (Some((0..k).collect()), None),
            Kind::FixedLegged => (None, Some((0..k).collect())),
            Kind::OpenJacobi => (None, Some(exts)),
        };
        let d = Diagram { kind, pairing: partner, vertices, wilson, legs, marks };
        d.validate()?;
        Ok(d)
    }

    pub fn kind(&self) -> Kind {
        Kind::from_tag(self.0[0]).unwrap()
    }

    pub fn hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Key> {
        hex::decode(s).map(Key).map_err(|e| Error::Input(e.to_string()))
    }
}

impl serde::Serialize for Key {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.hex())
    }
}

impl<'de> serde::Deserialize<'de> for Key {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Key, D::Error> {
        let s = String::deserialize(d)?;
        Key::from_hex(&s).map_err(serde::de::Error::custom)
    }
}
