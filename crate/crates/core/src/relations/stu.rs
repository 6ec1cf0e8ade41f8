//! STU reduction of closed Jacobi diagrams to chord diagrams.
//!
//! At a vertex with cyclic order (x, a, b), x joined to the loop, the loop
//! point is replaced by the pair (a, b) minus the pair (b, a). The half-edges
//! a and b simply become loop half-edges, so no pairing changes.

use crate::diagrams::{ChordCode, Diagram, Kind, LinComb};
use crate::{Error, Result, Q};
use rand::Rng;
use std::collections::HashMap;

const LOOP: u16 = u16::MAX;

#[derive(Clone)]
pub struct StuState {
    seq: Vec<u16>,
    partner: Vec<u16>,
    owner: Vec<u16>,
    cyc: Vec<[u16; 3]>,
}

impl StuState {
    pub fn new(d: &Diagram) -> Result<StuState> {
        if !d.kind.has_loop() {
            return Err(Error::Kind("STU needs a closed diagram".into()));
        }
        if !d.marks.is_empty() {
            return Err(Error::Kind("STU needs an unmarked diagram".into()));
        }
        d.validate().map_err(|e| match e {
            Error::Structural(s) if s.contains("Wilson") => Error::Reducibility(s),
            e => e,
        })?;
        let nh = d.pairing.len();
        let mut owner = vec![LOOP; nh];
        let mut cyc = vec![];
        for hs in &d.vertices {
            if hs.len() == 3 {
                for &h in hs {
                    owner[h] = cyc.len() as u16;
                }
                cyc.push([hs[0] as u16, hs[1] as u16, hs[2] as u16]);
            }
        }
        let seq = d.wilson.as_ref().unwrap().iter().map(|&v| d.vertices[v][0] as u16).collect();
        Ok(StuState { seq, partner: d.pairing.iter().map(|&p| p as u16).collect(), owner, cyc })
    }

    fn eligible(&self, i: usize) -> bool {
        self.owner[self.partner[self.seq[i] as usize] as usize] != LOOP
    }

    fn leaf(&self, pos: &mut [u8], m: &mut Vec<u8>) -> ChordCode {
        for (i, &h) in self.seq.iter().enumerate() {
            pos[h as usize] = i as u8;
        }
        m.clear();
        m.extend(self.seq.iter().map(|&h| pos[self.partner[h as usize] as usize]));
        ChordCode::from_matching(m)
    }

    /// Replace loop position i by the two other half-edges of its vertex;
    /// returns what `unsplit` needs.
    fn split(&mut self, i: usize) -> (u16, u16, u16) {
        let h = self.seq[i];
        let p = self.partner[h as usize];
        let u = self.owner[p as usize];
        let c = self.cyc[u as usize];
        let k = c.iter().position(|&x| x == p).unwrap();
        let (a, b) = (c[(k + 1) % 3], c[(k + 2) % 3]);
        self.owner[a as usize] = LOOP;
        self.owner[b as usize] = LOOP;
        self.seq[i] = a;
        self.seq.insert(i + 1, b);
        (h, u, a)
    }

    fn unsplit(&mut self, i: usize, (h, u, a): (u16, u16, u16)) {
        let b = if self.seq[i] == a { self.seq[i + 1] } else { self.seq[i] };
        self.owner[a as usize] = u;
        self.owner[b as usize] = u;
        self.seq.remove(i + 1);
        self.seq[i] = h;
    }

    /// Depth-first expansion in place. `pick` gets the first position that
    /// may be eligible.
    fn run<F: FnMut(&StuState, usize) -> Option<usize>>(
        &mut self,
        from: usize,
        sign: i64,
        pick: &mut F,
        buf: &mut (Vec<u8>, Vec<u8>),
        out: &mut HashMap<ChordCode, i64>,
    ) {
        match pick(self, from) {
            None => *out.entry(self.leaf(&mut buf.0, &mut buf.1)).or_default() += sign,
            Some(i) => {
                let undo = self.split(i);
                let next = i;
                self.run(next, sign, pick, buf, out);
                self.seq.swap(i, i + 1);
                self.run(next, -sign, pick, buf, out);
                self.unsplit(i, undo);
            }
        }
    }

    fn expand<F: FnMut(&StuState, usize) -> Option<usize>>(&self, pick: &mut F) -> HashMap<ChordCode, i64> {
        let mut out = HashMap::new();
        let mut st = self.clone();
        let mut buf = (vec![0u8; self.partner.len()], Vec::with_capacity(self.partner.len()));
        st.run(0, 1, pick, &mut buf, &mut out);
        out.retain(|_, v| *v != 0);
        out
    }

    /// Chord leaves with the lowest-position pivot rule.
    pub fn leaves(&self) -> HashMap<ChordCode, i64> {
        // positions before the last pivot stay ineligible: splitting only
        // turns half-edges into loop half-edges
        self.expand(&mut |s: &StuState, from: usize| (from..s.seq.len()).find(|&i| s.eligible(i)))
    }

    /// Chord leaves with uniformly random pivots.
    pub fn leaves_random<R: Rng>(&self, rng: &mut R) -> HashMap<ChordCode, i64> {
        self.expand(&mut |s: &StuState, _| {
            let e: Vec<usize> = (0..s.seq.len()).filter(|&i| s.eligible(i)).collect();
            if e.is_empty() {
                None
            } else {
                Some(e[rng.gen_range(0..e.len())])
            }
        })
    }
}

/// Chord-diagram image of a closed combination, keyed by packed chord codes.
pub fn stu_chords(x: &LinComb) -> Result<HashMap<ChordCode, Q>> {
    let mut out: HashMap<ChordCode, Q> = HashMap::new();
    for (k, c) in x.iter() {
        let d = k.diagram()?;
        for (code, m) in StuState::new(&d)?.leaves() {
            *out.entry(code).or_insert_with(|| Q::from_integer(0.into())) += c * Q::from_integer(m.into());
        }
    }
    out.retain(|_, v| *v != Q::from_integer(0.into()));
    Ok(out)
}

pub fn stu_reduce(x: &LinComb) -> Result<LinComb> {
    for (k, _) in x.iter() {
        if !k.kind().has_loop() {
            return Err(Error::Kind("stu_reduce needs closed diagrams".into()));
        }
    }
    let mut out = LinComb::zero();
    for (code, c) in stu_chords(x)? {
        out.add_diagram(&code.diagram()?, &c)?;
    }
    Ok(out)
}

/// Reduce with random pivot orders and check that all results agree modulo 4T and 1T.
pub fn stu_order_independence_check<R: Rng>(d: &Diagram, trials: usize, rng: &mut R) -> Result<bool> {
    if d.kind != Kind::ClosedJacobi && d.kind != Kind::Chord {
        return Err(Error::Kind("closed diagram expected".into()));
    }
    let st = StuState::new(d)?;
    let n = d.degree();
    let base = st.leaves();
    if n == 0 {
        return Ok(true);
    }
    let quot = super::quotient_cached_chords(n, true)?;
    for _ in 0..trials {
        let r = st.leaves_random(rng);
        let mut diff: HashMap<ChordCode, Q> = HashMap::new();
        for (c, m) in &base {
            *diff.entry(*c).or_insert_with(|| crate::qi(0)) += crate::qi(*m);
        }
        for (c, m) in &r {
            *diff.entry(*c).or_insert_with(|| crate::qi(0)) -= crate::qi(*m);
        }
        let coords = quot.coordinates(diff.iter())?;
        if coords.iter().any(|c| *c != crate::qi(0)) {
            return Ok(false);
        }
    }
    Ok(true)
}
