//! Packed chord diagrams: the minimal rotation of the sequence of partner
//! offsets, five bits per point.

use super::{chord_diagram, Diagram};
use crate::{Error, Result};

pub const MAX_CHORDS: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ChordCode {
    pub n: u8,
    pub bits: u128,
}

impl ChordCode {
    pub fn empty() -> ChordCode {
        ChordCode { n: 0, bits: 0 }
    }

    /// `m[i]` is the partner of point i.
    pub fn from_matching(m: &[u8]) -> ChordCode {
        let len = m.len();
        if len == 0 {
            return ChordCode::empty();
        }
        debug_assert!(len <= 2 * MAX_CHORDS);
        let top = 5 * (len as u32 - 1);
        let mask: u128 = if 5 * len as u32 >= 128 { u128::MAX } else { (1u128 << (5 * len)) - 1 };
        let mut x: u128 = 0;
        for i in 0..len {
            let o = (m[i] as usize + len - i) % len;
            x = (x << 5) | o as u128;
        }
        let mut best = x;
        for _ in 1..len {
            x = ((x << 5) & mask) | (x >> top);
            if x < best {
                best = x;
            }
        }
        ChordCode { n: (len / 2) as u8, bits: best }
    }

    pub fn matching(&self) -> Vec<u8> {
        let len = 2 * self.n as usize;
        let mut m = vec![0u8; len];
        for i in 0..len {
            let o = ((self.bits >> (5 * (len - 1 - i))) & 31) as usize;
            m[i] = ((i + o) % len) as u8;
        }
        m
    }

    pub fn diagram(&self) -> Result<Diagram> {
        let m: Vec<usize> = self.matching().iter().map(|&x| x as usize).collect();
        chord_diagram(&m)
    }

    pub fn from_diagram(d: &Diagram) -> Result<ChordCode> {
        if !d.kind.has_loop() || d.vertices.iter().any(|h| h.len() != 1) {
            return Err(Error::Kind("not a chord diagram".into()));
        }
        let w = d.wilson.as_ref().unwrap();
        if w.len() > 2 * MAX_CHORDS {
            return Err(Error::Capacity("too many chords".into()));
        }
        let owner = d.owner();
        let mut pos = vec![0u8; d.vertices.len()];
        for (i, &v) in w.iter().enumerate() {
            pos[v] = i as u8;
        }
        let m: Vec<u8> = w.iter().map(|&v| pos[owner[d.pairing[d.vertices[v][0]]]]).collect();
        Ok(ChordCode::from_matching(&m))
    }

    /// Chords as (i, j) with i < j.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        let m = self.matching();
        (0..m.len()).filter(|&i| (m[i] as usize) > i).map(|i| (i, m[i] as usize)).collect()
    }
}

/// All rotation classes of n-chord diagrams, sorted.
pub fn chord_codes(n: usize) -> Vec<ChordCode> {
    let len = 2 * n;
    let mut m = vec![u8::MAX; len];
    let mut out = std::collections::HashSet::new();
    fn rec(m: &mut Vec<u8>, out: &mut std::collections::HashSet<ChordCode>) {
        let Some(i) = m.iter().position(|&x| x == u8::MAX) else {
            out.insert(ChordCode::from_matching(m));
            return;
        };
        for j in i + 1..m.len() {
            if m[j] == u8::MAX {
                m[i] = j as u8;
                m[j] = i as u8;
                rec(m, out);
                m[i] = u8::MAX;
                m[j] = u8::MAX;
            }
        }
    }
    rec(&mut m, &mut out);
    let mut v: Vec<ChordCode> = out.into_iter().collect();
    v.sort();
    v
}

impl serde::Serialize for ChordCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}:{:x}", self.n, self.bits))
    }
}

impl<'de> serde::Deserialize<'de> for ChordCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<ChordCode, D::Error> {
        let s = String::deserialize(d)?;
        let bad = || serde::de::Error::custom("bad chord code");
        let (n, b) = s.split_once(':').ok_or_else(bad)?;
        Ok(ChordCode { n: n.parse().map_err(|_| bad())?, bits: u128::from_str_radix(b, 16).map_err(|_| bad())? })
    }
}
