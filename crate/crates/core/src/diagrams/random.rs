//! Random closed diagrams for property tests: a random matching, then
//! random inverse STU moves.

use super::{chord_diagram, Diagram, Kind};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_chord_diagram<R: Rng>(n: usize, rng: &mut R) -> Result<Diagram> {
    let mut pts: Vec<usize> = (0..2 * n).collect();
    pts.shuffle(rng);
    let mut m = vec![0; 2 * n];
    for p in pts.chunks(2) {
        m[p[0]] = p[1];
        m[p[1]] = p[0];
    }
    chord_diagram(&m)
}

/// Merge loop positions i and i+1 (half-edges a, b) into a vertex (x, a, b)
/// hanging off one loop point. Fails when a and b form one edge.
fn merge(d: &Diagram, i: usize) -> Option<Diagram> {
    let w = d.wilson.as_ref()?;
    let (p, q) = (w[i], w[(i + 1) % w.len()]);
    let (a, b) = (d.vertices[p][0], d.vertices[q][0]);
    if d.pairing[a] == b || p == q {
        return None;
    }
    let mut e = d.clone();
    let (x, y) = (e.pairing.len(), e.pairing.len() + 1);
    e.pairing.extend([y, x]);
    e.vertices[p] = vec![y];
    e.vertices[q] = vec![];
    e.vertices.push(vec![x, a, b]);
    e.wilson.as_mut().unwrap().retain(|&v| v != q);
    e.kind = Kind::ClosedJacobi;
    e.compact(&[q]);
    e.validate().ok()?;
    Some(e)
}

/// Closed diagram of degree n with up to `merges` trivalent vertices.
pub fn random_closed_diagram<R: Rng>(n: usize, merges: usize, rng: &mut R) -> Result<Diagram> {
    if n == 0 {
        return Err(Error::Input("degree must be positive".into()));
    }
    let mut d = random_chord_diagram(n, rng)?;
    for _ in 0..merges {
        let len = d.wilson.as_ref().unwrap().len();
        if len < 3 {
            break;
        }
        let start = rng.gen_range(0..len);
        if let Some(e) = (0..len).find_map(|k| merge(&d, (start + k) % len)) {
            d = e;
        }
    }
    Ok(d)
}
