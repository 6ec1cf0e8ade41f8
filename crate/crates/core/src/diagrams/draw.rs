//! Diagrams from planar drawings: cyclic orders are read off as
//! counter-clockwise orders of the edge directions at each vertex.

use super::{Diagram, Kind, Mark, NONE};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
enum Role {
    Loop(f64),
    Leg(usize),
    Node,
    Cross(u32),
}

#[derive(Clone, Debug)]
pub struct Drawing {
    kind: Kind,
    pts: Vec<(f64, f64)>,
    role: Vec<Role>,
    edges: Vec<(usize, usize, Option<f64>, Option<f64>)>,
    rungs: Vec<(usize, u32)>,
}

fn norm(a: f64) -> f64 {
    let r = a % 360.0;
    if r < 0.0 {
        r + 360.0
    } else {
        r
    }
}

pub fn polar(r: f64, deg: f64) -> (f64, f64) {
    let t = deg.to_radians();
    (r * t.cos(), r * t.sin())
}

impl Drawing {
    /// Drawing with a Wilson loop (the unit circle, oriented counter-clockwise).
    pub fn closed() -> Drawing {
        Drawing { kind: Kind::ClosedJacobi, pts: vec![], role: vec![], edges: vec![], rungs: vec![] }
    }

    /// Drawing with numbered legs.
    pub fn legged() -> Drawing {
        Drawing { kind: Kind::FixedLegged, ..Drawing::closed() }
    }

    fn push(&mut self, p: (f64, f64), r: Role) -> usize {
        self.pts.push(p);
        self.role.push(r);
        self.pts.len() - 1
    }

    pub fn loop_point(&mut self, deg: f64) -> usize {
        self.push(polar(1.0, deg), Role::Loop(norm(deg)))
    }

    pub fn leg(&mut self, idx: usize, p: (f64, f64)) -> usize {
        self.push(p, Role::Leg(idx))
    }

    pub fn node(&mut self, p: (f64, f64)) -> usize {
        self.push(p, Role::Node)
    }

    pub fn cross(&mut self, mark: u32, p: (f64, f64)) -> usize {
        self.push(p, Role::Cross(mark))
    }

    pub fn edge(&mut self, a: usize, b: usize) -> usize {
        self.edges.push((a, b, None, None));
        self.edges.len() - 1
    }

    /// Edge leaving `a` in direction `da` and `b` in direction `db` (degrees).
    pub fn arc(&mut self, a: usize, b: usize, da: f64, db: f64) -> usize {
        self.edges.push((a, b, Some(da), Some(db)));
        self.edges.len() - 1
    }

    pub fn path(&mut self, vs: &[usize]) {
        for w in vs.windows(2) {
            self.edge(w[0], w[1]);
        }
    }

    /// A rung carrying a mark; it collapses into one rigid 4-valent vertex.
    pub fn rung(&mut self, a: usize, b: usize, mark: u32) -> usize {
        let e = self.edge(a, b);
        self.rungs.push((e, mark));
        e
    }

    /// Circle through the given nodes (listed counter-clockwise with their angles), drawn with tangent directions.
    pub fn circle(&mut self, nodes: &[(usize, f64)]) {
        let k = nodes.len();
        for i in 0..k {
            let (a, ta) = nodes[i];
            let (b, tb) = nodes[(i + 1) % k];
            self.arc(a, b, ta + 90.0, tb - 90.0);
        }
    }

    /// Circle of radius r around c with nodes at the given angles.
    pub fn ring(&mut self, c: (f64, f64), r: f64, angles: &[f64]) -> Vec<usize> {
        let vs: Vec<usize> = angles
            .iter()
            .map(|&a| {
                let p = polar(r, a);
                self.node((c.0 + p.0, c.1 + p.1))
            })
            .collect();
        let nodes: Vec<(usize, f64)> = vs.iter().cloned().zip(angles.iter().cloned()).collect();
        self.circle(&nodes);
        vs
    }

    fn dir(&self, e: usize, end: usize) -> f64 {
        let (a, b, da, db) = self.edges[e];
        let (from, to, given) = if end == 0 { (a, b, da) } else { (b, a, db) };
        match given {
            Some(t) => norm(t),
            None => {
                let (p, q) = (self.pts[from], self.pts[to]);
                norm((q.1 - p.1).atan2(q.0 - p.0).to_degrees())
            }
        }
    }

    pub fn build(&self) -> Result<Diagram> {
        let n = self.pts.len();
        let mut ends: Vec<Vec<(f64, usize)>> = vec![vec![]; n];
        for (e, &(a, b, _, _)) in self.edges.iter().enumerate() {
            ends[a].push((self.dir(e, 0), 2 * e));
            ends[b].push((self.dir(e, 1), 2 * e + 1));
        }
        let nh = 2 * self.edges.len();
        let mut pairing = vec![NONE; nh];
        for e in 0..self.edges.len() {
            pairing[2 * e] = 2 * e + 1;
            pairing[2 * e + 1] = 2 * e;
        }
        let mut vertices = vec![];
        let mut marks = vec![];
        for v in 0..n {
            let mut es = ends[v].clone();
            es.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
            for w in es.windows(2) {
                if (w[1].0 - w[0].0).abs() < 1e-9 {
                    return Err(Error::Structural(format!("two edges leave drawing vertex {v} in the same direction")));
                }
            }
            if let Role::Cross(p) = self.role[v] {
                marks.push((v, Mark::Cross(p)));
            }
            vertices.push(es.iter().map(|x| x.1).collect::<Vec<_>>());
        }
        let mut loops: Vec<(f64, usize)> = vec![];
        let mut legs: Vec<(usize, usize)> = vec![];
        for v in 0..n {
            match self.role[v] {
                Role::Loop(a) => loops.push((a, v)),
                Role::Leg(i) => legs.push((i, v)),
                _ => {}
            }
        }
        loops.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        legs.sort();
        let mut d = Diagram {
            kind: self.kind,
            pairing,
            vertices,
            wilson: None,
            legs: None,
            marks,
        };
        if self.kind.has_loop() {
            d.wilson = Some(loops.iter().map(|x| x.1).collect());
        } else {
            d.legs = Some(legs.iter().map(|x| x.1).collect());
        }
        let mut dead = vec![];
        for &(e, p) in &self.rungs {
            let (a, b, _, _) = self.edges[e];
            let mut hs = vec![];
            for (v, h) in [(a, 2 * e), (b, 2 * e + 1)] {
                let o = &d.vertices[v];
                if o.len() != 3 {
                    return Err(Error::Structural("marked rung must join trivalent nodes".into()));
                }
                let i = o.iter().position(|&x| x == h).unwrap();
                hs.push(o[(i + 1) % 3]);
                hs.push(o[(i + 2) % 3]);
                d.vertices[v] = vec![h];
            }
            d.vertices.push(hs);
            d.marks.push((d.vertices.len() - 1, Mark::Rung(p)));
            dead.push(a);
            dead.push(b);
        }
        if !dead.is_empty() {
            d.compact(&dead);
        }
        d.validate()?;
        Ok(d)
    }
}
