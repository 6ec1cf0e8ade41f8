use super::{Diagram, Kind, LinComb, Mark};
use crate::{Error, Result, Q};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DiagramJson {
    pub kind: Kind,
    pub degree: usize,
    pub half_edges: usize,
    pub pairing: Vec<[usize; 2]>,
    pub vertices: Vec<Vec<usize>>,
    pub wilson: Option<Vec<usize>>,
    pub legs: Option<Vec<usize>>,
    /// `[v, p]` for a marked rung, `[v, p, 1]` for a marked cross
    pub marks: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LinCombJson {
    pub diagrams: Vec<DiagramJson>,
    pub coefficients: Vec<String>,
}

impl From<&Diagram> for DiagramJson {
    fn from(d: &Diagram) -> Self {
        DiagramJson {
            kind: d.kind,
            degree: d.degree(),
            half_edges: d.pairing.len(),
            pairing: (0..d.pairing.len()).filter(|&h| h < d.pairing[h]).map(|h| [h, d.pairing[h]]).collect(),
            vertices: d.vertices.clone(),
            wilson: d.wilson.clone(),
            legs: d.legs.clone(),
            marks: d
                .marks
                .iter()
                .map(|&(v, m)| match m {
                    Mark::Rung(p) => vec![v as u32, p],
                    Mark::Cross(p) => vec![v as u32, p, 1],
                })
                .collect(),
        }
    }
}

impl DiagramJson {
    pub fn to_diagram(&self) -> Result<Diagram> {
        let mut pairing = vec![super::NONE; self.half_edges];
        for &[a, b] in &self.pairing {
            if a >= self.half_edges || b >= self.half_edges || pairing[a] != super::NONE || pairing[b] != super::NONE {
                return Err(Error::Structural(format!("bad pair [{a}, {b}]")));
            }
            pairing[a] = b;
            pairing[b] = a;
        }
        if pairing.contains(&super::NONE) {
            return Err(Error::Structural("unpaired half-edge".into()));
        }
        let marks = self
            .marks
            .iter()
            .map(|m| match m.as_slice() {
                [v, p] => Ok((*v as usize, Mark::Rung(*p))),
                [v, p, 1] => Ok((*v as usize, Mark::Cross(*p))),
                _ => Err(Error::Input(format!("bad mark {m:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let d = Diagram {
            kind: self.kind,
            pairing,
            vertices: self.vertices.clone(),
            wilson: self.wilson.clone(),
            legs: self.legs.clone(),
            marks,
        };
        d.validate()?;
        if d.degree() != self.degree {
            return Err(Error::Structural(format!("degree field {} but diagram has degree {}", self.degree, d.degree())));
        }
        Ok(d)
    }
}

impl LinCombJson {
    pub fn from_lincomb(l: &LinComb) -> Result<LinCombJson> {
        let mut diagrams = vec![];
        let mut coefficients = vec![];
        for (k, c) in l.iter() {
            diagrams.push(DiagramJson::from(&k.diagram()?));
            coefficients.push(c.to_string());
        }
        Ok(LinCombJson { diagrams, coefficients })
    }

    pub fn to_lincomb(&self) -> Result<LinComb> {
        if self.diagrams.len() != self.coefficients.len() {
            return Err(Error::Input("diagram and coefficient counts differ".into()));
        }
        let mut l = LinComb::zero();
        for (d, c) in self.diagrams.iter().zip(&self.coefficients) {
            let c: Q = c.parse().map_err(|_| Error::Input(format!("bad coefficient {c}")))?;
            l.add_diagram(&d.to_diagram()?, &c)?;
        }
        Ok(l)
    }
}

pub fn to_json(d: &Diagram) -> Result<String> {
    Ok(serde_json::to_string(&DiagramJson::from(d))?)
}

pub fn from_json(s: &str) -> Result<Diagram> {
    let j: DiagramJson = serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))?;
    j.to_diagram()
}

/// DOT text; the JSON of the diagram is kept in a leading comment so the
/// file round-trips.
pub fn to_dot(d: &Diagram, name: &str) -> Result<String> {
    let mut s = String::new();
    writeln!(s, "// diagram: {}", to_json(d)?).unwrap();
    writeln!(s, "graph \"{name}\" {{").unwrap();
    writeln!(s, "  node [shape=point];").unwrap();
    let owner = d.owner();
    if let Some(w) = &d.wilson {
        writeln!(s, "  subgraph wilson {{ edge [color=gray, penwidth=2];").unwrap();
        if w.is_empty() {
            writeln!(s, "    loop [shape=circle, label=\"\"];").unwrap();
        }
        for v in w {
            writeln!(s, "    v{v} [shape=circle, width=0.1, label=\"\"];").unwrap();
        }
        for i in 0..w.len() {
            writeln!(s, "    v{} -- v{};", w[i], w[(i + 1) % w.len()]).unwrap();
        }
        writeln!(s, "  }}").unwrap();
    }
    if let Some(l) = &d.legs {
        for (i, v) in l.iter().enumerate() {
            writeln!(s, "  v{v} [shape=plaintext, label=\"{}\"];", i + 1).unwrap();
        }
    }
    for &(v, m) in &d.marks {
        let lab = match m {
            Mark::Rung(p) => format!("r{p}"),
            Mark::Cross(p) => format!("x{p}"),
        };
        writeln!(s, "  v{v} [shape=box, label=\"{lab}\"];").unwrap();
    }
    for h in 0..d.pairing.len() {
        let p = d.pairing[h];
        if h < p {
            writeln!(s, "  v{} -- v{};", owner[h], owner[p]).unwrap();
        }
    }
    writeln!(s, "}}").unwrap();
    Ok(s)
}

/// Recover the diagram from DOT text written by `to_dot`.
pub fn from_dot(s: &str) -> Result<Diagram> {
    let line = s
        .lines()
        .find_map(|l| l.strip_prefix("// diagram: "))
        .ok_or_else(|| Error::Input("no diagram comment in DOT text".into()))?;
    from_json(line)
}
