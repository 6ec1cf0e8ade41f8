//! Marked four-valent vertices and their expansion into trivalent diagrams.
//!
//! Every local picture has four ports, numbered 0..3 at (1,1), (-1,1), (-1,-1),
//! (1,-1). That matches the vertex orders (TR, TL, BL, BR) of a marked rung and
//! (NE, NW, SW, SE) of a marked cross.

use super::{insert_lc, t_hat, LambdaElement};
use crate::diagrams::{polar, splice, Diagram, Drawing, LinComb, Mark};
use crate::{q, qi, Error, Result, Q};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub const MAX_MARK: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    T,
    Omega(u32),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    /// Vertical rungs at the given x between a top bar (ports 1 -> 0) and a
    /// bottom bar (ports 2 -> 3). `marked` puts a mark on one rung, `bridge`
    /// joins two rungs at mid height.
    Ladder { rungs: Vec<f64>, marked: Option<(usize, u32)>, bridge: Option<(usize, usize)> },
    /// Vertical bars (ports 1-2 and 0-3) joined by a horizontal rung.
    RotH { mark: Option<u32> },
    /// Marked cross with an arc from the NE spoke to the SW spoke, passing the NW spoke.
    CrossArc(u32),
    /// Marked cross with an edge from the NW spoke to the SW spoke.
    CrossEdge(u32),
    /// The bare marked cross.
    Cross(u32),
    /// Square with one spoke to each port.
    Square,
    /// Two strands without vertices, joining the given ports.
    Strands([(usize, usize); 2]),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TemplateTerm {
    pub coeff: Q,
    pub factors: Vec<Factor>,
    pub shape: Shape,
}

fn term(coeff: Q, factors: &[Factor], shape: Shape) -> TemplateTerm {
    TemplateTerm { coeff, factors: factors.to_vec(), shape }
}

fn ports(d: &mut Drawing) -> [usize; 4] {
    [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]
        .into_iter()
        .enumerate()
        .map(|(i, p)| d.leg(i, p))
        .collect::<Vec<_>>()
        .try_into()
        .unwrap()
}

pub fn ladder(rungs: &[f64]) -> Shape {
    Shape::Ladder { rungs: rungs.to_vec(), marked: None, bridge: None }
}

pub fn fragment(s: &Shape) -> Result<Diagram> {
    let mut d = Drawing::legged();
    let p = ports(&mut d);
    match s {
        Shape::Ladder { rungs, marked, bridge } => {
            let mut top = vec![p[1]];
            let mut bot = vec![p[2]];
            let mut mid = vec![None; rungs.len()];
            for (i, &x) in rungs.iter().enumerate() {
                let a = d.node((x, 1.0));
                let b = d.node((x, -1.0));
                top.push(a);
                bot.push(b);
                if let Some((j, k)) = bridge {
                    if i == *j || i == *k {
                        mid[i] = Some(d.node((x, 0.0)));
                    }
                }
                match (mid[i], marked) {
                    (_, Some((j, m))) if *j == i => {
                        d.rung(a, b, *m);
                    }
                    (Some(c), _) => d.path(&[a, c, b]),
                    (None, _) => {
                        d.edge(a, b);
                    }
                }
            }
            top.push(p[0]);
            bot.push(p[3]);
            d.path(&top);
            d.path(&bot);
            if let Some((j, k)) = bridge {
                d.edge(mid[*j].unwrap(), mid[*k].unwrap());
            }
        }
        Shape::RotH { mark } => {
            let l = d.node((-1.0, 0.0));
            let r = d.node((1.0, 0.0));
            d.path(&[p[1], l, p[2]]);
            d.path(&[p[0], r, p[3]]);
            match mark {
                Some(m) => d.rung(l, r, *m),
                None => d.edge(l, r),
            };
        }
        Shape::CrossArc(m) | Shape::CrossEdge(m) => {
            let c = d.cross(*m, (0.0, 0.0));
            let sw = d.node(polar(0.5, 225.0));
            d.path(&[c, sw, p[2]]);
            d.edge(c, p[3]);
            if matches!(s, Shape::CrossArc(_)) {
                let ne = d.node(polar(0.5, 45.0));
                d.path(&[c, ne, p[0]]);
                d.edge(c, p[1]);
                d.arc(ne, sw, 135.0, 135.0);
            } else {
                let nw = d.node(polar(0.5, 135.0));
                d.edge(c, p[0]);
                d.path(&[c, nw, p[1]]);
                d.arc(nw, sw, 225.0, 135.0);
            }
        }
        Shape::Cross(m) => {
            let c = d.cross(*m, (0.0, 0.0));
            for &x in &p {
                d.edge(c, x);
            }
        }
        Shape::Square => {
            let ring = d.ring((0.0, 0.0), 0.4, &[45.0, 135.0, 225.0, 315.0]);
            for i in 0..4 {
                d.edge(ring[i], p[i]);
            }
        }
        Shape::Strands(pairs) => {
            for &(a, b) in pairs {
                d.edge(p[a], p[b]);
            }
        }
    }
    d.build()
}

fn marked_h(m: u32) -> Shape {
    Shape::Ladder { rungs: vec![0.0], marked: Some((0, m)), bridge: None }
}

/// Printed expansion of eps_0.
fn cross0() -> Vec<TemplateTerm> {
    use Factor::*;
    vec![
        term(qi(1), &[Omega(0)], ladder(&[0.0])),
        term(q(-8, 3), &[T, T, T], ladder(&[0.0])),
        term(qi(-1), &[Omega(0)], Shape::RotH { mark: None }),
        term(q(4, 3), &[T, T, T], Shape::RotH { mark: None }),
        term(q(2, 3), &[T, T], ladder(&[-0.3, 0.3])),
        term(q(10, 3), &[T], ladder(&[-0.5, 0.0, 0.5])),
        term(q(-4, 3), &[], ladder(&[-0.6, -0.2, 0.2, 0.6])),
        term(q(-2, 3), &[], Shape::Ladder { rungs: vec![-0.5, 0.0, 0.5], marked: None, bridge: Some((1, 2)) }),
    ]
}

/// eps_p through a marked rung; for p = 0 this is an identity to be checked
/// against the printed expansion.
pub fn cross_general(p: u32) -> Vec<TemplateTerm> {
    use Factor::*;
    vec![
        term(qi(1), &[], Shape::Ladder { rungs: vec![-0.3, 0.3], marked: Some((1, p)), bridge: None }),
        term(qi(-1), &[Omega(p)], Shape::RotH { mark: None }),
        term(qi(1), &[Omega(p)], ladder(&[0.0])),
        term(q(-4, 3), &[T], marked_h(p)),
        term(q(2, 3), &[T], Shape::RotH { mark: Some(p) }),
    ]
}

/// Local template of a marked vertex.
pub fn template(m: Mark) -> Result<Vec<TemplateTerm>> {
    use Factor::*;
    if m.value() > MAX_MARK {
        return Err(Error::Capacity(format!("marks above {MAX_MARK} are not supported")));
    }
    Ok(match m {
        Mark::Rung(0) => vec![
            term(qi(2), &[T, T], ladder(&[0.0])),
            term(qi(2), &[T], ladder(&[-0.3, 0.3])),
            term(q(-4, 3), &[], ladder(&[-0.5, 0.0, 0.5])),
            term(q(-2, 3), &[], Shape::Ladder { rungs: vec![-0.3, 0.3], marked: None, bridge: Some((0, 1)) }),
        ],
        Mark::Rung(p) => vec![
            term(q(2, 3), &[], Shape::CrossArc(p - 1)),
            term(q(-2, 3), &[], Shape::CrossEdge(p - 1)),
            term(q(8, 9), &[T, T], marked_h(p - 1)),
            term(q(4, 3), &[T, Omega(p - 1)], ladder(&[0.0])),
        ],
        Mark::Cross(0) => cross0(),
        Mark::Cross(p) => cross_general(p),
    })
}

fn memo() -> &'static Mutex<HashMap<Mark, Arc<LinComb>>> {
    static M: OnceLock<Mutex<HashMap<Mark, Arc<LinComb>>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

fn factor_element(f: Factor) -> Result<LambdaElement> {
    match f {
        Factor::T => t_hat(),
        Factor::Omega(p) => Ok(LambdaElement { terms: expand_marked(&omega_hat(p)?.terms)? }),
    }
}

/// Expand a template into unmarked four-legged diagrams; the Lambda factors
/// are inserted into the first trivalent vertex of each expanded term.
pub fn expand_template(terms: &[TemplateTerm]) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for t in terms {
        let mut x = expand_marked(&LinComb::from_diagram(&fragment(&t.shape)?)?)?;
        for &f in &t.factors {
            x = insert_lc(&factor_element(f)?, &x)?;
        }
        out.add_scaled(&x, &t.coeff);
    }
    Ok(out)
}

/// Unmarked four-legged expansion of one marked vertex (memoized).
pub fn expand_mark(m: Mark) -> Result<Arc<LinComb>> {
    if let Some(x) = memo().lock().unwrap().get(&m) {
        return Ok(x.clone());
    }
    let x = Arc::new(expand_template(&template(m)?)?);
    memo().lock().unwrap().insert(m, x.clone());
    Ok(x)
}

/// Rewrite every marked vertex until no marks remain.
pub fn expand_marked(x: &LinComb) -> Result<LinComb> {
    let mut out = LinComb::zero();
    let mut cur = x.clone();
    while !cur.is_zero() {
        let mut next = LinComb::zero();
        for (k, c) in cur.iter() {
            let d = k.diagram()?;
            let Some(&(v, m)) = d.marks.first() else {
                out.add_key(k.clone(), c);
                continue;
            };
            for (fk, fc) in expand_mark(m)?.iter() {
                next.add_diagram(&splice(&d, v, &fk.diagram()?)?, &(c * fc))?;
            }
        }
        cur = next;
    }
    Ok(out)
}

/// Triangle whose bottom edge is a rung marked p.
pub fn omega_hat(p: u32) -> Result<LambdaElement> {
    if p > MAX_MARK {
        return Err(Error::Capacity(format!("omega_p is available for p <= {MAX_MARK}, got {p}")));
    }
    let mut d = Drawing::legged();
    let angles = [90.0, 210.0, 330.0];
    let n: Vec<usize> = angles.iter().map(|&a| d.node(polar(1.0, a))).collect();
    for (i, &a) in angles.iter().enumerate() {
        let l = d.leg(i, polar(2.0, a));
        d.edge(n[i], l);
    }
    d.edge(n[0], n[1]);
    d.edge(n[2], n[0]);
    d.rung(n[1], n[2], p);
    LambdaElement::from_diagram(&d.build()?)
}

/// The four-legged cross with central mark p.
pub fn epsilon(p: u32) -> Result<LinComb> {
    if p > MAX_MARK - 1 {
        return Err(Error::Capacity(format!("eps_p is available for p < {MAX_MARK}, got {p}")));
    }
    let mut d = Drawing::legged();
    let c = d.cross(p, (0.0, 0.0));
    for i in 0..4 {
        let l = d.leg(i, polar(1.0, 45.0 + 90.0 * i as f64));
        d.edge(c, l);
    }
    LinComb::from_diagram(&d.build()?)
}

/// eps_p expanded through the marked-rung formula.
pub fn epsilon_general(p: u32) -> Result<LinComb> {
    expand_template(&cross_general(p))
}
