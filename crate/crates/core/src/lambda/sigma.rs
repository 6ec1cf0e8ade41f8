//! Multiplication by sigma: raising a mark, or the two local relations that
//! only hold after applying a Lie algebra weight system.

use super::marked::{expand_marked, fragment, omega_hat, Shape};
use super::{insert_lc, t_hat, LambdaElement};
use crate::diagrams::{polar, Diagram, Drawing, LinComb, Mark};
use crate::weights::{character_eval, wsys, Family, LaurentPolyN, VogelParams, VogelPoly};
use crate::{q, qi, Error, Result};

/// Raise the first mark of every term by one.
pub fn sigma_action(x: &LinComb) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (k, c) in x.iter() {
        let mut d = k.diagram()?;
        let m = d.marks.first_mut().ok_or_else(|| Error::Pattern("sigma needs a marked diagram".into()))?;
        m.1 = match m.1 {
            Mark::Rung(p) => Mark::Rung(p + 1),
            Mark::Cross(p) => Mark::Cross(p + 1),
        };
        out.add_diagram(&d, c)?;
    }
    Ok(out)
}

/// Combination whose coefficients are scalars in t, sigma, omega. It only
/// has a meaning after a weight system is applied, so it never converts back
/// into a diagram combination.
#[derive(Clone, Debug)]
pub struct WsComb {
    terms: Vec<(VogelPoly, LinComb)>,
}

impl WsComb {
    fn new() -> WsComb {
        WsComb { terms: vec![] }
    }

    fn push(&mut self, p: VogelPoly, x: LinComb) {
        self.terms.push((p, x));
    }

    fn times(&self, p: &VogelPoly) -> WsComb {
        WsComb { terms: self.terms.iter().map(|(a, x)| (a.mul(p), x.clone())).collect() }
    }

    /// Weight system of the combination, legs attached to the loop in `order`.
    pub fn eval_attached(&self, f: Family, order: &[usize]) -> Result<LaurentPolyN> {
        let params = match f {
            Family::Sl => VogelParams::sl(),
            Family::So => VogelParams::so(),
            Family::Gl => return Err(Error::Kind("weight-system identities need sl or so".into())),
        };
        let mut total = LaurentPolyN::zero();
        for (p, x) in &self.terms {
            let mut closed = LinComb::zero();
            for (k, c) in expand_marked(x)?.iter() {
                closed.add_diagram(&k.diagram()?.attach(order)?, c)?;
            }
            total = &total + &(&character_eval(p, &params) * &wsys(f, &closed)?);
        }
        Ok(total)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Special {
    /// rotH - t(= - x)
    Top,
    /// square - t/3 (H + rotH) - 2t^2/3 (|| + = + x)
    Bottom,
    /// wheel with a diameter - t wheel, six legs
    Wheel6,
}

#[derive(Clone, Debug)]
pub struct WsIdentity {
    pub name: &'static str,
    /// sigma times the special combination
    pub lhs: WsComb,
    pub rhs: WsComb,
    pub legs: usize,
}

impl WsIdentity {
    /// Compare both sides for every given attachment order.
    pub fn check(&self, f: Family, orders: &[Vec<usize>]) -> Result<bool> {
        for o in orders {
            if self.lhs.eval_attached(f, o)? != self.rhs.eval_attached(f, o)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Compare the sums over the given orders. With every order of the legs
    /// this is the identity between open diagrams, where legs commute.
    pub fn check_symmetrized(&self, f: Family, orders: &[Vec<usize>]) -> Result<bool> {
        let (mut l, mut r) = (LaurentPolyN::zero(), LaurentPolyN::zero());
        for o in orders {
            l = &l + &self.lhs.eval_attached(f, o)?;
            r = &r + &self.rhs.eval_attached(f, o)?;
        }
        Ok(l == r)
    }
}

fn lc(s: &Shape) -> Result<LinComb> {
    LinComb::from_diagram(&fragment(s)?)
}

fn c(x: crate::Q) -> VogelPoly {
    VogelPoly::constant(x)
}

const EQ: [(usize, usize); 2] = [(1, 0), (2, 3)];
const PAR: [(usize, usize); 2] = [(1, 2), (0, 3)];
const CROSS: [(usize, usize); 2] = [(0, 2), (1, 3)];

pub fn wheel6() -> Result<Diagram> {
    wheel(None, false)
}

/// Six-legged wheel with a horizontal diameter, optionally marked.
pub fn wheel6_diameter(mark: Option<u32>) -> Result<Diagram> {
    wheel(mark, true)
}

fn wheel(mark: Option<u32>, diameter: bool) -> Result<Diagram> {
    let spokes = [30.0, 90.0, 150.0, 210.0, 270.0, 330.0];
    let mut angles = spokes.to_vec();
    if diameter {
        angles = vec![0.0, 30.0, 90.0, 150.0, 180.0, 210.0, 270.0, 330.0];
    }
    let mut d = Drawing::legged();
    let ring = d.ring((0.0, 0.0), 0.5, &angles);
    for (i, &a) in spokes.iter().enumerate() {
        let l = d.leg(i, polar(1.0, a));
        let n = ring[angles.iter().position(|&x| x == a).unwrap()];
        d.edge(n, l);
    }
    if diameter {
        match mark {
            Some(p) => d.rung(ring[4], ring[0], p),
            None => d.edge(ring[4], ring[0]),
        };
    }
    d.build()
}

/// sigma applied to one of the special combinations.
pub fn sigma_special(s: Special) -> Result<WsIdentity> {
    let one = || c(qi(1));
    let t = VogelPoly::t();
    let w = VogelPoly::omega();
    let strands = |pairs: &[[(usize, usize); 2]]| -> Result<LinComb> {
        let mut x = LinComb::zero();
        for p in pairs {
            x.add(&lc(&Shape::Strands(*p))?);
        }
        Ok(x)
    };
    let mut x = WsComb::new();
    let mut rhs = WsComb::new();
    let (name, legs) = match s {
        Special::Top => {
            let mut diff = lc(&Shape::Strands(EQ))?;
            diff.sub(&lc(&Shape::Strands(CROSS))?);
            x.push(one(), lc(&Shape::RotH { mark: None })?);
            x.push(t.scale(&qi(-1)), diff.clone());
            rhs.push(one(), lc(&Shape::RotH { mark: Some(0) })?);
            rhs.push(w.scale(&qi(-1)), diff);
            ("top", 4)
        }
        Special::Bottom => {
            let all = strands(&[PAR, EQ, CROSS])?;
            let mut hh = lc(&super::marked::ladder(&[0.0]))?;
            hh.add(&lc(&Shape::RotH { mark: None })?);
            x.push(one(), lc(&Shape::Square)?);
            x.push(t.scale(&q(-1, 3)), hh);
            x.push(t.mul(&t).scale(&q(-2, 3)), all.clone());
            rhs.push(one(), lc(&Shape::Cross(0))?);
            rhs.push(t.mul(&w).scale(&q(-2, 3)), all);
            ("bottom", 4)
        }
        Special::Wheel6 => {
            let w6 = LinComb::from_diagram(&wheel6()?)?;
            let tw = insert_lc(&t_hat()?, &w6)?;
            let om = LambdaElement { terms: expand_marked(&omega_hat(0)?.terms)? };
            x.push(one(), LinComb::from_diagram(&wheel6_diameter(None)?)?);
            x.push(c(qi(-1)), tw);
            rhs.push(one(), LinComb::from_diagram(&wheel6_diameter(Some(0))?)?);
            rhs.push(c(qi(-1)), insert_lc(&om, &w6)?);
            ("wheel6", 6)
        }
    };
    Ok(WsIdentity { name, lhs: x.times(&VogelPoly::sigma()), rhs, legs })
}
