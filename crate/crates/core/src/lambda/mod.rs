//! Vogel's algebra: three-legged fixed diagrams, acting on connected diagrams
//! by insertion into a trivalent vertex.

mod marked;
mod sigma;

pub use crate::weights::VogelPoly;
pub use marked::{
    cross_general, epsilon, epsilon_general, expand_mark, expand_marked, expand_template, fragment, ladder, omega_hat,
    template, Factor, Shape, TemplateTerm, MAX_MARK,
};
pub use sigma::{sigma_action, sigma_special, wheel6, wheel6_diameter, Special, WsComb, WsIdentity};

use crate::diagrams::{polar, splice, Diagram, Drawing, Kind, LinComb};
use crate::weights::{wsys, Family, LaurentPolyN};
use crate::{Error, Result, Q};

/// Combination of fixed diagrams with three numbered legs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaElement {
    pub terms: LinComb,
}

impl LambdaElement {
    pub fn zero() -> LambdaElement {
        LambdaElement::default()
    }

    pub fn new(terms: LinComb) -> Result<LambdaElement> {
        for (k, _) in terms.iter() {
            let d = k.diagram()?;
            if d.kind != Kind::FixedLegged || d.n_legs() != 3 {
                return Err(Error::Kind("a Lambda element is made of 3-legged fixed diagrams".into()));
            }
        }
        Ok(LambdaElement { terms })
    }

    pub fn from_diagram(d: &Diagram) -> Result<LambdaElement> {
        LambdaElement::new(LinComb::from_diagram(d)?)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn is_marked(&self) -> Result<bool> {
        for (k, _) in self.terms.iter() {
            if !k.diagram()?.marks.is_empty() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Half of (trivalent vertex count - 1), marks counted by the vertices they
    /// stand for; None for zero or inhomogeneous elements.
    pub fn grading(&self) -> Result<Option<usize>> {
        let mut g = None;
        for (k, _) in self.terms.iter() {
            let d = k.diagram()?;
            let x = d.degree() - 2;
            if g.is_some_and(|y| y != x) {
                return Ok(None);
            }
            g = Some(x);
        }
        Ok(g)
    }

    pub fn add(&self, o: &LambdaElement) -> LambdaElement {
        let mut t = self.terms.clone();
        t.add(&o.terms);
        LambdaElement { terms: t }
    }

    pub fn add_scaled(&mut self, o: &LambdaElement, s: &Q) {
        self.terms.add_scaled(&o.terms, s);
    }

    pub fn scaled(&self, s: &Q) -> LambdaElement {
        LambdaElement { terms: self.terms.scaled(s) }
    }

    /// Product in the algebra: self inserted into the other factor.
    pub fn mul(&self, o: &LambdaElement) -> Result<LambdaElement> {
        Ok(LambdaElement { terms: insert_lc(self, &o.terms)? })
    }

    pub fn pow(&self, k: u32) -> Result<LambdaElement> {
        let mut r = one()?;
        for _ in 0..k {
            r = self.mul(&r)?;
        }
        Ok(r)
    }
}

fn tripod_legs(d: &mut Drawing, r: f64) -> [usize; 3] {
    [90.0, 210.0, 330.0].map(|a| {
        let i = ((a - 90.0) / 120.0) as usize;
        d.leg(i, polar(r, a))
    })
}

pub fn one() -> Result<LambdaElement> {
    let mut d = Drawing::legged();
    let c = d.node((0.0, 0.0));
    for l in tripod_legs(&mut d, 1.0) {
        d.edge(c, l);
    }
    LambdaElement::from_diagram(&d.build()?)
}

pub fn t_hat() -> Result<LambdaElement> {
    let mut d = Drawing::legged();
    let ring = d.ring((0.0, 0.0), 0.3, &[90.0, 210.0, 330.0]);
    for (i, l) in tripod_legs(&mut d, 1.0).into_iter().enumerate() {
        d.edge(ring[i], l);
    }
    LambdaElement::from_diagram(&d.build()?)
}

/// x_n: a circle with one leg on top and n spokes down to a bar whose ends are
/// the other two legs.
pub fn x_hat(n: usize) -> Result<LambdaElement> {
    if n == 0 || n > 6 {
        return Err(Error::Capacity(format!("x_n is available for 1 <= n <= 6, got {n}")));
    }
    let c = (0.0, 0.2);
    let r = 0.6;
    let mut angles = vec![90.0];
    for i in 0..n {
        angles.push(if n == 1 { 270.0 } else { 230.0 + 80.0 * i as f64 / (n - 1) as f64 });
    }
    let mut d = Drawing::legged();
    let top = d.leg(0, (0.0, 1.5));
    let left = d.leg(1, (-1.5, -1.0));
    let right = d.leg(2, (1.5, -1.0));
    let ring = d.ring(c, r, &angles);
    d.edge(ring[0], top);
    let mut bar = vec![left];
    for (i, &a) in angles.iter().enumerate().skip(1) {
        let x = c.0 + r * a.to_radians().cos();
        let b = d.node((x, -1.0));
        d.edge(ring[i], b);
        bar.push(b);
    }
    bar.push(right);
    d.path(&bar);
    LambdaElement::from_diagram(&d.build()?)
}

/// Generator by name: "one", "t" or "x<n>".
pub fn lambda_generator(name: &str) -> Result<LambdaElement> {
    match name {
        "one" => one(),
        "t" => t_hat(),
        _ => match name.strip_prefix('x').and_then(|s| s.parse::<usize>().ok()) {
            Some(n) => x_hat(n),
            None => Err(Error::Input(format!("unknown generator '{name}'"))),
        },
    }
}

/// Splice the legs of `v` onto the half-edges of `vertex`, in its cyclic
/// order starting from the smallest half-edge.
pub fn insert(v: &LambdaElement, u: &Diagram, vertex: usize) -> Result<LinComb> {
    let hs = u.vertices.get(vertex).ok_or_else(|| Error::Structural(format!("no vertex {vertex}")))?;
    if hs.len() != 3 {
        return Err(Error::Kind(format!("vertex {vertex} is not trivalent")));
    }
    if u.mark_of(vertex).is_some() {
        return Err(Error::Kind("cannot insert into a marked vertex".into()));
    }
    let mut w = u.clone();
    let m = (0..3).min_by_key(|&i| hs[i]).unwrap();
    w.vertices[vertex].rotate_left(m);
    let mut out = LinComb::zero();
    for (k, c) in v.terms.iter() {
        out.add_diagram(&splice(&w, vertex, &k.diagram()?)?, c)?;
    }
    Ok(out)
}

pub fn first_trivalent(d: &Diagram) -> Option<usize> {
    (0..d.vertices.len()).find(|&v| d.vertices[v].len() == 3 && d.mark_of(v).is_none())
}

/// Insert into the first unmarked trivalent vertex of every term.
pub fn insert_lc(v: &LambdaElement, x: &LinComb) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (k, c) in x.iter() {
        let d = k.diagram()?;
        let at = first_trivalent(&d).ok_or_else(|| Error::Pattern("no trivalent vertex to insert into".into()))?;
        out.add_scaled(&insert(v, &d, at)?, c);
    }
    Ok(out)
}

/// Value of a weight system on the closed tripod.
fn closed_tripod(f: Family) -> Result<LaurentPolyN> {
    let t = one()?;
    wsys(f, &close_in_order(&t.terms)?)
}

/// Attach legs 1, 2, 3 in this order to a Wilson loop.
pub fn close_in_order(x: &LinComb) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (k, c) in x.iter() {
        let d = k.diagram()?;
        let order: Vec<usize> = (0..d.n_legs()).collect();
        out.add_diagram(&d.attach(&order)?, c)?;
    }
    Ok(out)
}

/// chi_L(v) = Phi_L(v attached to the loop) / Phi_L(tripod attached to the loop).
pub fn character(v: &LambdaElement, f: Family) -> Result<LaurentPolyN> {
    if f == Family::Gl {
        return Err(Error::Kind("characters need sl or so".into()));
    }
    let x = if v.is_marked()? { expand_marked(&v.terms)? } else { v.terms.clone() };
    let num = wsys(f, &close_in_order(&x)?)?;
    num.div_exact(&closed_tripod(f)?)
}

/// omega_0 = 8/3 t^3 - 2/3 x_3
pub fn omega0_hat() -> Result<LambdaElement> {
    let mut r = t_hat()?.pow(3)?.scaled(&crate::q(8, 3));
    r.add_scaled(&x_hat(3)?, &crate::q(-2, 3));
    Ok(r)
}

/// sigma omega from x_5 = phi(12 t^5 - 17/2 t^2 omega + 3/2 sigma omega).
pub fn omega1_hat() -> Result<LambdaElement> {
    let t = t_hat()?;
    let mut r = x_hat(5)?;
    r.add_scaled(&t.pow(5)?, &crate::qi(-12));
    r.add_scaled(&t.pow(2)?.mul(&omega0_hat()?)?, &crate::q(17, 2));
    Ok(r.scaled(&crate::q(2, 3)))
}

/// The image of sigma^b omega: closed forms for b <= 1, marked triangles above.
fn omega_b(b: u32) -> Result<LambdaElement> {
    match b {
        0 => omega0_hat(),
        1 => omega1_hat(),
        _ => Ok(LambdaElement { terms: expand_marked(&omega_hat(b)?.terms)? }),
    }
}

/// The homomorphism from Q[t] + omega Q[t, sigma, omega].
pub fn phi_poly(p: &VogelPoly) -> Result<LambdaElement> {
    if let Some((a, b, c)) = p.non_realizable_monomial() {
        return Err(Error::Domain(format!("t^{a} sigma^{b} omega^{c} has sigma outside a product with omega")));
    }
    let t = t_hat()?;
    let mut out = LambdaElement::zero();
    for (&(a, b, c), q) in p.terms() {
        let mut m = t.pow(a)?;
        if c > 0 {
            m = omega_b(b)?.mul(&m)?;
            let w0 = omega0_hat()?;
            for _ in 1..c {
                m = w0.mul(&m)?;
            }
        }
        out.add_scaled(&m, q);
    }
    Ok(out)
}

/// omega P_sl through phi.
pub fn omega_p_sl() -> Result<LambdaElement> {
    phi_poly(&VogelPoly::omega().mul(&VogelPoly::p_sl()))
}

/// Element of the named registry, as a combination of fixed diagrams.
pub fn named(name: &str) -> Result<LinComb> {
    if let Some(p) = name.strip_prefix("omega").and_then(|s| s.parse::<u32>().ok()) {
        return Ok(omega_hat(p)?.terms);
    }
    if let Some(p) = name.strip_prefix("eps").and_then(|s| s.parse::<u32>().ok()) {
        if p > 2 {
            return Err(Error::Capacity(format!("eps_p is available for p <= 2, got {p}")));
        }
        return epsilon(p);
    }
    if name == "omegaPsl" {
        return Ok(omega_p_sl()?.terms);
    }
    Ok(lambda_generator(name)?.terms)
}

pub const REGISTRY: &[&str] = &[
    "one", "t", "x1", "x2", "x3", "x4", "x5", "x6", "omega0", "omega1", "omega2", "omega3", "omega4", "eps0", "eps1",
    "eps2", "omegaPsl",
];
