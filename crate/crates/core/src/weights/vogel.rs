//! Vogel parameters, polynomials in (t, sigma, omega), characters.

use super::LaurentPolyN;
use crate::{Error, Result, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct VogelParams {
    pub name: String,
    pub alpha: LaurentPolyN,
    pub beta: LaurentPolyN,
    pub gamma: LaurentPolyN,
}

impl VogelParams {
    pub fn new(name: &str, a: LaurentPolyN, b: LaurentPolyN, c: LaurentPolyN) -> VogelParams {
        VogelParams { name: name.into(), alpha: a, beta: b, gamma: c }
    }

    fn series(name: &str, b: i64, shift: i64) -> VogelParams {
        let g = &LaurentPolyN::n() + &LaurentPolyN::int(shift);
        Self::new(name, LaurentPolyN::int(-2), LaurentPolyN::int(b), g)
    }

    pub fn sl() -> VogelParams {
        Self::series("sl", 2, 0)
    }

    pub fn so() -> VogelParams {
        Self::series("so", 4, -4)
    }

    /// sp_{2n}, in the variable n.
    pub fn sp() -> VogelParams {
        Self::series("sp", 1, 2)
    }

    pub fn exceptional(name: &str) -> Result<VogelParams> {
        let (b, c) = match name {
            "g2" | "G2" => (crate::q(10, 3), crate::q(8, 3)),
            "f4" | "F4" => (crate::qi(5), crate::qi(6)),
            "e6" | "E6" => (crate::qi(6), crate::qi(8)),
            "e7" | "E7" => (crate::qi(8), crate::qi(12)),
            "e8" | "E8" => (crate::qi(12), crate::qi(20)),
            _ => return Err(Error::Input(format!("unknown exceptional algebra '{name}'"))),
        };
        Ok(Self::new(name, LaurentPolyN::int(-2), b.into(), c.into()))
    }

    /// Substitute N = n, e.g. sl at 3 for sl3.
    pub fn at(&self, n: i64) -> Result<VogelParams> {
        let x = Q::from_integer(n.into());
        Ok(Self::new(
            &format!("{}{n}", self.name),
            self.alpha.eval(&x)?.into(),
            self.beta.eval(&x)?.into(),
            self.gamma.eval(&x)?.into(),
        ))
    }

    pub fn t(&self) -> LaurentPolyN {
        &(&self.alpha + &self.beta) + &self.gamma
    }

    /// sigma = ab + bc + ca + 2t^2
    pub fn sigma(&self) -> LaurentPolyN {
        let (a, b, c) = (&self.alpha, &self.beta, &self.gamma);
        let e2 = &(&(a * b) + &(b * c)) + &(c * a);
        let t = self.t();
        &e2 + &(&t * &t).scale(&crate::qi(2))
    }

    /// omega = abc + t sigma
    pub fn omega(&self) -> LaurentPolyN {
        let abc = &(&self.alpha * &self.beta) * &self.gamma;
        &abc + &(&self.t() * &self.sigma())
    }
}

/// Polynomial in t, sigma, omega: monomial (a, b, c) is t^a sigma^b omega^c.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VogelPoly {
    terms: BTreeMap<(u32, u32, u32), Q>,
}

impl VogelPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: Q, a: u32, b: u32, w: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((a, b, w), c);
        p
    }

    pub fn t() -> Self {
        Self::monomial(Q::one(), 1, 0, 0)
    }

    pub fn sigma() -> Self {
        Self::monomial(Q::one(), 0, 1, 0)
    }

    pub fn omega() -> Self {
        Self::monomial(Q::one(), 0, 0, 1)
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0, 0, 0)
    }

    pub fn add_term(&mut self, m: (u32, u32, u32), c: Q) {
        let x = self.terms.entry(m).or_insert_with(Q::zero);
        *x += c;
        if x.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// In Q[t] + omega Q[t, sigma, omega]: sigma only next to omega.
    pub fn realizable(&self) -> bool {
        self.terms.keys().all(|&(_, b, c)| b == 0 || c >= 1)
    }

    pub fn non_realizable_monomial(&self) -> Option<(u32, u32, u32)> {
        self.terms.keys().find(|&&(_, b, c)| b > 0 && c == 0).copied()
    }

    /// deg t = 1, deg sigma = 2, deg omega = 3; None if not homogeneous.
    pub fn grading(&self) -> Option<u32> {
        let mut g = None;
        for &(a, b, c) in self.terms.keys() {
            let d = a + 2 * b + 3 * c;
            if g.is_some_and(|x| x != d) {
                return None;
            }
            g = Some(d);
        }
        g
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            r.add_term(*m, c * s);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                r.add_term((m.0 + n.0, m.1 + n.1, m.2 + n.2), c * d);
            }
        }
        r
    }

    /// P_sl = 2 t sigma - omega - 2 t^3, the product (a+b)(b+c)(c+a).
    pub fn p_sl() -> Self {
        let mut p = Self::zero();
        p.add_term((1, 1, 0), crate::qi(2));
        p.add_term((0, 0, 1), crate::qi(-1));
        p.add_term((3, 0, 0), crate::qi(-2));
        p
    }
}

impl fmt::Display for VogelPoly {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b, c), q) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{q}")?;
            for (s, e) in [("t", a), ("sigma", b), ("omega", c)] {
                if *e > 0 {
                    write!(f, "*{s}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn character_eval(p: &VogelPoly, v: &VogelParams) -> LaurentPolyN {
    let (t, s, w) = (v.t(), v.sigma(), v.omega());
    let mut r = LaurentPolyN::zero();
    for ((a, b, c), q) in p.terms() {
        let m = &(&t.pow(*a) * &s.pow(*b)) * &w.pow(*c);
        r = &r + &m.scale(q);
    }
    r
}

/// dim L = (a - 2t)(b - 2t)(c - 2t) / (abc)
pub fn universal_dim(v: &VogelParams) -> Result<LaurentPolyN> {
    let t2 = v.t().scale(&crate::qi(2));
    let num = &(&(&v.alpha - &t2) * &(&v.beta - &t2)) * &(&v.gamma - &t2);
    let den = &(&v.alpha * &v.beta) * &v.gamma;
    if den.is_zero() {
        return Err(Error::Domain(format!("{}: alpha*beta*gamma vanishes", v.name)));
    }
    num.div_exact(&den)
}
