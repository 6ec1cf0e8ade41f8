//! Laurent polynomials in N with rational coefficients.

use crate::{Error, Result, Q};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolyN {
    terms: BTreeMap<i32, Q>,
}

impl LaurentPolyN {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Q::from_integer(c.into()))
    }

    /// The variable N.
    pub fn n() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn monomial(c: Q, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: i32, c: Q) {
        if c.is_zero() {
            return;
        }
        let x = self.terms.entry(e).or_insert_with(Q::zero);
        *x += c;
        if x.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> Q {
        self.terms.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// The constant value, if the polynomial has no N-dependence.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn eval(&self, n: &Q) -> Result<Q> {
        if n.is_zero() && self.min_exp().map_or(false, |e| e < 0) {
            return Err(Error::Domain("negative power of N at N = 0".into()));
        }
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            s += c * pow_q(n, *e);
        }
        Ok(s)
    }

    /// Exact quotient; fails unless `d` divides `self` in Q[N, 1/N].
    pub fn div_exact(&self, d: &LaurentPolyN) -> Result<LaurentPolyN> {
        if d.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let dlo = d.min_exp().unwrap();
        let dhi = d.max_exp().unwrap();
        let lead = d.coeff(dhi);
        let mut r = self.clone();
        let mut q = LaurentPolyN::zero();
        while let Some(hi) = r.max_exp() {
            if hi - (dhi - dlo) < r.min_exp().unwrap() {
                return Err(Error::Domain(format!("{d} does not divide {self}")));
            }
            let c = r.coeff(hi) / &lead;
            let m = LaurentPolyN::monomial(c, hi - dhi);
            r = &r - &(&m * d);
            q = &q + &m;
        }
        Ok(q)
    }
}

fn pow_q(n: &Q, e: i32) -> Q {
    let b = if e < 0 { n.recip() } else { n.clone() };
    num_traits::pow(b, e.unsigned_abs() as usize)
}

impl From<Q> for LaurentPolyN {
    fn from(c: Q) -> Self {
        Self::constant(c)
    }
}

impl Add for &LaurentPolyN {
    type Output = LaurentPolyN;
    fn add(self, o: &LaurentPolyN) -> LaurentPolyN {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub for &LaurentPolyN {
    type Output = LaurentPolyN;
    fn sub(self, o: &LaurentPolyN) -> LaurentPolyN {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl Mul for &LaurentPolyN {
    type Output = LaurentPolyN;
    fn mul(self, o: &LaurentPolyN) -> LaurentPolyN {
        let mut r = LaurentPolyN::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a + b, x * y);
            }
        }
        r
    }
}

impl Neg for &LaurentPolyN {
    type Output = LaurentPolyN;
    fn neg(self) -> LaurentPolyN {
        self.scale(&-Q::one())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for LaurentPolyN {
            type Output = LaurentPolyN;
            fn $f(self, o: LaurentPolyN) -> LaurentPolyN {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Highest power first: `N^1 - N^-1`, `3/2*N^2 + 1`.
impl fmt::Display for LaurentPolyN {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if *e == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "N^{e}")?;
            } else {
                write!(f, "{a}*N^{e}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for LaurentPolyN {
    type Err = Error;

    /// Parses the output of `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("cannot parse polynomial '{s}'"));
        let t = s.trim();
        if t == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        let mut rest = t.replace(" - ", " + -");
        if let Some(r) = rest.strip_prefix('-') {
            rest = format!("-{}", r.trim_start());
        }
        for tok in rest.split(" + ") {
            let tok = tok.trim();
            let (neg, tok) = match tok.strip_prefix('-') {
                Some(x) => (true, x),
                None => (false, tok),
            };
            let (c, e) = if let Some(i) = tok.find("N^") {
                let c = tok[..i].trim_end_matches('*');
                let c: Q = if c.is_empty() { Q::one() } else { c.parse().map_err(|_| bad())? };
                (c, tok[i + 2..].parse::<i32>().map_err(|_| bad())?)
            } else {
                (tok.parse::<Q>().map_err(|_| bad())?, 0)
            };
            p.add_term(e, if neg { -c } else { c });
        }
        Ok(p)
    }
}
