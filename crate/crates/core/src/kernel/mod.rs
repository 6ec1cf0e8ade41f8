//! Elements in the kernel of the sl_N weight system, orders 6 to 10.

mod build;

pub use build::{
    bubble, build_nonprimitive_kernel, build_primitive_kernel, closed_bubble_with, order6_figure, wheel_element,
    WHEEL_SIGMA_COEFF,
};

use crate::diagrams::{close, split_close, ChordCode, LinComb};
use crate::lambda::{character, insert_lc, omega0_hat, omega_hat, expand_marked, one, phi_poly, t_hat, LambdaElement, VogelPoly};
use crate::relations::{quotient_cached_chords, rank_of, stu_chords};
use crate::weights::{wsys_sl, wsys_so, Family, LaurentPolyN, LieAlgebraSpec, OracleValue};
use crate::{Error, Result, Q};
use num_traits::Zero;
use serde::Serialize;
use std::sync::{Mutex, OnceLock};

/// (alpha + beta)(beta + gamma)(gamma + alpha) = 2 t sigma - omega - 2 t^3
pub fn p_sl() -> VogelPoly {
    VogelPoly::p_sl()
}

/// One summand coeff * (phi(poly) inserted into base). The base is unmarked;
/// fixed-legged for primitive elements, closed otherwise.
#[derive(Clone, Debug)]
pub struct Part {
    pub coeff: Q,
    pub poly: VogelPoly,
    pub lambda: LambdaElement,
    pub base: LinComb,
}

impl Part {
    pub fn new(coeff: Q, poly: VogelPoly, base: LinComb) -> Result<Part> {
        let lambda = phi_poly(&poly)?;
        Ok(Part { coeff, poly, lambda, base })
    }

    fn is_plain(&self) -> Result<bool> {
        Ok(self.lambda.terms == one()?.terms)
    }

    fn inserted(&self) -> Result<LinComb> {
        let x = if self.is_plain()? { self.base.clone() } else { insert_lc(&self.lambda, &self.base)? };
        Ok(x.scaled(&self.coeff))
    }
}

#[derive(Clone, Debug)]
pub struct KernelElement {
    pub name: String,
    pub order: usize,
    /// Number of legs of the open form; None for non-primitive elements.
    pub legs: Option<usize>,
    pub recipe: String,
    pub parts: Vec<Part>,
    pub open_form: Option<LinComb>,
    pub closed_form: LinComb,
}

fn close_fixed(x: &LinComb) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (k, c) in x.iter() {
        let d = k.diagram()?;
        if d.n_legs() == 2 {
            out.add_diagram(&d.attach(&[0, 1])?, c)?;
        } else {
            out.add_scaled(&close(&d.to_open())?, c);
        }
    }
    Ok(out)
}

impl KernelElement {
    pub fn from_parts(name: &str, order: usize, legs: Option<usize>, recipe: String, parts: Vec<Part>) -> Result<KernelElement> {
        let mut x = LinComb::zero();
        for p in &parts {
            x.add(&p.inserted()?);
        }
        let (open_form, closed_form) = match legs {
            Some(_) => {
                let mut open = LinComb::zero();
                for (k, c) in x.iter() {
                    open.add_diagram(&k.diagram()?.to_open(), c)?;
                }
                (Some(open), close_fixed(&x)?)
            }
            None => (None, x),
        };
        let deg = closed_form.degree()?;
        if !closed_form.is_zero() && deg != order {
            return Err(Error::Consistency(format!("{name}: closed form has degree {deg}, expected {order}")));
        }
        Ok(KernelElement { name: name.into(), order, legs, recipe, parts, open_form, closed_form })
    }

    pub fn is_primitive(&self) -> bool {
        self.legs.is_some()
    }

    /// The closed form with its last term removed.
    pub fn mutated(&self) -> LinComb {
        let mut x = self.closed_form.clone();
        if let Some((k, c)) = x.iter().last().map(|(k, c)| (k.clone(), c.clone())) {
            x.add_key(k, &-c);
        }
        x
    }
}

/// Generators whose characters are taken from diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    T,
    /// omega_0 in closed form; omega_b for b > 0, marked then expanded
    Omega(u32),
}

type CharMemo = Vec<((Family, Gen), LaurentPolyN)>;

fn generator_character(g: Gen, f: Family) -> Result<LaurentPolyN> {
    static M: OnceLock<Mutex<CharMemo>> = OnceLock::new();
    let m = M.get_or_init(Default::default);
    if let Some((_, p)) = m.lock().unwrap().iter().find(|(k, _)| *k == (f, g)) {
        return Ok(p.clone());
    }
    let v = match g {
        Gen::T => t_hat()?,
        Gen::Omega(0) => omega0_hat()?,
        Gen::Omega(b) => LambdaElement { terms: expand_marked(&omega_hat(b)?.terms)? },
    };
    let p = character(&v, f)?;
    m.lock().unwrap().push(((f, g), p.clone()));
    Ok(p)
}

/// chi(phi(p)) from the characters of t, omega_0 and omega_b, in the same
/// monomial order as `phi_poly`. Characters are multiplicative because a
/// Lambda element acts on a simple Lie algebra by a scalar.
pub fn character_of_poly(p: &VogelPoly, f: Family) -> Result<LaurentPolyN> {
    let mut total = LaurentPolyN::zero();
    for (&(a, b, c), q) in p.terms() {
        let mut m = generator_character(Gen::T, f)?.pow(a);
        if c > 0 {
            m = &m * &generator_character(Gen::Omega(b), f)?;
            m = &m * &generator_character(Gen::Omega(0), f)?.pow(c - 1);
        }
        total = &total + &m.scale(q);
    }
    Ok(total)
}

/// Weight system through the Lambda characters: each part contributes
/// coeff * chi(phi(poly)) * Phi(closed base). Exact for simple Lie algebras,
/// where the only invariant in the cube of the adjoint representation is
/// the bracket.
pub fn wsys_factored(e: &KernelElement, f: Family) -> Result<LaurentPolyN> {
    let mut total = LaurentPolyN::zero();
    for p in &e.parts {
        let base = if e.is_primitive() { close_fixed(&p.base)? } else { p.base.clone() };
        let w = crate::weights::wsys(f, &base)?;
        let chi = if p.is_plain()? { LaurentPolyN::one() } else { character_of_poly(&p.poly, f)? };
        total = &total + &(&chi * &w).scale(&p.coeff);
    }
    Ok(total)
}

/// Legs on the first arc in the split closure.
pub const SPLIT_ARC: usize = 2;

fn split_closed(x: &LinComb) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (k, c) in x.iter() {
        out.add_scaled(&split_close(&k.diagram()?, SPLIT_ARC)?, c);
    }
    Ok(out)
}

/// Split-closure value on the full open form.
pub fn split_direct(e: &KernelElement, f: Family) -> Result<LaurentPolyN> {
    let open = e.open_form.as_ref().ok_or_else(|| Error::Kind(format!("{} has no legs", e.name)))?;
    crate::weights::wsys(f, &split_closed(open)?)
}

/// Split-closure value through the characters of the Lambda parts.
pub fn split_factored(e: &KernelElement, f: Family) -> Result<LaurentPolyN> {
    if !e.is_primitive() {
        return Err(Error::Kind(format!("{} has no legs", e.name)));
    }
    let mut total = LaurentPolyN::zero();
    for p in &e.parts {
        let w = crate::weights::wsys(f, &split_closed(&p.base)?)?;
        let chi = if p.is_plain()? { LaurentPolyN::one() } else { character_of_poly(&p.poly, f)? };
        total = &total + &(&chi * &w).scale(&p.coeff);
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Evaluate so_N on the whole closed form instead of through characters.
    pub direct_so: bool,
    /// Tensor-contraction spot checks on these algebras.
    pub oracles: Vec<String>,
    pub oracle_budget: usize,
    /// Largest order for which quotient coordinates are computed.
    pub quotient_max: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { direct_so: false, oracles: vec!["sl2".into(), "sl3".into()], oracle_budget: 4_000_000, quotient_max: 7 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub algebra: String,
    /// None when the contraction exceeded its budget.
    pub zero: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelRow {
    pub name: String,
    pub order: usize,
    pub legs: Option<usize>,
    pub recipe: String,
    pub terms: usize,
    #[serde(serialize_with = "as_string")]
    pub sl: LaurentPolyN,
    #[serde(serialize_with = "as_string")]
    pub so: LaurentPolyN,
    /// so_N on the split closure; primitive elements only.
    #[serde(serialize_with = "opt_as_string")]
    pub so_split: Option<LaurentPolyN>,
    pub so_method: String,
    /// Whether the class in the degree-n chord quotient is nonzero.
    pub quotient_nonzero: Option<bool>,
    pub oracle: Vec<OracleCheck>,
    pub verified: bool,
}

fn as_string<S: serde::Serializer>(p: &LaurentPolyN, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn opt_as_string<S: serde::Serializer>(p: &Option<LaurentPolyN>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

/// Coordinates of a closed combination in the framed chord quotient.
pub fn quotient_coordinates(x: &LinComb, n: usize) -> Result<Vec<Q>> {
    let quot = quotient_cached_chords(n, false)?;
    let codes: std::collections::HashMap<ChordCode, Q> = stu_chords(x)?;
    quot.coordinates(codes.iter())
}

fn oracle_zero(x: &LinComb, name: &str, budget: usize) -> Result<Option<bool>> {
    let l = LieAlgebraSpec::by_name(name)?;
    let mut acc = Q::zero();
    for (d, c) in x.diagrams()? {
        match crate::weights::oracle_eval_budget(&d, &l, budget) {
            Ok(OracleValue::Scalar(v)) => acc += c * v,
            Ok(_) => return Err(Error::Kind("oracle of a closed diagram must be a scalar".into())),
            Err(Error::Budget(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(acc.is_zero()))
}

pub fn verify_kernel(e: &KernelElement, opt: &VerifyOptions) -> Result<KernelRow> {
    let sl = wsys_sl(&e.closed_form)?;
    let (so, so_method) = if opt.direct_so || !e.is_primitive() {
        (wsys_so(&e.closed_form)?, "direct")
    } else {
        (wsys_factored(e, Family::So)?, "characters")
    };
    let so_split = match (e.is_primitive(), opt.direct_so) {
        (false, _) => None,
        (true, true) => Some(split_direct(e, Family::So)?),
        (true, false) => Some(split_factored(e, Family::So)?),
    };
    let quotient_nonzero = if e.order <= opt.quotient_max {
        Some(quotient_coordinates(&e.closed_form, e.order)?.iter().any(|c| !c.is_zero()))
    } else {
        None
    };
    let mut oracle = vec![];
    for a in &opt.oracles {
        oracle.push(OracleCheck { algebra: a.clone(), zero: oracle_zero(&e.closed_form, a, opt.oracle_budget)? });
    }
    // a weight system that does not vanish certifies a nonzero class
    let nonzero = quotient_nonzero.unwrap_or(false) || !so.is_zero() || so_split.as_ref().is_some_and(|p| !p.is_zero());
    let verified = sl.is_zero() && nonzero && oracle.iter().all(|o| o.zero != Some(false));
    Ok(KernelRow {
        name: e.name.clone(),
        order: e.order,
        legs: e.legs,
        recipe: e.recipe.clone(),
        terms: e.closed_form.len(),
        sl,
        so,
        so_split,
        so_method: so_method.into(),
        quotient_nonzero,
        oracle,
        verified,
    })
}

fn coefficient_rank(polys: &[Vec<&LaurentPolyN>]) -> usize {
    let all = polys.iter().flatten();
    let lo = all.clone().filter_map(|p| p.min_exp()).min().unwrap_or(0);
    let hi = all.filter_map(|p| p.max_exp()).max().unwrap_or(0);
    let m: Vec<Vec<Q>> =
        polys.iter().map(|ps| ps.iter().flat_map(|p| (lo..=hi).map(|e| p.coeff(e))).collect()).collect();
    rank_of(&m)
}

/// Rank of the so_N values on the plain closure alone.
pub fn so_vector_rank(rows: &[KernelRow]) -> usize {
    coefficient_rank(&rows.iter().map(|r| vec![&r.so]).collect::<Vec<_>>())
}

/// Rank of the so_N values on the plain and split closures together. At
/// order 10 the plain closure alone cannot exceed 3: every value carries the
/// factor N(N-1)(N-2)(N-3)(N-4)(N-6)(N+2) and has degree at most 9.
pub fn so_rank(rows: &[KernelRow]) -> usize {
    let zero = LaurentPolyN::zero();
    coefficient_rank(&rows.iter().map(|r| vec![&r.so, r.so_split.as_ref().unwrap_or(&zero)]).collect::<Vec<_>>())
}

/// Rank of the quotient coordinates of closed combinations of one degree.
pub fn quotient_rank(xs: &[&LinComb], n: usize) -> Result<usize> {
    let m: Vec<Vec<Q>> = xs.iter().map(|x| quotient_coordinates(x, n)).collect::<Result<_>>()?;
    Ok(rank_of(&m))
}

/// Upper bounds for the primitive kernel dimension, orders 1..=10.
pub const PRIMITIVE_BOUNDS: [usize; 10] = [0, 0, 0, 0, 0, 0, 0, 1, 2, 5];
/// Non-primitive kernel dimensions at orders 6 and 7.
pub const NONPRIMITIVE_BOUNDS: [(usize, usize); 2] = [(6, 1), (7, 3)];

#[derive(Clone, Debug, Serialize)]
pub struct OrderSummary {
    pub order: usize,
    pub primitive: bool,
    pub constructed: usize,
    pub verified: usize,
    pub so_rank: usize,
    pub so_vector_rank: usize,
    pub quotient_rank: Option<usize>,
    pub bound: usize,
    pub saturated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub rows: Vec<KernelRow>,
    pub orders: Vec<OrderSummary>,
}

impl KernelReport {
    pub fn all_verified(&self) -> bool {
        self.rows.iter().all(|r| r.verified) && self.orders.iter().all(|o| o.verified == o.constructed)
    }
}

/// Elements of one order; primitive orders are 8..=10, non-primitive 6 and 7.
pub fn build_order(n: usize) -> Result<Vec<KernelElement>> {
    match n {
        6 | 7 => build_nonprimitive_kernel(n),
        8..=10 => build_primitive_kernel(n),
        _ => Ok(vec![]),
    }
}

fn summarize(n: usize, elems: &[KernelElement], rows: &[KernelRow], opt: &VerifyOptions) -> Result<OrderSummary> {
    let primitive = n >= 8;
    let bound = if primitive || n < 6 {
        PRIMITIVE_BOUNDS[n - 1]
    } else {
        NONPRIMITIVE_BOUNDS.iter().find(|b| b.0 == n).map_or(0, |b| b.1)
    };
    let quotient_rank = if n <= opt.quotient_max && !elems.is_empty() {
        Some(quotient_rank(&elems.iter().map(|e| &e.closed_form).collect::<Vec<_>>(), n)?)
    } else {
        None
    };
    let so_rank = so_rank(rows);
    let constructed = elems.len();
    let rank = so_rank.max(quotient_rank.unwrap_or(0));
    Ok(OrderSummary {
        order: n,
        primitive,
        constructed,
        verified: rows.iter().filter(|r| r.verified).count(),
        so_rank,
        so_vector_rank: so_vector_rank(rows),
        quotient_rank,
        bound,
        saturated: rank == constructed && constructed == bound,
    })
}

/// Build and verify every element up to order n_max (at most 10).
pub fn kernel_dims_report(n_max: usize, opt: &VerifyOptions) -> Result<KernelReport> {
    if n_max > 10 {
        return Err(Error::Capacity(format!("kernel elements are built up to order 10, got {n_max}")));
    }
    let mut rows = vec![];
    let mut orders = vec![];
    for n in 1..=n_max {
        let elems = build_order(n)?;
        let rs: Vec<KernelRow> = elems.iter().map(|e| verify_kernel(e, opt)).collect::<Result<_>>()?;
        orders.push(summarize(n, &elems, &rs, opt)?);
        rows.extend(rs);
    }
    Ok(KernelReport { rows, orders })
}
