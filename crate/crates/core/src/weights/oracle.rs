//! Explicit matrix Lie algebras and literal tensor contraction of diagrams.

use crate::diagrams::{Diagram, LinComb};
use crate::{Error, Result, Q};
use num_traits::{One, Zero};
use std::collections::HashMap;

pub type Mat = Vec<Vec<Q>>;

fn zeros(n: usize) -> Mat {
    vec![vec![Q::zero(); n]; n]
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut c = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    c[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    c
}

fn trace(a: &Mat) -> Q {
    (0..a.len()).fold(Q::zero(), |s, i| s + &a[i][i])
}

fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = zeros(n);
    m[i][j] = Q::one();
    m
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert(m: &Mat) -> Result<Mat> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().cloned().collect();
    let mut inv = zeros(n);
    for (i, r) in inv.iter_mut().enumerate() {
        r[i] = Q::one();
    }
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or_else(|| Error::Domain("degenerate metric".into()))?;
        a.swap(c, p);
        inv.swap(c, p);
        let d = a[c][c].clone();
        for j in 0..n {
            a[c][j] /= &d;
            inv[c][j] /= &d;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..n {
                    let (x, y) = (&a[c][j] * &f, &inv[c][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    Ok(inv)
}

#[derive(Clone, Debug)]
pub struct LieAlgebraSpec {
    pub name: String,
    /// basis of the defining representation
    pub basis: Vec<Mat>,
    /// g_ab = scale * tr(T_a T_b)
    pub metric: Mat,
    pub inverse_metric: Mat,
    /// f_abc = g([T_a, T_b], T_c)
    pub f_lower: Vec<Vec<Vec<Q>>>,
    /// f^abc, all indices raised
    pub f_raised: Vec<Vec<Vec<Q>>>,
    /// [T_a, T_b] = sum_c c[a][b][c] T_c
    pub structure: Vec<Vec<Vec<Q>>>,
    pub dim_l: usize,
    pub dim_r: usize,
}

impl LieAlgebraSpec {
    pub fn from_basis(name: &str, basis: Vec<Mat>, scale: Q) -> Result<LieAlgebraSpec> {
        let d = basis.len();
        let dim_r = basis.first().map_or(0, |m| m.len());
        let mut metric = zeros(d);
        for a in 0..d {
            for b in 0..d {
                metric[a][b] = &scale * trace(&mat_mul(&basis[a], &basis[b]));
            }
        }
        let inverse_metric = invert(&metric)?;
        let mut f_lower = vec![vec![vec![Q::zero(); d]; d]; d];
        let mut comm = vec![vec![zeros(dim_r); d]; d];
        for a in 0..d {
            for b in 0..d {
                let (x, y) = (mat_mul(&basis[a], &basis[b]), mat_mul(&basis[b], &basis[a]));
                let c: Mat = (0..dim_r).map(|i| (0..dim_r).map(|j| &x[i][j] - &y[i][j]).collect()).collect();
                for e in 0..d {
                    f_lower[a][b][e] = &scale * trace(&mat_mul(&c, &basis[e]));
                }
                comm[a][b] = c;
            }
        }
        let raise = |t: &Vec<Vec<Vec<Q>>>, g: &Mat| {
            let mut r = vec![vec![vec![Q::zero(); d]; d]; d];
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        let mut s = Q::zero();
                        for x in 0..d {
                            if g[a][x].is_zero() {
                                continue;
                            }
                            for y in 0..d {
                                if g[b][y].is_zero() {
                                    continue;
                                }
                                for z in 0..d {
                                    if !g[c][z].is_zero() && !t[x][y][z].is_zero() {
                                        s += &g[a][x] * &g[b][y] * &g[c][z] * &t[x][y][z];
                                    }
                                }
                            }
                        }
                        r[a][b][c] = s;
                    }
                }
            }
            r
        };
        let f_raised = raise(&f_lower, &inverse_metric);
        // c_ab^e = g^{ed} f_abd
        let mut structure = vec![vec![vec![Q::zero(); d]; d]; d];
        for a in 0..d {
            for b in 0..d {
                for e in 0..d {
                    let mut s = Q::zero();
                    for x in 0..d {
                        s += &inverse_metric[e][x] * &f_lower[a][b][x];
                    }
                    structure[a][b][e] = s;
                }
            }
        }
        let l = LieAlgebraSpec { name: name.into(), basis, metric, inverse_metric, f_lower, f_raised, structure, dim_l: d, dim_r };
        for a in 0..d {
            for b in 0..d {
                let mut m = zeros(dim_r);
                for e in 0..d {
                    for i in 0..dim_r {
                        for j in 0..dim_r {
                            m[i][j] += &l.structure[a][b][e] * &l.basis[e][i][j];
                        }
                    }
                }
                if m != comm[a][b] {
                    return Err(Error::Structural(format!("{name}: basis is not closed under brackets")));
                }
            }
        }
        l.check()?;
        Ok(l)
    }

    /// Antisymmetry of f and the Jacobi identity.
    pub fn check(&self) -> Result<()> {
        let d = self.dim_l;
        let f = &self.f_raised;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    if f[a][b][c] != f[b][c][a] || f[a][b][c] != -f[b][a][c].clone() {
                        return Err(Error::Structural(format!("{}: f is not totally antisymmetric", self.name)));
                    }
                }
            }
        }
        let s = &self.structure;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for out in 0..d {
                        let mut j = Q::zero();
                        for e in 0..d {
                            j += &s[a][b][e] * &s[e][c][out] + &s[b][c][e] * &s[e][a][out] + &s[c][a][e] * &s[e][b][out];
                        }
                        if !j.is_zero() {
                            return Err(Error::Structural(format!("{}: Jacobi identity fails", self.name)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn gl(n: usize) -> Result<LieAlgebraSpec> {
        let b = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| unit(n, i, j)).collect();
        Self::from_basis(&format!("gl{n}"), b, Q::one())
    }

    pub fn sl(n: usize) -> Result<LieAlgebraSpec> {
        let mut b = vec![];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    b.push(unit(n, i, j));
                }
            }
        }
        for k in 0..n - 1 {
            let mut h = unit(n, k, k);
            h[k + 1][k + 1] = -Q::one();
            b.push(h);
        }
        Self::from_basis(&format!("sl{n}"), b, Q::one())
    }

    /// Antisymmetric matrices with half the trace form.
    pub fn so(n: usize) -> Result<LieAlgebraSpec> {
        let mut b = vec![];
        for i in 0..n {
            for j in i + 1..n {
                let mut m = unit(n, i, j);
                m[j][i] = -Q::one();
                b.push(m);
            }
        }
        Self::from_basis(&format!("so{n}"), b, crate::q(1, 2))
    }

    /// "sl2", "so5", "gl3", ...
    pub fn by_name(s: &str) -> Result<LieAlgebraSpec> {
        let bad = || Error::Input(format!("unknown Lie algebra '{s}'"));
        let (fam, n) = s.split_at(2.min(s.len()));
        let n: usize = n.parse().map_err(|_| bad())?;
        if !(1..=6).contains(&n) {
            return Err(Error::Capacity(format!("explicit algebras need 1 <= n <= 6, got {n}")));
        }
        match fam {
            "gl" => Self::gl(n),
            "sl" if n >= 2 => Self::sl(n),
            "so" if n >= 3 => Self::so(n),
            _ => Err(bad()),
        }
    }
}

/// Sparse factor over a list of variables.
#[derive(Clone, Debug)]
struct Factor {
    vars: Vec<usize>,
    data: HashMap<Vec<u8>, Q>,
}

impl Factor {
    fn product(&self, o: &Factor, budget: usize) -> Result<Factor> {
        let mut vars = self.vars.clone();
        let mut opos = vec![];
        for &v in &o.vars {
            match vars.iter().position(|&x| x == v) {
                Some(i) => opos.push(i),
                None => {
                    vars.push(v);
                    opos.push(vars.len() - 1);
                }
            }
        }
        let shared: Vec<(usize, usize)> =
            o.vars.iter().enumerate().filter_map(|(j, v)| self.vars.iter().position(|x| x == v).map(|i| (i, j))).collect();
        let mut idx: HashMap<Vec<u8>, Vec<(&Vec<u8>, &Q)>> = HashMap::new();
        for (k, c) in &o.data {
            idx.entry(shared.iter().map(|&(_, j)| k[j]).collect()).or_default().push((k, c));
        }
        let mut data = HashMap::new();
        for (k, c) in &self.data {
            let key: Vec<u8> = shared.iter().map(|&(i, _)| k[i]).collect();
            let Some(ms) = idx.get(&key) else { continue };
            for (k2, c2) in ms {
                let mut a = k.clone();
                a.resize(vars.len(), 0);
                for (j, &p) in opos.iter().enumerate() {
                    a[p] = k2[j];
                }
                *data.entry(a).or_insert_with(Q::zero) += c * *c2;
            }
            if data.len() > budget {
                return Err(Error::Budget(format!("tensor contraction exceeds {budget} entries")));
            }
        }
        data.retain(|_, c: &mut Q| !c.is_zero());
        Ok(Factor { vars, data })
    }

    fn sum_out(&self, v: usize) -> Factor {
        let Some(i) = self.vars.iter().position(|&x| x == v) else { return self.clone() };
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut data: HashMap<Vec<u8>, Q> = HashMap::new();
        for (k, c) in &self.data {
            let mut a = k.clone();
            a.remove(i);
            *data.entry(a).or_insert_with(Q::zero) += c;
        }
        data.retain(|_, c| !c.is_zero());
        Factor { vars, data }
    }
}

fn contract(mut fs: Vec<Factor>, keep: &[usize], domain: &[usize], budget: usize) -> Result<Factor> {
    loop {
        let mut best: Option<(f64, usize)> = None;
        let mut seen = std::collections::HashSet::new();
        for f in &fs {
            for &v in &f.vars {
                if keep.contains(&v) || !seen.insert(v) {
                    continue;
                }
                let mut u: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
                for g in fs.iter().filter(|g| g.vars.contains(&v)) {
                    u.extend(g.vars.iter().cloned());
                }
                let cost: f64 = u.iter().map(|&x| (domain[x] as f64).ln()).sum();
                if best.map_or(true, |b| cost < b.0) {
                    best = Some((cost, v));
                }
            }
        }
        let Some((_, v)) = best else { break };
        let (with, rest): (Vec<Factor>, Vec<Factor>) = fs.into_iter().partition(|f| f.vars.contains(&v));
        let mut it = with.into_iter();
        let mut acc = it.next().unwrap();
        for f in it {
            acc = acc.product(&f, budget)?;
        }
        fs = rest;
        fs.push(acc.sum_out(v));
    }
    let mut acc = Factor { vars: vec![], data: [(vec![], Q::one())].into_iter().collect() };
    for f in &fs {
        acc = acc.product(f, budget)?;
    }
    Ok(acc)
}

/// Value of a diagram under a Lie algebra: a number for closed diagrams,
/// a sparse tensor with one upper index per leg (in leg order) otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum OracleValue {
    Scalar(Q),
    Tensor { rank: usize, entries: HashMap<Vec<u8>, Q> },
}

impl OracleValue {
    pub fn is_zero(&self) -> bool {
        match self {
            OracleValue::Scalar(q) => q.is_zero(),
            OracleValue::Tensor { entries, .. } => entries.values().all(|c| c.is_zero()),
        }
    }

    fn add_scaled(&mut self, o: &OracleValue, s: &Q) -> Result<()> {
        match (self, o) {
            (OracleValue::Scalar(a), OracleValue::Scalar(b)) => *a += s * b,
            (OracleValue::Tensor { rank: r1, entries: e1 }, OracleValue::Tensor { rank: r2, entries: e2 }) if r1 == r2 => {
                for (k, c) in e2 {
                    let x = e1.entry(k.clone()).or_insert_with(Q::zero);
                    *x += s * c;
                }
                e1.retain(|_, c| !c.is_zero());
            }
            _ => return Err(Error::Kind("cannot add values of different shapes".into())),
        }
        Ok(())
    }
}

pub const DEFAULT_BUDGET: usize = 4_000_000;

pub fn oracle_eval(d: &Diagram, l: &LieAlgebraSpec) -> Result<OracleValue> {
    oracle_eval_budget(d, l, DEFAULT_BUDGET)
}

pub fn oracle_eval_budget(d: &Diagram, l: &LieAlgebraSpec, budget: usize) -> Result<OracleValue> {
    if !d.marks.is_empty() {
        return Err(Error::Kind("expand marked vertices before evaluation".into()));
    }
    d.validate()?;
    let nh = d.pairing.len();
    let dl = l.dim_l;
    let sparse3 = |t: &Vec<Vec<Vec<Q>>>| -> HashMap<Vec<u8>, Q> {
        let mut m = HashMap::new();
        for a in 0..dl {
            for b in 0..dl {
                for c in 0..dl {
                    if !t[a][b][c].is_zero() {
                        m.insert(vec![a as u8, b as u8, c as u8], t[a][b][c].clone());
                    }
                }
            }
        }
        m
    };
    let mut ginv = HashMap::new();
    for a in 0..dl {
        for b in 0..dl {
            if !l.inverse_metric[a][b].is_zero() {
                ginv.insert(vec![a as u8, b as u8], l.inverse_metric[a][b].clone());
            }
        }
    }
    let f = sparse3(&l.f_lower);
    let mut domain = vec![dl; nh];
    let mut fs = vec![];
    for h in 0..nh {
        if h < d.pairing[h] {
            fs.push(Factor { vars: vec![h, d.pairing[h]], data: ginv.clone() });
        }
    }
    for hs in &d.vertices {
        if hs.len() == 3 {
            fs.push(Factor { vars: hs.clone(), data: f.clone() });
        }
    }
    let keep: Vec<usize>;
    if d.kind.has_loop() {
        let w = d.wilson.as_ref().unwrap();
        let m = w.len();
        if m == 0 {
            return Ok(OracleValue::Scalar(Q::one()));
        }
        domain.extend(std::iter::repeat(l.dim_r).take(m));
        for (i, &v) in w.iter().enumerate() {
            let mut t = HashMap::new();
            for a in 0..dl {
                for x in 0..l.dim_r {
                    for y in 0..l.dim_r {
                        if !l.basis[a][x][y].is_zero() {
                            t.insert(vec![a as u8, x as u8, y as u8], l.basis[a][x][y].clone());
                        }
                    }
                }
            }
            fs.push(Factor { vars: vec![d.vertices[v][0], nh + i, nh + (i + 1) % m], data: t });
        }
        keep = vec![];
    } else {
        let legs = d.legs.as_ref().ok_or_else(|| Error::Kind("legs missing".into()))?;
        keep = legs.iter().map(|&v| d.vertices[v][0]).collect();
    }
    let r = contract(fs, &keep, &domain, budget)?;
    if d.kind.has_loop() {
        let v = r.data.get(&vec![]).cloned().unwrap_or_else(Q::zero);
        return Ok(OracleValue::Scalar(v / Q::from_integer(l.dim_r.into())));
    }
    let mut entries = HashMap::new();
    for (k, c) in r.data {
        let key: Vec<u8> = keep.iter().map(|v| k[r.vars.iter().position(|x| x == v).unwrap()]).collect();
        entries.insert(key, c);
    }
    Ok(OracleValue::Tensor { rank: keep.len(), entries })
}

pub fn oracle_eval_lc(x: &LinComb, l: &LieAlgebraSpec) -> Result<OracleValue> {
    let mut acc: Option<OracleValue> = None;
    for (d, c) in x.diagrams()? {
        let v = oracle_eval(&d, l)?;
        match acc.as_mut() {
            None => {
                let mut z = v.clone();
                z.add_scaled(&v, &(c.clone() - Q::one()))?;
                acc = Some(z);
            }
            Some(a) => a.add_scaled(&v, &c)?,
        }
    }
    Ok(acc.unwrap_or(OracleValue::Scalar(Q::zero())))
}
