//! Loop-counting state sums on chord diagrams.
//!
//! Point i of the Wilson loop carries a generator with matrix indices
//! (u_i, u_{i+1}). A chord contracts two of them through the Casimir of
//! the defining representation:
//!   gl: d(u_i, u_{k+1}) d(u_{i+1}, u_k)
//!   sl: gl minus (1/N) d(u_i, u_{i+1}) d(u_k, u_{k+1})
//!   so: s * (gl minus d(u_i, u_k) d(u_{i+1}, u_{k+1}))
//! and the value is N^{#index classes} / N.

use super::LaurentPolyN;
use crate::diagrams::{ChordCode, Diagram, Kind, LinComb};
use crate::relations::stu_chords;
use crate::{Error, Result, Q};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Gl,
    Sl,
    So,
}

/// Union-find with rollback (no path compression).
pub(super) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    hist: Vec<usize>,
    pub(super) classes: usize,
}

impl Dsu {
    pub(super) fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect(), size: vec![1; n], hist: vec![], classes: n }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub(super) fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            self.hist.push(usize::MAX);
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.classes -= 1;
        self.hist.push(b);
    }

    pub(super) fn undo(&mut self) {
        let b = self.hist.pop().unwrap();
        if b != usize::MAX {
            let a = self.parent[b];
            self.size[a] -= self.size[b];
            self.parent[b] = b;
            self.classes += 1;
        }
    }
}

/// Integer coefficients of the unscaled state sum; index e + 2n holds N^e.
fn chord_sum(f: Family, code: ChordCode) -> Vec<i64> {
    let n = code.n as usize;
    let mut out = vec![0i64; 4 * n + 2];
    if n == 0 {
        out[0] = 1;
        return out;
    }
    let len = 2 * n;
    let chords = code.chords();
    let mut dsu = Dsu::new(len);
    fn rec(f: Family, j: usize, ch: &[(usize, usize)], len: usize, dsu: &mut Dsu, sign: i64, shift: i64, out: &mut [i64]) {
        if j == ch.len() {
            let e = dsu.classes as i64 - 1 + shift;
            out[(e + 2 * ch.len() as i64) as usize] += sign;
            return;
        }
        let (i, k) = ch[j];
        let (i1, k1) = ((i + 1) % len, (k + 1) % len);
        dsu.union(i, k1);
        dsu.union(i1, k);
        rec(f, j + 1, ch, len, dsu, sign, shift, out);
        dsu.undo();
        dsu.undo();
        match f {
            Family::Gl => {}
            Family::Sl => {
                dsu.union(i, i1);
                dsu.union(k, k1);
                rec(f, j + 1, ch, len, dsu, -sign, shift - 1, out);
                dsu.undo();
                dsu.undo();
            }
            Family::So => {
                dsu.union(i, k);
                dsu.union(i1, k1);
                rec(f, j + 1, ch, len, dsu, -sign, shift, out);
                dsu.undo();
                dsu.undo();
            }
        }
    }
    rec(f, 0, &chords, len, &mut dsu, 1, 0, &mut out);
    out
}

type Memo = HashMap<(Family, ChordCode), std::sync::Arc<Vec<i64>>>;

fn memo() -> &'static Mutex<Memo> {
    static M: OnceLock<Mutex<Memo>> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

static THREADS: std::sync::atomic::AtomicUsize = std::sync::atomic::AtomicUsize::new(1);

/// Worker threads used for state sums over many chord diagrams.
pub fn set_threads(n: usize) {
    THREADS.store(n.max(1), std::sync::atomic::Ordering::Relaxed);
}

fn cached_sum(f: Family, code: ChordCode) -> std::sync::Arc<Vec<i64>> {
    if let Some(v) = memo().lock().unwrap().get(&(f, code)) {
        return v.clone();
    }
    let v = std::sync::Arc::new(chord_sum(f, code));
    memo().lock().unwrap().insert((f, code), v.clone());
    v
}

/// The so propagator scale: fixed so that t-hat acts by N - 2.
pub fn so_scale() -> Result<Q> {
    static S: OnceLock<Q> = OnceLock::new();
    if let Some(s) = S.get() {
        return Ok(s.clone());
    }
    let (tri, that) = calibration_pair()?;
    let a = eval_codes(Family::So, &stu_chords(&LinComb::from_diagram(&that)?)?, &Q::from_integer(1.into()));
    let b = eval_codes(Family::So, &stu_chords(&LinComb::from_diagram(&tri)?)?, &Q::from_integer(1.into()));
    let target = &LaurentPolyN::n() - &LaurentPolyN::int(2);
    // the ratio is linear in the scale
    let ratio = a.div_exact(&b)?;
    let s = target.div_exact(&ratio)?.as_constant().ok_or_else(|| {
        Error::Consistency("so propagator scale is not a constant".into())
    })?;
    Ok(S.get_or_init(|| s).clone())
}

/// Closed tripod and closed t-hat (triangle with three spokes), drawn with
/// the same loop points.
pub fn calibration_pair() -> Result<(Diagram, Diagram)> {
    use crate::diagrams::Drawing;
    let angles = [90.0, 210.0, 330.0];
    let mut d = Drawing::closed();
    let c = d.node((0.0, 0.0));
    for a in angles {
        let p = d.loop_point(a);
        d.edge(c, p);
    }
    let tri = d.build()?;
    let mut d = Drawing::closed();
    let ring = d.ring((0.0, 0.0), 0.4, &angles);
    for (i, a) in angles.iter().enumerate() {
        let p = d.loop_point(*a);
        d.edge(ring[i], p);
    }
    Ok((tri, d.build()?))
}

fn eval_codes(f: Family, codes: &HashMap<ChordCode, Q>, scale: &Q) -> LaurentPolyN {
    let items: Vec<(&ChordCode, &Q)> = codes.iter().collect();
    let threads = THREADS.load(std::sync::atomic::Ordering::Relaxed).min(items.len().max(1));
    let work = |chunk: &[(&ChordCode, &Q)]| {
        let mut acc: HashMap<i32, Q> = HashMap::new();
        for (code, c) in chunk {
            let n = code.n as i32;
            let v = cached_sum(f, **code);
            let s = if *scale == Q::from_integer(1.into()) {
                (*c).clone()
            } else {
                *c * num_traits::pow(scale.clone(), n as usize)
            };
            for (i, m) in v.iter().enumerate() {
                if *m != 0 {
                    *acc.entry(i as i32 - 2 * n).or_insert_with(|| Q::from_integer(0.into())) +=
                        &s * Q::from_integer((*m).into());
                }
            }
        }
        acc
    };
    let parts: Vec<HashMap<i32, Q>> = if threads <= 1 {
        vec![work(&items)]
    } else {
        let sz = items.len().div_ceil(threads);
        std::thread::scope(|sc| {
            let hs: Vec<_> = items.chunks(sz).map(|ch| sc.spawn(move || work(ch))).collect();
            hs.into_iter().map(|h| h.join().unwrap()).collect()
        })
    };
    let mut p = LaurentPolyN::zero();
    for part in parts {
        for (e, c) in part {
            p.add_term(e, c);
        }
    }
    p
}

fn closed_codes(x: &LinComb) -> Result<HashMap<ChordCode, Q>> {
    for (k, _) in x.iter() {
        if !k.kind().has_loop() {
            return Err(Error::Kind("weight systems need closed diagrams".into()));
        }
    }
    stu_chords(x)
}

pub fn wsys_gl(x: &LinComb) -> Result<LaurentPolyN> {
    for (k, _) in x.iter() {
        if k.kind() != Kind::Chord {
            return Err(Error::Kind("gl weight system takes chord diagrams".into()));
        }
    }
    Ok(eval_codes(Family::Gl, &stu_chords(x)?, &Q::from_integer(1.into())))
}

/// sl weight system: chord diagrams through the chord state sum, Jacobi
/// diagrams through ribbon states.
pub fn wsys_sl(x: &LinComb) -> Result<LaurentPolyN> {
    let mut chords = LinComb::zero();
    let mut jac = vec![];
    for (k, c) in x.iter() {
        match k.kind() {
            Kind::Chord => chords.add_key(k.clone(), c),
            kd if kd.has_loop() => jac.push((k.diagram()?, c.clone())),
            _ => return Err(Error::Kind("weight systems need closed diagrams".into())),
        }
    }
    let mut total = eval_codes(Family::Sl, &stu_chords(&chords)?, &Q::from_integer(1.into()));
    let threads = THREADS.load(std::sync::atomic::Ordering::Relaxed).min(jac.len().max(1));
    let work = |chunk: &[(Diagram, Q)]| -> Result<LaurentPolyN> {
        let mut p = LaurentPolyN::zero();
        for (d, c) in chunk {
            for (e, m) in super::ribbon::ribbon_sum(Family::Sl, d)? {
                p.add_term(e, c * Q::from_integer(m.into()));
            }
        }
        Ok(p)
    };
    let parts: Vec<Result<LaurentPolyN>> = if threads <= 1 {
        vec![work(&jac)]
    } else {
        let sz = jac.len().div_ceil(threads);
        std::thread::scope(|sc| {
            let hs: Vec<_> = jac.chunks(sz).map(|ch| sc.spawn(move || work(ch))).collect();
            hs.into_iter().map(|h| h.join().unwrap()).collect()
        })
    };
    for p in parts {
        total = &total + &p?;
    }
    Ok(total)
}

/// sl weight system through STU reduction only; a cross-check for the
/// ribbon path.
pub fn wsys_sl_stu(x: &LinComb) -> Result<LaurentPolyN> {
    Ok(eval_codes(Family::Sl, &closed_codes(x)?, &Q::from_integer(1.into())))
}

pub fn wsys_so(x: &LinComb) -> Result<LaurentPolyN> {
    let s = so_scale()?;
    Ok(eval_codes(Family::So, &closed_codes(x)?, &s))
}

/// State sum of one chord diagram.
pub fn chord_weight(f: Family, code: ChordCode) -> Result<LaurentPolyN> {
    let s = if f == Family::So { so_scale()? } else { Q::from_integer(1.into()) };
    let mut m = HashMap::new();
    m.insert(code, Q::from_integer(1.into()));
    Ok(eval_codes(f, &m, &s))
}

pub fn wsys(f: Family, x: &LinComb) -> Result<LaurentPolyN> {
    match f {
        Family::Gl => wsys_gl(x),
        Family::Sl => wsys_sl(x),
        Family::So => wsys_so(x),
    }
}
