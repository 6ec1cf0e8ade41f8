use super::linalg::Quotient;
use super::{chord_quotient, open_ambient, quotient_of, ihx_relations};
use crate::diagrams::{ChordCode, Key};
use crate::{Error, Result};
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub const CODE_VERSION: &str = concat!("jacobi-", env!("CARGO_PKG_VERSION"), "-q1");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsRow {
    pub n: usize,
    pub dim_a: usize,
    pub dim_p: usize,
}

fn cache_path(dir: &Path, space: &str, params: &str) -> PathBuf {
    let mut h = Sha256::new();
    h.update(CODE_VERSION.as_bytes());
    h.update(b"/");
    h.update(space.as_bytes());
    h.update(b"/");
    h.update(params.as_bytes());
    dir.join(format!("{space}-{params}-{}.json", &hex::encode(h.finalize())[..16]))
}

pub(super) fn cached<K, F>(dir: Option<&Path>, space: &str, params: &str, f: F) -> Result<Quotient<K>>
where
    K: Clone + Eq + std::hash::Hash + Serialize + DeserializeOwned,
    F: FnOnce() -> Result<Quotient<K>>,
{
    let Some(dir) = dir else { return f() };
    let p = cache_path(dir, space, params);
    if let Ok(s) = std::fs::read_to_string(&p) {
        if let Ok(mut q) = serde_json::from_str::<Quotient<K>>(&s) {
            q.rebuild();
            return Ok(q);
        }
    }
    let q = f()?;
    std::fs::create_dir_all(dir)?;
    let tmp = p.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_string(&q)?)?;
    std::fs::rename(tmp, p)?;
    Ok(q)
}

/// Chord diagrams mod 4T and 1T.
pub fn a_quotient(n: usize, cache: Option<&Path>) -> Result<Quotient<ChordCode>> {
    if cache.is_none() {
        return Ok((*super::quotient_cached_chords(n, true)?).clone());
    }
    cached(cache, "A", &format!("n{n}"), || chord_quotient(n, true))
}

/// Connected open diagrams mod AS and IHX, one block per leg count.
pub fn p_quotients(n: usize, cache: Option<&Path>) -> Result<Vec<(usize, Quotient<Key>)>> {
    let mut out = vec![];
    let mut amb = None;
    for l in 1..=n + 1 {
        let q = cached(cache, "P", &format!("n{n}-l{l}"), || {
            if amb.is_none() {
                amb = Some(open_ambient(n, n + 1)?);
            }
            let keys = amb.as_ref().unwrap().get(&l).cloned().unwrap_or_default();
            quotient_of(ihx_relations(&keys, n)?)
        })?;
        out.push((l, q));
    }
    Ok(out)
}

pub fn dim_a(n: usize, cache: Option<&Path>) -> Result<usize> {
    if n == 0 {
        return Ok(1);
    }
    Ok(a_quotient(n, cache)?.dim())
}

/// The strut spans degree one and dies by 1T.
pub fn dim_p(n: usize, cache: Option<&Path>) -> Result<usize> {
    if n <= 1 {
        return Ok(0);
    }
    Ok(p_quotients(n, cache)?.iter().map(|(_, q)| q.dim()).sum())
}

/// Coefficients of prod_k (1 - q^k)^(-p_k) up to q^n_max; p[k-1] = p_k.
pub fn generating_series(p: &[usize], n_max: usize) -> Vec<u128> {
    let mut s = vec![0u128; n_max + 1];
    s[0] = 1;
    for (i, &m) in p.iter().enumerate() {
        let k = i + 1;
        for _ in 0..m {
            // multiply by 1/(1 - q^k)
            for j in k..=n_max {
                s[j] += s[j - k];
            }
        }
    }
    s
}

pub fn generating_check(a: &[usize], p: &[usize]) -> Result<()> {
    let n = a.len().min(p.len());
    let s = generating_series(&p[..n], n);
    for i in 1..=n {
        if s[i] != a[i - 1] as u128 {
            return Err(Error::Consistency(format!(
                "generating identity fails at degree {i}: primitives give {}, dim A = {}",
                s[i],
                a[i - 1]
            )));
        }
    }
    Ok(())
}

pub fn dims_table(n_max: usize, cache: Option<&Path>) -> Result<Vec<DimsRow>> {
    if n_max > 7 {
        return Err(Error::Capacity(format!("dims_table supports n_max <= 7, got {n_max}")));
    }
    let mut rows = vec![];
    for n in 1..=n_max {
        rows.push(DimsRow { n, dim_a: dim_a(n, cache)?, dim_p: dim_p(n, cache)? });
    }
    let a: Vec<usize> = rows.iter().map(|r| r.dim_a).collect();
    let p: Vec<usize> = rows.iter().map(|r| r.dim_p).collect();
    generating_check(&a, &p)?;
    Ok(rows)
}
