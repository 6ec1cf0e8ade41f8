//! Relations (4T, 1T, STU, IHX) and exact quotient computations.

pub mod dims;
mod fourterm;
mod ihx;
pub mod linalg;
mod stu;

pub use dims::{dims_table, generating_check, DimsRow};
pub use fourterm::{chord_quotient, four_term_codes, four_term_relations, one_term_codes, one_term_relations};
pub use ihx::{fixed_quotient, ihx_relations, ihx_terms, open_ambient, open_quotient, quotient_of};
pub use linalg::{rank_of, Echelon, Quotient};
pub use stu::{stu_chords, stu_order_independence_check, stu_reduce, StuState};

use crate::diagrams::{ChordCode, Key, LinComb};
use crate::{Result, Q};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tag {
    FourT,
    OneT,
    Ihx,
    StuOrder,
}

/// Relations as sparse rows over an ordered ambient basis.
#[derive(Clone, Debug)]
pub struct RelationSet {
    pub degree: usize,
    pub ambient_basis: Vec<Key>,
    pub relations: Vec<(Vec<(usize, Q)>, Tag)>,
}

impl RelationSet {
    pub fn relation(&self, i: usize) -> LinComb {
        self.relations[i].0.iter().map(|(j, c)| (self.ambient_basis[*j].clone(), c.clone())).collect()
    }

    pub fn merge(mut self, other: RelationSet) -> RelationSet {
        assert_eq!(self.ambient_basis, other.ambient_basis);
        self.relations.extend(other.relations);
        self
    }
}

pub type QuotientBasis = Quotient<Key>;

pub fn rank_and_basis(rs: &RelationSet) -> QuotientBasis {
    let mut e = Echelon::new(rs.ambient_basis.len());
    for (r, _) in &rs.relations {
        e.add(linalg::integer_row(r));
    }
    Quotient::new(rs.degree, rs.ambient_basis.clone(), e)
}

type ChordCache = HashMap<(usize, bool), Arc<Quotient<ChordCode>>>;

fn cache_dir() -> &'static Mutex<Option<PathBuf>> {
    static D: OnceLock<Mutex<Option<PathBuf>>> = OnceLock::new();
    D.get_or_init(|| Mutex::new(None))
}

/// Directory for quotients shared between processes; None keeps them in memory only.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir().lock().unwrap() = dir;
}

/// Chord quotients, computed once per process and stored in the cache
/// directory when one is set.
pub fn quotient_cached_chords(n: usize, unframed: bool) -> Result<Arc<Quotient<ChordCode>>> {
    static CACHE: OnceLock<Mutex<ChordCache>> = OnceLock::new();
    let c = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(q) = c.lock().unwrap().get(&(n, unframed)) {
        return Ok(q.clone());
    }
    let dir = cache_dir().lock().unwrap().clone();
    let space = if unframed { "A" } else { "C" };
    let q = Arc::new(dims::cached(dir.as_deref(), space, &format!("n{n}"), || chord_quotient(n, unframed))?);
    c.lock().unwrap().insert((n, unframed), q.clone());
    Ok(q)
}
