use super::{canonicalize, Diagram, Key};
use crate::{Q, Result};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Formal sum of canonical diagrams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<Key, Q>,
}

impl LinComb {
    pub fn zero() -> LinComb {
        LinComb::default()
    }

    pub fn from_diagram(d: &Diagram) -> Result<LinComb> {
        let mut l = LinComb::zero();
        l.add_diagram(d, &crate::qi(1))?;
        Ok(l)
    }

    pub fn add_key(&mut self, k: Key, c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn add_diagram(&mut self, d: &Diagram, c: &Q) -> Result<()> {
        let cf = canonicalize(d)?;
        match cf.sign {
            0 => {}
            1 => self.add_key(cf.key, c),
            _ => self.add_key(cf.key, &-c),
        }
        Ok(())
    }

    pub fn add(&mut self, o: &LinComb) {
        for (k, c) in &o.terms {
            self.add_key(k.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, o: &LinComb, s: &Q) {
        for (k, c) in &o.terms {
            self.add_key(k.clone(), &(c * s));
        }
    }

    pub fn sub(&mut self, o: &LinComb) {
        self.add_scaled(o, &crate::qi(-1));
    }

    pub fn scale(&mut self, s: &Q) {
        if s.is_zero() {
            self.terms.clear();
            return;
        }
        for c in self.terms.values_mut() {
            *c *= s;
        }
    }

    pub fn scaled(&self, s: &Q) -> LinComb {
        let mut l = self.clone();
        l.scale(s);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &Key) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn diagrams(&self) -> Result<Vec<(Diagram, Q)>> {
        self.terms.iter().map(|(k, c)| Ok((k.diagram()?, c.clone()))).collect()
    }

    /// Maximal degree over terms (0 for the zero combination).
    pub fn degree(&self) -> Result<usize> {
        let mut m = 0;
        for (k, _) in &self.terms {
            m = m.max(k.diagram()?.degree());
        }
        Ok(m)
    }
}

impl FromIterator<(Key, Q)> for LinComb {
    fn from_iter<I: IntoIterator<Item = (Key, Q)>>(it: I) -> Self {
        let mut l = LinComb::zero();
        for (k, c) in it {
            l.add_key(k, &c);
        }
        l
    }
}
