//! Class sums in the centers `Z(k[G_l])` and their structure constants.

use std::fmt;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::label::{ClassLabel, LabelStyle};
use crate::vector::CenterVector;
use crate::wreath::{class_label, inverse, mul_unchecked};

/// The class `c(l)` of `G_l`, basis vector `e_{c(l)}` of `Z(k[G_l])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CenterBasisLabel {
    pub l: usize,
    pub c: ClassLabel,
}

impl CenterBasisLabel {
    pub fn render(&self, style: LabelStyle) -> String {
        format!("{}({})", self.c.render(style), self.l)
    }
}

impl fmt::Display for CenterBasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LabelStyle::Pairs))
    }
}

impl Context {
    /// Classes of `G_l`, found by labelling every element.
    pub fn center_basis(&self, l: usize) -> Result<Vec<CenterBasisLabel>> {
        Ok(self.level(l)?.labels().iter().map(|c| CenterBasisLabel { l, c: c.clone() }).collect())
    }

    /// `|c(l)|`, counted. Zero when the class misses `G_l`.
    pub fn class_size(&self, c: &ClassLabel, l: usize) -> Result<usize> {
        if c.alpha() > l {
            return Ok(0);
        }
        Ok(self.level(l)?.class_size(c))
    }

    /// `S^{c(l)}_{c1(l), c2(l)}`: for the first `h` of `c(l)`, the number of
    /// `h1` in `c1(l)` with `h1^-1 h` in `c2(l)`. Zero when any of the three
    /// classes misses `G_l`.
    pub fn s_constant(&self, c1: &ClassLabel, c2: &ClassLabel, c: &ClassLabel, l: usize) -> Result<u64> {
        for x in [c1, c2, c] {
            self.family().check_class(x)?;
        }
        if c1.alpha() > l || c2.alpha() > l || c.alpha() > l {
            return Ok(0);
        }
        let key = (c1.clone(), c2.clone(), c.clone(), l);
        if let Some(&s) = self.s_cache.lock().unwrap().get(&key) {
            return Ok(s);
        }
        let level = self.level(l)?;
        let s = match level.representative(c) {
            Some(h) => self.s_count_for(h, c1, c2)?,
            None => 0,
        };
        self.s_cache.lock().unwrap().insert(key, s);
        Ok(s)
    }

    /// The same count for an arbitrary `h` of `G_l`.
    pub fn s_count_for(&self, h: &crate::wreath::GroupElement, c1: &ClassLabel, c2: &ClassLabel) -> Result<u64> {
        let level = self.level(h.n())?;
        let f = self.group();
        let mut n = 0;
        for &i in level.members(c1) {
            let h1 = &level.elements()[i as usize];
            if class_label(&mul_unchecked(&inverse(h1, f), h, f), f) == *c2 {
                n += 1;
            }
        }
        Ok(n)
    }

    /// Product in `Z(k[G_l])`; both vectors must sit at the same `l`.
    pub fn center_product(&self, a: &CenterVector, b: &CenterVector) -> Result<CenterVector> {
        if a.level() != b.level() {
            return Err(Error::LevelMismatch { left: a.level(), right: b.level() });
        }
        let l = a.level();
        let labels = self.level(l)?.labels().to_vec();
        let mut out = CenterVector::zero(l);
        for (c1, x) in a.iter() {
            for (c2, y) in b.iter() {
                let xy = x * y;
                for c in &labels {
                    let s = self.s_constant(c1, c2, c, l)?;
                    out.add_term(c.clone(), &(&xy * &Int::from(s)));
                }
            }
        }
        Ok(out)
    }
}
