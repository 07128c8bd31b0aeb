//! Shared computation state: the family, the enumeration budget and caches
//! of per-level element tables and structure constants.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::group::FiniteGroup;
use crate::label::{ClassLabel, OmegaLabel};
use crate::wreath::{class_label, group_size, support, check_budget, GroupElement, SupportSet, DEFAULT_BUDGET};

/// All elements of `G_l` with their labels and supports.
#[derive(Debug)]
pub struct Level {
    n: usize,
    elements: Vec<GroupElement>,
    supports: Vec<SupportSet>,
    label_of: Vec<u32>,
    labels: Vec<ClassLabel>,
    members: Vec<Vec<u32>>,
}

impl Level {
    fn build(family: &Family, n: usize, budget: u64) -> Result<Level> {
        let f = family.group();
        let elements = family.elements(n, budget)?;
        let raw: Vec<ClassLabel> = elements.iter().map(|h| class_label(h, f)).collect();
        let mut labels = raw.clone();
        labels.sort();
        labels.dedup();
        let mut members = vec![Vec::new(); labels.len()];
        let label_of = raw
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let k = labels.binary_search(c).expect("label present");
                members[k].push(i as u32);
                k as u32
            })
            .collect();
        let supports = elements.iter().map(|h| support(h, f)).collect();
        Ok(Level { n, elements, supports, label_of, labels, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn support_of(&self, i: usize) -> SupportSet {
        self.supports[i]
    }

    pub fn label_of(&self, i: usize) -> &ClassLabel {
        &self.labels[self.label_of[i] as usize]
    }

    /// Classes present in `G_l`, canonical order.
    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    pub fn members(&self, c: &ClassLabel) -> &[u32] {
        match self.labels.binary_search(c) {
            Ok(k) => &self.members[k],
            Err(_) => &[],
        }
    }

    pub fn class_size(&self, c: &ClassLabel) -> usize {
        self.members(c).len()
    }

    /// The first element of the class in canonical element order.
    pub fn representative(&self, c: &ClassLabel) -> Option<&GroupElement> {
        self.members(c).first().map(|&i| &self.elements[i as usize])
    }
}

type PKey = (OmegaLabel, OmegaLabel, OmegaLabel);
type SKey = (ClassLabel, ClassLabel, ClassLabel, usize);

pub struct Context {
    family: Family,
    budget: u64,
    levels: Mutex<HashMap<usize, Arc<Level>>>,
    pub(crate) p_cache: Mutex<HashMap<PKey, u64>>,
    pub(crate) s_cache: Mutex<HashMap<SKey, u64>>,
}

impl Context {
    /// A context for an admissible family. The d-type family is rejected:
    /// labels do not classify its conjugacy classes, so none of the algebra
    /// is defined for it.
    pub fn new(family: Family, budget: u64) -> Result<Context> {
        family.require_admissible()?;
        Ok(Context {
            family,
            budget,
            levels: Mutex::new(HashMap::new()),
            p_cache: Mutex::new(HashMap::new()),
            s_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_default_budget(family: Family) -> Result<Context> {
        Context::new(family, DEFAULT_BUDGET)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn group(&self) -> &FiniteGroup {
        self.family.group()
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn check_level(&self, n: usize) -> Result<()> {
        check_budget(group_size(self.group(), n), self.budget)
    }

    pub fn level(&self, n: usize) -> Result<Arc<Level>> {
        self.check_level(n)?;
        let mut levels = self.levels.lock().expect("level cache poisoned");
        if let Some(l) = levels.get(&n) {
            return Ok(l.clone());
        }
        let l = Arc::new(Level::build(&self.family, n, self.budget)?);
        levels.insert(n, l.clone());
        Ok(l)
    }

    pub(crate) fn check_omega(&self, w: &OmegaLabel) -> Result<()> {
        self.family.check_class(&w.c)?;
        if w.c.alpha() > w.l {
            return Err(Error::InvalidLabel(format!("{w}: support exceeds domain")));
        }
        Ok(())
    }
}
