//! Families `lambda -> G_lambda` over finite subsets of `{1..N}`.
//!
//! Every family here is a subgroup of `F wr S_N` and `G_lambda` is the set of
//! its members whose support lies in `lambda`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{builtin_group, Builtin, FiniteGroup};
use crate::label::{ClassLabel, LabelStyle, OmegaLabel};
use crate::wreath::{self, GroupElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `S_N`, the wreath product over the trivial group.
    Symmetric,
    /// `F wr S_N`; `source` names where `F` came from.
    Wreath { source: String },
    /// Even-signed elements of `Z/2 wr S_N`. Not admissible.
    DType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    kind: FamilyKind,
    group: FiniteGroup,
}

impl Family {
    pub fn symmetric() -> Family {
        Family { kind: FamilyKind::Symmetric, group: builtin_group(Builtin::Trivial).unwrap() }
    }

    pub fn wreath(group: FiniteGroup, source: impl Into<String>) -> Family {
        Family { kind: FamilyKind::Wreath { source: source.into() }, group }
    }

    pub fn wreath_builtin(b: Builtin) -> Result<Family> {
        Ok(Family::wreath(builtin_group(b)?, b.to_string()))
    }

    pub fn d_type() -> Family {
        Family { kind: FamilyKind::DType, group: builtin_group(Builtin::Cyclic(2)).unwrap() }
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn is_admissible_kind(&self) -> bool {
        self.kind != FamilyKind::DType
    }

    /// Fails for families the algebra is not defined on.
    pub fn require_admissible(&self) -> Result<()> {
        if self.is_admissible_kind() {
            Ok(())
        } else {
            Err(Error::NotAdmissible(self.to_string()))
        }
    }

    pub fn contains(&self, h: &GroupElement) -> bool {
        match self.kind {
            FamilyKind::DType => wreath::d_type_membership(h, &self.group).unwrap_or(false),
            _ => true,
        }
    }

    pub fn label_style(&self) -> LabelStyle {
        if self.group.is_trivial() {
            LabelStyle::Partition
        } else {
            LabelStyle::Pairs
        }
    }

    /// All members of `G_n` in canonical order.
    pub fn elements(&self, n: usize, budget: u64) -> Result<Vec<GroupElement>> {
        Ok(wreath::enumerate_elements(&self.group, n, budget)?
            .filter(|h| self.contains(h))
            .collect())
    }

    /// Parses a class label and checks its class indices against `F`.
    pub fn parse_class(&self, text: &str) -> Result<ClassLabel> {
        let c: ClassLabel = text.parse()?;
        self.check_class(&c)?;
        Ok(c)
    }

    pub fn parse_omega(&self, text: &str) -> Result<OmegaLabel> {
        let w: OmegaLabel = text.parse()?;
        self.check_class(&w.c)?;
        Ok(w)
    }

    pub fn check_class(&self, c: &ClassLabel) -> Result<()> {
        match c.max_fclass() {
            Some(k) if k >= self.group.num_classes() => Err(Error::InvalidLabel(format!(
                "{c}: F has only {} classes",
                self.group.num_classes()
            ))),
            _ => Ok(()),
        }
    }

    pub fn render_class(&self, c: &ClassLabel) -> String {
        c.render(self.label_style())
    }

    pub fn render_omega(&self, w: &OmegaLabel) -> String {
        w.render(self.label_style())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FamilyKind::Symmetric => write!(f, "sym"),
            FamilyKind::Wreath { source } => write!(f, "wreath:{source}"),
            FamilyKind::DType => write!(f, "dtype"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `sym`, `wreath:<builtin>` (e.g. `wreath:cyclic2`), `bn` for
    /// `wreath:cyclic2`, or `dtype`.
    fn from_str(s: &str) -> Result<Family> {
        let t = s.trim().to_lowercase();
        match t.as_str() {
            "sym" | "symmetric" | "s" => return Ok(Family::symmetric()),
            "dtype" | "d" | "d-type" => return Ok(Family::d_type()),
            "bn" | "b" | "hyperoctahedral" => return Family::wreath_builtin(Builtin::Cyclic(2)),
            _ => {}
        }
        match t.strip_prefix("wreath:") {
            Some(g) => Family::wreath_builtin(g.parse()?),
            None => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_families() {
        assert_eq!("sym".parse::<Family>().unwrap(), Family::symmetric());
        let b: Family = "wreath:cyclic2".parse().unwrap();
        assert_eq!(b.group().order(), 2);
        assert_eq!(b.to_string(), "wreath:cyclic2");
        assert_eq!("dtype".parse::<Family>().unwrap(), Family::d_type());
        assert!(matches!("wreath:foo".parse::<Family>(), Err(Error::UnknownBuiltin(_))));
        assert!(matches!("affine".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn d_type_is_index_two() {
        let d = Family::d_type();
        assert_eq!(d.elements(3, 1000).unwrap().len(), 24);
        assert_eq!(d.elements(2, 1000).unwrap().len(), 4);
        assert!(d.require_admissible().is_err());
    }

    #[test]
    fn class_checks() {
        let s = Family::symmetric();
        assert!(s.parse_class("[(2,1)]").is_err());
        assert_eq!(s.render_class(&s.parse_class("[2,2]").unwrap()), "[2,2]");
        let b: Family = "wreath:cyclic2".parse().unwrap();
        assert_eq!(b.render_omega(&b.parse_omega("2:[(2,1)]").unwrap()), "2:[(2,1)]");
    }
}
