//! Conjugacy-class labels for `F wr S_n` and for partial elements.
//!
//! A [`ClassLabel`] is the multiset of `(cycle length, F-class of the cycle
//! product)` pairs of an element, with the trivial pairs `(1, identity)`
//! dropped. An [`OmegaLabel`] adds the size `l` of the partial element's
//! domain.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One cycle of an element: its length and the class index of its cycle
/// product in the base group.
pub type CyclePart = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ClassLabel {
    parts: Vec<CyclePart>,
    alpha: usize,
}

/// How labels are written: the bare partition `[3,2]` is only unambiguous
/// when the base group is trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelStyle {
    Partition,
    Pairs,
}

impl ClassLabel {
    /// Builds a label from arbitrary cycle parts, dropping `(1, 0)` and
    /// sorting canonically (length descending, class ascending).
    pub fn new(parts: impl IntoIterator<Item = CyclePart>) -> Result<ClassLabel> {
        let mut parts: Vec<CyclePart> = parts.into_iter().filter(|&p| p != (1, 0)).collect();
        if parts.iter().any(|&(len, _)| len == 0) {
            return Err(Error::InvalidLabel("cycle length must be positive".into()));
        }
        parts.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let alpha = parts.iter().map(|p| p.0).sum();
        Ok(ClassLabel { parts, alpha })
    }

    /// Label with all cycle products in the identity class, i.e. a cycle
    /// type of `S_n`.
    pub fn partition(lengths: &[usize]) -> ClassLabel {
        ClassLabel::new(lengths.iter().map(|&l| (l, 0))).expect("positive cycle lengths")
    }

    pub fn identity() -> ClassLabel {
        ClassLabel::default()
    }

    pub fn parts(&self) -> &[CyclePart] {
        &self.parts
    }

    /// Size of the support of any element carrying this label.
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn is_identity(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn max_fclass(&self) -> Option<usize> {
        self.parts.iter().map(|p| p.1).max()
    }

    pub fn render(&self, style: LabelStyle) -> String {
        let short = style == LabelStyle::Partition && self.parts.iter().all(|p| p.1 == 0);
        let body: Vec<String> = if short {
            self.parts.iter().map(|p| p.0.to_string()).collect()
        } else {
            self.parts.iter().map(|(l, k)| format!("({l},{k})")).collect()
        };
        format!("[{}]", body.join(","))
    }
}

impl Ord for ClassLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alpha.cmp(&other.alpha).then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for ClassLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LabelStyle::Pairs))
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    /// Parses `[3,2]`, `[(2,1),(1,1)]` or a mix; whitespace is ignored.
    fn from_str(s: &str) -> Result<ClassLabel> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Parse(format!("class label `{s}`: {why}"));
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("expected [...]"))?;
        let mut parts = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix('(') {
                let close = r.find(')').ok_or_else(|| bad("unclosed pair"))?;
                let (len, k) = r[..close].split_once(',').ok_or_else(|| bad("pair needs two entries"))?;
                let len = len.parse().map_err(|_| bad("bad cycle length"))?;
                let k = k.parse().map_err(|_| bad("bad class index"))?;
                parts.push((len, k));
                rest = &r[close + 1..];
            } else {
                let end = rest.find(',').unwrap_or(rest.len());
                let len = rest[..end].parse().map_err(|_| bad("bad part"))?;
                parts.push((len, 0));
                rest = &rest[end..];
            }
            if let Some(r) = rest.strip_prefix(',') {
                if r.is_empty() {
                    return Err(bad("trailing comma"));
                }
                rest = r;
            } else if !rest.is_empty() {
                return Err(bad("expected ,"));
            }
        }
        ClassLabel::new(parts)
    }
}

/// A conjugacy class of partial elements: domain size `l` and the class of
/// the group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaLabel {
    pub l: usize,
    pub c: ClassLabel,
}

impl OmegaLabel {
    pub fn new(l: usize, c: ClassLabel) -> Result<OmegaLabel> {
        if c.alpha() > l {
            return Err(Error::InvalidLabel(format!(
                "{l}:{c} has support {} larger than its domain",
                c.alpha()
            )));
        }
        Ok(OmegaLabel { l, c })
    }

    pub fn unit() -> OmegaLabel {
        OmegaLabel { l: 0, c: ClassLabel::identity() }
    }

    pub fn render(&self, style: LabelStyle) -> String {
        format!("{}:{}", self.l, self.c.render(style))
    }
}

impl fmt::Display for OmegaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LabelStyle::Pairs))
    }
}

impl FromStr for OmegaLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<OmegaLabel> {
        let (l, c) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("omega label `{s}`: expected l:[...]")))?;
        let l = l
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("omega label `{s}`: bad level")))?;
        OmegaLabel::new(l, c.parse()?)
    }
}

/// All labels with `alpha <= max_alpha` whose class indices are below
/// `num_fclasses`, in canonical order.
///
/// This generates candidates combinatorially; it does not consult any group.
/// Callers that need the classes actually present in `G_l` should enumerate
/// the group instead.
pub fn labels_up_to(max_alpha: usize, num_fclasses: usize) -> Vec<ClassLabel> {
    // Part kinds in canonical order: length descending, class ascending.
    let mut kinds = Vec::new();
    for len in (1..=max_alpha).rev() {
        for k in 0..num_fclasses {
            if (len, k) != (1, 0) {
                kinds.push((len, k));
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(kinds: &[CyclePart], start: usize, room: usize, cur: &mut Vec<CyclePart>, out: &mut Vec<ClassLabel>) {
        out.push(ClassLabel::new(cur.iter().copied()).unwrap());
        for i in start..kinds.len() {
            if kinds[i].0 <= room {
                cur.push(kinds[i]);
                go(kinds, i, room - kinds[i].0, cur, out);
                cur.pop();
            }
        }
    }
    go(&kinds, 0, max_alpha, &mut cur, &mut out);
    out.sort();
    out
}
