//! Elements of `G_n = F wr S_n`.
//!
//! An element is a permutation of the points `0..n` together with an
//! `F`-decoration per point. The product is the semidirect one coming from
//! the faithful action `(s; f) . (i, x) = (s(i), f_{s(i)} x)` on `points x F`:
//!
//! ```text
//! (a b).perm = a.perm o b.perm            (b applied first)
//! (a b).deco[i] = a.deco[i] * b.deco[a.perm^-1(i)]
//! ```
//!
//! Points are 0-based internally and 1-based in every rendered form.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::label::ClassLabel;

/// Largest number of points an element may carry.
pub const MAX_POINTS: usize = 64;

/// Default cap on `|F|^n * n!` for full enumerations.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A set of points stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SupportSet(pub u64);

impl SupportSet {
    pub const EMPTY: SupportSet = SupportSet(0);

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> SupportSet {
        if n >= 64 {
            SupportSet(u64::MAX)
        } else {
            SupportSet((1u64 << n) - 1)
        }
    }

    pub fn from_points(points: impl IntoIterator<Item = usize>) -> SupportSet {
        SupportSet(points.into_iter().fold(0, |m, p| m | (1 << p)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, p: usize) -> bool {
        self.0 >> p & 1 == 1
    }

    pub fn is_subset(self, other: SupportSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SupportSet) -> SupportSet {
        SupportSet(self.0 | other.0)
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        let m = self.0;
        (0..64).filter(move |&p| m >> p & 1 == 1)
    }

    /// Canonical order: size first, then the sorted point lists
    /// lexicographically.
    pub fn canonical_cmp(self, other: SupportSet) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.points().cmp(other.points()))
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points().map(|p| (p + 1).to_string()).collect();
        write!(f, "{{{}}}", pts.join(","))
    }
}

/// All subsets of `universe`, in canonical order.
pub fn subsets_canonical(universe: SupportSet) -> Vec<SupportSet> {
    let mut subs = Vec::with_capacity(1 << universe.len());
    let mut m = universe.0;
    loop {
        subs.push(SupportSet(m));
        if m == 0 {
            break;
        }
        m = (m - 1) & universe.0;
    }
    subs.sort_by(|a, b| a.canonical_cmp(*b));
    subs
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    perm: Vec<u8>,
    deco: Vec<u8>,
}

impl GroupElement {
    pub fn identity(n: usize, f: &FiniteGroup) -> GroupElement {
        GroupElement {
            perm: (0..n as u8).collect(),
            deco: vec![f.identity() as u8; n],
        }
    }

    /// Builds an element from a 0-based image array and per-point
    /// decorations, checking both.
    pub fn new(perm: Vec<usize>, deco: Vec<usize>, f: &FiniteGroup) -> Result<GroupElement> {
        let n = perm.len();
        if n > MAX_POINTS {
            return Err(Error::Parse(format!("at most {MAX_POINTS} points are supported")));
        }
        if deco.len() != n {
            return Err(Error::Parse(format!("expected {n} decorations, got {}", deco.len())));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parse(format!("{perm:?} is not a permutation")));
            }
        }
        if let Some(&d) = deco.iter().find(|&&d| d >= f.order()) {
            return Err(Error::Parse(format!("decoration {d} is not an element of F")));
        }
        Ok(GroupElement {
            perm: perm.into_iter().map(|p| p as u8).collect(),
            deco: deco.into_iter().map(|d| d as u8).collect(),
        })
    }

    /// A pure permutation with trivial decorations.
    pub fn from_perm(perm: Vec<usize>, f: &FiniteGroup) -> Result<GroupElement> {
        let n = perm.len();
        GroupElement::new(perm, vec![f.identity(); n], f)
    }

    /// The element of `G_n` whose cycles of the given label sit on
    /// consecutive points from 0, each cycle decorated only at its first
    /// point by the representative of its `F`-class.
    pub fn representative(c: &ClassLabel, n: usize, f: &FiniteGroup) -> Result<GroupElement> {
        if c.alpha() > n {
            return Err(Error::InvalidLabel(format!("{c} does not fit in {n} points")));
        }
        if c.max_fclass().is_some_and(|k| k >= f.num_classes()) {
            return Err(Error::InvalidLabel(format!("{c} names a class F does not have")));
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut deco = vec![f.identity(); n];
        let mut start = 0;
        for &(len, k) in c.parts() {
            for i in 0..len {
                perm[start + i] = start + (i + 1) % len;
            }
            deco[start] = f.class_reps()[k];
            start += len;
        }
        GroupElement::new(perm, deco, f)
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    #[inline]
    pub fn deco(&self, i: usize) -> usize {
        self.deco[i] as usize
    }

    pub fn perm(&self) -> Vec<usize> {
        self.perm.iter().map(|&p| p as usize).collect()
    }

    pub fn decorations(&self) -> Vec<usize> {
        self.deco.iter().map(|&d| d as usize).collect()
    }

    pub fn is_identity(&self, f: &FiniteGroup) -> bool {
        self.support(f).is_empty()
    }

    pub fn support(&self, f: &FiniteGroup) -> SupportSet {
        support(self, f)
    }

    /// The same element re-read at level `m >= n`, acting trivially on the
    /// new points.
    pub fn extend(&self, m: usize, f: &FiniteGroup) -> GroupElement {
        let mut e = self.clone();
        for i in self.n()..m {
            e.perm.push(i as u8);
            e.deco.push(f.identity() as u8);
        }
        e
    }

    /// Transports an element of `G_k` onto the points `targets[0..k]` of
    /// `G_n`; all other points act trivially.
    pub fn embed(&self, targets: &[usize], n: usize, f: &FiniteGroup) -> GroupElement {
        debug_assert_eq!(targets.len(), self.n());
        let mut e = GroupElement::identity(n, f);
        for (i, &t) in targets.iter().enumerate() {
            e.perm[t] = targets[self.perm[i] as usize] as u8;
            e.deco[t] = self.deco[i];
        }
        e
    }

    /// Restricts to the points of `domain` (which must contain the support),
    /// renumbering them `0..|domain|` in increasing order.
    pub fn compress(&self, domain: SupportSet) -> GroupElement {
        let pts: Vec<usize> = domain.points().collect();
        let mut pos = vec![u8::MAX; self.n()];
        for (j, &p) in pts.iter().enumerate() {
            pos[p] = j as u8;
        }
        GroupElement {
            perm: pts.iter().map(|&p| pos[self.perm[p] as usize]).collect(),
            deco: pts.iter().map(|&p| self.deco[p]).collect(),
        }
    }

    pub fn display<'a>(&'a self, f: &'a FiniteGroup) -> ElementDisplay<'a> {
        ElementDisplay { e: self, f }
    }
}

pub fn multiply(a: &GroupElement, b: &GroupElement, f: &FiniteGroup) -> Result<GroupElement> {
    if a.n() != b.n() {
        return Err(Error::LevelMismatch { left: a.n(), right: b.n() });
    }
    Ok(mul_unchecked(a, b, f))
}

pub(crate) fn mul_unchecked(a: &GroupElement, b: &GroupElement, f: &FiniteGroup) -> GroupElement {
    let n = a.n();
    let mut a_inv = vec![0u8; n];
    for (i, &p) in a.perm.iter().enumerate() {
        a_inv[p as usize] = i as u8;
    }
    GroupElement {
        perm: b.perm.iter().map(|&p| a.perm[p as usize]).collect(),
        deco: (0..n)
            .map(|i| f.mul(a.deco[i] as usize, b.deco[a_inv[i] as usize] as usize) as u8)
            .collect(),
    }
}

pub fn inverse(a: &GroupElement, f: &FiniteGroup) -> GroupElement {
    let n = a.n();
    let mut perm = vec![0u8; n];
    for (i, &p) in a.perm.iter().enumerate() {
        perm[p as usize] = i as u8;
    }
    let deco = (0..n).map(|j| f.inv(a.deco[a.perm[j] as usize] as usize) as u8).collect();
    GroupElement { perm, deco }
}

/// `g a g^-1`.
pub fn conjugate(g: &GroupElement, a: &GroupElement, f: &FiniteGroup) -> GroupElement {
    mul_unchecked(&mul_unchecked(g, a, f), &inverse(g, f), f)
}

pub fn support(a: &GroupElement, f: &FiniteGroup) -> SupportSet {
    let e = f.identity() as u8;
    let mut m = 0u64;
    for i in 0..a.n() {
        if a.perm[i] as usize != i || a.deco[i] != e {
            m |= 1 << i;
        }
    }
    SupportSet(m)
}

/// The complete conjugacy invariant of `a`.
///
/// Each cycle is entered at its minimal point `p`; the recorded product is
/// the decoration picked up on returning to `p`, i.e. the `F`-part of
/// `a^len` at `p`. Other entry points give conjugate products.
pub fn class_label(a: &GroupElement, f: &FiniteGroup) -> ClassLabel {
    let n = a.n();
    let mut seen = 0u64;
    let mut parts = Vec::new();
    for p in 0..n {
        if seen >> p & 1 == 1 {
            continue;
        }
        let mut len = 0;
        let mut x = f.identity();
        let mut j = p;
        loop {
            seen |= 1 << j;
            j = a.perm[j] as usize;
            x = f.mul(a.deco[j] as usize, x);
            len += 1;
            if j == p {
                break;
            }
        }
        parts.push((len, f.class_of(x)));
    }
    ClassLabel::new(parts).expect("cycle lengths are positive")
}

/// Membership in the even-signed subgroup of `Z/2 wr S_n` (type `D_n`).
pub fn d_type_membership(a: &GroupElement, f: &FiniteGroup) -> Result<bool> {
    if f.order() != 2 {
        return Err(Error::WrongBaseGroup);
    }
    let flips = a.deco.iter().filter(|&&d| d as usize != f.identity()).count();
    Ok(flips % 2 == 0)
}

/// `|F|^n * n!`, saturating into `u128`.
pub fn group_size(f: &FiniteGroup, n: usize) -> u128 {
    let mut s: u128 = 1;
    for k in 1..=n as u128 {
        s = s.saturating_mul(k).saturating_mul(f.order() as u128);
    }
    s
}

pub fn check_budget(needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Every element of `G_n` once: permutations lexicographically, then
/// decorations lexicographically.
pub fn enumerate_elements(f: &FiniteGroup, n: usize, budget: u64) -> Result<ElementIter<'_>> {
    if n > MAX_POINTS {
        return Err(Error::BudgetExceeded { needed: u128::MAX, budget });
    }
    check_budget(group_size(f, n), budget)?;
    Ok(ElementIter {
        f,
        perm: (0..n as u8).collect(),
        deco: vec![0; n],
        done: false,
    })
}

pub struct ElementIter<'a> {
    f: &'a FiniteGroup,
    perm: Vec<u8>,
    deco: Vec<u8>,
    done: bool,
}

fn next_permutation(p: &mut [u8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl Iterator for ElementIter<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        if self.done {
            return None;
        }
        let out = GroupElement { perm: self.perm.clone(), deco: self.deco.clone() };
        // Odometer on decorations, carrying into the permutation.
        let q = self.f.order() as u8;
        let mut i = self.deco.len();
        loop {
            if i == 0 {
                self.deco.iter_mut().for_each(|d| *d = 0);
                if !next_permutation(&mut self.perm) {
                    self.done = true;
                }
                break;
            }
            i -= 1;
            self.deco[i] += 1;
            if self.deco[i] < q {
                break;
            }
            self.deco[i] = 0;
        }
        Some(out)
    }
}

pub struct ElementDisplay<'a> {
    e: &'a GroupElement,
    f: &'a FiniteGroup,
}

impl fmt::Display for ElementDisplay<'_> {
    /// `((1 2)(3 4 5); f1,...,fn)`; the identity permutation is `()`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.e;
        let n = e.n();
        let mut cycles = String::new();
        let mut seen = vec![false; n];
        for p in 0..n {
            if seen[p] || e.image(p) == p {
                continue;
            }
            let mut c = vec![p + 1];
            seen[p] = true;
            let mut j = e.image(p);
            while j != p {
                seen[j] = true;
                c.push(j + 1);
                j = e.image(j);
            }
            let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            cycles.push_str(&format!("({})", c.join(" ")));
        }
        if cycles.is_empty() {
            cycles.push_str("()");
        }
        let names: Vec<&str> = (0..n).map(|i| self.f.name(e.deco(i))).collect();
        write!(out, "({}; {})", cycles, names.join(","))
    }
}

/// Parses the display syntax back into an element. The level is the number
/// of decorations; for a trivial `F` the decoration part may be omitted, in
/// which case the level is the largest point mentioned.
pub fn parse_element(text: &str, f: &FiniteGroup) -> Result<GroupElement> {
    let bad = |why: &str| Error::Parse(format!("element `{text}`: {why}"));
    let t = text.trim();
    let (cyc, decos) = match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) if inner.contains(';') => {
            let (c, d) = inner.split_once(';').unwrap();
            (c.trim(), Some(d))
        }
        _ => (t, None),
    };
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = cyc;
    while !rest.is_empty() {
        let r = rest.strip_prefix('(').ok_or_else(|| bad("expected ("))?;
        let close = r.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let pts = r[..close]
            .split([' ', ','])
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().ok().filter(|&p| p >= 1).map(|p| p - 1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("points are positive integers"))?;
        cycles.push(pts);
        rest = r[close + 1..].trim_start();
    }
    let deco: Vec<usize> = match decos {
        Some(d) => d
            .split(',')
            .map(|s| f.element_by_name(s.trim()).ok_or_else(|| bad(&format!("unknown F element `{}`", s.trim()))))
            .collect::<Result<_>>()?,
        None if f.is_trivial() => {
            let n = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(0);
            vec![f.identity(); n]
        }
        None => return Err(bad("decorations are required when F is nontrivial")),
    };
    let n = deco.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut touched = vec![false; n];
    for c in &cycles {
        for (i, &p) in c.iter().enumerate() {
            if p >= n || std::mem::replace(&mut touched[p], true) {
                return Err(bad("cycles must be disjoint and within the level"));
            }
            perm[p] = c[(i + 1) % c.len()];
        }
    }
    GroupElement::new(perm, deco, f)
}
