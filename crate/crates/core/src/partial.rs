//! Partial elements `(lambda, h)`, their classes `omega = (l, c)` and the
//! truncated algebra `A_{<=N}` spanned by the class sums `e_omega`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::context::{Context, Level};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::group::FiniteGroup;
use crate::int::Int;
use crate::label::OmegaLabel;
use crate::vector::IkVector;
use crate::wreath::{
    self, check_budget, class_label, conjugate, inverse, mul_unchecked, subsets_canonical, support, GroupElement,
    SupportSet,
};

/// A pair `(domain, h)` with `support(h)` inside `domain`. `h` lives at the
/// ambient level `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialElement {
    domain: SupportSet,
    h: GroupElement,
}

impl PartialElement {
    pub fn new(domain: SupportSet, h: GroupElement, f: &FiniteGroup) -> Result<PartialElement> {
        if !domain.is_subset(SupportSet::full(h.n())) {
            return Err(Error::InvalidLabel(format!("domain {domain} exceeds level {}", h.n())));
        }
        if !support(&h, f).is_subset(domain) {
            return Err(Error::InvalidLabel(format!("support of {} is not inside {domain}", h.display(f))));
        }
        Ok(PartialElement { domain, h })
    }

    pub fn domain(&self) -> SupportSet {
        self.domain
    }

    pub fn element(&self) -> &GroupElement {
        &self.h
    }

    pub fn display<'a>(&'a self, f: &'a FiniteGroup) -> impl fmt::Display + 'a {
        struct D<'a>(&'a PartialElement, &'a FiniteGroup);
        impl fmt::Display for D<'_> {
            fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(out, "({}, {})", self.0.domain, self.0.h.display(self.1))
            }
        }
        D(self, f)
    }

    /// `(g lambda, g h g^-1)`.
    pub fn conjugated_by(&self, g: &GroupElement, f: &FiniteGroup) -> PartialElement {
        let domain = SupportSet::from_points(self.domain.points().map(|p| g.image(p)));
        PartialElement { domain, h: conjugate(g, &self.h, f) }
    }
}

impl Ord for PartialElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.domain.canonical_cmp(other.domain).then_with(|| self.h.cmp(&other.h))
    }
}

impl PartialOrd for PartialElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(d_a, h_a) (d_b, h_b) = (d_a u d_b, h_a h_b)`.
pub fn pmultiply(a: &PartialElement, b: &PartialElement, f: &FiniteGroup) -> Result<PartialElement> {
    let h = wreath::multiply(&a.h, &b.h, f)?;
    Ok(PartialElement { domain: a.domain.union(b.domain), h })
}

pub fn omega_of(p: &PartialElement, f: &FiniteGroup) -> OmegaLabel {
    OmegaLabel { l: p.domain.len(), c: class_label(&p.h, f) }
}

/// Every partial element of the family at level `n`, in canonical order.
pub fn partial_elements(family: &Family, n: usize, budget: u64) -> Result<Vec<PartialElement>> {
    let f = family.group();
    let mut by_size = Vec::with_capacity(n + 1);
    for k in 0..=n {
        by_size.push(family.elements(k, budget)?);
    }
    let mut out = Vec::new();
    for dom in subsets_canonical(SupportSet::full(n)) {
        let pts: Vec<usize> = dom.points().collect();
        for h in &by_size[pts.len()] {
            out.push(PartialElement { domain: dom, h: h.embed(&pts, n, f) });
        }
    }
    check_budget(out.len() as u128, budget)?;
    Ok(out)
}

/// Orbits of `group` acting on `items` by conjugation of partial elements.
/// Orbits are listed by their first item, items within an orbit in the
/// input order. `items` must be closed under the action.
pub fn conjugation_orbits(items: &[PartialElement], group: &[GroupElement], f: &FiniteGroup) -> Vec<Vec<usize>> {
    let index: HashMap<&PartialElement, usize> = items.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut orbit_of = vec![usize::MAX; items.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..items.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let k = orbits.len();
        let mut members = Vec::new();
        for g in group {
            let j = index[&items[i].conjugated_by(g, f)];
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = k;
                members.push(j);
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}

/// Small exact binomials for subset counting.
fn choose(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

impl Context {
    /// All `(lambda', h')` in class `omega` with `lambda'` inside `within`,
    /// at ambient level `n`.
    pub fn enumerate_omega_class(&self, w: &OmegaLabel, within: SupportSet, n: usize) -> Result<Vec<PartialElement>> {
        self.check_omega(w)?;
        if !within.is_subset(SupportSet::full(n)) {
            return Err(Error::LevelMismatch { left: within.len(), right: n });
        }
        let f = self.group();
        if w.l > within.len() {
            return Ok(Vec::new());
        }
        let level = self.level(w.l)?;
        let mut out = Vec::new();
        for dom in subsets_canonical(within).into_iter().filter(|d| d.len() == w.l) {
            let pts: Vec<usize> = dom.points().collect();
            for &i in level.members(&w.c) {
                out.push(PartialElement { domain: dom, h: level.elements()[i as usize].embed(&pts, n, f) });
            }
        }
        Ok(out)
    }

    /// Brute-force orbits of `G_n` on all partial elements at level `n`.
    pub fn orbit_oracle(&self, n: usize) -> Result<Vec<Vec<PartialElement>>> {
        let items = partial_elements(self.family(), n, self.budget())?;
        let group = self.level(n)?;
        let orbits = conjugation_orbits(&items, group.elements(), self.group());
        Ok(orbits.into_iter().map(|o| o.into_iter().map(|i| items[i].clone()).collect()).collect())
    }

    /// The structure constant `P^{omega}_{omega', omega''}`: the number of
    /// pairs in `omega' x omega''` whose product is one fixed partial element
    /// of `omega`.
    ///
    /// The fixed element is `({1..l}, h)` with `h` the first element of its
    /// class in canonical order.
    pub fn p_constant(&self, w1: &OmegaLabel, w2: &OmegaLabel, w: &OmegaLabel) -> Result<u64> {
        self.check_omega(w1)?;
        self.check_omega(w2)?;
        self.check_omega(w)?;
        if w.l < w1.l.max(w2.l) || w.l > w1.l + w2.l {
            return Ok(0);
        }
        let key = (w1.clone(), w2.clone(), w.clone());
        if let Some(&p) = self.p_cache.lock().unwrap().get(&key) {
            return Ok(p);
        }
        let level = self.level(w.l)?;
        let p = match level.representative(&w.c) {
            Some(h) => count_factorizations(&level, self.group(), h, w1, w2),
            None => 0,
        };
        self.p_cache.lock().unwrap().insert(key, p);
        Ok(p)
    }

    /// The same count for an arbitrary `h` in `G_l`, with domain `{1..l}`.
    pub fn p_count_for(&self, h: &GroupElement, w1: &OmegaLabel, w2: &OmegaLabel) -> Result<u64> {
        self.check_omega(w1)?;
        self.check_omega(w2)?;
        let level = self.level(h.n())?;
        Ok(count_factorizations(&level, self.group(), h, w1, w2))
    }

    /// `e_{w1} e_{w2}` in `A_{<=n}`.
    pub fn basis_product(&self, w1: &OmegaLabel, w2: &OmegaLabel, n: usize) -> Result<IkVector> {
        let mut out = IkVector::zero(n);
        for l in w1.l.max(w2.l)..=(w1.l + w2.l).min(n) {
            let level = self.level(l)?;
            for c in level.labels() {
                let w = OmegaLabel { l, c: c.clone() };
                let p = self.p_constant(w1, w2, &w)?;
                out.add_term(w, &Int::from(p));
            }
        }
        Ok(out)
    }

    pub fn ik_product(&self, a: &IkVector, b: &IkVector) -> Result<IkVector> {
        if a.level() != b.level() {
            return Err(Error::LevelMismatch { left: a.level(), right: b.level() });
        }
        let n = a.level();
        let mut out = IkVector::zero(n);
        for (w1, x) in a.iter() {
            if w1.l > n {
                return Err(Error::InvalidLabel(format!("{w1} exceeds level {n}")));
            }
            for (w2, y) in b.iter() {
                if w2.l > n {
                    return Err(Error::InvalidLabel(format!("{w2} exceeds level {n}")));
                }
                out.add_scaled(&self.basis_product(w1, w2, n)?, &(x * y));
            }
        }
        Ok(out)
    }

    /// Basis of `A_{<=n}`: every class with `l <= n`, canonical order.
    pub fn omega_basis(&self, n: usize) -> Result<Vec<OmegaLabel>> {
        let mut out = Vec::new();
        for l in 0..=n {
            for c in self.level(l)?.labels() {
                out.push(OmegaLabel { l, c: c.clone() });
            }
        }
        Ok(out)
    }
}

/// Pairs `(lambda', h'), (lambda'', h'')` in `w1 x w2` with
/// `lambda' u lambda'' = {0..l-1}` and `h' h'' = h`.
fn count_factorizations(level: &Level, f: &FiniteGroup, h: &GroupElement, w1: &OmegaLabel, w2: &OmegaLabel) -> u64 {
    let l = level.n();
    let full = SupportSet::full(l).0;
    let mut total = 0u64;
    for &i in level.members(&w1.c) {
        let i = i as usize;
        let h1 = &level.elements()[i];
        let h2 = mul_unchecked(&inverse(h1, f), h, f);
        if class_label(&h2, f) != w2.c {
            continue;
        }
        let s1 = level.support_of(i).0;
        let s2 = support(&h2, f).0;
        let need = w1.l as i64 - s1.count_ones() as i64;
        if need < 0 {
            continue;
        }
        // lambda' = s1 + t for t inside the free points; lambda'' must hold
        // s2 and everything lambda' misses, the rest is free choice.
        let free = full & !s1;
        let mut t = free;
        loop {
            if t.count_ones() as i64 == need {
                let d1 = s1 | t;
                let r = s2 | (full & !d1);
                let r_len = r.count_ones() as usize;
                if r_len <= w2.l {
                    total += choose(l - r_len, w2.l - r_len);
                }
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & free;
        }
    }
    total
}

/// Drops every term with `l > to`. The result lives in `A_{<=to}`.
pub fn project(a: &IkVector, to: usize) -> Result<IkVector> {
    if to > a.level() {
        return Err(Error::LevelMismatch { left: a.level(), right: to });
    }
    Ok(a.filtered(to, |w| w.l <= to))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Builtin;
    use crate::label::ClassLabel;
    use crate::wreath::DEFAULT_BUDGET;
    use std::collections::{BTreeMap, BTreeSet};

    fn sym() -> Context {
        Context::new(Family::symmetric(), DEFAULT_BUDGET).unwrap()
    }

    fn bn() -> Context {
        Context::new(Family::wreath_builtin(Builtin::Cyclic(2)).unwrap(), DEFAULT_BUDGET).unwrap()
    }

    fn w(s: &str) -> OmegaLabel {
        s.parse().unwrap()
    }

    fn pe(pts: &[usize], perm: &[usize], ctx: &Context) -> PartialElement {
        let h = GroupElement::from_perm(perm.to_vec(), ctx.group()).unwrap();
        PartialElement::new(SupportSet::from_points(pts.iter().map(|p| p - 1)), h, ctx.group()).unwrap()
    }

    /// Counts factorizations of `target` by scanning every pair of partial
    /// elements at the target's ambient level.
    fn brute_p(ctx: &Context, all: &[PartialElement], target: &PartialElement, w1: &OmegaLabel, w2: &OmegaLabel) -> u64 {
        let f = ctx.group();
        let a: Vec<_> = all.iter().filter(|p| omega_of(p, f) == *w1).collect();
        let b: Vec<_> = all.iter().filter(|p| omega_of(p, f) == *w2).collect();
        let mut n = 0;
        for x in &a {
            for y in &b {
                if pmultiply(x, y, f).unwrap() == *target {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn partial_products() {
        let ctx = sym();
        let f = ctx.group();
        let e3 = [0, 1, 2];
        assert_eq!(pmultiply(&pe(&[1], &e3, &ctx), &pe(&[2], &e3, &ctx), f).unwrap(), pe(&[1, 2], &e3, &ctx));
        let t12 = pe(&[1, 2], &[1, 0, 2], &ctx);
        assert_eq!(pmultiply(&t12, &t12, f).unwrap(), pe(&[1, 2], &e3, &ctx));
        let t23 = pe(&[2, 3], &[0, 2, 1], &ctx);
        // (1 2)(2 3) with the right factor applied first: 1->1->2, 2->3->3, 3->2->1.
        assert_eq!(pmultiply(&t12, &t23, f).unwrap(), pe(&[1, 2, 3], &[1, 2, 0], &ctx));
        assert_eq!(omega_of(&pmultiply(&t12, &t23, f).unwrap(), f), w("3:[3]"));
        let short = pe(&[1], &[0], &ctx);
        assert!(matches!(pmultiply(&t12, &short, f), Err(Error::LevelMismatch { .. })));
    }

    #[test]
    fn omega_labels_of_examples() {
        let ctx = sym();
        let f = ctx.group();
        assert_eq!(omega_of(&pe(&[], &[0, 1, 2], &ctx), f), w("0:[]"));
        assert_eq!(omega_of(&pe(&[1, 2, 3], &[1, 0, 2], &ctx), f), w("3:[2]"));
        let b = bn();
        let g = b.group();
        let h = GroupElement::new(vec![1, 0], vec![1, 0], g).unwrap();
        let p = PartialElement::new(SupportSet::full(2), h, g).unwrap();
        assert_eq!(omega_of(&p, g), w("2:[(2,1)]"));
        assert!(PartialElement::new(SupportSet::from_points([0]), GroupElement::new(vec![1, 0], vec![0, 0], g).unwrap(), g).is_err());
    }

    #[test]
    fn omega_class_enumeration() {
        let ctx = sym();
        let within = SupportSet::full(3);
        assert_eq!(ctx.enumerate_omega_class(&w("0:[]"), within, 3).unwrap().len(), 1);
        let t = ctx.enumerate_omega_class(&w("2:[2]"), within, 3).unwrap();
        assert_eq!(t, vec![pe(&[1, 2], &[1, 0, 2], &ctx), pe(&[1, 3], &[2, 1, 0], &ctx), pe(&[2, 3], &[0, 2, 1], &ctx)]);
        let e = ctx.enumerate_omega_class(&w("2:[]"), within, 3).unwrap();
        assert_eq!(e.len(), 3);
        assert!(e.iter().all(|p| p.element().is_identity(ctx.group())));
    }

    #[test]
    fn orbit_oracle_examples() {
        let ctx = sym();
        let o2 = ctx.orbit_oracle(2).unwrap();
        assert_eq!(o2.iter().map(Vec::len).sum::<usize>(), 5);
        assert_eq!(o2.len(), 4);
        let o3 = ctx.orbit_oracle(3).unwrap();
        let labels: BTreeSet<OmegaLabel> = o3.iter().map(|o| omega_of(&o[0], ctx.group())).collect();
        let expect: BTreeSet<OmegaLabel> =
            ["0:[]", "1:[]", "2:[]", "2:[2]", "3:[]", "3:[2]", "3:[3]"].iter().map(|s| w(s)).collect();
        assert_eq!(o3.len(), 7);
        assert_eq!(labels, expect);
        assert_eq!(bn().orbit_oracle(1).unwrap().len(), 3);
    }

    #[test]
    fn orbits_agree_with_omega_labels() {
        for (ctx, max_n) in [(sym(), 4), (bn(), 3)] {
            let f = ctx.group();
            for n in 0..=max_n {
                let oracle: BTreeSet<BTreeSet<PartialElement>> =
                    ctx.orbit_oracle(n).unwrap().into_iter().map(|o| o.into_iter().collect()).collect();
                let mut by: BTreeMap<OmegaLabel, BTreeSet<PartialElement>> = BTreeMap::new();
                for p in partial_elements(ctx.family(), n, DEFAULT_BUDGET).unwrap() {
                    by.entry(omega_of(&p, f)).or_default().insert(p);
                }
                let grouped: BTreeSet<_> = by.into_values().collect();
                assert_eq!(grouped, oracle, "{} n={n}", ctx.family());
            }
        }
    }

    #[test]
    fn p_constant_examples() {
        let ctx = sym();
        let unit = OmegaLabel::unit();
        for x in ctx.omega_basis(3).unwrap() {
            for y in ctx.omega_basis(3).unwrap() {
                let expect = u64::from(x == y);
                assert_eq!(ctx.p_constant(&unit, &x, &y).unwrap(), expect);
            }
        }
        assert_eq!(ctx.p_constant(&w("1:[]"), &w("1:[]"), &w("2:[]")).unwrap(), 2);
        assert_eq!(ctx.p_constant(&w("1:[]"), &w("1:[]"), &w("1:[]")).unwrap(), 1);
        let t = w("2:[2]");
        let nonzero: BTreeMap<OmegaLabel, u64> = ctx
            .omega_basis(4)
            .unwrap()
            .into_iter()
            .map(|x| (x.clone(), ctx.p_constant(&t, &t, &x).unwrap()))
            .filter(|(_, p)| *p != 0)
            .collect();
        let expect: BTreeMap<OmegaLabel, u64> = [("2:[]", 1), ("3:[3]", 3), ("4:[2,2]", 2)].iter().map(|(s, p)| (w(s), *p)).collect();
        assert_eq!(nonzero, expect);
        assert!(matches!(ctx.p_constant(&w("1:[]"), &OmegaLabel { l: 1, c: ClassLabel::partition(&[2]) }, &t), Err(Error::InvalidLabel(_))));
    }

    #[test]
    fn p_constant_matches_pair_enumeration_for_every_representative() {
        for (ctx, max_n) in [(sym(), 4), (bn(), 3)] {
            let f = ctx.group();
            for n in 0..=max_n {
                let all = partial_elements(ctx.family(), n, DEFAULT_BUDGET).unwrap();
                let basis = ctx.omega_basis(n).unwrap();
                for target in all.iter().filter(|p| p.domain().len() == n) {
                    let wt = omega_of(target, f);
                    for w1 in &basis {
                        for w2 in &basis {
                            let fast = ctx.p_constant(w1, w2, &wt).unwrap();
                            assert_eq!(fast, brute_p(&ctx, &all, target, w1, w2), "{w1} {w2} -> {}", target.display(f));
                            assert_eq!(fast, ctx.p_count_for(target.element(), w1, w2).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn representative_independence_inside_larger_levels() {
        // Targets with a domain smaller than the ambient level: P only
        // depends on the class of the target.
        let ctx = sym();
        let f = ctx.group();
        let all = partial_elements(ctx.family(), 4, DEFAULT_BUDGET).unwrap();
        let basis = ctx.omega_basis(3).unwrap();
        for target in all.iter().filter(|p| p.domain().len() == 3).step_by(7) {
            let wt = omega_of(target, f);
            for w1 in &basis {
                for w2 in &basis {
                    assert_eq!(ctx.p_constant(w1, w2, &wt).unwrap(), brute_p(&ctx, &all, target, w1, w2));
                }
            }
        }
    }

    #[test]
    fn golden_products() {
        let ctx = sym();
        let e1 = IkVector::basis(4, w("1:[]"));
        let sq = ctx.ik_product(&e1, &e1).unwrap();
        assert_eq!(sq, IkVector::from_terms(4, [(w("1:[]"), Int::ONE), (w("2:[]"), Int::from(2i64))]));
        let t = IkVector::basis(4, w("2:[2]"));
        let tt = ctx.ik_product(&t, &t).unwrap();
        let expect = IkVector::from_terms(4, [(w("2:[]"), Int::ONE), (w("3:[3]"), Int::from(3i64)), (w("4:[2,2]"), Int::from(2i64))]);
        assert_eq!(tt, expect);
        let unit = IkVector::basis(4, OmegaLabel::unit());
        assert_eq!(ctx.ik_product(&unit, &tt).unwrap(), tt);
        assert!(matches!(ctx.ik_product(&unit, &IkVector::basis(3, OmegaLabel::unit())), Err(Error::LevelMismatch { .. })));
    }

    #[test]
    fn projections() {
        let ctx = sym();
        let t = IkVector::basis(4, w("2:[2]"));
        assert!(project(&t, 1).unwrap().is_zero());
        let v = IkVector::from_terms(4, [(w("1:[]"), Int::ONE), (w("2:[]"), Int::from(2i64))]);
        assert_eq!(project(&v, 1).unwrap(), IkVector::basis(1, w("1:[]")));
        let tt = ctx.ik_product(&t, &t).unwrap();
        let t3 = project(&t, 3).unwrap();
        let lhs = project(&tt, 3).unwrap();
        assert_eq!(lhs, ctx.ik_product(&t3, &t3).unwrap());
        assert_eq!(lhs, IkVector::from_terms(3, [(w("2:[]"), Int::ONE), (w("3:[3]"), Int::from(3i64))]));
        assert!(project(&t, 5).is_err());
    }

    #[test]
    fn algebra_laws() {
        for (ctx, n) in [(sym(), 5), (bn(), 3)] {
            let basis = ctx.omega_basis(n).unwrap();
            let e = |x: &OmegaLabel| IkVector::basis(n, x.clone());
            for x in &basis {
                for y in &basis {
                    let xy = ctx.ik_product(&e(x), &e(y)).unwrap();
                    assert_eq!(xy, ctx.ik_product(&e(y), &e(x)).unwrap());
                    for (k, _) in xy.iter() {
                        assert!(x.l.max(y.l) <= k.l && k.l <= x.l + y.l);
                    }
                    for z in &basis {
                        if x.l + y.l + z.l > n + 2 {
                            continue;
                        }
                        let left = ctx.ik_product(&xy, &e(z)).unwrap();
                        let right = ctx.ik_product(&e(x), &ctx.ik_product(&e(y), &e(z)).unwrap()).unwrap();
                        assert_eq!(left, right, "{x} {y} {z}");
                    }
                }
            }
        }
    }
}
