//! The bridge between `A` and the product of centers `prod_l Z(k[G_l])`.
//!
//! `xi(l', c; l)` counts the `l'`-subsets of an `l`-set that contain the
//! support of a fixed element of class `c`. With it:
//!
//! * both structure-constant families are tied by
//!   `xi(l1,c1;l) xi(l2,c2;l) S^{c(l)}_{c1(l),c2(l)} = sum_t xi(t,c;l) P^{(t,c)}_{(l1,c1),(l2,c2)}`,
//! * that identity, read over `l = m..M`, is a unipotent lower-triangular
//!   system `(1 + R) P = S` which recovers `P` from `S`,
//! * `phi(e_{(l',c)}) = sum_{l >= l'} xi(l',c;l) e_{c(l)}` is an injective
//!   algebra map, with a triangular inverse on each truncation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::center::CenterBasisLabel;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::int::{binomial, Int};
use crate::label::{ClassLabel, OmegaLabel};
use crate::vector::{CenterVector, IkVector};
use crate::wreath::{check_budget, support, GroupElement, SupportSet};

/// `(l - alpha)! / ((l - l')! (l' - alpha)!)`, zero outside
/// `alpha <= l' <= l`.
pub fn xi_closed_form(lp: usize, c: &ClassLabel, l: usize) -> Int {
    xi_alpha(lp, c.alpha(), l)
}

pub fn xi_alpha(lp: usize, alpha: usize, l: usize) -> Int {
    if alpha > lp || lp > l {
        return Int::ZERO;
    }
    binomial((l - alpha) as u64, (lp - alpha) as u64)
}

/// Counts `l'`-subsets of `{1..l}` that contain the support of a concrete
/// element of class `c`, by listing every subset.
pub fn xi_count_oracle(lp: usize, c: &ClassLabel, l: usize, f: &FiniteGroup, budget: u64) -> Result<u64> {
    if c.alpha() > l {
        return Ok(0);
    }
    check_budget(1u128 << l, budget)?;
    let h = GroupElement::representative(c, l, f)?;
    let s = support(&h, f).0;
    Ok((0..1u64 << l)
        .filter(|&m| m.count_ones() as usize == lp && s & !m == 0)
        .count() as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainLemmaCheck {
    pub lhs: Int,
    pub rhs: Int,
    pub equal: bool,
}

/// The linear system `(1 + R) P = S` over `l = lo..=hi`, where `lo = max(l1, l2)`
/// and `hi = l1 + l2`. Row `i` is level `lo + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSystem {
    pub omega1: OmegaLabel,
    pub omega2: OmegaLabel,
    pub c: ClassLabel,
    pub lo: usize,
    pub hi: usize,
    /// Strictly lower triangular: `r[i][j] = xi(lo + j, c; lo + i)` for `j < i`.
    pub r: Vec<Vec<Int>>,
    /// `s[i] = xi(l1,c1;l) xi(l2,c2;l) S^{c(l)}_{c1(l),c2(l)}` with `l = lo + i`.
    pub s: Vec<Int>,
}

/// Row labels, column labels and entries of the matrix of `phi`.
pub type PhiMatrix = (Vec<CenterBasisLabel>, Vec<OmegaLabel>, Vec<Vec<Int>>);

impl RSystem {
    pub fn levels(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

/// Forward substitution on the unipotent system. Exact; never fails.
pub fn solve_p_from_s(sys: &RSystem) -> Vec<Int> {
    let mut p: Vec<Int> = Vec::with_capacity(sys.s.len());
    for (i, row) in sys.r.iter().enumerate() {
        let mut x = sys.s[i].clone();
        for (j, pj) in p.iter().enumerate() {
            x -= &(&row[j] * pj);
        }
        p.push(x);
    }
    p
}

/// An element of the truncated product of centers: one vector per level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatVector {
    pub level: usize,
    pub components: BTreeMap<usize, CenterVector>,
}

impl HatVector {
    pub fn zero(level: usize) -> HatVector {
        HatVector { level, components: BTreeMap::new() }
    }

    pub fn component(&self, l: usize) -> CenterVector {
        self.components.get(&l).cloned().unwrap_or_else(|| CenterVector::zero(l))
    }

    pub fn add_term(&mut self, b: &CenterBasisLabel, x: &Int) {
        let v = self.components.entry(b.l).or_insert_with(|| CenterVector::zero(b.l));
        v.add_term(b.c.clone(), x);
        if v.is_zero() {
            self.components.remove(&b.l);
        }
    }

    pub fn add_scaled(&mut self, other: &HatVector, x: &Int) {
        for (&l, v) in &other.components {
            for (c, y) in v.iter() {
                self.add_term(&CenterBasisLabel { l, c: c.clone() }, &(x * y));
            }
        }
    }

    /// A single basis vector `e_{c(l)}` inside the truncation at `level`.
    pub fn basis(level: usize, b: &CenterBasisLabel) -> HatVector {
        let mut v = HatVector::zero(level);
        v.add_term(b, &Int::ONE);
        v
    }
}

/// `phi` on the truncation: components for `l <= a.level()` only.
pub fn phi(a: &IkVector) -> HatVector {
    let n = a.level();
    let mut out = HatVector::zero(n);
    for (w, x) in a.iter() {
        for l in w.l..=n {
            let k = xi_closed_form(w.l, &w.c, l);
            out.add_term(&CenterBasisLabel { l, c: w.c.clone() }, &(x * &k));
        }
    }
    out
}

/// A combination `e_{(l,c)} - sum_{l' > l} beta_{l'} e_{(l',c)}` whose image
/// under `phi` is exactly `e_{c(l)}` through level `n`.
pub fn phi_preimage(target: &CenterBasisLabel, n: usize) -> Result<IkVector> {
    let CenterBasisLabel { l, c } = target;
    if c.alpha() > *l || *l > n {
        return Err(Error::InvalidLabel(format!("{target} at truncation {n}")));
    }
    // beta_k kills the level-k component left over by the earlier terms;
    // xi(k, c; k) = 1 so no division is needed.
    let mut beta: Vec<(usize, Int)> = Vec::new();
    for k in l + 1..=n {
        let mut b = xi_closed_form(*l, c, k);
        for (j, bj) in &beta {
            b -= &(bj * &xi_closed_form(*j, c, k));
        }
        beta.push((k, b));
    }
    let mut out = IkVector::basis(n, OmegaLabel { l: *l, c: c.clone() });
    for (k, b) in beta {
        out.add_term(OmegaLabel { l: k, c: c.clone() }, &-b);
    }
    Ok(out)
}

impl Context {
    /// Both sides of the identity tying `S` at level `l` to the `P` of
    /// classes `(t, c)`, `t <= l`.
    pub fn verify_main_lemma(
        &self,
        l1: usize,
        c1: &ClassLabel,
        l2: usize,
        c2: &ClassLabel,
        l: usize,
        c: &ClassLabel,
    ) -> Result<MainLemmaCheck> {
        let lhs = &(&xi_closed_form(l1, c1, l) * &xi_closed_form(l2, c2, l)) * &Int::from(self.s_constant(c1, c2, c, l)?);
        let mut rhs = Int::ZERO;
        if c1.alpha() <= l1 && c2.alpha() <= l2 {
            let w1 = OmegaLabel { l: l1, c: c1.clone() };
            let w2 = OmegaLabel { l: l2, c: c2.clone() };
            for t in c.alpha()..=l {
                let x = xi_closed_form(t, c, l);
                let p = self.p_constant(&w1, &w2, &OmegaLabel { l: t, c: c.clone() })?;
                rhs += &(&x * &Int::from(p));
            }
        }
        let equal = lhs == rhs;
        Ok(MainLemmaCheck { lhs, rhs, equal })
    }

    /// Assembles `R` and `S` for `e_{w1} e_{w2}` projected on class `c`.
    /// Uses only `xi` and center constants.
    pub fn build_r_system(&self, w1: &OmegaLabel, w2: &OmegaLabel, c: &ClassLabel) -> Result<RSystem> {
        self.check_omega(w1)?;
        self.check_omega(w2)?;
        self.family().check_class(c)?;
        let lo = w1.l.max(w2.l);
        let hi = w1.l + w2.l;
        let mut r = Vec::new();
        let mut s = Vec::new();
        for l in lo..=hi {
            r.push((lo..l).map(|t| xi_closed_form(t, c, l)).collect());
            let x = &xi_closed_form(w1.l, &w1.c, l) * &xi_closed_form(w2.l, &w2.c, l);
            s.push(&x * &Int::from(self.s_constant(&w1.c, &w2.c, c, l)?));
        }
        Ok(RSystem { omega1: w1.clone(), omega2: w2.clone(), c: c.clone(), lo, hi, r, s })
    }

    /// Componentwise product in the truncated product of centers.
    pub fn hat_product(&self, a: &HatVector, b: &HatVector) -> Result<HatVector> {
        if a.level != b.level {
            return Err(Error::LevelMismatch { left: a.level, right: b.level });
        }
        let mut out = HatVector::zero(a.level);
        for (l, x) in &a.components {
            if let Some(y) = b.components.get(l) {
                let v = self.center_product(x, y)?;
                if !v.is_zero() {
                    out.components.insert(*l, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `phi` on `A_{<=n}`: rows are the center labels `c(l)`,
    /// columns the basis `(l', c)`, both in canonical order. It is lower
    /// unitriangular.
    pub fn phi_matrix(&self, n: usize) -> Result<PhiMatrix> {
        let cols = self.omega_basis(n)?;
        let mut rows = Vec::new();
        for l in 0..=n {
            rows.extend(self.center_basis(l)?);
        }
        let index: BTreeMap<&CenterBasisLabel, usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut m = vec![vec![Int::ZERO; cols.len()]; rows.len()];
        for (j, w) in cols.iter().enumerate() {
            let img = phi(&IkVector::basis(n, w.clone()));
            for (&l, v) in &img.components {
                for (c, x) in v.iter() {
                    let i = index
                        .get(&CenterBasisLabel { l, c: c.clone() })
                        .ok_or_else(|| Error::InvalidLabel(format!("{c} missing from G_{l}")))?;
                    m[*i][j] = x.clone();
                }
            }
        }
        Ok((rows, cols, m))
    }
}

/// Subsets of size `lp` inside `{0..l-1}` containing `s`; used by tests as a
/// second route to `xi`.
pub fn count_supersets(s: SupportSet, lp: usize, l: usize) -> u64 {
    (0..1u64 << l)
        .filter(|&m| m.count_ones() as usize == lp && s.0 & !m == 0)
        .count() as u64
}
