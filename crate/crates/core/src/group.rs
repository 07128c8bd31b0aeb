//! Base groups `F` given by their multiplication tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the order of a loaded table.
pub const DEFAULT_ORDER_CAP: usize = 24;

/// On-disk description of a finite group. Indices are 0-based and the
/// identity may sit at any index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub order: usize,
    pub mult: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<GroupSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("group spec: {e}")))
    }
}

/// A validated finite group with inverses and conjugacy classes precomputed.
///
/// Class index 0 is always the identity's class; the remaining classes are
/// ordered by their minimal element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    class_of: Vec<usize>,
    class_reps: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_reps(&self) -> &[usize] {
        &self.class_reps
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Elements of each conjugacy class, in canonical class order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_reps.len()];
        for x in 0..self.order {
            out[self.class_of[x]].push(x);
        }
        out
    }

    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec {
            order: self.order,
            mult: self.mult.chunks(self.order).map(|r| r.to_vec()).collect(),
            names: Some(self.names.clone()),
        }
    }
}

/// Validates a table and precomputes inverses and classes, using the
/// default order cap.
pub fn load_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    load_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn load_group_with_cap(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    let n = spec.order;
    if n == 0 {
        return Err(Error::MalformedTable("order must be positive".into()));
    }
    if n > cap.min(255) {
        return Err(Error::GroupTooLarge { order: n, cap: cap.min(255) });
    }
    if spec.mult.len() != n || spec.mult.iter().any(|r| r.len() != n) {
        return Err(Error::MalformedTable(format!("table must be {n}x{n}")));
    }
    if let Some(names) = &spec.names {
        if names.len() != n {
            return Err(Error::MalformedTable(format!("expected {n} names, got {}", names.len())));
        }
    }
    for (row, r) in spec.mult.iter().enumerate() {
        for (col, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(Error::NotClosed { row, col, value, order: n });
            }
        }
    }
    let mult: Vec<usize> = spec.mult.iter().flatten().copied().collect();
    let m = |a: usize, b: usize| mult[a * n + b];

    let identity = (0..n)
        .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
        .ok_or(Error::NoIdentity)?;

    let mut inv = vec![0; n];
    for (x, slot) in inv.iter_mut().enumerate() {
        *slot = (0..n)
            .find(|&y| m(x, y) == identity && m(y, x) == identity)
            .ok_or(Error::NoInverse { element: x })?;
    }

    for x in 0..n {
        for y in 0..n {
            let xy = m(x, y);
            for z in 0..n {
                if m(xy, z) != m(x, m(y, z)) {
                    return Err(Error::NotAssociative { x, y, z });
                }
            }
        }
    }

    // Conjugation orbits; scanning x in index order makes each orbit's
    // first-seen element its minimum.
    let mut class_of = vec![usize::MAX; n];
    let mut class_reps = vec![identity];
    class_of[identity] = 0;
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let k = class_reps.len();
        class_reps.push(x);
        for g in 0..n {
            class_of[m(m(g, x), inv[g])] = k;
        }
    }

    let names = spec
        .names
        .clone()
        .unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());

    Ok(FiniteGroup { order: n, mult, inv, identity, class_of, class_reps, names })
}

/// Built-in base groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Trivial,
    Cyclic(usize),
    Sym3,
}

impl FromStr for Builtin {
    type Err = Error;

    /// Accepts `trivial`, `cyclic(m)`, `cyclicM`, `zM`, `sym(3)`, `sym3`, `s3`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        let unknown = || Error::UnknownBuiltin(s.to_string());
        match t.as_str() {
            "trivial" | "e" | "1" => return Ok(Builtin::Trivial),
            "sym3" | "sym(3)" | "s3" => return Ok(Builtin::Sym3),
            _ => {}
        }
        let digits = t
            .strip_prefix("cyclic")
            .or_else(|| t.strip_prefix('z'))
            .or_else(|| t.strip_prefix('c'))
            .ok_or_else(unknown)?;
        let digits = digits.trim_start_matches('(').trim_end_matches(')');
        let m: usize = digits.parse().map_err(|_| unknown())?;
        if m == 0 || m > 12 {
            return Err(unknown());
        }
        Ok(Builtin::Cyclic(m))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Trivial => write!(f, "trivial"),
            Builtin::Cyclic(m) => write!(f, "cyclic{m}"),
            Builtin::Sym3 => write!(f, "sym3"),
        }
    }
}

pub fn builtin_group(b: Builtin) -> Result<FiniteGroup> {
    let spec = match b {
        Builtin::Trivial => GroupSpec { order: 1, mult: vec![vec![0]], names: Some(vec!["e".into()]) },
        Builtin::Cyclic(m) => {
            if m == 0 || m > 12 {
                return Err(Error::UnknownBuiltin(format!("cyclic({m})")));
            }
            let names = match m {
                1 => vec!["e".to_string()],
                2 => vec!["+".to_string(), "-".to_string()],
                _ => (0..m).map(|k| k.to_string()).collect(),
            };
            GroupSpec {
                order: m,
                mult: (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect(),
                names: Some(names),
            }
        }
        Builtin::Sym3 => {
            // Permutations of {0,1,2} in lexicographic order; (a*b)(i) = a(b(i)).
            let perms: [[usize; 3]; 6] =
                [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
            let mult = perms
                .iter()
                .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
                .collect();
            let names = ["e", "t23", "t12", "c123", "c132", "t13"].map(String::from).to_vec();
            GroupSpec { order: 6, mult, names: Some(names) }
        }
    };
    load_group(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(g: &FiniteGroup) -> Vec<usize> {
        g.classes().iter().map(Vec::len).collect()
    }

    #[test]
    fn trivial_group() {
        let g = builtin_group(Builtin::Trivial).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.classes(), vec![vec![0]]);
    }

    #[test]
    fn z2_from_table() {
        let g = load_group(&GroupSpec { order: 2, mult: vec![vec![0, 1], vec![1, 0]], names: None }).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.num_classes(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn cyclic3_classes_are_singletons() {
        let g = builtin_group(Builtin::Cyclic(3)).unwrap();
        assert_eq!(g.classes(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn sym3_class_sizes() {
        let g = builtin_group(Builtin::Sym3).unwrap();
        assert_eq!(sizes(&g), vec![1, 3, 2]);
        assert_eq!(g.classes()[1], vec![1, 2, 5]);
    }

    #[test]
    fn identity_not_at_zero() {
        // Z/3 with the identity stored at index 2.
        let spec = GroupSpec {
            order: 3,
            mult: vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]],
            names: None,
        };
        let g = load_group(&spec).unwrap();
        assert_eq!(g.identity(), 2);
        assert_eq!(g.class_of(2), 0);
        assert_eq!(g.class_reps(), &[2, 0, 1]);
    }

    #[test]
    fn rejects_bad_tables() {
        let open = GroupSpec { order: 2, mult: vec![vec![0, 2], vec![1, 0]], names: None };
        assert_eq!(
            load_group(&open),
            Err(Error::NotClosed { row: 0, col: 1, value: 2, order: 2 })
        );
        let no_id = GroupSpec { order: 2, mult: vec![vec![1, 1], vec![1, 1]], names: None };
        assert_eq!(load_group(&no_id), Err(Error::NoIdentity));
        let no_inv = GroupSpec { order: 2, mult: vec![vec![0, 1], vec![1, 1]], names: None };
        assert_eq!(load_group(&no_inv), Err(Error::NoInverse { element: 1 }));
        // A loop that is not a group: unit 0, every element an involution,
        // but (1*2)*3 != 1*(2*3).
        let loop5 = GroupSpec {
            order: 5,
            mult: vec![
                vec![0, 1, 2, 3, 4],
                vec![1, 0, 3, 4, 2],
                vec![2, 4, 0, 1, 3],
                vec![3, 2, 4, 0, 1],
                vec![4, 3, 1, 2, 0],
            ],
            names: None,
        };
        assert!(matches!(load_group(&loop5), Err(Error::NotAssociative { .. })));
        let big = GroupSpec {
            order: 30,
            mult: (0..30).map(|a| (0..30).map(|b| (a + b) % 30).collect()).collect(),
            names: None,
        };
        assert_eq!(load_group(&big), Err(Error::GroupTooLarge { order: 30, cap: 24 }));
        assert!(load_group_with_cap(&big, 30).is_ok());
    }

    #[test]
    fn builtin_names_parse() {
        assert_eq!("cyclic(2)".parse::<Builtin>().unwrap(), Builtin::Cyclic(2));
        assert_eq!("cyclic2".parse::<Builtin>().unwrap(), Builtin::Cyclic(2));
        assert_eq!("sym(3)".parse::<Builtin>().unwrap(), Builtin::Sym3);
        assert!(matches!("cyclic13".parse::<Builtin>(), Err(Error::UnknownBuiltin(_))));
        assert!(matches!("dihedral4".parse::<Builtin>(), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = builtin_group(Builtin::Sym3).unwrap();
        let text = serde_json::to_string(&g.to_spec()).unwrap();
        let back = load_group(&GroupSpec::from_json(&text).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn group_axioms_hold_for_builtins() {
        for b in [Builtin::Trivial, Builtin::Cyclic(5), Builtin::Cyclic(12), Builtin::Sym3] {
            let g = builtin_group(b).unwrap();
            let n = g.order();
            let classes = g.classes();
            assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), n);
            for c in &classes {
                assert_eq!(n % c.len(), 0);
            }
            for x in 0..n {
                assert_eq!(g.mul(x, g.inv(x)), g.identity());
                for h in 0..n {
                    let conj = g.mul(g.mul(h, x), g.inv(h));
                    assert_eq!(g.class_of(conj), g.class_of(x));
                }
            }
        }
    }
}
