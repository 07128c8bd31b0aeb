//! Tables of labels and structure constants, rendered as aligned text, JSON
//! or CSV. Labels are written in the same syntax the parsers accept, so an
//! exported row can be pasted back as an argument.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::center::CenterBasisLabel;
use crate::context::Context;
use crate::correspondence::{xi_closed_form, xi_count_oracle};
use crate::error::{Error, Result};
use crate::int::{binomial, Int};
use crate::label::{ClassLabel, OmegaLabel};

/// Version of every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "table" | "text" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Table => "table",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub kind: String,
    pub meta: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

impl Table {
    pub fn new(kind: &str, columns: &[&str]) -> Table {
        Table { kind: kind.into(), meta: Map::new(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn with_meta(mut self, key: &str, v: impl Into<Value>) -> Table {
        self.meta.insert(key.into(), v.into());
        self
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA_VERSION));
        m.insert("kind".into(), json!(self.kind));
        for (k, v) in &self.meta {
            m.insert(k.clone(), v.clone());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().cloned()).collect()))
            .collect();
        m.insert("rows".into(), Value::Array(rows));
        Value::Object(m)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(cell)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
        let mut width: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for r in &cells {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |r: &[String]| {
            let padded: Vec<String> = r.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.columns);
        for r in &cells {
            out.push_str(&line(r));
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.to_text(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => serde_json::to_string_pretty(&self.to_json()).expect("json values") + "\n",
        }
    }
}

fn int(x: &Int) -> Value {
    serde_json::to_value(x).expect("integers serialize")
}

/// Omega classes of `A_{<=n}` with their sizes `C(n,l) |c(l)|`, then the
/// classes of each `G_l`, `l <= n`, with `|c(l)|`.
pub fn classes_table(ctx: &Context, n: usize) -> Result<Table> {
    let fam = ctx.family();
    let mut t = Table::new("classes", &["kind", "label", "l", "size"]).with_meta("family", fam.to_string()).with_meta("level", n);
    for w in ctx.omega_basis(n)? {
        let size = &binomial(n as u64, w.l as u64) * &Int::from(ctx.class_size(&w.c, w.l)?);
        t.push(vec![json!("omega"), json!(fam.render_omega(&w)), json!(w.l), int(&size)]);
    }
    for l in 0..=n {
        for b in ctx.center_basis(l)? {
            t.push(vec![json!("center"), json!(b.render(fam.label_style())), json!(l), json!(ctx.class_size(&b.c, l)?)]);
        }
    }
    Ok(t)
}

/// Rows `(omega1, omega2, omega, P)`. Without `w` only nonzero constants are
/// listed; a missing `w1` or `w2` ranges over the whole basis of `A_{<=n}`.
pub fn p_table(ctx: &Context, n: usize, w1: Option<&OmegaLabel>, w2: Option<&OmegaLabel>, w: Option<&OmegaLabel>) -> Result<Table> {
    let fam = ctx.family();
    let basis = ctx.omega_basis(n)?;
    let pick = |x: Option<&OmegaLabel>| -> Result<Vec<OmegaLabel>> {
        match x {
            Some(x) => {
                if x.l > n {
                    return Err(Error::InvalidLabel(format!("{} exceeds level {n}", fam.render_omega(x))));
                }
                ctx.check_omega(x)?;
                Ok(vec![x.clone()])
            }
            None => Ok(basis.clone()),
        }
    };
    let mut t = Table::new("pconst", &["omega1", "omega2", "omega", "P"]).with_meta("family", fam.to_string()).with_meta("level", n);
    for a in pick(w1)? {
        for b in pick(w2)? {
            match w {
                Some(w) => {
                    let p = ctx.p_constant(&a, &b, w)?;
                    t.push(vec![json!(fam.render_omega(&a)), json!(fam.render_omega(&b)), json!(fam.render_omega(w)), json!(p)]);
                }
                None => {
                    for (x, p) in ctx.basis_product(&a, &b, n)?.iter() {
                        t.push(vec![json!(fam.render_omega(&a)), json!(fam.render_omega(&b)), json!(fam.render_omega(x)), int(p)]);
                    }
                }
            }
        }
    }
    Ok(t)
}

/// Rows `(c1, c2, c, l, S)` of the center of `G_l`, same conventions as
/// [`p_table`].
pub fn s_table(ctx: &Context, l: usize, c1: Option<&ClassLabel>, c2: Option<&ClassLabel>, c: Option<&ClassLabel>) -> Result<Table> {
    let fam = ctx.family();
    let basis: Vec<ClassLabel> = ctx.center_basis(l)?.into_iter().map(|b| b.c).collect();
    let pick = |x: Option<&ClassLabel>| -> Result<Vec<ClassLabel>> {
        match x {
            Some(x) => {
                fam.check_class(x)?;
                Ok(vec![x.clone()])
            }
            None => Ok(basis.clone()),
        }
    };
    let mut t = Table::new("sconst", &["c1", "c2", "c", "l", "S"]).with_meta("family", fam.to_string()).with_meta("l", l);
    for a in pick(c1)? {
        for b in pick(c2)? {
            let targets = match c {
                Some(c) => vec![c.clone()],
                None => basis.clone(),
            };
            for x in targets {
                let s = ctx.s_constant(&a, &b, &x, l)?;
                if c.is_some() || s != 0 {
                    t.push(vec![json!(fam.render_class(&a)), json!(fam.render_class(&b)), json!(fam.render_class(&x)), json!(l), json!(s)]);
                }
            }
        }
    }
    Ok(t)
}

/// A single `xi(l', c; l)`; with `oracle` the subset count is shown beside
/// the closed form.
pub fn xi_table(ctx: &Context, lp: usize, c: &ClassLabel, l: usize, oracle: bool) -> Result<Table> {
    let fam = ctx.family();
    fam.check_class(c)?;
    let cols: &[&str] = if oracle { &["lprime", "class", "l", "xi", "oracle"] } else { &["lprime", "class", "l", "xi"] };
    let mut t = Table::new("xi", cols).with_meta("family", fam.to_string());
    let mut row = vec![json!(lp), json!(fam.render_class(c)), json!(l), int(&xi_closed_form(lp, c, l))];
    if oracle {
        row.push(json!(xi_count_oracle(lp, c, l, ctx.group(), ctx.budget())?));
    }
    t.push(row);
    Ok(t)
}

/// A center basis label in export syntax, `[2](3)`.
pub fn render_center(ctx: &Context, b: &CenterBasisLabel) -> String {
    b.render(ctx.family().label_style())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Family;
    use crate::group::Builtin;
    use crate::wreath::DEFAULT_BUDGET;

    fn sym() -> Context {
        Context::new(Family::symmetric(), DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn pconst_rows() {
        let ctx = sym();
        let w: OmegaLabel = "2:[2]".parse().unwrap();
        let t = p_table(&ctx, 4, Some(&w), Some(&w), None).unwrap();
        let got: Vec<(String, String)> = t.rows.iter().map(|r| (cell(&r[2]), cell(&r[3]))).collect();
        assert_eq!(got, vec![("2:[]".into(), "1".into()), ("3:[3]".into(), "3".into()), ("4:[2,2]".into(), "2".into())]);
        assert_eq!(t.to_csv(), "omega1,omega2,omega,P\n2:[2],2:[2],2:[],1\n2:[2],2:[2],3:[3],3\n2:[2],2:[2],\"4:[2,2]\",2\n");
        let j = t.to_json();
        assert_eq!(j["schema"], json!(1));
        assert_eq!(j["rows"][2]["omega"], json!("4:[2,2]"));
    }

    #[test]
    fn sconst_rows() {
        let t = s_table(&sym(), 3, Some(&"[2]".parse().unwrap()), Some(&"[2]".parse().unwrap()), None).unwrap();
        let got: Vec<(String, String)> = t.rows.iter().map(|r| (cell(&r[2]), cell(&r[4]))).collect();
        assert_eq!(got, vec![("[]".into(), "3".into()), ("[3]".into(), "3".into())]);
    }

    #[test]
    fn class_listing() {
        let t = classes_table(&sym(), 3).unwrap();
        assert_eq!(t.rows.iter().filter(|r| r[0] == json!("omega")).count(), 7);
        let t = classes_table(&sym(), 0).unwrap();
        assert_eq!(t.rows.len(), 2);
        let bn = Context::new(Family::wreath_builtin(Builtin::Cyclic(2)).unwrap(), DEFAULT_BUDGET).unwrap();
        let t = classes_table(&bn, 2).unwrap();
        let at2: Vec<_> = t.rows.iter().filter(|r| r[0] == json!("center") && r[2] == json!(2)).collect();
        assert_eq!(at2.len(), 5);
        assert_eq!(at2.iter().map(|r| r[3].as_u64().unwrap()).sum::<u64>(), 8);
    }

    #[test]
    fn text_layout() {
        let t = xi_table(&sym(), 1, &ClassLabel::identity(), 3, true).unwrap();
        assert_eq!(t.to_text(), "lprime  class  l  xi  oracle\n1       []     3  3   3\n");
    }
}
