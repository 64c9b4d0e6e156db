//! Finite-table right-ideal morphisms: validation, classification,
//! application, domain and image codes, preimages, restriction, composition,
//! normalization, and equality of the induced maps on the Cantor space.
//!
//! A right-ideal morphism satisfies `f(x v) = f(x) v`; it is determined by a
//! finite table on the initial-factor code generating its domain. The empty
//! table is the zero morphism.

use std::collections::HashMap;
use std::fmt;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::word::{Context, Word};

/// The finest class a table belongs to. Domain codes of valid tables are
/// always finite initial-factor codes (`Rm0`); `Rm1` adds a joinless domain
/// code, `Rm2` a joinless image code, and `Norm` requires the value set to
/// equal the image code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MorphismClass {
    Rm0,
    Rm1,
    Rm2,
    Norm,
}

impl fmt::Display for MorphismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismClass::Rm0 => "RM0",
            MorphismClass::Rm1 => "RM1",
            MorphismClass::Rm2 => "RM2",
            MorphismClass::Norm => "NORM",
        })
    }
}

fn shape_fits(shape: &[usize], w: &Word) -> bool {
    shape
        .iter()
        .enumerate()
        .all(|(i, s)| *s <= w.coord(i).len())
}

fn truncate_coords<'a>(w: &'a Word, shape: &[usize]) -> Vec<&'a str> {
    shape
        .iter()
        .enumerate()
        .map(|(i, s)| &w.coord(i)[..*s])
        .collect()
}

/// Key lookup structure grouping table keys by coordinate-length shape, so
/// that finding the key below a given word is a handful of hash probes
/// instead of a scan. Built once per bulk operation.
pub(crate) struct TableIndex<'a> {
    entries: &'a [(Word, Word)],
    groups: Vec<(Vec<usize>, HashMap<Vec<&'a str>, usize>)>,
}

impl<'a> TableIndex<'a> {
    pub(crate) fn new(table: &'a Table) -> Self {
        let mut groups: Vec<(Vec<usize>, HashMap<Vec<&'a str>, usize>)> = Vec::new();
        for (idx, (key, _)) in table.entries.iter().enumerate() {
            let shape = key.shape();
            let coords: Vec<&str> = key.coords().iter().map(|s| s.as_str()).collect();
            match groups.iter_mut().find(|(s, _)| *s == shape) {
                Some((_, map)) => {
                    map.insert(coords, idx);
                }
                None => {
                    let mut map = HashMap::new();
                    map.insert(coords, idx);
                    groups.push((shape, map));
                }
            }
        }
        TableIndex {
            entries: &table.entries,
            groups,
        }
    }

    /// Index of the first table entry (in the fixed order) whose key is an
    /// initial factor of `x`.
    fn matching_entry(&self, x: &Word) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (shape, map) in &self.groups {
            if shape_fits(shape, x) {
                if let Some(&i) = map.get(&truncate_coords(x, shape)) {
                    best = Some(best.map_or(i, |b| b.min(i)));
                }
            }
        }
        best
    }

    pub(crate) fn apply(&self, x: &Word) -> Option<Word> {
        let i = self.matching_entry(x)?;
        let (key, value) = &self.entries[i];
        let rest = key.quotient(x).expect("key is an initial factor");
        Some(value.concat(&rest).expect("same context"))
    }
}

/// A finite-table right-ideal morphism. Keys form an initial-factor code,
/// and on any common extension of two join-comparable keys the entries must
/// induce the same value, so the table really is the restriction of a
/// morphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Table {
    ctx: Context,
    entries: Vec<(Word, Word)>,
}

impl Table {
    pub fn new(ctx: Context, entries: Vec<(Word, Word)>) -> Result<Self> {
        for (k, v) in &entries {
            k.context().check_same(&ctx)?;
            v.context().check_same(&ctx)?;
        }
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DomainNotAntichain);
            }
        }
        let uniform = match entries.first() {
            None => true,
            Some((k, _)) => {
                let shape = k.shape();
                entries.iter().all(|(key, _)| key.shape() == shape)
            }
        };
        if !uniform {
            for (i, (ki, vi)) in entries.iter().enumerate() {
                for (kj, vj) in &entries[i + 1..] {
                    if ki.is_initial_factor(kj)? || kj.is_initial_factor(ki)? {
                        return Err(Error::DomainNotAntichain);
                    }
                    if let Some(z) = ki.join(kj)? {
                        let via_i = vi.concat(&ki.quotient(&z)?)?;
                        let via_j = vj.concat(&kj.quotient(&z)?)?;
                        if via_i != via_j {
                            return Err(Error::InconsistentTable);
                        }
                    }
                }
            }
        }
        Ok(Table { ctx, entries })
    }

    /// The zero morphism: empty table, nowhere defined.
    pub fn zero(ctx: Context) -> Self {
        Table {
            ctx,
            entries: Vec::new(),
        }
    }

    /// The identity morphism, keyed on the empty tuple.
    pub fn identity(ctx: Context) -> Self {
        let eps = Word::epsilon(ctx);
        Table {
            ctx,
            entries: vec![(eps.clone(), eps)],
        }
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn entries(&self) -> &[(Word, Word)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Maximum coordinate length over keys and values.
    pub fn maxlen(&self) -> usize {
        self.entries
            .iter()
            .map(|(k, v)| k.maxlen().max(v.maxlen()))
            .max()
            .unwrap_or(0)
    }

    /// The key set: the initial-factor code generating the domain.
    pub fn dom_code(&self) -> Code {
        Code::new(self.ctx, self.entries.iter().map(|(k, _)| k.clone()))
            .expect("keys share the table context")
    }

    /// The set of table values (deduplicated, not necessarily an antichain).
    pub fn value_code(&self) -> Code {
        Code::new(self.ctx, self.entries.iter().map(|(_, v)| v.clone()))
            .expect("values share the table context")
    }

    /// The initial-factor code generating the image: the minimal elements of
    /// the value set under the initial-factor order.
    pub fn image_code(&self) -> Code {
        let values = self.value_code();
        let mut keep: Vec<Word> = Vec::new();
        'outer: for v in values.iter() {
            for u in values.iter() {
                if u != v && u.is_initial_factor(v).unwrap_or(false) {
                    continue 'outer;
                }
            }
            keep.push(v.clone());
        }
        Code::new(self.ctx, keep).expect("same context")
    }

    pub fn classify(&self) -> MorphismClass {
        if !self.dom_code().is_joinless() {
            return MorphismClass::Rm0;
        }
        let image = self.image_code();
        if !image.is_joinless() {
            return MorphismClass::Rm1;
        }
        if self.value_code() == image {
            MorphismClass::Norm
        } else {
            MorphismClass::Rm2
        }
    }

    /// Applies the morphism: if some key `p` is an initial factor of `x`,
    /// the result is `f(p)` concatenated with `p`-to-`x` quotient; otherwise
    /// the morphism is undefined at `x`.
    pub fn apply(&self, x: &Word) -> Option<Word> {
        if x.context() != self.ctx {
            return None;
        }
        for (key, value) in &self.entries {
            if key.is_initial_factor(x).unwrap_or(false) {
                let rest = key.quotient(x).expect("prefix checked");
                return Some(value.concat(&rest).expect("same context"));
            }
        }
        None
    }

    /// The code generating the inverse image of the right ideal generated by
    /// `s`. Requires the length condition on image values: whenever a value
    /// has a join with an element of `s`, the value must be an initial
    /// factor of it. Without that condition the formula below does not
    /// generate the inverse-image ideal.
    pub fn preimage_code(&self, s: &Code) -> Result<Code> {
        self.ctx.check_same(&s.context())?;
        let values = self.value_code();
        for q in s.iter() {
            for y in values.iter() {
                if y.join(q)?.is_some() && !y.is_initial_factor(q)? {
                    return Err(Error::StarConditionViolated);
                }
            }
        }
        let mut out = Vec::new();
        for (p, y) in &self.entries {
            for q in s.iter() {
                if y.is_initial_factor(q)? {
                    out.push(p.concat(&y.quotient(q)?)?);
                }
            }
        }
        Code::new(self.ctx, out)
    }

    /// The table with key set `c`, each mapped through `self`. Every element
    /// of `c` must lie in the domain ideal.
    pub fn restrict(&self, c: &Code) -> Result<Table> {
        self.ctx.check_same(&c.context())?;
        if !c.is_initial_factor_code() {
            return Err(Error::DomainNotAntichain);
        }
        let index = TableIndex::new(self);
        let mut entries = Vec::with_capacity(c.len());
        for x in c.iter() {
            match index.apply(x) {
                Some(v) => entries.push((x.clone(), v)),
                None => return Err(Error::OutsideDomain),
            }
        }
        Table::new(self.ctx, entries)
    }

    /// The table of `self` composed after `inner`. For each inner entry
    /// `p -> y` and outer key `q` such that `z = join(y, q)` exists, the
    /// composite is defined on `p` extended by the quotient of `y` into `z`,
    /// with value the outer value extended by the quotient of `q` into `z`.
    /// Keys dominated by a smaller composite key are dropped; their values
    /// agree since both tables are morphism tables.
    pub fn compose(&self, inner: &Table) -> Result<Table> {
        self.ctx.check_same(&inner.ctx)?;
        let mut groups: Vec<(Vec<usize>, HashMap<Vec<&str>, usize>, Vec<usize>)> = Vec::new();
        for (idx, (q, _)) in self.entries.iter().enumerate() {
            let shape = q.shape();
            let coords: Vec<&str> = q.coords().iter().map(|s| s.as_str()).collect();
            match groups.iter_mut().find(|(s, _, _)| *s == shape) {
                Some((_, map, all)) => {
                    map.insert(coords, idx);
                    all.push(idx);
                }
                None => {
                    let mut map = HashMap::new();
                    map.insert(coords, idx);
                    groups.push((shape, map, vec![idx]));
                }
            }
        }
        let mut raw: Vec<(Word, Word)> = Vec::new();
        for (p, y) in &inner.entries {
            for (shape, map, all) in &groups {
                if shape_fits(shape, y) {
                    if let Some(&i) = map.get(&truncate_coords(y, shape)) {
                        let (q, gq) = &self.entries[i];
                        let val = gq.concat(&q.quotient(y)?)?;
                        raw.push((p.clone(), val));
                    }
                } else {
                    for &i in all {
                        let (q, gq) = &self.entries[i];
                        if let Some(z) = y.join(q)? {
                            let key = p.concat(&y.quotient(&z)?)?;
                            let val = gq.concat(&q.quotient(&z)?)?;
                            raw.push((key, val));
                        }
                    }
                }
            }
        }
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        raw.dedup_by(|a, b| {
            let same = a.0 == b.0;
            if same {
                debug_assert_eq!(a.1, b.1, "duplicate composite key with conflicting values");
            }
            same
        });
        let minimal = prune_dominated_keys(raw)?;
        Table::new(self.ctx, minimal)
    }

    /// An equivalent normal table: joinless domain and image codes with the
    /// value set equal to the image code. The domain code is refined to a
    /// joinless code only when necessary, the value set likewise; the
    /// resulting maximum lengths stay within three times the input's (twice
    /// for the image code).
    pub fn normalize(&self, cap: u64) -> Result<Table> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let p = self.dom_code();
        let c = if p.is_joinless() {
            p
        } else {
            let level = p.maxlen();
            p.level_refine(level, cap)?
        };
        let h = self.restrict(&c)?;
        let t = h.value_code();
        let s = if t.is_joinless() {
            t
        } else {
            let level = t.maxlen();
            t.level_refine(level, cap)?
        };
        let d = h.preimage_code(&s)?;
        h.restrict(&d)
    }

    /// Equality of the induced maps on the Cantor space, decided as
    /// partial-function equality on the level set at the common maximum
    /// length of both tables.
    pub fn equiv_fin(&self, other: &Table, cap: u64) -> Result<bool> {
        self.ctx.check_same(&other.ctx)?;
        let level = self.maxlen().max(other.maxlen());
        let points = Code::all_words_of_level(self.ctx, level, cap)?;
        let a = TableIndex::new(self);
        let b = TableIndex::new(other);
        for x in points.iter() {
            if a.apply(x) != b.apply(x) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Injectivity of the induced morphism, decided on the normalized table:
    /// a normal table is injective iff its values are pairwise distinct.
    pub fn is_injective(&self, cap: u64) -> Result<bool> {
        let norm = self.normalize(cap)?;
        let mut values: Vec<&Word> = norm.entries.iter().map(|(_, v)| v).collect();
        values.sort();
        Ok(values.windows(2).all(|w| w[0] != w[1]))
    }
}

/// Drops entries whose key lies strictly above another key. Needed only for
/// non-joinless domain codes, where the pairwise composite construction can
/// emit redundant comparable keys.
fn prune_dominated_keys(entries: Vec<(Word, Word)>) -> Result<Vec<(Word, Word)>> {
    let uniform = match entries.first() {
        None => true,
        Some((k, _)) => {
            let shape = k.shape();
            entries.iter().all(|(key, _)| key.shape() == shape)
        }
    };
    if uniform {
        return Ok(entries);
    }
    let mut keep = Vec::with_capacity(entries.len());
    'outer: for (i, (k, v)) in entries.iter().enumerate() {
        for (j, (other, _)) in entries.iter().enumerate() {
            if i != j && other.is_initial_factor(k)? && other != k {
                continue 'outer;
            }
        }
        keep.push((k.clone(), v.clone()));
    }
    Ok(keep)
}
