//! Brute-force reference semantics: the action of a table on level-l
//! truncations of the Cantor space.
//!
//! Everything here works by plain string prefix matching and concatenation,
//! deliberately sharing none of the join machinery it is used to validate.

use std::collections::BTreeMap;

use crate::code::check_level_size;
use crate::error::{Error, Result};
use crate::table::Table;
use crate::word::{Context, Word};

/// A partial map from the level set to words, recorded coordinate-wise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedAction {
    level: usize,
    map: BTreeMap<Vec<String>, Vec<String>>,
}

impl TruncatedAction {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn map(&self) -> &BTreeMap<Vec<String>, Vec<String>> {
        &self.map
    }
}

/// Applies a table to a point using only string operations: scan for an
/// entry whose every coordinate is a prefix of the point, then paste the
/// value onto the leftover suffixes.
pub fn oracle_apply(table: &Table, x: &Word) -> Option<Word> {
    if x.context() != table.context() {
        return None;
    }
    let n = table.context().dim();
    'entry: for (key, value) in table.entries() {
        for i in 0..n {
            if !x.coord(i).starts_with(key.coord(i)) {
                continue 'entry;
            }
        }
        let coords: Vec<String> = (0..n)
            .map(|i| {
                let mut s = String::from(value.coord(i));
                s.push_str(&x.coord(i)[key.coord(i).len()..]);
                s
            })
            .collect();
        return Word::new(table.context(), coords).ok();
    }
    None
}

fn enumerate_level(ctx: Context, level: usize) -> Vec<Vec<String>> {
    let mut strings = vec![String::new()];
    for _ in 0..level {
        let mut next = Vec::with_capacity(strings.len() * ctx.alphabet_size() as usize);
        for s in &strings {
            for ch in ctx.letters() {
                let mut t = s.clone();
                t.push(ch);
                next.push(t);
            }
        }
        strings = next;
    }
    let mut tuples: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..ctx.dim() {
        let mut next = Vec::with_capacity(tuples.len() * strings.len());
        for t in &tuples {
            for s in &strings {
                let mut u = t.clone();
                u.push(s.clone());
                next.push(u);
            }
        }
        tuples = next;
    }
    tuples
}

/// Records the action of `f` on every point of the level set.
pub fn truncated_action(f: &Table, level: usize, cap: u64) -> Result<TruncatedAction> {
    let keys_maxlen = f
        .entries()
        .iter()
        .map(|(k, _)| k.maxlen())
        .max()
        .unwrap_or(0);
    if level < keys_maxlen {
        return Err(Error::LevelTooSmall {
            level,
            required: keys_maxlen,
        });
    }
    let ctx = f.context();
    check_level_size(ctx, level, cap)?;
    let mut map = BTreeMap::new();
    for coords in enumerate_level(ctx, level) {
        let x = Word::new(ctx, coords.clone())?;
        if let Some(y) = oracle_apply(f, &x) {
            map.insert(coords, y.coords().to_vec());
        }
    }
    Ok(TruncatedAction { level, map })
}

/// The two tables induce the same map on the Cantor space iff their
/// truncated actions agree at the common maximum length.
pub fn oracle_equal(f: &Table, g: &Table, cap: u64) -> Result<bool> {
    f.context().check_same(&g.context())?;
    let level = f.maxlen().max(g.maxlen());
    Ok(truncated_action(f, level, cap)? == truncated_action(g, level, cap)?)
}

/// Validates `compose` pointwise: at a level one past the sum of the two
/// maximum lengths, the composite table must act exactly as `g` after `f`,
/// with matching undefinedness.
pub fn oracle_compose_check(g: &Table, f: &Table, cap: u64) -> Result<bool> {
    g.context().check_same(&f.context())?;
    let ctx = f.context();
    let level = f.maxlen() + g.maxlen() + 1;
    check_level_size(ctx, level, cap)?;
    let composite = g.compose(f)?;
    for coords in enumerate_level(ctx, level) {
        let x = Word::new(ctx, coords)?;
        let direct = oracle_apply(&composite, &x);
        let stepwise = oracle_apply(f, &x).and_then(|y| oracle_apply(g, &y));
        if direct != stepwise {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{Code, DEFAULT_CAP};

    fn ctx(n: usize, k: u8) -> Context {
        Context::new(n, k).unwrap()
    }

    fn w(c: Context, coords: &[&str]) -> Word {
        Word::new(c, coords.iter().copied()).unwrap()
    }

    fn table(c: Context, entries: &[(&[&str], &[&str])]) -> Table {
        Table::new(
            c,
            entries
                .iter()
                .map(|(k, v)| (w(c, k), w(c, v)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn truncated_action_examples() {
        let c = ctx(1, 2);
        let id = Table::identity(c);
        let act = truncated_action(&id, 1, DEFAULT_CAP).unwrap();
        assert_eq!(act.map().len(), 2);
        assert_eq!(act.map()[&vec!["0".to_string()]], vec!["0".to_string()]);

        let f = table(c, &[(&["0"], &["0"]), (&["1"], &["00"])]);
        let act = truncated_action(&f, 1, DEFAULT_CAP).unwrap();
        assert_eq!(act.map()[&vec!["1".to_string()]], vec!["00".to_string()]);

        let z = Table::zero(c);
        assert!(truncated_action(&z, 2, DEFAULT_CAP).unwrap().map().is_empty());

        let g = table(c, &[(&["00"], &["0"])]);
        assert_eq!(
            truncated_action(&g, 1, DEFAULT_CAP),
            Err(Error::LevelTooSmall {
                level: 1,
                required: 2
            })
        );
    }

    #[test]
    fn oracle_equal_examples() {
        let c = ctx(1, 2);
        let f = table(c, &[(&["0"], &["0"]), (&["1"], &["10"])]);
        assert!(oracle_equal(&f, &f, DEFAULT_CAP).unwrap());

        let restricted_dom = f.dom_code().one_step_restriction(&w(c, &["1"]), 0).unwrap();
        let f_restricted = f.restrict(&restricted_dom).unwrap();
        assert!(oracle_equal(&f, &f_restricted, DEFAULT_CAP).unwrap());

        let g = table(c, &[(&["0"], &["0"]), (&["1"], &["0"])]);
        assert!(!oracle_equal(&f, &g, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn oracle_compose_examples() {
        let c1 = ctx(1, 2);
        let id = Table::identity(c1);
        assert!(oracle_compose_check(&id, &id, DEFAULT_CAP).unwrap());

        let c2 = ctx(2, 2);
        let f2 = table(
            c2,
            &[
                (&["0", "0"], &["", ""]),
                (&["0", "1"], &["", "0"]),
                (&["1", "0"], &["0", ""]),
            ],
        );
        let dom = Code::new(c2, vec![w(c2, &["0", "1"]), w(c2, &["1", "0"])]).unwrap();
        let f1 = Table::identity(c2).restrict(&dom).unwrap();
        assert!(oracle_compose_check(&f2, &f1, DEFAULT_CAP).unwrap());
    }
}
