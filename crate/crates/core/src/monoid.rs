//! Monoid-level algebra over a user-supplied generating set: word
//! evaluation, the word-problem decision procedure, regularity, units,
//! factorization through one-dimensional tables, and identity witnesses.

use std::collections::BTreeMap;

use crate::code::{check_level_size, Code};
use crate::error::{Error, Result};
use crate::table::{Table, TableIndex};
use crate::word::{Context, Word};

/// A finite set of named generator tables. Every generator must have a
/// joinless domain code.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    ctx: Context,
    tables: BTreeMap<String, Table>,
}

impl GeneratorSet {
    pub fn new(tables: BTreeMap<String, Table>) -> Result<Self> {
        let mut ctx = None;
        for (name, table) in &tables {
            if name.is_empty() {
                return Err(Error::UnknownGenerator(String::new()));
            }
            match ctx {
                None => ctx = Some(table.context()),
                Some(c) => table.context().check_same(&c)?,
            }
            if !table.dom_code().is_joinless() {
                return Err(Error::GeneratorNotRm1(name.clone()));
            }
        }
        let ctx = ctx.ok_or(Error::EmptyGeneratorSet)?;
        Ok(GeneratorSet { ctx, tables })
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.tables.keys().map(|s| s.as_str())
    }

    pub fn get(&self, name: &str) -> Option<&Table> {
        self.tables.get(name)
    }

    /// The largest maximum length over the generator tables.
    pub fn max_generator_len(&self) -> usize {
        self.tables.values().map(|t| t.maxlen()).max().unwrap_or(0)
    }

    /// Six times the largest generator length; the constant in the cubic
    /// level bound for the word problem.
    pub fn c_gamma(&self) -> usize {
        6 * self.max_generator_len()
    }

    fn resolve(&self, word: &MonoidWord) -> Result<Vec<&Table>> {
        word.symbols()
            .iter()
            .map(|s| {
                self.tables
                    .get(s)
                    .ok_or_else(|| Error::UnknownGenerator(s.clone()))
            })
            .collect()
    }

    /// Evaluates a word to a normal table equivalent to the composite of its
    /// generators. The list is padded with identities to a power-of-two
    /// length, then composed pairwise with a normalization after every
    /// pairing round; the result's maximum length is at most `6 c t^3` for
    /// words of length `t` over generators of maximum length `c`.
    pub fn eval_word(&self, word: &MonoidWord, cap: u64) -> Result<Table> {
        let resolved = self.resolve(word)?;
        if resolved.is_empty() {
            return Ok(Table::identity(self.ctx));
        }
        // application order: rightmost symbol acts first
        let mut layer: Vec<Table> = resolved.into_iter().rev().cloned().collect();
        if layer.len() == 1 {
            return layer[0].normalize(cap);
        }
        let padded = layer.len().next_power_of_two();
        layer.resize(padded, Table::identity(self.ctx));
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len() / 2);
            for pair in layer.chunks(2) {
                let composite = pair[1].compose(&pair[0])?;
                next.push(composite.normalize(cap)?);
            }
            layer = next;
        }
        Ok(layer.pop().expect("one table remains"))
    }

    /// Decides whether two words denote the same monoid element, by
    /// evaluating both to tables and comparing the induced maps.
    pub fn word_equal(&self, u: &MonoidWord, v: &MonoidWord, cap: u64) -> Result<bool> {
        let fu = self.eval_word(u, cap)?;
        let fv = self.eval_word(v, cap)?;
        fu.equiv_fin(&fv, cap)
    }

    /// The certificate form of the word problem: enumerate every point at
    /// the cubic level `c_gamma * max(|u|^3, |v|^3)` and push it through the
    /// generators of each word, comparing results pointwise. Exact but
    /// usually far more expensive than the table route; intended as a
    /// cross-check.
    pub fn word_equal_certificate(&self, u: &MonoidWord, v: &MonoidWord, cap: u64) -> Result<bool> {
        let fu = self.resolve(u)?;
        let fv = self.resolve(v)?;
        let level = self.c_gamma() * u.len().pow(3).max(v.len().pow(3));
        check_level_size(self.ctx, level, cap)?;
        let iu: Vec<TableIndex> = fu.iter().rev().map(|t| TableIndex::new(t)).collect();
        let iv: Vec<TableIndex> = fv.iter().rev().map(|t| TableIndex::new(t)).collect();
        let chain = |indices: &[TableIndex], x: &Word| -> Option<Word> {
            let mut cur = x.clone();
            for idx in indices {
                cur = idx.apply(&cur)?;
            }
            Some(cur)
        };
        let points = Code::all_words_of_level(self.ctx, level, cap)?;
        for x in points.iter() {
            if chain(&iu, x) != chain(&iv, x) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A word over generator names. Symbols act right-to-left: the first symbol
/// is the outermost factor of the composite.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonoidWord {
    symbols: Vec<String>,
}

impl MonoidWord {
    pub fn new(symbols: Vec<String>) -> Self {
        MonoidWord { symbols }
    }

    /// Splits on whitespace; the empty string is the empty word.
    pub fn parse(text: &str) -> Self {
        MonoidWord {
            symbols: text.split_whitespace().map(str::to_owned).collect(),
        }
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Concatenation: `self` acts after `other`.
    pub fn then_after(&self, other: &MonoidWord) -> MonoidWord {
        let mut symbols = self.symbols.clone();
        symbols.extend(other.symbols.iter().cloned());
        MonoidWord { symbols }
    }
}

impl std::fmt::Display for MonoidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.symbols.join(" "))
    }
}

/// A quasi-inverse: with `phi` the normalization of `f`, returns a table
/// `f'` keyed on the image code of `phi`, sending each image element to its
/// lexicographically smallest preimage key. Satisfies `phi f' phi = phi` up
/// to equivalence.
pub fn pseudo_inverse(f: &Table, cap: u64) -> Result<Table> {
    let phi = f.normalize(cap)?;
    let mut chosen: BTreeMap<Word, Word> = BTreeMap::new();
    for (key, value) in phi.entries() {
        chosen
            .entry(value.clone())
            .and_modify(|existing| {
                if key.lex_cmp(existing).is_lt() {
                    *existing = key.clone();
                }
            })
            .or_insert_with(|| key.clone());
    }
    Table::new(f.context(), chosen.into_iter().collect())
}

/// If the normalization of `f` is total, surjective, and injective, returns
/// its inverse table (keys and values swapped); otherwise `None`.
pub fn unit_inverse(f: &Table, cap: u64) -> Result<Option<Table>> {
    let phi = f.normalize(cap)?;
    if !phi.dom_code().is_maximal_joinless(cap)? {
        return Ok(None);
    }
    if !phi.image_code().is_maximal_joinless(cap)? {
        return Ok(None);
    }
    let mut values: Vec<&Word> = phi.entries().iter().map(|(_, v)| v).collect();
    values.sort();
    if values.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    let swapped = phi
        .entries()
        .iter()
        .map(|(k, v)| (v.clone(), k.clone()))
        .collect();
    Ok(Some(Table::new(f.context(), swapped)?))
}

/// Whether `f` represents an element of the group of units, i.e. a
/// bijection of the Cantor space.
pub fn is_unit(f: &Table, cap: u64) -> Result<bool> {
    Ok(unit_inverse(f, cap)?.is_some())
}

/// A maximal prefix code over one coordinate with exactly `size` elements,
/// built as a left comb: starting from the singleton empty string, the
/// lexicographically first leaf is replaced by its k children until the
/// cardinality is reached. `size` must be 1 mod (k-1).
fn left_comb(ctx: Context, size: usize) -> Result<Vec<String>> {
    let k = ctx.alphabet_size() as usize;
    if size == 0 || (size - 1) % (k - 1) != 0 {
        return Err(Error::Internal(format!(
            "no maximal prefix code of cardinality {size} over {k} letters"
        )));
    }
    let mut leaves: Vec<String> = vec![String::new()];
    while leaves.len() < size {
        leaves.sort();
        let first = leaves.remove(0);
        for ch in ctx.letters() {
            let mut s = first.clone();
            s.push(ch);
            leaves.push(s);
        }
    }
    leaves.sort();
    Ok(leaves)
}

fn embed_first_coordinate(ctx: Context, s: &str) -> Result<Word> {
    let mut coords = vec![String::new(); ctx.dim()];
    coords[0] = s.to_owned();
    Word::new(ctx, coords)
}

/// Pairs the elements of `keys` and `values` in the fixed total order.
fn bijection_table(ctx: Context, keys: &Code, values: &Code) -> Result<Table> {
    if keys.len() != values.len() {
        return Err(Error::Internal(
            "bijection requires equal cardinalities".into(),
        ));
    }
    let entries = keys
        .iter()
        .cloned()
        .zip(values.iter().cloned())
        .collect::<Vec<_>>();
    Table::new(ctx, entries)
}

/// Factors `f` as `g2 h g1` with `g1`, `g2` units and `h` acting only on
/// the first coordinate. The domain and image codes of the normalization
/// are extended to maximal joinless codes by their complements where
/// necessary, then matched bijectively with maximal prefix codes of equal
/// cardinality embedded in coordinate one.
pub fn factorize(f: &Table, cap: u64) -> Result<(Table, Table, Table)> {
    let ctx = f.context();
    if ctx.dim() < 2 {
        return Err(Error::DimensionTooSmall);
    }
    if f.is_zero() {
        return Err(Error::ZeroMorphism);
    }
    let phi = f.normalize(cap)?;
    let dom = phi.dom_code();
    let img = phi.image_code();

    let dom_union = if dom.is_maximal_joinless(cap)? {
        dom
    } else {
        let complement = dom.complement(cap)?;
        dom.union(&complement)?
    };
    let img_union = if img.is_maximal_joinless(cap)? {
        img
    } else {
        let complement = img.complement(cap)?;
        img.union(&complement)?
    };

    let p_code = Code::new(
        ctx,
        left_comb(ctx, dom_union.len())?
            .iter()
            .map(|s| embed_first_coordinate(ctx, s))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let q_code = Code::new(
        ctx,
        left_comb(ctx, img_union.len())?
            .iter()
            .map(|s| embed_first_coordinate(ctx, s))
            .collect::<Result<Vec<_>>>()?,
    )?;

    let g1 = bijection_table(ctx, &dom_union, &p_code)?;
    let g2 = bijection_table(ctx, &q_code, &img_union)?;
    let g1_inv = unit_inverse(&g1, cap)?
        .ok_or_else(|| Error::Internal("g1 must be a unit by construction".into()))?;
    let g2_inv = unit_inverse(&g2, cap)?
        .ok_or_else(|| Error::Internal("g2 must be a unit by construction".into()))?;
    let h = g2_inv.compose(&phi.compose(&g1_inv)?)?;
    Ok((g2, h, g1))
}

/// For nonzero `f`, tables `alpha`, `beta` with `beta f alpha` equivalent to
/// the identity: pick the first table entry `x -> y`, send the empty tuple
/// to `x`, and send `y` back to the empty tuple.
pub fn jsimplicity_witness(f: &Table) -> Result<(Table, Table)> {
    let (x, y) = f.entries().first().cloned().ok_or(Error::ZeroMorphism)?;
    let ctx = f.context();
    let eps = Word::epsilon(ctx);
    let alpha = Table::new(ctx, vec![(eps.clone(), x)])?;
    let beta = Table::new(ctx, vec![(y, eps)])?;
    Ok((alpha, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::DEFAULT_CAP;

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

    fn gens(c: Context, list: &[(&str, Table)]) -> GeneratorSet {
        GeneratorSet::new(
            list.iter()
                .map(|(n, t)| (n.to_string(), t.clone()))
                .collect(),
        )
        .unwrap()
    }

    fn fixture_gens(c: Context) -> GeneratorSet {
        let f = table(c, &[(&["0"], &["0"]), (&["1"], &["10"])]);
        let g = table(c, &[(&["0"], &["0"]), (&["1"], &["0"])]);
        let h = table(c, &[(&["0"], &["0"]), (&["1"], &["00"])]);
        let r = Table::identity(c)
            .restrict(
                &Code::epsilon(c)
                    .one_step_restriction(&Word::epsilon(c), 0)
                    .unwrap(),
            )
            .unwrap();
        gens(c, &[("f", f), ("g", g), ("h", h), ("r", r)])
    }

    #[test]
    fn eval_word_examples() {
        let c = ctx(1, 2);
        let gamma = fixture_gens(c);
        let empty = gamma
            .eval_word(&MonoidWord::parse(""), DEFAULT_CAP)
            .unwrap();
        assert_eq!(empty, Table::identity(c));

        let single = gamma
            .eval_word(&MonoidWord::parse("f"), DEFAULT_CAP)
            .unwrap();
        assert!(single
            .equiv_fin(gamma.get("f").unwrap(), DEFAULT_CAP)
            .unwrap());

        let gf = gamma
            .eval_word(&MonoidWord::parse("g f"), DEFAULT_CAP)
            .unwrap();
        let expected = table(c, &[(&["0"], &["0"]), (&["1"], &["00"])]);
        assert!(gf.equiv_fin(&expected, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn word_equal_examples() {
        let c = ctx(1, 2);
        let gamma = fixture_gens(c);
        let u = MonoidWord::parse("g f");
        assert!(gamma.word_equal(&u, &u, DEFAULT_CAP).unwrap());
        assert!(gamma
            .word_equal(
                &MonoidWord::parse("f"),
                &MonoidWord::parse("f r"),
                DEFAULT_CAP
            )
            .unwrap());
        assert!(gamma
            .word_equal(&u, &MonoidWord::parse("h"), DEFAULT_CAP)
            .unwrap());
        assert!(!gamma
            .word_equal(
                &MonoidWord::parse("f"),
                &MonoidWord::parse("g"),
                DEFAULT_CAP
            )
            .unwrap());
        assert_eq!(
            gamma.word_equal(
                &MonoidWord::parse("f"),
                &MonoidWord::parse("nope"),
                DEFAULT_CAP
            ),
            Err(Error::UnknownGenerator("nope".into()))
        );
    }

    #[test]
    fn certificate_route_agrees_on_small_instances() {
        let c = ctx(1, 2);
        let gamma = fixture_gens(c);
        for (u, v) in [("g f", "h"), ("f", "g"), ("f r", "f"), ("", "")] {
            let u = MonoidWord::parse(u);
            let v = MonoidWord::parse(v);
            let by_table = gamma.word_equal(&u, &v, DEFAULT_CAP).unwrap();
            let by_certificate = gamma.word_equal_certificate(&u, &v, DEFAULT_CAP);
            match by_certificate {
                Ok(b) => assert_eq!(b, by_table),
                Err(Error::EnumerationCapExceeded { .. }) => {}
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    #[test]
    fn pseudo_inverse_examples() {
        let c = ctx(1, 2);
        let id = Table::identity(c);
        assert_eq!(pseudo_inverse(&id, DEFAULT_CAP).unwrap(), id);

        let phi = table(c, &[(&["00"], &["00"]), (&["01"], &["01"]), (&["1"], &["00"])]);
        let inv = pseudo_inverse(&phi, DEFAULT_CAP).unwrap();
        assert_eq!(inv, table(c, &[(&["00"], &["00"]), (&["01"], &["01"])]));
        let round = phi
            .compose(&inv.compose(&phi).unwrap())
            .unwrap();
        assert!(round.equiv_fin(&phi, DEFAULT_CAP).unwrap());

        let z = Table::zero(c);
        assert!(pseudo_inverse(&z, DEFAULT_CAP).unwrap().is_zero());
    }

    #[test]
    fn unit_examples() {
        let c = ctx(1, 2);
        let id = Table::identity(c);
        assert_eq!(unit_inverse(&id, DEFAULT_CAP).unwrap(), Some(id.clone()));

        let swap = table(
            c,
            &[
                (&["00"], &["00"]),
                (&["01"], &["10"]),
                (&["10"], &["01"]),
                (&["11"], &["11"]),
            ],
        );
        assert!(is_unit(&swap, DEFAULT_CAP).unwrap());

        let f = table(c, &[(&["0"], &["0"]), (&["1"], &["00"])]);
        assert!(!is_unit(&f, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn left_comb_sizes() {
        let c = ctx(1, 2);
        assert_eq!(left_comb(c, 1).unwrap(), vec![""]);
        assert_eq!(left_comb(c, 3).unwrap(), vec!["00", "01", "1"]);
        let c3 = ctx(1, 3);
        assert_eq!(left_comb(c3, 3).unwrap().len(), 3);
        assert!(left_comb(c3, 4).is_err());
    }

    fn check_factorization(f: &Table) {
        let (g2, h, g1) = factorize(f, DEFAULT_CAP).unwrap();
        assert!(is_unit(&g1, DEFAULT_CAP).unwrap());
        assert!(is_unit(&g2, DEFAULT_CAP).unwrap());
        for (k, v) in h.entries() {
            for i in 1..f.context().dim() {
                assert!(k.coord(i).is_empty());
                assert!(v.coord(i).is_empty());
            }
        }
        let product = g2.compose(&h.compose(&g1).unwrap()).unwrap();
        let phi = f.normalize(DEFAULT_CAP).unwrap();
        assert!(product.equiv_fin(&phi, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn factorize_examples() {
        let c = ctx(2, 2);
        check_factorization(&Table::identity(c));
        let rm2 = table(
            c,
            &[
                (&["0", "0"], &["", ""]),
                (&["0", "1"], &["", "0"]),
                (&["1", "0"], &["0", ""]),
            ],
        );
        check_factorization(&rm2);
        // non-maximal domain code
        let partial = table(c, &[(&["0", "0"], &["1", "1"])]);
        check_factorization(&partial);

        assert_eq!(
            factorize(&Table::zero(c), DEFAULT_CAP),
            Err(Error::ZeroMorphism)
        );
        let c1 = ctx(1, 2);
        assert_eq!(
            factorize(&Table::identity(c1), DEFAULT_CAP),
            Err(Error::DimensionTooSmall)
        );
    }

    #[test]
    fn witness_examples() {
        let c = ctx(1, 2);
        let id = Table::identity(c);
        let (alpha, beta) = jsimplicity_witness(&id).unwrap();
        assert_eq!(alpha, id);
        assert_eq!(beta, id);

        let f = table(c, &[(&["0"], &["0"]), (&["1"], &["00"])]);
        let (alpha, beta) = jsimplicity_witness(&f).unwrap();
        let sandwich = beta.compose(&f.compose(&alpha).unwrap()).unwrap();
        assert!(sandwich.equiv_fin(&id, DEFAULT_CAP).unwrap());

        // the choice x=1, y=00 from the other end of the table also works
        let alpha = table(c, &[(&[""], &["1"])]);
        let beta = table(c, &[(&["00"], &[""])]);
        let sandwich = beta.compose(&f.compose(&alpha).unwrap()).unwrap();
        assert!(sandwich.equiv_fin(&id, DEFAULT_CAP).unwrap());

        assert_eq!(jsimplicity_witness(&Table::zero(c)), Err(Error::ZeroMorphism));
    }

    #[test]
    fn witness_on_two_dimensional_fixture() {
        let c = ctx(2, 2);
        let rm2 = table(
            c,
            &[
                (&["0", "0"], &["", ""]),
                (&["0", "1"], &["", "0"]),
                (&["1", "0"], &["0", ""]),
            ],
        );
        let (alpha, beta) = jsimplicity_witness(&rm2).unwrap();
        assert_eq!(alpha, table(c, &[(&["", ""], &["0", "0"])]));
        assert_eq!(beta, Table::identity(c));
        let sandwich = beta.compose(&rm2.compose(&alpha).unwrap()).unwrap();
        assert!(sandwich
            .equiv_fin(&Table::identity(c), DEFAULT_CAP)
            .unwrap());
    }
}
