//! Finite sets of words: code classification, set joins, the finite-set
//! equivalence of generated right ideals, level refinement, completion, and
//! complementation.
//!
//! A set is an initial-factor code when no two distinct elements are
//! comparable in the initial-factor order, and joinless when no two distinct
//! elements have a join. Two finite sets are equivalent when they generate
//! the same subset of the n-fold Cantor space; for finite sets this is
//! decidable by refining both to a common level and comparing.

use crate::error::{Error, Result};
use crate::word::{maxlen, Context, Word};

/// Default bound on level enumerations. Refining to level `l` touches
/// `k^(n*l)` words; anything above the cap is reported as an error instead
/// of exhausting memory.
pub const DEFAULT_CAP: u64 = 1 << 22;

/// Number of words at exact level `level`, compared against `cap`.
pub(crate) fn check_level_size(ctx: Context, level: usize, cap: u64) -> Result<u128> {
    let mut size: u128 = 1;
    for _ in 0..ctx.dim() * level {
        size = size.saturating_mul(ctx.alphabet_size() as u128);
        if size > cap as u128 {
            return Err(Error::EnumerationCapExceeded { needed: size, cap });
        }
    }
    Ok(size)
}

/// All digit strings of exactly `len` letters.
pub(crate) fn strings_of_length(ctx: Context, len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * ctx.alphabet_size() as usize);
        for s in &out {
            for ch in ctx.letters() {
                let mut t = s.clone();
                t.push(ch);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// A finite set of words, deduplicated and stored in the fixed total order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Code {
    ctx: Context,
    elements: Vec<Word>,
}

impl Code {
    pub fn new(ctx: Context, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut elements: Vec<Word> = Vec::new();
        for w in words {
            w.context().check_same(&ctx)?;
            elements.push(w);
        }
        elements.sort();
        elements.dedup();
        Ok(Code { ctx, elements })
    }

    pub fn empty(ctx: Context) -> Self {
        Code {
            ctx,
            elements: Vec::new(),
        }
    }

    /// The singleton code containing the empty tuple.
    pub fn epsilon(ctx: Context) -> Self {
        Code {
            ctx,
            elements: vec![Word::epsilon(ctx)],
        }
    }

    /// The code of all words whose every coordinate has length exactly
    /// `level`.
    pub fn all_words_of_level(ctx: Context, level: usize, cap: u64) -> Result<Self> {
        check_level_size(ctx, level, cap)?;
        let strings = strings_of_length(ctx, level);
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
        let elements = tuples
            .into_iter()
            .map(|coords| Word::new(ctx, coords))
            .collect::<Result<Vec<_>>>()?;
        Code::new(ctx, elements)
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.elements.binary_search(w).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.elements.iter()
    }

    pub fn maxlen(&self) -> usize {
        maxlen(self.elements.iter())
    }

    pub fn union(&self, other: &Code) -> Result<Code> {
        self.ctx.check_same(&other.ctx)?;
        Code::new(self.ctx, self.iter().chain(other.iter()).cloned())
    }

    /// True when every element has the same coordinate-length vector. Words
    /// of one shape are pairwise join-free and incomparable unless equal, so
    /// several classification checks short-circuit on this.
    fn uniform_shape(&self) -> bool {
        match self.elements.first() {
            None => true,
            Some(first) => {
                let shape = first.shape();
                self.elements.iter().all(|w| w.shape() == shape)
            }
        }
    }

    /// Pairwise joins of the two sets, keeping those that exist.
    pub fn set_join(&self, other: &Code) -> Result<Code> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = Vec::new();
        for x in &self.elements {
            for y in &other.elements {
                if let Some(z) = x.join(y)? {
                    out.push(z);
                }
            }
        }
        Code::new(self.ctx, out)
    }

    /// No two distinct elements are comparable in the initial-factor order.
    pub fn is_initial_factor_code(&self) -> bool {
        if self.uniform_shape() {
            return true;
        }
        for (i, a) in self.elements.iter().enumerate() {
            for b in &self.elements[i + 1..] {
                if a.is_initial_factor(b).unwrap_or(false) || b.is_initial_factor(a).unwrap_or(false)
                {
                    return false;
                }
            }
        }
        true
    }

    /// No two distinct elements have a join.
    pub fn is_joinless(&self) -> bool {
        if self.uniform_shape() {
            return true;
        }
        for (i, a) in self.elements.iter().enumerate() {
            for b in &self.elements[i + 1..] {
                if matches!(a.join(b), Ok(Some(_))) {
                    return false;
                }
            }
        }
        true
    }

    /// The join of the set with the full level set: every element is
    /// replaced by all of its extensions whose coordinates each have length
    /// exactly `level`. The result is a subset of the level set, hence
    /// joinless, and is equivalent to the original set.
    pub fn level_refine(&self, level: usize, cap: u64) -> Result<Code> {
        let ml = self.maxlen();
        if level < ml {
            return Err(Error::LevelTooSmall {
                level,
                required: ml,
            });
        }
        check_level_size(self.ctx, level, cap)?;
        let mut out = Vec::new();
        for w in &self.elements {
            let mut tuples: Vec<Vec<String>> = vec![Vec::new()];
            for i in 0..self.ctx.dim() {
                let exts = strings_of_length(self.ctx, level - w.coord(i).len());
                let mut next = Vec::with_capacity(tuples.len() * exts.len());
                for t in &tuples {
                    for s in &exts {
                        let mut u = t.clone();
                        let mut c = String::with_capacity(level);
                        c.push_str(w.coord(i));
                        c.push_str(s);
                        u.push(c);
                        next.push(u);
                    }
                }
                tuples = next;
            }
            for coords in tuples {
                out.push(Word::new(self.ctx, coords)?);
            }
        }
        Code::new(self.ctx, out)
    }

    /// Equivalence of generated right ideals up to finitely many elements;
    /// for finite sets this coincides with generating the same subset of the
    /// Cantor space. Decided by refining both sets to the common level
    /// `maxlen(P u Q)` and comparing.
    pub fn equiv_fin(&self, other: &Code, cap: u64) -> Result<bool> {
        self.ctx.check_same(&other.ctx)?;
        let level = self.maxlen().max(other.maxlen());
        Ok(self.level_refine(level, cap)? == other.level_refine(level, cap)?)
    }

    /// A joinless code is maximal iff it is equivalent to the singleton
    /// `{epsilon}`, i.e. it covers the whole Cantor space.
    pub fn is_maximal_joinless(&self, cap: u64) -> Result<bool> {
        if !self.is_joinless() {
            return Err(Error::NotJoinless);
        }
        self.equiv_fin(&Code::epsilon(self.ctx), cap)
    }

    /// Replaces `p` by its k children in coordinate `coord` (0-based).
    /// Preserves joinlessness, maximality, and the equivalence class.
    pub fn one_step_restriction(&self, p: &Word, coord: usize) -> Result<Code> {
        if coord >= self.ctx.dim() {
            return Err(Error::BadCoordinate {
                coord,
                dim: self.ctx.dim(),
            });
        }
        if !self.contains(p) {
            return Err(Error::ElementNotInCode);
        }
        let mut out: Vec<Word> = self.elements.iter().filter(|w| *w != p).cloned().collect();
        for ch in self.ctx.letters() {
            let mut coords: Vec<String> = p.coords().to_vec();
            coords[coord].push(ch);
            out.push(Word::new(self.ctx, coords)?);
        }
        Code::new(self.ctx, out)
    }

    /// A maximal joinless code containing `self`, with the same maximum
    /// length: the original elements plus every word of level `maxlen(self)`
    /// that does not lie in the refinement of `self`.
    pub fn completion(&self, cap: u64) -> Result<Code> {
        if !self.is_joinless() {
            return Err(Error::NotJoinless);
        }
        let level = self.maxlen();
        let refined = self.level_refine(level, cap)?;
        let full = Code::all_words_of_level(self.ctx, level, cap)?;
        let fill = full.iter().filter(|u| !refined.contains(u)).cloned();
        Code::new(self.ctx, self.iter().cloned().chain(fill))
    }

    /// The joinless code tiling the space left over by `self`: the
    /// completion minus `self`. Empty exactly when `self` is maximal.
    pub fn complement(&self, cap: u64) -> Result<Code> {
        if !self.is_joinless() {
            return Err(Error::NotJoinless);
        }
        let level = self.maxlen();
        let refined = self.level_refine(level, cap)?;
        let full = Code::all_words_of_level(self.ctx, level, cap)?;
        Code::new(
            self.ctx,
            full.iter().filter(|u| !refined.contains(u)).cloned(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize, k: u8) -> Context {
        Context::new(n, k).unwrap()
    }

    fn w(c: Context, coords: &[&str]) -> Word {
        Word::new(c, coords.iter().copied()).unwrap()
    }

    fn code(c: Context, words: &[&[&str]]) -> Code {
        Code::new(c, words.iter().map(|x| w(c, x))).unwrap()
    }

    #[test]
    fn level_enumeration() {
        let c1 = ctx(1, 2);
        assert_eq!(
            Code::all_words_of_level(c1, 1, DEFAULT_CAP).unwrap(),
            code(c1, &[&["0"], &["1"]])
        );
        let c2 = ctx(2, 2);
        assert_eq!(
            Code::all_words_of_level(c2, 1, DEFAULT_CAP).unwrap().len(),
            4
        );
        assert_eq!(
            Code::all_words_of_level(c2, 0, DEFAULT_CAP).unwrap(),
            Code::epsilon(c2)
        );
        assert!(matches!(
            Code::all_words_of_level(c2, 30, DEFAULT_CAP),
            Err(Error::EnumerationCapExceeded { .. })
        ));
    }

    #[test]
    fn set_join_examples() {
        let c = ctx(2, 2);
        let x = code(c, &[&["00", "1"]]);
        let y = code(c, &[&["0", "11"]]);
        assert_eq!(x.set_join(&y).unwrap(), code(c, &[&["00", "11"]]));
        assert_eq!(x.set_join(&Code::empty(c)).unwrap(), Code::empty(c));
        let a = code(c, &[&["0", ""]]);
        let b = code(c, &[&["1", ""]]);
        assert_eq!(a.set_join(&b).unwrap(), Code::empty(c));
    }

    #[test]
    fn classification_examples() {
        let c2 = ctx(2, 2);
        let mixed = code(c2, &[&["", "0"], &["0", ""]]);
        assert!(mixed.is_initial_factor_code());
        assert!(!mixed.is_joinless());

        let c1 = ctx(1, 2);
        let chain = code(c1, &[&["0"], &["00"]]);
        assert!(!chain.is_initial_factor_code());

        assert!(Code::empty(c1).is_initial_factor_code());
        assert!(code(c2, &[&["0", "1"], &["1", "0"]]).is_joinless());
        assert!(code(c2, &[&["1", "1"]]).is_joinless());
    }

    #[test]
    fn level_refine_examples() {
        let c = ctx(1, 2);
        let s = code(c, &[&["0"]]);
        assert_eq!(
            s.level_refine(2, DEFAULT_CAP).unwrap(),
            code(c, &[&["00"], &["01"]])
        );
        let c2 = ctx(2, 2);
        let t = code(c2, &[&["1", "1"]]);
        assert_eq!(t.level_refine(1, DEFAULT_CAP).unwrap(), t);
        let mixed = code(c, &[&["0"], &["00"]]);
        assert_eq!(
            mixed.level_refine(2, DEFAULT_CAP).unwrap(),
            code(c, &[&["00"], &["01"]])
        );
        assert!(matches!(
            mixed.level_refine(1, DEFAULT_CAP),
            Err(Error::LevelTooSmall { .. })
        ));
    }

    #[test]
    fn equiv_fin_examples() {
        let c = ctx(1, 2);
        let p = code(c, &[&["0"], &["1"]]);
        let q = Code::epsilon(c);
        assert!(p.equiv_fin(&q, DEFAULT_CAP).unwrap());
        assert!(!code(c, &[&["0"]]).equiv_fin(&q, DEFAULT_CAP).unwrap());
        assert!(p.equiv_fin(&p, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn maximality_examples() {
        let c = ctx(2, 2);
        assert!(Code::epsilon(c).is_maximal_joinless(DEFAULT_CAP).unwrap());
        assert!(!code(c, &[&["1", "1"]])
            .is_maximal_joinless(DEFAULT_CAP)
            .unwrap());
        let level1 = Code::all_words_of_level(c, 1, DEFAULT_CAP).unwrap();
        assert!(level1.is_maximal_joinless(DEFAULT_CAP).unwrap());
        let overlapping = code(c, &[&["", "0"], &["0", ""]]);
        assert_eq!(
            overlapping.is_maximal_joinless(DEFAULT_CAP),
            Err(Error::NotJoinless)
        );
        assert!(!Code::empty(c).is_maximal_joinless(DEFAULT_CAP).unwrap());
    }

    #[test]
    fn one_step_restriction_examples() {
        let c1 = ctx(1, 2);
        let eps = Code::epsilon(c1);
        assert_eq!(
            eps.one_step_restriction(&Word::epsilon(c1), 0).unwrap(),
            code(c1, &[&["0"], &["1"]])
        );

        let c2 = ctx(2, 2);
        let eps2 = Code::epsilon(c2);
        assert_eq!(
            eps2.one_step_restriction(&Word::epsilon(c2), 0).unwrap(),
            code(c2, &[&["0", ""], &["1", ""]])
        );

        let p = code(c2, &[&["0", "1"], &["1", "0"]]);
        let restricted = p.one_step_restriction(&w(c2, &["0", "1"]), 1).unwrap();
        assert_eq!(
            restricted,
            code(c2, &[&["0", "10"], &["0", "11"], &["1", "0"]])
        );
        assert!(restricted.is_joinless());
        assert!(restricted.equiv_fin(&p, DEFAULT_CAP).unwrap());

        assert_eq!(
            p.one_step_restriction(&w(c2, &["1", "1"]), 0),
            Err(Error::ElementNotInCode)
        );
        assert_eq!(
            p.one_step_restriction(&w(c2, &["0", "1"]), 2),
            Err(Error::BadCoordinate { coord: 2, dim: 2 })
        );
    }

    #[test]
    fn completion_examples() {
        let c = ctx(2, 2);
        let q = code(c, &[&["1", "1"]]);
        assert_eq!(
            q.completion(DEFAULT_CAP).unwrap(),
            Code::all_words_of_level(c, 1, DEFAULT_CAP).unwrap()
        );
        let eps = Code::epsilon(c);
        assert_eq!(eps.completion(DEFAULT_CAP).unwrap(), eps);

        let c1 = ctx(1, 2);
        let q1 = code(c1, &[&["00"]]);
        let done = q1.completion(DEFAULT_CAP).unwrap();
        assert_eq!(done, code(c1, &[&["00"], &["01"], &["10"], &["11"]]));
        assert!(done.contains(&w(c1, &["00"])));
        assert!(done.is_maximal_joinless(DEFAULT_CAP).unwrap());
        assert_eq!(done.maxlen(), q1.maxlen());
    }

    #[test]
    fn complement_examples() {
        let c = ctx(2, 2);
        let q = code(c, &[&["1", "1"]]);
        let q1 = q.complement(DEFAULT_CAP).unwrap();
        assert_eq!(q1, code(c, &[&["0", "0"], &["0", "1"], &["1", "0"]]));
        assert!(q.set_join(&q1).unwrap().is_empty());
        assert!(q
            .union(&q1)
            .unwrap()
            .is_maximal_joinless(DEFAULT_CAP)
            .unwrap());

        let eps = Code::epsilon(c);
        assert!(eps.complement(DEFAULT_CAP).unwrap().is_empty());

        let c1 = ctx(1, 2);
        assert_eq!(
            code(c1, &[&["0"]]).complement(DEFAULT_CAP).unwrap(),
            code(c1, &[&["1"]])
        );
    }

    #[test]
    fn alternative_complement_is_accepted_by_the_predicates() {
        // A different complement of {(1,1)}: {(e,0),(0,1)}. Not produced by
        // `complement`, but it satisfies both defining conditions.
        let c = ctx(2, 2);
        let q = code(c, &[&["1", "1"]]);
        let alt = code(c, &[&["", "0"], &["0", "1"]]);
        assert!(q.set_join(&alt).unwrap().is_empty());
        assert!(q
            .union(&alt)
            .unwrap()
            .is_maximal_joinless(DEFAULT_CAP)
            .unwrap());
    }
}
