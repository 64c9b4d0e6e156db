//! Tuples of digit strings, the initial-factor order, joins, and quotients.
//!
//! An element of the n-fold free monoid over a k-letter alphabet is a tuple
//! of n strings over the digits `0..k-1`, multiplied coordinate-wise. The
//! initial-factor order `u <= v` holds when every coordinate of `u` is a
//! prefix of the matching coordinate of `v`; the join of two words is their
//! least common upper bound in that order, when it exists.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Ambient parameters shared by every value: dimension `n` and alphabet
/// size `k`. Letters are the digits `0..k-1`, so `k` is capped at 10.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Context {
    n: usize,
    k: u8,
}

impl Context {
    pub fn new(n: usize, k: u8) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadContext(format!("dimension {n} must be >= 1")));
        }
        if !(2..=10).contains(&k) {
            return Err(Error::BadContext(format!(
                "alphabet size {k} must be between 2 and 10"
            )));
        }
        Ok(Context { n, k })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn alphabet_size(&self) -> u8 {
        self.k
    }

    /// The alphabet as digit characters `'0'..'k-1'`.
    pub fn letters(&self) -> impl Iterator<Item = char> {
        (0..self.k).map(|d| (b'0' + d) as char)
    }

    pub(crate) fn check_same(&self, other: &Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

/// Which side `separating_suffix` extended, i.e. which join fails.
///
/// `Left` means `join(y.concat(v), z)` does not exist; `Right` means
/// `join(y, z.concat(v))` does not exist.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// An element of the n-fold free monoid: one digit string per coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    ctx: Context,
    coords: Vec<String>,
}

impl Word {
    /// Builds a word, validating the coordinate count and digit range.
    pub fn new<S: AsRef<str>>(ctx: Context, coords: impl IntoIterator<Item = S>) -> Result<Self> {
        let coords: Vec<String> = coords.into_iter().map(|s| s.as_ref().to_owned()).collect();
        if coords.len() != ctx.dim() {
            return Err(Error::BadWord(format!(
                "expected {} coordinates, got {}",
                ctx.dim(),
                coords.len()
            )));
        }
        for c in &coords {
            for ch in c.chars() {
                let ok = ch.is_ascii_digit() && (ch as u8 - b'0') < ctx.alphabet_size();
                if !ok {
                    return Err(Error::BadWord(format!(
                        "character `{ch}` is not a digit below {}",
                        ctx.alphabet_size()
                    )));
                }
            }
        }
        Ok(Word { ctx, coords })
    }

    /// The identity element: the all-empty tuple.
    pub fn epsilon(ctx: Context) -> Self {
        Word {
            ctx,
            coords: vec![String::new(); ctx.dim()],
        }
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn coord(&self, i: usize) -> &str {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn is_epsilon(&self) -> bool {
        self.coords.iter().all(|c| c.is_empty())
    }

    /// Maximum coordinate length.
    pub fn maxlen(&self) -> usize {
        self.coords.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    /// Coordinate lengths, used for shape bucketing.
    pub(crate) fn shape(&self) -> Vec<usize> {
        self.coords.iter().map(|c| c.len()).collect()
    }

    /// Coordinate-wise concatenation.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.ctx.check_same(&other.ctx)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                let mut s = String::with_capacity(a.len() + b.len());
                s.push_str(a);
                s.push_str(b);
                s
            })
            .collect();
        Ok(Word {
            ctx: self.ctx,
            coords,
        })
    }

    /// `self <= other` in the initial-factor order: every coordinate of
    /// `self` is a prefix of the matching coordinate of `other`.
    pub fn is_initial_factor(&self, other: &Word) -> Result<bool> {
        self.ctx.check_same(&other.ctx)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| b.starts_with(a.as_str())))
    }

    /// The join, i.e. the least common upper bound in the initial-factor
    /// order. It exists iff every coordinate pair is prefix-comparable, and
    /// then each coordinate of the join is the longer of the two.
    pub fn join(&self, other: &Word) -> Result<Option<Word>> {
        self.ctx.check_same(&other.ctx)?;
        let mut coords = Vec::with_capacity(self.coords.len());
        for (a, b) in self.coords.iter().zip(&other.coords) {
            if a.len() <= b.len() {
                if !b.starts_with(a.as_str()) {
                    return Ok(None);
                }
                coords.push(b.clone());
            } else {
                if !a.starts_with(b.as_str()) {
                    return Ok(None);
                }
                coords.push(a.clone());
            }
        }
        Ok(Some(Word {
            ctx: self.ctx,
            coords,
        }))
    }

    /// The unique `z` with `self.concat(z) = whole`, defined when `self` is
    /// an initial factor of `whole`.
    pub fn quotient(&self, whole: &Word) -> Result<Word> {
        self.ctx.check_same(&whole.ctx)?;
        if !self.is_initial_factor(whole)? {
            return Err(Error::NotAnInitialFactor);
        }
        let coords = self
            .coords
            .iter()
            .zip(&whole.coords)
            .map(|(a, b)| b[a.len()..].to_owned())
            .collect();
        Ok(Word {
            ctx: self.ctx,
            coords,
        })
    }

    /// For distinct words `y`, `z`, a suffix `v` such that one of
    /// `join(y.concat(v), z)` or `join(y, z.concat(v))` fails; the returned
    /// side says which. When `join(y, z)` already fails, `v` is the empty
    /// tuple. Otherwise one word strictly extends the other in some
    /// coordinate, and a single letter different from the next letter of the
    /// longer one blocks the join.
    pub fn separating_suffix(&self, other: &Word) -> Result<(Word, Side)> {
        self.ctx.check_same(&other.ctx)?;
        if self == other {
            return Err(Error::EqualWords);
        }
        if self.join(other)?.is_none() {
            return Ok((Word::epsilon(self.ctx), Side::Left));
        }
        for i in 0..self.ctx.dim() {
            let (a, b) = (&self.coords[i], &other.coords[i]);
            if a.len() == b.len() {
                continue;
            }
            let (short, long, side) = if a.len() < b.len() {
                (a, b, Side::Left)
            } else {
                (b, a, Side::Right)
            };
            let next = long.as_bytes()[short.len()] - b'0';
            let blocker = self
                .ctx
                .letters()
                .find(|ch| (*ch as u8 - b'0') != next)
                .expect("alphabet has at least two letters");
            let mut coords = vec![String::new(); self.ctx.dim()];
            coords[i].push(blocker);
            let v = Word {
                ctx: self.ctx,
                coords,
            };
            return Ok((v, side));
        }
        Err(Error::Internal(
            "distinct words with a join must differ in length in some coordinate".into(),
        ))
    }

    /// Plain lexicographic comparison, coordinate-major. Differs from the
    /// crate's total order, which is shortlex within each coordinate.
    pub fn lex_cmp(&self, other: &Word) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.cmp(b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// Maximum coordinate length over a set of words; 0 for the empty set.
pub fn maxlen<'a>(words: impl IntoIterator<Item = &'a Word>) -> usize {
    words.into_iter().map(|w| w.maxlen()).max().unwrap_or(0)
}

impl Ord for Word {
    /// The fixed total order used for all deterministic set orderings:
    /// coordinate-major, shorter-before-longer then lexicographic within
    /// each coordinate.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ctx.n, self.ctx.k)
            .cmp(&(other.ctx.n, other.ctx.k))
            .then_with(|| {
                for (a, b) in self.coords.iter().zip(&other.coords) {
                    let o = a.len().cmp(&b.len()).then_with(|| a.cmp(b));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if c.is_empty() {
                f.write_str("e")?;
            } else {
                f.write_str(c)?;
            }
        }
        Ok(())
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

    #[test]
    fn context_bounds() {
        assert!(Context::new(0, 2).is_err());
        assert!(Context::new(1, 1).is_err());
        assert!(Context::new(1, 11).is_err());
        assert!(Context::new(3, 10).is_ok());
    }

    #[test]
    fn word_validation() {
        let c = ctx(2, 2);
        assert!(Word::new(c, ["01", "1"]).is_ok());
        assert!(Word::new(c, ["02", "1"]).is_err());
        assert!(Word::new(c, ["0"]).is_err());
    }

    #[test]
    fn concat_examples() {
        let c = ctx(2, 2);
        let x = w(c, &["01", "1"]);
        let y = w(c, &["", "0"]);
        assert_eq!(x.concat(&y).unwrap(), w(c, &["01", "10"]));
        assert_eq!(x.concat(&Word::epsilon(c)).unwrap(), x);
        assert_eq!(
            w(c, &["0", ""]).concat(&w(c, &["0", "1"])).unwrap(),
            w(c, &["00", "1"])
        );
        let other = ctx(2, 3);
        assert_eq!(
            x.concat(&Word::epsilon(other)),
            Err(Error::ContextMismatch)
        );
    }

    #[test]
    fn initial_factor_examples() {
        let c = ctx(2, 2);
        let v = w(c, &["01", "1"]);
        assert!(w(c, &["0", ""]).is_initial_factor(&v).unwrap());
        assert!(!w(c, &["1", ""]).is_initial_factor(&v).unwrap());
        assert!(v.is_initial_factor(&v).unwrap());
    }

    #[test]
    fn join_examples() {
        let c = ctx(2, 2);
        let u = w(c, &["00", "1"]);
        let v = w(c, &["0", "11"]);
        assert_eq!(u.join(&v).unwrap(), Some(w(c, &["00", "11"])));
        assert_eq!(u.join(&u).unwrap(), Some(u.clone()));
        assert_eq!(
            w(c, &["0", ""]).join(&w(c, &["1", ""])).unwrap(),
            None
        );
    }

    #[test]
    fn quotient_examples() {
        let c = ctx(2, 2);
        let u = w(c, &["0", ""]);
        let v = w(c, &["01", "1"]);
        assert_eq!(u.quotient(&v).unwrap(), w(c, &["1", "1"]));
        assert_eq!(v.quotient(&v).unwrap(), Word::epsilon(c));
        assert_eq!(Word::epsilon(c).quotient(&v).unwrap(), v);
        assert_eq!(v.quotient(&u), Err(Error::NotAnInitialFactor));
    }

    #[test]
    fn separating_suffix_no_join() {
        let c = ctx(2, 2);
        let y = w(c, &["0", ""]);
        let z = w(c, &["1", ""]);
        let (v, _) = y.separating_suffix(&z).unwrap();
        assert!(v.is_epsilon());
    }

    #[test]
    fn separating_suffix_dim_one() {
        let c = ctx(1, 2);
        let y = w(c, &["0"]);
        let z = w(c, &["01"]);
        let (v, side) = y.separating_suffix(&z).unwrap();
        assert_eq!(v, w(c, &["0"]));
        assert_eq!(side, Side::Left);
        assert_eq!(y.concat(&v).unwrap().join(&z).unwrap(), None);
    }

    #[test]
    fn separating_suffix_dim_two() {
        let c = ctx(2, 2);
        let y = w(c, &["0", ""]);
        let z = w(c, &["0", "1"]);
        let (v, side) = y.separating_suffix(&z).unwrap();
        assert_eq!(v, w(c, &["", "0"]));
        assert_eq!(side, Side::Left);
        assert_eq!(y.concat(&v).unwrap().join(&z).unwrap(), None);
        assert_eq!(y.separating_suffix(&y), Err(Error::EqualWords));
    }

    #[test]
    fn maxlen_examples() {
        let c = ctx(2, 2);
        let s = [w(c, &["00", "1"]), w(c, &["0", "11"])];
        assert_eq!(maxlen(s.iter()), 2);
        assert_eq!(maxlen([Word::epsilon(c)].iter()), 0);
        assert_eq!(maxlen([w(c, &["011", "1"])].iter()), 3);
        assert_eq!(maxlen([].iter()), 0);
    }

    #[test]
    fn total_order_is_shortlex_per_coordinate() {
        let c = ctx(1, 2);
        let mut words: Vec<Word> = ["1", "00", "", "01", "0"]
            .iter()
            .map(|s| w(c, &[s]))
            .collect();
        words.sort();
        let sorted: Vec<String> = words.iter().map(|x| x.to_string()).collect();
        assert_eq!(sorted, vec!["e", "0", "1", "00", "01"]);
    }

    #[test]
    fn display_uses_e_for_empty() {
        let c = ctx(2, 2);
        assert_eq!(w(c, &["", "01"]).to_string(), "e,01");
        assert_eq!(Word::epsilon(c).to_string(), "e,e");
    }
}
