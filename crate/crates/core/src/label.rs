//! Structured vertex labels.
//!
//! A label is a short lowercase base name with up to two integer indices and
//! an optional prime mark: `u1_3` is u_{1,3}, `u4` is u_4 and `u4p` is u'_4.
//! Bare names such as `a` are also accepted.
//!
//! Labels are totally ordered by `(base, class_index, item_index, primed)`
//! compared lexicographically, with an absent index ordering before any
//! present one. Every "sorted vertex list" in the crate uses this order, so
//! `v2 < v10` and `u3_7 < u4 < u4p < u5`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel {
    base: String,
    class_index: Option<u32>,
    item_index: Option<u32>,
    primed: bool,
}

impl VertexLabel {
    /// A bare label such as `a`.
    pub fn named(base: &str) -> Self {
        Self::build(base, None, None, false)
    }

    /// `base<j>`, e.g. `v3`.
    pub fn indexed(base: &str, index: u32) -> Self {
        Self::build(base, Some(index), None, false)
    }

    /// `base<j>_<i>`, e.g. `u1_3`.
    pub fn pair(base: &str, class_index: u32, item_index: u32) -> Self {
        Self::build(base, Some(class_index), Some(item_index), false)
    }

    fn build(base: &str, class_index: Option<u32>, item_index: Option<u32>, primed: bool) -> Self {
        debug_assert!(!base.is_empty() && base.bytes().all(|b| b.is_ascii_lowercase()));
        Self { base: base.to_owned(), class_index, item_index, primed }
    }

    /// The primed copy of this label. Bare labels cannot carry a prime in
    /// the text grammar, so only indexed labels may be primed.
    pub fn primed(&self) -> Self {
        debug_assert!(self.class_index.is_some());
        Self { primed: true, ..self.clone() }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn class_index(&self) -> Option<u32> {
        self.class_index
    }

    pub fn item_index(&self) -> Option<u32> {
        self.item_index
    }

    pub fn is_primed(&self) -> bool {
        self.primed
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        if let Some(j) = self.class_index {
            write!(f, "{j}")?;
            if let Some(i) = self.item_index {
                write!(f, "_{i}")?;
            }
            if self.primed {
                f.write_str("p")?;
            }
        }
        Ok(())
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("invalid vertex label `{s}`"));
        let base_len = s.bytes().take_while(|b| b.is_ascii_lowercase()).count();
        if base_len == 0 {
            return Err(bad());
        }
        let (base, rest) = s.split_at(base_len);
        if rest.is_empty() {
            return Ok(Self::named(base));
        }

        let (rest, primed) = match rest.strip_suffix('p') {
            Some(r) => (r, true),
            None => (rest, false),
        };
        let number = |t: &str| -> Result<u32, Error> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        let (class_index, item_index) = match rest.split_once('_') {
            Some((j, i)) => (number(j)?, Some(number(i)?)),
            None => (number(rest)?, None),
        };
        Ok(Self::build(base, Some(class_index), item_index, primed))
    }
}

impl serde::Serialize for VertexLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
