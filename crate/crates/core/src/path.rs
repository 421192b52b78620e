//! Paths and finite linear combinations of paths.
//!
//! A written word `a1 a2 ... ak` is read right to left: `ak` acts first, so
//! the word is composable iff `s(aj) = t(a(j+1))` for every `j`. With this
//! convention `bae` with `e: 4 -> 1`, `a: 1 -> 2`, `b: 2 -> 4` is a cycle at 4.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Quiver, VertexId};
use crate::rational::{self, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Ord for Path {
    /// Degree-lexicographic: length first, then the arrow-id sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.target.cmp(&other.target))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn stationary(v: VertexId) -> Self {
        Self { source: v, target: v, arrows: Vec::new() }
    }

    /// Path from an arrow-id word, checking composability in `q`.
    pub fn from_arrows(q: &Quiver, arrows: &[ArrowId]) -> Result<Self> {
        let Some((&first, _)) = arrows.split_first() else {
            return Err(Error::NotComposable("empty word needs a vertex".into()));
        };
        let target = q.arrow(first)?.tgt;
        for w in arrows.windows(2) {
            let (x, y) = (q.arrow(w[0])?, q.arrow(w[1])?);
            if x.src != y.tgt {
                return Err(Error::NotComposable(format!("{} after {}", x.label(), y.label())));
            }
        }
        let source = q.arrow(*arrows.last().unwrap())?.src;
        Ok(Self { source, target, arrows: arrows.to_vec() })
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.source == self.target
    }

    /// The concatenation `self * other` (`other` acts first), or `None` when
    /// `s(self) != t(other)`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() + other.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: other.source, target: self.target, arrows })
    }

    /// Sub-path on word positions `range`; an empty range gives the
    /// stationary path at that junction.
    pub fn slice(&self, q: &Quiver, range: std::ops::Range<usize>) -> Path {
        if range.is_empty() {
            let v = if range.start == 0 {
                self.target
            } else {
                q.arrow(self.arrows[range.start - 1]).expect("arrow of path").src
            };
            return Path::stationary(v);
        }
        Path::from_arrows(q, &self.arrows[range]).expect("sub-path of a valid path")
    }

    /// Cyclic rotation of a cycle moving the first `k` arrows to the end.
    pub fn rotate_in(&self, q: &Quiver, k: usize) -> Path {
        debug_assert!(self.is_cycle());
        if self.arrows.is_empty() {
            return self.clone();
        }
        let k = k % self.arrows.len();
        let mut arrows = self.arrows[k..].to_vec();
        arrows.extend_from_slice(&self.arrows[..k]);
        Path::from_arrows(q, &arrows).expect("rotation of a cycle is a cycle")
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.source);
        }
        let labels: Vec<String> =
            self.arrows.iter().map(|&a| q.arrow(a).map(|x| x.label()).unwrap_or_else(|_| a.to_string())).collect();
        if labels.iter().all(|l| l.chars().count() == 1) {
            labels.concat()
        } else {
            labels.join(" ")
        }
    }
}

impl Quiver {
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path> {
        Path::from_arrows(self, arrows)
    }

    /// Parses a word of arrow names: whitespace separated, or one character
    /// per arrow when there is no whitespace (`"bae"`).
    pub fn word(&self, s: &str) -> Result<Path> {
        let names: Vec<String> = if s.contains(char::is_whitespace) {
            s.split_whitespace().map(str::to_owned).collect()
        } else {
            s.chars().map(String::from).collect()
        };
        let ids = names
            .iter()
            .map(|n| self.arrow_by_name(n).map(|a| a.id).ok_or_else(|| Error::SchemaViolation(format!("no arrow {n}"))))
            .collect::<Result<Vec<_>>>()?;
        self.path(&ids)
    }
}

/// A finite linear combination of paths with rational coefficients. May mix
/// endpoints; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PathElement {
    terms: BTreeMap<Path, Rat>,
}

impl PathElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(Rat::one(), p)
    }

    pub fn term(c: Rat, p: Path) -> Self {
        let mut e = Self::zero();
        e.add_term(p, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, Path)>) -> Self {
        let mut e = Self::zero();
        for (c, p) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub(crate) fn into_map(self) -> BTreeMap<Path, Rat> {
        self.terms
    }

    pub fn add_term(&mut self, p: Path, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, p: &Path) -> Rat {
        self.terms.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &PathElement) -> PathElement {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PathElement) -> PathElement {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> PathElement {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect() }
    }

    /// Bilinear extension of [`Path::compose`].
    pub fn mul(&self, other: &PathElement) -> PathElement {
        let mut out = Self::zero();
        for (p, x) in &self.terms {
            for (q, y) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(pq, x * y);
                }
            }
        }
        out
    }

    /// Largest term in degree-lexicographic order.
    pub fn leading(&self) -> Option<(&Path, &Rat)> {
        self.terms.last_key_value()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.terms.keys().map(Path::len).min().unwrap_or(0)
    }

    /// Common `(source, target)` of all terms, if there is one.
    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        let mut it = self.terms.keys().map(|p| (p.source(), p.target()));
        let first = it.next()?;
        it.all(|e| e == first).then_some(first)
    }

    /// Splits into the components `e_t x e_s`, keyed by `(source, target)`.
    pub fn components(&self) -> BTreeMap<(VertexId, VertexId), PathElement> {
        let mut out: BTreeMap<_, PathElement> = BTreeMap::new();
        for (p, c) in &self.terms {
            out.entry((p.source(), p.target())).or_default().add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn is_length_homogeneous(&self) -> bool {
        self.max_len() == self.min_len()
    }

    /// Applies a renaming of arrow ids (arrows not in the map are kept).
    pub fn rename(&self, map: &BTreeMap<ArrowId, ArrowId>, q: &Quiver) -> Result<PathElement> {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            let ids: Vec<ArrowId> = p.arrows().iter().map(|a| *map.get(a).unwrap_or(a)).collect();
            let np = if ids.is_empty() { p.clone() } else { q.path(&ids)? };
            out.add_term(np, c.clone());
        }
        Ok(out)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (p, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                let _ = write!(s, "{} ", rational::format(&mag).trim_end_matches("/1"));
            }
            s.push_str(&p.display(q));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn q51bar() -> Quiver {
        Quiver::from_named(1..=4, &[("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4), ("e", 4, 1)]).unwrap()
    }

    #[test]
    fn composition_convention() {
        let q = q51bar();
        let b = q.word("b").unwrap();
        let ae = q.word("ae").unwrap();
        let bae = b.compose(&ae).unwrap();
        assert_eq!(bae, q.word("bae").unwrap());
        assert!(bae.is_cycle());
        assert_eq!((bae.source(), bae.target()), (4, 4));
        let e1 = Path::stationary(1);
        assert_eq!(e1.compose(&e1), Some(e1.clone()));
        // e_{t(q)} q = q
        assert_eq!(Path::stationary(4).compose(&b), Some(b.clone()));
        assert!(q.word("ab").is_err());
    }

    #[test]
    fn compose_52_incidences() {
        let q = Quiver::from_named(1..=4, &[("c", 2, 1), ("h", 4, 2)]).unwrap();
        let ch = q.word("c").unwrap().compose(&q.word("h").unwrap()).unwrap();
        assert_eq!((ch.source(), ch.target()), (4, 1));
    }

    #[test]
    fn element_arithmetic() {
        let q = Quiver::from_named(1..=4, &[("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4), ("e", 4, 1)]).unwrap();
        let bae = PathElement::from_path(q.word("bae").unwrap());
        assert!(bae.scale(&int(0)).is_zero());
        let bd = PathElement::from_path(q.word("b").unwrap()).add(&PathElement::from_path(q.word("d").unwrap()));
        let ae = PathElement::from_path(q.word("ae").unwrap());
        // d·ae vanishes: t(ae) = 2 differs from s(d) = 3
        assert_eq!(bd.mul(&ae), bae);
        let half = PathElement::term(frac(1, 2), q.word("bae").unwrap());
        assert_eq!(half.add(&half), bae);
        assert!(bae.sub(&bae).is_zero());
    }

    #[test]
    fn rotation_recomputes_endpoints() {
        let q = q51bar();
        let bae = q.word("bae").unwrap();
        let r = bae.rotate_in(&q, 1);
        assert_eq!(r, q.word("aeb").unwrap());
        assert_eq!((r.source(), r.target()), (2, 2));
    }

    #[test]
    fn deglex_order() {
        let q = q51bar();
        assert!(Path::stationary(4) < q.word("a").unwrap());
        assert!(q.word("a").unwrap() < q.word("b").unwrap());
        assert!(q.word("e").unwrap() < q.word("ae").unwrap());
    }
}
