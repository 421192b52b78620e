#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use frozenqp::coxeter::CoxeterSystem;
use frozenqp::rational::int;
use frozenqp::{ArrowId, Path, PathElement, Potential, Quiver, Rat, VertexId};
use rand::Rng;

/// Arrows `i -> j` for all `i, j` in `1..=3` (loops included) plus a second
/// arrow `1 -> 2`, so every walk closes up to a cycle.
pub fn dense_quiver() -> Quiver {
    let mut arrows = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            arrows.push((format!("x{i}{j}"), i, j));
        }
    }
    arrows.push(("y12".into(), 1, 2));
    let named: Vec<(&str, VertexId, VertexId)> = arrows.iter().map(|(n, s, t)| (n.as_str(), *s, *t)).collect();
    Quiver::from_named(1..=3, &named).unwrap()
}

/// The cycle obtained by walking from `start`, at each step taking the
/// `choice mod outdegree`-th outgoing arrow, then closing with an arrow back.
/// Written right to left, as paths are.
pub fn cycle_from_choices(q: &Quiver, start: VertexId, choices: &[usize]) -> Vec<ArrowId> {
    let mut walk = Vec::new();
    let mut v = start;
    for &c in choices {
        let outs: Vec<_> = q.arrows_from(v).collect();
        let a = outs[c % outs.len()];
        walk.push(a.id);
        v = a.tgt;
    }
    let back = q.arrows_from(v).find(|a| a.tgt == start).unwrap();
    walk.push(back.id);
    walk.reverse();
    walk
}

pub fn random_cycle(rng: &mut impl Rng, q: &Quiver, len: usize) -> Vec<ArrowId> {
    let start = rng.gen_range(1..=3);
    let choices: Vec<usize> = (0..len - 1).map(|_| rng.gen_range(0..16)).collect();
    cycle_from_choices(q, start, &choices)
}

pub fn random_terms(rng: &mut impl Rng, q: &Quiver) -> Vec<(Rat, Vec<ArrowId>)> {
    let n = rng.gen_range(1..=4);
    (0..n)
        .map(|_| {
            let c = Rat::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into());
            let len = rng.gen_range(2..=5);
            (c, random_cycle(rng, q, len))
        })
        .collect()
}

pub fn potential_of(q: &Quiver, terms: &[(Rat, Vec<ArrowId>)]) -> Potential {
    let mut w = PathElement::zero();
    for (c, arrows) in terms {
        w.add_term(Path::from_arrows(q, arrows).unwrap(), c.clone());
    }
    Potential::new(w).unwrap()
}

/// Cyclic derivative straight from the definition on arrow words:
/// `d_a (a1 ... ak) = sum over a_j = a of a(j+1) ... ak a1 ... a(j-1)`.
pub fn naive_derivative(terms: &[(Rat, Vec<ArrowId>)], a: ArrowId) -> BTreeMap<Vec<ArrowId>, Rat> {
    let mut out: BTreeMap<Vec<ArrowId>, Rat> = BTreeMap::new();
    for (c, w) in terms {
        for j in 0..w.len() {
            if w[j] == a {
                let mut p = w[j + 1..].to_vec();
                p.extend_from_slice(&w[..j]);
                *out.entry(p).or_insert_with(|| int(0)) += c;
            }
        }
    }
    out.retain(|_, c| *c != int(0));
    out
}

pub fn as_word_map(x: &PathElement) -> BTreeMap<Vec<ArrowId>, Rat> {
    x.terms().map(|(p, c)| (p.arrows().to_vec(), c.clone())).collect()
}

/// Permutation of `1..=n+1` for a word in the type `A_n` generators, where
/// `s_i` swaps `i` and `i+1`.
pub fn permutation(word: &[VertexId], n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..=n).collect();
    for &s in word {
        p.swap(s as usize - 1, s as usize);
    }
    p
}

pub fn inversions(p: &[usize]) -> usize {
    (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
}

/// All words of length `1..=max_len` over `letters`.
pub fn all_words(letters: &[VertexId], max_len: usize) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<VertexId>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |&l| {
                let mut v = w.clone();
                v.push(l);
                v
            }))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Reduced words of length `1..=max_len`, grown letter by letter.
pub fn reduced_words(sys: &CoxeterSystem, max_len: usize) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<VertexId>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in sys.vertices() {
                let mut v = w.clone();
                v.push(l);
                if sys.is_reduced(&v).unwrap() {
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `dim` of the preprojective algebra of type `A_n`.
pub fn preprojective_a_dim(n: usize) -> usize {
    n * (n + 1) * (n + 2) / 6
}

/// Arrow of `Q_w` as `(kind, i, j, src, tgt)`, where `(i, j)` is the graph
/// arrow behind a Q- or Q*-arrow and `(0, 0)` for arrows going to the left.
pub type LiteralArrow = (&'static str, VertexId, VertexId, VertexId, VertexId);

fn rotation_minimal(w: &[LiteralArrow]) -> Vec<LiteralArrow> {
    (0..w.len())
        .map(|k| {
            let mut r = w.to_vec();
            r.rotate_left(k);
            r
        })
        .min()
        .unwrap()
}

/// `Q_w` and `W_w` read off the defining clauses position by position, with
/// no shared code: every candidate pair `(t, s)` is tested against the
/// clause, and the potential terms are rotation-normalized arrow words.
pub fn literal_qw(
    orientation: &[(VertexId, VertexId)],
    word: &[VertexId],
) -> (BTreeSet<LiteralArrow>, BTreeMap<Vec<LiteralArrow>, i64>) {
    let l = word.len() as VertexId;
    let u = |p: VertexId| word[(p - 1) as usize];
    let none_between = |kind: VertexId, lo: VertexId, hi: VertexId| ((lo + 1)..hi).all(|q| u(q) != kind);
    let next = |kind: VertexId, p: VertexId| ((p + 1)..=l).find(|&q| u(q) == kind).unwrap_or(l + 1);
    let mut arrows = BTreeSet::new();
    let mut left = BTreeMap::new();
    for t in 1..=l {
        for s in (t + 1)..=l {
            if u(t) == u(s) && none_between(u(t), t, s) {
                arrows.insert(("left", 0, 0, s, t));
                left.insert(s, ("left", 0, 0, s, t));
            }
        }
    }
    let clause = |from: VertexId, to: VertexId, t: VertexId, s: VertexId| {
        u(t) == from && u(s) == to && s > t && none_between(from, t, s) && s < next(from, t) && none_between(to, s, next(from, t))
    };
    for &(i, j) in orientation {
        for t in 1..=l {
            for s in 1..=l {
                if clause(i, j, t, s) {
                    arrows.insert(("Q", i, j, t, s));
                }
                if clause(j, i, t, s) {
                    arrows.insert(("Qstar", i, j, t, s));
                }
            }
        }
    }
    // left arrows on the way from `hi` down to `lo`, written right to left
    let left_path = |hi: VertexId, lo: VertexId| {
        let mut out = Vec::new();
        let mut v = hi;
        while v != lo {
            let a = left[&v];
            out.push(a);
            v = a.4;
        }
        out.reverse();
        out
    };
    let mut w: BTreeMap<Vec<LiteralArrow>, i64> = BTreeMap::new();
    for &a in &arrows {
        let (kind, i, j, t, s) = a;
        let partner = if kind == "Q" { "Qstar" } else if kind == "Qstar" { "Q" } else { continue };
        // W_a: a* : r -> t with u_r = u_s, path s -> r; W_a*: a : s' -> t with u_s' = u_r
        let found: Vec<_> = arrows
            .iter()
            .filter(|b| b.0 == partner && (b.1, b.2) == (i, j) && b.4 == t && u(b.3) == u(s) && b.3 <= s)
            .collect();
        assert!(found.len() <= 1, "partner not unique for {a:?}");
        if let Some(&&b) = found.first() {
            let mut cycle = vec![a, b];
            cycle.extend(left_path(s, b.3));
            *w.entry(rotation_minimal(&cycle)).or_default() += if kind == "Q" { 1 } else { -1 };
        }
    }
    w.retain(|_, c| *c != 0);
    (arrows, w)
}

/// The library's `Q_w` and `W_w` in the notation of [`literal_qw`].
pub fn library_qw(b: &frozenqp::BirsQp) -> (BTreeSet<LiteralArrow>, BTreeMap<Vec<LiteralArrow>, i64>) {
    use frozenqp::ArrowKind;
    let q = &b.qp.quiver;
    let u = |p: VertexId| b.positions[&p];
    let tag = |id: ArrowId| -> LiteralArrow {
        let a = q.arrow(id).unwrap();
        match b.kinds[&id] {
            ArrowKind::Left => ("left", 0, 0, a.src, a.tgt),
            ArrowKind::Q => ("Q", u(a.src), u(a.tgt), a.src, a.tgt),
            ArrowKind::QStar => ("Qstar", u(a.tgt), u(a.src), a.src, a.tgt),
        }
    };
    let arrows = q.arrows().iter().map(|a| tag(a.id)).collect();
    let w = b
        .qp
        .potential
        .terms()
        .map(|(p, c)| {
            assert!(c.is_integer());
            let word: Vec<LiteralArrow> = p.arrows().iter().map(|&a| tag(a)).collect();
            (rotation_minimal(&word), c.to_integer().try_into().unwrap())
        })
        .collect();
    (arrows, w)
}
