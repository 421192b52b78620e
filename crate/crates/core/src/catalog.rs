//! Fixed inputs for the two worked examples and small Dynkin graphs.

use std::collections::BTreeSet;

use crate::coxeter::{Graph, Word};
use crate::error::Result;
use crate::potential::{FrozenQp, Potential};
use crate::quiver::Quiver;
use crate::rational::int;

/// The word `s1 s2 s3 s1 s3 s2 s1` on the triangle.
pub const WORD_TRIANGLE: [i64; 7] = [1, 2, 3, 1, 3, 2, 1];

/// A reduced expression of the longest element of the A3 group.
pub const WORD_A3_LONGEST: [i64; 6] = [1, 2, 3, 1, 2, 1];

pub fn triangle() -> Graph {
    Graph::triangle()
}

pub fn a(n: i64) -> Graph {
    Graph::path(n)
}

pub fn triangle_word() -> Word {
    WORD_TRIANGLE.to_vec()
}

/// `Qbar` with arrows named as in the triangle example:
/// `a: 1->2, b: 2->4, c: 1->3, d: 3->4, e: 4->1`.
pub fn triangle_qbar() -> Quiver {
    Quiver::from_named([1, 2, 3, 4], &[("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4), ("e", 4, 1)]).unwrap()
}

/// `Wbar = bae + dce` on [`triangle_qbar`].
pub fn triangle_wbar() -> Potential {
    Potential::from_words(&triangle_qbar(), &[(int(1), "bae"), (int(1), "dce")]).unwrap()
}

/// The frozen QP obtained by mutating the A3 cluster-tilting object at
/// `T_2`: `W = acb + dbe + dhgf`, `F_0 = {3, 5, 6}`, `phi(a) = phi(d) = 1`.
pub fn mutated_a3_qp() -> Result<FrozenQp> {
    let q = Quiver::from_named(
        1..=6,
        &[("a", 1, 3), ("b", 3, 2), ("c", 2, 1), ("d", 2, 5), ("e", 5, 3), ("f", 5, 6), ("g", 6, 4), ("h", 4, 2)],
    )?;
    let w = Potential::from_words(&q, &[(int(1), "acb"), (int(1), "dbe"), (int(1), "dhgf")])?;
    let phi = q.arrows().iter().map(|x| (x.id, u8::from(matches!(x.name.as_deref(), Some("a" | "d"))))).collect();
    FrozenQp::new(q, w, &BTreeSet::from([3, 5, 6]), Some(phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutated_qp_shape() {
        let qp = mutated_a3_qp().unwrap();
        let frozen: Vec<_> = qp.frozen.frozen_arrows.iter().map(|&a| qp.label(a)).collect();
        assert_eq!(frozen, ["e", "f"]);
        assert_eq!(qp.potential.terms().count(), 3);
    }
}
