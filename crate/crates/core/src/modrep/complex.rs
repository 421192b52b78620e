//! Exactness of finite complexes of modules.

use serde::Serialize;

use crate::error::{Error, Result};

use super::module::{FdModule, ModuleMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub exact: bool,
    /// Homology dimension at each interior position `1..n-1`.
    pub homology: Vec<usize>,
}

/// `modules[0] -> modules[1] -> ...` with `maps[k]: modules[k] -> modules[k+1]`.
/// Consecutive composites must vanish; exactness is tested at every
/// interior position. Pad with zero modules to test the ends.
pub fn check_complex_exact(modules: &[FdModule], maps: &[ModuleMap]) -> Result<ComplexReport> {
    if modules.len() != maps.len() + 1 {
        return Err(Error::DimensionMismatch(format!("{} modules need {} maps", modules.len(), modules.len().saturating_sub(1))));
    }
    for (k, f) in maps.iter().enumerate() {
        if !f.is_homomorphism(&modules[k], &modules[k + 1]) {
            return Err(Error::DimensionMismatch(format!("map {k} is not a module homomorphism")));
        }
    }
    for k in 1..maps.len() {
        if !maps[k - 1].then(&maps[k]).is_zero() {
            return Err(Error::NotAComplex(k));
        }
    }
    let homology: Vec<usize> = (1..modules.len().saturating_sub(1))
        .map(|k| {
            modules[k]
                .quiver()
                .vertices()
                .iter()
                .map(|&v| modules[k].dim_at(v) - maps[k].block(v).rank() - maps[k - 1].block(v).rank())
                .sum()
        })
        .collect();
    Ok(ComplexReport { exact: homology.iter().all(|&h| h == 0), homology })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    #[test]
    fn identity_is_exact() {
        let q = Quiver::from_named([1, 2], &[("a", 1, 2)]).unwrap();
        let m = FdModule::simple(&q, 2).unwrap();
        let z = FdModule::zero(&q);
        let mods = [z.clone(), m.clone(), m.clone(), z.clone()];
        let maps = [ModuleMap::zero(&z, &m), ModuleMap::identity(&m), ModuleMap::zero(&m, &z)];
        let r = check_complex_exact(&mods, &maps).unwrap();
        assert!(r.exact);
        assert_eq!(r.homology, [0, 0]);

        let maps = [ModuleMap::zero(&z, &m), ModuleMap::zero(&m, &m), ModuleMap::zero(&m, &z)];
        assert_eq!(check_complex_exact(&mods, &maps).unwrap().homology, [1, 1]);
    }

    #[test]
    fn non_complex() {
        let q = Quiver::new([1], vec![]).unwrap();
        let m = FdModule::simple(&q, 1).unwrap();
        let id = ModuleMap::identity(&m);
        assert_eq!(check_complex_exact(&[m.clone(), m.clone(), m], &[id.clone(), id]), Err(Error::NotAComplex(1)));
    }
}
