//! The canonical iso `X × (Y ⨿ Z) ≅ (X × Y) ⨿ (X × Z)`.

use crate::error::{Error, Result};
use crate::finset::{self, FinSet, SetMap};
use crate::groups::{GMap, GSet};

/// Sends `(x, y)` to `(x, y)` in the first summand and `(x, |Y| + z)` to
/// `(x, z)` in the second, following the product and coproduct indexing.
pub fn check_distributivity(x: usize, y: usize, z: usize) -> Result<SetMap> {
    let (yz, _, _) = finset::coproduct(FinSet::new(y), FinSet::new(z));
    let dom = x * yz.size;
    let table = (0..dom)
        .map(|i| {
            let (a, b) = (i / yz.size, i % yz.size);
            if b < y {
                a * y + b
            } else {
                x * y + a * z + (b - y)
            }
        })
        .collect();
    let map = SetMap::new(dom, x * y + x * z, table)?;
    if !map.is_bijection() {
        return Err(Error::InvalidMap("distributivity map is not a bijection".into()));
    }
    Ok(map)
}

/// The same bijection, checked equivariant for the diagonal actions.
pub fn check_distributivity_equivariant(x: &GSet, y: &GSet, z: &GSet) -> Result<GMap> {
    let map = check_distributivity(x.points(), y.points(), z.points())?;
    let dom = x.product(&y.disjoint_union(z)?)?;
    let cod = x.product(y)?.disjoint_union(&x.product(z)?)?;
    GMap::new(dom, cod, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::PermGroup;
    use std::sync::Arc;

    #[test]
    fn small_sizes() {
        let m = check_distributivity(2, 1, 1).unwrap();
        assert_eq!(m.dom(), 4);
        assert_eq!(m.table(), &[0, 2, 1, 3]);
        let e = check_distributivity(0, 3, 2).unwrap();
        assert_eq!((e.dom(), e.cod()), (0, 0));
        for (a, b, c) in [(3, 0, 2), (2, 3, 4), (1, 0, 0)] {
            assert!(check_distributivity(a, b, c).unwrap().is_bijection());
        }
    }

    #[test]
    fn equivariant_c2() {
        let g = Arc::new(PermGroup::named("C2").unwrap());
        let reg = GSet::regular(g.clone());
        let pt = GSet::point(g);
        let m = check_distributivity_equivariant(&reg, &pt, &pt).unwrap();
        assert_eq!(m.dom().points(), 4);
        // the swap generator permutes both sides compatibly
        for p in 0..4 {
            assert_eq!(m.apply(m.dom().act(1, p)), m.cod().act(1, m.apply(p)));
        }
    }

    #[test]
    fn equivariant_s3_mixed() {
        let g = Arc::new(PermGroup::named("S3").unwrap());
        let x = GSet::from_classes(g.clone(), &[1, 2]).unwrap();
        let y = GSet::from_classes(g.clone(), &[0]).unwrap();
        let z = GSet::from_classes(g, &[3, 1]).unwrap();
        assert!(check_distributivity_equivariant(&x, &y, &z).is_ok());
    }
}
