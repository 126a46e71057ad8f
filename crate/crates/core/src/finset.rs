//! Finite sets `{0, .., n-1}`, maps between them, and the three (co)limits
//! everything else is built from: product, coproduct and pullback.
//!
//! Isomorphism classes are never carried around as bijections; downstream
//! code compares objects through canonical forms instead.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FinSet {
    pub size: usize,
}

impl FinSet {
    pub fn new(size: usize) -> Self {
        FinSet { size }
    }

    pub fn elements(self) -> std::ops::Range<usize> {
        0..self.size
    }
}

/// A function `dom -> cod` given by its value table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSetMap")]
pub struct SetMap {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

#[derive(Deserialize)]
struct RawSetMap {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

impl TryFrom<RawSetMap> for SetMap {
    type Error = Error;

    fn try_from(raw: RawSetMap) -> Result<Self> {
        SetMap::new(raw.dom, raw.cod, raw.table)
    }
}

impl SetMap {
    pub fn new(dom: usize, cod: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom {
            return Err(Error::InvalidMap(format!(
                "table has {} entries but the domain has {dom} elements",
                table.len()
            )));
        }
        if let Some((i, &v)) = table.iter().enumerate().find(|(_, &v)| v >= cod) {
            return Err(Error::InvalidMap(format!(
                "entry {i} maps to {v}, outside a codomain of size {cod}"
            )));
        }
        Ok(SetMap { dom, cod, table })
    }

    /// Builds a map whose domain size is the table length.
    pub fn from_table(cod: usize, table: Vec<usize>) -> Result<Self> {
        SetMap::new(table.len(), cod, table)
    }

    pub fn identity(n: usize) -> Self {
        SetMap {
            dom: n,
            cod: n,
            table: (0..n).collect(),
        }
    }

    /// The unique map out of the empty set.
    pub fn empty(cod: usize) -> Self {
        SetMap {
            dom: 0,
            cod,
            table: Vec::new(),
        }
    }

    /// The constant map to a point.
    pub fn to_point(dom: usize) -> Self {
        SetMap {
            dom,
            cod: 1,
            table: vec![0; dom],
        }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// Elements of the domain mapping to `c`.
    pub fn fiber(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter(move |(_, &v)| v == c)
            .map(|(i, _)| i)
    }

    pub fn is_bijection(&self) -> bool {
        if self.dom != self.cod {
            return false;
        }
        let mut seen = vec![false; self.cod];
        for &v in &self.table {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        true
    }

    pub fn inverse(&self) -> Option<SetMap> {
        if !self.is_bijection() {
            return None;
        }
        let mut table = vec![0; self.dom];
        for (i, &v) in self.table.iter().enumerate() {
            table[v] = i;
        }
        Some(SetMap {
            dom: self.cod,
            cod: self.dom,
            table,
        })
    }
}

/// `g ∘ f`.
pub fn compose_maps(g: &SetMap, f: &SetMap) -> Result<SetMap> {
    if f.cod != g.dom {
        return Err(Error::CompositionMismatch(format!(
            "cannot compose a map into a set of size {} with a map out of a set of size {}",
            f.cod, g.dom
        )));
    }
    Ok(SetMap {
        dom: f.dom,
        cod: g.cod,
        table: f.table.iter().map(|&i| g.table[i]).collect(),
    })
}

/// `X × Y`, with `(x, y)` stored at index `x·|Y| + y`, and its two projections.
pub fn product(x: FinSet, y: FinSet) -> (FinSet, SetMap, SetMap) {
    let n = x.size * y.size;
    let mut p1 = Vec::with_capacity(n);
    let mut p2 = Vec::with_capacity(n);
    for a in 0..x.size {
        for b in 0..y.size {
            p1.push(a);
            p2.push(b);
        }
    }
    (
        FinSet::new(n),
        SetMap {
            dom: n,
            cod: x.size,
            table: p1,
        },
        SetMap {
            dom: n,
            cod: y.size,
            table: p2,
        },
    )
}

/// `X ⨿ Y` with `X` occupying the first `|X|` indices, and the two injections.
pub fn coproduct(x: FinSet, y: FinSet) -> (FinSet, SetMap, SetMap) {
    let n = x.size + y.size;
    (
        FinSet::new(n),
        SetMap {
            dom: x.size,
            cod: n,
            table: (0..x.size).collect(),
        },
        SetMap {
            dom: y.size,
            cod: n,
            table: (x.size..n).collect(),
        },
    )
}

/// Pullback of `f: A -> C` and `g: B -> C`.
///
/// The apex is `{(a, b) : f(a) = g(b)}` enumerated in lexicographic order of
/// `(a, b)`; the returned maps are the projections to `A` and `B`.
pub fn pullback(f: &SetMap, g: &SetMap) -> Result<(FinSet, SetMap, SetMap)> {
    if f.cod != g.cod {
        return Err(Error::CompositionMismatch(format!(
            "pullback needs a common codomain, got sizes {} and {}",
            f.cod, g.cod
        )));
    }
    // bucket B by image so the scan is linear in the output size
    let mut by_image: Vec<Vec<usize>> = vec![Vec::new(); g.cod];
    for (b, &c) in g.table.iter().enumerate() {
        by_image[c].push(b);
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (a, &c) in f.table.iter().enumerate() {
        for &b in &by_image[c] {
            left.push(a);
            right.push(b);
        }
    }
    let n = left.len();
    Ok((
        FinSet::new(n),
        SetMap {
            dom: n,
            cod: f.dom,
            table: left,
        },
        SetMap {
            dom: n,
            cod: g.dom,
            table: right,
        },
    ))
}

/// Every map `dom -> cod`, in lexicographic order of tables.
pub fn all_maps(dom: usize, cod: usize) -> Vec<SetMap> {
    if cod == 0 {
        return if dom == 0 { vec![SetMap::empty(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut table = vec![0; dom];
    loop {
        out.push(SetMap {
            dom,
            cod,
            table: table.clone(),
        });
        // odometer, last digit fastest
        let mut i = dom;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            table[i] += 1;
            if table[i] < cod {
                break;
            }
            table[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn map(cod: usize, t: &[usize]) -> SetMap {
        SetMap::from_table(cod, t.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id3 = SetMap::identity(3);
        assert_eq!(compose_maps(&id3, &id3).unwrap(), id3);

        let f = map(3, &[0, 2]);
        let g = map(2, &[1, 1, 0]);
        assert_eq!(compose_maps(&g, &f).unwrap().table(), &[1, 0]);

        let e = SetMap::empty(5);
        let g = map(4, &[0, 1, 2, 3, 3]);
        let h = compose_maps(&g, &e).unwrap();
        assert_eq!((h.dom(), h.cod()), (0, 4));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let f = map(3, &[0, 2]);
        assert!(matches!(
            compose_maps(&f, &f),
            Err(Error::CompositionMismatch(_))
        ));
    }

    #[test]
    fn invalid_tables_rejected() {
        assert!(SetMap::new(2, 2, vec![0]).is_err());
        assert!(SetMap::new(2, 2, vec![0, 2]).is_err());
        assert!(serde_json::from_str::<SetMap>(r#"{"dom":1,"cod":1,"table":[1]}"#).is_err());
    }

    #[test]
    fn product_examples() {
        let (p, a, b) = product(FinSet::new(2), FinSet::new(3));
        assert_eq!(p.size, 6);
        assert_eq!(a.table(), &[0, 0, 0, 1, 1, 1]);
        assert_eq!(b.table(), &[0, 1, 2, 0, 1, 2]);
        assert_eq!(product(FinSet::new(4), FinSet::new(0)).0.size, 0);
        let (p, _, b) = product(FinSet::new(1), FinSet::new(4));
        assert_eq!(p.size, 4);
        assert_eq!(b, SetMap::identity(4));
    }

    #[test]
    fn coproduct_examples() {
        let (s, i, j) = coproduct(FinSet::new(2), FinSet::new(3));
        assert_eq!(s.size, 5);
        assert_eq!(i.table(), &[0, 1]);
        assert_eq!(j.table(), &[2, 3, 4]);
        let (s, _, j) = coproduct(FinSet::new(0), FinSet::new(3));
        assert_eq!(s.size, 3);
        assert_eq!(j, SetMap::identity(3));
        assert_eq!(coproduct(FinSet::new(1), FinSet::new(1)).0.size, 2);
    }

    #[test]
    fn pullback_examples() {
        let id = SetMap::identity(3);
        let (p, l, r) = pullback(&id, &id).unwrap();
        assert_eq!(p.size, 3);
        assert_eq!(l, id);
        assert_eq!(r, id);

        let (p, _, _) = pullback(&SetMap::to_point(2), &SetMap::to_point(3)).unwrap();
        assert_eq!(p.size, 6);

        let (p, _, _) = pullback(&map(2, &[0, 0]), &map(2, &[1, 1])).unwrap();
        assert_eq!(p.size, 0);

        assert!(pullback(&SetMap::identity(2), &SetMap::identity(3)).is_err());
    }

    #[test]
    fn composition_is_associative_and_unital_up_to_three() {
        for a in 0..=3 {
            for b in 0..=3 {
                for f in all_maps(a, b) {
                    assert_eq!(compose_maps(&SetMap::identity(b), &f).unwrap(), f);
                    assert_eq!(compose_maps(&f, &SetMap::identity(a)).unwrap(), f);
                    for c in 0..=3 {
                        for g in all_maps(b, c) {
                            let gf = compose_maps(&g, &f).unwrap();
                            for d in 0..=3 {
                                for h in all_maps(c, d) {
                                    let lhs = compose_maps(&h, &gf).unwrap();
                                    let rhs =
                                        compose_maps(&compose_maps(&h, &g).unwrap(), &f).unwrap();
                                    assert_eq!(lhs, rhs);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pullback_universal_property() {
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 1..=2 {
                    for f in all_maps(a, c) {
                        for g in all_maps(b, c) {
                            let (p, l, r) = pullback(&f, &g).unwrap();
                            assert_eq!(
                                compose_maps(&f, &l).unwrap(),
                                compose_maps(&g, &r).unwrap()
                            );
                            for t in 0..=3 {
                                for h1 in all_maps(t, a) {
                                    for h2 in all_maps(t, b) {
                                        if compose_maps(&f, &h1).unwrap()
                                            != compose_maps(&g, &h2).unwrap()
                                        {
                                            continue;
                                        }
                                        let mediators = all_maps(t, p.size)
                                            .into_iter()
                                            .filter(|m| {
                                                compose_maps(&l, m).unwrap() == h1
                                                    && compose_maps(&r, m).unwrap() == h2
                                            })
                                            .count();
                                        assert_eq!(mediators, 1);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    fn arb_map(max_dom: usize, cod: usize) -> impl Strategy<Value = SetMap> {
        prop::collection::vec(0..cod, 0..=max_dom)
            .prop_map(move |t| SetMap::from_table(cod, t).unwrap())
    }

    proptest! {
        #[test]
        fn pullback_size_is_sum_of_fiber_products(
            (f, g) in (1usize..5).prop_flat_map(|c| (arb_map(6, c), arb_map(6, c)))
        ) {
            let (p, _, _) = pullback(&f, &g).unwrap();
            let expected: usize = (0..f.cod())
                .map(|c| f.fiber(c).count() * g.fiber(c).count())
                .sum();
            prop_assert_eq!(p.size, expected);
        }
    }
}
