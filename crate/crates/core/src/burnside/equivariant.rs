//! Spans of finite G-sets and their canonical orbit-type vectors.
//!
//! A transitive span over `X × Y` is determined by a point `a` of its apex:
//! the stabilizer `H` of `a` and the pair `(left(a), right(a)) ∈ (X×Y)^H`,
//! taken up to simultaneous conjugation. Every such class has a
//! representative with `H` the chosen representative of its conjugacy class
//! and `(x, y)` least in its orbit under the normalizer of `H`; these
//! representatives form the basis of `Hom(X, Y)`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::SetMap;
use crate::groups::{self, GMap, GSet, PermGroup, Subgroup};

/// A span `X <- A -> Y` of G-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSpan {
    left: GMap,
    right: GMap,
}

impl GSpan {
    pub fn new(left: GMap, right: GMap) -> Result<Self> {
        if left.dom() != right.dom() {
            return Err(Error::InvalidMap("span legs have different apexes".into()));
        }
        Ok(GSpan { left, right })
    }

    pub fn identity(x: &GSet) -> Self {
        GSpan {
            left: GMap::identity(x),
            right: GMap::identity(x),
        }
    }

    pub fn empty(x: &GSet, y: &GSet) -> Self {
        let e = GSet::empty(x.group().clone());
        GSpan {
            left: GMap::new(e.clone(), x.clone(), SetMap::empty(x.points())).unwrap(),
            right: GMap::new(e, y.clone(), SetMap::empty(y.points())).unwrap(),
        }
    }

    pub fn left(&self) -> &GMap {
        &self.left
    }

    pub fn right(&self) -> &GMap {
        &self.right
    }

    pub fn apex(&self) -> &GSet {
        self.left.dom()
    }

    pub fn source(&self) -> &GSet {
        self.left.cod()
    }

    pub fn target(&self) -> &GSet {
        self.right.cod()
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        self.apex().group()
    }

    /// The underlying span of finite sets.
    pub fn underlying(&self) -> super::Span {
        super::Span::new(self.left.map().clone(), self.right.map().clone()).unwrap()
    }
}

/// `s2 ∘ s1`, with apex the equivariant pullback over the middle G-set.
pub fn gspan_compose(s2: &GSpan, s1: &GSpan) -> Result<GSpan> {
    let (_, p1, p2) = groups::pullback_gsets(&s1.right, &s2.left)?;
    Ok(GSpan {
        left: s1.left.after(&p1)?,
        right: s2.right.after(&p2)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisElement {
    /// Subgroup class index of the stabilizer.
    pub class: usize,
    pub x: usize,
    pub y: usize,
}

/// The canonical basis of `Hom(X, Y)` in the effective Burnside category of
/// G-sets, in the order (class index, least `(x, y)`).
#[derive(Debug, Clone)]
pub struct GBurnBasis {
    source: GSet,
    target: GSet,
    elements: Vec<BasisElement>,
    index: HashMap<BasisElement, usize>,
    normalizers: Vec<Subgroup>,
}

impl GBurnBasis {
    pub fn new(source: &GSet, target: &GSet) -> Result<Self> {
        if !groups::same_group(source.group(), target.group()) {
            return Err(Error::CompositionMismatch("G-sets over different groups".into()));
        }
        let g = source.group();
        let lat = g.lattice()?;
        let mut elements = Vec::new();
        let mut normalizers = Vec::new();
        for class in lat.classes() {
            let rep = &class.representative;
            let normalizer = g.normalizer(rep);
            let xs = groups::fixed_points(source, rep);
            let ys = groups::fixed_points(target, rep);
            for &x in &xs {
                for &y in &ys {
                    let least = normalizer
                        .iter()
                        .map(|&n| (source.act(n, x), target.act(n, y)))
                        .min()
                        .unwrap();
                    if least == (x, y) {
                        elements.push(BasisElement {
                            class: class.index,
                            x,
                            y,
                        });
                    }
                }
            }
            normalizers.push(normalizer);
        }
        let index = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(GBurnBasis {
            source: source.clone(),
            target: target.clone(),
            elements,
            index,
            normalizers,
        })
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    /// Basis index of the transitive span through a point with stabilizer
    /// `h` lying over `(x, y)`.
    pub fn locate(&self, h: &[usize], x: usize, y: usize) -> Result<usize> {
        let g = self.source.group();
        let lat = g.lattice()?;
        let sid = lat
            .subgroup_id(h)
            .ok_or_else(|| Error::InvalidGSet(format!("{h:?} is not a subgroup")))?;
        let class = lat.class_of(sid);
        let c = lat.conjugator(sid);
        let (cx, cy) = (self.source.act(c, x), self.target.act(c, y));
        let (x, y) = self.normalizers[class]
            .iter()
            .map(|&n| (self.source.act(n, cx), self.target.act(n, cy)))
            .min()
            .unwrap();
        self.index
            .get(&BasisElement { class, x, y })
            .copied()
            .ok_or_else(|| Error::InvalidGSet("pair is not fixed by the stabilizer".into()))
    }

    /// A concrete span with the given multiplicities: one copy of `G/H`
    /// per unit of each basis coefficient, with `eH` sent to `(x, y)`.
    pub fn realize(&self, counts: &[u64]) -> Result<GSpan> {
        if counts.len() != self.elements.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for a basis of size {}",
                counts.len(),
                self.elements.len()
            )));
        }
        let g = self.source.group().clone();
        let lat = g.lattice()?;
        let mut apex = GSet::empty(g.clone());
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (b, &k) in self.elements.iter().zip(counts) {
            if k == 0 {
                continue;
            }
            let orbit = GSet::cosets(g.clone(), &lat.classes()[b.class].representative)?;
            // coset i is g·eH for any g with g·0 = i
            let mut lift = vec![usize::MAX; orbit.points()];
            for e in 0..g.order() {
                let i = orbit.act(e, 0);
                if lift[i] == usize::MAX {
                    lift[i] = e;
                }
            }
            for _ in 0..k {
                for &e in &lift {
                    left.push(self.source.act(e, b.x));
                    right.push(self.target.act(e, b.y));
                }
                apex = apex.disjoint_union(&orbit)?;
            }
        }
        let n = apex.points();
        let left = GMap::new(
            apex.clone(),
            self.source.clone(),
            SetMap::new(n, self.source.points(), left)?,
        )?;
        let right = GMap::new(apex, self.target.clone(), SetMap::new(n, self.target.points(), right)?)?;
        GSpan::new(left, right)
    }
}

/// An isomorphism class of spans `X -> Y` of G-sets: multiplicities over the
/// canonical basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GBurnHom {
    pub basis: Vec<BasisElement>,
    pub counts: Vec<u64>,
}

impl GBurnHom {
    pub fn zero(basis: &GBurnBasis) -> Self {
        GBurnHom {
            basis: basis.elements.clone(),
            counts: vec![0; basis.len()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Sum of spans (disjoint union of apexes).
    pub fn add(&self, other: &GBurnHom) -> Result<GBurnHom> {
        if self.basis != other.basis {
            return Err(Error::ShapeMismatch("homs over different bases".into()));
        }
        Ok(GBurnHom {
            basis: self.basis.clone(),
            counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect(),
        })
    }
}

/// Decomposes the apex into orbits and records each orbit's basis element.
pub fn gspan_canonical(s: &GSpan) -> Result<GBurnHom> {
    let basis = GBurnBasis::new(s.source(), s.target())?;
    canonical_in(&basis, s)
}

fn canonical_in(basis: &GBurnBasis, s: &GSpan) -> Result<GBurnHom> {
    let mut out = GBurnHom::zero(basis);
    for orbit in groups::orbits(s.apex()) {
        let a = orbit[0];
        let h = groups::stabilizer(s.apex(), a);
        let i = basis.locate(&h, s.left.apply(a), s.right.apply(a))?;
        out.counts[i] += 1;
    }
    Ok(out)
}

/// Composite of two classes `X -> Y -> Z`, computed by realizing both as
/// concrete spans and composing by pullback.
pub fn compose_gburn(
    second: &GBurnHom,
    first: &GBurnHom,
    x: &GSet,
    y: &GSet,
    z: &GSet,
) -> Result<GBurnHom> {
    let b1 = GBurnBasis::new(x, y)?;
    let b2 = GBurnBasis::new(y, z)?;
    if b1.elements != first.basis || b2.elements != second.basis {
        return Err(Error::CompositionMismatch(
            "hom classes do not live over the given G-sets".into(),
        ));
    }
    let s = gspan_compose(&b2.realize(&second.counts)?, &b1.realize(&first.counts)?)?;
    canonical_in(&GBurnBasis::new(x, z)?, &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::span_canonical;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn group(name: &str) -> Arc<PermGroup> {
        Arc::new(PermGroup::named(name).unwrap())
    }

    #[test]
    fn identity_on_orbit_is_unit_vector() {
        let g = group("S3");
        let lat = g.lattice().unwrap();
        for class in lat.classes() {
            let x = GSet::cosets(g.clone(), &class.representative).unwrap();
            let h = gspan_canonical(&GSpan::identity(&x)).unwrap();
            let hot: Vec<_> = h.counts.iter().enumerate().filter(|(_, &c)| c > 0).collect();
            assert_eq!(hot.len(), 1);
            assert_eq!(*hot[0].1, 1);
            assert_eq!(h.basis[hot[0].0], BasisElement { class: class.index, x: 0, y: 0 });
        }
    }

    #[test]
    fn empty_apex_is_zero() {
        let g = group("C3");
        let x = GSet::regular(g.clone());
        let y = GSet::point(g);
        assert!(gspan_canonical(&GSpan::empty(&x, &y)).unwrap().is_zero());
    }

    fn free_span_over_point(g: &Arc<PermGroup>) -> GSpan {
        let reg = GSet::regular(g.clone());
        GSpan::new(GMap::to_point(&reg), GMap::to_point(&reg)).unwrap()
    }

    #[test]
    fn c2_free_span() {
        let g = group("C2");
        let s = free_span_over_point(&g);
        let h = gspan_canonical(&s).unwrap();
        assert_eq!(h.basis, vec![
            BasisElement { class: 0, x: 0, y: 0 },
            BasisElement { class: 1, x: 0, y: 0 },
        ]);
        assert_eq!(h.counts, vec![1, 0]);

        // [C2/e]·[C2/e] = 2[C2/e]
        let c = gspan_compose(&s, &s).unwrap();
        assert_eq!(c.apex().points(), 4);
        assert_eq!(gspan_canonical(&c).unwrap().counts, vec![2, 0]);

        let pt = GSet::point(g);
        let z = gspan_compose(&GSpan::empty(&pt, &pt), &s).unwrap();
        assert!(gspan_canonical(&z).unwrap().is_zero());
    }

    #[test]
    fn identity_law() {
        let g = group("S3");
        let lat = g.lattice().unwrap();
        let x = GSet::cosets(g.clone(), &lat.classes()[1].representative).unwrap();
        let s = free_span_over_point(&g);
        let s = GSpan::new(
            GMap::new(s.apex().clone(), x.clone(), SetMap::new(6, 3, (0..6).map(|e| x.act(e, 0)).collect()).unwrap())
                .unwrap(),
            s.right().clone(),
        )
        .unwrap();
        let before = gspan_canonical(&s).unwrap();
        let after = gspan_canonical(&gspan_compose(&s, &GSpan::identity(&x)).unwrap()).unwrap();
        assert_eq!(before, after);
    }

    fn random_object(rng: &mut ChaCha8Rng, g: &Arc<PermGroup>, max_points: usize) -> GSet {
        let classes = g.subgroup_conjugacy_classes().unwrap();
        let mut picked = Vec::new();
        let mut size = 0;
        for _ in 0..3 {
            let c = rng.gen_range(0..classes.len());
            let idx = g.order() / classes[c].order;
            if size + idx <= max_points {
                size += idx;
                picked.push(c);
            }
        }
        GSet::from_classes(g.clone(), &picked).unwrap()
    }

    fn random_hom(rng: &mut ChaCha8Rng, basis: &GBurnBasis) -> Vec<u64> {
        (0..basis.len()).map(|_| rng.gen_range(0..=1)).collect()
    }

    /// Fixed-point counts φ(H, (x, y)) = |{a ∈ A^H : (l a, r a) = (x, y)}|
    /// over all subgroups H.
    fn marks(s: &GSpan) -> Vec<Vec<Vec<u64>>> {
        let g = s.group();
        let lat = g.lattice().unwrap();
        lat.subgroups()
            .iter()
            .map(|h| {
                let mut m = vec![vec![0; s.target().points()]; s.source().points()];
                for a in groups::fixed_points(s.apex(), h) {
                    m[s.left().apply(a)][s.right().apply(a)] += 1;
                }
                m
            })
            .collect()
    }

    /// Composition oracle independent of pullback construction: fixed points
    /// of a pullback are the pullback of fixed points, so marks multiply as
    /// matrices summed over `Y^H`.
    #[test]
    fn composition_matches_mark_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for name in ["C2", "C3", "S3", "V4"] {
            let g = group(name);
            let lat = g.lattice().unwrap();
            for _ in 0..15 {
                let x = random_object(&mut rng, &g, 6);
                let y = random_object(&mut rng, &g, 6);
                let z = random_object(&mut rng, &g, 6);
                let b1 = GBurnBasis::new(&x, &y).unwrap();
                let b2 = GBurnBasis::new(&y, &z).unwrap();
                let s1 = b1.realize(&random_hom(&mut rng, &b1)).unwrap();
                let s2 = b2.realize(&random_hom(&mut rng, &b2)).unwrap();
                let c = gspan_compose(&s2, &s1).unwrap();
                let (m1, m2, mc) = (marks(&s1), marks(&s2), marks(&c));
                for (k, h) in lat.subgroups().iter().enumerate() {
                    let yh = groups::fixed_points(&y, h);
                    for xi in 0..x.points() {
                        for zi in 0..z.points() {
                            let expected: u64 = yh.iter().map(|&yi| m1[k][xi][yi] * m2[k][yi][zi]).sum();
                            assert_eq!(mc[k][xi][zi], expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn realize_then_canonicalize_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for name in ["C4", "D4", "C6"] {
            let g = group(name);
            for _ in 0..10 {
                let x = random_object(&mut rng, &g, 8);
                let y = random_object(&mut rng, &g, 8);
                let b = GBurnBasis::new(&x, &y).unwrap();
                let counts: Vec<u64> = (0..b.len()).map(|_| rng.gen_range(0..=2)).collect();
                let h = gspan_canonical(&b.realize(&counts).unwrap()).unwrap();
                assert_eq!(h.counts, counts);
            }
        }
    }

    #[test]
    fn forgetting_the_action_gives_fiber_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for name in ["C2", "S3", "D4"] {
            let g = group(name);
            let lat = g.lattice().unwrap();
            for _ in 0..10 {
                let x = random_object(&mut rng, &g, 6);
                let y = random_object(&mut rng, &g, 6);
                let b = GBurnBasis::new(&x, &y).unwrap();
                let counts = random_hom(&mut rng, &b);
                let s = b.realize(&counts).unwrap();
                let h = gspan_canonical(&s).unwrap();
                let fibers = span_canonical(&s.underlying());
                let orbit_points: u64 = h
                    .basis
                    .iter()
                    .zip(&h.counts)
                    .map(|(e, &c)| c * (g.order() / lat.classes()[e.class].order) as u64)
                    .sum();
                assert_eq!(fibers.total(), orbit_points);
                // each orbit contributes its orbit of (x, y) pairs evenly
                for (e, &c) in h.basis.iter().zip(&h.counts) {
                    if c > 0 {
                        assert!(fibers.get(e.x, e.y) >= c);
                    }
                }
            }
        }
    }
}
