//! Finite categories as explicit composition tables.
//!
//! Universal properties are checked by exhaustive search, so every
//! category here is finite in objects and in morphisms. Categories whose
//! natural hom-sets are infinite (matrices over `ℕ`) enter through
//! truncations over finite semirings, with the object monoid `m ⊕ n = m + n`
//! defined only while the sum stays inside the truncation.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::cmon::{self, CommMonoidTable};
use crate::error::{Error, Result};

/// Largest number of composition-table entries a constructor will build.
pub const MAX_COMPOSITION_ENTRIES: usize = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: usize,
    homs: Vec<Vec<String>>,
    // compose[(a·n + b)·n + c][i·|Hom(b,c)| + j] = index of hom(b,c)[j] ∘ hom(a,b)[i]
    compose: Vec<Vec<usize>>,
    ids: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawFinCat {
    objects: usize,
    homs: Vec<Vec<Vec<String>>>,
    compose: BTreeMap<String, Vec<Vec<usize>>>,
    ids: Vec<usize>,
}

impl Serialize for FinCat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.objects;
        let mut compose = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (p, q) = (self.hom_count(a, b), self.hom_count(b, c));
                    if p > 0 && q > 0 {
                        let t = &self.compose[self.triple(a, b, c)];
                        compose.insert(
                            format!("{a},{b},{c}"),
                            (0..p).map(|i| t[i * q..(i + 1) * q].to_vec()).collect(),
                        );
                    }
                }
            }
        }
        RawFinCat {
            objects: n,
            homs: (0..n).map(|a| (0..n).map(|b| self.homs[a * n + b].clone()).collect()).collect(),
            compose,
            ids: self.ids.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinCat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawFinCat::deserialize(d)?;
        let n = raw.objects;
        if raw.homs.len() != n || raw.homs.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom(format!("homs must be {n}×{n}")));
        }
        let homs: Vec<Vec<String>> = raw.homs.into_iter().flatten().collect();
        let mut tables = raw.compose;
        let mut compose = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (p, q) = (homs[a * n + b].len(), homs[b * n + c].len());
                    let key = format!("{a},{b},{c}");
                    let rows = match tables.remove(&key) {
                        Some(rows) => rows,
                        None if p == 0 || q == 0 => vec![vec![]; p],
                        None => {
                            return Err(serde::de::Error::custom(format!("missing composition table {key}")))
                        }
                    };
                    if rows.len() != p || rows.iter().any(|r| r.len() != q) {
                        return Err(serde::de::Error::custom(format!(
                            "composition table {key} must be {p}×{q}"
                        )));
                    }
                    compose.push(rows.into_iter().flatten().collect());
                }
            }
        }
        if let Some(key) = tables.keys().next() {
            return Err(serde::de::Error::custom(format!("unexpected composition table {key}")));
        }
        FinCat::from_parts(n, homs, compose, raw.ids).map_err(serde::de::Error::custom)
    }
}

impl FinCat {
    /// `homs[a][b]` names the morphisms `a -> b`; `compose(a, b, c, i, j)`
    /// gives the index of `homs[b][c][j] ∘ homs[a][b][i]`. Only shapes and
    /// ranges are validated; the laws are [`check_category`]'s job.
    pub fn new(
        objects: usize,
        homs: Vec<Vec<Vec<String>>>,
        compose: impl Fn(usize, usize, usize, usize, usize) -> usize,
        ids: Vec<usize>,
    ) -> Result<Self> {
        let n = objects;
        if homs.len() != n || homs.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCategory(format!("homs must be {n}×{n}")));
        }
        let homs: Vec<Vec<String>> = homs.into_iter().flatten().collect();
        let entries: usize = (0..n * n * n)
            .map(|t| homs[t / n].len() * homs[(t / n % n) * n + t % n].len())
            .sum();
        if entries > MAX_COMPOSITION_ENTRIES {
            return Err(Error::SizeTooLarge {
                size: entries,
                max: MAX_COMPOSITION_ENTRIES,
            });
        }
        let mut table = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (p, q) = (homs[a * n + b].len(), homs[b * n + c].len());
                    let mut t = Vec::with_capacity(p * q);
                    for i in 0..p {
                        for j in 0..q {
                            t.push(compose(a, b, c, i, j));
                        }
                    }
                    table.push(t);
                }
            }
        }
        Self::from_parts(n, homs, table, ids)
    }

    fn from_parts(objects: usize, homs: Vec<Vec<String>>, compose: Vec<Vec<usize>>, ids: Vec<usize>) -> Result<Self> {
        let n = objects;
        if ids.len() != n {
            return Err(Error::InvalidCategory(format!("expected {n} identities, got {}", ids.len())));
        }
        for a in 0..n {
            if ids[a] >= homs[a * n + a].len() {
                return Err(Error::InvalidCategory(format!("identity of object {a} is out of range")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let limit = homs[a * n + c].len();
                    let t = &compose[(a * n + b) * n + c];
                    if let Some(v) = t.iter().find(|&&v| v >= limit) {
                        return Err(Error::InvalidCategory(format!(
                            "composite {v} out of range in table {a},{b},{c}"
                        )));
                    }
                }
            }
        }
        Ok(FinCat {
            objects,
            homs,
            compose,
            ids,
        })
    }

    /// The one-object category of a monoid.
    pub fn from_monoid(m: &CommMonoidTable) -> Self {
        let names = (0..m.size()).map(|x| x.to_string()).collect();
        FinCat::new(1, vec![vec![names]], |_, _, _, i, j| m.op(i, j), vec![m.unit()]).unwrap()
    }

    /// Objects `0..n` with exactly one morphism `a -> b` when `leq(a, b)`.
    pub fn poset(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let homs = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| if leq(a, b) { vec![format!("{a}<={b}")] } else { vec![] })
                    .collect()
            })
            .collect();
        FinCat::new(n, homs, |_, _, _, _, _| 0, vec![0; n])
    }

    /// Objects `0..n` with identities only.
    pub fn discrete(n: usize) -> Self {
        FinCat::poset(n, |a, b| a == b).unwrap()
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn hom_count(&self, a: usize, b: usize) -> usize {
        self.homs[a * self.objects + b].len()
    }

    pub fn hom_names(&self, a: usize, b: usize) -> &[String] {
        &self.homs[a * self.objects + b]
    }

    pub fn id(&self, a: usize) -> usize {
        self.ids[a]
    }

    #[inline]
    fn triple(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.objects + b) * self.objects + c
    }

    /// `g ∘ f` for `f: a -> b`, `g: b -> c`, by index.
    #[inline]
    pub fn compose(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> usize {
        self.compose[self.triple(a, b, c)][f * self.hom_count(b, c) + g]
    }

    /// The same objects with every arrow reversed.
    pub fn opposite(&self) -> FinCat {
        let n = self.objects;
        let homs = (0..n)
            .map(|a| (0..n).map(|b| self.hom_names(b, a).to_vec()).collect())
            .collect();
        FinCat::new(n, homs, |a, b, c, i, j| self.compose(c, b, a, j, i), self.ids.clone()).unwrap()
    }

    /// The full subcategory on `objects`, renumbered in the given order.
    pub fn full_subcategory(&self, objects: &[usize]) -> Result<FinCat> {
        if let Some(&o) = objects.iter().find(|&&o| o >= self.objects) {
            return Err(Error::InvalidCategory(format!("object {o} out of range")));
        }
        let homs = objects
            .iter()
            .map(|&a| objects.iter().map(|&b| self.hom_names(a, b).to_vec()).collect())
            .collect();
        FinCat::new(
            objects.len(),
            homs,
            |a, b, c, i, j| self.compose(objects[a], objects[b], objects[c], i, j),
            objects.iter().map(|&a| self.ids[a]).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum LawViolation {
    LeftIdentity { a: usize, b: usize, f: usize },
    RightIdentity { a: usize, b: usize, f: usize },
    Associativity { objects: [usize; 4], f: usize, g: usize, h: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CategoryReport {
    pub passed: bool,
    pub violation: Option<LawViolation>,
}

/// Identity laws for every morphism, then associativity for every
/// composable triple.
pub fn check_category(c: &FinCat) -> CategoryReport {
    let n = c.objects;
    let violation = identity_violation(c).or_else(|| {
        for a in 0..n {
            for b in 0..n {
                for x in 0..n {
                    for d in 0..n {
                        for f in 0..c.hom_count(a, b) {
                            for g in 0..c.hom_count(b, x) {
                                let gf = c.compose(a, b, x, f, g);
                                for h in 0..c.hom_count(x, d) {
                                    let hg = c.compose(b, x, d, g, h);
                                    if c.compose(a, x, d, gf, h) != c.compose(a, b, d, f, hg) {
                                        return Some(LawViolation::Associativity {
                                            objects: [a, b, x, d],
                                            f,
                                            g,
                                            h,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    });
    CategoryReport {
        passed: violation.is_none(),
        violation,
    }
}

fn identity_violation(c: &FinCat) -> Option<LawViolation> {
    let n = c.objects;
    for a in 0..n {
        for b in 0..n {
            for f in 0..c.hom_count(a, b) {
                if c.compose(a, b, b, f, c.ids[b]) != f {
                    return Some(LawViolation::LeftIdentity { a, b, f });
                }
                if c.compose(a, a, b, c.ids[a], f) != f {
                    return Some(LawViolation::RightIdentity { a, b, f });
                }
            }
        }
    }
    None
}

/// A commutative monoid structure on objects, possibly partial: `oplus[a][b]`
/// is `None` when the sum falls outside a truncation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjMonoid {
    pub unit: usize,
    pub oplus: Vec<Vec<Option<usize>>>,
}

impl ObjMonoid {
    pub fn new(objects: usize, unit: usize, oplus: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let m = ObjMonoid { unit, oplus };
        m.validate(objects)?;
        Ok(m)
    }

    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.oplus[a][b]
    }

    /// Unital, commutative, and associative wherever both sides are defined.
    pub fn validate(&self, objects: usize) -> Result<()> {
        let n = objects;
        if self.unit >= n || self.oplus.len() != n || self.oplus.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMonoid(format!("object monoid must be {n}×{n} with a unit in range")));
        }
        if self.oplus.iter().flatten().flatten().any(|&v| v >= n) {
            return Err(Error::InvalidMonoid("object sum out of range".into()));
        }
        for a in 0..n {
            if self.sum(self.unit, a) != Some(a) || self.sum(a, self.unit) != Some(a) {
                return Err(Error::InvalidMonoid(format!("unit law fails at object {a}")));
            }
            for b in 0..n {
                if self.sum(a, b) != self.sum(b, a) {
                    return Err(Error::InvalidMonoid(format!("{a} ⊕ {b} is not commutative")));
                }
                for c in 0..n {
                    let l = self.sum(a, b).and_then(|ab| self.sum(ab, c));
                    let r = self.sum(b, c).and_then(|bc| self.sum(a, bc));
                    if let (Some(l), Some(r)) = (l, r) {
                        if l != r {
                            return Err(Error::InvalidMonoid(format!("⊕ is not associative at {a}, {b}, {c}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Pairs `(a, b)` with `a ≤ b` whose sum is defined.
    pub fn defined_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.oplus.len();
        (0..n)
            .flat_map(|a| (a..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.oplus[a][b].is_some())
            .collect()
    }

    pub fn restrict(&self, objects: &[usize]) -> ObjMonoid {
        let pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        ObjMonoid {
            unit: pos[&self.unit],
            oplus: objects
                .iter()
                .map(|&a| {
                    objects
                        .iter()
                        .map(|&b| self.oplus[a][b].and_then(|s| pos.get(&s).copied()))
                        .collect()
                })
                .collect(),
        }
    }
}

/// A finite commutative semiring, elements `0..size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "param")]
pub enum FiniteSemiring {
    /// `{0, 1}` with `or` and `and`.
    Boolean,
    /// `ℤ/p`.
    Mod(u8),
    /// `ℕ / (b = b + 1)`: arithmetic capped at `b`.
    Saturating(u8),
}

impl FiniteSemiring {
    pub fn size(self) -> usize {
        match self {
            FiniteSemiring::Boolean => 2,
            FiniteSemiring::Mod(p) => p as usize,
            FiniteSemiring::Saturating(b) => b as usize + 1,
        }
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        match self {
            FiniteSemiring::Boolean => a | b,
            FiniteSemiring::Mod(p) => ((a as u16 + b as u16) % p as u16) as u8,
            FiniteSemiring::Saturating(c) => (a as u16 + b as u16).min(c as u16) as u8,
        }
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        match self {
            FiniteSemiring::Boolean => a & b,
            FiniteSemiring::Mod(p) => ((a as u16 * b as u16) % p as u16) as u8,
            FiniteSemiring::Saturating(c) => (a as u16 * b as u16).min(c as u16) as u8,
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            FiniteSemiring::Mod(p) if p < 2 => Err(Error::InvalidCategory(format!("ℤ/{p} is not a useful coefficient ring"))),
            FiniteSemiring::Saturating(0) => Err(Error::InvalidCategory("saturation bound must be positive".into())),
            _ => Ok(()),
        }
    }
}

/// All `rows × cols` matrices with entries below `base`, in lexicographic
/// order of their row-major entries.
fn all_matrices(rows: usize, cols: usize, base: usize) -> Result<Vec<Vec<u8>>> {
    let cells = rows * cols;
    let count = base
        .checked_pow(cells as u32)
        .filter(|&c| c <= MAX_COMPOSITION_ENTRIES)
        .ok_or(Error::SizeTooLarge {
            size: usize::MAX,
            max: MAX_COMPOSITION_ENTRIES,
        })?;
    Ok((0..count)
        .map(|mut code| {
            let mut v = vec![0u8; cells];
            for k in (0..cells).rev() {
                v[k] = (code % base) as u8;
                code /= base;
            }
            v
        })
        .collect())
}

fn matrix_name(m: &[u8], rows: usize, cols: usize) -> String {
    let rows: Vec<String> = (0..rows)
        .map(|i| {
            let r: Vec<String> = (0..cols).map(|j| m[i * cols + j].to_string()).collect();
            format!("[{}]", r.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// Index of a row-major matrix in the lexicographic enumeration.
fn matrix_index(m: &[u8], base: usize) -> usize {
    m.iter().fold(0, |acc, &v| acc * base + v as usize)
}

/// Matrices over `R` on objects `0..=max_object`, a morphism `m -> n`
/// being an `m × n` matrix composed by `g ∘ f = f·g`, with the object
/// monoid `m ⊕ n = m + n` where it stays in range.
pub fn mat_category(r: FiniteSemiring, max_object: usize) -> Result<(FinCat, ObjMonoid)> {
    r.validate()?;
    matrix_category(max_object + 1, r.size(), |a, b| r.add(a, b), |a, b| r.mul(a, b))
}

/// `ℕ`-matrices with entries at most `bound` on objects `0..=max_object`.
///
/// Rejected unless every composite stays within the bound. Entries of a
/// product grow monotonically in the factors, so the all-`bound` matrices
/// are the worst case.
pub fn bounded_nat_category(max_object: usize, bound: u8) -> Result<(FinCat, ObjMonoid)> {
    if bound == 0 && max_object > 0 {
        return Err(Error::InvalidCategory("identity matrices need the entry 1".into()));
    }
    let bound = bound as usize;
    if max_object > 0 {
        for b in 1..=max_object {
            let worst = bound * bound * b;
            if worst > bound {
                return Err(Error::NotClosed(format!(
                    "the all-{bound} matrices 1×{b} and {b}×1 compose to [[{worst}]]"
                )));
            }
        }
    }
    let cap = bound.max(1) as u8;
    // closed, so capping never changes a composite
    matrix_category(max_object + 1, bound + 1, move |a, b| (a + b).min(cap), move |a, b| (a * b).min(cap))
}

fn matrix_category(
    n: usize,
    base: usize,
    add: impl Fn(u8, u8) -> u8,
    mul: impl Fn(u8, u8) -> u8,
) -> Result<(FinCat, ObjMonoid)> {
    let mats: Vec<Vec<Vec<Vec<u8>>>> = (0..n)
        .map(|a| (0..n).map(|b| all_matrices(a, b, base)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let homs = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| mats[a][b].iter().map(|m| matrix_name(m, a, b)).collect())
                .collect()
        })
        .collect();
    let ids = (0..n)
        .map(|a| {
            let id: Vec<u8> = (0..a * a).map(|k| u8::from(k / a == k % a)).collect();
            matrix_index(&id, base)
        })
        .collect();
    let compose = |a: usize, b: usize, c: usize, i: usize, j: usize| {
        let (f, g) = (&mats[a][b][i], &mats[b][c][j]);
        let mut out = vec![0u8; a * c];
        for x in 0..a {
            for z in 0..c {
                out[x * c + z] = (0..b).fold(0, |acc, y| add(acc, mul(f[x * b + y], g[y * c + z])));
            }
        }
        matrix_index(&out, base)
    };
    let cat = FinCat::new(n, homs, compose, ids)?;
    Ok((cat, additive_objects(n)))
}

fn additive_objects(n: usize) -> ObjMonoid {
    ObjMonoid {
        unit: 0,
        oplus: (0..n)
            .map(|a| (0..n).map(|b| (a + b < n).then_some(a + b)).collect())
            .collect(),
    }
}

pub fn find_terminal(c: &FinCat) -> Option<usize> {
    (0..c.objects).find(|&t| (0..c.objects).all(|a| c.hom_count(a, t) == 1))
}

pub fn find_initial(c: &FinCat) -> Option<usize> {
    (0..c.objects).find(|&t| (0..c.objects).all(|a| c.hom_count(t, a) == 1))
}

/// A zero object: both initial and terminal.
pub fn find_zero(c: &FinCat) -> Option<usize> {
    (0..c.objects).find(|&t| (0..c.objects).all(|a| c.hom_count(a, t) == 1 && c.hom_count(t, a) == 1))
}

/// A (co)cone: legs `apex -> a`, `apex -> b` for a product, `a -> apex`,
/// `b -> apex` for a coproduct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cone {
    pub apex: usize,
    pub first: usize,
    pub second: usize,
}

/// First product of `a` and `b`, searching apexes in object order and legs in
/// morphism order. A cone is a product iff `h ↦ (π₁h, π₂h)` is a bijection
/// `Hom(t, p) -> Hom(t, a) × Hom(t, b)` for every object `t`.
pub fn find_product(c: &FinCat, a: usize, b: usize) -> Option<Cone> {
    product_with_apex(c, a, b, None)
}

pub fn find_coproduct(c: &FinCat, a: usize, b: usize) -> Option<Cone> {
    find_product(&c.opposite(), a, b)
}

fn product_with_apex(c: &FinCat, a: usize, b: usize, apex: Option<usize>) -> Option<Cone> {
    let n = c.objects;
    let candidates: Vec<usize> = match apex {
        Some(p) => vec![p],
        None => (0..n).collect(),
    };
    for p in candidates {
        if (0..n).any(|t| c.hom_count(t, p) != c.hom_count(t, a) * c.hom_count(t, b)) {
            continue;
        }
        for first in 0..c.hom_count(p, a) {
            for second in 0..c.hom_count(p, b) {
                if is_product_cone(c, a, b, p, first, second) {
                    return Some(Cone { apex: p, first, second });
                }
            }
        }
    }
    None
}

fn is_product_cone(c: &FinCat, a: usize, b: usize, p: usize, first: usize, second: usize) -> bool {
    (0..c.objects).all(|t| {
        let nb = c.hom_count(t, b);
        let mut seen = vec![false; c.hom_count(t, a) * nb];
        (0..c.hom_count(t, p)).all(|h| {
            let k = c.compose(t, p, a, h, first) * nb + c.compose(t, p, b, h, second);
            !std::mem::replace(&mut seen[k], true)
        })
    })
}

/// The unique morphism `a -> b` through the zero object.
fn zero_map(c: &FinCat, zero: usize, a: usize, b: usize) -> usize {
    c.compose(a, zero, b, 0, 0)
}

/// Domain over which binary (co)products are required: all pairs, or the
/// pairs on which a partial object monoid is defined.
fn required_pairs(c: &FinCat, monoid: Option<&ObjMonoid>) -> Vec<(usize, usize)> {
    match monoid {
        Some(m) => m.defined_pairs(),
        None => (0..c.objects).flat_map(|a| (a..c.objects).map(move |b| (a, b))).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitReport {
    pub passed: bool,
    /// Terminal object for products, initial object for coproducts.
    pub unit: Option<usize>,
    pub cones: Vec<((usize, usize), Option<Cone>)>,
}

/// Terminal object plus binary products on the required pairs.
pub fn is_cartesian(c: &FinCat, monoid: Option<&ObjMonoid>) -> LimitReport {
    let cones: Vec<_> = required_pairs(c, monoid)
        .into_iter()
        .map(|(a, b)| ((a, b), find_product(c, a, b)))
        .collect();
    let unit = find_terminal(c);
    LimitReport {
        passed: unit.is_some() && cones.iter().all(|(_, k)| k.is_some()),
        unit,
        cones,
    }
}

pub fn is_cocartesian(c: &FinCat, monoid: Option<&ObjMonoid>) -> LimitReport {
    is_cartesian(&c.opposite(), monoid)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiproductEntry {
    pub objects: (usize, usize),
    pub product: Option<Cone>,
    pub coproduct: Option<Cone>,
    /// The map `a ⨿ b -> a × b` with identity and zero components.
    pub comparison: Option<usize>,
    pub comparison_is_iso: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiadditiveReport {
    pub passed: bool,
    pub zero_object: Option<usize>,
    pub biproducts: Vec<BiproductEntry>,
    pub failure: Option<String>,
}

/// A zero object, binary products and coproducts on the required pairs, and
/// an invertible comparison map `a ⨿ b -> a × b` for each.
pub fn is_semiadditive(c: &FinCat, monoid: Option<&ObjMonoid>) -> SemiadditiveReport {
    let Some(zero) = find_zero(c) else {
        return SemiadditiveReport {
            passed: false,
            zero_object: None,
            biproducts: Vec::new(),
            failure: Some("no zero object".into()),
        };
    };
    let op = c.opposite();
    let mut failure = None;
    let biproducts: Vec<BiproductEntry> = required_pairs(c, monoid)
        .into_iter()
        .map(|(a, b)| {
            let product = find_product(c, a, b);
            let coproduct = find_product(&op, a, b);
            let comparison = match (product, coproduct) {
                (Some(p), Some(q)) => comparison_map(c, zero, a, b, p, q),
                _ => None,
            };
            let comparison_is_iso = match (comparison, product, coproduct) {
                (Some(k), Some(p), Some(q)) => is_iso(c, q.apex, p.apex, k),
                _ => false,
            };
            if failure.is_none() {
                failure = match (product, coproduct, comparison_is_iso) {
                    (None, _, _) => Some(format!("no product of {a} and {b}")),
                    (_, None, _) => Some(format!("no coproduct of {a} and {b}")),
                    (_, _, false) => Some(format!("comparison map for {a} and {b} is not invertible")),
                    _ => None,
                };
            }
            BiproductEntry {
                objects: (a, b),
                product,
                coproduct,
                comparison,
                comparison_is_iso,
            }
        })
        .collect();
    SemiadditiveReport {
        passed: failure.is_none(),
        zero_object: Some(zero),
        biproducts,
        failure,
    }
}

/// The unique `k: q -> p` with `π_i ∘ k ∘ ι_j` the identity for `i = j` and
/// zero otherwise.
fn comparison_map(c: &FinCat, zero: usize, a: usize, b: usize, p: Cone, q: Cone) -> Option<usize> {
    let want = [
        (a, q.first, a, p.first, c.id(a)),
        (a, q.first, b, p.second, zero_map(c, zero, a, b)),
        (b, q.second, a, p.first, zero_map(c, zero, b, a)),
        (b, q.second, b, p.second, c.id(b)),
    ];
    (0..c.hom_count(q.apex, p.apex)).find(|&k| {
        want.iter().all(|&(src, inj, dst, proj, target)| {
            let through = c.compose(src, q.apex, p.apex, inj, k);
            c.compose(src, p.apex, dst, through, proj) == target
        })
    })
}

fn is_iso(c: &FinCat, a: usize, b: usize, f: usize) -> bool {
    inverse(c, a, b, f).is_some()
}

fn inverse(c: &FinCat, a: usize, b: usize, f: usize) -> Option<usize> {
    (0..c.hom_count(b, a)).find(|&g| c.compose(a, b, a, f, g) == c.id(a) && c.compose(b, a, b, g, f) == c.id(b))
}

/// The commutative monoid `Hom(a, b)` of a semiadditive category, with the
/// zero map as unit.
///
/// `f + g` is `[f, g] ∘ k⁻¹ ∘ Δ` through a biproduct of `a` with itself, or
/// `∇ ∘ k⁻¹ ∘ ⟨f, g⟩` through one of `b` with itself, `k` the comparison map.
/// In a truncation where neither exists, `a` (or `b`) is split as a
/// coproduct (product) of objects with smaller hom-sets and the sum is taken
/// componentwise, which agrees since composition is bilinear.
pub fn hom_cmon(c: &FinCat, a: usize, b: usize) -> Result<CommMonoidTable> {
    let mut adder = Adder::new(c)?;
    adder.table(a, b)
}

struct Adder<'c> {
    cat: &'c FinCat,
    op: FinCat,
    zero: usize,
    cache: HashMap<(usize, usize), CommMonoidTable>,
}

impl<'c> Adder<'c> {
    fn new(cat: &'c FinCat) -> Result<Self> {
        let zero = find_zero(cat).ok_or_else(|| Error::NotSemiadditive("no zero object".into()))?;
        Ok(Adder {
            cat,
            op: cat.opposite(),
            zero,
            cache: HashMap::new(),
        })
    }

    fn biproduct(&self, x: usize) -> Option<(Cone, Cone, usize)> {
        let p = find_product(self.cat, x, x)?;
        let q = find_product(&self.op, x, x)?;
        let k = comparison_map(self.cat, self.zero, x, x, p, q)?;
        let k_inv = inverse(self.cat, q.apex, p.apex, k)?;
        Some((p, q, k_inv))
    }

    fn table(&mut self, a: usize, b: usize) -> Result<CommMonoidTable> {
        if let Some(t) = self.cache.get(&(a, b)) {
            return Ok(t.clone());
        }
        let c = self.cat;
        let n = c.hom_count(a, b);
        let unit = zero_map(c, self.zero, a, b);
        let mut table = vec![vec![0; n]; n];
        if let Some((p, q, k_inv)) = self.biproduct(a) {
            // Δ: a -> a × a, then k⁻¹ into a ⨿ a, then the copairing [f, g]
            let diag = mediator(c, a, a, p, c.id(a), c.id(a)).expect("products have mediators");
            let into_q = c.compose(a, p.apex, q.apex, diag, k_inv);
            for f in 0..n {
                for g in 0..n {
                    let copair = mediator(&self.op, b, a, q, f, g).expect("coproducts have mediators");
                    table[f][g] = c.compose(a, q.apex, b, into_q, copair);
                }
            }
        } else if let Some((p, q, k_inv)) = self.biproduct(b) {
            let fold = mediator(&self.op, b, b, q, c.id(b), c.id(b)).expect("coproducts have mediators");
            let out_of_p = c.compose(p.apex, q.apex, b, k_inv, fold);
            for f in 0..n {
                for g in 0..n {
                    let pair = mediator(c, a, b, p, f, g).expect("products have mediators");
                    table[f][g] = c.compose(a, p.apex, b, pair, out_of_p);
                }
            }
        } else if let Some((u, v, q)) = self.split(a, b, true) {
            // Hom(a, b) ≅ Hom(u, b) × Hom(v, b) by precomposing with ι_u, ι_v
            let (tu, tv) = (self.table(u, b)?, self.table(v, b)?);
            let parts: Vec<(usize, usize)> = (0..n)
                .map(|f| (c.compose(u, a, b, q.first, f), c.compose(v, a, b, q.second, f)))
                .collect();
            let index: HashMap<(usize, usize), usize> = parts.iter().enumerate().map(|(f, &pq)| (pq, f)).collect();
            for f in 0..n {
                for g in 0..n {
                    let sum = (tu.op(parts[f].0, parts[g].0), tv.op(parts[f].1, parts[g].1));
                    table[f][g] = index[&sum];
                }
            }
        } else if let Some((u, v, p)) = self.split(a, b, false) {
            let (tu, tv) = (self.table(a, u)?, self.table(a, v)?);
            let parts: Vec<(usize, usize)> = (0..n)
                .map(|f| (c.compose(a, b, u, f, p.first), c.compose(a, b, v, f, p.second)))
                .collect();
            let index: HashMap<(usize, usize), usize> = parts.iter().enumerate().map(|(f, &pq)| (pq, f)).collect();
            for f in 0..n {
                for g in 0..n {
                    let sum = (tu.op(parts[f].0, parts[g].0), tv.op(parts[f].1, parts[g].1));
                    table[f][g] = index[&sum];
                }
            }
        } else {
            return Err(Error::NotSemiadditive(format!(
                "no biproduct available to add morphisms {a} -> {b}"
            )));
        }
        let t = CommMonoidTable::new(n, unit, table)?;
        self.cache.insert((a, b), t.clone());
        Ok(t)
    }

    /// Writes `a` as a coproduct (or `b` as a product) of two objects whose
    /// hom-sets to `b` (from `a`) are strictly smaller.
    fn split(&self, a: usize, b: usize, source: bool) -> Option<(usize, usize, Cone)> {
        let c = self.cat;
        let n = c.objects;
        let whole = c.hom_count(a, b);
        let size = |x: usize| if source { c.hom_count(x, b) } else { c.hom_count(a, x) };
        for u in 0..n {
            for v in u..n {
                if size(u) >= whole || size(v) >= whole {
                    continue;
                }
                let cone = if source {
                    product_with_apex(&self.op, u, v, Some(a))
                } else {
                    product_with_apex(c, u, v, Some(b))
                };
                if let Some(k) = cone {
                    return Some((u, v, k));
                }
            }
        }
        None
    }
}

/// The unique `h: t -> p.apex` with `π₁h = f` and `π₂h = g`, for a product
/// `p` of `x` with itself.
fn mediator(c: &FinCat, t: usize, x: usize, p: Cone, f: usize, g: usize) -> Option<usize> {
    (0..c.hom_count(t, p.apex)).find(|&h| {
        c.compose(t, p.apex, x, h, p.first) == f && c.compose(t, p.apex, x, h, p.second) == g
    })
}

/// Semiadditive with every hom-monoid grouplike.
pub fn is_additive(c: &FinCat, monoid: Option<&ObjMonoid>) -> bool {
    if !is_semiadditive(c, monoid).passed {
        return false;
    }
    let Ok(mut adder) = Adder::new(c) else {
        return false;
    };
    let n = c.objects;
    (0..n * n).all(|k| adder.table(k / n, k % n).is_ok_and(|t| cmon::is_grouplike(&t)))
}

/// Every hom-monoid of a semiadditive category, indexed `[a][b]`.
pub fn hom_cmons(c: &FinCat) -> Result<Vec<Vec<CommMonoidTable>>> {
    let mut adder = Adder::new(c)?;
    let n = c.objects;
    (0..n).map(|a| (0..n).map(|b| adder.table(a, b)).collect()).collect()
}

/// `g ∘ (f + f') = g∘f + g∘f'` and `(g + g') ∘ f = g∘f + g'∘f` for all
/// composable morphisms, plus zero maps absorbing on both sides.
pub fn check_bilinear(c: &FinCat, sums: &[Vec<CommMonoidTable>]) -> Result<()> {
    let n = c.objects;
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let (ab, bd, ad) = (&sums[a][b], &sums[b][d], &sums[a][d]);
                for f in 0..ab.size() {
                    for g in 0..bd.size() {
                        let gf = c.compose(a, b, d, f, g);
                        for f2 in 0..ab.size() {
                            let lhs = c.compose(a, b, d, ab.op(f, f2), g);
                            if lhs != ad.op(gf, c.compose(a, b, d, f2, g)) {
                                return Err(Error::CompositionNotBilinear(format!(
                                    "postcomposition with morphism {g}: {b} -> {d} does not preserve sums in Hom({a}, {b})"
                                )));
                            }
                        }
                        for g2 in 0..bd.size() {
                            let lhs = c.compose(a, b, d, f, bd.op(g, g2));
                            if lhs != ad.op(gf, c.compose(a, b, d, f, g2)) {
                                return Err(Error::CompositionNotBilinear(format!(
                                    "precomposition with morphism {f}: {a} -> {b} does not preserve sums in Hom({b}, {d})"
                                )));
                            }
                        }
                    }
                }
                let absorbs = (0..ab.size()).all(|f| c.compose(a, b, d, f, bd.unit()) == ad.unit())
                    && (0..bd.size()).all(|g| c.compose(a, b, d, ab.unit(), g) == ad.unit());
                if !absorbs {
                    return Err(Error::CompositionNotBilinear(format!(
                        "zero maps are not absorbing at {a} -> {b} -> {d}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Replaces each hom-monoid by its Grothendieck group, composing formal
/// differences by `(g - g') ∘ (f - f') = (g∘f + g'∘f') - (g∘f' + g'∘f)`.
pub fn group_complete_cat(c: &FinCat) -> Result<FinCat> {
    let sums = hom_cmons(c)?;
    check_bilinear(c, &sums)?;
    let n = c.objects;
    let groups: Vec<Vec<cmon::GrothendieckGroup>> = sums
        .iter()
        .map(|row| row.iter().map(cmon::grothendieck_group).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let homs = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let names = c.hom_names(a, b);
                    let zero = sums[a][b].unit();
                    groups[a][b]
                        .representatives
                        .iter()
                        .map(|&(x, y)| {
                            if y == zero {
                                names[x].clone()
                            } else if x == zero {
                                format!("-{}", names[y])
                            } else {
                                format!("{} - {}", names[x], names[y])
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let compose = |a: usize, b: usize, d: usize, i: usize, j: usize| {
        let (f, f2) = groups[a][b].representatives[i];
        let (g, g2) = groups[b][d].representatives[j];
        let ad = &sums[a][d];
        let comp = |f: usize, g: usize| c.compose(a, b, d, f, g);
        let pos = ad.op(comp(f, g), comp(f2, g2));
        let neg = ad.op(comp(f2, g), comp(f, g2));
        groups[a][d].class(pos, neg)
    };
    let ids = (0..n).map(|a| groups[a][a].canonical[c.id(a)]).collect();
    FinCat::new(n, homs, compose, ids)
}

/// The full subcategory on the objects reachable from the unit and `x`
/// under `⊕`, with the restricted object monoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicSkeleton {
    pub category: FinCat,
    /// Original indices of the kept objects, increasing.
    pub objects: Vec<usize>,
    pub monoid: ObjMonoid,
    /// Index of `x` in the skeleton.
    pub point: usize,
}

pub fn cyclic_skeleton(c: &FinCat, monoid: &ObjMonoid, x: usize) -> Result<CyclicSkeleton> {
    monoid.validate(c.objects)?;
    if x >= c.objects {
        return Err(Error::InvalidCategory(format!("object {x} out of range")));
    }
    let mut keep = vec![false; c.objects];
    keep[monoid.unit] = true;
    keep[x] = true;
    loop {
        let current: Vec<usize> = (0..c.objects).filter(|&o| keep[o]).collect();
        let mut grew = false;
        for &a in &current {
            for &b in &current {
                if let Some(s) = monoid.sum(a, b) {
                    grew |= !std::mem::replace(&mut keep[s], true);
                }
            }
        }
        if !grew {
            break;
        }
    }
    let objects: Vec<usize> = (0..c.objects).filter(|&o| keep[o]).collect();
    Ok(CyclicSkeleton {
        category: c.full_subcategory(&objects)?,
        monoid: monoid.restrict(&objects),
        point: objects.iter().position(|&o| o == x).unwrap(),
        objects,
    })
}

/// The four verdicts together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Properties {
    pub cocartesian: bool,
    pub cartesian: bool,
    pub semiadditive: bool,
    pub additive: bool,
}

pub fn properties(c: &FinCat, monoid: Option<&ObjMonoid>) -> Properties {
    let semiadditive = is_semiadditive(c, monoid).passed;
    Properties {
        cocartesian: is_cocartesian(c, monoid).passed,
        cartesian: is_cartesian(c, monoid).passed,
        semiadditive,
        additive: semiadditive && is_additive(c, monoid),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> FinCat {
        FinCat::poset(2, |a, b| a <= b).unwrap()
    }

    fn z2_mat() -> (FinCat, ObjMonoid) {
        mat_category(FiniteSemiring::Mod(2), 2).unwrap()
    }

    fn bool_mat() -> (FinCat, ObjMonoid) {
        mat_category(FiniteSemiring::Boolean, 2).unwrap()
    }

    #[test]
    fn category_checks() {
        assert!(check_category(&FinCat::from_monoid(&CommMonoidTable::cyclic(2))).passed);
        assert!(check_category(&z2_mat().0).passed);
        assert!(check_category(&mat_category(FiniteSemiring::Saturating(2), 2).unwrap().0).passed);
        // a "monoid" whose product is constant breaks the identity law
        let broken = FinCat::new(1, vec![vec![vec!["e".into(), "x".into()]]], |_, _, _, _, _| 1, vec![0]).unwrap();
        assert!(matches!(
            check_category(&broken).violation,
            Some(LawViolation::LeftIdentity { f: 0, .. })
        ));
        // and a non-associative table with honest identities
        let t = [[0, 1, 2], [1, 2, 0], [2, 1, 0]];
        let magma = FinCat::new(
            1,
            vec![vec![vec!["e".into(), "x".into(), "y".into()]]],
            |_, _, _, i, j| t[i][j],
            vec![0],
        )
        .unwrap();
        assert!(matches!(
            check_category(&magma).violation,
            Some(LawViolation::Associativity { .. })
        ));
    }

    #[test]
    fn bounded_nat_rejects_unclosed() {
        assert!(matches!(bounded_nat_category(2, 1), Err(Error::NotClosed(_))));
        assert!(matches!(bounded_nat_category(1, 2), Err(Error::NotClosed(_))));
        let (c, _) = bounded_nat_category(1, 1).unwrap();
        assert!(check_category(&c).passed);
    }

    #[test]
    fn terminal_and_initial() {
        assert_eq!(find_terminal(&arrow()), Some(1));
        assert_eq!(find_initial(&arrow()), Some(0));
        assert_eq!(find_terminal(&FinCat::discrete(2)), None);
        assert_eq!(find_initial(&FinCat::discrete(2)), None);
        assert_eq!(find_zero(&bool_mat().0), Some(0));
    }

    #[test]
    fn products_and_coproducts() {
        assert_eq!(find_product(&arrow(), 0, 1).map(|c| c.apex), Some(0));
        assert_eq!(find_coproduct(&arrow(), 0, 1).map(|c| c.apex), Some(1));
        assert_eq!(find_product(&FinCat::discrete(2), 0, 1), None);
        assert_eq!(find_coproduct(&FinCat::discrete(2), 0, 1), None);
        let (c, _) = z2_mat();
        assert_eq!(find_product(&c, 1, 1).map(|k| k.apex), Some(2));
        assert_eq!(find_coproduct(&c, 1, 1).map(|k| k.apex), Some(2));
    }

    /// Any two product cones on the same pair are linked by exactly one
    /// isomorphism compatible with the legs.
    #[test]
    fn products_unique_up_to_unique_iso() {
        let (c, _) = mat_category(FiniteSemiring::Mod(3), 2).unwrap();
        let p = find_product(&c, 1, 1).unwrap();
        let cones: Vec<(usize, usize)> = (0..c.hom_count(p.apex, 1))
            .flat_map(|f| (0..c.hom_count(p.apex, 1)).map(move |g| (f, g)))
            .filter(|&(f, g)| is_product_cone(&c, 1, 1, p.apex, f, g))
            .collect();
        assert!(cones.len() > 1);
        for &(f, g) in &cones {
            let links: Vec<usize> = (0..c.hom_count(p.apex, p.apex))
                .filter(|&h| c.compose(p.apex, p.apex, 1, h, p.first) == f && c.compose(p.apex, p.apex, 1, h, p.second) == g)
                .collect();
            assert_eq!(links.len(), 1);
            assert!(is_iso(&c, p.apex, p.apex, links[0]));
        }
    }

    #[test]
    fn semiadditivity_verdicts() {
        let (b, bm) = bool_mat();
        assert!(is_semiadditive(&b, Some(&bm)).passed);
        let (z, zm) = z2_mat();
        assert!(is_semiadditive(&z, Some(&zm)).passed);
        let r = is_semiadditive(&arrow(), None);
        assert!(!r.passed);
        assert_eq!(r.zero_object, None);
        // the arrow is still cartesian and cocartesian
        assert!(is_cartesian(&arrow(), None).passed);
        assert!(is_cocartesian(&arrow(), None).passed);
    }

    #[test]
    fn hom_monoids() {
        let (z, _) = z2_mat();
        assert!(cmon::is_isomorphic(&hom_cmon(&z, 1, 1).unwrap(), &CommMonoidTable::cyclic(2)));
        assert_eq!(hom_cmon(&z, 0, 2).unwrap().size(), 1);
        let (b, _) = bool_mat();
        assert!(cmon::is_isomorphic(&hom_cmon(&b, 1, 1).unwrap(), &CommMonoidTable::chain(2)));
        // Hom(2, 2) needs the splitting fallback: 2 ⊕ 2 is outside the truncation
        let t = hom_cmon(&z, 2, 2).unwrap();
        assert!(cmon::check_axioms(&t).passed);
        let v = CommMonoidTable::cyclic(2);
        let v4 = v.product(&v);
        assert!(cmon::is_isomorphic(&t, &v4.product(&v4)));
        assert!(hom_cmon(&arrow(), 0, 1).is_err());
    }

    /// Sums computed through biproducts are entrywise matrix sums.
    #[test]
    fn hom_sums_are_entrywise() {
        for r in [FiniteSemiring::Boolean, FiniteSemiring::Mod(3), FiniteSemiring::Saturating(2)] {
            let (c, _) = mat_category(r, 2).unwrap();
            let base = r.size();
            for a in 0..3 {
                for b in 0..3 {
                    let t = hom_cmon(&c, a, b).unwrap();
                    let mats = all_matrices(a, b, base).unwrap();
                    for f in 0..t.size() {
                        for g in 0..t.size() {
                            let sum: Vec<u8> = mats[f].iter().zip(&mats[g]).map(|(&x, &y)| r.add(x, y)).collect();
                            assert_eq!(t.op(f, g), matrix_index(&sum, base));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn additivity_verdicts() {
        let (z, zm) = z2_mat();
        assert!(is_additive(&z, Some(&zm)));
        let (b, bm) = bool_mat();
        assert!(!is_additive(&b, Some(&bm)));
        assert!(is_additive(&FinCat::discrete(1), None));
        assert!(!is_additive(&arrow(), None));
    }

    #[test]
    fn completion() {
        let (z, zm) = z2_mat();
        let zc = group_complete_cat(&z).unwrap();
        assert!(check_category(&zc).passed);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(zc.hom_count(a, b), z.hom_count(a, b));
            }
        }
        assert!(is_additive(&zc, Some(&zm)));

        let (b, bm) = bool_mat();
        let bc = group_complete_cat(&b).unwrap();
        assert!(check_category(&bc).passed);
        assert!(is_semiadditive(&bc, Some(&bm)).passed);
        assert!(is_additive(&bc, Some(&bm)));
        for a in 0..3 {
            for d in 0..3 {
                assert_eq!(bc.hom_count(a, d), 1);
            }
        }
        // idempotent up to hom sizes
        let twice = group_complete_cat(&zc).unwrap();
        assert_eq!(twice.hom_count(2, 2), zc.hom_count(2, 2));
    }

    #[test]
    fn saturating_truncation_is_semiadditive_not_additive() {
        let (c, m) = mat_category(FiniteSemiring::Saturating(2), 2).unwrap();
        assert!(is_semiadditive(&c, Some(&m)).passed);
        assert!(!is_additive(&c, Some(&m)));
        let k = group_complete_cat(&c).unwrap();
        assert!(is_additive(&k, Some(&m)));
    }

    #[test]
    fn skeletons() {
        let (z, zm) = z2_mat();
        let s = cyclic_skeleton(&z, &zm, 1).unwrap();
        assert_eq!(s.objects, vec![0, 1, 2]);
        assert_eq!(s.category, z);
        let s2 = cyclic_skeleton(&z, &zm, 2).unwrap();
        assert_eq!(s2.objects, vec![0, 2]);
        let again = cyclic_skeleton(&s2.category, &s2.monoid, s2.point).unwrap();
        assert_eq!(again.objects, vec![0, 1]);
        assert_eq!(again.category, s2.category);

        // a stray object outside the ⊕-closure is dropped
        let c = FinCat::discrete(3);
        let m = ObjMonoid::new(
            3,
            0,
            vec![
                vec![Some(0), Some(1), Some(2)],
                vec![Some(1), Some(1), None],
                vec![Some(2), None, None],
            ],
        )
        .unwrap();
        assert_eq!(cyclic_skeleton(&c, &m, 1).unwrap().objects, vec![0, 1]);
    }

    #[test]
    fn json_round_trip_validates() {
        let (c, m) = bool_mat();
        let text = serde_json::to_string(&c).unwrap();
        let back: FinCat = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        let mt: ObjMonoid = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(mt, m);
        let bad = r#"{"objects":1,"homs":[[["e"]]],"compose":{"0,0,0":[[1]]},"ids":[0]}"#;
        assert!(serde_json::from_str::<FinCat>(bad).is_err());
    }
}
