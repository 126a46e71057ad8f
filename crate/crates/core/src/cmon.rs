//! Finite commutative monoids as Cayley tables.
//!
//! Group completion, tensor products (by congruence closure over a finite
//! presentation) and enumeration up to isomorphism.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest size accepted by [`enumerate_cmon`].
pub const MAX_ENUMERATE_CMON: usize = 5;
/// Largest order accepted by [`enumerate_ab`].
pub const MAX_ENUMERATE_AB: usize = 16;
/// Default number of reduced coefficient vectors the tensor closure may visit.
pub const DEFAULT_CLOSURE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct CommMonoidTable {
    size: usize,
    unit: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawTable {
    size: usize,
    unit: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<RawTable> for CommMonoidTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        CommMonoidTable::new(raw.size, raw.unit, raw.table)
    }
}

/// A grouplike [`CommMonoidTable`].
pub type AbGroupTable = CommMonoidTable;

impl CommMonoidTable {
    /// Checks shape and ranges only; the axioms are [`check_axioms`]'s job.
    pub fn new(size: usize, unit: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidMonoid("a monoid has at least one element".into()));
        }
        if unit >= size {
            return Err(Error::InvalidMonoid(format!("unit {unit} out of range for size {size}")));
        }
        if table.len() != size || table.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidMonoid(format!("table is not {size}×{size}")));
        }
        if let Some(v) = table.iter().flatten().find(|&&v| v >= size) {
            return Err(Error::InvalidMonoid(format!("entry {v} out of range for size {size}")));
        }
        Ok(CommMonoidTable { size, unit, table })
    }

    /// Like [`CommMonoidTable::new`], additionally requiring the axioms.
    pub fn checked(size: usize, unit: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = Self::new(size, unit, table)?;
        match check_axioms(&m).violation {
            None => Ok(m),
            Some(v) => Err(Error::InvalidMonoid(v.to_string())),
        }
    }

    pub fn trivial() -> Self {
        CommMonoidTable {
            size: 1,
            unit: 0,
            table: vec![vec![0]],
        }
    }

    /// `ℤ/n` with `0` as unit.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        CommMonoidTable { size: n, unit: 0, table }
    }

    /// The chain `0 < 1 < … < n-1` under `max`.
    pub fn chain(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
        CommMonoidTable { size: n, unit: 0, table }
    }

    /// `{0, …, n-1}` under addition capped at `n - 1`.
    pub fn truncated_nat(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b).min(n - 1)).collect()).collect();
        CommMonoidTable { size: n, unit: 0, table }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// `k·a`.
    pub fn times(&self, k: usize, a: usize) -> usize {
        (0..k).fold(self.unit, |acc, _| self.op(acc, a))
    }

    pub fn sum(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.unit, |acc, x| self.op(acc, x))
    }

    /// Componentwise product, with `(a, b)` at index `a·|N| + b`.
    pub fn product(&self, other: &CommMonoidTable) -> CommMonoidTable {
        let n = other.size;
        let size = self.size * n;
        let table = (0..size)
            .map(|x| {
                (0..size)
                    .map(|y| self.op(x / n, y / n) * n + other.op(x % n, y % n))
                    .collect()
            })
            .collect();
        CommMonoidTable {
            size,
            unit: self.unit * n + other.unit,
            table,
        }
    }

    /// The table transported along `perm` (old index to new index).
    pub fn relabel(&self, perm: &[usize]) -> CommMonoidTable {
        let mut table = vec![vec![0; self.size]; self.size];
        for a in 0..self.size {
            for b in 0..self.size {
                table[perm[a]][perm[b]] = perm[self.op(a, b)];
            }
        }
        CommMonoidTable {
            size: self.size,
            unit: perm[self.unit],
            table,
        }
    }

    /// Least `(q, p)` with `p > q` and `p·a = q·a`.
    pub fn index_and_period(&self, a: usize) -> (usize, usize) {
        let mut seen = HashMap::new();
        let mut x = self.unit;
        for k in 0.. {
            if let Some(&j) = seen.get(&x) {
                return (j, k);
            }
            seen.insert(x, k);
            x = self.op(x, a);
        }
        unreachable!()
    }

    /// Least `k ≥ 1` with `k·a = unit`, if any.
    pub fn additive_order(&self, a: usize) -> Option<usize> {
        match self.index_and_period(a) {
            (0, p) => Some(p),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "lowercase")]
pub enum AxiomViolation {
    Unit { element: usize },
    Commutativity { a: usize, b: usize },
    Associativity { a: usize, b: usize, c: usize },
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::Unit { element } => write!(f, "unit law fails at {element}"),
            AxiomViolation::Commutativity { a, b } => write!(f, "{a} + {b} != {b} + {a}"),
            AxiomViolation::Associativity { a, b, c } => {
                write!(f, "({a} + {b}) + {c} != {a} + ({b} + {c})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub violation: Option<AxiomViolation>,
}

/// Unit, then commutativity, then associativity; the first failure is the witness.
pub fn check_axioms(m: &CommMonoidTable) -> AxiomReport {
    let n = m.size;
    let violation = (0..n)
        .find(|&x| m.op(m.unit, x) != x || m.op(x, m.unit) != x)
        .map(|element| AxiomViolation::Unit { element })
        .or_else(|| {
            (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .find(|&(a, b)| m.op(a, b) != m.op(b, a))
                .map(|(a, b)| AxiomViolation::Commutativity { a, b })
        })
        .or_else(|| {
            (0..n * n * n)
                .map(|i| (i / (n * n), i / n % n, i % n))
                .find(|&(a, b, c)| m.op(m.op(a, b), c) != m.op(a, m.op(b, c)))
                .map(|(a, b, c)| AxiomViolation::Associativity { a, b, c })
        });
    AxiomReport {
        passed: violation.is_none(),
        violation,
    }
}

fn require_valid(m: &CommMonoidTable) -> Result<()> {
    match check_axioms(m).violation {
        None => Ok(()),
        Some(v) => Err(Error::InvalidMonoid(v.to_string())),
    }
}

pub fn is_grouplike(m: &CommMonoidTable) -> bool {
    (0..m.size).all(|a| (0..m.size).any(|b| m.op(a, b) == m.unit))
}

/// `K(M)` together with the class of every formal difference.
#[derive(Debug, Clone, Serialize)]
pub struct GrothendieckGroup {
    pub group: AbGroupTable,
    /// `canonical[a]` is the class of `a - 0`.
    pub canonical: Vec<usize>,
    /// Lexicographically least pair `(a, b)` in each class.
    pub representatives: Vec<(usize, usize)>,
    #[serde(skip)]
    size: usize,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl GrothendieckGroup {
    /// The class of `a - b`.
    pub fn class(&self, a: usize, b: usize) -> usize {
        self.class_of[a * self.size + b]
    }
}

/// Group completion of a finite commutative monoid.
///
/// `(a, b) ~ (c, d)` iff `a + d + k = c + b + k` for some `k`. Any working
/// `k` can be enlarged to the sum `w` of all elements, so the relation is
/// `a + d + w = c + b + w`, and the classes are the elements of the group
/// `M + e` for the idempotent `e` in the multiples of `w`.
pub fn grothendieck_group(m: &CommMonoidTable) -> Result<GrothendieckGroup> {
    require_valid(m)?;
    let n = m.size;
    let w = m.sum(0..n);
    let mut e = w;
    while m.op(e, e) != e {
        e = m.op(e, w);
    }
    let ideal: BTreeSet<usize> = (0..n).map(|x| m.op(x, e)).collect();
    let inverse: HashMap<usize, usize> = ideal
        .iter()
        .map(|&y| (y, *ideal.iter().find(|&&z| m.op(y, z) == e).expect("the ideal is a group")))
        .collect();
    // key of a - b is a + (b + e)⁻¹ in the ideal
    let key = |a: usize, b: usize| m.op(m.op(a, e), inverse[&m.op(b, e)]);

    let mut order: Vec<usize> = Vec::new();
    let mut index: HashMap<usize, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let unit_key = key(m.unit, m.unit);
    index.insert(unit_key, 0);
    order.push(unit_key);
    representatives.push((usize::MAX, usize::MAX));
    for a in 0..n {
        for b in 0..n {
            let k = key(a, b);
            let i = *index.entry(k).or_insert_with(|| {
                order.push(k);
                representatives.push((usize::MAX, usize::MAX));
                order.len() - 1
            });
            if representatives[i].0 == usize::MAX {
                representatives[i] = (a, b);
            }
        }
    }
    // unit class first, the rest by least representative
    let mut rest: Vec<usize> = (1..order.len()).collect();
    rest.sort_by_key(|&i| representatives[i]);
    let mut relabel = vec![0; order.len()];
    for (new, &old) in rest.iter().enumerate() {
        relabel[old] = new + 1;
    }
    let size = order.len();
    let mut reps = vec![(0, 0); size];
    for (old, &r) in representatives.iter().enumerate() {
        reps[relabel[old]] = r;
    }
    let mut class_of = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            class_of[a * n + b] = relabel[index[&key(a, b)]];
        }
    }
    let table = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let (a, b) = reps[i];
                    let (c, d) = reps[j];
                    class_of[m.op(a, c) * n + m.op(b, d)]
                })
                .collect()
        })
        .collect();
    Ok(GrothendieckGroup {
        group: CommMonoidTable { size, unit: 0, table },
        canonical: (0..n).map(|a| class_of[a * n + m.unit]).collect(),
        representatives: reps,
        size: n,
        class_of,
    })
}

/// Generators and relations, each relation a pair of multisets of generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidPresentation {
    pub generators: usize,
    pub relations: Vec<(Vec<usize>, Vec<usize>)>,
}

/// A presentation of `M` on a greedy generating set, with a normal word for
/// every element.
#[derive(Debug, Clone)]
pub struct NormalPresentation {
    /// Element named by each generator.
    pub generators: Vec<usize>,
    /// Coefficient vector over the generators for each element.
    pub words: Vec<Vec<usize>>,
    pub presentation: MonoidPresentation,
}

/// Generators are added in index order whenever an element is not yet in
/// the span of earlier ones. Relations are `word(m) + s = word(m + s)`,
/// which suffice since every word then rewrites to a normal word.
pub fn presentation(m: &CommMonoidTable) -> Result<NormalPresentation> {
    require_valid(m)?;
    let n = m.size;
    let mut generators = Vec::new();
    let mut reached = span(m, &generators);
    for x in 0..n {
        if !reached[x] {
            generators.push(x);
            reached = span(m, &generators);
        }
    }
    let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
    words[m.unit] = Some(vec![0; generators.len()]);
    let mut queue = VecDeque::from([m.unit]);
    while let Some(x) = queue.pop_front() {
        for (gi, &s) in generators.iter().enumerate() {
            let y = m.op(x, s);
            if words[y].is_none() {
                let mut w = words[x].clone().unwrap();
                w[gi] += 1;
                words[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    let words: Vec<Vec<usize>> = words.into_iter().map(Option::unwrap).collect();
    let to_multiset = |w: &[usize]| -> Vec<usize> {
        w.iter().enumerate().flat_map(|(g, &c)| std::iter::repeat_n(g, c)).collect()
    };
    let mut relations = Vec::new();
    for x in 0..n {
        for (gi, &s) in generators.iter().enumerate() {
            let mut lhs = words[x].clone();
            lhs[gi] += 1;
            let rhs = &words[m.op(x, s)];
            if &lhs != rhs {
                relations.push((to_multiset(&lhs), to_multiset(rhs)));
            }
        }
    }
    Ok(NormalPresentation {
        presentation: MonoidPresentation {
            generators: generators.len(),
            relations,
        },
        generators,
        words,
    })
}

fn span(m: &CommMonoidTable, gens: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; m.size];
    seen[m.unit] = true;
    let mut stack = vec![m.unit];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = m.op(x, s);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

pub fn tensor(m: &CommMonoidTable, n: &CommMonoidTable) -> Result<CommMonoidTable> {
    tensor_with_budget(m, n, DEFAULT_CLOSURE_BUDGET)
}

pub fn tensor_with_budget(m: &CommMonoidTable, n: &CommMonoidTable, budget: usize) -> Result<CommMonoidTable> {
    Ok(tensor_product(m, n, budget)?.monoid)
}

/// `M ⊗ N` with its universal bilinear map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorProduct {
    pub monoid: CommMonoidTable,
    /// `pairing[a][b]` is `a ⊗ b`.
    pub pairing: Vec<Vec<usize>>,
}

/// `M ⊗ N`, the universal target of bilinear maps out of `M × N`.
///
/// Generators are pairs `s ⊗ t` of generators; relations are `r ⊗ t` and
/// `s ⊗ r'` for the relations `r`, `r'` of the factors. Each generator
/// satisfies `p·g = q·g` inherited from either factor, so coefficient
/// vectors reduce into a finite box, and the congruence on the box is the
/// equivalence generated by all translates of the relations.
pub fn tensor_product(m: &CommMonoidTable, n: &CommMonoidTable, budget: usize) -> Result<TensorProduct> {
    let pm = presentation(m)?;
    let pn = presentation(n)?;
    let (gm, gn) = (pm.generators.len(), pn.generators.len());
    let gens = gm * gn;
    if gens == 0 {
        return Ok(TensorProduct {
            monoid: CommMonoidTable::trivial(),
            pairing: vec![vec![0; n.size]; m.size],
        });
    }
    // torsion (q, p) of s ⊗ t: from whichever factor has the smaller p
    let torsion: Vec<(usize, usize)> = (0..gens)
        .map(|g| {
            let a = m.index_and_period(pm.generators[g / gn]);
            let b = n.index_and_period(pn.generators[g % gn]);
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        })
        .collect();
    let mut total: usize = 1;
    for &(_, p) in &torsion {
        total = total.checked_mul(p).filter(|&t| t <= budget).ok_or(Error::ClosureBudgetExceeded {
            needed: torsion.iter().fold(1usize, |acc, &(_, p)| acc.saturating_mul(p)),
            budget,
        })?;
    }
    let reduce = |c: usize, g: usize| {
        let (q, p) = torsion[g];
        if c < p {
            c
        } else {
            q + (c - q) % (p - q)
        }
    };
    // mixed-radix codes for reduced vectors
    let encode = |v: &[usize]| -> usize {
        v.iter()
            .enumerate()
            .rev()
            .fold(0, |acc, (g, &c)| acc * torsion[g].1 + reduce(c, g))
    };
    let decode = |mut code: usize| -> Vec<usize> {
        (0..gens)
            .map(|g| {
                let c = code % torsion[g].1;
                code /= torsion[g].1;
                c
            })
            .collect()
    };

    let mut relations: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let counts = |ms: &[usize], len: usize| {
        let mut v = vec![0; len];
        for &g in ms {
            v[g] += 1;
        }
        v
    };
    for (l, r) in &pm.presentation.relations {
        let (l, r) = (counts(l, gm), counts(r, gm));
        for t in 0..gn {
            let mut u = vec![0; gens];
            let mut v = vec![0; gens];
            for s in 0..gm {
                u[s * gn + t] = l[s];
                v[s * gn + t] = r[s];
            }
            relations.push((u, v));
        }
    }
    for (l, r) in &pn.presentation.relations {
        let (l, r) = (counts(l, gn), counts(r, gn));
        for s in 0..gm {
            let mut u = vec![0; gens];
            let mut v = vec![0; gens];
            for t in 0..gn {
                u[s * gn + t] = l[t];
                v[s * gn + t] = r[t];
            }
            relations.push((u, v));
        }
    }

    let mut uf = UnionFind::new(total);
    let add = |a: &[usize], b: &[usize]| -> usize {
        let s: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        encode(&s)
    };
    for code in 0..total {
        let w = decode(code);
        for (u, v) in &relations {
            uf.union(add(&w, u), add(&w, v));
        }
    }

    let mut class = vec![usize::MAX; total];
    let mut reps = Vec::new();
    for code in 0..total {
        let root = uf.find(code);
        if class[root] == usize::MAX {
            class[root] = reps.len();
            reps.push(code);
        }
        class[code] = class[root];
    }
    let vecs: Vec<Vec<usize>> = reps.iter().map(|&c| decode(c)).collect();
    let table = vecs
        .iter()
        .map(|a| vecs.iter().map(|b| class[uf.find(add(a, b))]).collect())
        .collect();
    // a ⊗ b has coefficient word(a)_s · word(b)_t on s ⊗ t
    let pairing = pm
        .words
        .iter()
        .map(|wa| {
            pn.words
                .iter()
                .map(|wb| {
                    let v: Vec<usize> = (0..gens).map(|g| wa[g / gn] * wb[g % gn]).collect();
                    class[uf.find(encode(&v))]
                })
                .collect()
        })
        .collect();
    Ok(TensorProduct {
        monoid: CommMonoidTable::new(reps.len(), 0, table)?,
        pairing,
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    // the smaller root wins so class representatives stay least
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

/// Every unit-preserving additive map `m -> n`, in lexicographic order of
/// image tables.
pub fn homomorphisms(m: &CommMonoidTable, n: &CommMonoidTable) -> Vec<Vec<usize>> {
    fn extend(m: &CommMonoidTable, n: &CommMonoidTable, f: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let a = f.len();
        if a == m.size {
            out.push(f.clone());
            return;
        }
        for v in 0..n.size {
            if a == m.unit && v != n.unit {
                continue;
            }
            f.push(v);
            let ok = (0..=a).all(|b| {
                let ab = m.op(a, b);
                ab > a || f[ab] == n.op(f[a], f[b])
            });
            if ok {
                extend(m, n, f, out);
            }
            f.pop();
        }
    }
    let mut out = Vec::new();
    extend(m, n, &mut Vec::with_capacity(m.size), &mut out);
    // pairs whose sum was assigned later are checked once the sum is known
    out.retain(|f| (0..m.size).all(|a| (0..m.size).all(|b| f[m.op(a, b)] == n.op(f[a], f[b]))));
    out
}

/// The isomorphism `m -> n` sending `x_i` to `y_i` for the given pairs, if
/// those images determine one: the submonoid of `m × n` generated by the
/// pairs must be the graph of a bijection.
pub fn iso_from_generators(m: &CommMonoidTable, n: &CommMonoidTable, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut image = vec![usize::MAX; m.size];
    let mut preimage = vec![usize::MAX; n.size];
    let mut stack = vec![(m.unit, n.unit)];
    let mut seen = std::collections::HashSet::from([(m.unit, n.unit)]);
    while let Some((x, y)) = stack.pop() {
        if image[x] != usize::MAX && image[x] != y || preimage[y] != usize::MAX && preimage[y] != x {
            return None;
        }
        image[x] = y;
        preimage[y] = x;
        for &(a, b) in pairs {
            let next = (m.op(x, a), n.op(y, b));
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    (m.size == n.size && image.iter().all(|&y| y != usize::MAX)).then_some(image)
}

/// A unit-preserving isomorphism `m -> n`, as the image of each element.
pub fn find_isomorphism(m: &CommMonoidTable, n: &CommMonoidTable) -> Option<Vec<usize>> {
    if m.size != n.size {
        return None;
    }
    let sig = |t: &CommMonoidTable, a: usize| (t.index_and_period(a), t.op(a, a) == a);
    let sm: Vec<_> = (0..m.size).map(|a| sig(m, a)).collect();
    let sn: Vec<_> = (0..n.size).map(|a| sig(n, a)).collect();
    let mut image = vec![usize::MAX; m.size];
    let mut used = vec![false; n.size];
    image[m.unit] = n.unit;
    used[n.unit] = true;
    if sm[m.unit] != sn[n.unit] {
        return None;
    }
    let order: Vec<usize> = (0..m.size).filter(|&a| a != m.unit).collect();
    fn consistent(m: &CommMonoidTable, n: &CommMonoidTable, image: &[usize], a: usize) -> bool {
        (0..m.size).filter(|&b| image[b] != usize::MAX).all(|b| {
            let c = m.op(a, b);
            image[c] == usize::MAX || image[c] == n.op(image[a], image[b])
        }) && (0..m.size)
            .filter(|&b| image[b] != usize::MAX)
            .flat_map(|b| (0..m.size).filter(|&c| image[c] != usize::MAX).map(move |c| (b, c)))
            .filter(|&(b, c)| m.op(b, c) == a)
            .all(|(b, c)| n.op(image[b], image[c]) == image[a])
    }
    fn go(
        k: usize,
        order: &[usize],
        m: &CommMonoidTable,
        n: &CommMonoidTable,
        sm: &[((usize, usize), bool)],
        sn: &[((usize, usize), bool)],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let a = order[k];
        for b in 0..n.size {
            if used[b] || sm[a] != sn[b] {
                continue;
            }
            image[a] = b;
            used[b] = true;
            if consistent(m, n, image, a) && go(k + 1, order, m, n, sm, sn, image, used) {
                return true;
            }
            image[a] = usize::MAX;
            used[b] = false;
        }
        false
    }
    go(0, &order, m, n, &sm, &sn, &mut image, &mut used).then_some(image)
}

pub fn is_isomorphic(m: &CommMonoidTable, n: &CommMonoidTable) -> bool {
    find_isomorphism(m, n).is_some()
}

/// Least relabeled table over every relabeling sending the unit to `0`.
pub fn canonical_form(m: &CommMonoidTable) -> Result<CommMonoidTable> {
    if m.size > 8 {
        return Err(Error::SizeTooLarge { size: m.size, max: 8 });
    }
    let others: Vec<usize> = (0..m.size).filter(|&a| a != m.unit).collect();
    let mut best: Option<CommMonoidTable> = None;
    let mut targets: Vec<usize> = (1..m.size).collect();
    loop {
        let mut perm = vec![0; m.size];
        for (&a, &t) in others.iter().zip(&targets) {
            perm[a] = t;
        }
        let r = m.relabel(&perm);
        if best.as_ref().is_none_or(|b| r.table < b.table) {
            best = Some(r);
        }
        if !next_permutation(&mut targets) {
            break;
        }
    }
    Ok(best.unwrap())
}

/// Advances to the next lexicographic permutation; false after the last.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Every commutative monoid of size `n` up to isomorphism, as canonical
/// forms in increasing order.
pub fn enumerate_cmon(n: usize) -> Result<Vec<CommMonoidTable>> {
    if n > MAX_ENUMERATE_CMON {
        return Err(Error::SizeTooLarge { size: n, max: MAX_ENUMERATE_CMON });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    const HOLE: usize = usize::MAX;
    let mut table = vec![vec![HOLE; n]; n];
    for x in 0..n {
        table[0][x] = x;
        table[x][0] = x;
    }
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut found = BTreeSet::new();
    fill(&mut table, &cells, 0, &mut found)?;
    Ok(found.into_iter().collect())
}

fn fill(
    table: &mut Vec<Vec<usize>>,
    cells: &[(usize, usize)],
    k: usize,
    found: &mut BTreeSet<CommMonoidTable>,
) -> Result<()> {
    let n = table.len();
    if k == cells.len() {
        let m = CommMonoidTable::new(n, 0, table.clone())?;
        found.insert(canonical_form(&m)?);
        return Ok(());
    }
    let (i, j) = cells[k];
    for v in 0..n {
        table[i][j] = v;
        table[j][i] = v;
        if partial_associative(table) {
            fill(table, cells, k + 1, found)?;
        }
    }
    table[i][j] = usize::MAX;
    table[j][i] = usize::MAX;
    Ok(())
}

fn partial_associative(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    const HOLE: usize = usize::MAX;
    for a in 0..n {
        for b in 0..n {
            let ab = t[a][b];
            if ab == HOLE {
                continue;
            }
            for c in 0..n {
                let bc = t[b][c];
                if bc == HOLE {
                    continue;
                }
                let (l, r) = (t[ab][c], t[a][bc]);
                if l != HOLE && r != HOLE && l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// One abelian group of each isomorphism type of order `n`, built as
/// `ℤ/p^a₁ × ℤ/p^a₂ × …` from partitions of prime exponents. Groups are
/// listed by the lexicographic order of their per-prime partitions, with
/// parts in decreasing order.
pub fn enumerate_ab(n: usize) -> Result<Vec<AbGroupTable>> {
    if n > MAX_ENUMERATE_AB {
        return Err(Error::SizeTooLarge { size: n, max: MAX_ENUMERATE_AB });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(abelian_invariants(n)
        .into_iter()
        .map(|orders| {
            orders
                .iter()
                .fold(CommMonoidTable::trivial(), |acc, &q| acc.product(&CommMonoidTable::cyclic(q)))
        })
        .collect())
}

/// The cyclic-factor orders `p^a` of every abelian group of order `n`.
pub fn abelian_invariants(n: usize) -> Vec<Vec<usize>> {
    let mut per_prime: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            per_prime.push(
                partitions(e)
                    .into_iter()
                    .map(|part| part.into_iter().map(|a| p.pow(a as u32)).collect())
                    .collect(),
            );
        }
        p += 1;
    }
    per_prime.into_iter().fold(vec![Vec::new()], |acc, choices| {
        acc.iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.extend(c);
                    v
                })
            })
            .collect()
    })
}

/// Partitions of `n` into decreasing parts, in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn semilattice() -> CommMonoidTable {
        CommMonoidTable::chain(2)
    }

    #[test]
    fn axiom_examples() {
        assert!(check_axioms(&CommMonoidTable::cyclic(2)).passed);
        assert!(check_axioms(&semilattice()).passed);
        let broken = CommMonoidTable::new(2, 0, vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            check_axioms(&broken).violation,
            Some(AxiomViolation::Unit { element: 0 })
        );
        let noncomm = CommMonoidTable::new(3, 0, vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]).unwrap();
        assert_eq!(
            check_axioms(&noncomm).violation,
            Some(AxiomViolation::Commutativity { a: 1, b: 2 })
        );
    }

    #[test]
    fn grouplike_examples() {
        assert!(is_grouplike(&CommMonoidTable::cyclic(2)));
        assert!(!is_grouplike(&semilattice()));
        assert!(is_grouplike(&CommMonoidTable::trivial()));
    }

    #[test]
    fn grothendieck_examples() {
        let k = grothendieck_group(&CommMonoidTable::cyclic(2)).unwrap();
        assert_eq!(k.group, CommMonoidTable::cyclic(2));
        assert_eq!(k.canonical, vec![0, 1]);
        let k = grothendieck_group(&semilattice()).unwrap();
        assert_eq!(k.group.size(), 1);
        assert_eq!(grothendieck_group(&CommMonoidTable::trivial()).unwrap().group.size(), 1);
        // ℕ capped at 3 completes to the trivial group as well
        assert_eq!(grothendieck_group(&CommMonoidTable::truncated_nat(4)).unwrap().group.size(), 1);
        // ℤ/3 × {0 < 1} completes to ℤ/3
        let m = CommMonoidTable::cyclic(3).product(&semilattice());
        let k = grothendieck_group(&m).unwrap();
        assert!(is_isomorphic(&k.group, &CommMonoidTable::cyclic(3)));
    }

    /// The defining relation checked literally, quantifying over every `k`.
    #[test]
    fn grothendieck_classes_match_definition() {
        for n in 1..=4 {
            for m in enumerate_cmon(n).unwrap() {
                let k = grothendieck_group(&m).unwrap();
                for (a, b, c, d) in (0..n * n * n * n).map(|i| (i / (n * n * n), i / (n * n) % n, i / n % n, i % n)) {
                    let related = (0..n).any(|x| m.op(m.op(a, d), x) == m.op(m.op(c, b), x));
                    assert_eq!(k.class(a, b) == k.class(c, d), related);
                }
                assert!(check_axioms(&k.group).passed);
                assert!(is_grouplike(&k.group));
                let bijective = k.group.size() == n;
                assert_eq!(is_grouplike(&m), bijective);
            }
        }
    }

    #[test]
    fn tensor_examples() {
        let z2 = CommMonoidTable::cyclic(2);
        let z3 = CommMonoidTable::cyclic(3);
        assert_eq!(tensor(&z2, &z3).unwrap().size(), 1);
        assert!(is_isomorphic(&tensor(&z2, &z2).unwrap(), &z2));
        let s = semilattice();
        assert!(is_isomorphic(&tensor(&s, &s).unwrap(), &s));
        assert!(is_isomorphic(&tensor(&z3, &z3).unwrap(), &z3));
        assert_eq!(tensor(&CommMonoidTable::trivial(), &z3).unwrap().size(), 1);
    }

    #[test]
    fn tensor_budget_is_enforced() {
        let z4 = CommMonoidTable::cyclic(4);
        assert!(matches!(
            tensor_with_budget(&z4, &z4, 3),
            Err(Error::ClosureBudgetExceeded { needed: 4, budget: 3 })
        ));
    }

    /// Bilinear maps out of M × N into every small monoid correspond to maps
    /// out of the tensor product: count both sides.
    #[test]
    fn tensor_represents_bilinear_maps() {
        let small: Vec<CommMonoidTable> = (1..=3).flat_map(|n| enumerate_cmon(n).unwrap()).collect();
        for m in &small[..4] {
            for n in &small[..4] {
                let t = tensor(m, n).unwrap();
                for target in &small {
                    assert_eq!(
                        count_bilinear(m, n, target),
                        count_homs(&t, target),
                        "{m:?} ⊗ {n:?} into {target:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn homomorphisms_match_brute_force() {
        let small: Vec<CommMonoidTable> = (1..=3).flat_map(|n| enumerate_cmon(n).unwrap()).collect();
        for m in &small {
            for n in &small {
                assert_eq!(homomorphisms(m, n).len(), count_homs(m, n));
            }
        }
        assert_eq!(homomorphisms(&CommMonoidTable::cyclic(2), &CommMonoidTable::cyclic(4)), vec![vec![0, 0], vec![0, 2]]);
    }

    #[test]
    fn pairing_is_bilinear_and_generates() {
        let small: Vec<CommMonoidTable> = (1..=3).flat_map(|n| enumerate_cmon(n).unwrap()).collect();
        for m in &small {
            for n in &small {
                let t = tensor_product(m, n, DEFAULT_CLOSURE_BUDGET).unwrap();
                let (mm, p) = (&t.monoid, &t.pairing);
                for a in 0..m.size() {
                    for b in 0..n.size() {
                        for a2 in 0..m.size() {
                            assert_eq!(p[m.op(a, a2)][b], mm.op(p[a][b], p[a2][b]));
                        }
                        for b2 in 0..n.size() {
                            assert_eq!(p[a][n.op(b, b2)], mm.op(p[a][b], p[a][b2]));
                        }
                    }
                }
                let identity: Vec<(usize, usize)> = p.iter().flatten().map(|&x| (x, x)).collect();
                assert_eq!(iso_from_generators(mm, mm, &identity), Some((0..mm.size()).collect()));
            }
        }
    }

    #[test]
    fn iso_from_generators_examples() {
        let z4 = CommMonoidTable::cyclic(4);
        assert_eq!(iso_from_generators(&z4, &z4, &[(1, 3)]), Some(vec![0, 3, 2, 1]));
        assert_eq!(iso_from_generators(&z4, &z4, &[(1, 2)]), None);
        let v4 = CommMonoidTable::cyclic(2).product(&CommMonoidTable::cyclic(2));
        assert_eq!(iso_from_generators(&z4, &v4, &[(1, 1)]), None);
    }

    fn all_functions(dom: usize, cod: usize) -> impl Iterator<Item = Vec<usize>> {
        (0..cod.pow(dom as u32)).map(move |mut c| {
            (0..dom)
                .map(|_| {
                    let v = c % cod;
                    c /= cod;
                    v
                })
                .collect()
        })
    }

    fn count_homs(m: &CommMonoidTable, t: &CommMonoidTable) -> usize {
        all_functions(m.size(), t.size())
            .filter(|f| {
                f[m.unit()] == t.unit()
                    && (0..m.size()).all(|a| (0..m.size()).all(|b| f[m.op(a, b)] == t.op(f[a], f[b])))
            })
            .count()
    }

    fn count_bilinear(m: &CommMonoidTable, n: &CommMonoidTable, t: &CommMonoidTable) -> usize {
        all_functions(m.size() * n.size(), t.size())
            .filter(|f| {
                let at = |a: usize, b: usize| f[a * n.size() + b];
                (0..n.size()).all(|b| at(m.unit(), b) == t.unit())
                    && (0..m.size()).all(|a| at(a, n.unit()) == t.unit())
                    && (0..m.size()).all(|a| {
                        (0..m.size()).all(|a2| {
                            (0..n.size()).all(|b| at(m.op(a, a2), b) == t.op(at(a, b), at(a2, b)))
                        })
                    })
                    && (0..n.size()).all(|b| {
                        (0..n.size()).all(|b2| {
                            (0..m.size()).all(|a| at(a, n.op(b, b2)) == t.op(at(a, b), at(a, b2)))
                        })
                    })
            })
            .count()
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_cmon(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 19, 78]);
        assert!(matches!(enumerate_cmon(6), Err(Error::SizeTooLarge { .. })));
    }

    #[test]
    fn enumerated_tables_are_distinct_monoids() {
        for n in 1..=4 {
            let all = enumerate_cmon(n).unwrap();
            for (i, a) in all.iter().enumerate() {
                assert!(check_axioms(a).passed);
                for b in &all[i + 1..] {
                    assert!(!is_isomorphic(a, b));
                }
            }
        }
    }

    #[test]
    fn abelian_counts() {
        let counts: Vec<usize> = (1..=16).map(|n| enumerate_ab(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        assert_eq!(abelian_invariants(4), vec![vec![4], vec![2, 2]]);
        assert_eq!(abelian_invariants(12), vec![vec![4, 3], vec![2, 2, 3]]);
        for n in 1..=16 {
            for g in enumerate_ab(n).unwrap() {
                assert!(check_axioms(&g).passed && is_grouplike(&g));
            }
        }
    }

    #[test]
    fn abelian_is_grouplike_sublist() {
        for n in 1..=5 {
            let from_search: Vec<_> = enumerate_cmon(n).unwrap().into_iter().filter(is_grouplike).collect();
            let classified = enumerate_ab(n).unwrap();
            assert_eq!(from_search.len(), classified.len());
            for g in &classified {
                assert_eq!(from_search.iter().filter(|h| is_isomorphic(g, h)).count(), 1);
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let z4 = CommMonoidTable::cyclic(4);
        let v4 = CommMonoidTable::cyclic(2).product(&CommMonoidTable::cyclic(2));
        assert!(find_isomorphism(&z4, &v4).is_none());
        assert_eq!(find_isomorphism(&z4, &z4).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn presentation_words_evaluate() {
        for m in enumerate_cmon(4).unwrap() {
            let p = presentation(&m).unwrap();
            for (x, w) in p.words.iter().enumerate() {
                let value = m.sum(w.iter().enumerate().flat_map(|(g, &c)| std::iter::repeat_n(p.generators[g], c)));
                assert_eq!(value, x);
            }
        }
    }

    proptest! {
        #[test]
        fn relabeling_preserves_canonical_form(n in 1usize..=4, pick in 0usize..100, seed in any::<u64>()) {
            let all = enumerate_cmon(n).unwrap();
            let m = &all[pick % all.len()];
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                let j = (s % (i as u64 + 1)) as usize;
                s /= i as u64 + 1;
                perm.swap(i, j);
            }
            let r = m.relabel(&perm);
            prop_assert!(check_axioms(&r).passed);
            prop_assert_eq!(&canonical_form(&r).unwrap(), m);
            prop_assert!(find_isomorphism(m, &r).is_some());
        }
    }
}
