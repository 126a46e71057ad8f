//! Small permutation groups, their subgroups up to conjugacy, and finite
//! G-sets with orbits, stabilizers, fixed points and pullbacks.
//!
//! Groups are given by permutation generators. Elements are enumerated once
//! by closure and kept sorted lexicographically, so element `0` is always the
//! identity and element indices are stable across runs. Products follow the
//! usual convention `(gh)(i) = g(h(i))`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finset::{self, FinSet, SetMap};

/// Default cap on group order for subgroup-lattice computations.
pub const DEFAULT_GROUP_CAP: usize = 120;

/// Hard limit on closure during construction.
pub const MAX_ELEMENTS: usize = 40_320;

pub const BUILTIN_GROUPS: [&str; 7] = ["C2", "C3", "C4", "V4", "C6", "S3", "D4"];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v >= images.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of `0..degree` from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut p: Vec<usize> = (0..degree).collect();
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidPermutation(format!("point {a} in cycle {c:?}")));
                }
                p[a] = c[(i + 1) % c.len()];
            }
        }
        Perm::new(p)
    }

    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            r[v] = i;
        }
        Perm(r)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// A subgroup given by its sorted element indices.
pub type Subgroup = Vec<usize>;

/// One conjugacy class of subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupClass {
    pub index: usize,
    pub name: String,
    pub order: usize,
    /// Lexicographically least element list among the conjugates.
    pub representative: Subgroup,
    /// Ids (into [`SubgroupLattice::subgroups`]) of every member of the class.
    #[serde(skip)]
    pub members: Vec<usize>,
}

#[derive(Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    lookup: HashMap<Subgroup, usize>,
    classes: Vec<SubgroupClass>,
    class_of: Vec<usize>,
    // conjugator[s] = g with g·S·g⁻¹ = representative of its class
    conjugator: Vec<usize>,
}

impl SubgroupLattice {
    /// Every subgroup, sorted by order and then by element list.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn subgroup_id(&self, h: &[usize]) -> Option<usize> {
        self.lookup.get(h).copied()
    }

    pub fn class_of(&self, subgroup_id: usize) -> usize {
        self.class_of[subgroup_id]
    }

    pub fn conjugator(&self, subgroup_id: usize) -> usize {
        self.conjugator[subgroup_id]
    }

    /// Conjugacy class index of an explicit subgroup.
    pub fn classify(&self, h: &[usize]) -> Option<usize> {
        self.subgroup_id(h).map(|id| self.class_of[id])
    }
}

pub struct PermGroup {
    name: Option<String>,
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    generator_ids: Vec<usize>,
    inverses: Vec<usize>,
    cap: usize,
    mul: OnceLock<Vec<usize>>,
    lattice: OnceLock<Result<SubgroupLattice>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .field("order", &self.elements.len())
            .finish()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {:?} does not have degree {degree}",
                    g.images()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut index = HashMap::new();
        let mut found = vec![id.clone()];
        index.insert(id, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let h = g.compose(&found[i]);
                if !index.contains_key(&h) {
                    if found.len() >= MAX_ELEMENTS {
                        return Err(Error::GroupTooLarge {
                            order: found.len() + 1,
                            cap: MAX_ELEMENTS,
                        });
                    }
                    index.insert(h.clone(), found.len());
                    queue.push_back(found.len());
                    found.push(h);
                }
            }
        }
        found.sort();
        let index: HashMap<Perm, usize> =
            found.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let generator_ids = generators.iter().map(|g| index[g]).collect();
        let inverses = found.iter().map(|p| index[&p.inverse()]).collect();
        Ok(PermGroup {
            name: None,
            degree,
            generators,
            elements: found,
            index,
            generator_ids,
            inverses,
            cap: DEFAULT_GROUP_CAP,
            mul: OnceLock::new(),
            lattice: OnceLock::new(),
        })
    }

    pub fn trivial() -> Self {
        PermGroup::new(1, Vec::new()).unwrap().with_name("C1")
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// Sets the order cap used by subgroup computations.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self.lattice = OnceLock::new();
        self
    }

    /// One of the built-in groups: `C1`, `C2`, `C3`, `C4`, `V4`, `C6`, `S3`, `D4`.
    pub fn named(name: &str) -> Result<Self> {
        let cyc = |n: usize| -> Result<Perm> {
            Perm::new((0..n).map(|i| (i + 1) % n).collect())
        };
        let g = match name {
            "C1" | "trivial" | "e" => return Ok(PermGroup::trivial()),
            "C2" => PermGroup::new(2, vec![cyc(2)?])?,
            "C3" => PermGroup::new(3, vec![cyc(3)?])?,
            "C4" => PermGroup::new(4, vec![cyc(4)?])?,
            "C6" => PermGroup::new(6, vec![cyc(6)?])?,
            "V4" => PermGroup::new(
                4,
                vec![
                    Perm::from_cycles(4, &[&[0, 1], &[2, 3]])?,
                    Perm::from_cycles(4, &[&[0, 2], &[1, 3]])?,
                ],
            )?,
            "S3" => PermGroup::new(3, vec![Perm::from_cycles(3, &[&[0, 1]])?, cyc(3)?])?,
            "D4" => PermGroup::new(4, vec![cyc(4)?, Perm::from_cycles(4, &[&[1, 3]])?])?,
            _ => return Err(Error::UnknownGroup(name.to_string())),
        };
        Ok(g.with_name(name))
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn display_name(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("G{}", self.order()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_ids(&self) -> &[usize] {
        &self.generator_ids
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    fn mul_table(&self) -> &[usize] {
        self.mul.get_or_init(|| {
            let n = self.order();
            let mut t = Vec::with_capacity(n * n);
            for a in &self.elements {
                for b in &self.elements {
                    t.push(self.index[&a.compose(b)]);
                }
            }
            t
        })
    }

    /// Index of `a·b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table()[a * self.order() + b]
    }

    /// Index of `g·h·g⁻¹`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverse(g))
    }

    /// `g·H·g⁻¹` as a sorted element list.
    pub fn conjugate_subgroup(&self, g: usize, h: &[usize]) -> Subgroup {
        let mut out: Vec<usize> = h.iter().map(|&x| self.conjugate(g, x)).collect();
        out.sort_unstable();
        out
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// The subgroup generated by the given elements.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        if h.is_empty() || !h.contains(&0) {
            return false;
        }
        let mut member = vec![false; self.order()];
        for &x in h {
            if x >= self.order() {
                return false;
            }
            member[x] = true;
        }
        h.iter()
            .all(|&a| member[self.inverse(a)] && h.iter().all(|&b| member[self.mul(a, b)]))
    }

    pub fn full_subgroup(&self) -> Subgroup {
        (0..self.order()).collect()
    }

    /// `{g : g·H·g⁻¹ = H}`.
    pub fn normalizer(&self, h: &[usize]) -> Subgroup {
        (0..self.order())
            .filter(|&g| self.conjugate_subgroup(g, h) == h)
            .collect()
    }

    pub fn is_abelian(&self, h: &[usize]) -> bool {
        h.iter()
            .all(|&a| h.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroups up to conjugacy, memoized on first use.
    pub fn lattice(&self) -> Result<&SubgroupLattice> {
        self.lattice
            .get_or_init(|| self.compute_lattice())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_lattice(&self) -> Result<SubgroupLattice> {
        let n = self.order();
        if n > self.cap {
            return Err(Error::GroupTooLarge {
                order: n,
                cap: self.cap,
            });
        }
        // every subgroup is reached by adjoining one element at a time to a
        // smaller subgroup, starting from the trivial one
        let mut found: HashMap<Subgroup, Vec<usize>> = HashMap::new();
        found.insert(vec![0], Vec::new());
        let mut queue: VecDeque<Subgroup> = VecDeque::from([vec![0]]);
        while let Some(h) = queue.pop_front() {
            let gens = found[&h].clone();
            let mut member = vec![false; n];
            for &x in &h {
                member[x] = true;
            }
            for g in 0..n {
                if member[g] {
                    continue;
                }
                let mut k_gens = gens.clone();
                k_gens.push(g);
                let k = self.generate(&k_gens);
                debug_assert_eq!(n % k.len(), 0);
                if !found.contains_key(&k) {
                    found.insert(k.clone(), k_gens);
                    queue.push_back(k);
                }
            }
        }
        let mut subgroups: Vec<Subgroup> = found.into_keys().collect();
        subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let lookup: HashMap<Subgroup, usize> = subgroups
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();

        let mut conjugator = vec![0; subgroups.len()];
        let mut rep_of: Vec<Subgroup> = Vec::with_capacity(subgroups.len());
        for (i, s) in subgroups.iter().enumerate() {
            let mut best = s.clone();
            let mut best_g = 0;
            for g in 0..n {
                let c = self.conjugate_subgroup(g, s);
                if c < best {
                    best = c;
                    best_g = g;
                }
            }
            conjugator[i] = best_g;
            rep_of.push(best);
        }
        let mut reps: Vec<Subgroup> = rep_of.clone();
        reps.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        reps.dedup();
        let class_index: HashMap<&Subgroup, usize> =
            reps.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let class_of: Vec<usize> = rep_of.iter().map(|r| class_index[r]).collect();

        let base_names: Vec<String> = reps.iter().map(|r| self.structure_name(r)).collect();
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        let mut classes = Vec::with_capacity(reps.len());
        for (i, r) in reps.iter().enumerate() {
            let k = seen.entry(base_names[i].as_str()).or_insert(0);
            let name = format!("{}{}", base_names[i], "'".repeat(*k));
            *k += 1;
            classes.push(SubgroupClass {
                index: i,
                name,
                order: r.len(),
                representative: r.clone(),
                members: (0..subgroups.len()).filter(|&s| class_of[s] == i).collect(),
            });
        }
        Ok(SubgroupLattice {
            subgroups,
            lookup,
            classes,
            class_of,
            conjugator,
        })
    }

    /// A short isomorphism-type label for a small subgroup.
    fn structure_name(&self, h: &[usize]) -> String {
        let n = h.len();
        if n == 1 {
            return "e".into();
        }
        let orders: Vec<usize> = h.iter().map(|&x| self.element_order(x)).collect();
        let exponent = orders.iter().copied().max().unwrap_or(1);
        if exponent == n {
            return format!("C{n}");
        }
        let involutions = orders.iter().filter(|&&o| o == 2).count();
        if self.is_abelian(h) {
            return match (n, exponent) {
                (4, 2) => "V4".into(),
                (8, 4) => "C2xC4".into(),
                (8, 2) => "C2^3".into(),
                (9, 3) => "C3xC3".into(),
                _ => format!("A{n}e{exponent}"),
            };
        }
        match n {
            6 => "S3".into(),
            8 if involutions == 1 => "Q8".into(),
            8 => "D4".into(),
            10 => "D5".into(),
            12 if involutions == 3 => "A4".into(),
            12 if involutions == 7 => "D6".into(),
            24 if involutions == 9 => "S4".into(),
            _ => format!("G{n}"),
        }
    }

    pub fn subgroup_conjugacy_classes(&self) -> Result<&[SubgroupClass]> {
        Ok(self.lattice()?.classes())
    }
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    degree: usize,
    generators: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GroupSpec {
    Named(String),
    Explicit(RawGroup),
}

impl Serialize for PermGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawGroup {
            name: self.name.clone(),
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.0.clone()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match GroupSpec::deserialize(d)? {
            GroupSpec::Named(name) => PermGroup::named(&name).map_err(D::Error::custom),
            GroupSpec::Explicit(raw) => {
                let gens = raw
                    .generators
                    .into_iter()
                    .map(Perm::new)
                    .collect::<Result<Vec<_>>>()
                    .map_err(D::Error::custom)?;
                let g = PermGroup::new(raw.degree, gens).map_err(D::Error::custom)?;
                Ok(match raw.name {
                    Some(n) => g.with_name(&n),
                    None => g,
                })
            }
        }
    }
}

/// A finite set with an action of a permutation group.
#[derive(Clone)]
pub struct GSet {
    group: Arc<PermGroup>,
    points: usize,
    // action[g][x] = g·x for every group element g
    action: Vec<Vec<usize>>,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GSet")
            .field("group", &self.group.display_name())
            .field("points", &self.points)
            .field("action", &self.generator_action())
            .finish()
    }
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group)
            && self.points == other.points
            && self.action == other.action
    }
}

impl Eq for GSet {}

pub fn same_group(a: &Arc<PermGroup>, b: &Arc<PermGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GSet {
    /// A G-set from the images of the group generators. The assignment must
    /// extend to a homomorphism `G -> Sym(points)`.
    pub fn new(group: Arc<PermGroup>, points: usize, generator_action: Vec<Vec<usize>>) -> Result<Self> {
        if generator_action.len() != group.generators().len() {
            return Err(Error::InvalidGSet(format!(
                "{} generator images given for {} generators",
                generator_action.len(),
                group.generators().len()
            )));
        }
        let gens = generator_action
            .into_iter()
            .map(|a| {
                if a.len() != points {
                    return Err(Error::InvalidGSet(format!(
                        "generator image {a:?} is not a permutation of {points} points"
                    )));
                }
                Perm::new(a).map_err(|e| Error::InvalidGSet(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;

        // walk the Cayley graph; every edge g -> s·g must agree with ρ(s)∘ρ(g)
        let n = group.order();
        let mut action: Vec<Option<Perm>> = vec![None; n];
        action[0] = Some(Perm::identity(points));
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            let rho_g = action[g].clone().unwrap();
            for (k, &s) in group.generator_ids().iter().enumerate() {
                let sg = group.mul(s, g);
                let image = gens[k].compose(&rho_g);
                match &action[sg] {
                    None => {
                        action[sg] = Some(image);
                        queue.push_back(sg);
                    }
                    Some(existing) if *existing != image => {
                        return Err(Error::InvalidGSet(format!(
                            "generator images violate a relation of the group at element {sg}"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let action = action.into_iter().map(|p| p.unwrap().0).collect();
        Ok(GSet {
            group,
            points,
            action,
        })
    }

    /// Builds from a full element action known to be a homomorphism.
    fn from_element_action(group: Arc<PermGroup>, points: usize, action: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(action.len(), group.order());
        GSet {
            group,
            points,
            action,
        }
    }

    /// `n` points, every element acting trivially.
    pub fn trivial(group: Arc<PermGroup>, points: usize) -> Self {
        let action = vec![(0..points).collect(); group.order()];
        GSet::from_element_action(group, points, action)
    }

    pub fn point(group: Arc<PermGroup>) -> Self {
        GSet::trivial(group, 1)
    }

    pub fn empty(group: Arc<PermGroup>) -> Self {
        GSet::trivial(group, 0)
    }

    /// The transitive G-set `G/H` of left cosets. Coset `0` is `eH`; the rest
    /// are listed by their least element index.
    pub fn cosets(group: Arc<PermGroup>, h: &[usize]) -> Result<Self> {
        if !group.is_subgroup(h) {
            return Err(Error::InvalidGSet(format!("{h:?} is not a subgroup")));
        }
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut count = 0;
        for g in 0..n {
            if coset_of[g] == usize::MAX {
                for &x in h {
                    coset_of[group.mul(g, x)] = count;
                }
                count += 1;
            }
        }
        // representative of coset c = least element in it
        let mut rep = vec![usize::MAX; count];
        for g in (0..n).rev() {
            rep[coset_of[g]] = g;
        }
        let action = (0..n)
            .map(|g| (0..count).map(|c| coset_of[group.mul(g, rep[c])]).collect())
            .collect();
        Ok(GSet::from_element_action(group, count, action))
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(group: Arc<PermGroup>) -> Self {
        GSet::cosets(group, &[0]).unwrap()
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn underlying(&self) -> FinSet {
        FinSet::new(self.points)
    }

    /// `g·x` for a group element index `g`.
    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn element_action(&self, g: usize) -> &[usize] {
        &self.action[g]
    }

    /// Images of the group generators, as stored in JSON.
    pub fn generator_action(&self) -> Vec<Vec<usize>> {
        self.group
            .generator_ids()
            .iter()
            .map(|&g| self.action[g].clone())
            .collect()
    }

    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        check_same_group(self, other)?;
        let off = self.points;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&y| y + off)).collect())
            .collect();
        Ok(GSet::from_element_action(
            self.group.clone(),
            self.points + other.points,
            action,
        ))
    }

    /// Diagonal action on `X × Y`, indexed as in [`finset::product`].
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        check_same_group(self, other)?;
        let m = other.points;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut row = Vec::with_capacity(self.points * m);
                for x in 0..self.points {
                    for y in 0..m {
                        row.push(a[x] * m + b[y]);
                    }
                }
                row
            })
            .collect();
        Ok(GSet::from_element_action(
            self.group.clone(),
            self.points * m,
            action,
        ))
    }

    /// Disjoint union of transitive G-sets `G/H` over the given class indices.
    pub fn from_classes(group: Arc<PermGroup>, classes: &[usize]) -> Result<GSet> {
        let reps: Vec<Subgroup> = {
            let lat = group.lattice()?;
            classes
                .iter()
                .map(|&c| lat.classes()[c].representative.clone())
                .collect()
        };
        let mut out = GSet::empty(group.clone());
        for r in reps {
            out = out.disjoint_union(&GSet::cosets(group.clone(), &r)?)?;
        }
        Ok(out)
    }
}

fn check_same_group(a: &GSet, b: &GSet) -> Result<()> {
    if same_group(&a.group, &b.group) {
        Ok(())
    } else {
        Err(Error::CompositionMismatch(
            "G-sets over different groups".into(),
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct RawGSet {
    group: PermGroup,
    points: usize,
    action: Vec<Vec<usize>>,
}

impl Serialize for GSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GSet", 3)?;
        st.serialize_field("group", &*self.group)?;
        st.serialize_field("points", &self.points)?;
        st.serialize_field("action", &self.generator_action())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawGSet::deserialize(d)?;
        GSet::new(Arc::new(raw.group), raw.points, raw.action).map_err(D::Error::custom)
    }
}

/// An equivariant map between two G-sets over the same group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMap {
    dom: GSet,
    cod: GSet,
    map: SetMap,
}

impl GMap {
    pub fn new(dom: GSet, cod: GSet, map: SetMap) -> Result<Self> {
        check_same_group(&dom, &cod)?;
        if map.dom() != dom.points || map.cod() != cod.points {
            return Err(Error::InvalidMap(format!(
                "map {}->{} does not fit G-sets of sizes {} and {}",
                map.dom(),
                map.cod(),
                dom.points,
                cod.points
            )));
        }
        for &g in dom.group.generator_ids() {
            for x in 0..dom.points {
                if map.apply(dom.act(g, x)) != cod.act(g, map.apply(x)) {
                    return Err(Error::InvalidMap(format!(
                        "not equivariant at point {x} under generator {g}"
                    )));
                }
            }
        }
        Ok(GMap { dom, cod, map })
    }

    pub fn identity(x: &GSet) -> Self {
        GMap {
            dom: x.clone(),
            cod: x.clone(),
            map: SetMap::identity(x.points),
        }
    }

    pub fn to_point(x: &GSet) -> Self {
        GMap {
            dom: x.clone(),
            cod: GSet::point(x.group.clone()),
            map: SetMap::to_point(x.points),
        }
    }

    pub fn dom(&self) -> &GSet {
        &self.dom
    }

    pub fn cod(&self) -> &GSet {
        &self.cod
    }

    pub fn map(&self) -> &SetMap {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map.apply(x)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &GMap) -> Result<GMap> {
        if f.cod != self.dom {
            return Err(Error::CompositionMismatch(
                "codomain and domain G-sets differ".into(),
            ));
        }
        Ok(GMap {
            dom: f.dom.clone(),
            cod: self.cod.clone(),
            map: finset::compose_maps(&self.map, &f.map)?,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct RawGMap {
    dom: GSet,
    cod: GSet,
    map: Vec<usize>,
}

impl Serialize for GMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawGMap {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            map: self.map.table().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawGMap::deserialize(d)?;
        let map = SetMap::new(raw.dom.points, raw.cod.points, raw.map).map_err(D::Error::custom)?;
        GMap::new(raw.dom, raw.cod, map).map_err(D::Error::custom)
    }
}

/// Orbits, each sorted, listed by least element.
pub fn orbits(x: &GSet) -> Vec<Vec<usize>> {
    let mut seen = vec![false; x.points];
    let mut out = Vec::new();
    for start in 0..x.points {
        if seen[start] {
            continue;
        }
        let mut orbit: Vec<usize> = Vec::new();
        for g in 0..x.group.order() {
            let y = x.act(g, start);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// `{g : g·x = x}` as a sorted element list.
pub fn stabilizer(x: &GSet, point: usize) -> Subgroup {
    (0..x.group.order())
        .filter(|&g| x.act(g, point) == point)
        .collect()
}

/// Points fixed by every element of `h`, sorted.
pub fn fixed_points(x: &GSet, h: &[usize]) -> Vec<usize> {
    (0..x.points)
        .filter(|&p| h.iter().all(|&g| x.act(g, p) == p))
        .collect()
}

/// Multiset (sorted) of conjugacy classes of point stabilizers, one entry per
/// orbit. A complete isomorphism invariant for G-sets over a fixed group.
pub fn gset_canonical(x: &GSet) -> Result<Vec<usize>> {
    let lat = x.group.lattice()?;
    let mut out: Vec<usize> = orbits(x)
        .iter()
        .map(|o| {
            lat.classify(&stabilizer(x, o[0]))
                .expect("stabilizers are subgroups")
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Pullback of `f: A -> C` and `g: B -> C` in G-sets: the set-level pullback
/// with the diagonal action.
pub fn pullback_gsets(f: &GMap, g: &GMap) -> Result<(GSet, GMap, GMap)> {
    if f.cod != g.cod {
        return Err(Error::CompositionMismatch(
            "pullback needs a common codomain G-set".into(),
        ));
    }
    let (apex, left, right) = finset::pullback(&f.map, &g.map)?;
    let index: HashMap<(usize, usize), usize> = (0..apex.size)
        .map(|i| ((left.apply(i), right.apply(i)), i))
        .collect();
    let group = f.dom.group.clone();
    let action = (0..group.order())
        .map(|e| {
            (0..apex.size)
                .map(|i| index[&(f.dom.act(e, left.apply(i)), g.dom.act(e, right.apply(i)))])
                .collect()
        })
        .collect();
    let p = GSet::from_element_action(group, apex.size, action);
    let l = GMap {
        dom: p.clone(),
        cod: f.dom.clone(),
        map: left,
    };
    let r = GMap {
        dom: p,
        cod: g.dom.clone(),
        map: right,
    };
    Ok((l.dom.clone(), l, r))
}

/// Brute-force search for an equivariant bijection `X -> Y`.
pub fn find_equivariant_bijection(x: &GSet, y: &GSet) -> Option<SetMap> {
    if x.points != y.points || !same_group(&x.group, &y.group) {
        return None;
    }
    let n = x.points;
    let gens = x.group.generator_ids().to_vec();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        x: &GSet,
        y: &GSet,
        gens: &[usize],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == image.len() {
            return true;
        }
        for v in 0..image.len() {
            if used[v] {
                continue;
            }
            image[i] = v;
            let ok = gens.iter().all(|&g| {
                (0..=i).all(|p| {
                    let q = x.act(g, p);
                    q > i || image[q] == y.act(g, image[p])
                })
            });
            if ok {
                used[v] = true;
                if go(i + 1, x, y, gens, image, used) {
                    return true;
                }
                used[v] = false;
            }
        }
        image[i] = usize::MAX;
        false
    }
    if go(0, x, y, &gens, &mut image, &mut used) {
        Some(SetMap::new(n, n, image).unwrap())
    } else {
        None
    }
}
