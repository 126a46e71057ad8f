//! The acceptance suite: seven exhaustive or seeded-random checks, each
//! against an independent oracle.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::burnside::{self, BurnsideRingElement, gspan_canonical, gspan_compose, span_canonical, span_compose, GSpan, Span};
use crate::cat::{self, FinCat, FiniteSemiring};
use crate::cmon::{self, CommMonoidTable, DEFAULT_CLOSURE_BUDGET};
use crate::finset::SetMap;
use crate::groups::{self, GMap, GSet, PermGroup, BUILTIN_GROUPS};
use crate::theories::{self, TheoryPreset};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// What was checked, or the first counterexample.
    pub detail: String,
    #[serde(skip)]
    pub elapsed_ms: u128,
    /// Wall-clock ceiling, when the criterion has one.
    pub limit_ms: Option<u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub results: Vec<CriterionResult>,
    pub passed: bool,
}

type Outcome = std::result::Result<String, String>;

pub const CRITERIA: [(&str, Option<u64>); 7] = [
    ("span composition matches matrix product", Some(5)),
    ("semiadditivity of the effective Burnside truncations", None),
    ("group completion", None),
    ("model correspondences", None),
    ("equivariant Burnside suite", None),
    ("additive and semiadditive separation", None),
    ("tensor product of commutative monoids", Some(60)),
];

/// Runs criterion `id` (1 to 7).
pub fn run_criterion(id: usize, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => span_matrix_oracle(seed),
        2 => semiadditivity(),
        3 => group_completion(),
        4 => model_correspondences(),
        5 => equivariant_suite(seed),
        6 => separation(),
        7 => tensor_suite(),
        _ => Err(format!("no criterion {id}")),
    };
    let elapsed = start.elapsed();
    let (name, limit) = CRITERIA.get(id.wrapping_sub(1)).copied().unwrap_or(("unknown", None));
    let limit = limit.map(Duration::from_secs);
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(l) = limit {
        if passed && elapsed > l {
            passed = false;
            detail = format!("{detail}; took {:.2}s, over the {}s limit", elapsed.as_secs_f64(), l.as_secs());
        }
    }
    CriterionResult {
        id,
        name,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.map(|l| l.as_millis()),
    }
}

pub fn run_all(seed: u64) -> VerifyReport {
    let results: Vec<CriterionResult> = (1..=CRITERIA.len()).map(|id| run_criterion(id, seed)).collect();
    VerifyReport {
        seed,
        passed: results.iter().all(|r| r.passed),
        results,
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_map(rng: &mut ChaCha8Rng, dom: usize, cod: usize) -> SetMap {
    SetMap::new(dom, cod, (0..dom).map(|_| rng.gen_range(0..cod)).collect()).expect("entries are in range")
}

/// A span `x ← A → y` with `|A| ≤ 8`; empty when either leg has nowhere to go.
pub fn random_span(rng: &mut ChaCha8Rng, x: usize, y: usize) -> Span {
    let apex = if x == 0 || y == 0 { 0 } else { rng.gen_range(0..=8) };
    Span::new(random_map(rng, apex, x), random_map(rng, apex, y)).expect("legs share the apex")
}

fn span_matrix_oracle(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..1000 {
        let (x, y, z) = (rng.gen_range(0..=5), rng.gen_range(0..=5), rng.gen_range(0..=5));
        let s1 = random_span(&mut rng, x, y);
        let s2 = random_span(&mut rng, y, z);
        let composite = span_canonical(&span_compose(&s2, &s1).map_err(|e| e.to_string())?);
        let product = span_canonical(&s1).matmul(&span_canonical(&s2)).map_err(|e| e.to_string())?;
        check(composite == product, || {
            format!("trial {trial}: composite {composite:?} but matrix product {product:?} for {s1:?} then {s2:?}")
        })?;
    }
    Ok("1000 random composable pairs agree".into())
}

fn semiadditivity() -> Outcome {
    let mut cases = 0;
    for m in 0..=3 {
        for n in 0..=3 {
            let r = burnside::check_biproduct(m, n, 2);
            check(r.passed && r.comparison_is_iso, || format!("({m}, {n}): {r:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} pairs (m, n) ≤ 3 are biproducts at entry bound 2"))
}

fn group_completion() -> Outcome {
    let monoids: Vec<CommMonoidTable> = (1..=4)
        .map(cmon::enumerate_cmon)
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?
        .concat();
    let groups: Vec<CommMonoidTable> = (1..=6)
        .map(cmon::enumerate_ab)
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?
        .concat();
    let mut factorizations = 0;
    for m in &monoids {
        let k = cmon::grothendieck_group(m).map_err(|e| e.to_string())?;
        check(cmon::is_grouplike(&k.group), || format!("K({m:?}) is not a group"))?;
        for a in &groups {
            let lifts = cmon::homomorphisms(&k.group, a);
            for f in cmon::homomorphisms(m, a) {
                let through: Vec<&Vec<usize>> = lifts
                    .iter()
                    .filter(|g| (0..m.size()).all(|x| g[k.canonical[x]] == f[x]))
                    .collect();
                check(through.len() == 1, || {
                    format!("{f:?}: {m:?} -> {a:?} has {} factorizations through K(M)", through.len())
                })?;
                factorizations += 1;
            }
        }
    }
    let (c, monoid) = cat::mat_category(FiniteSemiring::Boolean, 2).map_err(|e| e.to_string())?;
    let completed = cat::group_complete_cat(&c).map_err(|e| e.to_string())?;
    check(cat::is_additive(&completed, Some(&monoid)), || {
        "completion of the Boolean matrix category is not additive".into()
    })?;
    Ok(format!(
        "{factorizations} maps from {} monoids into {} groups factor uniquely; completed Boolean truncation is additive",
        monoids.len(),
        groups.len()
    ))
}

fn model_correspondences() -> Outcome {
    let err = |e: crate::Error| e.to_string();
    for k in 0..=5 {
        let n = theories::enumerate_models(&TheoryPreset::Sets, k).map_err(err)?.len();
        check(n == 1, || format!("{n} set models of size {k}"))?;
    }
    for k in 1..=4 {
        let models = theories::enumerate_models(&TheoryPreset::CMon, k).map_err(err)?.len();
        let tables = cmon::enumerate_cmon(k).map_err(err)?.len();
        check(models == tables, || format!("size {k}: {models} models but {tables} monoids"))?;
    }
    for k in 1..=16 {
        let models = theories::enumerate_models(&TheoryPreset::Ab, k).map_err(err)?.len();
        let expected = classification_count(k);
        check(models == expected, || format!("order {k}: {models} models, classification says {expected}"))?;
    }
    Ok("sets, commutative monoids (size ≤ 4) and abelian groups (order ≤ 16) match".into())
}

/// Abelian groups of order `k`: a partition of `e` for each prime power
/// `p^e` exactly dividing `k`.
fn classification_count(mut k: usize) -> usize {
    let mut count = 1;
    let mut p = 2;
    while k > 1 {
        let mut e = 0;
        while k.is_multiple_of(p) {
            k /= p;
            e += 1;
        }
        count *= cmon::partitions(e).len();
        p += 1;
    }
    count
}

/// A G-map from `a` to `x`: each orbit's least point goes to a random point
/// fixed by its stabilizer, and the rest follow by equivariance.
fn random_gmap(rng: &mut ChaCha8Rng, a: &GSet, x: &GSet) -> Option<GMap> {
    let g = a.group();
    let mut table = vec![usize::MAX; a.points()];
    for orbit in groups::orbits(a) {
        let base = orbit[0];
        let candidates = groups::fixed_points(x, &groups::stabilizer(a, base));
        if candidates.is_empty() {
            return None;
        }
        let target = candidates[rng.gen_range(0..candidates.len())];
        for h in 0..g.order() {
            table[a.act(h, base)] = x.act(h, target);
        }
    }
    GMap::new(a.clone(), x.clone(), SetMap::new(a.points(), x.points(), table).ok()?).ok()
}

fn random_gset(rng: &mut ChaCha8Rng, g: &Arc<PermGroup>, classes: usize, max_orbits: usize) -> GSet {
    let picks: Vec<usize> = (0..rng.gen_range(1..=max_orbits)).map(|_| rng.gen_range(0..classes)).collect();
    GSet::from_classes(g.clone(), &picks).expect("class indices are in range")
}

fn random_gspan(rng: &mut ChaCha8Rng, g: &Arc<PermGroup>, classes: usize, x: &GSet, y: &GSet) -> GSpan {
    loop {
        let apex = random_gset(rng, g, classes, 2);
        if let (Some(l), Some(r)) = (random_gmap(rng, &apex, x), random_gmap(rng, &apex, y)) {
            return GSpan::new(l, r).expect("legs share the apex");
        }
    }
}

fn equivariant_suite(seed: u64) -> Outcome {
    let err = |e: crate::Error| e.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for name in BUILTIN_GROUPS {
        let g = Arc::new(PermGroup::named(name).map_err(err)?);
        let marks = burnside::table_of_marks(&g).map_err(err)?;
        check(marks.is_lower_triangular(), || format!("{name}: table of marks is not lower-triangular"))?;
        check(marks.diagonal().iter().all(|&d| d > 0), || format!("{name}: diagonal {:?}", marks.diagonal()))?;
        check(marks.determinant() != 0, || format!("{name}: singular table of marks"))?;

        let ring = burnside::burnside_ring(&g).map_err(err)?;
        let classes = g.subgroup_conjugacy_classes().map_err(err)?.len();
        check(ring.rank() == classes, || format!("{name}: rank {} for {classes} classes", ring.rank()))?;
        let basis: Vec<_> = (0..classes).map(|i| ring.basis(i)).collect();
        let one = ring.one();
        let mul = |a: &BurnsideRingElement, b: &BurnsideRingElement| ring.mul(a, b).map_err(err);
        for (i, a) in basis.iter().enumerate() {
            check(mul(a, &one)? == *a, || format!("{name}: 1 is not a unit on basis {i}"))?;
            for (j, b) in basis.iter().enumerate() {
                let ab = mul(a, b)?;
                check(ab == mul(b, a)?, || format!("{name}: basis {i}, {j} do not commute"))?;
                let (ma, mb, mab) = (
                    burnside::mark_hom(a, &marks).map_err(err)?,
                    burnside::mark_hom(b, &marks).map_err(err)?,
                    burnside::mark_hom(&ab, &marks).map_err(err)?,
                );
                let pointwise: Vec<i64> = ma.iter().zip(&mb).map(|(x, y)| x * y).collect();
                check(mab == pointwise, || format!("{name}: marks not multiplicative on {i}, {j}"))?;
                for (l, c) in basis.iter().enumerate() {
                    check(mul(&ab, c)? == mul(a, &mul(b, c)?)?, || {
                        format!("{name}: basis {i}, {j}, {l} do not associate")
                    })?;
                }
            }
        }

        for trial in 0..200 {
            let objs: Vec<GSet> = (0..4).map(|_| random_gset(&mut rng, &g, classes, 2)).collect();
            let s1 = random_gspan(&mut rng, &g, classes, &objs[0], &objs[1]);
            let s2 = random_gspan(&mut rng, &g, classes, &objs[1], &objs[2]);
            let s3 = random_gspan(&mut rng, &g, classes, &objs[2], &objs[3]);
            let left = gspan_compose(&s3, &gspan_compose(&s2, &s1).map_err(err)?).map_err(err)?;
            let right = gspan_compose(&gspan_compose(&s3, &s2).map_err(err)?, &s1).map_err(err)?;
            let (l, r) = (gspan_canonical(&left).map_err(err)?, gspan_canonical(&right).map_err(err)?);
            check(l == r, || format!("{name}: triple {trial} composes to {:?} and {:?}", l.counts, r.counts))?;
        }
    }
    let c2 = Arc::new(PermGroup::named("C2").map_err(err)?);
    let ring = burnside::burnside_ring(&c2).map_err(err)?;
    let free = ring.basis(0);
    let square = ring.mul(&free, &free).map_err(err)?;
    check(square.coefficients() == [2, 0], || format!("[C2/e]² = {:?}", square.coefficients()))?;
    Ok(format!("{} groups; 200 span triples each; [C2/e]² = 2[C2/e]", BUILTIN_GROUPS.len()))
}

fn separation() -> Outcome {
    let err = |e: crate::Error| e.to_string();
    let (b, bm) = cat::mat_category(FiniteSemiring::Boolean, 2).map_err(err)?;
    let boolean = cat::properties(&b, Some(&bm));
    check(boolean.semiadditive && !boolean.additive, || format!("Boolean: {boolean:?}"))?;
    let (z, zm) = cat::mat_category(FiniteSemiring::Mod(2), 2).map_err(err)?;
    let mod2 = cat::properties(&z, Some(&zm));
    check(mod2.additive && mod2.semiadditive, || format!("Z/2: {mod2:?}"))?;
    let arrow = FinCat::poset(2, |a, c| a <= c).map_err(err)?;
    let poset = cat::properties(&arrow, None);
    check(cat::find_zero(&arrow).is_none(), || "the arrow category has a zero object".into())?;
    check(poset.cartesian && poset.cocartesian && !poset.semiadditive && !poset.additive, || {
        format!("arrow category: {poset:?}")
    })?;
    Ok("Boolean matrices: semiadditive, not additive; Z/2 matrices: additive; 0 -> 1: cartesian and cocartesian, no zero object".into())
}

fn tensor_suite() -> Outcome {
    let err = |e: crate::Error| e.to_string();
    let small: Vec<CommMonoidTable> = (1..=3)
        .map(cmon::enumerate_cmon)
        .collect::<crate::Result<Vec<_>>>()
        .map_err(err)?
        .concat();
    let tensor = |a: &CommMonoidTable, b: &CommMonoidTable| cmon::tensor_product(a, b, DEFAULT_CLOSURE_BUDGET);
    for (i, a) in small.iter().enumerate() {
        for (j, b) in small.iter().enumerate() {
            let (ab, ba) = (tensor(a, b).map_err(err)?, tensor(b, a).map_err(err)?);
            // a ⊗ b ↦ b ⊗ a
            let swap: Vec<(usize, usize)> = (0..a.size())
                .flat_map(|x| (0..b.size()).map(move |y| (x, y)))
                .map(|(x, y)| (ab.pairing[x][y], ba.pairing[y][x]))
                .collect();
            check(cmon::iso_from_generators(&ab.monoid, &ba.monoid, &swap).is_some(), || {
                format!("swap is not an iso for monoids {i} and {j}")
            })?;
            for (l, c) in small.iter().enumerate() {
                let ab_c = tensor(&ab.monoid, c).map_err(err)?;
                let bc = tensor(b, c).map_err(err)?;
                let a_bc = tensor(a, &bc.monoid).map_err(err)?;
                // (x ⊗ y) ⊗ z ↦ x ⊗ (y ⊗ z)
                let mut assoc = Vec::new();
                for x in 0..a.size() {
                    for y in 0..b.size() {
                        for z in 0..c.size() {
                            assoc.push((ab_c.pairing[ab.pairing[x][y]][z], a_bc.pairing[x][bc.pairing[y][z]]));
                        }
                    }
                }
                check(cmon::iso_from_generators(&ab_c.monoid, &a_bc.monoid, &assoc).is_some(), || {
                    format!("associator is not an iso for monoids {i}, {j}, {l}")
                })?;
            }
        }
    }
    let groups: Vec<CommMonoidTable> = (1..=8)
        .map(cmon::enumerate_ab)
        .collect::<crate::Result<Vec<_>>>()
        .map_err(err)?
        .concat();
    for a in &groups {
        for b in &groups {
            let (ia, ib) = (invariant_factors(a).map_err(err)?, invariant_factors(b).map_err(err)?);
            let gcds: Vec<i64> = ia.iter().flat_map(|&x| ib.iter().map(move |&y| gcd(x, y))).collect();
            let expected = smith_invariants(diagonal(&gcds), gcds.len());
            let got = invariant_factors(&cmon::tensor(a, b).map_err(err)?).map_err(err)?;
            check(got == expected, || format!("{ia:?} ⊗ {ib:?}: tensor has {got:?}, Smith form gives {expected:?}"))?;
        }
    }
    Ok(format!(
        "{} monoids: swap and associator isos hold; {} group pairs match the Smith normal form",
        small.len(),
        groups.len() * groups.len()
    ))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn diagonal(d: &[i64]) -> Vec<Vec<i64>> {
    (0..d.len())
        .map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0 }).collect())
        .collect()
}

/// Invariant factors (all > 1) of a finite abelian group, from the Smith
/// form of its relation matrix.
pub fn invariant_factors(a: &CommMonoidTable) -> crate::Result<Vec<i64>> {
    let p = cmon::presentation(a)?;
    let gens = p.generators.len();
    let rows: Vec<Vec<i64>> = p
        .presentation
        .relations
        .iter()
        .map(|(l, r)| {
            let mut v = vec![0i64; gens];
            l.iter().for_each(|&g| v[g] += 1);
            r.iter().for_each(|&g| v[g] -= 1);
            v
        })
        .collect();
    Ok(smith_invariants(rows, gens))
}

/// Nontrivial diagonal entries of the Smith normal form, ascending. A zero
/// entry stands for a free summand.
pub fn smith_invariants(mut m: Vec<Vec<i64>>, cols: usize) -> Vec<i64> {
    let rows = m.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            diag.extend(std::iter::repeat_n(0, cols - t));
            break;
        };
        m.swap(t, pi);
        m.iter_mut().for_each(|r| r.swap(t, pj));
        loop {
            let p = m[t][t];
            // clear the pivot column and row; a nonzero remainder becomes the new pivot
            if let Some(i) = (t + 1..rows).find(|&i| m[i][t] % p != 0) {
                let q = m[i][t] / p;
                for j in t..cols {
                    m[i][j] -= q * m[t][j];
                }
                m.swap(t, i);
                continue;
            }
            if let Some(j) = (t + 1..cols).find(|&j| m[t][j] % p != 0) {
                let q = m[t][j] / p;
                for r in m.iter_mut() {
                    r[j] -= q * r[t];
                }
                m.iter_mut().for_each(|r| r.swap(t, j));
                continue;
            }
            for i in t + 1..rows {
                let q = m[i][t] / p;
                for j in t..cols {
                    m[i][j] -= q * m[t][j];
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                for r in m.iter_mut() {
                    r[j] -= q * r[t];
                }
            }
            // divisibility: fold in any entry the pivot does not divide
            if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0)) {
                for j in t..cols {
                    m[t][j] += m[i][j];
                }
                continue;
            }
            break;
        }
        diag.push(m[t][t].abs());
    }
    if rows < cols {
        diag.extend(std::iter::repeat_n(0, cols - rows));
    }
    let mut out: Vec<i64> = diag.into_iter().filter(|&d| d != 1).collect();
    out.sort_by_key(|&d| if d == 0 { i64::MAX } else { d });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_examples() {
        assert_eq!(smith_invariants(vec![vec![2, 0], vec![0, 3]], 2), vec![6]);
        assert_eq!(smith_invariants(vec![vec![2, 4], vec![6, 8]], 2), vec![2, 4]);
        assert_eq!(smith_invariants(vec![vec![4, 0], vec![0, 6]], 2), vec![2, 12]);
        assert_eq!(smith_invariants(vec![vec![1, 1]], 2), vec![0]);
        assert_eq!(smith_invariants(vec![], 0), Vec::<i64>::new());
    }

    #[test]
    fn invariant_factors_of_known_groups() {
        let z2 = CommMonoidTable::cyclic(2);
        assert_eq!(invariant_factors(&CommMonoidTable::trivial()).unwrap(), Vec::<i64>::new());
        assert_eq!(invariant_factors(&CommMonoidTable::cyclic(6)).unwrap(), vec![6]);
        assert_eq!(invariant_factors(&z2.product(&CommMonoidTable::cyclic(3))).unwrap(), vec![6]);
        assert_eq!(invariant_factors(&z2.product(&CommMonoidTable::cyclic(4))).unwrap(), vec![2, 4]);
    }

    #[test]
    fn random_gmaps_are_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = Arc::new(PermGroup::named("D4").unwrap());
        let classes = g.subgroup_conjugacy_classes().unwrap().len();
        for _ in 0..50 {
            let x = random_gset(&mut rng, &g, classes, 2);
            let pt = GSet::point(g.clone());
            // everything maps to the point
            assert!(random_gmap(&mut rng, &x, &pt).is_some());
        }
    }

    #[test]
    fn criteria_pass() {
        for id in [1, 3, 4, 6] {
            let r = run_criterion(id, 0);
            assert!(r.passed, "{r:?}");
        }
    }
}
