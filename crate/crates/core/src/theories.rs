//! Finite models of a few Lawvere theories.
//!
//! A morphism `x^m -> x^n` of a theory is evaluated on a model `X` as a
//! function `X^m -> X^n`:
//!
//! | preset    | morphism `x^m -> x^n`                       | model                    |
//! |-----------|---------------------------------------------|--------------------------|
//! | sets      | a map `n -> m`, reindexing                  | a set                    |
//! | ptdsets   | a partial map `n -> m`, basepoint elsewhere | a pointed set            |
//! | cmon      | an `n × m` matrix over `ℕ`                  | a commutative monoid     |
//! | ab        | an `n × m` matrix over `ℤ`                  | an abelian group         |
//! | gsets     | a G-map `T -> S` between finite G-sets      | a G-set, seen through its fixed points |
//!
//! For G-sets the powers are indexed by finite G-sets: `x^S` evaluates to the
//! equivariant maps `S -> X`, and a G-map `T -> S` acts by precomposition,
//! so on orbits `x^{G/H}` this is the fixed-point set `X^H` with its
//! restriction maps.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::burnside::{IntMatrix, NatMatrix};
use crate::cmon::{self, CommMonoidTable};
use crate::error::{Error, Result};
use crate::finset::{self, SetMap};
use crate::groups::{self, GMap, GSet, PermGroup};

/// Largest carrier size for exhaustive model search.
pub const MAX_SEARCH_SIZE: usize = 5;
/// Largest order for abelian-group models.
pub const MAX_AB_SIZE: usize = 16;
/// Default entry bound for matrix hom providers.
pub const DEFAULT_BOUND: u64 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoryPreset {
    Sets,
    PtdSets,
    CMon,
    Ab,
    GSets(Arc<PermGroup>),
}

impl TheoryPreset {
    /// `sets`, `ptdsets`, `cmon`, `ab`, or `gsets:<group>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sets" => Ok(TheoryPreset::Sets),
            "ptdsets" => Ok(TheoryPreset::PtdSets),
            "cmon" => Ok(TheoryPreset::CMon),
            "ab" => Ok(TheoryPreset::Ab),
            other => match other.strip_prefix("gsets:") {
                Some(_) => Ok(TheoryPreset::GSets(Arc::new(PermGroup::named(&s[6..])?))),
                None => Err(Error::InvalidModel(format!(
                    "unknown theory `{s}`; expected sets, ptdsets, cmon, ab or gsets:<group>"
                ))),
            },
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            TheoryPreset::Sets => "sets",
            TheoryPreset::PtdSets => "ptdsets",
            TheoryPreset::CMon => "cmon",
            TheoryPreset::Ab => "ab",
            TheoryPreset::GSets(_) => "gsets",
        }
    }
}

impl fmt::Display for TheoryPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryPreset::GSets(g) => write!(f, "gsets:{}", g.display_name()),
            other => f.write_str(other.tag()),
        }
    }
}

/// A morphism `x^m -> x^n` of one of the presets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "theory", content = "morphism", rename_all = "lowercase")]
pub enum TheoryMorphism {
    /// `n -> m`.
    Sets(SetMap),
    /// `{n -> m}` with `None` sent to the basepoint; `arity` is `m`.
    PtdSets { arity: usize, map: Vec<Option<usize>> },
    /// `n × m`.
    CMon(NatMatrix),
    Ab(IntMatrix),
    /// `T -> S` for a morphism `x^S -> x^T`.
    GSets(GMap),
}

/// The shape of an object `x^m`: a count, or a G-set for the equivariant preset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arity {
    Count(usize),
    GSet(GSet),
}

impl TheoryMorphism {
    pub fn source(&self) -> Arity {
        match self {
            TheoryMorphism::Sets(s) => Arity::Count(s.cod()),
            TheoryMorphism::PtdSets { arity, .. } => Arity::Count(*arity),
            TheoryMorphism::CMon(a) => Arity::Count(a.cols()),
            TheoryMorphism::Ab(a) => Arity::Count(a.cols()),
            TheoryMorphism::GSets(f) => Arity::GSet(f.cod().clone()),
        }
    }

    pub fn target(&self) -> Arity {
        match self {
            TheoryMorphism::Sets(s) => Arity::Count(s.dom()),
            TheoryMorphism::PtdSets { map, .. } => Arity::Count(map.len()),
            TheoryMorphism::CMon(a) => Arity::Count(a.rows()),
            TheoryMorphism::Ab(a) => Arity::Count(a.rows()),
            TheoryMorphism::GSets(f) => Arity::GSet(f.dom().clone()),
        }
    }

    fn preset_tag(&self) -> &'static str {
        match self {
            TheoryMorphism::Sets(_) => "sets",
            TheoryMorphism::PtdSets { .. } => "ptdsets",
            TheoryMorphism::CMon(_) => "cmon",
            TheoryMorphism::Ab(_) => "ab",
            TheoryMorphism::GSets(_) => "gsets",
        }
    }
}

/// `ψ ∘ φ` for `φ: x^m -> x^n`, `ψ: x^n -> x^k`.
pub fn compose_morphisms(psi: &TheoryMorphism, phi: &TheoryMorphism) -> Result<TheoryMorphism> {
    if phi.target() != psi.source() {
        return Err(Error::ArityMismatch(format!(
            "cannot follow a morphism into {:?} by one out of {:?}",
            phi.target(),
            psi.source()
        )));
    }
    match (psi, phi) {
        (TheoryMorphism::Sets(t), TheoryMorphism::Sets(s)) => Ok(TheoryMorphism::Sets(finset::compose_maps(s, t)?)),
        (TheoryMorphism::PtdSets { map: t, .. }, TheoryMorphism::PtdSets { arity, map: s }) => {
            Ok(TheoryMorphism::PtdSets {
                arity: *arity,
                map: t.iter().map(|&i| i.and_then(|i| s[i])).collect(),
            })
        }
        (TheoryMorphism::CMon(b), TheoryMorphism::CMon(a)) => Ok(TheoryMorphism::CMon(b.matmul(a)?)),
        (TheoryMorphism::Ab(b), TheoryMorphism::Ab(a)) => Ok(TheoryMorphism::Ab(b.matmul(a)?)),
        (TheoryMorphism::GSets(g), TheoryMorphism::GSets(f)) => Ok(TheoryMorphism::GSets(f.after(g)?)),
        _ => Err(Error::ArityMismatch(format!(
            "morphisms of theories {} and {} do not compose",
            phi.preset_tag(),
            psi.preset_tag()
        ))),
    }
}

/// A finite model, stored as interpretations of the generating operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "theory", rename_all = "lowercase")]
pub enum ModelTable {
    Sets { size: usize },
    PtdSets { size: usize, basepoint: usize },
    CMon { monoid: CommMonoidTable },
    Ab { group: CommMonoidTable, negation: Vec<usize> },
    GSets { gset: GSet },
}

impl ModelTable {
    pub fn size(&self) -> usize {
        match self {
            ModelTable::Sets { size } | ModelTable::PtdSets { size, .. } => *size,
            ModelTable::CMon { monoid } => monoid.size(),
            ModelTable::Ab { group, .. } => group.size(),
            ModelTable::GSets { gset } => gset.points(),
        }
    }

    /// An abelian-group model with negation read off the table.
    pub fn ab(group: CommMonoidTable) -> Result<Self> {
        let negation = (0..group.size())
            .map(|a| {
                (0..group.size())
                    .find(|&b| group.op(a, b) == group.unit())
                    .ok_or_else(|| Error::InvalidModel(format!("element {a} has no inverse")))
            })
            .collect::<Result<_>>()?;
        Ok(ModelTable::Ab { group, negation })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelCheck {
    pub passed: bool,
    pub failure: Option<String>,
}

/// The defining equations of the preset, checked exhaustively.
pub fn check_model(preset: &TheoryPreset, model: &ModelTable) -> ModelCheck {
    let failure = model_failure(preset, model).err();
    ModelCheck {
        passed: failure.is_none(),
        failure,
    }
}

fn model_failure(preset: &TheoryPreset, model: &ModelTable) -> std::result::Result<(), String> {
    match (preset, model) {
        (TheoryPreset::Sets, ModelTable::Sets { .. }) => Ok(()),
        (TheoryPreset::PtdSets, ModelTable::PtdSets { size, basepoint }) => {
            if basepoint < size {
                Ok(())
            } else {
                Err(format!("basepoint {basepoint} outside a set of size {size}"))
            }
        }
        (TheoryPreset::CMon, ModelTable::CMon { monoid }) => match cmon::check_axioms(monoid).violation {
            None => Ok(()),
            Some(v) => Err(v.to_string()),
        },
        (TheoryPreset::Ab, ModelTable::Ab { group, negation }) => {
            if let Some(v) = cmon::check_axioms(group).violation {
                return Err(v.to_string());
            }
            if negation.len() != group.size() {
                return Err("negation has the wrong length".into());
            }
            match (0..group.size()).find(|&a| negation[a] >= group.size() || group.op(a, negation[a]) != group.unit()) {
                None => Ok(()),
                Some(a) => Err(format!("negation of {a} is not an inverse")),
            }
        }
        (TheoryPreset::GSets(g), ModelTable::GSets { gset }) => {
            if groups::same_group(g, gset.group()) {
                Ok(())
            } else {
                Err("G-set is over a different group".into())
            }
        }
        _ => Err(format!("model is not a {} model", preset.tag())),
    }
}

/// A function on tuples, tabulated over every input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub graph: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Evaluation {
    pub fn apply(&self, input: &[usize]) -> Option<&[usize]> {
        self.graph
            .binary_search_by(|(i, _)| i.as_slice().cmp(input))
            .ok()
            .map(|k| self.graph[k].1.as_slice())
    }
}

/// The inputs of `x^m` in the model: all `m`-tuples, or all equivariant
/// maps `S -> X` for the G-set preset. Sorted.
pub fn model_inputs(model: &ModelTable, arity: &Arity) -> Result<Vec<Vec<usize>>> {
    match (model, arity) {
        (ModelTable::GSets { gset }, Arity::GSet(s)) => {
            let mut out: Vec<Vec<usize>> = finset::all_maps(s.points(), gset.points())
                .into_iter()
                .filter(|f| GMap::new(s.clone(), gset.clone(), f.clone()).is_ok())
                .map(|f| f.table().to_vec())
                .collect();
            out.sort();
            Ok(out)
        }
        (ModelTable::GSets { .. }, _) | (_, Arity::GSet(_)) => {
            Err(Error::ArityMismatch("G-set powers pair only with G-set models".into()))
        }
        (_, Arity::Count(m)) => {
            let k = model.size();
            let total = k.checked_pow(*m as u32).filter(|&t| t <= 1 << 20).ok_or(Error::SizeTooLarge {
                size: usize::MAX,
                max: 1 << 20,
            })?;
            Ok((0..total)
                .map(|mut code| {
                    let mut v = vec![0; *m];
                    for slot in v.iter_mut().rev() {
                        *slot = code % k;
                        code /= k;
                    }
                    v
                })
                .collect())
        }
    }
}

/// The function `X^m -> X^n` of `φ` in the model.
pub fn eval_morphism(preset: &TheoryPreset, model: &ModelTable, phi: &TheoryMorphism) -> Result<Evaluation> {
    let inputs = model_inputs(model, &phi.source())?;
    let graph = inputs
        .into_iter()
        .map(|v| {
            let out = eval_at(preset, model, phi, &v)?;
            Ok((v, out))
        })
        .collect::<Result<_>>()?;
    Ok(Evaluation { graph })
}

fn eval_at(preset: &TheoryPreset, model: &ModelTable, phi: &TheoryMorphism, v: &[usize]) -> Result<Vec<usize>> {
    let mismatch = || Error::ArityMismatch(format!("a {} morphism cannot act on a {preset} model", phi.preset_tag()));
    match (preset, model, phi) {
        (TheoryPreset::Sets, ModelTable::Sets { .. }, TheoryMorphism::Sets(s)) => {
            Ok(s.table().iter().map(|&j| v[j]).collect())
        }
        (TheoryPreset::PtdSets, ModelTable::PtdSets { basepoint, .. }, TheoryMorphism::PtdSets { map, .. }) => {
            Ok(map.iter().map(|j| j.map_or(*basepoint, |j| v[j])).collect())
        }
        (TheoryPreset::CMon, ModelTable::CMon { monoid }, TheoryMorphism::CMon(a)) => Ok((0..a.rows())
            .map(|i| {
                (0..a.cols()).fold(monoid.unit(), |acc, j| {
                    monoid.op(acc, monoid.times(a.get(i, j) as usize, v[j]))
                })
            })
            .collect()),
        (TheoryPreset::Ab, ModelTable::Ab { group, negation }, TheoryMorphism::Ab(a)) => Ok((0..a.rows())
            .map(|i| {
                (0..a.cols()).fold(group.unit(), |acc, j| {
                    let c = a.get(i, j);
                    let base = if c < 0 { negation[v[j]] } else { v[j] };
                    group.op(acc, group.times(c.unsigned_abs() as usize, base))
                })
            })
            .collect()),
        (TheoryPreset::GSets(_), ModelTable::GSets { .. }, TheoryMorphism::GSets(f)) => {
            Ok((0..f.dom().points()).map(|t| v[f.apply(t)]).collect())
        }
        _ => Err(mismatch()),
    }
}

/// `eval(ψ ∘ φ) = eval(ψ) ∘ eval(φ)` on every input.
pub fn functoriality_check(
    preset: &TheoryPreset,
    model: &ModelTable,
    phi: &TheoryMorphism,
    psi: &TheoryMorphism,
) -> Result<bool> {
    let composite = eval_morphism(preset, model, &compose_morphisms(psi, phi)?)?;
    let first = eval_morphism(preset, model, phi)?;
    for (v, out) in &composite.graph {
        let mid = first.apply(v).expect("every input is tabulated");
        if eval_at(preset, model, psi, mid)? != *out {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The projection `x^m -> x` onto coordinate `i`.
pub fn projection(preset: &TheoryPreset, m: usize, i: usize) -> Result<TheoryMorphism> {
    if i >= m {
        return Err(Error::ArityMismatch(format!("no coordinate {i} in x^{m}")));
    }
    match preset {
        TheoryPreset::Sets => Ok(TheoryMorphism::Sets(SetMap::new(1, m, vec![i])?)),
        TheoryPreset::PtdSets => Ok(TheoryMorphism::PtdSets { arity: m, map: vec![Some(i)] }),
        TheoryPreset::CMon => Ok(TheoryMorphism::CMon(NatMatrix::elementary(1, m, 0, i))),
        TheoryPreset::Ab => Ok(TheoryMorphism::Ab(IntMatrix::elementary(1, m, 0, i))),
        TheoryPreset::GSets(_) => Err(Error::ArityMismatch(
            "G-set powers are indexed by G-sets, not counts".into(),
        )),
    }
}

/// Every morphism `x^m -> x^n` of a counted preset, matrix entries bounded by
/// `bound` in absolute value.
pub fn hom_provider(preset: &TheoryPreset, m: usize, n: usize, bound: u64) -> Result<Vec<TheoryMorphism>> {
    let cells = m * n;
    let limit = 1usize << 20;
    match preset {
        TheoryPreset::Sets => Ok(finset::all_maps(n, m).into_iter().map(TheoryMorphism::Sets).collect()),
        TheoryPreset::PtdSets => {
            let total = (m + 1).checked_pow(n as u32).filter(|&t| t <= limit).ok_or(Error::SizeTooLarge { size: usize::MAX, max: limit })?;
            Ok((0..total)
                .map(|mut code| {
                    let map = (0..n)
                        .map(|_| {
                            let c = code % (m + 1);
                            code /= m + 1;
                            (c < m).then_some(c)
                        })
                        .collect();
                    TheoryMorphism::PtdSets { arity: m, map }
                })
                .collect())
        }
        TheoryPreset::CMon | TheoryPreset::Ab => {
            let signed = matches!(preset, TheoryPreset::Ab);
            let base = if signed { 2 * bound as usize + 1 } else { bound as usize + 1 };
            let total = base.checked_pow(cells as u32).filter(|&t| t <= limit).ok_or(Error::SizeTooLarge { size: usize::MAX, max: limit })?;
            Ok((0..total)
                .map(|mut code| {
                    let mut entries = vec![vec![0i64; m]; n];
                    for row in entries.iter_mut() {
                        for e in row.iter_mut() {
                            let d = (code % base) as i64;
                            code /= base;
                            *e = if signed { d - bound as i64 } else { d };
                        }
                    }
                    if signed {
                        TheoryMorphism::Ab(IntMatrix::new(n, m, entries).unwrap())
                    } else {
                        let entries = entries.into_iter().map(|r| r.into_iter().map(|e| e as u64).collect()).collect();
                        TheoryMorphism::CMon(NatMatrix::new(n, m, entries).unwrap())
                    }
                })
                .collect())
        }
        TheoryPreset::GSets(_) => Err(Error::ArityMismatch(
            "use gset_hom_provider for the equivariant preset".into(),
        )),
    }
}

/// Every morphism `x^S -> x^T`, i.e. every G-map `T -> S`.
pub fn gset_hom_provider(s: &GSet, t: &GSet) -> Vec<TheoryMorphism> {
    finset::all_maps(t.points(), s.points())
        .into_iter()
        .filter_map(|f| GMap::new(t.clone(), s.clone(), f).ok())
        .map(TheoryMorphism::GSets)
        .collect()
}

/// Models with carrier of size exactly `k`, one per isomorphism class, in a
/// deterministic order.
pub fn enumerate_models(preset: &TheoryPreset, k: usize) -> Result<Vec<ModelTable>> {
    let max = if matches!(preset, TheoryPreset::Ab) { MAX_AB_SIZE } else { MAX_SEARCH_SIZE };
    if k > max {
        return Err(Error::SizeTooLarge { size: k, max });
    }
    match preset {
        TheoryPreset::Sets => Ok(vec![ModelTable::Sets { size: k }]),
        TheoryPreset::PtdSets => Ok(if k == 0 {
            Vec::new()
        } else {
            vec![ModelTable::PtdSets { size: k, basepoint: 0 }]
        }),
        TheoryPreset::CMon => Ok(search_monoids(k, false).into_iter().map(|monoid| ModelTable::CMon { monoid }).collect()),
        TheoryPreset::Ab if k <= MAX_SEARCH_SIZE => {
            search_monoids(k, true).into_iter().map(ModelTable::ab).collect()
        }
        TheoryPreset::Ab => invariant_factor_groups(k).into_iter().map(ModelTable::ab).collect(),
        TheoryPreset::GSets(g) => search_gsets(g, k),
    }
}

/// Full Cayley-table search in row-major order over every choice of unit,
/// deduplicated by the least table over all relabelings.
fn search_monoids(k: usize, grouplike: bool) -> Vec<CommMonoidTable> {
    if k == 0 {
        return Vec::new();
    }
    let mut found = BTreeSet::new();
    for unit in 0..k {
        let mut t = vec![vec![usize::MAX; k]; k];
        search_cells(&mut t, unit, 0, grouplike, &mut found);
    }
    found.into_iter().map(|(unit, table)| CommMonoidTable::new(k, unit, table).unwrap()).collect()
}

fn search_cells(
    t: &mut Vec<Vec<usize>>,
    unit: usize,
    cell: usize,
    grouplike: bool,
    found: &mut BTreeSet<(usize, Vec<Vec<usize>>)>,
) {
    let k = t.len();
    if cell == k * k {
        if !grouplike || (0..k).all(|a| t[a].contains(&unit)) {
            found.insert(least_relabeling(t, unit));
        }
        return;
    }
    let (i, j) = (cell / k, cell % k);
    for v in 0..k {
        t[i][j] = v;
        if consistent(t, unit, i, j, grouplike) {
            search_cells(t, unit, cell + 1, grouplike, found);
        }
    }
    t[i][j] = usize::MAX;
}

fn consistent(t: &[Vec<usize>], unit: usize, i: usize, j: usize, grouplike: bool) -> bool {
    const HOLE: usize = usize::MAX;
    let k = t.len();
    let v = t[i][j];
    if (i == unit && v != j) || (j == unit && v != i) {
        return false;
    }
    if t[j][i] != HOLE && t[j][i] != v {
        return false;
    }
    // a group table is a Latin square
    if grouplike && ((0..j).any(|c| t[i][c] == v) || (0..i).any(|r| t[r][j] == v)) {
        return false;
    }
    for a in 0..k {
        for b in 0..k {
            let ab = t[a][b];
            if ab == HOLE {
                continue;
            }
            for c in 0..k {
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

fn least_relabeling(t: &[Vec<usize>], unit: usize) -> (usize, Vec<Vec<usize>>) {
    let k = t.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best: Option<(usize, Vec<Vec<usize>>)> = None;
    loop {
        let mut r = vec![vec![0; k]; k];
        for a in 0..k {
            for b in 0..k {
                r[perm[a]][perm[b]] = perm[t[a][b]];
            }
        }
        let cand = (perm[unit], r);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
        if !cmon::next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

/// `ℤ/d₁ × … × ℤ/d_r` with `d₁ | d₂ | … | d_r`, every such chain with product `k`.
fn invariant_factor_groups(k: usize) -> Vec<CommMonoidTable> {
    fn chains(rest: usize, min: usize, out: &mut Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in min.max(2)..=rest {
            if rest.is_multiple_of(d) && prefix.last().is_none_or(|&p| d % p == 0) {
                // the remaining factors must all be multiples of d
                let r = rest / d;
                if r == 1 || r.is_multiple_of(d) {
                    prefix.push(d);
                    chains(r, d, out, prefix);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    chains(k, 2, &mut out, &mut Vec::new());
    out.into_iter()
        .map(|ds| ds.iter().fold(CommMonoidTable::trivial(), |acc, &d| acc.product(&CommMonoidTable::cyclic(d))))
        .collect()
}

/// Actions of the generators by permutations of `k` points that extend to
/// the group, up to equivariant isomorphism.
fn search_gsets(g: &Arc<PermGroup>, k: usize) -> Result<Vec<ModelTable>> {
    let perms = all_permutations(k);
    let gens = g.generators().len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens];
    loop {
        let action: Vec<Vec<usize>> = choice.iter().map(|&c| perms[c].clone()).collect();
        if let Ok(x) = GSet::new(g.clone(), k, action) {
            if seen.insert(groups::gset_canonical(&x)?) {
                out.push(x);
            }
        }
        let Some(pos) = (0..gens).find(|&i| choice[i] + 1 < perms.len()) else {
            break;
        };
        choice[pos] += 1;
        for c in choice.iter_mut().take(pos) {
            *c = 0;
        }
    }
    out.sort_by_key(|x| groups::gset_canonical(x).unwrap());
    Ok(out.into_iter().map(|gset| ModelTable::GSets { gset }).collect())
}

fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..k).collect();
    let mut out = vec![p.clone()];
    while cmon::next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// A carrier bijection commuting with every generating operation.
pub fn model_iso(preset: &TheoryPreset, a: &ModelTable, b: &ModelTable) -> Result<Option<Vec<usize>>> {
    for m in [a, b] {
        if let Err(e) = model_failure(preset, m) {
            return Err(Error::InvalidModel(e));
        }
    }
    Ok(match (a, b) {
        (ModelTable::Sets { size: x }, ModelTable::Sets { size: y }) => (x == y).then(|| (0..*x).collect()),
        (ModelTable::PtdSets { size: x, basepoint: p }, ModelTable::PtdSets { size: y, basepoint: q }) => {
            (x == y).then(|| {
                (0..*x)
                    .map(|i| if i == *p { *q } else if i == *q { *p } else { i })
                    .collect()
            })
        }
        (ModelTable::CMon { monoid: m }, ModelTable::CMon { monoid: n }) => cmon::find_isomorphism(m, n),
        // negation is determined by the group law, so monoid isos preserve it
        (ModelTable::Ab { group: m, .. }, ModelTable::Ab { group: n, .. }) => cmon::find_isomorphism(m, n),
        (ModelTable::GSets { gset: x }, ModelTable::GSets { gset: y }) => {
            groups::find_equivariant_bijection(x, y).map(|f| f.table().to_vec())
        }
        _ => None,
    })
}

/// Restriction along the orbit-category map `G/H -> G/K`, `eH ↦ aK`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Restriction {
    pub from: usize,
    pub to: usize,
    pub element: usize,
    /// Image of each point of `X^K` (listed in `values[from]` order) in `X`.
    pub map: Vec<usize>,
}

/// The fixed-point presheaf `G/H ↦ X^H` on subgroup-class representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointModel {
    pub classes: Vec<String>,
    pub values: Vec<Vec<usize>>,
    pub restrictions: Vec<Restriction>,
    pub functorial: bool,
}

/// Evaluates the model on every orbit and checks the restrictions along all
/// orbit-category maps compose contravariantly.
///
/// A G-map `G/H -> G/K` is `eH ↦ aK` with `H ≤ aKa⁻¹`; it restricts
/// `X^K -> X^H` by `x ↦ a·x`, and the composite with `eK ↦ bL` is `eH ↦ abL`.
pub fn fixed_point_model(x: &GSet) -> Result<FixedPointModel> {
    let g = x.group();
    let classes = g.subgroup_conjugacy_classes()?;
    let reps: Vec<&[usize]> = classes.iter().map(|c| c.representative.as_slice()).collect();
    let values: Vec<Vec<usize>> = reps.iter().map(|h| groups::fixed_points(x, h)).collect();
    let maps_between = |h: usize, k: usize| -> Vec<usize> {
        (0..g.order())
            .filter(|&a| {
                let conj = g.conjugate_subgroup(a, reps[k]);
                reps[h].iter().all(|e| conj.binary_search(e).is_ok())
            })
            .collect()
    };
    let mut restrictions = Vec::new();
    let mut functorial = true;
    for h in 0..reps.len() {
        for k in 0..reps.len() {
            for a in maps_between(h, k) {
                let map: Vec<usize> = values[k].iter().map(|&p| x.act(a, p)).collect();
                functorial &= map.iter().all(|p| values[h].binary_search(p).is_ok());
                for l in 0..reps.len() {
                    for b in maps_between(k, l) {
                        // res(eH ↦ abL) = res(eH ↦ aK) ∘ res(eK ↦ bL)
                        let ab = g.mul(a, b);
                        functorial &= values[l].iter().all(|&p| x.act(ab, p) == x.act(a, x.act(b, p)));
                    }
                }
                restrictions.push(Restriction { from: k, to: h, element: a, map });
            }
        }
    }
    Ok(FixedPointModel {
        classes: classes.iter().map(|c| c.name.clone()).collect(),
        values,
        restrictions,
        functorial,
    })
}

/// Objects of a truncated theory together with the action of the base
/// semiring category's objects on them: `scalar ⊙ object`, `None` when the
/// result leaves the truncation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectAction {
    pub objects: usize,
    pub generator: usize,
    pub action: Vec<Vec<Option<usize>>>,
}

/// Objects `x^0 … x^N` with finite sets acting by `r ⊙ x^j = x^{rj}`.
pub fn preset_action(preset: &TheoryPreset, truncation: usize) -> Result<ObjectAction> {
    match preset {
        TheoryPreset::GSets(g) => gset_action(g, truncation),
        _ => {
            let n = truncation + 1;
            Ok(ObjectAction {
                objects: n,
                generator: 1.min(truncation),
                action: (0..n)
                    .map(|r| (0..n).map(|j| (r * j < n).then_some(r * j)).collect())
                    .collect(),
            })
        }
    }
}

/// Isomorphism classes of G-sets with at most `truncation` points, acted on
/// by themselves through the cartesian product; the point is the generator.
fn gset_action(g: &Arc<PermGroup>, truncation: usize) -> Result<ObjectAction> {
    let classes = g.subgroup_conjugacy_classes()?;
    let sizes: Vec<usize> = classes.iter().map(|c| g.order() / c.order).collect();
    let mut objects: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    while let Some(o) = frontier.pop() {
        let start = o.last().copied().unwrap_or(0);
        let used: usize = o.iter().map(|&c| sizes[c]).sum();
        for c in start..classes.len() {
            if used + sizes[c] <= truncation {
                let mut next = o.clone();
                next.push(c);
                objects.push(next.clone());
                frontier.push(next);
            }
        }
    }
    objects.sort_by_key(|o| (o.iter().map(|&c| sizes[c]).sum::<usize>(), o.clone()));
    let index: HashMap<Vec<usize>, usize> = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
    let sets: Vec<GSet> = objects
        .iter()
        .map(|o| GSet::from_classes(g.clone(), o))
        .collect::<Result<_>>()?;
    let action = sets
        .iter()
        .map(|r| {
            sets.iter()
                .map(|s| {
                    if r.points() * s.points() > truncation {
                        return Ok(None);
                    }
                    Ok(index.get(&groups::gset_canonical(&r.product(s)?)?).copied())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let point = index[&vec![classes.len() - 1]];
    Ok(ObjectAction {
        objects: objects.len(),
        generator: point,
        action,
    })
}

/// Every object is `r ⊙ generator` for some scalar `r`.
pub fn theory_is_cyclic(action: &ObjectAction) -> bool {
    let mut reached = vec![false; action.objects];
    for row in &action.action {
        if let Some(Some(o)) = row.get(action.generator) {
            if *o < action.objects {
                reached[*o] = true;
            }
        }
    }
    reached.into_iter().all(|r| r)
}
