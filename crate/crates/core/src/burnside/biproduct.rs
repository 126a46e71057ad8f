//! Exhaustive check that `X ⨿ Y` is a biproduct in the entry-bounded
//! hom-matrix category of spans.

use std::collections::HashMap;

use serde::Serialize;

use super::matrix::NatMatrix;

/// Largest number of candidate mediators enumerated per test object.
const SEARCH_BUDGET: usize = 1 << 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeKind {
    Product,
    Coproduct,
}

/// A cone with zero or several mediating maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeCounterexample {
    pub kind: ConeKind,
    pub test_object: usize,
    pub first_leg: NatMatrix,
    pub second_leg: NatMatrix,
    pub mediators: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiproductReport {
    pub m: usize,
    pub n: usize,
    pub bound: u64,
    /// Sizes of the test objects `T` the universal properties were checked against.
    pub test_objects: Vec<usize>,
    pub product: bool,
    pub coproduct: bool,
    /// `π_i ∘ ι_j = δ_ij` and `ι_X π_X + ι_Y π_Y = id`.
    pub biproduct_identities: bool,
    /// The comparison map `X ⨿ Y -> X × Y` assembled from identities and
    /// zero maps.
    pub comparison: NatMatrix,
    pub comparison_is_iso: bool,
    pub counterexample: Option<ConeCounterexample>,
    pub passed: bool,
}

/// Checks that the `(m+n)`-element set, with the spans induced by the
/// coproduct injections, is both a product and a coproduct of `m` and `n` for
/// all cones whose legs have entries at most `bound`.
///
/// Mediators are searched among maps with entries at most `bound` as well;
/// every mediator of a bounded cone is itself bounded, so the search is
/// complete. Test objects run over sizes `0, 1, 2` as long as the search
/// space for a size stays within a fixed budget.
pub fn check_biproduct(m: usize, n: usize, bound: u64) -> BiproductReport {
    let s = m + n;
    let proj_x = NatMatrix::blocks(
        &NatMatrix::identity(m),
        &NatMatrix::zeros(m, 0),
        &NatMatrix::zeros(n, m),
        &NatMatrix::zeros(n, 0),
    )
    .unwrap();
    let proj_y = NatMatrix::blocks(
        &NatMatrix::zeros(m, n),
        &NatMatrix::zeros(m, 0),
        &NatMatrix::identity(n),
        &NatMatrix::zeros(n, 0),
    )
    .unwrap();
    let inj_x = transpose(&proj_x);
    let inj_y = transpose(&proj_y);

    let base = bound as usize + 1;
    let mut test_objects = Vec::new();
    for t in 0..=2usize {
        let cells = t * s;
        if base.checked_pow(cells as u32).is_some_and(|c| c <= SEARCH_BUDGET) {
            test_objects.push(t);
        }
    }

    let mut counterexample = None;
    let mut product = true;
    let mut coproduct = true;
    for &t in &test_objects {
        if counterexample.is_none() {
            if let Some(c) = universal_check(ConeKind::Product, t, s, bound, &proj_x, &proj_y) {
                product = false;
                counterexample = Some(c);
            }
        }
        if counterexample.is_none() {
            if let Some(c) = universal_check(ConeKind::Coproduct, t, s, bound, &inj_x, &inj_y) {
                coproduct = false;
                counterexample = Some(c);
            }
        }
    }

    let id_x = NatMatrix::identity(m);
    let id_y = NatMatrix::identity(n);
    // g ∘ f is f · g
    let biproduct_identities = inj_x.matmul(&proj_x).unwrap() == id_x
        && inj_y.matmul(&proj_y).unwrap() == id_y
        && inj_x.matmul(&proj_y).unwrap().is_zero()
        && inj_y.matmul(&proj_x).unwrap().is_zero()
        && proj_x
            .matmul(&inj_x)
            .unwrap()
            .try_add(&proj_y.matmul(&inj_y).unwrap())
            .unwrap()
            == NatMatrix::identity(s);

    // component from summand i to factor j is id when i = j and zero otherwise
    let comparison = NatMatrix::blocks(
        &id_x,
        &NatMatrix::zeros(m, n),
        &NatMatrix::zeros(n, m),
        &id_y,
    )
    .unwrap();
    let components_ok = inj_x.matmul(&comparison).unwrap().matmul(&proj_x).unwrap() == id_x
        && inj_y.matmul(&comparison).unwrap().matmul(&proj_y).unwrap() == id_y
        && inj_x.matmul(&comparison).unwrap().matmul(&proj_y).unwrap().is_zero()
        && inj_y.matmul(&comparison).unwrap().matmul(&proj_x).unwrap().is_zero();
    let comparison_is_iso = components_ok && comparison.is_invertible();

    let passed = product && coproduct && biproduct_identities && comparison_is_iso;
    BiproductReport {
        m,
        n,
        bound,
        test_objects,
        product,
        coproduct,
        biproduct_identities,
        comparison,
        comparison_is_iso,
        counterexample,
        passed,
    }
}

fn transpose(a: &NatMatrix) -> NatMatrix {
    let mut t = NatMatrix::zeros(a.cols(), a.rows());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            t.set(j, i, a.get(i, j));
        }
    }
    t
}

/// Decodes `code` into a `rows × cols` matrix in base `bound + 1`.
fn decode(mut code: usize, rows: usize, cols: usize, bound: u64) -> NatMatrix {
    let base = bound as usize + 1;
    let mut m = NatMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, (code % base) as u64);
            code /= base;
        }
    }
    m
}

fn encode(ms: &[&NatMatrix], bound: u64) -> Option<usize> {
    let base = bound as usize + 1;
    let mut code = 0usize;
    let mut place = 1usize;
    for m in ms {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if v > bound {
                    return None;
                }
                code += v as usize * place;
                place *= base;
            }
        }
    }
    Some(code)
}

/// For a product: every pair `(f: T -> X, g: T -> Y)` must have exactly one
/// `h: T -> X⨿Y` with `p_X ∘ h = f` and `p_Y ∘ h = g`. Dually for a coproduct.
fn universal_check(
    kind: ConeKind,
    t: usize,
    s: usize,
    bound: u64,
    leg_x: &NatMatrix,
    leg_y: &NatMatrix,
) -> Option<ConeCounterexample> {
    let (h_rows, h_cols) = match kind {
        ConeKind::Product => (t, s),
        ConeKind::Coproduct => (s, t),
    };
    let base = bound as usize + 1;
    let total = base.pow((h_rows * h_cols) as u32);
    let mut hits: HashMap<usize, usize> = HashMap::with_capacity(total);
    for code in 0..total {
        let h = decode(code, h_rows, h_cols, bound);
        let (f, g) = match kind {
            ConeKind::Product => (h.matmul(leg_x).unwrap(), h.matmul(leg_y).unwrap()),
            ConeKind::Coproduct => (leg_x.matmul(&h).unwrap(), leg_y.matmul(&h).unwrap()),
        };
        // images outside the bound belong to no bounded cone
        if let Some(c) = encode(&[&f, &g], bound) {
            *hits.entry(c).or_insert(0) += 1;
        }
    }
    let (fx, fy) = match kind {
        ConeKind::Product => ((t, leg_x.cols()), (t, leg_y.cols())),
        ConeKind::Coproduct => ((leg_x.rows(), t), (leg_y.rows(), t)),
    };
    let cones = base.pow((fx.0 * fx.1 + fy.0 * fy.1) as u32);
    for code in 0..cones {
        let count = hits.get(&code).copied().unwrap_or(0);
        if count != 1 {
            let split = base.pow((fx.0 * fx.1) as u32);
            return Some(ConeCounterexample {
                kind,
                test_object: t,
                first_leg: decode(code % split, fx.0, fx.1, bound),
                second_leg: decode(code / split, fy.0, fy.1, bound),
                mediators: count,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_pass() {
        for (m, n, b) in [(1, 1, 2), (2, 2, 2), (0, 3, 2), (0, 0, 1), (2, 0, 3)] {
            let r = check_biproduct(m, n, b);
            assert!(r.passed, "{m} {n} {b}: {r:?}");
            assert!(r.counterexample.is_none());
            assert!(r.test_objects.contains(&1));
        }
    }

    #[test]
    fn wrong_legs_are_caught() {
        // a "product" whose first projection is doubled loses surjectivity
        let doubled = NatMatrix::from_rows(vec![vec![2], vec![0]]).unwrap();
        let proj_y = NatMatrix::from_rows(vec![vec![0], vec![1]]).unwrap();
        let c = universal_check(ConeKind::Product, 1, 2, 2, &doubled, &proj_y).unwrap();
        assert_eq!(c.mediators, 0);
        assert_eq!(c.first_leg.get(0, 0) % 2, 1);
    }

    #[test]
    fn zero_object_cases() {
        let r = check_biproduct(0, 0, 4);
        assert!(r.passed);
        assert_eq!(r.test_objects, vec![0, 1, 2]);
    }
}
