//! The Burnside ring `A(G)`, endomorphisms of the point among G-sets, with
//! its table of marks.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{self, GSet, PermGroup};

/// Integer coefficients over the subgroup classes, i.e. a virtual G-set
/// `Σ x[K]·[G/K]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BurnsideRingElement(pub Vec<i64>);

impl BurnsideRingElement {
    pub fn zero(rank: usize) -> Self {
        BurnsideRingElement(vec![0; rank])
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        BurnsideRingElement(v)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        BurnsideRingElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        BurnsideRingElement(self.0.iter().map(|a| -a).collect())
    }
}

/// `A(G)` on the basis of transitive G-sets, ordered like the subgroup classes.
#[derive(Debug, Clone, Serialize)]
pub struct BurnsideRing {
    pub group: String,
    pub classes: Vec<String>,
    /// `products[i][j]` is `[G/H_i]·[G/H_j]` in the basis.
    pub products: Vec<Vec<BurnsideRingElement>>,
    #[serde(skip)]
    group_data: Arc<PermGroup>,
}

impl BurnsideRing {
    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group_data
    }

    pub fn zero(&self) -> BurnsideRingElement {
        BurnsideRingElement::zero(self.rank())
    }

    /// `[G/G]`, the point; the full group is always the last class.
    pub fn one(&self) -> BurnsideRingElement {
        BurnsideRingElement::basis(self.rank(), self.rank() - 1)
    }

    pub fn basis(&self, i: usize) -> BurnsideRingElement {
        BurnsideRingElement::basis(self.rank(), i)
    }

    pub fn mul(&self, x: &BurnsideRingElement, y: &BurnsideRingElement) -> Result<BurnsideRingElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = vec![0; self.rank()];
        for (i, &a) in x.0.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in y.0.iter().enumerate().filter(|(_, &b)| b != 0) {
                for (o, &c) in out.iter_mut().zip(&self.products[i][j].0) {
                    *o += a * b * c;
                }
            }
        }
        Ok(BurnsideRingElement(out))
    }

    fn check(&self, x: &BurnsideRingElement) -> Result<()> {
        if x.0.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "element of length {} in a ring of rank {}",
                x.0.len(),
                self.rank()
            )))
        }
    }
}

/// Structure constants from the orbit decomposition of `G/H × G/K`.
pub fn burnside_ring(g: &Arc<PermGroup>) -> Result<BurnsideRing> {
    let classes = g.subgroup_conjugacy_classes()?;
    let rank = classes.len();
    let orbits: Vec<GSet> = classes
        .iter()
        .map(|c| GSet::cosets(g.clone(), &c.representative))
        .collect::<Result<_>>()?;
    let mut products = vec![vec![BurnsideRingElement::zero(rank); rank]; rank];
    for i in 0..rank {
        for j in i..rank {
            let mut v = vec![0; rank];
            for c in groups::gset_canonical(&orbits[i].product(&orbits[j])?)? {
                v[c] += 1;
            }
            products[i][j] = BurnsideRingElement(v.clone());
            products[j][i] = BurnsideRingElement(v);
        }
    }
    Ok(BurnsideRing {
        group: g.display_name(),
        classes: classes.iter().map(|c| c.name.clone()).collect(),
        products,
        group_data: g.clone(),
    })
}

/// `matrix[K][H] = |(G/K)^H|`: row `K` is the mark vector of `G/K`.
/// Lower-triangular in the class order, since `(G/K)^H` is empty unless `H`
/// is subconjugate to `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOfMarks {
    pub group: String,
    pub classes: Vec<String>,
    pub matrix: Vec<Vec<u64>>,
}

impl TableOfMarks {
    pub fn is_lower_triangular(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(k, row)| row[k + 1..].iter().all(|&v| v == 0))
    }

    pub fn diagonal(&self) -> Vec<u64> {
        (0..self.matrix.len()).map(|k| self.matrix[k][k]).collect()
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> i128 {
        let rows: Vec<Vec<i128>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect();
        bareiss(rows)
    }
}

fn bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn table_of_marks(g: &Arc<PermGroup>) -> Result<TableOfMarks> {
    let classes = g.subgroup_conjugacy_classes()?;
    let matrix = classes
        .iter()
        .map(|k| {
            let orbit = GSet::cosets(g.clone(), &k.representative)?;
            Ok(classes
                .iter()
                .map(|h| groups::fixed_points(&orbit, &h.representative).len() as u64)
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(TableOfMarks {
        group: g.display_name(),
        classes: classes.iter().map(|c| c.name.clone()).collect(),
        matrix,
    })
}

/// `φ(x)[H] = Σ_K x[K]·|(G/K)^H|`, the ring map into `ℤ^classes`.
pub fn mark_hom(x: &BurnsideRingElement, marks: &TableOfMarks) -> Result<Vec<i64>> {
    let n = marks.matrix.len();
    if x.0.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "element of length {} against {} classes",
            x.0.len(),
            n
        )));
    }
    Ok((0..n)
        .map(|h| (0..n).map(|k| x.0[k] * marks.matrix[k][h] as i64).sum())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::BUILTIN_GROUPS;

    fn group(name: &str) -> Arc<PermGroup> {
        Arc::new(PermGroup::named(name).unwrap())
    }

    #[test]
    fn trivial_group_ring_is_integers() {
        let g = Arc::new(PermGroup::trivial());
        let r = burnside_ring(&g).unwrap();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.products[0][0], BurnsideRingElement(vec![1]));
        assert_eq!(table_of_marks(&g).unwrap().matrix, vec![vec![1]]);
    }

    #[test]
    fn c2_ring() {
        let g = group("C2");
        let r = burnside_ring(&g).unwrap();
        assert_eq!(r.classes, vec!["e", "C2"]);
        let free = r.basis(0);
        assert_eq!(r.mul(&free, &free).unwrap(), BurnsideRingElement(vec![2, 0]));
        assert_eq!(r.mul(&free, &r.one()).unwrap(), free);
    }

    #[test]
    fn s3_ring_product() {
        let g = group("S3");
        let r = burnside_ring(&g).unwrap();
        assert_eq!(r.classes, vec!["e", "C2", "C3", "S3"]);
        // [S3/C2]² = [S3/C2] + [S3/e]
        assert_eq!(r.products[1][1], BurnsideRingElement(vec![1, 1, 0, 0]));
    }

    #[test]
    fn marks_examples() {
        let c2 = table_of_marks(&group("C2")).unwrap();
        assert_eq!(c2.matrix, vec![vec![2, 0], vec![1, 1]]);

        // fixed-point counts by hand: G/C3 has 2 points fixed by C3 since C3 is normal
        let s3 = table_of_marks(&group("S3")).unwrap();
        assert_eq!(
            s3.matrix,
            vec![
                vec![6, 0, 0, 0],
                vec![3, 1, 0, 0],
                vec![2, 0, 2, 0],
                vec![1, 1, 1, 1],
            ]
        );
        assert_eq!(s3.diagonal(), vec![6, 1, 2, 1]);
        assert_eq!(s3.determinant(), 12);
    }

    #[test]
    fn marks_are_triangular_and_invertible() {
        for name in BUILTIN_GROUPS {
            let g = group(name);
            let t = table_of_marks(&g).unwrap();
            assert!(t.is_lower_triangular(), "{name}");
            assert!(t.diagonal().iter().all(|&d| d > 0), "{name}");
            let product: i128 = t.diagonal().iter().map(|&d| d as i128).product();
            assert_eq!(t.determinant(), product, "{name}");
            // |(G/K)^K| = [N(K) : K]
            let index: Vec<u64> = g
                .subgroup_conjugacy_classes()
                .unwrap()
                .iter()
                .map(|c| (g.normalizer(&c.representative).len() / c.representative.len()) as u64)
                .collect();
            assert_eq!(t.diagonal(), index, "{name}");
        }
    }

    #[test]
    fn ring_axioms_on_basis() {
        for name in BUILTIN_GROUPS {
            let g = group(name);
            let r = burnside_ring(&g).unwrap();
            let n = r.rank();
            assert_eq!(n, g.subgroup_conjugacy_classes().unwrap().len());
            for i in 0..n {
                let bi = r.basis(i);
                assert_eq!(r.mul(&bi, &r.one()).unwrap(), bi);
                for j in 0..n {
                    let bj = r.basis(j);
                    assert_eq!(r.mul(&bi, &bj).unwrap(), r.mul(&bj, &bi).unwrap());
                    for k in 0..n {
                        let bk = r.basis(k);
                        let left = r.mul(&r.mul(&bi, &bj).unwrap(), &bk).unwrap();
                        let right = r.mul(&bi, &r.mul(&bj, &bk).unwrap()).unwrap();
                        assert_eq!(left, right, "{name}");
                        let dist = r.mul(&bi, &bj.add(&bk)).unwrap();
                        assert_eq!(dist, r.mul(&bi, &bj).unwrap().add(&r.mul(&bi, &bk).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn mark_hom_is_multiplicative() {
        for name in BUILTIN_GROUPS {
            let g = group(name);
            let r = burnside_ring(&g).unwrap();
            let t = table_of_marks(&g).unwrap();
            assert!(mark_hom(&r.one(), &t).unwrap().iter().all(|&v| v == 1));
            assert!(mark_hom(&r.zero(), &t).unwrap().iter().all(|&v| v == 0));
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    let xy = mark_hom(&r.products[i][j], &t).unwrap();
                    let x = mark_hom(&r.basis(i), &t).unwrap();
                    let y = mark_hom(&r.basis(j), &t).unwrap();
                    let pointwise: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a * b).collect();
                    assert_eq!(xy, pointwise, "{name}");
                }
            }
            assert!(mark_hom(&BurnsideRingElement(vec![1]), &t).is_err() || r.rank() == 1);
        }
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, -2]];
        // 2(3·-2 - 4·5) + 1(1·-2 - 0) = -52 - 2
        assert_eq!(bareiss(m), -54);
        assert_eq!(bareiss(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(bareiss(vec![vec![1, 2], vec![2, 4]]), 0);
    }
}
