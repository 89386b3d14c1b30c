//! Exact sparse row reduction over ℚ.

use std::collections::BTreeMap;
use std::ops::Bound;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// Sparse vector keyed by coordinate; never stores zeros.
pub type SparseVec<K> = BTreeMap<K, Rational>;

/// `target -= c * row`
fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, c: &Rational, row: &SparseVec<K>) {
    for (k, v) in row {
        let entry = target.entry(k.clone()).or_insert_with(Rational::zero);
        *entry -= c * v;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

/// Row-echelon basis built incrementally.
///
/// Every stored row is normalized to a leading coefficient of 1 and keyed by
/// its leading coordinate. When `track` is set, each row also records its
/// expression in terms of the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, (SparseVec<K>, SparseVec<usize>)>,
    inserted: usize,
    track: bool,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(track: bool) -> Self {
        Echelon {
            rows: BTreeMap::new(),
            inserted: 0,
            track,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Reduces `v` completely against the stored rows. Returns the remainder
    /// and, when tracking, coefficients `c` with `v = Σ c_j inserted_j + remainder`.
    pub fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut rem = v.clone();
        let mut combo: SparseVec<usize> = BTreeMap::new();
        let mut cursor: Option<K> = None;
        loop {
            let lower = match &cursor {
                Some(c) => Bound::Excluded(c.clone()),
                None => Bound::Unbounded,
            };
            let next = rem
                .range((lower, Bound::Unbounded))
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = next else { break };
            let (row, row_combo) = &self.rows[&k];
            axpy(&mut rem, &c, row);
            if self.track {
                axpy(&mut combo, &-c, row_combo);
            }
            cursor = Some(k);
        }
        (rem, combo)
    }

    /// Inserts a vector; returns `true` if it increased the rank.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (mut rem, mut combo) = self.reduce(&v);
        let Some((lead, c)) = rem.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Rational::one() / c;
        for x in rem.values_mut() {
            *x *= &inv;
        }
        if self.track {
            // rem = v − Σ combo·inserted, so the new row is inv·(v − Σ …)
            combo = combo.into_iter().map(|(j, x)| (j, -x * &inv)).collect();
            combo.insert(id, inv);
            combo.retain(|_, x| !x.is_zero());
        }
        self.rows.insert(lead, (rem, combo));
        true
    }

    /// Fully reduced rows (each pivot coordinate appears in exactly one row).
    pub fn reduced_rows(&self) -> Vec<(K, SparseVec<K>)> {
        let keys: Vec<K> = self.rows.keys().cloned().collect();
        let mut rows: BTreeMap<K, SparseVec<K>> = self
            .rows
            .iter()
            .map(|(k, (r, _))| (k.clone(), r.clone()))
            .collect();
        for k in keys.iter().rev() {
            let pivot_row = rows[k].clone();
            for other in keys.iter().filter(|o| *o < k) {
                let row = rows.get_mut(other).unwrap();
                if let Some(c) = row.get(k).cloned() {
                    axpy(row, &c, &pivot_row);
                }
            }
        }
        rows.into_iter().collect()
    }
}

/// Basis of `{x : A x = 0}` for sparse rows over `ncols` columns, one dense
/// vector per free column (other free coordinates 0), scaled by [`primitive`].
pub fn nullspace_basis<I>(rows: I, ncols: usize) -> Vec<Vec<Rational>>
where
    I: IntoIterator<Item = SparseVec<usize>>,
{
    let mut ech = Echelon::new(false);
    for r in rows {
        debug_assert!(r.keys().all(|&k| k < ncols));
        ech.insert(r);
    }
    let reduced = ech.reduced_rows();
    let pivots: std::collections::BTreeSet<usize> = reduced.iter().map(|(k, _)| *k).collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (p, row) in &reduced {
                if let Some(x) = row.get(&free) {
                    v[*p] = -x.clone();
                }
            }
            primitive(v)
        })
        .collect()
}

/// Scales a nonzero vector to coprime integers with a positive first entry.
pub fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for x in v.iter().filter(|x| !x.is_zero()) {
        lcm = lcm.lcm(x.denom());
        gcd = gcd.gcd(x.numer());
    }
    if gcd.is_zero() {
        return v;
    }
    let first_negative = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    let sign = if first_negative {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let factor = Rational::new(lcm * sign, gcd);
    v.into_iter().map(|x| x * &factor).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn row(entries: &[(usize, i64)]) -> SparseVec<usize> {
        entries
            .iter()
            .filter(|(_, v)| *v != 0)
            .map(|&(k, v)| (k, rat(v, 1)))
            .collect()
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        let rows = (0..4).map(|i| row(&[(i, 1)]));
        assert!(nullspace_basis(rows, 4).is_empty());
    }

    #[test]
    fn empty_system_is_everything() {
        let basis = nullspace_basis(Vec::new(), 3);
        assert_eq!(basis.len(), 3);
        assert_eq!(basis[1], vec![rat(0, 1), rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn vir_degree_one_skew_rows() {
        // unknowns (c00, c10, c01): rows 2·c00 = 0 and 2·c10 − c01 = 0
        let rows = vec![row(&[(0, 2)]), row(&[(1, 2), (2, -1)])];
        let basis = nullspace_basis(rows, 3);
        assert_eq!(basis, vec![vec![rat(0, 1), rat(1, 1), rat(2, 1)]]);
    }

    #[test]
    fn basis_vectors_solve_the_system() {
        let rows = vec![
            row(&[(0, 1), (1, 2), (3, -1)]),
            row(&[(1, 3), (2, 1)]),
            row(&[(0, 1), (1, 5), (2, 1), (3, -1)]),
        ];
        let basis = nullspace_basis(rows.clone(), 4);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for r in &rows {
                let dot: Rational = r.iter().map(|(k, c)| c * &v[*k]).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn primitive_scaling() {
        let v = primitive(vec![rat(0, 1), rat(-1, 2), rat(3, 4)]);
        assert_eq!(v, vec![rat(0, 1), rat(2, 1), rat(-3, 1)]);
    }

    #[test]
    fn tracked_reduction_recovers_combination() {
        let a = row(&[(0, 1), (1, 1)]);
        let b = row(&[(1, 1), (2, 1)]);
        let mut e = Echelon::new(true);
        assert!(e.insert(a));
        assert!(e.insert(b));
        assert!(!e.insert(row(&[(0, 1), (1, 2), (2, 1)])));
        let target = row(&[(0, 2), (1, 5), (2, 3)]);
        let (rem, combo) = e.reduce(&target);
        assert!(rem.is_empty());
        assert_eq!(combo.get(&0), Some(&rat(2, 1)));
        assert_eq!(combo.get(&1), Some(&rat(3, 1)));
        let (rem, _) = e.reduce(&row(&[(0, 1), (2, 1)]));
        assert!(!rem.is_empty());
    }
}
