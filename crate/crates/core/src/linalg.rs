//! Exact sparse linear algebra: vectors keyed by basis labels, an
//! incremental reduced echelon form, kernels and span membership.

use std::collections::BTreeMap;
use std::ops::Bound;

use crate::scalar::Scalar;

/// A finite linear combination of basis elements labelled by `K`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVector<K: Ord, T> {
    terms: BTreeMap<K, T>,
}

impl<K: Ord + Clone, T: Scalar> Default for SparseVector<K, T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone, T: Scalar> SparseVector<K, T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, T::one())
    }

    pub fn term(key: K, coeff: T) -> Self {
        let mut v = Self::zero();
        v.add_term(key, coeff);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, T)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &K) -> T {
        self.terms.get(key).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &T)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.terms.keys()
    }

    pub fn leading_key(&self) -> Option<&K> {
        self.terms.keys().next_back()
    }

    pub fn add_term(&mut self, key: K, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c = c.clone() + coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &T, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), c.clone() * v.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&T::one(), other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&-T::one(), other);
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> SparseVector<K2, T> {
        SparseVector::from_terms(self.terms.iter().map(|(k, v)| (f(k), v.clone())))
    }

    pub fn into_terms(self) -> BTreeMap<K, T> {
        self.terms
    }
}

/// A reduced row and the combination of inserted vectors producing it.
type Row<K, T> = (SparseVector<K, T>, SparseVector<usize, T>);

/// Fully reduced row echelon form, built one vector at a time.
///
/// Each stored row has coefficient 1 at its pivot (its largest key) and 0 at
/// every other pivot, so the stored rows are a canonical basis of the span.
/// Alongside each row we keep the combination of inserted vectors that
/// produced it, which is how kernels are read off.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord, T> {
    rows: BTreeMap<K, Row<K, T>>,
    inserted: usize,
}

impl<K: Ord + Clone, T: Scalar> Default for Echelon<K, T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone, T: Scalar> Echelon<K, T> {
    pub fn new() -> Self {
        Self { rows: BTreeMap::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; also returns the combination of
    /// inserted vectors that was subtracted.
    fn reduce_tracked(&self, mut v: SparseVector<K, T>) -> (SparseVector<K, T>, SparseVector<usize, T>) {
        let mut combo = SparseVector::zero();
        let mut upper: Bound<K> = Bound::Unbounded;
        loop {
            let next = v
                .terms
                .range((Bound::Unbounded, upper.clone()))
                .rev()
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((key, c)) = next else { break };
            let (row, row_combo) = &self.rows[&key];
            let neg = -c;
            v.axpy(&neg, row);
            combo.axpy(&neg, row_combo);
            upper = Bound::Excluded(key);
        }
        (v, combo)
    }

    pub fn reduce(&self, v: &SparseVector<K, T>) -> SparseVector<K, T> {
        self.reduce_tracked(v.clone()).0
    }

    pub fn contains(&self, v: &SparseVector<K, T>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`. Returns `Err(combo)` with a kernel relation
    /// `sum combo_i * v_i = 0` (over all inserted vectors, `v` included with
    /// coefficient 1) when `v` was already in the span.
    pub fn insert(&mut self, v: &SparseVector<K, T>) -> Result<(), SparseVector<usize, T>> {
        let index = self.inserted;
        self.inserted += 1;
        let (mut r, mut combo) = self.reduce_tracked(v.clone());
        combo.add_term(index, T::one());
        let Some(pivot) = r.leading_key().cloned() else {
            return Err(combo);
        };
        let inv = T::one() / r.get(&pivot);
        r = r.scale(&inv);
        combo = combo.scale(&inv);
        for (row, row_combo) in self.rows.values_mut() {
            let c = row.get(&pivot);
            if !c.is_zero() {
                row.axpy(&-c.clone(), &r);
                row_combo.axpy(&-c, &combo);
            }
        }
        self.rows.insert(pivot, (r, combo));
        Ok(())
    }

    /// The canonical basis of the span, ordered by pivot.
    pub fn basis(&self) -> Vec<SparseVector<K, T>> {
        self.rows.values().map(|(r, _)| r.clone()).collect()
    }

    /// Expresses `v` as a combination of the inserted vectors, if possible.
    pub fn solve(&self, v: &SparseVector<K, T>) -> Option<SparseVector<usize, T>> {
        let (r, combo) = self.reduce_tracked(v.clone());
        r.is_zero().then(|| combo.scale(&-T::one()))
    }
}

pub fn rank<K: Ord + Clone, T: Scalar>(vectors: &[SparseVector<K, T>]) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        let _ = ech.insert(v);
    }
    ech.rank()
}

/// A basis of `{c : sum c_i columns_i = 0}`, each vector indexed by column.
pub fn kernel<K: Ord + Clone, T: Scalar>(columns: &[SparseVector<K, T>]) -> Vec<SparseVector<usize, T>> {
    let mut ech = Echelon::new();
    columns.iter().filter_map(|c| ech.insert(c).err()).collect()
}

pub fn span_contains<K: Ord + Clone, T: Scalar>(vectors: &[SparseVector<K, T>], target: &SparseVector<K, T>) -> bool {
    let mut ech = Echelon::new();
    for v in vectors {
        let _ = ech.insert(v);
    }
    ech.contains(target)
}

pub fn same_span<K: Ord + Clone, T: Scalar>(a: &[SparseVector<K, T>], b: &[SparseVector<K, T>]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    let both: Vec<_> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&both) == ra
}

/// Canonical reduced basis of the span of `vectors`.
pub fn canonical_basis<K: Ord + Clone, T: Scalar>(vectors: &[SparseVector<K, T>]) -> Vec<SparseVector<K, T>> {
    let mut ech = Echelon::new();
    for v in vectors {
        let _ = ech.insert(v);
    }
    ech.basis()
}
