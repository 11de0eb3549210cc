//! Exact matrices over `Rat`, reduced with fraction-free elimination.
//!
//! Rows are scaled to primitive integer vectors before elimination and kept
//! primitive after every combination step (`a·row_k − b·row_p`, divided by
//! the content), so intermediate growth stays bounded by the input size.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Rat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        v.iter_mut().for_each(|x| *x = &*x / &g);
    }
}

/// Scale a rational row to a primitive integer row with the same span.
fn integer_row(row: &[Rat]) -> Vec<BigInt> {
    let l = Rat::denominator_lcm(row);
    let lr = Rat::from_int(l);
    let mut out: Vec<BigInt> = row.iter().map(|x| (x * &lr).numer().clone()).collect();
    make_primitive(&mut out);
    out
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<Rat>>) -> Option<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Matrix {
            rows,
            cols,
            data: entries.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| Rat::from_int(x)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// `self · rhs`; zero entries of `self` are skipped.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Kronecker product; row `(i, k)` sits at `i · rhs.rows + k`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, off + c, b.get(r, c).clone());
                }
            }
            off += b.cols;
        }
        out
    }

    /// Reduced row echelon form and its pivot columns; zero rows are dropped.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| integer_row(self.row(r)))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            let a = &pivot_row[c];
            for (k, row) in rows.iter_mut().enumerate() {
                if k == rank || row[c].is_zero() {
                    continue;
                }
                let b = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x * a - &b * y;
                }
                make_primitive(row);
            }
            pivots.push(c);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        let mut out = Matrix::zeros(rank, self.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            let lead = Rat::from_int(rows[i][pc].clone());
            for c in 0..self.cols {
                if !rows[i][c].is_zero() {
                    out.set(i, c, Rat::from_int(rows[i][c].clone()) / &lead);
                }
            }
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self · v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    /// Some `X` with `self · X = rhs`, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = Matrix::hstack(self.rows, &[self, rhs]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }
}

/// A subspace of `Q^n` held by its reduced row echelon basis, so equal
/// subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::span(ambient_dim, (0..ambient_dim).map(|i| unit(ambient_dim, i)))
    }

    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<Rat>>) -> Self {
        let rows: Vec<Vec<Rat>> = vectors.into_iter().collect();
        for v in &rows {
            assert_eq!(v.len(), ambient_dim, "vector length must match ambient dimension");
        }
        if rows.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        let m = Matrix::from_rows(rows.len(), ambient_dim, rows).expect("shape checked");
        let (r, _) = m.rref();
        Subspace {
            ambient_dim,
            basis: r.to_rows(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::span(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.sum(&Subspace::span(self.ambient_dim, [v.to_vec()])).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == other.dim()
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

type SparseRow = Vec<(usize, BigInt)>;

/// Incrementally built row echelon basis of sparse integer rows.
///
/// Each stored row is primitive and its first entry is its pivot; no two
/// rows share a pivot column.
#[derive(Default, Debug)]
pub struct SparseEchelon {
    rows: Vec<SparseRow>,
    pivot_of: HashMap<usize, usize>,
}

fn combine(a: &BigInt, row: &SparseRow, b: &BigInt, pivot: &SparseRow) -> SparseRow {
    // a·row − b·pivot
    let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (c, x) in row {
        out.insert(*c, a * x);
    }
    for (c, y) in pivot {
        let e = out.entry(*c).or_insert_with(BigInt::zero);
        *e -= b * y;
    }
    out.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

fn primitive_sparse(row: &mut SparseRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        row.iter_mut().for_each(|(_, x)| *x = &*x / &g);
    }
    if row.first().is_some_and(|(_, x)| x.is_negative()) {
        row.iter_mut().for_each(|(_, x)| *x = -&*x);
    }
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    /// Adds a rational row given as `(column, value)` pairs; returns whether
    /// it was independent of the rows already present.
    pub fn insert(&mut self, entries: &[(usize, Rat)]) -> bool {
        let l = Rat::denominator_lcm(entries.iter().map(|(_, x)| x));
        let lr = Rat::from_int(l);
        let mut row: SparseRow = {
            let mut m: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (c, x) in entries {
                *m.entry(*c).or_insert_with(BigInt::zero) += (x * &lr).numer();
            }
            m.into_iter().filter(|(_, x)| !x.is_zero()).collect()
        };
        loop {
            let Some((lead, b)) = row.first().cloned() else {
                return false;
            };
            match self.pivot_of.get(&lead) {
                Some(&pi) => {
                    let pivot = &self.rows[pi];
                    let a = pivot[0].1.clone();
                    row = combine(&a, &row, &b, pivot);
                    primitive_sparse(&mut row);
                }
                None => {
                    primitive_sparse(&mut row);
                    self.pivot_of.insert(lead, self.rows.len());
                    self.rows.push(row);
                    return true;
                }
            }
        }
    }

    /// Normal form of a rational vector modulo the row space: the unique
    /// representative supported on non-pivot columns.
    pub fn reduce(&self, entries: &[(usize, Rat)]) -> BTreeMap<usize, Rat> {
        let l = Rat::denominator_lcm(entries.iter().map(|(_, x)| x));
        let lr = Rat::from_int(l.clone());
        let mut v: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, x) in entries {
            *v.entry(*c).or_insert_with(BigInt::zero) += (x * &lr).numer();
        }
        v.retain(|_, x| !x.is_zero());
        // true vector = v / scale
        let mut scale = l;
        loop {
            let next = v.iter().find(|(c, _)| self.pivot_of.contains_key(c));
            let Some((&col, b)) = next else { break };
            let b = b.clone();
            let pivot = &self.rows[self.pivot_of[&col]];
            let a = &pivot[0].1;
            for x in v.values_mut() {
                *x = &*x * a;
            }
            for (c, y) in pivot {
                let e = v.entry(*c).or_insert_with(BigInt::zero);
                *e -= &b * y;
            }
            v.retain(|_, x| !x.is_zero());
            scale *= a;
            let g = v.values().fold(scale.clone(), |acc, x| acc.gcd(x));
            if !g.is_one() {
                v.values_mut().for_each(|x| *x = &*x / &g);
                scale = &scale / &g;
            }
        }
        let s = Rat::from_int(scale);
        v.into_iter()
            .map(|(c, x)| (c, Rat::from_int(x) / &s))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> Matrix {
        Matrix::from_ints(rows, cols, e)
    }

    #[test]
    fn rref_of_dependent_rows() {
        let a = m(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        let (r, piv) = a.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, Matrix::from_rows(2, 3, vec![
            vec![Rat::one(), Rat::zero(), Rat::one()],
            vec![Rat::zero(), Rat::one(), Rat::one()],
        ]).unwrap());
    }

    #[test]
    fn nullspace_annihilated() {
        let a = m(2, 4, &[1, 2, 0, -1, 0, 1, 3, 2]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.apply(&v).iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(3, 3, &[2, 1, 0, 0, 1, 1, 1, 0, 3]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = m(1, 2, &[1, 2]);
        let b = m(2, 1, &[3, 4]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k, m(2, 2, &[3, 6, 4, 8]));
    }

    #[test]
    fn subspace_canonical() {
        let a = Subspace::span(2, [vec![Rat::from_int(2), Rat::from_int(4)]]);
        let b = Subspace::span(2, [vec![Rat::frac(-1, 2), Rat::from_int(-1)]]);
        assert_eq!(a, b);
        assert!(a.contains(&[Rat::from_int(1), Rat::from_int(2)]));
        assert!(!a.contains(&[Rat::from_int(1), Rat::from_int(1)]));
    }

    #[test]
    fn sparse_echelon_matches_dense_rank() {
        let rows = [
            vec![(0, Rat::one()), (2, Rat::from_int(-1))],
            vec![(1, Rat::one()), (2, Rat::from_int(-1))],
            vec![(0, Rat::one()), (1, Rat::from_int(-1))],
        ];
        let mut e = SparseEchelon::new();
        let added: Vec<bool> = rows.iter().map(|r| e.insert(r)).collect();
        assert_eq!(added, vec![true, true, false]);
        let red = e.reduce(&[(0, Rat::one())]);
        // e0 = e2 modulo the relations
        assert_eq!(red.into_iter().collect::<Vec<_>>(), vec![(2, Rat::one())]);
    }
}
