//! Exact Gaussian elimination over a coefficient field.

use crate::field::Field;

/// Incrementally maintained reduced row echelon form.
///
/// Rows are dense over a fixed number of columns. Each stored row has a
/// pivot equal to one, and every pivot column is zero in all other rows.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `row` against the stored rows; returns whether it increased
    /// the rank.
    pub fn insert(&mut self, mut row: Vec<F::Elem>) -> bool {
        assert_eq!(row.len(), self.ncols, "row length");
        let f = &self.field;
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(r) {
                if !f.is_zero(y) {
                    *x = f.sub_mul(x, &c, y);
                }
            }
        }
        let Some(p) = row.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&row[p]).expect("nonzero pivot");
        for x in row.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        for r in self.rows.iter_mut() {
            if f.is_zero(&r[p]) {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !f.is_zero(y) {
                    *x = f.sub_mul(x, &c, y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
        true
    }

    /// Basis of `{v : M v = 0}` read off the reduced echelon form: one
    /// vector per free column, with a one in that column.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.ncols];
            v[free] = f.one();
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if !f.is_zero(&r[free]) {
                    v[p] = f.neg(&r[free]);
                }
            }
            out.push(v);
        }
        out
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
}

/// Rank of a dense matrix given by rows.
pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> usize {
    let mut e = Echelon::new(field.clone(), ncols);
    for r in rows {
        e.insert(r.clone());
        if e.is_full() {
            break;
        }
    }
    e.rank()
}

/// Nullspace basis of a dense matrix given by rows.
pub fn nullspace<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut e = Echelon::new(field.clone(), ncols);
    for r in rows {
        e.insert(r.clone());
        if e.is_full() {
            break;
        }
    }
    e.nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn nullspace_of_small_matrix() {
        let q = Rationals;
        let rows = vec![
            vec![q.from_i64(1), q.from_i64(2), q.from_i64(3)],
            vec![q.from_i64(2), q.from_i64(4), q.from_i64(6)],
        ];
        assert_eq!(rank(&q, &rows, 3), 1);
        let ns = nullspace(&q, &rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                let dot = r
                    .iter()
                    .zip(v)
                    .fold(q.zero(), |acc, (a, b)| q.add(&acc, &q.mul(a, b)));
                assert!(q.is_zero(&dot));
            }
        }
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let f = PrimeField::new(5).unwrap();
        let rows = vec![vec![1, 2], vec![3, 1]];
        // det = 1 - 6 = -5 = 0 mod 5
        assert_eq!(rank(&f, &rows, 2), 1);
        let q = Rationals;
        let qrows = vec![
            vec![q.from_i64(1), q.from_i64(2)],
            vec![q.from_i64(3), q.from_i64(1)],
        ];
        assert_eq!(rank(&q, &qrows, 2), 2);
    }

    #[test]
    fn empty_and_zero_rows() {
        let q = Rationals;
        assert_eq!(nullspace(&q, &[], 2).len(), 2);
        assert_eq!(rank(&q, &[vec![q.zero(), q.zero()]], 2), 0);
    }
}
