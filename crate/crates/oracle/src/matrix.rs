//! Dense exact matrices and division-free characteristic polynomials.

use std::fmt;

use adams_core::{CoefficientRing, Poly};

#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: CoefficientRing> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.data[i * self.cols + j] = value;
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: R) {
        let slot = &mut self.data[i * self.cols + j];
        *slot = slot.clone() + value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, a.clone() * b.clone());
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> Self {
        assert!(self.is_square());
        (0..e).fold(Matrix::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<S: CoefficientRing>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn principal_submatrix(&self, idx: &[usize]) -> Self {
        let mut out = Matrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }
}

impl<R: CoefficientRing> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Berkowitz's algorithm: `det(xI - A)` with only ring operations.
fn berkowitz<R: CoefficientRing>(a: &Matrix<R>) -> Poly<R> {
    let n = a.rows();
    if n == 0 {
        return Poly::one();
    }
    // descending coefficients of the char poly of the leading r x r block
    let mut v = vec![R::one(), -a.get(0, 0).clone()];
    for r in 1..n {
        let mut t = Vec::with_capacity(r + 2);
        t.push(R::one());
        t.push(-a.get(r, r).clone());
        // w = A_r^k C, with C the new column above the diagonal
        let mut w: Vec<R> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for k in 0..r {
            let rw = (0..r).fold(R::zero(), |acc, j| acc + a.get(r, j).clone() * w[j].clone());
            t.push(-rw);
            if k + 1 < r {
                w = (0..r)
                    .map(|i| (0..r).fold(R::zero(), |acc, j| acc + a.get(i, j).clone() * w[j].clone()))
                    .collect();
            }
        }
        let next: Vec<R> = (0..r + 2)
            .map(|i| (0..=i.min(r)).fold(R::zero(), |acc, j| acc + t[i - j].clone() * v[j].clone()))
            .collect();
        v = next;
    }
    v.reverse();
    Poly::new(v)
}

/// Strongly connected components of the nonzero pattern (iterative Tarjan).
fn components<R: CoefficientRing>(a: &Matrix<R>) -> Vec<Vec<usize>> {
    let n = a.rows();
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| !a.get(i, j).is_zero()).collect()).collect();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// Exact characteristic polynomial `det(xI - A)`.
///
/// The matrix is first split along the strongly connected components of its
/// nonzero pattern (a block-triangular form after permutation), then each
/// diagonal block goes through Berkowitz.
pub fn char_poly_exact<R: CoefficientRing>(a: &Matrix<R>) -> Poly<R> {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    components(a)
        .into_iter()
        .fold(Poly::one(), |acc, comp| acc.mul(&berkowitz(&a.principal_submatrix(&comp))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use adams_core::ring::{int, rational};
    use adams_core::{Laurent, Rational};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(int(n))
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn small_examples() {
        assert_eq!(char_poly_exact(&Matrix::<Rational>::identity(3)), Poly::from_ints(&[-1, 1]).pow(3));
        assert_eq!(char_poly_exact(&mat(&[&[0, 1], &[1, 0]])), Poly::from_ints(&[-1, 0, 1]));
        let a = mat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        // det(xI - A) = x^3 - 9x^2 + 24x - 18
        assert_eq!(char_poly_exact(&a), Poly::from_ints(&[-18, 24, -9, 1]));
        assert_eq!(char_poly_exact(&Matrix::<Rational>::zeros(0, 0)), Poly::one());
        let half = Matrix::from_rows(vec![vec![rational(1, 2)]]);
        assert_eq!(char_poly_exact(&half), Poly::new(vec![rational(-1, 2), q(1)]));
    }

    #[test]
    fn laurent_swap_block() {
        let qq = Laurent::q();
        let a = Matrix::from_rows(vec![vec![Laurent::zero(), qq.clone()], vec![qq.clone(), Laurent::zero()]]);
        let expected = Poly::new(vec![-(qq.clone() * qq), Laurent::zero(), Laurent::one()]);
        assert_eq!(char_poly_exact(&a), expected);
    }

    fn cofactor_det(a: &Matrix<Rational>) -> Rational {
        let n = a.rows();
        if n == 0 {
            return q(1);
        }
        let mut acc = q(0);
        for j in 0..n {
            let idx: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let mut minor = Matrix::zeros(n - 1, n - 1);
            for r in 1..n {
                for (c, &cj) in idx.iter().enumerate() {
                    minor.set(r - 1, c, a.get(r, cj).clone());
                }
            }
            let term = a.get(0, j).clone() * cofactor_det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    proptest! {
        #[test]
        fn matches_determinant_at_points(entries in proptest::collection::vec(-3i64..=3, 16), sparse in proptest::collection::vec(any::<bool>(), 16), x in -4i64..=4) {
            let a = Matrix::from_rows((0..4).map(|i| (0..4).map(|j| if sparse[4 * i + j] { q(0) } else { q(entries[4 * i + j]) }).collect()).collect());
            let p = char_poly_exact(&a);
            let shifted = Matrix::<Rational>::identity(4).scale(&q(x)).sub(&a);
            prop_assert_eq!(p.eval(&q(x)), cofactor_det(&shifted));
            prop_assert_eq!(p.coeff(3), -a.trace());
        }
    }
}
