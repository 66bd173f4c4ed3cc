//! Dense matrices over a scalar [`Domain`], with the row-space operations the
//! subspace and coset constructions are built from: RREF, determinant/inverse,
//! linear solve, row-space intersection, orthogonal complement, random
//! full-rank extension.

use crate::field::{Domain, Scalar};
use crate::rng::Rng;
use crate::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    dom: Domain,
    e: Vec<Scalar>,
}

impl Mat {
    pub fn zero(dom: &Domain, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, dom: dom.clone(), e: vec![0; rows * cols] }
    }

    pub fn identity(dom: &Domain, n: usize) -> Self {
        let mut m = Mat::zero(dom, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(dom: &Domain, rows: &[Vec<Scalar>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut e = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            e.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, dom: dom.clone(), e }
    }

    /// Elementary unipotent e_{i,j}(r): identity plus r at position (i, j), 0-indexed.
    pub fn elementary(dom: &Domain, n: usize, i: usize, j: usize, r: Scalar) -> Self {
        assert_ne!(i, j);
        let mut m = Mat::identity(dom, n);
        m.set(i, j, r);
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> &Domain {
        &self.dom
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.e[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.e[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.e[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.e
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(&self.dom, self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(&self.dom, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.dom, other.dom);
        let d = &self.dom;
        let mut out = Mat::zero(d, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = d.add(out.get(i, j), d.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// In-place column operation col_k += c * col_j (right multiplication by
    /// the elementary unipotent e_{j,k}(c)).
    pub fn col_add(&mut self, k: usize, j: usize, c: Scalar) {
        if c == 0 {
            return;
        }
        let d = self.dom.clone();
        for i in 0..self.rows {
            let v = d.add(self.get(i, k), d.mul(c, self.get(i, j)));
            self.set(i, k, v);
        }
    }

    /// In-place row operation row_k += c * row_j.
    pub fn row_add(&mut self, k: usize, j: usize, c: Scalar) {
        if c == 0 {
            return;
        }
        let d = self.dom.clone();
        for col in 0..self.cols {
            let v = d.add(self.get(k, col), d.mul(c, self.get(j, col)));
            self.set(k, col, v);
        }
    }

    pub fn stack(top: &Mat, bottom: &Mat) -> Mat {
        assert_eq!(top.cols, bottom.cols);
        assert_eq!(top.dom, bottom.dom);
        let mut e = top.e.clone();
        e.extend_from_slice(&bottom.e);
        Mat { rows: top.rows + bottom.rows, cols: top.cols, dom: top.dom.clone(), e }
    }

    /// Reduced row echelon form. Returns (rref, rank, pivot columns); the
    /// result keeps the original shape (zero rows at the bottom).
    pub fn rref(&self) -> (Mat, usize, Vec<usize>) {
        let d = self.dom.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let piv = (r..m.rows).find(|&i| m.get(i, c) != 0);
            let piv = match piv {
                Some(p) => p,
                None => continue,
            };
            if piv != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j), m.get(piv, j));
                    m.set(r, j, b);
                    m.set(piv, j, a);
                }
            }
            let inv = d.inv(m.get(r, c)).unwrap();
            for j in 0..m.cols {
                m.set(r, j, d.mul(inv, m.get(r, j)));
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = d.neg(m.get(i, c));
                    m.row_add(i, r, f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// RREF with zero rows dropped: the canonical basis matrix of the row space.
    pub fn row_basis(&self) -> Mat {
        let (m, rank, _) = self.rref();
        let mut rows = Vec::with_capacity(rank);
        for i in 0..rank {
            rows.push(m.row(i).to_vec());
        }
        if rows.is_empty() {
            Mat::zero(&self.dom, 0, self.cols)
        } else {
            Mat::from_rows(&self.dom, &rows)
        }
    }

    /// Determinant and inverse; the inverse is present iff the determinant is
    /// nonzero.
    pub fn det_inv(&self) -> (Scalar, Option<Mat>) {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let d = self.dom.clone();
        let mut m = self.clone();
        let mut aug = Mat::identity(&d, n);
        let mut det = d.one();
        for c in 0..n {
            let piv = ((c..n).find(|&i| m.get(i, c) != 0)) as Option<usize>;
            let piv = match piv {
                Some(p) => p,
                None => return (0, None),
            };
            if piv != c {
                for j in 0..n {
                    let (a, b) = (m.get(c, j), m.get(piv, j));
                    m.set(c, j, b);
                    m.set(piv, j, a);
                    let (a, b) = (aug.get(c, j), aug.get(piv, j));
                    aug.set(c, j, b);
                    aug.set(piv, j, a);
                }
                det = d.neg(det);
            }
            let p = m.get(c, c);
            det = d.mul(det, p);
            let inv = d.inv(p).unwrap();
            for j in 0..n {
                m.set(c, j, d.mul(inv, m.get(c, j)));
                aug.set(c, j, d.mul(inv, aug.get(c, j)));
            }
            for i in 0..n {
                if i != c && m.get(i, c) != 0 {
                    let f = d.neg(m.get(i, c));
                    m.row_add(i, c, f);
                    aug.row_add(i, c, f);
                }
            }
        }
        (det, Some(aug))
    }

    /// Solves A X = B for X; None if inconsistent. A need not be square.
    pub fn solve_right(a: &Mat, b: &Mat) -> Option<Mat> {
        assert_eq!(a.rows, b.rows);
        let d = a.dom.clone();
        let mut aug = Mat::zero(&d, a.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                aug.set(i, j, a.get(i, j));
            }
            for j in 0..b.cols {
                aug.set(i, a.cols + j, b.get(i, j));
            }
        }
        let (r, rank, pivots) = aug.rref();
        // Inconsistent if any pivot falls in the B block.
        if pivots.iter().any(|&c| c >= a.cols) {
            return None;
        }
        let mut x = Mat::zero(&d, a.cols, b.cols);
        for (i, &c) in pivots.iter().enumerate().take(rank) {
            for j in 0..b.cols {
                x.set(c, j, r.get(i, a.cols + j));
            }
        }
        Some(x)
    }

    /// Canonical (RREF) basis of {x : A x^T = 0}, one solution per row.
    pub fn nullspace(&self) -> Mat {
        let d = self.dom.clone();
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![0; self.cols];
            x[f] = 1;
            for (i, &p) in pivots.iter().enumerate().take(rank) {
                x[p] = d.neg(r.get(i, f));
            }
            rows.push(x);
        }
        if rows.is_empty() {
            Mat::zero(&d, 0, self.cols)
        } else {
            Mat::from_rows(&d, &rows).row_basis()
        }
    }

    /// Canonical basis of the intersection of two row spaces (Zassenhaus).
    pub fn rowspace_intersect(a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.cols, b.cols);
        assert_eq!(a.dom, b.dom);
        let d = a.dom.clone();
        let n = a.cols;
        let mut big = Mat::zero(&d, a.rows + b.rows, 2 * n);
        for i in 0..a.rows {
            for j in 0..n {
                big.set(i, j, a.get(i, j));
                big.set(i, n + j, a.get(i, j));
            }
        }
        for i in 0..b.rows {
            for j in 0..n {
                big.set(a.rows + i, j, b.get(i, j));
            }
        }
        let (r, rank, _) = big.rref();
        let mut rows = Vec::new();
        for i in 0..rank {
            if r.row(i)[..n].iter().all(|&v| v == 0) {
                rows.push(r.row(i)[n..].to_vec());
            }
        }
        if rows.is_empty() {
            Mat::zero(&d, 0, n)
        } else {
            Mat::from_rows(&d, &rows).row_basis()
        }
    }

    /// Canonical basis of the sum of two row spaces.
    pub fn rowspace_sum(a: &Mat, b: &Mat) -> Mat {
        Mat::stack(a, b).row_basis()
    }

    /// Canonical basis of {x : <w, x> = 0 for every row w}, with the standard
    /// bilinear form <x, y> = sum x_i y_i.
    pub fn orth_complement(&self) -> Mat {
        self.nullspace()
    }

    pub fn row_space_contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols);
        let ext = Mat::stack(self, &Mat::from_rows(&self.dom, &[v.to_vec()]));
        ext.rank() == self.rank()
    }

    pub fn row_space_contains_all(&self, other: &Mat) -> bool {
        Mat::stack(self, other).rank() == self.rank()
    }

    pub fn same_row_space(&self, other: &Mat) -> bool {
        self.row_basis() == other.row_basis()
    }

    pub fn random(dom: &Domain, rows: usize, cols: usize, rng: &mut Rng) -> Mat {
        let mut m = Mat::zero(dom, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, rng.below(dom.size()) as Scalar);
            }
        }
        m
    }

    /// Appends uniformly random rows until the rank reaches `target_rank`,
    /// resampling rows that fail to extend the rank (budget 64 per row). The
    /// appended rows, conditioned on success, are uniform among rank-extending
    /// tuples.
    pub fn random_full_rank_extend(
        &self,
        target_rank: usize,
        rng: &mut Rng,
    ) -> Result<Mat, AlgebraError> {
        assert!(target_rank <= self.cols);
        let mut cur = self.clone();
        let mut rank = cur.rank();
        assert!(rank <= target_rank);
        while rank < target_rank {
            let mut ok = false;
            for _ in 0..64 {
                let row: Vec<Scalar> =
                    (0..self.cols).map(|_| rng.below(self.dom.size()) as Scalar).collect();
                let ext = Mat::stack(&cur, &Mat::from_rows(&self.dom, &[row]));
                if ext.rank() == rank + 1 {
                    cur = ext;
                    rank += 1;
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Err(AlgebraError::SamplingExhausted);
            }
        }
        Ok(cur)
    }

    /// Serialization: "rows x cols @ domain : entries", entries row-major as
    /// single hex digits when they fit, dot-separated decimal otherwise.
    pub fn to_hex(&self) -> String {
        format!(
            "{}x{}@{}:{}",
            self.rows,
            self.cols,
            self.dom.id(),
            crate::field::poly_hex(&self.e)
        )
    }

    pub fn from_hex(dom: &Domain, s: &str) -> Result<Mat, AlgebraError> {
        let (header, body) = s
            .rsplit_once(':')
            .ok_or_else(|| AlgebraError::Format("missing entry block".into()))?;
        let header = header
            .strip_suffix(&format!("@{}", dom.id()))
            .ok_or_else(|| AlgebraError::Format("domain mismatch".into()))?;
        let (r, c) = header
            .split_once('x')
            .ok_or_else(|| AlgebraError::Format("missing shape".into()))?;
        let rows: usize = r.parse().map_err(|_| AlgebraError::Format("bad rows".into()))?;
        let cols: usize = c.parse().map_err(|_| AlgebraError::Format("bad cols".into()))?;
        let e = crate::field::poly_from_hex(body)?;
        if e.len() != rows * cols {
            return Err(AlgebraError::Format("entry count mismatch".into()));
        }
        if e.iter().any(|&v| v as u64 >= dom.size()) {
            return Err(AlgebraError::Format("entry out of domain".into()));
        }
        Ok(Mat { rows, cols, dom: dom.clone(), e })
    }
}

impl std::fmt::Display for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{:>4}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
