//! Exact Smith normal form over the integers.
//!
//! [`smith_normal_form`] always returns a certificate `(U, D, V)` with
//! `U * M * V = D`, built only from row/column swaps, negations and
//! additions of integer multiples. [`divisors_via_minors`] computes the
//! same divisors by the determinantal-divisor formula and is kept
//! independent of the elimination code so the two can check each other.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix file: {0}")]
    Parse(String),
    #[error("expected {expected} entries for a {rows}x{cols} matrix, found {found}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },
    #[error("minor oracle supports min(rows, cols) <= {limit}, got {rows}x{cols}")]
    OracleLimit {
        rows: usize,
        cols: usize,
        limit: usize,
    },
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// From nested rows. Panics if rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    /// Panics on non-square input.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    /// Parses the matrix file format: `rows cols` followed by row-major
    /// integers, all whitespace separated.
    pub fn parse(text: &str) -> Result<Self, MatrixError> {
        let mut tokens = text.split_whitespace();
        let mut dim = |what: &str| -> Result<usize, MatrixError> {
            let t = tokens
                .next()
                .ok_or_else(|| MatrixError::Parse(format!("missing {what}")))?;
            t.parse()
                .map_err(|_| MatrixError::Parse(format!("invalid {what} `{t}`")))
        };
        let rows = dim("row count")?;
        let cols = dim("column count")?;
        let data = tokens
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| MatrixError::Parse(format!("invalid integer `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_vec(rows, cols, data)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = -v;
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        debug_assert_ne!(dst, src);
        for j in 0..self.cols {
            let delta = k * &self[(src, j)];
            self[(dst, j)] += delta;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        debug_assert_ne!(dst, src);
        for i in 0..self.rows {
            let delta = k * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfCertificate {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub divisors: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("U*M*V != D")]
    ProductMismatch,
    #[error("{0} is not unimodular")]
    NotUnimodular(&'static str),
    #[error("D is not diagonal with the reported divisors")]
    NotDiagonal,
    #[error("divisor chain is not positive and dividing")]
    BadChain,
    #[error("certificate dimensions do not match the input")]
    Dimensions,
}

impl SnfCertificate {
    /// Re-checks every certificate law against `m`.
    pub fn verify(&self, m: &IntMatrix) -> Result<(), CertificateError> {
        let (r, c) = (m.rows(), m.cols());
        if self.u.rows() != r || self.u.cols() != r || self.v.rows() != c || self.v.cols() != c {
            return Err(CertificateError::Dimensions);
        }
        if self.d.rows() != r || self.d.cols() != c {
            return Err(CertificateError::Dimensions);
        }
        if &(&self.u * m) * &self.v != self.d {
            return Err(CertificateError::ProductMismatch);
        }
        if !self.u.is_unimodular() {
            return Err(CertificateError::NotUnimodular("U"));
        }
        if !self.v.is_unimodular() {
            return Err(CertificateError::NotUnimodular("V"));
        }
        if !is_divisor_chain(&self.divisors) {
            return Err(CertificateError::BadChain);
        }
        for i in 0..r {
            for j in 0..c {
                let expected = if i == j && i < self.divisors.len() {
                    self.divisors[i].clone()
                } else {
                    BigInt::zero()
                };
                if self.d[(i, j)] != expected {
                    return Err(CertificateError::NotDiagonal);
                }
            }
        }
        Ok(())
    }
}

/// Positive entries, each dividing the next.
pub fn is_divisor_chain(d: &[BigInt]) -> bool {
    d.iter().all(Signed::is_positive) && d.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        self.u.swap_rows(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        self.v.swap_cols(j, k);
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
    }

    /// Smallest nonzero |entry| in the trailing block from (t, t), ties
    /// broken by (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.a[b].magnitude() <= x.magnitude() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Clears row t and column t outside the diagonal; leaves a[(t, t)]
    /// dividing every entry of the trailing block.
    fn reduce_at(&mut self, t: usize) -> bool {
        let Some((pi, pj)) = self.pivot(t) else {
            return false;
        };
        self.swap_rows(t, pi);
        self.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..self.a.rows() {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                let q = &self.a[(i, t)] / &self.a[(t, t)];
                self.add_row(i, t, &-q);
                if !self.a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..self.a.cols() {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                let q = &self.a[(t, j)] / &self.a[(t, t)];
                self.add_col(j, t, &-q);
                if !self.a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder smaller than the pivot is left somewhere in
                // row or column t; move the smallest entry of that cross to
                // the pivot position and repeat.
                self.bring_smallest_to_pivot(t);
                continue;
            }
            // Row and column are clear. Enforce divisibility of the block.
            let p = self.a[(t, t)].clone();
            let bad = (t + 1..self.a.rows())
                .flat_map(|i| (t + 1..self.a.cols()).map(move |j| (i, j)))
                .find(|&(i, j)| !self.a[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    self.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if self.a[(t, t)].is_negative() {
            self.negate_row(t);
        }
        true
    }

    fn bring_smallest_to_pivot(&mut self, t: usize) {
        let mut best = (t, t);
        let cross = (t + 1..self.a.rows())
            .map(|i| (i, t))
            .chain((t + 1..self.a.cols()).map(|j| (t, j)));
        for pos in cross {
            let x = &self.a[pos];
            if !x.is_zero() && x.magnitude() < self.a[best].magnitude() {
                best = pos;
            }
        }
        let (i, j) = best;
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }
}

/// Smith normal form with unimodular certificate. Total on every input,
/// including empty dimensions.
pub fn smith_normal_form(m: &IntMatrix) -> SnfCertificate {
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
    };
    let mut divisors = Vec::new();
    for t in 0..m.rows().min(m.cols()) {
        if !r.reduce_at(t) {
            break;
        }
        divisors.push(r.a[(t, t)].clone());
    }
    SnfCertificate {
        u: r.u,
        d: r.a,
        v: r.v,
        divisors,
    }
}

/// Elementary divisors, positive and forming a dividing chain.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m).divisors
}

pub const MINOR_ORACLE_LIMIT: usize = 6;

/// Determinantal-divisor oracle: `d_k = g_k / g_{k-1}` where `g_k` is the
/// gcd of all k-by-k minors, stopping at the first `g_k = 0`.
pub fn divisors_via_minors(m: &IntMatrix) -> Result<Vec<BigInt>, MatrixError> {
    let kmax = m.rows().min(m.cols());
    if kmax > MINOR_ORACLE_LIMIT {
        return Err(MatrixError::OracleLimit {
            rows: m.rows(),
            cols: m.cols(),
            limit: MINOR_ORACLE_LIMIT,
        });
    }
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=kmax {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let minor = IntMatrix::from_rows(
                    &rs.iter()
                        .map(|&i| cs.iter().map(|&j| m[(i, j)].clone()).collect())
                        .collect::<Vec<Vec<_>>>(),
                );
                g = g.gcd(&minor.determinant());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The neighborhood-homotopy invariant: either zero or a divisor chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LkInvariant {
    Zero,
    Chain(Vec<BigInt>),
}

impl LkInvariant {
    /// `Zero` for an empty list. Does not check the chain property.
    pub fn from_divisors(divisors: Vec<BigInt>) -> Self {
        if divisors.is_empty() {
            LkInvariant::Zero
        } else {
            LkInvariant::Chain(divisors)
        }
    }

    pub fn divisors(&self) -> &[BigInt] {
        match self {
            LkInvariant::Zero => &[],
            LkInvariant::Chain(d) => d,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, LkInvariant::Zero)
    }
}

impl fmt::Display for LkInvariant {
    /// `0`, or the divisors separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LkInvariant::Zero => f.write_str("0"),
            LkInvariant::Chain(d) => {
                let parts: Vec<String> = d.iter().map(BigInt::to_string).collect();
                f.write_str(&parts.join(" "))
            }
        }
    }
}

pub fn lk_invariant(m: &IntMatrix) -> LkInvariant {
    LkInvariant::from_divisors(elementary_divisors(m))
}

/// Product of `ops` random elementary matrices (swap, negate, or add
/// `k` times one row to another with `k` in [-3, 3]). Reproducible from
/// `seed`.
pub fn random_unimodular(n: usize, seed: u64, ops: usize) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = IntMatrix::identity(n);
    if n == 0 {
        return m;
    }
    for _ in 0..ops {
        let kind = if n == 1 { 1 } else { rng.random_range(0..3u8) };
        match kind {
            0 => {
                let a = rng.random_range(0..n);
                let b = (a + rng.random_range(1..n)) % n;
                m.swap_rows(a, b);
            }
            1 => {
                let a = rng.random_range(0..n);
                m.negate_row(a);
            }
            _ => {
                let a = rng.random_range(0..n);
                let b = (a + rng.random_range(1..n)) % n;
                let k = BigInt::from(rng.random_range(-3i64..=3));
                m.add_row_multiple(a, b, &k);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn zero_one_by_one() {
        let z = m(&[vec![0]]);
        let c = smith_normal_form(&z);
        assert_eq!(c.d, z);
        assert!(c.divisors.is_empty());
        c.verify(&z).unwrap();
    }

    #[test]
    fn small_examples() {
        for (rows, want) in [
            (vec![vec![2, 0], vec![0, 3]], vec![1, 6]),
            (vec![vec![4, 2], vec![2, 4]], vec![2, 6]),
            (vec![vec![7]], vec![7]),
            (vec![vec![-5]], vec![5]),
        ] {
            let a = m(&rows);
            let c = smith_normal_form(&a);
            c.verify(&a).unwrap();
            assert_eq!(c.divisors, big(&want), "{rows:?}");
            assert_eq!(divisors_via_minors(&a).unwrap(), big(&want));
        }
    }

    #[test]
    fn degenerate_dimensions() {
        let a = IntMatrix::zeros(0, 3);
        let c = smith_normal_form(&a);
        assert!(c.divisors.is_empty());
        assert_eq!(c.u, IntMatrix::identity(0));
        assert_eq!(c.v, IntMatrix::identity(3));
        c.verify(&a).unwrap();
        assert_eq!(lk_invariant(&IntMatrix::zeros(2, 3)), LkInvariant::Zero);
        assert_eq!(lk_invariant(&IntMatrix::zeros(3, 0)), LkInvariant::Zero);
    }

    #[test]
    fn minor_oracle_basics() {
        assert_eq!(
            divisors_via_minors(&IntMatrix::identity(3)).unwrap(),
            big(&[1, 1, 1])
        );
        assert!(divisors_via_minors(&IntMatrix::zeros(2, 2))
            .unwrap()
            .is_empty());
        assert!(matches!(
            divisors_via_minors(&IntMatrix::identity(7)),
            Err(MatrixError::OracleLimit { .. })
        ));
        // 7x3 is fine: only min dimension matters.
        assert_eq!(
            divisors_via_minors(&IntMatrix::zeros(7, 3)).unwrap(),
            vec![]
        );
    }

    #[test]
    fn lk_values() {
        assert_eq!(lk_invariant(&m(&[vec![1]])), LkInvariant::Chain(big(&[1])));
        let inv = lk_invariant(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(inv, LkInvariant::Chain(big(&[1, 6])));
        assert_eq!(inv.to_string(), "1 6");
        assert_eq!(LkInvariant::Zero.to_string(), "0");
    }

    #[test]
    fn determinant_known_values() {
        assert_eq!(m(&[vec![1, 2], vec![3, 4]]).determinant(), BigInt::from(-2));
        assert_eq!(
            m(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).determinant(),
            BigInt::from(-1)
        );
        assert_eq!(
            m(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]).determinant(),
            BigInt::from(0)
        );
        assert_eq!(IntMatrix::identity(0).determinant(), BigInt::one());
    }

    #[test]
    fn random_unimodular_contract() {
        assert_eq!(random_unimodular(4, 9, 0), IntMatrix::identity(4));
        for seed in 0..20 {
            let u = random_unimodular(5, seed, 30);
            assert!(u.is_unimodular());
            assert_eq!(u, random_unimodular(5, seed, 30));
        }
        assert_eq!(random_unimodular(0, 1, 10), IntMatrix::identity(0));
        assert!(random_unimodular(1, 1, 10).is_unimodular());
    }

    #[test]
    fn large_entries_keep_certificate() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let rows: Vec<Vec<i64>> = (0..6)
            .map(|_| {
                (0..6)
                    .map(|_| rng.random_range(-1_000_000..=1_000_000))
                    .collect()
            })
            .collect();
        let a = m(&rows);
        let c = smith_normal_form(&a);
        c.verify(&a).unwrap();
        assert_eq!(c.divisors, divisors_via_minors(&a).unwrap());
    }

    #[test]
    fn matrix_file_format() {
        let a = IntMatrix::parse("2 2\n2 0\n0 3\n").unwrap();
        assert_eq!(a, m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(IntMatrix::parse(&a.to_string()).unwrap(), a);
        assert!(matches!(
            IntMatrix::parse("2 2 1 2 3"),
            Err(MatrixError::EntryCount { .. })
        ));
        assert!(matches!(
            IntMatrix::parse("2 x"),
            Err(MatrixError::Parse(_))
        ));
        assert_eq!(IntMatrix::parse("0 4").unwrap(), IntMatrix::zeros(0, 4));
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (0usize..=5, 0usize..=5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-20i64..=20, r * c).prop_map(move |v| {
                IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn certificate_law(a in arb_matrix()) {
            let c = smith_normal_form(&a);
            prop_assert_eq!(c.verify(&a), Ok(()));
            prop_assert_eq!(c.divisors, divisors_via_minors(&a).unwrap());
        }

        #[test]
        fn transpose_and_unimodular_invariance(a in arb_matrix(), s1 in any::<u64>(), s2 in any::<u64>()) {
            let d = elementary_divisors(&a);
            prop_assert_eq!(&elementary_divisors(&a.transpose()), &d);
            let left = random_unimodular(a.rows(), s1, 12);
            let right = random_unimodular(a.cols(), s2, 12);
            prop_assert_eq!(&elementary_divisors(&(&(&left * &a) * &right)), &d);
        }
    }
}
