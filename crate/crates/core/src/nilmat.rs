//! Exact rational matrices for unipotent and nilpotent calculus.
//!
//! Everything is exact: entries are arbitrary-precision rationals and index
//! classification tests powers for exact vanishing.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{DynkinDiagram, Family};
use crate::error::{Error, Result};
use crate::polymer::Polymer;

/// Dense row-major matrix over ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged or empty rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    /// Nilpotent Jordan block of size `n` (ones on the superdiagonal).
    pub fn jordan_block(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 1..n {
            m.data[(i - 1) * n + i] = BigRational::one();
        }
        m
    }

    /// Direct sum of square blocks.
    pub fn block_diagonal(blocks: &[RationalMatrix]) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        if let Some(b) = blocks.iter().find(|b| !b.is_square()) {
            return Err(Error::NotSquare {
                rows: b.rows,
                cols: b.cols,
            });
        }
        let mut m = Self::zeros(n, n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.data[(offset + i) * n + offset + j] = b.data[i * b.cols + j].clone();
                }
            }
            offset += b.rows;
        }
        Ok(m)
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

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(RationalMatrix { data, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(RationalMatrix { data, ..*self })
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let data = self.data.iter().map(|a| a * factor).collect();
        RationalMatrix { data, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exponent: usize) -> Result<Self> {
        self.require_square()?;
        let mut acc = Self::identity(self.rows);
        for _ in 0..exponent {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Kronecker product: block `(i, j)` is `self[i][j] · other`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[i * self.cols + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other.data[k * other.cols + l];
                        if !b.is_zero() {
                            out.data[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.data[r * n + col].is_zero())
                .ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.data[col * n + col].clone();
            for j in 0..n {
                a.data[col * n + j] /= &p;
                inv.data[col * n + j] /= &p;
            }
            for r in 0..n {
                if r == col || a.data[r * n + col].is_zero() {
                    continue;
                }
                let f = a.data[r * n + col].clone();
                for j in 0..n {
                    let da = &a.data[col * n + j] * &f;
                    let di = &inv.data[col * n + j] * &f;
                    a.data[r * n + j] -= da;
                    inv.data[r * n + j] -= di;
                }
            }
        }
        Ok(inv)
    }

    /// Rows of `"p/q"` strings.
    pub fn to_fraction_grid(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let grid = self.to_fraction_grid();
        let width = grid.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in grid {
            let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Unipotency or nilpotency index of a square matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexResult {
    /// `(M − id)^k = 0` and `(M − id)^{k−1} ≠ 0`.
    Unipotent(usize),
    /// `M^k = 0` and `M^{k−1} ≠ 0`.
    Nilpotent(usize),
    Neither,
}

impl IndexResult {
    pub fn index(self) -> Option<usize> {
        match self {
            IndexResult::Unipotent(k) | IndexResult::Nilpotent(k) => Some(k),
            IndexResult::Neither => None,
        }
    }
}

impl fmt::Display for IndexResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexResult::Unipotent(k) => write!(f, "unipotent({k})"),
            IndexResult::Nilpotent(k) => write!(f, "nilpotent({k})"),
            IndexResult::Neither => f.write_str("neither"),
        }
    }
}

/// Integer matrix `c · M` with `c` the lcm of the denominators; `M^k = 0`
/// iff `(c·M)^k = 0`.
fn clear_denominators(m: &RationalMatrix) -> Vec<BigInt> {
    let lcm = m
        .data
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    m.data
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

fn int_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !y.is_zero() {
                    out[i * n + j] += x * y;
                }
            }
        }
    }
    out
}

/// Smallest `k ≤ n` with `M^k = 0`.
fn nilpotency_index(m: &RationalMatrix) -> Option<usize> {
    let n = m.rows;
    let base = clear_denominators(m);
    let mut power = base.clone();
    for k in 1..=n {
        if power.iter().all(Zero::is_zero) {
            return Some(k);
        }
        if k < n {
            power = int_mul(&power, &base, n);
        }
        // shrink entries to keep the powers small
        let g = power
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in &mut power {
                *x /= &g;
            }
        }
    }
    None
}

pub fn classify(m: &RationalMatrix) -> Result<IndexResult> {
    m.require_square()?;
    let shifted = m.sub(&RationalMatrix::identity(m.rows))?;
    if let Some(k) = nilpotency_index(&shifted) {
        return Ok(IndexResult::Unipotent(k));
    }
    if let Some(k) = nilpotency_index(m) {
        return Ok(IndexResult::Nilpotent(k));
    }
    Ok(IndexResult::Neither)
}

/// `log(U) = Σ_{j=1}^{k−1} (−1)^{j+1} (U − id)^j / j`.
pub fn nil_log(u: &RationalMatrix) -> Result<RationalMatrix> {
    let IndexResult::Unipotent(k) = classify(u)? else {
        return Err(Error::NotUnipotent);
    };
    let n = u.rows;
    let x = u.sub(&RationalMatrix::identity(n))?;
    let mut power = x.clone();
    let mut acc = RationalMatrix::zeros(n, n);
    for j in 1..k {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let coeff = BigRational::new(BigInt::from(sign), BigInt::from(j));
        acc = acc.add(&power.scale(&coeff))?;
        power = power.mul(&x)?;
    }
    Ok(acc)
}

/// `exp(N) = Σ_{j=0}^{k−1} N^j / j!`.
pub fn uni_exp(nil: &RationalMatrix) -> Result<RationalMatrix> {
    let IndexResult::Nilpotent(k) = classify(nil)? else {
        return Err(Error::NotNilpotent);
    };
    let n = nil.rows;
    let mut acc = RationalMatrix::identity(n);
    let mut power = RationalMatrix::identity(n);
    let mut factorial = BigInt::one();
    for j in 1..k {
        power = power.mul(nil)?;
        factorial *= BigInt::from(j);
        let coeff = BigRational::new(BigInt::one(), factorial.clone());
        acc = acc.add(&power.scale(&coeff))?;
    }
    Ok(acc)
}

/// Indices of `N1`, `N2` and the classification of `exp(N1) ⊗ exp(N2)`.
pub fn tensor_index(
    n1: &RationalMatrix,
    n2: &RationalMatrix,
) -> Result<(usize, usize, IndexResult)> {
    let i1 = match classify(n1)? {
        IndexResult::Nilpotent(k) => k,
        _ => return Err(Error::NotNilpotent),
    };
    let i2 = match classify(n2)? {
        IndexResult::Nilpotent(k) => k,
        _ => return Err(Error::NotNilpotent),
    };
    let product = uni_exp(n1)?.kronecker(&uni_exp(n2)?);
    Ok((i1, i2, classify(&product)?))
}

/// `exp(N1) ⊗ exp(N2)` is unipotent of index `n1 + n2 − 1`.
pub fn key_lemma_check(n1: &RationalMatrix, n2: &RationalMatrix) -> Result<bool> {
    let (i1, i2, result) = tensor_index(n1, n2)?;
    Ok(result == IndexResult::Unipotent(i1 + i2 - 1))
}

/// Split-case image of a root unipotent supported on `support` in the
/// representation of an all-`A1` polymer: block-diagonal over parts of
/// `⊗_{s∈T} M_s`, with `M_s = [[1,1],[0,1]]` on supported components and
/// `id₂` elsewhere.
pub fn split_polymer_witness(
    polymer: &Polymer,
    diagram: &DynkinDiagram,
    support: &BTreeSet<usize>,
) -> Result<(RationalMatrix, IndexResult)> {
    if let Some(c) = (0..diagram.len()).find(|&c| {
        let comp = diagram.component(c);
        comp.family != Family::A || comp.rank != 1
    }) {
        return Err(Error::NonA1Component(c));
    }
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    polymer.check_vertices(diagram)?;
    let root = RationalMatrix::from_integers(&[vec![1, 1], vec![0, 1]])?;
    let id2 = RationalMatrix::identity(2);
    let blocks: Vec<RationalMatrix> = polymer
        .parts()
        .iter()
        .map(|part| {
            part.iter().fold(RationalMatrix::identity(1), |acc, v| {
                let factor = if support.contains(&v.component) {
                    &root
                } else {
                    &id2
                };
                acc.kronecker(factor)
            })
        })
        .collect();
    let m = RationalMatrix::block_diagonal(&blocks)?;
    let index = classify(&m)?;
    Ok((m, index))
}

/// Seeded generators of exactly controlled nilpotents.
pub mod random {
    use super::*;

    /// Direct sum of nilpotent Jordan blocks.
    pub fn jordan_nilpotent(blocks: &[usize]) -> RationalMatrix {
        let bs: Vec<RationalMatrix> = blocks.iter().map(|&b| RationalMatrix::jordan_block(b)).collect();
        RationalMatrix::block_diagonal(&bs).expect("blocks are square")
    }

    /// Random integer matrix of determinant 1 together with its inverse.
    pub fn unimodular<R: Rng>(n: usize, rng: &mut R) -> (RationalMatrix, RationalMatrix) {
        let mut p = RationalMatrix::identity(n);
        let mut q = RationalMatrix::identity(n);
        if n < 2 {
            return (p, q);
        }
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = BigRational::from_integer(BigInt::from(
                [-2i64, -1, 1, 2][rng.gen_range(0..4)],
            ));
            // p ← p · E_ij(c): column j += c · column i
            for r in 0..n {
                let add = p.get(r, i) * &c;
                let cur = p.get(r, j) + add;
                p.set(r, j, cur);
            }
            // q ← E_ij(−c) · q: row i −= c · row j
            for col in 0..n {
                let sub = q.get(j, col) * &c;
                let cur = q.get(i, col) - sub;
                q.set(i, col, cur);
            }
        }
        (p, q)
    }

    /// Random block sizes summing to `dim` with largest block exactly `index`.
    pub fn jordan_type<R: Rng>(dim: usize, index: usize, rng: &mut R) -> Vec<usize> {
        assert!(index >= 1 && index <= dim);
        let mut blocks = vec![index];
        let mut left = dim - index;
        while left > 0 {
            let b = rng.gen_range(1..=left.min(index));
            blocks.push(b);
            left -= b;
        }
        blocks
    }

    /// `P · J · P⁻¹` for a Jordan nilpotent `J` of the given index.
    pub fn nilpotent<R: Rng>(dim: usize, index: usize, rng: &mut R) -> RationalMatrix {
        let j = jordan_nilpotent(&jordan_type(dim, index, rng));
        let (p, q) = unimodular(dim, rng);
        p.mul(&j).and_then(|pj| pj.mul(&q)).expect("square sizes agree")
    }

    /// A small random rational in `[-3, 3]` with denominator ≤ 3.
    pub fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1i64..=3);
        BigRational::new(num.into(), den.into())
    }

    /// Conjugates a Jordan nilpotent and rescales its blocks by nonzero
    /// rationals; the index is unchanged.
    pub fn rational_nilpotent<R: Rng>(dim: usize, index: usize, rng: &mut R) -> RationalMatrix {
        let mut j = jordan_nilpotent(&jordan_type(dim, index, rng));
        for i in 1..dim {
            if !j.get(i - 1, i).is_zero() {
                let mut c = small_rational(rng);
                while c.is_zero() {
                    c = small_rational(rng);
                }
                j.set(i - 1, i, c);
            }
        }
        let (p, q) = unimodular(dim, rng);
        p.mul(&j).and_then(|pj| pj.mul(&q)).expect("square sizes agree")
    }

    pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        rng
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyLemmaFailure {
    pub trial: u64,
    pub n1: usize,
    pub n2: usize,
    pub observed: IndexResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyLemmaSummary {
    pub trials: u64,
    pub seed: u64,
    pub passed: u64,
    pub failures: Vec<KeyLemmaFailure>,
}

/// Randomized key-lemma trials: indices in `1..=6`, dimensions up to 6,
/// dense conjugated nilpotents. Trial `t` draws from stream `t` of the seed.
pub fn run_key_lemma_trials(trials: u64, seed: u64) -> Result<KeyLemmaSummary> {
    let mut passed = 0;
    let mut failures = Vec::new();
    for t in 0..trials {
        let mut rng = random::trial_rng(seed, t);
        let draw = |rng: &mut ChaCha8Rng| {
            let index = rng.gen_range(1..=6usize);
            let dim = rng.gen_range(index..=(index + 2).min(6).max(index));
            random::rational_nilpotent(dim, index, rng)
        };
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        let (n1, n2, observed) = tensor_index(&a, &b)?;
        if observed == IndexResult::Unipotent(n1 + n2 - 1) {
            passed += 1;
        } else {
            failures.push(KeyLemmaFailure {
                trial: t,
                n1,
                n2,
                observed,
            });
        }
    }
    Ok(KeyLemmaSummary {
        trials,
        seed,
        passed,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::VertexRef;
    use crate::polymer::Part;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_integers(rows).unwrap()
    }

    #[test]
    fn classify_basics() {
        for n in 1..5 {
            assert_eq!(
                classify(&RationalMatrix::identity(n)).unwrap(),
                IndexResult::Unipotent(1)
            );
        }
        assert_eq!(
            classify(&m(&[vec![1, 1], vec![0, 1]])).unwrap(),
            IndexResult::Unipotent(2)
        );
        assert_eq!(
            classify(&RationalMatrix::jordan_block(5)).unwrap(),
            IndexResult::Nilpotent(5)
        );
        assert_eq!(
            classify(&m(&[vec![2, 0], vec![0, 1]])).unwrap(),
            IndexResult::Neither
        );
        assert!(matches!(
            classify(&RationalMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn log_examples() {
        let id = RationalMatrix::identity(3);
        assert!(nil_log(&id).unwrap().is_zero());
        assert_eq!(
            nil_log(&m(&[vec![1, 1], vec![0, 1]])).unwrap(),
            m(&[vec![0, 1], vec![0, 0]])
        );
        let j4 = RationalMatrix::jordan_block(4);
        assert_eq!(nil_log(&uni_exp(&j4).unwrap()).unwrap(), j4);
        assert!(matches!(
            nil_log(&m(&[vec![2, 0], vec![0, 1]])),
            Err(Error::NotUnipotent)
        ));
    }

    #[test]
    fn exp_examples() {
        assert!(uni_exp(&RationalMatrix::zeros(2, 2)).unwrap().is_identity());
        assert_eq!(
            uni_exp(&m(&[vec![0, 1], vec![0, 0]])).unwrap(),
            m(&[vec![1, 1], vec![0, 1]])
        );
        let expected = RationalMatrix::from_rows(vec![
            vec![q(1, 1), q(1, 1), q(1, 2)],
            vec![q(0, 1), q(1, 1), q(1, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1)],
        ])
        .unwrap();
        assert_eq!(uni_exp(&RationalMatrix::jordan_block(3)).unwrap(), expected);
        assert!(matches!(
            uni_exp(&RationalMatrix::identity(2)),
            Err(Error::NotNilpotent)
        ));
    }

    #[test]
    fn kronecker_examples() {
        let k = RationalMatrix::identity(2).kronecker(&RationalMatrix::identity(3));
        assert!(k.is_identity());
        assert_eq!(k.rows(), 6);
        let u = m(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(classify(&u.kronecker(&u)).unwrap(), IndexResult::Unipotent(3));
        let e3 = uni_exp(&RationalMatrix::jordan_block(3)).unwrap();
        let e4 = uni_exp(&RationalMatrix::jordan_block(4)).unwrap();
        let p = e3.kronecker(&e4);
        assert_eq!((p.rows(), p.cols()), (12, 12));
        assert_eq!(classify(&p).unwrap(), IndexResult::Unipotent(6));
    }

    #[test]
    fn kronecker_layout() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        let b = m(&[vec![0, 5], vec![6, 7]]);
        let expected = m(&[
            vec![0, 5, 0, 10],
            vec![6, 7, 12, 14],
            vec![0, 15, 0, 20],
            vec![18, 21, 24, 28],
        ]);
        assert_eq!(a.kronecker(&b), expected);
    }

    #[test]
    fn key_lemma_examples() {
        let n2 = m(&[vec![0, 1], vec![0, 0]]);
        assert!(key_lemma_check(&n2, &n2).unwrap());
        let z = RationalMatrix::zeros(3, 3);
        assert!(key_lemma_check(&z, &RationalMatrix::jordan_block(4)).unwrap());
        let mut rng = random::trial_rng(7, 0);
        let a = random::nilpotent(5, 4, &mut rng);
        let b = random::nilpotent(6, 5, &mut rng);
        let (i1, i2, r) = tensor_index(&a, &b).unwrap();
        assert_eq!((i1, i2), (4, 5));
        assert_eq!(r, IndexResult::Unipotent(8));
    }

    #[test]
    fn inverse_and_unimodular() {
        let mut rng = random::trial_rng(1, 3);
        let (p, q) = random::unimodular(5, &mut rng);
        assert!(p.mul(&q).unwrap().is_identity());
        assert_eq!(p.inverse().unwrap(), q);
        assert!(matches!(
            m(&[vec![1, 2], vec![2, 4]]).inverse(),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn random_nilpotent_has_requested_index() {
        let mut rng = random::trial_rng(11, 0);
        for index in 1..=6 {
            let n = random::rational_nilpotent(8, index, &mut rng);
            assert_eq!(classify(&n).unwrap(), IndexResult::Nilpotent(index));
        }
    }

    fn part(cs: &[usize]) -> Part {
        cs.iter().map(|&c| VertexRef::new(c, 1)).collect()
    }

    #[test]
    fn split_witness_examples() {
        let d1 = DynkinDiagram::all_a1(1);
        let s = Polymer::new([part(&[0])]).unwrap();
        let (w, idx) = split_polymer_witness(&s, &d1, &[0].into()).unwrap();
        assert_eq!(w, m(&[vec![1, 1], vec![0, 1]]));
        assert_eq!(idx, IndexResult::Unipotent(2));

        let d2 = DynkinDiagram::all_a1(2);
        let s = Polymer::new([part(&[0, 1])]).unwrap();
        let (_, idx) = split_polymer_witness(&s, &d2, &[0].into()).unwrap();
        assert_eq!(idx, IndexResult::Unipotent(2));

        let d8 = DynkinDiagram::all_a1(8);
        let s = Polymer::new((0..8).map(|s| part(&[s, (s + 1) % 8, (s + 2) % 8, (s + 3) % 8])))
            .unwrap();
        let (w, idx) = split_polymer_witness(&s, &d8, &(0..8).collect()).unwrap();
        assert_eq!(w.rows(), 128);
        assert_eq!(idx, IndexResult::Unipotent(5));
    }

    #[test]
    fn split_witness_errors() {
        let d = DynkinDiagram::uniform(Family::B, 2, 1).unwrap();
        let s = Polymer::new([[VertexRef::new(0, 2)].into_iter().collect()]).unwrap();
        assert!(matches!(
            split_polymer_witness(&s, &d, &[0].into()),
            Err(Error::NonA1Component(0))
        ));
        let d = DynkinDiagram::all_a1(1);
        let s = Polymer::new([part(&[0])]).unwrap();
        assert!(matches!(
            split_polymer_witness(&s, &d, &BTreeSet::new()),
            Err(Error::EmptySupport)
        ));
    }

    #[test]
    fn key_lemma_trials_small() {
        let s = run_key_lemma_trials(20, 42).unwrap();
        assert_eq!(s.passed, 20);
        assert!(s.failures.is_empty());
        assert_eq!(run_key_lemma_trials(20, 42).unwrap(), s);
    }

    #[test]
    fn display_grid() {
        let u = uni_exp(&RationalMatrix::jordan_block(3)).unwrap();
        let s = u.to_string();
        assert!(s.contains("1/2"));
        assert_eq!(s.lines().count(), 3);
    }
}
