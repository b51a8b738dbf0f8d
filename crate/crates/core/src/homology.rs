//! Integer linear algebra for surgery presentations: Smith normal form,
//! first homology of framed-link surgeries and plumbings, and Hantzsche's
//! `G ⊕ G` test.

use std::fmt;
use std::io::BufRead;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rational::{ConnectedSum, NegCF};

/// A square integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(invalid(format!(
                "matrix is not square: row of length {} in {n}x{n}",
                bad.len()
            )));
        }
        Ok(IntMatrix {
            n,
            entries: rows.iter().flatten().cloned().map(Into::into).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Fraction-free (Bareiss) elimination.
    /// Determinant by unimodular row reduction. Each column is cleared
    /// Euclid-style below the diagonal; rows that are already zero in that
    /// column are left alone, so banded matrices stay cheap.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        let mut a = self.clone();
        let mut negate = false;
        for k in 0..n {
            loop {
                let pivot = (k..n)
                    .filter(|&i| !a[(i, k)].is_zero())
                    .min_by(|&x, &y| a[(x, k)].magnitude().cmp(a[(y, k)].magnitude()));
                let Some(pivot) = pivot else {
                    return BigInt::zero();
                };
                if pivot != k {
                    a.swap_rows(k, pivot);
                    negate = !negate;
                }
                let mut cleared = true;
                for i in k + 1..n {
                    if a[(i, k)].is_zero() {
                        continue;
                    }
                    let q = a[(i, k)].div_floor(&a[(k, k)]);
                    a.add_row(i, k, &-q);
                    cleared &= a[(i, k)].is_zero();
                }
                if cleared {
                    break;
                }
            }
        }
        let det = (0..n).fold(BigInt::one(), |acc, i| acc * &a[(i, i)]);
        if negate {
            -det
        } else {
            det
        }
    }

    /// Parses `n` followed by `n` rows of `n` whitespace-separated integers.
    pub fn read_from<R: BufRead>(reader: R) -> Result<Self> {
        let mut tokens = Vec::new();
        for line in reader.lines() {
            let line = line.map_err(|e| invalid(format!("reading matrix: {e}")))?;
            tokens.push(line);
        }
        let mut lines = tokens.iter().map(|l| l.trim()).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| invalid("empty matrix input"))?;
        let n: usize = header
            .parse()
            .map_err(|_| invalid(format!("matrix header {header:?} is not a dimension")))?;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| invalid(format!("matrix has {i} rows, expected {n}")))?;
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<BigInt>()
                        .map_err(|_| invalid(format!("bad matrix entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(invalid(format!(
                    "matrix row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            rows.push(row);
        }
        if let Some(extra) = lines.next() {
            return Err(invalid(format!("trailing matrix input {extra:?}")));
        }
        IntMatrix::from_rows(&rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.n {
            self.entries.swap(i * self.n + a, i * self.n + b);
        }
    }

    /// row[dst] += factor · row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.n {
            if self[(src, j)].is_zero() {
                continue;
            }
            let v = factor * &self[(src, j)];
            self.entries[dst * self.n + j] += v;
        }
    }

    /// col[dst] += factor · col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.n {
            if self[(i, src)].is_zero() {
                continue;
            }
            let v = factor * &self[(i, src)];
            self.entries[i * self.n + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.n {
            let v = -std::mem::take(&mut self.entries[r * self.n + j]);
            self.entries[r * self.n + j] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.n + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `dᵢ | dᵢ₊₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.dim()).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Re-multiplies and checks every part of the contract.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let diag = self.diagonal();
        self.u.mul(m).mul(&self.v) == self.d
            && self.d.is_diagonal()
            && self.u.determinant().abs().is_one()
            && self.v.determinant().abs().is_one()
            && diag.iter().all(|d| !d.is_negative())
            && diag.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    (&w[1] % &w[0]).is_zero()
                }
            })
    }
}

/// Position of the nonzero entry of least absolute value in the trailing
/// block starting at `t`; ties go to the first in row-major order.
fn smallest_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.n {
        for j in t..a.n {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let n = m.n;
    let mut a = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);

    for t in 0..n {
        let Some((pi, pj)) = smallest_pivot(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..n {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &q);
                v.add_col(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                // a remainder is now smaller than the pivot; move it in
                let (pi, pj) = smallest_in_cross(&a, t);
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // row and column are clear; enforce divisibility of the rest
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[(i, j)] % &pivot).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, d: a, v }
}

/// Smallest nonzero entry in row `t` or column `t` of the trailing block.
fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let cells = (t..a.n).map(|i| (i, t)).chain((t + 1..a.n).map(|j| (t, j)));
    cells
        .filter(|&c| !a[c].is_zero())
        .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()))
        .expect("a nonzero remainder exists")
}

/// A finitely generated abelian group `Z^r ⊕ Z/d₁ ⊕ ⋯ ⊕ Z/d_k` with
/// `d₁ | d₂ | ⋯` and every `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianGroup {
    #[serde(with = "string_int")]
    pub free_rank: usize,
    #[serde(with = "string_ints")]
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds the group from arbitrary cyclic orders (`0` meaning `Z`),
    /// renormalised to invariant factors.
    pub fn from_cyclic<T: Into<BigInt>>(orders: impl IntoIterator<Item = T>) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().map(Into::into).collect();
        let mut diag = IntMatrix::zeros(orders.len());
        for (i, o) in orders.into_iter().enumerate() {
            diag[(i, i)] = o;
        }
        cokernel(&diag)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

mod string_int {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

mod string_ints {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

fn cokernel(m: &IntMatrix) -> AbelianGroup {
    let diag = smith_normal_form(m).diagonal();
    AbelianGroup {
        free_rank: diag.iter().filter(|d| d.is_zero()).count(),
        invariant_factors: diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
    }
}

/// First homology of the 3-manifold obtained by surgery on a framed link with
/// linking matrix `m`: the cokernel of `m`.
pub fn h1_of_surgery(m: &IntMatrix) -> Result<AbelianGroup> {
    if !m.is_symmetric() {
        return Err(invalid("linking matrix must be symmetric"));
    }
    Ok(cokernel(m))
}

pub fn is_homology_sphere(m: &IntMatrix) -> Result<bool> {
    if !m.is_symmetric() {
        return Err(invalid("linking matrix must be symmetric"));
    }
    Ok(m.determinant().abs().is_one())
}

/// Linear plumbing: tridiagonal with the coefficients on the diagonal.
pub fn chain_linking_matrix(cf: &NegCF) -> IntMatrix {
    let c = cf.coeffs();
    let mut m = IntMatrix::zeros(c.len());
    for (i, &a) in c.iter().enumerate() {
        m[(i, i)] = a.into();
        if i + 1 < c.len() {
            m[(i, i + 1)] = BigInt::one();
            m[(i + 1, i)] = BigInt::one();
        }
    }
    m
}

/// Star-shaped plumbing: a central vertex of framing `e0` joined to the first
/// vertex of every leg's chain.
pub fn star_linking_matrix(e0: i64, legs: &[NegCF]) -> Result<IntMatrix> {
    if legs.is_empty() {
        return Err(invalid("star plumbing needs at least one leg"));
    }
    let n = 1 + legs.iter().map(NegCF::len).sum::<usize>();
    let mut m = IntMatrix::zeros(n);
    m[(0, 0)] = e0.into();
    let mut offset = 1;
    for leg in legs {
        let chain = chain_linking_matrix(leg);
        for i in 0..leg.len() {
            for j in 0..leg.len() {
                m[(offset + i, offset + j)] = chain[(i, j)].clone();
            }
        }
        m[(0, offset)] = BigInt::one();
        m[(offset, 0)] = BigInt::one();
        offset += leg.len();
    }
    Ok(m)
}

/// The `E8` plumbing: centre `-2` with legs of lengths 1, 2 and 4.
pub fn e8_matrix() -> IntMatrix {
    let leg = |k: usize| NegCF::new(vec![-2; k]).expect("valid");
    star_linking_matrix(-2, &[leg(1), leg(2), leg(4)]).expect("non-empty legs")
}

/// `Some(G)` when the torsion group is `G ⊕ G`.
pub fn hantzsche_double_test(g: &AbelianGroup) -> Result<Option<AbelianGroup>> {
    if g.free_rank > 0 {
        return Err(invalid(
            "Hantzsche test applies to torsion groups; strip the free part first",
        ));
    }
    let f = &g.invariant_factors;
    if !f.len().is_multiple_of(2) || f.chunks(2).any(|w| w[0] != w[1]) {
        return Ok(None);
    }
    Ok(Some(AbelianGroup {
        free_rank: 0,
        invariant_factors: f.iter().step_by(2).cloned().collect(),
    }))
}

/// `H₁(#L(pᵢ,qᵢ)) = ⊕ Z/pᵢ` in invariant-factor form.
pub fn h1_of_lens_sum(sum: &ConnectedSum) -> AbelianGroup {
    AbelianGroup::from_cyclic(sum.summands().iter().map(|l| l.p()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::LensSpace;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn snf_examples() {
        let id = IntMatrix::identity(3);
        let snf = smith_normal_form(&id);
        assert_eq!(snf.u, id);
        assert_eq!(snf.d, id);
        assert_eq!(snf.v, id);

        let m = mat(&[&[0, 1], &[1, -5]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal(), ints(&[1, 1]));
        assert!(snf.verify(&m));

        let m = mat(&[&[3, 0], &[0, 12]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal(), ints(&[3, 12]));
        assert!(snf.verify(&m));
    }

    #[test]
    fn snf_needs_divisibility_fix() {
        let m = mat(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal(), ints(&[1, 6]));
        assert!(snf.verify(&m));

        let m = mat(&[&[0, 0, 0], &[0, 4, 6], &[0, 6, 9]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal(), ints(&[1, 0, 0]));
        assert!(snf.verify(&m));
    }

    #[test]
    fn snf_is_deterministic() {
        let m = mat(&[&[4, -6, 2], &[8, 3, -1], &[0, 5, 7]]);
        assert_eq!(smith_normal_form(&m), smith_normal_form(&m));
    }

    #[test]
    fn h1_examples() {
        for m in -50..=50 {
            assert!(h1_of_surgery(&mat(&[&[0, 1], &[1, -m]])).unwrap().is_trivial());
        }
        let zero = h1_of_surgery(&mat(&[&[0]])).unwrap();
        assert_eq!(zero.free_rank, 1);
        assert!(zero.invariant_factors.is_empty());

        let chain = chain_linking_matrix(&NegCF::new(vec![-2, -2, -2]).unwrap());
        let g = h1_of_surgery(&chain).unwrap();
        assert_eq!(g.invariant_factors, ints(&[4]));
        assert_eq!(g.free_rank, 0);

        assert!(h1_of_surgery(&mat(&[&[0, 1], &[2, 0]])).is_err());
    }

    #[test]
    fn homology_sphere_examples() {
        assert!(is_homology_sphere(&mat(&[&[0, 1], &[1, -3]])).unwrap());
        assert!(!is_homology_sphere(&mat(&[&[-2]])).unwrap());
        assert!(is_homology_sphere(&e8_matrix()).unwrap());
        assert!(h1_of_surgery(&e8_matrix()).unwrap().is_trivial());
    }

    /// Fraction-free Bareiss elimination, kept as an independent check.
    fn bareiss(m: &IntMatrix) -> BigInt {
        let n = m.dim();
        if n == 0 {
            return BigInt::one();
        }
        let mut a = m.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[(i, j)] = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    #[test]
    fn determinant_matches_bareiss() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for n in 0..7 {
            for _ in 0..200 {
                let rows: Vec<Vec<i64>> = (0..n)
                    .map(|_| (0..n).map(|_| rng.random_range(-5..=5)).collect())
                    .collect();
                let m = IntMatrix::from_rows(&rows).unwrap();
                assert_eq!(m.determinant(), bareiss(&m), "{m}");
            }
        }
    }

    #[test]
    fn chain_determinants() {
        let det = |c: &[i64]| {
            chain_linking_matrix(&NegCF::new(c.to_vec()).unwrap())
                .determinant()
                .abs()
        };
        assert_eq!(det(&[-2]), 2.into());
        assert_eq!(det(&[-2, -2, -2]), 4.into());
        assert_eq!(det(&[-3, -3]), 8.into());
    }

    #[test]
    fn star_examples() {
        let cf = |c: &[i64]| NegCF::new(c.to_vec()).unwrap();
        let e8 = star_linking_matrix(-2, &[cf(&[-2]), cf(&[-2, -2]), cf(&[-2, -2, -2, -2])]).unwrap();
        assert_eq!(e8.dim(), 8);
        assert_eq!(e8.determinant().abs(), BigInt::one());

        let s237 = star_linking_matrix(-1, &[cf(&[-2]), cf(&[-3]), cf(&[-7])]).unwrap();
        assert_eq!(s237.determinant().abs(), BigInt::one());

        let small = star_linking_matrix(-2, &[cf(&[-2]), cf(&[-2])]).unwrap();
        assert_eq!(small.determinant().abs(), 4.into());

        assert!(star_linking_matrix(-1, &[]).is_err());
    }

    #[test]
    fn hantzsche_examples() {
        let g = |f: &[i64]| AbelianGroup {
            free_rank: 0,
            invariant_factors: ints(f),
        };
        assert_eq!(hantzsche_double_test(&g(&[3, 3])).unwrap(), Some(g(&[3])));
        assert_eq!(hantzsche_double_test(&g(&[3])).unwrap(), None);
        assert_eq!(hantzsche_double_test(&g(&[2, 2, 4, 4])).unwrap(), Some(g(&[2, 4])));
        assert_eq!(hantzsche_double_test(&g(&[2, 4])).unwrap(), None);
        assert_eq!(hantzsche_double_test(&g(&[])).unwrap(), Some(g(&[])));
        let free = AbelianGroup {
            free_rank: 1,
            invariant_factors: vec![],
        };
        assert!(hantzsche_double_test(&free).is_err());
    }

    #[test]
    fn lens_sum_examples() {
        let sum = |s: &str| s.parse::<ConnectedSum>().unwrap();
        assert_eq!(h1_of_lens_sum(&sum("3,1#3,2")).invariant_factors, ints(&[3, 3]));
        assert_eq!(h1_of_lens_sum(&sum("4,1#6,1")).invariant_factors, ints(&[2, 12]));
        assert!(h1_of_lens_sum(&ConnectedSum::default()).is_trivial());
    }

    #[test]
    fn chain_matrix_presents_the_lens_space() {
        for p in 2..=60i64 {
            for q in 1..p {
                let Ok(l) = LensSpace::new(p, q) else { continue };
                let g = h1_of_surgery(&chain_linking_matrix(&l.neg_cf().unwrap())).unwrap();
                assert_eq!(g, AbelianGroup::from_cyclic([p]), "L({l})");
            }
        }
    }

    #[test]
    fn matrix_file_format() {
        let text = "3\n1 2 3\n2 5 6\n3 6 -9\n";
        let m = IntMatrix::read_from(text.as_bytes()).unwrap();
        assert_eq!(m.to_string(), text);
        assert!(IntMatrix::read_from("2\n1 2\n".as_bytes()).is_err());
        assert!(IntMatrix::read_from("2\n1 2\n3\n".as_bytes()).is_err());
        assert!(IntMatrix::read_from("x\n".as_bytes()).is_err());
        assert!(IntMatrix::read_from("1\n1\n2\n".as_bytes()).is_err());
        assert!(IntMatrix::read_from("".as_bytes()).is_err());
    }

    #[test]
    fn group_json_uses_strings() {
        let g = AbelianGroup::from_cyclic([4, 6]);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"free_rank":"0","invariant_factors":["2","12"]}"#);
        assert_eq!(serde_json::from_str::<AbelianGroup>(&json).unwrap(), g);
    }
}
