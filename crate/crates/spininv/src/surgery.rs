//! Integer symmetric-matrix services for surgery presentations.
//!
//! A surgery presentation enters here only through its linking matrix:
//! framings on the diagonal, pairwise linking numbers off it. The module
//! computes the signature exactly (rational congruence reduction, never
//! eigenvalue numerics), the Rohlin residue mod 16, the full affine set of
//! characteristic sublinks over F₂, and the matrix-level moves: handle
//! slides, ±1 blowups with the characteristic-sublink update rule, and
//! stabilization by a 0-framed Hopf pair.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::scalar::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("matrix rows have inconsistent lengths")]
    Ragged,
    #[error("diagonal entry {0} is odd; an even matrix is required")]
    NotEven(usize),
    #[error("index {0} out of range for a {1}x{1} matrix")]
    IndexOutOfRange(usize, usize),
    #[error("characteristic system is inconsistent")]
    InconsistentSystem,
    #[error("too many characteristic sublinks to enumerate (kernel dimension {0})")]
    EnumerationTooLarge(usize),
    #[error("sublink indicator has wrong length")]
    SublinkLength,
    #[error("sublink is not characteristic for the matrix")]
    NotCharacteristic,
    #[error("malformed matrix file: {0}")]
    Parse(String),
}

/// Symmetric integer linking matrix of a surgery presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryMatrix {
    n: usize,
    entries: Vec<i64>, // row-major, n*n
}

/// Indicator vector `c` over F₂ with `A·c ≡ diag(A) (mod 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicSublink(pub Vec<bool>);

impl CharacteristicSublink {
    pub fn empty(n: usize) -> Self {
        CharacteristicSublink(vec![false; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&b| !b)
    }
}

impl SurgeryMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, SurgeryError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SurgeryError::Ragged);
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(SurgeryError::NotSymmetric(i, j));
                }
            }
        }
        Ok(SurgeryMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn empty() -> Self {
        SurgeryMatrix { n: 0, entries: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn is_even(&self) -> bool {
        self.diagonal().iter().all(|d| d % 2 == 0)
    }

    pub fn direct_sum(&self, other: &SurgeryMatrix) -> SurgeryMatrix {
        let n = self.n + other.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                entries[i * n + j] = self.get(i, j);
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                entries[(self.n + i) * n + (self.n + j)] = other.get(i, j);
            }
        }
        SurgeryMatrix { n, entries }
    }

    /// The hyperbolic plane `[[0,1],[1,0]]`.
    pub fn hyperbolic() -> SurgeryMatrix {
        SurgeryMatrix::new(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    /// The even positive-definite E₈ form (Dynkin-diagram Gram matrix).
    pub fn e8() -> SurgeryMatrix {
        // bonds 1-2-3-4-5-6-7 with node 8 attached to node 5
        let bonds = [(0usize, 1usize), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        let mut rows = vec![vec![0i64; 8]; 8];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in bonds {
            rows[a][b] = -1;
            rows[b][a] = -1;
        }
        SurgeryMatrix::new(rows).unwrap()
    }

    pub fn minus_e8() -> SurgeryMatrix {
        let mut m = Self::e8();
        for e in m.entries.iter_mut() {
            *e = -*e;
        }
        m
    }

    /// The fixed 22×22 even form `(−E₈) ⊕ (−E₈) ⊕ H ⊕ H ⊕ H` of signature
    /// −16 presented by the Kummer-surface link.
    pub fn kummer() -> SurgeryMatrix {
        let mut m = Self::minus_e8().direct_sum(&Self::minus_e8());
        for _ in 0..3 {
            m = m.direct_sum(&Self::hyperbolic());
        }
        m
    }

    /// Signature of the real quadratic form, computed exactly by rational
    /// symmetric congruence reduction. A zero diagonal with a nonzero
    /// off-diagonal entry is consumed as a hyperbolic 2×2 block contributing
    /// zero.
    pub fn signature(&self) -> i64 {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| Rational::from_integer(self.get(i, j).into())).collect())
            .collect();
        let mut alive: Vec<usize> = (0..n).collect();
        let mut sig = 0i64;
        while !alive.is_empty() {
            if let Some(&p) = alive.iter().find(|&&i| !a[i][i].is_zero()) {
                sig += if a[p][p].is_positive() { 1 } else { -1 };
                let pivot = a[p][p].clone();
                alive.retain(|&i| i != p);
                let pivot_row: Vec<(usize, Rational)> =
                    alive.iter().map(|&j| (j, a[p][j].clone())).collect();
                let factors: Vec<(usize, Rational)> =
                    alive.iter().map(|&i| (i, &a[i][p] / &pivot)).collect();
                for (i, f) in &factors {
                    if f.is_zero() {
                        continue;
                    }
                    for (j, pj) in &pivot_row {
                        let delta = f * pj;
                        a[*i][*j] -= delta;
                    }
                }
                for &i in &alive {
                    a[i][p] = Rational::zero();
                    a[p][i] = Rational::zero();
                }
            } else {
                // all alive diagonal entries vanish
                let mut found = None;
                'outer: for (ii, &i) in alive.iter().enumerate() {
                    for &j in alive.iter().skip(ii + 1) {
                        if !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((p, q)) = found else { break };
                // clear against the block [[0,s],[s,0]], which contributes 0
                let s = a[p][q].clone();
                alive.retain(|&i| i != p && i != q);
                let row_p: Vec<(usize, Rational)> =
                    alive.iter().map(|&j| (j, a[p][j].clone())).collect();
                let row_q: Vec<(usize, Rational)> =
                    alive.iter().map(|&j| (j, a[q][j].clone())).collect();
                let coefs: Vec<(usize, Rational, Rational)> = alive
                    .iter()
                    .map(|&i| (i, a[i][p].clone(), a[i][q].clone()))
                    .collect();
                // v ↦ v − U B⁻¹ Uᵀ v with B⁻¹ = [[0,1/s],[1/s,0]]
                for (i, cp, cq) in &coefs {
                    if cp.is_zero() && cq.is_zero() {
                        continue;
                    }
                    for ((j, pj), (_, qj)) in row_p.iter().zip(row_q.iter()) {
                        let delta = (cp * qj + cq * pj) / &s;
                        a[*i][*j] -= delta;
                    }
                }
                for &i in &alive {
                    a[i][p] = Rational::zero();
                    a[i][q] = Rational::zero();
                    a[p][i] = Rational::zero();
                    a[q][i] = Rational::zero();
                }
            }
        }
        sig
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| Rational::from_integer(self.get(i, j).into())).collect())
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            if let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) {
                a.swap(row, p);
                let inv = a[row][col].recip();
                for j in 0..n {
                    a[row][j] *= &inv;
                }
                for r in 0..n {
                    if r != row && !a[r][col].is_zero() {
                        let f = a[r][col].clone();
                        for j in 0..n {
                            let delta = &f * &a[row][j];
                            a[r][j] -= delta;
                        }
                    }
                }
                rank += 1;
                row += 1;
            }
        }
        rank
    }

    /// Rohlin residue of the spin boundary: σ mod 16 for an even matrix.
    /// An odd signature cannot be the μ of a spin manifold presented this
    /// way; the result is flagged so callers can surface the warning.
    pub fn rohlin_mu(&self) -> Result<RohlinResidue, SurgeryError> {
        if let Some(i) = self.diagonal().iter().position(|d| d % 2 != 0) {
            return Err(SurgeryError::NotEven(i));
        }
        let sigma = self.signature();
        Ok(RohlinResidue {
            sigma,
            residue: sigma.rem_euclid(16),
            parity_warning: sigma % 2 != 0,
        })
    }

    /// All solutions of `A·c ≡ diag(A) (mod 2)`: a particular solution plus
    /// the F₂ kernel, enumerated as a full affine set.
    pub fn characteristic_sublinks(&self) -> Result<Vec<CharacteristicSublink>, SurgeryError> {
        let n = self.n;
        // augmented system over F2
        let mut m: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let mut row: Vec<u8> =
                    (0..n).map(|j| (self.get(i, j).rem_euclid(2)) as u8).collect();
                row.push((self.get(i, i).rem_euclid(2)) as u8);
                row
            })
            .collect();
        let mut pivot_col = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if let Some(p) = (r..n).find(|&row| m[row][c] == 1) {
                m.swap(r, p);
                for row in 0..n {
                    if row != r && m[row][c] == 1 {
                        for k in 0..=n {
                            m[row][k] ^= m[r][k];
                        }
                    }
                }
                pivot_col.push(c);
                r += 1;
            }
        }
        for row in m.iter().skip(r) {
            if row[n] == 1 {
                return Err(SurgeryError::InconsistentSystem);
            }
        }
        let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_col.contains(c)).collect();
        if free_cols.len() > 20 {
            return Err(SurgeryError::EnumerationTooLarge(free_cols.len()));
        }
        let mut particular = vec![false; n];
        for (row, &c) in pivot_col.iter().enumerate() {
            particular[c] = m[row][n] == 1;
        }
        let mut kernel_basis = Vec::new();
        for &f in &free_cols {
            let mut v = vec![false; n];
            v[f] = true;
            for (row, &c) in pivot_col.iter().enumerate() {
                v[c] = m[row][f] == 1;
            }
            kernel_basis.push(v);
        }
        let mut out = Vec::with_capacity(1 << kernel_basis.len());
        for mask in 0u64..(1u64 << kernel_basis.len()) {
            let mut v = particular.clone();
            for (b, basis) in kernel_basis.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    for (vi, &bi) in v.iter_mut().zip(basis.iter()) {
                        *vi ^= bi;
                    }
                }
            }
            out.push(CharacteristicSublink(v));
        }
        out.sort_by_key(|c| c.0.iter().map(|&b| b as u8).collect::<Vec<_>>());
        Ok(out)
    }

    pub fn is_characteristic(&self, c: &CharacteristicSublink) -> Result<bool, SurgeryError> {
        if c.len() != self.n {
            return Err(SurgeryError::SublinkLength);
        }
        for i in 0..self.n {
            let mut acc = 0i64;
            for j in 0..self.n {
                if c.0[j] {
                    acc += self.get(i, j);
                }
            }
            if (acc - self.get(i, i)).rem_euclid(2) != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Handle slide of component `i` over component `j` with sign `±1`:
    /// `A ↦ EᵀAE` for the elementary matrix adding `±(column j)` to column
    /// `i`. A characteristic sublink transported along is `c ↦ E⁻¹c`, which
    /// over F₂ is `c_j ^= c_i`.
    pub fn slide(
        &self,
        i: usize,
        j: usize,
        positive: bool,
        sublink: Option<&CharacteristicSublink>,
    ) -> Result<(SurgeryMatrix, Option<CharacteristicSublink>), SurgeryError> {
        let n = self.n;
        if i >= n || j >= n || i == j {
            return Err(SurgeryError::IndexOutOfRange(i.max(j), n));
        }
        let s: i64 = if positive { 1 } else { -1 };
        let mut out = self.clone();
        // col_i += s·col_j, then row_i += s·row_j
        for r in 0..n {
            out.entries[r * n + i] += s * out.entries[r * n + j];
        }
        for c in 0..n {
            out.entries[i * n + c] += s * out.entries[j * n + c];
        }
        let new_sub = match sublink {
            None => None,
            Some(c) => {
                if c.len() != n {
                    return Err(SurgeryError::SublinkLength);
                }
                let mut v = c.0.clone();
                v[j] ^= v[i];
                Some(CharacteristicSublink(v))
            }
        };
        Ok((out, new_sub))
    }

    /// Kirby–Melvin move: adjoin a ±1-framed unknot passing once around each
    /// component listed in `strands` (repeats allowed) and twist. The result
    /// is congruent to `A ⊕ [ε]`, so σ changes by exactly ε. The new
    /// component joins the characteristic sublink iff the sum of its linking
    /// numbers with the existing sublink is even.
    pub fn blowup(
        &self,
        positive: bool,
        strands: &[usize],
        sublink: Option<&CharacteristicSublink>,
    ) -> Result<(SurgeryMatrix, Option<CharacteristicSublink>), SurgeryError> {
        let n = self.n;
        for &s in strands {
            if s >= n {
                return Err(SurgeryError::IndexOutOfRange(s, n));
            }
        }
        let eps: i64 = if positive { 1 } else { -1 };
        let mut v = vec![0i64; n];
        for &s in strands {
            v[s] += 1;
        }
        let m = n + 1;
        let mut entries = vec![0i64; m * m];
        for i in 0..n {
            for j in 0..n {
                entries[i * m + j] = self.get(i, j) + eps * v[i] * v[j];
            }
        }
        for i in 0..n {
            entries[i * m + n] = eps * v[i];
            entries[n * m + i] = eps * v[i];
        }
        entries[n * m + n] = eps;
        let out = SurgeryMatrix { n: m, entries };
        let new_sub = match sublink {
            None => None,
            Some(c) => {
                if c.len() != n {
                    return Err(SurgeryError::SublinkLength);
                }
                let link_sum: i64 = (0..n).filter(|&i| c.0[i]).map(|i| eps * v[i]).sum();
                let mut w = c.0.clone();
                w.push(link_sum.rem_euclid(2) == 0);
                Some(CharacteristicSublink(w))
            }
        };
        Ok((out, new_sub))
    }

    /// Stabilization by a distant 0-framed Hopf pair: `A ↦ A ⊕ H`.
    /// A transported sublink gains two unused components.
    pub fn stabilize_hopf(
        &self,
        sublink: Option<&CharacteristicSublink>,
    ) -> (SurgeryMatrix, Option<CharacteristicSublink>) {
        let out = self.direct_sum(&Self::hyperbolic());
        let new_sub = sublink.map(|c| {
            let mut v = c.0.clone();
            v.push(false);
            v.push(false);
            CharacteristicSublink(v)
        });
        (out, new_sub)
    }

    /// Parse the matrix file format: a `matrix n` header then `n` rows of
    /// integers.
    pub fn parse(text: &str) -> Result<Self, SurgeryError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| SurgeryError::Parse("empty file".into()))?;
        let mut toks = header.split_whitespace();
        if toks.next() != Some("matrix") {
            return Err(SurgeryError::Parse("expected 'matrix n' header".into()));
        }
        let n: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| SurgeryError::Parse("bad size in header".into()))?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| SurgeryError::Parse("missing matrix row".into()))?;
            let row: Result<Vec<i64>, _> = line.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|_| SurgeryError::Parse(format!("bad row {line:?}")))?;
            if row.len() != n {
                return Err(SurgeryError::Parse(format!(
                    "row of length {} != {n}",
                    row.len()
                )));
            }
            rows.push(row);
        }
        Self::new(rows).map_err(|e| SurgeryError::Parse(e.to_string()))
    }

    pub fn render(&self) -> String {
        let mut s = format!("matrix {}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RohlinResidue {
    pub sigma: i64,
    pub residue: i64,
    /// Set when σ is odd: the residue cannot be the μ of a spin boundary
    /// presented this way, which usually means a misoriented diagram.
    pub parity_warning: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: signature from Descartes sign changes of the
    /// characteristic polynomial, exact for symmetric integer matrices
    /// (all roots real).
    fn signature_charpoly_oracle(m: &SurgeryMatrix) -> i64 {
        use num_bigint::BigInt;
        let n = m.size();
        if n == 0 {
            return 0;
        }
        let orig: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| Rational::from_integer(m.get(i, j).into())).collect())
            .collect();
        // Faddeev–LeVerrier for exact characteristic coefficients
        let mut coeffs: Vec<Rational> = vec![Rational::from_integer(1.into())];
        let mut mk = orig.clone();
        for k in 1..=n {
            if k > 1 {
                let c = coeffs.last().unwrap().clone();
                let mut shifted = mk.clone();
                for (i, row) in shifted.iter_mut().enumerate() {
                    row[i] += &c;
                }
                let mut next = vec![vec![Rational::zero(); n]; n];
                for (i, next_row) in next.iter_mut().enumerate() {
                    for (j, entry) in next_row.iter_mut().enumerate() {
                        let mut acc = Rational::zero();
                        for (l, s_row) in shifted.iter().enumerate() {
                            acc += &orig[i][l] * &s_row[j];
                        }
                        *entry = acc;
                    }
                }
                mk = next;
            }
            let tr: Rational = (0..n).map(|i| mk[i][i].clone()).sum();
            coeffs.push(-tr / Rational::from_integer(BigInt::from(k)));
        }
        let count_sign_changes = |cs: &[Rational]| {
            let signs: Vec<i32> = cs
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| if c.is_positive() { 1 } else { -1 })
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
        };
        let pos = count_sign_changes(&coeffs);
        // p(−x) up to overall sign: negate coefficients of odd-degree terms
        let negated: Vec<Rational> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (n - i) % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        let neg = count_sign_changes(&negated);
        pos - neg
    }

    #[test]
    fn hyperbolic_signature_zero() {
        assert_eq!(SurgeryMatrix::hyperbolic().signature(), 0);
    }

    #[test]
    fn e8_signature_against_charpoly_oracle() {
        let e8 = SurgeryMatrix::e8();
        assert_eq!(signature_charpoly_oracle(&e8), 8);
        assert_eq!(e8.signature(), 8);
    }

    #[test]
    fn kummer_matrix_invariants() {
        let k = SurgeryMatrix::kummer();
        assert!(k.is_even());
        assert_eq!(k.size(), 22);
        assert_eq!(k.rank(), 22);
        assert_eq!(k.signature(), -16);
        assert_eq!(signature_charpoly_oracle(&k), -16);
        assert_eq!(k.rohlin_mu().unwrap().residue, 0);
    }

    #[test]
    fn signature_matches_oracle_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.random_range(1..=5);
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let v = rng.random_range(-3..=3);
                    rows[i][j] = v;
                    rows[j][i] = v;
                }
            }
            let m = SurgeryMatrix::new(rows).unwrap();
            assert_eq!(m.signature(), signature_charpoly_oracle(&m), "matrix {m:?}");
        }
    }

    #[test]
    fn rohlin_examples() {
        assert_eq!(SurgeryMatrix::empty().rohlin_mu().unwrap().residue, 0);
        let two = SurgeryMatrix::new(vec![vec![2]]).unwrap();
        let r = two.rohlin_mu().unwrap();
        assert_eq!(r.residue, 1);
        assert!(r.parity_warning);
        let odd = SurgeryMatrix::new(vec![vec![1]]).unwrap();
        assert!(matches!(odd.rohlin_mu(), Err(SurgeryError::NotEven(0))));
    }

    #[test]
    fn rohlin_shift_under_kummer_sum_is_zero() {
        let m = SurgeryMatrix::hyperbolic()
            .direct_sum(&SurgeryMatrix::new(vec![vec![2, 0], vec![0, -4]]).unwrap());
        let before = m.rohlin_mu().unwrap().residue;
        let after = m.direct_sum(&SurgeryMatrix::kummer()).rohlin_mu().unwrap().residue;
        assert_eq!(before, after);
    }

    #[test]
    fn characteristic_sublinks_examples() {
        // even matrix: the empty sublink is always a solution
        let h = SurgeryMatrix::hyperbolic();
        let sols = h.characteristic_sublinks().unwrap();
        assert_eq!(sols, vec![CharacteristicSublink(vec![false, false])]);

        let one = SurgeryMatrix::new(vec![vec![1]]).unwrap();
        assert_eq!(
            one.characteristic_sublinks().unwrap(),
            vec![CharacteristicSublink(vec![true])]
        );

        // [[2]]: both subsets solve Ac ≡ diag mod 2
        let two = SurgeryMatrix::new(vec![vec![2]]).unwrap();
        assert_eq!(two.characteristic_sublinks().unwrap().len(), 2);

        // brute-force oracle on a 3×3 sample
        let m = SurgeryMatrix::new(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 0]]).unwrap();
        let fast = m.characteristic_sublinks().unwrap();
        let mut brute = Vec::new();
        for mask in 0u8..8 {
            let c = CharacteristicSublink((0..3).map(|i| mask >> i & 1 == 1).collect());
            if m.is_characteristic(&c).unwrap() {
                brute.push(c);
            }
        }
        assert_eq!(fast.len(), brute.len());
        for c in brute {
            assert!(fast.contains(&c));
        }
    }

    #[test]
    fn sublink_count_is_power_of_two() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.random_range(1..=5);
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let v = rng.random_range(-2..=2);
                    rows[i][j] = v;
                    rows[j][i] = v;
                }
            }
            let m = SurgeryMatrix::new(rows).unwrap();
            match m.characteristic_sublinks() {
                Ok(sols) => assert!(sols.len().is_power_of_two(), "{} for {m:?}", sols.len()),
                Err(SurgeryError::InconsistentSystem) => {
                    panic!("characteristic system over F2 is never inconsistent: {m:?}")
                }
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn slide_example_and_invariances() {
        let h = SurgeryMatrix::hyperbolic();
        let (slid, _) = h.slide(0, 1, true, None).unwrap();
        // E adds column 1 to column 0: EᵀHE = [[2,1],[1,0]]
        assert_eq!(slid, SurgeryMatrix::new(vec![vec![2, 1], vec![1, 0]]).unwrap());
        assert_eq!(slid.signature(), h.signature());
        assert!(slid.is_even());
    }

    #[test]
    fn slide_transports_characteristic_sublinks() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let m = SurgeryMatrix::new(vec![vec![3, 1, 0], vec![1, 2, 1], vec![0, 1, 5]]).unwrap();
        for c in m.characteristic_sublinks().unwrap() {
            let mut cur = (m.clone(), c);
            for _ in 0..20 {
                let i = rng.random_range(0..3);
                let mut j = rng.random_range(0..3);
                if i == j {
                    j = (j + 1) % 3;
                }
                let (next, sub) =
                    cur.0.slide(i, j, rng.random_range(0..2) == 0, Some(&cur.1)).unwrap();
                assert!(next.is_characteristic(sub.as_ref().unwrap()).unwrap());
                cur = (next, sub.unwrap());
            }
        }
    }

    #[test]
    fn blowup_changes_signature_by_one_and_updates_sublink() {
        let m = SurgeryMatrix::new(vec![vec![2, 1], vec![1, 2]]).unwrap();
        for c in m.characteristic_sublinks().unwrap() {
            for positive in [true, false] {
                for strands in [vec![], vec![0], vec![0, 1], vec![1, 1]] {
                    let (next, sub) = m.blowup(positive, &strands, Some(&c)).unwrap();
                    let eps = if positive { 1 } else { -1 };
                    assert_eq!(next.signature(), m.signature() + eps);
                    assert!(next.is_characteristic(sub.as_ref().unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn stabilize_preserves_signature_and_evenness() {
        let m = SurgeryMatrix::new(vec![vec![2]]).unwrap();
        let (s, _) = m.stabilize_hopf(None);
        assert_eq!(s.signature(), m.signature());
        assert!(s.is_even());
        let (empty_stab, _) = SurgeryMatrix::empty().stabilize_hopf(None);
        assert_eq!(empty_stab, SurgeryMatrix::hyperbolic());
    }

    #[test]
    fn evenness_and_mu_invariant_under_slides_and_stabilization() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut m =
            SurgeryMatrix::new(vec![vec![2, 1, 0], vec![1, 0, 3], vec![0, 3, -4]]).unwrap();
        let mu = m.rohlin_mu().unwrap().residue;
        for _ in 0..60 {
            if rng.random_range(0..4) == 0 {
                m = m.stabilize_hopf(None).0;
            } else {
                let n = m.size();
                let i = rng.random_range(0..n);
                let mut j = rng.random_range(0..n);
                if i == j {
                    j = (j + 1) % n;
                }
                m = m.slide(i, j, rng.random_range(0..2) == 0, None).unwrap().0;
            }
            assert!(m.is_even());
            assert_eq!(m.rohlin_mu().unwrap().residue, mu);
        }
    }

    #[test]
    fn matrix_file_round_trip() {
        let m = SurgeryMatrix::new(vec![vec![0, 1], vec![1, -2]]).unwrap();
        assert_eq!(SurgeryMatrix::parse(&m.render()).unwrap(), m);
        assert!(SurgeryMatrix::parse("matrix 2\n1 2\n").is_err());
        assert!(SurgeryMatrix::parse("nonsense").is_err());
    }
}
