//! Linear algebra over GF(p) that defines a group `G_{p,f}`.
//!
//! A group is specified by a prime `p` and a monic polynomial
//! `f = x^m + a_{m-1} x^{m-1} + ... + a_0` with `a_0 != 0 (mod p)`. The
//! vector space `B = (Z/pZ)^m` carries the companion matrix `rho` of `f` and
//! the functional `omega` that reads the last coordinate. Everything else in
//! the crate (generator recursions, torsion, growth) is derived from this data.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Modular exponentiation for small moduli.
pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(x: u64, p: u64) -> u64 {
    // p is prime
    pow_mod(x, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `B = (Z/pZ)^m`, coordinates in the standard basis
/// `d_0, ..., d_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FieldVector(Vec<u32>);

impl FieldVector {
    pub fn new(entries: Vec<u32>) -> Self {
        FieldVector(entries)
    }

    pub fn zero(m: usize) -> Self {
        FieldVector(vec![0; m])
    }

    /// The standard basis vector `d_i`.
    pub fn basis(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        FieldVector(v)
    }

    /// Decodes a vector from its lexicographic rank (first coordinate most significant).
    pub fn from_rank(mut rank: u64, p: u32, m: usize) -> Self {
        let mut v = vec![0; m];
        for slot in v.iter_mut().rev() {
            *slot = (rank % p as u64) as u32;
            rank /= p as u64;
        }
        FieldVector(v)
    }

    pub fn rank(&self, p: u32) -> u64 {
        self.0.iter().fold(0u64, |acc, &x| acc * p as u64 + x as u64)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &FieldVector, p: u32) -> FieldVector {
        FieldVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&x, &y)| (x + y) % p)
                .collect(),
        )
    }

    pub fn scale(&self, k: u32, p: u32) -> FieldVector {
        let k = k as u64 % p as u64;
        FieldVector(
            self.0
                .iter()
                .map(|&x| (x as u64 * k % p as u64) as u32)
                .collect(),
        )
    }

    pub fn neg(&self, p: u32) -> FieldVector {
        FieldVector(self.0.iter().map(|&x| (p - x) % p).collect())
    }

    /// `Some(i)` when this is the standard basis vector `d_i`.
    pub fn as_basis_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &x) in self.0.iter().enumerate() {
            match x {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }
}

impl fmt::Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// A square matrix over GF(p) acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldMatrix {
    p: u32,
    rows: Vec<Vec<u32>>,
}

impl FieldMatrix {
    pub fn new(p: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::BadMatrix);
        }
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % p).collect())
            .collect();
        Ok(FieldMatrix { p, rows })
    }

    pub fn identity(p: u32, m: usize) -> Self {
        let rows = (0..m)
            .map(|i| (0..m).map(|j| u32::from(i == j)).collect())
            .collect();
        FieldMatrix { p, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn apply(&self, v: &FieldVector) -> FieldVector {
        let p = self.p as u64;
        FieldVector(
            self.rows
                .iter()
                .map(|row| {
                    (row.iter()
                        .zip(v.entries())
                        .map(|(&a, &x)| a as u64 * x as u64)
                        .sum::<u64>()
                        % p) as u32
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        let m = self.dim();
        let p = self.p as u64;
        let rows = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        ((0..m)
                            .map(|k| self.rows[i][k] as u64 * other.rows[k][j] as u64)
                            .sum::<u64>()
                            % p) as u32
                    })
                    .collect()
            })
            .collect();
        FieldMatrix { p: self.p, rows }
    }

    pub fn pow(&self, mut e: u64) -> FieldMatrix {
        let mut acc = FieldMatrix::identity(self.p, self.dim());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<FieldMatrix> {
        let m = self.dim();
        let p = self.p as u64;
        let mut a: Vec<Vec<u64>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row: Vec<u64> = r.iter().map(|&x| x as u64).collect();
                row.extend((0..m).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        for col in 0..m {
            let pivot = (col..m).find(|&r| a[r][col] != 0)?;
            a.swap(col, pivot);
            let inv = inv_mod(a[col][col], p);
            for x in a[col].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..m {
                if r != col && a[r][col] != 0 {
                    let factor = a[r][col];
                    let pivot = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(&pivot) {
                        *x = (*x + (p - factor) * y) % p;
                    }
                }
            }
        }
        let rows = a
            .into_iter()
            .map(|r| r[m..].iter().map(|&x| x as u32).collect())
            .collect();
        Some(FieldMatrix { p: self.p, rows })
    }
}

/// The full definition of `G_{p,f}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    p: u32,
    /// `a_0, ..., a_{m-1}`; the leading 1 is implicit.
    coeffs: Vec<u32>,
    rho: FieldMatrix,
    rho_inv: FieldMatrix,
    omega_row: Vec<u32>,
}

impl GroupSpec {
    /// Builds the group data from `p` and the full coefficient list `a_0, ..., a_m`
    /// (constant term first, leading coefficient last and equal to 1).
    pub fn new(p: i64, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::DegreeZero);
        }
        if p < 2 || !is_prime(p as u64) || p > u32::MAX as i64 {
            return Err(Error::NotPrime(p.max(0) as u64));
        }
        let reduced: Vec<u32> = coeffs.iter().map(|&c| c.rem_euclid(p) as u32).collect();
        let lead = *reduced.last().unwrap();
        if lead != 1 {
            return Err(Error::NotMonic(lead as u64));
        }
        if reduced[0] == 0 {
            return Err(Error::NotInvertible);
        }
        let p = p as u32;
        let m = reduced.len() - 1;
        let low = reduced[..m].to_vec();
        let rho = companion(p, &low);
        let rho_inv = rho.inverse().expect("companion matrix of f with a_0 != 0 is invertible");
        let mut omega_row = vec![0; m];
        omega_row[m - 1] = 1;
        Ok(GroupSpec {
            p,
            coeffs: low,
            rho,
            rho_inv,
            omega_row,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_0, ..., a_{m-1}` reduced mod p.
    pub fn low_coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// `a_0, ..., a_{m-1}, 1`.
    pub fn full_coeffs(&self) -> Vec<u32> {
        let mut c = self.coeffs.clone();
        c.push(1);
        c
    }

    pub fn companion_matrix(&self) -> &FieldMatrix {
        &self.rho
    }

    pub fn omega_row(&self) -> &[u32] {
        &self.omega_row
    }

    /// `f` written out, e.g. `x^2+x+1`.
    pub fn polynomial_string(&self) -> String {
        let full = self.full_coeffs();
        let mut terms = Vec::new();
        for (deg, &c) in full.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && deg > 0 { String::new() } else { c.to_string() };
            let term = match deg {
                0 => c.to_string(),
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{deg}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }

    pub fn check_vector(&self, v: &FieldVector) -> Result<()> {
        if v.dim() != self.m() {
            return Err(Error::BadVector {
                expected: self.m(),
                got: v.dim(),
            });
        }
        if let Some(&d) = v.entries().iter().find(|&&x| x >= self.p) {
            return Err(Error::BadDigit { digit: d, p: self.p });
        }
        Ok(())
    }

    pub fn rho(&self, v: &FieldVector) -> FieldVector {
        self.rho.apply(v)
    }

    /// `rho^i(v)` for any integer `i`.
    pub fn rho_power_apply(&self, v: &FieldVector, i: i64) -> FieldVector {
        match i {
            0 => v.clone(),
            1 => self.rho.apply(v),
            -1 => self.rho_inv.apply(v),
            i if i > 0 => self.rho.pow(i as u64).apply(v),
            i => self.rho_inv.pow(i.unsigned_abs()).apply(v),
        }
    }

    /// `omega(v)`: the last coordinate.
    pub fn omega_of(&self, v: &FieldVector) -> u32 {
        v.entries()[self.m() - 1]
    }

    /// A basis of `B_i = rho^i(ker omega)`. Empty when `m = 1`.
    pub fn kernel_subspace(&self, i: i64) -> Vec<FieldVector> {
        let m = self.m();
        let power = if i >= 0 {
            self.rho.pow(i as u64)
        } else {
            self.rho_inv.pow(i.unsigned_abs())
        };
        (0..m.saturating_sub(1))
            .map(|j| power.apply(&FieldVector::basis(m, j)))
            .collect()
    }

    /// All elements of the span of `basis`, in lexicographic order.
    pub fn span(&self, basis: &[FieldVector]) -> Vec<FieldVector> {
        let p = self.p;
        let mut out = Vec::new();
        let count = (p as u64).pow(basis.len() as u32);
        for idx in 0..count {
            let coeffs = FieldVector::from_rank(idx, p, basis.len());
            let mut v = FieldVector::zero(self.m());
            for (c, b) in coeffs.entries().iter().zip(basis) {
                v = v.add(&b.scale(*c, p), p);
            }
            out.push(v);
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn rho_orbits(&self) -> OrbitReport {
        OrbitReport {
            orbits: orbits_of(&self.rho, &self.omega_row),
        }
    }

    pub fn torsion_analysis(&self) -> TorsionReport {
        let report = self.rho_orbits();
        if let Some(w) = report.orbits.iter().find(|o| !o.meets_kernel) {
            return TorsionReport {
                is_p_group: false,
                r: None,
                witness_orbit: Some(w.members.clone()),
            };
        }
        let mut longest = 0usize;
        for orbit in &report.orbits {
            let len = orbit.members.len();
            let outside: Vec<bool> = orbit
                .members
                .iter()
                .map(|v| self.omega_of(v) != 0)
                .collect();
            // The orbit meets the kernel, so start a scan just after a kernel member.
            let start = outside.iter().position(|&o| !o).unwrap();
            let mut run = 0usize;
            for k in 1..=len {
                if outside[(start + k) % len] {
                    run += 1;
                    longest = longest.max(run);
                } else {
                    run = 0;
                }
            }
        }
        TorsionReport {
            is_p_group: true,
            r: Some(longest as u32 + 1),
            witness_orbit: None,
        }
    }

    pub fn growth_parameters(&self) -> Result<GrowthParameters> {
        let torsion = self.torsion_analysis();
        let r = torsion.r.ok_or(Error::NotTorsion)?;
        GrowthParameters::for_r(self.p, r)
    }

    /// `b = f2(rho)(d_0)` and its rho-cyclic basis of length `deg f1`.
    pub fn factor_generator(&self, f1: &[i64], f2: &[i64]) -> Result<FactorGenerator> {
        let p = self.p;
        let red = |f: &[i64]| -> Vec<u32> { f.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect() };
        let (f1, f2) = (trim(red(f1)), trim(red(f2)));
        if f1.is_empty() || f2.is_empty() || f1.last() != Some(&1) || f2.last() != Some(&1) {
            return Err(Error::NotAFactorization);
        }
        if poly_mul(&f1, &f2, p) != self.full_coeffs() {
            return Err(Error::NotAFactorization);
        }
        let m = self.m();
        let mut b = FieldVector::zero(m);
        let mut power = FieldVector::basis(m, 0);
        for &c in &f2 {
            b = b.add(&power.scale(c, p), p);
            power = self.rho(&power);
        }
        let deg1 = f1.len() - 1;
        let mut cyclic_basis = Vec::with_capacity(deg1);
        let mut cur = b.clone();
        for _ in 0..deg1 {
            cyclic_basis.push(cur.clone());
            cur = self.rho(&cur);
        }
        Ok(FactorGenerator { b, cyclic_basis })
    }
}

fn companion(p: u32, low: &[u32]) -> FieldMatrix {
    let m = low.len();
    let mut rows = vec![vec![0u32; m]; m];
    for i in 1..m {
        rows[i][i - 1] = 1;
    }
    for (i, &a) in low.iter().enumerate() {
        rows[i][m - 1] = (p - a) % p;
    }
    FieldMatrix { p, rows }
}

fn trim(mut f: Vec<u32>) -> Vec<u32> {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

fn poly_mul(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &x) in f.iter().enumerate() {
        for (j, &y) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|x| x as u32).collect())
}

/// One cycle of `rho` on the nonzero vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Starts at the lexicographically least member; each member maps to the next.
    pub members: Vec<FieldVector>,
    /// Whether some member has `omega = 0`.
    pub meets_kernel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub orbits: Vec<Orbit>,
}

impl OrbitReport {
    pub fn total_members(&self) -> usize {
        self.orbits.iter().map(|o| o.members.len()).sum()
    }
}

/// Partitions the nonzero vectors into cycles of an invertible `rho`.
fn orbits_of(rho: &FieldMatrix, omega_row: &[u32]) -> Vec<Orbit> {
    let p = rho.p();
    let m = rho.dim();
    let total = (p as u64).pow(m as u32);
    let mut seen = vec![false; total as usize];
    let omega = |v: &FieldVector| -> u64 {
        v.entries()
            .iter()
            .zip(omega_row)
            .map(|(&x, &w)| x as u64 * w as u64)
            .sum::<u64>()
            % p as u64
    };
    let mut orbits = Vec::new();
    for rank in 1..total {
        if seen[rank as usize] {
            continue;
        }
        let start = FieldVector::from_rank(rank, p, m);
        let mut members = Vec::new();
        let mut cur = start.clone();
        loop {
            seen[cur.rank(p) as usize] = true;
            members.push(cur.clone());
            cur = rho.apply(&cur);
            if cur == start {
                break;
            }
        }
        let meets_kernel = members.iter().any(|v| omega(v) == 0);
        orbits.push(Orbit {
            members,
            meets_kernel,
        });
    }
    orbits
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Faithfulness {
    pub faithful: bool,
    /// A nontrivial rho-orbit inside `ker omega`, when one exists.
    pub witness: Option<Vec<FieldVector>>,
}

/// Decides whether `B` acts faithfully for an arbitrary pair `(omega, rho)`:
/// faithful exactly when no nontrivial rho-orbit lies inside `ker omega`.
pub fn faithfulness_check(rho: &FieldMatrix, omega_row: &[u32]) -> Result<Faithfulness> {
    if omega_row.len() != rho.dim() {
        return Err(Error::BadVector {
            expected: rho.dim(),
            got: omega_row.len(),
        });
    }
    if rho.inverse().is_none() {
        return Err(Error::SingularRho);
    }
    if omega_row.iter().all(|&w| w % rho.p() == 0) {
        return Err(Error::ZeroOmega);
    }
    let p = rho.p() as u64;
    let inside = |v: &FieldVector| {
        v.entries()
            .iter()
            .zip(omega_row)
            .map(|(&x, &w)| x as u64 * w as u64)
            .sum::<u64>()
            % p
            == 0
    };
    let witness = orbits_of(rho, omega_row)
        .into_iter()
        .find(|o| o.members.iter().all(inside))
        .map(|o| o.members);
    Ok(Faithfulness {
        faithful: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub is_p_group: bool,
    /// Least `r` with `B_0 ∪ ... ∪ B_{r-1} = B`; present iff `is_p_group`.
    pub r: Option<u32>,
    /// A rho-orbit avoiding `ker omega`; present iff not `is_p_group`.
    pub witness_orbit: Option<Vec<FieldVector>>,
}

/// Growth data of a torsion group: `eta` is the positive root of
/// `x^r + x^{r-1} + x^{r-2} - 2` and `alpha = log p / (log p - log eta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthParameters {
    pub r: u32,
    pub eta: f64,
    pub alpha: f64,
}

impl GrowthParameters {
    pub fn for_r(p: u32, r: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::BadParameters(format!("r = {r} must be at least 2")));
        }
        let eta = growth_root(r);
        let lp = (p as f64).ln();
        Ok(GrowthParameters {
            r,
            eta,
            alpha: lp / (lp - eta.ln()),
        })
    }
}

pub fn growth_polynomial(r: u32, x: f64) -> f64 {
    x.powi(r as i32) + x.powi(r as i32 - 1) + x.powi(r as i32 - 2) - 2.0
}

/// Bisection on `[0, 1]`, where the polynomial changes sign for `r >= 2`.
pub fn growth_root(r: u32) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if growth_polynomial(r, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (flo, fhi) = (growth_polynomial(r, lo).abs(), growth_polynomial(r, hi).abs());
    if flo <= fhi {
        lo
    } else {
        hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorGenerator {
    pub b: FieldVector,
    pub cyclic_basis: Vec<FieldVector>,
}
