//! Exact integer lattices: Hermite and Smith normal forms, membership,
//! saturation and indices of sublattices.
//!
//! All arithmetic runs in `i128` with checked operations; any overflow
//! aborts the computation with [`Error::Overflow`]. Inputs and outputs use
//! `i64` entries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sublattice of `ℤ^ambient_rank` given by its row-style Hermite normal
/// form: rows in echelon order, positive pivots, and every entry above a
/// pivot reduced into `[0, pivot)`. The form is unique, so two lattices are
/// equal exactly when their bases compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    ambient_rank: usize,
    rows: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn zero(ambient_rank: usize) -> LatticeBasis {
        LatticeBasis { ambient_rank, rows: Vec::new() }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Pivot column of every row.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("HNF rows are nonzero"))
            .collect()
    }

    /// Whether every row of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &LatticeBasis) -> Result<bool> {
        check_dim(other.ambient_rank, self.ambient_rank)?;
        for r in &self.rows {
            if !contains(other, r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Isomorphism type of a finitely generated abelian group:
/// `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `d₁ | d₂ | … | d_k` and every `dᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> AbelianInvariants {
        AbelianInvariants { rank, torsion: Vec::new() }
    }

    pub fn torsion_order(&self) -> i64 {
        self.torsion.iter().product()
    }

    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|&d| d >= 2) && self.torsion.windows(2).all(|w| w[1] % w[0] == 0)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `[L₂ : L₁]` for a sublattice `L₁ ⊆ L₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SublatticeIndex {
    Finite(u128),
    #[serde(serialize_with = "ser_infinite", deserialize_with = "de_infinite")]
    Infinite,
}

fn ser_infinite<S: serde::Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str("infinite")
}

fn de_infinite<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<(), D::Error> {
    let s = String::deserialize(d)?;
    if s == "infinite" {
        Ok(())
    } else {
        Err(serde::de::Error::custom("expected \"infinite\""))
    }
}

impl fmt::Display for SublatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SublatticeIndex::Finite(n) => write!(f, "{n}"),
            SublatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}

fn widen(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

fn narrow(v: Vec<i128>) -> Result<Vec<i64>> {
    v.into_iter().map(|x| i64::try_from(x).map_err(|_| Error::Overflow)).collect()
}

/// `target -= q * source`, checked.
fn sub_multiple(target: &mut [i128], source: &[i128], q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for (t, &s) in target.iter_mut().zip(source) {
        let prod = s.checked_mul(q).ok_or(Error::Overflow)?;
        *t = t.checked_sub(prod).ok_or(Error::Overflow)?;
    }
    Ok(())
}

fn negate(row: &mut [i128]) -> Result<()> {
    for x in row.iter_mut() {
        *x = x.checked_neg().ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// Row-style HNF of the row span, zero rows dropped.
fn hnf_rows(mut m: Vec<Vec<i128>>, ncols: usize) -> Result<Vec<Vec<i128>>> {
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let mut has_pivot = false;
        while let Some(piv) = (r..m.len())
            .filter(|&i| m[i][col] != 0)
            .min_by_key(|&i| m[i][col].unsigned_abs())
        {
            has_pivot = true;
            m.swap(r, piv);
            let (head, tail) = m.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let mut clean = true;
            for row in tail.iter_mut() {
                if row[col] != 0 {
                    let q = row[col] / pivot_row[col];
                    sub_multiple(row, pivot_row, q)?;
                    clean &= row[col] == 0;
                }
            }
            if clean {
                break;
            }
        }
        if !has_pivot {
            continue;
        }
        if m[r][col] < 0 {
            negate(&mut m[r])?;
        }
        let (head, tail) = m.split_at_mut(r);
        let pivot_row = &tail[0];
        for row in head.iter_mut() {
            let q = row[col].div_euclid(pivot_row[col]);
            sub_multiple(row, pivot_row, q)?;
        }
        r += 1;
    }
    m.truncate(r);
    Ok(m)
}

/// Canonical HNF basis of the lattice spanned by `generators`.
pub fn hnf_basis(ambient_rank: usize, generators: &[Vec<i64>]) -> Result<LatticeBasis> {
    for g in generators {
        check_dim(ambient_rank, g.len())?;
    }
    let rows = hnf_rows(generators.iter().map(|g| widen(g)).collect(), ambient_rank)?;
    Ok(LatticeBasis {
        ambient_rank,
        rows: rows.into_iter().map(narrow).collect::<Result<_>>()?,
    })
}

/// Nonzero diagonal entries `d₁ | d₂ | …` of the Smith normal form,
/// including the unit factors.
pub fn smith_invariants(matrix: &[Vec<i64>]) -> Result<Vec<i64>> {
    let nrows = matrix.len();
    let ncols = matrix.first().map_or(0, Vec::len);
    for row in matrix {
        check_dim(ncols, row.len())?;
    }
    let mut a: Vec<Vec<i128>> = matrix.iter().map(|r| widen(r)).collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        let Some((pi, pj)) = (t..nrows)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let (head, tail) = a.split_at_mut(t + 1);
            for row in tail.iter_mut() {
                let q = row[t] / p;
                sub_multiple(row, &head[t], q)?;
            }
            for j in t + 1..ncols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut() {
                        let prod = row[t].checked_mul(q).ok_or(Error::Overflow)?;
                        row[j] = row[j].checked_sub(prod).ok_or(Error::Overflow)?;
                    }
                }
            }
            // a leftover remainder in the pivot row or column becomes the new pivot
            let leftover = (t + 1..nrows)
                .map(|i| (i, t))
                .chain((t + 1..ncols).map(|j| (t, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].unsigned_abs());
            if let Some((i, j)) = leftover {
                if i != t {
                    a.swap(t, i);
                } else {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
                continue;
            }
            let bad_row = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % p != 0));
            match bad_row {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    sub_multiple(&mut head[t], &tail[0], -1)?;
                }
                None => break,
            }
        }
        diag.push(a[t][t].checked_abs().ok_or(Error::Overflow)?);
        t += 1;
    }
    debug_assert!(diag.windows(2).all(|w| w[1] % w[0] == 0));
    diag.into_iter().map(|d| i64::try_from(d).map_err(|_| Error::Overflow)).collect()
}

/// Whether `v` lies in the lattice, by back-substitution against the pivots.
pub fn contains(lattice: &LatticeBasis, v: &[i64]) -> Result<bool> {
    check_dim(lattice.ambient_rank, v.len())?;
    let mut rest = widen(v);
    let mut col = 0;
    for (row, pivot) in lattice.rows.iter().zip(lattice.pivots()) {
        if rest[col..pivot].iter().any(|&x| x != 0) {
            return Ok(false);
        }
        let p = row[pivot] as i128;
        if rest[pivot] % p != 0 {
            return Ok(false);
        }
        let q = rest[pivot] / p;
        sub_multiple(&mut rest, &widen(row), q)?;
        col = pivot + 1;
    }
    Ok(rest.iter().all(|&x| x == 0))
}

/// `ℤ^ambient_rank / L`.
pub fn quotient_invariants(ambient_rank: usize, lattice: &LatticeBasis) -> Result<AbelianInvariants> {
    check_dim(ambient_rank, lattice.ambient_rank)?;
    let torsion = smith_invariants(&lattice.rows)?.into_iter().filter(|&d| d > 1).collect();
    Ok(AbelianInvariants { rank: ambient_rank - lattice.rank(), torsion })
}

/// Whether some nonzero multiple of `v` lies in the lattice.
pub fn saturation_contains(lattice: &LatticeBasis, v: &[i64]) -> Result<bool> {
    check_dim(lattice.ambient_rank, v.len())?;
    let mut gens = lattice.rows.clone();
    gens.push(v.to_vec());
    Ok(hnf_basis(lattice.ambient_rank, &gens)?.rank() == lattice.rank())
}

/// `[L₂ : L₁]`, which must satisfy `L₁ ⊆ L₂`.
pub fn sublattice_index(sub: &LatticeBasis, sup: &LatticeBasis) -> Result<SublatticeIndex> {
    if !sub.is_sublattice_of(sup)? {
        return Err(Error::NotContained);
    }
    if sub.rank() < sup.rank() {
        return Ok(SublatticeIndex::Infinite);
    }
    // equal rational spans share pivot columns; the pivot product is the
    // covolume after projecting onto them
    let covolume = |l: &LatticeBasis| -> Result<u128> {
        l.rows.iter().zip(l.pivots()).try_fold(1u128, |acc, (r, p)| {
            acc.checked_mul(r[p] as u128).ok_or(Error::Overflow)
        })
    };
    let (a, b) = (covolume(sub)?, covolume(sup)?);
    if a % b != 0 {
        return Err(Error::Invariant("covolume ratio is not an integer".into()));
    }
    Ok(SublatticeIndex::Finite(a / b))
}
