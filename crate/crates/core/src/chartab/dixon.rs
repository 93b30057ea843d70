//! Dixon–Schneider: simultaneous eigenvectors of the class matrices modulo a
//! prime `l = 1 mod exponent`, `l > 2 sqrt|G|`, lifted to cyclotomic integers
//! through power maps.

use rayon::prelude::*;

use crate::chartab::{CharTable, Character, ClassFunction};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::matgroup::{ConjugacyData, MatrixGroup};
use crate::ring::is_prime;

/// Default table bound on `|G|`.
pub const TABLE_BOUND: u64 = 50_000;

const PRIME_SEARCH_LIMIT: u64 = 1 << 40;

/// Least prime `l = 1 mod e` with `l^2 > 4 |G|`.
pub fn dixon_prime(exponent: u64, group_order: u64) -> Result<u64> {
    let mut l = exponent + 1;
    while l <= PRIME_SEARCH_LIMIT {
        if u128::from(l) * u128::from(l) > 4 * u128::from(group_order) && is_prime(l) {
            return Ok(l);
        }
        l += exponent;
    }
    Err(Error::NoDixonPrime { exponent, bound: PRIME_SEARCH_LIMIT })
}

#[derive(Clone, Copy, Debug)]
struct Fp(u64);

impl Fp {
    fn mul(self, a: u64, b: u64) -> u64 {
        ((u128::from(a) * u128::from(b)) % u128::from(self.0)) as u64
    }

    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 - 2)
    }

    fn reduce(self, a: u64) -> u64 {
        a % self.0
    }

    /// A primitive `e`-th root of unity (`e | l - 1`).
    fn root_of_unity(self, e: u64) -> u64 {
        let l = self.0;
        let factors: Vec<u64> = crate::abelian::factorize(l - 1).into_iter().map(|(p, _)| p).collect();
        let g = (2..l)
            .find(|&g| factors.iter().all(|&p| self.pow(g, (l - 1) / p) != 1))
            .expect("F_l^x is cyclic");
        self.pow(g, (l - 1) / e)
    }
}

/// Row-reduced basis of a subspace of `F_l^n`.
#[derive(Clone, Debug)]
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn rref(f: Fp, mut rows: Vec<Vec<u64>>) -> Subspace {
    let n = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Subspace { basis: rows, pivots }
}

/// Basis of `{x : A x = 0}` for a square matrix (row-major).
fn nullspace(f: Fp, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let d = a.len();
    let red = rref(f, a.to_vec());
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; d];
        for (row, &c) in red.pivots.iter().enumerate() {
            v[c] = Some(row);
        }
        v
    };
    (0..d)
        .filter(|&c| pivot_set[c].is_none())
        .map(|free| {
            let mut x = vec![0u64; d];
            x[free] = 1;
            for (row, &pc) in red.pivots.iter().enumerate() {
                x[pc] = f.sub(0, red.basis[row][free]);
            }
            x
        })
        .collect()
}

/// Characteristic polynomial (low to high, monic) via Hessenberg reduction.
fn charpoly(f: Fp, a: &[Vec<u64>]) -> Vec<u64> {
    let n = a.len();
    let mut h = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let tinv = f.inv(h[m][m - 1]);
        for i in m + 1..n {
            let u = f.mul(h[i][m - 1], tinv);
            if u == 0 {
                continue;
            }
            let row_m = h[m].clone();
            for (x, &y) in h[i].iter_mut().zip(&row_m) {
                *x = f.sub(*x, f.mul(u, y));
            }
            for row in h.iter_mut() {
                row[m] = f.add(row[m], f.mul(u, row[i]));
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i t_i h_{m-i,m} p_{m-i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut p = vec![0u64; m + 1];
        for (j, &c) in prev.iter().enumerate() {
            p[j + 1] = f.add(p[j + 1], c);
            p[j] = f.sub(p[j], f.mul(h[m - 1][m - 1], c));
        }
        let mut t = 1u64;
        for i in 1..m {
            t = f.mul(t, h[m - i][m - i - 1]);
            let coef = f.mul(t, h[m - i - 1][m - 1]);
            if coef == 0 {
                continue;
            }
            for (j, &c) in polys[m - i - 1].iter().enumerate() {
                p[j] = f.sub(p[j], f.mul(coef, c));
            }
        }
        polys.push(p);
    }
    polys.pop().expect("nonempty")
}

fn roots(f: Fp, poly: &[u64]) -> Vec<u64> {
    (0..f.0)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| f.add(f.mul(acc, x), c)) == 0)
        .collect()
}

/// Class matrix `M_i[j][k] = #{x in C_i : x^{-1} z_k in C_j}` reduced mod `l`.
fn class_matrix(group: &MatrixGroup, classes: &ConjugacyData, i: usize, f: Fp) -> Vec<Vec<u64>> {
    let n = classes.len();
    let columns: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let z = classes.reps()[k];
            let mut col = vec![0u64; n];
            for &x in classes.members(i) {
                col[classes.class_of(group.mul(group.inv(x), z))] += 1;
            }
            col.into_iter().map(|v| f.reduce(v)).collect()
        })
        .collect();
    (0..n).map(|j| (0..n).map(|k| columns[k][j]).collect()).collect()
}

/// Splits `space` by the action of `m`; `None` if `space` is not invariant or
/// the restricted operator is not diagonalizable over `F_l`.
fn split(f: Fp, m: &[Vec<u64>], space: &Subspace) -> Option<Vec<Subspace>> {
    let d = space.basis.len();
    let n = m.len();
    // restricted operator in the basis, A[s][t] = coordinate s of M b_t
    let images: Vec<Vec<u64>> = space
        .basis
        .iter()
        .map(|b| {
            (0..n)
                .map(|j| m[j].iter().zip(b).fold(0u64, |acc, (&x, &y)| f.add(acc, f.mul(x, y))))
                .collect()
        })
        .collect();
    let mut a = vec![vec![0u64; d]; d];
    for (t, y) in images.iter().enumerate() {
        for (s, &p) in space.pivots.iter().enumerate() {
            a[s][t] = y[p];
        }
        // invariance check
        for j in 0..n {
            let recon = (0..d).fold(0u64, |acc, s| f.add(acc, f.mul(a[s][t], space.basis[s][j])));
            if recon != y[j] {
                return None;
            }
        }
    }
    let eigen = roots(f, &charpoly(f, &a));
    if eigen.len() == 1 {
        // either a single eigenspace or not diagonalizable
        let shifted: Vec<Vec<u64>> = a
            .iter()
            .enumerate()
            .map(|(s, row)| row.iter().enumerate().map(|(t, &x)| if s == t { f.sub(x, eigen[0]) } else { x }).collect())
            .collect();
        return if nullspace(f, &shifted).len() == d { Some(vec![space.clone()]) } else { None };
    }
    let mut parts = Vec::new();
    let mut total = 0;
    for &lambda in &eigen {
        let shifted: Vec<Vec<u64>> = a
            .iter()
            .enumerate()
            .map(|(s, row)| row.iter().enumerate().map(|(t, &x)| if s == t { f.sub(x, lambda) } else { x }).collect())
            .collect();
        let coeffs = nullspace(f, &shifted);
        total += coeffs.len();
        let vectors: Vec<Vec<u64>> = coeffs
            .iter()
            .map(|c| {
                (0..n)
                    .map(|j| (0..d).fold(0u64, |acc, s| f.add(acc, f.mul(c[s], space.basis[s][j]))))
                    .collect()
            })
            .collect();
        parts.push(rref(f, vectors));
    }
    (total == d).then_some(parts)
}

/// The full character table of `group`, whose order must not exceed [`TABLE_BOUND`].
pub fn character_table(group: &MatrixGroup, classes: &ConjugacyData) -> Result<CharTable> {
    character_table_with_bound(group, classes, TABLE_BOUND)
}

pub fn character_table_with_bound(group: &MatrixGroup, classes: &ConjugacyData, bound: u64) -> Result<CharTable> {
    let order = classes.group_order();
    if order > bound {
        return Err(Error::GroupTooLarge { order, bound });
    }
    let n = classes.len();
    let e = u64::from(classes.exponent());
    let f = Fp(dixon_prime(e, order)?);
    let z = f.root_of_unity(e);

    let identity: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let mut done: Vec<Vec<u64>> = Vec::new();
    let mut pending = vec![Subspace { basis: identity, pivots: (0..n).collect() }];
    if n == 1 {
        done.push(vec![1]);
        pending.clear();
    }
    let mut order_by_size: Vec<usize> = (1..n).collect();
    order_by_size.sort_by_key(|&c| (classes.size(c), c));
    for &i in &order_by_size {
        if pending.is_empty() {
            break;
        }
        let m = class_matrix(group, classes, i, f);
        let mut next = Vec::new();
        for space in pending {
            let parts =
                split(f, &m, &space).ok_or_else(|| Error::TableFailure(format!("class matrix {i} does not split")))?;
            for part in parts {
                if part.basis.len() == 1 {
                    done.push(part.basis.into_iter().next().expect("one vector"));
                } else {
                    next.push(part);
                }
            }
        }
        pending = next;
    }
    if !pending.is_empty() {
        return Err(Error::TableFailure("class matrices do not separate all characters".into()));
    }
    if done.len() != n {
        return Err(Error::TableFailure(format!("found {} characters for {} classes", done.len(), n)));
    }

    let chars = done
        .into_par_iter()
        .map(|w| lift_character(group, classes, f, z, e, &w))
        .collect::<Result<Vec<_>>>()?;
    Ok(CharTable::from_characters(group.id(), order, classes.exponent(), chars))
}

/// Turns a central-character vector `w` (any scaling) into exact values.
fn lift_character(group: &MatrixGroup, classes: &ConjugacyData, f: Fp, z: u64, e: u64, w: &[u64]) -> Result<Character> {
    let n = classes.len();
    let order = classes.group_order();
    if w[0] == 0 {
        return Err(Error::TableFailure("central character vanishes at the identity".into()));
    }
    let s = f.inv(w[0]);
    let omega: Vec<u64> = w.iter().map(|&x| f.mul(x, s)).collect();
    // |G| / chi(1)^2 = sum_k omega_k omega_{k*} / |C_k|
    let mut sum = 0u64;
    for (k, &wk) in omega.iter().enumerate() {
        let term = f.mul(f.mul(wk, omega[classes.inverse_class(k)]), f.inv(f.reduce(classes.size(k))));
        sum = f.add(sum, term);
    }
    if sum == 0 {
        return Err(Error::TableFailure("degenerate central character".into()));
    }
    let deg_sq = f.mul(f.reduce(order), f.inv(sum));
    let degree = (1..=f.0 / 2)
        .find(|&d| f.mul(d, d) == deg_sq)
        .ok_or_else(|| Error::TableFailure("degree square has no small root".into()))?;
    let values_mod: Vec<u64> = (0..n)
        .map(|k| f.mul(f.mul(omega[k], degree), f.inv(f.reduce(classes.size(k)))))
        .collect();

    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let o = u64::from(classes.element_order(k));
        let zo = f.pow(z, e / o);
        let zo_inv = f.inv(zo);
        let o_inv = f.inv(f.reduce(o));
        let chi_pow: Vec<u64> = (0..o).map(|s| values_mod[classes.power_class(k, s)]).collect();
        let mut terms = Vec::new();
        let mut total = 0u64;
        for j in 0..o {
            let step = f.pow(zo_inv, j);
            let mut acc = 0u64;
            let mut w = 1u64;
            for &c in &chi_pow {
                acc = f.add(acc, f.mul(c, w));
                w = f.mul(w, step);
            }
            let mult = f.mul(acc, o_inv);
            if mult > degree {
                return Err(Error::TableFailure(format!("eigenvalue multiplicity out of range at class {k}")));
            }
            total += mult;
            if mult > 0 {
                terms.push(((j * (e / o)) as u32, mult as i64));
            }
        }
        if total != degree {
            return Err(Error::TableFailure(format!("eigenvalue multiplicities do not sum to the degree at class {k}")));
        }
        values.push(Cyclotomic::from_terms(e as u32, terms));
    }
    Ok(ClassFunction::new(group.id(), values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{Flavor, GroupSpec};
    use crate::ring::{Mode, RingSpec};

    fn table(p: u32, k: u32, r: u32, flavor: Flavor, mode: Mode) -> (CharTable, ConjugacyData) {
        let g = MatrixGroup::new(GroupSpec::new(RingSpec::new(p, k, r, mode).unwrap(), flavor)).unwrap();
        let c = g.conjugacy_classes();
        (character_table(&g, &c).unwrap(), c)
    }

    #[test]
    fn prime_choice() {
        // e = 6, |G| = 6: need l^2 > 24, l = 1 mod 6
        assert_eq!(dixon_prime(6, 6).unwrap(), 7);
        assert_eq!(dixon_prime(24, 48).unwrap(), 73);
    }

    #[test]
    fn charpoly_and_roots() {
        let f = Fp(7);
        // [[2, 1], [0, 3]] -> (x - 2)(x - 3) = x^2 - 5x + 6
        let p = charpoly(f, &[vec![2, 1], vec![0, 3]]);
        assert_eq!(p, vec![6, 2, 1]);
        assert_eq!(roots(f, &p), vec![2, 3]);
        let a = vec![vec![1, 2, 3], vec![4, 5, 6], vec![0, 1, 1]];
        let p = charpoly(f, &a);
        // trace 7 = 0, det = 1*(5-6) - 2*(4-0) + 3*(4-0) = -1 - 8 + 12 = 3
        assert_eq!(p[3], 1);
        assert_eq!(p[2], 0);
        assert_eq!(p[0], f.sub(0, 3));
    }

    #[test]
    fn s3_table() {
        let (t, c) = table(2, 1, 1, Flavor::Gl, Mode::Mixed);
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        assert!(t.validate(&c).unwrap().passed());
    }

    #[test]
    fn gl2_f3_table() {
        let (t, c) = table(3, 1, 1, Flavor::Gl, Mode::Mixed);
        assert_eq!(t.len(), 8);
        assert_eq!(t.degrees().iter().map(|d| d * d).sum::<i64>(), 48);
        assert!(t.validate(&c).unwrap().passed());
    }

    #[test]
    fn level_two_tables_validate() {
        for mode in [Mode::Mixed, Mode::Equal] {
            for flavor in [Flavor::Gl, Flavor::Sl] {
                let (t, c) = table(2, 1, 2, flavor, mode);
                let v = t.validate(&c).unwrap();
                assert!(v.passed(), "{v:?}");
            }
        }
    }
}
