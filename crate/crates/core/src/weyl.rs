//! Weyl groups of `GL_n`, `SL_n` and the split classical groups of types
//! `B`, `C`, `D`, realised as signed permutations of the cocharacter basis.
//! Torus twists, `F_q`-ranks, order polynomials and the conjectural sign.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::is_prime;

/// A split reductive group with its root datum in the standard realisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootDatum {
    Gl(u32),
    Sl(u32),
    B(u32),
    C(u32),
    D(u32),
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootDatum::Gl(n) => write!(f, "GL{n}"),
            RootDatum::Sl(n) => write!(f, "SL{n}"),
            RootDatum::B(n) => write!(f, "B{n}"),
            RootDatum::C(n) => write!(f, "C{n}"),
            RootDatum::D(n) => write!(f, "D{n}"),
        }
    }
}

impl std::str::FromStr for RootDatum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::InvalidParameters(s.into()))?;
        let n: u32 = s[split..].parse().map_err(|_| Error::InvalidParameters(s.into()))?;
        let d = match s[..split].to_ascii_lowercase().as_str() {
            "gl" => RootDatum::Gl(n),
            "sl" => RootDatum::Sl(n),
            "b" => RootDatum::B(n),
            "c" => RootDatum::C(n),
            "d" => RootDatum::D(n),
            _ => return Err(Error::InvalidParameters(format!("unknown root datum {s}"))),
        };
        d.check()?;
        Ok(d)
    }
}

impl RootDatum {
    pub fn check(&self) -> Result<()> {
        let ok = match *self {
            RootDatum::Gl(n) | RootDatum::Sl(n) => (2..=8).contains(&n),
            RootDatum::B(n) | RootDatum::C(n) => (2..=5).contains(&n),
            RootDatum::D(n) => (3..=5).contains(&n),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("{self} outside the supported range")))
        }
    }

    /// Dimension of the cocharacter lattice acted on by `W`.
    pub fn n(&self) -> usize {
        match *self {
            RootDatum::Gl(n) | RootDatum::Sl(n) | RootDatum::B(n) | RootDatum::C(n) | RootDatum::D(n) => n as usize,
        }
    }

    fn signed(&self) -> bool {
        !matches!(self, RootDatum::Gl(_) | RootDatum::Sl(_))
    }

    /// `rk_q(G)` for the split group.
    pub fn rank(&self) -> u32 {
        match *self {
            RootDatum::Sl(n) => n - 1,
            _ => self.n() as u32,
        }
    }

    /// Semisimple rank.
    pub fn semisimple_rank(&self) -> u32 {
        match *self {
            RootDatum::Gl(n) | RootDatum::Sl(n) => n - 1,
            _ => self.n() as u32,
        }
    }

    /// Positive roots as vectors in `Z^n`.
    pub fn positive_roots(&self) -> Vec<Vec<i32>> {
        let n = self.n();
        let e = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        let add = |a: &[i32], b: &[i32], s: i32| a.iter().zip(b).map(|(x, y)| x + s * y).collect::<Vec<_>>();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push(add(&e(i), &e(j), -1));
                if self.signed() {
                    out.push(add(&e(i), &e(j), 1));
                }
            }
            match self {
                RootDatum::B(_) => out.push(e(i)),
                RootDatum::C(_) => out.push(add(&e(i), &e(i), 1)),
                _ => {}
            }
        }
        out
    }

    pub fn positive_root_count(&self) -> u64 {
        let n = self.n() as u64;
        match self {
            RootDatum::Gl(_) | RootDatum::Sl(_) => n * (n - 1) / 2,
            RootDatum::B(_) | RootDatum::C(_) => n * n,
            RootDatum::D(_) => n * (n - 1),
        }
    }

    /// Degrees of the basic invariants of `W` (a `1` for the central torus of `GL_n`).
    pub fn degrees(&self) -> Vec<u32> {
        let n = self.n() as u32;
        match self {
            RootDatum::Gl(_) => (1..=n).collect(),
            RootDatum::Sl(_) => (2..=n).collect(),
            RootDatum::B(_) | RootDatum::C(_) => (1..=n).map(|i| 2 * i).collect(),
            RootDatum::D(_) => (1..n).map(|i| 2 * i).chain([n]).collect(),
        }
    }

    pub fn simple_reflections(&self) -> Vec<SignedPerm> {
        let n = self.n();
        let mut out: Vec<SignedPerm> = (0..n - 1).map(|i| SignedPerm::transposition(n, i, i + 1)).collect();
        match self {
            RootDatum::B(_) | RootDatum::C(_) => {
                let mut s = SignedPerm::identity(n);
                s.0[n - 1] = -(n as i8);
                out.push(s);
            }
            RootDatum::D(_) => {
                let mut s = SignedPerm::identity(n);
                s.0[n - 2] = -(n as i8);
                s.0[n - 1] = -(n as i8 - 1);
                out.push(s);
            }
            _ => {}
        }
        out
    }

    /// Product of the simple reflections in their standard order.
    pub fn coxeter_element(&self) -> SignedPerm {
        self.simple_reflections().iter().fold(SignedPerm::identity(self.n()), |acc, s| acc.compose(s))
    }

    /// Coxeter number `2 |Phi^+| / semisimple rank`.
    pub fn coxeter_number(&self) -> u64 {
        2 * self.positive_root_count() / u64::from(self.semisimple_rank())
    }

    /// All elements of `W`.
    pub fn weyl_group(&self) -> Vec<SignedPerm> {
        let n = self.n();
        let mut perms = Vec::new();
        permutations(&mut (1..=n as i8).collect::<Vec<_>>(), 0, &mut perms);
        if !self.signed() {
            return perms.into_iter().map(SignedPerm).collect();
        }
        let mut out = Vec::new();
        for p in perms {
            for mask in 0u32..(1 << n) {
                if matches!(self, RootDatum::D(_)) && mask.count_ones() % 2 == 1 {
                    continue;
                }
                let v = p.iter().enumerate().map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x }).collect();
                out.push(SignedPerm(v));
            }
        }
        out
    }

    pub fn weyl_order(&self) -> u64 {
        self.degrees().iter().map(|&d| u64::from(d)).product()
    }

    /// `rk_q` of the torus twisted by `w`: fixed-space dimension of `w` on the
    /// cocharacter space (the trace-zero part for `SL_n`).
    pub fn torus_rank(&self, w: &SignedPerm) -> u32 {
        let full = w.fixed_dimension();
        match self {
            RootDatum::Sl(_) => full - 1,
            _ => full,
        }
    }

    /// `|G(F_q)|`.
    pub fn group_order(&self, q: u64) -> Result<u128> {
        let qq = u128::from(q);
        let mut acc = pow_checked(qq, self.positive_root_count())?;
        for d in self.degrees() {
            acc = acc
                .checked_mul(pow_checked(qq, u64::from(d))? - 1)
                .ok_or_else(|| Error::InvalidParameters("order polynomial overflows".into()))?;
        }
        Ok(acc)
    }

    /// `|T_w(F_q)| = |det(q - w)|` on the cocharacter space.
    pub fn torus_order(&self, w: &SignedPerm, q: u64) -> Result<u128> {
        let m = w.matrix();
        let n = m.len();
        let a: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { q as i128 } else { 0 } - i128::from(m[i][j])).collect())
            .collect();
        let det = bareiss(a).unsigned_abs();
        Ok(match self {
            RootDatum::Sl(_) => det / u128::from(q - 1),
            _ => det,
        })
    }

    /// Centralizer of `w` in `W`.
    pub fn twisted_fixed_subgroup(&self, w: &SignedPerm) -> Vec<SignedPerm> {
        self.weyl_group().into_iter().filter(|x| x.compose(w) == w.compose(x)).collect()
    }

    /// One representative per conjugacy class of `W` (least element first).
    pub fn twist_classes(&self) -> Vec<TwistClass> {
        let mut elems = self.weyl_group();
        elems.sort();
        let inverses: Vec<SignedPerm> = elems.iter().map(SignedPerm::inverse).collect();
        let mut seen: HashMap<SignedPerm, usize> = HashMap::new();
        let mut out = Vec::new();
        for w in &elems {
            if seen.contains_key(w) {
                continue;
            }
            let id = out.len();
            let mut size = 0;
            for (g, gi) in elems.iter().zip(&inverses) {
                let c = g.compose(w).compose(gi);
                if seen.insert(c, id).is_none() {
                    size += 1;
                }
            }
            out.push(TwistClass { rep: w.clone(), size, label: w.cycle_type() });
        }
        out
    }

    /// `|G(F_q)|_{p'} / |T_w(F_q)|`.
    pub fn classical_r1_dim(&self, w: &SignedPerm, q: u64) -> Result<u128> {
        let g = self.group_order(q)?;
        let p_part = pow_checked(u128::from(q), self.positive_root_count())?;
        let t = self.torus_order(w, q)?;
        let pp = g / p_part;
        if pp % t != 0 {
            return Err(Error::Inconsistent(format!("|T| does not divide |G|_p' for {self}")));
        }
        Ok(pp / t)
    }
}

fn pow_checked(b: u128, e: u64) -> Result<u128> {
    let e = u32::try_from(e).map_err(|_| Error::InvalidParameters("exponent".into()))?;
    b.checked_pow(e).ok_or_else(|| Error::InvalidParameters("order polynomial overflows".into()))
}

fn permutations(v: &mut Vec<i8>, k: usize, out: &mut Vec<Vec<i8>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

fn bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// `w(e_i) = sign * e_{|v[i]|}` with 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPerm(pub Vec<i8>);

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm((1..=n as i8).collect())
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut s = Self::identity(n);
        s.0.swap(i, j);
        s
    }

    fn image(&self, i: i8) -> i8 {
        let v = self.0[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm(other.0.iter().map(|&x| self.image(x)).collect())
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut v = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            let s = if x < 0 { -1 } else { 1 };
            v[x.unsigned_abs() as usize - 1] = s * (i as i8 + 1);
        }
        SignedPerm(v)
    }

    pub fn order(&self) -> u64 {
        let id = Self::identity(self.0.len());
        let mut cur = self.clone();
        let mut k = 1;
        while cur != id {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }

    /// Matrix on `Q^n` (columns are images of basis vectors).
    pub fn matrix(&self) -> Vec<Vec<i32>> {
        let n = self.0.len();
        let mut m = vec![vec![0; n]; n];
        for (i, &x) in self.0.iter().enumerate() {
            m[x.unsigned_abs() as usize - 1][i] = i32::from(x.signum());
        }
        m
    }

    /// `dim ker(w - 1)` over `Q`.
    pub fn fixed_dimension(&self) -> u32 {
        let m = self.matrix();
        let n = m.len();
        let mut a: Vec<Vec<Ratio<i64>>> = (0..n)
            .map(|i| (0..n).map(|j| Ratio::from_integer(i64::from(m[i][j]) - i64::from(i == j))).collect())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&i| !a[i][col].is_zero()) else { continue };
            a.swap(rank, piv);
            let inv = Ratio::one() / a[rank][col];
            for i in 0..n {
                if i != rank && !a[i][col].is_zero() {
                    let f = a[i][col] * inv;
                    for j in col..n {
                        let d = a[rank][j] * f;
                        a[i][j] -= d;
                    }
                }
            }
            rank += 1;
        }
        (n - rank) as u32
    }

    /// Signed cycles `(length, positive)` sorted by decreasing length.
    pub fn cycles(&self) -> Vec<(u32, bool)> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut sign = 1i8;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                let x = self.0[i];
                sign *= x.signum();
                i = x.unsigned_abs() as usize - 1;
            }
            out.push((len, sign > 0));
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    pub fn cycle_type(&self) -> String {
        let signed = self.0.iter().any(|&x| x < 0);
        let parts: Vec<String> = self
            .cycles()
            .iter()
            .map(|&(l, pos)| if signed || !pos { format!("{l}{}", if pos { "+" } else { "-" }) } else { l.to_string() })
            .collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistClass {
    pub rep: SignedPerm,
    pub size: usize,
    pub label: String,
}

/// `|n|_p` as an exponent: the largest `a` with `p^a | n`.
pub fn p_adic_valuation(mut n: u128, p: u64) -> u32 {
    let p = u128::from(p);
    let mut a = 0;
    while n != 0 && n.is_multiple_of(p) {
        n /= p;
        a += 1;
    }
    a
}

/// Outcome of the conjectural sign formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureSign {
    /// `a` with `|dim|_p = p^a`.
    pub p_exponent: u32,
    /// `(rk_T + rk_G)(1 + log_q |dim|_p / #Phi^+)` as `num/den`.
    pub exponent: (i64, i64),
    /// `None` when the exponent is not an integer.
    pub sign: Option<i8>,
}

impl ConjectureSign {
    pub fn is_applicable(&self) -> bool {
        self.sign.is_some()
    }

    pub fn exponent_string(&self) -> String {
        let (n, d) = self.exponent;
        if d == 1 {
            n.to_string()
        } else {
            format!("{n}/{d}")
        }
    }
}

/// `(-1)^{(rk_T + rk_G)(1 + log_q |dim|_p / #Phi^+)}`, `q = p^k`.
pub fn conjecture_sign(rk_t: u32, rk_g: u32, p: u64, k: u32, positive_roots: u64, dim: i128) -> Result<ConjectureSign> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if !is_prime(p) || k == 0 || positive_roots == 0 {
        return Err(Error::InvalidParameters(format!("p = {p}, k = {k}, #Phi+ = {positive_roots}")));
    }
    let a = p_adic_valuation(dim.unsigned_abs(), p);
    let log_q = Ratio::new(i64::from(a), i64::from(k));
    let e = Ratio::from_integer(i64::from(rk_t + rk_g))
        * (Ratio::one() + log_q / Ratio::from_integer(positive_roots as i64));
    let sign = e.is_integer().then(|| if e.to_integer().abs() % 2 == 0 { 1 } else { -1 });
    Ok(ConjectureSign { p_exponent: a, exponent: (*e.numer(), *e.denom()), sign })
}

/// One row of the classical `r = 1` sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub group: String,
    pub twist: String,
    pub twist_rep: SignedPerm,
    pub q: u64,
    pub rk_t: u32,
    pub rk_g: u32,
    pub dim: u128,
    pub p_exponent: u32,
    pub exponent: String,
    pub sign: Option<i8>,
    pub classical_sign: i8,
    pub verdict: String,
}

/// Splits a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::InvalidParameters(format!("{q} is not a prime power")));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q >= 2");
    let mut k = 0;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    if m != 1 {
        return Err(Error::InvalidParameters(format!("{q} is not a prime power")));
    }
    Ok((p, k))
}

/// Sweeps every twist class of every datum for every `q`.
pub fn sweep(data: &[RootDatum], qs: &[u64]) -> Result<Vec<SweepRecord>> {
    let mut jobs = Vec::new();
    for &d in data {
        d.check()?;
        for t in d.twist_classes() {
            for &q in qs {
                jobs.push((d, t.clone(), q));
            }
        }
    }
    jobs.par_iter()
        .map(|(d, t, q)| {
            let (p, k) = prime_power(*q)?;
            let dim = d.classical_r1_dim(&t.rep, *q)?;
            let rk_t = d.torus_rank(&t.rep);
            let rk_g = d.rank();
            let classical_sign = if (rk_g - rk_t) % 2 == 0 { 1 } else { -1 };
            let signed_dim = i128::try_from(dim).map_err(|_| Error::InvalidParameters("overflow".into()))?
                * i128::from(classical_sign);
            let c = conjecture_sign(rk_t, rk_g, p, k, d.positive_root_count(), signed_dim)?;
            let verdict = match c.sign {
                None => "inapplicable",
                Some(s) if s == classical_sign => "pass",
                Some(_) => "fail",
            };
            Ok(SweepRecord {
                group: d.to_string(),
                twist: t.label.clone(),
                twist_rep: t.rep.clone(),
                q: *q,
                rk_t,
                rk_g,
                dim,
                p_exponent: c.p_exponent,
                exponent: c.exponent_string(),
                sign: c.sign,
                classical_sign,
                verdict: verdict.into(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [RootDatum; 9] = [
        RootDatum::Gl(2),
        RootDatum::Gl(4),
        RootDatum::Sl(2),
        RootDatum::Sl(3),
        RootDatum::B(2),
        RootDatum::B(3),
        RootDatum::C(3),
        RootDatum::D(3),
        RootDatum::D(4),
    ];

    #[test]
    fn root_and_weyl_counts() {
        for d in ALL {
            assert_eq!(d.positive_roots().len() as u64, d.positive_root_count(), "{d}");
            assert_eq!(d.weyl_group().len() as u64, d.weyl_order(), "{d}");
        }
    }

    #[test]
    fn coxeter_elements() {
        for d in ALL {
            let c = d.coxeter_element();
            assert_eq!(c.order(), d.coxeter_number(), "{d}");
        }
        for n in 2..=6 {
            let c = RootDatum::Gl(n).coxeter_element();
            assert_eq!(c.cycles(), vec![(n, true)]);
            assert_eq!(RootDatum::Gl(n).twisted_fixed_subgroup(&c).len(), n as usize);
        }
    }

    #[test]
    fn ranks_of_coxeter_tori() {
        let gl2 = RootDatum::Gl(2);
        let sl2 = RootDatum::Sl(2);
        let w = gl2.coxeter_element();
        assert_eq!((gl2.torus_rank(&w), gl2.rank()), (1, 2));
        assert_eq!((sl2.torus_rank(&w), sl2.rank()), (0, 1));
        for d in ALL {
            let id = SignedPerm::identity(d.n());
            assert_eq!(d.torus_rank(&id), d.rank());
            assert_eq!(d.twisted_fixed_subgroup(&id).len() as u64, d.weyl_order());
        }
    }

    #[test]
    fn order_polynomials() {
        assert_eq!(RootDatum::Gl(2).group_order(3).unwrap(), 48);
        assert_eq!(RootDatum::Sl(2).group_order(5).unwrap(), 120);
        assert_eq!(RootDatum::B(2).group_order(3).unwrap(), 51840);
        let gl2 = RootDatum::Gl(2);
        let w = gl2.coxeter_element();
        assert_eq!(gl2.torus_order(&w, 3).unwrap(), 8);
        assert_eq!(gl2.classical_r1_dim(&w, 3).unwrap(), 2);
        assert_eq!(gl2.classical_r1_dim(&SignedPerm::identity(2), 3).unwrap(), 4);
        assert_eq!(RootDatum::Sl(2).torus_order(&w, 3).unwrap(), 4);
    }

    #[test]
    fn torus_orders_from_cycles() {
        let q = 5u128;
        for d in [RootDatum::Gl(4), RootDatum::B(3), RootDatum::D(4)] {
            for t in d.twist_classes() {
                let expected: u128 = t
                    .rep
                    .cycles()
                    .iter()
                    .map(|&(c, pos)| if pos { q.pow(c) - 1 } else { q.pow(c) + 1 })
                    .product();
                assert_eq!(d.torus_order(&t.rep, 5).unwrap(), expected, "{d} {}", t.label);
            }
        }
    }

    #[test]
    fn twist_class_counts() {
        assert_eq!(RootDatum::Gl(4).twist_classes().len(), 5);
        assert_eq!(RootDatum::Gl(5).twist_classes().len(), 7);
        assert_eq!(RootDatum::B(3).twist_classes().len(), 10);
        assert_eq!(RootDatum::D(4).twist_classes().len(), 13);
        let total: usize = RootDatum::B(3).twist_classes().iter().map(|t| t.size).sum();
        assert_eq!(total, 48);
    }

    #[test]
    fn conjecture_sign_examples() {
        let c = conjecture_sign(1, 2, 3, 1, 1, 6).unwrap();
        assert_eq!((c.exponent, c.sign), ((6, 1), Some(1)));
        assert_eq!(conjecture_sign(1, 2, 3, 1, 1, -2).unwrap().sign, Some(-1));
        assert_eq!(conjecture_sign(0, 1, 2, 1, 1, -1).unwrap().sign, Some(-1));
        let half = conjecture_sign(1, 2, 2, 2, 1, 2).unwrap();
        assert_eq!(half.sign, None);
        assert_eq!(half.exponent_string(), "9/2");
        assert!(conjecture_sign(1, 2, 3, 1, 1, 0).is_err());
    }

    #[test]
    fn conjecture_sign_only_sees_p_part() {
        for dim in [6i128, -6, 12, 30, -42] {
            assert_eq!(conjecture_sign(1, 2, 3, 1, 1, dim).unwrap().sign, Some(1));
        }
    }

    #[test]
    fn small_sweep_passes() {
        let rows = sweep(&[RootDatum::Gl(4)], &[2, 3, 5, 7]).unwrap();
        assert_eq!(rows.len(), 20);
        assert!(rows.iter().all(|r| r.verdict == "pass"));
    }

    #[test]
    fn parse_datum() {
        assert_eq!("GL3".parse::<RootDatum>().unwrap(), RootDatum::Gl(3));
        assert_eq!("d4".parse::<RootDatum>().unwrap(), RootDatum::D(4));
        assert!("E6".parse::<RootDatum>().is_err());
        assert_eq!(prime_power(8).unwrap(), (2, 3));
        assert!(prime_power(12).is_err());
    }
}
