//! Elements of the cyclotomic integers `Z[zeta_n]`.
//!
//! Values are kept as sparse multiplicity vectors `sum m_j zeta_n^j` over the
//! group ring `Z[C_n]`; this is the natural form of a character value (the
//! eigenvalue multiset) and keeps products cheap. Equality, zero tests and
//! rationality go through the canonical form, the reduction modulo the
//! cyclotomic polynomial `Phi_n` in the power basis `1, zeta, ..., zeta^(phi(n)-1)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use crate::scalar::Coeff;

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Phi_n`, low to high (monic).
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = poly_div_exact(&num, &div);
        }
    }
    let poly = Arc::new(num);
    cyclotomic_cache().lock().unwrap().insert(n, poly.clone());
    poly
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let dn = num.len() - 1;
    let mut quot = vec![0i64; dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

pub fn euler_phi(n: u32) -> u32 {
    (cyclotomic_poly(n).len() - 1) as u32
}

/// `sum coeff * zeta_order^exp`, exponents strictly increasing, no zero coefficients.
#[derive(Clone, Debug)]
pub struct Cyclotomic<T> {
    order: u32,
    terms: Vec<(u32, T)>,
}

impl<T: Coeff> Cyclotomic<T> {
    pub fn zero(order: u32) -> Self {
        assert!(order > 0);
        Cyclotomic { order, terms: Vec::new() }
    }

    pub fn from_int(order: u32, n: T) -> Self {
        Self::from_terms(order, [(0, n)])
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, T::one())
    }

    /// `zeta_order^j`.
    pub fn root(order: u32, j: u64) -> Self {
        Self::from_terms(order, [((j % u64::from(order)) as u32, T::one())])
    }

    pub fn from_terms<I>(order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, T)>,
    {
        let mut dense: Vec<T> = vec![T::zero(); order as usize];
        for (e, c) in terms {
            dense[(e % order) as usize] += c;
        }
        Self::from_dense(order, dense)
    }

    fn from_dense(order: u32, dense: Vec<T>) -> Self {
        let terms = dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e as u32, c)).collect();
        Cyclotomic { order, terms }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &[(u32, T)] {
        &self.terms
    }

    /// Multiplicity vector of length `order`.
    pub fn multiplicities(&self) -> Vec<T> {
        let mut dense = vec![T::zero(); self.order as usize];
        for (e, c) in &self.terms {
            dense[*e as usize] = c.clone();
        }
        dense
    }

    /// Re-expresses the value over `zeta_new` where `order | new_order`.
    pub fn with_order(&self, new_order: u32) -> Self {
        assert_eq!(new_order % self.order, 0, "{} does not divide {}", self.order, new_order);
        let f = new_order / self.order;
        Cyclotomic { order: new_order, terms: self.terms.iter().map(|(e, c)| (e * f, c.clone())).collect() }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            (self.clone(), other.clone())
        } else {
            let l = self.order.lcm(&other.order);
            (self.with_order(l), other.with_order(l))
        }
    }

    pub fn conj(&self) -> Self {
        self.galois(self.order as u64 - 1)
    }

    /// The ring map `zeta -> zeta^k` (an automorphism when `gcd(k, order) = 1`).
    pub fn galois(&self, k: u64) -> Self {
        let n = u64::from(self.order);
        Self::from_terms(self.order, self.terms.iter().map(|(e, c)| ((u64::from(*e) * k % n) as u32, c.clone())))
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero(self.order);
        }
        Cyclotomic { order: self.order, terms: self.terms.iter().map(|(e, c)| (*e, c.clone() * s.clone())).collect() }
    }

    /// Canonical coordinates in the power basis of `Q(zeta_n)`.
    pub fn canonical(&self) -> Vec<T> {
        let n = self.order as usize;
        let phi = cyclotomic_poly(self.order);
        let deg = phi.len() - 1;
        let mut acc = self.multiplicities();
        for d in (deg..n).rev() {
            let c = std::mem::replace(&mut acc[d], T::zero());
            if c.is_zero() {
                continue;
            }
            for (i, &pi) in phi[..deg].iter().enumerate() {
                if pi != 0 {
                    acc[d - deg + i] -= c.clone() * T::from_i64_exact(pi);
                }
            }
        }
        acc.truncate(deg);
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.canonical().iter().all(|c| c.is_zero())
    }

    /// The rational integer this value equals, if it is one.
    pub fn to_integer(&self) -> Option<T> {
        let c = self.canonical();
        if c[1..].iter().all(|v| v.is_zero()) {
            Some(c[0].clone())
        } else {
            None
        }
    }

    /// The value with canonical coordinates `coords` (power basis).
    pub fn from_canonical(order: u32, coords: Vec<T>) -> Self {
        Self::from_terms(order, coords.into_iter().enumerate().map(|(e, c)| (e as u32, c)))
    }

    /// `self / d`, when the quotient is again a cyclotomic integer.
    pub fn div_exact(&self, d: &T) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.terms.iter().all(|(_, c)| (c.clone() % d.clone()).is_zero()) {
            return Some(Cyclotomic {
                order: self.order,
                terms: self.terms.iter().map(|(e, c)| (*e, c.clone() / d.clone())).collect(),
            });
        }
        let canon = self.canonical();
        if canon.iter().all(|c| (c.clone() % d.clone()).is_zero()) {
            return Some(Self::from_canonical(self.order, canon.into_iter().map(|c| c / d.clone()).collect()));
        }
        None
    }

    /// Complex approximation, for display and quick sanity checks only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.terms {
            let angle = 2.0 * std::f64::consts::PI * f64::from(*e) / f64::from(self.order);
            let c = c.to_f64().unwrap_or(f64::NAN);
            re += c * angle.cos();
            im += c * angle.sin();
        }
        (re, im)
    }
}

impl<T: Coeff> PartialEq for Cyclotomic<T> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        if a.terms == b.terms {
            return true;
        }
        (&a - &b).is_zero()
    }
}

impl<T: Coeff> Eq for Cyclotomic<T> {}

impl<T: Coeff> Add for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;

    fn add(self, rhs: Self) -> Cyclotomic<T> {
        let (a, b) = self.common(rhs);
        let order = a.order;
        Cyclotomic::from_terms(order, a.terms.into_iter().chain(b.terms))
    }
}

impl<T: Coeff> Sub for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;

    fn sub(self, rhs: Self) -> Cyclotomic<T> {
        self + &(-rhs)
    }
}

impl<T: Coeff> Neg for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;

    fn neg(self) -> Cyclotomic<T> {
        Cyclotomic { order: self.order, terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl<T: Coeff> Mul for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;

    fn mul(self, rhs: Self) -> Cyclotomic<T> {
        let (a, b) = self.common(rhs);
        let mut acc = Accumulator::new(a.order);
        acc.add_product(&a, &b, &T::one());
        acc.finish()
    }
}

impl<T: Coeff> fmt::Display for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if *e == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z{}^{}", self.order, e)?;
            } else {
                write!(f, "{c}*z{}^{}", self.order, e)?;
            }
        }
        Ok(())
    }
}

/// Dense accumulator for sums of products over a common order.
#[derive(Clone, Debug)]
pub struct Accumulator<T> {
    order: u32,
    acc: Vec<T>,
}

impl<T: Coeff> Accumulator<T> {
    pub fn new(order: u32) -> Self {
        Accumulator { order, acc: vec![T::zero(); order as usize] }
    }

    /// `acc += s * a * b`.
    pub fn add_product(&mut self, a: &Cyclotomic<T>, b: &Cyclotomic<T>, s: &T) {
        debug_assert!(a.order == self.order && b.order == self.order);
        let n = self.order;
        for (ea, ca) in &a.terms {
            let sa = ca.clone() * s.clone();
            for (eb, cb) in &b.terms {
                let mut e = ea + eb;
                if e >= n {
                    e -= n;
                }
                self.acc[e as usize] += sa.clone() * cb.clone();
            }
        }
    }

    /// `acc += s * a * conj(b)`.
    pub fn add_product_conj(&mut self, a: &Cyclotomic<T>, b: &Cyclotomic<T>, s: &T) {
        debug_assert!(a.order == self.order && b.order == self.order);
        let n = self.order;
        for (ea, ca) in &a.terms {
            let sa = ca.clone() * s.clone();
            for (eb, cb) in &b.terms {
                let e = (ea + n - eb) % n;
                self.acc[e as usize] += sa.clone() * cb.clone();
            }
        }
    }

    pub fn add_scaled(&mut self, a: &Cyclotomic<T>, s: &T) {
        debug_assert_eq!(a.order, self.order);
        for (e, c) in &a.terms {
            self.acc[*e as usize] += c.clone() * s.clone();
        }
    }

    pub fn finish(self) -> Cyclotomic<T> {
        Cyclotomic::from_dense(self.order, self.acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Cyclotomic<i64>;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(72), 24);
    }

    #[test]
    fn roots_sum_to_zero() {
        for n in [2, 3, 4, 6, 12, 15, 72] {
            let s = (0..u64::from(n)).fold(C::zero(n), |acc, j| &acc + &C::root(n, j));
            assert!(s.is_zero());
        }
        // zeta_3 + zeta_3^2 = -1
        let v = &C::root(3, 1) + &C::root(3, 2);
        assert_eq!(v.to_integer(), Some(-1));
        assert_eq!(v, C::from_int(3, -1));
    }

    #[test]
    fn conjugation_and_mixed_orders() {
        let z = C::root(12, 5);
        assert_eq!(&z * &z.conj(), C::one(12));
        // zeta_4 = zeta_12^3
        assert_eq!(C::root(4, 1), C::root(12, 3));
        let s = &C::root(4, 1) + &C::root(6, 1);
        assert_eq!(s.order(), 12);
    }

    #[test]
    fn exact_division() {
        let v = C::from_terms(6, [(1, 4), (2, 6)]);
        assert_eq!(v.div_exact(&2), Some(C::from_terms(6, [(1, 2), (2, 3)])));
        assert_eq!(v.div_exact(&4), None);
        // 1 + z + z^2 = 0 can make a non-divisible multiplicity vector divisible
        let w = C::from_terms(3, [(0, 3), (1, 3), (2, 0)]);
        assert_eq!(w.div_exact(&3), Some(C::from_terms(3, [(0, 1), (1, 1)])));
        let u = C::from_terms(3, [(0, 4), (1, 4), (2, 1)]);
        assert_eq!(u.div_exact(&3), Some(C::from_terms(3, [(0, 1), (1, 1)])));
    }

    #[test]
    fn display() {
        assert_eq!(C::from_int(5, 3).to_string(), "3");
        assert_eq!((&C::root(5, 1) + &C::root(5, 1)).to_string(), "2*z5^1");
    }
}
