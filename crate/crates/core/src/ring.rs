//! Finite local rings `O_r = O / pi^r` and their unramified quadratic extensions.
//!
//! Two models of `O_r` with residue field `F_q`, `q = p^k`, are supported:
//!
//! * mixed characteristic: the Galois ring `GR(p^r, k) = (Z/p^r)[x] / (f)`, `pi = p`;
//! * equal characteristic: the truncated power series ring `F_q[t] / t^r`, `pi = t`.
//!
//! Elements are dense coefficient vectors packed into a single integer index, so
//! equality is structural. All ring operations go through precomputed tables.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ring for which operation tables are built.
pub const MAX_RING_SIZE: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Equal,
    Mixed,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Equal => "equal",
            Mode::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "equal" => Ok(Mode::Equal),
            "mixed" => Ok(Mode::Mixed),
            other => Err(Error::InvalidParameters(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u32,
    pub k: u32,
    pub r: u32,
    pub mode: Mode,
}

impl RingSpec {
    pub fn new(p: u32, k: u32, r: u32, mode: Mode) -> Result<Self> {
        if !is_prime(u64::from(p)) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || r == 0 {
            return Err(Error::InvalidParameters(format!("k = {k} and r = {r} must be positive")));
        }
        Ok(RingSpec { p, k, r, mode })
    }

    pub fn q(&self) -> u64 {
        u64::from(self.p).pow(self.k)
    }

    pub fn size(&self) -> u64 {
        self.q().pow(self.r)
    }

    pub fn unit_count(&self) -> u64 {
        self.q().pow(self.r - 1) * (self.q() - 1)
    }

    pub fn at_level(&self, r: u32) -> RingSpec {
        RingSpec { r, ..*self }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} k={} r={} mode={}", self.p, self.k, self.r, self.mode)
    }
}

/// An element of some [`Ring`], identified by its packed coefficient vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub u32);

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p, coefficients low to high.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = mod_inv(u64::from(b[db]), u64::from(p)).expect("nonzero lead") as u32;
    while rem.len() > db {
        let d = rem.len() - 1;
        let c = (u64::from(rem[d]) * u64::from(lead_inv) % u64::from(p)) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let idx = d - db + i;
            let sub = (u64::from(c) * u64::from(bi) % u64::from(p)) as u32;
            rem[idx] = (rem[idx] + p - sub) % p;
        }
        poly_trim(&mut rem);
    }
    rem
}

fn monic_from_code(code: u64, degree: u32, p: u32) -> Vec<u32> {
    let mut c = code;
    let mut poly = Vec::with_capacity(degree as usize + 1);
    for _ in 0..degree {
        poly.push((c % u64::from(p)) as u32);
        c /= u64::from(p);
    }
    poly.push(1);
    poly
}

/// Irreducibility over `F_p` by trial division with every monic polynomial of
/// degree at most `deg/2`.
pub fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let mut f = f.to_vec();
    poly_trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for code in 0..u64::from(p).pow(d) {
            let g = monic_from_code(code, d, p);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible polynomial of the given degree
/// over `F_p`, ordering candidates by `sum c_i p^i` over the non-leading
/// coefficients.
pub fn least_irreducible(p: u32, degree: u32) -> Vec<u32> {
    (0..u64::from(p).pow(degree))
        .map(|code| monic_from_code(code, degree, p))
        .find(|f| is_irreducible_mod_p(f, p))
        .expect("irreducible polynomials exist in every degree")
}

pub(crate) fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// The ring `O_r` with operation tables.
#[derive(Clone)]
pub struct Ring {
    spec: RingSpec,
    modulus: Vec<u32>,
    q: u32,
    size: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    units: Vec<Elem>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring").field("spec", &self.spec).field("modulus", &self.modulus).finish()
    }
}

const NONE: u32 = u32::MAX;

impl Ring {
    /// Builds `O_r` using the least irreducible polynomial of degree `k` over `F_p`.
    pub fn new(spec: RingSpec) -> Result<Self> {
        let f = least_irreducible(spec.p, spec.k);
        Self::with_modulus(spec, f)
    }

    /// Builds `O_r` with a caller-chosen monic degree-`k` polynomial over `F_p`
    /// (coefficients low to high, each below `p`).
    pub fn with_modulus(spec: RingSpec, modulus: Vec<u32>) -> Result<Self> {
        let spec = RingSpec::new(spec.p, spec.k, spec.r, spec.mode)?;
        if modulus.len() != spec.k as usize + 1
            || modulus[spec.k as usize] != 1
            || modulus.iter().any(|&c| c >= spec.p)
        {
            return Err(Error::InvalidParameters(format!(
                "modulus {modulus:?} is not a monic degree-{} polynomial over F_{}",
                spec.k, spec.p
            )));
        }
        if !is_irreducible_mod_p(&modulus, spec.p) {
            return Err(Error::ReducibleModulus(modulus));
        }
        let size = spec.size();
        if size > MAX_RING_SIZE {
            return Err(Error::RingTooLarge { size, bound: MAX_RING_SIZE });
        }
        let n = size as usize;
        let mut ring = Ring {
            spec,
            q: spec.q() as u32,
            size: size as u32,
            modulus,
            add: vec![0; n * n],
            mul: vec![0; n * n],
            neg: vec![0; n],
            inv: vec![NONE; n],
            units: Vec::new(),
        };
        ring.build_tables()?;
        Ok(ring)
    }

    /// The same construction at another level, sharing the defining polynomial.
    pub fn at_level(&self, r: u32) -> Result<Ring> {
        if r == 0 {
            return Err(Error::LevelOutOfRange { requested: r, max: self.spec.r });
        }
        Ring::with_modulus(self.spec.at_level(r), self.modulus.clone())
    }

    fn residue_field(&self) -> Result<Ring> {
        Ring::with_modulus(
            RingSpec { r: 1, mode: Mode::Mixed, ..self.spec },
            self.modulus.clone(),
        )
    }

    fn build_tables(&mut self) -> Result<()> {
        let n = self.size as usize;
        let coeffs: Vec<Vec<u32>> = (0..n as u32).map(|i| self.coeffs(Elem(i))).collect();
        match self.spec.mode {
            Mode::Mixed => {
                let m = u64::from(self.spec.p).pow(self.spec.r);
                let k = self.spec.k as usize;
                for a in 0..n {
                    for b in 0..n {
                        let sum: Vec<u32> = (0..k)
                            .map(|i| ((u64::from(coeffs[a][i]) + u64::from(coeffs[b][i])) % m) as u32)
                            .collect();
                        self.add[a * n + b] = self.pack(&sum).0;
                        let prod = self.mixed_mul(&coeffs[a], &coeffs[b], m);
                        self.mul[a * n + b] = self.pack(&prod).0;
                    }
                }
            }
            Mode::Equal => {
                let field = self.residue_field()?;
                let r = self.spec.r as usize;
                for a in 0..n {
                    for b in 0..n {
                        let sum: Vec<u32> =
                            (0..r).map(|j| field.add(Elem(coeffs[a][j]), Elem(coeffs[b][j])).0).collect();
                        self.add[a * n + b] = self.pack(&sum).0;
                        let mut prod = vec![Elem(0); r];
                        for i in 0..r {
                            if coeffs[a][i] == 0 {
                                continue;
                            }
                            for j in 0..r - i {
                                let t = field.mul(Elem(coeffs[a][i]), Elem(coeffs[b][j]));
                                prod[i + j] = field.add(prod[i + j], t);
                            }
                        }
                        let prod: Vec<u32> = prod.into_iter().map(|e| e.0).collect();
                        self.mul[a * n + b] = self.pack(&prod).0;
                    }
                }
            }
        }
        let one = self.one().0 as usize;
        for a in 0..n {
            for b in 0..n {
                if self.add[a * n + b] == 0 {
                    self.neg[a] = b as u32;
                }
                if self.mul[a * n + b] as usize == one {
                    self.inv[a] = b as u32;
                }
            }
        }
        self.units = (0..n as u32).filter(|&a| self.inv[a as usize] != NONE).map(Elem).collect();
        Ok(())
    }

    fn mixed_mul(&self, a: &[u32], b: &[u32], m: u64) -> Vec<u32> {
        let k = self.spec.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + u64::from(a[i]) * u64::from(b[j])) % m;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let sub = c * u64::from(self.modulus[i]) % m;
                prod[d - k + i] = (prod[d - k + i] + m - sub) % m;
            }
        }
        prod.truncate(k);
        prod.into_iter().map(|c| c as u32).collect()
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Radix of one packed coefficient: `p^r` in mixed mode, `q` in equal mode.
    fn radix(&self) -> u32 {
        match self.spec.mode {
            Mode::Mixed => self.spec.p.pow(self.spec.r),
            Mode::Equal => self.q,
        }
    }

    fn width(&self) -> usize {
        match self.spec.mode {
            Mode::Mixed => self.spec.k as usize,
            Mode::Equal => self.spec.r as usize,
        }
    }

    /// Canonical coefficients: `k` values in `Z/p^r` (mixed) or `r` residue-field
    /// indices, lowest power of `t` first (equal).
    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        let radix = self.radix();
        let mut v = x.0;
        (0..self.width())
            .map(|_| {
                let c = v % radix;
                v /= radix;
                c
            })
            .collect()
    }

    fn pack(&self, coeffs: &[u32]) -> Elem {
        let radix = self.radix();
        Elem(coeffs.iter().rev().fold(0u32, |acc, &c| acc * radix + c))
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.width() || coeffs.iter().any(|&c| c >= self.radix()) {
            return Err(Error::InvalidParameters(format!("{coeffs:?} is not a coefficient vector")));
        }
        Ok(self.pack(coeffs))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        let mut acc = self.zero();
        let step = if n >= 0 { self.one() } else { self.neg(self.one()) };
        for _ in 0..n.unsigned_abs() % u64::from(self.spec.p).pow(self.spec.r) {
            acc = self.add(acc, step);
        }
        acc
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[(a.0 * self.size + b.0) as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[(a.0 * self.size + b.0) as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.inv[a.0 as usize] != NONE
    }

    pub fn invert(&self, a: Elem) -> Result<Elem> {
        match self.inv[a.0 as usize] {
            NONE => Err(Error::NotInvertible),
            b => Ok(Elem(b)),
        }
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn units(&self) -> &[Elem] {
        &self.units
    }

    /// The uniformiser: `p` in mixed mode, `t` in equal mode (zero when `r = 1`).
    pub fn pi(&self) -> Elem {
        self.pi_pow(1)
    }

    pub fn pi_pow(&self, j: u32) -> Elem {
        if j >= self.spec.r {
            return self.zero();
        }
        match self.spec.mode {
            Mode::Mixed => {
                let mut c = vec![0; self.width()];
                c[0] = self.spec.p.pow(j);
                self.pack(&c)
            }
            Mode::Equal => {
                let mut c = vec![0; self.width()];
                c[j as usize] = 1;
                self.pack(&c)
            }
        }
    }

    /// `pi`-adic valuation; `r` for zero.
    pub fn valuation(&self, x: Elem) -> u32 {
        let c = self.coeffs(x);
        match self.spec.mode {
            Mode::Mixed => c
                .iter()
                .filter(|&&v| v != 0)
                .map(|&v| {
                    let mut v = v;
                    let mut e = 0;
                    while v % self.spec.p == 0 {
                        v /= self.spec.p;
                        e += 1;
                    }
                    e
                })
                .min()
                .unwrap_or(self.spec.r),
            Mode::Equal => c.iter().position(|&v| v != 0).map_or(self.spec.r, |j| j as u32),
        }
    }

    /// Packed index of the image of `x` in `O_{r'}` (same defining polynomial).
    pub fn reduce_index(&self, x: Elem, r_to: u32) -> Elem {
        debug_assert!(r_to >= 1 && r_to <= self.spec.r);
        let c = self.coeffs(x);
        match self.spec.mode {
            Mode::Mixed => {
                let m = self.spec.p.pow(r_to);
                Elem(c.iter().rev().fold(0u32, |acc, &v| acc * m + v % m))
            }
            Mode::Equal => Elem(c[..r_to as usize].iter().rev().fold(0u32, |acc, &v| acc * self.q + v)),
        }
    }

    /// Canonical section of reduction: lifts the packed index of an element of
    /// `O_{r_from}` digitwise into this ring.
    pub fn lift_index(&self, x: Elem, r_from: u32) -> Elem {
        debug_assert!(r_from >= 1 && r_from <= self.spec.r);
        match self.spec.mode {
            Mode::Mixed => {
                let m = self.spec.p.pow(r_from);
                let mut v = x.0;
                let c: Vec<u32> = (0..self.width())
                    .map(|_| {
                        let d = v % m;
                        v /= m;
                        d
                    })
                    .collect();
                self.pack(&c)
            }
            Mode::Equal => Elem(x.0),
        }
    }

    /// Residue class in `F_q` (packed as an element of the level-1 ring).
    pub fn residue(&self, x: Elem) -> Elem {
        self.reduce_index(x, 1)
    }

    pub fn lift_residue(&self, x: Elem) -> Elem {
        self.lift_index(x, 1)
    }

    /// For `x` in `pi^j O_r`, the unique `y` in `O_{r-j}` with `x = pi^j * lift(y)`,
    /// packed at level `r - j`.
    pub fn div_pi_pow(&self, x: Elem, j: u32) -> Result<Elem> {
        let r = self.spec.r;
        if j >= r {
            return Err(Error::LevelOutOfRange { requested: j, max: r - 1 });
        }
        if self.valuation(x) < j {
            return Err(Error::InvalidParameters(format!("{x:?} is not divisible by pi^{j}")));
        }
        let c = self.coeffs(x);
        Ok(match self.spec.mode {
            Mode::Mixed => {
                let d = self.spec.p.pow(j);
                let m = self.spec.p.pow(r - j);
                Elem(c.iter().rev().fold(0u32, |acc, &v| acc * m + v / d))
            }
            Mode::Equal => Elem(c[j as usize..].iter().rev().fold(0u32, |acc, &v| acc * self.q + v)),
        })
    }

    /// Absolute trace `F_q -> F_p` of a residue-field element, as an integer mod `p`.
    /// Only meaningful on a level-1 ring.
    pub fn abs_trace(&self, y: Elem) -> u32 {
        debug_assert_eq!(self.spec.r, 1);
        let mut acc = self.zero();
        let mut cur = y;
        for _ in 0..self.spec.k {
            acc = self.add(acc, cur);
            cur = self.pow(cur, u64::from(self.spec.p));
        }
        let c = self.coeffs(acc);
        debug_assert!(c[1..].iter().all(|&v| v == 0));
        c[0]
    }

    /// An `F_p`-basis (`Z/p^r`-basis in mixed mode) generating the additive group.
    pub fn additive_generators(&self) -> Vec<Elem> {
        let w = self.width();
        match self.spec.mode {
            Mode::Mixed => (0..w)
                .map(|i| {
                    let mut c = vec![0; w];
                    c[i] = 1;
                    self.pack(&c)
                })
                .collect(),
            Mode::Equal => {
                let mut out = Vec::new();
                for j in 0..w {
                    for i in 0..self.spec.k {
                        let mut c = vec![0; w];
                        c[j] = self.spec.p.pow(i);
                        out.push(self.pack(&c));
                    }
                }
                out
            }
        }
    }

    pub fn fmt_elem(&self, x: Elem) -> String {
        format!("{:?}", self.coeffs(x))
    }
}

/// Element of the quadratic extension `O'_r = O_r[xi] / (xi^2 - c1 xi - c0)`,
/// packed as `a + |O_r| * b` for `a + b xi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtElem(pub u32);

/// The unramified quadratic extension of a [`Ring`].
#[derive(Clone, Debug)]
pub struct ExtRing {
    base: Arc<Ring>,
    c0: Elem,
    c1: Elem,
    residue_poly: [Elem; 2],
}

impl ExtRing {
    /// Adjoins a root of the least monic irreducible quadratic `y^2 + h1 y + h0`
    /// over the residue field, ordered by `h0 + q * h1`.
    pub fn new(base: Arc<Ring>) -> Result<Self> {
        let field = base.at_level(1)?;
        let q = field.size();
        let (h0, h1) = (0..q * q)
            .map(|code| (Elem(code % q), Elem(code / q)))
            .find(|&(h0, h1)| {
                field.elements().all(|y| {
                    let v = field.add(field.add(field.mul(y, y), field.mul(h1, y)), h0);
                    v != field.zero()
                })
            })
            .expect("an irreducible quadratic exists over every finite field");
        Self::with_residue_poly(base, h0, h1)
    }

    pub fn with_residue_poly(base: Arc<Ring>, h0: Elem, h1: Elem) -> Result<Self> {
        let field = base.at_level(1)?;
        let irreducible = field.elements().all(|y| {
            field.add(field.add(field.mul(y, y), field.mul(h1, y)), h0) != field.zero()
        });
        if !irreducible {
            return Err(Error::ReducibleModulus(vec![h0.0, h1.0, 1]));
        }
        let size = u64::from(base.size()).pow(2);
        if size > u64::from(u32::MAX) {
            return Err(Error::RingTooLarge { size, bound: u64::from(u32::MAX) });
        }
        let c0 = base.neg(base.lift_residue(h0));
        let c1 = base.neg(base.lift_residue(h1));
        Ok(ExtRing { base, c0, c1, residue_poly: [h0, h1] })
    }

    pub fn base(&self) -> &Arc<Ring> {
        &self.base
    }

    /// `(h0, h1)` with `y^2 + h1 y + h0` the residue defining polynomial.
    pub fn residue_poly(&self) -> (Elem, Elem) {
        (self.residue_poly[0], self.residue_poly[1])
    }

    /// `(c0, c1)` with `xi^2 = c1 xi + c0`.
    pub fn relation(&self) -> (Elem, Elem) {
        (self.c0, self.c1)
    }

    pub fn at_level(&self, r: u32) -> Result<ExtRing> {
        let base = Arc::new(self.base.at_level(r)?);
        ExtRing::with_residue_poly(base, self.residue_poly[0], self.residue_poly[1])
    }

    pub fn size(&self) -> u32 {
        self.base.size() * self.base.size()
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElem> {
        (0..self.size()).map(ExtElem)
    }

    #[inline]
    pub fn make(&self, a: Elem, b: Elem) -> ExtElem {
        ExtElem(a.0 + self.base.size() * b.0)
    }

    #[inline]
    pub fn parts(&self, x: ExtElem) -> (Elem, Elem) {
        (Elem(x.0 % self.base.size()), Elem(x.0 / self.base.size()))
    }

    pub fn embed(&self, a: Elem) -> ExtElem {
        self.make(a, self.base.zero())
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem(0)
    }

    pub fn one(&self) -> ExtElem {
        self.embed(self.base.one())
    }

    pub fn xi(&self) -> ExtElem {
        self.make(self.base.zero(), self.base.one())
    }

    pub fn add(&self, x: ExtElem, y: ExtElem) -> ExtElem {
        let (a, b) = self.parts(x);
        let (c, d) = self.parts(y);
        self.make(self.base.add(a, c), self.base.add(b, d))
    }

    pub fn neg(&self, x: ExtElem) -> ExtElem {
        let (a, b) = self.parts(x);
        self.make(self.base.neg(a), self.base.neg(b))
    }

    pub fn sub(&self, x: ExtElem, y: ExtElem) -> ExtElem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: ExtElem, y: ExtElem) -> ExtElem {
        let ring = &*self.base;
        let (a, b) = self.parts(x);
        let (c, d) = self.parts(y);
        let bd = ring.mul(b, d);
        let re = ring.add(ring.mul(a, c), ring.mul(bd, self.c0));
        let im = ring.add(ring.add(ring.mul(a, d), ring.mul(b, c)), ring.mul(bd, self.c1));
        self.make(re, im)
    }

    pub fn scale(&self, s: Elem, x: ExtElem) -> ExtElem {
        let (a, b) = self.parts(x);
        self.make(self.base.mul(s, a), self.base.mul(s, b))
    }

    pub fn pow(&self, x: ExtElem, mut e: u64) -> ExtElem {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The nontrivial automorphism over the base: `xi -> c1 - xi`, the other root
    /// of the defining quadratic.
    pub fn frobenius(&self, x: ExtElem) -> ExtElem {
        let ring = &*self.base;
        let (a, b) = self.parts(x);
        self.make(ring.add(a, ring.mul(b, self.c1)), ring.neg(b))
    }

    pub fn norm(&self, x: ExtElem) -> Elem {
        let n = self.mul(x, self.frobenius(x));
        debug_assert_eq!(self.parts(n).1, self.base.zero());
        self.parts(n).0
    }

    pub fn trace(&self, x: ExtElem) -> Elem {
        let t = self.add(x, self.frobenius(x));
        debug_assert_eq!(self.parts(t).1, self.base.zero());
        self.parts(t).0
    }

    pub fn is_unit(&self, x: ExtElem) -> bool {
        self.base.is_unit(self.norm(x))
    }

    pub fn invert(&self, x: ExtElem) -> Result<ExtElem> {
        let n_inv = self.base.invert(self.norm(x))?;
        Ok(self.scale(n_inv, self.frobenius(x)))
    }

    pub fn units(&self) -> Vec<ExtElem> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    pub fn reduce_index(&self, x: ExtElem, r_to: u32) -> ExtElem {
        let (a, b) = self.parts(x);
        let n_to = self.base.q().pow(r_to);
        ExtElem(self.base.reduce_index(a, r_to).0 + n_to * self.base.reduce_index(b, r_to).0)
    }

    pub fn lift_index(&self, x: ExtElem, r_from: u32) -> ExtElem {
        let n_from = self.base.q().pow(r_from);
        let (a, b) = (Elem(x.0 % n_from), Elem(x.0 / n_from));
        self.make(self.base.lift_index(a, r_from), self.base.lift_index(b, r_from))
    }

    /// `1 + pi^j * lift(x)` for `x` in the residue extension `F_{q^2}`.
    pub fn one_plus_pi_pow(&self, j: u32, x: ExtElem) -> ExtElem {
        let lifted = self.lift_index(x, 1);
        self.add(self.one(), self.scale(self.base.pi_pow(j), lifted))
    }

    /// Componentwise [`Ring::div_pi_pow`], packed at level `r - j`.
    pub fn div_pi_pow(&self, x: ExtElem, j: u32) -> Result<ExtElem> {
        let (a, b) = self.parts(x);
        let n_to = self.base.q().pow(self.base.spec().r - j);
        Ok(ExtElem(self.base.div_pi_pow(a, j)?.0 + n_to * self.base.div_pi_pow(b, j)?.0))
    }
}
