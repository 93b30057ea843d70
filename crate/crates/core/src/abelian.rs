//! Finite abelian groups given by an explicit element list and a
//! multiplication closure: invariant-factor basis, discrete logarithms, and
//! the character group.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use num_integer::Integer;

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A finite abelian group whose elements are labelled by `u32` ids from some
/// ambient enumeration.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    elements: Vec<u32>,
    identity: u32,
    gens: Vec<u32>,
    orders: Vec<u32>,
    exponent: u32,
    dlog: HashMap<u32, Vec<u32>>,
}

/// A character of an [`AbelianGroup`]: `gen_i -> exp(2 pi i * exps[i] / orders[i])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualChar {
    pub exps: Vec<u32>,
}

impl AbelianGroup {
    /// `mul` must be an associative, commutative operation on `elements` with
    /// identity `identity`.
    pub fn new<F>(elements: Vec<u32>, identity: u32, mul: F) -> Self
    where
        F: Fn(u32, u32) -> u32,
    {
        let order = elements.len() as u64;
        let pow = |x: u32, mut e: u64| {
            let mut base = x;
            let mut acc = identity;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                e >>= 1;
            }
            acc
        };

        // primary decomposition, one greedy basis per Sylow subgroup
        let mut primary: Vec<(u64, Vec<(u32, u64)>)> = Vec::new();
        for (prime, e) in factorize(order) {
            let cofactor = order / prime.pow(e);
            let mut sylow: Vec<u32> = elements.iter().map(|&x| pow(x, cofactor)).collect();
            sylow.sort_unstable();
            sylow.dedup();
            debug_assert_eq!(sylow.len() as u64, prime.pow(e));
            primary.push((prime, sylow_basis(&sylow, identity, prime, &mul, &pow)));
        }

        // combine the primary cyclic factors position-wise into invariant factors
        let rank = primary.iter().map(|(_, b)| b.len()).max().unwrap_or(0);
        let mut gens = vec![identity; rank];
        let mut orders = vec![1u64; rank];
        for (_, basis) in &primary {
            for (i, &(g, o)) in basis.iter().enumerate() {
                gens[i] = mul(gens[i], g);
                orders[i] *= o;
            }
        }
        let exponent = orders.first().copied().unwrap_or(1);

        // discrete logarithms by walking the mixed-radix exponent space
        let mut dlog = HashMap::with_capacity(elements.len());
        let mut exps = vec![0u32; rank];
        let mut cur = identity;
        loop {
            dlog.insert(cur, exps.clone());
            let mut i = 0;
            loop {
                if i == rank {
                    break;
                }
                exps[i] += 1;
                cur = mul(cur, gens[i]);
                if u64::from(exps[i]) < orders[i] {
                    break;
                }
                // gens[i]^orders[i] = 1, so cur already wrapped back
                exps[i] = 0;
                i += 1;
            }
            if i == rank {
                break;
            }
        }
        assert_eq!(dlog.len(), elements.len(), "basis does not generate the group");

        AbelianGroup {
            elements,
            identity,
            gens,
            orders: orders.into_iter().map(|o| o as u32).collect(),
            exponent: exponent as u32,
            dlog,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    /// Invariant-factor generators, largest order first.
    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn invariant_factors(&self) -> &[u32] {
        &self.orders
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn contains(&self, x: u32) -> bool {
        self.dlog.contains_key(&x)
    }

    pub fn log(&self, x: u32) -> Option<&[u32]> {
        self.dlog.get(&x).map(Vec::as_slice)
    }

    pub fn trivial_char(&self) -> DualChar {
        DualChar { exps: vec![0; self.gens.len()] }
    }

    /// All characters, lexicographic in the generator images.
    pub fn characters(&self) -> impl Iterator<Item = DualChar> + '_ {
        let total: u64 = self.orders.iter().map(|&o| u64::from(o)).product();
        (0..total).map(move |mut code| {
            let mut exps = vec![0; self.orders.len()];
            for i in (0..self.orders.len()).rev() {
                exps[i] = (code % u64::from(self.orders[i])) as u32;
                code /= u64::from(self.orders[i]);
            }
            DualChar { exps }
        })
    }

    /// `chi(x)` as an exponent of `exp(2 pi i / exponent)`.
    pub fn eval(&self, chi: &DualChar, x: u32) -> u32 {
        let log = &self.dlog[&x];
        self.eval_log(chi, log)
    }

    pub fn eval_log(&self, chi: &DualChar, log: &[u32]) -> u32 {
        let e = u64::from(self.exponent);
        let mut acc = 0u64;
        for ((&c, &a), &o) in chi.exps.iter().zip(log).zip(&self.orders) {
            acc += u64::from(c) * u64::from(a) * (e / u64::from(o));
        }
        (acc % e) as u32
    }

    pub fn char_mul(&self, a: &DualChar, b: &DualChar) -> DualChar {
        DualChar {
            exps: a.exps.iter().zip(&b.exps).zip(&self.orders).map(|((&x, &y), &o)| (x + y) % o).collect(),
        }
    }

    pub fn char_inv(&self, a: &DualChar) -> DualChar {
        DualChar { exps: a.exps.iter().zip(&self.orders).map(|(&x, &o)| (o - x) % o).collect() }
    }

    pub fn char_pow(&self, a: &DualChar, n: u32) -> DualChar {
        DualChar {
            exps: a
                .exps
                .iter()
                .zip(&self.orders)
                .map(|(&x, &o)| ((u64::from(x) * u64::from(n)) % u64::from(o)) as u32)
                .collect(),
        }
    }

    /// The character taking generator `i` to `exp(2 pi i * values[i] / denom)`.
    /// Each value must be a `orders[i]`-th root of unity.
    pub fn char_from_gen_values(&self, values: &[u32], denom: u32) -> DualChar {
        DualChar {
            exps: values
                .iter()
                .zip(&self.orders)
                .map(|(&v, &o)| {
                    let scaled = u64::from(v) * u64::from(o);
                    debug_assert_eq!(scaled % u64::from(denom), 0, "value is not an o-th root of unity");
                    ((scaled / u64::from(denom)) % u64::from(o)) as u32
                })
                .collect(),
        }
    }

    /// Order of a character in the dual group.
    pub fn char_order(&self, a: &DualChar) -> u32 {
        a.exps
            .iter()
            .zip(&self.orders)
            .map(|(&x, &o)| o / x.gcd(&o))
            .fold(1, |acc, o| acc.lcm(&o))
    }
}

/// Greedy basis of an abelian `p`-group: repeatedly take an element of
/// maximal order modulo the span so far and correct it into a complement.
fn sylow_basis<M, P>(sylow: &[u32], identity: u32, prime: u64, mul: &M, pow: &P) -> Vec<(u32, u64)>
where
    M: Fn(u32, u32) -> u32,
    P: Fn(u32, u64) -> u32,
{
    let mut span: HashMap<u32, Vec<u64>> = HashMap::from([(identity, Vec::new())]);
    let mut basis: Vec<(u32, u64)> = Vec::new();
    while span.len() < sylow.len() {
        // order of x modulo the span
        let rel_order = |x: u32| {
            let mut o = 1u64;
            let mut y = x;
            while !span.contains_key(&y) {
                y = pow(y, prime);
                o *= prime;
            }
            o
        };
        let (x, o) = sylow
            .iter()
            .map(|&x| (x, rel_order(x)))
            .max_by_key(|&(x, o)| (o, std::cmp::Reverse(x)))
            .expect("nonempty");
        // x^o = prod b_i^{a_i} with o | a_i; divide out
        let h = pow(x, o);
        let coords = &span[&h];
        let mut correction = identity;
        for (&(b, bo), &a) in basis.iter().zip(coords) {
            debug_assert_eq!(a % o, 0);
            let e = (bo - (a / o) % bo) % bo;
            correction = mul(correction, pow(b, e));
        }
        let y = mul(x, correction);
        debug_assert_eq!(pow(y, o), identity);

        let mut next = HashMap::with_capacity(span.len() * o as usize);
        for (&s, coords) in &span {
            let mut cur = s;
            for j in 0..o {
                let mut c = coords.clone();
                c.resize(basis.len(), 0);
                c.push(j);
                next.insert(cur, c);
                cur = mul(cur, y);
            }
        }
        for c in next.values_mut() {
            c.resize(basis.len() + 1, 0);
        }
        span = next;
        basis.push((y, o));
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod_units(n: u32) -> AbelianGroup {
        let elems: Vec<u32> = (1..n).filter(|x| x.gcd(&n) == 1).collect();
        AbelianGroup::new(elems, 1, move |a, b| a * b % n)
    }

    #[test]
    fn cyclic_and_noncyclic_unit_groups() {
        assert_eq!(zmod_units(9).invariant_factors(), &[6]);
        assert_eq!(zmod_units(8).invariant_factors(), &[2, 2]);
        assert_eq!(zmod_units(16).invariant_factors(), &[4, 2]);
        assert_eq!(zmod_units(15).invariant_factors(), &[4, 2]);
        assert_eq!(zmod_units(2).invariant_factors(), &[] as &[u32]);
    }

    #[test]
    fn characters_are_homomorphisms_and_distinct() {
        for n in [8, 9, 15, 21, 16] {
            let g = zmod_units(n);
            let chars: Vec<DualChar> = g.characters().collect();
            assert_eq!(chars.len(), g.order());
            let e = g.exponent();
            let mut seen = std::collections::HashSet::new();
            for chi in &chars {
                let values: Vec<u32> = g.elements().iter().map(|&x| g.eval(chi, x)).collect();
                assert!(seen.insert(values));
                for &a in g.elements() {
                    for &b in g.elements() {
                        assert_eq!(g.eval(chi, a * b % n), (g.eval(chi, a) + g.eval(chi, b)) % e);
                    }
                }
            }
        }
    }

    #[test]
    fn dual_group_operations() {
        let g = zmod_units(21);
        let chars: Vec<DualChar> = g.characters().collect();
        for a in &chars {
            assert!(g.char_mul(a, &g.char_inv(a)) == g.trivial_char());
            assert_eq!(g.char_pow(a, g.char_order(a)), g.trivial_char());
        }
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(72), vec![(2, 3), (3, 2)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }
}
