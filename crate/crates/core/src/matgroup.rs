//! `GL_2(O_r)` and `SL_2(O_r)` as fully enumerated finite groups.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::ring::{Elem, Ring, RingSpec};

/// Default enumeration bound.
pub const MAX_GROUP_ORDER: u64 = 500_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Gl,
    Sl,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Gl => "gl",
            Flavor::Sl => "sl",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Gl => "GL",
            Flavor::Sl => "SL",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Flavor::Gl),
            "sl" => Ok(Flavor::Sl),
            other => Err(Error::InvalidParameters(format!("unknown flavor {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub ring: RingSpec,
    pub flavor: Flavor,
}

impl GroupSpec {
    pub fn new(ring: RingSpec, flavor: Flavor) -> Self {
        GroupSpec { ring, flavor }
    }

    /// `q^{4(r-1)}(q^2-1)(q^2-q)` for GL, `q^{3(r-1)} q (q^2-1)` for SL.
    pub fn order_formula(&self) -> u64 {
        let q = self.ring.q();
        let r = self.ring.r;
        match self.flavor {
            Flavor::Gl => q.pow(4 * (r - 1)) * (q * q - 1) * (q * q - q),
            Flavor::Sl => q.pow(3 * (r - 1)) * q * (q * q - 1),
        }
    }

    pub fn at_level(&self, r: u32) -> GroupSpec {
        GroupSpec { ring: self.ring.at_level(r), flavor: self.flavor }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}2({})", self.flavor, self.ring)
    }
}

/// Which subgroup of the ambient `GL_2`/`SL_2` an enumerated group is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    Full,
    Borel,
}

/// Identity of an enumerated group, used to match class functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupId {
    pub spec: GroupSpec,
    pub part: Part,
}

/// `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub [Elem; 4]);

impl Mat2 {
    pub fn identity(ring: &Ring) -> Self {
        Mat2([ring.one(), ring.zero(), ring.zero(), ring.one()])
    }

    pub fn mul(&self, other: &Mat2, ring: &Ring) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = other.0;
        Mat2([
            ring.add(ring.mul(a, e), ring.mul(b, g)),
            ring.add(ring.mul(a, f), ring.mul(b, h)),
            ring.add(ring.mul(c, e), ring.mul(d, g)),
            ring.add(ring.mul(c, f), ring.mul(d, h)),
        ])
    }

    pub fn det(&self, ring: &Ring) -> Elem {
        let [a, b, c, d] = self.0;
        ring.sub(ring.mul(a, d), ring.mul(b, c))
    }

    pub fn trace(&self, ring: &Ring) -> Elem {
        ring.add(self.0[0], self.0[3])
    }

    pub fn inverse(&self, ring: &Ring) -> Result<Mat2> {
        let [a, b, c, d] = self.0;
        let inv = ring.invert(self.det(ring))?;
        Ok(Mat2([ring.mul(inv, d), ring.mul(inv, ring.neg(b)), ring.mul(inv, ring.neg(c)), ring.mul(inv, a)]))
    }

    /// Entrywise reduction to `O_{r'}`.
    pub fn reduce(&self, ring: &Ring, r_to: u32) -> Mat2 {
        Mat2(self.0.map(|x| ring.reduce_index(x, r_to)))
    }

    fn pack(&self, n: u32) -> u64 {
        self.0.iter().rev().fold(0u64, |acc, x| acc * u64::from(n) + u64::from(x.0))
    }
}

enum ElementIndex {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

const DENSE_INDEX_LIMIT: u64 = 1 << 22;
const ABSENT: u32 = u32::MAX;

/// An enumerated matrix group. Element `0` is the identity; the rest follow in
/// lexicographic order of their entries.
pub struct MatrixGroup {
    id: GroupId,
    ring: Arc<Ring>,
    elems: Vec<Mat2>,
    index: ElementIndex,
    inverse: Vec<u32>,
    gens: Vec<u32>,
}

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixGroup").field("id", &self.id).field("order", &self.elems.len()).finish()
    }
}

impl MatrixGroup {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        Self::with_bound(spec, MAX_GROUP_ORDER)
    }

    pub fn with_bound(spec: GroupSpec, bound: u64) -> Result<Self> {
        let order = spec.order_formula();
        if order > bound {
            return Err(Error::GroupTooLarge { order, bound });
        }
        let ring = Arc::new(Ring::new(spec.ring)?);
        Self::over_ring(spec, ring)
    }

    /// The group over an already constructed ring (which fixes the defining polynomial).
    pub fn over_ring(spec: GroupSpec, ring: Arc<Ring>) -> Result<Self> {
        if ring.spec() != spec.ring {
            return Err(Error::InvalidParameters(format!("ring {} does not match {}", ring.spec(), spec)));
        }
        let one = ring.one();
        let flavor = spec.flavor;
        let pred = |m: &Mat2, ring: &Ring| {
            let det = m.det(ring);
            match flavor {
                Flavor::Gl => ring.is_unit(det),
                Flavor::Sl => det == one,
            }
        };
        let mut group = Self::from_predicate(GroupId { spec, part: Part::Full }, ring.clone(), pred);
        // elementary matrices, plus diagonal matrices over unit generators for GL
        let mut gens = Vec::new();
        for b in ring.additive_generators() {
            gens.push(Mat2([one, b, ring.zero(), one]));
            gens.push(Mat2([one, ring.zero(), b, one]));
        }
        if flavor == Flavor::Gl {
            let units = AbelianGroup::new(ring.units().iter().map(|u| u.0).collect(), one.0, |a, b| {
                ring.mul(Elem(a), Elem(b)).0
            });
            for &u in units.generators() {
                gens.push(Mat2([Elem(u), ring.zero(), ring.zero(), one]));
            }
        }
        group.gens = gens.iter().map(|m| group.index_of(m).expect("generator lies in the group")).collect();
        group.gens.sort_unstable();
        group.gens.dedup();
        debug_assert_eq!(group.order() as u64, spec.order_formula());
        Ok(group)
    }

    /// Upper-triangular subgroup.
    pub fn borel(&self) -> MatrixGroup {
        let zero = self.ring.zero();
        let mut b = Self::from_predicate(GroupId { part: Part::Borel, ..self.id }, self.ring.clone(), |m, _| {
            m.0[2] == zero && self.contains(m)
        });
        b.gens = b.greedy_generators();
        b
    }

    fn from_predicate<P>(id: GroupId, ring: Arc<Ring>, pred: P) -> Self
    where
        P: Fn(&Mat2, &Ring) -> bool,
    {
        let n = ring.size();
        let identity = Mat2::identity(&ring);
        let mut elems = vec![identity];
        for code in 0..u64::from(n).pow(4) {
            let mut c = code;
            let mut e = [Elem(0); 4];
            for x in &mut e {
                *x = Elem((c % u64::from(n)) as u32);
                c /= u64::from(n);
            }
            let m = Mat2([e[3], e[2], e[1], e[0]]);
            if m != identity && pred(&m, &ring) {
                elems.push(m);
            }
        }
        let total = u64::from(n).pow(4);
        let index = if total <= DENSE_INDEX_LIMIT {
            let mut dense = vec![ABSENT; total as usize];
            for (i, m) in elems.iter().enumerate() {
                dense[m.pack(n) as usize] = i as u32;
            }
            ElementIndex::Dense(dense)
        } else {
            ElementIndex::Sparse(elems.iter().enumerate().map(|(i, m)| (m.pack(n), i as u32)).collect())
        };
        let mut group = MatrixGroup { id, ring, elems, index, inverse: Vec::new(), gens: Vec::new() };
        group.inverse = (0..group.elems.len())
            .map(|i| {
                let inv = group.elems[i].inverse(&group.ring).expect("group element is invertible");
                group.index_of(&inv).expect("group is closed under inverses")
            })
            .collect();
        group
    }

    /// Greedy generating set in index order.
    fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span: HashSet<u32> = HashSet::from([0]);
        for i in 0..self.order() as u32 {
            if span.contains(&i) {
                continue;
            }
            gens.push(i);
            span = self.closure(&gens);
            if span.len() == self.order() {
                break;
            }
        }
        gens
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> HashSet<u32> {
        let mut seen = HashSet::from([0u32]);
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    pub fn spec(&self) -> GroupSpec {
        self.id.spec
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elems
    }

    pub fn element(&self, i: u32) -> &Mat2 {
        &self.elems[i as usize]
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn index_of(&self, m: &Mat2) -> Option<u32> {
        let key = m.pack(self.ring.size());
        let i = match &self.index {
            ElementIndex::Dense(v) => *v.get(key as usize)?,
            ElementIndex::Sparse(h) => *h.get(&key)?,
        };
        (i != ABSENT).then_some(i)
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.index_of(m).is_some()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let m = self.elems[a as usize].mul(&self.elems[b as usize], &self.ring);
        self.index_of(&m).expect("group is closed under multiplication")
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> u32 {
        let mut o = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            o += 1;
        }
        o
    }

    pub fn det(&self, a: u32) -> Elem {
        self.elems[a as usize].det(&self.ring)
    }

    /// `g a g^{-1}`.
    pub fn conjugate(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn conjugacy_classes(&self) -> ConjugacyData {
        ConjugacyData::new(self)
    }

    /// Indices in `self` of the elements of `sub` (same ring required).
    pub fn embedding_of(&self, sub: &MatrixGroup) -> Result<Vec<u32>> {
        if sub.ring.spec() != self.ring.spec() || sub.ring.modulus() != self.ring.modulus() {
            return Err(Error::NotASubgroup);
        }
        sub.elems.iter().map(|m| self.index_of(m).ok_or(Error::NotASubgroup)).collect()
    }

    /// Reduction modulo `pi^{r'}` onto `target`, a group of the same flavor at level `r'`.
    pub fn reduction_to(&self, target: &MatrixGroup) -> Result<ReductionHom> {
        let r = self.spec().ring.r;
        let r_to = target.spec().ring.r;
        if r_to == 0 || r_to > r {
            return Err(Error::LevelOutOfRange { requested: r_to, max: r });
        }
        let expected = self.spec().at_level(r_to);
        if target.spec() != expected || target.id.part != self.id.part {
            return Err(Error::InvalidParameters(format!("{} is not a reduction of {}", target.spec(), self.spec())));
        }
        if target.ring.modulus() != self.ring.modulus() {
            return Err(Error::InvalidParameters("reduction requires a common defining polynomial".into()));
        }
        let map: Vec<u32> = self
            .elems
            .iter()
            .map(|m| target.index_of(&m.reduce(&self.ring, r_to)).ok_or(Error::NotASubgroup))
            .collect::<Result<_>>()?;
        let kernel: Vec<u32> = map.iter().enumerate().filter(|(_, &y)| y == 0).map(|(x, _)| x as u32).collect();
        let mut section = vec![ABSENT; target.order()];
        for (x, &y) in map.iter().enumerate() {
            if section[y as usize] == ABSENT {
                section[y as usize] = x as u32;
            }
        }
        if section.contains(&ABSENT) {
            return Err(Error::NotSurjective);
        }
        Ok(ReductionHom { source: self.id, target: target.id, map, kernel, section })
    }
}

/// A surjective reduction homomorphism `G_r -> G_{r'}` with its kernel.
#[derive(Clone, Debug)]
pub struct ReductionHom {
    pub source: GroupId,
    pub target: GroupId,
    /// Source element index to target element index.
    pub map: Vec<u32>,
    pub kernel: Vec<u32>,
    /// A preimage (least index) of every target element.
    pub section: Vec<u32>,
}

/// Conjugacy classes, ordered by least member; class `0` is the identity.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    group_order: u64,
    reps: Vec<u32>,
    sizes: Vec<u64>,
    class_of: Vec<u32>,
    members: Vec<Vec<u32>>,
    orders: Vec<u32>,
    power_maps: Vec<Vec<u32>>,
    inverse_class: Vec<u32>,
    exponent: u32,
}

impl ConjugacyData {
    fn new(group: &MatrixGroup) -> Self {
        let n = group.order();
        let mut class_of = vec![ABSENT; n];
        let mut members: Vec<Vec<u32>> = Vec::new();
        for start in 0..n as u32 {
            if class_of[start as usize] != ABSENT {
                continue;
            }
            let c = members.len() as u32;
            class_of[start as usize] = c;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &g in &group.gens {
                    let y = group.conjugate(x, g);
                    if class_of[y as usize] == ABSENT {
                        class_of[y as usize] = c;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        let reps: Vec<u32> = members.iter().map(|m| m[0]).collect();
        let sizes = members.iter().map(|m| m.len() as u64).collect();
        let orders: Vec<u32> = reps.iter().map(|&g| group.element_order(g)).collect();
        let power_maps = reps
            .iter()
            .zip(&orders)
            .map(|(&g, &o)| {
                let mut x = 0;
                (0..o)
                    .map(|_| {
                        let c = class_of[x as usize];
                        x = group.mul(x, g);
                        c
                    })
                    .collect()
            })
            .collect();
        let inverse_class = reps.iter().map(|&g| class_of[group.inv(g) as usize]).collect();
        let exponent = orders.iter().fold(1u32, |acc, &o| acc.lcm(&o));
        ConjugacyData {
            group_order: n as u64,
            reps,
            sizes,
            class_of,
            members,
            orders,
            power_maps,
            inverse_class,
            exponent,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn reps(&self) -> &[u32] {
        &self.reps
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn size(&self, c: usize) -> u64 {
        self.sizes[c]
    }

    pub fn centralizer_order(&self, c: usize) -> u64 {
        self.group_order / self.sizes[c]
    }

    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn members(&self, c: usize) -> &[u32] {
        &self.members[c]
    }

    pub fn element_order(&self, c: usize) -> u32 {
        self.orders[c]
    }

    /// Class of `g_c^s`.
    pub fn power_class(&self, c: usize, s: u64) -> usize {
        let o = u64::from(self.orders[c]);
        self.power_maps[c][(s % o) as usize] as usize
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c] as usize
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }
}
