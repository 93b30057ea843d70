//! Class functions and character tables.

mod dixon;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, DualChar};
use crate::cyclo::{Accumulator, Cyclotomic};
use crate::error::{Error, Result};
use crate::matgroup::{ConjugacyData, GroupId, MatrixGroup, ReductionHom};
use crate::scalar::Coeff;

pub use dixon::{character_table, dixon_prime, TABLE_BOUND};

/// A class function with exact cyclotomic values, all over a common `zeta_order`.
#[derive(Clone, Debug)]
pub struct ClassFunction<T> {
    group: GroupId,
    order: u32,
    values: Vec<Cyclotomic<T>>,
}

impl<T: Coeff> ClassFunction<T> {
    pub fn new(group: GroupId, values: Vec<Cyclotomic<T>>) -> Self {
        let order = values.iter().fold(1u32, |acc, v| acc.lcm(&v.order()));
        let values = values.into_iter().map(|v| if v.order() == order { v } else { v.with_order(order) }).collect();
        ClassFunction { group, order, values }
    }

    pub fn constant(group: GroupId, classes: usize, n: T) -> Self {
        ClassFunction { group, order: 1, values: vec![Cyclotomic::from_int(1, n); classes] }
    }

    pub fn trivial(group: GroupId, classes: usize) -> Self {
        Self::constant(group, classes, T::one())
    }

    pub fn zero(group: GroupId, classes: usize) -> Self {
        Self::constant(group, classes, T::zero())
    }

    /// Integer-valued class function.
    pub fn from_integers(group: GroupId, values: Vec<T>) -> Self {
        ClassFunction { group, order: 1, values: values.into_iter().map(|v| Cyclotomic::from_int(1, v)).collect() }
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn values(&self) -> &[Cyclotomic<T>] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic<T> {
        &self.values[class]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the identity class.
    pub fn degree(&self) -> Result<T> {
        self.values[0].to_integer().ok_or(Error::NotRational)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.group != other.group || self.values.len() != other.values.len() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    fn zip_with<F>(&self, other: &Self, f: F) -> Result<Self>
    where
        F: Fn(&Cyclotomic<T>, &Cyclotomic<T>) -> Cyclotomic<T>,
    {
        self.check(other)?;
        Ok(Self::new(self.group, self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        ClassFunction { group: self.group, order: self.order, values: self.values.iter().map(|v| -v).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        ClassFunction { group: self.group, order: self.order, values: self.values.iter().map(|v| v.scale(s)).collect() }
    }

    pub fn conj(&self) -> Self {
        ClassFunction { group: self.group, order: self.order, values: self.values.iter().map(|v| v.conj()).collect() }
    }

    /// Structural equality of values (group identity included).
    pub fn same_values(&self, other: &Self) -> bool {
        self.group == other.group
            && self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a == b)
    }
}

impl<T: Coeff> PartialEq for ClassFunction<T> {
    fn eq(&self, other: &Self) -> bool {
        self.same_values(other)
    }
}

/// `sum_c |C_c| a(c) conj(b(c))`, i.e. `|G| <a, b>`.
pub fn weighted_pairing<T: Coeff>(classes: &ConjugacyData, a: &ClassFunction<T>, b: &ClassFunction<T>) -> Result<Cyclotomic<T>> {
    a.check(b)?;
    if a.len() != classes.len() {
        return Err(Error::GroupMismatch);
    }
    let order = a.order.lcm(&b.order);
    let mut acc = Accumulator::new(order);
    for (c, (x, y)) in a.values.iter().zip(&b.values).enumerate() {
        let x = if x.order() == order { x.clone() } else { x.with_order(order) };
        let y = if y.order() == order { y.clone() } else { y.with_order(order) };
        acc.add_product_conj(&x, &y, &T::from_u64_exact(classes.size(c)));
    }
    Ok(acc.finish())
}

/// `<a, b> = |G|^{-1} sum_g a(g) conj(b(g))`, exact.
pub fn inner_product<T: Coeff>(classes: &ConjugacyData, a: &ClassFunction<T>, b: &ClassFunction<T>) -> Result<Ratio<T>> {
    let s = weighted_pairing(classes, a, b)?;
    let n = s.to_integer().ok_or(Error::NotRational)?;
    Ok(Ratio::new(n, T::from_u64_exact(classes.group_order())))
}

/// Pulls back a class function on the target of `hom` to its source.
pub fn inflate<T: Coeff>(
    chi: &ClassFunction<T>,
    hom: &ReductionHom,
    source_classes: &ConjugacyData,
    target_classes: &ConjugacyData,
) -> Result<ClassFunction<T>> {
    if chi.group != hom.target || chi.len() != target_classes.len() {
        return Err(Error::GroupMismatch);
    }
    if hom.section.len() as u64 != target_classes.group_order() {
        return Err(Error::NotSurjective);
    }
    let values = source_classes
        .reps()
        .iter()
        .map(|&g| chi.values[target_classes.class_of(hom.map[g as usize])].clone())
        .collect();
    Ok(ClassFunction { group: hom.source, order: chi.order, values })
}

/// Restriction along an embedding `H -> G` (element indices of `H` to element indices of `G`).
pub fn restrict<T: Coeff>(
    chi: &ClassFunction<T>,
    embedding: &[u32],
    group_classes: &ConjugacyData,
    sub: GroupId,
    sub_classes: &ConjugacyData,
) -> Result<ClassFunction<T>> {
    if chi.len() != group_classes.len() || embedding.len() as u64 != sub_classes.group_order() {
        return Err(Error::GroupMismatch);
    }
    let values = sub_classes
        .reps()
        .iter()
        .map(|&h| chi.values[group_classes.class_of(embedding[h as usize])].clone())
        .collect();
    Ok(ClassFunction { group: sub, order: chi.order, values })
}

/// `Ind_H^G phi(g) = |C_G(g)| / |H| * sum_{h in H, h ~ g} phi(h)`.
pub fn induce<T: Coeff>(
    phi: &ClassFunction<T>,
    embedding: &[u32],
    sub_classes: &ConjugacyData,
    group: GroupId,
    group_classes: &ConjugacyData,
) -> Result<ClassFunction<T>> {
    if phi.len() != sub_classes.len() || embedding.len() as u64 != sub_classes.group_order() {
        return Err(Error::GroupMismatch);
    }
    if !group_classes.group_order().is_multiple_of(sub_classes.group_order()) {
        return Err(Error::NotASubgroup);
    }
    let mut sums: Vec<Accumulator<T>> = (0..group_classes.len()).map(|_| Accumulator::new(phi.order)).collect();
    for (h, &g) in embedding.iter().enumerate() {
        let v = &phi.values[sub_classes.class_of(h as u32)];
        sums[group_classes.class_of(g)].add_scaled(v, &T::one());
    }
    let h_order = T::from_u64_exact(sub_classes.group_order());
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(c, acc)| {
            let s = acc.finish().scale(&T::from_u64_exact(group_classes.centralizer_order(c)));
            s.div_exact(&h_order).ok_or_else(|| Error::Inconsistent("induced value is not integral".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction { group, order: phi.order, values })
}

/// Permutation character on the cosets of a subgroup given by its elements in `G`.
pub fn permutation_character<T: Coeff>(subgroup: &[u32], group: GroupId, classes: &ConjugacyData) -> Result<ClassFunction<T>> {
    let h = subgroup.len() as u64;
    if h == 0 || !classes.group_order().is_multiple_of(h) {
        return Err(Error::NotASubgroup);
    }
    let mut counts = vec![0u64; classes.len()];
    for &x in subgroup {
        counts[classes.class_of(x)] += 1;
    }
    let values = counts
        .iter()
        .enumerate()
        .map(|(c, &n)| {
            let num = n * classes.centralizer_order(c);
            if !num.is_multiple_of(h) {
                return Err(Error::Inconsistent("permutation character is not integral".into()));
            }
            Ok(T::from_u64_exact(num / h))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction::from_integers(group, values))
}

/// `St = Ind_B^G 1 - 1` on a level-one group.
pub fn steinberg<T: Coeff>(group: &MatrixGroup, classes: &ConjugacyData) -> Result<ClassFunction<T>> {
    if group.spec().ring.r != 1 {
        return Err(Error::LevelOutOfRange { requested: group.spec().ring.r, max: 1 });
    }
    let borel = group.borel();
    let emb = group.embedding_of(&borel)?;
    let perm = permutation_character::<T>(&emb, group.id(), classes)?;
    let st = perm.sub(&ClassFunction::trivial(group.id(), classes.len()))?;
    if inner_product(classes, &st, &st)? != Ratio::from_integer(T::one()) {
        return Err(Error::Inconsistent("Steinberg character is not irreducible".into()));
    }
    Ok(st)
}

/// The linear character `g -> alpha(det g)`, with `units` the unit group of the ring.
pub fn det_character<T: Coeff>(
    group: &MatrixGroup,
    classes: &ConjugacyData,
    units: &AbelianGroup,
    alpha: &DualChar,
) -> ClassFunction<T> {
    let e = units.exponent();
    let values = classes
        .reps()
        .iter()
        .map(|&g| Cyclotomic::root(e, u64::from(units.eval(alpha, group.det(g).0))))
        .collect();
    ClassFunction::new(group.id(), values)
}

/// Pointwise product with a linear character.
pub fn tensor_linear<T: Coeff>(chi: &ClassFunction<T>, linear: &ClassFunction<T>) -> Result<ClassFunction<T>> {
    if !linear.degree()?.is_one() {
        return Err(Error::InvalidParameters("twisting character is not linear".into()));
    }
    chi.mul(linear)
}

/// Coset data of a reduction `G -> Q` with kernel `N`: for every class of `Q`
/// the class distribution of a fixed lifted coset `g N`.
#[derive(Clone, Debug)]
pub struct CosetCensus {
    counts: Vec<Vec<(usize, u64)>>,
    kernel_order: u64,
}

impl CosetCensus {
    pub fn new(
        group: &MatrixGroup,
        hom: &ReductionHom,
        source_classes: &ConjugacyData,
        target_classes: &ConjugacyData,
    ) -> Self {
        let counts = target_classes
            .reps()
            .iter()
            .map(|&x| {
                let g = hom.section[x as usize];
                let mut c = vec![0u64; source_classes.len()];
                for &n in &hom.kernel {
                    c[source_classes.class_of(group.mul(g, n))] += 1;
                }
                c.into_iter().enumerate().filter(|(_, v)| *v > 0).collect()
            })
            .collect();
        CosetCensus { counts, kernel_order: hom.kernel.len() as u64 }
    }

    pub fn kernel_order(&self) -> u64 {
        self.kernel_order
    }

    /// `|N| psi^N` on the classes of the quotient.
    pub fn coset_sums<T: Coeff>(&self, psi: &ClassFunction<T>) -> Vec<Cyclotomic<T>> {
        self.counts
            .iter()
            .map(|row| {
                let mut acc = Accumulator::new(psi.order);
                for &(c, n) in row {
                    acc.add_scaled(&psi.values[c], &T::from_u64_exact(n));
                }
                acc.finish()
            })
            .collect()
    }
}

/// Both sides of `|G| <infl chi, psi>_G = |G| <chi, psi^N>_Q`, the second
/// computed from kernel-coset sums (`|G| = |Q| |N|`).
pub fn adjunction_sides<T: Coeff>(
    chi: &ClassFunction<T>,
    psi: &ClassFunction<T>,
    hom: &ReductionHom,
    census: &CosetCensus,
    source_classes: &ConjugacyData,
    target_classes: &ConjugacyData,
) -> Result<(Cyclotomic<T>, Cyclotomic<T>)> {
    if psi.group != hom.source || chi.group != hom.target {
        return Err(Error::GroupMismatch);
    }
    let inflated = inflate(chi, hom, source_classes, target_classes)?;
    let lhs = weighted_pairing(source_classes, &inflated, psi)?;
    let sums = census.coset_sums(psi);
    let order = chi.order.lcm(&psi.order);
    let mut acc = Accumulator::new(order);
    for (c, (x, y)) in chi.values.iter().zip(&sums).enumerate() {
        acc.add_product_conj(&x.with_order(order), &y.with_order(order), &T::from_u64_exact(target_classes.size(c)));
    }
    Ok((lhs, acc.finish()))
}

pub fn adjunction_check<T: Coeff>(
    chi: &ClassFunction<T>,
    psi: &ClassFunction<T>,
    hom: &ReductionHom,
    census: &CosetCensus,
    source_classes: &ConjugacyData,
    target_classes: &ConjugacyData,
) -> Result<bool> {
    let (lhs, rhs) = adjunction_sides(chi, psi, hom, census, source_classes, target_classes)?;
    Ok(lhs == rhs)
}

/// Integer character table entries.
pub type Character = ClassFunction<i64>;

/// The irreducible characters of a group, ordered by degree and then by value vectors.
#[derive(Clone, Debug)]
pub struct CharTable {
    group: GroupId,
    group_order: u64,
    exponent: u32,
    chars: Vec<Character>,
}

/// Outcome of the exact validity checks on a computed table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableValidation {
    pub classes: usize,
    pub irreducibles: usize,
    pub degree_square_sum: u64,
    pub group_order: u64,
    pub rows_orthonormal: bool,
    pub columns_orthogonal: bool,
}

impl TableValidation {
    pub fn passed(&self) -> bool {
        self.classes == self.irreducibles
            && self.degree_square_sum == self.group_order
            && self.rows_orthonormal
            && self.columns_orthogonal
    }
}

impl CharTable {
    pub fn from_characters(group: GroupId, group_order: u64, exponent: u32, mut chars: Vec<Character>) -> Self {
        chars.sort_by_cached_key(|c| {
            let deg = c.degree().unwrap_or(i64::MAX);
            let key: Vec<Vec<i64>> = c.values.iter().map(|v| v.with_order(exponent.lcm(&v.order())).multiplicities()).collect();
            (deg, key)
        });
        CharTable { group, group_order, exponent, chars }
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn characters(&self) -> &[Character] {
        &self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.chars.iter().map(|c| c.degree().expect("table degrees are integers")).collect()
    }

    pub fn count_degree(&self, d: i64) -> usize {
        self.degrees().into_iter().filter(|&x| x == d).count()
    }

    /// Position of an irreducible with exactly these values.
    pub fn find(&self, chi: &Character) -> Option<usize> {
        self.chars.iter().position(|c| c.same_values(chi))
    }

    /// Multiplicities `<chi, irr_i>` of a virtual character.
    pub fn decompose(&self, classes: &ConjugacyData, chi: &Character) -> Result<Vec<i64>> {
        self.chars
            .iter()
            .map(|irr| {
                let m = inner_product(classes, chi, irr)?;
                if m.is_integer() {
                    Ok(m.to_integer())
                } else {
                    Err(Error::NotRational)
                }
            })
            .collect()
    }

    pub fn validate(&self, classes: &ConjugacyData) -> Result<TableValidation> {
        let n = self.chars.len();
        let degree_square_sum = self.degrees().iter().map(|&d| (d * d) as u64).sum();
        let g = self.group_order as i64;
        let order = self.chars.iter().fold(self.exponent, |acc, c| acc.lcm(&c.order));
        let chars: Vec<Character> = self
            .chars
            .iter()
            .map(|c| ClassFunction::new(c.group, c.values.iter().map(|v| v.with_order(order)).collect()))
            .collect();
        let rows_orthonormal = classes.len() == chars.first().map_or(0, |c| c.len())
            && (0..n).into_par_iter().all(|a| {
                (a..n).all(|b| match weighted_pairing(classes, &chars[a], &chars[b]) {
                    Ok(s) => s.to_integer() == Some(if a == b { g } else { 0 }),
                    Err(_) => false,
                })
            });
        let m = classes.len();
        let columns_orthogonal = n == m
            && (0..m).into_par_iter().all(|k| {
                (k..m).all(|l| {
                    let mut acc = Accumulator::new(order);
                    for c in &chars {
                        acc.add_product_conj(&c.values[k], &c.values[l], &1);
                    }
                    let expected = if k == l { classes.centralizer_order(k) as i64 } else { 0 };
                    acc.finish().to_integer() == Some(expected)
                })
            });
        Ok(TableValidation {
            classes: m,
            irreducibles: n,
            degree_square_sum,
            group_order: self.group_order,
            rows_orthonormal,
            columns_orthogonal,
        })
    }

    /// Tab-separated dump: class index, representative index, class size, then one column per irreducible.
    pub fn to_tsv(&self, classes: &ConjugacyData) -> String {
        let mut out = String::from("class\trep\tsize");
        for i in 0..self.chars.len() {
            out.push_str(&format!("\tchi{i}"));
        }
        out.push('\n');
        for c in 0..classes.len() {
            out.push_str(&format!("{c}\t{}\t{}", classes.reps()[c], classes.size(c)));
            for chi in &self.chars {
                out.push_str(&format!("\t{}", chi.values[c]));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_record(&self, classes: &ConjugacyData) -> TableRecord {
        TableRecord {
            group: self.group,
            group_order: self.group_order,
            exponent: self.exponent,
            classes: (0..classes.len())
                .map(|c| ClassRecord { rep: classes.reps()[c], size: classes.size(c), order: classes.element_order(c) })
                .collect(),
            characters: self
                .chars
                .iter()
                .map(|chi| CharacterRecord {
                    degree: chi.degree().expect("integral degree"),
                    values: chi
                        .values
                        .iter()
                        .map(|v| {
                            let v = v.with_order(self.exponent.lcm(&v.order()));
                            v.terms().to_vec()
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Rebuilds a table from its record; the class list must match `classes`.
    pub fn from_record(record: &TableRecord, classes: &ConjugacyData) -> Result<Self> {
        let same_classes = record.classes.len() == classes.len()
            && record.classes.iter().enumerate().all(|(c, r)| r.rep == classes.reps()[c] && r.size == classes.size(c));
        if !same_classes || record.group_order != classes.group_order() {
            return Err(Error::Inconsistent("table record does not match the conjugacy data".into()));
        }
        let e = record.exponent;
        let chars = record
            .characters
            .iter()
            .map(|cr| {
                ClassFunction::new(
                    record.group,
                    cr.values.iter().map(|terms| Cyclotomic::from_terms(e, terms.iter().copied())).collect(),
                )
            })
            .collect();
        Ok(CharTable::from_characters(record.group, record.group_order, e, chars))
    }
}

/// Serializable table: values are sparse multiplicity vectors `[exponent, multiplicity]` over `zeta_exponent`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TableRecord {
    pub group: GroupId,
    pub group_order: u64,
    pub exponent: u32,
    pub classes: Vec<ClassRecord>,
    pub characters: Vec<CharacterRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassRecord {
    pub rep: u32,
    pub size: u64,
    pub order: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CharacterRecord {
    pub degree: i64,
    pub values: Vec<Vec<(u32, i64)>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{Flavor, GroupSpec};
    use crate::ring::{Mode, RingSpec};

    fn setup(p: u32, r: u32, flavor: Flavor) -> (MatrixGroup, ConjugacyData) {
        let g = MatrixGroup::new(GroupSpec::new(RingSpec::new(p, 1, r, Mode::Mixed).unwrap(), flavor)).unwrap();
        let c = g.conjugacy_classes();
        (g, c)
    }

    #[test]
    fn steinberg_degrees() {
        for (p, flavor) in [(2, Flavor::Gl), (3, Flavor::Gl), (3, Flavor::Sl)] {
            let (g, c) = setup(p, 1, flavor);
            let st = steinberg::<i64>(&g, &c).unwrap();
            assert_eq!(st.degree().unwrap(), i64::from(p));
        }
    }

    #[test]
    fn one_minus_steinberg_norm_two() {
        let (g, c) = setup(3, 1, Flavor::Gl);
        let st = steinberg::<i64>(&g, &c).unwrap();
        let v = ClassFunction::trivial(g.id(), c.len()).sub(&st).unwrap();
        assert_eq!(inner_product(&c, &v, &v).unwrap(), Ratio::from_integer(2));
    }

    #[test]
    fn borel_permutation_character_degree() {
        let (g, c) = setup(3, 1, Flavor::Gl);
        let b = g.borel();
        let emb = g.embedding_of(&b).unwrap();
        let perm = permutation_character::<i64>(&emb, g.id(), &c).unwrap();
        assert_eq!(perm.degree().unwrap(), 4);
        // equals induction of the trivial character through the general formula
        let bc = b.conjugacy_classes();
        let ind = induce(&ClassFunction::<i64>::trivial(b.id(), bc.len()), &emb, &bc, g.id(), &c).unwrap();
        assert!(ind.same_values(&perm));
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let (g, c) = setup(2, 1, Flavor::Gl);
        let (h, hc) = setup(3, 1, Flavor::Gl);
        let a = ClassFunction::<i64>::trivial(g.id(), c.len());
        let b = ClassFunction::<i64>::trivial(h.id(), hc.len());
        assert!(matches!(inner_product(&c, &a, &b), Err(Error::GroupMismatch)));
    }

    #[test]
    fn generic_coefficients() {
        let (g, c) = setup(2, 1, Flavor::Gl);
        let st = steinberg::<i128>(&g, &c).unwrap();
        assert_eq!(inner_product(&c, &st, &st).unwrap(), Ratio::from_integer(1i128));
    }
}
