//! Predicted sign, dimension and decomposition of the Deligne–Lusztig
//! character attached to a classified Coxeter-torus character.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matgroup::Flavor;
use crate::torus::{CoxeterTorus, TorusCharClass};
use crate::weyl::{conjecture_sign, ConjectureSign};

/// Which rule produced a prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    /// `theta` regular at level `r`.
    Regular,
    /// Conductor `1 < r0 < r`; inflated from a regular character.
    Descended,
    /// `r0 = 1`, `theta_0` in general position.
    GeneralPosition,
    /// `r0 = 1`, `theta_0` fixed by `sigma`: `sigma_1 - sigma_2`.
    Principal,
    /// `SL_2`, `q` odd, quadratic norm-one restriction.
    SlQuadratic,
    /// `SL_2`, `q` even, `sigma`-fixed norm-one restriction of a regular character.
    SlEvenSplit,
}

impl Clause {
    pub fn tag(&self) -> &'static str {
        match self {
            Clause::Regular => "regular",
            Clause::Descended => "descended-regular",
            Clause::GeneralPosition => "level-one-general-position",
            Clause::Principal => "level-one-principal",
            Clause::SlQuadratic => "sl-quadratic-split",
            Clause::SlEvenSplit => "sl-even-split",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Constituent {
    pub dim: u64,
    pub multiplicity: u32,
    pub coefficient: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub flavor: Flavor,
    pub clause: Clause,
    pub r0: u32,
    pub total_dim: i64,
    pub constituents: Vec<Constituent>,
    pub irreducible_up_to_sign: bool,
    pub sign: i8,
}

impl Prediction {
    fn new(flavor: Flavor, clause: Clause, r0: u32, constituents: Vec<Constituent>) -> Self {
        let total: i64 = constituents
            .iter()
            .map(|c| i64::from(c.coefficient) * i64::from(c.multiplicity) * c.dim as i64)
            .sum();
        let irreducible = constituents.len() == 1 && constituents[0].multiplicity == 1;
        Prediction {
            flavor,
            clause,
            r0,
            total_dim: total,
            constituents,
            irreducible_up_to_sign: irreducible,
            sign: if total < 0 { -1 } else { 1 },
        }
    }

    /// Sum of squared coefficients, i.e. the predicted self-pairing.
    pub fn norm(&self) -> u64 {
        self.constituents.iter().map(|c| u64::from(c.multiplicity).pow(2)).sum()
    }

    /// Same dimensions, coefficients and sign (the clause may differ).
    pub fn same_shape(&self, other: &Prediction) -> bool {
        let mut a = self.constituents.clone();
        let mut b = other.constituents.clone();
        a.sort();
        b.sort();
        a == b && self.total_dim == other.total_dim && self.sign == other.sign
    }

    /// `(rk_q(T), rk_q(G))` for the Coxeter torus of `GL_2` or `SL_2`.
    pub fn ranks(&self) -> (u32, u32) {
        match self.flavor {
            Flavor::Gl => (1, 2),
            Flavor::Sl => (0, 1),
        }
    }

    pub fn conjecture(&self, p: u32, k: u32) -> Result<ConjectureSign> {
        let (t, g) = self.ranks();
        conjecture_sign(t, g, u64::from(p), k, 1, i128::from(self.total_dim))
    }
}

fn single(dim: u64, coefficient: i8) -> Vec<Constituent> {
    vec![Constituent { dim, multiplicity: 1, coefficient }]
}

fn parity(e: u32) -> i8 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn predict_gl2(tc: &TorusCharClass, q: u32, r: u32) -> Result<Prediction> {
    let q64 = u64::from(q);
    if tc.regular && tc.r0 != r {
        return Err(Error::Inconsistent(format!("regular character with conductor {} < {r}", tc.r0)));
    }
    if tc.r0 == 0 || tc.r0 > r {
        return Err(Error::Inconsistent(format!("conductor {} outside 1..={r}", tc.r0)));
    }
    let (clause, constituents) = if tc.regular {
        (Clause::Regular, single((q64 - 1) * q64.pow(r - 1), parity(r)))
    } else if tc.r0 > 1 {
        if !tc.theta0_regular {
            return Err(Error::Inconsistent("descended character is not regular".into()));
        }
        (Clause::Descended, single((q64 - 1) * q64.pow(tc.r0 - 1), parity(tc.r0)))
    } else if tc.general_position {
        (Clause::GeneralPosition, single(q64 - 1, -1))
    } else {
        (
            Clause::Principal,
            vec![
                Constituent { dim: 1, multiplicity: 1, coefficient: 1 },
                Constituent { dim: q64, multiplicity: 1, coefficient: -1 },
            ],
        )
    };
    Ok(Prediction::new(Flavor::Gl, clause, tc.r0, constituents))
}

pub fn predict_sl2(tc: &TorusCharClass, q: u32, r: u32) -> Result<Prediction> {
    let gl = predict_gl2(tc, q, r)?;
    let q64 = u64::from(q);
    if tc.sl.quadratic {
        if gl.clause != Clause::GeneralPosition {
            return Err(Error::Inconsistent("quadratic restriction outside general position".into()));
        }
        let half = Constituent { dim: (q64 - 1) / 2, multiplicity: 1, coefficient: -1 };
        return Ok(Prediction::new(Flavor::Sl, Clause::SlQuadratic, tc.r0, vec![half.clone(), half]));
    }
    if tc.sl.even_split {
        let dim = (q64.pow(tc.r0) - q64.pow(tc.r0 - 1)) / 2;
        let half = Constituent { dim, multiplicity: 1, coefficient: parity(tc.r0) };
        return Ok(Prediction::new(Flavor::Sl, Clause::SlEvenSplit, tc.r0, vec![half.clone(), half]));
    }
    Ok(Prediction { flavor: Flavor::Sl, ..gl })
}

pub fn predict(flavor: Flavor, tc: &TorusCharClass, q: u32, r: u32) -> Result<Prediction> {
    match flavor {
        Flavor::Gl => predict_gl2(tc, q, r),
        Flavor::Sl => predict_sl2(tc, q, r),
    }
}

/// `{(-1)^i (q-1) q^{i-1} : 1 <= i <= r}`.
pub fn dimension_set(q: u32, r: u32) -> Vec<i64> {
    let q = i64::from(q);
    (1..=r).map(|i| i64::from(parity(i)) * (q - 1) * q.pow(i - 1)).collect()
}

/// `(-1)^{1 + log_q(|d| / (q-1))}`.
pub fn sign_from_dim(d: i64, q: u32) -> Result<i8> {
    let q = i64::from(q);
    let a = d.abs();
    if a == 0 || a % (q - 1) != 0 {
        return Err(Error::NotADimension(d));
    }
    let mut m = a / (q - 1);
    let mut e = 0u32;
    while m % q == 0 {
        m /= q;
        e += 1;
    }
    if m != 1 {
        return Err(Error::NotADimension(d));
    }
    Ok(parity(1 + e))
}

/// For `theta` trivial on the kernel to level `r' < r`: the level-`r` prediction
/// has the same shape as the prediction for the descended character at level `r'`.
/// `None` when `theta` does not factor through level `r'`.
pub fn stability_consistency(
    flavor: Flavor,
    torus: &CoxeterTorus,
    lower: &CoxeterTorus,
    tc: &TorusCharClass,
) -> Result<Option<bool>> {
    let (q, r, r_low) = (torus.q(), torus.r(), lower.r());
    if tc.level > r_low {
        return Ok(None);
    }
    let eta = torus.descend(&tc.theta, r_low)?;
    let low = lower.classify(0, &eta)?;
    let a = predict(flavor, tc, q, r)?;
    let b = predict(flavor, &low, q, r_low)?;
    Ok(Some(a.same_shape(&b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Mode, RingSpec};

    fn torus(p: u32, k: u32, r: u32) -> CoxeterTorus {
        CoxeterTorus::new(RingSpec::new(p, k, r, Mode::Mixed).unwrap()).unwrap()
    }

    #[test]
    fn dimension_sets() {
        assert_eq!(dimension_set(3, 3), vec![-2, 6, -18]);
        assert_eq!(dimension_set(2, 1), vec![-1]);
        assert_eq!(sign_from_dim(-18, 3).unwrap(), -1);
        assert_eq!(sign_from_dim(18, 3).unwrap(), -1);
        assert_eq!(sign_from_dim(2, 3).unwrap(), -1);
        assert_eq!(sign_from_dim(6, 3).unwrap(), 1);
        assert!(sign_from_dim(4, 3).is_err());
        assert!(sign_from_dim(0, 3).is_err());
    }

    #[test]
    fn trivial_character() {
        let t = torus(3, 1, 2);
        let tc = t.classify(0, &t.group().trivial_char()).unwrap();
        for flavor in [Flavor::Gl, Flavor::Sl] {
            let p = predict(flavor, &tc, 3, 2).unwrap();
            assert_eq!(p.clause, Clause::Principal);
            assert_eq!(p.total_dim, -2);
            assert_eq!(p.norm(), 2);
            assert!(!p.irreducible_up_to_sign);
        }
    }

    #[test]
    fn regular_dimension_q3_r2() {
        let t = torus(3, 1, 2);
        let all = t.classify_all().unwrap();
        let regular: Vec<_> = all.iter().filter(|c| c.regular).collect();
        assert_eq!(regular.len(), 48);
        for tc in regular {
            let p = predict_gl2(tc, 3, 2).unwrap();
            assert_eq!((p.clause, p.total_dim, p.sign), (Clause::Regular, 6, 1));
        }
    }

    #[test]
    fn descended_q2_r3() {
        let t = torus(2, 1, 3);
        let all = t.classify_all().unwrap();
        let d: Vec<_> = all.iter().filter(|c| !c.regular && c.r0 == 2).collect();
        assert!(!d.is_empty());
        for tc in d {
            assert_eq!(predict_gl2(tc, 2, 3).unwrap().total_dim, 2);
        }
    }

    #[test]
    fn totals_lie_in_dimension_set() {
        for (p, r) in [(2, 3), (3, 2), (5, 2)] {
            let t = torus(p, 1, r);
            let set = dimension_set(p, r);
            for tc in t.classify_all().unwrap() {
                for flavor in [Flavor::Gl, Flavor::Sl] {
                    let pred = predict(flavor, &tc, p, r).unwrap();
                    assert!(set.contains(&pred.total_dim));
                    assert_eq!(sign_from_dim(pred.total_dim, p).unwrap(), pred.sign);
                    assert_eq!(pred.conjecture(p, 1).unwrap().sign, Some(pred.sign));
                }
            }
        }
    }

    #[test]
    fn sl_exceptional_cases() {
        let t = torus(3, 1, 1);
        let quad: Vec<_> = t.classify_all().unwrap().into_iter().filter(|c| c.sl.quadratic).collect();
        assert!(!quad.is_empty());
        for tc in &quad {
            let p = predict_sl2(tc, 3, 1).unwrap();
            assert_eq!(p.constituents.iter().map(|c| c.dim).collect::<Vec<_>>(), vec![1, 1]);
            assert_eq!(p.total_dim, -2);
        }
        let t = torus(2, 1, 2);
        let split: Vec<_> = t.classify_all().unwrap().into_iter().filter(|c| c.sl.even_split).collect();
        assert!(!split.is_empty());
        for tc in &split {
            let p = predict_sl2(tc, 2, 2).unwrap();
            assert_eq!(p.clause, Clause::SlEvenSplit);
            assert_eq!(p.total_dim, 2);
        }
    }

    #[test]
    fn stability_under_inflation() {
        let t = torus(2, 1, 3);
        let low = t.at_level(2).unwrap();
        let mut checked = 0;
        for tc in t.classify_all().unwrap() {
            for flavor in [Flavor::Gl, Flavor::Sl] {
                if let Some(ok) = stability_consistency(flavor, &t, &low, &tc).unwrap() {
                    assert!(ok);
                    checked += 1;
                }
            }
        }
        assert_eq!(checked, 2 * low.order());
    }

    #[test]
    fn invariance_under_sigma_and_twist() {
        let t = torus(3, 1, 2);
        let g = t.group();
        let twists: Vec<_> = t.base_units().characters().collect();
        for th in t.characters().step_by(5) {
            let base = predict_gl2(&t.classify(0, &th).unwrap(), 3, 2).unwrap();
            let s = predict_gl2(&t.classify(0, &t.sigma(&th)).unwrap(), 3, 2).unwrap();
            assert!(base.same_shape(&s));
            for beta in twists.iter().step_by(4) {
                let tw = g.char_mul(&th, &t.norm_twist(beta));
                assert!(base.same_shape(&predict_gl2(&t.classify(0, &tw).unwrap(), 3, 2).unwrap()));
            }
        }
    }
}
