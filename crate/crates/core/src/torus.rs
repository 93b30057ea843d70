//! The Coxeter torus `T_r = (O'_r)^x` inside `GL_2(O_r)` and the classification
//! of its characters: top-layer datum `tau`, regularity, conductor, general
//! position, Weyl stabilizer and the norm-one restriction used for `SL_2`.

use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, DualChar};
use crate::error::{Error, Result};
use crate::matgroup::Mat2;
use crate::ring::{Elem, ExtElem, ExtRing, Ring, RingSpec};

/// One level of the tower: `O'_j` and its unit group.
#[derive(Clone, Debug)]
struct Level {
    ext: Arc<ExtRing>,
    units: AbelianGroup,
}

impl Level {
    fn new(ext: ExtRing) -> Self {
        let ext = Arc::new(ext);
        let e = ext.clone();
        let units = AbelianGroup::new(ext.units().into_iter().map(|x| x.0).collect(), ext.one().0, move |a, b| {
            e.mul(ExtElem(a), ExtElem(b)).0
        });
        Level { ext, units }
    }
}

/// The Coxeter torus at level `r` with the data needed to classify characters.
#[derive(Clone, Debug)]
pub struct CoxeterTorus {
    levels: Vec<Level>,
    base: Arc<Ring>,
    field: Arc<Ring>,
    base_units: AbelianGroup,
    psi: Elem,
    /// `F_p`-basis of `F_q` (level-one indices).
    fq_basis: Vec<Elem>,
    /// `F_p`-basis of `F_{q^2}` (level-one indices).
    fq2_basis: Vec<ExtElem>,
    /// `layer_logs[j]`: logs of `1 + pi^j b`, `b` in the `F_{q^2}` basis, `1 <= j < r`.
    layer_logs: Vec<Vec<Vec<u32>>>,
    /// Same for `O_r^x` and the `F_q` basis.
    base_layer_logs: Vec<Vec<Vec<u32>>>,
    /// Logs in `O_r^x` of the norms of the torus generators.
    norm_logs: Vec<Vec<u32>>,
    /// Logs of `sigma(g_i)` for the torus generators.
    sigma_logs: Vec<Vec<u32>>,
    norm_one: Vec<ExtElem>,
}

/// Norm-one restriction data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlData {
    /// Order of the restriction of `theta` to the norm-one subgroup.
    pub bar_order: u32,
    /// Canonical key of the restriction up to the Weyl action (inversion).
    pub bar_orbit: Vec<u32>,
    /// `#{w in {1, sigma} : bar(theta) o w = bar(theta)}`.
    pub stabilizer: u32,
    /// `q` odd, conductor one, restriction of `theta_0` of order two.
    pub quadratic: bool,
    /// `q` even, conductor at least two, restriction of order dividing two.
    pub even_split: bool,
}

/// Full classification record of a torus character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCharClass {
    pub index: usize,
    pub theta: DualChar,
    /// `None` at level one.
    pub tau: Option<ExtElem>,
    pub regular: bool,
    pub level: u32,
    pub r0: u32,
    pub theta0: DualChar,
    pub alpha: DualChar,
    pub alpha_minimizers: usize,
    pub peeled_r0: u32,
    pub peeled_alpha: DualChar,
    /// `theta_0` regular at level `r0` (vacuous when `r0 = 1`).
    pub theta0_regular: bool,
    pub general_position: bool,
    pub stabilizer: u32,
    pub sl: SlData,
}

impl CoxeterTorus {
    pub fn new(spec: RingSpec) -> Result<Self> {
        let base = Arc::new(Ring::new(spec)?);
        Self::over(ExtRing::new(base)?, Elem(1))
    }

    /// `psi(x) = zeta_p^{Tr(c x)}` with `c` a nonzero residue (level-one index).
    pub fn with_psi(spec: RingSpec, c: Elem) -> Result<Self> {
        let base = Arc::new(Ring::new(spec)?);
        Self::over(ExtRing::new(base)?, c)
    }

    pub fn over(ext: ExtRing, psi: Elem) -> Result<Self> {
        let base = ext.base().clone();
        let r = base.spec().r;
        let field = Arc::new(base.at_level(1)?);
        if psi.0 == 0 || psi.0 >= field.size() {
            return Err(Error::InvalidParameters("psi parameter must be a nonzero residue".into()));
        }
        let mut levels = Vec::with_capacity(r as usize);
        for j in 1..r {
            levels.push(Level::new(ext.at_level(j)?));
        }
        levels.push(Level::new(ext.clone()));
        let top = &levels[r as usize - 1];

        let b = base.clone();
        let base_units = AbelianGroup::new(base.units().iter().map(|u| u.0).collect(), base.one().0, move |x, y| {
            b.mul(Elem(x), Elem(y)).0
        });
        let fq_basis = field.additive_generators();
        let fq2_basis: Vec<ExtElem> = {
            let q = field.size();
            fq_basis.iter().map(|&b| ExtElem(b.0)).chain(fq_basis.iter().map(|&b| ExtElem(q * b.0))).collect()
        };
        let mut layer_logs = vec![Vec::new(); r as usize];
        let mut base_layer_logs = vec![Vec::new(); r as usize];
        for j in 1..r {
            layer_logs[j as usize] = fq2_basis
                .iter()
                .map(|&x| top.units.log(ext.one_plus_pi_pow(j, x).0).expect("unit").to_vec())
                .collect();
            base_layer_logs[j as usize] = fq_basis
                .iter()
                .map(|&y| {
                    let u = base.add(base.one(), base.mul(base.pi_pow(j), base.lift_residue(y)));
                    base_units.log(u.0).expect("unit").to_vec()
                })
                .collect();
        }
        let norm_logs = top
            .units
            .generators()
            .iter()
            .map(|&g| base_units.log(ext.norm(ExtElem(g)).0).expect("norm of a unit is a unit").to_vec())
            .collect();
        let sigma_logs = top
            .units
            .generators()
            .iter()
            .map(|&g| top.units.log(ext.frobenius(ExtElem(g)).0).expect("unit").to_vec())
            .collect();
        let one = base.one();
        let norm_one: Vec<ExtElem> =
            top.units.elements().iter().map(|&x| ExtElem(x)).filter(|&x| ext.norm(x) == one).collect();
        Ok(CoxeterTorus {
            levels,
            base,
            field,
            base_units,
            psi,
            fq_basis,
            fq2_basis,
            layer_logs,
            base_layer_logs,
            norm_logs,
            sigma_logs,
            norm_one,
        })
    }

    /// The same torus at a lower level (same defining data and `psi`).
    pub fn at_level(&self, r: u32) -> Result<CoxeterTorus> {
        let top = self.r();
        if r == 0 || r > top {
            return Err(Error::LevelOutOfRange { requested: r, max: top });
        }
        CoxeterTorus::over((*self.levels[r as usize - 1].ext).clone(), self.psi)
    }

    pub fn r(&self) -> u32 {
        self.base.spec().r
    }

    pub fn q(&self) -> u32 {
        self.base.q()
    }

    pub fn p(&self) -> u32 {
        self.base.spec().p
    }

    pub fn ext(&self) -> &Arc<ExtRing> {
        &self.top().ext
    }

    pub fn base_ring(&self) -> &Arc<Ring> {
        &self.base
    }

    fn top(&self) -> &Level {
        self.levels.last().expect("at least one level")
    }

    /// The unit group `T_r = (O'_r)^x`.
    pub fn group(&self) -> &AbelianGroup {
        &self.top().units
    }

    /// `T_j` for `1 <= j <= r`.
    pub fn group_at(&self, j: u32) -> &AbelianGroup {
        &self.levels[j as usize - 1].units
    }

    pub fn base_units(&self) -> &AbelianGroup {
        &self.base_units
    }

    pub fn norm_one(&self) -> &[ExtElem] {
        &self.norm_one
    }

    pub fn order(&self) -> usize {
        self.group().order()
    }

    pub fn characters(&self) -> impl Iterator<Item = DualChar> + '_ {
        self.group().characters()
    }

    /// Multiplication action on the basis `(1, xi)`.
    pub fn embed(&self, t: ExtElem) -> Mat2 {
        let ext = self.ext();
        let ring = ext.base();
        let (c0, c1) = ext.relation();
        let (a, b) = ext.parts(t);
        Mat2([a, ring.mul(b, c0), b, ring.add(a, ring.mul(b, c1))])
    }

    /// `theta(x)` as an exponent of `zeta_E`, `E` the exponent of `T_r`.
    pub fn eval(&self, theta: &DualChar, x: ExtElem) -> u32 {
        self.group().eval(theta, x.0)
    }

    fn is_trivial_on(&self, theta: &DualChar, logs: &[Vec<u32>]) -> bool {
        logs.iter().all(|l| self.group().eval_log(theta, l) == 0)
    }

    /// Least `j >= 1` with `theta` trivial on `1 + pi^j O'_r`.
    pub fn level(&self, theta: &DualChar) -> u32 {
        for j in (1..self.r()).rev() {
            if !self.is_trivial_on(theta, &self.layer_logs[j as usize]) {
                return j + 1;
            }
        }
        1
    }

    /// `alpha o N`.
    pub fn norm_twist(&self, alpha: &DualChar) -> DualChar {
        let eu = self.base_units.exponent();
        let values: Vec<u32> = self.norm_logs.iter().map(|l| self.base_units.eval_log(alpha, l)).collect();
        self.group().char_from_gen_values(&values, eu)
    }

    /// `theta o sigma`.
    pub fn sigma(&self, theta: &DualChar) -> DualChar {
        let e = self.group().exponent();
        let values: Vec<u32> = self.sigma_logs.iter().map(|l| self.group().eval_log(theta, l)).collect();
        self.group().char_from_gen_values(&values, e)
    }

    /// The character of `T_j` that `theta` factors through (`level(theta) <= j`).
    pub fn descend(&self, theta: &DualChar, j: u32) -> Result<DualChar> {
        if self.level(theta) > j {
            return Err(Error::InvalidParameters(format!("character does not factor through level {j}")));
        }
        let target = &self.levels[j as usize - 1];
        let e = self.group().exponent();
        let values: Vec<u32> = target
            .units
            .generators()
            .iter()
            .map(|&g| self.eval(theta, self.ext().lift_index(ExtElem(g), j)))
            .collect();
        Ok(target.units.char_from_gen_values(&values, e))
    }

    /// Pulls a character of `T_j` back along reduction.
    pub fn inflate(&self, eta: &DualChar, j: u32) -> DualChar {
        let source = &self.levels[j as usize - 1];
        let e = source.units.exponent();
        let values: Vec<u32> = self
            .group()
            .generators()
            .iter()
            .map(|&g| source.units.eval(eta, self.ext().reduce_index(ExtElem(g), j).0))
            .collect();
        self.group().char_from_gen_values(&values, e)
    }

    fn psi_exponent(&self, y: Elem, e: u32) -> u32 {
        let p = self.p();
        let t = self.field.abs_trace(self.field.mul(self.psi, y));
        (u64::from(t) * u64::from(e / p) % u64::from(e)) as u32
    }

    /// `tau` at layer `j` for a character trivial on `1 + pi^{j+1} O'_r`:
    /// the unique `tau` in `F_{q^2}` with `theta(1 + pi^j x) = psi(Tr(x tau))`.
    pub fn tau_at_layer(&self, theta: &DualChar, j: u32) -> Result<ExtElem> {
        let r = self.r();
        if j == 0 || j >= r {
            return Err(Error::TauUndefined);
        }
        let e = self.group().exponent();
        let f1 = &self.levels[0].ext;
        let lhs: Vec<u32> = self.layer_logs[j as usize].iter().map(|l| self.group().eval_log(theta, l)).collect();
        f1.elements()
            .find(|&tau| {
                self.fq2_basis
                    .iter()
                    .zip(&lhs)
                    .all(|(&b, &v)| self.psi_exponent(f1.trace(f1.mul(b, tau)), e) == v)
            })
            .ok_or_else(|| Error::Inconsistent("no top-layer datum matches the character".into()))
    }

    /// `tau_theta` at the top layer; undefined at level one.
    pub fn tau_of(&self, theta: &DualChar) -> Result<ExtElem> {
        self.tau_at_layer(theta, self.r() - 1)
    }

    /// `tau` lies in `F_q`.
    pub fn is_central(&self, tau: ExtElem) -> bool {
        self.levels[0].ext.parts(tau).1 .0 == 0
    }

    /// Regular at level `r`: `r >= 2` and the top-layer `tau` is not central.
    pub fn is_regular(&self, theta: &DualChar) -> Result<bool> {
        if self.r() == 1 {
            return Ok(false);
        }
        Ok(!self.is_central(self.tau_of(theta)?))
    }

    /// Minimum of `level(theta * alpha o N)` over all `alpha`, with the
    /// lexicographically least minimizer and the number of minimizers.
    pub fn conductor_brute_force(&self, theta: &DualChar) -> (u32, DualChar, usize) {
        let mut best: Option<(u32, DualChar, usize)> = None;
        for alpha in self.base_units.characters() {
            let lvl = self.level(&self.group().char_mul(theta, &self.norm_twist(&alpha)));
            match &mut best {
                Some((b, _, n)) if lvl == *b => *n += 1,
                Some((b, _, _)) if lvl > *b => {}
                _ => best = Some((lvl, alpha, 1)),
            }
        }
        best.expect("the unit group has characters")
    }

    /// Iterative peeling: while the current top-layer datum is a scalar `s`,
    /// divide by `beta o N` with `beta(1 + pi^{l-1} y) = psi(s y)`.
    pub fn conductor_peeling(&self, theta: &DualChar) -> Result<(u32, DualChar)> {
        let mut cur = theta.clone();
        let mut alpha = self.base_units.trivial_char();
        loop {
            let l = self.level(&cur);
            if l == 1 {
                return Ok((1, alpha));
            }
            let tau = self.tau_at_layer(&cur, l - 1)?;
            if !self.is_central(tau) {
                return Ok((l, alpha));
            }
            let s = self.levels[0].ext.parts(tau).0;
            let beta = self.layer_character(l, s)?;
            cur = self.group().char_mul(&cur, &self.group().char_inv(&self.norm_twist(&beta)));
            alpha = self.base_units.char_mul(&alpha, &self.base_units.char_inv(&beta));
        }
    }

    /// First `beta` in `Irr(O_r^x)` trivial on `1 + pi^l O_r` with
    /// `beta(1 + pi^{l-1} y) = psi(s y)`.
    fn layer_character(&self, l: u32, s: Elem) -> Result<DualChar> {
        let eu = self.base_units.exponent();
        let targets: Vec<u32> = self.fq_basis.iter().map(|&y| self.psi_exponent(self.field.mul(s, y), eu)).collect();
        self.base_units
            .characters()
            .find(|beta| {
                (l..self.r()).all(|i| {
                    self.base_layer_logs[i as usize].iter().all(|lg| self.base_units.eval_log(beta, lg) == 0)
                }) && self.base_layer_logs[l as usize - 1]
                    .iter()
                    .zip(&targets)
                    .all(|(lg, &t)| self.base_units.eval_log(beta, lg) == t)
            })
            .ok_or_else(|| Error::Inconsistent(format!("no character of O_r^x matches layer {}", l - 1)))
    }

    fn bar_values(&self, theta: &DualChar) -> Vec<u32> {
        self.norm_one.iter().map(|&x| self.eval(theta, x)).collect()
    }

    fn values_order(&self, values: &[u32]) -> u32 {
        let e = self.group().exponent();
        values.iter().fold(1u32, |acc, &v| acc.lcm(&(e / v.gcd(&e))))
    }

    pub fn classify(&self, index: usize, theta: &DualChar) -> Result<TorusCharClass> {
        let r = self.r();
        let q = self.q();
        let g = self.group();
        let e = g.exponent();
        let level = self.level(theta);
        let tau = if r >= 2 { Some(self.tau_of(theta)?) } else { None };
        let regular = tau.is_some_and(|t| !self.is_central(t));

        let (brute_r0, brute_alpha, minimizers) = self.conductor_brute_force(theta);
        let (peeled_r0, peeled_alpha) = self.conductor_peeling(theta)?;
        let (r0, alpha) = if regular { (r, self.base_units.trivial_char()) } else { (brute_r0, brute_alpha) };
        let eta = g.char_mul(theta, &self.norm_twist(&alpha));
        let theta0 = self.descend(&eta, r0)?;
        let theta0_regular = r0 == 1 || !self.is_central(self.tau_at_layer(&eta, r0 - 1)?);
        let general_position = self.sigma(&eta) != eta;
        let stabilizer = if self.sigma(theta) == *theta { 2 } else { 1 };

        let bar = self.bar_values(theta);
        let neg: Vec<u32> = bar.iter().map(|&v| (e - v) % e).collect();
        let bar_order = self.values_order(&bar);
        let sl_stabilizer = if bar == neg { 2 } else { 1 };
        let quadratic = q % 2 == 1 && r0 == 1 && bar_order == 2;
        let even_split = q.is_multiple_of(2) && r0 >= 2 && bar_order <= 2;
        Ok(TorusCharClass {
            index,
            theta: theta.clone(),
            tau,
            regular,
            level,
            r0,
            theta0,
            alpha,
            alpha_minimizers: minimizers,
            peeled_r0,
            peeled_alpha,
            theta0_regular,
            general_position,
            stabilizer,
            sl: SlData { bar_order, bar_orbit: bar.min(neg), stabilizer: sl_stabilizer, quadratic, even_split },
        })
    }

    /// Classification of every character, in enumeration order.
    pub fn classify_all(&self) -> Result<Vec<TorusCharClass>> {
        let chars: Vec<DualChar> = self.characters().collect();
        chars.par_iter().enumerate().map(|(i, th)| self.classify(i, th)).collect()
    }

    /// Key identifying the orbit `{theta, theta o sigma}`.
    pub fn sigma_orbit_key(&self, theta: &DualChar) -> DualChar {
        let s = self.sigma(theta);
        if s < *theta {
            s
        } else {
            theta.clone()
        }
    }

    /// Residue field.
    pub fn residue_field(&self) -> &Arc<Ring> {
        &self.field
    }
}
