use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circle::{grid_unit, ArcUnion, CirclePoint, ClosedBoundarySet, ComplexGrid};
use crate::error::{Error, Result};

/// Zeros of a finite Blaschke product, with multiplicities.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ZeroList {
    zeros: Vec<(Complex64, u32)>,
}

impl ZeroList {
    pub fn new(zeros: Vec<(Complex64, u32)>) -> Result<Self> {
        for &(a, m) in &zeros {
            if !(a.norm() < 1.0) {
                return Err(Error::InvalidArgument {
                    arg: "zeros",
                    reason: format!("|{a}| is not below 1"),
                });
            }
            if m == 0 {
                return Err(Error::InvalidArgument {
                    arg: "zeros",
                    reason: "multiplicity must be positive".into(),
                });
            }
        }
        Ok(ZeroList { zeros })
    }

    /// Simple zeros.
    pub fn simple(points: &[Complex64]) -> Result<Self> {
        Self::new(points.iter().map(|&a| (a, 1)).collect())
    }

    pub fn zeros(&self) -> &[(Complex64, u32)] {
        &self.zeros
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// Number of zeros counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.zeros.iter().map(|z| z.1).sum()
    }
}

/// Finite positive atomic measure on the circle.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SingularMeasure {
    atoms: Vec<(CirclePoint, f64)>,
}

impl SingularMeasure {
    pub fn new(atoms: Vec<(CirclePoint, f64)>) -> Result<Self> {
        for (i, &(p, m)) in atoms.iter().enumerate() {
            if !(m > 0.0 && m.is_finite()) {
                return Err(Error::InvalidArgument {
                    arg: "atoms",
                    reason: format!("mass {m} is not positive and finite"),
                });
            }
            if atoms[..i].iter().any(|q| q.0 == p) {
                return Err(Error::InvalidArgument {
                    arg: "atoms",
                    reason: format!("repeated atom at {}", p.theta()),
                });
            }
        }
        Ok(SingularMeasure { atoms })
    }

    pub fn atom(theta: f64, mass: f64) -> Result<Self> {
        Self::new(vec![(CirclePoint::new(theta), mass)])
    }

    pub fn atoms(&self) -> &[(CirclePoint, f64)] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// `−(1/2π) Σ m_j (e^{iθ_j}+z)/(e^{iθ_j}−z)`, the exponent of `S`.
    fn exponent(&self, z: Complex64) -> Option<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(p, m) in &self.atoms {
            let e = p.to_complex();
            if e == z {
                return None;
            }
            acc -= m / TAU * (e + z) / (e - z);
        }
        Some(acc)
    }
}

/// Regions accepted by [`restrict_singular`].
pub trait Region {
    fn contains_point(&self, p: CirclePoint) -> bool;
}

impl Region for ClosedBoundarySet {
    fn contains_point(&self, p: CirclePoint) -> bool {
        self.contains(p)
    }
}

impl Region for ArcUnion {
    fn contains_point(&self, p: CirclePoint) -> bool {
        self.contains(p)
    }
}

/// `(S)_K`: the atoms lying in `K`. Closed sets keep atoms at their
/// endpoints, open arcs drop them.
pub fn restrict_singular(m: &SingularMeasure, k: &impl Region) -> SingularMeasure {
    SingularMeasure {
        atoms: m.atoms.iter().copied().filter(|a| k.contains_point(a.0)).collect(),
    }
}

/// `B(z) = Π ((|a|/a)(a − z)/(1 − āz))^m`, with the factor `z` for `a = 0`.
pub fn blaschke_eval(zl: &ZeroList, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for &(a, m) in &zl.zeros {
        acc *= blaschke_factor(a, z).powu(m);
    }
    acc
}

fn blaschke_factor(a: Complex64, z: Complex64) -> Complex64 {
    if a == Complex64::new(0.0, 0.0) {
        z
    } else {
        (a.norm() / a) * (a - z) / (1.0 - a.conj() * z)
    }
}

/// `S(z) = exp{−(1/2π) Σ m_j (e^{iθ_j}+z)/(e^{iθ_j}−z)}` for `|z| ≤ 1`. The
/// value at an atom is its radial limit `0`.
pub fn singular_inner_eval(m: &SingularMeasure, z: Complex64) -> Complex64 {
    match m.exponent(z) {
        Some(e) => e.exp(),
        None => Complex64::new(0.0, 0.0),
    }
}

/// `U = B·S`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InnerFunction {
    pub blaschke: ZeroList,
    pub singular: SingularMeasure,
}

impl InnerFunction {
    pub fn new(blaschke: ZeroList, singular: SingularMeasure) -> Self {
        InnerFunction { blaschke, singular }
    }

    /// `U ≡ 1`.
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.blaschke.is_empty() && self.singular.is_empty()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        blaschke_eval(&self.blaschke, z) * singular_inner_eval(&self.singular, z)
    }

    /// `log|U(z)|`, computed additively so that it stays finite where `|U|`
    /// underflows. `−∞` at zeros and atoms.
    pub fn log_abs(&self, z: Complex64) -> f64 {
        let mut acc = 0.0;
        for &(a, m) in &self.blaschke.zeros {
            acc += m as f64 * blaschke_factor(a, z).norm().ln();
        }
        match self.singular.exponent(z) {
            Some(e) => acc + e.re,
            None => f64::NEG_INFINITY,
        }
    }

    pub fn boundary_values(&self, n: usize) -> Result<ComplexGrid> {
        crate::circle::check_grid_size(n)?;
        ComplexGrid::new((0..n).map(|k| self.eval(grid_unit(k, n))).collect())
    }

    /// `d(ξ, Z)`, where `Z` is the zero set together with the atom support.
    pub fn distance_to_support(&self, xi: CirclePoint) -> f64 {
        let x = xi.to_complex();
        let dz = self.blaschke.zeros.iter().map(|z| (x - z.0).norm());
        let da = self.singular.atoms.iter().map(|a| xi.chord(a.0));
        dz.chain(da).fold(f64::INFINITY, f64::min)
    }

    /// Pseudo-random inner function: up to `max_zeros` zeros with
    /// `|a| ≤ max_radius` and up to `max_atoms` atoms of total mass at most
    /// `max_mass`; never trivial.
    pub fn random<R: Rng>(
        rng: &mut R,
        max_zeros: usize,
        max_radius: f64,
        max_atoms: usize,
        max_mass: f64,
    ) -> Self {
        loop {
            let nz = rng.gen_range(0..=max_zeros);
            let na = rng.gen_range(0..=max_atoms);
            if nz + na == 0 {
                continue;
            }
            let zeros = (0..nz)
                .map(|_| {
                    let r = max_radius * rng.gen::<f64>().sqrt();
                    let mult = if rng.gen::<f64>() < 0.2 { 2 } else { 1 };
                    (Complex64::from_polar(r, rng.gen::<f64>() * TAU), mult)
                })
                .collect();
            let weights: Vec<f64> = (0..na).map(|_| rng.gen::<f64>() + 1e-3).collect();
            let total = max_mass * rng.gen::<f64>().max(1e-3);
            let wsum: f64 = weights.iter().sum();
            let atoms = weights
                .iter()
                .map(|w| (CirclePoint::new(rng.gen::<f64>() * TAU), total * w / wsum))
                .collect();
            let (Ok(b), Ok(s)) = (ZeroList::new(zeros), SingularMeasure::new(atoms)) else {
                continue;
            };
            return InnerFunction::new(b, s);
        }
    }
}

/// `a(ξ) = Σ (1−|a_n|²)/|ξ−a_n|² + (1/π) Σ m_j/|e^{iθ_j}−ξ|²`, zeros repeated
/// by multiplicity.
pub fn counting_function(u: &InnerFunction, xi: CirclePoint) -> Result<f64> {
    let x = xi.to_complex();
    let mut acc = 0.0;
    for &(a, m) in u.blaschke.zeros() {
        acc += m as f64 * (1.0 - a.norm_sqr()) / (x - a).norm_sqr();
    }
    for &(p, mass) in u.singular.atoms() {
        let d = xi.chord(p);
        if d == 0.0 {
            return Err(Error::SingularEvaluation(format!(
                "counting function at the atom {}",
                p.theta()
            )));
        }
        acc += mass / (PI * d * d);
    }
    Ok(acc)
}

/// Outcome of one Fpr2 evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Fpr2Check {
    Evaluated {
        lhs: f64,
        rhs: f64,
        log_lhs: f64,
        log_rhs: f64,
        holds: bool,
    },
    NotApplicable {
        reason: String,
    },
}

impl Fpr2Check {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Fpr2Check::Evaluated { holds, .. } => Some(*holds),
            Fpr2Check::NotApplicable { .. } => None,
        }
    }
}

/// `|U(ρξ)| ≤ exp{−(1−ρ)/8 · a(ξ)}` under `1 − ρ ≤ d(ξ, Z)`. Compared in the log
/// domain with relative slack `1e-9`.
pub fn fpr2_check(u: &InnerFunction, xi: CirclePoint, rho: f64) -> Result<Fpr2Check> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidArgument {
            arg: "rho",
            reason: format!("{rho} not in (0, 1)"),
        });
    }
    if u.is_trivial() {
        return Ok(Fpr2Check::NotApplicable {
            reason: "trivial inner function".into(),
        });
    }
    let d = u.distance_to_support(xi);
    if 1.0 - rho > d {
        return Ok(Fpr2Check::NotApplicable {
            reason: format!("1 - rho = {} exceeds d(xi, Z) = {d}", 1.0 - rho),
        });
    }
    let a = counting_function(u, xi)?;
    let log_lhs = u.log_abs(xi.to_complex() * rho);
    let log_rhs = -(1.0 - rho) / 8.0 * a;
    Ok(Fpr2Check::Evaluated {
        lhs: log_lhs.exp(),
        rhs: log_rhs.exp(),
        log_lhs,
        log_rhs,
        holds: log_lhs <= log_rhs + 1e-9f64.ln_1p(),
    })
}

/// One randomized Fpr2 trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fpr2Trial {
    pub trial: usize,
    pub zeros: usize,
    pub atoms: usize,
    pub xi: f64,
    pub rho: f64,
    pub check: Fpr2Check,
}

/// Seeded sweep over random inner functions (at most 8 zeros with `|a| ≤ 0.9`,
/// at most 4 atoms with total mass at most `2π`) and valid `(ξ, ρ)`.
pub fn fpr2_sweep(trials: usize, seed: u64) -> Result<Vec<Fpr2Trial>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for trial in 0..trials {
        let u = InnerFunction::random(&mut rng, 8, 0.9, 4, TAU);
        let xi = CirclePoint::new(rng.gen::<f64>() * TAU);
        let d = u.distance_to_support(xi);
        let t: f64 = rng.gen_range(0.001..0.999);
        let rho = 1.0 - t * d.min(1.0);
        out.push(Fpr2Trial {
            trial,
            zeros: u.blaschke.zeros().len(),
            atoms: u.singular.atoms().len(),
            xi: xi.theta(),
            rho,
            check: fpr2_check(&u, xi, rho)?,
        });
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct ZeroJson {
    re: f64,
    im: f64,
    mult: u32,
}

#[derive(Serialize, Deserialize)]
struct AtomJson {
    theta: f64,
    mass: f64,
}

#[derive(Serialize, Deserialize)]
struct InnerJson {
    #[serde(default)]
    zeros: Vec<ZeroJson>,
    #[serde(default)]
    atoms: Vec<AtomJson>,
}

impl Serialize for InnerFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        InnerJson {
            zeros: self
                .blaschke
                .zeros
                .iter()
                .map(|&(a, mult)| ZeroJson {
                    re: a.re,
                    im: a.im,
                    mult,
                })
                .collect(),
            atoms: self
                .singular
                .atoms
                .iter()
                .map(|&(p, mass)| AtomJson {
                    theta: p.theta(),
                    mass,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InnerFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = InnerJson::deserialize(d)?;
        let zeros = ZeroList::new(
            raw.zeros
                .iter()
                .map(|z| (Complex64::new(z.re, z.im), z.mult))
                .collect(),
        )
        .map_err(D::Error::custom)?;
        let atoms = SingularMeasure::new(
            raw.atoms
                .iter()
                .map(|a| (CirclePoint::new(a.theta), a.mass))
                .collect(),
        )
        .map_err(D::Error::custom)?;
        Ok(InnerFunction::new(zeros, atoms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{grid_angle, Arc};
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn blaschke_examples() {
        let z0 = ZeroList::simple(&[c(0.0, 0.0)]).unwrap();
        let z = c(0.3, -0.2);
        assert_eq!(blaschke_eval(&z0, z), z);
        let a = c(0.4, 0.3);
        assert!(blaschke_eval(&ZeroList::simple(&[a]).unwrap(), a).norm() < 1e-16);
        let half = ZeroList::simple(&[c(0.5, 0.0)]).unwrap();
        assert!((blaschke_eval(&half, c(0.0, 0.0)) - c(0.5, 0.0)).norm() < 1e-16);
        assert!(ZeroList::simple(&[c(1.0, 0.0)]).is_err());
        assert!(ZeroList::new(vec![(c(0.1, 0.0), 0)]).is_err());
    }

    #[test]
    fn singular_examples() {
        let m = 1.3;
        let s = SingularMeasure::atom(0.0, m).unwrap();
        assert!((singular_inner_eval(&s, c(0.0, 0.0)).re - (-m / TAU).exp()).abs() < 1e-15);
        let mut prev = 1.0;
        for rho in [0.9, 0.99, 0.999] {
            let v = singular_inner_eval(&s, c(rho, 0.0)).norm();
            let oracle = (-(m / TAU) * (1.0 + rho) / (1.0 - rho)).exp();
            assert!((v - oracle).abs() <= 1e-12 * oracle.max(1e-300));
            assert!(v < prev);
            prev = v;
        }
        let far = |rho: f64| singular_inner_eval(&s, c(-rho, 0.0)).norm();
        assert!(far(0.999) > far(0.9) && (far(0.999999) - 1.0).abs() < 1e-5);
        assert_eq!(singular_inner_eval(&s, c(1.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn unimodular_on_the_circle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let u = InnerFunction::random(&mut rng, 8, 0.95, 4, TAU);
            let n = 512;
            for k in 0..n {
                let p = CirclePoint::new(grid_angle(k, n));
                if u.singular.atoms().iter().any(|a| a.0.chord(p) < 0.1) {
                    continue;
                }
                assert!((u.eval(p.to_complex()).norm() - 1.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn restriction_partitions() {
        let s = SingularMeasure::new(vec![
            (CirclePoint::new(0.0), 1.0),
            (CirclePoint::new(2.0), 0.5),
            (CirclePoint::new(4.0), 2.0),
        ])
        .unwrap();
        let k = ArcUnion::new(vec![Arc::new(CirclePoint::new(1.0), CirclePoint::new(3.0))]).unwrap();
        let kc = ClosedBoundarySet::from_complement(k.clone());
        let a = restrict_singular(&s, &k);
        let b = restrict_singular(&s, &kc);
        assert_eq!(a.atoms().len(), 1);
        assert_eq!(b.atoms().len(), 2);
        for j in 0..64 {
            let z = grid_unit(j, 64) * 0.97;
            let d = singular_inner_eval(&a, z) * singular_inner_eval(&b, z) - singular_inner_eval(&s, z);
            assert!(d.norm() < 1e-12);
        }
        let none = ArcUnion::new(vec![Arc::new(CirclePoint::new(5.0), CirclePoint::new(6.0))]).unwrap();
        assert!(restrict_singular(&s, &none).is_empty());
    }

    #[test]
    fn counting_examples() {
        let u = InnerFunction::new(ZeroList::simple(&[c(0.0, 0.0)]).unwrap(), SingularMeasure::default());
        assert!((counting_function(&u, CirclePoint::new(1.0)).unwrap() - 1.0).abs() < 1e-15);
        let m = 0.7;
        let v = InnerFunction::new(ZeroList::default(), SingularMeasure::atom(0.0, m).unwrap());
        let a = counting_function(&v, CirclePoint::new(PI)).unwrap();
        assert!((a - m / (4.0 * PI)).abs() < 1e-15);
        assert!(counting_function(&v, CirclePoint::new(0.0)).is_err());
        let r = 0.6;
        let w = InnerFunction::new(ZeroList::simple(&[c(r, 0.0)]).unwrap(), SingularMeasure::default());
        let a = counting_function(&w, CirclePoint::new(0.0)).unwrap();
        assert!((a - (1.0 + r) / (1.0 - r)).abs() < 1e-12);
    }

    #[test]
    fn fpr2_examples() {
        let u = InnerFunction::new(ZeroList::simple(&[c(0.0, 0.0)]).unwrap(), SingularMeasure::default());
        match fpr2_check(&u, CirclePoint::new(0.0), 0.9).unwrap() {
            Fpr2Check::Evaluated { lhs, rhs, holds, .. } => {
                assert!((lhs - 0.9).abs() < 1e-14);
                assert!((rhs - (-0.0125f64).exp()).abs() < 1e-14);
                assert!(holds);
            }
            other => panic!("{other:?}"),
        }
        let v = InnerFunction::new(ZeroList::default(), SingularMeasure::atom(0.0, TAU).unwrap());
        match fpr2_check(&v, CirclePoint::new(PI), 0.5).unwrap() {
            Fpr2Check::Evaluated { lhs, rhs, holds, .. } => {
                // exponent −(1/2π)·2π·(1 − 1/2)/(1 + 1/2)
                assert!((lhs - (-1.0f64 / 3.0).exp()).abs() < 1e-14);
                assert!((rhs - (-0.5f64 / 8.0 * 0.5).exp()).abs() < 1e-14);
                assert!(holds);
            }
            other => panic!("{other:?}"),
        }
        let near = fpr2_check(&v, CirclePoint::new(0.1), 0.5).unwrap();
        assert!(near.holds().is_none());
        assert!(fpr2_check(&InnerFunction::trivial(), CirclePoint::new(0.0), 0.5)
            .unwrap()
            .holds()
            .is_none());
    }

    #[test]
    fn small_sweep_holds() {
        for t in fpr2_sweep(200, 3).unwrap() {
            assert_eq!(t.check.holds(), Some(true), "{t:?}");
        }
    }

    #[test]
    fn json_round_trip() {
        let u = InnerFunction::new(
            ZeroList::new(vec![(c(0.5, -0.25), 2)]).unwrap(),
            SingularMeasure::atom(1.5, 0.25).unwrap(),
        );
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"{"zeros":[{"re":0.5,"im":-0.25,"mult":2}],"atoms":[{"theta":1.5,"mass":0.25}]}"#);
        let back: InnerFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, u);
        assert!(serde_json::from_str::<InnerFunction>(r#"{"zeros":[{"re":1.0,"im":0,"mult":1}]}"#).is_err());
    }
}
