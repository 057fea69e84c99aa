//! Built-in and user-supplied scenarios for the exhaustion diagnostics.
//!
//! For a scenario `(g, E, S, ρ, N_max)`, with `Γ_N` the union of the `N`
//! longest complementary arcs of `E`:
//!
//! - the product family is `S·g²·g_{Γ_N^c}` against `S·g²`;
//! - the power family is `S·U_g·O_g^ρ·g_{Γ_N^c}` against `S·U_g·O_g^ρ`,
//!   i.e. the inner factor of `S·g` times the `ρ`-th power of its outer factor.
//!
//! Each family is checked for gap decay in `N` and for uniformly bounded
//! Lipschitz profiles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::convergence::{convergence_table, ConvergenceTable};
use super::mollifier::psi_mollifier;
use crate::boundary::{builtin, default_bands, lip_profile, BoundaryFunction};
use crate::circle::{gamma_exhaustion, CirclePoint, ClosedBoundarySet, ComplexGrid};
use crate::error::{Error, Result};
use crate::factorization::{inner_part, outer_part, InnerFunction, SingularMeasure, ZeroList};
use crate::moduli::Modulus;

/// Allowed ratio between the largest member profile and the target profile.
pub const PROFILE_BOUND_FACTOR: f64 = 10.0;

/// Number of bands in the profile check.
const PROFILE_BANDS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomSpec {
    pub theta: f64,
    pub mass: f64,
}

/// Scenario JSON: `{g, E, measure, rho, gamma_N, omega, grid_n, seed}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    pub g: String,
    #[serde(rename = "E")]
    pub e: ClosedBoundarySet,
    #[serde(default)]
    pub measure: Vec<AtomSpec>,
    pub rho: f64,
    #[serde(rename = "gamma_N")]
    pub gamma_n: usize,
    pub omega: String,
    pub grid_n: usize,
    pub seed: u64,
}

/// Deliberately broken variants used as negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Standard,
    /// Uses `g_{Γ_N}` in place of `g_{Γ_N^c}`; the family then tends to a
    /// different limit.
    SwappedComplement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Product,
    Power,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub family: Family,
    pub variant: Variant,
    pub table: ConvergenceTable,
    /// `max_δ M(δ)` for each `N`.
    pub member_profiles: Vec<f64>,
    pub target_profile: f64,
    pub gate: bool,
    pub bounded: bool,
}

impl ScenarioReport {
    pub fn passes(&self) -> bool {
        self.gate && self.bounded
    }
}

impl Scenario {
    /// `E = {1}`, `g = 1 − z`, one unit atom at 1, `ρ = 2`, `N ≤ 6`.
    pub fn point() -> Self {
        Scenario {
            name: "point".into(),
            g: "oneminusz".into(),
            e: ClosedBoundarySet::from_angles(&[0.0]).expect("one point"),
            measure: vec![AtomSpec { theta: 0.0, mass: 1.0 }],
            rho: 2.0,
            gamma_n: 6,
            omega: "holder:0.5".into(),
            grid_n: crate::circle::DEFAULT_GRID,
            seed: 1,
        }
    }

    /// `E = {1} ∪ {e^{±i 2^{-k}} : k = 0..5}`; the exhaustion peels off arcs
    /// accumulating at 1.
    pub fn cluster() -> Self {
        let mut angles = vec![0.0];
        for k in 0..6 {
            let t = 0.5f64.powi(k);
            angles.push(t);
            angles.push(-t);
        }
        Scenario {
            name: "cluster".into(),
            e: ClosedBoundarySet::from_angles(&angles).expect("finite set"),
            gamma_n: 12,
            ..Self::point()
        }
    }

    pub fn validate(&self) -> Result<()> {
        crate::circle::check_grid_size(self.grid_n)?;
        if self.gamma_n == 0 {
            return Err(Error::InvalidArgument {
                arg: "gamma_N",
                reason: "must be at least 1".into(),
            });
        }
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return Err(Error::InvalidArgument {
                arg: "rho",
                reason: format!("{} is not positive", self.rho),
            });
        }
        Ok(())
    }

    fn singular(&self) -> Result<InnerFunction> {
        let atoms = self
            .measure
            .iter()
            .map(|a| (CirclePoint::new(a.theta), a.mass))
            .collect();
        Ok(InnerFunction::new(ZeroList::default(), SingularMeasure::new(atoms)?))
    }

    pub fn run(&self, family: Family, variant: Variant) -> Result<ScenarioReport> {
        self.validate()?;
        let n = self.grid_n;
        let w = Modulus::parse(&self.omega)?;
        let g = builtin::parse(&self.g, n)?;
        let s = self.singular()?.boundary_values(n)?;
        let outer = outer_part(&g)?;
        let prefactor: Vec<Complex64> = match family {
            Family::Product => g.values().iter().map(|v| v * v).collect(),
            Family::Power => {
                let u = inner_part(&g, 0.0)?.values;
                let o_rho = outer.weighted(&vec![self.rho; n])?.boundary_values();
                u.values().iter().zip(o_rho.values()).map(|(a, b)| a * b).collect()
            }
        };
        let target_vals: Vec<Complex64> = s.values().iter().zip(&prefactor).map(|(a, b)| a * b).collect();
        let target = BoundaryFunction::from_samples(
            format!("{}:{family:?}:target", self.name),
            ComplexGrid::new(target_vals.clone())?,
        );
        let bands = default_bands(n, PROFILE_BANDS);
        let mut members = Vec::with_capacity(self.gamma_n);
        let mut member_profiles = Vec::with_capacity(self.gamma_n);
        for big_n in 1..=self.gamma_n {
            let gamma = gamma_exhaustion(&self.e, big_n)?;
            let cover = gamma.cell_weights(n);
            let weights: Vec<f64> = match variant {
                Variant::Standard => cover.iter().map(|c| 1.0 - c).collect(),
                Variant::SwappedComplement => cover,
            };
            let trunc = outer.weighted(&weights)?.boundary_values();
            let vals = target_vals.iter().zip(trunc.values()).map(|(a, b)| a * b).collect();
            let m = BoundaryFunction::from_samples(
                format!("{}:{family:?}:N={big_n}", self.name),
                ComplexGrid::new(vals)?,
            );
            member_profiles.push(lip_profile(&m, &w, &bands, self.seed)?.max_value());
            members.push((big_n as f64, m));
        }
        let table = convergence_table(&members, &target, &w, self.seed)?;
        let target_profile = lip_profile(&target, &w, &bands, self.seed)?.max_value();
        let bound = member_profiles.iter().copied().fold(0.0, f64::max);
        Ok(ScenarioReport {
            scenario: self.name.clone(),
            family,
            variant,
            gate: table.passes_gate(),
            bounded: bound <= PROFILE_BOUND_FACTOR * target_profile,
            table,
            member_profiles,
            target_profile,
        })
    }
}

/// The built-in catalog.
pub fn catalog() -> Vec<Scenario> {
    vec![Scenario::point(), Scenario::cluster()]
}

/// `ψ_δ·f` for each `δ`, against `f`.
pub fn mollifier_family(
    f: &BoundaryFunction,
    points: &[CirclePoint],
    deltas: &[f64],
) -> Result<Vec<(f64, BoundaryFunction)>> {
    deltas
        .iter()
        .map(|&d| Ok((d, psi_mollifier(points, d, f.n())?.mul(f)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = Scenario::point();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"gamma_N\":6") && text.contains("\"E\":[{"));
        let back: Scenario = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn point_scenario_is_exact() {
        let s = Scenario { grid_n: 512, ..Scenario::point() };
        let r = s.run(Family::Product, Variant::Standard).unwrap();
        assert!(r.table.total_gaps.iter().all(|&g| g == 0.0));
        assert!(r.passes());
        let bad = s.run(Family::Product, Variant::SwappedComplement).unwrap();
        assert!(!bad.gate);
    }
}
