//! Stabilization of `K_{ν+kδ, μ+kδ}(p,q)` in `k`, the constant-pairing
//! hypothesis and the p-power factorization of stable branching polynomials.

use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lusztig::Context;
use crate::poly::BiPoly;
use crate::rootsys::{RootSystem, RootVector, Weight};

/// Default cap on the number of translation steps.
pub const DEFAULT_STAB_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationResult {
    /// First `k` from which the sequence agrees with the closed form (checked
    /// at `k` and `k + 1`).
    pub k_stable: usize,
    pub value: BiPoly,
    pub closed_form: BiPoly,
    #[serde(serialize_with = "serialize_ratio")]
    pub hypothesis_c: Option<Ratio<i64>>,
    /// Wall time of each translation step, in milliseconds.
    pub step_ms: Vec<u128>,
}

fn serialize_ratio<S: serde::Serializer>(c: &Option<Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
    match c {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// `⟨δ, α⟩` if it takes one positive value on every complement root.
pub fn constant_pairing(ctx: &Context, delta: &Weight) -> Option<Ratio<i64>> {
    let mut values = ctx
        .par
        .complement_roots
        .iter()
        .map(|a| ctx.rs.weight_pairing(delta, &ctx.rs.root_to_weight(a)));
    let first = values.next()?;
    if first <= Ratio::from_integer(0) {
        return None;
    }
    values.all(|v| v == first).then_some(first)
}

impl Context {
    /// `Σ_{w̄} ε(w̄) P_{p,q}(w̄(ν+ρ) - μ - ρ)`.
    pub fn kpq_stab_closed_form(&self, nu: &Weight, mu: &Weight) -> BiPoly {
        let rho = &self.rs.rho;
        self.alternating_sum(&self.kostant.full, &self.par.levi_weyl, &(nu + rho), &(mu + rho))
    }

    /// Iterates `K_{ν+kδ, μ+kδ}` until two consecutive values equal the
    /// closed form over `W̄`.
    pub fn stabilize_along(
        &self,
        delta: &Weight,
        nu: &Weight,
        mu: &Weight,
        cap: usize,
    ) -> Result<StabilizationResult> {
        if !nu.is_dominant() {
            return Err(Error::NotDominant(nu.0.clone()));
        }
        self.rs.check_weight(mu)?;
        let closed_form = self.kpq_stab_closed_form(nu, mu);
        let mut step_ms = Vec::new();
        let mut first_match: Option<usize> = None;
        for k in 0..=cap {
            let start = Instant::now();
            let shift = k as i64 * delta;
            let value = self.kpq(&(nu + &shift), &(mu + &shift))?;
            step_ms.push(start.elapsed().as_millis());
            if value == closed_form {
                match first_match {
                    Some(k0) => {
                        return Ok(StabilizationResult {
                            k_stable: k0,
                            value,
                            closed_form,
                            hypothesis_c: constant_pairing(self, delta),
                            step_ms,
                        })
                    }
                    None => first_match = Some(k),
                }
            } else {
                first_match = None;
            }
        }
        Err(Error::NotStabilized { cap })
    }

    /// Stabilization along `ρ◇`.
    pub fn kpq_stab(&self, nu: &Weight, mu: &Weight, cap: usize) -> Result<StabilizationResult> {
        let rho_diamond = self.par.rho_diamond.clone();
        self.stabilize_along(&rho_diamond, nu, mu, cap)
    }

    /// `Σ_{w̄} ε(w̄) P̂_p(w̄(ν+ρ̄) - κ - ρ̄)`.
    pub fn b_stab(&self, nu: &Weight, target: &Weight) -> Result<BiPoly> {
        if !nu.is_dominant() {
            return Err(Error::NotDominant(nu.0.clone()));
        }
        if !self.par.is_levi_dominant(target) {
            return Err(Error::NotLeviDominant(target.0.clone()));
        }
        let rho_bar = &self.par.rho_bar;
        Ok(self.alternating_sum(&self.kostant.hat, &self.par.levi_weyl, &(nu + rho_bar), &(target + rho_bar)))
    }

    /// The constant `c` with `⟨ρ◇, α⟩ = c` on every complement root.
    pub fn hypothesis_h_check(&self) -> Option<Ratio<i64>> {
        constant_pairing(self, &self.par.rho_diamond)
    }

    /// `L(γ) = ⟨ρ◇, γ⟩ / c`.
    pub fn l_statistic(&self, gamma: &RootVector) -> Result<i64> {
        self.l_statistic_along(&self.par.rho_diamond, gamma)
    }

    pub fn l_statistic_along(&self, delta: &Weight, gamma: &RootVector) -> Result<i64> {
        let c = constant_pairing(self, delta).ok_or(Error::HypothesisFails)?;
        let l = self.rs.weight_pairing(delta, &self.rs.root_to_weight(gamma)) / c;
        if !l.is_integer() {
            return Err(Error::Precondition(format!("L({gamma}) = {l} is not an integer")));
        }
        Ok(l.to_integer())
    }

    /// Checks, for Levi-dominant `μ`:
    /// `b_stab(ν,κ) = p^{L(ν-κ)} b_stab(ν,κ)|_{p=1}` for each contributing `κ`,
    /// the stable value as `Σ_κ p^{L(ν-κ)} b_stab(1) K̄_{κ,μ}(q)`, and
    /// nonnegativity of that value.
    pub fn factorization_check(&self, nu: &Weight, mu: &Weight) -> Result<bool> {
        self.factorization_check_along(&self.par.rho_diamond.clone(), nu, mu)
    }

    pub fn factorization_check_along(&self, delta: &Weight, nu: &Weight, mu: &Weight) -> Result<bool> {
        if constant_pairing(self, delta).is_none() {
            return Err(Error::HypothesisFails);
        }
        if !self.par.is_levi_dominant(mu) {
            return Err(Error::NotLeviDominant(mu.0.clone()));
        }
        let mut rebuilt = BiPoly::zero();
        for kappa in self.enumerate_levi_highest_weights(nu, mu)? {
            let b = self.b_stab(nu, &kappa)?;
            let l = self.l_statistic_along(delta, &self.rs.to_root_coords(&(nu - &kappa)).expect("κ ≤ ν"))?;
            if l < 0 {
                return Ok(false);
            }
            let at_one = b.specialize(Some(1), None);
            let factored = at_one.shift_degrees(l as u32, 0);
            if b != factored {
                return Ok(false);
            }
            rebuilt += &(&factored * &self.kbar_raw(&kappa, mu));
        }
        let closed = self.kpq_stab_closed_form(nu, mu);
        Ok(closed == rebuilt && closed.is_nonnegative())
    }

    /// Every monomial of `P̂_p(γ)` has p-degree `L(γ)`.
    pub fn single_power_check(&self, gamma: &RootVector) -> Result<bool> {
        let l = self.l_statistic(gamma)?;
        let value = self.kostant.kostant_hat_p(gamma);
        let ok = value.terms().all(|((dp, _), _)| i64::from(dp) == l);
        Ok(ok)
    }

    /// `ρ◇ - w(ρ◇) ∈ Q₊ ∖ {0}` for every `w ∉ W̄`.
    pub fn beta_w_check(&self) -> bool {
        let levi: std::collections::HashSet<Vec<i64>> =
            self.par.levi_weyl.iter().map(|w| w.matrix().to_vec()).collect();
        let rd = &self.par.rho_diamond;
        self.weyl.iter().all(|w| {
            let diff = rd - &w.act(rd);
            let in_levi = levi.contains(w.matrix());
            match self.rs.to_root_coords(&diff) {
                Some(beta) => {
                    if in_levi {
                        beta.is_zero()
                    } else {
                        beta.is_nonnegative() && !beta.is_zero()
                    }
                }
                None => false,
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaStabilization {
    /// One-based Levi nodes `{i : ⟨δ, α_i∨⟩ = 0}`.
    pub levi: Vec<usize>,
    pub result: StabilizationResult,
    /// The `L_δ` factorization, run when the pairing with `δ` is constant on
    /// complement roots and `μ` is Levi-dominant.
    pub factorization: Option<bool>,
}

/// Stabilization along a dominant `δ`, with the Levi read off from the zero
/// coordinates of `δ`.
pub fn delta_stab(
    rs: &RootSystem,
    delta: &Weight,
    nu: &Weight,
    mu: &Weight,
    cap: usize,
) -> Result<DeltaStabilization> {
    rs.check_weight(delta)?;
    if !delta.is_dominant() {
        return Err(Error::NotDominant(delta.0.clone()));
    }
    let levi: Vec<usize> = (0..rs.rank).filter(|&i| delta.0[i] == 0).collect();
    let ctx = Context::new(rs.clone(), &levi)?;
    let result = ctx.stabilize_along(delta, nu, mu, cap)?;
    let factorization = if result.hypothesis_c.is_some() && ctx.par.is_levi_dominant(mu) {
        Some(ctx.factorization_check_along(delta, nu, mu)?)
    } else {
        None
    };
    Ok(DeltaStabilization {
        levi: levi.iter().map(|i| i + 1).collect(),
        result,
        factorization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{dominant_grid, mu_grid};

    fn ctx(name: &str, levi: &[usize]) -> Context {
        Context::new(name.parse().unwrap(), levi).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn trivial_cases() {
        let c = ctx("C2", &[0]);
        let nu = w(&[1, 1]);
        let r = c.kpq_stab(&nu, &nu, DEFAULT_STAB_CAP).unwrap();
        assert_eq!((r.k_stable, r.value), (0, BiPoly::one()));
        let full = ctx("C2", &[0, 1]);
        let r = full.kpq_stab(&nu, &w(&[0, 0]), DEFAULT_STAB_CAP).unwrap();
        assert_eq!(r.k_stable, 0);
        assert_eq!(r.value, full.kpq(&nu, &w(&[0, 0])).unwrap());
    }

    #[test]
    fn c2_stabilizes_and_stays() {
        let c = ctx("C2", &[0]);
        let nu = w(&[1, 1]);
        for mu in mu_grid(&c.rs, &nu, 4) {
            let r = c.kpq_stab(&nu, &mu, DEFAULT_STAB_CAP).unwrap();
            assert_eq!(r.value, r.closed_form);
            let k = r.k_stable as i64 + 3;
            let shift = k * &c.par.rho_diamond;
            assert_eq!(c.kpq(&(&nu + &shift), &(&mu + &shift)).unwrap(), r.value, "{mu}");
        }
    }

    #[test]
    fn hypothesis_constants() {
        assert_eq!(ctx("C3", &[0, 1]).hypothesis_h_check(), Some(Ratio::from_integer(2)));
        assert_eq!(ctx("C4", &[0, 1, 2]).hypothesis_h_check(), Some(Ratio::from_integer(2)));
        assert_eq!(ctx("D4", &[0, 1, 2]).hypothesis_h_check(), Some(Ratio::from_integer(1)));
        assert_eq!(ctx("B3", &[1, 2]).hypothesis_h_check(), Some(Ratio::from_integer(1)));
        assert_eq!(ctx("A3", &[0, 2]).hypothesis_h_check(), Some(Ratio::from_integer(1)));
        // two complement nodes: α₁ and α₁+α₂ pair differently with ω₁+ω₂
        assert_eq!(ctx("A3", &[2]).hypothesis_h_check(), None);
        assert_eq!(ctx("C2", &[0, 1]).hypothesis_h_check(), None);
    }

    #[test]
    fn l_statistic_examples() {
        let c = ctx("C2", &[0]);
        assert_eq!(c.l_statistic(&RootVector(vec![0, 0])).unwrap(), 0);
        for a in &c.par.complement_roots {
            assert_eq!(c.l_statistic(a).unwrap(), 1);
        }
        // α₁ + 2α₂ = (α₁+α₂) + α₂ = (2α₁+α₂) + α₂ - α₁ ...: two complement roots
        assert_eq!(c.l_statistic(&RootVector(vec![1, 2])).unwrap(), 2);
        assert!(c.single_power_check(&RootVector(vec![1, 2])).unwrap());
        assert!(ctx("A3", &[2]).l_statistic(&RootVector(vec![1, 0, 0])).is_err());
    }

    #[test]
    fn b_stab_matches_shifted_branching() {
        let c = ctx("C2", &[0]);
        let nu = w(&[0, 1]);
        let target = w(&[0, 0]);
        let stable = c.b_stab(&nu, &target).unwrap();
        let shifted: Vec<BiPoly> = (0..8)
            .map(|k| {
                let s = k * &c.par.rho_diamond;
                c.branching_poly(&(&nu + &s), &(&target + &s)).unwrap()
            })
            .collect();
        assert_eq!(shifted.last().unwrap(), &stable);
        assert_eq!(c.b_stab(&nu, &nu).unwrap(), BiPoly::one());
    }

    #[test]
    fn factorization_small() {
        for (name, levi) in [("C2", vec![0]), ("B3", vec![1, 2])] {
            let c = ctx(name, &levi);
            for nu in dominant_grid(c.rank(), 2) {
                for mu in mu_grid(&c.rs, &nu, 4) {
                    if c.par.is_levi_dominant(&mu) {
                        assert!(c.factorization_check(&nu, &mu).unwrap(), "{name} {nu} {mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn beta_w_witnesses() {
        for name in ["A3", "B3", "C3", "G2"] {
            let rs: RootSystem = name.parse().unwrap();
            for levi in rs.all_levi_subsets() {
                let c = Context::new(rs.clone(), &levi).unwrap();
                assert!(c.beta_w_check(), "{name} {levi:?}");
            }
        }
    }

    #[test]
    fn delta_examples() {
        let rs: RootSystem = "C2".parse().unwrap();
        let c = ctx("C2", &[0]);
        let nu = w(&[1, 1]);
        let mu = w(&[1, -1]);
        let base = c.kpq_stab(&nu, &mu, DEFAULT_STAB_CAP).unwrap();
        let same = delta_stab(&rs, &c.par.rho_diamond, &nu, &mu, DEFAULT_STAB_CAP).unwrap();
        assert_eq!(same.levi, vec![1]);
        assert_eq!(same.result.k_stable, base.k_stable);
        assert_eq!(same.result.value, base.value);
        assert_eq!(same.result.hypothesis_c, base.hypothesis_c);
        let doubled = delta_stab(&rs, &(2 * &c.par.rho_diamond), &nu, &mu, DEFAULT_STAB_CAP).unwrap();
        assert_eq!(doubled.result.value, base.value);
        assert!(doubled.result.k_stable <= base.k_stable);
        let regular = delta_stab(&rs, &w(&[1, 2]), &nu, &mu, DEFAULT_STAB_CAP).unwrap();
        assert!(regular.levi.is_empty());
        let beta = rs.to_root_coords(&(&nu - &mu)).unwrap();
        let trivial = ctx("C2", &[]);
        assert_eq!(regular.result.value, trivial.kostant.kostant_pq(&beta));
    }
}
