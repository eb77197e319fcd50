//! Alternating Weyl sums: the double deformation `K_{ν,μ}(p,q)`, branching
//! polynomials, parabolic q-analogues, and the decomposition identity
//! linking them.

use crate::error::{Error, Result};
use crate::kostant::{KostantFunctions, PartitionEngine, Series, Weighting};
use crate::poly::BiPoly;
use crate::rootsys::{ParabolicData, RootSystem, RootVector, Weight, WeylElement};

/// A root system with a chosen Levi subset and all engines needed to
/// evaluate the alternating sums over it. Shareable across threads.
#[derive(Debug)]
pub struct Context {
    pub rs: RootSystem,
    pub par: ParabolicData,
    pub weyl: Vec<WeylElement>,
    pub kostant: KostantFunctions,
    /// The one-variable q-partition function, kept separate from `kostant`
    /// so that `K(q,q)` can be cross-checked against it.
    pub single: PartitionEngine,
    /// Per-root factor `(v+1)^m`.
    pub colored: PartitionEngine,
    /// Per-root factor `v(v+1)^{m-1}`.
    pub admissible: PartitionEngine,
}

impl Context {
    pub fn new(rs: RootSystem, levi: &[usize]) -> Result<Self> {
        let par = rs.parabolic(levi)?;
        let weyl = rs.weyl_group()?;
        let kostant = KostantFunctions::new(&rs, &par);
        let single = PartitionEngine::new(&rs, &par, Series::Single, Weighting::Plain);
        let colored = PartitionEngine::new(&rs, &par, Series::Full, Weighting::Colored);
        let admissible = PartitionEngine::new(&rs, &par, Series::Full, Weighting::Admissible);
        Ok(Self {
            rs,
            par,
            weyl,
            kostant,
            single,
            colored,
            admissible,
        })
    }

    /// Parses `"C3"` and a one-based Levi list such as `"1,2"`.
    pub fn parse(system: &str, levi: &str) -> Result<Self> {
        let rs: RootSystem = system.parse()?;
        let levi = crate::rootsys::parse_levi(levi, rs.rank)?;
        Self::new(rs, &levi)
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn weight(&self, coords: &[i64]) -> Result<Weight> {
        let w = Weight(coords.to_vec());
        self.rs.check_weight(&w)?;
        Ok(w)
    }

    fn check_dominant(&self, v: &Weight) -> Result<()> {
        self.rs.check_weight(v)?;
        if !v.is_dominant() {
            return Err(Error::NotDominant(v.0.clone()));
        }
        Ok(())
    }

    fn check_levi_dominant(&self, v: &Weight) -> Result<()> {
        self.rs.check_weight(v)?;
        if !self.par.is_levi_dominant(v) {
            return Err(Error::NotLeviDominant(v.0.clone()));
        }
        Ok(())
    }

    /// `Σ_{w ∈ group} ε(w) · engine(w(top) - bottom)` with arguments off `Q₊`
    /// pruned before the engine is consulted.
    pub fn alternating_sum(
        &self,
        engine: &PartitionEngine,
        group: &[WeylElement],
        top: &Weight,
        bottom: &Weight,
    ) -> BiPoly {
        let mut total = BiPoly::zero();
        for w in group {
            let arg = &w.act(top) - bottom;
            let Some(beta) = self.rs.to_root_coords(&arg) else {
                continue;
            };
            if !beta.is_nonnegative() {
                continue;
            }
            let value = engine.eval(&beta);
            if !value.is_zero() {
                total.add_signed(&value, w.sign());
            }
        }
        total
    }

    /// `K_{ν,μ}(p,q) = Σ_w ε(w) P_{p,q}(w(ν+ρ) - μ - ρ)`.
    pub fn kpq(&self, nu: &Weight, mu: &Weight) -> Result<BiPoly> {
        self.check_dominant(nu)?;
        self.rs.check_weight(mu)?;
        let rho = &self.rs.rho;
        Ok(self.alternating_sum(&self.kostant.full, &self.weyl, &(nu + rho), &(mu + rho)))
    }

    /// The one-variable Lusztig q-analogue `K_{ν,μ}(q)`, from its own engine.
    pub fn lusztig_single(&self, nu: &Weight, mu: &Weight) -> Result<BiPoly> {
        self.check_dominant(nu)?;
        self.rs.check_weight(mu)?;
        let rho = &self.rs.rho;
        Ok(self.alternating_sum(&self.single, &self.weyl, &(nu + rho), &(mu + rho)))
    }

    /// `b_{ν,κ}(p) = Σ_w ε(w) P̂_p(w(ν+ρ) - κ - ρ)`.
    pub fn branching_poly(&self, nu: &Weight, target: &Weight) -> Result<BiPoly> {
        self.check_dominant(nu)?;
        self.check_levi_dominant(target)?;
        let rho = &self.rs.rho;
        Ok(self.alternating_sum(&self.kostant.hat, &self.weyl, &(nu + rho), &(target + rho)))
    }

    /// `K̄_{κ,μ}(q) = Σ_{w̄} ε(w̄) P̄_q(w̄(κ+ρ̄) - μ - ρ̄)` for any `κ`; zero
    /// whenever `κ - μ` leaves the Levi root lattice.
    pub fn kbar_raw(&self, kappa: &Weight, mu: &Weight) -> BiPoly {
        let rho_bar = &self.par.rho_bar;
        self.alternating_sum(
            &self.kostant.bar,
            &self.par.levi_weyl,
            &(kappa + rho_bar),
            &(mu + rho_bar),
        )
    }

    /// `K̄_{κ,μ}(q)` for Levi-dominant `κ`.
    pub fn parabolic_lusztig(&self, kappa: &Weight, mu: &Weight) -> Result<BiPoly> {
        self.check_levi_dominant(kappa)?;
        self.rs.check_weight(mu)?;
        Ok(self.kbar_raw(kappa, mu))
    }

    /// Moves `κ + ρ̄` into the Levi chamber by simple reflections in `Ī`.
    /// Returns the Levi-dominant `λ` with `w̄(κ+ρ̄) - ρ̄ = λ` and `ε(w̄)`, or
    /// `None` when `κ + ρ̄` lies on a wall.
    pub fn levi_dot_dominant(&self, kappa: &Weight) -> Option<(Weight, i32)> {
        let mut x = kappa + &self.par.rho_bar;
        let mut sign = 1;
        loop {
            if self.par.levi.iter().any(|&i| x.0[i] == 0) {
                return None;
            }
            match self.par.levi.iter().find(|&&i| x.0[i] < 0) {
                Some(&i) => {
                    x = self.rs.reflect(i, &x);
                    sign = -sign;
                }
                None => return Some((&x - &self.par.rho_bar, sign)),
            }
        }
    }

    /// `K̄_{κ,μ}(q)` for arbitrary `κ` via the dot action: `ε(w̄) K̄_{λ,μ}(q)`,
    /// or zero on a wall.
    pub fn straighten_kbar(&self, kappa: &Weight, mu: &Weight) -> BiPoly {
        match self.levi_dot_dominant(kappa) {
            Some((lambda, sign)) => {
                let v = self.kbar_raw(&lambda, mu);
                if sign < 0 {
                    -v
                } else {
                    v
                }
            }
            None => BiPoly::zero(),
        }
    }

    /// The Levi-dominant `κ` that can contribute to the decomposition of
    /// `K_{ν,μ}`: `ν - κ ∈ Q₊` and `κ - μ ∈ Q̄₊`. Writing `ν - μ = β`, the
    /// complement coordinates of `ν - κ` are pinned to those of `β` and the
    /// Levi coordinates range over `0..=β_i`.
    pub fn enumerate_levi_highest_weights(&self, nu: &Weight, mu: &Weight) -> Result<Vec<Weight>> {
        self.check_dominant(nu)?;
        self.rs.check_weight(mu)?;
        let Some(beta) = self.rs.to_root_coords(&(nu - mu)) else {
            return Ok(Vec::new());
        };
        if !beta.is_nonnegative() {
            return Ok(Vec::new());
        }
        let ranges: Vec<Vec<i64>> = beta
            .0
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                if self.par.in_levi[i] {
                    (0..=b).collect()
                } else {
                    vec![b]
                }
            })
            .collect();
        let mut out = Vec::new();
        for coords in cartesian(&ranges) {
            let kappa = nu - &self.rs.root_to_weight(&RootVector(coords));
            if self.par.is_levi_dominant(&kappa) {
                out.push(kappa);
            }
        }
        out.sort();
        Ok(out)
    }

    /// `Σ_κ b_{ν,κ}(p) K̄_{κ,μ}(q)` over the enumeration above.
    pub fn decomposition_rhs(&self, nu: &Weight, mu: &Weight) -> Result<BiPoly> {
        let mut total = BiPoly::zero();
        for kappa in self.enumerate_levi_highest_weights(nu, mu)? {
            let kbar = self.kbar_raw(&kappa, mu);
            if kbar.is_zero() {
                continue;
            }
            let b = self.branching_poly(nu, &kappa)?;
            total += &(&b * &kbar);
        }
        Ok(total)
    }

    pub fn decomposition_check(&self, nu: &Weight, mu: &Weight) -> Result<bool> {
        Ok(self.kpq(nu, mu)? == self.decomposition_rhs(nu, mu)?)
    }

    pub fn specialization_check(&self, nu: &Weight, mu: &Weight) -> Result<SpecializationReport> {
        let k = self.kpq(nu, mu)?;
        let levi_dominant = self.par.is_levi_dominant(mu);
        let k0q = k.specialize(Some(0), None) == self.kbar_raw(nu, mu);
        let kp0 = if levi_dominant {
            Some(k.specialize(None, Some(0)) == self.branching_poly(nu, mu)?)
        } else {
            None
        };
        let kqq = k.collapse_p_into_q() == self.lusztig_single(nu, mu)?;
        let k1q_nonnegative = if levi_dominant {
            Some(k.specialize(Some(1), None).is_nonnegative())
        } else {
            None
        };
        Ok(SpecializationReport {
            k0q,
            kp0,
            kqq,
            k1q_nonnegative,
        })
    }

    /// Tests `b_{ν,κ}(p) ∈ ℕ[p]` for every `ν` in the grid and every
    /// Levi-dominant `κ = ν - β` with `β` in the root box of the given bound.
    /// Reports; never fails.
    pub fn conjecture_scan(&self, nu_grid: &[Weight], bound: i64) -> Result<ConjectureReport> {
        let mut report = ConjectureReport::default();
        for nu in nu_grid {
            for beta in crate::kostant::simplex_box(self.rank(), bound) {
                let kappa = nu - &self.rs.root_to_weight(&beta);
                if !self.par.is_levi_dominant(&kappa) {
                    continue;
                }
                let b = self.branching_poly(nu, &kappa)?;
                if b.is_zero() {
                    continue;
                }
                let dominant = kappa.is_dominant();
                if dominant {
                    report.dominant_targets += 1;
                } else {
                    report.other_targets += 1;
                }
                if !b.is_nonnegative() {
                    let entry = (nu.clone(), kappa.clone(), b);
                    if dominant {
                        report.dominant_violations.push(entry);
                    } else {
                        report.other_negative.push(entry);
                    }
                }
            }
        }
        Ok(report)
    }
}

/// One flag per specialization identity; `None` where the identity does not
/// apply to the given `μ`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SpecializationReport {
    /// `K(0,q) = K̄_{ν,μ}(q)`.
    pub k0q: bool,
    /// `K(p,0) = b_{ν,μ}(p)`, for Levi-dominant `μ`.
    pub kp0: Option<bool>,
    /// `K(q,q)` equals the one-variable analogue.
    pub kqq: bool,
    /// `K(1,q) ∈ ℕ[q]`, for Levi-dominant `μ`.
    pub k1q_nonnegative: Option<bool>,
}

impl SpecializationReport {
    pub fn all_hold(&self) -> bool {
        self.k0q && self.kp0 != Some(false) && self.kqq && self.k1q_nonnegative != Some(false)
    }
}

pub type ScanEntry = (Weight, Weight, BiPoly);

#[derive(Clone, Debug, Default)]
pub struct ConjectureReport {
    pub dominant_targets: usize,
    pub other_targets: usize,
    pub dominant_violations: Vec<ScanEntry>,
    pub other_negative: Vec<ScanEntry>,
}

fn cartesian(ranges: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for r in ranges {
        let mut next = Vec::with_capacity(out.len() * r.len());
        for prefix in &out {
            for &c in r {
                let mut v = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}
