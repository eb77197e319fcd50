//! Coloured-root statistics, the shifted deformation `K(p+1,q+1)`, the
//! μ-charge `χ`, and Freudenthal's multiplicity recursion.

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::kostant::{box_below, simplex_box};
use crate::lusztig::Context;
use crate::poly::BiPoly;
use crate::rootsys::{RootSystem, RootVector, Weight};

/// Default cap on `dim V(ν)`.
pub const DEFAULT_DIM_CAP: u64 = 100_000;

/// Default cap on the coordinate sum of `β` for the brute-force enumerator.
pub const DEFAULT_BRUTE_FORCE_BOUND: i64 = 8;

/// Weight → multiplicity for one irreducible module.
pub type WeightMultiplicityMap = BTreeMap<Weight, i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Blue,
    Red,
}

/// A decomposition of `β` into coloured, individually labelled root copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredConfiguration {
    /// One colour word per positive root, in root order; its length is the
    /// number of copies of that root.
    pub words: Vec<Vec<Color>>,
}

impl ColoredConfiguration {
    /// Every root that occurs has its first copy blue.
    pub fn is_admissible(&self) -> bool {
        self.words.iter().all(|w| w.first().is_none_or(|&c| c == Color::Blue))
    }
}

/// Weyl's dimension formula.
pub fn weyl_dimension(rs: &RootSystem, nu: &Weight) -> u64 {
    let top = nu + &rs.rho;
    let mut dim = Ratio::from_integer(1i128);
    for alpha in rs.positive_root_weights() {
        let num = rs.scaled_weight_pairing(&top, alpha) as i128;
        let den = rs.scaled_weight_pairing(&rs.rho, alpha) as i128;
        dim *= Ratio::new(num, den);
    }
    dim.to_integer() as u64
}

/// Dominant weights `κ ≤ ν`, highest first by depth below `ν`.
pub fn dominant_weights_below(rs: &RootSystem, nu: &Weight) -> Vec<Weight> {
    let mut seen = std::collections::HashSet::from([nu.clone()]);
    let mut layer = vec![nu.clone()];
    let mut out = vec![nu.clone()];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for k in &layer {
            for alpha in rs.positive_root_weights() {
                let lower = k - alpha;
                if lower.is_dominant() && seen.insert(lower.clone()) {
                    next.push(lower);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort_by_key(|k| {
        let depth: i64 = rs.to_root_coords(&(nu - k)).map_or(i64::MAX, |r| r.height());
        (depth, k.clone())
    });
    out
}

/// All weight multiplicities of `V(ν)` by Freudenthal's formula on the
/// dominant weights, spread over each W-orbit.
pub fn freudenthal(rs: &RootSystem, nu: &Weight) -> Result<WeightMultiplicityMap> {
    freudenthal_capped(rs, nu, DEFAULT_DIM_CAP)
}

pub fn freudenthal_capped(rs: &RootSystem, nu: &Weight, cap: u64) -> Result<WeightMultiplicityMap> {
    rs.check_weight(nu)?;
    if !nu.is_dominant() {
        return Err(Error::NotDominant(nu.0.clone()));
    }
    let dim = weyl_dimension(rs, nu);
    if dim > cap {
        return Err(Error::CapExceeded {
            what: format!("dim V{nu} = {dim}"),
            cap: cap as usize,
        });
    }
    let dominant = dominant_weights_below(rs, nu);
    let top = nu + &rs.rho;
    let norm_top = rs.scaled_weight_pairing(&top, &top);
    let mut mult: HashMap<Weight, i64> = HashMap::from([(nu.clone(), 1)]);
    for mu in dominant.iter().skip(1) {
        let shifted = mu + &rs.rho;
        let denom = norm_top - rs.scaled_weight_pairing(&shifted, &shifted);
        let mut numer = 0i64;
        for alpha in rs.positive_root_weights() {
            let mut x = mu + alpha;
            loop {
                let (rep, _) = rs.to_dominant(&x);
                // α-strings through weights are unbroken, and every dominant
                // rep above μ was handled earlier
                let Some(&m) = mult.get(&rep) else {
                    break;
                };
                numer += m * rs.scaled_weight_pairing(&x, alpha);
                x = &x + alpha;
            }
        }
        let value = 2 * numer / denom;
        debug_assert_eq!(2 * numer % denom, 0);
        if value != 0 {
            mult.insert(mu.clone(), value);
        }
    }
    let mut out = WeightMultiplicityMap::new();
    for (mu, m) in mult {
        for wt in rs.orbit(&mu) {
            out.insert(wt, m);
        }
    }
    Ok(out)
}

impl Context {
    /// `N_{p,q}(β)`: every root copy coloured blue (variable) or red (1).
    pub fn n_pq(&self, beta: &RootVector) -> BiPoly {
        self.colored.eval(beta)
    }

    /// `R_{p,q}(β)`: colourings whose first copy of each root is blue.
    pub fn r_pq(&self, beta: &RootVector) -> BiPoly {
        self.admissible.eval(beta)
    }

    /// `R_{p,q}(β)` by listing every admissible coloured configuration.
    pub fn r_pq_bruteforce(&self, beta: &RootVector) -> Result<BiPoly> {
        self.r_pq_bruteforce_bounded(beta, DEFAULT_BRUTE_FORCE_BOUND)
    }

    pub fn r_pq_bruteforce_bounded(&self, beta: &RootVector, bound: i64) -> Result<BiPoly> {
        if beta.height() > bound {
            return Err(Error::CapExceeded {
                what: format!("coordinate sum of {beta}"),
                cap: bound as usize,
            });
        }
        let mut total = BiPoly::zero();
        if !beta.is_nonnegative() {
            return Ok(total);
        }
        for counts in multiplicity_vectors(&self.rs.positive_roots, beta) {
            for config in colorings(&counts) {
                if !config.is_admissible() {
                    continue;
                }
                let (mut dp, mut dq) = (0, 0);
                for (word, root) in config.words.iter().zip(&self.rs.positive_roots) {
                    let blue = word.iter().filter(|&&c| c == Color::Blue).count() as u32;
                    if self.par.contains_root(root) {
                        dq += blue;
                    } else {
                        dp += blue;
                    }
                }
                total += &BiPoly::monomial(1, dp, dq);
            }
        }
        Ok(total)
    }

    /// `K_{0,-β}(p+1,q+1)` from the alternating sum.
    pub fn k_zero_minus_beta_shifted(&self, beta: &RootVector) -> BiPoly {
        let zero = Weight::zero(self.rank());
        let mu = -&self.rs.root_to_weight(beta);
        self.kpq(&zero, &mu)
            .expect("zero weight is dominant")
            .shift_vars()
    }

    /// `χ^μ(wt) = R_{p,q}(wt - μ)`, zero unless `wt ≥ μ`.
    pub fn chi(&self, wt: &Weight, mu: &Weight) -> BiPoly {
        match self.rs.to_root_coords(&(wt - mu)) {
            Some(beta) if beta.is_nonnegative() => self.r_pq(&beta),
            _ => BiPoly::zero(),
        }
    }

    /// `Σ_{wt ≥ μ} mult(wt) χ^μ(wt)` over the weights of `V(ν)`.
    pub fn crystal_sum(&self, nu: &Weight, mu: &Weight) -> Result<BiPoly> {
        let weights = freudenthal(&self.rs, nu)?;
        let mut total = BiPoly::zero();
        for (wt, m) in &weights {
            let chi = self.chi(wt, mu);
            if !chi.is_zero() {
                total.add_scaled(&chi, &(*m).into());
            }
        }
        Ok(total)
    }

    /// `Σ_β K_{ν,μ+β} · K_{0,-β}(p+1,q+1)`, multiplicities from Freudenthal.
    pub fn shifted_decomposition(&self, nu: &Weight, mu: &Weight) -> Result<BiPoly> {
        let weights = freudenthal(&self.rs, nu)?;
        let mut total = BiPoly::zero();
        let Some(span) = self.rs.to_root_coords(&(nu - mu)) else {
            return Ok(total);
        };
        for beta in box_below(&span) {
            let wt = mu + &self.rs.root_to_weight(&beta);
            let Some(&m) = weights.get(&wt) else {
                continue;
            };
            total.add_scaled(&self.k_zero_minus_beta_shifted(&beta), &m.into());
        }
        Ok(total)
    }

    /// `K(p+1,q+1)` against both the χ-sum and the β-decomposition.
    pub fn crystal_sum_check(&self, nu: &Weight, mu: &Weight) -> Result<CrystalCheck> {
        let shifted = self.kpq(nu, mu)?.shift_vars();
        Ok(CrystalCheck {
            crystal_sum: shifted == self.crystal_sum(nu, mu)?,
            decomposition: shifted == self.shifted_decomposition(nu, mu)?,
            nonnegative: shifted.is_nonnegative(),
        })
    }

    /// Expands `Π_α (1 + Σ_{k≥1} v(v+1)^{k-1} e^{-kα})` over the box of
    /// coordinate sum ≤ `bound` and compares each coefficient with `r_pq`.
    pub fn delta_series_check(&self, bound: i64) -> bool {
        let mut series: HashMap<Vec<i64>, BiPoly> =
            HashMap::from([(vec![0; self.rank()], BiPoly::one())]);
        for root in &self.rs.positive_roots {
            let v = if self.par.contains_root(root) {
                BiPoly::q()
            } else {
                BiPoly::p()
            };
            let v1 = &v + &BiPoly::one();
            let mut next: HashMap<Vec<i64>, BiPoly> = HashMap::new();
            for (key, coeff) in &series {
                let mut cur = key.clone();
                let mut factor = BiPoly::one();
                let mut k = 0u32;
                while cur.iter().sum::<i64>() <= bound {
                    *next.entry(cur.clone()).or_insert_with(BiPoly::zero) += &(coeff * &factor);
                    for (x, r) in cur.iter_mut().zip(&root.0) {
                        *x += r;
                    }
                    k += 1;
                    factor = &v * &v1.pow(k - 1);
                }
            }
            series = next;
        }
        simplex_box(self.rank(), bound).iter().all(|beta| {
            let expected = series.get(&beta.0).cloned().unwrap_or_else(BiPoly::zero);
            expected.is_nonnegative() && expected == self.r_pq(beta)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CrystalCheck {
    pub crystal_sum: bool,
    pub decomposition: bool,
    pub nonnegative: bool,
}

impl CrystalCheck {
    pub fn all_hold(&self) -> bool {
        self.crystal_sum && self.decomposition && self.nonnegative
    }
}

/// Every multiplicity vector `k` with `Σ k_α α = β`.
fn multiplicity_vectors(roots: &[RootVector], beta: &RootVector) -> Vec<Vec<u32>> {
    fn rec(roots: &[RootVector], i: usize, residual: Vec<i64>, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == roots.len() {
            if residual.iter().all(|&c| c == 0) {
                out.push(prefix.clone());
            }
            return;
        }
        let mut cur = residual;
        let mut m = 0;
        while cur.iter().all(|&c| c >= 0) {
            prefix.push(m);
            rec(roots, i + 1, cur.clone(), prefix, out);
            prefix.pop();
            for (c, r) in cur.iter_mut().zip(&roots[i].0) {
                *c -= r;
            }
            m += 1;
        }
    }
    let mut out = Vec::new();
    rec(roots, 0, beta.0.clone(), &mut Vec::new(), &mut out);
    out
}

/// Every colouring of the labelled copies described by `counts`.
fn colorings(counts: &[u32]) -> Vec<ColoredConfiguration> {
    let mut out = vec![Vec::<Vec<Color>>::new()];
    for &k in counts {
        let words: Vec<Vec<Color>> = (0u32..(1 << k))
            .map(|mask| {
                (0..k)
                    .map(|j| if mask & (1 << j) == 0 { Color::Blue } else { Color::Red })
                    .collect()
            })
            .collect();
        let mut next = Vec::with_capacity(out.len() * words.len());
        for prefix in &out {
            for w in &words {
                let mut v = prefix.clone();
                v.push(w.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(|words| ColoredConfiguration { words }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(name: &str, levi: &[usize]) -> Context {
        Context::new(name.parse().unwrap(), levi).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    fn poly(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn n_examples() {
        let c = ctx("A2", &[0]);
        assert_eq!(c.n_pq(&rv(&[0, 0])), BiPoly::one());
        assert_eq!(c.n_pq(&rv(&[1, 0])), poly("1 + q"));
        assert_eq!(c.n_pq(&rv(&[0, 1])), poly("1 + p"));
        for beta in simplex_box(2, 6) {
            assert_eq!(c.n_pq(&beta), c.kostant.kostant_pq(&beta).shift_vars());
        }
    }

    #[test]
    fn r_examples() {
        let c = ctx("A2", &[0]);
        assert_eq!(c.r_pq(&rv(&[0, 0])), BiPoly::one());
        assert_eq!(c.r_pq(&rv(&[1, 0])), BiPoly::q());
        assert_eq!(c.r_pq(&rv(&[0, 1])), BiPoly::p());
        assert_eq!(c.r_pq(&rv(&[1, 1])).collapse_p_into_q(), poly("q + q^2"));
        assert_eq!(c.r_pq(&rv(&[-1, 1])), BiPoly::zero());
    }

    #[test]
    fn r_triangle_small() {
        for name in ["A2", "B2", "G2"] {
            let rs: RootSystem = name.parse().unwrap();
            for levi in rs.all_levi_subsets() {
                let c = Context::new(rs.clone(), &levi).unwrap();
                for beta in simplex_box(2, 6) {
                    let dp = c.r_pq(&beta);
                    assert_eq!(dp, c.r_pq_bruteforce(&beta).unwrap(), "{name} {levi:?} {beta}");
                    assert_eq!(dp, c.k_zero_minus_beta_shifted(&beta), "{name} {levi:?} {beta}");
                }
            }
        }
    }

    #[test]
    fn brute_force_respects_bound() {
        let c = ctx("A2", &[]);
        assert!(c.r_pq_bruteforce_bounded(&rv(&[3, 3]), 5).is_err());
    }

    #[test]
    fn admissibility() {
        let cfg = ColoredConfiguration {
            words: vec![vec![Color::Blue, Color::Red], vec![]],
        };
        assert!(cfg.is_admissible());
        let cfg = ColoredConfiguration {
            words: vec![vec![Color::Red, Color::Blue]],
        };
        assert!(!cfg.is_admissible());
        assert_eq!(colorings(&[2, 1]).len(), 8);
    }

    #[test]
    fn freudenthal_examples() {
        let a2: RootSystem = "A2".parse().unwrap();
        assert_eq!(
            freudenthal(&a2, &w(&[0, 0])).unwrap(),
            WeightMultiplicityMap::from([(w(&[0, 0]), 1)])
        );
        let adj = freudenthal(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(adj[&w(&[0, 0])], 2);
        assert_eq!(adj.values().sum::<i64>(), 8);
        for r in a2.positive_root_weights() {
            assert_eq!(adj[r], 1);
            assert_eq!(adj[&(-r)], 1);
        }
        assert!(freudenthal(&a2, &w(&[1, -1])).is_err());
    }

    #[test]
    fn freudenthal_dimensions() {
        for (name, nu, dim) in [
            ("B3", vec![1, 0, 0], 7),
            ("B3", vec![0, 0, 1], 8),
            ("C3", vec![0, 1, 0], 14),
            ("D4", vec![0, 1, 0, 0], 28),
            ("G2", vec![1, 0], 7),
            ("G2", vec![0, 1], 14),
            ("F4", vec![0, 0, 0, 1], 26),
            ("E6", vec![1, 0, 0, 0, 0, 0], 27),
        ] {
            let rs: RootSystem = name.parse().unwrap();
            let nu = Weight(nu);
            assert_eq!(weyl_dimension(&rs, &nu), dim);
            let m = freudenthal(&rs, &nu).unwrap();
            assert_eq!(m.values().sum::<i64>() as u64, dim, "{name} {nu}");
        }
    }

    #[test]
    fn freudenthal_is_weyl_invariant() {
        let rs: RootSystem = "C3".parse().unwrap();
        let weyl = rs.weyl_group().unwrap();
        let m = freudenthal(&rs, &w(&[1, 0, 1])).unwrap();
        for e in weyl.iter().step_by(7) {
            for (wt, k) in &m {
                assert_eq!(m[&e.act(wt)], *k);
            }
        }
    }

    #[test]
    fn freudenthal_cap() {
        let rs: RootSystem = "B3".parse().unwrap();
        assert!(freudenthal_capped(&rs, &w(&[2, 2, 2]), 1000).is_err());
    }

    #[test]
    fn chi_examples() {
        let c = ctx("A2", &[0]);
        let mu = w(&[0, 0]);
        assert_eq!(c.chi(&mu, &mu), BiPoly::one());
        let a1 = c.rs.simple_root(0);
        let a2 = c.rs.simple_root(1);
        assert_eq!(c.chi(&a1, &mu).collapse_p_into_q(), BiPoly::q());
        assert_eq!(c.chi(&a2, &mu).collapse_p_into_q(), BiPoly::q());
        assert_eq!(c.chi(&(&a1 + &a2), &mu).collapse_p_into_q(), poly("q + q^2"));
        assert_eq!(c.chi(&(-&a1), &mu), BiPoly::zero());
    }

    #[test]
    fn adjoint_a2_crystal_sum() {
        let c = ctx("A2", &[0]);
        let nu = w(&[1, 1]);
        let mu = w(&[0, 0]);
        let shifted = c.kpq(&nu, &mu).unwrap().shift_vars();
        assert_eq!(shifted.collapse_p_into_q(), poly("2 + 3*q + q^2"));
        assert!(c.crystal_sum_check(&nu, &mu).unwrap().all_hold());
        assert!(c.crystal_sum_check(&nu, &nu).unwrap().all_hold());
    }

    #[test]
    fn delta_series() {
        for (name, levi) in [("B2", vec![0]), ("A2", vec![]), ("G2", vec![1])] {
            let c = ctx(name, &levi);
            assert!(c.delta_series_check(6), "{name}");
        }
    }
}
