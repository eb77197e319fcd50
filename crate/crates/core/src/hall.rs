//! Weyl characters, the denominator identity, and the transition matrix
//! between the `(p,q)`-analogues `Q′_μ` and Weyl characters.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::charge::{dominant_weights_below, weyl_dimension, DEFAULT_DIM_CAP};
use crate::error::{Error, Result};
use crate::kostant::box_below;
use crate::lusztig::Context;
use crate::poly::BiPoly;
use crate::rootsys::{RootSystem, RootVector, Weight};

/// Default cap on `|R₊|` for expanding the denominator product.
pub const DEFAULT_DENOMINATOR_CAP: usize = 24;

/// A finite signed combination of formal exponentials `e^λ`.
pub type CharacterMap = BTreeMap<Weight, i64>;

/// `Π_{α>0} (1 - e^{-α})`, keyed by root coordinates of `-exponent`.
fn denominator_product(rs: &RootSystem) -> HashMap<Vec<i64>, i64> {
    let mut acc: HashMap<Vec<i64>, i64> = HashMap::from([(vec![0; rs.rank], 1)]);
    for alpha in &rs.positive_roots {
        let mut next = acc.clone();
        for (k, c) in &acc {
            let shifted: Vec<i64> = k.iter().zip(&alpha.0).map(|(a, b)| a + b).collect();
            *next.entry(shifted).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc
}

/// The Weyl character `s_ν`, by dividing the alternating sum
/// `Σ_w ε(w) e^{w(ν+ρ)-ρ}` by the expanded denominator.
pub fn weyl_character(rs: &RootSystem, nu: &Weight) -> Result<CharacterMap> {
    rs.check_weight(nu)?;
    if !nu.is_dominant() {
        return Err(Error::NotDominant(nu.0.clone()));
    }
    let dim = weyl_dimension(rs, nu);
    if dim > DEFAULT_DIM_CAP {
        return Err(Error::CapExceeded {
            what: format!("dim V{nu} = {dim}"),
            cap: DEFAULT_DIM_CAP as usize,
        });
    }
    let weyl = rs.weyl_group()?;
    let top = nu + &rs.rho;
    // exponents as ν - β with β ∈ Q₊
    let mut numerator: HashMap<Vec<i64>, i64> = HashMap::new();
    let mut span = vec![0i64; rs.rank];
    for w in &weyl {
        let beta = rs
            .to_root_coords(&(&top - &w.act(&top)))
            .expect("ν+ρ - w(ν+ρ) lies in Q₊");
        for (s, b) in span.iter_mut().zip(&beta.0) {
            *s = (*s).max(*b);
        }
        *numerator.entry(beta.0).or_insert(0) += i64::from(w.sign());
    }
    let denominator: Vec<(Vec<i64>, i64)> = denominator_product(rs)
        .into_iter()
        .filter(|(k, _)| k.iter().any(|&c| c != 0))
        .collect();
    let mut cells = box_below(&RootVector(span));
    cells.sort_by_key(|b| b.height());
    let mut quotient: HashMap<Vec<i64>, i64> = HashMap::new();
    for beta in cells {
        let mut m = numerator.get(&beta.0).copied().unwrap_or(0);
        for (gamma, d) in &denominator {
            let rest: Vec<i64> = beta.0.iter().zip(gamma).map(|(a, b)| a - b).collect();
            if let Some(prev) = quotient.get(&rest) {
                m -= prev * d;
            }
        }
        if m != 0 {
            quotient.insert(beta.0, m);
        }
    }
    Ok(quotient
        .into_iter()
        .map(|(beta, m)| (nu - &rs.root_to_weight(&RootVector(beta)), m))
        .collect())
}

/// `Π_{α>0} (1 - e^{-α}) = Σ_w ε(w) e^{w(ρ)-ρ}`.
pub fn denominator_check(rs: &RootSystem) -> Result<bool> {
    if rs.num_positive_roots() > DEFAULT_DENOMINATOR_CAP {
        return Err(Error::CapExceeded {
            what: format!("|R₊({rs})| = {}", rs.num_positive_roots()),
            cap: DEFAULT_DENOMINATOR_CAP,
        });
    }
    let product = denominator_product(rs);
    let mut alternating: HashMap<Vec<i64>, i64> = HashMap::new();
    for w in rs.weyl_group()? {
        let beta = rs.to_root_coords(&(&rs.rho - &w.act(&rs.rho))).expect("ρ - wρ ∈ Q");
        *alternating.entry(beta.0).or_insert(0) += i64::from(w.sign());
    }
    alternating.retain(|_, c| *c != 0);
    Ok(product == alternating)
}

/// All dominant weights below some seed.
pub fn close_downward(rs: &RootSystem, seeds: &[Weight]) -> Result<Vec<Weight>> {
    let mut out = BTreeSet::new();
    for s in seeds {
        rs.check_weight(s)?;
        if !s.is_dominant() {
            return Err(Error::NotDominant(s.0.clone()));
        }
        out.extend(dominant_weights_below(rs, s));
    }
    Ok(out.into_iter().collect())
}

fn check_downward_closed(rs: &RootSystem, set: &[Weight]) -> Result<()> {
    let members: BTreeSet<&Weight> = set.iter().collect();
    for lam in set {
        if !lam.is_dominant() {
            return Err(Error::NotDominant(lam.0.clone()));
        }
        for k in dominant_weights_below(rs, lam) {
            if !members.contains(&k) {
                return Err(Error::NotDownwardClosed(k.0));
            }
        }
    }
    Ok(())
}

/// Orders weights so that `a < b` in dominance puts `b` first.
fn dominance_order(rs: &RootSystem, set: &[Weight]) -> Vec<Weight> {
    let mut v = set.to_vec();
    v.sort_by_key(|w| {
        let h: i64 = rs.scaled_root_coords(w).iter().sum();
        (std::cmp::Reverse(h), w.clone())
    });
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionMatrix {
    /// Larger weights first.
    pub index: Vec<Weight>,
    /// `entries[i][j]`.
    pub entries: Vec<Vec<BiPoly>>,
}

impl TransitionMatrix {
    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
        })
    }

    pub fn mul(&self, other: &TransitionMatrix) -> TransitionMatrix {
        let n = self.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut s = BiPoly::zero();
                        for k in 0..n {
                            if !self.entries[i][k].is_zero() && !other.entries[k][j].is_zero() {
                                s += &(&self.entries[i][k] * &other.entries[k][j]);
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        TransitionMatrix {
            index: self.index.clone(),
            entries,
        }
    }

    /// Inverse of an upper unitriangular matrix by back substitution.
    pub fn inverse(&self) -> TransitionMatrix {
        let n = self.len();
        let mut inv = vec![vec![BiPoly::zero(); n]; n];
        for i in 0..n {
            inv[i][i] = BiPoly::one();
            for j in i + 1..n {
                let mut s = BiPoly::zero();
                for k in i..j {
                    if !inv[i][k].is_zero() && !self.entries[k][j].is_zero() {
                        s += &(&inv[i][k] * &self.entries[k][j]);
                    }
                }
                inv[i][j] = -s;
            }
        }
        TransitionMatrix {
            index: self.index.clone(),
            entries: inv,
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut wr = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.index.iter().map(|w| w.to_string()));
        wr.write_record(&header).map_err(csv_error)?;
        for (w, row) in self.index.iter().zip(&self.entries) {
            let mut rec = vec![w.to_string()];
            rec.extend(row.iter().map(|e| e.to_string()));
            wr.write_record(&rec).map_err(csv_error)?;
        }
        let bytes = wr.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

impl Context {
    /// The Schur-expansion coefficients `ν ↦ K_{ν,μ}(p,q)` of `Q′_μ` on a
    /// downward-closed set of dominant weights.
    pub fn qprime(&self, mu: &Weight, lambda_set: &[Weight]) -> Result<BTreeMap<Weight, BiPoly>> {
        if !mu.is_dominant() {
            return Err(Error::NotDominant(mu.0.clone()));
        }
        check_downward_closed(&self.rs, lambda_set)?;
        lambda_set
            .iter()
            .map(|nu| Ok((nu.clone(), self.kpq(nu, mu)?)))
            .collect()
    }

    /// `M[ν][μ] = K_{ν,μ}(p,q)` over the set, checked unitriangular.
    pub fn transition_matrix(&self, lambda_set: &[Weight]) -> Result<TransitionMatrix> {
        check_downward_closed(&self.rs, lambda_set)?;
        let index = dominance_order(&self.rs, lambda_set);
        use rayon::prelude::*;
        let entries: Vec<Vec<BiPoly>> = index
            .par_iter()
            .map(|nu| index.iter().map(|mu| self.kpq(nu, mu)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        for (i, nu) in index.iter().enumerate() {
            for (j, mu) in index.iter().enumerate() {
                let e = &entries[i][j];
                let ok = if i == j {
                    e.is_one()
                } else if j < i || !self.rs.dominance_leq(mu, nu) {
                    e.is_zero()
                } else {
                    true
                };
                if !ok {
                    return Err(Error::NotUnitriangular(nu.0.clone(), mu.0.clone()));
                }
            }
        }
        Ok(TransitionMatrix { index, entries })
    }

    /// `M⁻¹`; row `μ` expresses `P_μ` in the Weyl characters `s_ν`.
    pub fn p_basis(&self, lambda_set: &[Weight]) -> Result<TransitionMatrix> {
        let m = self.transition_matrix(lambda_set)?;
        let inv = m.inverse();
        if !m.mul(&inv).is_identity() {
            return Err(Error::Precondition("M·M⁻¹ is not the identity".into()));
        }
        Ok(inv)
    }

    pub fn roundtrip_check(&self, lambda_set: &[Weight]) -> Result<bool> {
        let m = self.transition_matrix(lambda_set)?;
        let inv = m.inverse();
        Ok(m.mul(&inv).is_identity() && inv.mul(&m).is_identity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::freudenthal;
    use crate::verify::dominant_grid;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn sys(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    #[test]
    fn character_examples() {
        let a2 = sys("A2");
        assert_eq!(weyl_character(&a2, &w(&[0, 0])).unwrap(), CharacterMap::from([(w(&[0, 0]), 1)]));
        let fund = weyl_character(&a2, &w(&[1, 0])).unwrap();
        assert_eq!(fund.len(), 3);
        assert!(fund.values().all(|&m| m == 1));
        let adj = weyl_character(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(adj.values().sum::<i64>(), 8);
        assert_eq!(adj[&w(&[0, 0])], 2);
    }

    #[test]
    fn character_matches_freudenthal() {
        for name in ["A3", "B3", "C3", "G2", "D4"] {
            let rs = sys(name);
            for nu in dominant_grid(rs.rank, 2) {
                assert_eq!(weyl_character(&rs, &nu).unwrap(), freudenthal(&rs, &nu).unwrap(), "{name} {nu}");
            }
        }
    }

    #[test]
    fn denominator_identity() {
        for name in ["A1", "A2", "C2", "G2", "B3", "D4", "F4"] {
            assert!(denominator_check(&sys(name)).unwrap(), "{name}");
        }
        assert!(denominator_check(&sys("E6")).is_err());
    }

    #[test]
    fn qprime_examples() {
        let c = Context::new(sys("A2"), &[0]).unwrap();
        let set = close_downward(&c.rs, &[w(&[1, 1])]).unwrap();
        assert_eq!(set, vec![w(&[0, 0]), w(&[1, 1])]);
        let q = c.qprime(&w(&[0, 0]), &set).unwrap();
        assert_eq!(q[&w(&[0, 0])], BiPoly::one());
        assert_eq!(q[&w(&[1, 1])].collapse_p_into_q(), "q + q^2".parse().unwrap());
        let q = c.qprime(&w(&[1, 1]), &set).unwrap();
        assert_eq!(q[&w(&[0, 0])], BiPoly::zero());
        assert!(matches!(
            c.qprime(&w(&[0, 0]), &[w(&[1, 1])]),
            Err(Error::NotDownwardClosed(_))
        ));
    }

    #[test]
    fn inverse_examples() {
        let c = Context::new(sys("A2"), &[0]).unwrap();
        let single = c.p_basis(&[w(&[0, 0])]).unwrap();
        assert!(single.is_identity());
        let set = vec![w(&[0, 0]), w(&[1, 1])];
        let m = c.transition_matrix(&set).unwrap();
        assert_eq!(m.index, vec![w(&[1, 1]), w(&[0, 0])]);
        let inv = c.p_basis(&set).unwrap();
        assert_eq!(inv.entries[0][1], -c.kpq(&w(&[1, 1]), &w(&[0, 0])).unwrap());
        assert!(inv.entries.iter().enumerate().all(|(i, r)| r[i].is_one()));
    }

    #[test]
    fn roundtrips() {
        for name in ["A2", "C2", "C3"] {
            let rs = sys(name);
            let set = close_downward(&rs, &dominant_grid(rs.rank, 2)).unwrap();
            for levi in rs.all_levi_subsets() {
                let c = Context::new(rs.clone(), &levi).unwrap();
                assert!(c.roundtrip_check(&set).unwrap(), "{name} {levi:?}");
            }
        }
    }

    #[test]
    fn equal_variables_give_classical_matrix() {
        let rs = sys("C2");
        let set = close_downward(&rs, &dominant_grid(2, 2)).unwrap();
        let c = Context::new(rs, &[0]).unwrap();
        let m = c.transition_matrix(&set).unwrap();
        let inv = m.inverse();
        let collapse = |t: &TransitionMatrix| TransitionMatrix {
            index: t.index.clone(),
            entries: t.entries.iter().map(|r| r.iter().map(|e| e.collapse_p_into_q()).collect()).collect(),
        };
        let classical = TransitionMatrix {
            index: m.index.clone(),
            entries: m
                .index
                .iter()
                .map(|nu| m.index.iter().map(|mu| c.lusztig_single(nu, mu).unwrap()).collect())
                .collect(),
        };
        assert_eq!(collapse(&m), classical);
        assert!(classical.mul(&collapse(&inv)).is_identity());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let c = Context::new(sys("A2"), &[0]).unwrap();
        let m = c.transition_matrix(&[w(&[0, 0]), w(&[1, 1])]).unwrap();
        let csv = m.to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], r#","(1,1)","(0,0)""#);
        assert!(lines[1].starts_with(r#""(1,1)",1,"#));
    }
}
