//! Finite crystallographic root systems of types A–G.
//!
//! Weights live in fundamental-weight coordinates `(⟨v, α_i∨⟩)_i` and roots in
//! simple-root coordinates. The Cartan matrix converts between the two:
//! `weight = C · root`. Node numbering follows Bourbaki's plates throughout.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on `|W|`.
pub const DEFAULT_WEYL_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

macro_rules! coord_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            pub fn zero(rank: usize) -> Self {
                Self(vec![0; rank])
            }

            pub fn unit(rank: usize, i: usize) -> Self {
                let mut v = vec![0; rank];
                v[i] = 1;
                Self(v)
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0)
            }

            pub fn coords(&self) -> &[i64] {
                &self.0
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                &self + &rhs
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                &self - &rhs
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }

        impl Mul<&$name> for i64 {
            type Output = $name;
            fn mul(self, rhs: &$name) -> $name {
                $name(rhs.0.iter().map(|a| self * a).collect())
            }
        }

        impl From<Vec<i64>> for $name {
            fn from(v: Vec<i64>) -> Self {
                Self(v)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    };
}

coord_vector!(
    /// A weight in fundamental-weight coordinates.
    Weight
);
coord_vector!(
    /// An element of the root lattice in simple-root coordinates.
    RootVector
);

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Parses `"1,0,-2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidWeight("empty weight".into()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidWeight(format!("cannot parse `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl RootVector {
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// An element of `W` stored as its integer matrix on weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    rank: usize,
    /// Row-major `rank × rank`.
    matrix: Vec<i64>,
    pub length: u32,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        Self {
            rank,
            matrix,
            length: 0,
        }
    }

    /// `ε(w) = (-1)^length`.
    pub fn sign(&self) -> i32 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.matrix[row * self.rank + col]
    }

    pub fn act(&self, v: &Weight) -> Weight {
        debug_assert_eq!(v.rank(), self.rank);
        let n = self.rank;
        Weight(
            (0..n)
                .map(|r| {
                    self.matrix[r * n..(r + 1) * n]
                        .iter()
                        .zip(&v.0)
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        )
    }

    /// Matrix of `self ∘ other`; the length is not tracked.
    pub fn compose_matrix(&self, other: &WeylElement) -> Vec<i64> {
        let n = self.rank;
        let mut out = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                out[r * n + c] = (0..n)
                    .map(|k| self.matrix[r * n + k] * other.matrix[k * n + c])
                    .sum();
            }
        }
        out
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    /// `cartan[i][j] = ⟨α_j, α_i∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// `d_i` with `diag(d)·C` symmetric; short simple roots get `d_i = 1`.
    pub symmetrizer: Vec<i64>,
    pub positive_roots: Vec<RootVector>,
    pub rho: Weight,
    pub weyl_order: u64,
    det: i64,
    /// Adjugate of the Cartan matrix: `C⁻¹ = adj / det`.
    adj: Vec<Vec<i64>>,
    /// Divides `diag(d)·C` to give the Gram matrix of the standard
    /// realization (2 for B and F, where long roots have squared length 2).
    gram_denominator: i64,
    positive_root_weights: Vec<Weight>,
}

impl FromStr for RootSystem {
    type Err = Error;

    /// Parses `"C3"`, `"d4"`, `"G2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidSystem(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidSystem(s.to_string()))?;
        RootSystem::build(family, rank)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

fn cartan_matrix(family: Family, n: usize) -> Result<Vec<Vec<i64>>> {
    let valid = match family {
        Family::A => n >= 1,
        Family::B | Family::C => n >= 2,
        Family::D => n >= 3,
        Family::E => (6..=8).contains(&n),
        Family::F => n == 4,
        Family::G => n == 2,
    };
    if !valid {
        return Err(Error::InvalidSystem(format!("{family}{n}")));
    }
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match family {
        Family::A | Family::B | Family::C => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Family::E => {
            link(0, 2);
            link(2, 3);
            link(3, 4);
            link(1, 3);
            for i in 4..n - 1 {
                link(i, i + 1);
            }
        }
        Family::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Family::G => link(0, 1),
    }
    // row = short root, column = long root carries the bond multiplicity
    match family {
        Family::B => c[n - 1][n - 2] = -2,
        Family::C => c[n - 2][n - 1] = -2,
        Family::F => c[2][1] = -2,
        Family::G => c[0][1] = -3,
        _ => {}
    }
    Ok(c)
}

fn symmetrizer(family: Family, n: usize) -> Vec<i64> {
    match family {
        Family::A | Family::D | Family::E => vec![1; n],
        Family::B => (0..n).map(|i| if i + 1 < n { 2 } else { 1 }).collect(),
        Family::C => (0..n).map(|i| if i + 1 < n { 1 } else { 2 }).collect(),
        Family::F => vec![2, 2, 1, 1],
        Family::G => vec![1, 3],
    }
}

fn weyl_order(family: Family, n: usize) -> u64 {
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    match family {
        Family::A => fact(n + 1),
        Family::B | Family::C => (1u64 << n) * fact(n),
        Family::D => (1u64 << (n - 1)) * fact(n),
        Family::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Family::F => 1152,
        Family::G => 12,
    }
}

/// Determinant and adjugate of a small integer matrix by cofactor
/// expansion over exact integers (ranks here are ≤ 8).
fn det_and_adjugate(m: &[Vec<i64>]) -> (i64, Vec<Vec<i64>>) {
    let n = m.len();
    let det = determinant(m);
    let mut adj = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = sign * determinant(&minor);
        }
    }
    (det, adj)
}

fn determinant(m: &[Vec<i64>]) -> i64 {
    // Bareiss fraction-free elimination.
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(family, rank)?;
        let symmetrizer = symmetrizer(family, rank);
        let (det, adj) = det_and_adjugate(&cartan);
        let gram_denominator = match family {
            Family::B | Family::F => 2,
            _ => 1,
        };
        let mut rs = RootSystem {
            family,
            rank,
            cartan,
            symmetrizer,
            positive_roots: Vec::new(),
            rho: Weight(vec![1; rank]),
            weyl_order: weyl_order(family, rank),
            det,
            adj,
            gram_denominator,
            positive_root_weights: Vec::new(),
        };
        rs.positive_roots = rs.generate_positive_roots();
        rs.positive_root_weights = rs
            .positive_roots
            .iter()
            .map(|r| rs.root_to_weight(r))
            .collect();
        Ok(rs)
    }

    /// Closure of the simple roots under adding simple roots, layer by
    /// height, using root strings: for a positive root `β ≠ α_i` the
    /// `α_i`-string through `β` is `β - rα_i, …, β + sα_i` with
    /// `r - s = ⟨β, α_i∨⟩`.
    fn generate_positive_roots(&self) -> Vec<RootVector> {
        let n = self.rank;
        let mut roots: Vec<RootVector> = (0..n).map(|i| RootVector::unit(n, i)).collect();
        let mut known: std::collections::HashSet<RootVector> = roots.iter().cloned().collect();
        let mut layer = roots.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                let bw = self.root_to_weight(beta);
                for i in 0..n {
                    if *beta == RootVector::unit(n, i) {
                        continue;
                    }
                    let mut r = 0;
                    let mut down = beta.clone();
                    loop {
                        down.0[i] -= 1;
                        if known.contains(&down) {
                            r += 1;
                        } else {
                            break;
                        }
                    }
                    let s = r - bw.0[i];
                    if s > 0 {
                        let mut up = beta.clone();
                        up.0[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            next.sort();
            roots.extend(next.iter().cloned());
            layer = next;
        }
        roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Positive roots in weight coordinates, same order as `positive_roots`.
    pub fn positive_root_weights(&self) -> &[Weight] {
        &self.positive_root_weights
    }

    pub fn cartan_determinant(&self) -> i64 {
        self.det
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|r| self.cartan[r][i]).collect())
    }

    pub fn root_to_weight(&self, r: &RootVector) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * r.0[j]).sum())
                .collect(),
        )
    }

    /// `det(C) · C⁻¹ · v`, always integral.
    pub fn scaled_root_coords(&self, v: &Weight) -> Vec<i64> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.adj[i][j] * v.0[j]).sum())
            .collect()
    }

    /// Solves `C · r = v`; `None` when `v` is not in the root lattice.
    pub fn to_root_coords(&self, v: &Weight) -> Option<RootVector> {
        let scaled = self.scaled_root_coords(v);
        self.unscale(&scaled)
    }

    /// Divides a scaled root-coordinate vector by `det(C)`.
    pub fn unscale(&self, scaled: &[i64]) -> Option<RootVector> {
        let d = self.det;
        if scaled.iter().all(|c| c % d == 0) {
            Some(RootVector(scaled.iter().map(|c| c / d).collect()))
        } else {
            None
        }
    }

    /// Root coordinates as exact rationals.
    pub fn rational_root_coords(&self, v: &Weight) -> Vec<Ratio<i64>> {
        self.scaled_root_coords(v)
            .into_iter()
            .map(|c| Ratio::new(c, self.det))
            .collect()
    }

    /// `a ≤ b` in the dominance order: `b - a ∈ Q₊`.
    pub fn dominance_leq(&self, a: &Weight, b: &Weight) -> bool {
        self.to_root_coords(&(b - a))
            .is_some_and(|r| r.is_nonnegative())
    }

    /// `s_i(v) = v - ⟨v, α_i∨⟩ α_i`.
    pub fn reflect(&self, i: usize, v: &Weight) -> Weight {
        let vi = v.0[i];
        Weight(
            (0..self.rank)
                .map(|r| v.0[r] - vi * self.cartan[r][i])
                .collect(),
        )
    }

    /// Standard-realization scalar product of two root-lattice vectors.
    pub fn root_pairing(&self, a: &RootVector, b: &RootVector) -> Ratio<i64> {
        let n = self.rank;
        let mut s = 0i64;
        for i in 0..n {
            for j in 0..n {
                s += a.0[i] * self.symmetrizer[i] * self.cartan[i][j] * b.0[j];
            }
        }
        Ratio::new(s, self.gram_denominator)
    }

    /// Standard-realization scalar product of two weights.
    pub fn weight_pairing(&self, a: &Weight, b: &Weight) -> Ratio<i64> {
        Ratio::new(self.scaled_weight_pairing(a, b), self.pairing_scale())
    }

    /// `(a, b) · pairing_scale()`, an integer.
    pub fn scaled_weight_pairing(&self, a: &Weight, b: &Weight) -> i64 {
        // (a, α_j) = d_j a_j / gram_denominator and b = Σ_j r_j α_j
        let r = self.scaled_root_coords(b);
        (0..self.rank)
            .map(|j| r[j] * self.symmetrizer[j] * a.0[j])
            .sum()
    }

    pub fn pairing_scale(&self) -> i64 {
        self.det * self.gram_denominator
    }

    /// Enumerates `W` by breadth-first closure of the ρ-orbit under simple
    /// reflections; the BFS depth is the length.
    pub fn weyl_group(&self) -> Result<Vec<WeylElement>> {
        self.weyl_group_capped(DEFAULT_WEYL_CAP)
    }

    pub fn weyl_group_capped(&self, cap: usize) -> Result<Vec<WeylElement>> {
        if self.weyl_order > cap as u64 {
            return Err(Error::CapExceeded {
                what: format!("|W({self})| = {}", self.weyl_order),
                cap,
            });
        }
        Ok(self.subgroup(&(0..self.rank).collect::<Vec<_>>()))
    }

    /// The subgroup generated by `{s_i : i ∈ gens}`, in ambient coordinates.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<WeylElement> {
        let n = self.rank;
        let id = WeylElement::identity(n);
        let mut seen: HashMap<Weight, usize> = HashMap::new();
        seen.insert(self.rho.clone(), 0);
        let mut elements = vec![id];
        let mut orbit = vec![self.rho.clone()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for &i in gens {
                let image = self.reflect(i, &orbit[idx]);
                if seen.contains_key(&image) {
                    continue;
                }
                let w = &elements[idx];
                let mut matrix = w.matrix.clone();
                for r in 0..n {
                    let c_ri = self.cartan[r][i];
                    if c_ri != 0 {
                        for c in 0..n {
                            matrix[r * n + c] -= c_ri * w.matrix[i * n + c];
                        }
                    }
                }
                let new = WeylElement {
                    rank: n,
                    matrix,
                    length: w.length + 1,
                };
                seen.insert(image.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(new);
                orbit.push(image);
            }
        }
        elements
    }

    /// Maps `v` into the dominant chamber by simple reflections, returning
    /// the dominant representative and the number of reflections used.
    pub fn to_dominant(&self, v: &Weight) -> (Weight, u32) {
        let mut v = v.clone();
        let mut steps = 0;
        while let Some(i) = v.0.iter().position(|&c| c < 0) {
            v = self.reflect(i, &v);
            steps += 1;
        }
        (v, steps)
    }

    /// The W-orbit of a weight, enumerated from its dominant representative.
    pub fn orbit(&self, v: &Weight) -> Vec<Weight> {
        let (start, _) = self.to_dominant(v);
        let mut seen = std::collections::HashSet::from([start.clone()]);
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank {
                if x.0[i] == 0 {
                    continue;
                }
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        out
    }

    pub fn check_weight(&self, v: &Weight) -> Result<()> {
        if v.rank() != self.rank {
            return Err(Error::InvalidWeight(format!(
                "{v} has {} coordinates, {self} needs {}",
                v.rank(),
                self.rank
            )));
        }
        Ok(())
    }

    pub fn parabolic(&self, levi: &[usize]) -> Result<ParabolicData> {
        ParabolicData::new(self, levi)
    }

    /// Every subset of `{0..rank}`, as sorted index lists, smallest first.
    pub fn all_levi_subsets(&self) -> Vec<Vec<usize>> {
        (0u32..(1 << self.rank))
            .map(|mask| (0..self.rank).filter(|i| mask & (1 << i) != 0).collect())
            .collect()
    }
}

/// Levi subsystem data for a subset `Ī` of the simple roots.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    /// Sorted zero-based node indices.
    pub levi: Vec<usize>,
    pub in_levi: Vec<bool>,
    pub levi_positive_roots: Vec<RootVector>,
    pub complement_roots: Vec<RootVector>,
    pub levi_weyl: Vec<WeylElement>,
    /// `Σ_{i∈Ī} ω_i`.
    pub rho_bar: Weight,
    /// `Σ_{i∉Ī} ω_i`.
    pub rho_diamond: Weight,
}

impl ParabolicData {
    pub fn new(rs: &RootSystem, levi: &[usize]) -> Result<Self> {
        let mut levi = levi.to_vec();
        levi.sort_unstable();
        levi.dedup();
        if let Some(&bad) = levi.iter().find(|&&i| i >= rs.rank) {
            return Err(Error::InvalidLevi(format!(
                "node {} outside 1..={}",
                bad + 1,
                rs.rank
            )));
        }
        let mut in_levi = vec![false; rs.rank];
        for &i in &levi {
            in_levi[i] = true;
        }
        let (levi_positive_roots, complement_roots): (Vec<_>, Vec<_>) = rs
            .positive_roots
            .iter()
            .cloned()
            .partition(|r| r.0.iter().enumerate().all(|(i, &c)| c == 0 || in_levi[i]));
        let rho_bar = Weight(in_levi.iter().map(|&b| b as i64).collect());
        let rho_diamond = Weight(in_levi.iter().map(|&b| (!b) as i64).collect());
        Ok(Self {
            levi_weyl: rs.subgroup(&levi),
            levi,
            in_levi,
            levi_positive_roots,
            complement_roots,
            rho_bar,
            rho_diamond,
        })
    }

    pub fn contains_root(&self, r: &RootVector) -> bool {
        r.0.iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || self.in_levi[i])
    }

    /// Dominant for the Levi: nonnegative on the coordinates in `Ī`.
    pub fn is_levi_dominant(&self, v: &Weight) -> bool {
        self.levi.iter().all(|&i| v.0[i] >= 0)
    }

    /// Splits `v = v̄ + v◇` along the fundamental-weight coordinates.
    pub fn decompose_diamond(&self, v: &Weight) -> (Weight, Weight) {
        let bar = Weight(
            v.0.iter()
                .zip(&self.in_levi)
                .map(|(&c, &b)| if b { c } else { 0 })
                .collect(),
        );
        let diamond = Weight(
            v.0.iter()
                .zip(&self.in_levi)
                .map(|(&c, &b)| if b { 0 } else { c })
                .collect(),
        );
        (bar, diamond)
    }

    /// Whether `a - b` lies in the root lattice of the Levi, i.e. both
    /// weights have the same component orthogonal to the Levi roots.
    pub fn same_levi_coset(&self, rs: &RootSystem, a: &Weight, b: &Weight) -> bool {
        rs.to_root_coords(&(a - b))
            .is_some_and(|r| self.contains_root(&r))
    }

    /// True iff every element of `W̄` maps the complement roots onto
    /// themselves.
    pub fn check_complement_stability(&self, rs: &RootSystem) -> bool {
        let complement: std::collections::HashSet<Weight> = self
            .complement_roots
            .iter()
            .map(|r| rs.root_to_weight(r))
            .collect();
        self.levi_weyl.iter().all(|w| {
            let image: std::collections::HashSet<Weight> =
                complement.iter().map(|a| w.act(a)).collect();
            image == complement
        })
    }

    /// One-based, comma-separated.
    pub fn levi_label(&self) -> String {
        self.levi
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses a one-based comma-separated Levi subset such as `"1,2"`; the empty
/// string is the empty subset.
pub fn parse_levi(s: &str, rank: usize) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for tok in s.split(',') {
        let i: usize = tok
            .trim()
            .parse()
            .map_err(|_| Error::InvalidLevi(format!("cannot parse `{s}`")))?;
        if i == 0 || i > rank {
            return Err(Error::InvalidLevi(format!("node {i} outside 1..={rank}")));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
