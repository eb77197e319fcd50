//! Memoized (p,q)-weighted partition functions over a parabolic split of
//! the positive roots.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::poly::BiPoly;
use crate::rootsys::{ParabolicData, RootSystem, RootVector, Weight};

/// Which variable a root contributes to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    P,
    Q,
}

impl Var {
    fn poly(self) -> BiPoly {
        match self {
            Var::P => BiPoly::p(),
            Var::Q => BiPoly::q(),
        }
    }
}

/// The generating factor a root contributes for `m` copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weighting {
    /// `v^m`: the ordinary expansion of `1/(1 - v e^α)`.
    Plain,
    /// `(v+1)^m`: all blue/red colourings of `m` copies.
    Colored,
    /// `1` for `m = 0`, else `v(v+1)^{m-1}`: colourings whose first copy is blue.
    Admissible,
}

/// Which roots the engine may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Series {
    /// All positive roots: complement roots carry `p`, Levi roots `q`.
    Full,
    /// Complement roots only, each carrying `p`.
    Hat,
    /// Levi roots only, each carrying `q`.
    Bar,
    /// All positive roots, each carrying `q`.
    Single,
}

type MemoKey = (usize, Vec<i64>);

pub struct PartitionEngine {
    roots: Vec<RootVector>,
    vars: Vec<Var>,
    weighting: Weighting,
    /// `tail_support[i][j]`: some root with index ≥ i has a nonzero `j`-coordinate.
    tail_support: Vec<Vec<bool>>,
    factors: RwLock<HashMap<(Var, u32), BiPoly>>,
    memo: RwLock<HashMap<MemoKey, BiPoly>>,
}

impl std::fmt::Debug for PartitionEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PartitionEngine")
            .field("roots", &self.roots.len())
            .field("weighting", &self.weighting)
            .field("memo", &self.memo_len())
            .finish()
    }
}

impl PartitionEngine {
    pub fn new(rs: &RootSystem, par: &ParabolicData, series: Series, weighting: Weighting) -> Self {
        let mut roots = Vec::new();
        let mut vars = Vec::new();
        for r in &rs.positive_roots {
            let levi = par.contains_root(r);
            let var = match (series, levi) {
                (Series::Full, true) | (Series::Bar, true) | (Series::Single, _) => Some(Var::Q),
                (Series::Full, false) | (Series::Hat, false) => Some(Var::P),
                _ => None,
            };
            if let Some(v) = var {
                roots.push(r.clone());
                vars.push(v);
            }
        }
        Self::from_roots(rs.rank, roots, vars, weighting)
    }

    pub fn from_roots(
        rank: usize,
        roots: Vec<RootVector>,
        vars: Vec<Var>,
        weighting: Weighting,
    ) -> Self {
        let mut tail_support = vec![vec![false; rank]; roots.len() + 1];
        for i in (0..roots.len()).rev() {
            let mut s = tail_support[i + 1].clone();
            for (j, &c) in roots[i].0.iter().enumerate() {
                if c != 0 {
                    s[j] = true;
                }
            }
            tail_support[i] = s;
        }
        Self {
            roots,
            vars,
            weighting,
            tail_support,
            factors: RwLock::new(HashMap::new()),
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().map(|m| m.len()).unwrap_or(0)
    }

    fn factor(&self, var: Var, m: u32) -> BiPoly {
        if m == 0 {
            return BiPoly::one();
        }
        if let Some(f) = self.factors.read().unwrap().get(&(var, m)) {
            return f.clone();
        }
        let v = var.poly();
        let f = match self.weighting {
            Weighting::Plain => v.pow(m),
            Weighting::Colored => (&v + &BiPoly::one()).pow(m),
            Weighting::Admissible => &v * &(&v + &BiPoly::one()).pow(m - 1),
        };
        self.factors.write().unwrap().insert((var, m), f.clone());
        f
    }

    /// The coefficient of `e^β`; zero unless `β ∈ Q₊`.
    pub fn eval(&self, beta: &RootVector) -> BiPoly {
        if !beta.is_nonnegative() {
            return BiPoly::zero();
        }
        self.eval_from(0, beta.0.clone())
    }

    /// As [`eval`](Self::eval) for a weight-coordinate argument; zero off the
    /// root lattice.
    pub fn eval_weight(&self, rs: &RootSystem, v: &Weight) -> BiPoly {
        match rs.to_root_coords(v) {
            Some(r) => self.eval(&r),
            None => BiPoly::zero(),
        }
    }

    fn eval_from(&self, i: usize, residual: Vec<i64>) -> BiPoly {
        if residual.iter().all(|&c| c == 0) {
            return BiPoly::one();
        }
        if i == self.roots.len() {
            return BiPoly::zero();
        }
        let support = &self.tail_support[i];
        if residual.iter().zip(support).any(|(&c, &s)| c != 0 && !s) {
            return BiPoly::zero();
        }
        let key = (i, residual);
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return v.clone();
        }
        let (_, residual) = key;
        let root = &self.roots[i];
        let mut total = BiPoly::zero();
        let mut cur = residual.clone();
        let mut m = 0u32;
        loop {
            let rest = self.eval_from(i + 1, cur.clone());
            if !rest.is_zero() {
                total += &(&self.factor(self.vars[i], m) * &rest);
            }
            for (c, r) in cur.iter_mut().zip(&root.0) {
                *c -= r;
            }
            if cur.iter().any(|&c| c < 0) {
                break;
            }
            m += 1;
        }
        self.memo.write().unwrap().insert((i, residual), total.clone());
        total
    }
}

/// The three partition functions of a parabolic split.
#[derive(Debug)]
pub struct KostantFunctions {
    pub full: PartitionEngine,
    pub hat: PartitionEngine,
    pub bar: PartitionEngine,
}

impl KostantFunctions {
    pub fn new(rs: &RootSystem, par: &ParabolicData) -> Self {
        Self {
            full: PartitionEngine::new(rs, par, Series::Full, Weighting::Plain),
            hat: PartitionEngine::new(rs, par, Series::Hat, Weighting::Plain),
            bar: PartitionEngine::new(rs, par, Series::Bar, Weighting::Plain),
        }
    }

    /// `P_{p,q}(β)`.
    pub fn kostant_pq(&self, beta: &RootVector) -> BiPoly {
        self.full.eval(beta)
    }

    /// `P̂_p(η)`.
    pub fn kostant_hat_p(&self, eta: &RootVector) -> BiPoly {
        self.hat.eval(eta)
    }

    /// `P̄_q(δ)`.
    pub fn kostant_bar_q(&self, delta: &RootVector) -> BiPoly {
        self.bar.eval(delta)
    }

    /// `P_{p,q}(β) = Σ_γ P̂_p(γ) P̄_q(β - γ)`.
    pub fn cauchy_check(&self, beta: &RootVector) -> bool {
        let mut sum = BiPoly::zero();
        for gamma in box_below(beta) {
            let hat = self.kostant_hat_p(&gamma);
            if hat.is_zero() {
                continue;
            }
            let bar = self.kostant_bar_q(&(beta - &gamma));
            sum += &(&hat * &bar);
        }
        sum == self.kostant_pq(beta)
    }
}

/// All `γ` with `0 ≤ γ ≤ β` coordinatewise.
pub fn box_below(beta: &RootVector) -> Vec<RootVector> {
    let mut out = vec![Vec::with_capacity(beta.rank())];
    for &b in &beta.0 {
        let mut next = Vec::with_capacity(out.len() * (b.max(0) as usize + 1));
        for prefix in &out {
            for c in 0..=b.max(0) {
                let mut v: Vec<i64> = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(RootVector).collect()
}

/// All nonnegative vectors of the given rank with coordinate sum ≤ `bound`.
pub fn simplex_box(rank: usize, bound: i64) -> Vec<RootVector> {
    fn rec(rank: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<RootVector>) {
        if prefix.len() == rank {
            out.push(RootVector(prefix.clone()));
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            rec(rank, left - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, bound, &mut Vec::new(), &mut out);
    out
}
