//! Enumeration engine behind `holant_value` and `gate_signature`.
//!
//! Signature tables are converted into one of several weight types: scaled
//! machine integers over ℚ, ℚ(i) or ℚ(ζ₁₂) with checked arithmetic, a plain
//! complex float, or the exact `Scalar` fallback used when an integer path
//! overflows.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::exactnum::{Cyclo12, Scalar};

pub(crate) trait Weight: Clone + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
}

impl Weight for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct G128(i128, i128);

impl Weight for G128 {
    fn zero() -> Self {
        G128(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0 && self.1 == 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(G128(self.0.checked_add(o.0)?, self.1.checked_add(o.1)?))
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        let re = self.0.checked_mul(o.0)?.checked_sub(self.1.checked_mul(o.1)?)?;
        let im = self.0.checked_mul(o.1)?.checked_add(self.1.checked_mul(o.0)?)?;
        Some(G128(re, im))
    }
}

/// Element of ℤ[ζ₁₂] in the basis 1, ζ, ζ², ζ³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Z12([i128; 4]);

impl Weight for Z12 {
    fn zero() -> Self {
        Z12([0; 4])
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        let mut r = [0i128; 4];
        for k in 0..4 {
            r[k] = self.0[k].checked_add(o.0[k])?;
        }
        Some(Z12(r))
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        let mut d = [0i128; 7];
        for i in 0..4 {
            if self.0[i] == 0 {
                continue;
            }
            for j in 0..4 {
                d[i + j] = d[i + j].checked_add(self.0[i].checked_mul(o.0[j])?)?;
            }
        }
        // ζ⁴ = ζ² − 1, ζ⁵ = ζ³ − ζ, ζ⁶ = −1.
        Some(Z12([
            d[0].checked_sub(d[4])?.checked_sub(d[6])?,
            d[1].checked_sub(d[5])?,
            d[2].checked_add(d[4])?,
            d[3].checked_add(d[5])?,
        ]))
    }
}

impl Weight for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

impl Weight for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

/// Variables are edges; each vertex reads its slots' edges and multiplies
/// its table entry once its last free edge is assigned.
pub(crate) struct Plan {
    pub kappa: usize,
    pub free: Vec<usize>,
    pub vertex_edges: Vec<Vec<usize>>,
    pub vertex_table: Vec<usize>,
    complete_after: Vec<Vec<usize>>,
    fixed_vertices: Vec<usize>,
}

impl Plan {
    pub fn new(kappa: usize, n_edges: usize, free: Vec<usize>, vertex_edges: Vec<Vec<usize>>, vertex_table: Vec<usize>) -> Self {
        let mut pos = vec![usize::MAX; n_edges];
        for (p, &e) in free.iter().enumerate() {
            pos[e] = p;
        }
        let mut complete_after = vec![Vec::new(); free.len()];
        let mut fixed_vertices = Vec::new();
        for (v, edges) in vertex_edges.iter().enumerate() {
            match edges.iter().filter(|&&e| pos[e] != usize::MAX).map(|&e| pos[e]).max() {
                Some(p) => complete_after[p].push(v),
                None => fixed_vertices.push(v),
            }
        }
        Plan { kappa, free, vertex_edges, vertex_table, complete_after, fixed_vertices }
    }

    fn index(&self, v: usize, lab: &[usize]) -> usize {
        self.vertex_edges[v].iter().fold(0, |acc, &e| acc * self.kappa + lab[e])
    }

    fn apply<W: Weight>(&self, vs: &[usize], tables: &[Vec<W>], lab: &[usize], acc: &W) -> Option<Option<W>> {
        let mut w = acc.clone();
        for &v in vs {
            let val = &tables[self.vertex_table[v]][self.index(v, lab)];
            if val.is_zero() {
                return Some(None);
            }
            w = w.mul(val)?;
        }
        Some(Some(w))
    }

    fn dfs<W: Weight>(&self, tables: &[Vec<W>], lab: &mut [usize], p: usize, acc: &W) -> Option<W> {
        if p == self.free.len() {
            return Some(acc.clone());
        }
        let e = self.free[p];
        let mut total = W::zero();
        for c in 0..self.kappa {
            lab[e] = c;
            if let Some(w) = self.apply(&self.complete_after[p], tables, lab, acc)? {
                total = total.add(&self.dfs(tables, lab, p + 1, &w)?)?;
            }
        }
        Some(total)
    }

    /// Sum with the given fixed edge labels; `one` is the multiplicative unit.
    pub fn sum<W: Weight>(&self, tables: &[Vec<W>], fixed: &[usize], one: &W, split: usize) -> Option<W> {
        let mut lab = fixed.to_vec();
        let Some(start) = self.apply(&self.fixed_vertices, tables, &lab, one)? else {
            return Some(W::zero());
        };
        let depth = split.min(self.free.len());
        if depth == 0 {
            return self.dfs(tables, &mut lab, 0, &start);
        }
        let blocks = self.kappa.pow(depth as u32);
        let parts: Vec<Option<W>> = (0..blocks)
            .into_par_iter()
            .map(|mut b| {
                let mut lab = lab.clone();
                for p in (0..depth).rev() {
                    lab[self.free[p]] = b % self.kappa;
                    b /= self.kappa;
                }
                let mut acc = start.clone();
                for p in 0..depth {
                    match self.apply(&self.complete_after[p], tables, &lab, &acc)? {
                        Some(w) => acc = w,
                        None => return Some(W::zero()),
                    }
                }
                self.dfs(tables, &mut lab, depth, &acc)
            })
            .collect();
        let mut total = W::zero();
        for p in parts {
            total = total.add(&p?)?;
        }
        Some(total)
    }

    /// Block depth giving enough parallel work for a closed sum.
    pub fn split_depth(&self) -> usize {
        let mut d = 0;
        let mut n = 1usize;
        while n < 512 && d < self.free.len() {
            n *= self.kappa;
            d += 1;
        }
        d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Rational,
    Gaussian,
    Cyclo,
    Float,
}

fn level(s: &Scalar) -> Level {
    match s {
        Scalar::Rational(_) => Level::Rational,
        Scalar::Gaussian(..) => Level::Gaussian,
        Scalar::Cyclo12(_) => Level::Cyclo,
        Scalar::Float(_) => Level::Float,
    }
}

fn coords(s: &Scalar, lv: Level) -> Vec<BigRational> {
    let c = s.to_cyclo().expect("exact scalar");
    match lv {
        Level::Rational => vec![c.0[0].clone()],
        Level::Gaussian => vec![c.0[0].clone(), c.0[3].clone()],
        _ => c.0.to_vec(),
    }
}

/// Integer coordinate tables and the common denominator of each.
fn integerize(tables: &[&[Scalar]], lv: Level) -> Option<(Vec<Vec<Vec<i128>>>, Vec<BigInt>)> {
    let mut out = Vec::new();
    let mut scales = Vec::new();
    for t in tables {
        let cs: Vec<Vec<BigRational>> = t.iter().map(|s| coords(s, lv)).collect();
        let l = cs.iter().flatten().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let lq = BigRational::from_integer(l.clone());
        let ints = cs
            .iter()
            .map(|v| v.iter().map(|q| (q * &lq).to_integer().to_i128()).collect::<Option<Vec<i128>>>())
            .collect::<Option<Vec<_>>>()?;
        out.push(ints);
        scales.push(l);
    }
    Some((out, scales))
}

/// Evaluates the sum for each fixed labeling in `jobs` (edge label vectors).
pub(crate) fn evaluate(plan: &Plan, tables: &[&[Scalar]], jobs: &[Vec<usize>]) -> Vec<Scalar> {
    let lv = tables.iter().flat_map(|t| t.iter()).map(level).max().unwrap_or(Level::Rational);
    if tables.iter().flat_map(|t| t.iter()).any(|s| s.is_exact()) && lv == Level::Float {
        // Mixed tables: everything is taken as float.
        return run_float(plan, tables, jobs);
    }
    match lv {
        Level::Float => run_float(plan, tables, jobs),
        _ => run_exact(plan, tables, jobs, lv),
    }
}

fn split_for(plan: &Plan, jobs: usize) -> usize {
    if jobs >= 64 {
        0
    } else {
        plan.split_depth()
    }
}

fn run_jobs<W: Weight>(plan: &Plan, tables: &[Vec<W>], jobs: &[Vec<usize>], one: &W) -> Option<Vec<W>> {
    let split = split_for(plan, jobs.len());
    if split == 0 {
        jobs.par_iter().map(|j| plan.sum(tables, j, one, 0)).collect()
    } else {
        jobs.iter().map(|j| plan.sum(tables, j, one, split)).collect()
    }
}

fn run_float(plan: &Plan, tables: &[&[Scalar]], jobs: &[Vec<usize>]) -> Vec<Scalar> {
    let ts: Vec<Vec<Complex64>> = tables.iter().map(|t| t.iter().map(Scalar::to_complex).collect()).collect();
    run_jobs(plan, &ts, jobs, &Complex64::new(1.0, 0.0))
        .expect("float arithmetic does not overflow")
        .into_iter()
        .map(Scalar::Float)
        .collect()
}

fn run_exact(plan: &Plan, tables: &[&[Scalar]], jobs: &[Vec<usize>], lv: Level) -> Vec<Scalar> {
    if let Some((ints, scales)) = integerize(tables, lv) {
        let mut denom = BigInt::one();
        for &t in &plan.vertex_table {
            denom *= &scales[t];
        }
        let denom = BigRational::from_integer(denom);
        let fast: Option<Vec<Scalar>> = match lv {
            Level::Rational => {
                let ts: Vec<Vec<i128>> = ints.iter().map(|t| t.iter().map(|c| c[0]).collect()).collect();
                run_jobs(plan, &ts, jobs, &1i128).map(|r| {
                    r.into_iter().map(|v| Scalar::Rational(BigRational::from_integer(v.into()) / &denom)).collect()
                })
            }
            Level::Gaussian => {
                let ts: Vec<Vec<G128>> = ints.iter().map(|t| t.iter().map(|c| G128(c[0], c[1])).collect()).collect();
                run_jobs(plan, &ts, jobs, &G128(1, 0)).map(|r| {
                    r.into_iter()
                        .map(|v| {
                            Scalar::Gaussian(
                                BigRational::from_integer(v.0.into()) / &denom,
                                BigRational::from_integer(v.1.into()) / &denom,
                            )
                            .simplified()
                        })
                        .collect()
                })
            }
            _ => {
                let ts: Vec<Vec<Z12>> = ints.iter().map(|t| t.iter().map(|c| Z12([c[0], c[1], c[2], c[3]])).collect()).collect();
                run_jobs(plan, &ts, jobs, &Z12([1, 0, 0, 0])).map(|r| {
                    r.into_iter()
                        .map(|v| {
                            let c = v.0.map(|x| BigRational::from_integer(x.into()) / &denom);
                            Scalar::Cyclo12(Cyclo12(c)).simplified()
                        })
                        .collect()
                })
            }
        };
        if let Some(v) = fast {
            return v;
        }
    }
    let ts: Vec<Vec<Scalar>> = tables.iter().map(|t| t.to_vec()).collect();
    run_jobs(plan, &ts, jobs, &Scalar::one())
        .expect("exact arithmetic does not overflow")
        .into_iter()
        .map(|s| s.simplified())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z12_matches_cyclo() {
        let a = Z12([1, 2, -3, 4]);
        let b = Z12([-2, 0, 5, 1]);
        let p = a.mul(&b).unwrap();
        let to = |z: Z12| Cyclo12(z.0.map(|x| BigRational::from_integer(x.into())));
        assert_eq!(to(p), to(a).mul(&to(b)));
    }

    #[test]
    fn overflow_is_detected() {
        assert!(i128::MAX.mul(&2).is_none());
        assert!(G128(i128::MAX, 0).add(&G128(1, 0)).is_none());
    }
}
