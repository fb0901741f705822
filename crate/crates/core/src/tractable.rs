//! Polynomial-time evaluators for the tractable families: equality,
//! generalized-permutation Gram decompositions, affine signatures over ℤ₃,
//! the κ = 4 Hadamard family, and ⟨a,0,c⟩ with a³ = c³ on κ = 3.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::Scalar;
use crate::gadgets::{holo_transform, GadgetError, TransformMatrix};
use crate::holant::{End, HolantError, SignatureGrid};
use crate::linalg::Matrix;
use crate::signatures::{compress, tuples, DenseSignature, SuccinctType};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum TractableError {
    #[error("signature {0} is not a multiple of an equality")]
    NotEquality(usize),
    #[error("Gram matrix is not a generalized permutation matrix")]
    GramNotGeneralizedPermutation,
    #[error("decomposition does not reproduce signature {0}")]
    DecompositionMismatch(usize),
    #[error("decompositions use different vector families")]
    VectorFamilyMismatch,
    #[error("signature {0} is not affine over Z3")]
    NotAffine(usize),
    #[error("signature does not have the required form: {0}")]
    WrongForm(String),
    #[error("evaluator needs domain size {expected}, grid has {got}")]
    WrongDomainSize { expected: usize, got: usize },
    #[error("undoing the transformation does not give the required form: {0}")]
    FormMismatch(String),
    #[error("transformation is not orthogonal up to a nonzero scalar")]
    NotOrthogonal,
    #[error(transparent)]
    Holant(#[from] HolantError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

/// Evaluation strategies selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    Equality,
    Gp,
    AffineZ3,
    HadamardK4,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Brute, Method::Equality, Method::Gp, Method::AffineZ3, Method::HadamardK4];

    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Equality => "equality",
            Method::Gp => "gp",
            Method::AffineZ3 => "affine-z3",
            Method::HadamardK4 => "hadamard-k4",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// Connected pieces of a closed grid, ignoring arity-0 vertices.
struct Component {
    vertices: Vec<usize>,
    n_edges: usize,
}

struct Layout {
    components: Vec<Component>,
    /// Product of the values of arity-0 vertices.
    scalar: Scalar,
    /// For each vertex, its neighbours through each incident edge.
    adj: Vec<Vec<usize>>,
}

fn edge_ends(grid: &SignatureGrid, e: usize) -> Result<(usize, usize), TractableError> {
    match grid.edges[e] {
        [End::Slot { vertex: u, .. }, End::Slot { vertex: v, .. }] => Ok((u, v)),
        _ => Err(HolantError::HasDangling.into()),
    }
}

fn layout(grid: &SignatureGrid) -> Result<Layout, TractableError> {
    grid.validate()?;
    if !grid.is_closed() {
        return Err(HolantError::HasDangling.into());
    }
    let n = grid.vertices.len();
    let mut adj = vec![Vec::new(); n];
    for e in 0..grid.edges.len() {
        let (u, v) = edge_ends(grid, e)?;
        adj[u].push(v);
        if u != v {
            adj[v].push(u);
        }
    }
    let mut scalar = Scalar::one();
    let mut comp = vec![usize::MAX; n];
    let mut components: Vec<Component> = Vec::new();
    for s in 0..n {
        let sig = &grid.signatures[grid.vertices[s].sig];
        if sig.arity == 0 {
            scalar = &scalar * &sig.values[0];
            continue;
        }
        if comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut vertices = vec![];
        while let Some(v) = stack.pop() {
            vertices.push(v);
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        vertices.sort_unstable();
        components.push(Component { vertices, n_edges: 0 });
    }
    for e in 0..grid.edges.len() {
        let (u, _) = edge_ends(grid, e)?;
        components[comp[u]].n_edges += 1;
    }
    Ok(Layout { components, scalar, adj })
}

/// λ with `d` = λ·(=ₙ), if any.
pub fn equality_scale(d: &DenseSignature) -> Option<Scalar> {
    let lambda = d.values[0].clone();
    for t in d.tuples() {
        let v = d.get(&t);
        let diag = t.iter().all(|&x| x == t[0]);
        if (diag && *v != lambda) || (!diag && !v.is_zero()) {
            return None;
        }
    }
    Some(lambda)
}

/// Holant value when every signature is λ·(=ₙ): the product of the λs times
/// κ to the number of connected components.
pub fn eval_equality(grid: &SignatureGrid) -> Result<Scalar, TractableError> {
    let lay = layout(grid)?;
    let lambdas = grid
        .signatures
        .iter()
        .enumerate()
        .map(|(i, d)| equality_scale(d).ok_or(TractableError::NotEquality(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut value = lay.scalar;
    for c in &lay.components {
        for &v in &c.vertices {
            value = &value * &lambdas[grid.vertices[v].sig];
        }
        value = &value * &Scalar::int(grid.kappa as i64);
    }
    Ok(value)
}

/// f = Σ cᵢ uᵢ^{⊗n} over a vector family whose bilinear Gram matrix has
/// exactly one nonzero entry per row and column.
#[derive(Clone, Debug, PartialEq)]
pub struct GPDecomposition {
    pub vectors: Vec<Vec<Scalar>>,
    pub coeffs: Vec<Scalar>,
}

impl GPDecomposition {
    pub fn new(vectors: Vec<Vec<Scalar>>, coeffs: Vec<Scalar>) -> Self {
        GPDecomposition { vectors, coeffs }
    }

    /// λ·(=ₙ) via the standard basis.
    pub fn equality(kappa: usize, lambda: Scalar) -> Self {
        let vectors = (0..kappa).map(|i| (0..kappa).map(|j| Scalar::int((i == j) as i64)).collect()).collect();
        GPDecomposition { vectors, coeffs: vec![lambda; kappa] }
    }

    /// The constant signature a·𝟏^{⊗n}.
    pub fn constant(kappa: usize, a: Scalar) -> Self {
        GPDecomposition { vectors: vec![vec![Scalar::one(); kappa]], coeffs: vec![a] }
    }

    /// (κI − 2J)^{⊗n} λ(=ₙ): columns κeₖ − 2·𝟏, Gram κ²I.
    pub fn t_image(kappa: usize, lambda: Scalar) -> Self {
        let k = kappa as i64;
        let vectors = (0..kappa).map(|i| (0..kappa).map(|j| Scalar::int(if i == j { k - 2 } else { -2 })).collect()).collect();
        GPDecomposition { vectors, coeffs: vec![lambda; kappa] }
    }

    /// ⟨a,b,a⟩ on κ = 3 as (a+2b)/3·(1,1,1)^{⊗3} + (a−b)/3·[(1,ω,ω²)^{⊗3} + (1,ω²,ω)^{⊗3}].
    pub fn omega_form(a: &Scalar, b: &Scalar) -> Self {
        let w = Scalar::omega();
        let w2 = &w * &w;
        let one = Scalar::one();
        let third = Scalar::ratio(1, 3);
        let c0 = &(a + &(b * &Scalar::int(2))) * &third;
        let c1 = &(a - b) * &third;
        GPDecomposition {
            vectors: vec![vec![one.clone(); 3], vec![one.clone(), w.clone(), w2.clone()], vec![one, w2, w]],
            coeffs: vec![c0, c1.clone(), c1],
        }
    }

    pub fn gram(&self) -> Matrix {
        let dot = |a: &[Scalar], b: &[Scalar]| -> Scalar { a.iter().zip(b).map(|(x, y)| x * y).sum() };
        self.vectors.iter().map(|u| self.vectors.iter().map(|v| dot(u, v)).collect()).collect()
    }

    pub fn expand(&self, arity: usize) -> Result<DenseSignature, TractableError> {
        let kappa = self.vectors.first().map_or(0, Vec::len);
        Ok(DenseSignature::from_fn(kappa, arity, |t| {
            self.vectors
                .iter()
                .zip(&self.coeffs)
                .map(|(u, c)| t.iter().fold(c.clone(), |acc, &x| &acc * &u[x]))
                .sum()
        })
        .map_err(HolantError::from)?)
    }

    /// The involution i ↦ the column of the nonzero entry in row i.
    fn pairing(&self) -> Result<Vec<usize>, TractableError> {
        let g = self.gram();
        let n = g.len();
        let mut pi = vec![0; n];
        for (i, row) in g.iter().enumerate() {
            let nz: Vec<usize> = (0..n).filter(|&j| !row[j].is_zero()).collect();
            if nz.len() != 1 {
                return Err(TractableError::GramNotGeneralizedPermutation);
            }
            pi[i] = nz[0];
        }
        let mut seen = vec![false; n];
        for &j in &pi {
            if std::mem::replace(&mut seen[j], true) {
                return Err(TractableError::GramNotGeneralizedPermutation);
            }
        }
        Ok(pi)
    }
}

/// Holant value when signature `s` equals `decs[s]` expanded. All
/// decompositions must share one vector family.
pub fn eval_gp(grid: &SignatureGrid, decs: &[GPDecomposition]) -> Result<Scalar, TractableError> {
    let lay = layout(grid)?;
    if decs.len() != grid.signatures.len() {
        return Err(HolantError::InvalidGrid(format!("{} decompositions for {} signatures", decs.len(), grid.signatures.len())).into());
    }
    let Some(first) = decs.first() else {
        return Ok(lay.scalar);
    };
    for (i, (d, sig)) in decs.iter().zip(&grid.signatures).enumerate() {
        if d.vectors != first.vectors || d.coeffs.len() != d.vectors.len() {
            return Err(TractableError::VectorFamilyMismatch);
        }
        if sig.arity > 0 && d.expand(sig.arity)? != *sig {
            return Err(TractableError::DecompositionMismatch(i));
        }
    }
    let pi = first.pairing()?;
    let g = first.gram();
    let coeff = |v: usize, i: usize| -> &Scalar { &decs[grid.vertices[v].sig].coeffs[i] };
    let mut value = lay.scalar;
    for c in &lay.components {
        // Two-colour the component; `side` is None when it is not bipartite.
        let mut colour = vec![u8::MAX; grid.vertices.len()];
        colour[c.vertices[0]] = 0;
        let mut stack = vec![c.vertices[0]];
        let mut bipartite = true;
        while let Some(v) = stack.pop() {
            for &w in &lay.adj[v] {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[v];
                    stack.push(w);
                } else if colour[w] == colour[v] {
                    bipartite = false;
                }
            }
        }
        let mut total = Scalar::zero();
        for i in 0..pi.len() {
            let j = pi[i];
            if j == i {
                let mut term = g[i][i].pow(c.n_edges as i64).expect("nonnegative power");
                for &v in &c.vertices {
                    term = &term * coeff(v, i);
                }
                total = &total + &term;
            } else if bipartite {
                // Counts both orientations as i runs over the pair.
                let mut term = g[i][j].pow(c.n_edges as i64).expect("nonnegative power");
                for &v in &c.vertices {
                    term = &term * coeff(v, if colour[v] == 0 { i } else { j });
                }
                total = &total + &term;
            }
        }
        value = &value * &total;
    }
    Ok(value)
}

fn m3(v: i64) -> u8 {
    v.rem_euclid(3) as u8
}

fn inv3(v: u8) -> u8 {
    // 1⁻¹ = 1, 2⁻¹ = 2 in ℤ₃.
    debug_assert!(v != 0);
    v
}

/// Q(z) = zᵀSz + l·z + c over ℤ₃, with S symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadZ3 {
    pub s: Vec<Vec<u8>>,
    pub l: Vec<u8>,
    pub c: u8,
}

impl QuadZ3 {
    pub fn zero(n: usize) -> Self {
        QuadZ3 { s: vec![vec![0; n]; n], l: vec![0; n], c: 0 }
    }

    pub fn n_vars(&self) -> usize {
        self.l.len()
    }

    /// Adds `coef`·zᵢzⱼ (i may equal j).
    pub fn add_monomial(&mut self, i: usize, j: usize, coef: u8) {
        if i == j {
            self.s[i][i] = (self.s[i][i] + coef) % 3;
        } else {
            // zᵢzⱼ = 2⁻¹(zᵢzⱼ + zⱼzᵢ) and 2⁻¹ = 2.
            let h = (2 * coef) % 3;
            self.s[i][j] = (self.s[i][j] + h) % 3;
            self.s[j][i] = (self.s[j][i] + h) % 3;
        }
    }

    pub fn eval(&self, z: &[u8]) -> u8 {
        let n = self.n_vars();
        let mut acc = self.c as u32;
        for i in 0..n {
            acc += self.l[i] as u32 * z[i] as u32;
            for j in 0..n {
                acc += self.s[i][j] as u32 * z[i] as u32 * z[j] as u32;
            }
        }
        (acc % 3) as u8
    }

    /// z_a ← z_a + f·z_b.
    fn shear(&mut self, a: usize, b: usize, f: u8) {
        let n = self.n_vars();
        for r in 0..n {
            self.s[r][b] = (self.s[r][b] + f * self.s[r][a]) % 3;
        }
        for col in 0..n {
            self.s[b][col] = (self.s[b][col] + f * self.s[a][col]) % 3;
        }
        self.l[b] = (self.l[b] + f * self.l[a]) % 3;
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.s.swap(a, b);
        for r in &mut self.s {
            r.swap(a, b);
        }
        self.l.swap(a, b);
    }
}

fn omega_pow(e: u8) -> Scalar {
    Scalar::omega().pow((e % 3) as i64).expect("nonnegative power")
}

/// Σ_{z ∈ ℤ₃ⁿ} ω^{Q(z)}, by diagonalizing S under congruence.
pub fn gauss_sum_z3(q: &QuadZ3) -> Scalar {
    let mut q = q.clone();
    let n = q.n_vars();
    for k in 0..n {
        if q.s[k][k] == 0 {
            if let Some(p) = (k + 1..n).find(|&p| q.s[p][p] != 0) {
                q.swap(k, p);
            } else if let Some((i, j)) = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| q.s[i][j] != 0) {
                // Sᵢᵢ = Sⱼⱼ = 0, so z_i ← z_i + z_j makes Sⱼⱼ = 2Sᵢⱼ ≠ 0.
                q.shear(i, j, 1);
                q.swap(k, j);
            } else {
                break;
            }
        }
        let d = inv3(q.s[k][k]);
        for m in k + 1..n {
            if q.s[k][m] != 0 {
                let f = (3 - (q.s[k][m] * d) % 3) % 3;
                q.shear(k, m, f);
            }
        }
    }
    let mut value = omega_pow(q.c);
    for k in 0..n {
        let (d, e) = (q.s[k][k] as u32, q.l[k] as u32);
        let f: Scalar = (0..3u32).map(|t| omega_pow(((d * t * t + e * t) % 3) as u8)).sum();
        value = &value * &f;
    }
    value
}

/// λ·χ_{x ∈ x₀ + span(B)}·ω^{Q(y)} where x = x₀ + Σ yₖbₖ.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineZ3Signature {
    pub arity: usize,
    pub offset: Vec<u8>,
    pub basis: Vec<Vec<u8>>,
    pub phase: QuadZ3,
    pub scale: Scalar,
}

impl AffineZ3Signature {
    pub fn point(&self, y: &[u8]) -> Vec<usize> {
        (0..self.arity)
            .map(|s| ((self.offset[s] as u32 + y.iter().zip(&self.basis).map(|(&c, b)| c as u32 * b[s] as u32).sum::<u32>()) % 3) as usize)
            .collect()
    }

    /// The linear system A x = A x₀ cutting out the support.
    pub fn constraints(&self) -> Vec<Vec<u8>> {
        nullspace_z3(&self.basis, self.arity)
    }

    pub fn expand(&self) -> Result<DenseSignature, TractableError> {
        let mut d = DenseSignature::zeros(3, self.arity).map_err(HolantError::from)?;
        for y in tuples(3, self.basis.len()) {
            let y: Vec<u8> = y.into_iter().map(|v| v as u8).collect();
            let idx = crate::signatures::tuple_index(3, &self.point(&y));
            d.values[idx] = &self.scale * &omega_pow(self.phase.eval(&y));
        }
        Ok(d)
    }
}

/// Row-reduces `rows` mod 3 in place; returns pivot columns.
fn rref_z3(rows: &mut Vec<Vec<u8>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = inv3(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = (*x * inv) % 3;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..rows[i].len() {
                    rows[i][j] = m3(rows[i][j] as i64 - (f * rows[r][j]) as i64);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A basis of {x : ⟨v, x⟩ = 0 for every v in `vs`}.
fn nullspace_z3(vs: &[Vec<u8>], cols: usize) -> Vec<Vec<u8>> {
    let mut rows = vs.to_vec();
    let pivots = rref_z3(&mut rows, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![0u8; cols];
            x[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = m3(-(rows[r][free] as i64));
            }
            x
        })
        .collect()
}

/// The exponent e with v = λωᵉ, if any.
fn omega_log(v: &Scalar, lambda: &Scalar) -> Option<u8> {
    (0..3u8).find(|&e| *v == lambda * &omega_pow(e))
}

/// Recognizes an affine signature on κ = 3; `None` for the zero signature
/// or a non-affine one.
pub fn affine_z3(d: &DenseSignature) -> Option<AffineZ3Signature> {
    if d.kappa != 3 {
        return None;
    }
    let support: Vec<Vec<usize>> = d.tuples().filter(|t| !d.get(t).is_zero()).collect();
    let x0: Vec<u8> = support.first()?.iter().map(|&v| v as u8).collect();
    let n = d.arity;
    let mut rows: Vec<Vec<u8>> = support.iter().map(|t| (0..n).map(|s| m3(t[s] as i64 - x0[s] as i64)).collect()).collect();
    rref_z3(&mut rows, n);
    let dim = rows.len();
    if support.len() != 3usize.pow(dim as u32) {
        return None;
    }
    let mut sig = AffineZ3Signature { arity: n, offset: x0, basis: rows, phase: QuadZ3::zero(dim), scale: d.get(&support[0]).clone() };
    let val = |sig: &AffineZ3Signature, y: &[u8]| -> Option<u8> { omega_log(d.get(&sig.point(y)), &sig.scale) };
    let unit = |i: usize, t: u8| -> Vec<u8> { (0..dim).map(|k| if k == i { t } else { 0 }).collect() };
    let mut lin = vec![0u8; dim];
    for i in 0..dim {
        let (q1, q2) = (val(&sig, &unit(i, 1))?, val(&sig, &unit(i, 2))?);
        // Q(t eᵢ) = a t + b t² gives a = Q(2eᵢ) − Q(eᵢ), b = Q(eᵢ) − a.
        let a = m3(q2 as i64 - q1 as i64);
        let b = m3(q1 as i64 - a as i64);
        lin[i] = a;
        sig.phase.add_monomial(i, i, b);
    }
    sig.phase.l = lin;
    for i in 0..dim {
        for j in i + 1..dim {
            let mut y = vec![0u8; dim];
            y[i] = 1;
            y[j] = 1;
            let qij = val(&sig, &y)?;
            let base = sig.phase.eval(&y);
            sig.phase.add_monomial(i, j, m3(qij as i64 - base as i64));
        }
    }
    for y in tuples(3, dim) {
        let y: Vec<u8> = y.into_iter().map(|v| v as u8).collect();
        if val(&sig, &y)? != sig.phase.eval(&y) {
            return None;
        }
    }
    Some(sig)
}

/// Holant value on κ = 3 when every signature is affine: solves the edge
/// constraints over ℤ₃ and evaluates the remaining quadratic Gauss sum.
pub fn eval_affine_z3(grid: &SignatureGrid) -> Result<Scalar, TractableError> {
    if grid.kappa != 3 {
        return Err(TractableError::WrongDomainSize { expected: 3, got: grid.kappa });
    }
    let lay = layout(grid)?;
    if grid.vertices.iter().any(|v| grid.signatures[v.sig].arity > 0 && grid.signatures[v.sig].is_zero()) {
        return Ok(Scalar::zero());
    }
    let mut affs: Vec<Option<AffineZ3Signature>> = Vec::with_capacity(grid.signatures.len());
    for (i, d) in grid.signatures.iter().enumerate() {
        affs.push(if d.arity == 0 || d.is_zero() { None } else { Some(affine_z3(d).ok_or(TractableError::NotAffine(i))?) });
    }
    // One block of parameter variables per vertex.
    let mut start = vec![0usize; grid.vertices.len()];
    let mut n = 0;
    let mut value = lay.scalar;
    for (v, gv) in grid.vertices.iter().enumerate() {
        start[v] = n;
        if let Some(a) = &affs[gv.sig] {
            n += a.basis.len();
            value = &value * &a.scale;
        }
    }
    let mut q = QuadZ3::zero(n);
    for (v, gv) in grid.vertices.iter().enumerate() {
        if let Some(a) = &affs[gv.sig] {
            let o = start[v];
            for i in 0..a.basis.len() {
                q.l[o + i] = a.phase.l[i];
                for j in 0..a.basis.len() {
                    q.s[o + i][o + j] = a.phase.s[i][j];
                }
            }
            q.c = (q.c + a.phase.c) % 3;
        }
    }
    // Each edge equates the labels its two ends induce: rows [coeffs | rhs].
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for e in &grid.edges {
        let [End::Slot { vertex: u, slot: su }, End::Slot { vertex: w, slot: sw }] = *e else {
            return Err(HolantError::HasDangling.into());
        };
        let mut row = vec![0u8; n + 1];
        let mut rhs = 0i64;
        for (vert, slot, sign) in [(u, su, 1i64), (w, sw, -1i64)] {
            let a = affs[grid.vertices[vert].sig].as_ref().expect("nonzero arity");
            for (k, b) in a.basis.iter().enumerate() {
                let idx = start[vert] + k;
                row[idx] = m3(row[idx] as i64 + sign * b[slot] as i64);
            }
            rhs -= sign * a.offset[slot] as i64;
        }
        row[n] = m3(rhs);
        rows.push(row);
    }
    let pivots = rref_z3(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(Scalar::zero());
    }
    // y = y_p + N z over the free variables.
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut yp = vec![0u8; n];
    for (r, &p) in pivots.iter().enumerate() {
        yp[p] = rows[r][n];
    }
    let ncols: Vec<Vec<u8>> = free
        .iter()
        .map(|&f| {
            let mut x = vec![0u8; n];
            x[f] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = m3(-(rows[r][f] as i64));
            }
            x
        })
        .collect();
    let m = free.len();
    let dot = |a: &[u8], b: &[u8]| -> u8 { (a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum::<u32>() % 3) as u8 };
    let s_times = |x: &[u8]| -> Vec<u8> { (0..n).map(|i| dot(&q.s[i], x)).collect() };
    let syp = s_times(&yp);
    let sn: Vec<Vec<u8>> = ncols.iter().map(|c| s_times(c)).collect();
    let mut r = QuadZ3::zero(m);
    for i in 0..m {
        for j in 0..m {
            r.s[i][j] = dot(&ncols[i], &sn[j]);
        }
        r.l[i] = (2 * dot(&syp, &ncols[i]) + dot(&q.l, &ncols[i])) % 3;
    }
    r.c = (dot(&yp, &syp) + dot(&q.l, &yp) + q.c) % 3;
    Ok(&value * &gauss_sum_z3(&r))
}

/// Q(z) = Σ_{i<j} aᵢⱼzᵢzⱼ + l·z + c over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadGf2 {
    pub a: Vec<Vec<bool>>,
    pub l: Vec<bool>,
    pub c: bool,
}

impl QuadGf2 {
    pub fn zero(n: usize) -> Self {
        QuadGf2 { a: vec![vec![false; n]; n], l: vec![false; n], c: false }
    }

    /// Adds zᵢzⱼ; zᵢzᵢ = zᵢ.
    pub fn add_product(&mut self, i: usize, j: usize) {
        if i == j {
            self.l[i] ^= true;
        } else {
            self.a[i][j] ^= true;
            self.a[j][i] ^= true;
        }
    }

    pub fn eval(&self, z: &[bool]) -> bool {
        let n = self.l.len();
        let mut acc = self.c;
        for i in 0..n {
            acc ^= self.l[i] & z[i];
            for j in i + 1..n {
                acc ^= self.a[i][j] & z[i] & z[j];
            }
        }
        acc
    }
}

/// Σ_{z ∈ GF(2)ⁿ} (−1)^{Q(z)}, which is 0 or ±2ᵏ.
pub fn gf2_quadratic_sum(q: &QuadGf2) -> BigInt {
    let mut q = q.clone();
    let n = q.l.len();
    let mut active = vec![true; n];
    let mut exp = 0u32;
    while let Some(i) = (0..n).find(|&i| active[i]) {
        let partner = (0..n).find(|&j| active[j] && q.a[i][j]);
        match partner {
            None => {
                if q.l[i] {
                    return BigInt::zero();
                }
                active[i] = false;
                exp += 1;
            }
            Some(j) => {
                // Summing zᵢ forces z_j = Σ_{k≠i,j} aᵢₖzₖ + lᵢ.
                let alpha: Vec<bool> = (0..n).map(|k| k != j && k != i && active[k] && q.a[i][k]).collect();
                let beta = q.l[i];
                for k in 0..n {
                    q.a[i][k] = false;
                    q.a[k][i] = false;
                }
                q.l[i] = false;
                active[i] = false;
                exp += 1;
                if q.l[j] {
                    for k in 0..n {
                        q.l[k] ^= alpha[k];
                    }
                    q.c ^= beta;
                }
                for m in 0..n {
                    if m == j || !q.a[j][m] {
                        continue;
                    }
                    for k in 0..n {
                        if alpha[k] {
                            q.add_product(k, m);
                        }
                    }
                    if beta {
                        q.l[m] ^= true;
                    }
                }
                for k in 0..n {
                    q.a[j][k] = false;
                    q.a[k][j] = false;
                }
                q.l[j] = false;
                active[j] = false;
            }
        }
    }
    let mag = BigInt::from(1) << exp;
    if q.c {
        -mag
    } else {
        mag
    }
}

/// Z_{H₄}(G) with H₄ = 2I − J, via the GF(2)² encoding of [4].
pub fn hadamard_partition(n_vertices: usize, edges: &[(usize, usize)]) -> BigInt {
    let mut q = QuadGf2::zero(2 * n_vertices);
    for &(u, v) in edges {
        if u == v {
            continue;
        }
        // [σu ≠ σv] = d₁ + d₂ + d₁d₂ with dₖ the coordinate differences.
        for k in 0..2 {
            q.l[2 * u + k] ^= true;
            q.l[2 * v + k] ^= true;
        }
        for a in [2 * u, 2 * v] {
            for b in [2 * u + 1, 2 * v + 1] {
                q.add_product(a, b);
            }
        }
    }
    gf2_quadratic_sum(&q)
}

/// λ with d = λ⟨μ², 1, μ⟩ and μ² + 2μ + 5 = 0, returned with μ.
fn hadamard_form(d: &DenseSignature) -> Result<(Scalar, Option<Scalar>), TractableError> {
    if d.arity != 3 {
        return Err(TractableError::WrongForm(format!("arity {} instead of 3", d.arity)));
    }
    let s = compress(d, SuccinctType::Tau3).map_err(|e| TractableError::WrongForm(e.to_string()))?;
    let [a, b, c] = [&s.entries[0], &s.entries[1], &s.entries[2]];
    if b.is_zero() {
        return if a.is_zero() && c.is_zero() {
            Ok((Scalar::zero(), None))
        } else {
            Err(TractableError::WrongForm("b = 0 with a nonzero entry".into()))
        };
    }
    let mu = c / b;
    let ok = (&(&mu * &mu) + &(&(&mu * &Scalar::int(2)) + &Scalar::int(5))).is_zero() && *a == &(&mu * &mu) * b;
    if !ok {
        return Err(TractableError::WrongForm("not λ⟨μ²,1,μ⟩ with μ = −1 ± 2i".into()));
    }
    Ok((b.clone(), Some(mu)))
}

/// Holant value on κ = 4 for signatures λ⟨μ²,1,μ⟩ with one common
/// μ = −1 ± 2i: each equals Σₖ tₖ^{⊗3} for the columns of yJ + (x−y)I with
/// x = −(3+εi)/2, y = (1−εi)/2, whose Gram matrix is 2H₄.
pub fn eval_hadamard_k4(grid: &SignatureGrid) -> Result<Scalar, TractableError> {
    if grid.kappa != 4 {
        return Err(TractableError::WrongDomainSize { expected: 4, got: grid.kappa });
    }
    let lay = layout(grid)?;
    let mut lambdas = Vec::with_capacity(grid.signatures.len());
    let mut mu: Option<Scalar> = None;
    for d in &grid.signatures {
        if d.arity == 0 {
            lambdas.push(Scalar::one());
            continue;
        }
        let (l, m) = hadamard_form(d)?;
        if let Some(m) = m {
            if mu.as_ref().is_some_and(|x| *x != m) {
                return Err(TractableError::WrongForm("signatures use different μ".into()));
            }
            mu = Some(m);
        }
        lambdas.push(l);
    }
    let mut value = lay.scalar;
    let mut index = vec![usize::MAX; grid.vertices.len()];
    let mut n = 0;
    for (v, gv) in grid.vertices.iter().enumerate() {
        if grid.signatures[gv.sig].arity > 0 {
            value = &value * &lambdas[gv.sig];
            index[v] = n;
            n += 1;
        }
    }
    let edges: Vec<(usize, usize)> = (0..grid.edges.len())
        .map(|e| edge_ends(grid, e).map(|(u, v)| (index[u], index[v])))
        .collect::<Result<_, _>>()?;
    let two_e = Scalar::from_bigint(BigInt::from(1) << edges.len());
    Ok(&(&value * &two_e) * &Scalar::from_bigint(hadamard_partition(n, &edges)))
}

/// Replaces each signature f = T^{⊗n}g by g, given T·Tᵀ = λI; returns the
/// new grid and the factor λ^{|E|} with Holant(grid) = λ^{|E|}·Holant(new).
pub fn untransform(grid: &SignatureGrid, t: &TransformMatrix) -> Result<(SignatureGrid, Scalar), TractableError> {
    let lambda = t.lambda.clone().filter(|l| !l.is_zero()).ok_or(TractableError::NotOrthogonal)?;
    let tt = t.transpose();
    let mut out = grid.clone();
    for d in &mut out.signatures {
        let n = d.arity as i64;
        let back = holo_transform(&tt, d)?;
        *d = back.scale(&lambda.pow(-n).expect("nonzero"));
    }
    let factor = lambda.pow(grid.edges.len() as i64).expect("nonnegative power");
    Ok((out, factor))
}

/// κ = 3 with every signature T^{⊗3}⟨a,0,c⟩, a³ = c³: undoes T and
/// evaluates the affine instance.
pub fn eval_a3c3(grid: &SignatureGrid, t: &TransformMatrix) -> Result<Scalar, TractableError> {
    if grid.kappa != 3 {
        return Err(TractableError::WrongDomainSize { expected: 3, got: grid.kappa });
    }
    let (g, factor) = untransform(grid, t)?;
    for d in &g.signatures {
        if d.arity == 0 {
            continue;
        }
        let s = compress(d, SuccinctType::Tau3).map_err(|e| TractableError::FormMismatch(e.to_string()))?;
        let [a, b, c] = [&s.entries[0], &s.entries[1], &s.entries[2]];
        let cube = |x: &Scalar| x.pow(3).expect("power");
        if !b.is_zero() || cube(a) != cube(c) {
            return Err(TractableError::FormMismatch("expected ⟨a,0,c⟩ with a³ = c³".into()));
        }
    }
    Ok(&factor * &eval_affine_z3(&g)?)
}
