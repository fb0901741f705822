//! Plane multigraphs, directed medial graphs, the Tutte polynomial, and
//! edge colorings.
//!
//! Edge `e = (u, v)` owns two darts: `2e` at `u` and `2e + 1` at `v`. The
//! rotation system lists the darts at each vertex in counterclockwise order.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{BiPoly, IntPoly, Scalar};
use crate::holant::{HolantError, SignatureGrid, DEFAULT_ENUM_CAP};
use crate::signatures::{DenseSignature, SuccinctSignature, SuccinctType};

/// Largest edge count accepted by deletion–contraction.
pub const TUTTE_EDGE_CAP: usize = 16;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: String, cap: u128 },
    #[error("graph is not 3-regular")]
    NotCubic,
    #[error("graph is not {0}-regular")]
    NotRegular(usize),
    #[error("improper coloring: {0}")]
    ImproperColoring(String),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("rotation system is not planar (Euler characteristic {0})")]
    NotPlane(i64),
    #[error(transparent)]
    Holant(#[from] HolantError),
}

/// A multigraph with a rotation system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub rotation: Vec<Vec<usize>>,
}

/// JSON form; a missing rotation means incidence order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<usize>>>,
}

impl PlaneGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let g = PlaneGraph { n, edges, rotation };
        g.validate()?;
        Ok(g)
    }

    /// Rotation taken from the order in which edges are listed.
    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut rotation = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::InvalidRotation(format!("edge {e} leaves the vertex range")));
            }
            rotation[u].push(2 * e);
            rotation[v].push(2 * e + 1);
        }
        Self::new(n, edges, rotation)
    }

    /// Rotation from straight-line coordinates, sorting darts by angle.
    pub fn from_coordinates(points: &[(f64, f64)], edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Self::from_edges(points.len(), edges)?;
        for v in 0..g.n {
            let angle = |d: &usize| {
                let w = g.dart_head(*d);
                let (x, y) = (points[w].0 - points[v].0, points[w].1 - points[v].1);
                y.atan2(x)
            };
            let mut r = g.rotation[v].clone();
            r.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
            g.rotation[v] = r;
        }
        Ok(g)
    }

    pub fn from_json_value(j: &GraphJson) -> Result<Self, GraphError> {
        match &j.rotation {
            Some(r) => Self::new(j.n, j.edges.clone(), r.clone()),
            None => Self::from_edges(j.n, j.edges.clone()),
        }
    }

    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::InvalidRotation(e.to_string()))?;
        Self::from_json_value(&j)
    }

    pub fn to_json_value(&self) -> GraphJson {
        GraphJson { n: self.n, edges: self.edges.clone(), rotation: Some(self.rotation.clone()) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    fn validate(&self) -> Result<(), GraphError> {
        let bad = |m: String| Err(GraphError::InvalidRotation(m));
        if self.rotation.len() != self.n {
            return bad(format!("{} rotation lists for {} vertices", self.rotation.len(), self.n));
        }
        let mut seen = vec![false; 2 * self.edges.len()];
        for (v, r) in self.rotation.iter().enumerate() {
            for &d in r {
                if d >= seen.len() {
                    return bad(format!("dart {d} at vertex {v} does not exist"));
                }
                if seen[d] {
                    return bad(format!("dart {d} appears twice"));
                }
                seen[d] = true;
                if self.dart_tail(d) != v {
                    return bad(format!("dart {d} listed at vertex {v} but belongs to {}", self.dart_tail(d)));
                }
            }
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return bad(format!("dart {d} is missing from the rotation"));
        }
        Ok(())
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Vertex at which dart `d` sits.
    pub fn dart_tail(&self, d: usize) -> usize {
        let (u, v) = self.edges[d / 2];
        if d % 2 == 0 {
            u
        } else {
            v
        }
    }

    /// Vertex at the other end of dart `d`.
    pub fn dart_head(&self, d: usize) -> usize {
        self.dart_tail(d ^ 1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(0, 0); 2 * self.edges.len()];
        for (v, r) in self.rotation.iter().enumerate() {
            for (i, &d) in r.iter().enumerate() {
                pos[d] = (v, i);
            }
        }
        pos
    }

    /// Counterclockwise successor of each dart around its vertex.
    pub fn next_ccw(&self) -> Vec<usize> {
        let pos = self.positions();
        (0..pos.len())
            .map(|d| {
                let (v, i) = pos[d];
                let r = &self.rotation[v];
                r[(i + 1) % r.len()]
            })
            .collect()
    }

    /// Clockwise predecessor, the inverse of `next_ccw`.
    pub fn prev_ccw(&self) -> Vec<usize> {
        let pos = self.positions();
        (0..pos.len())
            .map(|d| {
                let (v, i) = pos[d];
                let r = &self.rotation[v];
                r[(i + r.len() - 1) % r.len()]
            })
            .collect()
    }

    /// Faces as cyclic dart sequences under d ↦ next_ccw(twin(d)).
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let next = self.next_ccw();
        let mut seen = vec![false; next.len()];
        let mut faces = Vec::new();
        for start in 0..next.len() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = next[d ^ 1];
            }
            faces.push(face);
        }
        faces
    }

    /// Connected components, counting isolated vertices.
    pub fn n_components(&self) -> usize {
        let mut comp = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            comp.union(u, v);
        }
        (0..self.n).filter(|&v| comp.find(v) == v).count()
    }

    pub fn is_connected(&self) -> bool {
        self.n_components() <= 1
    }

    /// V − E + F on a connected graph; 2 exactly when the rotation is planar.
    pub fn euler_characteristic(&self) -> i64 {
        self.n as i64 - self.edges.len() as i64 + self.faces().len() as i64
    }

    pub fn is_plane(&self) -> bool {
        self.is_connected() && (self.edges.is_empty() || self.euler_characteristic() == 2)
    }

    /// A grid with the signature chosen per vertex degree, slots in rotation order.
    pub fn to_grid(&self, kappa: usize, mut sig: impl FnMut(usize) -> DenseSignature) -> SignatureGrid {
        let mut grid = SignatureGrid::new(kappa);
        let mut by_degree: HashMap<usize, usize> = HashMap::new();
        for v in 0..self.n {
            let deg = self.degree(v);
            let s = *by_degree.entry(deg).or_insert_with(|| grid.add_signature(sig(deg)));
            grid.add_vertex(s);
        }
        let pos = self.positions();
        for e in 0..self.edges.len() {
            grid.connect(pos[2 * e], pos[2 * e + 1]);
        }
        grid
    }

    /// Keeps the listed vertices and edges, renumbering both in order.
    fn restrict(&self, keep_v: &[bool], keep_e: &[bool]) -> PlaneGraph {
        let mut vmap = vec![usize::MAX; self.n];
        let mut n = 0;
        for v in 0..self.n {
            if keep_v[v] {
                vmap[v] = n;
                n += 1;
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if keep_e[e] {
                emap[e] = edges.len();
                edges.push((vmap[u], vmap[v]));
            }
        }
        let rotation = (0..self.n)
            .filter(|&v| keep_v[v])
            .map(|v| self.rotation[v].iter().filter(|&&d| keep_e[d / 2]).map(|&d| 2 * emap[d / 2] + d % 2).collect())
            .collect();
        PlaneGraph { n, edges, rotation }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut w = v;
        while self.0[w] != r {
            let nx = self.0[w];
            self.0[w] = r;
            w = nx;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Small plane graphs used in tests and examples.
pub mod fixtures {
    use super::PlaneGraph;

    /// Two vertices joined by two parallel edges.
    pub fn digon() -> PlaneGraph {
        PlaneGraph::new(2, vec![(0, 1), (0, 1)], vec![vec![0, 2], vec![3, 1]]).expect("valid")
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> PlaneGraph {
        PlaneGraph::new(2, vec![(0, 1); 3], vec![vec![0, 2, 4], vec![5, 3, 1]]).expect("valid")
    }

    /// The cycle Cₙ (n ≥ 3).
    pub fn cycle(n: usize) -> PlaneGraph {
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n as f64;
                (a.cos(), a.sin())
            })
            .collect();
        PlaneGraph::from_coordinates(&pts, (0..n).map(|i| (i, (i + 1) % n)).collect()).expect("valid")
    }

    /// K₄ drawn as a triangle with a central vertex.
    pub fn k4() -> PlaneGraph {
        let pts = [(0.0, 0.0), (0.0, 2.0), (-1.7, -1.0), (1.7, -1.0)];
        PlaneGraph::from_coordinates(&pts, vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).expect("valid")
    }

    /// K₃,₃ with its incidence-order rotation (not planar).
    pub fn k33() -> PlaneGraph {
        let edges = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        PlaneGraph::from_edges(6, edges).expect("valid")
    }

    /// A single edge.
    pub fn bridge() -> PlaneGraph {
        PlaneGraph::from_edges(2, vec![(0, 1)]).expect("valid")
    }

    /// One vertex with a self-loop.
    pub fn self_loop() -> PlaneGraph {
        PlaneGraph::from_edges(1, vec![(0, 0)]).expect("valid")
    }

    /// Two copies of K₄ with one edge subdivided, the subdivision vertices
    /// joined by a bridge: 3-regular with a bridge.
    pub fn bridged_cubic() -> PlaneGraph {
        let side = |o: usize| {
            // K₄ on o..o+4 with edge (o, o+1) subdivided by o+4.
            vec![(o, o + 4), (o + 4, o + 1), (o, o + 2), (o, o + 3), (o + 1, o + 2), (o + 1, o + 3), (o + 2, o + 3)]
        };
        let mut edges = side(0);
        edges.extend(side(5));
        edges.push((4, 9));
        PlaneGraph::from_edges(10, edges).expect("valid")
    }

    /// The triangular prism: two triangles joined by a perfect matching.
    pub fn prism() -> PlaneGraph {
        let pts = [(0.0, 2.0), (-1.7, -1.0), (1.7, -1.0), (0.0, 1.0), (-0.85, -0.5), (0.85, -0.5)];
        let edges = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)];
        PlaneGraph::from_coordinates(&pts, edges).expect("valid")
    }
}

/// Orientation of a medial graph: each arc runs from `tail` to `head`, given
/// as (medial vertex, slot); slots follow the counterclockwise rotation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedMedial {
    pub n: usize,
    pub arcs: Vec<[(usize, usize); 2]>,
    /// Arc at each slot of each medial vertex.
    pub slots: Vec<[usize; 4]>,
}

impl DirectedMedial {
    /// True when every vertex reads in, out, in, out from slot 0.
    pub fn alternates(&self) -> bool {
        (0..self.n).all(|m| {
            (0..4).all(|s| {
                let a = self.arcs[self.slots[m][s]];
                let want_in = s % 2 == 0;
                let is_in = a[1] == (m, s);
                let is_out = a[0] == (m, s);
                if want_in {
                    is_in
                } else {
                    is_out
                }
            })
        })
    }

    /// The underlying plane graph, arcs as edges tail → head.
    pub fn plane_graph(&self) -> PlaneGraph {
        let edges = self.arcs.iter().map(|a| (a[0].0, a[1].0)).collect();
        let rotation = (0..self.n)
            .map(|m| {
                (0..4)
                    .map(|s| {
                        let a = self.slots[m][s];
                        if self.arcs[a][0] == (m, s) {
                            2 * a
                        } else {
                            2 * a + 1
                        }
                    })
                    .collect()
            })
            .collect();
        PlaneGraph { n: self.n, edges, rotation }
    }

    /// A grid placing `sig` (arity 4) at every medial vertex, slot order kept.
    pub fn grid(&self, sig: &DenseSignature) -> SignatureGrid {
        let mut grid = SignatureGrid::new(sig.kappa);
        let s = grid.add_signature(sig.clone());
        for _ in 0..self.n {
            grid.add_vertex(s);
        }
        for a in &self.arcs {
            grid.connect(a[0], a[1]);
        }
        grid
    }
}

/// The medial graph with the orientation that keeps the faces containing
/// original vertices on the left of every arc.
pub fn medial(g: &PlaneGraph) -> Result<(PlaneGraph, DirectedMedial), GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if !g.is_plane() {
        return Err(GraphError::NotPlane(g.euler_characteristic()));
    }
    let next = g.next_ccw();
    let n = g.n_edges();
    let mut arcs = Vec::with_capacity(2 * n);
    let mut slots = vec![[usize::MAX; 4]; n];
    // Each corner (d, next(d)) at a vertex w yields an arc from m(d) to
    // m(next(d)); at m(d) it uses the slot after w, at m(next(d)) the slot
    // before w.
    for d in 0..2 * n {
        let d2 = next[d];
        let tail = (d / 2, if d % 2 == 0 { 1 } else { 3 });
        let head = (d2 / 2, if d2 % 2 == 0 { 2 } else { 0 });
        slots[tail.0][tail.1] = arcs.len();
        slots[head.0][head.1] = arcs.len();
        arcs.push([tail, head]);
    }
    let dm = DirectedMedial { n, arcs, slots };
    Ok((dm.plane_graph(), dm))
}

/// The medial grid with `sig` (a τ_color signature) at every vertex.
pub fn medial_grid(g: &PlaneGraph, sig: &SuccinctSignature) -> Result<SignatureGrid, GraphError> {
    let (_, dm) = medial(g)?;
    Ok(dm.grid(&sig.expand().map_err(HolantError::from)?))
}

/// ⟨2,1,0,1,0⟩ of type τ_color.
pub fn eulerian_signature(kappa: usize) -> SuccinctSignature {
    SuccinctSignature::from_ints(SuccinctType::TauColor, kappa, &[2, 1, 0, 1, 0]).expect("length five")
}

/// Σ 2^{m(c)} over κ-labelings of the arcs whose color classes are
/// Eulerian, m(c) counting monochromatic vertices.
pub fn eulerian_partition_sum(dm: &DirectedMedial, kappa: usize) -> Result<Scalar, GraphError> {
    let arcs = dm.arcs.len();
    let terms = (kappa as u128).checked_pow(arcs as u32).unwrap_or(u128::MAX);
    if terms > DEFAULT_ENUM_CAP {
        return Err(GraphError::CapExceeded { what: format!("{terms} labelings"), cap: DEFAULT_ENUM_CAP });
    }
    // Assign arcs in order; a vertex is checked once its last arc is set.
    let mut last = vec![0usize; dm.n];
    for (a, ends) in dm.arcs.iter().enumerate() {
        for &(m, _) in ends {
            last[m] = last[m].max(a);
        }
    }
    let mut done_at: Vec<Vec<usize>> = vec![Vec::new(); arcs];
    for (m, &a) in last.iter().enumerate() {
        done_at[a].push(m);
    }
    let mut color = vec![0usize; arcs];
    let mut total = BigInt::zero();
    eulerian_rec(dm, kappa, 0, &mut color, &done_at, &BigInt::one(), &mut total);
    Ok(Scalar::from_bigint(total))
}

fn eulerian_rec(
    dm: &DirectedMedial,
    kappa: usize,
    a: usize,
    color: &mut Vec<usize>,
    done_at: &[Vec<usize>],
    weight: &BigInt,
    total: &mut BigInt,
) {
    if a == color.len() {
        *total += weight;
        return;
    }
    'colors: for c in 0..kappa {
        color[a] = c;
        let mut w = weight.clone();
        for &m in &done_at[a] {
            let col = |s: usize| color[dm.slots[m][s]];
            let mut ins = [col(0), col(2)];
            let mut outs = [col(1), col(3)];
            ins.sort_unstable();
            outs.sort_unstable();
            if ins != outs {
                continue 'colors;
            }
            if ins[0] == ins[1] {
                w *= 2;
            }
        }
        eulerian_rec(dm, kappa, a + 1, color, done_at, &w, total);
    }
}

/// Relabels vertices by first appearance and sorts the edge list.
fn normalize(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut map: HashMap<usize, usize> = HashMap::new();
    let label = |v: usize, map: &mut HashMap<usize, usize>| {
        let k = map.len();
        *map.entry(v).or_insert(k)
    };
    let mut out: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (label(u, &mut map), label(v, &mut map));
            (a.min(b), a.max(b))
        })
        .collect();
    out.sort_unstable();
    out
}

fn connected_without(edges: &[(usize, usize)], skip: usize, s: usize, t: usize) -> bool {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if i != skip {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
    }
    let mut seen = std::collections::HashSet::from([s]);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            return true;
        }
        for &w in adj.get(&u).into_iter().flatten() {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    false
}

fn tutte_rec(edges: Vec<(usize, usize)>, memo: &mut HashMap<Vec<(usize, usize)>, BiPoly>) -> BiPoly {
    let key = normalize(&edges);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let loops = key.iter().filter(|(u, v)| u == v).count();
    let rest: Vec<(usize, usize)> = key.iter().copied().filter(|(u, v)| u != v).collect();
    let y_pow = BiPoly::new(vec![IntPoly::monomial(BigInt::one(), loops)]);
    let result = if rest.is_empty() {
        y_pow
    } else {
        let (u, v) = rest[0];
        let contracted: Vec<(usize, usize)> = rest[1..]
            .iter()
            .map(|&(a, b)| (if a == v { u } else { a }, if b == v { u } else { b }))
            .collect();
        let body = if connected_without(&rest, 0, u, v) {
            tutte_rec(rest[1..].to_vec(), memo).add(&tutte_rec(contracted, memo))
        } else {
            BiPoly::new(vec![IntPoly::zero(), IntPoly::one()]).mul(&tutte_rec(contracted, memo))
        };
        body.mul(&y_pow)
    };
    memo.insert(key, result.clone());
    result
}

/// T(G; x, y) as a polynomial, by deletion–contraction.
pub fn tutte_polynomial(g: &PlaneGraph) -> Result<BiPoly, GraphError> {
    if g.n_edges() > TUTTE_EDGE_CAP {
        return Err(GraphError::CapExceeded { what: format!("{} edges", g.n_edges()), cap: TUTTE_EDGE_CAP as u128 });
    }
    Ok(tutte_rec(g.edges.clone(), &mut HashMap::new()))
}

/// Evaluates a polynomial in x with coefficients in y.
pub fn eval_bipoly(p: &BiPoly, x: &Scalar, y: &Scalar) -> Scalar {
    let lift = |c: &BigInt| {
        let c = Scalar::from_bigint(c.clone());
        if y.is_exact() {
            c
        } else {
            c.to_float()
        }
    };
    let eval_y = |q: &IntPoly| q.coeffs().iter().rev().fold(y.zero_like(), |acc, c| &(&acc * y) + &lift(c));
    p.coeffs().iter().rev().fold(x.zero_like(), |acc, q| &(&acc * x) + &eval_y(q))
}

pub fn tutte(g: &PlaneGraph, x: &Scalar, y: &Scalar) -> Result<Scalar, GraphError> {
    Ok(eval_bipoly(&tutte_polynomial(g)?, x, y))
}

/// (−1)^{|V|−k} λ^k T(G; 1−λ, 0).
pub fn chromatic(g: &PlaneGraph, lambda: &Scalar) -> Result<Scalar, GraphError> {
    let k = g.n_components();
    let t = tutte(g, &(&lambda.one_like() - lambda), &lambda.zero_like())?;
    let lk = lambda.pow(k as i64).expect("nonnegative power");
    let v = &lk * &t;
    Ok(if (g.n - k) % 2 == 1 { -v } else { v })
}

/// The Holant instance with AD_{deg(v),κ} at every vertex.
pub fn edge_coloring_grid(g: &PlaneGraph, kappa: usize) -> Result<SignatureGrid, GraphError> {
    let mut err = None;
    let grid = g.to_grid(kappa, |deg| {
        DenseSignature::all_distinct(kappa, deg).unwrap_or_else(|e| {
            err = Some(e);
            DenseSignature { kappa, arity: deg, values: vec![] }
        })
    });
    match err {
        Some(e) => Err(HolantError::from(e).into()),
        None => Ok(grid),
    }
}

/// Two AD_{κ,κ} vertices joined by κ−2 parallel edges, inputs (w, x, y, z)
/// with w, z on the top vertex. Its τ_color signature is (κ−2)!·⟨0,1,1,0,0⟩.
pub fn arity_reduction_gate(kappa: usize) -> Result<SignatureGrid, GraphError> {
    let ad = DenseSignature::all_distinct(kappa, kappa).map_err(HolantError::from)?;
    let mut gate = SignatureGrid::new(kappa);
    let s = gate.add_signature(ad);
    let (top, bot) = (gate.add_vertex(s), gate.add_vertex(s));
    gate.dangle((top, 0));
    gate.dangle((bot, 0));
    gate.dangle((bot, 1));
    gate.dangle((top, 1));
    for i in 2..kappa {
        gate.connect((top, i), (bot, kappa + 1 - i));
    }
    Ok(gate)
}

/// Number of edge κ-colorings, as the Holant value of AD signatures.
pub fn count_edge_colorings(g: &PlaneGraph, kappa: usize) -> Result<Scalar, GraphError> {
    let mut g = g.clone();
    // Isolated vertices contribute a factor of 1.
    let keep_v: Vec<bool> = (0..g.n).map(|v| g.degree(v) > 0).collect();
    g = g.restrict(&keep_v, &vec![true; g.n_edges()]);
    if g.n_edges() == 0 {
        return Ok(Scalar::one());
    }
    Ok(edge_coloring_grid(&g, kappa)?.holant_value()?)
}

/// A 3-regular graph reduced by removing digons, with
/// colorings(G) = multiplier · colorings(graph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub graph: PlaneGraph,
    pub multiplier: u64,
}

impl Simplified {
    /// True when nothing is left to count.
    pub fn is_terminal(&self) -> bool {
        self.multiplier == 0 || self.graph.n_edges() == 0
    }
}

/// Removes self-loops, triple edges and digons from a 3-regular multigraph.
pub fn simplify_multigraph(g: &PlaneGraph) -> Result<Simplified, GraphError> {
    if (0..g.n).any(|v| g.degree(v) != 3) {
        return Err(GraphError::NotCubic);
    }
    let mut g = g.clone();
    let mut multiplier = 1u64;
    loop {
        if g.edges.iter().any(|(u, v)| u == v) {
            return Ok(Simplified { graph: PlaneGraph { n: 0, edges: vec![], rotation: vec![] }, multiplier: 0 });
        }
        let mut count: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (e, &(u, v)) in g.edges.iter().enumerate() {
            count.entry((u.min(v), u.max(v))).or_default().push(e);
        }
        let mut pairs: Vec<_> = count.into_iter().filter(|(_, es)| es.len() >= 2).collect();
        pairs.sort();
        let Some(((u, v), es)) = pairs.into_iter().next() else {
            return Ok(Simplified { graph: g, multiplier });
        };
        let mut keep_v = vec![true; g.n];
        let mut keep_e = vec![true; g.n_edges()];
        keep_v[u] = false;
        keep_v[v] = false;
        for &e in &es {
            keep_e[e] = false;
        }
        if es.len() == 3 {
            multiplier *= 6;
            g = g.restrict(&keep_v, &keep_e);
            continue;
        }
        // The third edges at u and v.
        let third = |w: usize| -> usize {
            g.rotation[w].iter().map(|d| d / 2).find(|e| !es.contains(e)).expect("degree three")
        };
        let (eu, ev) = (third(u), third(v));
        let far = |e: usize, w: usize| {
            let (a, b) = g.edges[e];
            if a == w {
                (b, 2 * e + 1)
            } else {
                (a, 2 * e)
            }
        };
        let ((u2, du2), (v2, dv2)) = (far(eu, u), far(ev, v));
        if u2 == v2 {
            // Both remaining edges at u2 would need the same color.
            return Ok(Simplified { graph: PlaneGraph { n: 0, edges: vec![], rotation: vec![] }, multiplier: 0 });
        }
        // Reuse edge eu for u2–v2: its dart at u2 stays, the dart of ev at v2 is replaced.
        let side_u2 = du2 % 2;
        let new_dart_v2 = 2 * eu + (1 - side_u2);
        if side_u2 == 0 {
            g.edges[eu] = (u2, v2);
        } else {
            g.edges[eu] = (v2, u2);
        }
        for d in g.rotation[v2].iter_mut() {
            if *d == dv2 {
                *d = new_dart_v2;
            }
        }
        // The dart of eu at u2 keeps its id only if its side did not change.
        debug_assert_eq!(g.dart_tail(du2), u2);
        keep_e[ev] = false;
        g = g.restrict(&keep_v, &keep_e);
        multiplier *= 2;
    }
}

/// Per-color counts of edges crossing the cut, for a proper coloring of a
/// κ-regular graph.
pub fn parity_profile(g: &PlaneGraph, kappa: usize, coloring: &[usize], cut: &[bool]) -> Result<Vec<usize>, GraphError> {
    if (0..g.n).any(|v| g.degree(v) != kappa) {
        return Err(GraphError::NotRegular(kappa));
    }
    if coloring.len() != g.n_edges() || cut.len() != g.n {
        return Err(GraphError::ImproperColoring("length mismatch".into()));
    }
    for v in 0..g.n {
        let mut cols: Vec<usize> = g.rotation[v].iter().map(|d| coloring[d / 2]).collect();
        if cols.iter().any(|&c| c >= kappa) {
            return Err(GraphError::ImproperColoring(format!("color out of range at vertex {v}")));
        }
        cols.sort_unstable();
        if cols.windows(2).any(|w| w[0] == w[1]) {
            return Err(GraphError::ImproperColoring(format!("repeated color at vertex {v}")));
        }
    }
    let mut counts = vec![0; kappa];
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        if cut[u] != cut[v] {
            counts[coloring[e]] += 1;
        }
    }
    Ok(counts)
}

/// True when all counts share one parity.
pub fn parity_holds(counts: &[usize]) -> bool {
    counts.windows(2).all(|w| w[0] % 2 == w[1] % 2)
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn bruteforce_vertex_colorings(g: &PlaneGraph, lambda: usize) -> u64 {
        let mut count = 0;
        let total = lambda.pow(g.n as u32);
        for mut code in 0..total {
            let mut col = vec![0; g.n];
            for c in col.iter_mut() {
                *c = code % lambda;
                code /= lambda;
            }
            if g.edges.iter().all(|&(u, v)| col[u] != col[v]) {
                count += 1;
            }
        }
        count
    }

    fn bruteforce_edge_colorings(g: &PlaneGraph, kappa: usize) -> Vec<Vec<usize>> {
        let m = g.n_edges();
        let mut out = Vec::new();
        for mut code in 0..kappa.pow(m as u32) {
            let mut col = vec![0; m];
            for c in col.iter_mut() {
                *c = code % kappa;
                code /= kappa;
            }
            let proper = (0..g.n).all(|v| {
                let mut cs: Vec<usize> = g.rotation[v].iter().map(|d| col[d / 2]).collect();
                let len = cs.len();
                cs.sort_unstable();
                cs.dedup();
                cs.len() == len && g.edges.iter().all(|(a, b)| a != b)
            });
            if proper {
                out.push(col);
            }
        }
        out
    }

    fn spanning_trees(g: &PlaneGraph) -> BigInt {
        let n = g.n;
        let mut lap = vec![vec![BigInt::zero(); n]; n];
        for &(u, v) in &g.edges {
            if u != v {
                lap[u][u] += 1;
                lap[v][v] += 1;
                lap[u][v] -= 1;
                lap[v][u] -= 1;
            }
        }
        let minor: Vec<Vec<BigInt>> = lap[1..].iter().map(|r| r[1..].to_vec()).collect();
        crate::exactnum::poly::bareiss_det(minor)
    }

    fn int(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn fixtures_are_plane() {
        for g in [digon(), theta(), cycle(3), cycle(5), k4(), bridge(), self_loop(), prism()] {
            assert!(g.is_plane(), "{g:?}");
        }
        assert!(!k33().is_plane());
        assert_eq!(k4().faces().len(), 4);
    }

    #[test]
    fn rotation_errors() {
        assert!(matches!(PlaneGraph::new(2, vec![(0, 1)], vec![vec![1], vec![0]]), Err(GraphError::InvalidRotation(_))));
        assert!(matches!(PlaneGraph::new(2, vec![(0, 1)], vec![vec![0], vec![]]), Err(GraphError::InvalidRotation(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = k4();
        assert_eq!(PlaneGraph::from_json(&g.to_json()).unwrap(), g);
        let h = PlaneGraph::from_json(r#"{"n":3,"edges":[[0,1],[1,2],[2,0]]}"#).unwrap();
        assert!(h.is_plane());
    }

    #[test]
    fn tutte_base_cases() {
        assert_eq!(tutte_polynomial(&bridge()).unwrap(), BiPoly::from_terms(&[(1, 1, 0)]));
        assert_eq!(tutte_polynomial(&self_loop()).unwrap(), BiPoly::from_terms(&[(1, 0, 1)]));
        assert_eq!(tutte_polynomial(&digon()).unwrap(), BiPoly::from_terms(&[(1, 1, 0), (1, 0, 1)]));
    }

    #[test]
    fn tutte_of_triangle() {
        let want = BiPoly::from_terms(&[(1, 2, 0), (1, 1, 0), (1, 0, 1)]);
        assert_eq!(tutte_polynomial(&cycle(3)).unwrap(), want);
    }

    #[test]
    fn tutte_counts_spanning_trees() {
        for g in [k4(), prism(), cycle(5), k33()] {
            let t = tutte(&g, &int(1), &int(1)).unwrap();
            assert_eq!(t, Scalar::from_bigint(spanning_trees(&g)));
        }
        assert_eq!(tutte(&k4(), &int(1), &int(1)).unwrap(), int(16));
    }

    #[test]
    fn tutte_counts_subgraphs() {
        // T(G; 2, 2) = 2^{|E|} for connected G.
        for g in [k4(), prism(), theta()] {
            assert_eq!(tutte(&g, &int(2), &int(2)).unwrap(), int(1 << g.n_edges()));
        }
    }

    #[test]
    fn tutte_is_multiplicative_over_blocks() {
        // Two triangles sharing a vertex.
        let g = PlaneGraph::from_edges(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        let c3 = tutte_polynomial(&cycle(3)).unwrap();
        assert_eq!(tutte_polynomial(&g).unwrap(), c3.mul(&c3));
    }

    #[test]
    fn tutte_cap() {
        let g = PlaneGraph::from_edges(2, vec![(0, 1); 17]).unwrap();
        assert!(matches!(tutte_polynomial(&g), Err(GraphError::CapExceeded { .. })));
    }

    #[test]
    fn chromatic_matches_brute_force() {
        assert_eq!(chromatic(&cycle(3), &int(3)).unwrap(), int(6));
        assert_eq!(chromatic(&k4(), &int(3)).unwrap(), int(0));
        let empty = PlaneGraph::from_edges(4, vec![]).unwrap();
        assert_eq!(chromatic(&empty, &int(3)).unwrap(), int(81));
        for g in [cycle(3), cycle(4), cycle(5), k4(), prism(), k33(), digon()] {
            for l in 2..=4 {
                let want = bruteforce_vertex_colorings(&g, l) as i64;
                assert_eq!(chromatic(&g, &int(l as i64)).unwrap(), int(want), "{g:?} λ={l}");
            }
        }
    }

    #[test]
    fn medial_shapes() {
        let (gm, dm) = medial(&cycle(3)).unwrap();
        assert_eq!((gm.n, gm.n_edges()), (3, 6));
        assert!(dm.alternates());
        assert!(gm.is_plane());
        let (gm, dm) = medial(&digon()).unwrap();
        assert_eq!((gm.n, gm.n_edges()), (2, 4));
        assert!(dm.alternates());
        for g in [k4(), theta(), prism(), bridge(), self_loop()] {
            let (gm, dm) = medial(&g).unwrap();
            assert_eq!(gm.n, g.n_edges());
            assert!((0..gm.n).all(|v| gm.degree(v) == 4));
            assert!(dm.alternates());
            assert!(gm.is_plane());
            // Faces of the medial graph match vertices plus faces of G.
            assert_eq!(gm.faces().len(), g.n + g.faces().len());
        }
    }

    #[test]
    fn medial_rejects_bad_input() {
        let two = PlaneGraph::from_edges(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(medial(&two), Err(GraphError::Disconnected));
        assert!(matches!(medial(&k33()), Err(GraphError::NotPlane(_))));
    }

    #[test]
    fn triple_identity() {
        for (g, kappas) in [(cycle(3), vec![3, 4]), (digon(), vec![3, 4]), (k4(), vec![3]), (theta(), vec![3])] {
            for k in kappas {
                let kk = int(k as i64);
                let lhs = &kk * &tutte(&g, &int(k as i64 + 1), &int(k as i64 + 1)).unwrap();
                let (_, dm) = medial(&g).unwrap();
                let mid = eulerian_partition_sum(&dm, k).unwrap();
                let rhs = medial_grid(&g, &eulerian_signature(k)).unwrap().holant_value().unwrap();
                assert_eq!(lhs, mid, "{g:?} κ={k}");
                assert_eq!(mid, rhs, "{g:?} κ={k}");
            }
        }
        let (_, dm) = medial(&cycle(3)).unwrap();
        assert_eq!(eulerian_partition_sum(&dm, 3).unwrap(), int(72));
        let (_, dm) = medial(&digon()).unwrap();
        assert_eq!(eulerian_partition_sum(&dm, 3).unwrap(), int(24));
    }

    #[test]
    fn edge_colorings() {
        assert_eq!(count_edge_colorings(&k4(), 3).unwrap(), int(6));
        assert_eq!(count_edge_colorings(&theta(), 3).unwrap(), int(6));
        assert_eq!(count_edge_colorings(&k33(), 3).unwrap(), int(12));
        assert_eq!(count_edge_colorings(&bridged_cubic(), 3).unwrap(), int(0));
        for g in [k4(), theta(), prism(), cycle(5), digon()] {
            for k in 2..=4 {
                let want = bruteforce_edge_colorings(&g, k).len() as i64;
                assert_eq!(count_edge_colorings(&g, k).unwrap(), int(want));
            }
        }
        // Fewer colors than the maximum degree.
        assert_eq!(count_edge_colorings(&k4(), 2).unwrap(), int(0));
    }

    #[test]
    fn arity_reduction_gadget() {
        for k in [3usize, 4, 5] {
            let f = arity_reduction_gate(k).unwrap().gate_succinct(SuccinctType::TauColor).unwrap();
            let fact: i64 = (1..=(k as i64 - 2)).product();
            let want = SuccinctSignature::from_ints(SuccinctType::TauColor, k, &[0, 1, 1, 0, 0]).unwrap().scale(&int(fact));
            assert_eq!(f, want);
        }
    }

    #[test]
    fn simplification() {
        let s = simplify_multigraph(&theta()).unwrap();
        assert_eq!(s.multiplier, 6);
        assert!(s.is_terminal());
        let s = simplify_multigraph(&k4()).unwrap();
        assert_eq!((s.multiplier, s.graph.clone()), (1, k4()));
        // K₄ with edge (2,3) doubled after subdividing: replace edge (1,2) by a digon path.
        let g = PlaneGraph::from_edges(6, vec![(0, 1), (0, 2), (0, 3), (1, 4), (4, 5), (4, 5), (5, 2), (2, 3), (3, 1)]).unwrap();
        let s = simplify_multigraph(&g).unwrap();
        assert_eq!(s.multiplier, 2);
        assert_eq!(s.graph.n, 4);
        let before = count_edge_colorings(&g, 3).unwrap();
        let after = count_edge_colorings(&s.graph, 3).unwrap();
        assert_eq!(before, &int(s.multiplier as i64) * &after);
        assert!(matches!(simplify_multigraph(&cycle(3)), Err(GraphError::NotCubic)));
        let looped = PlaneGraph::from_edges(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(simplify_multigraph(&looped).unwrap().multiplier, 0);
    }

    #[test]
    fn parity_profiles() {
        let cols = bruteforce_edge_colorings(&k4(), 3);
        assert_eq!(cols.len(), 6);
        for c in &cols {
            let single = [true, false, false, false];
            assert_eq!(parity_profile(&k4(), 3, c, &single).unwrap(), vec![1, 1, 1]);
            let pair = [true, true, false, false];
            assert!(parity_holds(&parity_profile(&k4(), 3, c, &pair).unwrap()));
        }
        for c in bruteforce_edge_colorings(&k33(), 3) {
            let side = [true, true, true, false, false, false];
            assert_eq!(parity_profile(&k33(), 3, &c, &side).unwrap(), vec![3, 3, 3]);
        }
        let bad = vec![0; 6];
        assert!(matches!(parity_profile(&k4(), 3, &bad, &[true; 4]), Err(GraphError::ImproperColoring(_))));
        assert!(matches!(parity_profile(&cycle(3), 3, &[0, 1, 2], &[true; 3]), Err(GraphError::NotRegular(3))));
    }
}
