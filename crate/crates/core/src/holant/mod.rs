//! Signature grids, F-gates with rotation systems, and brute-force Holant
//! evaluation.

mod eval;
pub mod json;

use std::fmt;

use thiserror::Error;

use crate::exactnum::Scalar;
use crate::signatures::{compress, tuples, DenseSignature, SigError, SuccinctSignature, SuccinctType};

use eval::{evaluate, Plan};

/// Default bound on the number of enumerated terms (2²⁸).
pub const DEFAULT_ENUM_CAP: u128 = 1 << 28;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum HolantError {
    #[error("enumeration of {terms} terms exceeds the cap of {cap}")]
    EnumerationCapExceeded { terms: u128, cap: u128 },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid has dangling edges; use gate_signature")]
    HasDangling,
    #[error(transparent)]
    Signature(#[from] SigError),
}

/// One end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Slot { vertex: usize, slot: usize },
    Dangling(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridVertex {
    pub sig: usize,
    /// Incident edge ids in counterclockwise order; slot `i` is input `i`.
    pub edges: Vec<usize>,
}

/// A signature grid; with dangling edges it is an F-gate whose inputs are
/// the dangling edges in declared order.
#[derive(Clone, Debug, PartialEq)]
pub struct SignatureGrid {
    pub kappa: usize,
    pub signatures: Vec<DenseSignature>,
    pub vertices: Vec<GridVertex>,
    pub edges: Vec<[End; 2]>,
    /// Edge id for each dangling index.
    pub dangling: Vec<usize>,
}

pub type Gate = SignatureGrid;

const UNSET: usize = usize::MAX;

impl SignatureGrid {
    pub fn new(kappa: usize) -> Self {
        SignatureGrid { kappa, signatures: vec![], vertices: vec![], edges: vec![], dangling: vec![] }
    }

    pub fn add_signature(&mut self, d: DenseSignature) -> usize {
        assert_eq!(d.kappa, self.kappa, "signature domain differs from grid domain");
        self.signatures.push(d);
        self.signatures.len() - 1
    }

    /// Adds a vertex with all slots unconnected.
    pub fn add_vertex(&mut self, sig: usize) -> usize {
        let arity = self.signatures[sig].arity;
        self.vertices.push(GridVertex { sig, edges: vec![UNSET; arity] });
        self.vertices.len() - 1
    }

    /// Adds a vertex carrying a fresh copy of `d`.
    pub fn add_vertex_with(&mut self, d: DenseSignature) -> usize {
        let s = self.add_signature(d);
        self.add_vertex(s)
    }

    /// Joins two vertex slots with an internal edge.
    pub fn connect(&mut self, a: (usize, usize), b: (usize, usize)) -> usize {
        let e = self.edges.len();
        self.edges.push([End::Slot { vertex: a.0, slot: a.1 }, End::Slot { vertex: b.0, slot: b.1 }]);
        self.set_slot(a, e);
        self.set_slot(b, e);
        e
    }

    /// Attaches a dangling edge to a slot; returns its dangling index.
    pub fn dangle(&mut self, a: (usize, usize)) -> usize {
        let e = self.edges.len();
        let d = self.dangling.len();
        self.edges.push([End::Slot { vertex: a.0, slot: a.1 }, End::Dangling(d)]);
        self.dangling.push(e);
        self.set_slot(a, e);
        d
    }

    /// An edge with both ends dangling; returns the two dangling indices.
    pub fn bare_edge(&mut self) -> (usize, usize) {
        let e = self.edges.len();
        let d = self.dangling.len();
        self.edges.push([End::Dangling(d), End::Dangling(d + 1)]);
        self.dangling.push(e);
        self.dangling.push(e);
        (d, d + 1)
    }

    fn set_slot(&mut self, (v, s): (usize, usize), e: usize) {
        let slot = &mut self.vertices[v].edges[s];
        assert_eq!(*slot, UNSET, "slot {s} of vertex {v} already used");
        *slot = e;
    }

    pub fn n_dangling(&self) -> usize {
        self.dangling.len()
    }

    pub fn is_closed(&self) -> bool {
        self.dangling.is_empty()
    }

    /// Edges with no dangling end.
    pub fn internal_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].iter().all(|end| matches!(end, End::Slot { .. })))
            .collect()
    }

    pub fn validate(&self) -> Result<(), HolantError> {
        let bad = |m: String| Err(HolantError::InvalidGrid(m));
        for (i, s) in self.signatures.iter().enumerate() {
            if s.kappa != self.kappa {
                return bad(format!("signature {i} has domain {} but grid has {}", s.kappa, self.kappa));
            }
        }
        let mut uses = vec![0usize; self.edges.len()];
        for (v, vx) in self.vertices.iter().enumerate() {
            let sig = self.signatures.get(vx.sig).ok_or_else(|| HolantError::InvalidGrid(format!("vertex {v}: no signature {}", vx.sig)))?;
            if sig.arity != vx.edges.len() {
                return Err(HolantError::ArityMismatch { expected: sig.arity, got: vx.edges.len() });
            }
            for (s, &e) in vx.edges.iter().enumerate() {
                if e == UNSET || e >= self.edges.len() {
                    return bad(format!("vertex {v} slot {s} is not connected"));
                }
                if !self.edges[e].contains(&End::Slot { vertex: v, slot: s }) {
                    return bad(format!("edge {e} does not list vertex {v} slot {s}"));
                }
                uses[e] += 1;
            }
        }
        for (e, ends) in self.edges.iter().enumerate() {
            let slots = ends.iter().filter(|x| matches!(x, End::Slot { .. })).count();
            if uses[e] != slots {
                return bad(format!("edge {e} endpoints disagree with rotation lists"));
            }
            for end in ends {
                if let End::Dangling(d) = end {
                    if self.dangling.get(*d) != Some(&e) {
                        return bad(format!("dangling index {d} does not point at edge {e}"));
                    }
                }
            }
        }
        Ok(())
    }

    fn plan(&self, free: Vec<usize>) -> Plan {
        Plan::new(
            self.kappa,
            self.edges.len(),
            free,
            self.vertices.iter().map(|v| v.edges.clone()).collect(),
            self.vertices.iter().map(|v| v.sig).collect(),
        )
    }

    fn check_cap(&self, exponent: usize, cap: u128) -> Result<(), HolantError> {
        let terms = (self.kappa as u128).checked_pow(exponent as u32).unwrap_or(u128::MAX);
        if terms > cap {
            return Err(HolantError::EnumerationCapExceeded { terms, cap });
        }
        Ok(())
    }

    fn tables(&self) -> Vec<&[Scalar]> {
        self.signatures.iter().map(|s| s.values.as_slice()).collect()
    }

    /// Σ over edge labelings of Π_v f_v.
    pub fn holant_value(&self) -> Result<Scalar, HolantError> {
        self.holant_value_capped(DEFAULT_ENUM_CAP)
    }

    pub fn holant_value_capped(&self, cap: u128) -> Result<Scalar, HolantError> {
        if !self.is_closed() {
            return Err(HolantError::HasDangling);
        }
        self.validate()?;
        self.check_cap(self.edges.len(), cap)?;
        let plan = self.plan((0..self.edges.len()).collect());
        let job = vec![0; self.edges.len()];
        Ok(evaluate(&plan, &self.tables(), &[job]).pop().expect("one job"))
    }

    /// The dense signature Γ over the dangling edges.
    pub fn gate_signature(&self) -> Result<DenseSignature, HolantError> {
        self.gate_signature_capped(DEFAULT_ENUM_CAP)
    }

    pub fn gate_signature_capped(&self, cap: u128) -> Result<DenseSignature, HolantError> {
        let all: Vec<Vec<usize>> = tuples(self.kappa, self.n_dangling()).collect();
        let values = self.gate_values_capped(&all, cap)?;
        Ok(DenseSignature::new(self.kappa, self.n_dangling(), values)?)
    }

    /// Γ compressed into a succinct type.
    pub fn gate_succinct(&self, ty: SuccinctType) -> Result<SuccinctSignature, HolantError> {
        Ok(compress(&self.gate_signature()?, ty)?)
    }

    /// Γ evaluated on selected dangling labelings only.
    pub fn gate_values(&self, inputs: &[Vec<usize>]) -> Result<Vec<Scalar>, HolantError> {
        self.gate_values_capped(inputs, DEFAULT_ENUM_CAP)
    }

    pub fn gate_values_capped(&self, inputs: &[Vec<usize>], cap: u128) -> Result<Vec<Scalar>, HolantError> {
        self.validate()?;
        let internal = self.internal_edges();
        self.check_cap(internal.len() + self.n_dangling(), cap)?;
        let plan = self.plan(internal);
        let mut jobs = Vec::new();
        let mut consistent = Vec::new();
        for y in inputs {
            if y.len() != self.n_dangling() {
                return Err(HolantError::ArityMismatch { expected: self.n_dangling(), got: y.len() });
            }
            let mut lab = vec![usize::MAX; self.edges.len()];
            let mut ok = true;
            for (d, &e) in self.dangling.iter().enumerate() {
                if y[d] >= self.kappa {
                    return Err(SigError::OutOfDomain { value: y[d], kappa: self.kappa }.into());
                }
                if lab[e] != usize::MAX && lab[e] != y[d] {
                    ok = false;
                }
                lab[e] = y[d];
            }
            for l in lab.iter_mut() {
                if *l == usize::MAX {
                    *l = 0;
                }
            }
            consistent.push(ok);
            if ok {
                jobs.push(lab);
            }
        }
        let mut vals = evaluate(&plan, &self.tables(), &jobs).into_iter();
        let zero = self.signatures.iter().flat_map(|s| s.values.first()).next().map_or_else(Scalar::zero, Scalar::zero_like);
        Ok(consistent.into_iter().map(|ok| if ok { vals.next().expect("job result") } else { zero.clone() }).collect())
    }

    /// Γ on one representative per listed part of `ty`; parts empty at this κ give 0.
    pub fn gate_succinct_unchecked(&self, ty: SuccinctType) -> Result<SuccinctSignature, HolantError> {
        if ty.arity() != self.n_dangling() {
            return Err(HolantError::ArityMismatch { expected: ty.arity(), got: self.n_dangling() });
        }
        let reps = ty.representatives(self.kappa);
        let inputs: Vec<Vec<usize>> = reps.iter().flatten().cloned().collect();
        let mut vals = self.gate_values(&inputs)?.into_iter();
        let entries = reps.iter().map(|r| if r.is_some() { vals.next().expect("value") } else { Scalar::zero() }).collect();
        Ok(SuccinctSignature::new(ty, self.kappa, entries)?)
    }

    /// Disjoint union; the other grid's dangling indices follow this grid's.
    pub fn disjoint_union(&self, o: &SignatureGrid) -> SignatureGrid {
        let mut g = self.clone();
        let (s0, v0, e0, d0) = (g.signatures.len(), g.vertices.len(), g.edges.len(), g.dangling.len());
        g.signatures.extend(o.signatures.iter().cloned());
        g.vertices.extend(o.vertices.iter().map(|v| GridVertex { sig: v.sig + s0, edges: v.edges.iter().map(|e| e + e0).collect() }));
        g.edges.extend(o.edges.iter().map(|ends| {
            ends.map(|end| match end {
                End::Slot { vertex, slot } => End::Slot { vertex: vertex + v0, slot },
                End::Dangling(d) => End::Dangling(d + d0),
            })
        }));
        g.dangling.extend(o.dangling.iter().map(|e| e + e0));
        g
    }

    /// Multiplies the signature at every vertex using `sig` by `c`.
    pub fn scale_signature(&mut self, sig: usize, c: &Scalar) {
        self.signatures[sig] = self.signatures[sig].scale(c);
    }

    /// Puts a vertex with signature `mid` (arity 2) in the middle of every internal edge.
    pub fn stretch(&self, mid: &DenseSignature) -> SignatureGrid {
        let mut g = SignatureGrid::new(self.kappa);
        g.signatures = self.signatures.clone();
        let ms = g.add_signature(mid.clone());
        g.vertices = self.vertices.iter().map(|v| GridVertex { sig: v.sig, edges: vec![UNSET; v.edges.len()] }).collect();
        let mut dang: Vec<Option<(usize, usize)>> = vec![None; self.n_dangling()];
        for ends in &self.edges {
            match *ends {
                [End::Slot { vertex: a, slot: s }, End::Slot { vertex: b, slot: t }] => {
                    let m = g.add_vertex(ms);
                    g.connect((a, s), (m, 0));
                    g.connect((m, 1), (b, t));
                }
                [End::Slot { vertex, slot }, End::Dangling(d)] | [End::Dangling(d), End::Slot { vertex, slot }] => {
                    dang[d] = Some((vertex, slot));
                }
                [End::Dangling(_), End::Dangling(_)] => {}
            }
        }
        for (d, &e) in self.dangling.iter().enumerate() {
            match dang[d] {
                Some(a) => {
                    g.dangle(a);
                }
                None => {
                    // A bare edge keeps its two dangling ends together.
                    if let [End::Dangling(x), End::Dangling(_)] = self.edges[e] {
                        if x == d {
                            g.bare_edge();
                        }
                    }
                }
            }
        }
        g
    }
}

/// Replaces each vertex in `targets` by a copy of gate `f`: dangling edge
/// `i` of `f` takes over the edge at slot `i` of the replaced vertex.
pub fn substitute_gate(grid: &SignatureGrid, targets: &[usize], f: &Gate) -> Result<SignatureGrid, HolantError> {
    grid.validate()?;
    f.validate()?;
    if f.kappa != grid.kappa {
        return Err(SigError::DomainMismatch(grid.kappa, f.kappa).into());
    }
    let mut replaced = vec![None; grid.vertices.len()];
    for (k, &v) in targets.iter().enumerate() {
        let arity = grid.vertices.get(v).ok_or_else(|| HolantError::InvalidGrid(format!("no vertex {v}")))?.edges.len();
        if arity != f.n_dangling() {
            return Err(HolantError::ArityMismatch { expected: arity, got: f.n_dangling() });
        }
        replaced[v] = Some(k);
    }

    // Pieces are the original edges followed by the edges of each copy.
    #[derive(Clone, Copy, PartialEq)]
    enum PEnd {
        Real(End),
        Glue(usize, usize),
    }
    let mut g = SignatureGrid::new(grid.kappa);
    let mut new_vertex = vec![UNSET; grid.vertices.len()];
    for (v, vx) in grid.vertices.iter().enumerate() {
        if replaced[v].is_none() {
            let s = g.add_signature(grid.signatures[vx.sig].clone());
            new_vertex[v] = g.add_vertex(s);
        }
    }
    let mut copy_vertex = vec![Vec::new(); targets.len()];
    for cv in copy_vertex.iter_mut() {
        for vx in &f.vertices {
            let s = g.add_signature(f.signatures[vx.sig].clone());
            cv.push(g.add_vertex(s));
        }
    }
    let mut pieces: Vec<[PEnd; 2]> = Vec::new();
    // glue[(piece, side)] -> (piece, side)
    let mut glue_key: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for ends in &grid.edges {
        pieces.push(ends.map(|end| match end {
            End::Slot { vertex, slot } => match replaced[vertex] {
                Some(k) => PEnd::Glue(k, slot),
                None => PEnd::Real(End::Slot { vertex: new_vertex[vertex], slot }),
            },
            d => PEnd::Real(d),
        }));
    }
    for (k, cv) in copy_vertex.iter().enumerate() {
        for ends in &f.edges {
            pieces.push(ends.map(|end| match end {
                End::Slot { vertex, slot } => PEnd::Real(End::Slot { vertex: cv[vertex], slot }),
                End::Dangling(d) => PEnd::Glue(k, d),
            }));
        }
    }
    // Each glue point (k, i) joins one original piece end and one copy piece end.
    let mut sides: std::collections::HashMap<(usize, usize), Vec<(usize, usize)>> = Default::default();
    for (p, ends) in pieces.iter().enumerate() {
        for (side, end) in ends.iter().enumerate() {
            if let PEnd::Glue(k, i) = *end {
                sides.entry((k, i)).or_default().push((p, side));
            }
        }
    }
    for (_, v) in sides {
        if v.len() != 2 {
            return Err(HolantError::InvalidGrid("unmatched glue point".into()));
        }
        glue_key.push((v[0], v[1]));
    }
    let partner: std::collections::HashMap<(usize, usize), (usize, usize)> =
        glue_key.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    let mut visited = vec![false; pieces.len()];
    let mut joined: Vec<(End, End)> = Vec::new();
    let walk = |start: (usize, usize), visited: &mut Vec<bool>| -> End {
        let (mut p, mut side) = start;
        loop {
            visited[p] = true;
            let other = 1 - side;
            match pieces[p][other] {
                PEnd::Real(end) => return end,
                PEnd::Glue(..) => {
                    let (q, s) = partner[&(p, other)];
                    p = q;
                    side = s;
                }
            }
        }
    };
    for p in 0..pieces.len() {
        if visited[p] {
            continue;
        }
        for side in 0..2 {
            if let PEnd::Real(a) = pieces[p][side] {
                let b = walk((p, side), &mut visited);
                joined.push((a, b));
                break;
            }
        }
    }
    let mut loops = 0;
    for p in 0..pieces.len() {
        if !visited[p] {
            let (mut q, mut side) = (p, 0);
            while !visited[q] {
                visited[q] = true;
                let (r, s) = partner[&(q, 1 - side)];
                q = r;
                side = s;
            }
            loops += 1;
        }
    }
    // Rebuild edges in a deterministic order, keeping outer dangling indices.
    let mut dangling_slot: Vec<Option<End>> = vec![None; grid.n_dangling()];
    let mut bare: Vec<(usize, usize)> = Vec::new();
    for (a, b) in joined {
        match (a, b) {
            (End::Slot { vertex: u, slot: s }, End::Slot { vertex: w, slot: t }) => {
                g.connect((u, s), (w, t));
            }
            (End::Slot { .. }, End::Dangling(d)) => dangling_slot[d] = Some(a),
            (End::Dangling(d), End::Slot { .. }) => dangling_slot[d] = Some(b),
            (End::Dangling(d1), End::Dangling(d2)) => bare.push((d1, d2)),
        }
    }
    let mut edges_by_d: Vec<Option<usize>> = vec![None; grid.n_dangling()];
    for (d1, d2) in &bare {
        let e = g.edges.len();
        g.edges.push([End::Dangling(*d1), End::Dangling(*d2)]);
        edges_by_d[*d1] = Some(e);
        edges_by_d[*d2] = Some(e);
    }
    for (d, slot) in dangling_slot.iter().enumerate() {
        if let Some(End::Slot { vertex, slot }) = slot {
            let e = g.edges.len();
            g.edges.push([End::Slot { vertex: *vertex, slot: *slot }, End::Dangling(d)]);
            g.vertices[*vertex].edges[*slot] = e;
            edges_by_d[d] = Some(e);
        }
    }
    g.dangling = edges_by_d.into_iter().map(|e| e.expect("every dangling index resolved")).collect();
    if loops > 0 {
        let eq = DenseSignature::equality(grid.kappa, 2)?;
        let s = g.add_signature(eq);
        for _ in 0..loops {
            let v = g.add_vertex(s);
            g.connect((v, 0), (v, 1));
        }
    }
    g.validate()?;
    Ok(g)
}

impl fmt::Display for SignatureGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "grid(κ={}, {} vertices, {} edges, {} dangling)",
            self.kappa,
            self.vertices.len(),
            self.edges.len(),
            self.dangling.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signatures::{SuccinctSignature, SuccinctType};

    fn eq2(k: usize) -> DenseSignature {
        DenseSignature::equality(k, 2).unwrap()
    }

    #[test]
    fn digon_of_equalities() {
        let mut g = SignatureGrid::new(3);
        let s = g.add_signature(eq2(3));
        let a = g.add_vertex(s);
        let b = g.add_vertex(s);
        g.connect((a, 0), (b, 0));
        g.connect((a, 1), (b, 1));
        assert_eq!(g.holant_value().unwrap(), Scalar::int(3));
    }

    #[test]
    fn k4_edge_colorings() {
        let mut g = SignatureGrid::new(3);
        let s = g.add_signature(DenseSignature::all_distinct(3, 3).unwrap());
        let v: Vec<usize> = (0..4).map(|_| g.add_vertex(s)).collect();
        let mut next = [0usize; 4];
        for i in 0..4 {
            for j in i + 1..4 {
                g.connect((v[i], next[i]), (v[j], next[j]));
                next[i] += 1;
                next[j] += 1;
            }
        }
        assert_eq!(g.holant_value().unwrap(), Scalar::int(6));
    }

    #[test]
    fn triangle_all_ones() {
        let mut g = SignatureGrid::new(3);
        let s = g.add_signature(DenseSignature::from_fn(3, 2, |_| Scalar::one()).unwrap());
        let v: Vec<usize> = (0..3).map(|_| g.add_vertex(s)).collect();
        for i in 0..3 {
            g.connect((v[i], 0), (v[(i + 1) % 3], 1));
        }
        assert_eq!(g.holant_value().unwrap(), Scalar::int(27));
    }

    #[test]
    fn bare_edge_is_equality() {
        let mut g = SignatureGrid::new(4);
        g.bare_edge();
        assert_eq!(g.gate_signature().unwrap(), eq2(4));
    }

    #[test]
    fn self_loop_on_ternary() {
        let k = 4;
        let t = SuccinctSignature::new(
            SuccinctType::Tau3,
            k,
            vec![Scalar::int(5), Scalar::ratio(1, 3), Scalar::gaussian(2, -1)],
        )
        .unwrap();
        let mut g = SignatureGrid::new(k);
        let v = g.add_vertex_with(t.expand().unwrap());
        g.connect((v, 1), (v, 2));
        g.dangle((v, 0));
        let u = g.gate_succinct(SuccinctType::Tau1).unwrap();
        assert_eq!(u.entries[0], Scalar::int(5) + Scalar::ratio(1, 3) * Scalar::int(3));
    }

    #[test]
    fn float_tables() {
        let mut g = SignatureGrid::new(3);
        let s = g.add_signature(DenseSignature::from_fn(3, 2, |t| Scalar::float((t[0] == t[1]) as i64 as f64 * 0.5, 0.0)).unwrap());
        let a = g.add_vertex(s);
        let b = g.add_vertex(s);
        g.connect((a, 0), (b, 0));
        g.connect((a, 1), (b, 1));
        assert!(g.holant_value().unwrap().approx_eq(&Scalar::float(0.75, 0.0), 1e-12));
    }

    #[test]
    fn cap_is_enforced() {
        let mut g = SignatureGrid::new(3);
        let s = g.add_signature(eq2(3));
        let a = g.add_vertex(s);
        g.connect((a, 0), (a, 1));
        assert!(matches!(g.holant_value_capped(2), Err(HolantError::EnumerationCapExceeded { .. })));
    }

    #[test]
    fn substitution_of_single_vertex_gate() {
        let mut g = SignatureGrid::new(3);
        let s = g.add_signature(DenseSignature::all_distinct(3, 3).unwrap());
        let a = g.add_vertex(s);
        let b = g.add_vertex(s);
        for i in 0..3 {
            g.connect((a, i), (b, 2 - i));
        }
        let mut f = SignatureGrid::new(3);
        let v = f.add_vertex_with(DenseSignature::all_distinct(3, 3).unwrap());
        for i in 0..3 {
            f.dangle((v, i));
        }
        let h = substitute_gate(&g, &[a], &f).unwrap();
        assert_eq!(h.holant_value().unwrap(), g.holant_value().unwrap());
    }

    #[test]
    fn substituting_bare_edge_closes_loops() {
        // Replace both =₂ vertices of a digon by bare edges: one free loop.
        let mut g = SignatureGrid::new(5);
        let s = g.add_signature(eq2(5));
        let a = g.add_vertex(s);
        let b = g.add_vertex(s);
        g.connect((a, 0), (b, 0));
        g.connect((a, 1), (b, 1));
        let mut f = SignatureGrid::new(5);
        f.bare_edge();
        let h = substitute_gate(&g, &[a, b], &f).unwrap();
        assert_eq!(h.holant_value().unwrap(), Scalar::int(5));
    }
}
