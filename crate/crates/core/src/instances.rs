//! Problem families: the polytope, its integer hull when known in closed
//! form, and descriptive metadata.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::lp::{LinearConstraint, Sense};
use crate::polytope::{IntegerHull, Limits, Polytope, VPointSet};
use crate::scalar::Scalar;

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::Param(format!("bad edge ({u}, {v}) on {n} vertices")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::Param(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Graph { n, edges: set })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::new(n, &edges).expect("valid edges")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).expect("valid edges")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::new(n, &edges).expect("valid edges")
    }

    /// Edges `{2i, 2i+1}`.
    pub fn perfect_matching(n: usize) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::Param("perfect matching needs an even vertex count".into()));
        }
        let edges: Vec<_> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
        Graph::new(n, &edges)
    }

    /// `m` disjoint triangles on vertices `3i, 3i+1, 3i+2`.
    pub fn disjoint_triangles(m: usize) -> Self {
        let edges: Vec<_> = (0..m).flat_map(|i| [(3 * i, 3 * i + 1), (3 * i + 1, 3 * i + 2), (3 * i, 3 * i + 2)]).collect();
        Graph::new(3 * m, &edges).expect("valid edges")
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| (u + 1..self.n).map(move |v| (u, v))).filter(|&(u, v)| !self.has_edge(u, v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| u != v && self.has_edge(u, v)).collect()
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_stable(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    fn subsets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        assert!(self.n <= 20, "subset enumeration on {} vertices", self.n);
        (0u32..(1 << self.n)).map(move |mask| (0..self.n).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn cliques(&self) -> Vec<Vec<usize>> {
        self.subsets().filter(|s| self.is_clique(s)).collect()
    }

    pub fn max_clique_size(&self) -> usize {
        self.cliques().iter().map(|c| c.len()).max().unwrap_or(0)
    }

    pub fn maximal_stable_sets(&self) -> Vec<Vec<usize>> {
        let stable: Vec<Vec<usize>> = self.subsets().filter(|s| self.is_stable(s)).collect();
        stable
            .iter()
            .filter(|s| (0..self.n).all(|v| s.contains(&v) || s.iter().any(|&u| self.has_edge(u, v))))
            .cloned()
            .collect()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let c = colour[u].expect("coloured");
                for v in self.neighbors(u) {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!c);
                            stack.push(v);
                        }
                        Some(cv) if cv == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Repeatedly removes a minimum-degree vertex (lowest index on ties).
    /// Returns the largest degree seen at removal and the removal order, in
    /// which every vertex has at most that many neighbours to its right.
    pub fn degeneracy_ordering(&self) -> (usize, Vec<usize>) {
        let mut alive = vec![true; self.n];
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.neighbors(v).len()).collect();
        let mut order = Vec::with_capacity(self.n);
        let mut d = 0;
        for _ in 0..self.n {
            let v = (0..self.n).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)).expect("vertex left");
            d = d.max(deg[v]);
            alive[v] = false;
            order.push(v);
            for u in self.neighbors(v) {
                if alive[u] {
                    deg[u] -= 1;
                }
            }
        }
        (d, order)
    }

    /// Scans `order`, keeping each vertex not adjacent to one already kept.
    pub fn greedy_stable_set(&self, order: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &v in order {
            if out.iter().all(|&u| !self.has_edge(u, v)) {
                out.push(v);
            }
        }
        out
    }
}

/// A named polytope with optional closed-form integer hull.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct Instance<S> {
    pub name: String,
    #[serde(flatten)]
    pub polytope: Polytope<S>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analytic_hull: Option<IntegerHull<S>>,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

impl<S: Scalar> Instance<S> {
    fn new(name: &str, polytope: Polytope<S>, analytic_hull: Option<IntegerHull<S>>) -> Self {
        Instance { name: name.to_string(), polytope, analytic_hull, metadata: BTreeMap::new() }
    }

    fn with(mut self, key: &str, value: Value) -> Self {
        self.metadata.insert(key.to_string(), value);
        self
    }

    pub fn n(&self) -> usize {
        self.polytope.n
    }

    /// The closed-form hull if present, else one computed by enumeration.
    pub fn hull(&self, limits: &Limits) -> Result<IntegerHull<S>> {
        match &self.analytic_hull {
            Some(h) if h.facets.is_some() => Ok(h.clone()),
            _ => self.polytope.integer_hull(true, limits),
        }
    }
}

fn pair_le<S: Scalar>(n: usize, u: usize, v: usize) -> LinearConstraint<S> {
    let mut c = Vector::zeros(n);
    c[u] = S::one();
    c[v] = S::one();
    LinearConstraint::le(c, S::one())
}

fn nonneg_rows<S: Scalar>(n: usize) -> Vec<LinearConstraint<S>> {
    (0..n).map(|i| LinearConstraint::bound(n, i, Sense::Ge, S::zero())).collect()
}

fn box_rows<S: Scalar>(n: usize) -> Vec<LinearConstraint<S>> {
    Polytope::<S>::unit_cube(n).box_rows()
}

fn bits<S: Scalar>(n: usize, ones: &[usize]) -> Vector<S> {
    let mut v = Vector::zeros(n);
    for &i in ones {
        v[i] = S::one();
    }
    v
}

/// `{0} ∪ {e_i}` with facets `x ≥ 0`, `Σx ≤ 1`.
fn simplex_hull<S: Scalar>(n: usize) -> IntegerHull<S> {
    let mut pts = vec![Vector::zeros(n)];
    pts.extend((0..n).rev().map(|i| Vector::unit(n, i)));
    let mut facets = nonneg_rows(n);
    facets.push(LinearConstraint::le(Vector::filled(n, S::one()), S::one()));
    IntegerHull { vertices: VPointSet { dim: n, points: pts }, facets: Some(facets) }
}

/// Fractional stable set polytope of `K_n`.
pub fn stable_set_fractional<S: Scalar>(n: usize) -> Result<Instance<S>> {
    if n < 2 {
        return Err(Error::Param("stable set instance needs n ≥ 2".into()));
    }
    let g = Graph::complete(n);
    let rows = g.edges().map(|(u, v)| pair_le(n, u, v)).collect();
    Ok(Instance::new("stable-set", Polytope::new(n, rows, true)?, Some(simplex_hull(n)))
        .with("graph", json!(edge_list(&g)))
        .with("n", json!(n)))
}

fn edge_list(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().map(|(u, v)| [u + 1, v + 1]).collect()
}

/// `{x ∈ [0,1]^n : x_u + x_v ≤ 1 for every non-edge uv}`. The hull is always
/// given by its clique vertices; for bipartite graphs also by its facets,
/// the maximal stable set rows of the perfect complement.
pub fn clique_fractional<S: Scalar>(g: &Graph) -> Result<Instance<S>> {
    let n = g.n;
    let rows = g.non_edges().into_iter().map(|(u, v)| pair_le(n, u, v)).collect();
    let mut pts: Vec<Vector<S>> = g.cliques().iter().map(|c| bits(n, c)).collect();
    crate::polytope::sort_points(&mut pts);
    let facets = g.is_bipartite().then(|| {
        let mut f = nonneg_rows(n);
        f.extend(g.maximal_stable_sets().iter().map(|s| LinearConstraint::le(bits(n, s), S::one())));
        f
    });
    let (d, order) = g.degeneracy_ordering();
    Ok(Instance::new("clique", Polytope::new(n, rows, true)?, Some(IntegerHull { vertices: VPointSet { dim: n, points: pts }, facets }))
        .with("graph", json!(edge_list(g)))
        .with("max_clique", json!(g.max_clique_size()))
        .with("degeneracy", json!(d))
        .with("degeneracy_order", json!(order.iter().map(|v| v + 1).collect::<Vec<_>>())))
}

/// `{x ∈ [0,1]^n : Σ q x_j ≤ 2(q − 1)}`.
pub fn knapsack_uniform<S: Scalar>(n: usize, q: i64) -> Result<Instance<S>> {
    if q < 3 {
        return Err(Error::Param(format!("knapsack needs q ≥ 3, got {q}")));
    }
    if n < 2 {
        return Err(Error::Param("knapsack instance needs n ≥ 2".into()));
    }
    let row = LinearConstraint::le(Vector::filled(n, S::int(q)), S::int(2 * (q - 1)));
    Ok(Instance::new("knapsack", Polytope::new(n, vec![row], true)?, Some(simplex_hull(n)))
        .with("q", json!(q))
        .with("k", json!(2))
        .with("epsilon", json!(S::ratio(2, q).to_text())))
}

/// One no-good row per `s ∈ S`: `Σ_{s_j=0} x_j + Σ_{s_j=1} (1 − x_j) ≥ 1/2`.
pub fn nogood<S: Scalar>(n: usize, s: &[Vec<bool>]) -> Result<Instance<S>> {
    if let Some(p) = s.iter().find(|p| p.len() != n) {
        return Err(Error::Dimension { expected: n, found: p.len() });
    }
    let row_for = |p: &Vec<bool>, rhs: S| {
        let coeffs = Vector(p.iter().map(|&b| if b { -S::one() } else { S::one() }).collect());
        let ones = p.iter().filter(|&&b| b).count() as i64;
        LinearConstraint::ge(coeffs, rhs - S::int(ones))
    };
    let rows = s.iter().map(|p| row_for(p, S::ratio(1, 2))).collect();
    let excluded: BTreeSet<&Vec<bool>> = s.iter().collect();
    let mut pts = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let p: Vec<bool> = (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect();
        if !excluded.contains(&p) {
            pts.push(Vector(p.iter().map(|&b| if b { S::one() } else { S::zero() }).collect()));
        }
    }
    let facets = (excluded.len() == 1 && n >= 2).then(|| {
        let mut f = box_rows(n);
        f.push(row_for(&s[0], S::one()));
        f
    });
    let listed: Vec<String> = s.iter().map(|p| p.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect();
    Ok(Instance::new("nogood", Polytope::new(n, rows, true)?, Some(IntegerHull { vertices: VPointSet { dim: n, points: pts }, facets }))
        .with("S", json!(listed)))
}

/// `Q = {x ∈ [0,1]^{3m} : x_u + x_v ≤ 1 on each triangle edge, Σx ≥ m + 1/2}`.
pub fn triangles_q<S: Scalar>(m: usize) -> Polytope<S> {
    let d = 3 * m;
    let g = Graph::disjoint_triangles(m);
    let mut rows: Vec<LinearConstraint<S>> = g.edges().map(|(u, v)| pair_le(d, u, v)).collect();
    rows.push(LinearConstraint::ge(Vector::filled(d, S::one()), S::int(m as i64) + S::ratio(1, 2)));
    Polytope::new(d, rows, true).expect("consistent dimensions")
}

/// The two faces `[0,1]^{n−1} × {0}` and `Q × {1}`.
pub fn triangles_faces<S: Scalar>(n: usize) -> Result<(Polytope<S>, Polytope<S>)> {
    if n < 7 || (n - 1) % 6 != 0 {
        return Err(Error::Param(format!("triangle instance needs n ≡ 1 (mod 6), n ≥ 7; got {n}")));
    }
    let m = (n - 1) / 3;
    let zero = Polytope::unit_cube(n).fix(n - 1, false);
    let q = triangles_q::<S>(m);
    let rows = q.constraints.iter().map(|c| c.widened(n)).collect();
    let one = Polytope::new(n, rows, true)?.fix(n - 1, true);
    Ok((zero, one))
}

/// `conv(([0,1]^{n−1} × {0}) ∪ (Q × {1}))` as a lifted polytope, `m = (n−1)/3`.
pub fn triangles_limit<S: Scalar>(n: usize) -> Result<Instance<S>> {
    let (zero, one) = triangles_faces::<S>(n)?;
    let p = Polytope::balas_union(&[zero, one])?;
    let mut pts = Vec::new();
    for mask in 0u64..(1u64 << (n - 1)) {
        let mut v: Vector<S> = Vector((0..n - 1).map(|i| if mask >> (n - 2 - i) & 1 == 1 { S::one() } else { S::zero() }).collect());
        v.0.push(S::zero());
        pts.push(v);
    }
    let mut facets = box_rows(n);
    facets.push(LinearConstraint::bound(n, n - 1, Sense::Eq, S::zero()));
    let m = (n - 1) / 3;
    let blocks: Vec<[usize; 3]> = (0..m).map(|i| [3 * i + 1, 3 * i + 2, 3 * i + 3]).collect();
    Ok(Instance::new("triangles", p, Some(IntegerHull { vertices: VPointSet { dim: n, points: pts }, facets: Some(facets) }))
        .with("m", json!(m))
        .with("triangles", json!(blocks)))
}

/// The seven generators of the three-dimensional example.
pub fn r3_points<S: Scalar>() -> VPointSet<S> {
    let pts = [
        [(0, 1), (0, 1), (0, 1)],
        [(1, 1), (0, 1), (0, 1)],
        [(0, 1), (1, 1), (1, 1)],
        [(1, 1), (1, 1), (1, 1)],
        [(0, 1), (0, 1), (1, 2)],
        [(1, 2), (0, 1), (1, 1)],
        [(1, 1), (1, 2), (1, 1)],
    ];
    VPointSet { dim: 3, points: pts.iter().map(|p| Vector::from_ratios(p)).collect() }
}

/// The hull of [`r3_points`], whose integer hull is `{x ∈ [0,1]^3 : x_2 = x_3}`.
pub fn r3_example<S: Scalar>() -> Result<Instance<S>> {
    let mut p = r3_points::<S>().hull(&Limits::default())?;
    p.boxed = true;
    let verts = [[0, 0, 0], [0, 1, 1], [1, 0, 0], [1, 1, 1]];
    let mut facets = vec![LinearConstraint::eq(Vector::from_ints(&[0, -1, 1]), S::zero())];
    facets.extend(box_rows::<S>(3).into_iter().take(4));
    let hull = IntegerHull { vertices: VPointSet { dim: 3, points: verts.iter().map(|v| Vector::from_ints(v)).collect() }, facets: Some(facets) };
    Ok(Instance::new("r3", p, Some(hull)).with("a", json!(["0", "-1", "1"])).with("b", json!("0")))
}

/// The single point with `x_1..x_k = 1` and the remaining coordinates `1/2`.
pub fn remark64<S: Scalar>(n: usize, k: usize) -> Result<Instance<S>> {
    if k == 0 || k >= n {
        return Err(Error::Param(format!("need 1 ≤ k < n, got k = {k}, n = {n}")));
    }
    let rows = (0..n)
        .map(|i| LinearConstraint::bound(n, i, Sense::Eq, if i < k { S::one() } else { S::ratio(1, 2) }))
        .collect();
    let empty = IntegerHull { vertices: VPointSet { dim: n, points: Vec::new() }, facets: Some(Polytope::<S>::empty(n).constraints) };
    Ok(Instance::new("remark64", Polytope::new(n, rows, true)?, Some(empty)).with("k", json!(k)))
}

/// Random rows with coefficients in `[−3, 3]`; each right-hand side is
/// lowered when needed so that the centre `(1/2)𝟏` stays feasible.
pub fn random<S: Scalar>(n: usize, rows: usize, seed: u64) -> Result<Instance<S>> {
    if n == 0 {
        return Err(Error::Param("random instance needs n ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centre = Vector::filled(n, S::ratio(1, 2));
    let cons = (0..rows)
        .map(|_| {
            let coeffs: Vector<S> = Vector((0..n).map(|_| S::int(rng.gen_range(-3..=3))).collect());
            let rhs = S::ratio(rng.gen_range(-3..=3), 2);
            let at_centre = coeffs.dot(&centre);
            let rhs = if rhs.cmp_to(&at_centre).is_gt() { at_centre } else { rhs };
            LinearConstraint::ge(coeffs, rhs)
        })
        .collect();
    Ok(Instance::new("random", Polytope::new(n, cons, true)?, None).with("seed", json!(seed)).with("rows", json!(rows)))
}
