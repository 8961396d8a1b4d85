//! Reproduction suites. Each suite expands into independent checks that run
//! in parallel; records are sorted by id afterwards.

use std::collections::{BTreeMap, BTreeSet};

use cutbranch_core::hierarchy::{
    b_k_member, b_k_polytope, b_k_polytope_explicit, bcc_subset_hull, l_iterate_explicit, l_split_certificate, l_step,
    l_step_explicit, sa_member, t_k_polytope_explicit,
};
use cutbranch_core::instances::{
    clique_fractional, knapsack_uniform, nogood, r3_example, random, remark64, stable_set_fractional, triangles_faces,
    triangles_limit, Graph,
};
use cutbranch_core::lp::{lp_feasibility, verify_farkas};
use cutbranch_core::polytope::{containment, dash_witness, equals_integer_hull, same_set, Containment, HullComparison};
use cutbranch_core::tree::{enumerate_trees, greedy_integral_tree, nogood_tree, skewed_k_tree};
use cutbranch_core::{
    BBTree, Direction, Error, LinearConstraint, Limits, LpStatus, Polytope, RPolytope, RVector, Rational, Result, Scalar,
    Sense, VPointSet, Vector,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::report::{Check, ExperimentReport, Outcome};

pub const SUITES: &[&str] =
    &["complete-stable", "skewed", "knapsack", "clique", "nogood", "limits", "sandwich", "nesting", "remark64", "infra"];

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub q: Option<i64>,
    pub seed: u64,
    /// Number of random instances or LP cases, where a suite uses them.
    pub cases: Option<usize>,
    pub limits: Limits,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { n: None, k: None, q: None, seed: 0, cases: None, limits: Limits::default() }
    }
}

type Q = Rational;

fn q(num: i64, den: i64) -> Q {
    Q::ratio(num, den)
}

fn text(v: &RVector) -> String {
    v.to_text().join(",")
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Runs `suite` (or every suite for `"all"`).
pub fn run_suite(suite: &str, params: &SuiteParams) -> std::result::Result<ExperimentReport, String> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(format!("unknown suite {suite:?}; expected one of {} or all", SUITES.join(", ")));
    };
    let mut checks = Vec::new();
    for name in &names {
        checks.extend(suite_checks(name, params)?);
    }
    let mut records: Vec<_> = checks.into_par_iter().map(Check::run).collect();
    records.sort_by(|a, b| a.id.cmp(&b.id));
    let instance = json!({
        "suites": names,
        "n": params.n,
        "k": params.k,
        "q": params.q,
        "seed": params.seed,
        "cases": params.cases,
    });
    Ok(ExperimentReport { experiment: suite.to_string(), instance, checks: records })
}

fn suite_checks(name: &str, p: &SuiteParams) -> std::result::Result<Vec<Check>, String> {
    match name {
        "complete-stable" => complete_stable(p),
        "skewed" => skewed(p),
        "knapsack" => knapsack(p),
        "clique" => clique(p),
        "nogood" => nogood_suite(p),
        "limits" => limits(p),
        "sandwich" => sandwich(p),
        "nesting" => nesting(p),
        "remark64" => remark(p),
        "infra" => infra(p),
        _ => Err(format!("unknown suite {name:?}")),
    }
}

fn hull_outcome(cmp: HullComparison<Q>) -> Outcome {
    match cmp {
        HullComparison::Equal => Outcome::new(true),
        HullComparison::OutsideHull(w) => Outcome::new(false).witness(w).detail("relaxation point outside the integer hull"),
        HullComparison::MissingVertex(w) => Outcome::new(false).witness(w).detail("integer hull vertex missing"),
    }
}

fn containment_outcome(c: Containment<Q>) -> Outcome {
    match c {
        Containment::Contained => Outcome::new(true),
        Containment::Witness(w) => Outcome::new(false).witness(w).detail("containment violated"),
        Containment::Undecided(msg) => Outcome::new(false).detail(format!("undecided: {msg}")),
    }
}

/// Turns an undecided containment into a budget error so the record reads `undecided`.
fn decided(c: Containment<Q>) -> Result<Containment<Q>> {
    match c {
        Containment::Undecided(msg) => Err(Error::Budget(msg)),
        other => Ok(other),
    }
}

fn complete_stable(p: &SuiteParams) -> std::result::Result<Vec<Check>, String> {
    let ns = p.n.map_or_else(|| vec![3, 4, 5, 6], |n| vec![n]);
    let mut out = Vec::new();
    for n in ns {
        if n < 2 {
            return Err("complete-stable needs n ≥ 2".into());
        }
        let limits = p.limits.clone();
        out.push(Check::new(
            format!("complete-stable/n{n}/tree"),
            format!("greedy tree on the K_{n} stable set has size ≤ {} and its relaxation is the integer hull", 2 * n + 1),
            "stable set of K_n: small tree, exact hull",
            move || {
                let inst = stable_set_fractional::<Q>(n)?;
                let hull = inst.hull(&limits)?;
                let t = greedy_integral_tree(&inst.polytope, 8 * n + 8, &limits)?;
                let size_ok = t.size() <= 2 * n + 1;
                let o = hull_outcome(equals_integer_hull(&t.relaxation_pruned(&inst.polytope)?, &hull)?);
                Ok(Outcome { pass: o.pass && size_ok, ..o }.value("size", t.size()).value("bound", 2 * n + 1))
            },
        ));
        for k in 1..=n.saturating_sub(2) {
            out.push(Check::new(
                format!("complete-stable/n{n}/sa-k{k}"),
                format!("(1/{})·1 lies in SA^{k} of the K_{n} stable set relaxation", k + 2),
                "stable set of K_n: uniform point survives SA",
                move || {
                    let inst = stable_set_fractional::<Q>(n)?;
                    let x = Vector::filled(n, q(1, k as i64 + 2));
                    let member = sa_member(&inst.polytope, k, &x)?;
                    let o = Outcome::new(member).value("point", text(&x));
                    Ok(if member { o } else { o.witness(x) })
                },
            ));
        }
    }
    Ok(out)
}

/// Checks the leaf structure of a skewed tree.
pub fn skewed_properties(t: &BBTree, n: usize, k: usize) -> Outcome {
    let expected: usize = (0..=k).map(|i| binomial(n, i)).sum();
    let mut j1_sets = BTreeSet::new();
    let mut distinct = true;
    let mut stopping = true;
    for v in t.leaves() {
        let l = t.labels(v);
        distinct &= j1_sets.insert(l.j1.iter().copied().collect::<Vec<_>>());
        stopping &= l.j1.len() == k || l.j0.len() + l.j1.len() == n;
    }
    let all_small: BTreeSet<Vec<usize>> = (0..=k).flat_map(|s| itertools::Itertools::combinations(0..n, s)).collect();
    let one_per_subset = distinct && j1_sets == all_small;
    Outcome::new(t.leaf_count() == expected && one_per_subset && stopping)
        .value("leaves", t.leaf_count())
        .value("expected", expected)
        .value("one_leaf_per_subset", one_per_subset)
        .value("stopping_rule", stopping)
}

fn skewed(p: &SuiteParams) -> std::result::Result<Vec<Check>, String> {
    let ns = p.n.map_or_else(|| (3..=8).collect(), |n| vec![n]);
    let ks = p.k.map_or_else(|| vec![1, 2, 3], |k| vec![k]);
    let mut out = Vec::new();
    for &n in &ns {
        for &k in ks.iter().filter(|&&k| k >= 1 && k <= n) {
            let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ ((n as u64) << 8 | k as u64));
            for i in 0..5 {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                out.push(Check::new(
                    format!("skewed/n{n}/k{k}/perm{i}"),
                    format!("skewed {k}-tree on {n} variables has Σ_{{i≤k}} C(n,i) leaves, one per J¹ set, and stops correctly"),
                    "skewed k-tree leaf structure",
                    move || {
                        let t = skewed_k_tree(n, k, &perm)?;
                        let perm_text = perm.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",");
                        Ok(skewed_properties(&t, n, k).value("perm", perm_text))
                    },
                ));
            }
        }
    }
    if out.is_empty() {
        return Err("skewed suite needs 1 ≤ k ≤ n".into());
    }
    Ok(out)
}

fn knapsack(p: &SuiteParams) -> std::result::Result<Vec<Check>, String> {
    let qv = p.q.unwrap_or(3);
    if qv < 3 {
        return Err("knapsack needs q ≥ 3".into());
    }
    let ns = p.n.map_or_else(|| vec![4, 5, 6], |n| vec![n]);
    let mut out = Vec::new();
    for n in ns {
        let limits = p.limits.clone();
        out.push(Check::new(
            format!("knapsack/n{n}/tree"),
            format!("skewed 2-tree relaxation of the q={qv} knapsack on {n} variables is the integer hull"),
            "uniform knapsack: skewed 2-tree closes the gap",
            move || {
                let inst = knapsack_uniform::<Q>(n, qv)?;
                let perm: Vec<usize> = (0..n).collect();
                let t = skewed_k_tree(n, 2, &perm)?;
                let hull = inst.hull(&limits)?;
                Ok(hull_outcome(equals_integer_hull(&t.relaxation_pruned(&inst.polytope)?, &hull)?).value("leaves", t.leaf_count()))
            },
        ));
        let t = n * (qv as usize - 2) / (qv as usize - 1);
        out.push(Check::new(
            format!("knapsack/n{n}/sa"),
            format!("the uniform point for q={qv}, t={t} is in SA^t and violates Σx ≤ 1, so SA^t differs from the integer hull"),
            "uniform knapsack: SA needs high level",
            move || {
                if t == 0 {
                    return Err(Error::Param(format!("level ⌊n(q−2)/(q−1)⌋ is 0 for n = {n}")));
                }
                let inst = knapsack_uniform::<Q>(n, qv)?;
                let ratio = q(qv - 1, qv);
                let value = q(2, 1) * ratio.clone() / (Q::int(n as i64) + Q::int(t as i64 - 1) * ratio);
                let x = Vector::filled(n, value.clone());
                let member = sa_member(&inst.polytope, t, &x)?;
                let sum = value.clone() * Q::int(n as i64);
                let violates = sum > Q::int(1);
                Ok(Outcome::new(member && violates)
                    .value("t", t)
                    .value("coordinate", value.to_text())
                    .value("sum", sum.to_text())
                    .value("member", member)
                    .witness(x))
            },
        ));
    }
    Ok(out)
}

fn clique(p: &SuiteParams) -> std::result::Result<Vec<Check>, String> {
    let limits = p.limits.clone();
    let mut out = vec![
        Check::new(
            "clique/matching8/metadata",
            "perfect matching on 8 vertices: clique number 2, degeneracy 1, greedy stable set of size ≥ n/(d+1)",
            "clique relaxation: graph parameters",
            || {
                let g = Graph::perfect_matching(8)?;
                let inst = clique_fractional::<Q>(&g)?;
                let (d, order) = g.degeneracy_ordering();
                let s = g.greedy_stable_set(&order);
                let ok = inst.metadata["max_clique"] == json!(2) && d == 1 && g.is_stable(&s) && s.len() * (d + 1) >= g.n;
                Ok(Outcome::new(ok).value("k", g.max_clique_size()).value("d", d).value("greedy_stable", s.len()))
            },
        ),
        Check::new(
            "clique/matching8/tree",
            "skewed 2-tree relaxation of the clique relaxation equals the integer hull",
            "clique relaxation: skewed k-tree closes the gap",
            move || {
                let g = Graph::perfect_matching(8)?;
                let inst = clique_fractional::<Q>(&g)?;
                let t = skewed_k_tree(8, 2, &(0..8).collect::<Vec<_>>())?;
                let hull = inst.hull(&limits)?;
                Ok(hull_outcome(equals_integer_hull(&t.relaxation_pruned(&inst.polytope)?, &hull)?).value("leaves", t.leaf_count()))
            },
        ),
        Check::new(
            "clique/matching8/sa",
            "(1/3)·1 is in SA^1 while a size-4 stable set gives a valid Σ_S x ≤ 1 it violates",
            "clique relaxation: SA level 1 misses the hull",
            || {
                let g = Graph::perfect_matching(8)?;
                let inst = clique_fractional::<Q>(&g)?;
                let x = Vector::filled(8, q(1, 3));
                let member = sa_member(&inst.polytope, 1, &x)?;
                let s = g.maximal_stable_sets().into_iter().find(|s| s.len() == 4).ok_or(Error::EmptyInput("no stable set of size 4"))?;
                let row: RVector = Vector((0..8).map(|i| if s.contains(&i) { Q::int(1) } else { Q::int(0) }).collect());
                let valid = inst.polytope.integer_points(&Limits::default())?.iter().all(|v| row.dot(v) <= Q::int(1));
                let lhs = row.dot(&x);
                let s_text = s.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",");
                Ok(Outcome::new(member && valid && lhs > Q::int(1))
                    .value("member", member)
                    .value("stable_set", s_text)
                    .value("lhs", lhs.to_text())
                    .witness(x))
            },
        ),
        Check::new(
            "clique/triangles2/metadata",
            "two disjoint triangles: clique number 3, degeneracy 2",
            "clique relaxation: graph parameters",
            || {
                let g = Graph::disjoint_triangles(2);
                let (d, _) = g.degeneracy_ordering();
                Ok(Outcome::new(g.max_clique_size() == 3 && d == 2).value("k", g.max_clique_size()).value("d", d))
            },
        ),
    ];
    for n in 4..=8usize {
        out.push(Check::new(
            format!("clique/degeneracy/n{n}"),
            format!("degeneracy of the path, cycle and complete graph on {n} vertices is 1, 2 and {}", n - 1),
            "degeneracy of forests, cycles and complete graphs",
            move || {
                let graphs = [(Graph::path(n), 1), (Graph::cycle(n), 2), (Graph::complete(n), n - 1)];
                let mut ok = true;
                let mut found = Vec::new();
                for (g, want) in graphs {
                    let (d, order) = g.degeneracy_ordering();
                    let right_ok = order.iter().enumerate().all(|(i, &v)| order[i + 1..].iter().filter(|&&u| g.has_edge(u, v)).count() <= d);
                    ok &= d == want && right_ok;
                    found.push(d.to_string());
                }
                Ok(Outcome::new(ok).value("degeneracies", found.join(",")))
            },
        ));
    }
    Ok(out)
}

fn random_nogood_sets(n: usize, seed: u64) -> Vec<Vec<Vec<bool>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e67 ^ n as u64);
    let mut out = vec![vec![vec![false; n]]];
    for _ in 0..3 {
        let size = rng.gen_range(1..=3usize);
        let mut set = BTreeSet::new();
        while set.len() < size {
            set.insert((0..n).map(|_| rng.gen_bool(0.5)).collect::<Vec<bool>>());
        }
        out.push(set.into_iter().collect());
    }
    out
}

fn bits_text(s: &[Vec<bool>]) -> String {
    s.iter().map(|p| p.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()).collect::<Vec<_>>().join(",")
}

fn nogood_suite(p: &SuiteParams) -> std::result::Result<Vec<Check>, String> {
    let ns = p.n.map_or_else(|| vec![3, 4], |n| vec![n]);
    let mut out = Vec::new();
    for n in ns {
        if !(2..=10).contains(&n) {
            return Err("nogood suite needs 2 ≤ n ≤ 10".into());
        }
        for (i, s) in random_nogood_sets(n, p.seed).into_iter().enumerate() {
            let limits = p.limits.clone();
            out.push(Check::new(
                format!("nogood/n{n}/set{i}"),
                format!("no-good tree for S = {{{}}} has size ≤ 3n|S| and its relaxation is the integer hull", bits_text(&s)),
                "no-good constraints: tree of size O(n|S|)",
                move || {
                    let inst = nogood::<Q>(n, &s)?;
                    let t = nogood_tree(n, &s)?;
                    let bound = 3 * n * s.len();
                    let hull = inst.hull(&limits)?;
                    let o = hull_outcome(equals_integer_hull(&t.relaxation_pruned(&inst.polytope)?, &hull)?);
                    let ok = o.pass && t.size() <= bound;
                    Ok(Outcome { pass: ok, ..o }.value("size", t.size()).value("bound", bound).value("S", bits_text(&s)))
                },
            ));
        }
        out.push(Check::new(
            format!("nogood/n{n}/sa"),
            format!("for S = {{0}} the point 1/(2n−t)·1 with t = n−1 lies in SA^t"),
            "no-good constraints: SA needs level n",
            move || {
                let t = n - 1;
                let inst = nogood::<Q>(n, &[vec![false; n]])?;
                let x = Vector::filled(n, q(1, (2 * n - t) as i64));
                let member = sa_member(&inst.polytope, t, &x)?;
                Ok(Outcome::new(member).value("t", t).value("point", text(&x)))
            },
        ));
        if n == 3 {
            let limits = p.limits.clone();
            out.push(Check::new(
                "nogood/n3/l2",
                "for S = {0} the explicit L²(P) contains a point with Σx < 1",
                "no-good constraints: L^{n−1} is not the hull",
                move || {
                    let inst = nogood::<Q>(3, &[vec![false; 3]])?;
                    let l2 = l_iterate_explicit(&inst.polytope, 2, &limits)?;
                    let out = l2.optimize(&Vector::filled(3, Q::int(1)), Direction::Min)?;
                    let (Some(v), Some(x)) = (out.value, out.point) else {
                        return Ok(Outcome::new(false).detail("L² is empty"));
                    };
                    Ok(Outcome::new(v < Q::int(1) && l2.is_member(&x)?).value("min_sum", v.to_text()).witness(x))
                },
            ));
        }
    }
    Ok(out)
}

/// A Farkas-checked emptiness test.
fn certified_empty(p: &RPolytope) -> Result<bool> {
    let rows = p.system();
    match lp_feasibility(&rows, p.total_dim()) {
        Ok(_) => Ok(false),
        Err(y) => Ok(verify_farkas(&rows, p.total_dim(), &y)),
    }
}

/// Tree relaxations with at most two leaves and, for each, a maximizer of `x_n`.
fn two_leaf_apexes(p: &RPolytope, limits: &Limits) -> Result<Vec<(BBTree, Option<RVector>)>> {
    let n = p.n;
    enumerate_trees(n, n, 2, limits.max_subsets)?
        .into_iter()
        .map(|t| {
            let out = t.relaxation_pruned(p)?.optimize(&Vector::unit(n, n - 1), Direction::Max)?;
            let apex = out.point.filter(|_| out.status == LpStatus::Optimal && out.value == Some(Q::int(1)));
            Ok((t, apex))
        })
        .collect()
}

fn limits(p: &SuiteParams) -> std::result::Result<Vec<Check>, String> {
    let n = p.n.unwrap_or(7);
    if n < 7 || (n - 1) % 6 != 0 {
        return Err(format!("limits suite needs n ≡ 1 (mod 6), n ≥ 7; got {n}"));
    }
    let lim = p.limits.clone();
    let mut out = vec![
        Check::new(
            format!("limits/n{n}/a-q-face"),
            "L of the face Q×{1} is empty (Farkas certificate checked)",
            "triangle gadget: no integer point near the x_n = 1 face",
            move || {
                let (_, one) = triangles_faces::<Q>(n)?;
                let l = l_step(&one)?;
                Ok(Outcome::new(certified_empty(&l)?).value("aux", l.aux))
            },
        ),
        Check::new(
            format!("limits/n{n}/a-l-face"),
            format!("L(P) ∩ {{x_{n} = 1}} is empty (Farkas certificate checked)"),
            "triangle gadget: L removes the top face",
            move || {
                let inst = triangles_limit::<Q>(n)?;
                let l = l_step(&inst.polytope)?;
                Ok(Outcome::new(certified_empty(&l.fix(n - 1, true))?).value("aux", l.aux))
            },
        ),
        Check::new(
            format!("limits/n{n}/b-zero-face"),
            format!("the face P ∩ {{x_{n} = 0}} equals the integer hull"),
            "triangle gadget: bottom face is integral",
            move || {
                let inst = triangles_limit::<Q>(n)?;
                let hull = inst.analytic_hull.clone().ok_or(Error::MissingFacets)?;
                Ok(hull_outcome(equals_integer_hull(&inst.polytope.fix(n - 1, false), &hull)?))
            },
        ),
        Check::new(
            format!("limits/n{n}/l2-hull"),
            "L²(P) = P_I: a split on one variable has an empty side and an integral side",
            "triangle gadget: two rounds of L suffice",
            {
                let limits = lim.clone();
                move || {
                    let inst = triangles_limit::<Q>(n)?;
                    let hull = inst.analytic_hull.clone().ok_or(Error::MissingFacets)?;
                    match l_split_certificate(&inst.polytope, 2, &hull, &limits)? {
                        Some(c) => Ok(Outcome::new(true).value("split_var", c.var + 1).value("empty_side", u8::from(c.empty_side))),
                        None => Ok(Outcome::new(false).detail("no split certificate found")),
                    }
                }
            },
        ),
        Check::new(
            format!("limits/n{n}/l1-not-hull"),
            format!("L(P) still reaches x_{n} > 0"),
            "triangle gadget: one round of L is not enough",
            move || {
                let inst = triangles_limit::<Q>(n)?;
                let out = l_step(&inst.polytope)?.optimize(&Vector::unit(n, n - 1), Direction::Max)?;
                let v = out.value.unwrap_or_else(|| Q::int(0));
                let o = Outcome::new(v > Q::int(0)).value("max_x_n", v.to_text());
                Ok(match out.point {
                    Some(x) => o.witness(x),
                    None => o,
                })
            },
        ),
    ];
    let trees = enumerate_trees(n, n, 2, lim.max_subsets).map_err(|e| e.to_string())?;
    for (i, t) in trees.into_iter().enumerate() {
        out.push(Check::new(
            format!("limits/n{n}/c-tree{i}"),
            format!("tree {} has a point with x_{n} = 1 in its relaxation", t.to_json().unwrap_or_default()),
            "triangle gadget: small trees keep the top face",
            move || {
                let inst = triangles_limit::<Q>(n)?;
                let o = t.relaxation_pruned(&inst.polytope)?.optimize(&Vector::unit(n, n - 1), Direction::Max)?;
                let ok = o.status == LpStatus::Optimal && o.value == Some(Q::int(1));
                let r = Outcome::new(ok).value("tree", t.to_json()?);
                Ok(match o.point {
                    Some(x) => r.witness(x),
                    None => r,
                })
            },
        ));
    }
    out.push(Check::new(
        format!("limits/n{n}/c-dash"),
        format!("a point with x_{n} > 0 lies in every relaxation of a tree with ≤ 2 leaves, outside the integer hull"),
        "triangle gadget: common point of simplicial hulls",
        move || {
            let inst = triangles_limit::<Q>(n)?;
            let apexes = two_leaf_apexes(&inst.polytope, &lim)?;
            let Some(points) = apexes.iter().map(|(_, a)| a.clone()).collect::<Option<Vec<_>>>() else {
                return Ok(Outcome::new(false).detail("some tree relaxation misses x_n = 1"));
            };
            let mut facet = vec![Vector::zeros(n)];
            facet.extend((0..n - 1).map(|i| Vector::unit(n, i)));
            let a = Vector::unit(n, n - 1);
            let x = dash_witness(&VPointSet::new(n, facet)?, &VPointSet::new(n, points)?, &a, &Q::int(0))?;
            let mut ok = x[n - 1] > Q::int(0) && inst.polytope.is_member(&x)?;
            for (t, _) in &apexes {
                ok &= t.relaxation_pruned(&inst.polytope)?.is_member(&x)?;
            }
            let hull = inst.analytic_hull.clone().ok_or(Error::MissingFacets)?.as_polytope()?;
            ok &= !hull.is_member(&x)?;
            Ok(Outcome::new(ok).value("trees", apexes.len()).value("x_n", x[n - 1].to_text()).witness(x))
        },
    ));
    Ok(out)
}

fn four_leaf_tree() -> Result<BBTree> {
    let mut t = BBTree::trivial(3);
    let (z, o) = t.branch(t.root(), 0)?;
    t.branch(z, 2)?;
    t.branch(o, 1)?;
    Ok(t)
}

/// A random polytope of the property suites.
pub fn suite_polytope(n: usize, i: usize, seed: u64) -> Result<RPolytope> {
    Ok(random::<Q>(n, 3 + i % 3, seed.wrapping_mul(1000).wrapping_add(i as u64))?.polytope)
}

fn sandwich(p: &SuiteParams) -> std::result::Result<Vec<Check>, String> {
    let n = p.n.unwrap_or(3);
    let k = p.k.unwrap_or(2);
    if n == 0 || k == 0 || k > n {
        return Err("sandwich suite needs 1 ≤ k ≤ n".into());
    }
    let lim = p.limits.clone();
    let mut out = vec![
        Check::new(
            "sandwich/r3/four-leaf",
            "on the three-dimensional example the four-leaf tree (x_1, then x_3 or x_2) gives the integer hull, so T² = P_I",
            "height-2 trees beat B²: tree side",
            {
                let limits = lim.clone();
                move || {
                    let inst = r3_example::<Q>()?;
                    let hull = inst.hull(&limits)?;
                    let tree = hull_outcome(equals_integer_hull(&four_leaf_tree()?.relaxation_pruned(&inst.polytope)?, &hull)?);
                    let t2 = hull_outcome(equals_integer_hull(&t_k_polytope_explicit(&inst.polytope, 2, &limits)?, &hull)?);
                    Ok(Outcome { pass: tree.pass && t2.pass, ..tree }.value("t2_equals_hull", t2.pass))
                }
            },
        ),
        Check::new(
            "sandwich/r3/b2-strict",
            "B² of the three-dimensional example contains a point with x_3 > x_2",
            "height-2 trees beat B²: B² side",
            {
                let limits = lim.clone();
                move || {
                    let inst = r3_example::<Q>()?;
                    let a = Vector::from_ints(&[0, -1, 1]);
                    let b2 = b_k_polytope(&inst.polytope, 2, &limits)?;
                    let o = b2.optimize(&a, Direction::Max)?;
                    let (Some(v), Some(x)) = (o.value, o.point) else {
                        return Ok(Outcome::new(false).detail("B² is empty"));
                    };
                    let p12 = bcc_subset_hull(&inst.polytope, &[0, 1])?.is_member(&Vector::from_ratios(&[(0, 1), (0, 1), (1, 2)]))?;
                    let p23 = bcc_subset_hull(&inst.polytope, &[1, 2])?.is_member(&Vector::from_ratios(&[(1, 2), (0, 1), (1, 1)]))?;
                    let member = b_k_member(&inst.polytope, 2, &x, &limits)?;
                    Ok(Outcome::new(v > Q::int(0) && member && p12 && p23).value("max", v.to_text()).witness(x))
                }
            },
        ),
    ];
    let count = p.cases.unwrap_or(20);
    for i in 0..count {
        let limits = lim.clone();
        let seed = p.seed;
        out.push(Check::new(
            format!("sandwich/p{i:02}"),
            format!("random polytope {i}: L = T¹ = B¹, and L^{k} ⊆ T^{k} ⊆ B^{k} with P_I inside and P outside"),
            "lift-and-project sandwich of the tree operator",
            move || {
                let p = suite_polytope(n, i, seed)?;
                let l1 = l_step_explicit(&p, &limits)?;
                let t1 = t_k_polytope_explicit(&p, 1, &limits)?;
                let b1 = b_k_polytope_explicit(&p, 1, &limits)?;
                for (name, r) in [("T1", &t1), ("B1", &b1)] {
                    let o = containment_outcome(decided(same_set(&l1, r, &limits)?)?);
                    if !o.pass {
                        return Ok(o.detail(format!("L differs from {name}")));
                    }
                }
                let lk = l_iterate_explicit(&p, k, &limits)?;
                let tk = t_k_polytope_explicit(&p, k, &limits)?;
                let bk = b_k_polytope_explicit(&p, k, &limits)?;
                let hull = p.integer_hull(false, &limits)?;
                for (name, a, b) in [("L^k ⊆ T^k", &lk, &tk), ("T^k ⊆ B^k", &tk, &bk), ("B^k ⊆ P", &bk, &p)] {
                    let o = containment_outcome(decided(containment(a, b, &limits)?)?);
                    if !o.pass {
                        return Ok(o.detail(format!("{name} fails")));
                    }
                }
                if !lk.contains_hull(&hull)? {
                    return Ok(Outcome::new(false).detail("L^k misses an integer point"));
                }
                Ok(Outcome::new(true).value("rows", p.constraints.len()).value("integer_points", hull.vertices.len()))
            },
        ));
    }
    Ok(out)
}

fn nesting(p: &SuiteParams) -> std::result::Result<Vec<Check>, String> {
    let n = p.n.unwrap_or(3);
    if !(1..=4).contains(&n) {
        return Err("nesting suite needs 1 ≤ n ≤ 4".into());
    }
    let ks = p.k.map_or_else(|| vec![1, 2], |k| vec![k]);
    let mut out = Vec::new();
    for i in 0..p.cases.unwrap_or(20) {
        for &k in &ks {
            let limits = p.limits.clone();
            let seed = p.seed;
            out.push(Check::new(
                format!("nesting/p{i:02}/k{k}"),
                format!("random polytope {i}: L^{k}(P) ∩ {{x_j = a}} = L^{k}(P ∩ {{x_j = a}}) for every j and a"),
                "fixing a variable commutes with L^k",
                move || {
                    let p = suite_polytope(n, i, seed)?;
                    let lk = l_iterate_explicit(&p, k, &limits)?;
                    for j in 0..n {
                        for a in [false, true] {
                            let left = lk.fix(j, a);
                            let right = l_iterate_explicit(&p.fix(j, a), k, &limits)?;
                            let o = containment_outcome(decided(same_set(&left, &right, &limits)?)?);
                            if !o.pass {
                                return Ok(o.detail(format!("x_{} = {}", j + 1, u8::from(a))));
                            }
                        }
                    }
                    Ok(Outcome::new(true))
                },
            ));
        }
    }
    Ok(out)
}

fn remark(p: &SuiteParams) -> std::result::Result<Vec<Check>, String> {
    let cases = match (p.n, p.k) {
        (Some(n), Some(k)) => vec![(n, k)],
        (None, None) => vec![(3, 1), (4, 2)],
        _ => return Err("remark64 suite takes both --n and --k or neither".into()),
    };
    let mut out = Vec::new();
    for (n, k) in cases {
        let limits = p.limits.clone();
        out.push(Check::new(
            format!("remark64/n{n}k{k}/tk-empty"),
            format!("T^{k}(P) is empty for the point with {k} ones and the rest 1/2"),
            "height-k trees versus skewed trees",
            move || {
                let inst = remark64::<Q>(n, k)?;
                Ok(Outcome::new(t_k_polytope_explicit(&inst.polytope, k, &limits)?.is_empty()))
            },
        ));
        let limits = p.limits.clone();
        out.push(Check::new(
            format!("remark64/n{n}k{k}/skewed"),
            format!("the skewed {k}-tree in index order leaves P unchanged"),
            "height-k trees versus skewed trees",
            move || {
                let inst = remark64::<Q>(n, k)?;
                let t = skewed_k_tree(n, k, &(0..n).collect::<Vec<_>>())?;
                let r = t.relaxation_pruned(&inst.polytope)?;
                Ok(containment_outcome(decided(same_set(&inst.polytope, &r, &limits)?)?).value("leaves", t.leaf_count()))
            },
        ));
    }
    Ok(out)
}

/// One randomized LP and its cross-checks. Returns the status on success.
fn lp_case(rng: &mut ChaCha8Rng, limits: &Limits) -> Result<std::result::Result<(LpStatus, bool), String>> {
    let d = rng.gen_range(1..=4usize);
    let m = rng.gen_range(1..=6usize);
    let boxed = rng.gen_bool(0.5);
    let mut rows = Vec::new();
    for _ in 0..m {
        let coeffs: RVector = Vector((0..d).map(|_| Q::int(rng.gen_range(-3..=3))).collect());
        let rhs = q(rng.gen_range(-6..=6), rng.gen_range(1..=2));
        let sense = match rng.gen_range(0..6) {
            0 => Sense::Eq,
            1 | 2 => Sense::Le,
            _ => Sense::Ge,
        };
        rows.push(LinearConstraint::new(coeffs, sense, rhs));
    }
    let poly = Polytope::new(d, rows.clone(), boxed)?;
    let system = poly.system();
    let c: RVector = Vector((0..d).map(|_| Q::int(rng.gen_range(-3..=3))).collect());
    let out = poly.optimize(&c, Direction::Max)?;
    let verdict = match out.status {
        LpStatus::Optimal => {
            let x = out.point.clone().ok_or(Error::EmptyInput("optimal point"))?;
            let v = out.value.clone().ok_or(Error::EmptyInput("optimal value"))?;
            if !system.iter().all(|r| r.is_satisfied_by(&x)) {
                return Ok(Err("optimal point infeasible".into()));
            }
            let y = out.certificate.clone().ok_or(Error::EmptyInput("dual certificate"))?;
            let mut combo = Vector::<Q>::zeros(d);
            let mut rhs = Q::int(0);
            for (r, yk) in system.iter().zip(y.iter()) {
                let sign_ok = match r.sense {
                    Sense::Ge => !yk.is_neg(),
                    Sense::Le => !yk.is_pos(),
                    Sense::Eq => true,
                };
                if !sign_ok {
                    return Ok(Err("dual multiplier has the wrong sign".into()));
                }
                combo = combo.add(&r.coeffs.scale(yk));
                rhs += r.rhs.clone() * yk;
            }
            let neg_c = c.scale(&Q::int(-1));
            if combo != neg_c || rhs != -v.clone() {
                return Ok(Err("dual certificate does not prove optimality".into()));
            }
            if boxed {
                let verts = poly.vertices(limits)?;
                let best = verts.points.iter().map(|p| c.dot(p)).max_by(|a, b| a.cmp_to(b));
                if best != Some(v) {
                    return Ok(Err("vertex enumeration disagrees with the optimum".into()));
                }
            }
            (LpStatus::Optimal, boxed)
        }
        LpStatus::Infeasible => {
            let y = out.certificate.clone().ok_or(Error::EmptyInput("Farkas certificate"))?;
            if !verify_farkas(&system, d, &y) {
                return Ok(Err("Farkas certificate rejected".into()));
            }
            if boxed && !poly.vertices(limits)?.is_empty() {
                return Ok(Err("vertex enumeration finds a point in an infeasible system".into()));
            }
            (LpStatus::Infeasible, boxed)
        }
        LpStatus::Unbounded => {
            if boxed {
                return Ok(Err("bounded system reported unbounded".into()));
            }
            let x = out.point.clone().ok_or(Error::EmptyInput("feasible point"))?;
            let ray = out.certificate.clone().ok_or(Error::EmptyInput("ray"))?;
            let ray_ok = system.iter().all(|r| {
                let s = r.coeffs.dot(&ray);
                match r.sense {
                    Sense::Ge => !s.is_neg(),
                    Sense::Le => !s.is_pos(),
                    Sense::Eq => s == Q::int(0),
                }
            });
            if !system.iter().all(|r| r.is_satisfied_by(&x)) || !ray_ok || !c.dot(&ray).is_pos() {
                return Ok(Err("unbounded certificate rejected".into()));
            }
            (LpStatus::Unbounded, false)
        }
    };
    Ok(Ok(verdict))
}

/// Trees built across the suites, each with the polytope it relaxes.
fn accounting_cases(seed: u64, limits: &Limits) -> Result<Vec<(String, BBTree, RPolytope)>> {
    let mut out = Vec::new();
    for n in 3..=8 {
        let p = knapsack_uniform::<Q>(n, 3)?.polytope;
        for k in 1..=3.min(n) {
            out.push((format!("skewed n={n} k={k}"), skewed_k_tree(n, k, &(0..n).collect::<Vec<_>>())?, p.clone()));
        }
    }
    for n in [3, 4] {
        for s in random_nogood_sets(n, seed) {
            let p = nogood::<Q>(n, &s)?.polytope;
            out.push((format!("nogood n={n} S={}", bits_text(&s)), nogood_tree(n, &s)?, p));
        }
    }
    for n in 3..=6 {
        let p = stable_set_fractional::<Q>(n)?.polytope;
        out.push((format!("greedy n={n}"), greedy_integral_tree(&p, 8 * n + 8, limits)?, p));
    }
    let g = Graph::perfect_matching(8)?;
    out.push(("skewed clique".into(), skewed_k_tree(8, 2, &(0..8).collect::<Vec<_>>())?, clique_fractional::<Q>(&g)?.polytope));
    let r3 = r3_example::<Q>()?.polytope;
    for (i, t) in enumerate_trees(3, 2, usize::MAX, limits.max_subsets)?.into_iter().enumerate() {
        out.push((format!("height-2 tree {i} on r3"), t, r3.clone()));
    }
    let tri = triangles_limit::<Q>(7)?.polytope;
    for (i, t) in enumerate_trees(7, 7, 2, limits.max_subsets)?.into_iter().enumerate() {
        out.push((format!("two-leaf tree {i} on triangles"), t, tri.clone()));
    }
    Ok(out)
}

fn infra(p: &SuiteParams) -> std::result::Result<Vec<Check>, String> {
    let total = p.cases.unwrap_or(1000);
    let batch = 100;
    let mut out = Vec::new();
    for b in 0..total.div_ceil(batch) {
        let limits = p.limits.clone();
        let seed = p.seed;
        let lo = b * batch;
        let hi = (lo + batch).min(total);
        out.push(Check::new(
            format!("infra/lp/b{b:02}"),
            format!("randomized LP cases {lo}..{hi} terminate and their certificates check out"),
            "exact LP classification",
            move || {
                let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
                for case in lo..hi {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(case as u64));
                    match lp_case(&mut rng, &limits)? {
                        Ok((status, vertex_checked)) => {
                            let key = match status {
                                LpStatus::Optimal => "optimal",
                                LpStatus::Infeasible => "infeasible",
                                LpStatus::Unbounded => "unbounded",
                            };
                            *counts.entry(key).or_default() += 1;
                            if vertex_checked {
                                *counts.entry("vertex_checked").or_default() += 1;
                            }
                        }
                        Err(msg) => return Ok(Outcome::new(false).detail(format!("case {case}: {msg}"))),
                    }
                }
                Ok(counts.into_iter().fold(Outcome::new(true), |o, (k, v)| o.value(k, v)))
            },
        ));
    }
    let limits = p.limits.clone();
    let seed = p.seed;
    out.push(Check::new(
        "infra/size-accounting",
        "every tree relaxation built by the suites stays within |T|(n+aux+1) variables and |T|·m + n + 1 rows",
        "size of the disjunctive formulation of a tree",
        move || {
            let cases = accounting_cases(seed, &limits)?;
            for (name, t, p) in &cases {
                let s = t.size_report(p)?;
                if !s.within_bounds() {
                    return Ok(Outcome::new(false).detail(format!("{name}: {s:?}")));
                }
            }
            Ok(Outcome::new(true).value("trees", cases.len()))
        },
    ));
    Ok(out)
}
