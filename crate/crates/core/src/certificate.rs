//! Genus certificates and their verification.
//!
//! Every certificate describes a disjoint union of tori mapped into the
//! group. Verification recomputes the connection matrix that union induces,
//! checks the commutation side conditions, and compares with the class.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{OrientedGraph, VertexId};
use crate::homology::HomologyClass;
use crate::linalg::IntMatrix;
use crate::serde_int;
use crate::star_cover::Star;

/// `lambda * (a ∧ b)` with `a`, `b` indexed like the decomposition's vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeTerm {
    #[serde(with = "serde_int::string")]
    pub lambda: BigInt,
    #[serde(with = "serde_int::string_vec")]
    pub a: Vec<BigInt>,
    #[serde(with = "serde_int::string_vec")]
    pub b: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeDecomposition {
    pub vertices: Vec<VertexId>,
    pub terms: Vec<WedgeTerm>,
}

/// `d * x ⊗ y` with `x` over part A and `y` over part B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTerm {
    #[serde(with = "serde_int::string")]
    pub d: BigInt,
    #[serde(with = "serde_int::string_vec")]
    pub x: Vec<BigInt>,
    #[serde(with = "serde_int::string_vec")]
    pub y: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDecomposition {
    pub part_a: Vec<VertexId>,
    pub part_b: Vec<VertexId>,
    pub terms: Vec<TensorTerm>,
}

/// A part `X_i` with its direction `nu_i`, indexed like `vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusPart {
    pub vertices: Vec<VertexId>,
    #[serde(with = "serde_int::string_vec")]
    pub nu: Vec<BigInt>,
}

/// A torus whose two generators map to `prod nu_i^{c_i}` and
/// `prod nu_i^{d_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCertificate {
    pub parts: Vec<TorusPart>,
    #[serde(with = "serde_int::string_vec")]
    pub c: Vec<BigInt>,
    #[serde(with = "serde_int::string_vec")]
    pub d: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarTorus {
    pub star: Star,
    pub torus: TorusCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Wedge(WedgeDecomposition),
    Tensor(TensorDecomposition),
    StarTori { stars: Vec<StarTorus> },
    Torus(TorusCertificate),
    Composite { components: Vec<Certificate> },
}

impl Certificate {
    /// Total genus of the surface the certificate describes.
    pub fn implied_genus(&self) -> usize {
        match self {
            Certificate::Wedge(w) => w.terms.len(),
            Certificate::Tensor(t) => t.terms.len(),
            Certificate::StarTori { stars } => stars.len(),
            Certificate::Torus(_) => 1,
            Certificate::Composite { components } => components.iter().map(Certificate::implied_genus).sum(),
        }
    }
}

pub fn verify_certificate(cert: &Certificate, alpha: &HomologyClass) -> bool {
    check_certificate(cert, alpha).is_ok()
}

/// Verifies `cert` against `alpha` and returns its implied genus, or the
/// first failed check.
pub fn check_certificate(cert: &Certificate, alpha: &HomologyClass) -> Result<usize, String> {
    let induced = induced_matrix(cert, alpha.ambient())?;
    let expected = alpha.connection_matrix();
    if induced != *expected.matrix.as_matrix() {
        let g = alpha.graph();
        let n = g.vertex_count();
        for i in 0..n {
            for j in i + 1..n {
                if induced[(i, j)] != expected.matrix.as_matrix()[(i, j)] {
                    return Err(format!(
                        "induced label on ({}, {}) is {}, class has {}",
                        g.vertex(i),
                        g.vertex(j),
                        induced[(i, j)],
                        expected.matrix.as_matrix()[(i, j)]
                    ));
                }
            }
        }
    }
    Ok(cert.implied_genus())
}

fn resolve(ambient: &OrientedGraph, names: &[VertexId]) -> Result<Vec<usize>, String> {
    let mut seen = std::collections::BTreeSet::new();
    names
        .iter()
        .map(|v| {
            let i = ambient.graph().index_of(v.as_str()).ok_or_else(|| format!("unknown vertex {v}"))?;
            if !seen.insert(i) {
                return Err(format!("vertex {v} listed twice"));
            }
            Ok(i)
        })
        .collect()
}

fn check_len(what: &str, got: usize, want: usize) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what} has {got} entries, expected {want}"))
    }
}

/// `m += a b^T - b a^T`
fn add_wedge(m: &mut IntMatrix, a: &[(usize, BigInt)], b: &[(usize, BigInt)]) {
    for (i, x) in a {
        for (j, y) in b {
            let p = x * y;
            m[(*i, *j)] += &p;
            m[(*j, *i)] -= &p;
        }
    }
}

fn nonzero_entries(index: &[usize], v: &[BigInt], scale: &BigInt) -> Vec<(usize, BigInt)> {
    index.iter().zip(v).filter(|(_, x)| !x.is_zero()).map(|(&i, x)| (i, x * scale)).collect()
}

fn require_clique(ambient: &OrientedGraph, vertices: &[usize], what: &str) -> Result<(), String> {
    let g = ambient.graph();
    for (k, &i) in vertices.iter().enumerate() {
        for &j in &vertices[k + 1..] {
            if i != j && !g.has_edge(i, j) {
                return Err(format!("{what}: {} and {} do not commute", g.vertex(i), g.vertex(j)));
            }
        }
    }
    Ok(())
}

fn induced_matrix(cert: &Certificate, ambient: &OrientedGraph) -> Result<IntMatrix, String> {
    let n = ambient.graph().vertex_count();
    let mut m = IntMatrix::zeros(n, n);
    match cert {
        Certificate::Wedge(w) => {
            let index = resolve(ambient, &w.vertices)?;
            for (k, t) in w.terms.iter().enumerate() {
                if !t.lambda.is_positive() {
                    return Err(format!("wedge term {k} has non-positive coefficient {}", t.lambda));
                }
                check_len("wedge vector a", t.a.len(), index.len())?;
                check_len("wedge vector b", t.b.len(), index.len())?;
                let a = nonzero_entries(&index, &t.a, &t.lambda);
                let b = nonzero_entries(&index, &t.b, &BigInt::from(1));
                let mut used: Vec<usize> = a.iter().chain(&b).map(|(i, _)| *i).collect();
                used.sort_unstable();
                used.dedup();
                require_clique(ambient, &used, &format!("wedge term {k}"))?;
                add_wedge(&mut m, &a, &b);
            }
        }
        Certificate::Tensor(t) => {
            let a_index = resolve(ambient, &t.part_a)?;
            let b_index = resolve(ambient, &t.part_b)?;
            if a_index.iter().any(|i| b_index.contains(i)) {
                return Err("tensor parts overlap".to_string());
            }
            let g = ambient.graph();
            for &i in &a_index {
                for &j in &b_index {
                    if !g.has_edge(i, j) {
                        return Err(format!("tensor parts: {} and {} do not commute", g.vertex(i), g.vertex(j)));
                    }
                }
            }
            for (k, term) in t.terms.iter().enumerate() {
                if term.d.is_zero() {
                    return Err(format!("tensor term {k} has coefficient zero"));
                }
                check_len("tensor vector x", term.x.len(), a_index.len())?;
                check_len("tensor vector y", term.y.len(), b_index.len())?;
                let x = nonzero_entries(&a_index, &term.x, &term.d);
                let y = nonzero_entries(&b_index, &term.y, &BigInt::from(1));
                add_wedge(&mut m, &x, &y);
            }
        }
        Certificate::Torus(t) => {
            m = torus_matrix(t, ambient)?;
        }
        Certificate::StarTori { stars } => {
            let stars_only: Vec<Star> = stars.iter().map(|s| s.star.clone()).collect();
            let star_sum = star_matrix(&stars_only, ambient)?;
            for (k, st) in stars.iter().enumerate() {
                let own = star_matrix(std::slice::from_ref(&st.star), ambient)?;
                if torus_matrix(&st.torus, ambient)? != own {
                    return Err(format!("torus {k} does not induce the labels of star at {}", st.star.center));
                }
            }
            m = star_sum;
        }
        Certificate::Composite { components } => {
            for c in components {
                let part = induced_matrix(c, ambient)?;
                for i in 0..n {
                    for j in 0..n {
                        m[(i, j)] += &part[(i, j)];
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Matrix of a family of stars with pairwise disjoint edge sets.
fn star_matrix(stars: &[Star], ambient: &OrientedGraph) -> Result<IntMatrix, String> {
    let g = ambient.graph();
    let n = g.vertex_count();
    let mut m = IntMatrix::zeros(n, n);
    let mut used = vec![false; g.edge_count()];
    for star in stars {
        let c = resolve(ambient, std::slice::from_ref(&star.center))?[0];
        if star.spokes.is_empty() {
            return Err(format!("star at {} has no spokes", star.center));
        }
        let leaves: Vec<VertexId> = star.spokes.iter().map(|s| s.leaf.clone()).collect();
        let leaf_index = resolve(ambient, &leaves)?;
        for (s, &l) in star.spokes.iter().zip(&leaf_index) {
            if s.label.is_zero() {
                return Err(format!("spoke {}-{} has label zero", star.center, s.leaf));
            }
            let e = g.edge_id(c, l).ok_or_else(|| format!("{}-{} is not an ambient edge", star.center, s.leaf))?;
            if std::mem::replace(&mut used[e], true) {
                return Err(format!("edge {}-{} lies in two stars", star.center, s.leaf));
            }
            m[(c, l)] += &s.label;
            m[(l, c)] -= &s.label;
        }
    }
    Ok(m)
}

fn torus_matrix(t: &TorusCertificate, ambient: &OrientedGraph) -> Result<IntMatrix, String> {
    let n = ambient.graph().vertex_count();
    check_len("torus vector c", t.c.len(), t.parts.len())?;
    check_len("torus vector d", t.d.len(), t.parts.len())?;
    let all: Vec<VertexId> = t.parts.iter().flat_map(|p| p.vertices.iter().cloned()).collect();
    resolve(ambient, &all)?;
    let mut a = vec![BigInt::zero(); n];
    let mut b = vec![BigInt::zero(); n];
    let mut active: Vec<(usize, usize)> = Vec::new();
    for (k, part) in t.parts.iter().enumerate() {
        let index = resolve(ambient, &part.vertices)?;
        check_len("torus direction nu", part.nu.len(), index.len())?;
        for (&i, x) in index.iter().zip(&part.nu) {
            if x.is_zero() {
                continue;
            }
            a[i] += x * &t.c[k];
            b[i] += x * &t.d[k];
            active.push((k, i));
        }
    }
    let g = ambient.graph();
    for (p, &(ki, i)) in active.iter().enumerate() {
        for &(kj, j) in &active[p + 1..] {
            if ki != kj && !g.has_edge(i, j) {
                return Err(format!("torus directions on {} and {} do not commute", g.vertex(i), g.vertex(j)));
            }
        }
    }
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m[(i, j)] = &a[i] * &b[j] - &b[i] * &a[j];
            }
        }
    }
    Ok(m)
}
