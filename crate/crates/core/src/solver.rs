//! Genus bounds and certificates.
//!
//! The support is split into connected components. Each component is tried,
//! in order, as a rank-two class (one torus), a class on a complete full
//! subgraph (wedge decomposition), a class inside an ambient complete
//! bipartite subgraph (pure tensors) and a class on a tree (a star cover of
//! tori). A component that fits none of these gets the cap bound below and
//! its star cover number above, and no exact value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::certificate::{
    check_certificate, Certificate, StarTorus, TensorDecomposition, TensorTerm, TorusCertificate, TorusPart,
    WedgeDecomposition, WedgeTerm,
};
use crate::graph::{Graph, VertexId};
use crate::homology::{HomologyClass, Support};
use crate::linalg::{self, skew_normal_form, smith_normal_form, IntMatrix, SkewIntMatrix};
use crate::star_cover::{min_star_cover, sc_cardinality, Star, StarCoverError};

/// Upper limit on part-assignments tried when looking for an ambient
/// complete bipartite subgraph around a disconnected bipartite support.
const BIPARTITION_LIMIT: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("the full subgraph on the support vertices is not complete")]
    NotComplete,
    #[error("no complete bipartite subgraph of the ambient graph contains the support")]
    NotBipartiteCoverable,
    #[error("connection matrix has rank {0}, not 2")]
    RankNotTwo(usize),
    #[error("support of a rank-two class is not complete multipartite")]
    SupportNotMultipartite,
    #[error("wedge factors are not parallel on a part")]
    DependenceFailure,
    #[error("the class is zero")]
    ZeroClass,
    #[error("exact vertex cover needs {size} vertices in one component, budget is {budget}")]
    SizeLimitExceeded { size: usize, budget: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<StarCoverError> for SolverError {
    fn from(e: StarCoverError) -> Self {
        match e {
            StarCoverError::ZeroClass => SolverError::ZeroClass,
            StarCoverError::SizeLimitExceeded { size, budget } => SolverError::SizeLimitExceeded { size, budget },
            StarCoverError::InvalidStar(s) => SolverError::Internal(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Zero,
    Rank2Torus,
    Complete,
    Bipartite,
    Forest,
    BoundsOnly,
    Componentwise,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Zero => "zero",
            Method::Rank2Torus => "rank2-torus",
            Method::Complete => "complete",
            Method::Bipartite => "bipartite",
            Method::Forest => "forest",
            Method::BoundsOnly => "bounds-only",
            Method::Componentwise => "componentwise",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    pub method: Method,
    pub certificate: Option<Certificate>,
    /// Per-component results when the support is disconnected.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<GenusResult>,
}

impl GenusResult {
    fn exact(value: usize, method: Method, certificate: Certificate) -> Self {
        GenusResult { lower: value, upper: value, exact: Some(value), method, certificate: Some(certificate), components: vec![] }
    }
}

fn support_index(support: &Support) -> Vec<VertexId> {
    support.graph().vertices().to_vec()
}

fn full_subgraph_is_complete(g: &Graph, vertices: &[usize]) -> bool {
    vertices.iter().enumerate().all(|(k, &i)| vertices[k + 1..].iter().all(|&j| g.has_edge(i, j)))
}

/// Connection matrix restricted to the support vertices.
fn support_matrix(alpha: &HomologyClass, support: &Support) -> SkewIntMatrix {
    let m = alpha.connection_matrix();
    let idx = support.ambient_vertices();
    SkewIntMatrix::new(m.matrix.as_matrix().select(idx, idx)).expect("principal submatrix of a skew matrix")
}

/// `alpha` as a sum of `cap_bound(alpha)` elementary wedges, read off the
/// skew normal form. Needs the support vertices to span a complete subgraph.
pub fn wedge_decompose(alpha: &HomologyClass) -> Result<WedgeDecomposition, SolverError> {
    let support = alpha.support();
    if !full_subgraph_is_complete(alpha.graph(), support.ambient_vertices()) {
        return Err(SolverError::NotComplete);
    }
    let form = skew_normal_form(&support_matrix(alpha, &support));
    let terms = form
        .lambdas
        .iter()
        .enumerate()
        .map(|(k, lambda)| WedgeTerm {
            lambda: lambda.clone(),
            a: form.u_inv.column(2 * k),
            b: form.u_inv.column(2 * k + 1),
        })
        .collect();
    Ok(WedgeDecomposition { vertices: support_index(&support), terms })
}

/// A bipartition `(A, B)` of the support vertices (ambient indices) such
/// that every support edge crosses it and every pair in `A x B` is an
/// ambient edge. `A` holds the smallest support vertex.
pub(crate) fn bipartite_closure(alpha: &HomologyClass) -> Option<(Vec<usize>, Vec<usize>)> {
    let support = alpha.support();
    let sg = support.graph();
    let n = sg.vertex_count();
    let (count, label) = sg.component_labels();
    let mut color = vec![u8::MAX; n];
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in sg.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
    }
    let g = alpha.graph();
    let map = support.ambient_vertices();
    let combos = 1usize.checked_shl(count.saturating_sub(1) as u32).unwrap_or(usize::MAX).min(BIPARTITION_LIMIT);
    for mask in 0..combos {
        // Component 0 is never flipped; component c > 0 flips on bit c - 1.
        let side = |v: usize| {
            let c = label[v];
            let flip = c > 0 && c - 1 < usize::BITS as usize && mask >> (c - 1) & 1 == 1;
            color[v] ^ flip as u8
        };
        let a: Vec<usize> = (0..n).filter(|&v| side(v) == 0).map(|v| map[v]).collect();
        let b: Vec<usize> = (0..n).filter(|&v| side(v) == 1).map(|v| map[v]).collect();
        if a.iter().all(|&i| b.iter().all(|&j| g.has_edge(i, j))) {
            return Some((a, b));
        }
    }
    None
}

/// `alpha` as a sum of `cap_bound(alpha)` pure tensors, read off the Smith
/// form of the label block between the two sides of a bipartition.
pub fn tensor_decompose(alpha: &HomologyClass) -> Result<TensorDecomposition, SolverError> {
    let (a, b) = bipartite_closure(alpha).ok_or(SolverError::NotBipartiteCoverable)?;
    let mut block = IntMatrix::zeros(a.len(), b.len());
    for (r, &i) in a.iter().enumerate() {
        for (c, &j) in b.iter().enumerate() {
            block[(r, c)] = alpha.label_at(i, j).unwrap_or_default();
        }
    }
    let smith = smith_normal_form(&block);
    let mut terms = Vec::new();
    for (k, d) in smith.invariant_factors().into_iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let mut x = smith.u_inv.column(k);
        let mut y = smith.v_inv.row(k).to_vec();
        if x.iter().find(|v| !v.is_zero()).is_some_and(Signed::is_negative) {
            x.iter_mut().for_each(|v| *v = -&*v);
            y.iter_mut().for_each(|v| *v = -&*v);
        }
        terms.push(TensorTerm { d, x, y });
    }
    let g = alpha.graph();
    Ok(TensorDecomposition {
        part_a: a.iter().map(|&i| g.vertex(i).clone()).collect(),
        part_b: b.iter().map(|&j| g.vertex(j).clone()).collect(),
        terms,
    })
}

fn gcd_of(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Coefficient `r` with `v = r * nu`, if there is one.
fn coordinate(v: &[BigInt], nu: &[BigInt]) -> Option<BigInt> {
    let k = nu.iter().position(|x| !x.is_zero())?;
    let (r, rem) = v[k].div_rem(&nu[k]);
    (rem.is_zero() && v.iter().zip(nu).all(|(x, n)| *x == &r * n)).then_some(r)
}

/// Brings `(c, d)` to a canonical representative of its `SL_2(Z)` orbit;
/// the pairings `c_i d_j - d_i c_j` are unchanged.
fn canonical_pair(c: &mut [BigInt], d: &mut [BigInt]) {
    let Some(k) = (0..c.len()).find(|&k| !c[k].is_zero() || !d[k].is_zero()) else {
        return;
    };
    let sub = |x: &mut [BigInt], y: &[BigInt], q: &BigInt| x.iter_mut().zip(y).for_each(|(x, y)| *x -= q * y);
    while !d[k].is_zero() {
        let q = c[k].div_floor(&d[k]);
        sub(c, d, &q);
        // (c, d) -> (d, -c)
        for (x, y) in c.iter_mut().zip(d.iter_mut()) {
            let old = std::mem::take(x);
            *x = std::mem::take(y);
            *y = -old;
        }
    }
    if c[k].is_negative() {
        c.iter_mut().chain(d.iter_mut()).for_each(|x| *x = -&*x);
    }
    if let Some(m) = (0..d.len()).find(|&m| !d[m].is_zero()) {
        let r = c[m].mod_floor(&d[m].abs());
        let q = (&c[m] - r) / &d[m];
        sub(c, d, &q);
    }
}

/// A single torus representing a class whose connection matrix has rank 2.
pub fn torus_certificate(alpha: &HomologyClass) -> Result<TorusCertificate, SolverError> {
    let rank = alpha.rank();
    if rank != 2 {
        return Err(SolverError::RankNotTwo(rank));
    }
    let support = alpha.support();
    let parts = support.graph().complete_multipartite_parts().ok_or(SolverError::SupportNotMultipartite)?;
    let form = skew_normal_form(&support_matrix(alpha, &support));
    let lambda = &form.lambdas[0];
    let a_full: Vec<BigInt> = form.u_inv.column(0).iter().map(|x| x * lambda).collect();
    let b_full = form.u_inv.column(1);
    let sg = support.graph();

    let mut cert_parts = Vec::new();
    let (mut c, mut d) = (Vec::new(), Vec::new());
    for part in parts {
        let idx: Vec<usize> = part.iter().map(|v| sg.index_of(v.as_str()).expect("support vertex")).collect();
        let a: Vec<BigInt> = idx.iter().map(|&i| a_full[i].clone()).collect();
        let b: Vec<BigInt> = idx.iter().map(|&i| b_full[i].clone()).collect();
        let base = if a.iter().any(|x| !x.is_zero()) { &a } else { &b };
        let g = gcd_of(base);
        if g.is_zero() {
            continue;
        }
        let mut nu: Vec<BigInt> = base.iter().map(|x| x / &g).collect();
        if nu.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            nu.iter_mut().for_each(|x| *x = -&*x);
        }
        c.push(coordinate(&a, &nu).ok_or(SolverError::DependenceFailure)?);
        d.push(coordinate(&b, &nu).ok_or(SolverError::DependenceFailure)?);
        cert_parts.push(TorusPart { vertices: part, nu });
    }
    canonical_pair(&mut c, &mut d);
    Ok(TorusCertificate { parts: cert_parts, c, d })
}

/// The torus a labelled star maps to: the center, and the leaves weighted
/// by their labels.
pub fn star_to_torus(star: &Star) -> TorusCertificate {
    TorusCertificate {
        parts: vec![
            TorusPart { vertices: vec![star.center.clone()], nu: vec![BigInt::one()] },
            TorusPart {
                vertices: star.spokes.iter().map(|s| s.leaf.clone()).collect(),
                nu: star.spokes.iter().map(|s| s.label.clone()).collect(),
            },
        ],
        c: vec![BigInt::one(), BigInt::zero()],
        d: vec![BigInt::zero(), BigInt::one()],
    }
}

/// Whether `alpha` is the image of a single torus, i.e. its connection
/// matrix has rank 2.
pub fn torus_representable(alpha: &HomologyClass) -> Result<bool, SolverError> {
    if alpha.is_zero() {
        return Err(SolverError::ZeroClass);
    }
    Ok(alpha.rank() == 2)
}

/// Checks an exact certificate before it is reported.
fn certified(alpha: &HomologyClass, value: usize, method: Method, cert: Certificate) -> Result<GenusResult, SolverError> {
    match check_certificate(&cert, alpha) {
        Ok(g) if g == value => Ok(GenusResult::exact(value, method, cert)),
        Ok(g) => Err(SolverError::Internal(format!("{} certificate has genus {g}, expected {value}", method.as_str()))),
        Err(reason) => Err(SolverError::Internal(format!("{} certificate rejected: {reason}", method.as_str()))),
    }
}

fn component_genus(alpha: &HomologyClass, budget: usize) -> Result<GenusResult, SolverError> {
    let rank = alpha.rank();
    let cap = rank / 2;
    if cap == 0 {
        return certified(alpha, 0, Method::Zero, Certificate::Composite { components: vec![] });
    }
    if rank == 2 {
        return certified(alpha, 1, Method::Rank2Torus, Certificate::Torus(torus_certificate(alpha)?));
    }
    let support = alpha.support();
    if full_subgraph_is_complete(alpha.graph(), support.ambient_vertices()) {
        let w = wedge_decompose(alpha)?;
        return certified(alpha, cap, Method::Complete, Certificate::Wedge(w));
    }
    if bipartite_closure(alpha).is_some() {
        let t = tensor_decompose(alpha)?;
        return certified(alpha, cap, Method::Bipartite, Certificate::Tensor(t));
    }
    let sc = sc_cardinality(alpha, budget)?;
    if support.graph().is_forest() && sc == cap {
        let cover = min_star_cover(alpha, budget)?;
        let stars = cover.stars.into_iter().map(|star| StarTorus { torus: star_to_torus(&star), star }).collect();
        return certified(alpha, cap, Method::Forest, Certificate::StarTori { stars });
    }
    if sc < cap {
        return Err(SolverError::Internal(format!("star cover number {sc} is below the cap bound {cap}")));
    }
    Ok(GenusResult { lower: cap, upper: sc, exact: None, method: Method::BoundsOnly, certificate: None, components: vec![] })
}

/// Genus bounds for `alpha`, exact with a verified certificate whenever
/// every support component falls in a solved family.
pub fn genus(alpha: &HomologyClass, budget: usize) -> Result<GenusResult, SolverError> {
    let parts = alpha.split_components();
    match parts.len() {
        0 => certified(alpha, 0, Method::Zero, Certificate::Composite { components: vec![] }),
        1 => component_genus(alpha, budget),
        _ => {
            let results = parts.iter().map(|p| component_genus(p, budget)).collect::<Result<Vec<_>, _>>()?;
            let lower = results.iter().map(|r| r.lower).sum();
            let upper = results.iter().map(|r| r.upper).sum();
            let all_exact = results.iter().all(|r| r.exact.is_some());
            let certificate = all_exact.then(|| Certificate::Composite {
                components: results.iter().map(|r| r.certificate.clone().expect("exact results carry one")).collect(),
            });
            if let Some(cert) = &certificate {
                match check_certificate(cert, alpha) {
                    Ok(g) if g == lower => {}
                    Ok(g) => return Err(SolverError::Internal(format!("composite certificate has genus {g}, expected {lower}"))),
                    Err(reason) => return Err(SolverError::Internal(format!("composite certificate rejected: {reason}"))),
                }
            }
            Ok(GenusResult {
                lower,
                upper,
                exact: all_exact.then_some(lower),
                method: Method::Componentwise,
                certificate,
                components: results,
            })
        }
    }
}

/// The rank of the label block used by [`tensor_decompose`].
pub fn label_block_rank(alpha: &HomologyClass) -> Option<usize> {
    let (a, b) = bipartite_closure(alpha)?;
    let mut block = IntMatrix::zeros(a.len(), b.len());
    for (r, &i) in a.iter().enumerate() {
        for (c, &j) in b.iter().enumerate() {
            block[(r, c)] = alpha.label_at(i, j).unwrap_or_default();
        }
    }
    Some(linalg::rank(&block))
}
