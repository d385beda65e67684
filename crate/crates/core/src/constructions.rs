//! Explicit extremal colourings.
//!
//! Each generator is deterministic. The property it witnesses (a tree cover
//! lower bound, a forbidden monochromatic subgraph, ...) is checked by the
//! solvers in `cover` and `ramsey`, not here.

use crate::colour::{binomial, k_subsets, ColourSet, MAX_COLOURS};
use crate::colouring::ColouringError;
use crate::{HostGraph, SetColouring};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("prime required, got {0}")]
    NotPrime(usize),
    #[error("parameters out of range: {0}")]
    Range(String),
    #[error("code has words at distance {distance} < k={k}")]
    Distance { distance: usize, k: usize },
    #[error(transparent)]
    Colouring(#[from] ColouringError),
}

fn range(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Range(msg.into())
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// The affine plane over Z_q. Point `(x, y)` is the integer `x*q + y`.
/// Class `a < q` holds the lines `y = a x + b`; class `q` holds the
/// vertical lines `x = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePlane {
    q: usize,
    classes: Vec<Vec<Vec<usize>>>,
}

impl AffinePlane {
    pub fn new(q: usize) -> Result<Self, ConstructionError> {
        if !is_prime(q) {
            return Err(ConstructionError::NotPrime(q));
        }
        let mut classes = Vec::with_capacity(q + 1);
        for a in 0..q {
            let lines = (0..q)
                .map(|b| (0..q).map(|x| x * q + (a * x + b) % q).collect())
                .collect();
            classes.push(lines);
        }
        classes.push((0..q).map(|c| (0..q).map(|y| c * q + y).collect()).collect());
        Ok(Self { q, classes })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn point_count(&self) -> usize {
        self.q * self.q
    }

    /// `q + 1` classes, each a list of `q` lines of `q` points.
    pub fn parallel_classes(&self) -> &[Vec<Vec<usize>>] {
        &self.classes
    }

    /// Index of the class containing the line through two distinct points.
    pub fn class_of(&self, p1: usize, p2: usize) -> usize {
        let q = self.q;
        let (x1, y1, x2, y2) = (p1 / q, p1 % q, p2 / q, p2 % q);
        if x1 == x2 {
            return q;
        }
        let dx = (x2 + q - x1) % q;
        let dy = (y2 + q - y1) % q;
        // dx^(q-2) is the inverse of dx mod a prime q
        let mut inv = 1;
        for _ in 0..q - 2 {
            inv = inv * dx % q;
        }
        dy * inv % q
    }
}

/// K_{q²} with r = q+1: each edge gets the single class of its line.
pub fn affine_tree_cover_colouring(q: usize) -> Result<SetColouring, ConstructionError> {
    let plane = AffinePlane::new(q)?;
    Ok(SetColouring::from_fn(
        HostGraph::complete(q * q),
        q + 1,
        Some(1),
        |u, v| ColourSet::singleton(plane.class_of(u, v)),
    )?)
}

/// K_{q²} with r = q+1, k = q: each edge gets every class except its own.
pub fn turan_affine_colouring(q: usize) -> Result<SetColouring, ConstructionError> {
    let plane = AffinePlane::new(q)?;
    let all = ColourSet::full(q + 1);
    Ok(SetColouring::from_fn(
        HostGraph::complete(q * q),
        q + 1,
        Some(q),
        |u, v| all.difference(ColourSet::singleton(plane.class_of(u, v))),
    )?)
}

/// K_r where edge ij gets `[r] \ {i, j}`.
pub fn two_missing_colouring(r: usize) -> Result<SetColouring, ConstructionError> {
    if !(3..=MAX_COLOURS).contains(&r) {
        return Err(range(format!("need 3 <= r <= 64, got r={r}")));
    }
    Ok(SetColouring::from_fn(
        HostGraph::complete(r),
        r,
        Some(r - 2),
        |u, v| ColourSet::full(r).difference(ColourSet::from_colours([u, v])),
    )?)
}

/// K_{C(r,k), m}: side A is the k-subsets of `[r]` in lex order, and every
/// edge at `a` carries the subset `a`.
pub fn bipartite_subsets_colouring(
    r: usize,
    k: usize,
    m: usize,
) -> Result<SetColouring, ConstructionError> {
    if k == 0 || k >= r || r > MAX_COLOURS || m == 0 {
        return Err(range(format!("need 1 <= k < r <= 64 and m >= 1, got r={r}, k={k}, m={m}")));
    }
    if binomial(r as u64, k as u64) > 1 << 20 {
        return Err(range(format!("C({r},{k}) vertices is too many")));
    }
    let subsets = k_subsets(ColourSet::full(r), k);
    Ok(SetColouring::from_fn(
        HostGraph::bipartite(subsets.len(), m),
        r,
        Some(k),
        |a, _| subsets[a],
    )?)
}

/// Ordered m-tuples of pairwise disjoint k-subsets of `[r]`, in lex order,
/// with `m = ⌊r/k⌋ - 1`.
pub fn disjoint_tuples(r: usize, k: usize) -> Vec<Vec<ColourSet>> {
    let m = (r / k).saturating_sub(1);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn extend(
        r: usize,
        k: usize,
        m: usize,
        used: ColourSet,
        cur: &mut Vec<ColourSet>,
        out: &mut Vec<Vec<ColourSet>>,
    ) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for s in k_subsets(ColourSet::full(r).difference(used), k) {
            cur.push(s);
            extend(r, k, m, used.union(s), cur, out);
            cur.pop();
        }
    }
    extend(r, k, m, ColourSet::EMPTY, &mut cur, &mut out);
    out
}

/// K_{|B|, m} with `m = ⌊r/k⌋ - 1`. The first side is the tuple set B from
/// [`disjoint_tuples`]; the second side is the index set `0..m`. Edge
/// `(x, i)` carries `x_i`.
pub fn bipartite_tuples_colouring(r: usize, k: usize) -> Result<SetColouring, ConstructionError> {
    if k == 0 || r > MAX_COLOURS || r / k < 2 {
        return Err(range(format!("need ⌊r/k⌋ >= 2, got r={r}, k={k}")));
    }
    let count: u64 = (0..r / k - 1)
        .map(|i| binomial((r - i * k) as u64, k as u64))
        .fold(1u64, |a, b| a.saturating_mul(b));
    if count > 1 << 20 {
        return Err(range(format!("{count} tuples is too many")));
    }
    let tuples = disjoint_tuples(r, k);
    let n = tuples.len();
    Ok(SetColouring::from_fn(
        HostGraph::bipartite(n, r / k - 1),
        r,
        Some(k),
        |x, i| tuples[x][i - n],
    )?)
}

/// K_{2^{⌊r/k⌋-1}(ℓ-1)} with no monochromatic C_ℓ. The base K_{ℓ-1} uses
/// colours `0..k`; doubling step `j` gives every cross edge the colours
/// `jk..(j+1)k`.
pub fn doubling_cycle_colouring(
    r: usize,
    k: usize,
    l: usize,
) -> Result<SetColouring, ConstructionError> {
    if l < 3 || l.is_multiple_of(2) || k == 0 || r < k || r > MAX_COLOURS {
        return Err(range(format!("need odd ℓ >= 3 and 1 <= k <= r <= 64, got r={r}, k={k}, ℓ={l}")));
    }
    let steps = r / k - 1;
    if steps > 16 {
        return Err(range(format!("2^{steps} copies is too many")));
    }
    let n = (l - 1) << steps;
    Ok(SetColouring::from_fn(HostGraph::complete(n), r, Some(k), |u, v| {
        let block = (u / (l - 1)) ^ (v / (l - 1));
        if block == 0 {
            ColourSet::range(0, k)
        } else {
            // highest differing doubling bit decides the step
            let j = usize::BITS as usize - block.leading_zeros() as usize;
            ColourSet::range(j * k, k)
        }
    })?)
}

/// Binary words of length r with pairwise Hamming distance at least k.
///
/// Starts from `{0^k, 1^k}`; each step appends `0^{k-1}` to every word and
/// adds a clone of each word with its last entry flipped and `1^{k-1}`
/// appended. Lengths not of the form `k + m(k-1)` are padded with zeros.
pub fn distance_code(r: usize, k: usize) -> Result<Vec<Vec<bool>>, ConstructionError> {
    if k < 2 || r < k || r > MAX_COLOURS {
        return Err(range(format!("need 2 <= k <= r <= 64, got r={r}, k={k}")));
    }
    let steps = (r - k) / (k - 1);
    if steps > 16 {
        return Err(range(format!("2^{} words is too many", steps + 1)));
    }
    let mut words = vec![vec![false; k], vec![true; k]];
    for _ in 0..steps {
        let mut clones = Vec::with_capacity(words.len());
        for w in words.iter_mut() {
            let mut c = w.clone();
            let last = c.len() - 1;
            c[last] = !c[last];
            c.extend(std::iter::repeat_n(true, k - 1));
            w.extend(std::iter::repeat_n(false, k - 1));
            clones.push(c);
        }
        words.extend(clones);
    }
    for w in words.iter_mut() {
        w.resize(r, false);
    }
    Ok(words)
}

pub fn hamming(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// K_{|code|} where edge vw gets the k smallest coordinates at which the
/// words differ. Every colour class is bipartite.
pub fn code_colouring(code: &[Vec<bool>], k: usize) -> Result<SetColouring, ConstructionError> {
    let r = code.first().map_or(0, |w| w.len());
    if code.len() < 2 || k == 0 || r > MAX_COLOURS || code.iter().any(|w| w.len() != r) {
        return Err(range("need at least two words of one length <= 64 and k >= 1"));
    }
    for (i, a) in code.iter().enumerate() {
        for b in &code[i + 1..] {
            let d = hamming(a, b);
            if d < k {
                return Err(ConstructionError::Distance { distance: d, k });
            }
        }
    }
    Ok(SetColouring::from_fn(
        HostGraph::complete(code.len()),
        r,
        Some(k),
        |u, v| {
            let diff = (0..r).filter(|&i| code[u][i] != code[v][i]);
            ColourSet::from_colours(diff.take(k))
        },
    )?)
}

/// Class sizes 1, 3, 6, 12, ...: each class is two more than all earlier
/// classes together.
pub fn path_partition_class_sizes(r: usize) -> Vec<usize> {
    let mut sizes = Vec::with_capacity(r);
    let mut total = 0;
    for i in 0..r {
        let s = if i == 0 { 1 } else { total + 2 };
        sizes.push(s);
        total += s;
    }
    sizes
}

/// K_n on classes V_0..V_{r-1}; an edge whose lower endpoint class is `i`
/// gets `[r] \ {i}`.
pub fn path_partition_lb_colouring(r: usize) -> Result<SetColouring, ConstructionError> {
    if !(2..=12).contains(&r) {
        return Err(range(format!("need 2 <= r <= 12, got r={r}")));
    }
    let sizes = path_partition_class_sizes(r);
    let class: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect();
    Ok(SetColouring::from_fn(
        HostGraph::complete(class.len()),
        r,
        Some(r - 1),
        |u, v| ColourSet::full(r).difference(ColourSet::singleton(class[u].min(class[v]))),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_plane_small_orders() {
        let p2 = AffinePlane::new(2).unwrap();
        assert_eq!(p2.point_count(), 4);
        assert_eq!(p2.parallel_classes().len(), 3);
        assert!(p2.parallel_classes().iter().all(|c| c.len() == 2));
        assert_eq!(AffinePlane::new(4), Err(ConstructionError::NotPrime(4)));
        assert!(AffinePlane::new(1).is_err());
    }

    #[test]
    fn lines_agree_with_class_of() {
        for q in [2, 3, 5] {
            let p = AffinePlane::new(q).unwrap();
            for (ci, class) in p.parallel_classes().iter().enumerate() {
                for line in class {
                    for &a in line {
                        for &b in line {
                            if a != b {
                                assert_eq!(p.class_of(a, b), ci);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn turan_q2_colour_graphs_are_matching_complements() {
        let c = turan_affine_colouring(2).unwrap();
        for col in 0..3 {
            let missing: Vec<_> = c.edges().filter(|(_, _, s)| !s.contains(col)).collect();
            assert_eq!(missing.len(), 2);
            let (a, b) = (missing[0], missing[1]);
            assert!(![a.0, a.1].contains(&b.0) && ![a.0, a.1].contains(&b.1));
        }
    }

    #[test]
    fn two_missing_shape() {
        let c = two_missing_colouring(5).unwrap();
        assert_eq!(c.uniform_k(), Some(3));
        assert_eq!(c.colour(1, 3), ColourSet::from_colours([0, 2, 4]));
        assert!(two_missing_colouring(2).is_err());
    }

    #[test]
    fn tuples_sizes() {
        assert_eq!(disjoint_tuples(4, 2).len(), 6);
        assert_eq!(disjoint_tuples(4, 1).len(), 24);
        let c = bipartite_tuples_colouring(6, 2).unwrap();
        assert_eq!(c.vertex_count(), 92);
        assert_eq!(c.host(), HostGraph::bipartite(90, 2));
        assert!(bipartite_tuples_colouring(3, 2).is_err());
    }

    #[test]
    fn subsets_layout() {
        let c = bipartite_subsets_colouring(3, 1, 1).unwrap();
        assert_eq!(c.host(), HostGraph::bipartite(3, 1));
        assert_eq!(c.colour(2, 3), ColourSet::singleton(2));
        assert!(bipartite_subsets_colouring(3, 3, 1).is_err());
    }

    #[test]
    fn doubling_sizes() {
        assert_eq!(doubling_cycle_colouring(2, 2, 5).unwrap().vertex_count(), 4);
        assert_eq!(doubling_cycle_colouring(4, 2, 3).unwrap().vertex_count(), 4);
        assert_eq!(doubling_cycle_colouring(6, 2, 5).unwrap().vertex_count(), 16);
        assert!(doubling_cycle_colouring(4, 2, 4).is_err());
    }

    #[test]
    fn distance_code_examples() {
        let c = distance_code(2, 2).unwrap();
        assert_eq!(c, vec![vec![false, false], vec![true, true]]);
        for (r, k) in [(3, 2), (4, 2), (7, 3), (8, 3), (10, 4)] {
            let code = distance_code(r, k).unwrap();
            assert_eq!(code.len(), 1 << ((r - 1) / (k - 1)), "r={r} k={k}");
            for (i, a) in code.iter().enumerate() {
                assert_eq!(a.len(), r);
                for b in &code[i + 1..] {
                    assert!(hamming(a, b) >= k);
                }
            }
        }
        assert!(distance_code(4, 1).is_err());
    }

    #[test]
    fn code_colouring_rejects_close_words() {
        let code = vec![vec![false, false, false], vec![true, false, false]];
        assert_eq!(
            code_colouring(&code, 2),
            Err(ConstructionError::Distance { distance: 1, k: 2 })
        );
    }

    #[test]
    fn path_partition_sizes() {
        assert_eq!(path_partition_class_sizes(4), vec![1, 3, 6, 12]);
        let c = path_partition_lb_colouring(2).unwrap();
        assert_eq!(c.vertex_count(), 4);
        assert_eq!(c.colour(0, 3), ColourSet::singleton(1));
        assert_eq!(c.colour(1, 2), ColourSet::singleton(0));
    }
}
