//! Color refinement with individualization: canonical forms for small
//! graphs and an exact pairwise isomorphism test.

use std::cmp::Ordering;

use crate::graph::Graph;
use crate::rng::mix64;

/// Ordered partition of the vertex set. Vertex order inside a cell carries
/// no meaning.
type Cells = Vec<Vec<usize>>;

/// Iterated degree refinement. Each round splits every cell by the vector
/// of neighbor counts into the current cells; sub-cells are ordered by that
/// vector, so the result depends only on the graph and the input cell
/// order. A summary of every split is appended to `trace`.
fn refine(g: &Graph, cells: &mut Cells, trace: &mut Vec<u64>) {
    let n = g.order();
    let mut cell_of = vec![0usize; n];
    let mut sig: Vec<u32> = Vec::new();
    loop {
        let k = cells.len();
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        sig.clear();
        sig.resize(n * k, 0);
        for c in cells.iter().filter(|c| c.len() > 1) {
            for &v in c {
                for &x in g.adjacent(v) {
                    sig[v * k + cell_of[x]] += 1;
                }
            }
        }
        let row = |v: usize| &sig[v * k..(v + 1) * k];

        let mut next: Cells = Vec::with_capacity(k);
        let mut round = mix64(k as u64);
        for c in cells.drain(..) {
            if c.len() == 1 {
                next.push(c);
                continue;
            }
            let mut c = c;
            c.sort_unstable_by(|&a, &b| row(a).cmp(row(b)));
            let mut start = 0;
            for end in 1..=c.len() {
                if end == c.len() || row(c[end]) != row(c[start]) {
                    let h = row(c[start])
                        .iter()
                        .fold(mix64((end - start) as u64), |acc, &x| mix64(acc ^ x as u64));
                    round = mix64(round ^ h);
                    next.push(c[start..end].to_vec());
                    start = end;
                }
            }
        }
        trace.push(round);
        let done = next.len() == k;
        *cells = next;
        if done {
            break;
        }
    }
}

fn individualize(cells: &Cells, i: usize, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..i]);
    out.push(vec![v]);
    out.push(cells[i].iter().copied().filter(|&x| x != v).collect());
    out.extend_from_slice(&cells[i + 1..]);
    out
}

fn first_open(cells: &Cells) -> Option<usize> {
    cells.iter().position(|c| c.len() > 1)
}

fn unit_cells(g: &Graph) -> Cells {
    vec![(0..g.order()).collect()]
}

/// Upper-triangle adjacency bits under a discrete ordering, packed
/// column by column (bit j(j-1)/2 + i for positions i < j).
fn certificate(g: &Graph, cells: &Cells) -> Vec<u64> {
    let n = g.order();
    let mut pos = vec![0usize; n];
    for (i, c) in cells.iter().enumerate() {
        pos[c[0]] = i;
    }
    let mut bits = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64).max(1)];
    for (u, v) in g.edge_list() {
        let (i, j) = if pos[u] < pos[v] { (pos[u], pos[v]) } else { (pos[v], pos[u]) };
        let b = j * (j - 1) / 2 + i;
        bits[b / 64] |= 1 << (b % 64);
    }
    bits
}

/// A complete isomorphism invariant: two graphs have equal canonical forms
/// iff they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    order: usize,
    bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The canonical representative.
    pub fn to_graph(&self) -> Graph {
        let bit = |i: usize, j: usize| {
            let b = j * (j - 1) / 2 + i;
            self.bits[b / 64] & (1 << (b % 64)) != 0
        };
        Graph::from_fn(self.order, bit)
    }
}

struct Best {
    trace: Vec<u64>,
    cert: Vec<u64>,
}

/// Explores the full individualization-refinement tree and keeps the leaf
/// with the largest (trace, certificate). Subtrees whose trace already falls
/// below the best are cut. Exponential in the worst case; meant for the
/// small orders of the catalogue.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let mut cells = unit_cells(g);
    let mut trace = Vec::new();
    refine(g, &mut cells, &mut trace);
    let mut best: Option<Best> = None;
    descend(g, cells, trace, &mut best);
    let best = best.expect("search tree has at least one leaf");
    CanonicalForm {
        order: g.order(),
        bits: best.cert,
    }
}

fn prefix_cmp(a: &[u64], b: &[u64]) -> Ordering {
    let m = a.len().min(b.len());
    a[..m].cmp(&b[..m])
}

fn descend(g: &Graph, cells: Cells, trace: Vec<u64>, best: &mut Option<Best>) {
    if let Some(b) = best {
        if prefix_cmp(&trace, &b.trace) == Ordering::Less {
            return;
        }
    }
    let Some(i) = first_open(&cells) else {
        let cert = certificate(g, &cells);
        let better = match best {
            None => true,
            Some(b) => (&trace, &cert) > (&b.trace, &b.cert),
        };
        if better {
            *best = Some(Best { trace, cert });
        }
        return;
    };
    for &v in &cells[i] {
        let mut child = individualize(&cells, i, v);
        let mut t = trace.clone();
        refine(g, &mut child, &mut t);
        descend(g, child, t, best);
    }
}

/// Exact isomorphism test by simultaneous refinement and backtracking: a
/// vertex of `a` is individualized and matched in turn against every vertex
/// of the corresponding cell of `b`.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let degrees = |g: &Graph| {
        let mut d: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degrees(a) != degrees(b) {
        return false;
    }
    let (mut ca, mut cb) = (unit_cells(a), unit_cells(b));
    let (mut ta, mut tb) = (Vec::new(), Vec::new());
    refine(a, &mut ca, &mut ta);
    refine(b, &mut cb, &mut tb);
    ta == tb && same_shape(&ca, &cb) && matches(a, &ca, b, &cb)
}

fn same_shape(a: &Cells, b: &Cells) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.len() == y.len())
}

fn matches(a: &Graph, ca: &Cells, b: &Graph, cb: &Cells) -> bool {
    let Some(i) = first_open(ca) else {
        let map: Vec<(usize, usize)> = ca.iter().zip(cb).map(|(x, y)| (x[0], y[0])).collect();
        let mut image = vec![0usize; a.order()];
        for &(x, y) in &map {
            image[x] = y;
        }
        return a.edge_list().iter().all(|&(u, v)| b.has_edge(image[u], image[v]));
    };
    let v = ca[i][0];
    let mut child_a = individualize(ca, i, v);
    let mut ta = Vec::new();
    refine(a, &mut child_a, &mut ta);
    cb[i].iter().any(|&w| {
        let mut child_b = individualize(cb, i, w);
        let mut tb = Vec::new();
        refine(b, &mut child_b, &mut tb);
        ta == tb && same_shape(&child_a, &child_b) && matches(a, &child_a, b, &child_b)
    })
}
