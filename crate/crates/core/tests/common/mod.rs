//! Brute-force oracles shared by the integration tests. Written against the
//! definitions only; none of them call the optimized library paths they
//! are compared with.

#![allow(dead_code)]

use coordgame::dynamics::StrategyProfile;
use coordgame::graph::Graph;

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let edges = g.edge_list();
    permutations(g.order())
        .into_iter()
        .filter(|s| edges.iter().all(|&(u, v)| g.has_edge(s[u], s[v])))
        .collect()
}

/// Set-partition key: each vertex mapped to the smallest vertex of its block.
pub fn block_key(labels: &[usize]) -> Vec<usize> {
    (0..labels.len())
        .map(|v| (0..labels.len()).find(|&w| labels[w] == labels[v]).unwrap())
        .collect()
}

/// Labels after moving vertex v to sigma[v].
pub fn push_forward(labels: &[usize], sigma: &[usize]) -> Vec<usize> {
    let mut out = vec![0; labels.len()];
    for (v, &l) in labels.iter().enumerate() {
        out[sigma[v]] = l;
    }
    out
}

/// Same blocks up to an automorphism, labels ignored.
pub fn equivalent_by_automorphism(auts: &[Vec<usize>], a: &[usize], b: &[usize]) -> bool {
    let kb = block_key(b);
    auts.iter().any(|s| block_key(&push_forward(a, s)) == kb)
}

/// Per-vertex payoff comparison straight from the definition.
pub fn nash_oracle(g: &Graph, labels: &[usize]) -> bool {
    let n = g.order();
    (0..n).all(|v| {
        let count = |l: usize| (0..n).filter(|&x| g.has_edge(v, x) && labels[x] == l).count();
        let own = count(labels[v]);
        labels.iter().all(|&l| count(l) <= own)
    })
}

/// Best responses of v among `0..c` plus its own strategy, from the definition.
pub fn best_responses(g: &Graph, u: &[u32], v: usize) -> Vec<u32> {
    let n = g.order();
    let bound = u.iter().copied().max().unwrap() + 1;
    let score = |s: u32| (0..n).filter(|&x| g.has_edge(v, x) && u[x] == s).count();
    let best = (0..bound).map(score).max().unwrap();
    // strategies nobody uses score 0; they only tie when v is isolated
    (0..bound).filter(|&s| score(s) == best && (best > 0 || s == u[v])).collect()
}

/// Every successor of `u` with its probability.
pub fn successors(g: &Graph, u: &[u32]) -> Vec<(Vec<u32>, f64)> {
    let options: Vec<Vec<u32>> = (0..u.len())
        .map(|v| {
            let br = best_responses(g, u, v);
            if br.contains(&u[v]) {
                vec![u[v]]
            } else {
                br
            }
        })
        .collect();
    let mut out = vec![(Vec::with_capacity(u.len()), 1.0)];
    for opts in &options {
        let w = 1.0 / opts.len() as f64;
        out = out
            .into_iter()
            .flat_map(|(prefix, p)| {
                opts.iter().map(move |&s| {
                    let mut next = prefix.clone();
                    next.push(s);
                    (next, p * w)
                })
            })
            .collect();
    }
    out
}

pub fn decode(mut code: usize, n: usize, c: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let s = (code % c) as u32;
            code /= c;
            s
        })
        .collect()
}

pub fn encode(u: &[u32], c: usize) -> usize {
    u.iter().rev().fold(0, |acc, &s| acc * c + s as usize)
}

/// Exact long-run outcome probabilities of the dynamics from a uniform
/// random profile over `c` strategies: (consensus, other equilibria, rest).
/// Absorption probabilities are iterated to a fixed point on the full
/// c^n state space.
pub fn exact_basin(g: &Graph, c: usize) -> (f64, f64, f64) {
    let n = g.order();
    let states = c.pow(n as u32);
    let trans: Vec<Vec<(usize, f64)>> = (0..states)
        .map(|s| {
            successors(g, &decode(s, n, c))
                .into_iter()
                .map(|(t, p)| (encode(&t, c), p))
                .collect()
        })
        .collect();
    let is_eq: Vec<bool> = (0..states)
        .map(|s| {
            let u = decode(s, n, c);
            let labels: Vec<usize> = u.iter().map(|&x| x as usize).collect();
            nash_oracle(g, &labels)
        })
        .collect();
    let consensus = |s: usize| {
        let u = decode(s, n, c);
        u.iter().all(|&x| x == u[0])
    };
    let absorb = |target: &dyn Fn(usize) -> bool| -> Vec<f64> {
        let mut h: Vec<f64> = (0..states).map(|s| target(s) as u8 as f64).collect();
        for _ in 0..100_000 {
            let next: Vec<f64> = (0..states)
                .map(|s| {
                    if is_eq[s] {
                        h[s]
                    } else {
                        trans[s].iter().map(|&(t, p)| p * h[t]).sum()
                    }
                })
                .collect();
            let delta = next.iter().zip(&h).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            h = next;
            if delta < 1e-16 {
                break;
            }
        }
        h
    };
    let h_cons = absorb(&|s| consensus(s));
    let h_other = absorb(&|s| is_eq[s] && !consensus(s));
    let mean = |h: &[f64]| h.iter().sum::<f64>() / states as f64;
    let (a, b) = (mean(&h_cons), mean(&h_other));
    (a, b, 1.0 - a - b)
}

pub fn profile(v: &[u32]) -> StrategyProfile {
    StrategyProfile::new(v.to_vec())
}
