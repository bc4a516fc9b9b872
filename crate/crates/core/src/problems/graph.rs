use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: u64,
}

/// Undirected simple graph with positive integer edge weights. Edges are
/// stored with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (a, b, w) in edges {
            if a == b {
                return Err(Error::invalid(format!("self-loop on vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::invalid(format!("edge ({a}, {b}) out of range for {n} vertices")));
            }
            if w == 0 {
                return Err(Error::invalid(format!("edge ({a}, {b}) has zero weight")));
            }
            let (u, v) = (a.min(b), a.max(b));
            if !seen.insert((u, v)) {
                return Err(Error::invalid(format!("duplicate edge ({u}, {v})")));
            }
            out.push(Edge { u, v, weight: w });
        }
        out.sort();
        Ok(Graph { n, edges: out })
    }

    /// Unit-weight graph.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new(n, edges.iter().map(|&(u, v)| (u, v, 1)))
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }

    /// Weight of the cut induced by bitstring `z` (bit `j` is vertex `j`'s side).
    pub fn cut_value(&self, z: u64) -> u64 {
        self.edges
            .iter()
            .filter(|e| ((z >> e.u) ^ (z >> e.v)) & 1 == 1)
            .map(|e| e.weight)
            .sum()
    }

    /// Weight of the cut between vertices marked `true` and the rest.
    pub fn cut_value_of(&self, side: &[bool]) -> u64 {
        self.edges
            .iter()
            .filter(|e| side[e.u] != side[e.v])
            .map(|e| e.weight)
            .sum()
    }

    /// Two-coloring if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color = vec![None; self.n];
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(a) = stack.pop() {
                let ca = color[a].expect("colored");
                for &b in &adj[a] {
                    match color[b] {
                        None => {
                            color[b] = Some(!ca);
                            stack.push(b);
                        }
                        Some(cb) if cb == ca => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c == Some(true)).collect())
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::unweighted(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("a cycle needs at least 3 vertices"));
        }
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::unweighted(n, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::unweighted(n, &edges).expect("valid complete graph")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect();
        Graph::unweighted(a + b, &edges).expect("valid bipartite graph")
    }

    /// Erdos-Renyi `G(n, p)`.
    pub fn random_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::unweighted(n, &edges).expect("valid random graph")
    }

    /// Uniform-ish random `d`-regular graph via the configuration model with
    /// rejection of loops and multi-edges.
    pub fn random_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Self> {
        if d >= n || (n * d) % 2 == 1 {
            return Err(Error::invalid(format!("no {d}-regular graph on {n} vertices")));
        }
        for _ in 0..10_000 {
            let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
            stubs.shuffle(rng);
            let mut seen = BTreeSet::new();
            let mut ok = true;
            for pair in stubs.chunks(2) {
                let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                if u == v || !seen.insert((u, v)) {
                    ok = false;
                    break;
                }
            }
            if ok {
                let edges: Vec<_> = seen.into_iter().collect();
                return Graph::unweighted(n, &edges);
            }
        }
        Err(Error::invalid(format!(
            "failed to sample a simple {d}-regular graph on {n} vertices"
        )))
    }

    /// Parses the edge-list format: a header line `n m`, then `m` lines
    /// `u v [w]` with 0-indexed vertices. Blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header `n m`".into(),
        })?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 2 {
            return Err(Error::Parse {
                line: hline,
                msg: format!("expected `n m`, found {header:?}"),
            });
        }
        let parse_num = |tok: &str, line: usize| -> Result<u64> {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line,
                msg: format!("not a non-negative integer: {tok:?}"),
            })
        };
        let n = parse_num(h[0], hline)? as usize;
        let m = parse_num(h[1], hline)? as usize;
        let mut edges = Vec::with_capacity(m);
        let mut last_line = hline;
        for (line, l) in lines {
            last_line = line;
            let toks: Vec<&str> = l.split_whitespace().collect();
            if !(2..=3).contains(&toks.len()) {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `u v [w]`, found {l:?}"),
                });
            }
            let u = parse_num(toks[0], line)? as usize;
            let v = parse_num(toks[1], line)? as usize;
            let w = match toks.get(2) {
                Some(t) => parse_num(t, line)?,
                None => 1,
            };
            if edges.len() == m {
                return Err(Error::Parse {
                    line,
                    msg: format!("more than the declared {m} edges"),
                });
            }
            edges.push((u, v, w));
            Graph::new(n, edges.iter().copied()).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: last_line,
                msg: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            if e.weight == 1 {
                s.push_str(&format!("{} {}\n", e.u, e.v));
            } else {
                s.push_str(&format!("{} {} {}\n", e.u, e.v, e.weight));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validation() {
        assert!(Graph::unweighted(3, &[(0, 0)]).is_err());
        assert!(Graph::unweighted(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::unweighted(3, &[(0, 3)]).is_err());
        assert!(Graph::new(3, [(0, 1, 0)]).is_err());
    }

    #[test]
    fn cut_values_on_triangle() {
        let g = Graph::complete(3);
        let cuts: Vec<u64> = (0..8).map(|z| g.cut_value(z)).collect();
        assert_eq!(cuts, vec![0, 2, 2, 2, 2, 2, 2, 0]);
    }

    #[test]
    fn parse_ok_and_errors() {
        let g = Graph::parse("3 2\n0 1\n1 2 4\n").unwrap();
        assert_eq!(g.n_edges(), 2);
        assert_eq!(g.total_weight(), 5);
        assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);

        let err = Graph::parse("3 2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = Graph::parse("3 2\n0 1\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = Graph::parse("3 3\n0 1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(Graph::parse("").is_err());
    }

    #[test]
    fn regular_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Graph::random_regular(10, 3, &mut rng).unwrap();
        assert_eq!(g.n_edges(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(Graph::random_regular(5, 3, &mut rng).is_err());
    }

    #[test]
    fn bipartite_detection() {
        let g = Graph::complete_bipartite(2, 3);
        let side = g.bipartition().unwrap();
        assert_eq!(g.cut_value_of(&side), g.total_weight());
        assert!(Graph::complete(3).bipartition().is_none());
    }
}
