use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentroidKind {
    Unicentroidal,
    Bicentroidal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentroidInfo {
    /// `weights[v]` is the order of a largest component of `T - v`.
    pub weights: Vec<usize>,
    /// One vertex, or two adjacent vertices, in increasing order.
    pub centroid: Vec<usize>,
    pub kind: CentroidKind,
    pub centroidal_edge: Option<(usize, usize)>,
}

impl CentroidInfo {
    /// The common minimum weight `wt(T)`.
    pub fn weight(&self) -> usize {
        self.weights[self.centroid[0]]
    }
}

pub fn centroid(t: &Graph) -> Result<CentroidInfo> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let all = t.vertex_mask();
    let weights: Vec<usize> = (0..t.n())
        .map(|v| {
            bits(t.row(v))
                .map(|u| {
                    // the branch at u is everything u reaches once v is gone
                    let mut h = *t;
                    h.remove_edge(u, v).expect("neighbour edge exists");
                    (h.reach(u) & all & !(1 << v)).count_ones() as usize
                })
                .max()
                .unwrap_or(0)
        })
        .collect();
    let min = *weights.iter().min().expect("trees have a vertex");
    let centroid: Vec<usize> = (0..t.n()).filter(|&v| weights[v] == min).collect();
    let (kind, centroidal_edge) = match centroid[..] {
        [_] => (CentroidKind::Unicentroidal, None),
        [a, b] => {
            debug_assert!(t.has_edge(a, b));
            (CentroidKind::Bicentroidal, Some((a, b)))
        }
        _ => unreachable!("a tree has one or two centroidal vertices"),
    };
    Ok(CentroidInfo {
        weights,
        centroid,
        kind,
        centroidal_edge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn paths() {
        let c = centroid(&path(4)).unwrap();
        assert_eq!(c.kind, CentroidKind::Bicentroidal);
        assert_eq!(c.centroid, vec![1, 2]);
        assert_eq!(c.centroidal_edge, Some((1, 2)));
        let c = centroid(&path(5)).unwrap();
        assert_eq!(c.kind, CentroidKind::Unicentroidal);
        assert_eq!(c.centroid, vec![2]);
        assert_eq!(c.weight(), 2);
        for n in 1..=12 {
            let c = centroid(&path(n)).unwrap();
            assert_eq!(c.kind == CentroidKind::Bicentroidal, n % 2 == 0, "P_{n}");
        }
    }

    #[test]
    fn star_center() {
        let s = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let c = centroid(&s).unwrap();
        assert_eq!(c.centroid, vec![0]);
        assert_eq!(c.weight(), 1);
    }

    #[test]
    fn rejects_non_trees() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(centroid(&k3), Err(Error::NotATree));
        assert_eq!(centroid(&Graph::empty(2).unwrap()), Err(Error::NotATree));
    }
}
