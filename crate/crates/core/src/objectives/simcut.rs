use std::io::BufRead;
use std::sync::Arc;

use super::{ElementId, ObjectiveKind, SetFunction, WorkingSet};
use crate::error::{Error, Result};

pub const DEFAULT_LAMBDA: f64 = 10.0;

const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Pairwise similarities over query and candidate items.
///
/// The ground set is the candidates (all matrix indices not listed as
/// queries), renumbered `0..n` in index order.
#[derive(Debug, Clone)]
pub struct SimilarityKernel {
    dim: usize,
    matrix: Vec<f64>,
    queries: Vec<usize>,
    candidates: Vec<usize>,
    lambda: f64,
    // sum over queries of s(q, c), per candidate
    query_affinity: Vec<f64>,
}

impl SimilarityKernel {
    /// `matrix` is row-major `dim x dim`, symmetric, with entries in [-1, 1].
    pub fn new(dim: usize, matrix: Vec<f64>, queries: Vec<usize>, lambda: f64) -> Result<Self> {
        if matrix.len() != dim * dim {
            return Err(Error::input(format!(
                "similarity matrix has {} entries, expected {dim}x{dim}",
                matrix.len()
            )));
        }
        if !(lambda >= 2.0 && lambda.is_finite()) {
            return Err(Error::input(format!("lambda = {lambda} must be >= 2")));
        }
        for i in 0..dim {
            for j in 0..dim {
                let s = matrix[i * dim + j];
                if !(-1.0..=1.0).contains(&s) {
                    return Err(Error::input(format!("s({i},{j}) = {s} outside [-1, 1]")));
                }
                if (s - matrix[j * dim + i]).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::input(format!("similarity matrix asymmetric at ({i},{j})")));
                }
            }
        }
        let mut is_query = vec![false; dim];
        for &q in &queries {
            if q >= dim {
                return Err(Error::input(format!("query id {q} outside 0..{dim}")));
            }
            is_query[q] = true;
        }
        let mut queries = queries;
        queries.sort_unstable();
        queries.dedup();
        let candidates: Vec<usize> = (0..dim).filter(|&i| !is_query[i]).collect();
        let query_affinity = candidates
            .iter()
            .map(|&c| queries.iter().map(|&q| matrix[q * dim + c]).sum())
            .collect();
        Ok(SimilarityKernel {
            dim,
            matrix,
            queries,
            candidates,
            lambda,
            query_affinity,
        })
    }

    /// Reads a row-major CSV of floats (no header) and a whitespace-separated
    /// list of query ids.
    pub fn from_readers<M: BufRead, Q: BufRead>(matrix: M, queries: Q, lambda: f64) -> Result<Self> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (i, line) in matrix.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|tok| {
                    tok.trim().parse::<f64>().map_err(|_| Error::Parse {
                        line: i + 1,
                        message: format!("{tok:?} is not a number"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let dim = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("row has {} columns, expected {dim}", r.len()),
            });
        }
        let mut ids = Vec::new();
        for (i, line) in queries.lines().enumerate() {
            for tok in line?.split_whitespace() {
                ids.push(tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("{tok:?} is not a query id"),
                })?);
            }
        }
        Self::new(dim, rows.concat(), ids, lambda)
    }

    /// Similarity between two matrix indices.
    pub fn similarity(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.dim + j]
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn queries(&self) -> &[usize] {
        &self.queries
    }

    /// Matrix index of each ground-set element.
    pub fn candidates(&self) -> &[usize] {
        &self.candidates
    }

    fn sim(&self, a: ElementId, b: ElementId) -> f64 {
        self.similarity(self.candidates[a], self.candidates[b])
    }
}

/// `lambda * sum_{q in Q, j in S} s(q, j) - sum_{i in S} sum_{j in S} s(i, j)`.
///
/// The second sum runs over ordered pairs and includes `i = j`.
pub fn simgraphcut_value(kernel: &SimilarityKernel, set: &[ElementId]) -> f64 {
    let relevance: f64 = set.iter().map(|&j| kernel.query_affinity[j]).sum();
    let redundancy: f64 = set
        .iter()
        .map(|&i| set.iter().map(|&j| kernel.sim(i, j)).sum::<f64>())
        .sum();
    kernel.lambda * relevance - redundancy
}

/// Graph-cut relevance objective for retrieval.
#[derive(Debug, Clone)]
pub struct SimGraphCut {
    kernel: Arc<SimilarityKernel>,
}

impl SimGraphCut {
    pub fn new(kernel: Arc<SimilarityKernel>) -> Self {
        SimGraphCut { kernel }
    }
}

impl SetFunction for SimGraphCut {
    fn ground_size(&self) -> usize {
        self.kernel.candidates.len()
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        simgraphcut_value(&self.kernel, set)
    }

    fn kind(&self) -> ObjectiveKind {
        ObjectiveKind::SimGraphCut
    }

    fn working_set(&self) -> Option<Box<dyn WorkingSet>> {
        let n = self.kernel.candidates.len();
        Some(Box::new(SimCutSet {
            kernel: Arc::clone(&self.kernel),
            in_set: vec![false; n],
            to_set: vec![0.0; n],
            value: 0.0,
        }))
    }
}

#[derive(Clone)]
struct SimCutSet {
    kernel: Arc<SimilarityKernel>,
    in_set: Vec<bool>,
    // sum over i in S of s(i, j), per candidate j
    to_set: Vec<f64>,
    value: f64,
}

impl SimCutSet {
    fn delta(&self, e: ElementId) -> f64 {
        self.kernel.lambda * self.kernel.query_affinity[e]
            - 2.0 * self.to_set[e]
            - self.kernel.sim(e, e)
    }
}

impl WorkingSet for SimCutSet {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&mut self, e: ElementId) -> f64 {
        if self.in_set[e] {
            0.0
        } else {
            self.delta(e)
        }
    }

    fn insert(&mut self, e: ElementId) {
        if self.in_set[e] {
            return;
        }
        self.value += self.delta(e);
        self.in_set[e] = true;
        for (j, acc) in self.to_set.iter_mut().enumerate() {
            *acc += self.kernel.sim(e, j);
        }
    }

    fn boxed_clone(&self) -> Box<dyn WorkingSet> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use std::io::Cursor;

    use super::*;
    use crate::objectives::Oracle;

    fn single_candidate(lambda: f64) -> SimilarityKernel {
        // index 0 is the query, index 1 the candidate
        SimilarityKernel::new(2, vec![1.0, 0.5, 0.5, 1.0], vec![0], lambda).unwrap()
    }

    #[test]
    fn single_candidate_value() {
        let o = Oracle::new(SimGraphCut::new(Arc::new(single_candidate(10.0))));
        assert_eq!(o.n(), 1);
        assert_eq!(o.eval(&[]).unwrap(), 0.0);
        assert_eq!(o.eval(&[0]).unwrap(), 4.0);
    }

    #[test]
    fn doubling_lambda_doubles_relevance_only() {
        let k10 = single_candidate(10.0);
        let k20 = single_candidate(20.0);
        // relevance 0.5, redundancy 1
        assert_eq!(simgraphcut_value(&k10, &[0]), 10.0 * 0.5 - 1.0);
        assert_eq!(simgraphcut_value(&k20, &[0]), 20.0 * 0.5 - 1.0);
    }

    #[test]
    fn rejects_bad_kernels() {
        assert!(SimilarityKernel::new(2, vec![1.0, 0.5, 0.4, 1.0], vec![0], 10.0).is_err());
        assert!(SimilarityKernel::new(2, vec![1.0, 0.5, 0.5, 1.0], vec![0], 1.5).is_err());
        assert!(SimilarityKernel::new(2, vec![1.0, 2.0, 2.0, 1.0], vec![0], 10.0).is_err());
        assert!(SimilarityKernel::new(2, vec![1.0; 3], vec![0], 10.0).is_err());
        assert!(SimilarityKernel::new(2, vec![1.0; 4], vec![3], 10.0).is_err());
    }

    #[test]
    fn reads_csv_and_query_list() {
        let csv = "1,0.2,0.9\n0.2,1,0.1\n0.9,0.1,1\n";
        let k = SimilarityKernel::from_readers(Cursor::new(csv), Cursor::new("2\n"), 10.0).unwrap();
        assert_eq!(k.candidates(), &[0, 1]);
        // candidate 0 is matrix index 0: 10 * 0.9 - 1
        assert!((simgraphcut_value(&k, &[0]) - 8.0).abs() < 1e-12);
        let bad = SimilarityKernel::from_readers(Cursor::new("1,x\n0,1\n"), Cursor::new("0"), 10.0);
        assert!(matches!(bad, Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn working_set_matches_eval() {
        let dim = 6;
        let mut m = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                m[i * dim + j] = if i == j { 1.0 } else { ((i + j) % 5) as f64 / 10.0 };
            }
        }
        let k = Arc::new(SimilarityKernel::new(dim, m, vec![0, 1], 10.0).unwrap());
        let o = Oracle::new(SimGraphCut::new(k));
        let mut ws = o.working_set();
        for e in [2, 0, 3, 2] {
            ws.gain(e);
            ws.insert(e);
            assert!((ws.value() - o.eval(ws.members()).unwrap()).abs() < 1e-12);
        }
    }
}
