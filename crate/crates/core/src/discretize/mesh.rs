use std::io::{BufRead, BufReader, Read, Write};

use crate::error::{Error, Result};

/// Nodes `0 = x_0 < x_1 < … < x_{N+1} = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    nodes: Vec<f64>,
}

impl Mesh1D {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 || nodes[0] != 0.0 || *nodes.last().unwrap() != 1.0 {
            return Err(Error::InvalidArgument("mesh must start at 0 and end at 1".into()));
        }
        if let Some(w) = nodes.windows(2).find(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(format!("mesh nodes not increasing at {} -> {}", w[0], w[1])));
        }
        Ok(Self { nodes })
    }

    /// Uniform mesh with `segments` equal segments.
    pub fn uniform(segments: usize) -> Self {
        assert!(segments >= 1);
        let h = 1.0 / segments as f64;
        let mut nodes: Vec<f64> = (0..=segments).map(|i| i as f64 * h).collect();
        nodes[segments] = 1.0;
        Self { nodes }
    }

    /// All nodes including the two boundary nodes.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn interior(&self) -> &[f64] {
        &self.nodes[1..self.nodes.len() - 1]
    }

    pub fn interior_count(&self) -> usize {
        self.nodes.len() - 2
    }

    /// `h_i = x_i - x_{i-1}`, `i = 1..N+1`.
    pub fn segments(&self) -> Vec<f64> {
        self.nodes.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn min_segment(&self) -> f64 {
        self.segments().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// `h̃_i = (h_i + h_{i+1}) / 2` at each interior node.
    pub fn dual_lengths(&self) -> Vec<f64> {
        self.nodes.windows(3).map(|w| 0.5 * (w[2] - w[0])).collect()
    }

    /// Interior index of the node at `x`, if any.
    pub fn interior_index_of(&self, x: f64) -> Option<usize> {
        self.interior().iter().position(|&y| y == x)
    }

    /// Splits the first and last segments into `p` equal parts, `steps` times.
    pub fn refine_boundary(&self, steps: usize, p: usize) -> Self {
        assert!(p >= 2, "refinement factor must be at least 2");
        let mut nodes = self.nodes.clone();
        for _ in 0..steps {
            let first = nodes[1];
            let m = nodes.len();
            let last = nodes[m - 2];
            let head: Vec<f64> = (1..p).map(|j| first * j as f64 / p as f64).collect();
            let tail: Vec<f64> = (1..p).map(|j| last + (1.0 - last) * j as f64 / p as f64).collect();
            let mut next = Vec::with_capacity(m + 2 * (p - 1));
            next.push(0.0);
            next.extend(head);
            next.extend_from_slice(&nodes[1..m - 1]);
            next.extend(tail);
            next.push(1.0);
            nodes = next;
        }
        Self { nodes }
    }

    /// Halves the two segments touching `x = 0.5`, `steps` times.
    pub fn refine_center(&self, steps: usize) -> Result<Self> {
        let mut nodes = self.nodes.clone();
        for _ in 0..steps {
            let c = nodes
                .iter()
                .position(|&x| x == 0.5)
                .ok_or_else(|| Error::InvalidArgument("mesh has no node at 0.5".into()))?;
            let left = 0.5 * (nodes[c - 1] + nodes[c]);
            let right = 0.5 * (nodes[c] + nodes[c + 1]);
            nodes.insert(c + 1, right);
            nodes.insert(c, left);
        }
        Ok(Self { nodes })
    }

    /// One coordinate per line, boundary nodes included.
    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        for x in &self.nodes {
            writeln!(out, "{x:e}")?;
        }
        Ok(())
    }

    pub fn read<R: Read>(input: R) -> Result<Self> {
        let mut nodes = Vec::new();
        for (i, line) in BufReader::new(input).lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            nodes.push(
                t.parse::<f64>()
                    .map_err(|_| Error::Schema(format!("line {}: not a coordinate: {t:?}", i + 1)))?,
            );
        }
        Self::new(nodes)
    }
}
