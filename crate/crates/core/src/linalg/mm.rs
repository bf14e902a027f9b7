//! MatrixMarket coordinate files (`real symmetric`, lower triangle stored).

use std::io::{BufRead, BufReader, Read, Write};

use super::operator::SpdOperator;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub fn write_matrix_market<T: Real, W: Write>(a: &SpdOperator<T>, mut out: W) -> Result<()> {
    let lower: Vec<(usize, usize, T)> = a.triplets().into_iter().filter(|&(i, j, _)| j <= i).collect();
    writeln!(out, "%%MatrixMarket matrix coordinate real symmetric")?;
    writeln!(out, "{} {} {}", a.dim(), a.dim(), lower.len())?;
    for (i, j, v) in lower {
        writeln!(out, "{} {} {:e}", i + 1, j + 1, v.as_f64())?;
    }
    Ok(())
}

pub fn read_matrix_market<T: Real, R: Read>(input: R) -> Result<SpdOperator<T>> {
    let mut lines = BufReader::new(input).lines();
    let header = lines.next().ok_or_else(|| Error::Schema("empty MatrixMarket file".into()))??;
    let h = header.to_lowercase();
    if !h.starts_with("%%matrixmarket matrix coordinate real") {
        return Err(Error::Schema(format!("unsupported MatrixMarket header {header:?}")));
    }
    let symmetric = h.contains("symmetric");
    let mut size: Option<(usize, usize)> = None;
    let mut triplets = Vec::new();
    for line in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let f: Vec<&str> = t.split_whitespace().collect();
        let bad = || Error::Schema(format!("malformed MatrixMarket line {t:?}"));
        match size {
            None => {
                if f.len() != 3 {
                    return Err(bad());
                }
                let r: usize = f[0].parse().map_err(|_| bad())?;
                let c: usize = f[1].parse().map_err(|_| bad())?;
                if r != c {
                    return Err(Error::Schema(format!("matrix is {r} x {c}, not square")));
                }
                size = Some((r, f[2].parse().map_err(|_| bad())?));
            }
            Some((n, _)) => {
                if f.len() != 3 {
                    return Err(bad());
                }
                let i: usize = f[0].parse().map_err(|_| bad())?;
                let j: usize = f[1].parse().map_err(|_| bad())?;
                let v: f64 = f[2].parse().map_err(|_| bad())?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(bad());
                }
                if symmetric || j <= i {
                    triplets.push((i - 1, j - 1, T::of(v)));
                }
            }
        }
    }
    let (n, nnz) = size.ok_or_else(|| Error::Schema("missing size line".into()))?;
    if symmetric && triplets.len() != nnz {
        return Err(Error::Schema(format!("expected {nnz} entries, found {}", triplets.len())));
    }
    Ok(SpdOperator::from_symmetric_triplets(n, &triplets))
}
