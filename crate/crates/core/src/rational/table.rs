//! Coefficient tables: `gamma,k,E,b` followed by the `2k` interlaced roots
//! `ζ_1, d_1, ζ_2, d_2, …`, one approximation per row.

use std::io::{Read, Write};
use std::path::Path;

use super::barycentric::Barycentric;
use super::minimax::{deviation, interval_extrema};
use super::{check_interlacing, RationalMinimax};
use crate::error::{Error, Result};

/// Largest alternation deviation accepted when re-verifying a loaded row.
const LOAD_DEVIATION: f64 = 1e-3;

/// Writes one row per approximation, padding shorter rows with empty cells.
pub fn write_table<W: Write>(out: W, rows: &[RationalMinimax]) -> Result<()> {
    let kmax = rows.iter().map(|r| r.degree()).max().unwrap_or(0);
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    let mut header: Vec<String> = ["gamma", "k", "E", "b"].iter().map(|s| s.to_string()).collect();
    for i in 1..=kmax {
        header.push(format!("zeta_{i}"));
        header.push(format!("d_{i}"));
    }
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            format!("{:e}", r.gamma()),
            r.degree().to_string(),
            format!("{:e}", r.error()),
            format!("{:e}", r.leading_coefficient()),
        ];
        for (z, d) in r.zeros().iter().zip(r.poles()) {
            rec.push(format!("{z:e}"));
            rec.push(format!("{d:e}"));
        }
        rec.resize(header.len(), String::new());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Parses and re-verifies every row of a coefficient table.
pub fn read_table<R: Read>(input: R) -> Result<Vec<RationalMinimax>> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).has_headers(true).from_reader(input);
    let header = rdr.headers()?.clone();
    let expect = ["gamma", "k", "E", "b"];
    if header.len() < 4 || header.iter().take(4).zip(expect).any(|(h, e)| h.trim() != e) {
        return Err(Error::Schema(format!("header must start with gamma,k,E,b (got {:?})", header)));
    }
    let mut out = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = line + 2;
        let num = |i: usize| -> Result<f64> {
            let cell = rec.get(i).ok_or_else(|| Error::Schema(format!("row {row}: missing column {i}")))?;
            cell.trim()
                .parse::<f64>()
                .map_err(|_| Error::Schema(format!("row {row}: cannot parse {cell:?} in column {i}")))
        };
        let gamma = num(0)?;
        let k: usize = rec
            .get(1)
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Schema(format!("row {row}: degree is not an integer")))?;
        if k == 0 {
            return Err(Error::Schema(format!("row {row}: degree 0")));
        }
        let b = num(3)?;
        let mut zeros = Vec::with_capacity(k);
        let mut poles = Vec::with_capacity(k);
        for i in 0..k {
            zeros.push(num(4 + 2 * i)?);
            poles.push(num(5 + 2 * i)?);
        }
        if rec.iter().skip(4 + 2 * k).any(|c| !c.trim().is_empty()) {
            return Err(Error::Schema(format!("row {row}: more than 2k root columns")));
        }
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::Schema(format!("row {row}: gamma {gamma} outside (0, 1)")));
        }
        out.push(verify(gamma, zeros, poles, b).map_err(|e| match e {
            Error::InvariantFailure(m) => Error::InvariantFailure(format!("row {row}: {m}")),
            other => other,
        })?);
    }
    Ok(out)
}

pub fn load_coefficients(path: impl AsRef<Path>) -> Result<Vec<RationalMinimax>> {
    read_table(std::fs::File::open(path)?)
}

/// Rebuilds an approximation from its roots and re-derives its error from the
/// equioscillation of `b Π (t - ζ_i)/(t - d_i) - t^γ`.
fn verify(gamma: f64, zeros: Vec<f64>, poles: Vec<f64>, b: f64) -> Result<RationalMinimax> {
    check_interlacing(&zeros, &poles).map_err(|e| Error::InvariantFailure(e.to_string()))?;
    if !(b > 0.0) {
        return Err(Error::InvariantFailure(format!("leading coefficient {b}")));
    }
    let k = zeros.len();
    let err = |t: f64| {
        zeros.iter().zip(&poles).fold(b, |acc, (&z, &d)| acc * (t - z) / (t - d)) - t.powf(gamma)
    };
    let nodes = sign_changes(&err);
    if nodes.len() != 2 * k + 1 {
        return Err(Error::InvariantFailure(format!(
            "error has {} sign changes on (0, 1), expected {}",
            nodes.len(),
            2 * k + 1
        )));
    }
    let extrema = interval_extrema(&err, &nodes);
    if extrema.windows(2).any(|w| w[0].1 * w[1].1 >= 0.0) {
        return Err(Error::InvariantFailure("error extrema do not alternate in sign".into()));
    }
    let dev = deviation(&extrema);
    if dev > LOAD_DEVIATION {
        return Err(Error::InvariantFailure(format!("extrema differ by {dev:.3e} relative")));
    }
    let certified = extrema.iter().fold(0.0f64, |m, e| m.max(e.1.abs()));
    let support: Vec<f64> = nodes.iter().step_by(2).copied().collect();
    let barycentric = Barycentric::from_product(&zeros, &poles, b, support);
    let mut r = RationalMinimax::from_parts(gamma, zeros, poles, b, certified)?;
    r.barycentric = barycentric;
    r.set_alternation(extrema, dev);
    Ok(r)
}

/// Roots of `err` on `(0, 1)`, bracketed on a mixed log/uniform grid and bisected.
fn sign_changes(err: &impl Fn(f64) -> f64) -> Vec<f64> {
    let mut grid: Vec<f64> = (0..=4000).map(|i| 10f64.powf(-20.0 + 20.0 * i as f64 / 4000.0)).collect();
    grid.extend((1..4000).map(|i| i as f64 / 4000.0));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut roots = Vec::new();
    for w in grid.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (fa, fb) = (err(a), err(b));
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa.signum() == fb.signum() || fb == 0.0 {
            continue;
        }
        for _ in 0..200 {
            let m = if b > 2.0 * a { (a * b).sqrt() } else { 0.5 * (a + b) };
            if m <= a || m >= b {
                break;
            }
            if err(m).signum() == fa.signum() {
                a = m;
            } else {
                b = m;
            }
        }
        roots.push(0.5 * (a + b));
    }
    roots
}
