//! CSV curve files: one point per row, optional header, optional leading `t` column.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use sigframes::{parse_rational, rational_from_decimal, PiecewiseLinearPath, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct CurveFile {
    pub header: Option<Vec<String>>,
    /// Raw time column, when the header names the first column `t`.
    pub times: Option<Vec<String>>,
    pub rows: Vec<Vec<String>>,
}

impl CurveFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut records = Vec::new();
        for rec in reader.records() {
            let rec = rec?;
            if rec.iter().all(str::is_empty) {
                continue;
            }
            records.push(rec.iter().map(str::to_string).collect::<Vec<_>>());
        }
        let mut records = records.into_iter();
        let first = records.next().ok_or_else(|| anyhow!("no data rows"))?;
        let (header, mut rows) = if first.iter().any(|f| f.parse::<f64>().is_err()) {
            (Some(first), Vec::new())
        } else {
            (None, vec![first])
        };
        rows.extend(records);
        if rows.is_empty() {
            bail!("no data rows");
        }
        let has_time = header.as_ref().and_then(|h| h.first()).is_some_and(|t| t.eq_ignore_ascii_case("t"));
        let times = if has_time { Some(rows.iter_mut().map(|r| r.remove(0)).collect()) } else { None };
        let header = header.map(|mut h| {
            if has_time {
                h.remove(0);
            }
            h
        });
        let dim = rows[0].len();
        if dim == 0 {
            bail!("rows have no coordinate columns");
        }
        Ok(CurveFile { header, times, rows })
    }

    pub fn dim(&self) -> usize {
        self.rows[0].len()
    }

    pub fn check_dim(&self, expected: Option<usize>) -> Result<()> {
        match expected {
            Some(d) if d != self.dim() => {
                bail!("dimension mismatch: --dim {d} but the curve has {} columns", self.dim())
            }
            _ => Ok(()),
        }
    }

    pub fn to_f64(&self) -> Result<PiecewiseLinearPath<f64>> {
        self.convert(|s| s.parse::<f64>().ok().filter(|x| x.is_finite()))
    }

    pub fn to_rational(&self) -> Result<PiecewiseLinearPath<Rational>> {
        self.convert(|s| rational_from_decimal(s).or_else(|| parse_rational(s)))
    }

    fn convert<S: sigframes::Scalar>(&self, parse: impl Fn(&str) -> Option<S>) -> Result<PiecewiseLinearPath<S>> {
        let points = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .map(|cell| parse(cell).ok_or_else(|| anyhow!("row {}: bad number {cell:?}", i + 1)))
                    .collect::<Result<Vec<S>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PiecewiseLinearPath::new(points)?)
    }

    /// Same layout as `self` (header and time column) with new coordinates.
    pub fn with_points(&self, points: &[Vec<f64>]) -> CurveFile {
        CurveFile {
            header: self.header.clone(),
            times: self.times.clone(),
            rows: points.iter().map(|p| p.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
        if let Some(h) = &self.header {
            let mut row = h.clone();
            if self.times.is_some() {
                row.insert(0, "t".into());
            }
            w.write_record(&row)?;
        }
        for (i, r) in self.rows.iter().enumerate() {
            let mut row = r.clone();
            if let Some(t) = &self.times {
                row.insert(0, t[i].clone());
            }
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_time_column() {
        let c = CurveFile::parse("t,x,y\n0,1,2\n0.5, 3 ,4\n").unwrap();
        assert_eq!(c.header, Some(vec!["x".to_string(), "y".to_string()]));
        assert_eq!(c.times, Some(vec!["0".to_string(), "0.5".to_string()]));
        assert_eq!(c.dim(), 2);
        assert_eq!(c.to_f64().unwrap().points()[1], vec![3.0, 4.0]);
    }

    #[test]
    fn headerless_and_exact() {
        let c = CurveFile::parse("0.1,2\n1e-1,-3\n").unwrap();
        assert!(c.header.is_none() && c.times.is_none());
        let p = c.to_rational().unwrap();
        assert_eq!(p.points()[1][0], Rational::new(1.into(), 10.into()));
    }

    #[test]
    fn malformed_inputs() {
        assert!(CurveFile::parse("").is_err());
        assert!(CurveFile::parse("x,y\n").is_err());
        assert!(CurveFile::parse("1,2\n3\n").is_err());
        assert!(CurveFile::parse("1,2\n3,abc\n").unwrap().to_f64().is_err());
        assert!(CurveFile::parse("1,2").unwrap().check_dim(Some(3)).is_err());
    }
}
