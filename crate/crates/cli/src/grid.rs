//! Tensor-product grids of solution values and their CSV form.
//!
//! Rows run t-major: `t` varies slowest, then `x1`, …, `xn`. Metadata sits
//! in `#` comment lines above the header.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub x_axes: Vec<Vec<f64>>,
    pub t_axis: Vec<f64>,
    /// Row-major over `(t, x1, …, xn)`.
    pub values: Vec<f64>,
    pub metadata: Vec<(String, String)>,
}

#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("grid is not a tensor product of its coordinates")]
    NotTensor,
}

/// Formats with 17 significant digits, which round-trips every `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

impl GridField {
    /// Evaluates `u(x, t)` on the tensor grid, in parallel over points.
    pub fn fill<U>(x_axes: Vec<Vec<f64>>, t_axis: Vec<f64>, u: U) -> Result<Self, epd_core::Error>
    where
        U: Fn(&[f64], f64) -> Result<f64, epd_core::Error> + Sync,
    {
        use rayon::prelude::*;
        let per_t: usize = x_axes.iter().map(Vec::len).product();
        let total = per_t * t_axis.len();
        let values = (0..total)
            .into_par_iter()
            .map(|i| {
                let t = t_axis[i / per_t];
                let x = unravel(&x_axes, i % per_t);
                u(&x, t)
            })
            .collect::<Result<Vec<f64>, _>>()?;
        Ok(Self { x_axes, t_axis, values, metadata: Vec::new() })
    }

    pub fn dim(&self) -> usize {
        self.x_axes.len()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Point `i` as `(x, t)`.
    pub fn point(&self, i: usize) -> (Vec<f64>, f64) {
        let per_t: usize = self.x_axes.iter().map(Vec::len).product();
        (unravel(&self.x_axes, i % per_t), self.t_axis[i / per_t])
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn set_meta(&mut self, key: &str, value: impl Into<String>) {
        let value = value.into();
        match self.metadata.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.metadata.push((key.into(), value)),
        }
    }

    /// Continues the field evenly to negative coordinates. Axes that already
    /// reach below zero are left alone.
    pub fn reflect(&self) -> Self {
        let mirror = |axis: &[f64]| -> (Vec<f64>, Vec<usize>) {
            if axis.first().is_some_and(|v| *v < 0.0) {
                return (axis.to_vec(), (0..axis.len()).collect());
            }
            let mut values = Vec::new();
            let mut source = Vec::new();
            for (i, v) in axis.iter().enumerate().rev() {
                if *v > 0.0 {
                    values.push(-v);
                    source.push(i);
                }
            }
            values.extend_from_slice(axis);
            source.extend(0..axis.len());
            (values, source)
        };
        let (t_axis, t_src) = mirror(&self.t_axis);
        let (x_axes, x_src): (Vec<_>, Vec<_>) = self.x_axes.iter().map(|a| mirror(a)).unzip();
        let old_strides = strides(&self.x_axes);
        let per_t_old: usize = self.x_axes.iter().map(Vec::len).product();
        let per_t: usize = x_axes.iter().map(Vec::len).product();
        let mut values = Vec::with_capacity(per_t * t_axis.len());
        for &ti in &t_src {
            for j in 0..per_t {
                let idx = unravel_index(&x_axes, j);
                let old: usize = idx.iter().zip(&x_src).zip(&old_strides).map(|((i, src), s)| src[*i] * s).sum();
                values.push(self.values[ti * per_t_old + old]);
            }
        }
        let mut out = Self { x_axes, t_axis, values, metadata: self.metadata.clone() };
        out.set_meta("reflected", "true");
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            for line in v.lines() {
                let _ = writeln!(out, "# {k}: {line}");
            }
        }
        let names: Vec<String> = (1..=self.dim()).map(|i| format!("x{i}")).collect();
        let _ = writeln!(out, "{},t,u", names.join(","));
        for i in 0..self.len() {
            let (x, t) = self.point(i);
            for v in &x {
                out.push_str(&format_value(*v));
                out.push(',');
            }
            let _ = writeln!(out, "{},{}", format_value(t), format_value(self.values[i]));
        }
        out
    }

    /// Parses what [`GridField::to_csv`] writes. Multi-line metadata values
    /// come back joined by newlines.
    pub fn from_csv(text: &str) -> Result<Self, CsvError> {
        let mut metadata: Vec<(String, String)> = Vec::new();
        let mut header: Option<usize> = None;
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let malformed = |message: String| CsvError::Malformed { line: lineno + 1, message };
            if let Some(rest) = line.strip_prefix("# ") {
                let (k, v) = rest.split_once(": ").ok_or_else(|| malformed("metadata line without ': '".into()))?;
                match metadata.last_mut() {
                    Some((last, acc)) if last == k => {
                        acc.push('\n');
                        acc.push_str(v);
                    }
                    _ => metadata.push((k.into(), v.into())),
                }
                continue;
            }
            match header {
                None => {
                    let cols: Vec<&str> = line.split(',').collect();
                    let n = cols.len().saturating_sub(2);
                    let expected: Vec<String> =
                        (1..=n).map(|i| format!("x{i}")).chain(["t".into(), "u".into()]).collect();
                    if n == 0 || cols != expected {
                        return Err(malformed(format!("expected header {}", expected.join(","))));
                    }
                    header = Some(n);
                }
                Some(n) => {
                    let row = line
                        .split(',')
                        .map(|s| s.parse::<f64>().map_err(|_| malformed(format!("not a number: {s:?}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    if row.len() != n + 2 {
                        return Err(malformed(format!("expected {} columns, got {}", n + 2, row.len())));
                    }
                    rows.push(row);
                }
            }
        }
        let n = header.ok_or(CsvError::Malformed { line: 0, message: "missing header".into() })?;
        let axis = |col: usize| -> Vec<f64> {
            let mut seen: Vec<f64> = Vec::new();
            for r in &rows {
                if !seen.iter().any(|v| v.to_bits() == r[col].to_bits()) {
                    seen.push(r[col]);
                }
            }
            seen
        };
        let x_axes: Vec<Vec<f64>> = (0..n).map(axis).collect();
        let t_axis = axis(n);
        let field = Self { values: rows.iter().map(|r| r[n + 1]).collect(), x_axes, t_axis, metadata };
        let consistent = field.len() == field.t_axis.len() * field.x_axes.iter().map(Vec::len).product::<usize>()
            && rows.iter().enumerate().all(|(i, r)| {
                let (mut coords, t) = field.point(i);
                coords.push(t);
                coords.iter().zip(r).all(|(a, b)| a.to_bits() == b.to_bits())
            });
        if consistent {
            Ok(field)
        } else {
            Err(CsvError::NotTensor)
        }
    }
}

fn strides(axes: &[Vec<f64>]) -> Vec<usize> {
    let mut s = vec![1; axes.len()];
    for i in (0..axes.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * axes[i + 1].len();
    }
    s
}

fn unravel_index(axes: &[Vec<f64>], mut j: usize) -> Vec<usize> {
    let mut idx = vec![0; axes.len()];
    for d in (0..axes.len()).rev() {
        idx[d] = j % axes[d].len();
        j /= axes[d].len();
    }
    idx
}

fn unravel(axes: &[Vec<f64>], j: usize) -> Vec<f64> {
    unravel_index(axes, j).iter().zip(axes).map(|(i, a)| a[*i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_major_layout() {
        let f = GridField::fill(vec![vec![0.0, 1.0], vec![5.0, 6.0, 7.0]], vec![0.0, 0.5], |x, t| {
            Ok(100.0 * t + 10.0 * x[0] + x[1])
        })
        .unwrap();
        assert_eq!(f.point(0), (vec![0.0, 5.0], 0.0));
        assert_eq!(f.point(1), (vec![0.0, 6.0], 0.0));
        assert_eq!(f.point(3), (vec![1.0, 5.0], 0.0));
        assert_eq!(f.point(6), (vec![0.0, 5.0], 0.5));
        assert_eq!(f.values[7], 56.0);
    }

    #[test]
    fn reflection_is_even() {
        let f = GridField::fill(vec![vec![0.0, 1.0, 2.0]], vec![0.0, 1.5], |x, t| Ok(x[0] * x[0] + 3.0 * t)).unwrap();
        let r = f.reflect();
        assert_eq!(r.x_axes[0], vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(r.t_axis, vec![-1.5, 0.0, 1.5]);
        for i in 0..r.len() {
            let (x, t) = r.point(i);
            assert_eq!(r.values[i], x[0] * x[0] + 3.0 * t.abs());
        }
    }
}
