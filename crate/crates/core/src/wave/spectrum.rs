//! Directional wave spectra `S(f, θ)` on a frequency × direction lattice.
//!
//! CSV layout: a header naming the columns, then one row per bin in
//! frequency-major order (all directions of the lowest frequency first).
//! Required columns are `f_hz`, `theta_rad` and `s_m2_per_hz_rad`. Bin
//! widths come from `df_hz` / `dtheta_rad` when present, else from bin
//! edges (`f_lo_hz`, `f_hi_hz`, `theta_lo_rad`, `theta_hi_rad`), else from
//! differences of neighbouring bin centres.

use std::f64::consts::TAU;
use std::io::Read;

use crate::error::{Error, Result};
use crate::raster::write_pgm_p2;

pub const CSV_HEADER: &str = "f_hz,df_hz,theta_rad,dtheta_rad,s_m2_per_hz_rad";

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionalSpectrum {
    freqs: Vec<f64>,
    dirs: Vec<f64>,
    /// Frequency-major: `values[i * dirs.len() + j]` is `S(f_i, θ_j)`.
    values: Vec<f64>,
    df: Vec<f64>,
    dtheta: Vec<f64>,
}

fn invalid(line: usize, column: &str, msg: impl Into<String>) -> Error {
    Error::SpectrumValidation {
        line,
        column: column.to_string(),
        msg: msg.into(),
    }
}

impl DirectionalSpectrum {
    pub fn new(freqs: Vec<f64>, dirs: Vec<f64>, values: Vec<f64>, df: Vec<f64>, dtheta: Vec<f64>) -> Result<Self> {
        if freqs.is_empty() || dirs.is_empty() {
            return Err(invalid(0, "", "spectrum has no bins"));
        }
        if values.len() != freqs.len() * dirs.len() || df.len() != freqs.len() || dtheta.len() != dirs.len() {
            return Err(invalid(0, "", "inconsistent spectrum dimensions"));
        }
        for (i, &f) in freqs.iter().enumerate() {
            if !(f > 0.0 && f.is_finite()) {
                return Err(invalid(0, "f_hz", format!("frequency {f} must be > 0")));
            }
            if i > 0 && f <= freqs[i - 1] {
                return Err(invalid(0, "f_hz", "frequencies must be strictly increasing"));
            }
        }
        for (j, &t) in dirs.iter().enumerate() {
            if !(0.0..TAU).contains(&t) {
                return Err(invalid(0, "theta_rad", format!("direction {t} outside [0, 2π)")));
            }
            if j > 0 && t <= dirs[j - 1] {
                return Err(invalid(0, "theta_rad", "directions must be strictly increasing"));
            }
        }
        if let Some(w) = df.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(invalid(0, "df_hz", format!("bin width {w} must be > 0")));
        }
        if let Some(w) = dtheta.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(invalid(0, "dtheta_rad", format!("bin width {w} must be > 0")));
        }
        if let Some(k) = values.iter().position(|s| !(*s >= 0.0 && s.is_finite())) {
            return Err(invalid(
                0,
                "s_m2_per_hz_rad",
                format!(
                    "S(f={}, θ={}) = {} must be >= 0",
                    freqs[k / dirs.len()],
                    dirs[k % dirs.len()],
                    values[k]
                ),
            ));
        }
        Ok(Self {
            freqs,
            dirs,
            values,
            df,
            dtheta,
        })
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn dirs(&self) -> &[f64] {
        &self.dirs
    }

    pub fn df(&self) -> &[f64] {
        &self.df
    }

    pub fn dtheta(&self) -> &[f64] {
        &self.dtheta
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.dirs.len() + j]
    }

    /// Same lattice with every density multiplied by `c ≥ 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(
            self.freqs.clone(),
            self.dirs.clone(),
            self.values.iter().map(|s| s * c).collect(),
            self.df.clone(),
            self.dtheta.clone(),
        )
    }

    /// Zeroth moment `m0 = Σᵢ Σⱼ S(fᵢ, θⱼ)·Δfᵢ·Δθⱼ` (m²).
    pub fn m0(&self) -> f64 {
        let mut m0 = 0.0;
        for (i, df) in self.df.iter().enumerate() {
            for (j, dt) in self.dtheta.iter().enumerate() {
                m0 += self.value(i, j) * df * dt;
            }
        }
        m0
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for (i, f) in self.freqs.iter().enumerate() {
            for (j, t) in self.dirs.iter().enumerate() {
                out.push_str(&format!(
                    "{f},{},{t},{},{}\n",
                    self.df[i],
                    self.dtheta[j],
                    self.value(i, j)
                ));
            }
        }
        out
    }
}

/// Significant wave height `Hs = 4·√m0` (m).
pub fn significant_wave_height(s: &DirectionalSpectrum) -> f64 {
    4.0 * s.m0().sqrt()
}

struct Row {
    line: usize,
    f: f64,
    theta: f64,
    s: f64,
    df: Option<f64>,
    dtheta: Option<f64>,
}

/// Reads and validates a spectrum. Errors name the offending line and
/// column.
pub fn load_spectrum<R: Read>(source: R) -> Result<DirectionalSpectrum> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(source);
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })?
        .clone();
    if headers.is_empty() || headers.iter().all(str::is_empty) {
        return Err(Error::Parse {
            line: 1,
            msg: "empty spectrum file".into(),
        });
    }
    let col = |name: &str| headers.iter().position(|h| h == name);
    let require = |name: &str| {
        col(name).ok_or_else(|| Error::Parse {
            line: 1,
            msg: format!("missing column `{name}`"),
        })
    };
    let c_f = require("f_hz")?;
    let c_t = require("theta_rad")?;
    let c_s = require("s_m2_per_hz_rad")?;
    let c_df = col("df_hz");
    let c_dt = col("dtheta_rad");
    let f_edges = col("f_lo_hz").zip(col("f_hi_hz"));
    let t_edges = col("theta_lo_rad").zip(col("theta_hi_rad"));

    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != headers.len() {
            return Err(Error::Parse {
                line,
                msg: format!("row has {} fields, header has {}", rec.len(), headers.len()),
            });
        }
        let num = |c: usize| -> Result<f64> {
            let name = &headers[c];
            rec[c]
                .parse::<f64>()
                .map_err(|_| invalid(line, name, format!("`{}` is not a number", &rec[c])))
        };
        let opt = |c: Option<usize>| -> Result<Option<f64>> {
            match c {
                Some(c) if !rec[c].is_empty() => num(c).map(Some),
                _ => Ok(None),
            }
        };
        let width = |c: Option<usize>, edges: Option<(usize, usize)>| -> Result<Option<f64>> {
            if let Some(w) = opt(c)? {
                return Ok(Some(w));
            }
            match edges {
                Some((lo, hi)) if !rec[lo].is_empty() && !rec[hi].is_empty() => Ok(Some(num(hi)? - num(lo)?)),
                _ => Ok(None),
            }
        };
        let row = Row {
            line,
            f: num(c_f)?,
            theta: num(c_t)?,
            s: num(c_s)?,
            df: width(c_df, f_edges)?,
            dtheta: width(c_dt, t_edges)?,
        };
        if !(row.s >= 0.0 && row.s.is_finite()) {
            return Err(invalid(
                line,
                "s_m2_per_hz_rad",
                format!("S(f={}, θ={}) = {} must be >= 0", row.f, row.theta, row.s),
            ));
        }
        if !(row.f > 0.0 && row.f.is_finite()) {
            return Err(invalid(line, "f_hz", format!("frequency {} must be > 0", row.f)));
        }
        if !(0.0..TAU).contains(&row.theta) {
            return Err(invalid(
                line,
                "theta_rad",
                format!("direction {} outside [0, 2π)", row.theta),
            ));
        }
        if let Some(w) = row.df.filter(|w| !(*w > 0.0)) {
            return Err(invalid(line, "df_hz", format!("bin width {w} must be > 0")));
        }
        if let Some(w) = row.dtheta.filter(|w| !(*w > 0.0)) {
            return Err(invalid(line, "dtheta_rad", format!("bin width {w} must be > 0")));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 2,
            msg: "spectrum has no bins".into(),
        });
    }
    assemble(rows)
}

fn assemble(rows: Vec<Row>) -> Result<DirectionalSpectrum> {
    // Direction list comes from the first frequency block.
    let f0 = rows[0].f;
    let n_dirs = rows.iter().take_while(|r| r.f == f0).count();
    let dirs: Vec<f64> = rows[..n_dirs].iter().map(|r| r.theta).collect();
    for w in rows[..n_dirs].windows(2) {
        if w[1].theta <= w[0].theta {
            return Err(invalid(
                w[1].line,
                "theta_rad",
                "directions must be strictly increasing within a frequency",
            ));
        }
    }
    if !rows.len().is_multiple_of(n_dirs) {
        let last = rows.last().unwrap();
        return Err(invalid(
            last.line,
            "theta_rad",
            format!(
                "ragged lattice: {} rows is not a multiple of {n_dirs} directions",
                rows.len()
            ),
        ));
    }
    let n_freqs = rows.len() / n_dirs;
    let mut freqs = Vec::with_capacity(n_freqs);
    let mut df_given: Vec<Option<f64>> = Vec::with_capacity(n_freqs);
    let dt_given: Vec<Option<f64>> = rows[..n_dirs].iter().map(|r| r.dtheta).collect();
    let mut values = Vec::with_capacity(rows.len());
    for (i, block) in rows.chunks(n_dirs).enumerate() {
        let f = block[0].f;
        if i > 0 && f <= freqs[i - 1] {
            return Err(invalid(
                block[0].line,
                "f_hz",
                format!("frequency {f} is not greater than {}", freqs[i - 1]),
            ));
        }
        for (j, r) in block.iter().enumerate() {
            if r.f != f {
                return Err(invalid(
                    r.line,
                    "f_hz",
                    format!("ragged lattice: expected f = {f} for direction {j}"),
                ));
            }
            if r.theta != dirs[j] {
                return Err(invalid(
                    r.line,
                    "theta_rad",
                    format!("ragged lattice: expected θ = {}", dirs[j]),
                ));
            }
            if r.df != block[0].df {
                return Err(invalid(r.line, "df_hz", "bin width differs within one frequency"));
            }
            if r.dtheta != dt_given[j] {
                return Err(invalid(r.line, "dtheta_rad", "bin width differs across frequencies"));
            }
            values.push(r.s);
        }
        freqs.push(f);
        df_given.push(block[0].df);
    }
    let df = resolve_widths(&freqs, &df_given).map_err(|m| invalid(rows[0].line, "df_hz", m))?;
    let dtheta = resolve_widths(&dirs, &dt_given).map_err(|m| invalid(rows[0].line, "dtheta_rad", m))?;
    DirectionalSpectrum::new(freqs, dirs, values, df, dtheta)
}

/// Explicit widths where given; otherwise half the distance between the
/// neighbouring centres (one-sided at the ends).
fn resolve_widths(centres: &[f64], given: &[Option<f64>]) -> Result<Vec<f64>, String> {
    let n = centres.len();
    (0..n)
        .map(|i| match given[i] {
            Some(w) => Ok(w),
            None if n < 2 => Err("cannot infer the width of a single bin; give it explicitly".to_string()),
            None => Ok(if i == 0 {
                centres[1] - centres[0]
            } else if i == n - 1 {
                centres[n - 1] - centres[n - 2]
            } else {
                (centres[i + 1] - centres[i - 1]) / 2.0
            }),
        })
        .collect()
}

/// Heatmap of `S` as an 8-bit graymap: one column per direction, one row per
/// frequency, lowest frequency on the first row, brightest at max `S`.
pub fn spectrum_heatmap_pgm(s: &DirectionalSpectrum) -> Vec<u8> {
    let max = s.values.iter().copied().fold(0.0, f64::max);
    let px: Vec<u8> = if max > 0.0 {
        s.values.iter().map(|v| (v / max * 255.0).round() as u8).collect()
    } else {
        vec![0; s.values.len()]
    };
    let comment = format!(
        "S(f,theta) heatmap; rows f = {}..{} Hz, cols theta = {}..{} rad; 255 = {} m^2/(Hz rad)",
        s.freqs[0],
        s.freqs[s.freqs.len() - 1],
        s.dirs[0],
        s.dirs[s.dirs.len() - 1],
        max
    );
    write_pgm_p2(s.dirs.len(), s.freqs.len(), &px, Some(&comment))
}
