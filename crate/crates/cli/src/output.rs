//! CSV emission and number formatting.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use spwt_core::experiments::SweepResult;
use spwt_core::placement::ResidualGrid;

/// `printf("%.12g")`: 12 significant digits, trailing zeros dropped,
/// scientific notation outside `[1e-4, 1e12)`. Always a dot decimal point.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        trim_fraction(&format!("{x:.*}", (11 - exp) as usize)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Files written by a command so far; everything is removed unless
/// [`OutputSet::commit`] is reached.
pub struct OutputSet {
    written: Vec<PathBuf>,
    committed: bool,
}

impl OutputSet {
    pub fn new() -> Self {
        OutputSet {
            written: Vec::new(),
            committed: false,
        }
    }

    pub fn write(&mut self, path: PathBuf, bytes: &[u8]) -> io::Result<()> {
        // recorded first so a partially written file is also cleaned up
        self.written.push(path.clone());
        fs::write(&path, bytes)
    }

    pub fn commit(mut self) -> Vec<PathBuf> {
        self.committed = true;
        std::mem::take(&mut self.written)
    }
}

impl Drop for OutputSet {
    fn drop(&mut self) {
        if !self.committed {
            for p in &self.written {
                let _ = fs::remove_file(p);
            }
        }
    }
}

fn csv_bytes(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

pub fn sweep_csv(result: &SweepResult) -> io::Result<Vec<u8>> {
    let mut header = vec![result.x_label.as_str()];
    header.extend(result.series.iter().map(|s| s.name.as_str()));
    let rows = result.x_axis.iter().enumerate().map(|(i, x)| {
        let mut row = vec![fmt_num(*x)];
        row.extend(result.series.iter().map(|s| fmt_num(s.values[i])));
        row
    });
    csv_bytes(&header, rows)
}

pub fn pattern_csv(grid: &ResidualGrid) -> io::Result<Vec<u8>> {
    let rows = grid.ys.iter().enumerate().flat_map(|(iy, y)| {
        grid.xs
            .iter()
            .enumerate()
            .map(move |(ix, x)| vec![fmt_num(*x), fmt_num(*y), fmt_num(grid.at(ix, iy))])
    });
    csv_bytes(&["x_m", "y_m", "residual"], rows)
}

pub fn ensure_dir(dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)
}
