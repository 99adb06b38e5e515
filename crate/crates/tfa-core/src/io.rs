//! TFSIG1/TFSUR1 file formats: a text key=value manifest next to a raw
//! sidecar of interleaved little-endian f64 complex samples, row-major.

use crate::error::{Result, TfaError};
use crate::grid::Grid;
use crate::signal::Signal;
use crate::surface::Surface;
use num_complex::Complex64;
use std::fs;
use std::path::{Path, PathBuf};

fn manifest_err(line: usize, msg: impl Into<String>) -> TfaError {
    TfaError::Manifest { line, msg: msg.into() }
}

/// Parses the manifest text into (key, value, line-number) triples.
/// Blank lines and `#` comments are allowed; everything else must be
/// `key=value`.
fn parse_manifest(text: &str) -> Result<Vec<(String, String, usize)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| manifest_err(line, format!("expected key=value, got {trimmed:?}")))?;
        out.push((key.trim().to_string(), value.trim().to_string(), line));
    }
    Ok(out)
}

struct ManifestFields {
    entries: Vec<(String, String, usize)>,
}

impl ManifestFields {
    fn get(&self, key: &str) -> Result<(&str, usize)> {
        self.entries
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, line)| (v.as_str(), *line))
            .ok_or_else(|| manifest_err(self.entries.len() + 1, format!("missing key {key}")))
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let (v, line) = self.get(key)?;
        v.parse().map_err(|_| manifest_err(line, format!("invalid value for {key}: {v:?}")))
    }
}

fn read_fields(path: &Path, format: &str) -> Result<(ManifestFields, PathBuf)> {
    let text = fs::read_to_string(path)?;
    let fields = ManifestFields { entries: parse_manifest(&text)? };
    let (fmt, line) = fields.get("format")?;
    if fmt != format {
        return Err(manifest_err(line, format!("expected format={format}, got {fmt}")));
    }
    let (data_file, _) = fields.get("data_file")?;
    let data_path = path.parent().unwrap_or(Path::new("")).join(data_file);
    Ok((fields, data_path))
}

/// Reads the sidecar payload: `count` complex samples as interleaved
/// little-endian f64 pairs.
fn read_payload(path: &Path, count: usize) -> Result<Vec<Complex64>> {
    let bytes = fs::read(path)?;
    let expected = count * 16;
    if bytes.len() != expected {
        return Err(TfaError::Precondition(format!(
            "data file {} has {} bytes, expected {expected}",
            path.display(),
            bytes.len()
        )));
    }
    Ok((0..count)
        .map(|k| {
            let re = f64::from_le_bytes(bytes[16 * k..16 * k + 8].try_into().unwrap());
            let im = f64::from_le_bytes(bytes[16 * k + 8..16 * k + 16].try_into().unwrap());
            Complex64::new(re, im)
        })
        .collect())
}

fn write_payload(path: &Path, samples: &[Complex64]) -> Result<()> {
    let mut bytes = Vec::with_capacity(samples.len() * 16);
    for s in samples {
        bytes.extend_from_slice(&s.re.to_le_bytes());
        bytes.extend_from_slice(&s.im.to_le_bytes());
    }
    fs::write(path, bytes)?;
    Ok(())
}

/// Sidecar path convention: `<manifest>.dat` next to the manifest.
fn data_path_for(path: &Path) -> (PathBuf, String) {
    let mut name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    name.push_str(".dat");
    (path.with_file_name(&name), name)
}

pub fn write_signal(path: &Path, s: &Signal) -> Result<()> {
    let (data_path, data_name) = data_path_for(path);
    let manifest = format!(
        "format=TFSIG1\ndim={}\nL={}\nn={}\ndata_file={}\n",
        s.grid.dim, s.grid.half_extent, s.grid.points_per_axis, data_name
    );
    fs::write(path, manifest)?;
    write_payload(&data_path, &s.samples)
}

pub fn read_signal(path: &Path) -> Result<Signal> {
    let (fields, data_path) = read_fields(path, "TFSIG1")?;
    let dim: usize = fields.parse("dim")?;
    let l: f64 = fields.parse("L")?;
    let n: usize = fields.parse("n")?;
    let grid = Grid::new(dim, l, n)?;
    let samples = read_payload(&data_path, grid.total_points())?;
    Signal::from_samples(grid, samples)
}

pub fn write_surface(path: &Path, s: &Surface) -> Result<()> {
    let (data_path, data_name) = data_path_for(path);
    let manifest = format!(
        "format=TFSUR1\ndim={}\nx_L={}\nx_n={}\ny_L={}\ny_n={}\ndata_file={}\n",
        s.x_grid.dim,
        s.x_grid.half_extent,
        s.x_grid.points_per_axis,
        s.y_grid.half_extent,
        s.y_grid.points_per_axis,
        data_name
    );
    fs::write(path, manifest)?;
    write_payload(&data_path, &s.samples)
}

pub fn read_surface(path: &Path) -> Result<Surface> {
    let (fields, data_path) = read_fields(path, "TFSUR1")?;
    let dim: usize = fields.parse("dim")?;
    let x_grid = Grid::new(dim, fields.parse("x_L")?, fields.parse("x_n")?)?;
    let y_grid = Grid::new(dim, fields.parse("y_L")?, fields.parse("y_n")?)?;
    let samples = read_payload(&data_path, x_grid.total_points() * y_grid.total_points())?;
    Surface::new(x_grid, y_grid, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::h1d;
    use crate::transforms::ambiguity;

    fn default_grid() -> Grid {
        Grid::new(1, 8.0, 256).unwrap()
    }

    #[test]
    fn signal_round_trip_bitwise() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h3.tfsig");
        let s = h1d(3, default_grid());
        write_signal(&path, &s).unwrap();
        let back = read_signal(&path).unwrap();
        assert_eq!(back.grid, s.grid);
        assert!(back
            .samples
            .iter()
            .zip(&s.samples)
            .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()));
    }

    #[test]
    fn surface_round_trip_bitwise() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.tfsur");
        let g = Grid::new(1, 8.0, 64).unwrap();
        let surf = ambiguity(&h1d(0, g), &h1d(1, g)).unwrap();
        write_surface(&path, &surf).unwrap();
        let back = read_surface(&path).unwrap();
        assert_eq!(back.x_grid, surf.x_grid);
        assert_eq!(back.y_grid, surf.y_grid);
        assert!(back
            .samples
            .iter()
            .zip(&surf.samples)
            .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()));
    }

    #[test]
    fn malformed_manifest_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.tfsig");
        fs::write(&path, "format=TFSIG1\ndim=1\nL eight\n").unwrap();
        match read_signal(&path) {
            Err(TfaError::Manifest { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected manifest error, got {other:?}"),
        }
    }

    #[test]
    fn wrong_format_and_bad_value_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.tfsig");
        fs::write(&path, "format=TFSUR1\ndata_file=x\n").unwrap();
        match read_signal(&path) {
            Err(TfaError::Manifest { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected manifest error, got {other:?}"),
        }
        fs::write(&path, "format=TFSIG1\ndim=three\nL=8\nn=256\ndata_file=x\n").unwrap();
        match read_signal(&path) {
            Err(TfaError::Manifest { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected manifest error, got {other:?}"),
        }
    }

    #[test]
    fn truncated_payload_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h0.tfsig");
        write_signal(&path, &h1d(0, default_grid())).unwrap();
        let data = path.with_file_name("h0.tfsig.dat");
        let bytes = fs::read(&data).unwrap();
        fs::write(&data, &bytes[..bytes.len() - 8]).unwrap();
        assert!(matches!(read_signal(&path), Err(TfaError::Precondition(_))));
    }

    #[test]
    fn missing_data_file_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h0.tfsig");
        fs::write(&path, "format=TFSIG1\ndim=1\nL=8\nn=256\ndata_file=gone.dat\n").unwrap();
        assert!(matches!(read_signal(&path), Err(TfaError::Io(_))));
    }
}
