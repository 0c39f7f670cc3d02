//! Grid-field files.
//!
//! Binary layout (little endian):
//!
//! ```text
//! b"VLGF"          magic
//! u32              format version (1)
//! u32 u32          N₁ N₂
//! f64 f64          period ratio (re, im)
//! f64              scale λ
//! f64              area A
//! f64 × N₁N₂       samples, row-major (row = first lattice index)
//! ```
//!
//! The CSV layout carries the same header as `# key=value` comment lines
//! followed by `N₁` rows of `N₂` comma-separated samples.

use std::io::{BufRead, Read, Write};
use std::sync::Arc;

use num_complex::Complex64;

use super::{GridField, TorusGeometry};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"VLGF";
const VERSION: u32 = 1;

pub fn write_binary<W: Write>(f: &GridField, mut w: W) -> Result<()> {
    let g = f.geometry();
    let (n1, n2) = g.dims();
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(n1 as u32).to_le_bytes())?;
    w.write_all(&(n2 as u32).to_le_bytes())?;
    for x in [
        g.period_ratio().re,
        g.period_ratio().im,
        g.scale(),
        g.area(),
    ] {
        w.write_all(&x.to_le_bytes())?;
    }
    for v in f.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

/// Reads a binary field, rebuilding its geometry from the header.
pub fn read_binary<R: Read>(mut r: R) -> Result<GridField> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format("not a grid-field file".into()));
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let n1 = read_u32(&mut r)? as usize;
    let n2 = read_u32(&mut r)? as usize;
    let tau = Complex64::new(read_f64(&mut r)?, read_f64(&mut r)?);
    let scale = read_f64(&mut r)?;
    let area = read_f64(&mut r)?;
    let geom = TorusGeometry::new(tau, area, (n1, n2))?;
    if (geom.scale() - scale).abs() > 1e-12 * scale {
        return Err(Error::Format(
            "scale inconsistent with area and period ratio".into(),
        ));
    }
    read_samples(geom, r)
}

/// Reads `geom.len()` little-endian samples.
pub fn read_samples<R: Read>(geom: Arc<TorusGeometry>, mut r: R) -> Result<GridField> {
    let mut values = Vec::with_capacity(geom.len());
    for _ in 0..geom.len() {
        values.push(read_f64(&mut r)?);
    }
    GridField::new(geom, values)
}

pub fn write_csv<W: Write>(f: &GridField, mut w: W) -> Result<()> {
    let g = f.geometry();
    let (n1, n2) = g.dims();
    writeln!(w, "# dims={n1},{n2}")?;
    writeln!(
        w,
        "# period_ratio={:e},{:e}",
        g.period_ratio().re,
        g.period_ratio().im
    )?;
    writeln!(w, "# scale={:e}", g.scale())?;
    writeln!(w, "# area={:e}", g.area())?;
    for row in f.values().chunks(n2) {
        let line: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn read_csv<R: BufRead>(r: R) -> Result<GridField> {
    let mut dims = None;
    let mut tau = None;
    let mut area = None;
    let mut values = Vec::new();
    let bad = |m: &str| Error::Format(m.to_string());
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|e| Error::Format(e.to_string()))
    };
    for line in r.lines() {
        let line = line?;
        if let Some(h) = line.strip_prefix("# ") {
            let (k, v) = h.split_once('=').ok_or_else(|| bad("header without '='"))?;
            let parts: Vec<&str> = v.split(',').collect();
            match k {
                "dims" if parts.len() == 2 => {
                    let p = |s: &str| s.parse::<usize>().map_err(|e| Error::Format(e.to_string()));
                    dims = Some((p(parts[0])?, p(parts[1])?));
                }
                "period_ratio" if parts.len() == 2 => {
                    tau = Some(Complex64::new(parse(parts[0])?, parse(parts[1])?))
                }
                "area" => area = Some(parse(v)?),
                "scale" => {}
                _ => return Err(bad(&format!("unknown header '{k}'"))),
            }
        } else if !line.trim().is_empty() {
            for v in line.split(',') {
                values.push(parse(v)?);
            }
        }
    }
    let geom = TorusGeometry::new(
        tau.ok_or_else(|| bad("missing period_ratio"))?,
        area.ok_or_else(|| bad("missing area"))?,
        dims.ok_or_else(|| bad("missing dims"))?,
    )?;
    GridField::new(geom, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::make_torus;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn binary_and_csv_roundtrip(re in -0.5f64..0.5, im in 0.5f64..2.0, area in 0.1f64..10.0, seed in 0u64..1000) {
            let g = make_torus(Complex64::new(re, im), area, (16, 32)).unwrap();
            let f = GridField::from_fn(g.clone(), |z| ((seed as f64) * z.re).sin() + z.im * 1e-7);
            let mut buf = Vec::new();
            write_binary(&f, &mut buf).unwrap();
            let back = read_binary(&buf[..]).unwrap();
            prop_assert_eq!(back.values(), f.values());
            prop_assert_eq!(&**back.geometry(), &*g);

            let mut csv = Vec::new();
            write_csv(&f, &mut csv).unwrap();
            let back = read_csv(&csv[..]).unwrap();
            prop_assert_eq!(back.values(), f.values());
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(read_binary(&b"NOPE0000"[..]).is_err());
        assert!(read_csv(&b"# dims=16,16\n1,2\n"[..]).is_err());
    }
}
