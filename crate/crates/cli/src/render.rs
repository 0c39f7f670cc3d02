//! Binary PGM output.
//!
//! Pixel `(x, y)` shows grid node `(i, j) = (x, N₂ − 1 − y)`, so the second
//! lattice direction points up. Grey levels are
//! `round(255·(v − min)/(max − min))` over the whole field and are 0 for a
//! constant field; the header comment records `min` and `max`.

use std::io::Write;

use vortexline::GridField;

pub fn grey_levels(f: &GridField) -> Vec<u8> {
    let (lo, hi) = (f.min(), f.max());
    let span = hi - lo;
    f.values()
        .iter()
        .map(|&v| {
            if span > 0.0 {
                (255.0 * (v - lo) / span).round().clamp(0.0, 255.0) as u8
            } else {
                0
            }
        })
        .collect()
}

pub fn write_pgm<W: Write>(f: &GridField, name: &str, mut w: W) -> std::io::Result<()> {
    let (n1, n2) = f.geometry().dims();
    let grey = grey_levels(f);
    writeln!(w, "P5")?;
    writeln!(
        w,
        "# vortexline field={name} min={:e} max={:e} grey=round(255*(v-min)/(max-min))",
        f.min(),
        f.max()
    )?;
    writeln!(w, "{n1} {n2}")?;
    writeln!(w, "255")?;
    let mut row = vec![0u8; n1];
    for y in 0..n2 {
        let j = n2 - 1 - y;
        for (i, px) in row.iter_mut().enumerate() {
            *px = grey[i * n2 + j];
        }
        w.write_all(&row)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use vortexline::surface::make_torus;

    #[test]
    fn layout_and_normalisation() {
        let g = make_torus(Complex64::i(), 1.0, (16, 16)).unwrap();
        let f = GridField::from_fn(g.clone(), |z| z.re);
        let mut buf = Vec::new();
        write_pgm(&f, "x", &mut buf).unwrap();
        let text = String::from_utf8_lossy(&buf);
        assert!(text.starts_with("P5\n# vortexline field=x min=0e0"));
        let pixels = &buf[buf.len() - 256..];
        // first column is the minimum, last column the maximum
        assert_eq!(pixels[0], 0);
        assert_eq!(pixels[15], 255);
        assert!(grey_levels(&GridField::constant(g, 3.0))
            .iter()
            .all(|&p| p == 0));
    }
}
